/** The three figure kinds: LMR sweep, component fraction, feasibility strip. */

import { P_STAR, componentFractionCurve } from "./constants.js";
import { CsvError, type ScanRow, type SweepRow } from "./csv.js";
import { FRAME, PALETTE, axes, document, fmt, linearScale, type Scale } from "./svg.js";

function requireExperiment(rows: SweepRow[], experiment: string): void {
  if (rows.length === 0) {
    throw new CsvError("no data rows");
  }
  const names = [...new Set(rows.map((r) => r.experiment))];
  if (names.length !== 1 || names[0] !== experiment) {
    throw new CsvError(
      `expected a "${experiment}" sweep, got experiment(s): ${names.join(", ")}`,
    );
  }
}

function groupByN(rows: SweepRow[]): Map<number, SweepRow[]> {
  const byN = new Map<number, SweepRow[]>();
  for (const row of [...rows].sort((a, b) => a.n - b.n || a.p - b.p)) {
    const bucket = byN.get(row.n) ?? [];
    bucket.push(row);
    byN.set(row.n, bucket);
  }
  return byN;
}

function xDomainWithRef(rows: { p: number }[]): [number, number] {
  const ps = rows.map((r) => r.p);
  const lo = Math.min(...ps, P_STAR);
  const hi = Math.max(...ps, P_STAR);
  const pad = 0.02 * (hi - lo || 1);
  return [lo - pad, hi + pad];
}

/** Vertical reference line at p = 4 − 2√3, tagged for structural tests. */
function refLine(s: Scale): string {
  const x = fmt(s.x(P_STAR));
  return (
    `<line class="ref-line" data-ref="p-star" data-p="${P_STAR}" ` +
    `x1="${x}" y1="${fmt(FRAME.top)}" x2="${x}" y2="${fmt(FRAME.bottom)}" ` +
    `stroke="#111" stroke-dasharray="5,4" stroke-width="1.2"/>\n` +
    `<text x="${x}" y="${fmt(FRAME.top - 6)}" text-anchor="middle" font-size="11">` +
    `p* = ${P_STAR.toFixed(6)}</text>`
  );
}

function series(byN: Map<number, SweepRow[]>, s: Scale): string {
  const parts: string[] = [];
  let k = 0;
  for (const [n, rows] of byN) {
    const color = PALETTE[k % PALETTE.length]!;
    const pts = rows.map((r) => `${fmt(s.x(r.p))},${fmt(s.y(r.mean))}`).join(" ");
    parts.push(
      `<polyline class="series" data-n="${n}" points="${pts}" ` +
        `fill="none" stroke="${color}" stroke-width="1.6"/>`,
    );
    for (const r of rows) {
      const x = fmt(s.x(r.p));
      if (r.stderr > 0) {
        parts.push(
          `<line class="errbar" x1="${x}" y1="${fmt(s.y(r.mean - r.stderr))}" ` +
            `x2="${x}" y2="${fmt(s.y(r.mean + r.stderr))}" stroke="${color}" stroke-width="1"/>`,
        );
      }
      parts.push(
        `<circle class="pt" cx="${x}" cy="${fmt(s.y(r.mean))}" r="2.4" fill="${color}"/>`,
      );
    }
    parts.push(
      `<rect x="${fmt(FRAME.right - 120)}" y="${fmt(FRAME.top + 10 + 16 * k)}" width="14" height="3" fill="${color}"/>`,
      `<text x="${fmt(FRAME.right - 102)}" y="${fmt(FRAME.top + 16 + 16 * k)}" font-size="11">n = ${n}</text>`,
    );
    k += 1;
  }
  return parts.join("\n");
}

/** Majority-overlap frequency vs p, one series per n, reference at p*. */
export function renderLmr(rows: SweepRow[]): string {
  requireExperiment(rows, "lmr");
  const s = linearScale(xDomainWithRef(rows), [0, 1]);
  const body = [
    axes(s, "edge marginal p", "majority-overlap frequency"),
    refLine(s),
    series(groupByN(rows), s),
  ].join("\n");
  return document("Majority-overlap frequency by edge marginal", body);
}

/**
 * Largest-component fraction vs p, one series per n, overlaid with the
 * limiting curve (1 + √(((r+1)p − 1)/r)) / (r+1) on its p-range.
 */
export function renderComponentFraction(rows: SweepRow[], r: number): string {
  requireExperiment(rows, "component_fraction");
  const s = linearScale(xDomainWithRef(rows), [0, 1]);
  const [xlo, xhi] = s.xDomain;
  const lo = Math.max(xlo, 1 / (r + 1) + 1e-9);
  const hi = Math.min(xhi, 1 / r);
  const curvePts: string[] = [];
  for (let i = 0; i <= 100; i += 1) {
    const p = lo + ((hi - lo) * i) / 100;
    curvePts.push(`${fmt(s.x(p))},${fmt(s.y(componentFractionCurve(r, p)))}`);
  }
  const body = [
    axes(s, "edge marginal p", "largest component fraction"),
    refLine(s),
    `<polyline class="overlay" data-r="${r}" points="${curvePts.join(" ")}" ` +
      `fill="none" stroke="#555" stroke-width="1.2" stroke-dasharray="2,3"/>`,
    series(groupByN(rows), s),
  ].join("\n");
  return document(`Largest-component fraction (r = ${r} limit curve)`, body);
}

/** Feasible/infeasible verdict strip over the scanned p grid. */
export function renderFeasibilityStrip(rows: ScanRow[]): string {
  if (rows.length === 0) {
    throw new CsvError("no data rows");
  }
  const sorted = [...rows].sort((a, b) => a.p - b.p);
  const s = linearScale(xDomainWithRef(sorted), [0, 1]);
  const step =
    sorted.length > 1 ? (s.x(sorted[1]!.p) - s.x(sorted[0]!.p)) * 0.9 : 24;
  const parts: string[] = [];
  for (const row of sorted) {
    const fill = row.verdict === "feasible" ? "#059669" : "#dc2626";
    parts.push(
      `<rect class="verdict verdict-${row.verdict}" data-p="${row.p}" ` +
        `x="${fmt(s.x(row.p) - step / 2)}" y="${fmt(FRAME.top + 60)}" ` +
        `width="${fmt(step)}" height="${fmt(FRAME.bottom - FRAME.top - 120)}" ` +
        `fill="${fill}" stroke="#ffffff" stroke-width="0.5"/>`,
    );
  }
  parts.push(
    `<rect x="${fmt(FRAME.left + 8)}" y="${fmt(FRAME.bottom - 34)}" width="12" height="12" fill="#059669"/>`,
    `<text x="${fmt(FRAME.left + 24)}" y="${fmt(FRAME.bottom - 24)}" font-size="11">feasible</text>`,
    `<rect x="${fmt(FRAME.left + 92)}" y="${fmt(FRAME.bottom - 34)}" width="12" height="12" fill="#dc2626"/>`,
    `<text x="${fmt(FRAME.left + 108)}" y="${fmt(FRAME.bottom - 24)}" font-size="11">infeasible</text>`,
  );
  const body = [
    axes(s, "edge marginal p", "verdict"),
    parts.join("\n"),
    refLine(s),
  ].join("\n");
  return document("Constraint-system feasibility by edge marginal", body);
}
