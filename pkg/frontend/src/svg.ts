/** Deterministic SVG building blocks: fixed precision, no timestamps. */

/** Coordinate formatting: two decimals, "-0.00" normalised to "0.00". */
export function fmt(x: number): string {
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface Frame {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export const FRAME: Frame = {
  width: 640,
  height: 400,
  left: 56,
  right: 600,
  top: 24,
  bottom: 352,
};

export interface Scale {
  x: (v: number) => number;
  y: (v: number) => number;
  xDomain: [number, number];
  yDomain: [number, number];
}

export function linearScale(
  xDomain: [number, number],
  yDomain: [number, number],
  frame: Frame = FRAME,
): Scale {
  const [x0, x1] = xDomain;
  const [y0, y1] = yDomain;
  return {
    x: (v) => frame.left + ((v - x0) / (x1 - x0)) * (frame.right - frame.left),
    y: (v) => frame.bottom - ((v - y0) / (y1 - y0)) * (frame.bottom - frame.top),
    xDomain,
    yDomain,
  };
}

/** Evenly spaced tick values across a domain, endpoints included. */
export function ticks(domain: [number, number], count: number): number[] {
  const [a, b] = domain;
  return Array.from({ length: count }, (_, i) => a + ((b - a) * i) / (count - 1));
}

export const PALETTE = ["#2563eb", "#dc2626", "#059669", "#9333ea", "#d97706", "#0891b2"];

export function axes(
  s: Scale,
  xLabel: string,
  yLabel: string,
  frame: Frame = FRAME,
): string {
  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(frame.left)}" y="${fmt(frame.top)}" ` +
      `width="${fmt(frame.right - frame.left)}" height="${fmt(frame.bottom - frame.top)}" ` +
      `fill="none" stroke="#444" stroke-width="1"/>`,
  );
  for (const t of ticks(s.xDomain, 6)) {
    const x = fmt(s.x(t));
    parts.push(
      `<line x1="${x}" y1="${fmt(frame.bottom)}" x2="${x}" y2="${fmt(frame.bottom + 5)}" stroke="#444"/>`,
      `<text x="${x}" y="${fmt(frame.bottom + 18)}" text-anchor="middle" font-size="11">${esc(
        t.toFixed(3),
      )}</text>`,
    );
  }
  for (const t of ticks(s.yDomain, 6)) {
    const y = fmt(s.y(t));
    parts.push(
      `<line x1="${fmt(frame.left - 5)}" y1="${y}" x2="${fmt(frame.left)}" y2="${y}" stroke="#444"/>`,
      `<text x="${fmt(frame.left - 8)}" y="${fmt(s.y(t) + 4)}" text-anchor="end" font-size="11">${esc(
        t.toFixed(2),
      )}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt((frame.left + frame.right) / 2)}" y="${fmt(frame.bottom + 36)}" ` +
      `text-anchor="middle" font-size="12">${esc(xLabel)}</text>`,
    `<text x="16" y="${fmt((frame.top + frame.bottom) / 2)}" text-anchor="middle" font-size="12" ` +
      `transform="rotate(-90 16 ${fmt((frame.top + frame.bottom) / 2)})">${esc(yLabel)}</text>`,
  );
  return parts.join("\n");
}

export function document(title: string, body: string, frame: Frame = FRAME): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" height="${frame.height}" ` +
    `viewBox="0 0 ${frame.width} ${frame.height}" font-family="sans-serif">\n` +
    `<title>${esc(title)}</title>\n` +
    `<rect width="${frame.width}" height="${frame.height}" fill="#ffffff"/>\n` +
    `<text x="${fmt(frame.width / 2)}" y="16" text-anchor="middle" font-size="13">${esc(
      title,
    )}</text>\n` +
    body +
    `\n</svg>\n`
  );
}
