/** Parsers for the two CSV schemas the percolab CLI emits. */

export class CsvError extends Error {
  override name = "CsvError";
}

export const SWEEP_HEADER =
  "experiment,p,n,replicas,mean,stderr,seed,elapsed_ms";

export interface SweepRow {
  experiment: string;
  p: number;
  n: number;
  replicas: number;
  mean: number;
  stderr: number;
  seed: number;
  elapsedMs: number;
}

export const SCAN_HEADER = "p,verdict,min_violation";

export interface ScanRow {
  p: number;
  verdict: "feasible" | "infeasible";
  minViolation: number;
}

function dataLines(text: string, header: string, what: string): string[] {
  const lines = text.replace(/\r\n/g, "\n").replace(/\n+$/, "").split("\n");
  if (lines[0] !== header) {
    throw new CsvError(
      `${what}: expected header "${header}", got "${lines[0] ?? ""}"`,
    );
  }
  const rows = lines.slice(1);
  if (rows.length === 0) {
    throw new CsvError(`${what}: no data rows`);
  }
  return rows;
}

function num(field: string, where: string): number {
  const v = Number(field);
  if (field === "" || !Number.isFinite(v)) {
    throw new CsvError(`${where}: not a number: "${field}"`);
  }
  return v;
}

function int(field: string, where: string): number {
  const v = num(field, where);
  if (!Number.isInteger(v)) {
    throw new CsvError(`${where}: not an integer: "${field}"`);
  }
  return v;
}

/** Parse a sweep CSV (the `percolab sweep` output schema). */
export function parseSweepCsv(text: string): SweepRow[] {
  return dataLines(text, SWEEP_HEADER, "sweep CSV").map((line, i) => {
    const f = line.split(",");
    const where = `sweep CSV row ${i + 1}`;
    if (f.length !== 8) {
      throw new CsvError(`${where}: expected 8 fields, got ${f.length}`);
    }
    return {
      experiment: f[0]!,
      p: num(f[1]!, where),
      n: int(f[2]!, where),
      replicas: int(f[3]!, where),
      mean: num(f[4]!, where),
      stderr: num(f[5]!, where),
      seed: int(f[6]!, where),
      elapsedMs: int(f[7]!, where),
    };
  });
}

/** Parse a feasibility scan CSV (the `percolab feasibility scan` schema). */
export function parseScanCsv(text: string): ScanRow[] {
  return dataLines(text, SCAN_HEADER, "scan CSV").map((line, i) => {
    const f = line.split(",");
    const where = `scan CSV row ${i + 1}`;
    if (f.length !== 3) {
      throw new CsvError(`${where}: expected 3 fields, got ${f.length}`);
    }
    const verdict = f[1]!;
    if (verdict !== "feasible" && verdict !== "infeasible") {
      throw new CsvError(`${where}: unknown verdict "${verdict}"`);
    }
    return { p: num(f[0]!, where), verdict, minViolation: num(f[2]!, where) };
  });
}
