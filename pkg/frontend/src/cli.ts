/** Command-line entry: render a percolab CSV to a deterministic SVG.
 *
 *   node dist/cli.js lmr         --csv lmr.csv  --out fig.svg
 *   node dist/cli.js component   --csv frac.csv --out fig.svg [--r 2]
 *   node dist/cli.js feasibility --csv scan.csv --out fig.svg
 *
 * Nothing is written unless parsing and rendering both succeed.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { parseScanCsv, parseSweepCsv } from "./csv.js";
import { renderComponentFraction, renderFeasibilityStrip, renderLmr } from "./plots.js";

export class CliError extends Error {
  override name = "CliError";
}

const USAGE =
  "usage: percolab-plots <lmr|component|feasibility> --csv <file> --out <file> [--r <int>]";

interface Args {
  command: string;
  csv: string;
  out: string;
  r: number;
}

export function parseArgs(argv: string[]): Args {
  const [command, ...rest] = argv;
  if (!command || !["lmr", "component", "feasibility"].includes(command)) {
    throw new CliError(USAGE);
  }
  const flags = new Map<string, string>();
  for (let i = 0; i < rest.length; i += 2) {
    const key = rest[i];
    const value = rest[i + 1];
    if (!key?.startsWith("--") || value === undefined) {
      throw new CliError(USAGE);
    }
    flags.set(key.slice(2), value);
  }
  const csv = flags.get("csv");
  const out = flags.get("out");
  if (!csv || !out) {
    throw new CliError(USAGE);
  }
  const r = Number(flags.get("r") ?? "1");
  if (!Number.isInteger(r) || r < 1) {
    throw new CliError(`--r must be a positive integer, got ${flags.get("r")}`);
  }
  const known = new Set(["csv", "out", "r"]);
  for (const key of flags.keys()) {
    if (!known.has(key)) {
      throw new CliError(`unknown flag --${key}\n${USAGE}`);
    }
  }
  return { command, csv, out, r };
}

export function main(argv: string[]): void {
  const args = parseArgs(argv);
  const text = readFileSync(args.csv, "utf-8");
  let svg: string;
  if (args.command === "lmr") {
    svg = renderLmr(parseSweepCsv(text));
  } else if (args.command === "component") {
    svg = renderComponentFraction(parseSweepCsv(text), args.r);
  } else {
    svg = renderFeasibilityStrip(parseScanCsv(text));
  }
  writeFileSync(args.out, svg);
}

if (
  process.argv[1] &&
  import.meta.url === pathToFileURL(process.argv[1]).href
) {
  try {
    main(process.argv.slice(2));
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    process.exitCode = 1;
  }
}
