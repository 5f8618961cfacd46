import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import {
  CsvError,
  SCAN_HEADER,
  SWEEP_HEADER,
  parseScanCsv,
  parseSweepCsv,
} from "../src/csv.js";

const lmrText = readFileSync(new URL("../fixtures/lmr.csv", import.meta.url), "utf-8");
const scanText = readFileSync(new URL("../fixtures/scan.csv", import.meta.url), "utf-8");

describe("parseSweepCsv", () => {
  it("parses the generated sweep fixture", () => {
    const rows = parseSweepCsv(lmrText);
    expect(rows).toHaveLength(20); // 10 p-values x 2 n-values
    expect(new Set(rows.map((r) => r.n))).toEqual(new Set([100, 300]));
    for (const row of rows) {
      expect(row.experiment).toBe("lmr");
      expect(row.p).toBeGreaterThan(0.5);
      expect(row.p).toBeLessThanOrEqual(0.6);
      expect(row.replicas).toBe(50);
      expect(row.mean).toBeGreaterThanOrEqual(0);
      expect(row.mean).toBeLessThanOrEqual(1);
      expect(row.seed).toBe(0);
      expect(Number.isInteger(row.elapsedMs)).toBe(true);
    }
  });

  it("round-trips float fields exactly", () => {
    const line = lmrText.trim().split("\n")[1]!;
    const row = parseSweepCsv(`${SWEEP_HEADER}\n${line}`)[0]!;
    expect(line.split(",")[5]).toBe(String(row.stderr));
  });

  it("rejects a wrong header", () => {
    expect(() => parseSweepCsv("a,b,c\n1,2,3\n")).toThrow(CsvError);
  });

  it("rejects a header-only file", () => {
    expect(() => parseSweepCsv(`${SWEEP_HEADER}\n`)).toThrow(/no data rows/);
  });

  it("rejects an empty file", () => {
    expect(() => parseSweepCsv("")).toThrow(CsvError);
  });

  it("rejects rows with missing fields", () => {
    expect(() => parseSweepCsv(`${SWEEP_HEADER}\nlmr,0.6,100\n`)).toThrow(/8 fields/);
  });

  it("rejects non-numeric and non-integer fields", () => {
    expect(() =>
      parseSweepCsv(`${SWEEP_HEADER}\nlmr,oops,100,50,0.5,0.1,0,3\n`),
    ).toThrow(/not a number/);
    expect(() =>
      parseSweepCsv(`${SWEEP_HEADER}\nlmr,0.6,100.5,50,0.5,0.1,0,3\n`),
    ).toThrow(/not an integer/);
  });
});

describe("parseScanCsv", () => {
  it("parses the generated scan fixture", () => {
    const rows = parseScanCsv(scanText);
    expect(rows.length).toBeGreaterThanOrEqual(10);
    expect(rows.some((r) => r.verdict === "feasible")).toBe(true);
    expect(rows.some((r) => r.verdict === "infeasible")).toBe(true);
    for (const row of rows) {
      expect(row.minViolation).toBeGreaterThanOrEqual(0);
    }
  });

  it("rejects unknown verdicts", () => {
    expect(() => parseScanCsv(`${SCAN_HEADER}\n0.52,maybe,0.0\n`)).toThrow(
      /unknown verdict/,
    );
  });

  it("rejects a header-only file", () => {
    expect(() => parseScanCsv(`${SCAN_HEADER}\n`)).toThrow(/no data rows/);
  });
});
