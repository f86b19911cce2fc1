/**
 * Strict reader for the benchmark harness results CSV.
 *
 * The schema is fixed: thirteen columns in a fixed order with a mandatory
 * header row. Any deviation raises an error naming the offending column so
 * mismatched files fail loudly instead of producing empty plots.
 */

import { readFileSync } from "node:fs";

export const CSV_COLUMNS = [
  "trial_id",
  "algo",
  "K",
  "m",
  "d",
  "challenger_size",
  "seed",
  "correct",
  "converged",
  "pulls",
  "comparisons",
  "tau",
  "wall_time_ms",
] as const;

export interface TrialRecord {
  trial_id: number;
  algo: string;
  K: number;
  m: number;
  d: number;
  challenger_size: number;
  seed: number;
  correct: boolean;
  converged: boolean;
  pulls: number;
  comparisons: number;
  tau: number;
  wall_time_ms: number;
}

export class SchemaError extends Error {}

function parseNumber(raw: string, column: string, line: number): number {
  const value = Number(raw);
  if (raw.trim() === "" || Number.isNaN(value)) {
    throw new SchemaError(`line ${line}: column '${column}' is not numeric (got '${raw}')`);
  }
  return value;
}

function parseBool(raw: string, column: string, line: number): boolean {
  if (raw === "True") return true;
  if (raw === "False") return false;
  throw new SchemaError(`line ${line}: column '${column}' is not True/False (got '${raw}')`);
}

export function parseRecords(text: string, source = "<csv>"): TrialRecord[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${source}: empty file, expected a header row`);
  }
  const header = lines[0].split(",");
  for (let i = 0; i < CSV_COLUMNS.length; i += 1) {
    if (header[i] !== CSV_COLUMNS[i]) {
      throw new SchemaError(
        `${source}: header column ${i + 1} is '${header[i] ?? "<missing>"}', expected '${CSV_COLUMNS[i]}'`
      );
    }
  }
  if (header.length !== CSV_COLUMNS.length) {
    throw new SchemaError(`${source}: unexpected extra column '${header[CSV_COLUMNS.length]}'`);
  }

  const records: TrialRecord[] = [];
  for (let i = 1; i < lines.length; i += 1) {
    const cells = lines[i].split(",");
    if (cells.length !== CSV_COLUMNS.length) {
      throw new SchemaError(`${source}: line ${i + 1} has ${cells.length} cells, expected ${CSV_COLUMNS.length}`);
    }
    const line = i + 1;
    records.push({
      trial_id: parseNumber(cells[0], "trial_id", line),
      algo: cells[1],
      K: parseNumber(cells[2], "K", line),
      m: parseNumber(cells[3], "m", line),
      d: parseNumber(cells[4], "d", line),
      challenger_size: parseNumber(cells[5], "challenger_size", line),
      seed: parseNumber(cells[6], "seed", line),
      correct: parseBool(cells[7], "correct", line),
      converged: parseBool(cells[8], "converged", line),
      pulls: parseNumber(cells[9], "pulls", line),
      comparisons: parseNumber(cells[10], "comparisons", line),
      tau: parseNumber(cells[11], "tau", line),
      wall_time_ms: parseNumber(cells[12], "wall_time_ms", line),
    });
  }
  return records;
}

export function loadRecords(paths: string[]): TrialRecord[] {
  const all: TrialRecord[] = [];
  for (const path of paths) {
    const text = readFileSync(path, "utf-8");
    all.push(...parseRecords(text, path));
  }
  return all;
}
