/**
 * Aggregations behind each figure kind.
 *
 * All series are computed over converged trials only, mirroring the harness's
 * own summary rules; groups with no converged rows are reported so the
 * renderer can warn and skip them instead of fabricating data.
 */

import type { TrialRecord } from "./csv.js";

/** Algorithms the benchmark normally reports, in canonical display order. */
export const KNOWN_ALGORITHMS = ["ccs", "linugape", "lingape", "lingifa"] as const;

export interface BoxStats {
  group: string;
  /** five-number summary: [min, q1, median, q3, max] */
  summary: [number, number, number, number, number];
  count: number;
}

export interface CurvePoint {
  x: number;
  y: number;
  count: number;
}

function quantile(sorted: number[], q: number): number {
  if (sorted.length === 1) return sorted[0];
  const pos = q * (sorted.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo);
}

export function fiveNumberSummary(values: number[]): [number, number, number, number, number] {
  const sorted = [...values].sort((a, b) => a - b);
  return [
    sorted[0],
    quantile(sorted, 0.25),
    quantile(sorted, 0.5),
    quantile(sorted, 0.75),
    sorted[sorted.length - 1],
  ];
}

function convergedByAlgo(records: TrialRecord[]): Map<string, TrialRecord[]> {
  const groups = new Map<string, TrialRecord[]>();
  for (const record of records) {
    if (!record.converged) continue;
    const list = groups.get(record.algo) ?? [];
    list.push(record);
    groups.set(record.algo, list);
  }
  return groups;
}

/** Algorithm display order: known names first, any extras alphabetically. */
export function algorithmOrder(present: Iterable<string>): string[] {
  const names = new Set(present);
  const ordered = KNOWN_ALGORITHMS.filter((name) => names.has(name)) as string[];
  const extras = [...names].filter((name) => !(KNOWN_ALGORITHMS as readonly string[]).includes(name)).sort();
  return [...ordered, ...extras];
}

export function boxStatsByAlgo(
  records: TrialRecord[],
  metric: (r: TrialRecord) => number
): { stats: BoxStats[]; missing: string[] } {
  const groups = convergedByAlgo(records);
  const presentInData = new Set(records.map((r) => r.algo));
  const stats: BoxStats[] = [];
  const missing: string[] = [];
  for (const name of algorithmOrder(presentInData)) {
    const rows = groups.get(name) ?? [];
    if (rows.length === 0) {
      missing.push(name);
      continue;
    }
    stats.push({ group: name, summary: fiveNumberSummary(rows.map(metric)), count: rows.length });
  }
  for (const name of KNOWN_ALGORITHMS) {
    if (!presentInData.has(name)) missing.push(name);
  }
  return { stats, missing };
}

/** Correctness rate or mean latency versus challenger shortlist size. */
export function curveByChallengerSize(
  records: TrialRecord[],
  mode: "correctness" | "latency"
): { points: CurvePoint[]; missing: number[] } {
  const groups = new Map<number, TrialRecord[]>();
  for (const record of records) {
    const list = groups.get(record.challenger_size) ?? [];
    list.push(record);
    groups.set(record.challenger_size, list);
  }
  const points: CurvePoint[] = [];
  const missing: number[] = [];
  for (const size of [...groups.keys()].sort((a, b) => a - b)) {
    const converged = groups.get(size)!.filter((r) => r.converged);
    if (converged.length === 0) {
      missing.push(size);
      continue;
    }
    const y =
      mode === "correctness"
        ? converged.filter((r) => r.correct).length / converged.length
        : converged.reduce((acc, r) => acc + r.wall_time_ms, 0) / converged.length;
    points.push({ x: size, y, count: converged.length });
  }
  return { points, missing };
}

export function meanComparisonsByAlgo(
  records: TrialRecord[]
): { bars: { group: string; value: number }[]; missing: string[] } {
  const groups = convergedByAlgo(records);
  const presentInData = new Set(records.map((r) => r.algo));
  const bars: { group: string; value: number }[] = [];
  const missing: string[] = [];
  for (const name of algorithmOrder(presentInData)) {
    const rows = groups.get(name) ?? [];
    if (rows.length === 0) {
      missing.push(name);
      continue;
    }
    bars.push({ group: name, value: rows.reduce((acc, r) => acc + r.comparisons, 0) / rows.length });
  }
  return { bars, missing };
}
