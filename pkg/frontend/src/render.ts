/**
 * Figure construction and SVG rendering.
 *
 * Rendering is read-only over the input records and deterministic: identical
 * inputs produce identical SVG strings (animation is disabled and layout is
 * fixed). Runtime and comparison figures default to a log y-axis since the
 * gaps between algorithms span orders of magnitude.
 */

import { writeFileSync } from "node:fs";
import * as echarts from "echarts";

import type { TrialRecord } from "./csv.js";
import { boxStatsByAlgo, curveByChallengerSize, meanComparisonsByAlgo } from "./stats.js";

export const FIGURE_KINDS = [
  "runtime_box",
  "correctness_curve",
  "latency_curve",
  "comparisons_bar",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface PlotSpec {
  inputs: string[];
  kind: FigureKind;
  out: string;
  logScale?: boolean;
}

export interface RenderResult {
  svg: string;
  /** groups present in no converged row, skipped with a warning */
  skipped: (string | number)[];
  series: unknown[];
}

const WIDTH = 720;
const HEIGHT = 480;

function defaultLogScale(kind: FigureKind): boolean {
  return kind === "runtime_box" || kind === "comparisons_bar";
}

function yAxis(log: boolean, name: string) {
  return log ? { type: "log" as const, name } : { type: "value" as const, name };
}

function buildOption(kind: FigureKind, records: TrialRecord[], logScale: boolean) {
  if (kind === "runtime_box") {
    const { stats, missing } = boxStatsByAlgo(records, (r) => r.wall_time_ms);
    return {
      skipped: missing,
      option: {
        animation: false,
        title: { text: "Identification runtime by algorithm" },
        xAxis: { type: "category" as const, data: stats.map((s) => s.group) },
        yAxis: yAxis(logScale, "wall time (ms)"),
        series: [
          {
            type: "boxplot" as const,
            data: stats.map((s) => s.summary),
            name: "runtime",
          },
        ],
      },
    };
  }
  if (kind === "comparisons_bar") {
    const { bars, missing } = meanComparisonsByAlgo(records);
    return {
      skipped: missing,
      option: {
        animation: false,
        title: { text: "Mean gap-index comparisons by algorithm" },
        xAxis: { type: "category" as const, data: bars.map((b) => b.group) },
        yAxis: yAxis(logScale, "comparisons"),
        series: [{ type: "bar" as const, data: bars.map((b) => b.value), name: "comparisons" }],
      },
    };
  }
  const mode = kind === "correctness_curve" ? "correctness" : "latency";
  const { points, missing } = curveByChallengerSize(records, mode);
  return {
    skipped: missing,
    option: {
      animation: false,
      title: {
        text:
          mode === "correctness"
            ? "Correctness vs challenger shortlist size"
            : "Mean runtime vs challenger shortlist size",
      },
      xAxis: { type: "category" as const, data: points.map((p) => String(p.x)), name: "|C|" },
      yAxis: yAxis(mode === "latency" && logScale, mode === "correctness" ? "correctness rate" : "wall time (ms)"),
      series: [
        {
          type: "line" as const,
          data: points.map((p) => p.y),
          name: mode,
        },
      ],
    },
  };
}

export function renderFigure(
  kind: FigureKind,
  records: TrialRecord[],
  logScale?: boolean,
  warn: (message: string) => void = (message) => console.warn(message)
): RenderResult {
  const log = logScale ?? defaultLogScale(kind);
  const { option, skipped } = buildOption(kind, records, log);
  for (const group of skipped) {
    warn(`warning: no converged rows for group '${group}', skipping`);
  }
  const series = (option.series[0] as { data: unknown[] }).data;
  if (series.length === 0) {
    throw new Error(`figure '${kind}' has no plottable groups`);
  }
  const chart = echarts.init(null, null, { renderer: "svg", ssr: true, width: WIDTH, height: HEIGHT });
  chart.setOption(option);
  const svg = chart.renderToSVGString();
  chart.dispose();
  return { svg, skipped, series: option.series };
}

export function render(spec: PlotSpec, records: TrialRecord[], warn?: (m: string) => void): RenderResult {
  const result = renderFigure(spec.kind, records, spec.logScale, warn);
  writeFileSync(spec.out, result.svg, "utf-8");
  return result;
}
