#!/usr/bin/env node
/**
 * plots --in <csv...> --kind <kind> --out <img> [--log-scale | --no-log-scale]
 *
 * Reads benchmark results CSVs (harness schema) and writes one SVG figure.
 * Kinds: runtime_box, correctness_curve, latency_curve, comparisons_bar.
 */

import { parseArgs } from "node:util";

import { loadRecords, SchemaError } from "./csv.js";
import { FIGURE_KINDS, render, type FigureKind } from "./render.js";

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        in: { type: "string", multiple: true },
        kind: { type: "string" },
        out: { type: "string" },
        "log-scale": { type: "boolean" },
        "no-log-scale": { type: "boolean" },
        help: { type: "boolean" },
      },
      allowPositionals: false,
    });
  } catch (error) {
    console.error(`argument error: ${(error as Error).message}`);
    return 2;
  }
  const values = parsed.values;
  if (values.help) {
    console.log("usage: plots --in results.csv [--in more.csv] --kind <kind> --out figure.svg");
    console.log(`kinds: ${FIGURE_KINDS.join(", ")}`);
    return 0;
  }
  const inputs = values.in ?? [];
  const kind = values.kind as FigureKind | undefined;
  const out = values.out;
  if (inputs.length === 0 || !kind || !out) {
    console.error("usage: plots --in <csv...> --kind <kind> --out <img>");
    return 2;
  }
  if (!FIGURE_KINDS.includes(kind)) {
    console.error(`unknown kind '${kind}', expected one of: ${FIGURE_KINDS.join(", ")}`);
    return 2;
  }
  let logScale: boolean | undefined;
  if (values["log-scale"]) logScale = true;
  if (values["no-log-scale"]) logScale = false;

  try {
    const records = loadRecords(inputs);
    const result = render({ inputs, kind, out, logScale }, records);
    console.log(`wrote ${out} (${result.series.length} series, ${result.skipped.length} group(s) skipped)`);
    return 0;
  } catch (error) {
    if (error instanceof SchemaError) {
      console.error(`schema error: ${error.message}`);
    } else {
      console.error(`error: ${(error as Error).message}`);
    }
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
