#!/usr/bin/env node
/**
 * outdiv-plot: render outer-diversity figures from the CLI's CSVs.
 *
 *   plot curve      --in curve.csv --out curve.svg
 *   plot sizes      --in sizes.csv --out sizes.svg
 *   plot histogram  --in histogram.csv --out hist.svg
 *   plot microscope --in distances.csv --pop popularity.csv --out mic.svg [--seed 7]
 *
 * Exits 0 on success, 1 on schema violations or bad invocations, with a
 * column diagnostic on stderr.
 */

import fs from "node:fs";
import path from "node:path";

import {
  SchemaError,
  readCurve,
  readDistanceMatrix,
  readHistogram,
  readPopularity,
  readSizes,
} from "./csv";
import {
  renderCurve,
  renderHistogram,
  renderMicroscope,
  renderSizes,
} from "./plots";

interface Args {
  kind: string;
  input?: string;
  pop?: string;
  out?: string;
  seed: number;
}

function parseArgs(argv: string[]): Args {
  const args: Args = { kind: "", seed: 0 };
  const positional: string[] = [];
  for (let i = 0; i < argv.length; i++) {
    const token = argv[i];
    switch (token) {
      case "--in":
        args.input = argv[++i];
        break;
      case "--pop":
        args.pop = argv[++i];
        break;
      case "--out":
        args.out = argv[++i];
        break;
      case "--seed":
        args.seed = Number(argv[++i]);
        break;
      default:
        positional.push(token);
    }
  }
  if (positional[0] === "plot") positional.shift();
  args.kind = positional[0] ?? "";
  return args;
}

export function run(argv: string[]): number {
  const args = parseArgs(argv);
  const kinds = ["curve", "sizes", "histogram", "microscope"];
  if (!kinds.includes(args.kind) || !args.input || !args.out) {
    process.stderr.write(
      `usage: plot <${kinds.join("|")}> --in <csv> [--pop <csv>] --out <svg> [--seed n]\n`,
    );
    return 1;
  }
  try {
    const text = fs.readFileSync(args.input, "utf8");
    let svg: string;
    if (args.kind === "curve") {
      svg = renderCurve(readCurve(text, args.input));
    } else if (args.kind === "sizes") {
      svg = renderSizes(readSizes(text, args.input));
    } else if (args.kind === "histogram") {
      svg = renderHistogram(readHistogram(text, args.input));
    } else {
      if (!args.pop) {
        process.stderr.write("microscope needs --pop <popularity csv>\n");
        return 1;
      }
      const popText = fs.readFileSync(args.pop, "utf8");
      svg = renderMicroscope(
        readDistanceMatrix(text, args.input),
        readPopularity(popText, args.pop),
        args.seed,
      );
    }
    fs.mkdirSync(path.dirname(path.resolve(args.out)), { recursive: true });
    fs.writeFileSync(args.out, svg);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 1;
    }
    if (err instanceof Error && "code" in err && err.code === "ENOENT") {
      process.stderr.write(`missing input: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

if (require.main === module) {
  process.exit(run(process.argv.slice(2)));
}
