#!/usr/bin/env node
import { FigureKind, render } from "./render";

const USAGE = "usage: render <region|surface|gain> <input.csv> <out.png>";

export function main(argv: string[]): number {
  if (argv.length !== 3) {
    console.error(USAGE);
    return 2;
  }
  const [kind, csvPath, outPath] = argv;
  if (!["region", "surface", "gain"].includes(kind)) {
    console.error(`unknown figure kind "${kind}"\n${USAGE}`);
    return 2;
  }
  try {
    render({ kind: kind as FigureKind, csvPath, outPath });
  } catch (err) {
    console.error(`render failed: ${(err as Error).message}`);
    return 1;
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
