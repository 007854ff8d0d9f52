import * as fs from "fs";

export class HeaderMismatchError extends Error {
  constructor(expected: string[], got: string[]) {
    super(`CSV header mismatch: expected "${expected.join(",")}", got "${got.join(",")}"`);
    this.name = "HeaderMismatchError";
  }
}

export interface Table {
  header: string[];
  rows: string[][];
}

/** Parse a scan CSV (plain comma-separated, no quoting) and check its header. */
export function readCsv(path: string, expectedHeader: string[]): Table {
  const text = fs.readFileSync(path, "utf8");
  const lines = text.split("\n").filter((line) => line.length > 0);
  const header = lines[0].split(",");
  if (header.length !== expectedHeader.length
      || header.some((h, i) => h !== expectedHeader[i])) {
    throw new HeaderMismatchError(expectedHeader, header);
  }
  return { header, rows: lines.slice(1).map((line) => line.split(",")) };
}

/** Sorted unique values of a numeric column. */
export function axisValues(table: Table, column: number): number[] {
  const seen = new Set<number>();
  for (const row of table.rows) seen.add(Number(row[column]));
  return [...seen].sort((a, b) => a - b);
}
