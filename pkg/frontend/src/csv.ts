/**
 * CSV readers for the outdiv CLI's documented outputs.
 *
 * Every reader validates the schema up front and throws a SchemaError
 * naming the offending column, so a drifted input fails fast instead of
 * rendering garbage.
 */

export class SchemaError extends Error {}

function splitLines(text: string): string[] {
  return text.split(/\r?\n/).filter((line) => line.length > 0);
}

function requireHeader(actual: string, expected: string, path: string): void {
  if (actual !== expected) {
    throw new SchemaError(
      `${path}: header mismatch: expected "${expected}", got "${actual}"`,
    );
  }
}

function num(field: string, row: number, column: string, path: string): number {
  const value = Number(field);
  if (field === "" || Number.isNaN(value)) {
    throw new SchemaError(
      `${path}: row ${row}: column "${column}" is not numeric: "${field}"`,
    );
  }
  return value;
}

export interface CurveRow {
  family: string;
  m: number;
  outdiv: number;
  std: number;
}

export function readCurve(text: string, path: string): CurveRow[] {
  const lines = splitLines(text);
  requireHeader(lines[0], "family,m,outdiv,std", path);
  return lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    if (parts.length !== 4) {
      throw new SchemaError(`${path}: row ${i + 1}: expected 4 fields, got ${parts.length}`);
    }
    return {
      family: parts[0],
      m: num(parts[1], i + 1, "m", path),
      outdiv: num(parts[2], i + 1, "outdiv", path),
      std: num(parts[3], i + 1, "std", path),
    };
  });
}

export interface SizesRow {
  method: string;
  m: number;
  sizeOrT: number;
  outdiv: number;
  std: number;
}

export function readSizes(text: string, path: string): SizesRow[] {
  const lines = splitLines(text);
  requireHeader(lines[0], "method,m,size_or_t,outdiv,std", path);
  return lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    if (parts.length !== 5) {
      throw new SchemaError(`${path}: row ${i + 1}: expected 5 fields, got ${parts.length}`);
    }
    return {
      method: parts[0],
      m: num(parts[1], i + 1, "m", path),
      sizeOrT: num(parts[2], i + 1, "size_or_t", path),
      outdiv: num(parts[3], i + 1, "outdiv", path),
      // std may be blank for single-run rows
      std: parts[4] === "" ? 0 : num(parts[4], i + 1, "std", path),
    };
  });
}

export interface HistogramRow {
  distance: number;
  count: number;
}

export function readHistogram(text: string, path: string): HistogramRow[] {
  const lines = splitLines(text);
  requireHeader(lines[0], "distance,count", path);
  return lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    if (parts.length !== 2) {
      throw new SchemaError(`${path}: row ${i + 1}: expected 2 fields, got ${parts.length}`);
    }
    return {
      distance: num(parts[0], i + 1, "distance", path),
      count: num(parts[1], i + 1, "count", path),
    };
  });
}

export interface PopularityRow {
  ranking: string;
  pop: number;
  npop: number;
}

export function readPopularity(text: string, path: string): PopularityRow[] {
  const lines = splitLines(text);
  requireHeader(lines[0], "ranking,pop,npop", path);
  return lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    if (parts.length !== 3) {
      throw new SchemaError(`${path}: row ${i + 1}: expected 3 fields, got ${parts.length}`);
    }
    return {
      ranking: parts[0],
      pop: num(parts[1], i + 1, "pop", path),
      npop: num(parts[2], i + 1, "npop", path),
    };
  });
}

/** Headerless square matrix of pairwise swap distances. */
export function readDistanceMatrix(text: string, path: string): number[][] {
  const lines = splitLines(text);
  const matrix = lines.map((line, i) =>
    line.split(",").map((field) => num(field, i, "distance", path)),
  );
  const n = matrix.length;
  for (let i = 0; i < n; i++) {
    if (matrix[i].length !== n) {
      throw new SchemaError(
        `${path}: row ${i}: matrix is not square (${matrix[i].length} of ${n} columns)`,
      );
    }
    if (matrix[i][i] !== 0) {
      throw new SchemaError(`${path}: row ${i}: nonzero diagonal entry ${matrix[i][i]}`);
    }
  }
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      if (matrix[i][j] !== matrix[j][i]) {
        throw new SchemaError(`${path}: asymmetric at (${i},${j})`);
      }
    }
  }
  return matrix;
}
