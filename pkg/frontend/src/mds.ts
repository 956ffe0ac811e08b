/**
 * Classical metric multidimensional scaling into the plane.
 *
 * Double-centers the squared distance matrix and extracts the top two
 * eigenpairs by power iteration with deflation. The iteration starts
 * from a seeded PRNG and runs a fixed number of rounds, so the embedding
 * is a pure function of (matrix, seed).
 */

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function matVec(m: number[][], v: number[]): number[] {
  const n = v.length;
  const out = new Array<number>(n).fill(0);
  for (let i = 0; i < n; i++) {
    let acc = 0;
    const row = m[i];
    for (let j = 0; j < n; j++) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

function norm(v: number[]): number {
  return Math.sqrt(v.reduce((acc, x) => acc + x * x, 0));
}

function topEigenpair(
  m: number[][],
  rand: () => number,
  iterations: number,
): { value: number; vector: number[] } {
  const n = m.length;
  let v = Array.from({ length: n }, () => rand() - 0.5);
  let scale = norm(v) || 1;
  v = v.map((x) => x / scale);
  for (let it = 0; it < iterations; it++) {
    const w = matVec(m, v);
    const wn = norm(w);
    if (wn < 1e-12) break;
    v = w.map((x) => x / wn);
  }
  const mv = matVec(m, v);
  const value = v.reduce((acc, x, i) => acc + x * mv[i], 0);
  return { value, vector: v };
}

/** Embed a symmetric distance matrix into n x 2 coordinates. */
export function classicalMds(dist: number[][], seed: number): Array<[number, number]> {
  const n = dist.length;
  if (n === 1) return [[0, 0]];
  const sq = dist.map((row) => row.map((x) => x * x));
  const rowMean = sq.map((row) => row.reduce((a, b) => a + b, 0) / n);
  const totalMean = rowMean.reduce((a, b) => a + b, 0) / n;
  const b = sq.map((row, i) =>
    row.map((x, j) => -0.5 * (x - rowMean[i] - rowMean[j] + totalMean)),
  );

  const rand = mulberry32(seed);
  const coords: number[][] = [];
  const work = b.map((row) => row.slice());
  for (let axis = 0; axis < 2; axis++) {
    const { value, vector } = topEigenpair(work, rand, 300);
    const lambda = Math.max(value, 0);
    // fix the sign so the embedding does not flip between runs
    let pivot = 0;
    for (let i = 1; i < n; i++) {
      if (Math.abs(vector[i]) > Math.abs(vector[pivot])) pivot = i;
    }
    const sign = vector[pivot] >= 0 ? 1 : -1;
    coords.push(vector.map((x) => sign * x * Math.sqrt(lambda)));
    for (let i = 0; i < n; i++) {
      for (let j = 0; j < n; j++) {
        work[i][j] -= value * vector[i] * vector[j];
      }
    }
  }
  return Array.from({ length: n }, (_, i) => [coords[0][i], coords[1][i]]);
}
