import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  SchemaError,
  readCurve,
  readDistanceMatrix,
  readHistogram,
  readPopularity,
  readSizes,
} from "../src/csv";
import { classicalMds } from "../src/mds";
import {
  renderCurve,
  renderHistogram,
  renderMicroscope,
  renderSizes,
} from "../src/plots";

const FIXTURES = join(__dirname, "fixtures");

function fixture(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf8");
}

function count(haystack: string, needle: RegExp): number {
  return (haystack.match(needle) ?? []).length;
}

describe("microscope", () => {
  const matrix = readDistanceMatrix(
    fixture("gsbal_m8_distances.csv"),
    "gsbal_m8_distances.csv",
  );
  const popularity = readPopularity(
    fixture("gsbal_m8_popularity.csv"),
    "gsbal_m8_popularity.csv",
  );

  it("renders the balanced-tree domain as 128 bordered dots and no crosses", () => {
    const svg = renderMicroscope(matrix, popularity, 7);
    expect(count(svg, /class="marker dot bordered"/g)).toBe(128);
    expect(count(svg, /class="marker cross"/g)).toBe(0);
  });

  it("is deterministic for a fixed seed", () => {
    const a = renderMicroscope(matrix, popularity, 3);
    const b = renderMicroscope(matrix, popularity, 3);
    expect(a).toBe(b);
  });

  it("marks below-average popularity as crosses", () => {
    const dist = [
      [0, 1, 2],
      [1, 0, 1],
      [2, 1, 0],
    ];
    const pop = [
      { ranking: "0 1 2", pop: 4, npop: 1.5 },
      { ranking: "1 0 2", pop: 1, npop: 0.5 },
      { ranking: "1 2 0", pop: 4, npop: 1.0 },
    ];
    const svg = renderMicroscope(dist, pop, 1);
    expect(count(svg, /class="marker cross"/g)).toBe(1);
    expect(count(svg, /class="marker dot bordered"/g)).toBe(1);
    expect(count(svg, /class="marker dot( bordered)?"/g)).toBe(2);
  });

  it("rejects mismatched matrix and popularity lengths", () => {
    expect(() => renderMicroscope(matrix, popularity.slice(1), 1)).toThrow(
      SchemaError,
    );
  });

  it("embeds antipodal structure farther apart than neighbors", () => {
    const coords = classicalMds(
      [
        [0, 1, 6],
        [1, 0, 5],
        [6, 5, 0],
      ],
      11,
    );
    const d = (a: [number, number], b: [number, number]) =>
      Math.hypot(a[0] - b[0], a[1] - b[1]);
    expect(d(coords[0], coords[1])).toBeLessThan(d(coords[0], coords[2]));
  });
});

describe("curve", () => {
  it("renders one series per family with an error band", () => {
    const rows = readCurve(fixture("curve.csv"), "curve.csv");
    const svg = renderCurve(rows);
    expect(count(svg, /class="series"/g)).toBe(2); // sp and gscat
    expect(count(svg, /<polygon/g)).toBe(2);
    expect(svg).toContain("outer diversity");
  });

  it("rejects a header mismatch with a diagnostic", () => {
    expect(() => readCurve(fixture("bad_curve.csv"), "bad_curve.csv")).toThrow(
      /header mismatch/,
    );
  });
});

describe("sizes", () => {
  it("renders the heuristic comparison on a log axis", () => {
    const rows = readSizes(fixture("sizes.csv"), "sizes.csv");
    const svg = renderSizes(rows);
    expect(count(svg, /class="series"/g)).toBeGreaterThanOrEqual(3);
  });
});

describe("histogram", () => {
  it("renders one bar per distance layer", () => {
    const rows = readHistogram(
      fixture("voterev_m8_histogram.csv"),
      "voterev_m8_histogram.csv",
    );
    const svg = renderHistogram(rows);
    expect(count(svg, /class="bar"/g)).toBe(rows.length);
    expect(rows[0]).toEqual({ distance: 0, count: 2 });
    expect(rows[1]).toEqual({ distance: 1, count: 14 });
  });
});

describe("schema validation", () => {
  it("rejects wrong popularity header", () => {
    expect(() =>
      readPopularity(fixture("bad_popularity.csv"), "bad_popularity.csv"),
    ).toThrow(/header mismatch/);
  });

  it("rejects non-square matrices", () => {
    expect(() => readDistanceMatrix("0,1\n1,0\n2,3", "x.csv")).toThrow(/square/);
  });

  it("rejects asymmetric matrices", () => {
    expect(() => readDistanceMatrix("0,1\n2,0", "x.csv")).toThrow(/asymmetric/);
  });

  it("rejects nonzero diagonals", () => {
    expect(() => readDistanceMatrix("1,1\n1,0", "x.csv")).toThrow(/diagonal/);
  });

  it("rejects non-numeric fields with row and column named", () => {
    expect(() =>
      readCurve("family,m,outdiv,std\nsp,3,abc,0.1", "c.csv"),
    ).toThrow(/column "outdiv"/);
  });
});
