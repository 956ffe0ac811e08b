/**
 * The four figure kinds, each a pure function from parsed CSV rows to an
 * SVG string. No diversity number is computed here; everything numeric
 * comes from the CSV inputs (the MDS embedding only re-expresses the
 * member distance matrix geometrically).
 */

import {
  CurveRow,
  HistogramRow,
  PopularityRow,
  SchemaError,
  SizesRow,
} from "./csv";
import { classicalMds } from "./mds";
import {
  HEIGHT,
  MARGIN,
  PALETTE,
  SvgDoc,
  WIDTH,
  fmt,
  heatColor,
  linearScale,
  logScale,
} from "./svg";

const PLOT_X: [number, number] = [MARGIN.left, WIDTH - MARGIN.right];
const PLOT_Y: [number, number] = [HEIGHT - MARGIN.bottom, MARGIN.top];
const NPOP_ONE_EPS = 1e-9;

function groupBy<T>(rows: T[], key: (row: T) => string): Map<string, T[]> {
  const out = new Map<string, T[]>();
  for (const row of rows) {
    const k = key(row);
    const bucket = out.get(k);
    if (bucket) bucket.push(row);
    else out.set(k, [row]);
  }
  return out;
}

export function renderCurve(rows: CurveRow[]): string {
  if (rows.length === 0) throw new SchemaError("curve: no data rows");
  const doc = new SvgDoc();
  const ms = rows.map((r) => r.m);
  const x = linearScale([Math.min(...ms), Math.max(...ms)], PLOT_X);
  const y = linearScale([0, 1], PLOT_Y);
  const families = groupBy(rows, (r) => r.family);
  const legend: Array<{ label: string; color: string }> = [];
  let colorIdx = 0;
  for (const [family, series] of families) {
    const color = PALETTE[colorIdx++ % PALETTE.length];
    legend.push({ label: family, color });
    const sorted = [...series].sort((a, b) => a.m - b.m);
    const band = [
      ...sorted.map((r) => `${fmt(x(r.m))},${fmt(y(r.outdiv + r.std))}`),
      ...[...sorted].reverse().map((r) => `${fmt(x(r.m))},${fmt(y(r.outdiv - r.std))}`),
    ].join(" ");
    doc.add(`<polygon points="${band}" fill="${color}" opacity="0.15"/>`);
    const line = sorted
      .map((r) => `${fmt(x(r.m))},${fmt(y(r.outdiv))}`)
      .join(" ");
    doc.add(
      `<polyline points="${line}" fill="none" stroke="${color}" class="series" stroke-width="1.5"/>`,
    );
    for (const r of sorted) {
      doc.add(
        `<circle cx="${fmt(x(r.m))}" cy="${fmt(y(r.outdiv))}" r="2.5" fill="${color}"/>`,
      );
    }
  }
  doc.axes(x, y, "number of candidates", "outer diversity");
  doc.legend(legend);
  return doc.render();
}

export function renderSizes(rows: SizesRow[]): string {
  if (rows.length === 0) throw new SchemaError("sizes: no data rows");
  const doc = new SvgDoc();
  const sizes = rows.map((r) => r.sizeOrT);
  const x = logScale([Math.min(...sizes), Math.max(...sizes)], PLOT_X);
  const y = linearScale([0, 1], PLOT_Y);
  const methods = groupBy(rows, (r) => r.method);
  const legend: Array<{ label: string; color: string }> = [];
  let colorIdx = 0;
  for (const [method, series] of methods) {
    const color = PALETTE[colorIdx++ % PALETTE.length];
    legend.push({ label: method, color });
    const sorted = [...series].sort((a, b) => a.sizeOrT - b.sizeOrT);
    if (sorted.length > 1) {
      const line = sorted
        .map((r) => `${fmt(x(r.sizeOrT))},${fmt(y(r.outdiv))}`)
        .join(" ");
      doc.add(
        `<polyline points="${line}" fill="none" stroke="${color}" class="series" stroke-width="1.5"/>`,
      );
    }
    for (const r of sorted) {
      doc.add(
        `<circle cx="${fmt(x(r.sizeOrT))}" cy="${fmt(y(r.outdiv))}" r="3" fill="${color}"/>`,
      );
      if (r.std > 0) {
        const px = fmt(x(r.sizeOrT));
        doc.add(
          `<line x1="${px}" y1="${fmt(y(r.outdiv - r.std))}" x2="${px}" ` +
            `y2="${fmt(y(r.outdiv + r.std))}" stroke="${color}"/>`,
        );
      }
    }
  }
  doc.axes(x, y, "domain size / threshold", "outer diversity", true);
  doc.legend(legend);
  return doc.render();
}

export function renderHistogram(rows: HistogramRow[]): string {
  if (rows.length === 0) throw new SchemaError("histogram: no data rows");
  const doc = new SvgDoc();
  const maxDist = Math.max(...rows.map((r) => r.distance));
  const maxCount = Math.max(...rows.map((r) => r.count));
  const x = linearScale([-0.5, maxDist + 0.5], PLOT_X);
  const y = linearScale([0, maxCount], PLOT_Y);
  const barWidth = (PLOT_X[1] - PLOT_X[0]) / (maxDist + 1);
  for (const r of rows) {
    const left = x(r.distance - 0.45);
    const width = barWidth * 0.9;
    const top = y(r.count);
    const height = PLOT_Y[0] - top;
    doc.add(
      `<rect class="bar" x="${fmt(left)}" y="${fmt(top)}" width="${fmt(width)}" ` +
        `height="${fmt(Math.max(height, 0))}" fill="#4477aa"/>`,
    );
  }
  doc.axes(x, y, "swap distance to the domain", "rankings");
  return doc.render();
}

export function renderMicroscope(
  matrix: number[][],
  popularity: PopularityRow[],
  seed: number,
): string {
  if (matrix.length !== popularity.length) {
    throw new SchemaError(
      `microscope: distance matrix has ${matrix.length} members, ` +
        `popularity file has ${popularity.length}`,
    );
  }
  const coords = classicalMds(matrix, seed);
  const xs = coords.map((c) => c[0]);
  const ys = coords.map((c) => c[1]);
  const pad = 0.08;
  const spanX = Math.max(...xs) - Math.min(...xs) || 1;
  const spanY = Math.max(...ys) - Math.min(...ys) || 1;
  const x = linearScale(
    [Math.min(...xs) - pad * spanX, Math.max(...xs) + pad * spanX],
    PLOT_X,
  );
  const y = linearScale(
    [Math.min(...ys) - pad * spanY, Math.max(...ys) + pad * spanY],
    PLOT_Y,
  );
  const npops = popularity.map((r) => r.npop);
  const lo = Math.min(...npops);
  const hi = Math.max(...npops);
  const span = hi - lo || 1;

  const doc = new SvgDoc();
  coords.forEach(([cx, cy], i) => {
    const npop = npops[i];
    const color = heatColor((npop - lo) / span);
    const px = fmt(x(cx));
    const py = fmt(y(cy));
    if (npop < 1 - NPOP_ONE_EPS) {
      // below-average members render as crosses
      doc.add(
        `<g class="marker cross" stroke="${color}" stroke-width="1.5">` +
          `<line x1="${fmt(x(cx) - 3)}" y1="${fmt(y(cy) - 3)}" x2="${fmt(x(cx) + 3)}" y2="${fmt(y(cy) + 3)}"/>` +
          `<line x1="${fmt(x(cx) - 3)}" y1="${fmt(y(cy) + 3)}" x2="${fmt(x(cx) + 3)}" y2="${fmt(y(cy) - 3)}"/>` +
          `</g>`,
      );
      return;
    }
    const bordered = Math.abs(npop - 1) <= NPOP_ONE_EPS;
    const cls = bordered ? "marker dot bordered" : "marker dot";
    const stroke = bordered ? ` stroke="black" stroke-width="1"` : "";
    doc.add(
      `<circle class="${cls}" cx="${px}" cy="${py}" r="4" fill="${color}"${stroke}/>`,
    );
  });
  doc.add(
    `<text x="${WIDTH - MARGIN.right}" y="${HEIGHT - 8}" text-anchor="end">` +
      `${matrix.length} members, npop in [${npops.length ? fmt(lo) : "?"}, ${fmt(hi)}]</text>`,
  );
  return doc.render();
}
