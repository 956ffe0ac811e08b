/** Minimal deterministic SVG assembly: fixed float formatting, no DOM. */

export const WIDTH = 640;
export const HEIGHT = 480;
export const MARGIN = { top: 24, right: 24, bottom: 44, left: 56 };

export function fmt(x: number): string {
  return Number.isInteger(x) ? String(x) : x.toFixed(2);
}

export interface Scale {
  (x: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((x: number) => r0 + ((x - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  return scale;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const lo = Math.log10(Math.max(domain[0], 1e-9));
  const hi = Math.log10(Math.max(domain[1], 1e-9));
  const inner = linearScale([lo, hi], range);
  const scale = ((x: number) => inner(Math.log10(Math.max(x, 1e-9)))) as Scale;
  scale.domain = domain;
  return scale;
}

export function ticks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= count) ?? 10 * step;
  const start = Math.ceil(lo / chosen) * chosen;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12; v += chosen) out.push(Number(v.toPrecision(12)));
  return out;
}

export const PALETTE = [
  "#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377", "#bbbbbb",
  "#222255", "#225555", "#552222",
];

/** Two-stop color ramp for normalized popularity. */
export function heatColor(t: number): string {
  const clamp = Math.max(0, Math.min(1, t));
  const lerp = (a: number, b: number) => Math.round(a + (b - a) * clamp);
  // blue (low) to red (high)
  return `rgb(${lerp(69, 215)},${lerp(117, 48)},${lerp(180, 39)})`;
}

export class SvgDoc {
  private parts: string[] = [];

  constructor(width = WIDTH, height = HEIGHT) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  add(fragment: string): void {
    this.parts.push(fragment);
  }

  axes(x: Scale, y: Scale, xLabel: string, yLabel: string, logX = false): void {
    const x0 = MARGIN.left;
    const x1 = WIDTH - MARGIN.right;
    const y0 = HEIGHT - MARGIN.bottom;
    const y1 = MARGIN.top;
    this.add(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="black"/>`);
    this.add(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`);
    const xt = logX
      ? logTicks(x.domain[0], x.domain[1])
      : ticks(x.domain[0], x.domain[1]);
    for (const t of xt) {
      const px = x(t);
      this.add(`<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y0 + 4}" stroke="black"/>`);
      this.add(
        `<text x="${fmt(px)}" y="${y0 + 18}" text-anchor="middle">${fmt(t)}</text>`,
      );
    }
    for (const t of ticks(y.domain[0], y.domain[1])) {
      const py = y(t);
      this.add(`<line x1="${x0 - 4}" y1="${fmt(py)}" x2="${x0}" y2="${fmt(py)}" stroke="black"/>`);
      this.add(
        `<text x="${x0 - 8}" y="${fmt(py + 4)}" text-anchor="end">${fmt(t)}</text>`,
      );
    }
    this.add(
      `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 8}" text-anchor="middle">${xLabel}</text>`,
    );
    this.add(
      `<text x="14" y="${(y0 + y1) / 2}" text-anchor="middle" ` +
        `transform="rotate(-90 14 ${(y0 + y1) / 2})">${yLabel}</text>`,
    );
  }

  legend(entries: Array<{ label: string; color: string }>): void {
    entries.forEach(({ label, color }, i) => {
      const y = MARGIN.top + 14 * i;
      const x = WIDTH - MARGIN.right - 130;
      this.add(`<rect x="${x}" y="${y - 8}" width="10" height="10" fill="${color}"/>`);
      this.add(`<text x="${x + 16}" y="${y + 1}">${label}</text>`);
    });
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

function logTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let e = Math.floor(Math.log10(Math.max(lo, 1))); Math.pow(10, e) <= hi; e++) {
    const base = Math.pow(10, e);
    if (base >= lo) out.push(base);
  }
  return out.length >= 2 ? out : [lo, hi];
}
