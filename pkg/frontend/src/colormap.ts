/** Palettes for the figure kinds: sign classes, sequential, diverging. */

export type Rgb = [number, number, number];

/** Sign-map classes, keyed by the PGM gray levels the pipeline writes. */
export const SIGN_COLORS: Record<number, Rgb> = {
  255: [210, 180, 140], // positive: tan
  0: [56, 96, 178], // negative: blue
  128: [128, 128, 128], // blow-up: gray
};

function lerp(a: Rgb, b: Rgb, t: number): Rgb {
  return [
    Math.round(a[0] + (b[0] - a[0]) * t),
    Math.round(a[1] + (b[1] - a[1]) * t),
    Math.round(a[2] + (b[2] - a[2]) * t),
  ];
}

function fromStops(stops: Rgb[], t: number): Rgb {
  const x = Math.min(1, Math.max(0, t)) * (stops.length - 1);
  const i = Math.min(stops.length - 2, Math.floor(x));
  return lerp(stops[i], stops[i + 1], x - i);
}

const VIRIDIS_STOPS: Rgb[] = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

/** Sequential map for field magnitudes and surface height. */
export function viridis(t: number): Rgb {
  return fromStops(VIRIDIS_STOPS, t);
}

const DIVERGING_STOPS: Rgb[] = [
  [5, 48, 97],
  [116, 173, 209],
  [247, 247, 247],
  [244, 165, 130],
  [165, 0, 38],
];

/** Diverging map (blue .. white .. red) for signed indicators. */
export function diverging(t: number): Rgb {
  return fromStops(DIVERGING_STOPS, t);
}

/** Clamp a value into [lo, hi] and normalize to [0, 1]. */
export function normalize(value: number, lo: number, hi: number): number {
  if (!(hi > lo)) return 0.5;
  const v = Math.min(hi, Math.max(lo, value));
  return (v - lo) / (hi - lo);
}
