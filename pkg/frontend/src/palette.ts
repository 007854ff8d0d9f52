/** Fixed color assignments, keyed by region code. Keeping them in one place
 * makes figure diffs reviewable. */

export type Rgb = [number, number, number];

export const REGION_COLORS: Record<string, Rgb> = {
  UNPHYS: [255, 255, 255], // unphysical states stay white
  SEP: [247, 216, 66],     // separable: yellow
  I: [214, 48, 38],        // robust quantum: red
  II: [130, 199, 232],     // fragile quantum: light blue
  III: [38, 70, 162],      // entangled, not quantum, not rescuable: blue
  V: [142, 84, 173],       // entangled, not quantum, rescuable: purple
};

export const AXIS_COLOR: Rgb = [40, 40, 40];
export const GRID_COLOR: Rgb = [210, 210, 210];
export const CONTOUR_COLOR: Rgb = [0, 0, 0];
export const FIDELITY_LINE: Rgb = [31, 90, 166];
export const THRESHOLD_LINE: Rgb = [198, 47, 38];
export const WITNESS_LINE: Rgb = [34, 128, 56];

/** Blue-to-yellow ramp for fidelity heightmaps; t in [0, 1]. */
export function heat(t: number): Rgb {
  const x = Math.min(1, Math.max(0, t));
  const stops: Array<[number, Rgb]> = [
    [0.0, [18, 32, 88]],
    [0.35, [42, 110, 170]],
    [0.65, [120, 190, 160]],
    [0.85, [230, 215, 100]],
    [1.0, [255, 246, 60]],
  ];
  for (let i = 1; i < stops.length; i += 1) {
    const [t1, c1] = stops[i];
    const [t0, c0] = stops[i - 1];
    if (x <= t1) {
      const u = (x - t0) / (t1 - t0);
      return [
        Math.round(c0[0] + u * (c1[0] - c0[0])),
        Math.round(c0[1] + u * (c1[1] - c0[1])),
        Math.round(c0[2] + u * (c1[2] - c0[2])),
      ];
    }
  }
  return stops[stops.length - 1][1];
}
