/** Shared constants and reference curves for the figure renderers. */

/** Threshold marked on every p-axis: 4 − 2√3 ≈ 0.535898. */
export const P_STAR = 4 - 2 * Math.sqrt(3);

/**
 * Limiting largest-component fraction of the (r+1)-state equal-state
 * model at marginal p: (1 + √(((r+1)p − 1)/r)) / (r+1), defined for
 * p ∈ (1/(r+1), 1/r].
 */
export function componentFractionCurve(r: number, p: number): number {
  if (!Number.isInteger(r) || r < 1) {
    throw new RangeError(`r must be a positive integer, got ${r}`);
  }
  if (!(p > 1 / (r + 1) && p <= 1 / r)) {
    throw new RangeError(`p=${p} outside (1/${r + 1}, 1/${r}]`);
  }
  return (1 + Math.sqrt(((r + 1) * p - 1) / r)) / (r + 1);
}

/** Two-state agreement probability root: (1 + √(2p − 1)) / 2. */
export function theta(p: number): number {
  return componentFractionCurve(1, p);
}
