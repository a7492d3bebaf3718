/**
 * Exact rational strings, as the API emits them.
 *
 * Every number in the session protocol is a canonical "p/q" or "n" string.
 * The UI keeps that string untouched as the value of record and derives a
 * fixed-point rendering from it with BigInt arithmetic, so nothing is ever
 * routed through floating point.
 */

export interface Rational {
  readonly num: bigint;
  readonly den: bigint;
}

const RATIONAL_PATTERN = /^(-?\d+)(?:\/(-?\d+))?$/;

export function parseRational(text: string): Rational {
  const match = RATIONAL_PATTERN.exec(text.trim());
  if (!match || match[1] === undefined) {
    throw new Error(`not a rational: ${JSON.stringify(text)}`);
  }
  let num = BigInt(match[1]);
  let den = match[2] === undefined ? 1n : BigInt(match[2]);
  if (den === 0n) {
    throw new Error(`zero denominator: ${JSON.stringify(text)}`);
  }
  if (den < 0n) {
    num = -num;
    den = -den;
  }
  return { num, den };
}

/** Fixed-point rendering to four places, rounding halves away from zero. */
export function decimal4(value: string | Rational): string {
  const r = typeof value === "string" ? parseRational(value) : value;
  const negative = r.num < 0n;
  const magnitude = negative ? -r.num : r.num;
  const scaled = magnitude * 10000n;
  let quotient = scaled / r.den;
  if ((scaled % r.den) * 2n >= r.den) {
    quotient += 1n;
  }
  const whole = quotient / 10000n;
  const places = (quotient % 10000n).toString().padStart(4, "0");
  const sign = negative && quotient > 0n ? "-" : "";
  return `${sign}${whole}.${places}`;
}

/**
 * A displayable number: the API's exact string plus its decimal rendering.
 * The exact string is what equality against the API is judged on; the
 * decimal exists only for the reader.
 */
export interface ExactNumber {
  readonly exact: string;
  readonly decimal: string;
}

export function exactNumber(text: string): ExactNumber {
  return { exact: text, decimal: decimal4(text) };
}

/** Strict comparison of two rational strings: -1, 0, or 1. */
export function compareRational(a: string, b: string): number {
  const left = parseRational(a);
  const right = parseRational(b);
  const cross = left.num * right.den - right.num * left.den;
  return cross < 0n ? -1 : cross > 0n ? 1 : 0;
}

/**
 * CSS percentage for positioning within [0, 1]; presentation only, the
 * exact value never flows back into any computation.
 */
export function unitPercent(text: string): string {
  const r = parseRational(text);
  const ratio = Number(r.num) / Number(r.den);
  const clamped = Math.min(1, Math.max(0, ratio));
  return `${(clamped * 100).toFixed(2)}%`;
}
