//! Exact rational helpers.
//!
//! Inclusion ratios, bound statistics and interval endpoints are all kept as
//! [`Fraction`]s. Floating point only appears when a ratio is fed into an
//! expression or printed.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary precision rational number.
pub type Fraction = BigRational;

/// Builds `num / den`. Panics if `den == 0`.
pub fn fraction(num: i64, den: i64) -> Fraction {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Fraction {
    Fraction::zero()
}

pub fn one() -> Fraction {
    Fraction::one()
}

/// Nearest `f64` to the fraction.
pub fn to_f64(value: &Fraction) -> f64 {
    // BigRational::to_f64 rounds correctly for the small operands we see;
    // fall back to a plain division if it ever declines.
    value.to_f64().unwrap_or_else(|| {
        let n = value.numer().to_f64().unwrap_or(f64::NAN);
        let d = value.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// The simplest rational (smallest denominator) that rounds to `value`.
/// A threshold typed as `0.8` therefore means `4/5`, and one computed as
/// `1.0 / 3.0` means `1/3`. Any ratio with a modest denominator compares
/// against the result exactly as its own `f64` compares against `value`.
/// Returns `None` for NaN or infinities.
pub fn from_f64(value: f64) -> Option<Fraction> {
    if !value.is_finite() {
        return None;
    }
    if value == 0.0 {
        return Some(zero());
    }
    if value < 0.0 {
        return from_f64(-value).map(|f| -f);
    }
    let exact = BigRational::from_float(value)?;
    let below = BigRational::from_float(f64::from_bits(value.to_bits() - 1))?;
    let Some(above) = BigRational::from_float(f64::from_bits(value.to_bits() + 1)) else {
        return Some(exact);
    };
    // Rounding interval of `value`: open between the midpoints to its neighbours.
    let two = BigInt::from(2);
    let lo = (&below + &exact) / Fraction::from_integer(two.clone());
    let hi = (&exact + &above) / Fraction::from_integer(two);
    Some(simplest_between(&lo, &hi))
}

/// Simplest rational strictly inside `(lo, hi)` for `0 <= lo < hi`, found by
/// walking the continued fraction expansions of both ends together.
fn simplest_between(lo: &Fraction, hi: &Fraction) -> Fraction {
    let (mut a, mut b) = (lo.numer().clone(), lo.denom().clone());
    // `None` stands for an unbounded upper end.
    let mut upper = Some((hi.numer().clone(), hi.denom().clone()));
    // Convergent recurrence seeds: h[-2]/k[-2] = 0/1, h[-1]/k[-1] = 1/0.
    let (mut h0, mut k0) = (BigInt::zero(), BigInt::one());
    let (mut h1, mut k1) = (BigInt::one(), BigInt::zero());
    loop {
        let fl = &a / &b;
        let next = &fl + 1;
        let fits = match &upper {
            None => true,
            Some((c, d)) => &next * d < *c,
        };
        if fits {
            return Fraction::new(&next * &h1 + &h0, &next * &k1 + &k0);
        }
        let (c, d) = upper.take().expect("bounded when no integer fits");
        // Both ends share the integer part `fl`; recurse on the reciprocals
        // of their fractional parts, which swaps the ends.
        let rest = &a - &fl * &b;
        upper = if rest.is_zero() {
            None
        } else {
            Some((b.clone(), rest))
        };
        (a, b) = (d.clone(), &c - &fl * &d);
        let h = &fl * &h1 + &h0;
        let k = &fl * &k1 + &k0;
        (h0, k0, h1, k1) = (h1, k1, h, k);
    }
}

/// Displays a fraction as `p/q ≈ decimal` (or just the integer when the
/// denominator is one).
pub struct Approx<'a>(pub &'a Fraction);

impl fmt::Display for Approx<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.0;
        if v.denom().is_one() {
            write!(f, "{}", v.numer())
        } else if terminates_within(v, 6) {
            write!(f, "{}", to_f64(v))
        } else {
            write!(f, "{}/{} ≈ {:.6}", v.numer(), v.denom(), to_f64(v))
        }
    }
}

/// True when the fraction has a decimal expansion of at most `digits`
/// places.
fn terminates_within(value: &Fraction, digits: u32) -> bool {
    let scale = BigInt::from(10u64.pow(digits));
    (value * Fraction::from_integer(scale)).is_integer()
}

/// `p/q` string form, used in JSON output next to the decimal.
pub fn exact_string(value: &Fraction) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
