//! Rational interval arithmetic with certified enclosures of pi and cosine.
//!
//! Used only to decide the sign of real cyclotomic numbers: a value
//! `sum a_i zeta^i` is evaluated as `sum a_i cos(2 pi i / L)` with every
//! cosine replaced by a rational enclosure, so the final interval is a
//! rigorous bound on the embedded value.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Closed interval with rational endpoints, `lo <= hi`.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn two_pow(bits: u64) -> BigInt {
    BigInt::one() << bits
}

/// floor(q * 2^bits) as an integer.
fn floor_scaled(q: &BigRational, bits: u64) -> BigInt {
    (q.numer() << bits).div_floor(q.denom())
}

/// ceil(q * 2^bits) as an integer.
fn ceil_scaled(q: &BigRational, bits: u64) -> BigInt {
    (q.numer() << bits).div_ceil(q.denom())
}

fn from_scaled(n: BigInt, bits: u64) -> BigRational {
    BigRational::new(n, two_pow(bits))
}

impl Interval {
    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn zero() -> Self {
        Interval::point(BigRational::zero())
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Multiply by an exact rational scalar.
    pub fn scale(&self, q: &BigRational) -> Interval {
        let a = &self.lo * q;
        let b = &self.hi * q;
        if q.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    pub fn widen(&self, pad: &BigRational) -> Interval {
        Interval {
            lo: &self.lo - pad,
            hi: &self.hi + pad,
        }
    }

    /// Round endpoints outward to denominators 2^bits, keeping numbers small.
    pub fn round_out(&self, bits: u64) -> Interval {
        Interval {
            lo: from_scaled(floor_scaled(&self.lo, bits), bits),
            hi: from_scaled(ceil_scaled(&self.hi, bits), bits),
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    /// Sign of every point of the interval, if uniform.
    pub fn definite_sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

/// Scaled alternating series for arctan(1/x), x >= 2.
///
/// Returns (lo, hi) such that lo/2^bits <= arctan(1/x) <= hi/2^bits.
fn arctan_recip_scaled(x: u32, bits: u64) -> (BigInt, BigInt) {
    let scale = two_pow(bits);
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = x.clone(); // x^(2j+1)
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let den = &power * BigInt::from(2 * j + 1);
        let t = (&scale).div_floor(&den);
        if t.is_zero() {
            break;
        }
        if j % 2 == 0 {
            lo += &t;
            hi += &t + 1;
        } else {
            lo -= &t + 1;
            hi -= &t;
        }
        power *= &x2;
        j += 1;
    }
    // Tail of the alternating series is below one ulp.
    (lo - 1, hi + 1)
}

/// Certified enclosure of pi (Machin's formula).
pub fn pi(bits: u64) -> Interval {
    let b = bits + 16;
    let (a5_lo, a5_hi) = arctan_recip_scaled(5, b);
    let (a239_lo, a239_hi) = arctan_recip_scaled(239, b);
    let lo = &a5_lo * 16 - &a239_hi * 4;
    let hi = &a5_hi * 16 - &a239_lo * 4;
    Interval {
        lo: from_scaled(lo, b),
        hi: from_scaled(hi, b),
    }
    .round_out(bits)
}

/// Taylor enclosure of cos(c) for rational 0 <= c < 8.
fn cos_taylor(c: &BigRational, bits: u64) -> Interval {
    let b = bits + 32;
    let scale = two_pow(b);
    // Enclosure of c^2 scaled by 2^b.
    let c2 = c * c;
    let c2_lo = floor_scaled(&c2, b);
    let c2_hi = ceil_scaled(&c2, b);
    // Term magnitudes u_j ~ c^(2j)/(2j)!, scaled; u_0 = 2^b exactly.
    let mut u_lo = scale.clone();
    let mut u_hi = scale.clone();
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        if j % 2 == 0 {
            sum_lo += &u_lo;
            sum_hi += &u_hi;
        } else {
            sum_lo -= &u_hi;
            sum_hi -= &u_lo;
        }
        let den = &scale * BigInt::from((2 * j + 1) * (2 * j + 2));
        let next_lo = (&u_lo * &c2_lo).div_floor(&den);
        let next_hi = (&u_hi * &c2_hi).div_ceil(&den);
        j += 1;
        // Once terms are below one ulp and decreasing, the alternating
        // tail is bounded by one ulp.
        if next_hi.is_zero() || (next_hi.is_one() && j > 4) {
            sum_lo -= 2;
            sum_hi += 2;
            break;
        }
        u_lo = next_lo;
        u_hi = next_hi;
    }
    Interval {
        lo: from_scaled(sum_lo, b),
        hi: from_scaled(sum_hi, b),
    }
    .round_out(bits)
}

/// Certified enclosure of cos(2 pi k / l).
pub fn cos_two_pi_frac(k: u64, l: u64, bits: u64) -> Interval {
    debug_assert!(l > 0 && k < l);
    let angle = pi(bits + 8).scale(&BigRational::new(
        BigInt::from(2 * k),
        BigInt::from(l),
    ));
    let mid = angle.midpoint();
    let half_width = angle.width() / BigRational::from_integer(2.into());
    cos_taylor(&mid, bits).widen(&half_width).round_out(bits)
}

/// Enclosures of cos(2 pi k / l) for k = 0 .. l-1, sharing one pi evaluation.
pub fn cos_table(l: u64, bits: u64) -> Vec<Interval> {
    let pi_enc = pi(bits + 8);
    (0..l)
        .map(|k| {
            let angle = pi_enc.scale(&BigRational::new(
                BigInt::from(2 * k),
                BigInt::from(l),
            ));
            let mid = angle.midpoint();
            let half_width = angle.width() / BigRational::from_integer(2.into());
            cos_taylor(&mid, bits).widen(&half_width).round_out(bits)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::str::FromStr;
    use alloc::string::ToString;

    fn approx(i: &Interval) -> f64 {
        let m = i.midpoint();
        let n = f64::from_str(&m.numer().to_string()).unwrap();
        let d = f64::from_str(&m.denom().to_string()).unwrap();
        n / d
    }

    #[test]
    fn pi_enclosure_is_tight() {
        let p = pi(128);
        assert!((approx(&p) - core::f64::consts::PI).abs() < 1e-12);
        assert!(p.width() < BigRational::new(BigInt::one(), BigInt::one() << 120));
    }

    #[test]
    fn cos_values() {
        // cos(0) = 1
        let c = cos_two_pi_frac(0, 4, 96);
        assert!((approx(&c) - 1.0).abs() < 1e-12);
        // cos(pi/2) = 0
        let c = cos_two_pi_frac(1, 4, 96);
        assert!(approx(&c).abs() < 1e-12);
        // cos(2pi/3) = -1/2
        let c = cos_two_pi_frac(1, 3, 96);
        assert!((approx(&c) + 0.5).abs() < 1e-12);
        // cos(2pi * 9/10) = cos(pi/5) ~ 0.809017
        let c = cos_two_pi_frac(9, 10, 96);
        assert!((approx(&c) - 0.8090169943749475).abs() < 1e-12);
    }

    #[test]
    fn cos_table_matches_pointwise() {
        let t = cos_table(12, 64);
        for (k, enc) in t.iter().enumerate() {
            let single = cos_two_pi_frac(k as u64, 12, 64);
            let d = approx(enc) - approx(&single);
            assert!(d.abs() < 1e-15);
        }
    }
}
