//! Exact elements of real cyclotomic fields.
//!
//! A [`CycloNumber`] is a polynomial in `zeta_L = exp(2 pi i / L)` reduced
//! modulo the L-th cyclotomic polynomial, with rational coefficients and
//! even conductor `L`. Every value constructed by this crate is real
//! (fixed by `zeta -> zeta^-1`), which is what makes sign determination
//! meaningful.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{cos_table, Interval};

/// Default precision budget, in bits, for sign determination.
pub const DEFAULT_SIGN_BUDGET_BITS: u64 = 16384;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactError {
    /// The requested conductor is not a multiple of what the value needs.
    ConductorMismatch { conductor: u64, required: u64 },
    /// Interval refinement hit the precision budget without a decision.
    BudgetExceeded { bits: u64 },
    /// Two independent computations disagreed; this is a bug signal.
    Internal(&'static str),
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::ConductorMismatch { conductor, required } => write!(
                f,
                "conductor {conductor} is not a multiple of {required}"
            ),
            ExactError::BudgetExceeded { bits } => {
                write!(f, "precision budget of {bits} bits exhausted")
            }
            ExactError::Internal(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

/// Exact sign of a real number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn product(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Exact division of integer polynomials, both ascending-coefficient,
/// divisor monic. Panics if the division is not exact.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        quot[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Coefficients (ascending) of the L-th cyclotomic polynomial.
pub fn cyclotomic_poly(l: u64) -> Vec<BigInt> {
    let mut table: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for m in divisors(l) {
        // x^m - 1
        let mut f = vec![BigInt::zero(); m as usize + 1];
        f[0] = -BigInt::one();
        f[m as usize] = BigInt::one();
        for (d, phi_d) in &table {
            if m % d == 0 {
                f = int_poly_div_exact(&f, phi_d);
            }
        }
        table.push((m, f));
    }
    table.pop().unwrap().1
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

/// Remainder of `p` modulo the monic integer polynomial `m`.
fn poly_rem(p: &[BigRational], m: &[BigInt]) -> Vec<BigRational> {
    let dn = m.len() - 1;
    let mut rem: Vec<BigRational> = p.to_vec();
    while rem.len() > dn {
        let k = rem.len() - 1 - dn;
        let c = rem.pop().unwrap();
        if !c.is_zero() {
            for i in 0..dn {
                let t = &c * BigRational::from_integer(m[i].clone());
                rem[k + i] -= t;
            }
        }
        trim(&mut rem);
        if rem.len() <= dn {
            break;
        }
    }
    rem
}

fn poly_divmod(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let mut dv = den.to_vec();
    trim(&mut dv);
    assert!(!dv.is_empty(), "division by zero polynomial");
    let lead = dv.last().unwrap().clone();
    let dn = dv.len() - 1;
    if rem.len() <= dn {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dn];
    while rem.len() > dn {
        let k = rem.len() - 1 - dn;
        let c = rem.last().unwrap() / &lead;
        quot[k] = c.clone();
        for (i, d) in dv.iter().enumerate() {
            let t = &c * d;
            rem[k + i] -= t;
        }
        trim(&mut rem);
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Extended gcd of rational polynomials: returns (g, u, v) with
/// u*a + v*b = g.
fn poly_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut u0 = vec![BigRational::one()];
    let mut u1: Vec<BigRational> = Vec::new();
    let mut v0: Vec<BigRational> = Vec::new();
    let mut v1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let nu = poly_sub(&u0, &poly_mul(&q, &u1));
        let nv = poly_sub(&v0, &poly_mul(&q, &v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = nu;
        v0 = v1;
        v1 = nv;
    }
    (r0, u0, v0)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// An exact element of the real cyclotomic field Q(zeta_L + zeta_L^-1),
/// stored inside Q(zeta_L).
///
/// Structural equality (`==`, `Ord`, `Hash`) compares conductor and
/// coefficients verbatim; semantic equality across conductors is
/// [`CycloNumber::eq_unified`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycloNumber {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl CycloNumber {
    fn check_conductor(l: u64) {
        assert!(l >= 2 && l % 2 == 0, "conductor must be even and >= 2");
    }

    pub fn zero(conductor: u64) -> Self {
        Self::check_conductor(conductor);
        CycloNumber {
            conductor,
            coeffs: vec![BigRational::zero(); euler_phi(conductor) as usize],
        }
    }

    pub fn from_rational(conductor: u64, q: BigRational) -> Self {
        let mut x = Self::zero(conductor);
        x.coeffs[0] = q;
        x
    }

    pub fn from_integer(conductor: u64, n: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(n.into()))
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_integer(conductor, 1)
    }

    /// zeta_L^k as a reduced residue.
    pub fn zeta_pow(conductor: u64, k: u64) -> Self {
        Self::check_conductor(conductor);
        let k = (k % conductor) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Self::from_poly(conductor, poly)
    }

    fn from_poly(conductor: u64, poly: Vec<BigRational>) -> Self {
        Self::check_conductor(conductor);
        let modulus = cyclotomic_poly(conductor);
        let mut coeffs = poly_rem(&poly, &modulus);
        coeffs.resize(euler_phi(conductor) as usize, BigRational::zero());
        CycloNumber { conductor, coeffs }
    }

    /// cos(pi/m) in the field of the given conductor. `None` means the
    /// label `infinity`, for which the value is 1.
    pub fn cos_pi_over(m: Option<u64>, conductor: u64) -> Result<Self, ExactError> {
        Self::check_conductor(conductor);
        match m {
            None => Ok(Self::one(conductor)),
            Some(m) => {
                assert!(m >= 2, "label must be >= 2");
                if conductor % (2 * m) != 0 {
                    return Err(ExactError::ConductorMismatch {
                        conductor,
                        required: 2 * m,
                    });
                }
                let k = conductor / (2 * m);
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                let z = Self::zeta_pow(conductor, k);
                let zi = Self::zeta_pow(conductor, conductor - k);
                Ok(z.add(&zi).scale(&half))
            }
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Rational part, if the value is rational (all higher coefficients zero).
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Lift to a (multiple) conductor.
    pub fn lift(&self, conductor: u64) -> Result<Self, ExactError> {
        if conductor % self.conductor != 0 {
            return Err(ExactError::ConductorMismatch {
                conductor,
                required: self.conductor,
            });
        }
        if conductor == self.conductor {
            return Ok(self.clone());
        }
        let step = (conductor / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_poly(conductor, poly))
    }

    fn unified(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let l = self.conductor.lcm(&other.conductor);
        (self.lift(l).unwrap(), other.lift(l).unwrap())
    }

    /// Semantic equality after conductor unification.
    pub fn eq_unified(&self, other: &Self) -> bool {
        let (a, b) = self.unified(other);
        a == b
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.unified(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c = -c.clone();
        }
        a
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c *= q;
        }
        a
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.unified(other);
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        Self::from_poly(a.conductor, prod)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let modulus: Vec<BigRational> = cyclotomic_poly(self.conductor)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let (g, u, _) = poly_ext_gcd(&self.coeffs, &modulus);
        assert!(g.len() == 1, "residue not invertible");
        let inv_g = g[0].recip();
        let scaled: Vec<BigRational> = u.iter().map(|c| c * &inv_g).collect();
        Self::from_poly(self.conductor, scaled)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Image under zeta -> zeta^-1.
    pub fn conj(&self) -> Self {
        let l = self.conductor;
        let mut poly = vec![BigRational::zero(); l as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = if i == 0 { 0 } else { l as usize - i };
            poly[j] = c.clone();
        }
        Self::from_poly(l, poly)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Certified rational enclosure of the real embedding at precision
    /// `bits` (the enclosure width is not guaranteed, only soundness).
    pub fn approx_interval(&self, bits: u64) -> Interval {
        let table = cos_table(self.conductor, bits);
        let mut acc = Interval::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&table[i].scale(c));
            }
        }
        acc.round_out(bits)
    }

    /// Exact sign under the real embedding.
    ///
    /// Zero is decided symbolically; a nonzero residue is refined by
    /// interval evaluation with doubling precision up to `budget_bits`.
    pub fn sign(&self, budget_bits: u64) -> Result<Sign, ExactError> {
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        debug_assert!(self.is_real(), "sign of a non-real cyclotomic number");
        let mut bits = 64;
        loop {
            let enc = self.approx_interval(bits);
            match enc.definite_sign() {
                Some(Ordering::Greater) => return Ok(Sign::Positive),
                Some(Ordering::Less) => return Ok(Sign::Negative),
                _ => {}
            }
            if bits >= budget_bits {
                return Err(ExactError::BudgetExceeded { bits });
            }
            bits = (bits * 2).min(budget_bits.max(bits + 1));
        }
    }

    pub fn sign_default(&self) -> Result<Sign, ExactError> {
        self.sign(DEFAULT_SIGN_BUDGET_BITS)
    }

    /// Decimal preview with a certified error bound, e.g. `"0.809017 (+/- 2^-40)"`.
    pub fn decimal_preview(&self, bits: u64) -> String {
        use alloc::format;
        let enc = self.approx_interval(bits);
        let mid = enc.midpoint();
        // 10^-9 rendering via scaled integer arithmetic.
        let scale = BigInt::from(1_000_000_000u64);
        let scaled = (mid.numer() * &scale).div_floor(mid.denom());
        let (int_part, frac_part) = scaled.div_rem(&scale);
        let frac = frac_part.magnitude().to_string();
        let sign = if scaled.is_negative() && int_part.is_zero() {
            "-"
        } else {
            ""
        };
        format!(
            "{sign}{int_part}.{frac:0>9} (+/- 2^-{bits})",
            bits = bits.saturating_sub(2)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::str::FromStr;
    use alloc::string::ToString;

    fn q(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    fn approx(x: &CycloNumber) -> f64 {
        let m = x.approx_interval(96).midpoint();
        let n = f64::from_str(&m.numer().to_string()).unwrap();
        let d = f64::from_str(&m.denom().to_string()).unwrap();
        n / d
    }

    #[test]
    fn cyclotomic_polys() {
        // Phi_1 = x - 1, Phi_2 = x + 1, Phi_4 = x^2 + 1, Phi_12 = x^4 - x^2 + 1
        assert_eq!(cyclotomic_poly(2), vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(
            cyclotomic_poly(4),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_poly(12),
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
        assert_eq!(cyclotomic_poly(10).len() as u64, euler_phi(10) + 1);
    }

    #[test]
    fn cos_examples() {
        // cos(pi/2) = 0
        let c = CycloNumber::cos_pi_over(Some(2), 4).unwrap();
        assert!(c.is_zero());
        // cos(pi/3) = 1/2
        let c = CycloNumber::cos_pi_over(Some(3), 6).unwrap();
        assert_eq!(c.as_rational(), Some(q("1/2")));
        // cos(pi/infinity) = 1
        let c = CycloNumber::cos_pi_over(None, 2).unwrap();
        assert_eq!(c.as_rational(), Some(q("1")));
        // conductor mismatch
        assert!(matches!(
            CycloNumber::cos_pi_over(Some(5), 4),
            Err(ExactError::ConductorMismatch { .. })
        ));
    }

    #[test]
    fn cos_pi_over_5_matches_float() {
        let c = CycloNumber::cos_pi_over(Some(5), 10).unwrap();
        assert!((approx(&c) - 0.8090169943749475).abs() < 1e-12);
        assert!(c.is_real());
    }

    #[test]
    fn sign_examples() {
        let l = 10;
        let zero = CycloNumber::zero(l);
        assert_eq!(zero.sign_default().unwrap(), Sign::Zero);
        // 2cos(pi/5) - 1 > 0
        let two = BigRational::from_integer(2.into());
        let x = CycloNumber::cos_pi_over(Some(5), l)
            .unwrap()
            .scale(&two)
            .sub(&CycloNumber::one(l));
        assert_eq!(x.sign_default().unwrap(), Sign::Positive);
        assert_eq!(x.neg().sign_default().unwrap(), Sign::Negative);
        // 2cos(pi/3) - 1 = 0
        let y = CycloNumber::cos_pi_over(Some(3), 6)
            .unwrap()
            .scale(&two)
            .sub(&CycloNumber::one(6));
        assert_eq!(y.sign_default().unwrap(), Sign::Zero);
    }

    #[test]
    fn arithmetic_and_unification() {
        let a = CycloNumber::cos_pi_over(Some(4), 8).unwrap();
        let b = CycloNumber::cos_pi_over(Some(3), 6).unwrap();
        let s = a.add(&b);
        assert_eq!(s.conductor(), 24);
        assert!((approx(&s) - (0.7071067811865476 + 0.5)).abs() < 1e-12);
        // product, quotient
        let p = a.mul(&a);
        assert_eq!(p.as_rational(), Some(q("1/2")));
        let r = a.div(&a);
        assert!(r.eq_unified(&CycloNumber::one(8)));
        // semantic equality across conductors
        let half6 = CycloNumber::from_rational(6, q("1/2"));
        let half8 = CycloNumber::from_rational(8, q("1/2"));
        assert!(half6.eq_unified(&half8));
    }

    #[test]
    fn sign_multiplicativity() {
        let l = 20;
        let xs = [
            CycloNumber::cos_pi_over(Some(5), l).unwrap(),
            CycloNumber::cos_pi_over(Some(10), l).unwrap().neg(),
            CycloNumber::from_rational(l, q("-3/7")),
            CycloNumber::zero(l),
        ];
        for x in &xs {
            for y in &xs {
                let lhs = x.mul(y).sign_default().unwrap();
                let rhs = x
                    .sign_default()
                    .unwrap()
                    .product(y.sign_default().unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}
