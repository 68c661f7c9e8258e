//! Exact arithmetic in `Z[zeta_n]`.
//!
//! Elements are stored as their remainder modulo the n-th cyclotomic
//! polynomial, so the coefficient vector has length `phi(n)` and equality
//! (in particular the zero test) is plain vector equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::group::gcd;

/// Dense integer polynomial, index = degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// `T^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPolynomial::new(out)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Division by a monic polynomial: `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        if !divisor.is_monic() {
            return invalid("divisor must be monic");
        }
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[i]);
            if lead.is_zero() {
                continue;
            }
            for (k, c) in divisor.coeffs[..d].iter().enumerate() {
                rem[i - d + k] -= &lead * c;
            }
            quot[i - d] = lead;
        }
        rem.truncate(d);
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
        })
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("T")?,
                (1, false) => write!(f, "{mag}T")?,
                (_, true) => write!(f, "T^{i}")?,
                (_, false) => write!(f, "{mag}T^{i}")?,
            }
        }
        Ok(())
    }
}

pub fn euler_phi(n: u64) -> u64 {
    crate::group::factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<IntPolynomial>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The n-th cyclotomic polynomial, obtained by dividing `T^n - 1` exactly by
/// `Phi_d` for every proper divisor `d`. Results are cached.
pub fn cyclotomic_polynomial(n: u64) -> Arc<IntPolynomial> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    if let Some(p) = phi_cache().read().expect("cache poisoned").get(&n) {
        return p.clone();
    }
    let mut num = IntPolynomial::monomial(n as usize);
    num.coeffs[0] = BigInt::from(-1);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = num
            .div_rem_monic(&cyclotomic_polynomial(d))
            .expect("cyclotomic polynomials are monic");
        debug_assert!(r.is_zero());
        num = q;
    }
    let phi = Arc::new(num);
    phi_cache()
        .write()
        .expect("cache poisoned")
        .entry(n)
        .or_insert(phi)
        .clone()
}

/// An element of `Z[zeta_n]` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    n: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(n: u64) -> Self {
        assert!(n >= 1);
        CyclotomicInt {
            n,
            coeffs: vec![BigInt::zero(); euler_phi(n) as usize],
        }
    }

    pub fn one(n: u64) -> Self {
        Self::from_integer(n, BigInt::one())
    }

    pub fn from_integer(n: u64, c: BigInt) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = c;
        z
    }

    /// Builds a value from coefficients already in canonical form.
    pub fn from_canonical(n: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        if n == 0 {
            return invalid("modulus must be positive");
        }
        let phi = euler_phi(n) as usize;
        if coeffs.len() != phi {
            return invalid(format!(
                "canonical form for n={n} has {phi} coefficients, got {}",
                coeffs.len()
            ));
        }
        Ok(CyclotomicInt { n, coeffs })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Some(c) when the value is the rational integer c.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    /// Builds `sum_k counts[k] * zeta^k` from an exponent histogram of any length.
    pub fn from_exponent_counts<C: Into<BigInt> + Clone>(n: u64, counts: &[C]) -> Self {
        let mut folded = vec![BigInt::zero(); n as usize];
        for (k, c) in counts.iter().enumerate() {
            folded[k % n as usize] += c.clone().into();
        }
        reduce_mod_cyclotomic(&IntPolynomial::new(folded), n)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        Ok(CyclotomicInt {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        Ok(CyclotomicInt {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let prod = IntPolynomial::new(self.coeffs.clone()).mul(&IntPolynomial::new(other.coeffs.clone()));
        Ok(reduce_mod_cyclotomic(&prod, self.n))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact division of every coefficient by `d`; fails if any remainder is nonzero.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return invalid("division by zero");
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::Internal(format!("{self} is not divisible by {d}")));
            }
            coeffs.push(q);
        }
        Ok(CyclotomicInt { n: self.n, coeffs })
    }

    /// Image under the automorphism `zeta -> zeta^k`; `k` must be a unit mod n.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.n as i64;
        let k = k.rem_euclid(n);
        if gcd(k as u64, self.n) != 1 {
            return invalid(format!("{k} is not a unit modulo {n}"));
        }
        let mut counts = vec![BigInt::zero(); self.n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            counts[((i as i64 * k) % n) as usize] += c;
        }
        Ok(Self::from_exponent_counts(self.n, &counts))
    }

    /// Complex conjugate, `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    /// Floating-point image under `zeta -> exp(2 pi i / n)`. Diagnostics only.
    pub fn to_complex(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU / self.n as f64);
        IntPolynomial::new(self.coeffs.clone()).eval_complex(z)
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return invalid(format!("modulus mismatch: {} vs {}", self.n, other.n));
        }
        Ok(())
    }
}

/// `zeta_n^k` in canonical form.
pub fn zeta_pow(n: u64, k: i64) -> CyclotomicInt {
    let e = k.rem_euclid(n as i64) as usize;
    reduce_mod_cyclotomic(&IntPolynomial::monomial(e), n)
}

/// Canonical remainder of `p` modulo `Phi_n`; zero iff `Phi_n` divides `p`.
pub fn reduce_mod_cyclotomic(p: &IntPolynomial, n: u64) -> CyclotomicInt {
    let phi = cyclotomic_polynomial(n);
    let (_, r) = p.div_rem_monic(&phi).expect("cyclotomic polynomials are monic");
    let mut coeffs = r.coeffs;
    coeffs.resize(euler_phi(n) as usize, BigInt::zero());
    CyclotomicInt { n, coeffs }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &CyclotomicInt {
            type Output = CyclotomicInt;
            /// Panics on modulus mismatch; use the `try_` form to get an error instead.
            fn $method(self, rhs: &CyclotomicInt) -> CyclotomicInt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for CyclotomicInt {
            type Output = CyclotomicInt;
            fn $method(self, rhs: CyclotomicInt) -> CyclotomicInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        -&self
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = IntPolynomial::new(self.coeffs.clone());
        let s = p.to_string().replace('T', &format!("z{}", self.n));
        f.write_str(&s)
    }
}

/// Serde adapter writing a `BigInt` as a bare JSON number of any size.
pub mod bigint_json {
    use super::*;
    use serde::de::Error as _;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        let num: serde_json::Number = v
            .to_string()
            .parse()
            .map_err(|_| serde::ser::Error::custom("unrepresentable integer"))?;
        num.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let num = serde_json::Number::deserialize(d)?;
        num.to_string()
            .parse()
            .map_err(|_| D::Error::custom(format!("not an integer: {num}")))
    }

    pub mod vec {
        use super::*;

        #[derive(Serialize, Deserialize)]
        struct Wrap(#[serde(with = "super")] BigInt);

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|b| Wrap(b.clone())))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
            let v: Vec<Wrap> = Vec::deserialize(d)?;
            Ok(v.into_iter().map(|w| w.0).collect())
        }
    }

    pub mod matrix {
        use super::*;

        #[derive(Serialize, Deserialize)]
        struct Row(#[serde(with = "super::vec")] Vec<BigInt>);

        pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|r| Row(r.clone())))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<BigInt>>, D::Error> {
            let v: Vec<Row> = Vec::deserialize(d)?;
            Ok(v.into_iter().map(|r| r.0).collect())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicJson {
    n: u64,
    #[serde(with = "bigint_json::vec")]
    coeffs: Vec<BigInt>,
}

impl Serialize for CyclotomicInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicJson {
            n: self.n,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CyclotomicJson::deserialize(d)?;
        CyclotomicInt::from_canonical(raw.n, raw.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(*cyclotomic_polynomial(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(5), IntPolynomial::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12).to_string(), "T^4 - T^2 + 1");
    }

    #[test]
    fn zeta_pow_examples() {
        assert_eq!(zeta_pow(4, 2).coeffs(), ints(&[-1, 0]).as_slice());
        assert_eq!(zeta_pow(5, 4).coeffs(), ints(&[-1, -1, -1, -1]).as_slice());
        for n in 1..=20 {
            assert_eq!(zeta_pow(n, n as i64), CyclotomicInt::one(n));
            assert_eq!(zeta_pow(n, 0), CyclotomicInt::one(n));
        }
        assert_eq!(zeta_pow(7, -1), zeta_pow(7, 6));
    }

    #[test]
    fn reduction_examples() {
        assert!(reduce_mod_cyclotomic(&cyclotomic_polynomial(5), 5).is_zero());
        let r = reduce_mod_cyclotomic(&IntPolynomial::from_i64(&[0, 2]), 2);
        assert_eq!(r.coeffs(), ints(&[-2]).as_slice());
        let r = reduce_mod_cyclotomic(&IntPolynomial::from_i64(&[0, 3, 3]), 3);
        assert_eq!(r.coeffs(), ints(&[-3, 0]).as_slice());
    }

    #[test]
    fn ring_operation_examples() {
        let z4 = zeta_pow(4, 1);
        assert_eq!(&z4 * &z4, CyclotomicInt::from_integer(4, BigInt::from(-1)));
        let x = zeta_pow(7, 3) + zeta_pow(7, 5);
        assert_eq!(&x + &CyclotomicInt::zero(7), x);
        for n in 2..=12 {
            let s = (0..n as i64).fold(CyclotomicInt::zero(n), |acc, t| acc + zeta_pow(n, t));
            assert!(s.is_zero(), "n={n}");
        }
        assert!(zeta_pow(3, 1).try_add(&zeta_pow(4, 1)).is_err());
        assert!(zeta_pow(3, 1).try_mul(&zeta_pow(4, 1)).is_err());
    }

    #[test]
    fn zeta_has_exact_order_n() {
        for n in 1..=24u64 {
            let z = zeta_pow(n, 1);
            let mut acc = CyclotomicInt::one(n);
            for k in 1..=n {
                acc = &acc * &z;
                assert_eq!(acc == CyclotomicInt::one(n), k == n, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn phi_degree_and_root() {
        for n in 1..=30u64 {
            let phi = cyclotomic_polynomial(n);
            assert_eq!(phi.degree(), Some(euler_phi(n) as usize));
            // Phi_n evaluated at zeta_n inside the ring
            let z = zeta_pow(n, 1);
            let mut val = CyclotomicInt::zero(n);
            let mut pw = CyclotomicInt::one(n);
            for c in phi.coeffs() {
                val = &val + &pw.scale(c);
                pw = &pw * &z;
            }
            assert!(val.is_zero(), "Phi_{n}(zeta) != 0");
        }
    }

    #[test]
    fn product_of_phi_over_divisors_is_t_n_minus_1() {
        for n in 1..=30u64 {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(IntPolynomial::from_i64(&[1]), |acc, d| acc.mul(&cyclotomic_polynomial(d)));
            let mut expect = IntPolynomial::monomial(n as usize);
            expect.coeffs[0] = BigInt::from(-1);
            assert_eq!(prod, expect, "n={n}");
        }
    }

    #[test]
    fn root_of_unity_annihilation() {
        for n in 1..=12u64 {
            for k in 1..n {
                let s = (0..n as i64).fold(CyclotomicInt::zero(n), |acc, t| acc + zeta_pow(n, t * k as i64));
                assert!(s.is_zero(), "n={n} k={k}");
            }
            let s = (0..n as i64).fold(CyclotomicInt::zero(n), |acc, t| acc + zeta_pow(n, t * n as i64));
            assert_eq!(s.as_integer(), Some(&BigInt::from(n)));
        }
    }

    #[test]
    fn json_shape() {
        let v = zeta_pow(5, 4).scale(&BigInt::from(123456789012345678901234567890i128));
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with("{\"n\":5,\"coeffs\":[-123456789012345678901234567890,"));
        let back: CyclotomicInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<CyclotomicInt>("{\"n\":5,\"coeffs\":[1,2]}").is_err());
    }

    #[test]
    fn galois_and_exact_division() {
        let x = zeta_pow(8, 3).scale(&BigInt::from(6));
        assert_eq!(x.conjugate(), zeta_pow(8, 5).scale(&BigInt::from(6)));
        assert_eq!(x.div_exact(&BigInt::from(3)).unwrap(), zeta_pow(8, 3).scale(&BigInt::from(2)));
        assert!(matches!(x.div_exact(&BigInt::from(4)), Err(Error::Internal(_))));
        assert!(x.galois(2).is_err());
    }
}
