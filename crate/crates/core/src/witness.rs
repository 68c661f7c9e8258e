//! Degeneracy witnesses for composite orders and certificates for prime
//! orders.
//!
//! Witness monomials live on the regular eigen-action of the (normalized)
//! group: variable `i` carries the character labelled by element index `i`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{reduce_mod_cyclotomic, CyclotomicInt, IntPolynomial};
use crate::error::{invalid, Error, Result};
use crate::expansion::{eigen_coefficient, factorial};
use crate::group::{factor_u64, gcd, is_prime, AbelianGroup};
use crate::monomial::{weight, Composition, EigenAction, Monomial};

/// Least prime divisor `p` of a composite `n`, and `q = n / p`.
pub fn least_prime_and_cofactor(n: u64) -> Result<(u64, u64)> {
    if n <= 1 || is_prime(n) {
        return invalid(format!("{n} is not composite"));
    }
    let p = factor_u64(n)[0].0;
    Ok((p, n / p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessCase {
    /// cyclic, `p | q`
    Ia,
    /// cyclic, `gcd(p, q) = 1`
    Ib,
    /// rank at least 2 with largest invariant factor at least 3
    II,
    /// `(Z/2)^k`, `k >= 3`
    III,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessMonomial {
    pub case: WitnessCase,
    /// The group the monomial's variables refer to (invariant-factor form).
    pub group: AbelianGroup,
    pub monomial: Monomial,
    /// `(p, q)` for the cyclic cases; `(q_1, n / q_1)` for Case II; `(2, n / 2)` for Case III.
    pub params: (u64, u64),
    /// Factor positions spanning the complementary subgroup (Cases II and III).
    pub subgroup_factors: Vec<usize>,
}

impl WitnessMonomial {
    pub fn action(&self) -> EigenAction {
        EigenAction::regular(&self.group)
    }

    pub fn display(&self) -> String {
        self.action().display_monomial(&self.monomial)
    }
}

fn cyclic_monomial(n: u64, terms: &[(u64, u32)]) -> Monomial {
    Monomial::from_pairs(terms.iter().map(|&(i, e)| ((i % n) as usize, e)))
}

/// The Subcase Ia formula `X_0 X_1^{q-2} X_{n-q+2} X_q^{(p-1)q}` with indices
/// reduced mod n, for any composite `n` with `p | q` (including `n = 4`,
/// where it collapses to `X_0^2 X_2^2`).
pub fn case_ia_formula(n: u64) -> Result<Monomial> {
    let (p, q) = least_prime_and_cofactor(n)?;
    if q % p != 0 {
        return invalid(format!("p={p} does not divide q={q} for n={n}"));
    }
    Ok(cyclic_monomial(
        n,
        &[(0, 1), (1, (q - 2) as u32), (n - q + 2, 1), (q, ((p - 1) * q) as u32)],
    ))
}

pub fn witness_case_ia(n: u64) -> Result<WitnessMonomial> {
    if n == 4 {
        return invalid("the Ia construction collapses for n = 4");
    }
    let monomial = case_ia_formula(n)?;
    let (p, q) = least_prime_and_cofactor(n)?;
    Ok(WitnessMonomial {
        case: WitnessCase::Ia,
        group: AbelianGroup::cyclic(n)?,
        monomial,
        params: (p, q),
        subgroup_factors: Vec::new(),
    })
}

/// `X_0^{q-2} X_{q-p} X_{n-q+p} X_p^{(p-1)q}`.
pub fn witness_case_ib(n: u64) -> Result<WitnessMonomial> {
    let (p, q) = least_prime_and_cofactor(n)?;
    if gcd(p, q) != 1 {
        return invalid(format!("gcd(p, q) = gcd({p}, {q}) != 1 for n={n}"));
    }
    Ok(WitnessMonomial {
        case: WitnessCase::Ib,
        group: AbelianGroup::cyclic(n)?,
        monomial: cyclic_monomial(
            n,
            &[(0, (q - 2) as u32), (q - p, 1), (n - q + p, 1), (p, ((p - 1) * q) as u32)],
        ),
        params: (p, q),
        subgroup_factors: Vec::new(),
    })
}

fn var_of(group: &AbelianGroup, coords: &[u64]) -> Result<usize> {
    Ok(group.index_of(&group.element(coords)?))
}

/// `X_{0..0}^{q-2} X_{0,1,..,1} X_{0,q_2-1,..,q_r-1} X_{1,..,1}^{q(q_1-1)}`
/// with `q = n / q_1`, on the invariant-factor form of `group`.
pub fn witness_case_ii(group: &AbelianGroup) -> Result<WitnessMonomial> {
    let g = group.normalized();
    let r = g.rank();
    if r < 2 || g.moduli()[r - 1] < 3 {
        return invalid(format!(
            "Case II needs rank >= 2 and largest factor >= 3, got {}",
            g.spec_string()
        ));
    }
    let n = g.order();
    let q1 = g.moduli()[0];
    let q = n / q1;
    let zero = vec![0u64; r];
    let mut ones = vec![1u64; r];
    ones[0] = 0;
    let mut tops: Vec<u64> = g.moduli().iter().map(|m| m - 1).collect();
    tops[0] = 0;
    let all_ones = vec![1u64; r];
    let mut monomial = Monomial::one();
    monomial.mul_var(var_of(&g, &zero)?, (q - 2) as u32);
    monomial.mul_var(var_of(&g, &ones)?, 1);
    monomial.mul_var(var_of(&g, &tops)?, 1);
    monomial.mul_var(var_of(&g, &all_ones)?, (q * (q1 - 1)) as u32);
    Ok(WitnessMonomial {
        case: WitnessCase::II,
        group: g,
        monomial,
        params: (q1, q),
        subgroup_factors: (1..r).collect(),
    })
}

/// `(prod_{v in U} X_{0,v}) X_{1,..,1}^q` for `G = Z/2 + U`, `q = n / 2`.
pub fn witness_case_iii(group: &AbelianGroup) -> Result<WitnessMonomial> {
    let g = group.normalized();
    let k = g.rank();
    if k < 3 || g.moduli().iter().any(|&m| m != 2) {
        return invalid(format!(
            "Case III needs (Z/2)^k with k >= 3, got {}",
            g.spec_string()
        ));
    }
    let factors: Vec<usize> = (1..k).collect();
    let u = g.subgroup_elements(&factors)?;
    let q = g.order() / 2;
    let mut monomial = Monomial::one();
    for v in &u {
        monomial.mul_var(g.index_of(v), 1);
    }
    monomial.mul_var(var_of(&g, &vec![1; k])?, q as u32);
    Ok(WitnessMonomial {
        case: WitnessCase::III,
        group: g,
        monomial,
        params: (2, q),
        subgroup_factors: factors,
    })
}

/// Picks the construction matching the structure of `group`.
pub fn select_witness(group: &AbelianGroup) -> Result<WitnessMonomial> {
    let g = group.normalized();
    let n = g.order();
    if n == 1 || n == 4 || is_prime(n) {
        return invalid(format!("order {n} admits no degeneracy witness"));
    }
    if g.rank() == 1 {
        let (p, q) = least_prime_and_cofactor(n)?;
        return if q % p == 0 {
            witness_case_ia(n)
        } else {
            witness_case_ib(n)
        };
    }
    if g.moduli().iter().all(|&m| m == 2) {
        witness_case_iii(&g)
    } else {
        witness_case_ii(&g)
    }
}

/// Coefficient of `m(X) m(Y)` in the norm of the regular eigen-action of
/// `group`, for an invariant degree-n monomial `m`.
pub fn witness_coefficient(group: &AbelianGroup, m: &Monomial) -> Result<CyclotomicInt> {
    let action = EigenAction::regular(group);
    let n = group.order();
    if m.degree() as u64 != n {
        return invalid(format!("witness has degree {}, expected {n}", m.degree()));
    }
    if !weight(m, &action)?.is_zero() {
        return invalid(format!("{} is not invariant", action.display_monomial(m)));
    }
    eigen_coefficient(&action, &action.label_counts(m)?)
}

/// True iff the diagonal coefficient of `m` is exactly zero.
pub fn verify_witness(group: &AbelianGroup, m: &Monomial) -> Result<bool> {
    Ok(witness_coefficient(group, m)?.is_zero())
}

/// Degree-`d` divisors of `m` whose label sum is divisible by `modulus`.
fn divisors_with(m: &Monomial, d: u32, modulus: u64) -> Vec<Monomial> {
    fn rec(
        terms: &[(usize, u32)],
        left: u32,
        wsum: u64,
        modulus: u64,
        cur: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        let Some((&(v, e), rest)) = terms.split_first() else {
            if left == 0 && wsum.is_multiple_of(modulus) {
                out.push(cur.clone());
            }
            return;
        };
        let avail: u32 = rest.iter().map(|t| t.1).sum();
        for k in 0..=e.min(left) {
            if left - k > avail {
                continue;
            }
            let mut next = cur.clone();
            next.mul_var(v, k);
            rec(rest, left - k, wsum + v as u64 * k as u64, modulus, &mut next, out);
        }
    }
    let terms: Vec<(usize, u32)> = m.iter().collect();
    let mut out = Vec::new();
    rec(&terms, d, 0, modulus, &mut Monomial::one(), &mut out);
    out
}

/// All unordered factorizations of `m` into `p` monomials of degree `q`, each
/// invariant under the subgroup of order `q` of `Z/n`. Factors within a tuple
/// are sorted graded-lex.
pub fn h_invariant_factorizations(n: u64, m: &Monomial) -> Result<Vec<Vec<Monomial>>> {
    let (p, q) = least_prime_and_cofactor(n)?;
    if q % p != 0 {
        return invalid(format!("needs p | q, got p={p}, q={q}"));
    }
    if m.degree() as u64 != n || m.max_var().is_some_and(|v| v as u64 >= n) {
        return invalid("monomial must have degree n in the variables X_0..X_{n-1}");
    }
    let total: u64 = m.iter().map(|(v, e)| v as u64 * e as u64).sum();
    if !total.is_multiple_of(n) {
        return invalid("monomial is not invariant");
    }
    // characters trivial on the order-q subgroup are exactly the multiples of q
    fn rec(rest: &Monomial, parts_left: u64, q: u64, max: Option<&Monomial>, cur: &mut Vec<Monomial>, out: &mut Vec<Vec<Monomial>>) {
        if parts_left == 0 {
            if rest.degree() == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in divisors_with(rest, q as u32, q) {
            if max.is_some_and(|mx| &d < mx) {
                continue;
            }
            let next = rest.div(&d).expect("divisor");
            cur.push(d.clone());
            rec(&next, parts_left - 1, q, Some(&d), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, p, q, None, &mut Vec::new(), &mut out);
    Ok(out)
}

/// `w(s) = sum_j s(j) * r(j)` where slot `j` (1-based) lies in block `r`
/// when `b_{r-1} < j <= b_r`.
fn block_of_slots(a: &Composition) -> Vec<u64> {
    a.parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &k)| std::iter::repeat_n(r as u64, k as usize))
        .collect()
}

/// Histogram of `w(s)` over all permutations `s` of `{0, ..., p-1}`, unreduced.
fn weight_histogram(a: &Composition) -> Vec<u64> {
    let p = a.p() as usize;
    let blocks = block_of_slots(a);
    let max_w = (p - 1) * p * (p - 1) / 2;
    let mut hist = vec![0u64; max_w + 1];
    for perm in (0..p as u64).permutations(p) {
        let w: u64 = perm.iter().zip(&blocks).map(|(s, r)| s * r).sum();
        hist[w as usize] += 1;
    }
    hist
}

/// `|S_{x,a}|` for every residue `x`.
pub fn prime_s_counts(a: &Composition) -> BTreeMap<u64, u64> {
    let p = a.p();
    let mut counts: BTreeMap<u64, u64> = (0..p).map(|x| (x, 0)).collect();
    for (w, c) in weight_histogram(a).into_iter().enumerate() {
        *counts.get_mut(&(w as u64 % p)).expect("residue") += c;
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateChecks {
    /// counts sum to p!
    pub counts_sum_to_factorial: bool,
    /// p divides every count
    pub all_divisible_by_p: bool,
    /// count at 0 differs from count at 1
    pub zero_differs_from_one: bool,
    /// counts[u x] = counts[x] for every unit u
    pub unit_symmetry: bool,
    /// sum_s T^{w(s)} is not divisible by Phi_p
    pub reduced_poly_nonzero: bool,
    /// sum_x counts[x] zeta^x = (prod a_i!) * eigen coefficient
    pub matches_eigen_coefficient: bool,
}

impl CertificateChecks {
    pub fn all_pass(&self) -> bool {
        self.counts_sum_to_factorial
            && self.all_divisible_by_p
            && self.zero_differs_from_one
            && self.unit_symmetry
            && self.reduced_poly_nonzero
            && self.matches_eigen_coefficient
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCertificate {
    pub p: u64,
    pub a: Vec<u32>,
    #[serde(with = "residue_keys")]
    pub counts: BTreeMap<u64, u64>,
    #[serde(with = "crate::cyclotomic::bigint_json::vec")]
    pub reduced_poly: Vec<BigInt>,
    pub eigen_coefficient: CyclotomicInt,
    pub checks: CertificateChecks,
}

/// Largest prime for which the `p!` permutations are enumerated.
pub const MAX_CERTIFICATE_PRIME: u64 = 11;

/// JSON object keys are strings; parse them back explicitly so the map also
/// survives buffered (tagged-enum) deserialization.
mod residue_keys {
    use std::collections::BTreeMap;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<u64, u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k.to_string(), v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, u64>, D::Error> {
        BTreeMap::<String, u64>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(D::Error::custom))
            .collect()
    }
}

/// Computes the counts and evaluates every check, without failing on a bad check.
pub fn build_prime_certificate(a: &Composition) -> Result<PrimeCertificate> {
    let p = a.p();
    if p > MAX_CERTIFICATE_PRIME {
        return invalid(format!("p={p} exceeds the enumeration limit {MAX_CERTIFICATE_PRIME}"));
    }
    let hist = weight_histogram(a);
    let counts = prime_s_counts(a);
    let poly = IntPolynomial::new(hist.iter().map(|&c| BigInt::from(c)).collect());
    let reduced = reduce_mod_cyclotomic(&poly, p);
    let folded: Vec<u64> = counts.values().copied().collect();
    let from_counts = CyclotomicInt::from_exponent_counts(p, &folded);

    let action = EigenAction::regular(&AbelianGroup::cyclic(p)?);
    let eigen = eigen_coefficient(&action, a.parts())?;
    let scale = a.parts().iter().fold(BigInt::from(1), |acc, &k| acc * factorial(k));

    let total: u64 = counts.values().sum();
    let checks = CertificateChecks {
        counts_sum_to_factorial: BigInt::from(total) == factorial(p as u32),
        all_divisible_by_p: counts.values().all(|c| c % p == 0),
        zero_differs_from_one: counts[&0] != counts[&(1 % p)],
        unit_symmetry: (1..p).all(|u| (0..p).all(|x| counts[&(u * x % p)] == counts[&x])),
        reduced_poly_nonzero: !reduced.is_zero(),
        matches_eigen_coefficient: reduced == from_counts && from_counts == eigen.scale(&scale),
    };
    Ok(PrimeCertificate {
        p,
        a: a.parts().to_vec(),
        counts,
        reduced_poly: reduced.coeffs().to_vec(),
        eigen_coefficient: eigen,
        checks,
    })
}

/// Like [`build_prime_certificate`], but any failed check is an error.
pub fn prime_certificate(a: &Composition) -> Result<PrimeCertificate> {
    let cert = build_prime_certificate(a)?;
    if !cert.checks.all_pass() {
        return Err(Error::CertificateFailure(format!(
            "p={} a={:?}: {:?}",
            cert.p, cert.a, cert.checks
        )));
    }
    Ok(cert)
}

/// Subsets of `F_2^k` are bitmasks over the `2^k` vectors, vectors are
/// integers whose bit `i` is coordinate `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Counts {
    pub dim: u32,
    pub v1: u32,
    pub even_zero: u64,
    pub odd_v1: u64,
    /// `(A, A xor {v1})` for every even, zero-sum `A`, in increasing order of `A`.
    pub pairing: Vec<(u32, u32)>,
    /// The pairing maps the first family onto the second and is an involution.
    pub bijection_verified: bool,
}

pub const LEMMA2_MAX_DIM: u32 = 4;

fn subset_sum(mask: u32) -> u32 {
    (0..32).filter(|i| mask >> i & 1 == 1).fold(0, |acc, v| acc ^ v)
}

pub fn lemma2_counts(dim: u32, v1: u32) -> Result<Lemma2Counts> {
    if dim == 0 || dim > LEMMA2_MAX_DIM {
        return invalid(format!("dimension must be in 1..={LEMMA2_MAX_DIM}, got {dim}"));
    }
    if v1 == 0 || v1 >= 1 << dim {
        return invalid(format!("v1 must be a nonzero vector of F_2^{dim}"));
    }
    let size = 1u32 << dim; // number of vectors
    let subsets: u64 = 1u64 << size;
    let in_first = |a: u32| a.count_ones().is_multiple_of(2) && subset_sum(a) == 0;
    let in_second = |a: u32| a.count_ones() % 2 == 1 && subset_sum(a) == v1;
    let flip = |a: u32| a ^ (1u32 << v1);
    let mut even_zero = 0;
    let mut odd_v1 = 0;
    let mut pairing = Vec::new();
    let mut ok = true;
    let mut hit = std::collections::HashSet::new();
    for a in 0..subsets {
        let a = a as u32;
        if in_first(a) {
            even_zero += 1;
            let b = flip(a);
            ok &= in_second(b) && flip(b) == a && hit.insert(b);
            pairing.push((a, b));
        }
        if in_second(a) {
            odd_v1 += 1;
            ok &= in_first(flip(a));
        }
    }
    ok &= hit.len() as u64 == odd_v1;
    Ok(Lemma2Counts {
        dim,
        v1,
        even_zero,
        odd_v1,
        pairing,
        bijection_verified: ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::compositions_prime;

    fn cm(_n: u64, terms: &[(usize, u32)]) -> Monomial {
        Monomial::from_pairs(terms.iter().copied())
    }

    #[test]
    fn least_prime_examples() {
        assert_eq!(least_prime_and_cofactor(6).unwrap(), (2, 3));
        assert_eq!(least_prime_and_cofactor(9).unwrap(), (3, 3));
        assert_eq!(least_prime_and_cofactor(8).unwrap(), (2, 4));
        for bad in [0, 1, 2, 7, 13] {
            assert!(least_prime_and_cofactor(bad).is_err());
        }
    }

    #[test]
    fn case_ia_examples() {
        assert_eq!(witness_case_ia(9).unwrap().monomial, cm(9, &[(0, 1), (1, 1), (8, 1), (3, 6)]));
        assert_eq!(witness_case_ia(8).unwrap().monomial, cm(8, &[(0, 1), (1, 2), (6, 1), (4, 4)]));
        assert!(witness_case_ia(4).is_err());
        assert!(witness_case_ia(6).is_err());
        assert_eq!(case_ia_formula(4).unwrap(), cm(4, &[(0, 2), (2, 2)]));
    }

    #[test]
    fn case_ib_examples() {
        assert_eq!(witness_case_ib(6).unwrap().monomial, cm(6, &[(0, 1), (1, 1), (5, 1), (2, 3)]));
        assert_eq!(witness_case_ib(10).unwrap().monomial, cm(10, &[(0, 3), (3, 1), (7, 1), (2, 5)]));
        assert_eq!(witness_case_ib(15).unwrap().monomial, cm(15, &[(0, 3), (2, 1), (13, 1), (3, 10)]));
        assert!(witness_case_ib(9).is_err());
    }

    #[test]
    fn case_ii_examples() {
        let w = witness_case_ii(&"2x4".parse().unwrap()).unwrap();
        assert_eq!(w.display(), "X[0,0]^2*X[0,1]*X[0,3]*X[1,1]^4");
        let w = witness_case_ii(&"3x3".parse().unwrap()).unwrap();
        assert_eq!(w.display(), "X[0,0]*X[0,1]*X[0,2]*X[1,1]^6");
        assert!(witness_case_ii(&"2x2".parse().unwrap()).is_err());
        assert!(witness_case_ii(&"6".parse().unwrap()).is_err());
    }

    #[test]
    fn case_iii_examples() {
        let w = witness_case_iii(&"2x2x2".parse().unwrap()).unwrap();
        assert_eq!(w.display(), "X[0,0,0]*X[0,0,1]*X[0,1,0]*X[0,1,1]*X[1,1,1]^4");
        let w = witness_case_iii(&"2x2x2x2".parse().unwrap()).unwrap();
        assert_eq!(w.monomial.degree(), 16);
        assert_eq!(w.monomial.support_len(), 9);
        assert_eq!(w.params, (2, 8));
        assert!(witness_case_iii(&"2x2".parse().unwrap()).is_err());
    }

    #[test]
    fn dispatch() {
        let case = |s: &str| select_witness(&s.parse().unwrap()).unwrap().case;
        assert_eq!(case("9"), WitnessCase::Ia);
        assert_eq!(case("6"), WitnessCase::Ib);
        assert_eq!(case("2x2x2"), WitnessCase::III);
        assert_eq!(case("2x4"), WitnessCase::II);
        assert_eq!(case("2x3"), WitnessCase::Ib);
        for bad in ["1", "2", "4", "2x2", "7"] {
            assert!(select_witness(&bad.parse().unwrap()).is_err(), "{bad}");
        }
    }

    fn int(group: &str, m: &Monomial) -> BigInt {
        witness_coefficient(&group.parse().unwrap(), m).unwrap().as_integer().expect("rational").clone()
    }

    // The constructed monomials do not vanish; these values were cross-checked
    // by a direct sum over arrangements outside this crate.
    #[test]
    fn constructed_monomials_have_nonzero_coefficients() {
        for (g, v) in [("6", 12), ("8", -24), ("9", 18), ("2x4", -24), ("3x3", 18), ("2x2x2", -48), ("10", 40)] {
            let w = select_witness(&g.parse().unwrap()).unwrap();
            assert_eq!(int(g, &w.monomial), BigInt::from(v), "{g}");
        }
    }

    #[test]
    fn verify_examples() {
        let c6 = AbelianGroup::cyclic(6).unwrap();
        assert!(!verify_witness(&c6, &cm(6, &[(0, 1), (1, 1), (5, 1), (2, 3)])).unwrap());
        assert!(verify_witness(&c6, &cm(6, &[(0, 2), (1, 1), (2, 1), (4, 1), (5, 1)])).unwrap());
        assert_eq!(int("4", &cm(4, &[(0, 2), (2, 2)])), BigInt::from(-2));
        let c4 = AbelianGroup::cyclic(4).unwrap();
        assert!(!verify_witness(&c4, &cm(4, &[(0, 2), (2, 2)])).unwrap());
        let c2 = AbelianGroup::cyclic(2).unwrap();
        assert!(!verify_witness(&c2, &cm(2, &[(0, 2)])).unwrap());
        assert!(verify_witness(&c2, &cm(2, &[(0, 1), (1, 1)])).is_err());
    }

    #[test]
    fn factorization_examples() {
        let m9 = witness_case_ia(9).unwrap().monomial;
        let f = h_invariant_factorizations(9, &m9).unwrap();
        let mut got: Vec<Vec<Monomial>> = f.into_iter().map(|mut t| { t.sort(); t }).collect();
        got.sort();
        let mut expect = vec![
            vec![cm(9, &[(0, 1), (1, 1), (8, 1)]), cm(9, &[(3, 3)]), cm(9, &[(3, 3)])],
            vec![cm(9, &[(1, 1), (3, 1), (8, 1)]), cm(9, &[(0, 1), (3, 2)]), cm(9, &[(3, 3)])],
        ];
        for t in expect.iter_mut() {
            t.sort();
        }
        expect.sort();
        assert_eq!(got, expect);

        let m8 = witness_case_ia(8).unwrap().monomial;
        assert_eq!(h_invariant_factorizations(8, &m8).unwrap().len(), 2);

        let f = h_invariant_factorizations(9, &cm(9, &[(0, 9)])).unwrap();
        assert_eq!(f, vec![vec![cm(9, &[(0, 3)]); 3]]);

        assert!(h_invariant_factorizations(6, &cm(6, &[(0, 6)])).is_err());
    }

    #[test]
    fn s_count_examples() {
        let c = |p, a: &[u32]| prime_s_counts(&Composition::new(p, a.to_vec()).unwrap());
        assert_eq!(c(2, &[0, 2]), BTreeMap::from([(0, 0), (1, 2)]));
        assert_eq!(c(3, &[1, 1, 1]), BTreeMap::from([(0, 0), (1, 3), (2, 3)]));
        assert_eq!(c(3, &[3, 0, 0]), BTreeMap::from([(0, 6), (1, 0), (2, 0)]));
    }

    #[test]
    fn certificate_examples() {
        let cert = prime_certificate(&Composition::new(3, vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(cert.reduced_poly, vec![BigInt::from(-3), BigInt::from(0)]);
        assert!(cert.checks.all_pass());
        let cert = prime_certificate(&Composition::new(2, vec![2, 0]).unwrap()).unwrap();
        assert_eq!(cert.counts, BTreeMap::from([(0, 2), (1, 0)]));
        for a in compositions_prime(5).unwrap() {
            assert!(prime_certificate(&a).is_ok(), "{a:?}");
        }
    }

    #[test]
    fn lemma2_examples() {
        let r = lemma2_counts(1, 1).unwrap();
        assert_eq!((r.even_zero, r.odd_v1), (1, 1));
        let r = lemma2_counts(2, 0b01).unwrap();
        assert_eq!((r.even_zero, r.odd_v1), (2, 2));
        for v1 in 1..8 {
            let r = lemma2_counts(3, v1).unwrap();
            assert_eq!(r.even_zero, r.odd_v1);
            assert!(r.bijection_verified);
        }
        assert!(lemma2_counts(3, 0).is_err());
        assert!(lemma2_counts(3, 8).is_err());
        assert!(lemma2_counts(5, 1).is_err());
    }
}
