//! The nonsingularity criterion: coefficient matrix assembly, exact
//! determinants, verdicts and evaluation certificates.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{bigint_json, CyclotomicInt};
use crate::error::{invalid, Error, Result};
use crate::expansion::{eigen_coefficient, perm_coefficient};
use crate::monomial::{invariant_label_multisets, orbit_decomposition, EigenAction, Monomial, OrbitTable, PermAction};

/// The matrix `((a_rs))`: entry `(r, s)` is the coefficient of
/// `O_r(X) O_s(Y)`, read off at the orbit representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientMatrix {
    pub orbits: OrbitTable,
    pub entries: Vec<Vec<BigUint>>,
}

impl CoefficientMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn to_bigint(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| BigInt::from(e.clone())).collect())
            .collect()
    }
}

pub fn assemble_matrix(action: &PermAction) -> Result<CoefficientMatrix> {
    let n = action.group().order() as u32;
    let orbits = orbit_decomposition(action, n);
    let reps: Vec<&Monomial> = orbits.representatives().collect();
    let entries = reps
        .par_iter()
        .map(|mx| {
            reps.iter()
                .map(|my| perm_coefficient(action, mx, my))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoefficientMatrix { orbits, entries })
}

/// Fraction-free (Bareiss) elimination. The pivot is the first nonzero entry
/// in the current column, scanning rows top to bottom.
pub fn determinant(matrix: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return invalid("determinant needs a square matrix");
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = t.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Prime factors of `|d|` with multiplicity, by trial division. An empty
/// list means `|d| = 1`.
pub fn det_prime_factors(d: &BigInt) -> Result<Vec<BigUint>> {
    if d.is_zero() {
        return invalid("cannot factor zero");
    }
    let mut rest = d.abs().to_biguint().expect("nonnegative");
    let mut out = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        while (&rest % &p).is_zero() {
            rest /= &p;
            out.push(p.clone());
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        out.push(rest);
    }
    Ok(out)
}

/// A nonzero rational vector `v` with `A v = 0`, scaled to coprime integers.
pub fn kernel_vector(matrix: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..cols {
                    let t = &f * &a[row][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); cols];
    v[free] = BigRational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[r][free].clone();
    }
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &g).collect())
}

pub fn mat_vec(matrix: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    matrix
        .iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// One diagonal entry of the eigenbasis criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalEntry {
    pub monomial: Monomial,
    pub label_counts: Vec<u32>,
    pub value: CyclotomicInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Permutation basis: the determinant and the prime factors of `|det|`.
    Determinant {
        #[serde(with = "bigint_json")]
        det: BigInt,
        #[serde(with = "biguint_vec")]
        prime_factors: Vec<BigUint>,
    },
    /// Permutation basis, singular matrix: `A v = 0` with `v` nonzero.
    SingularMatrix {
        #[serde(with = "bigint_json::vec")]
        kernel: Vec<BigInt>,
    },
    /// Eigenbasis: every invariant diagonal entry, all nonzero.
    Diagonal { entries: Vec<DiagonalEntry> },
    /// Eigenbasis: an invariant monomial whose diagonal coefficient is zero.
    VanishingDiagonal { witness: DiagonalEntry },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub nondegenerate: bool,
    pub evidence: Evidence,
}

mod biguint_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
        let ints: Vec<BigInt> = v.iter().map(|x| BigInt::from(x.clone())).collect();
        bigint_json::vec::serialize(&ints, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigUint>, D::Error> {
        bigint_json::vec::deserialize(d)?
            .into_iter()
            .map(|x| x.to_biguint().ok_or_else(|| serde::de::Error::custom("negative factor")))
            .collect()
    }
}

/// Permutation-basis verdict: nondegenerate iff `det((a_rs)) != 0`.
pub fn nondegenerate_perm(action: &PermAction) -> Result<(CoefficientMatrix, Verdict)> {
    let matrix = assemble_matrix(action)?;
    let ints = matrix.to_bigint();
    let det = determinant(&ints)?;
    let verdict = if det.is_zero() {
        let kernel = kernel_vector(&ints).ok_or_else(|| Error::Internal("singular matrix without kernel".into()))?;
        if mat_vec(&ints, &kernel).iter().any(|x| !x.is_zero()) {
            return Err(Error::Internal("kernel vector does not annihilate the matrix".into()));
        }
        Verdict {
            nondegenerate: false,
            evidence: Evidence::SingularMatrix { kernel },
        }
    } else {
        let prime_factors = det_prime_factors(&det)?;
        Verdict {
            nondegenerate: true,
            evidence: Evidence::Determinant { det, prime_factors },
        }
    };
    Ok((matrix, verdict))
}

/// Eigenbasis verdict: nondegenerate iff every invariant diagonal entry is
/// nonzero. A degenerate verdict carries the first vanishing entry in
/// graded-lex order, re-evaluated before it is returned.
pub fn nondegenerate_eigen(action: &EigenAction) -> Result<Verdict> {
    let n = action.group().order() as u32;
    let multisets = invariant_label_multisets(action, n);
    let values = multisets
        .par_iter()
        .map(|c| eigen_coefficient(action, c))
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(values.len());
    for (counts, value) in multisets.into_iter().zip(values) {
        let monomial = action.monomial_from_label_counts(&counts)?;
        let entry = DiagonalEntry {
            monomial,
            label_counts: counts,
            value,
        };
        if entry.value.is_zero() {
            let recheck = crate::expansion::eigen_coefficient_with(
                action,
                &entry.label_counts,
                crate::expansion::EigenStrategy::Permanent,
            )?;
            if !recheck.is_zero() {
                return Err(Error::Internal(format!(
                    "strategies disagree on {}",
                    action.display_monomial(&entry.monomial)
                )));
            }
            return Ok(Verdict {
                nondegenerate: false,
                evidence: Evidence::VanishingDiagonal { witness: entry },
            });
        }
        entries.push(entry);
    }
    Ok(Verdict {
        nondegenerate: true,
        evidence: Evidence::Diagonal { entries },
    })
}

/// Polynomial with rational coefficients, as a list of terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    pub terms: Vec<(Monomial, BigRational)>,
}

impl RationalPolynomial {
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter().fold(c.clone(), |acc, (v, e)| {
                    let x = point.get(v).cloned().unwrap_or_else(BigRational::zero);
                    acc * num_traits::pow(x, e as usize)
                })
            })
            .sum()
    }

    pub fn num_vars(&self) -> usize {
        self.terms
            .iter()
            .filter_map(|(m, _)| m.max_var())
            .max()
            .map_or(0, |v| v + 1)
    }
}

/// The orbit sums `O_r` of a table, with unit coefficients.
pub fn orbit_sums(table: &OrbitTable) -> Vec<RationalPolynomial> {
    table
        .orbits
        .iter()
        .map(|o| RationalPolynomial {
            terms: o.members.iter().map(|m| (m.clone(), BigRational::one())).collect(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationCertificate {
    pub points: Vec<Vec<BigRational>>,
    /// `matrix[r][s] = polys[r](points[s])`.
    pub matrix: Vec<Vec<BigRational>>,
    pub determinant: BigRational,
    pub attempted: usize,
}

/// Deterministic candidate points: nonzero 0/1 vectors by Hamming weight
/// (for up to 12 variables), then geometric progressions `(t, t^2, ..., t^m)`
/// for `t = 2, 3, ...`, each followed by its perturbation `(t + 1, t^2 + 2, ...)`.
struct CandidatePoints {
    m: usize,
    masks: Vec<u32>,
    next: usize,
}

impl CandidatePoints {
    fn new(m: usize) -> Self {
        let mut masks: Vec<u32> = if (1..=12).contains(&m) { (1..1u32 << m).collect() } else { Vec::new() };
        masks.sort_by_key(|&x| (x.count_ones(), x));
        CandidatePoints { m, masks, next: 0 }
    }
}

impl Iterator for CandidatePoints {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        let idx = self.next;
        self.next += 1;
        if let Some(&mask) = self.masks.get(idx) {
            return Some((0..self.m).map(|i| BigInt::from((mask >> i) & 1)).collect());
        }
        let k = idx - self.masks.len();
        let t = BigInt::from(2 + k / 2);
        let shifted = k % 2 == 1;
        Some(
            (0..self.m)
                .map(|i| {
                    let base = num_traits::pow(t.clone(), i + 1);
                    if shifted {
                        base + BigInt::from(i + 1)
                    } else {
                        base
                    }
                })
                .collect(),
        )
    }
}

/// Greedily collects points that raise the rank of the evaluation matrix
/// until it is square and nonsingular, trying at most `budget` candidates.
pub fn evaluation_certificate(polys: &[RationalPolynomial], budget: usize) -> Result<EvaluationCertificate> {
    let nrows = polys.len();
    let m = polys.iter().map(RationalPolynomial::num_vars).max().unwrap_or(0);
    if nrows == 0 {
        return invalid("need at least one polynomial");
    }
    // Echelon rows of accepted evaluation vectors, with their pivot columns.
    let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut points: Vec<Vec<BigRational>> = Vec::new();
    let mut attempted = 0;
    let mut candidates = CandidatePoints::new(m);
    while points.len() < nrows {
        if attempted >= budget || (m == 0 && attempted > 0) {
            return Err(Error::SearchFailure { attempted });
        }
        attempted += 1;
        let point: Vec<BigRational> = candidates
            .next()
            .expect("candidate stream is infinite")
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let mut v: Vec<BigRational> = polys.iter().map(|p| p.eval(&point)).collect();
        for (pc, row) in &echelon {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone() / &row[*pc];
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            echelon.push((pc, v));
            points.push(point);
        }
    }
    let matrix: Vec<Vec<BigRational>> = polys
        .iter()
        .map(|p| points.iter().map(|pt| p.eval(pt)).collect())
        .collect();
    let det = rational_determinant(&matrix);
    if det.is_zero() {
        return Err(Error::Internal("accepted points give a singular evaluation matrix".into()));
    }
    Ok(EvaluationCertificate {
        points,
        matrix,
        determinant: det,
        attempted,
    })
}

pub fn rational_determinant(matrix: &[Vec<BigRational>]) -> BigRational {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;
    use rand::{Rng, SeedableRng};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::one();
        }
        let n = m.len();
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * cofactor_det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(), BigInt::one());
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(determinant(&mat(&[&[2, 4], &[1, 2]])).unwrap(), BigInt::zero());
        assert!(determinant(&mat(&[&[1, 2]])).is_err());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=5);
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect())
                .collect();
            assert_eq!(determinant(&m).unwrap(), cofactor_det(&m));
        }
    }

    #[test]
    fn prime_factor_examples() {
        assert!(det_prime_factors(&BigInt::one()).unwrap().is_empty());
        assert!(det_prime_factors(&BigInt::from(-1)).unwrap().is_empty());
        let f: Vec<u32> = det_prime_factors(&BigInt::from(-12))
            .unwrap()
            .iter()
            .map(|p| p.try_into().unwrap())
            .collect();
        assert_eq!(f, vec![2, 2, 3]);
        assert!(det_prime_factors(&BigInt::zero()).is_err());
    }

    #[test]
    fn small_matrices() {
        let c2 = AbelianGroup::cyclic(2).unwrap();
        let m = assemble_matrix(&PermAction::regular(&c2)).unwrap();
        assert_eq!(m.to_bigint(), mat(&[&[0, 1], &[1, 0]]));
        let t = assemble_matrix(&PermAction::regular(&AbelianGroup::trivial())).unwrap();
        assert_eq!(t.to_bigint(), mat(&[&[1]]));
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let v = kernel_vector(&m).unwrap();
        assert!(v.iter().any(|x| !x.is_zero()));
        assert!(mat_vec(&m, &v).iter().all(Zero::is_zero));
        assert!(kernel_vector(&mat(&[&[1, 0], &[0, 1]])).is_none());
    }

    #[test]
    fn verdict_examples() {
        let c4 = AbelianGroup::cyclic(4).unwrap();
        let v = nondegenerate_eigen(&EigenAction::regular(&c4)).unwrap();
        assert!(v.nondegenerate);
        match &v.evidence {
            Evidence::Diagonal { entries } => assert_eq!(entries.len(), 10),
            other => panic!("unexpected evidence {other:?}"),
        }

        let c6 = AbelianGroup::cyclic(6).unwrap();
        let act = EigenAction::regular(&c6);
        let v = nondegenerate_eigen(&act).unwrap();
        assert!(!v.nondegenerate);
        let Evidence::VanishingDiagonal { witness } = &v.evidence else {
            panic!("expected a witness");
        };
        assert!(witness.value.is_zero());

        let c5 = AbelianGroup::cyclic(5).unwrap();
        let (_, v) = nondegenerate_perm(&PermAction::regular(&c5)).unwrap();
        assert!(v.nondegenerate);
    }

    #[test]
    fn z6_permutation_matrix_is_singular() {
        let c6 = AbelianGroup::cyclic(6).unwrap();
        let (m, v) = nondegenerate_perm(&PermAction::regular(&c6)).unwrap();
        assert!(!v.nondegenerate);
        let Evidence::SingularMatrix { kernel } = v.evidence else {
            panic!("expected a kernel vector");
        };
        assert!(mat_vec(&m.to_bigint(), &kernel).iter().all(Zero::is_zero));
    }

    fn linear(var: usize) -> RationalPolynomial {
        RationalPolynomial {
            terms: vec![(Monomial::var(var), BigRational::one())],
        }
    }

    #[test]
    fn certificate_for_coordinate_forms() {
        let cert = evaluation_certificate(&[linear(0), linear(1)], 10).unwrap();
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        assert_eq!(cert.points, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        assert_eq!(cert.determinant, q(1));
    }

    #[test]
    fn certificate_for_order_two_orbit_sums() {
        let c2 = AbelianGroup::cyclic(2).unwrap();
        let table = orbit_decomposition(&PermAction::regular(&c2), 2);
        let cert = evaluation_certificate(&orbit_sums(&table), 10).unwrap();
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        assert_eq!(cert.points, vec![vec![q(1), q(0)], vec![q(1), q(1)]]);
        assert_eq!(cert.matrix, vec![vec![q(1), q(2)], vec![q(0), q(1)]]);
        assert_eq!(cert.determinant, q(1));
    }

    #[test]
    fn certificate_search_fails_on_dependent_input() {
        let polys = [linear(0), linear(0)];
        assert!(matches!(
            evaluation_certificate(&polys, 50),
            Err(Error::SearchFailure { attempted: 50 })
        ));
    }
}
