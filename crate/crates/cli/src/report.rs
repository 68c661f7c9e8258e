//! JSON report types. Monomials are written with their variable labels so a
//! report can be read without the group at hand.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use nql_core::criterion::{CoefficientMatrix, DiagonalEntry, Evidence, Verdict};
use nql_core::cyclotomic::bigint_json;
use nql_core::witness::{Lemma2Counts, PrimeCertificate, WitnessCase, WitnessMonomial};
use nql_core::{CyclotomicInt, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub var: String,
    pub exp: u32,
}

pub fn labelled(m: &Monomial, label: impl Fn(usize) -> String) -> Vec<Term> {
    m.iter().map(|(v, e)| Term { var: label(v), exp: e }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Representation {
    RegularPerm,
    RegularEigen,
    CustomEigen { multiplicities: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub group: Option<String>,
    pub representation: Option<Representation>,
    pub command: Vec<String>,
    pub payload: Payload,
    pub wall_clock_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Matrix(MatrixPayload),
    Verdict(VerdictPayload),
    Witness(Box<WitnessPayload>),
    Certificates(CertificatesPayload),
    Lemma2(Lemma2Payload),
    Sweep(SweepPayload),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixPayload {
    pub size: usize,
    pub orbits: Vec<Vec<Term>>,
    pub orbit_sizes: Vec<usize>,
    #[serde(with = "bigint_json::matrix")]
    pub entries: Vec<Vec<BigInt>>,
    #[serde(with = "bigint_json")]
    pub determinant: BigInt,
    #[serde(with = "bigint_json::vec")]
    pub prime_factors: Vec<BigInt>,
}

impl MatrixPayload {
    pub fn new(
        m: &CoefficientMatrix,
        det: BigInt,
        factors: &[BigUint],
        label: impl Fn(usize) -> String,
    ) -> Self {
        MatrixPayload {
            size: m.size(),
            orbits: m.orbits.orbits.iter().map(|o| labelled(&o.representative, &label)).collect(),
            orbit_sizes: m.orbits.orbits.iter().map(|o| o.members.len()).collect(),
            entries: m.to_bigint(),
            determinant: det,
            prime_factors: factors.iter().cloned().map(BigInt::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalPayload {
    pub monomial: Vec<Term>,
    pub value: CyclotomicInt,
}

impl DiagonalPayload {
    fn new(e: &DiagonalEntry, label: &impl Fn(usize) -> String) -> Self {
        DiagonalPayload { monomial: labelled(&e.monomial, label), value: e.value.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvidencePayload {
    Determinant {
        size: usize,
        #[serde(with = "bigint_json")]
        det: BigInt,
        #[serde(with = "bigint_json::vec")]
        prime_factors: Vec<BigInt>,
    },
    SingularMatrix {
        size: usize,
        #[serde(with = "bigint_json::vec")]
        kernel: Vec<BigInt>,
    },
    Diagonal {
        entries: Vec<DiagonalPayload>,
    },
    VanishingDiagonal {
        witness: DiagonalPayload,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictPayload {
    pub nondegenerate: bool,
    pub evidence: EvidencePayload,
}

impl VerdictPayload {
    pub fn new(v: &Verdict, size: usize, label: impl Fn(usize) -> String) -> Self {
        let evidence = match &v.evidence {
            Evidence::Determinant { det, prime_factors } => EvidencePayload::Determinant {
                size,
                det: det.clone(),
                prime_factors: prime_factors.iter().cloned().map(BigInt::from).collect(),
            },
            Evidence::SingularMatrix { kernel } => EvidencePayload::SingularMatrix {
                size,
                kernel: kernel.clone(),
            },
            Evidence::Diagonal { entries } => EvidencePayload::Diagonal {
                entries: entries.iter().map(|e| DiagonalPayload::new(e, &label)).collect(),
            },
            Evidence::VanishingDiagonal { witness } => EvidencePayload::VanishingDiagonal {
                witness: DiagonalPayload::new(witness, &label),
            },
        };
        VerdictPayload { nondegenerate: v.nondegenerate, evidence }
    }

    pub fn vanishing_monomial(&self) -> Option<&[Term]> {
        match &self.evidence {
            EvidencePayload::VanishingDiagonal { witness } => Some(&witness.monomial),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPayload {
    pub case: WitnessCase,
    pub p: u64,
    pub q: u64,
    pub subgroup_factors: Vec<usize>,
    pub monomial: Vec<Term>,
    pub degree: u32,
    pub invariant: bool,
    pub coefficient: CyclotomicInt,
    pub verified_zero: bool,
    /// Exhaustive diagonal check of the regular eigen-action, when requested.
    pub diagonal_search: Option<VerdictPayload>,
}

impl WitnessPayload {
    pub fn new(w: &WitnessMonomial, coefficient: CyclotomicInt, invariant: bool) -> Self {
        let action = w.action();
        WitnessPayload {
            case: w.case,
            p: w.params.0,
            q: w.params.1,
            subgroup_factors: w.subgroup_factors.clone(),
            monomial: labelled(&w.monomial, |v| action.var_label(v)),
            degree: w.monomial.degree(),
            invariant,
            verified_zero: coefficient.is_zero(),
            coefficient,
            diagonal_search: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatesPayload {
    pub p: u64,
    pub all_pass: bool,
    pub certificates: Vec<PrimeCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetPair {
    pub subset: Vec<String>,
    pub image: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Payload {
    pub dim: u32,
    pub v1: String,
    pub even_zero: u64,
    pub odd_v1: u64,
    pub bijection_verified: bool,
    pub pairing: Vec<SubsetPair>,
}

/// Coordinates left to right, coordinate `i` is bit `i`.
pub fn vector_bits(v: u32, dim: u32) -> String {
    (0..dim).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn subset_vectors(mask: u32, dim: u32) -> Vec<String> {
    (0..1u32 << dim).filter(|v| mask >> v & 1 == 1).map(|v| vector_bits(v, dim)).collect()
}

impl From<&Lemma2Counts> for Lemma2Payload {
    fn from(c: &Lemma2Counts) -> Self {
        Lemma2Payload {
            dim: c.dim,
            v1: vector_bits(c.v1, c.dim),
            even_zero: c.even_zero,
            odd_v1: c.odd_v1,
            bijection_verified: c.bijection_verified,
            pairing: c
                .pairing
                .iter()
                .map(|&(a, b)| SubsetPair { subset: subset_vectors(a, c.dim), image: subset_vectors(b, c.dim) })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub group: String,
    pub order: u64,
    pub nondegenerate: bool,
    /// prime order or order 4 (order 1 counted as nondegenerate too)
    pub rule_predicts_nondegenerate: bool,
    pub conforms: bool,
    pub vanishing_monomial: Option<Vec<Term>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepPayload {
    pub max_order: u64,
    pub rows: Vec<SweepRow>,
    pub nonconforming: Vec<String>,
}
