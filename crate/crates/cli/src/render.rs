use std::fmt::Write;

use crate::report::*;

pub fn monomial(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "1".into();
    }
    terms
        .iter()
        .map(|t| match t.exp {
            1 => format!("X[{}]", t.var),
            e => format!("X[{}]^{e}", t.var),
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn csv(report: &RunReport) -> String {
    let Payload::Matrix(m) = &report.payload else {
        unreachable!("csv is rejected for non-matrix payloads before running");
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once("orbit".to_string()).chain(m.orbits.iter().map(|o| monomial(o)));
    w.write_record(header).expect("in-memory write");
    for (o, row) in m.orbits.iter().zip(&m.entries) {
        let record = std::iter::once(monomial(o)).chain(row.iter().map(ToString::to_string));
        w.write_record(record).expect("in-memory write");
    }
    let bytes = w.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("utf-8").trim_end().to_string()
}

pub fn pretty(report: &RunReport) -> String {
    let mut out = String::new();
    if let Some(g) = &report.group {
        let rep = match &report.representation {
            Some(Representation::RegularPerm) => "regular permutation action".to_string(),
            Some(Representation::RegularEigen) => "regular eigen-action".to_string(),
            Some(Representation::CustomEigen { multiplicities }) => {
                format!("eigen-action with multiplicities [{}]", join(multiplicities))
            }
            None => String::new(),
        };
        let _ = writeln!(out, "group {g}{}{rep}", if rep.is_empty() { "" } else { ", " });
    }
    match &report.payload {
        Payload::Matrix(m) => matrix(&mut out, m),
        Payload::Verdict(v) => verdict(&mut out, v),
        Payload::Witness(w) => witness(&mut out, w),
        Payload::Certificates(c) => certificates(&mut out, c),
        Payload::Lemma2(l) => lemma2(&mut out, l),
        Payload::Sweep(s) => sweep(&mut out, s),
    }
    let _ = write!(out, "({} ms)", report.wall_clock_ms);
    out
}

fn matrix(out: &mut String, m: &MatrixPayload) {
    let _ = writeln!(out, "{} orbits", m.size);
    for (i, (o, size)) in m.orbits.iter().zip(&m.orbit_sizes).enumerate() {
        let _ = writeln!(out, "  {:>3}  {}  (size {size})", i + 1, monomial(o));
    }
    let width = m.entries.iter().flatten().map(|e| e.to_string().len()).max().unwrap_or(1);
    for row in &m.entries {
        let cells: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
    let _ = writeln!(out, "det = {}", m.determinant);
    if !m.prime_factors.is_empty() {
        let _ = writeln!(out, "prime factors of |det|: {}", join(&m.prime_factors));
    }
}

fn verdict(out: &mut String, v: &VerdictPayload) {
    let _ = writeln!(out, "{}", if v.nondegenerate { "nondegenerate" } else { "degenerate" });
    match &v.evidence {
        EvidencePayload::Determinant { size, det, prime_factors } => {
            let _ = writeln!(out, "{size}x{size} coefficient matrix, det = {det}");
            if !prime_factors.is_empty() {
                let _ = writeln!(out, "prime factors of |det|: {}", join(prime_factors));
            }
        }
        EvidencePayload::SingularMatrix { size, kernel } => {
            let _ = writeln!(out, "{size}x{size} coefficient matrix is singular; kernel vector:");
            let _ = writeln!(out, "  [{}]", join(kernel));
        }
        EvidencePayload::Diagonal { entries } => {
            let _ = writeln!(out, "{} invariant diagonal entries, all nonzero", entries.len());
            for e in entries {
                let _ = writeln!(out, "  {}  ->  {}", monomial(&e.monomial), e.value);
            }
        }
        EvidencePayload::VanishingDiagonal { witness } => {
            let _ = writeln!(out, "vanishing diagonal entry: {}", monomial(&witness.monomial));
        }
    }
}

fn witness(out: &mut String, w: &WitnessPayload) {
    let _ = writeln!(out, "case {:?} (p = {}, q = {})", w.case, w.p, w.q);
    let _ = writeln!(out, "monomial {}", monomial(&w.monomial));
    let _ = writeln!(out, "degree {}, invariant: {}", w.degree, w.invariant);
    let _ = writeln!(out, "coefficient {}", w.coefficient);
    let _ = writeln!(out, "verified zero: {}", w.verified_zero);
    if let Some(v) = &w.diagonal_search {
        let _ = write!(out, "diagonal search: ");
        match v.vanishing_monomial() {
            Some(m) => {
                let _ = writeln!(out, "degenerate, vanishing entry {}", monomial(m));
            }
            None => {
                let _ = writeln!(out, "nondegenerate, no diagonal entry vanishes");
            }
        }
    }
}

fn certificates(out: &mut String, c: &CertificatesPayload) {
    let _ = writeln!(out, "{} certificates for p = {}", c.certificates.len(), c.p);
    for cert in &c.certificates {
        let counts: Vec<u64> = cert.counts.values().copied().collect();
        let status = if cert.checks.all_pass() { "ok" } else { "FAILED" };
        let _ = writeln!(
            out,
            "  a = ({})  counts = ({})  reduced = [{}]  {status}",
            join(&cert.a),
            join(&counts),
            join(&cert.reduced_poly)
        );
    }
    let _ = writeln!(out, "all checks pass: {}", c.all_pass);
}

fn lemma2(out: &mut String, l: &Lemma2Payload) {
    let _ = writeln!(out, "F_2^{}, v1 = {}", l.dim, l.v1);
    let _ = writeln!(out, "even, sum 0: {}", l.even_zero);
    let _ = writeln!(out, "odd, sum v1: {}", l.odd_v1);
    let _ = writeln!(out, "pairing is a bijection: {}", l.bijection_verified);
    for pair in &l.pairing {
        let _ = writeln!(out, "  {{{}}} -> {{{}}}", pair.subset.join(" "), pair.image.join(" "));
    }
}

fn sweep(out: &mut String, s: &SweepPayload) {
    let _ = writeln!(out, "{:<10} {:>5}  {:<13} {:<13} conforms", "group", "order", "computed", "prime-or-4");
    let word = |b: bool| if b { "nondegenerate" } else { "degenerate" };
    for r in &s.rows {
        let _ = writeln!(
            out,
            "{:<10} {:>5}  {:<13} {:<13} {}",
            r.group,
            r.order,
            word(r.nondegenerate),
            word(r.rule_predicts_nondegenerate),
            if r.conforms { "yes" } else { "no" }
        );
    }
    if s.nonconforming.is_empty() {
        let _ = writeln!(out, "every group conforms");
    } else {
        let _ = writeln!(out, "nonconforming: {}", s.nonconforming.join(", "));
    }
}
