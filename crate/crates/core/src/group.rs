//! Finite abelian groups presented as products of cyclic factors.
//!
//! Characters are labelled by group elements through the fixed pairing
//! `<l, s> = sum_i (n / q_i) * l_i * s_i  (mod n)`, so the character with
//! label `l` takes the value `zeta_n^<l, s>` at `s`. Nothing downstream
//! deals with an explicit dual group.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Trial-division factorization into `(prime, exponent)` pairs, ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor_u64(n) == [(n, 1)]
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A character of the group, labelled by a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(pub GroupElement);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
    order: u64,
}

impl AbelianGroup {
    /// Builds `Z/q_1 + ... + Z/q_r`. An empty list gives the trivial group.
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if let Some(pos) = moduli.iter().position(|&q| q == 0) {
            return invalid(format!("modulus at position {pos} is zero"));
        }
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &q| acc.checked_mul(q))
            .ok_or_else(|| Error::InvalidArgument("group order overflows u64".into()))?;
        Ok(AbelianGroup {
            moduli: moduli.to_vec(),
            order,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            moduli: Vec::new(),
            order: 1,
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// True iff `q_i | q_{i+1}` for every consecutive pair.
    pub fn is_canonical(&self) -> bool {
        self.moduli.windows(2).all(|w| w[1] % w[0] == 0)
    }

    /// Invariant-factor form: prime powers are merged so that the moduli
    /// form a divisibility chain. Factors equal to 1 are dropped.
    pub fn normalized(&self) -> AbelianGroup {
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &q in &self.moduli {
            for (p, e) in factor_u64(q) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let rank = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut moduli = vec![1u64; rank];
        for powers in by_prime.values_mut() {
            powers.sort_unstable();
            // largest powers go to the last (largest) invariant factor
            let offset = rank - powers.len();
            for (i, pp) in powers.iter().enumerate() {
                moduli[offset + i] *= pp;
            }
        }
        AbelianGroup {
            moduli,
            order: self.order,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.normalized().rank() <= 1
    }

    /// Canonical spec string such as `2x4`; the trivial group prints as `1`.
    pub fn spec_string(&self) -> String {
        if self.moduli.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self.moduli.iter().map(|q| q.to_string()).collect();
        parts.join("x")
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.moduli).all(|(c, q)| c < q)
    }

    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return invalid(format!(
                "element has {} coordinates, group {} has rank {}",
                coords.len(),
                self.spec_string(),
                self.rank()
            ));
        }
        Ok(GroupElement(
            coords.iter().zip(&self.moduli).map(|(c, q)| c % q).collect(),
        ))
    }

    /// Elements in mixed-radix order, last coordinate varying fastest.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order as usize).map(|i| self.element_at(i)).collect()
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0u64; self.rank()];
        for (c, &q) in coords.iter_mut().zip(&self.moduli).rev() {
            *c = index as u64 % q;
            index /= q as usize;
        }
        GroupElement(coords)
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&c, &q)| acc * q as usize + c as usize)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((x, y), q)| (x + y) % q)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(x, q)| (q - x) % q)
                .collect(),
        )
    }

    pub fn scale(&self, a: &GroupElement, k: u64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(x, q)| ((*x as u128 * k as u128) % *q as u128) as u64)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(&self.moduli)
            .map(|(&x, &q)| q / gcd(x, q))
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    /// Exponent of `zeta_n` giving the value of character `lambda` at `sigma`.
    pub fn pairing(&self, lambda: &Character, sigma: &GroupElement) -> Result<u64> {
        if !self.contains(&lambda.0) || !self.contains(sigma) {
            return invalid(format!(
                "character {} or element {} does not belong to group {}",
                lambda.0,
                sigma,
                self.spec_string()
            ));
        }
        Ok(self.pairing_unchecked(&lambda.0, sigma))
    }

    pub(crate) fn pairing_unchecked(&self, lambda: &GroupElement, sigma: &GroupElement) -> u64 {
        let n = self.order as u128;
        let mut acc = 0u128;
        for ((&l, &s), &q) in lambda.0.iter().zip(&sigma.0).zip(&self.moduli) {
            acc = (acc + (n / q as u128) * l as u128 * s as u128) % n;
        }
        acc as u64
    }

    /// `table[l][s]` is the pairing exponent, indexed by element order.
    pub fn pairing_table(&self) -> Vec<Vec<u64>> {
        let elems = self.elements();
        elems
            .iter()
            .map(|l| elems.iter().map(|s| self.pairing_unchecked(l, s)).collect())
            .collect()
    }

    /// All elements supported on the selected factor positions (zero elsewhere).
    pub fn subgroup_elements(&self, factors: &[usize]) -> Result<Vec<GroupElement>> {
        let mut selected = vec![false; self.rank()];
        for &f in factors {
            if f >= self.rank() {
                return invalid(format!(
                    "factor {f} out of range for group {} of rank {}",
                    self.spec_string(),
                    self.rank()
                ));
            }
            if selected[f] {
                return invalid(format!("factor {f} selected twice"));
            }
            selected[f] = true;
        }
        Ok(self
            .elements()
            .into_iter()
            .filter(|g| g.0.iter().zip(&selected).all(|(&c, &s)| s || c == 0))
            .collect())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Parses `q1xq2x...xqr`; the separator is case-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return invalid("empty group spec");
        }
        let moduli = s
            .split(['x', 'X'])
            .map(|part| {
                if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                    return invalid(format!("bad factor {part:?} in group spec {s:?}"));
                }
                part.parse::<u64>()
                    .map_err(|e| Error::InvalidArgument(format!("bad factor {part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if moduli.contains(&0) {
            return invalid(format!("zero modulus in group spec {s:?}"));
        }
        AbelianGroup::new(&moduli)
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every abelian group of order `n` up to isomorphism, in invariant-factor
/// form, built from the partitions of each prime exponent.
pub fn abelian_groups_of_order(n: u64) -> Vec<AbelianGroup> {
    if n == 0 {
        return Vec::new();
    }
    let mut groups: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in factor_u64(n) {
        let mut next = Vec::new();
        for g in &groups {
            for part in partitions(e, e) {
                let mut moduli = g.clone();
                moduli.extend(part.iter().map(|&k| p.pow(k)));
                next.push(moduli);
            }
        }
        groups = next;
    }
    let mut out: Vec<AbelianGroup> = groups
        .into_iter()
        .map(|m| AbelianGroup::new(&m).expect("positive moduli").normalized())
        .collect();
    // cyclic first, then by rank and moduli
    out.sort_by(|a, b| (a.rank(), a.moduli()).cmp(&(b.rank(), b.moduli())));
    if n == 1 {
        return vec![AbelianGroup::trivial()];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[u64]) -> AbelianGroup {
        AbelianGroup::new(m).unwrap()
    }

    #[test]
    fn construction_examples() {
        let c4 = g(&[4]);
        assert_eq!(c4.order(), 4);
        assert!(c4.is_canonical());
        let k4 = g(&[2, 2]);
        assert_eq!(k4.order(), 4);
        assert!(k4.is_canonical());
        let g64 = g(&[6, 4]);
        assert_eq!(g64.order(), 24);
        assert!(!g64.is_canonical());
        assert_eq!(g64.normalized().moduli(), &[2, 12]);
        assert!(g64.normalized().is_canonical());
    }

    #[test]
    fn empty_is_trivial_and_zero_rejected() {
        let t = g(&[]);
        assert_eq!(t.order(), 1);
        assert_eq!(t.elements().len(), 1);
        assert!(matches!(
            AbelianGroup::new(&[3, 0]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn pairing_examples() {
        let c5 = g(&[5]);
        let l = Character(c5.element(&[2]).unwrap());
        assert_eq!(c5.pairing(&l, &c5.element(&[3]).unwrap()).unwrap(), 1);

        let k4 = g(&[2, 2]);
        let l = Character(k4.element(&[1, 0]).unwrap());
        assert_eq!(k4.pairing(&l, &k4.element(&[1, 1]).unwrap()).unwrap(), 2);

        let other = g(&[3]);
        assert!(k4.pairing(&l, &other.zero()).is_err());
    }

    #[test]
    fn trivial_character_pairs_to_zero() {
        for m in [vec![6], vec![2, 4], vec![3, 3], vec![]] {
            let grp = g(&m);
            let zero = Character(grp.zero());
            for s in grp.elements() {
                assert_eq!(grp.pairing(&zero, &s).unwrap(), 0);
            }
        }
    }

    #[test]
    fn subgroup_examples() {
        let g24 = g(&[2, 4]);
        let h = g24.subgroup_elements(&[1]).unwrap();
        assert_eq!(h.len(), 4);
        assert!(h.iter().all(|e| e.0[0] == 0));

        let g222 = g(&[2, 2, 2]);
        let u = g222.subgroup_elements(&[1, 2]).unwrap();
        assert_eq!(u.len(), 4);
        assert!(u.iter().all(|e| e.0[0] == 0));

        assert_eq!(g(&[3]).subgroup_elements(&[]).unwrap(), vec![GroupElement(vec![0])]);
        assert!(g(&[3]).subgroup_elements(&[1]).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("2x4".parse::<AbelianGroup>().unwrap().moduli(), &[2, 4]);
        assert_eq!("2X2x2".parse::<AbelianGroup>().unwrap().order(), 8);
        for bad in ["", "x", "2x", "2 x 4", "0", "-3", "2x0", "a"] {
            assert!(bad.parse::<AbelianGroup>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn group_counts_by_order() {
        let counts: Vec<usize> = (1..=16).map(|n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        let eight: Vec<String> = abelian_groups_of_order(8).iter().map(|g| g.spec_string()).collect();
        assert_eq!(eight, vec!["8", "2x4", "2x2x2"]);
    }

    fn small_groups() -> Vec<AbelianGroup> {
        let mut out = Vec::new();
        for n in 1..=12 {
            out.extend(abelian_groups_of_order(n));
        }
        out.push(g(&[2, 3]));
        out.push(g(&[6, 2]));
        out.push(g(&[4, 2]));
        out
    }

    #[test]
    fn pairing_is_bilinear_for_small_groups() {
        for grp in small_groups() {
            let n = grp.order();
            let els = grp.elements();
            for l in &els {
                for m in &els {
                    let lm = grp.add(l, m);
                    for s in &els {
                        let a = grp.pairing_unchecked(&lm, s);
                        let b = (grp.pairing_unchecked(l, s) + grp.pairing_unchecked(m, s)) % n;
                        assert_eq!(a, b, "left linearity in {grp}");
                        let ls = grp.add(m, s);
                        let c = grp.pairing_unchecked(l, &ls);
                        let d = (grp.pairing_unchecked(l, m) + grp.pairing_unchecked(l, s)) % n;
                        assert_eq!(c, d, "right linearity in {grp}");
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_is_nondegenerate_for_small_groups() {
        for grp in small_groups() {
            for l in grp.elements().iter().filter(|l| !l.is_zero()) {
                assert!(
                    grp.elements().iter().any(|s| grp.pairing_unchecked(l, s) != 0),
                    "{l} pairs trivially in {grp}"
                );
            }
        }
    }

    #[test]
    fn normalization_preserves_isomorphism_type() {
        for m in [vec![6, 4], vec![2, 3], vec![4, 2], vec![6, 10], vec![12, 18, 4], vec![1, 5]] {
            let grp = g(&m);
            let norm = grp.normalized();
            assert_eq!(grp.order(), norm.order());
            let mut a: Vec<u64> = grp.elements().iter().map(|e| grp.element_order(e)).collect();
            let mut b: Vec<u64> = norm.elements().iter().map(|e| norm.element_order(e)).collect();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b, "{grp} vs {norm}");
        }
    }

    #[test]
    fn element_indexing_round_trips() {
        let grp = g(&[2, 3, 4]);
        for (i, e) in grp.elements().iter().enumerate() {
            assert_eq!(grp.index_of(e), i);
        }
    }
}
