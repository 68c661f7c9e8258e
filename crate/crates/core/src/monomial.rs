//! Monomials, group actions on variables, orbit tables and the prime-order
//! exponent compositions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::group::{is_prime, AbelianGroup, Character, GroupElement};

/// Sparse exponent vector. Zero exponents are never stored.
///
/// Ordering is graded-lex with `X_0 > X_1 > ...`: lower degree first, then
/// the monomial with the larger exponent at the first differing variable.
/// Under this order enumeration output is ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<usize, u32>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: usize) -> Self {
        Self::from_pairs([(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut m = Monomial::default();
        for (v, e) in pairs {
            m.mul_var(v, e);
        }
        m
    }

    pub fn from_dense(exps: &[u32]) -> Self {
        Self::from_pairs(exps.iter().copied().enumerate())
    }

    pub fn to_dense(&self, m: usize) -> Vec<u32> {
        let mut out = vec![0; m];
        for (&v, &e) in &self.exps {
            out[v] = e;
        }
        out
    }

    pub fn mul_var(&mut self, v: usize, e: u32) {
        if e > 0 {
            *self.exps.entry(v).or_insert(0) += e;
            self.degree += e;
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&v, &e) in &other.exps {
            out.mul_var(v, e);
        }
        out
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.clone();
        for (&v, &e) in &other.exps {
            let cur = out.exps.get_mut(&v)?;
            match (*cur).cmp(&e) {
                Ordering::Less => return None,
                Ordering::Equal => {
                    out.exps.remove(&v);
                }
                Ordering::Greater => *cur -= e,
            }
            out.degree -= e;
        }
        Some(out)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|(&v, &e)| (v, e))
    }

    pub fn support_len(&self) -> usize {
        self.exps.len()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.keys().next_back().copied()
    }

    /// Renders as `X[label]^e` factors joined by `*`, using `label(v)` for variable `v`.
    pub fn display_with<F: Fn(usize) -> String>(&self, label: F) -> String {
        if self.exps.is_empty() {
            return "1".into();
        }
        self.iter()
            .map(|(v, e)| match e {
                1 => format!("X[{}]", label(v)),
                _ => format!("X[{}]^{e}", label(v)),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let mut a = self.exps.iter().peekable();
            let mut b = other.exps.iter().peekable();
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => return Ordering::Equal,
                    // the side still holding an earlier variable wins
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some((va, ea)), Some((vb, eb))) => {
                        if va != vb {
                            return va.cmp(vb);
                        }
                        if ea != eb {
                            return eb.cmp(ea);
                        }
                        a.next();
                        b.next();
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized as a list of `[variable, exponent]` pairs.
impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(usize, u32)> = Vec::deserialize(d)?;
        Ok(Monomial::from_pairs(pairs))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|v| v.to_string()))
    }
}

/// All degree-`d` monomials in `m` variables, as dense exponent vectors in
/// graded-lex order.
pub fn enumerate_dense(m: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == m {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(m, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if m == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(m, 0, d, &mut vec![0; m], &mut out);
    out
}

pub fn enumerate_monomials(m: usize, d: u32) -> Vec<Monomial> {
    enumerate_dense(m, d).iter().map(|e| Monomial::from_dense(e)).collect()
}

/// A group acting on `m` variables by permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermAction {
    group: AbelianGroup,
    m: usize,
    /// `perms[g][i]` is the image of variable `i` under element index `g`.
    perms: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl PermAction {
    /// Checks the permutations and the action axioms before accepting them.
    pub fn new(group: AbelianGroup, perms: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order() as usize;
        if perms.len() != n {
            return invalid(format!("need {n} permutations, got {}", perms.len()));
        }
        let m = perms.first().map_or(0, Vec::len);
        for (g, p) in perms.iter().enumerate() {
            let mut seen = vec![false; m];
            if p.len() != m || p.iter().any(|&i| i >= m || std::mem::replace(&mut seen[i], true)) {
                return invalid(format!("entry {g} is not a permutation of {m} points"));
            }
        }
        let elems = group.elements();
        if perms[0].iter().enumerate().any(|(i, &j)| i != j) {
            return invalid("identity element does not act trivially");
        }
        for (a, ea) in elems.iter().enumerate() {
            for (b, eb) in elems.iter().enumerate() {
                let ab = group.index_of(&group.add(ea, eb));
                if (0..m).any(|i| perms[ab][i] != perms[a][perms[b][i]]) {
                    return invalid(format!("action is not compatible with the group law at ({ea}) + ({eb})"));
                }
            }
        }
        let labels = (0..m).map(|i| i.to_string()).collect();
        Ok(PermAction {
            group,
            m,
            perms,
            labels,
        })
    }

    /// The regular representation: `s . X_t = X_{s + t}`, variables labelled by elements.
    pub fn regular(group: &AbelianGroup) -> Self {
        let elems = group.elements();
        let perms = elems
            .iter()
            .map(|s| elems.iter().map(|t| group.index_of(&group.add(s, t))).collect())
            .collect();
        PermAction {
            group: group.clone(),
            m: elems.len(),
            perms,
            labels: elems.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn perm(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        m.display_with(|v| self.labels.get(v).cloned().unwrap_or_else(|| format!("?{v}")))
    }

    pub fn act_dense(&self, g: usize, exps: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.m];
        for (i, &e) in exps.iter().enumerate() {
            out[self.perms[g][i]] = e;
        }
        out
    }

    pub fn act(&self, g: usize, mono: &Monomial) -> Monomial {
        Monomial::from_pairs(mono.iter().map(|(v, e)| (self.perms[g][v], e)))
    }
}

/// One eigen-variable: a copy index and a character label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EigenVar {
    pub copy: usize,
    pub label: Character,
}

/// Diagonal action: each variable is an eigenvector with a character weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenAction {
    group: AbelianGroup,
    vars: Vec<EigenVar>,
    label_index: Vec<usize>,
    multiplicities: Vec<usize>,
}

impl EigenAction {
    /// The diagonalised regular representation: one variable per character.
    pub fn regular(group: &AbelianGroup) -> Self {
        Self::with_multiplicities(group, &vec![1; group.order() as usize]).expect("valid multiplicities")
    }

    /// `multiplicities[j]` copies of the character labelled by element index `j`.
    pub fn with_multiplicities(group: &AbelianGroup, multiplicities: &[usize]) -> Result<Self> {
        let n = group.order() as usize;
        if multiplicities.len() != n {
            return invalid(format!(
                "need one multiplicity per character ({n}), got {}",
                multiplicities.len()
            ));
        }
        let mut vars = Vec::new();
        let mut label_index = Vec::new();
        for (j, &mj) in multiplicities.iter().enumerate() {
            for copy in 0..mj {
                vars.push(EigenVar {
                    copy,
                    label: Character(group.element_at(j)),
                });
                label_index.push(j);
            }
        }
        Ok(EigenAction {
            group: group.clone(),
            vars,
            label_index,
            multiplicities: multiplicities.to_vec(),
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[EigenVar] {
        &self.vars
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Element index of the character carried by variable `v`.
    pub fn label_index(&self, v: usize) -> usize {
        self.label_index[v]
    }

    /// Variable index of `(copy, label)`, if present.
    pub fn var_index(&self, copy: usize, label: &GroupElement) -> Option<usize> {
        self.vars
            .iter()
            .position(|x| x.copy == copy && &x.label.0 == label)
    }

    pub fn has_copies(&self) -> bool {
        self.multiplicities.iter().any(|&m| m > 1)
    }

    pub fn var_label(&self, v: usize) -> String {
        let var = &self.vars[v];
        if self.has_copies() {
            format!("{};{}", var.copy, var.label.0)
        } else {
            var.label.0.to_string()
        }
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        m.display_with(|v| {
            if v < self.vars.len() {
                self.var_label(v)
            } else {
                format!("?{v}")
            }
        })
    }

    /// Monomial in the copy-0 variables with the given label counts.
    pub fn monomial_from_label_counts(&self, counts: &[u32]) -> Result<Monomial> {
        let mut m = Monomial::one();
        for (j, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let v = self
                .var_index(0, &self.group.element_at(j))
                .ok_or_else(|| crate::Error::InvalidArgument(format!("character {j} has multiplicity 0")))?;
            m.mul_var(v, c);
        }
        Ok(m)
    }

    /// Label multiset of a monomial as counts indexed by element index.
    pub fn label_counts(&self, m: &Monomial) -> Result<Vec<u32>> {
        let mut counts = vec![0u32; self.group.order() as usize];
        for (v, e) in m.iter() {
            if v >= self.vars.len() {
                return invalid(format!("variable {v} is not part of the action"));
            }
            counts[self.label_index[v]] += e;
        }
        Ok(counts)
    }
}

/// Sum of exponent-weighted characters; zero iff the monomial is invariant.
pub fn weight(m: &Monomial, action: &EigenAction) -> Result<GroupElement> {
    let g = action.group();
    let mut acc = g.zero();
    for (v, e) in m.iter() {
        let Some(var) = action.vars.get(v) else {
            return invalid(format!("variable {v} is not part of the action"));
        };
        acc = g.add(&acc, &g.scale(&var.label.0, e as u64));
    }
    Ok(acc)
}

/// Weight of a label multiset given as counts per element index.
pub fn label_counts_weight(group: &AbelianGroup, counts: &[u32]) -> GroupElement {
    counts.iter().enumerate().fold(group.zero(), |acc, (j, &c)| {
        group.add(&acc, &group.scale(&group.element_at(j), c as u64))
    })
}

/// Degree-`d` monomials of weight zero, graded-lex order.
pub fn invariant_monomials(action: &EigenAction, d: u32) -> Vec<Monomial> {
    let g = action.group();
    let weights: Vec<GroupElement> = action.vars.iter().map(|v| v.label.0.clone()).collect();
    enumerate_dense(action.num_vars(), d)
        .into_iter()
        .filter(|e| {
            let w = e
                .iter()
                .zip(&weights)
                .fold(g.zero(), |acc, (&k, l)| g.add(&acc, &g.scale(l, k as u64)));
            w.is_zero()
        })
        .map(|e| Monomial::from_dense(&e))
        .collect()
}

/// Weight-zero label multisets of size `d` over the characters present in
/// the action, as counts per element index, graded-lex order.
pub fn invariant_label_multisets(action: &EigenAction, d: u32) -> Vec<Vec<u32>> {
    let g = action.group();
    let n = g.order() as usize;
    let present: Vec<usize> = (0..n).filter(|&j| action.multiplicities[j] > 0).collect();
    enumerate_dense(present.len(), d)
        .into_iter()
        .filter_map(|e| {
            let mut counts = vec![0u32; n];
            for (k, &j) in present.iter().enumerate() {
                counts[j] = e[k];
            }
            label_counts_weight(g, &counts).is_zero().then_some(counts)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: Monomial,
    pub members: Vec<Monomial>,
}

/// Partition of the degree-`d` monomials into orbits. Representatives are
/// the first member in graded-lex order; orbits are sorted by representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTable {
    pub degree: u32,
    pub num_vars: usize,
    pub orbits: Vec<Orbit>,
}

impl OrbitTable {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Monomial> {
        self.orbits.iter().map(|o| &o.representative)
    }

    /// Orbit index of a monomial, by linear search.
    pub fn orbit_of(&self, m: &Monomial) -> Option<usize> {
        self.orbits.iter().position(|o| o.members.contains(m))
    }
}

pub fn orbit_decomposition(action: &PermAction, d: u32) -> OrbitTable {
    let all = enumerate_dense(action.num_vars(), d);
    let index: HashMap<&[u32], usize> = all.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut seen = vec![false; all.len()];
    let mut orbits = Vec::new();
    let n = action.group().order() as usize;
    for (i, e) in all.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut members: Vec<usize> = Vec::new();
        for g in 0..n {
            let img = action.act_dense(g, e);
            let j = index[img.as_slice()];
            if !seen[j] {
                seen[j] = true;
                members.push(j);
            }
        }
        members.sort_unstable();
        orbits.push(Orbit {
            representative: Monomial::from_dense(e),
            members: members.iter().map(|&j| Monomial::from_dense(&all[j])).collect(),
        });
    }
    OrbitTable {
        degree: d,
        num_vars: action.num_vars(),
        orbits,
    }
}

/// Exponent pattern `(a_0, ..., a_{p-1})` with `sum a_i = p` and
/// `sum i*a_i = 0 mod p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    p: u64,
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(p: u64, parts: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if parts.len() as u64 != p {
            return invalid(format!("composition for p={p} needs {p} parts, got {}", parts.len()));
        }
        let total: u64 = parts.iter().map(|&a| a as u64).sum();
        let moment: u64 = parts.iter().enumerate().map(|(i, &a)| i as u64 * a as u64).sum();
        if total != p || !moment.is_multiple_of(p) {
            return invalid(format!("{parts:?} is not a valid composition for p={p}"));
        }
        Ok(Composition { p, parts })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `b_r = a_0 + ... + a_r`.
    pub fn prefix_sums(&self) -> Vec<u32> {
        self.parts
            .iter()
            .scan(0, |acc, &a| {
                *acc += a;
                Some(*acc)
            })
            .collect()
    }
}

/// All valid compositions for prime `p`, in descending lexicographic order
/// (the graded-lex order of the corresponding monomials).
pub fn compositions_prime(p: u64) -> Result<Vec<Composition>> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    Ok(enumerate_dense(p as usize, p as u32)
        .into_iter()
        .filter(|a| a.iter().enumerate().map(|(i, &x)| i as u64 * x as u64).sum::<u64>() % p == 0)
        .map(|parts| Composition { p, parts })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_monomials(5, 5).len(), 126);
        assert_eq!(enumerate_monomials(1, 3), vec![Monomial::from_pairs([(0, 3)])]);
        assert_eq!(
            enumerate_monomials(2, 2),
            vec![
                Monomial::from_pairs([(0, 2)]),
                Monomial::from_pairs([(0, 1), (1, 1)]),
                Monomial::from_pairs([(1, 2)]),
            ]
        );
        for m in 1..6 {
            for d in 0..6 {
                let all = enumerate_monomials(m, d);
                assert_eq!(all.len() as u64, binom(m as u64 + d as u64 - 1, d as u64));
                assert!(all.windows(2).all(|w| w[0] < w[1]), "sorted m={m} d={d}");
                assert!(all.iter().all(|x| x.degree() == d));
            }
        }
    }

    #[test]
    fn sparse_form_drops_zero_exponents() {
        let m = Monomial::from_dense(&[0, 2, 0, 1]);
        assert_eq!(m.support_len(), 2);
        assert_eq!(m.degree(), 3);
        assert_eq!(m.div(&Monomial::var(1)).unwrap(), Monomial::from_pairs([(1, 1), (3, 1)]));
        assert!(m.div(&Monomial::var(0)).is_none());
    }

    #[test]
    fn orbit_examples() {
        let c5 = AbelianGroup::cyclic(5).unwrap();
        assert_eq!(orbit_decomposition(&PermAction::regular(&c5), 5).len(), 26);

        let c2 = AbelianGroup::cyclic(2).unwrap();
        let t = orbit_decomposition(&PermAction::regular(&c2), 2);
        assert_eq!(t.len(), 2);
        assert_eq!(
            t.orbits[0].members,
            vec![Monomial::from_pairs([(0, 2)]), Monomial::from_pairs([(1, 2)])]
        );
        assert_eq!(t.orbits[1].members, vec![Monomial::from_pairs([(0, 1), (1, 1)])]);

        let t = orbit_decomposition(&PermAction::regular(&AbelianGroup::trivial()), 1);
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn orbit_sizes_and_counts() {
        for spec in ["1", "2", "3", "4", "2x2", "5", "6"] {
            let g: AbelianGroup = spec.parse().unwrap();
            let act = PermAction::regular(&g);
            let n = g.order();
            let t = orbit_decomposition(&act, n as u32);
            let total: usize = t.orbits.iter().map(|o| o.members.len()).sum();
            assert_eq!(total as u64, binom(2 * n - 1, n));
            for o in &t.orbits {
                assert_eq!(n % o.members.len() as u64, 0);
                assert_eq!(o.members[0], o.representative);
                assert!(o.members.iter().all(|m| &o.representative <= m));
            }
            assert!(t.orbits.windows(2).all(|w| w[0].representative < w[1].representative));
            if g.is_cyclic() {
                let inv = invariant_monomials(&EigenAction::regular(&g), n as u32);
                assert_eq!(inv.len(), t.len(), "{spec}");
            }
        }
    }

    #[test]
    fn weight_examples() {
        let c6 = AbelianGroup::cyclic(6).unwrap();
        let e6 = EigenAction::regular(&c6);
        let m = Monomial::from_pairs([(0, 1), (1, 1), (5, 1), (2, 3)]);
        assert!(weight(&m, &e6).unwrap().is_zero());

        let g24: AbelianGroup = "2x4".parse().unwrap();
        let e = EigenAction::regular(&g24);
        let idx = |c: &[u64]| g24.index_of(&g24.element(c).unwrap());
        let m = Monomial::from_pairs([
            (idx(&[0, 0]), 2),
            (idx(&[0, 1]), 1),
            (idx(&[0, 3]), 1),
            (idx(&[1, 1]), 4),
        ]);
        assert!(weight(&m, &e).unwrap().is_zero());

        assert!(weight(&Monomial::from_pairs([(0, 7)]), &e6).unwrap().is_zero());
        assert!(weight(&Monomial::var(9), &e6).is_err());
    }

    #[test]
    fn invariant_monomial_examples() {
        let c5 = AbelianGroup::cyclic(5).unwrap();
        assert_eq!(invariant_monomials(&EigenAction::regular(&c5), 5).len(), 26);
        let c2 = AbelianGroup::cyclic(2).unwrap();
        assert_eq!(
            invariant_monomials(&EigenAction::regular(&c2), 2),
            vec![Monomial::from_pairs([(0, 2)]), Monomial::from_pairs([(1, 2)])]
        );
        let c4 = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(invariant_monomials(&EigenAction::regular(&c4), 1), vec![Monomial::var(0)]);
    }

    #[test]
    fn weight_is_additive() {
        let g: AbelianGroup = "2x6".parse().unwrap();
        let e = EigenAction::regular(&g);
        let mons = enumerate_monomials(12, 2);
        for a in mons.iter().step_by(7) {
            for b in mons.iter().step_by(5) {
                let lhs = weight(&a.mul(b), &e).unwrap();
                let rhs = g.add(&weight(a, &e).unwrap(), &weight(b, &e).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn composition_examples() {
        let parts = |p| -> Vec<Vec<u32>> {
            compositions_prime(p).unwrap().into_iter().map(|c| c.parts).collect()
        };
        assert_eq!(parts(2), vec![vec![2, 0], vec![0, 2]]);
        let mut three = parts(3);
        three.sort();
        let mut expect = vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3], vec![1, 1, 1]];
        expect.sort();
        assert_eq!(three, expect);
        assert_eq!(parts(5).len(), 26);
        assert!(compositions_prime(4).is_err());
        assert!(compositions_prime(1).is_err());
        let c = Composition::new(5, vec![1, 2, 0, 0, 2]).unwrap();
        assert_eq!(c.prefix_sums(), vec![1, 3, 3, 3, 5]);
        assert!(Composition::new(5, vec![1, 1, 1, 1, 1]).is_ok());
        assert!(Composition::new(5, vec![4, 1, 0, 0, 0]).is_err());
    }

    #[test]
    fn compositions_are_invariant_eigen_exponents() {
        for p in [2u64, 3, 5, 7] {
            let g = AbelianGroup::cyclic(p).unwrap();
            let inv: Vec<Vec<u32>> = invariant_monomials(&EigenAction::regular(&g), p as u32)
                .iter()
                .map(|m| m.to_dense(p as usize))
                .collect();
            let comps: Vec<Vec<u32>> = compositions_prime(p).unwrap().into_iter().map(|c| c.parts).collect();
            assert_eq!(inv, comps, "p={p}");
        }
    }

    #[test]
    fn perm_action_axioms() {
        for spec in ["1", "4", "2x2", "2x3", "3x3"] {
            let g: AbelianGroup = spec.parse().unwrap();
            let reg = PermAction::regular(&g);
            let rebuilt = PermAction::new(g.clone(), (0..g.order() as usize).map(|i| reg.perm(i).to_vec()).collect());
            assert!(rebuilt.is_ok(), "{spec}");
        }
        let c3 = AbelianGroup::cyclic(3).unwrap();
        // generator acting as a transposition breaks the group law
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2], vec![1, 0, 2]];
        assert!(PermAction::new(c3.clone(), bad).is_err());
        assert!(PermAction::new(c3, vec![vec![0, 1]; 2]).is_err());
    }

    #[test]
    fn multiplicity_labels() {
        let c2 = AbelianGroup::cyclic(2).unwrap();
        let e = EigenAction::with_multiplicities(&c2, &[2, 1]).unwrap();
        assert_eq!(e.num_vars(), 3);
        assert_eq!(e.var_label(1), "1;0");
        assert_eq!(e.var_label(2), "0;1");
        assert_eq!(EigenAction::regular(&c2).var_label(1), "1");
        assert!(EigenAction::with_multiplicities(&c2, &[1]).is_err());
    }
}
