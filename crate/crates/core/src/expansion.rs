//! Coefficients of the invariant `F(X, Y) = prod_{s in G} s.(sum_i Y_i X_i)`,
//! with the group acting on the X-copy only.
//!
//! Permutation basis: the coefficient of `M_X(X) M_Y(Y)` counts functions
//! `g: G -> vars` whose value multiset is `M_Y` and for which the multiset
//! `{s . g(s)}` is `M_X`.
//!
//! Eigenbasis: the coefficient of `M(X) M(Y)` for a label multiset `a` is
//! `sum_h zeta^{sum_s <h(s), s>}` over distinct arrangements `h: G -> labels`
//! with value multiset `a`. Cross terms `M(X) M'(Y)` with `M != M'` vanish.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::cyclotomic::CyclotomicInt;
use crate::error::{invalid, Error, Result};
use crate::monomial::{EigenAction, Monomial, PermAction};

/// Permutation-basis coefficient of `M_X(X) M_Y(Y)`.
pub fn perm_coefficient(action: &PermAction, mx: &Monomial, my: &Monomial) -> Result<BigUint> {
    let n = action.group().order() as usize;
    let m = action.num_vars();
    if mx.degree() as usize != n || my.degree() as usize != n {
        return invalid(format!(
            "monomial degrees ({}, {}) must equal the group order {n}",
            mx.degree(),
            my.degree()
        ));
    }
    if mx.max_var().is_some_and(|v| v >= m) || my.max_var().is_some_and(|v| v >= m) {
        return Ok(BigUint::zero());
    }
    let y_vars: Vec<usize> = my.iter().map(|(v, _)| v).collect();
    let y_left: Vec<u32> = my.iter().map(|(_, e)| e).collect();
    let x_left = mx.to_dense(m);
    let mut memo = HashMap::new();
    Ok(count_assignments(action, &y_vars, y_left, x_left, 0, n, &mut memo))
}

type AssignKey = (Vec<u32>, Vec<u32>);

fn count_assignments(
    action: &PermAction,
    y_vars: &[usize],
    mut y_left: Vec<u32>,
    mut x_left: Vec<u32>,
    s: usize,
    n: usize,
    memo: &mut HashMap<AssignKey, BigUint>,
) -> BigUint {
    if s == n {
        return BigUint::one();
    }
    let key = (y_left.clone(), x_left.clone());
    if let Some(c) = memo.get(&key) {
        return c.clone();
    }
    let mut total = BigUint::zero();
    let perm = action.perm(s);
    for (k, &v) in y_vars.iter().enumerate() {
        let img = perm[v];
        if y_left[k] == 0 || x_left[img] == 0 {
            continue;
        }
        y_left[k] -= 1;
        x_left[img] -= 1;
        total += count_assignments(action, y_vars, y_left.clone(), x_left.clone(), s + 1, n, memo);
        y_left[k] += 1;
        x_left[img] += 1;
    }
    memo.insert(key, total.clone());
    total
}

/// How eigenbasis sums are evaluated. Both are exact and must agree bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenStrategy {
    /// Sum over distinct arrangements, sharing work across arrangements with
    /// the same already-placed sub-multiset.
    #[default]
    Arrangements,
    /// Ryser inclusion-exclusion for the permanent of `[zeta^{<l_j, s>}]`,
    /// then exact division by `prod_l a_l!`.
    Permanent,
}

/// Eigenbasis diagonal coefficient for the label multiset `counts` (indexed
/// by element index; must sum to `|G|`).
pub fn eigen_coefficient(action: &EigenAction, counts: &[u32]) -> Result<CyclotomicInt> {
    eigen_coefficient_with(action, counts, EigenStrategy::default())
}

pub fn eigen_coefficient_with(
    action: &EigenAction,
    counts: &[u32],
    strategy: EigenStrategy,
) -> Result<CyclotomicInt> {
    let g = action.group();
    let n = g.order() as usize;
    if counts.len() != n {
        return invalid(format!("label multiset has {} slots, group order is {n}", counts.len()));
    }
    let size: u64 = counts.iter().map(|&c| c as u64).sum();
    if size != n as u64 {
        return invalid(format!("label multiset has size {size}, group order is {n}"));
    }
    if let Some(j) = (0..n).find(|&j| counts[j] > 0 && action.multiplicities()[j] == 0) {
        return invalid(format!("character {} is absent from the action", g.element_at(j)));
    }
    let table = g.pairing_table();
    match strategy {
        EigenStrategy::Arrangements => Ok(arrangement_sum(n, &table, counts)),
        EigenStrategy::Permanent => permanent_sum(n, &table, counts),
    }
}

/// Coefficient of `M(X) M(Y)` for an arbitrary variable monomial of an
/// action with multiplicities: `prod_l a_l! / prod_v e_v!` times the label
/// coefficient.
pub fn eigen_monomial_coefficient(action: &EigenAction, m: &Monomial) -> Result<CyclotomicInt> {
    let counts = action.label_counts(m)?;
    let base = eigen_coefficient(action, &counts)?;
    let num = counts.iter().fold(BigInt::one(), |acc, &c| acc * factorial(c));
    let den = m.iter().fold(BigInt::one(), |acc, (_, e)| acc * factorial(e));
    Ok(base.scale(&(num / den)))
}

pub(crate) fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn arrangement_sum(n: usize, table: &[Vec<u64>], counts: &[u32]) -> CyclotomicInt {
    let labels: Vec<usize> = (0..n).filter(|&j| counts[j] > 0).collect();
    let caps: Vec<usize> = labels.iter().map(|&j| counts[j] as usize).collect();
    let mut strides = Vec::with_capacity(caps.len());
    let mut states = 1usize;
    for &c in &caps {
        strides.push(states);
        states *= c + 1;
    }
    // dp[state * n + k]: partial arrangements with `state` labels placed and
    // exponent sum congruent to k. A state only feeds larger states.
    let mut dp = vec![0u128; states * n];
    dp[0] = 1;
    let mut used = vec![0usize; caps.len()];
    for state in 0..states {
        let mut rem = state;
        for (u, &c) in used.iter_mut().zip(&caps) {
            *u = rem % (c + 1);
            rem /= c + 1;
        }
        let placed: usize = used.iter().sum();
        if placed == n {
            continue;
        }
        let base = state * n;
        if dp[base..base + n].iter().all(|&x| x == 0) {
            continue;
        }
        let row: Vec<u128> = dp[base..base + n].to_vec();
        for (k, &lab) in labels.iter().enumerate() {
            if used[k] == caps[k] {
                continue;
            }
            let shift = table[lab][placed] as usize;
            let next = (state + strides[k]) * n;
            for (e, &c) in row.iter().enumerate() {
                if c != 0 {
                    let slot = &mut dp[next + (e + shift) % n];
                    *slot = slot.checked_add(c).expect("arrangement count overflow");
                }
            }
        }
    }
    let last = (states - 1) * n;
    CyclotomicInt::from_exponent_counts(n as u64, &dp[last..last + n])
}

fn permanent_sum(n: usize, table: &[Vec<u64>], counts: &[u32]) -> Result<CyclotomicInt> {
    let labels: Vec<usize> = (0..n).filter(|&j| counts[j] > 0).collect();
    let caps: Vec<u32> = labels.iter().map(|&j| counts[j]).collect();
    let nn = n as u64;
    // Columns come in blocks of identical columns, so a column subset is
    // described by how many columns k_l it takes from each block.
    let mut total = CyclotomicInt::zero(nn);
    let mut take = vec![0u32; caps.len()];
    loop {
        let chosen: u32 = take.iter().sum();
        if chosen > 0 {
            let mut prod = CyclotomicInt::one(nn);
            for s in 0..n {
                let mut row = vec![BigInt::zero(); n];
                for (k, &lab) in labels.iter().enumerate() {
                    row[table[lab][s] as usize] += take[k];
                }
                prod = prod.try_mul(&CyclotomicInt::from_exponent_counts(nn, &row))?;
                if prod.is_zero() {
                    break;
                }
            }
            let mult = take
                .iter()
                .zip(&caps)
                .fold(BigInt::one(), |acc, (&k, &c)| acc * binomial(c, k));
            let term = prod.scale(&mult);
            // sign (-1)^(n - |S|)
            total = if (n as u32 - chosen).is_multiple_of(2) {
                total.try_add(&term)?
            } else {
                total.try_sub(&term)?
            };
        }
        // odometer
        let mut i = 0;
        loop {
            if i == take.len() {
                let divisor = caps.iter().fold(BigInt::one(), |acc, &c| acc * factorial(c));
                return total.div_exact(&divisor).map_err(|e| match e {
                    Error::Internal(msg) => Error::Internal(format!("permanent not divisible: {msg}")),
                    other => other,
                });
            }
            if take[i] < caps[i] {
                take[i] += 1;
                break;
            }
            take[i] = 0;
            i += 1;
        }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Refuses naive expansions above these group orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBound {
    pub perm: usize,
    pub eigen: usize,
}

impl Default for OracleBound {
    fn default() -> Self {
        OracleBound { perm: 5, eigen: 4 }
    }
}

/// Full coefficient table keyed by `(X-monomial, Y-monomial)`; zero entries omitted.
pub type ExpansionTable<C> = BTreeMap<(Monomial, Monomial), C>;

/// Either kind of action, for the naive oracle.
#[derive(Debug, Clone, Copy)]
pub enum ActionRef<'a> {
    Perm(&'a PermAction),
    Eigen(&'a EigenAction),
}

/// Term-by-term expansion of the product, with no orbit or multiset logic.
/// Coefficients are returned as cyclotomic integers in both bases (rational
/// integers for permutation actions).
pub fn brute_force_expand(action: ActionRef<'_>, bound: OracleBound) -> Result<ExpansionTable<CyclotomicInt>> {
    let (n, m, limit) = match action {
        ActionRef::Perm(a) => (a.group().order() as usize, a.num_vars(), bound.perm),
        ActionRef::Eigen(a) => (a.group().order() as usize, a.num_vars(), bound.eigen),
    };
    if n > limit {
        return Err(Error::BoundExceeded { order: n, bound: limit });
    }
    let nn = n as u64;
    // factor s: list of (x var, y var, zeta exponent)
    let factors: Vec<Vec<(usize, usize, u64)>> = match action {
        ActionRef::Perm(a) => (0..n)
            .map(|s| (0..m).map(|i| (a.perm(s)[i], i, 0)).collect())
            .collect(),
        ActionRef::Eigen(a) => {
            let g = a.group();
            let elems = g.elements();
            (0..n)
                .map(|s| {
                    (0..m)
                        .map(|v| (v, v, g.pairing_unchecked(&elems[a.label_index(v)], &elems[s])))
                        .collect()
                })
                .collect()
        }
    };
    // Multiply out one factor at a time, tracking exponent histograms.
    let mut acc: BTreeMap<(Vec<u32>, Vec<u32>), Vec<i64>> = BTreeMap::new();
    let mut unit = vec![0i64; n];
    unit[0] = 1;
    acc.insert((vec![0; m], vec![0; m]), unit);
    for factor in &factors {
        let mut next: BTreeMap<(Vec<u32>, Vec<u32>), Vec<i64>> = BTreeMap::new();
        for ((xs, ys), hist) in &acc {
            for &(xv, yv, z) in factor {
                let mut x2 = xs.clone();
                let mut y2 = ys.clone();
                x2[xv] += 1;
                y2[yv] += 1;
                let slot = next.entry((x2, y2)).or_insert_with(|| vec![0; n]);
                for (e, &c) in hist.iter().enumerate() {
                    slot[(e + z as usize) % n] += c;
                }
            }
        }
        acc = next;
    }
    let mut out = ExpansionTable::new();
    for ((xs, ys), hist) in acc {
        let c = CyclotomicInt::from_exponent_counts(nn, &hist);
        if !c.is_zero() {
            out.insert((Monomial::from_dense(&xs), Monomial::from_dense(&ys)), c);
        }
    }
    Ok(out)
}
