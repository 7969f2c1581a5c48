//! 0,1-valued points of cones: pruned exhaustive search, structural
//! enumerators, extremality and the forced entries of 0,1 quasi-semimetrics.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::catalog::{extreme_among, Base, ConeId, ConeModel};
use crate::error::{Error, Result};
use crate::exactla::IntVec;
use crate::generators::{
    multicut, partial_multicut, partial_partitions, set_partitions, subsets, weighted_multicut, with_weights, PartialPartition,
    SetPartition,
};
use crate::polyhedra::{dd_facets, map_all};
use crate::spaces::{Coord, Space};
use crate::symmetry::{Action, Group};

/// Largest ambient dimension searched exhaustively.
pub const BRUTE_FORCE_MAX_DIM: usize = 24;

// ------------------------------------------------------------ structural

/// Structural list of all 0,1 points (including 0), when one is known.
pub fn structural(c: &ConeModel) -> Option<Vec<IntVec>> {
    let ConeId::Base(base) = c.id else { return None };
    let n = c.n;
    let out: Vec<IntVec> = match base {
        Base::Met => set_partitions(n).iter().map(multicut).collect(),
        Base::WPmet | Base::Pmet => partial_partitions(n).iter().map(partial_multicut).collect(),
        Base::SPmet => {
            let mut v = vec![IntVec::zeros(c.space.dim())];
            for s in subsets(n).into_iter().filter(|s| !s.is_empty()) {
                let rest: Vec<usize> = (1..=n).filter(|i| !s.contains(i)).collect();
                let blocks = if rest.is_empty() { vec![] } else { vec![rest] };
                let pp = PartialPartition::new(n, s, blocks).ok()?;
                v.push(partial_multicut(&pp));
            }
            v
        }
        Base::DWmet => {
            let mut v = Vec::new();
            for parts in set_partitions(n) {
                for sel in block_subsets(&parts) {
                    v.push(weighted_multicut(&parts, &sel).ok()?);
                }
            }
            v
        }
        Base::Wmet => {
            let mut v = Vec::new();
            for parts in set_partitions(n) {
                let d = multicut(&parts);
                for mask in 0u32..1 << n {
                    let w: Vec<i64> = (0..n).map(|i| i64::from(mask >> i & 1)).collect();
                    v.push(with_weights(&d, &w).ok()?);
                }
            }
            v
        }
        Base::Wqmet => {
            let space = c.space;
            let mut v = Vec::new();
            for parts in set_partitions(n) {
                for sel in block_subsets(&parts) {
                    v.push(wqmet_point(&parts, &sel, space));
                }
            }
            v
        }
        _ => return None,
    };
    Some(out.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
}

fn block_subsets(parts: &SetPartition) -> Vec<Vec<usize>> {
    let t = parts.len();
    (0u32..1 << t).map(|m| (0..t).filter(|k| m >> k & 1 == 1).collect()).collect()
}

/// `δ(S) - δ'(Â)`, `Â` the union of the selected blocks.
fn wqmet_point(parts: &SetPartition, selected: &[usize], space: Space) -> IntVec {
    let b = parts.block_of();
    let in_a = |i: usize| selected.contains(&b[i].unwrap());
    IntVec(
        space
            .coords()
            .into_iter()
            .map(|c| {
                let Coord::Arc(i, j) = c else { unreachable!() };
                let v = b[i] != b[j] && !(in_a(i) && !in_a(j));
                i64::from(v).into()
            })
            .collect(),
    )
}

// ------------------------------------------------------------ brute force

struct Constraint {
    equality: bool,
}

/// All 0,1 points of `c` by pruned search over `{0,1}^dim`.
pub fn brute_force(c: &ConeModel) -> Result<Vec<IntVec>> {
    let d = c.space.dim();
    if d > BRUTE_FORCE_MAX_DIM {
        return Err(Error::Budget(c.name()));
    }
    let (ineqs, eqs) = match &c.generators {
        Some(g) => {
            let hull = dd_facets(g, &[])?;
            (hull.facets, hull.equalities)
        }
        None => (c.inequalities.clone(), c.equalities.clone()),
    };
    let mut rows: Vec<(Vec<i64>, Constraint)> = Vec::new();
    for (list, equality) in [(&ineqs, false), (&eqs, true)] {
        for r in list {
            let coefs =
                r.entries().iter().map(|x| x.to_i64().ok_or_else(|| Error::Budget(c.name()))).collect::<Result<Vec<_>>>()?;
            rows.push((coefs, Constraint { equality }));
        }
    }
    // Coordinates clustered by constraint support, small supports first.
    let mut by_support: Vec<usize> = (0..rows.len()).collect();
    by_support.sort_by_key(|&k| rows[k].0.iter().filter(|x| **x != 0).count());
    let mut order = Vec::with_capacity(d);
    let mut placed = vec![false; d];
    for k in by_support {
        for (j, x) in rows[k].0.iter().enumerate() {
            if *x != 0 && !placed[j] {
                placed[j] = true;
                order.push(j);
            }
        }
    }
    order.extend((0..d).filter(|&j| !placed[j]));
    let search = Search::new(&rows, &order);
    let split = order.len().min(6);
    let prefixes: Vec<u32> = (0..1u32 << split).collect();
    let found = map_all(&prefixes, |&mask| search.run(split, mask));
    let mut out: Vec<IntVec> = found
        .into_iter()
        .flatten()
        .map(|bits| {
            let mut v = IntVec::zeros(d);
            for (pos, &j) in order.iter().enumerate() {
                if bits[pos] {
                    v.0[j] = 1.into();
                }
            }
            v
        })
        .collect();
    out.sort();
    Ok(out)
}

struct Search<'a> {
    rows: &'a [(Vec<i64>, Constraint)],
    order: &'a [usize],
    /// For each position in `order`: (row, coefficient) pairs.
    touches: Vec<Vec<(usize, i64)>>,
}

struct State {
    val: Vec<i64>,
    pos_rem: Vec<i64>,
    neg_rem: Vec<i64>,
    bits: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(rows: &'a [(Vec<i64>, Constraint)], order: &'a [usize]) -> Self {
        let touches = order
            .iter()
            .map(|&j| rows.iter().enumerate().filter(|(_, r)| r.0[j] != 0).map(|(k, r)| (k, r.0[j])).collect())
            .collect();
        Search { rows, order, touches }
    }

    fn feasible(&self, s: &State, k: usize) -> bool {
        let hi = s.val[k] + s.pos_rem[k];
        let lo = s.val[k] + s.neg_rem[k];
        if self.rows[k].1.equality {
            lo <= 0 && hi >= 0
        } else {
            hi >= 0
        }
    }

    fn assign(&self, s: &mut State, pos: usize, one: bool) -> bool {
        let mut ok = true;
        for &(k, a) in &self.touches[pos] {
            if a > 0 {
                s.pos_rem[k] -= a;
            } else {
                s.neg_rem[k] -= a;
            }
            if one {
                s.val[k] += a;
            }
            ok &= self.feasible(s, k);
        }
        s.bits[pos] = one;
        ok
    }

    fn unassign(&self, s: &mut State, pos: usize) {
        let one = s.bits[pos];
        for &(k, a) in &self.touches[pos] {
            if a > 0 {
                s.pos_rem[k] += a;
            } else {
                s.neg_rem[k] += a;
            }
            if one {
                s.val[k] -= a;
            }
        }
        s.bits[pos] = false;
    }

    /// Completes the assignment whose first `split` positions are `mask`.
    fn run(&self, split: usize, mask: u32) -> Vec<Vec<bool>> {
        let m = self.rows.len();
        let mut s = State {
            val: vec![0; m],
            pos_rem: self.rows.iter().map(|r| r.0.iter().filter(|x| **x > 0).sum()).collect(),
            neg_rem: self.rows.iter().map(|r| r.0.iter().filter(|x| **x < 0).sum()).collect(),
            bits: vec![false; self.order.len()],
        };
        for pos in 0..split {
            if !self.assign(&mut s, pos, mask >> pos & 1 == 1) {
                return Vec::new();
            }
        }
        let mut out = Vec::new();
        self.dfs(&mut s, split, &mut out);
        out
    }

    fn dfs(&self, s: &mut State, pos: usize, out: &mut Vec<Vec<bool>>) {
        if pos == self.order.len() {
            out.push(s.bits.clone());
            return;
        }
        for one in [false, true] {
            if self.assign(s, pos, one) {
                self.dfs(s, pos + 1, out);
            }
            self.unassign(s, pos);
        }
    }
}

// ------------------------------------------------------------ reports

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Both,
    StructuralOnly,
    BruteForceOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroOneReport {
    pub cone: String,
    pub n: usize,
    pub total: usize,
    pub extreme: usize,
    pub orbits_total: usize,
    pub orbits_extreme: usize,
    pub method: Method,
    #[serde(skip)]
    pub all_points: Vec<IntVec>,
    #[serde(skip)]
    pub extreme_points: Vec<IntVec>,
}

/// All 0,1 points of `c`: structural when available, otherwise brute force.
pub fn points(c: &ConeModel) -> Result<Vec<IntVec>> {
    match structural(c) {
        Some(v) => Ok(v),
        None => brute_force(c),
    }
}

/// Points spanning extreme rays of `c`.
pub fn extreme_01(c: &ConeModel, pts: &[IntVec]) -> Result<Vec<IntVec>> {
    extreme_among(c, pts)
}

/// Enumerates the 0,1 points both ways where possible; the two lists must
/// coincide.
pub fn enumerate_01(c: &ConeModel) -> Result<ZeroOneReport> {
    let st = structural(c);
    let brute = if c.space.dim() <= BRUTE_FORCE_MAX_DIM { Some(brute_force(c)?) } else { None };
    let (all, method) = match (st, brute) {
        (Some(s), Some(b)) => {
            if s != b {
                let missing = b.iter().find(|x| !s.contains(x));
                let extra = s.iter().find(|x| !b.contains(x));
                return Err(Error::Inconsistent(format!(
                    "{}: structural {} vs exhaustive {} points (first unmatched: {:?} / {:?})",
                    c.name(),
                    s.len(),
                    b.len(),
                    missing,
                    extra
                )));
            }
            (s, Method::Both)
        }
        (Some(s), None) => (s, Method::StructuralOnly),
        (None, Some(b)) => (b, Method::BruteForceOnly),
        (None, None) => return Err(Error::Budget(c.name())),
    };
    let ext = extreme_01(c, &all)?;
    let group = Group::new(c.symmetry, c.space)?;
    let orbits_total = group.orbits(&all, Action::Ray)?.len();
    let orbits_extreme = group.orbits(&ext, Action::Ray)?.len();
    Ok(ZeroOneReport {
        cone: c.id.to_string(),
        n: c.n,
        total: all.len(),
        extreme: ext.len(),
        orbits_total,
        orbits_extreme,
        method,
        all_points: all,
        extreme_points: ext,
    })
}

// ------------------------------------------------------------ forced entries

/// What row and column 1 of a 0,1 quasi-semimetric force on the other
/// entries, computed three ways: by exhaustive completion, by the two
/// quoted implication rules, and by the closed-form count.
#[derive(Clone, Debug, Serialize)]
pub struct ForcedEntries {
    pub n: usize,
    pub s: Vec<usize>,
    pub s_prime: Vec<usize>,
    pub completions: usize,
    /// `((i, j), value)` for every `q_ij`, `2 <= i != j <= n`, taking the
    /// same value in every completion.
    pub determined: Vec<((usize, usize), u8)>,
    /// `q_ij = 0` for `i, j` outside `S` and `S'`.
    pub rule_zero: Vec<(usize, usize)>,
    /// `q_ij = q_ji = 1` for `i in S`, `j` outside `S'`.
    pub rule_one: Vec<(usize, usize)>,
    /// Rule entries contradicted by some completion.
    pub rule_violations: Vec<((usize, usize), u8)>,
    pub formula: i64,
}

/// `s = {i : q_i1 = 1}`, `s_prime = {i : q_1i = 1}`, both inside `2..=n`.
pub fn forced_entries_01_quasi(n: usize, s: &[usize], s_prime: &[usize]) -> Result<ForcedEntries> {
    if !(2..=6).contains(&n) {
        return Err(Error::OutOfRange(format!("n={n} not in 2..=6")));
    }
    if let Some(x) = s.iter().chain(s_prime).find(|&&x| x < 2 || x > n) {
        return Err(Error::OutOfRange(format!("point {x} not in 2..={n}")));
    }
    let inn = |set: &[usize], i: usize| set.contains(&i);
    let free: Vec<(usize, usize)> = (2..=n).flat_map(|i| (2..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let value = |q: &[u8], i: usize, j: usize| -> i64 {
        if i == 1 {
            i64::from(inn(s_prime, j))
        } else if j == 1 {
            i64::from(inn(s, i))
        } else {
            i64::from(q[free.iter().position(|&p| p == (i, j)).unwrap()])
        }
    };
    let mut completions: Vec<Vec<u8>> = Vec::new();
    for mask in 0u64..1 << free.len() {
        let q: Vec<u8> = (0..free.len()).map(|k| (mask >> k & 1) as u8).collect();
        let ok = (1..=n).all(|i| {
            (1..=n).all(|j| i == j || (1..=n).all(|k| k == i || k == j || value(&q, i, k) + value(&q, k, j) >= value(&q, i, j)))
        });
        if ok {
            completions.push(q);
        }
    }
    if completions.is_empty() {
        return Err(Error::Inconsistent(format!("no 0,1 quasi-semimetric with S={s:?}, S'={s_prime:?}")));
    }
    let determined: Vec<((usize, usize), u8)> = free
        .iter()
        .enumerate()
        .filter(|(k, _)| completions.iter().all(|q| q[*k] == completions[0][*k]))
        .map(|(k, &p)| (p, completions[0][k]))
        .collect();
    let outside = |i: usize| !inn(s, i) && !inn(s_prime, i);
    let rule_zero: Vec<(usize, usize)> = free.iter().copied().filter(|&(i, j)| outside(i) && outside(j)).collect();
    let rule_one: Vec<(usize, usize)> =
        free.iter().copied().filter(|&(i, j)| (inn(s, i) && !inn(s_prime, j)) || (inn(s, j) && !inn(s_prime, i))).collect();
    let mut rule_violations = Vec::new();
    for (rule, v) in [(&rule_zero, 0u8), (&rule_one, 1u8)] {
        for &p in rule {
            let k = free.iter().position(|&f| f == p).unwrap();
            if completions.iter().any(|q| q[k] != v) {
                rule_violations.push((p, v));
            }
        }
    }
    let others: Vec<usize> = (2..=n).collect();
    let count = |f: &dyn Fn(usize) -> bool| others.iter().filter(|&&i| f(i)).count() as i64;
    let both_out = count(&|i| outside(i));
    let ss = count(&|i| inn(s, i));
    let sp = count(&|i| inn(s_prime, i));
    let m = others.len() as i64;
    let s_not_sp = count(&|i| inn(s, i) && !inn(s_prime, i));
    let sp_not_s = count(&|i| inn(s_prime, i) && !inn(s, i));
    let formula = both_out * (both_out - 1) + ss * (m - ss - 1) + sp * (m - sp - 1) - s_not_sp * sp_not_s;
    Ok(ForcedEntries {
        n,
        s: s.to_vec(),
        s_prime: s_prime.to_vec(),
        completions: completions.len(),
        determined,
        rule_zero,
        rule_one,
        rule_violations,
        formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;
    use crate::generators::{bell, stirling2};

    #[test]
    fn counts() {
        for n in 3..=4u64 {
            let p = enumerate_01(&build("PMET", n as usize).unwrap()).unwrap();
            assert_eq!(p.method, Method::Both);
            assert_eq!(p.total as u128, bell(n + 1));
            let d = enumerate_01(&build("dWMET", n as usize).unwrap()).unwrap();
            let expect: u128 = (1..=n).map(|t| (1u128 << t) * stirling2(n, t)).sum();
            assert_eq!(d.total as u128, expect);
            let w = enumerate_01(&build("WMET", n as usize).unwrap()).unwrap();
            assert_eq!(w.total as u128, (1u128 << n) * bell(n));
        }
    }

    #[test]
    fn pmet3_and_dwmet3() {
        let p = enumerate_01(&build("PMET", 3).unwrap()).unwrap();
        assert_eq!((p.total, p.extreme), (15, 13));
        let d = enumerate_01(&build("dWMET", 3).unwrap()).unwrap();
        assert_eq!((d.total, d.extreme, d.orbits_extreme), (22, 10, 4));
    }

    #[test]
    fn spmet4_partial_two_cuts() {
        let s = enumerate_01(&build("sPMET", 4).unwrap()).unwrap();
        assert_eq!(s.total, 16);
        assert_eq!(s.method, Method::Both);
    }

    #[test]
    fn all_ones_weighted_cut_is_not_extreme() {
        let c = build("dWMET", 4).unwrap();
        let parts = crate::generators::parse_partition("1|2,3,4", Some(4)).unwrap();
        let all = weighted_multicut(&parts, &[0, 1]).unwrap();
        let w1 = weighted_multicut(&parts, &[0]).unwrap();
        let w2 = weighted_multicut(&parts, &[1]).unwrap();
        let ones = weighted_multicut(&crate::generators::parse_partition("1,2,3,4", Some(4)).unwrap(), &[0]).unwrap();
        assert_eq!(all.scale(&2.into()), w1.add(&w2).unwrap().add(&ones).unwrap());
        let ext = extreme_01(&c, &[all.clone(), w1.clone(), w2.clone(), ones.clone()]).unwrap();
        assert_eq!(ext, vec![w1, w2, ones]);
    }

    #[test]
    fn forced_entries_trivial_case() {
        let f = forced_entries_01_quasi(4, &[], &[]).unwrap();
        assert_eq!(f.completions, 1);
        assert_eq!(f.determined.len(), 6);
        assert!(f.determined.iter().all(|(_, v)| *v == 0));
        assert!(f.rule_violations.is_empty());
    }

    #[test]
    fn forced_entries_rule_one_half_holds() {
        // q_ij + q_j1 >= q_i1 forces q_ij = 1 for i in S, j outside S.
        let f = forced_entries_01_quasi(4, &[2], &[3]).unwrap();
        for j in [3, 4] {
            assert!(f.determined.contains(&((2, j), 1)));
        }
    }
}
