//! Multicuts, oriented multicuts, partial multicuts and their relatives,
//! plus the counting sequences used to cross-check enumerations.
//!
//! Enumerators are deterministic: set partitions come out in
//! restricted-growth-string order, subsets in increasing bitmask order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::IntVec;
use crate::spaces::{Coord, Space, SpaceKind};

/// Unordered partition of `1..=n` into nonempty blocks. Blocks are kept
/// sorted internally and ordered by their smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

fn validate_blocks(n: usize, blocks: &[Vec<usize>], allow_uncovered: &BTreeSet<usize>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for b in blocks {
        if b.is_empty() {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        for &x in b {
            if !(1..=n).contains(&x) {
                return Err(Error::InvalidPartition(format!("point {x} outside 1..={n}")));
            }
            if !seen.insert(x) || allow_uncovered.contains(&x) {
                return Err(Error::InvalidPartition(format!("point {x} appears twice")));
            }
        }
    }
    if seen.len() + allow_uncovered.len() != n {
        return Err(Error::InvalidPartition("blocks do not cover all points".into()));
    }
    Ok(())
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::of_complement(n, &BTreeSet::new(), blocks)
    }

    /// Partition of `1..=n` minus `excluded` (used for partial multicuts).
    pub fn of_complement(n: usize, excluded: &BTreeSet<usize>, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        validate_blocks(n, &blocks, excluded)?;
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort();
        Ok(SetPartition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index of every covered point (`None` for excluded points).
    pub fn block_of(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.n + 1];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = Some(k);
            }
        }
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.blocks.iter().map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Sequence of nonempty disjoint blocks covering `1..=n`; order matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedSetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        validate_blocks(n, &blocks, &BTreeSet::new())?;
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        Ok(OrderedSetPartition { n, blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// `S_0` plus a partition of its complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialPartition {
    pub s0: Vec<usize>,
    pub parts: SetPartition,
}

impl PartialPartition {
    pub fn new(n: usize, mut s0: Vec<usize>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        s0.sort_unstable();
        s0.dedup();
        if let Some(&x) = s0.iter().find(|&&x| !(1..=n).contains(&x)) {
            return Err(Error::InvalidPartition(format!("point {x} outside 1..={n}")));
        }
        let excluded: BTreeSet<usize> = s0.iter().copied().collect();
        let parts = SetPartition::of_complement(n, &excluded, blocks)?;
        Ok(PartialPartition { s0, parts })
    }
}

fn parse_block(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| Error::InvalidPartition(format!("bad point `{x}`")))).collect()
}

/// Parses `"1|2,3"` into blocks. The number of points is inferred as the
/// largest point mentioned unless `n` is given.
pub fn parse_partition(text: &str, n: Option<usize>) -> Result<SetPartition> {
    let blocks: Vec<Vec<usize>> = text.split('|').map(parse_block).collect::<Result<_>>()?;
    let n = n.unwrap_or_else(|| blocks.iter().flatten().copied().max().unwrap_or(0));
    SetPartition::new(n, blocks)
}

/// Parses `"0:5,6|1|2,3|4"`: the block after `0:` is `S_0` (may be empty).
pub fn parse_partial_partition(text: &str, n: Option<usize>) -> Result<PartialPartition> {
    let rest = text.trim().strip_prefix("0:").ok_or_else(|| Error::InvalidPartition("expected `0:` prefix".into()))?;
    let mut pieces = rest.split('|');
    let s0 = parse_block(pieces.next().unwrap_or(""))?;
    let blocks: Vec<Vec<usize>> = pieces.map(parse_block).collect::<Result<_>>()?;
    let n = n.unwrap_or_else(|| s0.iter().chain(blocks.iter().flatten()).copied().max().unwrap_or(0));
    PartialPartition::new(n, s0, blocks)
}

impl FromStr for SetPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s, None)
    }
}

fn sym_from<F: Fn(usize, usize) -> i64>(n: usize, f: F) -> IntVec {
    let s = Space::new(SpaceKind::Sym, n);
    IntVec(
        s.coords()
            .into_iter()
            .map(|c| match c {
                Coord::Pair(i, j) => BigInt::from(f(i, j)),
                _ => unreachable!(),
            })
            .collect(),
    )
}

/// `δ(S_1,...,S_t)`: 1 exactly between points of different blocks.
pub fn multicut(parts: &SetPartition) -> IntVec {
    let b = parts.block_of();
    sym_from(parts.n, |i, j| i64::from(b[i] != b[j]))
}

/// The 2-cut `δ(S)` on `n` points.
pub fn cut(n: usize, s: &[usize]) -> IntVec {
    let inside: BTreeSet<usize> = s.iter().copied().collect();
    sym_from(n, |i, j| i64::from(inside.contains(&i) != inside.contains(&j)))
}

/// `δ'(S_1,...,S_t)`: `q_ij = 1` iff `i` lies in an earlier block than `j`.
pub fn omulticut(parts: &OrderedSetPartition) -> IntVec {
    let mut pos = vec![0usize; parts.n + 1];
    for (k, b) in parts.blocks.iter().enumerate() {
        for &x in b {
            pos[x] = k;
        }
    }
    let s = Space::new(SpaceKind::Quasi, parts.n);
    IntVec(
        s.coords()
            .into_iter()
            .map(|c| match c {
                Coord::Arc(i, j) => BigInt::from(i64::from(pos[i] < pos[j])),
                _ => unreachable!(),
            })
            .collect(),
    )
}

/// The o-cut `δ'(S) = δ'(S, complement)`.
pub fn ocut(n: usize, s: &[usize]) -> IntVec {
    let inside: BTreeSet<usize> = s.iter().copied().collect();
    let space = Space::new(SpaceKind::Quasi, n);
    IntVec(
        space
            .coords()
            .into_iter()
            .map(|c| match c {
                Coord::Arc(i, j) => BigInt::from(i64::from(inside.contains(&i) && !inside.contains(&j))),
                _ => unreachable!(),
            })
            .collect(),
    )
}

/// `J(S)`: 1 exactly on pairs (and diagonal entries) inside `S`, in `PSYM(n)`.
pub fn j_matrix(n: usize, s: &[usize]) -> IntVec {
    let inside: BTreeSet<usize> = s.iter().copied().collect();
    let space = Space::new(SpaceKind::Psym, n);
    IntVec(
        space
            .coords()
            .into_iter()
            .map(|c| {
                let on = match c {
                    Coord::Pair(i, j) => inside.contains(&i) && inside.contains(&j),
                    Coord::Diag(i) => inside.contains(&i),
                    _ => unreachable!(),
                };
                BigInt::from(i64::from(on))
            })
            .collect(),
    )
}

/// `γ(S_0; S_1,...,S_t) = J(S_0) + δ(S_0, S_1, ..., S_t)` in `PSYM(n)`.
pub fn partial_multicut(pp: &PartialPartition) -> IntVec {
    let n = pp.parts.n;
    let mut label = vec![usize::MAX; n + 1];
    for (k, b) in pp.parts.blocks.iter().enumerate() {
        for &x in b {
            label[x] = k;
        }
    }
    let in0: BTreeSet<usize> = pp.s0.iter().copied().collect();
    let space = Space::new(SpaceKind::Psym, n);
    IntVec(
        space
            .coords()
            .into_iter()
            .map(|c| {
                let v = match c {
                    Coord::Diag(i) => in0.contains(&i),
                    Coord::Pair(i, j) => in0.contains(&i) || in0.contains(&j) || label[i] != label[j],
                    _ => unreachable!(),
                };
                BigInt::from(i64::from(v))
            })
            .collect(),
    )
}

/// `(δ(S); w(Â))` with `w_i = 1` iff `i` lies in a block whose index is in
/// `selected` (0-based indices into `parts.blocks()`).
pub fn weighted_multicut(parts: &SetPartition, selected: &[usize]) -> Result<IntVec> {
    if let Some(&k) = selected.iter().find(|&&k| k >= parts.len()) {
        return Err(Error::OutOfRange(format!("block index {k} of {}", parts.len())));
    }
    let n = parts.n;
    let b = parts.block_of();
    let chosen: BTreeSet<usize> = selected.iter().copied().collect();
    let space = Space::new(SpaceKind::Wsym, n);
    Ok(IntVec(
        space
            .coords()
            .into_iter()
            .map(|c| {
                let v = match c {
                    Coord::Pair(i, j) => b[i] != b[j],
                    Coord::Weight(i) => chosen.contains(&b[i].unwrap()),
                    _ => unreachable!(),
                };
                BigInt::from(i64::from(v))
            })
            .collect(),
    ))
}

/// Weighted semimetric with weights given point by point.
pub fn with_weights(d: &IntVec, w: &[i64]) -> Result<IntVec> {
    let n = w.len();
    let sym = Space::new(SpaceKind::Sym, n);
    sym.check(d)?;
    let space = Space::new(SpaceKind::Wsym, n);
    Ok(IntVec(
        space
            .coords()
            .into_iter()
            .map(|c| match c {
                Coord::Pair(i, j) => d.0[sym.idx(Coord::Pair(i, j))].clone(),
                Coord::Weight(i) => BigInt::from(w[i - 1]),
                _ => unreachable!(),
            })
            .collect(),
    ))
}

/// `e_j = (((0)); w_i = 1_{i=j})` in `WSYM(n)`.
pub fn basis_weight(j: usize, n: usize) -> Result<IntVec> {
    if !(1..=n).contains(&j) {
        return Err(Error::OutOfRange(format!("point {j} not in 1..={n}")));
    }
    let space = Space::new(SpaceKind::Wsym, n);
    Ok(IntVec::unit(space.dim(), space.idx(Coord::Weight(j))))
}

/// `q_ij = sum_k max(x_ik - x_jk, 0)`.
pub fn oriented_l1(points: &[Vec<i64>]) -> Result<IntVec> {
    let n = points.len();
    let m = points.first().map_or(0, Vec::len);
    if let Some(p) = points.iter().find(|p| p.len() != m) {
        return Err(Error::LengthMismatch { left: p.len(), right: m });
    }
    let space = Space::new(SpaceKind::Quasi, n);
    Ok(IntVec(
        space
            .coords()
            .into_iter()
            .map(|c| match c {
                Coord::Arc(i, j) => {
                    BigInt::from(points[i - 1].iter().zip(&points[j - 1]).map(|(a, b)| (a - b).max(0)).sum::<i64>())
                }
                _ => unreachable!(),
            })
            .collect(),
    ))
}

// ---------------------------------------------------------------- enumerators

/// All set partitions of `1..=n` (restricted growth order). `n = 0` yields
/// the single empty partition.
pub fn set_partitions(n: usize) -> Vec<SetPartition> {
    set_partitions_of(&(1..=n).collect::<Vec<_>>(), n)
}

/// All set partitions of the given points, viewed inside `1..=n`.
pub fn set_partitions_of(points: &[usize], n: usize) -> Vec<SetPartition> {
    let m = points.len();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; m];
    fn rec(k: usize, max: usize, rgs: &mut Vec<usize>, points: &[usize], n: usize, out: &mut Vec<SetPartition>) {
        if k == rgs.len() {
            let t = if rgs.is_empty() { 0 } else { max + 1 };
            let mut blocks = vec![Vec::new(); t];
            for (idx, &b) in rgs.iter().enumerate() {
                blocks[b].push(points[idx]);
            }
            let excluded: BTreeSet<usize> = (1..=n).filter(|x| !points.contains(x)).collect();
            out.push(SetPartition::of_complement(n, &excluded, blocks).expect("valid by construction"));
            return;
        }
        let limit = if k == 0 { 0 } else { max + 1 };
        for v in 0..=limit {
            rgs[k] = v;
            rec(k + 1, max.max(v), rgs, points, n, out);
        }
    }
    rec(0, 0, &mut rgs, points, n, &mut out);
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; k];
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(k, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(k, &mut cur, &mut used, &mut out);
    out
}

/// All permutations of `1..=n` in lexicographic order, one-based.
pub fn point_permutations(n: usize) -> Vec<Vec<usize>> {
    permutations(n).into_iter().map(|p| p.into_iter().map(|x| x + 1).collect()).collect()
}

/// All ordered set partitions of `1..=n`.
pub fn ordered_set_partitions(n: usize) -> Vec<OrderedSetPartition> {
    let mut out = Vec::new();
    for sp in set_partitions(n) {
        for perm in permutations(sp.len()) {
            let blocks = perm.iter().map(|&k| sp.blocks[k].clone()).collect();
            out.push(OrderedSetPartition { n, blocks });
        }
    }
    out
}

/// All subsets of `1..=n` by increasing bitmask.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n).map(|mask| (1..=n).filter(|&i| mask >> (i - 1) & 1 == 1).collect()).collect()
}

/// The `2^(n-1) - 1` nonzero 2-cuts, each named by the side containing 1.
pub fn cuts(n: usize) -> Vec<(Vec<usize>, IntVec)> {
    subsets(n)
        .into_iter()
        .filter(|s| s.contains(&1) && s.len() < n)
        .map(|s| {
            let v = cut(n, &s);
            (s, v)
        })
        .collect()
}

/// The `2^n - 2` nonzero o-cuts.
pub fn ocuts(n: usize) -> Vec<(Vec<usize>, IntVec)> {
    subsets(n)
        .into_iter()
        .filter(|s| !s.is_empty() && s.len() < n)
        .map(|s| {
            let v = ocut(n, &s);
            (s, v)
        })
        .collect()
}

/// All partial partitions `(S_0; S_1..S_t)` of `1..=n`.
pub fn partial_partitions(n: usize) -> Vec<PartialPartition> {
    let mut out = Vec::new();
    for s0 in subsets(n) {
        let rest: Vec<usize> = (1..=n).filter(|x| !s0.contains(x)).collect();
        for parts in set_partitions_of(&rest, n) {
            out.push(PartialPartition { s0: s0.clone(), parts });
        }
    }
    out
}

// ------------------------------------------------------------------ counting

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Stirling numbers of the second kind via the alternating-sum formula.
pub fn stirling2(n: u64, t: u64) -> u128 {
    if t == 0 {
        return u128::from(n == 0);
    }
    let mut sum = BigInt::zero();
    for j in 0..=t {
        let term = BigInt::from(binomial(t, j)) * BigInt::from(t - j).pow(n as u32);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let fact = (1..=t).fold(BigInt::one(), |a, k| a * k);
    u128::try_from(sum / fact).expect("fits in u128")
}

/// Bell numbers via `B(n) = sum_t C(n-1, t) B(t)`.
pub fn bell(n: u64) -> u128 {
    let mut b = vec![1u128];
    for m in 1..=n {
        let v = (0..m).map(|t| binomial(m - 1, t) * b[t as usize]).sum();
        b.push(v);
    }
    b[n as usize]
}

/// Ordered Bell (Fubini) numbers: `sum_t t! S(n, t)`.
pub fn ordered_bell(n: u64) -> u128 {
    (0..=n).map(|t| (1..=t as u128).product::<u128>() * stirling2(n, t)).sum()
}

/// Number of integer partitions of `i`.
pub fn partition_number(i: u64) -> u128 {
    let i = i as usize;
    let mut p = vec![0u128; i + 1];
    p[0] = 1;
    for part in 1..=i {
        for total in part..=i {
            p[total] += p[total - part];
        }
    }
    p[i]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Counting {
    Stirling2 { n: u64, t: u64 },
    Bell(u64),
    OrderedBell(u64),
    PartitionNumber(u64),
}

pub fn counting(kind: Counting) -> u128 {
    match kind {
        Counting::Stirling2 { n, t } => stirling2(n, t),
        Counting::Bell(n) => bell(n),
        Counting::OrderedBell(n) => ordered_bell(n),
        Counting::PartitionNumber(i) => partition_number(i),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn v(x: &[i64]) -> IntVec {
        IntVec::from_i64s(x)
    }

    #[test]
    fn multicut_examples() {
        assert_eq!(multicut(&"1|2,3".parse().unwrap()), v(&[1, 1, 0]));
        assert_eq!(multicut(&"1|2|3".parse().unwrap()), v(&[1, 1, 1]));
        let all: HashSet<IntVec> = set_partitions(4).iter().map(multicut).collect();
        assert_eq!(all.len(), 15);
        assert!(SetPartition::new(3, vec![vec![1], vec![1, 2, 3]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1], vec![2]]).is_err());
    }

    #[test]
    fn omulticut_examples() {
        let op = OrderedSetPartition::new(3, vec![vec![1], vec![2, 3]]).unwrap();
        // QUASI(3) order: q12 q21 q13 q31 q23 q32
        assert_eq!(omulticut(&op), v(&[1, 0, 1, 0, 0, 0]));
        let nonzero: HashSet<IntVec> = ordered_set_partitions(3).iter().map(omulticut).filter(|x| !x.is_zero()).collect();
        assert_eq!(nonzero.len() as u128, ordered_bell(3) - 1);
        assert_eq!(nonzero.len(), 12);
    }

    #[test]
    fn partial_multicut_examples() {
        let g = partial_multicut(&parse_partial_partition("0:2|1,3,4", None).unwrap());
        assert_eq!(g, v(&[0, 1, 1, 0, 1, 0, 0, 1, 0, 0]));
        let g = partial_multicut(&parse_partial_partition("0:3|1|2", None).unwrap());
        assert_eq!(g, v(&[0, 1, 0, 1, 1, 1]));
        let g = partial_multicut(&parse_partial_partition("0:1,2,3", None).unwrap());
        assert_eq!(g, v(&[1, 1, 1, 1, 1, 1]));
        assert!(PartialPartition::new(3, vec![1], vec![vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn weighted_multicut_examples() {
        let parts: SetPartition = "1|2,3".parse().unwrap();
        assert_eq!(weighted_multicut(&parts, &[0]).unwrap(), v(&[1, 1, 0, 1, 0, 0]));
        let whole: SetPartition = "1,2,3".parse().unwrap();
        assert_eq!(weighted_multicut(&whole, &[0]).unwrap(), v(&[1, 0, 1, 0, 0, 1]));
        assert!(weighted_multicut(&whole, &[1]).is_err());
        let mut all = HashSet::new();
        for sp in set_partitions(3) {
            for mask in 0u32..1 << sp.len() {
                let sel: Vec<usize> = (0..sp.len()).filter(|k| mask >> k & 1 == 1).collect();
                all.insert(weighted_multicut(&sp, &sel).unwrap());
            }
        }
        assert_eq!(all.len(), 22);
    }

    #[test]
    fn basis_weight_examples() {
        assert_eq!(basis_weight(1, 3).unwrap(), v(&[1, 0, 0, 0, 0, 0]));
        assert!(basis_weight(4, 3).is_err());
        let sum = (1..=3).map(|j| basis_weight(j, 3).unwrap()).reduce(|a, b| a.add(&b).unwrap()).unwrap();
        assert_eq!(sum, v(&[1, 0, 1, 0, 0, 1]));
    }

    #[test]
    fn oriented_l1_examples() {
        assert_eq!(oriented_l1(&[vec![0], vec![1]]).unwrap(), ocut(2, &[2]));
        assert!(oriented_l1(&[vec![3, 1], vec![3, 1], vec![3, 1]]).unwrap().is_zero());
        // 0,1,2 on a line: q_ji = x_j - x_i for j > i, upper entries 0
        assert_eq!(oriented_l1(&[vec![0], vec![1], vec![2]]).unwrap(), v(&[0, 1, 0, 2, 0, 1]));
        assert!(oriented_l1(&[vec![0], vec![1, 2]]).is_err());
    }

    #[test]
    fn counting_examples() {
        let bells: Vec<u128> = (0..8).map(bell).collect();
        assert_eq!(bells, [1, 1, 2, 5, 15, 52, 203, 877]);
        for n in 2..10u64 {
            assert_eq!(stirling2(n, 2), (1 << (n - 1)) - 1);
            assert_eq!(stirling2(n, n - 1), binomial(n, 2));
            let total: u128 = (0..=n).map(|t| stirling2(n, t)).sum();
            assert_eq!(total, bell(n));
        }
        assert_eq!(stirling2(5, 2), 15);
        assert_eq!(stirling2(4, 3), 6);
        assert_eq!((0..6).map(ordered_bell).collect::<Vec<_>>(), [1, 1, 3, 13, 75, 541]);
        assert_eq!((0..8).map(partition_number).collect::<Vec<_>>(), [1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn enumerator_sizes() {
        for n in 1..=6 {
            assert_eq!(set_partitions(n).len() as u128, bell(n as u64));
            assert_eq!(cuts(n).len(), (1 << (n - 1)) - 1);
            assert_eq!(ocuts(n).len(), (1 << n) - 2);
        }
        for n in 1..=5 {
            assert_eq!(partial_partitions(n).len() as u128, bell(n as u64 + 1));
            assert_eq!(ordered_set_partitions(n).len() as u128, ordered_bell(n as u64));
        }
    }

    #[test]
    fn multicut_is_half_sum_of_block_cuts() {
        for n in 1..=6 {
            for sp in set_partitions(n) {
                let doubled =
                    sp.blocks().iter().map(|b| cut(n, b)).fold(IntVec::zeros(n * (n - 1) / 2), |a, b| a.add(&b).unwrap());
                assert_eq!(doubled, multicut(&sp).scale(&BigInt::from(2)));
            }
        }
    }
}
