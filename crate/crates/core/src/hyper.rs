//! Hypermetric and oriented hypermetric inequalities, tournaments.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::IntVec;
use crate::spaces::{Coord, Space, SpaceKind};

/// Integer coefficient vector `b` with cached sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BCoeffs {
    b: Vec<i64>,
    sigma: i64,
}

impl BCoeffs {
    pub fn new(b: Vec<i64>) -> Self {
        let sigma = b.iter().sum();
        BCoeffs { b, sigma }
    }

    pub fn values(&self) -> &[i64] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn sigma(&self) -> i64 {
        self.sigma
    }

    pub fn at(&self, i: usize) -> i64 {
        self.b[i - 1]
    }

    /// `<b, 1_S>` for a set of one-based points.
    pub fn mass(&self, s: &[usize]) -> i64 {
        s.iter().map(|&i| self.at(i)).sum()
    }

    /// Same coefficients with `extra` zeros appended.
    pub fn zero_extended(&self, extra: usize) -> BCoeffs {
        let mut b = self.b.clone();
        b.extend(std::iter::repeat_n(0, extra));
        BCoeffs::new(b)
    }
}

impl FromStr for BCoeffs {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let b = s
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse { line: 1, msg: format!("bad coefficient `{x}`") }))
            .collect::<Result<Vec<_>>>()?;
        Ok(BCoeffs::new(b))
    }
}

impl fmt::Display for BCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.b.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All nonzero `b` of length `n` with `|b_i| <= bound` and sum in `sigmas`,
/// in lexicographic order.
pub fn b_family(n: usize, bound: i64, sigmas: &[i64]) -> Vec<BCoeffs> {
    let mut out = Vec::new();
    let mut cur = vec![-bound; n];
    loop {
        let s: i64 = cur.iter().sum();
        if sigmas.contains(&s) && cur.iter().any(|&x| x != 0) {
            out.push(BCoeffs::new(cur.clone()));
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < bound {
                cur[k] += 1;
                break;
            }
            cur[k] = -bound;
        }
    }
}

fn value_at(a: &IntVec, space: Space, i: usize, j: usize) -> Result<BigInt> {
    if i == j {
        return Ok(match space.kind {
            SpaceKind::Sym => BigInt::zero(),
            SpaceKind::Psym => a.0[space.idx(Coord::Diag(i))].clone(),
            _ => return Err(Error::SpaceMismatch { expected: "SYM or PSYM".into(), got: space.kind.tag().into() }),
        });
    }
    match space.kind {
        SpaceKind::Sym | SpaceKind::Psym => Ok(a.0[space.idx(Coord::Pair(i, j))].clone()),
        _ => Err(Error::SpaceMismatch { expected: "SYM or PSYM".into(), got: space.kind.tag().into() }),
    }
}

/// `H_b(a) = -sum_{i,j} b_i b_j a_ij` over the full symmetric matrix.
/// `a` lives in `SYM(n)` (zero diagonal) or `PSYM(n)`.
pub fn h_b(b: &BCoeffs, a: &IntVec, space: Space) -> Result<BigInt> {
    if b.n() != space.n {
        return Err(Error::LengthMismatch { left: b.n(), right: space.n });
    }
    space.check(a)?;
    let mut total = BigInt::zero();
    for i in 1..=space.n {
        for j in 1..=space.n {
            total -= value_at(a, space, i, j)? * (b.at(i) * b.at(j));
        }
    }
    Ok(total)
}

/// Normal of `Hyp_b` (or `Hyp'_b` when `primed`) in `WSYM(n)`:
/// `-b_i b_j` on `d_ij` and `(1 -+ sigma) b_i` on `w_i`. The vector is not
/// rescaled, so its value on `(d; w)` is the inequality's value.
pub fn hyp_vector(b: &BCoeffs, primed: bool) -> IntVec {
    let n = b.n();
    let s = b.sigma();
    let wcoef = if primed { 1 + s } else { 1 - s };
    let space = Space::new(SpaceKind::Wsym, n);
    IntVec(
        space
            .coords()
            .into_iter()
            .map(|c| match c {
                Coord::Pair(i, j) => BigInt::from(-b.at(i) * b.at(j)),
                Coord::Weight(i) => BigInt::from(wcoef * b.at(i)),
                _ => unreachable!(),
            })
            .collect(),
    )
}

/// Normal of the plain hypermetric `-sum_{i<j} b_i b_j d_ij` in `SYM(n)`.
pub fn hypermetric_vector(b: &BCoeffs) -> IntVec {
    let space = Space::new(SpaceKind::Sym, b.n());
    IntVec(
        space
            .coords()
            .into_iter()
            .map(|c| match c {
                Coord::Pair(i, j) => BigInt::from(-b.at(i) * b.at(j)),
                _ => unreachable!(),
            })
            .collect(),
    )
}

/// Orientation of `K_n`: exactly one arc between every two points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    // beats[i][j] for zero-based i != j
    beats: Vec<Vec<bool>>,
}

impl Tournament {
    /// Builds from one-based arcs; every pair must be covered exactly once.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut beats = vec![vec![false; n]; n];
        for &(i, j) in arcs {
            if i == j || !(1..=n).contains(&i) || !(1..=n).contains(&j) {
                return Err(Error::OutOfRange(format!("arc {i}>{j} on {n} points")));
            }
            if beats[i - 1][j - 1] || beats[j - 1][i - 1] {
                return Err(Error::Inconsistent(format!("pair {{{i},{j}}} oriented twice")));
            }
            beats[i - 1][j - 1] = true;
        }
        for i in 0..n {
            for j in i + 1..n {
                if !beats[i][j] && !beats[j][i] {
                    return Err(Error::Inconsistent(format!("pair {{{},{}}} has no arc", i + 1, j + 1)));
                }
            }
        }
        Ok(Tournament { n, beats })
    }

    /// Tournament from a bitmask over pairs `(i<j)` in `SYM` order: bit set
    /// means the arc `i -> j`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut beats = vec![vec![false; n]; n];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> k & 1 == 1 {
                    beats[i][j] = true;
                } else {
                    beats[j][i] = true;
                }
                k += 1;
            }
        }
        Tournament { n, beats }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the arc `i -> j` is present (one-based).
    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.beats[i - 1][j - 1]
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if i != j && self.has_arc(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.beats[i - 1].iter().filter(|&&x| x).count()
    }

    pub fn in_degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&k| self.beats[k][i - 1]).count()
    }

    /// Admissible iff every vertex has equal in- and out-degree.
    pub fn is_admissible(&self) -> bool {
        (1..=self.n).all(|i| self.in_degree(i) == self.out_degree(i))
    }

    /// Splits the arcs into arc-disjoint directed cycles by repeated
    /// extraction; `None` when the tournament is not admissible.
    pub fn cycle_decomposition(&self) -> Option<Vec<Vec<usize>>> {
        if !self.is_admissible() {
            return None;
        }
        let mut left = self.beats.clone();
        let mut cycles = Vec::new();
        loop {
            let Some(start) = (0..self.n).find(|&i| left[i].iter().any(|&x| x)) else {
                return Some(cycles);
            };
            // walk until a vertex repeats, then cut out that cycle
            let mut path = vec![start];
            let mut pos = vec![usize::MAX; self.n];
            pos[start] = 0;
            loop {
                let u = *path.last().unwrap();
                let v = (0..self.n).find(|&v| left[u][v])?;
                if pos[v] != usize::MAX {
                    let cyc: Vec<usize> = path[pos[v]..].to_vec();
                    for w in 0..cyc.len() {
                        let (a, b) = (cyc[w], cyc[(w + 1) % cyc.len()]);
                        left[a][b] = false;
                    }
                    cycles.push(cyc.into_iter().map(|x| x + 1).collect());
                    break;
                }
                pos[v] = path.len();
                path.push(v);
            }
        }
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self.arcs().into_iter().map(|(i, j)| format!("{i}>{j}")).collect();
        write!(f, "{}", arcs.join(","))
    }
}

/// Parses `"1>2,2>3,3>1"` or the keyword `"Oc"` (needs `n`).
pub fn parse_tournament(text: &str, n: usize) -> Result<Tournament> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("oc") {
        return canonical_tournament(n);
    }
    let arcs = t
        .split(',')
        .map(|a| {
            let (i, j) = a.split_once('>').ok_or_else(|| Error::Parse { line: 1, msg: format!("bad arc `{a}`") })?;
            let p = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Parse { line: 1, msg: format!("bad point `{x}`") });
            Ok((p(i)?, p(j)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Tournament::from_arcs(n, &arcs)
}

/// The canonical admissible tournament: the circulant `i -> i+k (mod n)`
/// for `1 <= k <= (n-1)/2`, equivalently the arcs `(i, i+k)` with
/// `k <= floor(n/2)` and `(i+k, i)` with `k >= ceil(n/2)`.
pub fn canonical_tournament(n: usize) -> Result<Tournament> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::EvenTournament(n));
    }
    let mut arcs = Vec::new();
    for i in 1..n {
        for k in 1..=n - i {
            if k <= n / 2 {
                arcs.push((i, i + k));
            } else {
                arcs.push((i + k, i));
            }
        }
    }
    Tournament::from_arcs(n, &arcs)
}

/// All admissible tournaments on `n` points (`n <= 7`).
pub fn admissible_tournaments(n: usize) -> Vec<Tournament> {
    let pairs = n * (n - 1) / 2;
    assert!(pairs < 64, "too many points");
    (0u64..1 << pairs).map(|m| Tournament::from_mask(n, m)).filter(Tournament::is_admissible).collect()
}

fn oriented_form(b: &BCoeffs, t: &Tournament) -> IntVec {
    let n = b.n();
    let space = Space::new(SpaceKind::Quasi, n);
    let mut out = IntVec::zeros(space.dim());
    for i in 1..=n {
        for j in i + 1..=n {
            let prod = b.at(i) * b.at(j);
            if prod == 0 {
                continue;
            }
            let forward = t.has_arc(i, j);
            let along = if prod > 0 { forward } else { !forward };
            let arc = if along { Coord::Arc(i, j) } else { Coord::Arc(j, i) };
            out.0[space.idx(arc)] = BigInt::from(-prod);
        }
    }
    out
}

/// Normal of `OHyp_{b,O}` in `QUASI(n)`: `-b_i b_j` on the arc of `O`
/// between `i` and `j` when `b_i b_j >= 0`, on the reversed arc otherwise.
pub fn ohyp_vector(b: &BCoeffs, t: &Tournament) -> Result<IntVec> {
    if b.n() != t.n() {
        return Err(Error::LengthMismatch { left: b.n(), right: t.n() });
    }
    if b.sigma() != 1 {
        return Err(Error::BadSigma { expected: 1, got: b.sigma() });
    }
    if !t.is_admissible() {
        return Err(Error::NotAdmissible);
    }
    Ok(oriented_form(b, t))
}

/// The oriented negative type form with the same arc rule (`sigma = 0`).
pub fn oneg_vector(b: &BCoeffs, t: &Tournament) -> Result<IntVec> {
    if b.n() != t.n() {
        return Err(Error::LengthMismatch { left: b.n(), right: t.n() });
    }
    if b.sigma() != 0 {
        return Err(Error::BadSigma { expected: 0, got: b.sigma() });
    }
    Ok(oriented_form(b, t))
}

/// `-b_i b_j` on both `q_ij` and `q_ji`: half of `Hyp_b(q + q^T)`, scaled by 2.
pub fn symmetric_hyp_quasi(b: &BCoeffs) -> IntVec {
    let n = b.n();
    let space = Space::new(SpaceKind::Quasi, n);
    IntVec(
        space
            .coords()
            .into_iter()
            .map(|c| match c {
                Coord::Arc(i, j) => BigInt::from(-b.at(i) * b.at(j)),
                _ => unreachable!(),
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cut, multicut, ocut, set_partitions, subsets, weighted_multicut, with_weights};
    use crate::spaces::symmetrize;

    fn v(x: &[i64]) -> IntVec {
        IntVec::from_i64s(x)
    }

    fn sym(n: usize) -> Space {
        Space::new(SpaceKind::Sym, n)
    }

    #[test]
    fn h_b_examples() {
        let b = BCoeffs::new(vec![1, -1, 0]);
        assert_eq!(h_b(&b, &cut(3, &[1]), sym(3)).unwrap(), BigInt::from(2));
        let b = BCoeffs::new(vec![1, 1, -1]);
        let d = multicut(&"1,2|3".parse().unwrap());
        assert_eq!(h_b(&b, &d, sym(3)).unwrap(), BigInt::from(4));
        let zero = BCoeffs::new(vec![0, 0, 0]);
        assert!(h_b(&zero, &d, sym(3)).unwrap().is_zero());
        assert!(h_b(&BCoeffs::new(vec![1, 1]), &d, sym(3)).is_err());
    }

    #[test]
    fn h_b_on_multicuts_matches_block_formula() {
        for n in 2..=5 {
            for b in b_family(n, 2, &[-1, 0, 1, 2]) {
                for sp in set_partitions(n) {
                    let d = multicut(&sp);
                    let expected: i64 = sp
                        .blocks()
                        .iter()
                        .map(|blk| {
                            let r = b.mass(blk);
                            r * (r - b.sigma())
                        })
                        .sum();
                    assert_eq!(h_b(&b, &d, sym(n)).unwrap(), BigInt::from(expected));
                }
            }
        }
    }

    #[test]
    fn hyp_vector_examples() {
        // WSYM(3): w1 21 w2 31 32 w3
        assert_eq!(hyp_vector(&BCoeffs::new(vec![1, -1, 0]), false), v(&[1, 1, -1, 0, 0, 0]));
        assert_eq!(hyp_vector(&BCoeffs::new(vec![1, 0, 0]), true), v(&[2, 0, 0, 0, 0, 0]));
        assert_eq!(hyp_vector(&BCoeffs::new(vec![1, 1, -1]), true), v(&[2, -1, 2, 1, 1, -2]));
    }

    #[test]
    fn hyp_prime_values_on_01_dwmet_rays() {
        for n in 3..=5 {
            let whole: Vec<usize> = (1..=n).collect();
            for b in b_family(n, 2, &[0, 1]) {
                let s = b.sigma();
                let f = hyp_vector(&b, true);
                let ones = with_weights(&IntVec::zeros(n * (n - 1) / 2), &vec![1; n]).unwrap();
                assert_eq!(f.dot(&ones).unwrap(), BigInt::from((s + 1) * s));
                for set in subsets(n) {
                    if set.is_empty() || set.len() == n {
                        continue;
                    }
                    let r = b.mass(&set);
                    let comp: Vec<usize> = whole.iter().copied().filter(|x| !set.contains(x)).collect();
                    let sp = crate::generators::SetPartition::new(n, vec![set.clone(), comp]).unwrap();
                    let k_s = sp.blocks().iter().position(|blk| *blk == set).unwrap();
                    let plain = weighted_multicut(&sp, &[]).unwrap();
                    let on_s = weighted_multicut(&sp, &[k_s]).unwrap();
                    let on_comp = weighted_multicut(&sp, &[1 - k_s]).unwrap();
                    assert_eq!(f.dot(&plain).unwrap(), BigInt::from(r * (r - s)));
                    assert_eq!(f.dot(&on_s).unwrap(), BigInt::from(r * (r + 1)));
                    assert_eq!(f.dot(&on_comp).unwrap(), BigInt::from((s - r) * (s - r + 1)));
                }
            }
        }
    }

    #[test]
    fn b_family_is_complete_and_sorted() {
        let fam = b_family(3, 1, &[1]);
        // entries in {-1,0,1} summing to 1: three units, and permutations of (1,1,-1)
        assert_eq!(fam.len(), 6);
        assert!(fam.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(b_family(4, 2, &[0, 1]).len(), {
            let mut c = 0;
            for a in -2..=2i64 {
                for b in -2..=2i64 {
                    for x in -2..=2i64 {
                        for y in -2..=2i64 {
                            let s = a + b + x + y;
                            if (s == 0 || s == 1) && (a, b, x, y) != (0, 0, 0, 0) {
                                c += 1;
                            }
                        }
                    }
                }
            }
            c
        });
    }

    #[test]
    fn tournaments() {
        assert!(canonical_tournament(4).is_err());
        let t3 = canonical_tournament(3).unwrap();
        assert_eq!(t3.arcs(), [(1, 2), (2, 3), (3, 1)]);
        assert!(t3.is_admissible());
        let t5 = canonical_tournament(5).unwrap();
        assert!(t5.is_admissible());
        assert!((1..=5).all(|i| t5.out_degree(i) == 2));
        let cycles = t5.cycle_decomposition().unwrap();
        assert_eq!(cycles.iter().map(Vec::len).sum::<usize>(), 10);
        for n in [3usize, 5, 7] {
            let t = canonical_tournament(n).unwrap();
            let cyc = t.cycle_decomposition().unwrap();
            let mut arcs: Vec<(usize, usize)> =
                cyc.iter().flat_map(|c| (0..c.len()).map(move |k| (c[k], c[(k + 1) % c.len()]))).collect();
            arcs.sort();
            assert_eq!(arcs, t.arcs());
        }
        for n in [2usize, 4] {
            assert!(admissible_tournaments(n).is_empty());
        }
        assert_eq!(admissible_tournaments(3).len(), 2);
        assert_eq!(admissible_tournaments(5).len(), 24);
        assert_eq!(parse_tournament("1>2,2>3,3>1", 3).unwrap(), t3);
        assert_eq!(parse_tournament("Oc", 5).unwrap(), t5);
        assert!(parse_tournament("1>2,2>1,3>1", 3).is_err());
        assert!(parse_tournament("1>2,2>3", 3).is_err());
    }

    #[test]
    fn literal_index_bounds_overlap_at_three_points() {
        // the arc ranges with upper bound ceil(n/2)+1-i put both (1,3) and (3,1) in
        let n = 3usize;
        let c = n.div_ceil(2);
        let mut arcs = Vec::new();
        for i in 1..n {
            for k in 1..=(c + 1).saturating_sub(i) {
                if i + k <= n {
                    arcs.push((i, i + k));
                }
            }
        }
        for i in 1..=n / 2 {
            for k in c..=n - i {
                arcs.push((i + k, i));
            }
        }
        assert!(arcs.contains(&(1, 3)) && arcs.contains(&(3, 1)));
        assert!(Tournament::from_arcs(n, &arcs).is_err());
    }

    fn pm_family(n: usize) -> Vec<BCoeffs> {
        b_family(n, 1, &[1]).into_iter().filter(|b| b.values().iter().all(|&x| x != 0)).collect()
    }

    #[test]
    fn ohyp_examples() {
        let t5 = canonical_tournament(5).unwrap();
        let b = BCoeffs::new(vec![1, 1, -1, 0, 0]);
        // a tournament that is a directed 3-cycle on the support {1,2,3}
        let t = admissible_tournaments(5).into_iter().find(|t| t.has_arc(1, 2) && t.has_arc(2, 3) && t.has_arc(3, 1)).unwrap();
        let f = ohyp_vector(&b, &t).unwrap();
        let r = b.mass(&[1, 2]);
        assert_eq!(f.dot(&ocut(5, &[1, 2])).unwrap() * 2, BigInt::from(r * (r - 1)));
        let unit = BCoeffs::new(vec![1, 0, 0, 0, 0]);
        assert!(ohyp_vector(&unit, &t5).unwrap().is_zero());
        assert!(matches!(ohyp_vector(&BCoeffs::new(vec![1, 1, -1, -1, 0]), &t5), Err(Error::BadSigma { .. })));
        let bad = Tournament::from_mask(5, 0);
        assert!(matches!(ohyp_vector(&b, &bad), Err(Error::NotAdmissible)));
        let t4 = Tournament::from_mask(4, 0b111111);
        let neg = oneg_vector(&BCoeffs::new(vec![1, 1, -1, -1]), &t4).unwrap();
        // every arc i -> j (i < j): +1 on the reversed mixed arcs, -1 on q12, q34
        let s = Space::new(SpaceKind::Quasi, 4);
        let at = |i, j| neg.0[s.idx(Coord::Arc(i, j))].clone();
        for (i, j) in [(1, 3), (1, 4), (2, 3), (2, 4)] {
            assert_eq!(at(j, i), BigInt::from(1));
        }
        assert_eq!(at(1, 2), BigInt::from(-1));
        assert_eq!(at(3, 4), BigInt::from(-1));
    }

    #[test]
    fn ohyp_on_ocuts_is_half_block_value() {
        for n in [3usize, 5] {
            let tours = admissible_tournaments(n);
            for b in pm_family(n) {
                for t in &tours {
                    let f = ohyp_vector(&b, t).unwrap();
                    for s in subsets(n) {
                        let r = b.mass(&s);
                        assert_eq!(f.dot(&ocut(n, &s)).unwrap() * 2, BigInt::from(r * (r - 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn ohyp_agrees_with_symmetric_form_on_weightable_points() {
        let n = 5;
        for t in admissible_tournaments(n) {
            for b in pm_family(n) {
                let f = ohyp_vector(&b, &t).unwrap();
                let g = symmetric_hyp_quasi(&b);
                for s in subsets(n) {
                    let q = ocut(n, &s).add(&ocut(n, &[1, 3])).unwrap();
                    let twice = f.dot(&q).unwrap() * 2;
                    assert_eq!(twice, g.dot(&q).unwrap());
                    let d = symmetrize(&q, n).unwrap();
                    assert_eq!(twice * 2, h_b(&b, &d, sym(n)).unwrap());
                }
            }
        }
    }
}
