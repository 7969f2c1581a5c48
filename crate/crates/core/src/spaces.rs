//! Coordinate spaces and the linear maps between them.
//!
//! Points are numbered `1..=n`. Coordinates are laid out so that everything
//! involving point `n` comes after everything on `1..n-1`, which makes
//! 0-extension an append of zeros for every kind except `QW`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::IntVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceKind {
    /// `d_ij`, `i > j`: (21),(31),(32),(41),...
    Sym,
    /// `p_ij`, `i >= j`: (11),(21),(22),(31),...
    Psym,
    /// `(w_1),(d_21),(w_2),(d_31),(d_32),(w_3),...`
    Wsym,
    /// `q_ij` for `i < j` in the order (12),(13),(23),(14),..., then `w_1..w_n`.
    Qw,
    /// `q_ij` for ordered pairs: (12),(21),(13),(31),(23),(32),(14),...
    Quasi,
}

impl SpaceKind {
    pub fn tag(self) -> &'static str {
        match self {
            SpaceKind::Sym => "SYM",
            SpaceKind::Psym => "PSYM",
            SpaceKind::Wsym => "WSYM",
            SpaceKind::Qw => "QW",
            SpaceKind::Quasi => "QUASI",
        }
    }
}

impl FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "SYM" => SpaceKind::Sym,
            "PSYM" => SpaceKind::Psym,
            "WSYM" => SpaceKind::Wsym,
            "QW" => SpaceKind::Qw,
            "QUASI" => SpaceKind::Quasi,
            other => return Err(Error::Parse { line: 1, msg: format!("unknown space kind `{other}`") }),
        })
    }
}

/// Semantic meaning of one coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coord {
    /// Symmetric off-diagonal entry, stored with `i > j`.
    Pair(usize, usize),
    /// Diagonal entry `p_ii`.
    Diag(usize),
    /// Weight `w_i`.
    Weight(usize),
    /// Ordered entry `q_ij`, `i != j`.
    Arc(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub kind: SpaceKind,
    pub n: usize,
}

fn tri(i: usize) -> usize {
    i * (i.saturating_sub(1)) / 2
}

impl Space {
    pub fn new(kind: SpaceKind, n: usize) -> Self {
        Space { kind, n }
    }

    pub fn dim(&self) -> usize {
        let n = self.n;
        match self.kind {
            SpaceKind::Sym => n * (n - 1) / 2,
            SpaceKind::Psym | SpaceKind::Wsym => n * (n + 1) / 2,
            SpaceKind::Qw => n * (n - 1) / 2 + n,
            SpaceKind::Quasi => n * (n - 1),
        }
    }

    /// Same kind on `n + 1` points.
    pub fn grow(&self) -> Space {
        Space::new(self.kind, self.n + 1)
    }

    /// Flat index of a coordinate; `None` if the coordinate does not exist
    /// in this space. Symmetric pairs are accepted in either order.
    pub fn index(&self, c: Coord) -> Option<usize> {
        let n = self.n;
        let ok = |i: usize| (1..=n).contains(&i);
        match (self.kind, c) {
            (SpaceKind::Sym, Coord::Pair(i, j)) if i != j && ok(i) && ok(j) => {
                let (a, b) = (i.max(j), i.min(j));
                Some(tri(a - 1) + b - 1)
            }
            (SpaceKind::Psym, Coord::Pair(i, j)) | (SpaceKind::Wsym, Coord::Pair(i, j)) if i != j && ok(i) && ok(j) => {
                let (a, b) = (i.max(j), i.min(j));
                Some(tri(a) + b - 1)
            }
            (SpaceKind::Psym, Coord::Diag(i)) if ok(i) => Some(tri(i) + i - 1),
            (SpaceKind::Wsym, Coord::Weight(i)) if ok(i) => Some(tri(i) + i - 1),
            (SpaceKind::Qw, Coord::Arc(i, j)) if i < j && ok(j) && i >= 1 => Some(tri(j - 1) + i - 1),
            (SpaceKind::Qw, Coord::Weight(i)) if ok(i) => Some(n * (n - 1) / 2 + i - 1),
            (SpaceKind::Quasi, Coord::Arc(i, j)) if i != j && ok(i) && ok(j) => {
                let (a, b) = (i.max(j), i.min(j));
                Some(2 * (tri(a - 1) + b - 1) + usize::from(i > j))
            }
            _ => None,
        }
    }

    pub fn idx(&self, c: Coord) -> usize {
        self.index(c).unwrap_or_else(|| panic!("coordinate {c:?} not in {self}"))
    }

    pub fn coords(&self) -> Vec<Coord> {
        let n = self.n;
        let mut out = Vec::with_capacity(self.dim());
        match self.kind {
            SpaceKind::Sym => {
                for i in 2..=n {
                    for j in 1..i {
                        out.push(Coord::Pair(i, j));
                    }
                }
            }
            SpaceKind::Psym | SpaceKind::Wsym => {
                for i in 1..=n {
                    for j in 1..i {
                        out.push(Coord::Pair(i, j));
                    }
                    out.push(if self.kind == SpaceKind::Psym { Coord::Diag(i) } else { Coord::Weight(i) });
                }
            }
            SpaceKind::Qw => {
                for j in 2..=n {
                    for i in 1..j {
                        out.push(Coord::Arc(i, j));
                    }
                }
                for i in 1..=n {
                    out.push(Coord::Weight(i));
                }
            }
            SpaceKind::Quasi => {
                for j in 2..=n {
                    for i in 1..j {
                        out.push(Coord::Arc(i, j));
                        out.push(Coord::Arc(j, i));
                    }
                }
            }
        }
        out
    }

    pub fn label(&self, k: usize) -> String {
        match self.coords()[k] {
            Coord::Pair(i, j) => format!("{i}{j}"),
            Coord::Diag(i) => format!("{i}{i}"),
            Coord::Weight(i) => format!("w{i}"),
            Coord::Arc(i, j) => format!("q{i}{j}"),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|k| self.label(k)).collect()
    }

    pub fn check(&self, v: &IntVec) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::LengthMismatch { left: v.len(), right: self.dim() });
        }
        Ok(())
    }

    /// Coordinate permutation induced by the point permutation `sigma`
    /// (`sigma[i-1]` is the image of point `i`), optionally followed by
    /// reversal `q_ij -> q_ji`. Entry `k` of the result is the new index of
    /// coordinate `k`. `None` for `QW`, where relabelling is not a
    /// coordinate permutation.
    pub fn coord_perm(&self, sigma: &[usize], reverse: bool) -> Option<Vec<usize>> {
        if self.kind == SpaceKind::Qw || (reverse && self.kind != SpaceKind::Quasi) {
            return None;
        }
        let s = |i: usize| sigma[i - 1];
        Some(
            self.coords()
                .into_iter()
                .map(|c| {
                    let image = match c {
                        Coord::Pair(i, j) => Coord::Pair(s(i), s(j)),
                        Coord::Diag(i) => Coord::Diag(s(i)),
                        Coord::Weight(i) => Coord::Weight(s(i)),
                        Coord::Arc(i, j) if reverse => Coord::Arc(s(j), s(i)),
                        Coord::Arc(i, j) => Coord::Arc(s(i), s(j)),
                    };
                    self.idx(image)
                })
                .collect(),
        )
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind.tag(), self.n)
    }
}

/// Whether a halving map must land on integers or may return its doubled
/// image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lattice {
    Strict,
    Doubled,
}

fn halve(space: Space, raw: Vec<BigInt>, mode: Lattice) -> Result<IntVec> {
    match mode {
        Lattice::Doubled => Ok(IntVec(raw)),
        Lattice::Strict => {
            let two = BigInt::from(2);
            let mut out = Vec::with_capacity(raw.len());
            for (k, x) in raw.into_iter().enumerate() {
                let (q, r) = x.div_rem(&two);
                if !r.is_zero() {
                    return Err(Error::NotInDoubledLattice { coord: space.label(k) });
                }
                out.push(q);
            }
            Ok(IntVec(out))
        }
    }
}

fn expect(space: Space, x: &IntVec, kind: SpaceKind) -> Result<()> {
    if space.kind != kind {
        return Err(Error::SpaceMismatch { expected: kind.tag().into(), got: space.kind.tag().into() });
    }
    space.check(x)
}

/// Reads `(d; w)` from a `WSYM` vector: `d(i,j)` and `w(i)` accessors.
struct Weighted<'a> {
    s: Space,
    x: &'a IntVec,
}

impl Weighted<'_> {
    fn d(&self, i: usize, j: usize) -> &BigInt {
        &self.x.0[self.s.idx(Coord::Pair(i, j))]
    }
    fn w(&self, i: usize) -> &BigInt {
        &self.x.0[self.s.idx(Coord::Weight(i))]
    }
}

/// `p_ij = (d_ij + w_i + w_j)/2`, `p_ii = w_i`. In `Doubled` mode returns `2p`.
pub fn p_map(x: &IntVec, n: usize, mode: Lattice) -> Result<IntVec> {
    let ws = Space::new(SpaceKind::Wsym, n);
    expect(ws, x, SpaceKind::Wsym)?;
    let ps = Space::new(SpaceKind::Psym, n);
    let src = Weighted { s: ws, x };
    let raw = ps
        .coords()
        .into_iter()
        .map(|c| match c {
            Coord::Pair(i, j) => src.d(i, j) + src.w(i) + src.w(j),
            Coord::Diag(i) => src.w(i) * 2,
            _ => unreachable!(),
        })
        .collect();
    halve(ps, raw, mode)
}

/// Inverse of [`p_map`]: `d_ij = 2p_ij - p_ii - p_jj`, `w_i = p_ii`.
pub fn p_inv(p: &IntVec, n: usize) -> Result<IntVec> {
    let ps = Space::new(SpaceKind::Psym, n);
    expect(ps, p, SpaceKind::Psym)?;
    let ws = Space::new(SpaceKind::Wsym, n);
    let at = |c| &p.0[ps.idx(c)];
    Ok(IntVec(
        ws.coords()
            .into_iter()
            .map(|c| match c {
                Coord::Pair(i, j) => at(Coord::Pair(i, j)) * 2 - at(Coord::Diag(i)) - at(Coord::Diag(j)),
                Coord::Weight(i) => at(Coord::Diag(i)).clone(),
                _ => unreachable!(),
            })
            .collect(),
    ))
}

/// `q_ij = (d_ij - w_i + w_j)/2` in `QW(n)`: the `q_ij` with `i < j`, then
/// the weights unchanged. `Doubled` mode returns `2q` together with `2w`.
pub fn q_map(x: &IntVec, n: usize, mode: Lattice) -> Result<IntVec> {
    let ws = Space::new(SpaceKind::Wsym, n);
    expect(ws, x, SpaceKind::Wsym)?;
    let qs = Space::new(SpaceKind::Qw, n);
    let src = Weighted { s: ws, x };
    let raw = qs
        .coords()
        .into_iter()
        .map(|c| match c {
            Coord::Arc(i, j) => src.d(i, j) - src.w(i) + src.w(j),
            Coord::Weight(i) => src.w(i) * 2,
            _ => unreachable!(),
        })
        .collect();
    halve(qs, raw, mode)
}

/// Same map as [`q_map`] but written out as a full `QUASI(n)` vector.
pub fn q_map_quasi(x: &IntVec, n: usize, mode: Lattice) -> Result<IntVec> {
    let ws = Space::new(SpaceKind::Wsym, n);
    expect(ws, x, SpaceKind::Wsym)?;
    let qs = Space::new(SpaceKind::Quasi, n);
    let src = Weighted { s: ws, x };
    let raw = qs
        .coords()
        .into_iter()
        .map(|c| match c {
            Coord::Arc(i, j) => src.d(i, j) - src.w(i) + src.w(j),
            _ => unreachable!(),
        })
        .collect();
    halve(qs, raw, mode)
}

/// Expands `QW(n)` to `QUASI(n)` using `q_ji = q_ij + w_i - w_j`.
pub fn qw_to_quasi(x: &IntVec, n: usize) -> Result<IntVec> {
    let src = Space::new(SpaceKind::Qw, n);
    expect(src, x, SpaceKind::Qw)?;
    let qs = Space::new(SpaceKind::Quasi, n);
    let at = |c| &x.0[src.idx(c)];
    Ok(IntVec(
        qs.coords()
            .into_iter()
            .map(|c| match c {
                Coord::Arc(i, j) if i < j => at(Coord::Arc(i, j)).clone(),
                Coord::Arc(i, j) => at(Coord::Arc(j, i)) + at(Coord::Weight(j)) - at(Coord::Weight(i)),
                _ => unreachable!(),
            })
            .collect(),
    ))
}

/// Weights of a weightable quasi-semimetric, shifted so the minimum is 0.
/// `None` if `q_ij + w_i = q_ji + w_j` has no solution.
pub fn quasi_weights(q: &IntVec, n: usize) -> Result<Option<Vec<BigInt>>> {
    let qs = Space::new(SpaceKind::Quasi, n);
    expect(qs, q, SpaceKind::Quasi)?;
    let at = |i, j| &q.0[qs.idx(Coord::Arc(i, j))];
    // w_j = w_1 + q_1j - q_j1
    let mut w = vec![BigInt::zero(); n];
    for j in 2..=n {
        w[j - 1] = at(1, j) - at(j, 1);
    }
    for i in 1..=n {
        for j in 1..=n {
            if i != j && at(i, j) + &w[i - 1] != at(j, i) + &w[j - 1] {
                return Ok(None);
            }
        }
    }
    let min = w.iter().min().cloned().unwrap_or_default();
    Ok(Some(w.into_iter().map(|x| x - &min).collect()))
}

/// Inverse of [`qw_to_quasi`] on weightable input (weights shifted to min 0).
pub fn quasi_to_qw(q: &IntVec, n: usize) -> Result<Option<IntVec>> {
    let Some(w) = quasi_weights(q, n)? else {
        return Ok(None);
    };
    let src = Space::new(SpaceKind::Quasi, n);
    let dst = Space::new(SpaceKind::Qw, n);
    Ok(Some(IntVec(
        dst.coords()
            .into_iter()
            .map(|c| match c {
                Coord::Arc(i, j) => q.0[src.idx(Coord::Arc(i, j))].clone(),
                Coord::Weight(i) => w[i - 1].clone(),
                _ => unreachable!(),
            })
            .collect(),
    )))
}

/// `d_ij = q_ij + q_ji`.
pub fn symmetrize(q: &IntVec, n: usize) -> Result<IntVec> {
    let qs = Space::new(SpaceKind::Quasi, n);
    expect(qs, q, SpaceKind::Quasi)?;
    let ss = Space::new(SpaceKind::Sym, n);
    Ok(IntVec(
        ss.coords()
            .into_iter()
            .map(|c| match c {
                Coord::Pair(i, j) => &q.0[qs.idx(Coord::Arc(i, j))] + &q.0[qs.idx(Coord::Arc(j, i))],
                _ => unreachable!(),
            })
            .collect(),
    ))
}

/// Lifting `p -> p+`: a new point, numbered 1 in the output, with
/// `p+_00 = 0` and `p+_0i = p_ii`. Old point `i` becomes `i + 1`.
pub fn lift(p: &IntVec, n: usize) -> Result<IntVec> {
    let ps = Space::new(SpaceKind::Psym, n);
    expect(ps, p, SpaceKind::Psym)?;
    let big = Space::new(SpaceKind::Psym, n + 1);
    let at = |c| p.0[ps.idx(c)].clone();
    Ok(IntVec(
        big.coords()
            .into_iter()
            .map(|c| match c {
                Coord::Diag(1) => BigInt::zero(),
                Coord::Diag(i) => at(Coord::Diag(i - 1)),
                Coord::Pair(i, 1) => at(Coord::Diag(i - 1)),
                Coord::Pair(i, j) => at(Coord::Pair(i - 1, j - 1)),
                _ => unreachable!(),
            })
            .collect(),
    ))
}

/// 0-extension to `n + 1` points.
pub fn zero_extension(v: &IntVec, space: Space) -> Result<IntVec> {
    space.check(v)?;
    let big = space.grow();
    let mut out = IntVec::zeros(big.dim());
    for (k, c) in space.coords().into_iter().enumerate() {
        out.0[big.idx(c)] = v.0[k].clone();
    }
    Ok(out)
}

/// `(d; w)` on `1..n` as a semimetric on `{0, 1, ..., n}`, with point 0
/// numbered 1 in the output and `d'_0i = w_i`.
pub fn wsym_to_sym(x: &IntVec, n: usize) -> Result<IntVec> {
    let ws = Space::new(SpaceKind::Wsym, n);
    expect(ws, x, SpaceKind::Wsym)?;
    let ss = Space::new(SpaceKind::Sym, n + 1);
    Ok(IntVec(
        ss.coords()
            .into_iter()
            .map(|c| match c {
                Coord::Pair(i, 1) => x.0[ws.idx(Coord::Weight(i - 1))].clone(),
                Coord::Pair(i, j) => x.0[ws.idx(Coord::Pair(i - 1, j - 1))].clone(),
                _ => unreachable!(),
            })
            .collect(),
    ))
}

/// Inverse of [`wsym_to_sym`].
pub fn sym_to_wsym(d: &IntVec, n_plus_1: usize) -> Result<IntVec> {
    let ss = Space::new(SpaceKind::Sym, n_plus_1);
    expect(ss, d, SpaceKind::Sym)?;
    let n = n_plus_1 - 1;
    let ws = Space::new(SpaceKind::Wsym, n);
    Ok(IntVec(
        ws.coords()
            .into_iter()
            .map(|c| match c {
                Coord::Weight(i) => d.0[ss.idx(Coord::Pair(i + 1, 1))].clone(),
                Coord::Pair(i, j) => d.0[ss.idx(Coord::Pair(i + 1, j + 1))].clone(),
                _ => unreachable!(),
            })
            .collect(),
    ))
}

/// The relation `i ⪯ j iff p_ii = p_ij` together with its maximal and
/// minimal elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationOrder {
    pub pairs: Vec<(usize, usize)>,
    pub maximal: Vec<usize>,
    pub minimal: Vec<usize>,
}

impl SpecializationOrder {
    pub fn relates(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }
}

pub fn specialization_order(p: &IntVec, n: usize) -> Result<SpecializationOrder> {
    let ps = Space::new(SpaceKind::Psym, n);
    expect(ps, p, SpaceKind::Psym)?;
    let at = |i: usize, j: usize| {
        if i == j {
            &p.0[ps.idx(Coord::Diag(i))]
        } else {
            &p.0[ps.idx(Coord::Pair(i, j))]
        }
    };
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if at(i, i) == at(i, j) {
                pairs.push((i, j));
            }
        }
    }
    let maximal = (1..=n).filter(|&m| (1..=n).all(|i| at(i, i) == at(i, m))).collect();
    let minimal = (1..=n).filter(|&m| (1..=n).all(|i| at(m, m) == at(i, m))).collect();
    Ok(SpecializationOrder { pairs, maximal, minimal })
}

/// Pulls a normal back through a linear map given by `apply`: returns `A^T f`
/// where `A x = apply(x)`. Used to move inequalities between spaces.
pub fn pull_back<F>(f: &IntVec, src_dim: usize, apply: F) -> Result<IntVec>
where
    F: Fn(&IntVec) -> Result<IntVec>,
{
    (0..src_dim).map(|k| f.dot(&apply(&IntVec::unit(src_dim, k))?)).collect::<Result<Vec<_>>>().map(IntVec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVec {
        IntVec::from_i64s(x)
    }

    #[test]
    fn layouts_match_table_headers() {
        assert_eq!(Space::new(SpaceKind::Psym, 3).labels(), ["11", "21", "22", "31", "32", "33"]);
        assert_eq!(Space::new(SpaceKind::Wsym, 3).labels(), ["w1", "21", "w2", "31", "32", "w3"]);
        assert_eq!(Space::new(SpaceKind::Sym, 4).labels(), ["21", "31", "32", "41", "42", "43"]);
        assert_eq!(Space::new(SpaceKind::Quasi, 3).labels(), ["q12", "q21", "q13", "q31", "q23", "q32"]);
        assert_eq!(Space::new(SpaceKind::Qw, 3).labels(), ["q12", "q13", "q23", "w1", "w2", "w3"]);
        for kind in [SpaceKind::Sym, SpaceKind::Psym, SpaceKind::Wsym, SpaceKind::Qw, SpaceKind::Quasi] {
            for n in 2..7 {
                let s = Space::new(kind, n);
                let coords = s.coords();
                assert_eq!(coords.len(), s.dim());
                for (k, c) in coords.into_iter().enumerate() {
                    assert_eq!(s.idx(c), k, "{s} {c:?}");
                }
            }
        }
    }

    #[test]
    fn lift_and_zero_extension() {
        let p0 = IntVec::zeros(6);
        assert_eq!(lift(&p0, 3).unwrap(), IntVec::zeros(10));
        // gamma({1};{2,3}) = (1,1,0,1,0,0)
        let g = v(&[1, 1, 0, 1, 0, 0]);
        let l = lift(&g, 3).unwrap();
        let big = Space::new(SpaceKind::Psym, 4);
        let row0: Vec<i64> = (1..=4)
            .map(|j| {
                let c = if j == 1 { Coord::Diag(1) } else { Coord::Pair(j, 1) };
                l.0[big.idx(c)].to_string().parse().unwrap()
            })
            .collect();
        assert_eq!(row0, [0, 1, 0, 0]);
        let tr = v(&[-1, 1, 1]);
        assert_eq!(zero_extension(&tr, Space::new(SpaceKind::Sym, 3)).unwrap(), v(&[-1, 1, 1, 0, 0, 0]));
        let qw = Space::new(SpaceKind::Qw, 2);
        assert_eq!(zero_extension(&v(&[1, 2, 3]), qw).unwrap(), v(&[1, 0, 0, 2, 3, 0]));
    }

    #[test]
    fn wsym_sym_bijection() {
        // (delta({1}); w=(1,0,0)): point 1 is split from 0, 2 and 3, so the
        // image is the cut {1} | {0,2,3}. With 0,1,2,3 numbered 1,2,3,4 that is
        // delta({2}) = (1,0,1,0,1,0).
        let x = v(&[1, 1, 0, 1, 0, 0]);
        let d = wsym_to_sym(&x, 3).unwrap();
        assert_eq!(d, v(&[1, 0, 1, 0, 1, 0]));
        assert_eq!(sym_to_wsym(&d, 4).unwrap(), x);
        let all_w = v(&[1, 0, 1, 0, 0, 1]);
        assert_eq!(wsym_to_sym(&all_w, 3).unwrap(), v(&[1, 1, 0, 1, 0, 0]));
    }

    #[test]
    fn coord_perm_is_bijective() {
        let s = Space::new(SpaceKind::Quasi, 4);
        let p = s.coord_perm(&[2, 3, 1, 4], true).unwrap();
        let mut sorted = p.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..s.dim()).collect::<Vec<_>>());
        assert!(Space::new(SpaceKind::Qw, 3).coord_perm(&[1, 2, 3], false).is_none());
    }
}
