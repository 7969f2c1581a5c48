//! Point permutations, reversal and the induced `Sym(n+1)` action on
//! partial semimetrics; orbit decomposition and canonical facet normals.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{IntVec, Orientation, Projector};
use crate::generators::point_permutations;
use crate::spaces::{p_inv, p_map, pull_back, sym_to_wsym, wsym_to_sym, Coord, Lattice, Space, SpaceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SymmetryKind {
    SymN,
    SymNxReversal,
    SymNPlus1ViaP,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SymmetryDescriptor {
    pub kind: SymmetryKind,
    pub n: usize,
}

impl SymmetryDescriptor {
    pub fn new(kind: SymmetryKind, n: usize) -> Self {
        SymmetryDescriptor { kind, n }
    }

    pub fn order(&self) -> u128 {
        let fact = |m: usize| (1..=m as u128).product::<u128>();
        match self.kind {
            SymmetryKind::SymN => fact(self.n),
            SymmetryKind::SymNxReversal => 2 * fact(self.n),
            SymmetryKind::SymNPlus1ViaP => fact(self.n + 1),
        }
    }
}

impl fmt::Display for SymmetryDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymmetryKind::SymN => write!(f, "Sym({})", self.n),
            SymmetryKind::SymNxReversal => write!(f, "Z2 x Sym({})", self.n),
            SymmetryKind::SymNPlus1ViaP => write!(f, "Sym({}) via P", self.n + 1),
        }
    }
}

/// One group element. `sigma[i-1]` is the image of point `i`; for `Lift`,
/// `tau[i]` is the image of point `i` in `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Point { sigma: Vec<usize>, reverse: bool },
    Lift { tau: Vec<usize> },
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement::Point { sigma: (1..=n).collect(), reverse: false }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupElement::Point { sigma, reverse } => {
                let mut inv = vec![0; sigma.len()];
                for (i, &s) in sigma.iter().enumerate() {
                    inv[s - 1] = i + 1;
                }
                GroupElement::Point { sigma: inv, reverse: *reverse }
            }
            GroupElement::Lift { tau } => {
                let mut inv = vec![0; tau.len()];
                for (i, &t) in tau.iter().enumerate() {
                    inv[t] = i;
                }
                GroupElement::Lift { tau: inv }
            }
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (perm, offset, prefix, rev) = match self {
            GroupElement::Point { sigma, reverse } => (sigma.iter().map(|s| s - 1).collect::<Vec<_>>(), 1, "", *reverse),
            GroupElement::Lift { tau } => (tau.clone(), 0, "lift:", false),
        };
        let mut out = String::from(prefix);
        if rev {
            out.push_str("rev");
        }
        let mut seen = vec![false; perm.len()];
        for start in 0..perm.len() {
            if seen[start] || perm[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push((k + offset).to_string());
                k = perm[k];
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() || out == "lift:" {
            out.push_str("()");
        }
        f.write_str(&out)
    }
}

fn parse_cycles(text: &str, lo: usize, hi: usize) -> Result<Vec<usize>> {
    let bad = |m: &str| Error::BadGroupElement(format!("{text}: {m}"));
    let mut perm: Vec<usize> = (0..=hi).collect();
    let mut used = vec![false; hi + 1];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let points = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad("bad point")))
            .collect::<Result<Vec<_>>>()?;
        for &p in &points {
            if p < lo || p > hi {
                return Err(bad("point out of range"));
            }
            if used[p] {
                return Err(bad("cycles are not disjoint"));
            }
            used[p] = true;
        }
        for (k, &p) in points.iter().enumerate() {
            perm[p] = points[(k + 1) % points.len()];
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Parses `"(1 2)(3 4)"`, `"rev"`, `"rev(1 2)"` or `"lift:(0 1)"` for `n` points.
pub fn parse_group_element(text: &str, n: usize) -> Result<GroupElement> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("lift:") {
        let perm = parse_cycles(rest, 0, n)?;
        return Ok(GroupElement::Lift { tau: perm });
    }
    let (reverse, rest) = match t.strip_prefix("rev") {
        Some(r) => (true, r),
        None => (false, t),
    };
    let perm = parse_cycles(rest, 1, n)?;
    Ok(GroupElement::Point { sigma: perm[1..].to_vec(), reverse })
}

fn check_element(g: &GroupElement, space: Space) -> Result<()> {
    let bad = || Error::BadGroupElement(format!("{g} on {space}"));
    match g {
        GroupElement::Point { sigma, reverse } => {
            if sigma.len() != space.n || (*reverse && space.kind != SpaceKind::Quasi) {
                return Err(bad());
            }
        }
        GroupElement::Lift { tau } => {
            if tau.len() != space.n + 1 || space.kind != SpaceKind::Psym {
                return Err(bad());
            }
        }
    }
    Ok(())
}

fn permute(v: &IntVec, perm: &[usize]) -> IntVec {
    let mut out = vec![BigInt::default(); v.len()];
    for (k, x) in v.0.iter().enumerate() {
        out[perm[k]] = x.clone();
    }
    IntVec(out)
}

// Relabelling in QW: only `q_ij` with `i < j` are stored, the others follow
// from `q_ji = q_ij + w_i - w_j`.
fn permute_qw(sigma: &[usize], v: &IntVec, space: Space) -> IntVec {
    let n = space.n;
    let at = |c: Coord| v.0[space.idx(c)].clone();
    let mut inv = vec![0; n + 1];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i + 1;
    }
    let q = |i: usize, j: usize| {
        if i < j {
            at(Coord::Arc(i, j))
        } else {
            at(Coord::Arc(j, i)) + at(Coord::Weight(j)) - at(Coord::Weight(i))
        }
    };
    IntVec(
        space
            .coords()
            .into_iter()
            .map(|c| match c {
                Coord::Arc(a, b) => q(inv[a], inv[b]),
                Coord::Weight(a) => at(Coord::Weight(inv[a])),
                _ => unreachable!(),
            })
            .collect(),
    )
}

// `2 P(tau(P^{-1}(p)))`.
fn lift_doubled(tau: &[usize], p: &IntVec, n: usize) -> Result<IntVec> {
    let x = p_inv(p, n)?;
    let d = wsym_to_sym(&x, n)?;
    let big = Space::new(SpaceKind::Sym, n + 1);
    let sigma: Vec<usize> = tau.iter().map(|t| t + 1).collect();
    let perm = big.coord_perm(&sigma, false).expect("SYM relabelling");
    let back = sym_to_wsym(&permute(&d, &perm), n + 1)?;
    p_map(&back, n, Lattice::Doubled)
}

/// Exact image of a point `v` of `space` under `g`.
pub fn act(g: &GroupElement, v: &IntVec, space: Space) -> Result<IntVec> {
    check_element(g, space)?;
    space.check(v)?;
    match g {
        GroupElement::Point { sigma, reverse } => Ok(match space.coord_perm(sigma, *reverse) {
            Some(perm) => permute(v, &perm),
            None => permute_qw(sigma, v, space),
        }),
        GroupElement::Lift { tau } => {
            let doubled = lift_doubled(tau, v, space.n)?;
            let two = BigInt::from(2);
            let mut out = Vec::with_capacity(doubled.len());
            for (k, x) in doubled.0.into_iter().enumerate() {
                if (&x % &two) != BigInt::default() {
                    return Err(Error::NotInDoubledLattice { coord: space.label(k) });
                }
                out.push(x / &two);
            }
            Ok(IntVec(out))
        }
    }
}

/// Image of an inequality normal: `f'` with `<f', g x> = <f, x>` up to a
/// positive factor, primitive.
pub fn act_facet(g: &GroupElement, f: &IntVec, space: Space) -> Result<IntVec> {
    check_element(g, space)?;
    space.check(f)?;
    if let GroupElement::Point { sigma, reverse } = g {
        if let Some(perm) = space.coord_perm(sigma, *reverse) {
            return Ok(permute(f, &perm));
        }
    }
    let inv = g.inverse();
    let raw = pull_back(f, space.dim(), |x| match &inv {
        GroupElement::Lift { tau } => lift_doubled(tau, x, space.n),
        other => act(other, x, space),
    })?;
    raw.gcd_normalize(Orientation::Preserve)
}

/// Whether vectors are acted on as points (rays) or as inequality normals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    Ray,
    Facet,
}

/// A symmetry group listed element by element, bound to a space.
#[derive(Clone, Debug)]
pub struct Group {
    pub descriptor: SymmetryDescriptor,
    pub space: Space,
    elements: Vec<GroupElement>,
    perms: Vec<Option<Vec<usize>>>,
}

impl Group {
    pub fn new(descriptor: SymmetryDescriptor, space: Space) -> Result<Self> {
        let n = descriptor.n;
        let elements: Vec<GroupElement> = match descriptor.kind {
            SymmetryKind::SymN => {
                point_permutations(n).into_iter().map(|sigma| GroupElement::Point { sigma, reverse: false }).collect()
            }
            SymmetryKind::SymNxReversal => [false, true]
                .into_iter()
                .flat_map(|reverse| point_permutations(n).into_iter().map(move |sigma| GroupElement::Point { sigma, reverse }))
                .collect(),
            SymmetryKind::SymNPlus1ViaP => point_permutations(n + 1)
                .into_iter()
                .map(|t| GroupElement::Lift { tau: t.into_iter().map(|x| x - 1).collect() })
                .collect(),
        };
        if space.n != n {
            return Err(Error::BadGroupElement(format!("{descriptor} on {space}")));
        }
        for g in elements.iter().take(2).chain(elements.last()) {
            check_element(g, space)?;
        }
        let perms = elements
            .iter()
            .map(|g| match g {
                GroupElement::Point { sigma, reverse } => space.coord_perm(sigma, *reverse),
                GroupElement::Lift { .. } => None,
            })
            .collect();
        Ok(Group { descriptor, space, elements, perms })
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Image of element `k` on `v`, normalized to a primitive vector when the
    /// action is not a coordinate permutation.
    pub fn image(&self, k: usize, v: &IntVec, action: Action) -> Result<IntVec> {
        if let Some(perm) = &self.perms[k] {
            return Ok(permute(v, perm));
        }
        match action {
            Action::Ray => {
                let raw = match &self.elements[k] {
                    GroupElement::Lift { tau } => lift_doubled(tau, v, self.space.n)?,
                    g => act(g, v, self.space)?,
                };
                if raw.is_zero() {
                    return Ok(raw);
                }
                raw.gcd_normalize(Orientation::Preserve)
            }
            Action::Facet => act_facet(&self.elements[k], v, self.space),
        }
    }

    /// Lexicographically smallest image of `v`.
    pub fn canonical(&self, v: &IntVec, action: Action) -> Result<IntVec> {
        let mut best = v.clone();
        for k in 0..self.order() {
            let w = self.image(k, v, action)?;
            if w < best {
                best = w;
            }
        }
        Ok(best)
    }

    /// Splits `vs` into orbits. Every image of every vector must be in `vs`.
    pub fn orbits(&self, vs: &[IntVec], action: Action) -> Result<OrbitDecomposition> {
        let index: HashMap<&IntVec, usize> = vs.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut assigned = vec![false; vs.len()];
        let mut seeds = Vec::new();
        for i in 0..vs.len() {
            if assigned[i] {
                continue;
            }
            seeds.push(i);
            let mut members = BTreeSet::new();
            for k in 0..self.order() {
                let w = self.image(k, &vs[i], action)?;
                match index.get(&w) {
                    Some(&j) => {
                        members.insert(j);
                    }
                    None => return Err(Error::NotClosed(format!("{w} (image of {})", vs[i]))),
                }
            }
            for &j in &members {
                assigned[j] = true;
            }
        }
        // Each orbit is re-expanded from its seed to collect members.
        let mut orbits: Vec<Orbit> = crate::polyhedra::map_all(&seeds, |&i| {
            let mut members = BTreeSet::new();
            for k in 0..self.order() {
                let w = self.image(k, &vs[i], action).expect("checked above");
                members.insert(index[&w]);
            }
            let members: Vec<usize> = members.into_iter().collect();
            let representative = members.iter().map(|&j| &vs[j]).min().unwrap().clone();
            Orbit { representative, size: members.len(), members }
        });
        orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
        Ok(OrbitDecomposition { group_order: self.order(), orbits })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: IntVec,
    pub size: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub group_order: usize,
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn total(&self) -> usize {
        self.orbits.iter().map(|o| o.size).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits.iter().map(|o| o.size).collect();
        s.sort_unstable();
        s
    }

    /// Orbit index of every member.
    pub fn orbit_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.total()];
        for (o, orbit) in self.orbits.iter().enumerate() {
            for &m in &orbit.members {
                out[m] = o;
            }
        }
        out
    }

    pub fn lagrange_holds(&self) -> bool {
        self.orbits.iter().all(|o| self.group_order.is_multiple_of(o.size))
    }
}

/// Orbits of rays of a cone in `space`.
pub fn orbits(vs: &[IntVec], sym: SymmetryDescriptor, space: Space) -> Result<OrbitDecomposition> {
    Group::new(sym, space)?.orbits(vs, Action::Ray)
}

/// Orbits of facet normals of a cone in `space`.
pub fn facet_orbits(vs: &[IntVec], sym: SymmetryDescriptor, space: Space) -> Result<OrbitDecomposition> {
    Group::new(sym, space)?.orbits(vs, Action::Facet)
}

/// The representative `f + E` orthogonal to the span of `equalities`,
/// primitive. Zero if `f` lies in that span.
pub fn canonical_facet_rep(f: &IntVec, equalities: &[IntVec]) -> IntVec {
    Projector::new(equalities).project(f).unwrap_or_else(|| IntVec::zeros(f.len()))
}

/// `q -> q^T` on a quasi space.
pub fn transpose(q: &IntVec, space: Space) -> Result<IntVec> {
    let rev = GroupElement::Point { sigma: (1..=space.n).collect(), reverse: true };
    act(&rev, q, space)
}

/// Whether the canonical representative of `f` is symmetric.
pub fn is_reversal_stable(f: &IntVec, equalities: &[IntVec], space: Space) -> Result<bool> {
    if space.kind != SpaceKind::Quasi {
        return Err(Error::SpaceMismatch { expected: "QUASI".into(), got: space.kind.tag().into() });
    }
    let g = canonical_facet_rep(f, equalities);
    Ok(transpose(&g, space)? == g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cut, cuts, ocut, ocuts};
    use crate::spaces::Coord;

    fn v(x: &[i64]) -> IntVec {
        IntVec::from_i64s(x)
    }

    #[test]
    fn orders() {
        assert_eq!(SymmetryDescriptor::new(SymmetryKind::SymN, 4).order(), 24);
        assert_eq!(SymmetryDescriptor::new(SymmetryKind::SymNxReversal, 4).order(), 48);
        assert_eq!(SymmetryDescriptor::new(SymmetryKind::SymNPlus1ViaP, 4).order(), 120);
        let s = Space::new(SpaceKind::Quasi, 4);
        let g = Group::new(SymmetryDescriptor::new(SymmetryKind::SymNxReversal, 4), s).unwrap();
        assert_eq!(g.order(), 48);
        assert!(Group::new(SymmetryDescriptor::new(SymmetryKind::SymNxReversal, 4), Space::new(SpaceKind::Sym, 4)).is_err());
    }

    #[test]
    fn parse_and_display() {
        let g = parse_group_element("(1 2)(3 4)", 4).unwrap();
        assert_eq!(g, GroupElement::Point { sigma: vec![2, 1, 4, 3], reverse: false });
        assert_eq!(g.to_string(), "(1 2)(3 4)");
        assert_eq!(parse_group_element("rev", 3).unwrap().to_string(), "rev");
        let l = parse_group_element("lift:(0 1)", 3).unwrap();
        assert_eq!(l, GroupElement::Lift { tau: vec![1, 0, 2, 3] });
        assert_eq!(l.to_string(), "lift:(0 1)");
        assert!(parse_group_element("(1 5)", 4).is_err());
        assert!(parse_group_element("(1 2)(2 3)", 4).is_err());
        let c = parse_group_element("(1 2 3)", 3).unwrap();
        assert_eq!(c.inverse(), parse_group_element("(3 2 1)", 3).unwrap());
    }

    #[test]
    fn transposition_moves_cut() {
        let s = Space::new(SpaceKind::Sym, 3);
        let g = parse_group_element("(1 2)", 3).unwrap();
        assert_eq!(act(&g, &cut(3, &[1]), s).unwrap(), cut(3, &[2]));
    }

    #[test]
    fn reversal_complements_ocut() {
        let s = Space::new(SpaceKind::Quasi, 4);
        for (set, q) in ocuts(4) {
            let comp: Vec<usize> = (1..=4).filter(|i| !set.contains(i)).collect();
            assert_eq!(transpose(&q, s).unwrap(), ocut(4, &comp));
        }
    }

    #[test]
    fn lift_matches_relabelling_on_n_plus_1_points() {
        // Acting on P(d|_{weights}) is the same as permuting d on {0..n}.
        let n = 3;
        let big = Space::new(SpaceKind::Sym, n + 1);
        let ps = Space::new(SpaceKind::Psym, n);
        let d = v(&[2, 4, 6, 8, 10, 12]);
        let p = p_map(&sym_to_wsym(&d, n + 1).unwrap(), n, Lattice::Strict).unwrap();
        for g in Group::new(SymmetryDescriptor::new(SymmetryKind::SymNPlus1ViaP, n), ps).unwrap().elements() {
            let GroupElement::Lift { tau } = g else { unreachable!() };
            let sigma: Vec<usize> = tau.iter().map(|t| t + 1).collect();
            let dd = permute(&d, &big.coord_perm(&sigma, false).unwrap());
            let expect = p_map(&sym_to_wsym(&dd, n + 1).unwrap(), n, Lattice::Strict).unwrap();
            assert_eq!(act(g, &p, ps).unwrap(), expect);
        }
    }

    #[test]
    fn lift_facet_action_is_contragredient() {
        let n = 3;
        let ps = Space::new(SpaceKind::Psym, n);
        let f = v(&[1, -1, 2, 0, 3, -2]);
        let xs = [v(&[4, 2, 6, 8, 2, 1]), v(&[1, 0, 0, 0, 0, 0]), v(&[0, 3, 1, 1, 7, 2])];
        for g in Group::new(SymmetryDescriptor::new(SymmetryKind::SymNPlus1ViaP, n), ps).unwrap().elements() {
            let GroupElement::Lift { tau } = g else { unreachable!() };
            let fx = act_facet(g, &f, ps).unwrap();
            // <f', g x> = c <f, x> with one positive c for all x.
            let pairs: Vec<(BigInt, BigInt)> =
                xs.iter().map(|x| (fx.dot(&lift_doubled(tau, x, n).unwrap()).unwrap(), f.dot(x).unwrap())).collect();
            let (a0, b0) = &pairs[0];
            assert!(a0 * b0 > BigInt::from(0));
            for (a, b) in &pairs {
                assert_eq!(a * b0, b * a0);
            }
        }
    }

    #[test]
    fn qw_relabelling_is_consistent_with_quasi() {
        let s = Space::new(SpaceKind::Qw, 3);
        let x = v(&[1, 2, 3, 5, 0, 4]);
        let q = crate::spaces::qw_to_quasi(&x, 3).unwrap();
        let qs = Space::new(SpaceKind::Quasi, 3);
        for sigma in point_permutations(3) {
            let g = GroupElement::Point { sigma, reverse: false };
            let y = act(&g, &x, s).unwrap();
            assert_eq!(crate::spaces::qw_to_quasi(&y, 3).unwrap(), act(&g, &q, qs).unwrap());
        }
    }

    #[test]
    fn cut_orbits() {
        let s = Space::new(SpaceKind::Sym, 5);
        let vs: Vec<IntVec> = cuts(5).into_iter().map(|(_, c)| c).collect();
        let o = orbits(&vs, SymmetryDescriptor::new(SymmetryKind::SymN, 5), s).unwrap();
        assert_eq!(o.sizes(), vec![5, 10]);
        assert!(o.lagrange_holds());
        for orbit in &o.orbits {
            assert!(orbit.members.iter().all(|&m| vs[m] >= orbit.representative));
        }
    }

    #[test]
    fn ocut_orbits_under_both_groups() {
        let s = Space::new(SpaceKind::Quasi, 4);
        let vs: Vec<IntVec> = ocuts(4).into_iter().map(|(_, c)| c).collect();
        let plain = orbits(&vs, SymmetryDescriptor::new(SymmetryKind::SymN, 4), s).unwrap();
        let rev = orbits(&vs, SymmetryDescriptor::new(SymmetryKind::SymNxReversal, 4), s).unwrap();
        assert_eq!(vs.len(), 14);
        assert_eq!(plain.len(), 3);
        assert_eq!(rev.len(), 2);
    }

    #[test]
    fn not_closed_is_reported() {
        let s = Space::new(SpaceKind::Sym, 3);
        let r = orbits(&[cut(3, &[1])], SymmetryDescriptor::new(SymmetryKind::SymN, 3), s);
        assert!(matches!(r, Err(Error::NotClosed(_))));
    }

    fn wqmet3_equality() -> (Space, IntVec) {
        let s = Space::new(SpaceKind::Quasi, 3);
        let mut e = IntVec::zeros(s.dim());
        for (a, b, sign) in [(1, 2, 1), (2, 3, 1), (3, 1, 1), (2, 1, -1), (3, 2, -1), (1, 3, -1)] {
            e.0[s.idx(Coord::Arc(a, b))] = BigInt::from(sign);
        }
        (s, e)
    }

    #[test]
    fn reversal_stability_in_wqmet3() {
        let (s, e) = wqmet3_equality();
        let mut otr = IntVec::zeros(s.dim());
        otr.0[s.idx(Coord::Arc(1, 3))] = 1.into();
        otr.0[s.idx(Coord::Arc(3, 2))] = 1.into();
        otr.0[s.idx(Coord::Arc(1, 2))] = (-1).into();
        let l = IntVec::unit(s.dim(), s.idx(Coord::Arc(1, 2)));
        assert!(is_reversal_stable(&otr, std::slice::from_ref(&e), s).unwrap());
        assert!(!is_reversal_stable(&l, std::slice::from_ref(&e), s).unwrap());
        assert!(is_reversal_stable(&e, std::slice::from_ref(&e), s).unwrap());
        assert_eq!(canonical_facet_rep(&l, &[]), l);
        assert!(is_reversal_stable(&l, &[], Space::new(SpaceKind::Sym, 3)).is_err());
    }
}
