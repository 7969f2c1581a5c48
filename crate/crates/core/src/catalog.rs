//! Named cones: their space, defining inequalities (with labels) and
//! equalities, or their generators.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{IntVec, Orientation};
use crate::generators::{basis_weight, cuts, ocuts, omulticut, ordered_set_partitions, with_weights};
use crate::hyper::{b_family, hyp_vector, symmetric_hyp_quasi, BCoeffs};
use crate::polyhedra::{dd_facets, dd_facets_with, is_extreme_ray, DdOptions, Description};
use crate::spaces::{p_inv, pull_back, symmetrize, Coord, Space, SpaceKind};
use crate::symmetry::{SymmetryDescriptor, SymmetryKind};
use crate::zeroone;

/// Bound on `|b_i|` for the hypermetric-type families.
pub const B_BOUND: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Base {
    Met,
    Cut,
    Hyp,
    WPmet,
    Pmet,
    SPmet,
    Phyp,
    Wmet,
    DWmet,
    SWmet,
    Wcut,
    Whyp,
    Qmet,
    Qhyp,
    Wqmet,
    WWqmet,
    SWqmet,
    Ocut,
    Omcut,
    Owhyp,
}

impl Base {
    pub const ALL: [Base; 20] = [
        Base::Met,
        Base::Cut,
        Base::Hyp,
        Base::WPmet,
        Base::Pmet,
        Base::SPmet,
        Base::Phyp,
        Base::Wmet,
        Base::DWmet,
        Base::SWmet,
        Base::Wcut,
        Base::Whyp,
        Base::Qmet,
        Base::Qhyp,
        Base::Wqmet,
        Base::WWqmet,
        Base::SWqmet,
        Base::Ocut,
        Base::Omcut,
        Base::Owhyp,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Base::Met => "MET",
            Base::Cut => "CUT",
            Base::Hyp => "HYP",
            Base::WPmet => "wPMET",
            Base::Pmet => "PMET",
            Base::SPmet => "sPMET",
            Base::Phyp => "PHYP",
            Base::Wmet => "WMET",
            Base::DWmet => "dWMET",
            Base::SWmet => "sWMET",
            Base::Wcut => "WCUT",
            Base::Whyp => "WHYP",
            Base::Qmet => "QMET",
            Base::Qhyp => "QHYP",
            Base::Wqmet => "WQMET",
            Base::WWqmet => "wWQMET",
            Base::SWqmet => "sWQMET",
            Base::Ocut => "OCUT",
            Base::Omcut => "OMCUT",
            Base::Owhyp => "OWHYP",
        }
    }

    pub fn space_kind(self) -> SpaceKind {
        match self {
            Base::Met | Base::Cut | Base::Hyp => SpaceKind::Sym,
            Base::WPmet | Base::Pmet | Base::SPmet | Base::Phyp => SpaceKind::Psym,
            Base::Wmet | Base::DWmet | Base::SWmet | Base::Wcut | Base::Whyp => SpaceKind::Wsym,
            Base::WWqmet | Base::SWqmet => SpaceKind::Qw,
            Base::Qmet | Base::Qhyp | Base::Wqmet | Base::Ocut | Base::Omcut | Base::Owhyp => SpaceKind::Quasi,
        }
    }

    pub fn is_generated(self) -> bool {
        matches!(self, Base::Cut | Base::Wcut | Base::Ocut | Base::Omcut)
    }

    pub fn describe(self) -> &'static str {
        match self {
            Base::Met => "semimetrics",
            Base::Cut => "cut cone",
            Base::Hyp => "hypermetrics",
            Base::WPmet => "weak partial semimetrics",
            Base::Pmet => "partial semimetrics",
            Base::SPmet => "strong partial semimetrics",
            Base::Phyp => "partial hypermetrics",
            Base::Wmet => "weighted semimetrics",
            Base::DWmet => "down-weighted semimetrics",
            Base::SWmet => "strongly weighted semimetrics",
            Base::Wcut => "weighted cut cone",
            Base::Whyp => "weighted hypermetrics",
            Base::Qmet => "quasi-semimetrics",
            Base::Qhyp => "quasi-hypermetrics",
            Base::Wqmet => "weightable quasi-semimetrics",
            Base::WWqmet => "weakly weighted quasi-semimetrics",
            Base::SWqmet => "strongly weighted quasi-semimetrics",
            Base::Ocut => "oriented cut cone",
            Base::Omcut => "oriented multicut cone",
            Base::Owhyp => "oriented weightable hypermetrics",
        }
    }
}

/// A cone identifier: a base cone, its 0,1-subcone, or the symmetrized
/// 0,1-subcone of WQMET.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConeId {
    Base(Base),
    ZeroOne(Base),
    ZeroOneWqmetSym,
}

impl ConeId {
    pub fn parse(text: &str) -> Result<ConeId> {
        let t = text.trim();
        let upper = t.to_ascii_uppercase();
        if upper == "01-WQMET-SYM" || upper == "0,1-WQMET-SYM" {
            return Ok(ConeId::ZeroOneWqmetSym);
        }
        let (zero_one, rest) = match upper.strip_prefix("01-").or_else(|| upper.strip_prefix("0,1-")) {
            Some(r) => (true, r.to_string()),
            None => (false, upper.clone()),
        };
        let base = Base::ALL
            .into_iter()
            .find(|b| b.id().to_ascii_uppercase() == rest)
            .ok_or_else(|| Error::UnknownCone(t.to_string()))?;
        Ok(if zero_one { ConeId::ZeroOne(base) } else { ConeId::Base(base) })
    }

    pub fn base(self) -> Base {
        match self {
            ConeId::Base(b) | ConeId::ZeroOne(b) => b,
            ConeId::ZeroOneWqmetSym => Base::Wqmet,
        }
    }

    pub fn space_kind(self) -> SpaceKind {
        match self {
            ConeId::ZeroOneWqmetSym => SpaceKind::Sym,
            other => other.base().space_kind(),
        }
    }

    /// Every identifier the catalog accepts.
    pub fn all() -> Vec<ConeId> {
        let mut out: Vec<ConeId> = Base::ALL.into_iter().map(ConeId::Base).collect();
        out.extend(Base::ALL.into_iter().filter(|b| !b.is_generated()).map(ConeId::ZeroOne));
        out.push(ConeId::ZeroOneWqmetSym);
        out
    }
}

impl fmt::Display for ConeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeId::Base(b) => f.write_str(b.id()),
            ConeId::ZeroOne(b) => write!(f, "01-{}", b.id()),
            ConeId::ZeroOneWqmetSym => f.write_str("01-WQMET-SYM"),
        }
    }
}

/// A named cone on `n` points.
#[derive(Clone, Debug)]
pub struct ConeModel {
    pub id: ConeId,
    pub n: usize,
    pub space: Space,
    /// Inequalities `a . x >= 0`, possibly redundant.
    pub inequalities: Vec<IntVec>,
    /// One label per inequality, e.g. `Tr_{12,3}`.
    pub labels: Vec<String>,
    pub equalities: Vec<IntVec>,
    pub generators: Option<Vec<IntVec>>,
    pub symmetry: SymmetryDescriptor,
}

impl ConeModel {
    pub fn name(&self) -> String {
        format!("{}_{}", self.id, self.n)
    }

    /// Ambient dimension minus the rank of the equalities (for generated
    /// cones, the rank of the generators).
    pub fn dim(&self) -> usize {
        match &self.generators {
            Some(g) => crate::exactla::rank(g),
            None => self.space.dim() - crate::exactla::rank(&self.equalities),
        }
    }

    /// Full double description.
    pub fn description(&self, opts: &DdOptions) -> Result<Description> {
        match &self.generators {
            Some(g) => Description::from_generators(g, opts),
            None => Description::from_inequalities(&self.inequalities, &self.equalities, opts),
        }
    }

    /// Label of the inequality whose canonical form is `f`, if any.
    pub fn label_of(&self, f: &IntVec, d: &Description) -> Option<String> {
        self.inequalities.iter().position(|a| d.canonical_facet(a).as_ref() == Some(f)).map(|k| self.labels[k].clone())
    }

    /// Exact membership. Generated cones are tested against their facets.
    pub fn contains(&self, v: &IntVec) -> Result<bool> {
        self.space.check(v)?;
        let (ineqs, eqs) = match &self.generators {
            Some(g) => {
                let hull = dd_facets(g, &[])?;
                (hull.facets, hull.equalities)
            }
            None => (self.inequalities.clone(), self.equalities.clone()),
        };
        for e in &eqs {
            if !e.dot(v)?.is_zero() {
                return Ok(false);
            }
        }
        for a in &ineqs {
            if a.dot(v)? < BigInt::default() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Exact membership, see [`ConeModel::contains`].
pub fn membership(c: &ConeModel, v: &IntVec) -> Result<bool> {
    c.contains(v)
}

// ------------------------------------------------------------- builders

struct System {
    space: Space,
    rows: Vec<IntVec>,
    labels: Vec<String>,
    seen: BTreeSet<IntVec>,
}

impl System {
    fn new(space: Space) -> Self {
        System { space, rows: Vec::new(), labels: Vec::new(), seen: BTreeSet::new() }
    }

    /// Adds `sum c * x[coord] >= 0`, skipping zero and repeated rows.
    fn push(&mut self, label: String, terms: &[(Coord, i64)]) {
        let mut v = IntVec::zeros(self.space.dim());
        for &(c, k) in terms {
            add_term(&mut v, self.space, c, k);
        }
        self.push_vec(label, v);
    }

    fn push_vec(&mut self, label: String, v: IntVec) {
        let Ok(p) = v.gcd_normalize(Orientation::Preserve) else { return };
        if self.seen.insert(p.clone()) {
            self.rows.push(p);
            self.labels.push(label);
        }
    }
}

// In QW only `q_ij` with `i < j` are coordinates; `q_ji = q_ij + w_i - w_j`.
fn add_term(v: &mut IntVec, space: Space, c: Coord, k: i64) {
    let k = BigInt::from(k);
    match (space.kind, c) {
        (SpaceKind::Qw, Coord::Arc(i, j)) if i > j => {
            v.0[space.idx(Coord::Arc(j, i))] += &k;
            v.0[space.idx(Coord::Weight(j))] += &k;
            v.0[space.idx(Coord::Weight(i))] -= &k;
        }
        _ => v.0[space.idx(c)] += &k,
    }
}

fn pts(n: usize) -> std::ops::RangeInclusive<usize> {
    1..=n
}

fn lbl(prefix: &str, idx: &[usize]) -> String {
    let s: String = idx.iter().map(|i| i.to_string()).collect();
    format!("{prefix}_{s}")
}

fn tr_label(prefix: &str, i: usize, j: usize, k: usize) -> String {
    format!("{prefix}_{{{i}{j},{k}}}")
}

/// Unordered `{i, j}` and a third point `k`.
fn triangles(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in pts(n) {
        for j in i + 1..=n {
            for k in pts(n) {
                if k != i && k != j {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// Ordered `(i, j)` and a third point `k`.
fn oriented_triangles(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in pts(n) {
        for j in pts(n) {
            for k in pts(n) {
                if i != j && k != i && k != j {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in pts(n) {
        for j in pts(n) {
            if i != j {
                out.push((i, j));
            }
        }
    }
    out
}

fn met_system(sys: &mut System, n: usize) {
    for (i, j, k) in triangles(n) {
        sys.push(tr_label("Tr", i, j, k), &[(Coord::Pair(i, k), 1), (Coord::Pair(j, k), 1), (Coord::Pair(i, j), -1)]);
    }
}

fn wpmet_system(sys: &mut System, n: usize) {
    for i in pts(n) {
        sys.push(lbl("L", &[i, i]), &[(Coord::Diag(i), 1)]);
    }
    for (i, j, k) in triangles(n) {
        sys.push(
            tr_label("Tr", i, j, k),
            &[(Coord::Pair(i, k), 1), (Coord::Pair(k, j), 1), (Coord::Pair(i, j), -1), (Coord::Diag(k), -1)],
        );
    }
}

fn m_system(sys: &mut System, n: usize) {
    for (i, j) in ordered_pairs(n) {
        sys.push(lbl("M", &[i, j]), &[(Coord::Pair(i, j), 1), (Coord::Diag(i), -1)]);
    }
}

fn wmet_system(sys: &mut System, n: usize) {
    for i in pts(n) {
        sys.push(lbl("L", &[i]), &[(Coord::Weight(i), 1)]);
    }
    met_system(sys, n);
}

fn qmet_system(sys: &mut System, n: usize) {
    for (i, j) in ordered_pairs(n) {
        sys.push(lbl("L", &[i, j]), &[(Coord::Arc(i, j), 1)]);
    }
    otr_system(sys, n);
}

fn otr_system(sys: &mut System, n: usize) {
    for (i, j, k) in oriented_triangles(n) {
        sys.push(tr_label("OTr", i, j, k), &[(Coord::Arc(i, k), 1), (Coord::Arc(k, j), 1), (Coord::Arc(i, j), -1)]);
    }
}

/// `q_ij + q_jn + q_ni = q_ji + q_nj + q_in` for `i < j < n`.
pub fn wqmet_equalities(n: usize) -> Vec<IntVec> {
    let space = Space::new(SpaceKind::Quasi, n);
    let mut out = Vec::new();
    for i in pts(n) {
        for j in i + 1..n {
            let mut v = IntVec::zeros(space.dim());
            for (a, b, s) in [(i, j, 1), (j, n, 1), (n, i, 1), (j, i, -1), (n, j, -1), (i, n, -1)] {
                add_term(&mut v, space, Coord::Arc(a, b), s);
            }
            out.push(v);
        }
    }
    out
}

fn b_label(prefix: &str, b: &BCoeffs) -> String {
    format!("{prefix}_({b})")
}

fn hyp_family(n: usize, sigmas: &[i64]) -> Vec<BCoeffs> {
    b_family(n, B_BOUND, sigmas)
}

fn cut_facets(n: usize) -> Result<Vec<IntVec>> {
    let gens: Vec<IntVec> = cuts(n).into_iter().map(|(_, c)| c).collect();
    Ok(dd_facets(&gens, &[])?.facets)
}

/// `-q_ab + q_ac + q_ad + q_cb + q_bd - q_cd >= 0` on four points: the
/// oriented negative type inequality used for OWHYP.
pub fn oneg_terms(a: usize, b: usize, c: usize, d: usize) -> [(Coord, i64); 6] {
    [
        (Coord::Arc(a, b), -1),
        (Coord::Arc(a, c), 1),
        (Coord::Arc(a, d), 1),
        (Coord::Arc(c, b), 1),
        (Coord::Arc(b, d), 1),
        (Coord::Arc(c, d), -1),
    ]
}

fn check_n(id: ConeId, n: usize) -> Result<()> {
    let unsupported = |reason: &str| Error::UnsupportedSize { name: id.to_string(), n, reason: reason.into() };
    if !(3..=7).contains(&n) {
        return Err(unsupported("point count must be in 3..=7"));
    }
    if n > 6 && matches!(id.base(), Base::Hyp | Base::Qhyp) {
        return Err(unsupported("HYP_7 is not built from cuts"));
    }
    Ok(())
}

fn symmetry_for(id: ConeId, n: usize) -> SymmetryDescriptor {
    let kind = match id.base() {
        Base::SPmet if id != ConeId::ZeroOneWqmetSym => SymmetryKind::SymNPlus1ViaP,
        _ => SymmetryKind::SymN,
    };
    SymmetryDescriptor::new(kind, n)
}

/// Builds a named cone. `name` is case-insensitive, with optional `01-`.
pub fn build(name: &str, n: usize) -> Result<ConeModel> {
    build_id(ConeId::parse(name)?, n)
}

pub fn build_id(id: ConeId, n: usize) -> Result<ConeModel> {
    check_n(id, n)?;
    let space = Space::new(id.space_kind(), n);
    let symmetry = symmetry_for(id, n);
    let model = |sys: System, equalities: Vec<IntVec>, generators: Option<Vec<IntVec>>| ConeModel {
        id,
        n,
        space,
        inequalities: sys.rows,
        labels: sys.labels,
        equalities,
        generators,
        symmetry,
    };
    let base = match id {
        ConeId::Base(b) => b,
        ConeId::ZeroOne(b) => {
            let parent = build_id(ConeId::Base(b), n)?;
            return zero_one_subcone(&parent);
        }
        ConeId::ZeroOneWqmetSym => {
            let sub = build_id(ConeId::ZeroOne(Base::Wqmet), n)?;
            let mut gens = BTreeSet::new();
            for g in sub.generators.as_ref().unwrap() {
                gens.insert(symmetrize(g, n)?.gcd_normalize(Orientation::Preserve)?);
            }
            return Ok(model(System::new(space), Vec::new(), Some(gens.into_iter().collect())));
        }
    };
    let mut sys = System::new(space);
    let mut equalities = Vec::new();
    let mut generators = None;
    match base {
        Base::Met => met_system(&mut sys, n),
        Base::Cut => generators = Some(cuts(n).into_iter().map(|(_, c)| c).collect()),
        Base::Hyp => {
            for (k, f) in cut_facets(n)?.into_iter().enumerate() {
                sys.push_vec(format!("Hyp_{k}"), f);
            }
        }
        Base::WPmet => wpmet_system(&mut sys, n),
        Base::Pmet => {
            wpmet_system(&mut sys, n);
            m_system(&mut sys, n);
        }
        Base::SPmet => {
            m_system(&mut sys, n);
            for i in pts(n) {
                for j in i + 1..=n {
                    sys.push(lbl("N", &[i, j]), &[(Coord::Diag(i), 1), (Coord::Diag(j), 1), (Coord::Pair(i, j), -1)]);
                }
            }
            for (i, j, k) in triangles(n) {
                sys.push(
                    tr_label("Tr", i, j, k),
                    &[(Coord::Pair(i, k), 1), (Coord::Pair(k, j), 1), (Coord::Pair(i, j), -1), (Coord::Diag(k), -1)],
                );
            }
        }
        Base::Phyp => {
            wpmet_system(&mut sys, n);
            let dim = space.dim();
            for b in hyp_family(n, &[0, 1]) {
                let f = hyp_vector(&b, false);
                let g = pull_back(&f, dim, |x| p_inv(x, n))?;
                sys.push_vec(b_label("Hyp", &b), g);
            }
        }
        Base::Wmet => wmet_system(&mut sys, n),
        Base::DWmet | Base::SWmet => {
            wmet_system(&mut sys, n);
            for (i, j) in ordered_pairs(n) {
                sys.push(lbl("M'", &[i, j]), &[(Coord::Pair(i, j), 1), (Coord::Weight(i), -1), (Coord::Weight(j), 1)]);
            }
            if base == Base::SWmet {
                for i in pts(n) {
                    for j in i + 1..=n {
                        sys.push(lbl("N'", &[i, j]), &[(Coord::Weight(i), 1), (Coord::Weight(j), 1), (Coord::Pair(i, j), -1)]);
                    }
                }
            }
        }
        Base::Wcut => {
            let mut g: Vec<IntVec> = pts(n).map(|j| basis_weight(j, n)).collect::<Result<_>>()?;
            for (_, c) in cuts(n) {
                g.push(with_weights(&c, &vec![0; n])?);
            }
            generators = Some(g);
        }
        Base::Whyp => {
            wmet_system(&mut sys, n);
            for b in hyp_family(n, &[0, 1]) {
                sys.push_vec(b_label("Hyp", &b), hyp_vector(&b, false));
                sys.push_vec(b_label("Hyp'", &b), hyp_vector(&b, true));
            }
        }
        Base::Qmet => qmet_system(&mut sys, n),
        Base::Qhyp => {
            qmet_system(&mut sys, n);
            let sym = Space::new(SpaceKind::Sym, n);
            for (k, f) in cut_facets(n)?.into_iter().enumerate() {
                let mut v = IntVec::zeros(space.dim());
                for c in sym.coords() {
                    let Coord::Pair(i, j) = c else { unreachable!() };
                    let x = &f.0[sym.idx(c)];
                    v.0[space.idx(Coord::Arc(i, j))] += x;
                    v.0[space.idx(Coord::Arc(j, i))] += x;
                }
                sys.push_vec(format!("Hyp_{k}"), v);
            }
        }
        Base::Wqmet => {
            qmet_system(&mut sys, n);
            equalities = wqmet_equalities(n);
        }
        Base::WWqmet | Base::SWqmet => {
            for i in pts(n) {
                sys.push(lbl("L", &[i]), &[(Coord::Weight(i), 1)]);
            }
            for i in pts(n) {
                for j in pts(n) {
                    if i == j {
                        continue;
                    }
                    if base == Base::WWqmet && i < j {
                        sys.push(lbl("L+", &[i, j]), &[(Coord::Arc(i, j), 1), (Coord::Arc(j, i), 1)]);
                    }
                    if base == Base::SWqmet {
                        sys.push(lbl("L", &[i, j]), &[(Coord::Arc(i, j), 1)]);
                        sys.push(lbl("W", &[i, j]), &[(Coord::Weight(j), 1), (Coord::Arc(i, j), -1)]);
                    }
                }
            }
            otr_system(&mut sys, n);
        }
        Base::Ocut => generators = Some(ocuts(n).into_iter().map(|(_, c)| c).collect()),
        Base::Omcut => {
            let set: BTreeSet<IntVec> = ordered_set_partitions(n).iter().map(omulticut).filter(|v| !v.is_zero()).collect();
            generators = Some(set.into_iter().collect());
        }
        Base::Owhyp => {
            qmet_system(&mut sys, n);
            equalities = wqmet_equalities(n);
            for a in pts(n) {
                for b in pts(n) {
                    for c in pts(n) {
                        for d in pts(n) {
                            if BTreeSet::from([a, b, c, d]).len() == 4 {
                                sys.push(lbl("ONeg", &[a, b, c, d]), &oneg_terms(a, b, c, d));
                            }
                        }
                    }
                }
            }
            for b in hyp_family(n, &[1]) {
                sys.push_vec(b_label("OHyp", &b), symmetric_hyp_quasi(&b));
            }
        }
    }
    Ok(model(sys, equalities, generators))
}

/// The cone generated by the extreme rays of `c` that carry a nonzero 0,1
/// point. The 0,1 points come from [`zeroone::points`]; extremality is the
/// rank test against `c`'s inequalities.
pub fn zero_one_subcone(c: &ConeModel) -> Result<ConeModel> {
    let all = zeroone::points(c)?;
    let rays = extreme_among(c, &all)?;
    Ok(ConeModel {
        id: match c.id {
            ConeId::Base(b) => ConeId::ZeroOne(b),
            other => other,
        },
        n: c.n,
        space: c.space,
        inequalities: Vec::new(),
        labels: Vec::new(),
        equalities: Vec::new(),
        generators: Some(rays),
        symmetry: c.symmetry,
    })
}

/// Those nonzero points of `pts` spanning an extreme ray of `c`.
pub fn extreme_among(c: &ConeModel, pts: &[IntVec]) -> Result<Vec<IntVec>> {
    let (ineqs, eqs) = match &c.generators {
        Some(g) => {
            let hull = dd_facets_with(g, &[], &DdOptions::default())?;
            (hull.facets, hull.equalities)
        }
        None => (c.inequalities.clone(), c.equalities.clone()),
    };
    let keep = crate::polyhedra::map_all(pts, |p| !p.is_zero() && is_extreme_ray(p, &ineqs, &eqs).unwrap_or(false));
    Ok(pts.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p.clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cut, ocut};
    use crate::polyhedra::dd_rays;

    fn rays(c: &ConeModel) -> Vec<IntVec> {
        dd_rays(&c.inequalities, &c.equalities).unwrap()
    }

    #[test]
    fn parse_ids() {
        assert_eq!(ConeId::parse("pmet").unwrap(), ConeId::Base(Base::Pmet));
        assert_eq!(ConeId::parse("WPMET").unwrap(), ConeId::Base(Base::WPmet));
        assert_eq!(ConeId::parse("0,1-dWMET").unwrap(), ConeId::ZeroOne(Base::DWmet));
        assert_eq!(ConeId::parse("01-wqmet-sym").unwrap(), ConeId::ZeroOneWqmetSym);
        assert!(matches!(ConeId::parse("FOO"), Err(Error::UnknownCone(_))));
        for id in ConeId::all() {
            assert_eq!(ConeId::parse(&id.to_string()).unwrap(), id);
        }
    }

    #[test]
    fn sizes() {
        assert!(matches!(build("MET", 2), Err(Error::UnsupportedSize { .. })));
        assert!(matches!(build("HYP", 7), Err(Error::UnsupportedSize { .. })));
        assert_eq!(build("MET", 3).unwrap().inequalities.len(), 3);
        assert_eq!(rays(&build("MET", 3).unwrap()).len(), 3);
        assert_eq!(build("PMET", 4).unwrap().inequalities.len(), 28);
        assert_eq!(build("sPMET", 5).unwrap().inequalities.len(), 60);
        assert_eq!(build("QMET", 4).unwrap().inequalities.len(), 12 + 24);
        assert_eq!(wqmet_equalities(5).len(), 6);
    }

    #[test]
    fn membership_examples() {
        let w = build("wPMET", 4).unwrap();
        let s = w.space;
        let mut p = IntVec::zeros(s.dim());
        for c in s.coords() {
            let (i, j) = match c {
                Coord::Pair(i, j) => (i, j),
                Coord::Diag(i) => (i, i),
                _ => unreachable!(),
            };
            p.0[s.idx(c)] = BigInt::from(i + j);
        }
        assert!(w.contains(&p).unwrap());
        assert!(build("OCUT", 3).unwrap().contains(&ocut(3, &[1])).unwrap());
        let q = build("QMET", 3).unwrap();
        assert!(q.contains(&ocut(3, &[1])).unwrap());
        let mut bad = IntVec::zeros(6);
        bad.0[q.space.idx(Coord::Arc(1, 2))] = 1.into();
        assert!(!q.contains(&bad).unwrap());
        assert!(!build("MET", 3).unwrap().contains(&cut(3, &[1]).neg()).unwrap());
        assert!(build("MET", 3).unwrap().contains(&IntVec::zeros(2)).is_err());
    }

    #[test]
    fn generators_satisfy_their_cone() {
        for n in 3..=5 {
            let met = build("MET", n).unwrap();
            for g in build("CUT", n).unwrap().generators.unwrap() {
                assert!(met.contains(&g).unwrap());
            }
            let wq = build("WQMET", n).unwrap();
            for g in build("OCUT", n).unwrap().generators.unwrap() {
                assert!(wq.contains(&g).unwrap());
            }
        }
    }

    #[test]
    fn qw_terms_follow_weightability() {
        // (q; w) with q_21 = q_12 + w_1 - w_2 evaluated through add_term.
        let s = Space::new(SpaceKind::Qw, 3);
        let mut f = IntVec::zeros(s.dim());
        add_term(&mut f, s, Coord::Arc(2, 1), 1);
        let x = IntVec::from_i64s(&[4, 0, 0, 5, 2, 0]);
        let quasi = crate::spaces::qw_to_quasi(&x, 3).unwrap();
        let qs = Space::new(SpaceKind::Quasi, 3);
        assert_eq!(f.dot(&x).unwrap(), quasi.0[qs.idx(Coord::Arc(2, 1))]);
    }
}
