//! Structural statements about the weighted, partial and quasi cones. Each
//! clause is instantiated for a few point counts and checked by exact set,
//! cone or graph comparison.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{inclusion, norm, ray_set, same_sets, show, Check, Computed, Lab, Report, Status};
use crate::catalog::{build, wqmet_equalities, Base, ConeId, B_BOUND};
use crate::error::{Error, Result};
use crate::exactla::{rank, IntVec};
use crate::generators::{
    basis_weight, bell, binomial, cuts, ocuts, partial_partitions, partition_number, set_partitions, stirling2, with_weights,
    SetPartition,
};
use crate::graphs::{product, FaceGraph, Product};
use crate::hyper::{b_family, hyp_vector, symmetric_hyp_quasi, BCoeffs};
use crate::polyhedra::{DdOptions, Description};
use crate::spaces::{
    lift, p_inv, p_map, pull_back, q_map, q_map_quasi, sym_to_wsym, wsym_to_sym, zero_extension, Coord, Lattice, Space, SpaceKind,
};
use crate::symmetry::{transpose, Action, Group};
use crate::zeroone;

const G: &str = "theorems";

/// A named, self-contained statement checked for each `n` in `ns`.
pub struct Clause {
    pub name: &'static str,
    pub about: &'static str,
    pub ns: &'static [usize],
    pub run: fn(&Lab, usize) -> Result<Vec<Check>>,
}

pub fn theorem_clauses() -> Vec<Clause> {
    const N35: &[usize] = &[3, 4, 5];
    vec![
        Clause {
            name: "weighted-rays",
            about: "rays of WMET, wPMET, wWQMET: the weight vectors plus the 0-weighted MET rays",
            ns: N35,
            run: weighted_rays,
        },
        Clause {
            name: "weighted-facets",
            about: "facets of WMET, wPMET, wWQMET: nonnegative weights plus the MET facets",
            ns: N35,
            run: weighted_facets,
        },
        Clause {
            name: "weighted-incidence",
            about: "2P(e_j) lies on all facets but L_jj, L_jj contains all rays but 2P(e_j)",
            ns: N35,
            run: weighted_incidence,
        },
        Clause {
            name: "weighted-graphs-join",
            about: "skeleton and ridge graph of WMET, wPMET, wWQMET are K_n joined with those of MET",
            ns: N35,
            run: weighted_graphs,
        },
        Clause {
            name: "weighted-graph-invariants",
            about: "wPMET has the diameters and edge connectivity of MET",
            ns: N35,
            run: weighted_invariants,
        },
        Clause {
            name: "weak-partial-zero-one",
            about: "0,1 points of wPMET are those of PMET; 0,1-wPMET is the 0-weighted cut cone",
            ns: N35,
            run: weak_partial_zero_one,
        },
        Clause {
            name: "weighted-zero-one-and-wcut",
            about: "0,1 points of WMET, 0,1-WMET = WCUT, and the rays, facets and graphs of WCUT",
            ns: N35,
            run: weighted_zero_one,
        },
        Clause {
            name: "strong-partial-lifting",
            about: "sPMET_n is the set of p in PMET_n whose lifting lies in PMET_(n+1)",
            ns: N35,
            run: strong_partial_lifting,
        },
        Clause {
            name: "strong-partial-met",
            about: "sWMET_n = MET_(n+1) and sPMET_n = P(MET_(n+1))",
            ns: N35,
            run: strong_partial_met,
        },
        Clause {
            name: "strong-partial-zero-one",
            about: "0,1 points of sPMET, 0,1-sPMET = P(CUT_(n+1)), Q(CUT_(n+1)) = OCUT_n",
            ns: N35,
            run: strong_partial_zero_one,
        },
        Clause {
            name: "down-weighted-zero-one",
            about: "0,1 points of dWMET and the four families spanning the rays of 0,1-dWMET",
            ns: N35,
            run: down_weighted_zero_one,
        },
        Clause {
            name: "weightable-quasi-zero-one",
            about: "0,1 points of WQMET are d(S) - d'(A); which of them span extreme rays",
            ns: N35,
            run: weightable_quasi_zero_one,
        },
        Clause {
            name: "partial-zero-one",
            about: "0,1 points of PMET are the B(n+1) partial multicuts; the non-extreme ones",
            ns: N35,
            run: partial_zero_one,
        },
        Clause {
            name: "zero-one-enumerators",
            about: "exhaustive and structural 0,1 enumeration agree, with the closed-form counts",
            ns: &[3, 4],
            run: zero_one_enumerators,
        },
        Clause {
            name: "ocut-images",
            about: "OCUT_n = Q(CUT_(n+1)) = Q(0,1-sWMET_n) = Q(0,1-dWMET_n) = cone of Q(0,1 points of dWMET_n)",
            ns: N35,
            run: ocut_images,
        },
        Clause {
            name: "owhyp-chain",
            about: "OCUT = OWHYP for n = 3,4; OCUT ⊂ OWHYP ⊂ WQMET for n = 5 with the 40 extra rays",
            ns: N35,
            run: owhyp_chain,
        },
        Clause {
            name: "wqmet-zero-one-chain",
            about: "OCUT ⊆ 0,1-WQMET ⊆ WQMET with the stated equality cases",
            ns: N35,
            run: wqmet_zero_one_chain,
        },
        Clause {
            name: "symmetrized-zero-one-quasi",
            about: "{q + q^T : q in 0,1-WQMET_n} = MET_n",
            ns: N35,
            run: symmetrized_zero_one_quasi,
        },
        Clause { name: "quasi-hypermetric", about: "QHYP_n = QMET_n for n = 3,4", ns: N35, run: quasi_hypermetric },
        Clause {
            name: "pq-images",
            about: "wPMET, PMET, sPMET are the P-images and wWQMET, WQMET, sWQMET the Q-images of WMET, dWMET, sWMET",
            ns: N35,
            run: pq_images,
        },
        Clause {
            name: "hypermetric-chain",
            about: "0,1-dWMET ⊆ WHYP ⊂ dWMET and PMET ⊇ PHYP ⊇ 0,1-PMET, with the values of Hyp_b on 0,1 rays",
            ns: N35,
            run: hypermetric_chain,
        },
        Clause {
            name: "whyp-facets",
            about: "facet orbits of WHYP_n, n <= 4, are exactly the listed Hyp_b and Hyp'_b",
            ns: &[3, 4],
            run: whyp_facets,
        },
        Clause { name: "phyp-facets", about: "the listed Hyp_b define facets of PHYP_n, n <= 5", ns: N35, run: phyp_facets },
        Clause {
            name: "quasi-equalities",
            about: "equality space of WQMET: dimension C(n-1,2), reversal stability, symmetric canonical facets",
            ns: &[3, 4, 5, 6, 7],
            run: quasi_equalities,
        },
        Clause {
            name: "quasi-facet-types",
            about: "OTr is reversal-stable and L is not; the extra facet orbits of OCUT_4 and OCUT_5",
            ns: N35,
            run: quasi_facet_types,
        },
    ]
}

fn run_clause(lab: &Lab, c: &Clause) -> Vec<Check> {
    let mut out = Vec::new();
    for &n in c.ns {
        match (c.run)(lab, n) {
            Ok(checks) => out.extend(checks),
            Err(e) => out.push(Check::failed(G, format!("n={n}"), &e)),
        }
    }
    for ch in &mut out {
        ch.group = c.name.to_string();
    }
    out
}

/// Runs one clause by name. An unknown name yields a single failure.
pub fn verify_clause(lab: &Lab, name: &str) -> Report {
    match theorem_clauses().into_iter().find(|c| c.name == name) {
        Some(c) => run_clause(lab, &c).into_iter().collect(),
        None => std::iter::once(Check::holds(G, format!("unknown clause {name}"), false, "")).collect(),
    }
}

pub fn verify_theorems(lab: &Lab) -> Report {
    theorem_clauses().iter().flat_map(|c| run_clause(lab, c)).collect()
}

// ----------------------------------------------------------------- helpers

fn space(kind: SpaceKind, n: usize) -> Space {
    Space::new(kind, n)
}

/// Primitive forms of the nonzero images.
fn image_set<'a, F>(vs: impl IntoIterator<Item = &'a IntVec>, f: F) -> Result<BTreeSet<IntVec>>
where
    F: Fn(&IntVec) -> Result<IntVec>,
{
    let mut out = BTreeSet::new();
    for v in vs {
        let x = f(v)?;
        if !x.is_zero() {
            out.insert(norm(&x));
        }
    }
    Ok(out)
}

fn pull_set<'a, F>(fs: impl IntoIterator<Item = &'a IntVec>, src_dim: usize, f: F) -> Result<BTreeSet<IntVec>>
where
    F: Fn(&IntVec) -> Result<IntVec> + Copy,
{
    let mut out = BTreeSet::new();
    for g in fs {
        let x = pull_back(g, src_dim, f)?;
        if !x.is_zero() {
            out.insert(norm(&x));
        }
    }
    Ok(out)
}

/// The `d` part of a `WSYM` vector.
fn d_part(x: &IntVec, n: usize) -> Result<IntVec> {
    let ws = space(SpaceKind::Wsym, n);
    ws.check(x)?;
    let ss = space(SpaceKind::Sym, n);
    Ok(IntVec(ss.coords().into_iter().map(|c| x.0[ws.idx(c)].clone()).collect()))
}

/// Inverse of `Q` on `QW(n)`: `d_ij = 2q_ij + w_i - w_j`, `w` unchanged.
fn qw_inv(x: &IntVec, n: usize) -> Result<IntVec> {
    let qs = space(SpaceKind::Qw, n);
    qs.check(x)?;
    let ws = space(SpaceKind::Wsym, n);
    let at = |c| &x.0[qs.idx(c)];
    Ok(IntVec(
        ws.coords()
            .into_iter()
            .map(|c| match c {
                Coord::Pair(i, j) => {
                    let (a, b) = (i.min(j), i.max(j));
                    at(Coord::Arc(a, b)) * 2 + at(Coord::Weight(a)) - at(Coord::Weight(b))
                }
                Coord::Weight(i) => at(Coord::Weight(i)).clone(),
                _ => unreachable!(),
            })
            .collect(),
    ))
}

fn weights(n: usize) -> Result<Vec<IntVec>> {
    (1..=n).map(|j| basis_weight(j, n)).collect()
}

fn zero_weighted(ds: &[IntVec], n: usize) -> Result<Vec<IntVec>> {
    ds.iter().map(|d| with_weights(d, &vec![0; n])).collect()
}

fn cut_vectors(n: usize) -> Vec<(Vec<usize>, IntVec)> {
    cuts(n).into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn unit_weight_facets(n: usize) -> Vec<IntVec> {
    let ws = space(SpaceKind::Wsym, n);
    (1..=n).map(|j| IntVec::unit(ws.dim(), ws.idx(Coord::Weight(j)))).collect()
}

fn indicator(n: usize, s: &[usize], inside: bool) -> Vec<i64> {
    (1..=n).map(|i| i64::from(s.contains(&i) == inside)).collect()
}

fn edge_set(g: &FaceGraph) -> BTreeSet<(usize, usize)> {
    g.edges().into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect()
}

fn dd_opts(lab: &Lab) -> DdOptions {
    DdOptions { checkpoint: None, resume: None, label: None, ..lab.opts.clone() }
}

fn orbit_canon_set(c: &Computed, fs: &[IntVec]) -> Result<BTreeSet<IntVec>> {
    let g = c.group()?;
    let mut out = BTreeSet::new();
    for f in fs {
        if let Some(x) = c.canonical(f) {
            out.insert(g.canonical(&x, Action::Facet)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------- weighted cones

fn met0_rays(lab: &Lab, n: usize) -> Result<Vec<IntVec>> {
    zero_weighted(lab.cone("MET", n)?.rays(), n)
}

fn weighted_rays(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let met0 = met0_rays(lab, n)?;
    let ej = weights(n)?;
    let all: Vec<&IntVec> = ej.iter().chain(&met0).collect();
    let mut out = Vec::new();
    let exp = ray_set(all.iter().copied());
    out.push(same_sets(G, format!("R(WMET_{n}) = e_j plus 0-weighted MET_{n} rays"), &exp, &lab.cone("WMET", n)?.ray_set()));
    let exp = image_set(all.iter().copied(), |x| p_map(x, n, Lattice::Doubled))?;
    out.push(same_sets(G, format!("R(wPMET_{n}) = 2P(e_j) plus P(MET_{n};0)"), &exp, &lab.cone("wPMET", n)?.ray_set()));
    let exp = image_set(all.iter().copied(), |x| q_map(x, n, Lattice::Doubled))?;
    out.push(same_sets(G, format!("R(wWQMET_{n}) = 2Q(e_j) plus Q(MET_{n};0)"), &exp, &lab.cone("wWQMET", n)?.ray_set()));
    Ok(out)
}

/// Facets of `WMET_n` as predicted: weights plus the 0-extended MET facets.
fn wmet_facets(lab: &Lab, n: usize) -> Result<Vec<IntVec>> {
    let ws = space(SpaceKind::Wsym, n);
    let mut fs = unit_weight_facets(n);
    for f in lab.cone("MET", n)?.facets() {
        fs.push(pull_back(f, ws.dim(), |x| d_part(x, n))?);
    }
    Ok(fs)
}

fn weighted_facets(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let fs = wmet_facets(lab, n)?;
    let mut out = Vec::new();
    let exp = ray_set(&fs);
    out.push(same_sets(G, format!("F(WMET_{n}) = w_j >= 0 plus F(MET_{n};0)"), &exp, &lab.cone("WMET", n)?.facet_set()));
    let pd = space(SpaceKind::Psym, n).dim();
    let exp = pull_set(&fs, pd, |p| p_inv(p, n))?;
    out.push(same_sets(G, format!("F(wPMET_{n}) = L_jj plus F(P(MET_{n};0))"), &exp, &lab.cone("wPMET", n)?.facet_set()));
    let qd = space(SpaceKind::Qw, n).dim();
    let exp = pull_set(&fs, qd, |q| qw_inv(q, n))?;
    out.push(same_sets(G, format!("F(wWQMET_{n}) = w_j >= 0 plus F(Q(MET_{n};0))"), &exp, &lab.cone("wWQMET", n)?.facet_set()));
    Ok(out)
}

fn weighted_incidence(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let c = lab.cone("wPMET", n)?;
    let d = &c.desc;
    let ps = space(SpaceKind::Psym, n);
    let formula = (n - 1) + 3 * binomial(n as u64, 3) as usize;
    let mut ray_inc = Vec::new();
    let mut facet_inc = Vec::new();
    let mut lonely = Vec::new();
    for (j, e) in weights(n)?.iter().enumerate() {
        let r = norm(&p_map(e, n, Lattice::Doubled)?);
        let i = d.ray_index(&r).ok_or_else(|| Error::NotARay(show(&r)))?;
        ray_inc.push(d.ray_facets[i].count());
        let f = IntVec::unit(ps.dim(), ps.idx(Coord::Diag(j + 1)));
        let k = d.facet_index(&f).ok_or_else(|| Error::Inconsistent(format!("L_{0}{0} is not a facet", j + 1)))?;
        facet_inc.push(d.facet_rays[k].count());
        let sk = c.skeleton();
        lonely.extend((0..d.rays.len()).filter(|&o| o != i && !sk.has_edge(i, o)).map(|o| show(&d.rays[o])));
    }
    let nf = d.facets.len();
    let nr = d.rays.len();
    Ok(vec![
        Check::compare(
            G,
            format!("Inc(2P(e_j)) = |F(wPMET_{n})| - 1, j = 1..{n}"),
            format!("{:?}", vec![nf - 1; n]),
            format!("{ray_inc:?}"),
        ),
        Check::compare(G, format!("|F(wPMET_{n})| - 1 = (n-1) + 3C(n,3)"), formula, nf - 1),
        Check::compare(
            G,
            format!("Inc(L_jj) = |R(wPMET_{n})| - 1, j = 1..{n}"),
            format!("{:?}", vec![nr - 1; n]),
            format!("{facet_inc:?}"),
        ),
        Check::holds(
            G,
            format!("2P(e_j) adjacent to every other ray of wPMET_{n}"),
            lonely.is_empty(),
            lonely.first().cloned().unwrap_or_default(),
        ),
    ])
}

#[derive(Clone, Copy)]
enum Weighted {
    Wmet,
    Wpmet,
    Wwqmet,
}

impl Weighted {
    fn name(self) -> &'static str {
        match self {
            Weighted::Wmet => "WMET",
            Weighted::Wpmet => "wPMET",
            Weighted::Wwqmet => "wWQMET",
        }
    }

    fn ray_back(self, v: &IntVec, n: usize) -> Result<IntVec> {
        Ok(norm(&match self {
            Weighted::Wmet => v.clone(),
            Weighted::Wpmet => p_inv(v, n)?,
            Weighted::Wwqmet => qw_inv(v, n)?,
        }))
    }

    fn facet_back(self, f: &IntVec, n: usize) -> Result<IntVec> {
        let wd = space(SpaceKind::Wsym, n).dim();
        Ok(norm(&match self {
            Weighted::Wmet => f.clone(),
            Weighted::Wpmet => pull_back(f, wd, |x| p_map(x, n, Lattice::Doubled))?,
            Weighted::Wwqmet => pull_back(f, wd, |x| q_map(x, n, Lattice::Doubled))?,
        }))
    }
}

/// Relabels `g` by `index` (vertex -> position in the join) and compares
/// it with `K_n` joined with `base`.
fn join_check(name: String, g: &FaceGraph, index: &[Option<usize>], n: usize, base: &FaceGraph) -> Check {
    if let Some(v) = index.iter().position(Option::is_none) {
        return Check::holds(G, name, false, format!("vertex {v} is neither a weight vertex nor a base vertex"));
    }
    let perm: Vec<usize> = index.iter().map(|x| x.unwrap()).collect();
    let distinct: BTreeSet<usize> = perm.iter().copied().collect();
    let expected = product(&FaceGraph::complete(n), base, Product::Join);
    if distinct.len() != perm.len() || perm.len() != expected.len() {
        return Check::holds(G, name, false, format!("{} vertices, join has {}", perm.len(), expected.len()));
    }
    let got = edge_set(&g.relabel(&perm));
    let exp = edge_set(&expected);
    let diff = exp.symmetric_difference(&got).next();
    Check::holds(
        G,
        name,
        diff.is_none(),
        diff.map_or(format!("{} vertices, {} edges", perm.len(), got.len()), |e| format!("differs at {e:?}")),
    )
}

/// Positions in `K_n + base`: weight vertices first, then the base list.
fn join_index(ws: &[IntVec], base: &[IntVec], vs: impl Iterator<Item = Result<IntVec>>) -> Result<Vec<Option<usize>>> {
    let pos: BTreeMap<&IntVec, usize> = ws.iter().chain(base).enumerate().map(|(k, v)| (v, k)).collect();
    vs.map(|v| v.map(|v| pos.get(&v).copied())).collect()
}

fn other_products_note(n: usize, m: usize) -> String {
    let grid = Product::ALL.iter().filter(|p| **p != Product::Join).map(|p| p.name()).collect::<Vec<_>>().join(", ");
    format!("{grid} products have {} vertices, the cone has {}", n * m, n + m)
}

fn weighted_graphs(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let met = lab.cone("MET", n)?;
    let ws = weights(n)?;
    let base_rays: Vec<IntVec> = zero_weighted(met.rays(), n)?.iter().map(norm).collect();
    let wf: Vec<IntVec> = unit_weight_facets(n);
    let wd = space(SpaceKind::Wsym, n).dim();
    let base_facets: Vec<IntVec> =
        met.facets().iter().map(|f| pull_back(f, wd, |x| d_part(x, n)).map(|g| norm(&g))).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for kind in [Weighted::Wmet, Weighted::Wpmet, Weighted::Wwqmet] {
        let c = lab.cone(kind.name(), n)?;
        let idx = join_index(&ws, &base_rays, c.rays().iter().map(|r| kind.ray_back(r, n)))?;
        let name = format!("Sk({}_{n}) = K_{n} join Sk(MET_{n})", kind.name());
        out.push(join_check(name, c.skeleton(), &idx, n, met.skeleton()).with_note(other_products_note(n, met.rays().len())));
        let idx = join_index(&wf, &base_facets, c.facets().iter().map(|f| kind.facet_back(f, n)))?;
        let name = format!("Ri({}_{n}) = K_{n} join Ri(MET_{n})", kind.name());
        out.push(join_check(name, c.ridge(), &idx, n, met.ridge()).with_note(other_products_note(n, met.facets().len())));
    }
    Ok(out)
}

fn weighted_invariants(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let met = lab.cone("MET", n)?;
    let wp = lab.cone("wPMET", n)?;
    let mut out = Vec::new();
    for (tag, a, b) in [("Sk", met.skeleton(), wp.skeleton()), ("Ri", met.ridge(), wp.ridge())] {
        out.push(Check::compare(G, format!("D({tag}(wPMET_{n})) = D({tag}(MET_{n}))"), a.diameter()?, b.diameter()?));
        let (ka, kb) = (a.edge_connectivity()?, b.edge_connectivity()?);
        out.push(
            Check::compare(G, format!("edge connectivity of {tag}(wPMET_{n}) = that of {tag}(MET_{n})"), ka, kb)
                .with_note(format!("minimum degrees {} and {}", a.min_degree(), b.min_degree())),
        );
        out.push(Check::compare(G, format!("{tag}(wPMET_{n}) edge connectivity = minimum degree"), b.min_degree(), kb));
    }
    if n > 3 {
        let r = met.ridge();
        let deg = (n - 3) * (n * n - 6) / 2;
        out.push(Check::compare(
            G,
            format!("Ri(MET_{n}) regular of degree (n-3)(n^2-6)/2"),
            format!("{deg}..{deg}"),
            format!("{}..{}", r.min_degree(), r.max_degree()),
        ));
    }
    Ok(out)
}

fn weak_partial_zero_one(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let wp = build("wPMET", n)?;
    let brute: BTreeSet<IntVec> = zeroone::brute_force(&wp)?.into_iter().collect();
    let pm = build("PMET", n)?;
    let st: BTreeSet<IntVec> = zeroone::structural(&pm).unwrap_or_default().into_iter().collect();
    let mut out = vec![
        same_sets(G, format!("0,1 points of wPMET_{n} = those of PMET_{n}"), &st, &brute),
        Check::compare(G, format!("number of 0,1 points of wPMET_{n} = B(n+1)"), bell(n as u64 + 1), brute.len() as u128),
    ];
    let rays = lab.rays_only(ConeId::ZeroOne(Base::WPmet), n)?;
    let ds: Vec<IntVec> = cut_vectors(n).into_iter().map(|(_, c)| c).collect();
    let exp = image_set(&zero_weighted(&ds, n)?, |x| p_map(x, n, Lattice::Doubled))?;
    out.push(same_sets(G, format!("0,1-wPMET_{n} = P(CUT_{n};0)"), &exp, &ray_set(rays.iter())));
    Ok(out)
}

fn weighted_zero_one(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let wm = build("WMET", n)?;
    let brute: BTreeSet<IntVec> = zeroone::brute_force(&wm)?.into_iter().collect();
    let st: BTreeSet<IntVec> = zeroone::structural(&wm).unwrap_or_default().into_iter().collect();
    let mut out = vec![
        same_sets(G, format!("0,1 points of WMET_{n} = 0,1-weighted multicuts"), &st, &brute),
        Check::compare(
            G,
            format!("number of 0,1 points of WMET_{n} = 2^n B(n)"),
            (1u128 << n) * bell(n as u64),
            brute.len() as u128,
        ),
    ];
    let wcut = lab.cone("WCUT", n)?;
    let z = ray_set(lab.rays_only(ConeId::ZeroOne(Base::Wmet), n)?.iter());
    out.push(same_sets(G, format!("0,1-WMET_{n} = WCUT_{n}"), &wcut.ray_set(), &z));
    let ws = weights(n)?;
    let ds: Vec<IntVec> = cut_vectors(n).into_iter().map(|(_, c)| c).collect();
    let cut0: Vec<IntVec> = zero_weighted(&ds, n)?.iter().map(norm).collect();
    let exp = ray_set(ws.iter().chain(&cut0));
    out.push(same_sets(G, format!("R(WCUT_{n}) = e_j plus R(CUT_{n};0)"), &exp, &wcut.ray_set()));
    let sk = wcut.skeleton();
    let s2 = stirling2(n as u64, 2) as usize;
    out.push(Check::holds(
        G,
        format!("Sk(WCUT_{n}) = K_(n+S(n,2))"),
        sk.is_complete() && sk.len() == n + s2,
        format!("{} vertices, {} edges", sk.len(), sk.edge_count()),
    ));
    let cut = lab.cone("CUT", n)?;
    let wd = space(SpaceKind::Wsym, n).dim();
    let wf = unit_weight_facets(n);
    let base_f: Vec<IntVec> =
        cut.facets().iter().map(|f| pull_back(f, wd, |x| d_part(x, n)).map(|g| norm(&g))).collect::<Result<_>>()?;
    let exp = ray_set(wf.iter().chain(&base_f));
    out.push(same_sets(G, format!("F(WCUT_{n}) = w_j >= 0 plus F(CUT_{n};0)"), &exp, &wcut.facet_set()));
    let idx = join_index(&wf, &base_f, wcut.facets().iter().map(|f| Ok(norm(f))))?;
    out.push(join_check(format!("Ri(WCUT_{n}) = K_{n} join Ri(CUT_{n})"), wcut.ridge(), &idx, n, cut.ridge()));
    out.push(Check::compare(G, format!("D(Ri(WCUT_{n})) = 2"), 2, wcut.ridge().diameter()?));
    Ok(out)
}

// ------------------------------------------------------- strong partial

fn strong_partial_lifting(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let pm = build("PMET", n)?;
    let big = build("PMET", n + 1)?;
    let pd = space(SpaceKind::Psym, n).dim();
    let mut ineqs = pm.inequalities.clone();
    for a in &big.inequalities {
        let g = pull_back(a, pd, |p| lift(p, n))?;
        if !g.is_zero() {
            ineqs.push(norm(&g));
        }
    }
    let desc = Description::from_inequalities(&ineqs, &[], &dd_opts(lab))?;
    let lifted: BTreeSet<IntVec> = desc.rays.iter().cloned().collect();
    let sp = lab.cone("sPMET", n)?;
    let mut out = vec![same_sets(G, format!("sPMET_{n} = {{p in PMET_{n} : p+ in PMET_{}}}", n + 1), &sp.ray_set(), &lifted)];
    let pmet = lab.cone("PMET", n)?;
    let mut witness = None;
    for r in pmet.rays() {
        if !big.contains(&lift(r, n)?)? {
            witness = Some(r.clone());
            break;
        }
    }
    out.push(Check::holds(
        G,
        format!("some ray of PMET_{n} has its lifting outside PMET_{}", n + 1),
        witness.is_some(),
        witness.map(|w| format!("witness {}", show(&w))).unwrap_or_default(),
    ));
    Ok(out)
}

fn strong_partial_met(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let met = lab.cone("MET", n + 1)?;
    let sw = lab.cone("sWMET", n)?;
    let as_sym = image_set(sw.rays(), |x| wsym_to_sym(x, n))?;
    let sp = lab.cone("sPMET", n)?;
    let via_p = image_set(met.rays(), |d| p_map(&sym_to_wsym(d, n + 1)?, n, Lattice::Doubled))?;
    Ok(vec![
        same_sets(G, format!("sWMET_{n} = MET_{}", n + 1), &met.ray_set(), &as_sym),
        same_sets(G, format!("sPMET_{n} = P(MET_{})", n + 1), &via_p, &sp.ray_set()),
    ])
}

fn cuts_plus(n: usize) -> Vec<IntVec> {
    cut_vectors(n + 1).into_iter().map(|(_, c)| c).collect()
}

fn ocut_set(n: usize) -> BTreeSet<IntVec> {
    ray_set(ocuts(n).iter().map(|(_, v)| v))
}

fn strong_partial_zero_one(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let sp = build("sPMET", n)?;
    let brute: BTreeSet<IntVec> = zeroone::brute_force(&sp)?.into_iter().collect();
    let st: BTreeSet<IntVec> = zeroone::structural(&sp).unwrap_or_default().into_iter().collect();
    let cp = cuts_plus(n);
    let exp = image_set(&cp, |d| p_map(&sym_to_wsym(d, n + 1)?, n, Lattice::Doubled))?;
    let z = ray_set(lab.rays_only(ConeId::ZeroOne(Base::SPmet), n)?.iter());
    let q = image_set(&cp, |d| q_map_quasi(&sym_to_wsym(d, n + 1)?, n, Lattice::Doubled))?;
    Ok(vec![
        same_sets(G, format!("0,1 points of sPMET_{n} = ((0)) plus partial 2-cuts"), &st, &brute),
        Check::compare(G, format!("number of 0,1 points of sPMET_{n} = 1 + (2^n - 1)"), 1usize << n, brute.len()),
        same_sets(G, format!("0,1-sPMET_{n} = P(CUT_{})", n + 1), &exp, &z),
        same_sets(G, format!("Q(CUT_{}) = OCUT_{n}", n + 1), &ocut_set(n), &q),
    ])
}

// ---------------------------------------------------------- 0,1 points

/// `((0); 1)` and, for each cut `S`, `(δ(S); 0)`, `(δ(S); 1_S)`, `(δ(S); 1_S̄)`.
struct DwFamilies {
    ones: IntVec,
    zero_w: Vec<IntVec>,
    w_in: Vec<IntVec>,
    w_out: Vec<IntVec>,
}

fn dw_families(n: usize) -> Result<DwFamilies> {
    let zero = IntVec::zeros(space(SpaceKind::Sym, n).dim());
    let mut f = DwFamilies { ones: with_weights(&zero, &vec![1; n])?, zero_w: vec![], w_in: vec![], w_out: vec![] };
    for (s, d) in cut_vectors(n) {
        f.zero_w.push(with_weights(&d, &vec![0; n])?);
        f.w_in.push(with_weights(&d, &indicator(n, &s, true))?);
        f.w_out.push(with_weights(&d, &indicator(n, &s, false))?);
    }
    Ok(f)
}

fn dw_sum(n: usize) -> u128 {
    (1..=n as u64).map(|t| (1u128 << t) * stirling2(n as u64, t)).sum()
}

fn down_weighted_zero_one(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let dw = build("dWMET", n)?;
    let brute: BTreeSet<IntVec> = zeroone::brute_force(&dw)?.into_iter().collect();
    let st: BTreeSet<IntVec> = zeroone::structural(&dw).unwrap_or_default().into_iter().collect();
    let fam = dw_families(n)?;
    let all: Vec<IntVec> = std::iter::once(fam.ones.clone())
        .chain(fam.zero_w.iter().cloned())
        .chain(fam.w_in.iter().cloned())
        .chain(fam.w_out.iter().cloned())
        .collect();
    let exp: BTreeSet<IntVec> = all.iter().cloned().collect();
    let rays = ray_set(lab.rays_only(ConeId::ZeroOne(Base::DWmet), n)?.iter());
    let grp = Group::new(dw.symmetry, dw.space)?;
    let orbits = grp.orbits(&all, Action::Ray)?.len();
    // 2(δ; 1) = (δ; 1_S) + (δ; 1_S̄) + ((0); 1)
    let mut identity = true;
    for (k, (s, d)) in cut_vectors(n).into_iter().enumerate() {
        let lhs = with_weights(&d, &vec![1; n])?.scale(&BigInt::from(2));
        let rhs = fam.w_in[k].add(&fam.w_out[k])?.add(&fam.ones)?;
        identity &= lhs == rhs && !rays.contains(&norm(&with_weights(&d, &vec![1; n])?));
        let _ = s;
    }
    Ok(vec![
        same_sets(G, format!("0,1 points of dWMET_{n} = (δ(S); w(A))"), &st, &brute),
        Check::compare(G, format!("number of 0,1 points of dWMET_{n} = sum 2^t S(n,t)"), dw_sum(n), brute.len() as u128),
        same_sets(G, format!("R(0,1-dWMET_{n}) = ((0);1), (δ(S);0), (δ(S);1_S), (δ(S);1_S̄)"), &exp, &rays),
        Check::compare(G, format!("|R(0,1-dWMET_{n})| = 1 + 3(2^(n-1) - 1)"), 1 + 3 * ((1usize << (n - 1)) - 1), rays.len()),
        Check::compare(G, format!("orbits of R(0,1-dWMET_{n}) = floor(3n/2)"), 3 * n / 2, orbits),
        Check::holds(G, format!("all-ones-weighted 2-cuts of dWMET_{n} are half-sums of rays, not rays"), identity, ""),
    ])
}

/// `δ(S) - δ'(Â)` in `QUASI(n)`, `Â` the union of the selected blocks.
fn quasi_point(parts: &SetPartition, sel: &[usize], n: usize) -> IntVec {
    let b = parts.block_of();
    let qs = space(SpaceKind::Quasi, n);
    let in_a = |i: usize| sel.contains(&b[i].unwrap());
    IntVec(
        qs.coords()
            .into_iter()
            .map(|c| {
                let Coord::Arc(i, j) = c else { unreachable!() };
                let d = i64::from(b[i] != b[j]);
                let o = i64::from(in_a(i) && !in_a(j));
                BigInt::from(d - o)
            })
            .collect(),
    )
}

fn weightable_quasi_zero_one(_lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let wq = build("WQMET", n)?;
    let brute: BTreeSet<IntVec> = zeroone::brute_force(&wq)?.into_iter().collect();
    let mut reps: BTreeMap<IntVec, Vec<(usize, usize)>> = BTreeMap::new();
    for parts in set_partitions(n) {
        let t = parts.len();
        for mask in 0u32..1 << t {
            let sel: Vec<usize> = (0..t).filter(|k| mask >> k & 1 == 1).collect();
            reps.entry(quasi_point(&parts, &sel, n)).or_default().push((t, sel.len()));
        }
    }
    let formula: BTreeSet<IntVec> = reps.keys().cloned().collect();
    let pts: Vec<IntVec> = brute.iter().cloned().collect();
    let ext: BTreeSet<IntVec> = zeroone::extreme_01(&wq, &pts)?.into_iter().collect();
    type Reading = fn(usize, usize, usize) -> bool;
    let readings: [(&str, Reading); 2] = [
        ("2 <= |A| <= n-2 and 2 <= t-|A| <= n-2", |n, t, a| {
            (a == 1 && t - a == 1) || ((2..=n - 2).contains(&a) && (2..=n - 2).contains(&(t - a)))
        }),
        ("2 <= |A| and t-|A| <= n-2", |n, t, a| (a == 1 && t - a == 1) || (a >= 2 && t - a <= n - 2)),
    ];
    let mut verdicts = Vec::new();
    let mut matched = Vec::new();
    for (label, rule) in readings {
        let predicted: BTreeSet<IntVec> = reps
            .iter()
            .filter(|(q, rs)| !q.is_zero() && rs.iter().any(|&(t, a)| rule(n, t, a)))
            .map(|(q, _)| q.clone())
            .collect();
        let ok = predicted == ext;
        verdicts.push(format!("{label}: {}", if ok { "matches" } else { "differs" }));
        if ok {
            matched.push(label);
        }
    }
    let classes: BTreeSet<(usize, usize)> =
        reps.iter().filter(|(q, _)| ext.contains(*q)).flat_map(|(_, rs)| rs.iter().copied()).collect();
    Ok(vec![
        same_sets(G, format!("0,1 points of WQMET_{n} = δ(S) - δ'(A)"), &formula, &brute),
        Check::holds(
            G,
            format!("extreme 0,1 points of WQMET_{n} follow the |A|, t-|A| rule"),
            !matched.is_empty(),
            format!("{} extreme; (t,|A|) classes {classes:?}", ext.len()),
        )
        .with_note(verdicts.join("; ")),
    ])
}

fn partial_zero_one(_lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let pm = build("PMET", n)?;
    let brute: BTreeSet<IntVec> = zeroone::brute_force(&pm)?.into_iter().collect();
    let pps = partial_partitions(n);
    let st: BTreeSet<IntVec> = pps.iter().map(crate::generators::partial_multicut).collect();
    let pts: Vec<IntVec> = brute.iter().cloned().collect();
    let grp = Group::new(pm.symmetry, pm.space)?;
    let orbits = grp.orbits(&pts, Action::Ray)?.len();
    let ext: BTreeSet<IntVec> = zeroone::extreme_01(&pm, &pts)?.into_iter().collect();
    let non: Vec<IntVec> = pts.iter().filter(|p| !ext.contains(*p)).cloned().collect();
    let exp: BTreeSet<IntVec> =
        pps.iter().filter(|pp| pp.s0.is_empty() && pp.parts.len() != 2).map(crate::generators::partial_multicut).collect();
    let non_orbits = grp.orbits(&non, Action::Ray)?.len();
    let q_sum: u128 = (0..=n as u64).map(partition_number).sum();
    let b = bell(n as u64);
    let s2 = stirling2(n as u64, 2);
    Ok(vec![
        same_sets(G, format!("0,1 points of PMET_{n} = partial multicuts"), &st, &brute),
        Check::compare(G, format!("number of 0,1 points of PMET_{n} = B(n+1)"), bell(n as u64 + 1), brute.len() as u128),
        Check::compare(G, format!("orbits of 0,1 points of PMET_{n} = sum Q(i), i <= n"), q_sum, orbits as u128),
        same_sets(
            G,
            format!("non-extreme 0,1 points of PMET_{n} = partial t-cuts with S_0 empty, t != 2"),
            &exp,
            &non.iter().cloned().collect(),
        ),
        Check::compare(
            G,
            format!("number of non-extreme 0,1 points of PMET_{n} = B(n) - (2^(n-1) - 1)"),
            b - s2,
            non.len() as u128,
        ),
        Check::compare(
            G,
            format!("orbits of non-extreme 0,1 points of PMET_{n} = Q(n) - floor(n/2)"),
            partition_number(n as u64) - (n as u128 / 2),
            non_orbits as u128,
        ),
    ])
}

fn zero_one_enumerators(_lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let nn = n as u64;
    for name in ["MET", "wPMET", "PMET", "sPMET", "dWMET", "WMET", "WQMET"] {
        let c = build(name, n)?;
        let rep = match zeroone::enumerate_01(&c) {
            Ok(r) => r,
            Err(e) => {
                out.push(Check::failed(G, format!("{name}_{n} exhaustive vs structural"), &e));
                continue;
            }
        };
        out.push(Check::holds(
            G,
            format!("{name}_{n} exhaustive vs structural"),
            rep.method == zeroone::Method::Both,
            format!("{} points, {} extreme", rep.total, rep.extreme),
        ));
        let expected: Option<u128> = match name {
            "MET" => Some(bell(nn)),
            "wPMET" | "PMET" => Some(bell(nn + 1)),
            "sPMET" => Some(1 << n),
            "dWMET" => Some(dw_sum(n)),
            "WMET" => Some((1 << n) * bell(nn)),
            _ => None,
        };
        if let Some(e) = expected {
            out.push(Check::compare(G, format!("{name}_{n} number of 0,1 points"), e, rep.total as u128));
        }
        if name == "PMET" {
            let q: u128 = (0..=nn).map(partition_number).sum();
            out.push(Check::compare(G, format!("{name}_{n} orbits of 0,1 points"), q, rep.orbits_total as u128));
        }
        if name == "dWMET" {
            out.push(Check::compare(
                G,
                format!("{name}_{n} orbits of extreme 0,1 points"),
                (3 * n / 2) as u128,
                rep.orbits_extreme as u128,
            ));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------- quasi cones

fn quasi_of(x: &IntVec, n: usize) -> Result<IntVec> {
    q_map_quasi(x, n, Lattice::Doubled)
}

fn ocut_images(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let oc = lab.cone("OCUT", n)?;
    let target = ocut_set(n);
    let mut out = Vec::new();
    let cp = cuts_plus(n);
    let q = image_set(&cp, |d| quasi_of(&sym_to_wsym(d, n + 1)?, n))?;
    out.push(same_sets(G, format!("Q(CUT_{}) = OCUT_{n}", n + 1), &target, &q));
    let sw = lab.rays_only(ConeId::ZeroOne(Base::SWmet), n)?;
    let q = image_set(sw.iter(), |x| quasi_of(x, n))?;
    out.push(same_sets(G, format!("Q(0,1-sWMET_{n}) = OCUT_{n}"), &target, &q));
    let fam = dw_families(n)?;
    let oriented: BTreeSet<IntVec> = image_set(fam.w_in.iter().chain(&fam.w_out), |x| quasi_of(x, n))?;
    out.push(same_sets(G, format!("Q(δ(S);1_S) and Q(δ(S);1_S̄) are the o-cuts of V_{n}"), &target, &oriented));
    let sym_cuts = image_set(&fam.zero_w, |x| quasi_of(x, n))?;
    let non_extreme = sym_cuts.iter().all(|c| oc.contains(c) && oc.desc.ray_index(c).is_none());
    out.push(Check::holds(
        G,
        format!("Q(δ(S);0) = δ(S) lies in OCUT_{n} but spans no ray"),
        non_extreme,
        format!("{} images", sym_cuts.len()),
    ));
    out.push(Check::holds(G, format!("Q((0);1) = 0 on V_{n}"), quasi_of(&fam.ones, n)?.is_zero(), ""));
    let dw = build("dWMET", n)?;
    let pts = zeroone::points(&dw)?;
    let imgs = image_set(&pts, |x| quasi_of(x, n))?;
    let outside = imgs.iter().find(|v| !oc.contains(v));
    let covered = target.is_subset(&imgs);
    out.push(Check::holds(
        G,
        format!("cone of Q(0,1 points of dWMET_{n}) = OCUT_{n}"),
        outside.is_none() && covered,
        outside.map_or(format!("{} images", imgs.len()), |v| format!("{} outside OCUT_{n}", show(v))),
    ));
    Ok(out)
}

fn arc_vec(n: usize, f: impl Fn(usize, usize) -> i64) -> IntVec {
    let qs = space(SpaceKind::Quasi, n);
    IntVec(
        qs.coords()
            .into_iter()
            .map(|c| {
                let Coord::Arc(i, j) = c else { unreachable!() };
                BigInt::from(f(i, j))
            })
            .collect(),
    )
}

/// `F_ab` (`primed = false`) and `F'_ab`: 2 on `(ab)`, 1 on `(ba)`, 0 on the
/// other `(ka)` resp. `(bk)`, 1 elsewhere.
fn owhyp_extra(n: usize, a: usize, b: usize, primed: bool) -> IntVec {
    arc_vec(n, |i, j| {
        if (i, j) == (a, b) {
            2
        } else if (i, j) == (b, a) {
            1
        } else if (!primed && j == a) || (primed && i == b) {
            0
        } else {
            1
        }
    })
}

fn owhyp_chain(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let oc = lab.cone("OCUT", n)?;
    let ow = lab.cone("OWHYP", n)?;
    if n < 5 {
        return Ok(vec![inclusion(G, &oc, &ow, false)]);
    }
    let wq = lab.cone("WQMET", n)?;
    let mut exp = BTreeSet::new();
    for a in 1..=n {
        for b in 1..=n {
            if a != b {
                exp.insert(owhyp_extra(n, a, b, false));
                exp.insert(owhyp_extra(n, a, b, true));
            }
        }
    }
    let extra: BTreeSet<IntVec> = ow.ray_set().difference(&oc.ray_set()).cloned().collect();
    Ok(vec![
        inclusion(G, &oc, &ow, true),
        inclusion(G, &ow, &wq, true),
        same_sets(G, format!("R(OWHYP_{n}) minus o-cuts = F_ab, F'_ab"), &exp, &extra),
        Check::compare(G, format!("number of F_ab, F'_ab in OWHYP_{n}"), 40, extra.len()),
        Check::compare(G, format!("D(Sk(OWHYP_{n}))"), 2, ow.skeleton().diameter()?),
        Check::compare(G, format!("D(Ri(OWHYP_{n}))"), 2, ow.ridge().diameter()?),
    ])
}

fn wqmet_zero_one_chain(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let oc = lab.cone("OCUT", n)?;
    let z = lab.cone("01-WQMET", n)?;
    let wq = lab.cone("WQMET", n)?;
    Ok(vec![inclusion(G, &oc, &z, n >= 4), inclusion(G, &z, &wq, n >= 5)])
}

fn symmetrized_zero_one_quasi(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let s = lab.get(ConeId::ZeroOneWqmetSym, n)?;
    let met = lab.cone("MET", n)?;
    Ok(vec![same_sets(G, format!("{{q + q^T : q in 0,1-WQMET_{n}}} = MET_{n}"), &met.ray_set(), &s.ray_set())])
}

fn quasi_hypermetric(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    if n >= 5 {
        let d = |name: &str, v: &str| {
            Check { expected: Some(v.into()), ..Check::new(G, name.to_string(), Status::Deferred) }.with_note("extended tier")
        };
        return Ok(vec![d("QHYP_5 facets", "90"), d("QHYP_5 rays", "78810"), d("D(Ri(QHYP_5))", "2")]);
    }
    let qh = lab.cone("QHYP", n)?;
    let qm = lab.cone("QMET", n)?;
    Ok(vec![inclusion(G, &qh, &qm, false), same_sets(G, format!("F(QHYP_{n}) = F(QMET_{n})"), &qm.facet_set(), &qh.facet_set())])
}

fn pq_images(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    type Map = fn(&IntVec, usize) -> Result<IntVec>;
    let p: Map = |x, n| p_map(x, n, Lattice::Doubled);
    let q: Map = |x, n| q_map(x, n, Lattice::Doubled);
    let qq: Map = |x, n| q_map_quasi(x, n, Lattice::Doubled);
    let pairs: [(&str, &str, &str, Map); 6] = [
        ("WMET", "wPMET", "P", p),
        ("dWMET", "PMET", "P", p),
        ("sWMET", "sPMET", "P", p),
        ("WMET", "wWQMET", "Q", q),
        ("dWMET", "WQMET", "Q", qq),
        ("sWMET", "sWQMET", "Q", q),
    ];
    let mut out = Vec::new();
    for (src, dst, m, f) in pairs {
        let s = lab.cone(src, n)?;
        let d = lab.cone(dst, n)?;
        // the maps have a kernel, so images of rays need not be extreme
        let img = image_set(s.rays(), |x| f(x, n))?;
        let outside = img.iter().find(|v| !d.contains(v));
        let missing = d.rays().iter().find(|r| !img.contains(*r));
        let detail = match (outside, missing) {
            (Some(v), _) => format!("{} lies outside {dst}_{n}", show(v)),
            (_, Some(r)) => format!("ray {} is not an image", show(r)),
            _ => format!("{} images, {} rays", img.len(), d.rays().len()),
        };
        out.push(Check::holds(G, format!("{dst}_{n} = {m}({src}_{n})"), outside.is_none() && missing.is_none(), detail));
    }
    Ok(out)
}

// ------------------------------------------------------------ hypermetric

fn hypermetric_chain(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let z = lab.cone("01-dWMET", n)?;
    let wh = lab.cone("WHYP", n)?;
    let dw = lab.cone("dWMET", n)?;
    let zp = lab.cone("01-PMET", n)?;
    let ph = lab.cone("PHYP", n)?;
    let pm = lab.cone("PMET", n)?;
    let mut out = vec![
        inclusion(G, &z, &wh, n >= 5),
        inclusion(G, &wh, &dw, true),
        inclusion(G, &zp, &ph, n >= 4),
        inclusion(G, &ph, &pm, n >= 4),
    ];
    let family = b_family(n, B_BOUND, &[0, 1]);
    // Hyp_b on P^{-1} of a partial multicut
    let mut bad = None;
    'pm: for pp in partial_partitions(n) {
        let x = p_inv(&crate::generators::partial_multicut(&pp), n)?;
        for b in &family {
            let s = b.sigma();
            let want: i64 = pp
                .parts
                .blocks()
                .iter()
                .map(|blk| {
                    let r = b.mass(blk);
                    r * (r - 1)
                })
                .sum::<i64>()
                - s * (s - 1);
            if hyp_vector(b, false).dot(&x)? != BigInt::from(want) {
                bad = Some(format!("b = {b}, S_0 = {:?}", pp.s0));
                break 'pm;
            }
        }
    }
    out.push(Check::holds(
        G,
        format!("Hyp_b on partial multicuts of V_{n} = sum r_h(r_h - 1) - s(s - 1)"),
        bad.is_none(),
        bad.unwrap_or_default(),
    ));
    // Hyp'_b on the four 0,1-dWMET families
    let fam = dw_families(n)?;
    let mut bad = None;
    'dw: for b in &family {
        let s = b.sigma();
        let h = hyp_vector(b, true);
        if h.dot(&fam.ones)? != BigInt::from((s + 1) * s) {
            bad = Some(format!("b = {b} on ((0);1)"));
            break;
        }
        for (k, (set, _)) in cut_vectors(n).into_iter().enumerate() {
            let r = b.mass(&set);
            let vals = [r * (r - s), r * (r + 1), (s - r) * (s - r + 1)];
            for (v, want) in [&fam.zero_w[k], &fam.w_in[k], &fam.w_out[k]].into_iter().zip(vals) {
                if h.dot(v)? != BigInt::from(want) {
                    bad = Some(format!("b = {b} on {}", show(v)));
                    break 'dw;
                }
            }
        }
    }
    out.push(Check::holds(
        G,
        format!("Hyp'_b on the 0,1-dWMET_{n} rays matches the closed forms"),
        bad.is_none(),
        bad.unwrap_or_default(),
    ));
    Ok(out)
}

fn padded(b: &[i64], n: usize) -> Option<BCoeffs> {
    (b.len() <= n).then(|| BCoeffs::new(b.to_vec()).zero_extended(n - b.len()))
}

fn whyp_facets(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let wh = lab.cone("WHYP", n)?;
    let hyp: [&[i64]; 3] = [&[1, -1], &[1, 1, -1], &[1, 1, -1, -1]];
    let hyp1: [&[i64]; 4] = [&[1], &[1, 1, -1], &[1, 1, 1, -2], &[2, 1, -1, -1]];
    let mut listed = Vec::new();
    for (bs, primed) in [(&hyp[..], false), (&hyp1[..], true)] {
        for b in bs.iter().filter_map(|b| padded(b, n)) {
            listed.push(norm(&hyp_vector(&b, primed)));
        }
    }
    let exp = orbit_canon_set(&wh, &listed)?;
    let got = orbit_canon_set(&wh, wh.facets())?;
    Ok(vec![same_sets(G, format!("facet orbits of WHYP_{n} = listed Hyp_b, Hyp'_b"), &exp, &got)])
}

fn phyp_facets(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let ph = lab.cone("PHYP", n)?;
    let pd = space(SpaceKind::Psym, n).dim();
    let list: [&[i64]; 6] = [&[1, -1], &[1, 1, -1], &[1, 1, -1, -1], &[1, 1, 1, -1, -1], &[1, 1, 1, -1, -2], &[2, 1, 1, -1, -1]];
    let mut out = Vec::new();
    let mut listed = Vec::new();
    for b in list.iter().filter_map(|b| padded(b, n)) {
        let f = norm(&pull_back(&hyp_vector(&b, false), pd, |p| p_inv(p, n))?);
        let facet = ph.desc.facet_index(&f).is_some();
        let valid = ph.rays().iter().all(|r| f.dot(r).is_ok_and(|x| x >= BigInt::zero()));
        out.push(Check::holds(
            G,
            format!("Hyp_({b}) defines a facet of PHYP_{n}"),
            facet,
            if facet {
                String::new()
            } else if valid {
                "valid, not a facet".into()
            } else {
                "not valid on PHYP".into()
            },
        ));
        listed.push(f);
    }
    let ps = space(SpaceKind::Psym, n);
    listed.extend((1..=n).map(|i| IntVec::unit(pd, ps.idx(Coord::Diag(i)))));
    let covered = orbit_canon_set(&ph, &listed)?;
    let all = orbit_canon_set(&ph, ph.facets())?;
    let rest: Vec<&IntVec> = all.difference(&covered).collect();
    // which defining b, if any, gives each orbit missed by the list
    let mut found = Vec::new();
    for b in b_family(n, B_BOUND, &[0, 1]) {
        let f = norm(&pull_back(&hyp_vector(&b, false), pd, |p| p_inv(p, n))?);
        if let Some(c) = orbit_canon_set(&ph, std::slice::from_ref(&f))?.into_iter().next() {
            if rest.contains(&&c) && !found.iter().any(|(x, _)| *x == c) {
                found.push((c, b.to_string()));
            }
        }
    }
    let named: Vec<String> = found.iter().map(|(_, b)| format!("Hyp_{b}")).collect();
    out.push(Check::new(G, format!("facet orbits of PHYP_{n} outside the list"), Status::New).with_note(format!(
        "{} of {}; given by {}",
        rest.len(),
        all.len(),
        if named.is_empty() { "-".to_string() } else { named.join(", ") }
    )));
    Ok(out)
}

// ------------------------------------------------------ reversal stability

/// `⟨f, q⟩ = ⟨f, q^T⟩` on every ray of `c`.
fn rs_on(c: &Computed, f: &IntVec) -> Result<bool> {
    let s = c.model.space;
    for r in c.rays() {
        if f.dot(r)? != f.dot(&transpose(r, s)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_span(a: &[IntVec], b: &[IntVec]) -> bool {
    let ra = rank(a);
    let both: Vec<IntVec> = a.iter().chain(b).cloned().collect();
    ra == rank(b) && rank(&both) == ra
}

fn quasi_equalities(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let eqs = wqmet_equalities(n);
    let dim = binomial(n as u64 - 1, 2) as usize;
    let mut out = vec![Check::compare(G, format!("rank of the E_ijk on {n} points = C(n-1,2)"), dim, rank(&eqs))];
    if n > 5 {
        return Ok(out);
    }
    for name in ["WQMET", "OCUT"] {
        let c = lab.cone(name, n)?;
        out.push(Check::holds(
            G,
            format!("equality space of {name}_{n} is spanned by the E_ijk"),
            same_span(&eqs, &c.desc.equalities),
            "",
        ));
        let mut all_rs = true;
        for e in &eqs {
            all_rs &= rs_on(&c, e)?;
        }
        out.push(Check::holds(G, format!("every E_ijk is reversal-stable on {name}_{n}"), all_rs, ""));
        let mut closed = true;
        let mut iff = None;
        for f in c.facets() {
            let rs = rs_on(&c, f)?;
            if rs {
                for e in &eqs {
                    closed &= rs_on(&c, &f.add(e)?)?;
                }
            }
            let sym = transpose(f, c.model.space)? == *f;
            if rs != sym && iff.is_none() {
                iff = Some(show(f));
            }
        }
        out.push(Check::holds(G, format!("rs facets of {name}_{n} stay rs after adding equalities"), closed, ""));
        out.push(Check::holds(
            G,
            format!("a facet of {name}_{n} is rs iff its canonical form is symmetric"),
            iff.is_none(),
            iff.unwrap_or_default(),
        ));
    }
    Ok(out)
}

fn quasi_facet_types(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let wq = lab.cone("WQMET", n)?;
    let mut wrong = None;
    let mut seen = (0, 0);
    for f in wq.facets() {
        let label = wq.model.label_of(f, &wq.desc).unwrap_or_default();
        let rs = rs_on(&wq, f)?;
        let want = if label.starts_with("OTr") {
            seen.0 += 1;
            true
        } else if label.starts_with("L_") {
            seen.1 += 1;
            false
        } else {
            wrong.get_or_insert(format!("unlabelled facet {}", show(f)));
            continue;
        };
        if rs != want {
            wrong.get_or_insert(format!("{label} rs = {rs}"));
        }
    }
    let mut out = vec![Check::holds(
        G,
        format!("OTr facets of WQMET_{n} are rs, L facets are not"),
        wrong.is_none(),
        wrong.unwrap_or_else(|| format!("{} OTr, {} L", seen.0, seen.1)),
    )];
    if n == 3 {
        return Ok(out);
    }
    let oc = lab.cone("OCUT", n)?;
    let grp = oc.group()?;
    let old: BTreeSet<IntVec> = if n == 4 {
        let fs: Vec<IntVec> = wq.facets().to_vec();
        orbit_canon_set(&oc, &fs)?
    } else {
        let prev = lab.cone("OCUT", n - 1)?;
        let ps = space(SpaceKind::Quasi, n - 1);
        let ext: Vec<IntVec> = prev.facets().iter().map(|f| zero_extension(f, ps)).collect::<Result<_>>()?;
        orbit_canon_set(&oc, &ext)?
    };
    let orbits = oc.facet_orbits()?;
    let mut new = Vec::new();
    for o in &orbits.orbits {
        let canon = grp.canonical(&o.representative, Action::Facet)?;
        if !old.contains(&canon) {
            new.push((o.representative.clone(), o.size, rs_on(&oc, &o.representative)?));
        }
    }
    let desc: Vec<String> =
        new.iter().map(|(r, s, rs)| format!("{} size {s}{}", show(r), if *rs { " rs" } else { "" })).collect();
    if n == 4 {
        let neg = arc_vec(4, |i, j| match (i, j) {
            (1, 3) | (1, 4) | (2, 3) | (2, 4) => 1,
            (1, 2) | (3, 4) => -1,
            _ => 0,
        });
        let shape = new.len() == 1 && new[0].1 == 6 && !new[0].2;
        out.push(Check::holds(G, "OCUT_4 adds one orbit of 6 non-rs facets", shape, desc.join("; ")));
        let orbit = new.first().map(|x| grp.canonical(&x.0, Action::Facet)).transpose()?;
        let in_orbit = |v: &IntVec| -> Result<bool> {
            Ok(match oc.canonical(v) {
                Some(c) => oc.desc.facet_index(&c).is_some() && Some(grp.canonical(&c, Action::Facet)?) == orbit,
                None => false,
            })
        };
        let min = oc.rays().iter().map(|r| neg.dot(r)).collect::<Result<Vec<_>>>()?.into_iter().min();
        out.push(Check::holds(
            G,
            "q13+q14+q23+q24-q12-q34 >= 0 is in the extra OCUT_4 orbit",
            in_orbit(&neg)?,
            format!("minimum on the rays {}", min.map_or("-".into(), |m| m.to_string())),
        ));
        // -sum b_i b_j q_a(ij) for b = (1,1,-1,-1) under each orientation of K_4
        let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        let b = [1i64, 1, -1, -1];
        let mut hits = Vec::new();
        for mask in 0u32..64 {
            let arcs: Vec<(usize, usize)> =
                pairs.iter().enumerate().map(|(k, &(i, j))| if mask >> k & 1 == 0 { (i, j) } else { (j, i) }).collect();
            let v = arc_vec(4, |i, j| arcs.iter().find(|&&a| a == (i, j)).map_or(0, |_| -b[i - 1] * b[j - 1]));
            if in_orbit(&v)? {
                hits.push(arcs.iter().map(|(i, j)| format!("{i}{j}")).collect::<Vec<_>>().join(" "));
            }
        }
        out.push(Check::holds(
            G,
            "the extra OCUT_4 orbit is oriented negative type for b = (1,1,-1,-1)",
            !hits.is_empty(),
            format!("{} of 64 orientations, e.g. {}", hits.len(), hits.first().cloned().unwrap_or_default()),
        ));
    } else {
        let rs_new: Vec<&(IntVec, usize, bool)> = new.iter().filter(|x| x.2).collect();
        let h = symmetric_hyp_quasi(&BCoeffs::new(vec![1, 1, 1, -1, -1]));
        let target = oc.canonical(&h).map(|c| grp.canonical(&c, Action::Facet)).transpose()?;
        let rs_ok = rs_new.len() == 1 && target == Some(grp.canonical(&rs_new[0].0, Action::Facet)?);
        out.push(Check::compare(G, "new facet orbits of OCUT_5".to_string(), 3, new.len()).with_note(desc.join("; ")));
        out.push(Check::holds(G, "exactly one new OCUT_5 orbit is rs, of type b = (1,1,1,-1,-1)", rs_ok, ""));
    }
    Ok(out)
}
