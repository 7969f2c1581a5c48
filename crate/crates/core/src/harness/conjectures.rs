//! Open statements about skeleton and ridge graphs, probed on small cases.
//! A probe reports `consistent` or `refuted` with a labelled witness.

use std::collections::{BTreeMap, BTreeSet};

use super::{show, Check, Computed, Lab, Report, Status};
use crate::catalog::ConeId;
use crate::error::{Error, Result};
use crate::exactla::IntVec;
use crate::generators::{cuts, stirling2, with_weights};
use crate::graphs::{check_pattern, FaceGraph, Pattern};
use crate::spaces::{pull_back, symmetrize, Space, SpaceKind};

const G: &str = "conjectures";

/// One probe: a name, the statement, and the point counts it runs on.
pub struct Probe {
    pub name: &'static str,
    pub about: &'static str,
    pub ns: &'static [usize],
    pub run: fn(&Lab, usize) -> Result<Vec<Check>>,
}

pub fn conjecture_probes() -> Vec<Probe> {
    const NS: &[usize] = &[4, 5];
    vec![
        Probe {
            name: "ocut-skeleton",
            about: "Sk(OCUT_n) is complete on 2S(n,2) vertices and a subgraph of Sk(WQMET_n)",
            ns: NS,
            run: ocut_skeleton,
        },
        Probe {
            name: "quasi-graph-chains",
            about: "Sk(OCUT) ⊆ Sk(0,1-WQMET) ⊆ Sk(WQMET) and Ri(0,1-WQMET) ⊇ Ri(WQMET) ⊇ Ri(MET)",
            ns: NS,
            run: quasi_chains,
        },
        Probe {
            name: "down-weighted-skeleton",
            about: "the complement of Sk(0,1-dWMET_n) is a star plus a matching; diameter 2",
            ns: NS,
            run: down_weighted_skeleton,
        },
        Probe {
            name: "partial-ridge-graph",
            about: "Ri(PMET_n) has diameter 2 and the listed non-adjacencies",
            ns: NS,
            run: partial_ridge,
        },
        Probe {
            name: "quasi-ridge-graph",
            about: "Ri(WQMET_n) has diameter 2 and is Ri(PMET_n) without the L_ii vertices",
            ns: NS,
            run: quasi_ridge,
        },
    ]
}

pub fn verify_conjectures(lab: &Lab) -> Report {
    let mut out = Vec::new();
    for p in conjecture_probes() {
        for &n in p.ns {
            let checks = (p.run)(lab, n).unwrap_or_else(|e| vec![Check::failed(G, format!("{} n={n}", p.name), &e)]);
            out.extend(checks.into_iter().map(|mut c| {
                c.group = format!("{G}/{}", p.name);
                c
            }));
        }
    }
    out.into_iter().collect()
}

fn probe(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    let status = if ok { Status::Consistent } else { Status::Refuted };
    let detail = detail.into();
    let c = Check::new(G, name, status);
    if !ok {
        c.with_note(format!("witness: {}", detail.trim()))
    } else if detail.is_empty() {
        c
    } else {
        c.with_note(detail)
    }
}

/// Edges of `small` mapped into `big` by `pos`. Returns the first pair that
/// is missing in `big`, and whether the map is also induced.
fn edge_subgraph(small: &FaceGraph, big: &FaceGraph, pos: &[usize]) -> (Option<(usize, usize)>, bool) {
    let missing = small.edges().into_iter().find(|&(u, v)| !big.has_edge(pos[u], pos[v]));
    let mut induced = true;
    for u in 0..small.len() {
        for v in u + 1..small.len() {
            if !small.has_edge(u, v) && big.has_edge(pos[u], pos[v]) {
                induced = false;
            }
        }
    }
    (missing, induced)
}

fn ray_positions(small: &Computed, big: &Computed) -> std::result::Result<Vec<usize>, String> {
    small
        .rays()
        .iter()
        .map(|r| big.desc.ray_index(r).ok_or_else(|| format!("{} is not a ray of {}", show(r), big.name())))
        .collect()
}

fn facet_positions(
    small: &Computed,
    big: &Computed,
    map: impl Fn(&IntVec) -> Result<IntVec>,
) -> Result<std::result::Result<Vec<usize>, String>> {
    let mut out = Vec::new();
    for f in small.facets() {
        let g = map(f)?;
        match big.canonical(&g).and_then(|c| big.desc.facet_index(&c)) {
            Some(k) => out.push(k),
            None => return Ok(Err(format!("{} is not a facet of {}", show(f), big.name()))),
        }
    }
    Ok(Ok(out))
}

fn chain_check(
    name: String,
    small: &FaceGraph,
    big: &FaceGraph,
    pos: std::result::Result<Vec<usize>, String>,
    show_v: impl Fn(usize) -> String,
) -> Check {
    match pos {
        Err(why) => probe(name, false, why),
        Ok(pos) => {
            let (missing, induced) = edge_subgraph(small, big, &pos);
            let detail = match missing {
                Some((u, v)) => format!("edge {} - {} is lost", show_v(u), show_v(v)),
                None => format!("{}induced", if induced { "" } else { "not " }),
            };
            probe(name, missing.is_none(), detail)
        }
    }
}

fn ocut_skeleton(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let oc = lab.cone("OCUT", n)?;
    let wq = lab.cone("WQMET", n)?;
    let sk = oc.skeleton();
    let verts = 2 * stirling2(n as u64, 2) as usize;
    let c = check_pattern(sk, &Pattern::Complete);
    let w = c.witness.map_or(String::new(), |(u, v)| format!("{} / {}", show(&oc.rays()[u]), show(&oc.rays()[v])));
    Ok(vec![
        probe(format!("Sk(OCUT_{n}) = K_{verts}"), c.holds && sk.len() == verts, format!("{} vertices {w}", sk.len())),
        chain_check(format!("Sk(OCUT_{n}) ⊆ Sk(WQMET_{n})"), sk, wq.skeleton(), ray_positions(&oc, &wq), |u| {
            show(&oc.rays()[u])
        }),
    ])
}

fn quasi_chains(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let oc = lab.cone("OCUT", n)?;
    let z = lab.cone("01-WQMET", n)?;
    let wq = lab.cone("WQMET", n)?;
    let met = lab.cone("MET", n)?;
    let qd = Space::new(SpaceKind::Quasi, n).dim();
    let sym = |f: &IntVec| pull_back(f, qd, |q| symmetrize(q, n));
    let id = |f: &IntVec| Ok(f.clone());
    Ok(vec![
        chain_check(format!("Sk(OCUT_{n}) ⊆ Sk(0,1-WQMET_{n})"), oc.skeleton(), z.skeleton(), ray_positions(&oc, &z), |u| {
            show(&oc.rays()[u])
        }),
        chain_check(format!("Sk(0,1-WQMET_{n}) ⊆ Sk(WQMET_{n})"), z.skeleton(), wq.skeleton(), ray_positions(&z, &wq), |u| {
            show(&z.rays()[u])
        }),
        chain_check(format!("Ri(WQMET_{n}) ⊆ Ri(0,1-WQMET_{n})"), wq.ridge(), z.ridge(), facet_positions(&wq, &z, id)?, |u| {
            show(&wq.facets()[u])
        }),
        chain_check(format!("Ri(MET_{n}) ⊆ Ri(WQMET_{n})"), met.ridge(), wq.ridge(), facet_positions(&met, &wq, sym)?, |u| {
            show(&met.facets()[u])
        }),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum DwRay {
    Ones,
    ZeroWeight(usize),
    Inside(usize),
    Outside(usize),
}

fn down_weighted_skeleton(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let z = lab.get(ConeId::parse("01-dWMET")?, n)?;
    let zero = IntVec::zeros(Space::new(SpaceKind::Sym, n).dim());
    let mut kind: BTreeMap<IntVec, DwRay> = BTreeMap::new();
    kind.insert(with_weights(&zero, &vec![1; n])?, DwRay::Ones);
    for (k, (s, d)) in cuts(n).into_iter().filter(|(_, d)| !d.is_zero()).enumerate() {
        let ind = |inside: bool| (1..=n).map(|i| i64::from(s.contains(&i) == inside)).collect::<Vec<_>>();
        kind.insert(with_weights(&d, &vec![0; n])?, DwRay::ZeroWeight(k));
        kind.insert(with_weights(&d, &ind(true))?, DwRay::Inside(k));
        kind.insert(with_weights(&d, &ind(false))?, DwRay::Outside(k));
    }
    let types: Vec<DwRay> = z
        .rays()
        .iter()
        .map(|r| kind.get(r).copied().ok_or_else(|| Error::Inconsistent(format!("unexpected ray {}", show(r)))))
        .collect::<Result<_>>()?;
    let sk = z.skeleton();
    let star = check_pattern(sk, &Pattern::ComplementStarPlusMatching);
    let rule = |u: usize, v: usize| {
        use DwRay::*;
        matches!((types[u], types[v]), (Ones, ZeroWeight(_)) | (ZeroWeight(_), Ones))
            || matches!((types[u], types[v]), (Inside(a), Outside(b)) | (Outside(a), Inside(b)) if a == b)
    };
    let non = check_pattern(sk, &Pattern::NonAdjacency(&rule));
    let wit =
        |w: Option<(usize, usize)>| w.map_or(String::new(), |(u, v)| format!("{} / {}", show(&z.rays()[u]), show(&z.rays()[v])));
    Ok(vec![
        probe(
            format!("complement of Sk(0,1-dWMET_{n}) is a star plus a matching"),
            star.holds,
            format!("{} {}", star.note, wit(star.witness)),
        ),
        probe(format!("D(Sk(0,1-dWMET_{n})) = 2"), sk.diameter()? == 2, format!("diameter {}", sk.diameter()?)),
        probe(
            format!("Sk(0,1-dWMET_{n}) non-edges: ((0);1) with (δ(S);0), and (δ(S);1_S) with (δ(S);1_S̄)"),
            non.holds,
            format!("{} {}", non.note, wit(non.witness)),
        ),
    ])
}

/// Facet labels of a computed cone, parsed into kind and point indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum FacetLabel {
    /// `L_ii`
    Diag(usize),
    /// `M_ij` in PMET, `L_ij` in WQMET.
    Arc(usize, usize),
    /// `Tr_{ij,k}` / `OTr_{ij,k}`.
    Tri(usize, usize, usize),
}

fn digits(s: &str) -> Vec<usize> {
    s.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect()
}

fn parse_label(l: &str) -> Option<FacetLabel> {
    let d = digits(l);
    if l.starts_with("Tr_") || l.starts_with("OTr_") {
        return (d.len() == 3).then(|| FacetLabel::Tri(d[0], d[1], d[2]));
    }
    match (l.split('_').next()?, d.as_slice()) {
        ("L", [i, j]) if i == j => Some(FacetLabel::Diag(*i)),
        ("M" | "L", [i, j]) => Some(FacetLabel::Arc(*i, *j)),
        _ => None,
    }
}

fn labels(c: &Computed) -> Result<Vec<FacetLabel>> {
    c.facets()
        .iter()
        .map(|f| {
            let l = c.model.label_of(f, &c.desc).unwrap_or_default();
            parse_label(&l).ok_or_else(|| Error::Inconsistent(format!("{}: facet {} has label `{l}`", c.name(), show(f))))
        })
        .collect()
}

fn label_text(l: &FacetLabel, quasi: bool) -> String {
    match (l, quasi) {
        (FacetLabel::Diag(i), _) => format!("L_{i}{i}"),
        (FacetLabel::Arc(i, j), false) => format!("M_{i}{j}"),
        (FacetLabel::Arc(i, j), true) => format!("L_{i}{j}"),
        (FacetLabel::Tri(i, j, k), false) => format!("Tr_{{{i}{j},{k}}}"),
        (FacetLabel::Tri(i, j, k), true) => format!("OTr_{{{i}{j},{k}}}"),
    }
}

/// Coefficients of `Tr_{ij,k}` on `p_ik + p_kj - p_ij - p_kk`, keyed by
/// unordered position.
fn tr_signs(i: usize, j: usize, k: usize) -> BTreeMap<(usize, usize), i64> {
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    BTreeMap::from([(key(i, k), 1), (key(k, j), 1), (key(i, j), -1), (key(k, k), -1)])
}

fn conflict(a: (usize, usize, usize), b: (usize, usize, usize), with_diag: bool) -> bool {
    let ta = [a.0, a.1, a.2];
    let common: Vec<usize> = ta.iter().copied().filter(|x| [b.0, b.1, b.2].contains(x)).collect();
    let (sa, sb) = (tr_signs(a.0, a.1, a.2), tr_signs(b.0, b.1, b.2));
    sa.iter().any(|(&(p, q), &x)| {
        (with_diag || p != q) && common.contains(&p) && common.contains(&q) && sb.get(&(p, q)).is_some_and(|&y| y != x)
    })
}

/// The listed non-adjacencies of `Ri(PMET_n)`.
fn pmet_non_adjacent(a: &FacetLabel, b: &FacetLabel, with_diag: bool) -> bool {
    use FacetLabel::*;
    let one_way = |a: &FacetLabel, b: &FacetLabel| match (a, b) {
        (Diag(i), Arc(p, _)) => i == p,
        (Arc(i, j), Arc(p, q)) => (p, q) == (j, i) || q == i || p == j,
        (Arc(i, j), Tri(p, q, _)) => (i.min(j), i.max(j)) == (p, q),
        (Tri(i, j, k), Tri(p, q, r)) => conflict((*i, *j, *k), (*p, *q, *r), with_diag),
        _ => false,
    };
    one_way(a, b) || one_way(b, a)
}

fn partial_ridge(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let pm = lab.cone("PMET", n)?;
    let ls = labels(&pm)?;
    let ri = pm.ridge();
    let d = ri.diameter()?;
    let mut out = vec![probe(format!("D(Ri(PMET_{n})) = 2"), d == 2, format!("diameter {d}"))];
    let mut verdicts = Vec::new();
    for with_diag in [false, true] {
        let rule = |u: usize, v: usize| pmet_non_adjacent(&ls[u], &ls[v], with_diag);
        let c = check_pattern(ri, &Pattern::NonAdjacency(&rule));
        let w = c.witness.map_or(String::new(), |(u, v)| {
            format!(": {} / {} ({})", label_text(&ls[u], false), label_text(&ls[v], false), c.note)
        });
        verdicts.push((with_diag, c.holds, w));
    }
    let (_, ok, w) = &verdicts[0];
    let alt = &verdicts[1];
    out.push(probe(format!("non-edges of Ri(PMET_{n}) are exactly the listed pairs"), *ok, w.clone()).with_note(format!(
        "{}; with diagonal positions in the conflict rule: {}{}",
        if *ok { "holds" } else { w.as_str() },
        if alt.1 { "holds" } else { "fails" },
        alt.2
    )));
    Ok(out)
}

fn quasi_ridge(lab: &Lab, n: usize) -> Result<Vec<Check>> {
    let wq = lab.cone("WQMET", n)?;
    let pm = lab.cone("PMET", n)?;
    let ri = wq.ridge();
    let d = ri.diameter()?;
    let wl = labels(&wq)?;
    let pl = labels(&pm)?;
    let mut out = vec![probe(format!("D(Ri(WQMET_{n})) = 2"), d == 2, format!("diameter {d}"))];
    let pos: BTreeMap<&FacetLabel, usize> = pl.iter().enumerate().map(|(k, l)| (l, k)).collect();
    let kept: BTreeSet<usize> =
        pl.iter().enumerate().filter(|(_, l)| !matches!(l, FacetLabel::Diag(_))).map(|(k, _)| k).collect();
    let image: std::result::Result<Vec<usize>, String> = wl
        .iter()
        .map(|l| pos.get(l).copied().ok_or_else(|| format!("{} has no PMET counterpart", label_text(l, true))))
        .collect();
    let check = match image {
        Err(why) => probe(format!("Ri(WQMET_{n}) = Ri(PMET_{n}) minus L_ii"), false, why),
        Ok(img) => {
            let distinct: BTreeSet<usize> = img.iter().copied().collect();
            if distinct != kept || img.len() != kept.len() {
                probe(
                    format!("Ri(WQMET_{n}) = Ri(PMET_{n}) minus L_ii"),
                    false,
                    format!("label map is not a bijection: {} WQMET facets, {} PMET facets besides L_ii", img.len(), kept.len()),
                )
            } else {
                let pr = pm.ridge();
                let mut bad = None;
                'o: for u in 0..img.len() {
                    for v in u + 1..img.len() {
                        if ri.has_edge(u, v) != pr.has_edge(img[u], img[v]) {
                            bad = Some((u, v));
                            break 'o;
                        }
                    }
                }
                let w = bad.map_or(String::new(), |(u, v)| {
                    format!(
                        "{} / {} adjacent in WQMET: {}",
                        label_text(&wl[u], true),
                        label_text(&wl[v], true),
                        ri.has_edge(u, v)
                    )
                });
                probe(format!("Ri(WQMET_{n}) = Ri(PMET_{n}) minus L_ii"), bad.is_none(), w)
            }
        }
    };
    out.push(check);
    Ok(out)
}
