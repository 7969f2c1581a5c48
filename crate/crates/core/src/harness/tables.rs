//! The parameter table and the orbit tables.

use num_traits::Signed;
use serde::Serialize;

use super::{norm, same_facet_orbit, show, span_dim, Check, Computed, Lab, Report, Status, ORBIT_TABLES, PARAMETERS};
use crate::catalog::ConeId;
use crate::error::{Error, Result};
use crate::exactla::IntVec;
use crate::spaces::Space;
use crate::symmetry::orbits;

const GROUP: &str = "table2";
const ORBITS: &str = "orbit-tables";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// Checked by default.
    Standard,
    /// Ray columns by default, the rest only in the extended tier.
    Rays,
    Extended,
}

/// One row of the parameter table; `None` marks a blank cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterRow {
    pub cone: ConeId,
    pub n: usize,
    pub tier: Tier,
    pub dim: Option<usize>,
    pub rays: Option<usize>,
    pub ray_orbits: Option<usize>,
    pub facets: Option<usize>,
    pub facet_orbits: Option<usize>,
    pub sk_diameter: Option<usize>,
    pub ri_diameter: Option<usize>,
}

impl ParameterRow {
    pub fn name(&self) -> String {
        format!("{}_{}", self.cone, self.n)
    }

    /// Matches `PMET`, `PMET_5` or `01-PMET_5`, case-insensitively.
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.trim().to_ascii_uppercase().replace("0,1-", "01-");
        f == self.name().to_ascii_uppercase() || f == self.cone.to_string().to_ascii_uppercase()
    }
}

fn cell(s: &str, line: usize) -> Result<Option<usize>> {
    if s == "-" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| Error::Parse { line, msg: format!("bad cell `{s}`") })
}

fn parse_parameters(text: &str) -> Result<Vec<ParameterRow>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 10 {
            return Err(Error::Parse { line: k + 1, msg: format!("expected 10 fields, got {}", f.len()) });
        }
        let tier = match f[2] {
            "std" => Tier::Standard,
            "rays" => Tier::Rays,
            "ext" => Tier::Extended,
            t => return Err(Error::Parse { line: k + 1, msg: format!("unknown tier `{t}`") }),
        };
        let row = ParameterRow {
            cone: ConeId::parse(f[0])?,
            n: f[1].parse().map_err(|_| Error::Parse { line: k + 1, msg: "bad n".into() })?,
            tier,
            dim: cell(f[3], k + 1)?,
            rays: cell(f[4], k + 1)?,
            ray_orbits: cell(f[5], k + 1)?,
            facets: cell(f[6], k + 1)?,
            facet_orbits: cell(f[7], k + 1)?,
            sk_diameter: cell(f[8], k + 1)?,
            ri_diameter: cell(f[9], k + 1)?,
        };
        out.push(row);
    }
    Ok(out)
}

/// The embedded parameter table.
pub fn parameter_rows() -> Vec<ParameterRow> {
    parse_parameters(PARAMETERS).expect("embedded parameter table parses")
}

/// One computed value against a possibly blank cell.
fn field(name: &str, what: &str, expected: Option<usize>, got: Result<usize>, provenance: &str) -> Check {
    let label = format!("{name} {what}");
    match (expected, got) {
        (Some(e), Ok(g)) => Check::compare(GROUP, label, e, g),
        (None, Ok(g)) => Check { got: Some(g.to_string()), ..Check::new(GROUP, label, Status::New) }.with_note(provenance),
        (_, Err(e)) => Check::failed(GROUP, label, &e),
    }
}

fn deferred(name: &str, what: &str, expected: Option<usize>) -> Check {
    Check { expected: expected.map(|e| e.to_string()), ..Check::new(GROUP, format!("{name} {what}"), Status::Deferred) }
        .with_note("extended tier")
}

const COLUMNS: [&str; 7] = ["dim", "rays", "ray orbits", "facets", "facet orbits", "Sk diameter", "Ri diameter"];

fn expected_cells(row: &ParameterRow) -> [Option<usize>; 7] {
    [row.dim, row.rays, row.ray_orbits, row.facets, row.facet_orbits, row.sk_diameter, row.ri_diameter]
}

fn full_row(c: &Computed, row: &ParameterRow) -> Vec<Check> {
    let name = row.name();
    let provenance = format!("{name}, double description, {:.2}s", c.elapsed.as_secs_f64());
    let exp = expected_cells(row);
    let got: [Result<usize>; 7] = [
        Ok(c.desc.dim()),
        Ok(c.rays().len()),
        c.ray_orbits().map(|o| o.len()),
        Ok(c.facets().len()),
        c.facet_orbits().map(|o| o.len()),
        c.skeleton().diameter(),
        c.ridge().diameter(),
    ];
    let mut out: Vec<Check> = COLUMNS.iter().zip(exp).zip(got).map(|((w, e), g)| field(&name, w, e, g, &provenance)).collect();
    if let Ok(Some((r, f))) = c.reversal_orbit_counts() {
        let note = format!("Z2 x Sym({}) gives {r} ray and {f} facet orbits", row.n);
        out[2] = out[2].clone().with_note(note);
    }
    out
}

fn rays_row(lab: &Lab, row: &ParameterRow) -> Vec<Check> {
    let name = row.name();
    let exp = expected_cells(row);
    let start = crate::Stopwatch::start();
    let computed = lab.rays_only(row.cone, row.n).and_then(|rays| {
        let model = crate::catalog::build_id(row.cone, row.n)?;
        let orb = orbits(&rays, model.symmetry, model.space)?;
        let rev = match model.space.kind {
            crate::spaces::SpaceKind::Quasi => {
                let d = crate::symmetry::SymmetryDescriptor::new(crate::symmetry::SymmetryKind::SymNxReversal, row.n);
                Some(orbits(&rays, d, model.space)?.len())
            }
            _ => None,
        };
        Ok((span_dim(&rays), rays.len(), orb.len(), rev))
    });
    let provenance = format!("{name}, extreme 0,1 points, {:.2}s", start.elapsed().as_secs_f64());
    let mut out = Vec::new();
    match computed {
        Ok((d, r, o, rev)) => {
            out.push(field(&name, COLUMNS[0], exp[0], Ok(d), &provenance));
            out.push(field(&name, COLUMNS[1], exp[1], Ok(r), &provenance));
            let mut c = field(&name, COLUMNS[2], exp[2], Ok(o), &provenance);
            if let Some(k) = rev {
                c = c.with_note(format!("Z2 x Sym({}) gives {k} ray orbits", row.n));
            }
            out.push(c);
        }
        Err(e) => {
            for w in &COLUMNS[..3] {
                out.push(Check::failed(GROUP, format!("{name} {w}"), &e));
            }
        }
    }
    for (w, e) in COLUMNS.iter().zip(exp).skip(3) {
        out.push(deferred(&name, w, e));
    }
    out
}

/// Diffs every selected row against a fresh computation. Rows outside the
/// requested tier are reported as deferred.
pub fn verify_table2(lab: &Lab, filter: Option<&str>, extended: bool) -> Report {
    let rows: Vec<ParameterRow> = parameter_rows().into_iter().filter(|r| filter.is_none_or(|f| r.matches(f))).collect();
    let per_row = crate::polyhedra::map_all(&rows, |row| {
        let name = row.name();
        match (row.tier, extended) {
            (Tier::Standard, _) | (_, true) => match lab.get(row.cone, row.n) {
                Ok(c) => full_row(&c, row),
                Err(e) => COLUMNS.iter().map(|w| Check::failed(GROUP, format!("{name} {w}"), &e)).collect(),
            },
            (Tier::Rays, false) => rays_row(lab, row),
            (Tier::Extended, false) => COLUMNS.iter().zip(expected_cells(row)).map(|(w, e)| deferred(&name, w, e)).collect(),
        }
    });
    per_row.into_iter().flatten().collect()
}

// ------------------------------------------------------------ orbit tables

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Rays,
    Facets,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRow {
    pub label: String,
    pub vector: IntVec,
    pub inc: usize,
    pub adj: usize,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitTable {
    pub cone: ConeId,
    pub n: usize,
    pub kind: TableKind,
    pub rows: Vec<OrbitRow>,
}

fn parse_orbit_tables(text: &str) -> Result<Vec<OrbitTable>> {
    let mut out: Vec<OrbitTable> = Vec::new();
    let bad = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let ln = k + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        match f[0] {
            "table" => {
                if f.len() != 4 {
                    return Err(bad(ln, "table header needs cone, n, kind"));
                }
                let kind = match f[3] {
                    "rays" => TableKind::Rays,
                    "facets" => TableKind::Facets,
                    _ => return Err(bad(ln, "kind must be rays or facets")),
                };
                let n = f[2].parse().map_err(|_| bad(ln, "bad n"))?;
                out.push(OrbitTable { cone: ConeId::parse(f[1])?, n, kind, rows: Vec::new() });
            }
            "coords" => {
                let t = out.last().ok_or_else(|| bad(ln, "coords before table"))?;
                let space = Space::new(t.cone.space_kind(), t.n);
                let labels: Vec<String> = f[1..].iter().map(|s| s.to_string()).collect();
                let want = space.labels();
                if labels != want {
                    return Err(bad(ln, &format!("coords {labels:?} differ from {want:?}")));
                }
            }
            _ => {
                let t = out.last_mut().ok_or_else(|| bad(ln, "row before table"))?;
                let (vec_part, stats) = line.split_once(';').ok_or_else(|| bad(ln, "missing `;`"))?;
                let mut words = vec_part.split_whitespace();
                let label = words.next().unwrap_or_default().to_string();
                let values: Vec<i64> = words.map(|w| w.parse().map_err(|_| bad(ln, "bad entry"))).collect::<Result<_>>()?;
                let s: Vec<usize> =
                    stats.split_whitespace().map(|w| w.parse().map_err(|_| bad(ln, "bad statistic"))).collect::<Result<_>>()?;
                if s.len() != 3 {
                    return Err(bad(ln, "need Inc, Adj and orbit size"));
                }
                t.rows.push(OrbitRow { label, vector: IntVec::from_i64s(&values), inc: s[0], adj: s[1], size: s[2] });
            }
        }
    }
    Ok(out)
}

/// The embedded orbit tables.
pub fn orbit_tables() -> Vec<OrbitTable> {
    parse_orbit_tables(ORBIT_TABLES).expect("embedded orbit tables parse")
}

struct Located {
    inc: usize,
    adj: usize,
    size: usize,
    orbit: usize,
}

fn locate(c: &Computed, kind: TableKind, v: &IntVec) -> Result<Option<Located>> {
    let (index, orbs) = match kind {
        TableKind::Rays => (c.desc.ray_index(v), c.ray_orbits()?),
        TableKind::Facets => (c.desc.facet_index(v), c.facet_orbits()?),
    };
    let Some(index) = index else { return Ok(None) };
    let orbit = orbs.orbit_of()[index];
    let (inc, adj) = match kind {
        TableKind::Rays => (c.desc.ray_facets[index].count(), c.skeleton().degree(index)),
        TableKind::Facets => (c.desc.facet_rays[index].count(), c.ridge().degree(index)),
    };
    Ok(Some(Located { inc, adj, size: orbs.orbits[orbit].size, orbit }))
}

fn check_table(lab: &Lab, t: &OrbitTable) -> Result<Vec<Check>> {
    let c = lab.get(t.cone, t.n)?;
    let what = match t.kind {
        TableKind::Rays => "rays",
        TableKind::Facets => "facets",
    };
    let tname = format!("{}_{} {what}", t.cone, t.n);
    let orbs = match t.kind {
        TableKind::Rays => c.ray_orbits()?,
        TableKind::Facets => c.facet_orbits()?,
    };
    let mut out = vec![Check::compare(ORBITS, format!("{tname}: orbit count"), t.rows.len(), orbs.len())];
    let mut seen = Vec::new();
    for row in &t.rows {
        let label = format!("{tname} {}", row.label);
        match locate(&c, t.kind, &row.vector)? {
            None => out.push(Check::holds(ORBITS, label, false, format!("{} is not a {what} element", show(&row.vector)))),
            Some(l) => {
                let exp = format!("Inc {} Adj {} |O| {}", row.inc, row.adj, row.size);
                let got = format!("Inc {} Adj {} |O| {}", l.inc, l.adj, l.size);
                out.push(Check::compare(ORBITS, label, exp, got));
                seen.push(l.orbit);
            }
        }
    }
    let mut distinct = seen.clone();
    distinct.sort_unstable();
    distinct.dedup();
    out.push(Check::holds(
        ORBITS,
        format!("{tname}: rows lie in distinct orbits"),
        distinct.len() == seen.len(),
        format!("{} rows, {} orbits", seen.len(), distinct.len()),
    ));
    Ok(out)
}

/// The orbit of the ray `v` inside `c`, as vectors.
fn orbit_members(c: &Computed, v: &IntVec) -> Result<Vec<IntVec>> {
    let orbs = c.ray_orbits()?;
    let idx = c.desc.ray_index(v).ok_or_else(|| Error::NotARay(show(v)))?;
    let o = orbs.orbit_of()[idx];
    Ok(orbs.orbits[o].members.iter().map(|&m| c.desc.rays[m].clone()).collect())
}

/// Each ray of `rays` violates exactly one facet of `sub`; the violated
/// facets are distinct and form the orbit of `facet`.
/// Kuhn's augmenting-path matching; `adj[i]` lists the columns row `i` may take.
fn perfect_matching(adj: &[Vec<usize>], cols: usize) -> bool {
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; cols];
    (0..adj.len()).all(|i| augment(i, adj, &mut vec![false; cols], &mut owner))
}

/// Each ray is cut off by its own facet from the orbit of `facet`.
fn removal(lab: &Lab, rays: &[IntVec], facet: &IntVec, what: &str) -> Result<Check> {
    let sub = lab.get(ConeId::ZeroOne(crate::catalog::Base::Pmet), 4)?;
    let target = sub.desc.facet_index(facet).ok_or_else(|| Error::NotAFacet(show(facet)))?;
    let forbs = sub.facet_orbits()?;
    let of = forbs.orbit_of();
    let orbit: Vec<usize> = (0..sub.facets().len()).filter(|&j| of[j] == of[target]).collect();
    let mut adj = Vec::new();
    let mut total = Vec::new();
    for r in rays {
        let neg = |f: &IntVec| f.dot(r).is_ok_and(|x| x.is_negative());
        adj.push(orbit.iter().enumerate().filter(|(_, &j)| neg(&sub.facets()[j])).map(|(k, _)| k).collect::<Vec<_>>());
        total.push(sub.facets().iter().filter(|f| neg(f)).count());
    }
    let per_ray: Vec<usize> = adj.iter().map(Vec::len).collect();
    let ok = rays.len() == orbit.len() && perfect_matching(&adj, orbit.len());
    Ok(Check::holds(
        ORBITS,
        what,
        ok,
        format!(
            "{} rays, orbit of {} has {} facets; violated in the orbit {per_ray:?}, in total {total:?}",
            rays.len(),
            show(facet),
            orbit.len()
        ),
    ))
}

fn pmet4_extras(lab: &Lab) -> Result<Vec<Check>> {
    let tables = orbit_tables();
    let rows = |cone: &str, kind: TableKind| -> Vec<OrbitRow> {
        tables
            .iter()
            .find(|t| t.cone.to_string() == cone && t.n == 4 && t.kind == kind)
            .map(|t| t.rows.clone())
            .unwrap_or_default()
    };
    let rays = rows("PMET", TableKind::Rays);
    let facets = rows("01-PMET", TableKind::Facets);
    let get = |rs: &[OrbitRow], l: &str| rs.iter().find(|r| r.label == l).map(|r| r.vector.clone());
    let (Some(r10), Some(r11), Some(f4), Some(f5)) =
        (get(&rays, "R_10"), get(&rays, "R_11"), get(&facets, "F_4"), get(&facets, "F_5"))
    else {
        return Err(Error::Inconsistent("PMET_4 table rows missing".into()));
    };
    let pmet = lab.cone("PMET", 4)?;
    let mut out = Vec::new();
    let o10 = orbit_members(&pmet, &r10)?;
    let o11 = orbit_members(&pmet, &r11)?;
    let values_012 = o10.iter().all(|v| v.0.iter().all(|x| !x.is_negative() && *x <= 2.into()))
        && o10.iter().all(|v| v.0.iter().any(|x| *x == 2.into()));
    out.push(Check::holds(
        ORBITS,
        "PMET_4 R_10 is 0,1,2-valued, orbit size 6",
        values_012 && o10.len() == 6,
        format!("size {}", o10.len()),
    ));
    let r11_exact = IntVec::from_i64s(&[0, 2, 0, 1, 1, 0, 2, 2, 3, 2]);
    out.push(Check::holds(
        ORBITS,
        "PMET_4 R_11 representative and orbit size 12",
        pmet.desc.ray_index(&r11_exact).is_some() && norm(&r11) == r11_exact && o11.len() == 12,
        format!("{} in orbit of size {}", show(&r11_exact), o11.len()),
    ));
    let zero_one = pmet.rays().iter().filter(|r| r.is_01()).count();
    out.push(Check::compare(ORBITS, "PMET_4 rays that are 0,1-valued", 62 - 6 - 12, zero_one));
    out.push(removal(lab, &o10, &f4, "R_10 rays removed by respective F_4 facets of 01-PMET_4")?);
    out.push(removal(lab, &o11, &f5, "R_11 rays removed by respective F_5 facets of 01-PMET_4")?);
    // F_4 is a hypermetric facet, F_5 is not among them
    let hyp = crate::hyper::hyp_vector(&crate::hyper::BCoeffs::new(vec![1, 1, -1, -1]), false);
    let hyp_p = crate::spaces::pull_back(&hyp, f4.len(), |p| crate::spaces::p_inv(p, 4))?;
    let sub = lab.get(ConeId::ZeroOne(crate::catalog::Base::Pmet), 4)?;
    let same = same_facet_orbit(&sub, &hyp_p, &f4)?;
    out.push(Check::holds(ORBITS, "F_4 is Hyp_(1,1,-1,-1) up to symmetry", same, show(&f4)));
    Ok(out)
}

/// Every row of the three orbit tables plus the non-0,1 rays of PMET_4.
pub fn verify_orbit_tables(lab: &Lab) -> Report {
    let tables = orbit_tables();
    let mut report = Report::default();
    let parts = crate::polyhedra::map_all(&tables, |t| check_table(lab, t));
    for (t, p) in tables.iter().zip(parts) {
        match p {
            Ok(cs) => cs.into_iter().for_each(|c| report.push(c)),
            Err(e) => report.push(Check::failed(ORBITS, format!("{}_{}", t.cone, t.n), &e)),
        }
    }
    match pmet4_extras(lab) {
        Ok(cs) => cs.into_iter().for_each(|c| report.push(c)),
        Err(e) => report.push(Check::failed(ORBITS, "PMET_4 non-0,1 orbits", &e)),
    }
    report
}
