//! Checks the computed cones against the tabulated parameters, the orbit
//! tables and the structural statements. Every check is an exact integer or
//! set comparison.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Duration;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::catalog::{build_id, ConeId, ConeModel};
use crate::error::{Error, Result};
use crate::exactla::{rank, IntVec, Orientation};
use crate::graphs::{FaceGraph, GraphKind};
use crate::polyhedra::{DdOptions, Description};
use crate::spaces::SpaceKind;
use crate::symmetry::{Action, Group, OrbitDecomposition, SymmetryDescriptor, SymmetryKind};

mod conjectures;
mod counts;
mod tables;
mod theorems;

pub use conjectures::{conjecture_probes, verify_conjectures};
pub use counts::verify_counts;
pub use tables::{orbit_tables, parameter_rows, verify_orbit_tables, verify_table2, OrbitTable, ParameterRow, Tier};
pub use theorems::{theorem_clauses, verify_clause, verify_theorems, Clause};

pub const PARAMETERS: &str = include_str!("../../data/parameters.txt");
pub const ORBIT_TABLES: &str = include_str!("../../data/orbit_tables.txt");

// ------------------------------------------------------------------ report

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Budget exhausted before the value was known.
    Skipped,
    /// Belongs to the extended tier, which was not requested.
    Deferred,
    /// No expected value; the computed value is reported as found.
    New,
    Consistent,
    Refuted,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::Deferred => "DEFER",
            Status::New => "NEW",
            Status::Consistent => "CONSISTENT",
            Status::Refuted => "REFUTED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub group: String,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub got: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(group: &str, name: impl Into<String>, status: Status) -> Check {
        Check { group: group.to_string(), name: name.into(), status, expected: None, got: None, note: None }
    }

    /// Pass iff `expected == got`.
    pub fn compare<T: PartialEq + fmt::Display>(group: &str, name: impl Into<String>, expected: T, got: T) -> Check {
        let status = if expected == got { Status::Pass } else { Status::Fail };
        Check { expected: Some(expected.to_string()), got: Some(got.to_string()), ..Check::new(group, name, status) }
    }

    /// Pass iff `ok`; `detail` says what was observed.
    pub fn holds(group: &str, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        let status = if ok { Status::Pass } else { Status::Fail };
        let detail = detail.into();
        Check { got: (!detail.is_empty()).then_some(detail), ..Check::new(group, name, status) }
    }

    pub fn failed(group: &str, name: impl Into<String>, err: &Error) -> Check {
        let status = if is_budget(err) { Status::Skipped } else { Status::Fail };
        Check { note: Some(err.to_string()), ..Check::new(group, name, status) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        let note = note.into();
        if !note.is_empty() {
            self.note = Some(note);
        }
        self
    }

    pub fn passed(&self) -> bool {
        !matches!(self.status, Status::Fail | Status::Skipped)
    }
}

pub(crate) fn is_budget(err: &Error) -> bool {
    matches!(err, Error::ResourceLimit { .. } | Error::Budget(_))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub deferred: usize,
    pub new: usize,
    pub consistent: usize,
    pub refuted: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::Deferred => s.deferred += 1,
                Status::New => s.new += 1,
                Status::Consistent => s.consistent += 1,
                Status::Refuted => s.refuted += 1,
            }
        }
        s
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    /// 0 when nothing failed or was skipped, 1 on any failure, 2 when the
    /// only problems are budget skips.
    pub fn exit_code(&self) -> i32 {
        let s = self.summary();
        if s.fail > 0 {
            1
        } else if s.skipped > 0 {
            2
        } else {
            0
        }
    }

    pub fn render_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.group.len() + c.name.len() + 1).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let what = format!("{} {}", c.group, c.name);
            let mut line = format!("{:<10} {:<width$}", c.status.tag(), what);
            match (&c.expected, &c.got) {
                (Some(e), Some(g)) if e == g => line.push_str(&format!("  {g}")),
                (Some(e), Some(g)) => line.push_str(&format!("  expected {e}, got {g}")),
                (None, Some(g)) => line.push_str(&format!("  {g}")),
                (Some(e), None) => line.push_str(&format!("  expected {e}")),
                (None, None) => {}
            }
            if let Some(n) = &c.note {
                line.push_str(&format!("  [{n}]"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let s = self.summary();
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} new, {} skipped, {} deferred, {} consistent, {} refuted\n",
            s.pass, s.fail, s.new, s.skipped, s.deferred, s.consistent, s.refuted
        ));
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            summary: Summary,
            exit_code: i32,
            checks: &'a [Check],
        }
        let out = Out { summary: self.summary(), exit_code: self.exit_code(), checks: &self.checks };
        serde_json::to_string_pretty(&out).expect("report serializes")
    }
}

impl FromIterator<Check> for Report {
    fn from_iter<I: IntoIterator<Item = Check>>(iter: I) -> Self {
        Report { checks: iter.into_iter().collect() }
    }
}

// --------------------------------------------------------------------- lab

/// A cone with its double description and lazily derived data.
pub struct Computed {
    pub model: ConeModel,
    pub desc: Description,
    pub elapsed: Duration,
    group: OnceLock<Group>,
    skeleton: OnceLock<FaceGraph>,
    ridge: OnceLock<FaceGraph>,
    ray_orbits: OnceLock<OrbitDecomposition>,
    facet_orbits: OnceLock<OrbitDecomposition>,
}

impl Computed {
    pub fn new(model: ConeModel, desc: Description, elapsed: Duration) -> Self {
        Computed {
            model,
            desc,
            elapsed,
            group: OnceLock::new(),
            skeleton: OnceLock::new(),
            ridge: OnceLock::new(),
            ray_orbits: OnceLock::new(),
            facet_orbits: OnceLock::new(),
        }
    }

    pub fn name(&self) -> String {
        self.model.name()
    }

    pub fn n(&self) -> usize {
        self.model.n
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.desc.rays
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.desc.facets
    }

    pub fn group(&self) -> Result<&Group> {
        if let Some(g) = self.group.get() {
            return Ok(g);
        }
        let g = Group::new(self.model.symmetry, self.model.space)?;
        Ok(self.group.get_or_init(|| g))
    }

    pub fn skeleton(&self) -> &FaceGraph {
        self.skeleton.get_or_init(|| FaceGraph::build(&self.desc, GraphKind::Skeleton))
    }

    pub fn ridge(&self) -> &FaceGraph {
        self.ridge.get_or_init(|| FaceGraph::build(&self.desc, GraphKind::Ridge))
    }

    pub fn ray_orbits(&self) -> Result<&OrbitDecomposition> {
        if let Some(o) = self.ray_orbits.get() {
            return Ok(o);
        }
        let o = self.group()?.orbits(&self.desc.rays, Action::Ray)?;
        Ok(self.ray_orbits.get_or_init(|| o))
    }

    pub fn facet_orbits(&self) -> Result<&OrbitDecomposition> {
        if let Some(o) = self.facet_orbits.get() {
            return Ok(o);
        }
        let o = self.group()?.orbits(&self.desc.facets, Action::Facet)?;
        Ok(self.facet_orbits.get_or_init(|| o))
    }

    /// Ray and facet orbit counts under `Z_2 x Sym(n)`, for quasi spaces.
    pub fn reversal_orbit_counts(&self) -> Result<Option<(usize, usize)>> {
        if self.model.space.kind != SpaceKind::Quasi {
            return Ok(None);
        }
        let g = Group::new(SymmetryDescriptor::new(SymmetryKind::SymNxReversal, self.n()), self.model.space)?;
        Ok(Some((g.orbits(&self.desc.rays, Action::Ray)?.len(), g.orbits(&self.desc.facets, Action::Facet)?.len())))
    }

    /// Exact membership against the computed facets and equalities.
    pub fn contains(&self, v: &IntVec) -> bool {
        self.desc.equalities.iter().all(|e| e.dot(v).is_ok_and(|x| x.is_zero()))
            && self.desc.facets.iter().all(|f| f.dot(v).is_ok_and(|x| !x.is_negative()))
    }

    pub fn ray_set(&self) -> BTreeSet<IntVec> {
        self.desc.rays.iter().cloned().collect()
    }

    pub fn facet_set(&self) -> BTreeSet<IntVec> {
        self.desc.facets.iter().cloned().collect()
    }

    /// Canonical facet representative for this cone's equality space.
    pub fn canonical(&self, f: &IntVec) -> Option<IntVec> {
        self.desc.canonical_facet(f)
    }
}

type Slot = Arc<Mutex<Option<Arc<Computed>>>>;
type RayList = Arc<Vec<IntVec>>;

/// Memoizes cone computations. Concurrent requests for the same cone wait
/// for one computation; different cones run in parallel.
pub struct Lab {
    pub opts: DdOptions,
    /// One checkpoint file per cone, resumed when present.
    pub checkpoint_dir: Option<std::path::PathBuf>,
    slots: Mutex<HashMap<(ConeId, usize), Slot>>,
    rays: Mutex<HashMap<(ConeId, usize), RayList>>,
}

impl Default for Lab {
    fn default() -> Self {
        Lab::new(DdOptions::default())
    }
}

impl Lab {
    pub fn new(opts: DdOptions) -> Self {
        Lab { opts, checkpoint_dir: None, slots: Mutex::new(HashMap::new()), rays: Mutex::new(HashMap::new()) }
    }

    /// Process-wide lab with default options.
    pub fn global() -> &'static Lab {
        static LAB: OnceLock<Lab> = OnceLock::new();
        LAB.get_or_init(Lab::default)
    }

    pub fn get(&self, id: ConeId, n: usize) -> Result<Arc<Computed>> {
        let slot = {
            let mut m = self.slots.lock().unwrap_or_else(|e| e.into_inner());
            m.entry((id, n)).or_default().clone()
        };
        let mut guard = slot.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(c) = guard.as_ref() {
            return Ok(c.clone());
        }
        let start = crate::Stopwatch::start();
        let model = build_id(id, n)?;
        let mut opts = self.opts.clone();
        opts.label = Some((id.to_string(), n));
        if let Some(dir) = &self.checkpoint_dir {
            let path = dir.join(format!("{id}_{n}.ckpt"));
            if path.exists() {
                opts.resume = Some(path.clone());
            }
            opts.checkpoint = Some(path);
        }
        let desc = model.description(&opts)?;
        let c = Arc::new(Computed::new(model, desc, start.elapsed()));
        *guard = Some(c.clone());
        Ok(c)
    }

    /// By name, e.g. `"PMET"` or `"01-dWMET"`.
    pub fn cone(&self, name: &str, n: usize) -> Result<Arc<Computed>> {
        self.get(ConeId::parse(name)?, n)
    }

    /// Extreme rays without facets. Generated cones whose generators are
    /// known to be extreme (0,1-subcones, cut-type cones) skip the DD.
    pub fn rays_only(&self, id: ConeId, n: usize) -> Result<Arc<Vec<IntVec>>> {
        if let Some(r) = self.rays.lock().unwrap_or_else(|e| e.into_inner()).get(&(id, n)) {
            return Ok(r.clone());
        }
        let cached = {
            let m = self.slots.lock().unwrap_or_else(|e| e.into_inner());
            m.get(&(id, n)).cloned()
        };
        if let Some(c) = cached.and_then(|s| s.lock().unwrap_or_else(|e| e.into_inner()).clone()) {
            return Ok(Arc::new(c.desc.rays.clone()));
        }
        let model = build_id(id, n)?;
        let rays = match (&model.generators, id) {
            (Some(g), ConeId::ZeroOne(_) | ConeId::Base(crate::catalog::Base::Ocut | crate::catalog::Base::Cut)) => {
                let set: BTreeSet<IntVec> = g.iter().filter(|v| !v.is_zero()).map(norm).collect();
                set.into_iter().collect()
            }
            _ => self.get(id, n)?.desc.rays.clone(),
        };
        let rays = Arc::new(rays);
        self.rays.lock().unwrap_or_else(|e| e.into_inner()).insert((id, n), rays.clone());
        Ok(rays)
    }
}

// ----------------------------------------------------------------- helpers

/// Primitive form, sign preserved. Zero stays zero.
pub(crate) fn norm(v: &IntVec) -> IntVec {
    v.gcd_normalize(Orientation::Preserve).unwrap_or_else(|_| v.clone())
}

/// Primitive forms of the nonzero vectors.
pub(crate) fn ray_set<'a>(vs: impl IntoIterator<Item = &'a IntVec>) -> BTreeSet<IntVec> {
    vs.into_iter().filter(|v| !v.is_zero()).map(norm).collect()
}

pub(crate) fn show(v: &IntVec) -> String {
    let parts: Vec<String> = v.0.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Set equality with the first element found on only one side.
pub(crate) fn same_sets(group: &str, name: impl Into<String>, expected: &BTreeSet<IntVec>, got: &BTreeSet<IntVec>) -> Check {
    let missing = expected.difference(got).next();
    let extra = got.difference(expected).next();
    let detail = match (missing, extra) {
        (None, None) => format!("{} elements", got.len()),
        (m, e) => {
            let mut s = format!("{} expected, {} computed", expected.len(), got.len());
            if let Some(m) = m {
                s.push_str(&format!("; missing {}", show(m)));
            }
            if let Some(e) = e {
                s.push_str(&format!("; unexpected {}", show(e)));
            }
            s
        }
    };
    Check::holds(group, name, missing.is_none() && extra.is_none(), detail)
}

/// `small ⊆ big` on rays. With `strict`, also a ray of `big` outside
/// `small`; without, the two cones must coincide.
pub(crate) fn inclusion(group: &str, small: &Computed, big: &Computed, strict: bool) -> Check {
    let rel = if strict { "⊂" } else { "=" };
    let name = format!("{} {rel} {}", small.name(), big.name());
    if let Some(r) = small.rays().iter().find(|r| !big.contains(r)) {
        return Check::holds(group, name, false, format!("{} not in {}", show(r), big.name()));
    }
    let witness = big.rays().iter().find(|r| !small.contains(r));
    match (strict, witness) {
        (true, Some(w)) => Check::holds(group, name, true, format!("witness {} in {} only", show(w), big.name())),
        (true, None) => Check::holds(group, name, false, "cones coincide"),
        (false, None) => Check::holds(group, name, true, format!("{} rays", small.rays().len())),
        (false, Some(w)) => Check::holds(group, name, false, format!("{} in {} only", show(w), big.name())),
    }
}

/// Dimension of a cone given by generators.
pub(crate) fn span_dim(vs: &[IntVec]) -> usize {
    rank(vs)
}

/// Whether `f` and `g` define facets of `c` in the same orbit.
pub(crate) fn same_facet_orbit(c: &Computed, f: &IntVec, g: &IntVec) -> Result<bool> {
    let (Some(f), Some(g)) = (c.canonical(f), c.canonical(g)) else { return Ok(false) };
    let grp = c.group()?;
    Ok(grp.canonical(&f, Action::Facet)? == grp.canonical(&g, Action::Facet)?)
}
