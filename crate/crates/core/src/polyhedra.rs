//! Double description conversion between facets and extreme rays, and the
//! incidence bookkeeping built on top of it.
//!
//! The engine first runs with `i64` coefficients (every product checked in
//! `i128`) and restarts with `BigInt` if anything overflows. Rays are kept
//! primitive after each combination so the small path rarely fails.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactla::{independent_rows, nullspace, rank, IntVec, Orientation, Projector};

// ------------------------------------------------------------------ bitsets

/// Fixed-width bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits { words: vec![0; len.div_ceil(64)] }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn and_count(&self, other: &Bits) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}

// ------------------------------------------------------------- coefficients

/// Arithmetic the engine needs. `None` means overflow.
pub trait Coef: Clone + Send + Sync + fmt::Debug {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn dot(a: &[Self], b: &[Self]) -> Option<Self>;
    fn signum(&self) -> i32;
    /// Primitive form of `ap * n - an * p` where `ap > 0 > an`.
    fn combine(p: &[Self], ap: &Self, n: &[Self], an: &Self) -> Option<Vec<Self>>;
}

impl Coef for i64 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i64()
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        let mut s: i128 = 0;
        for (x, y) in a.iter().zip(b) {
            s = s.checked_add(i128::from(*x) * i128::from(*y))?;
        }
        i64::try_from(s).ok()
    }

    fn signum(&self) -> i32 {
        i64::signum(*self) as i32
    }

    fn combine(p: &[Self], ap: &Self, n: &[Self], an: &Self) -> Option<Vec<Self>> {
        let (ap, an) = (i128::from(*ap), i128::from(*an));
        let mut raw = Vec::with_capacity(p.len());
        let mut g: i128 = 0;
        for (x, y) in p.iter().zip(n) {
            let v = ap.checked_mul(i128::from(*y))?.checked_sub(an.checked_mul(i128::from(*x))?)?;
            g = g.gcd(&v);
            raw.push(v);
        }
        if g == 0 {
            return Some(raw.into_iter().map(|_| 0).collect());
        }
        raw.into_iter().map(|v| i64::try_from(v / g).ok()).collect()
    }
}

impl Coef for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        Some(a.iter().zip(b).map(|(x, y)| x * y).sum())
    }

    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }

    fn combine(p: &[Self], ap: &Self, n: &[Self], an: &Self) -> Option<Vec<Self>> {
        let raw: Vec<BigInt> = p.iter().zip(n).map(|(x, y)| ap * y - an * x).collect();
        let g = raw.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return Some(raw);
        }
        Some(raw.into_iter().map(|x| x / &g).collect())
    }
}

// ------------------------------------------------------------------ options

/// Resource caps and checkpointing for one conversion.
#[derive(Clone, Debug, Default)]
pub struct DdOptions {
    pub max_rays: Option<usize>,
    pub time_limit: Option<Duration>,
    /// Where to write the partial state when a cap is hit.
    pub checkpoint: Option<PathBuf>,
    /// Resume from a checkpoint written by an earlier run on the same input.
    pub resume: Option<PathBuf>,
    /// Cone name and point count written into the checkpoint header.
    pub label: Option<(String, usize)>,
}

enum Halt {
    Overflow,
    Fail(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt::Fail(e)
    }
}

#[derive(Clone)]
struct Ray<T> {
    v: Vec<T>,
    zeros: Bits,
}

fn row_hash(row: &IntVec) -> String {
    let text: Vec<String> = row.0.iter().map(ToString::to_string).collect();
    let digest = Sha256::digest(text.join(" ").as_bytes());
    digest.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[cfg(feature = "parallel")]
pub(crate) fn map_all<A: Sync, B: Send, F: Fn(&A) -> B + Sync + Send>(xs: &[A], f: F) -> Vec<B> {
    xs.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_all<A: Sync, B: Send, F: Fn(&A) -> B + Sync + Send>(xs: &[A], f: F) -> Vec<B> {
    xs.iter().map(f).collect()
}

struct Checkpoint {
    k: usize,
    iteration: usize,
    processed: Vec<String>,
    rays: Vec<Vec<BigInt>>,
}

fn write_checkpoint(
    path: &Path,
    label: &Option<(String, usize)>,
    iteration: usize,
    k: usize,
    processed: &[String],
    rays: &[Vec<BigInt>],
) -> Result<()> {
    let (name, n) = label.clone().unwrap_or_else(|| ("anon".into(), 0));
    let mut s = format!("conelab-dd v1 {name} {n} {iteration}\n");
    let _ = writeln!(s, "dim {k}");
    for h in processed {
        let _ = writeln!(s, "ineq {h}");
    }
    let _ = writeln!(s, "rays {}", rays.len());
    for r in rays {
        let row: Vec<String> = r.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, s)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn read_checkpoint(path: &Path) -> Result<Checkpoint> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    let bad = |line: usize, msg: &str| Error::Parse { line: line + 1, msg: msg.into() };
    let (l0, header) = lines.next().ok_or_else(|| bad(0, "empty checkpoint"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 5 || parts[0] != "conelab-dd" || parts[1] != "v1" {
        return Err(bad(l0, "bad checkpoint header"));
    }
    let iteration = parts[4].parse().map_err(|_| bad(l0, "bad iteration"))?;
    let (l1, dim) = lines.next().ok_or_else(|| bad(1, "missing dim"))?;
    let k = dim.strip_prefix("dim ").and_then(|x| x.parse().ok()).ok_or_else(|| bad(l1, "bad dim line"))?;
    let mut processed = Vec::new();
    let mut rays = Vec::new();
    let mut in_rays = false;
    for (ln, line) in lines {
        if in_rays {
            let row = line
                .split_whitespace()
                .map(|x| x.parse::<BigInt>().map_err(|_| bad(ln, "bad integer")))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != k {
                return Err(bad(ln, "ray length differs from dim"));
            }
            rays.push(row);
        } else if let Some(h) = line.strip_prefix("ineq ") {
            processed.push(h.to_string());
        } else if line.starts_with("rays ") {
            in_rays = true;
        } else {
            return Err(bad(ln, "unexpected line"));
        }
    }
    Ok(Checkpoint { k, iteration, processed, rays })
}

/// Core conversion on a pointed cone `{y : rows y >= 0}` in `k` dimensions.
/// Rows are primitive, distinct and sorted; `rank(rows) = k`.
fn engine<T: Coef>(
    rows_big: &[IntVec],
    prio: &[usize],
    k: usize,
    opts: &DdOptions,
) -> std::result::Result<Vec<Vec<BigInt>>, Halt> {
    let m = rows_big.len();
    let rows: Vec<Vec<T>> = rows_big
        .iter()
        .map(|r| r.0.iter().map(T::from_big).collect::<Option<Vec<T>>>())
        .collect::<Option<_>>()
        .ok_or(Halt::Overflow)?;
    let hashes: Vec<String> = rows_big.iter().map(row_hash).collect();
    let started = opts.time_limit.map(|_| crate::Stopwatch::start());

    let mut processed: Vec<usize> = Vec::new();
    let mut done = vec![false; m];
    let mut raw_rays: Vec<Vec<T>> = Vec::new();
    let mut iteration = 0;

    if let Some(path) = &opts.resume {
        let cp = read_checkpoint(path)?;
        if cp.k != k {
            return Err(Halt::Fail(Error::Parse { line: 2, msg: format!("checkpoint dimension {} does not match {k}", cp.k) }));
        }
        let index: HashMap<&str, usize> = hashes.iter().enumerate().map(|(i, h)| (h.as_str(), i)).collect();
        for h in &cp.processed {
            let &i = index
                .get(h.as_str())
                .ok_or_else(|| Error::Parse { line: 3, msg: "checkpoint inequality not in this system".into() })?;
            processed.push(i);
            done[i] = true;
        }
        for r in &cp.rays {
            raw_rays.push(r.iter().map(T::from_big).collect::<Option<Vec<T>>>().ok_or(Halt::Overflow)?);
        }
        iteration = cp.iteration;
    } else {
        let basis: Vec<usize> = independent_rows(rows_big);
        debug_assert_eq!(basis.len(), k);
        for (pos, &j) in basis.iter().enumerate() {
            let others: Vec<IntVec> =
                basis.iter().enumerate().filter(|&(q, _)| q != pos).map(|(_, &i)| rows_big[i].clone()).collect();
            let mut r = nullspace(&others, k).pop().expect("one-dimensional kernel");
            if rows_big[j].dot(&r).unwrap().is_negative() {
                r = r.neg();
            }
            raw_rays.push(r.0.iter().map(T::from_big).collect::<Option<Vec<T>>>().ok_or(Halt::Overflow)?);
        }
        for &j in &basis {
            processed.push(j);
            done[j] = true;
        }
    }

    let mut rays: Vec<Ray<T>> = Vec::with_capacity(raw_rays.len());
    for v in raw_rays {
        let mut zeros = Bits::new(m);
        for &i in &processed {
            if T::dot(&rows[i], &v).ok_or(Halt::Overflow)?.signum() == 0 {
                zeros.set(i);
            }
        }
        rays.push(Ray { v, zeros });
    }

    let need = k.saturating_sub(2);
    loop {
        let Some(level) = (0..m).filter(|&i| !done[i]).map(|i| prio[i]).min() else {
            break;
        };
        // Sparse rows first; within a level, the most violated row. Rows
        // violated by no ray stay redundant for good and are dropped.
        let candidates: Vec<usize> = (0..m).filter(|&i| !done[i] && prio[i] == level).collect();
        let counts = map_all(&candidates, |&i| {
            let mut c = 0usize;
            for r in &rays {
                match T::dot(&rows[i], &r.v) {
                    Some(x) if x.signum() < 0 => c += 1,
                    Some(_) => {}
                    None => return None,
                }
            }
            Some((c, i))
        });
        let counts: Vec<(usize, usize)> = counts.into_iter().collect::<Option<_>>().ok_or(Halt::Overflow)?;
        for &(c, i) in &counts {
            if c == 0 {
                done[i] = true;
            }
        }
        let Some(&(_, row)) = counts.iter().filter(|&&(c, _)| c > 0).min_by_key(|&&(c, i)| (std::cmp::Reverse(c), i)) else {
            continue;
        };

        let vals: Vec<T> =
            map_all(&rays, |r| T::dot(&rows[row], &r.v)).into_iter().collect::<Option<_>>().ok_or(Halt::Overflow)?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].signum() > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].signum() < 0).collect();

        let created: Vec<Option<Vec<Ray<T>>>> = map_all(&pos, |&p| {
            let mut out = Vec::new();
            for &q in &neg {
                if rays[p].zeros.and_count(&rays[q].zeros) < need {
                    continue;
                }
                let common = rays[p].zeros.and(&rays[q].zeros);
                let blocked = rays.iter().enumerate().any(|(t, r)| t != p && t != q && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                let v = T::combine(&rays[p].v, &vals[p], &rays[q].v, &vals[q])?;
                let mut zeros = common;
                zeros.set(row);
                out.push(Ray { v, zeros });
            }
            Some(out)
        });
        let mut next: Vec<Ray<T>> = Vec::with_capacity(rays.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            match vals[i].signum() {
                0 => {
                    r.zeros.set(row);
                    next.push(r);
                }
                1 => next.push(r),
                _ => {}
            }
        }
        for batch in created {
            next.extend(batch.ok_or(Halt::Overflow)?);
        }
        rays = next;
        done[row] = true;
        processed.push(row);
        iteration += 1;

        let over_rays = opts.max_rays.is_some_and(|cap| rays.len() > cap);
        let over_time = match (started, opts.time_limit) {
            (Some(s), Some(lim)) => s.elapsed() > lim,
            _ => false,
        };
        if (over_rays || over_time) && processed.len() < m {
            let big: Vec<Vec<BigInt>> = rays.iter().map(|r| r.v.iter().map(T::to_big).collect()).collect();
            let ph: Vec<String> = processed.iter().map(|&i| hashes[i].clone()).collect();
            if let Some(path) = &opts.checkpoint {
                write_checkpoint(path, &opts.label, iteration, k, &ph, &big)?;
            }
            return Err(Halt::Fail(Error::ResourceLimit { iteration, rays: rays.len(), checkpoint: opts.checkpoint.clone() }));
        }
    }
    Ok(rays.into_iter().map(|r| r.v.iter().map(T::to_big).collect()).collect())
}

fn run_engine(rows: &[IntVec], prio: &[usize], k: usize, opts: &DdOptions) -> Result<Vec<Vec<BigInt>>> {
    match engine::<i64>(rows, prio, k, opts) {
        Ok(r) => Ok(r),
        Err(Halt::Fail(e)) => Err(e),
        Err(Halt::Overflow) => match engine::<BigInt>(rows, prio, k, opts) {
            Ok(r) => Ok(r),
            Err(Halt::Fail(e)) => Err(e),
            Err(Halt::Overflow) => unreachable!("BigInt never overflows"),
        },
    }
}

fn primitive_sorted(rows: impl IntoIterator<Item = IntVec>) -> Vec<IntVec> {
    let set: BTreeSet<IntVec> =
        rows.into_iter().filter(|r| !r.is_zero()).map(|r| r.gcd_normalize(Orientation::Preserve).expect("nonzero")).collect();
    set.into_iter().collect()
}

fn support(v: &IntVec) -> usize {
    v.0.iter().filter(|x| !x.is_zero()).count()
}

/// Primitive distinct rows ordered by (priority, value); a row reached from
/// several inputs keeps the smallest priority.
fn prioritized(rows: impl IntoIterator<Item = (IntVec, usize)>) -> (Vec<IntVec>, Vec<usize>) {
    let mut best: HashMap<IntVec, usize> = HashMap::new();
    for (r, p) in rows {
        if r.is_zero() {
            continue;
        }
        let r = r.gcd_normalize(Orientation::Preserve).expect("nonzero");
        let e = best.entry(r).or_insert(p);
        *e = (*e).min(p);
    }
    let mut v: Vec<(usize, IntVec)> = best.into_iter().map(|(r, p)| (p, r)).collect();
    v.sort();
    v.into_iter().map(|(p, r)| (r, p)).unzip()
}

fn ambient_len(vs: &[IntVec]) -> Option<usize> {
    vs.first().map(IntVec::len)
}

/// Extreme rays of `{x : <a, x> >= 0 for a in ineqs, <e, x> = 0 for e in eqs}`.
pub fn dd_rays(ineqs: &[IntVec], eqs: &[IntVec]) -> Result<Vec<IntVec>> {
    dd_rays_with(ineqs, eqs, &DdOptions::default())
}

pub fn dd_rays_with(ineqs: &[IntVec], eqs: &[IntVec], opts: &DdOptions) -> Result<Vec<IntVec>> {
    let Some(d) = ambient_len(ineqs).or_else(|| ambient_len(eqs)) else {
        return Ok(Vec::new());
    };
    for v in ineqs.iter().chain(eqs) {
        if v.len() != d {
            return Err(Error::LengthMismatch { left: v.len(), right: d });
        }
    }
    let eq_rank = rank(eqs);
    // basis of the equality subspace, or the identity when there is none
    let basis: Vec<IntVec> = if eqs.is_empty() { (0..d).map(|i| IntVec::unit(d, i)).collect() } else { nullspace(eqs, d) };
    let k = basis.len();
    let (reduced, prio) =
        prioritized(ineqs.iter().map(|a| (IntVec(basis.iter().map(|b| a.dot(b).unwrap()).collect()), support(a))));
    let r = rank(&reduced);
    if r < k {
        return Err(Error::NotPointed { rank: r + eq_rank, dim: d });
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let ys = run_engine(&reduced, &prio, k, opts)?;
    let xs = ys.into_iter().map(|y| {
        let mut x = vec![BigInt::zero(); d];
        for (c, b) in y.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(&b.0) {
                *xi += c * bi;
            }
        }
        IntVec(x)
    });
    Ok(primitive_sorted(xs))
}

/// Facets of a generated cone together with the equalities of its linear
/// hull. Facets are canonical: orthogonal to every hull equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetHull {
    pub equalities: Vec<IntVec>,
    pub facets: Vec<IntVec>,
}

pub fn dd_facets(gens: &[IntVec], eqs: &[IntVec]) -> Result<FacetHull> {
    dd_facets_with(gens, eqs, &DdOptions::default())
}

fn hull_equalities(gens: &[IntVec], d: usize) -> Vec<IntVec> {
    let mut eqs: Vec<IntVec> =
        nullspace(gens, d).into_iter().map(|e| e.gcd_normalize(Orientation::FirstPositive).unwrap()).collect();
    eqs.sort();
    eqs
}

pub fn dd_facets_with(gens: &[IntVec], eqs: &[IntVec], opts: &DdOptions) -> Result<FacetHull> {
    let gens = primitive_sorted(gens.iter().cloned());
    let Some(d) = ambient_len(&gens) else {
        return Err(Error::OutOfRange("no nonzero generators".into()));
    };
    for e in eqs {
        for g in &gens {
            if !e.dot(g)?.is_zero() {
                return Err(Error::Inconsistent(format!("generator {g} violates equality {e}")));
            }
        }
    }
    let equalities = hull_equalities(&gens, d);
    // coordinates on which the generators keep full rank
    let cols: Vec<IntVec> = (0..d).map(|c| IntVec(gens.iter().map(|g| g.0[c].clone()).collect())).collect();
    let chosen = independent_rows(&cols);
    let (restricted, prio) =
        prioritized(gens.iter().map(|g| (IntVec(chosen.iter().map(|&c| g.0[c].clone()).collect()), support(g))));
    let k = chosen.len();
    let ys = run_engine(&restricted, &prio, k, opts)?;
    let proj = Projector::new(&equalities);
    let mut facets = BTreeSet::new();
    for y in ys {
        let mut f = IntVec::zeros(d);
        for (c, v) in chosen.iter().zip(y) {
            f.0[*c] = v;
        }
        if let Some(g) = proj.project(&f) {
            facets.insert(g);
        }
    }
    Ok(FacetHull { equalities, facets: facets.into_iter().collect() })
}

// -------------------------------------------------------------- description

/// Complete double description of a pointed cone.
#[derive(Clone, Debug)]
pub struct Description {
    pub ambient: usize,
    /// Basis of the linear relations satisfied by every point of the cone.
    pub equalities: Vec<IntVec>,
    pub rays: Vec<IntVec>,
    /// Canonical normals (orthogonal to `equalities`).
    pub facets: Vec<IntVec>,
    /// For each ray, the facets containing it.
    pub ray_facets: Vec<Bits>,
    /// For each facet, the rays on it.
    pub facet_rays: Vec<Bits>,
}

/// Per-ray and per-facet incidence numbers and ranks.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IncidenceStats {
    pub ray_inc: Vec<usize>,
    pub ray_rank: Vec<usize>,
    pub facet_inc: Vec<usize>,
    pub facet_rank: Vec<usize>,
}

fn tight(normals: &[IntVec], v: &IntVec) -> Vec<IntVec> {
    normals.iter().filter(|f| f.dot(v).unwrap().is_zero()).cloned().collect()
}

/// Independent extremality test: `v` satisfies the system and the tight
/// inequalities together with the equalities have rank `ambient - 1`.
pub fn is_extreme_ray(v: &IntVec, ineqs: &[IntVec], eqs: &[IntVec]) -> Result<bool> {
    if v.is_zero() {
        return Ok(false);
    }
    for e in eqs {
        if !e.dot(v)?.is_zero() {
            return Ok(false);
        }
    }
    for a in ineqs {
        if a.dot(v)?.is_negative() {
            return Ok(false);
        }
    }
    let mut rows = tight(ineqs, v);
    rows.extend(eqs.iter().cloned());
    Ok(rank(&rows) + 1 == v.len())
}

/// Independent facethood test for `f` on the cone generated by `rays`.
pub fn is_facet(f: &IntVec, rays: &[IntVec]) -> Result<bool> {
    let mut on = Vec::new();
    for r in rays {
        let x = f.dot(r)?;
        if x.is_negative() {
            return Ok(false);
        }
        if x.is_zero() {
            on.push(r.clone());
        }
    }
    let dim = rank(rays);
    Ok(dim > 0 && on.len() < rays.len() && rank(&on) + 1 == dim)
}

fn build_incidence(rays: &[IntVec], facets: &[IntVec]) -> (Vec<Bits>, Vec<Bits>) {
    let rf: Vec<Bits> = map_all(rays, |r| {
        let mut b = Bits::new(facets.len());
        for (j, f) in facets.iter().enumerate() {
            if f.dot(r).unwrap().is_zero() {
                b.set(j);
            }
        }
        b
    });
    let mut fr: Vec<Bits> = (0..facets.len()).map(|_| Bits::new(rays.len())).collect();
    for (i, b) in rf.iter().enumerate() {
        for j in b.ones() {
            fr[j].set(i);
        }
    }
    (rf, fr)
}

impl Description {
    /// Rays by double description, then the irredundant subset of `ineqs`.
    pub fn from_inequalities(ineqs: &[IntVec], eqs: &[IntVec], opts: &DdOptions) -> Result<Self> {
        let rays = dd_rays_with(ineqs, eqs, opts)?;
        let d = ambient_len(ineqs).or_else(|| ambient_len(eqs)).unwrap_or(0);
        Ok(Self::facets_from_candidates(d, rays, ineqs))
    }

    fn facets_from_candidates(d: usize, rays: Vec<IntVec>, candidates: &[IntVec]) -> Self {
        let equalities = hull_equalities(&rays, d);
        let proj = Projector::new(&equalities);
        let dim = d - equalities.len();
        let canon: BTreeSet<IntVec> = candidates.iter().filter_map(|a| proj.project(a)).collect();
        let canon: Vec<IntVec> = canon.into_iter().collect();
        let keep = map_all(&canon, |f| {
            let on: Vec<IntVec> = rays.iter().filter(|r| f.dot(r).unwrap().is_zero()).cloned().collect();
            on.len() < rays.len() && rank(&on) + 1 == dim
        });
        let facets: Vec<IntVec> = canon.into_iter().zip(keep).filter(|(_, k)| *k).map(|(f, _)| f).collect();
        let (ray_facets, facet_rays) = build_incidence(&rays, &facets);
        Description { ambient: d, equalities, rays, facets, ray_facets, facet_rays }
    }

    /// Facets by double description, then the extreme subset of `gens`.
    pub fn from_generators(gens: &[IntVec], opts: &DdOptions) -> Result<Self> {
        let hull = dd_facets_with(gens, &[], opts)?;
        let gens = primitive_sorted(gens.iter().cloned());
        let d = gens[0].len();
        let dim = d - hull.equalities.len();
        let keep = map_all(&gens, |g| rank(&tight(&hull.facets, g)) + 1 == dim);
        let rays: Vec<IntVec> = gens.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();
        let (ray_facets, facet_rays) = build_incidence(&rays, &hull.facets);
        Ok(Description { ambient: d, equalities: hull.equalities, rays, facets: hull.facets, ray_facets, facet_rays })
    }

    /// Both lists already known (e.g. read from a cache).
    pub fn from_parts(d: usize, rays: Vec<IntVec>, facets: Vec<IntVec>) -> Self {
        Self::facets_from_candidates(d, rays, &facets)
    }

    /// Dimension of the cone.
    pub fn dim(&self) -> usize {
        self.ambient - self.equalities.len()
    }

    pub fn ray_index(&self, v: &IntVec) -> Option<usize> {
        let v = v.gcd_normalize(Orientation::Preserve).ok()?;
        self.rays.binary_search(&v).ok()
    }

    /// Index of a facet given by any representative (projected first).
    pub fn facet_index(&self, f: &IntVec) -> Option<usize> {
        let g = Projector::new(&self.equalities).project(f)?;
        self.facets.binary_search(&g).ok()
    }

    pub fn canonical_facet(&self, f: &IntVec) -> Option<IntVec> {
        Projector::new(&self.equalities).project(f)
    }

    /// Algebraic adjacency: the common facets have rank `dim - 2`.
    pub fn rays_adjacent(&self, r1: &IntVec, r2: &IntVec) -> Result<bool> {
        let i = self.ray_index(r1).ok_or_else(|| Error::NotARay(r1.to_string()))?;
        let j = self.ray_index(r2).ok_or_else(|| Error::NotARay(r2.to_string()))?;
        Ok(self.rays_adjacent_idx(i, j))
    }

    pub fn rays_adjacent_idx(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let common: Vec<IntVec> = self.ray_facets[i].and(&self.ray_facets[j]).ones().map(|k| self.facets[k].clone()).collect();
        rank(&common) + 2 == self.dim()
    }

    /// Algebraic adjacency of facets: the common rays have rank `dim - 2`.
    pub fn facets_adjacent(&self, f1: &IntVec, f2: &IntVec) -> Result<bool> {
        let i = self.facet_index(f1).ok_or_else(|| Error::NotAFacet(f1.to_string()))?;
        let j = self.facet_index(f2).ok_or_else(|| Error::NotAFacet(f2.to_string()))?;
        Ok(self.facets_adjacent_idx(i, j))
    }

    pub fn facets_adjacent_idx(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let common: Vec<IntVec> = self.facet_rays[i].and(&self.facet_rays[j]).ones().map(|k| self.rays[k].clone()).collect();
        rank(&common) + 2 == self.dim()
    }

    pub fn incidence_stats(&self) -> IncidenceStats {
        let ray_rank = map_all(&self.ray_facets, |b| rank(&b.ones().map(|k| self.facets[k].clone()).collect::<Vec<_>>()));
        let facet_rank = map_all(&self.facet_rays, |b| rank(&b.ones().map(|k| self.rays[k].clone()).collect::<Vec<_>>()));
        IncidenceStats {
            ray_inc: self.ray_facets.iter().map(Bits::count).collect(),
            ray_rank,
            facet_inc: self.facet_rays.iter().map(Bits::count).collect(),
            facet_rank,
        }
    }

    /// Recomputes every invariant from scratch. Errors name the first
    /// offending ray or facet.
    pub fn verify(&self) -> Result<()> {
        let dim = self.dim();
        if rank(&self.rays) != dim {
            return Err(Error::Inconsistent("ray span differs from cone dimension".into()));
        }
        for r in &self.rays {
            for e in &self.equalities {
                if !e.dot(r)?.is_zero() {
                    return Err(Error::NotARay(r.to_string()));
                }
            }
            if r.content() != BigInt::from(1) {
                return Err(Error::NotARay(format!("{r} is not primitive")));
            }
            let mut rows = tight(&self.facets, r);
            rows.extend(self.equalities.iter().cloned());
            if self.facets.iter().any(|f| f.dot(r).unwrap().is_negative()) || rank(&rows) + 1 != self.ambient {
                return Err(Error::NotARay(r.to_string()));
            }
        }
        for f in &self.facets {
            if !is_facet(f, &self.rays)? {
                return Err(Error::NotAFacet(f.to_string()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> IntVec {
        IntVec::from_i64s(x)
    }

    fn met_facets(n: usize) -> Vec<IntVec> {
        // Tr_{ij,k}: d_ik + d_jk - d_ij >= 0 in SYM(n)
        let s = crate::spaces::Space::new(crate::spaces::SpaceKind::Sym, n);
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in 1..=n {
                    if k == i || k == j {
                        continue;
                    }
                    let mut f = IntVec::zeros(s.dim());
                    use crate::spaces::Coord::Pair;
                    f.0[s.idx(Pair(i, k))] += 1;
                    f.0[s.idx(Pair(j, k))] += 1;
                    f.0[s.idx(Pair(i, j))] -= 1;
                    out.push(f);
                }
            }
        }
        out
    }

    /// Brute-force oracle: intersect every (d-1)-subset of tight facets.
    fn brute_rays(ineqs: &[IntVec], d: usize) -> Vec<IntVec> {
        let m = ineqs.len();
        let mut found = BTreeSet::new();
        let mut idx: Vec<usize> = (0..d - 1).collect();
        loop {
            let rows: Vec<IntVec> = idx.iter().map(|&i| ineqs[i].clone()).collect();
            let ns = nullspace(&rows, d);
            if ns.len() == 1 {
                for cand in [ns[0].clone(), ns[0].neg()] {
                    if ineqs.iter().all(|a| !a.dot(&cand).unwrap().is_negative()) {
                        found.insert(cand);
                    }
                }
            }
            // next combination
            let mut p = d - 1;
            loop {
                if p == 0 {
                    return found.into_iter().collect();
                }
                p -= 1;
                if idx[p] < m - (d - 1 - p) {
                    idx[p] += 1;
                    for q in p + 1..d - 1 {
                        idx[q] = idx[q - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn met3_rays() {
        let rays = dd_rays(&met_facets(3), &[]).unwrap();
        assert_eq!(rays, vec![v(&[0, 1, 1]), v(&[1, 0, 1]), v(&[1, 1, 0])]);
        assert_eq!(rays, brute_rays(&met_facets(3), 3));
    }

    #[test]
    fn met4_matches_brute_force() {
        let f = met_facets(4);
        let rays = dd_rays(&f, &[]).unwrap();
        assert_eq!(rays.len(), 7);
        assert_eq!(rays, brute_rays(&f, 6));
    }

    #[test]
    fn facets_of_generated_cones() {
        let rays = dd_rays(&met_facets(4), &[]).unwrap();
        let hull = dd_facets(&rays, &[]).unwrap();
        assert!(hull.equalities.is_empty());
        let mut expected: Vec<IntVec> = met_facets(4);
        expected.sort();
        assert_eq!(hull.facets, expected);
        let single = dd_facets(&[v(&[1, 1, 0])], &[]).unwrap();
        assert_eq!(single.equalities.len(), 2);
        assert_eq!(single.facets.len(), 1);
        assert_eq!(single.facets[0].dot(&v(&[1, 1, 0])).unwrap(), BigInt::from(2));
    }

    #[test]
    fn not_pointed() {
        let err = dd_rays(&[v(&[1, 0])], &[]).unwrap_err();
        assert!(matches!(err, Error::NotPointed { rank: 1, dim: 2 }));
    }

    #[test]
    fn equalities_are_respected() {
        // x, y, z >= 0 with x + y = z
        let ineqs = [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        let rays = dd_rays(&ineqs, &[v(&[1, 1, -1])]).unwrap();
        assert_eq!(rays, vec![v(&[0, 1, 1]), v(&[1, 0, 1])]);
        let desc = Description::from_inequalities(&ineqs, &[v(&[1, 1, -1])], &DdOptions::default()).unwrap();
        assert_eq!(desc.dim(), 2);
        assert_eq!(desc.facets.len(), 2);
        desc.verify().unwrap();
        assert!(desc.rays_adjacent(&rays[0], &rays[1]).unwrap());
    }

    #[test]
    fn big_coefficients_fall_back_to_bigint() {
        let big = 1i64 << 40;
        let ineqs = [v(&[big, 1, 0]), v(&[0, big, 1]), v(&[1, 0, big]), v(&[1, 1, 1])];
        let rays = dd_rays(&ineqs, &[]).unwrap();
        for r in &rays {
            assert!(is_extreme_ray(r, &ineqs, &[]).unwrap());
        }
        assert_eq!(rays, brute_rays(&ineqs, 3));
    }

    #[test]
    fn met4_description() {
        let desc = Description::from_inequalities(&met_facets(4), &[], &DdOptions::default()).unwrap();
        desc.verify().unwrap();
        assert_eq!(desc.rays.len(), 7);
        assert_eq!(desc.facets.len(), 12);
        let stats = desc.incidence_stats();
        assert_eq!(stats.facet_rank, vec![5; 12]);
        let gen = Description::from_generators(&desc.rays, &DdOptions::default()).unwrap();
        assert_eq!(gen.facets, desc.facets);
        assert_eq!(gen.rays, desc.rays);
    }

    #[test]
    fn checkpoint_and_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("met5.ckpt");
        let f = met_facets(5);
        let opts = DdOptions {
            max_rays: Some(12),
            checkpoint: Some(path.clone()),
            label: Some(("MET".into(), 5)),
            ..Default::default()
        };
        let err = dd_rays_with(&f, &[], &opts).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { checkpoint: Some(_), .. }));
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("conelab-dd v1 MET 5 "));
        let resumed = dd_rays_with(&f, &[], &DdOptions { resume: Some(path), ..Default::default() }).unwrap();
        assert_eq!(resumed, dd_rays(&f, &[]).unwrap());
        assert_eq!(resumed.len(), 25);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn order_invariance_and_round_trip(seed in 0u64..1000) {
            let mut f = met_facets(4);
            // deterministic shuffle
            let mut s = seed;
            for i in (1..f.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                f.swap(i, (s >> 33) as usize % (i + 1));
            }
            let rays = dd_rays(&f, &[]).unwrap();
            prop_assert_eq!(&rays, &dd_rays(&met_facets(4), &[]).unwrap());
            let back = dd_facets(&rays, &[]).unwrap();
            let mut sorted = met_facets(4);
            sorted.sort();
            prop_assert_eq!(back.facets, sorted);
        }

        #[test]
        fn random_cones_match_brute_force(raw in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 5..9)) {
            // add the positive orthant to keep the cone pointed
            let mut ineqs: Vec<IntVec> = (0..4).map(|i| IntVec::unit(4, i)).collect();
            ineqs.extend(raw.iter().map(|r| v(r)).filter(|r| !r.is_zero()));
            let rays = dd_rays(&ineqs, &[]).unwrap();
            prop_assert_eq!(&rays, &brute_rays(&ineqs, 4));
            for r in &rays {
                prop_assert!(is_extreme_ray(r, &ineqs, &[]).unwrap());
            }
        }
    }
}
