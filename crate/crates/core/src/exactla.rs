//! Exact integer linear algebra.
//!
//! Every quantity is an arbitrary-precision integer. Rank uses fraction-free
//! (Bareiss) elimination; a checked `i128` pass runs first and the `BigInt`
//! pass only takes over when an intermediate value overflows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vector of arbitrary-precision integers.
///
/// The derived ordering is lexicographic on the integer values, which is the
/// order used for every sorted ray or facet list in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVec(pub Vec<BigInt>);

// Entries serialize as JSON integers when they fit in i64, otherwise as
// decimal strings.
impl Serialize for IntVec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            match x.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntVec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Small(i64),
            Big(String),
        }
        let raw = Vec::<Entry>::deserialize(de)?;
        raw.into_iter()
            .map(|e| match e {
                Entry::Small(v) => Ok(BigInt::from(v)),
                Entry::Big(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(IntVec)
    }
}

/// How [`IntVec::gcd_normalize`] treats the sign of its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Divide by the positive gcd only. Rays and facet normals use this.
    Preserve,
    /// Also flip so that the first nonzero entry is positive (for lines and
    /// equality rows, whose sign carries no meaning).
    FirstPositive,
}

impl IntVec {
    pub fn zeros(len: usize) -> Self {
        IntVec(vec![BigInt::zero(); len])
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        IntVec(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn unit(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[k] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    /// Entries as `i64`, or `None` if one does not fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Gcd of the entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn gcd_normalize(&self, orientation: Orientation) -> Result<IntVec> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        let mut out: Vec<BigInt> = self.0.iter().map(|x| x / &g).collect();
        if orientation == Orientation::FirstPositive {
            if let Some(first) = out.iter().find(|x| !x.is_zero()) {
                if first.is_negative() {
                    for x in out.iter_mut() {
                        *x = -&*x;
                    }
                }
            }
        }
        Ok(IntVec(out))
    }

    /// Orientation-preserving normalization, panicking on zero input.
    /// Only for call sites where the vector is nonzero by construction.
    pub(crate) fn normalized(&self) -> IntVec {
        self.gcd_normalize(Orientation::Preserve).expect("nonzero by construction")
    }

    pub fn dot(&self, other: &IntVec) -> Result<BigInt> {
        check_len(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).fold(BigInt::zero(), |acc, x| acc + x))
    }

    pub fn add(&self, other: &IntVec) -> Result<IntVec> {
        check_len(self.len(), other.len())?;
        Ok(IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &IntVec) -> Result<IntVec> {
        check_len(self.len(), other.len())?;
        Ok(IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, k: &BigInt) -> IntVec {
        IntVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }

    /// True if every entry is 0 or 1.
    pub fn is_01(&self) -> bool {
        self.0.iter().all(|x| x.is_zero() || x.is_one())
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn check_len(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { left, right });
    }
    Ok(())
}

/// Row matrix; all rows share one length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntMat {
    pub rows: Vec<IntVec>,
}

impl IntMat {
    pub fn new(rows: Vec<IntVec>) -> Self {
        IntMat { rows }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMat { rows: rows.iter().map(|r| IntVec::from_i64s(r)).collect() }
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }
}

pub fn dot(u: &IntVec, v: &IntVec) -> Result<BigInt> {
    u.dot(v)
}

/// Exact rank over the rationals.
pub fn rank(rows: &[IntVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    if let Some(small) =
        rows.iter().map(|r| r.0.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()
    {
        if let Some(r) = bareiss_rank_i128(small) {
            return r;
        }
    }
    bareiss_rank_big(rows.iter().map(|r| r.0.clone()).collect())
}

/// Rank of small-integer rows given by reference (hot paths: extremality and
/// adjacency checks). Falls back to `BigInt` on overflow.
pub fn rank_i64(rows: &[&[i64]]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let small: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    if let Some(r) = bareiss_rank_i128(small) {
        return r;
    }
    bareiss_rank_big(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

fn bareiss_rank_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let m = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][c];
        for i in r + 1..m {
            let factor = a[i][c];
            for j in c + 1..ncols {
                let lhs = pivot.checked_mul(a[i][j])?;
                let rhs = factor.checked_mul(a[r][j])?;
                a[i][j] = lhs.checked_sub(rhs)? / prev;
            }
            a[i][c] = 0;
        }
        prev = pivot;
        r += 1;
    }
    Some(r)
}

fn bareiss_rank_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][c].clone();
        for i in r + 1..m {
            let factor = a[i][c].clone();
            for j in c + 1..ncols {
                let v = (&pivot * &a[i][j] - &factor * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Reduced row echelon form over the rationals. Returns the reduced rows
/// (nonzero ones only) and the pivot column of each.
fn rref(rows: &[IntVec], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.0.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

fn clear_denominators(v: &[BigRational]) -> IntVec {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    IntVec(v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
}

/// Integer basis of `{x : <row, x> = 0 for all rows}` in `ncols` dimensions,
/// one gcd-normalized vector per free column.
pub fn nullspace(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    let (red, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            clear_denominators(&v).normalized()
        })
        .collect()
}

/// Linearly independent subset of `rows` (first occurrences win).
pub fn independent_rows(rows: &[IntVec]) -> Vec<usize> {
    let mut chosen: Vec<IntVec> = Vec::new();
    let mut idx = Vec::new();
    for (k, r) in rows.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        chosen.push(r.clone());
        if rank(&chosen) == chosen.len() {
            idx.push(k);
        } else {
            chosen.pop();
        }
    }
    idx
}

/// `true` iff `v` is orthogonal to every row of `basis`.
pub fn nullspace_contains(basis: &IntMat, v: &IntVec) -> Result<bool> {
    for e in &basis.rows {
        if !e.dot(v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Orthogonal projection onto the complement of a subspace, scaled back to a
/// primitive integer vector. Used to pick canonical facet representatives.
#[derive(Clone, Debug)]
pub struct Projector {
    basis: Vec<IntVec>,
    gram_inv: Vec<Vec<BigRational>>,
}

impl Projector {
    /// `subspace` may contain dependent rows; an independent subset is kept.
    pub fn new(subspace: &[IntVec]) -> Self {
        let basis: Vec<IntVec> = independent_rows(subspace).into_iter().map(|k| subspace[k].clone()).collect();
        let m = basis.len();
        let mut aug: Vec<Vec<BigRational>> = (0..m)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    (0..m).map(|j| BigRational::from_integer(basis[i].dot(&basis[j]).unwrap())).collect();
                row.extend((0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        // Gauss-Jordan on [G | I]; G is positive definite so pivots exist.
        for c in 0..m {
            let p = (c..m).find(|&i| !aug[i][c].is_zero()).expect("gram is invertible");
            aug.swap(p, c);
            let inv = aug[c][c].recip();
            for x in aug[c].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..m {
                if i != c && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in 0..2 * m {
                        let t = &f * &aug[c][j];
                        aug[i][j] -= t;
                    }
                }
            }
        }
        let gram_inv = aug.into_iter().map(|row| row[m..].to_vec()).collect();
        Projector { basis, gram_inv }
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    /// Component of `f` orthogonal to the subspace, as a primitive integer
    /// vector with the same orientation. Returns `None` if that component is 0.
    pub fn project(&self, f: &IntVec) -> Option<IntVec> {
        if self.basis.is_empty() {
            return f.gcd_normalize(Orientation::Preserve).ok();
        }
        let m = self.basis.len();
        let ef: Vec<BigRational> = self.basis.iter().map(|e| BigRational::from_integer(e.dot(f).unwrap())).collect();
        let coef: Vec<BigRational> =
            (0..m).map(|i| (0..m).map(|j| &self.gram_inv[i][j] * &ef[j]).fold(BigRational::zero(), |a, b| a + b)).collect();
        let mut out: Vec<BigRational> = f.0.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for (e, c) in self.basis.iter().zip(&coef) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&e.0) {
                *o -= c * BigRational::from_integer(x.clone());
            }
        }
        clear_denominators(&out).gcd_normalize(Orientation::Preserve).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> IntVec {
        IntVec::from_i64s(x)
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(v(&[2, 4, 6]).gcd_normalize(Orientation::Preserve).unwrap(), v(&[1, 2, 3]));
        assert_eq!(v(&[1, 1, 0]).gcd_normalize(Orientation::Preserve).unwrap(), v(&[1, 1, 0]));
        assert_eq!(v(&[-3, 6, -9]).gcd_normalize(Orientation::Preserve).unwrap(), v(&[-1, 2, -3]));
        assert_eq!(v(&[-3, 6, -9]).gcd_normalize(Orientation::FirstPositive).unwrap(), v(&[1, -2, 3]));
        let err = v(&[0, 0]).gcd_normalize(Orientation::Preserve).unwrap_err();
        assert_eq!(err.to_string(), "cannot normalize zero vector");
    }

    #[test]
    fn rank_examples() {
        assert_eq!(IntMat::from_i64_rows(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(IntMat::from_i64_rows(&[&[1, 1, 0], &[2, 2, 0]]).rank(), 1);
        // Tr_{12,3}, Tr_{13,2}, Tr_{23,1} in SYM(3) order (21),(31),(32).
        let tri = IntMat::from_i64_rows(&[&[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]]);
        assert_eq!(tri.rank(), 3);
        assert_eq!(IntMat::default().rank(), 0);
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(&v(&[1, -1, 0]), &v(&[1, 1, 0])).unwrap(), BigInt::zero());
        assert_eq!(dot(&v(&[-1, 1, 1]), &v(&[1, 1, 0])).unwrap(), BigInt::zero());
        assert_eq!(dot(&v(&[-1, 1, 1]), &v(&[0, 1, 1])).unwrap(), BigInt::from(2));
        assert!(dot(&v(&[1]), &v(&[1, 2])).is_err());
    }

    #[test]
    fn big_entries_use_bigint_path() {
        let big = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let r1 = IntVec(vec![big.clone(), BigInt::one()]);
        let r2 = IntVec(vec![big.clone() * 2, BigInt::from(2)]);
        assert_eq!(rank(&[r1.clone(), r2]), 1);
        let r3 = IntVec(vec![big, BigInt::from(3)]);
        assert_eq!(rank(&[r1, r3]), 2);
    }

    #[test]
    fn nullspace_basic() {
        let ns = nullspace(&[v(&[1, 1, 0])], 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!(nullspace_contains(&IntMat::new(vec![v(&[1, 1, 0])]), x).unwrap());
        }
        assert!(nullspace_contains(&IntMat::default(), &v(&[5, 5])).unwrap());
    }

    #[test]
    fn projector_removes_subspace_component() {
        let p = Projector::new(&[v(&[1, -1, 0])]);
        // (1,0,0) - 1/2 (1,-1,0) = (1/2, 1/2, 0)
        assert_eq!(p.project(&v(&[1, 0, 0])).unwrap(), v(&[1, 1, 0]));
        assert!(p.project(&v(&[2, -2, 0])).is_none());
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(x in prop::collection::vec(-50i64..50, 1..8)) {
            let x = v(&x);
            prop_assume!(!x.is_zero());
            let once = x.gcd_normalize(Orientation::Preserve).unwrap();
            prop_assert_eq!(once.gcd_normalize(Orientation::Preserve).unwrap(), once);
        }

        #[test]
        fn rank_invariant_under_permutation_and_scaling(
            m in prop::collection::vec(prop::collection::vec(-9i64..=9, 6), 6),
            perm_seed in 0usize..720,
            row in 0usize..6,
            k in prop::sample::select(vec![-3i64, -2, 2, 5]),
        ) {
            let rows: Vec<IntVec> = m.iter().map(|r| v(r)).collect();
            let base = rank(&rows);
            let mut idx: Vec<usize> = (0..6).collect();
            let mut s = perm_seed;
            for i in (1..6).rev() {
                idx.swap(i, s % (i + 1));
                s /= i + 1;
            }
            let permuted: Vec<IntVec> = idx.iter().map(|&i| rows[i].clone()).collect();
            prop_assert_eq!(rank(&permuted), base);
            let mut scaled = rows.clone();
            scaled[row] = scaled[row].scale(&BigInt::from(k));
            prop_assert_eq!(rank(&scaled), base);
        }

        #[test]
        fn dot_is_symmetric(
            a in prop::collection::vec(-100i64..100, 5),
            b in prop::collection::vec(-100i64..100, 5),
        ) {
            prop_assert_eq!(dot(&v(&a), &v(&b)).unwrap(), dot(&v(&b), &v(&a)).unwrap());
        }
    }
}
