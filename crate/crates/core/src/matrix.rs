//! Plain-text matrix files for rays, facets and transformed vectors.
//!
//! ```text
//! conelab v1 PSYM n=3 dim=6
//! coords 11 21 22 31 32 33
//! 0 1 0 1 1 0
//! ```
//!
//! Rows are gcd-normalized and sorted, so equal sets give equal bytes.

use std::path::Path;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactla::{IntVec, Orientation};
use crate::spaces::{lift, p_inv, p_map, q_map_quasi, symmetrize, Lattice, Space, SpaceKind};

pub const FORMAT_VERSION: &str = "v1";

/// Renders `rows` as a matrix file over `space`.
pub fn write_matrix(rows: &[IntVec], space: Space) -> Result<String> {
    let mut norm = Vec::with_capacity(rows.len());
    for r in rows {
        space.check(r)?;
        if !r.is_zero() {
            norm.push(r.gcd_normalize(Orientation::Preserve)?);
        }
    }
    norm.sort();
    norm.dedup();
    let mut out = format!("conelab {FORMAT_VERSION} {} n={} dim={}\n", space.kind.tag(), space.n, space.dim());
    out.push_str("coords");
    for l in space.labels() {
        out.push(' ');
        out.push_str(&l);
    }
    out.push('\n');
    for r in &norm {
        let cells: Vec<String> = r.0.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    Ok(out)
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn header_field<'a>(tok: Option<&'a str>, key: &str) -> Result<&'a str> {
    tok.and_then(|t| t.strip_prefix(key)).ok_or_else(|| parse_err(1, format!("expected `{key}<value>` in header")))
}

/// Parses a matrix file. Rows are returned as written.
pub fn read_matrix(text: &str) -> Result<(Space, Vec<IntVec>)> {
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let mut tok = head.split_whitespace();
    if tok.next() != Some("conelab") || tok.next() != Some(FORMAT_VERSION) {
        return Err(parse_err(1, format!("expected `conelab {FORMAT_VERSION}`")));
    }
    let kind: SpaceKind = tok.next().ok_or_else(|| parse_err(1, "missing space kind"))?.parse()?;
    let n: usize = header_field(tok.next(), "n=")?.parse().map_err(|_| parse_err(1, "bad n"))?;
    let dim: usize = header_field(tok.next(), "dim=")?.parse().map_err(|_| parse_err(1, "bad dim"))?;
    if n < 1 {
        return Err(parse_err(1, "n must be positive"));
    }
    let space = Space::new(kind, n);
    if space.dim() != dim {
        return Err(parse_err(1, format!("{} n={n} has dimension {}, header says {dim}", kind.tag(), space.dim())));
    }
    let coords = lines.next().ok_or_else(|| parse_err(2, "missing coords line"))?;
    let labels: Vec<&str> = coords.split_whitespace().collect();
    let expected = space.labels();
    if labels.first() != Some(&"coords") || labels[1..] != expected.iter().map(String::as_str).collect::<Vec<_>>()[..] {
        return Err(parse_err(2, format!("coords must be `coords {}`", expected.join(" "))));
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let no = k + 3;
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<BigInt> = line
            .split_whitespace()
            .map(|c| c.parse::<BigInt>().map_err(|_| parse_err(no, format!("bad entry `{c}`"))))
            .collect::<Result<_>>()?;
        if cells.len() != dim {
            return Err(parse_err(no, format!("{} entries, expected {dim}", cells.len())));
        }
        rows.push(IntVec(cells));
    }
    Ok((space, rows))
}

/// Writes through a temporary file and a rename, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Coordinate maps that act row by row on a matrix file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowMap {
    /// WSYM -> PSYM
    P,
    /// PSYM -> WSYM
    Pinv,
    /// WSYM -> QUASI
    Q,
    /// PSYM(n) -> PSYM(n+1)
    Lift,
    /// QUASI -> SYM, `q + q^T`
    Sym,
}

impl RowMap {
    pub fn name(self) -> &'static str {
        match self {
            RowMap::P => "P",
            RowMap::Pinv => "Pinv",
            RowMap::Q => "Q",
            RowMap::Lift => "lift",
            RowMap::Sym => "sym",
        }
    }

    /// Input kind and output space for `n` input points.
    pub fn spaces(self, n: usize) -> (SpaceKind, Space) {
        match self {
            RowMap::P => (SpaceKind::Wsym, Space::new(SpaceKind::Psym, n)),
            RowMap::Pinv => (SpaceKind::Psym, Space::new(SpaceKind::Wsym, n)),
            RowMap::Q => (SpaceKind::Wsym, Space::new(SpaceKind::Quasi, n)),
            RowMap::Lift => (SpaceKind::Psym, Space::new(SpaceKind::Psym, n + 1)),
            RowMap::Sym => (SpaceKind::Quasi, Space::new(SpaceKind::Sym, n)),
        }
    }
}

impl std::str::FromStr for RowMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [RowMap::P, RowMap::Pinv, RowMap::Q, RowMap::Lift, RowMap::Sym]
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown map `{s}`") })
    }
}

/// Applies `map` to every row of a matrix file. P and Q use the doubled
/// lattice, so images of integer rows stay integral.
pub fn transform_matrix(text: &str, map: RowMap) -> Result<String> {
    let (space, rows) = read_matrix(text)?;
    let n = space.n;
    let (need, target) = map.spaces(n);
    if space.kind != need {
        return Err(Error::SpaceMismatch { expected: need.tag().to_string(), got: space.kind.tag().to_string() });
    }
    let out: Vec<IntVec> = rows
        .iter()
        .map(|r| match map {
            RowMap::P => p_map(r, n, Lattice::Doubled),
            RowMap::Pinv => p_inv(r, n),
            RowMap::Q => q_map_quasi(r, n, Lattice::Doubled),
            RowMap::Lift => lift(r, n),
            RowMap::Sym => symmetrize(r, n),
        })
        .collect::<Result<_>>()?;
    write_matrix(&out, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_coords() {
        let s = Space::new(SpaceKind::Psym, 3);
        let text = write_matrix(&[], s).unwrap();
        assert_eq!(text, "conelab v1 PSYM n=3 dim=6\ncoords 11 21 22 31 32 33\n");
    }

    #[test]
    fn rows_are_normalized_and_sorted() {
        let s = Space::new(SpaceKind::Sym, 3);
        let rows = [IntVec::from_i64s(&[2, 2, 0]), IntVec::from_i64s(&[0, 1, 1]), IntVec::from_i64s(&[0, 1, 1])];
        let text = write_matrix(&rows, s).unwrap();
        assert_eq!(text.lines().skip(2).collect::<Vec<_>>(), ["0 1 1", "1 1 0"]);
        let (sp, back) = read_matrix(&text).unwrap();
        assert_eq!(sp, s);
        assert_eq!(write_matrix(&back, sp).unwrap(), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "conelab v1 SYM n=3 dim=3\ncoords 21 31 32\n1 0\n";
        match read_matrix(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(read_matrix("conelab v1 SYM n=3 dim=4\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn transform_checks_the_input_space() {
        let text = "conelab v1 PSYM n=2 dim=3\ncoords 11 21 22\n0 1 0\n";
        assert!(matches!(transform_matrix(text, RowMap::P), Err(Error::SpaceMismatch { .. })));
        let w = transform_matrix(text, RowMap::Pinv).unwrap();
        assert_eq!(w, "conelab v1 WSYM n=2 dim=3\ncoords w1 21 w2\n0 1 0\n");
        assert_eq!("pinv".parse::<RowMap>().unwrap(), RowMap::Pinv);
    }
}
