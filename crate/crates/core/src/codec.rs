//! Returning-point codes for the cells of `Hom(C_m, C_n)` (`n != 4`) and
//! `Hom(C_2k, L_n)`.
//!
//! A vertex `(a_1, ..., a_m)` is encoded as `(a_1; i_1, ..., i_r)` where the `i_j`
//! are its returning points: positions where the image steps backwards. A cell is
//! the code of its lowest vertex together with a plus-flag on every returning
//! point whose successor entry has two elements. Codes are enumerated directly,
//! without touching the brute-force builder, and their facets follow a closed rule.
//!
//! Text form: `(s; a, b+, c)`, or `(s;)` when there are no returning points.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, Graph, GraphError};
use crate::hom::MultiHomCell;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("source cycle length {0} is not supported")]
    SourceLength(usize),
    #[error("target length {0} is not supported by the codec")]
    TargetLength(usize),
    #[error("expected {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("value {value} at position {position} is outside 1..={n}")]
    ValueOutOfRange { position: usize, value: i64, n: usize },
    #[error("positions {position} and the next one are not adjacent in the target")]
    NotAHomomorphism { position: usize },
    #[error("base {base} is outside 1..={n}")]
    BaseOutOfRange { base: usize, n: usize },
    #[error("returning points must be strictly increasing within 1..={m}")]
    BadPositions { m: usize },
    #[error("{r} returning points is impossible for m = {m}, n = {n}")]
    ReturningCount { r: usize, m: usize, n: usize },
    #[error("plus at position {position} is followed by another returning point")]
    PlusBeforeReturn { position: usize },
    #[error("cell entry at position {position} is not of the form {{c-1, c+1}} between two {{c}}")]
    NotACodedCell { position: usize },
    #[error("a 0-dimensional cell has no facets")]
    ZeroDimensional,
    #[error("cannot parse code {0:?}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetFamily {
    Cycle,
    Path,
}

impl fmt::Display for TargetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TargetFamily::Cycle => "cycle",
            TargetFamily::Path => "path",
        })
    }
}

impl FromStr for TargetFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cycle" => Ok(TargetFamily::Cycle),
            "path" => Ok(TargetFamily::Path),
            other => Err(format!("unknown target family {other:?}")),
        }
    }
}

/// Source cycle length `m`, target length `n` and the target family.
///
/// For path targets `m` is the full source length (`C_m` with `m` even) and every
/// vertex has exactly `m / 2` returning points. `m = 2` stands for the single edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleSpec {
    m: usize,
    n: usize,
    family: TargetFamily,
}

impl CycleSpec {
    /// `Hom(C_m, C_n)`; requires `m >= 3`, `n >= 3`, `n != 4`.
    pub fn cycle(m: usize, n: usize) -> Result<Self, CodecError> {
        if !(3..=64).contains(&m) {
            return Err(CodecError::SourceLength(m));
        }
        if n < 3 || n == 4 || n > 64 {
            return Err(CodecError::TargetLength(n));
        }
        Ok(Self { m, n, family: TargetFamily::Cycle })
    }

    /// `Hom(C_m, L_n)` for even `m >= 2` and `n >= 2`.
    pub fn path(m: usize, n: usize) -> Result<Self, CodecError> {
        if m < 2 || m % 2 == 1 || m > 64 {
            return Err(CodecError::SourceLength(m));
        }
        if !(2..=64).contains(&n) {
            return Err(CodecError::TargetLength(n));
        }
        Ok(Self { m, n, family: TargetFamily::Path })
    }

    pub fn new(m: usize, n: usize, family: TargetFamily) -> Result<Self, CodecError> {
        match family {
            TargetFamily::Cycle => Self::cycle(m, n),
            TargetFamily::Path => Self::path(m, n),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> TargetFamily {
        self.family
    }

    pub fn source_graph(&self) -> Graph {
        source_cycle(self.m).expect("validated length")
    }

    pub fn target_graph(&self) -> Graph {
        match self.family {
            TargetFamily::Cycle => Graph::cycle(self.n),
            TargetFamily::Path => Graph::path(self.n),
        }
        .expect("validated length")
    }

    /// Returning-point counts `r` that occur: `m = nk + 2r` for some integer `k`
    /// (cycle targets), or exactly `m / 2` (path targets).
    pub fn returning_counts(&self) -> Vec<usize> {
        match self.family {
            TargetFamily::Cycle => (0..=self.m)
                .filter(|&r| (self.m as i64 - 2 * r as i64).rem_euclid(self.n as i64) == 0)
                .collect(),
            TargetFamily::Path => vec![self.m / 2],
        }
    }

    fn admits_returning_count(&self, r: usize) -> bool {
        match self.family {
            TargetFamily::Cycle => {
                r <= self.m && (self.m as i64 - 2 * r as i64).rem_euclid(self.n as i64) == 0
            }
            TargetFamily::Path => 2 * r == self.m,
        }
    }

    /// Reduces a label into the target: `[x]_n` for cycles, range-checked for paths.
    fn target_value(&self, x: i64, position: usize) -> Result<usize, CodecError> {
        match self.family {
            TargetFamily::Cycle => Ok(wrap(x, self.n)),
            TargetFamily::Path if (1..=self.n as i64).contains(&x) => Ok(x as usize),
            TargetFamily::Path => {
                Err(CodecError::ValueOutOfRange { position, value: x, n: self.n })
            }
        }
    }

    fn next_position(&self, p: usize) -> usize {
        p % self.m + 1
    }

    fn is_returning_step(&self, from: usize, to: usize) -> bool {
        match self.family {
            TargetFamily::Cycle => wrap(from as i64 - to as i64, self.n) == 1,
            TargetFamily::Path => from as i64 - to as i64 == 1,
        }
    }

    fn is_step(&self, from: usize, to: usize) -> bool {
        match self.family {
            TargetFamily::Cycle => {
                let d = wrap(to as i64 - from as i64, self.n);
                d == 1 || d == self.n - 1
            }
            TargetFamily::Path => (from as i64 - to as i64).abs() == 1,
        }
    }
}

/// `C_m` for `m >= 3`; `m = 2` gives the single edge.
pub fn source_cycle(m: usize) -> Result<Graph, GraphError> {
    if m == 2 {
        Graph::path(2)
    } else {
        Graph::cycle(m)
    }
}

/// `[x]_n`: the representative of `x` modulo `n` in `1..=n`.
pub fn wrap(x: i64, n: usize) -> usize {
    ((x - 1).rem_euclid(n as i64) + 1) as usize
}

/// Code of a vertex: base label and the returning points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexCode {
    pub base: usize,
    pub returning: Vec<usize>,
}

impl VertexCode {
    pub fn new(base: usize, returning: Vec<usize>) -> Self {
        Self { base, returning }
    }

    pub fn r(&self) -> usize {
        self.returning.len()
    }
}

impl fmt::Display for VertexCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_code(f, self.base, self.returning.iter().map(|&p| (p, false)))
    }
}

/// Code of a cell: base label, returning points, and a plus-flag mask where bit
/// `k` marks `positions[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellCode {
    pub base: usize,
    pub positions: Vec<usize>,
    pub plus: u64,
}

impl CellCode {
    pub fn new(base: usize, positions: Vec<usize>, plus: u64) -> Self {
        Self { base, positions, plus }
    }

    /// Builds a code from `(position, plus)` pairs.
    pub fn from_entries(base: usize, entries: &[(usize, bool)]) -> Self {
        let positions = entries.iter().map(|e| e.0).collect();
        let plus = entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.1)
            .fold(0, |acc, (k, _)| acc | (1u64 << k));
        Self { base, positions, plus }
    }

    pub fn vertex(v: &VertexCode) -> Self {
        Self::new(v.base, v.returning.clone(), 0)
    }

    pub fn r(&self) -> usize {
        self.positions.len()
    }

    /// Number of plus-flags.
    pub fn dim(&self) -> usize {
        self.plus.count_ones() as usize
    }

    pub fn is_plus(&self, k: usize) -> bool {
        self.plus >> k & 1 == 1
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.positions.iter().enumerate().map(|(k, &p)| (p, self.is_plus(k)))
    }

    pub fn plussed_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries().filter(|e| e.1).map(|e| e.0)
    }

    pub fn has_plus_at(&self, position: usize) -> bool {
        self.entries().any(|(p, plus)| plus && p == position)
    }

    /// The lowest vertex of the cell (all plus-flags dropped).
    pub fn vertex_code(&self) -> VertexCode {
        VertexCode::new(self.base, self.positions.clone())
    }

    /// Sum of the returning positions.
    pub fn position_sum(&self) -> usize {
        self.positions.iter().sum()
    }
}

impl Ord for CellCode {
    /// Lexicographic on `(base, (position, plus), ...)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.base.cmp(&other.base).then_with(|| self.entries().cmp(other.entries()))
    }
}

impl PartialOrd for CellCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_code(
    f: &mut fmt::Formatter<'_>,
    base: usize,
    entries: impl Iterator<Item = (usize, bool)>,
) -> fmt::Result {
    write!(f, "({base};")?;
    for (k, (p, plus)) in entries.enumerate() {
        let sep = if k == 0 { " " } else { ", " };
        write!(f, "{sep}{p}{}", if plus { "+" } else { "" })?;
    }
    write!(f, ")")
}

impl fmt::Display for CellCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_code(f, self.base, self.entries())
    }
}

impl FromStr for CellCode {
    type Err = CodecError;

    /// Parses `(s; a, b+, c)`. Whitespace is free; the entry list may be empty.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CodecError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(err)?;
        let (base, rest) = inner.split_once(';').ok_or_else(err)?;
        let base: usize = base.trim().parse().map_err(|_| err())?;
        let rest = rest.trim();
        let mut entries = Vec::new();
        if !rest.is_empty() {
            for item in rest.split(',') {
                let item = item.trim();
                let (num, plus) = match item.strip_suffix('+') {
                    Some(num) => (num.trim_end(), true),
                    None => (item, false),
                };
                let p: usize = num.parse().map_err(|_| err())?;
                entries.push((p, plus));
            }
        }
        if entries.len() > 64 {
            return Err(err());
        }
        Ok(CellCode::from_entries(base, &entries))
    }
}

/// Label of the connected component a vertex lies in.
///
/// `returning` is `None` only for `C_4` targets, where components are told apart
/// by parity alone. `parity` is 1 for an odd base label and 2 for an even one; it
/// is present for even cycle targets and for path targets. `base` is present only
/// for isolated points (`r` equal to `0` or `m`), which are singleton components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentKey {
    pub returning: Option<usize>,
    pub parity: Option<u8>,
    pub base: Option<usize>,
}

impl ComponentKey {
    pub fn is_point(&self) -> bool {
        self.base.is_some()
    }
}

pub fn parity_class(label: usize) -> u8 {
    if label % 2 == 1 {
        1
    } else {
        2
    }
}

impl fmt::Display for ComponentKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.returning, self.parity, self.base) {
            (Some(r), _, Some(b)) => write!(f, "pt(r={r}, base={b})"),
            (Some(r), Some(p), None) => write!(f, "Δ_{r}^{p}"),
            (Some(r), None, None) => write!(f, "Δ_{r}"),
            (None, Some(p), _) => write!(f, "parity {p}"),
            (None, None, _) => write!(f, "?"),
        }
    }
}

/// Encodes a vertex tuple `(a_1, ..., a_m)`.
pub fn encode_vertex(spec: &CycleSpec, tuple: &[usize]) -> Result<VertexCode, CodecError> {
    let m = spec.m;
    if tuple.len() != m {
        return Err(CodecError::WrongLength { expected: m, got: tuple.len() });
    }
    for (k, &a) in tuple.iter().enumerate() {
        if a == 0 || a > spec.n {
            return Err(CodecError::ValueOutOfRange { position: k + 1, value: a as i64, n: spec.n });
        }
    }
    let mut returning = Vec::new();
    for i in 1..=m {
        let (a, b) = (tuple[i - 1], tuple[spec.next_position(i) - 1]);
        if !spec.is_step(a, b) {
            return Err(CodecError::NotAHomomorphism { position: i });
        }
        if spec.is_returning_step(a, b) {
            returning.push(i);
        }
    }
    Ok(VertexCode::new(tuple[0], returning))
}

fn check_positions(spec: &CycleSpec, base: usize, positions: &[usize]) -> Result<(), CodecError> {
    if base == 0 || base > spec.n {
        return Err(CodecError::BaseOutOfRange { base, n: spec.n });
    }
    let increasing = positions.windows(2).all(|w| w[0] < w[1]);
    if !increasing || positions.first() == Some(&0) || positions.last().is_some_and(|&p| p > spec.m)
    {
        return Err(CodecError::BadPositions { m: spec.m });
    }
    if !spec.admits_returning_count(positions.len()) {
        return Err(CodecError::ReturningCount { r: positions.len(), m: spec.m, n: spec.n });
    }
    Ok(())
}

/// Unreduced labels `j + i - 1 - 2 * #{returning points < i}` for `i = 1..=m`.
fn raw_labels(m: usize, base: usize, positions: &[usize]) -> Vec<i64> {
    let mut below = 0usize;
    let mut next = positions.iter().peekable();
    (1..=m)
        .map(|i| {
            while next.peek().is_some_and(|&&p| p < i) {
                next.next();
                below += 1;
            }
            base as i64 + i as i64 - 1 - 2 * below as i64
        })
        .collect()
}

/// Decodes a vertex code into its tuple.
pub fn decode_vertex(spec: &CycleSpec, code: &VertexCode) -> Result<Vec<usize>, CodecError> {
    check_positions(spec, code.base, &code.returning)?;
    raw_labels(spec.m, code.base, &code.returning)
        .into_iter()
        .enumerate()
        .map(|(k, a)| spec.target_value(a, k + 1))
        .collect()
}

/// Checks every code condition: positions, returning count, no plus directly
/// before another returning point, and (for paths) the label range.
pub fn validate_cell(spec: &CycleSpec, code: &CellCode) -> Result<(), CodecError> {
    check_positions(spec, code.base, &code.positions)?;
    if code.plus >> code.positions.len() != 0 {
        return Err(CodecError::BadPositions { m: spec.m });
    }
    let r = code.positions.len();
    for (k, (p, plus)) in code.entries().enumerate() {
        if plus && spec.next_position(p) == code.positions[(k + 1) % r] {
            return Err(CodecError::PlusBeforeReturn { position: p });
        }
    }
    if spec.family == TargetFamily::Path {
        cell_entries(spec, code)?;
    }
    Ok(())
}

/// Image sets of the cell as `(value, doubled)`; a doubled entry is `{a, a + 2}`.
fn cell_entries(spec: &CycleSpec, code: &CellCode) -> Result<Vec<u64>, CodecError> {
    let raw = raw_labels(spec.m, code.base, &code.positions);
    let mut doubled = vec![false; spec.m];
    for p in code.plussed_positions() {
        doubled[spec.next_position(p) - 1] = true;
    }
    raw.iter()
        .enumerate()
        .map(|(k, &a)| {
            let low = spec.target_value(a, k + 1)?;
            let mut set = bit(low);
            if doubled[k] {
                set |= bit(spec.target_value(a + 2, k + 1)?);
            }
            Ok(set)
        })
        .collect()
}

/// Converts a code into the corresponding multi-homomorphism.
pub fn to_multi(spec: &CycleSpec, code: &CellCode) -> Result<MultiHomCell, CodecError> {
    validate_cell(spec, code)?;
    Ok(MultiHomCell::new(cell_entries(spec, code)?))
}

/// Encodes a cell of the brute-force complex.
pub fn from_multi(spec: &CycleSpec, cell: &MultiHomCell) -> Result<CellCode, CodecError> {
    let m = spec.m;
    if cell.source_len() != m {
        return Err(CodecError::WrongLength { expected: m, got: cell.source_len() });
    }
    let prev = |x: usize| if x == 1 { m } else { x - 1 };
    let mut lowest = Vec::with_capacity(m);
    let mut plussed = Vec::new();
    for x in 1..=m {
        let e = cell.entry(x);
        match e.count_ones() {
            1 => lowest.push(e.trailing_zeros() as usize + 1),
            2 => {
                let (before, after) = (cell.entry(prev(x)), cell.entry(spec.next_position(x)));
                if before != after || before.count_ones() != 1 {
                    return Err(CodecError::NotACodedCell { position: x });
                }
                let c = before.trailing_zeros() as i64 + 1;
                let low = spec
                    .target_value(c - 1, x)
                    .map_err(|_| CodecError::NotACodedCell { position: x })?;
                lowest.push(low);
                plussed.push(prev(x));
            }
            _ => return Err(CodecError::NotACodedCell { position: x }),
        }
    }
    let v = encode_vertex(spec, &lowest)?;
    let mut plus = 0u64;
    for p in plussed {
        let k = v
            .returning
            .iter()
            .position(|&q| q == p)
            .ok_or(CodecError::NotACodedCell { position: spec.next_position(p) })?;
        plus |= 1 << k;
    }
    let code = CellCode::new(v.base, v.returning, plus);
    if to_multi(spec, &code)? != *cell {
        return Err(CodecError::NotACodedCell { position: 1 });
    }
    Ok(code)
}

/// Every `d`-cell whose vertices have `r` returning points, in code order.
pub fn enumerate_cells(spec: &CycleSpec, r: usize, d: usize) -> Vec<CellCode> {
    if !spec.admits_returning_count(r) || d > r {
        return Vec::new();
    }
    let m = spec.m;
    let mut out: Vec<CellCode> = (1..=spec.n)
        .into_par_iter()
        .flat_map_iter(|base| {
            (1..=m).combinations(r).flat_map(move |positions| {
                let free: Vec<usize> = (0..r)
                    .filter(|&k| spec.next_position(positions[k]) != positions[(k + 1) % r])
                    .collect();
                free.into_iter()
                    .combinations(d)
                    .map(|ks| CellCode::new(base, positions.clone(), ks.iter().fold(0, |a, &k| a | 1 << k)))
                    .filter(|c| spec.family == TargetFamily::Cycle || cell_entries(spec, c).is_ok())
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    out.sort();
    out
}

/// All cells of the complex, grouped by `r` then `d`.
pub fn enumerate_all(spec: &CycleSpec) -> Vec<CellCode> {
    spec.returning_counts()
        .into_iter()
        .flat_map(|r| (0..=r).flat_map(move |d| enumerate_cells(spec, r, d)))
        .collect()
}

/// Codimension-one faces of a coded cell.
///
/// Unplusing a position `p < m` gives two faces: keep `p`, or move it to `p + 1`.
/// A plus at `m` doubles the first entry; its two faces are the code with `m`
/// unplused, and the code based at `base + 2` with `m` replaced by `1` in front.
pub fn facets_of_code(spec: &CycleSpec, code: &CellCode) -> Result<Vec<CellCode>, CodecError> {
    validate_cell(spec, code)?;
    if code.dim() == 0 {
        return Err(CodecError::ZeroDimensional);
    }
    let m = spec.m;
    let mut out = Vec::with_capacity(2 * code.dim());
    for (k, (p, plus)) in code.entries().enumerate() {
        if !plus {
            continue;
        }
        let unplused = code.plus & !(1 << k);
        if p != m {
            out.push(CellCode::new(code.base, code.positions.clone(), unplused));
            let mut moved = code.positions.clone();
            moved[k] = p + 1;
            out.push(CellCode::new(code.base, moved, unplused));
        } else {
            out.push(CellCode::new(code.base, code.positions.clone(), unplused));
            let shifted_base = match spec.family {
                TargetFamily::Cycle => wrap(code.base as i64 + 2, spec.n),
                TargetFamily::Path => code.base + 2,
            };
            let mut positions = Vec::with_capacity(code.r());
            positions.push(1);
            positions.extend_from_slice(&code.positions[..code.r() - 1]);
            out.push(CellCode::new(shifted_base, positions, unplused << 1));
        }
    }
    out.sort();
    Ok(out)
}

/// Component label of a vertex.
pub fn component_key(spec: &CycleSpec, v: &VertexCode) -> ComponentKey {
    let r = v.r();
    match spec.family {
        TargetFamily::Cycle => {
            let parity = (spec.n % 2 == 0).then(|| parity_class(v.base));
            let base = (r == 0 || r == spec.m).then_some(v.base);
            ComponentKey { returning: Some(r), parity, base }
        }
        TargetFamily::Path => {
            ComponentKey { returning: Some(r), parity: Some(parity_class(v.base)), base: None }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(m: usize, n: usize) -> CycleSpec {
        CycleSpec::cycle(m, n).unwrap()
    }

    fn code(s: &str) -> CellCode {
        s.parse().unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(CycleSpec::cycle(6, 4).is_err());
        assert!(CycleSpec::cycle(2, 5).is_err());
        assert!(CycleSpec::path(5, 5).is_err());
        assert!(CycleSpec::path(2, 5).is_ok());
    }

    #[test]
    fn encode_examples() {
        let v = encode_vertex(&cyc(6, 9), &[1, 9, 8, 9, 1, 9]).unwrap();
        assert_eq!(v, VertexCode::new(1, vec![1, 2, 5]));
        let v = encode_vertex(&cyc(9, 5), &[3, 4, 5, 1, 5, 1, 2, 1, 2]).unwrap();
        assert_eq!(v, VertexCode::new(3, vec![4, 7]));
        let v = encode_vertex(&cyc(6, 3), &[1, 2, 3, 1, 2, 3]).unwrap();
        assert_eq!(v, VertexCode::new(1, vec![]));
        let v = encode_vertex(&cyc(8, 8), &[2, 1, 8, 7, 8, 1, 2, 1]).unwrap();
        assert_eq!(v.base, 2);
    }

    #[test]
    fn encode_rejects_non_homomorphisms() {
        assert_eq!(
            encode_vertex(&cyc(6, 9), &[1, 9, 8, 9, 1, 3]),
            Err(CodecError::NotAHomomorphism { position: 5 })
        );
        assert!(matches!(
            encode_vertex(&cyc(6, 9), &[1, 9, 8]),
            Err(CodecError::WrongLength { .. })
        ));
    }

    #[test]
    fn decode_examples() {
        let a = decode_vertex(&cyc(6, 9), &VertexCode::new(1, vec![1, 2, 5])).unwrap();
        assert_eq!(a, vec![1, 9, 8, 9, 1, 9]);
        for i in 1..=3 {
            let a = decode_vertex(&cyc(6, 3), &VertexCode::new(i, vec![])).unwrap();
            let w = |k: i64| wrap(i as i64 + k, 3);
            assert_eq!(a, vec![i, w(1), w(2), i, w(1), w(2)]);
        }
        let path = CycleSpec::path(8, 5).unwrap();
        let a = decode_vertex(&path, &VertexCode::new(3, vec![3, 5, 7, 8])).unwrap();
        assert_eq!(a, vec![3, 4, 5, 4, 5, 4, 5, 4]);
    }

    #[test]
    fn decode_rejects_bad_codes() {
        // m = 6, n = 9 needs 6 - 2r divisible by 9: r = 3 only
        assert!(matches!(
            decode_vertex(&cyc(6, 9), &VertexCode::new(1, vec![1, 2])),
            Err(CodecError::ReturningCount { .. })
        ));
        let path = CycleSpec::path(8, 5).unwrap();
        assert!(matches!(
            decode_vertex(&path, &VertexCode::new(5, vec![5, 6, 7, 8])),
            Err(CodecError::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn figure_cells_convert() {
        let cell = to_multi(&cyc(6, 9), &code("(1; 1, 2+, 5)")).unwrap();
        assert_eq!(cell.to_string(), "(1,9,{1,8},9,1,9)");
        let cell = to_multi(&cyc(9, 5), &code("(5; 4+, 7+)")).unwrap();
        assert_eq!(cell.to_string(), "(5,1,2,3,{2,4},3,4,{3,5},4)");
        let cell = to_multi(&cyc(8, 8), &code("(2; 2, 3+, 7, 8+)")).unwrap();
        assert_eq!(cell.to_string(), "({2,4},3,2,{1,3},2,3,4,3)");
        assert_eq!(from_multi(&cyc(8, 8), &cell).unwrap(), code("(2; 2, 3+, 7, 8+)"));
    }

    #[test]
    fn condition_three_is_enforced() {
        assert_eq!(
            validate_cell(&cyc(6, 9), &code("(1; 1+, 2, 5)")),
            Err(CodecError::PlusBeforeReturn { position: 1 })
        );
        // cyclic wrap: plus at m followed by a returning point at 1
        assert!(validate_cell(&cyc(6, 9), &code("(1; 1, 2, 6+)")).is_err());
    }

    #[test]
    fn text_form() {
        let c = code("(2;2,3+, 6+ ,8+)");
        assert_eq!(c.to_string(), "(2; 2, 3+, 6+, 8+)");
        assert_eq!(c.dim(), 3);
        assert_eq!(code("(4;)").to_string(), "(4;)");
        assert_eq!(code("(4; )"), code("(4;)"));
        assert!("(4 2, 3)".parse::<CellCode>().is_err());
        assert!("(x; 2)".parse::<CellCode>().is_err());
        assert!("(1; 2++)".parse::<CellCode>().is_err());
    }

    #[test]
    fn facets_figure_five() {
        let spec = cyc(8, 8);
        let f = facets_of_code(&spec, &code("(2; 2, 3+, 6+, 8+)")).unwrap();
        let mut expected: Vec<CellCode> = [
            "(2; 2, 3, 6+, 8+)",
            "(2; 2, 4, 6+, 8+)",
            "(2; 2, 3+, 6, 8+)",
            "(2; 2, 3+, 7, 8+)",
            "(2; 2, 3+, 6+, 8)",
            "(4; 1, 2, 3+, 6+)",
        ]
        .iter()
        .map(|s| code(s))
        .collect();
        expected.sort();
        assert_eq!(f, expected);
    }

    #[test]
    fn facets_by_unplusing() {
        let f = facets_of_code(&cyc(6, 9), &code("(1; 1, 2+, 5)")).unwrap();
        assert_eq!(f, vec![code("(1; 1, 2, 5)"), code("(1; 1, 3, 5)")]);
        assert_eq!(
            facets_of_code(&cyc(6, 9), &code("(1; 1, 2, 5)")),
            Err(CodecError::ZeroDimensional)
        );
    }

    #[test]
    fn nine_three_counts() {
        let spec = cyc(9, 3);
        assert_eq!(enumerate_cells(&spec, 3, 0).len(), 252);
        assert_eq!(enumerate_cells(&spec, 3, 1).len(), 567);
        assert_eq!(enumerate_cells(&spec, 3, 2).len(), 405);
        assert_eq!(enumerate_cells(&spec, 3, 3).len(), 90);
        assert!(enumerate_cells(&spec, 2, 0).is_empty());
        let cells = enumerate_cells(&spec, 3, 2);
        assert!(cells.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn component_keys() {
        let spec = cyc(9, 3);
        let a = component_key(&spec, &VertexCode::new(1, vec![]));
        let b = component_key(&spec, &VertexCode::new(2, vec![]));
        assert_ne!(a, b);
        assert!(a.is_point());

        let spec = cyc(6, 6);
        let k = |b| component_key(&spec, &VertexCode::new(b, vec![4, 5, 6]));
        assert_eq!(k(1), k(3));
        assert_ne!(k(1), k(2));
        assert_eq!(k(1).to_string(), "Δ_3^1");

        let spec = CycleSpec::path(8, 5).unwrap();
        let k = |b| component_key(&spec, &VertexCode::new(b, vec![5, 6, 7, 8]));
        assert_eq!(k(1), k(3));
    }
}
