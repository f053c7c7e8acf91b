//! Partial matchings on face posets and the collapsing matchings for cycle and
//! path targets.
//!
//! A matching pairs a cell `x` with a cell `μ(x)` covering it. It is acyclic when
//! there is no closed walk `x_0, μ(x_0), x_1, μ(x_1), ...` with each `x_{k+1}` a
//! facet of `μ(x_k)` other than `x_k`. Acyclicity is decided by cycle detection;
//! nothing about the matchings built here is taken on trust.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::codec::{self, CellCode, CodecError, CycleSpec, TargetFamily};
use crate::graph::bit;
use crate::hom::{HomComplex, MultiHomCell};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("{0} is not a cell of the poset")]
    UnknownCell(String),
    #[error("{upper} does not cover {lower}")]
    NotACover { lower: String, upper: String },
    #[error("{upper} is matched with both {first} and {second}")]
    NotInjective { upper: String, first: String, second: String },
    #[error("{0} is both matched upward and the partner of another cell")]
    KeyIsValue(String),
    #[error("facet {facet} of {cell} is missing")]
    NotClosed { cell: String, facet: String },
    #[error("stratum is empty")]
    EmptyStratum,
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// Cells of a face-closed family with their facets.
#[derive(Debug, Clone)]
pub struct CellPoset<C> {
    cells: Vec<C>,
    index: HashMap<C, usize>,
    facets: Vec<Vec<usize>>,
}

impl<C: Clone + Eq + Hash + Ord + fmt::Display + Send + Sync> CellPoset<C> {
    /// Builds the poset from cells and a facet function; every facet must be present.
    pub fn new<F>(mut cells: Vec<C>, facets_of: F) -> Result<Self, MatchingError>
    where
        F: Fn(&C) -> Vec<C> + Sync,
    {
        cells.sort();
        cells.dedup();
        let index: HashMap<C, usize> = cells.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        let facets = cells
            .par_iter()
            .map(|c| {
                facets_of(c)
                    .into_iter()
                    .map(|f| {
                        index.get(&f).copied().ok_or_else(|| MatchingError::NotClosed {
                            cell: c.to_string(),
                            facet: f.to_string(),
                        })
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        Ok(Self { cells, index, facets })
    }

    pub fn cells(&self) -> &[C] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: &C) -> bool {
        self.index.contains_key(cell)
    }

    pub fn facets(&self, cell: &C) -> Option<impl Iterator<Item = &C>> {
        let k = *self.index.get(cell)?;
        Some(self.facets[k].iter().map(|&j| &self.cells[j]))
    }

    fn id(&self, cell: &C) -> Result<usize, MatchingError> {
        self.index.get(cell).copied().ok_or_else(|| MatchingError::UnknownCell(cell.to_string()))
    }
}

impl CellPoset<MultiHomCell> {
    pub fn from_complex(x: &HomComplex) -> Self {
        Self::from_cells(x.cells().to_vec()).expect("Hom complexes are face-closed")
    }

    pub fn from_cells(cells: Vec<MultiHomCell>) -> Result<Self, MatchingError> {
        Self::new(cells, |c| c.facets().unwrap_or_default())
    }
}

impl CellPoset<CellCode> {
    /// Poset of a face-closed family of codes.
    pub fn from_codes(spec: &CycleSpec, codes: Vec<CellCode>) -> Result<Self, MatchingError> {
        for c in &codes {
            codec::validate_cell(spec, c)?;
        }
        Self::new(codes, |c| {
            if c.dim() == 0 {
                Vec::new()
            } else {
                codec::facets_of_code(spec, c).expect("validated")
            }
        })
    }
}

/// A partial matching `x ↦ μ(x)`; the key set is `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMatching<C: Ord> {
    pub matched: BTreeMap<C, C>,
}

impl<C: Ord> Default for PartialMatching<C> {
    fn default() -> Self {
        Self { matched: BTreeMap::new() }
    }
}

impl<C: Ord + Clone> PartialMatching<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, lower: C, upper: C) {
        self.matched.insert(lower, upper);
    }

    pub fn len(&self) -> usize {
        self.matched.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matched.is_empty()
    }

    pub fn get(&self, lower: &C) -> Option<&C> {
        self.matched.get(lower)
    }
}

/// Outcome of checking a matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorseReport<C> {
    pub critical_cells: Vec<C>,
    pub acyclic: bool,
    /// Cells `x_0, ..., x_{k-1}` of `S` with `x_{j+1}` a facet of `μ(x_j)`, indices mod `k`.
    pub cycle_witness: Option<Vec<C>>,
    pub matched_count: usize,
}

impl<C> MorseReport<C> {
    /// Critical cells per dimension.
    pub fn critical_counts(&self, dim: impl Fn(&C) -> usize) -> Vec<usize> {
        let mut out = Vec::new();
        for c in &self.critical_cells {
            let d = dim(c);
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }
}

/// Checks that `matching` is a matching on `poset` and whether it is acyclic.
pub fn verify_matching<C>(
    poset: &CellPoset<C>,
    matching: &PartialMatching<C>,
) -> Result<MorseReport<C>, MatchingError>
where
    C: Clone + Eq + Hash + Ord + fmt::Display + Send + Sync,
{
    let n = poset.len();
    let mut partner: Vec<Option<usize>> = vec![None; n];
    let mut is_key = vec![false; n];
    for (x, y) in &matching.matched {
        let (a, b) = (poset.id(x)?, poset.id(y)?);
        if !poset.facets[b].contains(&a) {
            return Err(MatchingError::NotACover { lower: x.to_string(), upper: y.to_string() });
        }
        if let Some(first) = partner[b] {
            return Err(MatchingError::NotInjective {
                upper: y.to_string(),
                first: poset.cells[first].to_string(),
                second: x.to_string(),
            });
        }
        partner[b] = Some(a);
        is_key[a] = true;
    }
    for (x, y) in &matching.matched {
        let (a, b) = (poset.index[x], poset.index[y]);
        if partner[a].is_some() {
            return Err(MatchingError::KeyIsValue(x.to_string()));
        }
        if is_key[b] {
            return Err(MatchingError::KeyIsValue(y.to_string()));
        }
    }
    let up: HashMap<usize, usize> =
        matching.matched.iter().map(|(x, y)| (poset.index[x], poset.index[y])).collect();
    let successors = |a: usize| -> Vec<usize> {
        let b = up[&a];
        poset.facets[b].iter().copied().filter(|&c| c != a && is_key[c]).collect()
    };
    let cycle = find_cycle(up.keys().copied().collect(), successors);
    let critical_cells = (0..n)
        .filter(|&k| !is_key[k] && partner[k].is_none())
        .map(|k| poset.cells[k].clone())
        .collect();
    Ok(MorseReport {
        critical_cells,
        acyclic: cycle.is_none(),
        cycle_witness: cycle.map(|c| c.into_iter().map(|k| poset.cells[k].clone()).collect()),
        matched_count: matching.len(),
    })
}

/// Iterative three-colour DFS; returns the nodes of one directed cycle.
fn find_cycle(mut nodes: Vec<usize>, successors: impl Fn(usize) -> Vec<usize>) -> Option<Vec<usize>> {
    nodes.sort_unstable();
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let mut mark: HashMap<usize, Mark> = HashMap::new();
    for &start in &nodes {
        if mark.contains_key(&start) {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, successors(start))];
        mark.insert(start, Mark::Open);
        while let Some((node, pending)) = stack.last_mut() {
            let node = *node;
            match pending.pop() {
                Some(next) => match mark.get(&next) {
                    None => {
                        mark.insert(next, Mark::Open);
                        let succ = successors(next);
                        stack.push((next, succ));
                    }
                    Some(Mark::Open) => {
                        let from = stack.iter().position(|e| e.0 == next).expect("on stack");
                        return Some(stack[from..].iter().map(|e| e.0).collect());
                    }
                    Some(Mark::Done) => {}
                },
                None => {
                    mark.insert(node, Mark::Done);
                    stack.pop();
                }
            }
        }
    }
    None
}

/// Cells of `X_i`: those that stay cells after adding `i` to the image of vertex 1.
pub fn x_i_cells(x: &HomComplex, i: usize) -> Vec<MultiHomCell> {
    x.cells().iter().filter(|c| x.contains(&add_to_first(c, i))).cloned().collect()
}

fn add_to_first(cell: &MultiHomCell, i: usize) -> MultiHomCell {
    let mut entries = cell.entries().to_vec();
    entries[0] |= bit(i);
    MultiHomCell::new(entries)
}

/// On `X_i`, pairs every cell whose first image set misses `i` with the cell
/// obtained by adding `i` there. The critical cells are those with first image `{i}`.
pub fn first_image_matching(x: &HomComplex, i: usize) -> (CellPoset<MultiHomCell>, PartialMatching<MultiHomCell>) {
    let cells = x_i_cells(x, i);
    let mut matching = PartialMatching::new();
    for c in &cells {
        if c.entry(1) & bit(i) == 0 {
            matching.insert(c.clone(), add_to_first(c, i));
        }
    }
    let poset = CellPoset::from_cells(cells).expect("X_i is face-closed");
    (poset, matching)
}

/// Codes of `X̃_i` with `r` returning points: base `i`, no plus at the last position.
pub fn x_tilde_cells(spec: &CycleSpec, i: usize, r: usize) -> Vec<CellCode> {
    let m = spec.m();
    (0..=r)
        .flat_map(|d| codec::enumerate_cells(spec, r, d))
        .filter(|c| c.base == i && !c.has_plus_at(m))
        .collect()
}

/// Positions that may receive the next plus: unplussed, not last, not directly
/// before another returning point, and (for path targets) not at the top label.
pub fn free_positions(spec: &CycleSpec, code: &CellCode) -> Vec<usize> {
    let m = spec.m();
    let r = code.r();
    code.entries()
        .enumerate()
        .filter(|&(k, (p, plus))| {
            let next_returning = k + 1 < r && code.positions[k + 1] == p + 1;
            let at_top = spec.family() == TargetFamily::Path && code.base + p + 1 == spec.n() + 2 * (k + 1);
            !plus && p != m && !next_returning && !at_top
        })
        .map(|(_, (p, _))| p)
        .collect()
}

/// `min F`, or `None` for infinity.
pub fn r_min(spec: &CycleSpec, code: &CellCode) -> Option<usize> {
    free_positions(spec, code).into_iter().min()
}

/// `min F⁺`, or `None` for infinity.
pub fn r_plus_min(code: &CellCode) -> Option<usize> {
    code.plussed_positions().min()
}

/// `R < R⁺`, with `None` above every position.
fn in_s(spec: &CycleSpec, code: &CellCode) -> Option<usize> {
    match (r_min(spec, code), r_plus_min(code)) {
        (Some(a), Some(b)) if a < b => Some(a),
        (Some(a), None) => Some(a),
        _ => None,
    }
}

fn plus_at(code: &CellCode, position: usize) -> CellCode {
    let k = code.positions.iter().position(|&p| p == position).expect("returning position");
    CellCode::new(code.base, code.positions.clone(), code.plus | 1 << k)
}

/// The matching `ν` on a family of codes: every cell with `R < R⁺` gets a plus at `R`.
pub fn nu_matching(spec: &CycleSpec, cells: &[CellCode]) -> PartialMatching<CellCode> {
    let mut matching = PartialMatching::new();
    for c in cells {
        if let Some(p) = in_s(spec, c) {
            matching.insert(c.clone(), plus_at(c, p));
        }
    }
    matching
}

/// `ν` on `X̃_i` with `r` returning points, for cycle targets.
pub fn returning_matching(spec: &CycleSpec, i: usize, r: usize) -> (CellPoset<CellCode>, PartialMatching<CellCode>) {
    let cells = x_tilde_cells(spec, i, r);
    let matching = nu_matching(spec, &cells);
    let poset = CellPoset::from_codes(spec, cells).expect("X̃_i is face-closed");
    (poset, matching)
}

/// `ν` on `X̃_i` for a path target (all vertices have `m / 2` returning points).
pub fn path_matching(spec: &CycleSpec, i: usize) -> (CellPoset<CellCode>, PartialMatching<CellCode>) {
    returning_matching(spec, i, spec.m() / 2)
}

/// The expected critical cell `(i; m-r+1, ..., m)` for a cycle target.
pub fn cycle_sigma(spec: &CycleSpec, i: usize, r: usize) -> CellCode {
    let m = spec.m();
    CellCode::new(i, (m - r + 1..=m).collect(), 0)
}

/// The expected critical cell for a path target `L_n` and base `i`.
///
/// With `h = m / 2` and `t = min(h, n - i)`, the `(h-k)`-th position is `2h - k`
/// for `k < t` and `2h - 2k + t - 1` otherwise.
pub fn path_sigma(spec: &CycleSpec, i: usize) -> CellCode {
    let h = spec.m() / 2;
    let t = h.min(spec.n().saturating_sub(i));
    let mut positions = vec![0; h];
    for k in 0..h {
        positions[h - k - 1] = if k < t { 2 * h - k } else { 2 * h + t - 2 * k - 1 };
    }
    CellCode::new(i, positions, 0)
}

/// Checks that `Σ` is constant on matched pairs and strictly increases from
/// `x` to every other facet of `μ(x)` that lies in `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaAudit {
    pub edges_checked: usize,
    pub violations: Vec<(String, String)>,
}

impl SigmaAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn sigma_audit(poset: &CellPoset<CellCode>, matching: &PartialMatching<CellCode>) -> SigmaAudit {
    let mut edges_checked = 0;
    let mut violations = Vec::new();
    for (x, y) in &matching.matched {
        edges_checked += 1;
        if x.position_sum() != y.position_sum() {
            violations.push((x.to_string(), y.to_string()));
        }
        for f in poset.facets(y).into_iter().flatten() {
            if f != x && matching.matched.contains_key(f) {
                edges_checked += 1;
                if f.position_sum() <= x.position_sum() {
                    violations.push((y.to_string(), f.to_string()));
                }
            }
        }
    }
    SigmaAudit { edges_checked, violations }
}

/// Summary of `ν` on one stratum `X̃_i` with `r` returning points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub base: usize,
    pub returning: usize,
    pub cells: usize,
    pub matched: usize,
    pub critical: Vec<String>,
    pub expected_critical: String,
    pub acyclic: bool,
    pub sigma_audit: bool,
    pub euler_characteristic: i64,
}

impl StratumReport {
    /// Acyclic, one critical cell equal to the expected one, audit clean.
    pub fn passed(&self) -> bool {
        self.acyclic && self.sigma_audit && self.critical == [self.expected_critical.clone()]
    }
}

/// Builds and checks `ν` on one stratum.
pub fn stratum_report(spec: &CycleSpec, i: usize, r: usize) -> Result<StratumReport, MatchingError> {
    let (poset, matching) = returning_matching(spec, i, r);
    if poset.is_empty() {
        return Err(MatchingError::EmptyStratum);
    }
    let report = verify_matching(&poset, &matching)?;
    let audit = sigma_audit(&poset, &matching);
    let expected = match spec.family() {
        TargetFamily::Cycle => cycle_sigma(spec, i, r),
        TargetFamily::Path => path_sigma(spec, i),
    };
    let mut f = Vec::new();
    for c in poset.cells() {
        if f.len() <= c.dim() {
            f.resize(c.dim() + 1, 0);
        }
        f[c.dim()] += 1;
    }
    Ok(StratumReport {
        base: i,
        returning: r,
        cells: poset.len(),
        matched: report.matched_count,
        critical: report.critical_cells.iter().map(|c| c.to_string()).collect(),
        expected_critical: expected.to_string(),
        acyclic: report.acyclic,
        sigma_audit: audit.passed(),
        euler_characteristic: crate::hom::alternating_sum(&f),
    })
}

/// Every nonempty stratum `X̃_i` of the complex, checked in parallel.
///
/// For cycle targets the strata with `0 < r < m` are used; points have no
/// stratum to collapse. Path targets have a single `r`.
pub fn all_strata(spec: &CycleSpec) -> Vec<StratumReport> {
    let m = spec.m();
    let pairs: Vec<(usize, usize)> = match spec.family() {
        TargetFamily::Cycle => spec
            .returning_counts()
            .into_iter()
            .filter(|&r| r > 0 && r < m)
            .flat_map(|r| (1..=spec.n()).map(move |i| (i, r)))
            .collect(),
        TargetFamily::Path => (1..=spec.n()).map(|i| (i, m / 2)).collect(),
    };
    pairs.into_par_iter().filter_map(|(i, r)| stratum_report(spec, i, r).ok()).collect()
}

/// Critical cells of the matching `ν` applied to the whole code family.
///
/// This is a diagnostic only; the collapses are stratum-wise.
pub fn critical_set(spec: &CycleSpec, cells: &[CellCode]) -> HashSet<CellCode> {
    let matching = nu_matching(spec, cells);
    let values: HashSet<&CellCode> = matching.matched.values().collect();
    cells.iter().filter(|c| !matching.matched.contains_key(*c) && !values.contains(c)).cloned().collect()
}
