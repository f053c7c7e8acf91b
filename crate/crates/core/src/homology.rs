//! Connected components and integral homology of Hom complexes.
//!
//! Cells of `Hom(G, H)` are products of simplices. A cell is oriented by listing
//! its image sets in source order; the boundary of a product is the graded sum of
//! the simplex boundaries, so for cubical cells it reads
//! `sum_k (-1)^k (upper_k - lower_k)` over the free coordinates. Homology is
//! computed from exact Smith normal forms of the boundary matrices.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::codec::{self, parity_class, ComponentKey, CycleSpec, TargetFamily};
use crate::graph::{iter_bits, Graph};
use crate::hom::{HomComplex, MultiHomCell};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary of boundary is nonzero in dimension {0}")]
    BoundaryNotNilpotent(usize),
    #[error("facet {facet} of {cell} is missing from the cell list")]
    NotClosed { cell: String, facet: String },
}

/// Coefficients for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    /// Exact integral homology with torsion.
    #[default]
    Integer,
    /// Ranks over `GF(2)` only; a quick check, not a certificate.
    Mod2,
}

/// Homotopy type suggested by homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HomotopyClass {
    /// A single vertex.
    Point,
    /// Homology of `S^1`.
    Circle,
    /// Homology of a point, more than one cell.
    Contractible,
    /// Homology of two points (used for whole complexes).
    TwoPoints,
    Other,
}

impl fmt::Display for HomotopyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HomotopyClass::Point => "Point",
            HomotopyClass::Circle => "Circle",
            HomotopyClass::Contractible => "Contractible",
            HomotopyClass::TwoPoints => "TwoPoints",
            HomotopyClass::Other => "Other",
        };
        f.write_str(s)
    }
}

/// Sparse integer matrix stored by columns: `columns[j]` lists `(row, value)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out[i][j] = v;
            }
        }
        out
    }

    /// `self * other`, as a map from `(row, col)` to the nonzero entries.
    fn product_is_zero(&self, other: &SparseMatrix) -> bool {
        other.columns.iter().all(|col| {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    *acc.entry(i).or_default() += a * b;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

/// Boundary matrices of a cell complex; `boundaries[d]` maps `d`-cells to
/// `(d-1)`-cells, with `boundaries[0]` empty.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub f_vector: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Assembles boundary matrices for a face-closed list of cells.
    ///
    /// Cells are indexed within their dimension in canonical order. Fails if a
    /// facet is missing or if `∂∂ != 0`.
    pub fn from_cells(cells: &[MultiHomCell]) -> Result<Self, HomologyError> {
        let mut by_dim: Vec<Vec<&MultiHomCell>> = Vec::new();
        let mut sorted: Vec<&MultiHomCell> = cells.iter().collect();
        sorted.sort();
        for c in sorted {
            let d = c.dim();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(c);
        }
        let f_vector: Vec<usize> = by_dim.iter().map(Vec::len).collect();
        let mut boundaries = vec![SparseMatrix { rows: 0, columns: vec![Vec::new(); f_vector.first().copied().unwrap_or(0)] }];
        for d in 1..by_dim.len() {
            let index: HashMap<&MultiHomCell, usize> =
                by_dim[d - 1].iter().enumerate().map(|(k, &c)| (c, k)).collect();
            let columns = by_dim[d]
                .par_iter()
                .map(|&cell| {
                    boundary_chain(cell)
                        .into_iter()
                        .map(|(face, sign)| match index.get(&face) {
                            Some(&row) => Ok((row, sign)),
                            None => Err(HomologyError::NotClosed {
                                cell: cell.to_string(),
                                facet: face.to_string(),
                            }),
                        })
                        .collect::<Result<Vec<_>, _>>()
                        .map(|mut col| {
                            col.sort_unstable();
                            col
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            boundaries.push(SparseMatrix { rows: f_vector[d - 1], columns });
        }
        let complex = Self { f_vector, boundaries };
        for d in 1..complex.boundaries.len().saturating_sub(1) {
            if !complex.boundaries[d].product_is_zero(&complex.boundaries[d + 1]) {
                return Err(HomologyError::BoundaryNotNilpotent(d));
            }
        }
        Ok(complex)
    }

    pub fn euler_characteristic(&self) -> i64 {
        crate::hom::alternating_sum(&self.f_vector)
    }

    /// Betti numbers and torsion.
    pub fn homology(&self, ring: Ring) -> BettiVector {
        let top = self.f_vector.len();
        let reduced: Vec<Reduction> = (0..=top)
            .into_par_iter()
            .map(|d| match self.boundaries.get(d) {
                Some(m) if d > 0 => match ring {
                    Ring::Integer => smith_invariants(m),
                    Ring::Mod2 => Reduction { rank: rank_mod2(m), torsion: Vec::new() },
                },
                _ => Reduction { rank: 0, torsion: Vec::new() },
            })
            .collect();
        let betti = (0..top)
            .map(|d| self.f_vector[d] - reduced[d].rank - reduced[d + 1].rank)
            .collect();
        let torsion = (0..top).map(|d| reduced[d + 1].torsion.clone()).collect();
        BettiVector::new(betti, torsion)
    }
}

/// Signed facets of a cell under the product orientation.
pub fn boundary_chain(cell: &MultiHomCell) -> Vec<(MultiHomCell, i64)> {
    let mut out = Vec::new();
    let mut shift = 0usize;
    for (k, &e) in cell.entries().iter().enumerate() {
        let size = e.count_ones() as usize;
        if size >= 2 {
            for (j, v) in iter_bits(e).enumerate() {
                let mut entries = cell.entries().to_vec();
                entries[k] &= !crate::graph::bit(v);
                let sign = if (shift + j) % 2 == 0 { 1 } else { -1 };
                out.push((MultiHomCell::new(entries), sign));
            }
        }
        shift += size - 1;
    }
    out
}

/// Betti numbers and torsion coefficients, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiVector {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigUint>>,
}

impl BettiVector {
    pub fn new(mut betti: Vec<usize>, mut torsion: Vec<Vec<BigUint>>) -> Self {
        while betti.last() == Some(&0) {
            betti.pop();
        }
        while torsion.last().is_some_and(Vec::is_empty) {
            torsion.pop();
        }
        Self { betti, torsion }
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    pub fn euler_characteristic(&self) -> i64 {
        crate::hom::alternating_sum(&self.betti)
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.betti.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", b.join(","))?;
        for (d, t) in self.torsion.iter().enumerate() {
            if !t.is_empty() {
                let t: Vec<String> = t.iter().map(|x| format!("Z/{x}")).collect();
                write!(f, " H{d} torsion {}", t.join("+"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for BettiVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let torsion: Vec<Vec<String>> =
            self.torsion.iter().map(|t| t.iter().map(|x| x.to_string()).collect()).collect();
        let mut s = serializer.serialize_struct("BettiVector", 2)?;
        s.serialize_field("betti", &self.betti)?;
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

/// Rank of a matrix and its invariant factors greater than one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

/// Exact Smith normal form invariants.
///
/// Unit pivots are eliminated sparsely first (fill-free ones before the rest);
/// what remains goes through a dense elimination over arbitrary-precision
/// integers.
pub fn smith_invariants(matrix: &SparseMatrix) -> Reduction {
    let mut elim = UnitEliminator::new(matrix);
    elim.run();
    let residual = elim.residual();
    let mut torsion: Vec<BigUint> = Vec::new();
    let mut rank = elim.rank;
    for factor in dense_invariants(residual) {
        rank += 1;
        if !factor.is_one() {
            torsion.push(factor);
        }
    }
    torsion.sort();
    Reduction { rank, torsion }
}

struct UnitEliminator {
    rows: Vec<Vec<(usize, i64)>>,
    row_alive: Vec<bool>,
    col_rows: Vec<Vec<usize>>,
    col_count: Vec<usize>,
    rank: usize,
    overflowed: bool,
}

impl UnitEliminator {
    fn new(matrix: &SparseMatrix) -> Self {
        let mut rows = vec![Vec::new(); matrix.rows];
        let mut col_rows = vec![Vec::new(); matrix.cols()];
        let mut col_count = vec![0; matrix.cols()];
        for (j, col) in matrix.columns.iter().enumerate() {
            for &(i, v) in col {
                if v != 0 {
                    rows[i].push((j, v));
                    col_rows[j].push(i);
                    col_count[j] += 1;
                }
            }
        }
        for r in &mut rows {
            r.sort_unstable();
        }
        let row_alive = vec![true; matrix.rows];
        Self { rows, row_alive, col_rows, col_count, rank: 0, overflowed: false }
    }

    fn value(&self, row: usize, col: usize) -> Option<i64> {
        let r = &self.rows[row];
        r.binary_search_by_key(&col, |e| e.0).ok().map(|k| r[k].1)
    }

    /// Live rows with a nonzero in `col`.
    fn rows_in_col(&self, col: usize) -> Vec<usize> {
        let mut rows: Vec<usize> = self.col_rows[col]
            .iter()
            .copied()
            .filter(|&r| self.row_alive[r] && self.value(r, col).is_some())
            .collect();
        rows.sort_unstable();
        rows.dedup();
        rows
    }

    /// `target -= factor * source`, or `None` on overflow.
    fn combine(target: &[(usize, i64)], source: &[(usize, i64)], factor: i64) -> Option<Vec<(usize, i64)>> {
        let mut out = Vec::with_capacity(target.len() + source.len());
        let (mut a, mut b) = (0, 0);
        while a < target.len() || b < source.len() {
            let ca = target.get(a).map_or(usize::MAX, |e| e.0);
            let cb = source.get(b).map_or(usize::MAX, |e| e.0);
            if ca < cb {
                out.push(target[a]);
                a += 1;
            } else {
                let sub = factor.checked_mul(source[b].1)?;
                let base = if ca == cb { target[a].1 } else { 0 };
                let v = base.checked_sub(sub)?;
                if v != 0 {
                    out.push((cb, v));
                }
                if ca == cb {
                    a += 1;
                }
                b += 1;
            }
        }
        Some(out)
    }

    /// Pivots on the unit entry at `(row, col)` and returns the columns it touched,
    /// or `None` on overflow (the matrix is then left in a consistent state).
    fn pivot(&mut self, row: usize, col: usize) -> Option<Vec<usize>> {
        let unit = self.value(row, col).expect("pivot present");
        debug_assert!(unit.abs() == 1);
        let pivot_row = std::mem::take(&mut self.rows[row]);
        let mut touched: Vec<usize> = pivot_row.iter().map(|e| e.0).collect();
        for r in self.rows_in_col(col) {
            if r == row {
                continue;
            }
            let b = self.value(r, col).expect("present");
            let Some(updated) = Self::combine(&self.rows[r], &pivot_row, b * unit) else {
                self.overflowed = true;
                self.rows[row] = pivot_row;
                return None;
            };
            let old: Vec<usize> = self.rows[r].iter().map(|e| e.0).collect();
            for &c in &old {
                self.col_count[c] -= 1;
            }
            for &(c, _) in &updated {
                self.col_count[c] += 1;
                if old.binary_search(&c).is_err() {
                    self.col_rows[c].push(r);
                    touched.push(c);
                }
            }
            self.rows[r] = updated;
        }
        for &(c, _) in &pivot_row {
            self.col_count[c] -= 1;
        }
        self.row_alive[row] = false;
        self.rank += 1;
        Some(touched)
    }

    /// Pivots greedily: sparsest column first, shortest unit row within it.
    ///
    /// Columns are kept in a lazy heap keyed by their current count; a column
    /// without a unit entry is dropped until a pivot touches it again.
    fn run(&mut self) {
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..self.col_count.len())
            .filter(|&c| self.col_count[c] > 0)
            .map(|c| Reverse((self.col_count[c], c)))
            .collect();
        while let Some(Reverse((count, c))) = heap.pop() {
            if count == 0 || self.col_count[c] != count {
                continue;
            }
            let best = self
                .rows_in_col(c)
                .into_iter()
                .filter(|&r| self.value(r, c).is_some_and(|v| v.abs() == 1))
                .min_by_key(|&r| self.rows[r].len());
            let Some(r) = best else { continue };
            let Some(mut touched) = self.pivot(r, c) else { return };
            touched.sort_unstable();
            touched.dedup();
            for t in touched {
                if self.col_count[t] > 0 {
                    heap.push(Reverse((self.col_count[t], t)));
                }
            }
        }
    }

    fn residual(&self) -> Vec<Vec<BigInt>> {
        let live_cols: Vec<usize> = (0..self.col_count.len()).filter(|&c| self.col_count[c] > 0).collect();
        let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, r)| self.row_alive[*i] && !r.is_empty())
            .map(|(_, r)| {
                let mut dense = vec![BigInt::zero(); live_cols.len()];
                for &(c, v) in r {
                    dense[col_pos[&c]] = BigInt::from(v);
                }
                dense
            })
            .collect()
    }
}

/// Nonzero invariant factors of a dense integer matrix (absolute values).
pub fn dense_invariants(mut a: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in (t + 1)..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pivot_row = a[t].clone();
                for j in t..cols {
                    let sub = &q * &pivot_row[j];
                    a[i][j] -= sub;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in (t + 1)..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let sub = &q * &a[i][t];
                    a[i][j] -= sub;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility of the trailing block by the pivot
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
                match bad {
                    Some(i) => {
                        let row = a[i].clone();
                        for (j, v) in row.into_iter().enumerate().skip(t) {
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
            // move the smallest nonzero of row/column t onto the diagonal
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            }
            if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        let (_, mag) = a[t][t].clone().into_parts();
        debug_assert!(a[t][t].sign() != Sign::NoSign);
        out.push(mag);
        t += 1;
    }
    out
}

/// Rank over `GF(2)`.
pub fn rank_mod2(matrix: &SparseMatrix) -> usize {
    let words = matrix.rows.div_ceil(64);
    let mut cols: Vec<Vec<u64>> = matrix
        .columns
        .iter()
        .map(|col| {
            let mut bits = vec![0u64; words];
            for &(i, v) in col {
                if v.rem_euclid(2) == 1 {
                    bits[i / 64] ^= 1 << (i % 64);
                }
            }
            bits
        })
        .collect();
    let mut pivots: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rank = 0;
    for j in 0..cols.len() {
        loop {
            let low = cols[j]
                .iter()
                .enumerate()
                .rev()
                .find(|(_, &w)| w != 0)
                .map(|(k, &w)| k * 64 + 63 - w.leading_zeros() as usize);
            let Some(low) = low else { break };
            match pivots.get(&low) {
                Some(&p) => {
                    let (left, right) = cols.split_at_mut(j);
                    for (a, b) in right[0].iter_mut().zip(&left[p]) {
                        *a ^= b;
                    }
                }
                None => {
                    pivots.insert(low, j);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Classification from the f-vector and homology.
pub fn classify(f_vector: &[usize], betti: &BettiVector) -> HomotopyClass {
    if f_vector == [1] {
        return HomotopyClass::Point;
    }
    if !betti.is_torsion_free() {
        return HomotopyClass::Other;
    }
    match betti.betti.as_slice() {
        [1] => HomotopyClass::Contractible,
        [1, 1] => HomotopyClass::Circle,
        [2] => HomotopyClass::TwoPoints,
        _ => HomotopyClass::Other,
    }
}

/// One connected component with its cells in canonical order.
#[derive(Debug, Clone)]
pub struct Component {
    pub key: Option<ComponentKey>,
    pub cells: Vec<MultiHomCell>,
}

impl Component {
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for c in &self.cells {
            let d = c.dim();
            if f.len() <= d {
                f.resize(d + 1, 0);
            }
            f[d] += 1;
        }
        f
    }

    pub fn chain_complex(&self) -> Result<ChainComplex, HomologyError> {
        ChainComplex::from_cells(&self.cells)
    }

    pub fn report(&self, ring: Option<Ring>) -> Result<ComponentReport, HomologyError> {
        let f_vector = self.f_vector();
        let (betti, classification) = match ring {
            Some(ring) => {
                let betti = self.chain_complex()?.homology(ring);
                let class = classify(&f_vector, &betti);
                (Some(betti), Some(class))
            }
            None => (None, None),
        };
        Ok(ComponentReport { key: self.key.clone(), f_vector, betti, classification })
    }
}

/// Per-component summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub key: Option<ComponentKey>,
    pub f_vector: Vec<usize>,
    pub betti: Option<BettiVector>,
    pub classification: Option<HomotopyClass>,
}

/// How component keys are read off vertices of a complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyScheme {
    /// Codec keys (cycle targets other than `C_4`, and path targets).
    Codec(CycleSpec),
    /// `C_4` targets: parity of the image of source vertex 1.
    FourCycleParity,
}

impl KeyScheme {
    /// Recognizes `Hom(C_m, C_n)` and `Hom(C_m, L_n)` by comparing graphs.
    pub fn detect(source: &Graph, target: &Graph) -> Option<Self> {
        let m = source.vertex_count();
        if codec::source_cycle(m).ok().as_ref() != Some(source) {
            return None;
        }
        let n = target.vertex_count();
        if Graph::cycle(n).ok().as_ref() == Some(target) {
            if n == 4 {
                return Some(KeyScheme::FourCycleParity);
            }
            return CycleSpec::new(m, n, TargetFamily::Cycle).ok().map(KeyScheme::Codec);
        }
        if Graph::path(n).ok().as_ref() == Some(target) {
            return CycleSpec::new(m, n, TargetFamily::Path).ok().map(KeyScheme::Codec);
        }
        None
    }

    pub fn key_of_vertex(&self, vertex: &[usize]) -> Option<ComponentKey> {
        match self {
            KeyScheme::Codec(spec) => {
                codec::encode_vertex(spec, vertex).ok().map(|v| codec::component_key(spec, &v))
            }
            KeyScheme::FourCycleParity => Some(ComponentKey {
                returning: None,
                parity: Some(parity_class(vertex[0])),
                base: None,
            }),
        }
    }
}

/// Splits a complex into connected components of its 1-skeleton.
///
/// Every cell joins the component of its lowest vertex; closures are connected,
/// so this is the component of the whole cell. Components are ordered by their
/// first vertex in canonical order.
pub fn components(x: &HomComplex) -> Vec<Component> {
    let vertices = x.vertices();
    let vertex_index: HashMap<&MultiHomCell, usize> =
        vertices.iter().enumerate().map(|(k, v)| (v, k)).collect();
    let mut uf = UnionFind::new(vertices.len());
    for edge in x.cells_of_dim(1) {
        let ends = edge.facets().expect("1-cell");
        uf.union(vertex_index[&ends[0]], vertex_index[&ends[1]]);
    }
    let scheme = KeyScheme::detect(x.source(), x.target());
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut out: Vec<Component> = Vec::new();
    for (k, v) in vertices.iter().enumerate() {
        let root = uf.find(k);
        if let std::collections::hash_map::Entry::Vacant(e) = slot.entry(root) {
            e.insert(out.len());
            let key = scheme.and_then(|s| s.key_of_vertex(&v.as_vertex().expect("vertex")));
            out.push(Component { key, cells: Vec::new() });
        }
    }
    for cell in x.cells() {
        let root = uf.find(vertex_index[&cell.min_vertex()]);
        out[slot[&root]].cells.push(cell.clone());
    }
    out
}

/// Components read off the codec enumeration, grouped by component key.
///
/// Isolated points carry their base label in the key, so every group is one
/// component; groups are ordered by key.
pub fn components_from_codes(spec: &CycleSpec) -> Vec<Component> {
    let mut groups: BTreeMap<ComponentKey, Vec<MultiHomCell>> = BTreeMap::new();
    for code in codec::enumerate_all(spec) {
        let key = codec::component_key(spec, &code.vertex_code());
        let cell = codec::to_multi(spec, &code).expect("enumerated codes are valid");
        groups.entry(key).or_default().push(cell);
    }
    groups
        .into_iter()
        .map(|(key, mut cells)| {
            cells.sort();
            Component { key: Some(key), cells }
        })
        .collect()
}

/// Component reports with homology, computed in parallel.
pub fn analyze(components: &[Component], ring: Ring) -> Result<Vec<ComponentReport>, HomologyError> {
    components.par_iter().map(|c| c.report(Some(ring))).collect()
}

/// Homology of a whole complex.
pub fn betti(x: &HomComplex, ring: Ring) -> Result<BettiVector, HomologyError> {
    Ok(ChainComplex::from_cells(x.cells())?.homology(ring))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> Graph {
        Graph::cycle(n).unwrap()
    }

    fn dense_rank(m: &[Vec<i64>]) -> usize {
        // fraction-free Gaussian elimination over the rationals via i128
        let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
        let mut rank = 0;
        for j in 0..cols {
            let Some(p) = (rank..rows).find(|&i| a[i][j] != 0) else { continue };
            a.swap(rank, p);
            for i in 0..rows {
                if i != rank && a[i][j] != 0 {
                    let (x, y) = (a[rank][j], a[i][j]);
                    for k in 0..cols {
                        a[i][k] = a[i][k] * x - a[rank][k] * y;
                    }
                    let g = a[i].iter().fold(0i128, |g, &v| gcd(g, v.abs()));
                    if g > 1 {
                        a[i].iter_mut().for_each(|v| *v /= g);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn single_square() {
        let sq = MultiHomCell::from_sets(&[vec![1, 3], vec![2, 4]]);
        let cells = sq.closure();
        let cc = ChainComplex::from_cells(&cells).unwrap();
        assert_eq!(cc.f_vector, vec![4, 4, 1]);
        let col = &cc.boundaries[2].columns[0];
        assert_eq!(col.len(), 4);
        assert!(col.iter().all(|e| e.1.abs() == 1));
        assert_eq!(cc.homology(Ring::Integer).betti, vec![1]);
    }

    #[test]
    fn fifteen_cycle_component() {
        let x = HomComplex::build(&c(5), &c(3)).unwrap();
        let comps = components(&x);
        assert_eq!(comps.len(), 2);
        for comp in &comps {
            assert_eq!(comp.f_vector(), vec![15, 15]);
            let cc = comp.chain_complex().unwrap();
            assert_eq!(smith_invariants(&cc.boundaries[1]).rank, 14);
            assert_eq!(cc.homology(Ring::Integer).betti, vec![1, 1]);
        }
    }

    #[test]
    fn cube_columns_have_six_entries() {
        let comps = components_from_codes(&CycleSpec::cycle(9, 3).unwrap());
        let big: Vec<&Component> = comps.iter().filter(|c| c.cells.len() > 1).collect();
        assert_eq!(big.len(), 2);
        let cc = big[0].chain_complex().unwrap();
        assert_eq!(cc.f_vector, vec![252, 567, 405, 90]);
        assert_eq!(cc.boundaries[3].rows, 405);
        assert_eq!(cc.boundaries[3].cols(), 90);
        assert!(cc.boundaries[3].columns.iter().all(|c| c.len() == 6));
    }

    #[test]
    fn klein_bottle_like_torsion() {
        // ∂ = [2] has a Z/2 cokernel
        let m = SparseMatrix { rows: 1, columns: vec![vec![(0, 2)]] };
        let r = smith_invariants(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.torsion, vec![BigUint::from(2u32)]);
        assert_eq!(rank_mod2(&m), 0);
    }

    #[test]
    fn dense_invariants_known_form() {
        // diag(2, 6) disguised: [[2, 4], [-2, 2]] has invariants 2, 6
        let a = vec![
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(-2), BigInt::from(2)],
        ];
        let f = dense_invariants(a);
        assert_eq!(f, vec![BigUint::from(2u32), BigUint::from(6u32)]);
    }

    #[test]
    fn sparse_rank_matches_dense_rank() {
        for (m, n) in [(4, 5), (6, 3), (6, 4), (6, 6), (7, 3)] {
            let x = HomComplex::build(&c(m), &c(n)).unwrap();
            let cc = ChainComplex::from_cells(x.cells()).unwrap();
            for b in cc.boundaries.iter().skip(1) {
                let expected = dense_rank(&b.to_dense());
                assert_eq!(smith_invariants(b).rank, expected, "m={m} n={n}");
                assert_eq!(rank_mod2(b), expected, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn classification_rules() {
        let bv = |b: Vec<usize>| BettiVector::new(b, vec![]);
        assert_eq!(classify(&[1], &bv(vec![1])), HomotopyClass::Point);
        assert_eq!(classify(&[4, 4], &bv(vec![1, 1])), HomotopyClass::Circle);
        assert_eq!(classify(&[4, 4, 1], &bv(vec![1])), HomotopyClass::Contractible);
        assert_eq!(classify(&[6, 12, 8], &bv(vec![1, 0, 1])), HomotopyClass::Other);
        assert_eq!(classify(&[2], &bv(vec![2])), HomotopyClass::TwoPoints);
        let twisted = BettiVector::new(vec![1, 0], vec![vec![], vec![BigUint::from(2u32)]]);
        assert_eq!(classify(&[9, 18, 9], &twisted), HomotopyClass::Other);
        assert_eq!(bv(vec![1, 1, 0, 0]).betti, vec![1, 1]);
    }

    #[test]
    fn four_cycle_target_is_two_points() {
        for m in [4, 6] {
            let x = HomComplex::build(&c(m), &c(4)).unwrap();
            assert_eq!(betti(&x, Ring::Integer).unwrap().betti, vec![2]);
            let comps = components(&x);
            assert_eq!(comps.len(), 2);
            let keys: Vec<_> = comps.iter().map(|c| c.key.clone().unwrap().parity).collect();
            assert_eq!(keys, vec![Some(1), Some(2)]);
        }
    }

    #[test]
    fn missing_facet_is_reported() {
        let sq = MultiHomCell::from_sets(&[vec![1, 3], vec![2, 4]]);
        let err = ChainComplex::from_cells(&[sq]).unwrap_err();
        assert!(matches!(err, HomologyError::NotClosed { .. }));
    }
}
