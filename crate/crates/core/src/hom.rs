//! Brute-force construction of `Hom(G, H)`.
//!
//! A cell is a multi-homomorphism: one nonempty set of target vertices per source
//! vertex, such that every choice across an edge of `G` is an edge of `H`. The
//! builder enumerates every cell exactly once by backtracking over source vertices,
//! so it doubles as the oracle for the cycle codec and the closed-form counts.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{bit, iter_bits, mask_to_vec, nonempty_submasks, Graph};

/// Default bound on the number of cells [`HomComplex::build`] will produce.
pub const DEFAULT_CELL_BUDGET: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("cell budget of {budget} exceeded after {partial} cells")]
    BudgetExceeded { budget: usize, partial: usize },
    #[error("a 0-dimensional cell has no facets")]
    ZeroDimensional,
    #[error("vertices {0} and {1} do not have equal neighborhoods")]
    NotTwins(usize, usize),
    #[error("cell {0} is not a cell of this complex")]
    UnknownCell(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// A cell of `Hom(G, H)`: entry `x - 1` is the image set of source vertex `x`,
/// stored as a bitmask over the target vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiHomCell {
    entries: Vec<u64>,
}

impl MultiHomCell {
    pub fn new(entries: Vec<u64>) -> Self {
        Self { entries }
    }

    /// Builds a cell from explicit vertex lists, one list per source vertex.
    pub fn from_sets<S: AsRef<[usize]>>(sets: &[S]) -> Self {
        Self::new(sets.iter().map(|s| crate::graph::vec_to_mask(s.as_ref())).collect())
    }

    /// A vertex (graph homomorphism) given as the tuple of images.
    pub fn from_vertex(images: &[usize]) -> Self {
        Self::new(images.iter().map(|&v| bit(v)).collect())
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Image set of source vertex `x` (1-based).
    pub fn entry(&self, x: usize) -> u64 {
        self.entries[x - 1]
    }

    pub fn source_len(&self) -> usize {
        self.entries.len()
    }

    pub fn dim(&self) -> usize {
        self.entries.iter().map(|e| e.count_ones() as usize).sum::<usize>() - self.entries.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.entries.iter().all(|e| e.count_ones() == 1)
    }

    /// The image tuple of a vertex, `None` for higher cells.
    pub fn as_vertex(&self) -> Option<Vec<usize>> {
        self.entries
            .iter()
            .map(|&e| (e.count_ones() == 1).then(|| e.trailing_zeros() as usize + 1))
            .collect()
    }

    /// The vertex obtained by keeping the smallest element of every entry.
    pub fn min_vertex(&self) -> MultiHomCell {
        MultiHomCell::new(self.entries.iter().map(|&e| e & e.wrapping_neg()).collect())
    }

    pub fn to_sets(&self) -> Vec<Vec<usize>> {
        self.entries.iter().map(|&e| mask_to_vec(e)).collect()
    }

    /// Face-poset order: `self <= other` iff every entry is contained in `other`'s.
    pub fn is_face_of(&self, other: &MultiHomCell) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a & !b == 0)
    }

    /// All codimension-one faces: remove one element from one entry of size >= 2.
    pub fn facets(&self) -> Result<Vec<MultiHomCell>, HomError> {
        if self.dim() == 0 {
            return Err(HomError::ZeroDimensional);
        }
        let mut out = Vec::new();
        for (k, &e) in self.entries.iter().enumerate() {
            if e.count_ones() < 2 {
                continue;
            }
            for v in iter_bits(e) {
                let mut entries = self.entries.clone();
                entries[k] &= !bit(v);
                out.push(MultiHomCell::new(entries));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Every cell in the closure, including `self`, in canonical order.
    pub fn closure(&self) -> Vec<MultiHomCell> {
        let mut out = vec![Vec::with_capacity(self.entries.len())];
        for &e in &self.entries {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    nonempty_submasks(e).map(move |s| {
                        let mut p = prefix.clone();
                        p.push(s);
                        p
                    })
                })
                .collect();
        }
        let mut cells: Vec<MultiHomCell> = out.into_iter().map(MultiHomCell::new).collect();
        cells.sort();
        cells
    }

    /// Checks the multi-homomorphism condition against `source` and `target`.
    pub fn is_valid_in(&self, source: &Graph, target: &Graph) -> bool {
        if self.entries.len() != source.vertex_count() {
            return false;
        }
        let all = target.vertex_mask();
        if self.entries.iter().any(|&e| e == 0 || e & !all != 0) {
            return false;
        }
        source.edges().into_iter().all(|(x, y)| {
            let allowed = target.common_neighbors(self.entry(y));
            self.entry(x) & !allowed == 0
        })
    }
}

/// Compares two masks as ascending lists of labels.
fn cmp_sorted_sets(a: u64, b: u64) -> Ordering {
    let mut ia = iter_bits(a);
    let mut ib = iter_bits(b);
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => match x.cmp(&y) {
                Ordering::Equal => continue,
                other => return other,
            },
        }
    }
}

impl Ord for MultiHomCell {
    /// Canonical order: dimension first, then the assignment with entries read as
    /// sorted lists, lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.entries.len().cmp(&other.entries.len()))
            .then_with(|| {
                self.entries
                    .iter()
                    .zip(&other.entries)
                    .map(|(&a, &b)| cmp_sorted_sets(a, b))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

impl PartialOrd for MultiHomCell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiHomCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, &e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            let set = mask_to_vec(e);
            if set.len() == 1 {
                write!(f, "{}", set[0])?;
            } else {
                write!(f, "{{")?;
                for (j, v) in set.iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "}}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiHomCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The complex `Hom(G, H)` with its cells in canonical order.
#[derive(Clone)]
pub struct HomComplex {
    source: Graph,
    target: Graph,
    cells: Vec<MultiHomCell>,
    index: HashMap<MultiHomCell, usize>,
    dim_offsets: Vec<usize>,
}

/// Per-source-vertex constraints for the backtracking search.
struct SearchPlan {
    /// Earlier neighbors (0-based) of each source vertex.
    earlier: Vec<Vec<usize>>,
    looped: Vec<bool>,
}

impl SearchPlan {
    fn new(source: &Graph) -> Self {
        let earlier = source
            .vertices()
            .map(|x| source.neighbors(x).into_iter().filter(|&y| y < x).map(|y| y - 1).collect())
            .collect();
        let looped = source.vertices().map(|x| source.has_loop(x)).collect();
        Self { earlier, looped }
    }
}

struct Search<'a> {
    target: &'a Graph,
    plan: &'a SearchPlan,
    budget: usize,
    counter: &'a AtomicUsize,
}

impl Search<'_> {
    fn candidates(&self, prefix: &[u64]) -> u64 {
        let x = prefix.len();
        self.plan.earlier[x]
            .iter()
            .fold(self.target.vertex_mask(), |acc, &y| acc & self.target.common_neighbors(prefix[y]))
    }

    fn admissible(&self, x: usize, set: u64) -> bool {
        !self.plan.looped[x] || set & !self.target.common_neighbors(set) == 0
    }

    fn extend(&self, prefix: &mut Vec<u64>, out: &mut Vec<MultiHomCell>) -> Result<(), HomError> {
        let x = prefix.len();
        if x == self.plan.earlier.len() {
            let seen = self.counter.fetch_add(1, AtomicOrdering::Relaxed) + 1;
            if seen > self.budget {
                return Err(HomError::BudgetExceeded { budget: self.budget, partial: seen - 1 });
            }
            out.push(MultiHomCell::new(prefix.clone()));
            return Ok(());
        }
        for set in nonempty_submasks(self.candidates(prefix)) {
            if !self.admissible(x, set) {
                continue;
            }
            prefix.push(set);
            let res = self.extend(prefix, out);
            prefix.pop();
            res?;
        }
        Ok(())
    }
}

impl HomComplex {
    /// Builds `Hom(source, target)` with the default cell budget.
    pub fn build(source: &Graph, target: &Graph) -> Result<Self, HomError> {
        Self::build_with_budget(source, target, DEFAULT_CELL_BUDGET)
    }

    /// Builds `Hom(source, target)`, failing once more than `budget` cells are found.
    ///
    /// The search is split on the image set of source vertex 1 and the parts run in
    /// parallel; the merged result is canonically sorted, so the output does not
    /// depend on scheduling.
    pub fn build_with_budget(source: &Graph, target: &Graph, budget: usize) -> Result<Self, HomError> {
        let plan = SearchPlan::new(source);
        let counter = AtomicUsize::new(0);
        let search = Search { target, plan: &plan, budget, counter: &counter };
        let first: Vec<u64> = nonempty_submasks(target.vertex_mask())
            .filter(|&s| search.admissible(0, s))
            .collect();
        let parts: Vec<Result<Vec<MultiHomCell>, HomError>> = first
            .par_iter()
            .map(|&s| {
                let mut out = Vec::new();
                let mut prefix = vec![s];
                search.extend(&mut prefix, &mut out).map(|_| out)
            })
            .collect();
        let mut cells = Vec::new();
        for part in parts {
            match part {
                Ok(p) => cells.extend(p),
                Err(HomError::BudgetExceeded { .. }) => {
                    let partial = counter.load(AtomicOrdering::Relaxed).min(budget);
                    return Err(HomError::BudgetExceeded { budget, partial });
                }
                Err(e) => return Err(e),
            }
        }
        Ok(Self::from_parts(source.clone(), target.clone(), cells))
    }

    /// Assembles a complex from an explicit cell list (sorted and deduplicated here).
    ///
    /// The caller is responsible for the list being closed under taking faces.
    pub fn from_parts(source: Graph, target: Graph, mut cells: Vec<MultiHomCell>) -> Self {
        cells.par_sort_unstable();
        cells.dedup();
        let index = cells.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();
        let top = cells.last().map_or(0, |c| c.dim() + 1);
        let mut dim_offsets = vec![0; top + 1];
        for c in &cells {
            dim_offsets[c.dim() + 1] += 1;
        }
        for d in 1..dim_offsets.len() {
            dim_offsets[d] += dim_offsets[d - 1];
        }
        Self { source, target, cells, index, dim_offsets }
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn cells(&self) -> &[MultiHomCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, cell: &MultiHomCell) -> Option<usize> {
        self.index.get(cell).copied()
    }

    pub fn contains(&self, cell: &MultiHomCell) -> bool {
        self.index.contains_key(cell)
    }

    /// Highest cell dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.last().map(MultiHomCell::dim)
    }

    pub fn cells_of_dim(&self, d: usize) -> &[MultiHomCell] {
        if d + 1 >= self.dim_offsets.len() {
            return &[];
        }
        &self.cells[self.dim_offsets[d]..self.dim_offsets[d + 1]]
    }

    /// The vertices, i.e. `Hom_0(G, H)`.
    pub fn vertices(&self) -> &[MultiHomCell] {
        self.cells_of_dim(0)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.dim_offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.f_vector())
    }

    /// Facets of a stored cell.
    pub fn facets(&self, cell: &MultiHomCell) -> Result<Vec<MultiHomCell>, HomError> {
        if !self.contains(cell) {
            return Err(HomError::UnknownCell(cell.to_string()));
        }
        cell.facets()
    }

    /// Maximal cells: cells no entry of which can absorb another target vertex.
    ///
    /// Found by growing the vertices upward one target vertex at a time, which
    /// reaches every cell independently of the backtracking builder.
    pub fn maximal_cells(&self) -> Vec<MultiHomCell> {
        let mut maximal: Vec<MultiHomCell> = self
            .upward_closure()
            .into_par_iter()
            .filter(|c| extensions(c, &self.source, &self.target).is_empty())
            .collect();
        maximal.sort();
        maximal
    }

    /// Every cell reachable from a vertex by enlarging entries one element at a time.
    pub fn upward_closure(&self) -> Vec<MultiHomCell> {
        let mut seen: HashSet<MultiHomCell> = self.vertices().iter().cloned().collect();
        let mut frontier: Vec<MultiHomCell> = self.vertices().to_vec();
        while !frontier.is_empty() {
            let grown: Vec<MultiHomCell> = frontier
                .par_iter()
                .flat_map_iter(|c| extensions(c, &self.source, &self.target))
                .collect();
            frontier = grown.into_iter().filter(|c| seen.insert(c.clone())).collect();
        }
        let mut cells: Vec<MultiHomCell> = seen.into_iter().collect();
        cells.sort();
        cells
    }

    /// Applies the fold `H -> H - v` sending `v` to its twin `u`.
    ///
    /// The result holds `Hom(G, H - v)` (target relabeled by
    /// [`Graph::delete_vertex`]) and, for every cell of `self`, the index of its
    /// image under the induced cellular map.
    pub fn fold_reduce(&self, u: usize, v: usize) -> Result<FoldReduction, HomError> {
        let count = self.target.vertex_count();
        for w in [u, v] {
            if w == 0 || w > count {
                return Err(crate::graph::GraphError::VertexOutOfRange { vertex: w, count }.into());
            }
        }
        if u == v || self.target.neighbor_mask(u) != self.target.neighbor_mask(v) {
            return Err(HomError::NotTwins(u, v));
        }
        let (reduced_target, relabel) = self.target.delete_vertex(v)?;
        let complex = HomComplex::build(&self.source, &reduced_target)?;
        let fold = |entry: u64| -> u64 {
            let entry = if entry & bit(v) != 0 { (entry | bit(u)) & !bit(v) } else { entry };
            iter_bits(entry).fold(0, |acc, w| acc | bit(relabel[w - 1].expect("v removed")))
        };
        let cell_map = self
            .cells
            .iter()
            .map(|c| {
                let image = MultiHomCell::new(c.entries.iter().map(|&e| fold(e)).collect());
                complex
                    .index_of(&image)
                    .ok_or_else(|| HomError::UnknownCell(image.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FoldReduction { complex, cell_map, relabel })
    }
}

impl fmt::Debug for HomComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomComplex")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

impl PartialEq for HomComplex {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.cells == other.cells
    }
}

impl Eq for HomComplex {}

/// Output of [`HomComplex::fold_reduce`].
#[derive(Debug, Clone)]
pub struct FoldReduction {
    pub complex: HomComplex,
    /// `cell_map[k]` is the index in `complex` of the image of cell `k`.
    pub cell_map: Vec<usize>,
    /// New label of every old target vertex (`None` for the deleted one).
    pub relabel: Vec<Option<usize>>,
}

/// Valid cells obtained by adding one target vertex to one entry.
fn extensions(cell: &MultiHomCell, source: &Graph, target: &Graph) -> Vec<MultiHomCell> {
    let mut out = Vec::new();
    for x in source.vertices() {
        for t in target.vertices() {
            if cell.entry(x) & bit(t) != 0 {
                continue;
            }
            let mut grown = cell.clone();
            grown.entries[x - 1] |= bit(t);
            if grown.is_valid_in(source, target) {
                out.push(grown);
            }
        }
    }
    out
}

pub(crate) fn alternating_sum(f: &[usize]) -> i64 {
    f.iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}
