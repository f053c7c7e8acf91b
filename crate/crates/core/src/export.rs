//! JSON import and export of Hom complexes of cycles.
//!
//! A document records `m` (source cycle length), `n`, the target family and the
//! cells, each cell an array of sorted image sets. An optional parallel array
//! `codes` carries the cell codes where the codec applies.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codec::{self, CodecError, CycleSpec, TargetFamily};
use crate::graph::{Graph, GraphError};
use crate::hom::{HomComplex, MultiHomCell};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("cell {index} is not a multi-homomorphism: {cell:?}")]
    InvalidCell { index: usize, cell: Vec<Vec<usize>> },
    #[error("cell list is not closed under taking faces: {0} is missing")]
    NotClosed(String),
    #[error("code {index} ({code}) does not match its cell")]
    CodeMismatch { index: usize, code: String },
    #[error("{codes} codes given for {cells} cells")]
    CodeCount { codes: usize, cells: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub m: usize,
    pub n: usize,
    pub family: TargetFamily,
    pub cells: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codes: Option<Vec<String>>,
}

/// Source `C_m` and target `C_n` or `L_n`.
pub fn graphs_for(m: usize, n: usize, family: TargetFamily) -> Result<(Graph, Graph), GraphError> {
    let target = match family {
        TargetFamily::Cycle => Graph::cycle(n)?,
        TargetFamily::Path => Graph::path(n)?,
    };
    Ok((codec::source_cycle(m)?, target))
}

/// Builds `Hom(C_m, C_n)` or `Hom(C_m, L_n)` with the given cell budget.
pub fn build_family(
    m: usize,
    n: usize,
    family: TargetFamily,
    budget: usize,
) -> Result<HomComplex, crate::hom::HomError> {
    let (s, t) = graphs_for(m, n, family)?;
    HomComplex::build_with_budget(&s, &t, budget)
}

/// Document for a complex; codes are attached when requested and the codec applies.
pub fn export(x: &HomComplex, family: TargetFamily, with_codes: bool) -> Result<ComplexDocument, ExportError> {
    let (m, n) = (x.source().vertex_count(), x.target().vertex_count());
    let cells: Vec<Vec<Vec<usize>>> = x.cells().iter().map(MultiHomCell::to_sets).collect();
    let codes = match CycleSpec::new(m, n, family) {
        Ok(spec) if with_codes => Some(
            x.cells()
                .iter()
                .map(|c| codec::from_multi(&spec, c).map(|code| code.to_string()))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        _ => None,
    };
    Ok(ComplexDocument { m, n, family, cells, codes })
}

/// Reads a document back into a complex, checking every cell, closedness, and codes.
pub fn import(doc: &ComplexDocument) -> Result<HomComplex, ExportError> {
    let (source, target) = graphs_for(doc.m, doc.n, doc.family)?;
    let mut cells = Vec::with_capacity(doc.cells.len());
    for (index, sets) in doc.cells.iter().enumerate() {
        let invalid = || ExportError::InvalidCell { index, cell: sets.clone() };
        let in_range = sets.len() == source.vertex_count()
            && sets.iter().all(|s| !s.is_empty() && s.iter().all(|&v| (1..=doc.n).contains(&v)));
        if !in_range {
            return Err(invalid());
        }
        let cell = MultiHomCell::from_sets(sets);
        if !cell.is_valid_in(&source, &target) {
            return Err(invalid());
        }
        cells.push(cell);
    }
    let x = HomComplex::from_parts(source, target, cells);
    for c in x.cells() {
        if c.dim() > 0 {
            for f in c.facets().expect("positive dimension") {
                if !x.contains(&f) {
                    return Err(ExportError::NotClosed(f.to_string()));
                }
            }
        }
    }
    if let Some(codes) = &doc.codes {
        if codes.len() != doc.cells.len() {
            return Err(ExportError::CodeCount { codes: codes.len(), cells: doc.cells.len() });
        }
        let spec = CycleSpec::new(doc.m, doc.n, doc.family)?;
        for (index, (code, sets)) in codes.iter().zip(&doc.cells).enumerate() {
            let parsed: codec::CellCode = code.parse()?;
            if codec::to_multi(&spec, &parsed)? != MultiHomCell::from_sets(sets) {
                return Err(ExportError::CodeMismatch { index, code: code.clone() });
            }
        }
    }
    Ok(x)
}

/// Compact JSON, one line.
pub fn to_json(doc: &ComplexDocument) -> Result<String, ExportError> {
    Ok(serde_json::to_string(doc)?)
}

pub fn from_json(text: &str) -> Result<ComplexDocument, ExportError> {
    Ok(serde_json::from_str(text)?)
}
