//! Cross-checks between the brute-force complex, the codec, the closed forms,
//! homology and the matchings, over a grid of `(m, n)`.
//!
//! Reports are deterministic: cases and checks always come out in the same order.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::census;
use crate::codec::{self, CycleSpec, TargetFamily};
use crate::export::build_family;
use crate::hom::{HomComplex, HomError, MultiHomCell};
use crate::homology::{self, HomotopyClass, Ring};
use crate::morse;

/// One comparison of an expected value against a computed one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub m: usize,
    pub n: usize,
    pub family: TargetFamily,
    pub name: &'static str,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.ok { "ok  " } else { "FAIL" };
        write!(f, "{tag} {:<5} m={:<2} n={:<2} {:<22}", self.family, self.m, self.n, self.name)?;
        if self.ok {
            write!(f, " {}", self.computed)
        } else {
            write!(f, " expected {} computed {}", self.expected, self.computed)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn mismatches(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        let failed = self.mismatches().len();
        out.push_str(&format!("{} checks, {} mismatches\n", self.checks.len(), failed));
        out
    }
}

/// Grid bounds; `m` ranges over `3..=max_m` for cycles and over even
/// `2..=max_m` for paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridConfig {
    pub max_m: usize,
    pub max_n: usize,
    pub paths: bool,
    pub ring: Ring,
    pub budget: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { max_m: 8, max_n: 8, paths: true, ring: Ring::Integer, budget: crate::hom::DEFAULT_CELL_BUDGET }
    }
}

struct Case {
    m: usize,
    n: usize,
    family: TargetFamily,
    checks: Vec<Check>,
}

impl Case {
    fn check(&mut self, name: &'static str, expected: impl fmt::Display, computed: impl fmt::Display) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let ok = expected == computed;
        self.checks.push(Check { m: self.m, n: self.n, family: self.family, name, expected, computed, ok });
    }
}

fn list<T: fmt::Debug>(items: &[T]) -> String {
    format!("{items:?}")
}

pub fn verify_grid(config: &GridConfig) -> Result<VerifyReport, HomError> {
    let mut cases: Vec<(usize, usize, TargetFamily)> = Vec::new();
    for m in 3..=config.max_m {
        for n in 3..=config.max_n {
            cases.push((m, n, TargetFamily::Cycle));
        }
    }
    if config.paths {
        for m in (2..=config.max_m).step_by(2) {
            for n in 2..=config.max_n {
                cases.push((m, n, TargetFamily::Path));
            }
        }
    }
    let results: Vec<Vec<Check>> = cases
        .into_par_iter()
        .map(|(m, n, family)| verify_case(m, n, family, config.ring, config.budget))
        .collect::<Result<_, _>>()?;
    Ok(VerifyReport { checks: results.into_iter().flatten().collect() })
}

/// All checks for one complex.
pub fn verify_case(
    m: usize,
    n: usize,
    family: TargetFamily,
    ring: Ring,
    budget: usize,
) -> Result<Vec<Check>, HomError> {
    let x = build_family(m, n, family, budget)?;
    let mut case = Case { m, n, family, checks: Vec::new() };
    case.check("empty", census::is_empty(m, n, family), x.is_empty());
    if family == TargetFamily::Cycle {
        case.check("euler", census::euler_char(m, n), x.euler_characteristic());
    }
    let spec = CycleSpec::new(m, n, family).ok();
    if let Some(spec) = &spec {
        codec_checks(&mut case, spec, &x);
    }
    if x.is_empty() {
        return Ok(case.checks);
    }
    let comps = homology::components(&x);
    let reports = match homology::analyze(&comps, ring) {
        Ok(r) => r,
        Err(e) => {
            case.check("boundary", "∂∂ = 0", e);
            return Ok(case.checks);
        }
    };
    let euler_poincare = reports.iter().all(|r| {
        let f: i64 = crate::hom::alternating_sum(&r.f_vector);
        r.betti.as_ref().is_some_and(|b| b.euler_characteristic() == f)
    });
    case.check("euler-poincare", true, euler_poincare);
    match family {
        TargetFamily::Cycle => {
            let mut predicted: Vec<(String, HomotopyClass)> =
                census::component_table(m, n).into_iter().map(|e| (e.key.to_string(), e.predicted)).collect();
            predicted.sort();
            let mut found: Vec<(String, HomotopyClass)> = reports
                .iter()
                .map(|r| (r.key.as_ref().map_or("?".into(), |k| k.to_string()), r.classification.expect("computed")))
                .collect();
            found.sort();
            case.check("census", list(&predicted), list(&found));
            let allowed = if n == 4 { vec![HomotopyClass::Contractible] } else { vec![HomotopyClass::Point, HomotopyClass::Circle] };
            let anomalies = reports.iter().filter(|r| !allowed.contains(&r.classification.expect("computed"))).count();
            case.check("point-or-circle", 0, anomalies);
            if n != 4 {
                let mut bad = Vec::new();
                for r in &reports {
                    let key = r.key.as_ref().expect("codec key");
                    if key.is_point() {
                        continue;
                    }
                    let rr = key.returning.expect("cycle key");
                    let expected: Vec<u64> = (0..r.f_vector.len().max(rr.min(m - rr) + 1))
                        .map(|d| census::cell_count_u64(m, n, rr, d).unwrap_or(0))
                        .collect();
                    let got: Vec<u64> = (0..expected.len()).map(|d| *r.f_vector.get(d).unwrap_or(&0) as u64).collect();
                    if expected != got {
                        bad.push(format!("{key}: {expected:?} vs {got:?}"));
                    }
                }
                case.check("cell-counts", "[]", list(&bad));
            }
        }
        TargetFamily::Path => {
            let acyclic = reports
                .iter()
                .filter(|r| matches!(r.classification, Some(HomotopyClass::Point | HomotopyClass::Contractible)))
                .count();
            case.check("components", 2, reports.len());
            case.check("acyclic-components", 2, acyclic);
        }
    }
    if let Some(spec) = &spec {
        morse_checks(&mut case, spec, &x);
    }
    Ok(case.checks)
}

fn codec_checks(case: &mut Case, spec: &CycleSpec, x: &HomComplex) {
    let codes = codec::enumerate_all(spec);
    let mut f = Vec::new();
    for c in &codes {
        if f.len() <= c.dim() {
            f.resize(c.dim() + 1, 0);
        }
        f[c.dim()] += 1;
    }
    case.check("codec-f-vector", list(&x.f_vector()), list(&f));
    let round_trip_failures = x
        .cells()
        .par_iter()
        .filter(|cell| {
            codec::from_multi(spec, cell).and_then(|code| codec::to_multi(spec, &code)).ok().as_ref() != Some(*cell)
        })
        .count();
    case.check("codec-round-trip", 0, round_trip_failures);
    let facet_failures = codes
        .par_iter()
        .filter(|code| code.dim() > 0)
        .filter(|code| {
            let via_codes: Option<Vec<MultiHomCell>> = codec::facets_of_code(spec, code)
                .ok()
                .and_then(|fs| fs.iter().map(|c| codec::to_multi(spec, c).ok()).collect());
            let direct = codec::to_multi(spec, code).ok().and_then(|c| c.facets().ok());
            match (via_codes, direct) {
                (Some(mut a), Some(mut b)) => {
                    a.sort();
                    b.sort();
                    a != b
                }
                _ => true,
            }
        })
        .count();
    case.check("codec-facets", 0, facet_failures);
}

fn morse_checks(case: &mut Case, spec: &CycleSpec, x: &HomComplex) {
    let strata = morse::all_strata(spec);
    let failed: Vec<String> = strata
        .iter()
        .filter(|s| !s.passed())
        .map(|s| format!("(i={}, r={}) critical {:?}", s.base, s.returning, s.critical))
        .collect();
    case.check("stratum-collapse", "[]", list(&failed));
    if spec.family() == TargetFamily::Cycle {
        let bad: Vec<usize> = (1..=spec.n())
            .into_par_iter()
            .filter(|&i| {
                let (poset, matching) = morse::first_image_matching(x, i);
                let Ok(report) = morse::verify_matching(&poset, &matching) else { return true };
                let mut expected: Vec<MultiHomCell> = spec
                    .returning_counts()
                    .into_iter()
                    .flat_map(|r| morse::x_tilde_cells(spec, i, r))
                    .filter_map(|c| codec::to_multi(spec, &c).ok())
                    .collect();
                expected.sort();
                let mut got = report.critical_cells;
                got.sort();
                !report.acyclic || got != expected
            })
            .collect();
        case.check("first-image", "[]", list(&bad));
    }
}
