//! Closed-form counts for `Hom(C_m, C_n)`: cells per component, the component
//! table, Euler characteristics, emptiness, and the alternating factorial identity.
//!
//! Everything here is exact integer or rational arithmetic.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::codec::{parity_class, ComponentKey, TargetFamily};
use crate::homology::HomotopyClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("target C_{0} is outside the closed-form census")]
    Target(usize),
    #[error("no component of Hom(C_{m}, C_{n}) has {r} returning points")]
    Returning { m: usize, n: usize, r: usize },
    #[error("dimension {d} exceeds min(r, m - r) = {max}")]
    Dimension { d: usize, max: usize },
    #[error("identity needs 1 <= r <= m - 1, got m = {m}, r = {r}")]
    IdentityRange { m: usize, r: usize },
}

/// One predicted component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CensusEntry {
    pub key: ComponentKey,
    pub predicted: HomotopyClass,
    pub label: String,
}

/// Which row of the component table covers `(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableRow {
    /// `n = 4`, `m` even: two contractible components.
    FourEven,
    /// `n = 2l`, `l != 2`, `m = 2sl`.
    EvenDivides { l: usize, s: usize },
    /// `n = 2l`, `m = 2k`, `l` does not divide `k`.
    EvenNotDivides { l: usize, k: usize },
    /// `n` even, `m` odd.
    EvenOddEmpty,
    /// `n` odd, `m = sn`.
    OddDivides { s: usize },
    /// `n` odd, `m` odd, `n` does not divide `m`.
    OddOdd,
    /// `n` odd, `m = 2k`, `n` does not divide `m`.
    OddEven { k: usize },
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableRow::FourEven => write!(f, "n=4, m=2k: homotopy equivalent to S^0"),
            TableRow::EvenDivides { l, s } => {
                write!(f, "n=2l (l={l}), m=2sl (s={s}): 2n points and 4s-2 circles")
            }
            TableRow::EvenNotDivides { l, k } => {
                write!(f, "n=2l (l={l}), m=2k (k={k}), l∤k: 2(2[k/l]+1) circles")
            }
            TableRow::EvenOddEmpty => write!(f, "n=2l, m=2k+1: empty"),
            TableRow::OddDivides { s } => {
                write!(f, "n=2l+1, m=sn (s={s}): 2n points and s-1 circles")
            }
            TableRow::OddOdd => write!(f, "n=2l+1, m=2k+1, n∤m: [m/n]_odd+1 circles"),
            TableRow::OddEven { k } => {
                write!(f, "n=2l+1, m=2k (k={k}), n∤m: [m/n]_even+1 circles")
            }
        }
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, j| acc * j)
}

fn binomial(a: usize, b: usize) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    factorial(a) / (factorial(b) * factorial(a - b))
}

fn check_cycle_target(m: usize, n: usize, r: usize) -> Result<(), CensusError> {
    if n < 3 || n == 4 {
        return Err(CensusError::Target(n));
    }
    if r > m || (m as i64 - 2 * r as i64).rem_euclid(n as i64) != 0 {
        return Err(CensusError::Returning { m, n, r });
    }
    Ok(())
}

/// Number of `d`-cells in one component whose vertices have `r` returning points.
///
/// For `0 < r < m` this is `N m (m-d-1)! / (d! (r-d)! (m-r-d)!)` with `N = n` for
/// odd `n` and `N = n / 2` for even `n`. Components with `r` equal to `0` or `m`
/// are single points.
pub fn cell_count(m: usize, n: usize, r: usize, d: usize) -> Result<BigUint, CensusError> {
    check_cycle_target(m, n, r)?;
    if r == 0 || r == m {
        return Ok(if d == 0 { BigUint::one() } else { BigUint::zero() });
    }
    let max = r.min(m - r);
    if d > max {
        return Err(CensusError::Dimension { d, max });
    }
    let big_n = if n % 2 == 1 { n } else { n / 2 };
    let numerator = factorial(m - d - 1) * (big_n * m);
    Ok(numerator / (factorial(d) * factorial(r - d) * factorial(m - r - d)))
}

/// The same count assembled from binomials: `N [C(m-d, d) + C(m-d-1, d-1)] C(m-2d, r-d)`.
pub fn cell_count_binomial(m: usize, n: usize, r: usize, d: usize) -> Result<BigUint, CensusError> {
    check_cycle_target(m, n, r)?;
    if r == 0 || r == m {
        return Ok(if d == 0 { BigUint::one() } else { BigUint::zero() });
    }
    let max = r.min(m - r);
    if d > max {
        return Err(CensusError::Dimension { d, max });
    }
    let big_n = BigUint::from(if n % 2 == 1 { n } else { n / 2 });
    let placements = if d == 0 {
        BigUint::one()
    } else {
        binomial(m - d, d) + binomial(m - d - 1, d - 1)
    };
    Ok(big_n * placements * binomial(m - 2 * d, r - d))
}

/// Euler characteristic of `Hom(C_m, C_n)` as predicted by the component table.
///
/// Empty complexes report 0.
pub fn euler_char(m: usize, n: usize) -> i64 {
    if n == 4 && m % 2 == 0 {
        2
    } else if n != 4 && m % n == 0 {
        2 * n as i64
    } else {
        0
    }
}

/// Whether `Hom(C_m, target)` is empty.
pub fn is_empty(m: usize, n: usize, family: TargetFamily) -> bool {
    match family {
        TargetFamily::Cycle => (m % 2 == 1 && n % 2 == 0) || (m % 2 == 1 && n % 2 == 1 && m < n),
        TargetFamily::Path => m % 2 == 1,
    }
}

/// `sum_d (-1)^d (m-d-1)! / (d! (r-d)! (m-r-d)!)` over `0 <= d <= min(r, m-r)`.
pub fn alternating_identity(m: usize, r: usize) -> Result<BigRational, CensusError> {
    if r == 0 || r >= m {
        return Err(CensusError::IdentityRange { m, r });
    }
    let mut sum = BigRational::zero();
    for d in 0..=r.min(m - r) {
        let num = BigInt::from(factorial(m - d - 1));
        let den = BigInt::from(factorial(d) * factorial(r - d) * factorial(m - r - d));
        let term = BigRational::new(num, den);
        if d % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

pub fn table_row(m: usize, n: usize) -> TableRow {
    if n % 2 == 0 {
        let l = n / 2;
        if m % 2 == 1 {
            TableRow::EvenOddEmpty
        } else if n == 4 {
            TableRow::FourEven
        } else if m % n == 0 {
            TableRow::EvenDivides { l, s: m / n }
        } else {
            TableRow::EvenNotDivides { l, k: m / 2 }
        }
    } else if m % n == 0 {
        TableRow::OddDivides { s: m / n }
    } else if m % 2 == 1 {
        TableRow::OddOdd
    } else {
        TableRow::OddEven { k: m / 2 }
    }
}

/// Largest odd integer `<= x` (may be negative).
fn floor_odd(x: i64) -> i64 {
    if x.rem_euclid(2) == 1 {
        x
    } else {
        x - 1
    }
}

fn floor_even(x: i64) -> i64 {
    x - x.rem_euclid(2)
}

/// The predicted component list of `Hom(C_m, C_n)`, sorted by key.
pub fn component_table(m: usize, n: usize) -> Vec<CensusEntry> {
    let even = n % 2 == 0;
    let circles_at = |r: usize| -> Vec<CensusEntry> {
        let parities: Vec<Option<u8>> = if even { vec![Some(1), Some(2)] } else { vec![None] };
        parities
            .into_iter()
            .map(|parity| {
                let key = ComponentKey { returning: Some(r), parity, base: None };
                CensusEntry { label: key.to_string(), key, predicted: HomotopyClass::Circle }
            })
            .collect()
    };
    let points = || -> Vec<CensusEntry> {
        [0, m]
            .into_iter()
            .flat_map(|r| {
                (1..=n).map(move |b| {
                    let key = ComponentKey {
                        returning: Some(r),
                        parity: even.then(|| parity_class(b)),
                        base: Some(b),
                    };
                    CensusEntry { label: key.to_string(), key, predicted: HomotopyClass::Point }
                })
            })
            .collect()
    };
    let mut out: Vec<CensusEntry> = match table_row(m, n) {
        TableRow::EvenOddEmpty => Vec::new(),
        TableRow::FourEven => (1..=2)
            .map(|p| {
                let key = ComponentKey { returning: None, parity: Some(p), base: None };
                CensusEntry {
                    label: key.to_string(),
                    key,
                    predicted: HomotopyClass::Contractible,
                }
            })
            .collect(),
        TableRow::EvenDivides { l, s } => {
            let mut v = points();
            v.extend((1..2 * s).flat_map(|j| circles_at(j * l)));
            v
        }
        TableRow::EvenNotDivides { l, k } => {
            let reach = (k / l) as i64;
            (-reach..=reach).flat_map(|j| circles_at((k as i64 + j * l as i64) as usize)).collect()
        }
        TableRow::OddDivides { s } => {
            let mut v = points();
            v.extend((1..s).flat_map(|j| circles_at(j * n)));
            v
        }
        TableRow::OddOdd => {
            let top = floor_odd((m / n) as i64);
            (1..=top)
                .rev()
                .step_by(2)
                .flat_map(|t| {
                    let shift = n as i64 * t;
                    [(m as i64 - shift) / 2, (m as i64 + shift) / 2]
                })
                .flat_map(|r| circles_at(r as usize))
                .collect()
        }
        TableRow::OddEven { k } => {
            let top = floor_even((m / n) as i64) / 2;
            (-top..=top).flat_map(|j| circles_at((k as i64 + j * n as i64) as usize)).collect()
        }
    };
    out.sort();
    out
}

/// Cell counts as plain integers (panics only if a count overflows `u64`).
pub fn cell_count_u64(m: usize, n: usize, r: usize, d: usize) -> Result<u64, CensusError> {
    cell_count(m, n, r, d).map(|c| c.to_u64().expect("count fits in u64"))
}
