//! Returning-point codes.
//!
//! A vertex of Hom(C_m, C_n) is a closed walk of length m around C_n. Its code
//! records the first label and the positions where the walk steps backwards.
//! Cells add plus-flags on some of those positions.

use hom_cycles::codec::{self, CellCode, CycleSpec};

fn main() {
    let spec = CycleSpec::cycle(6, 9).unwrap();
    let v = codec::encode_vertex(&spec, &[1, 9, 8, 9, 1, 9]).unwrap();
    println!("(1,9,8,9,1,9) -> {v}");
    println!("{v} -> {:?}", codec::decode_vertex(&spec, &v).unwrap());

    let spec = CycleSpec::cycle(8, 8).unwrap();
    let cube: CellCode = "(2; 2, 3+, 6+, 8+)".parse().unwrap();
    println!("{cube} = {}", codec::to_multi(&spec, &cube).unwrap());
    for f in codec::facets_of_code(&spec, &cube).unwrap() {
        println!("  {f:<20} {}", codec::to_multi(&spec, &f).unwrap());
    }

    // plus directly before another returning point is not a cell
    let bad: CellCode = "(2; 2+, 3, 6, 8)".parse().unwrap();
    println!("{bad}: {}", codec::validate_cell(&spec, &bad).unwrap_err());

    let spec = CycleSpec::cycle(9, 3).unwrap();
    for r in spec.returning_counts() {
        let counts: Vec<usize> = (0..=r.min(9 - r)).map(|d| codec::enumerate_cells(&spec, r, d).len()).collect();
        println!("Hom(C_9, C_3), r = {r}: {counts:?}");
    }
}
