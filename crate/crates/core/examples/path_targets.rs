//! Hom(C_2m, L_n) is homotopy equivalent to two points.

use hom_cycles::codec::TargetFamily;
use hom_cycles::export::build_family;
use hom_cycles::homology::{self, Ring};

fn main() {
    for m in 1..=4 {
        for n in 2..=6 {
            let x = build_family(2 * m, n, TargetFamily::Path, 1_000_000).unwrap();
            let reports = homology::analyze(&homology::components(&x), Ring::Integer).unwrap();
            let summary: Vec<String> = reports
                .iter()
                .map(|r| format!("{} {:?} {}", r.key.as_ref().unwrap(), r.f_vector, r.betti.as_ref().unwrap()))
                .collect();
            println!("C_{} -> L_{n}: {}", 2 * m, summary.join(" | "));
        }
    }
}
