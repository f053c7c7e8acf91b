//! Components and integral homology of Hom(C_9, C_3).

use hom_cycles::graph::Graph;
use hom_cycles::hom::HomComplex;
use hom_cycles::homology::{self, Ring};

fn main() {
    let x = HomComplex::build(&Graph::cycle(9).unwrap(), &Graph::cycle(3).unwrap()).unwrap();
    let comps = homology::components(&x);
    for report in homology::analyze(&comps, Ring::Integer).unwrap() {
        let key = report.key.map(|k| k.to_string()).unwrap_or_default();
        println!(
            "{key:<20} {:<22} betti {}  {}",
            format!("{:?}", report.f_vector),
            report.betti.unwrap(),
            report.classification.unwrap()
        );
    }
    let whole = homology::betti(&x, Ring::Integer).unwrap();
    println!("whole complex: betti {whole}, euler {}", x.euler_characteristic());
}
