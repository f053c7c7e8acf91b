//! Build Hom(C_4, C_5) by brute force and look at a few of its cells.
//!
//! ```sh
//! cargo run --example build_complex
//! ```

use hom_cycles::graph::Graph;
use hom_cycles::hom::{HomComplex, MultiHomCell};

fn main() {
    let square = Graph::cycle(4).unwrap();
    let pentagon = Graph::cycle(5).unwrap();
    let x = HomComplex::build(&square, &pentagon).unwrap();

    println!("Hom(C_4, C_5): {} cells, f-vector {:?}", x.len(), x.f_vector());
    println!("euler characteristic {}", x.euler_characteristic());

    let top = &x.cells_of_dim(2)[0];
    println!("first square {top}");
    for f in top.facets().unwrap() {
        println!("  facet {f}");
    }
    println!("  closure has {} cells", top.closure().len());

    let edge = MultiHomCell::from_sets(&[vec![1], vec![2, 5], vec![1], vec![2]]);
    println!("{edge} is a cell: {}", x.contains(&edge));
    println!("maximal cells: {}", x.maximal_cells().len());
}
