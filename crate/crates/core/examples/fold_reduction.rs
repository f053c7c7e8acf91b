//! Folding twin vertices out of the target: C_4 -> L_3 -> L_2.

use hom_cycles::graph::Graph;
use hom_cycles::hom::HomComplex;
use hom_cycles::homology::{self, Ring};

fn main() {
    let x = HomComplex::build(&Graph::cycle(6).unwrap(), &Graph::cycle(4).unwrap()).unwrap();
    println!("Hom(C_6, C_4): f-vector {:?}, betti {}", x.f_vector(), homology::betti(&x, Ring::Integer).unwrap());

    let mut current = x;
    while let Some(&(u, v)) = current.target().twins().first() {
        let fold = current.fold_reduce(u, v).unwrap();
        let next = fold.complex;
        println!(
            "fold {v} onto {u}: target now has {} vertices, f-vector {:?}, betti {}",
            next.target().vertex_count(),
            next.f_vector(),
            homology::betti(&next, Ring::Integer).unwrap()
        );
        current = next;
        if current.target().vertex_count() == 2 {
            break;
        }
    }
    for v in current.vertices() {
        println!("  {v}");
    }
}
