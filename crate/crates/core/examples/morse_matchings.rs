//! The collapsing matchings, checked by cycle detection.

use hom_cycles::codec::CycleSpec;
use hom_cycles::hom::HomComplex;
use hom_cycles::morse;

fn main() {
    // first step: X_i collapses onto the cells whose first image is {i}
    let spec = CycleSpec::cycle(6, 3).unwrap();
    let x = HomComplex::build(&spec.source_graph(), &spec.target_graph()).unwrap();
    let (poset, matching) = morse::first_image_matching(&x, 1);
    let report = morse::verify_matching(&poset, &matching).unwrap();
    println!(
        "X_1 in Hom(C_6, C_3): {} cells, {} pairs, acyclic {}, {} critical",
        poset.len(),
        matching.len(),
        report.acyclic,
        report.critical_cells.len()
    );

    // second step: each stratum collapses to a single cell
    let spec = CycleSpec::cycle(6, 9).unwrap();
    let (poset, matching) = morse::returning_matching(&spec, 1, 3);
    let report = morse::verify_matching(&poset, &matching).unwrap();
    let audit = morse::sigma_audit(&poset, &matching);
    println!("stratum i=1, r=3 of Hom(C_6, C_9): {} cells", poset.len());
    for (lo, hi) in matching.matched.iter().take(5) {
        println!("  {lo} -> {hi}");
    }
    println!("  critical {:?}, audit ok {}", report.critical_cells.iter().map(|c| c.to_string()).collect::<Vec<_>>(), audit.passed());

    let spec = CycleSpec::path(8, 5).unwrap();
    for r in morse::all_strata(&spec) {
        println!("Hom(C_8, L_5) base {}: critical {:?}, expected {}", r.base, r.critical, r.expected_critical);
    }

    let spec = CycleSpec::cycle(10, 7).unwrap();
    let strata = morse::all_strata(&spec);
    let ok = strata.iter().filter(|s| s.passed()).count();
    println!("Hom(C_10, C_7): {ok}/{} strata collapse to one cell", strata.len());
}
