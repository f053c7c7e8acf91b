use hom_cycles::verify::{verify_grid, GridConfig};

fn main() {
    let config = GridConfig { max_m: 7, max_n: 7, ..GridConfig::default() };
    let report = verify_grid(&config).unwrap();
    for c in report.checks.iter().filter(|c| c.m == 7 && c.n == 3) {
        println!("{c}");
    }
    println!("{} checks, {} mismatches", report.checks.len(), report.mismatches().len());
}
