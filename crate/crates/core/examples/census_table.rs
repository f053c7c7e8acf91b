use hom_cycles::census;
use num_traits::Zero;

fn main() {
    for (m, n) in [(5, 3), (9, 3), (4, 6), (4, 5), (12, 6), (11, 3), (10, 3), (8, 4), (7, 4)] {
        let entries = census::component_table(m, n);
        let labels: Vec<String> = entries.iter().map(|e| format!("{}:{}", e.label, e.predicted)).collect();
        println!("m={m:<2} n={n}  {}", census::table_row(m, n));
        println!("       euler {}  {}", census::euler_char(m, n), labels.join("  "));
    }

    println!();
    for d in 0..=3 {
        println!("c_{d}(9, 3, r=3) = {}", census::cell_count(9, 3, 3, d).unwrap());
    }

    let nonzero = (2..=30)
        .flat_map(|m| (1..m).map(move |r| (m, r)))
          .filter(|&(m, r)| !census::alternating_identity(m, r).unwrap().is_zero())
        .count();
    println!("alternating identity fails for {nonzero} pairs (m <= 30)");
}
