use hom_cycles::codec::TargetFamily;
use hom_cycles::export;

fn main() {
    let x = export::build_family(5, 3, TargetFamily::Cycle, 1_000_000).unwrap();
    let doc = export::export(&x, TargetFamily::Cycle, true).unwrap();
    let text = export::to_json(&doc).unwrap();
    println!("{}...", &text[..240]);
    println!("{} bytes", text.len());

    let back = export::import(&export::from_json(&text).unwrap()).unwrap();
    println!("round trip identical: {}", back == x);
}
