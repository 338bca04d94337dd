//! Run the relation-check suites over a small grid and print the
//! aggregate JSON report.

use qball::verify::run_report;

fn main() {
    let suites: Vec<String> = vec!["ck".into(), "ball".into(), "universal".into()];
    let (report, pass) = run_report(2, &[0.3, 0.5], 6, 1e-12, 0, &suites).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    println!("all checks pass: {pass}");
}
