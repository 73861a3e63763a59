//! Runs the nine acceptance criteria and prints one line each. Criterion 8 is
//! degenerate on its lattice and is reported, not asserted; any other failure
//! makes the run fail.

use thetalab::checks::*;

fn main() {
    let reports = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    for r in &reports {
        println!("{r}");
    }
    let supplement = criterion_8_supplement();
    println!("{supplement}");
    let failing: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.id.as_str()).collect();
    println!("{} of {} criteria pass (failing: {})", reports.len() - failing.len(), reports.len(), failing.join(", "));
    let unexpected: Vec<&str> = failing.iter().copied().filter(|id| *id != "8").collect();
    if !unexpected.is_empty() || !supplement.pass {
        eprintln!("unexpected failures: {unexpected:?}, supplement pass: {}", supplement.pass);
        std::process::exit(1);
    }
}
