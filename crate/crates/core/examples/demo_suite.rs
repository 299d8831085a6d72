//! Runs every demonstration of the manifest and prints a pass/fail matrix.
//! Set `CSC_BUDGET_PROFILE=tiny` to see undetermined statuses.

use clause_cycles::cli::{demo_suite, DemoOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let suite = demo_suite(&DemoOptions::default())?;
    for d in &suite.demos {
        println!(
            "{} {:<28} expected {:<12} got {:<12} {:.2}s",
            if d.matches { "pass" } else { "FAIL" },
            d.name,
            d.expected,
            d.status,
            d.seconds
        );
        for line in &d.details {
            println!("     {line}");
        }
    }
    println!("{:.1}s", suite.seconds);
    std::process::exit(suite.exit_code());
}
