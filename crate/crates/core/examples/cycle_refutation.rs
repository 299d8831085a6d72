//! Refutes the parity clause set with itself as the cycle and prints the
//! three obligations with their proof traces.

use clause_cycles::cycles::verify_refutation;
use clause_cycles::entailment::Budget;
use clause_cycles::theories::example_cycle_c;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = example_cycle_c();
    println!("C(eta):\n{c}");
    let cert = verify_refutation(&c, &c, &Budget::default())?;
    println!("C(s(eta)) |= C(eta): {}", cert.report.c1);
    println!("C(0) |= false:       {}", cert.report.c2[0]);
    println!("D(eta) |= C(eta):    {}", cert.c3);
    println!("refutation: {}", cert.valid);
    if let Some(trace) = cert.report.c2[0].trace() {
        trace.replay().map_err(|e| format!("{e:?}"))?;
        println!("\nrefutation of C(0):\n{trace}");
    }
    Ok(())
}
