//! An existential induction axiom that fails in M_1: the formula holds on
//! the standard chain and is preserved by successor, but has no witness at
//! a non-standard element.

use clause_cycles::models::{chi_formula, induction_failure_witness};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (ys, body) = chi_formula();
    println!("exists {}. {body}", ys.join(" "));
    for i in 1..=2 {
        let r = induction_failure_witness(i, 4, 15)?;
        println!(
            "M_{i}: base {}, {} sampled steps hold: {}",
            r.base_holds,
            r.steps.len(),
            r.steps.iter().all(|s| s.holds)
        );
        for (x, w) in r.nonstandard.iter().take(6) {
            println!("  {x}: {}", w.as_ref().map_or("no witness".to_string(), |w| format!("{w:?}")));
        }
        println!(
            "  conclusion fails at {:?}, axiom violated: {}",
            r.conclusion_fails_at.map(|e| e.to_string()),
            r.axiom_violated()
        );
    }
    Ok(())
}
