//! Cycles and inductive existential formulas: each cycle gives a formula
//! inductive over the empty theory, and the formula gives back a cycle.

use clause_cycles::cycles::{
    cycle_of_inductive_formula, inductive_formula_of_cycle, inductivity_over_empty_theory, verify_cycle,
};
use clause_cycles::entailment::Budget;
use clause_cycles::syntax::{parse_clause_set, Language};
use clause_cycles::theories::example_cycle_c;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let pred = Language::induction_language();
    let cycles = [
        ("parity", example_cycle_c()),
        ("predicate descent", parse_clause_set("[P(0)]\n[~P(x), P(s(x))]\n[~P(eta)]", &pred)?),
    ];
    for (name, c) in &cycles {
        let cert = inductive_formula_of_cycle(c)?;
        let (base, step) = inductivity_over_empty_theory(&cert.formula, &cert.var, &budget)?;
        let back = cycle_of_inductive_formula(&cert.formula, &budget)?;
        println!("{name}");
        println!("  formula: {}", cert.formula);
        println!("  base {}, step {}", base.label(), step.label());
        println!(
            "  back: cycle {}, same clauses up to renaming: {}",
            verify_cycle(&back, &budget)?.is_cycle,
            back.equivalent_up_to_renaming(c)
        );
    }

    Ok(())
}
