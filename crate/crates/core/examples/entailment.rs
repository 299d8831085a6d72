//! Queries to the entailment engine: proofs from B, ground decisions and
//! countermodel evidence.

use clause_cycles::entailment::{check_unsat, decide_ground, prove, prove_exists1_from_b, Budget};
use clause_cycles::syntax::{parse_clause_set, parse_formula, Language};
use clause_cycles::theories::{axioms_b, clause_set_e};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lang = Language::default();
    let budget = Budget::default();
    for goal in ["s(x) != 0", "s(x) = s(y) -> x = y", "exists y. s(0) = y + y"] {
        println!("B |- {goal}: {}", prove(&axioms_b(), &parse_formula(goal, &lang)?, &budget)?);
    }
    println!("#2 + #2 = #4: {}", decide_ground(&parse_formula("#2 + #2 = #4", &lang)?)?);
    let v = prove_exists1_from_b(&parse_formula("exists x. exists y. x + y = #3 & x != 0", &lang)?, 10)?;
    println!("exists x y. x + y = 3 & x != 0: {v}");
    println!("[x = x] unsatisfiable: {}", check_unsat(&parse_clause_set("[x = x]", &lang)?, &budget)?);
    println!("weak cancellation clauses unsatisfiable: {}", check_unsat(&clause_set_e(0, 1, 2)?, &budget)?);
    Ok(())
}
