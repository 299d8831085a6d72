//! Step sizes and offsets: a (2,0)-cycle is reduced to a plain cycle and a
//! refutation with external offset is reduced to a plain refutation.

use clause_cycles::cycles::{
    reduce_external_offset, reduce_param_cycle, verify_cycle, verify_param_cycle, verify_param_refutation,
    verify_refutation, ParamCycleSpec,
};
use clause_cycles::entailment::Budget;
use clause_cycles::syntax::{cls_all, parse_clause_set, Language};
use clause_cycles::theories::{axioms_b, example_cycle_c};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let c = example_cycle_c();

    let r = verify_param_cycle(&c, ParamCycleSpec::new(2, 0, 0)?, &budget)?;
    println!("(2,0)-cycle: {} with {} base cases", r.is_cycle, r.c2.len());
    let reduced = reduce_param_cycle(&c, 2, 0)?;
    println!("reduced to {} clauses, plain cycle: {}", reduced.len(), verify_cycle(&reduced, &budget)?.is_cycle);

    // D(0) and D(1) are contradictory; from 2 on D implies the fixed point.
    let b = cls_all(axioms_b().axioms())?;
    let d = b.union(&parse_clause_set("[eta != 0]\n[eta != s(0)]\n[eta = s(eta)]", &Language::default())?);
    let cycle = b.union(&parse_clause_set("[eta = s(eta)]", &Language::default())?);
    let cert = verify_param_refutation(&d, &cycle, ParamCycleSpec::new(1, 0, 2)?, &budget)?;
    println!("offset-2 refutation: {}", cert.valid);
    let plain = reduce_external_offset(&d, &cycle, 2)?;
    println!("plain cycle:\n{plain}");
    println!("plain refutation: {}", verify_refutation(&d, &plain, &budget)?.valid);
    Ok(())
}
