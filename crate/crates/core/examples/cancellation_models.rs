//! Weak cancellation: true in N, but M_1 satisfies its clause sets under
//! eta = k^[1], so no cycle refutes them.

use clause_cycles::models::{counterexample_e, holds_bounded, Assignment, Bounds, StructureId};
use clause_cycles::syntax::{eval_ground_nat, numeral, ETA};
use clause_cycles::theories::{clause_set_e, e_formula, e_sides};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (k, n, m) in [(0, 1, 2), (1, 1, 2), (0, 1, 3), (2, 2, 5)] {
        println!("E_{{{k},{n},{m}}}: {}", e_formula(k, n, m)?);
        let in_n = (0..=50).all(|x| {
            let (l, r) = e_sides(k, n, m, &numeral(x)).expect("valid parameters");
            eval_ground_nat(&l).ok() != eval_ground_nat(&r).ok() || x == k
        });
        println!("  holds in N on [0..50]: {in_n}");

        let cex = counterexample_e(k, n, m)?;
        println!("  in M_1 at x = {}: {} = {}, x != {}", cex.x, cex.lhs, cex.rhs, cex.numeral_k);
        let params: Assignment = [(ETA.to_string(), cex.x)].into_iter().collect();
        let r = holds_bounded(
            StructureId::M(1),
            &clause_set_e(k, n, m)?,
            &params,
            &Bounds { value: 30, type_cap: 1, witness: 15 },
        )?;
        println!("  clause set in M_1: {r}");
    }
    Ok(())
}
