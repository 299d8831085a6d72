//! Linear systems of components over Z and descending integer solution
//! sequences.

use clause_cycles::descent::{descent_for_formula, linearize_component, solve_z};
use clause_cycles::normalize::{shift_and_strip, to_components};
use clause_cycles::syntax::{parse_formula, Language};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lang = Language::default();
    let phi = parse_formula("exists y. exists z. x + y = z + #3 & y != z", &lang)?;
    let chi = &to_components(&phi)?[0];
    let (system, negatives) = linearize_component(chi)?;
    print!("{system}");
    for n in &negatives {
        println!("{}", n.display(&system.vars));
    }
    let z = solve_z(&system)?;
    println!("particular {:?}, lattice basis {:?}", z.particular, z.basis);

    let inductive = parse_formula("x = 0 | exists y. x = s(y)", &lang)?;
    let stripped = shift_and_strip(&inductive, &["x".to_string()])?;
    let d = descent_for_formula(&stripped.formula, 20, 10)?;
    println!("\n{} after shifting by {}", stripped.formula, stripped.shift);
    println!("component {}: {}", d.index, d.components[d.index]);
    println!("h0 = {:?}, m0 = {}", d.descent.h0, d.descent.m0);
    for v in &d.descent.vectors {
        println!("  {v:?}");
    }
    Ok(())
}
