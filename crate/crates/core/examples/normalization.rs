//! Normalizes existential formulas: components, elimination of the
//! up-down literals with the measure log, and the final shift and strip.

use clause_cycles::normalize::{eliminate_p, shift_and_strip, to_components, unnest};
use clause_cycles::syntax::{parse_formula, Language};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inputs = ["exists y. x = y + y & y != #1", "exists y. p(x) = s(y) | x = #2", "x = 0 | exists y. x = s(y)"];
    for text in inputs {
        let phi = parse_formula(text, &Language::default())?;
        println!("{phi}");
        println!("  unnested:  {}", unnest(&phi)?);
        println!("  p-free:    {}", eliminate_p(&phi)?);
        for c in to_components(&phi)? {
            println!("  component: {c}");
        }
        let s = shift_and_strip(&phi, &phi.free_vars())?;
        for step in s.log() {
            let after: Vec<String> = step.after.iter().map(|m| m.to_string()).collect();
            println!("  {:?} on {}: {} -> [{}]", step.rule, step.literal, step.before, after.join(", "));
        }
        println!("  shift {}: {}\n", s.shift, s.formula);
    }
    Ok(())
}
