//! The non-standard structures: tables of the operations, bounded axiom
//! checks and the elements that separate them from N.

use clause_cycles::models::{holds_bounded, shoenfield_oddeven_check, Assignment, Bounds, ModelElement, StructureId};
use clause_cycles::theories::{axiom_b, axioms_b, axioms_v};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m1 = StructureId::M(1);
    let els = [ModelElement::new(0, 0), ModelElement::new(0, 2), ModelElement::new(1, -1), ModelElement::new(1, 3)];
    println!("x + y in {m1}:");
    for a in els {
        let row: Vec<String> = els.iter().map(|b| m1.plus(a, *b).map(|v| v.to_string()).unwrap_or_default()).collect();
        println!("  {a:>8} | {}", row.join("  "));
    }

    let bounds = Bounds { value: 12, type_cap: 2, witness: 15 };
    for s in [StructureId::M(1), StructureId::M(2)] {
        let theories = [axioms_b(), axiom_b(1), axiom_b(2), axiom_b(3), axiom_b(4), axioms_v(3)];
        for (name, ax) in theories.iter().flat_map(|t| t.named_axioms()) {
            println!("{name}: {}", holds_bounded(s, ax, &Assignment::new(), &bounds)?);
        }
    }

    let r = shoenfield_oddeven_check(8)?;
    let holds = r.axioms.iter().all(|(_, c)| c.holds());
    println!("pair structure: axioms hold {holds}, ({}, {}) has parity {:?}", r.element.ty, r.element.value, r.parity);
    Ok(())
}
