//! Countermodel evidence search over the structure family.

use std::collections::BTreeMap;
use std::time::Instant;

use super::verdict::{Budget, Evidence};
use crate::models::{holds_bounded, Assignment, ModelElement, Outcome, StructureId};
use crate::syntax::{Clause, ClauseSet, ETA, ZERO};

/// Largest absolute value tried for constants.
const PARAMETER_MAGNITUDE_CAP: i64 = 30;
/// Clause evaluations allowed per query.
const EVALUATION_BUDGET: u64 = 50_000_000;

struct Search<'a> {
    structure: StructureId,
    params: Vec<String>,
    /// Clauses that become checkable once parameter `i` is fixed.
    layers: Vec<Vec<&'a Clause>>,
    domain: Vec<ModelElement>,
    bounds: crate::models::Bounds,
    evaluations: u64,
    start: Instant,
    budget: &'a Budget,
    gave_up: bool,
}

impl Search<'_> {
    fn layer_holds(&mut self, i: usize, env: &Assignment) -> bool {
        if self.layers[i].is_empty() {
            return true;
        }
        let cs = ClauseSet::new(self.layers[i].iter().map(|c| (*c).clone()));
        match holds_bounded(self.structure, &cs, env, &self.bounds) {
            Ok(report) => {
                self.evaluations += report.assignments_checked;
                match report.outcome {
                    Outcome::HoldsAtBounds => true,
                    Outcome::Violated { .. } => false,
                    Outcome::Unknown { .. } => {
                        self.gave_up = true;
                        false
                    }
                }
            }
            Err(_) => false,
        }
    }

    fn exhausted(&mut self) -> bool {
        if self.evaluations > EVALUATION_BUDGET || self.start.elapsed() > self.budget.time_limit() {
            self.gave_up = true;
        }
        self.gave_up
    }

    fn run(&mut self, i: usize, env: &mut Assignment) -> bool {
        if self.exhausted() {
            return false;
        }
        if i == self.params.len() {
            return true;
        }
        for e in self.domain.clone() {
            env.insert(self.params[i].clone(), e);
            if self.layer_holds(i + 1, env) && self.run(i + 1, env) {
                return true;
            }
            if self.gave_up {
                break;
            }
        }
        env.remove(&self.params[i]);
        false
    }
}

/// Looks for a structure of the family and an interpretation of the
/// constants under which every clause holds on the finite box.
pub(crate) fn search(clauses: &[Clause], budget: &Budget, start: Instant) -> Option<Evidence> {
    let set = ClauseSet::new(clauses.iter().cloned());
    let (functions, predicates) = set.signature();
    let bounds = budget.evidence_bounds();
    for structure in StructureId::FAMILY {
        if !structure.supports(&functions, &predicates) {
            continue;
        }
        let params: Vec<String> = functions
            .iter()
            .filter(|(f, &a)| a == 0 && f.as_str() != ZERO && !(structure == StructureId::PStruct && f.as_str() == ETA))
            .map(|(f, _)| f.clone())
            .collect();
        let mut ordered: Vec<&Clause> = clauses.iter().collect();
        ordered.sort_by_key(|c| (c.vars().len(), c.size()));
        let mut layers: Vec<Vec<&Clause>> = vec![Vec::new(); params.len() + 1];
        for c in ordered {
            let mut syms = BTreeMap::new();
            for l in c.literals() {
                for t in l.atom.terms() {
                    t.symbols_into(&mut syms);
                }
            }
            let layer = params.iter().rposition(|p| syms.contains_key(p)).map_or(0, |i| i + 1);
            layers[layer].push(c);
        }
        let magnitude = budget.max_witness_magnitude.min(PARAMETER_MAGNITUDE_CAP);
        let mut s = Search {
            structure,
            params,
            layers,
            domain: structure.domain_box(magnitude, bounds.type_cap),
            bounds,
            evaluations: 0,
            start,
            budget,
            gave_up: false,
        };
        let mut env = Assignment::new();
        if !s.layer_holds(0, &env) {
            continue;
        }
        if s.run(0, &mut env) {
            return Some(Evidence { structure, assignment: env.into_iter().collect(), bounds });
        }
        if start.elapsed() > budget.time_limit() {
            break;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_clause_set, Language};

    #[test]
    fn finds_standard_and_nonstandard_evidence() {
        let lang = Language::default();
        let budget = Budget::default();
        let taut = parse_clause_set("[x = x]", &lang).unwrap();
        let ev = search(taut.clauses(), &budget, Instant::now()).unwrap();
        assert_eq!(ev.structure, StructureId::N);
        let odd = parse_clause_set("[eta != x + x]\n[x + 0 = x]", &lang).unwrap();
        let ev = search(odd.clauses(), &budget, Instant::now()).unwrap();
        assert_eq!(ev.structure, StructureId::N);
        assert_eq!(ev.assignment, vec![("eta".to_string(), ModelElement::standard(1))]);
        let none = parse_clause_set("[0 != 0]", &lang).unwrap();
        assert!(search(none.clauses(), &Budget::tiny(), Instant::now()).is_none());
    }
}
