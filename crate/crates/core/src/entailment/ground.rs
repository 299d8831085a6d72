//! Proof-producing ground solver: congruence closure, unit propagation and
//! bounded case splits over ground clauses.

use std::cell::Cell;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::rc::Rc;

use super::egraph::{EGraph, NodeId, Reason};
use super::trace::{Inference, Step};
use crate::syntax::{Atom, Clause, Literal, Term};

/// Where a ground clause comes from: an input clause and a substitution
/// (empty for the input itself).
#[derive(Debug, Clone)]
pub(crate) struct Origin {
    pub input: usize,
    pub subst: BTreeMap<String, Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum LitNodes {
    Eq(NodeId, NodeId),
    Pred(String, Vec<NodeId>),
}

#[derive(Debug, Clone)]
struct GClause {
    clause: Clause,
    origin: Origin,
    nodes: Vec<LitNodes>,
    done: bool,
}

/// Why a literal is false in the current state.
#[derive(Debug, Clone, Copy)]
enum FalseWhy {
    /// A negative equation whose sides are congruent.
    Equal,
    /// A positive equation contradicted by an asserted disequation.
    Diseq(usize),
    /// A predicate literal contradicted by an asserted one of opposite sign.
    Pred(usize),
}

#[derive(Debug, Clone, Copy)]
enum Value {
    True,
    False(FalseWhy),
    Unknown,
}

#[derive(Debug, Clone)]
enum AssertReason {
    Unit(usize),
    Propagated { clause: usize, falsified: Vec<(usize, FalseWhy)> },
    Assumed,
}

#[derive(Debug, Clone)]
struct Assertion {
    lit: Literal,
    nodes: LitNodes,
    reason: AssertReason,
}

#[derive(Debug, Clone)]
enum Conflict {
    Diseq(usize),
    PredClash(usize, usize),
    Clause { clause: usize, falsified: Vec<(usize, FalseWhy)> },
}

#[derive(Clone)]
pub(crate) struct Solver {
    inputs: Rc<Vec<Clause>>,
    eg: EGraph,
    clauses: Vec<GClause>,
    seen: HashSet<Vec<(bool, LitNodes)>>,
    active: Vec<usize>,
    watch: HashMap<NodeId, Vec<usize>>,
    queue: VecDeque<usize>,
    queued: Vec<bool>,
    assertions: Vec<Assertion>,
    diseq_lists: HashMap<NodeId, Vec<usize>>,
    diseq_pairs: HashMap<(NodeId, NodeId), usize>,
    preds: Vec<usize>,
    pred_index: HashMap<(String, Vec<NodeId>), (bool, usize)>,
    pred_dirty: bool,
    conflict: Option<Conflict>,
    counter: Rc<Cell<usize>>,
    steps: Vec<Step>,
    input_steps: HashMap<usize, usize>,
    clause_steps: HashMap<usize, usize>,
    assertion_steps: HashMap<usize, usize>,
    pub splits: u64,
}

fn ordered(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Solver {
    pub fn new(inputs: Rc<Vec<Clause>>) -> Solver {
        Solver {
            inputs,
            eg: EGraph::default(),
            clauses: Vec::new(),
            seen: HashSet::new(),
            active: Vec::new(),
            watch: HashMap::new(),
            queue: VecDeque::new(),
            queued: Vec::new(),
            assertions: Vec::new(),
            diseq_lists: HashMap::new(),
            diseq_pairs: HashMap::new(),
            preds: Vec::new(),
            pred_index: HashMap::new(),
            pred_dirty: false,
            conflict: None,
            counter: Rc::new(Cell::new(0)),
            steps: Vec::new(),
            input_steps: HashMap::new(),
            clause_steps: HashMap::new(),
            assertion_steps: HashMap::new(),
            splits: 0,
        }
    }

    pub fn has_conflict(&self) -> bool {
        self.conflict.is_some()
    }

    pub fn intern(&mut self, t: &Term) -> NodeId {
        let mut merged = Vec::new();
        let n = self.eg.intern(t, &mut |k, g| merged.push((k, g)));
        self.after_merges(merged);
        n
    }

    fn enqueue(&mut self, cid: usize) {
        if !self.queued[cid] && !self.clauses[cid].done {
            self.queued[cid] = true;
            self.queue.push_back(cid);
        }
    }

    fn enqueue_watchers(&mut self, root: NodeId) {
        let Some(list) = self.watch.get_mut(&root) else { return };
        list.retain(|&c| !self.clauses[c].done);
        for c in list.clone() {
            self.enqueue(c);
        }
    }

    fn after_merges(&mut self, merged: Vec<(NodeId, NodeId)>) {
        for (keep, gone) in merged {
            self.pred_dirty = true;
            self.enqueue_watchers(gone);
            let moved_watch = self.watch.remove(&gone).unwrap_or_default();
            self.watch.entry(keep).or_default().extend(moved_watch);
            let moved = self.diseq_lists.remove(&gone).unwrap_or_default();
            if !moved.is_empty() || !self.preds.is_empty() {
                self.enqueue_watchers(keep);
            }
            for &d in &moved {
                let LitNodes::Eq(a, b) = self.assertions[d].nodes else { unreachable!() };
                let (ra, rb) = (self.eg.find(a), self.eg.find(b));
                if ra == rb {
                    if self.conflict.is_none() {
                        self.conflict = Some(Conflict::Diseq(d));
                    }
                } else {
                    self.diseq_pairs.insert(ordered(ra, rb), d);
                }
            }
            self.diseq_lists.entry(keep).or_default().extend(moved);
        }
    }

    fn lit_nodes(&mut self, l: &Literal) -> LitNodes {
        match &l.atom {
            Atom::Eq(a, b) => {
                let a = self.intern(a);
                let b = self.intern(b);
                LitNodes::Eq(a, b)
            }
            Atom::Pred(p, args) => LitNodes::Pred(p.clone(), args.iter().map(|t| self.intern(t)).collect()),
        }
    }

    fn refresh_preds(&mut self) {
        if !self.pred_dirty {
            return;
        }
        self.pred_dirty = false;
        self.pred_index.clear();
        for i in 0..self.preds.len() {
            let aid = self.preds[i];
            self.index_pred(aid);
        }
    }

    fn pred_key(&self, p: &str, args: &[NodeId]) -> (String, Vec<NodeId>) {
        (p.to_string(), args.iter().map(|&a| self.eg.find(a)).collect())
    }

    fn index_pred(&mut self, aid: usize) {
        let LitNodes::Pred(p, args) = &self.assertions[aid].nodes else { unreachable!() };
        let key = self.pred_key(p, args);
        let pos = self.assertions[aid].lit.positive;
        match self.pred_index.get(&key) {
            Some(&(pol, other)) if pol != pos => {
                if self.conflict.is_none() {
                    let (t, f) = if pos { (aid, other) } else { (other, aid) };
                    self.conflict = Some(Conflict::PredClash(t, f));
                }
            }
            Some(_) => {}
            None => {
                self.pred_index.insert(key, (pos, aid));
            }
        }
    }

    fn value(&mut self, nodes: &LitNodes, positive: bool) -> Value {
        match nodes {
            LitNodes::Eq(a, b) => {
                let (ra, rb) = (self.eg.find(*a), self.eg.find(*b));
                if ra == rb {
                    return if positive { Value::True } else { Value::False(FalseWhy::Equal) };
                }
                match self.diseq_pairs.get(&ordered(ra, rb)) {
                    Some(&d) if positive => Value::False(FalseWhy::Diseq(d)),
                    Some(_) => Value::True,
                    None => Value::Unknown,
                }
            }
            LitNodes::Pred(p, args) => {
                self.refresh_preds();
                let key = self.pred_key(p, args);
                match self.pred_index.get(&key) {
                    Some(&(pol, _)) if pol == positive => Value::True,
                    Some(&(_, aid)) => Value::False(FalseWhy::Pred(aid)),
                    None => Value::Unknown,
                }
            }
        }
    }

    /// Adds a ground clause. Returns `false` if it was a duplicate or already satisfied.
    pub fn add_clause(&mut self, clause: Clause, origin: Origin) -> bool {
        if clause.is_tautology() {
            return false;
        }
        let nodes: Vec<LitNodes> = clause.literals().iter().map(|l| self.lit_nodes(l)).collect();
        let key = clause.literals().iter().map(|l| l.positive).zip(nodes.iter().cloned()).collect();
        if !self.seen.insert(key) {
            return false;
        }
        let satisfied =
            nodes.iter().zip(clause.literals()).any(|(n, l)| matches!(self.value(n, l.positive), Value::True));
        if satisfied {
            return false;
        }
        let id = self.clauses.len();
        let mut roots: Vec<NodeId> = nodes
            .iter()
            .flat_map(|n| match n {
                LitNodes::Eq(a, b) => vec![*a, *b],
                LitNodes::Pred(_, args) => args.clone(),
            })
            .map(|n| self.eg.find(n))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        for r in roots {
            self.watch.entry(r).or_default().push(id);
        }
        self.clauses.push(GClause { clause, origin, nodes, done: false });
        self.queued.push(false);
        self.active.push(id);
        self.enqueue(id);
        true
    }

    fn assert(&mut self, lit: Literal, nodes: LitNodes, reason: AssertReason) -> usize {
        let aid = self.assertions.len();
        self.assertions.push(Assertion { lit: lit.clone(), nodes: nodes.clone(), reason });
        match nodes {
            LitNodes::Eq(a, b) if lit.positive => {
                let mut merged = Vec::new();
                self.eg.merge(a, b, Reason::Equation(aid), &mut |k, g| merged.push((k, g)));
                self.after_merges(merged);
            }
            LitNodes::Eq(a, b) => {
                let (ra, rb) = (self.eg.find(a), self.eg.find(b));
                if ra == rb {
                    if self.conflict.is_none() {
                        self.conflict = Some(Conflict::Diseq(aid));
                    }
                } else {
                    let smaller = if self.watch.get(&ra).map_or(0, Vec::len) <= self.watch.get(&rb).map_or(0, Vec::len)
                    {
                        ra
                    } else {
                        rb
                    };
                    self.enqueue_watchers(smaller);
                    self.diseq_lists.entry(ra).or_default().push(aid);
                    self.diseq_lists.entry(rb).or_default().push(aid);
                    self.diseq_pairs.entry(ordered(ra, rb)).or_insert(aid);
                }
            }
            LitNodes::Pred(_, args) => {
                self.refresh_preds();
                self.preds.push(aid);
                self.index_pred(aid);
                match args.first() {
                    Some(&a) => {
                        let r = self.eg.find(a);
                        self.enqueue_watchers(r);
                    }
                    None => {
                        for c in self.active.clone() {
                            self.enqueue(c);
                        }
                    }
                }
            }
        }
        aid
    }

    /// Unit propagation to a fixpoint or a conflict.
    pub fn propagate(&mut self) {
        while self.conflict.is_none() {
            let Some(cid) = self.queue.pop_front() else { break };
            self.queued[cid] = false;
            if self.clauses[cid].done {
                continue;
            }
            let mut unknown = None;
            let mut n_unknown = 0;
            let mut falsified = Vec::new();
            let mut sat = false;
            for j in 0..self.clauses[cid].nodes.len() {
                let positive = self.clauses[cid].clause.literals()[j].positive;
                let nodes = self.clauses[cid].nodes[j].clone();
                match self.value(&nodes, positive) {
                    Value::True => {
                        sat = true;
                        break;
                    }
                    Value::False(why) => falsified.push((j, why)),
                    Value::Unknown => {
                        n_unknown += 1;
                        unknown = Some(j);
                    }
                }
            }
            if sat {
                self.clauses[cid].done = true;
                continue;
            }
            match n_unknown {
                0 => {
                    self.conflict = Some(Conflict::Clause { clause: cid, falsified });
                }
                1 => {
                    let j = unknown.expect("one unknown literal");
                    let lit = self.clauses[cid].clause.literals()[j].clone();
                    let nodes = self.clauses[cid].nodes[j].clone();
                    self.clauses[cid].done = true;
                    let reason = if self.clauses[cid].clause.len() == 1 {
                        AssertReason::Unit(cid)
                    } else {
                        AssertReason::Propagated { clause: cid, falsified }
                    };
                    self.assert(lit, nodes, reason);
                }
                _ => {}
            }
        }
    }

    /// First unknown literal of a smallest open clause.
    fn split_literal(&mut self) -> Option<Literal> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..self.active.len() {
            let cid = self.active[i];
            if self.clauses[cid].done {
                continue;
            }
            let len = self.clauses[cid].clause.len();
            if best.is_some_and(|(l, _, _)| l <= len) {
                continue;
            }
            for j in 0..len {
                let positive = self.clauses[cid].clause.literals()[j].positive;
                let nodes = self.clauses[cid].nodes[j].clone();
                if let Value::Unknown = self.value(&nodes, positive) {
                    best = Some((len, cid, j));
                    break;
                }
            }
        }
        best.map(|(_, cid, j)| self.clauses[cid].clause.literals()[j].clone())
    }

    fn branch(&self, hypothesis: Literal) -> Solver {
        let mut b = self.clone();
        b.steps = Vec::new();
        let nodes = b.lit_nodes(&hypothesis);
        let aid = b.assertions.len();
        let step = b.new_step(Inference::Assume { literal: hypothesis.clone() }, Clause::unit(hypothesis.clone()));
        b.assertion_steps.insert(aid, step);
        b.assert(hypothesis, nodes, AssertReason::Assumed);
        b
    }

    /// Propagates and, if needed, splits up to `depth` levels deep. On
    /// success returns steps ending in the empty clause. `splits` counts
    /// the branches explored.
    pub fn refute(&mut self, depth: usize, max_branches: u64) -> Option<Vec<Step>> {
        self.propagate();
        if self.conflict.is_some() {
            return Some(self.conflict_proof());
        }
        if depth == 0 || self.splits >= max_branches {
            return None;
        }
        let lit = self.split_literal()?;
        let mut branches = Vec::new();
        for hyp in [lit.clone(), lit.negated()] {
            self.splits += 1;
            let mut b = self.branch(hyp);
            b.splits = self.splits;
            let proof = b.refute(depth - 1, max_branches);
            self.splits = b.splits;
            branches.push(proof?);
        }
        let negative = branches.pop().expect("two branches");
        let positive = branches.pop().expect("two branches");
        self.new_step(Inference::Split { literal: lit, positive, negative }, Clause::empty());
        Some(std::mem::take(&mut self.steps))
    }

    // Proof construction.

    fn new_step(&mut self, inference: Inference, conclusion: Clause) -> usize {
        let index = self.counter.get();
        self.counter.set(index + 1);
        self.steps.push(Step { index, inference, conclusion });
        index
    }

    fn input_step(&mut self, i: usize) -> usize {
        if let Some(&s) = self.input_steps.get(&i) {
            return s;
        }
        let c = self.inputs[i].clone();
        let s = self.new_step(Inference::Input { index: i }, c);
        self.input_steps.insert(i, s);
        s
    }

    fn clause_step(&mut self, cid: usize) -> usize {
        if let Some(&s) = self.clause_steps.get(&cid) {
            return s;
        }
        let origin = self.clauses[cid].origin.clone();
        let parent = self.input_step(origin.input);
        let s = if origin.subst.is_empty() {
            parent
        } else {
            let conclusion = self.clauses[cid].clause.clone();
            self.new_step(Inference::Instance { parent, substitution: origin.subst }, conclusion)
        };
        self.clause_steps.insert(cid, s);
        s
    }

    fn assertion_step(&mut self, aid: usize) -> usize {
        if let Some(&s) = self.assertion_steps.get(&aid) {
            return s;
        }
        let s = match self.assertions[aid].reason.clone() {
            AssertReason::Unit(cid) => self.clause_step(cid),
            AssertReason::Propagated { clause, falsified } => {
                let step = self.clause_step(clause);
                let c = self.clauses[clause].clone();
                self.remove_all(step, c.clause.clone(), &c, &falsified).0
            }
            AssertReason::Assumed => unreachable!("assumptions have steps"),
        };
        self.assertion_steps.insert(aid, s);
        s
    }

    fn remove_all(
        &mut self,
        mut step: usize,
        mut current: Clause,
        gc: &GClause,
        falsified: &[(usize, FalseWhy)],
    ) -> (usize, Clause) {
        for &(j, why) in falsified {
            let lit = gc.clause.literals()[j].clone();
            if !current.literals().contains(&lit) {
                continue;
            }
            (step, current) = self.remove_literal(step, current, lit, &gc.nodes[j], why);
        }
        (step, current)
    }

    fn conflict_proof(&mut self) -> Vec<Step> {
        match self.conflict.clone().expect("conflict") {
            Conflict::Diseq(d) => {
                let step = self.assertion_step(d);
                let lit = self.assertions[d].lit.clone();
                let nodes = self.assertions[d].nodes.clone();
                self.remove_literal(step, Clause::unit(lit.clone()), lit, &nodes, FalseWhy::Equal);
            }
            Conflict::PredClash(t, f) => {
                let step = self.assertion_step(f);
                let lit = self.assertions[f].lit.clone();
                let nodes = self.assertions[f].nodes.clone();
                self.remove_literal(step, Clause::unit(lit.clone()), lit, &nodes, FalseWhy::Pred(t));
            }
            Conflict::Clause { clause, falsified } => {
                let step = self.clause_step(clause);
                let gc = self.clauses[clause].clone();
                self.remove_all(step, gc.clause.clone(), &gc, &falsified);
            }
        }
        debug_assert!(self.steps.last().is_some_and(|s| s.conclusion.is_empty()));
        std::mem::take(&mut self.steps)
    }

    fn index_of(c: &Clause, l: &Literal) -> usize {
        c.literals().iter().position(|m| m == l).expect("tracked literal present")
    }

    /// Removes the false literal `lit` (with nodes `nodes`) from `current`.
    fn remove_literal(
        &mut self,
        step: usize,
        current: Clause,
        lit: Literal,
        nodes: &LitNodes,
        why: FalseWhy,
    ) -> (usize, Clause) {
        match (why, nodes) {
            (FalseWhy::Equal, LitNodes::Eq(a, b)) => {
                let (step, current, lit) = self.rewrite(step, current, lit, vec![0], *a, *b);
                let literal = Self::index_of(&current, &lit);
                let conclusion = remove(&current, literal);
                (self.new_step(Inference::EqualityResolution { target: step, literal }, conclusion.clone()), conclusion)
            }
            (FalseWhy::Diseq(d), LitNodes::Eq(a, b)) => {
                let u = self.assertion_step(d);
                let ulit = self.assertions[d].lit.clone();
                let LitNodes::Eq(c, e) = self.assertions[d].nodes.clone() else { unreachable!() };
                let (ta, tb) = if self.eg.equal(c, *a) && self.eg.equal(e, *b) { (*a, *b) } else { (*b, *a) };
                let (u, uc, ul) = self.rewrite(u, Clause::unit(ulit.clone()), ulit, vec![0], c, ta);
                let (u, _, _) = self.rewrite(u, uc, ul, vec![1], e, tb);
                self.resolve(u, step, current, lit)
            }
            (FalseWhy::Pred(p), LitNodes::Pred(_, args)) => {
                let u = self.assertion_step(p);
                let ulit = self.assertions[p].lit.clone();
                let LitNodes::Pred(_, uargs) = self.assertions[p].nodes.clone() else { unreachable!() };
                let (mut u, mut uc, mut ul) = (u, Clause::unit(ulit.clone()), ulit);
                for (i, (&from, &to)) in uargs.iter().zip(args).enumerate() {
                    (u, uc, ul) = self.rewrite(u, uc, ul, vec![i], from, to);
                }
                self.resolve(u, step, current, lit)
            }
            _ => unreachable!("falsity reason does not match literal"),
        }
    }

    fn resolve(&mut self, unit: usize, step: usize, current: Clause, lit: Literal) -> (usize, Clause) {
        let literal = Self::index_of(&current, &lit);
        let conclusion = remove(&current, literal);
        (self.new_step(Inference::Resolution { unit, target: step, literal }, conclusion.clone()), conclusion)
    }

    /// Rewrites the subterm at `pos` of `lit` from node `from` to node `to`
    /// along the congruence explanation.
    fn rewrite(
        &mut self,
        step: usize,
        current: Clause,
        lit: Literal,
        pos: Vec<usize>,
        from: NodeId,
        to: NodeId,
    ) -> (usize, Clause, Literal) {
        let (mut step, mut current, mut lit) = (step, current, lit);
        if from == to {
            return (step, current, lit);
        }
        for edge in self.eg.explain(from, to) {
            match edge.reason {
                Reason::Equation(aid) => {
                    let eq = self.assertion_step(aid);
                    let Atom::Eq(l, _) = &self.assertions[aid].lit.atom else { unreachable!() };
                    let left_to_right = *l == self.eg.term(edge.from);
                    let to_term = self.eg.term(edge.to);
                    let literal = Self::index_of(&current, &lit);
                    debug_assert_eq!(lit.atom.subterm(&pos), Some(&self.eg.term(edge.from)));
                    let new_lit = Literal {
                        atom: lit.atom.replace_at(&pos, &to_term).expect("position"),
                        positive: lit.positive,
                    };
                    let mut lits = current.literals().to_vec();
                    lits[literal] = new_lit.clone();
                    let conclusion = Clause::new(lits);
                    step = self.new_step(
                        Inference::Paramodulation {
                            equation: eq,
                            target: step,
                            literal,
                            position: pos.clone(),
                            left_to_right,
                        },
                        conclusion.clone(),
                    );
                    current = conclusion;
                    lit = new_lit;
                }
                Reason::Congruence => {
                    let fa = self.eg.args(edge.from).to_vec();
                    let ta = self.eg.args(edge.to).to_vec();
                    for (i, (x, y)) in fa.into_iter().zip(ta).enumerate() {
                        if x != y {
                            let mut p = pos.clone();
                            p.push(i);
                            (step, current, lit) = self.rewrite(step, current, lit, p, x, y);
                        }
                    }
                }
            }
        }
        (step, current, lit)
    }
}

fn remove(c: &Clause, i: usize) -> Clause {
    Clause::new(c.literals().iter().enumerate().filter(|(j, _)| *j != i).map(|(_, l)| l.clone()))
}
