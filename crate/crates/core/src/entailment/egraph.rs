//! Congruence closure over interned ground terms, with explanations.

use std::collections::HashMap;

use crate::syntax::Term;

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    /// An asserted equation between exactly these two nodes.
    Equation(usize),
    /// Both nodes are applications of one symbol to pairwise equal arguments.
    Congruence,
}

#[derive(Debug, Clone)]
struct Node {
    symbol: usize,
    args: Vec<NodeId>,
}

/// One edge of an explanation path, oriented from `from` to `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub reason: Reason,
}

#[derive(Debug, Clone, Default)]
pub struct EGraph {
    nodes: Vec<Node>,
    symbols: HashMap<String, usize>,
    names: Vec<String>,
    hashcons: HashMap<(usize, Vec<NodeId>), NodeId>,
    parent: Vec<NodeId>,
    size: Vec<usize>,
    members: Vec<Vec<NodeId>>,
    uses: Vec<Vec<NodeId>>,
    signatures: HashMap<(usize, Vec<NodeId>), NodeId>,
    proof: Vec<Option<(NodeId, Reason)>>,
    pending: Vec<(NodeId, NodeId, Reason)>,
}

impl EGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn term(&self, n: NodeId) -> Term {
        let node = &self.nodes[n];
        Term::App(self.names[node.symbol].clone(), node.args.iter().map(|&a| self.term(a)).collect())
    }

    pub fn args(&self, n: NodeId) -> &[NodeId] {
        &self.nodes[n].args
    }

    pub fn lookup(&self, t: &Term) -> Option<NodeId> {
        let Term::App(f, args) = t else { return None };
        let symbol = *self.symbols.get(f)?;
        let ids = args.iter().map(|a| self.lookup(a)).collect::<Option<Vec<_>>>()?;
        self.hashcons.get(&(symbol, ids)).copied()
    }

    /// Interns a ground term and its subterms. Newly created nodes may be
    /// merged with congruent existing nodes; returns merged pairs through
    /// the callback.
    pub fn intern(&mut self, t: &Term, on_merge: &mut impl FnMut(NodeId, NodeId)) -> NodeId {
        let Term::App(f, args) = t else { panic!("egraph terms must be ground: {t}") };
        let args: Vec<NodeId> = args.iter().map(|a| self.intern(a, on_merge)).collect();
        let symbol = match self.symbols.get(f) {
            Some(&s) => s,
            None => {
                let s = self.symbols.len();
                self.symbols.insert(f.clone(), s);
                self.names.push(f.clone());
                s
            }
        };
        if let Some(&n) = self.hashcons.get(&(symbol, args.clone())) {
            return n;
        }
        let id = self.nodes.len();
        self.nodes.push(Node { symbol, args: args.clone() });
        self.hashcons.insert((symbol, args.clone()), id);
        self.parent.push(id);
        self.size.push(1);
        self.members.push(vec![id]);
        self.uses.push(Vec::new());
        self.proof.push(None);
        let mut roots: Vec<NodeId> = args.iter().map(|&a| self.find(a)).collect();
        roots.dedup();
        for r in roots {
            self.uses[r].push(id);
        }
        let sig = (symbol, args.iter().map(|&a| self.find(a)).collect::<Vec<_>>());
        match self.signatures.get(&sig) {
            Some(&other) => {
                self.pending.push((id, other, Reason::Congruence));
                self.process(on_merge);
            }
            None => {
                self.signatures.insert(sig, id);
            }
        }
        id
    }

    pub fn find(&self, mut n: NodeId) -> NodeId {
        while self.parent[n] != n {
            n = self.parent[n];
        }
        n
    }

    pub fn equal(&self, a: NodeId, b: NodeId) -> bool {
        self.find(a) == self.find(b)
    }

    /// Class members of the class of `n`.
    pub fn class(&self, n: NodeId) -> &[NodeId] {
        &self.members[self.find(n)]
    }

    /// Merges `a` and `b`; calls `on_merge(kept_root, absorbed_root)` for every union performed.
    pub fn merge(&mut self, a: NodeId, b: NodeId, reason: Reason, on_merge: &mut impl FnMut(NodeId, NodeId)) {
        self.pending.push((a, b, reason));
        self.process(on_merge);
    }

    fn process(&mut self, on_merge: &mut impl FnMut(NodeId, NodeId)) {
        while let Some((a, b, reason)) = self.pending.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            self.add_proof_edge(a, b, reason);
            let (keep, gone) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
            self.parent[gone] = keep;
            self.size[keep] += self.size[gone];
            let moved = std::mem::take(&mut self.members[gone]);
            self.members[keep].extend(moved);
            let users = std::mem::take(&mut self.uses[gone]);
            for &u in &users {
                let sig = (self.nodes[u].symbol, self.nodes[u].args.iter().map(|&x| self.find(x)).collect::<Vec<_>>());
                match self.signatures.get(&sig) {
                    Some(&other) if self.find(other) != self.find(u) => {
                        self.pending.push((u, other, Reason::Congruence))
                    }
                    Some(_) => {}
                    None => {
                        self.signatures.insert(sig, u);
                    }
                }
            }
            self.uses[keep].extend(users);
            on_merge(keep, gone);
        }
    }

    fn add_proof_edge(&mut self, a: NodeId, b: NodeId, reason: Reason) {
        // Re-root the proof tree of `a` at `a`, then hang it below `b`.
        let mut prev: Option<(NodeId, Reason)> = Some((b, reason));
        let mut cur = a;
        loop {
            let next = self.proof[cur];
            self.proof[cur] = prev;
            match next {
                Some((p, r)) => {
                    prev = Some((cur, r));
                    cur = p;
                }
                None => break,
            }
        }
    }

    /// Path of proof edges from `a` to `b`. Both must be in one class.
    pub fn explain(&self, a: NodeId, b: NodeId) -> Vec<PathEdge> {
        let ancestors = |mut n: NodeId| {
            let mut out = vec![n];
            while let Some((p, _)) = self.proof[n] {
                out.push(p);
                n = p;
            }
            out
        };
        let up_a = ancestors(a);
        let up_b = ancestors(b);
        let common = *up_a.iter().find(|n| up_b.contains(n)).expect("explain called on distinct classes");
        let mut path = Vec::new();
        let mut n = a;
        while n != common {
            let (p, r) = self.proof[n].expect("ancestor chain");
            path.push(PathEdge { from: n, to: p, reason: r });
            n = p;
        }
        let mut tail = Vec::new();
        let mut n = b;
        while n != common {
            let (p, r) = self.proof[n].expect("ancestor chain");
            tail.push(PathEdge { from: p, to: n, reason: r });
            n = p;
        }
        tail.reverse();
        path.extend(tail);
        path
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, Language};

    #[test]
    fn congruence_and_explanation() {
        let lang = Language::default();
        let t = |s: &str| parse_term(s, &lang).unwrap();
        let mut g = EGraph::default();
        let mut noop = |_, _| {};
        let a = g.intern(&t("eta"), &mut noop);
        let b = g.intern(&t("0"), &mut noop);
        let sa = g.intern(&t("s(eta)"), &mut noop);
        let sb = g.intern(&t("s(0)"), &mut noop);
        assert!(!g.equal(sa, sb));
        g.merge(a, b, Reason::Equation(7), &mut noop);
        assert!(g.equal(sa, sb));
        let path = g.explain(sa, sb);
        assert_eq!(path, vec![PathEdge { from: sa, to: sb, reason: Reason::Congruence }]);
        assert_eq!(g.explain(b, a), vec![PathEdge { from: b, to: a, reason: Reason::Equation(7) }]);
        let late = g.intern(&t("s(s(0))"), &mut noop);
        let late2 = g.intern(&t("s(s(eta))"), &mut noop);
        assert!(g.equal(late, late2));
    }
}
