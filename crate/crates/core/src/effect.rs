//! Flows and effects: the finite semigroup summarizing how a run crosses an
//! interval of positions.
//!
//! Flow nodes are crossing levels. An even level leaves from the left border
//! or arrives at the right border; an odd level leaves from the right border
//! or arrives at the left one. Edge kinds follow from endpoint parities:
//! LL even→odd, LR even→even, RL odd→odd, RR odd→even.

use std::collections::HashMap;
use std::fmt;

use crate::run::{FactorKind, Run};
use crate::transducer::{StateId, Transducer};

/// Kind of an edge, read off the parities of its endpoints.
pub fn edge_kind(from: usize, to: usize) -> FactorKind {
    match (from % 2, to % 2) {
        (0, 1) => FactorKind::LL,
        (0, 0) => FactorKind::LR,
        (1, 1) => FactorKind::RL,
        _ => FactorKind::RR,
    }
}

/// A functional graph on levels: every node has at most one incoming and one
/// outgoing edge. `left` and `right` are the crossing-sequence lengths of the
/// two borders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flow {
    left: usize,
    right: usize,
    succ: Vec<Option<usize>>,
}

impl Flow {
    /// Builds a flow, rejecting edges whose endpoints do not exist on the
    /// border their parity designates, and nodes of degree above one.
    pub fn new(left: usize, right: usize, edges: &[(usize, usize)]) -> Option<Flow> {
        let n = left.max(right);
        let mut succ = vec![None; n];
        let mut has_pred = vec![false; n];
        for &(a, b) in edges {
            let src_ok = if a % 2 == 0 { a < left } else { a < right };
            let dst_ok = if b % 2 == 1 { b < left } else { b < right };
            if !src_ok || !dst_ok || succ[a].is_some() || has_pred[b] {
                return None;
            }
            succ[a] = Some(b);
            has_pred[b] = true;
        }
        Some(Flow { left, right, succ })
    }

    pub fn left_height(&self) -> usize {
        self.left
    }

    pub fn right_height(&self) -> usize {
        self.right
    }

    pub fn node_count(&self) -> usize {
        self.succ.len()
    }

    pub fn succ(&self, y: usize) -> Option<usize> {
        self.succ.get(y).copied().flatten()
    }

    /// Edges sorted by source.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .filter_map(|(a, b)| b.map(|b| (a, b)))
            .collect()
    }

    pub fn edges_of(&self, kind: FactorKind) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|&(a, b)| edge_kind(a, b) == kind)
            .collect()
    }

    /// Every crossing on either border is attached to an edge, as happens for
    /// flows of run intervals.
    pub fn is_complete(&self) -> bool {
        let mut has_pred = vec![false; self.succ.len()];
        for b in self.succ.iter().flatten() {
            has_pred[*b] = true;
        }
        (0..self.left).all(|y| {
            if y % 2 == 0 {
                self.succ[y].is_some()
            } else {
                has_pred[y]
            }
        }) && (0..self.right).all(|y| {
            if y % 2 == 0 {
                has_pred[y]
            } else {
                self.succ[y].is_some()
            }
        })
    }

    /// The product `self ∘ other`, or `None` for ⊥.
    pub fn compose(&self, other: &Flow) -> Option<Flow> {
        if self.right != other.left {
            return None;
        }
        let n = self.node_count().max(other.node_count());
        let f = |k| Rel::from_edges(n, &self.edges_of(k));
        let g = |k| Rel::from_edges(n, &other.edges_of(k));
        let (f_ll, f_lr, f_rl, f_rr) = (
            f(FactorKind::LL),
            f(FactorKind::LR),
            f(FactorKind::RL),
            f(FactorKind::RR),
        );
        let (g_ll, g_lr, g_rl, g_rr) = (
            g(FactorKind::LL),
            g(FactorKind::LR),
            g(FactorKind::RL),
            g(FactorKind::RR),
        );
        let left_loop = g_ll.mul(&f_rr).star();
        let right_loop = f_rr.mul(&g_ll).star();
        let lr = f_lr.mul(&left_loop).mul(&g_lr);
        let rl = g_rl.mul(&right_loop).mul(&f_rl);
        let ll = f_ll.union(&f_lr.mul(&left_loop).mul(&g_ll).mul(&f_rl));
        let rr = g_rr.union(&g_rl.mul(&right_loop).mul(&f_rr).mul(&g_lr));
        let mut edges = Vec::new();
        for (rel, kind) in [
            (&ll, FactorKind::LL),
            (&lr, FactorKind::LR),
            (&rl, FactorKind::RL),
            (&rr, FactorKind::RR),
        ] {
            for (a, b) in rel.pairs() {
                if edge_kind(a, b) != kind {
                    return None;
                }
                edges.push((a, b));
            }
        }
        let flow = Flow::new(self.left, other.right, &edges)?;
        flow.is_complete().then_some(flow)
    }
}

impl fmt::Display for Flow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |k| {
            let e: Vec<String> = self
                .edges_of(k)
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect();
            format!("{{{}}}", e.join(","))
        };
        write!(
            f,
            "flow{{LL:{}, LR:{}, RL:{}, RR:{}}}",
            part(FactorKind::LL),
            part(FactorKind::LR),
            part(FactorKind::RL),
            part(FactorKind::RR)
        )
    }
}

/// Binary relation on `0..n` as bitset rows.
#[derive(Clone, PartialEq, Eq)]
struct Rel(Vec<u128>);

impl Rel {
    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Rel {
        let mut r = vec![0u128; n];
        for &(a, b) in edges {
            r[a] |= 1 << b;
        }
        Rel(r)
    }

    fn identity(n: usize) -> Rel {
        Rel((0..n).map(|i| 1u128 << i).collect())
    }

    fn mul(&self, other: &Rel) -> Rel {
        Rel(self
            .0
            .iter()
            .map(|&row| {
                let mut acc = 0u128;
                let mut bits = row;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    acc |= other.0[j];
                    bits &= bits - 1;
                }
                acc
            })
            .collect())
    }

    fn union(&self, other: &Rel) -> Rel {
        Rel(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    /// Reflexive-transitive closure over all `n` nodes.
    fn star(&self) -> Rel {
        let mut r = Rel::identity(self.0.len());
        loop {
            let next = r.union(&r.mul(self));
            if next == r {
                return r;
            }
            r = next;
        }
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, &row) in self.0.iter().enumerate() {
            let mut bits = row;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push((a, b));
                bits &= bits - 1;
            }
        }
        out
    }
}

/// A flow together with the crossing sequences of its two borders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Effect {
    pub flow: Flow,
    pub c1: Vec<StateId>,
    pub c2: Vec<StateId>,
}

impl Effect {
    pub fn new(flow: Flow, c1: Vec<StateId>, c2: Vec<StateId>) -> Option<Effect> {
        (flow.left_height() == c1.len() && flow.right_height() == c2.len()).then_some(Effect {
            flow,
            c1,
            c2,
        })
    }

    /// `self ⊙ other`, or `None` for ⊥.
    pub fn product(&self, other: &Effect) -> Option<Effect> {
        if self.c2 != other.c1 {
            return None;
        }
        let flow = self.flow.compose(&other.flow)?;
        Some(Effect {
            flow,
            c1: self.c1.clone(),
            c2: other.c2.clone(),
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.product(self).as_ref() == Some(self)
    }

    /// Text form with state names.
    pub fn render(&self, t: &Transducer) -> String {
        let names = |c: &[StateId]| {
            c.iter()
                .map(|&q| t.state_name(q))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}|{}|{}", self.flow, names(&self.c1), names(&self.c2))
    }
}

impl fmt::Display for Effect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids = |c: &[StateId]| {
            c.iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}|{}|{}", self.flow, ids(&self.c1), ids(&self.c2))
    }
}

/// `E ⊙ E'` lifted to ⊥ (`None`), which absorbs.
pub fn effect_product(a: Option<&Effect>, b: Option<&Effect>) -> Option<Effect> {
    a?.product(b?)
}

pub fn is_idempotent(e: Option<&Effect>) -> bool {
    e.is_some_and(Effect::is_idempotent)
}

/// The flow of `[x1, x2]`: one edge per intercepted factor.
pub fn flow_of_interval(run: &Run, x1: usize, x2: usize) -> Flow {
    let edges: Vec<(usize, usize)> = run
        .intercepted_factors(x1, x2)
        .iter()
        .map(|f| (run.location(f.start).y, run.location(f.end).y))
        .collect();
    Flow::new(run.height(x1), run.height(x2), &edges).expect("factors of a run form a flow")
}

pub fn effect_of_interval(run: &Run, x1: usize, x2: usize) -> Effect {
    Effect {
        flow: flow_of_interval(run, x1, x2),
        c1: run.crossing_sequence(x1),
        c2: run.crossing_sequence(x2),
    }
}

/// Handle of an interned effect.
pub type EffectId = usize;

/// Hash-consing table with memoized products.
#[derive(Default)]
pub struct EffectTable {
    ids: HashMap<Effect, EffectId>,
    effects: Vec<Effect>,
    products: HashMap<(EffectId, EffectId), Option<EffectId>>,
    idempotent: HashMap<EffectId, bool>,
}

impl EffectTable {
    pub fn new() -> EffectTable {
        EffectTable::default()
    }

    pub fn intern(&mut self, e: Effect) -> EffectId {
        if let Some(&id) = self.ids.get(&e) {
            return id;
        }
        let id = self.effects.len();
        self.effects.push(e.clone());
        self.ids.insert(e, id);
        id
    }

    pub fn get(&self, id: EffectId) -> &Effect {
        &self.effects[id]
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn product(&mut self, a: EffectId, b: EffectId) -> Option<EffectId> {
        if let Some(&r) = self.products.get(&(a, b)) {
            return r;
        }
        let r = self.effects[a]
            .product(&self.effects[b])
            .map(|e| self.intern(e));
        self.products.insert((a, b), r);
        r
    }

    pub fn is_idempotent(&mut self, a: EffectId) -> bool {
        if let Some(&r) = self.idempotent.get(&a) {
            return r;
        }
        let r = self.product(a, a) == Some(a);
        self.idempotent.insert(a, r);
        r
    }

    /// The subsemigroup generated by `gens`; the flag reports whether ⊥ is
    /// reachable. Stops with `None` once more than `cap` elements appear.
    pub fn closure(&mut self, gens: &[EffectId], cap: usize) -> Option<(Vec<EffectId>, bool)> {
        let mut members: Vec<EffectId> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for &g in gens {
            if seen.insert(g) {
                members.push(g);
            }
        }
        let mut bottom = false;
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for &g in gens {
                match self.product(a, g) {
                    Some(c) => {
                        if seen.insert(c) {
                            members.push(c);
                            if members.len() > cap {
                                return None;
                            }
                        }
                    }
                    None => bottom = true,
                }
            }
            i += 1;
        }
        Some((members, bottom))
    }
}
