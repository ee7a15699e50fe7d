//! Factorization forests over position sets and Ramsey-style extraction of
//! idempotent loops with productive components.

use crate::effect::{effect_of_interval, Effect, EffectId, EffectTable};
use crate::error::{Error, Result};
use crate::loops::{components_of, Component, Loop};
use crate::run::{LocationSet, Run};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestNode {
    pub lo: usize,
    pub hi: usize,
    pub effect: Effect,
    pub children: Vec<usize>,
}

/// A factorization tree over `positions`; leaves are the intervals between
/// consecutive positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    pub positions: Vec<usize>,
    pub nodes: Vec<ForestNode>,
    pub root: usize,
}

impl Forest {
    /// Height with leaves counted as 1.
    pub fn height(&self) -> usize {
        fn h(f: &Forest, n: usize) -> usize {
            1 + f.nodes[n]
                .children
                .iter()
                .map(|&c| h(f, c))
                .max()
                .unwrap_or(0)
        }
        h(self, self.root)
    }

    /// Indented text tree.
    pub fn render(&self) -> String {
        fn go(f: &Forest, n: usize, depth: usize, out: &mut String) {
            let node = &f.nodes[n];
            out.push_str(&format!(
                "{}[{},{}] {}\n",
                "  ".repeat(depth),
                node.lo,
                node.hi,
                node.effect
            ));
            for &c in &node.children {
                go(f, c, depth + 1, out);
            }
        }
        let mut s = String::new();
        go(self, self.root, 0, &mut s);
        s
    }

    /// Nodes in depth-first pre-order with their depth.
    pub fn preorder(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut stack = vec![(self.root, 0)];
        while let Some((n, d)) = stack.pop() {
            out.push((n, d));
            for &c in self.nodes[n].children.iter().rev() {
                stack.push((c, d + 1));
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Choice {
    Leaf,
    Binary(usize),
    /// Parts of `[i..=j]` from the partition table, then `[j+1..=k]`.
    Multi(usize),
}

#[derive(Clone, Copy)]
enum Parts {
    Whole,
    Split(usize),
}

/// Builds a minimum-height factorization forest for the positions `xs`.
///
/// Heights come from an interval dynamic program: a node is either binary or
/// an idempotent node whose children all carry its own effect.
pub fn build_forest(run: &Run, xs: &[usize]) -> Result<Forest> {
    let mut pos = xs.to_vec();
    pos.sort_unstable();
    pos.dedup();
    if pos.len() < 2 || *pos.last().unwrap() > run.omega() {
        return Err(Error::InvalidArgument(
            "a forest needs at least two positions inside the run".into(),
        ));
    }
    let m = pos.len() - 1;
    let mut table = EffectTable::new();
    let leaves: Vec<EffectId> = (0..m)
        .map(|i| table.intern(effect_of_interval(run, pos[i], pos[i + 1])))
        .collect();
    // e[i][k]: effect of leaves i..=k.
    let mut e = vec![vec![0; m]; m];
    for i in 0..m {
        e[i][i] = leaves[i];
        for k in i + 1..m {
            e[i][k] = table
                .product(e[i][k - 1], leaves[k])
                .ok_or_else(|| Error::InternalInconsistency("⊥ effect inside a run".into()))?;
        }
    }
    let idem: Vec<Vec<bool>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|k| k >= i && table.is_idempotent(e[i][k]))
                .collect()
        })
        .collect();
    let mut h = vec![vec![0usize; m]; m];
    let mut q = vec![vec![0usize; m]; m];
    let mut choice = vec![vec![Choice::Leaf; m]; m];
    let mut parts = vec![vec![Parts::Whole; m]; m];
    for len in 1..=m {
        for i in 0..=m - len {
            let k = i + len - 1;
            if len > 1 {
                let mut best = usize::MAX;
                for j in i..k {
                    let v = h[i][j].max(h[j + 1][k]);
                    if v < best {
                        best = v;
                        choice[i][k] = Choice::Binary(j);
                    }
                }
                if idem[i][k] {
                    for j in i..k {
                        if e[i][j] == e[i][k] && e[j + 1][k] == e[i][k] {
                            let v = q[i][j].max(h[j + 1][k]);
                            if v < best {
                                best = v;
                                choice[i][k] = Choice::Multi(j);
                            }
                        }
                    }
                }
                h[i][k] = best + 1;
            } else {
                h[i][k] = 1;
            }
            q[i][k] = h[i][k];
            if idem[i][k] {
                for j in i..k {
                    if e[i][j] == e[i][k] && e[j + 1][k] == e[i][k] {
                        let v = q[i][j].max(h[j + 1][k]);
                        if v < q[i][k] {
                            q[i][k] = v;
                            parts[i][k] = Parts::Split(j);
                        }
                    }
                }
            }
        }
    }

    struct Ctx<'a> {
        pos: &'a [usize],
        e: &'a [Vec<EffectId>],
        choice: &'a [Vec<Choice>],
        parts: &'a [Vec<Parts>],
        table: &'a EffectTable,
        nodes: Vec<ForestNode>,
    }
    fn node(c: &mut Ctx, i: usize, k: usize) -> usize {
        let children = match c.choice[i][k] {
            Choice::Leaf => Vec::new(),
            Choice::Binary(j) => vec![node(c, i, j), node(c, j + 1, k)],
            Choice::Multi(j) => {
                let mut v = collect(c, i, j);
                v.push(node(c, j + 1, k));
                v
            }
        };
        c.nodes.push(ForestNode {
            lo: c.pos[i],
            hi: c.pos[k + 1],
            effect: c.table.get(c.e[i][k]).clone(),
            children,
        });
        c.nodes.len() - 1
    }
    fn collect(c: &mut Ctx, i: usize, k: usize) -> Vec<usize> {
        match c.parts[i][k] {
            Parts::Whole => vec![node(c, i, k)],
            Parts::Split(j) => {
                let mut v = collect(c, i, j);
                v.push(node(c, j + 1, k));
                v
            }
        }
    }
    let mut ctx = Ctx {
        pos: &pos,
        e: &e,
        choice: &choice,
        parts: &parts,
        table: &table,
        nodes: Vec::new(),
    };
    let root = node(&mut ctx, 0, m - 1);
    let nodes = ctx.nodes;
    Ok(Forest {
        positions: pos,
        nodes,
        root,
    })
}

/// Checks leaves, interval unions, effect products and the idempotent rule
/// for nodes with more than two children.
pub fn verify_forest(run: &Run, f: &Forest) -> bool {
    let pos = &f.positions;
    if pos.len() < 2 || pos.windows(2).any(|w| w[0] >= w[1]) || *pos.last().unwrap() > run.omega() {
        return false;
    }
    let mut visits = vec![0usize; f.nodes.len()];
    let mut leaves = Vec::new();
    let mut stack = vec![f.root];
    while let Some(n) = stack.pop() {
        let Some(node) = f.nodes.get(n) else {
            return false;
        };
        visits[n] += 1;
        if visits[n] > 1 {
            return false;
        }
        if node.children.is_empty() {
            if node.effect != effect_of_interval(run, node.lo, node.hi) {
                return false;
            }
            leaves.push((node.lo, node.hi));
            continue;
        }
        if node.children.len() < 2 || node.children.iter().any(|&c| c >= f.nodes.len()) {
            return false;
        }
        let kids: Vec<&ForestNode> = node.children.iter().map(|&c| &f.nodes[c]).collect();
        if kids[0].lo != node.lo
            || kids[kids.len() - 1].hi != node.hi
            || kids.windows(2).any(|w| w[0].hi != w[1].lo)
        {
            return false;
        }
        let mut acc = Some(kids[0].effect.clone());
        for k in &kids[1..] {
            acc = acc.and_then(|a| a.product(&k.effect));
        }
        if acc.as_ref() != Some(&node.effect) {
            return false;
        }
        if kids.len() > 2
            && (!node.effect.is_idempotent() || kids.iter().any(|k| k.effect != node.effect))
        {
            return false;
        }
        stack.extend(node.children.iter().copied());
    }
    leaves.sort_unstable();
    let root = &f.nodes[f.root];
    root.lo == pos[0]
        && root.hi == *pos.last().unwrap()
        && leaves.len() == pos.len() - 1
        && leaves
            .iter()
            .zip(pos.windows(2))
            .all(|(&(a, b), w)| a == w[0] && b == w[1])
}

/// An idempotent loop with a productive component inside a location window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyWitness {
    pub lp: Loop,
    pub component: Component,
}

/// Follows the extraction procedure: strip the borders of
/// `Z = [first, last] ∩ ([x1, x2] × ℕ)`, pick the level whose productive
/// sources span the most positions, factorize those positions and look for two
/// consecutive equal idempotent children whose component through that level
/// produces output.
pub fn ramsey_extract(
    run: &Run,
    x1: usize,
    x2: usize,
    first: usize,
    last: usize,
) -> Option<RamseyWitness> {
    let inner = LocationSet::new(
        first + 1,
        last.saturating_sub(1),
        x1 + 1,
        x2.saturating_sub(1),
    );
    if first + 1 > last || x1 + 1 > x2 {
        return None;
    }
    let mut by_level: Vec<Vec<usize>> = Vec::new();
    for (i, s) in run.steps().iter().enumerate() {
        if !s.output.is_empty() && inner.contains(run, i) && inner.contains(run, i + 1) {
            let l = run.location(i);
            if by_level.len() <= l.y {
                by_level.resize(l.y + 1, Vec::new());
            }
            if !by_level[l.y].contains(&l.x) {
                by_level[l.y].push(l.x);
            }
        }
    }
    let mut y = 0;
    for (lvl, xs) in by_level.iter().enumerate() {
        if xs.len() > by_level[y].len() {
            y = lvl;
        }
    }
    let xs = by_level.get(y)?;
    if xs.len() < 3 {
        return None;
    }
    let forest = build_forest(run, xs).ok()?;
    let mut candidates: Vec<(usize, usize)> = forest
        .preorder()
        .into_iter()
        .filter(|&(n, _)| forest.nodes[n].children.len() >= 3)
        .collect();
    // Deepest first; pre-order already lists shallower-left nodes first.
    candidates.sort_by_key(|&(_, d)| std::cmp::Reverse(d));
    for (n, _) in candidates {
        let kids = &forest.nodes[n].children;
        for pair in kids.windows(2) {
            for &c in pair {
                let child = &forest.nodes[c];
                let lp = Loop::new(run, child.lo, child.hi);
                if !lp.idempotent {
                    continue;
                }
                let Some(comp) = components_of(run, &lp)
                    .into_iter()
                    .find(|c| c.levels.contains(&y))
                else {
                    continue;
                };
                let w = RamseyWitness {
                    lp,
                    component: comp,
                };
                if witness_holds(run, &w, x1, x2, first, last) {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// The three conditions a Ramsey witness must meet.
pub fn witness_holds(
    run: &Run,
    w: &RamseyWitness,
    x1: usize,
    x2: usize,
    first: usize,
    last: usize,
) -> bool {
    w.lp.idempotent
        && x1 < w.lp.x1
        && w.lp.x2 < x2
        && first < w.component.anchor_index
        && w.component.anchor_index < last
        && !w.component.trace_output(run).is_empty()
}
