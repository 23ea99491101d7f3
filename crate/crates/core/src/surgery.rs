//! Saddle replay on a labeled closed 1-manifold.
//!
//! A 1-manifold is stored as a 2-regular multigraph on numbered nodes: every node
//! meets exactly two arcs. An elementary saddle removes two arcs `(p_i, p_j)` and
//! `(q_i, q_j)` and inserts `(p_i, q_i)` and `(p_j, q_j)`. Circles are connected
//! components, ordered by their smallest node, and a labeling of the circles is a
//! bitmask with bit `k` set when circle `k` carries `x`.

use std::collections::BTreeMap;

use crate::rings::{Coefficient, Frobenius, Label};

const EMPTY: usize = usize::MAX;

/// Bitmask labeling of canonically ordered circles; a set bit means `x`.
pub(crate) type Mask = u32;

pub(crate) fn mask_label(mask: Mask, k: usize) -> Label {
    if mask >> k & 1 == 1 {
        Label::X
    } else {
        Label::One
    }
}

pub(crate) fn with_label(mask: Mask, k: usize, label: Label) -> Mask {
    match label {
        Label::One => mask & !(1 << k),
        Label::X => mask | (1 << k),
    }
}

/// Connected components with a canonical numbering by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Partition {
    pub comp_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl Partition {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// Builds the orbit partition of `nodes` points under the given pairs.
    pub fn from_pairs(nodes: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut uf = UnionFind::new(nodes);
        for (u, v) in pairs {
            uf.union(u, v);
        }
        uf.into_partition()
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }

    /// Components numbered in order of first appearance, which is order of smallest member.
    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut root_index = vec![EMPTY; n];
        let mut comp_of = vec![0; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (x, comp) in comp_of.iter_mut().enumerate() {
            let r = self.find(x);
            if root_index[r] == EMPTY {
                root_index[r] = members.len();
                members.push(Vec::new());
            }
            *comp = root_index[r];
            members[root_index[r]].push(x);
        }
        Partition { comp_of, members }
    }
}

/// One elementary saddle: the arcs `first` and `second` are cut and reconnected
/// as `(first.0, second.0)` and `(first.1, second.1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Saddle {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

#[derive(Clone, Debug)]
pub(crate) struct Strands {
    adj: Vec<[usize; 2]>,
}

impl Strands {
    pub fn new(nodes: usize) -> Self {
        Strands {
            adj: vec![[EMPTY, EMPTY]; nodes],
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        self.attach(u, v);
        self.attach(v, u);
    }

    fn attach(&mut self, u: usize, v: usize) {
        let slot = self.adj[u]
            .iter()
            .position(|&w| w == EMPTY)
            .expect("node already has two arcs");
        self.adj[u][slot] = v;
    }

    fn detach(&mut self, u: usize, v: usize) {
        let slot = self.adj[u]
            .iter()
            .position(|&w| w == v)
            .expect("arc to detach is missing");
        self.adj[u][slot] = EMPTY;
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) {
        self.detach(u, v);
        self.detach(v, u);
    }

    pub fn components(&self) -> Partition {
        Partition::from_pairs(
            self.adj.len(),
            self.adj
                .iter()
                .enumerate()
                .flat_map(|(u, ns)| ns.iter().filter(|&&v| v != EMPTY).map(move |&v| (u, v))),
        )
    }

    pub fn apply(&mut self, saddle: Saddle) {
        let (pi, pj) = saddle.first;
        let (qi, qj) = saddle.second;
        self.remove_arc(pi, pj);
        self.remove_arc(qi, qj);
        self.add_arc(pi, qi);
        self.add_arc(pj, qj);
    }
}

/// Outcome of one saddle on the circle level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum SaddleKind {
    /// Old circles `(a, b)` become new circle `into`.
    Merge { a: usize, b: usize, into: usize },
    /// Old circle `from` becomes new circles `(left, right)`; `left` contains `first.0`.
    Split { from: usize, left: usize, right: usize },
}

/// Applies one saddle and reports how circles were rearranged, together with the
/// map from each untouched old circle to its new index.
pub(crate) fn step(strands: &mut Strands, saddle: Saddle) -> (SaddleKind, Vec<Option<usize>>, Partition) {
    let before = strands.components();
    let cx = before.comp_of[saddle.first.0];
    let cy = before.comp_of[saddle.second.0];
    strands.apply(saddle);
    let after = strands.components();
    let kind = if cx != cy {
        SaddleKind::Merge {
            a: cx,
            b: cy,
            into: after.comp_of[saddle.first.0],
        }
    } else {
        let left = after.comp_of[saddle.first.0];
        let right = after.comp_of[saddle.first.1];
        assert_ne!(left, right, "saddle on a single circle must split it");
        SaddleKind::Split {
            from: cx,
            left,
            right,
        }
    };
    let carried = before
        .members
        .iter()
        .enumerate()
        .map(|(k, nodes)| (k != cx && k != cy).then(|| after.comp_of[nodes[0]]))
        .collect();
    (kind, carried, after)
}

/// Linear combination of labelings of the current circles.
pub(crate) type LabelState<R> = BTreeMap<Mask, R>;

pub(crate) fn add_to<R: Coefficient>(state: &mut LabelState<R>, mask: Mask, c: R) {
    if c.is_zero() {
        return;
    }
    let entry = state.entry(mask).or_insert_with(R::zero);
    *entry = entry.clone() + c;
    if entry.is_zero() {
        state.remove(&mask);
    }
}

/// Replays `saddles` in order on `strands`, transforming the labeled state with the
/// TQFT. After every saddle, terms in which the circle through any `pinned` node is
/// labeled `x` are discarded.
pub(crate) fn replay<R: Coefficient>(
    frob: &Frobenius<R>,
    strands: &mut Strands,
    mut state: LabelState<R>,
    saddles: &[Saddle],
    pinned: &[usize],
) -> LabelState<R> {
    for &saddle in saddles {
        if state.is_empty() {
            break;
        }
        let (kind, carried, after) = step(strands, saddle);
        let mut next = LabelState::new();
        for (mask, coeff) in &state {
            let mut base: Mask = 0;
            for (old, new) in carried.iter().enumerate() {
                if let Some(new) = new {
                    base = with_label(base, *new, mask_label(*mask, old));
                }
            }
            match kind {
                SaddleKind::Merge { a, b, into } => {
                    for (w, k) in frob.product_terms(mask_label(*mask, a), mask_label(*mask, b)) {
                        add_to(&mut next, with_label(base, into, w), coeff.clone() * k);
                    }
                }
                SaddleKind::Split { from, left, right } => {
                    for (u, v, k) in frob.coproduct_terms(mask_label(*mask, from)) {
                        let m = with_label(with_label(base, left, u), right, v);
                        add_to(&mut next, m, coeff.clone() * k);
                    }
                }
            }
        }
        if !pinned.is_empty() {
            next.retain(|mask, _| {
                pinned
                    .iter()
                    .all(|&node| mask_label(*mask, after.comp_of[node]) == Label::One)
            });
        }
        state = next;
    }
    state
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_orders_by_smallest_member() {
        let p = Partition::from_pairs(5, [(4, 1), (2, 3)]);
        assert_eq!(p.members, vec![vec![0], vec![1, 4], vec![2, 3]]);
        assert_eq!(p.comp_of, vec![0, 1, 2, 2, 1]);
    }

    #[test]
    fn merge_then_split_of_two_bigons() {
        // Two bigons {0,1} and {2,3}; a saddle between arcs (0,1) and (2,3) merges them.
        let mut s = Strands::new(4);
        s.add_arc(0, 1);
        s.add_arc(0, 1);
        s.add_arc(2, 3);
        s.add_arc(2, 3);
        assert_eq!(s.components().count(), 2);
        let (kind, _, after) = step(
            &mut s,
            Saddle {
                first: (0, 1),
                second: (2, 3),
            },
        );
        assert_eq!(after.count(), 1);
        assert!(matches!(kind, SaddleKind::Merge { .. }));
        // Cutting the new arcs (0,2) and (1,3) against each other splits the circle again.
        let (kind, _, after) = step(
            &mut s,
            Saddle {
                first: (0, 2),
                second: (1, 3),
            },
        );
        assert_eq!(after.count(), 2);
        assert!(matches!(kind, SaddleKind::Split { .. }));
    }

    #[test]
    fn pinned_nodes_drop_x_terms() {
        let frob = Frobenius::<i64>::khovanov();
        let mut t = Strands::new(4);
        t.add_arc(0, 1);
        t.add_arc(0, 1);
        t.add_arc(2, 3);
        t.add_arc(2, 3);
        // Split of a merged circle starting from 1 ⊗ 1.
        let state = LabelState::from([(0, 1i64)]);
        let saddles = [
            Saddle {
                first: (0, 1),
                second: (2, 3),
            },
            Saddle {
                first: (0, 2),
                second: (1, 3),
            },
        ];
        let full = replay(&frob, &mut t.clone(), state.clone(), &saddles, &[]);
        assert_eq!(full.len(), 2);
        let pinned = replay(&frob, &mut t, state, &saddles, &[0]);
        assert_eq!(pinned.len(), 1);
    }
}
