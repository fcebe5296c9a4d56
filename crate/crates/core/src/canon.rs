//! Canonical forms for small graphs.
//!
//! The canonical key of a graph on `n ≤ 8` vertices is the minimum
//! upper-triangle bit sequence ([`SmallGraph::code_seq`]) over all `n!`
//! relabelings. Exhaustive minimization is exact at these orders; a sound
//! restriction of the search space keeps it fast:
//!
//! Row 0 occupies the most significant bits of the code, so the optimal
//! labeling must minimize it first. A vertex of degree `d` at position 0
//! yields a row-0 block of at least `2^d - 1` (all neighbors pushed to the
//! trailing positions), and that bound is attainable for any vertex. Hence
//! the optimum places a minimum-degree vertex at position 0, its
//! non-neighbors at positions `1..n-d`, and its neighbors at the tail —
//! only permutations of that shape need to be scanned.

use crate::graph::{SmallGraph, SMALL_MAX_ORDER};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::LazyLock;

/// Isomorphism-class identifier: the minimal code over all relabelings.
///
/// Ordering is by `(order, code)`; within one order this is the
/// lexicographic order of the upper-triangle bit sequences.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonKey {
    pub order: u8,
    pub code: u32,
}

impl CanonKey {
    /// The canonical representative graph itself.
    pub fn to_graph(self) -> SmallGraph {
        SmallGraph::from_code_seq(self.order as usize, self.code)
            .expect("canon keys hold valid orders")
    }
}

/// All permutations of `0..k` for each `k ≤ 8`, built on first use.
static PERMS: LazyLock<Vec<Vec<Vec<u8>>>> = LazyLock::new(|| {
    let mut by_len = Vec::with_capacity(SMALL_MAX_ORDER + 1);
    for k in 0..=SMALL_MAX_ORDER {
        let mut out = Vec::new();
        let mut items: Vec<u8> = (0..k as u8).collect();
        heap_permutations(&mut items, k, &mut out);
        by_len.push(out);
    }
    by_len
});

fn heap_permutations(items: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// All permutations of `0..k`, `k ≤ 8`.
pub fn all_perms(k: usize) -> &'static [Vec<u8>] {
    &PERMS[k]
}

thread_local! {
    static MEMO: RefCell<HashMap<(u8, u32), u32>> = RefCell::new(HashMap::new());
}

/// Canonical key of `g`: minimum [`SmallGraph::code_seq`] over all
/// relabelings. Memoized per thread by labeled code.
pub fn canonical_form(g: &SmallGraph) -> CanonKey {
    let order = g.order() as u8;
    let labeled = g.code_seq();
    let hit = MEMO.with(|m| m.borrow().get(&(order, labeled)).copied());
    let code = match hit {
        Some(code) => code,
        None => {
            let code = minimize(g);
            MEMO.with(|m| m.borrow_mut().insert((order, labeled), code));
            code
        }
    };
    CanonKey { order, code }
}

fn minimize(g: &SmallGraph) -> u32 {
    let n = g.order();
    if n == 1 {
        return 0;
    }
    let min_deg = (0..n).map(|v| g.degree(v)).min().unwrap();
    let mut best = u32::MAX;
    let mut perm = vec![0u8; n];
    for v in 0..n {
        if g.degree(v) != min_deg {
            continue;
        }
        let row = g.row(v);
        let others: Vec<u8> = (0..n as u8)
            .filter(|&u| u != v as u8 && (row >> u) & 1 == 0)
            .collect();
        let nbrs: Vec<u8> = (0..n as u8).filter(|&u| (row >> u) & 1 == 1).collect();
        perm[0] = v as u8;
        for alpha in all_perms(others.len()) {
            for (pos, &idx) in alpha.iter().enumerate() {
                perm[1 + pos] = others[idx as usize];
            }
            for beta in all_perms(nbrs.len()) {
                for (pos, &idx) in beta.iter().enumerate() {
                    perm[1 + others.len() + pos] = nbrs[idx as usize];
                }
                let code = g.relabeled(&perm).code_seq();
                if code < best {
                    best = code;
                }
            }
        }
    }
    best
}
