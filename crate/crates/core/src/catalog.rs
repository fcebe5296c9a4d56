//! Isomorph-free catalogs of admissible small graphs.
//!
//! A catalog of order `o` holds one representative per isomorphism class of
//! admissible `o`-vertex graphs, optionally restricted to Hamiltonian ones.
//! Generation enumerates all `2^(o(o-1)/2)` labeled graphs in ascending code
//! order and marks off whole isomorphism orbits as classes are discovered:
//! because both filters are isomorphism-invariant, the first unmarked code
//! that passes them is the minimal code of a new class, i.e. already the
//! canonical representative. Spreading its orbit also yields the orbit size,
//! hence the automorphism count by orbit–stabilizer.

use crate::canon::{all_perms, CanonKey};
use crate::graph::SmallGraph;
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Smallest supported catalog order.
pub const CATALOG_MIN_ORDER: usize = 3;
/// Largest supported catalog order.
pub const CATALOG_MAX_ORDER: usize = 7;

/// Id of the 7-cycle in the order-7 Hamiltonian catalog. A Hamiltonian graph
/// on 7 vertices has at least 7 edges, with equality exactly for C_7 itself,
/// so C_7 is the unique minimum of the (edge_count, code) sort and always
/// lands first.
pub const C7_CLASS_ID: usize = 0;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("catalog order {0} outside supported range [{CATALOG_MIN_ORDER},{CATALOG_MAX_ORDER}]")]
    OrderOutOfRange(usize),
}

/// One isomorphism class in a [`Catalog`].
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// 0-based position within the catalog's sorted entry list.
    pub id: usize,
    /// Canonical representative (minimal labeled code of the class).
    pub graph: SmallGraph,
    pub canon: CanonKey,
    pub edge_count: usize,
    pub hamiltonian: bool,
    /// Order of the automorphism group of the class.
    pub automorphism_count: usize,
}

impl CatalogEntry {
    /// Number of labeled graphs in this isomorphism class.
    pub fn orbit_size(&self) -> usize {
        factorial(self.graph.order()) / self.automorphism_count
    }
}

/// All isomorphism classes of admissible graphs of one order, in a stable
/// order: ascending `(edge_count, canonical code)`.
#[derive(Clone, Debug)]
pub struct Catalog {
    order: usize,
    hamiltonian_only: bool,
    entries: Vec<CatalogEntry>,
    content_hash: [u8; 32],
}

impl Catalog {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn hamiltonian_only(&self) -> bool {
        self.hamiltonian_only
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: usize) -> Option<&CatalogEntry> {
        self.entries.get(id)
    }

    /// Id of the class with the given canonical key, if present.
    pub fn find(&self, canon: CanonKey) -> Option<usize> {
        self.entries.iter().position(|e| e.canon == canon)
    }

    /// SHA-256 over order, filter flag, and the canonical codes in id order.
    /// Identifies the catalog contents independent of process or platform.
    pub fn content_hash(&self) -> &[u8; 32] {
        &self.content_hash
    }

    pub fn content_hash_hex(&self) -> String {
        self.content_hash
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Total number of labeled graphs covered by the catalog's classes.
    pub fn labeled_count(&self) -> usize {
        self.entries.iter().map(|e| e.orbit_size()).sum()
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Generates the catalog of admissible graphs of the given order, keeping
/// only Hamiltonian classes when `hamiltonian_only` is set.
pub fn generate_catalog(order: usize, hamiltonian_only: bool) -> Result<Catalog, CatalogError> {
    if !(CATALOG_MIN_ORDER..=CATALOG_MAX_ORDER).contains(&order) {
        return Err(CatalogError::OrderOutOfRange(order));
    }
    let bits = order * (order - 1) / 2;
    let code_count = 1usize << bits;
    let perms = all_perms(order);

    // seen[code] marks codes already assigned to a discovered class
    let mut seen = vec![false; code_count];
    let mut classes: Vec<(u32, usize)> = Vec::new(); // (canonical code, orbit size)
    for code in 0..code_count as u32 {
        if seen[code as usize] {
            continue;
        }
        let g = SmallGraph::from_code_seq(order, code).expect("order validated");
        if !g.is_admissible() {
            continue;
        }
        if hamiltonian_only && !g.is_hamiltonian().expect("order ≥ 3") {
            continue;
        }
        // first unmarked survivor in ascending order = canonical representative
        let mut orbit = 0usize;
        for p in perms {
            let image = g.relabeled(p).code_seq() as usize;
            if !seen[image] {
                seen[image] = true;
                orbit += 1;
            }
        }
        classes.push((code, orbit));
    }

    let mut entries: Vec<CatalogEntry> = classes
        .into_iter()
        .map(|(code, orbit)| {
            let graph = SmallGraph::from_code_seq(order, code).expect("order validated");
            CatalogEntry {
                id: 0, // assigned after sorting
                canon: CanonKey {
                    order: order as u8,
                    code,
                },
                edge_count: graph.edge_count(),
                hamiltonian: if hamiltonian_only {
                    true
                } else {
                    graph.is_hamiltonian().expect("order ≥ 3")
                },
                automorphism_count: factorial(order) / orbit,
                graph,
            }
        })
        .collect();
    entries.sort_by_key(|e| (e.edge_count, e.canon.code));
    for (id, e) in entries.iter_mut().enumerate() {
        e.id = id;
    }

    let mut hasher = Sha256::new();
    hasher.update([order as u8, hamiltonian_only as u8]);
    for e in &entries {
        hasher.update(e.canon.code.to_le_bytes());
    }
    let content_hash = hasher.finalize().into();

    Ok(Catalog {
        order,
        hamiltonian_only,
        entries,
        content_hash,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    /// Frozen facts about the order-7 Hamiltonian catalog, independently
    /// recomputed by brute force before being pinned here:
    /// (id, edge_count, automorphism_count, canonical code).
    pub(crate) const ORDER7_CLASSES: [(usize, usize, usize, u32); 19] = [
        (0, 7, 14, 104_096),
        (1, 8, 2, 104_097),
        (2, 8, 2, 104_100),
        (3, 9, 2, 104_099),
        (4, 9, 1, 104_101),
        (5, 9, 2, 104_108),
        (6, 9, 2, 104_114),
        (7, 9, 2, 104_168),
        (8, 9, 1, 104_176),
        (9, 9, 2, 106_280),
        (10, 10, 2, 104_115),
        (11, 10, 2, 104_172),
        (12, 10, 1, 104_178),
        (13, 10, 1, 106_284),
        (14, 10, 2, 106_352),
        (15, 10, 4, 111_564),
        (16, 10, 4, 112_524),
        (17, 11, 4, 112_525),
        (18, 11, 4, 241_492),
    ];

    #[test]
    fn order_range_is_enforced() {
        assert_eq!(
            generate_catalog(2, true).unwrap_err(),
            CatalogError::OrderOutOfRange(2)
        );
        assert_eq!(
            generate_catalog(8, false).unwrap_err(),
            CatalogError::OrderOutOfRange(8)
        );
    }

    #[test]
    fn triangle_catalog() {
        let cat = generate_catalog(3, true).unwrap();
        assert_eq!(cat.len(), 1);
        let e = &cat.entries()[0];
        assert_eq!(e.edge_count, 3);
        assert_eq!(e.automorphism_count, 6);
        assert!(e.graph.is_hamiltonian().unwrap());
    }

    #[test]
    fn order7_hamiltonian_catalog_matches_frozen_table() {
        let cat = generate_catalog(7, true).unwrap();
        assert_eq!(cat.len(), 19);
        for (id, edges, aut, code) in ORDER7_CLASSES {
            let e = cat.get(id).unwrap();
            assert_eq!(
                (e.id, e.edge_count, e.automorphism_count, e.canon.code),
                (id, edges, aut, code)
            );
        }
        // one 7-edge class only: the 7-cycle, first by sort order
        assert_eq!(
            cat.entries().iter().filter(|e| e.edge_count == 7).count(),
            1
        );
        let c7 = SmallGraph::from_edges(7, &(0..7).map(|i| (i, (i + 1) % 7)).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(cat.get(0).unwrap().canon, canonical_form(&c7));
        assert_eq!(cat.labeled_count(), 50_760);
    }

    #[test]
    fn entry_invariants_hold() {
        let cat = generate_catalog(7, true).unwrap();
        let mut keys = std::collections::HashSet::new();
        for e in cat.entries() {
            assert!(e.graph.is_admissible());
            assert!(e.hamiltonian && e.graph.is_hamiltonian().unwrap());
            assert_eq!(e.canon, canonical_form(&e.graph));
            assert_eq!(e.edge_count, e.graph.edge_count());
            assert_eq!(factorial(7) % e.automorphism_count, 0);
            assert!(keys.insert(e.canon), "duplicate class {:?}", e.canon);
        }
        // sorted by (edge count, canonical code)
        for w in cat.entries().windows(2) {
            assert!((w[0].edge_count, w[0].canon.code) < (w[1].edge_count, w[1].canon.code));
        }
    }

    #[test]
    fn order6_unfiltered_catalog() {
        let cat = generate_catalog(6, false).unwrap();
        assert!(
            cat.len() >= 35,
            "expected at least 35 classes, got {}",
            cat.len()
        );
        assert_eq!(cat.len(), 62);
        assert_eq!(cat.entries().iter().filter(|e| e.hamiltonian).count(), 7);
        assert!(!cat.hamiltonian_only());
    }

    #[test]
    fn hash_is_reproducible_and_discriminating() {
        let a = generate_catalog(7, true).unwrap();
        let b = generate_catalog(7, true).unwrap();
        assert_eq!(a.content_hash(), b.content_hash());
        let c = generate_catalog(6, false).unwrap();
        assert_ne!(a.content_hash(), c.content_hash());
        assert_eq!(a.content_hash_hex().len(), 64);
    }

    #[test]
    fn find_locates_entries_by_key() {
        let cat = generate_catalog(7, true).unwrap();
        for e in cat.entries() {
            assert_eq!(cat.find(e.canon), Some(e.id));
        }
        let k7 = CanonKey {
            order: 7,
            code: (1 << 21) - 1,
        };
        assert_eq!(cat.find(k7), None);
    }
}
