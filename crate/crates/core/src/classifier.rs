//! Constant-time classification of labeled 7-vertex graphs.
//!
//! The classifier is a flat table with one byte per labeled order-7 graph,
//! indexed by [`SmallGraph::code_index`] (upper-triangle bits row-major,
//! pair (0,1) as bit 0). Each slot holds the catalog id of the isomorphic
//! Hamiltonian admissible class, or [`NONE_MARKER`]. Building touches each
//! catalog orbit once; the result is persisted to a cache file keyed by the
//! catalog's content hash and reloaded on subsequent runs.

use crate::canon::all_perms;
use crate::catalog::Catalog;
use crate::graph::SmallGraph;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Table slot value for "not a Hamiltonian admissible class".
pub const NONE_MARKER: u8 = 0xFF;

/// Number of labeled order-7 graphs, `2^21`.
pub const TABLE_LEN: usize = 1 << 21;

const MAGIC: &[u8; 8] = b"HEPTCLS1";
const HEADER_LEN: usize = 8 + 1 + 1 + 32 + 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifierError {
    #[error(
        "classifier requires the Hamiltonian order-7 catalog \
         (got order {order}, hamiltonian_only={hamiltonian_only})"
    )]
    WrongCatalog {
        order: usize,
        hamiltonian_only: bool,
    },
    #[error("classification requires an order-7 graph (got order {0})")]
    WrongOrder(usize),
}

/// Lookup table mapping every labeled order-7 adjacency code to a catalog id.
#[derive(Clone)]
pub struct Classifier {
    catalog_hash: [u8; 32],
    class_count: usize,
    table: Vec<u8>,
}

impl std::fmt::Debug for Classifier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Classifier(classes={}, table_len={})",
            self.class_count,
            self.table.len()
        )
    }
}

impl Classifier {
    /// Content hash of the catalog this table was built from.
    pub fn catalog_hash(&self) -> &[u8; 32] {
        &self.catalog_hash
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// Number of catalog classes the table refers to.
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Number of labeled codes assigned to a class (non-none slots).
    pub fn labeled_member_count(&self) -> usize {
        self.table.iter().filter(|&&b| b != NONE_MARKER).count()
    }

    /// Classifies an order-7 graph; `None` when it is not a Hamiltonian
    /// admissible class.
    pub fn classify(&self, g: &SmallGraph) -> Result<Option<usize>, ClassifierError> {
        if g.order() != 7 {
            return Err(ClassifierError::WrongOrder(g.order()));
        }
        Ok(self.classify_index(g.code_index()))
    }

    /// Table lookup by little-endian adjacency code. The hot path of the
    /// census engines.
    #[inline(always)]
    pub fn classify_index(&self, code_index: u32) -> Option<usize> {
        debug_assert!((code_index as usize) < TABLE_LEN);
        match self.table[code_index as usize] {
            NONE_MARKER => None,
            id => Some(id as usize),
        }
    }
}

fn check_catalog(catalog: &Catalog) -> Result<(), ClassifierError> {
    if catalog.order() != 7 || !catalog.hamiltonian_only() {
        return Err(ClassifierError::WrongCatalog {
            order: catalog.order(),
            hamiltonian_only: catalog.hamiltonian_only(),
        });
    }
    Ok(())
}

/// Builds the full table by spreading each catalog class over its orbit.
pub fn build_classifier(catalog: &Catalog) -> Result<Classifier, ClassifierError> {
    check_catalog(catalog)?;
    let mut table = vec![NONE_MARKER; TABLE_LEN];
    for entry in catalog.entries() {
        debug_assert!(entry.id < NONE_MARKER as usize);
        for p in all_perms(7) {
            let image = entry.graph.relabeled(p);
            table[image.code_index() as usize] = entry.id as u8;
        }
    }
    Ok(Classifier {
        catalog_hash: *catalog.content_hash(),
        class_count: catalog.len(),
        table,
    })
}

/// Directory the classifier cache lives in: `$HEPTACENSUS_CACHE_DIR`, else
/// `$XDG_CACHE_HOME/heptacensus`, else `~/.cache/heptacensus`, else a
/// subdirectory of the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("HEPTACENSUS_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(xdg).join("heptacensus");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("heptacensus");
    }
    std::env::temp_dir().join("heptacensus")
}

/// Cache file path for a catalog's classifier within `dir`.
pub fn cache_file(dir: &Path, catalog: &Catalog) -> PathBuf {
    let tag: String = catalog.content_hash()[..8]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    dir.join(format!("classifier-{tag}.bin"))
}

/// Loads the classifier from the default cache directory, rebuilding (and
/// re-persisting, best effort) when the file is missing, stale, or damaged.
pub fn load_or_build(catalog: &Catalog) -> Result<Classifier, ClassifierError> {
    load_or_build_in(&default_cache_dir(), catalog)
}

/// [`load_or_build`] against an explicit cache directory.
pub fn load_or_build_in(dir: &Path, catalog: &Catalog) -> Result<Classifier, ClassifierError> {
    check_catalog(catalog)?;
    let path = cache_file(dir, catalog);
    if let Some(classifier) = try_load(&path, catalog) {
        return Ok(classifier);
    }
    let classifier = build_classifier(catalog)?;
    let _ = save(&path, &classifier); // cache write failures are not fatal
    Ok(classifier)
}

fn try_load(path: &Path, catalog: &Catalog) -> Option<Classifier> {
    let bytes = fs::read(path).ok()?;
    if bytes.len() != HEADER_LEN + TABLE_LEN {
        return None;
    }
    let (header, table) = bytes.split_at(HEADER_LEN);
    if &header[..8] != MAGIC
        || header[8] != catalog.order() as u8
        || header[9] != catalog.hamiltonian_only() as u8
        || header[10..42] != catalog.content_hash()[..]
    {
        return None;
    }
    let stored_len = u64::from_le_bytes(header[42..50].try_into().unwrap());
    if stored_len != TABLE_LEN as u64 {
        return None;
    }
    let class_count = catalog.len();
    if table
        .iter()
        .any(|&b| b != NONE_MARKER && b as usize >= class_count)
    {
        return None;
    }
    Some(Classifier {
        catalog_hash: *catalog.content_hash(),
        class_count,
        table: table.to_vec(),
    })
}

fn save(path: &Path, classifier: &Classifier) -> std::io::Result<()> {
    let dir = path.parent().expect("cache file has a parent directory");
    fs::create_dir_all(dir)?;
    // write-then-rename so a concurrent reader never sees a torn file
    let tmp = path.with_extension("bin.tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(MAGIC)?;
        f.write_all(&[7u8, 1u8])?;
        f.write_all(classifier.catalog_hash())?;
        f.write_all(&(TABLE_LEN as u64).to_le_bytes())?;
        f.write_all(&classifier.table)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::generate_catalog;

    fn order7_catalog() -> Catalog {
        generate_catalog(7, true).unwrap()
    }

    fn c7() -> SmallGraph {
        SmallGraph::from_edges(7, &(0..7).map(|i| (i, (i + 1) % 7)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rejects_wrong_catalogs_and_orders() {
        let order6 = generate_catalog(6, false).unwrap();
        assert_eq!(
            build_classifier(&order6).unwrap_err(),
            ClassifierError::WrongCatalog {
                order: 6,
                hamiltonian_only: false
            }
        );
        let unfiltered = generate_catalog(7, false).unwrap();
        assert_eq!(
            build_classifier(&unfiltered).unwrap_err(),
            ClassifierError::WrongCatalog {
                order: 7,
                hamiltonian_only: false
            }
        );
        let cls = build_classifier(&order7_catalog()).unwrap();
        let k4 = SmallGraph::from_code_seq(4, 63).unwrap();
        assert_eq!(
            cls.classify(&k4).unwrap_err(),
            ClassifierError::WrongOrder(4)
        );
    }

    #[test]
    fn classifies_known_graphs() {
        let cat = order7_catalog();
        let cls = build_classifier(&cat).unwrap();
        assert_eq!(cls.table().len(), TABLE_LEN);
        // every labeling of C_7 maps to id 0 (the unique 7-edge class)
        for p in all_perms(7).iter().step_by(131) {
            assert_eq!(cls.classify(&c7().relabeled(p)).unwrap(), Some(0));
        }
        let k7 = SmallGraph::from_code_seq(7, (1 << 21) - 1).unwrap();
        assert_eq!(cls.classify(&k7).unwrap(), None);
        let star = SmallGraph::from_edges(7, &(1..7).map(|v| (0, v)).collect::<Vec<_>>()).unwrap();
        assert_eq!(cls.classify(&star).unwrap(), None);
    }

    #[test]
    fn rook_residual_classes_differ() {
        let cell = |a: usize, b: usize| a / 3 == b / 3 || a % 3 == b % 3;
        let induced = |drop: [usize; 2]| {
            let verts: Vec<usize> = (0..9).filter(|v| !drop.contains(v)).collect();
            let mut g = SmallGraph::empty(7).unwrap();
            for x in 0..7 {
                for y in (x + 1)..7 {
                    if cell(verts[x], verts[y]) {
                        g.add_edge(x, y).unwrap();
                    }
                }
            }
            g
        };
        let cls = build_classifier(&order7_catalog()).unwrap();
        let ten = induced([0, 4]); // non-adjacent cells: different row and column
        let eleven = induced([0, 1]); // adjacent cells: same row
        assert_eq!(ten.edge_count(), 10);
        assert_eq!(eleven.edge_count(), 11);
        let i = cls.classify(&ten).unwrap().unwrap();
        let j = cls.classify(&eleven).unwrap().unwrap();
        assert_ne!(i, j);
        assert_eq!((i, j), (15, 17));
    }

    #[test]
    fn table_agrees_with_direct_predicates() {
        let cls = build_classifier(&order7_catalog()).unwrap();
        // deterministic sweep of ~10^4 codes across the whole range
        for code in (0..TABLE_LEN as u32).step_by(209) {
            let g = SmallGraph::from_code_seq(7, code).unwrap();
            let expected = g.is_admissible() && g.is_hamiltonian().unwrap();
            assert_eq!(
                cls.classify_index(g.code_index()).is_some(),
                expected,
                "code {code}"
            );
        }
    }

    #[test]
    fn orbit_count_matches_labeled_census() {
        let cat = order7_catalog();
        let cls = build_classifier(&cat).unwrap();
        assert_eq!(cls.labeled_member_count(), 50_760);
        assert_eq!(cls.labeled_member_count(), cat.labeled_count());
    }

    #[test]
    fn cache_round_trip_and_damage_recovery() {
        let cat = order7_catalog();
        let dir = tempfile::tempdir().unwrap();
        let built = load_or_build_in(dir.path(), &cat).unwrap();
        let path = cache_file(dir.path(), &cat);
        assert!(path.exists());
        let loaded = load_or_build_in(dir.path(), &cat).unwrap();
        assert_eq!(built.table(), loaded.table());

        // damaged: truncated file is ignored and rebuilt
        fs::write(&path, b"short").unwrap();
        let rebuilt = load_or_build_in(dir.path(), &cat).unwrap();
        assert_eq!(rebuilt.table(), built.table());
        assert_eq!(
            fs::metadata(&path).unwrap().len() as usize,
            HEADER_LEN + TABLE_LEN
        );

        // damaged: out-of-range class id is rejected
        let mut bytes = fs::read(&path).unwrap();
        bytes[HEADER_LEN] = 200;
        fs::write(&path, &bytes).unwrap();
        let rebuilt = load_or_build_in(dir.path(), &cat).unwrap();
        assert_eq!(rebuilt.table(), built.table());
    }

    #[test]
    fn cache_dir_resolution_prefers_explicit_env() {
        // only checks the no-env fallback shape; env-dependent branches are
        // exercised by the CLI tests where the environment is controlled
        let dir = default_cache_dir();
        assert!(!dir.as_os_str().is_empty());
    }
}
