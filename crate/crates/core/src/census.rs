//! Induced-subgraph census engines.
//!
//! Both engines count, for every catalog class, the vertex 7-subsets of a
//! host whose induced subgraph lies in that class. [`census_subsets`] walks
//! every 7-subset and is the small-host oracle. [`census_extend`] enumerates
//! only *connected* induced 7-vertex subgraphs — every catalog class contains
//! a spanning cycle, so nothing is missed — via rooted extension with
//! exclusive neighborhoods: each connected induced subgraph is generated from
//! exactly one root (its minimum vertex) along exactly one extension path.
//! Classification of a subset is a single table lookup on its 21-bit induced
//! adjacency code.
//!
//! The same enumerator, restricted to subgraphs of maximum induced degree 2,
//! counts chordless cycles for [`count_polygons`].

use crate::classifier::Classifier;
use crate::graph::HostGraph;
use rayon::prelude::*;
use thiserror::Error;

/// Largest host order the subset oracle accepts.
pub const SUBSET_MAX_ORDER: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("subset oracle supports host order ≤ {SUBSET_MAX_ORDER} (got {0})")]
    HostTooLarge(usize),
    #[error("count for catalog id {id} exceeded the 64-bit range")]
    CountOverflow { id: usize },
}

/// Per-class induced-subgraph counts for one host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountVector {
    /// Order of the catalog the classifier was built from (always 7 here).
    pub catalog_order: usize,
    /// Content hash of that catalog.
    pub catalog_hash: [u8; 32],
    /// One count per catalog id.
    pub counts: Vec<u64>,
    pub host_order: usize,
    /// Common degree when the host is regular.
    pub host_degree: Option<usize>,
}

impl CountVector {
    fn new(host: &HostGraph, classifier: &Classifier, counts: Vec<u64>) -> CountVector {
        CountVector {
            catalog_order: 7,
            catalog_hash: *classifier.catalog_hash(),
            counts,
            host_order: host.order(),
            host_degree: host.regular_degree(),
        }
    }

    /// Sum over all classes.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Counts of induced (chordless) cycles by length.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PolygonCounts {
    pub p3: u64,
    pub p4: u64,
    pub p5: u64,
    pub p6: u64,
    pub p7: u64,
}

impl PolygonCounts {
    pub fn as_array(&self) -> [u64; 5] {
        [self.p3, self.p4, self.p5, self.p6, self.p7]
    }
}

/// Bit position of pair `(i, j)`, `i < j < 7`, in the little-endian
/// row-major upper-triangle code ([`crate::graph::SmallGraph::code_index`]).
#[inline(always)]
const fn pair_bit(i: usize, j: usize) -> u32 {
    (i * (13 - i) / 2 + j - i - 1) as u32
}

/// Induced 21-bit code of the current subset from its per-vertex adjacency
/// masks (`adj[j]` bit `i` set iff vertices at positions `i < j` are joined).
#[inline(always)]
fn induced_code(adj: &[u8; 8]) -> u32 {
    let mut code = 0u32;
    let mut j = 1;
    while j < 7 {
        let mut m = adj[j] as u32;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            code |= 1 << pair_bit(i, j);
        }
        j += 1;
    }
    code
}

/// Exact census by enumeration of every 7-subset of the host's vertices.
pub fn census_subsets(
    host: &HostGraph,
    classifier: &Classifier,
) -> Result<CountVector, CensusError> {
    let n = host.order();
    if n > SUBSET_MAX_ORDER {
        return Err(CensusError::HostTooLarge(n));
    }
    let mut counts = vec![0u64; classifier.class_count()];
    if n >= 7 {
        let mut sub = [0u32; 8];
        let mut adj = [0u8; 8];
        subsets_rec(host, classifier, 0, 0, &mut sub, &mut adj, &mut counts);
    }
    Ok(CountVector::new(host, classifier, counts))
}

fn subsets_rec(
    host: &HostGraph,
    classifier: &Classifier,
    start: usize,
    depth: usize,
    sub: &mut [u32; 8],
    adj: &mut [u8; 8],
    counts: &mut [u64],
) {
    if depth == 7 {
        if let Some(id) = classifier.classify_index(induced_code(adj)) {
            // cannot overflow: at most C(64,7) < 2^64 subsets in total
            counts[id] += 1;
        }
        return;
    }
    let n = host.order();
    // leave room for the remaining 7 - depth - 1 picks
    for v in start..=(n - (7 - depth)) {
        let mut mask = 0u8;
        for (i, &u) in sub[..depth].iter().enumerate() {
            mask |= (host.has_edge(u as usize, v) as u8) << i;
        }
        sub[depth] = v as u32;
        adj[depth] = mask;
        subsets_rec(host, classifier, v + 1, depth + 1, sub, adj, counts);
    }
}

/// Scratch state for one rooted extension enumeration.
struct Esu<'a> {
    host: &'a HostGraph,
    words: usize,
    k: usize,
    /// Mask of vertices greater than the current root.
    gt_root: Vec<u64>,
    /// Extension sets, one row of `words` per depth.
    ext: Vec<u64>,
    /// Closed neighborhoods of the current subgraph, one row per depth.
    nbh: Vec<u64>,
    sub: [u32; 8],
    adj: [u8; 8],
    deg: [u8; 8],
    /// Induced-degree bound for pruning; `u8::MAX` disables it.
    degree_cap: u8,
}

impl<'a> Esu<'a> {
    fn new(host: &'a HostGraph, k: usize, degree_cap: u8) -> Esu<'a> {
        let words = host.words();
        Esu {
            host,
            words,
            k,
            gt_root: vec![0; words],
            ext: vec![0; words * k],
            nbh: vec![0; words * k],
            sub: [0; 8],
            adj: [0; 8],
            deg: [0; 8],
            degree_cap,
        }
    }

    /// Runs the enumeration for one root, invoking `f(sub, adj, deg)` at
    /// every generated `k`-subgraph.
    fn run<F: FnMut(&[u32; 8], &[u8; 8], &[u8; 8])>(&mut self, root: usize, f: &mut F) {
        debug_assert!(self.k >= 2);
        self.sub[0] = root as u32;
        self.adj[0] = 0;
        self.deg = [0; 8];
        // vertices strictly greater than root
        for w in 0..self.words {
            self.gt_root[w] = if root / 64 == w {
                !0u64 << (root % 64) << 1
            } else if root / 64 < w {
                !0
            } else {
                0
            };
        }
        let row = self.host.row(root);
        for (w, &bits) in row.iter().enumerate() {
            self.ext[w] = bits & self.gt_root[w];
            self.nbh[w] = bits | ((root / 64 == w) as u64) << (root % 64);
        }
        self.extend(1, f);
    }

    fn extend<F: FnMut(&[u32; 8], &[u8; 8], &[u8; 8])>(&mut self, depth: usize, f: &mut F) {
        if depth == self.k {
            f(&self.sub, &self.adj, &self.deg);
            return;
        }
        let words = self.words;
        let level = (depth - 1) * words;
        let next = depth * words;
        // drain the level's extension set; removal before recursion keeps
        // each vertex from reappearing in any sibling subtree
        'candidates: loop {
            let mut w_vertex = None;
            for w in 0..words {
                let bits = self.ext[level + w];
                if bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    self.ext[level + w] &= bits - 1;
                    w_vertex = Some(w * 64 + b);
                    break;
                }
            }
            let Some(v) = w_vertex else { break };

            let mut mask = 0u8;
            for (i, &u) in self.sub[..depth].iter().enumerate() {
                mask |= (self.host.has_edge(u as usize, v) as u8) << i;
            }
            let vdeg = mask.count_ones() as u8;
            if self.degree_cap != u8::MAX {
                if vdeg > self.degree_cap {
                    continue 'candidates;
                }
                let mut m = mask;
                while m != 0 {
                    let i = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if self.deg[i] + 1 > self.degree_cap {
                        continue 'candidates;
                    }
                }
            }

            self.sub[depth] = v as u32;
            self.adj[depth] = mask;
            self.deg[depth] = vdeg;
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                self.deg[i] += 1;
            }

            let row = self.host.row(v);
            for (w, &bits) in row.iter().enumerate() {
                let cand = bits & !self.nbh[level + w] & self.gt_root[w];
                self.ext[next + w] = self.ext[level + w] | cand;
                self.nbh[next + w] = self.nbh[level + w] | bits;
            }
            self.extend(depth + 1, f);

            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                self.deg[i] -= 1;
            }
        }
    }
}

/// Census of one root's share of the connected-subgraph space.
fn census_root(
    host: &HostGraph,
    classifier: &Classifier,
    root: usize,
) -> Result<Vec<u64>, CensusError> {
    let mut counts = vec![0u64; classifier.class_count()];
    let mut overflow = None;
    let mut esu = Esu::new(host, 7, u8::MAX);
    esu.run(root, &mut |_sub, adj, _deg| {
        if let Some(id) = classifier.classify_index(induced_code(adj)) {
            match counts[id].checked_add(1) {
                Some(c) => counts[id] = c,
                None => overflow = Some(id),
            }
        }
    });
    match overflow {
        Some(id) => Err(CensusError::CountOverflow { id }),
        None => Ok(counts),
    }
}

fn merge(
    classes: usize,
    partials: impl IntoIterator<Item = Result<Vec<u64>, CensusError>>,
) -> Result<Vec<u64>, CensusError> {
    let mut total = vec![0u64; classes];
    for partial in partials {
        for (id, (t, p)) in total.iter_mut().zip(partial?).enumerate() {
            *t = t.checked_add(p).ok_or(CensusError::CountOverflow { id })?;
        }
    }
    Ok(total)
}

/// Census by connected extension, parallel over roots on the current rayon
/// pool. Identical output to [`census_subsets`] wherever both run.
pub fn census_extend(
    host: &HostGraph,
    classifier: &Classifier,
) -> Result<CountVector, CensusError> {
    let classes = classifier.class_count();
    let partials: Vec<Result<Vec<u64>, CensusError>> = (0..host.order())
        .into_par_iter()
        .map(|root| census_root(host, classifier, root))
        .collect();
    Ok(CountVector::new(
        host,
        classifier,
        merge(classes, partials)?,
    ))
}

/// [`census_extend`] on a dedicated pool of `jobs` workers (`jobs ≥ 1`).
/// Output does not depend on the worker count.
pub fn census_extend_jobs(
    host: &HostGraph,
    classifier: &Classifier,
    jobs: usize,
) -> Result<CountVector, CensusError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("worker pool construction");
    pool.install(|| census_extend(host, classifier))
}

/// Counts induced cycles C_3..C_7: vertex subsets inducing a connected
/// 2-regular subgraph. Parallel over roots on the current rayon pool.
pub fn count_polygons(host: &HostGraph) -> PolygonCounts {
    let mut out = PolygonCounts::default();
    let slots: Vec<&mut u64> = vec![
        &mut out.p3,
        &mut out.p4,
        &mut out.p5,
        &mut out.p6,
        &mut out.p7,
    ];
    for (k, slot) in (3usize..=7).zip(slots) {
        *slot = (0..host.order())
            .into_par_iter()
            .map(|root| {
                let mut found = 0u64;
                let mut esu = Esu::new(host, k, 2);
                esu.run(root, &mut |_sub, _adj, deg| {
                    if deg[..k].iter().all(|&d| d == 2) {
                        found += 1;
                    }
                });
                found
            })
            .sum();
    }
    out
}

/// [`count_polygons`] on a dedicated pool of `jobs` workers.
pub fn count_polygons_jobs(host: &HostGraph, jobs: usize) -> PolygonCounts {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("worker pool construction");
    pool.install(|| count_polygons(host))
}
