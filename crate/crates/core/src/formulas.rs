//! Exact evaluation of the counting identities for srg(n,k,1,2) hosts.
//!
//! Every Hamiltonian 7-vertex subgraph count `h_0..h_18`, and the polygon
//! counts `p_3..p_7`, can be written in terms of `n`, `k`, and two free
//! counts: `n_3` (an order-6 quantity inherited from the smaller-order
//! enumeration) and `h_11`. This module encodes those closed forms over
//! arbitrary-precision rationals — no floating point — together with the
//! parameter feasibility sieve, the `2n_3 ≤ h_11 ≤ 4n_3` bound, integrality
//! checking, and a fitting procedure that tests a measured census against
//! the whole table at once.

use crate::catalog::C7_CLASS_ID;
use crate::census::CountVector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("degree must be at least 3 (got {0})")]
    DegreeTooSmall(u64),
    #[error("no integer host order exists for odd degree {0}")]
    OddDegree(u64),
    #[error("parameters (n={n}, k={k}) violate k(k-2) = 2(n-k-1) with n > k > 2")]
    InvalidParams { n: u64, k: u64 },
    #[error(
        "census host (order {host_n}, regular degree {host_k:?}) does not match \
         parameters (n={n}, k={k})"
    )]
    HostMismatch {
        host_n: usize,
        host_k: Option<usize>,
        n: u64,
        k: u64,
    },
    #[error("census carries {0} classes, the formula table has 19")]
    WrongCensusShape(usize),
}

/// Parameters of a strongly regular graph with λ = 1, μ = 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrgParams {
    pub n: u64,
    pub k: u64,
}

impl SrgParams {
    /// Validates the defining relation `k(k-2) = 2(n-k-1)` and `n > k > 2`.
    pub fn new(n: u64, k: u64) -> Result<SrgParams, FormulaError> {
        if k > 2 && n > k && k * (k - 2) == 2 * (n - k - 1) {
            Ok(SrgParams { n, k })
        } else {
            Err(FormulaError::InvalidParams { n, k })
        }
    }

    /// The unique parameter pair with the given degree.
    pub fn from_k(k: u64) -> Result<SrgParams, FormulaError> {
        Ok(SrgParams { n: n_of_k(k)?, k })
    }

    pub const fn lambda(&self) -> u64 {
        1
    }

    pub const fn mu(&self) -> u64 {
        2
    }
}

/// The two counts the closed forms leave free.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub n3: u64,
    pub h11: u64,
}

/// All 19 subgraph values plus the polygon expressions, exactly evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaTable {
    pub h: [BigRational; 19],
    pub p3: BigRational,
    pub p4: BigRational,
    pub p5: BigRational,
    pub p6_lower: BigRational,
    pub p7_upper: BigRational,
}

/// A formula whose value failed a requirement, with the offending value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub formula: String,
    pub value: BigRational,
}

impl FormulaTable {
    /// Non-integral entries among `h_0..h_18` and `p_3..p_5`, in table order.
    pub fn integrality_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, v) in self.h.iter().enumerate() {
            if !v.is_integer() {
                out.push(Violation {
                    formula: format!("h_{i}"),
                    value: v.clone(),
                });
            }
        }
        for (name, v) in [("p_3", &self.p3), ("p_4", &self.p4), ("p_5", &self.p5)] {
            if !v.is_integer() {
                out.push(Violation {
                    formula: name.to_string(),
                    value: v.clone(),
                });
            }
        }
        out
    }

    /// Negative entries among `h_0..h_18`, in table order. On a genuine host
    /// every count is nonnegative, so these flag falsified identities.
    pub fn negative_entries(&self) -> Vec<Violation> {
        self.h
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_negative())
            .map(|(i, v)| Violation {
                formula: format!("h_{i}"),
                value: v.clone(),
            })
            .collect()
    }
}

/// Host order forced by the degree: `n = 1 + k + k(k-2)/2`.
pub fn n_of_k(k: u64) -> Result<u64, FormulaError> {
    if k < 3 {
        return Err(FormulaError::DegreeTooSmall(k));
    }
    if !k.is_multiple_of(2) {
        // k(k-2) is odd·odd, so no integer n satisfies the relation
        return Err(FormulaError::OddDegree(k));
    }
    Ok(1 + k + k * (k - 2) / 2)
}

/// All (n, k, 1, 2) with `k ≤ k_max` passing the eigenvalue integrality
/// sieve: `4k - 7` a perfect square `s²` and both eigenvalue multiplicities
/// `[(n-1) ± ((n-1) - 2k)/s] / 2` nonnegative integers.
pub fn feasible_params(k_max: u64) -> Vec<SrgParams> {
    let mut out = Vec::new();
    for k in (4..=k_max).step_by(2) {
        let disc = 4 * k - 7;
        let s = disc.isqrt();
        if s * s != disc {
            continue;
        }
        let n = 1 + k + k * (k - 2) / 2;
        let nm1 = n - 1;
        let diff = nm1 - 2 * k; // nonnegative for k ≥ 4
        if diff % s != 0 || (nm1 + diff / s) % 2 != 0 {
            continue;
        }
        out.push(SrgParams { n, k });
    }
    out
}

fn rat(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn ri(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Evaluates the full table at the given parameters and free variables.
pub fn evaluate_h(params: &SrgParams, fv: &FreeVars) -> FormulaTable {
    let n = rat(params.n);
    let k = rat(params.k);
    let n3 = rat(fv.n3);
    let h11 = rat(fv.h11);

    let km2 = &k - ri(2);
    let km4 = &k - ri(4);
    let km8 = &k - ri(8);
    let nk = &n * &k;
    let base = &nk * &km2; // nk(k-2)
    let base4 = &base * &km4; // nk(k-2)(k-4)
    let q30 = ri(2) * &k * &k - ri(30) * &k + ri(133);
    let q25 = ri(2) * &k * &k - ri(25) * &k + ri(68);
    let q21 = ri(2) * &k * &k - ri(21) * &k + ri(53);

    let h = [
        &base4 * &q30 / ri(14) - ri(10) * &n3 - &h11,
        &base * &q25 / ri(2) + ri(16) * &n3 + ri(3) * &h11 / ri(2),
        &base4 * &km8 + ri(12) * &n3 + ri(5) * &h11 / ri(2),
        base4.clone() - ri(2) * &n3 - &h11 / ri(2),
        base4.clone() - ri(4) * &n3,
        &base4 / ri(2) - &h11 / ri(2),
        base4.clone() - ri(8) * &n3,
        &base4 / ri(2) - ri(3) * &h11 / ri(2),
        ri(2) * &base4 - ri(8) * &n3 - ri(2) * &h11,
        base4.clone() - ri(2) * &n3 - ri(3) * &h11 / ri(2),
        ri(2) * &n3,
        h11.clone(),
        &base / ri(4) - &n3 + &h11 / ri(4),
        &h11 / ri(2),
        ri(4) * &n3,
        ri(2) * &n3,
        &h11 - ri(2) * &n3,
        &base / ri(4) - &n3,
        &n3 - &h11 / ri(4),
    ];

    FormulaTable {
        h,
        p3: &nk / ri(6),
        p4: &base / ri(8),
        p5: &base4 / ri(5),
        p6_lower: &base * &q21 / ri(12),
        p7_upper: &base4 * &q30 / ri(14),
    }
}

/// Exact values of the polygon expressions alone.
pub fn evaluate_p(
    params: &SrgParams,
) -> (
    BigRational,
    BigRational,
    BigRational,
    BigRational,
    BigRational,
) {
    let t = evaluate_h(params, &FreeVars::default());
    (t.p3, t.p4, t.p5, t.p6_lower, t.p7_upper)
}

/// The free-variable bound `2·n_3 ≤ h_11 ≤ 4·n_3`.
pub fn check_bounds(fv: &FreeVars) -> bool {
    let n3 = fv.n3 as u128;
    let h11 = fv.h11 as u128;
    2 * n3 <= h11 && h11 <= 4 * n3
}

/// Integrality violations of the table at the given inputs (empty when every
/// `h_i` and `p_3..p_5` is an integer).
pub fn check_integrality(params: &SrgParams, fv: &FreeVars) -> Vec<Violation> {
    evaluate_h(params, fv).integrality_violations()
}

/// One `(n_3, h_11)` pair that reproduces the measurement, with a bijection
/// witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitCandidate {
    pub free: FreeVars,
    /// `assignment[catalog_id]` = formula index assigned to that class;
    /// the C_7 class is always assigned index 0.
    pub assignment: Vec<usize>,
}

/// Diagnostic for the closest candidate when no exact match exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    /// Candidate the diagnostic refers to; `None` when no candidate passed
    /// the bounds and integrality filters.
    pub free: Option<FreeVars>,
    /// Predicted values with no measured partner, as (formula, value).
    pub unmatched_predicted: Vec<(String, BigRational)>,
    /// Measured counts with no predicted partner.
    pub unmatched_measured: Vec<u64>,
}

/// Outcome of [`fit_and_verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitResult {
    pub matched: bool,
    /// Every candidate that reproduces the measurement exactly.
    pub candidates: Vec<FitCandidate>,
    /// Present iff `matched` is false.
    pub residual: Option<Residual>,
}

impl FitResult {
    /// Fitted free variables of the first matching candidate.
    pub fn fitted(&self) -> Option<FreeVars> {
        self.candidates.first().map(|c| c.free)
    }
}

/// Tests a measured census against the formula table.
///
/// Candidate free variables are drawn from the measurement itself — `n_3`
/// from halved counts (since `h_10 = 2·n_3` must itself be a count) and
/// `h_11` from the counts, plus `(0, 0)` — filtered by [`check_bounds`] and
/// [`check_integrality`]. A candidate matches when the multiset of 19
/// measured counts equals the multiset of predicted values and the measured
/// C_7-class count equals `h_0`.
pub fn fit_and_verify(
    measured: &CountVector,
    params: &SrgParams,
) -> Result<FitResult, FormulaError> {
    if measured.host_order as u64 != params.n || measured.host_degree != Some(params.k as usize) {
        return Err(FormulaError::HostMismatch {
            host_n: measured.host_order,
            host_k: measured.host_degree,
            n: params.n,
            k: params.k,
        });
    }
    if measured.counts.len() != 19 {
        return Err(FormulaError::WrongCensusShape(measured.counts.len()));
    }

    let mut pairs = std::collections::BTreeSet::new();
    pairs.insert((0u64, 0u64));
    for &c in &measured.counts {
        if c % 2 == 0 {
            for &h in &measured.counts {
                pairs.insert((c / 2, h));
            }
        }
    }

    let mut measured_multiset: BTreeMap<BigInt, usize> = BTreeMap::new();
    for &c in &measured.counts {
        *measured_multiset.entry(BigInt::from(c)).or_default() += 1;
    }

    let mut candidates = Vec::new();
    let mut best_residual: Option<(usize, Residual)> = None;
    for (n3, h11) in pairs {
        let fv = FreeVars { n3, h11 };
        if !check_bounds(&fv) {
            continue;
        }
        let table = evaluate_h(params, &fv);
        if !table.integrality_violations().is_empty() {
            continue;
        }
        let predicted: Vec<BigInt> = table.h.iter().map(|v| v.to_integer()).collect();

        let mut remaining = measured_multiset.clone();
        let mut unmatched_predicted = Vec::new();
        for (i, value) in predicted.iter().enumerate() {
            match remaining.get_mut(value) {
                Some(m) if *m > 0 => *m -= 1,
                _ => unmatched_predicted
                    .push((format!("h_{i}"), BigRational::from_integer(value.clone()))),
            }
        }
        let unmatched_measured: Vec<u64> = remaining
            .iter()
            .flat_map(|(v, &m)| {
                let v = u64::try_from(v).expect("measured counts are u64");
                std::iter::repeat_n(v, m)
            })
            .collect();
        let c7_pinned = BigInt::from(measured.counts[C7_CLASS_ID]) == predicted[0];

        if unmatched_predicted.is_empty() && unmatched_measured.is_empty() && c7_pinned {
            candidates.push(FitCandidate {
                assignment: assign(&measured.counts, &predicted),
                free: fv,
            });
        } else {
            let miss = unmatched_predicted.len() + usize::from(!c7_pinned);
            if best_residual.as_ref().is_none_or(|(m, _)| miss < *m) {
                best_residual = Some((
                    miss,
                    Residual {
                        free: Some(fv),
                        unmatched_predicted,
                        unmatched_measured,
                    },
                ));
            }
        }
    }

    let matched = !candidates.is_empty();
    let residual = if matched {
        None
    } else {
        Some(best_residual.map(|(_, r)| r).unwrap_or(Residual {
            free: None,
            unmatched_predicted: Vec::new(),
            unmatched_measured: measured.counts.clone(),
        }))
    };
    Ok(FitResult {
        matched,
        candidates,
        residual,
    })
}

/// Builds a deterministic bijection catalog id → formula index over equal
/// values, pinning the C_7 class to index 0. Only called when the multisets
/// are equal and the pin holds.
fn assign(counts: &[u64], predicted: &[BigInt]) -> Vec<usize> {
    let mut by_value: BTreeMap<&BigInt, Vec<usize>> = BTreeMap::new();
    for (i, v) in predicted.iter().enumerate().rev() {
        by_value.entry(v).or_default().push(i);
    }
    // reserve index 0 for the C_7 class
    let h0 = &predicted[0];
    let slot = by_value.get_mut(h0).expect("h_0 is in the table");
    let pos = slot
        .iter()
        .position(|&i| i == 0)
        .expect("index 0 groups under h_0");
    slot.remove(pos);

    let mut assignment = vec![usize::MAX; counts.len()];
    assignment[C7_CLASS_ID] = 0;
    for (id, &c) in counts.iter().enumerate() {
        if id == C7_CLASS_ID {
            continue;
        }
        let value = BigInt::from(c);
        let slot = by_value.get_mut(&value).expect("multisets are equal");
        assignment[id] = slot.pop().expect("multisets are equal");
    }
    assignment
}
