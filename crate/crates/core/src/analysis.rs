//! Index distributions, entropies, and the overhead bounds.
//!
//! Because the source pattern is uniform over all `U0` patterns, the
//! encoder output is distributed as `P(m) = (U_{m-1} - U_m) / U0`: the
//! distribution is read straight off the decay sequence by counting. It is
//! kept as integer counts over `U0`; only entropies go through floating
//! point.
//!
//! With `E[g] = (1/U0) sum_{m<M} U_m <= q^k`, the entropy of the index is at
//! most that of a geometric distribution with success probability `q^-k`,
//! which is at most `k log2 q + log2 e`. One more bit for integer code
//! lengths gives the overall bound `k log2 q + 1 + log2 e`.

use std::f64::consts::LOG2_E;

use num_rational::Ratio;

use crate::array::CoveringArray;
use crate::codec::{code_for, CodeKind};
use crate::error::{Error, Result};
use crate::params::Params;

/// Exact distribution of the encoder output index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexDistribution {
    counts: Vec<u64>,
    decay: Vec<u64>,
}

impl IndexDistribution {
    /// Number of indices `M`.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `U0`, the common denominator.
    pub fn total(&self) -> u64 {
        self.decay[0]
    }

    /// Patterns mapped to each index, `U_{m-1} - U_m`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Counts widened for the code builders.
    pub fn weights(&self) -> Vec<u128> {
        self.counts.iter().map(|&c| u128::from(c)).collect()
    }

    pub fn decay(&self) -> &[u64] {
        &self.decay
    }

    /// `P(m)` for 1-based `m`, reduced.
    pub fn probability(&self, m: usize) -> Option<Ratio<u64>> {
        let c = *self.counts.get(m.checked_sub(1)?)?;
        Some(Ratio::new(c, self.total()))
    }

    pub fn probabilities(&self) -> Vec<Ratio<u64>> {
        self.counts
            .iter()
            .map(|&c| Ratio::new(c, self.total()))
            .collect()
    }
}

/// `P(m) = (decay[m-1] - decay[m]) / decay[0]`.
///
/// The decay must start positive, decrease strictly, and end at zero.
pub fn index_distribution(decay: &[u64]) -> Result<IndexDistribution> {
    if decay.len() < 2 {
        return Err(Error::MalformedDecay("needs at least U0 and U1".into()));
    }
    if decay[0] == 0 {
        return Err(Error::MalformedDecay("U0 is zero".into()));
    }
    if let Some(i) = decay.windows(2).position(|w| w[1] >= w[0]) {
        return Err(Error::MalformedDecay(format!(
            "not strictly decreasing at index {}",
            i + 1
        )));
    }
    if decay.last() != Some(&0) {
        return Err(Error::MalformedDecay("does not reach zero".into()));
    }
    Ok(IndexDistribution {
        counts: decay.windows(2).map(|w| w[0] - w[1]).collect(),
        decay: decay.to_vec(),
    })
}

/// Shannon entropy in bits.
pub fn entropy(dist: &IndexDistribution) -> f64 {
    entropy_of_weights(&dist.weights(), u128::from(dist.total()))
}

pub(crate) fn entropy_of_weights(weights: &[u128], total: u128) -> f64 {
    let total = total as f64;
    weights
        .iter()
        .filter(|&&w| w > 0)
        .map(|&w| {
            let p = w as f64 / total;
            -p * p.log2()
        })
        .sum()
}

/// `sum m P(m)` evaluated term by term.
pub fn expected_index_direct(dist: &IndexDistribution) -> Ratio<u128> {
    let num: u128 = dist
        .counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as u128 + 1) * u128::from(c))
        .sum();
    Ratio::new(num, u128::from(dist.total()))
}

/// `(1/U0) sum_{m=0}^{M-1} U_m`.
pub fn expected_index_telescoped(dist: &IndexDistribution) -> Ratio<u128> {
    let m = dist.len();
    let num: u128 = dist.decay[..m].iter().map(|&u| u128::from(u)).sum();
    Ratio::new(num, u128::from(dist.total()))
}

/// `E[g]`, exact. Both evaluations must agree.
pub fn expected_index(dist: &IndexDistribution) -> Ratio<u128> {
    let direct = expected_index_direct(dist);
    let telescoped = expected_index_telescoped(dist);
    assert_eq!(direct, telescoped, "summation by parts disagrees");
    telescoped
}

/// Entropy of the geometric distribution with success probability `q^-k`:
/// `k log2 q - (q^k - 1) log2(1 - q^-k)`.
pub fn geometric_entropy(params: &Params) -> f64 {
    let qk = params.message_combinations() as f64;
    params.payload_bits() - (qk - 1.0) * (-(qk.recip())).ln_1p() * LOG2_E
}

/// `k log2 q + 1 + log2 e`.
pub fn theorem_bound(params: &Params) -> f64 {
    params.payload_bits() + 1.0 + LOG2_E
}

/// Bits spent on naming each active user explicitly: `k log2 n`.
pub fn explicit_identity_overhead(params: &Params) -> f64 {
    params.k() as f64 * (params.n() as f64).log2()
}

/// Expected length of one index code.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeLength {
    pub kind: CodeKind,
    pub expected: Ratio<u128>,
    pub bits: f64,
    /// `bits - k log2 q`.
    pub overhead_bits: f64,
}

/// Everything worth reporting about one covering-array codebook.
#[derive(Debug, Clone, PartialEq)]
pub struct OverheadReport {
    pub params: Params,
    pub rows: usize,
    pub entropy_bits: f64,
    pub lengths: Vec<CodeLength>,
    pub expected_index: Ratio<u128>,
    pub theorem_bound_bits: f64,
    pub geo_entropy_bits: f64,
    pub explicit_identity_overhead_bits: f64,
}

impl OverheadReport {
    pub fn length(&self, kind: CodeKind) -> &CodeLength {
        self.lengths
            .iter()
            .find(|l| l.kind == kind)
            .expect("report covers every code kind")
    }

    /// `E[g] <= q^k`, compared exactly.
    pub fn expected_index_within_bound(&self) -> bool {
        self.expected_index <= Ratio::from_integer(u128::from(self.params.message_combinations()))
    }
}

pub(crate) fn ratio_to_f64(r: &Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Builds every code for a complete array and tabulates the results.
pub fn overhead(array: &CoveringArray) -> Result<OverheadReport> {
    let params = *array.params();
    let dist = index_distribution(array.decay())?;
    let weights = dist.weights();
    let total = u128::from(dist.total());
    let lengths = CodeKind::ALL
        .iter()
        .map(|&kind| {
            let code = code_for(kind, &dist)?;
            let expected = code.expected_length(&weights, total);
            let bits = ratio_to_f64(&expected);
            Ok(CodeLength {
                kind,
                expected,
                bits,
                overhead_bits: bits - params.payload_bits(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OverheadReport {
        params,
        rows: array.len(),
        entropy_bits: entropy(&dist),
        lengths,
        expected_index: expected_index(&dist),
        theorem_bound_bits: theorem_bound(&params),
        geo_entropy_bits: geometric_entropy(&params),
        explicit_identity_overhead_bits: explicit_identity_overhead(&params),
    })
}
