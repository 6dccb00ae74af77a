//! Bit-plane coding for `q = 2^r`.
//!
//! Each r-bit message is split into `r` binary planes (plane 0 holds the
//! most significant bit). Every plane is encoded with the same binary
//! covering array, and the `r` plane indices are coded together. Each plane
//! index follows the binary array's index distribution, but the planes share
//! the active set, so the tuple is not distributed as the product of the
//! marginals. The joint code is built from the exact tuple distribution.

use std::collections::HashMap;

use num_rational::Ratio;

use super::prefix::{huffman_lengths, shannon_lengths, BitString, CodeKind, PrefixCode};
use super::{decode_message, encode_index};
use crate::analysis::{index_distribution, IndexDistribution};
use crate::array::CoveringArray;
use crate::combinatorics::ColexSubsets;
use crate::error::{Error, Result};
use crate::params::Params;
use crate::pattern::Pattern;

/// Most joint outcomes `M^r` for which the tuple gets a single Huffman code.
pub const JOINT_OUTCOME_LIMIT: u64 = 1 << 20;

/// Cap on (distinct per-set index profiles) x `M^r` when tabulating the
/// joint distribution.
const JOINT_WORK_LIMIT: u64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq)]
struct JointCode {
    code: PrefixCode,
    weights: Vec<u128>,
    total: u128,
    /// Tuples with positive weight, ascending; codeword `i + 1` is `support[i]`.
    support: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum PlaneCode {
    /// One Huffman code over the tuples that can occur.
    Joint(JointCode),
    /// One Shannon code per plane, concatenated.
    PerPlane(PrefixCode),
}

/// Composite encoder for `q = 2^r` built on a binary covering array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitPlaneCodec {
    params: Params,
    planes: u32,
    binary: CoveringArray,
    distribution: IndexDistribution,
    code: PlaneCode,
}

/// Builds the bit-plane codec for q-ary `params` from a complete binary
/// array with the same `n` and `k`.
pub fn bitwise_scheme(params: &Params, binary: CoveringArray) -> Result<BitPlaneCodec> {
    let q = params.q();
    if !q.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(q));
    }
    let planes = q.trailing_zeros();
    let b = binary.params();
    if b.q() != 2 || b.n() != params.n() || b.k() != params.k() {
        return Err(Error::InvalidParams(format!(
            "binary array has {b}, expected (n={}, k={}, q=2)",
            params.n(),
            params.k()
        )));
    }
    let distribution = index_distribution(binary.decay())?;
    let code = match joint_weights(&binary, planes) {
        Some((weights, total)) => {
            let support: Vec<usize> = (0..weights.len()).filter(|&t| weights[t] > 0).collect();
            let live: Vec<u128> = support.iter().map(|&t| weights[t]).collect();
            PlaneCode::Joint(JointCode {
                code: PrefixCode::from_lengths(CodeKind::Huffman, huffman_lengths(&live)?)?,
                weights,
                total,
                support,
            })
        }
        None => PlaneCode::PerPlane(PrefixCode::from_lengths(
            CodeKind::Shannon,
            shannon_lengths(&distribution.weights(), u128::from(distribution.total()))?,
        )?),
    };
    Ok(BitPlaneCodec {
        params: *params,
        planes,
        binary,
        distribution,
        code,
    })
}

/// For every active set, how many of its `2^k` bit vectors land on each
/// row. Identical profiles are merged and counted.
fn index_profiles(binary: &CoveringArray) -> HashMap<Vec<u32>, u64> {
    let p = binary.params();
    let (n, k, m) = (p.n(), p.k(), binary.len());
    let mut profiles = HashMap::new();
    let mut seen = vec![false; 1 << k];
    let mut sets = ColexSubsets::new(n, k);
    while let Some(set) = sets.current() {
        let mut profile = vec![0u32; m];
        seen.iter_mut().for_each(|s| *s = false);
        for (i, row) in binary.rows().iter().enumerate() {
            let v = set
                .iter()
                .fold(0usize, |acc, &c| acc << 1 | row.symbols()[c] as usize);
            if !seen[v] {
                seen[v] = true;
                profile[i] += 1;
            }
        }
        *profiles.entry(profile).or_insert(0) += 1;
        sets.advance();
    }
    profiles
}

/// Exact weights of the plane-index tuple, in big-endian mixed radix `M`.
/// They sum to the q-ary pattern count. `None` when the tuple space or the
/// tabulation is too large.
fn joint_weights(binary: &CoveringArray, planes: u32) -> Option<(Vec<u128>, u128)> {
    let m = binary.len() as u64;
    let outcomes = m
        .checked_pow(planes)
        .filter(|&o| o <= JOINT_OUTCOME_LIMIT)?;
    let profiles = index_profiles(binary);
    if (profiles.len() as u64).checked_mul(outcomes)? > JOINT_WORK_LIMIT {
        return None;
    }
    let mut weights = vec![0u128; outcomes as usize];
    for (profile, sets) in &profiles {
        let mut product = vec![1u128];
        for _ in 0..planes {
            product = product
                .iter()
                .flat_map(|&w| profile.iter().map(move |&c| w * u128::from(c)))
                .collect();
        }
        for (w, x) in weights.iter_mut().zip(product) {
            *w += u128::from(*sets) * x;
        }
    }
    let total = weights.iter().sum();
    Some((weights, total))
}

impl BitPlaneCodec {
    pub fn planes(&self) -> u32 {
        self.planes
    }

    pub fn binary_array(&self) -> &CoveringArray {
        &self.binary
    }

    /// Distribution of a single plane's index.
    pub fn plane_distribution(&self) -> &IndexDistribution {
        &self.distribution
    }

    /// True when the tuple is coded jointly rather than plane by plane.
    pub fn is_joint(&self) -> bool {
        matches!(self.code, PlaneCode::Joint(..))
    }

    /// Exact distribution of the plane-index tuple as `(weights, total)`,
    /// present when the tuple is coded jointly.
    pub fn joint_distribution(&self) -> Option<(&[u128], u128)> {
        match &self.code {
            PlaneCode::Joint(j) => Some((&j.weights, j.total)),
            PlaneCode::PerPlane(_) => None,
        }
    }

    fn plane_pattern(&self, pattern: &Pattern, plane: u32) -> Result<Pattern> {
        let shift = self.planes - 1 - plane;
        let bits = pattern.messages().iter().map(|&w| w >> shift & 1).collect();
        Pattern::from_columns(self.binary.params(), pattern.columns().to_vec(), bits)
    }

    /// One binary row index per plane, most significant plane first.
    pub fn plane_indices(&self, pattern: &Pattern) -> Result<Vec<usize>> {
        Pattern::from_columns(
            &self.params,
            pattern.columns().to_vec(),
            pattern.messages().to_vec(),
        )?;
        (0..self.planes)
            .map(|plane| encode_index(&self.binary, &self.plane_pattern(pattern, plane)?))
            .collect()
    }

    pub fn encode(&self, pattern: &Pattern) -> Result<BitString> {
        let indices = self.plane_indices(pattern)?;
        let mut out = BitString::new();
        match &self.code {
            PlaneCode::Joint(j) => {
                let m = self.binary.len();
                let tuple = indices.iter().fold(0usize, |acc, &i| acc * m + (i - 1));
                let slot = j.support.binary_search(&tuple).map_err(|_| {
                    Error::InvalidPattern(format!(
                        "plane indices {indices:?} have probability zero"
                    ))
                })?;
                out.push_codeword(j.code.codeword(slot + 1)?);
            }
            PlaneCode::PerPlane(code) => {
                for i in indices {
                    out.push_codeword(code.codeword(i)?);
                }
            }
        }
        Ok(out)
    }

    fn decode_indices(&self, bits: &BitString) -> Result<Vec<usize>> {
        match &self.code {
            PlaneCode::Joint(j) => {
                let mut tuple = j.support[j.code.decode(bits)? - 1];
                let m = self.binary.len();
                let mut indices = vec![0; self.planes as usize];
                for slot in indices.iter_mut().rev() {
                    *slot = tuple % m + 1;
                    tuple /= m;
                }
                Ok(indices)
            }
            PlaneCode::PerPlane(code) => {
                let mut offset = 0;
                let mut indices = Vec::with_capacity(self.planes as usize);
                for _ in 0..self.planes {
                    let (m, used) = code.decode_prefix(bits, offset)?;
                    indices.push(m);
                    offset += used;
                }
                if offset != bits.len() {
                    return Err(Error::InvalidCodeword(format!(
                        "{} trailing bits after the last plane",
                        bits.len() - offset
                    )));
                }
                Ok(indices)
            }
        }
    }

    /// Reassembles the q-ary message at 1-based `position`.
    pub fn decode(&self, bits: &BitString, position: usize) -> Result<u32> {
        self.decode_indices(bits)?
            .into_iter()
            .try_fold(0u32, |acc, m| {
                Ok(acc << 1 | decode_message(&self.binary, m, position)?)
            })
    }

    /// Exact expected frame length in bits.
    pub fn expected_length(&self) -> Ratio<u128> {
        match &self.code {
            PlaneCode::Joint(j) => {
                let live: Vec<u128> = j.support.iter().map(|&t| j.weights[t]).collect();
                j.code.expected_length(&live, j.total)
            }
            PlaneCode::PerPlane(code) => {
                code.expected_length(
                    &self.distribution.weights(),
                    u128::from(self.distribution.total()),
                ) * Ratio::from_integer(u128::from(self.planes))
            }
        }
    }

    /// `k r + 1 + r log2 e`.
    pub fn length_bound(&self) -> f64 {
        let r = f64::from(self.planes);
        self.params.k() as f64 * r + 1.0 + r * std::f64::consts::LOG2_E
    }
}
