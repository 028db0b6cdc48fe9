//! One-shot verification of a code description.

use serde::Serialize;

use crate::code::CodeSpec;
use crate::engine::distance::{distance_kl_oracle, distance_symplectic, DistanceOutcome, KL_MAX_QUBITS};
use crate::engine::group::StabilizerGroup;
use crate::engine::logicals::{verify_logical_set, LogicalViolation};
use crate::error::CodeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub w_max: usize,
    pub kl: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { w_max: 4, kl: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Mismatch,
    Infeasible,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Mismatch => 1,
            Verdict::Infeasible => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub m: usize,
    pub commuting: bool,
    pub rank: usize,
    pub k: usize,
    pub declared: Option<[usize; 3]>,
    pub w_max: usize,
    pub distance: Option<usize>,
    pub witness: Option<String>,
    pub distance_kl: Option<usize>,
    pub witness_kl: Option<String>,
    pub logical_violations: Vec<String>,
    pub mismatches: Vec<String>,
    pub infeasible: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

fn outcome_fields(o: &DistanceOutcome) -> (Option<usize>, Option<String>) {
    (o.distance(), o.witness().map(ToString::to_string))
}

/// Checks commutation, independence, `k`, logical pairs and distance against
/// the declared parameters.
pub fn verify_code(code: &CodeSpec, opts: VerifyOptions) -> VerificationReport {
    let group = StabilizerGroup::new(code);
    let commuting = code.all_commute();
    let mut mismatches = Vec::new();
    let mut infeasible = Vec::new();
    if let Some((i, j)) = code.first_anticommuting_pair() {
        mismatches.push(format!("stabilizers {} and {} anticommute", i + 1, j + 1));
    }
    if !group.is_independent() {
        mismatches.push(format!("stabilizers are dependent: rank {} of {}", group.rank(), code.m()));
    }
    if let Some(d) = code.declared {
        if d.n != code.n {
            mismatches.push(format!("declared n = {} but the code has {}", d.n, code.n));
        }
        if d.k != group.k() {
            mismatches.push(format!("declared k = {} but n - rank = {}", d.k, group.k()));
        }
    }

    let logical_violations: Vec<String> = code
        .logical_pairs
        .as_ref()
        .map(|p| verify_logical_set(code, p).violations.iter().map(LogicalViolation::to_string).collect())
        .unwrap_or_default();
    mismatches.extend(logical_violations.iter().map(|v| format!("logical set: {v}")));

    let (mut distance, mut witness) = (None, None);
    let (mut distance_kl, mut witness_kl) = (None, None);
    if commuting {
        match distance_symplectic(code, opts.w_max) {
            Ok(o) => (distance, witness) = outcome_fields(&o),
            Err(e) => infeasible.push(format!("distance search: {e}")),
        }
        if opts.kl {
            if code.n > KL_MAX_QUBITS {
                infeasible.push(format!("Knill-Laflamme search needs n <= {KL_MAX_QUBITS}, code has {}", code.n));
            } else {
                match distance_kl_oracle(code, opts.w_max) {
                    Ok(o) => (distance_kl, witness_kl) = outcome_fields(&o),
                    Err(CodeError::CodewordsNotOrthonormal(dev)) => {
                        mismatches.push(format!("codewords are not orthonormal (deviation {dev:.3e})"))
                    }
                    Err(e) => infeasible.push(format!("Knill-Laflamme search: {e}")),
                }
                if infeasible.is_empty() && distance_kl != distance {
                    mismatches
                        .push(format!("Knill-Laflamme distance {distance_kl:?} differs from symplectic {distance:?}"));
                }
            }
        }
    }

    if let (Some(d), true) = (code.declared, commuting) {
        match distance {
            Some(found) if found != d.d => mismatches.push(format!("declared d = {} but found {found}", d.d)),
            None if d.d <= opts.w_max && group.k() > 0 => {
                mismatches.push(format!("declared d = {} but no logical of weight <= {}", d.d, opts.w_max))
            }
            None if d.d > opts.w_max => {
                infeasible.push(format!("declared d = {} exceeds the search bound w_max = {}", d.d, opts.w_max))
            }
            _ => {}
        }
    }

    let verdict = if !mismatches.is_empty() {
        Verdict::Mismatch
    } else if !infeasible.is_empty() {
        Verdict::Infeasible
    } else {
        Verdict::Pass
    };
    VerificationReport {
        n: code.n,
        m: code.m(),
        commuting,
        rank: group.rank(),
        k: group.k(),
        declared: code.declared.map(|d| [d.n, d.k, d.d]),
        w_max: opts.w_max,
        distance,
        witness,
        distance_kl,
        witness_kl,
        logical_violations,
        mismatches,
        infeasible,
        verdict,
    }
}
