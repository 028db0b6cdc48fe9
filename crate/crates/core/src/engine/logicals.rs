//! Logical operator pairs: validation and synthesis.

use std::fmt;

use serde::Serialize;

use crate::code::{CodeSpec, LogicalPair};
use crate::engine::group::StabilizerGroup;
use crate::error::CodeError;
use crate::gf2::{self, EchelonBasis};
use crate::pauli::PauliOperator;

/// Exhaustive coset minimization is used up to this many qubits.
pub const EXHAUSTIVE_MAX_QUBITS: usize = 20;
/// ... and up to this many subgroup generators (2^24 products).
pub const EXHAUSTIVE_MAX_GENERATORS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct LogicalSet {
    pub pairs: Vec<LogicalPair>,
    /// True when every representative is a proven minimum over its coset.
    pub certified_minimal: bool,
}

impl LogicalSet {
    pub fn new(pairs: Vec<LogicalPair>) -> Self {
        Self { pairs, certified_minimal: false }
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }
}

/// Which logical operator a violation refers to; `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LogicalRef {
    pub kind: char,
    pub index: usize,
}

impl fmt::Display for LogicalRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}bar{}", self.kind, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LogicalViolation {
    /// Condition (i): the logical anticommutes with a stabilizer.
    AnticommutesWithStabilizer {
        logical: String,
        stabilizer: usize,
        operator: String,
    },
    /// Condition (ii): `X̄_i` and `Z̄_i` commute.
    PairCommutes {
        pair: usize,
    },
    /// Condition (ii): operators from different pairs (or two X̄ / two Z̄)
    /// anticommute.
    CrossAnticommutes {
        first: String,
        second: String,
    },
    /// The operator lies in the stabilizer group (acts trivially).
    InStabilizerGroup {
        logical: String,
        operator: String,
    },
    WrongQubitCount {
        logical: String,
        n: usize,
    },
}

impl fmt::Display for LogicalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AnticommutesWithStabilizer { logical, stabilizer, operator } => {
                write!(f, "{logical} anticommutes with stabilizer {stabilizer} ({operator})")
            }
            Self::PairCommutes { pair } => write!(f, "Xbar{pair} and Zbar{pair} commute"),
            Self::CrossAnticommutes { first, second } => write!(f, "{first} and {second} anticommute"),
            Self::InStabilizerGroup { logical, operator } => {
                write!(f, "{logical} = {operator} is in the stabilizer group")
            }
            Self::WrongQubitCount { logical, n } => write!(f, "{logical} acts on {n} qubits"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct LogicalReport {
    pub violations: Vec<LogicalViolation>,
}

impl LogicalReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks conditions (i) and (ii) for every pair and flags degenerate
/// (in-group) logicals. An empty report means the set is valid.
pub fn verify_logical_set(code: &CodeSpec, pairs: &[LogicalPair]) -> LogicalReport {
    let group = StabilizerGroup::new(code);
    let mut violations = Vec::new();
    let ops: Vec<(LogicalRef, &PauliOperator)> = pairs
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            [(LogicalRef { kind: 'X', index: i + 1 }, &p.x), (LogicalRef { kind: 'Z', index: i + 1 }, &p.z)]
        })
        .collect();

    for (r, op) in &ops {
        if op.n() != code.n {
            violations.push(LogicalViolation::WrongQubitCount { logical: r.to_string(), n: op.n() });
        }
    }
    if !violations.is_empty() {
        return LogicalReport { violations };
    }

    for (r, op) in &ops {
        for (j, s) in code.stabilizers.iter().enumerate() {
            if !op.commutes_unchecked(s) {
                violations.push(LogicalViolation::AnticommutesWithStabilizer {
                    logical: r.to_string(),
                    stabilizer: j + 1,
                    operator: s.to_string(),
                });
            }
        }
    }
    for (a, (ra, opa)) in ops.iter().enumerate() {
        for (rb, opb) in &ops[a + 1..] {
            let commute = opa.commutes_unchecked(opb);
            let same_pair = ra.index == rb.index && ra.kind != rb.kind;
            if same_pair && commute {
                violations.push(LogicalViolation::PairCommutes { pair: ra.index });
            } else if !same_pair && !commute {
                violations.push(LogicalViolation::CrossAnticommutes { first: ra.to_string(), second: rb.to_string() });
            }
        }
    }
    for (r, op) in &ops {
        if group.contains(op) {
            violations.push(LogicalViolation::InStabilizerGroup { logical: r.to_string(), operator: op.to_string() });
        }
    }
    LogicalReport { violations }
}

fn to_operator(n: usize, v: u128) -> PauliOperator {
    PauliOperator::hermitian_from_masks(n, v as u64, (v >> 64) as u64).expect("vector fits the code")
}

fn weight_of(v: u128) -> u32 {
    ((v as u64) | ((v >> 64) as u64)).count_ones()
}

/// Minimum-weight element of `v + span(generators)` by Gray-code enumeration.
fn minimize_exhaustive(v: u128, generators: &[u128]) -> u128 {
    let mut best = v;
    let mut best_w = weight_of(v);
    let mut cur = v;
    for step in 1u64..(1u64 << generators.len()) {
        cur ^= generators[step.trailing_zeros() as usize];
        let w = weight_of(cur);
        if w < best_w {
            best = cur;
            best_w = w;
        }
    }
    best
}

/// Repeatedly applies any single generator that lowers the weight.
fn minimize_greedy(mut v: u128, generators: &[u128]) -> u128 {
    loop {
        let w = weight_of(v);
        match generators.iter().map(|g| v ^ g).find(|c| weight_of(*c) < w) {
            Some(better) => v = better,
            None => return v,
        }
    }
}

/// Synthesizes `k = n − rank` logical pairs by symplectic Gram–Schmidt over
/// the normalizer, then weight-minimizes every representative over its
/// stabilizer coset. For CSS codes the X̄ are X-type and the Z̄ Z-type.
///
/// Deterministic: pivots follow qubit order.
pub fn find_logical_set(code: &CodeSpec) -> Result<LogicalSet, CodeError> {
    if let Some((i, j)) = code.first_anticommuting_pair() {
        return Err(CodeError::NonCommuting(i + 1, j + 1));
    }
    let group = StabilizerGroup::new(code);
    group.require_independent()?;
    let n = code.n;
    let css = code.is_css();
    let stab_vecs: Vec<u128> = code.stabilizers.iter().map(|s| s.symplectic()).collect();

    // Normalizer basis. For CSS codes keep X-type and Z-type parts separate.
    let mut pool: Vec<u128> = if css {
        let z_rows: Vec<u128> = code.stabilizers.iter().filter(|s| s.is_z_type()).map(|s| s.z_mask() as u128).collect();
        let x_rows: Vec<u128> = code.stabilizers.iter().filter(|s| s.is_x_type()).map(|s| s.x_mask() as u128).collect();
        let cols: Vec<u32> = (0..n as u32).collect();
        let xs = gf2::nullspace(&z_rows, &cols);
        let zs = gf2::nullspace(&x_rows, &cols).into_iter().map(|v| v << 64);
        xs.into_iter().chain(zs).collect()
    } else {
        let rows: Vec<u128> = stab_vecs.iter().map(|&s| gf2::symplectic_swap(s)).collect();
        gf2::nullspace(&rows, &gf2::symplectic_columns(n))
    };

    let mut span = EchelonBasis::new();
    for &s in &stab_vecs {
        span.insert(s);
    }
    let mut pairs_raw: Vec<(u128, u128)> = Vec::new();
    loop {
        pool.retain(|&v| !span.contains(v));
        let Some(&v) = pool.first() else { break };
        let Some(wi) = pool.iter().position(|&w| gf2::symplectic_product(v, w)) else {
            // v commutes with the whole normalizer, so it is a stabilizer;
            // unreachable for an independent commuting set.
            return Err(CodeError::InvalidLogicals("normalizer radical exceeds the stabilizer group".into()));
        };
        let w = pool.remove(wi);
        pool.remove(0);
        span.insert(v);
        span.insert(w);
        for u in &mut pool {
            let mut nu = *u;
            if gf2::symplectic_product(*u, w) {
                nu ^= v;
            }
            if gf2::symplectic_product(*u, v) {
                nu ^= w;
            }
            *u = nu;
        }
        pairs_raw.push((v, w));
    }

    let x_gens: Vec<u128> = code.stabilizers.iter().filter(|s| s.is_x_type()).map(|s| s.symplectic()).collect();
    let z_gens: Vec<u128> = code.stabilizers.iter().filter(|s| s.is_z_type()).map(|s| s.symplectic()).collect();
    let coset_gens = |v: u128| -> &[u128] {
        if !css {
            &stab_vecs
        } else if v >> 64 == 0 {
            &x_gens
        } else {
            &z_gens
        }
    };
    let mut certified = true;
    let mut minimize = |v: u128| -> u128 {
        let gens = coset_gens(v);
        if n <= EXHAUSTIVE_MAX_QUBITS && gens.len() <= EXHAUSTIVE_MAX_GENERATORS {
            minimize_exhaustive(v, gens)
        } else {
            certified = false;
            minimize_greedy(v, gens)
        }
    };
    let pairs: Vec<LogicalPair> = pairs_raw
        .into_iter()
        .map(|(v, w)| {
            let (v, w) = (minimize(v), minimize(w));
            LogicalPair::new(to_operator(n, v), to_operator(n, w))
        })
        .collect();

    let report = verify_logical_set(code, &pairs);
    if !report.is_valid() {
        return Err(CodeError::InvalidLogicals(report.violations[0].to_string()));
    }
    Ok(LogicalSet { pairs, certified_minimal: certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_named, build_unit, golden};

    fn p(s: &str, n: usize) -> PauliOperator {
        PauliOperator::parse(s, n).unwrap()
    }

    #[test]
    fn listed_pairs_are_valid() {
        for (name, _) in golden::ALL {
            let code = build_named(name).unwrap();
            let report = verify_logical_set(&code, code.logical_pairs.as_ref().unwrap());
            assert!(report.is_valid(), "{name}: {:?}", report.violations);
        }
    }

    #[test]
    fn unmerged_shared_z_check_breaks_fifth_pair() {
        let mut code = build_named("two_horizontal").unwrap();
        code.stabilizers[5] = p("Z2Z4Z6", 12);
        let report = verify_logical_set(&code, code.logical_pairs.as_ref().unwrap());
        assert!(report.violations.contains(&LogicalViolation::AnticommutesWithStabilizer {
            logical: "Xbar5".into(),
            stabilizer: 6,
            operator: "Z2Z4Z6".into()
        }));
        assert!(report
            .violations
            .contains(&LogicalViolation::InStabilizerGroup { logical: "Zbar5".into(), operator: "Z2Z4Z6".into() }));
    }

    #[test]
    fn stabilizer_as_logical_is_flagged() {
        let code = build_unit();
        let pairs = [LogicalPair::new(p("X1X3", 6), p("Z1Z3Z5", 6))];
        let report = verify_logical_set(&code, &pairs);
        assert!(report.violations.contains(&LogicalViolation::PairCommutes { pair: 1 }));
        assert!(report
            .violations
            .contains(&LogicalViolation::InStabilizerGroup { logical: "Zbar1".into(), operator: "Z1Z3Z5".into() }));
    }

    #[test]
    fn cross_anticommutation_is_flagged() {
        let code = build_unit();
        let pairs = [LogicalPair::new(p("X1X3", 6), p("Z1Z4Z6", 6)), LogicalPair::new(p("X4X6", 6), p("Z1Z4Z6", 6))];
        let report = verify_logical_set(&code, &pairs);
        assert!(report
            .violations
            .contains(&LogicalViolation::CrossAnticommutes { first: "Xbar1".into(), second: "Zbar2".into() }));
    }

    #[test]
    fn unit_synthesis() {
        let set = find_logical_set(&build_unit()).unwrap();
        assert_eq!(set.k(), 2);
        assert!(set.certified_minimal);
        let found: Vec<(String, String)> = set.pairs.iter().map(|p| (p.x.to_string(), p.z.to_string())).collect();
        assert_eq!(found, [("X1X3".into(), "Z1Z2".into()), ("X3X5".into(), "Z5Z6".into())]);
        // the weight-3 Z1Z4Z6 lies in the same coset as Z1Z2
        let g = StabilizerGroup::new(&build_unit());
        assert!(g.contains(&p("Z1Z4Z6", 6).compose(&p("Z1Z2", 6))));
    }

    #[test]
    fn two_vertical_synthesis() {
        let code = build_named("two_vertical").unwrap();
        let set = find_logical_set(&code).unwrap();
        assert_eq!(set.k(), 3);
        assert!(verify_logical_set(&code, &set.pairs).is_valid());
    }

    #[test]
    fn bare_qubit() {
        let code = CodeSpec::new(1, vec![]).unwrap();
        let set = find_logical_set(&code).unwrap();
        assert_eq!(set.pairs, vec![LogicalPair::new(p("X1", 1), p("Z1", 1))]);
    }

    #[test]
    fn non_css_code() {
        // five-qubit code
        let code = CodeSpec::from_strings(5, &["X1Z2Z3X4", "X2Z3Z4X5", "X1X3Z4Z5", "Z1X2X4Z5"]).unwrap();
        let set = find_logical_set(&code).unwrap();
        assert_eq!(set.k(), 1);
        assert!(verify_logical_set(&code, &set.pairs).is_valid());
        assert_eq!(set.pairs[0].x.weight(), 3);
        assert_eq!(set.pairs[0].z.weight(), 3);
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let code = CodeSpec::from_strings(3, &["Z1Z2", "Z2Z3", "Z1Z3"]).unwrap();
        assert!(matches!(find_logical_set(&code), Err(CodeError::DependentGenerators { rank: 2, count: 3 })));
    }
}
