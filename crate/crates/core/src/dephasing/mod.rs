//! Gaussian dephasing of an encoded qubit.
//!
//! The noise is diagonal in the computational basis, so a density-matrix
//! element `ρ_ab` only picks up a real decoherence factor `c(a, b)`. Every
//! observable is evaluated as a dephased Pauli expectation directly from the
//! state vector, pairing each `a` with `a ⊕ x_mask`.

pub mod closed_form;
pub mod monte_carlo;
pub mod sweep;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::code::{CodeSpec, LogicalPair};
use crate::engine::codewords::{codeword_zero_sparse, logical_basis_state_sparse};
use crate::engine::logicals::verify_logical_set;
use crate::error::{CodeError, NoiseError, StateError};
use crate::pauli::PauliOperator;
use crate::state::PureState;

pub use closed_form::closed_form;
pub use monte_carlo::{monte_carlo_batch, monte_carlo_oracle, MonteCarloRecord};
pub use sweep::{reconcile_local, run_sweep, sweep_csv, ReconciliationReport, Source, SweepConfig, SweepRow, TimeGrid};

/// Largest code handled by the dephasing engine.
pub const MAX_NOISE_QUBITS: usize = 14;
/// Largest stabilizer count for the code-space operator expansion.
pub const MAX_EXPANSION_STABILIZERS: usize = 16;
/// Imaginary parts above this are reported instead of discarded.
pub const REALNESS_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    /// One field `B(t)` acting on all data qubits.
    Global,
    /// Independent fields `B_i(t)` per data qubit.
    Local,
}

impl NoiseKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NoiseKind::Global => "global",
            NoiseKind::Local => "local",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NoiseKind {
    type Err = NoiseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "global" => Ok(NoiseKind::Global),
            "local" => Ok(NoiseKind::Local),
            other => Err(NoiseError::InvalidModel(format!("unknown noise kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    /// `γ = ⟨B(0)²⟩`, in inverse time units.
    pub gamma: f64,
    /// Multiplier on the decay exponent.
    pub convention: f64,
}

impl NoiseModel {
    pub fn new(kind: NoiseKind, gamma: f64) -> Result<Self, NoiseError> {
        Self::with_convention(kind, gamma, 1.0)
    }

    pub fn with_convention(kind: NoiseKind, gamma: f64, convention: f64) -> Result<Self, NoiseError> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(NoiseError::InvalidModel(format!("gamma must be finite and >= 0, got {gamma}")));
        }
        if !(convention > 0.0 && convention.is_finite()) {
            return Err(NoiseError::InvalidModel(format!("convention must be finite and > 0, got {convention}")));
        }
        Ok(Self { kind, gamma, convention })
    }

    /// Variance of the accumulated phase `∫₀ᵗ B dt′` after the convention
    /// multiplier.
    pub fn phase_variance(&self, t: f64) -> f64 {
        self.convention * self.gamma * t
    }
}

fn check_time(t: f64) -> Result<(), NoiseError> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(NoiseError::NegativeTime(t))
    }
}

/// `m′(b) = 2n′(b) − n`, with `n′` the number of qubits in `|0⟩`.
pub fn magnetization(b: u64, n: usize) -> i64 {
    let ones = (b & crate::pauli::low_mask(n)).count_ones() as i64;
    n as i64 - 2 * ones
}

/// Decay of the coherence between basis states `a` and `b`.
pub fn decoherence_factor(a: u64, b: u64, n: usize, model: &NoiseModel, t: f64) -> f64 {
    let rate = model.phase_variance(t);
    match model.kind {
        NoiseKind::Global => {
            let dm = (magnetization(a, n) - magnetization(b, n)) as f64;
            (-rate * dm * dm / 8.0).exp()
        }
        NoiseKind::Local => (-rate * (a ^ b).count_ones() as f64 / 2.0).exp(),
    }
}

/// `Tr[ρ′(t) · op]` for the dephased state `ρ′`, without forming `ρ′`.
pub fn dephased_pauli_expectation(
    state: &PureState,
    op: &PauliOperator,
    model: &NoiseModel,
    t: f64,
) -> Result<Complex64, NoiseError> {
    check_time(t)?;
    let n = state.n();
    if op.n() != n {
        return Err(StateError::DimensionMismatch { op: op.n(), state: n }.into());
    }
    let amps = state.amplitudes();
    let mut trace = 0.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, &psi_a) in amps.iter().enumerate() {
        let a = a as u64;
        trace += psi_a.norm_sqr() * decoherence_factor(a, a, n, model, t);
        if psi_a.re == 0.0 && psi_a.im == 0.0 {
            continue;
        }
        let (b, f) = op.act_on_basis(a);
        let psi_b = amps[b as usize];
        acc += psi_b.conj() * f * psi_a * decoherence_factor(a, b, n, model, t);
    }
    if (trace - 1.0).abs() > 1e-10 {
        return Err(NoiseError::TraceNotPreserved(trace));
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Every term weighted `2^{−n}`.
    FullSpace,
    /// Every term weighted `2^{−m}`, the true projector.
    Projector,
}

/// Expands `∏(I + P_i)` in listed order into `2^m` weighted Pauli terms.
pub fn code_space_operator(
    code: &CodeSpec,
    normalization: Normalization,
) -> Result<Vec<(f64, PauliOperator)>, CodeError> {
    let m = code.m();
    if m > MAX_EXPANSION_STABILIZERS {
        return Err(CodeError::TooLarge(format!("code-space expansion over {m} stabilizers")));
    }
    let mut terms = vec![PauliOperator::identity(code.n)?];
    for p in &code.stabilizers {
        let with_p: Vec<PauliOperator> = terms.iter().map(|t| t.compose(p)).collect();
        terms.extend(with_p);
    }
    let coef = match normalization {
        Normalization::FullSpace => 0.5f64.powi(code.n as i32),
        Normalization::Projector => 0.5f64.powi(m as i32),
    };
    Ok(terms.into_iter().map(|t| (coef, t)).collect())
}

/// `cos(θ/2)|0_L⟩ + e^{iφ} sin(θ/2)|1_L⟩`.
pub fn prepare_logical_state(theta: f64, phi: f64, zero: &PureState, one: &PureState) -> Result<PureState, StateError> {
    if zero.n() != one.n() {
        return Err(StateError::DimensionMismatch { op: zero.n(), state: one.n() });
    }
    let overlap = zero.inner(one)?.norm();
    let norm_dev = (zero.norm_sqr() - 1.0).abs().max((one.norm_sqr() - 1.0).abs());
    if overlap > 1e-12 || norm_dev > 1e-12 {
        return Err(StateError::NotOrthonormal(overlap.max(norm_dev)));
    }
    let c0 = Complex64::new((theta / 2.0).cos(), 0.0);
    let c1 = Complex64::from_polar((theta / 2.0).sin(), phi);
    let amps = zero.amplitudes().iter().zip(one.amplitudes()).map(|(a, b)| c0 * a + c1 * b).collect();
    PureState::from_amplitudes(zero.n(), amps)
}

/// Logical Bloch coordinates and leakage-weighted expectations at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservableRecord {
    pub t: f64,
    pub r_x: f64,
    pub r_y: f64,
    pub r_z: f64,
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
}

impl ObservableRecord {
    pub const NAMES: [&'static str; 6] = ["r_x", "r_y", "r_z", "p_x", "p_y", "p_z"];

    pub fn from_values(t: f64, v: [f64; 6]) -> Self {
        Self { t, r_x: v[0], r_y: v[1], r_z: v[2], p_x: v[3], p_y: v[4], p_z: v[5] }
    }

    pub fn values(&self) -> [f64; 6] {
        [self.r_x, self.r_y, self.r_z, self.p_x, self.p_y, self.p_z]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values().iter().zip(other.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// One logical qubit of a code: its basis states and the six observables
/// `X̄, Ȳ, Z̄, X̄·P_c, Ȳ·P_c, Z̄·P_c` as weighted Pauli sums.
#[derive(Debug, Clone)]
pub struct LogicalFrame {
    pub n: usize,
    pub zero: PureState,
    pub one: PureState,
    pub observables: [Vec<(f64, PauliOperator)>; 6],
}

impl LogicalFrame {
    /// Frame of pair `pair_index` (0-based); the other logical qubits stay in
    /// `|0⟩_L`. `Ȳ = i·Z̄·X̄`.
    pub fn new(code: &CodeSpec, pairs: &[LogicalPair], pair_index: usize) -> Result<Self, NoiseError> {
        if code.n > MAX_NOISE_QUBITS {
            return Err(CodeError::TooLarge(format!(
                "{} qubits exceeds the dephasing limit {MAX_NOISE_QUBITS}",
                code.n
            ))
            .into());
        }
        let report = verify_logical_set(code, pairs);
        if !report.is_valid() {
            return Err(CodeError::InvalidLogicals(report.violations[0].to_string()).into());
        }
        let pair = pairs.get(pair_index).ok_or_else(|| {
            CodeError::InvalidParameter(format!("pair index {pair_index} out of range for {} pairs", pairs.len()))
        })?;
        let zero_sparse = codeword_zero_sparse(code)?;
        let bits: Vec<bool> = (0..pairs.len()).map(|i| i == pair_index).collect();
        let one = logical_basis_state_sparse(&zero_sparse, pairs, &bits)?.to_dense()?;
        let zero = zero_sparse.to_dense()?;

        let x = pair.x;
        let z = pair.z;
        let y = z.compose(&x).with_phase(z.compose(&x).phase() + 1);
        let pc = code_space_operator(code, Normalization::FullSpace)?;
        let leak = |l: &PauliOperator| pc.iter().map(|(c, term)| (*c, l.compose(term))).collect::<Vec<_>>();
        let observables = [vec![(1.0, x)], vec![(1.0, y)], vec![(1.0, z)], leak(&x), leak(&y), leak(&z)];
        Ok(Self { n: code.n, zero, one, observables })
    }

    pub fn state(&self, theta: f64, phi: f64) -> Result<PureState, StateError> {
        prepare_logical_state(theta, phi, &self.zero, &self.one)
    }

    /// The six observables on `state` after dephasing for time `t`.
    pub fn evaluate(&self, state: &PureState, model: &NoiseModel, t: f64) -> Result<ObservableRecord, NoiseError> {
        let mut values = [0.0; 6];
        for (v, terms) in values.iter_mut().zip(&self.observables) {
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, op) in terms {
                acc += *c * dephased_pauli_expectation(state, op, model, t)?;
            }
            if acc.im.abs() > REALNESS_TOLERANCE {
                return Err(NoiseError::NotReal(acc.im));
            }
            *v = acc.re;
        }
        Ok(ObservableRecord::from_values(t, values))
    }
}

/// Bloch coordinates `r_*` and leakage-weighted expectations `p_*` of the
/// logical state `(θ, φ)` over a time grid.
pub fn bloch_and_leakage(
    code: &CodeSpec,
    pairs: &[LogicalPair],
    pair_index: usize,
    theta: f64,
    phi: f64,
    model: &NoiseModel,
    t_grid: &[f64],
) -> Result<Vec<ObservableRecord>, NoiseError> {
    let frame = LogicalFrame::new(code, pairs, pair_index)?;
    let state = frame.state(theta, phi)?;
    t_grid.iter().map(|&t| frame.evaluate(&state, model, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_unit;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn bell_like(n: usize, a: u64, b: u64) -> PureState {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[a as usize] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        amps[b as usize] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        PureState::from_amplitudes(n, amps).unwrap()
    }

    fn unit_pairs() -> (CodeSpec, Vec<LogicalPair>) {
        let code = build_unit();
        let pairs = code.logical_pairs.clone().unwrap();
        (code, pairs)
    }

    #[test]
    fn magnetization_range() {
        assert_eq!(magnetization(0, 6), 6);
        assert_eq!(magnetization(0b111111, 6), -6);
        assert_eq!(magnetization(0b000101, 6), 2);
    }

    #[test]
    fn decoherence_factor_examples() {
        let g = NoiseModel::new(NoiseKind::Global, 0.7).unwrap();
        let l = NoiseModel::new(NoiseKind::Local, 0.7).unwrap();
        let t = 1.3;
        assert_eq!(decoherence_factor(5, 5, 6, &g, t), 1.0);
        assert_eq!(decoherence_factor(5, 5, 6, &l, t), 1.0);
        // |Δm′| = 4: two qubits flipped the same way
        assert!((decoherence_factor(0, 0b11, 6, &g, t) - (-2.0 * 0.7 * t).exp()).abs() < 1e-15);
        // |Δm′| = 8
        assert!((decoherence_factor(0, 0b1111, 6, &g, t) - (-8.0 * 0.7 * t).exp()).abs() < 1e-15);
        assert!((decoherence_factor(0b01, 0b10, 6, &l, t) - (-0.7 * t).exp()).abs() < 1e-15);
        assert_eq!(decoherence_factor(0b01, 0b10, 6, &g, t), 1.0);
    }

    #[test]
    fn invalid_models() {
        assert!(NoiseModel::new(NoiseKind::Global, -1.0).is_err());
        assert!(NoiseModel::with_convention(NoiseKind::Local, 1.0, 0.0).is_err());
        assert!(NoiseModel::new(NoiseKind::Global, f64::NAN).is_err());
        assert_eq!("local".parse::<NoiseKind>().unwrap(), NoiseKind::Local);
        assert!("both".parse::<NoiseKind>().is_err());
    }

    #[test]
    fn time_zero_is_plain_expectation() {
        let s = bell_like(2, 0b00, 0b11);
        let m = NoiseModel::new(NoiseKind::Global, 3.0).unwrap();
        let xx = PauliOperator::parse("X1X2", 2).unwrap();
        assert!((dephased_pauli_expectation(&s, &xx, &m, 0.0).unwrap() - 1.0).norm() < 1e-15);
        let after = dephased_pauli_expectation(&s, &xx, &m, 0.5).unwrap();
        assert!((after.re - (-2.0 * 3.0 * 0.5f64).exp()).abs() < 1e-15);
        assert!(matches!(dephased_pauli_expectation(&s, &xx, &m, -1.0), Err(NoiseError::NegativeTime(_))));
        let wrong = PauliOperator::parse("X1", 3).unwrap();
        assert!(dephased_pauli_expectation(&s, &wrong, &m, 0.0).is_err());
    }

    #[test]
    fn unnormalized_state_is_rejected() {
        let s = PureState::from_amplitudes(1, vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        let m = NoiseModel::new(NoiseKind::Local, 1.0).unwrap();
        let z = PauliOperator::parse("Z1", 1).unwrap();
        assert!(matches!(dephased_pauli_expectation(&s, &z, &m, 0.0), Err(NoiseError::TraceNotPreserved(_))));
    }

    #[test]
    fn code_space_operator_examples() {
        let (code, _) = unit_pairs();
        let full = code_space_operator(&code, Normalization::FullSpace).unwrap();
        assert_eq!(full.len(), 16);
        assert!(full.iter().all(|(c, _)| *c == 1.0 / 64.0));
        let proj = code_space_operator(&code, Normalization::Projector).unwrap();
        assert!(proj.iter().all(|(c, _)| *c == 1.0 / 16.0));
        let bare = CodeSpec::new(3, vec![]).unwrap();
        let single = code_space_operator(&bare, Normalization::Projector).unwrap();
        assert_eq!(single, vec![(1.0, PauliOperator::identity(3).unwrap())]);
    }

    #[test]
    fn prepare_examples() {
        let zero = PureState::basis(1, 0).unwrap();
        let one = PureState::basis(1, 1).unwrap();
        assert_eq!(prepare_logical_state(0.0, 1.2, &zero, &one).unwrap(), zero);
        let s = prepare_logical_state(PI, 0.0, &zero, &one).unwrap();
        assert!(s.amplitudes()[0].norm() < 1e-16 && (s.amplitudes()[1] - 1.0).norm() < 1e-15);
        let s = prepare_logical_state(FRAC_PI_2, FRAC_PI_2, &zero, &one).unwrap();
        let a = s.amplitudes();
        assert!((a[0].norm() - a[1].norm()).abs() < 1e-15);
        assert!((a[1] / a[0] - Complex64::i()).norm() < 1e-15);
        assert!(matches!(prepare_logical_state(1.0, 0.0, &zero, &zero), Err(StateError::NotOrthonormal(_))));
    }

    #[test]
    fn noiseless_bloch_vector_signs() {
        let (code, pairs) = unit_pairs();
        let m = NoiseModel::new(NoiseKind::Global, 0.0).unwrap();
        for (theta, phi) in [(0.3, 0.0), (1.1, 2.0), (FRAC_PI_2, 4.5)] {
            let r = bloch_and_leakage(&code, &pairs, 0, theta, phi, &m, &[0.0]).unwrap()[0];
            assert!((r.r_x - theta.sin() * phi.cos()).abs() < 1e-14);
            assert!((r.r_y + theta.sin() * phi.sin()).abs() < 1e-14);
            assert!((r.r_z - theta.cos()).abs() < 1e-14);
            assert!((r.p_x - r.r_x / 4.0).abs() < 1e-14);
            assert!((r.p_z - r.r_z / 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn global_x_decay_example() {
        let (code, pairs) = unit_pairs();
        let m = NoiseModel::new(NoiseKind::Global, 0.8).unwrap();
        let ts = [0.0, 0.25, 1.0, 3.0];
        let rs = bloch_and_leakage(&code, &pairs, 0, FRAC_PI_2, 0.0, &m, &ts).unwrap();
        for r in rs {
            assert!((r.r_x - 0.5 * (1.0 + (-2.0 * 0.8 * r.t).exp())).abs() < 1e-14);
        }
    }

    #[test]
    fn frame_rejects_bad_input() {
        let (code, pairs) = unit_pairs();
        assert!(LogicalFrame::new(&code, &pairs, 2).is_err());
        let swapped = [LogicalPair::new(pairs[0].z, pairs[0].x)];
        assert!(LogicalFrame::new(&code, &[pairs[0], swapped[0]], 0).is_err());
    }
}
