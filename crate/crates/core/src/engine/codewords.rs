use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::code::{CodeSpec, LogicalPair};
use crate::error::CodeError;
use crate::pauli::PauliOperator;
use crate::state::{PureState, SparseState};

fn apply_sparse(op: &PauliOperator, state: &SparseState) -> SparseState {
    let map: BTreeMap<u64, Complex64> = state
        .terms()
        .iter()
        .map(|&(b, a)| {
            let (t, f) = op.act_on_basis(b);
            (t, f * a)
        })
        .collect();
    SparseState::from_map(state.n(), map)
}

/// Normalized `∏(I + P_i)|0…0⟩`, kept sparse.
pub fn codeword_zero_sparse(code: &CodeSpec) -> Result<SparseState, CodeError> {
    let mut state: BTreeMap<u64, Complex64> = BTreeMap::from([(0u64, Complex64::new(1.0, 0.0))]);
    for p in &code.stabilizers {
        let mut next = state.clone();
        for (&b, &a) in &state {
            let (t, f) = p.act_on_basis(b);
            *next.entry(t).or_default() += f * a;
        }
        next.retain(|_, a| a.norm_sqr() > 1e-24);
        if next.is_empty() {
            return Err(CodeError::SeedAnnihilated);
        }
        state = next;
    }
    let s = SparseState::from_map(code.n, state);
    let norm = s.norm_sqr().sqrt();
    Ok(s.scaled(1.0 / norm))
}

/// Normalized logical `|0…0⟩_L = 𝒩⁻¹ ∏(I + P_i)|0…0⟩`.
pub fn codeword_zero(code: &CodeSpec) -> Result<PureState, CodeError> {
    Ok(codeword_zero_sparse(code)?.to_dense()?)
}

fn check_bits(pairs: &[LogicalPair], bits: &[bool]) -> Result<(), CodeError> {
    if bits.len() != pairs.len() {
        return Err(CodeError::LogicalBitCount { expected: pairs.len(), got: bits.len() });
    }
    Ok(())
}

pub fn logical_basis_state_sparse(
    zero: &SparseState,
    pairs: &[LogicalPair],
    bits: &[bool],
) -> Result<SparseState, CodeError> {
    check_bits(pairs, bits)?;
    let mut s = zero.clone();
    for (pair, _) in pairs.iter().zip(bits).filter(|(_, &b)| b) {
        s = apply_sparse(&pair.x, &s);
    }
    Ok(s)
}

/// `∏_{i : bits[i]} X̄_i |0…0⟩_L`.
pub fn logical_basis_state(code: &CodeSpec, pairs: &[LogicalPair], bits: &[bool]) -> Result<PureState, CodeError> {
    check_bits(pairs, bits)?;
    let zero = codeword_zero_sparse(code)?;
    Ok(logical_basis_state_sparse(&zero, pairs, bits)?.to_dense()?)
}

/// All `2^k` logical basis states; index bit `i` selects `X̄_{i+1}`.
pub fn logical_basis(code: &CodeSpec, pairs: &[LogicalPair]) -> Result<Vec<SparseState>, CodeError> {
    let k = pairs.len();
    if k > 16 {
        return Err(CodeError::TooLarge(format!("2^{k} codewords")));
    }
    let zero = codeword_zero_sparse(code)?;
    (0..1usize << k)
        .map(|idx| {
            let bits: Vec<bool> = (0..k).map(|i| idx >> i & 1 == 1).collect();
            logical_basis_state_sparse(&zero, pairs, &bits)
        })
        .collect()
}
