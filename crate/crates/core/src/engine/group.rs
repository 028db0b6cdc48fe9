use crate::code::CodeSpec;
use crate::error::CodeError;
use crate::gf2::EchelonBasis;
use crate::pauli::PauliOperator;

/// The group generated by a code's stabilizers, with a GF(2) membership test
/// (phases ignored).
#[derive(Debug, Clone)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOperator>,
    basis: EchelonBasis,
}

impl StabilizerGroup {
    pub fn new(code: &CodeSpec) -> Self {
        let mut basis = EchelonBasis::new();
        for s in &code.stabilizers {
            basis.insert(s.symplectic());
        }
        Self { n: code.n, generators: code.stabilizers.clone(), basis }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.generators.len()
    }

    pub fn require_independent(&self) -> Result<(), CodeError> {
        if self.is_independent() {
            Ok(())
        } else {
            Err(CodeError::DependentGenerators { rank: self.rank(), count: self.generators.len() })
        }
    }

    /// Number of encoded qubits, `n - rank`.
    pub fn k(&self) -> usize {
        self.n - self.rank()
    }

    pub fn contains(&self, op: &PauliOperator) -> bool {
        self.basis.contains(op.symplectic())
    }

    pub fn contains_symplectic(&self, v: u128) -> bool {
        self.basis.contains(v)
    }

    /// Bitset of generators anticommuting with `op`.
    pub fn syndrome(&self, op: &PauliOperator) -> u64 {
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.commutes_unchecked(op))
            .fold(0u64, |acc, (i, _)| acc | 1 << i)
    }
}

/// Per-qubit syndromes of single-qubit X and Z errors, so the syndrome of
/// any Pauli is the XOR over its sites.
#[derive(Debug, Clone)]
pub(crate) struct SyndromeTable {
    pub x: Vec<u64>,
    pub z: Vec<u64>,
}

impl SyndromeTable {
    pub fn new(n: usize, stabilizers: &[PauliOperator]) -> Self {
        let mut x = vec![0u64; n];
        let mut z = vec![0u64; n];
        for (i, s) in stabilizers.iter().enumerate() {
            for q in 0..n {
                // X_q anticommutes with a Z on q; Z_q with an X on q.
                if s.z_mask() >> q & 1 == 1 {
                    x[q] |= 1 << i;
                }
                if s.x_mask() >> q & 1 == 1 {
                    z[q] |= 1 << i;
                }
            }
        }
        Self { x, z }
    }

    #[cfg(test)]
    pub fn of_masks(&self, xm: u64, zm: u64) -> u64 {
        let mut syn = 0;
        let mut bits = xm | zm;
        while bits != 0 {
            let q = bits.trailing_zeros() as usize;
            if xm >> q & 1 == 1 {
                syn ^= self.x[q];
            }
            if zm >> q & 1 == 1 {
                syn ^= self.z[q];
            }
            bits &= bits - 1;
        }
        syn
    }
}
