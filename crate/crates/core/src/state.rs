//! Dense and sparse state vectors over the computational basis.
//!
//! Basis index bit `q` is the value of qubit `q + 1`, so the ket written
//! `|101000⟩` (qubit 1 leftmost) is index `0b000101`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::StateError;

/// Largest qubit count for which a dense vector is materialized.
pub const MAX_DENSE_QUBITS: usize = 26;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn from_amplitudes(n: usize, amplitudes: Vec<Complex64>) -> Result<Self, StateError> {
        if n > MAX_DENSE_QUBITS {
            return Err(StateError::TooLarge(n));
        }
        if amplitudes.len() != 1usize << n {
            return Err(StateError::BadLength { len: amplitudes.len(), n });
        }
        Ok(Self { n, amplitudes })
    }

    pub fn zeros(n: usize) -> Result<Self, StateError> {
        if n > MAX_DENSE_QUBITS {
            return Err(StateError::TooLarge(n));
        }
        Ok(Self { n, amplitudes: vec![Complex64::new(0.0, 0.0); 1 << n] })
    }

    pub fn basis(n: usize, index: u64) -> Result<Self, StateError> {
        let mut s = Self::zeros(n)?;
        let len = s.amplitudes.len();
        let slot = s.amplitudes.get_mut(index as usize).ok_or(StateError::BadLength { len, n })?;
        *slot = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64, StateError> {
        if self.n != other.n {
            return Err(StateError::DimensionMismatch { op: self.n, state: other.n });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn normalized(mut self) -> Result<Self, StateError> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(StateError::ZeroNorm);
        }
        for a in &mut self.amplitudes {
            *a /= norm;
        }
        Ok(self)
    }

    /// Nonzero amplitudes as `(basis index, amplitude)` pairs.
    pub fn support(&self) -> Vec<(u64, Complex64)> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
            .map(|(b, &a)| (b as u64, a))
            .collect()
    }

    /// Formats the basis label of `index` with qubit 1 leftmost.
    pub fn ket_label(&self, index: u64) -> String {
        (0..self.n).map(|q| if index >> q & 1 == 1 { '1' } else { '0' }).collect()
    }
}

/// State stored as its nonzero amplitudes, sorted by basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    n: usize,
    terms: Vec<(u64, Complex64)>,
}

impl SparseState {
    pub fn basis(n: usize, index: u64) -> Self {
        Self { n, terms: vec![(index, Complex64::new(1.0, 0.0))] }
    }

    pub(crate) fn from_map(n: usize, map: BTreeMap<u64, Complex64>) -> Self {
        let terms = map.into_iter().filter(|(_, a)| a.norm_sqr() > 1e-30).collect();
        Self { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(u64, Complex64)] {
        &self.terms
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        for (_, a) in &mut self.terms {
            *a *= factor;
        }
        self
    }

    pub fn to_dense(&self) -> Result<PureState, StateError> {
        let mut s = PureState::zeros(self.n)?;
        for &(b, a) in &self.terms {
            s.amplitudes[b as usize] = a;
        }
        Ok(s)
    }

    pub fn from_dense(state: &PureState) -> Self {
        Self { n: state.n(), terms: state.support() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_is_checked() {
        assert!(matches!(
            PureState::from_amplitudes(2, vec![Complex64::new(1.0, 0.0); 3]),
            Err(StateError::BadLength { len: 3, n: 2 })
        ));
        assert!(matches!(PureState::zeros(40), Err(StateError::TooLarge(40))));
    }

    #[test]
    fn normalization_and_inner_product() {
        let s = PureState::from_amplitudes(1, vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)])
            .unwrap()
            .normalized()
            .unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
        let ip = s.inner(&PureState::basis(1, 1).unwrap()).unwrap();
        assert!((ip - Complex64::new(0.0, -0.8)).norm() < 1e-15);
        assert_eq!(PureState::zeros(2).unwrap().normalized(), Err(StateError::ZeroNorm));
    }

    #[test]
    fn ket_labels_put_qubit_one_first() {
        let s = PureState::zeros(6).unwrap();
        assert_eq!(s.ket_label(0b000101), "101000");
    }

    #[test]
    fn sparse_dense_round_trip() {
        let s = PureState::basis(3, 5).unwrap();
        let sp = SparseState::from_dense(&s);
        assert_eq!(sp.terms().len(), 1);
        assert_eq!(sp.to_dense().unwrap(), s);
    }
}
