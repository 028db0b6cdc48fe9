//! n-qubit Pauli operators in the symplectic bit-mask representation.
//!
//! An operator is stored as `i^phase · X^x · Z^z`, where `X^x` is the tensor
//! product of `X` on every qubit whose bit is set in `x`, and likewise for
//! `Z^z`. A `Y` factor on qubit `q` is `i·X_q·Z_q`, so it sets both bits and
//! contributes one unit of phase.
//!
//! Qubits are 1-based in text (`X1X3`) and 0-based in the masks.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{PauliError, StateError};
use crate::state::PureState;

/// Largest qubit count a single mask word can hold.
pub const MAX_QUBITS: usize = 64;

/// `i^k` as a complex number.
pub fn phase_factor(k: u8) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    fn bits(self) -> (bool, bool) {
        match self {
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: u64,
    z: u64,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Result<Self, PauliError> {
        Self::from_masks(n, 0, 0, 0)
    }

    /// Builds an operator from raw masks; `phase` is the exponent of `i`
    /// multiplying `X^x Z^z`.
    pub fn from_masks(n: usize, x: u64, z: u64, phase: u8) -> Result<Self, PauliError> {
        if n > MAX_QUBITS {
            return Err(PauliError::TooManyQubits(n));
        }
        let m = low_mask(n);
        if x & !m != 0 || z & !m != 0 {
            return Err(PauliError::MaskOutOfRange(n));
        }
        Ok(Self { n, x, z, phase: phase & 3 })
    }

    /// The Hermitian, sign-free operator with the given support pattern
    /// (each site is X, Y or Z according to its bits).
    pub fn hermitian_from_masks(n: usize, x: u64, z: u64) -> Result<Self, PauliError> {
        let y = (x & z).count_ones() as u8;
        Self::from_masks(n, x, z, y & 3)
    }

    pub fn single(letter: Letter, qubit: usize, n: usize) -> Result<Self, PauliError> {
        if qubit >= n {
            return Err(PauliError::IndexOutOfRange { index: qubit + 1, n });
        }
        let (bx, bz) = letter.bits();
        let bit = 1u64 << qubit;
        Self::hermitian_from_masks(n, if bx { bit } else { 0 }, if bz { bit } else { 0 })
    }

    /// Pure X-type operator on the given 0-based qubits.
    pub fn x_on(n: usize, qubits: &[usize]) -> Result<Self, PauliError> {
        Self::from_masks(n, mask_of(n, qubits)?, 0, 0)
    }

    /// Pure Z-type operator on the given 0-based qubits.
    pub fn z_on(n: usize, qubits: &[usize]) -> Result<Self, PauliError> {
        Self::from_masks(n, 0, mask_of(n, qubits)?, 0)
    }

    /// Parses the `X1X2Y3Z4` grammar. An optional leading `+`, `-`, `i` or
    /// `-i` sets the overall sign, so every operator round-trips through
    /// [`Display`](fmt::Display).
    pub fn parse(text: &str, n: usize) -> Result<Self, PauliError> {
        if n > MAX_QUBITS {
            return Err(PauliError::TooManyQubits(n));
        }
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut sign = 0u8;
        if bytes.first() == Some(&b'+') {
            pos = 1;
        } else if bytes.first() == Some(&b'-') {
            sign = 2;
            pos = 1;
        }
        if bytes.get(pos) == Some(&b'i') {
            sign += 1;
            pos += 1;
        }
        let (mut x, mut z, mut seen) = (0u64, 0u64, 0u64);
        let mut y_count = 0u8;
        while pos < bytes.len() {
            let c = text[pos..].chars().next().unwrap_or('?');
            let letter = match c {
                'X' => Letter::X,
                'Y' => Letter::Y,
                'Z' => Letter::Z,
                other => return Err(PauliError::UnknownLetter(other)),
            };
            let start = pos + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end == start {
                return Err(PauliError::Malformed(start));
            }
            let index: usize = text[start..end].parse().map_err(|_| PauliError::Malformed(start))?;
            if index == 0 || index > n {
                return Err(PauliError::IndexOutOfRange { index, n });
            }
            let bit = 1u64 << (index - 1);
            if seen & bit != 0 {
                return Err(PauliError::DuplicateIndex(index));
            }
            seen |= bit;
            let (bx, bz) = letter.bits();
            if bx {
                x |= bit;
            }
            if bz {
                z |= bit;
            }
            if letter == Letter::Y {
                y_count += 1;
            }
            pos = end;
        }
        Ok(Self { n, x, z, phase: (sign + y_count) & 3 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Exponent `k` in `i^k · X^x Z^z`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// Exponent `k` such that the operator equals `i^k` times the product of
    /// its letters (X, Y, Z per site, with `Y` the Hermitian Pauli).
    pub fn sign_exponent(&self) -> u8 {
        (self.phase + 4 - ((self.x & self.z).count_ones() % 4) as u8) & 3
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0 && self.phase == 0
    }

    pub fn is_hermitian(&self) -> bool {
        self.sign_exponent().is_multiple_of(2)
    }

    pub fn is_x_type(&self) -> bool {
        self.z == 0
    }

    pub fn is_z_type(&self) -> bool {
        self.x == 0
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    /// Same letters, sign stripped (Hermitian with `+1` sign).
    pub fn unsigned(&self) -> Self {
        Self { phase: ((self.x & self.z).count_ones() & 3) as u8, ..*self }
    }

    pub fn with_phase(&self, phase: u8) -> Self {
        Self { phase: phase & 3, ..*self }
    }

    /// Packs the masks as `x | z << 64`.
    pub fn symplectic(&self) -> u128 {
        self.x as u128 | ((self.z as u128) << 64)
    }

    pub fn letter_at(&self, qubit: usize) -> Option<Letter> {
        let bx = self.x >> qubit & 1 == 1;
        let bz = self.z >> qubit & 1 == 1;
        match (bx, bz) {
            (true, false) => Some(Letter::X),
            (true, true) => Some(Letter::Y),
            (false, true) => Some(Letter::Z),
            (false, false) => None,
        }
    }

    /// Exact group product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        if self.n != other.n {
            return Err(PauliError::QubitCountMismatch(self.n, other.n));
        }
        Ok(self.compose(other))
    }

    /// Product without the qubit-count check; callers guarantee equal `n`.
    #[inline]
    pub(crate) fn compose(&self, other: &Self) -> Self {
        // X^a Z^b X^c Z^d = (-1)^{|b & c|} X^{a^c} Z^{b^d}
        let swap = ((self.z & other.x).count_ones() & 1) as u8 * 2;
        Self { n: self.n, x: self.x ^ other.x, z: self.z ^ other.z, phase: (self.phase + other.phase + swap) & 3 }
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        if self.n != other.n {
            return Err(PauliError::QubitCountMismatch(self.n, other.n));
        }
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// Amplitude factor and target index when acting on basis state `b`.
    #[inline]
    pub fn act_on_basis(&self, b: u64) -> (u64, Complex64) {
        let sign = ((self.z & b).count_ones() & 1) as u8 * 2;
        (b ^ self.x, phase_factor(self.phase + sign))
    }

    /// Returns `self |state⟩`.
    pub fn apply(&self, state: &PureState) -> Result<PureState, StateError> {
        if self.n != state.n() {
            return Err(StateError::DimensionMismatch { op: self.n, state: state.n() });
        }
        let amps = state.amplitudes();
        let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
        for (b, &a) in amps.iter().enumerate() {
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            let (target, factor) = self.act_on_basis(b as u64);
            out[target as usize] = factor * a;
        }
        PureState::from_amplitudes(self.n, out)
    }
}

fn mask_of(n: usize, qubits: &[usize]) -> Result<u64, PauliError> {
    let mut m = 0u64;
    for &q in qubits {
        if q >= n {
            return Err(PauliError::IndexOutOfRange { index: q + 1, n });
        }
        m |= 1 << q;
    }
    Ok(m)
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.sign_exponent() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        })?;
        for q in 0..self.n {
            if let Some(l) = self.letter_at(q) {
                write!(f, "{:?}{}", l, q + 1)?;
            }
        }
        Ok(())
    }
}

/// Parses `"<n>:<operator>"`, e.g. `"6:X1X3"`.
impl FromStr for PauliOperator {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, body) = s.split_once(':').ok_or(PauliError::Malformed(0))?;
        let n = n.trim().parse().map_err(|_| PauliError::Malformed(0))?;
        Self::parse(body.trim(), n)
    }
}

impl serde::Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
