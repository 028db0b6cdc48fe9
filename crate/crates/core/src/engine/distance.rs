//! Code distance by exhaustive search over low-weight Paulis.
//!
//! Candidates are visited weight by weight. Within a weight, supports come in
//! lexicographic order and, on a fixed support, letters run X < Y < Z with the
//! lowest qubit most significant. Both searches share this order, so they
//! report the same witness, and the parallel scan returns the first hit in
//! sequential order regardless of thread count.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::CodeSpec;
use crate::engine::codewords::logical_basis;
use crate::engine::group::{StabilizerGroup, SyndromeTable};
use crate::engine::logicals::find_logical_set;
use crate::error::CodeError;
use crate::gf2::EchelonBasis;
use crate::pauli::PauliOperator;

/// Largest code accepted by the Knill–Laflamme search.
pub const KL_MAX_QUBITS: usize = 20;
/// Tolerance for the Knill–Laflamme matrix entries.
pub const KL_TOLERANCE: f64 = 1e-10;

const BLOCK: u64 = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DistanceOutcome {
    /// Smallest weight of a nontrivial logical, with the first one found.
    Exact { distance: usize, witness: PauliOperator },
    /// No nontrivial logical of weight `≤ w_max`.
    Exceeds { w_max: usize },
}

impl DistanceOutcome {
    pub fn distance(&self) -> Option<usize> {
        match self {
            Self::Exact { distance, .. } => Some(*distance),
            Self::Exceeds { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&PauliOperator> {
        match self {
            Self::Exact { witness, .. } => Some(witness),
            Self::Exceeds { .. } => None,
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

/// The `rank`-th `w`-subset of `0..n` in lexicographic order.
fn unrank_combination(n: usize, w: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(w);
    let mut next = 0;
    for slot in 0..w {
        loop {
            let rest = binomial((n - next - 1) as u64, (w - slot - 1) as u64);
            if rank < rest {
                break;
            }
            rank -= rest;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

fn advance_combination(c: &mut [usize], n: usize) -> bool {
    let w = c.len();
    for i in (0..w).rev() {
        if c[i] < n - w + i {
            c[i] += 1;
            for j in i + 1..w {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `visit(x_mask, z_mask, letter_syndrome)` for every Pauli on the
/// support `qubits`, in letter order, until it returns `Some`.
fn scan_letters<T>(
    qubits: &[usize],
    table: Option<&SyndromeTable>,
    mut visit: impl FnMut(u64, u64, u64) -> Option<T>,
) -> Option<T> {
    let w = qubits.len();
    let mut digits = vec![0u8; w];
    loop {
        let (mut xm, mut zm, mut syn) = (0u64, 0u64, 0u64);
        for (&q, &d) in qubits.iter().zip(&digits) {
            let bit = 1u64 << q;
            if d <= 1 {
                xm |= bit;
                if let Some(t) = table {
                    syn ^= t.x[q];
                }
            }
            if d >= 1 {
                zm |= bit;
                if let Some(t) = table {
                    syn ^= t.z[q];
                }
            }
        }
        if let Some(found) = visit(xm, zm, syn) {
            return Some(found);
        }
        let mut i = w;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if digits[i] < 2 {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Visits every weight-`w` Pauli in search order and returns the first hit.
fn search_weight<F>(n: usize, w: usize, table: Option<&SyndromeTable>, test: F) -> Option<(u64, u64)>
where
    F: Fn(u64, u64, u64) -> bool + Sync,
{
    let total = binomial(n as u64, w as u64);
    let blocks = total.div_ceil(BLOCK);
    (0..blocks).into_par_iter().find_map_first(|block| {
        let start = block * BLOCK;
        let count = BLOCK.min(total - start);
        let mut support = unrank_combination(n, w, start);
        for i in 0..count {
            if i > 0 {
                advance_combination(&mut support, n);
            }
            let hit = scan_letters(&support, table, |xm, zm, syn| test(xm, zm, syn).then_some((xm, zm)));
            if hit.is_some() {
                return hit;
            }
        }
        None
    })
}

fn independent_generators(code: &CodeSpec) -> Vec<PauliOperator> {
    let mut basis = EchelonBasis::new();
    code.stabilizers.iter().filter(|s| basis.insert(s.symplectic())).copied().collect()
}

fn witness(n: usize, xm: u64, zm: u64) -> PauliOperator {
    PauliOperator::hermitian_from_masks(n, xm, zm).expect("candidate fits the code")
}

/// Minimum weight of a Pauli that commutes with every stabilizer but is not
/// itself in the stabilizer group, searched up to weight `w_max`.
pub fn distance_symplectic(code: &CodeSpec, w_max: usize) -> Result<DistanceOutcome, CodeError> {
    if let Some((i, j)) = code.first_anticommuting_pair() {
        return Err(CodeError::NonCommuting(i + 1, j + 1));
    }
    let n = code.n;
    let group = StabilizerGroup::new(code);
    let table = SyndromeTable::new(n, &independent_generators(code));
    for w in 1..=w_max.min(n) {
        let hit = search_weight(n, w, Some(&table), |xm, zm, syn| {
            syn == 0 && !group.contains_symplectic(xm as u128 | (zm as u128) << 64)
        });
        if let Some((xm, zm)) = hit {
            return Ok(DistanceOutcome::Exact { distance: w, witness: witness(n, xm, zm) });
        }
    }
    Ok(DistanceOutcome::Exceeds { w_max })
}

/// Codewords indexed by basis state: `entries[offsets[b]..offsets[b+1]]`
/// lists `(codeword, amplitude)` pairs supported on `|b⟩`.
struct CodewordIndex {
    offsets: Vec<u32>,
    entries: Vec<(u32, Complex64)>,
    words: Vec<Vec<(u64, Complex64)>>,
}

impl CodewordIndex {
    fn new(n: usize, words: Vec<Vec<(u64, Complex64)>>) -> Self {
        let dim = 1usize << n;
        let mut offsets = vec![0u32; dim + 1];
        for w in &words {
            for &(b, _) in w {
                offsets[b as usize + 1] += 1;
            }
        }
        for i in 0..dim {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut entries = vec![(0u32, Complex64::default()); offsets[dim] as usize];
        for (i, w) in words.iter().enumerate() {
            for &(b, a) in w {
                let slot = &mut fill[b as usize];
                entries[*slot as usize] = (i as u32, a);
                *slot += 1;
            }
        }
        Self { offsets, entries, words }
    }

    fn at(&self, b: u64) -> &[(u32, Complex64)] {
        &self.entries[self.offsets[b as usize] as usize..self.offsets[b as usize + 1] as usize]
    }

    /// Column `j` of `⟨c_i| E |c_j⟩`, with `E` given by its basis action.
    fn column(&self, j: usize, act: impl Fn(u64) -> (u64, Complex64), out: &mut [Complex64]) {
        out.fill(Complex64::default());
        for &(b, aj) in &self.words[j] {
            let (t, f) = act(b);
            for &(i, ai) in self.at(t) {
                out[i as usize] += ai.conj() * f * aj;
            }
        }
    }

    /// Whether `⟨c_i|E|c_j⟩ = C δ_ij` for some constant `C`.
    fn satisfies_kl(&self, act: impl Fn(u64) -> (u64, Complex64) + Copy, col: &mut [Complex64]) -> bool {
        let mut diag: Option<Complex64> = None;
        for j in 0..self.words.len() {
            self.column(j, act, col);
            for (i, &v) in col.iter().enumerate() {
                if i == j {
                    let d0 = *diag.get_or_insert(v);
                    if (v - d0).norm() > KL_TOLERANCE {
                        return false;
                    }
                } else if v.norm() > KL_TOLERANCE {
                    return false;
                }
            }
        }
        true
    }
}

/// Independent distance oracle: the smallest weight of a Pauli `E` violating
/// `⟨c_i|E|c_j⟩ = C_E δ_ij` on the explicit `2^k` codewords. Limited to
/// `n ≤ 20`.
pub fn distance_kl_oracle(code: &CodeSpec, w_max: usize) -> Result<DistanceOutcome, CodeError> {
    let n = code.n;
    if n > KL_MAX_QUBITS {
        return Err(CodeError::TooLarge(format!("Knill-Laflamme search on {n} qubits (limit {KL_MAX_QUBITS})")));
    }
    if let Some((i, j)) = code.first_anticommuting_pair() {
        return Err(CodeError::NonCommuting(i + 1, j + 1));
    }
    let pairs = match &code.logical_pairs {
        Some(p) => p.clone(),
        None => find_logical_set(code)?.pairs,
    };
    let words: Vec<Vec<(u64, Complex64)>> =
        logical_basis(code, &pairs)?.into_iter().map(|s| s.terms().to_vec()).collect();
    let index = CodewordIndex::new(n, words);
    let dim = index.words.len();

    let mut col = vec![Complex64::default(); dim];
    let mut worst = 0f64;
    for j in 0..dim {
        index.column(j, |b| (b, Complex64::new(1.0, 0.0)), &mut col);
        for (i, v) in col.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).norm());
        }
    }
    if worst > KL_TOLERANCE {
        return Err(CodeError::CodewordsNotOrthonormal(worst));
    }

    for w in 1..=w_max.min(n) {
        let hit = search_weight(n, w, None, |xm, zm, _| {
            let e = witness(n, xm, zm);
            let mut col = vec![Complex64::default(); dim];
            !index.satisfies_kl(|b| e.act_on_basis(b), &mut col)
        });
        if let Some((xm, zm)) = hit {
            return Ok(DistanceOutcome::Exact { distance: w, witness: witness(n, xm, zm) });
        }
    }
    Ok(DistanceOutcome::Exceeds { w_max })
}
