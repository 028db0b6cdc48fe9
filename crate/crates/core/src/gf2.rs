//! Linear algebra over GF(2) on 128-bit row vectors.

/// Symplectic packing puts X bits at 0..64 and Z bits at 64..128.
#[inline]
pub fn symplectic_swap(v: u128) -> u128 {
    v.rotate_left(64)
}

#[inline]
pub fn symplectic_product(a: u128, b: u128) -> bool {
    (a & symplectic_swap(b)).count_ones() & 1 == 1
}

/// Bit positions used by an n-qubit symplectic vector.
pub fn symplectic_columns(n: usize) -> Vec<u32> {
    (0..n as u32).chain(64..64 + n as u32).collect()
}

/// Incrementally built row-echelon basis; each row has a distinct leading bit.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    // sorted by leading bit, descending
    rows: Vec<u128>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: u128) -> u128 {
        for &r in &self.rows {
            v = v.min(v ^ r);
        }
        v
    }

    pub fn contains(&self, v: u128) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: u128) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let lead = 127 - r.leading_zeros();
        let pos = self.rows.partition_point(|&row| 127 - row.leading_zeros() > lead);
        self.rows.insert(pos, r);
        true
    }
}

pub fn rank(rows: &[u128]) -> usize {
    let mut basis = EchelonBasis::new();
    rows.iter().filter(|&&r| basis.insert(r)).count()
}

/// Rank of rows given as lists of set bit positions below `width`.
pub fn rank_sparse(width: usize, rows: &[Vec<usize>]) -> usize {
    let words = width.div_ceil(64);
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    for row in rows {
        let mut v = vec![0u64; words];
        for &b in row {
            v[b / 64] ^= 1 << (b % 64);
        }
        for (bit, p) in &pivots {
            if v[bit / 64] >> (bit % 64) & 1 == 1 {
                v.iter_mut().zip(p).for_each(|(a, b)| *a ^= b);
            }
        }
        if let Some(w) = v.iter().position(|&x| x != 0) {
            let bit = w * 64 + v[w].trailing_zeros() as usize;
            for (_, p) in pivots.iter_mut() {
                if p[bit / 64] >> (bit % 64) & 1 == 1 {
                    p.iter_mut().zip(&v).for_each(|(a, b)| *a ^= b);
                }
            }
            pivots.push((bit, v));
        }
    }
    pivots.len()
}

/// Basis of `{v supported on cols : parity(v & row) = 0 for every row}`.
///
/// Deterministic: one basis vector per free column, in column order.
pub fn nullspace(rows: &[u128], cols: &[u32]) -> Vec<u128> {
    let mut work: Vec<u128> = rows.to_vec();
    let mut pivots: Vec<(u32, usize)> = Vec::new();
    let mut next = 0;
    for &c in cols {
        let bit = 1u128 << c;
        let Some(found) = (next..work.len()).find(|&i| work[i] & bit != 0) else {
            continue;
        };
        work.swap(next, found);
        let pivot_row = work[next];
        for (i, row) in work.iter_mut().enumerate() {
            if i != next && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        pivots.push((c, next));
        next += 1;
    }
    cols.iter()
        .filter(|c| !pivots.iter().any(|(p, _)| p == *c))
        .map(|&f| {
            let mut v = 1u128 << f;
            for &(p, r) in &pivots {
                if work[r] >> f & 1 == 1 {
                    v |= 1u128 << p;
                }
            }
            v
        })
        .collect()
}
