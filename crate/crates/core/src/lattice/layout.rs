//! Planar placement of data qubits and ancillae.
//!
//! Coordinates are kept as exact integers `(a, b)` with `x = a/2` and
//! `y = b·√3/2`. In these units the nearest-neighbour distance 1 becomes
//! `Δa² + 3Δb² = 4`, so adjacency is an integer predicate.
//!
//! Column `c` of a stack is centred on `x = 3c` and each unit cell adds
//! `√3` of height. The candidate sites come from the placement rules
//!
//! * X-ancillae at `(±3p, ±q√3)`,
//! * Z-ancillae at `(±3(p+½), ±√3(q+½))`,
//! * data at `(±p, ±q√3)` with `p mod 3 ≠ 0` and at
//!   `(±(2p−1)/2, ±√3(q−½))` with `(2p−1) mod 3 ≠ 0`,
//!
//! restricted to the region covered by the stacked columns.

use std::collections::{BTreeSet, HashMap};

/// Exact planar point: `x = a/2`, `y = b·√3/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScaledPoint {
    pub a: i64,
    pub b: i64,
}

impl ScaledPoint {
    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn x(&self) -> f64 {
        self.a as f64 / 2.0
    }

    pub fn y(&self) -> f64 {
        self.b as f64 * 3f64.sqrt() / 2.0
    }

    pub fn is_adjacent(&self, other: &Self) -> bool {
        let da = self.a - other.a;
        let db = self.b - other.b;
        da * da + 3 * db * db == 4
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeLayout {
    pub data: Vec<ScaledPoint>,
    pub x_ancilla: Vec<ScaledPoint>,
    pub z_ancilla: Vec<ScaledPoint>,
    /// Data-qubit indices (0-based) adjacent to each X-ancilla.
    pub x_adjacency: Vec<Vec<usize>>,
    pub z_adjacency: Vec<Vec<usize>>,
}

impl LatticeLayout {
    pub fn from_points(data: Vec<ScaledPoint>, x_ancilla: Vec<ScaledPoint>, z_ancilla: Vec<ScaledPoint>) -> Self {
        let adj = |anc: &[ScaledPoint]| -> Vec<Vec<usize>> {
            anc.iter()
                .map(|a| data.iter().enumerate().filter(|(_, d)| a.is_adjacent(d)).map(|(i, _)| i).collect())
                .collect()
        };
        let x_adjacency = adj(&x_ancilla);
        let z_adjacency = adj(&z_ancilla);
        Self { data, x_ancilla, z_ancilla, x_adjacency, z_adjacency }
    }

    pub fn with_adjacency(
        data: Vec<ScaledPoint>,
        x_ancilla: Vec<ScaledPoint>,
        z_ancilla: Vec<ScaledPoint>,
        x_adjacency: Vec<Vec<usize>>,
        z_adjacency: Vec<Vec<usize>>,
    ) -> Self {
        Self { data, x_ancilla, z_ancilla, x_adjacency, z_adjacency }
    }

    /// Adjacency lists as qubit bit masks, X-ancillae first.
    pub fn support_masks(&self) -> (Vec<u64>, Vec<u64>) {
        let masks = |adj: &[Vec<usize>]| adj.iter().map(|l| l.iter().fold(0u64, |m, &q| m | 1 << q)).collect();
        (masks(&self.x_adjacency), masks(&self.z_adjacency))
    }
}

fn signed(v: i64) -> [i64; 2] {
    [v, -v]
}

fn x_ancilla_sites(pmax: i64, qmax: i64) -> BTreeSet<ScaledPoint> {
    let mut out = BTreeSet::new();
    for p in 0..=pmax {
        for q in 0..=qmax {
            for a in signed(6 * p) {
                for b in signed(2 * q) {
                    out.insert(ScaledPoint::new(a, b));
                }
            }
        }
    }
    out
}

fn z_ancilla_sites(pmax: i64, qmax: i64) -> BTreeSet<ScaledPoint> {
    let mut out = BTreeSet::new();
    for p in 0..=pmax {
        for q in 0..=qmax {
            for a in signed(6 * p + 3) {
                for b in signed(2 * q + 1) {
                    out.insert(ScaledPoint::new(a, b));
                }
            }
        }
    }
    out
}

fn data_sites(pmax: i64, qmax: i64) -> BTreeSet<ScaledPoint> {
    let mut out = BTreeSet::new();
    for p in 1..=pmax {
        for q in 0..=qmax {
            if p % 3 != 0 {
                for a in signed(2 * p) {
                    for b in signed(2 * q) {
                        out.insert(ScaledPoint::new(a, b));
                    }
                }
            }
            if (2 * p - 1) % 3 != 0 && q >= 1 {
                for a in signed(2 * p - 1) {
                    for b in signed(2 * q - 1) {
                        out.insert(ScaledPoint::new(a, b));
                    }
                }
            }
        }
    }
    out
}

fn in_column(pt: &ScaledPoint, c: usize, h: usize) -> bool {
    let c = c as i64;
    pt.a >= 6 * c - 3 && pt.a <= 6 * c + 3 && pt.b >= 0 && pt.b <= 2 * h as i64
}

/// Column whose region contains `pt`, preferring the leftmost on shared edges.
fn column_of(pt: &ScaledPoint, heights: &[usize]) -> Option<usize> {
    heights.iter().enumerate().position(|(c, &h)| in_column(pt, c, h))
}

/// Z-ancilla positions in stabilizer emission order (see `stack_columns`).
fn z_emission_order(heights: &[usize]) -> Vec<ScaledPoint> {
    let mut out = Vec::new();
    for (c, &h) in heights.iter().enumerate() {
        for j in 0..h {
            let b = 2 * j as i64 + 1;
            if c == 0 || heights[c - 1] <= j {
                out.push(ScaledPoint::new(6 * c as i64 - 3, b));
            }
            out.push(ScaledPoint::new(6 * c as i64 + 3, b));
        }
    }
    out
}

/// Layout of a column stack with the given heights (in unit cells).
pub fn column_layout(heights: &[usize]) -> LatticeLayout {
    let cols = heights.len() as i64;
    let hmax = heights.iter().copied().max().unwrap_or(0) as i64;
    let pmax = 2 * cols + 2;
    let qmax = hmax + 1;
    let inside = |pt: &ScaledPoint| column_of(pt, heights).is_some();

    let mut data: Vec<ScaledPoint> = data_sites(pmax * 3, qmax).into_iter().filter(inside).collect();
    data.sort_by_key(|pt| (column_of(pt, heights), pt.b, pt.a));

    let mut x_anc: Vec<ScaledPoint> = x_ancilla_sites(pmax, qmax).into_iter().filter(inside).collect();
    x_anc.sort_by_key(|pt| (pt.a, pt.b));

    let order: HashMap<ScaledPoint, usize> =
        z_emission_order(heights).into_iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut z_anc: Vec<ScaledPoint> = z_ancilla_sites(pmax, qmax).into_iter().filter(inside).collect();
    z_anc.sort_by_key(|pt| (order.get(pt).copied().unwrap_or(usize::MAX), pt.a, pt.b));

    // An ancilla serves only the data of columns whose region contains it;
    // this cuts the unit-distance link from a tall column's side ancilla to
    // the top row of a shorter neighbour.
    let adj = |anc: &[ScaledPoint]| -> Vec<Vec<usize>> {
        anc.iter()
            .map(|a| {
                data.iter()
                    .enumerate()
                    .filter(|(_, d)| {
                        let c = column_of(d, heights).expect("data lies in a column");
                        a.is_adjacent(d) && in_column(a, c, heights[c])
                    })
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect()
    };
    let (x_adj, z_adj) = (adj(&x_anc), adj(&z_anc));
    LatticeLayout::with_adjacency(data, x_anc, z_anc, x_adj, z_adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_layout_counts_and_sites() {
        let l = column_layout(&[1]);
        assert_eq!(l.data.len(), 6);
        assert_eq!(l.x_ancilla.len() + l.z_ancilla.len(), 4);
        assert!(l.x_ancilla.contains(&ScaledPoint::new(0, 0)));
        // (3/2, √3/2)
        assert!(l.z_ancilla.contains(&ScaledPoint::new(3, 1)));
    }

    #[test]
    fn coordinates_are_distinct() {
        let l = column_layout(&[3, 3, 3]);
        let all: BTreeSet<_> = l.data.iter().chain(&l.x_ancilla).chain(&l.z_ancilla).collect();
        assert_eq!(all.len(), l.data.len() + l.x_ancilla.len() + l.z_ancilla.len());
    }

    #[test]
    fn adjacency_is_unit_distance() {
        let p = ScaledPoint::new(0, 0);
        assert!(p.is_adjacent(&ScaledPoint::new(2, 0)));
        assert!(p.is_adjacent(&ScaledPoint::new(1, 1)));
        assert!(!p.is_adjacent(&ScaledPoint::new(3, 1)));
        let q = ScaledPoint::new(3, 1);
        assert!((q.x() - 1.5).abs() < 1e-15 && (q.y() - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }
}
