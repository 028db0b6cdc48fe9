//! Constructions of the rhombus-tile code family.
//!
//! Every structure here is a stack of columns of unit cells. A column of
//! `h` cells has `2h + 1` rows of two data qubits; cell `j` spans rows
//! `2j..=2j+2`. Qubits are numbered column by column, bottom to top, left
//! qubit before right, which matches the reference numbering of the four
//! small structures.
//!
//! Stabilizers come from replicating the unit and merging the two copies that
//! sit on a shared ancilla into a single operator on the union of their
//! supports:
//!
//! * inside a column, the top X-check of cell `j` and the bottom X-check of
//!   cell `j+1` merge into a weight-6 check;
//! * across columns, the right Z-check of cell `j` in column `c` and the left
//!   Z-check of cell `j` in column `c+1` merge into a weight-6 check.
//!
//! The rule reproduces each of the four listed structures exactly.

pub mod golden;
pub mod layout;

use std::str::FromStr;

use crate::code::{CodeParameters, CodeSpec, LogicalPair};
use crate::error::CodeError;
use crate::gf2;
use crate::pauli::PauliOperator;

pub use layout::{column_layout, LatticeLayout, ScaledPoint};

/// Closed-form size of a family member: data qubits, ancillae, logical
/// qubits and predicted distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParameters {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub d: usize,
}

impl FamilyParameters {
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedCode {
    Unit,
    TwoHorizontal,
    TwoVertical,
    Grid2x2,
}

impl NamedCode {
    pub fn name(self) -> &'static str {
        match self {
            NamedCode::Unit => "unit",
            NamedCode::TwoHorizontal => "two_horizontal",
            NamedCode::TwoVertical => "two_vertical",
            NamedCode::Grid2x2 => "grid_2x2",
        }
    }

    pub fn listing(self) -> &'static golden::Listing {
        match self {
            NamedCode::Unit => &golden::UNIT,
            NamedCode::TwoHorizontal => &golden::TWO_HORIZONTAL,
            NamedCode::TwoVertical => &golden::TWO_VERTICAL,
            NamedCode::Grid2x2 => &golden::GRID_2X2,
        }
    }
}

impl FromStr for NamedCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "unit" => NamedCode::Unit,
            "two_horizontal" => NamedCode::TwoHorizontal,
            "two_vertical" => NamedCode::TwoVertical,
            "grid_2x2" => NamedCode::Grid2x2,
            other => return Err(CodeError::UnknownName(other.to_string())),
        })
    }
}

fn listing_pairs(l: &golden::Listing) -> Result<Vec<LogicalPair>, CodeError> {
    l.logical_pairs
        .iter()
        .map(|(x, z)| Ok(LogicalPair::new(PauliOperator::parse(x, l.n)?, PauliOperator::parse(z, l.n)?)))
        .collect()
}

fn from_listing(l: &golden::Listing) -> Result<CodeSpec, CodeError> {
    let (n, k, d) = l.declared;
    Ok(CodeSpec::from_strings(l.n, l.stabilizers)?
        .with_logical_pairs(listing_pairs(l)?)?
        .with_declared(CodeParameters::new(n, k, d))
        .with_layout(column_layout(l.columns)))
}

/// The six-qubit unit cell, `[[6,2,2]]`.
pub fn build_unit() -> CodeSpec {
    from_listing(&golden::UNIT).expect("unit listing is well formed")
}

/// One of `unit`, `two_horizontal`, `two_vertical`, `grid_2x2`, with its
/// listed stabilizers and logical pairs.
pub fn build_named(name: &str) -> Result<CodeSpec, CodeError> {
    from_listing(name.parse::<NamedCode>()?.listing())
}

/// Qubit count plus X-check and Z-check supports as 0-based qubit lists.
pub type CheckSupports = (usize, Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Check supports of a column stack, X-checks first.
/// Works for any size; see `stack_columns` for the ordering.
pub fn column_stack_checks(heights: &[usize]) -> Result<CheckSupports, CodeError> {
    if heights.is_empty() || heights.contains(&0) {
        return Err(CodeError::InvalidParameter(format!("column heights {heights:?} must be positive")));
    }
    let offsets: Vec<usize> = heights
        .iter()
        .scan(0, |acc, &h| {
            let start = *acc;
            *acc += 2 * (2 * h + 1);
            Some(start)
        })
        .collect();
    let n = offsets.last().unwrap() + 2 * (2 * heights.last().unwrap() + 1);
    let left = |c: usize, row: usize| offsets[c] + 2 * row;
    let right = |c: usize, row: usize| offsets[c] + 2 * row + 1;

    let mut xs = Vec::new();
    for (c, &h) in heights.iter().enumerate() {
        for t in 0..=h {
            let rows = if t == 0 {
                0..=1
            } else if t == h {
                2 * h - 1..=2 * h
            } else {
                2 * t - 1..=2 * t + 1
            };
            xs.push(rows.flat_map(|r| [left(c, r), right(c, r)]).collect());
        }
    }
    let mut zs = Vec::new();
    for (c, &h) in heights.iter().enumerate() {
        for j in 0..h {
            let rows = 2 * j..=2 * j + 2;
            if c == 0 || heights[c - 1] <= j {
                zs.push(rows.clone().map(|r| left(c, r)).collect());
            }
            let mut qubits: Vec<usize> = rows.clone().map(|r| right(c, r)).collect();
            if heights.get(c + 1).is_some_and(|&next| next > j) {
                qubits.extend(rows.map(|r| left(c + 1, r)));
            }
            zs.push(qubits);
        }
    }
    Ok((n, xs, zs))
}

/// `(n, m, k)` of a column stack of any size, with `k` from GF(2) rank.
pub fn column_stack_counts(heights: &[usize]) -> Result<(usize, usize, usize), CodeError> {
    let (n, xs, zs) = column_stack_checks(heights)?;
    let rank = gf2::rank_sparse(n, &xs) + gf2::rank_sparse(n, &zs);
    Ok((n, xs.len() + zs.len(), n - rank))
}

/// Stack of columns of unit cells, bottom-aligned. `heights[c]` is the number
/// of cells in column `c`. When the shape matches one of the named
/// structures its listed logical pairs are attached.
pub fn stack_columns(heights: &[usize]) -> Result<CodeSpec, CodeError> {
    let (n, xs, zs) = column_stack_checks(heights)?;
    if n > crate::pauli::MAX_QUBITS {
        return Err(CodeError::TooLarge(format!("{n} data qubits exceeds 64")));
    }
    let mut stabs = Vec::with_capacity(xs.len() + zs.len());
    for q in &xs {
        stabs.push(PauliOperator::x_on(n, q)?);
    }
    for q in &zs {
        stabs.push(PauliOperator::z_on(n, q)?);
    }
    let mut code = CodeSpec::new(n, stabs)?.with_layout(column_layout(heights));
    if let Some(listing) = golden::for_columns(heights) {
        code = code.with_logical_pairs(listing_pairs(listing)?)?;
    }
    Ok(code)
}

/// `p × p` grid of unit cells, declared `[[2p(2p+1), 2p², 2 + ⌊p/2⌋]]`.
pub fn stack_grid(p: usize) -> Result<CodeSpec, CodeError> {
    let fp = family_parameters(p)?;
    Ok(stack_columns(&vec![p; p])?.with_declared(CodeParameters::new(fp.n, fp.k, fp.d)))
}

/// Closed-form parameters of the `p × p` grid.
pub fn family_parameters(p: usize) -> Result<FamilyParameters, CodeError> {
    if p == 0 {
        return Err(CodeError::InvalidParameter("p must be at least 1".into()));
    }
    Ok(FamilyParameters { n: 2 * p * (2 * p + 1), m: 2 * p * (p + 1), k: 2 * p * p, d: 2 + p / 2 })
}

/// Column heights for an L-shape (or full matrix) built from the two-cell
/// column `R`: `v` extra layers of `R` stacked vertically and `h` extra
/// copies of `R` placed horizontally.
pub fn l_shape_columns(v: usize, h: usize, fill_matrix: bool) -> Vec<usize> {
    let tall = 2 * (v + 1);
    let rest = if fill_matrix { tall } else { 2 };
    std::iter::once(tall).chain(std::iter::repeat_n(rest, h)).collect()
}

/// Closed-form counts for the L-shape / matrix structures.
pub fn l_shape_parameters(v: usize, h: usize, fill_matrix: bool) -> FamilyParameters {
    let extra = if fill_matrix { v * h } else { 0 };
    FamilyParameters {
        n: 10 + 8 * v + 10 * h + 8 * extra,
        m: 7 + 6 * v + 5 * h + 4 * extra,
        k: 3 + 2 * v + 5 * h + 4 * extra,
        d: v + 3,
    }
}

pub fn stack_l_shape(v: usize, h: usize, fill_matrix: bool) -> Result<CodeSpec, CodeError> {
    let fp = l_shape_parameters(v, h, fill_matrix);
    Ok(stack_columns(&l_shape_columns(v, h, fill_matrix))?.with_declared(CodeParameters::new(fp.n, fp.k, fp.d)))
}

/// A buildable structure: `unit`, `two_horizontal`, `two_vertical`,
/// `grid_2x2`, `grid:<p>` or `lshape:<v>,<h>[,matrix]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildTarget {
    Named(NamedCode),
    Grid(usize),
    LShape { v: usize, h: usize, fill_matrix: bool },
}

impl BuildTarget {
    pub fn build(self) -> Result<CodeSpec, CodeError> {
        match self {
            BuildTarget::Named(name) => from_listing(name.listing()),
            BuildTarget::Grid(p) => stack_grid(p),
            BuildTarget::LShape { v, h, fill_matrix } => stack_l_shape(v, h, fill_matrix),
        }
    }
}

impl FromStr for BuildTarget {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |what: &str| CodeError::InvalidParameter(format!("{what} in build target {s:?}"));
        let int = |t: &str| t.trim().parse::<usize>().map_err(|_| bad("expected a non-negative integer"));
        if let Some(rest) = s.strip_prefix("grid:") {
            return Ok(BuildTarget::Grid(int(rest)?));
        }
        if let Some(rest) = s.strip_prefix("lshape:") {
            let parts: Vec<&str> = rest.split(',').collect();
            let fill_matrix = match parts.len() {
                2 => false,
                3 if parts[2].trim() == "matrix" => true,
                _ => return Err(bad("expected <v>,<h>[,matrix]")),
            };
            return Ok(BuildTarget::LShape { v: int(parts[0])?, h: int(parts[1])?, fill_matrix });
        }
        Ok(BuildTarget::Named(s.parse()?))
    }
}

/// Planar coordinates of the `p × p` grid.
pub fn layout_coordinates(p: usize) -> Result<LatticeLayout, CodeError> {
    if p == 0 {
        return Err(CodeError::InvalidParameter("p must be at least 1".into()));
    }
    Ok(column_layout(&vec![p; p]))
}
