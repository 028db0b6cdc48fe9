//! Stabilizer code descriptions and their JSON form.

use serde::{Deserialize, Serialize};

use crate::error::CodeError;
use crate::lattice::layout::{LatticeLayout, ScaledPoint};
use crate::pauli::PauliOperator;

/// An `[[n, k, d]]` triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

impl CodeParameters {
    pub fn new(n: usize, k: usize, d: usize) -> Self {
        Self { n, k, d }
    }
}

impl std::fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{},{},{}]]", self.n, self.k, self.d)
    }
}

/// A logical operator pair `(X̄, Z̄)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LogicalPair {
    pub x: PauliOperator,
    pub z: PauliOperator,
}

impl LogicalPair {
    pub fn new(x: PauliOperator, z: PauliOperator) -> Self {
        Self { x, z }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    pub n: usize,
    pub stabilizers: Vec<PauliOperator>,
    pub logical_pairs: Option<Vec<LogicalPair>>,
    pub layout: Option<LatticeLayout>,
    pub declared: Option<CodeParameters>,
}

impl CodeSpec {
    pub fn new(n: usize, stabilizers: Vec<PauliOperator>) -> Result<Self, CodeError> {
        if let Some((index, s)) = stabilizers.iter().enumerate().find(|(_, s)| s.n() != n) {
            return Err(CodeError::StabilizerSize { index, got: s.n(), n });
        }
        Ok(Self { n, stabilizers, logical_pairs: None, layout: None, declared: None })
    }

    pub fn from_strings(n: usize, stabilizers: &[&str]) -> Result<Self, CodeError> {
        let ops = stabilizers.iter().map(|s| PauliOperator::parse(s, n)).collect::<Result<Vec<_>, _>>()?;
        Self::new(n, ops)
    }

    pub fn with_logical_pairs(mut self, pairs: Vec<LogicalPair>) -> Result<Self, CodeError> {
        for p in &pairs {
            for op in [p.x, p.z] {
                if op.n() != self.n {
                    return Err(CodeError::InvalidLogicals(format!("{op} acts on {} qubits", op.n())));
                }
            }
        }
        self.logical_pairs = Some(pairs);
        Ok(self)
    }

    pub fn with_declared(mut self, declared: CodeParameters) -> Self {
        self.declared = Some(declared);
        self
    }

    pub fn with_layout(mut self, layout: LatticeLayout) -> Self {
        self.layout = Some(layout);
        self
    }

    pub fn m(&self) -> usize {
        self.stabilizers.len()
    }

    /// First anticommuting stabilizer pair, if any.
    pub fn first_anticommuting_pair(&self) -> Option<(usize, usize)> {
        let s = &self.stabilizers;
        (0..s.len()).flat_map(|i| (i + 1..s.len()).map(move |j| (i, j))).find(|&(i, j)| !s[i].commutes_unchecked(&s[j]))
    }

    pub fn all_commute(&self) -> bool {
        self.first_anticommuting_pair().is_none()
    }

    /// Every generator is purely X-type or purely Z-type.
    pub fn is_css(&self) -> bool {
        self.stabilizers.iter().all(|s| s.is_x_type() || s.is_z_type())
    }

    pub fn to_json_value(&self) -> CodeSpecJson {
        CodeSpecJson {
            n: self.n,
            stabilizers: self.stabilizers.iter().map(ToString::to_string).collect(),
            logical_pairs: self
                .logical_pairs
                .as_ref()
                .map(|ps| ps.iter().map(|p| [p.x.to_string(), p.z.to_string()]).collect()),
            declared: self.declared.map(|d| [d.n, d.k, d.d]),
            layout: self.layout.as_ref().map(LayoutJson::from),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CodeError> {
        let raw: CodeSpecJson = serde_json::from_str(text).map_err(|e| CodeError::Json(e.to_string()))?;
        raw.try_into()
    }
}

/// Serialized form; layout coordinates are exact pairs `(a, b)` meaning
/// `x = a/2`, `y = b·√3/2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeSpecJson {
    pub n: usize,
    pub stabilizers: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logical_pairs: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared: Option<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<LayoutJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub data: Vec<[i64; 2]>,
    pub x_ancilla: Vec<[i64; 2]>,
    pub z_ancilla: Vec<[i64; 2]>,
    /// 0-based data indices per ancilla; recomputed from geometry if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_adjacency: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_adjacency: Option<Vec<Vec<usize>>>,
}

fn pairs(points: &[ScaledPoint]) -> Vec<[i64; 2]> {
    points.iter().map(|p| [p.a, p.b]).collect()
}

fn points(raw: &[[i64; 2]]) -> Vec<ScaledPoint> {
    raw.iter().map(|&[a, b]| ScaledPoint::new(a, b)).collect()
}

impl From<&LatticeLayout> for LayoutJson {
    fn from(l: &LatticeLayout) -> Self {
        Self {
            data: pairs(&l.data),
            x_ancilla: pairs(&l.x_ancilla),
            z_ancilla: pairs(&l.z_ancilla),
            x_adjacency: Some(l.x_adjacency.clone()),
            z_adjacency: Some(l.z_adjacency.clone()),
        }
    }
}

impl TryFrom<CodeSpecJson> for CodeSpec {
    type Error = CodeError;

    fn try_from(raw: CodeSpecJson) -> Result<Self, CodeError> {
        let n = raw.n;
        let stabs: Vec<&str> = raw.stabilizers.iter().map(String::as_str).collect();
        let mut code = CodeSpec::from_strings(n, &stabs)?;
        if let Some(lp) = raw.logical_pairs {
            let pairs = lp
                .iter()
                .map(|[x, z]| Ok(LogicalPair::new(PauliOperator::parse(x, n)?, PauliOperator::parse(z, n)?)))
                .collect::<Result<Vec<_>, CodeError>>()?;
            code = code.with_logical_pairs(pairs)?;
        }
        if let Some([dn, k, d]) = raw.declared {
            code = code.with_declared(CodeParameters::new(dn, k, d));
        }
        if let Some(l) = raw.layout {
            let mut layout = LatticeLayout::from_points(points(&l.data), points(&l.x_ancilla), points(&l.z_ancilla));
            if let (Some(xa), Some(za)) = (l.x_adjacency, l.z_adjacency) {
                let bad = |adj: &[Vec<usize>], anc: usize| adj.len() != anc || adj.iter().flatten().any(|&q| q >= n);
                if bad(&xa, layout.x_ancilla.len()) || bad(&za, layout.z_ancilla.len()) {
                    return Err(CodeError::Json("layout adjacency does not match the ancilla list".into()));
                }
                layout.x_adjacency = xa;
                layout.z_adjacency = za;
            }
            if layout.data.len() != n {
                return Err(CodeError::Json(format!(
                    "layout has {} data coordinates for {n} qubits",
                    layout.data.len()
                )));
            }
            code = code.with_layout(layout);
        }
        Ok(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stabilizer_size_is_checked() {
        let ops = vec![PauliOperator::parse("X1", 2).unwrap(), PauliOperator::parse("X1", 3).unwrap()];
        assert!(matches!(CodeSpec::new(2, ops), Err(CodeError::StabilizerSize { index: 1, got: 3, n: 2 })));
    }

    #[test]
    fn json_minimal_and_malformed() {
        let c = CodeSpec::from_json(r#"{"n": 2, "stabilizers": ["Z1Z2"]}"#).unwrap();
        assert_eq!(c.m(), 1);
        assert!(c.logical_pairs.is_none() && c.declared.is_none());
        assert!(matches!(CodeSpec::from_json("{"), Err(CodeError::Json(_))));
        assert!(CodeSpec::from_json(r#"{"n": 2, "stabilizers": ["Z3"]}"#).is_err());
    }

    #[test]
    fn anticommuting_pair_is_found() {
        let c = CodeSpec::from_strings(2, &["X1", "Z1Z2", "Z1"]).unwrap();
        assert_eq!(c.first_anticommuting_pair(), Some((0, 1)));
        assert!(c.is_css());
    }
}
