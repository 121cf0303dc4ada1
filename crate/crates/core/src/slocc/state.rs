use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::GaussianRational;
use crate::error::{Error, Result};
use crate::matspace::{Matrix, MatrixSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Amplitude {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: GaussianRational,
}

/// A pure state on `H_A ⊗ H_B ⊗ H_C`, stored sparsely and not normalized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripartiteState {
    dims: [usize; 3],
    amplitudes: Vec<Amplitude>,
    /// Symbolic overall factor such as `sqrt(2/(d(d-1)))`, kept out of the
    /// exact arithmetic.
    #[serde(skip_serializing_if = "Option::is_none")]
    normalization: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    dims: Vec<usize>,
    amplitudes: Vec<Amplitude>,
    #[serde(default)]
    normalization: Option<String>,
}

impl TripartiteState {
    /// Validates indices and duplicates; explicit zero amplitudes are dropped.
    pub fn new(dims: [usize; 3], amplitudes: Vec<Amplitude>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::InvalidState(format!("dims must be positive, got {dims:?}")));
        }
        let mut seen = BTreeSet::new();
        for amp in &amplitudes {
            let idx = [amp.a, amp.b, amp.c];
            if let Some(k) = (0..3).find(|&k| idx[k] >= dims[k]) {
                return Err(Error::InvalidState(format!(
                    "index {:?} out of range for dims {dims:?} (axis {k})",
                    idx
                )));
            }
            if !seen.insert(idx) {
                return Err(Error::InvalidState(format!("duplicate amplitude at {idx:?}")));
            }
        }
        let mut amplitudes: Vec<Amplitude> = amplitudes.into_iter().filter(|a| !a.value.is_zero()).collect();
        if amplitudes.is_empty() {
            return Err(Error::InvalidState("state has no nonzero amplitude".into()));
        }
        amplitudes.sort_by_key(|a| (a.a, a.b, a.c));
        Ok(Self { dims, amplitudes, normalization: None })
    }

    pub fn from_triples(dims: [usize; 3], entries: &[(usize, usize, usize, i64)]) -> Result<Self> {
        let amps = entries
            .iter()
            .map(|&(a, b, c, v)| Amplitude { a, b, c, value: GaussianRational::from_int(v) })
            .collect();
        Self::new(dims, amps)
    }

    pub fn with_normalization(mut self, note: impl Into<String>) -> Self {
        self.normalization = Some(note.into());
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawState = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let dims: [usize; 3] = raw
            .dims
            .as_slice()
            .try_into()
            .map_err(|_| Error::Parse(format!("dims must have 3 entries, got {}", raw.dims.len())))?;
        let mut s = Self::new(dims, raw.amplitudes)?;
        s.normalization = raw.normalization;
        Ok(s)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("state serializes")
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn normalization(&self) -> Option<&str> {
        self.normalization.as_deref()
    }

    /// Multiplies every amplitude by `s ≠ 0`.
    pub fn scaled(&self, s: &GaussianRational) -> Self {
        assert!(!s.is_zero(), "scaling by zero destroys the state");
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|a| Amplitude { value: &a.value * s, ..a.clone() })
            .collect();
        Self { dims: self.dims, amplitudes, normalization: self.normalization.clone() }
    }

    /// The `C`-slices `M_k[a][b] = ⟨a, b, k|Ψ⟩`.
    pub fn slices(&self) -> Vec<Matrix> {
        let [da, db, dc] = self.dims;
        let mut out = vec![Matrix::zeros(da, db); dc];
        for amp in &self.amplitudes {
            out[amp.c][(amp.a, amp.b)] = amp.value.clone();
        }
        out
    }
}

/// The matrix space spanned by the `C`-slices, i.e. the vectorized support
/// of the reduced state on `AB`.
pub fn vec_support(state: &TripartiteState) -> MatrixSpace {
    MatrixSpace::from_generators(&state.slices()).expect("slices share the shape dA x dB")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(TripartiteState::from_triples([2, 2, 1], &[(0, 0, 0, 1)]).is_ok());
        assert!(matches!(TripartiteState::from_triples([2, 2, 1], &[(2, 0, 0, 1)]), Err(Error::InvalidState(_))));
        assert!(matches!(
            TripartiteState::from_triples([2, 2, 1], &[(0, 0, 0, 1), (0, 0, 0, 2)]),
            Err(Error::InvalidState(_))
        ));
        assert!(matches!(TripartiteState::from_triples([2, 2, 1], &[(0, 0, 0, 0)]), Err(Error::InvalidState(_))));
        assert!(matches!(TripartiteState::from_triples([0, 2, 1], &[]), Err(Error::InvalidState(_))));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"dims":[2,2,2],"amplitudes":[{"a":0,"b":0,"c":0,"value":"1"},{"a":1,"b":1,"c":1,"value":"1/2-1*i"}]}"#;
        let s = TripartiteState::from_json(text).unwrap();
        assert_eq!(s.amplitudes()[1].value, GaussianRational::from_parts((1, 2), (-1, 1)));
        let back = TripartiteState::from_json(&s.to_json_value().to_string()).unwrap();
        assert_eq!(back, s);
        assert!(matches!(TripartiteState::from_json(r#"{"dims":[2,2],"amplitudes":[]}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn support_examples() {
        let ghz = TripartiteState::from_triples([2, 2, 2], &[(0, 0, 0, 1), (1, 1, 1, 1)]).unwrap();
        assert_eq!(vec_support(&ghz), MatrixSpace::from_positions(2, 2, [(0, 0), (1, 1)]));
        let prod = TripartiteState::from_triples([2, 2, 1], &[(0, 0, 0, 1)]).unwrap();
        assert_eq!(vec_support(&prod), MatrixSpace::from_positions(2, 2, [(0, 0)]));
    }
}
