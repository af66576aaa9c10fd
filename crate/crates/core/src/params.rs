use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Dimensions (n, j, k): j-geodesics inside k-geodesics of an n-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct TransformParams {
    pub n: usize,
    pub j: usize,
    pub k: usize,
}

#[derive(Deserialize)]
struct RawParams {
    n: i64,
    j: i64,
    k: i64,
}

impl TryFrom<RawParams> for TransformParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        if r.n < 0 || r.j < 0 || r.k < 0 {
            return Err(Error::Domain(format!(
                "dimensions must be nonnegative, got (n, j, k) = ({}, {}, {})",
                r.n, r.j, r.k
            )));
        }
        TransformParams::new(r.n as usize, r.j as usize, r.k as usize)
    }
}

impl TransformParams {
    pub fn new(n: usize, j: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("n = {n} must be at least 2")));
        }
        if j >= k {
            return Err(Error::Domain(format!("need j < k, got j = {j}, k = {k}")));
        }
        if k >= n {
            return Err(Error::Domain(format!("need k ≤ n − 1, got k = {k}, n = {n}")));
        }
        Ok(TransformParams { n, j, k })
    }

    /// Order (k − j)/2 of the underlying EK operators.
    pub fn alpha(&self) -> f64 {
        (self.k - self.j) as f64 / 2.0
    }

    /// Indices after the Kelvin-type relabelling: (n, n−k−1, n−j−1).
    pub fn kelvin(&self) -> TransformParams {
        TransformParams { n: self.n, j: self.n - self.k - 1, k: self.n - self.j - 1 }
    }

    pub fn nf(&self) -> f64 {
        self.n as f64
    }
    pub fn jf(&self) -> f64 {
        self.j as f64
    }
    pub fn kf(&self) -> f64 {
        self.k as f64
    }
}

impl std::fmt::Display for TransformParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, j={}, k={})", self.n, self.j, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(TransformParams::new(4, 0, 2).is_ok());
        assert!(TransformParams::new(4, 2, 2).is_err());
        assert!(TransformParams::new(4, 1, 4).is_err());
        assert!(TransformParams::new(1, 0, 0).is_err());
        let p: std::result::Result<TransformParams, _> = serde_json::from_str(r#"{"n":3,"j":2,"k":1}"#);
        assert!(p.is_err());
    }

    #[test]
    fn kelvin_indices() {
        let p = TransformParams::new(5, 1, 2).unwrap().kelvin();
        assert_eq!((p.j, p.k), (2, 3));
    }
}
