use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{add_scaled, zero_vector, Rational, Vector};

use super::report::{Axiom, ValidationReport, Violation};

/// Associative algebra (not necessarily unital) via structure constants
/// `e_i · e_j = Σ_k c[i][j][k] e_k`, stored flat at `(i*n + j)*n + k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraRep {
    dim: usize,
    labels: Vec<String>,
    mult: Vec<Rational>,
}

pub(crate) fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl AlgebraRep {
    pub fn new(labels: Vec<String>, mult: Vec<Rational>) -> Result<Self> {
        let n = labels.len();
        if mult.len() != n * n * n {
            return Err(Error::DimensionMismatch(format!(
                "structure constants have {} entries, expected {}",
                mult.len(),
                n * n * n
            )));
        }
        Ok(AlgebraRep { dim: n, labels, mult })
    }

    pub fn from_fn(labels: Vec<String>, mut c: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let n = labels.len();
        let mut mult = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mult.push(c(i, j, k));
                }
            }
        }
        AlgebraRep { dim: n, labels, mult }
    }

    /// The algebra with identically zero multiplication.
    pub fn zero(dim: usize) -> Self {
        AlgebraRep {
            dim,
            labels: default_labels("e", dim),
            mult: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch("label count differs from dimension".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.mult[(i * self.dim + j) * self.dim + k]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let n = self.dim;
        self.mult[(i * n + j) * n + k] = v;
    }

    pub fn constants(&self) -> &[Rational] {
        &self.mult
    }

    /// Coordinates of `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.mult[start..start + self.dim]
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                add_scaled(&mut out, &(x * y), self.basis_product(i, j));
            }
        }
        out
    }

    pub fn is_zero_multiplication(&self) -> bool {
        self.mult.iter().all(Rational::is_zero)
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_with(Execution::default())
    }

    /// Lists every basis triple `(i, j, k)` with `(e_i e_j) e_k ≠ e_i (e_j e_k)`.
    pub fn validate_with(&self, exec: Execution) -> ValidationReport {
        let n = self.dim;
        let failures = exec.map_range(n * n * n, |t| {
            let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
            let left = self.mul(self.basis_product(i, j), &unit(n, k));
            let right = self.mul(&unit(n, i), self.basis_product(j, k));
            (left != right).then(|| Violation {
                axiom: Axiom::Associativity,
                indices: vec![i, j, k],
            })
        });
        ValidationReport::new(failures.into_iter().flatten().collect())
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vector {
    crate::linalg::unit_vector(n, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn examples_are_associative() {
        assert!(instances::k1().validate().is_valid());
        assert!(instances::d2().validate().is_valid());
        assert!(instances::n2().validate().is_valid());
    }

    #[test]
    fn corrupted_constant_is_reported() {
        // Any 1-dim product e·e = c·e is associative, so corruptions are 2-dim.
        let mut a = instances::d2();
        a.set_constant(0, 0, 0, Rational::zero());
        a.set_constant(0, 0, 1, Rational::one()); // e·e = x, so (ee)x = 0 but e(ex) = x
        let report = a.validate();
        assert!(report.violations.iter().any(|v| v.indices == vec![0, 0, 1]));

        let mut k = AlgebraRep::zero(2);
        k.set_constant(0, 0, 0, Rational::from(1));
        k.set_constant(0, 0, 1, Rational::from(1)); // e·e = e + f, f unrelated
        k.set_constant(1, 0, 1, Rational::from(1)); // f·e = f
        let report = k.validate();
        assert!(report.violations.iter().any(|v| v.indices == vec![0, 0, 0]));
    }

    #[test]
    fn shape_is_checked() {
        assert!(AlgebraRep::new(default_labels("e", 2), vec![Rational::zero(); 7]).is_err());
    }
}
