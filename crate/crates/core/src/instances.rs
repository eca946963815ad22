//! Small named structures used in examples, tests and the shipped corpus.
//!
//! * `K1`: one-dimensional, `e·e = e`.
//! * `D2`: dual numbers, basis `{e, x}`, `e` a unit and `x·x = 0`.
//! * `N2`: two-dimensional with zero multiplication.

use crate::algebra::{AlgebraRep, MRBStructure, RBStructure};
use crate::linalg::{RatMatrix, Rational};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn k1() -> AlgebraRep {
    AlgebraRep::from_fn(labels(&["e"]), |_, _, _| Rational::one())
}

pub fn d2() -> AlgebraRep {
    AlgebraRep::from_fn(labels(&["e", "x"]), |i, j, k| {
        // e·e = e, e·x = x·e = x, x·x = 0
        let product = match (i, j) {
            (0, 0) => Some(0),
            (0, 1) | (1, 0) => Some(1),
            _ => None,
        };
        if product == Some(k) {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

pub fn n2() -> AlgebraRep {
    AlgebraRep::zero(2)
}

/// `(K1, id, −1)`.
pub fn k1_mrb() -> MRBStructure {
    MRBStructure::new(k1(), RatMatrix::identity(1), Rational::from(-1)).expect("shape")
}

/// `(D2, diag(1, −1), −1)`.
pub fn d2_mrb() -> MRBStructure {
    MRBStructure::new(d2(), RatMatrix::from_i64(&[&[1, 0], &[0, -1]]), Rational::from(-1)).expect("shape")
}

/// `N2` with an arbitrary operator; every weight works.
pub fn n2_mrb() -> MRBStructure {
    MRBStructure::new(n2(), RatMatrix::from_i64(&[&[1, 2], &[3, 4]]), Rational::from(5)).expect("shape")
}

/// `N2` with `R = 0` and weight 0: every coboundary vanishes, so `H²` is all
/// of `C²`.
pub fn n2_zero_mrb() -> MRBStructure {
    MRBStructure::new(n2(), RatMatrix::zeros(2, 2), Rational::zero()).expect("shape")
}

/// `P(e) = αx`, `P(x) = 0`: a weight-zero Rota-Baxter operator on `D2`.
pub fn d2_weight_zero_rb_operator(alpha: &Rational) -> RatMatrix {
    let mut p = RatMatrix::zeros(2, 2);
    p.set(1, 0, alpha.clone());
    p
}

/// `(A, 0, λ)`.
pub fn zero_rb(algebra: AlgebraRep, lambda: i64) -> RBStructure {
    let n = algebra.dim();
    RBStructure::new(algebra, RatMatrix::zeros(n, n), Rational::from(lambda)).expect("shape")
}

/// `(A, −λ·id, λ)`.
pub fn negative_identity_rb(algebra: AlgebraRep, lambda: i64) -> RBStructure {
    let n = algebra.dim();
    let lambda = Rational::from(lambda);
    RBStructure::new(algebra, RatMatrix::scalar(n, &-&lambda), lambda).expect("shape")
}
