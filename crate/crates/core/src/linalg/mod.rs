//! Exact rational scalars and the dense linear algebra the cohomology
//! computations are built on. Nothing here ever rounds.

mod matrix;
mod rational;

pub use matrix::{kernel_basis, quotient_dim, quotient_dim_with, rank, rref, solve, RatMatrix};
pub use rational::{ParseRationalError, Rational};

/// Dense vector of coordinates.
pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn add_scaled(acc: &mut [Rational], coeff: &Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if coeff.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += coeff * x;
        }
    }
}

pub fn add_assign(acc: &mut [Rational], v: &[Rational]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += x;
        }
    }
}

pub fn sub_assign(acc: &mut [Rational], v: &[Rational]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a -= x;
        }
    }
}

pub fn scaled(v: &[Rational], c: &Rational) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}
