//! Multilinear maps `A^{⊗k} → M` stored by their values on basis tuples.
//!
//! Coefficients are flattened lexicographically by `(i₁, …, i_k, v)`; this
//! is the column order of every coboundary matrix.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{add_scaled, zero_vector, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cochain {
    degree: usize,
    source_dim: usize,
    target_dim: usize,
    coeffs: Vec<Rational>,
}

/// `n^k`, the number of basis tuples of length `k`.
pub fn tuple_count(n: usize, k: usize) -> usize {
    n.pow(k as u32)
}

/// Decodes a flat tuple index into `(i₁, …, i_k)`.
pub fn decode_tuple(n: usize, k: usize, mut t: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = t % n;
        t /= n;
    }
    out
}

pub fn encode_tuple(n: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

impl Cochain {
    pub fn zero(degree: usize, source_dim: usize, target_dim: usize) -> Self {
        Cochain {
            degree,
            source_dim,
            target_dim,
            coeffs: zero_vector(tuple_count(source_dim, degree) * target_dim),
        }
    }

    pub fn from_coeffs(degree: usize, source_dim: usize, target_dim: usize, coeffs: Vec<Rational>) -> Result<Self> {
        let expected = tuple_count(source_dim, degree) * target_dim;
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "degree-{degree} cochain needs {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Cochain {
            degree,
            source_dim,
            target_dim,
            coeffs,
        })
    }

    /// Builds a cochain from its value on each basis tuple.
    pub fn from_fn(degree: usize, source_dim: usize, target_dim: usize, f: impl Fn(&[usize]) -> Vector) -> Self {
        let mut coeffs = Vec::with_capacity(tuple_count(source_dim, degree) * target_dim);
        for t in 0..tuple_count(source_dim, degree) {
            let value = f(&decode_tuple(source_dim, degree, t));
            debug_assert_eq!(value.len(), target_dim);
            coeffs.extend(value);
        }
        Cochain {
            degree,
            source_dim,
            target_dim,
            coeffs,
        }
    }

    /// A degree-0 cochain is a vector of `M`.
    pub fn from_vector(source_dim: usize, u: Vector) -> Self {
        Cochain {
            degree: 0,
            source_dim,
            target_dim: u.len(),
            coeffs: u,
        }
    }

    /// A linear map given as a `target × source` matrix.
    pub fn from_matrix(m: &crate::linalg::RatMatrix) -> Self {
        Cochain::from_fn(1, m.cols(), m.rows(), |idx| m.column(idx[0]))
    }

    /// Inverse of [`Cochain::from_matrix`]; panics unless the degree is 1.
    pub fn to_matrix(&self) -> crate::linalg::RatMatrix {
        assert_eq!(self.degree, 1, "only degree-1 cochains are matrices");
        crate::linalg::RatMatrix::from_fn(self.target_dim, self.source_dim, |r, c| self.basis_value(&[c])[r].clone())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn basis_value(&self, idx: &[usize]) -> &[Rational] {
        debug_assert_eq!(idx.len(), self.degree);
        let start = encode_tuple(self.source_dim, idx) * self.target_dim;
        &self.coeffs[start..start + self.target_dim]
    }

    pub fn basis_value_mut(&mut self, idx: &[usize]) -> &mut [Rational] {
        let start = encode_tuple(self.source_dim, idx) * self.target_dim;
        &mut self.coeffs[start..start + self.target_dim]
    }

    /// The value at `(i₁, …, i_k)` for a flat tuple index.
    pub fn tuple_value(&self, t: usize) -> &[Rational] {
        &self.coeffs[t * self.target_dim..(t + 1) * self.target_dim]
    }

    /// Evaluates on arbitrary arguments by multilinear expansion, skipping
    /// zero coordinates.
    pub fn eval(&self, args: &[&[Rational]]) -> Vector {
        assert_eq!(args.len(), self.degree, "wrong number of arguments");
        let mut out = zero_vector(self.target_dim);
        self.eval_into(args, 0, 0, &Rational::one(), &mut out);
        out
    }

    fn eval_into(&self, args: &[&[Rational]], pos: usize, prefix: usize, coeff: &Rational, out: &mut [Rational]) {
        if pos == args.len() {
            add_scaled(out, coeff, self.tuple_value(prefix));
            return;
        }
        for (i, x) in args[pos].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            self.eval_into(args, pos + 1, prefix * self.source_dim + i, &(coeff * x), out);
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.assert_same_shape(other);
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.assert_same_shape(other);
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        Cochain {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    fn zip_with(&self, other: &Cochain, f: impl Fn(&Rational, &Rational) -> Rational) -> Cochain {
        Cochain {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
            ..self.clone()
        }
    }

    fn assert_same_shape(&self, other: &Cochain) {
        assert_eq!(
            (self.degree, self.source_dim, self.target_dim),
            (other.degree, other.source_dim, other.target_dim),
            "cochain shapes differ"
        );
    }
}

/// An element `(χ, Φ)` of `Cᵏ(A, M) ⊕ Cᵏ⁻¹(A_R, M̃)`; at degree 0 only `χ`
/// (a vector of `M`) is present.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CochainPair {
    pub chi: Cochain,
    pub phi: Option<Cochain>,
}

/// `dim Cᵏ_mRBA` for an `n`-dimensional algebra and `m`-dimensional module.
pub fn pair_space_dim(n: usize, m: usize, degree: usize) -> usize {
    let chi = tuple_count(n, degree) * m;
    if degree == 0 {
        chi
    } else {
        chi + tuple_count(n, degree - 1) * m
    }
}

impl CochainPair {
    pub fn new(chi: Cochain, phi: Cochain) -> Result<Self> {
        if phi.degree + 1 != chi.degree || phi.source_dim != chi.source_dim || phi.target_dim != chi.target_dim {
            return Err(Error::DimensionMismatch(format!(
                "pair components have degrees {} and {}",
                chi.degree, phi.degree
            )));
        }
        Ok(CochainPair { chi, phi: Some(phi) })
    }

    pub fn degree_zero(source_dim: usize, u: Vector) -> Self {
        CochainPair {
            chi: Cochain::from_vector(source_dim, u),
            phi: None,
        }
    }

    pub fn zero(degree: usize, source_dim: usize, target_dim: usize) -> Self {
        CochainPair {
            chi: Cochain::zero(degree, source_dim, target_dim),
            phi: (degree > 0).then(|| Cochain::zero(degree - 1, source_dim, target_dim)),
        }
    }

    pub fn degree(&self) -> usize {
        self.chi.degree
    }

    pub fn source_dim(&self) -> usize {
        self.chi.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.chi.target_dim
    }

    /// The `Φ` component; a zero-size placeholder at degree 0 is never
    /// returned, callers must check the degree.
    pub fn phi(&self) -> &Cochain {
        self.phi.as_ref().expect("degree-0 pairs have no second component")
    }

    /// `χ` coefficients followed by `Φ` coefficients.
    pub fn to_vector(&self) -> Vector {
        let mut out = self.chi.coeffs.clone();
        if let Some(phi) = &self.phi {
            out.extend(phi.coeffs.iter().cloned());
        }
        out
    }

    pub fn from_vector(degree: usize, source_dim: usize, target_dim: usize, v: &[Rational]) -> Result<Self> {
        let chi_len = tuple_count(source_dim, degree) * target_dim;
        if v.len() != pair_space_dim(source_dim, target_dim, degree) {
            return Err(Error::DimensionMismatch(format!(
                "degree-{degree} pair needs {} coordinates, got {}",
                pair_space_dim(source_dim, target_dim, degree),
                v.len()
            )));
        }
        let chi = Cochain::from_coeffs(degree, source_dim, target_dim, v[..chi_len].to_vec())?;
        let phi = if degree == 0 {
            None
        } else {
            Some(Cochain::from_coeffs(
                degree - 1,
                source_dim,
                target_dim,
                v[chi_len..].to_vec(),
            )?)
        };
        Ok(CochainPair { chi, phi })
    }

    pub fn is_zero(&self) -> bool {
        self.chi.is_zero() && self.phi.as_ref().is_none_or(Cochain::is_zero)
    }

    pub fn add(&self, other: &CochainPair) -> CochainPair {
        CochainPair {
            chi: self.chi.add(&other.chi),
            phi: self.phi.as_ref().zip(other.phi.as_ref()).map(|(a, b)| a.add(b)),
        }
    }

    pub fn sub(&self, other: &CochainPair) -> CochainPair {
        CochainPair {
            chi: self.chi.sub(&other.chi),
            phi: self.phi.as_ref().zip(other.phi.as_ref()).map(|(a, b)| a.sub(b)),
        }
    }

    pub fn scale(&self, c: &Rational) -> CochainPair {
        CochainPair {
            chi: self.chi.scale(c),
            phi: self.phi.as_ref().map(|p| p.scale(c)),
        }
    }
}
