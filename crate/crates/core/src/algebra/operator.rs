use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{add_assign, is_zero_vector, scaled, sub_assign, RatMatrix, Rational, Vector};

use super::assoc::{unit, AlgebraRep};
use super::report::{Axiom, ValidationReport, Violation};

fn check_square(what: &str, m: &RatMatrix, n: usize) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{what} is {}x{}, expected {n}x{n}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn require_associative(a: &AlgebraRep) -> Result<()> {
    let report = a.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Invalid { what: "algebra", report })
    }
}

/// `R(a)R(b) − R(R(a)b + aR(b)) − κ·ab`.
fn mrb_defect(alg: &AlgebraRep, r: &RatMatrix, kappa: &Rational, a: &[Rational], b: &[Rational]) -> Vector {
    let ra = r.mul_vec(a);
    let rb = r.mul_vec(b);
    let mut inner = alg.mul(&ra, b);
    add_assign(&mut inner, &alg.mul(a, &rb));
    let mut out = alg.mul(&ra, &rb);
    sub_assign(&mut out, &r.mul_vec(&inner));
    sub_assign(&mut out, &scaled(&alg.mul(a, b), kappa));
    out
}

/// An algebra with a modified Rota-Baxter operator `R` of weight `κ`:
/// `R(a)R(b) = R(R(a)b + aR(b)) + κ·ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MRBStructure {
    algebra: AlgebraRep,
    r_matrix: RatMatrix,
    weight: Rational,
}

impl MRBStructure {
    /// Checks shapes only; see [`MRBStructure::validate`] and
    /// [`MRBStructure::validated`].
    pub fn new(algebra: AlgebraRep, r_matrix: RatMatrix, weight: Rational) -> Result<Self> {
        check_square("operator matrix", &r_matrix, algebra.dim())?;
        Ok(MRBStructure {
            algebra,
            r_matrix,
            weight,
        })
    }

    /// Like [`MRBStructure::new`] but rejects structures failing any axiom.
    pub fn validated(algebra: AlgebraRep, r_matrix: RatMatrix, weight: Rational) -> Result<Self> {
        let s = Self::new(algebra, r_matrix, weight)?;
        let report = s.validate()?;
        if !report.is_valid() {
            return Err(Error::Invalid {
                what: "modified Rota-Baxter structure",
                report,
            });
        }
        Ok(s)
    }

    pub fn algebra(&self) -> &AlgebraRep {
        &self.algebra
    }

    pub fn r_matrix(&self) -> &RatMatrix {
        &self.r_matrix
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn apply(&self, a: &[Rational]) -> Vector {
        self.r_matrix.mul_vec(a)
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        self.validate_with(Execution::default())
    }

    /// Lists basis pairs violating the weight-κ identity. Errors if the
    /// underlying algebra is not associative.
    pub fn validate_with(&self, exec: Execution) -> Result<ValidationReport> {
        require_associative(&self.algebra)?;
        Ok(self.identity_report(exec))
    }

    fn identity_report(&self, exec: Execution) -> ValidationReport {
        let n = self.dim();
        let failures = exec.map_range(n * n, |t| {
            let (i, j) = (t / n, t % n);
            let d = mrb_defect(&self.algebra, &self.r_matrix, &self.weight, &unit(n, i), &unit(n, j));
            (!is_zero_vector(&d)).then(|| Violation {
                axiom: Axiom::ModifiedRotaBaxter,
                indices: vec![i, j],
            })
        });
        ValidationReport::new(failures.into_iter().flatten().collect())
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let report = self.validate()?;
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid {
                what: "modified Rota-Baxter structure",
                report,
            })
        }
    }
}

/// Suggests the weight κ for which `r` is a modified Rota-Baxter operator.
///
/// Returns `Ok(None)` when every weight works (all products vanish and the
/// κ-free part of the identity holds), and `InconsistentWeight` when none does.
pub fn infer_weight(algebra: &AlgebraRep, r: &RatMatrix) -> Result<Option<Rational>> {
    check_square("operator matrix", r, algebra.dim())?;
    let n = algebra.dim();
    let zero = Rational::zero();
    let mut kappa: Option<Rational> = None;
    for i in 0..n {
        for j in 0..n {
            let defect = mrb_defect(algebra, r, &zero, &unit(n, i), &unit(n, j));
            let prod = algebra.basis_product(i, j);
            // defect must equal κ·prod
            match prod.iter().position(|x| !x.is_zero()) {
                None => {
                    if !is_zero_vector(&defect) {
                        return Err(Error::InconsistentWeight);
                    }
                }
                Some(p) => {
                    let k = &defect[p] / &prod[p];
                    if scaled(prod, &k) != defect {
                        return Err(Error::InconsistentWeight);
                    }
                    match &kappa {
                        Some(prev) if *prev != k => return Err(Error::InconsistentWeight),
                        _ => kappa = Some(k),
                    }
                }
            }
        }
    }
    Ok(kappa)
}

/// An algebra with a Rota-Baxter operator `P` of weight `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBStructure {
    algebra: AlgebraRep,
    p_matrix: RatMatrix,
    weight: Rational,
}

impl RBStructure {
    pub fn new(algebra: AlgebraRep, p_matrix: RatMatrix, weight: Rational) -> Result<Self> {
        check_square("Rota-Baxter operator matrix", &p_matrix, algebra.dim())?;
        Ok(RBStructure {
            algebra,
            p_matrix,
            weight,
        })
    }

    pub fn algebra(&self) -> &AlgebraRep {
        &self.algebra
    }

    pub fn p_matrix(&self) -> &RatMatrix {
        &self.p_matrix
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn apply(&self, a: &[Rational]) -> Vector {
        self.p_matrix.mul_vec(a)
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        require_associative(&self.algebra)?;
        let n = self.dim();
        let alg = &self.algebra;
        let failures = Execution::default().map_range(n * n, |t| {
            let (i, j) = (t / n, t % n);
            let (a, b) = (unit(n, i), unit(n, j));
            let pa = self.apply(&a);
            let pb = self.apply(&b);
            let mut inner = alg.mul(&pa, &b);
            add_assign(&mut inner, &alg.mul(&a, &pb));
            add_assign(&mut inner, &scaled(alg.basis_product(i, j), &self.weight));
            let mut d = alg.mul(&pa, &pb);
            sub_assign(&mut d, &self.apply(&inner));
            (!is_zero_vector(&d)).then(|| Violation {
                axiom: Axiom::RotaBaxter,
                indices: vec![i, j],
            })
        });
        Ok(ValidationReport::new(failures.into_iter().flatten().collect()))
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let report = self.validate()?;
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid {
                what: "Rota-Baxter structure",
                report,
            })
        }
    }
}

/// `(A, P, λ) ↦ (A, λ·id + 2P, −λ²)`.
pub fn from_rota_baxter(rb: &RBStructure) -> Result<MRBStructure> {
    rb.require_valid()?;
    let n = rb.dim();
    let lambda = rb.weight();
    let r = RatMatrix::scalar(n, lambda).add(&rb.p_matrix().scale(&Rational::from(2)));
    MRBStructure::new(rb.algebra().clone(), r, -(lambda * lambda))
}

/// Outcome of the graph criterion: whether `{(a − R(a), −a − R(a))}` is a
/// subalgebra of `A ⊕ A`, with a basis pair witnessing non-closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCheck {
    pub closed: bool,
    pub witness: Option<(usize, usize)>,
}

/// Tests closure of the graph of `R̂` under the componentwise product of
/// `A ⊕ A`. Equivalent to `R` being modified Rota-Baxter of weight −1.
pub fn graph_subalgebra_check(algebra: &AlgebraRep, r: &RatMatrix) -> Result<GraphCheck> {
    check_square("operator matrix", r, algebra.dim())?;
    require_associative(algebra)?;
    let n = algebra.dim();
    let half = Rational::new(1, 2);
    let point = |i: usize| {
        let ra = r.mul_vec(&unit(n, i));
        let mut first = unit(n, i);
        sub_assign(&mut first, &ra);
        let mut second = scaled(&unit(n, i), &Rational::from(-1));
        sub_assign(&mut second, &ra);
        (first, second)
    };
    for i in 0..n {
        let (x1, x2) = point(i);
        for j in 0..n {
            let (y1, y2) = point(j);
            let p1 = algebra.mul(&x1, &y1);
            let p2 = algebra.mul(&x2, &y2);
            // (p1, p2) = (c − R(c), −c − R(c)) forces c = (p1 − p2)/2.
            let mut c = p1.clone();
            sub_assign(&mut c, &p2);
            let c = scaled(&c, &half);
            let mut expected = c.clone();
            sub_assign(&mut expected, &r.mul_vec(&c));
            if expected != p1 {
                return Ok(GraphCheck {
                    closed: false,
                    witness: Some((i, j)),
                });
            }
        }
    }
    Ok(GraphCheck {
        closed: true,
        witness: None,
    })
}

/// Whether `phi` (an `n'×n` matrix) is an algebra homomorphism intertwining
/// the operators: `R' ∘ φ = φ ∘ R`.
pub fn check_morphism(src: &MRBStructure, dst: &MRBStructure, phi: &RatMatrix) -> Result<bool> {
    if src.weight() != dst.weight() {
        return Err(Error::WeightMismatch(src.weight().to_string(), dst.weight().to_string()));
    }
    if phi.rows() != dst.dim() || phi.cols() != src.dim() {
        return Err(Error::DimensionMismatch(format!(
            "morphism is {}x{}, expected {}x{}",
            phi.rows(),
            phi.cols(),
            dst.dim(),
            src.dim()
        )));
    }
    if dst.r_matrix().mul(phi) != phi.mul(src.r_matrix()) {
        return Ok(false);
    }
    let n = src.dim();
    for i in 0..n {
        let pi = phi.column(i);
        for j in 0..n {
            let pj = phi.column(j);
            let lhs = phi.mul_vec(src.algebra().basis_product(i, j));
            let rhs = dst.algebra().mul(&pi, &pj);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The algebra `A_R` with product `a ∗ b = R(a)b + aR(b)`.
pub fn induced_algebra(s: &MRBStructure) -> Result<AlgebraRep> {
    s.require_valid()?;
    Ok(induced_algebra_unchecked(s))
}

pub(crate) fn induced_algebra_unchecked(s: &MRBStructure) -> AlgebraRep {
    let n = s.dim();
    let alg = s.algebra();
    let cols: Vec<Vector> = (0..n).map(|i| s.r_matrix().column(i)).collect();
    let mut out = AlgebraRep::zero(n)
        .with_labels(alg.labels().to_vec())
        .expect("same dimension");
    for i in 0..n {
        for j in 0..n {
            let mut p = alg.mul(&cols[i], &unit(n, j));
            add_assign(&mut p, &alg.mul(&unit(n, i), &cols[j]));
            for (k, v) in p.into_iter().enumerate() {
                out.set_constant(i, j, k, v);
            }
        }
    }
    out
}

/// `(A_R, R, κ)`, itself a modified Rota-Baxter algebra of weight κ.
pub fn induced_mrb(s: &MRBStructure) -> Result<MRBStructure> {
    MRBStructure::new(induced_algebra(s)?, s.r_matrix().clone(), s.weight().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn validate_mrb_examples() {
        for alg in [k1(), d2(), n2()] {
            let n = alg.dim();
            let s = MRBStructure::new(alg, RatMatrix::identity(n), q(-1)).unwrap();
            assert!(s.validate().unwrap().is_valid());
        }
        assert!(d2_mrb().validate().unwrap().is_valid());
        let bad = MRBStructure::new(d2(), RatMatrix::identity(2), q(0)).unwrap();
        let report = bad.validate().unwrap();
        assert!(report.violations.iter().any(|v| v.indices == vec![0, 0]));
    }

    #[test]
    fn invalid_algebra_propagates() {
        let mut alg = d2();
        alg.set_constant(0, 0, 0, q(0));
        alg.set_constant(0, 0, 1, q(1));
        let s = MRBStructure::new(alg, RatMatrix::identity(2), q(-1)).unwrap();
        assert!(matches!(s.validate(), Err(Error::Invalid { what: "algebra", .. })));
    }

    #[test]
    fn from_rota_baxter_examples() {
        for lambda in [1, 2, 3, -5] {
            let rb = RBStructure::new(d2(), RatMatrix::zeros(2, 2), q(lambda)).unwrap();
            let s = from_rota_baxter(&rb).unwrap();
            assert_eq!(s.r_matrix(), &RatMatrix::scalar(2, &q(lambda)));
            assert_eq!(s.weight(), &q(-lambda * lambda));
            assert!(s.validate().unwrap().is_valid());
        }
        let rb = RBStructure::new(d2(), RatMatrix::scalar(2, &q(-2)), q(2)).unwrap();
        assert!(rb.validate().unwrap().is_valid());
        let s = from_rota_baxter(&rb).unwrap();
        assert_eq!(s.r_matrix(), &RatMatrix::scalar(2, &q(-2)));
        assert_eq!(s.weight(), &q(-4));

        let p = d2_weight_zero_rb_operator(&q(3));
        let rb = RBStructure::new(d2(), p.clone(), q(0)).unwrap();
        let s = from_rota_baxter(&rb).unwrap();
        assert_eq!(s.r_matrix(), &p.scale(&q(2)));
        assert_eq!(s.weight(), &q(0));

        let not_rb = RBStructure::new(d2(), RatMatrix::identity(2), q(0)).unwrap();
        assert!(from_rota_baxter(&not_rb).is_err());
    }

    #[test]
    fn graph_check_examples() {
        let g = graph_subalgebra_check(&k1(), &RatMatrix::identity(1)).unwrap();
        assert!(g.closed);
        assert!(graph_subalgebra_check(&d2(), d2_mrb().r_matrix()).unwrap().closed);
        let g = graph_subalgebra_check(&k1(), &RatMatrix::scalar(1, &q(2))).unwrap();
        assert_eq!(
            g,
            GraphCheck {
                closed: false,
                witness: Some((0, 0))
            }
        );
    }

    #[test]
    fn morphism_examples() {
        let s = d2_mrb();
        assert!(check_morphism(&s, &s, &RatMatrix::identity(2)).unwrap());
        assert!(check_morphism(&s, &s, &RatMatrix::zeros(2, 2)).unwrap());
        let k = k1_mrb();
        assert!(!check_morphism(&k, &k, &RatMatrix::scalar(1, &q(2))).unwrap());
        let other = MRBStructure::new(k1(), RatMatrix::scalar(1, &q(2)), q(-4)).unwrap();
        assert!(matches!(
            check_morphism(&k, &other, &RatMatrix::identity(1)),
            Err(Error::WeightMismatch(..))
        ));
    }

    #[test]
    fn induced_algebra_examples() {
        let a = induced_algebra(&k1_mrb()).unwrap();
        assert_eq!(a.constant(0, 0, 0), &q(2));
        let a = induced_algebra(&d2_mrb()).unwrap();
        assert_eq!(a.basis_product(0, 0), &[q(2), q(0)]);
        assert_eq!(a.basis_product(0, 1), &[q(0), q(0)]);
        assert_eq!(a.basis_product(1, 1), &[q(0), q(0)]);
        let a = induced_algebra(&n2_mrb()).unwrap();
        assert!(a.is_zero_multiplication());
        for s in [k1_mrb(), d2_mrb(), n2_mrb()] {
            let ar = induced_mrb(&s).unwrap();
            assert!(ar.validate().unwrap().is_valid());
        }
    }

    #[test]
    fn weight_inference() {
        assert_eq!(infer_weight(&d2(), d2_mrb().r_matrix()).unwrap(), Some(q(-1)));
        assert_eq!(infer_weight(&k1(), &RatMatrix::scalar(1, &q(3))).unwrap(), Some(q(-9)));
        assert_eq!(infer_weight(&n2(), &RatMatrix::identity(2)).unwrap(), None);
        let skew = RatMatrix::from_i64(&[&[1, 0], &[1, 2]]);
        assert!(matches!(infer_weight(&d2(), &skew), Err(Error::InconsistentWeight)));
    }
}
