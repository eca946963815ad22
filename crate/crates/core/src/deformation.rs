//! Formal one-parameter deformations `μ_t = Σ μᵢ tⁱ`, `R_t = Σ Rᵢ tⁱ`
//! truncated mod `t^{N+1}`, and equivalences `φ_t = Σ φᵢ tⁱ` with `φ₀ = id`.

use serde::Serialize;

use crate::algebra::{adjoint_bimodule, AlgebraRep, MRBStructure};
use crate::cochain::{Cochain, CochainPair};
use crate::cohomology::{mrba_coboundary, mrba_matrix, PsiConvention};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{add_assign, add_scaled, is_zero_vector, sub_assign, unit_vector, zero_vector, RatMatrix, Rational, Vector};

/// The product of `alg` as a degree-2 cochain `A ⊗ A → A`.
pub fn product_cochain(alg: &AlgebraRep) -> Cochain {
    let n = alg.dim();
    Cochain::from_fn(2, n, n, |idx| alg.basis_product(idx[0], idx[1]).to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedDeformation {
    order: usize,
    mu: Vec<Cochain>,
    r: Vec<RatMatrix>,
}

impl TruncatedDeformation {
    /// `mu_higher` and `r_higher` hold the coefficients of `t, t², …, t^N`.
    pub fn new(base: &MRBStructure, mu_higher: Vec<Cochain>, r_higher: Vec<RatMatrix>) -> Result<Self> {
        if mu_higher.len() != r_higher.len() {
            return Err(Error::OrderMismatch(mu_higher.len(), r_higher.len()));
        }
        let n = base.dim();
        for (q, (mu, r)) in mu_higher.iter().zip(&r_higher).enumerate() {
            if (mu.degree(), mu.source_dim(), mu.target_dim()) != (2, n, n) {
                return Err(Error::DimensionMismatch(format!(
                    "μ_{} is not a bilinear map on the algebra",
                    q + 1
                )));
            }
            if (r.rows(), r.cols()) != (n, n) {
                return Err(Error::DimensionMismatch(format!(
                    "R_{} is {}x{}, expected {n}x{n}",
                    q + 1,
                    r.rows(),
                    r.cols()
                )));
            }
        }
        let order = mu_higher.len();
        let mut mu = vec![product_cochain(base.algebra())];
        mu.extend(mu_higher);
        let mut r = vec![base.r_matrix().clone()];
        r.extend(r_higher);
        Ok(TruncatedDeformation { order, mu, r })
    }

    /// `μᵢ = 0`, `Rᵢ = 0` for `1 ≤ i ≤ order`.
    pub fn trivial(base: &MRBStructure, order: usize) -> Self {
        let n = base.dim();
        TruncatedDeformation::new(base, vec![Cochain::zero(2, n, n); order], vec![RatMatrix::zeros(n, n); order])
            .expect("shapes match")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mu(&self, i: usize) -> &Cochain {
        &self.mu[i]
    }

    pub fn r(&self, i: usize) -> &RatMatrix {
        &self.r[i]
    }

    fn matches_base(&self, base: &MRBStructure) -> bool {
        self.mu[0] == product_cochain(base.algebra()) && &self.r[0] == base.r_matrix()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeformationEquation {
    Associativity,
    Operator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderFailure {
    pub order: usize,
    pub equation: DeformationEquation,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub order: usize,
    /// Orders `1..=order` at which both equations hold on every basis tuple.
    pub valid_orders: Vec<usize>,
    pub first_failure: Option<OrderFailure>,
}

impl DeformationReport {
    pub fn is_valid(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn valid_through(&self, order: usize) -> bool {
        (1..=order).all(|q| self.valid_orders.contains(&q))
    }
}

fn check_against(base: &MRBStructure, d: &TruncatedDeformation) -> Result<()> {
    base.require_valid()?;
    if d.mu[0].source_dim() != base.dim() || !d.matches_base(base) {
        return Err(Error::Precondition("deformation does not start at the base structure".into()));
    }
    Ok(())
}

/// Order-`q` associativity defect on `(e_a, e_b, e_c)`.
fn associativity_defect(d: &TruncatedDeformation, q: usize, a: usize, b: usize, c: usize) -> Vector {
    let n = d.mu[0].source_dim();
    let (ea, ec) = (unit_vector(n, a), unit_vector(n, c));
    let mut out = zero_vector(n);
    for i in 0..=q {
        let j = q - i;
        add_assign(&mut out, &d.mu[i].eval(&[d.mu[j].basis_value(&[a, b]), &ec]));
        sub_assign(&mut out, &d.mu[i].eval(&[&ea, d.mu[j].basis_value(&[b, c])]));
    }
    out
}

/// Order-`q` operator defect on `(e_a, e_b)`.
fn operator_defect(d: &TruncatedDeformation, kappa: &Rational, q: usize, a: usize, b: usize) -> Vector {
    let n = d.mu[0].source_dim();
    let (ea, eb) = (unit_vector(n, a), unit_vector(n, b));
    let mut out = zero_vector(n);
    for i in 0..=q {
        for j in 0..=q - i {
            let k = q - i - j;
            let (rja, rkb) = (d.r[j].mul_vec(&ea), d.r[k].mul_vec(&eb));
            add_assign(&mut out, &d.mu[i].eval(&[&rja, &rkb]));
            let rka = d.r[k].mul_vec(&ea);
            let mut inner = d.mu[j].eval(&[&rka, &eb]);
            add_assign(&mut inner, &d.mu[j].eval(&[&ea, &rkb]));
            sub_assign(&mut out, &d.r[i].mul_vec(&inner));
        }
    }
    add_scaled(&mut out, &-kappa, d.mu[q].basis_value(&[a, b]));
    out
}

pub fn check_deformation(base: &MRBStructure, d: &TruncatedDeformation) -> Result<DeformationReport> {
    check_deformation_with(base, d, Execution::default())
}

/// Checks both families of order-`q` equations for `1 ≤ q ≤ N`, stopping at
/// the first failing order.
pub fn check_deformation_with(base: &MRBStructure, d: &TruncatedDeformation, exec: Execution) -> Result<DeformationReport> {
    check_against(base, d)?;
    let n = base.dim();
    let mut valid_orders = Vec::new();
    for q in 1..=d.order {
        let assoc = exec.map_range(n * n * n, |t| {
            let (a, b, c) = (t / (n * n), (t / n) % n, t % n);
            (!is_zero_vector(&associativity_defect(d, q, a, b, c))).then(|| vec![a, b, c])
        });
        let failure = assoc.into_iter().flatten().next().map(|indices| OrderFailure {
            order: q,
            equation: DeformationEquation::Associativity,
            indices,
        });
        let failure = failure.or_else(|| {
            let op = exec.map_range(n * n, |t| {
                let (a, b) = (t / n, t % n);
                (!is_zero_vector(&operator_defect(d, base.weight(), q, a, b))).then(|| vec![a, b])
            });
            op.into_iter().flatten().next().map(|indices| OrderFailure {
                order: q,
                equation: DeformationEquation::Operator,
                indices,
            })
        });
        if failure.is_some() {
            return Ok(DeformationReport {
                order: d.order,
                valid_orders,
                first_failure: failure,
            });
        }
        valid_orders.push(q);
    }
    Ok(DeformationReport {
        order: d.order,
        valid_orders,
        first_failure: None,
    })
}

/// `(μ₁, R₁)` as a degree-2 pair with coefficients in the adjoint bimodule.
pub fn infinitesimal(d: &TruncatedDeformation) -> Result<CochainPair> {
    if d.order == 0 {
        return Err(Error::Precondition("a deformation of order 0 has no infinitesimal".into()));
    }
    CochainPair::new(d.mu[1].clone(), Cochain::from_matrix(&d.r[1]))
}

fn require_order_one(base: &MRBStructure, d: &TruncatedDeformation) -> Result<()> {
    if d.order == 0 {
        return Err(Error::Precondition("a deformation of order 0 has no infinitesimal".into()));
    }
    if !check_deformation(base, d)?.valid_through(1) {
        return Err(Error::DeformationFailsAtOrder { order: 1 });
    }
    Ok(())
}

/// Whether `δ_mRBA(μ₁, R₁) = 0`; requires the order-1 equations to hold.
pub fn check_infinitesimal_cocycle(base: &MRBStructure, d: &TruncatedDeformation) -> Result<bool> {
    require_order_one(base, d)?;
    let adj = adjoint_bimodule(base)?;
    Ok(mrba_coboundary(base, &adj, &infinitesimal(d)?, PsiConvention::Corrected)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedEquivalence {
    order: usize,
    phi: Vec<RatMatrix>,
}

impl TruncatedEquivalence {
    /// `phi_higher` holds `φ₁, …, φ_N`.
    pub fn new(dim: usize, phi_higher: Vec<RatMatrix>) -> Result<Self> {
        if let Some(bad) = phi_higher.iter().find(|p| (p.rows(), p.cols()) != (dim, dim)) {
            return Err(Error::DimensionMismatch(format!(
                "φ coefficient is {}x{}, expected {dim}x{dim}",
                bad.rows(),
                bad.cols()
            )));
        }
        let order = phi_higher.len();
        let mut phi = vec![RatMatrix::identity(dim)];
        phi.extend(phi_higher);
        Ok(TruncatedEquivalence { order, phi })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        TruncatedEquivalence::new(dim, vec![RatMatrix::zeros(dim, dim); order]).expect("shapes match")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn phi(&self, i: usize) -> &RatMatrix {
        &self.phi[i]
    }

    /// `ψ` with `φ_t ψ_t = id mod t^{N+1}`: `ψ₀ = id`, `ψ_q = −Σ_{i=1}^q φᵢ ψ_{q−i}`.
    pub fn inverse(&self) -> TruncatedEquivalence {
        let n = self.phi[0].rows();
        let mut psi = vec![RatMatrix::identity(n)];
        for q in 1..=self.order {
            let mut acc = RatMatrix::zeros(n, n);
            for i in 1..=q {
                acc = acc.sub(&self.phi[i].mul(&psi[q - i]));
            }
            psi.push(acc);
        }
        TruncatedEquivalence {
            order: self.order,
            phi: psi,
        }
    }
}

/// `μ'_t = φ_t ∘ μ_t ∘ (φ_t⁻¹ ⊗ φ_t⁻¹)` and `R'_t = φ_t ∘ R_t ∘ φ_t⁻¹`, truncated.
pub fn apply_equivalence(
    base: &MRBStructure,
    d: &TruncatedDeformation,
    eq: &TruncatedEquivalence,
) -> Result<TruncatedDeformation> {
    if d.order != eq.order {
        return Err(Error::OrderMismatch(d.order, eq.order));
    }
    check_against(base, d)?;
    let n = base.dim();
    if eq.phi[0].rows() != n {
        return Err(Error::DimensionMismatch("equivalence and base dimensions differ".into()));
    }
    let psi = eq.inverse();
    let big_n = d.order;
    let mut mu = Vec::with_capacity(big_n + 1);
    let mut r = Vec::with_capacity(big_n + 1);
    for q in 0..=big_n {
        let mu_q = Cochain::from_fn(2, n, n, |idx| {
            let mut out = zero_vector(n);
            for k in 0..=q {
                for l in 0..=q - k {
                    let a = psi.phi[k].column(idx[0]);
                    let b = psi.phi[l].column(idx[1]);
                    for j in 0..=q - k - l {
                        let i = q - k - l - j;
                        add_assign(&mut out, &eq.phi[i].mul_vec(&d.mu[j].eval(&[&a, &b])));
                    }
                }
            }
            out
        });
        let mut r_q = RatMatrix::zeros(n, n);
        for i in 0..=q {
            for j in 0..=q - i {
                r_q = r_q.add(&eq.phi[i].mul(&d.r[j]).mul(&psi.phi[q - i - j]));
            }
        }
        mu.push(mu_q);
        r.push(r_q);
    }
    Ok(TruncatedDeformation { order: big_n, mu, r })
}

/// Checks that `eq` carries `d` to `d_prime`, then whether
/// `(μ₁, R₁) − (μ'₁, R'₁) = δ_mRBA(φ₁, 0)`.
pub fn infinitesimals_cohomologous(
    base: &MRBStructure,
    d: &TruncatedDeformation,
    d_prime: &TruncatedDeformation,
    eq: &TruncatedEquivalence,
) -> Result<bool> {
    if &apply_equivalence(base, d, eq)? != d_prime {
        return Err(Error::NotAnEquivalence);
    }
    let difference = infinitesimal(d)?.sub(&infinitesimal(d_prime)?);
    let adj = adjoint_bimodule(base)?;
    let n = base.dim();
    let phi1 = CochainPair::new(Cochain::from_matrix(&eq.phi[1]), Cochain::zero(0, n, n))?;
    Ok(mrba_coboundary(base, &adj, &phi1, PsiConvention::Corrected)? == difference)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Trivialization {
    /// `φ_t = id + tφ₁` carries the deformation to one with `μ'₁ = 0`, `R'₁ = 0`.
    Trivialized {
        equivalence: TruncatedEquivalence,
        deformation: TruncatedDeformation,
    },
    /// The infinitesimal is a cocycle that is not a coboundary.
    Obstructed { class_representative: CochainPair },
}

/// Solves `δ_mRBA(φ₁, a) = (μ₁, R₁)` and uses `φ₁ + δ_Hoch(a)`, which
/// satisfies `δ_mRBA(φ₁ + δ_Hoch a, 0) = (μ₁, R₁)`.
pub fn trivialize_order_one(base: &MRBStructure, d: &TruncatedDeformation) -> Result<Trivialization> {
    require_order_one(base, d)?;
    let adj = adjoint_bimodule(base)?;
    let n = base.dim();
    let target = infinitesimal(d)?;
    let d1 = mrba_matrix(base, &adj, 1, PsiConvention::Corrected, Execution::default())?;
    let Some(x) = d1.solve(&target.to_vector())? else {
        return Ok(Trivialization::Obstructed {
            class_representative: target,
        });
    };
    let pre = CochainPair::from_vector(1, n, n, &x)?;
    let a = pre.phi().clone();
    let shift = crate::cohomology::hochschild_coboundary(base, &adj, &a)?;
    let phi1 = pre.chi.add(&shift).to_matrix();
    let mut phi_higher = vec![phi1];
    phi_higher.extend((2..=d.order).map(|_| RatMatrix::zeros(n, n)));
    let equivalence = TruncatedEquivalence::new(n, phi_higher)?;
    let deformation = apply_equivalence(base, d, &equivalence)?;
    debug_assert!(deformation.mu[1].is_zero() && deformation.r[1].is_zero());
    Ok(Trivialization::Trivialized {
        equivalence,
        deformation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn k1_mu_deformation() -> TruncatedDeformation {
        TruncatedDeformation::new(
            &k1_mrb(),
            vec![Cochain::from_fn(2, 1, 1, |_| vec![q(1)])],
            vec![RatMatrix::zeros(1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn check_examples() {
        let k = k1_mrb();
        assert!(check_deformation(&k, &TruncatedDeformation::trivial(&k, 3))
            .unwrap()
            .is_valid());
        assert!(check_deformation(&k, &k1_mu_deformation()).unwrap().is_valid());
        let bad = TruncatedDeformation::new(&k, vec![Cochain::zero(2, 1, 1)], vec![RatMatrix::identity(1)]).unwrap();
        let report = check_deformation(&k, &bad).unwrap();
        assert_eq!(
            report.first_failure,
            Some(OrderFailure {
                order: 1,
                equation: DeformationEquation::Operator,
                indices: vec![0, 0]
            })
        );
    }

    #[test]
    fn infinitesimal_examples() {
        let k = k1_mrb();
        assert!(infinitesimal(&TruncatedDeformation::trivial(&k, 1)).unwrap().is_zero());
        let inf = infinitesimal(&k1_mu_deformation()).unwrap();
        assert_eq!(inf.chi.coeffs(), &[q(1)]);
        assert!(inf.phi().is_zero());
        assert!(infinitesimal(&TruncatedDeformation::trivial(&k, 0)).is_err());
        assert!(check_infinitesimal_cocycle(&k, &k1_mu_deformation()).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let k = k1_mrb();
        let d = k1_mu_deformation();
        assert_eq!(apply_equivalence(&k, &d, &TruncatedEquivalence::identity(1, 1)).unwrap(), d);

        let eq = TruncatedEquivalence::new(1, vec![RatMatrix::identity(1)]).unwrap();
        let moved = apply_equivalence(&k, &d, &eq).unwrap();
        assert!(moved.mu(1).is_zero());
        assert!(moved.r(1).is_zero());
        assert!(infinitesimals_cohomologous(&k, &d, &moved, &eq).unwrap());
        assert_eq!(apply_equivalence(&k, &moved, &eq.inverse()).unwrap(), d);

        assert!(matches!(
            infinitesimals_cohomologous(&k, &d, &d, &eq),
            Err(Error::NotAnEquivalence)
        ));
        let eq2 = TruncatedEquivalence::identity(1, 2);
        assert!(matches!(apply_equivalence(&k, &d, &eq2), Err(Error::OrderMismatch(1, 2))));
    }

    #[test]
    fn truncated_inverse() {
        let eq = TruncatedEquivalence::new(
            2,
            vec![
                RatMatrix::from_i64(&[&[1, 2], &[0, 1]]),
                RatMatrix::from_i64(&[&[0, 1], &[3, 0]]),
            ],
        )
        .unwrap();
        let inv = eq.inverse();
        for total in 0..=2 {
            let mut acc = RatMatrix::zeros(2, 2);
            for i in 0..=total {
                acc = acc.add(&eq.phi(i).mul(inv.phi(total - i)));
            }
            let expected = if total == 0 {
                RatMatrix::identity(2)
            } else {
                RatMatrix::zeros(2, 2)
            };
            assert_eq!(acc, expected);
        }
    }

    #[test]
    fn trivialize_examples() {
        let k = k1_mrb();
        match trivialize_order_one(&k, &TruncatedDeformation::trivial(&k, 2)).unwrap() {
            Trivialization::Trivialized { equivalence, .. } => assert!(equivalence.phi(1).is_zero()),
            other => panic!("{other:?}"),
        }
        match trivialize_order_one(&k, &k1_mu_deformation()).unwrap() {
            Trivialization::Trivialized {
                equivalence,
                deformation,
            } => {
                assert_eq!(equivalence.phi(1), &RatMatrix::identity(1));
                assert!(deformation.mu(1).is_zero() && deformation.r(1).is_zero());
            }
            other => panic!("{other:?}"),
        }

        let s = n2_zero_mrb();
        let mut mu1 = Cochain::zero(2, 2, 2);
        mu1.basis_value_mut(&[0, 0])[1] = q(1);
        let d = TruncatedDeformation::new(&s, vec![mu1], vec![RatMatrix::zeros(2, 2)]).unwrap();
        match trivialize_order_one(&s, &d).unwrap() {
            Trivialization::Obstructed { class_representative } => assert!(!class_representative.is_zero()),
            other => panic!("{other:?}"),
        }

        let bad = TruncatedDeformation::new(&k, vec![Cochain::zero(2, 1, 1)], vec![RatMatrix::identity(1)]).unwrap();
        assert!(matches!(
            trivialize_order_one(&k, &bad),
            Err(Error::DeformationFailsAtOrder { order: 1 })
        ));
    }

    #[test]
    fn d2_deformation_trivializes() {
        // deform R along a coboundary direction: φ_t = id + tX transports the trivial deformation
        let s = d2_mrb();
        let x = RatMatrix::from_i64(&[&[0, 0], &[1, 0]]);
        let eq = TruncatedEquivalence::new(2, vec![x, RatMatrix::zeros(2, 2)]).unwrap();
        let d = apply_equivalence(&s, &TruncatedDeformation::trivial(&s, 2), &eq).unwrap();
        assert!(check_deformation(&s, &d).unwrap().is_valid());
        assert!(check_infinitesimal_cocycle(&s, &d).unwrap());
        match trivialize_order_one(&s, &d).unwrap() {
            Trivialization::Trivialized { deformation, .. } => {
                assert!(check_deformation(&s, &deformation).unwrap().is_valid());
            }
            other => panic!("{other:?}"),
        }
    }
}
