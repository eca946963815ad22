use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{add_assign, add_scaled, is_zero_vector, scaled, sub_assign, zero_vector, RatMatrix, Rational, Vector};

use super::assoc::{default_labels, unit, AlgebraRep};
use super::operator::{MRBStructure, RBStructure};
use super::report::{Axiom, ValidationReport, Violation};

/// Left and right actions of an `n`-dimensional algebra on an
/// `m`-dimensional space: `e_i · f_u = Σ_v left[i][u][v] f_v` and
/// `f_u · e_i = Σ_v right[u][i][v] f_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BimoduleActions {
    algebra_dim: usize,
    dim: usize,
    left: Vec<Rational>,
    right: Vec<Rational>,
}

impl BimoduleActions {
    pub fn new(algebra_dim: usize, dim: usize, left: Vec<Rational>, right: Vec<Rational>) -> Result<Self> {
        let expected = algebra_dim * dim * dim;
        if left.len() != expected || right.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "action tensors have {} and {} entries, expected {expected}",
                left.len(),
                right.len()
            )));
        }
        Ok(BimoduleActions {
            algebra_dim,
            dim,
            left,
            right,
        })
    }

    pub fn zero(algebra_dim: usize, dim: usize) -> Self {
        let len = algebra_dim * dim * dim;
        BimoduleActions {
            algebra_dim,
            dim,
            left: vec![Rational::zero(); len],
            right: vec![Rational::zero(); len],
        }
    }

    /// `A` acting on itself by multiplication.
    pub fn adjoint(alg: &AlgebraRep) -> Self {
        let n = alg.dim();
        let mut out = Self::zero(n, n);
        for i in 0..n {
            for u in 0..n {
                for v in 0..n {
                    out.set_left(i, u, v, alg.constant(i, u, v).clone());
                    out.set_right(u, i, v, alg.constant(u, i, v).clone());
                }
            }
        }
        out
    }

    /// Builds the tensors from functions returning `e_i · f_u` and `f_u · e_i`.
    pub fn from_fns(
        algebra_dim: usize,
        dim: usize,
        left: impl Fn(usize, usize) -> Vector,
        right: impl Fn(usize, usize) -> Vector,
    ) -> Self {
        let mut out = Self::zero(algebra_dim, dim);
        for i in 0..algebra_dim {
            for u in 0..dim {
                for (v, x) in left(i, u).into_iter().enumerate() {
                    out.set_left(i, u, v, x);
                }
                for (v, x) in right(u, i).into_iter().enumerate() {
                    out.set_right(u, i, v, x);
                }
            }
        }
        out
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_tensor(&self) -> &[Rational] {
        &self.left
    }

    pub fn right_tensor(&self) -> &[Rational] {
        &self.right
    }

    pub fn set_left(&mut self, i: usize, u: usize, v: usize, x: Rational) {
        let m = self.dim;
        self.left[(i * m + u) * m + v] = x;
    }

    pub fn set_right(&mut self, u: usize, i: usize, v: usize, x: Rational) {
        let (n, m) = (self.algebra_dim, self.dim);
        self.right[(u * n + i) * m + v] = x;
    }

    /// Coordinates of `e_i · f_u`.
    pub fn left_basis(&self, i: usize, u: usize) -> &[Rational] {
        let m = self.dim;
        let start = (i * m + u) * m;
        &self.left[start..start + m]
    }

    /// Coordinates of `f_u · e_i`.
    pub fn right_basis(&self, u: usize, i: usize) -> &[Rational] {
        let (n, m) = (self.algebra_dim, self.dim);
        let start = (u * n + i) * m;
        &self.right[start..start + m]
    }

    pub fn left_act(&self, a: &[Rational], u: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, y) in u.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                add_scaled(&mut out, &(x * y), self.left_basis(i, k));
            }
        }
        out
    }

    pub fn right_act(&self, u: &[Rational], a: &[Rational]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (k, y) in u.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                add_scaled(&mut out, &(x * y), self.right_basis(k, i));
            }
        }
        out
    }

    /// Checks the three bimodule associativity axioms on basis triples.
    pub fn validate_over(&self, alg: &AlgebraRep) -> Result<ValidationReport> {
        self.validate_over_with(alg, Execution::default())
    }

    pub fn validate_over_with(&self, alg: &AlgebraRep, exec: Execution) -> Result<ValidationReport> {
        if alg.dim() != self.algebra_dim {
            return Err(Error::DimensionMismatch(format!(
                "bimodule is over a {}-dim algebra, got {}",
                self.algebra_dim,
                alg.dim()
            )));
        }
        let (n, m) = (self.algebra_dim, self.dim);
        let failures = exec.map_range(n * n * m, |t| {
            let (i, j, u) = (t / (n * m), (t / m) % n, t % m);
            let (a, b, fu) = (unit(n, i), unit(n, j), unit(m, u));
            let mut out = Vec::new();
            // (ab)u = a(bu)
            if self.left_act(alg.basis_product(i, j), &fu) != self.left_act(&a, &self.left_act(&b, &fu)) {
                out.push(Violation {
                    axiom: Axiom::LeftAction,
                    indices: vec![i, j, u],
                });
            }
            // (au)b = a(ub)
            if self.right_act(&self.left_act(&a, &fu), &b) != self.left_act(&a, &self.right_act(&fu, &b)) {
                out.push(Violation {
                    axiom: Axiom::MiddleAction,
                    indices: vec![i, u, j],
                });
            }
            // (ua)b = u(ab)
            if self.right_act(&self.right_act(&fu, &a), &b) != self.right_act(&fu, alg.basis_product(i, j)) {
                out.push(Violation {
                    axiom: Axiom::RightAction,
                    indices: vec![u, i, j],
                });
            }
            out
        });
        let mut violations: Vec<Violation> = failures.into_iter().flatten().collect();
        violations.sort_by_key(|v| (v.axiom as u8, v.indices.clone()));
        Ok(ValidationReport::new(violations))
    }
}

/// Operator compatibility defects, `(left, right)`, for an operator `op` on
/// the module against `alg_op` on the algebra:
/// left  = T(a)·O(u) − O(T(a)·u + a·O(u)) − w·extra(a·u)
/// right = O(u)·T(a) − O(O(u)·a + u·T(a)) − w·extra(u·a)
/// with `extra = id` for modified Rota-Baxter and `extra = O` for Rota-Baxter.
fn operator_report(
    actions: &BimoduleActions,
    alg_op: &RatMatrix,
    op: &RatMatrix,
    weight: &Rational,
    weight_through_op: bool,
    exec: Execution,
) -> ValidationReport {
    let (n, m) = (actions.algebra_dim, actions.dim);
    let failures = exec.map_range(n * m, |t| {
        let (i, u) = (t / m, t % m);
        let (a, fu) = (unit(n, i), unit(m, u));
        let ta = alg_op.mul_vec(&a);
        let ou = op.mul_vec(&fu);
        let weighted = |x: Vector| {
            let x = if weight_through_op { op.mul_vec(&x) } else { x };
            scaled(&x, weight)
        };

        let mut out = Vec::new();
        let mut inner = actions.left_act(&ta, &fu);
        add_assign(&mut inner, &actions.left_act(&a, &ou));
        let mut d = actions.left_act(&ta, &ou);
        sub_assign(&mut d, &op.mul_vec(&inner));
        sub_assign(&mut d, &weighted(actions.left_act(&a, &fu)));
        if !is_zero_vector(&d) {
            out.push(Violation {
                axiom: Axiom::OperatorLeft,
                indices: vec![i, u],
            });
        }

        let mut inner = actions.right_act(&ou, &a);
        add_assign(&mut inner, &actions.right_act(&fu, &ta));
        let mut d = actions.right_act(&ou, &ta);
        sub_assign(&mut d, &op.mul_vec(&inner));
        sub_assign(&mut d, &weighted(actions.right_act(&fu, &a)));
        if !is_zero_vector(&d) {
            out.push(Violation {
                axiom: Axiom::OperatorRight,
                indices: vec![u, i],
            });
        }
        out
    });
    ValidationReport::new(failures.into_iter().flatten().collect())
}

fn check_module_operator(what: &str, op: &RatMatrix, m: usize) -> Result<()> {
    if op.rows() != m || op.cols() != m {
        return Err(Error::DimensionMismatch(format!(
            "{what} is {}x{}, expected {m}x{m}",
            op.rows(),
            op.cols()
        )));
    }
    Ok(())
}

/// A bimodule `(M, S)` over a modified Rota-Baxter algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleRep {
    actions: BimoduleActions,
    s_matrix: RatMatrix,
}

impl BimoduleRep {
    pub fn new(actions: BimoduleActions, s_matrix: RatMatrix) -> Result<Self> {
        check_module_operator("module operator", &s_matrix, actions.dim())?;
        Ok(BimoduleRep { actions, s_matrix })
    }

    pub fn zero(algebra_dim: usize) -> Self {
        BimoduleRep {
            actions: BimoduleActions::zero(algebra_dim, 0),
            s_matrix: RatMatrix::zeros(0, 0),
        }
    }

    pub fn actions(&self) -> &BimoduleActions {
        &self.actions
    }

    pub fn s_matrix(&self) -> &RatMatrix {
        &self.s_matrix
    }

    pub fn dim(&self) -> usize {
        self.actions.dim()
    }

    pub fn apply(&self, u: &[Rational]) -> Vector {
        self.s_matrix.mul_vec(u)
    }

    pub fn validate(&self, base: &MRBStructure) -> Result<ValidationReport> {
        self.validate_with(base, Execution::default())
    }

    /// Bimodule axioms over the algebra plus both operator identities.
    pub fn validate_with(&self, base: &MRBStructure, exec: Execution) -> Result<ValidationReport> {
        let mut report = self.actions.validate_over_with(base.algebra(), exec)?;
        report.extend(operator_report(
            &self.actions,
            base.r_matrix(),
            &self.s_matrix,
            base.weight(),
            false,
            exec,
        ));
        Ok(report)
    }

    pub(crate) fn require_valid(&self, base: &MRBStructure) -> Result<()> {
        let report = self.validate(base)?;
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid {
                what: "bimodule",
                report,
            })
        }
    }
}

/// A bimodule `(M, Q)` over a Rota-Baxter algebra of weight λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBBimodule {
    actions: BimoduleActions,
    q_matrix: RatMatrix,
}

impl RBBimodule {
    pub fn new(actions: BimoduleActions, q_matrix: RatMatrix) -> Result<Self> {
        check_module_operator("Rota-Baxter module operator", &q_matrix, actions.dim())?;
        Ok(RBBimodule { actions, q_matrix })
    }

    /// `(A, P)` over itself.
    pub fn adjoint(rb: &RBStructure) -> Self {
        RBBimodule {
            actions: BimoduleActions::adjoint(rb.algebra()),
            q_matrix: rb.p_matrix().clone(),
        }
    }

    pub fn actions(&self) -> &BimoduleActions {
        &self.actions
    }

    pub fn q_matrix(&self) -> &RatMatrix {
        &self.q_matrix
    }

    pub fn dim(&self) -> usize {
        self.actions.dim()
    }

    pub fn apply(&self, u: &[Rational]) -> Vector {
        self.q_matrix.mul_vec(u)
    }

    pub fn validate(&self, rb: &RBStructure) -> Result<ValidationReport> {
        let exec = Execution::default();
        let mut report = self.actions.validate_over_with(rb.algebra(), exec)?;
        report.extend(operator_report(
            &self.actions,
            rb.p_matrix(),
            &self.q_matrix,
            rb.weight(),
            true,
            exec,
        ));
        Ok(report)
    }

    pub(crate) fn require_valid(&self, rb: &RBStructure) -> Result<()> {
        let report = self.validate(rb)?;
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid {
                what: "Rota-Baxter bimodule",
                report,
            })
        }
    }
}

/// `(M, Q)` over `(A, P, λ)` gives `(M, λ·id + 2Q)` over `(A, λ·id + 2P, −λ²)`.
pub fn lift_bimodule(rb: &RBStructure, q_matrix: &RatMatrix, actions: &BimoduleActions) -> Result<BimoduleRep> {
    rb.require_valid()?;
    let rbm = RBBimodule::new(actions.clone(), q_matrix.clone())?;
    rbm.require_valid(rb)?;
    let m = actions.dim();
    let s = RatMatrix::scalar(m, rb.weight()).add(&q_matrix.scale(&Rational::from(2)));
    BimoduleRep::new(actions.clone(), s)
}

/// `(A, R)` as a bimodule over itself.
pub fn adjoint_bimodule(s: &MRBStructure) -> Result<BimoduleRep> {
    s.require_valid()?;
    Ok(adjoint_unchecked(s))
}

pub(crate) fn adjoint_unchecked(s: &MRBStructure) -> BimoduleRep {
    BimoduleRep {
        actions: BimoduleActions::adjoint(s.algebra()),
        s_matrix: s.r_matrix().clone(),
    }
}

/// Block-diagonal direct sum of bimodules over the same base.
pub fn direct_sum(base: &MRBStructure, parts: &[BimoduleRep]) -> Result<BimoduleRep> {
    base.require_valid()?;
    let n = base.dim();
    for p in parts {
        if p.actions.algebra_dim != n || !p.validate(base)?.is_valid() {
            return Err(Error::MixedBase);
        }
    }
    let total: usize = parts.iter().map(BimoduleRep::dim).sum();
    let mut actions = BimoduleActions::zero(n, total);
    let mut s = RatMatrix::zeros(0, 0);
    let mut offset = 0;
    for p in parts {
        let m = p.dim();
        for i in 0..n {
            for u in 0..m {
                for v in 0..m {
                    actions.set_left(i, offset + u, offset + v, p.actions.left_basis(i, u)[v].clone());
                    actions.set_right(offset + u, i, offset + v, p.actions.right_basis(u, i)[v].clone());
                }
            }
        }
        s = s.direct_sum(&p.s_matrix);
        offset += m;
    }
    BimoduleRep::new(actions, s)
}

fn flatten_row_major(m: &RatMatrix) -> Vector {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

/// `End(M)` with `(a⊙f)(u) = f(u·a)`, `(f⊙a)(u) = f(a·u)` and
/// `S̃(f) = −f∘S`. The basis is the matrix units `E_pq` (`f_q ↦ f_p`),
/// indexed row-major as `p·m + q`.
pub fn endo_bimodule(base: &MRBStructure, module: &BimoduleRep) -> Result<BimoduleRep> {
    module.require_valid(base)?;
    let (n, m) = (base.dim(), module.dim());
    let act = &module.actions;
    // Matrices of u ↦ u·e_i and u ↦ e_i·u.
    let right_mul: Vec<RatMatrix> = (0..n)
        .map(|i| RatMatrix::from_fn(m, m, |r, c| act.right_basis(c, i)[r].clone()))
        .collect();
    let left_mul: Vec<RatMatrix> = (0..n)
        .map(|i| RatMatrix::from_fn(m, m, |r, c| act.left_basis(i, c)[r].clone()))
        .collect();
    let unit_matrix = |f: usize| {
        let mut e = RatMatrix::zeros(m, m);
        e.set(f / m, f % m, Rational::one());
        e
    };
    let actions = BimoduleActions::from_fns(
        n,
        m * m,
        |i, f| flatten_row_major(&unit_matrix(f).mul(&right_mul[i])),
        |f, i| flatten_row_major(&unit_matrix(f).mul(&left_mul[i])),
    );
    let neg_s = module.s_matrix.scale(&Rational::from(-1));
    let columns: Vec<Vector> = (0..m * m).map(|f| flatten_row_major(&unit_matrix(f).mul(&neg_s))).collect();
    BimoduleRep::new(actions, RatMatrix::from_columns(m * m, &columns)?)
}

/// `A ⊕ M` with `(a,u)(b,v) = (ab, av + ub)` and operator `R ⊕ S`.
pub fn semidirect_product(base: &MRBStructure, module: &BimoduleRep) -> Result<MRBStructure> {
    module.require_valid(base)?;
    let zero = crate::cochain::Cochain::zero(2, base.dim(), module.dim());
    let algebra = abelian_extension_algebra(base.algebra(), module.actions(), &zero);
    MRBStructure::new(algebra, base.r_matrix().direct_sum(module.s_matrix()), base.weight().clone())
}

/// `A ⊕ M` with product `(a,u)(b,v) = (ab, av + ub + χ(a,b))`; the module
/// basis vectors follow the algebra basis.
pub(crate) fn abelian_extension_algebra(
    alg: &AlgebraRep,
    actions: &BimoduleActions,
    chi: &crate::cochain::Cochain,
) -> AlgebraRep {
    let (n, m) = (alg.dim(), actions.dim());
    let mut labels = alg.labels().to_vec();
    labels.extend(default_labels("m", m));
    let mut out = AlgebraRep::zero(n + m).with_labels(labels).expect("label count");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.set_constant(i, j, k, alg.constant(i, j, k).clone());
            }
            for (v, x) in chi.basis_value(&[i, j]).iter().enumerate() {
                out.set_constant(i, j, n + v, x.clone());
            }
        }
        for u in 0..m {
            for v in 0..m {
                out.set_constant(i, n + u, n + v, actions.left_basis(i, u)[v].clone());
                out.set_constant(n + u, i, n + v, actions.right_basis(u, i)[v].clone());
            }
        }
    }
    out
}

/// `M_S` over `(A_R, R)`: `a·u = R(a)u + aS(u)`, `u·a = S(u)a + uR(a)`.
pub fn induced_bimodule_ms(base: &MRBStructure, module: &BimoduleRep) -> Result<BimoduleRep> {
    module.require_valid(base)?;
    let (n, m) = (base.dim(), module.dim());
    let act = &module.actions;
    let actions = BimoduleActions::from_fns(
        n,
        m,
        |i, u| {
            let (a, fu) = (unit(n, i), unit(m, u));
            let mut x = act.left_act(&base.apply(&a), &fu);
            add_assign(&mut x, &act.left_act(&a, &module.apply(&fu)));
            x
        },
        |u, i| {
            let (a, fu) = (unit(n, i), unit(m, u));
            let mut x = act.right_act(&module.apply(&fu), &a);
            add_assign(&mut x, &act.right_act(&fu, &base.apply(&a)));
            x
        },
    );
    BimoduleRep::new(actions, module.s_matrix.clone())
}

pub(crate) fn twisted_actions(base: &MRBStructure, module: &BimoduleRep) -> BimoduleActions {
    let (n, m) = (base.dim(), module.dim());
    let act = &module.actions;
    BimoduleActions::from_fns(
        n,
        m,
        |i, u| {
            let (a, fu) = (unit(n, i), unit(m, u));
            let mut x = act.left_act(&base.apply(&a), &fu);
            sub_assign(&mut x, &module.apply(act.left_basis(i, u)));
            x
        },
        |u, i| {
            let fu = unit(m, u);
            let mut x = act.right_act(&fu, &base.apply(&unit(n, i)));
            sub_assign(&mut x, &module.apply(act.right_basis(u, i)));
            x
        },
    )
}

/// `M̃` over `(A_R, R)`: `a·u = R(a)u − S(au)`, `u·a = uR(a) − S(ua)`.
pub fn twisted_bimodule(base: &MRBStructure, module: &BimoduleRep) -> Result<BimoduleRep> {
    module.require_valid(base)?;
    BimoduleRep::new(twisted_actions(base, module), module.s_matrix.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::induced_mrb;
    use crate::instances::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn assert_valid(m: &BimoduleRep, base: &MRBStructure) {
        let report = m.validate(base).unwrap();
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn adjoint_examples() {
        let k = adjoint_bimodule(&k1_mrb()).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.s_matrix(), &RatMatrix::identity(1));
        let d = adjoint_bimodule(&d2_mrb()).unwrap();
        assert_eq!(d.s_matrix(), &RatMatrix::from_i64(&[&[1, 0], &[0, -1]]));
        assert_valid(&d, &d2_mrb());
        assert_valid(&adjoint_bimodule(&n2_mrb()).unwrap(), &n2_mrb());
    }

    #[test]
    fn lift_examples() {
        let rb = RBStructure::new(k1(), RatMatrix::zeros(1, 1), q(1)).unwrap();
        let m = lift_bimodule(&rb, &RatMatrix::zeros(1, 1), &BimoduleActions::adjoint(&k1())).unwrap();
        assert_eq!(m.s_matrix(), &RatMatrix::identity(1));

        let rb = RBStructure::new(d2(), RatMatrix::zeros(2, 2), q(3)).unwrap();
        let base = crate::algebra::from_rota_baxter(&rb).unwrap();
        let m = lift_bimodule(&rb, &RatMatrix::zeros(2, 2), &BimoduleActions::adjoint(&d2())).unwrap();
        assert_eq!(m.s_matrix(), &RatMatrix::scalar(2, &q(3)));
        assert_valid(&m, &base);

        // adjoint with Q = P lifts to the adjoint of the lifted structure
        let p = d2_weight_zero_rb_operator(&q(1));
        let rb = RBStructure::new(d2(), p.clone(), q(0)).unwrap();
        let m = lift_bimodule(&rb, &p, &BimoduleActions::adjoint(&d2())).unwrap();
        let base = crate::algebra::from_rota_baxter(&rb).unwrap();
        assert_eq!(m, adjoint_bimodule(&base).unwrap());

        let rb = RBStructure::new(d2(), RatMatrix::zeros(2, 2), q(1)).unwrap();
        let err = lift_bimodule(&rb, &RatMatrix::identity(2), &BimoduleActions::adjoint(&d2())).unwrap_err();
        match err {
            Error::Invalid { report, .. } => assert!(report.of_axiom(Axiom::OperatorLeft).next().is_some()),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn direct_sum_examples() {
        let k = k1_mrb();
        let adj = adjoint_bimodule(&k).unwrap();
        let sum = direct_sum(&k, &[adj.clone(), adj]).unwrap();
        assert_eq!(sum.dim(), 2);
        assert_eq!(sum.s_matrix(), &RatMatrix::identity(2));
        assert_eq!(direct_sum(&k, &[]).unwrap().dim(), 0);

        let d = d2_mrb();
        let adj = adjoint_bimodule(&d).unwrap();
        let sum = direct_sum(&d, &[adj.clone(), adj.clone()]).unwrap();
        assert_eq!(sum.dim(), 4);
        assert_valid(&sum, &d);

        let other = adjoint_bimodule(&k1_mrb()).unwrap();
        assert!(matches!(direct_sum(&d, &[adj, other]), Err(Error::MixedBase)));
    }

    #[test]
    fn endo_examples() {
        let k = k1_mrb();
        let e = endo_bimodule(&k, &adjoint_bimodule(&k).unwrap()).unwrap();
        assert_eq!(e.dim(), 1);
        assert_eq!(e.s_matrix(), &RatMatrix::scalar(1, &q(-1)));
        assert_eq!(e.actions().left_basis(0, 0), &[q(1)]);
        assert_eq!(e.actions().right_basis(0, 0), &[q(1)]);
        assert_valid(&e, &k);

        let d = d2_mrb();
        let e = endo_bimodule(&d, &adjoint_bimodule(&d).unwrap()).unwrap();
        assert_eq!(e.dim(), 4);
        assert_valid(&e, &d);

        assert_eq!(endo_bimodule(&d, &BimoduleRep::zero(2)).unwrap().dim(), 0);
    }

    #[test]
    fn semidirect_examples() {
        let k = k1_mrb();
        let sd = semidirect_product(&k, &adjoint_bimodule(&k).unwrap()).unwrap();
        assert_eq!(sd.dim(), 2);
        assert_eq!(sd.r_matrix(), &RatMatrix::identity(2));
        assert_eq!(sd.weight(), &q(-1));
        assert!(sd.validate().unwrap().is_valid());

        let d = d2_mrb();
        let sd = semidirect_product(&d, &adjoint_bimodule(&d).unwrap()).unwrap();
        assert_eq!(sd.dim(), 4);
        assert!(sd.validate().unwrap().is_valid());

        assert_eq!(semidirect_product(&d, &BimoduleRep::zero(2)).unwrap(), d);
    }

    #[test]
    fn induced_ms_examples() {
        for s in [k1_mrb(), d2_mrb(), n2_mrb()] {
            let ms = induced_bimodule_ms(&s, &adjoint_bimodule(&s).unwrap()).unwrap();
            let ar = induced_mrb(&s).unwrap();
            assert_eq!(ms, adjoint_bimodule(&ar).unwrap());
            assert_valid(&ms, &ar);
        }
        let ms = induced_bimodule_ms(&k1_mrb(), &adjoint_bimodule(&k1_mrb()).unwrap()).unwrap();
        assert_eq!(ms.actions().left_basis(0, 0), &[q(2)]);
        let z = induced_bimodule_ms(&d2_mrb(), &BimoduleRep::zero(2)).unwrap();
        assert_eq!(z.dim(), 0);
    }

    #[test]
    fn twisted_examples() {
        let k = k1_mrb();
        let t = twisted_bimodule(&k, &adjoint_bimodule(&k).unwrap()).unwrap();
        assert_eq!(t.actions().left_basis(0, 0), &[q(0)]);
        assert_eq!(t.actions().right_basis(0, 0), &[q(0)]);

        let d = d2_mrb();
        let t = twisted_bimodule(&d, &adjoint_bimodule(&d).unwrap()).unwrap();
        // x~·x = 0, e~·x = 2x
        assert_eq!(t.actions().right_basis(1, 1), &[q(0), q(0)]);
        assert_eq!(t.actions().left_basis(0, 1), &[q(0), q(2)]);
        assert_valid(&t, &induced_mrb(&d).unwrap());

        assert_eq!(twisted_bimodule(&d, &BimoduleRep::zero(2)).unwrap().dim(), 0);
    }
}
