//! Cohomology of Rota-Baxter algebras and its comparison with the modified
//! theory through `R = λ·id + 2P`, `S = λ·id + 2Q`, `κ = −λ²`.

use serde::Serialize;

use crate::algebra::{from_rota_baxter, lift_bimodule, AlgebraRep, BimoduleActions, RBBimodule, RBStructure};
use crate::cochain::{pair_space_dim, tuple_count, Cochain, CochainPair};
use crate::cohomology::{assemble, mrba_matrix, DegreeData, PsiConvention};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{add_assign, add_scaled, unit_vector, zero_vector, RatMatrix, Rational, Vector};

/// `a ∗_P b = P(a)b + aP(b) + λab`.
pub fn rb_induced_algebra(rb: &RBStructure) -> Result<AlgebraRep> {
    rb.require_valid()?;
    Ok(rb_induced_algebra_unchecked(rb))
}

/// `M̄` over `A_P`: `a·u = P(a)u − Q(au)`, `u·a = uP(a) − Q(ua)`.
pub fn rb_bar_bimodule(rb: &RBStructure, module: &RBBimodule) -> Result<BimoduleActions> {
    module.require_valid(rb)?;
    Ok(bar_actions(rb, module))
}

fn bar_actions(rb: &RBStructure, module: &RBBimodule) -> BimoduleActions {
    let (n, m) = (rb.dim(), module.dim());
    let act = module.actions();
    let p_cols = rb.p_matrix().columns();
    BimoduleActions::from_fns(
        n,
        m,
        |i, u| {
            let fu = unit_vector(m, u);
            let mut x = act.left_act(&p_cols[i], &fu);
            crate::linalg::sub_assign(&mut x, &module.apply(act.left_basis(i, u)));
            x
        },
        |u, i| {
            let fu = unit_vector(m, u);
            let mut x = act.right_act(&fu, &p_cols[i]);
            crate::linalg::sub_assign(&mut x, &module.apply(act.right_basis(u, i)));
            x
        },
    )
}

/// `Φᵏ(f) = f(Pa₁, …, Pa_k) − Σ_{j<k} λ^{k−j−1} Σ_{|I|=j} Q∘f(…, Pa_i for i ∈ I, …)`.
pub fn phi_map(rb: &RBStructure, module: &RBBimodule, f: &Cochain) -> Result<Cochain> {
    let (n, m, k) = (rb.dim(), module.dim(), f.degree());
    if f.source_dim() != n || f.target_dim() != m {
        return Err(Error::DimensionMismatch(
            "cochain does not match the Rota-Baxter bimodule".into(),
        ));
    }
    if k == 0 {
        return Ok(f.clone());
    }
    let lambda = rb.weight();
    let p_cols = rb.p_matrix().columns();
    Ok(Cochain::from_fn(k, n, m, |idx| {
        let mut out = zero_vector(m);
        let mut through_q = zero_vector(m);
        // bit set: argument gets P
        for mask in 0u32..(1 << k) {
            let j = mask.count_ones() as usize;
            let units: Vec<Vector> = idx
                .iter()
                .enumerate()
                .map(|(p, &i)| {
                    if mask & (1 << p) != 0 {
                        p_cols[i].clone()
                    } else {
                        unit_vector(n, i)
                    }
                })
                .collect();
            let args: Vec<&[Rational]> = units.iter().map(Vec::as_slice).collect();
            let value = f.eval(&args);
            if j == k {
                add_assign(&mut out, &value);
            } else {
                add_scaled(&mut through_q, &lambda.pow((k - j - 1) as i32), &value);
            }
        }
        crate::linalg::sub_assign(&mut out, &module.apply(&through_q));
        out
    }))
}

/// An element `(f, g)` of `Cᵏ_RBA = Cᵏ(A, M) ⊕ Cᵏ⁻¹(A_P, M̄)`, stored like
/// [`CochainPair`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RBCochainPair(pub CochainPair);

/// `δ(u) = (δ_Hoch u, −u)`, `δ(f, g) = (δ_Hoch f, −δ̄ g − Φᵏ f)`.
pub fn rba_coboundary(rb: &RBStructure, module: &RBBimodule, c: &RBCochainPair) -> Result<RBCochainPair> {
    let c = &c.0;
    let f = crate::cohomology::hochschild_coboundary_over(rb.algebra(), module.actions(), &c.chi)?;
    let g = match &c.phi {
        None => c.chi.scale(&Rational::from(-1)),
        Some(g) => {
            let ap = rb_induced_algebra_unchecked(rb);
            let bar = bar_actions(rb, module);
            let dg = crate::cohomology::hochschild_coboundary_over(&ap, &bar, g)?;
            dg.scale(&Rational::from(-1)).sub(&phi_map(rb, module, &c.chi)?)
        }
    };
    Ok(RBCochainPair(CochainPair::new(f, g)?))
}

fn rb_induced_algebra_unchecked(rb: &RBStructure) -> AlgebraRep {
    let alg = rb.algebra();
    let n = alg.dim();
    let p_cols = rb.p_matrix().columns();
    let products: Vec<Vector> = (0..n * n)
        .map(|t| {
            let (i, j) = (t / n, t % n);
            let mut v = alg.mul(&p_cols[i], &unit_vector(n, j));
            add_assign(&mut v, &alg.mul(&unit_vector(n, i), &p_cols[j]));
            add_scaled(&mut v, rb.weight(), alg.basis_product(i, j));
            v
        })
        .collect();
    AlgebraRep::from_fn(alg.labels().to_vec(), |i, j, k| products[i * n + j][k].clone())
}

pub fn rba_matrix(rb: &RBStructure, module: &RBBimodule, degree: usize, exec: Execution) -> Result<RatMatrix> {
    let (n, m) = (rb.dim(), module.dim());
    let cols = pair_space_dim(n, m, degree);
    assemble(pair_space_dim(n, m, degree + 1), cols, exec, |j| {
        let mut v = zero_vector(cols);
        v[j] = Rational::one();
        let c = RBCochainPair(CochainPair::from_vector(degree, n, m, &v)?);
        Ok(rba_coboundary(rb, module, &c)?.0.to_vector())
    })
}

/// Scalings of the cochain isomorphism `Θ` between the two complexes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaScaling {
    /// `Θ₀(u) = u/2`, `Θ_k(f, g) = (f, 2^{k−2} g)`. Does not commute with
    /// the coboundaries.
    Printed,
    /// `Θ₀(u) = u/2`, `Θ_k(f, g) = (f/2, 2^{k−2} g)`.
    #[default]
    Corrected,
}

fn two_pow(e: i32) -> Rational {
    Rational::from(2).pow(e)
}

fn theta_factors(degree: usize, scaling: ThetaScaling) -> (Rational, Rational) {
    if degree == 0 {
        return (Rational::new(1, 2), Rational::zero());
    }
    let first = match scaling {
        ThetaScaling::Printed => Rational::one(),
        ThetaScaling::Corrected => Rational::new(1, 2),
    };
    (first, two_pow(degree as i32 - 2))
}

pub fn theta_map(c: &RBCochainPair, scaling: ThetaScaling) -> CochainPair {
    let (a, b) = theta_factors(c.0.degree(), scaling);
    CochainPair {
        chi: c.0.chi.scale(&a),
        phi: c.0.phi.as_ref().map(|g| g.scale(&b)),
    }
}

pub fn theta_inverse(c: &CochainPair, scaling: ThetaScaling) -> RBCochainPair {
    let (a, b) = theta_factors(c.degree(), scaling);
    RBCochainPair(CochainPair {
        chi: c.chi.scale(&a.recip()),
        phi: c.phi.as_ref().map(|g| g.scale(&b.recip())),
    })
}

/// Matrix of `Θ_k` in pair coordinates.
pub fn theta_matrix(n: usize, m: usize, degree: usize, scaling: ThetaScaling) -> RatMatrix {
    let (a, b) = theta_factors(degree, scaling);
    let chi_len = tuple_count(n, degree) * m;
    let len = pair_space_dim(n, m, degree);
    let diag: Vector = (0..len).map(|i| if i < chi_len { a.clone() } else { b.clone() }).collect();
    RatMatrix::from_fn(len, len, |r, c| if r == c { diag[r].clone() } else { Rational::zero() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub degree: usize,
    pub dim_rba: usize,
    pub dim_mrba: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
    /// Degrees `k` for which `δ_mRBA ∘ Θ_k = Θ_{k+1} ∘ δ_RBA` holds exactly.
    pub theta_intertwines: Vec<bool>,
}

impl ComparisonTable {
    pub fn dimensions_agree(&self) -> bool {
        self.rows.iter().all(|r| r.dim_rba == r.dim_mrba)
    }

    pub fn holds(&self) -> bool {
        self.dimensions_agree() && self.theta_intertwines.iter().all(|&b| b)
    }
}

/// Computes `dim Hᵏ_RBA((A, P), (M, Q))` and `dim Hᵏ_mRBA` of the transported
/// structure independently for `k ≤ max_degree`, and checks `Θ` on matrices.
pub fn compare_cohomologies(rb: &RBStructure, module: &RBBimodule, max_degree: usize) -> Result<ComparisonTable> {
    compare_cohomologies_with(rb, module, max_degree, Execution::default())
}

pub fn compare_cohomologies_with(
    rb: &RBStructure,
    module: &RBBimodule,
    max_degree: usize,
    exec: Execution,
) -> Result<ComparisonTable> {
    let s = from_rota_baxter(rb)?;
    let lifted = lift_bimodule(rb, module.q_matrix(), module.actions())?;
    let (n, m) = (rb.dim(), module.dim());
    let mut rba_d = Vec::new();
    let mut mrba_d = Vec::new();
    for k in 0..=max_degree {
        rba_d.push(rba_matrix(rb, module, k, exec)?);
        mrba_d.push(mrba_matrix(&s, &lifted, k, PsiConvention::Corrected, exec)?);
    }
    let mut rows = Vec::new();
    let mut theta_intertwines = Vec::new();
    for k in 0..=max_degree {
        let prev = |ds: &[RatMatrix]| k.checked_sub(1).map(|p| ds[p].clone());
        let rba = DegreeData::new(&rba_d[k], prev(&rba_d).as_ref(), exec);
        let mrba = DegreeData::new(&mrba_d[k], prev(&mrba_d).as_ref(), exec);
        rows.push(ComparisonRow {
            degree: k,
            dim_rba: rba.dim_cohomology(),
            dim_mrba: mrba.dim_cohomology(),
        });
        let scaling = ThetaScaling::Corrected;
        let left = mrba_d[k].mul(&theta_matrix(n, m, k, scaling));
        let right = theta_matrix(n, m, k + 1, scaling).mul(&rba_d[k]);
        theta_intertwines.push(left == right);
    }
    Ok(ComparisonTable { rows, theta_intertwines })
}

/// The factor relating the twisted and bar coboundaries, `δ̃ = 2·δ̄`.
pub fn twisted_to_bar_factor() -> Rational {
    Rational::from(2)
}
