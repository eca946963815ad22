//! Abelian extensions `0 → M → E → A → 0` of a modified Rota-Baxter algebra
//! and their correspondence with degree-2 classes.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::{check_morphism, BimoduleRep, MRBStructure};
use crate::cochain::{Cochain, CochainPair};
use crate::cohomology::{hochschild_coboundary, mrba_coboundary, mrba_matrix, psi_map, twisted_coboundary, PsiConvention};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{add_assign, is_zero_vector, sub_assign, unit_vector, RatMatrix, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    pub total: MRBStructure,
    /// `M → E`, an `(n + m) × m` matrix.
    pub inclusion: RatMatrix,
    /// `E → A`, an `n × (n + m)` matrix.
    pub projection: RatMatrix,
    pub base: MRBStructure,
    pub fiber: BimoduleRep,
}

impl ExtensionData {
    /// Names of the violated extension invariants; empty means the data is an
    /// abelian extension.
    pub fn invariant_failures(&self) -> Result<Vec<&'static str>> {
        let (n, m) = (self.base.dim(), self.fiber.dim());
        let e = &self.total;
        let mut out = Vec::new();
        if e.dim() != n + m {
            out.push("dim E = dim A + dim M");
            return Ok(out);
        }
        if !e.validate()?.is_valid() {
            out.push("total structure is a modified Rota-Baxter algebra");
        }
        if !self.projection.mul(&self.inclusion).is_zero() {
            out.push("projection after inclusion is zero");
        }
        if self.inclusion.rank() != m {
            out.push("inclusion is injective");
        }
        if self.projection.rank() != n {
            out.push("projection is surjective");
        }
        if e.r_matrix().mul(&self.inclusion) != self.inclusion.mul(self.fiber.s_matrix()) {
            out.push("inclusion intertwines S and U");
        }
        if self.projection.mul(e.r_matrix()) != self.base.r_matrix().mul(&self.projection) {
            out.push("projection intertwines U and R");
        }
        let image: Vec<Vector> = self.inclusion.columns();
        let alg = e.algebra();
        let in_image = |v: &Vector| self.inclusion.solve(v).map(|x| x.is_some());
        let mut ideal = true;
        let mut abelian = true;
        for u in &image {
            for k in 0..n + m {
                let ek = unit_vector(n + m, k);
                ideal &= in_image(&alg.mul(&ek, u))? && in_image(&alg.mul(u, &ek))?;
            }
            for v in &image {
                abelian &= is_zero_vector(&alg.mul(u, v));
            }
        }
        if !ideal {
            out.push("image of the inclusion is an ideal");
        }
        if !abelian {
            out.push("image of the inclusion has zero multiplication");
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self
                    .projection
                    .mul_vec(&alg.mul(&self.projection_section(i), &self.projection_section(j)));
                if lhs != self.base.algebra().basis_product(i, j) {
                    out.push("projection is an algebra homomorphism");
                    return Ok(out);
                }
            }
        }
        Ok(out)
    }

    fn projection_section(&self, i: usize) -> Vector {
        unit_vector(self.base.dim() + self.fiber.dim(), i)
    }
}

fn check_pair(base: &MRBStructure, fiber: &BimoduleRep, pair: &CochainPair) -> Result<()> {
    let (n, m) = (base.dim(), fiber.dim());
    if pair.degree() != 2 || pair.source_dim() != n || pair.target_dim() != m {
        return Err(Error::DimensionMismatch(format!(
            "expected a degree-2 pair {n}→{m}, got degree {} {}→{}",
            pair.degree(),
            pair.source_dim(),
            pair.target_dim()
        )));
    }
    Ok(())
}

/// Which half of the cocycle condition fails, if any.
fn cocycle_defect(base: &MRBStructure, fiber: &BimoduleRep, pair: &CochainPair) -> Result<Option<String>> {
    if !hochschild_coboundary(base, fiber, &pair.chi)?.is_zero() {
        return Ok(Some("δ_Hoch(χ) ≠ 0".into()));
    }
    let tw = twisted_coboundary(base, fiber, pair.phi())?;
    let psi = psi_map(base, fiber, &pair.chi, PsiConvention::Corrected)?;
    if !tw.add(&psi).is_zero() {
        return Ok(Some("δ̃(Φ) + Ψ²(χ) ≠ 0".into()));
    }
    Ok(None)
}

/// `A ⊕ M` with `(a,u)(b,v) = (ab, av + ub + χ(a,b))` and
/// `U(a, u) = (R(a), S(u) + Φ(a))`.
pub fn extension_from_cocycle(base: &MRBStructure, fiber: &BimoduleRep, pair: &CochainPair) -> Result<ExtensionData> {
    fiber.require_valid(base)?;
    check_pair(base, fiber, pair)?;
    if let Some(why) = cocycle_defect(base, fiber, pair)? {
        return Err(Error::NotACocycle(why));
    }
    let (n, m) = (base.dim(), fiber.dim());
    let algebra = crate::algebra::abelian_extension_algebra(base.algebra(), fiber.actions(), &pair.chi);
    let phi = pair.phi().to_matrix();
    let u = RatMatrix::from_fn(n + m, n + m, |r, c| match (r < n, c < n) {
        (true, true) => base.r_matrix().get(r, c).clone(),
        (false, true) => phi.get(r - n, c).clone(),
        (false, false) => fiber.s_matrix().get(r - n, c - n).clone(),
        (true, false) => Rational::zero(),
    });
    let total = MRBStructure::new(algebra, u, base.weight().clone())?;
    let ext = ExtensionData {
        total,
        inclusion: block_inclusion(n, m),
        projection: block_projection(n, m),
        base: base.clone(),
        fiber: fiber.clone(),
    };
    let failures = ext.invariant_failures()?;
    if !failures.is_empty() {
        return Err(Error::Precondition(format!(
            "extension invariants fail: {}",
            failures.join(", ")
        )));
    }
    Ok(ext)
}

fn block_inclusion(n: usize, m: usize) -> RatMatrix {
    RatMatrix::from_fn(n + m, m, |r, c| if r == n + c { Rational::one() } else { Rational::zero() })
}

fn block_projection(n: usize, m: usize) -> RatMatrix {
    RatMatrix::from_fn(n, n + m, |r, c| if r == c { Rational::one() } else { Rational::zero() })
}

/// Reads `E = A ⊕ M` in block coordinates: the first `base_dim` basis vectors
/// project onto `A`, the remaining ones span `M`. The base and fiber are the
/// corresponding blocks of the total structure.
pub fn split_extension(total: MRBStructure, base_dim: usize) -> Result<ExtensionData> {
    let (n, dim) = (base_dim, total.dim());
    if n > dim {
        return Err(Error::DimensionMismatch(format!(
            "base dimension {n} exceeds total dimension {dim}"
        )));
    }
    let m = dim - n;
    let e = total.algebra();
    let labels = e.labels()[..n].to_vec();
    let base_alg = crate::algebra::AlgebraRep::from_fn(labels, |i, j, k| e.constant(i, j, k).clone());
    let r = RatMatrix::from_fn(n, n, |a, b| total.r_matrix().get(a, b).clone());
    let base = MRBStructure::new(base_alg, r, total.weight().clone())?;
    let fiber_part = |v: Vector| v[n..].to_vec();
    let actions = crate::algebra::BimoduleActions::from_fns(
        n,
        m,
        |i, u| fiber_part(e.basis_product(i, n + u).to_vec()),
        |u, i| fiber_part(e.basis_product(n + u, i).to_vec()),
    );
    let s = RatMatrix::from_fn(m, m, |a, b| total.r_matrix().get(n + a, n + b).clone());
    let fiber = BimoduleRep::new(actions, s)?;
    let ext = ExtensionData {
        total,
        inclusion: block_inclusion(n, m),
        projection: block_projection(n, m),
        base,
        fiber,
    };
    let failures = ext.invariant_failures()?;
    if !failures.is_empty() {
        return Err(Error::Precondition(format!(
            "extension invariants fail: {}",
            failures.join(", ")
        )));
    }
    Ok(ext)
}

/// A right inverse `s` of the projection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    matrix: RatMatrix,
}

impl Section {
    pub fn new(ext: &ExtensionData, matrix: RatMatrix) -> Result<Self> {
        let n = ext.base.dim();
        if (matrix.rows(), matrix.cols()) != (ext.total.dim(), n) {
            return Err(Error::DimensionMismatch(format!(
                "section is {}x{}, expected {}x{n}",
                matrix.rows(),
                matrix.cols(),
                ext.total.dim()
            )));
        }
        if ext.projection.mul(&matrix) != RatMatrix::identity(n) {
            return Err(Error::NotASection);
        }
        Ok(Section { matrix })
    }

    /// `s(a) = (a, θ(a))` for a linear `θ : A → M` given as an `m × n` matrix.
    pub fn shifted(ext: &ExtensionData, theta: &RatMatrix) -> Result<Self> {
        let n = ext.base.dim();
        Section::new(ext, RatMatrix::identity(n).vstack(theta)?)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }
}

/// `s(a) = (a, 0)`.
pub fn canonical_section(ext: &ExtensionData) -> Section {
    let (n, m) = (ext.base.dim(), ext.fiber.dim());
    Section {
        matrix: RatMatrix::identity(n).vstack(&RatMatrix::zeros(m, n)).expect("same width"),
    }
}

fn pull_back(ext: &ExtensionData, v: &[Rational], what: &str) -> Result<Vector> {
    ext.inclusion
        .solve(v)?
        .ok_or_else(|| Error::Precondition(format!("{what} does not land in the image of the inclusion")))
}

/// `χˢ(a, b) = s(a)s(b) − s(ab)` and `Φˢ(a) = U s(a) − s R(a)`, pulled back to `M`.
pub fn cocycle_from_section(ext: &ExtensionData, s: &Section) -> Result<CochainPair> {
    let (n, m) = (ext.base.dim(), ext.fiber.dim());
    let e = ext.total.algebra();
    let sm = &s.matrix;
    let sa: Vec<Vector> = sm.columns();
    let act = ext.fiber.actions();
    let image = ext.inclusion.columns();
    for (i, si) in sa.iter().enumerate() {
        for (u, iu) in image.iter().enumerate() {
            let left = pull_back(ext, &e.mul(si, iu), "s(a)·i(u)")?;
            let right = pull_back(ext, &e.mul(iu, si), "i(u)·s(a)")?;
            if left != act.left_basis(i, u) || right != act.right_basis(u, i) {
                return Err(Error::SectionInducesDifferentBimodule(format!(
                    "actions of basis vector {i} on fiber vector {u} differ"
                )));
            }
        }
    }
    let mut chi_values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut v = e.mul(&sa[i], &sa[j]);
            sub_assign(&mut v, &sm.mul_vec(ext.base.algebra().basis_product(i, j)));
            chi_values.push(pull_back(ext, &v, "χ")?);
        }
    }
    let chi = Cochain::from_fn(2, n, m, |idx| chi_values[idx[0] * n + idx[1]].clone());
    let u = ext.total.r_matrix();
    let mut phi_values = Vec::with_capacity(n);
    for (i, si) in sa.iter().enumerate() {
        let mut v = u.mul_vec(si);
        sub_assign(&mut v, &sm.mul_vec(&ext.base.apply(&unit_vector(n, i))));
        phi_values.push(pull_back(ext, &v, "Φ")?);
    }
    let phi = Cochain::from_fn(1, n, m, |idx| phi_values[idx[0]].clone());
    let pair = CochainPair::new(chi, phi)?;
    if let Some(why) = cocycle_defect(&ext.base, &ext.fiber, &pair)? {
        return Err(Error::Precondition(format!("extracted pair is not a cocycle: {why}")));
    }
    Ok(pair)
}

/// `δ_mRBA(θ, 0)` for `θ : A → M`.
pub fn theta_coboundary(base: &MRBStructure, fiber: &BimoduleRep, theta: &Cochain) -> Result<CochainPair> {
    let zero = Cochain::zero(0, base.dim(), fiber.dim());
    mrba_coboundary(base, fiber, &CochainPair::new(theta.clone(), zero)?, PsiConvention::Corrected)
}

/// Given `c − c' = δ_mRBA(θ, 0)`, the isomorphism `E_c → E_{c'}`,
/// `(a, u) ↦ (a, u + θ(a))`, checked to be a morphism commuting with the
/// inclusions and projections.
pub fn iso_from_cohomologous(
    base: &MRBStructure,
    fiber: &BimoduleRep,
    c: &CochainPair,
    c_prime: &CochainPair,
    theta: &Cochain,
) -> Result<RatMatrix> {
    check_pair(base, fiber, c)?;
    check_pair(base, fiber, c_prime)?;
    let (n, m) = (base.dim(), fiber.dim());
    if (theta.degree(), theta.source_dim(), theta.target_dim()) != (1, n, m) {
        return Err(Error::DimensionMismatch("θ must be a linear map A → M".into()));
    }
    if c.sub(c_prime) != theta_coboundary(base, fiber, theta)? {
        return Err(Error::NotCohomologous);
    }
    let ext = extension_from_cocycle(base, fiber, c)?;
    let ext_prime = extension_from_cocycle(base, fiber, c_prime)?;
    let t = theta.to_matrix();
    let phi = RatMatrix::from_fn(n + m, n + m, |r, col| match (r < n, col < n) {
        (true, true) | (false, false) => {
            if r == col {
                Rational::one()
            } else {
                Rational::zero()
            }
        }
        (false, true) => t.get(r - n, col).clone(),
        (true, false) => Rational::zero(),
    });
    let commutes = phi.mul(&ext.inclusion) == ext_prime.inclusion && ext_prime.projection.mul(&phi) == ext.projection;
    if !commutes || !check_morphism(&ext.total, &ext_prime.total, &phi)? {
        return Err(Error::Precondition(
            "constructed map is not an isomorphism of extensions".into(),
        ));
    }
    Ok(phi)
}

/// Outcome of [`classify_roundtrip`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    /// The canonical section gives back the cocycle exactly.
    pub exact: bool,
    /// A random shifted section gives `c + δ_mRBA(θ, 0)`.
    pub shift_is_coboundary: bool,
    /// The shifted cocycle differs from `c` by an element of the image of
    /// the degree-1 coboundary matrix.
    pub same_class: bool,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.exact && self.shift_is_coboundary && self.same_class
    }
}

pub fn random_theta(n: usize, m: usize, rng: &mut StdRng) -> Cochain {
    let values: Vec<Rational> = (0..n * m).map(|_| Rational::from(rng.gen_range(-3i64..=3))).collect();
    Cochain::from_coeffs(1, n, m, values).expect("shape")
}

/// Builds the extension of `c`, extracts the cocycle back through the
/// canonical section and through a random shifted section.
pub fn classify_roundtrip(base: &MRBStructure, fiber: &BimoduleRep, c: &CochainPair, seed: u64) -> Result<RoundTrip> {
    let ext = extension_from_cocycle(base, fiber, c)?;
    let exact = &cocycle_from_section(&ext, &canonical_section(&ext))? == c;
    let mut rng = StdRng::seed_from_u64(seed);
    let theta = random_theta(base.dim(), fiber.dim(), &mut rng);
    let shifted = cocycle_from_section(&ext, &Section::shifted(&ext, &theta.to_matrix())?)?;
    let diff = shifted.sub(c);
    let shift_is_coboundary = diff == theta_coboundary(base, fiber, &theta)?;
    let d1 = mrba_matrix(base, fiber, 1, PsiConvention::Corrected, Execution::default())?;
    let same_class = d1.solve(&diff.to_vector())?.is_some();
    Ok(RoundTrip {
        exact,
        shift_is_coboundary,
        same_class,
    })
}

/// The product `(a,u)(b,v) = (ab, av + ua + χ(a,b))` read literally; it
/// depends on the first factor twice, so it is not bilinear.
pub fn literal_product(base: &MRBStructure, fiber: &BimoduleRep, chi: &Cochain, x: &[Rational], y: &[Rational]) -> Vector {
    let n = base.dim();
    let (a, u) = x.split_at(n);
    let (b, v) = y.split_at(n);
    let act = fiber.actions();
    let mut head = base.algebra().mul(a, b);
    let mut tail = act.left_act(a, v);
    add_assign(&mut tail, &act.right_act(u, a));
    add_assign(&mut tail, &chi.eval(&[a, b]));
    head.extend(tail);
    head
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint_bimodule, semidirect_product};
    use crate::cohomology::cohomology_report;
    use crate::instances::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn k1_setup() -> (MRBStructure, BimoduleRep) {
        let s = k1_mrb();
        let m = adjoint_bimodule(&s).unwrap();
        (s, m)
    }

    fn chi_e(value: i64, phi: i64) -> CochainPair {
        CochainPair::new(
            Cochain::from_fn(2, 1, 1, |_| vec![q(value)]),
            Cochain::from_fn(1, 1, 1, |_| vec![q(phi)]),
        )
        .unwrap()
    }

    #[test]
    fn zero_cocycle_gives_semidirect_product() {
        let (s, m) = k1_setup();
        let ext = extension_from_cocycle(&s, &m, &CochainPair::zero(2, 1, 1)).unwrap();
        assert_eq!(
            ext.total.algebra().constants(),
            semidirect_product(&s, &m).unwrap().algebra().constants()
        );
        assert_eq!(
            cocycle_from_section(&ext, &canonical_section(&ext)).unwrap(),
            CochainPair::zero(2, 1, 1)
        );
    }

    #[test]
    fn k1_examples() {
        let (s, m) = k1_setup();
        let ext = extension_from_cocycle(&s, &m, &chi_e(1, 0)).unwrap();
        assert_eq!(ext.total.algebra().basis_product(0, 0), &[q(1), q(1)]);
        assert_eq!(ext.total.r_matrix(), &RatMatrix::identity(2));
        assert!(ext.total.validate().unwrap().is_valid());
        assert!(matches!(
            extension_from_cocycle(&s, &m, &chi_e(1, 1)),
            Err(Error::NotACocycle(_))
        ));
    }

    #[test]
    fn split_recovers_blocks() {
        let s = d2_mrb();
        let m = adjoint_bimodule(&s).unwrap();
        let z2 = cohomology_report(&s, &m, 2, PsiConvention::Corrected).unwrap();
        for c in &z2.cocycle_basis {
            let ext = extension_from_cocycle(&s, &m, c).unwrap();
            let split = split_extension(ext.total.clone(), 2).unwrap();
            assert_eq!(split.base.algebra().constants(), s.algebra().constants());
            assert_eq!(split.base.r_matrix(), s.r_matrix());
            assert_eq!(&split.fiber, &m);
            assert_eq!(&cocycle_from_section(&split, &canonical_section(&split)).unwrap(), c);
        }
        assert!(matches!(split_extension(k1_mrb(), 2), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn canonical_section_shape() {
        let (s, m) = k1_setup();
        let ext = extension_from_cocycle(&s, &m, &chi_e(1, 0)).unwrap();
        let sec = canonical_section(&ext);
        assert_eq!(sec.matrix(), &RatMatrix::from_i64(&[&[1], &[0]]));
        assert_eq!(ext.projection.mul(sec.matrix()), RatMatrix::identity(1));
        assert_ne!(sec.matrix().mul(&ext.projection), RatMatrix::identity(2));
        assert!(matches!(
            Section::new(&ext, RatMatrix::from_i64(&[&[2], &[0]])),
            Err(Error::NotASection)
        ));
    }

    #[test]
    fn shifted_section_moves_by_coboundary() {
        let (s, m) = k1_setup();
        let c = chi_e(1, 0);
        let ext = extension_from_cocycle(&s, &m, &c).unwrap();
        let theta = Cochain::from_fn(1, 1, 1, |_| vec![q(3)]);
        let got = cocycle_from_section(&ext, &Section::shifted(&ext, &theta.to_matrix()).unwrap()).unwrap();
        assert_eq!(got, c.add(&theta_coboundary(&s, &m, &theta).unwrap()));
        assert_eq!(got.chi.coeffs(), &[q(4)]);
    }

    #[test]
    fn iso_examples() {
        let (s, m) = k1_setup();
        let c = chi_e(1, 0);
        let zero = CochainPair::zero(2, 1, 1);
        let id = Cochain::from_fn(1, 1, 1, |_| vec![q(1)]);
        let phi = iso_from_cohomologous(&s, &m, &c, &zero, &id).unwrap();
        assert_eq!(phi, RatMatrix::from_i64(&[&[1, 0], &[1, 1]]));
        assert_eq!(
            iso_from_cohomologous(&s, &m, &c, &c, &Cochain::zero(1, 1, 1)).unwrap(),
            RatMatrix::identity(2)
        );
        assert!(matches!(
            iso_from_cohomologous(&s, &m, &c, &zero, &id.scale(&q(2))),
            Err(Error::NotCohomologous)
        ));

        // (a, u) ↦ (a, u − θ(a)) is not a morphism for the same data
        let e = extension_from_cocycle(&s, &m, &c).unwrap();
        let e0 = extension_from_cocycle(&s, &m, &zero).unwrap();
        let minus = RatMatrix::from_i64(&[&[1, 0], &[-1, 1]]);
        assert!(!check_morphism(&e.total, &e0.total, &minus).unwrap());
    }

    #[test]
    fn roundtrips_over_z2_bases() {
        for s in [k1_mrb(), d2_mrb()] {
            let m = adjoint_bimodule(&s).unwrap();
            let report = cohomology_report(&s, &m, 2, PsiConvention::Corrected).unwrap();
            for (k, c) in report.cocycle_basis.iter().enumerate() {
                assert!(classify_roundtrip(&s, &m, c, k as u64).unwrap().holds());
            }
        }
    }

    #[test]
    fn literal_product_is_not_bilinear() {
        let s = d2_mrb();
        let m = adjoint_bimodule(&s).unwrap();
        let chi = Cochain::zero(2, 2, 2);
        let x = [q(1), q(0), q(1), q(0)];
        let y = vec![q(0), q(1), q(0), q(0)];
        let sum = literal_product(&s, &m, &chi, &[q(1), q(1), q(1), q(0)], &y);
        let mut parts = literal_product(&s, &m, &chi, &x[..], &y);
        add_assign(&mut parts, &literal_product(&s, &m, &chi, &[q(0), q(1), q(0), q(0)], &y));
        assert_ne!(sum, parts);
    }
}
