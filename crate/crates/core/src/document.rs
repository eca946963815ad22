//! The JSON instance document read and written by the command-line tool.
//!
//! Every tensor is a list of sparse records whose last entry is a rational
//! written `"p/q"`; absent records are zero.
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "algebra": { "dim": 1, "labels": ["e"], "mult": [[0, 0, 0, "1"]] },
//!   "operator": { "matrix": [[0, 0, "1"]] },
//!   "weight": "-1"
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{adjoint_bimodule, AlgebraRep, BimoduleActions, BimoduleRep, MRBStructure, RBBimodule, RBStructure};
use crate::cochain::{Cochain, CochainPair};
use crate::deformation::TruncatedDeformation;
use crate::error::{Error, Result};
use crate::extensions::{split_extension, ExtensionData};
use crate::linalg::{RatMatrix, Rational};

pub const FORMAT_VERSION: &str = "1";

/// `[i, j, k, value]`.
pub type Record3 = (usize, usize, usize, Rational);
/// `[row, col, value]`.
pub type Record2 = (usize, usize, Rational);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub format_version: String,
    pub algebra: AlgebraSection,
    pub operator: OperatorSection,
    pub weight: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rb: Option<RbSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionSection>,
}

/// `mult` records are `[i, j, k, c]` for `e_i · e_j ∋ c e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSection {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub mult: Vec<Record3>,
}

/// `matrix` records are `[row, col, c]`; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSection {
    pub matrix: Vec<Record2>,
}

/// `left` records `[i, u, v, c]` mean `e_i · m_u ∋ c m_v`; `right` records
/// `[u, i, v, c]` mean `m_u · e_i ∋ c m_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSection {
    pub dim: usize,
    pub left: Vec<Record3>,
    pub right: Vec<Record3>,
    pub s_matrix: Vec<Record2>,
}

/// A Rota-Baxter operator `P` of weight `λ` on the same algebra; `q_matrix`
/// is the operator on `module` (the adjoint with `Q = P` when absent).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RbSection {
    pub p_matrix: Vec<Record2>,
    pub lambda: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_matrix: Option<Vec<Record2>>,
}

/// `mu[q - 1]` and `r[q - 1]` hold `μ_q` and `R_q` for `1 ≤ q ≤ order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationSection {
    pub order: usize,
    pub mu: Vec<Vec<Record3>>,
    pub r: Vec<Vec<Record2>>,
}

/// A degree-2 pair with values in `module`: `chi` records `[i, j, v, c]`,
/// `phi` records `[i, v, c]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSection {
    pub chi: Vec<Record3>,
    pub phi: Vec<Record2>,
}

/// Marks the document's algebra as an extension `E = A ⊕ M`: basis vectors
/// `0..base_dim` map onto `A` and the rest span `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSection {
    pub base_dim: usize,
}

fn check_records3(what: &str, records: &[Record3], bounds: [usize; 3]) -> Result<()> {
    let mut seen = BTreeMap::new();
    for (pos, (a, b, c, _)) in records.iter().enumerate() {
        let idx = [*a, *b, *c];
        if let Some(slot) = idx.iter().zip(bounds).position(|(&x, bound)| x >= bound) {
            return Err(Error::Range(format!(
                "{what}[{pos}]: index {} at position {slot} is out of range (bound {})",
                idx[slot], bounds[slot]
            )));
        }
        if seen.insert(idx, pos).is_some() {
            return Err(Error::Range(format!("{what}[{pos}]: duplicate record {idx:?}")));
        }
    }
    Ok(())
}

fn check_records2(what: &str, records: &[Record2], rows: usize, cols: usize) -> Result<()> {
    let widened: Vec<Record3> = records.iter().map(|(r, c, x)| (*r, *c, 0, x.clone())).collect();
    check_records3(what, &widened, [rows, cols, 1])
}

fn matrix_from(records: &[Record2], rows: usize, cols: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols);
    for (r, c, x) in records {
        m.set(*r, *c, x.clone());
    }
    m
}

fn matrix_records(m: &RatMatrix) -> Vec<Record2> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m.get(r, c).is_zero() {
                out.push((r, c, m.get(r, c).clone()));
            }
        }
    }
    out
}

/// Nonzero entries of a flat `d0 × d1 × d2` tensor, in storage order.
fn tensor_records(flat: &[Rational], d1: usize, d2: usize) -> Vec<Record3> {
    flat.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(p, x)| (p / (d1 * d2), (p / d2) % d1, p % d2, x.clone()))
        .collect()
}

fn tensor_from(records: &[Record3], d1: usize, d2: usize, len: usize) -> Vec<Rational> {
    let mut flat = vec![Rational::zero(); len];
    for (a, b, c, x) in records {
        flat[(a * d1 + b) * d2 + c] = x.clone();
    }
    flat
}

/// Parses and range-checks a document. Errors carry the JSON path and, for
/// syntax errors, the line and column.
pub fn parse(text: &str) -> Result<InstanceDocument> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: InstanceDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Parse(format!("at `{path}`: {}", e.into_inner()))
    })?;
    doc.check()?;
    Ok(doc)
}

/// Pretty-printed JSON with a trailing newline.
pub fn serialize(doc: &InstanceDocument) -> String {
    to_text(&serde_json::to_value(doc).expect("documents always serialize"))
}

/// Indented JSON in which arrays of scalars stay on one line, so every sparse
/// record occupies a single line.
pub fn to_text(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out.push('\n');
    out
}

fn is_flat(value: &Value) -> bool {
    match value {
        Value::Array(items) => items.iter().all(|v| !v.is_array() && !v.is_object()),
        Value::Object(map) => map.is_empty(),
        _ => true,
    }
}

fn write_value(out: &mut String, value: &Value, depth: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match value {
        Value::Array(items) if is_flat(value) => {
            let parts: Vec<String> = items.iter().map(|v| v.to_string()).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

impl InstanceDocument {
    /// Version, index ranges, duplicate records and cross-section shapes.
    pub fn check(&self) -> Result<()> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {:?}, expected {FORMAT_VERSION:?}",
                self.format_version
            )));
        }
        let n = self.algebra.dim;
        if !self.algebra.labels.is_empty() && self.algebra.labels.len() != n {
            return Err(Error::Range(format!(
                "algebra.labels has {} entries for dimension {n}",
                self.algebra.labels.len()
            )));
        }
        check_records3("algebra.mult", &self.algebra.mult, [n; 3])?;
        check_records2("operator.matrix", &self.operator.matrix, n, n)?;
        let m = self.module.as_ref().map_or(n, |module| module.dim);
        if let Some(module) = &self.module {
            check_records3("module.left", &module.left, [n, m, m])?;
            check_records3("module.right", &module.right, [m, n, m])?;
            check_records2("module.s_matrix", &module.s_matrix, m, m)?;
        }
        if let Some(rb) = &self.rb {
            check_records2("rb.p_matrix", &rb.p_matrix, n, n)?;
            if let Some(q) = &rb.q_matrix {
                check_records2("rb.q_matrix", q, m, m)?;
            }
        }
        if let Some(d) = &self.deformation {
            if d.mu.len() != d.order || d.r.len() != d.order {
                return Err(Error::Range(format!(
                    "deformation of order {} lists {} μ and {} R terms",
                    d.order,
                    d.mu.len(),
                    d.r.len()
                )));
            }
            for (q, (mu, r)) in d.mu.iter().zip(&d.r).enumerate() {
                check_records3(&format!("deformation.mu[{q}]"), mu, [n; 3])?;
                check_records2(&format!("deformation.r[{q}]"), r, n, n)?;
            }
        }
        if let Some(c) = &self.cocycle {
            check_records3("cocycle.chi", &c.chi, [n, n, m])?;
            check_records2("cocycle.phi", &c.phi, n, m)?;
        }
        if let Some(ext) = &self.extension {
            if ext.base_dim > n {
                return Err(Error::Range(format!(
                    "extension.base_dim {} exceeds algebra.dim {n}",
                    ext.base_dim
                )));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> Result<AlgebraRep> {
        let n = self.algebra.dim;
        let labels = if self.algebra.labels.is_empty() {
            (0..n).map(|i| format!("e{i}")).collect()
        } else {
            self.algebra.labels.clone()
        };
        AlgebraRep::new(labels, tensor_from(&self.algebra.mult, n, n, n * n * n))
    }

    /// The algebra, operator and weight; shapes only, axioms unchecked.
    pub fn mrb(&self) -> Result<MRBStructure> {
        let n = self.algebra.dim;
        MRBStructure::new(self.algebra()?, matrix_from(&self.operator.matrix, n, n), self.weight.clone())
    }

    fn actions(&self) -> Option<BimoduleActions> {
        let (n, module) = (self.algebra.dim, self.module.as_ref()?);
        let m = module.dim;
        let left = tensor_from(&module.left, m, m, n * m * m);
        let right = tensor_from(&module.right, n, m, m * n * m);
        Some(BimoduleActions::new(n, m, left, right).expect("sizes follow from the dimensions"))
    }

    /// The `module` section, or the adjoint bimodule when it is absent.
    pub fn module_or_adjoint(&self) -> Result<BimoduleRep> {
        let Some(actions) = self.actions() else {
            return adjoint_bimodule(&self.mrb()?);
        };
        let module = self.module.as_ref().expect("actions imply a module");
        BimoduleRep::new(actions, matrix_from(&module.s_matrix, module.dim, module.dim))
    }

    pub fn rb(&self) -> Result<Option<RBStructure>> {
        let Some(rb) = &self.rb else { return Ok(None) };
        let n = self.algebra.dim;
        RBStructure::new(self.algebra()?, matrix_from(&rb.p_matrix, n, n), rb.lambda.clone()).map(Some)
    }

    /// The module with `rb.q_matrix`, or the adjoint with `Q = P`.
    pub fn rb_module(&self) -> Result<Option<RBBimodule>> {
        let (Some(rb), Some(section)) = (self.rb()?, &self.rb) else {
            return Ok(None);
        };
        let Some(actions) = self.actions() else {
            return Ok(Some(RBBimodule::adjoint(&rb)));
        };
        let Some(q) = &section.q_matrix else {
            return Err(Error::Precondition(
                "rb.q_matrix is required when a module section is present".into(),
            ));
        };
        let m = actions.dim();
        RBBimodule::new(actions, matrix_from(q, m, m)).map(Some)
    }

    pub fn deformation(&self, base: &MRBStructure) -> Result<Option<TruncatedDeformation>> {
        let Some(d) = &self.deformation else { return Ok(None) };
        let n = self.algebra.dim;
        let mu =
            d.mu.iter()
                .map(|recs| Cochain::from_coeffs(2, n, n, tensor_from(recs, n, n, n * n * n)))
                .collect::<Result<Vec<_>>>()?;
        let r = d.r.iter().map(|recs| matrix_from(recs, n, n)).collect();
        TruncatedDeformation::new(base, mu, r).map(Some)
    }

    pub fn cocycle(&self) -> Result<Option<CochainPair>> {
        let Some(c) = &self.cocycle else { return Ok(None) };
        let n = self.algebra.dim;
        let m = self.module.as_ref().map_or(n, |module| module.dim);
        let chi = Cochain::from_coeffs(2, n, m, tensor_from(&c.chi, n, m, n * n * m))?;
        let widened: Vec<Record3> = c.phi.iter().map(|(i, v, x)| (0, *i, *v, x.clone())).collect();
        let phi = Cochain::from_coeffs(1, n, m, tensor_from(&widened, n, m, n * m))?;
        CochainPair::new(chi, phi).map(Some)
    }

    pub fn extension(&self) -> Result<Option<ExtensionData>> {
        let Some(ext) = &self.extension else { return Ok(None) };
        split_extension(self.mrb()?, ext.base_dim).map(Some)
    }

    /// A document carrying only the algebra, operator and weight.
    pub fn from_mrb(s: &MRBStructure) -> Self {
        let n = s.dim();
        InstanceDocument {
            format_version: FORMAT_VERSION.into(),
            algebra: AlgebraSection {
                dim: n,
                labels: s.algebra().labels().to_vec(),
                mult: tensor_records(s.algebra().constants(), n, n),
            },
            operator: OperatorSection {
                matrix: matrix_records(s.r_matrix()),
            },
            weight: s.weight().clone(),
            module: None,
            rb: None,
            deformation: None,
            cocycle: None,
            extension: None,
        }
    }

    pub fn with_module(mut self, module: &BimoduleRep) -> Self {
        let (n, m) = (self.algebra.dim, module.dim());
        let actions = module.actions();
        self.module = Some(ModuleSection {
            dim: m,
            left: tensor_records(actions.left_tensor(), m, m),
            right: tensor_records(actions.right_tensor(), n, m),
            s_matrix: matrix_records(module.s_matrix()),
        });
        self
    }

    pub fn with_cocycle(mut self, c: &CochainPair) -> Self {
        let m = c.target_dim();
        self.cocycle = Some(CocycleSection {
            chi: tensor_records(c.chi.coeffs(), c.source_dim(), m),
            phi: tensor_records(c.phi().coeffs(), c.source_dim(), m)
                .into_iter()
                .map(|(_, i, v, x)| (i, v, x))
                .collect(),
        });
        self
    }

    pub fn with_deformation(mut self, d: &TruncatedDeformation) -> Self {
        let n = self.algebra.dim;
        self.deformation = Some(DeformationSection {
            order: d.order(),
            mu: (1..=d.order()).map(|q| tensor_records(d.mu(q).coeffs(), n, n)).collect(),
            r: (1..=d.order()).map(|q| matrix_records(d.r(q))).collect(),
        });
        self
    }

    /// The total structure of an extension, tagged with its base dimension.
    pub fn from_extension(ext: &ExtensionData) -> Self {
        let mut doc = Self::from_mrb(&ext.total);
        doc.extension = Some(ExtensionSection {
            base_dim: ext.base.dim(),
        });
        doc
    }
}
