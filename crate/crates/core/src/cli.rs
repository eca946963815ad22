//! The `mrba` command-line surface.
//!
//! Exit codes: 0 on success, 1 when the input is mathematically invalid (the
//! report says why), 2 on unreadable files, malformed documents or bad flags.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{from_rota_baxter, graph_subalgebra_check, ValidationReport};
use crate::bridge::compare_cohomologies;
use crate::cochain::{decode_tuple, tuple_count, Cochain, CochainPair};
use crate::cohomology::{cohomology_report, PsiConvention};
use crate::deformation::{
    check_deformation, check_infinitesimal_cocycle, trivialize_order_one, Trivialization, TruncatedDeformation,
};
use crate::document::{self, InstanceDocument};
use crate::error::Error;
use crate::extensions::{canonical_section, cocycle_from_section, extension_from_cocycle};
use crate::linalg::{RatMatrix, Rational};

pub const MAX_COHOMOLOGY_DEGREE: usize = 3;

#[derive(Parser, Debug)]
#[command(
    name = "mrba",
    version,
    about = "Exact computations with finite-dimensional modified Rota-Baxter algebras"
)]
struct Cli {
    /// Sign convention for the Ψ maps in the coboundary.
    #[arg(long, global = true, value_enum, default_value_t = Convention::Corrected)]
    convention: Convention,
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Convention {
    Printed,
    Corrected,
}

impl From<Convention> for PsiConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Printed => PsiConvention::Printed,
            Convention::Corrected => PsiConvention::Corrected,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every axiom of the algebra, operator, module and Rota-Baxter data.
    Validate { file: PathBuf },
    /// Cohomology dimensions and class representatives in degrees 0..=K.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Compare Rota-Baxter cohomology of the `rb` section with the
    /// cohomology of the induced modified Rota-Baxter structure.
    RbaCompare {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Check the deformation equations up to the given order.
    DeformCheck {
        file: PathBuf,
        /// Defaults to the order stored in the document.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Try to remove the order-one term of the deformation by an equivalence.
    Trivialize { file: PathBuf },
    /// Build the abelian extension of the `cocycle` section; prints a document.
    Extend { file: PathBuf },
    /// Recover the cocycle of an extension document through the canonical section.
    ExtractCocycle { file: PathBuf },
    /// Test the graph-subalgebra criterion for weight -1.
    GraphCheck { file: PathBuf },
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Range(_) => Failure::Usage(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

struct Report {
    ok: bool,
    text: String,
    json: Value,
}

type Outcome = std::result::Result<Report, Failure>;

/// Runs one command line (including the program name) and returns the exit
/// code with the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let json = cli.json;
    match dispatch(cli) {
        Ok(report) => {
            let out = if json { document::to_text(&report.json) } else { report.text };
            (if report.ok { 0 } else { 1 }, out)
        }
        Err(Failure::Math(msg)) if json => (1, format!("{}\n", json!({ "error": msg }))),
        Err(Failure::Math(msg)) => (1, format!("error: {msg}\n")),
        Err(Failure::Usage(msg)) => (2, format!("error: {msg}\n")),
    }
}

fn dispatch(cli: Cli) -> Outcome {
    let convention = PsiConvention::from(cli.convention);
    match cli.command {
        Command::Validate { file } => validate(&load(&file)?),
        Command::Cohomology { file, max_degree } => cohomology(&load(&file)?, max_degree, convention),
        Command::RbaCompare { file, max_degree } => rba_compare(&load(&file)?, max_degree),
        Command::DeformCheck { file, order } => deform_check(&load(&file)?, order),
        Command::Trivialize { file } => trivialize(&load(&file)?),
        Command::Extend { file } => extend(&load(&file)?),
        Command::ExtractCocycle { file } => extract_cocycle(&load(&file)?),
        Command::GraphCheck { file } => graph_check(&load(&file)?),
    }
}

fn load(path: &Path) -> std::result::Result<InstanceDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    document::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn require<T>(section: Option<T>, name: &str) -> std::result::Result<T, Failure> {
    section.ok_or_else(|| Failure::Usage(format!("document has no `{name}` section")))
}

fn violations_json(report: &ValidationReport) -> Value {
    serde_json::to_value(&report.violations).expect("violations serialize")
}

fn status_line(out: &mut String, name: &str, report: &ValidationReport, suffix: &str) {
    if report.is_valid() {
        let _ = writeln!(out, "{name}: OK{suffix}");
        return;
    }
    let _ = writeln!(out, "{name}: FAILED{suffix}");
    for v in &report.violations {
        let _ = writeln!(out, "  {} at {:?}", v.axiom.name(), v.indices);
    }
}

fn validate(doc: &InstanceDocument) -> Outcome {
    let s = doc.mrb()?;
    let mut text = String::new();
    let assoc = s.algebra().validate();
    status_line(&mut text, "associativity", &assoc, "");
    let mut out = json!({ "associativity": assoc.is_valid(), "associativity_violations": violations_json(&assoc) });
    if !assoc.is_valid() {
        return Ok(Report {
            ok: false,
            text,
            json: out,
        });
    }
    let identity = s.validate()?;
    status_line(
        &mut text,
        "modified Rota-Baxter identity",
        &identity,
        &format!(" (weight {})", s.weight()),
    );
    out["modified_rota_baxter"] = json!(identity.is_valid());
    out["weight"] = json!(s.weight());
    out["identity_violations"] = violations_json(&identity);
    let mut ok = identity.is_valid();
    if doc.module.is_some() && ok {
        let module = doc.module_or_adjoint()?.validate(&s)?;
        status_line(&mut text, "bimodule axioms", &module, "");
        out["module"] = json!(module.is_valid());
        out["module_violations"] = violations_json(&module);
        ok &= module.is_valid();
    }
    if let Some(rb) = doc.rb()? {
        let report = rb.validate()?;
        status_line(
            &mut text,
            "Rota-Baxter identity",
            &report,
            &format!(" (weight {})", rb.weight()),
        );
        out["rota_baxter"] = json!(report.is_valid());
        ok &= report.is_valid();
        if report.is_valid() {
            let induced = from_rota_baxter(&rb)?;
            let matches = induced.r_matrix() == s.r_matrix() && induced.weight() == s.weight();
            let _ = writeln!(
                text,
                "operator equals λ·id + 2P with weight -λ²: {}",
                if matches { "yes" } else { "no" }
            );
            out["operator_is_induced"] = json!(matches);
        }
    }
    Ok(Report { ok, text, json: out })
}

fn labels(doc: &InstanceDocument) -> Vec<String> {
    match doc.algebra() {
        Ok(a) => a.labels().to_vec(),
        Err(_) => Vec::new(),
    }
}

fn vector_text(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(Rational::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// `name(a,b) = [..]` for every basis tuple with a nonzero value.
fn cochain_text(name: &str, f: &Cochain, labels: &[String]) -> Vec<String> {
    let (n, k) = (f.source_dim(), f.degree());
    (0..tuple_count(n, k))
        .filter(|&t| f.tuple_value(t).iter().any(|x| !x.is_zero()))
        .map(|t| {
            let args: Vec<&str> = decode_tuple(n, k, t).into_iter().map(|i| labels[i].as_str()).collect();
            format!("{name}({}) = {}", args.join(","), vector_text(f.tuple_value(t)))
        })
        .collect()
}

fn pair_text(c: &CochainPair, labels: &[String]) -> String {
    let mut parts = cochain_text("χ", &c.chi, labels);
    if let Some(phi) = &c.phi {
        parts.extend(cochain_text("Φ", phi, labels));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    }
}

fn cohomology(doc: &InstanceDocument, max_degree: usize, convention: PsiConvention) -> Outcome {
    if max_degree > MAX_COHOMOLOGY_DEGREE {
        return Err(Failure::Usage(format!("--max-degree is capped at {MAX_COHOMOLOGY_DEGREE}")));
    }
    let s = doc.mrb()?;
    let m = doc.module_or_adjoint()?;
    let names = labels(doc);
    let reports = (0..=max_degree)
        .map(|k| cohomology_report(&s, &m, k, convention))
        .collect::<crate::Result<Vec<_>>>()?;
    let mut text = format!("convention: {}\n", convention.name());
    let _ = writeln!(text, "{:<8}{:>8}{:>8}{:>8}", "degree", "dim Z", "dim B", "dim H");
    for r in &reports {
        let _ = writeln!(
            text,
            "{:<8}{:>8}{:>8}{:>8}",
            r.degree, r.dim_cocycles, r.dim_coboundaries, r.dim_cohomology
        );
    }
    for r in reports.iter().filter(|r| r.dim_cohomology > 0) {
        let _ = writeln!(text, "H^{} representatives:", r.degree);
        for (i, c) in r.class_representatives.iter().enumerate() {
            let _ = writeln!(text, "  [{i}] {}", pair_text(c, &names));
        }
    }
    let json = json!({ "convention": convention.name(), "degrees": reports });
    Ok(Report { ok: true, text, json })
}

fn rba_compare(doc: &InstanceDocument, max_degree: usize) -> Outcome {
    if max_degree > MAX_COHOMOLOGY_DEGREE {
        return Err(Failure::Usage(format!("--max-degree is capped at {MAX_COHOMOLOGY_DEGREE}")));
    }
    let rb = require(doc.rb()?, "rb")?;
    let module = doc.rb_module()?.expect("rb section present");
    let table = compare_cohomologies(&rb, &module, max_degree)?;
    let mut text = format!("{:<8}{:>10}{:>11}\n", "degree", "dim H_RBA", "dim H_mRBA");
    for r in &table.rows {
        let _ = writeln!(text, "{:<8}{:>10}{:>11}", r.degree, r.dim_rba, r.dim_mrba);
    }
    for (k, ok) in table.theta_intertwines.iter().enumerate() {
        let _ = writeln!(
            text,
            "Θ intertwines the coboundaries in degree {k}: {}",
            if *ok { "yes" } else { "no" }
        );
    }
    let _ = writeln!(text, "comparison: {}", if table.holds() { "OK" } else { "FAILED" });
    let json = json!({ "rows": table.rows, "theta_intertwines": table.theta_intertwines, "holds": table.holds() });
    Ok(Report {
        ok: table.holds(),
        text,
        json,
    })
}

/// The first `order` terms of the document's deformation.
fn truncated(doc: &InstanceDocument, order: Option<usize>) -> std::result::Result<(TruncatedDeformation, usize), Failure> {
    let s = doc.mrb()?;
    let full = require(doc.deformation(&s)?, "deformation")?;
    let order = order.unwrap_or(full.order());
    if order > full.order() {
        return Err(Failure::Usage(format!(
            "--order {order} exceeds the document's deformation order {}",
            full.order()
        )));
    }
    let mu = (1..=order).map(|q| full.mu(q).clone()).collect();
    let r = (1..=order).map(|q| full.r(q).clone()).collect();
    Ok((TruncatedDeformation::new(&s, mu, r)?, order))
}

fn deform_check(doc: &InstanceDocument, order: Option<usize>) -> Outcome {
    let s = doc.mrb()?;
    let names = labels(doc);
    let (d, order) = truncated(doc, order)?;
    let report = check_deformation(&s, &d)?;
    let mut text = String::new();
    for q in 1..=order {
        let line = match &report.first_failure {
            Some(f) if f.order == q => {
                let at: Vec<&str> = f.indices.iter().map(|&i| names[i].as_str()).collect();
                let eq = match f.equation {
                    crate::deformation::DeformationEquation::Associativity => "associativity",
                    crate::deformation::DeformationEquation::Operator => "operator",
                };
                format!("FAILED: {eq} equation at ({})", at.join(", "))
            }
            _ if report.valid_orders.contains(&q) => "OK".into(),
            _ => "FAILED".into(),
        };
        let _ = writeln!(text, "order {q}: {line}");
    }
    let mut json = serde_json::to_value(&report).expect("report serializes");
    if order >= 1 && report.valid_orders.contains(&1) {
        let cocycle = check_infinitesimal_cocycle(&s, &d)?;
        let _ = writeln!(text, "infinitesimal is a 2-cocycle: {}", if cocycle { "yes" } else { "no" });
        json["infinitesimal_is_cocycle"] = json!(cocycle);
    }
    Ok(Report {
        ok: report.is_valid(),
        text,
        json,
    })
}

fn matrix_text(m: &RatMatrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|r| vector_text(m.row(r))).collect();
    format!("[{}]", rows.join(", "))
}

fn trivialize(doc: &InstanceDocument) -> Outcome {
    let s = doc.mrb()?;
    let names = labels(doc);
    let (d, _) = truncated(doc, Some(1))?;
    let outcome = trivialize_order_one(&s, &d)?;
    let json = serde_json::to_value(&outcome).expect("outcome serializes");
    let (ok, text) = match &outcome {
        Trivialization::Trivialized {
            equivalence,
            deformation,
        } => {
            let vanishes = deformation.mu(1).is_zero() && deformation.r(1).is_zero();
            (
                true,
                format!(
                    "trivialized: φ₁ = {}\ntransported order-1 terms vanish: {}\n",
                    matrix_text(equivalence.phi(1)),
                    if vanishes { "yes" } else { "no" }
                ),
            )
        }
        Trivialization::Obstructed { class_representative } => (
            false,
            format!(
                "obstructed: the infinitesimal is not a coboundary\nclass: {}\n",
                pair_text(class_representative, &names)
            ),
        ),
    };
    Ok(Report { ok, text, json })
}

fn extend(doc: &InstanceDocument) -> Outcome {
    let s = doc.mrb()?;
    let m = doc.module_or_adjoint()?;
    let c = require(doc.cocycle()?, "cocycle")?;
    let ext = extension_from_cocycle(&s, &m, &c)?;
    let out = InstanceDocument::from_extension(&ext);
    Ok(Report {
        ok: true,
        text: document::serialize(&out),
        json: serde_json::to_value(&out).expect("documents serialize"),
    })
}

fn extract_cocycle(doc: &InstanceDocument) -> Outcome {
    let ext = require(doc.extension()?, "extension")?;
    let c = cocycle_from_section(&ext, &canonical_section(&ext))?;
    let out = InstanceDocument::from_mrb(&ext.base).with_module(&ext.fiber).with_cocycle(&c);
    let names = ext.base.algebra().labels().to_vec();
    Ok(Report {
        ok: true,
        text: format!("cocycle: {}\n{}", pair_text(&c, &names), document::serialize(&out)),
        json: serde_json::to_value(&out).expect("documents serialize"),
    })
}

fn graph_check(doc: &InstanceDocument) -> Outcome {
    let s = doc.mrb()?;
    if s.weight() != &Rational::from(-1) {
        return Ok(Report {
            ok: false,
            text: "graph criterion requires weight -1\n".into(),
            json: json!({ "error": "graph criterion requires weight -1" }),
        });
    }
    let g = graph_subalgebra_check(s.algebra(), s.r_matrix())?;
    let identity = s.validate()?.is_valid();
    let names = labels(doc);
    let mut text = format!(
        "graph of R̂ is a subalgebra of A ⊕ A: {}\n",
        if g.closed { "yes" } else { "no" }
    );
    if let Some((i, j)) = g.witness {
        let _ = writeln!(text, "witness: ({}, {})", names[i], names[j]);
    }
    let _ = writeln!(
        text,
        "agrees with the modified Rota-Baxter identity: {}",
        if g.closed == identity { "yes" } else { "no" }
    );
    let json = json!({ "closed": g.closed, "witness": g.witness, "identity_holds": identity });
    Ok(Report {
        ok: g.closed,
        text,
        json,
    })
}
