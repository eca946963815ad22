use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `(ab)c = a(bc)` on a basis triple.
    Associativity,
    /// `R(a)R(b) = R(R(a)b + aR(b)) + κ ab` on a basis pair.
    ModifiedRotaBaxter,
    /// `P(a)P(b) = P(P(a)b + aP(b)) + λ P(ab)` on a basis pair.
    RotaBaxter,
    /// `(ab)u = a(bu)`, indices `(a, b, u)`.
    LeftAction,
    /// `(au)b = a(ub)`, indices `(a, u, b)`.
    MiddleAction,
    /// `(ua)b = u(ab)`, indices `(u, a, b)`.
    RightAction,
    /// Left operator compatibility, indices `(a, u)`.
    OperatorLeft,
    /// Right operator compatibility, indices `(u, a)`.
    OperatorRight,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::ModifiedRotaBaxter => "modified Rota-Baxter identity",
            Axiom::RotaBaxter => "Rota-Baxter identity",
            Axiom::LeftAction => "left action (ab)u = a(bu)",
            Axiom::MiddleAction => "bimodule compatibility (au)b = a(ub)",
            Axiom::RightAction => "right action (ua)b = u(ab)",
            Axiom::OperatorLeft => "left operator compatibility",
            Axiom::OperatorRight => "right operator compatibility",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
}

/// Exhaustive list of violated basis tuples; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(violations: Vec<Violation>) -> Self {
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn of_axiom(&self, axiom: Axiom) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "no violations");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in self.violations.iter().take(8) {
            write!(f, "; {} at {:?}", v.axiom.name(), v.indices)?;
        }
        if self.violations.len() > 8 {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}
