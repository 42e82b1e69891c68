use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

/// Which inequality, equality or conjecture a report evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum StatementId {
    /// `m₁+⋯+m_d ≥ d(Z) ≥ m_{s−d+1}+⋯+m_s`, `d = d(X)`, multiplicities sorted.
    CrudeBounds,
    /// `d(Z) ≥ α(I_Z) − m(Z)`.
    HomBound,
    /// `d(X) = α(I_X) − 1` iff `s−1` points lie on a hyperplane.
    BoundsCor,
    /// Homogeneous `Z` with `d(X) ≥ α(I_X)`: `s_n(Z) ≤ m·d(X)`.
    MainTheoremI,
    /// Homogeneous `Z` with `d(X) = α(I_X) − 1`: `s_n(Z) ≤ 2m − 1`.
    MainTheoremII,
    /// Every minimal separator degree is at least `s_n(Z)`.
    FatPointSocle,
    /// `d(X)_a ≥ d(X)_{a+1} + 1` and `d(X)_a ≥ b − a + 2` below `b`.
    RecursionLemma,
    /// Reduced CI: `d(X) ≥ d₁+⋯+d_n − n`.
    CIBound,
    /// Homogeneous CI support: `s_n(Z) = m·d₁ + d₂+⋯+d_n − n`.
    SocleValueCI,
    /// CI support, `m ≥ 2`: `m·d(X) = s_n(Z)` iff the type is `(2,2)`.
    CI22Equality,
    /// `d(X) ≥ (d₁−1)d₂⋯d_n` when some residual curve has no component in a
    /// hyperplane (caller-certified).
    BezoutCI,
    /// `d(X) ≥ (d₁−1)d₂` for `CI(d₁,d₂)` in `P²`.
    N2Theorem,
    /// `d(X) ≥ (d₁−1)d₂⋯d_n` for any CI, `n ≥ 3` (conjectural).
    ConjectureCI,
    /// `d(Z) ≥ s_n(Z) − m(Z) + 1` (open question).
    OpenQuestion,
}

impl StatementId {
    pub const ALL: [StatementId; 14] = [
        StatementId::CrudeBounds,
        StatementId::HomBound,
        StatementId::BoundsCor,
        StatementId::MainTheoremI,
        StatementId::MainTheoremII,
        StatementId::FatPointSocle,
        StatementId::RecursionLemma,
        StatementId::CIBound,
        StatementId::SocleValueCI,
        StatementId::CI22Equality,
        StatementId::BezoutCI,
        StatementId::N2Theorem,
        StatementId::ConjectureCI,
        StatementId::OpenQuestion,
    ];

    /// Short command-line name.
    pub fn slug(&self) -> &'static str {
        match self {
            StatementId::CrudeBounds => "crude",
            StatementId::HomBound => "hombound",
            StatementId::BoundsCor => "boundscor",
            StatementId::MainTheoremI => "main-i",
            StatementId::MainTheoremII => "main-ii",
            StatementId::FatPointSocle => "fatpointsocle",
            StatementId::RecursionLemma => "recursion",
            StatementId::CIBound => "cibound",
            StatementId::SocleValueCI => "soclevalueci",
            StatementId::CI22Equality => "ci22",
            StatementId::BezoutCI => "bezout",
            StatementId::N2Theorem => "n2",
            StatementId::ConjectureCI => "conjecture",
            StatementId::OpenQuestion => "question",
        }
    }

    /// Conjecture-mode statements report violations as counterexamples
    /// rather than failures.
    pub fn is_conjectural(&self) -> bool {
        matches!(self, StatementId::ConjectureCI | StatementId::OpenQuestion)
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "==")]
    Eq,
    /// Both sides are truth values (0/1) that must agree.
    #[serde(rename = "<=>")]
    Iff,
}

impl Relation {
    fn eval(&self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq | Relation::Iff => lhs == rhs,
        }
    }
}

/// One literal comparison of computed quantities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub label: String,
    pub lhs: i64,
    pub relation: Relation,
    pub rhs: i64,
    pub holds: bool,
}

impl Comparison {
    pub fn new(label: impl Into<String>, lhs: i64, relation: Relation, rhs: i64) -> Self {
        Comparison {
            label: label.into(),
            lhs,
            relation,
            rhs,
            holds: relation.eval(lhs, rhs),
        }
    }

    pub fn iff(label: impl Into<String>, lhs: bool, rhs: bool) -> Self {
        Comparison::new(label, lhs as i64, Relation::Iff, rhs as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attainment {
    Attained,
    NotAttained,
    /// Equality cannot be judged (e.g. a grid that is not generic).
    Indeterminate,
    NotApplicable,
}

impl Attainment {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Attainment::Attained
        } else {
            Attainment::NotAttained
        }
    }
}

/// Verdict of one checker on one input.
///
/// `holds` is the conjunction of the literal comparisons. A conjectural
/// statement that fails carries the serialized input in `counterexample`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub statement: StatementId,
    pub inputs: String,
    pub comparisons: Vec<Comparison>,
    pub holds: bool,
    pub attained: Attainment,
    pub values: BTreeMap<String, Value>,
    pub notes: Vec<String>,
    pub counterexample: Option<String>,
}

impl BoundReport {
    pub fn new(statement: StatementId, inputs: impl Into<String>) -> Self {
        BoundReport {
            statement,
            inputs: inputs.into(),
            comparisons: Vec::new(),
            holds: true,
            attained: Attainment::NotApplicable,
            values: BTreeMap::new(),
            notes: Vec::new(),
            counterexample: None,
        }
    }

    pub fn compare(&mut self, c: Comparison) -> &mut Self {
        self.holds &= c.holds;
        self.comparisons.push(c);
        self
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.values.insert(key.to_string(), v.into());
        self
    }

    pub fn note(&mut self, n: impl Into<String>) -> &mut Self {
        self.notes.push(n.into());
        self
    }

    /// True when a conjecture-mode statement was violated.
    pub fn is_counterexample(&self) -> bool {
        self.counterexample.is_some()
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.holds, self.is_counterexample()) {
            (true, _) => "holds",
            (false, true) => "COUNTEREXAMPLE",
            (false, false) => "VIOLATED",
        };
        write!(f, "[{}] {verdict}", self.statement)?;
        match self.attained {
            Attainment::Attained => write!(f, ", attained")?,
            Attainment::NotAttained => write!(f, ", not attained")?,
            Attainment::Indeterminate => write!(f, ", attainment indeterminate")?,
            Attainment::NotApplicable => {}
        }
        writeln!(f, "  ({})", self.inputs)?;
        for c in &self.comparisons {
            let rel = match c.relation {
                Relation::Ge => ">=",
                Relation::Le => "<=",
                Relation::Eq => "==",
                Relation::Iff => "<=>",
            };
            writeln!(
                f,
                "    {}: {} {rel} {}{}",
                c.label,
                c.lhs,
                c.rhs,
                if c.holds { "" } else { "  <-- fails" }
            )?;
        }
        for n in &self.notes {
            writeln!(f, "    note: {n}")?;
        }
        Ok(())
    }
}
