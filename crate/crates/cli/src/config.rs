//! The JSON problem description.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Dimension,
    Cumulative,
    Context,
    PhiRank,
    Betti,
    IdealCount,
    Sumset,
    Check,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Dimension => "dimension",
            Mode::Cumulative => "cumulative",
            Mode::Context => "context",
            Mode::PhiRank => "phi-rank",
            Mode::Betti => "betti",
            Mode::IdealCount => "ideal-count",
            Mode::Sumset => "sumset",
            Mode::Check => "check",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| CliError::Input(format!("unknown mode {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendTag {
    Trivial,
    IdealCount,
    Linear,
    Graphic,
    Chain,
    Circuit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlagSpec {
    Triangular,
    QuasiTriangular,
    Undeclared,
}

/// An integer vector, or a bare integer for dimension one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntVecSpec {
    Scalar(i64),
    Vector(Vec<i64>),
}

impl IntVecSpec {
    pub fn entries(&self) -> Vec<i64> {
        match self {
            IntVecSpec::Scalar(x) => vec![*x],
            IntVecSpec::Vector(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum VertexMapSpec {
    Shift(i64),
    Affine { mul: i64, add: i64 },
    /// `[from, to]` pairs; unlisted vertices are fixed.
    Table(Vec<(i64, i64)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Vertex(VertexMapSpec),
    /// A translation (trivial) or a variable index (linear).
    Vector(IntVecSpec),
}

/// A term `coefficient · x̄^monomial · g_generator` of a module element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(default)]
    pub generator: u32,
    pub monomial: Vec<u32>,
    #[serde(default = "one")]
    pub coefficient: String,
}

fn one() -> String {
    "1".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub degree: Vec<u32>,
    pub index: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Int(i64),
    /// Integer vector, multi-index, edge or simplex depending on the backend.
    Ints(Vec<i64>),
    /// A module element as a list of terms.
    Terms(Vec<TermSpec>),
    Atom(AtomSpec),
    /// An edge label such as `"a3"` of the built-in oscillating graph.
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    #[serde(default)]
    pub generator: u32,
    pub monomial: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicSpec {
    pub base: Vec<Vec<i64>>,
    pub period: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleSpec {
    Count,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircuitRuleSpec {
    Free,
    Uniform(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFamilySpec {
    pub degree: Vec<u32>,
    pub circuits: Vec<Vec<u32>>,
}

/// Backend payloads. Absent fields take the documented defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackendData {
    /// trivial: vector dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// ideal-count: minimal elements of the complement of the ideal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<Vec<Vec<u32>>>,
    /// linear: number of variables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<RelationSpec>>,
    /// graphic: `"counterexample"` selects the built-in oscillating graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    /// graphic: allowed edges; absent means every pair of vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(i64, i64)>>,
    /// chain: generating simplices of a finite complex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodic: Option<PeriodicSpec>,
    /// chain: cell dimension for the non-Betti modes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSpec>,
    /// circuit: number of degree coordinates and atoms per degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub families: Option<Vec<CircuitFamilySpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_rule: Option<CircuitRuleSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiSpec {
    pub n: usize,
    #[serde(default)]
    pub cumulative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub backend: BackendTag,
    #[serde(default)]
    pub backend_data: BackendData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operators: Option<Vec<OperatorSpec>>,
    /// Part sizes; absent means a single part.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
    /// One flag per part; absent means every part is declared triangular.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<Vec<FlagSpec>>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<ElementSpec>>,
    #[serde(rename = "B", default)]
    pub b: Vec<ElementSpec>,
    pub mode: Mode,
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_box: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<u32>,
    /// context: indices kept from each part of the ambient system.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiSpec>,
    /// check: RNG seed of the sampled subsets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// Free-form annotations, ignored by the tool.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
}

/// Command-line overrides, applied on top of the file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub bound: Option<Vec<u32>>,
    pub window: Option<u32>,
    pub mode: Option<Mode>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub output: Option<String>,
}

impl ProblemConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(b) = &o.bound {
            self.bound = Some(b.clone());
        }
        if let Some(w) = o.window {
            self.window = Some(w);
        }
        if let Some(m) = o.mode {
            self.mode = m;
        }
        if let Some(t) = o.threads {
            self.threads = Some(t);
        }
        if let Some(s) = o.seed {
            self.seed = Some(s);
        }
        if let Some(p) = &o.output {
            self.output = Some(p.clone());
        }
    }

    /// Canonical bytes of the effective problem, excluding where output goes.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut c = self.clone();
        c.output = None;
        c.threads = None;
        serde_json::to_vec(&c).expect("config serializes")
    }
}
