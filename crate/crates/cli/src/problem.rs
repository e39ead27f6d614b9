//! Turns a [`ProblemConfig`] into an operator system and runs the requested mode.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::sync::Arc;

use matgrowth::backends::chain::{
    betti_polynomials, chain_system, ChainCell, ChainOracle, Complex, VertexMap,
};
use matgrowth::backends::circuit::{make_circuit_system, Atom, CircuitMatroid, CircuitRule};
use matgrowth::backends::graphic::{make_counterexample_graph, Edge, GraphicMatroid, Letter, Oscillator};
use matgrowth::backends::ideal::make_ideal_system;
use matgrowth::backends::linear::{multiply_by, LinVec, LinearMatroid};
use matgrowth::backends::trivial::{make_sumset_system, translation, IntVec, TrivialMatroid};
use matgrowth::engine::context_dimension_polynomial;
use matgrowth::{
    check_system, cumulative_polynomial, dimension_polynomial, phi_rank, phi_star_rank,
    CheckConfig, Matroid, MapError, Operator, OperatorSystem, OrbitMode, PartFlag, Partition,
    StabilizationConfig,
};

use crate::config::{
    BackendTag, CircuitRuleSpec, ElementSpec, FlagSpec, IntVecSpec, Mode, OperatorSpec,
    OracleSpec, ProblemConfig, VertexMapSpec,
};
use crate::report::{parse_rational, rational, CheckReport, PartCheck, PolynomialReport, Status};
use crate::CliError;

/// What a mode produced, before it is wrapped into a document.
#[derive(Debug, Default)]
pub struct Outcome {
    pub polynomials: Vec<PolynomialReport>,
    pub ranks: BTreeMap<String, String>,
    pub check: Option<CheckReport>,
    pub status: Option<Status>,
}

impl Outcome {
    /// The explicit status, else the worst certification among the polynomials.
    pub fn status(&self) -> Status {
        self.status.unwrap_or_else(|| {
            self.polynomials
                .iter()
                .fold(Status::Certified, |acc, p| acc.worst(p.certification))
        })
    }
}

struct Problem<M: Matroid> {
    sys: OperatorSystem<M>,
    a: Vec<M::Element>,
    b: Vec<M::Element>,
}

pub fn solve(cfg: &ProblemConfig) -> Result<Outcome, CliError> {
    let mode = cfg.mode;
    let allowed = match mode {
        Mode::Betti => Some(BackendTag::Chain),
        Mode::IdealCount => Some(BackendTag::IdealCount),
        Mode::Sumset => Some(BackendTag::Trivial),
        _ => None,
    };
    if let Some(tag) = allowed {
        if cfg.backend != tag {
            return Err(CliError::Input(format!(
                "mode {} needs the {} backend",
                mode.name(),
                serde_json::to_value(tag).expect("tag").as_str().unwrap_or("?")
            )));
        }
    }
    match cfg.backend {
        BackendTag::Trivial => execute(trivial(cfg)?, cfg),
        BackendTag::IdealCount => {
            let p = ideal(cfg)?;
            if mode == Mode::IdealCount {
                let s = stabilization(cfg, p.sys.m())?;
                let h = dimension_polynomial(&p.sys, &p.a, &p.b, &s)?;
                let hs = cumulative_polynomial(&p.sys, &p.a, &p.b, &s)?;
                return Ok(Outcome {
                    polynomials: vec![
                        PolynomialReport::from_result("H", &h),
                        PolynomialReport::from_result("H*", &hs),
                    ],
                    ..Outcome::default()
                });
            }
            execute(p, cfg)
        }
        BackendTag::Linear => execute(linear(cfg)?, cfg),
        BackendTag::Graphic => execute(graphic(cfg)?, cfg),
        BackendTag::Chain => {
            if mode == Mode::Betti {
                return betti(cfg);
            }
            execute(chain(cfg)?, cfg)
        }
        BackendTag::Circuit => execute(circuit(cfg)?, cfg),
    }
}

fn stabilization(cfg: &ProblemConfig, m: usize) -> Result<StabilizationConfig, CliError> {
    let bound = match &cfg.bound {
        Some(b) if b.len() == 1 && m != 1 => Some(vec![b[0]; m]),
        other => other.clone(),
    };
    let mut check = CheckConfig::default();
    if let Some(seed) = cfg.seed {
        check.seed = seed;
    }
    Ok(StabilizationConfig {
        bound,
        window: cfg.window.unwrap_or(2),
        max_bound: cfg.max_box,
        threads: cfg.threads,
        check: Some(check),
    })
}

fn execute<M: Matroid>(p: Problem<M>, cfg: &ProblemConfig) -> Result<Outcome, CliError> {
    let Problem { sys, a, b } = p;
    let s = stabilization(cfg, sys.m())?;
    let mut out = Outcome::default();
    match cfg.mode {
        Mode::Dimension | Mode::Sumset => {
            let r = dimension_polynomial(&sys, &a, &b, &s)?;
            out.polynomials.push(PolynomialReport::from_result("P", &r));
        }
        Mode::Cumulative => {
            let r = cumulative_polynomial(&sys, &a, &b, &s)?;
            out.polynomials.push(PolynomialReport::from_result("Q", &r));
        }
        Mode::Context => {
            let selection = cfg
                .selection
                .as_ref()
                .ok_or_else(|| CliError::Input("context mode needs \"selection\"".into()))?;
            let r = context_dimension_polynomial(&sys, selection, &a, &b, &s)?;
            out.polynomials.push(PolynomialReport::from_result("P", &r));
        }
        Mode::PhiRank => {
            let g = phi_rank(&sys, &a, &b, &s)?;
            let c = phi_star_rank(&sys, &a, &b, &s)?;
            out.ranks.insert("phi".into(), rational(&g.value));
            out.ranks.insert("phi_star".into(), rational(&c.value));
            out.polynomials.push(PolynomialReport::from_result("P", &g.result));
            out.polynomials.push(PolynomialReport::from_result("Q", &c.result));
        }
        Mode::Check => {
            let report = check(&sys, &a, &b, s.check.expect("set above"));
            out.status = Some(check_status(&report));
            out.check = Some(report);
        }
        Mode::Betti | Mode::IdealCount => unreachable!("dispatched in solve"),
    }
    Ok(out)
}

fn check<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    cfg: CheckConfig,
) -> CheckReport {
    let sample: Vec<M::Element> = a.iter().chain(b).cloned().collect();
    let r = check_system(sys, &sample, &cfg);
    CheckReport {
        seed: cfg.seed,
        pool_size: r.pool.len(),
        commutes: r.commutes(),
        commutation_failures: r
            .commutation
            .iter()
            .map(|c| {
                format!(
                    "maps {} and {} differ at {:?}: {:?} vs {:?}",
                    c.maps.0 + 1,
                    c.maps.1 + 1,
                    c.element,
                    c.left,
                    c.right
                )
            })
            .collect(),
        parts: r
            .parts
            .iter()
            .map(|p| PartCheck {
                part: p.part + 1,
                declared: flag_name(sys.flags()[p.part]).into(),
                triangular: p.triangular.is_none(),
                quasi_triangular: p.quasi_triangular.is_none(),
                triangular_witness: p.triangular.as_ref().map(|w| w.to_string()),
                quasi_triangular_witness: p.quasi_triangular.as_ref().map(|w| w.to_string()),
                pairs_tested: p.pairs_tested,
            })
            .collect(),
        errors: r.errors.clone(),
    }
}

fn check_status(r: &CheckReport) -> Status {
    if !r.errors.is_empty() {
        return Status::InputError;
    }
    let broken = r.parts.iter().any(|p| match p.declared.as_str() {
        "triangular" => !p.triangular,
        "quasi-triangular" => !p.quasi_triangular,
        _ => false,
    });
    if !r.commutes || broken {
        Status::HypothesisFailed
    } else {
        Status::Certified
    }
}

fn flag_name(f: PartFlag) -> &'static str {
    match f {
        PartFlag::Triangular => "triangular",
        PartFlag::QuasiTriangular => "quasi-triangular",
        PartFlag::Undeclared => "undeclared",
    }
}

fn partition(cfg: &ProblemConfig, m: usize) -> Result<Partition, CliError> {
    let sizes = cfg.partition.clone().unwrap_or_else(|| vec![m]);
    let total: usize = sizes.iter().sum();
    if total != m {
        return Err(CliError::Input(format!(
            "partition {sizes:?} covers {total} maps but the system has {m}"
        )));
    }
    Partition::new(sizes).map_err(|e| CliError::Input(e.to_string()))
}

fn flags(cfg: &ProblemConfig, k: usize) -> Result<Vec<PartFlag>, CliError> {
    match &cfg.flags {
        None => Ok(vec![PartFlag::Triangular; k]),
        Some(f) if f.len() == k => Ok(f
            .iter()
            .map(|f| match f {
                FlagSpec::Triangular => PartFlag::Triangular,
                FlagSpec::QuasiTriangular => PartFlag::QuasiTriangular,
                FlagSpec::Undeclared => PartFlag::Undeclared,
            })
            .collect()),
        Some(f) => Err(CliError::Input(format!(
            "{} flags given for {k} parts",
            f.len()
        ))),
    }
}

fn finish<M: Matroid>(
    cfg: &ProblemConfig,
    sys: OperatorSystem<M>,
    a: Vec<M::Element>,
    b: Vec<M::Element>,
) -> Result<Problem<M>, CliError> {
    let f = flags(cfg, sys.k())?;
    let sys = sys.with_flags(f).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Problem { sys, a, b })
}

fn no_operators(cfg: &ProblemConfig, backend: &str) -> Result<(), CliError> {
    match &cfg.operators {
        Some(ops) if !ops.is_empty() => Err(CliError::Input(format!(
            "the {backend} backend has fixed coordinate maps; omit \"operators\""
        ))),
        _ => Ok(()),
    }
}

fn ints(e: &ElementSpec, what: &str) -> Result<Vec<i64>, CliError> {
    match e {
        ElementSpec::Int(x) => Ok(vec![*x]),
        ElementSpec::Ints(v) => Ok(v.clone()),
        other => Err(CliError::Input(format!("{other:?} is not {what}"))),
    }
}

fn naturals(e: &ElementSpec, what: &str) -> Result<Vec<u32>, CliError> {
    ints(e, what)?
        .into_iter()
        .map(|x| u32::try_from(x).map_err(|_| CliError::Input(format!("{x} is not a natural number in {what}"))))
        .collect()
}

fn trivial(cfg: &ProblemConfig) -> Result<Problem<TrivialMatroid>, CliError> {
    let ops: Vec<Vec<i64>> = cfg
        .operators
        .as_deref()
        .unwrap_or_default()
        .iter()
        .map(|o| match o {
            OperatorSpec::Vector(v) => Ok(v.entries()),
            OperatorSpec::Vertex(v) => Err(CliError::Input(format!(
                "trivial backend operators are translation vectors, got {v:?}"
            ))),
        })
        .collect::<Result<_, _>>()?;
    let dim = cfg
        .backend_data
        .dim
        .or_else(|| ops.first().map(Vec::len))
        .unwrap_or(1);
    let p = partition(cfg, ops.len())?;
    let sys = if cfg.mode == Mode::Sumset {
        let mut sets = Vec::new();
        for part in 0..p.k() {
            sets.push(ops[p.range(part)].iter().map(|v| IntVec(v.clone())).collect());
        }
        make_sumset_system(&sets)?
    } else {
        if let Some(bad) = ops.iter().find(|v| v.len() != dim) {
            return Err(CliError::Input(format!(
                "translation {bad:?} does not have dimension {dim}"
            )));
        }
        let maps = ops.into_iter().map(|v| translation(IntVec(v))).collect();
        OperatorSystem::uniform(Arc::new(TrivialMatroid::new(dim)), maps, p, PartFlag::Triangular)
            .map_err(|e| CliError::Input(e.to_string()))?
    };
    let element = |e: &ElementSpec| -> Result<IntVec, CliError> {
        let v = ints(e, "an integer vector")?;
        if v.len() != dim {
            return Err(CliError::Input(format!("element {v:?} does not have dimension {dim}")));
        }
        Ok(IntVec(v))
    };
    let a = match &cfg.a {
        Some(a) => a.iter().map(element).collect::<Result<_, _>>()?,
        None => vec![IntVec::zero(dim)],
    };
    let b = cfg.b.iter().map(element).collect::<Result<_, _>>()?;
    finish(cfg, sys, a, b)
}

fn ideal(cfg: &ProblemConfig) -> Result<Problem<matgrowth::backends::ideal::IdealCountMatroid>, CliError> {
    no_operators(cfg, "ideal-count")?;
    let complement = cfg.backend_data.complement.clone().unwrap_or_default();
    let m = cfg
        .backend_data
        .m
        .or_else(|| cfg.partition.as_ref().map(|p| p.iter().sum()))
        .or_else(|| complement.first().map(Vec::len))
        .ok_or_else(|| CliError::Input("ideal-count needs \"m\", a partition or a complement".into()))?;
    let p = partition(cfg, m)?;
    let gens = complement.iter().map(|g| g.as_slice().into()).collect();
    let (sys, seeds) = make_ideal_system(gens, p)?;
    let element = |e: &ElementSpec| -> Result<matgrowth::MultiIndex, CliError> {
        let v = naturals(e, "a multi-index")?;
        if v.len() != m {
            return Err(CliError::Input(format!("multi-index {v:?} does not have {m} entries")));
        }
        Ok(v.into())
    };
    let a = match &cfg.a {
        Some(a) => a.iter().map(element).collect::<Result<_, _>>()?,
        None => seeds,
    };
    let b = cfg.b.iter().map(element).collect::<Result<_, _>>()?;
    finish(cfg, sys, a, b)
}

fn linear(cfg: &ProblemConfig) -> Result<Problem<LinearMatroid>, CliError> {
    let d = &cfg.backend_data;
    let vars = d
        .vars
        .ok_or_else(|| CliError::Input("linear backend needs \"vars\"".into()))?;
    let generators = d.generators.unwrap_or(1);
    let relations: Vec<(u32, Vec<u32>)> = d
        .relations
        .iter()
        .flatten()
        .map(|r| (r.generator, r.monomial.clone()))
        .collect();
    let matroid = LinearMatroid::monomial_module(vars, generators, &relations)?;
    let order: Vec<usize> = match &cfg.operators {
        None => (0..vars).collect(),
        Some(ops) => ops
            .iter()
            .map(|o| match o {
                OperatorSpec::Vector(IntVecSpec::Scalar(i)) if *i >= 0 => Ok(*i as usize),
                other => Err(CliError::Input(format!(
                    "linear backend operators are variable indices, got {other:?}"
                ))),
            })
            .collect::<Result<_, _>>()?,
    };
    let maps = order
        .iter()
        .map(|&i| multiply_by(&matroid, i))
        .collect::<Result<Vec<_>, _>>()?;
    let p = partition(cfg, maps.len())?;
    let sys = OperatorSystem::uniform(Arc::new(matroid), maps, p, PartFlag::Triangular)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let element = |e: &ElementSpec| -> Result<LinVec, CliError> {
        match e {
            ElementSpec::Terms(terms) => {
                let mut out = Vec::new();
                for t in terms {
                    if t.monomial.len() != vars {
                        return Err(CliError::Input(format!(
                            "monomial {:?} does not have {vars} exponents",
                            t.monomial
                        )));
                    }
                    let mut key = vec![t.generator];
                    key.extend(&t.monomial);
                    out.push((key, parse_rational(&t.coefficient)?));
                }
                Ok(LinVec::from_terms(out))
            }
            ElementSpec::Ints(_) => {
                let exps = naturals(e, "a monomial")?;
                if exps.len() != vars {
                    return Err(CliError::Input(format!(
                        "monomial {exps:?} does not have {vars} exponents"
                    )));
                }
                Ok(LinVec::monomial(0, &exps))
            }
            other => Err(CliError::Input(format!("{other:?} is not a module element"))),
        }
    };
    let a = match &cfg.a {
        Some(a) => a.iter().map(element).collect::<Result<_, _>>()?,
        None => (0..generators)
            .map(|g| LinVec::monomial(g, &vec![0; vars]))
            .filter(|v| v.0.keys().all(|k| sys.matroid().is_live(k)))
            .collect(),
    };
    let b = cfg.b.iter().map(element).collect::<Result<_, _>>()?;
    finish(cfg, sys, a, b)
}

fn vertex_map(spec: &VertexMapSpec) -> VertexMap {
    match spec {
        VertexMapSpec::Shift(k) => VertexMap::Shift(*k),
        VertexMapSpec::Affine { mul, add } => VertexMap::Affine { mul: *mul, add: *add },
        VertexMapSpec::Table(t) => VertexMap::Table(t.iter().copied().collect()),
    }
}

fn vertex_maps(cfg: &ProblemConfig) -> Result<Vec<VertexMap>, CliError> {
    cfg.operators
        .as_deref()
        .unwrap_or_default()
        .iter()
        .map(|o| match o {
            OperatorSpec::Vertex(v) => Ok(vertex_map(v)),
            OperatorSpec::Vector(v) => Err(CliError::Input(format!(
                "expected a vertex map such as {{\"shift\": 1}}, got {v:?}"
            ))),
        })
        .collect()
}

fn oscillator_edge(e: &ElementSpec) -> Result<Edge, CliError> {
    match e {
        ElementSpec::Label(s) => {
            let (head, index) = s.split_at(s.len().min(1));
            let letter = match head {
                "a" => Letter::A,
                "b" => Letter::B,
                "c" => Letter::C,
                _ => return Err(CliError::Input(format!("edge label {s:?} should be a, b or c and an index"))),
            };
            let i = u64::from_str(index)
                .map_err(|_| CliError::Input(format!("edge label {s:?} has no index")))?;
            Ok(Oscillator::edge(letter, i))
        }
        _ => plain_edge(e),
    }
}

fn plain_edge(e: &ElementSpec) -> Result<Edge, CliError> {
    match ints(e, "an edge")?.as_slice() {
        [u, v] => Ok(Edge::new(*u, *v)),
        other => Err(CliError::Input(format!("edge {other:?} should have two endpoints"))),
    }
}

fn graphic(cfg: &ProblemConfig) -> Result<Problem<GraphicMatroid>, CliError> {
    match cfg.backend_data.builtin.as_deref() {
        Some("counterexample") => {
            no_operators(cfg, "counterexample graph")?;
            let m = 1;
            let s = stabilization(cfg, m)?;
            let cap = s.cap(m + 1).max(s.bound.iter().flatten().copied().max().unwrap_or(0));
            let limit = u64::from(cap + s.window + 2);
            let (sys, seed) = make_counterexample_graph(limit);
            let p = partition(cfg, 1)?;
            let sys = OperatorSystem::uniform(sys.matroid().clone(), sys.maps().to_vec(), p, PartFlag::Triangular)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let a = match &cfg.a {
                Some(a) => a.iter().map(oscillator_edge).collect::<Result<_, _>>()?,
                None => seed,
            };
            let b = cfg.b.iter().map(oscillator_edge).collect::<Result<_, _>>()?;
            finish(cfg, sys, a, b)
        }
        Some(other) => Err(CliError::Input(format!("unknown graph builtin {other:?}"))),
        None => {
            let allowed: Option<Arc<BTreeSet<Edge>>> = cfg
                .backend_data
                .edges
                .as_ref()
                .map(|es| Arc::new(es.iter().map(|&(u, v)| Edge::new(u, v)).collect()));
            let maps: Vec<Operator<Edge>> = vertex_maps(cfg)?
                .into_iter()
                .map(|vm| {
                    let allowed = allowed.clone();
                    Operator::new(vm.name(), move |e: &Edge| {
                        let (u, v) = e.endpoints();
                        let image = Edge::new(vm.apply(u), vm.apply(v));
                        match &allowed {
                            Some(set) if !image.is_loop() && !set.contains(&image) => {
                                Err(MapError::Undefined(format!("{e:?} maps to {image:?}, which is not an edge")))
                            }
                            _ => Ok(image),
                        }
                    })
                })
                .collect();
            let p = partition(cfg, maps.len())?;
            let sys = OperatorSystem::uniform(Arc::new(GraphicMatroid), maps, p, PartFlag::Triangular)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let element = |e: &ElementSpec| -> Result<Edge, CliError> {
                let edge = plain_edge(e)?;
                if let Some(set) = &allowed {
                    if !set.contains(&edge) {
                        return Err(CliError::Input(format!("{edge:?} is not in the edge list")));
                    }
                }
                Ok(edge)
            };
            let a = cfg
                .a
                .as_deref()
                .unwrap_or_default()
                .iter()
                .map(element)
                .collect::<Result<_, _>>()?;
            let b = cfg.b.iter().map(element).collect::<Result<_, _>>()?;
            finish(cfg, sys, a, b)
        }
    }
}

fn complex(cfg: &ProblemConfig) -> Result<Arc<Complex>, CliError> {
    let d = &cfg.backend_data;
    let c = match (&d.simplices, &d.periodic) {
        (Some(s), None) => Complex::generated_by(s)?,
        (None, Some(p)) => Complex::periodic(&p.base, p.period)?,
        _ => {
            return Err(CliError::Input(
                "chain backend needs exactly one of \"simplices\" and \"periodic\"".into(),
            ))
        }
    };
    Ok(Arc::new(c))
}

fn simplices(specs: &[ElementSpec]) -> Result<Vec<Vec<i64>>, CliError> {
    specs.iter().map(|e| ints(e, "a simplex")).collect()
}

fn chain(cfg: &ProblemConfig) -> Result<Problem<matgrowth::backends::chain::ChainMatroid>, CliError> {
    let complex = complex(cfg)?;
    let maps = vertex_maps(cfg)?;
    let p = partition(cfg, maps.len())?;
    let dim = cfg
        .backend_data
        .cell_dim
        .ok_or_else(|| CliError::Input("chain backend needs \"cell_dim\" outside betti mode".into()))?;
    let oracle = match cfg.backend_data.oracle.unwrap_or(OracleSpec::Count) {
        OracleSpec::Count => ChainOracle::Count,
        OracleSpec::Boundary => ChainOracle::Boundary,
    };
    let sys = chain_system(complex, &maps, p, dim, oracle)?;
    let cell = |v: Vec<i64>| -> Result<ChainCell, CliError> {
        let c = ChainCell::simplex(v)?;
        if c.dim() != Some(dim) {
            return Err(CliError::Input(format!("{c:?} is not a {dim}-cell")));
        }
        Ok(c)
    };
    let a = simplices(cfg.a.as_deref().unwrap_or_default())?
        .into_iter()
        .map(cell)
        .collect::<Result<_, _>>()?;
    let b = simplices(&cfg.b)?.into_iter().map(cell).collect::<Result<_, _>>()?;
    finish(cfg, sys, a, b)
}

fn betti(cfg: &ProblemConfig) -> Result<Outcome, CliError> {
    let spec = cfg
        .betti
        .as_ref()
        .ok_or_else(|| CliError::Input("betti mode needs \"betti\": {\"n\": …}".into()))?;
    let complex = complex(cfg)?;
    let maps = vertex_maps(cfg)?;
    let p = partition(cfg, maps.len())?;
    let seed = simplices(
        cfg.a
            .as_deref()
            .ok_or_else(|| CliError::Input("betti mode needs a seed complex \"A\"".into()))?,
    )?;
    let mode = if spec.cumulative {
        OrbitMode::Cumulative
    } else {
        OrbitMode::Graded
    };
    let s = stabilization(cfg, maps.len())?;
    let r = betti_polynomials(complex, &maps, p, &seed, spec.n, mode, &s)?;
    let status = r
        .parts()
        .iter()
        .fold(Status::Certified, |acc, x| acc.worst(x.certification.into()));
    let n = spec.n;
    Ok(Outcome {
        polynomials: vec![
            PolynomialReport::bare(&format!("b{n}"), &r.betti, status),
            PolynomialReport::from_result(&format!("rk{n}"), &r.cells),
            PolynomialReport::from_result(&format!("rk{n}_boundary"), &r.boundaries),
            PolynomialReport::from_result(&format!("rk{}_boundary", n + 1), &r.next_boundaries),
        ],
        ..Outcome::default()
    })
}

fn circuit(cfg: &ProblemConfig) -> Result<Problem<CircuitMatroid>, CliError> {
    no_operators(cfg, "circuit")?;
    let d = &cfg.backend_data;
    let m = d
        .m
        .ok_or_else(|| CliError::Input("circuit backend needs \"m\"".into()))?;
    let width = d
        .width
        .ok_or_else(|| CliError::Input("circuit backend needs \"width\"".into()))?;
    let families = d
        .families
        .iter()
        .flatten()
        .map(|f| {
            (
                f.degree.as_slice().into(),
                f.circuits.iter().map(|c| c.iter().copied().collect()).collect(),
            )
        })
        .collect();
    let rule = match d.default_rule.unwrap_or(CircuitRuleSpec::Free) {
        CircuitRuleSpec::Free => CircuitRule::Free,
        CircuitRuleSpec::Uniform(r) => CircuitRule::Uniform(r),
    };
    let matroid = CircuitMatroid::new(m, width, families, rule)?;
    let sys = make_circuit_system(matroid, partition(cfg, m)?)?;
    let element = |e: &ElementSpec| -> Result<Atom, CliError> {
        match e {
            ElementSpec::Atom(a) if a.degree.len() == m && a.index < width => {
                Ok(Atom::new(a.degree.clone(), a.index))
            }
            other => Err(CliError::Input(format!(
                "{other:?} is not an atom {{\"degree\": [{m} entries], \"index\": < {width}}}"
            ))),
        }
    };
    let a = cfg
        .a
        .as_deref()
        .unwrap_or_default()
        .iter()
        .map(element)
        .collect::<Result<_, _>>()?;
    let b = cfg.b.iter().map(element).collect::<Result<_, _>>()?;
    finish(cfg, sys, a, b)
}
