use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tropical_rb::apps::{
    default_primes, factorize_potential, markov_check, nn_check, polycount, polycount_disjoint_union, stepcount_demo,
    MarkovField, NearestNeighborPotential, PotentialSpec, StepCountTable,
};
use tropical_rb::birkhoff::{
    exp_conjugation_check, CharacteristicMultiplier, Element, EngineConfig, Identity, PartialSum, Projection,
    QIntegral, RotaBaxter, Scheme, Session, Shape,
};
use tropical_rb::hopf::{
    canonical_key, Admissibility, CanonKey, Character, EdgeCountCharacter, FnCharacter, Graph, GraphHopf,
    InclusionExclusionCharacter,
};
use tropical_rb::semiring::{thermo_add_n_detailed, tree_compose, ExtReal, Mode, PlanarTree};
use tropical_rb::serde_ext::{ext_vec, to_value};
use tropical_rb::witt::{
    counts_with_check, is_prime, parse_rational, rb_identity_residual, zeta_from_counts, zeta_rb_checks, MotiveClass,
    WittProduct, WittVector,
};
use tropical_rb::{Error, Result};

use crate::config::{OperatorName, RunConfig};
use crate::report::Outcome;

/// Largest residual accepted between the thermodynamic and exponential-picture factorizations.
pub const CONJUGATION_TOL: f64 = 1e-8;

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Deformed sum of a list of values, optionally bracketed by a planar tree.
    Semiring {
        /// Values; `inf` is the additive identity in min-plus mode, `-inf` in max-plus mode.
        #[arg(required = true, allow_hyphen_values = true)]
        values: Vec<String>,
        /// Work in max-plus instead of min-plus.
        #[arg(long)]
        max_plus: bool,
        /// Bracketing such as `((*,*),*)`; the leaves consume the values in order.
        #[arg(long)]
        tree: Option<String>,
    },
    /// Birkhoff factorization of a graph character with a Rota-Baxter operator.
    Factorize {
        /// JSON graph, list of graphs, or `{"graphs": [...]}`.
        #[arg(long)]
        graph: PathBuf,
        /// `edge-count`, `inclusion-exclusion`, or a character JSON file.
        #[arg(long, default_value = "edge-count")]
        character: String,
        /// Also run the classical recursion on `e^{-βψ}` and compare (finite β only).
        #[arg(long)]
        oracle: bool,
    },
    /// Exact Witt-vector arithmetic on power series with constant term 1.
    Witt {
        #[command(subcommand)]
        op: WittOp,
    },
    /// Zeta function of a Tate class over a prime field.
    Zeta {
        /// `point`, `A<n>`, `P<n>`, inline JSON `{"tate": [[c, k], ...]}`, or a JSON file.
        motive: String,
        /// `corollaries` verifies the zeta identities of the Witt Rota-Baxter operators.
        #[arg(long)]
        check: Option<ZetaCheck>,
    },
    /// Nearest-neighbor and Markov checks for a potential on induced subgraphs.
    Markov {
        /// Host graph JSON; may be omitted when the potential file carries `host`.
        #[arg(long)]
        host: Option<PathBuf>,
        /// Potential JSON.
        #[arg(long)]
        potential: PathBuf,
        /// Factorize the potential and check both factors.
        #[arg(long)]
        factorize: Option<MarkovOperator>,
    },
    /// Point counts of a graph hypersurface complement and a polynomial fit.
    Polycount {
        #[arg(long)]
        graph: PathBuf,
        /// Second graph: also check the disjoint union.
        #[arg(long)]
        union: Option<PathBuf>,
    },
    /// Tropical factorization of step counts; defaults to the built-in non-halting example.
    Stepcount {
        /// Step-count table JSON.
        #[arg(long, requires = "graph")]
        table: Option<PathBuf>,
        /// Graphs to report on.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WittOp {
    /// Witt sum: the product of the series.
    Add { a: String, b: String },
    /// Witt difference.
    Sub { a: String, b: String },
    /// Witt product `⋆` (ghosts multiply componentwise).
    Mul { a: String, b: String },
    /// Convolution `⊛` (ghosts multiply as power series).
    Conv { a: String, b: String },
    /// Ghost coordinates.
    Ghost { a: String },
    /// Witt vector with the given comma-separated ghost coordinates.
    Unghost { ghost: String },
    /// Residual of the weight-one Rota-Baxter identity of a Witt operator.
    Rb {
        #[arg(value_name = "OPERATOR")]
        map: WittOperator,
        a: String,
        b: String,
        /// Defaults to `star` for the partial sum and `convolution` for the q-operators.
        #[arg(long)]
        product: Option<ProductArg>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WittOperator {
    PartialSum,
    QOperator,
    QTilde,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductArg {
    Star,
    Convolution,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaCheck {
    Corollaries,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarkovOperator {
    PartialSum,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Semiring { .. } => "semiring",
            Command::Factorize { .. } => "factorize",
            Command::Witt { .. } => "witt",
            Command::Zeta { .. } => "zeta",
            Command::Markov { .. } => "markov",
            Command::Polycount { .. } => "polycount",
            Command::Stepcount { .. } => "stepcount",
        }
    }

    pub fn run(&self, cfg: &RunConfig) -> Result<Outcome> {
        match self {
            Command::Semiring { values, max_plus, tree } => semiring(cfg, values, *max_plus, tree.as_deref()),
            Command::Factorize { graph, character, oracle } => factorize(cfg, graph, character, *oracle),
            Command::Witt { op } => witt(cfg, op),
            Command::Zeta { motive, check } => zeta(cfg, motive, check.is_some()),
            Command::Markov { host, potential, factorize } => markov(cfg, host.as_deref(), potential, factorize.is_some()),
            Command::Polycount { graph, union } => poly(cfg, graph, union.as_deref()),
            Command::Stepcount { table, graph } => stepcount(cfg, table.as_deref(), graph.as_deref()),
        }
    }
}

/// Parses an argument that is either inline JSON or the path of a JSON file.
fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    if let Some(inline) = path.to_str().map(str::trim).filter(|s| s.starts_with('{') || s.starts_with('[')) {
        return serde_json::from_str(inline).map_err(|e| Error::Parse(format!("inline JSON: {e}")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GraphInput {
    One(Graph),
    Many(Vec<Graph>),
    Wrapped { graphs: Vec<Graph> },
}

fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    Ok(match read_json(path)? {
        GraphInput::One(g) => vec![g],
        GraphInput::Many(gs) | GraphInput::Wrapped { graphs: gs } => gs,
    })
}

fn read_graph(path: &Path) -> Result<Graph> {
    let mut gs = read_graphs(path)?;
    if gs.len() != 1 {
        return Err(Error::Parse(format!("{} must hold exactly one graph", path.display())));
    }
    Ok(gs.remove(0))
}

fn parse_value(s: &str) -> Result<f64> {
    let x = match s.trim() {
        "inf" | "+inf" | "∞" => f64::INFINITY,
        "-inf" | "-∞" => f64::NEG_INFINITY,
        t => t.parse().map_err(|_| Error::Parse(format!("not a number: '{t}'")))?,
    };
    if x.is_nan() {
        return Err(Error::Domain("NaN is not a semiring value".into()));
    }
    Ok(x)
}

fn semiring(cfg: &RunConfig, values: &[String], max_plus: bool, tree: Option<&str>) -> Result<Outcome> {
    let mode = if max_plus { Mode::MaxPlus } else { Mode::MinPlus };
    let xs: Vec<ExtReal> = values.iter().map(|v| ExtReal::try_new(parse_value(v)?, mode)).collect::<Result<_>>()?;
    let sum = thermo_add_n_detailed(&xs, cfg.beta, &cfg.entropy)?;
    let tropical = xs.iter().map(|x| x.value()).fold(mode.zero(), |a, b| mode.trop_add(a, b));
    let finite = xs.iter().filter(|x| !x.is_zero()).count();
    // The deformed sum lies between the tropical sum and the tropical sum
    // shifted by the entropy of the uniform distribution over β.
    let bound = if finite == 0 { 0.0 } else { cfg.entropy.eval(&vec![1.0 / finite as f64; finite]) * cfg.beta.inv() };
    let gap = if sum.value.is_zero() { 0.0 } else { (sum.value.value() - tropical).abs() };
    let tree_value = match tree {
        Some(t) => {
            let t: PlanarTree = t.parse()?;
            Some(json!({ "tree": t.to_string(), "value": to_value(tree_compose(&t, &xs, cfg.beta, &cfg.entropy)?.value()) }))
        }
        None => None,
    };
    let within = gap <= bound + 1e-12 * (1.0 + tropical.abs());
    let result = json!({
        "mode": mode,
        "values": xs.iter().map(|x| to_value(x.value())).collect::<Vec<_>>(),
        "value": to_value(sum.value.value()),
        "resolution": sum.resolution,
        "tropical_limit": {
            "tropical_value": to_value(tropical),
            "gap": gap,
            "bound": bound,
            "within_bound": within,
        },
        "tree": tree_value,
    });
    let oracle = if cfg.entropy.is_shannon() { "closed-form log-sum-exp" } else { "simplex minimization" };
    Outcome::new(result, vec![oracle], within)
}

/// JSON form of a graph character.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum CharacterSpec {
    /// Per-edge costs, one per coordinate.
    EdgeCount {
        weights: Vec<f64>,
        #[serde(default)]
        series: bool,
    },
    InclusionExclusion(InclusionExclusionCharacter),
    /// Values on connected graphs, matched up to isomorphism.
    Table { entries: Vec<TableEntry> },
}

#[derive(Deserialize)]
struct TableEntry {
    graph: Graph,
    #[serde(with = "ext_vec")]
    value: Vec<f64>,
}

fn table_character(entries: Vec<TableEntry>, shape: Shape) -> Result<FnCharacter<Graph>> {
    let len = entries.first().map(|e| e.value.len()).ok_or_else(|| Error::EmptyInput("empty character table".into()))?;
    let mut lookup: BTreeMap<CanonKey, Vec<f64>> = BTreeMap::new();
    for e in entries {
        if e.value.len() != len {
            return Err(Error::DimensionMismatch(format!("{} has {} values, expected {len}", e.graph, e.value.len())));
        }
        lookup.insert(canonical_key(&e.graph.without_isolated(), false), e.value);
    }
    let unit = Element::one(shape, Mode::MinPlus, len);
    Ok(FnCharacter::new("table", unit, move |g: &Graph| {
        let v = lookup
            .get(&canonical_key(g, false))
            .ok_or_else(|| Error::UndefinedComponent(format!("the character table has no entry for {g}")))?;
        Element::new(shape, Mode::MinPlus, v.clone())
    }))
}

fn load_character(cfg: &RunConfig, spec: &str) -> Result<Box<dyn Character<Graph>>> {
    let series = cfg.operator == OperatorName::QIntegral;
    let shape = if series { Shape::Series } else { Shape::Sequence };
    Ok(match spec {
        "edge-count" if series => Box::new(EdgeCountCharacter::series(1.0, cfg.len)),
        "edge-count" => Box::new(EdgeCountCharacter::sequence(vec![1.0; cfg.len])),
        "inclusion-exclusion" => Box::new(InclusionExclusionCharacter::uniform(1.0, 1.0)),
        path => match read_json(Path::new(path))? {
            CharacterSpec::EdgeCount { weights, series: true } => {
                let c = weights.first().copied().ok_or_else(|| Error::EmptyInput("no edge weights".into()))?;
                Box::new(EdgeCountCharacter::series(c, weights.len()))
            }
            CharacterSpec::EdgeCount { weights, series: false } => Box::new(EdgeCountCharacter::sequence(weights)),
            CharacterSpec::InclusionExclusion(c) => Box::new(c),
            CharacterSpec::Table { entries } => Box::new(table_character(entries, shape)?),
        },
    })
}

fn parse_q_float(cfg: &RunConfig) -> Result<f64> {
    let q = cfg.q.as_deref().ok_or_else(|| Error::Parse("the q-integral needs --q".into()))?;
    q.trim().parse().map_err(|_| Error::Parse(format!("not a number: '{q}'")))
}

fn build_operator(cfg: &RunConfig, unit: &Element) -> Result<Box<dyn RotaBaxter>> {
    let (shape, len, beta) = (unit.shape(), unit.len(), cfg.beta);
    let mask = || cfg.mask.clone().ok_or_else(|| Error::Parse("this operator needs --mask".into()));
    Ok(match cfg.operator {
        OperatorName::PartialSum => Box::new(PartialSum::new(beta, len)),
        OperatorName::QIntegral => {
            let q = parse_q_float(cfg)?;
            match cfg.q_terms {
                Some(k) => Box::new(QIntegral::truncated(q, beta, len, k, cfg.tol)?),
                None => Box::new(QIntegral::new(q, beta, len)?),
            }
        }
        OperatorName::Projection if shape == Shape::Series => Box::new(Projection::new(mask()?, beta).on_series()),
        OperatorName::Projection => Box::new(Projection::new(mask()?, beta)),
        OperatorName::Identity => Box::new(Identity::new(shape, len, Mode::MinPlus, beta)),
        OperatorName::CharacteristicMultiplier => Box::new(CharacteristicMultiplier::new(mask()?)),
    })
}

fn engine_config(cfg: &RunConfig) -> EngineConfig {
    EngineConfig { samples: cfg.samples, seed: cfg.seed, tol: cfg.tol, ..EngineConfig::default() }
}

fn factorize(cfg: &RunConfig, graph: &Path, character: &str, oracle: bool) -> Result<Outcome> {
    let graphs = read_graphs(graph)?;
    let psi = load_character(cfg, character)?;
    let op = build_operator(cfg, &psi.unit())?;
    let admissibility = if cfg.admissibility == "induced" { Admissibility::Induced } else { Admissibility::All };
    let h = GraphHopf::new(admissibility);
    let scheme = if op.weight() > 0.0 { Scheme::WeightOne(op.as_ref()) } else { Scheme::WeightMinusOne(op.as_ref()) };
    let result = Session::new(&h, psi.as_ref(), scheme, engine_config(cfg))?.run(&graphs)?;
    let mut passed = result.identity_residual <= cfg.tol && result.max_multiplicativity_residual() <= cfg.tol;
    let mut oracles = vec!["sampled Rota-Baxter certification", "factorization identity", "disjoint-union multiplicativity"];
    let conjugation = if oracle {
        let r = exp_conjugation_check(&h, psi.as_ref(), op.as_ref(), &graphs, engine_config(cfg))?;
        passed &= r.max_residual <= CONJUGATION_TOL;
        oracles.push("exponential-picture classical recursion");
        Some(r)
    } else {
        None
    };
    Outcome::new(json!({ "factorization": result, "conjugation": conjugation }), oracles, passed)
}

fn witt_input(s: &str, order: usize) -> Result<Value> {
    let w = WittVector::parse(s, order)?;
    Ok(json!({ "expression": s, "series": w.to_string(), "coefficients": w, "ghost": ghost_strings(&w) }))
}

fn ghost_strings(w: &WittVector) -> Vec<String> {
    w.ghost().iter().map(|g| g.to_string()).collect()
}

fn witt_value(w: &WittVector) -> Value {
    json!({ "series": w.to_string(), "coefficients": w, "ghost": ghost_strings(w) })
}

type WittMap = dyn Fn(&WittVector) -> Result<WittVector>;

fn witt(cfg: &RunConfig, op: &WittOp) -> Result<Outcome> {
    let n = cfg.order;
    let parse = |s: &str| WittVector::parse(s, n);
    let witt_q = || parse_rational(cfg.q.as_deref().ok_or_else(|| Error::Parse("the q-operators need --q".into()))?);
    let binary = |a: &str, b: &str, f: &dyn Fn(&WittVector, &WittVector) -> Result<WittVector>| -> Result<Outcome> {
        let r = f(&parse(a)?, &parse(b)?)?;
        Outcome::new(json!({ "a": witt_input(a, n)?, "b": witt_input(b, n)?, "result": witt_value(&r) }), vec![], true)
    };
    match op {
        WittOp::Add { a, b } => binary(a, b, &|x, y| x.add(y)),
        WittOp::Sub { a, b } => binary(a, b, &|x, y| x.sub(y)),
        WittOp::Mul { a, b } => binary(a, b, &|x, y| x.star(y)),
        WittOp::Conv { a, b } => binary(a, b, &|x, y| x.convolve(y)),
        WittOp::Ghost { a } => Outcome::new(json!({ "a": witt_input(a, n)? }), vec![], true),
        WittOp::Unghost { ghost } => {
            let g: Vec<_> = ghost.split(',').map(parse_rational).collect::<Result<_>>()?;
            let w = WittVector::from_ghost(&g);
            let round_trip = w.ghost() == g;
            Outcome::new(json!({ "result": witt_value(&w), "round_trip": round_trip }), vec!["ghost round trip"], round_trip)
        }
        WittOp::Rb { map, a, b, product } => {
            let product = match product {
                Some(ProductArg::Star) => WittProduct::Star,
                Some(ProductArg::Convolution) => WittProduct::Convolution,
                None if matches!(map, WittOperator::PartialSum) => WittProduct::Star,
                None => WittProduct::Convolution,
            };
            let f: Box<WittMap> = match map {
                WittOperator::PartialSum => Box::new(|w: &WittVector| Ok(w.partial_sum())),
                WittOperator::QOperator => {
                    let q = witt_q()?;
                    Box::new(move |w: &WittVector| w.q_operator(&q))
                }
                WittOperator::QTilde => {
                    let q = witt_q()?;
                    Box::new(move |w: &WittVector| w.q_tilde_operator(&q))
                }
            };
            let residual = rb_identity_residual(f.as_ref(), product, &parse(a)?, &parse(b)?)?;
            let exact = residual.iter().all(|r| *r == Default::default());
            let result = json!({
                "operator": map,
                "product": product,
                "a": witt_input(a, n)?,
                "b": witt_input(b, n)?,
                "ghost_residual": residual.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "exact": exact,
            });
            Outcome::new(result, vec!["exact rational Rota-Baxter identity"], exact)
        }
    }
}

fn parse_motive(s: &str) -> Result<MotiveClass> {
    let named = |prefix: &str| s.strip_prefix(prefix).and_then(|n| n.parse::<u32>().ok());
    if s == "point" {
        return Ok(MotiveClass::point());
    }
    if let Some(n) = named("A") {
        return Ok(MotiveClass::affine(n));
    }
    if let Some(n) = named("P") {
        return Ok(MotiveClass::projective(n));
    }
    if s.trim_start().starts_with('{') {
        return serde_json::from_str(s).map_err(|e| Error::Parse(format!("motive: {e}")));
    }
    read_json(Path::new(s))
}

fn zeta_field(cfg: &RunConfig) -> Result<u64> {
    let q = cfg.q.as_deref().unwrap_or("2");
    let q: u64 = q.trim().parse().map_err(|_| Error::Parse(format!("the field size must be an integer, got '{q}'")))?;
    if !is_prime(q) {
        return Err(Error::Domain(format!("only prime fields are supported, got q = {q}")));
    }
    Ok(q)
}

fn zeta(cfg: &RunConfig, motive: &str, check: bool) -> Result<Outcome> {
    let m = parse_motive(motive)?;
    let q = zeta_field(cfg)?;
    if check {
        let r = zeta_rb_checks(&m, q, cfg.order)?;
        let passed = r.all_exact;
        return Outcome::new(r, vec!["exact functional equations", "truncated product with exact tail"], passed);
    }
    let (counts, brute) = counts_with_check(&m, q, cfg.order)?;
    let z = zeta_from_counts(&counts);
    let result = json!({
        "motive": m,
        "class": m.to_string(),
        "q": q,
        "counts": counts,
        "brute_force_count": brute,
        "zeta": witt_value(&z),
    });
    Outcome::new(result, if brute.is_some() { vec!["brute-force point count"] } else { vec![] }, true)
}

fn markov(cfg: &RunConfig, host: Option<&Path>, potential: &Path, factorize: bool) -> Result<Outcome> {
    let mut raw: Value = read_json(potential)?;
    let obj = raw.as_object_mut().ok_or_else(|| Error::Parse("a potential is a JSON object".into()))?;
    let host = match host {
        Some(p) => {
            let g = serde_json::to_value(read_graph(p)?).map_err(|e| Error::Parse(e.to_string()))?;
            obj.insert("host".into(), g);
            p.display().to_string()
        }
        None if obj.contains_key("host") => "inline".into(),
        None => return Err(Error::Parse("no host graph: pass --host or add \"host\" to the potential".into())),
    };
    let spec: PotentialSpec = serde_json::from_value(raw).map_err(|e| Error::Parse(format!("potential: {e}")))?;
    let w = NearestNeighborPotential::from_spec(spec)?;
    let potential_check = nn_check(&w)?;
    let mut passed = potential_check.passes;
    let mut notes = Vec::new();
    let field_check = if cfg.beta.is_infinite() {
        notes.push("β = ∞: the field e^{-βW} degenerates, only the potential is checked".to_string());
        None
    } else {
        let r = markov_check(&MarkovField::from_potential(&w, cfg.beta)?)?;
        passed &= r.passes;
        Some(r)
    };
    let factorization = if factorize {
        let op = PartialSum::new(cfg.beta, w.len);
        let f = factorize_potential(&w, &op, engine_config(cfg))?;
        passed &= f.potential_minus.passes && f.potential_plus.passes;
        passed &= f.field_minus.as_ref().is_none_or(|r| r.passes) && f.field_plus.as_ref().is_none_or(|r| r.passes);
        Some(f)
    } else {
        None
    };
    let result = json!({
        "host": host,
        "potential": w.name,
        "nearest_neighbor": potential_check,
        "markov": field_check,
        "factorization": factorization,
        "notes": notes,
    });
    Outcome::new(result, vec!["exhaustive induced-subgraph family"], passed)
}

fn poly(cfg: &RunConfig, graph: &Path, union: Option<&Path>) -> Result<Outcome> {
    let g = read_graph(graph)?;
    let oracles = vec!["brute-force point counts", "exact interpolation"];
    match union {
        None => {
            let primes = cfg.primes.clone().unwrap_or_else(|| default_primes(g.num_edges()));
            Outcome::new(polycount(&g, &primes, cfg.cap)?, oracles, true)
        }
        Some(other) => {
            let g2 = read_graph(other)?;
            let primes = cfg.primes.clone().unwrap_or_else(|| default_primes(g.num_edges() + g2.num_edges()));
            let r = polycount_disjoint_union(&g, &g2, &primes, cfg.cap)?;
            let passed = r.counts_multiply && r.psi_additive;
            Outcome::new(r, oracles, passed)
        }
    }
}

fn stepcount(cfg: &RunConfig, table: Option<&Path>, graph: Option<&Path>) -> Result<Outcome> {
    let (table, graphs) = match (table, graph) {
        (Some(t), Some(g)) => (read_json::<StepCountTable>(t)?, read_graphs(g)?),
        (None, Some(g)) => (StepCountTable::hand_built().0, read_graphs(g)?),
        _ => StepCountTable::hand_built(),
    };
    let t = stepcount_demo(&table, &graphs, engine_config(cfg))?;
    let passed = t.factorization.identity_residual == 0.0;
    Outcome::new(t, vec!["factorization identity"], passed)
}
