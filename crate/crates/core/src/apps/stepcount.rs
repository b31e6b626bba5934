use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::birkhoff::{Element, EngineConfig, FactorizationResult, PartialSum, Scheme, Session, Shape};
use crate::hopf::{canonical_key, enumerate_graphs, CanonKey, FnCharacter, Graph, GraphHopf, HopfAlgebra};
use crate::semiring::{Beta, Mode};
use crate::{Error, Result};

/// Step counts `n ↦ ψₙ(Γ)` of one connected graph; `∞` marks a machine that does not halt.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepCountEntry {
    pub graph: Graph,
    #[serde(with = "crate::serde_ext::ext_vec")]
    pub steps: Vec<f64>,
}

/// Step counts for connected graphs; disconnected graphs add componentwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepCountTable {
    pub len: usize,
    pub entries: Vec<StepCountEntry>,
}

impl StepCountTable {
    pub fn validate(&self) -> Result<()> {
        if self.len == 0 {
            return Err(Error::InvalidParameter("a step-count table needs at least one machine".into()));
        }
        for e in &self.entries {
            if e.steps.len() != self.len {
                return Err(Error::DimensionMismatch(format!("{} has {} step counts, expected {}", e.graph, e.steps.len(), self.len)));
            }
            if e.steps.iter().any(|s| s.is_nan() || *s < 0.0) {
                return Err(Error::Domain(format!("step counts of {} must be nonnegative or ∞", e.graph)));
            }
            if !e.graph.without_isolated().is_connected() {
                return Err(Error::InvalidParameter(format!("{} is not connected; list its components instead", e.graph)));
            }
        }
        Ok(())
    }

    /// Deterministic pseudo-random integer step counts in `1..=20` for every
    /// connected graph with at most `max_edges` edges; each count is `∞` with
    /// probability `non_halting`.
    pub fn synthetic(max_edges: usize, len: usize, seed: u64, non_halting: f64) -> Result<StepCountTable> {
        if !(0.0..=1.0).contains(&non_halting) {
            return Err(Error::InvalidParameter(format!("non-halting probability {non_halting} outside [0, 1]")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries = enumerate_graphs(max_edges)
            .into_iter()
            .filter(|g| g.num_edges() > 0 && g.is_connected())
            .map(|graph| {
                let steps = (0..len)
                    .map(|_| {
                        let v = rng.gen_range(1..=20) as f64;
                        if rng.gen::<f64>() < non_halting {
                            f64::INFINITY
                        } else {
                            v
                        }
                    })
                    .collect();
                StepCountEntry { graph, steps }
            })
            .collect();
        Ok(StepCountTable { len, entries })
    }

    /// A single edge and a loop that always halt, and a two-edge path and a
    /// double edge on which every machine runs forever.
    pub fn hand_built() -> (StepCountTable, Vec<Graph>) {
        let table = StepCountTable {
            len: 3,
            entries: vec![
                StepCountEntry { graph: Graph::path(1), steps: vec![1.0, 2.0, 3.0] },
                StepCountEntry { graph: Graph::path(2), steps: vec![f64::INFINITY; 3] },
                StepCountEntry { graph: Graph::rose(1), steps: vec![2.0, 2.0, 2.0] },
                StepCountEntry { graph: Graph::banana(2), steps: vec![f64::INFINITY; 3] },
            ],
        };
        (table, vec![Graph::path(2), Graph::banana(2)])
    }
}

/// One step of the chain that realizes a prepared value.
#[derive(Clone, Debug, Serialize)]
pub struct ChainLink {
    pub graph: String,
    /// Machine index, starting at 1.
    pub n: usize,
    /// `"value"` when `ψₙ(Γ)` itself is the minimum, `"term"` for a subgraph term.
    pub source: &'static str,
    pub subgraph: Option<String>,
    pub quotient: Option<String>,
    /// The machine `k < n` attaining `min_k ψ̃_k(γ)`.
    pub previous_machine: Option<usize>,
}

/// The subgraph whose term gives a finite `ψ̃ₙ(Γ)` although `ψₙ(Γ) = ∞`.
#[derive(Clone, Debug, Serialize)]
pub struct Localization {
    pub subgraph: String,
    pub quotient: String,
    /// `ψₙ(Γ/γ) < ∞`.
    pub quotient_finite: bool,
    /// `ψₖ(γ) < ∞` for all `k = 1..n−1`; vacuous at `n = 1`.
    pub history_finite: bool,
    /// `min_{k<n} ψ̃ₖ(γ) < ∞`, the form the tropical partial sum needs; never holds at `n = 1`.
    pub tropical_history_finite: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRow {
    pub graph: String,
    pub n: usize,
    #[serde(with = "crate::serde_ext::ext_f64")]
    pub value: f64,
    #[serde(with = "crate::serde_ext::ext_f64")]
    pub prepared: f64,
    /// `ψₙ(Γ) = ∞` but `ψ̃ₙ(Γ) < ∞`.
    pub renormalized: bool,
    pub chain: Vec<ChainLink>,
    pub localization: Option<Localization>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepCountTranscript {
    pub machines: usize,
    pub rows: Vec<StepRow>,
    pub notes: Vec<String>,
    pub factorization: FactorizationResult<CanonKey>,
}

fn character(table: &StepCountTable) -> Result<FnCharacter<Graph>> {
    table.validate()?;
    let lookup: HashMap<CanonKey, Vec<f64>> =
        table.entries.iter().map(|e| (canonical_key(&e.graph.without_isolated(), false), e.steps.clone())).collect();
    let unit = Element::one(Shape::Sequence, Mode::MinPlus, table.len);
    Ok(FnCharacter::new("step_count", unit, move |g: &Graph| {
        lookup
            .get(&canonical_key(g, false))
            .map(|s| Element::sequence(s.clone()))
            .ok_or_else(|| Error::UndefinedComponent(format!("no step counts for {g}")))
    }))
}

/// Runs the tropical factorization of a step-count character with the
/// partial-sum operator `(Tf)(n) = min_{k<n} f(k)` and records, for every
/// graph and machine, which chain of subgraphs realizes `ψ̃ₙ(Γ)`.
pub fn stepcount_demo(table: &StepCountTable, graphs: &[Graph], config: EngineConfig) -> Result<StepCountTranscript> {
    let psi = character(table)?;
    let h = GraphHopf::default();
    let op = PartialSum::new(Beta::INFINITY, table.len);
    let mut session = Session::new(&h, &psi, Scheme::WeightOne(&op), config)?;
    for g in graphs {
        session.evaluate(g)?;
    }
    let mut rows = Vec::new();
    for g in graphs {
        let key = h.key(g);
        for j in 0..table.len {
            rows.push(row(&session, &key, j)?);
        }
    }
    let notes = vec![
        "the partial sum is tropical: min over earlier machines replaces the sum over k < n".into(),
        "boundary terms ψₙ(∂γ) of the inclusion-exclusion comparison are taken as zero".into(),
    ];
    let factorization = session.run(graphs)?;
    Ok(StepCountTranscript { machines: table.len, rows, notes, factorization })
}

fn row(session: &Session<'_, GraphHopf>, key: &CanonKey, j: usize) -> Result<StepRow> {
    let missing = |k: &CanonKey| Error::UndefinedComponent(format!("{k:?} was not evaluated"));
    let e = session.get(key).ok_or_else(|| missing(key))?;
    let (value, prepared) = (e.value.coeffs()[j], e.prepared.coeffs()[j]);
    let mut chain = Vec::new();
    let mut localization = None;
    let (mut cur, mut n) = (e, j);
    loop {
        let term = cur.argmin.as_ref().and_then(|a| a[n]).filter(|_| cur.prepared.coeffs()[n].is_finite());
        let Some(i) = term else {
            chain.push(ChainLink { graph: cur.graph.clone(), n: n + 1, source: "value", subgraph: None, quotient: None, previous_machine: None });
            break;
        };
        let t = &cur.terms[i];
        let sub = session.get(&t.left_key).ok_or_else(|| missing(&t.left_key))?;
        let k = (0..n).find(|&k| sub.prepared.coeffs()[k] == sub.minus.coeffs()[n]);
        if localization.is_none() && value.is_infinite() && prepared.is_finite() {
            let right = t.right_value().map(|r| r.coeffs()[n]).unwrap_or(f64::INFINITY);
            localization = Some(Localization {
                subgraph: t.left.clone(),
                quotient: t.right.clone(),
                quotient_finite: right.is_finite(),
                history_finite: sub.value.coeffs()[..n].iter().all(|x| x.is_finite()),
                tropical_history_finite: sub.minus.coeffs()[n].is_finite(),
            });
        }
        chain.push(ChainLink {
            graph: cur.graph.clone(),
            n: n + 1,
            source: "term",
            subgraph: Some(t.left.clone()),
            quotient: Some(t.right.clone()),
            previous_machine: k.map(|k| k + 1),
        });
        match k {
            Some(k) => {
                cur = sub;
                n = k;
            }
            None => break,
        }
    }
    Ok(StepRow {
        graph: e.graph.clone(),
        n: j + 1,
        value,
        prepared,
        renormalized: value.is_infinite() && prepared.is_finite(),
        chain,
        localization,
    })
}
