use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::certify::{certify_rb, sample_element, subadditivity_counterexample, superadditivity_counterexample, RbCertificate};
use super::element::{Element, Shape};
use super::operator::RotaBaxter;
use crate::hopf::{char_eval, Character, HopfAlgebra};
use crate::semiring::{Beta, Mode};
use crate::{Error, Result};

/// Which factorization recursion to run.
#[derive(Clone, Copy)]
pub enum Scheme<'a> {
    /// `ψ₋ = T ψ̃`, `ψ₊ = ψ₋ ⊕ ψ̃` with `T` of weight +1, at any β.
    WeightOne(&'a dyn RotaBaxter),
    /// Same recursion with a superadditive `T` of weight −1, at β = ∞.
    WeightMinusOne(&'a dyn RotaBaxter),
    /// `ψ₋ = T ψ̃`, `ψ₊ = T̃ ψ̃` for weight −1 operators with `T α = α ⊕ T̃ α`.
    Pair(&'a dyn RotaBaxter, &'a dyn RotaBaxter),
}

impl Scheme<'_> {
    fn main(&self) -> &dyn RotaBaxter {
        match *self {
            Scheme::WeightOne(t) | Scheme::WeightMinusOne(t) | Scheme::Pair(t, _) => t,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::WeightOne(_) => "weight-one",
            Scheme::WeightMinusOne(_) => "weight-minus-one",
            Scheme::Pair(_, _) => "pair",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EngineConfig {
    /// Random samples per operator identity.
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Largest combined degree of disjoint-union pairs checked by the drivers.
    pub pair_degree: usize,
    pub max_pairs: usize,
}

impl Default for EngineConfig {
    fn default() -> EngineConfig {
        EngineConfig { samples: 100, seed: 0x5eed, tol: 1e-9, pair_degree: 6, max_pairs: 32 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermRecord<K> {
    pub left: String,
    pub right: String,
    pub left_key: K,
    pub right_key: K,
    pub multiplicity: usize,
    #[serde(skip)]
    right_value: Option<Element>,
}

impl<K> TermRecord<K> {
    /// `ψ(x″)` as used when the term was formed.
    pub fn right_value(&self) -> Option<&Element> {
        self.right_value.as_ref()
    }
}

/// Natural logs of upper bounds on the number of exponential-picture terms
/// behind each value. `ln(F)/β` bounds the gap to the β = ∞ value.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LogFanIn {
    #[serde(with = "crate::serde_ext::ext_f64")]
    pub prepared: f64,
    #[serde(with = "crate::serde_ext::ext_f64")]
    pub minus: f64,
    #[serde(with = "crate::serde_ext::ext_f64")]
    pub plus: f64,
}

/// Memoized values for one basis element.
#[derive(Clone, Debug, Serialize)]
pub struct Entry<K> {
    pub key: K,
    pub graph: String,
    pub degree: usize,
    pub value: Element,
    pub prepared: Element,
    pub minus: Element,
    pub plus: Element,
    pub terms: Vec<TermRecord<K>>,
    /// At β = ∞, per coordinate of the preparation: `None` when `ψ(x)` attains
    /// it, otherwise the index of the attaining term.
    pub argmin: Option<Vec<Option<usize>>>,
    pub log_fan_in: LogFanIn,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicativityCheck {
    pub left: String,
    pub right: String,
    pub minus_residual: f64,
    pub plus_residual: f64,
}

/// Sampled properties of an operator beyond its Rota-Baxter identity.
#[derive(Clone, Debug, Serialize)]
pub struct AdditivityReport {
    pub operator: String,
    pub superadditive: bool,
    pub subadditive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRelations {
    /// `max |Tα − (α ⊕ T̃α)|` over samples.
    pub split_residual: f64,
    /// `max |T̃(αβ) ⊕ T̃α T̃β − T̃(Tα β ⊕ α Tβ)|` over samples.
    pub mixed_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationResult<K> {
    pub scheme: String,
    pub operators: Vec<String>,
    pub beta: Beta,
    pub mode: Mode,
    /// Coproduct multiplicities enter the deformed sums as weights.
    pub multiplicities: &'static str,
    pub entries: Vec<Entry<K>>,
    pub certificates: Vec<RbCertificate>,
    pub additivity: Vec<AdditivityReport>,
    pub pair_relations: Option<PairRelations>,
    /// Largest `|ψ₊ − ψ₋ ⋆ ψ|` (weight ±1) or `|ψ₋ − (ψ̃ ⊕ ψ₊)|` (pair) over entries.
    pub identity_residual: f64,
    pub multiplicativity: Vec<MultiplicativityCheck>,
    pub notes: Vec<String>,
}

impl<K> FactorizationResult<K> {
    pub fn max_multiplicativity_residual(&self) -> f64 {
        self.multiplicativity.iter().map(|m| m.minus_residual.max(m.plus_residual)).fold(0.0, f64::max)
    }
}

/// One factorization run: a character, a scheme, and the memo of computed values.
pub struct Session<'a, H: HopfAlgebra> {
    hopf: &'a H,
    psi: &'a dyn Character<H::Elem>,
    scheme: Scheme<'a>,
    beta: Beta,
    config: EngineConfig,
    memo: HashMap<H::Key, Entry<H::Key>>,
    order: Vec<H::Key>,
    certificates: Vec<RbCertificate>,
    additivity: Vec<AdditivityReport>,
    pair_relations: Option<PairRelations>,
    notes: Vec<String>,
}

fn log_add(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m.is_infinite() {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

fn ln_fan(op: &dyn RotaBaxter) -> f64 {
    op.fan_in().map_or(f64::INFINITY, f64::ln)
}

impl<'a, H: HopfAlgebra> Session<'a, H> {
    /// Validates the scheme and certifies its operators on random samples.
    pub fn new(hopf: &'a H, psi: &'a dyn Character<H::Elem>, scheme: Scheme<'a>, config: EngineConfig) -> Result<Self> {
        let op = scheme.main();
        let beta = op.beta();
        let unit = psi.unit();
        let check_op = |t: &dyn RotaBaxter| -> Result<()> {
            let d = t.domain();
            if d.shape != unit.shape() || d.len != unit.len() {
                return Err(Error::ShapeMismatch(format!(
                    "{} acts on {:?}[{}] but the character takes values in {:?}[{}]",
                    t.name(),
                    d.shape,
                    d.len,
                    unit.shape(),
                    unit.len()
                )));
            }
            if t.mode() != unit.mode() {
                return Err(Error::ModeMismatch);
            }
            if t.beta() != beta {
                return Err(Error::InvalidParameter("both operators must use the same β".into()));
            }
            Ok(())
        };
        let mut s = Session {
            hopf,
            psi,
            scheme,
            beta,
            config,
            memo: HashMap::new(),
            order: Vec::new(),
            certificates: Vec::new(),
            additivity: Vec::new(),
            pair_relations: None,
            notes: Vec::new(),
        };
        let want = if matches!(scheme, Scheme::WeightOne(_)) { 1.0 } else { -1.0 };
        let ops: Vec<&dyn RotaBaxter> = match scheme {
            Scheme::WeightOne(t) | Scheme::WeightMinusOne(t) => vec![t],
            Scheme::Pair(t, tt) => vec![t, tt],
        };
        for t in &ops {
            check_op(*t)?;
            if t.weight() != want {
                return Err(Error::InvalidParameter(format!(
                    "{} scheme needs weight {want}, {} has weight {}",
                    scheme.name(),
                    t.name(),
                    t.weight()
                )));
            }
        }
        if want < 0.0 && !beta.is_infinite() {
            return Err(Error::Domain("weight −1 factorization is defined at β = ∞ only".into()));
        }
        for (i, t) in ops.iter().enumerate() {
            let cert = certify_rb(*t, s.config.samples, s.config.seed.wrapping_add(i as u64))?;
            if cert.max_residual > s.config.tol {
                return Err(Error::Certification(format!(
                    "{}: Rota-Baxter residual {:e} exceeds {:e}",
                    cert.operator, cert.max_residual, s.config.tol
                )));
            }
            if !cert.monotone {
                return Err(Error::Certification(format!("{} is not monotone on the samples", cert.operator)));
            }
            s.certificates.push(cert);
        }
        match scheme {
            Scheme::WeightOne(_) => {}
            Scheme::WeightMinusOne(t) => {
                if let Some((f1, f2)) = superadditivity_counterexample(t, s.config.samples, s.config.seed)? {
                    return Err(Error::Certification(format!(
                        "{} is not superadditive: f₁ = {:?}, f₂ = {:?}",
                        t.name(),
                        f1.coeffs(),
                        f2.coeffs()
                    )));
                }
                s.additivity.push(s.additivity_report(t)?);
            }
            Scheme::Pair(t, tt) => {
                let rel = s.pair_relations(t, tt)?;
                if rel.split_residual > s.config.tol || rel.mixed_residual > s.config.tol {
                    return Err(Error::Certification(format!(
                        "pair relations fail: split residual {:e}, mixed residual {:e}",
                        rel.split_residual, rel.mixed_residual
                    )));
                }
                s.pair_relations = Some(rel);
                s.additivity.push(s.additivity_report(t)?);
                s.additivity.push(s.additivity_report(tt)?);
                let a = &s.additivity;
                if !(a[0].superadditive && a[1].superadditive) {
                    s.notes.push("the operators are not both superadditive on the samples".into());
                }
                if !a[1].subadditive {
                    s.notes.push("the second operator is not subadditive on the samples".into());
                }
            }
        }
        Ok(s)
    }

    fn additivity_report(&self, t: &dyn RotaBaxter) -> Result<AdditivityReport> {
        Ok(AdditivityReport {
            operator: t.name(),
            superadditive: superadditivity_counterexample(t, self.config.samples, self.config.seed)?.is_none(),
            subadditive: subadditivity_counterexample(t, self.config.samples, self.config.seed)?.is_none(),
        })
    }

    fn pair_relations(&self, t: &dyn RotaBaxter, tt: &dyn RotaBaxter) -> Result<PairRelations> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ 0xa11ce);
        let b = self.beta;
        let (mut split, mut mixed) = (0.0f64, 0.0f64);
        for _ in 0..self.config.samples {
            let a = sample_element(t.domain(), t.mode(), &mut rng);
            let c = sample_element(t.domain(), t.mode(), &mut rng);
            split = split.max(t.apply(&a)?.residual(&a.oplus(&tt.apply(&a)?, b)?)?);
            let lhs = tt.apply(&a.odot(&c, b)?)?.oplus(&tt.apply(&a)?.odot(&tt.apply(&c)?, b)?, b)?;
            let rhs = tt.apply(&t.apply(&a)?.odot(&c, b)?.oplus(&a.odot(&t.apply(&c)?, b)?, b)?)?;
            mixed = mixed.max(lhs.residual(&rhs)?);
        }
        Ok(PairRelations { split_residual: split, mixed_residual: mixed })
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }

    pub fn hopf(&self) -> &H {
        self.hopf
    }

    pub fn get(&self, key: &H::Key) -> Option<&Entry<H::Key>> {
        self.memo.get(key)
    }

    fn series_log_len(&self, unit: &Element) -> f64 {
        if unit.shape() == Shape::Series {
            (unit.len() as f64).ln()
        } else {
            0.0
        }
    }

    /// Values of `ψ`, `ψ̃`, `ψ₋`, `ψ₊` at `x`, computing lower-degree entries as needed.
    pub fn evaluate(&mut self, x: &H::Elem) -> Result<&Entry<H::Key>> {
        let key = self.hopf.key(x);
        if !self.memo.contains_key(&key) {
            let e = self.compute(x, key.clone())?;
            self.memo.insert(key.clone(), e);
            self.order.push(key.clone());
        }
        Ok(&self.memo[&key])
    }

    fn compute(&mut self, x: &H::Elem, key: H::Key) -> Result<Entry<H::Key>> {
        let (h, beta) = (self.hopf, self.beta);
        let unit = self.psi.unit();
        let graph = h.describe(x);
        let degree = h.degree(x);
        if h.is_unit(x) {
            let zero = LogFanIn { prepared: 0.0, minus: 0.0, plus: 0.0 };
            return Ok(Entry {
                key,
                graph,
                degree,
                value: unit.clone(),
                prepared: unit.clone(),
                minus: unit.clone(),
                plus: unit,
                terms: Vec::new(),
                argmin: None,
                log_fan_in: zero,
            });
        }
        let lsl = self.series_log_len(&unit);
        let value = char_eval(h, self.psi, x, beta)?;
        let value_fan = h.components(x).len().saturating_sub(1) as f64 * lsl;
        let mut parts: Vec<(Element, f64)> = vec![(value.clone(), 1.0)];
        let mut fans = vec![value_fan];
        let mut terms = Vec::new();
        for t in h.reduced_coproduct(x)? {
            if h.degree(&t.left) >= degree || h.degree(&t.right) >= degree {
                return Err(Error::Domain(format!("coproduct of {graph} does not lower the degree")));
            }
            let (minus, minus_fan, left_key) = {
                let e = self.evaluate(&t.left)?;
                (e.minus.clone(), e.log_fan_in.minus, e.key.clone())
            };
            let right = char_eval(h, self.psi, &t.right, beta)?;
            let right_fan = h.components(&t.right).len().saturating_sub(1) as f64 * lsl;
            parts.push((minus.odot(&right, beta)?, t.multiplicity as f64));
            fans.push(minus_fan + right_fan + lsl + (t.multiplicity as f64).ln());
            terms.push(TermRecord {
                left: h.describe(&t.left),
                right: h.describe(&t.right),
                left_key,
                right_key: h.key(&t.right),
                multiplicity: t.multiplicity,
                right_value: Some(right.clone()),
            });
        }
        let refs: Vec<(&Element, f64)> = parts.iter().map(|(v, w)| (v, *w)).collect();
        let prepared = Element::sum(&value, &refs, beta)?;
        let argmin = beta.is_infinite().then(|| {
            (0..prepared.len())
                .map(|j| {
                    let target = prepared.coeffs()[j];
                    if value.coeffs()[j] == target {
                        None
                    } else {
                        parts.iter().skip(1).position(|(v, _)| v.coeffs()[j] == target)
                    }
                })
                .collect()
        });
        let prepared_fan = fans.iter().copied().fold(f64::NEG_INFINITY, log_add);
        let op = self.scheme.main();
        let minus = op.apply(&prepared)?;
        let minus_fan = ln_fan(op) + prepared_fan;
        let (plus, plus_fan) = match self.scheme {
            Scheme::Pair(_, tt) => (tt.apply(&prepared)?, ln_fan(tt) + prepared_fan),
            _ => (minus.oplus(&prepared, beta)?, log_add(minus_fan, prepared_fan)),
        };
        Ok(Entry {
            key,
            graph,
            degree,
            value,
            prepared,
            minus,
            plus,
            terms,
            argmin,
            log_fan_in: LogFanIn { prepared: prepared_fan, minus: minus_fan, plus: plus_fan },
        })
    }

    /// `|ψ₊(x) − (ψ₋ ⋆ ψ)(x)|` for the weight ±1 schemes, `|ψ₋(x) − (ψ̃(x) ⊕ ψ₊(x))|` for pairs.
    pub fn identity_residual(&mut self, x: &H::Elem) -> Result<f64> {
        let beta = self.beta;
        let e = self.evaluate(x)?.clone();
        if self.hopf.is_unit(x) {
            return Ok(0.0);
        }
        if let Scheme::Pair(_, _) = self.scheme {
            return e.minus.residual(&e.prepared.oplus(&e.plus, beta)?);
        }
        let mut parts: Vec<(Element, f64)> = vec![(e.minus.clone(), 1.0), (e.value.clone(), 1.0)];
        for t in self.hopf.reduced_coproduct(x)? {
            let m = self.evaluate(&t.left)?.minus.clone();
            let r = char_eval(self.hopf, self.psi, &t.right, beta)?;
            parts.push((m.odot(&r, beta)?, t.multiplicity as f64));
        }
        let refs: Vec<(&Element, f64)> = parts.iter().map(|(v, w)| (v, *w)).collect();
        let conv = Element::sum(&e.value, &refs, beta)?;
        e.plus.residual(&conv)
    }

    /// Compares `ψ±(xy)` with `ψ±(x) ⊙ ψ±(y)`.
    pub fn multiplicativity(&mut self, x: &H::Elem, y: &H::Elem) -> Result<MultiplicativityCheck> {
        let beta = self.beta;
        let xy = self.hopf.product(x, y);
        let ex = self.evaluate(x)?.clone();
        let ey = self.evaluate(y)?.clone();
        let exy = self.evaluate(&xy)?.clone();
        Ok(MultiplicativityCheck {
            left: ex.graph,
            right: ey.graph,
            minus_residual: exy.minus.residual(&ex.minus.odot(&ey.minus, beta)?)?,
            plus_residual: exy.plus.residual(&ex.plus.odot(&ey.plus, beta)?)?,
        })
    }

    /// Entries in the order they were first computed.
    pub fn entries(&self) -> impl Iterator<Item = &Entry<H::Key>> {
        self.order.iter().map(move |k| &self.memo[k])
    }

    /// Evaluates `graphs`, checks the defining identity on every memoized
    /// element and multiplicativity on small pairs of inputs.
    pub fn run(mut self, graphs: &[H::Elem]) -> Result<FactorizationResult<H::Key>> {
        for g in graphs {
            self.evaluate(g)?;
        }
        let mut checks = Vec::new();
        'outer: for (i, a) in graphs.iter().enumerate() {
            for b in &graphs[i..] {
                if checks.len() >= self.config.max_pairs {
                    break 'outer;
                }
                let d = self.hopf.degree(a) + self.hopf.degree(b);
                if self.hopf.is_unit(a) || self.hopf.is_unit(b) || d > self.config.pair_degree {
                    continue;
                }
                checks.push(self.multiplicativity(a, b)?);
            }
        }
        let mut identity: f64 = 0.0;
        for k in 0..self.order.len() {
            let entry = &self.memo[&self.order[k]];
            if entry.degree > 0 {
                identity = identity.max(self.identity_from_entry(entry)?);
            }
        }
        Ok(self.finish(identity, checks))
    }

    /// Identity check from memoized term values only.
    fn identity_from_entry(&self, e: &Entry<H::Key>) -> Result<f64> {
        let beta = self.beta;
        if let Scheme::Pair(_, _) = self.scheme {
            return e.minus.residual(&e.prepared.oplus(&e.plus, beta)?);
        }
        let mut parts: Vec<(Element, f64)> = vec![(e.minus.clone(), 1.0), (e.value.clone(), 1.0)];
        for t in &e.terms {
            let m = &self.memo[&t.left_key].minus;
            let right = t.right_value.as_ref().ok_or_else(|| {
                Error::UndefinedComponent(format!("quotient {} has no stored value", t.right))
            })?;
            parts.push((m.odot(right, beta)?, t.multiplicity as f64));
        }
        let refs: Vec<(&Element, f64)> = parts.iter().map(|(v, w)| (v, *w)).collect();
        e.plus.residual(&Element::sum(&e.value, &refs, beta)?)
    }

    pub fn finish(self, identity_residual: f64, multiplicativity: Vec<MultiplicativityCheck>) -> FactorizationResult<H::Key> {
        let operators = match self.scheme {
            Scheme::WeightOne(t) | Scheme::WeightMinusOne(t) => vec![t.name()],
            Scheme::Pair(t, tt) => vec![t.name(), tt.name()],
        };
        let mut entries: Vec<Entry<H::Key>> = self.order.iter().map(|k| self.memo[k].clone()).collect();
        entries.sort_by(|a, b| (a.degree, &a.key).cmp(&(b.degree, &b.key)));
        FactorizationResult {
            scheme: self.scheme.name().into(),
            operators,
            beta: self.beta,
            mode: self.psi.unit().mode(),
            multiplicities: "counted",
            entries,
            certificates: self.certificates,
            additivity: self.additivity,
            pair_relations: self.pair_relations,
            identity_residual,
            multiplicativity,
            notes: self.notes,
        }
    }
}

/// Weight +1 factorization `ψ₊ = ψ₋ ⋆ ψ` at the operator's β.
pub fn factorize<H: HopfAlgebra>(
    h: &H,
    psi: &dyn Character<H::Elem>,
    op: &dyn RotaBaxter,
    graphs: &[H::Elem],
    config: EngineConfig,
) -> Result<FactorizationResult<H::Key>> {
    Session::new(h, psi, Scheme::WeightOne(op), config)?.run(graphs)
}

/// Weight −1 factorization with a superadditive operator, at β = ∞.
pub fn factorize_minus1<H: HopfAlgebra>(
    h: &H,
    psi: &dyn Character<H::Elem>,
    op: &dyn RotaBaxter,
    graphs: &[H::Elem],
    config: EngineConfig,
) -> Result<FactorizationResult<H::Key>> {
    Session::new(h, psi, Scheme::WeightMinusOne(op), config)?.run(graphs)
}

/// Factorization by a weight −1 pair `(T, T̃)`.
pub fn factorize_pair<H: HopfAlgebra>(
    h: &H,
    psi: &dyn Character<H::Elem>,
    t: &dyn RotaBaxter,
    tt: &dyn RotaBaxter,
    graphs: &[H::Elem],
    config: EngineConfig,
) -> Result<FactorizationResult<H::Key>> {
    Session::new(h, psi, Scheme::Pair(t, tt), config)?.run(graphs)
}
