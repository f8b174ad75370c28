//! Exhaustive verification sweeps over all elements up to a length bound:
//! the Levi correspondence of `B(G)_x`, Newton-point congruences along alcove
//! pairs, the emptiness criterion for the basic locus, and class-polynomial
//! transport.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine_weyl::{AffineWeylGroup, ExtAffineElement};
use crate::alcove::{enumerate_alcove_pairs, enumerate_all_alcove_pairs, levi_part, sigma_support, AlcovePair};
use crate::cache;
use crate::dl_reduction::{CacheStats, ClassPolynomial, PivotOrder, Reducer};
use crate::error::{Error, Result};
use crate::linalg::solve_rational;
use crate::literal::element_to_value;
use crate::newton_kottwitz::{embed_levi_class, Scope, SigmaClass, SigmaGroup};
use crate::root_datum::{parse_cartan_type, DiagramAutomorphism, LatticeChoice, LeviDatum, RootDatum};

/// Root datum, lattice and Frobenius of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub lattice: String,
    /// 1-based node permutation; `None` for the identity.
    pub sigma: Option<Vec<usize>>,
}

impl GroupSpec {
    pub fn new(cartan_type: &str, lattice: &str, sigma: Option<Vec<usize>>) -> Self {
        GroupSpec { cartan_type: cartan_type.to_string(), lattice: lattice.to_string(), sigma }
    }

    pub fn build(&self) -> Result<Arc<AffineWeylGroup>> {
        let factors = parse_cartan_type(&self.cartan_type)?;
        let datum = Arc::new(RootDatum::build(&factors, &LatticeChoice::parse(&self.lattice)?)?);
        let delta = match &self.sigma {
            None => DiagramAutomorphism::identity(&datum),
            Some(p) => {
                if p.contains(&0) {
                    return Err(Error::InvalidAutomorphism("node permutation is 1-based".into()));
                }
                let perm: Vec<usize> = p.iter().map(|i| i - 1).collect();
                DiagramAutomorphism::from_node_permutation(&datum, &perm)?
            }
        };
        Ok(Arc::new(AffineWeylGroup::new(datum, delta)?))
    }
}

/// Parses `2,1`, `[2,1]` or `id`.
pub fn parse_sigma(s: &str) -> Result<Option<Vec<usize>>> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.is_empty() || t.eq_ignore_ascii_case("id") || t.eq_ignore_ascii_case("identity") {
        return Ok(None);
    }
    t.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Config(format!("bad sigma entry {x:?}"))))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Theorem1,
    Corollary,
    Lim,
    Classpoly,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Theorem1, Check::Corollary, Check::Lim, Check::Classpoly];

    pub fn name(self) -> &'static str {
        match self {
            Check::Theorem1 => "theorem1",
            Check::Corollary => "corollary",
            Check::Lim => "lim",
            Check::Classpoly => "classpoly",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown check {s:?}")))
    }
}

/// Parses a comma-separated list; `all` selects every check.
pub fn parse_checks(s: &str) -> Result<Vec<Check>> {
    if s.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let set: BTreeSet<Check> = s.split(',').filter(|p| !p.trim().is_empty()).map(Check::from_str).collect::<Result<_>>()?;
    if set.is_empty() {
        return Err(Error::Config("no checks selected".into()));
    }
    Ok(set.into_iter().collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepConfig {
    pub group: GroupSpec,
    pub max_length: usize,
    pub checks: Vec<Check>,
    /// 0 uses the default thread count.
    #[serde(skip)]
    pub workers: usize,
    #[serde(skip)]
    pub cache: Option<PathBuf>,
    /// Free coordinates of `X_*/ZΦ∨` range over `[-r, r]` when choosing Ω.
    pub omega_radius: i64,
    #[serde(skip)]
    pub pivot_order: PivotOrder,
}

impl SweepConfig {
    pub fn new(group: GroupSpec, max_length: usize, checks: Vec<Check>) -> Self {
        SweepConfig { group, max_length, checks, workers: 0, cache: None, omega_radius: 1, pivot_order: PivotOrder::Ascending }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let int = |v: &str| v.parse::<i64>().map_err(|_| Error::Config(format!("{key}: expected an integer, got {v:?}")));
        match key.trim().replace('-', "_").as_str() {
            "type" => self.group.cartan_type = value.to_string(),
            "lattice" => self.group.lattice = value.to_string(),
            "sigma" => self.group.sigma = parse_sigma(value)?,
            "max_length" => self.max_length = usize::try_from(int(value)?).map_err(|_| Error::Config("max_length must be ≥ 0".into()))?,
            "checks" => self.checks = parse_checks(value)?,
            "workers" => self.workers = usize::try_from(int(value)?).map_err(|_| Error::Config("workers must be ≥ 0".into()))?,
            "cache" => self.cache = Some(PathBuf::from(value)),
            "omega_radius" => self.omega_radius = int(value)?.max(0),
            "pivot_order" => {
                self.pivot_order = match value {
                    "ascending" => PivotOrder::Ascending,
                    "descending" => PivotOrder::Descending,
                    _ => return Err(Error::Config(format!("unknown pivot order {value:?}"))),
                }
            }
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a `key = value` text file; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }
}

/// The reduction engine of a σ-stable Levi `M_J`.
pub struct LeviEngine {
    pub levi: LeviDatum,
    pub reducer: Reducer,
}

impl LeviEngine {
    /// `x̃ ∈ W̃_M` as an element of the Levi's own group.
    pub fn to_levi(&self, x: &ExtAffineElement) -> Option<ExtAffineElement> {
        self.levi.from_ambient(x.finite_part()).map(|u| ExtAffineElement::new(x.lambda().to_vec(), u))
    }
}

/// Ambient reducer plus one reducer per σ-stable `J`, shared across a sweep.
pub struct Engines {
    pub ambient: Reducer,
    pub levis: BTreeMap<Vec<usize>, LeviEngine>,
}

impl Engines {
    pub fn new(group: Arc<AffineWeylGroup>, order: PivotOrder) -> Result<Self> {
        let datum = group.datum().clone();
        let delta = group.frobenius().delta().clone();
        let mut levis = BTreeMap::new();
        for subset in crate::alcove::sigma_stable_subsets(&datum, &delta) {
            let levi = datum.build_levi(&subset)?;
            let restricted = delta.restrict(&levi)?;
            let mg = Arc::new(AffineWeylGroup::new(levi.datum().clone(), restricted)?);
            let reducer = Reducer::with_order(SigmaGroup::new(mg, Scope::Levi(subset.clone())), order);
            levis.insert(subset, LeviEngine { levi, reducer });
        }
        let ambient = Reducer::with_order(SigmaGroup::new(group, Scope::Ambient), order);
        Ok(Engines { ambient, levis })
    }

    pub fn group(&self) -> &Arc<AffineWeylGroup> {
        self.ambient.group()
    }

    fn named(&self) -> Vec<(String, &Reducer)> {
        let mut out = vec![("G".to_string(), &self.ambient)];
        for (j, e) in &self.levis {
            let ids: Vec<String> = j.iter().map(|i| (i + 1).to_string()).collect();
            out.push((format!("J={}", ids.join(",")), &e.reducer));
        }
        out
    }

    pub fn load_cache(&self, path: &std::path::Path) -> Result<usize> {
        cache::load(path, &cache::signature(&self.ambient), &self.named())
    }

    pub fn save_cache(&self, path: &std::path::Path) -> Result<usize> {
        cache::save(path, &cache::signature(&self.ambient), &self.named())
    }

    pub fn stats(&self) -> CacheStats {
        self.named().iter().fold(CacheStats::default(), |acc, (_, r)| {
            let s = r.stats();
            CacheStats { entries: acc.entries + s.entries, hits: acc.hits + s.hits, misses: acc.misses + s.misses }
        })
    }

    /// `B(M)_{x̃}` mapped to `G`, with the `M`-classes alongside.
    fn levi_classes(&self, pair: &AlcovePair, x: &ExtAffineElement) -> Result<LeviSide> {
        let g = self.group();
        let engine = &self.levis[&pair.subset];
        let tilde = levi_part(g, x, pair.w);
        let Some(xm) = engine.to_levi(&tilde) else {
            return Ok(LeviSide::NotInLevi(tilde));
        };
        let summary = engine.reducer.summary(&xm)?;
        let mapped = summary
            .polys
            .iter()
            .map(|(c, f)| {
                let image = embed_levi_class(&engine.levi, engine.reducer.sigma_group(), self.ambient.sigma_group(), c);
                (c.clone(), image, f.clone())
            })
            .collect();
        Ok(LeviSide::Classes { xm, kappa_m: engine.reducer.sigma_group().kottwitz_point(&tilde), mapped })
    }
}

enum LeviSide {
    NotInLevi(ExtAffineElement),
    Classes {
        xm: ExtAffineElement,
        kappa_m: crate::newton_kottwitz::KottwitzPoint,
        mapped: Vec<(SigmaClass, SigmaClass, ClassPolynomial)>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub counterexamples: Vec<Value>,
    pub verdicts: Vec<Value>,
    /// Reported observations that are not asserted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Aggregate {
    pub alcove_pairs: usize,
    pub classes_computed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub config: SweepConfig,
    pub elements_swept: usize,
    pub checks: Vec<CheckReport>,
    pub aggregate: Aggregate,
    /// Counterexamples caused by internal errors rather than failed checks.
    pub internal_errors: Vec<Value>,
    pub elapsed_ms: u64,
    pub cache_stats: CacheStats,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.internal_errors.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn counterexample_count(&self) -> usize {
        self.internal_errors.len() + self.checks.iter().map(|c| c.counterexamples.len()).sum::<usize>()
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// The report without run-dependent fields (timing, cache counters).
    pub fn deterministic_value(&self) -> Value {
        let mut v = self.to_value();
        if let Value::Object(m) = &mut v {
            m.remove("elapsed_ms");
            m.remove("cache_stats");
        }
        v
    }
}

/// Whether σ permutes the irreducible components of the diagram transitively.
pub fn is_sigma_connected(group: &AffineWeylGroup) -> bool {
    let datum = group.datum();
    let comps = datum.components();
    if comps.len() <= 1 {
        return true;
    }
    let perm = group.frobenius().delta().node_permutation();
    let comp_of = |node: usize| comps.iter().position(|c| c.contains(&node)).expect("node in a component");
    let mut reached = BTreeSet::from([0usize]);
    let mut frontier = vec![0usize];
    while let Some(c) = frontier.pop() {
        let next = comp_of(perm[comps[c][0]]);
        if reached.insert(next) {
            frontier.push(next);
        }
    }
    reached.len() == comps.len()
}

struct ElementOutcome {
    counterexamples: BTreeMap<Check, Vec<Value>>,
    verdicts: BTreeMap<Check, Value>,
    internal: Option<Value>,
    pairs: usize,
    classes: usize,
    integral: (usize, usize),
}

fn class_list(classes: &[SigmaClass]) -> Value {
    serde_json::to_value(classes).expect("classes serialize")
}

fn pair_value(datum: &RootDatum, pair: &AlcovePair) -> Value {
    json!({
        "J": pair.subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "w": datum.reduced_word(pair.w).iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>(),
        "normalized": pair.normalized,
        "trivial": pair.trivial,
    })
}

fn check_element(engines: &Engines, checks: &[Check], x: &ExtAffineElement) -> ElementOutcome {
    let mut out = ElementOutcome {
        counterexamples: BTreeMap::new(),
        verdicts: BTreeMap::new(),
        internal: None,
        pairs: 0,
        classes: 0,
        integral: (0, 0),
    };
    if let Err(e) = check_element_inner(engines, checks, x, &mut out) {
        out.internal = Some(json!({
            "element": element_to_value(engines.group().datum(), x),
            "error": e.to_string(),
        }));
    }
    out
}

fn check_element_inner(engines: &Engines, checks: &[Check], x: &ExtAffineElement, out: &mut ElementOutcome) -> Result<()> {
    let g = engines.group();
    let datum = g.datum();
    let sigma = engines.ambient.sigma_group();
    let xv = element_to_value(datum, x);
    let summary = engines.ambient.summary(x)?;
    let bg: Vec<SigmaClass> = summary.classes().cloned().collect();
    let bg_set: BTreeSet<&SigmaClass> = bg.iter().collect();
    out.classes = bg.len();
    let pairs = enumerate_alcove_pairs(g, x);
    out.pairs = pairs.len();
    let length = g.length(x);

    if checks.contains(&Check::Theorem1) || checks.contains(&Check::Classpoly) {
        let mut t1_fail = Vec::new();
        let mut cp_fail = Vec::new();
        for pair in &pairs {
            let pv = pair_value(datum, pair);
            let (xm, kappa_m, mapped) = match engines.levi_classes(pair, x)? {
                LeviSide::NotInLevi(tilde) => {
                    let cx = json!({"element": xv, "pair": pv, "reason": "x̃ is not in the Levi",
                                    "x_tilde": element_to_value(datum, &tilde)});
                    t1_fail.push(cx.clone());
                    cp_fail.push(cx);
                    continue;
                }
                LeviSide::Classes { xm, kappa_m, mapped } => (xm, kappa_m, mapped),
            };
            let images: BTreeSet<&SigmaClass> = mapped.iter().map(|(_, img, _)| img).collect();
            let mut reasons = Vec::new();
            if images != bg_set {
                reasons.push("image of B(M) differs from B(G)_x");
            }
            if images.len() != mapped.len() {
                reasons.push("map B(M) -> B(G) is not injective");
            }
            if mapped.iter().any(|(m, img, _)| m.nu.0 != img.nu.0) {
                reasons.push("Newton points of M and G differ");
            }
            if mapped.iter().any(|(m, _, _)| m.kappa != kappa_m) {
                reasons.push("classes of B(M) do not share the Kottwitz point of x̃");
            }
            if !reasons.is_empty() {
                let m_classes: Vec<SigmaClass> = mapped.iter().map(|(m, _, _)| m.clone()).collect();
                let images: Vec<SigmaClass> = mapped.iter().map(|(_, img, _)| img.clone()).collect();
                t1_fail.push(json!({
                    "element": xv, "pair": pv, "reasons": reasons,
                    "x_tilde": element_to_value(engines.levis[&pair.subset].levi.datum(), &xm),
                    "b_m": class_list(&m_classes), "image": class_list(&images), "b_g": class_list(&bg),
                }));
            }
            let mut pushed: BTreeMap<SigmaClass, ClassPolynomial> = BTreeMap::new();
            for (_, img, f) in &mapped {
                let e = pushed.entry(img.clone()).or_default();
                *e = e.add(f);
            }
            pushed.retain(|_, f| !f.is_zero());
            if pushed != summary.polys {
                let show = |m: &BTreeMap<SigmaClass, ClassPolynomial>| -> Value {
                    m.iter().map(|(c, f)| json!({"class": c, "poly": f.to_string()})).collect()
                };
                cp_fail.push(json!({"element": xv, "pair": pv, "levi": show(&pushed), "ambient": show(&summary.polys)}));
            }
        }
        if checks.contains(&Check::Theorem1) {
            out.verdicts.insert(Check::Theorem1, json!({"element": xv, "pairs": pairs.len(), "pass": t1_fail.is_empty()}));
            out.counterexamples.insert(Check::Theorem1, t1_fail);
        }
        if checks.contains(&Check::Classpoly) {
            let total: i64 = summary.polys.values().map(|f| f.eval(1)).sum();
            if total != 1 {
                cp_fail.push(json!({"element": xv, "reason": format!("class polynomials sum to {total} at q = 1")}));
            }
            if summary.polys.values().any(|f| f.degree().is_none_or(|d| d > length)) {
                cp_fail.push(json!({"element": xv, "reason": "class polynomial of degree > ℓ(x) or zero"}));
            }
            let kappa = sigma.kottwitz_point(x);
            if bg.iter().any(|c| c.kappa != kappa) {
                cp_fail.push(json!({"element": xv, "reason": "class with Kottwitz point different from x"}));
            }
            match engines.ambient.generic_class(x) {
                Ok(c) => {
                    if c.nu.0.pair(datum.rho2()) > num_rational::Rational64::from_integer(length as i64) {
                        cp_fail.push(json!({"element": xv, "reason": "generic Newton point pairs with 2ρ above ℓ(x)"}));
                    }
                }
                Err(e) => cp_fail.push(json!({"element": xv, "reason": e.to_string()})),
            }
            out.verdicts.insert(Check::Classpoly, json!({"element": xv, "pass": cp_fail.is_empty()}));
            out.counterexamples.insert(Check::Classpoly, cp_fail);
        }
    }

    if checks.contains(&Check::Corollary) {
        let mut fails = Vec::new();
        let all_pairs = enumerate_all_alcove_pairs(g, x);
        let subsets: BTreeSet<&Vec<usize>> = all_pairs.iter().map(|p| &p.subset).collect();
        let generic = engines.ambient.generic_class(x)?;
        for subset in &subsets {
            let levi = &engines.levis[*subset].levi;
            let coroots: Vec<Vec<i64>> = subset.iter().map(|&j| datum.simple_coroot(j).to_vec()).collect();
            let weight: Vec<i64> = datum.rho2().iter().zip(levi.rho2()).map(|(a, b)| a - b).collect();
            let mut integral = true;
            for (i, b1) in bg.iter().enumerate() {
                for b2 in &bg[i + 1..] {
                    let diff = b1.nu.0.sub(&b2.nu.0);
                    match solve_rational(&coroots, &diff) {
                        None => fails.push(json!({
                            "element": xv, "J": subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            "reason": "Newton points differ outside the span of the Levi coroots",
                            "classes": class_list(&[b1.clone(), b2.clone()]),
                        })),
                        Some(c) => integral &= c.iter().all(|q| q.is_integer()),
                    }
                }
            }
            for b in &bg {
                let pairing = generic.nu.0.sub(&b.nu.0).pair(&weight);
                if !pairing.is_zero() {
                    fails.push(json!({
                        "element": xv, "J": subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "reason": "⟨ν(b_x) - ν(b), 2ρ - 2ρ_J⟩ ≠ 0",
                        "classes": class_list(&[generic.clone(), b.clone()]),
                    }));
                }
            }
            if integral {
                out.integral.0 += 1;
            } else {
                out.integral.1 += 1;
            }
        }
        out.verdicts.insert(
            Check::Corollary,
            json!({"element": xv, "pairs": all_pairs.len(), "subsets": subsets.len(), "pass": fails.is_empty()}),
        );
        out.counterexamples.insert(Check::Corollary, fails);
    }

    if checks.contains(&Check::Lim) {
        let kappa = sigma.kottwitz_point(x);
        let basic = sigma.basic_class(&kappa);
        let empty = !bg_set.contains(&basic);
        let support = sigma_support(g, x);
        let proper = pairs.iter().any(|p| !p.trivial);
        let criterion = !support.spherical && proper;
        let pass = empty == criterion;
        let verdict = json!({
            "element": xv, "basic_locus_empty": empty, "spherical": support.spherical,
            "proper_alcove_pair": proper, "pass": pass,
        });
        out.counterexamples.insert(Check::Lim, if pass { vec![] } else { vec![verdict.clone()] });
        out.verdicts.insert(Check::Lim, verdict);
    }
    Ok(())
}

/// Runs the selected checks over every element of length ≤ `max_length`.
pub fn run_sweep(config: &SweepConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let group = config.group.build()?;
    if config.checks.contains(&Check::Lim) && !is_sigma_connected(&group) {
        return Err(Error::NotSigmaConnected);
    }
    let engines = Engines::new(group.clone(), config.pivot_order)?;
    if let Some(path) = &config.cache {
        if path.exists() {
            engines.load_cache(path)?;
        }
    }
    let elements = group.elements_up_to_length(config.max_length, config.omega_radius);
    let work = || -> Vec<ElementOutcome> {
        elements.par_iter().map(|x| check_element(&engines, &config.checks, x)).collect()
    };
    let outcomes = if config.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(work)
    } else {
        work()
    };
    if let Some(path) = &config.cache {
        engines.save_cache(path)?;
    }

    let mut checks = Vec::new();
    for &check in &config.checks {
        let mut counterexamples = Vec::new();
        let mut verdicts = Vec::new();
        for o in &outcomes {
            counterexamples.extend(o.counterexamples.get(&check).into_iter().flatten().cloned());
            verdicts.extend(o.verdicts.get(&check).cloned());
        }
        let data = (check == Check::Corollary).then(|| {
            let (holds, fails) = outcomes.iter().fold((0, 0), |acc, o| (acc.0 + o.integral.0, acc.1 + o.integral.1));
            json!({"integral_congruence": {"holds": holds, "fails": fails}})
        });
        checks.push(CheckReport { name: check.name().into(), pass: counterexamples.is_empty(), counterexamples, verdicts, data });
    }
    let internal_errors: Vec<Value> = outcomes.iter().filter_map(|o| o.internal.clone()).collect();
    if !internal_errors.is_empty() {
        for c in &mut checks {
            c.pass = false;
        }
    }
    Ok(VerificationReport {
        config: config.clone(),
        elements_swept: elements.len(),
        aggregate: Aggregate {
            alcove_pairs: outcomes.iter().map(|o| o.pairs).sum(),
            classes_computed: outcomes.iter().map(|o| o.classes).sum(),
        },
        checks,
        internal_errors,
        elapsed_ms: start.elapsed().as_millis() as u64,
        cache_stats: engines.stats(),
    })
}
