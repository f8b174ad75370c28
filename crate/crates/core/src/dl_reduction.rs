//! Deligne–Lusztig reduction: σ-conjugation orbit search, reduction trees,
//! `B(G)_x`, class polynomials and dimensions.
//!
//! Results are memoized per element in a concurrent map that tolerates
//! duplicate identical inserts, so one [`Reducer`] can serve a parallel sweep.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::affine_weyl::{AffineWeylGroup, ExtAffineElement};
use crate::error::{Error, Result};
use crate::newton_kottwitz::{SigmaClass, SigmaGroup};

/// Polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassPolynomial(Vec<i64>);

impl ClassPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ClassPolynomial(coeffs)
    }

    pub fn one() -> Self {
        ClassPolynomial(vec![1])
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, c| acc * q + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let coeffs = (0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
            .collect();
        Self::new(coeffs)
    }

    pub fn times_q(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0];
        coeffs.extend_from_slice(&self.0);
        ClassPolynomial(coeffs)
    }

    pub fn times_q_minus_one(&self) -> Self {
        let neg = ClassPolynomial(self.0.iter().map(|c| -c).collect());
        self.times_q().add(&neg)
    }
}

impl fmt::Display for ClassPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{a}q")?,
                (_, 1) => write!(f, "q^{d}")?,
                _ => write!(f, "{a}q^{d}")?,
            }
        }
        Ok(())
    }
}

/// Order in which BFS expands neighbours and tries pivots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PivotOrder {
    #[default]
    Ascending,
    Descending,
}

/// The full constant-length σ-conjugation orbit of an element with no
/// length-decreasing move; the element has minimal length in its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityCertificate {
    pub orbit: Vec<ExtAffineElement>,
}

/// `x = x_1 → ⋯ → x_n = y` by length-preserving moves, then a pivot `s`
/// with `ℓ(s y σ(s)) = ℓ(y) - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    /// `(label, element)` pairs: each element is obtained from the
    /// previous one by σ-conjugating with the labelled reflection.
    pub chain: Vec<(usize, ExtAffineElement)>,
    pub y: ExtAffineElement,
    pub pivot: usize,
    /// `s y σ(s)`.
    pub conjugate: ExtAffineElement,
    /// `s y`.
    pub shortened: ExtAffineElement,
    /// Every orbit element visited before the pivot was found.
    pub visited: Vec<ExtAffineElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minimality {
    Minimal(MinimalityCertificate),
    Reducible(ReductionStep),
}

/// Memoized reduction result of one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub length: usize,
    pub polys: BTreeMap<SigmaClass, ClassPolynomial>,
    pub dims: BTreeMap<SigmaClass, i64>,
}

impl Summary {
    pub fn classes(&self) -> impl Iterator<Item = &SigmaClass> {
        self.polys.keys()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionTree {
    Leaf {
        element: ExtAffineElement,
        class: SigmaClass,
        orbit_size: usize,
    },
    Split {
        element: ExtAffineElement,
        step: ReductionStep,
        conjugate: Box<ReductionTree>,
        shortened: Box<ReductionTree>,
    },
}

impl ReductionTree {
    pub fn leaves(&self) -> Vec<(&ExtAffineElement, &SigmaClass)> {
        match self {
            ReductionTree::Leaf { element, class, .. } => vec![(element, class)],
            ReductionTree::Split { conjugate, shortened, .. } => {
                let mut out = conjugate.leaves();
                out.extend(shortened.leaves());
                out
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
}

pub struct Reducer {
    sigma: SigmaGroup,
    order: PivotOrder,
    memo: DashMap<ExtAffineElement, Arc<Summary>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Reducer {
    pub fn new(sigma: SigmaGroup) -> Self {
        Self::with_order(sigma, PivotOrder::Ascending)
    }

    pub fn with_order(sigma: SigmaGroup, order: PivotOrder) -> Self {
        Reducer { sigma, order, memo: DashMap::new(), hits: AtomicU64::new(0), misses: AtomicU64::new(0) }
    }

    pub fn sigma_group(&self) -> &SigmaGroup {
        &self.sigma
    }

    pub fn group(&self) -> &Arc<AffineWeylGroup> {
        self.sigma.group()
    }

    pub fn pivot_order(&self) -> PivotOrder {
        self.order
    }

    fn positions(&self) -> Vec<usize> {
        let n = self.group().simples().len();
        match self.order {
            PivotOrder::Ascending => (0..n).collect(),
            PivotOrder::Descending => (0..n).rev().collect(),
        }
    }

    /// Breadth-first search of the constant-length σ-conjugation orbit of
    /// `x`, stopping at the first length-decreasing pivot.
    pub fn minimality(&self, x: &ExtAffineElement) -> Minimality {
        let g = self.group();
        let len = g.length(x);
        let positions = self.positions();
        let mut parent: HashMap<ExtAffineElement, Option<(usize, ExtAffineElement)>> = HashMap::new();
        let mut order = vec![x.clone()];
        parent.insert(x.clone(), None);
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(y) = queue.pop_front() {
            for &pos in &positions {
                let z = g.sigma_conjugate_simple(pos, &y);
                let lz = g.length(&z);
                if lz < len {
                    let s = &g.simples()[pos];
                    let mut chain = Vec::new();
                    let mut cur = y.clone();
                    while let Some(Some((label, prev))) = parent.get(&cur) {
                        chain.push((*label, cur.clone()));
                        cur = prev.clone();
                    }
                    chain.reverse();
                    return Minimality::Reducible(ReductionStep {
                        chain,
                        shortened: g.mul(&s.element, &y),
                        y,
                        pivot: s.label,
                        conjugate: z,
                        visited: order,
                    });
                }
                if lz == len && !parent.contains_key(&z) {
                    parent.insert(z.clone(), Some((g.simples()[pos].label, y.clone())));
                    order.push(z.clone());
                    queue.push_back(z);
                }
            }
        }
        Minimality::Minimal(MinimalityCertificate { orbit: order })
    }

    pub fn summary(&self, x: &ExtAffineElement) -> Result<Arc<Summary>> {
        if let Some(s) = self.memo.get(x) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(s.clone());
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let g = self.group();
        let length = g.length(x);
        let (summary, members) = match self.minimality(x) {
            Minimality::Minimal(cert) => {
                let class = self.sigma.class_of(x)?;
                let pairing = class.nu.0.pair(self.sigma.datum().rho2());
                debug_assert!(pairing.is_integer(), "⟨ν, 2ρ⟩ = {pairing} is not integral");
                let dim = length as i64 - pairing.to_integer();
                let summary = Summary {
                    length,
                    polys: BTreeMap::from([(class.clone(), ClassPolynomial::one())]),
                    dims: BTreeMap::from([(class, dim)]),
                };
                (summary, cert.orbit)
            }
            Minimality::Reducible(step) => {
                let a = self.summary(&step.conjugate)?;
                let b = self.summary(&step.shortened)?;
                (combine(length, &a, &b), step.visited)
            }
        };
        let summary = Arc::new(summary);
        for y in members {
            self.memo.entry(y).or_insert_with(|| summary.clone());
        }
        Ok(summary)
    }

    /// Explicit reduction tree; not memoized.
    pub fn reduce(&self, x: &ExtAffineElement) -> Result<ReductionTree> {
        Ok(match self.minimality(x) {
            Minimality::Minimal(cert) => ReductionTree::Leaf {
                element: x.clone(),
                class: self.sigma.class_of(x)?,
                orbit_size: cert.orbit.len(),
            },
            Minimality::Reducible(step) => ReductionTree::Split {
                element: x.clone(),
                conjugate: Box::new(self.reduce(&step.conjugate)?),
                shortened: Box::new(self.reduce(&step.shortened)?),
                step,
            },
        })
    }

    /// `B(G)_x`, ordered.
    pub fn b_of_x(&self, x: &ExtAffineElement) -> Result<Vec<SigmaClass>> {
        Ok(self.summary(x)?.classes().cloned().collect())
    }

    pub fn class_polynomials(&self, x: &ExtAffineElement) -> Result<BTreeMap<SigmaClass, ClassPolynomial>> {
        Ok(self.summary(x)?.polys.clone())
    }

    pub fn dimension_table(&self, x: &ExtAffineElement) -> Result<BTreeMap<SigmaClass, i64>> {
        Ok(self.summary(x)?.dims.clone())
    }

    /// The dominance-maximum of `B(G)_x`.
    pub fn generic_class(&self, x: &ExtAffineElement) -> Result<SigmaClass> {
        let classes = self.b_of_x(x)?;
        let maximal: Vec<&SigmaClass> = classes
            .iter()
            .filter(|c| !classes.iter().any(|d| d != *c && self.sigma.dominance_leq(c, d)))
            .collect();
        match maximal.as_slice() {
            [one] if classes.iter().all(|c| self.sigma.dominance_leq(c, one)) => Ok((*one).clone()),
            _ => Err(Error::NonUniqueGeneric(
                maximal.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; "),
            )),
        }
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            entries: self.memo.len(),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    /// Memoized summaries, sorted by element.
    pub fn entries(&self) -> Vec<(ExtAffineElement, Arc<Summary>)> {
        let mut out: Vec<_> = self.memo.iter().map(|e| (e.key().clone(), e.value().clone())).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn insert(&self, x: ExtAffineElement, summary: Summary) {
        self.memo.entry(x).or_insert_with(|| Arc::new(summary));
    }
}

/// `f_x = q·f_{syσ(s)} + (q-1)·f_{sy}`; dimensions grow by one along
/// either branch.
fn combine(length: usize, conjugate: &Summary, shortened: &Summary) -> Summary {
    let mut polys: BTreeMap<SigmaClass, ClassPolynomial> = BTreeMap::new();
    for (c, f) in &conjugate.polys {
        let e = polys.entry(c.clone()).or_default();
        *e = e.add(&f.times_q());
    }
    for (c, f) in &shortened.polys {
        let e = polys.entry(c.clone()).or_default();
        *e = e.add(&f.times_q_minus_one());
    }
    polys.retain(|_, f| !f.is_zero());
    let mut dims: BTreeMap<SigmaClass, i64> = BTreeMap::new();
    for (c, d) in conjugate.dims.iter().chain(&shortened.dims) {
        let e = dims.entry(c.clone()).or_insert(d + 1);
        *e = (*e).max(d + 1);
    }
    Summary { length, polys, dims }
}
