//! `(J, w, σ)`-alcove elements, their normalization and enumeration, and
//! σ-supports.
//!
//! Root-subgroup filtrations are modeled by integer levels: `I ∩ U_β` is
//! `U_{β, ≥ c}` with `c` given by [`iwahori_level`], and conjugation by `x`
//! moves levels as in [`AffineWeylGroup::affine_root_action`].

use std::collections::BTreeSet;

use serde::Serialize;

use crate::affine_weyl::{AffineWeylGroup, ExtAffineElement, FrobeniusAction};
use crate::error::{Error, Result};
use crate::root_datum::{DiagramAutomorphism, RootDatum, WeylElement};

/// `c_I(β)`: 1 for positive roots and 0 for negative ones, so that
/// `β + k` is nonnegative on the base alcove iff `k ≥ c_I(β)`.
pub fn iwahori_level(datum: &RootDatum, beta: &[i64]) -> Result<i64> {
    let r = datum
        .find_root(beta)
        .ok_or_else(|| Error::Literal(format!("{beta:?} is not a root")))?;
    Ok(level_of_index(datum, r))
}

pub(crate) fn level_of_index(datum: &RootDatum, r: usize) -> i64 {
    i64::from(datum.is_positive(r))
}

/// Outcome of testing both defining conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlcoveDiagnostics {
    /// Finite part of `w⁻¹ x σ(w)` lies in `W_J`.
    pub condition_a: bool,
    pub condition_b: bool,
    /// First `α ∈ Φ⁺ ∖ Φ_J` (root coefficients) at which the root-subgroup
    /// containment fails.
    pub failing_root: Option<Vec<i64>>,
}

impl AlcoveDiagnostics {
    pub fn holds(&self) -> bool {
        self.condition_a && self.condition_b
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlcovePair {
    pub subset: Vec<usize>,
    pub w: WeylElement,
    pub normalized: bool,
    /// `J = Δ`, where the Levi is the whole group.
    pub trivial: bool,
}

/// All `J ⊆ Δ` with `δ(J) = J`, ordered by size then lexicographically.
pub fn sigma_stable_subsets(datum: &RootDatum, delta: &DiagramAutomorphism) -> Vec<Vec<usize>> {
    let n = datum.rank();
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|j| delta.stabilizes(j))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Tests `x` against `(J, w)` for the Frobenius `frob` (σ or a power of it).
pub fn alcove_diagnostics_for(
    group: &AffineWeylGroup,
    frob: &FrobeniusAction,
    x: &ExtAffineElement,
    subset: &[usize],
    w: WeylElement,
) -> Result<AlcoveDiagnostics> {
    if !frob.delta().stabilizes(subset) {
        return Err(Error::NotSigmaStable(subset.to_vec()));
    }
    let datum = group.datum();
    let weyl = datum.weyl();
    let winv = weyl.inverse(w);
    let tilde_u = weyl.mul(weyl.mul(winv, x.finite_part()), frob.apply_weyl(w));
    let condition_a = datum.in_parabolic(tilde_u, subset);

    // ˣI ∩ U_β = U_{β, ≥ ⟨λ,β⟩ + c(−u⁻¹β)}
    let uinv = weyl.inverse(x.finite_part());
    let failing = (0..datum.num_positive())
        .filter(|&a| !datum.root_in_subsystem(a, subset))
        .find(|&a| {
            let beta = weyl.act_root(w, a);
            let pulled = weyl.act_root(uinv, beta);
            let lower = datum.pair_root(x.lambda(), beta) + level_of_index(datum, datum.negate(pulled));
            lower < level_of_index(datum, datum.negate(beta))
        });
    Ok(AlcoveDiagnostics {
        condition_a,
        condition_b: failing.is_none(),
        failing_root: failing.map(|a| datum.root(a).coeffs.clone()),
    })
}

pub fn alcove_diagnostics(
    group: &AffineWeylGroup,
    x: &ExtAffineElement,
    subset: &[usize],
    w: WeylElement,
) -> Result<AlcoveDiagnostics> {
    alcove_diagnostics_for(group, group.frobenius(), x, subset, w)
}

pub fn is_alcove_element(group: &AffineWeylGroup, x: &ExtAffineElement, subset: &[usize], w: WeylElement) -> Result<bool> {
    Ok(alcove_diagnostics(group, x, subset, w)?.holds())
}

/// `w⁻¹ x σ(w)`.
pub fn levi_part(group: &AffineWeylGroup, x: &ExtAffineElement, w: WeylElement) -> ExtAffineElement {
    let wf = group.finite(w);
    let winv = group.inverse(&wf);
    group.mul(&group.mul(&winv, x), &group.frobenius_apply(&wf))
}

/// Replaces `w` by the minimal representative of `w W_J`; returns the
/// normalized pair and `x̃ = w⁻¹ x σ(w)`.
pub fn normalize_pair(
    group: &AffineWeylGroup,
    x: &ExtAffineElement,
    subset: &[usize],
    w: WeylElement,
) -> Result<(AlcovePair, ExtAffineElement)> {
    if !is_alcove_element(group, x, subset, w)? {
        return Err(Error::NotAlcovePair { subset: subset.to_vec() });
    }
    let datum = group.datum();
    let w_min = datum.min_coset_representative(w, subset);
    let pair = AlcovePair {
        subset: subset.to_vec(),
        w: w_min,
        normalized: true,
        trivial: subset.len() == datum.rank(),
    };
    Ok((pair, levi_part(group, x, w_min)))
}

fn pairs_for(group: &AffineWeylGroup, x: &ExtAffineElement, normalized: bool) -> Vec<AlcovePair> {
    let datum = group.datum();
    let mut out = Vec::new();
    for subset in sigma_stable_subsets(datum, group.frobenius().delta()) {
        let mut ws: Vec<WeylElement> = datum
            .weyl()
            .elements()
            .filter(|&w| !normalized || datum.is_min_coset_representative(w, &subset))
            .collect();
        ws.sort_by_key(|&w| (datum.weyl().length(w), datum.canonical_encoding(w)));
        for w in ws {
            if is_alcove_element(group, x, &subset, w).expect("subset is σ-stable") {
                out.push(AlcovePair {
                    subset: subset.clone(),
                    w,
                    normalized: datum.is_min_coset_representative(w, &subset),
                    trivial: subset.len() == datum.rank(),
                });
            }
        }
    }
    out
}

/// Every normalized pair `(J, w)` for `x`, including the trivial `(Δ, e)`.
pub fn enumerate_alcove_pairs(group: &AffineWeylGroup, x: &ExtAffineElement) -> Vec<AlcovePair> {
    pairs_for(group, x, true)
}

/// Every pair `(J, w)` for `x`, with `w` ranging over all of `W`.
pub fn enumerate_all_alcove_pairs(group: &AffineWeylGroup, x: &ExtAffineElement) -> Vec<AlcovePair> {
    pairs_for(group, x, false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaSupport {
    pub labels: BTreeSet<usize>,
    pub spherical: bool,
}

/// Closure of the letters of `x = ω·word` under `s ↦ σ(ω s ω⁻¹)`; spherical
/// when it omits at least one node of every affine component.
pub fn sigma_support(group: &AffineWeylGroup, x: &ExtAffineElement) -> SigmaSupport {
    let (omega, word) = group.omega_word(x);
    let mut labels: BTreeSet<usize> = BTreeSet::new();
    let mut stack = word;
    while let Some(l) = stack.pop() {
        if labels.insert(l) {
            stack.push(group.frobenius_label(group.omega_conjugate_label(&omega, l)));
        }
    }
    let spherical = group.component_labels().iter().all(|comp| !comp.is_subset(&labels));
    SigmaSupport { labels, spherical }
}
