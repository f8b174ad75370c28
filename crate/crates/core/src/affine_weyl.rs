//! The extended affine Weyl group `W̃ = X_* ⋊ W` with Frobenius action.
//!
//! Elements are written `t^λ u` and act on the apartment `X_* ⊗ ℝ` by
//! `v ↦ λ + u·v`. The base alcove is the antidominant one: every positive
//! root takes values in `(-1, 0)` on it. With this convention the
//! affine simple reflection of a component with highest root `θ` is
//! `s_0 = t^{-θ∨} s_θ`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{floor_rational, solve_rational, RatVec, SmithForm};
use crate::root_datum::{DiagramAutomorphism, RootDatum, WeylElement};

/// `t^λ u`, keyed canonically by `(λ, u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffineElement {
    lambda: Vec<i64>,
    u: WeylElement,
}

impl ExtAffineElement {
    pub fn new(lambda: Vec<i64>, u: WeylElement) -> Self {
        ExtAffineElement { lambda, u }
    }

    pub fn translation(lambda: Vec<i64>) -> Self {
        ExtAffineElement { lambda, u: WeylElement::IDENTITY }
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn finite_part(&self) -> WeylElement {
        self.u
    }

    pub fn is_translation(&self) -> bool {
        self.u == WeylElement::IDENTITY
    }
}

/// The affine root `β + kδ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: usize,
    pub level: i64,
}

/// A simple affine reflection. Labels: finite node `i` (0-based) has label
/// `i + 1`; the affine node of component `c` has label `0` for `c = 0` and
/// `rank + c` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSimple {
    pub label: usize,
    pub element: ExtAffineElement,
    pub component: usize,
    /// Finite simple root index, `None` for an affine node.
    pub node: Option<usize>,
}

/// The Frobenius `σ(t^λ u) = t^{δλ} δuδ⁻¹` induced by a diagram automorphism.
#[derive(Clone, Debug)]
pub struct FrobeniusAction {
    delta: DiagramAutomorphism,
    simple_perm: Vec<usize>,
}

impl FrobeniusAction {
    pub fn delta(&self) -> &DiagramAutomorphism {
        &self.delta
    }

    pub fn order(&self) -> usize {
        self.delta.order()
    }

    pub fn apply(&self, x: &ExtAffineElement) -> ExtAffineElement {
        ExtAffineElement { lambda: self.delta.apply(&x.lambda), u: self.delta.conjugate(x.u) }
    }

    pub fn apply_weyl(&self, w: WeylElement) -> WeylElement {
        self.delta.conjugate(w)
    }

    /// Image of a simple affine reflection, by position in the sorted list.
    pub fn apply_simple(&self, pos: usize) -> usize {
        self.simple_perm[pos]
    }
}

#[derive(Clone, Debug)]
pub struct AffineWeylGroup {
    datum: Arc<RootDatum>,
    frobenius: FrobeniusAction,
    simples: Vec<AffineSimple>,
    simple_lookup: HashMap<ExtAffineElement, usize>,
    base_point: RatVec,
}

impl AffineWeylGroup {
    pub fn new(datum: Arc<RootDatum>, delta: DiagramAutomorphism) -> Result<Self> {
        let n = datum.rank();
        let r = datum.lattice_rank();
        let weyl = datum.weyl();
        let mut simples: Vec<AffineSimple> = (0..n)
            .map(|i| AffineSimple {
                label: i + 1,
                element: ExtAffineElement::new(vec![0; r], weyl.simple_reflection(i)),
                component: datum.components().iter().position(|c| c.contains(&i)).expect("node in a component"),
                node: Some(i),
            })
            .collect();
        for (c, &theta) in datum.highest_roots().iter().enumerate() {
            let s_theta = reflection_of(&datum, theta);
            let lambda = datum.root(theta).coroot.iter().map(|x| -x).collect();
            simples.push(AffineSimple {
                label: if c == 0 { 0 } else { n + c },
                element: ExtAffineElement::new(lambda, s_theta),
                component: c,
                node: None,
            });
        }
        simples.sort_by_key(|s| s.label);
        let simple_lookup: HashMap<ExtAffineElement, usize> =
            simples.iter().enumerate().map(|(p, s)| (s.element.clone(), p)).collect();

        let base_point = if n == 0 {
            RatVec::zero(r)
        } else {
            let h = (0..datum.num_positive()).map(|b| datum.root(b).height).max().unwrap_or(0) + 1;
            let rows: Vec<Vec<i64>> = datum.cartan_matrix().to_vec();
            let c = solve_rational(&rows, &RatVec::new(vec![-1; n], h))
                .ok_or_else(|| Error::InvalidLattice("degenerate Cartan matrix".into()))?;
            let mut v = RatVec::zero(r);
            for (j, cj) in c.iter().enumerate() {
                v = v.add(&RatVec::from_integers(datum.simple_coroot(j)).scale(*cj));
            }
            v
        };

        let mut group = AffineWeylGroup {
            datum,
            frobenius: FrobeniusAction { delta: delta.clone(), simple_perm: Vec::new() },
            simples,
            simple_lookup,
            base_point,
        };
        group.frobenius = group.frobenius_action(delta)?;
        Ok(group)
    }

    fn frobenius_action(&self, delta: DiagramAutomorphism) -> Result<FrobeniusAction> {
        let mut action = FrobeniusAction { delta, simple_perm: Vec::new() };
        let perm = self
            .simples
            .iter()
            .map(|s| {
                self.simple_lookup
                    .get(&action.apply(&s.element))
                    .copied()
                    .ok_or_else(|| Error::InvalidAutomorphism("Frobenius does not permute the affine simple reflections".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        action.simple_perm = perm;
        Ok(action)
    }

    /// The Frobenius `σ^k` on the same group.
    pub fn frobenius_power(&self, k: usize) -> FrobeniusAction {
        let delta = self.frobenius.delta.power(&self.datum, k);
        self.frobenius_action(delta).expect("powers of σ permute S_aff")
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn frobenius(&self) -> &FrobeniusAction {
        &self.frobenius
    }

    pub fn simples(&self) -> &[AffineSimple] {
        &self.simples
    }

    pub fn simple_position(&self, label: usize) -> Option<usize> {
        self.simples.iter().position(|s| s.label == label)
    }

    /// Position of `x` in the simple list if it is a simple affine reflection.
    pub fn as_simple(&self, x: &ExtAffineElement) -> Option<usize> {
        self.simple_lookup.get(x).copied()
    }

    /// Rational interior point of the base alcove.
    pub fn base_point(&self) -> &RatVec {
        &self.base_point
    }

    pub fn identity(&self) -> ExtAffineElement {
        ExtAffineElement::translation(vec![0; self.datum.lattice_rank()])
    }

    pub fn finite(&self, u: WeylElement) -> ExtAffineElement {
        ExtAffineElement::new(vec![0; self.datum.lattice_rank()], u)
    }

    /// Rejects elements from a different lattice.
    pub fn check(&self, x: &ExtAffineElement) -> Result<()> {
        if x.lambda.len() != self.datum.lattice_rank() || x.u.index() >= self.datum.weyl().order() {
            return Err(Error::DimensionMismatch { expected: self.datum.lattice_rank(), got: x.lambda.len() });
        }
        Ok(())
    }

    /// `(t^λ u)(t^μ v) = t^{λ+uμ} uv`.
    pub fn mul(&self, x: &ExtAffineElement, y: &ExtAffineElement) -> ExtAffineElement {
        let weyl = self.datum.weyl();
        let mut lambda = weyl.act(x.u, &y.lambda);
        for (a, b) in lambda.iter_mut().zip(&x.lambda) {
            *a += b;
        }
        ExtAffineElement { lambda, u: weyl.mul(x.u, y.u) }
    }

    pub fn inverse(&self, x: &ExtAffineElement) -> ExtAffineElement {
        let weyl = self.datum.weyl();
        let uinv = weyl.inverse(x.u);
        let lambda = weyl.act(uinv, &x.lambda).into_iter().map(|a| -a).collect();
        ExtAffineElement { lambda, u: uinv }
    }

    pub fn frobenius_apply(&self, x: &ExtAffineElement) -> ExtAffineElement {
        self.frobenius.apply(x)
    }

    pub fn frobenius_pow(&self, x: &ExtAffineElement, k: usize) -> ExtAffineElement {
        (0..k % self.frobenius.order()).fold(x.clone(), |y, _| self.frobenius.apply(&y))
    }

    /// `s · y · σ(s)` for the simple reflection at position `pos`.
    pub fn sigma_conjugate_simple(&self, pos: usize, y: &ExtAffineElement) -> ExtAffineElement {
        let s = &self.simples[pos].element;
        let t = &self.simples[self.frobenius.apply_simple(pos)].element;
        self.mul(&self.mul(s, y), t)
    }

    /// `y x σ(y)⁻¹`.
    pub fn sigma_conjugate(&self, y: &ExtAffineElement, x: &ExtAffineElement) -> ExtAffineElement {
        let sy = self.frobenius.apply(y);
        self.mul(&self.mul(y, x), &self.inverse(&sy))
    }

    /// Length as `Σ_{β>0} |⟨λ,β⟩ + [u⁻¹β < 0]|`, the per-root count of
    /// hyperplanes `β = k` between the base alcove and its image.
    pub fn length(&self, x: &ExtAffineElement) -> usize {
        let datum = &*self.datum;
        let weyl = datum.weyl();
        let uinv = weyl.inverse(x.u);
        (0..datum.num_positive())
            .map(|b| {
                let shift = i64::from(!datum.is_positive(weyl.act_root(uinv, b)));
                (datum.pair_root(&x.lambda, b) + shift).unsigned_abs() as usize
            })
            .sum()
    }

    /// Length by directly counting the hyperplanes `β = k` (β > 0, k ∈ ℤ)
    /// separating an interior point of the base alcove from its image.
    pub fn length_by_separation(&self, x: &ExtAffineElement) -> usize {
        let datum = &*self.datum;
        let p = &self.base_point;
        let image = self.act_point(x, p);
        (0..datum.num_positive())
            .map(|b| {
                let chi = &datum.root(b).character;
                let (a, c) = (floor_rational(&p.pair(chi)), floor_rational(&image.pair(chi)));
                (a - c).unsigned_abs() as usize
            })
            .sum()
    }

    /// `v ↦ λ + u·v`.
    pub fn act_point(&self, x: &ExtAffineElement, v: &RatVec) -> RatVec {
        let uv = v.map(self.datum.weyl().matrix(x.u), v.dim());
        uv.add(&RatVec::from_integers(&x.lambda))
    }

    /// `t^λ u · (γ, k) = (uγ, k + ⟨λ, uγ⟩)`: transport of root-subgroup
    /// filtration levels under conjugation.
    pub fn affine_root_action(&self, x: &ExtAffineElement, a: AffineRoot) -> AffineRoot {
        let root = self.datum.weyl().act_root(x.u, a.root);
        AffineRoot { root, level: a.level + self.datum.pair_root(&x.lambda, root) }
    }

    /// Peels left descents (smallest label first) until length zero.
    /// Returns the remaining `ω` and the peeled labels, so that
    /// `x = s_{l_1} ⋯ s_{l_k} ω`.
    fn peel_left(&self, x: &ExtAffineElement) -> (ExtAffineElement, Vec<usize>) {
        let mut y = x.clone();
        let mut len = self.length(&y);
        let mut letters = Vec::with_capacity(len);
        while len > 0 {
            let (pos, z) = self
                .simples
                .iter()
                .enumerate()
                .map(|(pos, s)| (pos, self.mul(&s.element, &y)))
                .find(|(_, z)| self.length(z) < len)
                .expect("positive length element has a left descent");
            letters.push(self.simples[pos].label);
            y = z;
            len -= 1;
        }
        (y, letters)
    }

    /// The length-zero element `ω ∈ Ω` with `x ∈ W_aff ω`.
    pub fn omega_part(&self, x: &ExtAffineElement) -> ExtAffineElement {
        self.peel_left(x).0
    }

    /// `x = ω · s_{i_1} ⋯ s_{i_ℓ}` with a reduced word obtained by greedy
    /// left descent; letters are labels.
    pub fn omega_word(&self, x: &ExtAffineElement) -> (ExtAffineElement, Vec<usize>) {
        let (omega, letters) = self.peel_left(x);
        // s ω = ω (ω⁻¹ s ω)
        let oinv = self.inverse(&omega);
        let word = letters
            .iter()
            .map(|&l| {
                let s = &self.simples[self.simple_position(l).expect("label")].element;
                let conj = self.mul(&self.mul(&oinv, s), &omega);
                self.simples[self.as_simple(&conj).expect("Ω permutes S_aff")].label
            })
            .collect();
        (omega, word)
    }

    /// Same decomposition via greedy right descents.
    pub fn omega_word_right(&self, x: &ExtAffineElement) -> (ExtAffineElement, Vec<usize>) {
        let mut y = x.clone();
        let mut len = self.length(&y);
        let mut word = VecDeque::with_capacity(len);
        while len > 0 {
            let (pos, z) = self
                .simples
                .iter()
                .enumerate()
                .map(|(pos, s)| (pos, self.mul(&y, &s.element)))
                .find(|(_, z)| self.length(z) < len)
                .expect("positive length element has a right descent");
            word.push_front(self.simples[pos].label);
            y = z;
            len -= 1;
        }
        (y, word.into())
    }

    /// `ω · s_{l_1} ⋯ s_{l_k}`.
    pub fn from_omega_word(&self, omega: &ExtAffineElement, labels: &[usize]) -> Result<ExtAffineElement> {
        labels.iter().try_fold(omega.clone(), |acc, &l| {
            let pos = self
                .simple_position(l)
                .ok_or_else(|| Error::Literal(format!("no simple affine reflection with label {l}")))?;
            Ok(self.mul(&acc, &self.simples[pos].element))
        })
    }

    /// Label of `ω s ω⁻¹`.
    pub fn omega_conjugate_label(&self, omega: &ExtAffineElement, label: usize) -> usize {
        let s = &self.simples[self.simple_position(label).expect("label")].element;
        let conj = self.mul(&self.mul(omega, s), &self.inverse(omega));
        self.simples[self.as_simple(&conj).expect("Ω permutes S_aff")].label
    }

    pub fn frobenius_label(&self, label: usize) -> usize {
        let pos = self.simple_position(label).expect("label");
        self.simples[self.frobenius.apply_simple(pos)].label
    }

    /// Labels of the affine Dynkin diagram, grouped by irreducible component.
    pub fn component_labels(&self) -> Vec<BTreeSet<usize>> {
        let mut out = vec![BTreeSet::new(); self.datum.components().len()];
        for s in &self.simples {
            out[s.component].insert(s.label);
        }
        out
    }

    /// Representatives of `Ω ≅ X_*/ZΦ∨`: all torsion classes, and free
    /// coordinates in `[-radius, radius]` when `X_*/ZΦ∨` is infinite.
    pub fn omega_representatives(&self, radius: i64) -> Vec<ExtAffineElement> {
        let r = self.datum.lattice_rank();
        let snf = SmithForm::of_columns(r, &self.datum.simple_coroots());
        let ranges: Vec<Vec<i64>> = snf
            .diagonal
            .iter()
            .map(|&d| match d {
                0 => (-radius..=radius).collect(),
                1 => vec![0],
                d => (0..d).collect(),
            })
            .collect();
        let mut coords = vec![vec![]];
        for range in &ranges {
            coords = coords
                .into_iter()
                .flat_map(|c: Vec<i64>| {
                    range.iter().map(move |&x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        let mut out: Vec<ExtAffineElement> = coords
            .iter()
            .map(|c| self.omega_part(&ExtAffineElement::translation(snf.lift(c))))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every element `ω·y` with `ω` from [`Self::omega_representatives`] and
    /// `y ∈ W_aff` of length at most `max_length`, sorted by (length, key).
    pub fn elements_up_to_length(&self, max_length: usize, radius: i64) -> Vec<ExtAffineElement> {
        let mut layer = vec![self.identity()];
        let mut affine = layer.clone();
        let mut seen: HashSet<ExtAffineElement> = layer.iter().cloned().collect();
        for len in 1..=max_length {
            let mut next = Vec::new();
            for y in &layer {
                for s in &self.simples {
                    let z = self.mul(y, &s.element);
                    if !seen.contains(&z) && self.length(&z) == len {
                        seen.insert(z.clone());
                        next.push(z);
                    }
                }
            }
            affine.extend(next.iter().cloned());
            layer = next;
        }
        let mut out: Vec<(usize, ExtAffineElement)> = self
            .omega_representatives(radius)
            .iter()
            .flat_map(|w| affine.iter().map(move |y| (w, y)))
            .map(|(w, y)| {
                let x = self.mul(w, y);
                (self.length(&x), x)
            })
            .collect();
        out.sort();
        out.into_iter().map(|(_, x)| x).collect()
    }
}

/// The reflection `s_β` for a root index.
fn reflection_of(datum: &RootDatum, root: usize) -> WeylElement {
    let weyl = datum.weyl();
    for w in weyl.elements() {
        for i in 0..datum.rank() {
            if weyl.act_root(w, i) == root {
                return weyl.mul(weyl.mul(w, weyl.simple_reflection(i)), weyl.inverse(w));
            }
        }
    }
    unreachable!("every root is W-conjugate to a simple root")
}
