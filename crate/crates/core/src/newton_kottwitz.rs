//! Newton points via σ-twisted powers, Kottwitz points in the coinvariants
//! `(X_*/ZΦ∨)_σ`, and the map from Levi classes to ambient classes.

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine_weyl::{AffineWeylGroup, ExtAffineElement};
use crate::error::{Error, Result};
use crate::linalg::{solve_rational, RatVec, SmithForm};
use crate::root_datum::{LeviDatum, RootDatum};

/// Dominant (for the scope's simple system) rational cocharacter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NewtonPoint(pub RatVec);

impl NewtonPoint {
    pub fn vector(&self) -> &RatVec {
        &self.0
    }
}

impl fmt::Display for NewtonPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Element of `X_*/(ZΦ∨ + (σ-1)X_*)` as residues against the nontrivial
/// Smith invariant factors; a modulus of 0 marks a free coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KottwitzPoint {
    pub residues: Vec<i64>,
    pub moduli: Vec<i64>,
}

impl fmt::Display for KottwitzPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (r, m)) in self.residues.iter().zip(&self.moduli).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if *m == 0 {
                write!(f, "{r}")?;
            } else {
                write!(f, "{r} mod {m}")?;
            }
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Ambient,
    Levi(Vec<usize>),
}

/// A σ-conjugacy class, identified by its invariants `(ν, κ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SigmaClass {
    pub nu: NewtonPoint,
    pub kappa: KottwitzPoint,
    pub scope: Scope,
}

impl fmt::Display for SigmaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ν={} κ={}", self.nu, self.kappa)
    }
}

/// Smith presentation of `X_*/(ZΦ∨ + (δ-1)X_*)`.
#[derive(Clone, Debug)]
pub struct KottwitzPresentation {
    snf: SmithForm,
    kept: Vec<usize>,
}

impl KottwitzPresentation {
    pub fn new(group: &AffineWeylGroup) -> Self {
        let datum = group.datum();
        let r = datum.lattice_rank();
        let delta = group.frobenius().delta();
        let mut columns = datum.simple_coroots();
        for j in 0..r {
            let mut e = vec![0; r];
            e[j] = 1;
            let mut col = delta.apply(&e);
            col[j] -= 1;
            columns.push(col);
        }
        let snf = SmithForm::of_columns(r, &columns);
        let kept = (0..r).filter(|&i| snf.diagonal[i] != 1).collect();
        KottwitzPresentation { snf, kept }
    }

    /// Invariant factors of the kept coordinates (0 = free).
    pub fn moduli(&self) -> Vec<i64> {
        self.kept.iter().map(|&i| self.snf.diagonal[i]).collect()
    }

    pub fn point(&self, lambda: &[i64]) -> KottwitzPoint {
        let coords = self.snf.coordinates(lambda);
        let moduli = self.moduli();
        let residues = self
            .kept
            .iter()
            .zip(&moduli)
            .map(|(&i, &m)| if m == 0 { coords[i] } else { coords[i].rem_euclid(m) })
            .collect();
        KottwitzPoint { residues, moduli }
    }

    /// Some lattice vector with the given Kottwitz point.
    pub fn lift(&self, kappa: &KottwitzPoint) -> Vec<i64> {
        let mut coords = vec![0; self.snf.rows];
        for (&i, &r) in self.kept.iter().zip(&kappa.residues) {
            coords[i] = r;
        }
        self.snf.lift(&coords)
    }
}

/// An extended affine Weyl group with its σ-conjugacy invariants.
#[derive(Clone, Debug)]
pub struct SigmaGroup {
    group: Arc<AffineWeylGroup>,
    kottwitz: KottwitzPresentation,
    scope: Scope,
}

impl SigmaGroup {
    pub fn new(group: Arc<AffineWeylGroup>, scope: Scope) -> Self {
        let kottwitz = KottwitzPresentation::new(&group);
        SigmaGroup { group, kottwitz, scope }
    }

    pub fn group(&self) -> &Arc<AffineWeylGroup> {
        &self.group
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        self.group.datum()
    }

    pub fn kottwitz(&self) -> &KottwitzPresentation {
        &self.kottwitz
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    /// `x σ(x) ⋯ σ^{n-1}(x)`, the identity for `n = 0`.
    pub fn twisted_power(&self, x: &ExtAffineElement, n: usize) -> ExtAffineElement {
        let g = &*self.group;
        let mut acc = g.identity();
        let mut cur = x.clone();
        for k in 0..n {
            if k > 0 {
                cur = g.frobenius_apply(&cur);
            }
            acc = g.mul(&acc, &cur);
        }
        acc
    }

    /// Smallest multiple `n` of `ord(σ)` with `x^{σ,n}` a translation.
    pub fn translation_period(&self, x: &ExtAffineElement) -> Result<usize> {
        let m = self.group.frobenius().order();
        let y = self.twisted_power(x, m);
        let cap = self.datum().weyl().order();
        let weyl = self.datum().weyl();
        let mut u = y.finite_part();
        let mut k = 1;
        while !u.eq(&crate::root_datum::WeylElement::IDENTITY) {
            u = weyl.mul(u, y.finite_part());
            k += 1;
            if k > cap {
                return Err(Error::NewtonCap(cap * m));
            }
        }
        Ok(m * k)
    }

    /// Newton point from an explicit `n`; `None` unless `n` is a multiple of
    /// `ord(σ)` and `x^{σ,n}` is a translation.
    pub fn newton_point_at(&self, x: &ExtAffineElement, n: usize) -> Option<NewtonPoint> {
        if n == 0 || !n.is_multiple_of(self.group.frobenius().order()) {
            return None;
        }
        let p = self.twisted_power(x, n);
        if !p.is_translation() {
            return None;
        }
        let mu = RatVec::new(p.lambda().to_vec(), n as i64);
        Some(NewtonPoint(self.datum().dominant_representative(&mu).0))
    }

    pub fn newton_point(&self, x: &ExtAffineElement) -> Result<NewtonPoint> {
        let n = self.translation_period(x)?;
        Ok(self.newton_point_at(x, n).expect("period yields a translation"))
    }

    pub fn kottwitz_point(&self, x: &ExtAffineElement) -> KottwitzPoint {
        self.kottwitz.point(x.lambda())
    }

    pub fn class_of(&self, x: &ExtAffineElement) -> Result<SigmaClass> {
        Ok(SigmaClass { nu: self.newton_point(x)?, kappa: self.kottwitz_point(x), scope: self.scope.clone() })
    }

    /// `c1 ≤ c2`: equal κ and `ν2 - ν1` a nonnegative rational combination
    /// of simple coroots.
    pub fn dominance_leq(&self, c1: &SigmaClass, c2: &SigmaClass) -> bool {
        if c1.kappa != c2.kappa || c1.scope != c2.scope {
            return false;
        }
        let diff = c2.nu.0.sub(&c1.nu.0);
        match solve_rational(&self.datum().simple_coroots(), &diff) {
            Some(coeffs) => coeffs.iter().all(|c| !c.is_negative()),
            None => false,
        }
    }

    pub fn is_basic(&self, c: &SigmaClass) -> bool {
        let datum = self.datum();
        (0..datum.rank()).all(|i| c.nu.0.pair(datum.simple_root(i)).is_zero())
    }

    /// The unique basic class with Kottwitz point `kappa`: a lift of κ
    /// averaged over the σ- and W-orbits, which is its central projection.
    pub fn basic_class(&self, kappa: &KottwitzPoint) -> SigmaClass {
        let datum = self.datum();
        let delta = self.group.frobenius().delta();
        let mut lambda = self.kottwitz.lift(kappa);
        let mut total = vec![0i64; lambda.len()];
        for _ in 0..delta.order() {
            for w in datum.weyl().elements() {
                for (t, x) in total.iter_mut().zip(datum.weyl().act(w, &lambda)) {
                    *t += x;
                }
            }
            lambda = delta.apply(&lambda);
        }
        let count = (delta.order() * datum.weyl().order()) as i64;
        let nu = datum.dominant_representative(&RatVec::new(total, count)).0;
        let class = SigmaClass { nu: NewtonPoint(nu), kappa: kappa.clone(), scope: self.scope.clone() };
        debug_assert!(self.is_basic(&class));
        class
    }

    /// `⟨ν, χ⟩`.
    pub fn pair(&self, nu: &NewtonPoint, chi: &[i64]) -> Rational64 {
        nu.0.pair(chi)
    }
}

/// Sends a class of the Levi `M` to the class of `G` containing it.
pub fn embed_levi_class(levi: &LeviDatum, m: &SigmaGroup, g: &SigmaGroup, c: &SigmaClass) -> SigmaClass {
    debug_assert!(Arc::ptr_eq(levi.datum(), m.datum()));
    let nu = g.datum().dominant_representative(&c.nu.0).0;
    let kappa = g.kottwitz().point(&m.kottwitz().lift(&c.kappa));
    SigmaClass { nu: NewtonPoint(nu), kappa, scope: g.scope().clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{parse_cartan_type, DiagramAutomorphism, LatticeChoice};

    fn sigma_group(t: &str, l: LatticeChoice, perm: Option<&[usize]>) -> SigmaGroup {
        let d = Arc::new(RootDatum::build(&parse_cartan_type(t).unwrap(), &l).unwrap());
        let delta = match perm {
            Some(p) => DiagramAutomorphism::from_node_permutation(&d, p).unwrap(),
            None => DiagramAutomorphism::identity(&d),
        };
        SigmaGroup::new(Arc::new(AffineWeylGroup::new(d, delta).unwrap()), Scope::Ambient)
    }

    fn int_nu(v: &[i64]) -> NewtonPoint {
        NewtonPoint(RatVec::from_integers(v))
    }

    #[test]
    fn twisted_power_examples() {
        let gl = sigma_group("A1", LatticeChoice::GlStyle, None);
        let t = ExtAffineElement::translation(vec![1, 0]);
        assert_eq!(gl.twisted_power(&t, 3), ExtAffineElement::translation(vec![3, 0]));
        let a1 = sigma_group("A1", LatticeChoice::SimplyConnected, None);
        let s = a1.group().finite(a1.datum().weyl().simple_reflection(0));
        assert_eq!(a1.twisted_power(&s, 2), a1.group().identity());
        let aa = sigma_group("A1xA1", LatticeChoice::SimplyConnected, Some(&[1, 0]));
        let s1 = aa.group().finite(aa.datum().weyl().simple_reflection(0));
        assert_eq!(aa.twisted_power(&s1, 4), aa.group().identity());
        assert_ne!(aa.twisted_power(&s1, 2), aa.group().identity());
    }

    #[test]
    fn newton_examples() {
        let gl = sigma_group("A1", LatticeChoice::GlStyle, None);
        assert_eq!(gl.newton_point(&ExtAffineElement::translation(vec![1, 0])).unwrap(), int_nu(&[1, 0]));
        assert_eq!(gl.newton_point(&ExtAffineElement::translation(vec![0, 1])).unwrap(), int_nu(&[1, 0]));
        let a1 = sigma_group("A1", LatticeChoice::SimplyConnected, None);
        let s = a1.datum().weyl().simple_reflection(0);
        assert_eq!(a1.newton_point(&ExtAffineElement::new(vec![-1], s)).unwrap(), int_nu(&[0]));
        let aa = sigma_group("A1xA1", LatticeChoice::SimplyConnected, Some(&[1, 0]));
        let s1 = aa.group().finite(aa.datum().weyl().simple_reflection(0));
        assert_eq!(aa.newton_point(&s1).unwrap(), int_nu(&[0, 0]));
    }

    #[test]
    fn kottwitz_examples() {
        let gl = sigma_group("A1", LatticeChoice::GlStyle, None);
        let k = gl.kottwitz_point(&ExtAffineElement::translation(vec![1, 0]));
        assert_eq!(k, KottwitzPoint { residues: vec![1], moduli: vec![0] });
        let ad = sigma_group("A1", LatticeChoice::Adjoint, None);
        let k = ad.kottwitz_point(&ExtAffineElement::translation(vec![1]));
        assert_eq!(k, KottwitzPoint { residues: vec![1], moduli: vec![2] });
        let sc = sigma_group("A1", LatticeChoice::SimplyConnected, None);
        let s = sc.group().finite(sc.datum().weyl().simple_reflection(0));
        assert!(sc.kottwitz_point(&s).residues.is_empty());
    }

    #[test]
    fn class_examples() {
        let a1 = sigma_group("A1", LatticeChoice::SimplyConnected, None);
        let s = a1.datum().weyl().simple_reflection(0);
        let c = a1.class_of(&ExtAffineElement::new(vec![-2], s)).unwrap();
        assert_eq!(c.nu, int_nu(&[0]));
        assert!(a1.is_basic(&c));
        let gl = sigma_group("A1", LatticeChoice::GlStyle, None);
        let c = gl.class_of(&ExtAffineElement::translation(vec![1, 1])).unwrap();
        assert_eq!(c.nu, int_nu(&[1, 1]));
        assert_eq!(c.kappa.residues, vec![2]);
        assert!(gl.is_basic(&c));
        let e = gl.class_of(&gl.group().identity()).unwrap();
        assert_eq!((e.nu, e.kappa.residues), (int_nu(&[0, 0]), vec![0]));
    }

    #[test]
    fn basic_class_from_kappa() {
        let gl = sigma_group("A1", LatticeChoice::GlStyle, None);
        let kappa = KottwitzPoint { residues: vec![1], moduli: vec![0] };
        let b = gl.basic_class(&kappa);
        assert_eq!(b.nu, NewtonPoint(RatVec::new(vec![1, 1], 2)));
        assert!(gl.is_basic(&b));
    }

    #[test]
    fn dominance_examples() {
        let a1 = sigma_group("A1", LatticeChoice::SimplyConnected, None);
        let c0 = a1.class_of(&a1.group().identity()).unwrap();
        let c1 = a1.class_of(&ExtAffineElement::translation(vec![1])).unwrap();
        assert!(a1.dominance_leq(&c0, &c1));
        assert!(!a1.dominance_leq(&c1, &c0));
        let ad = sigma_group("A1", LatticeChoice::Adjoint, None);
        let odd = ad.class_of(&ExtAffineElement::translation(vec![1])).unwrap();
        let even = ad.class_of(&ExtAffineElement::translation(vec![2])).unwrap();
        assert!(!ad.dominance_leq(&odd, &even));

        let a2 = sigma_group("A2", LatticeChoice::SimplyConnected, None);
        let chain: Vec<SigmaClass> = [0, 1, 2]
            .iter()
            .map(|&k| a2.class_of(&ExtAffineElement::translation(vec![k, k])).unwrap())
            .collect();
        assert!(a2.dominance_leq(&chain[0], &chain[1]));
        assert!(a2.dominance_leq(&chain[1], &chain[2]));
        assert!(a2.dominance_leq(&chain[0], &chain[2]));
    }

    #[test]
    fn embed_torus_class_in_gl2() {
        let gl = sigma_group("A1", LatticeChoice::GlStyle, None);
        let levi = gl.datum().build_levi(&[]).unwrap();
        let mg = Arc::new(AffineWeylGroup::new(levi.datum().clone(), DiagramAutomorphism::identity(levi.datum())).unwrap());
        let m = SigmaGroup::new(mg, Scope::Levi(vec![]));
        let c = m.class_of(&ExtAffineElement::translation(vec![0, 1])).unwrap();
        assert_eq!(c.nu, int_nu(&[0, 1]));
        let g = embed_levi_class(&levi, &m, &gl, &c);
        assert_eq!(g.nu, int_nu(&[1, 0]));
        assert_eq!(g.kappa.residues, vec![1]);
    }
}
