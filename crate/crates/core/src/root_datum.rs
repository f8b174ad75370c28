//! Based root data over an explicit cocharacter lattice, the finite Weyl
//! group, diagram automorphisms and standard Levi sub-data.
//!
//! Cocharacters and characters are integer vectors over a fixed basis of
//! `X_*` and its dual basis of `X^*`, so the pairing is the dot product.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, identity_matrix, mat_mul, mat_vec, solve_rational, RatVec};

/// Hard cap on the finite Weyl group order (enough for every rank ≤ 6 type).
pub const MAX_WEYL_ORDER: usize = 100_000;
const DENSE_TABLE_LIMIT: usize = 1200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanFactor {
    pub family: Family,
    pub rank: usize,
}

impl CartanFactor {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanFactor { family, rank })
        } else {
            Err(Error::UnknownType(format!("{family:?}{rank}")))
        }
    }

    /// Cartan matrix `A[i][j] = ⟨α_i∨, α_j⟩` in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                for (i, j) in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)] {
                    if i < n && j < n {
                        link(i, j);
                    }
                }
            }
        }
        match self.family {
            // α_n short
            Family::B => a[n - 1][n - 2] = -2,
            // α_n long
            Family::C => a[n - 2][n - 1] = -2,
            // α_3, α_4 short
            Family::F => a[2][1] = -2,
            // α_1 short
            Family::G => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for CartanFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Parses `A2`, `G2`, `A1xA1` (also `×` or `*` as separator).
pub fn parse_cartan_type(s: &str) -> Result<Vec<CartanFactor>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::UnknownType(s.to_string()));
    }
    s.split(['x', 'X', '×', '*'])
        .map(|part| {
            let part = part.trim();
            let mut chars = part.chars();
            let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => Family::A,
                Some('B') => Family::B,
                Some('C') => Family::C,
                Some('D') => Family::D,
                Some('E') => Family::E,
                Some('F') => Family::F,
                Some('G') => Family::G,
                _ => return Err(Error::UnknownType(s.to_string())),
            };
            let rank: usize = chars.as_str().parse().map_err(|_| Error::UnknownType(s.to_string()))?;
            CartanFactor::new(family, rank)
        })
        .collect()
}

pub fn format_cartan_type(factors: &[CartanFactor]) -> String {
    if factors.is_empty() {
        return "T".to_string();
    }
    factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("x")
}

/// Choice of cocharacter lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeChoice {
    /// `X_* = ZΦ∨`, basis of simple coroots.
    SimplyConnected,
    /// `X_*` = coweight lattice, basis of fundamental coweights.
    Adjoint,
    /// `Z^{n+1}` per factor `A_n`.
    GlStyle,
    /// Lattice basis given in fundamental-coweight coordinates; each inner
    /// vector is one basis element. Must contain every simple coroot.
    Explicit(Vec<Vec<i64>>),
}

impl LatticeChoice {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sc" | "simply-connected" | "simply_connected" => Ok(LatticeChoice::SimplyConnected),
            "ad" | "adjoint" => Ok(LatticeChoice::Adjoint),
            "gl" | "gl-style" | "gl_style" => Ok(LatticeChoice::GlStyle),
            other if other.starts_with('[') => serde_json::from_str(other)
                .map(LatticeChoice::Explicit)
                .map_err(|e| Error::InvalidLattice(format!("basis matrix: {e}"))),
            other => Err(Error::InvalidLattice(format!("unknown lattice choice {other:?}"))),
        }
    }
}

/// A root with its coroot; `coeffs` are coordinates in the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub character: Vec<i64>,
    pub coroot: Vec<i64>,
    pub height: i64,
}

/// Index of an element of the finite Weyl group of a particular datum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement(pub u32);

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The finite Weyl group, enumerated once. Elements are canonicalized by the
/// images of the simple roots under their action on the root set.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    perms: Vec<Vec<u16>>,
    mats: Vec<Vec<i64>>,
    lengths: Vec<u32>,
    inverses: Vec<WeylElement>,
    lookup: HashMap<Vec<u16>, WeylElement>,
    table: Option<Vec<WeylElement>>,
    simple: Vec<WeylElement>,
    rank: usize,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElement> {
        (0..self.perms.len() as u32).map(WeylElement)
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        self.simple[i]
    }

    pub fn length(&self, w: WeylElement) -> usize {
        self.lengths[w.index()] as usize
    }

    pub fn inverse(&self, w: WeylElement) -> WeylElement {
        self.inverses[w.index()]
    }

    pub fn mul(&self, a: WeylElement, b: WeylElement) -> WeylElement {
        if let Some(table) = &self.table {
            return table[a.index() * self.order() + b.index()];
        }
        let (pa, pb) = (&self.perms[a.index()], &self.perms[b.index()]);
        let key: Vec<u16> = (0..self.rank).map(|i| pa[pb[i] as usize]).collect();
        self.lookup[&key]
    }

    /// Image of root index `r` under `w`.
    pub fn act_root(&self, w: WeylElement, r: usize) -> usize {
        self.perms[w.index()][r] as usize
    }

    /// Row-major action matrix on cocharacters.
    pub fn matrix(&self, w: WeylElement) -> &[i64] {
        &self.mats[w.index()]
    }

    pub fn act(&self, w: WeylElement, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.mats[w.index()], v.len(), v)
    }

    pub fn order_of(&self, w: WeylElement) -> usize {
        let mut k = 1;
        let mut p = w;
        while p != WeylElement::IDENTITY {
            p = self.mul(p, w);
            k += 1;
        }
        k
    }
}

/// Provenance of the lattice, used to construct diagram automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
enum LatticeKind {
    Semisimple,
    Gl,
    Levi,
}

/// A based root datum `(X^*, Φ, X_*, Φ∨)` with its enumerated Weyl group.
#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan_type: Vec<CartanFactor>,
    lattice_rank: usize,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    num_positive: usize,
    root_lookup: HashMap<Vec<i64>, usize>,
    rho2: Vec<i64>,
    components: Vec<Vec<usize>>,
    highest_roots: Vec<usize>,
    weyl: WeylGroup,
    kind: LatticeKind,
}

impl RootDatum {
    /// Builds the datum for a product of Cartan types and a lattice choice.
    pub fn build(cartan_type: &[CartanFactor], lattice: &LatticeChoice) -> Result<RootDatum> {
        let n: usize = cartan_type.iter().map(|f| f.rank).sum();
        let mut cartan = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for f in cartan_type {
            let a = f.cartan_matrix();
            for i in 0..f.rank {
                for j in 0..f.rank {
                    cartan[offset + i][offset + j] = a[i][j];
                }
            }
            offset += f.rank;
        }

        let (roots, coroots, rank, kind) = match lattice {
            LatticeChoice::SimplyConnected => {
                let roots = (0..n).map(|j| (0..n).map(|i| cartan[i][j]).collect()).collect();
                let coroots = (0..n).map(|i| unit(n, i)).collect();
                (roots, coroots, n, LatticeKind::Semisimple)
            }
            LatticeChoice::Adjoint => {
                let roots = (0..n).map(|j| unit(n, j)).collect();
                let coroots = cartan.clone();
                (roots, coroots, n, LatticeKind::Semisimple)
            }
            LatticeChoice::Explicit(basis) => {
                if basis.len() != n || basis.iter().any(|b| b.len() != n) {
                    return Err(Error::InvalidLattice(format!("explicit basis must be {n} vectors of length {n}")));
                }
                // root_j[k] = ⟨b_k, α_j⟩ = j-th coweight coordinate of b_k
                let roots: Vec<Vec<i64>> = (0..n).map(|j| basis.iter().map(|b| b[j]).collect()).collect();
                let mut coroots = Vec::with_capacity(n);
                for i in 0..n {
                    let sol = solve_rational(basis, &RatVec::from_integers(&cartan[i]))
                        .ok_or_else(|| Error::InvalidLattice("basis is not of full rank".into()))?;
                    let check: Vec<Rational64> = (0..n)
                        .map(|k| sol.iter().zip(basis).map(|(c, b)| c * b[k]).sum())
                        .collect();
                    if check.iter().zip(&cartan[i]).any(|(c, &t)| *c != Rational64::from_integer(t)) {
                        return Err(Error::InvalidLattice("basis is not of full rank".into()));
                    }
                    if sol.iter().any(|c| !c.is_integer()) {
                        return Err(Error::InvalidLattice(format!("lattice does not contain the coroot α{}∨", i + 1)));
                    }
                    coroots.push(sol.iter().map(|c| c.to_integer()).collect());
                }
                (roots, coroots, n, LatticeKind::Semisimple)
            }
            LatticeChoice::GlStyle => {
                if cartan_type.iter().any(|f| f.family != Family::A) {
                    return Err(Error::InvalidLattice("gl-style lattice requires type A factors".into()));
                }
                let rank: usize = cartan_type.iter().map(|f| f.rank + 1).sum();
                let mut roots = Vec::new();
                let mut block = 0;
                for f in cartan_type {
                    for i in 0..f.rank {
                        let mut v = vec![0; rank];
                        v[block + i] = 1;
                        v[block + i + 1] = -1;
                        roots.push(v);
                    }
                    block += f.rank + 1;
                }
                let coroots = roots.clone();
                (roots, coroots, rank, LatticeKind::Gl)
            }
        };
        let mut datum = RootDatum::from_simple_system(rank, roots, coroots)?;
        datum.cartan_type = cartan_type.to_vec();
        datum.kind = kind;
        if datum.cartan != cartan {
            return Err(Error::InvalidLattice("Cartan matrix mismatch".into()));
        }
        Ok(datum)
    }

    /// Builds a datum from simple roots (characters) and simple coroots
    /// (cocharacters) over a lattice of the given rank.
    pub fn from_simple_system(lattice_rank: usize, simple_roots: Vec<Vec<i64>>, simple_coroots: Vec<Vec<i64>>) -> Result<RootDatum> {
        let n = simple_roots.len();
        if simple_coroots.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: simple_coroots.len() });
        }
        for v in simple_roots.iter().chain(&simple_coroots) {
            if v.len() != lattice_rank {
                return Err(Error::DimensionMismatch { expected: lattice_rank, got: v.len() });
            }
        }
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| dot(&simple_coroots[i], &simple_roots[j])).collect())
            .collect();
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidLattice(format!("⟨α{0}∨, α{0}⟩ ≠ 2", i + 1)));
            }
        }

        let positive = enumerate_positive_roots(&cartan)?;
        let num_positive = positive.len();
        let combine = |coeffs: &[i64], basis: &[Vec<i64>]| -> Vec<i64> {
            let mut v = vec![0; lattice_rank];
            for (c, b) in coeffs.iter().zip(basis) {
                for k in 0..lattice_rank {
                    v[k] += c * b[k];
                }
            }
            v
        };
        let mut roots: Vec<Root> = positive
            .iter()
            .map(|(c, d)| Root {
                coeffs: c.clone(),
                character: combine(c, &simple_roots),
                coroot: combine(d, &simple_coroots),
                height: c.iter().sum(),
            })
            .collect();
        let negatives: Vec<Root> = roots
            .iter()
            .map(|r| Root {
                coeffs: r.coeffs.iter().map(|x| -x).collect(),
                character: r.character.iter().map(|x| -x).collect(),
                coroot: r.coroot.iter().map(|x| -x).collect(),
                height: -r.height,
            })
            .collect();
        roots.extend(negatives);
        let root_lookup = roots.iter().enumerate().map(|(i, r)| (r.coeffs.clone(), i)).collect();

        let mut rho2 = vec![0; lattice_rank];
        for r in &roots[..num_positive] {
            for k in 0..lattice_rank {
                rho2[k] += r.character[k];
            }
        }

        let components = connected_components(&cartan);
        let highest_roots = components
            .iter()
            .map(|comp| {
                (0..num_positive)
                    .filter(|&r| roots[r].coeffs.iter().enumerate().all(|(i, &c)| c == 0 || comp.contains(&i)))
                    .filter(|&r| roots[r].coeffs.iter().enumerate().any(|(i, &c)| c != 0 && comp.contains(&i)))
                    .max_by_key(|&r| (roots[r].height, std::cmp::Reverse(r)))
                    .expect("nonempty component")
            })
            .collect();

        let cartan_type = components
            .iter()
            .map(|comp| classify_component(&cartan, comp, &roots[..num_positive]))
            .collect::<Result<Vec<_>>>()?;

        let mut datum = RootDatum {
            cartan_type,
            lattice_rank,
            cartan,
            roots,
            num_positive,
            root_lookup,
            rho2,
            components,
            highest_roots,
            weyl: WeylGroup {
                perms: Vec::new(),
                mats: Vec::new(),
                lengths: Vec::new(),
                inverses: Vec::new(),
                lookup: HashMap::new(),
                table: None,
                simple: Vec::new(),
                rank: n,
            },
            kind: LatticeKind::Levi,
        };
        datum.weyl = datum.enumerate_weyl_group()?;
        Ok(datum)
    }

    fn enumerate_weyl_group(&self) -> Result<WeylGroup> {
        let n = self.rank();
        let r = self.lattice_rank;
        let nroots = self.roots.len();
        let simple_perms: Vec<Vec<u16>> = (0..n)
            .map(|i| {
                (0..nroots)
                    .map(|b| self.root_index(&self.reflect_coeffs(i, &self.roots[b].coeffs)) as u16)
                    .collect()
            })
            .collect();
        let simple_mats: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut m = identity_matrix(r);
                let (cor, root) = (&self.roots[i].coroot, &self.roots[i].character);
                for a in 0..r {
                    for b in 0..r {
                        m[a * r + b] -= cor[a] * root[b];
                    }
                }
                m
            })
            .collect();

        let id_perm: Vec<u16> = (0..nroots as u16).collect();
        let key_of = |p: &[u16]| -> Vec<u16> { p[..n].to_vec() };
        let mut perms = vec![id_perm.clone()];
        let mut mats = vec![identity_matrix(r)];
        let mut lookup = HashMap::new();
        lookup.insert(key_of(&id_perm), WeylElement(0));
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for i in 0..n {
                let p: Vec<u16> = simple_perms[i].iter().map(|&b| perms[w][b as usize]).collect();
                let key = key_of(&p);
                if lookup.contains_key(&key) {
                    continue;
                }
                if perms.len() >= MAX_WEYL_ORDER {
                    return Err(Error::WeylGroupTooLarge(MAX_WEYL_ORDER));
                }
                let id = WeylElement(perms.len() as u32);
                lookup.insert(key, id);
                mats.push(mat_mul(&mats[w], &simple_mats[i], r));
                perms.push(p);
                queue.push_back(id.index());
            }
        }
        let npos = self.num_positive;
        let lengths = perms
            .iter()
            .map(|p| p[..npos].iter().filter(|&&b| b as usize >= npos).count() as u32)
            .collect();
        let inverses = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0u16; nroots];
                for (b, &img) in p.iter().enumerate() {
                    inv[img as usize] = b as u16;
                }
                lookup[&key_of(&inv)]
            })
            .collect();
        let simple = simple_perms.iter().map(|p| lookup[&key_of(p)]).collect();
        let mut group = WeylGroup { perms, mats, lengths, inverses, lookup, table: None, simple, rank: n };
        let order = group.order();
        if order <= DENSE_TABLE_LIMIT {
            let table = (0..order)
                .flat_map(|a| (0..order).map(move |b| (a, b)))
                .map(|(a, b)| group.mul(WeylElement(a as u32), WeylElement(b as u32)))
                .collect();
            group.table = Some(table);
        }
        Ok(group)
    }

    fn reflect_coeffs(&self, i: usize, coeffs: &[i64]) -> Vec<i64> {
        let p: i64 = coeffs.iter().enumerate().map(|(k, c)| c * self.cartan[i][k]).sum();
        let mut out = coeffs.to_vec();
        out[i] -= p;
        out
    }

    pub fn cartan_type(&self) -> &[CartanFactor] {
        &self.cartan_type
    }

    pub fn type_name(&self) -> String {
        format_cartan_type(&self.cartan_type)
    }

    /// Semisimple rank `|Δ|`.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, r: usize) -> &Root {
        &self.roots[r]
    }

    pub fn is_positive(&self, r: usize) -> bool {
        r < self.num_positive
    }

    pub fn negate(&self, r: usize) -> usize {
        if r < self.num_positive {
            r + self.num_positive
        } else {
            r - self.num_positive
        }
    }

    pub fn root_index(&self, coeffs: &[i64]) -> usize {
        self.root_lookup[coeffs]
    }

    pub fn find_root(&self, coeffs: &[i64]) -> Option<usize> {
        self.root_lookup.get(coeffs).copied()
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.roots[i].character
    }

    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.roots[i].coroot
    }

    pub fn simple_coroots(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|i| self.roots[i].coroot.clone()).collect()
    }

    /// `2ρ`, the sum of the positive roots.
    pub fn rho2(&self) -> &[i64] {
        &self.rho2
    }

    /// Simple-root indices of each irreducible component.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Highest root of each irreducible component.
    pub fn highest_roots(&self) -> &[usize] {
        &self.highest_roots
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// `⟨v, β⟩` for a cocharacter `v` and root index `β`.
    pub fn pair_root(&self, v: &[i64], r: usize) -> i64 {
        dot(v, &self.roots[r].character)
    }

    /// Finite Weyl element from a word of simple reflection indices (0-based).
    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        word.iter()
            .fold(WeylElement::IDENTITY, |w, &i| self.weyl.mul(w, self.weyl.simple_reflection(i)))
    }

    /// Reduced word by greedy left descent (smallest index first).
    pub fn reduced_word(&self, w: WeylElement) -> Vec<usize> {
        let weyl = &self.weyl;
        let mut w = w;
        let mut word = Vec::with_capacity(weyl.length(w));
        while w != WeylElement::IDENTITY {
            let winv = weyl.inverse(w);
            let i = (0..self.rank())
                .find(|&i| !self.is_positive(weyl.act_root(winv, i)))
                .expect("nontrivial element has a left descent");
            word.push(i);
            w = weyl.mul(weyl.simple_reflection(i), w);
        }
        word
    }

    /// Signed 1-based positive-root index of the image of each simple root.
    pub fn canonical_encoding(&self, w: WeylElement) -> Vec<i64> {
        (0..self.rank())
            .map(|i| {
                let img = self.weyl.act_root(w, i);
                if self.is_positive(img) {
                    img as i64 + 1
                } else {
                    -((self.negate(img)) as i64 + 1)
                }
            })
            .collect()
    }

    /// Linear action of `w` on a rational cocharacter.
    pub fn weyl_action(&self, w: WeylElement, v: &RatVec) -> Result<RatVec> {
        if v.dim() != self.lattice_rank {
            return Err(Error::DimensionMismatch { expected: self.lattice_rank, got: v.dim() });
        }
        Ok(v.map(self.weyl.matrix(w), self.lattice_rank))
    }

    pub fn is_dominant(&self, v: &RatVec) -> bool {
        (0..self.rank()).all(|i| dot(v.numerators(), self.simple_root(i)) >= 0)
    }

    /// The dominant element of the W-orbit of `v`, with `w·v = v_dom`.
    /// The witness is produced by first-descent greedy reflection.
    pub fn dominant_representative(&self, v: &RatVec) -> (RatVec, WeylElement) {
        let mut num = v.numerators().to_vec();
        let mut w = WeylElement::IDENTITY;
        while let Some(i) = (0..self.rank()).find(|&i| dot(&num, self.simple_root(i)) < 0) {
            let p = dot(&num, self.simple_root(i));
            for (x, c) in num.iter_mut().zip(self.simple_coroot(i)) {
                *x -= p * c;
            }
            w = self.weyl.mul(self.weyl.simple_reflection(i), w);
        }
        (RatVec::new(num, v.denominator()), w)
    }

    /// Minimal-length representative of the coset `w W_J`.
    pub fn min_coset_representative(&self, w: WeylElement, subset: &[usize]) -> WeylElement {
        let mut w = w;
        while let Some(&j) = subset.iter().find(|&&j| !self.is_positive(self.weyl.act_root(w, j))) {
            w = self.weyl.mul(w, self.weyl.simple_reflection(j));
        }
        w
    }

    pub fn is_min_coset_representative(&self, w: WeylElement, subset: &[usize]) -> bool {
        subset.iter().all(|&j| self.is_positive(self.weyl.act_root(w, j)))
    }

    /// Whether `w` lies in the parabolic subgroup `W_J`.
    pub fn in_parabolic(&self, w: WeylElement, subset: &[usize]) -> bool {
        self.min_coset_representative(w, subset) == WeylElement::IDENTITY
    }

    /// Whether positive root `r` lies in `Φ_J`.
    pub fn root_in_subsystem(&self, r: usize, subset: &[usize]) -> bool {
        self.roots[r].coeffs.iter().enumerate().all(|(i, &c)| c == 0 || subset.contains(&i))
    }

    pub fn build_levi(self: &Arc<Self>, subset: &[usize]) -> Result<LeviDatum> {
        LeviDatum::new(self.clone(), subset)
    }

    pub(crate) fn is_gl(&self) -> bool {
        self.kind == LatticeKind::Gl
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Positive roots with their coroots, both in simple coordinates.
/// Simple roots come first in index order, then by height.
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Result<Vec<(Vec<i64>, Vec<i64>)>> {
    let n = cartan.len();
    let mut found: Vec<(Vec<i64>, Vec<i64>)> = (0..n).map(|i| (unit(n, i), unit(n, i))).collect();
    let mut seen: HashMap<Vec<i64>, usize> = found.iter().enumerate().map(|(k, (c, _))| (c.clone(), k)).collect();
    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(k) = queue.pop_front() {
        for j in 0..n {
            let (c, d) = found[k].clone();
            let p: i64 = (0..n).map(|i| c[i] * cartan[j][i]).sum();
            let q: i64 = (0..n).map(|i| d[i] * cartan[i][j]).sum();
            let mut c2 = c.clone();
            c2[j] -= p;
            if c2.iter().any(|&x| x < 0) || seen.contains_key(&c2) {
                continue;
            }
            let mut d2 = d;
            d2[j] -= q;
            if found.len() > 10_000 {
                return Err(Error::InvalidLattice("root system is not finite".into()));
            }
            seen.insert(c2.clone(), found.len());
            queue.push_back(found.len());
            found.push((c2, d2));
        }
    }
    let mut rest = found.split_off(n);
    rest.sort_by(|a, b| (a.0.iter().sum::<i64>(), &a.0).cmp(&(b.0.iter().sum::<i64>(), &b.0)));
    found.extend(rest);
    Ok(found)
}

fn connected_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for j in 0..n {
                if j != i && cartan[i][j] != 0 && comp[j] == usize::MAX {
                    comp[j] = id;
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn classify_component(cartan: &[Vec<i64>], comp: &[usize], positive: &[Root]) -> Result<CartanFactor> {
    let n = comp.len();
    let count = positive
        .iter()
        .filter(|r| r.coeffs.iter().enumerate().any(|(i, &c)| c != 0 && comp.contains(&i)))
        .count();
    let simply_laced = comp.iter().all(|&i| comp.iter().all(|&j| i == j || cartan[i][j] >= -1));
    let family = if simply_laced {
        match count {
            c if c == n * (n + 1) / 2 => Family::A,
            c if n >= 4 && c == n * (n - 1) => Family::D,
            36 | 63 | 120 => Family::E,
            _ => return Err(Error::UnknownType(format!("component of rank {n} with {count} positive roots"))),
        }
    } else if n == 2 && count == 6 {
        Family::G
    } else if n == 4 && count == 24 {
        Family::F
    } else if count == n * n {
        // squared root lengths via the symmetrization len_j = len_i A_ij / A_ji
        let mut len = vec![0i64; cartan.len()];
        len[comp[0]] = 6;
        let mut stack = vec![comp[0]];
        while let Some(i) = stack.pop() {
            for &j in comp {
                if j != i && cartan[i][j] != 0 && len[j] == 0 {
                    len[j] = len[i] * cartan[i][j] / cartan[j][i];
                    stack.push(j);
                }
            }
        }
        let min = comp.iter().map(|&i| len[i]).min().unwrap_or(0);
        let short = comp.iter().filter(|&&i| len[i] == min).count();
        if short == 1 && n > 2 {
            Family::B
        } else {
            Family::C
        }
    } else {
        return Err(Error::UnknownType(format!("component of rank {n} with {count} positive roots")));
    };
    CartanFactor::new(family, n)
}

/// A diagram automorphism together with a compatible lattice automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    node_perm: Vec<usize>,
    lattice_map: Vec<i64>,
    order: usize,
    weyl_conj: Vec<WeylElement>,
}

impl DiagramAutomorphism {
    pub fn identity(datum: &RootDatum) -> Self {
        let perm: Vec<usize> = (0..datum.rank()).collect();
        Self::from_parts(datum, perm, identity_matrix(datum.lattice_rank())).expect("identity is valid")
    }

    /// Lifts a node permutation (0-based, `i ↦ perm[i]`) to the lattice.
    pub fn from_node_permutation(datum: &RootDatum, perm: &[usize]) -> Result<Self> {
        let n = datum.rank();
        check_node_permutation(datum, perm)?;
        let r = datum.lattice_rank();
        let matrix = if r == n {
            // δ(α_i∨) = α_{π(i)}∨ determines δ on the rational span.
            let coroots = datum.simple_coroots();
            let mut m = vec![0i64; r * r];
            for k in 0..r {
                let sol = solve_rational(&coroots, &RatVec::from_integers(&unit(r, k)))
                    .ok_or_else(|| Error::InvalidAutomorphism("coroots do not span".into()))?;
                for a in 0..r {
                    let v: Rational64 = (0..n).map(|i| sol[i] * datum.simple_coroot(perm[i])[a]).sum();
                    if !v.is_integer() {
                        return Err(Error::InvalidAutomorphism("lattice is not stable under the automorphism".into()));
                    }
                    m[a * r + k] = v.to_integer();
                }
            }
            m
        } else if datum.is_gl() {
            gl_lattice_map(datum, perm)?
        } else {
            return Err(Error::InvalidAutomorphism(
                "cannot lift a node permutation on a lattice with a central part; supply the lattice map".into(),
            ));
        };
        Self::from_parts(datum, perm.to_vec(), matrix)
    }

    /// Validates an explicit (node permutation, lattice matrix) pair.
    pub fn from_parts(datum: &RootDatum, perm: Vec<usize>, lattice_map: Vec<i64>) -> Result<Self> {
        check_node_permutation(datum, &perm)?;
        let r = datum.lattice_rank();
        if lattice_map.len() != r * r {
            return Err(Error::DimensionMismatch { expected: r * r, got: lattice_map.len() });
        }
        for i in 0..datum.rank() {
            if mat_vec(&lattice_map, r, datum.simple_coroot(i)) != datum.simple_coroot(perm[i]) {
                return Err(Error::InvalidAutomorphism(format!("α{}∨ is not sent to α{}∨", i + 1, perm[i] + 1)));
            }
            // ⟨δ e_k, α_{π j}⟩ = ⟨e_k, α_j⟩
            for k in 0..r {
                let col: Vec<i64> = (0..r).map(|a| lattice_map[a * r + k]).collect();
                if dot(&col, datum.simple_root(perm[i])) != datum.simple_root(i)[k] {
                    return Err(Error::InvalidAutomorphism("lattice map does not preserve the pairing".into()));
                }
            }
        }
        let id = identity_matrix(r);
        let mut power = lattice_map.clone();
        let mut order = 1;
        while power != id {
            power = mat_mul(&power, &lattice_map, r);
            order += 1;
            if order > 64 {
                return Err(Error::InvalidAutomorphism("lattice map has infinite or excessive order".into()));
            }
        }
        let weyl_conj = datum
            .weyl()
            .elements()
            .map(|w| {
                let word: Vec<usize> = datum.reduced_word(w).into_iter().map(|i| perm[i]).collect();
                datum.from_word(&word)
            })
            .collect();
        Ok(DiagramAutomorphism { node_perm: perm, lattice_map, order, weyl_conj })
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn node_permutation(&self) -> &[usize] {
        &self.node_perm
    }

    pub fn lattice_map(&self) -> &[i64] {
        &self.lattice_map
    }

    /// Order as an automorphism of the lattice (hence of `W̃`).
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.lattice_map, v.len(), v)
    }

    pub fn apply_rational(&self, v: &RatVec) -> RatVec {
        v.map(&self.lattice_map, v.dim())
    }

    /// `δ w δ⁻¹`.
    pub fn conjugate(&self, w: WeylElement) -> WeylElement {
        self.weyl_conj[w.index()]
    }

    /// Image of a root index.
    pub fn apply_root(&self, datum: &RootDatum, r: usize) -> usize {
        let coeffs = &datum.root(r).coeffs;
        let mut out = vec![0; coeffs.len()];
        for (i, &c) in coeffs.iter().enumerate() {
            out[self.node_perm[i]] = c;
        }
        datum.root_index(&out)
    }

    pub fn maps_subset(&self, subset: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = subset.iter().map(|&i| self.node_perm[i]).collect();
        out.sort_unstable();
        out
    }

    pub fn stabilizes(&self, subset: &[usize]) -> bool {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        self.maps_subset(subset) == sorted
    }

    pub fn power(&self, datum: &RootDatum, k: usize) -> DiagramAutomorphism {
        let r = datum.lattice_rank();
        let mut perm: Vec<usize> = (0..self.node_perm.len()).collect();
        let mut m = identity_matrix(r);
        for _ in 0..k % self.order {
            perm = perm.iter().map(|&i| self.node_perm[i]).collect();
            m = mat_mul(&self.lattice_map, &m, r);
        }
        Self::from_parts(datum, perm, m).expect("powers of a valid automorphism are valid")
    }

    /// The same lattice map viewed on a σ-stable Levi datum.
    pub fn restrict(&self, levi: &LeviDatum) -> Result<DiagramAutomorphism> {
        let subset = levi.subset();
        if !self.stabilizes(subset) {
            return Err(Error::NotSigmaStable(subset.to_vec()));
        }
        let perm = subset
            .iter()
            .map(|&j| subset.iter().position(|&k| k == self.node_perm[j]).expect("stable"))
            .collect();
        Self::from_parts(levi.datum(), perm, self.lattice_map.clone())
    }
}

fn check_node_permutation(datum: &RootDatum, perm: &[usize]) -> Result<()> {
    let n = datum.rank();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::InvalidAutomorphism(format!("{perm:?} is not a permutation of {n} nodes")));
    }
    let a = datum.cartan_matrix();
    for i in 0..n {
        for j in 0..n {
            if a[perm[i]][perm[j]] != a[i][j] {
                return Err(Error::InvalidAutomorphism("permutation does not preserve the Cartan matrix".into()));
            }
        }
    }
    Ok(())
}

/// For gl-style data, factor blocks are permuted, with `e_k ↦ -e_{m-1-k}`
/// on factors whose diagram is reversed.
fn gl_lattice_map(datum: &RootDatum, perm: &[usize]) -> Result<Vec<i64>> {
    let r = datum.lattice_rank();
    let mut node_off = Vec::new();
    let mut block_off = Vec::new();
    let (mut no, mut bo) = (0, 0);
    for f in datum.cartan_type() {
        node_off.push(no);
        block_off.push(bo);
        no += f.rank;
        bo += f.rank + 1;
    }
    let factor_of = |node: usize| node_off.iter().rposition(|&o| o <= node).expect("node in some factor");
    let mut m = vec![0i64; r * r];
    for (f, fac) in datum.cartan_type().iter().enumerate() {
        let g = factor_of(perm[node_off[f]]);
        let image = |i: usize| perm[node_off[f] + i] - node_off[g];
        let reversed = fac.rank > 1 && image(0) == fac.rank - 1;
        for i in 0..fac.rank {
            let expect = if reversed { fac.rank - 1 - i } else { i };
            if image(i) != expect {
                return Err(Error::InvalidAutomorphism("not a factor-wise diagram automorphism".into()));
            }
        }
        let size = fac.rank + 1;
        for k in 0..size {
            let src = block_off[f] + k;
            if reversed {
                m[(block_off[g] + size - 1 - k) * r + src] = -1;
            } else {
                m[(block_off[g] + k) * r + src] = 1;
            }
        }
    }
    Ok(m)
}

/// Standard Levi sub-datum `M_J` sharing the ambient lattice.
#[derive(Clone, Debug)]
pub struct LeviDatum {
    ambient: Arc<RootDatum>,
    subset: Vec<usize>,
    positive_roots: Vec<usize>,
    rho2: Vec<i64>,
    datum: Arc<RootDatum>,
    to_ambient: Vec<WeylElement>,
    from_ambient: HashMap<WeylElement, WeylElement>,
}

impl LeviDatum {
    pub fn new(ambient: Arc<RootDatum>, subset: &[usize]) -> Result<LeviDatum> {
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if subset.iter().any(|&j| j >= ambient.rank()) {
            return Err(Error::DimensionMismatch { expected: ambient.rank(), got: subset.len() });
        }
        let positive_roots: Vec<usize> = (0..ambient.num_positive())
            .filter(|&r| ambient.root_in_subsystem(r, &subset))
            .collect();
        let mut rho2 = vec![0; ambient.lattice_rank()];
        for &r in &positive_roots {
            for (x, c) in rho2.iter_mut().zip(&ambient.root(r).character) {
                *x += c;
            }
        }
        let datum = RootDatum::from_simple_system(
            ambient.lattice_rank(),
            subset.iter().map(|&j| ambient.simple_root(j).to_vec()).collect(),
            subset.iter().map(|&j| ambient.simple_coroot(j).to_vec()).collect(),
        )?;
        let to_ambient: Vec<WeylElement> = datum
            .weyl()
            .elements()
            .map(|m| {
                let word: Vec<usize> = datum.reduced_word(m).into_iter().map(|k| subset[k]).collect();
                ambient.from_word(&word)
            })
            .collect();
        let from_ambient = to_ambient.iter().enumerate().map(|(m, &a)| (a, WeylElement(m as u32))).collect();
        Ok(LeviDatum { ambient, subset, positive_roots, rho2, datum: Arc::new(datum), to_ambient, from_ambient })
    }

    pub fn ambient(&self) -> &Arc<RootDatum> {
        &self.ambient
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// `Φ_J⁺` as ambient root indices.
    pub fn positive_roots(&self) -> &[usize] {
        &self.positive_roots
    }

    pub fn rho2(&self) -> &[i64] {
        &self.rho2
    }

    /// The Levi as a standalone root datum.
    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn weyl_generators(&self) -> Vec<WeylElement> {
        self.subset.iter().map(|&j| self.ambient.weyl().simple_reflection(j)).collect()
    }

    pub fn to_ambient(&self, w: WeylElement) -> WeylElement {
        self.to_ambient[w.index()]
    }

    /// `None` when `w ∉ W_J`.
    pub fn from_ambient(&self, w: WeylElement) -> Option<WeylElement> {
        self.from_ambient.get(&w).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(t: &str, l: LatticeChoice) -> Arc<RootDatum> {
        Arc::new(RootDatum::build(&parse_cartan_type(t).unwrap(), &l).unwrap())
    }

    #[test]
    fn a1_simply_connected() {
        let d = datum("A1", LatticeChoice::SimplyConnected);
        assert_eq!(d.num_positive(), 1);
        assert_eq!(d.lattice_rank(), 1);
        assert_eq!(d.simple_coroot(0), &[1]);
        assert_eq!(dot(d.simple_coroot(0), d.simple_root(0)), 2);
    }

    #[test]
    fn a1_gl_style() {
        let d = datum("A1", LatticeChoice::GlStyle);
        assert_eq!(d.lattice_rank(), 2);
        assert_eq!(d.simple_coroot(0), &[1, -1]);
        assert_eq!(dot(&[1, 0], d.simple_root(0)), 1);
    }

    #[test]
    fn root_counts_match_types() {
        for (t, count, order) in [
            ("A1", 1, 2),
            ("A2", 3, 6),
            ("A3", 6, 24),
            ("B3", 9, 48),
            ("C2", 4, 8),
            ("C3", 9, 48),
            ("D4", 12, 192),
            ("G2", 6, 12),
            ("F4", 24, 1152),
            ("E6", 36, 51840),
            ("A1xA1", 2, 4),
        ] {
            let d = datum(t, LatticeChoice::SimplyConnected);
            assert_eq!(d.num_positive(), count, "{t}");
            assert_eq!(d.weyl().order(), order, "{t}");
        }
    }

    #[test]
    fn classification_recovers_types() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4", "E6", "A1xG2"] {
            let d = datum(t, LatticeChoice::Adjoint);
            let rebuilt = RootDatum::from_simple_system(
                d.lattice_rank(),
                (0..d.rank()).map(|i| d.simple_root(i).to_vec()).collect(),
                d.simple_coroots(),
            )
            .unwrap();
            assert_eq!(rebuilt.type_name(), t);
        }
    }

    #[test]
    fn unknown_types_rejected() {
        assert!(parse_cartan_type("Q3").is_err());
        assert!(parse_cartan_type("G3").is_err());
        assert!(parse_cartan_type("").is_err());
        assert!(matches!(
            RootDatum::build(&parse_cartan_type("E7").unwrap(), &LatticeChoice::SimplyConnected),
            Err(Error::WeylGroupTooLarge(_))
        ));
    }

    #[test]
    fn explicit_lattice_validation() {
        let a1 = parse_cartan_type("A1").unwrap();
        // the coweight lattice itself and the coroot lattice 2ω∨
        assert!(RootDatum::build(&a1, &LatticeChoice::Explicit(vec![vec![1]])).is_ok());
        let sc = RootDatum::build(&a1, &LatticeChoice::Explicit(vec![vec![2]])).unwrap();
        assert_eq!(sc.simple_coroot(0), &[1]);
        assert!(matches!(
            RootDatum::build(&a1, &LatticeChoice::Explicit(vec![vec![4]])),
            Err(Error::InvalidLattice(_))
        ));
        // A3 with the intermediate lattice between ZΦ∨ and the coweights
        let a3 = parse_cartan_type("A3").unwrap();
        let mid = LatticeChoice::Explicit(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, 1, 0]]);
        assert!(RootDatum::build(&a3, &mid).is_ok());
        assert_eq!(LatticeChoice::parse("[[2]]").unwrap(), LatticeChoice::Explicit(vec![vec![2]]));
        assert!(LatticeChoice::parse("[[2],").is_err());
    }

    #[test]
    fn reflection_closure() {
        for t in ["A2", "C2", "G2", "B3"] {
            let d = datum(t, LatticeChoice::SimplyConnected);
            for a in 0..d.num_roots() {
                for b in 0..d.num_roots() {
                    let p = dot(&d.root(a).coroot, &d.root(b).character);
                    let img: Vec<i64> = d.root(b).coeffs.iter().zip(&d.root(a).coeffs).map(|(x, y)| x - p * y).collect();
                    assert!(d.find_root(&img).is_some());
                }
            }
        }
    }

    #[test]
    fn rho2_pairs_to_two_with_simple_coroots() {
        for t in ["A2", "C2", "G2", "B3", "D4"] {
            for l in [LatticeChoice::SimplyConnected, LatticeChoice::Adjoint] {
                let d = datum(t, l);
                for i in 0..d.rank() {
                    assert_eq!(dot(d.simple_coroot(i), d.rho2()), 2);
                }
            }
        }
    }

    #[test]
    fn weyl_action_examples() {
        let d = datum("A1", LatticeChoice::SimplyConnected);
        let s = d.weyl().simple_reflection(0);
        let v = RatVec::from_integers(&[1]);
        assert_eq!(d.weyl_action(s, &v).unwrap(), RatVec::from_integers(&[-1]));
        assert_eq!(d.weyl_action(WeylElement::IDENTITY, &v).unwrap(), v);
        assert!(d.weyl_action(s, &RatVec::zero(2)).is_err());

        // s1 s2 (α1∨) = s1(α1∨ + α2∨) = α2∨
        let d = datum("A2", LatticeChoice::SimplyConnected);
        let w = d.from_word(&[0, 1]);
        let out = d.weyl_action(w, &RatVec::from_integers(d.simple_coroot(0))).unwrap();
        assert_eq!(out, RatVec::from_integers(d.simple_coroot(1)));
    }

    #[test]
    fn dominant_representative_examples() {
        let d = datum("A1", LatticeChoice::GlStyle);
        let (v, w) = d.dominant_representative(&RatVec::from_integers(&[-1, 1]));
        assert_eq!(v, RatVec::from_integers(&[1, -1]));
        assert_eq!(w, d.weyl().simple_reflection(0));
        let (v, w) = d.dominant_representative(&RatVec::zero(2));
        assert_eq!(v, RatVec::zero(2));
        assert_eq!(w, WeylElement::IDENTITY);
    }

    #[test]
    fn min_coset_examples() {
        let d = datum("A2", LatticeChoice::SimplyConnected);
        let s1 = d.weyl().simple_reflection(0);
        assert_eq!(d.min_coset_representative(s1, &[0]), WeylElement::IDENTITY);
        let w = d.from_word(&[0, 1]);
        assert_eq!(d.min_coset_representative(w, &[]), w);
        // s1 s2 has no right descent in {s1}
        assert_eq!(d.min_coset_representative(w, &[0]), w);
    }

    #[test]
    fn levi_examples() {
        let d = datum("A2", LatticeChoice::SimplyConnected);
        let torus = d.build_levi(&[]).unwrap();
        assert!(torus.positive_roots().is_empty());
        assert_eq!(torus.datum().weyl().order(), 1);
        let m = d.build_levi(&[0]).unwrap();
        assert_eq!(m.positive_roots(), &[0]);
        assert_eq!(m.datum().type_name(), "A1");
        let g2 = datum("G2", LatticeChoice::SimplyConnected);
        let short = g2.build_levi(&[0]).unwrap();
        assert_eq!(short.positive_roots().len(), 1);
        for w in short.datum().weyl().elements() {
            assert_eq!(short.from_ambient(short.to_ambient(w)), Some(w));
        }
    }

    #[test]
    fn diagram_automorphisms() {
        let d = datum("A2", LatticeChoice::SimplyConnected);
        let flip = DiagramAutomorphism::from_node_permutation(&d, &[1, 0]).unwrap();
        assert_eq!(flip.order(), 2);
        assert_eq!(flip.conjugate(d.from_word(&[0, 1])), d.from_word(&[1, 0]));
        let gl3 = datum("A2", LatticeChoice::GlStyle);
        let flip = DiagramAutomorphism::from_node_permutation(&gl3, &[1, 0]).unwrap();
        assert_eq!(flip.apply(&[1, 0, 0]), vec![0, 0, -1]);
        let b3 = datum("C2", LatticeChoice::SimplyConnected);
        assert!(DiagramAutomorphism::from_node_permutation(&b3, &[1, 0]).is_err());
        let aa = datum("A1xA1", LatticeChoice::SimplyConnected);
        let swap = DiagramAutomorphism::from_node_permutation(&aa, &[1, 0]).unwrap();
        assert_eq!(swap.apply(&[1, 0]), vec![0, 1]);
    }
}
