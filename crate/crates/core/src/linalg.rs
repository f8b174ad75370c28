//! Exact integer and rational linear algebra used throughout the crate.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A rational vector stored over a single positive common denominator.
///
/// The representation is normalized (the gcd of all numerators and the
/// denominator is 1), so derived equality, ordering and hashing are exact
/// rational comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec {
    num: Vec<i64>,
    den: i64,
}

impl RatVec {
    pub fn new(num: Vec<i64>, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut v = RatVec { num, den };
        v.normalize();
        v
    }

    pub fn from_integers(num: &[i64]) -> Self {
        RatVec { num: num.to_vec(), den: 1 }
    }

    pub fn zero(dim: usize) -> Self {
        RatVec { num: vec![0; dim], den: 1 }
    }

    pub fn from_rationals(entries: &[Rational64]) -> Self {
        let den = entries.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
        let num = entries.iter().map(|r| r.numer() * (den / r.denom())).collect();
        RatVec::new(num, den)
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            for x in &mut self.num {
                *x = -*x;
            }
        }
        let g = self.num.iter().fold(self.den, |g, &x| g.gcd(&x));
        if g > 1 {
            self.den /= g;
            for x in &mut self.num {
                *x /= g;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn numerators(&self) -> &[i64] {
        &self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn entry(&self, i: usize) -> Rational64 {
        Rational64::new(self.num[i], self.den)
    }

    pub fn entries(&self) -> Vec<Rational64> {
        (0..self.dim()).map(|i| self.entry(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn scale(&self, factor: Rational64) -> RatVec {
        RatVec::new(
            self.num.iter().map(|&x| x * factor.numer()).collect(),
            self.den * factor.denom(),
        )
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        assert_eq!(self.dim(), other.dim());
        let den = self.den.lcm(&other.den);
        let (a, b) = (den / self.den, den / other.den);
        RatVec::new(
            self.num.iter().zip(&other.num).map(|(x, y)| x * a + y * b).collect(),
            den,
        )
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        self.add(&other.scale(-Rational64::one()))
    }

    /// Pairing with an integer vector from the dual lattice.
    pub fn pair(&self, chi: &[i64]) -> Rational64 {
        Rational64::new(dot(&self.num, chi), self.den)
    }

    /// Applies an integer matrix (row-major, `rows x dim`).
    pub fn map(&self, mat: &[i64], rows: usize) -> RatVec {
        RatVec::new(mat_vec(mat, rows, &self.num), self.den)
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.entries().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(r))?;
        }
        write!(f, ")")
    }
}

impl Serialize for RatVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.entries().iter().map(format_rational).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let entries = strs
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RatVec::from_rationals(&entries))
    }
}

/// Formats as `p` or `p/q`.
pub fn format_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rational64::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rational64::from_integer(s.parse().ok()?)),
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-major matrix times vector.
pub fn mat_vec(mat: &[i64], rows: usize, v: &[i64]) -> Vec<i64> {
    let cols = v.len();
    debug_assert_eq!(mat.len(), rows * cols);
    (0..rows).map(|i| dot(&mat[i * cols..(i + 1) * cols], v)).collect()
}

/// Row-major product of square matrices of size `n`.
pub fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

pub fn identity_matrix(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// Smith normal form data of an integer matrix `A` (`rows x cols`).
///
/// `transform` is a unimodular `rows x rows` matrix with `transform * A * V`
/// diagonal for some unimodular `V`; `inverse` is its integer inverse.
/// `diagonal[i]` is the i-th invariant factor for `i < rank` and 0 for the
/// remaining rows, so the cokernel `Z^rows / A Z^cols` is
/// `⊕ Z/diagonal[i]` with `Z/0 = Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub transform: Vec<Vec<i64>>,
    pub inverse: Vec<Vec<i64>>,
    pub diagonal: Vec<i64>,
}

impl SmithForm {
    /// `columns` lists the generators of the sublattice; each has `rows` entries.
    pub fn of_columns(rows: usize, columns: &[Vec<i64>]) -> SmithForm {
        let cols = columns.len();
        let mut a: Vec<Vec<i64>> = (0..rows)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        let mut u: Vec<Vec<i64>> = (0..rows)
            .map(|i| (0..rows).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut uinv = u.clone();

        // Row operations are mirrored on `u` (left) and, inverted, on `uinv` (right).
        let swap_rows = |a: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, uinv: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            a.swap(i, j);
            u.swap(i, j);
            for row in uinv.iter_mut() {
                row.swap(i, j);
            }
        };
        // row_i += c * row_j
        let add_row = |a: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, uinv: &mut Vec<Vec<i64>>, i: usize, j: usize, c: i64| {
            for k in 0..a[0].len() {
                a[i][k] += c * a[j][k];
            }
            for k in 0..u[0].len() {
                u[i][k] += c * u[j][k];
            }
            for row in uinv.iter_mut() {
                row[j] -= c * row[i];
            }
        };
        let negate_row = |a: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, uinv: &mut Vec<Vec<i64>>, i: usize| {
            for x in a[i].iter_mut() {
                *x = -*x;
            }
            for x in u[i].iter_mut() {
                *x = -*x;
            }
            for row in uinv.iter_mut() {
                row[i] = -row[i];
            }
        };

        let mut diagonal = vec![0i64; rows];
        let mut t = 0;
        while t < rows.min(cols) {
            // pivot: smallest nonzero absolute value in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            swap_rows(&mut a, &mut u, &mut uinv, t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            loop {
                let p = a[t][t];
                let mut changed = false;
                for i in t + 1..rows {
                    if a[i][t] != 0 {
                        let q = Integer::div_floor(&a[i][t], &p);
                        add_row(&mut a, &mut u, &mut uinv, i, t, -q);
                        if a[i][t] != 0 {
                            swap_rows(&mut a, &mut u, &mut uinv, t, i);
                            changed = true;
                        }
                    }
                }
                let p = a[t][t];
                for j in t + 1..cols {
                    if a[t][j] != 0 {
                        let q = Integer::div_floor(&a[t][j], &p);
                        for row in a.iter_mut() {
                            row[j] -= q * row[t];
                        }
                        if a[t][j] != 0 {
                            for row in a.iter_mut() {
                                row.swap(t, j);
                            }
                            changed = true;
                        }
                    }
                }
                if changed {
                    continue;
                }
                // divisibility of the remaining block by the pivot
                let p = a[t][t];
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
                match bad {
                    Some(i) => add_row(&mut a, &mut u, &mut uinv, t, i, 1),
                    None => break,
                }
            }
            if a[t][t] < 0 {
                negate_row(&mut a, &mut u, &mut uinv, t);
            }
            diagonal[t] = a[t][t];
            t += 1;
        }

        // Free rows carry a canonical sign: first nonzero entry positive.
        for i in t..rows {
            if let Some(&first) = u[i].iter().find(|&&x| x != 0) {
                if first < 0 {
                    negate_row(&mut a, &mut u, &mut uinv, i);
                }
            }
        }

        SmithForm { rows, transform: u, inverse: uinv, diagonal }
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }

    /// Coordinates of `v` in the cokernel, one per row (unreduced).
    pub fn coordinates(&self, v: &[i64]) -> Vec<i64> {
        self.transform.iter().map(|row| dot(row, v)).collect()
    }

    /// Lattice vector with the given cokernel coordinates.
    pub fn lift(&self, coords: &[i64]) -> Vec<i64> {
        self.inverse.iter().map(|row| dot(row, coords)).collect()
    }
}

/// Solves `Σ c_j columns[j] = target` over ℚ. Returns one solution, or
/// `None` when the target is outside the rational span.
pub fn solve_rational(columns: &[Vec<i64>], target: &RatVec) -> Option<Vec<Rational64>> {
    let rows = target.dim();
    let cols = columns.len();
    let mut m: Vec<Vec<Rational64>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational64> = columns.iter().map(|c| Rational64::from_integer(c[i])).collect();
            row.push(target.entry(i));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for k in 0..=cols {
                    let sub = f * m[r][k];
                    m[i][k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if (r..rows).any(|i| !m[i][cols].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational64::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][cols];
    }
    Some(sol)
}

pub fn floor_rational(r: &Rational64) -> i64 {
    r.floor().to_integer()
}

pub fn is_nonnegative(r: &Rational64) -> bool {
    !r.is_negative()
}
