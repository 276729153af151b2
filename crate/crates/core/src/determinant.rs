//! Link determinants, computed two ways.
//!
//! [`determinant`] builds the Goeritz matrix of a checkerboard shading and
//! takes a fraction-free determinant. [`kauffman_det`] sums the Kauffman
//! bracket over all smoothing states and evaluates it at a primitive eighth
//! root of unity. The two paths share nothing beyond the PD data structure.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Corner, DiagramError, FaceStructure, PlanarDiagram};
use crate::util::UnionFind;

/// Largest crossing count accepted by the state sum (2^c states).
pub const MAX_STATE_SUM_CROSSINGS: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeterminantError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("state sum over {0} crossings exceeds the limit of {MAX_STATE_SUM_CROSSINGS}")]
    TooManyCrossings(usize),
    #[error("bracket value at the eighth root of unity is not a unit times an integer: {0:?}")]
    NotIntegral([i64; 4]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

/// Two-coloring of the faces with the unbounded face white.
#[derive(Clone, Debug)]
pub struct CheckerboardShading {
    pub faces: FaceStructure,
    pub face_color: Vec<Color>,
}

impl CheckerboardShading {
    pub fn white_faces(&self) -> Vec<usize> {
        (0..self.face_color.len()).filter(|&f| self.face_color[f] == Color::White).collect()
    }

    fn corner_color(&self, v: usize, p: usize) -> Color {
        self.face_color[self.faces.face_of(Corner { crossing: v, position: p })]
    }
}

pub fn checkerboard(pd: &PlanarDiagram) -> Result<CheckerboardShading, DiagramError> {
    let faces = pd.faces()?;
    let mut color: Vec<Option<Color>> = vec![None; faces.len()];
    color[faces.unbounded] = Some(Color::White);
    // corners (v,p) and (v,p+1) lie on opposite sides of one edge
    let mut stack = vec![faces.unbounded];
    while let Some(f) = stack.pop() {
        let here = color[f].expect("colored before push");
        let flipped = match here {
            Color::White => Color::Black,
            Color::Black => Color::White,
        };
        for c in &faces.faces[f].corners {
            for q in [(c.position + 1) % 4, (c.position + 3) % 4] {
                let g = faces.face_of(Corner { crossing: c.crossing, position: q });
                match color[g] {
                    None => {
                        color[g] = Some(flipped);
                        stack.push(g);
                    }
                    Some(existing) => {
                        if existing != flipped {
                            return Err(DiagramError::NonPlanar("faces admit no checkerboard shading".into()));
                        }
                    }
                }
            }
        }
    }
    let face_color = color.into_iter().map(|c| c.expect("connected diagram colors every face")).collect();
    Ok(CheckerboardShading { faces, face_color })
}

/// Goeritz sign of a crossing: +1 when the white corners sit at slots 0 and 2.
fn goeritz_sign(shading: &CheckerboardShading, v: usize) -> i64 {
    if shading.corner_color(v, 0) == Color::White {
        1
    } else {
        -1
    }
}

/// The full Goeritz matrix over all white faces, in the order of
/// [`CheckerboardShading::white_faces`].
pub fn goeritz_full(pd: &PlanarDiagram, shading: &CheckerboardShading) -> Vec<Vec<i64>> {
    let whites = shading.white_faces();
    let index: BTreeMap<usize, usize> = whites.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let n = whites.len();
    let mut g = vec![vec![0i64; n]; n];
    for v in 0..pd.crossing_count() {
        let eta = goeritz_sign(shading, v);
        let base = if shading.corner_color(v, 0) == Color::White { 0 } else { 1 };
        let a = index[&shading.faces.face_of(Corner { crossing: v, position: base })];
        let b = index[&shading.faces.face_of(Corner { crossing: v, position: base + 2 })];
        if a != b {
            g[a][b] -= eta;
            g[b][a] -= eta;
        }
    }
    for (i, row) in g.iter_mut().enumerate() {
        let off: i64 = row.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x).sum();
        row[i] = -off;
    }
    g
}

/// Goeritz matrix with the row and column of one white face removed.
pub fn goeritz_matrix(pd: &PlanarDiagram, shading: &CheckerboardShading, excluded_face: usize) -> Vec<Vec<i64>> {
    let whites = shading.white_faces();
    let skip = whites.iter().position(|&f| f == excluded_face).expect("excluded face must be white");
    let full = goeritz_full(pd, shading);
    full.into_iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, row)| row.into_iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, x)| x).collect())
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn bareiss_determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// det(L) from the Goeritz matrix. Split diagrams (disconnected, or free loops
/// alongside anything else) have determinant 0; a lone free loop and the
/// empty diagram have determinant 1.
pub fn determinant(pd: &PlanarDiagram) -> u64 {
    if pd.crossing_count() == 0 {
        return if pd.free_loops() <= 1 { 1 } else { 0 };
    }
    if !pd.is_connected() {
        return 0;
    }
    let shading = checkerboard(pd).expect("connected planar diagrams are shadeable");
    let g = goeritz_matrix(pd, &shading, shading.faces.unbounded);
    bareiss_determinant(&g).unsigned_abs() as u64
}

/// An element of ℤ[ω] with ω⁴ = −1, stored as coefficients of 1, ω, ω², ω³.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Cyclotomic8(pub [i64; 4]);

impl Cyclotomic8 {
    pub const ZERO: Self = Self([0; 4]);
    pub const ONE: Self = Self([1, 0, 0, 0]);

    /// ω^k for any integer k.
    pub fn omega_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Self(c)
    }

    pub fn scale(self, s: i64) -> Self {
        Self(self.0.map(|x| x * s))
    }

    /// Complex conjugate: ω ↦ ω⁻¹ = −ω³.
    pub fn conj(self) -> Self {
        let [a, b, c, d] = self.0;
        Self([a, -d, -c, -b])
    }
}

impl Add for Cyclotomic8 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0) {
            *x += y;
        }
        Self(c)
    }
}

impl Neg for Cyclotomic8 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl Mul for Cyclotomic8 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = [0i64; 4];
        for i in 0..4 {
            for j in 0..4 {
                let t = self.0[i] * rhs.0[j];
                if i + j < 4 {
                    out[i + j] += t;
                } else {
                    out[i + j - 4] -= t;
                }
            }
        }
        Self(out)
    }
}

/// A Laurent polynomial in A with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut p = Self::default();
        p.add_term(exp, coeff);
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }

    /// Evaluates at A = ω, a primitive eighth root of unity.
    pub fn at_omega(&self) -> Cyclotomic8 {
        self.terms().fold(Cyclotomic8::ZERO, |acc, (e, c)| acc + Cyclotomic8::omega_pow(e).scale(c))
    }
}

/// The loop value −A² − A⁻².
fn delta() -> LaurentPoly {
    let mut d = LaurentPoly::monomial(2, -1);
    d.add_term(-2, -1);
    d
}

/// The Kauffman bracket ⟨D⟩ normalized so that a single circle has bracket 1.
///
/// Slot pairing (0,1)(2,3) is the A-smoothing and (0,3)(1,2) the B-smoothing.
pub fn kauffman_bracket(pd: &PlanarDiagram) -> Result<LaurentPoly, DeterminantError> {
    let c = pd.crossing_count();
    if c > MAX_STATE_SUM_CROSSINGS {
        return Err(DeterminantError::TooManyCrossings(c));
    }
    if c == 0 {
        let loops = pd.free_loops();
        let mut p = LaurentPoly::monomial(0, 1);
        for _ in 1..loops {
            p = p.mul(&delta());
        }
        return Ok(p);
    }
    let labels = pd.edges();
    let index: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let tuples: Vec<[usize; 4]> = pd.crossings().iter().map(|t| t.map(|e| index[&e])).collect();
    // histogram of (number of A-smoothings, number of loops)
    let histogram = (0u64..1 << c)
        .into_par_iter()
        .fold(
            || vec![vec![0i64; 2 * c + 2]; c + 1],
            |mut h, state| {
                let mut uf = UnionFind::new(labels.len());
                let mut a_count = 0;
                for (v, t) in tuples.iter().enumerate() {
                    if state >> v & 1 == 0 {
                        a_count += 1;
                        uf.union(t[0], t[1]);
                        uf.union(t[2], t[3]);
                    } else {
                        uf.union(t[0], t[3]);
                        uf.union(t[1], t[2]);
                    }
                }
                h[a_count][uf.count()] += 1;
                h
            },
        )
        .reduce(
            || vec![vec![0i64; 2 * c + 2]; c + 1],
            |mut x, y| {
                for (rx, ry) in x.iter_mut().zip(y) {
                    for (a, b) in rx.iter_mut().zip(ry) {
                        *a += b;
                    }
                }
                x
            },
        );
    let extra = pd.free_loops() as usize;
    let mut delta_pows = vec![LaurentPoly::monomial(0, 1)];
    for _ in 0..2 * c + extra + 1 {
        let next = delta_pows.last().unwrap().mul(&delta());
        delta_pows.push(next);
    }
    let mut bracket = LaurentPoly::default();
    for (a_count, row) in histogram.iter().enumerate() {
        for (loops, &n) in row.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let sigma = a_count as i64 - (c - a_count) as i64;
            let term = LaurentPoly::monomial(sigma, n).mul(&delta_pows[loops + extra - 1]);
            bracket = bracket.add(&term);
        }
    }
    Ok(bracket)
}

/// |Δ(−1)| via the Kauffman bracket at a primitive eighth root of unity.
pub fn kauffman_det(pd: &PlanarDiagram) -> Result<u64, DeterminantError> {
    if pd.crossing_count() == 0 && pd.free_loops() == 0 {
        return Ok(1);
    }
    let z = kauffman_bracket(pd)?.at_omega();
    // the value is a power of ω times a rational integer
    let nonzero: Vec<i64> = z.0.iter().copied().filter(|&x| x != 0).collect();
    match nonzero.as_slice() {
        [] => Ok(0),
        [x] => Ok(x.unsigned_abs()),
        _ => Err(DeterminantError::NotIntegral(z.0)),
    }
}
