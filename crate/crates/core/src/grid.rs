//! Grid diagrams and the combinatorial tilde complex.
//!
//! Row `r` of a grid of size `n` carries an O marking in column `sigma_o[r]`
//! and an X marking in column `sigma_x[r]`. A generator is a permutation `x`
//! putting the lattice point `(i, x[i])` on each vertical line `i`. The tilde
//! complex counts empty rectangles; its homology is ĤFK(L) ⊗ V^{n−l}.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};

/// Grid size used when no explicit limit is given.
pub const DEFAULT_MAX_GRID: usize = 8;
/// Largest grid the engine accepts at all (10! generators).
pub const HARD_MAX_GRID: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0} markings do not form a permutation")]
    NotPermutation(&'static str),
    #[error("row {0} has its O and X in the same cell")]
    SharedCell(usize),
    #[error("grid size must be at least 1")]
    Empty,
    #[error("grid of size {n} exceeds the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("differential does not square to zero")]
    NotDifferential,
    #[error("rectangle from {from:?} to {to:?} changes gradings by (M {dm}, 2A {da})")]
    Grading { from: Vec<usize>, to: Vec<usize>, dm: i64, da: i64 },
    #[error("total rank {total} is not divisible by 2^{exponent}")]
    Divisibility { total: u64, exponent: usize },
    #[error("Euler characteristic is not divisible by the normalization factor")]
    Normalization,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridDiagram {
    sigma_o: Vec<usize>,
    sigma_x: Vec<usize>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&c| c < p.len() && !std::mem::replace(&mut seen[c], true))
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &c) in p.iter().enumerate() {
        inv[c] = i;
    }
    inv
}

impl GridDiagram {
    pub fn new(sigma_o: Vec<usize>, sigma_x: Vec<usize>) -> Result<Self, GridError> {
        if sigma_o.is_empty() {
            return Err(GridError::Empty);
        }
        if !is_permutation(&sigma_o) {
            return Err(GridError::NotPermutation("O"));
        }
        if sigma_x.len() != sigma_o.len() || !is_permutation(&sigma_x) {
            return Err(GridError::NotPermutation("X"));
        }
        if let Some(r) = (0..sigma_o.len()).find(|&r| sigma_o[r] == sigma_x[r]) {
            return Err(GridError::SharedCell(r));
        }
        Ok(Self { sigma_o, sigma_x })
    }

    pub fn size(&self) -> usize {
        self.sigma_o.len()
    }

    pub fn sigma_o(&self) -> &[usize] {
        &self.sigma_o
    }

    pub fn sigma_x(&self) -> &[usize] {
        &self.sigma_x
    }

    /// Stabilizes at the X marking in `row`: the X is replaced by a 2×2 block
    /// with X markings on one diagonal and a new O on the other. The result
    /// presents the same link on a grid one size larger.
    pub fn stabilize(&self, row: usize) -> GridDiagram {
        let n = self.size();
        let c = self.sigma_x[row];
        let shift_col = |col: usize| if col > c { col + 1 } else { col };
        let mut sigma_o = Vec::with_capacity(n + 1);
        let mut sigma_x = Vec::with_capacity(n + 1);
        for r in 0..n {
            sigma_o.push(shift_col(self.sigma_o[r]));
            sigma_x.push(if r == row { c + 1 } else { shift_col(self.sigma_x[r]) });
            if r == row {
                sigma_o.push(c + 1);
                sigma_x.push(c);
            }
        }
        GridDiagram::new(sigma_o, sigma_x).expect("stabilization keeps a valid grid")
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &[usize]| p.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        writeln!(f, "{}", self.size())?;
        writeln!(f, "O: {}", join(&self.sigma_o))?;
        writeln!(f, "X: {}", join(&self.sigma_x))
    }
}

impl FromStr for GridDiagram {
    type Err = GridError;

    fn from_str(text: &str) -> Result<Self, GridError> {
        let lines: Vec<(usize, &str)> =
            text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
        if lines.len() != 3 {
            return Err(GridError::Parse { line: lines.len().min(3) + 1, msg: "expected three lines".into() });
        }
        let (ln, size) = lines[0];
        let n: usize = size.parse().map_err(|_| GridError::Parse { line: ln, msg: format!("bad size {size:?}") })?;
        let row = |(ln, line): (usize, &str), tag: &str| -> Result<Vec<usize>, GridError> {
            let rest = line
                .strip_prefix(tag)
                .and_then(|r| r.trim_start().strip_prefix(':'))
                .ok_or_else(|| GridError::Parse { line: ln, msg: format!("expected `{tag}:`") })?;
            let cols: Vec<usize> = rest
                .split(',')
                .map(|c| c.trim().parse().map_err(|_| GridError::Parse { line: ln, msg: format!("bad column {c:?}") }))
                .collect::<Result<_, _>>()?;
            if cols.len() != n {
                return Err(GridError::Parse { line: ln, msg: format!("expected {n} columns, got {}", cols.len()) });
            }
            Ok(cols)
        };
        GridDiagram::new(row(lines[1], "O")?, row(lines[2], "X")?)
    }
}

/// Number of link components: cycles of r ↦ σ_X⁻¹(σ_O(r)).
pub fn grid_components(g: &GridDiagram) -> usize {
    let x_row_of_col = inverse(&g.sigma_x);
    let n = g.size();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut r = start;
        while !seen[r] {
            seen[r] = true;
            r = x_row_of_col[g.sigma_o[r]];
        }
    }
    cycles
}

/// Maslov grading with respect to the markings `sigma` (O or X).
fn maslov_for(sigma: &[usize], x: &[usize]) -> i64 {
    let n = x.len();
    let mut m = 1i64;
    for i in 0..n {
        for k in i + 1..n {
            if x[i] < x[k] {
                m += 1;
            }
            if sigma[i] < sigma[k] {
                m += 1;
            }
        }
    }
    // marking of row r sits at (sigma[r] + 1/2, r + 1/2)
    for (i, &xi) in x.iter().enumerate() {
        for (r, &c) in sigma.iter().enumerate() {
            if i <= c && xi <= r {
                m -= 1;
            }
            if c < i && r < xi {
                m -= 1;
            }
        }
    }
    m
}

pub fn maslov(g: &GridDiagram, x: &[usize]) -> i64 {
    maslov_for(&g.sigma_o, x)
}

/// Twice the Alexander grading.
pub fn alexander_doubled(g: &GridDiagram, x: &[usize]) -> i64 {
    maslov_for(&g.sigma_o, x) - maslov_for(&g.sigma_x, x) - (g.size() as i64 - 1)
}

struct Columns {
    o_row: Vec<usize>,
    x_row: Vec<usize>,
}

impl Columns {
    fn of(g: &GridDiagram) -> Self {
        Self { o_row: inverse(&g.sigma_o), x_row: inverse(&g.sigma_x) }
    }
}

/// The two torus rectangles from `x` swapping columns `i < j`: the first spans
/// columns `[i, j]`, the second wraps through the right edge. Each runs upward
/// from the lower-left corner of `x`.
fn empty_rectangles_at(cols: &Columns, x: &[usize], i: usize, j: usize) -> [bool; 2] {
    let n = x.len();
    let up = |from: usize, to: usize| (to + n - from) % n;
    let check = |left: usize, width: usize, bottom: usize| {
        let height = up(bottom, x[(left + width) % n]);
        for dc in 0..width {
            let c = (left + dc) % n;
            if up(bottom, cols.o_row[c]) < height || up(bottom, cols.x_row[c]) < height {
                return false;
            }
            if dc > 0 {
                let h = up(bottom, x[c]);
                if h > 0 && h < height {
                    return false;
                }
            }
        }
        true
    };
    [check(i, j - i, x[i]), check(j, n - (j - i), x[j])]
}

/// Number of empty rectangles from `x` to `y` (0, 1 or 2).
pub fn count_empty_rectangles(g: &GridDiagram, x: &[usize], y: &[usize]) -> usize {
    let diff: Vec<usize> = (0..x.len()).filter(|&i| x[i] != y[i]).collect();
    let [i, j] = diff[..] else {
        return 0;
    };
    if x[i] != y[j] || x[j] != y[i] {
        return 0;
    }
    empty_rectangles_at(&Columns::of(g), x, i, j).iter().filter(|&&b| b).count()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger suffix entry exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Position of `p` in lexicographic order of all permutations.
fn lex_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0;
    let mut used = 0u32;
    for (i, &v) in p.iter().enumerate() {
        let smaller = v - (used & ((1 << v) - 1)).count_ones() as usize;
        rank = rank * (n - i) + smaller;
        used |= 1 << v;
    }
    rank
}

/// Ranks of homology in each bigrading, keyed by (Maslov, 2·Alexander).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedRanks {
    pub ranks: BTreeMap<(i64, i64), u64>,
    pub total: u64,
}

impl BigradedRanks {
    /// `[M, A, rank]` triples with A as a possibly half-integral number.
    pub fn triples(&self) -> Vec<(i64, f64, u64)> {
        self.ranks.iter().map(|(&(m, a2), &r)| (m, a2 as f64 / 2.0, r)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TildeHomology {
    pub n: usize,
    pub l: usize,
    #[serde(skip)]
    pub ranks: BigradedRanks,
    pub generators: usize,
    pub differential_terms: usize,
}

/// Reads the grid-size limit from `SKEINFORGE_MAX_GRID`, defaulting to
/// [`DEFAULT_MAX_GRID`].
pub fn configured_limit() -> usize {
    std::env::var("SKEINFORGE_MAX_GRID").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_GRID)
}

pub fn tilde_homology(g: &GridDiagram) -> Result<TildeHomology, GridError> {
    tilde_homology_with_limit(g, DEFAULT_MAX_GRID)
}

pub fn tilde_homology_with_limit(g: &GridDiagram, limit: usize) -> Result<TildeHomology, GridError> {
    let n = g.size();
    if n > limit.min(HARD_MAX_GRID) {
        return Err(GridError::TooLarge { n, limit: limit.min(HARD_MAX_GRID) });
    }
    let mut states = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        states.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let grades: Vec<(i64, i64)> = states.par_iter().map(|x| (maslov(g, x), alexander_doubled(g, x))).collect();
    let cols = Columns::of(g);
    let differential: Vec<Vec<u32>> = states
        .par_iter()
        .enumerate()
        .map(|(xi, x)| -> Result<Vec<u32>, GridError> {
            let mut out = Vec::new();
            let mut y = x.clone();
            for i in 0..n {
                for j in i + 1..n {
                    let count = empty_rectangles_at(&cols, x, i, j).iter().filter(|&&b| b).count();
                    if count == 0 {
                        continue;
                    }
                    y.swap(i, j);
                    let yi = lex_rank(&y);
                    let (dm, da) = (grades[xi].0 - grades[yi].0, grades[xi].1 - grades[yi].1);
                    if dm != 1 || da != 0 {
                        return Err(GridError::Grading { from: x.clone(), to: y.clone(), dm, da });
                    }
                    y.swap(i, j);
                    if count % 2 == 1 {
                        out.push(yi as u32);
                    }
                }
            }
            out.sort_unstable();
            Ok(out)
        })
        .collect::<Result<_, _>>()?;

    let squares_to_zero = differential.par_iter().all(|targets| {
        let mut second: Vec<u32> = targets.iter().flat_map(|&y| differential[y as usize].iter().copied()).collect();
        second.sort_unstable();
        second.chunks(2).all(|c| c.len() == 2 && c[0] == c[1])
    });
    if !squares_to_zero {
        return Err(GridError::NotDifferential);
    }

    let mut blocks: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (idx, &grade) in grades.iter().enumerate() {
        blocks.entry(grade).or_default().push(idx);
    }
    let mut local = vec![0usize; states.len()];
    for members in blocks.values() {
        for (k, &idx) in members.iter().enumerate() {
            local[idx] = k;
        }
    }
    // rank of the differential leaving each bigrading
    let outgoing: BTreeMap<(i64, i64), usize> = blocks
        .par_iter()
        .map(|(&(m, a), members)| {
            let target_dim = blocks.get(&(m - 1, a)).map_or(0, Vec::len);
            if target_dim == 0 {
                return ((m, a), 0);
            }
            let rows: Vec<BitVector> = members
                .iter()
                .map(|&idx| {
                    let mut row = BitVector::zeros(target_dim);
                    for &y in &differential[idx] {
                        row.set(local[y as usize], true);
                    }
                    row
                })
                .collect();
            ((m, a), BitMatrix::from_row_vectors(target_dim, rows).rank())
        })
        .collect();
    let mut ranks = BigradedRanks::default();
    for (&(m, a), members) in &blocks {
        let incoming = outgoing.get(&(m + 1, a)).copied().unwrap_or(0);
        let h = (members.len() - outgoing[&(m, a)] - incoming) as u64;
        if h > 0 {
            ranks.ranks.insert((m, a), h);
            ranks.total += h;
        }
    }
    Ok(TildeHomology {
        n,
        l: grid_components(g),
        ranks,
        generators: states.len(),
        differential_terms: differential.iter().map(Vec::len).sum(),
    })
}

impl TildeHomology {
    /// rk ĤFK: the total rank with the V^{n−l} factor removed.
    pub fn hfk_rank(&self) -> Result<u64, GridError> {
        let exponent = self.n - self.l;
        let factor = 1u64 << exponent;
        if !self.ranks.total.is_multiple_of(factor) {
            return Err(GridError::Divisibility { total: self.ranks.total, exponent });
        }
        Ok(self.ranks.total / factor)
    }

    /// Graded Euler characteristic Σ (−1)^M rank · s^{2A}, with s = t^{1/2}.
    pub fn euler_characteristic(&self) -> BTreeMap<i64, i64> {
        let mut chi = BTreeMap::new();
        for (&(m, a2), &r) in &self.ranks.ranks {
            let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
            *chi.entry(a2).or_insert(0) += sign * r as i64;
        }
        chi.retain(|_, c| *c != 0);
        chi
    }

    /// |Δ_L(−1)|: divides χ by (s⁻¹ − s)^{n−1} and evaluates at s = i.
    pub fn det_from_chi(&self) -> Result<u64, GridError> {
        let chi = self.euler_characteristic();
        let Some(&low) = chi.keys().next() else {
            return Ok(0);
        };
        let high = *chi.keys().next_back().expect("nonempty");
        let mut poly: Vec<i64> = (low..=high).map(|e| chi.get(&e).copied().unwrap_or(0)).collect();
        // up to a unit, s⁻¹ − s is 1 − s²
        for _ in 0..self.n - 1 {
            poly = divide_by_one_minus_s_squared(&poly).ok_or(GridError::Normalization)?;
        }
        let (mut re, mut im) = (0i64, 0i64);
        for (e, &c) in poly.iter().enumerate() {
            match e % 4 {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                _ => im -= c,
            }
        }
        if re != 0 && im != 0 {
            return Err(GridError::Normalization);
        }
        Ok((re.abs() + im.abs()) as u64)
    }
}

/// Exact quotient of a polynomial (coefficients from degree 0) by 1 − s².
fn divide_by_one_minus_s_squared(p: &[i64]) -> Option<Vec<i64>> {
    if p.len() < 3 {
        return p.iter().all(|&c| c == 0).then(Vec::new);
    }
    let mut q = vec![0i64; p.len() - 2];
    for k in 0..q.len() {
        q[k] = p[k] + if k >= 2 { q[k - 2] } else { 0 };
    }
    let check = |k: usize| {
        let qk = |i: usize| q.get(i).copied().unwrap_or(0);
        let prod = qk(k) - if k >= 2 { qk(k - 2) } else { 0 };
        prod == p[k]
    };
    (q.len()..p.len()).all(check).then_some(q)
}

pub fn hfk_hat_rank(g: &GridDiagram) -> Result<u64, GridError> {
    tilde_homology(g)?.hfk_rank()
}

pub fn alexander_at_minus_one(g: &GridDiagram) -> Result<u64, GridError> {
    tilde_homology(g)?.det_from_chi()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(o: &[usize], x: &[usize]) -> GridDiagram {
        GridDiagram::new(o.to_vec(), x.to_vec()).unwrap()
    }

    fn unknot() -> GridDiagram {
        grid(&[0, 1], &[1, 0])
    }

    fn hopf() -> GridDiagram {
        grid(&[0, 1, 2, 3], &[2, 3, 0, 1])
    }

    fn trefoil() -> GridDiagram {
        grid(&[0, 1, 2, 3, 4], &[3, 4, 0, 1, 2])
    }

    /// Enumerates every embedded torus rectangle by corner, width and height
    /// and tests emptiness cell by cell.
    fn brute_force_rectangles(g: &GridDiagram, x: &[usize], y: &[usize]) -> usize {
        let n = g.size();
        let mut count = 0;
        for left in 0..n {
            for bottom in 0..n {
                for w in 1..n {
                    for h in 1..n {
                        let right = (left + w) % n;
                        let top = (bottom + h) % n;
                        let corners_ok = x[left] == bottom
                            && x[right] == top
                            && y[left] == top
                            && y[right] == bottom
                            && (0..n).all(|k| k == left || k == right || x[k] == y[k]);
                        if !corners_ok {
                            continue;
                        }
                        let inside_cell = |c: usize, r: usize| (c + n - left) % n < w && (r + n - bottom) % n < h;
                        let inside_point = |c: usize, r: usize| {
                            let (dc, dr) = ((c + n - left) % n, (r + n - bottom) % n);
                            dc > 0 && dc < w && dr > 0 && dr < h
                        };
                        let marked = (0..n).any(|r| inside_cell(g.sigma_o[r], r) || inside_cell(g.sigma_x[r], r));
                        let occupied = (0..n).any(|c| inside_point(c, x[c]));
                        if !marked && !occupied {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    fn all_states(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            out.push(p.clone());
            if !next_permutation(&mut p) {
                return out;
            }
        }
    }

    #[test]
    fn components() {
        assert_eq!(grid_components(&unknot()), 1);
        assert_eq!(grid_components(&trefoil()), 1);
        assert_eq!(grid_components(&hopf()), 2);
        assert_eq!(grid_components(&grid(&[0, 1, 2, 3], &[1, 0, 3, 2])), 2);
    }

    #[test]
    fn rejects_bad_grids() {
        assert_eq!(GridDiagram::new(vec![0, 1], vec![0, 1]), Err(GridError::SharedCell(0)));
        assert_eq!(GridDiagram::new(vec![0, 0], vec![1, 0]), Err(GridError::NotPermutation("O")));
        assert!("2\nO: 0,1\nX: 1".parse::<GridDiagram>().is_err());
        assert!("x\nO: 0,1\nX: 1,0".parse::<GridDiagram>().is_err());
    }

    #[test]
    fn parse_round_trip() {
        let g: GridDiagram = "5\nO: 0,1,2,3,4\nX: 3,4,0,1,2\n".parse().unwrap();
        assert_eq!(g, trefoil());
        assert_eq!(g.to_string().parse::<GridDiagram>().unwrap(), g);
    }

    #[test]
    fn lex_rank_matches_enumeration() {
        for (k, p) in all_states(5).iter().enumerate() {
            assert_eq!(lex_rank(p), k);
        }
    }

    #[test]
    fn rectangle_counts_match_brute_force() {
        for g in [unknot(), hopf(), trefoil(), grid(&[0, 5, 2, 1, 3, 4], &[3, 1, 0, 4, 5, 2])] {
            let states = all_states(g.size());
            for x in states.iter().step_by(7) {
                for y in &states {
                    assert_eq!(count_empty_rectangles(&g, x, y), brute_force_rectangles(&g, x, y), "{x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn rectangle_trivial_cases() {
        let g = trefoil();
        assert_eq!(count_empty_rectangles(&g, &[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4]), 0);
        assert_eq!(count_empty_rectangles(&g, &[0, 1, 2, 3, 4], &[1, 2, 0, 3, 4]), 0);
    }

    #[test]
    fn unknot_two_by_two() {
        let g = unknot();
        // both torus rectangles between the two states are empty or not, as
        // the brute force decides
        let counts = (count_empty_rectangles(&g, &[0, 1], &[1, 0]), count_empty_rectangles(&g, &[1, 0], &[0, 1]));
        assert_eq!(
            counts,
            (brute_force_rectangles(&g, &[0, 1], &[1, 0]), brute_force_rectangles(&g, &[1, 0], &[0, 1]))
        );
        let h = tilde_homology(&g).unwrap();
        assert_eq!(h.ranks.total, 2);
        assert_eq!(h.hfk_rank().unwrap(), 1);
        assert_eq!(h.det_from_chi().unwrap(), 1);
    }

    #[test]
    fn trefoil_and_hopf_totals() {
        let t = tilde_homology(&trefoil()).unwrap();
        assert_eq!((t.generators, t.ranks.total, t.hfk_rank().unwrap()), (120, 48, 3));
        assert_eq!(t.det_from_chi().unwrap(), 3);
        let h = tilde_homology(&hopf()).unwrap();
        assert_eq!((h.ranks.total, h.hfk_rank().unwrap(), h.det_from_chi().unwrap()), (16, 4, 2));
    }

    #[test]
    fn unlink_has_zero_determinant() {
        let h = tilde_homology(&grid(&[0, 1, 2, 3], &[1, 0, 3, 2])).unwrap();
        assert_eq!(h.hfk_rank().unwrap(), 2);
        assert_eq!(h.det_from_chi().unwrap(), 0);
    }

    #[test]
    fn stabilization_preserves_hfk() {
        for g in [unknot(), hopf(), trefoil()] {
            let base = tilde_homology(&g).unwrap();
            for row in 0..g.size() {
                let s = g.stabilize(row);
                assert_eq!(s.size(), g.size() + 1);
                assert_eq!(grid_components(&s), grid_components(&g));
                let h = tilde_homology(&s).unwrap();
                assert_eq!(h.hfk_rank().unwrap(), base.hfk_rank().unwrap());
                assert_eq!(h.det_from_chi().unwrap(), base.det_from_chi().unwrap());
            }
        }
    }

    #[test]
    fn size_limit() {
        let g = trefoil();
        assert_eq!(tilde_homology_with_limit(&g, 4).unwrap_err(), GridError::TooLarge { n: 5, limit: 4 });
    }

    #[test]
    fn polynomial_division() {
        // (1 - s^2)(2 + s) = 2 + s - 2s^2 - s^3
        assert_eq!(divide_by_one_minus_s_squared(&[2, 1, -2, -1]), Some(vec![2, 1]));
        assert_eq!(divide_by_one_minus_s_squared(&[1, 0, 0]), None);
        assert_eq!(divide_by_one_minus_s_squared(&[0]), Some(vec![]));
    }
}
