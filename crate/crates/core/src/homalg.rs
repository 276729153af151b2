//! Ungraded chain complexes over F₂ and an executable check of the algebraic
//! lemma behind exact triangles.
//!
//! A triangle is three complexes `C₀, C₁, C₂` with chain maps
//! `f_k: C_k → C_{k+1}` (indices mod 3). The lemma asks for maps
//! `H_k: C_k → C_{k+2}` with
//!
//! 1. `∂ H_k + H_k ∂ = f_{k+1} f_k`, and
//! 2. `ψ_k = f_{k+2} H_k + H_{k+1} f_k` inducing an isomorphism on homology,
//!
//! and concludes that the induced triangle on homology is exact.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector, Echelon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomalgError {
    #[error("differential is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("differential does not square to zero")]
    NotDifferential,
    #[error("{what}: expected a {rows}x{cols} matrix, got {got_rows}x{got_cols}")]
    Dimension { what: String, rows: usize, cols: usize, got_rows: usize, got_cols: usize },
    #[error("{0} is not a chain map")]
    NotChainMap(String),
    #[error("malformed matrix for {0}: rows must have equal length and entries must be 0 or 1")]
    Malformed(String),
    #[error("homotopy search space of 2^{0} candidates is too large")]
    SearchTooLarge(usize),
}

fn check_shape(what: &str, m: &BitMatrix, rows: usize, cols: usize) -> Result<(), HomalgError> {
    if m.rows() != rows || m.cols() != cols {
        return Err(HomalgError::Dimension {
            what: what.to_string(),
            rows,
            cols,
            got_rows: m.rows(),
            got_cols: m.cols(),
        });
    }
    Ok(())
}

/// A finite-dimensional F₂ vector space with a differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexF2 {
    d: BitMatrix,
}

impl ChainComplexF2 {
    pub fn new(d: BitMatrix) -> Result<Self, HomalgError> {
        if d.rows() != d.cols() {
            return Err(HomalgError::NotSquare { rows: d.rows(), cols: d.cols() });
        }
        if !d.mul(&d).is_zero() {
            return Err(HomalgError::NotDifferential);
        }
        Ok(Self { d })
    }

    pub fn zero(dim: usize) -> Self {
        Self { d: BitMatrix::zeros(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.d.rows()
    }

    pub fn differential(&self) -> &BitMatrix {
        &self.d
    }

    /// Conjugates the differential by a change of basis `p`.
    fn conjugated(&self, p: &BitMatrix, p_inv: &BitMatrix) -> Self {
        Self { d: p.mul(&self.d).mul(p_inv) }
    }
}

/// dim − 2·rank(∂).
pub fn homology_rank(c: &ChainComplexF2) -> usize {
    c.dim() - 2 * c.d.rank()
}

/// A chosen basis of homology: cycle representatives independent modulo
/// boundaries, in pivot order of the row reduction.
#[derive(Clone, Debug)]
pub struct Homology {
    representatives: Vec<BitVector>,
    reducer: Echelon,
}

impl Homology {
    pub fn of(c: &ChainComplexF2) -> Self {
        let dim = c.dim();
        let cycles = c.d.kernel();
        let boundaries = c.d.column_space();
        let mut quotient = Echelon::new(dim, 0);
        for b in &boundaries {
            quotient.insert(b.clone(), BitVector::zeros(0));
        }
        let representatives: Vec<BitVector> =
            cycles.into_iter().filter(|z| quotient.insert(z.clone(), BitVector::zeros(0))).collect();
        let h = representatives.len();
        let mut reducer = Echelon::new(dim, h);
        for b in boundaries {
            reducer.insert(b, BitVector::zeros(h));
        }
        for (j, z) in representatives.iter().enumerate() {
            reducer.insert(z.clone(), BitVector::unit(h, j));
        }
        Self { representatives, reducer }
    }

    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[BitVector] {
        &self.representatives
    }

    /// Coordinates of the class of a cycle. Returns `None` if `z` is not a cycle
    /// (it then has a residual outside cycles).
    pub fn coordinates(&self, z: &BitVector) -> Option<BitVector> {
        let (residual, tag) = self.reducer.reduce(z);
        residual.is_zero().then_some(tag)
    }
}

/// Matrix of the map induced on homology, in the bases of [`Homology::of`].
pub fn induced_matrix(source: &Homology, target: &Homology, f: &BitMatrix) -> BitMatrix {
    let cols: Vec<BitVector> = source
        .representatives
        .iter()
        .map(|z| target.coordinates(&f.apply(z)).expect("chain maps send cycles to cycles"))
        .collect();
    BitMatrix::from_columns(target.rank(), &cols)
}

/// A chain map between two complexes.
#[derive(Clone, Debug)]
pub struct ChainMapF2 {
    pub source: ChainComplexF2,
    pub target: ChainComplexF2,
    m: BitMatrix,
}

impl ChainMapF2 {
    pub fn new(source: ChainComplexF2, target: ChainComplexF2, m: BitMatrix) -> Result<Self, HomalgError> {
        check_shape("chain map", &m, target.dim(), source.dim())?;
        if m.mul(&source.d) != target.d.mul(&m) {
            return Err(HomalgError::NotChainMap("map".into()));
        }
        Ok(Self { source, target, m })
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.m
    }
}

/// The map induced on homology by a chain map.
pub fn induced_map(f: &ChainMapF2) -> BitMatrix {
    induced_matrix(&Homology::of(&f.source), &Homology::of(&f.target), &f.m)
}

/// A linear map between complexes with no compatibility condition.
#[derive(Clone, Debug)]
pub struct HomotopyF2 {
    pub source: ChainComplexF2,
    pub target: ChainComplexF2,
    h: BitMatrix,
}

impl HomotopyF2 {
    pub fn new(source: ChainComplexF2, target: ChainComplexF2, h: BitMatrix) -> Result<Self, HomalgError> {
        check_shape("homotopy", &h, target.dim(), source.dim())?;
        Ok(Self { source, target, h })
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.h
    }
}

/// Three complexes and chain maps `f_k: C_k → C_{k+1}`.
#[derive(Clone, Debug)]
pub struct Triangle {
    complexes: [ChainComplexF2; 3],
    maps: [BitMatrix; 3],
}

impl Triangle {
    pub fn new(complexes: [ChainComplexF2; 3], maps: [BitMatrix; 3]) -> Result<Self, HomalgError> {
        for k in 0..3 {
            let (s, t) = (&complexes[k], &complexes[(k + 1) % 3]);
            check_shape(&format!("f{k}"), &maps[k], t.dim(), s.dim())?;
            if maps[k].mul(&s.d) != t.d.mul(&maps[k]) {
                return Err(HomalgError::NotChainMap(format!("f{k}")));
            }
        }
        Ok(Self { complexes, maps })
    }

    pub fn from_chain_maps(maps: [ChainMapF2; 3]) -> Result<Self, HomalgError> {
        for k in 0..3 {
            if maps[k].target != maps[(k + 1) % 3].source {
                return Err(HomalgError::NotChainMap(format!("f{k} (target does not match next source)")));
            }
        }
        let complexes = [maps[0].source.clone(), maps[1].source.clone(), maps[2].source.clone()];
        Self::new(complexes, maps.map(|f| f.m))
    }

    pub fn complexes(&self) -> &[ChainComplexF2; 3] {
        &self.complexes
    }

    pub fn maps(&self) -> &[BitMatrix; 3] {
        &self.maps
    }

    fn dim(&self, k: usize) -> usize {
        self.complexes[k % 3].dim()
    }

    /// Checks the two hypotheses of the lemma for homotopies `H_k: C_k → C_{k+2}`.
    pub fn check_hypotheses(&self, homotopies: &[BitMatrix; 3]) -> Result<HypothesisReport, HomalgError> {
        for (k, h) in homotopies.iter().enumerate() {
            check_shape(&format!("H{k}"), h, self.dim(k + 2), self.dim(k))?;
        }
        let mut report = HypothesisReport::default();
        for k in 0..3 {
            let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
            let h = &homotopies[k];
            let lhs = self.complexes[k2].d.mul(h).add(&h.mul(&self.complexes[k].d));
            let rhs = self.maps[k1].mul(&self.maps[k]);
            report.null_homotopy[k] = lhs == rhs;
            let psi = self.maps[k2].mul(h).add(&homotopies[k1].mul(&self.maps[k]));
            let c = &self.complexes[k];
            let is_chain_map = psi.mul(&c.d) == c.d.mul(&psi);
            report.psi_chain_map[k] = is_chain_map;
            report.psi_quasi_iso[k] = is_chain_map && {
                let hom = Homology::of(c);
                induced_matrix(&hom, &hom, &psi).rank() == hom.rank()
            };
        }
        Ok(report)
    }

    /// Exactness of the induced triangle on homology.
    pub fn check_exactness(&self) -> ExactnessReport {
        let homs: Vec<Homology> = self.complexes.iter().map(Homology::of).collect();
        let induced: Vec<BitMatrix> =
            (0..3).map(|k| induced_matrix(&homs[k], &homs[(k + 1) % 3], &self.maps[k])).collect();
        let mut report = ExactnessReport::default();
        for k in 0..3 {
            report.homology_ranks[k] = homs[k].rank();
            report.induced_ranks[k] = induced[k].rank();
        }
        for k in 0..3 {
            // at node k: incoming F_{k-1}, outgoing F_k
            let prev = (k + 2) % 3;
            report.composite_zero[k] = induced[k].mul(&induced[prev]).is_zero();
            report.exact_at[k] = report.composite_zero[k]
                && report.induced_ranks[prev] + report.induced_ranks[k] == report.homology_ranks[k];
        }
        report
    }

    /// Applies independent changes of basis to the three complexes.
    pub fn change_basis(&self, bases: &[BitMatrix; 3]) -> Option<Triangle> {
        let inverses: Vec<BitMatrix> = bases.iter().map(BitMatrix::inverse).collect::<Option<_>>()?;
        let complexes = [0, 1, 2].map(|k| self.complexes[k].conjugated(&bases[k], &inverses[k]));
        let maps = [0, 1, 2].map(|k| bases[(k + 1) % 3].mul(&self.maps[k]).mul(&inverses[k]));
        Some(Triangle { complexes, maps })
    }

    /// Every homotopy triple satisfying both hypotheses, by exhaustive search.
    /// Refuses search spaces above 2^`max_bits`.
    pub fn find_homotopies(&self, max_bits: usize) -> Result<Vec<[BitMatrix; 3]>, HomalgError> {
        let shapes: Vec<(usize, usize)> = (0..3).map(|k| (self.dim(k + 2), self.dim(k))).collect();
        let bits: usize = shapes.iter().map(|(r, c)| r * c).sum();
        if bits > max_bits {
            return Err(HomalgError::SearchTooLarge(bits));
        }
        let mut found = Vec::new();
        for code in 0u64..1 << bits {
            let mut offset = 0;
            let hs = [0, 1, 2].map(|k| {
                let (r, c) = shapes[k];
                let mut m = BitMatrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        if code >> (offset + i * c + j) & 1 == 1 {
                            m.set(i, j, true);
                        }
                    }
                }
                offset += r * c;
                m
            });
            if self.check_hypotheses(&hs)?.passed() {
                found.push(hs);
            }
        }
        Ok(found)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    /// `∂H_k + H_k∂ = f_{k+1}f_k`.
    pub null_homotopy: [bool; 3],
    pub psi_chain_map: [bool; 3],
    pub psi_quasi_iso: [bool; 3],
}

impl HypothesisReport {
    pub fn condition_one(&self) -> bool {
        self.null_homotopy.iter().all(|&b| b)
    }

    pub fn condition_two(&self) -> bool {
        self.psi_quasi_iso.iter().all(|&b| b)
    }

    pub fn passed(&self) -> bool {
        self.condition_one() && self.condition_two()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub homology_ranks: [usize; 3],
    pub induced_ranks: [usize; 3],
    pub composite_zero: [bool; 3],
    pub exact_at: [bool; 3],
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.exact_at.iter().all(|&b| b)
    }
}

/// The two-dimensional example: bases (M,N), (P,Q), (R,S) with zero
/// differentials and
/// f₀(M)=Q, f₀(N)=Q; f₁(P)=R+S, f₁(Q)=0; f₂(R)=M+N, f₂(S)=M+N.
pub fn two_dimensional_example() -> Triangle {
    let m = |rows: [[u8; 2]; 2]| BitMatrix::from_rows(&rows.map(|r| r.to_vec()), 2).expect("2x2 literal");
    let f0 = m([[0, 0], [1, 1]]);
    let f1 = m([[1, 0], [1, 0]]);
    let f2 = m([[1, 1], [1, 1]]);
    Triangle::new([ChainComplexF2::zero(2), ChainComplexF2::zero(2), ChainComplexF2::zero(2)], [f0, f1, f2])
        .expect("example maps are chain maps")
}

/// A random complex of dimension `dim`: a direct sum of acyclic pairs and
/// homology generators, disguised by a random change of basis.
pub fn random_complex<R: Rng>(rng: &mut R, dim: usize) -> ChainComplexF2 {
    let pairs = rng.gen_range(0..=dim / 2);
    let mut d = BitMatrix::zeros(dim, dim);
    for i in 0..pairs {
        d.set(2 * i + 1, 2 * i, true);
    }
    let p = random_invertible(rng, dim);
    let p_inv = p.inverse().expect("invertible by construction");
    ChainComplexF2 { d: p.mul(&d).mul(&p_inv) }
}

pub fn random_invertible<R: Rng>(rng: &mut R, dim: usize) -> BitMatrix {
    loop {
        let m = random_matrix(rng, dim, dim);
        if m.rank() == dim {
            return m;
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(0.5) {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// A uniformly random chain map, drawn from the solution space of
/// `f ∂_A = ∂_B f`.
pub fn random_chain_map<R: Rng>(rng: &mut R, a: &ChainComplexF2, b: &ChainComplexF2) -> BitMatrix {
    let (n, m) = (a.dim(), b.dim());
    // column (i*n + j) holds the image of the elementary matrix E_ij
    let mut system = BitMatrix::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            let mut e = BitMatrix::zeros(m, n);
            e.set(i, j, true);
            let r = e.mul(&a.d).add(&b.d.mul(&e));
            for x in 0..m {
                for y in 0..n {
                    if r.get(x, y) {
                        system.set(x * n + y, i * n + j, true);
                    }
                }
            }
        }
    }
    let mut f = BitMatrix::zeros(m, n);
    for v in system.kernel() {
        if rng.gen_bool(0.5) {
            for idx in v.ones() {
                f.flip(idx / n, idx % n);
            }
        }
    }
    f
}

/// A triangle satisfying both hypotheses, built from the mapping cone of a
/// random chain map `f: A → B`:
/// `A →f B →ι Cone(f) →π A` with `Cone(f) = A ⊕ B`, `∂ = [[∂_A, 0], [f, ∂_B]]`.
/// The returned homotopies are `H₀(a) = (a, 0)`, `H₁ = 0`, `H₂(a, b) = b`.
/// Bases are scrambled before returning.
pub fn random_cone_triangle<R: Rng>(rng: &mut R, max_dim: usize) -> (Triangle, [BitMatrix; 3]) {
    let (na, nb) = (rng.gen_range(0..=max_dim), rng.gen_range(0..=max_dim));
    let a = random_complex(rng, na);
    let b = random_complex(rng, nb);
    let f = random_chain_map(rng, &a, &b);
    let nc = na + nb;
    let mut dc = BitMatrix::zeros(nc, nc);
    for i in 0..na {
        for j in 0..na {
            dc.set(i, j, a.d.get(i, j));
        }
        for j in 0..nb {
            // rows of B sit below A
            dc.set(na + j, i, f.get(j, i));
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            dc.set(na + i, na + j, b.d.get(i, j));
        }
    }
    let cone = ChainComplexF2::new(dc).expect("cone differential squares to zero");
    let mut incl = BitMatrix::zeros(nc, nb);
    let mut proj = BitMatrix::zeros(na, nc);
    let mut h0 = BitMatrix::zeros(nc, na);
    let mut h2 = BitMatrix::zeros(nb, nc);
    for j in 0..nb {
        incl.set(na + j, j, true);
        h2.set(j, na + j, true);
    }
    for i in 0..na {
        proj.set(i, i, true);
        h0.set(i, i, true);
    }
    let h1 = BitMatrix::zeros(na, nb);
    let triangle = Triangle::new([a, b, cone], [f, incl, proj]).expect("cone maps are chain maps");
    let bases = [random_invertible(rng, na), random_invertible(rng, nb), random_invertible(rng, nc)];
    let inverses = bases.clone().map(|p| p.inverse().expect("invertible"));
    let scrambled = triangle.change_basis(&bases).expect("invertible bases");
    let homotopies =
        [bases[2].mul(&h0).mul(&inverses[0]), bases[0].mul(&h1).mul(&inverses[1]), bases[1].mul(&h2).mul(&inverses[2])];
    (scrambled, homotopies)
}

/// A random triple of complexes with random chain maps and arbitrary
/// homotopies; the hypotheses usually fail.
pub fn random_unconstrained_triangle<R: Rng>(rng: &mut R, max_dim: usize) -> (Triangle, [BitMatrix; 3]) {
    let cs: Vec<ChainComplexF2> = (0..3)
        .map(|_| {
            let dim = rng.gen_range(1..=max_dim);
            random_complex(rng, dim)
        })
        .collect();
    let maps = [0, 1, 2].map(|k| random_chain_map(rng, &cs[k], &cs[(k + 1) % 3]));
    let hs = [0, 1, 2].map(|k| random_matrix(rng, cs[(k + 2) % 3].dim(), cs[k].dim()));
    let triangle = Triangle::new([cs[0].clone(), cs[1].clone(), cs[2].clone()], maps).expect("random chain maps");
    (triangle, hs)
}

/// On-disk form: `{"complexes": [{"dim": n, "d": [[...]]}, ...], "maps": [...],
/// "homotopies": [...]}`. Matrices are lists of rows of 0/1 entries, acting on
/// column vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangleFile {
    pub complexes: [ComplexFile; 3],
    pub maps: [Vec<Vec<u8>>; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homotopies: Option<[Vec<Vec<u8>>; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub dim: usize,
    pub d: Vec<Vec<u8>>,
}

fn matrix_from_file(what: &str, rows: &[Vec<u8>], n_rows: usize, n_cols: usize) -> Result<BitMatrix, HomalgError> {
    // an all-empty row list stands for a zero matrix with zero columns
    if rows.len() != n_rows {
        return Err(HomalgError::Dimension {
            what: what.into(),
            rows: n_rows,
            cols: n_cols,
            got_rows: rows.len(),
            got_cols: rows.first().map_or(0, Vec::len),
        });
    }
    BitMatrix::from_rows(rows, n_cols).ok_or_else(|| HomalgError::Malformed(what.into()))
}

impl TriangleFile {
    pub fn load(&self) -> Result<(Triangle, Option<[BitMatrix; 3]>), HomalgError> {
        let dims = [0, 1, 2].map(|k| self.complexes[k].dim);
        let complexes: Vec<ChainComplexF2> = (0..3)
            .map(|k| {
                let d = matrix_from_file(&format!("d{k}"), &self.complexes[k].d, dims[k], dims[k])?;
                ChainComplexF2::new(d)
            })
            .collect::<Result<_, _>>()?;
        let maps: Vec<BitMatrix> = (0..3)
            .map(|k| matrix_from_file(&format!("f{k}"), &self.maps[k], dims[(k + 1) % 3], dims[k]))
            .collect::<Result<_, _>>()?;
        let triangle = Triangle::new(
            [complexes[0].clone(), complexes[1].clone(), complexes[2].clone()],
            [maps[0].clone(), maps[1].clone(), maps[2].clone()],
        )?;
        let homotopies = match &self.homotopies {
            None => None,
            Some(hs) => {
                let v: Vec<BitMatrix> = (0..3)
                    .map(|k| matrix_from_file(&format!("H{k}"), &hs[k], dims[(k + 2) % 3], dims[k]))
                    .collect::<Result<_, _>>()?;
                Some([v[0].clone(), v[1].clone(), v[2].clone()])
            }
        };
        Ok((triangle, homotopies))
    }

    pub fn from_triangle(t: &Triangle, homotopies: Option<&[BitMatrix; 3]>) -> Self {
        TriangleFile {
            complexes: [0, 1, 2].map(|k| ComplexFile { dim: t.complexes[k].dim(), d: t.complexes[k].d.to_rows() }),
            maps: [0, 1, 2].map(|k| t.maps[k].to_rows()),
            homotopies: homotopies.map(|hs| [0, 1, 2].map(|k| hs[k].to_rows())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rows(m: &[&[u8]]) -> BitMatrix {
        let cols = m.first().map_or(0, |r| r.len());
        BitMatrix::from_rows(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), cols).unwrap()
    }

    /// Kernel and image dimensions by enumerating all 2^n vectors.
    fn brute_force_homology(d: &BitMatrix) -> usize {
        let n = d.cols();
        let vectors: Vec<BitVector> = (0u32..1 << n)
            .map(|c| BitVector::from_bits(&(0..n).map(|i| (c >> i & 1) as u8).collect::<Vec<_>>()))
            .collect();
        let kernel = vectors.iter().filter(|v| d.apply(v).is_zero()).count();
        let mut image: Vec<Vec<u8>> = vectors.iter().map(|v| d.apply(v).to_bits()).collect();
        image.sort();
        image.dedup();
        (kernel.trailing_zeros() - (image.len() as u32).trailing_zeros()) as usize
    }

    #[test]
    fn homology_of_small_complexes() {
        assert_eq!(homology_rank(&ChainComplexF2::zero(2)), 2);
        let acyclic = ChainComplexF2::new(rows(&[&[0, 0], &[1, 0]])).unwrap();
        assert_eq!(homology_rank(&acyclic), 0);
        assert_eq!(ChainComplexF2::new(rows(&[&[1, 0], &[0, 0]])).unwrap_err(), HomalgError::NotDifferential);
    }

    #[test]
    fn homology_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let c = random_complex(&mut rng, 6);
            assert_eq!(homology_rank(&c), brute_force_homology(c.differential()));
            assert_eq!(Homology::of(&c).rank(), homology_rank(&c));
        }
    }

    #[test]
    fn induced_identity_and_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = random_complex(&mut rng, 5);
        let h = homology_rank(&c);
        let id = ChainMapF2::new(c.clone(), c.clone(), BitMatrix::identity(5)).unwrap();
        assert_eq!(induced_map(&id), BitMatrix::identity(h));
        let zero = ChainMapF2::new(c.clone(), c.clone(), BitMatrix::zeros(5, 5)).unwrap();
        assert!(induced_map(&zero).is_zero());
    }

    #[test]
    fn induced_map_ignores_representative_choice() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_complex(&mut rng, 5);
            let b = random_complex(&mut rng, 5);
            let f = random_chain_map(&mut rng, &a, &b);
            let (ha, hb) = (Homology::of(&a), Homology::of(&b));
            let base = induced_matrix(&ha, &hb, &f);
            for (j, z) in ha.representatives().iter().enumerate() {
                let w = random_matrix(&mut rng, 5, 1).column(0);
                let mut shifted = z.clone();
                shifted.xor_assign(&a.differential().apply(&w));
                assert_eq!(hb.coordinates(&f.apply(&shifted)).unwrap(), base.column(j));
            }
        }
    }

    #[test]
    fn non_chain_map_rejected() {
        let acyclic = ChainComplexF2::new(rows(&[&[0, 0], &[1, 0]])).unwrap();
        let err = ChainMapF2::new(acyclic.clone(), ChainComplexF2::zero(2), rows(&[&[0, 1], &[0, 0]])).unwrap_err();
        assert!(matches!(err, HomalgError::NotChainMap(_)));
    }

    #[test]
    fn example_is_exact_with_rank_one_maps() {
        let t = two_dimensional_example();
        let r = t.check_exactness();
        assert_eq!(r.homology_ranks, [2, 2, 2]);
        assert_eq!(r.induced_ranks, [1, 1, 1]);
        assert!(r.exact());
        let f0 = ChainMapF2::new(ChainComplexF2::zero(2), ChainComplexF2::zero(2), t.maps()[0].clone()).unwrap();
        assert_eq!(induced_map(&f0).rank(), 1);
    }

    #[test]
    fn example_with_zero_homotopies() {
        let t = two_dimensional_example();
        let zero = [0, 1, 2].map(|_| BitMatrix::zeros(2, 2));
        let r = t.check_hypotheses(&zero).unwrap();
        assert!(r.condition_one());
        // psi vanishes, so it cannot be an isomorphism on two-dimensional homology
        assert!(!r.condition_two());
    }

    #[test]
    fn example_admits_witnessing_homotopies() {
        let t = two_dimensional_example();
        let found = t.find_homotopies(12).unwrap();
        assert_eq!(found.len(), 512);
        assert!(t.check_hypotheses(&found[0]).unwrap().passed());
    }

    #[test]
    fn mutated_example_fails() {
        let t = two_dimensional_example();
        let mut maps = t.maps().clone();
        maps[1] = BitMatrix::zeros(2, 2);
        let broken = Triangle::new(t.complexes().clone(), maps).unwrap();
        assert!(!broken.check_exactness().exact());
        assert!(broken.find_homotopies(12).unwrap().is_empty());
    }

    #[test]
    fn zero_maps_not_exact() {
        let zero = [0, 1, 2].map(|_| BitMatrix::zeros(2, 2));
        let c = ChainComplexF2::zero(2);
        let t = Triangle::new([c.clone(), c.clone(), c], zero).unwrap();
        assert!(!t.check_exactness().exact());
    }

    #[test]
    fn empty_triangle_vacuous() {
        let c = ChainComplexF2::zero(0);
        let z = BitMatrix::zeros(0, 0);
        let t = Triangle::new([c.clone(), c.clone(), c], [z.clone(), z.clone(), z.clone()]).unwrap();
        assert!(t.check_hypotheses(&[z.clone(), z.clone(), z]).unwrap().passed());
        assert!(t.check_exactness().exact());
    }

    #[test]
    fn cone_triangles_satisfy_hypotheses() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..25 {
            let (t, hs) = random_cone_triangle(&mut rng, 4);
            assert!(t.check_hypotheses(&hs).unwrap().passed());
            assert!(t.check_exactness().exact());
        }
    }

    #[test]
    fn dimension_mismatch_reported() {
        let t = two_dimensional_example();
        let bad = [BitMatrix::zeros(2, 2), BitMatrix::zeros(3, 2), BitMatrix::zeros(2, 2)];
        assert!(matches!(t.check_hypotheses(&bad), Err(HomalgError::Dimension { .. })));
    }

    #[test]
    fn file_round_trip() {
        let t = two_dimensional_example();
        let file = TriangleFile::from_triangle(&t, None);
        let text = serde_json::to_string(&file).unwrap();
        let back: TriangleFile = serde_json::from_str(&text).unwrap();
        let (t2, hs) = back.load().unwrap();
        assert!(hs.is_none());
        assert_eq!(t2.maps(), t.maps());
    }
}
