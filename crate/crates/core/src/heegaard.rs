//! Special Heegaard diagrams built from a connected link projection.
//!
//! The surface is the boundary of a regular neighborhood of the projection,
//! cut into one four-holed sphere per crossing and one cylinder for the
//! distinguished edge `e` and for each marked edge `s_i`. Alpha curves follow
//! the bounded regions and encircle the ladybug punctures; beta curves sit at
//! the crossings, at `e` (a meridian) and at each ladybug.
//!
//! Everything here is combinatorial: pieces, gluings and curve supports are
//! incidence records, not embedded geometry.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{CrossingRef, DiagramError, EdgeLabel, PlanarDiagram, ResolutionChoice};
use crate::util::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeegaardError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("diagram has free loops")]
    FreeLoops,
    #[error("edge {0} does not occur in the diagram")]
    NoSuchEdge(EdgeLabel),
    #[error("distinguished edge {0} does not border the unbounded region")]
    NotOnUnboundedRegion(EdgeLabel),
    #[error("component {0} contains neither the distinguished edge nor a marked edge")]
    Coverage(usize),
    #[error("{k} ladybugs for {l} components; need k >= l - 1")]
    TooFewLadybugs { k: usize, l: usize },
    #[error("crossing {0} out of range")]
    CrossingOutOfRange(usize),
    #[error("crossing {0} has no beta curve to replace")]
    NoCrossingBeta(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    /// Sphere with four holes, one per tuple slot of the crossing.
    Crossing,
    /// Cylinder carrying the meridian of the distinguished edge.
    DistinguishedCylinder,
    /// Cylinder carrying a ladybug.
    LadybugCylinder,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub kind: PieceKind,
    /// Crossing index for crossing pieces, edge label for cylinders.
    pub site: u32,
    /// Link component through the piece (cylinders only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub euler_characteristic: i64,
    pub boundaries: usize,
}

/// A boundary circle: piece index and boundary slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoundaryRef {
    pub piece: usize,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub edge: EdgeLabel,
    pub ends: [BoundaryRef; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CurveKind {
    /// Alpha following a bounded region (face index of the diagram).
    Region {
        face: usize,
    },
    LadybugAlpha {
        ladybug: usize,
    },
    CrossingBeta {
        crossing: usize,
    },
    Meridian,
    LadybugBeta {
        ladybug: usize,
    },
    /// Replacement for the beta of a crossing, giving the Zero resolution.
    Gamma {
        crossing: usize,
    },
    /// Replacement for the beta of a crossing, giving the One resolution.
    Delta {
        crossing: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub kind: CurveKind,
    /// Pieces the curve passes through.
    pub support: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Gamma,
    Delta,
}

impl Variant {
    pub fn resolution(self) -> ResolutionChoice {
        match self {
            Variant::Gamma => ResolutionChoice::Zero,
            Variant::Delta => ResolutionChoice::One,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReplacement {
    pub crossing: CrossingRef,
    pub variant: Variant,
}

/// Intersections among the crossing's beta and its two replacements inside
/// the crossing piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triad {
    pub crossing: usize,
    pub beta_gamma: Vec<String>,
    pub gamma_delta: Vec<String>,
    pub delta_beta: Vec<String>,
}

impl Triad {
    fn at(crossing: usize) -> Self {
        let pair = |a: &str, b: &str| vec![a.to_string(), b.to_string()];
        Triad { crossing, beta_gamma: pair("A", "U"), gamma_delta: pair("B", "V"), delta_beta: pair("C", "W") }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialHeegaardDiagram {
    pub genus: usize,
    pub crossings: usize,
    pub components: usize,
    pub distinguished_edge: EdgeLabel,
    pub marked_edges: Vec<EdgeLabel>,
    pub k: usize,
    pub pieces: Vec<Piece>,
    pub gluings: Vec<Gluing>,
    pub alpha_curves: Vec<Curve>,
    pub beta_curves: Vec<Curve>,
    pub punctures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replacement: Option<CurveReplacement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triad: Option<Triad>,
}

/// Lowest edge label bordering the unbounded region.
pub fn default_distinguished_edge(pd: &PlanarDiagram) -> Result<EdgeLabel, HeegaardError> {
    let faces = pd.faces()?;
    pd.edges()
        .into_iter()
        .find(|&e| pd.faces_beside(&faces, e).is_some_and(|f| f.contains(&faces.unbounded)))
        .ok_or(HeegaardError::Diagram(DiagramError::NoCrossings))
}

/// The minimal marking: the lowest edge of every component not containing `e`.
pub fn default_marked_edges(pd: &PlanarDiagram, e: EdgeLabel) -> Vec<EdgeLabel> {
    let comp = pd.edge_components();
    let covered = comp.get(&e).copied();
    let mut lowest: BTreeMap<usize, EdgeLabel> = BTreeMap::new();
    for (&edge, &c) in &comp {
        if Some(c) != covered {
            lowest.entry(c).or_insert(edge);
        }
    }
    lowest.into_values().collect()
}

/// Builds the diagram with the default edge and minimal marking.
pub fn build_default(pd: &PlanarDiagram) -> Result<SpecialHeegaardDiagram, HeegaardError> {
    let e = default_distinguished_edge(pd)?;
    build(pd, &default_marked_edges(pd, e), e)
}

pub fn build(
    pd: &PlanarDiagram,
    marked_edges: &[EdgeLabel],
    e: EdgeLabel,
) -> Result<SpecialHeegaardDiagram, HeegaardError> {
    if pd.free_loops() > 0 {
        return Err(HeegaardError::FreeLoops);
    }
    let faces = pd.faces()?;
    let beside = |edge: EdgeLabel| pd.faces_beside(&faces, edge).ok_or(HeegaardError::NoSuchEdge(edge));
    if !beside(e)?.contains(&faces.unbounded) {
        return Err(HeegaardError::NotOnUnboundedRegion(e));
    }
    for &s in marked_edges {
        beside(s)?;
    }
    let comp = pd.edge_components();
    let l = pd.components();
    let covered: BTreeSet<usize> = marked_edges.iter().chain([&e]).map(|x| comp[x]).collect();
    if let Some(missing) = (0..l).find(|c| !covered.contains(c)) {
        return Err(HeegaardError::Coverage(missing));
    }
    let k = marked_edges.len();
    if k + 1 < l {
        return Err(HeegaardError::TooFewLadybugs { k, l });
    }
    let c = pd.crossing_count();

    let mut pieces: Vec<Piece> = (0..c)
        .map(|v| Piece {
            kind: PieceKind::Crossing,
            site: v as u32,
            component: None,
            euler_characteristic: -2,
            boundaries: 4,
        })
        .collect();
    // cylinders in order along each edge: the meridian first, then ladybugs
    let mut on_edge: BTreeMap<EdgeLabel, Vec<usize>> = BTreeMap::new();
    let mut cylinder = |pieces: &mut Vec<Piece>, kind, edge: EdgeLabel| {
        pieces.push(Piece { kind, site: edge, component: Some(comp[&edge]), euler_characteristic: 0, boundaries: 2 });
        on_edge.entry(edge).or_default().push(pieces.len() - 1);
        pieces.len() - 1
    };
    let meridian_piece = cylinder(&mut pieces, PieceKind::DistinguishedCylinder, e);
    let ladybug_pieces: Vec<usize> =
        marked_edges.iter().map(|&s| cylinder(&mut pieces, PieceKind::LadybugCylinder, s)).collect();

    let mut gluings = Vec::new();
    for edge in pd.edges() {
        let [a, b] = pd.edge_ends(edge).expect("listed edge");
        let mut chain = vec![BoundaryRef { piece: a.crossing, slot: a.position }];
        for &p in on_edge.get(&edge).map(Vec::as_slice).unwrap_or(&[]) {
            chain.push(BoundaryRef { piece: p, slot: 0 });
            chain.push(BoundaryRef { piece: p, slot: 1 });
        }
        chain.push(BoundaryRef { piece: b.crossing, slot: b.position });
        for pair in chain.chunks(2) {
            gluings.push(Gluing { edge, ends: [pair[0], pair[1]] });
        }
    }

    let mut alpha_curves = Vec::new();
    for (f, face) in faces.faces.iter().enumerate() {
        if f == faces.unbounded {
            continue;
        }
        let mut support: BTreeSet<usize> = face.corners.iter().map(|corner| corner.crossing).collect();
        for corner in &face.corners {
            let t = pd.crossings()[corner.crossing];
            for edge in [t[corner.position], t[(corner.position + 1) % 4]] {
                support.extend(on_edge.get(&edge).into_iter().flatten());
            }
        }
        alpha_curves.push(Curve {
            name: format!("alpha_{}", alpha_curves.len() + 1),
            kind: CurveKind::Region { face: f },
            support: support.into_iter().collect(),
        });
    }
    let mut beta_curves: Vec<Curve> = (0..c)
        .map(|v| Curve {
            name: format!("beta_{}", v + 1),
            kind: CurveKind::CrossingBeta { crossing: v },
            support: vec![v],
        })
        .collect();
    beta_curves.push(Curve {
        name: format!("beta_{}", c + 1),
        kind: CurveKind::Meridian,
        support: vec![meridian_piece],
    });
    for (i, &p) in ladybug_pieces.iter().enumerate() {
        alpha_curves.push(Curve {
            name: format!("alpha_{}", alpha_curves.len() + 1),
            kind: CurveKind::LadybugAlpha { ladybug: i },
            support: vec![p],
        });
        beta_curves.push(Curve {
            name: format!("beta_{}", beta_curves.len() + 1),
            kind: CurveKind::LadybugBeta { ladybug: i },
            support: vec![p],
        });
    }

    Ok(SpecialHeegaardDiagram {
        genus: c + 1,
        crossings: c,
        components: l,
        distinguished_edge: e,
        marked_edges: marked_edges.to_vec(),
        k,
        pieces,
        gluings,
        alpha_curves,
        beta_curves,
        punctures: 2 * k + 2,
        replacement: None,
        triad: None,
    })
}

/// Swaps the beta of one crossing for the curve giving a resolution there.
pub fn replace_for_resolution(
    d: &SpecialHeegaardDiagram,
    r: CurveReplacement,
) -> Result<SpecialHeegaardDiagram, HeegaardError> {
    let v = r.crossing.0;
    if v >= d.crossings {
        return Err(HeegaardError::CrossingOutOfRange(v));
    }
    let mut out = d.clone();
    let slot = out
        .beta_curves
        .iter()
        .position(|b| b.kind == CurveKind::CrossingBeta { crossing: v })
        .ok_or(HeegaardError::NoCrossingBeta(v))?;
    let (kind, name) = match r.variant {
        Variant::Gamma => (CurveKind::Gamma { crossing: v }, "gamma"),
        Variant::Delta => (CurveKind::Delta { crossing: v }, "delta"),
    };
    out.beta_curves[slot] = Curve { name: name.to_string(), kind, support: vec![v] };
    out.replacement = Some(r);
    out.triad = Some(Triad::at(v));
    Ok(out)
}

/// Genus and curve counts, the quantities the handleslide and destabilization
/// moves act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub genus: usize,
    pub alphas: usize,
    pub betas: usize,
    pub punctures: usize,
}

impl Counts {
    pub fn of(d: &SpecialHeegaardDiagram) -> Counts {
        Counts { genus: d.genus, alphas: d.alpha_curves.len(), betas: d.beta_curves.len(), punctures: d.punctures }
    }

    /// One destabilization: handleslides leave counts alone, then a
    /// cancelling alpha/beta pair disappears with one handle.
    pub fn destabilized(self) -> Option<Counts> {
        (self.genus > 0 && self.alphas > 0 && self.betas > 0).then(|| Counts {
            genus: self.genus - 1,
            alphas: self.alphas - 1,
            betas: self.betas - 1,
            punctures: self.punctures,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(d: &SpecialHeegaardDiagram) -> ValidationReport {
    let mut v = Vec::new();
    let crossing_pieces = d.pieces.iter().filter(|p| p.kind == PieceKind::Crossing).count();
    let ladybug_cylinders = d.pieces.iter().filter(|p| p.kind == PieceKind::LadybugCylinder).count();
    let meridian_cylinders = d.pieces.iter().filter(|p| p.kind == PieceKind::DistinguishedCylinder).count();
    let count = |curves: &[Curve], f: fn(&CurveKind) -> bool| curves.iter().filter(|c| f(&c.kind)).count();
    let region_alphas = count(&d.alpha_curves, |k| matches!(k, CurveKind::Region { .. }));
    let ladybug_alphas = count(&d.alpha_curves, |k| matches!(k, CurveKind::LadybugAlpha { .. }));
    let ladybug_betas = count(&d.beta_curves, |k| matches!(k, CurveKind::LadybugBeta { .. }));
    let meridians = count(&d.beta_curves, |k| matches!(k, CurveKind::Meridian));

    if crossing_pieces != d.crossings {
        v.push(format!("crossing pieces: {crossing_pieces} for {} crossings", d.crossings));
    }
    if d.genus != d.crossings + 1 {
        v.push(format!("genus = c+1 violated: genus {} with {} crossings", d.genus, d.crossings));
    }
    if d.alpha_curves.len() != d.genus + d.k {
        v.push(format!("alpha count mismatch: {} alphas, expected g+k = {}", d.alpha_curves.len(), d.genus + d.k));
    }
    if d.beta_curves.len() != d.genus + d.k {
        v.push(format!("beta count mismatch: {} betas, expected g+k = {}", d.beta_curves.len(), d.genus + d.k));
    }
    if d.punctures != 2 * d.k + 2 {
        v.push(format!("2k+2 violated: {} punctures with k = {}", d.punctures, d.k));
    }
    if region_alphas != d.crossings + 1 {
        v.push(format!("region alpha count mismatch: {region_alphas}, expected c+1 = {}", d.crossings + 1));
    }
    if ladybug_alphas != d.k || ladybug_betas != d.k || ladybug_cylinders != d.k {
        v.push(format!(
            "ladybug count mismatch: {ladybug_alphas} alphas, {ladybug_betas} betas, {ladybug_cylinders} cylinders for k = {}",
            d.k
        ));
    }
    if meridians != 1 || meridian_cylinders != 1 {
        v.push(format!(
            "expected one meridian and one distinguished cylinder, found {meridians} and {meridian_cylinders}"
        ));
    }
    if d.k + 1 < d.components {
        v.push(format!("k >= l-1 violated: k = {}, l = {}", d.k, d.components));
    }
    if d.marked_edges.len() != d.k {
        v.push(format!("{} marked edges recorded for k = {}", d.marked_edges.len(), d.k));
    }
    for x in 0..d.crossings {
        let betas = d
            .beta_curves
            .iter()
            .filter(|b| {
                matches!(b.kind, CurveKind::CrossingBeta { crossing } | CurveKind::Gamma { crossing } | CurveKind::Delta { crossing } if crossing == x)
            })
            .count();
        if betas != 1 {
            v.push(format!("crossing {x} carries {betas} beta curves"));
        }
    }
    let mut covered = BTreeSet::new();
    for p in &d.pieces {
        if p.kind != PieceKind::Crossing {
            match p.component {
                Some(comp) => {
                    covered.insert(comp);
                }
                None => v.push("cylinder without a component".into()),
            }
        }
    }
    if let Some(missing) = (0..d.components).find(|c| !covered.contains(c)) {
        v.push(format!("coverage violated: component {missing} has no cylinder"));
    }
    for curve in d.alpha_curves.iter().chain(&d.beta_curves) {
        if curve.support.is_empty() || curve.support.iter().any(|&p| p >= d.pieces.len()) {
            v.push(format!("{} has an invalid support", curve.name));
        }
    }

    // every boundary circle glued exactly once
    let mut used: BTreeMap<BoundaryRef, usize> = BTreeMap::new();
    for g in &d.gluings {
        for b in g.ends {
            *used.entry(b).or_default() += 1;
        }
    }
    for (i, p) in d.pieces.iter().enumerate() {
        for slot in 0..p.boundaries {
            let n = used.remove(&BoundaryRef { piece: i, slot }).unwrap_or(0);
            if n != 1 {
                v.push(format!("boundary {slot} of piece {i} glued {n} times"));
            }
        }
    }
    if let Some(b) = used.keys().next() {
        v.push(format!("gluing refers to missing boundary {b:?}"));
    }
    // gluing along circles does not change the Euler characteristic
    let chi: i64 = d.pieces.iter().map(|p| p.euler_characteristic).sum();
    if chi != 2 - 2 * d.genus as i64 {
        v.push(format!("Euler characteristic {chi} != 2-2g = {}", 2 - 2 * d.genus as i64));
    }
    if !d.pieces.is_empty() {
        let mut uf = UnionFind::new(d.pieces.len());
        for g in &d.gluings {
            if g.ends.iter().all(|b| b.piece < d.pieces.len()) {
                uf.union(g.ends[0].piece, g.ends[1].piece);
            }
        }
        if uf.count() != 1 {
            v.push(format!("surface has {} connected pieces", uf.count()));
        }
    }
    if let Some(t) = &d.triad {
        for (name, pts) in
            [("beta/gamma", &t.beta_gamma), ("gamma/delta", &t.gamma_delta), ("delta/beta", &t.delta_beta)]
        {
            if pts.len() != 2 {
                v.push(format!("{name} meet in {} points, expected 2", pts.len()));
            }
        }
    }
    ValidationReport { violations: v }
}

/// A random valid marking: `e` on the unbounded region, one edge per
/// uncovered component and up to `extra` further edges (repeats allowed).
pub fn random_marking<R: Rng>(
    rng: &mut R,
    pd: &PlanarDiagram,
    extra: usize,
) -> Result<(EdgeLabel, Vec<EdgeLabel>), HeegaardError> {
    let faces = pd.faces()?;
    let edges = pd.edges();
    let outer: Vec<EdgeLabel> = edges
        .iter()
        .copied()
        .filter(|&x| pd.faces_beside(&faces, x).is_some_and(|f| f.contains(&faces.unbounded)))
        .collect();
    let e = *outer.choose(rng).expect("the unbounded region has a boundary");
    let comp = pd.edge_components();
    let mut by_component: BTreeMap<usize, Vec<EdgeLabel>> = BTreeMap::new();
    for (&x, &c) in &comp {
        by_component.entry(c).or_default().push(x);
    }
    let mut marks: Vec<EdgeLabel> = by_component
        .iter()
        .filter(|(&c, _)| c != comp[&e])
        .map(|(_, xs)| *xs.choose(rng).expect("components have edges"))
        .collect();
    for _ in 0..rng.gen_range(0..=extra) {
        marks.push(*edges.choose(rng).expect("edges"));
    }
    marks.shuffle(rng);
    Ok((e, marks))
}
