//! Planar diagrams in PD notation.
//!
//! A crossing is a 4-tuple of edge labels listed counterclockwise, starting
//! from the incoming under-strand. Positions 0 and 2 are the two ends of the
//! under-strand, positions 1 and 3 the ends of the over-strand. A tuple may be
//! rotated by two positions without changing the crossing; rotating by one
//! swaps over and under.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::util::UnionFind;

pub type EdgeLabel = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("edge label {label} occurs {count} time(s), expected exactly 2")]
    Label { label: EdgeLabel, count: usize },
    #[error("edge labels must be positive")]
    ZeroLabel,
    #[error("crossing data does not close up into a planar diagram: {0}")]
    NonPlanar(String),
    #[error("crossing index {index} out of range for a diagram with {count} crossings")]
    CrossingOutOfRange { index: usize, count: usize },
    #[error("diagram is not connected")]
    Disconnected,
    #[error("diagram has no crossings")]
    NoCrossings,
}

/// Reference to a crossing by its position in the crossing list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CrossingRef(pub usize);

/// The two smoothings of a crossing.
///
/// `Zero` joins tuple positions (0,1) and (2,3); `One` joins (0,3) and (1,2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResolutionChoice {
    Zero,
    One,
}

impl ResolutionChoice {
    pub const BOTH: [ResolutionChoice; 2] = [ResolutionChoice::Zero, ResolutionChoice::One];

    fn pairs(self) -> [(usize, usize); 2] {
        match self {
            ResolutionChoice::Zero => [(0, 1), (2, 3)],
            ResolutionChoice::One => [(0, 3), (1, 2)],
        }
    }
}

const STRAIGHT: [(usize, usize); 2] = [(0, 2), (1, 3)];

/// A corner of a face: the angle at crossing `crossing` swept counterclockwise
/// from the edge at `position` to the edge at `position + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub crossing: usize,
    pub position: usize,
}

/// A face, as the cyclic list of its corners. Each corner accounts for one
/// edge-side on the boundary of the face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub corners: Vec<Corner>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }
}

/// The faces of a connected diagram together with the designated unbounded face.
#[derive(Clone, Debug)]
pub struct FaceStructure {
    pub faces: Vec<Face>,
    pub unbounded: usize,
    corner_face: HashMap<Corner, usize>,
}

impl FaceStructure {
    pub fn face_of(&self, corner: Corner) -> usize {
        self.corner_face[&corner]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

type Occurrence = (usize, usize);

/// A link projection in PD notation, together with a count of crossing-free
/// circles.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct PlanarDiagram {
    crossings: Vec<[EdgeLabel; 4]>,
    free_loops: u32,
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    crossings: Vec<[EdgeLabel; 4]>,
    free_loops: u32,
}

impl TryFrom<RawDiagram> for PlanarDiagram {
    type Error = DiagramError;
    fn try_from(raw: RawDiagram) -> Result<Self, Self::Error> {
        PlanarDiagram::new(raw.crossings, raw.free_loops)
    }
}

impl From<PlanarDiagram> for RawDiagram {
    fn from(pd: PlanarDiagram) -> Self {
        RawDiagram { crossings: pd.crossings, free_loops: pd.free_loops }
    }
}

impl PlanarDiagram {
    /// Validates and wraps crossing data.
    pub fn new(crossings: Vec<[EdgeLabel; 4]>, free_loops: u32) -> Result<Self, DiagramError> {
        let pd = Self { crossings, free_loops };
        pd.validate()?;
        Ok(pd)
    }

    pub fn unknot() -> Self {
        Self { crossings: Vec::new(), free_loops: 1 }
    }

    pub fn unlink(components: u32) -> Self {
        Self { crossings: Vec::new(), free_loops: components }
    }

    pub fn crossings(&self) -> &[[EdgeLabel; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn crossing_refs(&self) -> impl Iterator<Item = CrossingRef> {
        (0..self.crossings.len()).map(CrossingRef)
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let mut counts: BTreeMap<EdgeLabel, usize> = BTreeMap::new();
        for t in &self.crossings {
            for &e in t {
                if e == 0 {
                    return Err(DiagramError::ZeroLabel);
                }
                *counts.entry(e).or_default() += 1;
            }
        }
        if let Some((&label, &count)) = counts.iter().find(|(_, &n)| n != 2) {
            return Err(DiagramError::Label { label, count });
        }
        // Euler characteristic V - E + F = 2 on every connected piece.
        let faces = self.trace_faces();
        let pieces = self.crossing_pieces();
        let mut per_piece = vec![(0i64, 0i64); pieces.count];
        for (v, _) in self.crossings.iter().enumerate() {
            per_piece[pieces.of[v]].0 += 1;
        }
        for f in &faces {
            per_piece[pieces.of[f.corners[0].crossing]].1 += 1;
        }
        for (v, f) in per_piece {
            if v - 2 * v + f != 2 {
                return Err(DiagramError::NonPlanar(format!(
                    "a piece with {v} crossings has {f} faces, expected {}",
                    v + 2
                )));
            }
        }
        Ok(())
    }

    fn occurrences(&self) -> BTreeMap<EdgeLabel, [Occurrence; 2]> {
        let mut occ: BTreeMap<EdgeLabel, Vec<Occurrence>> = BTreeMap::new();
        for (v, t) in self.crossings.iter().enumerate() {
            for (p, &e) in t.iter().enumerate() {
                occ.entry(e).or_default().push((v, p));
            }
        }
        occ.into_iter().map(|(e, o)| (e, [o[0], o[1]])).collect()
    }

    fn other_end(occ: &BTreeMap<EdgeLabel, [Occurrence; 2]>, label: EdgeLabel, at: Occurrence) -> Occurrence {
        let [a, b] = occ[&label];
        if a == at {
            b
        } else {
            a
        }
    }

    /// Sorted list of edge labels.
    pub fn edges(&self) -> Vec<EdgeLabel> {
        self.occurrences().into_keys().collect()
    }

    /// The two (crossing, position) slots where an edge ends.
    pub fn edge_ends(&self, label: EdgeLabel) -> Option<[Corner; 2]> {
        self.occurrences()
            .get(&label)
            .map(|&[(v, p), (w, q)]| [Corner { crossing: v, position: p }, Corner { crossing: w, position: q }])
    }

    fn trace_faces(&self) -> Vec<Face> {
        let occ = self.occurrences();
        let mut seen = vec![[false; 4]; self.crossings.len()];
        let mut faces = Vec::new();
        for v in 0..self.crossings.len() {
            for p in 0..4 {
                if seen[v][p] {
                    continue;
                }
                let mut corners = Vec::new();
                let (mut w, mut q) = (v, p);
                while !seen[w][q] {
                    seen[w][q] = true;
                    corners.push(Corner { crossing: w, position: q });
                    let leave = (q + 1) % 4;
                    (w, q) = Self::other_end(&occ, self.crossings[w][leave], (w, leave));
                }
                faces.push(Face { corners });
            }
        }
        faces
    }

    fn crossing_pieces(&self) -> Pieces {
        let n = self.crossings.len();
        let mut uf = UnionFind::new(n);
        for [(v, _), (w, _)] in self.occurrences().into_values() {
            uf.union(v, w);
        }
        let mut index = HashMap::new();
        let of = (0..n)
            .map(|v| {
                let r = uf.find(v);
                let next = index.len();
                *index.entry(r).or_insert(next)
            })
            .collect();
        Pieces { count: index.len(), of }
    }

    /// Number of link components: strand-tracing cycles plus free loops.
    pub fn components(&self) -> usize {
        self.strand_classes().1 + self.free_loops as usize
    }

    /// Assigns every edge to the index of its strand-traced component.
    /// Components are numbered by their lowest edge label.
    pub fn edge_components(&self) -> BTreeMap<EdgeLabel, usize> {
        let (classes, _) = self.strand_classes();
        let mut number = HashMap::new();
        classes
            .into_iter()
            .map(|(e, root)| {
                let next = number.len();
                (e, *number.entry(root).or_insert(next))
            })
            .collect()
    }

    fn strand_classes(&self) -> (BTreeMap<EdgeLabel, usize>, usize) {
        let labels = self.edges();
        let idx: HashMap<EdgeLabel, usize> = labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf = UnionFind::new(labels.len());
        for t in &self.crossings {
            for (a, b) in STRAIGHT {
                uf.union(idx[&t[a]], idx[&t[b]]);
            }
        }
        let classes: BTreeMap<_, _> = labels.iter().map(|&e| (e, uf.find(idx[&e]))).collect();
        let count = uf.count();
        (classes, count)
    }

    /// True when the crossing graph is connected and there are no extra
    /// free loops. A lone free loop is connected; so is the empty diagram.
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            return self.free_loops <= 1;
        }
        self.free_loops == 0 && self.crossing_pieces().count == 1
    }

    /// True when over- and under-passes alternate along every component.
    pub fn is_alternating(&self) -> bool {
        // consecutive passes along a strand are the two ends of one edge
        self.occurrences().values().all(|[(_, p), (_, q)]| p % 2 != q % 2)
    }

    /// Faces of a connected diagram with at least one crossing.
    ///
    /// The unbounded face is the one lying to the left of the lowest edge
    /// label when that edge is traversed away from an under-strand slot.
    pub fn faces(&self) -> Result<FaceStructure, DiagramError> {
        if self.crossings.is_empty() {
            return Err(DiagramError::NoCrossings);
        }
        if !self.is_connected() {
            return Err(DiagramError::Disconnected);
        }
        let faces = self.trace_faces();
        let mut corner_face = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            for &c in &f.corners {
                corner_face.insert(c, i);
            }
        }
        let occ = self.occurrences();
        let (_, ends) = occ.iter().next().expect("nonempty diagram has edges");
        let (v, p) = ends.iter().copied().find(|&(_, p)| p % 2 == 0).unwrap_or(ends[0]);
        let unbounded = corner_face[&Corner { crossing: v, position: p }];
        Ok(FaceStructure { faces, unbounded, corner_face })
    }

    /// The faces on the two sides of an edge.
    pub fn faces_beside(&self, faces: &FaceStructure, label: EdgeLabel) -> Option<[usize; 2]> {
        let [a, _] = self.edge_ends(label)?;
        let left = faces.face_of(a);
        let right = faces.face_of(Corner { crossing: a.crossing, position: (a.position + 3) % 4 });
        Some([left, right])
    }

    /// Smooths crossing `v`. The result is relabeled canonically; circles
    /// that lose all their crossings are counted as free loops.
    pub fn resolve(&self, v: CrossingRef, choice: ResolutionChoice) -> Result<PlanarDiagram, DiagramError> {
        self.check_ref(v)?;
        Ok(self.splice(&[(v.0, choice.pairs())], 0))
    }

    fn check_ref(&self, v: CrossingRef) -> Result<(), DiagramError> {
        if v.0 >= self.crossings.len() {
            return Err(DiagramError::CrossingOutOfRange { index: v.0, count: self.crossings.len() });
        }
        Ok(())
    }

    /// Removes the listed crossings, joining the given position pairs at each,
    /// then drops `discard_loops` of the resulting free loops.
    fn splice(&self, removed: &[(usize, [(usize, usize); 2])], discard_loops: u32) -> PlanarDiagram {
        let labels = self.edges();
        let idx: HashMap<EdgeLabel, usize> = labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf = UnionFind::new(labels.len());
        let mut gone = vec![false; self.crossings.len()];
        for &(v, pairs) in removed {
            gone[v] = true;
            let t = self.crossings[v];
            for (a, b) in pairs {
                uf.union(idx[&t[a]], idx[&t[b]]);
            }
        }
        let mut surviving_ends: HashMap<usize, usize> = HashMap::new();
        let mut crossings = Vec::new();
        for (v, t) in self.crossings.iter().enumerate() {
            if gone[v] {
                continue;
            }
            let mapped = t.map(|e| {
                let r = uf.find(idx[&e]);
                *surviving_ends.entry(r).or_default() += 1;
                labels[r]
            });
            crossings.push(mapped);
        }
        let mut roots: Vec<usize> = (0..labels.len()).map(|i| uf.find(i)).collect();
        roots.sort_unstable();
        roots.dedup();
        let new_circles = roots.iter().filter(|r| !surviving_ends.contains_key(r)).count() as u32;
        let free_loops = self.free_loops + new_circles - discard_loops;
        relabeled(crossings, free_loops, None)
    }

    /// Repeatedly removes Reidemeister-I kinks and Reidemeister-II bigons.
    ///
    /// Kinks are searched first, by crossing index then position; bigons are
    /// searched in face order. A diagram admitting neither move is returned
    /// unchanged.
    pub fn simplify(&self) -> PlanarDiagram {
        let mut pd = self.clone();
        loop {
            if let Some((v, p)) = pd.find_kink() {
                let pairs = [(p, (p + 1) % 4), ((p + 2) % 4, (p + 3) % 4)];
                pd = pd.splice(&[(v, pairs)], 1);
                continue;
            }
            if let Some((v, w)) = pd.find_bigon() {
                pd = pd.splice(&[(v, STRAIGHT), (w, STRAIGHT)], 0);
                continue;
            }
            return pd;
        }
    }

    /// A crossing with one edge occupying two adjacent slots.
    pub fn find_kink(&self) -> Option<(usize, usize)> {
        self.crossings.iter().enumerate().find_map(|(v, t)| (0..4).find(|&p| t[p] == t[(p + 1) % 4]).map(|p| (v, p)))
    }

    /// Two distinct crossings bounding a two-sided face across which one
    /// strand passes over both crossings.
    pub fn find_bigon(&self) -> Option<(usize, usize)> {
        self.trace_faces().iter().find_map(|f| {
            if f.len() != 2 {
                return None;
            }
            let (a, b) = (f.corners[0], f.corners[1]);
            if a.crossing == b.crossing {
                return None;
            }
            // the edge leaving corner a at slot a+1 arrives at corner b's slot
            let leave = (a.position + 1) % 4;
            (leave % 2 == b.position % 2).then_some((a.crossing, b.crossing))
        })
    }

    /// True when some crossing has one face at two opposite corners.
    pub fn has_nugatory_crossing(&self) -> bool {
        self.find_nugatory().is_some()
    }

    /// A crossing `v` and corner `p` such that corners `p` and `p + 2` of `v`
    /// lie in one face. A circle through that face meets the diagram only at
    /// `v`, so the crossing can be untwisted.
    pub fn find_nugatory(&self) -> Option<(usize, usize)> {
        let faces = self.trace_faces();
        let mut of = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            for &c in &f.corners {
                of.insert(c, i);
            }
        }
        (0..self.crossings.len()).find_map(|v| {
            let at = |p| of[&Corner { crossing: v, position: p }];
            (0..2).find(|&p| at(p) == at(p + 2)).map(|p| (v, p))
        })
    }

    /// Closure of a braid word on `strands` strands. Generator `i` (1-based)
    /// crosses strands `i` and `i+1`; its sign picks which strand is over.
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<PlanarDiagram, DiagramError> {
        let mut next: EdgeLabel = 1;
        let start: Vec<EdgeLabel> = (0..strands)
            .map(|_| {
                next += 1;
                next - 1
            })
            .collect();
        let mut current = start.clone();
        let mut crossings = Vec::new();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(DiagramError::Syntax { pos: 0, msg: format!("braid generator {g} out of range") });
            }
            let (bl, br) = (current[i - 1], current[i]);
            let (tl, tr) = (next, next + 1);
            next += 2;
            // strands run upward: bottom-left -> top-right crosses bottom-right -> top-left
            crossings.push(if g > 0 { [bl, br, tr, tl] } else { [br, tr, tl, bl] });
            current[i - 1] = tl;
            current[i] = tr;
        }
        // close: identify the top end of each strand with its bottom end
        let mut rename: HashMap<EdgeLabel, EdgeLabel> = HashMap::new();
        let mut free_loops = 0;
        for (&top, &bottom) in current.iter().zip(&start) {
            if top == bottom {
                free_loops += 1;
            } else {
                rename.insert(top, bottom);
            }
        }
        let crossings: Vec<[EdgeLabel; 4]> =
            crossings.into_iter().map(|t| t.map(|e| *rename.get(&e).unwrap_or(&e))).collect();
        PlanarDiagram::new(relabeled(crossings, free_loops, None).crossings, free_loops)
    }

    /// Lexicographically least crossing list over all strand-tracing
    /// relabelings that start the first component at some edge in some
    /// direction. Equal keys imply equal diagrams up to relabeling.
    pub fn canonical_key(&self) -> (Vec<[EdgeLabel; 4]>, u32) {
        let mut best: Option<Vec<[EdgeLabel; 4]>> = None;
        for e in self.edges() {
            for forward in [false, true] {
                let mut c = relabeled(self.crossings.clone(), 0, Some((e, forward))).crossings;
                c.sort_unstable();
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
        (best.unwrap_or_default(), self.free_loops)
    }

    /// Applies a permutation to the crossing list and a bijective relabeling
    /// of edges. Used to check invariance properties.
    pub fn permuted(&self, order: &[usize], rename: &dyn Fn(EdgeLabel) -> EdgeLabel) -> PlanarDiagram {
        let crossings = order.iter().map(|&v| self.crossings[v].map(rename)).collect();
        PlanarDiagram { crossings, free_loops: self.free_loops }
    }

    pub fn to_pd_string(&self) -> String {
        let body: Vec<String> =
            self.crossings.iter().map(|t| format!("X[{},{},{},{}]", t[0], t[1], t[2], t[3])).collect();
        let mut s = format!("PD[{}]", body.join(","));
        if self.free_loops > 0 {
            s.push_str(&format!(" U{}", self.free_loops));
        }
        s
    }
}

struct Pieces {
    count: usize,
    of: Vec<usize>,
}

/// Renumbers edges 1..2c by tracing strands. The first component starts at
/// `first` (label, toward its second end) if given, otherwise at the lowest
/// label; later components start at their lowest unvisited label. Each tuple
/// is rotated so that slot 0 is the incoming under-strand for the traced
/// orientation.
fn relabeled(crossings: Vec<[EdgeLabel; 4]>, free_loops: u32, first: Option<(EdgeLabel, bool)>) -> PlanarDiagram {
    let pd = PlanarDiagram { crossings, free_loops };
    let occ = pd.occurrences();
    let default_target = |e: EdgeLabel| -> Occurrence {
        let [a, b] = occ[&e];
        match (a.1, b.1) {
            (0, _) => a,
            (_, 0) => b,
            (2, _) => b,
            (_, 2) => a,
            _ => b,
        }
    };
    let mut new_label: HashMap<EdgeLabel, EdgeLabel> = HashMap::new();
    let mut incoming = vec![[false; 4]; pd.crossings.len()];
    let mut next = 1;
    let mut starts: Vec<(EdgeLabel, Occurrence)> = Vec::new();
    if let Some((e, forward)) = first {
        let [a, b] = occ[&e];
        starts.push((e, if forward { b } else { a }));
    }
    starts.extend(occ.keys().map(|&e| (e, default_target(e))));
    for (e, target) in starts {
        if new_label.contains_key(&e) {
            continue;
        }
        let (mut edge, mut to) = (e, target);
        while !new_label.contains_key(&edge) {
            new_label.insert(edge, next);
            next += 1;
            incoming[to.0][to.1] = true;
            let exit = (to.0, (to.1 + 2) % 4);
            edge = pd.crossings[exit.0][exit.1];
            to = PlanarDiagram::other_end(&occ, edge, exit);
        }
    }
    let crossings = pd
        .crossings
        .iter()
        .enumerate()
        .map(|(v, t)| {
            let t = t.map(|e| new_label[&e]);
            if incoming[v][0] {
                t
            } else {
                [t[2], t[3], t[0], t[1]]
            }
        })
        .collect();
    PlanarDiagram { crossings, free_loops }
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

impl FromStr for PlanarDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

/// Parses `PD[X[a,b,c,d], ...] U<k>` (the `U<k>` clause optional), or the same
/// crossings as bare `X[...]` items without the `PD[...]` wrapper.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    let mut crossings = Vec::new();
    cur.skip_ws();
    if cur.eat_str("PD") {
        cur.expect(b'[')?;
        cur.skip_ws();
        if !cur.eat(b']') {
            loop {
                crossings.push(cur.crossing()?);
                cur.skip_ws();
                if cur.eat(b']') {
                    break;
                }
                cur.expect(b',')?;
            }
        }
    } else {
        loop {
            cur.skip_ws();
            if cur.peek() != Some(b'X') {
                break;
            }
            crossings.push(cur.crossing()?);
            cur.skip_ws();
            cur.eat(b',');
        }
    }
    cur.skip_ws();
    let mut free_loops = 0;
    if cur.eat(b'U') {
        cur.skip_ws();
        free_loops = cur.number()?;
    }
    cur.skip_ws();
    if let Some(c) = cur.peek() {
        return Err(cur.error(format!("unexpected character {:?}", c as char)));
    }
    PlanarDiagram::new(crossings, free_loops)
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn error(&self, msg: String) -> DiagramError {
        DiagramError::Syntax { pos: self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, word: &str) -> bool {
        if self.s[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), DiagramError> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {:?}", c as char)))
        }
    }

    fn number(&mut self) -> Result<u32, DiagramError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number".into()));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| DiagramError::Syntax { pos: start, msg: "number out of range".into() })
    }

    fn crossing(&mut self) -> Result<[EdgeLabel; 4], DiagramError> {
        self.expect(b'X')?;
        self.expect(b'[')?;
        let mut t = [0; 4];
        for (i, slot) in t.iter_mut().enumerate() {
            if i > 0 {
                self.expect(b',')?;
            }
            *slot = self.number()?;
        }
        self.expect(b']')?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TREFOIL: &str = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";
    const HOPF: &str = "PD[X[1,3,2,4],X[3,1,4,2]]";
    const KINK: &str = "PD[X[1,2,2,1]]";
    const CLASP: &str = "PD[X[1,2,2,3],X[4,4,1,3]]";
    const FIGURE_EIGHT: &str = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]";
    const K8_19: &str =
        "PD[X[2,14,3,13],X[5,11,6,10],X[7,15,8,14],X[9,5,10,4],X[11,7,12,6],X[12,2,13,1],X[15,9,16,8],X[16,4,1,3]]";

    fn pd(s: &str) -> PlanarDiagram {
        s.parse().unwrap()
    }

    /// Independent component count: walk each strand by hand.
    fn components_by_walking(pd: &PlanarDiagram) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut count = pd.free_loops() as usize;
        for &e in &pd.edges() {
            if seen.contains(&e) {
                continue;
            }
            count += 1;
            let mut cur = e;
            let mut at = pd.edge_ends(e).unwrap()[1];
            while seen.insert(cur) {
                let exit = (at.position + 2) % 4;
                cur = pd.crossings()[at.crossing][exit];
                let ends = pd.edge_ends(cur).unwrap();
                let here = Corner { crossing: at.crossing, position: exit };
                at = if ends[0] == here { ends[1] } else { ends[0] };
            }
        }
        count
    }

    #[test]
    fn parse_empty_and_free_loops() {
        let empty = pd("PD[]");
        assert_eq!(empty.crossing_count(), 0);
        assert_eq!(empty.free_loops(), 0);
        let u = pd("PD[] U1");
        assert_eq!((u.crossing_count(), u.free_loops()), (0, 1));
        assert_eq!(u.components(), 1);
    }

    #[test]
    fn parse_trefoil_keeps_order() {
        let t = pd(TREFOIL);
        assert_eq!(t.crossings(), &[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]);
        assert_eq!(t.components(), 1);
        assert_eq!(components_by_walking(&t), 1);
    }

    #[test]
    fn parse_without_wrapper() {
        let t = pd("X[1,4,2,5]\nX[3,6,4,1]\n X[5, 2, 6, 3]\n");
        assert_eq!(t, pd(TREFOIL));
        let spaced = pd(" PD [ X [1 ,4,2,5] , X[3,6,4,1],X[5,2,6,3] ] ");
        assert_eq!(spaced, t);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("PD[X[1,2,3]]".parse::<PlanarDiagram>(), Err(DiagramError::Syntax { .. })));
        assert!(matches!("PD[X[1,2,2,1]] V3".parse::<PlanarDiagram>(), Err(DiagramError::Syntax { .. })));
        assert!(matches!(
            "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,7]]".parse::<PlanarDiagram>(),
            Err(DiagramError::Label { label: 3, count: 1 })
        ));
        assert!(matches!("PD[X[0,1,1,0]]".parse::<PlanarDiagram>(), Err(DiagramError::ZeroLabel)));
    }

    #[test]
    fn non_planar_rejected() {
        // an abstract code whose rotation system lives on a torus
        assert!(matches!(PlanarDiagram::new(vec![[1, 3, 2, 4], [2, 4, 3, 1]], 0), Err(DiagramError::NonPlanar(_))));
    }

    #[test]
    fn component_counts() {
        assert_eq!(pd(HOPF).components(), 2);
        assert_eq!(components_by_walking(&pd(HOPF)), 2);
        assert_eq!(pd(KINK).components(), 1);
        assert_eq!(pd(CLASP).components(), 1);
        assert_eq!(pd("PD[] U3").components(), 3);
    }

    #[test]
    fn face_counts() {
        for (s, n) in [(TREFOIL, 5), (HOPF, 4), (KINK, 3), (CLASP, 4), (FIGURE_EIGHT, 6)] {
            let d = pd(s);
            let f = d.faces().unwrap();
            assert_eq!(f.len(), n, "{s}");
            assert_eq!(f.faces.iter().map(Face::len).sum::<usize>(), 4 * d.crossing_count());
        }
    }

    #[test]
    fn faces_need_connected_diagram() {
        assert_eq!(pd("PD[] U1").faces().unwrap_err(), DiagramError::NoCrossings);
        assert_eq!(pd("PD[X[1,2,2,1]] U1").faces().unwrap_err(), DiagramError::Disconnected);
    }

    #[test]
    fn unbounded_face_is_left_of_edge_one() {
        let t = pd(TREFOIL);
        let f = t.faces().unwrap();
        // edge 1 leaves crossing 0 from slot 0
        assert_eq!(f.unbounded, f.face_of(Corner { crossing: 0, position: 0 }));
    }

    #[test]
    fn connectivity() {
        assert!(pd(TREFOIL).is_connected());
        assert!(!pd("PD[] U2").is_connected());
        assert!(pd("PD[] U1").is_connected());
        let two = pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3],X[7,10,8,11],X[9,12,10,7],X[11,8,12,9]]");
        assert!(!two.is_connected());
        assert_eq!(two.components(), 2);
    }

    #[test]
    fn alternation() {
        assert!(pd("PD[] U1").is_alternating());
        assert!(pd(TREFOIL).is_alternating());
        assert!(pd(FIGURE_EIGHT).is_alternating());
        assert!(!pd(K8_19).is_alternating());
        assert!(!pd(CLASP).is_alternating());
    }

    #[test]
    fn resolve_trefoil() {
        let t = pd(TREFOIL);
        for v in t.crossing_refs() {
            let zero = t.resolve(v, ResolutionChoice::Zero).unwrap();
            let one = t.resolve(v, ResolutionChoice::One).unwrap();
            assert_eq!(zero.crossing_count(), 2);
            let mut counts = [zero.components(), one.components()];
            counts.sort();
            assert_eq!(counts, [1, 2]);
            assert_eq!(components_by_walking(&zero), zero.components());
        }
        // every crossing of this trefoil has the same sign, so the choice
        // that splits the knot is the same everywhere
        for v in t.crossing_refs() {
            assert_eq!(t.resolve(v, ResolutionChoice::One).unwrap().components(), 2);
            assert_eq!(t.resolve(v, ResolutionChoice::Zero).unwrap().components(), 1);
        }
    }

    #[test]
    fn resolve_kink() {
        let k = pd(KINK);
        let a = k.resolve(CrossingRef(0), ResolutionChoice::Zero).unwrap();
        let b = k.resolve(CrossingRef(0), ResolutionChoice::One).unwrap();
        let mut loops = [a.free_loops(), b.free_loops()];
        loops.sort();
        assert_eq!(loops, [1, 2]);
        assert_eq!(a.crossing_count() + b.crossing_count(), 0);
    }

    #[test]
    fn resolve_clasp() {
        let c = pd(CLASP);
        let mut counts: Vec<usize> =
            ResolutionChoice::BOTH.iter().map(|&k| c.resolve(CrossingRef(0), k).unwrap().components()).collect();
        counts.sort();
        assert_eq!(counts, vec![1, 2]);
    }

    #[test]
    fn resolve_out_of_range() {
        let e = pd(TREFOIL).resolve(CrossingRef(3), ResolutionChoice::Zero).unwrap_err();
        assert_eq!(e, DiagramError::CrossingOutOfRange { index: 3, count: 3 });
    }

    #[test]
    fn resolve_relabels_compactly() {
        let r = pd(K8_19).resolve(CrossingRef(2), ResolutionChoice::One).unwrap();
        let mut labels = r.edges();
        labels.sort();
        assert_eq!(labels, (1..=14).collect::<Vec<_>>());
    }

    #[test]
    fn simplify_moves() {
        assert_eq!(pd(KINK).simplify(), PlanarDiagram::unknot());
        assert!(pd(CLASP).find_bigon().is_some());
        assert_eq!(pd(CLASP).simplify(), PlanarDiagram::unknot());
        let t = pd(TREFOIL);
        assert!(t.find_kink().is_none() && t.find_bigon().is_none());
        assert_eq!(t.simplify(), t);
        assert_eq!(pd(K8_19).simplify(), pd(K8_19));
    }

    #[test]
    fn bigon_removal_keeps_components() {
        // two strands of a 2-component diagram stacked: an R2-reducible unlink
        let d = PlanarDiagram::from_braid(2, &[1, -1]).unwrap();
        assert_eq!(d.components(), 2);
        let s = d.simplify();
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.free_loops(), 2);
    }

    #[test]
    fn braid_closures() {
        let t = PlanarDiagram::from_braid(2, &[1, 1, 1]).unwrap();
        assert_eq!(t.components(), 1);
        assert!(t.is_alternating());
        assert_eq!(t.faces().unwrap().len(), 5);
        let h = PlanarDiagram::from_braid(2, &[1, 1]).unwrap();
        assert_eq!(h.components(), 2);
        let f8 = PlanarDiagram::from_braid(3, &[1, -2, 1, -2]).unwrap();
        assert_eq!(f8.components(), 1);
        assert!(f8.is_alternating());
        let with_loop = PlanarDiagram::from_braid(3, &[1, 1, 1]).unwrap();
        assert_eq!(with_loop.free_loops(), 1);
    }

    #[test]
    fn nugatory_detection() {
        assert!(pd(KINK).has_nugatory_crossing());
        assert!(!pd(TREFOIL).has_nugatory_crossing());
        assert!(!pd(HOPF).has_nugatory_crossing());
    }

    #[test]
    fn canonical_key_ignores_labels_and_order() {
        let t = pd(TREFOIL);
        let shuffled = t.permuted(&[2, 0, 1], &|e| (e % 6) + 1);
        assert_eq!(PlanarDiagram::new(shuffled.crossings().to_vec(), 0).unwrap().canonical_key(), t.canonical_key());
        assert_ne!(pd(FIGURE_EIGHT).canonical_key(), t.canonical_key());
    }

    #[test]
    fn json_shape() {
        let t = pd(TREFOIL);
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(j, r#"{"crossings":[[1,4,2,5],[3,6,4,1],[5,2,6,3]],"free_loops":0}"#);
        let back: PlanarDiagram = serde_json::from_str(&j).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<PlanarDiagram>(r#"{"crossings":[[1,2,3,4]],"free_loops":0}"#).is_err());
    }
}
