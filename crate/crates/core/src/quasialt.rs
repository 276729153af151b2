//! Certificates of quasi-alternation.
//!
//! The class Q contains the unknot and every link with a diagram and crossing
//! whose two resolutions lie in Q and satisfy det(L) = det(L₀) + det(L₁).
//! Non-split alternating links are accepted as leaves. A certificate records
//! the recursion as a tree; [`verify_certificate`] recomputes every node.
//!
//! Child diagrams are stored after Reidemeister I/II simplification of the
//! resolution, so that a child can be a reduced alternating leaf.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::determinant::determinant;
use crate::diagram::{CrossingRef, PlanarDiagram, ResolutionChoice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QaError {
    #[error("search budget must be positive")]
    ZeroBudget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QaCertificate {
    UnknotLeaf {
        diagram: PlanarDiagram,
    },
    AlternatingLeaf {
        diagram: PlanarDiagram,
    },
    Node {
        diagram: PlanarDiagram,
        crossing: CrossingRef,
        det_l: u64,
        det_l0: u64,
        det_l1: u64,
        /// Certificates for the Zero and One resolutions, in that order.
        children: Box<[QaCertificate; 2]>,
    },
}

impl QaCertificate {
    pub fn diagram(&self) -> &PlanarDiagram {
        match self {
            QaCertificate::UnknotLeaf { diagram }
            | QaCertificate::AlternatingLeaf { diagram }
            | QaCertificate::Node { diagram, .. } => diagram,
        }
    }

    pub fn is_leaf(&self) -> bool {
        !matches!(self, QaCertificate::Node { .. })
    }

    pub fn node_count(&self) -> usize {
        match self {
            QaCertificate::Node { children, .. } => 1 + children.iter().map(Self::node_count).sum::<usize>(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            QaCertificate::Node { children, .. } => 1 + children.iter().map(Self::depth).max().unwrap_or(0),
            _ => 0,
        }
    }
}

/// The child diagram recorded for a resolution.
pub fn resolved_child(pd: &PlanarDiagram, v: CrossingRef, choice: ResolutionChoice) -> PlanarDiagram {
    pd.resolve(v, choice).expect("crossing index checked by caller").simplify()
}

pub fn is_unknot_leaf(pd: &PlanarDiagram) -> bool {
    let s = pd.simplify();
    s.crossing_count() == 0 && s.free_loops() == 1
}

/// Connected, alternating, free of Reidemeister I kinks, with det ≥ 1.
pub fn is_alternating_leaf(pd: &PlanarDiagram) -> bool {
    pd.crossing_count() > 0
        && pd.free_loops() == 0
        && pd.is_connected()
        && pd.is_alternating()
        && pd.find_kink().is_none()
        && determinant(pd) >= 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyOutcome {
    Certified(QaCertificate),
    /// The bounded search found nothing. This is not a proof that the link
    /// is outside Q.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyResult {
    pub outcome: CertifyOutcome,
    pub expansions: u64,
}

struct Search {
    budget: u64,
    used: u64,
    found: HashMap<PlanarDiagram, QaCertificate>,
    failed: HashSet<(Vec<[u32; 4]>, u32)>,
}

struct OutOfBudget;

struct Candidate {
    crossing: CrossingRef,
    children: [PlanarDiagram; 2],
    dets: [u64; 2],
    alternating: usize,
}

impl Search {
    fn certify(&mut self, pd: &PlanarDiagram) -> Result<Option<QaCertificate>, OutOfBudget> {
        if is_unknot_leaf(pd) {
            return Ok(Some(QaCertificate::UnknotLeaf { diagram: pd.clone() }));
        }
        if is_alternating_leaf(pd) {
            return Ok(Some(QaCertificate::AlternatingLeaf { diagram: pd.clone() }));
        }
        if let Some(c) = self.found.get(pd) {
            return Ok(Some(c.clone()));
        }
        let key = pd.canonical_key();
        if self.failed.contains(&key) {
            return Ok(None);
        }
        let det = determinant(pd);
        // a node needs det = d0 + d1 with both at least 1
        if det < 2 {
            self.failed.insert(key);
            return Ok(None);
        }
        let mut candidates = Vec::new();
        for v in pd.crossing_refs() {
            if self.used >= self.budget {
                return Err(OutOfBudget);
            }
            self.used += 1;
            let children = ResolutionChoice::BOTH.map(|c| resolved_child(pd, v, c));
            let dets = [determinant(&children[0]), determinant(&children[1])];
            if dets[0] == 0 || dets[1] == 0 || dets[0] + dets[1] != det {
                continue;
            }
            let alternating = children.iter().filter(|c| c.is_alternating()).count();
            candidates.push(Candidate { crossing: v, children, dets, alternating });
        }
        // prefer crossings whose resolutions are alternating; stable on index
        candidates.sort_by_key(|c| std::cmp::Reverse(c.alternating));
        for cand in candidates {
            let Some(c0) = self.certify(&cand.children[0])? else {
                continue;
            };
            let Some(c1) = self.certify(&cand.children[1])? else {
                continue;
            };
            let cert = QaCertificate::Node {
                diagram: pd.clone(),
                crossing: cand.crossing,
                det_l: det,
                det_l0: cand.dets[0],
                det_l1: cand.dets[1],
                children: Box::new([c0, c1]),
            };
            self.found.insert(pd.clone(), cert.clone());
            return Ok(Some(cert));
        }
        self.failed.insert(key);
        Ok(None)
    }
}

/// Bounded search for a certificate. The budget counts (diagram, crossing)
/// expansions.
pub fn certify(pd: &PlanarDiagram, budget: u64) -> Result<CertifyResult, QaError> {
    if budget == 0 {
        return Err(QaError::ZeroBudget);
    }
    let mut search = Search { budget, used: 0, found: HashMap::new(), failed: HashSet::new() };
    let outcome = match search.certify(pd) {
        Ok(Some(cert)) => CertifyOutcome::Certified(cert),
        Ok(None) | Err(OutOfBudget) => CertifyOutcome::Unknown,
    };
    Ok(CertifyResult { outcome, expansions: search.used })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyFailure {
    /// Route from the root, e.g. `["root", "L0", "L1"]`.
    pub path: Vec<String>,
    pub reason: String,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path.join("/"), self.reason)
    }
}

/// Recomputes every resolution, determinant and leaf condition.
pub fn verify_certificate(cert: &QaCertificate) -> Result<(), VerifyFailure> {
    verify_at(cert, &mut vec!["root".to_string()])
}

fn verify_at(cert: &QaCertificate, path: &mut Vec<String>) -> Result<(), VerifyFailure> {
    let fail = |path: &Vec<String>, reason: String| Err(VerifyFailure { path: path.clone(), reason });
    match cert {
        QaCertificate::UnknotLeaf { diagram } => {
            if !is_unknot_leaf(diagram) {
                return fail(path, "unknot leaf does not simplify to a single circle".into());
            }
        }
        QaCertificate::AlternatingLeaf { diagram } => {
            if !is_alternating_leaf(diagram) {
                return fail(
                    path,
                    "alternating leaf is not a connected reduced alternating diagram with det >= 1".into(),
                );
            }
        }
        QaCertificate::Node { diagram, crossing, det_l, det_l0, det_l1, children } => {
            if crossing.0 >= diagram.crossing_count() {
                return fail(path, format!("crossing {} out of range", crossing.0));
            }
            let actual = determinant(diagram);
            if actual != *det_l {
                return fail(path, format!("det_l is {det_l}, diagram has {actual}"));
            }
            if *det_l0 == 0 || *det_l1 == 0 {
                return fail(path, "resolution determinants must be at least 1".into());
            }
            if det_l0 + det_l1 != *det_l {
                return fail(path, format!("{det_l} != {det_l0} + {det_l1}"));
            }
            for (k, choice) in ResolutionChoice::BOTH.into_iter().enumerate() {
                let expected = resolved_child(diagram, *crossing, choice);
                let recorded = if k == 0 { *det_l0 } else { *det_l1 };
                path.push(format!("L{k}"));
                if children[k].diagram() != &expected {
                    return fail(path, format!("diagram is not the resolution at crossing {}", crossing.0));
                }
                let d = determinant(&expected);
                if d != recorded {
                    return fail(path, format!("recorded det {recorded}, resolution has {d}"));
                }
                verify_at(&children[k], path)?;
                path.pop();
            }
        }
    }
    Ok(())
}

/// True when rk ĤFK ≠ 2^{l−1}·det, which rules out quasi-alternation.
pub fn qa_obstruction(l: u32, det: u64, hfk_rank: u64) -> bool {
    (1u64 << (l - 1)) * det != hfk_rank
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]";
    const HOPF: &str = "PD[X[1,3,2,4], X[3,1,4,2]]";
    const KINK: &str = "PD[X[1,2,2,1]]";
    const K8_19: &str =
        "PD[X[2,14,3,13], X[5,11,6,10], X[7,15,8,14], X[9,5,10,4], X[11,7,12,6], X[12,2,13,1], X[15,9,16,8], X[16,4,1,3]]";
    const K8_20: &str = include_str!("../fixtures/8_20.pd");
    const K8_20_TABLE: &str = include_str!("../fixtures/8_20_knotinfo.pd");

    fn pd(s: &str) -> PlanarDiagram {
        s.parse().unwrap()
    }

    fn trefoil_node() -> QaCertificate {
        let t = pd(TREFOIL);
        let v = CrossingRef(0);
        QaCertificate::Node {
            diagram: t.clone(),
            crossing: v,
            det_l: 3,
            det_l0: 1,
            det_l1: 2,
            children: Box::new([
                QaCertificate::UnknotLeaf { diagram: resolved_child(&t, v, ResolutionChoice::Zero) },
                QaCertificate::AlternatingLeaf { diagram: resolved_child(&t, v, ResolutionChoice::One) },
            ]),
        }
    }

    #[test]
    fn leaves() {
        let r = certify(&PlanarDiagram::unknot(), 1).unwrap();
        assert!(matches!(r.outcome, CertifyOutcome::Certified(QaCertificate::UnknotLeaf { .. })));
        let r = certify(&pd(TREFOIL), 1).unwrap();
        assert!(matches!(r.outcome, CertifyOutcome::Certified(QaCertificate::AlternatingLeaf { .. })));
        assert_eq!(r.expansions, 0);
        let r = certify(&pd(KINK), 1).unwrap();
        assert!(matches!(r.outcome, CertifyOutcome::Certified(QaCertificate::UnknotLeaf { .. })));
    }

    #[test]
    fn zero_budget_rejected() {
        assert_eq!(certify(&pd(TREFOIL), 0).unwrap_err(), QaError::ZeroBudget);
    }

    #[test]
    fn kink_is_not_an_alternating_leaf() {
        assert!(!is_alternating_leaf(&pd(KINK)));
        assert!(is_alternating_leaf(&pd(HOPF)));
        assert!(!is_alternating_leaf(&PlanarDiagram::unlink(2)));
    }

    #[test]
    fn hand_built_trefoil_node() {
        let cert = trefoil_node();
        assert_eq!(verify_certificate(&cert), Ok(()));
        assert_eq!(cert.node_count(), 3);
        assert_eq!(cert.depth(), 1);
    }

    #[test]
    fn tampered_det_triple_rejected() {
        let QaCertificate::Node { diagram, crossing, children, .. } = trefoil_node() else { unreachable!() };
        let bad = QaCertificate::Node { diagram, crossing, det_l: 3, det_l0: 2, det_l1: 2, children };
        let err = verify_certificate(&bad).unwrap_err();
        assert_eq!(err.path, vec!["root"]);
    }

    #[test]
    fn swapped_children_rejected_with_path() {
        let QaCertificate::Node { diagram, crossing, det_l, det_l0, det_l1, children } = trefoil_node() else {
            unreachable!()
        };
        let [a, b] = *children;
        let bad = QaCertificate::Node { diagram, crossing, det_l, det_l0, det_l1, children: Box::new([b, a]) };
        assert_eq!(verify_certificate(&bad).unwrap_err().path, vec!["root", "L0"]);
    }

    #[test]
    fn k8_20_certified() {
        let r = certify(&pd(K8_20), 100_000).unwrap();
        let CertifyOutcome::Certified(cert) = r.outcome else { panic!("no certificate") };
        assert!(!cert.is_leaf());
        assert_eq!(verify_certificate(&cert), Ok(()));
    }

    #[test]
    fn k8_20_table_diagram_needs_moves_beyond_simplify() {
        // every det-additive crossing of this diagram leads to a diagram that
        // R1/R2 simplification cannot bring to a leaf
        let r = certify(&pd(K8_20_TABLE), 100_000).unwrap();
        assert_eq!(r.outcome, CertifyOutcome::Unknown);
    }

    #[test]
    fn k8_19_unknown() {
        let r = certify(&pd(K8_19), 100_000).unwrap();
        assert_eq!(r.outcome, CertifyOutcome::Unknown);
        assert!(r.expansions <= 100_000);
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let k8_20 = pd(K8_20);
        let r = certify(&k8_20, 3).unwrap();
        assert_eq!(r.outcome, CertifyOutcome::Unknown);
        assert_eq!(r.expansions, 3);
    }

    #[test]
    fn deterministic() {
        let k8_20 = pd(K8_20);
        assert_eq!(certify(&k8_20, 100_000).unwrap(), certify(&k8_20, 100_000).unwrap());
    }

    #[test]
    fn obstruction() {
        assert!(!qa_obstruction(1, 1, 1));
        assert!(!qa_obstruction(1, 3, 3));
        assert!(!qa_obstruction(2, 2, 4));
        assert!(qa_obstruction(1, 3, 5));
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(trefoil_node()).unwrap();
        assert_eq!(json["kind"], "node");
        assert_eq!(json["children"][0]["kind"], "unknot_leaf");
        let back: QaCertificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, trefoil_node());
    }
}
