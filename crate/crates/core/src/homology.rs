//! Reduced simplicial homology over a field, the Reisner Cohen–Macaulay
//! test, q-CM and CM-connectivity, and homology ball/sphere recognition.
//!
//! Chain groups are indexed by face cardinality with the empty face included,
//! so the augmentation map is the boundary from vertices to the empty face
//! and the empty complex has β̃_{−1} = 1.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::complex::{is_subset, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, FieldSpec};

/// Reduced Betti numbers β̃_{−1}..β̃_{dim} over a stated field.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BettiVector {
    pub field: FieldSpec,
    /// `betti[k]` is β̃_{k−1}: index 0 holds the degree −1 entry.
    pub betti: Vec<i64>,
}

impl BettiVector {
    /// β̃_j; zero outside the stored range.
    pub fn tilde(&self, j: i64) -> i64 {
        let k = j + 1;
        if k < 0 {
            return 0;
        }
        self.betti.get(k as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    /// Exactly the reduced homology of an m-sphere (m ≥ −1).
    pub fn is_sphere_profile(&self, m: i64) -> bool {
        self.betti
            .iter()
            .enumerate()
            .all(|(k, &b)| b == i64::from(k as i64 - 1 == m))
            && self.tilde(m) == 1
    }
}

/// Reduced Betti numbers via ranks of boundary matrices, augmentation
/// included. Errors on the void complex.
pub fn reduced_betti(complex: &SimplicialComplex, field: FieldSpec) -> Result<BettiVector> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    let d = complex.d().unwrap() as usize;
    let mut by_card: Vec<Vec<Face>> = vec![Vec::new(); d + 1];
    for face in complex.faces() {
        by_card[face.len()].push(face);
    }
    // boundary_rank[c] = rank of ∂_c : C_c → C_{c−1}, c = 1..=d
    let mut boundary_rank = vec![0usize; d + 2];
    for c in 1..=d {
        boundary_rank[c] = boundary_matrix(&by_card[c - 1], &by_card[c], field).rank();
    }
    let mut betti = Vec::with_capacity(d + 1);
    for c in 0..=d {
        let dim_c = by_card[c].len() as i64;
        let kernel = dim_c - boundary_rank[c] as i64;
        let image_above = boundary_rank[c + 1] as i64;
        betti.push(kernel - image_above);
    }
    Ok(BettiVector { field, betti })
}

/// Signed incidence matrix from cardinality-c faces (columns) to their
/// cardinality-(c−1) subfaces (rows).
fn boundary_matrix(lower: &[Face], upper: &[Face], field: FieldSpec) -> ExactMatrix {
    let index: BTreeMap<&Face, usize> = lower.iter().zip(0..).collect();
    let mut m = ExactMatrix::zeros(field, lower.len(), upper.len());
    for (j, face) in upper.iter().enumerate() {
        for t in 0..face.len() {
            let mut sub = face.clone();
            sub.remove(t);
            let i = index[&sub];
            let sign = if t % 2 == 0 { 1 } else { -1 };
            *m.at_mut(i, j) = field.from_i64(sign);
        }
    }
    m
}

/// Both-fields Betti computation; a disagreement is a characteristic
/// dependence finding, reported rather than treated as an error.
#[derive(Clone, Debug, Serialize)]
pub struct BettiCrossCheck {
    pub over_q: BettiVector,
    pub over_gf: BettiVector,
    pub agree: bool,
}

pub fn betti_cross_check(complex: &SimplicialComplex, p: u64) -> Result<BettiCrossCheck> {
    let over_q = reduced_betti(complex, FieldSpec::Q)?;
    let over_gf = reduced_betti(complex, FieldSpec::gf(p)?)?;
    let agree = over_q.betti == over_gf.betti;
    Ok(BettiCrossCheck {
        over_q,
        over_gf,
        agree,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CmReport {
    pub is_cm: bool,
    /// A violating (face, homology degree) pair when not Cohen–Macaulay.
    pub witness: Option<(Face, i64)>,
}

/// Reisner's criterion: Δ is Cohen–Macaulay over k iff for every face σ
/// (the empty face included), H̃_j(lk σ; k) = 0 for all j < d − |σ| − 1.
pub fn is_cm(complex: &SimplicialComplex, field: FieldSpec) -> Result<CmReport> {
    if complex.is_void() {
        return Ok(CmReport {
            is_cm: true,
            witness: None,
        });
    }
    let d = complex.d().unwrap();
    for sigma in complex.faces() {
        let link = complex.link(&sigma)?;
        let betti = reduced_betti(&link, field)?;
        let top = d - sigma.len() as i64 - 1;
        for j in -1..top {
            if betti.tilde(j) != 0 {
                return Ok(CmReport {
                    is_cm: false,
                    witness: Some((sigma, j)),
                });
            }
        }
    }
    Ok(CmReport {
        is_cm: true,
        witness: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QcmReport {
    pub q: u32,
    pub holds: bool,
    /// Deleted vertex set witnessing failure, with what went wrong.
    pub witness: Option<(Vec<u32>, QcmFailure)>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum QcmFailure {
    DimensionDropped,
    NotCm { face: Face, degree: i64 },
}

/// q-CM test: for every vertex subset A with |A| < q, deleting A preserves
/// dimension and leaves a Cohen–Macaulay complex. Subsets are swept in size
/// order with a short-circuit on the first failure.
pub fn is_qcm(
    complex: &SimplicialComplex,
    q: u32,
    field: FieldSpec,
    vertex_guard: usize,
) -> Result<QcmReport> {
    if q == 0 {
        return Err(Error::DegreeOutOfRange("q must be ≥ 1".into()));
    }
    let vertices = complex.vertices();
    if vertices.len() > vertex_guard {
        return Err(Error::GuardExceeded {
            what: "q-CM subset sweep over vertices".into(),
            needed: vertices.len(),
            limit: vertex_guard,
        });
    }
    let dim = complex.dim().ok_or(Error::VoidComplex)?;
    for size in 0..q as usize {
        if size > vertices.len() {
            break;
        }
        for subset in combinations(&vertices, size) {
            let deleted = complex.deletion(&subset);
            if deleted.dim() != Some(dim) {
                return Ok(QcmReport {
                    q,
                    holds: false,
                    witness: Some((subset, QcmFailure::DimensionDropped)),
                });
            }
            let report = is_cm(&deleted, field)?;
            if !report.is_cm {
                let (face, degree) = report.witness.unwrap();
                return Ok(QcmReport {
                    q,
                    holds: false,
                    witness: Some((subset, QcmFailure::NotCm { face, degree })),
                });
            }
        }
    }
    Ok(QcmReport {
        q,
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Connectivity {
    pub value: u32,
    /// The smallest failing deletion, when one exists within the sweep.
    pub witness: Option<(Vec<u32>, QcmFailure)>,
}

/// CM-connectivity: the maximum q such that the complex is q-CM (0 when the
/// complex is not even Cohen–Macaulay).
pub fn cm_connectivity(
    complex: &SimplicialComplex,
    field: FieldSpec,
    vertex_guard: usize,
) -> Result<Connectivity> {
    let vertices = complex.vertices();
    if vertices.len() > vertex_guard {
        return Err(Error::GuardExceeded {
            what: "CM-connectivity sweep over vertices".into(),
            needed: vertices.len(),
            limit: vertex_guard,
        });
    }
    let dim = complex.dim().ok_or(Error::VoidComplex)?;
    for size in 0..=vertices.len() {
        for subset in combinations(&vertices, size) {
            let deleted = complex.deletion(&subset);
            let failure = if deleted.dim() != Some(dim) {
                Some(QcmFailure::DimensionDropped)
            } else {
                let report = is_cm(&deleted, field)?;
                report.witness.map(|(face, degree)| QcmFailure::NotCm { face, degree })
            };
            if let Some(f) = failure {
                return Ok(Connectivity {
                    value: size as u32,
                    witness: Some((subset, f)),
                });
            }
        }
    }
    // deleting everything leaves the empty complex, whose dimension differs,
    // so the sweep always terminates before this point for nonvoid input
    Ok(Connectivity {
        value: vertices.len() as u32 + 1,
        witness: None,
    })
}

fn combinations(items: &[u32], size: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(items: &[u32], size: usize, start: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, size, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, size, 0, &mut current, &mut out);
    out
}

/// Face-by-face classification of links, shared by the sphere and ball tests.
struct LinkClassification {
    faces: Vec<Face>,
    /// link of face t has the reduced homology of a sphere of dimension
    /// dim Δ − |face|
    sphere_homology: Vec<bool>,
    acyclic: Vec<bool>,
}

fn classify_links(complex: &SimplicialComplex, field: FieldSpec) -> Result<LinkClassification> {
    let dim = complex.dim().ok_or(Error::VoidComplex)?;
    let faces: Vec<Face> = complex.faces().into_iter().collect();
    let mut sphere_homology = Vec::with_capacity(faces.len());
    let mut acyclic = Vec::with_capacity(faces.len());
    for face in &faces {
        let link = complex.link(face)?;
        let betti = reduced_betti(&link, field)?;
        sphere_homology.push(betti.is_sphere_profile(dim - face.len() as i64));
        acyclic.push(betti.is_zero());
    }
    Ok(LinkClassification {
        faces,
        sphere_homology,
        acyclic,
    })
}

impl LinkClassification {
    /// lk σ is a homology sphere iff every link inside it — i.e. the link of
    /// every superface of σ — has sphere homology of the right dimension.
    fn link_is_sphere(&self, idx: usize) -> bool {
        let sigma = &self.faces[idx];
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, tau)| is_subset(sigma, tau))
            .all(|(t, _)| self.sphere_homology[t])
    }
}

/// First face whose link lacks the sphere homology its dimension demands;
/// `None` when the complex is a homology sphere. The void complex reports
/// the empty face as its defect.
pub fn sphere_defect(complex: &SimplicialComplex, field: FieldSpec) -> Result<Option<Face>> {
    if complex.is_void() {
        return Ok(Some(Vec::new()));
    }
    let cls = classify_links(complex, field)?;
    for (t, ok) in cls.sphere_homology.iter().enumerate() {
        if !ok {
            return Ok(Some(cls.faces[t].clone()));
        }
    }
    Ok(None)
}

/// The empty complex counts as the (−1)-sphere; the void complex is nothing.
pub fn is_homology_sphere(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    Ok(sphere_defect(complex, field)?.is_none())
}

#[derive(Clone, Debug)]
pub struct BallReport {
    pub is_ball: bool,
    /// The boundary subcomplex (faces with homology-ball links), verified to
    /// be a homology sphere of one lower dimension.
    pub boundary: Option<SimplicialComplex>,
    /// A face localizing the failure when the complex is not a ball.
    pub defect: Option<Face>,
}

/// Homology ball: homologically acyclic, every link a homology ball or a
/// homology sphere of the appropriate dimension, and the faces with ball
/// links forming a subcomplex — the boundary — which is a homology sphere of
/// one lower dimension. The boundary condition is checked at every level of
/// the recursion, since the boundary of the link of σ is assembled from the
/// very ball statuses already decided for the superfaces of σ.
pub fn is_homology_ball(complex: &SimplicialComplex, field: FieldSpec) -> Result<BallReport> {
    let fail = |defect: Face| BallReport {
        is_ball: false,
        boundary: None,
        defect: Some(defect),
    };
    if complex.is_void() || complex.is_empty_complex() {
        return Ok(fail(Vec::new()));
    }
    let dim = complex.dim().unwrap();
    let cls = classify_links(complex, field)?;
    let n = cls.faces.len();

    // ball[t]: the link of face t is a homology ball. Decreasing cardinality
    // order makes every strict superface's status available.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&t| std::cmp::Reverse(cls.faces[t].len()));
    let mut ball = vec![false; n];
    let mut sphere_link = vec![false; n];
    for &t in &order {
        sphere_link[t] = cls.link_is_sphere(t);
        if sphere_link[t] || !cls.acyclic[t] {
            continue;
        }
        let sigma = &cls.faces[t];
        let supers: Vec<usize> = (0..n)
            .filter(|&s| s != t && is_subset(sigma, &cls.faces[s]))
            .collect();
        if !supers.iter().all(|&s| sphere_link[s] || ball[s]) {
            continue;
        }
        ball[t] = link_boundary_is_sphere(&cls, &ball, t, &supers, dim, field)?.is_none();
    }

    let empty_idx = cls.faces.iter().position(|f| f.is_empty()).unwrap();
    if !ball[empty_idx] {
        if !cls.acyclic[empty_idx] {
            return Ok(fail(Vec::new()));
        }
        let witness = (0..n)
            .find(|&s| s != empty_idx && !sphere_link[s] && !ball[s])
            .map(|s| cls.faces[s].clone())
            .unwrap_or_default();
        return Ok(fail(witness));
    }

    let boundary = boundary_complex(&cls, &ball, empty_idx);
    Ok(BallReport {
        is_ball: true,
        boundary: Some(boundary),
        defect: None,
    })
}

/// The boundary of lk σ_t: faces τ∖σ_t over the superfaces τ with ball
/// links. Always contains the empty face.
fn boundary_complex(cls: &LinkClassification, ball: &[bool], t: usize) -> SimplicialComplex {
    let sigma = &cls.faces[t];
    let boundary_faces: BTreeSet<Face> = (0..cls.faces.len())
        .filter(|&s| ball[s] && is_subset(sigma, &cls.faces[s]))
        .map(|s| crate::complex::set_difference(&cls.faces[s], sigma))
        .collect();
    let maximal: Vec<Face> = boundary_faces
        .iter()
        .filter(|f| {
            !boundary_faces
                .iter()
                .any(|g| g.len() > f.len() && is_subset(f, g))
        })
        .cloned()
        .collect();
    if maximal.is_empty() {
        return SimplicialComplex::empty();
    }
    SimplicialComplex::from_facets(maximal).expect("faces are valid")
}

/// Verify that the boundary of lk σ_t is closed under subfaces and is a
/// homology sphere of dimension dim − |σ_t| − 1. Returns a witness face of
/// the ambient complex on failure.
fn link_boundary_is_sphere(
    cls: &LinkClassification,
    ball: &[bool],
    t: usize,
    supers: &[usize],
    dim: i64,
    field: FieldSpec,
) -> Result<Option<Face>> {
    let sigma = &cls.faces[t];
    let boundary_faces: BTreeSet<Face> = supers
        .iter()
        .filter(|&&s| ball[s])
        .map(|&s| crate::complex::set_difference(&cls.faces[s], sigma))
        .collect();
    for f in &boundary_faces {
        for k in 0..f.len() {
            let mut sub = f.clone();
            sub.remove(k);
            if !sub.is_empty() && !boundary_faces.contains(&sub) {
                let mut witness = sigma.clone();
                witness.extend(sub);
                witness.sort_unstable();
                return Ok(Some(witness));
            }
        }
    }
    let boundary = boundary_complex(cls, ball, t);
    let expected_dim = dim - sigma.len() as i64 - 1;
    if boundary.dim() != Some(expected_dim) {
        return Ok(Some(sigma.clone()));
    }
    if sphere_defect(&boundary, field)?.is_some() {
        return Ok(Some(sigma.clone()));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> SimplicialComplex {
        let mut facets = Vec::new();
        for a in [1u32, 4] {
            for b in [2u32, 5] {
                for c in [3u32, 6] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::from_facets(facets).unwrap()
    }

    fn cycle(n: u32) -> SimplicialComplex {
        let facets: Vec<Vec<u32>> = (1..=n)
            .map(|v| {
                let mut e = vec![v, v % n + 1];
                e.sort_unstable();
                e
            })
            .collect();
        SimplicialComplex::from_facets(facets).unwrap()
    }

    #[test]
    fn octahedron_is_a_two_sphere() {
        let betti = reduced_betti(&octahedron(), FieldSpec::Q).unwrap();
        assert_eq!(betti.betti, vec![0, 0, 0, 1]);
        assert!(betti.is_sphere_profile(2));
    }

    #[test]
    fn two_disjoint_edges() {
        let c = SimplicialComplex::from_facets([vec![1u32, 2], vec![3, 4]]).unwrap();
        let betti = reduced_betti(&c, FieldSpec::Q).unwrap();
        assert_eq!(betti.tilde(0), 1);
        assert_eq!(betti.tilde(1), 0);
    }

    #[test]
    fn four_cycle_is_a_circle() {
        let betti = reduced_betti(&cycle(4), FieldSpec::Q).unwrap();
        assert_eq!(betti.tilde(0), 0);
        assert_eq!(betti.tilde(1), 1);
    }

    #[test]
    fn empty_complex_is_minus_one_sphere() {
        let betti = reduced_betti(&SimplicialComplex::empty(), FieldSpec::Q).unwrap();
        assert_eq!(betti.betti, vec![1]);
        assert!(betti.is_sphere_profile(-1));
        assert!(is_homology_sphere(&SimplicialComplex::empty(), FieldSpec::Q).unwrap());
    }

    #[test]
    fn cm_examples() {
        let path = SimplicialComplex::from_facets([vec![1u32, 2], vec![2, 3]]).unwrap();
        assert!(is_cm(&path, FieldSpec::Q).unwrap().is_cm);

        let bowtie =
            SimplicialComplex::from_facets([vec![1u32, 2, 3], vec![3, 4, 5]]).unwrap();
        let report = is_cm(&bowtie, FieldSpec::Q).unwrap();
        assert!(!report.is_cm);
        assert_eq!(report.witness, Some((vec![3], 0)));
    }

    #[test]
    fn fano_flag_complex_is_cm() {
        let (fano, _) = crate::flags::tests::fano_flag_complex();
        assert!(is_cm(&fano, FieldSpec::Q).unwrap().is_cm);
    }

    #[test]
    fn octahedron_connectivity_is_two() {
        let conn = cm_connectivity(&octahedron(), FieldSpec::Q, 20).unwrap();
        assert_eq!(conn.value, 2);
        let (witness, failure) = conn.witness.unwrap();
        assert_eq!(failure, QcmFailure::DimensionDropped);
        assert_eq!(witness.len(), 2);
    }

    #[test]
    fn simplex_boundary_connectivity_is_two() {
        let boundary3 = SimplicialComplex::from_facets([
            vec![1u32, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
        ])
        .unwrap();
        assert_eq!(
            cm_connectivity(&boundary3, FieldSpec::Q, 20).unwrap().value,
            2
        );
    }

    #[test]
    fn qcm_guard_refuses_large_inputs() {
        let big = SimplicialComplex::from_facets((1..=25).map(|v| vec![v as u32])).unwrap();
        assert!(matches!(
            is_qcm(&big, 2, FieldSpec::Q, 20),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn sphere_and_ball_recognition() {
        assert!(is_homology_sphere(&octahedron(), FieldSpec::Q).unwrap());
        assert!(is_homology_sphere(&cycle(6), FieldSpec::Q).unwrap());
        assert!(!is_homology_sphere(&cycle(6).deletion(&[1]), FieldSpec::Q).unwrap());

        let path = SimplicialComplex::from_facets([vec![1u32, 2], vec![2, 3]]).unwrap();
        let report = is_homology_ball(&path, FieldSpec::Q).unwrap();
        assert!(report.is_ball);
        let boundary = report.boundary.unwrap();
        assert_eq!(
            boundary,
            SimplicialComplex::from_facets([vec![1u32], vec![3]]).unwrap()
        );

        // a sphere is not a ball
        assert!(!is_homology_ball(&octahedron(), FieldSpec::Q).unwrap().is_ball);

        // single vertex: 0-ball with the empty complex as boundary
        let point = SimplicialComplex::from_facets([vec![1u32]]).unwrap();
        let report = is_homology_ball(&point, FieldSpec::Q).unwrap();
        assert!(report.is_ball);
        assert!(report.boundary.unwrap().is_empty_complex());
    }

    #[test]
    fn disk_is_a_ball_with_circle_boundary() {
        // cone over a 4-cycle: vertex 5 joined to cycle 1-2-3-4
        let disk = SimplicialComplex::from_facets([
            vec![1u32, 2, 5],
            vec![2, 3, 5],
            vec![3, 4, 5],
            vec![1, 4, 5],
        ])
        .unwrap();
        let report = is_homology_ball(&disk, FieldSpec::Q).unwrap();
        assert!(report.is_ball);
        let boundary = report.boundary.unwrap();
        assert_eq!(boundary, cycle(4));

        // removing one facet from a sphere also leaves a ball
        let mut facets: Vec<Face> = octahedron().facets().iter().cloned().collect();
        facets.pop();
        let punctured = SimplicialComplex::from_facets(facets).unwrap();
        assert!(is_homology_ball(&punctured, FieldSpec::Q).unwrap().is_ball);
    }

    #[test]
    fn acyclic_complex_with_a_bad_link_is_not_a_ball() {
        // cone over the bowtie: contractible, but the apex link is neither a
        // homology ball nor a homology sphere
        let cone = SimplicialComplex::from_facets([
            vec![1u32, 2, 3, 6],
            vec![3, 4, 5, 6],
        ])
        .unwrap();
        let report = is_homology_ball(&cone, FieldSpec::Q).unwrap();
        assert!(!report.is_ball);
        assert!(report.defect.is_some());
    }

    #[test]
    fn sphere_implies_cm_and_two_connectivity() {
        for sphere in [octahedron(), cycle(5)] {
            assert!(is_cm(&sphere, FieldSpec::Q).unwrap().is_cm);
            let conn = cm_connectivity(&sphere, FieldSpec::Q, 20).unwrap();
            assert!(conn.value >= 2, "homology spheres are 2-CM");
        }
    }

    #[test]
    fn cross_check_agrees_on_octahedron() {
        let check = betti_cross_check(&octahedron(), 32003).unwrap();
        assert!(check.agree);
    }
}
