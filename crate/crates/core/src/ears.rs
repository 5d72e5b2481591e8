//! Verification of convex ear decompositions, in the homological reading:
//! the initial subcomplex must be a homology sphere and every later piece a
//! homology ball glued along exactly its boundary, with the pieces covering
//! the ambient complex. Polytopality of the pieces is NOT checked; reports
//! carry `polytopal: unverified` to keep the distinction explicit.
//!
//! The enumerative identities a verified decomposition implies are checked
//! separately: h_{d−i}(Δ) = Σ_j h_i(Δ_j), the complementary h-vector, and
//! the per-ear boundary g identity.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::{Face, HVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{self, QcmFailure};
use crate::linalg::FieldSpec;
use crate::macaulay;

#[derive(Clone, Debug, Serialize)]
pub struct CondStatus {
    pub ok: bool,
    pub witness: Option<Face>,
    pub detail: String,
}

impl CondStatus {
    fn ok(detail: impl Into<String>) -> Self {
        CondStatus {
            ok: true,
            witness: None,
            detail: detail.into(),
        }
    }

    fn fail(detail: impl Into<String>, witness: Option<Face>) -> Self {
        CondStatus {
            ok: false,
            witness,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EarReport {
    pub m: usize,
    /// Polytopality of the pieces is outside what homology can certify.
    pub polytopal: &'static str,
    /// Piece j is a homology sphere (j = 0) or homology ball (j ≥ 1).
    pub condition1: Vec<CondStatus>,
    /// Δ_j ∩ (∪_{i<j} Δ_i) = ∂Δ_j as face sets, for j ≥ 1 (0-indexed slot
    /// j − 1).
    pub condition2: Vec<CondStatus>,
    /// ∪ Δ_j = Δ.
    pub condition3: CondStatus,
    pub pass: bool,
    #[serde(skip)]
    pub boundaries: Vec<Option<SimplicialComplex>>,
}

impl EarReport {
    pub fn summary(&self) -> String {
        if self.pass {
            return format!("{} pieces, all conditions hold", self.m);
        }
        let mut bad = Vec::new();
        for (j, c) in self.condition1.iter().enumerate() {
            if !c.ok {
                bad.push(format!("condition 1 at piece {}: {}", j + 1, c.detail));
            }
        }
        for (j, c) in self.condition2.iter().enumerate() {
            if !c.ok {
                bad.push(format!("condition 2 at piece {}: {}", j + 2, c.detail));
            }
        }
        if !self.condition3.ok {
            bad.push(format!("condition 3: {}", self.condition3.detail));
        }
        bad.join("; ")
    }
}

/// Check that `pieces` is a convex ear decomposition of `ambient` in the
/// homological reading. Order matters exactly as the definition demands:
/// condition 2 intersects each piece with the union of the earlier ones.
pub fn verify(
    ambient: &SimplicialComplex,
    pieces: &[SimplicialComplex],
    field: FieldSpec,
) -> Result<EarReport> {
    if pieces.is_empty() {
        return Err(Error::InvalidInput("no pieces given".into()));
    }
    let dim = ambient.dim().ok_or(Error::VoidComplex)?;
    for piece in pieces {
        for facet in piece.facets() {
            if !ambient.contains_face(facet) {
                return Err(Error::NotSubcomplex(facet.clone()));
            }
        }
    }

    let mut condition1 = Vec::new();
    let mut boundaries = Vec::new();
    for (j, piece) in pieces.iter().enumerate() {
        if piece.dim() != Some(dim) || !piece.is_pure() {
            condition1.push(CondStatus::fail(
                format!("piece {} is not pure of dimension {dim}", j + 1),
                piece.facets().iter().next().cloned(),
            ));
            boundaries.push(None);
            continue;
        }
        if j == 0 {
            match homology::sphere_defect(piece, field)? {
                None => condition1.push(CondStatus::ok("initial piece is a homology sphere")),
                Some(witness) => condition1.push(CondStatus::fail(
                    "initial piece is not a homology sphere",
                    Some(witness),
                )),
            }
            boundaries.push(None);
        } else {
            let ball = homology::is_homology_ball(piece, field)?;
            if ball.is_ball {
                condition1.push(CondStatus::ok(format!("ear {} is a homology ball", j + 1)));
            } else {
                condition1.push(CondStatus::fail(
                    format!("ear {} is not a homology ball", j + 1),
                    ball.defect,
                ));
            }
            boundaries.push(ball.boundary);
        }
    }

    let mut condition2 = Vec::new();
    let mut union_faces: BTreeSet<Face> = pieces[0].faces();
    for (j, piece) in pieces.iter().enumerate().skip(1) {
        let piece_faces = piece.faces();
        let intersection: BTreeSet<Face> = piece_faces
            .intersection(&union_faces)
            .cloned()
            .collect();
        let status = match &boundaries[j] {
            None => CondStatus::fail(
                format!("ear {} has no boundary to compare against", j + 1),
                None,
            ),
            Some(boundary) => {
                let boundary_faces = boundary.faces();
                if intersection == boundary_faces {
                    CondStatus::ok(format!("ear {} glues along its whole boundary", j + 1))
                } else {
                    let witness = intersection
                        .symmetric_difference(&boundary_faces)
                        .next()
                        .cloned();
                    CondStatus::fail(
                        format!(
                            "ear {} intersection has {} faces, boundary has {}",
                            j + 1,
                            intersection.len(),
                            boundary_faces.len()
                        ),
                        witness,
                    )
                }
            }
        };
        condition2.push(status);
        union_faces.extend(piece_faces);
    }

    let ambient_faces = ambient.faces();
    let condition3 = if union_faces == ambient_faces {
        CondStatus::ok("pieces cover the complex")
    } else {
        let witness = ambient_faces.difference(&union_faces).next().cloned();
        CondStatus::fail("pieces do not cover the complex", witness)
    };

    let pass = condition1.iter().all(|c| c.ok)
        && condition2.iter().all(|c| c.ok)
        && condition3.ok;
    Ok(EarReport {
        m: pieces.len(),
        polytopal: "unverified",
        condition1,
        condition2,
        condition3,
        pass,
        boundaries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComphReport {
    /// (i, h_{d−i}(Δ), Σ_j h_i(Δ_j)) for i = 0..d.
    pub identities: Vec<(usize, i64, i64)>,
    pub holds: bool,
    pub complementary: Vec<i64>,
    /// (i, h_{d−i}(Δ) − h_i(Δ), Σ_{j≥2} g_i(∂Δ_j)) for i ≤ ⌊d/2⌋.
    pub boundary_g_identities: Vec<(usize, i64, i64)>,
    pub boundary_g_holds: bool,
}

fn h_entry(h: &HVector, i: i64) -> i64 {
    if i < 0 {
        return 0;
    }
    h.0.get(i as usize).copied().unwrap_or(0)
}

/// The enumerative content of a decomposition that passed [`verify`]:
/// h_{d−i}(Δ) = Σ_j h_i(Δ_j) exactly, plus the complementary h-vector and
/// the per-ear identity h_{d−i}(Δ) − h_i(Δ) = Σ_{j≥2} g_i(∂Δ_j).
pub fn comph_check(
    ambient: &SimplicialComplex,
    pieces: &[SimplicialComplex],
    field: FieldSpec,
) -> Result<ComphReport> {
    let d = ambient.d().ok_or(Error::VoidComplex)? as usize;
    let ambient_h = ambient.h_vector()?;
    let piece_hs: Vec<HVector> = pieces
        .iter()
        .map(|p| p.h_vector())
        .collect::<Result<_>>()?;

    let mut identities = Vec::new();
    let mut holds = true;
    for i in 0..=d {
        let lhs = ambient_h.0[d - i];
        let rhs: i64 = piece_hs.iter().map(|h| h_entry(h, i as i64)).sum();
        if lhs != rhs {
            holds = false;
        }
        identities.push((i, lhs, rhs));
    }

    let complementary = macaulay::complementary_h(&ambient_h);

    // boundary g identity over the ears proper (pieces after the first)
    let mut boundary_g_identities = Vec::new();
    let mut boundary_g_holds = true;
    for i in 0..=d / 2 {
        let lhs = ambient_h.0[d - i] - ambient_h.0[i];
        let mut rhs = 0i64;
        for piece in pieces.iter().skip(1) {
            let ball = homology::is_homology_ball(piece, field)?;
            let boundary = ball.boundary.ok_or_else(|| {
                Error::InvalidInput("comph check needs verified ears".into())
            })?;
            let bh = if boundary.is_empty_complex() {
                HVector(vec![1])
            } else {
                boundary.h_vector()?
            };
            let g_i = h_entry(&bh, i as i64) - h_entry(&bh, i as i64 - 1);
            rhs += g_i;
        }
        if lhs != rhs {
            boundary_g_holds = false;
        }
        boundary_g_identities.push((i, lhs, rhs));
    }

    Ok(ComphReport {
        identities,
        holds,
        complementary,
        boundary_g_identities,
        boundary_g_holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoCmReport {
    pub doubly_cm: bool,
    pub witness: Option<(Vec<u32>, QcmFailure)>,
}

/// Spaces with a convex ear decomposition are doubly Cohen–Macaulay; check
/// the consequence directly on the ambient complex.
pub fn two_cm_consequence(
    ambient: &SimplicialComplex,
    field: FieldSpec,
    vertex_guard: usize,
) -> Result<TwoCmReport> {
    let report = homology::is_qcm(ambient, 2, field, vertex_guard)?;
    Ok(TwoCmReport {
        doubly_cm: report.holds,
        witness: report.witness,
    })
}
