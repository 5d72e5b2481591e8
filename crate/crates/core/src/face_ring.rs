//! The Stanley–Reisner face ring k[Δ], linear systems of parameters, graded
//! quotient dimensions, multiplication ranks, and randomized g-element
//! certificates.
//!
//! Degree-j monomials with face support form the monomial basis of k[Δ]_j;
//! reduction modulo the face ideal is the support test (a monomial survives
//! iff its support is a face). All ranks are exact over the chosen field.
//!
//! A g-element certificate records, for each i with d − 2i ≥ 1, the verified
//! rank of multiplication ω^{d−2i} : (k[Δ]/Θ)_i → (k[Δ]/Θ)_{d−i}; the search
//! succeeds when every such rank equals h_i. For even d the boundary index
//! i = d/2 has ω^0 = identity, which is vacuously injective: it never gates
//! success, and the rank of the honest degree-one map ω : (k[Δ]/Θ)_{d/2} →
//! (k[Δ]/Θ)_{d/2+1} is recorded separately as a diagnostic.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology;
use crate::linalg::{ExactMatrix, FieldSpec, Scalar, DEFAULT_PRIME};

/// Exponent vector as sorted (vertex, exponent ≥ 1) pairs; empty = 1.
pub type Monomial = Vec<(u32, u32)>;

pub fn monomial_degree(m: &Monomial) -> u32 {
    m.iter().map(|&(_, e)| e).sum()
}

pub fn monomial_support(m: &Monomial) -> Vec<u32> {
    m.iter().map(|&(v, _)| v).collect()
}

fn monomial_times_var(m: &Monomial, v: u32) -> Monomial {
    let mut out = m.clone();
    match out.binary_search_by_key(&v, |&(w, _)| w) {
        Ok(idx) => out[idx].1 += 1,
        Err(idx) => out.insert(idx, (v, 1)),
    }
    out
}

/// The degree-j monomials of k[Δ]: exponent vectors whose support is a face.
/// Deterministic order: faces in their canonical order, compositions within a
/// face lexicographically.
pub fn monomial_basis(complex: &SimplicialComplex, j: u32) -> Result<Vec<Monomial>> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    if j == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut out = Vec::new();
    for face in complex.faces() {
        let k = face.len() as u32;
        if k == 0 || k > j {
            continue;
        }
        for composition in compositions(j, k) {
            out.push(
                face.iter()
                    .copied()
                    .zip(composition.iter().copied())
                    .collect(),
            );
        }
    }
    Ok(out)
}

/// All ways to write `total` as `parts` positive integers, lexicographic.
fn compositions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts as usize);
    fn rec(total: u32, parts: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=total - (parts - 1) {
            cur.push(first);
            rec(total - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    rec(total, parts, &mut cur, &mut out);
    out
}

/// A candidate linear system of parameters: d one-forms over the vertex
/// support, stored as coefficient rows of the matrix T.
#[derive(Clone, Debug)]
pub struct Lsop {
    pub field: FieldSpec,
    pub vertices: Vec<u32>,
    /// d rows, one per θ_a; columns follow `vertices`.
    pub rows: Vec<Vec<Scalar>>,
}

impl Lsop {
    pub fn from_int_rows(complex: &SimplicialComplex, field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let vertices = complex.vertices();
        Lsop {
            field,
            vertices: vertices.clone(),
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        }
    }

    fn column_of(&self, v: u32) -> usize {
        self.vertices
            .binary_search(&v)
            .expect("vertex outside support")
    }

    /// The l.s.o.p. condition: T restricted to each facet has full rank.
    pub fn verify(&self, complex: &SimplicialComplex) -> Result<()> {
        for facet in complex.facets() {
            let sub: Vec<Vec<Scalar>> = self
                .rows
                .iter()
                .map(|row| facet.iter().map(|&v| row[self.column_of(v)].clone()).collect())
                .collect();
            let m = ExactMatrix::from_rows(self.field, sub)?;
            if m.rank() < facet.len() {
                return Err(Error::NotLsop(facet.clone()));
            }
        }
        Ok(())
    }
}

fn random_coefficient(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldSpec::Q => {
            // uniform over {−100..100} \ {0}
            let mut x: i64 = 0;
            while x == 0 {
                x = rng.gen_range(-100..=100);
            }
            field.from_i64(x)
        }
        FieldSpec::Gf(p) => Scalar::Gf {
            v: rng.gen_range(1..p),
            p,
        },
    }
}

/// Draw random one-forms until the facet-rank condition verifies, within a
/// bounded retry count. GF(p) fields smaller than the default prime are
/// refused: random search needs room to miss the bad hypersurfaces.
pub fn random_lsop(complex: &SimplicialComplex, field: FieldSpec, seed: u64) -> Result<Lsop> {
    if let FieldSpec::Gf(p) = field {
        if p < DEFAULT_PRIME {
            return Err(Error::FieldTooSmall(format!(
                "GF({p}) is below GF({DEFAULT_PRIME})"
            )));
        }
    }
    let d = complex
        .d()
        .ok_or(Error::VoidComplex)?
        .max(0) as usize;
    let vertices = complex.vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const TRIES: usize = 32;
    let mut last_failure: Vec<u32> = Vec::new();
    for _ in 0..TRIES {
        let rows: Vec<Vec<Scalar>> = (0..d)
            .map(|_| {
                (0..vertices.len())
                    .map(|_| random_coefficient(field, &mut rng))
                    .collect()
            })
            .collect();
        let candidate = Lsop {
            field,
            vertices: vertices.clone(),
            rows,
        };
        match candidate.verify(complex) {
            Ok(()) => return Ok(candidate),
            Err(Error::NotLsop(facet)) => last_failure = facet,
            Err(e) => return Err(e),
        }
    }
    Err(Error::LsopSearchFailed {
        attempts: TRIES,
        facet: last_failure,
    })
}

/// Polynomials as monomial → coefficient maps, reduced mod the face ideal on
/// the fly: any monomial whose support leaves Δ is dropped, and stays dropped
/// since supports only grow under multiplication.
type Poly = HashMap<Monomial, Scalar>;

fn poly_times_one_form(
    poly: &Poly,
    form: &[Scalar],
    vertices: &[u32],
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> Poly {
    let mut out: Poly = HashMap::new();
    for (mono, coeff) in poly {
        for (idx, v) in vertices.iter().enumerate() {
            if form[idx].is_zero() {
                continue;
            }
            let next = monomial_times_var(mono, *v);
            if !complex.contains_face(&monomial_support(&next)) {
                continue;
            }
            let add = coeff.mul(&form[idx]);
            out.entry(next)
                .and_modify(|c| *c = c.add(&add))
                .or_insert_with(|| field.zero().add(&add));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Cached presentation of k[Δ]/Θ: monomial bases per degree together with
/// the rank of the degree-j slice of the ideal Θ·k[Δ].
pub struct QuotientRing<'a> {
    pub complex: &'a SimplicialComplex,
    pub lsop: &'a Lsop,
    pub d: usize,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    theta_rank: Vec<Option<usize>>,
}

impl<'a> QuotientRing<'a> {
    /// Verifies the l.s.o.p. condition before building anything.
    pub fn new(complex: &'a SimplicialComplex, lsop: &'a Lsop) -> Result<Self> {
        lsop.verify(complex)?;
        let d = complex.d().ok_or(Error::VoidComplex)?.max(0) as usize;
        let mut bases = Vec::with_capacity(d + 1);
        let mut index = Vec::with_capacity(d + 1);
        for j in 0..=d as u32 {
            let basis = monomial_basis(complex, j)?;
            let idx: HashMap<Monomial, usize> =
                basis.iter().cloned().zip(0..).collect();
            bases.push(basis);
            index.push(idx);
        }
        Ok(QuotientRing {
            complex,
            lsop,
            d,
            bases,
            index,
            theta_rank: vec![None; d + 1],
        })
    }

    pub fn ring_dim(&self, j: usize) -> usize {
        self.bases[j].len()
    }

    fn coords(&self, poly: &Poly, degree: usize) -> Vec<Scalar> {
        let mut out = vec![self.lsop.field.zero(); self.bases[degree].len()];
        for (mono, coeff) in poly {
            let idx = self.index[degree][mono];
            out[idx] = coeff.clone();
        }
        out
    }

    /// Columns spanning (Θ·k[Δ])_j: θ_a·m over all a and all degree-(j−1)
    /// basis monomials.
    fn theta_image_cols(&self, j: usize) -> Vec<Vec<Scalar>> {
        let field = self.lsop.field;
        let mut cols = Vec::new();
        if j == 0 {
            return cols;
        }
        for row in &self.lsop.rows {
            for mono in &self.bases[j - 1] {
                let single: Poly = HashMap::from([(mono.clone(), field.one())]);
                let product =
                    poly_times_one_form(&single, row, &self.lsop.vertices, self.complex, field);
                cols.push(self.coords(&product, j));
            }
        }
        cols
    }

    fn theta_matrix(&self, j: usize) -> Result<ExactMatrix> {
        ExactMatrix::from_cols(self.lsop.field, self.theta_image_cols(j)).map(|mut m| {
            if m.rows == 0 && m.cols == 0 {
                m = ExactMatrix::zeros(self.lsop.field, self.ring_dim(j), 0);
            }
            m
        })
    }

    pub fn theta_rank(&mut self, j: usize) -> Result<usize> {
        if let Some(r) = self.theta_rank[j] {
            return Ok(r);
        }
        let r = if j == 0 {
            0
        } else {
            self.theta_matrix(j)?.rank()
        };
        self.theta_rank[j] = Some(r);
        Ok(r)
    }

    /// dim (k[Δ]/Θ)_j.
    pub fn quotient_dim(&mut self, j: usize) -> Result<usize> {
        Ok(self.ring_dim(j) - self.theta_rank(j)?)
    }

    /// ω^e as coordinate columns out of the degree-i basis, reduced mod I_Δ.
    fn power_map_cols(&self, omega: &[Scalar], i: usize, e: usize) -> Vec<Vec<Scalar>> {
        let field = self.lsop.field;
        self.bases[i]
            .iter()
            .map(|mono| {
                let mut poly: Poly = HashMap::from([(mono.clone(), field.one())]);
                for _ in 0..e {
                    poly = poly_times_one_form(
                        &poly,
                        omega,
                        &self.lsop.vertices,
                        self.complex,
                        field,
                    );
                }
                self.coords(&poly, i + e)
            })
            .collect()
    }

    /// Rank of multiplication by ω^e from (k[Δ]/Θ)_i to (k[Δ]/Θ)_{i+e},
    /// computed as rank[Θ-image | ω^e·basis] − rank[Θ-image] in degree i+e.
    pub fn multiplication_rank(&mut self, omega: &[Scalar], i: usize, e: usize) -> Result<usize> {
        if e == 0 || i + e > self.d {
            return Err(Error::DegreeOutOfRange(format!(
                "multiplication by ω^{e} from degree {i} in a ring with top degree {}",
                self.d
            )));
        }
        if omega.len() != self.lsop.vertices.len() {
            return Err(Error::SizeMismatch(
                "one-form length differs from vertex support".into(),
            ));
        }
        let target = i + e;
        let base_rank = self.theta_rank(target)?;
        let theta = self.theta_matrix(target)?;
        let extra = ExactMatrix::from_cols(self.lsop.field, self.power_map_cols(omega, i, e))?;
        let extra = if extra.rows == 0 && extra.cols == 0 {
            ExactMatrix::zeros(self.lsop.field, self.ring_dim(target), 0)
        } else {
            extra
        };
        let combined = theta.hstack(&extra)?;
        Ok(combined.rank() - base_rank)
    }
}

/// dim (k[Δ]/Θ)_j for j = 0..d. Equal to the h-vector exactly when the
/// complex is Cohen–Macaulay; the comparison itself is a diagnostic.
pub fn quotient_hilbert(complex: &SimplicialComplex, lsop: &Lsop) -> Result<Vec<usize>> {
    let mut ring = QuotientRing::new(complex, lsop)?;
    (0..=ring.d).map(|j| ring.quotient_dim(j)).collect()
}

/// Rank of ω^e : (k[Δ]/Θ)_i → (k[Δ]/Θ)_{i+e}.
pub fn multiplication_rank(
    complex: &SimplicialComplex,
    lsop: &Lsop,
    omega: &[Scalar],
    i: usize,
    e: usize,
) -> Result<usize> {
    QuotientRing::new(complex, lsop)?.multiplication_rank(omega, i, e)
}

/// Degreewise ranks of multiplication by ω one degree up.
pub fn weak_lefschetz_profile(
    complex: &SimplicialComplex,
    lsop: &Lsop,
    omega: &[Scalar],
) -> Result<Vec<(usize, usize)>> {
    let mut ring = QuotientRing::new(complex, lsop)?;
    (0..ring.d)
        .map(|i| Ok((i, ring.multiplication_rank(omega, i, 1)?)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GElementCertificate {
    pub field: String,
    pub seed: u64,
    pub omega: Vec<String>,
    pub theta: Vec<Vec<String>>,
    /// Verified rank of ω^{d−2i} for each i < d/2; each equals h_i.
    pub ranks: Vec<usize>,
    /// For even d: the recorded rank of ω out of degree d/2 (diagnostic).
    pub boundary_rank: Option<usize>,
    pub h: Vec<i64>,
    pub verified: bool,
    #[serde(skip)]
    omega_scalars: Vec<Scalar>,
    #[serde(skip)]
    theta_scalars: Vec<Vec<Scalar>>,
    #[serde(skip)]
    field_spec: FieldSpec,
}

impl GElementCertificate {
    pub fn omega_scalars(&self) -> &[Scalar] {
        &self.omega_scalars
    }

    pub fn theta_scalars(&self) -> &[Vec<Scalar>] {
        &self.theta_scalars
    }

    pub fn field_spec(&self) -> FieldSpec {
        self.field_spec
    }

    /// Re-verify every recorded rank from scratch.
    pub fn verify(&self, complex: &SimplicialComplex) -> Result<bool> {
        let lsop = Lsop {
            field: self.field_spec,
            vertices: complex.vertices(),
            rows: self.theta_scalars.clone(),
        };
        let targets = required_ranks(&self.h);
        let mut ring = QuotientRing::new(complex, &lsop)?;
        if targets.len() != self.ranks.len() {
            return Ok(false);
        }
        for (i, &expected) in targets.iter().enumerate() {
            let d = self.h.len() - 1;
            let rank = ring.multiplication_rank(&self.omega_scalars, i, d - 2 * i)?;
            if rank != self.ranks[i] || rank as i64 != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lift a GF(p) certificate to Q by the symmetric residue and re-verify
    /// there. Q certificates pass through unchanged.
    pub fn lift_to_q(&self, complex: &SimplicialComplex) -> Result<GElementCertificate> {
        let lift = |s: &Scalar| -> Scalar {
            match s {
                Scalar::Q(_) => s.clone(),
                Scalar::Gf { v, p } => {
                    let signed = if *v > p / 2 {
                        *v as i64 - *p as i64
                    } else {
                        *v as i64
                    };
                    FieldSpec::Q.from_i64(signed)
                }
            }
        };
        let omega_scalars: Vec<Scalar> = self.omega_scalars.iter().map(lift).collect();
        let theta_scalars: Vec<Vec<Scalar>> = self
            .theta_scalars
            .iter()
            .map(|row| row.iter().map(lift).collect())
            .collect();
        let mut lifted = GElementCertificate {
            field: FieldSpec::Q.to_string(),
            seed: self.seed,
            omega: omega_scalars.iter().map(Scalar::display).collect(),
            theta: theta_scalars
                .iter()
                .map(|r| r.iter().map(Scalar::display).collect())
                .collect(),
            ranks: self.ranks.clone(),
            boundary_rank: self.boundary_rank,
            h: self.h.clone(),
            verified: false,
            omega_scalars,
            theta_scalars,
            field_spec: FieldSpec::Q,
        };
        lifted.verified = lifted.verify(complex)?;
        Ok(lifted)
    }
}

/// The gated indices: rank targets h_i for each i with d − 2i ≥ 1.
fn required_ranks(h: &[i64]) -> Vec<i64> {
    let d = h.len() - 1;
    (0..=d / 2).filter(|&i| d - 2 * i >= 1).map(|i| h[i]).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AttemptLog {
    pub attempt: usize,
    pub seed: u64,
    /// (i, achieved rank, target h_i) triples for the gated indices.
    pub ranks: Vec<(usize, usize, i64)>,
    pub lsop_failed: bool,
    pub success: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GSearch {
    pub certificate: Option<GElementCertificate>,
    pub attempts: Vec<AttemptLog>,
    /// Set when the input failed the Cohen–Macaulay test; the search still
    /// runs, since the rank shortfalls are themselves informative.
    pub warned_not_cm: bool,
}

/// Randomized search for a pair (ω, Θ) with every gated multiplication rank
/// equal to h_i. Each attempt derives its own seed, draws Θ through the
/// verified l.s.o.p. sampler and ω coefficientwise, and records per-index
/// ranks so failures localize.
pub fn find_g_element(
    complex: &SimplicialComplex,
    field: FieldSpec,
    attempts: usize,
    seed: u64,
) -> Result<GSearch> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    let h = complex.h_vector()?.0;
    let d = h.len() - 1;
    let targets = required_ranks(&h);
    let warned_not_cm = !homology::is_cm(complex, field)?.is_cm;
    let vertices = complex.vertices();
    let mut log = Vec::new();

    for attempt in 0..attempts {
        let attempt_seed = seed.wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let lsop = match random_lsop(complex, field, attempt_seed) {
            Ok(l) => l,
            Err(Error::LsopSearchFailed { .. }) => {
                log.push(AttemptLog {
                    attempt,
                    seed: attempt_seed,
                    ranks: Vec::new(),
                    lsop_failed: true,
                    success: false,
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(attempt_seed ^ 0x5DEE_CE66);
        let omega: Vec<Scalar> = (0..vertices.len())
            .map(|_| random_coefficient(field, &mut rng))
            .collect();

        let mut ring = QuotientRing::new(complex, &lsop)?;
        let mut ranks = Vec::new();
        let mut achieved = Vec::new();
        let mut ok = true;
        for (i, &target) in targets.iter().enumerate() {
            let rank = ring.multiplication_rank(&omega, i, d - 2 * i)?;
            achieved.push((i, rank, target));
            ranks.push(rank);
            if rank as i64 != target {
                ok = false;
            }
        }
        log.push(AttemptLog {
            attempt,
            seed: attempt_seed,
            ranks: achieved,
            lsop_failed: false,
            success: ok,
        });
        if ok {
            let boundary_rank = if d >= 2 && d % 2 == 0 {
                Some(ring.multiplication_rank(&omega, d / 2, 1)?)
            } else {
                None
            };
            let certificate = GElementCertificate {
                field: field.to_string(),
                seed: attempt_seed,
                omega: omega.iter().map(Scalar::display).collect(),
                theta: lsop
                    .rows
                    .iter()
                    .map(|r| r.iter().map(Scalar::display).collect())
                    .collect(),
                ranks,
                boundary_rank,
                h: h.clone(),
                verified: true,
                omega_scalars: omega,
                theta_scalars: lsop.rows.clone(),
                field_spec: field,
            };
            return Ok(GSearch {
                certificate: Some(certificate),
                attempts: log,
                warned_not_cm,
            });
        }
    }
    Ok(GSearch {
        certificate: None,
        attempts: log,
        warned_not_cm,
    })
}

/// The inequalities a certificate forces on the stored h-vector: h_i ≤ h_{d−i}
/// and h_i ≤ h_{i+1} for every gated index i (those with d − 2i ≥ 1).
pub fn certificate_consequences(cert: &GElementCertificate) -> bool {
    let h = &cert.h;
    let d = h.len() - 1;
    (0..=d / 2)
        .filter(|i| d - 2 * i >= 1)
        .all(|i| h[i] <= h[d - i] && h[i] <= h[i + 1])
}
