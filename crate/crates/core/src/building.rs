//! Type A_{n−1} buildings over GF(q): the order complex of proper nonzero
//! subspaces of GF(q)^n, with the chamber graph, geodesics, opposition,
//! apartments, projections, the opposite-chamber ear decomposition, and the
//! flag h-vector both by direct enumeration and by the descent-class
//! generating function h_A = Σ_{w ∈ D(A)} q^{ℓ(w)}.
//!
//! Subspaces are canonicalized by reduced row echelon form, so equality is
//! cheap and vertex numbering is stable. Chambers are complete flags; two
//! chambers are adjacent when they differ in exactly one subspace.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::ears;
use crate::error::{Error, Result};
use crate::flags::{self, Coloring, FlagVector};
use crate::homology;
use crate::linalg::{is_prime, FieldSpec};
use crate::weak_order;

/// Default ceiling on the number of chambers, keeping geodesic enumeration
/// tractable.
pub const DEFAULT_CHAMBER_GUARD: usize = 5000;

/// Arithmetic tables for GF(q), q a prime or one of 4, 8, 9.
struct SmallField {
    q: u16,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
}

impl SmallField {
    fn new(q: u16) -> Result<SmallField> {
        let elems = q as usize;
        let raw_mul: Box<dyn Fn(u8, u8) -> u8> = if is_prime(q as u64) {
            Box::new(move |a, b| ((a as u16 * b as u16) % q) as u8)
        } else if q == 4 || q == 8 {
            let poly: u16 = if q == 4 { 0b111 } else { 0b1011 };
            let bits = if q == 4 { 2 } else { 3 };
            Box::new(move |a, b| {
                let mut acc: u16 = 0;
                let mut x = a as u16;
                let mut y = b as u16;
                while y > 0 {
                    if y & 1 == 1 {
                        acc ^= x;
                    }
                    x <<= 1;
                    if x >> bits & 1 == 1 {
                        x ^= poly;
                    }
                    y >>= 1;
                }
                acc as u8
            })
        } else if q == 9 {
            // F3[x]/(x²+1), element 3a+b standing for a·x + b
            Box::new(|u, v| {
                let (a, b) = (u / 3, u % 3);
                let (c, d) = (v / 3, v % 3);
                let x_coef = (a * d + b * c) % 3;
                let const_coef = (b * d + 2 * a * c) % 3; // x² = −1 = 2
                3 * x_coef + const_coef
            })
        } else {
            return Err(Error::InvalidInput(format!(
                "GF({q}) is not available: q must be prime or one of 4, 8, 9"
            )));
        };
        let raw_add: Box<dyn Fn(u8, u8) -> u8> = if is_prime(q as u64) {
            Box::new(move |a, b| ((a as u16 + b as u16) % q) as u8)
        } else if q == 4 || q == 8 {
            Box::new(|a, b| a ^ b)
        } else {
            Box::new(|u, v| {
                let (a, b) = (u / 3, u % 3);
                let (c, d) = (v / 3, v % 3);
                3 * ((a + c) % 3) + (b + d) % 3
            })
        };
        let mut add = vec![0u8; elems * elems];
        let mut mul = vec![0u8; elems * elems];
        for a in 0..elems {
            for b in 0..elems {
                add[a * elems + b] = raw_add(a as u8, b as u8);
                mul[a * elems + b] = raw_mul(a as u8, b as u8);
            }
        }
        let mut neg = vec![0u8; elems];
        for a in 0..elems {
            neg[a] = (0..elems)
                .find(|&b| add[a * elems + b] == 0)
                .expect("additive inverse") as u8;
            // every nonzero element must be invertible
            if a != 0 {
                assert!(
                    (0..elems).any(|b| mul[a * elems + b] == 1),
                    "GF({q}) table is not a field"
                );
            }
        }
        Ok(SmallField { q, add, mul, neg })
    }

    fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
}

/// A subspace of GF(q)^n as its unique reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Subspace {
    pub rank: usize,
    /// rank × n, row major.
    pub rows: Vec<u8>,
}

impl Subspace {
    fn contains(&self, other: &Subspace, n: usize, field: &SmallField) -> bool {
        // reduce each row of `other` against this RREF basis
        let pivots: Vec<usize> = (0..self.rank)
            .map(|r| (0..n).find(|&c| self.rows[r * n + c] != 0).unwrap())
            .collect();
        for r in 0..other.rank {
            let mut row: Vec<u8> = other.rows[r * n..(r + 1) * n].to_vec();
            for (i, &p) in pivots.iter().enumerate() {
                if row[p] != 0 {
                    let factor = field.neg(row[p]);
                    for (c, entry) in row.iter_mut().enumerate() {
                        *entry = field.add(*entry, field.mul(factor, self.rows[i * n + c]));
                    }
                }
            }
            if row.iter().any(|&x| x != 0) {
                return false;
            }
        }
        true
    }
}

/// All rank-r subspaces of GF(q)^n, each enumerated once through its RREF
/// pattern: choose pivot columns, then fill the free positions.
fn enumerate_subspaces(n: usize, r: usize, field: &SmallField) -> Vec<Subspace> {
    let mut out = Vec::new();
    for pivots in index_combinations(n, r) {
        // free positions: to the right of the row's pivot, not a pivot column
        let mut free = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            for c in p + 1..n {
                if !pivots.contains(&c) {
                    free.push((row, c));
                }
            }
        }
        let q = field.q as usize;
        let total = q.pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![0u8; r * n];
            for (row, &p) in pivots.iter().enumerate() {
                rows[row * n + p] = 1;
            }
            let mut rem = code;
            for &(row, c) in &free {
                rows[row * n + c] = (rem % q) as u8;
                rem /= q;
            }
            out.push(Subspace { rank: r, rows });
        }
    }
    out.sort();
    out
}

fn index_combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, r, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 0, &mut Vec::new(), &mut out);
    out
}

/// [k]_q = 1 + q + ⋯ + q^{k−1}.
fn q_int(k: usize, q: u64) -> u64 {
    (0..k).map(|t| q.pow(t as u32)).sum()
}

/// Number of complete flags in GF(q)^n: the q-factorial Π_{k=2}^n [k]_q.
pub fn flag_count(n: usize, q: u64) -> u64 {
    (2..=n).map(|k| q_int(k, q)).product()
}

#[derive(Clone, Debug)]
pub struct Apartment {
    /// Chamber indices lying on some geodesic between the defining pair.
    pub chambers: Vec<usize>,
    pub complex: SimplicialComplex,
}

#[derive(Clone, Debug)]
pub struct BuildingEars {
    pub base: usize,
    pub opposite_order: Vec<usize>,
    pub ears: Vec<SimplicialComplex>,
    pub report: ears::EarReport,
}

pub struct Building {
    pub n: usize,
    pub q: u16,
    pub complex: SimplicialComplex,
    pub coloring: Coloring,
    subspaces: Vec<Subspace>,
    chambers: Vec<Face>,
    adjacency: Vec<Vec<usize>>,
}

impl Building {
    /// Construct the building of type A_{n−1} over GF(q). The chamber count
    /// is verified against the q-factorial before and after construction.
    pub fn build(n: usize, q: u16, chamber_guard: usize) -> Result<Building> {
        if !(2..=4).contains(&n) {
            return Err(Error::InvalidInput(format!(
                "building rank n must be 2, 3, or 4, got {n}"
            )));
        }
        let field = SmallField::new(q)?;
        let expected_chambers = flag_count(n, q as u64);
        if expected_chambers as usize > chamber_guard {
            return Err(Error::GuardExceeded {
                what: format!("chambers of the A_{}(q = {q}) building", n - 1),
                needed: expected_chambers as usize,
                limit: chamber_guard,
            });
        }
        // independent route: Σ_A h_A = Σ_w q^{ℓ(w)} over the Weyl group
        let by_descents: i64 = flag_h_formula(n, q as u64)?.iter().map(|(_, v)| v).sum();
        if by_descents != expected_chambers as i64 {
            return Err(Error::InvalidInput(format!(
                "q-factorial gives {expected_chambers} chambers, descent sum gives {by_descents}"
            )));
        }

        // vertices: proper nonzero subspaces ordered by (rank, rref)
        let mut subspaces = Vec::new();
        for r in 1..n {
            subspaces.extend(enumerate_subspaces(n, r, &field));
        }
        let vertex_of = |s: &Subspace, list: &[Subspace]| -> u32 {
            list.binary_search(s).expect("enumerated subspace") as u32 + 1
        };

        // chambers: complete flags, found by extending one rank at a time
        let by_rank: Vec<Vec<&Subspace>> = (1..n)
            .map(|r| subspaces.iter().filter(|s| s.rank == r).collect())
            .collect();
        let mut flags: Vec<Vec<&Subspace>> = by_rank[0].iter().map(|&s| vec![s]).collect();
        for level in by_rank.iter().skip(1) {
            let mut next = Vec::new();
            for flag in &flags {
                let top = *flag.last().unwrap();
                for &candidate in level {
                    if candidate.contains(top, n, &field) {
                        let mut extended = flag.clone();
                        extended.push(candidate);
                        next.push(extended);
                    }
                }
            }
            flags = next;
        }
        if flags.len() as u64 != expected_chambers {
            return Err(Error::InvalidInput(format!(
                "flag enumeration found {} chambers, q-factorial predicts {}",
                flags.len(),
                expected_chambers
            )));
        }

        let facets: Vec<Face> = flags
            .iter()
            .map(|flag| {
                let mut f: Face = flag.iter().map(|s| vertex_of(s, &subspaces)).collect();
                f.sort_unstable();
                f
            })
            .collect();
        let complex = SimplicialComplex::from_facets(facets)?;
        let chambers: Vec<Face> = complex.facets().iter().cloned().collect();
        if chambers.len() as u64 != expected_chambers {
            return Err(Error::InvalidInput("duplicate flags collapsed".into()));
        }

        let coloring = Coloring::new(
            subspaces
                .iter()
                .enumerate()
                .map(|(i, s)| (i as u32 + 1, s.rank as u8 - 1)),
        );

        // panels index chamber adjacency; each panel lies in exactly q+1
        // chambers
        let mut panel_map: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
        for (ci, chamber) in chambers.iter().enumerate() {
            for skip in 0..chamber.len() {
                let mut panel = chamber.clone();
                panel.remove(skip);
                panel_map.entry(panel).or_default().push(ci);
            }
        }
        let mut adjacency = vec![Vec::new(); chambers.len()];
        for cs in panel_map.values() {
            if cs.len() != q as usize + 1 {
                return Err(Error::InvalidInput(format!(
                    "panel lies in {} chambers, expected q + 1 = {}",
                    cs.len(),
                    q + 1
                )));
            }
            for &a in cs {
                for &b in cs {
                    if a != b {
                        adjacency[a].push(b);
                    }
                }
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
            adj.dedup();
        }

        Ok(Building {
            n,
            q,
            complex,
            coloring,
            subspaces,
            chambers,
            adjacency,
        })
    }

    pub fn chamber_count(&self) -> usize {
        self.chambers.len()
    }

    pub fn chambers(&self) -> &[Face] {
        &self.chambers
    }

    pub fn chamber_index(&self, face: &Face) -> Option<usize> {
        self.chambers.binary_search(face).ok()
    }

    fn bfs(&self, from: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.chambers.len()];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(c) = queue.pop_front() {
            for &next in &self.adjacency[c] {
                if dist[next] == u32::MAX {
                    dist[next] = dist[c] + 1;
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    /// Gallery distance in the chamber graph.
    pub fn distance(&self, from: usize, to: usize) -> u32 {
        self.bfs(from)[to]
    }

    /// ℓ(w₀) for A_{n−1}: the expected chamber-graph diameter.
    pub fn expected_diameter(&self) -> u32 {
        (self.n * (self.n - 1) / 2) as u32
    }

    /// All minimal galleries between two chambers, enumerated exhaustively.
    pub fn geodesics(&self, from: usize, to: usize, guard: usize) -> Result<Vec<Vec<usize>>> {
        let dist_to = self.bfs(to);
        let mut out = Vec::new();
        let mut path = vec![from];
        fn rec(
            b: &Building,
            dist_to: &[u32],
            path: &mut Vec<usize>,
            to: usize,
            out: &mut Vec<Vec<usize>>,
            guard: usize,
        ) -> Result<()> {
            let cur = *path.last().unwrap();
            if cur == to {
                if out.len() >= guard {
                    return Err(Error::GuardExceeded {
                        what: "geodesic enumeration".into(),
                        needed: out.len() + 1,
                        limit: guard,
                    });
                }
                out.push(path.clone());
                return Ok(());
            }
            for &next in &b.adjacency[cur] {
                if dist_to[next] + 1 == dist_to[cur] {
                    path.push(next);
                    rec(b, dist_to, path, to, out, guard)?;
                    path.pop();
                }
            }
            Ok(())
        }
        rec(self, &dist_to, &mut path, to, &mut out, guard)?;
        Ok(out)
    }

    /// Chambers maximally distant from `from`. The maximum is checked against
    /// ℓ(w₀).
    pub fn opposite_chambers(&self, from: usize) -> Vec<usize> {
        let dist = self.bfs(from);
        let max = *dist.iter().max().unwrap();
        debug_assert_eq!(max, self.expected_diameter());
        (0..self.chambers.len())
            .filter(|&c| dist[c] == max)
            .collect()
    }

    /// The unique apartment containing an opposite pair: the union of all
    /// geodesics between them. Verified to have n! chambers and the homology
    /// of a sphere of the right dimension.
    pub fn apartment_of(&self, base: usize, opposite: usize) -> Result<Apartment> {
        let dist_from = self.bfs(base);
        let dist_to = self.bfs(opposite);
        let diameter = self.expected_diameter();
        if dist_from[opposite] != diameter {
            return Err(Error::NotOpposite);
        }
        let chambers: Vec<usize> = (0..self.chambers.len())
            .filter(|&c| dist_from[c] + dist_to[c] == diameter)
            .collect();
        let expected: usize = (1..=self.n).product();
        if chambers.len() != expected {
            return Err(Error::InvalidInput(format!(
                "apartment has {} chambers, the Coxeter complex has {}",
                chambers.len(),
                expected
            )));
        }
        let complex = SimplicialComplex::from_facets(
            chambers.iter().map(|&c| self.chambers[c].clone()),
        )?;
        if !homology::is_homology_sphere(&complex, FieldSpec::Q)? {
            return Err(Error::InvalidInput(
                "apartment is not a homology sphere".into(),
            ));
        }
        Ok(Apartment { chambers, complex })
    }

    /// The projection p_ρ(τ): the unique chamber containing ρ nearest to τ.
    /// Uniqueness of the nearest chamber is verified, not assumed.
    pub fn projection(&self, rho: &Face, tau: usize) -> Result<usize> {
        if rho.is_empty() {
            return Err(Error::InvalidInput(
                "projection needs a nonempty face".into(),
            ));
        }
        if !self.complex.contains_face(rho) {
            return Err(Error::FaceNotInComplex(rho.clone()));
        }
        let dist = self.bfs(tau);
        let carriers: Vec<usize> = (0..self.chambers.len())
            .filter(|&c| crate::complex::is_subset(rho, &self.chambers[c]))
            .collect();
        let best = carriers.iter().map(|&c| dist[c]).min().unwrap();
        let nearest: Vec<usize> = carriers.into_iter().filter(|&c| dist[c] == best).collect();
        if nearest.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "projection is not unique: {} nearest chambers",
                nearest.len()
            )));
        }
        Ok(nearest[0])
    }

    /// The opposite-chamber ear decomposition: Δ₁ is the first apartment,
    /// and each later Δ_j is the closure of the chambers of Σ_j lying in no
    /// earlier apartment. The result is verified as a convex ear
    /// decomposition (homological reading) before it is returned.
    pub fn ear_decomposition(&self, base: usize, order: &[usize]) -> Result<BuildingEars> {
        let opposites = self.opposite_chambers(base);
        {
            let mut sorted = order.to_vec();
            sorted.sort_unstable();
            if sorted != opposites {
                return Err(Error::InvalidInput(
                    "order must be a permutation of the opposite chambers".into(),
                ));
            }
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut ear_complexes = Vec::new();
        for (j, &opp) in order.iter().enumerate() {
            let apartment = self.apartment_of(base, opp)?;
            let fresh: Vec<Face> = apartment
                .chambers
                .iter()
                .filter(|c| !seen.contains(c))
                .map(|&c| self.chambers[c].clone())
                .collect();
            if j == 0 {
                ear_complexes.push(apartment.complex.clone());
            } else {
                if fresh.is_empty() {
                    return Err(Error::InvalidInput(format!(
                        "apartment {j} contributes no new chambers"
                    )));
                }
                ear_complexes.push(SimplicialComplex::from_facets(fresh)?);
            }
            seen.extend(apartment.chambers.iter().copied());
        }
        let report = ears::verify(&self.complex, &ear_complexes, FieldSpec::Q)?;
        if !report.pass {
            return Err(Error::InvalidInput(format!(
                "ear decomposition failed verification: {}",
                report.summary()
            )));
        }
        Ok(BuildingEars {
            base,
            opposite_order: order.to_vec(),
            ears: ear_complexes,
            report,
        })
    }

    /// Flag h by direct face enumeration on the colored complex.
    pub fn flag_h_direct(&self) -> Result<FlagVector> {
        flags::flag_h(&self.complex, &self.coloring)
    }

    /// Export the vertex legend: vertex → (rank, basis rows).
    pub fn vertex_legend(&self) -> Vec<VertexLegend> {
        self.subspaces
            .iter()
            .enumerate()
            .map(|(i, s)| VertexLegend {
                vertex: i as u32 + 1,
                rank: s.rank,
                basis: (0..s.rank)
                    .map(|r| s.rows[r * self.n..(r + 1) * self.n].to_vec())
                    .collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexLegend {
    pub vertex: u32,
    pub rank: usize,
    pub basis: Vec<Vec<u8>>,
}

/// Flag h from the descent-class generating function: h_A = Σ_{w ∈ D(A)}
/// q^{ℓ(w)}, colors 0..n−2 standing for the adjacent transpositions 1..n−1.
/// q = 1 degenerates to descent-class sizes, the Coxeter complex counts.
pub fn flag_h_formula(n: usize, q: u64) -> Result<FlagVector> {
    if n < 2 {
        return Err(Error::InvalidInput("rank must be at least 2".into()));
    }
    let classes = weak_order::descent_classes(n, weak_order::DEFAULT_RANK_GUARD)?;
    let mut fv = FlagVector::zero(n as u8 - 1);
    for (mask, class) in classes {
        let total: u64 = class.iter().map(|w| q.pow(w.length())).sum();
        fv.set(mask, total as i64);
    }
    Ok(fv)
}
