//! Abstract simplicial complexes stored by their facets.
//!
//! Faces are sorted vectors of positive integer vertex labels. The complex
//! consisting of only the empty face is the *empty complex*; the complex with
//! no faces at all is the *void complex*. The two are distinct values: the
//! empty complex has f-vector `(1)`, the void complex has no f-vector.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A face: sorted, duplicate-free vertex labels (1-based).
pub type Face = Vec<u32>;

/// Normalize a vertex list into a face. Errors on the 0 label.
pub fn normalize_face(vertices: &[u32]) -> Result<Face> {
    if vertices.contains(&0) {
        return Err(Error::BadVertexLabel);
    }
    let set: BTreeSet<u32> = vertices.iter().copied().collect();
    Ok(set.into_iter().collect())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    /// Inclusion-maximal faces. Empty set = void complex; `{∅}` = empty complex.
    facets: BTreeSet<Face>,
}

impl SimplicialComplex {
    /// The void complex: no faces at all, not even the empty face.
    pub fn void() -> Self {
        SimplicialComplex {
            facets: BTreeSet::new(),
        }
    }

    /// The empty complex `{∅}`.
    pub fn empty() -> Self {
        let mut facets = BTreeSet::new();
        facets.insert(Vec::new());
        SimplicialComplex { facets }
    }

    /// Build a complex from a list of generating faces. Non-maximal and
    /// duplicate entries are absorbed. An empty list yields the void complex.
    pub fn from_facets<I, F>(list: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[u32]>,
    {
        let mut candidates: Vec<Face> = Vec::new();
        for f in list {
            candidates.push(normalize_face(f.as_ref())?);
        }
        let mut facets: BTreeSet<Face> = BTreeSet::new();
        for c in &candidates {
            let dominated = candidates
                .iter()
                .any(|other| other.len() > c.len() && is_subset(c, other));
            if !dominated {
                facets.insert(c.clone());
            }
        }
        Ok(SimplicialComplex { facets })
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// True for the complex whose only face is the empty face.
    pub fn is_empty_complex(&self) -> bool {
        self.facets.len() == 1 && self.facets.iter().next().unwrap().is_empty()
    }

    pub fn facets(&self) -> &BTreeSet<Face> {
        &self.facets
    }

    /// Vertex support: every label that occurs in a facet, sorted.
    pub fn vertices(&self) -> Vec<u32> {
        let mut set = BTreeSet::new();
        for f in &self.facets {
            set.extend(f.iter().copied());
        }
        set.into_iter().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    /// Dimension: max facet cardinality − 1. `None` for the void complex,
    /// `Some(-1)` for the empty complex.
    pub fn dim(&self) -> Option<i64> {
        self.facets
            .iter()
            .map(|f| f.len() as i64 - 1)
            .max()
    }

    /// d = dim + 1, the maximal face cardinality.
    pub fn d(&self) -> Option<i64> {
        self.dim().map(|x| x + 1)
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    pub fn is_pure(&self) -> bool {
        let mut sizes = self.facets.iter().map(|f| f.len());
        match sizes.next() {
            None => true,
            Some(first) => sizes.all(|s| s == first),
        }
    }

    /// Every face of the complex, including the empty face, by expansion from
    /// the facets with deduplication.
    pub fn faces(&self) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for sub in subsets(f) {
                out.insert(sub);
            }
        }
        out
    }

    pub fn faces_of_card(&self, card: usize) -> Vec<Face> {
        self.faces().into_iter().filter(|f| f.len() == card).collect()
    }

    /// Exact face counts by cardinality. Errors on the void complex.
    pub fn f_vector(&self) -> Result<FVector> {
        if self.is_void() {
            return Err(Error::VoidComplex);
        }
        let d = self.d().unwrap() as usize;
        let mut counts = vec![0i64; d + 1];
        for face in self.faces() {
            counts[face.len()] += 1;
        }
        Ok(FVector(counts))
    }

    pub fn h_vector(&self) -> Result<HVector> {
        Ok(h_vector(&self.f_vector()?))
    }

    /// lk(σ) = { τ : τ ∩ σ = ∅, τ ∪ σ ∈ Δ }. Errors if σ ∉ Δ.
    pub fn link(&self, sigma: &[u32]) -> Result<SimplicialComplex> {
        let sigma = normalize_face(sigma)?;
        if !self.contains_face(&sigma) {
            return Err(Error::FaceNotInComplex(sigma));
        }
        let mut facets = BTreeSet::new();
        for f in &self.facets {
            if is_subset(&sigma, f) {
                facets.insert(set_difference(f, &sigma));
            }
        }
        Ok(SimplicialComplex { facets })
    }

    /// Δ − A: every face meeting A removed.
    pub fn deletion(&self, removed: &[u32]) -> SimplicialComplex {
        if self.is_void() {
            return SimplicialComplex::void();
        }
        let removed: BTreeSet<u32> = removed.iter().copied().collect();
        let stripped: Vec<Face> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|v| !removed.contains(v)).collect())
            .collect();
        let mut facets = BTreeSet::new();
        for c in &stripped {
            let dominated = stripped
                .iter()
                .any(|other| other.len() > c.len() && is_subset(c, other));
            if !dominated {
                facets.insert(c.clone());
            }
        }
        SimplicialComplex { facets }
    }

    /// Join: all unions of a face of `self` with a face of `other`.
    /// Vertex supports must be disjoint. Join with the void complex is void.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let mine: BTreeSet<u32> = self.vertices().into_iter().collect();
        if other.vertices().iter().any(|v| mine.contains(v)) {
            return Err(Error::NotDisjoint);
        }
        let mut facets = BTreeSet::new();
        for a in &self.facets {
            for b in &other.facets {
                let mut u = a.clone();
                u.extend(b.iter().copied());
                u.sort_unstable();
                facets.insert(u);
            }
        }
        Ok(SimplicialComplex { facets })
    }

}

/// Face-count vector: entry `i` counts faces of cardinality `i`; `f_0 = 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FVector(pub Vec<i64>);

/// h-vector, the linear transform of the f-vector below.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HVector(pub Vec<i64>);

impl FVector {
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }
}

impl HVector {
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    /// Number of facets of a pure complex: Σ h_i = f_d.
    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

pub(crate) fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as i128 / (t + 1) as i128;
    }
    acc as i64
}

/// h_i = Σ_{j≤i} (−1)^{i−j} C(d−j, d−i) f_j.
pub fn h_vector(f: &FVector) -> HVector {
    let d = f.d() as i64;
    let mut h = vec![0i64; f.0.len()];
    for i in 0..=d {
        let mut acc = 0i64;
        for j in 0..=i {
            let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
            acc += sign * binom(d - j, d - i) * f.0[j as usize];
        }
        h[i as usize] = acc;
    }
    HVector(h)
}

/// f_j = Σ_{i≤j} C(d−i, d−j) h_i; inverse of [`h_vector`].
pub fn f_from_h(h: &HVector, d: usize) -> FVector {
    let d = d as i64;
    let mut f = vec![0i64; (d + 1) as usize];
    for j in 0..=d {
        let mut acc = 0i64;
        for i in 0..=j {
            acc += binom(d - i, d - j) * h.0.get(i as usize).copied().unwrap_or(0);
        }
        f[j as usize] = acc;
    }
    FVector(f)
}

/// Generalized short simplicial h-vector: entry i is Σ over cardinality-m
/// faces σ of h_i(lk σ). Requires a pure complex.
pub fn short_h(complex: &SimplicialComplex, m: usize) -> Result<Vec<i64>> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    let d = complex.d().unwrap() as usize;
    if m > d {
        return Err(Error::DegreeOutOfRange(format!("m = {m} exceeds d = {d}")));
    }
    let mut out = vec![0i64; d - m + 1];
    for sigma in complex.faces_of_card(m) {
        let link = complex.link(&sigma)?;
        let h = link.h_vector()?;
        for (i, v) in h.0.iter().enumerate() {
            out[i] += v;
        }
    }
    Ok(out)
}

pub(crate) fn is_subset(a: &[u32], b: &[u32]) -> bool {
    // both sorted
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

pub(crate) fn set_difference(a: &[u32], b: &[u32]) -> Face {
    a.iter().copied().filter(|v| !b.contains(v)).collect()
}

fn subsets(face: &[u32]) -> Vec<Face> {
    let n = face.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u64..(1u64 << n) {
        let mut s = Vec::new();
        for (i, v) in face.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.push(*v);
            }
        }
        out.push(s);
    }
    out
}
