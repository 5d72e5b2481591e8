//! Balanced colorings and flag f/h-vectors.
//!
//! A (d−1)-complex is balanced when its vertices can be d-colored with every
//! face rainbow. Flag vectors refine f and h by the color set a face uses.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// Vertex coloring with colors `0..num_colors`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    map: BTreeMap<u32, u8>,
    num_colors: u8,
}

impl Coloring {
    pub fn new(pairs: impl IntoIterator<Item = (u32, u8)>) -> Self {
        let map: BTreeMap<u32, u8> = pairs.into_iter().collect();
        let num_colors = map.values().max().map(|m| m + 1).unwrap_or(0);
        Coloring { map, num_colors }
    }

    pub fn color_of(&self, v: u32) -> Option<u8> {
        self.map.get(&v).copied()
    }

    pub fn num_colors(&self) -> u8 {
        self.num_colors
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u8)> + '_ {
        self.map.iter().map(|(&v, &c)| (v, c))
    }

    /// Color set of a face as a bitmask. Errors on an uncolored vertex,
    /// `None` when some color repeats.
    pub fn color_mask(&self, face: &[u32]) -> Result<Option<u32>> {
        let mut mask = 0u32;
        for &v in face {
            let c = self.map.get(&v).ok_or(Error::MissingColor(v))?;
            let bit = 1u32 << c;
            if mask & bit != 0 {
                return Ok(None);
            }
            mask |= bit;
        }
        Ok(Some(mask))
    }
}

/// True iff the coloring is total on the vertex support, uses exactly
/// d = dim + 1 colors, and every face is rainbow.
pub fn check_balanced(complex: &SimplicialComplex, coloring: &Coloring) -> Result<bool> {
    for v in complex.vertices() {
        if coloring.color_of(v).is_none() {
            return Err(Error::MissingColor(v));
        }
    }
    let d = complex.d().unwrap_or(0);
    if d < 0 || coloring.num_colors() as i64 != d {
        return Ok(false);
    }
    for facet in complex.facets() {
        if coloring.color_mask(facet)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Δ_A: the subcomplex on vertices whose color lies in the set `a` (bitmask).
pub fn color_restriction(
    complex: &SimplicialComplex,
    coloring: &Coloring,
    a: u32,
) -> Result<SimplicialComplex> {
    let mut excluded = Vec::new();
    for v in complex.vertices() {
        let c = coloring.color_of(v).ok_or(Error::MissingColor(v))?;
        if a & (1 << c) == 0 {
            excluded.push(v);
        }
    }
    Ok(complex.deletion(&excluded))
}

/// Map from color subsets (bitmask over `0..d`) to integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagVector {
    pub d: u8,
    values: BTreeMap<u32, i64>,
}

impl FlagVector {
    pub fn zero(d: u8) -> Self {
        let values = (0u32..1 << d).map(|mask| (mask, 0)).collect();
        FlagVector { d, values }
    }

    pub fn get(&self, mask: u32) -> i64 {
        self.values.get(&mask).copied().unwrap_or(0)
    }

    pub fn set(&mut self, mask: u32, value: i64) {
        self.values.insert(mask, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.values.iter().map(|(&m, &v)| (m, v))
    }

    /// Σ over subsets of a fixed size; recovers the plain f- or h-entry.
    pub fn aggregate(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.d as usize + 1];
        for (mask, v) in self.iter() {
            out[mask.count_ones() as usize] += v;
        }
        out
    }

    /// Deterministic serialization: sorted color lists with values.
    pub fn entries(&self) -> Vec<FlagEntry> {
        self.iter()
            .map(|(mask, value)| FlagEntry {
                colors: (0..self.d).filter(|c| mask >> c & 1 == 1).collect(),
                value,
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FlagEntry {
    pub colors: Vec<u8>,
    pub value: i64,
}

/// Flag f-vector: f_A counts faces whose color set is exactly A.
pub fn flag_f(complex: &SimplicialComplex, coloring: &Coloring) -> Result<FlagVector> {
    if !check_balanced(complex, coloring)? {
        let witness: Face = complex
            .facets()
            .iter()
            .find(|f| matches!(coloring.color_mask(f), Ok(None)))
            .cloned()
            .unwrap_or_default();
        return Err(Error::NotBalanced(witness));
    }
    let d = complex.d().unwrap() as u8;
    let mut fv = FlagVector::zero(d);
    for face in complex.faces() {
        let mask = coloring
            .color_mask(&face)?
            .expect("balanced complexes have rainbow faces");
        fv.set(mask, fv.get(mask) + 1);
    }
    Ok(fv)
}

/// Flag h-vector by inclusion–exclusion: h_A = Σ_{B⊆A} (−1)^{|A−B|} f_B.
pub fn flag_h(complex: &SimplicialComplex, coloring: &Coloring) -> Result<FlagVector> {
    let f = flag_f(complex, coloring)?;
    Ok(flag_h_from_f(&f))
}

pub fn flag_h_from_f(f: &FlagVector) -> FlagVector {
    let mut h = FlagVector::zero(f.d);
    for (a, _) in f.iter() {
        let mut acc = 0i64;
        let mut b = a;
        loop {
            let sign = if (a ^ b).count_ones() % 2 == 0 { 1 } else { -1 };
            acc += sign * f.get(b);
            if b == 0 {
                break;
            }
            b = (b - 1) & a;
        }
        h.set(a, acc);
    }
    h
}

/// Möbius inversion back: f_A = Σ_{B⊆A} h_B.
pub fn flag_f_from_h(h: &FlagVector) -> FlagVector {
    let mut f = FlagVector::zero(h.d);
    for (a, _) in h.iter() {
        let mut acc = 0i64;
        let mut b = a;
        loop {
            acc += h.get(b);
            if b == 0 {
                break;
            }
            b = (b - 1) & a;
        }
        f.set(a, acc);
    }
    f
}
