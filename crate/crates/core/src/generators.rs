//! Standard example complexes with known invariants: simplex and
//! cross-polytope boundaries, joins of simplex boundaries, uniform matroid
//! independence complexes, and barycentric subdivisions of simplex
//! boundaries. Vertex numberings are canonical so emitted files are stable.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::flags::Coloring;

/// ∂Δ^d: boundary of the d-simplex on vertices 1..=d+1; h = (1, …, 1).
pub fn simplex_boundary(d: usize) -> SimplicialComplex {
    assert!(d >= 1);
    let vertices: Vec<u32> = (1..=d as u32 + 1).collect();
    let facets: Vec<Vec<u32>> = (0..=d)
        .map(|skip| {
            vertices
                .iter()
                .copied()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, v)| v)
                .collect()
        })
        .collect();
    SimplicialComplex::from_facets(facets).expect("valid labels")
}

/// Boundary of the d-dimensional cross-polytope: antipodal pairs (i, i+d),
/// one vertex from each pair per facet; h_i = C(d, i).
pub fn cross_polytope_boundary(d: usize) -> SimplicialComplex {
    assert!(d >= 1);
    let mut facets = Vec::with_capacity(1 << d);
    for mask in 0u32..1 << d {
        let facet: Vec<u32> = (0..d)
            .map(|k| {
                if mask >> k & 1 == 1 {
                    (k + 1 + d) as u32
                } else {
                    (k + 1) as u32
                }
            })
            .collect();
        facets.push(facet);
    }
    SimplicialComplex::from_facets(facets).expect("valid labels")
}

/// Join of boundaries of simplices, one per entry of `parts`; `parts[t]` is
/// the vertex count of the t-th simplex. Labels are consecutive blocks.
pub fn ps_sphere(parts: &[usize]) -> Result<SimplicialComplex> {
    if parts.is_empty() || parts.iter().any(|&p| p < 2) {
        return Err(Error::InvalidInput(
            "ps sphere needs parts of size at least 2".into(),
        ));
    }
    let mut acc = SimplicialComplex::empty();
    let mut offset = 0u32;
    for &p in parts {
        let block: Vec<Vec<u32>> = (0..p)
            .map(|skip| {
                (0..p)
                    .filter(|&i| i != skip)
                    .map(|i| offset + i as u32 + 1)
                    .collect()
            })
            .collect();
        let boundary = SimplicialComplex::from_facets(block).expect("valid labels");
        acc = acc.join(&boundary)?;
        offset += p as u32;
    }
    Ok(acc)
}

/// Independence complex of the uniform matroid U_{k,n}: all subsets of
/// 1..=n of size at most k.
pub fn uniform_matroid_complex(k: usize, n: usize) -> Result<SimplicialComplex> {
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "uniform matroid needs 1 ≤ k ≤ n, got k = {k}, n = {n}"
        )));
    }
    let mut facets = Vec::new();
    let vertices: Vec<u32> = (1..=n as u32).collect();
    fn rec(vertices: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..vertices.len() {
            cur.push(vertices[i]);
            rec(vertices, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(&vertices, k, 0, &mut Vec::new(), &mut facets);
    SimplicialComplex::from_facets(facets)
}

/// Legend mapping a vertex label to the ground subset it stands for.
pub type SubsetLegend = Vec<(u32, Vec<u32>)>;

/// First barycentric subdivision of ∂Δ^d: the order complex of proper
/// nonempty subsets of 1..=d+1, balanced by cardinality. Vertices are
/// numbered by (size, lexicographic) rank of the subset; the returned legend
/// maps vertex → subset.
pub fn barycentric_sd_simplex_boundary(
    d: usize,
) -> Result<(SimplicialComplex, Coloring, SubsetLegend)> {
    if d == 0 || d > 5 {
        return Err(Error::GuardExceeded {
            what: "barycentric subdivision dimension".into(),
            needed: d,
            limit: 5,
        });
    }
    let ground: Vec<u32> = (1..=d as u32 + 1).collect();
    let mut subsets: Vec<Vec<u32>> = Vec::new();
    for mask in 1u32..(1 << ground.len()) - 1 {
        let s: Vec<u32> = ground
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        subsets.push(s);
    }
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    let legend: Vec<(u32, Vec<u32>)> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (i as u32 + 1, s.clone()))
        .collect();
    let coloring = Coloring::new(legend.iter().map(|(v, s)| (*v, s.len() as u8 - 1)));

    // facets: maximal chains ∅ ⊂ S_1 ⊂ ⋯ ⊂ S_d of proper subsets
    let index = |s: &Vec<u32>| -> u32 {
        legend
            .iter()
            .find(|(_, t)| t == s)
            .map(|(v, _)| *v)
            .unwrap()
    };
    let mut facets = Vec::new();
    let mut chain: Vec<Vec<u32>> = Vec::new();
    fn extend(
        chain: &mut Vec<Vec<u32>>,
        ground: &[u32],
        d: usize,
        facets: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if chain.len() == d {
            facets.push(chain.clone());
            return;
        }
        let last = chain.last().cloned().unwrap_or_default();
        for &v in ground {
            if last.contains(&v) {
                continue;
            }
            let mut next = last.clone();
            next.push(v);
            next.sort_unstable();
            if next.len() <= d {
                chain.push(next);
                extend(chain, ground, d, facets);
                chain.pop();
            }
        }
    }
    let mut chains = Vec::new();
    extend(&mut chain, &ground, d, &mut chains);
    for c in chains {
        let facet: Vec<u32> = c.iter().map(&index).collect();
        facets.push(facet);
    }
    Ok((
        SimplicialComplex::from_facets(facets)?,
        coloring,
        legend,
    ))
}
