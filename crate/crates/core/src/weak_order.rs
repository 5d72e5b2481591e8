//! The weak (Bruhat) order on the symmetric group via inversion-set
//! containment, descent classes, dominance between descent classes decided by
//! bipartite matching, and exhaustive small-rank solvers for the injection
//! and bijection questions between unions of descent classes.
//!
//! A dihedral variant ships alongside: elements of I_2(m) keyed by reduced
//! word length, with the weak order computed from length-additive paths.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on the symmetric group rank for exhaustive enumeration.
pub const DEFAULT_RANK_GUARD: usize = 9;

/// One-line permutation of 1..=n with cached inversion data.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    word: Vec<u8>,
    inv_mask: u64,
}

impl Permutation {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        if n > 11 {
            return Err(Error::GuardExceeded {
                what: "permutation rank".into(),
                needed: n,
                limit: 11,
            });
        }
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x as usize > n || seen[x as usize] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation of 1..={n}: {word:?}"
                )));
            }
            seen[x as usize] = true;
        }
        let inv_mask = inversion_mask(&word);
        Ok(Permutation { word, inv_mask })
    }

    pub fn identity(n: usize) -> Self {
        Permutation::new((1..=n as u8).collect()).expect("identity is a permutation")
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.word
    }

    /// inv(π) = {(i, j) : i < j, π⁻¹(i) > π⁻¹(j)} as value pairs.
    pub fn inversion_set(&self) -> Vec<(u8, u8)> {
        let n = self.word.len() as u8;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.inv_mask >> pair_index(i, j, n) & 1 == 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn inversion_mask(&self) -> u64 {
        self.inv_mask
    }

    pub fn length(&self) -> u32 {
        self.inv_mask.count_ones()
    }

    /// des(π) = {i : π(i) > π(i+1)} as a bitmask with bit i−1 set.
    pub fn descent_mask(&self) -> u32 {
        let mut mask = 0u32;
        for i in 0..self.word.len() - 1 {
            if self.word[i] > self.word[i + 1] {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn descent_set(&self) -> Vec<u8> {
        mask_to_positions(self.descent_mask())
    }
}

fn pair_index(i: u8, j: u8, n: u8) -> u32 {
    // pairs (i, j), 1 ≤ i < j ≤ n, in lexicographic order
    let i = (i - 1) as u32;
    let j = (j - 1) as u32;
    let n = n as u32;
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn inversion_mask(word: &[u8]) -> u64 {
    let n = word.len() as u8;
    let mut pos = vec![0u8; n as usize + 1];
    for (p, &v) in word.iter().enumerate() {
        pos[v as usize] = p as u8;
    }
    let mut mask = 0u64;
    for i in 1..=n {
        for j in i + 1..=n {
            if pos[i as usize] > pos[j as usize] {
                mask |= 1 << pair_index(i, j, n);
            }
        }
    }
    mask
}

/// Positions named by a bitmask, 1-based.
pub fn mask_to_positions(mask: u32) -> Vec<u8> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

pub fn positions_to_mask(positions: &[u8]) -> u32 {
    positions.iter().map(|&p| 1u32 << (p - 1)).sum()
}

/// π ≤ π′ in the weak order: containment of inversion sets.
pub fn weak_le(a: &Permutation, b: &Permutation) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(format!(
            "rank {} vs rank {}",
            a.n(),
            b.n()
        )));
    }
    Ok(a.inv_mask & !b.inv_mask == 0)
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut word: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::new(word.clone()).unwrap());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| word[i] < word[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| word[j] > word[i]).unwrap();
        word.swap(i, j);
        word[i + 1..].reverse();
    }
    out
}

fn check_rank(n: usize, guard: usize) -> Result<()> {
    if n > guard {
        return Err(Error::GuardExceeded {
            what: "symmetric group enumeration".into(),
            needed: n,
            limit: guard,
        });
    }
    if n == 0 {
        return Err(Error::InvalidInput("rank must be at least 1".into()));
    }
    Ok(())
}

/// Every descent class at once, keyed by descent bitmask.
pub fn descent_classes(n: usize, guard: usize) -> Result<BTreeMap<u32, Vec<Permutation>>> {
    check_rank(n, guard)?;
    let mut out: BTreeMap<u32, Vec<Permutation>> = BTreeMap::new();
    for mask in 0..1u32 << (n - 1) {
        out.insert(mask, Vec::new());
    }
    for p in all_permutations(n) {
        out.get_mut(&p.descent_mask()).unwrap().push(p);
    }
    Ok(out)
}

/// D(A) = { π ∈ S_n : des(π) = A }, enumerated exhaustively.
pub fn descent_class(a: &[u8], n: usize, guard: usize) -> Result<Vec<Permutation>> {
    check_rank(n, guard)?;
    let mask = positions_to_mask(a);
    if a.iter().any(|&p| p == 0 || p as usize >= n) {
        return Err(Error::InvalidInput(format!(
            "descent positions must lie in 1..={}",
            n - 1
        )));
    }
    Ok(all_permutations(n)
        .into_iter()
        .filter(|p| p.descent_mask() == mask)
        .collect())
}

/// Everything dominance needs to report: the verdict plus the injection
/// witness (pairs π ∈ D(B) ↦ ψ(π) ∈ D(A)) when one exists.
#[derive(Clone, Debug)]
pub struct DominanceResult {
    pub dominates: bool,
    pub class_a_size: usize,
    pub class_b_size: usize,
    pub injection: Option<Vec<(Permutation, Permutation)>>,
}

/// A dominates B: some injection ψ : D(B) ↪ D(A) with π ≤ ψ(π) for all π.
/// Decided by maximum bipartite matching on the weak-order comparability
/// graph.
pub fn dominates(a: &[u8], b: &[u8], n: usize, guard: usize) -> Result<DominanceResult> {
    let class_a = descent_class(a, n, guard)?;
    let class_b = descent_class(b, n, guard)?;
    let adjacency: Vec<Vec<usize>> = class_b
        .iter()
        .map(|pi| {
            class_a
                .iter()
                .enumerate()
                .filter(|(_, tau)| weak_le(pi, tau).unwrap())
                .map(|(t, _)| t)
                .collect()
        })
        .collect();
    let matching = bipartite_matching(&adjacency, class_a.len());
    let matched = matching.iter().filter(|m| m.is_some()).count();
    let dominates = matched == class_b.len();
    let injection = dominates.then(|| {
        matching
            .iter()
            .enumerate()
            .map(|(bi, ai)| (class_b[bi].clone(), class_a[ai.unwrap()].clone()))
            .collect()
    });
    Ok(DominanceResult {
        dominates,
        class_a_size: class_a.len(),
        class_b_size: class_b.len(),
        injection,
    })
}

/// Kuhn's augmenting-path maximum matching. `adjacency[l]` lists right
/// vertices reachable from left vertex `l`; returns the left-to-right
/// assignment.
pub fn bipartite_matching(adjacency: &[Vec<usize>], right_size: usize) -> Vec<Option<usize>> {
    let mut right_owner: Vec<Option<usize>> = vec![None; right_size];
    let mut left_match: Vec<Option<usize>> = vec![None; adjacency.len()];
    for start in 0..adjacency.len() {
        let mut seen = vec![false; right_size];
        augment(start, adjacency, &mut right_owner, &mut seen);
    }
    for (r, owner) in right_owner.iter().enumerate() {
        if let Some(l) = owner {
            left_match[*l] = Some(r);
        }
    }
    left_match
}

fn augment(
    l: usize,
    adjacency: &[Vec<usize>],
    right_owner: &mut Vec<Option<usize>>,
    seen: &mut Vec<bool>,
) -> bool {
    for &r in &adjacency[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if right_owner[r].is_none() || augment(right_owner[r].unwrap(), adjacency, right_owner, seen)
        {
            right_owner[r] = Some(l);
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, Serialize)]
pub enum ProblemReport {
    /// All ordered pairs (A, B) with A dominating B.
    DominatingPairs { pairs: Vec<(Vec<u8>, Vec<u8>)> },
    /// Injection from i-subsets to (i+1)-subsets with ι(B) dominating B.
    SubsetInjection {
        exists: bool,
        assignment: Option<Vec<(Vec<u8>, Vec<u8>)>>,
    },
    /// Injection α : ∪_{|B|=i} D(B) ↪ ∪_{|A|=i+1} D(A) with w < α(w).
    ElementInjection {
        exists: bool,
        left_size: usize,
        right_size: usize,
        assignment: Option<Vec<(Vec<u8>, Vec<u8>)>>,
    },
    /// Bijection β : ∪_{|B|=i} D(B) → ∪_{|A|=d−i} D(A) with w < β(w).
    ElementBijection {
        exists: bool,
        left_size: usize,
        right_size: usize,
        assignment: Option<Vec<(Vec<u8>, Vec<u8>)>>,
    },
}

fn subsets_of_size(n_positions: usize, size: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let positions: Vec<u8> = (1..=n_positions as u8).collect();
    fn rec(positions: &[u8], size: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..positions.len() {
            cur.push(positions[i]);
            rec(positions, size, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(&positions, size, 0, &mut Vec::new(), &mut out);
    out
}

fn union_of_classes(n: usize, size: usize, guard: usize) -> Result<Vec<Permutation>> {
    check_rank(n, guard)?;
    Ok(all_permutations(n)
        .into_iter()
        .filter(|p| p.descent_mask().count_ones() as usize == size)
        .collect())
}

/// The four exhaustive small-rank questions about descent classes in S_n
/// (d = n − 1 is the number of adjacent transpositions).
pub fn solve_problem(kind: u8, n: usize, i: usize, guard: usize) -> Result<ProblemReport> {
    check_rank(n, guard)?;
    let d = n - 1;
    match kind {
        1 => {
            let subsets: Vec<Vec<u8>> = (0..=d)
                .flat_map(|s| subsets_of_size(d, s))
                .collect();
            let mut pairs = Vec::new();
            for a in &subsets {
                for b in &subsets {
                    if dominates(a, b, n, guard)?.dominates {
                        pairs.push((a.clone(), b.clone()));
                    }
                }
            }
            Ok(ProblemReport::DominatingPairs { pairs })
        }
        2 => {
            let left = subsets_of_size(d, i);
            let right = subsets_of_size(d, i + 1);
            let adjacency: Vec<Vec<usize>> = left
                .iter()
                .map(|b| {
                    right
                        .iter()
                        .enumerate()
                        .filter(|(_, a)| dominates(a, b, n, guard).unwrap().dominates)
                        .map(|(t, _)| t)
                        .collect()
                })
                .collect();
            let matching = bipartite_matching(&adjacency, right.len());
            let exists = matching.iter().all(|m| m.is_some());
            let assignment = exists.then(|| {
                matching
                    .iter()
                    .enumerate()
                    .map(|(l, r)| (left[l].clone(), right[r.unwrap()].clone()))
                    .collect()
            });
            Ok(ProblemReport::SubsetInjection { exists, assignment })
        }
        3 | 4 => {
            let left = union_of_classes(n, i, guard)?;
            let right_size_of_descents = if kind == 3 { i + 1 } else { d - i };
            let right = union_of_classes(n, right_size_of_descents, guard)?;
            let adjacency: Vec<Vec<usize>> = left
                .iter()
                .map(|w| {
                    right
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| w != *v && weak_le(w, v).unwrap())
                        .map(|(t, _)| t)
                        .collect()
                })
                .collect();
            let matching = bipartite_matching(&adjacency, right.len());
            let matched = matching.iter().filter(|m| m.is_some()).count();
            let exists = if kind == 3 {
                matched == left.len()
            } else {
                matched == left.len() && left.len() == right.len()
            };
            let assignment = exists.then(|| {
                matching
                    .iter()
                    .enumerate()
                    .map(|(l, r)| {
                        (
                            left[l].one_line().to_vec(),
                            right[r.unwrap()].one_line().to_vec(),
                        )
                    })
                    .collect()
            });
            if kind == 3 {
                Ok(ProblemReport::ElementInjection {
                    exists,
                    left_size: left.len(),
                    right_size: right.len(),
                    assignment,
                })
            } else {
                Ok(ProblemReport::ElementBijection {
                    exists,
                    left_size: left.len(),
                    right_size: right.len(),
                    assignment,
                })
            }
        }
        _ => Err(Error::InvalidInput(format!("unknown problem kind {kind}"))),
    }
}

// ---------------------------------------------------------------------------
// Dihedral groups I_2(m)
// ---------------------------------------------------------------------------

/// The dihedral group of order 2m with generators s, t, elements indexed
/// 0..2m. Lengths and the weak order come from breadth-first search over
/// length-increasing right multiplication.
pub struct Dihedral {
    pub m: u32,
    /// element id → (rotation offset, reflection flag)
    elems: Vec<(u32, bool)>,
    index: BTreeMap<(u32, bool), usize>,
    lengths: Vec<u32>,
    /// right multiplication by s and by t
    right: Vec<[usize; 2]>,
}

impl Dihedral {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("dihedral order parameter m ≥ 2".into()));
        }
        let mut elems = Vec::new();
        let mut index = BTreeMap::new();
        for refl in [false, true] {
            for a in 0..m {
                index.insert((a, refl), elems.len());
                elems.push((a, refl));
            }
        }
        // s: x ↦ −x ; t: x ↦ 1 − x ; compose acting on Z_m
        let compose = |g: (u32, bool), h: (u32, bool)| -> (u32, bool) {
            let (a, e) = g;
            let (b, f) = h;
            if !e {
                (((a + b) % m), f)
            } else {
                (((a + m - b % m) % m), !f)
            }
        };
        let s = (0u32, true);
        let t = (1u32, true);
        let right: Vec<[usize; 2]> = elems
            .iter()
            .map(|&g| [index[&compose(g, s)], index[&compose(g, t)]])
            .collect();
        // BFS from the identity for lengths
        let id = index[&(0, false)];
        let mut lengths = vec![u32::MAX; elems.len()];
        lengths[id] = 0;
        let mut queue = std::collections::VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for &h in &right[g] {
                if lengths[h] == u32::MAX {
                    lengths[h] = lengths[g] + 1;
                    queue.push_back(h);
                }
            }
        }
        Ok(Dihedral {
            m,
            elems,
            index,
            lengths,
            right,
        })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn length(&self, g: usize) -> u32 {
        self.lengths[g]
    }

    pub fn identity(&self) -> usize {
        self.index[&(0, false)]
    }

    /// Right descents: generators shortening the element.
    pub fn descent_mask(&self, g: usize) -> u32 {
        let mut mask = 0;
        for (gen, &h) in self.right[g].iter().enumerate() {
            if self.lengths[h] < self.lengths[g] {
                mask |= 1 << gen;
            }
        }
        mask
    }

    /// u ≤ w in the weak order: a length-additive right path from u to w.
    pub fn weak_le(&self, u: usize, w: usize) -> bool {
        if self.lengths[u] > self.lengths[w] {
            return false;
        }
        if u == w {
            return true;
        }
        let mut frontier = vec![u];
        let mut level = self.lengths[u];
        while level < self.lengths[w] {
            let mut next = Vec::new();
            for &g in &frontier {
                for &h in &self.right[g] {
                    if self.lengths[h] == level + 1 && !next.contains(&h) {
                        next.push(h);
                    }
                }
            }
            if next.contains(&w) {
                return true;
            }
            frontier = next;
            level += 1;
            if frontier.is_empty() {
                return false;
            }
        }
        false
    }

    /// D(A) for A a bitmask over {s, t}.
    pub fn descent_class(&self, mask: u32) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| self.descent_mask(g) == mask)
            .collect()
    }

    /// Same matcher as in type A.
    pub fn dominates(&self, a_mask: u32, b_mask: u32) -> DihedralDominance {
        let class_a = self.descent_class(a_mask);
        let class_b = self.descent_class(b_mask);
        let adjacency: Vec<Vec<usize>> = class_b
            .iter()
            .map(|&w| {
                class_a
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| self.weak_le(w, v))
                    .map(|(t, _)| t)
                    .collect()
            })
            .collect();
        let matching = bipartite_matching(&adjacency, class_a.len());
        let matched = matching.iter().filter(|x| x.is_some()).count();
        DihedralDominance {
            dominates: matched == class_b.len(),
            class_a_size: class_a.len(),
            class_b_size: class_b.len(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DihedralDominance {
    pub dominates: bool,
    pub class_a_size: usize,
    pub class_b_size: usize,
}
