//! Macaulay M-vector arithmetic: binomial expansions and the `<i>` shift,
//! the M-vector test, g-vectors, the complementary h-vector, and a tiny-scale
//! search for decompositions into sums of M-vectors.

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::HVector;
use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    acc
}

/// The unique expansion h = C(a_i, i) + C(a_{i−1}, i−1) + ⋯ + C(a_j, j)
/// with a_i > a_{i−1} > ⋯ > a_j ≥ j ≥ 1, found greedily, as `(a_t, t)` pairs.
pub fn macaulay_expansion(h: u64, i: u32) -> Result<Vec<(u64, u32)>> {
    if h == 0 || i == 0 {
        return Err(Error::DegreeOutOfRange(format!(
            "macaulay expansion needs h ≥ 1 and i ≥ 1, got h = {h}, i = {i}"
        )));
    }
    let mut rem = h as u128;
    let mut t = i;
    let mut out = Vec::new();
    while rem > 0 {
        // largest a with C(a, t) ≤ rem
        let mut lo = t as u64;
        let mut hi = t as u64 + 1;
        while binomial(hi, t as u64) <= rem {
            hi *= 2;
        }
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if binomial(mid, t as u64) <= rem {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        out.push((lo, t));
        rem -= binomial(lo, t as u64);
        if t == 1 {
            debug_assert_eq!(rem, 0);
            break;
        }
        t -= 1;
    }
    debug_assert!(out.windows(2).all(|w| w[0].0 > w[1].0));
    Ok(out)
}

/// Macaulay's upper bound h^{<i>}: expand and shift every binomial up by one.
pub fn macaulay_power(h: u64, i: u32) -> Result<u64> {
    let expansion = macaulay_expansion(h, i)?;
    let mut acc: u128 = 0;
    for (a, t) in expansion {
        acc += binomial(a + 1, t as u64 + 1);
    }
    Ok(acc as u64)
}

#[derive(Clone, Debug, Serialize)]
pub struct MVectorReport {
    pub input: Vec<i64>,
    /// Macaulay bound constraining entry i+1, where defined.
    pub bounds: Vec<Option<u64>>,
    pub pass: bool,
    pub fail_index: Option<usize>,
}

/// Exact arithmetic M-vector test: v_0 = 1, entries nonnegative, and
/// v_{i+1} ≤ v_i^{<i>} for i ≥ 1 (a zero entry forces zeros ever after).
pub fn is_m_vector(v: &[i64]) -> MVectorReport {
    let mut report = MVectorReport {
        input: v.to_vec(),
        bounds: vec![None; v.len()],
        pass: true,
        fail_index: None,
    };
    if v.is_empty() {
        return report;
    }
    if v[0] != 1 {
        report.pass = false;
        report.fail_index = Some(0);
        return report;
    }
    if let Some(idx) = v.iter().position(|&x| x < 0) {
        report.pass = false;
        report.fail_index = Some(idx);
        return report;
    }
    for i in 1..v.len() - 1 {
        if v[i] == 0 {
            if v[i + 1] > 0 {
                report.pass = false;
                report.fail_index = Some(i + 1);
                return report;
            }
            continue;
        }
        let bound = macaulay_power(v[i] as u64, i as u32).expect("positive entry");
        report.bounds[i] = Some(bound);
        if v[i + 1] as u64 > bound {
            report.pass = false;
            report.fail_index = Some(i + 1);
            return report;
        }
    }
    report
}

/// g_i = h_i − h_{i−1} for i = 0..⌈d/2⌉ (g_0 = h_0).
pub fn g_vector(h: &HVector) -> Vec<i64> {
    let d = h.d();
    let top = d.div_ceil(2);
    (0..=top)
        .map(|i| if i == 0 { h.0[0] } else { h.0[i] - h.0[i - 1] })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ChariReport {
    pub h: Vec<i64>,
    /// h_i ≤ h_{d−i} for all i ≤ ⌊d/2⌋.
    pub symmetric_ok: bool,
    pub symmetric_fail: Option<usize>,
    /// h_i ≤ h_{i+1} for all i < d/2.
    pub ascent_ok: bool,
    pub ascent_fail: Option<usize>,
    pub g: Vec<i64>,
    pub g_report: MVectorReport,
    pub pass: bool,
}

/// The enumerative consequences of a convex ear decomposition, as checkable
/// inequalities on a bare h-vector. The ascent range is i < d/2: at i = d/2
/// with d even the relevant multiplication map degenerates to the identity
/// and the literal h_i ≤ h_{i+1} can fail.
pub fn chari_check(h: &HVector) -> ChariReport {
    let d = h.d();
    let mut symmetric_ok = true;
    let mut symmetric_fail = None;
    for i in 0..=d / 2 {
        if h.0[i] > h.0[d - i] {
            symmetric_ok = false;
            symmetric_fail = Some(i);
            break;
        }
    }
    let mut ascent_ok = true;
    let mut ascent_fail = None;
    for i in 0..d {
        if 2 * i < d && h.0[i] > h.0[i + 1] {
            ascent_ok = false;
            ascent_fail = Some(i);
            break;
        }
    }
    let g = g_vector(h);
    let g_report = is_m_vector(&g);
    let pass = symmetric_ok && ascent_ok && g_report.pass;
    ChariReport {
        h: h.0.clone(),
        symmetric_ok,
        symmetric_fail,
        ascent_ok,
        ascent_fail,
        g,
        g_report,
        pass,
    }
}

/// h̄_i = h_{d−i} − h_i for i = 0..⌊d/2⌋.
pub fn complementary_h(h: &HVector) -> Vec<i64> {
    let d = h.d();
    (0..=d / 2).map(|i| h.0[d - i] - h.0[i]).collect()
}

#[derive(Clone, Debug, Serialize)]
pub enum Decomposition {
    /// A witness list of M-vectors (leading 1, zero padded) summing to v.
    Found { parts: Vec<Vec<i64>>, nodes: u64 },
    /// The canonical search space was exhausted: no decomposition exists.
    Impossible { nodes: u64 },
    /// The node budget ran out before the search finished.
    BoundExceeded { nodes: u64, bound: u64 },
}

/// Backtracking search for `count` M-vectors summing entrywise to `v`.
/// Parts are generated in lexicographically non-increasing order, so the
/// search space is canonical and exhausting it proves nonexistence.
pub fn m_decomposition_search(v: &[i64], count: usize, bound: u64) -> Decomposition {
    if v.iter().any(|&x| x < 0) {
        return Decomposition::Impossible { nodes: 0 };
    }
    if count == 0 {
        return if v.iter().all(|&x| x == 0) {
            Decomposition::Found {
                parts: Vec::new(),
                nodes: 0,
            }
        } else {
            Decomposition::Impossible { nodes: 0 }
        };
    }
    if v.is_empty() || v[0] != count as i64 {
        // every part leads with 1
        return Decomposition::Impossible { nodes: 0 };
    }
    let mut ctx = SearchCtx {
        nodes: 0,
        bound,
        memo: HashMap::new(),
        out: Vec::new(),
    };
    let mut remaining = v.to_vec();
    let ceiling = vec![i64::MAX; v.len()];
    match ctx.descend(&mut remaining, count, &ceiling) {
        SearchOutcome::Found => Decomposition::Found {
            parts: ctx.out,
            nodes: ctx.nodes,
        },
        SearchOutcome::Exhausted => Decomposition::Impossible { nodes: ctx.nodes },
        SearchOutcome::OutOfBudget => Decomposition::BoundExceeded {
            nodes: ctx.nodes,
            bound,
        },
    }
}

enum SearchOutcome {
    Found,
    Exhausted,
    OutOfBudget,
}

struct SearchCtx {
    nodes: u64,
    bound: u64,
    memo: HashMap<(u64, u32), u64>,
    out: Vec<Vec<i64>>,
}

impl SearchCtx {
    fn shift(&mut self, h: u64, i: u32) -> u64 {
        if let Some(&b) = self.memo.get(&(h, i)) {
            return b;
        }
        let b = macaulay_power(h, i).expect("positive");
        self.memo.insert((h, i), b);
        b
    }

    fn descend(
        &mut self,
        remaining: &mut [i64],
        parts_left: usize,
        ceiling: &[i64],
    ) -> SearchOutcome {
        if parts_left == 0 {
            return if remaining.iter().all(|&x| x == 0) {
                SearchOutcome::Found
            } else {
                SearchOutcome::Exhausted
            };
        }
        let mut part = vec![0i64; remaining.len()];
        part[0] = 1;
        self.enumerate(remaining, parts_left, ceiling, &mut part, 1)
    }

    /// Fill `part[pos..]`, each entry within its Macaulay bound and the
    /// remaining budget, largest first so parts come out lex-decreasing.
    fn enumerate(
        &mut self,
        remaining: &mut [i64],
        parts_left: usize,
        ceiling: &[i64],
        part: &mut Vec<i64>,
        pos: usize,
    ) -> SearchOutcome {
        self.nodes += 1;
        if self.nodes > self.bound {
            return SearchOutcome::OutOfBudget;
        }
        let len = remaining.len();
        if pos == len {
            for t in 0..len {
                remaining[t] -= part[t];
            }
            self.out.push(part.clone());
            match self.descend(remaining, parts_left - 1, part) {
                SearchOutcome::Found => return SearchOutcome::Found,
                SearchOutcome::OutOfBudget => return SearchOutcome::OutOfBudget,
                SearchOutcome::Exhausted => {
                    self.out.pop();
                }
            }
            for t in 0..len {
                remaining[t] += part[t];
            }
            return SearchOutcome::Exhausted;
        }
        let macaulay_cap = if part[pos - 1] == 0 {
            0
        } else if pos == 1 {
            i64::MAX
        } else {
            self.shift(part[pos - 1] as u64, (pos - 1) as u32) as i64
        };
        let mut hi = remaining[pos].min(macaulay_cap);
        // stay lexicographically ≤ the previous part
        let lex_tight = (0..pos).all(|t| part[t] == ceiling[t]);
        if lex_tight {
            hi = hi.min(ceiling[pos]);
        }
        let mut val = hi;
        while val >= 0 {
            part[pos] = val;
            match self.enumerate(remaining, parts_left, ceiling, part, pos + 1) {
                SearchOutcome::Found => return SearchOutcome::Found,
                SearchOutcome::OutOfBudget => return SearchOutcome::OutOfBudget,
                SearchOutcome::Exhausted => {}
            }
            val -= 1;
        }
        part[pos] = 0;
        SearchOutcome::Exhausted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn macaulay_power_known_values() {
        assert_eq!(macaulay_power(3, 1).unwrap(), 6); // 3 = C(3,1) → C(4,2)
        assert_eq!(macaulay_power(4, 2).unwrap(), 5); // C(3,2)+C(1,1) → C(4,3)+C(2,2)
        for i in 1..=6 {
            assert_eq!(macaulay_power(1, i).unwrap(), 1);
        }
        assert!(macaulay_power(0, 1).is_err());
    }

    #[test]
    fn expansion_reconstructs() {
        for i in 1..=6u32 {
            for h in 1..=4000u64 {
                let e = macaulay_expansion(h, i).unwrap();
                let total: u128 = e.iter().map(|&(a, t)| binomial(a, t as u64)).sum();
                assert_eq!(total, h as u128, "h = {h}, i = {i}");
                assert!(e.windows(2).all(|w| w[0].0 > w[1].0 && w[0].1 > w[1].1));
                assert!(e.iter().all(|&(a, t)| t >= 1 && a >= t as u64));
            }
        }
    }

    #[test]
    fn macaulay_bound_monotone() {
        for i in 1..=5u32 {
            let mut prev = 0;
            for h in 1..=2000u64 {
                let b = macaulay_power(h, i).unwrap();
                assert!(b >= prev, "bound must be monotone in h");
                prev = b;
            }
        }
    }

    #[test]
    fn m_vector_examples() {
        assert!(is_m_vector(&[1, 3, 6, 10]).pass);
        let r = is_m_vector(&[1, 2, 4]);
        assert!(!r.pass);
        assert_eq!(r.fail_index, Some(2));
        assert!(is_m_vector(&[1, 11]).pass);
        assert!(is_m_vector(&[1, 0, 0]).pass);
        let r = is_m_vector(&[1, 0, 2]);
        assert!(!r.pass);
        assert_eq!(r.fail_index, Some(2));
        assert!(!is_m_vector(&[2, 1]).pass);
        assert!(!is_m_vector(&[1, -1]).pass);
    }

    #[test]
    fn g_and_complementary() {
        let fano = HVector(vec![1, 12, 8]);
        assert_eq!(g_vector(&fano), vec![1, 11]);
        assert_eq!(complementary_h(&fano), vec![7, 0]);
        let r = chari_check(&fano);
        assert!(r.pass, "{r:?}");

        let oct = HVector(vec![1, 3, 3, 1]);
        assert_eq!(g_vector(&oct), vec![1, 2, 0]);
        assert_eq!(complementary_h(&oct), vec![0, 0]);
        assert!(chari_check(&oct).pass);

        let simplex = HVector(vec![1, 1, 1, 1]);
        assert_eq!(g_vector(&simplex), vec![1, 0, 0]);
        assert_eq!(complementary_h(&simplex), vec![0, 0]);
    }

    #[test]
    fn chari_rejects_descending_start() {
        let r = chari_check(&HVector(vec![1, 5, 3, 9]));
        assert!(!r.ascent_ok);
        assert_eq!(r.ascent_fail, Some(1));
        let r = chari_check(&HVector(vec![1, 0, 5, 9]));
        assert!(!r.ascent_ok);
        assert_eq!(r.ascent_fail, Some(0));
    }

    #[test]
    fn decomposition_forced() {
        match m_decomposition_search(&[7, 0], 7, 100_000) {
            Decomposition::Found { parts, .. } => {
                assert_eq!(parts.len(), 7);
                assert!(parts.iter().all(|p| p == &vec![1, 0]));
            }
            other => panic!("expected decomposition, got {other:?}"),
        }
    }

    #[test]
    fn decomposition_trivial_and_failing() {
        assert!(matches!(
            m_decomposition_search(&[0, 0], 0, 10),
            Decomposition::Found { .. }
        ));
        assert!(matches!(
            m_decomposition_search(&[1, 0], 0, 10),
            Decomposition::Impossible { .. }
        ));
        // wrong leading entry: provably impossible without search
        assert!(matches!(
            m_decomposition_search(&[3, 1], 2, 10),
            Decomposition::Impossible { .. }
        ));
    }

    #[test]
    fn decomposition_two_parts() {
        match m_decomposition_search(&[2, 5], 2, 100_000) {
            Decomposition::Found { parts, .. } => {
                assert_eq!(parts.len(), 2);
                let sum0: i64 = parts.iter().map(|p| p[0]).sum();
                let sum1: i64 = parts.iter().map(|p| p[1]).sum();
                assert_eq!((sum0, sum1), (2, 5));
                for p in &parts {
                    assert!(is_m_vector(p).pass);
                }
            }
            other => panic!("expected decomposition, got {other:?}"),
        }
    }

    #[test]
    fn decomposition_impossible_with_proof() {
        // two parts, each forced to (1, 0, 0) once entry 1 is zero
        match m_decomposition_search(&[2, 0, 9], 2, 100_000) {
            Decomposition::Impossible { .. } => {}
            other => panic!("expected impossibility proof, got {other:?}"),
        }
    }

    #[test]
    fn decomposition_budget() {
        match m_decomposition_search(&[4, 30, 90, 300], 4, 3) {
            Decomposition::BoundExceeded { bound, .. } => assert_eq!(bound, 3),
            other => panic!("expected budget refusal, got {other:?}"),
        }
    }
}
