//! Exact dense linear algebra over the rationals and over prime fields GF(p):
//! rank, kernel basis, and reduced row echelon form.
//!
//! Rank over Q goes through fraction-free (Bareiss) elimination on a
//! denominator-cleared integer copy, which keeps intermediate entries to
//! determinant size instead of letting naive rational elimination blow up.
//! Pivoting is deterministic (first nonzero), so identical inputs reduce
//! identically.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default prime for modular computations: large enough that random rank
/// collapse is rare at this scale, small enough for fast 64-bit arithmetic.
pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum FieldSpec {
    /// The rationals.
    Q,
    /// The prime field GF(p).
    Gf(u64),
}

impl FieldSpec {
    /// Validated GF(p) constructor.
    pub fn gf(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Gf(p))
    }

    /// Parse `"q"` or `"gf:<p>"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Q);
        }
        if let Some(rest) = s.strip_prefix("gf:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad field spec `{s}`")))?;
            return Self::gf(p);
        }
        Err(Error::InvalidInput(format!("bad field spec `{s}`")))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::zero()),
            FieldSpec::Gf(p) => Scalar::Gf { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::one()),
            FieldSpec::Gf(p) => Scalar::Gf { v: 1, p: *p },
        }
    }

    pub fn from_i64(&self, x: i64) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::from_integer(BigInt::from(x))),
            FieldSpec::Gf(p) => {
                let r = x.rem_euclid(*p as i64) as u64;
                Scalar::Gf { v: r, p: *p }
            }
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "q"),
            FieldSpec::Gf(p) => write!(f, "gf:{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A field element: an arbitrary-precision rational or a residue mod a prime.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Q(BigRational),
    Gf { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Q,
            Scalar::Gf { p, .. } => FieldSpec::Gf(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Gf { v, .. } => *v == 0,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Gf { v: a, p }, Scalar::Gf { v: b, p: p2 }) if p == p2 => Scalar::Gf {
                v: (a + b) % p,
                p: *p,
            },
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Gf { v, p } => Scalar::Gf {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Gf { v: a, p }, Scalar::Gf { v: b, p: p2 }) if p == p2 => Scalar::Gf {
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Q(a.recip())
            }
            Scalar::Gf { v, p } => {
                assert!(*v != 0, "inverse of zero");
                Scalar::Gf {
                    v: pow_mod(*v, p - 2, *p),
                    p: *p,
                }
            }
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Scalar {
        self.mul(&rhs.inv())
    }

    /// Exact string form: `num/den` over Q, the residue over GF(p).
    pub fn display(&self) -> String {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Gf { v, .. } => v.to_string(),
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b: u128 = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Dense matrix over a single exact field.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactMatrix {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    /// Build from rows of scalars; every entry must come from `field`.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::SizeMismatch("ragged matrix rows".into()));
            }
            for s in r {
                if s.field() != field {
                    return Err(Error::MixedField);
                }
                data.push(s);
            }
        }
        Ok(ExactMatrix {
            field,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn from_int_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged matrix rows");
            for &x in r {
                data.push(field.from_i64(x));
            }
        }
        ExactMatrix {
            field,
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    /// Column-major assembly, used for image/kernel computations where the
    /// natural unit is a column vector.
    pub fn from_cols(field: FieldSpec, cols: Vec<Vec<Scalar>>) -> Result<Self> {
        let ncols = cols.len();
        let nrows = cols.first().map(|c| c.len()).unwrap_or(0);
        let mut m = Self::zeros(field, nrows, ncols);
        for (j, c) in cols.into_iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::SizeMismatch("ragged matrix columns".into()));
            }
            for (i, s) in c.into_iter().enumerate() {
                if s.field() != field {
                    return Err(Error::MixedField);
                }
                *m.at_mut(i, j) = s;
            }
        }
        Ok(m)
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    /// Append the columns of `other` on the right.
    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if other.field != self.field {
            return Err(Error::MixedField);
        }
        if other.rows != self.rows {
            return Err(Error::SizeMismatch(format!(
                "hstack: {} rows vs {} rows",
                self.rows, other.rows
            )));
        }
        let mut m = ExactMatrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..other.cols {
                *m.at_mut(i, self.cols + j) = other.at(i, j).clone();
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, entry) in v.iter().enumerate() {
                    if !self.at(i, j).is_zero() && !entry.is_zero() {
                        acc = acc.add(&self.at(i, j).mul(entry));
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix rank. Fraction-free over Q, modular elimination over GF(p).
    pub fn rank(&self) -> usize {
        match self.field {
            FieldSpec::Q => self.rank_bareiss(),
            FieldSpec::Gf(p) => self.rank_mod(p),
        }
    }

    fn rank_mod(&self, p: u64) -> usize {
        let mut m: Vec<u64> = self
            .data
            .iter()
            .map(|s| match s {
                Scalar::Gf { v, .. } => *v,
                _ => unreachable!(),
            })
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0usize;
        for col in 0..cols {
            let pivot = (rank..rows).find(|&r| m[r * cols + col] != 0);
            let Some(pr) = pivot else { continue };
            for j in 0..cols {
                m.swap(rank * cols + j, pr * cols + j);
            }
            let inv = pow_mod(m[rank * cols + col], p - 2, p);
            for r in 0..rows {
                if r != rank && m[r * cols + col] != 0 {
                    let factor = (m[r * cols + col] as u128 * inv as u128 % p as u128) as u64;
                    for j in col..cols {
                        let sub = m[rank * cols + j] as u128 * factor as u128 % p as u128;
                        let cur = m[r * cols + j] as u128;
                        m[r * cols + j] = ((cur + p as u128 - sub) % p as u128) as u64;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    fn rank_bareiss(&self) -> usize {
        // clear denominators row by row; rank is unchanged
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    if let Scalar::Q(r) = self.at(i, j) {
                        lcm = num_integer_lcm(&lcm, r.denom());
                    }
                }
                (0..self.cols)
                    .map(|j| {
                        if let Scalar::Q(r) = self.at(i, j) {
                            r.numer() * (&lcm / r.denom())
                        } else {
                            unreachable!()
                        }
                    })
                    .collect()
            })
            .collect();
        bareiss_rank(&mut m, self.cols)
    }

    /// Reduced row echelon form with the list of pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for col in 0..m.cols {
            let pivot = (r..m.rows).find(|&i| !m.at(i, col).is_zero());
            let Some(pr) = pivot else { continue };
            for j in 0..m.cols {
                let tmp = m.at(r, j).clone();
                *m.at_mut(r, j) = m.at(pr, j).clone();
                *m.at_mut(pr, j) = tmp;
            }
            let inv = m.at(r, col).inv();
            for j in col..m.cols {
                let v = m.at(r, j).mul(&inv);
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, col).is_zero() {
                    let factor = m.at(i, col).clone();
                    for j in col..m.cols {
                        let v = m.at(i, j).sub(&factor.mul(m.at(r, j)));
                        *m.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    /// Basis of the right kernel: one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![self.field.zero(); self.cols];
            vec[free] = self.field.one();
            for (col, rowopt) in pivot_set.iter().enumerate() {
                if let Some(row) = rowopt {
                    vec[col] = r.at(*row, free).neg();
                }
            }
            basis.push(vec);
        }
        basis
    }
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let g = gcd_big(a.clone(), b.clone());
    if g.is_zero() {
        BigInt::zero()
    } else {
        (a / &g * b).abs()
    }
}

fn gcd_big(mut a: BigInt, mut b: BigInt) -> BigInt {
    a = a.abs();
    b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Fraction-free (Bareiss) elimination; counts pivots, skipping dependent
/// columns. `m` is consumed as scratch space.
fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(pr) = pivot else { continue };
        m.swap(rank, pr);
        for r in rank + 1..rows {
            for j in col + 1..cols {
                let num = &m[rank][col] * &m[r][j] - &m[r][col] * &m[rank][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                m[r][j] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank of an integer matrix over Q and over GF(p) side by side. Used as the
/// characteristic-zero safeguard: a mismatch is reported to the caller, never
/// silently dropped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankCrossCheck {
    pub rank_q: usize,
    pub rank_gf: usize,
    pub prime: u64,
    pub agree: bool,
}

pub fn rank_cross_check(int_rows: &[Vec<i64>], p: u64) -> Result<RankCrossCheck> {
    let field = FieldSpec::gf(p)?;
    let rank_q = ExactMatrix::from_int_rows(FieldSpec::Q, int_rows).rank();
    let rank_gf = ExactMatrix::from_int_rows(field, int_rows).rank();
    Ok(RankCrossCheck {
        rank_q,
        rank_gf,
        prime: p,
        agree: rank_q == rank_gf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_rank() {
        let m = ExactMatrix::identity(FieldSpec::Q, 3);
        assert_eq!(m.rank(), 3);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn zero_matrix() {
        let m = ExactMatrix::zeros(FieldSpec::Q, 2, 5);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 5);
    }

    #[test]
    fn proportional_rows() {
        let m = ExactMatrix::from_int_rows(FieldSpec::Q, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 1);
        // the kernel vector is proportional to (2, −1): check M·v = 0
        for v in &kernel {
            assert!(m.mul_vec(v).iter().all(|s| s.is_zero()));
        }
    }

    #[test]
    fn rank_nullity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [FieldSpec::Q, FieldSpec::Gf(DEFAULT_PRIME)] {
            for _ in 0..25 {
                let rows = rng.gen_range(1..=6);
                let cols = rng.gen_range(1..=6);
                let ints: Vec<Vec<i64>> = (0..rows)
                    .map(|_| (0..cols).map(|_| rng.gen_range(-4..=4)).collect())
                    .collect();
                let m = ExactMatrix::from_int_rows(field, &ints);
                let kernel = m.kernel_basis();
                assert_eq!(m.rank() + kernel.len(), cols);
                for v in &kernel {
                    assert!(m.mul_vec(v).iter().all(|s| s.is_zero()));
                }
            }
        }
    }

    #[test]
    fn rref_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let ints: Vec<Vec<i64>> = (0..4)
                .map(|_| (0..5).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            let m = ExactMatrix::from_int_rows(FieldSpec::Q, &ints);
            let (r1, p1) = m.rref();
            let (r2, p2) = r1.rref();
            assert_eq!(r1, r2);
            assert_eq!(p1, p2);
        }
    }

    #[test]
    fn rank_invariant_under_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let ints: Vec<Vec<i64>> = (0..5)
            .map(|_| (0..5).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let base = ExactMatrix::from_int_rows(FieldSpec::Q, &ints).rank();
        let mut shuffled = ints.clone();
        shuffled.swap(0, 4);
        shuffled.swap(1, 2);
        assert_eq!(
            ExactMatrix::from_int_rows(FieldSpec::Q, &shuffled).rank(),
            base
        );
    }

    #[test]
    fn q_vs_gf_rank_on_random_integers() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=7);
            let cols = rng.gen_range(1..=7);
            let ints: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-20..=20)).collect())
                .collect();
            let check = rank_cross_check(&ints, DEFAULT_PRIME).unwrap();
            // rank collapse mod 32003 needs entries conspiring with the prime;
            // with entries in ±20 it cannot happen below determinant size 32003
            assert!(check.agree, "char-0 safeguard tripped: {check:?}");
        }
    }

    #[test]
    fn mixed_field_rejected() {
        let bad = ExactMatrix::from_rows(
            FieldSpec::Q,
            vec![vec![FieldSpec::Q.one(), FieldSpec::Gf(7).one()]],
        );
        assert!(matches!(bad, Err(Error::MixedField)));
    }

    #[test]
    fn field_spec_parse() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Q);
        assert_eq!(FieldSpec::parse("gf:32003").unwrap(), FieldSpec::Gf(32003));
        assert!(FieldSpec::parse("gf:32004").is_err());
        assert!(FieldSpec::parse("r").is_err());
    }
}
