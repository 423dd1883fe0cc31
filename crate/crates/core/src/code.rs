//! Linear codes as row spaces, their weight spectra and parameter bounds.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::par;

/// A linear `[n, k]` code over a finite field, given by a full-rank generator.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Arc<Field>,
    generator: Matrix,
}

impl PartialEq for LinearCode {
    /// Equality of codes (row spaces), not of generator matrices.
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.generator.same_row_space(&self.field, &other.generator)
    }
}

impl LinearCode {
    /// Wraps a generator matrix whose rows must be linearly independent.
    pub fn new(field: Arc<Field>, generator: Matrix) -> Result<LinearCode> {
        if !generator.is_over(&field) {
            return Err(Error::InvalidCode(format!("generator entries must lie in [0,{})", field.q())));
        }
        let rank = generator.rank(&field);
        if rank != generator.rows() {
            return Err(Error::InvalidCode(format!("generator has {} rows but rank {rank}", generator.rows())));
        }
        Ok(LinearCode { field, generator })
    }

    /// The code spanned by `rows`, which may be dependent.
    pub fn spanned_by(field: Arc<Field>, rows: &Matrix) -> Result<LinearCode> {
        let basis = rows.row_space_basis(&field);
        LinearCode::new(field, basis)
    }

    pub fn from_codes(field: Arc<Field>, k: usize, n: usize, codes: &[u16]) -> Result<LinearCode> {
        LinearCode::new(field, Matrix::from_codes(k, n, codes)?)
    }

    #[inline]
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// Number of codewords, `q^k`.
    pub fn size(&self) -> u128 {
        (self.q() as u128).pow(self.k() as u32)
    }

    /// Rejects the trivial codes `{0}` and `F_q^n`.
    pub fn require_nontrivial_dimension(&self) -> Result<()> {
        if self.k() == 0 || self.k() >= self.n() {
            return Err(Error::InvalidCode(format!("analysis needs 0 < k < n, got [{}, {}]", self.n(), self.k())));
        }
        Ok(())
    }

    /// Canonical parity-check matrix: the reduced basis of the dual code.
    pub fn parity_check(&self) -> Matrix {
        self.generator.nullspace_basis(&self.field).row_space_basis(&self.field)
    }

    /// Reduced echelon generator `[I_k | A]` after moving pivot columns to the
    /// front, together with the column order used.
    pub fn systematic_form(&self) -> (Matrix, Vec<usize>) {
        let red = self.generator.rref(&self.field);
        let mut order = red.pivots.clone();
        order.extend((0..self.n()).filter(|c| !red.pivots.contains(c)));
        (red.matrix.select_columns(&order), order)
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode { field: self.field.clone(), generator: self.parity_check() }
    }

    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        self.generator.combine_rows(&self.field, message)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.n()
            && self.parity_check().apply(&self.field, v).map(|s| s.iter().all(|e| e.is_zero())).unwrap_or(false)
    }

    /// `C = C^⊥`: requires `n = 2k` and `G G^T = 0`.
    pub fn is_self_dual(&self) -> bool {
        self.n() == 2 * self.k() && self.is_self_orthogonal()
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let g = &self.generator;
        (0..g.rows()).all(|i| (i..g.rows()).all(|j| self.field.dot(g.row(i), g.row(j)).is_zero()))
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &LinearCode) -> Result<LinearCode> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch);
        }
        let (n1, k1, n2, k2) = (self.n(), self.k(), other.n(), other.k());
        let mut g = Matrix::zeros(k1 + k2, n1 + n2);
        for r in 0..k1 {
            for c in 0..n1 {
                g.set(r, c, self.generator.get(r, c));
            }
        }
        for r in 0..k2 {
            for c in 0..n2 {
                g.set(k1 + r, n1 + c, other.generator.get(r, c));
            }
        }
        LinearCode::new(self.field.clone(), g)
    }

    /// The empty code of length 0, the identity for [`LinearCode::direct_sum`].
    pub fn empty(field: Arc<Field>) -> LinearCode {
        LinearCode { field, generator: Matrix::zeros(0, 0) }
    }

    /// Applies a field automorphism entrywise.
    pub fn map_entries(&self, g: impl FnMut(Elem) -> Elem) -> Result<LinearCode> {
        LinearCode::new(self.field.clone(), self.generator.map(g))
    }

    /// Exact weight distribution by enumerating all `q^k` codewords.
    pub fn weight_distribution(&self, cap: u64) -> Result<WeightDistribution> {
        let size = self.size();
        if size > cap as u128 {
            return Err(Error::CapExceeded { what: "codeword enumeration", needed: size, cap: cap as u128 });
        }
        Ok(WeightDistribution::new(row_space_weights(&self.field, &self.generator)))
    }
}

/// Walks the row space of `rows` in the message range `range`, where message
/// index `i` has base-q digits `u_0 u_1 ... u_{k-1}` with `u_{k-1}` least
/// significant, keeping the codeword up to date incrementally.
pub(crate) struct RowSpaceWalker<'a> {
    field: &'a Field,
    /// `multiples[(row * q + a) * n + j] = a * rows[row][j]`
    multiples: Vec<Elem>,
    k: usize,
    n: usize,
    q: u32,
}

impl<'a> RowSpaceWalker<'a> {
    pub(crate) fn new(field: &'a Field, rows: &Matrix) -> Self {
        let (k, n, q) = (rows.rows(), rows.cols(), field.q());
        let mut multiples = vec![Elem::ZERO; k * q as usize * n];
        for r in 0..k {
            for a in field.elements() {
                for j in 0..n {
                    multiples[(r * q as usize + a.0 as usize) * n + j] = field.mul(a, rows.get(r, j));
                }
            }
        }
        RowSpaceWalker { field, multiples, k, n, q }
    }

    pub(crate) fn total(&self) -> u64 {
        (self.q as u64).pow(self.k as u32)
    }

    fn multiple(&self, row: usize, a: u16) -> &[Elem] {
        let start = (row * self.q as usize + a as usize) * self.n;
        &self.multiples[start..start + self.n]
    }

    /// Calls `visit(message_digits, codeword)` for every message in `range`.
    pub(crate) fn walk(&self, range: core::ops::Range<u64>, mut visit: impl FnMut(&[u16], &[Elem])) {
        if range.is_empty() {
            return;
        }
        let f = self.field;
        let mut digits = vec![0u16; self.k];
        let mut rem = range.start;
        for d in digits.iter_mut().rev() {
            *d = (rem % self.q as u64) as u16;
            rem /= self.q as u64;
        }
        let mut word = vec![Elem::ZERO; self.n];
        for (r, &d) in digits.iter().enumerate() {
            for (w, &m) in word.iter_mut().zip(self.multiple(r, d)) {
                *w = f.add(*w, m);
            }
        }
        let mut idx = range.start;
        loop {
            visit(&digits, &word);
            idx += 1;
            if idx == range.end {
                return;
            }
            // odometer step
            let mut pos = self.k;
            loop {
                pos -= 1;
                let old = digits[pos];
                let new = if old as u32 + 1 == self.q { 0 } else { old + 1 };
                digits[pos] = new;
                let (mo, mn) = (self.multiple(pos, old), self.multiple(pos, new));
                for j in 0..self.n {
                    word[j] = f.add(f.sub(word[j], mo[j]), mn[j]);
                }
                if new != 0 {
                    break;
                }
            }
        }
    }
}

pub(crate) fn hamming_weight(v: &[Elem]) -> usize {
    v.iter().filter(|e| !e.is_zero()).count()
}

fn row_space_weights(field: &Field, rows: &Matrix) -> Vec<u64> {
    let n = rows.cols();
    let walker = RowSpaceWalker::new(field, rows);
    par::map_reduce(
        walker.total(),
        |range| {
            let mut counts = vec![0u64; n + 1];
            walker.walk(range, |_, w| counts[hamming_weight(w)] += 1);
            counts
        },
        || vec![0u64; n + 1],
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}

/// Counts `A_0..A_n` of codewords by Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<u64>) -> WeightDistribution {
        WeightDistribution { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Smallest nonzero weight, `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&i| self.counts[i] > 0)
    }

    /// Nonzero weights that occur.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        (1..self.counts.len()).filter(|&i| self.counts[i] > 0).collect()
    }

    pub fn num_nonzero_weights(&self) -> usize {
        self.nonzero_weights().len()
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Krawtchouk value `K_j(i) = Σ_h (-1)^h (q-1)^{j-h} C(i,h) C(n-i, j-h)`,
/// the coefficient of `Y^j` in `(1+(q-1)Y)^{n-i} (1-Y)^i`.
pub fn krawtchouk(n: usize, q: u32, j: usize, i: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for h in 0..=j.min(i) {
        if j - h > n - i {
            continue;
        }
        let term = BigInt::from(binomial(i, h) * binomial(n - i, j - h)) * BigInt::from(q - 1).pow((j - h) as u32);
        if h % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Dual spectrum from the primal one: `A⊥_j = q^{-k} Σ_i A_i K_j(i)`.
pub fn macwilliams(w: &WeightDistribution, n: usize, k: usize, q: u32) -> Result<WeightDistribution> {
    if w.n() != n {
        return Err(Error::DimensionMismatch { expected: n + 1, got: w.counts.len() });
    }
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument("MacWilliams transform needs 0 < k < n".into()));
    }
    if w.total() != (q as u128).pow(k as u32) || w.counts[0] != 1 {
        return Err(Error::InvalidArgument(format!("spectrum is inconsistent with [{n},{k}]_{q}")));
    }
    let size = BigInt::from(q).pow(k as u32);
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let sum: BigInt =
            (0..=n).filter(|&i| w.counts[i] > 0).map(|i| BigInt::from(w.counts[i]) * krawtchouk(n, q, j, i)).sum();
        let (quot, rem) = sum.div_rem(&size);
        if !rem.is_zero() || quot < BigInt::zero() {
            return Err(Error::NonIntegral(j));
        }
        out.push(quot.to_u64().ok_or(Error::NonIntegral(j))?);
    }
    Ok(WeightDistribution::new(out))
}

/// How the dual spectrum was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualRoute {
    Enumerated,
    MacWilliams,
    /// Both routes ran and agreed.
    Both,
}

/// Exact spectra of a code and its dual, each by the cheaper exact route.
#[derive(Clone, Debug)]
pub struct Spectra {
    pub primal: WeightDistribution,
    pub dual: WeightDistribution,
    pub primal_route: DualRoute,
    pub dual_route: DualRoute,
}

/// Below this size both routes are run and compared.
pub const CROSS_CHECK_LIMIT: u128 = 1_000_000;

pub fn spectra(code: &LinearCode, cap: u64) -> Result<Spectra> {
    code.require_nontrivial_dimension()?;
    let (n, k, q) = (code.n(), code.k(), code.q());
    let primal_size = code.size();
    let dual_size = (q as u128).pow((n - k) as u32);
    let cap128 = cap as u128;
    if primal_size > cap128 && dual_size > cap128 {
        return Err(Error::CapExceeded {
            what: "spectrum enumeration",
            needed: primal_size.min(dual_size),
            cap: cap128,
        });
    }
    let dual_code = code.dual();
    let (primal, primal_route) = if primal_size <= cap128 {
        (code.weight_distribution(cap)?, DualRoute::Enumerated)
    } else {
        (macwilliams(&dual_code.weight_distribution(cap)?, n, n - k, q)?, DualRoute::MacWilliams)
    };
    let cross = primal_size <= CROSS_CHECK_LIMIT && dual_size <= CROSS_CHECK_LIMIT;
    let (dual, dual_route) = if cross {
        let direct = dual_code.weight_distribution(cap)?;
        let transformed = macwilliams(&primal, n, k, q)?;
        if direct != transformed {
            return Err(Error::InvalidCode(format!(
                "MacWilliams transform disagrees with enumeration: {:?} vs {:?}",
                transformed.counts, direct.counts
            )));
        }
        (direct, DualRoute::Both)
    } else if dual_size <= primal_size {
        (dual_code.weight_distribution(cap)?, DualRoute::Enumerated)
    } else {
        (macwilliams(&primal, n, k, q)?, DualRoute::MacWilliams)
    };
    Ok(Spectra { primal, dual, primal_route, dual_route })
}

pub fn min_distance(code: &LinearCode, cap: u64) -> Result<usize> {
    Ok(spectra(code, cap)?.primal.min_distance().expect("k > 0"))
}

/// Number of nonzero weights of the dual code.
pub fn external_distance(code: &LinearCode, cap: u64) -> Result<usize> {
    Ok(spectra(code, cap)?.dual.num_nonzero_weights())
}

/// Number of nonzero weights of the code itself.
pub fn s_prime(code: &LinearCode, cap: u64) -> Result<usize> {
    Ok(spectra(code, cap)?.primal.num_nonzero_weights())
}

/// Singleton/Griesmer evaluation for parameters `[n, k, d]_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub is_mds: bool,
    pub is_griesmer: bool,
    pub griesmer_sum: u64,
    /// For `k ≥ 2`: MDS ⇔ (Griesmer ∧ d ≤ q). Always true for `k < 2`.
    pub mds_griesmer_consistent: bool,
}

pub fn griesmer_sum(k: usize, d: usize, q: u32) -> u64 {
    let mut pow = 1u64;
    let mut sum = 0u64;
    for _ in 0..k {
        sum += (d as u64).div_ceil(pow);
        pow = pow.saturating_mul(q as u64);
    }
    sum
}

pub fn bounds_profile(n: usize, k: usize, d: usize, q: u32) -> Bounds {
    let is_mds = d + k == n + 1;
    let griesmer_sum = griesmer_sum(k, d, q);
    let is_griesmer = griesmer_sum == n as u64;
    let mds_griesmer_consistent = k < 2 || is_mds == (is_griesmer && d as u32 <= q);
    Bounds { is_mds, is_griesmer, griesmer_sum, mds_griesmer_consistent }
}

/// Predicted number of minimum-weight codewords of an MDS code, `C(n,d)(q-1)`.
pub fn a_d_formula(n: usize, d: usize, q: u32) -> BigUint {
    binomial(n, d) * BigUint::from(q - 1)
}

/// Codes with `d ≥ 1` from parameters alone: `e = ⌊(d-1)/2⌋`.
pub fn packing_radius(d: usize) -> usize {
    d.saturating_sub(1) / 2
}
