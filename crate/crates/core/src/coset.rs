//! Coset structure of a linear code.
//!
//! A [`CosetTable`] holds, for every syndrome `σ ∈ F_q^{n-k}`, the weight
//! distribution `B_σ(0..=n)` of the coset with that syndrome. Two independent
//! engines build it:
//!
//! * **primal**: walks all `q^n` vectors. The parity-check matrix is kept in
//!   reduced form, so a vector splits into its `k` free coordinates (which fix
//!   a base syndrome) and its `n-k` pivot coordinates (which add to it
//!   digit by digit). Output blocks are disjoint per top syndrome digit.
//! * **dual-character** (characteristic 2): the coset weight enumerator
//!   `B_σ(i) = q^{-(n-k)} Σ_{v} (-1)^{Tr(v·σ)} K_i(wt(vH))`, evaluated with one
//!   Walsh–Hadamard transform per dual weight class. All values are exact
//!   integers.
//!
//! Syndromes are indexed as `Σ_j σ_j q^j` with `σ = H x^T` and `H` the
//! canonical parity-check matrix of the code.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::code::{hamming_weight, krawtchouk, LinearCode, RowSpaceWalker};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::par;

/// Enumeration limits. All are counts of elementary steps or table cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Codewords enumerated for a weight distribution.
    pub enumeration: u64,
    /// Syndromes (cosets) tracked by coverage search or a table.
    pub syndrome: u64,
    /// Vectors walked by the primal engine.
    pub primal: u64,
    /// Dual codewords transformed by the dual-character engine.
    pub dual_character: u64,
    /// Cells `q^{n-k} (n+1)` of a stored table.
    pub table_cells: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 100_000_000,
            syndrome: 1 << 24,
            primal: 1 << 31,
            dual_character: 1 << 26,
            table_cells: 1 << 28,
        }
    }
}

fn cap_check(what: &'static str, needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::CapExceeded { what, needed, cap: cap as u128 })
    } else {
        Ok(())
    }
}

/// Engine selection for [`coset_weight_distributions`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    #[default]
    Auto,
    Primal,
    DualCharacter,
}

/// Engine that actually produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineUsed {
    Primal,
    DualCharacter,
}

impl EngineUsed {
    pub fn name(self) -> &'static str {
        match self {
            EngineUsed::Primal => "primal",
            EngineUsed::DualCharacter => "dual-character",
        }
    }
}

/// Packed syndromes `Σ_j σ_j q^j` and their digitwise sums.
#[derive(Clone, Copy)]
pub struct SyndromeSpace<'a> {
    field: &'a Field,
    r: usize,
}

impl<'a> SyndromeSpace<'a> {
    pub fn new(field: &'a Field, r: usize) -> Self {
        SyndromeSpace { field, r }
    }

    pub fn size(&self) -> u64 {
        (self.field.q() as u64).pow(self.r as u32)
    }

    pub fn pack(&self, digits: &[Elem]) -> u64 {
        digits.iter().rev().fold(0u64, |acc, d| acc * self.field.q() as u64 + d.code() as u64)
    }

    pub fn unpack(&self, mut idx: u64) -> Vec<Elem> {
        let q = self.field.q() as u64;
        (0..self.r)
            .map(|_| {
                let d = Elem((idx % q) as u16);
                idx /= q;
                d
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.field.p() == 2 {
            return a ^ b;
        }
        let q = self.field.q() as u64;
        let (mut a, mut b, mut out, mut scale) = (a, b, 0u64, 1u64);
        for _ in 0..self.r {
            let s = self.field.add(Elem((a % q) as u16), Elem((b % q) as u16));
            out += s.code() as u64 * scale;
            a /= q;
            b /= q;
            scale *= q;
        }
        out
    }
}

/// Packed syndromes of `a · h_j` for every column `j` and scalar `a`.
struct ColumnMultiples {
    q: usize,
    table: Vec<u64>,
}

impl ColumnMultiples {
    fn new(field: &Field, h: &Matrix) -> Self {
        let space = SyndromeSpace::new(field, h.rows());
        let q = field.q() as usize;
        let mut table = vec![0u64; h.cols() * q];
        for j in 0..h.cols() {
            let col = h.column(j);
            for a in field.elements() {
                let scaled: Vec<Elem> = col.iter().map(|&c| field.mul(a, c)).collect();
                table[j * q + a.0 as usize] = space.pack(&scaled);
            }
        }
        ColumnMultiples { q, table }
    }

    #[inline]
    fn get(&self, j: usize, a: Elem) -> u64 {
        self.table[j * self.q + a.0 as usize]
    }
}

/// Visits vectors of F_q^n in nondecreasing weight order (supports in
/// lexicographic order, values by odometer) up to `max_weight`, passing the
/// vector, its packed syndrome and its weight. Stops when `visit` returns false.
pub fn enumerate_by_weight(
    field: &Field,
    h: &Matrix,
    max_weight: usize,
    mut visit: impl FnMut(&[Elem], u64, usize) -> bool,
) {
    let n = h.cols();
    let space = SyndromeSpace::new(field, h.rows());
    let mult = ColumnMultiples::new(field, h);
    let q = field.q() as u16;
    let mut x = vec![Elem::ZERO; n];
    if !visit(&x, 0, 0) {
        return;
    }
    for w in 1..=max_weight.min(n) {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            for &j in &support {
                x[j] = Elem::ONE;
            }
            let mut syn = support.iter().fold(0u64, |acc, &j| space.add(acc, mult.get(j, Elem::ONE)));
            loop {
                if !visit(&x, syn, w) {
                    return;
                }
                // odometer over nonzero values, last support position fastest
                let mut pos = w;
                let mut done = true;
                while pos > 0 {
                    pos -= 1;
                    let j = support[pos];
                    let old = x[j];
                    let new = if old.0 + 1 == q { Elem::ONE } else { Elem(old.0 + 1) };
                    x[j] = new;
                    syn = space.add(syn, mult.get(j, field.sub(new, old)));
                    if new != Elem::ONE {
                        done = false;
                        break;
                    }
                }
                if done {
                    break;
                }
            }
            for &j in &support {
                x[j] = Elem::ZERO;
            }
            // next combination
            let mut i = w;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if support[i] < n - w + i {
                    support[i] += 1;
                    for t in i + 1..w {
                        support[t] = support[t - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
}

/// Covering radius: the weight at which syndrome coverage completes.
pub fn covering_radius(code: &LinearCode, caps: &Caps) -> Result<usize> {
    code.require_nontrivial_dimension()?;
    let f = code.field();
    let h = code.parity_check();
    let space = SyndromeSpace::new(f, h.rows());
    let total = space.size();
    cap_check("syndrome coverage", total as u128, caps.syndrome)?;
    let mut seen = vec![0u64; (total as usize).div_ceil(64)];
    let mut covered = 0u64;
    let mut radius = 0;
    enumerate_by_weight(f, &h, code.n(), |_, syn, w| {
        let (word, bit) = ((syn / 64) as usize, syn % 64);
        if seen[word] & (1 << bit) == 0 {
            seen[word] |= 1 << bit;
            covered += 1;
            radius = w;
        }
        covered < total
    });
    Ok(radius)
}

/// A minimum-weight vector in the coset with syndrome `syndrome`.
pub fn coset_leader(code: &LinearCode, syndrome: u64) -> Vec<Elem> {
    let h = code.parity_check();
    let mut found = Vec::new();
    enumerate_by_weight(code.field(), &h, code.n(), |x, syn, _| {
        if syn == syndrome {
            found = x.to_vec();
            false
        } else {
            true
        }
    });
    found
}

/// One distinct coset weight distribution and how often it occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionClass {
    pub distribution: Vec<u32>,
    pub multiplicity: u64,
    /// Smallest syndrome carrying this distribution.
    pub example: u64,
}

/// All cosets sharing one minimum weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaderGroup {
    pub weight: usize,
    pub classes: Vec<DistributionClass>,
}

impl LeaderGroup {
    pub fn cosets(&self) -> u64 {
        self.classes.iter().map(|c| c.multiplicity).sum()
    }
}

/// Per-syndrome coset weight distributions of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    n: usize,
    k: usize,
    q: u32,
    parity_check: Matrix,
    counts: Vec<u32>,
    engine: EngineUsed,
}

impl CosetTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn engine(&self) -> EngineUsed {
        self.engine
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity_check
    }

    pub fn num_cosets(&self) -> u64 {
        (self.counts.len() / (self.n + 1)) as u64
    }

    /// `B_σ(0..=n)`.
    pub fn distribution(&self, syndrome: u64) -> &[u32] {
        let s = syndrome as usize * (self.n + 1);
        &self.counts[s..s + self.n + 1]
    }

    pub fn leader_weight(&self, syndrome: u64) -> usize {
        self.distribution(syndrome).iter().position(|&c| c > 0).expect("cosets are nonempty")
    }

    /// Maximum leader weight.
    pub fn covering_radius(&self) -> usize {
        (0..self.num_cosets()).map(|s| self.leader_weight(s)).max().unwrap_or(0)
    }

    /// Σ over cosets of `B(i)`, for every `i`.
    pub fn column_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.n + 1];
        for chunk in self.counts.chunks(self.n + 1) {
            sums.iter_mut().zip(chunk).for_each(|(s, &c)| *s += c as u64);
        }
        sums
    }

    /// Column sums equal `C(n,i) (q-1)^i`, the number of weight-`i` vectors.
    pub fn conserves_weights(&self) -> bool {
        self.column_sums().iter().enumerate().all(|(i, &s)| {
            let expected = crate::code::binomial(self.n, i) * num_bigint::BigUint::from(self.q - 1).pow(i as u32);
            expected == num_bigint::BigUint::from(s)
        })
    }

    /// Cosets grouped by minimum weight, then by distinct distribution.
    pub fn groups(&self) -> Vec<LeaderGroup> {
        let mut map: BTreeMap<(usize, &[u32]), (u64, u64)> = BTreeMap::new();
        for s in 0..self.num_cosets() {
            let dist = self.distribution(s);
            let w = dist.iter().position(|&c| c > 0).expect("cosets are nonempty");
            map.entry((w, dist)).and_modify(|e| e.0 += 1).or_insert((1, s));
        }
        let mut groups: Vec<LeaderGroup> = Vec::new();
        for ((w, dist), (mult, example)) in map {
            let class = DistributionClass { distribution: dist.to_vec(), multiplicity: mult, example };
            match groups.last_mut() {
                Some(g) if g.weight == w => g.classes.push(class),
                _ => groups.push(LeaderGroup { weight: w, classes: vec![class] }),
            }
        }
        groups
    }

    /// Distinct distributions over all cosets.
    pub fn distinct_distributions(&self) -> Vec<Vec<u32>> {
        self.groups().into_iter().flat_map(|g| g.classes.into_iter().map(|c| c.distribution)).collect()
    }
}

fn table_cells(code: &LinearCode) -> u128 {
    (code.q() as u128).pow((code.n() - code.k()) as u32) * (code.n() as u128 + 1)
}

fn primal_cost(code: &LinearCode) -> u128 {
    (code.q() as u128).pow(code.n() as u32)
}

fn dual_character_cost(code: &LinearCode) -> u128 {
    let r = (code.n() - code.k()) as u32;
    let size = (code.q() as u128).pow(r);
    let bits = (code.field().degree() * r) as u128;
    size * (code.n() as u128 + 1) * (bits + code.n() as u128 + 2)
}

fn primal_feasible(code: &LinearCode, caps: &Caps) -> Result<()> {
    cap_check("primal coset enumeration", primal_cost(code), caps.primal)?;
    cap_check("coset table", table_cells(code), caps.table_cells)?;
    cap_check("coset table syndromes", (code.q() as u128).pow((code.n() - code.k()) as u32), caps.syndrome)
}

fn dual_character_feasible(code: &LinearCode, caps: &Caps) -> Result<()> {
    if code.field().p() != 2 {
        return Err(Error::InvalidArgument("the dual-character engine needs characteristic 2".into()));
    }
    if (code.q() as u128).pow(code.k() as u32) > u32::MAX as u128 {
        return Err(Error::CapExceeded {
            what: "coset size",
            needed: (code.q() as u128).pow(code.k() as u32),
            cap: u32::MAX as u128,
        });
    }
    let dual_size = (code.q() as u128).pow((code.n() - code.k()) as u32);
    cap_check("dual-character transform", dual_size, caps.dual_character.min(1 << 30))?;
    cap_check("coset table", table_cells(code), caps.table_cells)?;
    cap_check("coset table syndromes", dual_size, caps.syndrome)
}

/// Builds the full coset table with the requested engine.
pub fn coset_weight_distributions(code: &LinearCode, engine: Engine, caps: &Caps) -> Result<CosetTable> {
    code.require_nontrivial_dimension()?;
    let h = code.parity_check();
    let (counts, used) = match engine {
        Engine::Primal => {
            primal_feasible(code, caps)?;
            (primal_counts(code, &h), EngineUsed::Primal)
        }
        Engine::DualCharacter => {
            dual_character_feasible(code, caps)?;
            (dual_character_counts(code, &h)?, EngineUsed::DualCharacter)
        }
        Engine::Auto => {
            let primal = primal_feasible(code, caps);
            let dual = dual_character_feasible(code, caps);
            match (primal, dual) {
                (Ok(()), Ok(())) if dual_character_cost(code) < primal_cost(code) => {
                    (dual_character_counts(code, &h)?, EngineUsed::DualCharacter)
                }
                (Ok(()), _) => (primal_counts(code, &h), EngineUsed::Primal),
                (Err(_), Ok(())) => (dual_character_counts(code, &h)?, EngineUsed::DualCharacter),
                (Err(e), Err(_)) => return Err(e),
            }
        }
    };
    Ok(CosetTable { n: code.n(), k: code.k(), q: code.q(), parity_check: h, counts, engine: used })
}

fn primal_counts(code: &LinearCode, h: &Matrix) -> Vec<u32> {
    let f = code.field();
    let (n, r) = (code.n(), h.rows());
    let q = f.q() as usize;
    let stride = n + 1;
    let red = h.rref(f);
    let free: Vec<usize> = (0..n).filter(|c| !red.pivots.contains(c)).collect();
    // Row i holds the syndrome contribution of free coordinate i.
    let mut contrib = Matrix::zeros(free.len(), r);
    for (i, &c) in free.iter().enumerate() {
        for j in 0..r {
            contrib.set(i, j, red.matrix.get(j, c));
        }
    }
    let walker = RowSpaceWalker::new(f, &contrib);
    let block_cosets = q.pow(r as u32 - 1);
    let mut counts = vec![0u32; block_cosets * q * stride];
    let place: Vec<usize> = (0..r).map(|j| q.pow(j as u32)).collect();

    par::for_each_block(&mut counts, block_cosets * stride, |top, block| {
        let top = Elem(top as u16);
        let mut tables = vec![0usize; (r - 1) * q];
        walker.walk(0..walker.total(), |message, base| {
            let w0 = message.iter().filter(|&&d| d != 0).count();
            let y_top = f.sub(top, base[r - 1]);
            let w1 = w0 + usize::from(!y_top.is_zero());
            if r == 1 {
                block[w1] += 1;
                return;
            }
            for j in 0..r - 1 {
                for y in 0..q {
                    tables[j * q + y] = f.add(base[j], Elem(y as u16)).code() as usize * place[j];
                }
            }
            fill(r - 2, 0, w1, &tables, q, stride, block);
        });
    });
    counts
}

/// Adds one count for every assignment of the pivot digits `0..=level`.
fn fill(level: usize, base: usize, weight: usize, tables: &[usize], q: usize, stride: usize, out: &mut [u32]) {
    let t = &tables[level * q..(level + 1) * q];
    if level == 0 {
        out[t[0] * stride + base * stride + weight] += 1;
        let w = weight + 1;
        for &off in &t[1..] {
            out[(base + off) * stride + w] += 1;
        }
        return;
    }
    fill(level - 1, base + t[0], weight, tables, q, stride, out);
    for &off in &t[1..] {
        fill(level - 1, base + off, weight + 1, tables, q, stride, out);
    }
}

/// In-place Walsh–Hadamard transform.
fn walsh_hadamard(a: &mut [i32]) {
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*x, *y);
                *x = u + v;
                *y = u - v;
            }
        }
        h *= 2;
    }
}

fn dual_character_counts(code: &LinearCode, h: &Matrix) -> Result<Vec<u32>> {
    let f = code.field();
    let (n, r) = (code.n(), h.rows());
    let q = f.q() as usize;
    let m = f.degree() as usize;
    let size = q.pow(r as u32);
    let stride = n + 1;

    // Weights of all dual words v H, with v indexed as Σ v_j q^j.
    let reversed = Matrix::from_rows(&h.row_vecs().into_iter().rev().collect::<Vec<_>>(), n)?;
    let walker = RowSpaceWalker::new(f, &reversed);
    let mut dual_weight = vec![0u8; size];
    walker.walk(0..walker.total(), {
        let mut idx = 0usize;
        let dual_weight = &mut dual_weight;
        move |_, word| {
            dual_weight[idx] = hamming_weight(word) as u8;
            idx += 1;
        }
    });
    let mut present = vec![false; n + 1];
    for &w in &dual_weight {
        present[w as usize] = true;
    }
    let weights: Vec<usize> = (0..=n).filter(|&w| present[w]).collect();

    // kraw[i][t] = K_i(weights[t])
    let mut kraw = vec![vec![0i64; weights.len()]; n + 1];
    for (i, row) in kraw.iter_mut().enumerate() {
        let mut magnitude = BigInt::zero();
        for (t, &w) in weights.iter().enumerate() {
            let k = krawtchouk(n, f.q(), i, w);
            magnitude += k.abs();
            row[t] = k.to_i64().ok_or(Error::CapExceeded {
                what: "Krawtchouk magnitude",
                needed: u128::MAX,
                cap: i64::MAX as u128,
            })?;
        }
        if magnitude * BigInt::from(size) >= BigInt::from(i64::MAX) {
            return Err(Error::CapExceeded {
                what: "character sum magnitude",
                needed: u128::MAX,
                cap: i64::MAX as u128,
            });
        }
    }

    let spectra: Vec<Vec<i32>> = weights
        .iter()
        .map(|&w| {
            let mut g: Vec<i32> = dual_weight.iter().map(|&x| i32::from(x as usize == w)).collect();
            walsh_hadamard(&mut g);
            g
        })
        .collect();

    // phi(b) has bit s equal to Tr(x^s b), so Tr(a b) = parity(a & phi(b)).
    let phi: Vec<usize> = (0..q)
        .map(|b| {
            (0..m).fold(0usize, |acc, s| {
                let t = f.trace(f.mul(Elem(1 << s), Elem(b as u16)));
                acc | ((t.code() as usize) << s)
            })
        })
        .collect();

    let mut counts = vec![0u32; size * stride];
    let block_cosets = size / q;
    let failure = core::sync::atomic::AtomicBool::new(false);
    par::for_each_block(&mut counts, block_cosets * stride, |block_idx, block| {
        for local in 0..block_cosets {
            let sigma = block_idx * block_cosets + local;
            let mut tau = 0usize;
            let mut rest = sigma;
            for j in 0..r {
                tau |= phi[rest % q] << (m * j);
                rest /= q;
            }
            for i in 0..=n {
                let acc: i64 = kraw[i].iter().zip(&spectra).map(|(&k, s)| k * s[tau] as i64).sum();
                if acc < 0 || acc % size as i64 != 0 {
                    failure.store(true, core::sync::atomic::Ordering::Relaxed);
                }
                block[local * stride + i] = (acc / size as i64) as u32;
            }
        }
    });
    if failure.into_inner() {
        return Err(Error::InvariantViolated("character sums are not exact multiples of q^(n-k)".into()));
    }
    Ok(counts)
}

/// Outcome of the complete-regularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrVerdict {
    pub is_cr: bool,
    /// Two syndromes with the same leader weight and different distributions.
    pub witness: Option<(u64, u64)>,
    /// False when the scan stopped at the first witness.
    pub exhaustive: bool,
}

/// A code is CR iff all cosets of equal minimum weight share one distribution.
pub fn complete_regularity(table: &CosetTable, early_exit: bool) -> CrVerdict {
    let mut first: Vec<Option<u64>> = vec![None; table.n + 1];
    let mut witness = None;
    for s in 0..table.num_cosets() {
        let w = table.leader_weight(s);
        match first[w] {
            None => first[w] = Some(s),
            Some(f) => {
                if witness.is_none() && table.distribution(f) != table.distribution(s) {
                    witness = Some((f, s));
                    if early_exit {
                        return CrVerdict { is_cr: false, witness, exhaustive: false };
                    }
                }
            }
        }
    }
    CrVerdict { is_cr: witness.is_none(), witness, exhaustive: true }
}

pub fn is_completely_regular(code: &LinearCode, caps: &Caps) -> Result<CrVerdict> {
    let table = coset_weight_distributions(code, Engine::Auto, caps)?;
    Ok(complete_regularity(&table, true))
}

/// Exact rationals `β_0..β_ρ` with `Σ β_i B(i) = 1` on every coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingCoefficients {
    pub beta: Vec<BigRational>,
}

impl PackingCoefficients {
    /// Checks the defining identity on every distinct distribution.
    pub fn satisfies(&self, table: &CosetTable) -> bool {
        table.distinct_distributions().iter().all(|d| {
            let sum: BigRational =
                self.beta.iter().zip(d).map(|(b, &c)| b * BigRational::from_integer(BigInt::from(c))).sum();
            sum == BigRational::one()
        })
    }

    /// `num/den` strings in lowest terms with positive denominators.
    pub fn as_fractions(&self) -> Vec<String> {
        self.beta
            .iter()
            .map(|b| if b.is_integer() { format!("{}", b.numer()) } else { format!("{}/{}", b.numer(), b.denom()) })
            .collect()
    }
}

/// Solves `R β = 1` exactly, with free unknowns set to zero. `None` when
/// inconsistent.
pub fn solve_packing_system(rows: &[Vec<u32>], unknowns: usize) -> Option<Vec<BigRational>> {
    let zero = BigRational::zero();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<BigRational> =
                (0..unknowns).map(|i| BigRational::from_integer(BigInt::from(*r.get(i).unwrap_or(&0)))).collect();
            v.push(BigRational::one());
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..unknowns {
        let Some(pr) = (lead..m.len()).find(|&i| m[i][c] != zero) else {
            continue;
        };
        m.swap(lead, pr);
        let inv = m[lead][c].recip();
        for x in m[lead].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != lead && m[i][c] != zero {
                let factor = m[i][c].clone();
                for j in 0..=unknowns {
                    let sub = &factor * &m[lead][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        lead += 1;
    }
    if m[lead..].iter().any(|row| row[unknowns] != zero) {
        return None;
    }
    let mut beta = vec![zero; unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        beta[c] = m[i][unknowns].clone();
    }
    Some(beta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpwsProvenance {
    /// Feasibility of the packing system on the coset table.
    Direct,
    /// Inferred from `ρ = s`.
    RhoEqualsS,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpwsVerdict {
    pub is_upws: bool,
    pub beta: Option<PackingCoefficients>,
    pub provenance: UpwsProvenance,
}

/// Direct decision from a full table with covering radius `rho`.
pub fn upws_from_table(table: &CosetTable) -> UpwsVerdict {
    let rho = table.covering_radius();
    let rows = table.distinct_distributions();
    let beta = solve_packing_system(&rows, rho + 1).map(|beta| PackingCoefficients { beta });
    UpwsVerdict { is_upws: beta.is_some(), beta, provenance: UpwsProvenance::Direct }
}

/// Direct when a table is affordable, otherwise by `ρ = s`. When both are
/// available they must agree.
pub fn is_upws(code: &LinearCode, rho: usize, s: usize, caps: &Caps) -> Result<UpwsVerdict> {
    match coset_weight_distributions(code, Engine::Auto, caps) {
        Ok(table) => {
            let v = upws_from_table(&table);
            if v.is_upws != (rho == s) {
                return Err(Error::InvariantViolated(format!(
                    "direct UPWS verdict {} disagrees with rho={rho}, s={s}",
                    v.is_upws
                )));
            }
            Ok(v)
        }
        Err(Error::CapExceeded { .. }) => {
            Ok(UpwsVerdict { is_upws: rho == s, beta: None, provenance: UpwsProvenance::RhoEqualsS })
        }
        Err(e) => Err(e),
    }
}

/// One instantiated implication between regularity and the code parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    pub id: &'static str,
    pub statement: &'static str,
    pub premise: bool,
    pub holds: bool,
}

/// Directly computed quantities the implication harness consumes.
#[derive(Clone, Copy, Debug)]
pub struct DirectFacts {
    pub d: usize,
    pub e: usize,
    pub s: usize,
    pub rho: usize,
    pub is_cr: bool,
    pub is_upws: bool,
}

/// Checks the six implications on one code; a violation is an error.
pub fn implication_harness(table: &CosetTable, facts: &DirectFacts) -> Result<Vec<Implication>> {
    let DirectFacts { d, e, s, rho, is_cr, is_upws } = *facts;
    let groups = table.groups();
    let uniform_at = |w: usize| groups.iter().filter(|g| g.weight == w).all(|g| g.classes.len() == 1);
    let sixth_premise_weights: Vec<usize> = groups.iter().map(|g| g.weight).filter(|&w| w + s <= d || w == s).collect();
    let checks = vec![
        Implication { id: "i", statement: "rho <= s", premise: true, holds: rho <= s },
        Implication {
            id: "ii",
            statement: "d >= 2s-1 implies CR",
            premise: d + 1 >= 2 * s,
            holds: d + 1 < 2 * s || is_cr,
        },
        Implication { id: "iii", statement: "rho = s iff UPWS", premise: true, holds: (rho == s) == is_upws },
        Implication { id: "iv", statement: "CR implies rho = s", premise: is_cr, holds: !is_cr || rho == s },
        Implication {
            id: "v",
            statement: "UPWS and rho = e+1 implies CR",
            premise: is_upws && rho == e + 1,
            holds: !(is_upws && rho == e + 1) || is_cr,
        },
        Implication {
            id: "vi",
            statement: "cosets of equal weight w <= d-s or w = s share a distribution",
            premise: !sixth_premise_weights.is_empty(),
            holds: sixth_premise_weights.iter().all(|&w| uniform_at(w)),
        },
    ];
    if let Some(bad) = checks.iter().find(|c| !c.holds) {
        return Err(Error::InvariantViolated(format!("({}) {}", bad.id, bad.statement)));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::sync::Arc;

    fn field(q: u32) -> Arc<Field> {
        Arc::new(Field::of_order(q).unwrap())
    }

    fn code(q: u32, k: usize, n: usize, codes: &[u16]) -> LinearCode {
        LinearCode::from_codes(field(q), k, n, codes).unwrap()
    }

    fn repetition(q: u32, n: usize) -> LinearCode {
        code(q, 1, n, &vec![1; n])
    }

    fn hexacode_class() -> LinearCode {
        let f = field(4);
        let mut g = Matrix::zeros(3, 6);
        for t in f.elements() {
            let c = t.0 as usize;
            g.set(0, c, Elem::ONE);
            g.set(1, c, t);
            g.set(2, c, f.mul(t, t));
        }
        g.set(1, 4, Elem::ONE);
        g.set(2, 5, Elem::ONE);
        LinearCode::new(f, g).unwrap()
    }

    /// Independent oracle: every vector, syndrome via matrix-vector product.
    fn oracle_table(c: &LinearCode) -> Vec<u32> {
        let f = c.field();
        let h = c.parity_check();
        let (n, q) = (c.n(), c.q() as u64);
        let space = SyndromeSpace::new(f, h.rows());
        let mut out = vec![0u32; space.size() as usize * (n + 1)];
        for idx in 0..q.pow(n as u32) {
            let mut rem = idx;
            let v: Vec<Elem> = (0..n)
                .map(|_| {
                    let e = Elem((rem % q) as u16);
                    rem /= q;
                    e
                })
                .collect();
            let s = space.pack(&h.apply(f, &v).unwrap());
            out[s as usize * (n + 1) + hamming_weight(&v)] += 1;
        }
        out
    }

    #[test]
    fn primal_matches_oracle() {
        let codes = [
            repetition(3, 4),
            repetition(2, 5),
            code(5, 2, 4, &[1, 0, 1, 1, 0, 1, 2, 3]),
            code(3, 2, 4, &[1, 0, 1, 1, 0, 1, 1, 2]),
            hexacode_class(),
            repetition(4, 3).dual(),
        ];
        for c in &codes {
            let t = coset_weight_distributions(c, Engine::Primal, &Caps::default()).unwrap();
            assert_eq!(t.counts, oracle_table(c));
            assert!(t.conserves_weights());
            assert_eq!(
                t.distribution(0),
                c.weight_distribution(1 << 20)
                    .unwrap()
                    .counts()
                    .iter()
                    .map(|&x| x as u32)
                    .collect::<Vec<_>>()
                    .as_slice()
            );
        }
    }

    #[test]
    fn dual_character_matches_primal() {
        let codes =
            [repetition(2, 5), repetition(4, 4), hexacode_class(), hexacode_class().dual(), repetition(8, 3).dual()];
        for c in &codes {
            let a = coset_weight_distributions(c, Engine::Primal, &Caps::default()).unwrap();
            let b = coset_weight_distributions(c, Engine::DualCharacter, &Caps::default()).unwrap();
            assert_eq!(a.counts, b.counts);
            assert_eq!(b.engine(), EngineUsed::DualCharacter);
        }
        let odd = repetition(3, 4);
        assert!(coset_weight_distributions(&odd, Engine::DualCharacter, &Caps::default()).is_err());
    }

    #[test]
    fn two_one_two_distributions() {
        for q in [2u32, 3, 4, 5, 7, 8] {
            let t = coset_weight_distributions(&repetition(q, 2), Engine::Auto, &Caps::default()).unwrap();
            let groups = t.groups();
            assert_eq!(groups.len(), 2);
            assert_eq!(
                groups[0].classes,
                vec![DistributionClass { distribution: vec![1, 0, q - 1], multiplicity: 1, example: 0 }]
            );
            assert_eq!(groups[1].classes.len(), 1);
            assert_eq!(groups[1].classes[0].distribution, vec![0, 2, q - 2]);
            assert!(complete_regularity(&t, false).is_cr);
        }
    }

    #[test]
    fn ternary_repetition_is_not_cr() {
        let c = repetition(3, 4);
        let t = coset_weight_distributions(&c, Engine::Auto, &Caps::default()).unwrap();
        let h = c.parity_check();
        let space = SyndromeSpace::new(c.field(), h.rows());
        let syn = |v: &[u16]| space.pack(&h.apply(c.field(), &v.iter().map(|&x| Elem(x)).collect::<Vec<_>>()).unwrap());
        let (a, b) = (syn(&[0, 0, 1, 1]), syn(&[1, 2, 0, 0]));
        assert_eq!(t.leader_weight(a), 2);
        assert_eq!(t.leader_weight(b), 2);
        // distances 2,2,4 and 2,3,3
        assert_eq!(t.distribution(a), &[0, 0, 2, 0, 1]);
        assert_eq!(t.distribution(b), &[0, 0, 1, 2, 0]);
        let v = complete_regularity(&t, true);
        assert!(!v.is_cr);
        let (x, y) = v.witness.unwrap();
        assert_eq!(t.leader_weight(x), t.leader_weight(y));
        assert_ne!(t.distribution(x), t.distribution(y));
        assert!(!v.exhaustive);
    }

    #[test]
    fn hexacode_table_shape() {
        let t = coset_weight_distributions(&hexacode_class(), Engine::Primal, &Caps::default()).unwrap();
        let groups = t.groups();
        assert_eq!(groups.iter().map(|g| g.weight).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(groups.iter().all(|g| g.classes.len() == 1));
        assert_eq!(groups.iter().map(LeaderGroup::cosets).sum::<u64>(), 64);
    }

    #[test]
    fn covering_radius_examples() {
        let caps = Caps::default();
        assert_eq!(covering_radius(&repetition(3, 4), &caps).unwrap(), 2);
        assert_eq!(covering_radius(&repetition(2, 6), &caps).unwrap(), 3);
        assert_eq!(covering_radius(&hexacode_class(), &caps).unwrap(), 2);
        let tiny = Caps { syndrome: 10, ..caps };
        assert!(matches!(covering_radius(&repetition(3, 4), &tiny), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn coset_leader_has_leader_weight() {
        let c = repetition(3, 4);
        let t = coset_weight_distributions(&c, Engine::Auto, &Caps::default()).unwrap();
        let space = SyndromeSpace::new(c.field(), 3);
        for s in 0..t.num_cosets() {
            let x = coset_leader(&c, s);
            assert_eq!(hamming_weight(&x), t.leader_weight(s));
            assert_eq!(space.pack(&c.parity_check().apply(c.field(), &x).unwrap()), s);
        }
    }

    #[test]
    fn upws_examples() {
        let caps = Caps::default();
        let rs = code(5, 2, 5, &[1, 0, 1, 1, 1, 0, 1, 2, 3, 4]);
        let t = coset_weight_distributions(&rs, Engine::Auto, &caps).unwrap();
        let v = upws_from_table(&t);
        assert!(v.is_upws);
        assert!(v.beta.as_ref().unwrap().satisfies(&t));

        // simplex [6,2,5]_5: not UPWS
        let f5 = field(5);
        let mut g = Matrix::zeros(2, 6);
        for a in 0..5u16 {
            g.set(0, a as usize, Elem::ONE);
            g.set(1, a as usize, Elem(a));
        }
        g.set(1, 5, Elem::ONE);
        let simplex = LinearCode::new(f5, g).unwrap();
        let t = coset_weight_distributions(&simplex, Engine::Auto, &caps).unwrap();
        assert!(!upws_from_table(&t).is_upws);
    }

    #[test]
    fn packing_system_solver() {
        // β0 = 1, β0 + β1 = 1 ⇒ β = (1, 0)
        let beta = solve_packing_system(&[vec![1, 0], vec![1, 1]], 2).unwrap();
        assert_eq!(beta, vec![BigRational::one(), BigRational::zero()]);
        // 2β0 = 1 and 3β0 = 1 is infeasible
        assert!(solve_packing_system(&[vec![2], vec![3]], 1).is_none());
        let pc = PackingCoefficients {
            beta: vec![BigRational::new(BigInt::from(2), BigInt::from(-4)), BigRational::from_integer(BigInt::from(3))],
        };
        assert_eq!(pc.as_fractions(), vec!["-1/2".to_string(), "3".to_string()]);
    }

    #[test]
    fn implication_harness_on_small_codes() {
        let caps = Caps::default();
        for c in [repetition(3, 4), repetition(2, 5), hexacode_class(), code(3, 2, 4, &[1, 0, 1, 1, 0, 1, 1, 2])] {
            let t = coset_weight_distributions(&c, Engine::Auto, &caps).unwrap();
            let sp = crate::code::spectra(&c, 1 << 20).unwrap();
            let d = sp.primal.min_distance().unwrap();
            let facts = DirectFacts {
                d,
                e: (d - 1) / 2,
                s: sp.dual.num_nonzero_weights(),
                rho: t.covering_radius(),
                is_cr: complete_regularity(&t, false).is_cr,
                is_upws: upws_from_table(&t).is_upws,
            };
            let checks = implication_harness(&t, &facts).unwrap();
            assert_eq!(checks.len(), 6);
        }
        // A deliberately false fact trips the harness.
        let c = repetition(3, 4);
        let t = coset_weight_distributions(&c, Engine::Auto, &caps).unwrap();
        let facts = DirectFacts { d: 4, e: 1, s: 3, rho: 4, is_cr: false, is_upws: false };
        assert!(matches!(implication_harness(&t, &facts), Err(Error::InvariantViolated(_))));
    }
}
