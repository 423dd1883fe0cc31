//! Enumeration of systematic MDS codes and their partition into equivalence
//! classes.
//!
//! Codes are compared by their reduced echelon generator. The class
//! representative is the smallest reduced generator in the orbit of the code
//! under the chosen group, found by exploring the whole orbit.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::analysis::{analyze, Analysis, AnalysisOptions};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::par;

/// Transformations allowed when comparing codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Equivalence {
    /// Coordinate permutations only.
    Permutation,
    /// Permutations and nonzero coordinate scalings.
    Monomial,
    /// Monomial maps followed by a field automorphism.
    Semilinear,
}

impl Equivalence {
    pub fn name(self) -> &'static str {
        match self {
            Equivalence::Permutation => "permutation",
            Equivalence::Monomial => "monomial",
            Equivalence::Semilinear => "semilinear",
        }
    }

    /// Number of group elements acting on length-`n` codes over `field`.
    pub fn group_order(self, field: &Field, n: usize) -> u128 {
        let perms: u128 = (1..=n as u128).product();
        match self {
            Equivalence::Permutation => perms,
            Equivalence::Monomial => perms * (field.q() as u128 - 1).pow(n as u32),
            Equivalence::Semilinear => perms * (field.q() as u128 - 1).pow(n as u32) * field.degree() as u128,
        }
    }
}

/// `x ↦ y` with `y_j = (λ_j x_{π(j)})^{p^a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialTransform {
    pub perm: Vec<usize>,
    pub scales: Vec<Elem>,
    pub automorphism: u32,
}

impl MonomialTransform {
    pub fn identity(n: usize) -> Self {
        MonomialTransform { perm: (0..n).collect(), scales: vec![Elem::ONE; n], automorphism: 0 }
    }

    pub fn is_valid(&self, field: &Field) -> bool {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        self.perm.iter().all(|&p| p < n && !core::mem::replace(&mut seen[p], true))
            && self.scales.len() == n
            && self.scales.iter().all(|s| !s.is_zero() && (s.0 as u32) < field.q())
            && self.automorphism < field.degree()
    }

    pub fn apply_vector(&self, field: &Field, x: &[Elem]) -> Vec<Elem> {
        (0..x.len())
            .map(|j| {
                let mut y = field.mul(self.scales[j], x[self.perm[j]]);
                for _ in 0..self.automorphism {
                    y = field.frobenius(y);
                }
                y
            })
            .collect()
    }

    /// Reduced generator of the image of the row space of `g`.
    pub fn apply(&self, field: &Field, g: &Matrix) -> Matrix {
        let rows: Vec<Vec<Elem>> = g.row_vecs().iter().map(|r| self.apply_vector(field, r)).collect();
        Matrix::from_rows(&rows, g.cols()).expect("same shape").row_space_basis(field)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, field: &Field, other: &MonomialTransform) -> MonomialTransform {
        let r = field.degree();
        // F^b(μ_j F^a(λ_{σ(j)} x)) = F^{a+b}(F^{-a}(μ_j) λ_{σ(j)} x)
        let unwind = (r - other.automorphism % r) % r;
        let perm = self.perm.iter().map(|&s| other.perm[s]).collect();
        let scales = self
            .perm
            .iter()
            .zip(&self.scales)
            .map(|(&s, &mu)| {
                let mut m = mu;
                for _ in 0..unwind {
                    m = field.frobenius(m);
                }
                field.mul(m, other.scales[s])
            })
            .collect();
        MonomialTransform { perm, scales, automorphism: (self.automorphism + other.automorphism) % r }
    }
}

/// Reduced generators of one orbit, in increasing order.
pub fn orbit(field: &Field, g: &Matrix, kind: Equivalence) -> Result<BTreeSet<Matrix>> {
    let n = g.cols();
    let order = kind.group_order(field, n);
    if order > GROUP_CAP {
        return Err(Error::CapExceeded { what: "equivalence group order", needed: order, cap: GROUP_CAP });
    }
    let mut gens = Vec::new();
    let id = MonomialTransform::identity(n);
    if n >= 2 {
        let mut swap = id.clone();
        swap.perm.swap(0, 1);
        gens.push(swap);
        let mut cycle = id.clone();
        cycle.perm = (0..n).map(|j| (j + 1) % n).collect();
        gens.push(cycle);
    }
    if kind >= Equivalence::Monomial && field.q() > 2 {
        let mut scale = id.clone();
        scale.scales[0] = field.primitive();
        gens.push(scale);
    }
    if kind == Equivalence::Semilinear && field.degree() > 1 {
        let mut frob = id.clone();
        frob.automorphism = 1;
        gens.push(frob);
    }
    let start = g.row_space_basis(field);
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while let Some(m) = frontier.pop() {
        for t in &gens {
            let image = t.apply(field, &m);
            if !seen.contains(&image) {
                seen.insert(image.clone());
                frontier.push(image);
            }
        }
    }
    Ok(seen)
}

/// Largest group the orbit search accepts.
pub const GROUP_CAP: u128 = 10_000_000;

/// Smallest reduced generator in the orbit of `g`.
pub fn canonical_form(field: &Field, g: &Matrix, kind: Equivalence) -> Result<Matrix> {
    Ok(orbit(field, g, kind)?.into_iter().next().expect("orbit contains the seed"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    /// Smallest reduced generator in the orbit.
    pub representative: Matrix,
    /// Indices of the input codes in this class.
    pub members: Vec<usize>,
    pub orbit_size: usize,
}

/// Partitions `codes` into orbits, ordered by representative.
pub fn equivalence_classes(field: &Field, codes: &[Matrix], kind: Equivalence) -> Result<Vec<EquivalenceClass>> {
    let mut index: BTreeMap<Matrix, Vec<usize>> = BTreeMap::new();
    for (i, g) in codes.iter().enumerate() {
        index.entry(g.row_space_basis(field)).or_default().push(i);
    }
    let mut assigned: BTreeSet<Matrix> = BTreeSet::new();
    let mut classes = Vec::new();
    let keys: Vec<Matrix> = index.keys().cloned().collect();
    for key in keys {
        if assigned.contains(&key) {
            continue;
        }
        let orb = orbit(field, &key, kind)?;
        let mut members = Vec::new();
        for m in &orb {
            if let Some(ids) = index.get(m) {
                members.extend_from_slice(ids);
                assigned.insert(m.clone());
            }
        }
        members.sort_unstable();
        classes.push(EquivalenceClass {
            representative: orb.iter().next().expect("nonempty").clone(),
            members,
            orbit_size: orb.len(),
        });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

/// Search-space limit for [`enumerate_mds_systematic`] before pruning.
pub const MDS_SEARCH_CAP: u128 = 1_000_000_000;

/// Every `[I_k | A]` generating an MDS `[n, k]` code, in increasing order.
/// A qualifies iff all its square submatrices are nonsingular; columns are
/// added one at a time and pruned on the first singular minor.
pub fn enumerate_mds_systematic(field: &Arc<Field>, n: usize, k: usize) -> Result<Vec<Matrix>> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("need 0 < k < n, got n = {n}, k = {k}")));
    }
    let r = n - k;
    let q = field.q() as u64;
    let space = (q as u128).saturating_pow((k * r) as u32);
    if space > MDS_SEARCH_CAP {
        return Err(Error::CapExceeded { what: "MDS search space", needed: space, cap: MDS_SEARCH_CAP });
    }
    let candidates: Vec<Vec<Elem>> = (0..q.pow(k as u32))
        .map(|idx| {
            let mut rem = idx;
            let mut v = vec![Elem::ZERO; k];
            for x in v.iter_mut().rev() {
                *x = Elem((rem % q) as u16);
                rem /= q;
            }
            v
        })
        .filter(|v| v.iter().all(|x| !x.is_zero()))
        .collect();
    let row_subsets: Vec<Vec<Vec<usize>>> = (0..=k.min(r)).map(|t| combinations(k, t)).collect();

    let found = par::map_reduce(
        candidates.len() as u64,
        |range| {
            let mut out = Vec::new();
            for first in range {
                let mut cols = vec![first as usize];
                extend_mds(field, &candidates, &row_subsets, &mut cols, r, &mut out);
            }
            out
        },
        Vec::new,
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    let mut mats: Vec<Matrix> = found
        .into_iter()
        .map(|cols| {
            let mut g = Matrix::zeros(k, n);
            for i in 0..k {
                g.set(i, i, Elem::ONE);
            }
            for (j, &c) in cols.iter().enumerate() {
                for i in 0..k {
                    g.set(i, k + j, candidates[c][i]);
                }
            }
            g
        })
        .collect();
    mats.sort();
    Ok(mats)
}

fn combinations(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    rec(0, n, t, &mut cur, &mut out);
    out
}

fn extend_mds(
    field: &Field,
    candidates: &[Vec<Elem>],
    row_subsets: &[Vec<Vec<usize>>],
    cols: &mut Vec<usize>,
    r: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if cols.len() == r {
        out.push(cols.clone());
        return;
    }
    for cand in 0..candidates.len() {
        cols.push(cand);
        if last_column_minors_nonsingular(field, candidates, row_subsets, cols) {
            extend_mds(field, candidates, row_subsets, cols, r, out);
        }
        cols.pop();
    }
}

/// Square submatrices of size >= 2 that use the last column are nonsingular
/// (size 1 is guaranteed by the nonzero candidates).
fn last_column_minors_nonsingular(
    field: &Field,
    candidates: &[Vec<Elem>],
    row_subsets: &[Vec<Vec<usize>>],
    cols: &[usize],
) -> bool {
    let (last, prev) = cols.split_last().expect("nonempty");
    for t in 2..row_subsets.len().min(cols.len() + 1) {
        for others in combinations(prev.len(), t - 1) {
            for rows in &row_subsets[t] {
                let mut data = Vec::with_capacity(t * t);
                for &i in rows {
                    data.extend(others.iter().map(|&o| candidates[prev[o]][i]));
                    data.push(candidates[*last][i]);
                }
                let m = Matrix::new(t, t, data).expect("square");
                if m.det(field).expect("square").is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// One class of a classification, with the profile of its representative.
#[derive(Clone, Debug)]
pub struct ClassSummary {
    pub representative: LinearCode,
    pub members: usize,
    pub orbit_size: usize,
    pub analysis: Analysis,
    /// Whether some member of the orbit is self-dual.
    pub self_dual_member: bool,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub equivalence: Equivalence,
    /// Number of systematic MDS generator matrices found.
    pub total_codes: usize,
    pub classes: Vec<ClassSummary>,
}

/// Enumerates and classifies all MDS `[n, k]_q` codes, profiling each class.
pub fn classify_mds(
    field: &Arc<Field>,
    n: usize,
    k: usize,
    kind: Equivalence,
    options: &AnalysisOptions,
) -> Result<ClassificationReport> {
    let mats = enumerate_mds_systematic(field, n, k)?;
    let classes = equivalence_classes(field, &mats, kind)?;
    let mut summaries = Vec::new();
    for class in classes {
        let code = LinearCode::new(field.clone(), class.representative.clone())?;
        let analysis = analyze(&code, options)?;
        let self_dual_member = n == 2 * k
            && orbit(field, &class.representative, kind)?
                .iter()
                .any(|g| LinearCode::new(field.clone(), g.clone()).map(|c| c.is_self_dual()).unwrap_or(false));
        summaries.push(ClassSummary {
            representative: code,
            members: class.members.len(),
            orbit_size: class.orbit_size,
            analysis,
            self_dual_member,
        });
    }
    Ok(ClassificationReport { q: field.q(), n, k, equivalence: kind, total_codes: mats.len(), classes: summaries })
}

/// Duality maps the classes of `a` one-to-one onto the classes of `b`.
pub fn dual_bijection(a: &ClassificationReport, b: &ClassificationReport) -> Result<bool> {
    if a.n != b.n || a.k + b.k != a.n || a.equivalence != b.equivalence {
        return Err(Error::InvalidArgument("reports are not for dual parameters".into()));
    }
    let Some(first) = a.classes.first().or(b.classes.first()) else {
        return Ok(true);
    };
    let field = first.representative.field().clone();
    let targets: BTreeSet<&Matrix> = b.classes.iter().map(|c| c.representative.generator()).collect();
    let mut hit = BTreeSet::new();
    for c in &a.classes {
        let image = canonical_form(&field, c.representative.dual().generator(), a.equivalence)?;
        if !targets.contains(&image) {
            return Ok(false);
        }
        hit.insert(image);
    }
    Ok(hit.len() == targets.len() && a.classes.len() == b.classes.len())
}

/// No MDS `[n, k]_q` code exists for any `2 <= k <= n - 2`.
pub fn verify_no_mds(field: &Arc<Field>, n: usize) -> Result<bool> {
    for k in 2..=n.saturating_sub(2) {
        if !enumerate_mds_systematic(field, n, k)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}
