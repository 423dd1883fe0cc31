//! Named code families and small searches for self-dual codes.
//!
//! Evaluation points are taken in ascending element encoding, with the point
//! at infinity last. Every constructor re-checks the minimum distance it
//! promises by enumeration.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::code::{min_distance, LinearCode};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::par;

/// Enumeration cap used when re-verifying constructed codes.
const VERIFY_CAP: u64 = 100_000_000;

/// Fails unless `code` has minimum distance `d`.
pub fn verify_distance(code: &LinearCode, d: usize) -> Result<()> {
    let got = min_distance(code, VERIFY_CAP)?;
    if got != d {
        return Err(Error::InvariantViolated(format!(
            "constructed [{}, {}]_{} code has d = {got}, expected {d}",
            code.n(),
            code.k(),
            code.q()
        )));
    }
    Ok(())
}

fn checked(code: LinearCode, d: usize) -> Result<LinearCode> {
    verify_distance(&code, d)?;
    Ok(code)
}

fn require_length(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!("length {n} is below {min}")));
    }
    Ok(())
}

/// `[n, 1, n]_q` generated by the all-ones word.
pub fn repetition(field: &Arc<Field>, n: usize) -> Result<LinearCode> {
    require_length(n, 2)?;
    let g = Matrix::new(1, n, vec![Elem::ONE; n])?;
    checked(LinearCode::new(field.clone(), g)?, n)
}

/// `[n, n-1, 2]_q`, the dual of [`repetition`].
pub fn dual_repetition(field: &Arc<Field>, n: usize) -> Result<LinearCode> {
    checked(repetition(field, n)?.dual(), 2)
}

/// Columns `(1, a, ..., a^{k-1})` for the first `n` field elements.
pub fn reed_solomon(field: &Arc<Field>, n: usize, k: usize) -> Result<LinearCode> {
    if k == 0 || k > n || n > field.q() as usize {
        return Err(Error::InvalidArgument(format!("no [{n}, {k}] Reed-Solomon code over F_{}", field.q())));
    }
    let mut g = Matrix::zeros(k, n);
    for (j, a) in field.elements().take(n).enumerate() {
        for i in 0..k {
            g.set(i, j, field.pow(a, i as u64));
        }
    }
    checked(LinearCode::new(field.clone(), g)?, n - k + 1)
}

/// `[q+1, k, q-k+2]_q`: the Reed-Solomon columns for all of F_q plus the
/// column `(0, ..., 0, 1)`.
pub fn doubly_extended_rs(field: &Arc<Field>, k: usize) -> Result<LinearCode> {
    let q = field.q() as usize;
    if k == 0 || k >= q {
        return Err(Error::InvalidArgument(format!("doubly extended RS needs 1 <= k <= q-1, got k = {k}")));
    }
    extended_evaluation_code(field, k)
}

fn extended_evaluation_code(field: &Arc<Field>, k: usize) -> Result<LinearCode> {
    let q = field.q() as usize;
    let mut g = Matrix::zeros(k, q + 1);
    for (j, a) in field.elements().enumerate() {
        for i in 0..k {
            g.set(i, j, field.pow(a, i as u64));
        }
    }
    g.set(k - 1, q, Elem::ONE);
    checked(LinearCode::new(field.clone(), g)?, q + 2 - k)
}

/// `[q+1, 2, q]_q`, one column per point of the projective line: `(1, a)`
/// for every `a`, then `(0, 1)`.
pub fn simplex(field: &Arc<Field>) -> Result<LinearCode> {
    extended_evaluation_code(field, 2)
}

/// `[q+1, q-1, 3]_q`, the dual of [`simplex`].
pub fn hamming(field: &Arc<Field>) -> Result<LinearCode> {
    checked(simplex(field)?.dual(), 3)
}

/// `[q+2, 3, q]_q` for even `q`: columns `(1, t, t^2)` for every `t`, then
/// `(0, 1, 0)` and `(0, 0, 1)`.
pub fn hyperoval_code(field: &Arc<Field>) -> Result<LinearCode> {
    if field.p() != 2 {
        return Err(Error::InvalidArgument(format!("hyperoval codes need even q, got {}", field.q())));
    }
    let q = field.q() as usize;
    let mut g = Matrix::zeros(3, q + 2);
    for (j, t) in field.elements().enumerate() {
        g.set(0, j, Elem::ONE);
        g.set(1, j, t);
        g.set(2, j, field.mul(t, t));
    }
    g.set(1, q, Elem::ONE);
    g.set(2, q + 1, Elem::ONE);
    checked(LinearCode::new(field.clone(), g)?, q)
}

/// `(1 α)` with the smallest `α` satisfying `α² = -1`, if any.
pub fn self_dual_2_1_2(field: &Arc<Field>) -> Result<Option<LinearCode>> {
    let minus_one = field.neg(Elem::ONE);
    let Some(alpha) = field.nonzero().find(|&a| field.mul(a, a) == minus_one) else {
        return Ok(None);
    };
    let g = Matrix::new(1, 2, vec![Elem::ONE, alpha])?;
    Ok(Some(checked(LinearCode::new(field.clone(), g)?, 2)?))
}

/// Smallest `(α, β)` with nonzero entries and `1 + α² + β² = 0`, and the
/// smallest `ξ` with `ξ² = 1`.
pub fn self_dual_4_2_3_parameters(field: &Field) -> Option<(Elem, Elem, Elem)> {
    let xi = field.nonzero().find(|&x| field.mul(x, x) == Elem::ONE)?;
    for a in field.nonzero() {
        for b in field.nonzero() {
            let sum = field.add(Elem::ONE, field.add(field.mul(a, a), field.mul(b, b)));
            if sum.is_zero() {
                return Some((a, b, xi));
            }
        }
    }
    None
}

/// The code with generator `(1 0 α β; 0 ξ β -α)` for the parameters of
/// [`self_dual_4_2_3_parameters`].
pub fn self_dual_4_2_3(field: &Arc<Field>) -> Result<Option<LinearCode>> {
    let Some((a, b, xi)) = self_dual_4_2_3_parameters(field) else {
        return Ok(None);
    };
    let g = Matrix::new(2, 4, vec![Elem::ONE, Elem::ZERO, a, b, Elem::ZERO, xi, b, field.neg(a)])?;
    let code = checked(LinearCode::new(field.clone(), g)?, 3)?;
    if !code.is_self_dual() {
        return Err(Error::InvariantViolated(format!("[4,2,3]_{} construction is not self-dual", field.q())));
    }
    Ok(Some(code))
}

/// Search-space limit for [`self_dual_search`].
pub const SELF_DUAL_SEARCH_CAP: u128 = 100_000_000;

/// All self-dual codes `[I_k | A]` of length `n = 2k` with minimum distance
/// at least `d`, ordered by `A` row by row.
pub fn self_dual_search(field: &Arc<Field>, n: usize, k: usize, d: usize) -> Result<Vec<LinearCode>> {
    if n != 2 * k || k == 0 {
        return Err(Error::InvalidArgument(format!("self-dual codes need n = 2k, got n = {n}, k = {k}")));
    }
    let space = (field.q() as u128).saturating_pow((k * k) as u32);
    if space > SELF_DUAL_SEARCH_CAP {
        return Err(Error::CapExceeded { what: "self-dual search space", needed: space, cap: SELF_DUAL_SEARCH_CAP });
    }
    // G G^T = I + A A^T, so rows of A satisfy a_i . a_i = -1 and a_i . a_j = 0.
    let minus_one = field.neg(Elem::ONE);
    let q = field.q() as u64;
    let rows: Vec<Vec<Elem>> = (0..q.pow(k as u32))
        .map(|idx| {
            let mut rem = idx;
            let mut v = vec![Elem::ZERO; k];
            for x in v.iter_mut().rev() {
                *x = Elem((rem % q) as u16);
                rem /= q;
            }
            v
        })
        .filter(|v| field.dot(v, v) == minus_one)
        .collect();

    let found = par::map_reduce(
        rows.len() as u64,
        |range| {
            let mut out = Vec::new();
            for first in range {
                let mut chosen = vec![first as usize];
                extend_orthogonal(field, &rows, &mut chosen, k, &mut out);
            }
            out
        },
        Vec::new,
        |mut a, b| {
            a.extend(b);
            a
        },
    );

    let mut codes = Vec::new();
    for choice in found {
        let mut g = Matrix::zeros(k, n);
        for (i, &r) in choice.iter().enumerate() {
            g.set(i, i, Elem::ONE);
            for (j, &x) in rows[r].iter().enumerate() {
                g.set(i, k + j, x);
            }
        }
        let code = LinearCode::new(field.clone(), g)?;
        if min_distance(&code, VERIFY_CAP)? >= d {
            codes.push(code);
        }
    }
    Ok(codes)
}

fn extend_orthogonal(field: &Field, rows: &[Vec<Elem>], chosen: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if chosen.len() == k {
        out.push(chosen.clone());
        return;
    }
    for cand in 0..rows.len() {
        if chosen.iter().all(|&c| field.dot(&rows[c], &rows[cand]).is_zero()) {
            chosen.push(cand);
            extend_orthogonal(field, rows, chosen, k, out);
            chosen.pop();
        }
    }
}

/// Names accepted by [`named_matrix`].
pub const NAMED_MATRICES: [&str; 3] = ["rs_5_2_4_5", "code_4_2_3_5", "selfdual_4_2_3_4"];

/// A fixed generator matrix by name, with its distance re-verified:
/// `rs_5_2_4_5` is `(1 0 1 1 1; 0 1 2 3 4)` over F_5, `code_4_2_3_5` is
/// `(1 0 1 1; 0 1 2 3)` over F_5, `selfdual_4_2_3_4` is
/// `(1 0 α α²; 0 1 α² α)` over F_4 with `α` primitive.
pub fn named_matrix(name: &str) -> Result<LinearCode> {
    match name {
        "rs_5_2_4_5" => {
            let f = Arc::new(Field::of_order(5)?);
            checked(LinearCode::from_codes(f, 2, 5, &[1, 0, 1, 1, 1, 0, 1, 2, 3, 4])?, 4)
        }
        "code_4_2_3_5" => {
            let f = Arc::new(Field::of_order(5)?);
            checked(LinearCode::from_codes(f, 2, 4, &[1, 0, 1, 1, 0, 1, 2, 3])?, 3)
        }
        "selfdual_4_2_3_4" => {
            let f = Arc::new(Field::of_order(4)?);
            let a = f.primitive();
            let a2 = f.mul(a, a);
            let g = Matrix::new(2, 4, vec![Elem::ONE, Elem::ZERO, a, a2, Elem::ZERO, Elem::ONE, a2, a])?;
            checked(LinearCode::new(f, g)?, 3)
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}
