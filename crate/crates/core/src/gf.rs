//! Arithmetic in GF(p^r) for p^r ≤ 1024.
//!
//! Elements are encoded as the base-p integer of their coefficient vector
//! over the polynomial basis: `c_0 + c_1 p + ... + c_{r-1} p^{r-1}` stands for
//! `c_0 + c_1 x + ... + c_{r-1} x^{r-1}` modulo the field's modulus. Every
//! interface (files, reports, CLI) uses this encoding.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1024;

/// Orders up to this size get a full addition table.
const ADD_TABLE_MAX: u32 = 256;

/// A field element in the canonical base-p encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^r` when it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut m, mut r) = (q, 0);
    while m % p == 0 {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

/// All prime powers in `[2, max]`, ascending.
pub fn prime_powers_up_to(max: u32) -> Vec<u32> {
    (2..=max).filter(|&q| prime_power(q).is_some()).collect()
}

/// The finite field GF(p^r) with log/antilog tables.
///
/// Immutable once built; share it behind an `Arc`.
#[derive(Clone)]
pub struct Field {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    /// `exp[i] = ξ^i` for `i < 2(q-1)` so products of logs need no reduction.
    exp: Vec<u16>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u16>,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
    pow_p: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for Field {}

// Polynomials over F_p, constant term first.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = poly_trim(a.to_vec());
    let m = poly_trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while a.len() > dm {
        let da = a.len() - 1;
        let factor = a[da] * lead_inv % p;
        for (i, &c) in m.iter().enumerate() {
            let idx = da - dm + i;
            a[idx] = (a[idx] + p - factor * c % p) % p;
        }
        a = poly_trim(a);
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime: a^(p-2)
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn poly_from_code(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for c in out.iter_mut() {
        *c = code % p;
        code /= p;
    }
    out
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = poly_trim(poly.to_vec());
    if poly.len() < 2 {
        return false;
    }
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut divisor = poly_from_code(low, p, d);
            divisor.push(1);
            if poly_rem(&poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `r` over F_p,
/// comparing the non-leading coefficients as a base-p integer.
pub fn default_modulus(p: u32, r: u32) -> Vec<u32> {
    (0..p.pow(r))
        .map(|low| {
            let mut m = poly_from_code(low, p, r as usize);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists in every degree")
}

impl Field {
    /// Builds GF(p^r), using the default modulus when none is supplied.
    pub fn new(p: u32, r: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let q = p.checked_pow(r).filter(|&q| q <= MAX_ORDER).ok_or(Error::FieldTooLarge { p, r, max: MAX_ORDER })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != r as usize + 1 || m[r as usize] != 1 {
                    return Err(Error::InvalidModulus(format!("expected a monic polynomial of degree {r}, got {m:?}")));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("coefficients must lie in [0,{p})")));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::InvalidModulus(format!("{m:?} is reducible over F_{p}")));
                }
                m.to_vec()
            }
            None => default_modulus(p, r),
        };

        let mul_poly = |a: u32, b: u32| -> u32 {
            let da = poly_from_code(a, p, r as usize);
            let db = poly_from_code(b, p, r as usize);
            let mut prod = vec![0u32; 2 * r as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let rem = poly_rem(&prod, &modulus, p);
            rem.iter().rev().fold(0, |acc, &c| acc * p + c)
        };

        let order = q - 1;
        let primitive = (1..q)
            .find(|&g| {
                let mut x = g;
                for i in 1..=order {
                    if x == 1 {
                        return i == order;
                    }
                    x = mul_poly(x, g);
                }
                false
            })
            .expect("the multiplicative group of a field is cyclic");

        let mut exp = vec![0u16; 2 * order as usize];
        let mut log = vec![0u16; q as usize];
        let mut x = 1u32;
        for i in 0..order as usize {
            exp[i] = x as u16;
            exp[i + order as usize] = x as u16;
            log[x as usize] = i as u16;
            x = mul_poly(x, primitive);
        }

        let add_digits = |a: u32, b: u32| -> u32 {
            if p == 2 {
                return a ^ b;
            }
            let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
            for _ in 0..r {
                out += ((a % p + b % p) % p) * scale;
                a /= p;
                b /= p;
                scale *= p;
            }
            out
        };
        let neg: Vec<u16> = (0..q)
            .map(|a| {
                let (mut a, mut out, mut scale) = (a, 0, 1);
                for _ in 0..r {
                    out += ((p - a % p) % p) * scale;
                    a /= p;
                    scale *= p;
                }
                out as u16
            })
            .collect();
        let add = (q <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b) as u16;
                }
            }
            t
        });

        let mut field =
            Field { p, r, q, modulus, primitive: Elem(primitive as u16), exp, log, add, neg, pow_p: Vec::new() };
        field.pow_p = (0..q).map(|a| field.pow(Elem(a as u16), p as u64).code()).collect();
        Ok(field)
    }

    /// GF(q) for a prime power `q` with the default modulus.
    pub fn of_order(q: u32) -> Result<Field> {
        let (p, r) = prime_power(q).ok_or(Error::InvalidArgument(format!("{q} is not a prime power")))?;
        Field::new(p, r, None)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.r
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q as usize
    }

    /// Modulus coefficients, constant term first, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The smallest-encoded generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q as u16).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q as u16).map(Elem)
    }

    pub fn check(&self, a: u32) -> Result<Elem> {
        if a < self.q {
            Ok(Elem(a as u16))
        } else {
            Err(Error::ElementOutOfRange(a, self.q))
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p as i64) as u16)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add {
            Some(t) => Elem(t[a.0 as usize * self.q as usize + b.0 as usize]),
            None if self.p == 2 => Elem(a.0 ^ b.0),
            None => {
                let p = self.p as u16;
                let (mut a, mut b) = (a.0, b.0);
                let (mut out, mut scale) = (0u16, 1u16);
                for _ in 0..self.r {
                    out += ((a % p + b % p) % p) * scale;
                    a /= p;
                    b /= p;
                    scale = scale.wrapping_mul(p);
                }
                Elem(out)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.q as usize - 1;
        Ok(Elem(self.exp[(order - self.log[a.0 as usize] as usize) % order]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with the convention `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let order = self.q as u64 - 1;
        let l = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        Elem(self.exp[l as usize])
    }

    /// `ξ^i` for the primitive element ξ.
    pub fn exp(&self, i: u64) -> Elem {
        Elem(self.exp[(i % (self.q as u64 - 1)) as usize])
    }

    /// Discrete logarithm to base ξ; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize] as u32)
    }

    /// The Frobenius map `a ↦ a^p`.
    #[inline]
    pub fn frobenius(&self, a: Elem) -> Elem {
        Elem(self.pow_p[a.0 as usize] as u16)
    }

    /// Absolute trace to the prime subfield.
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut conj = a;
        for _ in 0..self.r {
            acc = self.add(acc, conj);
            conj = self.frobenius(conj);
        }
        acc
    }

    /// Quadratic character on F_q^*, odd q only.
    pub fn quadratic_character(&self, a: Elem) -> Result<i8> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        match self.log(a) {
            None => Err(Error::CharacterOfZero),
            Some(l) if l % 2 == 0 => Ok(1),
            Some(_) => Ok(-1),
        }
    }

    /// Smallest-encoded `x` with `x^2 = a`, if any.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// Solutions of `a1 x1^2 + a2 x2^2 = t` over an odd-order field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticCount {
    pub count: usize,
    pub solutions: Vec<(Elem, Elem)>,
    /// Solutions with both coordinates nonzero.
    pub both_nonzero: usize,
    /// `q - χ(-a1 a2)`.
    pub predicted: i64,
}

/// Enumerates all of F_q^2 and counts solutions of the diagonal quadratic.
pub fn count_diagonal_quadratic(f: &Field, a1: Elem, a2: Elem, t: Elem) -> Result<QuadraticCount> {
    if f.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if a1.is_zero() || a2.is_zero() || t.is_zero() {
        return Err(Error::InvalidArgument("coefficients and right-hand side must be nonzero".into()));
    }
    let mut solutions = Vec::new();
    for x1 in f.elements() {
        let lhs1 = f.mul(a1, f.mul(x1, x1));
        for x2 in f.elements() {
            if f.add(lhs1, f.mul(a2, f.mul(x2, x2))) == t {
                solutions.push((x1, x2));
            }
        }
    }
    let chi = f.quadratic_character(f.neg(f.mul(a1, a2)))?;
    Ok(QuadraticCount {
        count: solutions.len(),
        both_nonzero: solutions.iter().filter(|(x, y)| !x.is_zero() && !y.is_zero()).count(),
        solutions,
        predicted: f.q() as i64 - chi as i64,
    })
}
