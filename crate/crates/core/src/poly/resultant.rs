//! Resultants and the multiplicative "star" convolution of polynomials.
//!
//! The star product of monic f and g is the monic polynomial whose roots
//! (with multiplicity, in a splitting field) are the pairwise products of
//! the roots of f and the roots of g. It is computed without leaving the
//! base field as a resultant in an auxiliary variable:
//!
//!   (f * g)(x) = Res_y(f(y), y^deg(g) * g(x/y))
//!
//! up to a scalar, which is removed by monic normalization. The second
//! argument lives in k[x][y], so the resultant is taken over the coefficient
//! ring k[x] with a fraction-free subresultant remainder sequence.

use super::{PolyError, Polynomial};
use crate::field::{Field, FieldElement};

/// Resultant of two univariate polynomials with coefficients in k, by the
/// Euclidean remainder sequence.
pub fn resultant(f: &Polynomial, g: &Polynomial, k: &Field) -> FieldElement {
    if f.is_zero() || g.is_zero() {
        return k.zero();
    }
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    if n == 0 {
        return k.pow(g.leading().unwrap(), m as u64);
    }
    if m == 0 {
        return k.pow(f.leading().unwrap(), n as u64);
    }
    let r = f.rem(g, k).unwrap();
    if r.is_zero() {
        return k.zero();
    }
    // Res(f, g) = (-1)^(mn) lc(g)^(m - deg r) Res(g, r).
    let dr = r.degree().unwrap();
    let mut scale = k.pow(g.leading().unwrap(), (m - dr) as u64);
    if m % 2 == 1 && n % 2 == 1 {
        scale = k.neg(&scale);
    }
    k.mul(&scale, &resultant(g, &r, k))
}

/// The star product described in the module docs. Requires both inputs
/// nonzero with nonzero constant term (so no root is zero and the product
/// of two module classes stays a module class of full dimension).
pub fn star_product(f: &Polynomial, g: &Polynomial, k: &Field) -> Result<Polynomial, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if k.is_zero(&f.constant_term(k)) || k.is_zero(&g.constant_term(k)) {
        return Err(PolyError::ZeroConstantTerm);
    }
    let df = f.degree().unwrap();
    let dg = g.degree().unwrap();
    // A(y) = f(y), constant in x.
    let a: Vec<Polynomial> = f
        .coeffs()
        .iter()
        .map(|c| Polynomial::constant(c.clone()))
        .collect();
    // B(y) = y^dg g(x/y): the y^j coefficient is g_(dg-j) x^(dg-j).
    let b: Vec<Polynomial> = (0..=dg)
        .map(|j| Polynomial::constant(g.coeff(dg - j, k)).mul_xpow(dg - j, k))
        .collect();
    let res = bi_resultant(bi_trim(a), bi_trim(b), k);
    assert!(
        !res.is_zero(),
        "star resultant vanished on inputs with nonzero roots"
    );
    let out = res.monic(k);
    assert_eq!(
        out.degree(),
        Some(df * dg),
        "star product degree must be the product of the input degrees"
    );
    Ok(out)
}

// ---- bivariate layer: elements of k[x][y] as Vec<Polynomial>, ascending
// in y, no trailing zero coefficients ----

fn bi_trim(mut v: Vec<Polynomial>) -> Vec<Polynomial> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn bi_scale(a: &[Polynomial], c: &Polynomial, k: &Field) -> Vec<Polynomial> {
    a.iter().map(|q| q.mul(c, k)).collect()
}

fn bi_div_scalar(a: &[Polynomial], c: &Polynomial, k: &Field) -> Vec<Polynomial> {
    a.iter()
        .map(|q| {
            if q.is_zero() {
                Polynomial::zero()
            } else {
                q.div_exact(c, k)
            }
        })
        .collect()
}

fn bi_sub(a: &[Polynomial], b: &[Polynomial], k: &Field) -> Vec<Polynomial> {
    let len = a.len().max(b.len());
    let zero = Polynomial::zero();
    bi_trim(
        (0..len)
            .map(|i| a.get(i).unwrap_or(&zero).sub(b.get(i).unwrap_or(&zero), k))
            .collect(),
    )
}

/// b shifted up by y^e.
fn bi_shift(b: &[Polynomial], e: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(); e];
    out.extend_from_slice(b);
    out
}

/// Monic gcd of the y-coefficients.
fn bi_content(a: &[Polynomial], k: &Field) -> Polynomial {
    let mut c = Polynomial::zero();
    for q in a {
        c = c.gcd(q, k);
    }
    c
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) a mod b, all divisions free.
fn prem(mut r: Vec<Polynomial>, b: &[Polynomial], k: &Field) -> Vec<Polynomial> {
    let db = b.len() - 1;
    let d = b[db].clone();
    let mut e = (r.len() - 1 - db + 1) as i64;
    while r.len() >= db + 1 {
        let shift = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        let rd = bi_scale(&r, &d, k);
        let sb = bi_scale(&bi_shift(b, shift), &lr, k);
        r = bi_sub(&rd, &sb, k);
        e -= 1;
        if r.is_empty() {
            break;
        }
    }
    if e > 0 && !r.is_empty() {
        let dp = d.pow(e as u32, k);
        r = bi_scale(&r, &dp, k);
    }
    r
}

/// Resultant over the coefficient ring k[x] by the subresultant sequence:
/// contents split off first, then pseudo-divisions with the g/h scalar
/// chain keeping every division exact.
fn bi_resultant(mut a: Vec<Polynomial>, mut b: Vec<Polynomial>, k: &Field) -> Polynomial {
    if a.is_empty() || b.is_empty() {
        return Polynomial::zero();
    }
    let ca = bi_content(&a, k);
    let cb = bi_content(&b, k);
    let da0 = (a.len() - 1) as u32;
    let db0 = (b.len() - 1) as u32;
    a = bi_div_scalar(&a, &ca, k);
    b = bi_div_scalar(&b, &cb, k);
    let t = ca.pow(db0, k).mul(&cb.pow(da0, k), k);
    let mut negate = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if da0 % 2 == 1 && db0 % 2 == 1 {
            negate = !negate;
        }
    }
    let mut g = Polynomial::one(k);
    let mut h = Polynomial::one(k);
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            // Res = s t h^(1-da) lc(b)^da, with the negative power of h an
            // exact division.
            let lb = b[0].clone();
            let num = lb.pow(da as u32, k);
            let res = if da >= 1 {
                num.div_exact(&h.pow((da - 1) as u32, k), k)
            } else {
                num.mul(&h, k)
            };
            let out = res.mul(&t, k);
            return if negate { out.neg(k) } else { out };
        }
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let delta = (da - db) as u32;
        let r = prem(a.clone(), &b, k);
        if r.is_empty() {
            return Polynomial::zero();
        }
        let divisor = g.mul(&h.pow(delta, k), k);
        let nb = bi_div_scalar(&r, &divisor, k);
        a = b;
        b = nb;
        g = a.last().unwrap().clone();
        if delta >= 1 {
            h = g.pow(delta, k).div_exact(&h.pow(delta - 1, k), k);
        }
    }
}
