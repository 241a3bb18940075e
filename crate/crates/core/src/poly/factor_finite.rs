//! Distinct-degree and equal-degree splitting over F_p and its extensions.
//!
//! Equal-degree splitting is randomized (Cantor–Zassenhaus for odd
//! characteristic, the additive trace map for characteristic two) but runs on
//! a caller-seeded deterministic generator, so factorization output is a
//! pure function of the input and the seed.

use super::Polynomial;
use crate::field::{Field, FieldElement};
use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

fn field_order(k: &Field) -> BigUint {
    match k {
        Field::Prime(f) => BigUint::from(f.p()),
        Field::Extension(f) => BigUint::from(f.p()).pow(f.degree() as u32),
        _ => panic!("finite-field factorization over an infinite field"),
    }
}

/// Extension degree over the prime subfield (1 for F_p itself).
fn ext_degree(k: &Field) -> usize {
    match k {
        Field::Prime(_) => 1,
        Field::Extension(f) => f.degree(),
        _ => unreachable!(),
    }
}

fn powmod(g: &Polynomial, e: &BigUint, f: &Polynomial, k: &Field) -> Polynomial {
    let mut acc = Polynomial::one(k);
    let mut base = g.rem(f, k).unwrap();
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = acc.mul(&base, k).rem(f, k).unwrap();
        }
        base = base.mul(&base, k).rem(f, k).unwrap();
    }
    acc
}

fn random_poly_below(k: &Field, deg_bound: usize, rng: &mut ChaCha12Rng) -> Polynomial {
    let p = k.characteristic();
    let coeffs: Vec<FieldElement> = (0..deg_bound)
        .map(|_| match k {
            Field::Prime(_) => FieldElement::Mod(rng.gen_range(0..p)),
            Field::Extension(f) => {
                FieldElement::Ext((0..f.degree()).map(|_| rng.gen_range(0..p)).collect())
            }
            _ => unreachable!(),
        })
        .collect();
    Polynomial::from_coeffs(coeffs)
}

/// Factors a monic squarefree polynomial over a finite field into monic
/// irreducibles (order unspecified; callers sort).
pub(crate) fn factor_squarefree_finite(
    f: &Polynomial,
    k: &Field,
    rng: &mut ChaCha12Rng,
) -> Vec<Polynomial> {
    debug_assert!(f.is_monic());
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, k) {
        equal_degree(&g, d, k, rng, &mut out);
    }
    out
}

/// Splits f into (product of its irreducible factors of degree d, d) pairs.
fn distinct_degree(f: &Polynomial, k: &Field) -> Vec<(Polynomial, usize)> {
    let q = field_order(k);
    let x = Polynomial::x(k);
    let mut v = f.clone();
    let mut h = x.rem(&v, k).unwrap();
    let mut out = Vec::new();
    let mut d = 0usize;
    while v.degree() > Some(0) {
        d += 1;
        if v.degree().unwrap() < 2 * d {
            // Whatever is left is a single irreducible factor.
            out.push((v.clone(), v.degree().unwrap()));
            break;
        }
        h = powmod(&h, &q, &v, k);
        let g = h.sub(&x, k).gcd(&v, k);
        if g.degree() > Some(0) {
            v = v.div_exact(&g, k);
            h = h.rem(&v, k).unwrap();
            out.push((g, d));
        }
    }
    out
}

/// Splits a product of r = deg(g)/d irreducibles, all of degree d.
fn equal_degree(
    g: &Polynomial,
    d: usize,
    k: &Field,
    rng: &mut ChaCha12Rng,
    out: &mut Vec<Polynomial>,
) {
    let n = g.degree().unwrap();
    debug_assert!(n % d == 0);
    if n == d {
        out.push(g.clone());
        return;
    }
    let q = field_order(k);
    let odd = k.characteristic() != 2;
    for _attempt in 0..200 {
        let a = random_poly_below(k, n, rng);
        if a.degree().is_none() || a.degree() == Some(0) {
            continue;
        }
        let b = if odd {
            // a^((q^d - 1)/2) is +-1 on each factor's residue field.
            let e = (q.pow(d as u32) - BigUint::one()) >> 1;
            let bb = powmod(&a, &e, g, k);
            bb.sub(&Polynomial::one(k), k)
        } else {
            // Additive trace of a down to F_2 over each degree-d factor.
            let steps = ext_degree(k) * d;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..steps {
                t = t.mul(&t, k).rem(g, k).unwrap();
                acc = acc.add(&t, k);
            }
            acc
        };
        let split = b.gcd(g, k);
        let ds = split.degree();
        if ds > Some(0) && ds < g.degree() {
            equal_degree(&split, d, k, rng, out);
            equal_degree(&g.div_exact(&split, k), d, k, rng, out);
            return;
        }
    }
    panic!("equal-degree splitting failed to converge; defective randomness source");
}
