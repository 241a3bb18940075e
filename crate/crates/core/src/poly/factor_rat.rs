//! Rational factorization by the classical modular route: reduce to a monic
//! integer polynomial, factor it modulo a well-chosen small prime, lift the
//! modular factors with quadratic Hensel steps past a coefficient bound, and
//! recombine lifted factors into true integer divisors.
//!
//! Integer polynomials are `Vec<BigInt>` in ascending order with no trailing
//! zeros (the zero polynomial is the empty vector), mirroring [`Polynomial`].

use super::factor_finite::factor_squarefree_finite;
use super::Polynomial;
use crate::field::{fp, is_prime_u64, Field, FieldElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Factors a squarefree rational polynomial of degree >= 1 into monic
/// irreducibles over the rationals (order unspecified; callers sort).
pub(crate) fn factor_squarefree_rational(g: &Polynomial, seed: u64) -> Vec<Polynomial> {
    let kq = Field::rationals();
    let n = g.degree().expect("nonzero input");
    if n == 1 {
        return vec![g.monic(&kq)];
    }
    let f_int = to_primitive_int(g);
    let lc = f_int.last().unwrap().clone();
    // Monic transform: G(x) = lc^(n-1) * F(x/lc) is monic with integer
    // coefficients, and H |-> H(lc*x)/lc^deg(H) maps its monic factors back
    // to the monic rational factors of g.
    let mut big_g: Vec<BigInt> = Vec::with_capacity(n + 1);
    for (i, c) in f_int.iter().enumerate().take(n) {
        big_g.push(c * lc.pow((n - 1 - i) as u32));
    }
    big_g.push(BigInt::one());
    let factors_z = factor_monic_squarefree_int(&big_g, seed);
    factors_z
        .into_iter()
        .map(|h| {
            let m = h.len() - 1;
            let coeffs: Vec<FieldElement> = h
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    FieldElement::Rat(BigRational::new(c.clone(), lc.pow((m - i) as u32)))
                })
                .collect();
            Polynomial::from_coeffs(coeffs)
        })
        .collect()
}

/// Clears denominators and content: returns the primitive integer polynomial
/// with positive leading coefficient proportional to g.
fn to_primitive_int(g: &Polynomial) -> Vec<BigInt> {
    let mut denom_lcm = BigInt::one();
    for c in g.coeffs() {
        let FieldElement::Rat(r) = c else {
            panic!("rational factorization over a non-rational field")
        };
        denom_lcm = denom_lcm.lcm(r.denom());
    }
    let mut ints: Vec<BigInt> = g
        .coeffs()
        .iter()
        .map(|c| {
            let FieldElement::Rat(r) = c else { unreachable!() };
            r.numer() * (&denom_lcm / r.denom())
        })
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if ints.last().unwrap().is_negative() {
        content = -content;
    }
    for c in ints.iter_mut() {
        *c = &*c / &content;
    }
    ints
}

/// Zassenhaus core: factors a monic squarefree integer polynomial of degree
/// >= 2 into monic integer irreducibles.
fn factor_monic_squarefree_int(g: &[BigInt], seed: u64) -> Vec<Vec<BigInt>> {
    let n = g.len() - 1;
    debug_assert!(n >= 2 && g[n].is_one());
    // Smallest odd prime where g stays squarefree (exists: the discriminant
    // is a nonzero integer with finitely many prime divisors).
    let mut p = 3u64;
    while !(is_prime_u64(p) && squarefree_mod_p(g, p)) {
        p += 2;
    }
    let kp = Field::prime(p).unwrap();
    let gp = poly_mod_p(g, p);
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ p);
    let mut modular = factor_squarefree_finite(&gp, &kp, &mut rng);
    if modular.len() == 1 {
        return vec![g.to_vec()];
    }
    modular.sort(); // deterministic lifting tree independent of the rng
    // Any monic factor of g has coefficients bounded by 2^n * |g|_2
    // (Mignotte); lift until the modulus exceeds twice that, so center
    // lifts of true factors are exact.
    let norm2 = {
        let s: BigInt = g.iter().map(|c| c * c).sum();
        s.sqrt() + 1
    };
    let bound = (BigInt::one() << n) * norm2;
    let target: BigInt = &bound * 2 + 1;
    // Quadratic steps land on p^(2^j); pick the first one past the target.
    let mut pk = BigInt::from(p);
    while pk < target {
        pk = &pk * &pk;
    }
    let lifted = hensel_tree(g, &modular, p, &pk, &kp);
    if cfg!(debug_assertions) {
        let mut prod = vec![BigInt::one()];
        for f in &lifted {
            prod = mmul(&prod, f, &pk);
        }
        debug_assert_eq!(prod, mreduce(g, &pk), "lifted factors lost the product");
    }
    let out = recombine(g, lifted, &pk);
    debug_assert_eq!(out.iter().map(|f| f.len() - 1).sum::<usize>(), n);
    out
}

fn squarefree_mod_p(g: &[BigInt], p: u64) -> bool {
    let pp = BigInt::from(p);
    let mut gp: Vec<u64> = g
        .iter()
        .map(|c| c.mod_floor(&pp).to_u64().unwrap())
        .collect();
    fp::trim(&mut gp);
    let mut dp: Vec<u64> = (1..gp.len())
        .map(|i| fp::mul_u64(gp[i], i as u64 % p, p))
        .collect();
    fp::trim(&mut dp);
    if dp.is_empty() {
        return false;
    }
    fp::deg(&fp::gcd(&gp, &dp, p)) == Some(0)
}

fn poly_mod_p(g: &[BigInt], p: u64) -> Polynomial {
    let pp = BigInt::from(p);
    Polynomial::from_coeffs(
        g.iter()
            .map(|c| FieldElement::Mod(c.mod_floor(&pp).to_u64().unwrap()))
            .collect(),
    )
}

fn z_from_p(f: &Polynomial) -> Vec<BigInt> {
    f.coeffs()
        .iter()
        .map(|c| match c {
            FieldElement::Mod(a) => BigInt::from(*a),
            _ => unreachable!(),
        })
        .collect()
}

// ---- arithmetic on integer polynomials, plain and modulo a fixed M ----

fn ztrim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn mreduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn madd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let len = a.len().max(b.len());
    let zero = BigInt::zero();
    ztrim(
        (0..len)
            .map(|i| (a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).mod_floor(m))
            .collect(),
    )
}

fn msub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let len = a.len().max(b.len());
    let zero = BigInt::zero();
    ztrim(
        (0..len)
            .map(|i| (a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).mod_floor(m))
            .collect(),
    )
}

fn mmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    ztrim(out.into_iter().map(|c| c.mod_floor(m)).collect())
}

/// Division with remainder by a monic divisor, coefficients mod m.
fn mdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    let db = b.len() - 1;
    let mut r: Vec<BigInt> = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), ztrim(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = std::mem::replace(&mut r[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(db) {
            let t = (&r[i - db + j] - &c * bj).mod_floor(m);
            r[i - db + j] = t;
        }
        q[i - db] = c;
    }
    (ztrim(q), ztrim(r))
}

/// Division with remainder by a monic divisor over the plain integers.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    let db = b.len() - 1;
    let mut r: Vec<BigInt> = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), ztrim(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = std::mem::replace(&mut r[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(db) {
            let t = &r[i - db + j] - &c * bj;
            r[i - db + j] = t;
        }
        q[i - db] = c;
    }
    (ztrim(q), ztrim(r))
}

/// Symmetric representative of each coefficient mod m: range (-m/2, m/2].
fn center_lift(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    ztrim(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if &c * 2 > *m {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

// ---- Hensel lifting ----

/// Lifts the coprime monic factorization f = prod(parts) from mod p to mod
/// m_target (a power p^(2^j)), splitting the factor list in halves.
fn hensel_tree(
    f: &[BigInt],
    parts: &[Polynomial],
    p: u64,
    m_target: &BigInt,
    kp: &Field,
) -> Vec<Vec<BigInt>> {
    if parts.len() == 1 {
        return vec![mreduce(f, m_target)];
    }
    let (lh, rh) = parts.split_at(parts.len() / 2);
    let prod = |half: &[Polynomial]| {
        half.iter()
            .fold(Polynomial::one(kp), |acc, q| acc.mul(q, kp))
    };
    let (u, v) = hensel_pair(f, &prod(lh), &prod(rh), p, m_target, kp);
    let mut out = hensel_tree(&u, lh, p, m_target, kp);
    out.extend(hensel_tree(&v, rh, p, m_target, kp));
    out
}

/// Quadratic Hensel: given monic coprime u0*v0 = f mod p, returns monic
/// (u, v) with u*v = f mod m_target, u = u0 and v = v0 mod p.
fn hensel_pair(
    f: &[BigInt],
    u0: &Polynomial,
    v0: &Polynomial,
    p: u64,
    m_target: &BigInt,
    kp: &Field,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (g, s0, t0) = u0.xgcd(v0, kp);
    assert_eq!(g.degree(), Some(0), "Hensel halves must be coprime mod p");
    // xgcd normalizes g monic, so s0*u0 + t0*v0 = 1 exactly.
    let mut u = z_from_p(u0);
    let mut v = z_from_p(v0);
    let mut s = z_from_p(&s0);
    let mut t = z_from_p(&t0);
    let mut m = BigInt::from(p);
    let one = vec![BigInt::one()];
    while &m < m_target {
        let m2 = &m * &m;
        let fe = mreduce(f, &m2);
        // Factor step: absorb the defect e = f - u*v into v, then recover u
        // as an exact quotient so both halves stay monic.
        let e = msub(&fe, &mmul(&u, &v, &m2), &m2);
        let (_, r) = mdivrem_monic(&mmul(&s, &e, &m2), &v, &m2);
        let vv = madd(&v, &r, &m2);
        let (uu, rem) = mdivrem_monic(&fe, &vv, &m2);
        assert!(rem.is_empty(), "Hensel factor step lost exact division");
        // Bezout step: restore s*u + t*v = 1 at the doubled modulus.
        let b = msub(
            &madd(&mmul(&s, &uu, &m2), &mmul(&t, &vv, &m2), &m2),
            &one,
            &m2,
        );
        let (c, d) = mdivrem_monic(&mmul(&s, &b, &m2), &vv, &m2);
        let ss = msub(&s, &d, &m2);
        let tt = msub(
            &t,
            &madd(&mmul(&t, &b, &m2), &mmul(&c, &uu, &m2), &m2),
            &m2,
        );
        u = uu;
        v = vv;
        s = ss;
        t = tt;
        m = m2;
    }
    debug_assert_eq!(&m, m_target);
    debug_assert!(msub(&mreduce(f, &m), &mmul(&u, &v, &m), &m).is_empty());
    (u, v)
}

// ---- recombination ----

/// Finds the true monic integer factors of g as center lifts of products of
/// subsets of the lifted modular factors, smallest subsets first.
fn recombine(g: &[BigInt], lifted: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut found = Vec::new();
    let mut cur = g.to_vec();
    let mut active = lifted;
    'outer: loop {
        let na = active.len();
        let mut c = 1usize;
        while 2 * c <= na {
            let mut idx: Vec<usize> = (0..c).collect();
            loop {
                let mut prod = vec![BigInt::one()];
                for &i in &idx {
                    prod = mmul(&prod, &active[i], m);
                }
                let cand = center_lift(&prod, m);
                let (q, r) = zdivrem_monic(&cur, &cand);
                if r.is_empty() {
                    found.push(cand);
                    cur = q;
                    for &i in idx.iter().rev() {
                        active.remove(i);
                    }
                    continue 'outer;
                }
                if !next_combination(&mut idx, na) {
                    break;
                }
            }
            c += 1;
        }
        break;
    }
    if cur.len() > 1 {
        found.push(cur);
    }
    found
}

/// Advances idx to the next c-subset of 0..n in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let c = idx.len();
    let mut i = c;
    while i > 0 {
        i -= 1;
        if idx[i] < n - c + i {
            idx[i] += 1;
            for j in i + 1..c {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
