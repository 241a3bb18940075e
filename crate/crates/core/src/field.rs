//! Scalar arithmetic for the coefficient domains used by the ring
//! calculators: the rationals, prime fields, explicit finite extensions
//! F_p[y]/(h), and a rational model of a real-closed field whose algebraic
//! closure is represented by Gaussian rationals.
//!
//! A [`Field`] value is the arithmetic context; elements are plain data and
//! do not remember which field they belong to. Handing an element built in
//! one field to an operation of another is a programming error and panics.
//! Construction is the only place where primality of `p` or irreducibility
//! of an extension modulus is checked.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The requested prime field modulus is not prime.
    CompositeModulus(u64),
    /// The requested extension modulus factors over F_p.
    ReducibleModulus,
    /// Inversion or division by the zero element.
    DivisionByZero,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::CompositeModulus(p) => write!(f, "{p} is not prime"),
            FieldError::ReducibleModulus => write!(f, "extension modulus is reducible"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for FieldError {}

/// A Gaussian rational a + bi. Models an element of the algebraic closure of
/// the real-closed field; elements with `im == 0` are the "real" ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero() && !self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    pub fn neg(&self) -> Self {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    /// re^2 + im^2, the multiplicative norm down to the rationals.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }
}

/// One exact scalar. The variant must match the [`Field`] it is used with.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldElement {
    /// Element of the rationals.
    Rat(BigRational),
    /// Residue in [0, p) for a prime field.
    Mod(u64),
    /// Coefficient vector of fixed length m (ascending powers of the
    /// generator) for an extension field of degree m.
    Ext(Vec<u64>),
    /// Element of the real-closed model's closure.
    Gauss(GaussianRational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn p(&self) -> u64 {
        self.p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField {
    p: u64,
    /// Monic irreducible modulus, ascending coefficients, last entry 1.
    modulus: Vec<u64>,
}

impl ExtensionField {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Degree m of the extension over F_p.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

/// Arithmetic context for one coefficient domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Prime(PrimeField),
    Extension(ExtensionField),
    /// Real-closed model: scalars are Gaussian rationals, the "field" being
    /// the real (im = 0) ones and the closure all of them.
    RealClosed,
}

fn bad_element(what: &FieldElement, field: &Field) -> ! {
    panic!("element {what:?} does not belong to field {field:?}")
}

impl Field {
    pub fn rationals() -> Field {
        Field::Rationals
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::CompositeModulus(p));
        }
        Ok(Field::Prime(PrimeField { p }))
    }

    /// Builds F_p[y]/(h) from the coefficients of h (ascending). The modulus
    /// is normalized monic; it must be irreducible over F_p.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Field, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::CompositeModulus(p));
        }
        let mut h: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        fp::trim(&mut h);
        if h.len() < 2 {
            // Constant or zero modulus cannot define an extension.
            return Err(FieldError::ReducibleModulus);
        }
        // Normalize monic.
        let lc = *h.last().unwrap();
        if lc != 1 {
            let lcinv = fp::inv_u64(lc, p);
            for c in h.iter_mut() {
                *c = fp::mul_u64(*c, lcinv, p);
            }
        }
        if !fp::is_irreducible(&h, p) {
            return Err(FieldError::ReducibleModulus);
        }
        Ok(Field::Extension(ExtensionField { p, modulus: h }))
    }

    pub fn real_closed() -> Field {
        Field::RealClosed
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals | Field::RealClosed => 0,
            Field::Prime(f) => f.p,
            Field::Extension(f) => f.p,
        }
    }

    /// Number of elements for the finite fields, None otherwise.
    pub fn element_count(&self) -> Option<u128> {
        match self {
            Field::Prime(f) => Some(f.p as u128),
            Field::Extension(f) => {
                let mut n: u128 = 1;
                for _ in 0..f.degree() {
                    n = n.checked_mul(f.p as u128)?;
                }
                Some(n)
            }
            _ => None,
        }
    }

    /// Decodes the idx-th element of a finite field (mixed-radix over p).
    pub fn element_at(&self, idx: u128) -> FieldElement {
        match self {
            Field::Prime(f) => {
                debug_assert!(idx < f.p as u128);
                FieldElement::Mod(idx as u64)
            }
            Field::Extension(f) => {
                let mut digits = Vec::with_capacity(f.degree());
                let mut rest = idx;
                for _ in 0..f.degree() {
                    digits.push((rest % f.p as u128) as u64);
                    rest /= f.p as u128;
                }
                debug_assert!(rest == 0);
                FieldElement::Ext(digits)
            }
            _ => panic!("element_at on an infinite field"),
        }
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rat(BigRational::zero()),
            Field::Prime(_) => FieldElement::Mod(0),
            Field::Extension(f) => FieldElement::Ext(vec![0; f.degree()]),
            Field::RealClosed => FieldElement::Gauss(GaussianRational::from_integers(0, 0)),
        }
    }

    pub fn one(&self) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rat(BigRational::one()),
            Field::Prime(_) => FieldElement::Mod(1),
            Field::Extension(f) => {
                let mut v = vec![0; f.degree()];
                v[0] = 1;
                FieldElement::Ext(v)
            }
            Field::RealClosed => FieldElement::Gauss(GaussianRational::from_integers(1, 0)),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(f) => FieldElement::Mod(mod_i64(n, f.p)),
            Field::Extension(f) => {
                let mut v = vec![0; f.degree()];
                v[0] = mod_i64(n, f.p);
                FieldElement::Ext(v)
            }
            Field::RealClosed => FieldElement::Gauss(GaussianRational::from_integers(n, 0)),
        }
    }

    /// Rational coercion; only the characteristic-zero domains accept it.
    pub fn from_rational(&self, r: BigRational) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rat(r),
            Field::RealClosed => {
                FieldElement::Gauss(GaussianRational::new(r, BigRational::zero()))
            }
            _ => panic!("rational coercion into a finite field"),
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match (self, a) {
            (Field::Rationals, FieldElement::Rat(x)) => x.is_zero(),
            (Field::Prime(_), FieldElement::Mod(x)) => *x == 0,
            (Field::Extension(_), FieldElement::Ext(v)) => v.iter().all(|&c| c == 0),
            (Field::RealClosed, FieldElement::Gauss(z)) => z.is_zero(),
            _ => bad_element(a, self),
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (Field::Rationals, FieldElement::Rat(x), FieldElement::Rat(y)) => {
                FieldElement::Rat(x + y)
            }
            (Field::Prime(f), FieldElement::Mod(x), FieldElement::Mod(y)) => {
                debug_assert!(*x < f.p && *y < f.p);
                FieldElement::Mod(fp::add_u64(*x, *y, f.p))
            }
            (Field::Extension(f), FieldElement::Ext(u), FieldElement::Ext(v)) => {
                debug_assert!(u.len() == f.degree() && v.len() == f.degree());
                FieldElement::Ext(
                    u.iter().zip(v).map(|(&x, &y)| fp::add_u64(x, y, f.p)).collect(),
                )
            }
            (Field::RealClosed, FieldElement::Gauss(x), FieldElement::Gauss(y)) => {
                FieldElement::Gauss(x.add(y))
            }
            _ => bad_element(a, self),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (self, a) {
            (Field::Rationals, FieldElement::Rat(x)) => FieldElement::Rat(-x.clone()),
            (Field::Prime(f), FieldElement::Mod(x)) => {
                debug_assert!(*x < f.p);
                FieldElement::Mod(if *x == 0 { 0 } else { f.p - *x })
            }
            (Field::Extension(f), FieldElement::Ext(v)) => FieldElement::Ext(
                v.iter().map(|&c| if c == 0 { 0 } else { f.p - c }).collect(),
            ),
            (Field::RealClosed, FieldElement::Gauss(z)) => FieldElement::Gauss(z.neg()),
            _ => bad_element(a, self),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (Field::Rationals, FieldElement::Rat(x), FieldElement::Rat(y)) => {
                FieldElement::Rat(x * y)
            }
            (Field::Prime(f), FieldElement::Mod(x), FieldElement::Mod(y)) => {
                debug_assert!(*x < f.p && *y < f.p);
                FieldElement::Mod(fp::mul_u64(*x, *y, f.p))
            }
            (Field::Extension(f), FieldElement::Ext(u), FieldElement::Ext(v)) => {
                debug_assert!(u.len() == f.degree() && v.len() == f.degree());
                let prod = fp::mul(u, v, f.p);
                let red = fp::rem(&prod, &f.modulus, f.p);
                FieldElement::Ext(fp::pad(red, f.degree()))
            }
            (Field::RealClosed, FieldElement::Gauss(x), FieldElement::Gauss(y)) => {
                FieldElement::Gauss(x.mul(y))
            }
            _ => bad_element(a, self),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Rationals, FieldElement::Rat(x)) => FieldElement::Rat(x.recip()),
            (Field::Prime(f), FieldElement::Mod(x)) => FieldElement::Mod(fp::inv_u64(*x, f.p)),
            (Field::Extension(f), FieldElement::Ext(v)) => {
                let inv = fp::inv_mod(v, &f.modulus, f.p)
                    .expect("modulus is irreducible, nonzero elements are units");
                FieldElement::Ext(fp::pad(inv, f.degree()))
            }
            (Field::RealClosed, FieldElement::Gauss(z)) => FieldElement::Gauss(z.inv()?),
            _ => bad_element(a, self),
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn mod_i64(n: i64, p: u64) -> u64 {
    let r = n.rem_euclid(p as i64);
    r as u64
}

/// Deterministic Miller-Rabin, complete for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = fp::pow_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = fp::mul_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Minimal polynomial kit over F_p on raw coefficient vectors (ascending,
/// trailing zeros trimmed). Only what field construction and extension
/// element arithmetic need; the full polynomial layer lives above this one.
pub(crate) mod fp {
    pub fn add_u64(a: u64, b: u64, p: u64) -> u64 {
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    }

    pub fn sub_u64(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + p - b
        }
    }

    pub fn mul_u64(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow_u64(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_u64(acc, a, p);
            }
            a = mul_u64(a, a, p);
            e >>= 1;
        }
        acc
    }

    pub fn inv_u64(a: u64, p: u64) -> u64 {
        // p prime, a != 0.
        pow_u64(a, p - 2, p)
    }

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn pad(mut v: Vec<u64>, len: usize) -> Vec<u64> {
        debug_assert!(v.len() <= len);
        v.resize(len, 0);
        v
    }

    pub fn deg(v: &[u64]) -> Option<usize> {
        v.iter().rposition(|&c| c != 0)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (da, db) = (deg(a), deg(b));
        let (da, db) = match (da, db) {
            (Some(da), Some(db)) => (da, db),
            _ => return vec![],
        };
        let mut out = vec![0u64; da + db + 1];
        for i in 0..=da {
            if a[i] == 0 {
                continue;
            }
            for j in 0..=db {
                out[i + j] = add_u64(out[i + j], mul_u64(a[i], b[j], p), p);
            }
        }
        out
    }

    /// Remainder of a modulo b; b nonzero.
    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let db = deg(b).expect("division by zero polynomial");
        let lcinv = inv_u64(b[db], p);
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        while let Some(dr) = deg(&r) {
            if dr < db {
                break;
            }
            let c = mul_u64(r[dr], lcinv, p);
            for j in 0..=db {
                let t = mul_u64(c, b[j], p);
                r[dr - db + j] = sub_u64(r[dr - db + j], t, p);
            }
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        // Normalize monic.
        if let Some(d) = deg(&x) {
            let lcinv = inv_u64(x[d], p);
            for c in x.iter_mut() {
                *c = mul_u64(*c, lcinv, p);
            }
        }
        x
    }

    pub fn mulmod(a: &[u64], b: &[u64], h: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), h, p)
    }

    pub fn powmod_u64(a: &[u64], mut e: u64, h: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, h, p);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, h, p);
            }
            base = mulmod(&base, &base, h, p);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a modulo h when gcd(a, h) = 1.
    pub fn inv_mod(a: &[u64], h: &[u64], p: u64) -> Option<Vec<u64>> {
        // Extended Euclid tracking only the coefficient of a.
        let mut r0 = h.to_vec();
        let mut r1 = rem(a, h, p);
        let mut t0: Vec<u64> = vec![];
        let mut t1: Vec<u64> = vec![1];
        trim(&mut r0);
        while !r1.is_empty() {
            // r0 = q*r1 + r2
            let (q, r2) = divrem(&r0, &r1, p);
            let qt1 = mul(&q, &t1, p);
            let t2 = sub(&t0, &qt1, p);
            r0 = r1;
            r1 = r2;
            t0 = t1;
            t1 = t2;
        }
        let d = deg(&r0)?;
        if d != 0 {
            return None;
        }
        let scale = inv_u64(r0[0], p);
        let mut out = t0;
        for c in out.iter_mut() {
            *c = mul_u64(*c, scale, p);
        }
        trim(&mut out);
        Some(rem(&out, h, p))
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            out[i] = sub_u64(x, y, p);
        }
        trim(&mut out);
        out
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = deg(b).expect("division by zero polynomial");
        let lcinv = inv_u64(b[db], p);
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dr0 = match deg(&r) {
            Some(d) if d >= db => d,
            _ => return (vec![], r),
        };
        let mut q = vec![0u64; dr0 - db + 1];
        while let Some(dr) = deg(&r) {
            if dr < db {
                break;
            }
            let c = mul_u64(r[dr], lcinv, p);
            q[dr - db] = c;
            for j in 0..=db {
                let t = mul_u64(c, b[j], p);
                r[dr - db + j] = sub_u64(r[dr - db + j], t, p);
            }
            trim(&mut r);
        }
        (q, r)
    }

    /// Rabin's criterion: h of degree m is irreducible over F_p iff
    /// x^(p^m) = x mod h and gcd(x^(p^(m/l)) - x, h) = 1 for prime l | m.
    pub fn is_irreducible(h: &[u64], p: u64) -> bool {
        let m = match deg(h) {
            Some(0) | None => return false,
            Some(m) => m,
        };
        // x^(p^j) mod h for j = 1..m via iterated Frobenius.
        let x = vec![0u64, 1];
        let mut frob = Vec::with_capacity(m + 1);
        frob.push(rem(&x, h, p)); // j = 0
        for j in 1..=m {
            let prev = frob[j - 1].clone();
            frob.push(powmod_u64(&prev, p, h, p));
        }
        if sub(&frob[m], &rem(&x, h, p), p) != Vec::<u64>::new() {
            return false;
        }
        let mut rest = m;
        let mut l = 2;
        let mut prime_divs = Vec::new();
        while l * l <= rest {
            if rest % l == 0 {
                prime_divs.push(l);
                while rest % l == 0 {
                    rest /= l;
                }
            }
            l += 1;
        }
        if rest > 1 {
            prime_divs.push(rest);
        }
        for l in prime_divs {
            let j = m / l;
            let diff = sub(&frob[j], &rem(&x, h, p), p);
            let g = gcd(&diff, h, p);
            if deg(&g) != Some(0) {
                return false;
            }
        }
        true
    }
}
