//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored ascending (index = power of x) with no trailing
//! zeros, so the zero polynomial is the empty vector and `degree()` returns
//! `None` for it. All arithmetic takes the field context explicitly; a
//! polynomial never remembers which field its coefficients came from.

mod factor;
mod factor_finite;
mod factor_rat;
mod resultant;
mod roots;
mod squarefree;

pub use factor::{factor, factor_with, is_irreducible, FactorOptions, Factorization};
pub use resultant::{resultant, star_product};
pub use roots::{irreducible_modulus, roots_in_extension, DEFAULT_ENUMERATION_CAP};
pub use squarefree::squarefree_decomposition;

use crate::field::{Field, FieldElement};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Division or inversion with a zero divisor.
    DivisionByZero,
    /// An operation that needs invertible roots got a polynomial with
    /// constant term zero.
    ZeroConstantTerm,
    /// The operation is not defined over the given field.
    UnsupportedField,
    /// Rational factorization past the configured degree cap.
    DegreeTooLarge { degree: usize, cap: usize },
    /// Field enumeration past the configured element cap.
    CapExceeded { size: u128, cap: u128 },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DivisionByZero => write!(f, "division by the zero polynomial"),
            PolyError::ZeroConstantTerm => write!(f, "polynomial has constant term zero"),
            PolyError::UnsupportedField => write!(f, "operation not supported over this field"),
            PolyError::DegreeTooLarge { degree, cap } => {
                write!(f, "degree {degree} exceeds the factorization cap {cap}")
            }
            PolyError::CapExceeded { size, cap } => {
                write!(f, "field of size {size} exceeds the enumeration cap {cap}")
            }
        }
    }
}

impl std::error::Error for PolyError {}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one(k: &Field) -> Self {
        Polynomial { coeffs: vec![k.one()] }
    }

    pub fn x(k: &Field) -> Self {
        Polynomial { coeffs: vec![k.zero(), k.one()] }
    }

    pub fn constant(c: FieldElement) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Convenience: ascending integer coefficients coerced into k.
    pub fn from_i64(k: &Field, cs: &[i64]) -> Self {
        Polynomial::from_coeffs(cs.iter().map(|&c| k.from_i64(c)).collect())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, k: &Field) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn constant_term(&self, k: &Field) -> FieldElement {
        self.coeff(0, k)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FieldElement::is_one)
    }

    pub fn add(&self, rhs: &Polynomial, k: &Field) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(k.add(&self.coeff(i, k), &rhs.coeff(i, k)));
        }
        Polynomial::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Polynomial, k: &Field) -> Polynomial {
        self.add(&rhs.neg(k), k)
    }

    pub fn neg(&self, k: &Field) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect() }
    }

    pub fn mul(&self, rhs: &Polynomial, k: &Field) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![k.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Polynomial::from_coeffs(out)
    }

    pub fn mul_scalar(&self, c: &FieldElement, k: &Field) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|a| k.mul(a, c)).collect() }
    }

    /// Multiplication by x^e.
    pub fn mul_xpow(&self, e: usize, k: &Field) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![k.zero(); e];
        out.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs: out }
    }

    pub fn pow(&self, e: u32, k: &Field) -> Polynomial {
        let mut acc = Polynomial::one(k);
        for _ in 0..e {
            acc = acc.mul(self, k);
        }
        acc
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, d: &Polynomial, k: &Field) -> Result<(Polynomial, Polynomial), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let lcinv = k.inv(d.leading().unwrap()).map_err(|_| PolyError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n < dd + 1 {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quo = vec![k.zero(); n - dd];
        for top in (dd..n).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let c = k.mul(&rem[top], &lcinv);
            quo[top - dd] = c.clone();
            for j in 0..=dd {
                let t = k.mul(&c, &d.coeffs[j]);
                rem[top - dd + j] = k.sub(&rem[top - dd + j], &t);
            }
        }
        Ok((Polynomial::from_coeffs(quo), Polynomial::from_coeffs(rem)))
    }

    pub fn rem(&self, d: &Polynomial, k: &Field) -> Result<Polynomial, PolyError> {
        Ok(self.divrem(d, k)?.1)
    }

    /// Exact division; panics if the division leaves a remainder (that is an
    /// internal defect wherever this is used).
    pub fn div_exact(&self, d: &Polynomial, k: &Field) -> Polynomial {
        let (q, r) = self.divrem(d, k).expect("division by zero polynomial");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Polynomial, k: &Field) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, k).unwrap();
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(k)
        }
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*other = g, g monic
    /// (or zero when both inputs are zero).
    pub fn xgcd(&self, other: &Polynomial, k: &Field) -> (Polynomial, Polynomial, Polynomial) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Polynomial::one(k);
        let mut s1 = Polynomial::zero();
        let mut t0 = Polynomial::zero();
        let mut t1 = Polynomial::one(k);
        while !r1.is_zero() {
            let (q, r2) = r0.divrem(&r1, k).unwrap();
            let s2 = s0.sub(&q.mul(&s1, k), k);
            let t2 = t0.sub(&q.mul(&t1, k), k);
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let scale = k.inv(r0.leading().unwrap()).unwrap();
        (
            r0.mul_scalar(&scale, k),
            s0.mul_scalar(&scale, k),
            t0.mul_scalar(&scale, k),
        )
    }

    pub fn derivative(&self, k: &Field) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(&k.from_i64(i as i64), c))
            .collect();
        Polynomial::from_coeffs(out)
    }

    pub fn eval(&self, a: &FieldElement, k: &Field) -> FieldElement {
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, a), c);
        }
        acc
    }

    pub fn monic(&self, k: &Field) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = k.inv(lc).expect("leading coefficient is nonzero");
                self.mul_scalar(&inv, k)
            }
        }
    }
}

impl FieldElement {
    /// Structural zero test (valid because elements are kept canonical).
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rat(x) => num_traits::Zero::is_zero(x),
            FieldElement::Mod(x) => *x == 0,
            FieldElement::Ext(v) => v.iter().all(|&c| c == 0),
            FieldElement::Gauss(z) => z.is_zero(),
        }
    }

    /// Structural one test.
    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rat(x) => num_traits::One::is_one(x),
            FieldElement::Mod(x) => *x == 1,
            FieldElement::Ext(v) => {
                v.first() == Some(&1) && v.iter().skip(1).all(|&c| c == 0)
            }
            FieldElement::Gauss(z) => z.is_real() && num_traits::One::is_one(&z.re),
        }
    }
}

/// Uniform random polynomial of degree at most max_deg (possibly zero),
/// with small integer-image coefficients. Test helper.
#[cfg(test)]
pub(crate) fn random_poly(
    k: &Field,
    max_deg: usize,
    rng: &mut rand_chacha::ChaCha12Rng,
) -> Polynomial {
    use rand::Rng;
    let deg = rng.gen_range(0..=max_deg);
    let coeffs = (0..=deg).map(|_| k.from_i64(rng.gen_range(-9..=9))).collect();
    Polynomial::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn zero_polynomial_has_no_degree() {
        let k = Field::rationals();
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::from_i64(&k, &[0, 0, 0]).degree(), None);
        assert_eq!(Polynomial::from_i64(&k, &[5]).degree(), Some(0));
        assert_eq!(Polynomial::x(&k).degree(), Some(1));
    }

    #[test]
    fn divrem_round_trips() {
        for k in [Field::rationals(), Field::prime(7).unwrap()] {
            let mut rng = ChaCha12Rng::seed_from_u64(3);
            for _ in 0..200 {
                let a = random_poly(&k, 7, &mut rng);
                let d = random_poly(&k, 4, &mut rng);
                if d.is_zero() {
                    assert_eq!(a.divrem(&d, &k), Err(PolyError::DivisionByZero));
                    continue;
                }
                let (q, r) = a.divrem(&d, &k).unwrap();
                assert_eq!(q.mul(&d, &k).add(&r, &k), a);
                if !r.is_zero() {
                    assert!(r.degree().unwrap() < d.degree().unwrap());
                }
            }
        }
    }

    #[test]
    fn gcd_divides_both_and_bezout_holds() {
        for k in [Field::rationals(), Field::prime(5).unwrap()] {
            let mut rng = ChaCha12Rng::seed_from_u64(4);
            for _ in 0..100 {
                let a = random_poly(&k, 5, &mut rng);
                let b = random_poly(&k, 5, &mut rng);
                let g = a.gcd(&b, &k);
                if g.is_zero() {
                    assert!(a.is_zero() && b.is_zero());
                    continue;
                }
                assert!(a.rem(&g, &k).unwrap().is_zero());
                assert!(b.rem(&g, &k).unwrap().is_zero());
                let (g2, s, t) = a.xgcd(&b, &k);
                assert_eq!(g, g2);
                assert_eq!(s.mul(&a, &k).add(&t.mul(&b, &k), &k), g);
            }
        }
    }

    #[test]
    fn derivative_satisfies_leibniz() {
        for k in [Field::rationals(), Field::prime(3).unwrap()] {
            let mut rng = ChaCha12Rng::seed_from_u64(5);
            for _ in 0..60 {
                let a = random_poly(&k, 5, &mut rng);
                let b = random_poly(&k, 5, &mut rng);
                let lhs = a.mul(&b, &k).derivative(&k);
                let rhs = a
                    .derivative(&k)
                    .mul(&b, &k)
                    .add(&a.mul(&b.derivative(&k), &k), &k);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn eval_is_a_ring_morphism() {
        let k = Field::prime(11).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        for _ in 0..60 {
            let a = random_poly(&k, 6, &mut rng);
            let b = random_poly(&k, 6, &mut rng);
            let pt = k.from_i64(rng.gen_range(-20..20));
            assert_eq!(
                a.mul(&b, &k).eval(&pt, &k),
                k.mul(&a.eval(&pt, &k), &b.eval(&pt, &k))
            );
            assert_eq!(
                a.add(&b, &k).eval(&pt, &k),
                k.add(&a.eval(&pt, &k), &b.eval(&pt, &k))
            );
        }
    }

    #[test]
    fn char_p_derivative_of_pth_powers_vanishes() {
        let k = Field::prime(3).unwrap();
        // x^3 + 2 has zero derivative mod 3.
        let f = Polynomial::from_i64(&k, &[2, 0, 0, 1]);
        assert!(f.derivative(&k).is_zero());
    }
}
