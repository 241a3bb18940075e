//! The representation ring of k[x] with multiplication induced by
//! x ↦ x ⊗ x: integer combinations of indecomposable module classes, and
//! the tensor-product dispatcher that decomposes a product of two
//! indecomposables over the rationals, over finite fields, and over the
//! real-closed model.
//!
//! The engine exploits the splitting of the ring into a unipotent factor
//! (Jordan sizes at eigenvalue 1), a semisimple factor driven by the
//! star product f ⋆ g = ∏(x - λμ), and the nilpotent ideal spanned by the
//! k[x]/x^s classes.

use crate::field::{Field, GaussianRational};
use crate::green::{rprime_mul, RPrimeElement};
use crate::poly::{factor, star_product, Polynomial};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    /// Two elements of different fields were combined.
    FieldMismatch,
    /// A band descriptor needs a monic irreducible polynomial.
    NotIrreducible,
    /// A band polynomial must have a nonzero constant term (the class with
    /// constant term zero belongs to the nilpotent ideal).
    ZeroConstantTerm,
    /// A Jordan descriptor in the real-closed model needs a nonzero
    /// eigenvalue.
    ZeroEigenvalue,
    /// A rotation descriptor needs a parameter with nonzero imaginary part.
    RealParameter,
    /// The descriptor kind does not live over the element's field.
    UnsupportedField,
    /// Propagated polynomial arithmetic failure (e.g. a factorization cap).
    Poly(crate::poly::PolyError),
    /// A structural guarantee of the decomposition failed; this is a defect,
    /// never a user error.
    Internal(String),
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::FieldMismatch => write!(f, "elements live over different fields"),
            RingError::NotIrreducible => {
                write!(f, "band descriptor requires a monic irreducible polynomial")
            }
            RingError::ZeroConstantTerm => {
                write!(f, "band polynomial must have nonzero constant term")
            }
            RingError::ZeroEigenvalue => write!(f, "eigenvalue parameter must be nonzero"),
            RingError::RealParameter => {
                write!(f, "rotation parameter must have nonzero imaginary part")
            }
            RingError::UnsupportedField => {
                write!(f, "descriptor kind is not defined over this field")
            }
            RingError::Poly(e) => write!(f, "{e}"),
            RingError::Internal(msg) => write!(f, "internal defect: {msg}"),
        }
    }
}

impl std::error::Error for RingError {}

impl From<crate::poly::PolyError> for RingError {
    fn from(e: crate::poly::PolyError) -> Self {
        RingError::Poly(e)
    }
}

/// One indecomposable finite-dimensional k[x]-module class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Indecomposable {
    /// k[x]/x^s — the nilpotent classes spanning the ideal.
    Nil(u32),
    /// k[x]/f(x)^s with f monic irreducible, f(0) != 0.
    Band { f: Polynomial, s: u32 },
    /// Real-closed model: Jordan block J_λ(s) with λ a nonzero rational.
    Jordan { lambda: BigRational, s: u32 },
    /// Real-closed model: rotation block R̃_λ(s), λ = a + bi with b > 0
    /// canonical (λ and its conjugate name the same module).
    Rot { lambda: GaussianRational, s: u32 },
}

impl Indecomposable {
    pub fn nil(s: u32) -> Self {
        assert!(s >= 1, "nilpotent class needs size >= 1");
        Indecomposable::Nil(s)
    }

    /// Validated band class over `k`: normalizes `f` to monic and checks
    /// irreducibility and the nonzero constant term.
    pub fn band(f: &Polynomial, s: u32, k: &Field) -> Result<Self, RingError> {
        assert!(s >= 1, "band class needs size >= 1");
        let d = f.degree().ok_or(RingError::NotIrreducible)?;
        if d == 0 {
            return Err(RingError::NotIrreducible);
        }
        if f.constant_term(k).is_zero() {
            return Err(RingError::ZeroConstantTerm);
        }
        let f = f.monic(k);
        if !crate::poly::is_irreducible(&f, k)? {
            return Err(RingError::NotIrreducible);
        }
        Ok(Indecomposable::Band { f, s })
    }

    /// Jordan class of the real-closed model; the eigenvalue must be a
    /// nonzero rational.
    pub fn jordan(lambda: BigRational, s: u32) -> Result<Self, RingError> {
        assert!(s >= 1, "Jordan class needs size >= 1");
        if lambda.is_zero() {
            return Err(RingError::ZeroEigenvalue);
        }
        Ok(Indecomposable::Jordan { lambda, s })
    }

    /// Rotation class of the real-closed model; conjugate parameters name
    /// the same module, so the imaginary part is normalized positive.
    pub fn rot(lambda: GaussianRational, s: u32) -> Result<Self, RingError> {
        assert!(s >= 1, "rotation class needs size >= 1");
        if lambda.is_real() {
            return Err(RingError::RealParameter);
        }
        let lambda = if lambda.im.is_positive() { lambda } else { lambda.conj() };
        Ok(Indecomposable::Rot { lambda, s })
    }

    /// Dimension of the underlying module.
    pub fn dim(&self) -> i64 {
        match self {
            Indecomposable::Nil(s) => *s as i64,
            Indecomposable::Band { f, s } => *s as i64 * f.degree().unwrap_or(0) as i64,
            Indecomposable::Jordan { s, .. } => *s as i64,
            Indecomposable::Rot { s, .. } => 2 * *s as i64,
        }
    }

    /// Checks that this descriptor kind is meaningful over `k`.
    fn valid_over(&self, k: &Field) -> bool {
        match self {
            Indecomposable::Nil(_) => true,
            Indecomposable::Band { .. } => !matches!(k, Field::RealClosed),
            Indecomposable::Jordan { .. } | Indecomposable::Rot { .. } => {
                matches!(k, Field::RealClosed)
            }
        }
    }
}

/// Integer combination of indecomposable classes over one field. Negative
/// coefficients (virtual modules) are allowed; the zero coefficient is never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    field: Field,
    terms: BTreeMap<Indecomposable, i64>,
}

impl RingElement {
    pub fn zero(k: &Field) -> Self {
        RingElement { field: k.clone(), terms: BTreeMap::new() }
    }

    /// The multiplicative identity: the class of k[x]/(x-1).
    pub fn one(k: &Field) -> Self {
        let mut e = RingElement::zero(k);
        let unit = match k {
            Field::RealClosed => {
                Indecomposable::jordan(BigRational::one(), 1).expect("1 is a nonzero eigenvalue")
            }
            _ => {
                let f = Polynomial::from_i64(k, &[-1, 1]);
                Indecomposable::band(&f, 1, k).expect("x - 1 is irreducible")
            }
        };
        e.add_term(unit, 1);
        e
    }

    pub fn from_indecomposable(ind: Indecomposable, k: &Field) -> Result<Self, RingError> {
        let mut e = RingElement::zero(k);
        e.insert_checked(ind, 1, k)?;
        Ok(e)
    }

    /// Adds `coeff` copies after validating the descriptor against the field.
    pub fn insert_checked(
        &mut self,
        ind: Indecomposable,
        coeff: i64,
        k: &Field,
    ) -> Result<(), RingError> {
        if &self.field != k {
            return Err(RingError::FieldMismatch);
        }
        if !ind.valid_over(k) {
            return Err(RingError::UnsupportedField);
        }
        self.add_term(ind, coeff);
        Ok(())
    }

    fn add_term(&mut self, ind: Indecomposable, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.get_mut(&ind) {
            Some(slot) => {
                *slot += coeff;
                if *slot == 0 {
                    self.terms.remove(&ind);
                }
            }
            None => {
                self.terms.insert(ind, coeff);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Indecomposable, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient is positive — i.e. the element is an
    /// honest module, not a virtual difference.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    pub fn add(&self, rhs: &RingElement) -> Result<RingElement, RingError> {
        if self.field != rhs.field {
            return Err(RingError::FieldMismatch);
        }
        let mut out = self.clone();
        for (ind, &c) in &rhs.terms {
            out.add_term(ind.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> RingElement {
        let mut out = RingElement::zero(&self.field);
        for (ind, &ci) in &self.terms {
            out.add_term(ind.clone(), ci * c);
        }
        out
    }

    /// The dimension morphism to the integers.
    pub fn dim(&self) -> i64 {
        self.terms.iter().map(|(ind, &c)| ind.dim() * c).sum()
    }
}

/// Jordan-size ladder at eigenvalue 1 in characteristic zero: the sizes of
/// the summands of a product of unipotent blocks of sizes s and t.
fn char0_sizes(s: u32, t: u32) -> Vec<u32> {
    let min = s.min(t);
    (0..min).map(|i| s + t - 1 - 2 * i).collect()
}

/// Tensor product when at least one factor lies in the nilpotent ideal:
/// a nilpotent class absorbs any band class to copies of itself, and two
/// nilpotent classes follow the staircase formula.
pub fn tensor_nil(a: &Indecomposable, b: &Indecomposable, k: &Field) -> RingElement {
    let mut out = RingElement::zero(k);
    match (a, b) {
        (Indecomposable::Nil(s), Indecomposable::Nil(t)) => {
            let (s, t) = (*s.min(t), *s.max(t));
            out.add_term(Indecomposable::Nil(s), (t - s + 1) as i64);
            for i in 1..s {
                out.add_term(Indecomposable::Nil(i), 2);
            }
        }
        (Indecomposable::Nil(s), other) | (other, Indecomposable::Nil(s)) => {
            out.add_term(Indecomposable::Nil(*s), other.dim());
        }
        _ => panic!("tensor_nil requires at least one nilpotent factor"),
    }
    out
}

/// The semisimple content of a band-by-band product: the star product
/// f ⋆ g factored over k, with factor multiplicities as coefficients. All
/// summands have unit size; size structure is supplied by the caller.
fn semisimple_factors(
    f: &Polynomial,
    g: &Polynomial,
    k: &Field,
) -> Result<Vec<(Polynomial, i64)>, RingError> {
    let star = star_product(f, g, k)?;
    let fz = factor(&star, k)?;
    let expect: usize = f.degree().unwrap_or(0) * g.degree().unwrap_or(0);
    let got: usize = fz
        .factors
        .iter()
        .map(|(h, e)| h.degree().unwrap_or(0) * *e as usize)
        .sum();
    if got != expect {
        return Err(RingError::Internal(format!(
            "semisimple content has dimension {got}, expected {expect}"
        )));
    }
    Ok(fz.factors.into_iter().map(|(h, e)| (h, e as i64)).collect())
}

/// Band-by-band product in characteristic zero: the unipotent ladder gives
/// the sizes, the factored star product gives the eigenvalue content.
pub fn tensor_char0(
    f: &Polynomial,
    s: u32,
    g: &Polynomial,
    t: u32,
    k: &Field,
) -> Result<RingElement, RingError> {
    let factors = semisimple_factors(f, g, k)?;
    let mut out = RingElement::zero(k);
    for size in char0_sizes(s, t) {
        for (h, e) in &factors {
            out.add_term(Indecomposable::Band { f: h.clone(), s: size }, *e);
        }
    }
    Ok(out)
}

/// Band-by-band product in characteristic p: the unipotent factor comes
/// from the Green-ring product, the eigenvalue content from the factored
/// star product.
pub fn tensor_charp(
    f: &Polynomial,
    s: u32,
    g: &Polynomial,
    t: u32,
    k: &Field,
) -> Result<RingElement, RingError> {
    let p = k.characteristic();
    debug_assert!(p > 0);
    let unipotent = rprime_mul(
        &RPrimeElement::basis(p, s as u64),
        &RPrimeElement::basis(p, t as u64),
    );
    let factors = semisimple_factors(f, g, k)?;
    let mut out = RingElement::zero(k);
    for (&size, &mult) in unipotent.coeffs() {
        if mult < 0 {
            return Err(RingError::Internal(
                "unipotent factor of a module product must be effective".into(),
            ));
        }
        let size = u32::try_from(size)
            .map_err(|_| RingError::Internal("unipotent size exceeds u32".into()))?;
        for (h, e) in &factors {
            out.add_term(Indecomposable::Band { f: h.clone(), s: size }, mult * e);
        }
    }
    Ok(out)
}

/// The size-1 parameter product of the real-closed model, dispatched over
/// the six shape cases. Returns descriptor/coefficient pairs with size 1;
/// the caller grafts the size ladder on.
fn realclosed_parameter_product(
    a: &Indecomposable,
    b: &Indecomposable,
) -> Result<Vec<(Indecomposable, i64)>, RingError> {
    let jordan = |lambda: BigRational| Indecomposable::jordan(lambda, 1);
    let rot = |lambda: GaussianRational| Indecomposable::rot(lambda, 1);
    match (a, b) {
        (Indecomposable::Jordan { lambda: l, .. }, Indecomposable::Jordan { lambda: m, .. }) => {
            Ok(vec![(jordan(l * m)?, 1)])
        }
        (Indecomposable::Jordan { lambda: l, .. }, Indecomposable::Rot { lambda: m, .. })
        | (Indecomposable::Rot { lambda: m, .. }, Indecomposable::Jordan { lambda: l, .. }) => {
            let prod = GaussianRational::new(l * &m.re, l * &m.im);
            Ok(vec![(rot(prod)?, 1)])
        }
        (Indecomposable::Rot { lambda: l, .. }, Indecomposable::Rot { lambda: m, .. }) => {
            let lm = l.mul(m);
            let lbar_m = l.conj().mul(m);
            if l.is_imaginary() && m.is_imaginary() {
                // Both purely imaginary: λμ and -λμ are real.
                Ok(vec![
                    (jordan(lm.re.clone())?, 2),
                    (jordan(-lm.re.clone())?, 2),
                ])
            } else if lm.is_real() {
                // λ̄ is a real multiple of μ.
                Ok(vec![(jordan(lm.re.clone())?, 2), (rot(lbar_m)?, 1)])
            } else if lbar_m.is_real() {
                // λ is a real multiple of μ.
                Ok(vec![(jordan(lbar_m.re.clone())?, 2), (rot(lm)?, 1)])
            } else {
                Ok(vec![(rot(lm)?, 1), (rot(lbar_m)?, 1)])
            }
        }
        _ => Err(RingError::UnsupportedField),
    }
}

/// Product of two non-nilpotent classes of the real-closed model: the
/// characteristic-zero size ladder grafted onto the six-case parameter
/// product.
pub fn tensor_realclosed(
    a: &Indecomposable,
    b: &Indecomposable,
    k: &Field,
) -> Result<RingElement, RingError> {
    let (s, t) = match (a, b) {
        (
            Indecomposable::Jordan { s, .. } | Indecomposable::Rot { s, .. },
            Indecomposable::Jordan { s: t, .. } | Indecomposable::Rot { s: t, .. },
        ) => (*s, *t),
        _ => return Err(RingError::UnsupportedField),
    };
    let params = realclosed_parameter_product(a, b)?;
    let mut out = RingElement::zero(k);
    for size in char0_sizes(s, t) {
        for (ind, c) in &params {
            let sized = match ind {
                Indecomposable::Jordan { lambda, .. } => {
                    Indecomposable::Jordan { lambda: lambda.clone(), s: size }
                }
                Indecomposable::Rot { lambda, .. } => {
                    Indecomposable::Rot { lambda: lambda.clone(), s: size }
                }
                _ => unreachable!("parameter product emits Jordan and rotation classes only"),
            };
            out.add_term(sized, *c);
        }
    }
    Ok(out)
}

/// Tensor product of two indecomposable classes over their common field.
pub fn tensor_indecomposable(
    a: &Indecomposable,
    b: &Indecomposable,
    k: &Field,
) -> Result<RingElement, RingError> {
    if matches!(a, Indecomposable::Nil(_)) || matches!(b, Indecomposable::Nil(_)) {
        return Ok(tensor_nil(a, b, k));
    }
    match k {
        Field::RealClosed => tensor_realclosed(a, b, k),
        _ => {
            let (Indecomposable::Band { f, s }, Indecomposable::Band { f: g, s: t }) = (a, b)
            else {
                return Err(RingError::UnsupportedField);
            };
            if k.characteristic() == 0 {
                tensor_char0(f, *s, g, *t, k)
            } else {
                tensor_charp(f, *s, g, *t, k)
            }
        }
    }
}

/// The ring product: bilinear extension of the tensor product of classes.
pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
    if a.field != b.field {
        return Err(RingError::FieldMismatch);
    }
    let k = &a.field;
    let mut out = RingElement::zero(k);
    for (ia, &ca) in &a.terms {
        for (ib, &cb) in &b.terms {
            let prod = tensor_indecomposable(ia, ib, k)?;
            for (ind, &c) in &prod.terms {
                out.add_term(ind.clone(), c * ca * cb);
            }
        }
    }
    Ok(out)
}

/// Decomposes the class of k[x]/f(x)^s for arbitrary nonzero f: the
/// nilpotent part of f splits off as a Nil class and each irreducible
/// factor contributes a band class. This is the bridge from free-form
/// polynomial input to validated descriptors.
pub fn module_of_poly_power(f: &Polynomial, s: u32, k: &Field) -> Result<RingElement, RingError> {
    assert!(s >= 1, "module class needs a positive power");
    if f.is_zero() {
        return Err(RingError::Poly(crate::poly::PolyError::DivisionByZero));
    }
    if f.degree() == Some(0) {
        return Ok(RingElement::zero(k));
    }
    let fz = factor(f, k)?;
    let mut out = RingElement::zero(k);
    for (h, e) in &fz.factors {
        if h.constant_term(k).is_zero() {
            // h = x: the nilpotent content of f.
            debug_assert_eq!(h.degree(), Some(1));
            out.add_term(Indecomposable::Nil(e * s), 1);
        } else {
            out.add_term(Indecomposable::Band { f: h.clone(), s: e * s }, 1);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn band(k: &Field, coeffs: &[i64], s: u32) -> Indecomposable {
        Indecomposable::band(&Polynomial::from_i64(k, coeffs), s, k).unwrap()
    }

    fn elem(k: &Field, terms: Vec<(Indecomposable, i64)>) -> RingElement {
        let mut e = RingElement::zero(k);
        for (ind, c) in terms {
            e.insert_checked(ind, c, k).unwrap();
        }
        e
    }

    #[test]
    fn descriptor_validation() {
        let k = Field::rationals();
        assert!(Indecomposable::band(&Polynomial::from_i64(&k, &[-1, 0, 1]), 1, &k).is_err());
        assert_eq!(
            Indecomposable::band(&Polynomial::from_i64(&k, &[0, 1]), 1, &k),
            Err(RingError::ZeroConstantTerm)
        );
        // Non-monic input is normalized, not rejected.
        let b = Indecomposable::band(&Polynomial::from_i64(&k, &[2, 2]), 1, &k).unwrap();
        assert_eq!(b, band(&k, &[1, 1], 1));
        assert_eq!(
            Indecomposable::jordan(BigRational::zero(), 1),
            Err(RingError::ZeroEigenvalue)
        );
        assert_eq!(
            Indecomposable::rot(GaussianRational::from_integers(3, 0), 1),
            Err(RingError::RealParameter)
        );
        // Conjugate parameters collapse to the positive-imaginary canon.
        assert_eq!(
            Indecomposable::rot(GaussianRational::from_integers(1, -2), 4).unwrap(),
            Indecomposable::rot(GaussianRational::from_integers(1, 2), 4).unwrap()
        );
        // Real-closed descriptors are rejected over the rationals and
        // vice versa.
        let rc = Field::real_closed();
        let mut e = RingElement::zero(&k);
        assert_eq!(
            e.insert_checked(Indecomposable::jordan(rat(1, 1), 1).unwrap(), 1, &k),
            Err(RingError::UnsupportedField)
        );
        let mut e = RingElement::zero(&rc);
        assert_eq!(
            e.insert_checked(band(&k, &[-1, 1], 1), 1, &rc),
            Err(RingError::UnsupportedField)
        );
    }

    #[test]
    fn dimension_of_descriptors() {
        let k = Field::rationals();
        assert_eq!(Indecomposable::Nil(3).dim(), 3);
        assert_eq!(band(&k, &[1, -1, 1], 2).dim(), 4);
        let r = Indecomposable::rot(GaussianRational::from_integers(0, 1), 2).unwrap();
        let e = elem(&Field::real_closed(), vec![(r, 2)]);
        assert_eq!(e.dim(), 8);
    }

    #[test]
    fn nilpotent_products() {
        let k = Field::rationals();
        assert_eq!(
            tensor_nil(&Indecomposable::Nil(2), &Indecomposable::Nil(3), &k),
            elem(&k, vec![(Indecomposable::Nil(2), 2), (Indecomposable::Nil(1), 2)])
        );
        assert_eq!(
            tensor_nil(&Indecomposable::Nil(3), &band(&k, &[-2, 0, 1], 1), &k),
            elem(&k, vec![(Indecomposable::Nil(3), 2)])
        );
        assert_eq!(
            tensor_nil(&Indecomposable::Nil(1), &Indecomposable::Nil(1), &k),
            elem(&k, vec![(Indecomposable::Nil(1), 1)])
        );
        // The product sees a band factor only through its dimension.
        let k5 = Field::prime(5).unwrap();
        let a = tensor_nil(&Indecomposable::Nil(4), &band(&k5, &[2, 0, 0, 0, 1], 2), &k5);
        let b = tensor_nil(&Indecomposable::Nil(4), &band(&k5, &[3, 1, 0, 1, 0, 0, 0, 0, 1], 1), &k5);
        assert_eq!(a, b);
        // Dimension conservation on the staircase.
        for s in 1..=8u32 {
            for t in s..=8 {
                let prod = tensor_nil(&Indecomposable::Nil(s), &Indecomposable::Nil(t), &k);
                assert_eq!(prod.dim(), (s * t) as i64);
            }
        }
    }

    #[test]
    fn characteristic_zero_band_products() {
        let k = Field::rationals();
        let prod = tensor_char0(
            &Polynomial::from_i64(&k, &[-1, 1]),
            2,
            &Polynomial::from_i64(&k, &[-1, 1]),
            3,
            &k,
        )
        .unwrap();
        assert_eq!(
            prod,
            elem(&k, vec![(band(&k, &[-1, 1], 4), 1), (band(&k, &[-1, 1], 2), 1)])
        );
        let prod = tensor_char0(
            &Polynomial::from_i64(&k, &[-2, 1]),
            1,
            &Polynomial::from_i64(&k, &[-3, 1]),
            1,
            &k,
        )
        .unwrap();
        assert_eq!(prod, elem(&k, vec![(band(&k, &[-6, 1], 1), 1)]));
        // Quadratic with sixth-root-of-unity eigenvalues: squaring them
        // yields cube roots of unity, so the semisimple content is
        // (x^2+x+1)(x-1)^2.
        let f = Polynomial::from_i64(&k, &[1, -1, 1]);
        let prod = tensor_char0(&f, 1, &f, 1, &k).unwrap();
        assert_eq!(
            prod,
            elem(
                &k,
                vec![(band(&k, &[1, 1, 1], 1), 1), (band(&k, &[-1, 1], 1), 2)]
            )
        );
    }

    #[test]
    fn characteristic_p_band_products() {
        let k2 = Field::prime(2).unwrap();
        let xm1 = Polynomial::from_i64(&k2, &[-1, 1]);
        let prod = tensor_charp(&xm1, 2, &xm1, 2, &k2).unwrap();
        assert_eq!(prod, elem(&k2, vec![(band(&k2, &[-1, 1], 2), 2)]));

        let k3 = Field::prime(3).unwrap();
        let one = RingElement::one(&k3);
        for coeffs in [vec![-1i64, 1], vec![1, 0, 1], vec![1, 2, 0, 1]] {
            let b = elem(&k3, vec![(band(&k3, &coeffs, 1), 1)]);
            assert_eq!(ring_mul(&one, &b).unwrap(), b);
        }
        // Roots ±i of x^2+1 over F_9 multiply to {−1, −1, 1, 1}.
        let f = Polynomial::from_i64(&k3, &[1, 0, 1]);
        let prod = tensor_charp(&f, 1, &f, 1, &k3).unwrap();
        assert_eq!(
            prod,
            elem(&k3, vec![(band(&k3, &[-2, 1], 1), 2), (band(&k3, &[-1, 1], 1), 2)])
        );
    }

    #[test]
    fn real_closed_six_shapes() {
        let rc = Field::real_closed();
        let j = |n: i64, s: u32| Indecomposable::jordan(rat(n, 1), s).unwrap();
        let r = |re: i64, im: i64, s: u32| {
            Indecomposable::rot(GaussianRational::from_integers(re, im), s).unwrap()
        };

        // Scalar by scalar and scalar by rotation.
        assert_eq!(
            tensor_realclosed(&j(2, 1), &j(3, 1), &rc).unwrap(),
            elem(&rc, vec![(j(6, 1), 1)])
        );
        assert_eq!(
            tensor_realclosed(&j(2, 1), &r(1, 1, 1), &rc).unwrap(),
            elem(&rc, vec![(r(2, 2, 1), 1)])
        );
        // Negative scalar flips the parameter into the conjugate canon:
        // -1 * (1+i) = -1-i, stored as -1+i.
        assert_eq!(
            tensor_realclosed(&j(-1, 1), &r(1, 1, 1), &rc).unwrap(),
            elem(&rc, vec![(r(-1, 1, 1), 1)])
        );
        // Both purely imaginary.
        assert_eq!(
            tensor_realclosed(&r(0, 1, 1), &r(0, 1, 1), &rc).unwrap(),
            elem(&rc, vec![(j(-1, 1), 2), (j(1, 1), 2)])
        );
        // λ̄ a real multiple of μ (here λμ = 2i is not real, λ̄μ = 2 is).
        assert_eq!(
            tensor_realclosed(&r(1, 1, 1), &r(1, 1, 1), &rc).unwrap(),
            elem(&rc, vec![(j(2, 1), 2), (r(0, 2, 1), 1)])
        );
        // λ a real multiple of μ̄: λ = 1+i, μ = 1−i gives real λμ.
        assert_eq!(
            tensor_realclosed(
                &Indecomposable::Rot { lambda: GaussianRational::from_integers(1, 1), s: 1 },
                &Indecomposable::Rot { lambda: GaussianRational::from_integers(1, -1), s: 1 },
                &rc
            )
            .unwrap(),
            elem(&rc, vec![(j(2, 1), 2), (r(0, 2, 1), 1)])
        );
        // Generic pair.
        assert_eq!(
            tensor_realclosed(&r(1, 1, 1), &r(1, 2, 1), &rc).unwrap(),
            elem(&rc, vec![(r(-1, 3, 1), 1), (r(3, 1, 1), 1)])
        );
        // Sizes graft the ladder on: R_i(1) ⊗ R_i(2) has sizes {2}.
        assert_eq!(
            tensor_realclosed(&r(0, 1, 1), &r(0, 1, 2), &rc).unwrap(),
            elem(&rc, vec![(j(-1, 2), 2), (j(1, 2), 2)])
        );
    }

    #[test]
    fn ring_mul_expands_bilinearly() {
        let k = Field::rationals();
        let a = elem(
            &k,
            vec![(Indecomposable::Nil(1), 1), (band(&k, &[-1, 1], 1), 1)],
        );
        let sq = ring_mul(&a, &a).unwrap();
        assert_eq!(
            sq,
            elem(&k, vec![(Indecomposable::Nil(1), 3), (band(&k, &[-1, 1], 1), 1)])
        );
        assert_eq!(sq.dim(), a.dim() * a.dim());
    }

    #[test]
    fn unit_law_and_dim_morphism_on_random_samples() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for k in [Field::rationals(), Field::prime(3).unwrap(), Field::prime(5).unwrap()] {
            let one = RingElement::one(&k);
            for _ in 0..10 {
                let a = random_element(&k, &mut rng);
                assert_eq!(ring_mul(&one, &a).unwrap(), a);
                assert_eq!(ring_mul(&a, &one).unwrap(), a);
                let b = random_element(&k, &mut rng);
                let ab = ring_mul(&a, &b).unwrap();
                assert_eq!(ab.dim(), a.dim() * b.dim());
            }
        }
    }

    #[test]
    fn commutativity_and_associativity() {
        let mut rng = ChaCha12Rng::seed_from_u64(32);
        for k in [Field::rationals(), Field::prime(2).unwrap()] {
            for _ in 0..8 {
                let a = random_element(&k, &mut rng);
                let b = random_element(&k, &mut rng);
                let c = random_element(&k, &mut rng);
                assert_eq!(ring_mul(&a, &b).unwrap(), ring_mul(&b, &a).unwrap());
                assert_eq!(
                    ring_mul(&ring_mul(&a, &b).unwrap(), &c).unwrap(),
                    ring_mul(&a, &ring_mul(&b, &c).unwrap()).unwrap()
                );
            }
        }
        // Real-closed model associativity, including rotation classes.
        let rc = Field::real_closed();
        let r = |re: i64, im: i64, s: u32| {
            Indecomposable::rot(GaussianRational::from_integers(re, im), s).unwrap()
        };
        let j = |n: i64, s: u32| Indecomposable::jordan(rat(n, 1), s).unwrap();
        let a = elem(&rc, vec![(r(1, 1, 2), 1), (Indecomposable::Nil(1), 1)]);
        let b = elem(&rc, vec![(r(0, 1, 1), 1), (j(-2, 1), 1)]);
        let c = elem(&rc, vec![(j(1, 2), 1)]);
        assert_eq!(ring_mul(&a, &b).unwrap(), ring_mul(&b, &a).unwrap());
        assert_eq!(
            ring_mul(&ring_mul(&a, &b).unwrap(), &c).unwrap(),
            ring_mul(&a, &ring_mul(&b, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn unipotent_ladder_recursion_in_characteristic_zero() {
        let k = Field::rationals();
        for s in 2..=12u32 {
            let lhs = ring_mul(
                &elem(&k, vec![(band(&k, &[-1, 1], 2), 1)]),
                &elem(&k, vec![(band(&k, &[-1, 1], s), 1)]),
            )
            .unwrap();
            assert_eq!(
                lhs,
                elem(
                    &k,
                    vec![(band(&k, &[-1, 1], s - 1), 1), (band(&k, &[-1, 1], s + 1), 1)]
                )
            );
        }
    }

    #[test]
    fn poly_power_modules_split_off_their_nilpotent_content() {
        let k = Field::rationals();
        // x^2 (x-1) (x^2+1)^3, taken to the 2nd power.
        let f = Polynomial::from_i64(&k, &[0, 0, 1])
            .mul(&Polynomial::from_i64(&k, &[-1, 1]), &k)
            .mul(&Polynomial::from_i64(&k, &[1, 0, 1]).pow(3, &k), &k);
        let m = module_of_poly_power(&f, 2, &k).unwrap();
        assert_eq!(
            m,
            elem(
                &k,
                vec![
                    (Indecomposable::Nil(4), 1),
                    (band(&k, &[-1, 1], 2), 1),
                    (band(&k, &[1, 0, 1], 6), 1),
                ]
            )
        );
        assert_eq!(m.dim(), 2 * 9);
        // Plain x^s is a pure nilpotent class.
        assert_eq!(
            module_of_poly_power(&Polynomial::from_i64(&k, &[0, 1]), 3, &k).unwrap(),
            elem(&k, vec![(Indecomposable::Nil(3), 1)])
        );
    }

    fn random_element(k: &Field, rng: &mut ChaCha12Rng) -> RingElement {
        let pool: Vec<Indecomposable> = match k.characteristic() {
            0 => vec![
                Indecomposable::Nil(1),
                Indecomposable::Nil(2),
                band(k, &[-1, 1], 1),
                band(k, &[-1, 1], 2),
                band(k, &[-2, 1], 1),
                band(k, &[1, 0, 1], 1),
                band(k, &[2, 1], 1),
            ],
            2 => vec![
                Indecomposable::Nil(1),
                Indecomposable::Nil(2),
                band(k, &[1, 1], 1),
                band(k, &[1, 1], 2),
                band(k, &[1, 1, 1], 1),
            ],
            _ => vec![
                Indecomposable::Nil(1),
                Indecomposable::Nil(3),
                band(k, &[-1, 1], 1),
                band(k, &[-1, 1], 2),
                band(k, &[-2, 0, 1], 1),
                band(k, &[-2, 1], 1),
            ],
        };
        let mut e = RingElement::zero(k);
        for _ in 0..rng.gen_range(1..=2) {
            let ind = pool[rng.gen_range(0..pool.len())].clone();
            e.add_term(ind, rng.gen_range(1..=2));
        }
        if e.is_zero() {
            e.add_term(Indecomposable::Nil(1), 1);
        }
        e
    }
}
