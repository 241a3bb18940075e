//! Canonical text and JSON rendering.
//!
//! Every textual form produced here re-parses (via [`crate::expr`]) to an
//! equal value, and term order is deterministic: nilpotent classes before
//! band classes, larger sizes first, polynomials compared by degree and then
//! coefficients from the leading term down. Polynomials are printed densely
//! (`x^2-x+1`); sums of module terms are spaced (`x^3 + 2*(x-1)^2`).

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use repring_core::green::{RPrimeElement, WPolynomial};
use repring_core::quiver::{QuiverClass, QuiverRingElement};
use repring_core::poly::Factorization;
use repring_core::{
    Field, FieldElement, GaussianRational, Indecomposable, Polynomial, RingElement,
};
use serde_json::{json, Value};
use std::cmp::Ordering;

/// Version stamp carried by every JSON document; see docs/output-schema-v1.md.
pub const SCHEMA_VERSION: u32 = 1;

/// The `--field` flag that names this field.
pub fn field_flag(k: &Field) -> String {
    match k {
        Field::Rationals => "q".to_string(),
        Field::Prime(_) => format!("f{}", k.characteristic()),
        Field::Extension(f) => format!("f{}^{}", f.p(), f.degree()),
        Field::RealClosed => "rc".to_string(),
    }
}

fn rational_to_string(r: &BigRational) -> String {
    if r.denom() == &num_bigint::BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a Gaussian rational in `a`, `bi`, or `a+bi` form.
pub fn gauss_to_string(g: &GaussianRational) -> String {
    let im_part = |im: &BigRational| -> String {
        let mag = im.abs();
        if mag == BigRational::from_integer(1.into()) {
            "i".to_string()
        } else {
            format!("{}i", rational_to_string(&mag))
        }
    };
    if g.im.is_zero() {
        return rational_to_string(&g.re);
    }
    if g.re.is_zero() {
        let body = im_part(&g.im);
        return if g.im.is_negative() { format!("-{body}") } else { body };
    }
    let sign = if g.im.is_negative() { '-' } else { '+' };
    format!("{}{}{}", rational_to_string(&g.re), sign, im_part(&g.im))
}

/// Renders one scalar of `k`.
pub fn scalar_to_string(c: &FieldElement, k: &Field) -> String {
    let _ = k;
    match c {
        FieldElement::Rat(r) => rational_to_string(r),
        FieldElement::Mod(v) => v.to_string(),
        FieldElement::Ext(v) => {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
        FieldElement::Gauss(g) => gauss_to_string(g),
    }
}

/// Splits a scalar into (is_negative, magnitude-string, is_one) for signed
/// printing. Finite-field residues are never negative; a genuinely complex
/// scalar is treated as a positive atom and parenthesized.
fn split_sign(c: &FieldElement, k: &Field) -> (bool, String, bool) {
    match c {
        FieldElement::Rat(r) => {
            let neg = r.is_negative();
            let mag = r.abs();
            (neg, rational_to_string(&mag), mag == BigRational::from_integer(1.into()))
        }
        FieldElement::Mod(v) => (false, v.to_string(), *v == 1),
        FieldElement::Gauss(g) if g.im.is_zero() => {
            let neg = g.re.is_negative();
            let mag = g.re.abs();
            (neg, rational_to_string(&mag), mag == BigRational::from_integer(1.into()))
        }
        other => (false, format!("({})", scalar_to_string(other, k)), false),
    }
}

/// Renders a polynomial densely, descending powers, explicit signs:
/// `x^2-x+1`, `2*x^3+x-5`, `x-1/2`, `0`.
pub fn poly_to_string(f: &Polynomial, k: &Field) -> String {
    let deg = match f.degree() {
        Some(d) => d,
        None => return "0".to_string(),
    };
    let mut out = String::new();
    for i in (0..=deg).rev() {
        let c = f.coeff(i, k);
        if k.is_zero(&c) {
            continue;
        }
        let (neg, mag, is_one) = split_sign(&c, k);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let body = match i {
            0 => None,
            1 => Some("x".to_string()),
            _ => Some(format!("x^{i}")),
        };
        match body {
            None => out.push_str(&mag),
            Some(b) => {
                if is_one {
                    out.push_str(&b);
                } else {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(&b);
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders a factorization as `(f1)^e1 * (f2)^e2`, with the unit prefixed
/// when it is not 1. Factors keep the canonical order they were produced in.
pub fn factorization_to_string(fac: &Factorization, k: &Field) -> String {
    let mut pieces: Vec<String> = Vec::new();
    if !k.is_one(&fac.unit) || fac.factors.is_empty() {
        pieces.push(scalar_to_string(&fac.unit, k));
    }
    for (f, e) in &fac.factors {
        pieces.push(format!("({})^{}", poly_to_string(f, k), e));
    }
    pieces.join(" * ")
}

/// Degree-descending, then coefficient-descending from the leading term.
fn poly_order(a: &Polynomial, b: &Polynomial, k: &Field) -> Ordering {
    let da = a.degree().map_or(-1i64, |d| d as i64);
    let db = b.degree().map_or(-1i64, |d| d as i64);
    match db.cmp(&da) {
        Ordering::Equal => {}
        o => return o,
    }
    if da >= 0 {
        for i in (0..=da as usize).rev() {
            match b.coeff(i, k).cmp(&a.coeff(i, k)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
    }
    Ordering::Equal
}

fn kind_rank(ind: &Indecomposable) -> u8 {
    match ind {
        Indecomposable::Nil(_) => 0,
        Indecomposable::Band { .. } => 1,
        Indecomposable::Jordan { .. } => 2,
        Indecomposable::Rot { .. } => 3,
    }
}

/// Canonical display order for module classes.
fn ind_order(a: &Indecomposable, b: &Indecomposable, k: &Field) -> Ordering {
    match kind_rank(a).cmp(&kind_rank(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    match (a, b) {
        (Indecomposable::Nil(s), Indecomposable::Nil(t)) => t.cmp(s),
        (Indecomposable::Band { f, s }, Indecomposable::Band { f: g, s: t }) => {
            match poly_order(f, g, k) {
                Ordering::Equal => t.cmp(s),
                o => o,
            }
        }
        (
            Indecomposable::Jordan { lambda: a1, s },
            Indecomposable::Jordan { lambda: b1, s: t },
        ) => match b1.cmp(a1) {
            Ordering::Equal => t.cmp(s),
            o => o,
        },
        (Indecomposable::Rot { lambda: a1, s }, Indecomposable::Rot { lambda: b1, s: t }) => {
            match b1.cmp(a1) {
                Ordering::Equal => t.cmp(s),
                o => o,
            }
        }
        _ => unreachable!("kind ranks already compared"),
    }
}

fn ind_body(ind: &Indecomposable, k: &Field) -> String {
    match ind {
        Indecomposable::Nil(s) => {
            if *s == 1 {
                "x".to_string()
            } else {
                format!("x^{s}")
            }
        }
        Indecomposable::Band { f, s } => format!("({})^{}", poly_to_string(f, k), s),
        Indecomposable::Jordan { lambda, s } => {
            format!("J({},{})", rational_to_string(lambda), s)
        }
        Indecomposable::Rot { lambda, s } => format!("R({},{})", gauss_to_string(lambda), s),
    }
}

/// Joins `(body, coefficient)` pairs into a signed sum; `1*term` prints as
/// `term`, a body of `"1"` prints as the bare coefficient, empty input is `0`.
fn join_signed_terms(parts: &[(String, i64)]) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (body, c)) in parts.iter().enumerate() {
        let neg = *c < 0;
        let mag = c.unsigned_abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if body == "1" {
            out.push_str(&mag.to_string());
        } else if mag != 1 {
            out.push_str(&mag.to_string());
            out.push('*');
            out.push_str(body);
        } else {
            out.push_str(body);
        }
    }
    out
}

fn sorted_ring_terms(e: &RingElement) -> Vec<(&Indecomposable, i64)> {
    let k = e.field();
    let mut terms: Vec<(&Indecomposable, i64)> =
        e.terms().iter().map(|(ind, &c)| (ind, c)).collect();
    terms.sort_by(|x, y| ind_order(x.0, y.0, k));
    terms
}

/// Renders a module-ring element in canonical term order.
pub fn ring_to_string(e: &RingElement) -> String {
    let k = e.field();
    let parts: Vec<(String, i64)> =
        sorted_ring_terms(e).into_iter().map(|(ind, c)| (ind_body(ind, k), c)).collect();
    join_signed_terms(&parts)
}

fn quiver_class_body(class: &QuiverClass, k: &Field) -> String {
    match class {
        QuiverClass::Str(s) => {
            format!("S({},{})", s.start(), u64::from(s.start()) + u64::from(s.len()))
        }
        QuiverClass::Band(b) => format!("B({},{})", poly_to_string(b.poly(), k), b.power()),
    }
}

/// Strings first (larger dimension first, then earlier start), then bands in
/// the module-class order.
fn quiver_order(a: &QuiverClass, b: &QuiverClass, k: &Field) -> Ordering {
    match (a, b) {
        (QuiverClass::Str(x), QuiverClass::Str(y)) => match y.len().cmp(&x.len()) {
            Ordering::Equal => x.start().cmp(&y.start()),
            o => o,
        },
        (QuiverClass::Str(_), QuiverClass::Band(_)) => Ordering::Less,
        (QuiverClass::Band(_), QuiverClass::Str(_)) => Ordering::Greater,
        (QuiverClass::Band(x), QuiverClass::Band(y)) => {
            match poly_order(x.poly(), y.poly(), k) {
                Ordering::Equal => y.power().cmp(&x.power()),
                o => o,
            }
        }
    }
}

fn sorted_quiver_terms(e: &QuiverRingElement) -> Vec<(&QuiverClass, i64)> {
    let k = e.field();
    let mut terms: Vec<(&QuiverClass, i64)> =
        e.terms().iter().map(|(class, &c)| (class, c)).collect();
    terms.sort_by(|x, y| quiver_order(x.0, y.0, k));
    terms
}

/// Renders a quiver-ring element in canonical term order.
pub fn quiver_to_string(e: &QuiverRingElement) -> String {
    let k = e.field();
    let parts: Vec<(String, i64)> = sorted_quiver_terms(e)
        .into_iter()
        .map(|(class, c)| (quiver_class_body(class, k), c))
        .collect();
    join_signed_terms(&parts)
}

/// Renders a Green-ring element in the v-basis, indices descending:
/// `v8 - v4 + 2*v2`.
pub fn rprime_to_string(v: &RPrimeElement) -> String {
    let parts: Vec<(String, i64)> =
        v.coeffs().iter().rev().map(|(s, &c)| (format!("v{s}"), c)).collect();
    join_signed_terms(&parts)
}

/// Monomial order for w-polynomials: exponent vectors sorted descending,
/// compared lexicographically descending, longer vectors first on ties.
fn w_mono_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let mut ka = a.to_vec();
    let mut kb = b.to_vec();
    ka.sort_unstable_by(|x, y| y.cmp(x));
    kb.sort_unstable_by(|x, y| y.cmp(x));
    for (x, y) in ka.iter().zip(kb.iter()) {
        match y.cmp(x) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    kb.len().cmp(&ka.len())
}

fn w_mono_body(monomial: &[u32]) -> String {
    if monomial.is_empty() {
        return "1".to_string();
    }
    let mut key = monomial.to_vec();
    key.sort_unstable_by(|x, y| y.cmp(x));
    let mut factors: Vec<String> = Vec::new();
    let mut idx = 0;
    while idx < key.len() {
        let alpha = key[idx];
        let mut e = 0;
        while idx < key.len() && key[idx] == alpha {
            e += 1;
            idx += 1;
        }
        if e == 1 {
            factors.push(format!("w{alpha}"));
        } else {
            factors.push(format!("w{alpha}^{e}"));
        }
    }
    factors.join("*")
}

/// Renders a w-polynomial: `w1^2*w0 + w1 - w0`.
pub fn wpoly_to_string(w: &WPolynomial) -> String {
    let mut monos: Vec<(&Vec<u32>, i64)> = w.terms().iter().map(|(m, &c)| (m, c)).collect();
    monos.sort_by(|x, y| w_mono_cmp(x.0, y.0));
    let parts: Vec<(String, i64)> =
        monos.into_iter().map(|(m, c)| (w_mono_body(m), c)).collect();
    join_signed_terms(&parts)
}

fn ring_term_json(ind: &Indecomposable, c: i64, k: &Field) -> Value {
    match ind {
        Indecomposable::Nil(s) => json!({"kind": "nil", "s": s, "coeff": c}),
        Indecomposable::Band { f, s } => {
            json!({"kind": "band", "poly": poly_to_string(f, k), "s": s, "coeff": c})
        }
        Indecomposable::Jordan { lambda, s } => {
            json!({"kind": "jordan", "lambda": rational_to_string(lambda), "s": s, "coeff": c})
        }
        Indecomposable::Rot { lambda, s } => {
            json!({"kind": "rot", "lambda": gauss_to_string(lambda), "s": s, "coeff": c})
        }
    }
}

/// JSON document for a module-ring element.
pub fn ring_to_json(e: &RingElement) -> Value {
    let k = e.field();
    let terms: Vec<Value> =
        sorted_ring_terms(e).into_iter().map(|(ind, c)| ring_term_json(ind, c, k)).collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "field": field_flag(k),
        "terms": terms,
    })
}

/// JSON document for a quiver-ring element; terms carry dimension vectors.
pub fn quiver_to_json(e: &QuiverRingElement) -> Value {
    let k = e.field();
    let shape = e.shape();
    let terms: Vec<Value> = sorted_quiver_terms(e)
        .into_iter()
        .map(|(class, c)| match class {
            QuiverClass::Str(s) => json!({
                "kind": "string",
                "i": s.start(),
                "j": u64::from(s.start()) + u64::from(s.len()),
                "coeff": c,
                "dim_vector": s.dim_vector(shape),
            }),
            QuiverClass::Band(b) => json!({
                "kind": "band",
                "poly": poly_to_string(b.poly(), k),
                "s": b.power(),
                "coeff": c,
                "dim_vector": b.dim_vector(shape),
            }),
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "field": field_flag(k),
        "n": shape.n(),
        "total_dim_vector": e.dim_vector(),
        "terms": terms,
    })
}

/// JSON document for a polynomial factorization.
pub fn factorization_to_json(fac: &Factorization, k: &Field) -> Value {
    let factors: Vec<Value> = fac
        .factors
        .iter()
        .map(|(f, e)| json!({"poly": poly_to_string(f, k), "multiplicity": e}))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "field": field_flag(k),
        "unit": scalar_to_string(&fac.unit, k),
        "factors": factors,
    })
}

/// JSON document for a Green-ring element in the v-basis.
pub fn rprime_to_json(v: &RPrimeElement) -> Value {
    let terms: Vec<Value> = v
        .coeffs()
        .iter()
        .rev()
        .map(|(s, &c)| json!({"index": s, "coeff": c}))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "p": v.p(),
        "basis": "v",
        "terms": terms,
    })
}

/// JSON document for a w-polynomial; monomials list exponents descending.
pub fn wpoly_to_json(w: &WPolynomial) -> Value {
    let mut monos: Vec<(&Vec<u32>, i64)> = w.terms().iter().map(|(m, &c)| (m, c)).collect();
    monos.sort_by(|x, y| w_mono_cmp(x.0, y.0));
    let terms: Vec<Value> = monos
        .into_iter()
        .map(|(m, c)| {
            let mut key = m.clone();
            key.sort_unstable_by(|x, y| y.cmp(x));
            json!({"monomial": key, "coeff": c})
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "p": w.p(),
        "basis": "w",
        "terms": terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_module_expr, parse_poly, parse_quiver_expr};
    use num_bigint::BigInt;
    use repring_core::green::{rprime_mul, v_to_w, w_expand};
    use repring_core::quiver::QuiverShape;
    use repring_core::{ring_mul, Indecomposable, RingElement};

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn polynomials_print_densely_with_explicit_signs() {
        let k = q();
        for src in ["x^2-x+1", "2*x^3+x-5", "x-1/2", "x^4-2", "3"] {
            let f = parse_poly(src, &k).unwrap();
            assert_eq!(poly_to_string(&f, &k), src);
        }
        let k5 = Field::prime(5).unwrap();
        let f = parse_poly("x-2", &k5).unwrap();
        assert_eq!(poly_to_string(&f, &k5), "x+3");
    }

    #[test]
    fn the_jordan_ladder_prints_like_the_worked_example() {
        let k = q();
        let a = parse_module_expr("(x-1)^2", &k).unwrap();
        let b = parse_module_expr("(x-1)^3", &k).unwrap();
        let prod = ring_mul(&a, &b).unwrap();
        assert_eq!(ring_to_string(&prod), "(x-1)^4 + (x-1)^2");
    }

    #[test]
    fn green_translations_match_the_frozen_strings() {
        assert_eq!(wpoly_to_string(&v_to_w(8, 3)), "w1^2*w0 + w1 - w0");
        let m = WPolynomial::generator(3, 1)
            .mul(&WPolynomial::generator(3, 1))
            .mul(&WPolynomial::generator(3, 0));
        assert_eq!(wpoly_to_string(&m), "w1^2*w0");
        assert_eq!(rprime_to_string(&w_expand(&m)), "v8 - v4 + 2*v2");
        let v = rprime_mul(&RPrimeElement::basis(3, 2), &RPrimeElement::basis(3, 2));
        assert_eq!(rprime_to_string(&v), "v3 + v1");
    }

    #[test]
    fn rendered_module_expressions_reparse_to_equal_elements() {
        let k = q();
        let sources = [
            "x^3 + 2*(x-1)^2",
            "-x + 4*(x^2+1)^2 - 2*(x-1)^1",
            "0",
            "(x^2-x+1)^1",
            "5*x^4",
        ];
        for src in sources {
            let e = parse_module_expr(src, &k).unwrap();
            let text = ring_to_string(&e);
            let back = parse_module_expr(&text, &k).unwrap();
            assert_eq!(back, e, "round trip failed for {src} -> {text}");
        }
        let rc = Field::real_closed();
        for src in ["J(1/2,2) + R(1+2i,1)", "2*J(-1,1) - R(i,3) + x^2", "R(3/2i,2)"] {
            let e = parse_module_expr(src, &rc).unwrap();
            let text = ring_to_string(&e);
            assert_eq!(parse_module_expr(&text, &rc).unwrap(), e, "{src} -> {text}");
        }
        let k3 = Field::prime(3).unwrap();
        for src in ["x^2 + (x+1)^2", "2*(x^2+1)^1 + x"] {
            let e = parse_module_expr(src, &k3).unwrap();
            let text = ring_to_string(&e);
            assert_eq!(parse_module_expr(&text, &k3).unwrap(), e, "{src} -> {text}");
        }
    }

    #[test]
    fn rendered_quiver_expressions_reparse_to_equal_elements() {
        let k = q();
        let shape = QuiverShape::cyclic(2);
        for src in ["S(0,4) + 2*S(1,1)", "B(x^2+1,2) - S(0,0)", "S(2,2) + B(x-1,1)"] {
            let e = parse_quiver_expr(src, &shape, &k).unwrap();
            let text = quiver_to_string(&e);
            assert_eq!(parse_quiver_expr(&text, &shape, &k).unwrap(), e, "{src} -> {text}");
        }
    }

    #[test]
    fn canonical_term_order_is_nil_then_bands_by_size() {
        let k = q();
        let e = parse_module_expr("(x-1)^1 + x^2 + (x^2+1)^1 + x + (x-1)^3", &k).unwrap();
        assert_eq!(
            ring_to_string(&e),
            "x^2 + x + (x^2+1)^1 + (x-1)^3 + (x-1)^1"
        );
    }

    #[test]
    fn gaussian_parameters_render_in_a_plus_bi_form() {
        let g = |re: (i64, i64), im: (i64, i64)| {
            GaussianRational::new(
                BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
                BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
            )
        };
        assert_eq!(gauss_to_string(&g((1, 1), (2, 1))), "1+2i");
        assert_eq!(gauss_to_string(&g((0, 1), (1, 1))), "i");
        assert_eq!(gauss_to_string(&g((0, 1), (-3, 2))), "-3/2i");
        assert_eq!(gauss_to_string(&g((1, 2), (-1, 1))), "1/2-i");
        assert_eq!(gauss_to_string(&g((2, 1), (0, 1))), "2");
    }

    #[test]
    fn json_documents_are_stable_and_stamped() {
        let k = q();
        let e = parse_module_expr("x^2 + 2*(x-1)^1", &k).unwrap();
        let doc = ring_to_json(&e);
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["field"], "q");
        assert_eq!(doc["terms"][0]["kind"], "nil");
        assert_eq!(doc["terms"][1]["poly"], "x-1");
        assert_eq!(doc["terms"][1]["coeff"], 2);

        let shape = QuiverShape::cyclic(1);
        let qe = parse_quiver_expr("S(0,1) + B(x-1,1)", &shape, &k).unwrap();
        let qdoc = quiver_to_json(&qe);
        assert_eq!(qdoc["total_dim_vector"], json!([2, 2]));
        assert_eq!(qdoc["terms"][0]["dim_vector"], json!([1, 1]));
    }

    #[test]
    fn zero_elements_render_as_zero() {
        let k = q();
        assert_eq!(ring_to_string(&RingElement::zero(&k)), "0");
        let mut e = RingElement::zero(&k);
        e.insert_checked(Indecomposable::nil(2), -1, &k).unwrap();
        assert_eq!(ring_to_string(&e), "-x^2");
    }
}
