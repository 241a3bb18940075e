//! Squarefree decomposition over any of the supported coefficient fields.
//!
//! The classical gcd-quotient chain handles multiplicities prime to the
//! characteristic; whatever survives the chain in characteristic p is a p-th
//! power (the fields here are perfect), so its p-th root is extracted and the
//! decomposition recurses with multiplicities scaled by p.

use super::{PolyError, Polynomial};
use crate::field::{Field, FieldElement};

/// Splits nonzero f as unit * prod(part_i ^ mult_i) with the parts monic,
/// squarefree, and pairwise coprime, sorted by multiplicity.
pub fn squarefree_decomposition(
    f: &Polynomial,
    k: &Field,
) -> Result<(FieldElement, Vec<(Polynomial, u32)>), PolyError> {
    if f.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if matches!(k, Field::RealClosed) {
        return Err(PolyError::UnsupportedField);
    }
    let unit = f.leading().unwrap().clone();
    let mut parts = sqf_monic(&f.monic(k), k);
    parts.sort_by_key(|(_, e)| *e);
    Ok((unit, parts))
}

fn sqf_monic(f: &Polynomial, k: &Field) -> Vec<(Polynomial, u32)> {
    if f.degree() == Some(0) {
        return vec![];
    }
    let fd = f.derivative(k);
    if fd.is_zero() {
        // Purely inseparable layer: f = g(x^p).
        let p = k.characteristic() as u32;
        debug_assert!(p > 0, "nonconstant polynomial with zero derivative in char 0");
        let g = pth_root(f, k);
        return sqf_monic(&g, k)
            .into_iter()
            .map(|(h, e)| (h, e * p))
            .collect();
    }
    let mut c = f.gcd(&fd, k);
    let mut w = f.div_exact(&c, k);
    let mut out = Vec::new();
    let mut i = 1u32;
    while w.degree() != Some(0) {
        let y = w.gcd(&c, k);
        let z = w.div_exact(&y, k);
        if z.degree() != Some(0) {
            out.push((z, i));
        }
        c = c.div_exact(&y, k);
        w = y;
        i += 1;
    }
    if c.degree() != Some(0) {
        // Multiplicities divisible by p hide in c as a p-th power.
        let p = k.characteristic() as u32;
        debug_assert!(p > 0);
        let g = pth_root(&c, k);
        out.extend(sqf_monic(&g, k).into_iter().map(|(h, e)| (h, e * p)));
    }
    out
}

/// p-th root of a polynomial of the form g(x^p) over F_{p^m}.
fn pth_root(f: &Polynomial, k: &Field) -> Polynomial {
    let p = k.characteristic();
    debug_assert!(p > 0);
    // Coefficient roots: c^(p^(m-1)) inverts Frobenius on F_{p^m}.
    let m = match k {
        Field::Extension(ext) => ext.degree(),
        _ => 1,
    };
    let mut out = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % p as usize != 0 {
            debug_assert!(c.is_zero(), "input is not a polynomial in x^p");
            continue;
        }
        let mut root = c.clone();
        for _ in 0..m.saturating_sub(1) {
            root = k.pow(&root, p);
        }
        out.push(root);
    }
    Polynomial::from_coeffs(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn rebuild(unit: &FieldElement, parts: &[(Polynomial, u32)], k: &Field) -> Polynomial {
        let mut acc = Polynomial::constant(unit.clone());
        for (h, e) in parts {
            acc = acc.mul(&h.pow(*e, k), k);
        }
        acc
    }

    #[test]
    fn recovers_known_multiplicities_over_q() {
        let k = Field::rationals();
        // 3 * (x-1)^2 * (x^2+1)^3 * x
        let f = Polynomial::from_i64(&k, &[3])
            .mul(&Polynomial::from_i64(&k, &[-1, 1]).pow(2, &k), &k)
            .mul(&Polynomial::from_i64(&k, &[1, 0, 1]).pow(3, &k), &k)
            .mul(&Polynomial::x(&k), &k);
        let (unit, parts) = squarefree_decomposition(&f, &k).unwrap();
        assert_eq!(unit, k.from_i64(3));
        let mults: Vec<u32> = parts.iter().map(|(_, e)| *e).collect();
        assert_eq!(mults, vec![1, 2, 3]);
        assert_eq!(rebuild(&unit, &parts, &k), f);
        assert_eq!(parts[0].0, Polynomial::x(&k));
    }

    #[test]
    fn char_p_pth_power_multiplicities() {
        let k = Field::prime(3).unwrap();
        // (x+1)^3 * (x+2)^6 has derivative 0 after the first chain pass.
        let f = Polynomial::from_i64(&k, &[1, 1])
            .pow(3, &k)
            .mul(&Polynomial::from_i64(&k, &[2, 1]).pow(6, &k), &k);
        let (unit, parts) = squarefree_decomposition(&f, &k).unwrap();
        assert!(unit.is_one());
        assert_eq!(
            parts,
            vec![
                (Polynomial::from_i64(&k, &[1, 1]), 3),
                (Polynomial::from_i64(&k, &[2, 1]), 6),
            ]
        );
    }

    #[test]
    fn extension_field_inseparable_layer() {
        // F_9 = F_3[y]/(y^2+1); take f = (x - y)^3 where y is the generator:
        // f = x^3 - y^3 = x^3 + ... computed via arithmetic below.
        let k = Field::extension(3, &[1, 0, 1]).unwrap();
        let gen = FieldElement::Ext(vec![0, 1]);
        let lin = Polynomial::from_coeffs(vec![k.neg(&gen), k.one()]);
        let f = lin.pow(3, &k);
        let (unit, parts) = squarefree_decomposition(&f, &k).unwrap();
        assert!(unit.is_one());
        assert_eq!(parts, vec![(lin, 3)]);
    }

    #[test]
    fn random_products_round_trip() {
        let fields = [Field::rationals(), Field::prime(2).unwrap(), Field::prime(5).unwrap()];
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for k in &fields {
            for _ in 0..40 {
                // Scalar unit: 1 or 3 stays nonzero in every field used here.
                let mut f = Polynomial::from_i64(k, &[rng.gen_range(0..2) * 2 + 1]);
                for _ in 0..rng.gen_range(1..4) {
                    let d = rng.gen_range(1..3);
                    let mut cs: Vec<i64> = (0..d).map(|_| rng.gen_range(-4..5)).collect();
                    cs.push(1);
                    let h = Polynomial::from_i64(k, &cs);
                    f = f.mul(&h.pow(rng.gen_range(1..5), k), k);
                }
                let (unit, parts) = squarefree_decomposition(&f, k).unwrap();
                assert_eq!(rebuild(&unit, &parts, k), f);
                // Parts are squarefree and pairwise coprime.
                for (i, (h, _)) in parts.iter().enumerate() {
                    assert!(h.gcd(&h.derivative(k), k).degree() == Some(0));
                    for (g, _) in parts.iter().skip(i + 1) {
                        assert_eq!(h.gcd(g, k).degree(), Some(0));
                    }
                }
            }
        }
    }
}
