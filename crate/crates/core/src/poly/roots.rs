//! Exhaustive root enumeration in small finite fields.
//!
//! Eigenvalue bookkeeping needs the literal roots of a prime-field
//! polynomial inside a chosen extension F_(p^L). The extension fields in
//! play are tiny, so the honest approach is to scan every element; the cap
//! keeps a careless caller from asking for an astronomically large scan.

use super::{PolyError, Polynomial};
use crate::field::{fp, Field, FieldElement};

/// Default ceiling on the number of field elements visited by
/// [`roots_in_extension`].
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 20;

/// The first monic irreducible of degree m over F_p, scanning candidate
/// lower-coefficient vectors in base-p counting order (constant coefficient
/// fastest). Deterministic, so one (p, m) always names the same field.
pub fn irreducible_modulus(p: u64, m: usize) -> Vec<u64> {
    assert!(m >= 1, "extension degree must be at least 1");
    let mut lower = vec![0u64; m];
    loop {
        let mut cand = lower.clone();
        cand.push(1);
        if fp::is_irreducible(&cand, p) {
            return cand;
        }
        // Odometer increment; a degree-m irreducible always exists, so this
        // never wraps all the way around.
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < m, "no irreducible of degree {m} over F_{p} found");
        }
    }
}

/// All roots of f in the finite field ext, with multiplicities, sorted.
/// f must have prime-subfield coefficients (the canonical-form data the
/// crate produces); ext is F_p itself or one of its extensions.
pub fn roots_in_extension(
    f: &Polynomial,
    ext: &Field,
    cap: u128,
) -> Result<Vec<(FieldElement, u32)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let size = ext.element_count().ok_or(PolyError::UnsupportedField)?;
    if size > cap {
        return Err(PolyError::CapExceeded { size, cap });
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let p = ext.characteristic();
    let fu: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            FieldElement::Mod(a) => *a,
            _ => panic!("root enumeration expects prime-subfield coefficients"),
        })
        .collect();
    let mut roots: Vec<FieldElement> = Vec::new();
    match ext {
        Field::Prime(_) => {
            for a in 0..p {
                let mut acc = 0u64;
                for c in fu.iter().rev() {
                    acc = fp::add_u64(fp::mul_u64(acc, a, p), *c, p);
                }
                if acc == 0 {
                    roots.push(FieldElement::Mod(a));
                }
            }
        }
        Field::Extension(xf) => {
            let m = xf.degree();
            let h = xf.modulus();
            if p < (1 << 21) {
                // Lazy-reduction scan: coefficient accumulators stay far
                // below u64 overflow because p^m <= cap bounds p and m.
                scan_extension_fast(&fu, p, m, h, size, &mut roots);
            } else {
                scan_extension_generic(f, ext, size, &mut roots);
            }
        }
        _ => return Err(PolyError::UnsupportedField),
    }
    // Multiplicities by repeated synthetic division, in the extension.
    let fx = lift_to(f, ext);
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let lin = Polynomial::from_coeffs(vec![ext.neg(&r), ext.one()]);
        let mut mult = 0u32;
        let mut cur = fx.clone();
        while !cur.is_constant() && cur.eval(&r, ext).is_zero() {
            cur = cur.div_exact(&lin, ext);
            mult += 1;
        }
        debug_assert!(mult >= 1);
        out.push((r, mult));
    }
    out.sort();
    debug_assert!(
        out.iter().map(|(_, m)| *m as usize).sum::<usize>() <= f.degree().unwrap()
    );
    Ok(out)
}

/// Re-tags prime-subfield coefficients as elements of ext.
fn lift_to(f: &Polynomial, ext: &Field) -> Polynomial {
    Polynomial::from_coeffs(
        f.coeffs()
            .iter()
            .map(|c| match (c, ext) {
                (FieldElement::Mod(a), Field::Extension(xf)) => {
                    let mut v = vec![0u64; xf.degree()];
                    v[0] = *a;
                    FieldElement::Ext(v)
                }
                (FieldElement::Mod(a), Field::Prime(_)) => FieldElement::Mod(*a),
                _ => unreachable!(),
            })
            .collect(),
    )
}

/// Horner scan of every extension element with raw u64 arithmetic: one
/// odometer walk, one reusable buffer, coefficient reductions deferred to
/// the end of each convolution.
fn scan_extension_fast(
    fu: &[u64],
    p: u64,
    m: usize,
    h: &[u64],
    size: u128,
    roots: &mut Vec<FieldElement>,
) {
    let mut e = vec![0u64; m];
    let mut acc = vec![0u64; m];
    let mut buf = vec![0u64; 2 * m - 1];
    for _ in 0..size {
        for a in acc.iter_mut() {
            *a = 0;
        }
        let top = fu.len() - 1;
        acc[0] = fu[top];
        for idx in (0..top).rev() {
            // acc = acc * e mod h, then + next coefficient.
            for b in buf.iter_mut() {
                *b = 0;
            }
            for (i, &ai) in acc.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &ej) in e.iter().enumerate() {
                    buf[i + j] += ai * ej;
                }
            }
            for i in (m..buf.len()).rev() {
                let c = buf[i] % p;
                if c != 0 {
                    for j in 0..m {
                        buf[i - m + j] += (p - h[j]) * c;
                    }
                }
                buf[i] = 0;
            }
            for j in 0..m {
                acc[j] = buf[j] % p;
            }
            acc[0] = (acc[0] + fu[idx]) % p;
        }
        if acc.iter().all(|&a| a == 0) {
            roots.push(FieldElement::Ext(e.clone()));
        }
        // Odometer step to the next element.
        for d in e.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
}

/// Field-op fallback for enormous characteristics (still under the cap).
fn scan_extension_generic(
    f: &Polynomial,
    ext: &Field,
    size: u128,
    roots: &mut Vec<FieldElement>,
) {
    let fx = lift_to(f, ext);
    for idx in 0..size {
        let a = ext.element_at(idx);
        if fx.eval(&a, ext).is_zero() {
            roots.push(a);
        }
    }
}
