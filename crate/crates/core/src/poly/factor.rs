//! Complete factorization into monic irreducibles, over the rationals and
//! over finite fields, with a canonical output order.

use super::factor_finite::factor_squarefree_finite;
use super::factor_rat::factor_squarefree_rational;
use super::squarefree::squarefree_decomposition;
use super::{PolyError, Polynomial};
use crate::field::{Field, FieldElement};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::cmp::Ordering;

/// Tuning knobs for [`factor_with`].
#[derive(Clone, Debug)]
pub struct FactorOptions {
    /// Largest degree accepted over the rationals; lifting/recombination
    /// cost grows quickly past this.
    pub rational_degree_cap: usize,
    /// Seed for the randomized equal-degree splitting. The sorted output is
    /// the same for every seed; this only affects internal work order.
    pub seed: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            rational_degree_cap: 16,
            seed: 1,
        }
    }
}

/// unit * prod(f_i^e_i) with the f_i monic irreducible and pairwise
/// distinct, sorted by [`canonical_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn product(&self, k: &Field) -> Polynomial {
        let mut out = Polynomial::constant(self.unit.clone());
        for (f, e) in &self.factors {
            out = out.mul(&f.pow(*e, k), k);
        }
        out
    }
}

/// Canonical order on monic polynomials: degree descending, then coefficient
/// sequences compared from the leading term down.
pub(crate) fn canonical_order(a: &Polynomial, b: &Polynomial) -> Ordering {
    match b.degree().cmp(&a.degree()) {
        Ordering::Equal => {
            let (ac, bc) = (a.coeffs(), b.coeffs());
            for i in (0..ac.len()).rev() {
                match ac[i].cmp(&bc[i]) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

pub fn factor(f: &Polynomial, k: &Field) -> Result<Factorization, PolyError> {
    factor_with(f, k, &FactorOptions::default())
}

pub fn factor_with(
    f: &Polynomial,
    k: &Field,
    opts: &FactorOptions,
) -> Result<Factorization, PolyError> {
    if f.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if matches!(k, Field::RealClosed) {
        return Err(PolyError::UnsupportedField);
    }
    if matches!(k, Field::Rationals) {
        let d = f.degree().unwrap();
        if d > opts.rational_degree_cap {
            return Err(PolyError::DegreeTooLarge {
                degree: d,
                cap: opts.rational_degree_cap,
            });
        }
    }
    let (unit, parts) = squarefree_decomposition(f, k)?;
    let mut rng = ChaCha12Rng::seed_from_u64(opts.seed);
    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    for (part, mult) in parts {
        let irreducibles = match k {
            Field::Rationals => factor_squarefree_rational(&part, opts.seed),
            Field::Prime(_) | Field::Extension(_) => {
                factor_squarefree_finite(&part, k, &mut rng)
            }
            Field::RealClosed => unreachable!(),
        };
        // Parts are pairwise coprime and each is squarefree, so no merging
        // of repeated irreducibles is ever needed here.
        for h in irreducibles {
            factors.push((h, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| canonical_order(a, b));
    Ok(Factorization { unit, factors })
}

/// Degree >= 1 and exactly one irreducible factor with multiplicity 1.
/// Constants and zero are not irreducible.
pub fn is_irreducible(f: &Polynomial, k: &Field) -> Result<bool, PolyError> {
    match f.degree() {
        None | Some(0) => return Ok(false),
        _ => {}
    }
    let fac = factor(f, k)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}
