//! Cross-check suites behind `repring verify`.
//!
//! Every suite recomputes a family of products twice — once through the ring
//! formulas and once through an independent matrix- or string-level oracle —
//! and counts disagreements. Suites are exhaustive over fixed small ranges,
//! so a report depends only on the flags and the seed.

use num_bigint::BigInt;
use num_rational::BigRational;
use repring_core::green::{rprime_mul, v_to_w, w_expand, RPrimeElement, WPolynomial};
use repring_core::quiver::{
    qring_mul, realize_element, string_tensor, tensor_rep, BandDesc, QuiverClass,
    QuiverRingElement, QuiverShape, StringDesc,
};
use repring_core::{
    generic_decompose, jordan_block, jordan_type_unipotent, match_decomposition, realize,
    ring_mul, verify_module_product, Field, GaussianRational, Indecomposable, Polynomial,
    RingElement,
};

use crate::render::{rprime_to_string, wpoly_to_string};

/// Outcome of one suite: how many cross-checks ran and how many disagreed.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: u64,
    pub mismatches: u64,
}

/// Suite names accepted by `--suite`, in execution order for `all`.
pub const SUITE_NAMES: [&str; 5] = ["char0", "nilpotent", "charp", "realclosed", "quiver"];

/// Runs one suite (or `all`), returning per-suite tallies.
pub fn run(suite: &str, seed: u64, max_dim: usize) -> Result<Vec<SuiteResult>, String> {
    let runner = |name: &str| -> SuiteResult {
        match name {
            "char0" => char0_suite(max_dim),
            "nilpotent" => nilpotent_suite(max_dim),
            "charp" => charp_suite(max_dim),
            "realclosed" => realclosed_suite(max_dim),
            "quiver" => quiver_suite(seed, max_dim),
            _ => unreachable!(),
        }
    };
    if suite == "all" {
        return Ok(SUITE_NAMES.iter().map(|name| runner(name)).collect());
    }
    if SUITE_NAMES.contains(&suite) {
        return Ok(vec![runner(suite)]);
    }
    Err(format!(
        "unknown suite '{suite}' (expected all or one of {})",
        SUITE_NAMES.join(", ")
    ))
}

struct Tally {
    checks: u64,
    mismatches: u64,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, mismatches: 0 }
    }

    fn record(&mut self, ok: bool) {
        self.checks += 1;
        if !ok {
            self.mismatches += 1;
        }
    }

    fn done(self, name: &'static str) -> SuiteResult {
        SuiteResult { name, checks: self.checks, mismatches: self.mismatches }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `x - lambda` over `k` (characteristic zero).
fn linear_poly(lambda: &BigRational, k: &Field) -> Polynomial {
    Polynomial::from_coeffs(vec![k.from_rational(-lambda.clone()), k.one()])
}

/// Checks the ring formula and the matrix oracle for one product of
/// indecomposables whose expected value is `expected`.
fn check_product(
    tally: &mut Tally,
    a: &Indecomposable,
    b: &Indecomposable,
    expected: Option<&RingElement>,
    k: &Field,
) {
    let ea = RingElement::from_indecomposable(a.clone(), k).unwrap();
    let eb = RingElement::from_indecomposable(b.clone(), k).unwrap();
    let prod = match ring_mul(&ea, &eb) {
        Ok(p) => p,
        Err(_) => {
            tally.record(false);
            return;
        }
    };
    if let Some(want) = expected {
        tally.record(&prod == want);
    }
    match verify_module_product(a, b, &prod) {
        Ok(report) => tally.record(report.matches),
        Err(_) => tally.record(false),
    }
}

/// Jordan ladder over the rationals: sizes `l+m-1-2i`, eigenvalues multiply.
fn char0_suite(max_dim: usize) -> SuiteResult {
    let k = Field::rationals();
    let params = [rat(1, 1), rat(2, 1), rat(-1, 1), rat(1, 2)];
    let mut tally = Tally::new();
    for l in 1u32..=4 {
        for m in l..=4 {
            if (l * m) as usize > max_dim {
                continue;
            }
            for lambda in &params {
                for mu in &params {
                    let a = Indecomposable::band(&linear_poly(lambda, &k), l, &k).unwrap();
                    let b = Indecomposable::band(&linear_poly(mu, &k), m, &k).unwrap();
                    let target = linear_poly(&(lambda * mu), &k);
                    let mut expected = RingElement::zero(&k);
                    for i in 0..l.min(m) {
                        let s = l + m - 1 - 2 * i;
                        expected
                            .insert_checked(
                                Indecomposable::band(&target, s, &k).unwrap(),
                                1,
                                &k,
                            )
                            .unwrap();
                    }
                    check_product(&mut tally, &a, &b, Some(&expected), &k);
                }
            }
        }
    }
    tally.done("char0")
}

/// Products against the nilpotent ideal over the rationals.
fn nilpotent_suite(max_dim: usize) -> SuiteResult {
    let k = Field::rationals();
    let mut tally = Tally::new();
    for s in 1u32..=5 {
        for t in s..=5 {
            if (s * t) as usize > max_dim {
                continue;
            }
            let mut expected = RingElement::zero(&k);
            expected.insert_checked(Indecomposable::nil(s), (t - s + 1) as i64, &k).unwrap();
            for i in 1..s {
                expected.insert_checked(Indecomposable::nil(i), 2, &k).unwrap();
            }
            check_product(
                &mut tally,
                &Indecomposable::nil(s),
                &Indecomposable::nil(t),
                Some(&expected),
                &k,
            );
        }
    }
    let polys = [
        Polynomial::from_i64(&k, &[-2, 1]),
        Polynomial::from_i64(&k, &[-2, 0, 1]),
        Polynomial::from_i64(&k, &[1, -1, 1]),
    ];
    for s in 1u32..=4 {
        for f in &polys {
            let df = f.degree().unwrap() as u32;
            for t in 1u32..=3 {
                if (s * t * df) as usize > max_dim {
                    continue;
                }
                let band = Indecomposable::band(f, t, &k).unwrap();
                let mut expected = RingElement::zero(&k);
                expected
                    .insert_checked(Indecomposable::nil(s), (t * df) as i64, &k)
                    .unwrap();
                check_product(&mut tally, &Indecomposable::nil(s), &band, Some(&expected), &k);
            }
        }
    }
    tally.done("nilpotent")
}

/// Green-ring products against Jordan types of Kronecker products, plus the
/// frozen basis translations.
fn charp_suite(max_dim: usize) -> SuiteResult {
    let mut tally = Tally::new();
    for p in [2u64, 3, 5] {
        let k = Field::prime(p).unwrap();
        let one = k.one();
        for s in 1u64..=8 {
            for t in s..=8 {
                if (s * t) as usize > max_dim.min(100) {
                    continue;
                }
                let v = rprime_mul(&RPrimeElement::basis(p, s), &RPrimeElement::basis(p, t));
                let mut expected_parts: Vec<u32> = Vec::new();
                let mut effective = true;
                for (&size, &c) in v.coeffs().iter().rev() {
                    if c < 0 {
                        effective = false;
                        break;
                    }
                    for _ in 0..c {
                        expected_parts.push(size as u32);
                    }
                }
                if !effective {
                    tally.record(false);
                    continue;
                }
                let ja = jordan_block(&k, &one, s as usize);
                let jb = jordan_block(&k, &one, t as usize);
                let kron = ja.kronecker(&jb, &k).unwrap();
                match jordan_type_unipotent(&kron, &one, &k) {
                    Ok(jt) => tally.record(jt.parts() == expected_parts.as_slice()),
                    Err(_) => tally.record(false),
                }
            }
        }
        // Invariant-factor oracle on the same products, realized as bands at
        // x - 1, for the small sizes.
        let xm1 = Polynomial::from_i64(&k, &[-1, 1]);
        for s in 1u32..=6 {
            for t in s..=6 {
                if (s * t) as usize > max_dim.min(36) {
                    continue;
                }
                let v = rprime_mul(&RPrimeElement::basis(p, s as u64), &RPrimeElement::basis(p, t as u64));
                let mut expected = RingElement::zero(&k);
                let mut ok = true;
                for (&size, &c) in v.coeffs() {
                    if c < 0 {
                        ok = false;
                        break;
                    }
                    expected
                        .insert_checked(
                            Indecomposable::band(&xm1, size as u32, &k).unwrap(),
                            c,
                            &k,
                        )
                        .unwrap();
                }
                if !ok {
                    tally.record(false);
                    continue;
                }
                let a = Indecomposable::band(&xm1, s, &k).unwrap();
                let b = Indecomposable::band(&xm1, t, &k).unwrap();
                match verify_module_product(&a, &b, &expected) {
                    Ok(report) => tally.record(report.matches),
                    Err(_) => tally.record(false),
                }
            }
        }
    }
    // Frozen translations between the v- and w-bases at p = 3.
    tally.record(wpoly_to_string(&v_to_w(8, 3)) == "w1^2*w0 + w1 - w0");
    let m = WPolynomial::generator(3, 1)
        .mul(&WPolynomial::generator(3, 1))
        .mul(&WPolynomial::generator(3, 0));
    tally.record(rprime_to_string(&w_expand(&m)) == "v8 - v4 + 2*v2");
    tally.done("charp")
}

/// Products over the real-closed model against the rational matrix oracle.
fn realclosed_suite(max_dim: usize) -> SuiteResult {
    let k = Field::real_closed();
    let mut pool: Vec<Indecomposable> = Vec::new();
    for l in 1u32..=2 {
        for lam in [rat(1, 1), rat(-1, 1), rat(2, 1), rat(1, 2)] {
            pool.push(Indecomposable::jordan(lam, l).unwrap());
        }
        for (re, im) in [(rat(1, 1), rat(1, 1)), (rat(0, 1), rat(2, 1)), (rat(1, 2), rat(1, 1))] {
            pool.push(Indecomposable::rot(GaussianRational::new(re, im), l).unwrap());
        }
    }
    let mut tally = Tally::new();
    for a in &pool {
        for b in &pool {
            if (a.dim() * b.dim()) as usize > max_dim {
                continue;
            }
            check_product(&mut tally, a, b, None, &k);
        }
    }
    tally.done("realclosed")
}

fn loop_image(e: &QuiverRingElement, k: &Field) -> Option<RingElement> {
    let mut out = RingElement::zero(k);
    for (class, &c) in e.terms() {
        let ind = match class {
            QuiverClass::Str(s) => Indecomposable::nil(s.len() + 1),
            QuiverClass::Band(b) => Indecomposable::band(b.poly(), b.power(), k).ok()?,
        };
        out.insert_checked(ind, c, k).ok()?;
    }
    Some(out)
}

/// String products on small cycles against the generic decomposition oracle,
/// plus the loop-quiver bridge to the module ring.
fn quiver_suite(seed: u64, max_dim: usize) -> SuiteResult {
    let mut tally = Tally::new();
    let cap = max_dim.min(64);
    let mut case = 0u64;
    for (n, k) in [(1u32, Field::rationals()), (2, Field::rationals()), (1, Field::prime(3).unwrap())]
    {
        let shape = QuiverShape::cyclic(n);
        let mut strings = Vec::new();
        for i in 0..=n {
            for len in 0..=3u32 {
                strings.push(StringDesc::new(i as i64, len, &shape));
            }
        }
        for a in &strings {
            for b in &strings {
                if ((a.dim() * b.dim()) as usize) > cap {
                    continue;
                }
                case += 1;
                let predicted = string_tensor(a, b, &shape, &k);
                let ra = realize(&QuiverClass::Str(*a), &shape, &k);
                let rb = realize(&QuiverClass::Str(*b), &shape, &k);
                let prod = match tensor_rep(&ra, &rb) {
                    Ok(p) => p,
                    Err(_) => {
                        tally.record(false);
                        continue;
                    }
                };
                match generic_decompose(&prod, seed.wrapping_add(case)) {
                    Ok(summands) => tally.record(match_decomposition(&predicted, &summands)),
                    Err(_) => tally.record(false),
                }
            }
        }
        // Dimension vectors are multiplicative on all products, bands
        // included.
        let band_pool = [
            BandDesc::new(&Polynomial::from_i64(&k, &[-2, 1]), 1, &k).unwrap(),
            BandDesc::new(&Polynomial::from_i64(&k, &[-2, 0, 1]), 1, &k).unwrap(),
        ];
        let mut classes: Vec<QuiverClass> =
            strings.iter().map(|s| QuiverClass::Str(*s)).collect();
        classes.extend(band_pool.iter().map(|b| QuiverClass::Band(b.clone())));
        for a in &classes {
            for b in &classes {
                let mut ea = QuiverRingElement::zero(&shape, &k);
                ea.add_term(a.clone(), 1);
                let mut eb = QuiverRingElement::zero(&shape, &k);
                eb.add_term(b.clone(), 1);
                let prod = match qring_mul(&ea, &eb) {
                    Ok(p) => p,
                    Err(_) => {
                        tally.record(false);
                        continue;
                    }
                };
                let da = ea.dim_vector();
                let db = eb.dim_vector();
                let dp = prod.dim_vector();
                let ok = dp
                    .iter()
                    .zip(da.iter().zip(db.iter()))
                    .all(|(&prod_dim, (&x, &y))| prod_dim == x * y);
                tally.record(ok);
            }
        }
        // Realizations compose with the product: the realized product of two
        // single classes has the predicted dimension vector.
        for a in classes.iter().take(4) {
            for b in classes.iter().take(4) {
                let mut ea = QuiverRingElement::zero(&shape, &k);
                ea.add_term(a.clone(), 1);
                let mut eb = QuiverRingElement::zero(&shape, &k);
                eb.add_term(b.clone(), 1);
                let prod = qring_mul(&ea, &eb).unwrap();
                let realized = realize_element(&prod);
                let dims: Vec<i64> = realized.dims.iter().map(|&d| d as i64).collect();
                tally.record(dims == prod.dim_vector());
            }
        }
    }
    // Loop quiver: the cycle ring with n = 0 is the module ring in disguise.
    for k in [Field::rationals(), Field::prime(2).unwrap()] {
        let shape = QuiverShape::cyclic(0);
        let mut classes: Vec<QuiverClass> = (0..=3u32)
            .map(|len| QuiverClass::Str(StringDesc::new(0, len, &shape)))
            .collect();
        classes.push(QuiverClass::Band(
            BandDesc::new(&Polynomial::from_i64(&k, &[-1, 1]), 2, &k).unwrap(),
        ));
        classes.push(QuiverClass::Band(
            BandDesc::new(&Polynomial::from_i64(&k, &[1, 1, 1]), 1, &k).unwrap(),
        ));
        for a in &classes {
            for b in &classes {
                let mut ea = QuiverRingElement::zero(&shape, &k);
                ea.add_term(a.clone(), 1);
                let mut eb = QuiverRingElement::zero(&shape, &k);
                eb.add_term(b.clone(), 1);
                let prod = match qring_mul(&ea, &eb) {
                    Ok(p) => p,
                    Err(_) => {
                        tally.record(false);
                        continue;
                    }
                };
                let bridge = (|| {
                    let ma = loop_image(&ea, &k)?;
                    let mb = loop_image(&eb, &k)?;
                    let mp = loop_image(&prod, &k)?;
                    Some((ring_mul(&ma, &mb).ok()?, mp))
                })();
                match bridge {
                    Some((ring_side, quiver_side)) => tally.record(ring_side == quiver_side),
                    None => tally.record(false),
                }
            }
        }
    }
    tally.done("quiver")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_runs_clean_at_small_caps() {
        for result in run("all", 7, 36).unwrap() {
            assert!(result.checks > 0, "{} ran nothing", result.name);
            assert_eq!(result.mismatches, 0, "{} found mismatches", result.name);
        }
    }

    #[test]
    fn unknown_suites_are_rejected() {
        assert!(run("nope", 0, 16).is_err());
    }
}
