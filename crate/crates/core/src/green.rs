//! The subring generated by the unipotent indecomposables in characteristic
//! p — equivalently the Green ring of a cyclic p-group.
//!
//! Basis elements v_s stand for the class of k[x]/(x-1)^s. There is no
//! closed product formula in positive characteristic; instead products are
//! computed by translating into the generator family
//! w_α = v_{p^α + 1} - v_{p^α - 1}, multiplying polynomials in the w_α
//! (which commute), and expanding back into the v-basis with the three-case
//! generator relation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreenError {
    /// w_α · v_r is only defined for 1 ≤ r ≤ p^{α+1}.
    Range { alpha: u32, r: u64, bound: u64 },
}

impl fmt::Display for GreenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GreenError::Range { alpha, r, bound } => {
                write!(f, "w_{alpha} * v_{r} is out of range (need 1 <= {r} <= {bound})")
            }
        }
    }
}

impl std::error::Error for GreenError {}

/// Integer combination of basis classes v_s, keyed by s. v_0 is the zero
/// module and is never stored; zero coefficients are dropped on the spot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPrimeElement {
    p: u64,
    coeffs: BTreeMap<u64, i64>,
}

impl RPrimeElement {
    pub fn zero(p: u64) -> Self {
        RPrimeElement { p, coeffs: BTreeMap::new() }
    }

    /// The basis class v_s (the zero element when s = 0).
    pub fn basis(p: u64, s: u64) -> Self {
        let mut e = RPrimeElement::zero(p);
        e.add_term(s, 1);
        e
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, i64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, s: u64, c: i64) {
        if s == 0 || c == 0 {
            return;
        }
        let slot = self.coeffs.entry(s).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&s);
        }
    }

    pub fn add(&self, rhs: &RPrimeElement) -> RPrimeElement {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        let mut out = self.clone();
        for (&s, &c) in &rhs.coeffs {
            out.add_term(s, c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> RPrimeElement {
        let mut out = RPrimeElement::zero(self.p);
        for (&s, &cs) in &self.coeffs {
            out.add_term(s, cs * c);
        }
        out
    }

    /// Total dimension Σ s·coeff — a ring morphism to the integers.
    pub fn dim(&self) -> i64 {
        self.coeffs.iter().map(|(&s, &c)| s as i64 * c).sum()
    }
}

/// Integer polynomial in the commuting generators w_α. A monomial is the
/// multiset of its generator indices, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WPolynomial {
    p: u64,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl WPolynomial {
    pub fn zero(p: u64) -> Self {
        WPolynomial { p, terms: BTreeMap::new() }
    }

    /// The multiplicative identity: the empty monomial.
    pub fn one(p: u64) -> Self {
        let mut w = WPolynomial::zero(p);
        w.add_term(Vec::new(), 1);
        w
    }

    /// The generator w_α as a one-term polynomial.
    pub fn generator(p: u64, alpha: u32) -> Self {
        let mut w = WPolynomial::zero(p);
        w.add_term(vec![alpha], 1);
        w
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, monomial: Vec<u32>, c: i64) {
        if c == 0 {
            return;
        }
        debug_assert!(monomial.windows(2).all(|w| w[0] <= w[1]));
        match self.terms.get_mut(&monomial) {
            Some(slot) => {
                *slot += c;
                if *slot == 0 {
                    self.terms.remove(&monomial);
                }
            }
            None => {
                self.terms.insert(monomial, c);
            }
        }
    }

    pub fn add(&self, rhs: &WPolynomial) -> WPolynomial {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &WPolynomial) -> WPolynomial {
        self.add(&rhs.scale(-1))
    }

    pub fn scale(&self, c: i64) -> WPolynomial {
        let mut out = WPolynomial::zero(self.p);
        for (m, &cm) in &self.terms {
            out.add_term(m.clone(), cm * c);
        }
        out
    }

    pub fn mul(&self, rhs: &WPolynomial) -> WPolynomial {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        let mut out = WPolynomial::zero(self.p);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &rhs.terms {
                let mut m = Vec::with_capacity(m1.len() + m2.len());
                m.extend_from_slice(m1);
                m.extend_from_slice(m2);
                m.sort_unstable();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Multiplies every monomial by the generator w_α.
    fn mul_generator(&self, alpha: u32) -> WPolynomial {
        let mut out = WPolynomial::zero(self.p);
        for (m, &c) in &self.terms {
            let mut m2 = m.clone();
            let pos = m2.partition_point(|&a| a <= alpha);
            m2.insert(pos, alpha);
            out.add_term(m2, c);
        }
        out
    }
}

/// The generator relation: w_α · v_r expanded in the v-basis, with
/// q = p^α. Three cases split [1, pq] into [1, q], (q, (p-1)q] and
/// ((p-1)q, pq].
pub fn w_times_v(alpha: u32, r: u64, p: u64) -> Result<RPrimeElement, GreenError> {
    let q = p.checked_pow(alpha).expect("generator index overflows u64");
    let pq = q.checked_mul(p).expect("generator index overflows u64");
    if r < 1 || r > pq {
        return Err(GreenError::Range { alpha, r, bound: pq });
    }
    let mut out = RPrimeElement::zero(p);
    if r <= q {
        out.add_term(r + q, 1);
        out.add_term(q - r, -1);
    } else if r <= (p - 1) * q {
        out.add_term(r + q, 1);
        out.add_term(r - q, 1);
    } else {
        out.add_term(r - q, 1);
        out.add_term(pq, 2);
        out.add_term((2 * p - 1) * q - r, -1);
    }
    Ok(out)
}

fn v_to_w_memo() -> &'static Mutex<HashMap<(u64, u64), WPolynomial>> {
    static MEMO: OnceLock<Mutex<HashMap<(u64, u64), WPolynomial>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Writes v_s as a polynomial in the generators w_α.
///
/// Recursion: split s = q + r with q the largest power of p strictly below
/// s (so 1 ≤ r ≤ (p-1)q holds automatically). Then
/// v_s = w_α·(v_r as a W-polynomial) + v_{s-2r} when r ≤ q, and
/// v_s = w_α·(v_r as a W-polynomial) - v_{s-2q} when r > q.
/// Base cases: v_0 = 0, v_1 = 1.
pub fn v_to_w(s: u64, p: u64) -> WPolynomial {
    if s == 0 {
        return WPolynomial::zero(p);
    }
    if s == 1 {
        return WPolynomial::one(p);
    }
    if let Some(hit) = v_to_w_memo().lock().unwrap().get(&(p, s)) {
        return hit.clone();
    }
    let mut alpha = 0u32;
    let mut q = 1u64;
    while q.checked_mul(p).expect("basis index overflows u64") < s {
        q *= p;
        alpha += 1;
    }
    let r = s - q;
    debug_assert!(1 <= r && r <= (p - 1) * q);
    let head = v_to_w(r, p).mul_generator(alpha);
    let out = if r <= q {
        head.add(&v_to_w(s - 2 * r, p))
    } else {
        head.sub(&v_to_w(s - 2 * q, p))
    };
    v_to_w_memo().lock().unwrap().insert((p, s), out.clone());
    out
}

/// Expands a W-polynomial into the v-basis.
///
/// Each monomial is folded ascending by generator index: starting from v_1,
/// every intermediate index stays within the range the generator relation
/// requires (indices after multiplying by w_α are at most p^{α+1}, and the
/// next generator index is at least α).
pub fn w_expand(w: &WPolynomial) -> RPrimeElement {
    let p = w.p;
    let mut out = RPrimeElement::zero(p);
    for (monomial, &c) in &w.terms {
        let mut acc = RPrimeElement::basis(p, 1);
        for &alpha in monomial {
            let mut next = RPrimeElement::zero(p);
            for (&r, &cr) in &acc.coeffs {
                let step = w_times_v(alpha, r, p)
                    .expect("ascending fold keeps indices in generator range");
                for (&s, &cs) in &step.coeffs {
                    next.add_term(s, cs * cr);
                }
            }
            acc = next;
        }
        for (&s, &cs) in &acc.coeffs {
            out.add_term(s, cs * c);
        }
    }
    out
}

/// Product in the subring: translate both sides to W-polynomials, multiply,
/// expand back. On basis inputs the result is the decomposition of the
/// corresponding tensor product into indecomposables.
pub fn rprime_mul(a: &RPrimeElement, b: &RPrimeElement) -> RPrimeElement {
    assert_eq!(a.p, b.p, "mixed characteristics");
    let p = a.p;
    let mut out = RPrimeElement::zero(p);
    for (&s, &cs) in &a.coeffs {
        for (&t, &ct) in &b.coeffs {
            let prod = w_expand(&v_to_w(s, p).mul(&v_to_w(t, p)));
            for (&u, &cu) in &prod.coeffs {
                out.add_term(u, cu * cs * ct);
            }
        }
    }
    out
}

/// Induction along the degree-p field extension: ι(v_s) = v_{ps}, extended
/// linearly.
pub fn ind_map(v: &RPrimeElement) -> RPrimeElement {
    let mut out = RPrimeElement::zero(v.p);
    for (&s, &c) in &v.coeffs {
        out.add_term(s.checked_mul(v.p).expect("basis index overflows u64"), c);
    }
    out
}

/// Restriction: with s = tp + r (0 ≤ r < p), ρ(v_s) = r·v_{t+1} + (p-r)·v_t,
/// extended linearly.
pub fn res_map(v: &RPrimeElement) -> RPrimeElement {
    let p = v.p;
    let mut out = RPrimeElement::zero(p);
    for (&s, &c) in &v.coeffs {
        let t = s / p;
        let r = s % p;
        out.add_term(t + 1, r as i64 * c);
        out.add_term(t, (p - r) as i64 * c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn v(p: u64, terms: &[(u64, i64)]) -> RPrimeElement {
        let mut e = RPrimeElement::zero(p);
        for &(s, c) in terms {
            e.add_term(s, c);
        }
        e
    }

    fn w(p: u64, terms: &[(&[u32], i64)]) -> WPolynomial {
        let mut e = WPolynomial::zero(p);
        for &(m, c) in terms {
            e.add_term(m.to_vec(), c);
        }
        e
    }

    #[test]
    fn generator_relation_three_cases() {
        assert_eq!(w_times_v(0, 1, 2).unwrap(), v(2, &[(2, 1)]));
        assert_eq!(w_times_v(0, 2, 3).unwrap(), v(3, &[(3, 1), (1, 1)]));
        assert_eq!(w_times_v(0, 2, 2).unwrap(), v(2, &[(2, 2)]));
        // Third clause without cancellation: p=3, q=3, r=7.
        assert_eq!(
            w_times_v(1, 7, 3).unwrap(),
            v(3, &[(4, 1), (9, 2), (8, -1)])
        );
        assert_eq!(
            w_times_v(0, 3, 2),
            Err(GreenError::Range { alpha: 0, r: 3, bound: 2 })
        );
        assert_eq!(
            w_times_v(1, 0, 3),
            Err(GreenError::Range { alpha: 1, r: 0, bound: 9 })
        );
    }

    #[test]
    fn v_to_w_reproduces_the_worked_translation() {
        // v_8 at p=3 is w1^2 w0 + w1 - w0.
        assert_eq!(
            v_to_w(8, 3),
            w(3, &[(&[0, 1, 1], 1), (&[1], 1), (&[0], -1)])
        );
        assert_eq!(v_to_w(1, 5), WPolynomial::one(5));
        assert_eq!(v_to_w(2, 2), w(2, &[(&[0], 1)]));
    }

    #[test]
    fn w_expand_reproduces_the_worked_expansion() {
        // w1^2 w0 at p=3 expands to v_8 - v_4 + 2 v_2.
        let m = w(3, &[(&[0, 1, 1], 1)]);
        assert_eq!(w_expand(&m), v(3, &[(8, 1), (4, -1), (2, 2)]));
        assert_eq!(w_expand(&w(2, &[(&[0], 1)])), v(2, &[(2, 1)]));
        assert_eq!(w_expand(&WPolynomial::one(7)), v(7, &[(1, 1)]));
    }

    #[test]
    fn translation_round_trips_up_to_p_cubed() {
        for p in [2u64, 3, 5] {
            for s in 1..=p * p * p {
                assert_eq!(
                    w_expand(&v_to_w(s, p)),
                    RPrimeElement::basis(p, s),
                    "round trip failed for p={p}, s={s}"
                );
            }
        }
    }

    #[test]
    fn known_products() {
        let v2 = RPrimeElement::basis(2, 2);
        assert_eq!(rprime_mul(&v2, &v2), v(2, &[(2, 2)]));
        let v2_3 = RPrimeElement::basis(3, 2);
        assert_eq!(rprime_mul(&v2_3, &v2_3), v(3, &[(3, 1), (1, 1)]));
        let v1 = RPrimeElement::basis(5, 1);
        for s in 1..=25 {
            let vs = RPrimeElement::basis(5, s);
            assert_eq!(rprime_mul(&v1, &vs), vs);
        }
    }

    #[test]
    fn products_are_nonnegative_decompositions_of_the_right_dimension() {
        for p in [2u64, 3, 5] {
            for s in 1..=p * p {
                for t in s..=p * p {
                    let prod =
                        rprime_mul(&RPrimeElement::basis(p, s), &RPrimeElement::basis(p, t));
                    assert!(prod.coeffs().values().all(|&c| c > 0));
                    assert_eq!(prod.dim(), (s * t) as i64);
                }
            }
        }
    }

    #[test]
    fn ring_axioms_on_random_elements() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for p in [2u64, 3, 5] {
            for _ in 0..15 {
                let draw = |rng: &mut ChaCha12Rng| {
                    let mut e = RPrimeElement::zero(p);
                    for _ in 0..rng.gen_range(1..=3) {
                        e.add_term(rng.gen_range(1..=p * p), rng.gen_range(-2..=2));
                    }
                    e
                };
                let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
                assert_eq!(rprime_mul(&a, &b), rprime_mul(&b, &a));
                assert_eq!(
                    rprime_mul(&rprime_mul(&a, &b), &c),
                    rprime_mul(&a, &rprime_mul(&b, &c))
                );
                assert_eq!(
                    rprime_mul(&a, &b).dim(),
                    a.dim() * b.dim(),
                    "dim must be a ring morphism"
                );
            }
        }
    }

    #[test]
    fn induction_and_restriction() {
        // 8 = 2*3 + 2, so the restriction of v_8 is 2 v_3 + v_2.
        assert_eq!(res_map(&RPrimeElement::basis(3, 8)), v(3, &[(3, 2), (2, 1)]));
        assert_eq!(ind_map(&RPrimeElement::basis(3, 2)), v(3, &[(6, 1)]));
        for p in [2u64, 3, 5] {
            assert_eq!(res_map(&RPrimeElement::basis(p, p)), v(p, &[(1, p as i64)]));
        }

        // Projection formula: ι(v)·w = ι(v·ρ(w)).
        let mut rng = ChaCha12Rng::seed_from_u64(22);
        for p in [2u64, 3, 5] {
            for _ in 0..20 {
                let a = RPrimeElement::basis(p, rng.gen_range(1..=p * p));
                let b = RPrimeElement::basis(p, rng.gen_range(1..=p * p));
                assert_eq!(
                    rprime_mul(&ind_map(&a), &b),
                    ind_map(&rprime_mul(&a, &res_map(&b)))
                );
            }
        }
    }

    #[test]
    fn powers_of_p_generate_ideals() {
        for p in [2u64, 3, 5] {
            for alpha in 0..=2u32 {
                let q = p.pow(alpha);
                let vq = RPrimeElement::basis(p, q);
                for t in 1..=2 * p * p {
                    let prod = rprime_mul(&vq, &RPrimeElement::basis(p, t));
                    assert!(
                        prod.coeffs().keys().all(|&s| s % q == 0),
                        "v_{q} * v_{t} at p={p} left the ideal"
                    );
                }
            }
        }
    }
}
