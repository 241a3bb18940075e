//! Representation ring of the cyclically oriented cycle quiver with n+1
//! vertices (n = 0 is the loop quiver): string and band classes, their
//! vertex-wise tensor product, and explicit matrix realizations.
//!
//! The string product is computed by the covering-space decomposition: the
//! tensor basis e_s ⊗ e'_t splits into chains of constant s - t, and each
//! chain is a string. Band-by-band products delegate to the module ring of
//! k[x]; a band by a string collapses to dimension-many copies of the
//! string.

use crate::field::Field;
use crate::matrix::{companion, ExactMatrix, MatrixError};
use crate::poly::Polynomial;
use crate::ring::{tensor_indecomposable, Indecomposable, RingError};
use num_integer::Integer;
use std::collections::BTreeMap;

/// The cycle quiver a_0 → a_1 → ... → a_n → a_0. Only the cyclic
/// orientation (every arrow pointing the same way around) is constructible;
/// arrow α_v runs from vertex v to vertex (v+1) mod (n+1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuiverShape {
    n: u32,
    orientation: Vec<bool>,
}

impl QuiverShape {
    pub fn cyclic(n: u32) -> Self {
        QuiverShape { n, orientation: vec![true; n as usize + 1] }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of vertices (and of arrows).
    pub fn vertices(&self) -> usize {
        self.n as usize + 1
    }

    pub fn orientation(&self) -> &[bool] {
        &self.orientation
    }
}

/// String class S(i, i+len): the chain module with one basis vector at each
/// of the positions i..=i+len, each arrow sending a position to its
/// successor. Canonical form keeps 0 ≤ i ≤ n; positions are read modulo
/// n+1 onto vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct StringDesc {
    i: u32,
    len: u32,
}

impl StringDesc {
    /// Canonicalizes an arbitrary integer start position.
    pub fn new(i: i64, len: u32, shape: &QuiverShape) -> Self {
        let m = shape.vertices() as i64;
        StringDesc { i: i.rem_euclid(m) as u32, len }
    }

    pub fn start(&self) -> u32 {
        self.i
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    /// Total dimension: number of basis positions.
    pub fn dim(&self) -> i64 {
        self.len as i64 + 1
    }

    pub fn dim_vector(&self, shape: &QuiverShape) -> Vec<i64> {
        let m = shape.vertices();
        let mut dims = vec![0i64; m];
        for p in self.i..=self.i + self.len {
            dims[p as usize % m] += 1;
        }
        dims
    }
}

/// Band class B_f(s): every vertex carries k[x]/f(x)^s, every arrow the
/// identity except the last, which acts by x.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BandDesc {
    f: Polynomial,
    s: u32,
}

impl BandDesc {
    /// Validated like a module-ring band class: monic irreducible f with
    /// nonzero constant term.
    pub fn new(f: &Polynomial, s: u32, k: &Field) -> Result<Self, RingError> {
        match Indecomposable::band(f, s, k)? {
            Indecomposable::Band { f, s } => Ok(BandDesc { f, s }),
            _ => unreachable!("band constructor yields a band"),
        }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.f
    }

    pub fn power(&self) -> u32 {
        self.s
    }

    /// Dimension at each single vertex.
    pub fn dim(&self) -> i64 {
        self.s as i64 * self.f.degree().unwrap_or(0) as i64
    }

    pub fn dim_vector(&self, shape: &QuiverShape) -> Vec<i64> {
        vec![self.dim(); shape.vertices()]
    }

    fn to_indecomposable(&self) -> Indecomposable {
        Indecomposable::Band { f: self.f.clone(), s: self.s }
    }
}

/// One indecomposable class of the cycle-quiver ring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuiverClass {
    Str(StringDesc),
    Band(BandDesc),
}

impl QuiverClass {
    pub fn dim_vector(&self, shape: &QuiverShape) -> Vec<i64> {
        match self {
            QuiverClass::Str(s) => s.dim_vector(shape),
            QuiverClass::Band(b) => b.dim_vector(shape),
        }
    }
}

/// Integer combination of quiver classes over one shape and field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRingElement {
    shape: QuiverShape,
    field: Field,
    terms: BTreeMap<QuiverClass, i64>,
}

impl QuiverRingElement {
    pub fn zero(shape: &QuiverShape, k: &Field) -> Self {
        QuiverRingElement { shape: shape.clone(), field: k.clone(), terms: BTreeMap::new() }
    }

    /// The identity class B_{x-1}(1).
    pub fn one(shape: &QuiverShape, k: &Field) -> Self {
        let mut e = QuiverRingElement::zero(shape, k);
        let f = Polynomial::from_i64(k, &[-1, 1]);
        e.add_term(
            QuiverClass::Band(BandDesc::new(&f, 1, k).expect("x - 1 is a valid band")),
            1,
        );
        e
    }

    pub fn shape(&self) -> &QuiverShape {
        &self.shape
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<QuiverClass, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    pub fn add_term(&mut self, class: QuiverClass, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.get_mut(&class) {
            Some(slot) => {
                *slot += coeff;
                if *slot == 0 {
                    self.terms.remove(&class);
                }
            }
            None => {
                self.terms.insert(class, coeff);
            }
        }
    }

    pub fn add(&self, rhs: &QuiverRingElement) -> Result<QuiverRingElement, RingError> {
        if self.shape != rhs.shape || self.field != rhs.field {
            return Err(RingError::FieldMismatch);
        }
        let mut out = self.clone();
        for (class, &c) in &rhs.terms {
            out.add_term(class.clone(), c);
        }
        Ok(out)
    }

    /// Coefficient-weighted dimension vector.
    pub fn dim_vector(&self) -> Vec<i64> {
        let mut dims = vec![0i64; self.shape.vertices()];
        for (class, &c) in &self.terms {
            for (v, d) in class.dim_vector(&self.shape).into_iter().enumerate() {
                dims[v] += c * d;
            }
        }
        dims
    }
}

/// Product of two strings: the tensor basis pairs (s, t) with s ≡ t modulo
/// n+1 split into chains of constant difference s - t = d(n+1), and the
/// chain at offset d is the string covering positions
/// [max(i, i'+d(n+1)), min(j, j'+d(n+1))].
pub fn string_tensor(
    a: &StringDesc,
    b: &StringDesc,
    shape: &QuiverShape,
    k: &Field,
) -> QuiverRingElement {
    let m = shape.vertices() as i64;
    let (i, j) = (a.i as i64, a.i as i64 + a.len as i64);
    let (i2, j2) = (b.i as i64, b.i as i64 + b.len as i64);
    let lo = Integer::div_ceil(&(i - j2), &m);
    let hi = Integer::div_floor(&(j - i2), &m);
    let mut out = QuiverRingElement::zero(shape, k);
    for d in lo..=hi {
        let start = i.max(i2 + d * m);
        let end = j.min(j2 + d * m);
        debug_assert!(start <= end, "offset range guarantees a nonempty chain");
        out.add_term(
            QuiverClass::Str(StringDesc::new(start, (end - start) as u32, shape)),
            1,
        );
    }
    out
}

/// A band acts on a string through its dimension alone.
pub fn string_band_tensor(
    a: &StringDesc,
    b: &BandDesc,
    shape: &QuiverShape,
    k: &Field,
) -> QuiverRingElement {
    let mut out = QuiverRingElement::zero(shape, k);
    out.add_term(QuiverClass::Str(*a), b.dim());
    out
}

/// Band-by-band products coincide with the module-ring products of
/// k[x]/f^s ⊗ k[x]/g^t, relabeled.
pub fn band_band_tensor(
    a: &BandDesc,
    b: &BandDesc,
    shape: &QuiverShape,
    k: &Field,
) -> Result<QuiverRingElement, RingError> {
    let prod = tensor_indecomposable(&a.to_indecomposable(), &b.to_indecomposable(), k)?;
    let mut out = QuiverRingElement::zero(shape, k);
    for (ind, &c) in prod.terms() {
        match ind {
            Indecomposable::Band { f, s } => {
                out.add_term(QuiverClass::Band(BandDesc { f: f.clone(), s: *s }), c);
            }
            _ => {
                return Err(RingError::Internal(
                    "band product produced a non-band class".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// Bilinear product on the cycle-quiver ring.
pub fn qring_mul(
    a: &QuiverRingElement,
    b: &QuiverRingElement,
) -> Result<QuiverRingElement, RingError> {
    if a.shape != b.shape || a.field != b.field {
        return Err(RingError::FieldMismatch);
    }
    let (shape, k) = (&a.shape, &a.field);
    let mut out = QuiverRingElement::zero(shape, k);
    for (ca, &na) in &a.terms {
        for (cb, &nb) in &b.terms {
            let prod = match (ca, cb) {
                (QuiverClass::Str(x), QuiverClass::Str(y)) => string_tensor(x, y, shape, k),
                (QuiverClass::Str(x), QuiverClass::Band(y))
                | (QuiverClass::Band(y), QuiverClass::Str(x)) => {
                    string_band_tensor(x, y, shape, k)
                }
                (QuiverClass::Band(x), QuiverClass::Band(y)) => {
                    band_band_tensor(x, y, shape, k)?
                }
            };
            for (class, &c) in &prod.terms {
                out.add_term(class.clone(), c * na * nb);
            }
        }
    }
    Ok(out)
}

/// Explicit matrix realization of a quiver representation: one matrix per
/// arrow, arrows[v] mapping the space at vertex v to the space at vertex
/// (v+1) mod (n+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRep {
    pub shape: QuiverShape,
    pub field: Field,
    pub dims: Vec<usize>,
    pub arrows: Vec<ExactMatrix>,
}

impl QuiverRep {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Builds the defining matrices of one class.
pub fn realize(class: &QuiverClass, shape: &QuiverShape, k: &Field) -> QuiverRep {
    let m = shape.vertices();
    match class {
        QuiverClass::Str(s) => {
            // Row index of each position within its vertex space.
            let positions: Vec<u32> = (s.i..=s.i + s.len).collect();
            let mut index_in_vertex = BTreeMap::new();
            let mut dims = vec![0usize; m];
            for &p in &positions {
                let v = p as usize % m;
                index_in_vertex.insert(p, dims[v]);
                dims[v] += 1;
            }
            let mut arrows: Vec<ExactMatrix> = (0..m)
                .map(|v| ExactMatrix::zero(dims[(v + 1) % m], dims[v], k))
                .collect();
            for &p in &positions {
                if p == s.i + s.len {
                    continue;
                }
                let v = p as usize % m;
                arrows[v].set(index_in_vertex[&(p + 1)], index_in_vertex[&p], k.one());
            }
            QuiverRep { shape: shape.clone(), field: k.clone(), dims, arrows }
        }
        QuiverClass::Band(b) => {
            let d = b.dim() as usize;
            let x_action = companion(&b.f.pow(b.s, k), k);
            let arrows: Vec<ExactMatrix> = (0..m)
                .map(|v| if v == m - 1 { x_action.clone() } else { ExactMatrix::identity(d, k) })
                .collect();
            QuiverRep { shape: shape.clone(), field: k.clone(), dims: vec![d; m], arrows }
        }
    }
}

/// Vertex-wise tensor product of realizations.
pub fn tensor_rep(a: &QuiverRep, b: &QuiverRep) -> Result<QuiverRep, MatrixError> {
    assert_eq!(a.shape, b.shape, "mixed shapes");
    assert_eq!(a.field, b.field, "mixed fields");
    let dims = a.dims.iter().zip(&b.dims).map(|(x, y)| x * y).collect();
    let arrows = a
        .arrows
        .iter()
        .zip(&b.arrows)
        .map(|(x, y)| x.kronecker(y, &a.field))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QuiverRep { shape: a.shape.clone(), field: a.field.clone(), dims, arrows })
}

/// Vertex-wise direct sum of realizations.
pub fn direct_sum_rep(reps: &[QuiverRep]) -> QuiverRep {
    assert!(!reps.is_empty(), "direct sum needs at least one summand");
    let shape = reps[0].shape.clone();
    let k = reps[0].field.clone();
    let m = shape.vertices();
    let mut dims = vec![0usize; m];
    for r in reps {
        assert_eq!(r.shape, shape, "mixed shapes");
        for v in 0..m {
            dims[v] += r.dims[v];
        }
    }
    let arrows = (0..m)
        .map(|v| {
            let blocks: Vec<ExactMatrix> = reps.iter().map(|r| r.arrows[v].clone()).collect();
            ExactMatrix::block_diag(&blocks, &k)
        })
        .collect();
    QuiverRep { shape, field: k, dims, arrows }
}

/// Realizes an effective (nonnegative) element as the direct sum of its
/// terms with multiplicity.
pub fn realize_element(e: &QuiverRingElement) -> QuiverRep {
    let mut parts = Vec::new();
    for (class, &c) in e.terms() {
        assert!(c > 0, "realization needs an effective element");
        for _ in 0..c {
            parts.push(realize(class, &e.shape, &e.field));
        }
    }
    if parts.is_empty() {
        let m = e.shape.vertices();
        return QuiverRep {
            shape: e.shape.clone(),
            field: e.field.clone(),
            dims: vec![0; m],
            arrows: (0..m).map(|_| ExactMatrix::zero(0, 0, &e.field)).collect(),
        };
    }
    direct_sum_rep(&parts)
}
