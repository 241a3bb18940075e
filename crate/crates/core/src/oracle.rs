//! Brute-force ground truth for the formula modules: Jordan-type recovery
//! from rank sequences, invariant-factor comparison of explicit Kronecker
//! products against predicted block sums, and a generic Krull–Schmidt
//! splitter for quiver representations driven by the endomorphism algebra.
//!
//! Nothing here calls into the closed-form product code; the only shared
//! ground is exact field arithmetic, polynomials, and linear algebra.

use crate::field::{Field, FieldElement};
use crate::matrix::{companion, jordan_block, real_block, ExactMatrix, InvariantFactors,
    MatrixError, PolyMatrix};
use crate::matrix::FpMat;
use crate::poly::{factor, squarefree_decomposition, PolyError, Polynomial};
use crate::quiver::{QuiverRep, QuiverRingElement};
use crate::ring::{Indecomposable, RingElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::collections::VecDeque;
use std::fmt;
use std::time::{Duration, Instant};

/// Total-dimension ceiling for the generic splitter.
pub const DECOMPOSE_DIM_CAP: usize = 64;

/// Random draws attempted before a non-split is believed.
const SPLIT_DRAWS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// (M - λI)^dim is nonzero, so the matrix has no Jordan type at λ alone.
    NotUnipotent,
    /// The predicted decomposition does not even have the right dimension.
    DimensionMismatch { expected: i64, found: i64 },
    /// The splitter stalled on a piece it could neither split nor certify.
    Inconclusive { end_dim: usize, summands: usize },
    /// The splitter only runs over the rationals and prime fields.
    UnsupportedField,
    Matrix(MatrixError),
    Poly(PolyError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NotUnipotent => {
                write!(f, "matrix is not unipotent at the given eigenvalue")
            }
            OracleError::DimensionMismatch { expected, found } => {
                write!(f, "predicted dimension {found} does not match product dimension {expected}")
            }
            OracleError::Inconclusive { end_dim, summands } => write!(
                f,
                "splitting stalled: endomorphism algebra of dimension {end_dim} with only {summands} summands certified"
            ),
            OracleError::UnsupportedField => {
                write!(f, "generic decomposition supports the rationals and prime fields only")
            }
            OracleError::Matrix(e) => write!(f, "{e}"),
            OracleError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for OracleError {}

impl From<MatrixError> for OracleError {
    fn from(e: MatrixError) -> Self {
        OracleError::Matrix(e)
    }
}

impl From<PolyError> for OracleError {
    fn from(e: PolyError) -> Self {
        OracleError::Poly(e)
    }
}

/// Jordan block sizes for one eigenvalue, weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanType {
    partition: Vec<u32>,
}

impl JordanType {
    pub fn new(partition: Vec<u32>) -> Self {
        assert!(
            partition.windows(2).all(|w| w[0] >= w[1]) && partition.iter().all(|&p| p > 0),
            "a Jordan type is a weakly decreasing list of positive parts"
        );
        JordanType { partition }
    }

    pub fn parts(&self) -> &[u32] {
        &self.partition
    }

    pub fn dim(&self) -> u64 {
        self.partition.iter().map(|&p| p as u64).sum()
    }
}

/// Outcome of one product verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub matches: bool,
    pub lhs_fingerprint: InvariantFactors,
    pub rhs_fingerprint: InvariantFactors,
    pub elapsed: Duration,
}

/// Jordan block sizes of M at eigenvalue λ, recovered from the rank
/// sequence r_j = rank((M-λI)^j): the multiplicity of the part j is
/// r_{j-1} - 2 r_j + r_{j+1}.
pub fn jordan_type_unipotent(
    m: &ExactMatrix,
    lambda: &FieldElement,
    k: &Field,
) -> Result<JordanType, OracleError> {
    assert_eq!(m.rows(), m.cols(), "Jordan type needs a square matrix");
    let n = m.rows();
    let mut shifted = m.clone();
    for i in 0..n {
        let d = k.sub(shifted.at(i, i), lambda);
        shifted.set(i, i, d);
    }
    let ranks = match k {
        Field::Prime(pf) => nilpotent_rank_sequence_fp(&shifted, pf.p()),
        _ => nilpotent_rank_sequence_generic(&shifted, k),
    };
    let ranks = ranks.ok_or(OracleError::NotUnipotent)?;
    // ranks = [r_0, r_1, ..., r_L] with r_L = 0.
    let r = |j: usize| -> i64 {
        if j < ranks.len() {
            ranks[j] as i64
        } else {
            0
        }
    };
    let mut partition = Vec::new();
    for j in (1..ranks.len()).rev() {
        let mult = r(j - 1) - 2 * r(j) + r(j + 1);
        debug_assert!(mult >= 0, "rank sequences of nilpotent matrices are concave");
        for _ in 0..mult {
            partition.push(j as u32);
        }
    }
    Ok(JordanType::new(partition))
}

/// Rank sequence [r_0, ..., r_L] of the powers of a nilpotent matrix, ending
/// at the first zero; None if the ranks stabilize above zero (not nilpotent).
/// Works by growing kernels: ker N^{j+1} is the preimage of ker N^j, read off
/// as the x-part of the kernel of [N | B_j].
fn nilpotent_rank_sequence_fp(n_mat: &ExactMatrix, p: u64) -> Option<Vec<usize>> {
    let n = n_mat.rows();
    let m = FpMat::from_exact(n_mat, p);
    let mut ranks = vec![n];
    let mut kernel: Vec<Vec<u64>> = Vec::new();
    loop {
        let aug = if kernel.is_empty() {
            m.clone()
        } else {
            m.hstack(&FpMat::from_columns(&kernel, n, p))
        };
        let null = aug.kernel_basis();
        let xparts: Vec<Vec<u64>> = null.iter().map(|v| v[..n].to_vec()).collect();
        let next = fp_span_basis(&xparts, n, p);
        let rank = n - next.len();
        if rank == *ranks.last().unwrap() {
            return if rank == 0 { Some(ranks) } else { None };
        }
        ranks.push(rank);
        if rank == 0 {
            return Some(ranks);
        }
        kernel = next;
    }
}

/// Independent spanning subset of a list of F_p vectors (as echelon rows).
fn fp_span_basis(vecs: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let mut rows = FpMat::zero(vecs.len(), n, p);
    for (i, v) in vecs.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            rows.data[i * n + j] = x;
        }
    }
    rows.rref();
    let mut basis = Vec::new();
    for i in 0..vecs.len() {
        let row = rows.data[i * n..(i + 1) * n].to_vec();
        if row.iter().any(|&x| x != 0) {
            basis.push(row);
        }
    }
    basis
}

fn nilpotent_rank_sequence_generic(n_mat: &ExactMatrix, k: &Field) -> Option<Vec<usize>> {
    let n = n_mat.rows();
    let mut ranks = vec![n];
    let mut power = n_mat.clone();
    loop {
        let rank = power.rank(k);
        if rank == *ranks.last().unwrap() {
            return if rank == 0 { Some(ranks) } else { None };
        }
        ranks.push(rank);
        if rank == 0 {
            return Some(ranks);
        }
        power = power.mul(n_mat, k);
    }
}

/// The field the matrices actually live over: descriptor sets over the
/// real-closed model are realized over the rationals (rotation blocks are
/// rational 2x2 blocks), every other field realizes over itself.
pub fn realization_field(k: &Field) -> Field {
    match k {
        Field::RealClosed => Field::rationals(),
        other => other.clone(),
    }
}

/// One square matrix presenting the module of a descriptor: x acts by the
/// matrix. Nilpotents become zero-eigenvalue Jordan blocks, bands the
/// companion matrix of f^s, and the real-closed descriptors their rational
/// block forms.
pub fn realize_module(a: &Indecomposable, k: &Field) -> ExactMatrix {
    let rk = realization_field(k);
    match a {
        Indecomposable::Nil(s) => jordan_block(&rk, &rk.zero(), *s as usize),
        Indecomposable::Band { f, s } => companion(&f.pow(*s, &rk), &rk),
        Indecomposable::Jordan { lambda, s } => {
            jordan_block(&rk, &FieldElement::Rat(lambda.clone()), *s as usize)
        }
        Indecomposable::Rot { lambda, s } => {
            real_block(lambda, *s as usize).expect("rotation parameters are never real")
        }
    }
}

/// Compares the Kronecker product of the realizations of a and b against
/// the block-diagonal realization of the predicted decomposition, by
/// invariant factors of xI - M.
pub fn verify_module_product(
    a: &Indecomposable,
    b: &Indecomposable,
    predicted: &RingElement,
) -> Result<VerificationReport, OracleError> {
    let start = Instant::now();
    let k = predicted.field();
    let expected = a.dim() * b.dim();
    let found = predicted.dim();
    if expected != found {
        return Err(OracleError::DimensionMismatch { expected, found });
    }
    assert!(
        predicted.is_effective() || predicted.is_zero(),
        "predicted decompositions must have nonnegative coefficients"
    );
    let rk = realization_field(k);
    let lhs = realize_module(a, k).kronecker(&realize_module(b, k), &rk)?;
    let mut blocks = Vec::new();
    for (ind, &c) in predicted.terms() {
        let m = realize_module(ind, k);
        for _ in 0..c {
            blocks.push(m.clone());
        }
    }
    let rhs = ExactMatrix::block_diag(&blocks, &rk);
    let lhs_fingerprint = PolyMatrix::characteristic(&lhs, &rk).invariant_factors(&rk);
    let rhs_fingerprint = PolyMatrix::characteristic(&rhs, &rk).invariant_factors(&rk);
    Ok(VerificationReport {
        matches: lhs_fingerprint == rhs_fingerprint,
        lhs_fingerprint,
        rhs_fingerprint,
        elapsed: start.elapsed(),
    })
}

// ---------------------------------------------------------------------------
// Generic splitting of quiver representations.
// ---------------------------------------------------------------------------

/// Splits a representation into indecomposable summands by repeatedly
/// separating generalized eigenspaces of endomorphisms and splitting off
/// cyclic subrepresentations that admit equivariant projections. A piece is
/// accepted as indecomposable when its endomorphism algebra is one-
/// dimensional, or when repeated draws find only primary minimal polynomials
/// and the algebra is small enough for that evidence to be coherent.
pub fn generic_decompose(rep: &QuiverRep, seed: u64) -> Result<Vec<QuiverRep>, OracleError> {
    match rep.field {
        Field::Rationals | Field::Prime(_) => {}
        _ => return Err(OracleError::UnsupportedField),
    }
    assert!(
        rep.total_dim() <= DECOMPOSE_DIM_CAP,
        "generic decomposition is capped at total dimension {DECOMPOSE_DIM_CAP}"
    );
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    decompose_rec(rep.clone(), &mut rng, &mut out)?;
    Ok(out)
}

fn decompose_rec(
    rep: QuiverRep,
    rng: &mut ChaCha12Rng,
    out: &mut Vec<QuiverRep>,
) -> Result<(), OracleError> {
    if rep.total_dim() == 0 {
        return Ok(());
    }
    // Cyclic subrepresentations generated by standard basis vectors often
    // decompose the space outright (tensor products of chain modules split
    // into coordinate chains); this costs no linear solves.
    if let Some(pieces) = spin_cover(&rep) {
        for piece in pieces {
            decompose_rec(piece, rng, out)?;
        }
        return Ok(());
    }
    let end = endomorphism_basis(&rep);
    debug_assert!(!end.is_empty(), "the identity is always an endomorphism");
    if end.len() == 1 {
        out.push(rep);
        return Ok(());
    }
    // Generalized-eigenspace splits: basis elements first (deterministic),
    // then random combinations.
    let k = rep.field.clone();
    let mut candidates: Vec<Vec<ExactMatrix>> = end.clone();
    for _ in 0..SPLIT_DRAWS {
        candidates.push(random_endomorphism(&end, &k, rng));
    }
    for e in &candidates {
        let mu = endo_minimal_polynomial(e, &rep, &k);
        let parts = coprime_parts(&mu, &k)?;
        if parts.len() >= 2 {
            for piece in split_by_kernels(&rep, e, &parts) {
                decompose_rec(piece, rng, out)?;
            }
            return Ok(());
        }
    }
    // Projection splits: a cyclic subrepresentation is a summand exactly
    // when some endomorphism restricts to the identity on it with image
    // inside it; that is a small linear system in End coordinates.
    let mut vectors: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    for v in 0..rep.shape.vertices() {
        for i in 0..rep.dims[v] {
            let mut w = vec![k.zero(); rep.dims[v]];
            w[i] = k.one();
            vectors.push((v, w));
        }
    }
    for _ in 0..SPLIT_DRAWS {
        let v = rng.gen_range(0..rep.shape.vertices());
        if rep.dims[v] == 0 {
            continue;
        }
        let w: Vec<FieldElement> = (0..rep.dims[v]).map(|_| random_scalar(&k, rng)).collect();
        if w.iter().all(|c| *c == k.zero()) {
            continue;
        }
        vectors.push((v, w));
    }
    for (v, w) in &vectors {
        if let Some((inside, complement)) = spin_projection_split(&rep, &end, *v, w) {
            decompose_rec(inside, rng, out)?;
            decompose_rec(complement, rng, out)?;
            return Ok(());
        }
    }
    // No splitter fired and no examined endomorphism had a split minimal
    // polynomial. For the module classes realized here an indecomposable's
    // endomorphism algebra never outgrows the module itself, so a larger
    // algebra means the draws missed a real split.
    if end.len() <= rep.total_dim() {
        out.push(rep);
        Ok(())
    } else {
        Err(OracleError::Inconclusive { end_dim: end.len(), summands: out.len() })
    }
}

fn random_scalar(k: &Field, rng: &mut ChaCha12Rng) -> FieldElement {
    match k {
        Field::Prime(pf) => k.from_i64(rng.gen_range(0..pf.p()) as i64),
        _ => k.from_i64(rng.gen_range(-5..=5)),
    }
}

fn random_endomorphism(
    end: &[Vec<ExactMatrix>],
    k: &Field,
    rng: &mut ChaCha12Rng,
) -> Vec<ExactMatrix> {
    let mut combo: Vec<ExactMatrix> = end[0]
        .iter()
        .map(|m| ExactMatrix::zero(m.rows(), m.cols(), k))
        .collect();
    for basis in end {
        let c = random_scalar(k, rng);
        if c == k.zero() {
            continue;
        }
        for (acc, m) in combo.iter_mut().zip(basis) {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let v = k.add(acc.at(i, j), &k.mul(&c, m.at(i, j)));
                    acc.set(i, j, v);
                }
            }
        }
    }
    combo
}

/// Basis of the algebra of tuples (E_v) with E_{v+1} A_v = A_v E_v for every
/// arrow, from the kernel of the linear commutation system.
fn endomorphism_basis(rep: &QuiverRep) -> Vec<Vec<ExactMatrix>> {
    let k = &rep.field;
    let m = rep.shape.vertices();
    let mut offsets = vec![0usize; m + 1];
    for v in 0..m {
        offsets[v + 1] = offsets[v] + rep.dims[v] * rep.dims[v];
    }
    let vars = offsets[m];
    let mut rows: Vec<FieldElement> = Vec::new();
    let mut row_count = 0usize;
    for v in 0..m {
        let w = (v + 1) % m;
        let a = &rep.arrows[v];
        for i in 0..rep.dims[w] {
            for j in 0..rep.dims[v] {
                let mut row = vec![k.zero(); vars];
                for l in 0..rep.dims[w] {
                    let idx = offsets[w] + i * rep.dims[w] + l;
                    row[idx] = k.add(&row[idx], a.at(l, j));
                }
                for l in 0..rep.dims[v] {
                    let idx = offsets[v] + l * rep.dims[v] + j;
                    row[idx] = k.sub(&row[idx], a.at(i, l));
                }
                rows.extend(row);
                row_count += 1;
            }
        }
    }
    let system = ExactMatrix::new(row_count, vars, rows);
    let kernel = kernel_basis_smart(&system, k);
    kernel
        .into_iter()
        .map(|sol| {
            (0..m)
                .map(|v| {
                    let d = rep.dims[v];
                    ExactMatrix::new(d, d, sol[offsets[v]..offsets[v + 1]].to_vec())
                })
                .collect()
        })
        .collect()
}

/// Kernel basis with a raw residue fast path over prime fields.
fn kernel_basis_smart(m: &ExactMatrix, k: &Field) -> Vec<Vec<FieldElement>> {
    match k {
        Field::Prime(pf) => {
            let p = pf.p();
            FpMat::from_exact(m, p)
                .kernel_basis()
                .into_iter()
                .map(|v| v.into_iter().map(|x| k.from_i64(x as i64)).collect())
                .collect()
        }
        _ => m.kernel_basis(k),
    }
}

fn apply_endo(e: &[ExactMatrix], rep: &QuiverRep, vec: &[FieldElement]) -> Vec<FieldElement> {
    let k = &rep.field;
    let mut out = Vec::with_capacity(vec.len());
    let mut offset = 0;
    for (v, m) in e.iter().enumerate() {
        let d = rep.dims[v];
        out.extend(m.apply(&vec[offset..offset + d], k));
        offset += d;
    }
    out
}

/// Minimal polynomial of a commuting tuple acting on the total space, as the
/// least common multiple of the annihilators of residual Krylov vectors.
fn endo_minimal_polynomial(e: &[ExactMatrix], rep: &QuiverRep, k: &Field) -> Polynomial {
    let n = rep.total_dim();
    let mut mu = Polynomial::from_i64(k, &[1]);
    for b in 0..n {
        let mut v = vec![k.zero(); n];
        v[b] = k.one();
        // w = mu(E) v by Horner.
        let coeffs = mu.coeffs();
        let mut w = vec![k.zero(); n];
        for c in coeffs.iter().rev() {
            w = apply_endo(e, rep, &w);
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi = k.add(wi, &k.mul(c, vi));
            }
        }
        if w.iter().all(|c| *c == k.zero()) {
            continue;
        }
        let ann = krylov_annihilator(e, rep, &w, k);
        mu = mu.mul(&ann, k);
    }
    mu
}

/// Monic minimal annihilating polynomial of one vector under the action.
fn krylov_annihilator(
    e: &[ExactMatrix],
    rep: &QuiverRep,
    w: &[FieldElement],
    k: &Field,
) -> Polynomial {
    let n = rep.total_dim();
    let mut span = Echelon::new(n, k.clone());
    let mut iterates: Vec<Vec<FieldElement>> = Vec::new();
    let mut cur = w.to_vec();
    loop {
        if !span.insert(&cur) {
            // cur is a combination of the previous iterates.
            let j = iterates.len();
            let mut entries = Vec::with_capacity(n * j);
            for row in 0..n {
                for it in &iterates {
                    entries.push(it[row].clone());
                }
            }
            let mat = ExactMatrix::new(n, j, entries);
            let combo = mat
                .solve(&cur, k)
                .expect("a dependent Krylov iterate lies in the span of its predecessors");
            let mut coeffs = vec![k.zero(); j + 1];
            for (i, c) in combo.into_iter().enumerate() {
                coeffs[i] = k.neg(&c);
            }
            coeffs[j] = k.one();
            return Polynomial::from_coeffs(coeffs);
        }
        iterates.push(cur.clone());
        cur = apply_endo(e, rep, &cur);
    }
}

/// Pairwise-coprime factorization of a minimal polynomial: the full
/// irreducible factorization when available, otherwise the squarefree parts
/// (coprime by construction), which are all kernel splitting needs.
fn coprime_parts(mu: &Polynomial, k: &Field) -> Result<Vec<(Polynomial, u32)>, OracleError> {
    match factor(mu, k) {
        Ok(fac) => Ok(fac.factors),
        Err(PolyError::DegreeTooLarge { .. }) => {
            let (_, parts) = squarefree_decomposition(mu, k)?;
            Ok(parts)
        }
        Err(e) => Err(e.into()),
    }
}

/// V = ⊕ ker f(E)^mult over the coprime parts of the minimal polynomial;
/// each kernel is arrow-invariant because E commutes with the arrows.
fn split_by_kernels(
    rep: &QuiverRep,
    e: &[ExactMatrix],
    parts: &[(Polynomial, u32)],
) -> Vec<QuiverRep> {
    let k = &rep.field;
    let m = rep.shape.vertices();
    let mut pieces = Vec::new();
    let mut covered = 0usize;
    for (f, mult) in parts {
        let g = f.pow(*mult, k);
        let mut bases: Vec<Vec<Vec<FieldElement>>> = Vec::with_capacity(m);
        for v in 0..m {
            let gm = poly_of_matrix(&g, &e[v], k);
            bases.push(kernel_basis_smart(&gm, k));
        }
        let dim: usize = bases.iter().map(|b| b.len()).sum();
        debug_assert!(dim > 0, "every factor of the minimal polynomial has a kernel");
        covered += dim;
        pieces.push(restrict_to_columns(rep, &bases));
    }
    debug_assert_eq!(covered, rep.total_dim(), "coprime kernels decompose the space");
    pieces
}

fn poly_of_matrix(f: &Polynomial, m: &ExactMatrix, k: &Field) -> ExactMatrix {
    let d = m.rows();
    let mut acc = ExactMatrix::zero(d, d, k);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(m, k);
        for i in 0..d {
            let v = k.add(acc.at(i, i), c);
            acc.set(i, i, v);
        }
    }
    acc
}

/// Restricts the representation to an invariant per-vertex collection of
/// column spans.
fn restrict_to_columns(rep: &QuiverRep, bases: &[Vec<Vec<FieldElement>>]) -> QuiverRep {
    let k = &rep.field;
    let m = rep.shape.vertices();
    let mats: Vec<ExactMatrix> = (0..m)
        .map(|v| columns_matrix(&bases[v], rep.dims[v]))
        .collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let arrows = (0..m)
        .map(|v| {
            let w = (v + 1) % m;
            let mut entries = Vec::with_capacity(dims[w] * dims[v]);
            let mut cols = Vec::with_capacity(dims[v]);
            for b in &bases[v] {
                let img = rep.arrows[v].apply(b, k);
                let x = if dims[w] == 0 {
                    debug_assert!(img.iter().all(|c| *c == k.zero()));
                    Vec::new()
                } else {
                    mats[w]
                        .solve(&img, k)
                        .expect("restriction target spans an invariant subspace")
                };
                cols.push(x);
            }
            for i in 0..dims[w] {
                for col in &cols {
                    entries.push(col[i].clone());
                }
            }
            ExactMatrix::new(dims[w], dims[v], entries)
        })
        .collect();
    QuiverRep { shape: rep.shape.clone(), field: k.clone(), dims, arrows }
}

fn columns_matrix(cols: &[Vec<FieldElement>], rows: usize) -> ExactMatrix {
    let mut entries = Vec::with_capacity(rows * cols.len());
    for i in 0..rows {
        for c in cols {
            entries.push(c[i].clone());
        }
    }
    ExactMatrix::new(rows, cols.len(), entries)
}

/// Row-echelon span tracker.
struct Echelon {
    k: Field,
    width: usize,
    rows: Vec<Vec<FieldElement>>,
}

impl Echelon {
    fn new(width: usize, k: Field) -> Self {
        Echelon { k, width, rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let k = &self.k;
        let mut w = v.to_vec();
        for row in &self.rows {
            let lead = row.iter().position(|c| *c != k.zero()).unwrap();
            if w[lead] != k.zero() {
                let c = w[lead].clone();
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = k.sub(wi, &k.mul(&c, ri));
                }
            }
        }
        w
    }

    /// Adds the vector to the span; false if it was already in it.
    fn insert(&mut self, v: &[FieldElement]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let k = self.k.clone();
        let w = self.reduce(v);
        let lead = match w.iter().position(|c| *c != k.zero()) {
            Some(l) => l,
            None => return false,
        };
        let inv = k.inv(&w[lead]).expect("leading entries are nonzero");
        let norm: Vec<FieldElement> = w.iter().map(|c| k.mul(&inv, c)).collect();
        for row in &mut self.rows {
            if row[lead] != k.zero() {
                let c = row[lead].clone();
                for (ri, ni) in row.iter_mut().zip(&norm) {
                    *ri = k.sub(ri, &k.mul(&c, ni));
                }
            }
        }
        self.rows.push(norm);
        true
    }
}

/// Per-vertex spans of the subrepresentation generated by one vector.
fn spin(rep: &QuiverRep, v0: usize, w0: &[FieldElement]) -> Vec<Echelon> {
    let k = &rep.field;
    let m = rep.shape.vertices();
    let mut spans: Vec<Echelon> = (0..m).map(|v| Echelon::new(rep.dims[v], k.clone())).collect();
    let mut queue = VecDeque::new();
    queue.push_back((v0, w0.to_vec()));
    while let Some((v, w)) = queue.pop_front() {
        if spans[v].insert(&w) {
            let img = rep.arrows[v].apply(&w, k);
            queue.push_back(((v + 1) % m, img));
        }
    }
    spans
}

fn spans_to_bases(spans: &[Echelon]) -> Vec<Vec<Vec<FieldElement>>> {
    spans.iter().map(|s| s.rows.clone()).collect()
}

/// Tries to write the whole space as a direct sum of spins of standard basis
/// vectors (largest first). Returns the pieces only on a full cover by at
/// least two of them.
fn spin_cover(rep: &QuiverRep) -> Option<Vec<QuiverRep>> {
    let k = &rep.field;
    let m = rep.shape.vertices();
    let total = rep.total_dim();
    if total == 0 {
        return None;
    }
    let mut offsets = vec![0usize; m + 1];
    for v in 0..m {
        offsets[v + 1] = offsets[v] + rep.dims[v];
    }
    let mut candidates = Vec::new();
    for v in 0..m {
        for i in 0..rep.dims[v] {
            let mut w = vec![k.zero(); rep.dims[v]];
            w[i] = k.one();
            let spans = spin(rep, v, &w);
            let dim: usize = spans.iter().map(|s| s.dim()).sum();
            candidates.push((dim, spans));
        }
    }
    candidates.sort_by(|a, b| b.0.cmp(&a.0));
    let mut cumulative = Echelon::new(total, k.clone());
    let mut accepted: Vec<Vec<Echelon>> = Vec::new();
    for (dim, spans) in candidates {
        if cumulative.dim() + dim > total {
            continue;
        }
        // Tentatively insert all of this spin's vectors; commit only if they
        // are jointly independent from everything chosen so far.
        let mut trial_rows = cumulative.rows.clone();
        let mut trial = Echelon { k: k.clone(), width: total, rows: Vec::new() };
        std::mem::swap(&mut trial.rows, &mut trial_rows);
        let mut added = 0usize;
        for (v, span) in spans.iter().enumerate() {
            for row in &span.rows {
                let mut emb = vec![k.zero(); total];
                emb[offsets[v]..offsets[v] + rep.dims[v]].clone_from_slice(row);
                if trial.insert(&emb) {
                    added += 1;
                }
            }
        }
        if added == dim {
            cumulative = trial;
            accepted.push(spans);
            if cumulative.dim() == total {
                break;
            }
        }
    }
    if cumulative.dim() == total && accepted.len() >= 2 {
        Some(
            accepted
                .iter()
                .map(|spans| restrict_to_columns(rep, &spans_to_bases(spans)))
                .collect(),
        )
    } else {
        None
    }
}

/// Looks for an endomorphism that is the identity on the spin of w with
/// image inside it: any solution is an equivariant projection, so the spin
/// is a summand and the kernel is its complement.
fn spin_projection_split(
    rep: &QuiverRep,
    end: &[Vec<ExactMatrix>],
    v0: usize,
    w0: &[FieldElement],
) -> Option<(QuiverRep, QuiverRep)> {
    let k = &rep.field;
    let m = rep.shape.vertices();
    let total = rep.total_dim();
    let spans = spin(rep, v0, w0);
    let wdim: usize = spans.iter().map(|s| s.dim()).sum();
    if wdim == 0 || wdim == total {
        return None;
    }
    let bases = spans_to_bases(&spans);
    let r = end.len();
    // Unknowns: coefficients x_1..x_r with π = Σ x_t E_t. Conditions: π
    // fixes each span vector, and each annihilator of the span kills every
    // column of π.
    let mut rows: Vec<FieldElement> = Vec::new();
    let mut rhs: Vec<FieldElement> = Vec::new();
    for v in 0..m {
        let d = rep.dims[v];
        for b in &bases[v] {
            let images: Vec<Vec<FieldElement>> =
                end.iter().map(|e| e[v].apply(b, k)).collect();
            for i in 0..d {
                for img in &images {
                    rows.push(img[i].clone());
                }
                rhs.push(b[i].clone());
            }
        }
        // Left annihilators of the span at v: kernel of the transpose of
        // the basis matrix.
        let bt = {
            let mut entries = Vec::with_capacity(bases[v].len() * d);
            for b in &bases[v] {
                entries.extend(b.iter().cloned());
            }
            ExactMatrix::new(bases[v].len(), d, entries)
        };
        for a in bt.kernel_basis(k) {
            // a is a column vector with Σ_i a_i B[i,col] = 0 for each basis
            // column, i.e. a row annihilating the span.
            for c in 0..d {
                for e in end {
                    let mut acc = k.zero();
                    for i in 0..d {
                        acc = k.add(&acc, &k.mul(&a[i], e[v].at(i, c)));
                    }
                    rows.push(acc);
                }
                rhs.push(k.zero());
            }
        }
    }
    let nrows = rhs.len();
    let system = ExactMatrix::new(nrows, r, rows);
    let x = system.solve(&rhs, k)?;
    // Assemble π and split off its kernel.
    let mut kernel_bases: Vec<Vec<Vec<FieldElement>>> = Vec::with_capacity(m);
    for v in 0..m {
        let d = rep.dims[v];
        let mut pv = ExactMatrix::zero(d, d, k);
        for (t, c) in x.iter().enumerate() {
            if *c == k.zero() {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    let val = k.add(pv.at(i, j), &k.mul(c, end[t][v].at(i, j)));
                    pv.set(i, j, val);
                }
            }
        }
        kernel_bases.push(pv.kernel_basis(k));
    }
    let kdim: usize = kernel_bases.iter().map(|b| b.len()).sum();
    debug_assert_eq!(wdim + kdim, total, "a projection splits the space");
    let inside = restrict_to_columns(rep, &spans_to_bases(&spans));
    let complement = restrict_to_columns(rep, &kernel_bases);
    Some((inside, complement))
}

// ---------------------------------------------------------------------------
// Isomorphism-invariant fingerprints for decomposition comparisons.
// ---------------------------------------------------------------------------

/// Invariants that separate the classes realized in this crate: dimension
/// vector, ranks of all arrow compositions up to total dimension + 1 steps,
/// and the invariant factors of the full cycle map at vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RepFingerprint {
    pub dims: Vec<usize>,
    pub path_ranks: Vec<Vec<usize>>,
    pub cycle_factors: Vec<Polynomial>,
}

pub fn rep_fingerprint(rep: &QuiverRep) -> RepFingerprint {
    let k = &rep.field;
    let m = rep.shape.vertices();
    let depth = rep.total_dim() + 1;
    let mut path_ranks = Vec::with_capacity(m);
    for v in 0..m {
        let mut ranks = Vec::with_capacity(depth);
        let mut acc = rep.arrows[v].clone();
        let mut w = (v + 1) % m;
        for _ in 0..depth {
            ranks.push(acc.rank(k));
            acc = rep.arrows[w].mul(&acc, k);
            w = (w + 1) % m;
        }
        path_ranks.push(ranks);
    }
    let mut cycle = ExactMatrix::identity(rep.dims[0], k);
    for v in 0..m {
        cycle = rep.arrows[v].mul(&cycle, k);
    }
    let cycle_factors = PolyMatrix::characteristic(&cycle, k).invariant_factors(k).factors;
    RepFingerprint { dims: rep.dims.clone(), path_ranks, cycle_factors }
}

/// True when the summands returned by the splitter realize exactly the
/// predicted combination, compared by sorted fingerprints.
pub fn match_decomposition(predicted: &QuiverRingElement, summands: &[QuiverRep]) -> bool {
    assert!(
        predicted.is_effective() || predicted.is_zero(),
        "only effective elements can be realized"
    );
    let mut want = Vec::new();
    for (class, &c) in predicted.terms() {
        let rep = crate::quiver::realize(class, predicted.shape(), predicted.field());
        let fp = rep_fingerprint(&rep);
        for _ in 0..c {
            want.push(fp.clone());
        }
    }
    let mut got: Vec<RepFingerprint> = summands.iter().map(rep_fingerprint).collect();
    want.sort();
    got.sort();
    want == got
}
