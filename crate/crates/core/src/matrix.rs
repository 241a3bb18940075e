//! Exact dense matrices: canonical blocks, Kronecker products, kernels, and
//! the Smith normal form of xI - M over k[x].
//!
//! The invariant-factor chain of xI - M is a complete similarity invariant,
//! so "these two module constructions are isomorphic" is always decided here
//! by comparing two [`InvariantFactors`] values — never by computing Jordan
//! forms over extension fields.

use crate::field::{Field, FieldElement, GaussianRational};
use crate::poly::Polynomial;
use std::fmt;

/// Hard ceiling on rows and columns; Kronecker growth past this is an error
/// rather than an out-of-memory incident.
pub const DIMENSION_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// A rotation block was requested for a purely real parameter.
    RealParameter,
    /// A constructed matrix would exceed [`DIMENSION_CAP`].
    TooLarge { rows: usize, cols: usize, cap: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::RealParameter => {
                write!(f, "rotation block requires a parameter with nonzero imaginary part")
            }
            MatrixError::TooLarge { rows, cols, cap } => {
                write!(f, "matrix of size {rows}x{cols} exceeds the dimension cap {cap}")
            }
        }
    }
}

impl std::error::Error for MatrixError {}

/// Dense row-major matrix of exact field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<FieldElement>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        ExactMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize, k: &Field) -> Self {
        ExactMatrix::new(rows, cols, vec![k.zero(); rows * cols])
    }

    pub fn identity(n: usize, k: &Field) -> Self {
        let mut m = ExactMatrix::zero(n, n, k);
        for i in 0..n {
            m.set(i, i, k.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn add(&self, rhs: &ExactMatrix, k: &Field) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| k.add(a, b))
            .collect();
        ExactMatrix::new(self.rows, self.cols, entries)
    }

    pub fn sub(&self, rhs: &ExactMatrix, k: &Field) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| k.sub(a, b))
            .collect();
        ExactMatrix::new(self.rows, self.cols, entries)
    }

    pub fn mul(&self, rhs: &ExactMatrix, k: &Field) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = ExactMatrix::zero(self.rows, rhs.cols, k);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.at(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = k.add(out.at(i, j), &k.mul(a, rhs.at(l, j)));
                    out.set(i, j, t);
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[FieldElement], k: &Field) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = k.zero();
                for j in 0..self.cols {
                    acc = k.add(&acc, &k.mul(self.at(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn block_diag(blocks: &[ExactMatrix], k: &Field) -> ExactMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = ExactMatrix::zero(rows, cols, k);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.at(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn kronecker(&self, rhs: &ExactMatrix, k: &Field) -> Result<ExactMatrix, MatrixError> {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        if rows > DIMENSION_CAP || cols > DIMENSION_CAP {
            return Err(MatrixError::TooLarge { rows, cols, cap: DIMENSION_CAP });
        }
        let mut out = ExactMatrix::zero(rows, cols, k);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for bi in 0..rhs.rows {
                    for bj in 0..rhs.cols {
                        let v = k.mul(a, rhs.at(bi, bj));
                        out.set(i * rhs.rows + bi, j * rhs.cols + bj, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self, k: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.entries.swap(r * self.cols + j, pr * self.cols + j);
            }
            let inv = k.inv(self.at(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let t = k.mul(self.at(r, j), &inv);
                self.set(r, j, t);
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let factor = self.at(i, c).clone();
                for j in c..self.cols {
                    let t = k.sub(self.at(i, j), &k.mul(&factor, self.at(r, j)));
                    self.set(i, j, t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, k: &Field) -> usize {
        if let Field::Prime(pf) = k {
            let mut m = FpMat::from_exact(self, pf.p());
            return m.rref().len();
        }
        let mut m = self.clone();
        m.rref(k).len()
    }

    /// Basis of the right kernel {v : Av = 0}.
    pub fn kernel_basis(&self, k: &Field) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.rref(k);
        kernel_from_rref(&m, &pivots, k)
    }

    /// One solution of Ax = b, if any (free coordinates set to zero).
    pub fn solve(&self, b: &[FieldElement], k: &Field) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = ExactMatrix::zero(self.rows, self.cols + 1, k);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref(k);
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![k.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Invariant factors d_1 | d_2 | ... of xI - A: the complete similarity
    /// invariant of A over k.
    pub fn invariant_factors(&self, k: &Field) -> InvariantFactors {
        assert_eq!(self.rows, self.cols, "invariant factors need a square matrix");
        PolyMatrix::characteristic(self, k).invariant_factors(k)
    }
}

fn kernel_from_rref(m: &ExactMatrix, pivots: &[usize], k: &Field) -> Vec<Vec<FieldElement>> {
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![k.zero(); m.cols];
        v[free] = k.one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = k.neg(m.at(r, free));
        }
        basis.push(v);
    }
    basis
}

/// Jordan block: λ on the diagonal, 1 on the superdiagonal.
pub fn jordan_block(k: &Field, lambda: &FieldElement, l: usize) -> ExactMatrix {
    assert!(l >= 1, "Jordan block size must be positive");
    let mut m = ExactMatrix::zero(l, l, k);
    for i in 0..l {
        m.set(i, i, lambda.clone());
        if i + 1 < l {
            m.set(i, i + 1, k.one());
        }
    }
    m
}

/// 2l x 2l rotation block over the rationals: copies of
/// R = [[a, -b], [b, a]] on the diagonal, 2x2 identities on the
/// superdiagonal. The parameter must have b != 0.
pub fn real_block(lambda: &GaussianRational, l: usize) -> Result<ExactMatrix, MatrixError> {
    assert!(l >= 1, "rotation block size must be positive");
    if lambda.is_real() {
        return Err(MatrixError::RealParameter);
    }
    let k = Field::rationals();
    let a = FieldElement::Rat(lambda.re.clone());
    let b = FieldElement::Rat(lambda.im.clone());
    let mut m = ExactMatrix::zero(2 * l, 2 * l, &k);
    for t in 0..l {
        m.set(2 * t, 2 * t, a.clone());
        m.set(2 * t, 2 * t + 1, k.neg(&b));
        m.set(2 * t + 1, 2 * t, b.clone());
        m.set(2 * t + 1, 2 * t + 1, a.clone());
        if t + 1 < l {
            m.set(2 * t, 2 * t + 2, k.one());
            m.set(2 * t + 1, 2 * t + 3, k.one());
        }
    }
    Ok(m)
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal, negated
/// coefficients in the last column. Its sole invariant factor is f.
pub fn companion(f: &Polynomial, k: &Field) -> ExactMatrix {
    assert!(f.is_monic(), "companion matrix needs a monic polynomial");
    let d = f.degree().expect("companion matrix needs degree >= 1");
    assert!(d >= 1, "companion matrix needs degree >= 1");
    let mut m = ExactMatrix::zero(d, d, k);
    for j in 0..d - 1 {
        m.set(j + 1, j, k.one());
    }
    for i in 0..d {
        m.set(i, d - 1, k.neg(&f.coeff(i, k)));
    }
    m
}

/// Dense matrix of polynomials over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        PolyMatrix { rows, cols, entries }
    }

    /// The characteristic matrix xI - A.
    pub fn characteristic(a: &ExactMatrix, k: &Field) -> PolyMatrix {
        assert_eq!(a.rows(), a.cols());
        let n = a.rows();
        let entries = (0..n * n)
            .map(|t| {
                let (i, j) = (t / n, t % n);
                let c = k.neg(a.at(i, j));
                if i == j {
                    Polynomial::from_coeffs(vec![c, k.one()])
                } else {
                    Polynomial::constant(c)
                }
            })
            .collect();
        PolyMatrix::new(n, n, entries)
    }

    fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src], from column `from` on.
    fn row_axpy(&mut self, dst: usize, src: usize, q: &Polynomial, from: usize, k: &Field) {
        for j in from..self.cols {
            let t = self.at(dst, j).sub(&q.mul(self.at(src, j), k), k);
            self.entries[dst * self.cols + j] = t;
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, q: &Polynomial, from: usize, k: &Field) {
        for i in from..self.rows {
            let t = self.at(i, dst).sub(&q.mul(self.at(i, src), k), k);
            self.entries[i * self.cols + dst] = t;
        }
    }

    /// Smith normal form by minimum-degree pivoting; returns the nonconstant
    /// diagonal entries, monic, in divisor-chain order.
    pub fn invariant_factors(&self, k: &Field) -> InvariantFactors {
        let mut m = self.clone();
        let bound = m.rows.min(m.cols);
        let mut t = 0;
        while t < bound {
            // Minimum-degree nonzero pivot in the trailing submatrix.
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    if let Some(d) = m.at(i, j).degree() {
                        if best.map_or(true, |(bd, _, _)| d < bd) {
                            best = Some((d, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            m.swap_rows(t, pi);
            m.swap_cols(t, pj);
            'reduce: loop {
                for i in t + 1..m.rows {
                    if m.at(i, t).is_zero() {
                        continue;
                    }
                    let (q, r) = m.at(i, t).divrem(m.at(t, t), k).unwrap();
                    m.row_axpy(i, t, &q, t, k);
                    if !r.is_zero() {
                        // Strictly smaller degree surfaced; make it the pivot.
                        m.swap_rows(t, i);
                        continue 'reduce;
                    }
                }
                for j in t + 1..m.cols {
                    if m.at(t, j).is_zero() {
                        continue;
                    }
                    let (q, r) = m.at(t, j).divrem(m.at(t, t), k).unwrap();
                    m.col_axpy(j, t, &q, t, k);
                    if !r.is_zero() {
                        m.swap_cols(t, j);
                        continue 'reduce;
                    }
                }
                // Pivot row/column are clear; force the divisibility chain.
                for i in t + 1..m.rows {
                    for j in t + 1..m.cols {
                        if !m.at(i, j).rem(m.at(t, t), k).unwrap().is_zero() {
                            let row: Vec<Polynomial> = (t..m.cols)
                                .map(|j2| m.at(t, j2).add(m.at(i, j2), k))
                                .collect();
                            for (off, v) in row.into_iter().enumerate() {
                                m.entries[t * m.cols + t + off] = v;
                            }
                            continue 'reduce;
                        }
                    }
                }
                break;
            }
            let monic = m.at(t, t).monic(k);
            m.entries[t * m.cols + t] = monic;
            t += 1;
        }
        let factors: Vec<Polynomial> = (0..t)
            .map(|i| m.at(i, i).clone())
            .filter(|d| d.degree().map_or(false, |deg| deg >= 1))
            .collect();
        for w in factors.windows(2) {
            debug_assert!(
                w[1].rem(&w[0], k).unwrap().is_zero(),
                "invariant factor chain must be a divisor chain"
            );
        }
        InvariantFactors { factors }
    }
}

/// Monic nonconstant divisor chain d_1 | d_2 | ... | d_r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactors {
    pub factors: Vec<Polynomial>,
}

impl InvariantFactors {
    /// Total degree: the dimension of the module the chain describes.
    pub fn dimension(&self) -> usize {
        self.factors.iter().map(|f| f.degree().unwrap_or(0)).sum()
    }
}

/// Raw matrix over F_p for the throughput-critical oracle paths: plain u64
/// residues, no enum dispatch.
#[derive(Debug, Clone)]
pub(crate) struct FpMat {
    pub(crate) p: u64,
    pub(crate) rows: usize,
    pub(crate) cols: usize,
    pub(crate) data: Vec<u64>,
}

impl FpMat {
    pub(crate) fn from_exact(a: &ExactMatrix, p: u64) -> FpMat {
        let data = a
            .entries()
            .iter()
            .map(|e| match e {
                FieldElement::Mod(v) => *v,
                _ => panic!("prime-field fast path on a non-prime-field matrix"),
            })
            .collect();
        FpMat { p, rows: a.rows(), cols: a.cols(), data }
    }

    pub(crate) fn zero(rows: usize, cols: usize, p: u64) -> FpMat {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub(crate) fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    /// [self | rhs] side by side.
    pub(crate) fn hstack(&self, rhs: &FpMat) -> FpMat {
        assert_eq!(self.rows, rhs.rows);
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&rhs.data[i * rhs.cols..(i + 1) * rhs.cols]);
        }
        FpMat { p: self.p, rows: self.rows, cols, data }
    }

    pub(crate) fn from_columns(cols: &[Vec<u64>], rows: usize, p: u64) -> FpMat {
        let mut m = FpMat::zero(rows, cols.len(), p);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                m.data[i * cols.len() + j] = col[i];
            }
        }
        m
    }

    #[cfg(test)]
    pub(crate) fn mul(&self, rhs: &FpMat) -> FpMat {
        assert_eq!(self.cols, rhs.rows);
        let p = self.p;
        let mut out = FpMat::zero(self.rows, rhs.cols, p);
        // Lazy accumulation: safe while cols * (p-1)^2 fits in u64, which
        // holds for every prime the oracles use; fall back otherwise.
        let lazy = (p as u128 - 1).pow(2) * self.cols.max(1) as u128 <= u64::MAX as u128;
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.at(i, l);
                if a == 0 {
                    continue;
                }
                let row_out = i * rhs.cols;
                let row_rhs = l * rhs.cols;
                if lazy {
                    for j in 0..rhs.cols {
                        out.data[row_out + j] += a * rhs.data[row_rhs + j];
                    }
                } else {
                    for j in 0..rhs.cols {
                        let t = (a as u128 * rhs.data[row_rhs + j] as u128
                            + out.data[row_out + j] as u128)
                            % p as u128;
                        out.data[row_out + j] = t as u64;
                    }
                }
            }
            if lazy {
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] %= p;
                }
            }
        }
        out
    }

    /// Full reduced row echelon form in place; returns pivot columns.
    pub(crate) fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.at(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = crate::field::fp::inv_u64(self.at(r, c), p);
            for j in c..self.cols {
                let t = self.data[r * self.cols + j];
                self.data[r * self.cols + j] = crate::field::fp::mul_u64(t, inv, p);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.at(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let s = crate::field::fp::mul_u64(f, self.data[r * self.cols + j], p);
                    let t = crate::field::fp::sub_u64(self.data[i * self.cols + j], s, p);
                    self.data[i * self.cols + j] = t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub(crate) fn kernel_basis(mut self) -> Vec<Vec<u64>> {
        let pivots = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                let e = self.at(r, free);
                v[c] = if e == 0 { 0 } else { p - e };
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_matrix(k: &Field, rows: usize, cols: usize, rng: &mut ChaCha12Rng) -> ExactMatrix {
        let entries = (0..rows * cols)
            .map(|_| k.from_i64(rng.gen_range(-4..=4)))
            .collect();
        ExactMatrix::new(rows, cols, entries)
    }

    #[test]
    fn canonical_blocks_have_their_documented_shapes() {
        let k = Field::rationals();
        let j = jordan_block(&k, &k.from_i64(5), 1);
        assert_eq!(j.entries(), &[k.from_i64(5)]);
        let j = jordan_block(&k, &k.zero(), 2);
        assert_eq!(
            j.entries(),
            &[k.zero(), k.one(), k.zero(), k.zero()]
        );
        let j = jordan_block(&k, &k.one(), 3);
        for i in 0..3 {
            assert!(j.at(i, i).is_one());
            if i + 1 < 3 {
                assert!(j.at(i, i + 1).is_one());
            }
        }
        assert!(j.at(1, 0).is_zero() && j.at(2, 0).is_zero() && j.at(2, 1).is_zero());

        let c = companion(&Polynomial::from_i64(&k, &[-3, 1]), &k);
        assert_eq!(c.entries(), &[k.from_i64(3)]);
        let c = companion(&Polynomial::from_i64(&k, &[1, -1, 1]), &k);
        assert_eq!(
            c.entries(),
            &[k.zero(), k.from_i64(-1), k.one(), k.one()]
        );
        let c = companion(&Polynomial::from_i64(&k, &[0, 0, 1]), &k);
        assert_eq!(c.entries(), &[k.zero(), k.zero(), k.one(), k.zero()]);
    }

    #[test]
    fn rotation_blocks_and_the_real_parameter_error() {
        let i_unit = GaussianRational::from_integers(0, 1);
        let m = real_block(&i_unit, 1).unwrap();
        let k = Field::rationals();
        assert_eq!(
            m.entries(),
            &[k.zero(), k.from_i64(-1), k.one(), k.zero()]
        );
        let m = real_block(&GaussianRational::from_integers(1, 1), 1).unwrap();
        assert_eq!(
            m.entries(),
            &[k.one(), k.from_i64(-1), k.one(), k.one()]
        );
        let m = real_block(&i_unit, 2).unwrap();
        assert_eq!(m.rows(), 4);
        // Rotation copies on the diagonal, identity coupling above.
        assert_eq!(m.at(0, 1), &k.from_i64(-1));
        assert_eq!(m.at(2, 3), &k.from_i64(-1));
        assert!(m.at(0, 2).is_one() && m.at(1, 3).is_one());
        assert!(m.at(0, 3).is_zero() && m.at(1, 2).is_zero());
        assert_eq!(
            real_block(&GaussianRational::from_integers(2, 0), 1),
            Err(MatrixError::RealParameter)
        );
    }

    #[test]
    fn kronecker_matches_block_structure() {
        let k = Field::rationals();
        let a = ExactMatrix::new(1, 1, vec![k.from_i64(2)]);
        let b = ExactMatrix::new(1, 1, vec![k.from_i64(3)]);
        assert_eq!(a.kronecker(&b, &k).unwrap().entries(), &[k.from_i64(6)]);

        let j = jordan_block(&k, &k.zero(), 2);
        let jj = j.kronecker(&j, &k).unwrap();
        assert_eq!(jj.rows(), 4);
        // (J ox J)^2 = J^2 ox J^2 = 0 for 2x2 nilpotent J.
        assert_eq!(jj.mul(&jj, &k), ExactMatrix::zero(4, 4, &k));

        let mut rng = ChaCha12Rng::seed_from_u64(9);
        let b = random_matrix(&k, 2, 2, &mut rng);
        let i2 = ExactMatrix::identity(2, &k);
        let got = i2.kronecker(&b, &k).unwrap();
        let expect = ExactMatrix::block_diag(&[b.clone(), b], &k);
        assert_eq!(got, expect);

        let wide = ExactMatrix::zero(70, 70, &k);
        assert_eq!(
            wide.kronecker(&wide, &k),
            Err(MatrixError::TooLarge { rows: 4900, cols: 4900, cap: DIMENSION_CAP })
        );
    }

    #[test]
    fn rank_on_canonical_cases() {
        let k = Field::rationals();
        assert_eq!(ExactMatrix::zero(3, 3, &k).rank(&k), 0);
        assert_eq!(ExactMatrix::identity(3, &k).rank(&k), 3);
        assert_eq!(jordan_block(&k, &k.zero(), 3).rank(&k), 2);
        let k5 = Field::prime(5).unwrap();
        assert_eq!(jordan_block(&k5, &k5.zero(), 3).rank(&k5), 2);
        assert_eq!(ExactMatrix::identity(4, &k5).rank(&k5), 4);
    }

    #[test]
    fn rank_nullity_against_kernel_basis() {
        let mut rng = ChaCha12Rng::seed_from_u64(10);
        for k in [Field::rationals(), Field::prime(7).unwrap()] {
            for _ in 0..25 {
                let rows = rng.gen_range(1..=5);
                let cols = rng.gen_range(1..=5);
                let a = random_matrix(&k, rows, cols, &mut rng);
                let rank = a.rank(&k);
                let kernel = a.kernel_basis(&k);
                assert_eq!(rank + kernel.len(), cols);
                for v in &kernel {
                    assert!(a.apply(v, &k).iter().all(|e| e.is_zero()));
                }
            }
        }
    }

    #[test]
    fn solve_returns_consistent_solutions_only() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let k = Field::prime(5).unwrap();
        for _ in 0..40 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let a = random_matrix(&k, rows, cols, &mut rng);
            let x0: Vec<FieldElement> =
                (0..cols).map(|_| k.from_i64(rng.gen_range(-4..=4))).collect();
            let b = a.apply(&x0, &k);
            let x = a.solve(&b, &k).expect("constructed system is consistent");
            assert_eq!(a.apply(&x, &k), b);
            // A vector outside the column span must be rejected.
            let b2: Vec<FieldElement> =
                (0..rows).map(|_| k.from_i64(rng.gen_range(-4..=4))).collect();
            let aug_rank_differs = {
                let mut aug = ExactMatrix::zero(rows, cols + 1, &k);
                for i in 0..rows {
                    for j in 0..cols {
                        aug.set(i, j, a.at(i, j).clone());
                    }
                    aug.set(i, cols, b2[i].clone());
                }
                aug.rank(&k) != a.rank(&k)
            };
            match a.solve(&b2, &k) {
                Some(x2) => {
                    assert!(!aug_rank_differs);
                    assert_eq!(a.apply(&x2, &k), b2);
                }
                None => assert!(aug_rank_differs),
            }
        }
    }

    #[test]
    fn invariant_factors_of_jordan_sums_and_products() {
        let k = Field::rationals();
        let xm1 = Polynomial::from_i64(&k, &[-1, 1]);
        let j2 = jordan_block(&k, &k.one(), 2);
        assert_eq!(
            j2.invariant_factors(&k).factors,
            vec![xm1.pow(2, &k)]
        );
        let sum = ExactMatrix::block_diag(
            &[jordan_block(&k, &k.one(), 1), jordan_block(&k, &k.one(), 1)],
            &k,
        );
        assert_eq!(
            sum.invariant_factors(&k).factors,
            vec![xm1.clone(), xm1.clone()]
        );
        let j3 = jordan_block(&k, &k.one(), 3);
        let prod = j2.kronecker(&j3, &k).unwrap();
        assert_eq!(
            prod.invariant_factors(&k).factors,
            vec![xm1.pow(2, &k), xm1.pow(4, &k)]
        );
    }

    #[test]
    fn companion_round_trip_and_similarity_invariance() {
        let mut rng = ChaCha12Rng::seed_from_u64(12);
        for k in [Field::rationals(), Field::prime(5).unwrap()] {
            for _ in 0..10 {
                let f = crate::poly::random_poly(&k, 8, &mut rng).monic(&k);
                if f.degree().map_or(true, |d| d == 0) {
                    continue;
                }
                let c = companion(&f, &k);
                assert_eq!(c.invariant_factors(&k).factors, vec![f]);
            }
        }
        // Conjugation by invertible T preserves the chain.
        let k7 = Field::prime(7).unwrap();
        for _ in 0..10 {
            let n = rng.gen_range(2..=4);
            let a = random_matrix(&k7, n, n, &mut rng);
            let t = loop {
                let t = random_matrix(&k7, n, n, &mut rng);
                if t.rank(&k7) == n {
                    break t;
                }
            };
            let t_inv = invert(&t, &k7);
            let conj = t.mul(&a, &k7).mul(&t_inv, &k7);
            assert_eq!(
                a.invariant_factors(&k7).factors,
                conj.invariant_factors(&k7).factors
            );
        }
    }

    /// Inverse via solving T X = I column by column (test helper).
    fn invert(t: &ExactMatrix, k: &Field) -> ExactMatrix {
        let n = t.rows();
        let mut cols: Vec<Vec<FieldElement>> = Vec::new();
        for j in 0..n {
            let mut e = vec![k.zero(); n];
            e[j] = k.one();
            cols.push(t.solve(&e, k).expect("matrix is invertible"));
        }
        let mut out = ExactMatrix::zero(n, n, k);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                out.set(i, j, col[i].clone());
            }
        }
        out
    }

    /// Determinant of xI - A by fraction-free elimination over k[x]
    /// (independent of the Smith normal form code path).
    fn char_poly_bareiss(a: &ExactMatrix, k: &Field) -> Polynomial {
        let n = a.rows();
        let mut m: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = k.neg(a.at(i, j));
                        if i == j {
                            Polynomial::from_coeffs(vec![c, k.one()])
                        } else {
                            Polynomial::constant(c)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut prev = Polynomial::one(k);
        for col in 0..n - 1 {
            assert!(!m[col][col].is_zero(), "xI - A always has a usable pivot");
            let pivot = m[col][col].clone();
            for i in col + 1..n {
                for j in col + 1..n {
                    let t = m[i][j].mul(&pivot, k).sub(&m[i][col].mul(&m[col][j], k), k);
                    m[i][j] = if t.is_zero() {
                        Polynomial::zero()
                    } else {
                        t.div_exact(&prev, k)
                    };
                }
                m[i][col] = Polynomial::zero();
            }
            prev = pivot;
        }
        m[n - 1][n - 1].clone()
    }

    #[test]
    fn invariant_factor_product_is_the_characteristic_polynomial() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for k in [Field::rationals(), Field::prime(7).unwrap()] {
            for _ in 0..12 {
                let n = rng.gen_range(1..=5);
                let a = random_matrix(&k, n, n, &mut rng);
                let chain = a.invariant_factors(&k);
                assert_eq!(chain.dimension(), n);
                let prod = chain
                    .factors
                    .iter()
                    .fold(Polynomial::one(&k), |acc, d| acc.mul(d, &k));
                assert_eq!(prod, char_poly_bareiss(&a, &k));
            }
        }
    }

    #[test]
    fn kronecker_factors_are_symmetric() {
        let mut rng = ChaCha12Rng::seed_from_u64(14);
        let k = Field::prime(3).unwrap();
        for _ in 0..8 {
            let a = random_matrix(&k, 2, 2, &mut rng);
            let b = random_matrix(&k, 3, 3, &mut rng);
            let ab = a.kronecker(&b, &k).unwrap();
            let ba = b.kronecker(&a, &k).unwrap();
            assert_eq!(
                ab.invariant_factors(&k).factors,
                ba.invariant_factors(&k).factors
            );
        }
    }

    #[test]
    fn raw_prime_field_kit_agrees_with_generic_operations() {
        let mut rng = ChaCha12Rng::seed_from_u64(15);
        let k5 = Field::prime(5).unwrap();
        for _ in 0..20 {
            let rows = rng.gen_range(1..=6);
            let inner = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let a = random_matrix(&k5, rows, inner, &mut rng);
            let b = random_matrix(&k5, inner, cols, &mut rng);
            let fast = FpMat::from_exact(&a, 5).mul(&FpMat::from_exact(&b, 5));
            let slow = a.mul(&b, &k5);
            for i in 0..rows {
                for j in 0..cols {
                    assert_eq!(FieldElement::Mod(fast.at(i, j)), *slow.at(i, j));
                }
            }
            let ka = a.kernel_basis(&k5);
            let kb = FpMat::from_exact(&a, 5).kernel_basis();
            assert_eq!(ka.len(), kb.len());
            for v in kb {
                let ve: Vec<FieldElement> = v.into_iter().map(FieldElement::Mod).collect();
                assert!(a.apply(&ve, &k5).iter().all(|e| e.is_zero()));
            }
        }
    }
}
