//! Dense linear algebra over a prime field `F_p`.
//!
//! Everything else in the crate (graded pieces, Koszul duals, resolutions)
//! reduces to row reduction in this module. Pivoting is deterministic: the
//! first nonzero entry scanning left to right, top to bottom.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// The ground field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u32,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec {
            characteristic: DEFAULT_CHARACTERISTIC,
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl FieldSpec {
    pub fn new(characteristic: u32) -> Result<Self, LinalgError> {
        if !is_prime(characteristic) {
            return Err(LinalgError::NotPrime(characteristic));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.characteristic as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let p = self.characteristic as u64;
        ((a as u64 + p - b as u64) % p) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.characteristic as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.characteristic - a
        }
    }

    /// Multiplicative inverse by Fermat's little theorem. `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.characteristic != 0, "inverse of zero in F_p");
        self.pow(a, self.characteristic as u64 - 2)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let p = self.characteristic as u64;
        let mut base = a as u64 % p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.characteristic as i64) as u32
    }

    /// Representative in `(-p/2, p/2]`, used when printing coefficients.
    pub fn symmetric(&self, a: u32) -> i64 {
        let p = self.characteristic as i64;
        let a = a as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }

    /// `dst += factor * src`, entrywise.
    #[inline]
    pub fn axpy(&self, dst: &mut [u32], factor: u32, src: &[u32]) {
        if factor == 0 {
            return;
        }
        let p = self.characteristic as u64;
        let f = factor as u64;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = ((*d as u64 + f * s as u64) % p) as u32;
            }
        }
    }
}

/// Dense row-major matrix with entries reduced into `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeFieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl fmt::Debug for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "PrimeFieldMatrix {}x{} over F_{}",
            self.rows, self.cols, self.field.characteristic
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Output of [`rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: PrimeFieldMatrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

impl PrimeFieldMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        PrimeFieldMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry.
    pub fn from_i64_rows(field: FieldSpec, cols: usize, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(PrimeFieldMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of residues. Entries are reduced modulo `p`.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<u32>>) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let p = field.characteristic;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend(r.iter().map(|&x| x % p));
        }
        Ok(PrimeFieldMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (r, &x) in col.iter().enumerate() {
                m.entries[r * cols + c] = x % field.characteristic;
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        self.entries[r * self.cols + c] = value % self.field.characteristic;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.entries.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.entries[r * self.cols + c];
            }
        }
        t
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::Shape(format!(
                "cannot stack {} columns onto {}",
                other.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(PrimeFieldMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let (dst_start, dst_end) = (r * other.cols, (r + 1) * other.cols);
            for k in 0..self.cols {
                let a = self.entries[r * self.cols + k];
                if a != 0 {
                    self.field
                        .axpy(&mut out.entries[dst_start..dst_end], a, other.row(k));
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

/// Reduced row-echelon form. The row count is preserved; zero rows end up at
/// the bottom.
pub fn rref(m: &PrimeFieldMatrix) -> Rref {
    let field = m.field;
    let (rows, cols) = (m.rows, m.cols);
    let mut e = m.entries.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| e[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..cols {
                e.swap(pr * cols + k, r * cols + k);
            }
        }
        let inv = field.inv(e[r * cols + c]);
        for k in c..cols {
            e[r * cols + k] = field.mul(e[r * cols + k], inv);
        }
        let pivot_row: Vec<u32> = e[r * cols + c..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = e[i * cols + c];
            if f != 0 {
                let neg = field.neg(f);
                field.axpy(&mut e[i * cols + c..(i + 1) * cols], neg, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref {
        reduced: PrimeFieldMatrix {
            field,
            rows,
            cols,
            entries: e,
        },
        pivot_columns: pivots,
        rank,
    }
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per row.
///
/// There is one basis vector per non-pivot column `f`, with a `1` at `f`.
pub fn kernel_basis(m: &PrimeFieldMatrix) -> PrimeFieldMatrix {
    let field = m.field;
    let Rref {
        reduced,
        pivot_columns,
        rank,
    } = rref(m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &c in &pivot_columns {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = PrimeFieldMatrix::zeros(field, free.len(), cols);
    for (k, &f) in free.iter().enumerate() {
        out.entries[k * cols + f] = 1;
        for (i, &pc) in pivot_columns.iter().enumerate().take(rank) {
            let x = reduced.get(i, f);
            if x != 0 {
                out.entries[k * cols + pc] = field.neg(x);
            }
        }
    }
    out
}

/// Incrementally maintained echelon basis of a subspace of `F_p^n`.
///
/// Rows are stored normalized (pivot entry 1) and keyed by pivot column;
/// each row is zero left of its pivot.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: FieldSpec,
    dim: usize,
    rows: BTreeMap<usize, Vec<u32>>,
}

impl EchelonBasis {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        EchelonBasis {
            field,
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis in place; returns the pivot of the
    /// remainder, or `None` when `v` lies in the span.
    pub fn reduce(&self, v: &mut [u32]) -> Option<usize> {
        debug_assert_eq!(v.len(), self.dim);
        for (&pc, row) in &self.rows {
            let f = v[pc];
            if f != 0 {
                let neg = self.field.neg(f);
                self.field.axpy(&mut v[pc..], neg, &row[pc..]);
            }
        }
        v.iter().position(|&x| x != 0)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// Adds `v` if it is independent of the current basis. Returns whether it was added.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        match self.reduce(&mut w) {
            None => false,
            Some(pc) => {
                let inv = self.field.inv(w[pc]);
                for x in &mut w[pc..] {
                    *x = self.field.mul(*x, inv);
                }
                self.rows.insert(pc, w);
                true
            }
        }
    }

    pub fn to_matrix(&self) -> PrimeFieldMatrix {
        let mut m = PrimeFieldMatrix::zeros(self.field, 0, self.dim);
        for row in self.rows.values() {
            m.push_row(row);
        }
        m
    }
}

/// Greedy choice of candidate rows extending the span of `span_rows`.
///
/// Candidates are scanned in order; a candidate is selected when it is
/// independent of the span together with the previously selected ones.
pub fn complement_pivots(
    span_rows: &PrimeFieldMatrix,
    candidates: &PrimeFieldMatrix,
) -> Result<Vec<usize>, LinalgError> {
    if span_rows.cols != candidates.cols {
        return Err(LinalgError::Shape(format!(
            "span has {} columns, candidates have {}",
            span_rows.cols, candidates.cols
        )));
    }
    let mut basis = EchelonBasis::new(span_rows.field, span_rows.cols);
    for r in 0..span_rows.rows {
        basis.insert(span_rows.row(r));
    }
    Ok((0..candidates.rows)
        .filter(|&i| basis.insert(candidates.row(i)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> FieldSpec {
        FieldSpec::new(7).unwrap()
    }

    fn mat(field: FieldSpec, rows: &[&[i64]]) -> PrimeFieldMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        PrimeFieldMatrix::from_i64_rows(field, cols, &v).unwrap()
    }

    #[test]
    fn primality_is_checked() {
        assert!(FieldSpec::new(32003).is_ok());
        assert_eq!(FieldSpec::new(32004), Err(LinalgError::NotPrime(32004)));
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(2).is_ok());
        assert_eq!(FieldSpec::default().characteristic(), 32003);
    }

    #[test]
    fn field_inverse() {
        let f = FieldSpec::default();
        for a in [1u32, 2, 17, 32002, 12345] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rref_identity() {
        let id = PrimeFieldMatrix::identity(f7(), 2);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivot_columns, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = mat(f7(), &[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.reduced, mat(f7(), &[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivot_columns, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let z = PrimeFieldMatrix::zeros(f7(), 3, 3);
        let k = kernel_basis(&z);
        assert_eq!(k.rows(), 3);
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn kernel_hand_check() {
        let m = mat(f7(), &[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.rows(), 1);
        // (−2, 1) ≡ (5, 1); proportional to (2, −1).
        assert_eq!(k.row(0), &[5, 1]);
        assert!(m.mul_vec(k.row(0)).iter().all(|&x| x == 0));
    }

    #[test]
    fn complement_pivot_examples() {
        let f = f7();
        let empty = PrimeFieldMatrix::zeros(f, 0, 2);
        let id = PrimeFieldMatrix::identity(f, 2);
        assert_eq!(complement_pivots(&empty, &id).unwrap(), vec![0, 1]);

        let span = mat(f, &[&[1, 0]]);
        let cands = mat(f, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(complement_pivots(&span, &cands).unwrap(), vec![1]);

        let bad = PrimeFieldMatrix::zeros(f, 1, 3);
        assert!(complement_pivots(&span, &bad).is_err());
    }

    #[test]
    fn shape_errors() {
        let f = f7();
        let a = PrimeFieldMatrix::zeros(f, 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.stack(&PrimeFieldMatrix::zeros(f, 1, 2)).is_err());
        assert!(PrimeFieldMatrix::from_rows(f, 2, vec![vec![1]]).is_err());
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = PrimeFieldMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            // A small prime and small entries produce plenty of rank deficiency.
            proptest::collection::vec(0u32..5, r * c).prop_map(move |e| {
                let rows = e.chunks(c).map(|x| x.to_vec()).collect();
                PrimeFieldMatrix::from_rows(FieldSpec::new(5).unwrap(), c, rows).unwrap()
            })
        })
    }

    /// Independent rank: Gaussian elimination over columns of the transpose.
    fn rank_via_transpose(m: &PrimeFieldMatrix) -> usize {
        let t = m.transpose();
        let mut basis = EchelonBasis::new(t.field(), t.cols());
        (0..t.rows()).filter(|&r| basis.insert(t.row(r))).count()
    }

    proptest! {
        #[test]
        fn rref_idempotent(m in arb_matrix(8, 8)) {
            let once = rref(&m).reduced;
            prop_assert_eq!(rref(&once).reduced, once);
        }

        #[test]
        fn rank_nullity(m in arb_matrix(8, 10)) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank_via_transpose(&m) + k.rows(), m.cols());
            for r in 0..k.rows() {
                prop_assert!(m.mul_vec(k.row(r)).iter().all(|&x| x == 0));
            }
            prop_assert_eq!(k.rank(), k.rows());
        }

        #[test]
        fn rref_preserves_row_space(m in arb_matrix(10, 14)) {
            let r = rref(&m);
            let stacked = r.reduced.stack(&m).unwrap();
            prop_assert_eq!(stacked.rank(), r.rank);
            prop_assert!(r.rank <= m.rows().min(m.cols()));
        }

        #[test]
        fn complement_reaches_full_rank(span in arb_matrix(4, 6), extra in 0usize..6) {
            let f = span.field();
            let mut cands = PrimeFieldMatrix::zeros(f, 0, span.cols());
            for i in 0..extra {
                let row: Vec<u32> = (0..span.cols()).map(|c| ((i * 3 + c * c + 1) % 5) as u32).collect();
                cands.push_row(&row);
            }
            let sel = complement_pivots(&span, &cands).unwrap();
            let mut chosen = span.clone();
            for &i in &sel {
                chosen.push_row(cands.row(i));
            }
            let all = span.stack(&cands).unwrap();
            prop_assert_eq!(chosen.rank(), all.rank());
            prop_assert_eq!(chosen.rank(), span.rank() + sel.len());
        }
    }

    #[test]
    fn random_row_space_membership() {
        use rand::{Rng, SeedableRng};
        let f = FieldSpec::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let rows: Vec<Vec<u32>> = (0..10)
            .map(|_| (0..14).map(|_| rng.gen_range(0..f.characteristic())).collect())
            .collect();
        let m = PrimeFieldMatrix::from_rows(f, 14, rows).unwrap();
        let r = rref(&m);
        let mut span = EchelonBasis::new(f, 14);
        for i in 0..r.rank {
            span.insert(r.reduced.row(i));
        }
        for i in 0..m.rows() {
            assert!(span.contains(m.row(i)));
        }
    }

    #[test]
    fn deterministic() {
        let m = mat(FieldSpec::default(), &[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        assert_eq!(rref(&m), rref(&m.clone()));
        assert_eq!(kernel_basis(&m), kernel_basis(&m));
    }
}
