//! Quadratic presentations `T(V)/(Rel)` and the Koszul dual
//! `A^! = T(V*)/(Rel^⊥)`.
//!
//! Coordinates of `V⊗V` are indexed row-major by ordered pairs: `e_i⊗e_j`
//! sits at `i·N + j`. The pairing `⟨e_i*⊗e_j*, e_k⊗e_l⟩ = δ_ik δ_jl` is the
//! standard dot product in these coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{kernel_basis, rref, EchelonBasis, FieldSpec, LinalgError, PrimeFieldMatrix};
use crate::polyalgebra::{monomial_count, PolyRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadraticError {
    #[error(
        "degree {degree} tensor piece has dimension {dimension}, over the guard of {limit}; \
         use the Koszul fast path for large degrees"
    )]
    ResourceGuard {
        degree: usize,
        dimension: u128,
        limit: u128,
    },
    #[error("input algebra cannot be Koszul: dual dimension in degree {degree} would be {value}")]
    NotKoszul { degree: usize, value: BigInt },
    #[error("Hilbert series must start with 1, got {0}")]
    BadConstantTerm(u64),
    #[error("Hilbert series has {given} terms, need {needed}")]
    InsufficientTerms { given: usize, needed: usize },
    #[error("fast path and direct computation disagree in degree {degree}: {fast} vs {direct}")]
    DualMismatch { degree: usize, fast: u64, direct: u64 },
    #[error("dimension overflow in degree {0}")]
    Overflow(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Limits for [`tensor_quotient_dims`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorGuard {
    /// Largest admissible `N^m`.
    pub max_vectors: u128,
    /// Largest admissible dense echelon storage, estimated as `(N^m)^2`.
    pub max_cells: u128,
}

impl Default for TensorGuard {
    fn default() -> Self {
        TensorGuard {
            max_vectors: 1_000_000,
            max_cells: 50_000_000,
        }
    }
}

/// `T(V)/(Rel)` with `dim V = N` and `Rel ⊂ V⊗V` stored as independent rows
/// in reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPresentation {
    generator_count: usize,
    relations: PrimeFieldMatrix,
}

impl QuadraticPresentation {
    pub fn new(generator_count: usize, relations: &PrimeFieldMatrix) -> Result<Self, QuadraticError> {
        let n2 = generator_count * generator_count;
        if relations.cols() != n2 {
            return Err(LinalgError::Shape(format!(
                "relation rows have {} entries, expected N² = {n2}",
                relations.cols()
            ))
            .into());
        }
        Ok(QuadraticPresentation {
            generator_count,
            relations: independent_rows(relations),
        })
    }

    /// The free algebra `T(V)`.
    pub fn free(field: FieldSpec, generator_count: usize) -> Self {
        let n2 = generator_count * generator_count;
        QuadraticPresentation {
            generator_count,
            relations: PrimeFieldMatrix::zeros(field, 0, n2),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &PrimeFieldMatrix {
        &self.relations
    }

    pub fn relation_dim(&self) -> usize {
        self.relations.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.relations.field()
    }

    /// The Koszul dual presentation: relations `Rel^⊥ ⊂ V*⊗V*`.
    pub fn perp(&self) -> QuadraticPresentation {
        let k = kernel_basis(&self.relations);
        QuadraticPresentation {
            generator_count: self.generator_count,
            relations: independent_rows(&k),
        }
    }

    /// Whether both presentations have the same relation space.
    pub fn same_relations(&self, other: &QuadraticPresentation) -> bool {
        self.generator_count == other.generator_count
            && self.relations == other.relations
    }

    /// Renders relations as sums of `c symbol_i⊗symbol_j` (1-based indices).
    pub fn render(&self, symbol: &str) -> Vec<String> {
        let n = self.generator_count;
        let f = self.field();
        (0..self.relations.rows())
            .map(|r| {
                let mut out = String::new();
                for (idx, &c) in self.relations.row(r).iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let c = f.symmetric(c);
                    let (i, j) = (idx / n + 1, idx % n + 1);
                    let sign = if c < 0 { "-" } else { "+" };
                    if out.is_empty() {
                        if c < 0 {
                            out.push('-');
                        }
                    } else {
                        out.push_str(&format!(" {sign} "));
                    }
                    if c.abs() != 1 {
                        out.push_str(&format!("{} ", c.abs()));
                    }
                    out.push_str(&format!("{symbol}_{i}⊗{symbol}_{j}"));
                }
                out
            })
            .collect()
    }
}

impl fmt::Display for QuadraticPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} generators; relations: [{}]", self.generator_count, self.render("ξ").join(", "))
    }
}

fn independent_rows(m: &PrimeFieldMatrix) -> PrimeFieldMatrix {
    let r = rref(m);
    let mut out = PrimeFieldMatrix::zeros(m.field(), 0, m.cols());
    for i in 0..r.rank {
        out.push_row(r.reduced.row(i));
    }
    out
}

/// `S(V)` as `T(V)/(e_i⊗e_j − e_j⊗e_i : i < j)`.
pub fn commutative_presentation(ring: &PolyRing) -> QuadraticPresentation {
    let n = ring.nvars();
    let field = ring.field();
    let mut rel = PrimeFieldMatrix::zeros(field, 0, n * n);
    for i in 0..n {
        for j in i + 1..n {
            let mut row = vec![0u32; n * n];
            row[i * n + j] = 1;
            row[j * n + i] = field.neg(1);
            rel.push_row(&row);
        }
    }
    QuadraticPresentation {
        generator_count: n,
        relations: independent_rows(&rel),
    }
}

/// Graded dimensions of `T(V)/(Rel)` in degrees `0..=max_m`, using
/// `I_m = I_{m−1}⊗V + V^{⊗(m−2)}⊗Rel`.
pub fn tensor_quotient_dims(
    p: &QuadraticPresentation,
    max_m: usize,
    guard: &TensorGuard,
) -> Result<Vec<u64>, QuadraticError> {
    let n = p.generator_count;
    let field = p.field();
    let mut dims = Vec::with_capacity(max_m + 1);
    // Echelon basis of I_{m−1}.
    let mut previous: Option<EchelonBasis> = None;
    for m in 0..=max_m {
        let size = (n as u128).checked_pow(m as u32).ok_or(QuadraticError::Overflow(m))?;
        if size > guard.max_vectors || size.saturating_mul(size) > guard.max_cells {
            return Err(QuadraticError::ResourceGuard {
                degree: m,
                dimension: size,
                limit: guard.max_vectors.min(isqrt(guard.max_cells)),
            });
        }
        let size = size as usize;
        if m < 2 {
            dims.push(size as u64);
            continue;
        }
        let mut ideal = EchelonBasis::new(field, size);
        if let Some(prev) = &previous {
            for row in prev.to_matrix().row_vecs() {
                for j in 0..n {
                    let mut v = vec![0u32; size];
                    for (a, &c) in row.iter().enumerate() {
                        if c != 0 {
                            v[a * n + j] = c;
                        }
                    }
                    ideal.insert(&v);
                }
            }
        }
        let prefixes = size / (n * n);
        for a in 0..prefixes {
            for r in 0..p.relations.rows() {
                let mut v = vec![0u32; size];
                v[a * n * n..(a + 1) * n * n].copy_from_slice(p.relations.row(r));
                ideal.insert(&v);
            }
        }
        dims.push((size - ideal.rank()) as u64);
        previous = Some(ideal);
    }
    Ok(dims)
}

fn isqrt(x: u128) -> u128 {
    let mut r = (x as f64).sqrt() as u128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Coefficients of `1 / Σ (−1)^n h_n t^n` up to `t^max_m`.
///
/// For a Koszul algebra `A` these are the dimensions of `A^!`. The caller
/// asserts Koszulity; a negative coefficient disproves it.
pub fn koszul_dual_dims_fastpath(hilbert_of_a: &[u64], max_m: usize) -> Result<Vec<u64>, QuadraticError> {
    match hilbert_of_a.first() {
        None => {
            return Err(QuadraticError::InsufficientTerms {
                given: 0,
                needed: max_m + 1,
            })
        }
        Some(&h0) if h0 != 1 => return Err(QuadraticError::BadConstantTerm(h0)),
        _ => {}
    }
    if hilbert_of_a.len() < max_m + 1 {
        return Err(QuadraticError::InsufficientTerms {
            given: hilbert_of_a.len(),
            needed: max_m + 1,
        });
    }
    let signed: Vec<BigInt> = hilbert_of_a
        .iter()
        .enumerate()
        .map(|(n, &h)| if n % 2 == 0 { BigInt::from(h) } else { -BigInt::from(h) })
        .collect();
    let mut out: Vec<BigInt> = Vec::with_capacity(max_m + 1);
    out.push(BigInt::one());
    for m in 1..=max_m {
        let mut acc = BigInt::zero();
        for k in 1..=m {
            acc += &signed[k] * &out[m - k];
        }
        let value = -acc;
        if value.is_negative() {
            return Err(QuadraticError::NotKoszul { degree: m, value });
        }
        out.push(value);
    }
    out.into_iter()
        .enumerate()
        .map(|(m, v)| v.to_u64().ok_or(QuadraticError::Overflow(m)))
        .collect()
}

/// Dimensions of the Koszul dual of a polynomial ring in `nvars` variables
/// (an exterior algebra), with the provenance of the check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualDims {
    pub dims: Vec<u64>,
    /// Degrees `0..=cross_checked_up_to` were also computed directly from the
    /// tensor presentation and agreed.
    pub cross_checked_up_to: Option<usize>,
}

/// Fast-path dual dimensions of `S(V)`, cross-validated against
/// [`tensor_quotient_dims`] in every degree the guard allows.
pub fn polynomial_ring_dual_dims(
    ring: &PolyRing,
    max_m: usize,
    cross_check: &TensorGuard,
) -> Result<DualDims, QuadraticError> {
    let v = ring.nvars();
    let hilbert: Vec<u64> = (0..=max_m)
        .map(|n| {
            u64::try_from(monomial_count(v, n)).map_err(|_| QuadraticError::Overflow(n))
        })
        .collect::<Result<_, _>>()?;
    let dims = koszul_dual_dims_fastpath(&hilbert, max_m)?;
    let mut affordable = 0usize;
    while affordable < max_m {
        let size = (v as u128).saturating_pow(affordable as u32 + 1);
        if size > cross_check.max_vectors || size.saturating_mul(size) > cross_check.max_cells {
            break;
        }
        affordable += 1;
    }
    let dual = commutative_presentation(ring).perp();
    let direct = tensor_quotient_dims(&dual, affordable, cross_check)?;
    for (m, (&fast, &d)) in dims.iter().zip(&direct).enumerate() {
        if fast != d {
            return Err(QuadraticError::DualMismatch { degree: m, fast, direct: d });
        }
    }
    Ok(DualDims {
        dims,
        cross_checked_up_to: Some(affordable),
    })
}
