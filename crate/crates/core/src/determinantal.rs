//! Example factory: ideals of maximal minors of a generic matrix, powers of
//! the irrelevant ideal as minors of a banded matrix, Eagon–Northcott Betti
//! numbers and the closed-form Poincaré series built from them.

use thiserror::Error;

use crate::linalg::FieldSpec;
use crate::polyalgebra::{binomial, AlgebraError, GradedIdeal, Monomial, Poly, PolyRing};
use crate::predictor::{predict_series, PredictionInput, PredictorError};
use crate::resolution::ResolutionBounds;
use crate::series::BiSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeterminantalError {
    #[error("invalid matrix shape {n}x{m}: need 1 <= n <= m")]
    Shape { n: usize, m: usize },
    #[error("invalid power ideal parameters n = {n}, s = {s}: need n >= 2 and s >= 1")]
    PowerParameters { n: usize, s: usize },
    #[error("binomial coefficient does not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Predictor(#[from] PredictorError),
}

/// Generic `n × m` matrix `(x_{ij})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericMatrixSpec {
    pub n: usize,
    pub m: usize,
}

impl GenericMatrixSpec {
    pub fn new(n: usize, m: usize) -> Result<Self, DeterminantalError> {
        if n == 0 || n > m {
            return Err(DeterminantalError::Shape { n, m });
        }
        Ok(GenericMatrixSpec { n, m })
    }
}

/// `(x_0, …, x_s)^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerIdealSpec {
    pub n: usize,
    pub s: usize,
}

impl PowerIdealSpec {
    pub fn new(n: usize, s: usize) -> Result<Self, DeterminantalError> {
        if n < 2 || s < 1 {
            return Err(DeterminantalError::PowerParameters { n, s });
        }
        Ok(PowerIdealSpec { n, s })
    }

    /// Column count of the banded matrix.
    pub fn m(&self) -> usize {
        self.n + self.s
    }
}

/// Matrix of polynomials, row-major.
pub type PolyMatrix = Vec<Vec<Poly>>;

/// Warning text when the relation degree `d = n` lies below 4.
pub fn hypothesis_warning(n: usize) -> Option<String> {
    match n {
        0..=1 => None,
        2 => Some("d = n = 2 < 4: outside the d >= 4 theorem; covered by the d = 2 case".into()),
        3 => Some("d = n = 3 < 4: outside the d >= 4 theorem; results are conjecture evidence only".into()),
        _ => None,
    }
}

/// Determinant by Laplace expansion along the first row.
pub fn determinant(rows: &[&[Poly]], field: FieldSpec, nvars: usize) -> Poly {
    let n = rows.len();
    let cols: Vec<usize> = (0..n).collect();
    laplace(rows, 0, &cols, field, nvars)
}

fn laplace(rows: &[&[Poly]], r: usize, cols: &[usize], field: FieldSpec, nvars: usize) -> Poly {
    if cols.is_empty() {
        return Poly::monomial(field, Monomial::one(nvars), 1);
    }
    let mut acc = Poly::zero(field, nvars);
    for (k, &c) in cols.iter().enumerate() {
        if rows[r][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = rows[r][c].mul(&laplace(rows, r + 1, &rest, field, nvars));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Maximal minors of an `n × m` matrix, columns chosen in lex order.
pub fn maximal_minors(matrix: &PolyMatrix, field: FieldSpec, nvars: usize) -> Vec<Poly> {
    let n = matrix.len();
    let m = matrix.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for cols in combinations(m, n) {
        let sub: Vec<Vec<Poly>> = matrix
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let refs: Vec<&[Poly]> = sub.iter().map(Vec::as_slice).collect();
        out.push(determinant(&refs, field, nvars));
    }
    out
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..m {
            cur.push(c);
            go(c + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Ring `k[x1_1, …, xn_m]` and the ideal of maximal minors of `(x_{ij})`.
pub fn generic_minors_ideal(
    spec: GenericMatrixSpec,
    field: FieldSpec,
) -> Result<(PolyRing, GradedIdeal), DeterminantalError> {
    let GenericMatrixSpec { n, m } = spec;
    let names: Vec<String> = (1..=n)
        .flat_map(|i| (1..=m).map(move |j| format!("x{i}_{j}")))
        .collect();
    let ring = PolyRing::new(names, field)?;
    let matrix: PolyMatrix = (0..n)
        .map(|i| (0..m).map(|j| ring.var(i * m + j)).collect())
        .collect();
    let gens = maximal_minors(&matrix, field, n * m);
    let ideal = GradedIdeal::new(&ring, gens)?;
    Ok((ring, ideal))
}

/// Ring `k[x0, …, xs]`, the ideal `(x_0, …, x_s)^n` by its monomial
/// generators, and the `n × (n+s)` banded matrix whose row `r` carries `x_k`
/// in column `r + k`.
pub fn power_ideal(
    spec: PowerIdealSpec,
    field: FieldSpec,
) -> Result<(PolyRing, GradedIdeal, PolyMatrix), DeterminantalError> {
    let PowerIdealSpec { n, s } = spec;
    let ring = PolyRing::new((0..=s).map(|k| format!("x{k}")), field)?;
    let gens: Vec<Poly> = crate::polyalgebra::monomial_basis(&ring, n)
        .into_iter()
        .map(|mono| Poly::monomial(field, mono, 1))
        .collect();
    let ideal = GradedIdeal::new(&ring, gens)?;
    let matrix: PolyMatrix = (0..n)
        .map(|r| {
            (0..n + s)
                .map(|c| match c.checked_sub(r) {
                    Some(k) if k <= s => ring.var(k),
                    _ => ring.zero(),
                })
                .collect()
        })
        .collect();
    Ok((ring, ideal, matrix))
}

/// Eagon–Northcott ranks `b_{i+1} = C(n+i−1, i) · C(m, n+i)` for `0 ≤ i ≤ m−n`.
pub fn en_betti(n: usize, m: usize) -> Result<Vec<u64>, DeterminantalError> {
    if n == 0 || n > m {
        return Err(DeterminantalError::Shape { n, m });
    }
    (0..=m - n)
        .map(|i| {
            binomial(n + i - 1, i)
                .checked_mul(binomial(m, n + i))
                .and_then(|v| u64::try_from(v).ok())
                .ok_or(DeterminantalError::Overflow)
        })
        .collect()
}

fn exterior_dims(v: usize, max_p: usize) -> Result<Vec<u64>, DeterminantalError> {
    (0..=max_p.min(v))
        .map(|p| u64::try_from(binomial(v, p)).map_err(|_| DeterminantalError::Overflow))
        .collect()
}

/// Prediction data for the generic determinantal example: exterior algebra on
/// `nm` generators, Eagon–Northcott Betti numbers, `d = n`.
pub fn en_prediction_input(
    n: usize,
    m: usize,
    bounds: ResolutionBounds,
) -> Result<PredictionInput, DeterminantalError> {
    let dual = exterior_dims(n * m, bounds.max_homological)?;
    Ok(PredictionInput::new(dual, en_betti(n, m)?, n, bounds)?)
}

pub fn en_poincare_series(
    n: usize,
    m: usize,
    bounds: ResolutionBounds,
) -> Result<BiSeries, DeterminantalError> {
    Ok(predict_series(&en_prediction_input(n, m, bounds)?))
}

/// Prediction data for `(x_0, …, x_s)^n`: exterior algebra on `s+1`
/// generators, `b = en_betti(n, n+s)`, `d = n`.
pub fn power_prediction_input(
    n: usize,
    s: usize,
    bounds: ResolutionBounds,
) -> Result<PredictionInput, DeterminantalError> {
    let spec = PowerIdealSpec::new(n, s)?;
    let dual = exterior_dims(s + 1, bounds.max_homological)?;
    Ok(PredictionInput::new(dual, en_betti(n, spec.m())?, n, bounds)?)
}

pub fn power_ideal_poincare_series(
    n: usize,
    s: usize,
    bounds: ResolutionBounds,
) -> Result<BiSeries, DeterminantalError> {
    Ok(predict_series(&power_prediction_input(n, s, bounds)?))
}

/// Univariate denominator `1 − Σ b_i t^{i+1}` as a coefficient list.
pub fn univariate_denominator(b: &[u64]) -> Vec<i128> {
    let mut out = vec![0i128; b.len() + 2];
    out[0] = 1;
    for (k, &bi) in b.iter().enumerate() {
        out[k + 2] -= bi as i128;
    }
    out
}

/// Text grid of a polynomial matrix.
pub fn render_matrix(ring: &PolyRing, matrix: &PolyMatrix) -> String {
    let cells: Vec<Vec<String>> = matrix
        .iter()
        .map(|row| row.iter().map(|p| ring.render(p)).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rref;
    use crate::polyalgebra::{ideal_piece, monomial_basis};
    use num_bigint::BigInt;

    fn field() -> FieldSpec {
        FieldSpec::default()
    }

    #[test]
    fn two_by_two_determinant() {
        let (ring, ideal) = generic_minors_ideal(GenericMatrixSpec::new(2, 2).unwrap(), field()).unwrap();
        assert_eq!(ideal.generators().len(), 1);
        assert_eq!(ring.render(&ideal.generators()[0]), "x1_1*x2_2 - x1_2*x2_1");
    }

    #[test]
    fn minor_counts_and_degrees() {
        for (n, m, count) in [(2, 3, 3), (4, 5, 5), (3, 5, 10)] {
            let (ring, ideal) =
                generic_minors_ideal(GenericMatrixSpec::new(n, m).unwrap(), field()).unwrap();
            assert_eq!(ideal.generators().len(), count);
            assert!(ideal.degrees().iter().all(|&d| d == n));
            let piece = ideal_piece(&ideal, &ring, n);
            assert_eq!(piece.rows(), count, "minors of {n}x{m} are independent");
        }
    }

    #[test]
    fn bad_shapes() {
        assert!(GenericMatrixSpec::new(3, 2).is_err());
        assert!(GenericMatrixSpec::new(0, 2).is_err());
        assert!(PowerIdealSpec::new(4, 0).is_err());
        assert!(PowerIdealSpec::new(1, 1).is_err());
        assert!(power_prediction_input(3, 0, ResolutionBounds::new(3, 3)).is_err());
    }

    #[test]
    fn power_ideal_generators() {
        for (n, s, count) in [(4, 1, 5), (2, 1, 3), (3, 2, 10)] {
            let (_, ideal, matrix) = power_ideal(PowerIdealSpec::new(n, s).unwrap(), field()).unwrap();
            assert_eq!(ideal.generators().len(), count);
            assert_eq!(matrix.len(), n);
            assert_eq!(matrix[0].len(), n + s);
        }
    }

    #[test]
    fn banded_matrix_layout() {
        let (ring, _, matrix) = power_ideal(PowerIdealSpec::new(4, 1).unwrap(), field()).unwrap();
        assert_eq!(
            render_matrix(&ring, &matrix),
            "x0  x1   0   0   0\n 0  x0  x1   0   0\n 0   0  x0  x1   0\n 0   0   0  x0  x1\n"
        );
    }

    /// Minors of the banded matrix span the same degree-n space as the monomials.
    #[test]
    fn banded_minors_span_the_power() {
        for (n, s) in [(2, 1), (4, 1), (2, 2), (3, 2), (2, 3)] {
            let (ring, ideal, matrix) = power_ideal(PowerIdealSpec::new(n, s).unwrap(), field()).unwrap();
            let minors = maximal_minors(&matrix, field(), s + 1);
            let minor_ideal = GradedIdeal::new(&ring, minors).unwrap();
            let a = rref(&ideal_piece(&ideal, &ring, n)).reduced;
            let b = rref(&ideal_piece(&minor_ideal, &ring, n)).reduced;
            assert_eq!(a, b, "n={n} s={s}");
            assert_eq!(a.rows(), monomial_basis(&ring, n).len());
        }
    }

    #[test]
    fn single_column_power_minors_are_monomials() {
        let (ring, _, matrix) = power_ideal(PowerIdealSpec::new(2, 1).unwrap(), field()).unwrap();
        let rendered: Vec<String> = maximal_minors(&matrix, field(), 2)
            .iter()
            .map(|p| ring.render(p))
            .collect();
        assert_eq!(rendered, vec!["x0^2", "x0*x1", "x1^2"]);
    }

    #[test]
    fn en_betti_values() {
        assert_eq!(en_betti(4, 4).unwrap(), vec![1]);
        assert_eq!(en_betti(4, 5).unwrap(), vec![5, 4]);
        assert_eq!(en_betti(4, 6).unwrap(), vec![15, 24, 10]);
        assert_eq!(en_betti(2, 3).unwrap(), vec![3, 2]);
        for n in 1..6 {
            for m in n..9 {
                let b = en_betti(n, m).unwrap();
                assert_eq!(b.len(), m - n + 1);
                assert!(b.iter().all(|&x| x > 0));
            }
        }
        assert!(en_betti(5, 4).is_err());
    }

    fn times_poly(series: &[BigInt], poly: &[i128]) -> Vec<BigInt> {
        (0..series.len())
            .map(|k| {
                (0..=k.min(poly.len() - 1))
                    .map(|j| &series[k - j] * BigInt::from(poly[j]))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn en_series_at_u_one() {
        let bounds = ResolutionBounds::new(8, 40);
        let s = en_poincare_series(4, 5, bounds).unwrap().specialize_u();
        assert!(!s.possibly_truncated);
        let num = times_poly(&s.coeffs, &univariate_denominator(&[5, 4]));
        let expect: Vec<BigInt> = (0..=8).map(|p| BigInt::from(binomial(20, p))).collect();
        assert_eq!(num, expect);
        assert_eq!(univariate_denominator(&[5, 4]), vec![1, 0, -5, -4]);
    }

    #[test]
    fn square_case_t_squared_coefficient() {
        for n in 2..6 {
            let s = en_poincare_series(n, n, ResolutionBounds::new(2, 2 * n)).unwrap().specialize_u();
            assert_eq!(s.coeffs[2], BigInt::from(binomial(n * n, 2) + 1), "n={n}");
        }
    }

    #[test]
    fn power_input_flagship() {
        let inp = power_prediction_input(4, 1, ResolutionBounds::new(5, 14)).unwrap();
        assert_eq!(inp.dual_dims, vec![1, 2, 1]);
        assert_eq!(inp.b, vec![5, 4]);
        assert_eq!(inp.d, 4);
        let inp = power_prediction_input(2, 1, ResolutionBounds::new(5, 14)).unwrap();
        assert_eq!(inp.b, vec![3, 2]);
    }

    #[test]
    fn warnings() {
        assert!(hypothesis_warning(2).is_some());
        assert!(hypothesis_warning(3).is_some());
        assert!(hypothesis_warning(4).is_none());
    }

    #[test]
    fn zero_entries_are_skipped_in_laplace() {
        let f = field();
        let ring = PolyRing::new(["a"], f).unwrap();
        let z = ring.zero();
        let a = ring.var(0);
        let rows = vec![vec![z.clone(), a.clone()], vec![a.clone(), z]];
        let refs: Vec<&[Poly]> = rows.iter().map(Vec::as_slice).collect();
        let det = determinant(&refs, f, 1);
        assert_eq!(ring.render(&det), "-a^2");
    }
}
