//! Predicted bigraded dimensions of `Ext_R(k,k)` for `R = A/I` with an
//! almost linear resolution over a Koszul algebra `A`.
//!
//! With `G_i ≅ k(−d−i+1)^{b_i}` placed in cohomological degree `i+1`,
//! `Ext_R(k,k) ≅ A^! ⊗ T(⊕ G_i^∨)` as bigraded vector spaces. The three
//! predictors evaluate this independently:
//!
//! * [`predict_series`]: `Hilb(A^!)(tu) / (1 − Σ b_i u^{d+i−1} t^{i+1})`;
//! * [`predict_recurrence`]: `E(p,s) = A^!_p [s = p] + Σ b_i E(p−i−1, s−d−i+1)`;
//! * [`predict_words`]: explicit enumeration of tensor words.
//!
//! Internal degrees are stored as nonnegative `s`: entry `(p, s)` is the
//! dimension of `Ext^p` in internal degree `−s`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::resolution::{BettiTable, ResolutionBounds};
use crate::series::BiSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PredictorError {
    #[error("invalid prediction input: {0}")]
    InvalidInput(String),
    #[error(
        "congruence check refused for d = 3: congruence modulo d − 2 = 1 carries no information"
    )]
    DegreeThree,
    #[error("congruence check needs d >= 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("series coefficient at (p={0}, s={1}) is negative")]
    NegativeCoefficient(usize, usize),
}

/// Bigraded dimension table; zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtTable {
    entries: BTreeMap<(usize, usize), BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtRecord {
    pub p: usize,
    pub s: usize,
    pub dim: BigUint,
}

impl ExtTable {
    pub fn new() -> Self {
        ExtTable {
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, usize), BigUint)>) -> Self {
        let mut t = Self::new();
        for ((p, s), v) in entries {
            t.add(p, s, v);
        }
        t
    }

    /// The oracle table: Betti numbers of the resolution of `k`.
    pub fn from_betti(bt: &BettiTable) -> Self {
        Self::from_entries(bt.entries().map(|(k, r)| (k, BigUint::from(r))))
    }

    pub fn add(&mut self, p: usize, s: usize, v: BigUint) {
        if v.is_zero() {
            return;
        }
        *self.entries.entry((p, s)).or_default() += v;
    }

    pub fn get(&self, p: usize, s: usize) -> BigUint {
        self.entries.get(&(p, s)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &BigUint)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_p(&self) -> usize {
        self.entries.keys().map(|&(p, _)| p).max().unwrap_or(0)
    }

    /// `Σ_s dim(p, s)` for `p = 0..=max_p`.
    pub fn totals(&self) -> Vec<BigUint> {
        let mut t = vec![BigUint::zero(); self.max_p() + 1];
        for (&(p, _), v) in &self.entries {
            t[p] += v;
        }
        t
    }

    pub fn records(&self) -> Vec<ExtRecord> {
        self.entries
            .iter()
            .map(|(&(p, s), dim)| ExtRecord { p, s, dim: dim.clone() })
            .collect()
    }
}

impl Default for ExtTable {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Display for ExtTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((p, s), v) in self.entries() {
            writeln!(f, "Ext^{p} in internal degree -{s}: {v}")?;
        }
        Ok(())
    }
}

/// Data of the prediction: `dim A^!_p` (entries past the end are zero),
/// Betti numbers `b_1..b_k` of the almost linear resolution, and the
/// relation degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionInput {
    pub dual_dims: Vec<u64>,
    pub b: Vec<u64>,
    pub d: usize,
    pub bounds: ResolutionBounds,
}

impl PredictionInput {
    pub fn new(
        dual_dims: Vec<u64>,
        b: Vec<u64>,
        d: usize,
        bounds: ResolutionBounds,
    ) -> Result<Self, PredictorError> {
        if dual_dims.first() != Some(&1) {
            return Err(PredictorError::InvalidInput(
                "dual_dims must start with dim A^!_0 = 1".into(),
            ));
        }
        if d < 2 {
            return Err(PredictorError::InvalidInput(format!(
                "relation degree must be at least 2, got {d}"
            )));
        }
        Ok(PredictionInput {
            dual_dims,
            b,
            d,
            bounds,
        })
    }

    fn dual(&self, p: usize) -> u64 {
        self.dual_dims.get(p).copied().unwrap_or(0)
    }

    /// Cohomological and internal degree of `G_i^∨` (1-based `i`).
    fn generator_shift(&self, i: usize) -> (usize, usize) {
        (i + 1, self.d + i - 1)
    }
}

/// `Hilb(A^!)(tu) · (1 − Σ b_i u^{d+i−1} t^{i+1})^{−1}`, truncated at the bounds.
pub fn predict_series(input: &PredictionInput) -> BiSeries {
    let (mt, mu) = (input.bounds.max_homological, input.bounds.max_internal);
    let numerator = BiSeries::from_terms(
        (0..=mt).map(|p| (p, p, BigInt::from(input.dual(p)))),
        mt,
        mu,
    );
    let denominator = BiSeries::betti_denominator(&input.b, input.d, mt, mu);
    let inverse = denominator
        .inverse()
        .expect("denominator has constant term 1");
    numerator
        .mul(&inverse)
        .expect("numerator and denominator share bounds")
}

/// Coefficients of a series as a table; fails on negative coefficients.
pub fn series_to_table(series: &BiSeries) -> Result<ExtTable, PredictorError> {
    let mut t = ExtTable::new();
    for (p, s, c) in series.terms() {
        let v = c
            .to_biguint()
            .ok_or(PredictorError::NegativeCoefficient(p, s))?;
        t.add(p, s, v);
    }
    Ok(t)
}

/// Bottom-up evaluation of the recurrence
/// `E(p, s) = A^!_p [s = p] + Σ_i b_i E(p−i−1, s−(d+i−1))`.
pub fn predict_recurrence(input: &PredictionInput) -> ExtTable {
    let (mp, ms) = (input.bounds.max_homological, input.bounds.max_internal);
    let mut grid = vec![vec![BigUint::zero(); ms + 1]; mp + 1];
    for p in 0..=mp {
        for s in 0..=ms {
            let mut v = if s == p {
                BigUint::from(input.dual(p))
            } else {
                BigUint::zero()
            };
            for (k, &bi) in input.b.iter().enumerate() {
                let (dp, ds) = input.generator_shift(k + 1);
                if bi != 0 && p >= dp && s >= ds {
                    v += &grid[p - dp][s - ds] * bi;
                }
            }
            grid[p][s] = v;
        }
    }
    let mut t = ExtTable::new();
    for (p, row) in grid.into_iter().enumerate() {
        for (s, v) in row.into_iter().enumerate() {
            t.add(p, s, v);
        }
    }
    t
}

/// Sums `dim A^!_{p₀} · Π b_{i_j}` over every word `a ⊗ G_{i_1}^∨ ⊗ ⋯ ⊗ G_{i_r}^∨`.
pub fn predict_words(input: &PredictionInput) -> ExtTable {
    let (mp, ms) = (input.bounds.max_homological, input.bounds.max_internal);
    let mut words: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();

    fn walk(
        input: &PredictionInput,
        bounds: (usize, usize),
        at: (usize, usize),
        weight: BigUint,
        out: &mut BTreeMap<(usize, usize), BigUint>,
    ) {
        for (k, &bi) in input.b.iter().enumerate() {
            if bi == 0 {
                continue;
            }
            let (dp, ds) = input.generator_shift(k + 1);
            let next = (at.0 + dp, at.1 + ds);
            if next.0 <= bounds.0 && next.1 <= bounds.1 {
                walk(input, bounds, next, &weight * bi, out);
            }
        }
        *out.entry(at).or_default() += weight;
    }
    walk(input, (mp, ms), (0, 0), BigUint::from(1u32), &mut words);

    let mut t = ExtTable::new();
    for p0 in 0..=mp.min(ms) {
        let a = input.dual(p0);
        if a == 0 {
            continue;
        }
        for (&(wp, ws), w) in &words {
            if p0 + wp <= mp && p0 + ws <= ms {
                t.add(p0 + wp, p0 + ws, w * a);
            }
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub p: usize,
    pub s: usize,
    pub predicted: BigUint,
    pub oracle: usize,
}

/// Entrywise comparison of a predicted table with an oracle Betti table.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffReport {
    pub agreed: Vec<(usize, usize)>,
    pub mismatched: Vec<Mismatch>,
    /// Cells outside the certified window or on the oracle frontier.
    pub frontier_excluded: Vec<(usize, usize)>,
}

impl DiffReport {
    pub fn is_clean(&self) -> bool {
        self.mismatched.is_empty()
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "agreed: {}, mismatched: {}, frontier excluded: {}",
            self.agreed.len(),
            self.mismatched.len(),
            self.frontier_excluded.len()
        )?;
        for m in &self.mismatched {
            writeln!(
                f,
                "  MISMATCH at (p={}, s={}): predicted {}, oracle {}",
                m.p, m.s, m.predicted, m.oracle
            )?;
        }
        Ok(())
    }
}

/// Compares every nonzero cell of either table. Cells the oracle does not
/// certify (beyond `bounds`, beyond the oracle window, or flagged frontier)
/// are excluded, never treated as zero.
pub fn compare_tables(predicted: &ExtTable, oracle: &BettiTable, bounds: ResolutionBounds) -> DiffReport {
    let mut cells: Vec<(usize, usize)> = predicted
        .entries()
        .map(|(k, _)| k)
        .chain(oracle.entries().map(|(k, _)| k))
        .collect();
    cells.sort_unstable();
    cells.dedup();
    let mut report = DiffReport::default();
    for (p, s) in cells {
        let certified = p <= bounds.max_homological
            && s <= bounds.max_internal
            && oracle.covers(p, s)
            && !oracle.is_frontier(p, s);
        if !certified {
            report.frontier_excluded.push((p, s));
            continue;
        }
        let pred = predicted.get(p, s);
        let orc = oracle.get(p, s);
        if pred == BigUint::from(orc) {
            report.agreed.push((p, s));
        } else {
            report.mismatched.push(Mismatch {
                p,
                s,
                predicted: pred,
                oracle: orc,
            });
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceResult {
    pub pass: bool,
    pub witnesses: Vec<(usize, usize)>,
    /// `d − 2`; zero means the check is `s = p` exactly.
    pub modulus: usize,
}

/// Every nonzero entry must satisfy `s ≡ p (mod d − 2)`. For `d = 2` this
/// degenerates to `s = p`; `d = 3` is refused.
pub fn congruence_check(table: &ExtTable, d: usize) -> Result<CongruenceResult, PredictorError> {
    match d {
        0 | 1 => return Err(PredictorError::DegreeTooSmall(d)),
        3 => return Err(PredictorError::DegreeThree),
        _ => {}
    }
    let modulus = d - 2;
    let ok = |p: usize, s: usize| {
        if modulus == 0 {
            p == s
        } else {
            (s as i64 - p as i64).rem_euclid(modulus as i64) == 0
        }
    };
    let witnesses: Vec<(usize, usize)> = table
        .entries()
        .map(|(k, _)| k)
        .filter(|&(p, s)| !ok(p, s))
        .collect();
    Ok(CongruenceResult {
        pass: witnesses.is_empty(),
        witnesses,
        modulus,
    })
}

/// Degree pattern of an Ext table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegreePattern {
    /// `Ext^p` concentrated in degree `p` (Koszul).
    Linear,
    /// `Ext^p` concentrated in degree `N·p/2` (p even) or `N·(p−1)/2 + 1` (p odd).
    Alternating { n: usize },
    Neither { witnesses: Vec<(usize, usize)> },
}

impl fmt::Display for DegreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreePattern::Linear => write!(f, "linear"),
            DegreePattern::Alternating { n } => write!(f, "alternating({n})"),
            DegreePattern::Neither { witnesses } => {
                let w: Vec<String> = witnesses.iter().map(|(p, s)| format!("({p},{s})")).collect();
                write!(f, "neither (witnesses {})", w.join(", "))
            }
        }
    }
}

fn alternating_degree(n: usize, p: usize) -> usize {
    if p % 2 == 0 {
        n * p / 2
    } else {
        n * (p - 1) / 2 + 1
    }
}

pub fn classify_degree_pattern(table: &ExtTable) -> DegreePattern {
    let cells: Vec<(usize, usize)> = table.entries().map(|(k, _)| k).collect();
    if cells.iter().all(|&(p, s)| p == s) {
        return DegreePattern::Linear;
    }
    // Some Ext^p spread over several degrees.
    for w in cells.windows(2) {
        if w[0].0 == w[1].0 {
            return DegreePattern::Neither {
                witnesses: vec![w[0], w[1]],
            };
        }
    }
    let n = cells.iter().find(|&&(p, _)| p == 2).map(|&(_, s)| s);
    let offending: Vec<(usize, usize)> = match n {
        Some(n) => cells
            .iter()
            .copied()
            .filter(|&(p, s)| s != alternating_degree(n, p))
            .collect(),
        None => cells.iter().copied().filter(|&(p, s)| p != s).collect(),
    };
    match (n, offending.is_empty()) {
        (Some(n), true) => DegreePattern::Alternating { n },
        _ => DegreePattern::Neither {
            witnesses: offending.into_iter().take(2).collect(),
        },
    }
}

/// Converts a table entry to `u64` when it fits.
pub fn dim_to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}
