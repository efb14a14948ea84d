//! Minimal graded free resolutions by degreewise linear algebra.
//!
//! Two modules are resolved: the residue field `k` over a quotient ring `R`
//! (its Betti numbers are the bigraded dimensions of `Ext_R(k,k)`), and
//! `R = A/I` over the polynomial ring `A` (which yields the `b_i` and the
//! almost-linearity check).
//!
//! At step `p` the kernel of `d_{p−1}` is computed degree by degree in
//! ascending order; a kernel vector becomes a new generator of `F_p` when it
//! is not in the span of the multiples of generators already chosen. Every
//! Betti number with internal degree `≤ max_internal` is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{kernel_basis, EchelonBasis, PrimeFieldMatrix};
use crate::polyalgebra::{ideal_piece, GradedIdeal, Monomial, Poly, PolyRing, QuotientPiece, QuotientRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("ring is not connected: dim R_0 = {0}, expected 1 (the ideal contains a unit)")]
    NotConnected(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResolutionBounds {
    pub max_homological: usize,
    pub max_internal: usize,
}

impl ResolutionBounds {
    pub fn new(max_homological: usize, max_internal: usize) -> Self {
        ResolutionBounds {
            max_homological,
            max_internal,
        }
    }
}

/// `⊕ R(−a_j)`, generators sorted by degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedFreeModule {
    generator_degrees: Vec<usize>,
}

struct Block {
    generator: usize,
    offset: usize,
    piece: Arc<QuotientPiece>,
}

/// Coordinates of the degree-`s` piece of a free module: one block of
/// `R_{s−a_j}` per generator with `a_j ≤ s`.
struct Layout {
    blocks: Vec<Block>,
    dim: usize,
}

impl GradedFreeModule {
    pub fn new(mut generator_degrees: Vec<usize>) -> Self {
        generator_degrees.sort_unstable();
        GradedFreeModule { generator_degrees }
    }

    pub fn rank(&self) -> usize {
        self.generator_degrees.len()
    }

    pub fn generator_degrees(&self) -> &[usize] {
        &self.generator_degrees
    }

    pub fn dim_at(&self, ring: &QuotientRing, s: usize) -> usize {
        self.layout(ring, s).dim
    }

    fn layout(&self, ring: &QuotientRing, s: usize) -> Layout {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (generator, &a) in self.generator_degrees.iter().enumerate() {
            if a > s {
                break;
            }
            let piece = ring.piece(s - a);
            let dim = piece.dim();
            blocks.push(Block {
                generator,
                offset,
                piece,
            });
            offset += dim;
        }
        Layout { blocks, dim: offset }
    }
}

/// A degree-preserving map of free modules, stored as the images of the
/// source generators in target coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedFreeModule,
    target: GradedFreeModule,
    /// `images[c]` lives in the degree-`a_c` piece of the target.
    images: Vec<Vec<u32>>,
}

impl GradedMap {
    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    /// `μ · v` for `v` in the degree-`a` piece of the target, landing in degree `a + deg μ`.
    fn multiply(&self, ring: &QuotientRing, v: &[u32], a: usize, mu: &Monomial) -> Vec<u32> {
        multiply_element(ring, &self.target, v, a, mu)
    }

    /// Matrix of the map in internal degree `s`; columns index the source
    /// piece, rows the target piece.
    pub fn matrix_at(&self, ring: &QuotientRing, s: usize) -> PrimeFieldMatrix {
        let rows = self.target.dim_at(ring, s);
        let src = self.source.layout(ring, s);
        let mut columns = Vec::with_capacity(src.dim);
        for block in &src.blocks {
            let a = self.source.generator_degrees[block.generator];
            for mu in block.piece.basis_monomials() {
                columns.push(self.multiply(ring, &self.images[block.generator], a, mu));
            }
        }
        PrimeFieldMatrix::from_columns(ring.field(), rows, &columns)
    }

    /// Entry `(r, c)` as a homogeneous polynomial of degree `a_c − a_r`
    /// (normal-form representative in `R`).
    pub fn entry(&self, ring: &QuotientRing, r: usize, c: usize) -> Poly {
        let a = self.source.generator_degrees[c];
        let layout = self.target.layout(ring, a);
        let mut p = Poly::zero(ring.field(), ring.ring().nvars());
        if let Some(block) = layout.blocks.iter().find(|b| b.generator == r) {
            let v = &self.images[c][block.offset..block.offset + block.piece.dim()];
            for (k, &x) in v.iter().enumerate() {
                p.add_term(block.piece.basis_monomial(k).clone(), x);
            }
        }
        p
    }

    /// No entry is a nonzero scalar.
    pub fn is_minimal(&self, ring: &QuotientRing) -> bool {
        (0..self.source.rank()).all(|c| {
            let a = self.source.generator_degrees[c];
            let layout = self.target.layout(ring, a);
            layout
                .blocks
                .iter()
                .filter(|b| self.target.generator_degrees[b.generator] == a)
                .all(|b| self.images[c][b.offset..b.offset + b.piece.dim()].iter().all(|&x| x == 0))
        })
    }
}

fn multiply_element(
    ring: &QuotientRing,
    module: &GradedFreeModule,
    v: &[u32],
    a: usize,
    mu: &Monomial,
) -> Vec<u32> {
    let e = mu.degree();
    let from = module.layout(ring, a);
    let to = module.layout(ring, a + e);
    let mut out = vec![0u32; to.dim];
    // Blocks of `from` are a prefix of the blocks of `to`.
    for (bf, bt) in from.blocks.iter().zip(&to.blocks) {
        debug_assert_eq!(bf.generator, bt.generator);
        let dst = &mut out[bt.offset..bt.offset + bt.piece.dim()];
        for (k, &x) in v[bf.offset..bf.offset + bf.piece.dim()].iter().enumerate() {
            if x != 0 {
                let m = bf.piece.basis_monomial(k).mul(mu);
                ring.accumulate_monomial(&bt.piece, &m, x, dst);
            }
        }
    }
    out
}

/// Betti numbers `b_{i,s}` of a minimal graded free resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), usize>,
    bounds: ResolutionBounds,
    /// The window was too small to see any syzygy of the module.
    truncated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRecord {
    pub i: usize,
    pub degree: usize,
    pub rank: usize,
}

impl BettiTable {
    pub fn from_entries(
        entries: impl IntoIterator<Item = ((usize, usize), usize)>,
        bounds: ResolutionBounds,
    ) -> Self {
        BettiTable {
            entries: entries.into_iter().filter(|&(_, r)| r > 0).collect(),
            bounds,
            truncated: false,
        }
    }

    pub fn get(&self, i: usize, s: usize) -> usize {
        self.entries.get(&(i, s)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn bounds(&self) -> ResolutionBounds {
        self.bounds
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Entries in the top degree of the window are flagged; the oracle's
    /// comparisons skip them.
    pub fn is_frontier(&self, _i: usize, s: usize) -> bool {
        s >= self.bounds.max_internal
    }

    /// Whether `(i, s)` lies in the computed window.
    pub fn covers(&self, i: usize, s: usize) -> bool {
        i <= self.bounds.max_homological && s <= self.bounds.max_internal
    }

    pub fn max_index(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// `Σ_s b_{i,s}` for `i = 0..=max_index`.
    pub fn totals(&self) -> Vec<usize> {
        let mut t = vec![0; self.max_index() + 1];
        for (&(i, _), &r) in &self.entries {
            t[i] += r;
        }
        t
    }

    /// Every entry sits on the diagonal `s = i`.
    pub fn is_linear(&self) -> bool {
        self.entries.keys().all(|&(i, s)| i == s)
    }

    pub fn records(&self) -> Vec<BettiRecord> {
        self.entries
            .iter()
            .map(|(&(i, degree), &rank)| BettiRecord { i, degree, rank })
            .collect()
    }
}

impl fmt::Display for BettiTable {
    /// Macaulay2 layout: column `i`, row `s − i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.max_index() + 1;
        let max_row = self
            .entries
            .keys()
            .map(|&(i, s)| s.saturating_sub(i))
            .max()
            .unwrap_or(0);
        let min_row = self
            .entries
            .keys()
            .map(|&(i, s)| s.saturating_sub(i))
            .min()
            .unwrap_or(0);
        let totals = self.totals();
        let width = totals
            .iter()
            .map(|t| t.to_string().len())
            .chain((0..cols).map(|i| i.to_string().len()))
            .max()
            .unwrap_or(1);
        let label_width = "total:".len().max(max_row.to_string().len() + 1);
        write!(f, "{:>label_width$}", "")?;
        for i in 0..cols {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "{:>label_width$}", "total:")?;
        for t in &totals {
            write!(f, " {t:>width$}")?;
        }
        writeln!(f)?;
        for row in min_row..=max_row {
            write!(f, "{:>label_width$}", format!("{row}:"))?;
            for i in 0..cols {
                let r = self.get(i, i + row);
                if r == 0 {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {r:>width$}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Resolved {
    ResidueField,
    AmbientQuotient(GradedIdeal),
}

/// A minimal graded free resolution `⋯ → F_1 → F_0`, computed within bounds.
#[derive(Debug, Clone)]
pub struct Resolution {
    ring: QuotientRing,
    resolved: Resolved,
    bounds: ResolutionBounds,
    modules: Vec<GradedFreeModule>,
    maps: Vec<GradedMap>,
    /// Some `F_p` came out zero within the window, so the resolution stops there.
    terminated: bool,
    betti: BettiTable,
}

/// Location where a resolution fails to be exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactnessFailure {
    pub step: usize,
    pub degree: usize,
}

impl Resolution {
    pub fn betti(&self) -> &BettiTable {
        &self.betti
    }

    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn bounds(&self) -> ResolutionBounds {
        self.bounds
    }

    pub fn into_betti(self) -> BettiTable {
        self.betti
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.is_minimal(&self.ring))
    }

    fn augmentation_kernel(&self, s: usize) -> PrimeFieldMatrix {
        initial_kernel(&self.ring, &self.resolved, s)
    }

    /// Checks `im d_p = ker d_{p−1}` in every degree of the window, and
    /// `ker d_last = 0` when the resolution terminated.
    pub fn check_exactness(&self) -> Result<(), ExactnessFailure> {
        let field = self.ring.field();
        for s in 0..=self.bounds.max_internal {
            for (idx, map) in self.maps.iter().enumerate() {
                let step = idx + 1;
                let image = map.matrix_at(&self.ring, s);
                let kernel = if step == 1 {
                    self.augmentation_kernel(s)
                } else {
                    kernel_basis(&self.maps[idx - 1].matrix_at(&self.ring, s))
                };
                let fail = ExactnessFailure { step, degree: s };
                if image.rank() != kernel.rows() {
                    return Err(fail);
                }
                // Image inside kernel.
                let mut span = EchelonBasis::new(field, kernel.cols());
                for r in 0..kernel.rows() {
                    span.insert(kernel.row(r));
                }
                let t = image.transpose();
                if (0..t.rows()).any(|c| !span.contains(t.row(c))) {
                    return Err(fail);
                }
            }
            if self.terminated {
                if let Some(last) = self.maps.last() {
                    if kernel_basis(&last.matrix_at(&self.ring, s)).rows() != 0 {
                        return Err(ExactnessFailure {
                            step: self.maps.len() + 1,
                            degree: s,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn initial_kernel(ring: &QuotientRing, resolved: &Resolved, s: usize) -> PrimeFieldMatrix {
    match resolved {
        Resolved::ResidueField => {
            let dim = ring.dim(s);
            if s == 0 {
                PrimeFieldMatrix::zeros(ring.field(), 0, dim)
            } else {
                PrimeFieldMatrix::identity(ring.field(), dim)
            }
        }
        Resolved::AmbientQuotient(ideal) => ideal_piece(ideal, ring.ring(), s),
    }
}

fn resolve(ring: QuotientRing, resolved: Resolved, bounds: ResolutionBounds) -> Resolution {
    let field = ring.field();
    let mut modules = vec![GradedFreeModule::new(vec![0])];
    let mut maps: Vec<GradedMap> = Vec::new();
    let mut terminated = false;

    for p in 1..=bounds.max_homological {
        let target = modules[p - 1].clone();
        let mut degrees: Vec<usize> = Vec::new();
        let mut images: Vec<Vec<u32>> = Vec::new();
        for s in 0..=bounds.max_internal {
            let kernel = if p == 1 {
                initial_kernel(&ring, &resolved, s)
            } else {
                kernel_basis(&maps[p - 2].matrix_at(&ring, s))
            };
            if kernel.rows() == 0 {
                continue;
            }
            let mut span = EchelonBasis::new(field, kernel.cols());
            for (c, &a) in degrees.iter().enumerate() {
                if a >= s {
                    continue;
                }
                for mu in ring.piece(s - a).basis_monomials() {
                    span.insert(&multiply_element(&ring, &target, &images[c], a, mu));
                }
            }
            for r in 0..kernel.rows() {
                if span.insert(kernel.row(r)) {
                    degrees.push(s);
                    images.push(kernel.row(r).to_vec());
                }
            }
        }
        if degrees.is_empty() {
            terminated = true;
            break;
        }
        let source = GradedFreeModule::new(degrees);
        maps.push(GradedMap {
            source: source.clone(),
            target,
            images,
        });
        modules.push(source);
    }

    let mut entries = BTreeMap::new();
    for (i, m) in modules.iter().enumerate() {
        for &a in m.generator_degrees() {
            *entries.entry((i, a)).or_insert(0) += 1;
        }
    }
    let truncated = match &resolved {
        Resolved::ResidueField => bounds.max_internal == 0 && bounds.max_homological > 0,
        Resolved::AmbientQuotient(ideal) => ideal
            .degrees()
            .iter()
            .min()
            .is_some_and(|&d| d > bounds.max_internal),
    };
    Resolution {
        ring,
        resolved,
        bounds,
        modules,
        maps,
        terminated,
        betti: BettiTable {
            entries,
            bounds,
            truncated,
        },
    }
}

/// Minimal resolution of `k` over `R`. Entry `(p, s)` of the Betti table is
/// `dim Ext^p_R(k,k)` in internal degree `−s`.
pub fn resolve_field(ring: &QuotientRing, bounds: ResolutionBounds) -> Result<Resolution, ResolutionError> {
    let d0 = ring.dim(0);
    if d0 != 1 {
        return Err(ResolutionError::NotConnected(d0));
    }
    Ok(resolve(ring.clone(), Resolved::ResidueField, bounds))
}

/// Minimal resolution of `A/I` over `A`.
pub fn resolve_quotient_over_ambient(
    ambient: &PolyRing,
    ideal: &GradedIdeal,
    bounds: ResolutionBounds,
) -> Result<Resolution, ResolutionError> {
    if ideal.degrees().contains(&0) {
        return Err(ResolutionError::NotConnected(0));
    }
    Ok(resolve(
        QuotientRing::ambient(ambient.clone()),
        Resolved::AmbientQuotient(ideal.clone()),
        bounds,
    ))
}

/// Bounded evidence for Koszulity: the resolution of `k` is linear within
/// the window. Never a proof.
pub fn koszul_evidence(ring: &QuotientRing, bounds: ResolutionBounds) -> Result<bool, ResolutionError> {
    Ok(resolve_field(ring, bounds)?.betti().is_linear())
}

/// Shape of the resolution of `A/I` over `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlmostLinearity {
    /// No relations within the window (`R = A` as far as the bounds see).
    ZeroIdeal,
    /// `P_i ≅ A(−d−i+1)^{b_i}` for `1 ≤ i ≤ b.len()`.
    AlmostLinear {
        d: usize,
        b: Vec<u64>,
        verified_up_to: ResolutionBounds,
    },
    /// `witness` breaks the pattern; `conflicting` is the entry that fixed
    /// the expected degree (for step 1, another generator degree).
    NotAlmostLinear {
        witness: (usize, usize),
        conflicting: Option<(usize, usize)>,
    },
}

pub fn check_almost_linear(bt: &BettiTable) -> AlmostLinearity {
    let first: Vec<usize> = bt
        .entries()
        .filter(|&((i, _), _)| i == 1)
        .map(|((_, s), _)| s)
        .collect();
    let Some(&d) = first.first() else {
        return AlmostLinearity::ZeroIdeal;
    };
    if let Some(&other) = first.get(1) {
        return AlmostLinearity::NotAlmostLinear {
            witness: (1, other),
            conflicting: Some((1, d)),
        };
    }
    let mut b = Vec::new();
    for ((i, s), r) in bt.entries() {
        if i == 0 {
            continue;
        }
        if s != d + i - 1 {
            return AlmostLinearity::NotAlmostLinear {
                witness: (i, s),
                conflicting: Some((1, d)),
            };
        }
        if b.len() < i {
            b.resize(i, 0);
        }
        b[i - 1] = r as u64;
    }
    AlmostLinearity::AlmostLinear {
        d,
        b,
        verified_up_to: bt.bounds(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;
    use crate::polyalgebra::{binomial, monomial_basis, MonomialOrder};

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::new(vars.iter().copied(), FieldSpec::default()).unwrap()
    }

    fn mono_poly(r: &PolyRing, e: &[u16]) -> Poly {
        Poly::monomial(r.field(), Monomial::from_exponents(e.to_vec()), 1)
    }

    fn max_power(r: &PolyRing, k: usize) -> GradedIdeal {
        let gens = monomial_basis(r, k)
            .into_iter()
            .map(|m| Poly::monomial(r.field(), m, 1))
            .collect();
        GradedIdeal::new(r, gens).unwrap()
    }

    fn table(entries: &[((usize, usize), usize)]) -> Vec<((usize, usize), usize)> {
        entries.to_vec()
    }

    #[test]
    fn hypersurface_in_one_variable_is_periodic() {
        let r = ring(&["x"]);
        let q = QuotientRing::new(r.clone(), GradedIdeal::new(&r, vec![mono_poly(&r, &[4])]).unwrap());
        let res = resolve_field(&q, ResolutionBounds::new(4, 10)).unwrap();
        assert_eq!(
            res.betti().entries().collect::<Vec<_>>(),
            table(&[((0, 0), 1), ((1, 1), 1), ((2, 4), 1), ((3, 5), 1), ((4, 8), 1)])
        );
        assert!(res.is_minimal());
        res.check_exactness().unwrap();
    }

    #[test]
    fn polynomial_ring_gives_koszul_complex() {
        let r = ring(&["x", "y"]);
        let res = resolve_field(&QuotientRing::ambient(r), ResolutionBounds::new(4, 6)).unwrap();
        assert_eq!(
            res.betti().entries().collect::<Vec<_>>(),
            table(&[((0, 0), 1), ((1, 1), 2), ((2, 2), 1)])
        );
        res.check_exactness().unwrap();

        let r3 = ring(&["x", "y", "z"]);
        let res3 = resolve_field(&QuotientRing::ambient(r3), ResolutionBounds::new(5, 6)).unwrap();
        for p in 0..=3 {
            assert_eq!(res3.betti().get(p, p) as u128, binomial(3, p));
        }
        assert_eq!(res3.betti().totals().len(), 4);
    }

    #[test]
    fn xy_quotient_is_koszul() {
        let r = ring(&["x", "y"]);
        let q = QuotientRing::new(r.clone(), GradedIdeal::new(&r, vec![mono_poly(&r, &[1, 1])]).unwrap());
        let res = resolve_field(&q, ResolutionBounds::new(5, 7)).unwrap();
        assert_eq!(res.betti().totals(), vec![1, 2, 2, 2, 2, 2]);
        assert!(res.betti().is_linear());
        assert!(koszul_evidence(&q, ResolutionBounds::new(4, 6)).unwrap());
        res.check_exactness().unwrap();
    }

    #[test]
    fn max_ideal_power_over_ambient() {
        let r = ring(&["x", "y"]);
        let res = resolve_quotient_over_ambient(&r, &max_power(&r, 4), ResolutionBounds::new(4, 10)).unwrap();
        assert_eq!(
            res.betti().entries().collect::<Vec<_>>(),
            table(&[((0, 0), 1), ((1, 4), 5), ((2, 5), 4)])
        );
        res.check_exactness().unwrap();
        assert!(res.is_minimal());
        assert_eq!(
            check_almost_linear(res.betti()),
            AlmostLinearity::AlmostLinear {
                d: 4,
                b: vec![5, 4],
                verified_up_to: ResolutionBounds::new(4, 10)
            }
        );
    }

    #[test]
    fn hypersurface_over_ambient() {
        let r = ring(&["x", "y", "z"]);
        let f = mono_poly(&r, &[2, 2, 1]).add(&mono_poly(&r, &[0, 0, 5]));
        let ideal = GradedIdeal::new(&r, vec![f]).unwrap();
        let res = resolve_quotient_over_ambient(&r, &ideal, ResolutionBounds::new(3, 8)).unwrap();
        assert_eq!(res.betti().entries().collect::<Vec<_>>(), table(&[((0, 0), 1), ((1, 5), 1)]));
        assert!(matches!(
            check_almost_linear(res.betti()),
            AlmostLinearity::AlmostLinear { d: 5, ref b, .. } if b == &vec![1]
        ));
    }

    #[test]
    fn complete_intersection_is_not_almost_linear() {
        let r = ring(&["x", "y"]);
        let ideal = GradedIdeal::new(&r, vec![mono_poly(&r, &[4, 0]), mono_poly(&r, &[0, 5])]).unwrap();
        let res = resolve_quotient_over_ambient(&r, &ideal, ResolutionBounds::new(3, 12)).unwrap();
        assert_eq!(
            res.betti().entries().collect::<Vec<_>>(),
            table(&[((0, 0), 1), ((1, 4), 1), ((1, 5), 1), ((2, 9), 1)])
        );
        assert_eq!(
            check_almost_linear(res.betti()),
            AlmostLinearity::NotAlmostLinear {
                witness: (1, 5),
                conflicting: Some((1, 4))
            }
        );
    }

    #[test]
    fn zero_ideal_and_truncation() {
        let r = ring(&["x", "y"]);
        let res = resolve_quotient_over_ambient(&r, &GradedIdeal::zero(), ResolutionBounds::new(3, 5)).unwrap();
        assert_eq!(check_almost_linear(res.betti()), AlmostLinearity::ZeroIdeal);
        assert!(!res.betti().is_truncated());

        let short = resolve_quotient_over_ambient(&r, &max_power(&r, 4), ResolutionBounds::new(3, 3)).unwrap();
        assert!(short.betti().is_truncated());
        assert_eq!(check_almost_linear(short.betti()), AlmostLinearity::ZeroIdeal);
    }

    #[test]
    fn unit_ideal_is_rejected() {
        let r = ring(&["x"]);
        let q = QuotientRing::new(r.clone(), GradedIdeal::new(&r, vec![r.one()]).unwrap());
        assert_eq!(
            resolve_field(&q, ResolutionBounds::new(2, 3)).unwrap_err(),
            ResolutionError::NotConnected(0)
        );
    }

    #[test]
    fn basis_choice_invariance() {
        let r = ring(&["x", "y", "z"]);
        let gens = |r: &PolyRing| {
            vec![
                mono_poly(r, &[1, 1, 0]).sub(&mono_poly(r, &[0, 0, 2])),
                mono_poly(r, &[2, 0, 0]).add(&mono_poly(r, &[0, 1, 1]).scale(3)),
            ]
        };
        let bounds = ResolutionBounds::new(3, 6);
        let a = {
            let q = QuotientRing::new(r.clone(), GradedIdeal::new(&r, gens(&r)).unwrap());
            resolve_field(&q, bounds).unwrap().into_betti()
        };
        let rr = r.clone().with_order(MonomialOrder::GRevLex);
        let b = {
            let q = QuotientRing::new(rr.clone(), GradedIdeal::new(&rr, gens(&rr)).unwrap());
            resolve_field(&q, bounds).unwrap().into_betti()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn map_entries_are_homogeneous_of_the_right_degree() {
        let r = ring(&["x", "y"]);
        let res = resolve_quotient_over_ambient(&r, &max_power(&r, 3), ResolutionBounds::new(3, 8)).unwrap();
        let q = res.ring().clone();
        for map in res.maps() {
            for c in 0..map.source().rank() {
                for rr in 0..map.target().rank() {
                    let e = map.entry(&q, rr, c);
                    if let Some(deg) = e.homogeneous_degree() {
                        assert_eq!(
                            deg,
                            map.source().generator_degrees()[c] - map.target().generator_degrees()[rr]
                        );
                    }
                }
            }
        }
        // d_1 entries are the cubic generators themselves.
        let d1 = &res.maps()[0];
        assert!((0..d1.source().rank()).all(|c| d1.entry(&q, 0, c).homogeneous_degree() == Some(3)));
    }

    #[test]
    fn betti_display_is_macaulay_style() {
        let r = ring(&["x", "y"]);
        let res = resolve_quotient_over_ambient(&r, &max_power(&r, 4), ResolutionBounds::new(4, 10)).unwrap();
        let text = res.betti().to_string();
        let expected = "       0 1 2\ntotal: 1 5 4\n    0: 1 . .\n    1: . . .\n    2: . . .\n    3: . 5 4\n";
        assert_eq!(text, expected);
    }
}
