//! End-to-end runs behind the command-line tool.
//!
//! `verify`: resolve `R = A/I` over `A`, check almost linearity, predict Ext
//! from `A^!` and the Betti numbers, resolve `k` over `R`, and compare.

use thiserror::Error;

use crate::determinantal::{
    self, en_betti, generic_minors_ideal, hypothesis_warning, power_ideal, render_matrix,
    univariate_denominator, DeterminantalError, GenericMatrixSpec, PowerIdealSpec,
};
use crate::polyalgebra::{binomial, monomial_count, GradedIdeal, PolyRing, QuotientRing};
use crate::predictor::{
    classify_degree_pattern, compare_tables, congruence_check, predict_recurrence, predict_series,
    series_to_table, ExtTable, PredictionInput, PredictorError,
};
use crate::quadratic::{commutative_presentation, polynomial_ring_dual_dims, QuadraticError, TensorGuard};
use crate::report::{ClosedForm, Outcome, Report, Status};
use crate::resolution::{
    check_almost_linear, resolve_field, resolve_quotient_over_ambient, AlmostLinearity, BettiTable,
    ResolutionBounds, ResolutionError,
};
use crate::series::BiSeries;

/// Default cap on estimated dense matrix cells.
pub const DEFAULT_COST_CAP: u128 = 20_000_000;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Quadratic(#[from] QuadraticError),
    #[error(transparent)]
    Predictor(#[from] PredictorError),
    #[error(transparent)]
    Determinantal(#[from] DeterminantalError),
    #[error("series and recurrence predictions disagree at (p={0}, s={1})")]
    PredictorsDisagree(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    pub bounds: ResolutionBounds,
    pub cost_cap: u128,
    pub tensor_guard: TensorGuard,
}

impl PipelineConfig {
    pub fn new(bounds: ResolutionBounds) -> Self {
        PipelineConfig {
            bounds,
            cost_cap: DEFAULT_COST_CAP,
            tensor_guard: TensorGuard::default(),
        }
    }
}

/// Rows spanning `I_s` times `dim A_s`, summed over `s ≤ top`: the dense work
/// of building the ideal pieces.
pub fn ideal_cost(nvars: usize, degrees: &[usize], top: usize) -> u128 {
    (0..=top)
        .map(|s| {
            let rows: u128 = degrees
                .iter()
                .filter(|&&e| e <= s)
                .map(|&e| monomial_count(nvars, s - e))
                .fold(0u128, u128::saturating_add);
            rows.saturating_mul(monomial_count(nvars, s))
        })
        .fold(0, u128::saturating_add)
}

/// Dense work of resolving `k` over `R`, from a predicted Ext table and the
/// Hilbert function of `R`: `Σ dim F_p(s) · dim F_{p−1}(s)`.
pub fn oracle_cost(ext: &ExtTable, hilbert: &[usize], bounds: ResolutionBounds) -> u128 {
    let rank_at = |p: usize, s: usize| -> u128 {
        ext.entries()
            .filter(|&((q, t), _)| q == p && t <= s)
            .map(|((_, t), v)| {
                let h = hilbert.get(s - t).copied().unwrap_or(0) as u128;
                u128::try_from(v).unwrap_or(u128::MAX).saturating_mul(h)
            })
            .fold(0u128, u128::saturating_add)
    };
    let mut total = 0u128;
    for p in 1..=bounds.max_homological {
        for s in 0..=bounds.max_internal {
            total = total.saturating_add(rank_at(p, s).saturating_mul(rank_at(p - 1, s)));
        }
    }
    total
}

fn describe_ring(ring: &PolyRing, ideal: &GradedIdeal) -> String {
    let gens: Vec<String> = ideal.generators().iter().map(|g| ring.render(g)).collect();
    format!(
        "F_{}[{}]/({})",
        ring.field().characteristic(),
        ring.variables().join(", "),
        gens.join(", ")
    )
}

fn new_report(command: &str, ring: &PolyRing, ideal: Option<&GradedIdeal>, bounds: ResolutionBounds) -> Report {
    let mut r = Report::new(command, ring.field().characteristic(), bounds);
    r.ring = Some(match ideal {
        Some(i) => describe_ring(ring, i),
        None => format!(
            "F_{}[{}]",
            ring.field().characteristic(),
            ring.variables().join(", ")
        ),
    });
    r
}

/// Window for the resolution of `A/I` over `A`, and whether it provably
/// holds the whole resolution.
///
/// If `R_{s₀} = 0` then every Betti number `b_{i,s}` of `A/I` has
/// `s ≤ s₀ − 1 + i`, so a window reaching `s₀ − 1 + nvars` is complete.
/// Otherwise the window is `max_deg` and entries beyond it are not seen.
pub fn ambient_window(ring: &PolyRing, ideal: &GradedIdeal, max_deg: usize) -> (ResolutionBounds, bool) {
    let nvars = ring.nvars().max(1);
    let q = QuotientRing::new(ring.clone(), ideal.clone());
    match (0..=max_deg).find(|&s| q.dim(s) == 0) {
        Some(s0) => (ResolutionBounds::new(nvars, max_deg.max(s0 + nvars - 1)), true),
        None => (ResolutionBounds::new(nvars, max_deg), false),
    }
}

/// Guards and computes [`ambient_window`]; `None` when the guard trips.
fn checked_window(
    report: &mut Report,
    ring: &PolyRing,
    ideal: &GradedIdeal,
    cfg: &PipelineConfig,
) -> Option<ResolutionBounds> {
    let cost = ideal_cost(ring.nvars(), ideal.degrees(), cfg.bounds.max_internal);
    if guard(report, "Hilbert function of R", cost, cfg.cost_cap, false) {
        return None;
    }
    let (window, complete) = ambient_window(ring, ideal, cfg.bounds.max_internal);
    report.notes.push(if complete {
        format!(
            "R is Artinian, so the resolution of R over A up to internal degree {} is complete",
            window.max_internal
        )
    } else {
        format!(
            "R is not Artinian within max_deg: Betti numbers of R over A beyond internal degree {} are not checked",
            window.max_internal
        )
    });
    Some(window)
}

fn guard(report: &mut Report, stage: &str, estimate: u128, cap: u128, example: bool) -> bool {
    if estimate <= cap {
        return false;
    }
    let stage = stage.to_string();
    report.outcome = if example {
        Outcome::Unverified { stage, estimate, cap }
    } else {
        Outcome::ResourceGuard { stage, estimate, cap }
    };
    true
}

fn univariate(series: &BiSeries) -> (Vec<String>, bool) {
    let u = series.specialize_u();
    (u.coeffs.iter().map(ToString::to_string).collect(), u.possibly_truncated)
}

/// Stage 1: resolution of `A/I` over `A` and the almost linear check.
/// Returns the resolution shape when the run may continue.
fn ambient_stage(
    report: &mut Report,
    ring: &PolyRing,
    ideal: &GradedIdeal,
    window: ResolutionBounds,
    cfg: &PipelineConfig,
    example: bool,
) -> Result<Option<AlmostLinearity>, PipelineError> {
    let cost = ideal_cost(ring.nvars(), ideal.degrees(), window.max_internal);
    if guard(report, "resolution of R over A", cost, cfg.cost_cap, example) {
        return Ok(None);
    }
    let amb = resolve_quotient_over_ambient(ring, ideal, window)?;
    report.set_ambient(amb.betti());
    let shape = check_almost_linear(amb.betti());
    match &shape {
        AlmostLinearity::NotAlmostLinear { witness, conflicting } => {
            let message = match conflicting {
                Some(c) if witness.0 == 1 && c.0 == 1 => {
                    let (lo, hi) = (c.1.min(witness.1), c.1.max(witness.1));
                    format!("generators in degrees {lo} and {hi}; an almost linear resolution needs a single generator degree")
                }
                Some(c) => format!(
                    "step {} has a generator in degree {}, expected {} from d = {}",
                    witness.0,
                    witness.1,
                    c.1 + witness.0 - 1,
                    c.1
                ),
                None => format!("unexpected Betti entry at ({}, {})", witness.0, witness.1),
            };
            report.notes.push(format!("hypothesis failure: {message}"));
            report.outcome = Outcome::NotAlmostLinear {
                witness: (*witness).into(),
                conflicting: conflicting.map(Into::into),
                message,
            };
            report.status = Some(Status::OutOfHypothesis);
            Ok(None)
        }
        AlmostLinearity::ZeroIdeal => {
            report.notes.push("no relations in the window: R = A, which is Koszul".into());
            Ok(Some(shape))
        }
        AlmostLinearity::AlmostLinear { d, b, .. } => {
            report.d = Some(*d);
            report.b = b.clone();
            Ok(Some(shape))
        }
    }
}

/// Prediction input for `R = A/I` with `A` the ambient polynomial ring.
fn prediction(
    report: &mut Report,
    ring: &PolyRing,
    shape: &AlmostLinearity,
    cfg: &PipelineConfig,
) -> Result<Option<(ExtTable, usize)>, PipelineError> {
    let (d, b) = match shape {
        AlmostLinearity::AlmostLinear { d, b, .. } => (*d, b.clone()),
        AlmostLinearity::ZeroIdeal => (2, Vec::new()),
        AlmostLinearity::NotAlmostLinear { .. } => return Ok(None),
    };
    if d < 2 {
        report.status = Some(Status::OutOfHypothesis);
        report
            .notes
            .push("linear relations: R is a polynomial ring after a change of variables; no prediction".into());
        return Ok(None);
    }
    let dual = polynomial_ring_dual_dims(ring, cfg.bounds.max_homological, &cfg.tensor_guard)?;
    if let Some(m) = dual.cross_checked_up_to {
        report
            .notes
            .push(format!("Koszul dual dims cross-checked against the tensor algebra up to degree {m}"));
    }
    report.dual_dims = dual.dims.clone();
    let input = PredictionInput::new(dual.dims, b, d, cfg.bounds)?;
    let rec = predict_recurrence(&input);
    let series = predict_series(&input);
    let from_series = series_to_table(&series)?;
    if from_series != rec {
        let bad = rec
            .entries()
            .map(|(k, _)| k)
            .chain(from_series.entries().map(|(k, _)| k))
            .find(|&(p, s)| rec.get(p, s) != from_series.get(p, s))
            .unwrap_or((0, 0));
        return Err(PipelineError::PredictorsDisagree(bad.0, bad.1));
    }
    report.set_predicted(&rec);
    report.series = Some(series.to_string());
    let (u1, truncated) = univariate(&series);
    report.series_at_u1 = u1;
    if truncated {
        report
            .notes
            .push("series at u = 1: high coefficients may be cut off by max_deg".into());
    }
    Ok(Some((rec, d)))
}

/// Resolution of `k` over `R` and the comparison.
fn oracle_stage(
    report: &mut Report,
    ring: &PolyRing,
    ideal: &GradedIdeal,
    predicted: &ExtTable,
    d: Option<usize>,
    cfg: &PipelineConfig,
    example: bool,
) -> Result<Option<BettiTable>, PipelineError> {
    let bounds = cfg.bounds;
    let cost = ideal_cost(ring.nvars(), ideal.degrees(), bounds.max_internal);
    if guard(report, "Hilbert function of R", cost, cfg.cost_cap, example) {
        return Ok(None);
    }
    let q = QuotientRing::new(ring.clone(), ideal.clone());
    let hilbert = q.hilbert_series(bounds.max_internal);
    let cost = oracle_cost(predicted, &hilbert, bounds);
    if guard(report, "resolution of k over R", cost, cfg.cost_cap, example) {
        return Ok(None);
    }
    let res = resolve_field(&q, bounds)?;
    let oracle = res.into_betti();
    report.set_oracle(&oracle);
    let diff = compare_tables(predicted, &oracle, bounds);
    report.set_diff(&diff);
    report.verified = true;
    let oracle_ext = ExtTable::from_betti(&oracle);
    report.pattern = Some(classify_degree_pattern(&oracle_ext).to_string());
    match d {
        Some(3) => report
            .notes
            .push("congruence check skipped: modulo d - 2 = 1 it holds trivially".into()),
        Some(d) if d >= 2 => report.set_congruence(&congruence_check(&oracle_ext, d)?),
        _ => {}
    }
    Ok(Some(oracle))
}

fn finish(report: &mut Report) {
    let status = report.status.unwrap_or_else(|| Status::for_degree(report.d));
    report.status = Some(status);
    if !matches!(report.outcome, Outcome::Ok) {
        return;
    }
    let mismatches = report.mismatch_count();
    let congruence_failed = report.congruence.as_ref().is_some_and(|c| !c.pass);
    if status == Status::ConjectureEvidence {
        let agreed = report.diff.as_ref().map_or(0, |d| d.agreed.len());
        report.notes.push(format!(
            "d = 3 conjecture evidence: {agreed} entries agree, {mismatches} mismatch"
        ));
    } else if status.is_proved() && (mismatches > 0 || congruence_failed) {
        report.outcome = Outcome::Mismatch { count: mismatches };
    }
}

fn verify_stages(
    report: &mut Report,
    ring: &PolyRing,
    ideal: &GradedIdeal,
    window: ResolutionBounds,
    cfg: &PipelineConfig,
    example: bool,
) -> Result<(), PipelineError> {
    let Some(shape) = ambient_stage(report, ring, ideal, window, cfg, example)? else {
        return Ok(());
    };
    if matches!(shape, AlmostLinearity::ZeroIdeal) {
        report.status = Some(Status::OutOfHypothesis);
    }
    let Some((predicted, d)) = prediction(report, ring, &shape, cfg)? else {
        return Ok(());
    };
    let d = report.d.map(|_| d);
    oracle_stage(report, ring, ideal, &predicted, d, cfg, example)?;
    Ok(())
}

pub fn run_verify(ring: &PolyRing, ideal: &GradedIdeal, cfg: &PipelineConfig) -> Result<Report, PipelineError> {
    let mut report = new_report("verify", ring, Some(ideal), cfg.bounds);
    if let Some(window) = checked_window(&mut report, ring, ideal, cfg) {
        verify_stages(&mut report, ring, ideal, window, cfg, false)?;
    }
    finish(&mut report);
    Ok(report)
}

/// Prediction only: stages up to the predicted Ext table.
pub fn run_predict(ring: &PolyRing, ideal: &GradedIdeal, cfg: &PipelineConfig) -> Result<Report, PipelineError> {
    let mut report = new_report("predict", ring, Some(ideal), cfg.bounds);
    let Some(window) = checked_window(&mut report, ring, ideal, cfg) else {
        return Ok(report);
    };
    if let Some(shape) = ambient_stage(&mut report, ring, ideal, window, cfg, false)? {
        if matches!(shape, AlmostLinearity::ZeroIdeal) {
            report.status = Some(Status::OutOfHypothesis);
        }
        if let Some((rec, _)) = prediction(&mut report, ring, &shape, cfg)? {
            report.pattern = Some(classify_degree_pattern(&rec).to_string());
        }
    }
    report.status = Some(report.status.unwrap_or_else(|| Status::for_degree(report.d)));
    Ok(report)
}

/// Betti table of `R` over `A` and the almost linear check.
pub fn run_betti(ring: &PolyRing, ideal: &GradedIdeal, cfg: &PipelineConfig) -> Result<Report, PipelineError> {
    let mut report = new_report("betti", ring, Some(ideal), cfg.bounds);
    let cost = ideal_cost(ring.nvars(), ideal.degrees(), cfg.bounds.max_internal);
    if guard(&mut report, "resolution of R over A", cost, cfg.cost_cap, false) {
        return Ok(report);
    }
    let window = ResolutionBounds::new(ring.nvars().max(1), cfg.bounds.max_internal);
    let amb = resolve_quotient_over_ambient(ring, ideal, window)?;
    report.set_ambient(amb.betti());
    match check_almost_linear(amb.betti()) {
        AlmostLinearity::AlmostLinear { d, b, .. } => {
            report.d = Some(d);
            report.b = b;
        }
        AlmostLinearity::NotAlmostLinear { witness, .. } => report
            .notes
            .push(format!("not almost linear: Betti entry at ({}, {})", witness.0, witness.1)),
        AlmostLinearity::ZeroIdeal => report.notes.push("zero ideal".into()),
    }
    Ok(report)
}

/// Resolution of `k` over `R` (the oracle alone).
pub fn run_resolve(ring: &PolyRing, ideal: &GradedIdeal, cfg: &PipelineConfig) -> Result<Report, PipelineError> {
    let mut report = new_report("resolve", ring, Some(ideal), cfg.bounds);
    let bounds = cfg.bounds;
    let cost = ideal_cost(ring.nvars(), ideal.degrees(), bounds.max_internal);
    if guard(&mut report, "Hilbert function of R", cost, cfg.cost_cap, false) {
        return Ok(report);
    }
    let q = QuotientRing::new(ring.clone(), ideal.clone());
    let res = resolve_field(&q, bounds)?;
    let oracle = res.into_betti();
    report.set_oracle(&oracle);
    let table = ExtTable::from_betti(&oracle);
    report.pattern = Some(classify_degree_pattern(&table).to_string());
    if oracle.is_linear() {
        report
            .notes
            .push("linear within the window: evidence (not proof) that R is Koszul".into());
    }
    Ok(report)
}

/// Koszul dual of the ambient polynomial ring.
pub fn run_dual(ring: &PolyRing, cfg: &PipelineConfig) -> Result<Report, PipelineError> {
    let mut report = new_report("dual", ring, None, cfg.bounds);
    let dual = polynomial_ring_dual_dims(ring, cfg.bounds.max_homological, &cfg.tensor_guard)?;
    report.dual_dims = dual.dims;
    if let Some(m) = dual.cross_checked_up_to {
        report
            .notes
            .push(format!("fast path cross-checked against the tensor algebra up to degree {m}"));
    }
    let perp = commutative_presentation(ring).perp();
    for rel in perp.render("ξ") {
        report.notes.push(format!("dual relation: {rel}"));
    }
    Ok(report)
}

/// Which determinantal family to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleKind {
    Determinantal { n: usize, m: usize },
    Power { n: usize, s: usize },
}

fn render_denominator(b: &[u64]) -> String {
    let mut out = String::from("1");
    for (k, c) in univariate_denominator(b).iter().enumerate().skip(1) {
        match -c {
            0 => {}
            1 => out.push_str(&format!(" - t^{k}")),
            c => out.push_str(&format!(" - {c}*t^{k}")),
        }
    }
    out
}

/// Closed form, then (if the cost guard allows) the full verification on the
/// constructed ideal.
pub fn run_example(kind: ExampleKind, field: crate::linalg::FieldSpec, cfg: &PipelineConfig) -> Result<Report, PipelineError> {
    let bounds = cfg.bounds;
    let (n, m, vars, closed_series, numerator) = match kind {
        ExampleKind::Determinantal { n, m } => {
            GenericMatrixSpec::new(n, m)?;
            (n, m, n * m, determinantal::en_poincare_series(n, m, bounds)?, format!("(1+t)^{}", n * m))
        }
        ExampleKind::Power { n, s } => {
            let spec = PowerIdealSpec::new(n, s)?;
            (
                n,
                spec.m(),
                s + 1,
                determinantal::power_ideal_poincare_series(n, s, bounds)?,
                format!("(1+t)^{}", s + 1),
            )
        }
    };
    let closed_b = en_betti(n, m)?;
    let (command, label) = match kind {
        ExampleKind::Determinantal { .. } => ("example determinantal", format!("generic {n}x{m} maximal minors")),
        ExampleKind::Power { s, .. } => ("example power", format!("(x0..x{s})^{n}")),
    };
    let mut report = Report::new(command, field.characteristic(), bounds);
    report.ring = Some(format!("{label} in {vars} variables over F_{}", field.characteristic()));
    report.series = Some(closed_series.to_string());
    let (u1, truncated) = univariate(&closed_series);
    report.series_at_u1 = u1;
    if truncated {
        report
            .notes
            .push("closed-form series at u = 1: high coefficients may be cut off by max_deg".into());
    }
    if let Some(w) = hypothesis_warning(n) {
        report.notes.push(format!("warning: {w}"));
    }
    report.notes.push(format!(
        "the final Betti number b_{} = {} sits at t^{} (general term b_(i+1) t^(i+2))",
        closed_b.len(),
        closed_b.last().copied().unwrap_or(0),
        closed_b.len() + 1
    ));
    if let ExampleKind::Power { s, .. } = kind {
        report.notes.push(format!(
            "numerator (1+t)^{}: the exterior algebra on the {} variables x0..x{s}",
            s + 1,
            s + 1
        ));
    }
    let mut closed = ClosedForm {
        b: closed_b.clone(),
        numerator,
        denominator: render_denominator(&closed_b),
        matches_oracle: None,
        matrix: None,
    };

    // Laplace expansion builds C(m, n) minors of n! terms each.
    let build_cost = binomial(m, n).saturating_mul((1..=n as u128).product());
    if guard(&mut report, "construction of the minors", build_cost, cfg.cost_cap, true) {
        report.closed_form = Some(closed);
        report.status = Some(Status::for_degree(Some(n)));
        return Ok(report);
    }
    let (ring, ideal) = match kind {
        ExampleKind::Determinantal { n, m } => generic_minors_ideal(GenericMatrixSpec { n, m }, field)?,
        ExampleKind::Power { n, s } => {
            let (ring, ideal, matrix) = power_ideal(PowerIdealSpec { n, s }, field)?;
            closed.matrix = Some(render_matrix(&ring, &matrix));
            (ring, ideal)
        }
    };
    if let ExampleKind::Power { .. } = kind {
        report.ring = Some(describe_ring(&ring, &ideal));
    }
    // The Eagon–Northcott complex has length m − n + 1 and ends in degree m.
    let window = ResolutionBounds::new((m - n + 2).min(ring.nvars()), m);
    report.notes.push(format!(
        "resolution of R over A computed up to internal degree {m}, where the Eagon–Northcott complex ends"
    ));
    verify_stages(&mut report, &ring, &ideal, window, cfg, true)?;
    if !report.betti_over_a.is_empty() {
        closed.matches_oracle = Some(report.b == closed_b);
        if report.b != closed_b {
            report
                .notes
                .push(format!("closed-form b {closed_b:?} differs from the oracle b {:?}", report.b));
        }
    }
    report.closed_form = Some(closed);
    if report.d.is_none() && report.betti_over_a.is_empty() {
        report.d = Some(n);
        report.b = closed_b;
    }
    finish(&mut report);
    Ok(report)
}
