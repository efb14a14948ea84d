//! Python bindings. Reports cross the boundary as JSON strings matching the
//! CLI's `--format json` output.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use extalg_core::determinantal;
use extalg_core::jobfile::{JobSpec, DEFAULT_MAX_DEG, DEFAULT_MAX_P};
use extalg_core::linalg::{FieldSpec, DEFAULT_CHARACTERISTIC};
use extalg_core::pipeline::{self, ExampleKind, PipelineConfig};
use extalg_core::polyalgebra::{self, GradedIdeal, MonomialOrder, PolyRing};
use extalg_core::predictor::{self, ExtTable, PredictionInput};
use extalg_core::quadratic;
use extalg_core::resolution::{self, AlmostLinearity, ResolutionBounds};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn table_entries(t: &ExtTable) -> Vec<(usize, usize, BigUint)> {
    t.entries().map(|((p, s), v)| (p, s, v.clone())).collect()
}

/// A graded quotient k[vars]/(generators) with resolution bounds.
#[pyclass(module = "extalg", frozen)]
struct QuotientRing {
    ring: PolyRing,
    ideal: GradedIdeal,
    bounds: ResolutionBounds,
}

#[pymethods]
impl QuotientRing {
    #[new]
    #[pyo3(signature = (variables, generators, characteristic = DEFAULT_CHARACTERISTIC, order = "grlex", max_p = DEFAULT_MAX_P, max_deg = DEFAULT_MAX_DEG))]
    fn new(
        variables: Vec<String>,
        generators: Vec<String>,
        characteristic: u32,
        order: &str,
        max_p: usize,
        max_deg: usize,
    ) -> PyResult<Self> {
        let job = JobSpec {
            characteristic,
            variables,
            order: MonomialOrder::from_name(order).ok_or_else(|| err(format!("unknown monomial order `{order}`")))?,
            generators: generators.into_iter().map(|g| (0, g)).collect(),
            bounds: ResolutionBounds::new(max_p, max_deg),
        };
        job.check_bounds().map_err(err)?;
        let (ring, ideal) = job.build().map_err(err)?;
        Ok(Self { ring, ideal, bounds: job.bounds })
    }

    /// Parses a job file.
    #[staticmethod]
    fn from_job(text: &str) -> PyResult<Self> {
        let job = JobSpec::parse(text).map_err(err)?;
        job.check_bounds().map_err(err)?;
        let (ring, ideal) = job.build().map_err(err)?;
        Ok(Self { ring, ideal, bounds: job.bounds })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.ring.variables().to_vec()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.ideal.generators().iter().map(|g| self.ring.render(g)).collect()
    }

    fn hilbert_series(&self, max_degree: usize) -> Vec<usize> {
        polyalgebra::QuotientRing::new(self.ring.clone(), self.ideal.clone()).hilbert_series(max_degree)
    }

    /// Betti table of the quotient over the ambient ring as (i, degree, rank).
    fn betti_over_ambient(&self) -> PyResult<Vec<(usize, usize, usize)>> {
        let res = resolution::resolve_quotient_over_ambient(&self.ring, &self.ideal, self.bounds).map_err(err)?;
        Ok(res.betti().records().into_iter().map(|r| (r.i, r.degree, r.rank)).collect())
    }

    /// `(d, b)` when the ambient resolution is almost linear within bounds, else None.
    fn almost_linear(&self) -> PyResult<Option<(usize, Vec<u64>)>> {
        let (window, _) = pipeline::ambient_window(&self.ring, &self.ideal, self.bounds.max_internal);
        let res = resolution::resolve_quotient_over_ambient(&self.ring, &self.ideal, window).map_err(err)?;
        Ok(match resolution::check_almost_linear(res.betti()) {
            AlmostLinearity::AlmostLinear { d, b, .. } => Some((d, b)),
            _ => None,
        })
    }

    fn verify(&self) -> PyResult<String> {
        self.report(pipeline::run_verify)
    }

    fn predict(&self) -> PyResult<String> {
        self.report(pipeline::run_predict)
    }

    fn __repr__(&self) -> String {
        format!("QuotientRing({:?}, {:?})", self.variables(), self.generators())
    }
}

impl QuotientRing {
    fn report(
        &self,
        run: fn(&PolyRing, &GradedIdeal, &PipelineConfig) -> Result<extalg_core::report::Report, pipeline::PipelineError>,
    ) -> PyResult<String> {
        run(&self.ring, &self.ideal, &PipelineConfig::new(self.bounds))
            .map(|r| r.to_json())
            .map_err(err)
    }
}

/// Predicted Ext dimensions as (p, s, dim) from dual dims, b and d.
#[pyfunction]
#[pyo3(signature = (dual_dims, b, d, max_p = DEFAULT_MAX_P, max_deg = DEFAULT_MAX_DEG))]
fn predict(dual_dims: Vec<u64>, b: Vec<u64>, d: usize, max_p: usize, max_deg: usize) -> PyResult<Vec<(usize, usize, BigUint)>> {
    let input = PredictionInput::new(dual_dims, b, d, ResolutionBounds::new(max_p, max_deg)).map_err(err)?;
    Ok(table_entries(&predictor::predict_recurrence(&input)))
}

/// Degree pattern of (p, s, dim) entries: "linear", "alternating(N)" or "neither ...".
#[pyfunction]
fn classify(entries: Vec<(usize, usize, BigUint)>) -> String {
    let t = ExtTable::from_entries(entries.into_iter().map(|(p, s, v)| ((p, s), v)));
    predictor::classify_degree_pattern(&t).to_string()
}

#[pyfunction]
fn congruence_ok(entries: Vec<(usize, usize, BigUint)>, d: usize) -> PyResult<bool> {
    let t = ExtTable::from_entries(entries.into_iter().map(|(p, s, v)| ((p, s), v)));
    Ok(predictor::congruence_check(&t, d).map_err(err)?.pass)
}

/// Dimensions of the Koszul dual from the Hilbert function of a Koszul algebra.
#[pyfunction]
fn koszul_dual_dims(hilbert: Vec<u64>, max_m: usize) -> PyResult<Vec<u64>> {
    quadratic::koszul_dual_dims_fastpath(&hilbert, max_m).map_err(err)
}

#[pyfunction]
fn en_betti(n: usize, m: usize) -> PyResult<Vec<u64>> {
    determinantal::en_betti(n, m).map_err(err)
}

/// Report JSON for `example determinantal` or `example power`.
#[pyfunction]
#[pyo3(signature = (family, n, k, max_p = DEFAULT_MAX_P, max_deg = DEFAULT_MAX_DEG))]
fn example(family: &str, n: usize, k: usize, max_p: usize, max_deg: usize) -> PyResult<String> {
    let kind = match family {
        "determinantal" => ExampleKind::Determinantal { n, m: k },
        "power" => ExampleKind::Power { n, s: k },
        _ => return Err(err(format!("unknown family `{family}`"))),
    };
    let field = FieldSpec::new(DEFAULT_CHARACTERISTIC).map_err(err)?;
    pipeline::run_example(kind, field, &PipelineConfig::new(ResolutionBounds::new(max_p, max_deg)))
        .map(|r| r.to_json())
        .map_err(err)
}

#[pymodule]
fn extalg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<QuotientRing>()?;
    m.add_function(wrap_pyfunction!(predict, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(congruence_ok, m)?)?;
    m.add_function(wrap_pyfunction!(koszul_dual_dims, m)?)?;
    m.add_function(wrap_pyfunction!(en_betti, m)?)?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add("REPORT_SCHEMA", extalg_core::report::REPORT_SCHEMA)?;
    Ok(())
}
