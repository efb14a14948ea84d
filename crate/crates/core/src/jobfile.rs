//! Job files: a flat sectioned key/value format.
//!
//! ```text
//! # (x, y)^4 over F_32003
//! [field]
//! characteristic = 32003
//! [ring]
//! variables = "x, y"
//! order = "grlex"
//! [ideal]
//! generator = "x^4"
//! generator = "x^3*y"
//! [bounds]
//! max_p = 5
//! max_deg = 14
//! ```
//!
//! Values are quoted strings or integers. `generator` may repeat; every other
//! key appears at most once. LF and CRLF line endings are accepted.

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::linalg::{FieldSpec, LinalgError, DEFAULT_CHARACTERISTIC};
use crate::parse::{parse_polynomial, ParseError};
use crate::polyalgebra::{AlgebraError, GradedIdeal, MonomialOrder, PolyRing};
use crate::resolution::ResolutionBounds;

pub const DEFAULT_MAX_P: usize = 5;
pub const DEFAULT_MAX_DEG: usize = 14;

#[derive(Debug, Error)]
pub enum JobError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: generator {text:?}: {source}")]
    Generator {
        line: usize,
        text: String,
        source: ParseError,
    },
    #[error("generator {index}: {source}")]
    Ideal { index: usize, source: AlgebraError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] LinalgError),
    #[error("bounds must be positive, got max_p = {max_p}, max_deg = {max_deg}")]
    Bounds { max_p: usize, max_deg: usize },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// A parsed job. Generators are kept as text, tagged with their source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub order: MonomialOrder,
    pub generators: Vec<(usize, String)>,
    pub bounds: ResolutionBounds,
}

impl Default for JobSpec {
    fn default() -> Self {
        JobSpec {
            characteristic: DEFAULT_CHARACTERISTIC,
            variables: Vec::new(),
            order: MonomialOrder::default(),
            generators: Vec::new(),
            bounds: ResolutionBounds::new(DEFAULT_MAX_P, DEFAULT_MAX_DEG),
        }
    }
}

enum Value {
    Str(String),
    Int(u64),
}

fn parse_value(raw: &str, line: usize) -> Result<Value, JobError> {
    let err = |message: String| JobError::Line { line, message };
    if let Some(rest) = raw.strip_prefix('"') {
        let inner = rest
            .strip_suffix('"')
            .ok_or_else(|| err("unterminated string".into()))?;
        if inner.contains('"') {
            return Err(err("stray quote inside string".into()));
        }
        return Ok(Value::Str(inner.to_string()));
    }
    raw.parse::<u64>()
        .map(Value::Int)
        .map_err(|_| err(format!("expected a quoted string or an integer, got `{raw}`")))
}

/// Strips a `#` comment that is not inside a quoted string.
fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<Self, JobError> {
        let mut job = JobSpec::default();
        let mut section: Option<String> = None;
        let mut seen: Vec<(String, String)> = Vec::new();
        let mut max_p = None;
        let mut max_deg = None;

        for (k, raw) in text.split('\n').enumerate() {
            let line = k + 1;
            let content = strip_comment(raw.strip_suffix('\r').unwrap_or(raw)).trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| JobError::Line { line, message };
            if let Some(name) = content.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| err("malformed section header".into()))?
                    .trim();
                if !["field", "ring", "ideal", "bounds"].contains(&name) {
                    return Err(err(format!("unknown section [{name}]")));
                }
                section = Some(name.to_string());
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
            let key = key.trim();
            let value = parse_value(value.trim(), line)?;
            let sec = section
                .clone()
                .ok_or_else(|| err("key outside of any section".into()))?;
            if key != "generator" {
                let tag = (sec.clone(), key.to_string());
                if seen.contains(&tag) {
                    return Err(err(format!("duplicate key `{key}` in [{sec}]")));
                }
                seen.push(tag);
            }
            match (sec.as_str(), key, value) {
                ("field", "characteristic", Value::Int(p)) => {
                    job.characteristic = u32::try_from(p)
                        .map_err(|_| err(format!("characteristic {p} is too large")))?;
                }
                ("ring", "variables", Value::Str(s)) => {
                    job.variables = s
                        .split(',')
                        .map(|v| v.trim().to_string())
                        .filter(|v| !v.is_empty())
                        .collect();
                }
                ("ring", "order", Value::Str(s)) => {
                    job.order = MonomialOrder::from_name(&s)
                        .ok_or_else(|| err(format!("unknown monomial order `{s}`")))?;
                }
                ("ideal", "generator", Value::Str(s)) => job.generators.push((line, s)),
                ("bounds", "max_p", Value::Int(v)) => max_p = Some(v as usize),
                ("bounds", "max_deg", Value::Int(v)) => max_deg = Some(v as usize),
                (sec, key, _) => {
                    return Err(err(format!("unexpected key or value type for `{key}` in [{sec}]")))
                }
            }
        }
        if job.variables.is_empty() {
            return Err(JobError::Line {
                line: 0,
                message: "missing [ring] variables".into(),
            });
        }
        job.bounds = ResolutionBounds::new(max_p.unwrap_or(DEFAULT_MAX_P), max_deg.unwrap_or(DEFAULT_MAX_DEG));
        job.check_bounds()?;
        Ok(job)
    }

    pub fn read(path: &Path) -> Result<Self, JobError> {
        let text = std::fs::read_to_string(path).map_err(|source| JobError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn check_bounds(&self) -> Result<(), JobError> {
        let b = self.bounds;
        if b.max_homological == 0 || b.max_internal == 0 {
            return Err(JobError::Bounds {
                max_p: b.max_homological,
                max_deg: b.max_internal,
            });
        }
        Ok(())
    }

    pub fn ring(&self) -> Result<PolyRing, JobError> {
        let field = FieldSpec::new(self.characteristic)?;
        Ok(PolyRing::new(self.variables.clone(), field)?.with_order(self.order))
    }

    /// Parses every generator; generators must be nonzero and homogeneous.
    pub fn build(&self) -> Result<(PolyRing, GradedIdeal), JobError> {
        let ring = self.ring()?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (line, text) in &self.generators {
            let p = parse_polynomial(text, &ring).map_err(|source| JobError::Generator {
                line: *line,
                text: text.clone(),
                source,
            })?;
            gens.push(p);
        }
        for (index, g) in gens.iter().enumerate() {
            let check = if g.is_zero() {
                Some(AlgebraError::ZeroGenerator)
            } else if !g.is_homogeneous() {
                Some(AlgebraError::NotHomogeneous)
            } else {
                None
            };
            if let Some(source) = check {
                return Err(JobError::Ideal { index: index + 1, source });
            }
        }
        let ideal = GradedIdeal::new(&ring, gens)?;
        Ok((ring, ideal))
    }
}

impl fmt::Display for JobSpec {
    /// Writes the job back in file syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[field]\ncharacteristic = {}", self.characteristic)?;
        writeln!(f, "[ring]\nvariables = \"{}\"", self.variables.join(", "))?;
        writeln!(f, "order = \"{}\"", self.order.name())?;
        writeln!(f, "[ideal]")?;
        for (_, g) in &self.generators {
            writeln!(f, "generator = \"{g}\"")?;
        }
        writeln!(
            f,
            "[bounds]\nmax_p = {}\nmax_deg = {}",
            self.bounds.max_homological, self.bounds.max_internal
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLAGSHIP: &str = "# (x,y)^4\n[field]\ncharacteristic = 32003\n[ring]\nvariables = \"x, y\"\n\
        [ideal]\ngenerator = \"x^4\"   # first\ngenerator = \"x^3*y\"\ngenerator = \"x^2*y^2\"\n\
        generator = \"x*y^3\"\ngenerator = \"y^4\"\n[bounds]\nmax_p = 5\nmax_deg = 14\n";

    #[test]
    fn parses_flagship() {
        let job = JobSpec::parse(FLAGSHIP).unwrap();
        assert_eq!(job.characteristic, 32003);
        assert_eq!(job.variables, vec!["x", "y"]);
        assert_eq!(job.generators.len(), 5);
        assert_eq!(job.generators[0], (7, "x^4".to_string()));
        assert_eq!(job.bounds, ResolutionBounds::new(5, 14));
        let (ring, ideal) = job.build().unwrap();
        assert_eq!(ring.nvars(), 2);
        assert_eq!(ideal.degrees(), &[4, 4, 4, 4, 4]);
    }

    #[test]
    fn crlf_matches_lf() {
        let crlf = FLAGSHIP.replace('\n', "\r\n");
        assert_eq!(JobSpec::parse(&crlf).unwrap(), JobSpec::parse(FLAGSHIP).unwrap());
    }

    #[test]
    fn display_round_trips() {
        let job = JobSpec::parse(FLAGSHIP).unwrap();
        let again = JobSpec::parse(&job.to_string()).unwrap();
        assert_eq!(job.variables, again.variables);
        assert_eq!(
            job.generators.iter().map(|g| &g.1).collect::<Vec<_>>(),
            again.generators.iter().map(|g| &g.1).collect::<Vec<_>>()
        );
        assert_eq!(job.bounds, again.bounds);
    }

    #[test]
    fn defaults_apply() {
        let job = JobSpec::parse("[ring]\nvariables = \"x\"\n[ideal]\ngenerator = \"x^4\"\n").unwrap();
        assert_eq!(job.characteristic, 32003);
        assert_eq!(job.bounds, ResolutionBounds::new(5, 14));
        assert_eq!(job.order, MonomialOrder::GrLex);
    }

    fn line_of(text: &str) -> usize {
        match JobSpec::parse(text).unwrap_err() {
            JobError::Line { line, .. } => line,
            e => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("[ring]\nvariables = \"x\"\n[nope]\n"), 3);
        assert_eq!(line_of("[ring]\nvariables = x\n"), 2);
        assert_eq!(line_of("variables = \"x\"\n"), 1);
        assert_eq!(line_of("[ring]\nvariables = \"x\"\nvariables = \"y\"\n"), 3);
        assert_eq!(line_of("[ring]\nvariables = \"x\"\n[bounds]\nmax_p = \"5\"\n"), 4);
        assert_eq!(line_of("[ring]\norder = \"lex\"\n"), 2);
        assert_eq!(line_of("[ring]\nvariables \"x\"\n"), 2);
    }

    #[test]
    fn generator_errors() {
        let bad = "[ring]\nvariables = \"x, y\"\n[ideal]\ngenerator = \"x + z\"\n";
        let job = JobSpec::parse(bad).unwrap();
        match job.build().unwrap_err() {
            JobError::Generator { line, source, .. } => {
                assert_eq!(line, 4);
                assert!(matches!(source, ParseError::UnknownVariable { .. }));
            }
            e => panic!("unexpected error {e}"),
        }
        let inhom = "[ring]\nvariables = \"x, y\"\n[ideal]\ngenerator = \"x^2 + y\"\n";
        assert!(matches!(
            JobSpec::parse(inhom).unwrap().build(),
            Err(JobError::Ideal { index: 1, source: AlgebraError::NotHomogeneous })
        ));
    }

    #[test]
    fn rejects_zero_bounds_and_bad_field() {
        let z = "[ring]\nvariables = \"x\"\n[bounds]\nmax_p = 0\n";
        assert!(matches!(JobSpec::parse(z), Err(JobError::Bounds { .. })));
        let f = "[field]\ncharacteristic = 32004\n[ring]\nvariables = \"x\"\n";
        assert!(matches!(JobSpec::parse(f).unwrap().build(), Err(JobError::Field(_))));
    }

    #[test]
    fn hash_inside_string_is_kept() {
        let t = "[ring]\nvariables = \"x, y\" # trailing\n";
        assert_eq!(JobSpec::parse(t).unwrap().variables, vec!["x", "y"]);
    }
}
