//! Ext-algebra dimensions of quotients of Koszul algebras with almost
//! linear resolutions.
//!
//! The predicted side ([`predictor`]) evaluates the bigraded formula
//! `Hilb(A^!)(tu) / (1 − Σ b_i u^{d+i−1} t^{i+1})` three independent ways;
//! the oracle side ([`resolution`]) computes minimal graded free resolutions
//! by exact linear algebra over `F_p` ([`linalg`], [`polyalgebra`]).

pub mod linalg;
pub mod polyalgebra;
pub mod series;
pub mod quadratic;
pub mod resolution;
pub mod predictor;
pub mod determinantal;
pub mod parse;
pub mod jobfile;
pub mod report;
pub mod pipeline;
