//! Named verification checks with their default parameters.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::Signature;
use crate::cauchy::{
    check_cauchy, check_general_stokes, check_k_monogenic, check_limit_lemma, check_pompeiu,
    limit_test_function,
};
use crate::fermionic::{
    check_berezin_equivalence, check_cnk, check_fermionic_stokes, check_induction_lemma, check_morera,
};
use crate::kernels::check_kernel_monogenic;
use crate::operators::{check_lemma1, check_lemma2, check_super_dimension};
use crate::quadrature::{check_bosonic_stokes, Region, RegionKind};
use crate::report::{combine, Status, VerificationReport};

pub const CHECK_NAMES: [&str; 15] = [
    "superdim",
    "lemma1",
    "lemma2",
    "cnk",
    "induction-lemma",
    "berezin-equiv",
    "fermionic-stokes",
    "morera",
    "bosonic-stokes",
    "kernel-monogenic",
    "general-stokes",
    "cauchy",
    "pompeiu",
    "k-monogenic",
    "limit-lemma",
];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> SuiteError {
    SuiteError::Invalid(e.to_string())
}

/// Parameters shared by all checks; `None` selects the check's default.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteParams {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub radius: Option<f64>,
    pub center: Option<Vec<f64>>,
    pub resolution: Option<usize>,
    pub tol: Option<f64>,
}

impl SuiteParams {
    fn m(&self, default: usize) -> usize {
        self.m.unwrap_or(default)
    }

    fn n(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }

    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn region(&self, m: usize) -> Result<Region, SuiteError> {
        let center = self.center.clone().unwrap_or_else(|| vec![0.0; m]);
        let kind = RegionKind::solid(m).map_err(invalid)?;
        Region::new(
            kind,
            center,
            self.radius.unwrap_or(1.0),
            self.resolution.unwrap_or(crate::quadrature::DEFAULT_RESOLUTION),
        )
        .map_err(invalid)
    }
}

fn top_params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Runs one named check. Exact checks ignore numeric parameters.
pub fn run_check(name: &str, p: &SuiteParams) -> Result<VerificationReport, SuiteError> {
    let seed = p.seed;
    let report = match name {
        "superdim" => check_super_dimension(Signature::new(p.m(3), p.n(1))),
        "lemma1" => {
            let sig = Signature::new(p.m(2), p.n(1));
            let mut parts = Vec::new();
            for s in 0..=2 {
                for k in 0..=3 {
                    parts.push(check_lemma1(sig, s, k, p.trials(10), seed));
                }
            }
            combine(name, top_params(&[("m", json!(sig.m)), ("n", json!(sig.n))]), parts)
        }
        "lemma2" => {
            let sig = Signature::new(p.m(3), p.n(1));
            let parts = (0..=1).map(|t| check_lemma2(sig, t, p.trials(10), seed)).collect();
            combine(name, top_params(&[("m", json!(sig.m)), ("n", json!(sig.n))]), parts)
        }
        "cnk" => {
            let n = p.n(2);
            let mut parts = Vec::new();
            for k in 0..=n {
                parts.push(check_cnk(n, k, p.trials(20), seed).map_err(invalid)?);
            }
            combine(name, top_params(&[("n", json!(n))]), parts)
        }
        "induction-lemma" => {
            let n = p.n(2);
            let mut parts = Vec::new();
            for k in 0..n {
                parts.push(check_induction_lemma(n, k, p.trials(50), seed).map_err(invalid)?);
            }
            if parts.is_empty() {
                return Err(SuiteError::Invalid("induction lemma needs n ≥ 1".into()));
            }
            combine(name, top_params(&[("n", json!(n))]), parts)
        }
        "berezin-equiv" => check_berezin_equivalence(p.n(2), p.trials(100), seed),
        "fermionic-stokes" => check_fermionic_stokes(p.n(2), p.trials(200), seed).map_err(invalid)?,
        "morera" => {
            let m = p.m(0);
            let n = p.n(2);
            let primary = check_morera(m, n, 2).map_err(invalid)?;
            if primary.status == Status::Vacuous && m < 2 {
                // the bosonic-coefficient variant must then carry the check
                let variant = check_morera(2, n, 2).map_err(invalid)?;
                combine(name, top_params(&[("m", json!(m)), ("n", json!(n))]), vec![primary, variant])
            } else {
                primary
            }
        }
        "bosonic-stokes" => {
            let m = p.m(3);
            check_bosonic_stokes(m, 3, p.trials(50), seed, p.resolution.unwrap_or(16), p.tol(1e-8))
                .map_err(invalid)?
        }
        "kernel-monogenic" => check_kernel_monogenic(p.m(3), p.n(1)).map_err(invalid)?,
        "general-stokes" => {
            let m = p.m(2);
            check_general_stokes(m, p.n(1), 3, p.trials(50), seed, &p.region(m)?, p.tol(1e-8))
                .map_err(invalid)?
        }
        "cauchy" => {
            let m = p.m(2);
            check_cauchy(m, p.n(1), p.trials(20), seed, &p.region(m)?, p.tol(1e-8)).map_err(invalid)?
        }
        "pompeiu" => {
            let m = p.m(3);
            check_pompeiu(m, p.n(1), &p.region(m)?, p.trials(2), seed, p.tol(1e-4), 1e-8)
                .map_err(invalid)?
        }
        "k-monogenic" => {
            let m = p.m(3);
            check_k_monogenic(m, p.n(1), &p.region(m)?, p.tol(1e-4), 1e-8).map_err(invalid)?
        }
        "limit-lemma" => {
            let m = p.m(3);
            let n = p.n(1);
            let y = p
                .center
                .clone()
                .unwrap_or_else(|| [0.1, 0.2, 0.3][..m.min(3)].to_vec());
            let f = limit_test_function(m);
            check_limit_lemma(
                &f,
                &y,
                &[0.4, 0.2, 0.1, 0.05],
                2 * n + 2,
                p.resolution.unwrap_or(32),
                1.8,
                p.tol(1e-2),
            )
            .map_err(invalid)?
        }
        other => return Err(SuiteError::UnknownCheck(other.to_string())),
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_runs_with_defaults() {
        let params = SuiteParams {
            trials: Some(2),
            ..SuiteParams::default()
        };
        for name in CHECK_NAMES {
            let r = run_check(name, &params).unwrap();
            assert_eq!(r.check, name);
            assert!(r.ok(), "{}", r.to_json_line());
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            run_check("nope", &SuiteParams::default()),
            Err(SuiteError::UnknownCheck(_))
        ));
    }

    #[test]
    fn invalid_parameters_are_reported() {
        let p = SuiteParams {
            m: Some(2),
            ..SuiteParams::default()
        };
        assert!(matches!(run_check("pompeiu", &p), Err(SuiteError::Invalid(_))));
    }
}
