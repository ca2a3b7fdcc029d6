//! Acceptance suite. Runs every criterion at its stated parameters, prints
//! one line per criterion and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use supercauchy::algebra::{Signature, SuperElement, Word};
use supercauchy::cauchy::{
    check_cauchy, check_general_stokes, check_k_monogenic, check_limit_lemma, check_pompeiu,
    general_stokes_sides, limit_test_function, Integrator,
};
use supercauchy::fermionic::{
    check_berezin_equivalence, check_cnk, check_fermionic_stokes, check_induction_lemma, check_morera,
};
use supercauchy::kernels::check_kernel_monogenic;
use supercauchy::operators::{check_lemma1, check_lemma2, check_super_dimension};
use supercauchy::quadrature::{check_bosonic_stokes, NumericSuperValue, Region, RegionKind, DEFAULT_RESOLUTION};
use supercauchy::report::{Status, VerificationReport};

const SEED: u64 = 20240601;

struct Outcome {
    reports: Vec<VerificationReport>,
    problems: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            reports: Vec::new(),
            problems: Vec::new(),
        }
    }

    /// Requires a passing (non-vacuous) report.
    fn pass(&mut self, report: VerificationReport) {
        if report.status != Status::Pass {
            self.problems.push(report.to_json_line());
        }
        self.reports.push(report);
    }

    /// Requires a passing report whose error is exactly zero.
    fn exact(&mut self, report: VerificationReport) {
        if report.status == Status::Pass && report.max_rel_error != 0.0 {
            self.problems.push(format!("non-zero error: {}", report.to_json_line()));
        }
        self.pass(report);
    }

    fn fail(&mut self, message: String) {
        self.problems.push(message);
    }
}

fn exact_identities(out: &mut Outcome) {
    for (m, n) in [(0, 1), (2, 1), (3, 1), (1, 2), (3, 2)] {
        out.exact(check_super_dimension(Signature::new(m, n)));
    }
    for sig in [Signature::new(2, 1), Signature::new(1, 2)] {
        for s in 0..=2 {
            for k in 0..=3 {
                out.exact(check_lemma1(sig, s, k, 5, SEED));
            }
        }
        for t in 0..=1 {
            out.exact(check_lemma2(sig, t, 10, SEED));
        }
    }
    for n in 1..=3 {
        for k in 0..=n {
            out.exact(check_cnk(n, k, 10, SEED).unwrap());
        }
        out.exact(check_berezin_equivalence(n, 50, SEED));
        out.exact(check_fermionic_stokes(n, 200, SEED).unwrap());
    }
    for n in 1..=2 {
        for k in 0..n {
            out.exact(check_induction_lemma(n, k, 20, SEED).unwrap());
        }
    }
}

fn kernel_suite(out: &mut Outcome) {
    for m in [1, 3, 5] {
        for n in 0..=2 {
            out.exact(check_kernel_monogenic(m, n).unwrap());
        }
    }
}

fn bosonic_stokes(out: &mut Outcome) {
    for m in 1..=3 {
        out.pass(check_bosonic_stokes(m, 3, 50, SEED, DEFAULT_RESOLUTION, 1e-8).unwrap());
    }
}

fn general_stokes(out: &mut Outcome) {
    for m in 1..=3 {
        for n in 1..=2 {
            let region = Region::unit_ball(m, DEFAULT_RESOLUTION).unwrap();
            out.pass(check_general_stokes(m, n, 3, 50, SEED, &region, 1e-8).unwrap());
        }
    }
    // (m, n) = (1, 1), f = 1, g = x₁ on [0, 1]: both sides equal -e₁.
    let sig = Signature::new(1, 1);
    let region = Region::new(RegionKind::Interval, vec![0.5], 0.5, DEFAULT_RESOLUTION).unwrap();
    let mut integrator = Integrator::new(1, &region, &[0.0]).unwrap();
    let (lhs, rhs) = general_stokes_sides(&SuperElement::one(sig), &SuperElement::x(sig, 1), &mut integrator).unwrap();
    let expected = NumericSuperValue::word(
        Word {
            grassmann: 0,
            blade: 1,
            weyl: vec![0, 0],
        },
        -1.0,
    );
    for (side, value) in [("boundary", lhs.value()), ("volume", rhs)] {
        let err = value.max_rel_error(&expected).0;
        if !(err <= 1e-12) {
            out.fail(format!("witness {side} side: {value} (error {err:e})"));
        }
    }
}

fn cauchy(out: &mut Outcome) {
    for (m, n) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)] {
        let region = Region::unit_ball(m, DEFAULT_RESOLUTION).unwrap();
        out.pass(check_cauchy(m, n, 20, SEED, &region, 1e-8).unwrap());
    }
}

fn pompeiu(out: &mut Outcome) {
    for m in [1, 3] {
        for n in 1..=2 {
            let region = Region::unit_ball(m, DEFAULT_RESOLUTION).unwrap();
            out.pass(check_pompeiu(m, n, &region, 2, SEED, 1e-4, 1e-8).unwrap());
        }
    }
}

fn k_monogenic(out: &mut Outcome) {
    for m in [1, 3] {
        for n in 1..=2 {
            let region = Region::unit_ball(m, DEFAULT_RESOLUTION).unwrap();
            out.pass(check_k_monogenic(m, n, &region, 1e-4, 1e-8).unwrap());
        }
    }
}

fn limit_lemma(out: &mut Outcome) {
    for (m, y) in [(1, vec![0.3]), (3, vec![0.1, 0.2, 0.3])] {
        let f = limit_test_function(m);
        out.pass(check_limit_lemma(&f, &y, &[0.4, 0.2, 0.1, 0.05], 6, 32, 1.8, 1e-2).unwrap());
    }
}

/// At n = 1 every x̀²P₁ vanishes identically, so the check starts at n = 2.
fn morera(out: &mut Outcome) {
    for n in 2..=3 {
        let report = check_morera(0, n, 2).unwrap();
        match report.status {
            Status::Vacuous => {
                out.reports.push(report);
                out.exact(check_morera(2, n, 2).unwrap());
            }
            _ => out.exact(report),
        }
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Outcome)); 9] = [
        ("exact identity suite", exact_identities),
        ("kernel suite", kernel_suite),
        ("bosonic stokes", bosonic_stokes),
        ("general stokes", general_stokes),
        ("cauchy theorem", cauchy),
        ("cauchy-pompeiu", pompeiu),
        ("k-monogenic representation", k_monogenic),
        ("limit lemma", limit_lemma),
        ("morera", morera),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = Outcome::new();
        run(&mut outcome);
        let worst = outcome.reports.iter().map(|r| r.max_rel_error).fold(0.0, f64::max);
        let status = if outcome.problems.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {}. {name}: {} reports, max_rel_error {worst:e}, {:.1}s",
            i + 1,
            outcome.reports.len(),
            start.elapsed().as_secs_f64()
        );
        for p in &outcome.problems {
            println!("    {p}");
        }
        if !outcome.problems.is_empty() {
            failures += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
