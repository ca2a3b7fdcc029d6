//! Berezin integration and the fermionic Stokes machinery: the surface and
//! volume elements `dσ_x̀`, `dV(x̀)` and the identities leading to Stokes'
//! theorem in purely fermionic space.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::algebra::{Signature, SuperElement, VectorPart};
use crate::operators::{
    dirac_fermionic_left, dirac_fermionic_right, grassmann_derivative, iterate, monogenic_basis,
    OperatorError, Side,
};
use crate::random::ElementSampler;
use crate::report::{ReportBuilder, VerificationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FermionicError {
    #[error("the fermionic surface and volume elements vanish for n = 0")]
    Degenerate,
    #[error("k = {k} exceeds n = {n}")]
    KOutOfRange { n: usize, k: usize },
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// `x̀² = Σ_j x̀_{2j-1} x̀_{2j}` in the given signature.
pub fn fermionic_square(sig: Signature) -> SuperElement {
    let mut out = SuperElement::zero(sig);
    for j in 1..=sig.n {
        out += &(&SuperElement::q(sig, 2 * j - 1) * &SuperElement::q(sig, 2 * j));
    }
    out
}

/// `ỳ² = Σ_j ỳ_{2j-1} ỳ_{2j}` over the parameters.
pub fn parameter_square(sig: Signature) -> SuperElement {
    let mut out = SuperElement::zero(sig);
    for j in 1..=sig.n_params {
        out += &(&SuperElement::y(sig, 2 * j - 1) * &SuperElement::y(sig, 2 * j));
    }
    out
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

/// `exp(s) - 1 = Σ_{k=1}^{n} s^k / k!` for a nilpotent even `s` with `s^{n+1} = 0`.
fn truncated_exp_minus_one(s: &SuperElement, n: usize) -> SuperElement {
    let mut out = SuperElement::zero(s.signature());
    let mut power = SuperElement::one(s.signature());
    for k in 1..=n {
        power = &power * s;
        out += &power.scale(&BigRational::new(BigInt::one(), factorial(k)));
    }
    out
}

/// The fermionic surface element `dσ_x̀ = -2 x̀ exp(x̀²)` and volume element
/// `dV(x̀) = exp(x̀²) - 1`, both truncated by nilpotency.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionicElements {
    pub n: usize,
    pub surface: SuperElement,
    pub volume: SuperElement,
}

impl FermionicElements {
    pub fn new(sig: Signature) -> Result<Self, FermionicError> {
        if sig.n == 0 {
            return Err(FermionicError::Degenerate);
        }
        let x = SuperElement::vector_variable(sig, VectorPart::Fermionic);
        let sq = fermionic_square(sig);
        let volume = truncated_exp_minus_one(&sq, sig.n);
        let exp = &volume + &SuperElement::one(sig);
        let surface = (&x * &exp).scale_int(-2);
        Ok(FermionicElements {
            n: sig.n,
            surface,
            volume,
        })
    }
}

/// `dV(ỳ) = exp(ỳ²) - 1` over the parameters.
pub fn parameter_volume(sig: Signature) -> SuperElement {
    truncated_exp_minus_one(&parameter_square(sig), sig.n_params)
}

/// `∫_B a = ∂_{x̀_{2n}} ⋯ ∂_{x̀_1} a`. Only words containing every `x̀_j`
/// survive; parameters and bosonic variables pass through.
pub fn berezin(a: &SuperElement) -> SuperElement {
    let sig = a.signature();
    let top = sig.grassmann_mask();
    a.map_monomials(sig, |mono, c, out| {
        if mono.word.grassmann & top == top {
            // x̀_1 … x̀_{2n} is already leading, so each left derivative is +.
            let mut m = mono.clone();
            m.word.grassmann &= !top;
            out.add_term(m, c.clone());
        }
    })
}

/// Berezin integral computed literally as iterated left derivatives.
pub fn berezin_by_derivatives(a: &SuperElement) -> SuperElement {
    let mut out = a.clone();
    for j in 1..=a.signature().grassmann_count() {
        out = grassmann_derivative(&out, j, Side::Left).expect("index within signature");
    }
    out
}

/// `(-1)^n / (4^n n!) ∂_x̀^{2n} a`.
pub fn berezin_via_dirac(a: &SuperElement) -> SuperElement {
    let n = a.signature().n;
    let d = iterate(a, 2 * n as u32, dirac_fermionic_left);
    let mut denom = BigInt::from(4).pow(n as u32) * factorial(n);
    if n % 2 == 1 {
        denom = -denom;
    }
    d.scale(&BigRational::new(BigInt::one(), denom))
}

/// `c(n,k) = (-1)^k 4^k n! k! / (n-k)!`.
pub fn c_nk(n: usize, k: usize) -> Result<BigInt, FermionicError> {
    if k > n {
        return Err(FermionicError::KOutOfRange { n, k });
    }
    let v = BigInt::from(4).pow(k as u32) * factorial(n) * factorial(k) / factorial(n - k);
    Ok(if k % 2 == 1 { -v } else { v })
}

fn fermionic_vector(sig: Signature) -> SuperElement {
    SuperElement::vector_variable(sig, VectorPart::Fermionic)
}

pub fn check_berezin_equivalence(n: usize, trials: usize, seed: u64) -> VerificationReport {
    let sig = Signature::try_with_params(0, n, n).unwrap_or_else(|_| Signature::new(0, n));
    let mut report = ReportBuilder::new("berezin-equiv", 0.0)
        .param("n", n)
        .param("trials", trials)
        .param("seed", seed);
    let mut sampler = ElementSampler::new(seed);
    let top = (1..=sig.grassmann_count()).fold(SuperElement::one(sig), |acc, j| &acc * &SuperElement::q(sig, j));
    for trial in 0..=trials {
        let a = if trial == 0 { top.clone() } else { sampler.polynomial(sig, 0) };
        let direct = berezin(&a);
        report.compare_exact("derivatives", &direct, &berezin_by_derivatives(&a));
        report.compare_exact("dirac power", &direct, &berezin_via_dirac(&a));
    }
    report.finish()
}

/// `∂_x̀^{2n}(x̀^{2k} R) = c(n,k) ∂_x̀^{2n-2k} R` for `R` of degree `2n - 2k`.
pub fn cnk_sides(r: &SuperElement, k: usize) -> Result<(SuperElement, SuperElement), FermionicError> {
    let n = r.signature().n;
    let c = c_nk(n, k)?;
    let x = fermionic_vector(r.signature());
    let lhs = iterate(&(&x.pow(2 * k as u32) * r), 2 * n as u32, dirac_fermionic_left);
    let rhs = iterate(r, (2 * n - 2 * k) as u32, dirac_fermionic_left).scale(&BigRational::from_integer(c));
    Ok((lhs, rhs))
}

pub fn check_cnk(n: usize, k: usize, trials: usize, seed: u64) -> Result<VerificationReport, FermionicError> {
    let sig = Signature::new(0, n);
    let mut report = ReportBuilder::new("cnk", 0.0)
        .param("n", n)
        .param("k", k)
        .param("trials", trials)
        .param("seed", seed);
    report.observe("c", c_nk(n, k)?.to_string());
    let mut sampler = ElementSampler::new(seed);
    for trial in 0..=trials {
        let r = if trial == 0 && k == n {
            SuperElement::one(sig)
        } else {
            sampler.homogeneous(sig, (2 * n - 2 * k) as u32)
        };
        let (lhs, rhs) = cnk_sides(&r, k)?;
        report.compare_exact("cnk", &lhs, &rhs);
    }
    Ok(report.finish())
}

/// `∂_x̀^{2n-2k}(f x̀ g) = 2(n-k) ∂_x̀^{2n-2k-2}[-(f ∂_x̀) g + f (∂_x̀ g)]`.
pub fn induction_sides(f: &SuperElement, g: &SuperElement, k: usize) -> (SuperElement, SuperElement) {
    let n = f.signature().n;
    let steps = (2 * n - 2 * k) as u32;
    let x = fermionic_vector(f.signature());
    let lhs = iterate(&(&(f * &x) * g), steps, dirac_fermionic_left);
    let inner = &(f * &dirac_fermionic_left(g)) - &(&dirac_fermionic_right(f) * g);
    let rhs = iterate(&inner, steps - 2, dirac_fermionic_left).scale_int(2 * (n - k) as i64);
    (lhs, rhs)
}

pub fn check_induction_lemma(
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, FermionicError> {
    if n == 0 {
        return Err(FermionicError::Degenerate);
    }
    if k >= n {
        return Err(FermionicError::KOutOfRange { n, k });
    }
    let sig = Signature::new(0, n);
    let mut report = ReportBuilder::new("induction-lemma", 0.0)
        .param("n", n)
        .param("k", k)
        .param("trials", trials)
        .param("seed", seed);
    let mut sampler = ElementSampler::new(seed);
    let total = (2 * n - 2 * k - 1) as u32;
    for t in 0..trials {
        let i = t as u32 % (total + 1);
        let f = sampler.homogeneous(sig, i);
        let g = sampler.homogeneous(sig, total - i);
        let (lhs, rhs) = induction_sides(&f, &g, k);
        report.compare_exact(&format!("i={i}"), &lhs, &rhs);
    }
    Ok(report.finish())
}

/// Both sides of the fermionic Stokes theorem:
/// `∫_B f dσ_x̀ g` and `∫_B [-(f ∂_x̀) g + f (∂_x̀ g)] dV(x̀)`.
pub fn fermionic_stokes(f: &SuperElement, g: &SuperElement) -> Result<(SuperElement, SuperElement), FermionicError> {
    let elements = FermionicElements::new(f.signature())?;
    let lhs = berezin(&(&(f * &elements.surface) * g));
    let integrand = &(f * &dirac_fermionic_left(g)) - &(&dirac_fermionic_right(f) * g);
    let rhs = berezin(&(&integrand * &elements.volume));
    Ok((lhs, rhs))
}

pub fn check_fermionic_stokes(n: usize, trials: usize, seed: u64) -> Result<VerificationReport, FermionicError> {
    let sig = Signature::new(0, n);
    if n == 0 {
        return Err(FermionicError::Degenerate);
    }
    let mut report = ReportBuilder::new("fermionic-stokes", 0.0)
        .param("n", n)
        .param("trials", trials)
        .param("seed", seed);
    let mut sampler = ElementSampler::new(seed);
    for _ in 0..trials {
        let f = sampler.grassmann_element(sig);
        let g = sampler.grassmann_element(sig);
        let (lhs, rhs) = fermionic_stokes(&f, &g)?;
        report.compare_exact("stokes", &lhs, &rhs);
    }
    Ok(report.finish())
}

/// For every degree-one fermionic monogenic `P₁` within the Weyl cap, checks
/// `∫_B dσ_x̀ (x̀² P₁) = 0` while `∂_x̀ (x̀² P₁) = 2 x̀ P₁ ≠ 0`. With `m ≥ 1`
/// the basis is taken in `(m|2n)` over `∂_x̀`-monogenics with bosonic
/// coefficients, otherwise in purely fermionic space.
pub fn check_morera(m: usize, n: usize, weyl_cap: u32) -> Result<VerificationReport, FermionicError> {
    if n == 0 {
        return Err(FermionicError::Degenerate);
    }
    let sig = Signature::new(m, n);
    let mut report = ReportBuilder::new("morera", 0.0)
        .param("m", m)
        .param("n", n)
        .param("weyl_cap", weyl_cap);
    let candidates = fermionic_monogenics(sig, weyl_cap)?;
    report.observe("basis_dimension", candidates.len());
    if candidates.is_empty() {
        report.mark_vacuous("no degree-one fermionic monogenic within the Weyl cap");
        return Ok(report.finish());
    }
    let elements = FermionicElements::new(sig)?;
    let x = fermionic_vector(sig);
    let sq = fermionic_square(sig);
    let mut nonzero_f = 0;
    for p in &candidates {
        let f = &sq * p;
        if f.is_zero() {
            continue;
        }
        nonzero_f += 1;
        let integral = berezin(&(&elements.surface * &f));
        report.compare_exact("boundary integral", &integral, &SuperElement::zero(sig));
        let d = dirac_fermionic_left(&f);
        let expected = (&x * p).scale_int(2);
        report.compare_exact("dirac", &d, &expected);
        if d.is_zero() {
            report.fail("not monogenic", format!("∂_x̀(x̀²P₁) vanishes for P₁ = {p}"));
        }
    }
    report.observe("nonzero_f", nonzero_f);
    if nonzero_f == 0 {
        report.mark_vacuous("x̀²P₁ vanishes for every basis element");
    }
    Ok(report.finish())
}

/// Elements `P₁` of Grassmann degree one with `∂_x̀ P₁ = 0`. For `m ≥ 1` the
/// purely fermionic basis is multiplied by each `x_i`.
pub fn fermionic_monogenics(sig: Signature, weyl_cap: u32) -> Result<Vec<SuperElement>, FermionicError> {
    if sig.m == 0 {
        return Ok(monogenic_basis(sig, 1, weyl_cap, Side::Left)?.elements);
    }
    // Monogenics in the bosonic-free signature, carried into (m|2n) and
    // multiplied by bosonic coefficients x_i, which commute with ∂_x̀.
    let pure = monogenic_basis(Signature::new(0, sig.n), 1, weyl_cap, Side::Left)?.elements;
    let mut out = Vec::new();
    for p in &pure {
        let lifted = lift(p, sig);
        for i in 1..=sig.m {
            out.push(&SuperElement::x(sig, i) * &lifted);
        }
    }
    Ok(out)
}

fn lift(a: &SuperElement, sig: Signature) -> SuperElement {
    a.map_monomials(sig, |mono, c, out| {
        let mut m = mono.clone();
        m.bosonic = vec![0; sig.m];
        out.add_term(m, c.clone());
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_square_is_scalar_pairing() {
        for n in 1..=3 {
            let sig = Signature::new(0, n);
            assert_eq!(fermionic_vector(sig).pow(2), fermionic_square(sig));
        }
    }

    #[test]
    fn berezin_examples() {
        let sig = Signature::new(0, 1);
        let top = &SuperElement::q(sig, 1) * &SuperElement::q(sig, 2);
        assert_eq!(berezin(&top), SuperElement::one(sig));
        assert!(berezin(&SuperElement::one(sig)).is_zero());
        for n in 1..=3 {
            let sig = Signature::new(0, n);
            let x2n = fermionic_square(sig).pow(n as u32);
            let scaled = x2n.scale(&BigRational::new(BigInt::one(), factorial(n)));
            assert_eq!(berezin(&scaled), SuperElement::one(sig));
        }
    }

    #[test]
    fn berezin_keeps_parameters() {
        let sig = Signature::with_params(0, 1);
        let a = &(&SuperElement::q(sig, 1) * &SuperElement::q(sig, 2)) * &SuperElement::y(sig, 1);
        assert_eq!(berezin(&a), SuperElement::y(sig, 1));
        assert_eq!(berezin_via_dirac(&a), SuperElement::y(sig, 1));
    }

    #[test]
    fn element_expansions() {
        let sig = Signature::new(0, 2);
        let e = FermionicElements::new(sig).unwrap();
        let x = fermionic_vector(sig);
        let x2 = fermionic_square(sig);
        let expected_surface = (&x + (&x.pow(3))).scale_int(-2);
        assert_eq!(e.surface, expected_surface);
        let expected_volume = &x2 + &x2.pow(2).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(e.volume, expected_volume);
        assert_eq!(FermionicElements::new(Signature::new(2, 0)), Err(FermionicError::Degenerate));
    }

    #[test]
    fn cnk_values() {
        assert_eq!(c_nk(1, 1).unwrap(), BigInt::from(-4));
        assert_eq!(c_nk(0, 0).unwrap(), BigInt::from(1));
        assert_eq!(c_nk(2, 1).unwrap(), BigInt::from(-8));
        assert_eq!(c_nk(3, 3).unwrap(), BigInt::from(-4 * 4 * 4 * 6 * 6));
        assert!(c_nk(1, 2).is_err());
        let sig = Signature::new(0, 1);
        let (l, r) = cnk_sides(&SuperElement::one(sig), 1).unwrap();
        assert_eq!(l, SuperElement::from_integer(sig, -4));
        assert_eq!(r, l);
    }

    #[test]
    fn induction_base_cases() {
        let sig = Signature::new(0, 1);
        let mut s = ElementSampler::new(8);
        let f1 = s.homogeneous(sig, 1);
        let g0 = s.homogeneous(sig, 0);
        let (l, _) = induction_sides(&f1, &g0, 0);
        assert_eq!(l, (&dirac_fermionic_right(&f1) * &g0).scale_int(-2));
        let (l, _) = induction_sides(&g0, &f1, 0);
        assert_eq!(l, (&g0 * &dirac_fermionic_left(&f1)).scale_int(2));
    }

    #[test]
    fn stokes_hand_example() {
        let sig = Signature::new(0, 1);
        let (l, r) = fermionic_stokes(&SuperElement::one(sig), &SuperElement::q(sig, 1)).unwrap();
        let expected = SuperElement::f(sig, 2).scale_int(2);
        assert_eq!(l, expected);
        assert_eq!(r, expected);
        let (l, r) = fermionic_stokes(&SuperElement::one(sig), &SuperElement::one(sig)).unwrap();
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn suites_pass() {
        for n in 1..=2 {
            assert!(check_berezin_equivalence(n, 20, 3).passed());
            for k in 0..=n {
                assert!(check_cnk(n, k, 5, 4).unwrap().passed());
            }
            assert!(check_induction_lemma(n, 0, 10, 5).unwrap().passed());
            assert!(check_fermionic_stokes(n, 30, 6).unwrap().passed());
        }
    }

    #[test]
    fn morera_remark() {
        // x̀² P₁ has Grassmann degree 3 > 2n when n = 1
        let r = check_morera(0, 1, 2).unwrap();
        assert_eq!(r.status, crate::report::Status::Vacuous);
        for (m, n) in [(0, 2), (2, 2)] {
            let r = check_morera(m, n, 2).unwrap();
            assert!(r.passed(), "{}", r.to_json_line());
            assert!(r.observed("nonzero_f").unwrap().as_u64().unwrap() > 0);
        }
    }
}
