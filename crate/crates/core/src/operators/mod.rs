//! Differential operators on `P`: partial derivatives, the super Dirac
//! operator acting from either side, the super Laplace and Euler operators,
//! and the exact identity checks built on them.

mod monogenic;

pub use monogenic::{monogenic_basis, MonogenicBasis};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{integer, Monomial, Signature, SuperElement, VectorPart};
use crate::random::ElementSampler;
use crate::report::{ReportBuilder, VerificationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("Grassmann index {index} out of range 1..={max}")]
    GrassmannIndex { index: usize, max: usize },
    #[error("bosonic index {index} out of range 1..={max}")]
    BosonicIndex { index: usize, max: usize },
    #[error("monogenic basis limited to degree ≤ {max_degree} and generator cap ≤ {max_cap}")]
    BasisTooLarge { max_degree: u32, max_cap: u32 },
}

/// Side from which an operator acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// `∂_{x_i} a`.
pub fn bosonic_derivative(a: &SuperElement, i: usize) -> Result<SuperElement, OperatorError> {
    let sig = a.signature();
    if !(1..=sig.m).contains(&i) {
        return Err(OperatorError::BosonicIndex {
            index: i,
            max: sig.m,
        });
    }
    Ok(a.map_monomials(sig, |mono, c, out| {
        let exp = mono.bosonic[i - 1];
        if exp > 0 {
            let mut m = mono.clone();
            m.bosonic[i - 1] -= 1;
            out.add_term(m, c * integer(i64::from(exp)));
        }
    }))
}

/// Left or right derivative with respect to `x̀_j`.
///
/// The left derivative moves `x̀_j` to the front of the Grassmann factor
/// before removing it; the right derivative moves it to the back, past any
/// parameters `ỳ` as well.
pub fn grassmann_derivative(
    a: &SuperElement,
    j: usize,
    side: Side,
) -> Result<SuperElement, OperatorError> {
    let sig = a.signature();
    if !(1..=sig.grassmann_count()).contains(&j) {
        return Err(OperatorError::GrassmannIndex {
            index: j,
            max: sig.grassmann_count(),
        });
    }
    let bit = 1u64 << (j - 1);
    Ok(a.map_monomials(sig, |mono, c, out| {
        let g = mono.word.grassmann;
        if g & bit == 0 {
            return;
        }
        let passed = match side {
            Side::Left => (g & (bit - 1)).count_ones(),
            Side::Right => (g >> j).count_ones(),
        };
        let mut m = mono.clone();
        m.word.grassmann &= !bit;
        out.add_term(m, if passed % 2 == 0 { c.clone() } else { -c.clone() });
    }))
}

fn weyl(sig: Signature, j: usize) -> SuperElement {
    SuperElement::f(sig, j)
}

/// `∂_x̀ a = 2 Σ_j (è_{2j} ∂_{x̀_{2j-1}} a - è_{2j-1} ∂_{x̀_{2j}} a)`.
pub fn dirac_fermionic_left(a: &SuperElement) -> SuperElement {
    let sig = a.signature();
    let mut out = SuperElement::zero(sig);
    for j in 1..=sig.n {
        let odd = grassmann_derivative(a, 2 * j - 1, Side::Left).unwrap();
        let even = grassmann_derivative(a, 2 * j, Side::Left).unwrap();
        out += &(&weyl(sig, 2 * j) * &odd);
        out -= &(&weyl(sig, 2 * j - 1) * &even);
    }
    out.scale_int(2)
}

/// `∂_x̲ a = Σ_i e_i ∂_{x_i} a`.
pub fn dirac_bosonic_left(a: &SuperElement) -> SuperElement {
    let sig = a.signature();
    let mut out = SuperElement::zero(sig);
    for i in 1..=sig.m {
        out += &(&SuperElement::e(sig, i) * &bosonic_derivative(a, i).unwrap());
    }
    out
}

/// `a ∂_x̀ = 2 Σ_j ((a ∂_{x̀_{2j-1}}) è_{2j} - (a ∂_{x̀_{2j}}) è_{2j-1})` with
/// right derivatives and generators multiplied on the right.
pub fn dirac_fermionic_right(a: &SuperElement) -> SuperElement {
    let sig = a.signature();
    let mut out = SuperElement::zero(sig);
    for j in 1..=sig.n {
        let odd = grassmann_derivative(a, 2 * j - 1, Side::Right).unwrap();
        let even = grassmann_derivative(a, 2 * j, Side::Right).unwrap();
        out += &(&odd * &weyl(sig, 2 * j));
        out -= &(&even * &weyl(sig, 2 * j - 1));
    }
    out.scale_int(2)
}

/// `a ∂_x̲ = Σ_i (∂_{x_i} a) e_i`.
pub fn dirac_bosonic_right(a: &SuperElement) -> SuperElement {
    let sig = a.signature();
    let mut out = SuperElement::zero(sig);
    for i in 1..=sig.m {
        out += &(&bosonic_derivative(a, i).unwrap() * &SuperElement::e(sig, i));
    }
    out
}

/// `∂_x a = ∂_x̀ a - ∂_x̲ a`.
pub fn dirac_left(a: &SuperElement) -> SuperElement {
    &dirac_fermionic_left(a) - &dirac_bosonic_left(a)
}

/// `a ∂_x = -a ∂_x̀ - a ∂_x̲`.
pub fn dirac_right(a: &SuperElement) -> SuperElement {
    -(&dirac_fermionic_right(a) + &dirac_bosonic_right(a))
}

pub fn dirac(a: &SuperElement, side: Side) -> SuperElement {
    match side {
        Side::Left => dirac_left(a),
        Side::Right => dirac_right(a),
    }
}

/// `Δ = 4 Σ_j ∂_{x̀_{2j-1}} ∂_{x̀_{2j}} - Σ_i ∂_{x_i}²`, computed directly from
/// the partial derivatives.
pub fn laplace(a: &SuperElement) -> SuperElement {
    let sig = a.signature();
    let mut fermionic = SuperElement::zero(sig);
    for j in 1..=sig.n {
        let inner = grassmann_derivative(a, 2 * j, Side::Left).unwrap();
        fermionic += &grassmann_derivative(&inner, 2 * j - 1, Side::Left).unwrap();
    }
    let mut bosonic = SuperElement::zero(sig);
    for i in 1..=sig.m {
        let d = bosonic_derivative(a, i).unwrap();
        bosonic += &bosonic_derivative(&d, i).unwrap();
    }
    &fermionic.scale_int(4) - &bosonic
}

/// `Δ_b = -Σ_i ∂_{x_i}²`.
pub fn bosonic_laplace(a: &SuperElement) -> SuperElement {
    let sig = a.signature();
    let mut out = SuperElement::zero(sig);
    for i in 1..=sig.m {
        let d = bosonic_derivative(a, i).unwrap();
        out -= &bosonic_derivative(&d, i).unwrap();
    }
    out
}

/// `E = Σ x_i ∂_{x_i} + Σ x̀_j ∂_{x̀_j}`: multiplies each word by its degree.
pub fn euler(a: &SuperElement) -> SuperElement {
    let sig = a.signature();
    a.map_monomials(sig, |mono, c, out| {
        let k = mono.euler_degree(&sig);
        out.add_term(mono.clone(), c * integer(i64::from(k)));
    })
}

pub fn iterate(a: &SuperElement, times: u32, op: impl Fn(&SuperElement) -> SuperElement) -> SuperElement {
    (0..times).fold(a.clone(), |acc, _| op(&acc))
}

fn vector(sig: Signature) -> SuperElement {
    SuperElement::vector_variable(sig, VectorPart::Full)
}

/// `∂_x x = x ∂_x = M`.
pub fn check_super_dimension(sig: Signature) -> VerificationReport {
    let mut report = ReportBuilder::new("superdim", 0.0)
        .param("m", sig.m)
        .param("n", sig.n);
    let x = vector(sig);
    let expected = SuperElement::from_integer(sig, sig.super_dimension());
    let left = dirac_left(&x);
    let right = dirac_right(&x);
    report.compare_exact("Dl(X)", &left, &expected);
    report.compare_exact("Dr(X)", &right, &expected);
    report.observe("dirac_of_x", left.to_string());
    report.observe("super_dimension", sig.super_dimension());
    report.finish()
}

/// Both identities for `∂_x` applied to `x^{2s} R` and `x^{2s+1} R` with
/// `R ∈ P_k`. Returns `(even lhs, even rhs, odd lhs, odd rhs)`.
pub fn lemma1_sides(r: &SuperElement, s: u32, k: u32) -> [SuperElement; 4] {
    let sig = r.signature();
    let x = vector(sig);
    let x_even = x.pow(2 * s);
    let x_odd = &x_even * &x;
    let dr = dirac_left(r);

    let even_lhs = dirac_left(&(&x_even * r));
    let mut even_rhs = &x_even * &dr;
    if s > 0 {
        even_rhs += &(&x.pow(2 * s - 1) * r).scale_int(2 * i64::from(s));
    }

    let odd_lhs = dirac_left(&(&x_odd * r));
    let factor = 2 * i64::from(k) + sig.super_dimension() + 2 * i64::from(s);
    let odd_rhs = &(&x_even * r).scale_int(factor) - &(&x_odd * &dr);
    [even_lhs, even_rhs, odd_lhs, odd_rhs]
}

/// Lemma-1 identities on random homogeneous `R_k`, plus the monogenic
/// specialisation on every element of the computed basis of `M_k`.
pub fn check_lemma1(sig: Signature, s: u32, k: u32, trials: usize, seed: u64) -> VerificationReport {
    let mut report = ReportBuilder::new("lemma1", 0.0)
        .param("m", sig.m)
        .param("n", sig.n)
        .param("s", s)
        .param("k", k)
        .param("trials", trials)
        .param("seed", seed);
    let mut sampler = ElementSampler::new(seed);
    for _ in 0..trials {
        let r = sampler.homogeneous(sig, k);
        let [el, er, ol, or] = lemma1_sides(&r, s, k);
        report.compare_exact("even", &el, &er);
        report.compare_exact("odd", &ol, &or);
    }
    if k <= 2 {
        if let Ok(basis) = monogenic_basis(sig, k, 1, Side::Left) {
            report.observe("monogenic_basis_dimension", basis.elements.len());
            for p in &basis.elements {
                let [el, _, ol, _] = lemma1_sides(p, s, k);
                let x = vector(sig);
                let mut er = SuperElement::zero(sig);
                if s > 0 {
                    er = (&x.pow(2 * s - 1) * p).scale_int(2 * i64::from(s));
                }
                let factor = 2 * i64::from(k) + sig.super_dimension() + 2 * i64::from(s);
                let or = (&x.pow(2 * s) * p).scale_int(factor);
                report.compare_exact("corollary even", &el, &er);
                report.compare_exact("corollary odd", &ol, &or);
            }
        }
    }
    report.finish()
}

/// `Δ^{t+1}(x² R_{2t}) = 4(t+1)(M/2+t) Δ^t(R_{2t})`.
pub fn lemma2_sides(r: &SuperElement, t: u32) -> (SuperElement, SuperElement) {
    let sig = r.signature();
    let x2 = vector(sig).pow(2);
    let lhs = iterate(&(&x2 * r), t + 1, laplace);
    // 4(t+1)(M/2+t) = 2(t+1)(M+2t)
    let factor = 2 * (i64::from(t) + 1) * (sig.super_dimension() + 2 * i64::from(t));
    let rhs = iterate(r, t, laplace).scale(&BigRational::from_integer(factor.into()));
    (lhs, rhs)
}

pub fn check_lemma2(sig: Signature, t: u32, trials: usize, seed: u64) -> VerificationReport {
    let mut report = ReportBuilder::new("lemma2", 0.0)
        .param("m", sig.m)
        .param("n", sig.n)
        .param("t", t)
        .param("trials", trials)
        .param("seed", seed);
    let mut sampler = ElementSampler::new(seed);
    for trial in 0..trials.max(1) {
        let r = if trial == 0 {
            // R_0 = 1 is always part of the suite when t = 0.
            if t == 0 {
                SuperElement::one(sig)
            } else {
                sampler.homogeneous(sig, 2 * t)
            }
        } else {
            sampler.homogeneous(sig, 2 * t)
        };
        let (lhs, rhs) = lemma2_sides(&r, t);
        report.compare_exact("lemma2", &lhs, &rhs);
    }
    report.finish()
}

pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u16>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

pub(crate) fn subsets(size: usize, count: usize) -> Vec<u64> {
    (0u64..(1u64 << size))
        .filter(|s| s.count_ones() as usize == count)
        .collect()
}

pub(crate) fn monomial(sig: Signature, alpha: Vec<u16>, grassmann: u64, blade: u32, weyl: Vec<u16>) -> Monomial {
    let mut m = Monomial::one(&sig);
    m.bosonic = alpha;
    m.word.grassmann = grassmann;
    m.word.blade = blade;
    m.word.weyl = weyl;
    m
}
