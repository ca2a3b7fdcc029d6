//! Fundamental solutions `ν_k^{m|0}`, `ν₁^{m|2n}` and `ν₂^{m|2n}` for odd `m`,
//! with an exact derivative calculus for functions `Σ_p r^p P_p(u, z̀)`,
//! valid away from `r = 0`.
//!
//! Bosonic variables of the coefficient elements are the components of
//! `u = x̲ - y̲`, Grassmann variables are `z̀ = x̀ - ỳ`, and `r = |u|`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::algebra::text::{format_element, VarNames};
use crate::algebra::{Monomial, Signature, SuperElement};
use crate::fermionic::fermionic_square;
use crate::operators::{
    bosonic_derivative, dirac_fermionic_left, dirac_fermionic_right, grassmann_derivative, Side,
};
use crate::quadrature::NumericSuperValue;
use crate::report::{ReportBuilder, VerificationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("only odd bosonic dimensions are supported, got m = {0}")]
    EvenDimension(usize),
    #[error("kernel index must be at least 1")]
    ZeroIndex,
    #[error("cannot evaluate at r = 0")]
    AtOrigin,
    #[error("point has {got} components, expected {expected}")]
    PointDimension { expected: usize, got: usize },
}

/// `Σ_p r^p P_p` with `P_p` in the shifted frame. Kept canonical: no `u_m^2`
/// factors (they are rewritten as `r² - Σ_{j<m} u_j²`) and no zero parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RadialSuperFunction {
    sig: Signature,
    parts: BTreeMap<i32, SuperElement>,
}

impl RadialSuperFunction {
    pub fn zero(sig: Signature) -> Self {
        RadialSuperFunction {
            sig,
            parts: BTreeMap::new(),
        }
    }

    /// `r^p · a`.
    pub fn from_part(p: i32, a: SuperElement) -> Self {
        let mut out = Self::zero(a.signature());
        out.add_part(p, a);
        out
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn parts(&self) -> impl Iterator<Item = (i32, &SuperElement)> {
        self.parts.iter().map(|(p, a)| (*p, a))
    }

    pub fn part(&self, p: i32) -> Option<&SuperElement> {
        self.parts.get(&p)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Adds `r^p · a`, canonicalising the result.
    pub fn add_part(&mut self, p: i32, a: SuperElement) {
        assert_eq!(a.signature(), self.sig, "signature mismatch");
        let m = self.sig.m;
        let mut pending = vec![(p, a)];
        while let Some((p, a)) = pending.pop() {
            let mut keep = SuperElement::zero(self.sig);
            let mut same = SuperElement::zero(self.sig);
            let mut higher = SuperElement::zero(self.sig);
            for (mono, c) in a.into_terms() {
                if m == 0 || mono.bosonic[m - 1] < 2 {
                    keep.add_term(mono, c);
                    continue;
                }
                // u_m² = r² - Σ_{j<m} u_j²
                let mut base = mono.clone();
                base.bosonic[m - 1] -= 2;
                higher.add_term(base.clone(), c.clone());
                for j in 0..m - 1 {
                    let mut t = base.clone();
                    t.bosonic[j] += 2;
                    same.add_term(t, -c.clone());
                }
            }
            if !same.is_zero() {
                pending.push((p, same));
            }
            if !higher.is_zero() {
                pending.push((p + 2, higher));
            }
            if !keep.is_zero() {
                let slot = self
                    .parts
                    .entry(p)
                    .or_insert_with(|| SuperElement::zero(self.sig));
                *slot += &keep;
                if slot.is_zero() {
                    self.parts.remove(&p);
                }
            }
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self::zero(self.sig);
        for (p, a) in &self.parts {
            out.add_part(*p, a.scale(q));
        }
        out
    }

    pub fn map(&self, f: impl Fn(&SuperElement) -> SuperElement) -> Self {
        let mut out = Self::zero(self.sig);
        for (p, a) in &self.parts {
            out.add_part(*p, f(a));
        }
        out
    }

    pub fn left_mul(&self, a: &SuperElement) -> Self {
        self.map(|b| a * b)
    }

    pub fn right_mul(&self, a: &SuperElement) -> Self {
        self.map(|b| b * a)
    }

    /// `∂_{u_i}(r^p P) = p r^{p-2} u_i P + r^p ∂_{u_i} P`.
    pub fn bosonic_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.sig);
        let ui = SuperElement::x(self.sig, i);
        for (p, a) in &self.parts {
            if *p != 0 {
                out.add_part(p - 2, (&ui * a).scale_int(i64::from(*p)));
            }
            out.add_part(*p, bosonic_derivative(a, i).expect("index within signature"));
        }
        out
    }

    pub fn grassmann_derivative(&self, j: usize, side: Side) -> Self {
        self.map(|a| grassmann_derivative(a, j, side).expect("index within signature"))
    }

    /// `∂_x = ∂_x̀ - ∂_x̲` acting from the left.
    pub fn dirac_left(&self) -> Self {
        let mut out = self.map(dirac_fermionic_left);
        for i in 1..=self.sig.m {
            let e = SuperElement::e(self.sig, i);
            out = out.add(&self.bosonic_derivative(i).left_mul(&e).scale(&-BigRational::one()));
        }
        out
    }

    /// `f ∂_x = -f ∂_x̀ - f ∂_x̲`.
    pub fn dirac_right(&self) -> Self {
        let mut out = self.map(dirac_fermionic_right);
        for i in 1..=self.sig.m {
            let e = SuperElement::e(self.sig, i);
            out = out.add(&self.bosonic_derivative(i).right_mul(&e));
        }
        out.scale(&-BigRational::one())
    }

    pub fn dirac(&self, side: Side) -> Self {
        match side {
            Side::Left => self.dirac_left(),
            Side::Right => self.dirac_right(),
        }
    }

    /// `Δ_b = -Σ ∂_{u_i}²`.
    pub fn bosonic_laplace(&self) -> Self {
        let mut out = Self::zero(self.sig);
        for i in 1..=self.sig.m {
            out = out.add(&self.bosonic_derivative(i).bosonic_derivative(i));
        }
        out.scale(&-BigRational::one())
    }

    /// `Δ = 4 Σ ∂_{z̀_{2j-1}} ∂_{z̀_{2j}} + Δ_b`.
    pub fn laplace(&self) -> Self {
        let mut out = self.bosonic_laplace();
        for j in 1..=self.sig.n {
            let d = self
                .grassmann_derivative(2 * j, Side::Left)
                .grassmann_derivative(2 * j - 1, Side::Left);
            out = out.add(&d.scale(&BigRational::from_integer(4.into())));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, a) in &other.parts {
            out.add_part(*p, a.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Numeric value at `u` (`|u| > 0`), over the remaining Grassmann words.
    pub fn evaluate(&self, u: &[f64]) -> Result<NumericSuperValue, KernelError> {
        if u.len() != self.sig.m {
            return Err(KernelError::PointDimension {
                expected: self.sig.m,
                got: u.len(),
            });
        }
        let r = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r == 0.0 {
            return Err(KernelError::AtOrigin);
        }
        let mut out = NumericSuperValue::zero(2 * self.sig.n);
        for (p, a) in &self.parts {
            out += &NumericSuperValue::evaluate(a, u).scale(r.powi(*p));
        }
        Ok(out)
    }

    /// Rewrites `z̀_j = x̀_j - ỳ_j` into a signature with `n` parameter pairs.
    pub fn expand_parameters(&self) -> Self {
        let target = Signature::with_params(self.sig.m, self.sig.n);
        let mut out = Self::zero(target);
        for (p, a) in &self.parts {
            out.add_part(*p, expand_shifted(a, target));
        }
        out
    }
}

/// Substitutes `z̀_j → x̀_j - ỳ_j` in an element of the shifted frame.
pub fn expand_shifted(a: &SuperElement, target: Signature) -> SuperElement {
    let mut out = SuperElement::zero(target);
    for (mono, c) in a.terms() {
        let mut bosonic = Monomial::one(&target);
        bosonic.bosonic = mono.bosonic.clone();
        bosonic.pi = mono.pi;
        let mut acc = SuperElement::from_monomial(target, bosonic, c.clone());
        for j in 0..a.signature().grassmann_count() {
            if mono.word.grassmann & (1 << j) != 0 {
                acc = &acc * &(&SuperElement::q(target, j + 1) - &SuperElement::y(target, j + 1));
            }
        }
        let mut rest = Monomial::one(&target);
        rest.word.blade = mono.word.blade;
        rest.word.weyl = mono.word.weyl.clone();
        acc = &acc * &SuperElement::from_monomial(target, rest, BigRational::one());
        out += &acc;
    }
    out
}

impl fmt::Display for RadialSuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let names = if self.sig.n_params > 0 {
            VarNames::TRANSLATED
        } else {
            VarNames::SHIFTED
        };
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(p, a)| {
                let body = format_element(a, &names);
                match *p {
                    0 => format!("({body})"),
                    1 => format!("r*({body})"),
                    p => format!("r^{p}*({body})"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for RadialSuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadialSuperFunction[{}]({self})", self.sig)
    }
}

fn check_odd(m: usize) -> Result<(), KernelError> {
    if m.is_multiple_of(2) {
        Err(KernelError::EvenDimension(m))
    } else {
        Ok(())
    }
}

fn double_factorial(k: i64) -> BigInt {
    let mut out = BigInt::one();
    let mut i = k;
    while i > 1 {
        out *= BigInt::from(i);
        i -= 2;
    }
    out
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

/// Coefficient `a_l` of `ν_{2l}^{m|0} = a_l r^{2l-m}`, as a rational times
/// `π^{-(m-1)/2}`.
///
/// The base case makes `Δ_b ν₂ = δ` with `Δ_b = -Σ ∂_i²`:
/// `ν₂ = r^{2-m} / ((m-2) ω_m)` with `ω_m = 2^{(m+1)/2} π^{(m-1)/2} / (m-2)!!`.
/// Higher indices follow from `a_{l-1} = -a_l (2l-m)(2l-2)`.
pub fn bosonic_coefficient(m: usize, l: usize) -> Result<(BigRational, i32), KernelError> {
    check_odd(m)?;
    if l == 0 {
        return Err(KernelError::ZeroIndex);
    }
    let mi = m as i64;
    let omega_rational = BigRational::new(
        BigInt::from(2).pow(m.div_ceil(2) as u32),
        double_factorial(mi - 2),
    );
    let mut a = BigRational::one() / (omega_rational * BigRational::from_integer((mi - 2).into()));
    for k in 2..=l as i64 {
        a = -a / BigRational::from_integer(((2 * k - mi) * (2 * k - 2)).into());
    }
    Ok((a, -((m as i32 - 1) / 2)))
}

/// `ν_k^{m|0}`: `a_l r^{2l-m}` for `k = 2l`, `-∂_x̲ ν_{k+1}^{m|0}` for odd `k`.
pub fn nu_bosonic(sig: Signature, k: usize) -> Result<RadialSuperFunction, KernelError> {
    check_odd(sig.m)?;
    if k == 0 {
        return Err(KernelError::ZeroIndex);
    }
    let sig = sig.without_params();
    if k.is_multiple_of(2) {
        let l = k / 2;
        let (a, pi) = bosonic_coefficient(sig.m, l)?;
        let mut mono = Monomial::one(&sig);
        mono.pi = pi;
        let p = 2 * l as i32 - sig.m as i32;
        Ok(RadialSuperFunction::from_part(
            p,
            SuperElement::from_monomial(sig, mono, a),
        ))
    } else {
        let even = nu_bosonic(sig, k + 1)?;
        let mut out = RadialSuperFunction::zero(sig);
        for i in 1..=sig.m {
            out = out.sub(&even.bosonic_derivative(i).left_mul(&SuperElement::e(sig, i)));
        }
        Ok(out)
    }
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// `ν₂^{m|2n} = Σ_{k=0}^{n} 4^k k!/(n-k)! ν_{2k+2}^{m|0} z̀^{2n-2k}`.
pub fn nu_super_laplace(m: usize, n: usize) -> Result<RadialSuperFunction, KernelError> {
    check_odd(m)?;
    let sig = Signature::new(m, n);
    let z2 = fermionic_square(sig);
    let mut out = RadialSuperFunction::zero(sig);
    for k in 0..=n {
        let c = ratio(BigInt::from(4).pow(k as u32) * factorial(k), factorial(n - k));
        let nu = nu_bosonic(sig, 2 * k + 2)?;
        out = out.add(&nu.right_mul(&z2.pow((n - k) as u32)).scale(&c));
    }
    Ok(out)
}

/// `ν₁^{m|2n} = Σ_{k<n} 2·4^k k!/(n-k-1)! ν_{2k+2}^{m|0} z̀^{2n-2k-1}
///            + Σ_{k≤n} 4^k k!/(n-k)! ν_{2k+1}^{m|0} z̀^{2n-2k}`.
pub fn nu_super_dirac(m: usize, n: usize) -> Result<RadialSuperFunction, KernelError> {
    check_odd(m)?;
    let sig = Signature::new(m, n);
    let z = SuperElement::vector_variable(sig, crate::algebra::VectorPart::Fermionic);
    let z2 = fermionic_square(sig);
    let mut out = RadialSuperFunction::zero(sig);
    for k in 0..n {
        let c = ratio(
            BigInt::from(2) * BigInt::from(4).pow(k as u32) * factorial(k),
            factorial(n - k - 1),
        );
        let odd_power = &z2.pow((n - k - 1) as u32) * &z;
        out = out.add(&nu_bosonic(sig, 2 * k + 2)?.right_mul(&odd_power).scale(&c));
    }
    for k in 0..=n {
        let c = ratio(BigInt::from(4).pow(k as u32) * factorial(k), factorial(n - k));
        out = out.add(&nu_bosonic(sig, 2 * k + 1)?.right_mul(&z2.pow((n - k) as u32)).scale(&c));
    }
    Ok(out)
}

/// Exact checks away from the origin: `∂_x ν₁ = ν₁ ∂_x = 0`,
/// `∂_x ν₂ = ν₂ ∂_x = ν₁`, `Δ ν₂ = 0`, and `Δ_b ν_{2l} = ν_{2l-2}` for
/// `2 ≤ l ≤ n + 1`.
pub fn check_kernel_monogenic(m: usize, n: usize) -> Result<VerificationReport, KernelError> {
    check_odd(m)?;
    let sig = Signature::new(m, n);
    let mut report = ReportBuilder::new("kernel-monogenic", 0.0)
        .param("m", m)
        .param("n", n);
    let nu1 = nu_super_dirac(m, n)?;
    let nu2 = nu_super_laplace(m, n)?;
    let zero = RadialSuperFunction::zero(sig);
    let mut compare = |label: &str, lhs: &RadialSuperFunction, rhs: &RadialSuperFunction| {
        let diff = lhs.sub(rhs);
        if diff.is_zero() {
            report.compare_scalar(label, 0.0);
        } else {
            report.fail(label, format!("{lhs} ≠ {rhs}"));
        }
    };
    compare("Dl(nu1)", &nu1.dirac_left(), &zero);
    compare("Dr(nu1)", &nu1.dirac_right(), &zero);
    compare("Dl(nu2)", &nu2.dirac_left(), &nu1);
    compare("Dr(nu2)", &nu2.dirac_right(), &nu1);
    compare("Lap(nu2)", &nu2.laplace(), &zero);
    for l in 2..=n + 1 {
        let hi = nu_bosonic(sig, 2 * l)?;
        let lo = nu_bosonic(sig, 2 * l - 2)?;
        compare(&format!("Lap_b(nu{})", 2 * l), &hi.bosonic_laplace(), &lo);
    }
    report.observe("nu1_parts", nu1.parts.len());
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn value(f: &RadialSuperFunction, u: &[f64]) -> f64 {
        let v = f.evaluate(u).unwrap();
        v.coefficient(&crate::algebra::Word::identity(2 * f.signature().n))
    }

    #[test]
    fn classical_normalisations() {
        let sig = Signature::new(3, 0);
        let nu2 = nu_bosonic(sig, 2).unwrap();
        assert!((value(&nu2, &[1.0, 0.0, 0.0]) - 1.0 / (4.0 * PI)).abs() < 1e-15);
        let sig1 = Signature::new(1, 0);
        let nu2 = nu_bosonic(sig1, 2).unwrap();
        assert!((value(&nu2, &[3.0]) + 1.5).abs() < 1e-15);
        assert!((value(&nu2, &[-3.0]) + 1.5).abs() < 1e-15);
    }

    #[test]
    fn newtonian_potential_is_a_fundamental_solution_in_the_mean() {
        // flux of -∂_r ν₂ through a sphere of radius R is 1 for Δ_b = -Δ
        for m in [1usize, 3, 5] {
            let (a, pi) = bosonic_coefficient(m, 1).unwrap();
            let a = crate::algebra::rational_to_f64(&a) * PI.powi(pi);
            let omega = match m {
                1 => 2.0,
                3 => 4.0 * PI,
                _ => 8.0 * PI * PI / 3.0,
            };
            let r: f64 = 0.7;
            let dr = a * (2.0 - m as f64) * r.powf(1.0 - m as f64);
            assert!((-dr * omega * r.powi(m as i32 - 1) - 1.0).abs() < 1e-14, "m={m}");
        }
    }

    #[test]
    fn recurrence_and_laplacian() {
        for m in [1usize, 3, 5] {
            let sig = Signature::new(m, 0);
            for l in 2..=4 {
                let hi = nu_bosonic(sig, 2 * l).unwrap();
                let lo = nu_bosonic(sig, 2 * l - 2).unwrap();
                assert_eq!(hi.bosonic_laplace(), lo, "m={m} l={l}");
            }
            assert!(nu_bosonic(sig, 2).unwrap().bosonic_laplace().is_zero());
        }
    }

    #[test]
    fn even_dimension_rejected() {
        assert_eq!(nu_super_dirac(2, 1).unwrap_err(), KernelError::EvenDimension(2));
        assert_eq!(nu_bosonic(Signature::new(3, 0), 0).unwrap_err(), KernelError::ZeroIndex);
    }

    #[test]
    fn cauchy_kernel_reduction() {
        let sig = Signature::new(3, 0);
        let nu1 = nu_super_dirac(3, 0).unwrap();
        assert_eq!(nu1, nu_bosonic(sig, 1).unwrap());
        // -∂_x̲ (1/(4π r)) = u̲ / (4π r³)
        let v = nu1.evaluate(&[0.0, 2.0, 0.0]).unwrap();
        let e2 = crate::algebra::Word { grassmann: 0, blade: 2, weyl: vec![] };
        assert!((v.coefficient(&e2) - 2.0 / (4.0 * PI * 8.0)).abs() < 1e-15);
    }

    #[test]
    fn top_term_of_super_laplace_kernel() {
        // (3|2): the k = n term carries ν₄^{3|0} with coefficient 4·1!/0!
        let nu2 = nu_super_laplace(3, 1).unwrap();
        let sig = Signature::new(3, 1);
        let grassmann_free = nu2.map(|a| a.filter(|m| m.word.grassmann == 0));
        let expected = nu_bosonic(sig, 4).unwrap().scale(&BigRational::from_integer(4.into()));
        assert_eq!(grassmann_free, expected);
    }

    #[test]
    fn kernels_are_monogenic() {
        for m in [1, 3, 5] {
            for n in 0..=2 {
                let r = check_kernel_monogenic(m, n).unwrap();
                assert!(r.passed(), "{}", r.to_json_line());
            }
        }
    }

    #[test]
    fn canonical_form_reduces_last_coordinate() {
        let sig = Signature::new(2, 0);
        let mut f = RadialSuperFunction::zero(sig);
        f.add_part(-2, SuperElement::x(sig, 2).pow(2));
        f.add_part(-2, SuperElement::x(sig, 1).pow(2));
        assert_eq!(f, RadialSuperFunction::from_part(0, SuperElement::one(sig)));
    }

    #[test]
    fn homogeneity_under_scaling() {
        let nu1 = nu_super_dirac(3, 1).unwrap();
        for (p, a) in nu1.parts() {
            let part = RadialSuperFunction::from_part(p, a.clone());
            let deg = p + a.terms().next().unwrap().0.bosonic_degree() as i32;
            let u = [0.3, -0.2, 0.5];
            let u2: Vec<f64> = u.iter().map(|v| 2.0 * v).collect();
            let a1 = part.evaluate(&u).unwrap();
            let a2 = part.evaluate(&u2).unwrap();
            if a.terms().all(|(m, _)| m.bosonic_degree() as i32 + p == deg) {
                assert!(a2.max_rel_error(&a1.scale(2f64.powi(deg))).0 < 1e-14);
            }
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let nu2 = nu_super_laplace(3, 1).unwrap();
        let u = [0.4, -0.3, 0.8];
        for i in 1..=3 {
            let exact = nu2.bosonic_derivative(i).evaluate(&u).unwrap();
            let h = 1e-5;
            let mut up = u;
            let mut dn = u;
            up[i - 1] += h;
            dn[i - 1] -= h;
            let fd = (&nu2.evaluate(&up).unwrap() - &nu2.evaluate(&dn).unwrap()).scale(0.5 / h);
            assert!(fd.max_rel_error(&exact).0 < 1e-8);
        }
        assert_eq!(nu2.evaluate(&[0.0; 3]).unwrap_err(), KernelError::AtOrigin);
    }

    #[test]
    fn parameter_expansion_of_square() {
        let sig = Signature::new(1, 1);
        let f = RadialSuperFunction::from_part(0, fermionic_square(sig));
        let expanded = f.expand_parameters();
        let t = expanded.signature();
        let q1 = SuperElement::q(t, 1);
        let q2 = SuperElement::q(t, 2);
        let y1 = SuperElement::y(t, 1);
        let y2 = SuperElement::y(t, 2);
        let expected = &(&q1 - &y1) * &(&q2 - &y2);
        assert_eq!(expanded.part(0).unwrap(), &expected);
    }

    #[test]
    fn display_has_radial_factors() {
        let s = nu_bosonic(Signature::new(3, 0), 2).unwrap().to_string();
        assert_eq!(s, "r^-1*(1/4*pi^-1)");
    }
}
