//! The general Stokes theorem in superspace and its consequences: Cauchy's
//! theorem, the Cauchy–Pompeiu formula, the representation of 2-monogenic
//! functions and the limits of the bosonic kernels on shrinking balls.
//!
//! Grassmann integrals are exact. Bosonic integrals reduce to scalar moments
//! `∫ r^p u^α [n_j]` of the region, computed by quadrature once per region.

use num_rational::BigRational;
use serde_json::json;
use thiserror::Error;

use crate::algebra::{Signature, SuperElement, VectorPart};
use crate::fermionic::{berezin, parameter_volume, FermionicElements, FermionicError};
use crate::kernels::{nu_bosonic, nu_super_dirac, nu_super_laplace, KernelError, RadialSuperFunction};
use crate::operators::{dirac_left, dirac_right, monogenic_basis, OperatorError, Side};
use crate::quadrature::{Moments, NumericSuperValue, QuadratureError, Region, RegionKind};
use crate::random::ElementSampler;
use crate::report::{ReportBuilder, VerificationReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CauchyError {
    #[error("super Stokes formulas need n ≥ 1; use the bosonic Stokes check for n = 0")]
    Degenerate,
    #[error("bosonic dimension {0} unsupported (need 1, 2 or 3, odd for kernels)")]
    UnsupportedDimension(usize),
    #[error("interior point must be the region center")]
    InteriorOffCenter,
    #[error("point lies on the boundary of the region")]
    OnBoundary,
    #[error("region must be solid")]
    NotSolid,
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Fermionic(#[from] FermionicError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// The two boundary contributions of `∫ f dσ_x g`:
/// `fermionic = ∫_Σ ∫_B f dσ_x̀ g dV(x̲)` and
/// `bosonic = ∫_{∂Σ} ∫_B f dV(x̀) dσ_x̲ g`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingValue {
    pub fermionic: NumericSuperValue,
    pub bosonic: NumericSuperValue,
}

impl PairingValue {
    pub fn value(&self) -> NumericSuperValue {
        &self.fermionic - &self.bosonic
    }
}

/// Integration context for one region in the frame `u = x̲ - y̲`, working in
/// the signature `(m|2n)` with `n` pairs of parameters `ỳ`.
pub struct Integrator {
    sig: Signature,
    elements: FermionicElements,
    volume: Moments,
    boundary: Moments,
}

impl Integrator {
    pub fn new(n: usize, region: &Region, y: &[f64]) -> Result<Self, CauchyError> {
        if n == 0 {
            return Err(CauchyError::Degenerate);
        }
        if region.kind.is_boundary() {
            return Err(CauchyError::NotSolid);
        }
        let m = region.dimension();
        let sig = Signature::with_params(m, n);
        Ok(Integrator {
            sig,
            elements: FermionicElements::new(sig)?,
            volume: Moments::new(region.clone(), y.to_vec())?,
            boundary: Moments::new(region.boundary()?, y.to_vec())?,
        })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn region(&self) -> &Region {
        self.volume.region()
    }

    fn integrate(moments: &mut Moments, h: &RadialSuperFunction, normal: usize) -> Result<NumericSuperValue, CauchyError> {
        let mut out = NumericSuperValue::zero(2 * h.signature().n);
        for (p, a) in h.parts() {
            out += &moments.integrate(a, p, normal)?;
        }
        Ok(out)
    }

    /// `∫_Σ ∫_B h dV(x̀) dV(x̲)`.
    pub fn volume_term(&mut self, h: &RadialSuperFunction) -> Result<NumericSuperValue, CauchyError> {
        let integrand = h.right_mul(&self.elements.volume).map(berezin);
        Self::integrate(&mut self.volume, &integrand, 0)
    }

    /// Boundary pairing `∫_{B,Σ} f dσ_x̀ dV(x̲) g - ∫_{B,∂Σ} f dV(x̀) dσ_x̲ g`.
    pub fn pairing(&mut self, f: &RadialSuperFunction, g: &RadialSuperFunction) -> Result<PairingValue, CauchyError> {
        let sig = self.sig;
        let fermionic_integrand = product(f, &self.elements.surface, g).map(berezin);
        let fermionic = Self::integrate(&mut self.volume, &fermionic_integrand, 0)?;
        let mut bosonic = NumericSuperValue::zero(2 * sig.n);
        for j in 1..=sig.m {
            let mid = &self.elements.volume * &SuperElement::e(sig, j);
            let integrand = product(f, &mid, g).map(berezin);
            bosonic += &Self::integrate(&mut self.boundary, &integrand, j)?;
        }
        Ok(PairingValue { fermionic, bosonic })
    }
}

/// `f · mid · g` for radial functions.
fn product(f: &RadialSuperFunction, mid: &SuperElement, g: &RadialSuperFunction) -> RadialSuperFunction {
    let mut out = RadialSuperFunction::zero(f.signature());
    for (p, a) in f.parts() {
        let left = a * mid;
        for (q, b) in g.parts() {
            out.add_part(p + q, &left * b);
        }
    }
    out
}

fn radial(a: SuperElement) -> RadialSuperFunction {
    RadialSuperFunction::from_part(0, a)
}

/// `a(y + u)` with `y` exact: bosonic variables are re-read as `u`.
pub fn translate(a: &SuperElement, y: &[BigRational]) -> SuperElement {
    let sig = a.signature();
    let mut out = SuperElement::zero(sig);
    for (mono, c) in a.terms() {
        let mut rest = mono.clone();
        rest.bosonic = vec![0; sig.m];
        let mut acc = SuperElement::from_monomial(sig, rest, c.clone());
        for (i, &k) in mono.bosonic.iter().enumerate() {
            if k > 0 {
                let shifted = &SuperElement::from_rational(sig, y[i].clone()) + &SuperElement::x(sig, i + 1);
                acc = &shifted.pow(u32::from(k)) * &acc;
            }
        }
        out += &acc;
    }
    out
}

/// `a(y)`: bosonic variables set to `y`, each `x̀_j` replaced by `ỳ_j`.
/// `a` must not already contain parameters.
pub fn substitute_point(a: &SuperElement, y: &[BigRational]) -> SuperElement {
    let sig = a.signature();
    let shift = 2 * sig.n;
    a.map_monomials(sig, |mono, c, out| {
        let mut coeff = c.clone();
        for (yi, &k) in y.iter().zip(&mono.bosonic) {
            coeff *= num_traits::pow(yi.clone(), usize::from(k));
        }
        let mut m = mono.clone();
        m.bosonic = vec![0; sig.m];
        assert_eq!(m.word.grassmann & !sig.grassmann_mask(), 0, "parameters already present");
        // every x̀ precedes every ỳ, so moving the block keeps the order
        m.word.grassmann <<= shift;
        out.add_term(m, coeff);
    })
}

pub fn exact_point(y: &[f64]) -> Vec<BigRational> {
    y.iter()
        .map(|v| BigRational::from_float(*v).expect("finite coordinate"))
        .collect()
}

fn embed(a: &SuperElement, sig: Signature) -> SuperElement {
    a.with_signature(sig)
}

/// Both sides of the general Stokes theorem for polynomial `f`, `g` in
/// `(m|2n)`: the boundary pairing and `∫ [(f ∂_x) g + f (∂_x g)] dV(x)`.
pub fn general_stokes_sides(
    f: &SuperElement,
    g: &SuperElement,
    integrator: &mut Integrator,
) -> Result<(PairingValue, NumericSuperValue), CauchyError> {
    let sig = integrator.signature();
    let f = embed(f, sig);
    let g = embed(g, sig);
    let lhs = integrator.pairing(&radial(f.clone()), &radial(g.clone()))?;
    let integrand = &(&dirac_right(&f) * &g) + &(&f * &dirac_left(&g));
    let rhs = integrator.volume_term(&radial(integrand))?;
    Ok((lhs, rhs))
}

fn tally_pairing(report: &mut ReportBuilder, label: &str, lhs: &PairingValue, rhs: &NumericSuperValue) {
    report.compare_numeric(label, &lhs.value(), rhs);
}

pub fn check_general_stokes(
    m: usize,
    n: usize,
    max_degree: u32,
    trials: usize,
    seed: u64,
    region: &Region,
    tol: f64,
) -> Result<VerificationReport, CauchyError> {
    let mut integrator = Integrator::new(n, region, &vec![0.0; region.dimension()])?;
    if region.dimension() != m {
        return Err(CauchyError::UnsupportedDimension(m));
    }
    let sig = Signature::new(m, n);
    let mut report = ReportBuilder::new("general-stokes", tol)
        .param("m", m)
        .param("n", n)
        .param("max_degree", max_degree)
        .param("trials", trials)
        .param("seed", seed)
        .param("region", json!(region));
    let mut sampler = ElementSampler::new(seed);
    let mut largest_parts = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let f = sampler.polynomial(sig, max_degree);
        let g = sampler.polynomial(sig, max_degree);
        let (lhs, rhs) = general_stokes_sides(&f, &g, &mut integrator)?;
        largest_parts.0 = largest_parts.0.max(lhs.fermionic.max_abs());
        largest_parts.1 = largest_parts.1.max(lhs.bosonic.max_abs());
        tally_pairing(&mut report, "stokes", &lhs, &rhs);
    }
    report.observe("max_fermionic_part", largest_parts.0);
    report.observe("max_bosonic_part", largest_parts.1);
    Ok(report.finish())
}

/// Random element of the span of a monogenic basis.
fn random_combination(basis: &[SuperElement], sampler: &mut ElementSampler, sig: Signature) -> SuperElement {
    use rand::Rng;
    let mut out = SuperElement::zero(sig);
    let count = basis.len().min(3);
    for _ in 0..count {
        let i = sampler.rng().gen_range(0..basis.len());
        out += &basis[i].scale(&sampler.coefficient());
    }
    out
}

/// Pairing of right monogenic `f` with left monogenic `g`, expected to vanish.
pub fn check_cauchy(
    m: usize,
    n: usize,
    trials: usize,
    seed: u64,
    region: &Region,
    tol: f64,
) -> Result<VerificationReport, CauchyError> {
    if region.dimension() != m {
        return Err(CauchyError::UnsupportedDimension(m));
    }
    let mut integrator = Integrator::new(n, region, &vec![0.0; m])?;
    let sig = Signature::new(m, n);
    let mut report = ReportBuilder::new("cauchy", tol)
        .param("m", m)
        .param("n", n)
        .param("trials", trials)
        .param("seed", seed)
        .param("region", json!(region));
    let mut left = Vec::new();
    let mut right = Vec::new();
    for k in 0..=2 {
        left.extend(monogenic_basis(sig, k, 1, Side::Left)?.elements);
        right.extend(monogenic_basis(sig, k, 1, Side::Right)?.elements);
    }
    report.observe("left_basis", left.len());
    report.observe("right_basis", right.len());
    let zero = NumericSuperValue::zero(2 * n);
    let one = SuperElement::one(sig);
    let mut sampler = ElementSampler::new(seed);
    for trial in 0..trials {
        let g = random_combination(&left, &mut sampler, sig);
        let f = random_combination(&right, &mut sampler, sig);
        let (f, g) = match trial {
            0 => (one.clone(), one.clone()),
            1 => (one.clone(), g),
            2 => (f, one.clone()),
            _ => (f, g),
        };
        if !dirac_right(&f).is_zero() || !dirac_left(&g).is_zero() {
            report.fail("inputs", "solver output is not monogenic");
            continue;
        }
        let sig_p = integrator.signature();
        let value = integrator.pairing(&radial(embed(&f, sig_p)), &radial(embed(&g, sig_p)))?;
        report.compare_numeric("pairing", &value.value(), &zero);
    }
    Ok(report.finish())
}

/// Where the kernel singularity sits relative to the region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointLocation {
    Inside,
    Outside,
}

fn locate(region: &Region, y: &[f64]) -> Result<PointLocation, CauchyError> {
    let d = region
        .center
        .iter()
        .zip(y)
        .map(|(c, p)| (p - c) * (p - c))
        .sum::<f64>()
        .sqrt();
    if d == 0.0 {
        Ok(PointLocation::Inside)
    } else if d < region.radius {
        Err(CauchyError::InteriorOffCenter)
    } else if d == region.radius {
        Err(CauchyError::OnBoundary)
    } else {
        Ok(PointLocation::Outside)
    }
}

/// Default exterior point: twice the radius from the center along `x_1`.
pub fn exterior_point(region: &Region) -> Vec<f64> {
    let mut y = region.center.clone();
    y[0] += 2.0 * region.radius;
    y
}

/// Left side of Cauchy–Pompeiu and the expected right side
/// (`g(y) dV(ỳ)` inside, `0` outside).
pub fn pompeiu_sides(
    g: &SuperElement,
    region: &Region,
    y: &[f64],
) -> Result<(NumericSuperValue, NumericSuperValue), CauchyError> {
    let location = locate(region, y)?;
    let src = g.signature();
    if src.m.is_multiple_of(2) {
        return Err(KernelError::EvenDimension(src.m).into());
    }
    let mut integrator = Integrator::new(src.n, region, y)?;
    let sig = integrator.signature();
    let y_exact = exact_point(y);
    let g_shifted = translate(&embed(g, sig), &y_exact);
    let nu1 = nu_super_dirac(src.m, src.n)?.expand_parameters();
    let boundary = integrator.pairing(&nu1, &radial(g_shifted.clone()))?;
    let volume = integrator.volume_term(&product(&nu1, &SuperElement::one(sig), &radial(dirac_left(&g_shifted))))?;
    let lhs = &boundary.value() - &volume;
    let expected = expected_value(g, &y_exact, location, sig);
    Ok((lhs, expected))
}

fn expected_value(g: &SuperElement, y: &[BigRational], location: PointLocation, sig: Signature) -> NumericSuperValue {
    match location {
        PointLocation::Inside => {
            let gy = substitute_point(&embed(g, sig), y);
            NumericSuperValue::from_exact(&(&gy * &parameter_volume(sig)))
        }
        PointLocation::Outside => NumericSuperValue::zero(2 * sig.n),
    }
}

/// Test functions for the Pompeiu and representation checks: `1`, a
/// monogenic of degree one, and random polynomials.
fn pompeiu_inputs(sig: Signature, trials: usize, seed: u64) -> Result<Vec<(String, SuperElement)>, CauchyError> {
    let mut inputs = vec![("1".to_string(), SuperElement::one(sig))];
    let monogenic = if sig.m >= 2 {
        &(&SuperElement::x(sig, 1) * &SuperElement::e(sig, 1))
            - &(&SuperElement::x(sig, 2) * &SuperElement::e(sig, 2))
    } else {
        monogenic_basis(sig, 1, 1, Side::Left)?
            .elements
            .into_iter()
            .find(|e| e.terms().any(|(m, _)| m.bosonic_degree() > 0))
            .unwrap_or_else(|| SuperElement::one(sig))
    };
    inputs.push((monogenic.to_string(), monogenic));
    let mut sampler = ElementSampler::new(seed);
    for _ in 0..trials {
        let g = sampler.polynomial(sig, 2);
        inputs.push((g.to_string(), g));
    }
    Ok(inputs)
}

/// Cauchy–Pompeiu with the singularity at the center (inside) and at a
/// point outside the region. The inside residual must also shrink (or stay
/// below `1e-12`) when the resolution doubles.
#[allow(clippy::too_many_arguments)]
pub fn check_pompeiu(
    m: usize,
    n: usize,
    region: &Region,
    trials: usize,
    seed: u64,
    tol_inside: f64,
    tol_outside: f64,
) -> Result<VerificationReport, CauchyError> {
    if region.dimension() != m || m.is_multiple_of(2) {
        return Err(CauchyError::UnsupportedDimension(m));
    }
    let sig = Signature::new(m, n);
    let mut inside = ReportBuilder::new("pompeiu", tol_inside);
    let mut outside = ReportBuilder::new("pompeiu", tol_outside);
    let y_out = exterior_point(region);
    let inputs = pompeiu_inputs(sig, trials, seed)?;
    let mut inside_residuals = Vec::new();
    for (label, g) in &inputs {
        let (lhs, rhs) = pompeiu_sides(g, region, &region.center)?;
        inside_residuals.push(lhs.max_rel_error(&rhs).0);
        inside.compare_numeric(&format!("inside g={label}"), &lhs, &rhs);
        let (lhs, rhs) = pompeiu_sides(g, region, &y_out)?;
        outside.compare_numeric(&format!("outside g={label}"), &lhs, &rhs);
    }
    // exact 0/1 pattern of dV(ỳ) for g = 1
    let (lhs, rhs) = pompeiu_sides(&SuperElement::one(sig), region, &region.center)?;
    let pattern_ok = lhs.terms().all(|(w, c)| c.round() == rhs.coefficient(w))
        && rhs.terms().all(|(w, c)| lhs.coefficient(w).round() == *c)
        && rhs.terms().all(|(_, c)| *c == 1.0);
    if !pattern_ok {
        inside.fail("dV pattern", format!("{lhs} vs {rhs}"));
    }
    // convergence under doubling, for the worst inside input
    let worst = inside_residuals
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let finer = region.with_resolution(2 * region.resolution);
    let (lhs, rhs) = pompeiu_sides(&inputs[worst].1, &finer, &finer.center)?;
    let coarse = inside_residuals[worst];
    let fine = lhs.max_rel_error(&rhs).0;
    const FLOOR: f64 = 1e-12;
    if !(fine < coarse || (fine <= FLOOR && coarse <= FLOOR)) {
        inside.fail(
            "doubling",
            format!("residual {coarse:e} at N={} vs {fine:e} at N={}", region.resolution, finer.resolution),
        );
    }
    inside.observe("inside_residual", coarse);
    inside.observe("inside_residual_doubled", fine);
    inside.observe("inside_max_rel_error", inside_residuals.iter().cloned().fold(0.0, f64::max));
    inside.observe("exterior_point", json!(y_out));
    inside.merge(outside);
    let mut report = inside;
    report.set_param("m", m);
    report.set_param("n", n);
    report.set_param("trials", trials);
    report.set_param("seed", seed);
    report.set_param("region", json!(region));
    report.set_param("tolerance_outside", tol_outside);
    Ok(report.finish())
}

/// `∫ ν₁ dσ_x g - ∫ ν₂ dσ_x (∂_x g)`, expected `g(y) dV(ỳ)` inside and `0`
/// outside when `∂_x² g = 0`.
pub fn k_monogenic_sides(
    g: &SuperElement,
    region: &Region,
    y: &[f64],
) -> Result<(NumericSuperValue, NumericSuperValue), CauchyError> {
    let location = locate(region, y)?;
    let src = g.signature();
    let mut integrator = Integrator::new(src.n, region, y)?;
    let sig = integrator.signature();
    let y_exact = exact_point(y);
    let g_shifted = translate(&embed(g, sig), &y_exact);
    let nu1 = nu_super_dirac(src.m, src.n)?.expand_parameters();
    let nu2 = nu_super_laplace(src.m, src.n)?.expand_parameters();
    let first = integrator.pairing(&nu1, &radial(g_shifted.clone()))?;
    let second = integrator.pairing(&nu2, &radial(dirac_left(&g_shifted)))?;
    let lhs = &first.value() - &second.value();
    Ok((lhs, expected_value(g, &y_exact, location, sig)))
}

pub fn check_k_monogenic(
    m: usize,
    n: usize,
    region: &Region,
    tol_inside: f64,
    tol_outside: f64,
) -> Result<VerificationReport, CauchyError> {
    if region.dimension() != m || m.is_multiple_of(2) {
        return Err(CauchyError::UnsupportedDimension(m));
    }
    let sig = Signature::new(m, n);
    let x = SuperElement::vector_variable(sig, VectorPart::Full);
    let mut inside = ReportBuilder::new("k-monogenic", tol_inside)
        .param("m", m)
        .param("n", n)
        .param("k", 2)
        .param("region", json!(region))
        .param("tolerance_outside", tol_outside);
    let mut outside = ReportBuilder::new("k-monogenic", tol_outside);
    if !dirac_left(&dirac_left(&x)).is_zero() {
        inside.fail("input", "∂_x² x ≠ 0");
    }
    let mut inputs = vec![("X".to_string(), x.clone())];
    if m >= 2 {
        let p = &(&SuperElement::x(sig, 1) * &SuperElement::e(sig, 1))
            - &(&SuperElement::x(sig, 2) * &SuperElement::e(sig, 2));
        inputs.push((p.to_string(), p));
    }
    inputs.push(("1".into(), SuperElement::one(sig)));
    let y_out = exterior_point(region);
    for (label, g) in &inputs {
        let (lhs, rhs) = k_monogenic_sides(g, region, &region.center)?;
        inside.compare_numeric(&format!("inside g={label}"), &lhs, &rhs);
        let (lhs, rhs) = k_monogenic_sides(g, region, &y_out)?;
        outside.compare_numeric(&format!("outside g={label}"), &lhs, &rhs);
    }
    inside.merge(outside);
    Ok(inside.finish())
}

/// Integrals of `ν_k^{m|0}(x - y) f` over `B(y, R)` and `∂B(y, R)` for one
/// radius. Returns `(volume[k-1], boundary[k-1])` for `k = 1..=k_max`.
pub fn limit_integrals(
    f: &SuperElement,
    y: &[f64],
    radius: f64,
    k_max: usize,
    resolution: usize,
) -> Result<(Vec<NumericSuperValue>, Vec<NumericSuperValue>), CauchyError> {
    let sig = f.signature().without_params();
    let m = sig.m;
    let region = Region::new(RegionKind::solid(m)?, y.to_vec(), radius, resolution)?;
    let mut volume = Moments::new(region.clone(), y.to_vec())?;
    let mut boundary = Moments::new(region.boundary()?, y.to_vec())?;
    let f_shifted = translate(f, &exact_point(y));
    let mut vols = Vec::new();
    let mut bounds = Vec::new();
    for k in 1..=k_max {
        let nu = nu_bosonic(sig, k)?;
        let h = product(&nu, &SuperElement::one(sig), &radial(f_shifted.clone()));
        let mut v = NumericSuperValue::zero(2 * sig.n);
        for (p, a) in h.parts() {
            v += &volume.integrate(a, p, 0)?;
        }
        vols.push(v);
        let mut b = NumericSuperValue::zero(2 * sig.n);
        for j in 1..=m {
            let h = product(&nu, &SuperElement::e(sig, j), &radial(f_shifted.clone()));
            for (p, a) in h.parts() {
                b += &boundary.integrate(a, p, j)?;
            }
        }
        bounds.push(b);
    }
    Ok((vols, bounds))
}

/// Shrinking-ball limits of the bosonic kernels: the `k = 1` boundary
/// integral tends to `-f(y)` with error ratio at least `min_ratio` between
/// successive radii; every other boundary integral and every volume integral
/// decreases monotonically and ends below `final_tol`.
#[allow(clippy::too_many_arguments)]
pub fn check_limit_lemma(
    f: &SuperElement,
    y: &[f64],
    radii: &[f64],
    k_max: usize,
    resolution: usize,
    min_ratio: f64,
    final_tol: f64,
) -> Result<VerificationReport, CauchyError> {
    let sig = f.signature();
    let mut report = ReportBuilder::new("limit-lemma", final_tol)
        .param("m", sig.m)
        .param("k_max", k_max)
        .param("radii", json!(radii))
        .param("y", json!(y))
        .param("f", f.to_string())
        .param("resolution", resolution)
        .param("min_ratio", min_ratio);
    let f_y = NumericSuperValue::from_exact(&substitute_point(f, &exact_point(y)));
    let target = -&f_y;
    let mut volume_errors = vec![Vec::new(); k_max];
    let mut boundary_errors = vec![Vec::new(); k_max];
    for &r in radii {
        let (vols, bounds) = limit_integrals(f, y, r, k_max, resolution)?;
        for k in 0..k_max {
            volume_errors[k].push(vols[k].max_abs());
            let reference = if k == 0 { target.clone() } else { NumericSuperValue::zero(2 * sig.n) };
            boundary_errors[k].push((&bounds[k] - &reference).max_abs());
        }
    }
    const FLOOR: f64 = 1e-13;
    let mut ratios = Vec::new();
    for w in boundary_errors[0].windows(2) {
        if w[0] <= FLOOR && w[1] <= FLOOR {
            continue;
        }
        let ratio = w[0] / w[1];
        ratios.push(ratio);
        if !(ratio >= min_ratio) {
            report.fail("k=1 boundary ratio", format!("{} → {}: ratio {ratio}", w[0], w[1]));
        }
    }
    for (kind, errors) in [("volume", &volume_errors), ("boundary", &boundary_errors)] {
        for (k, seq) in errors.iter().enumerate() {
            if kind == "boundary" && k == 0 {
                report.compare_scalar("k=1 boundary final", *seq.last().unwrap_or(&0.0));
                continue;
            }
            for w in seq.windows(2) {
                if !(w[1] < w[0] || w[1] <= FLOOR) {
                    report.fail(&format!("{kind} k={} monotone", k + 1), format!("{seq:?}"));
                }
            }
            report.compare_scalar(&format!("{kind} k={} final", k + 1), *seq.last().unwrap_or(&0.0));
        }
    }
    report.observe("k1_boundary_errors", json!(boundary_errors[0]));
    report.observe("k1_ratios", json!(ratios));
    report.observe("volume_errors", json!(volume_errors));
    report.observe("boundary_errors", json!(boundary_errors));
    Ok(report.finish())
}

/// Default non-harmonic test function for the limit lemma:
/// `1 + x_1² + x_1 x_m`.
pub fn limit_test_function(m: usize) -> SuperElement {
    let sig = Signature::new(m, 0);
    let x1 = SuperElement::x(sig, 1);
    &(&SuperElement::one(sig) + &x1.pow(2)) + &(&x1 * &SuperElement::x(sig, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Word;

    #[test]
    fn hand_witness_on_unit_interval() {
        let sig = Signature::new(1, 1);
        let region = Region::new(RegionKind::Interval, vec![0.5], 0.5, 8).unwrap();
        let mut integrator = Integrator::new(1, &region, &[0.0]).unwrap();
        let (lhs, rhs) =
            general_stokes_sides(&SuperElement::one(sig), &SuperElement::x(sig, 1), &mut integrator).unwrap();
        let e1 = Word { grassmann: 0, blade: 1, weyl: vec![0, 0] };
        let expected = NumericSuperValue::word(e1, -1.0);
        assert!(lhs.fermionic.max_abs() < 1e-15);
        assert!(lhs.value().max_rel_error(&expected).0 < 1e-12, "{}", lhs.value());
        assert!(rhs.max_rel_error(&expected).0 < 1e-12, "{rhs}");
    }

    #[test]
    fn constants_pair_to_zero() {
        let sig = Signature::new(2, 1);
        let region = Region::unit_ball(2, 8).unwrap();
        let mut integrator = Integrator::new(1, &region, &[0.0, 0.0]).unwrap();
        let (lhs, rhs) = general_stokes_sides(&SuperElement::one(sig), &SuperElement::one(sig), &mut integrator).unwrap();
        assert!(lhs.value().max_abs() < 1e-14);
        assert!(rhs.max_abs() < 1e-14);
    }

    #[test]
    fn general_stokes_random() {
        for (m, n) in [(1, 1), (2, 1), (3, 1), (2, 2)] {
            let region = Region::unit_ball(m, 12).unwrap();
            let r = check_general_stokes(m, n, 3, 4, 2, &region, 1e-8).unwrap();
            assert!(r.passed(), "{}", r.to_json_line());
        }
    }

    #[test]
    fn cauchy_theorem_random() {
        let region = Region::unit_ball(2, 12).unwrap();
        let r = check_cauchy(2, 1, 6, 3, &region, 1e-8).unwrap();
        assert!(r.passed(), "{}", r.to_json_line());
    }

    #[test]
    fn translation_and_substitution() {
        let sig = Signature::with_params(2, 1);
        let a = &(&SuperElement::x(sig, 1).pow(2) * &SuperElement::q(sig, 2)) + &SuperElement::x(sig, 2);
        let y = exact_point(&[0.5, -1.0]);
        let t = translate(&a, &y);
        // (1/2 + u1)² q2 + (-1 + u2)
        let u1 = SuperElement::x(sig, 1);
        let half = SuperElement::from_rational(sig, crate::algebra::rational(1, 2));
        let expected = &(&(&half + &u1).pow(2) * &SuperElement::q(sig, 2))
            + &(&SuperElement::x(sig, 2) - &SuperElement::one(sig));
        assert_eq!(t, expected);
        let s = substitute_point(&a, &y);
        let expected = &SuperElement::y(sig, 2).scale(&crate::algebra::rational(1, 4)) - &SuperElement::one(sig);
        assert_eq!(s, expected);
    }

    #[test]
    fn pompeiu_constant_inside_and_outside() {
        for (m, n) in [(1, 1), (3, 1)] {
            let sig = Signature::new(m, n);
            let region = Region::unit_ball(m, 16).unwrap();
            let (lhs, rhs) = pompeiu_sides(&SuperElement::one(sig), &region, &region.center).unwrap();
            assert!(lhs.max_rel_error(&rhs).0 < 1e-10, "inside {m}: {lhs} vs {rhs}");
            let (lhs, rhs) = pompeiu_sides(&SuperElement::one(sig), &region, &exterior_point(&region)).unwrap();
            assert!(lhs.max_rel_error(&rhs).0 < 1e-8, "outside {m}: {lhs}");
        }
    }

    #[test]
    fn pompeiu_rejects_off_center_interior_points() {
        let sig = Signature::new(3, 1);
        let region = Region::unit_ball(3, 8).unwrap();
        assert_eq!(
            pompeiu_sides(&SuperElement::one(sig), &region, &[0.1, 0.0, 0.0]).unwrap_err(),
            CauchyError::InteriorOffCenter
        );
        assert!(Integrator::new(0, &region, &[0.0; 3]).is_err());
    }

    #[test]
    fn k_monogenic_vector_variable() {
        let region = Region::unit_ball(3, 16).unwrap();
        let r = check_k_monogenic(3, 1, &region, 1e-4, 1e-8).unwrap();
        assert!(r.passed(), "{}", r.to_json_line());
    }

    #[test]
    fn limit_lemma_three_dimensions() {
        let f = limit_test_function(3);
        let r = check_limit_lemma(&f, &[0.1, 0.2, 0.3], &[0.4, 0.2, 0.1, 0.05], 4, 16, 1.8, 1e-2).unwrap();
        assert!(r.passed(), "{}", r.to_json_line());
    }
}
