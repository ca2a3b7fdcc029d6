//! Tensor-product quadrature over intervals, disks, balls and their
//! boundaries, for scalar and super-algebra valued integrands.

mod value;

pub use value::NumericSuperValue;

use std::collections::HashMap;
use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Signature, SuperElement};
use crate::operators::{dirac_bosonic_left, dirac_bosonic_right};
use crate::random::ElementSampler;
use crate::report::{ReportBuilder, VerificationReport};

pub const DEFAULT_RESOLUTION: usize = 64;
const CHUNK: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("region {kind:?} lives in R^{expected}, got a center of length {got}")]
    DimensionMismatch {
        kind: RegionKind,
        expected: usize,
        got: usize,
    },
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("resolution must be at least 2, got {0}")]
    BadResolution(usize),
    #[error("no region of dimension {0} is supported")]
    UnsupportedDimension(usize),
    #[error("{0:?} is a boundary region and has no interior")]
    NotSolid(RegionKind),
    #[error("{0:?} is a solid region, not a boundary")]
    NotBoundary(RegionKind),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RegionKind {
    Interval,
    Disk,
    Ball3,
    Circle,
    Sphere2,
    PointPair,
}

impl RegionKind {
    pub fn dimension(self) -> usize {
        match self {
            RegionKind::Interval | RegionKind::PointPair => 1,
            RegionKind::Disk | RegionKind::Circle => 2,
            RegionKind::Ball3 | RegionKind::Sphere2 => 3,
        }
    }

    pub fn is_boundary(self) -> bool {
        matches!(
            self,
            RegionKind::Circle | RegionKind::Sphere2 | RegionKind::PointPair
        )
    }

    pub fn solid(m: usize) -> Result<Self, QuadratureError> {
        match m {
            1 => Ok(RegionKind::Interval),
            2 => Ok(RegionKind::Disk),
            3 => Ok(RegionKind::Ball3),
            _ => Err(QuadratureError::UnsupportedDimension(m)),
        }
    }
}

/// Ball-like region `{|x - c| ≤ R}` or its boundary sphere. An interval is
/// `[c - R, c + R]`; its boundary is the signed point pair `(+b, -a)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub kind: RegionKind,
    pub center: Vec<f64>,
    pub radius: f64,
    #[serde(default = "default_resolution")]
    pub resolution: usize,
    /// Boundary orientation; `true` means inward normals.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reversed: bool,
}

fn default_resolution() -> usize {
    DEFAULT_RESOLUTION
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeNode {
    pub point: [f64; 3],
    pub weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryNode {
    pub point: [f64; 3],
    /// Unit normal, already multiplied by the orientation sign.
    pub normal: [f64; 3],
    pub weight: f64,
}

fn gauss_legendre(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(n).expect("resolution validated to be ≥ 2");
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    rule.into_node_weight_pairs()
        .into_iter()
        .map(|(x, w)| (mid + half * x, half * w))
        .collect()
}

fn trapezoid(n: usize) -> Vec<(f64, f64)> {
    let h = 2.0 * PI / n as f64;
    (0..n).map(|k| (h * k as f64, h)).collect()
}

impl Region {
    pub fn new(
        kind: RegionKind,
        center: Vec<f64>,
        radius: f64,
        resolution: usize,
    ) -> Result<Self, QuadratureError> {
        let region = Region {
            kind,
            center,
            radius,
            resolution,
            reversed: false,
        };
        region.validate()?;
        Ok(region)
    }

    /// Unit-radius solid region of dimension `m` centered at the origin.
    pub fn unit_ball(m: usize, resolution: usize) -> Result<Self, QuadratureError> {
        Region::new(RegionKind::solid(m)?, vec![0.0; m], 1.0, resolution)
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        let expected = self.kind.dimension();
        if self.center.len() != expected {
            return Err(QuadratureError::DimensionMismatch {
                kind: self.kind,
                expected,
                got: self.center.len(),
            });
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(QuadratureError::BadRadius(self.radius));
        }
        if self.resolution < 2 {
            return Err(QuadratureError::BadResolution(self.resolution));
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.kind.dimension()
    }

    pub fn with_resolution(&self, resolution: usize) -> Self {
        Region {
            resolution,
            ..self.clone()
        }
    }

    /// The same region with `center` translated by `-shift`.
    pub fn shifted(&self, shift: &[f64]) -> Self {
        Region {
            center: self.center.iter().zip(shift).map(|(c, s)| c - s).collect(),
            ..self.clone()
        }
    }

    pub fn reversed(&self) -> Self {
        Region {
            reversed: !self.reversed,
            ..self.clone()
        }
    }

    /// Outward-oriented boundary of a solid region.
    pub fn boundary(&self) -> Result<Region, QuadratureError> {
        let kind = match self.kind {
            RegionKind::Interval => RegionKind::PointPair,
            RegionKind::Disk => RegionKind::Circle,
            RegionKind::Ball3 => RegionKind::Sphere2,
            k => return Err(QuadratureError::NotSolid(k)),
        };
        Ok(Region {
            kind,
            reversed: false,
            ..self.clone()
        })
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        let d2: f64 = self
            .center
            .iter()
            .zip(point)
            .map(|(c, p)| (p - c) * (p - c))
            .sum();
        d2.sqrt() < self.radius
    }

    /// Nodes of a solid region in coordinates centered at `center`: Gauss–
    /// Legendre in the radius (or on each half of an interval), trapezoid in
    /// the azimuth, Gauss–Legendre in `cos θ`.
    pub fn volume_nodes(&self) -> Result<Vec<VolumeNode>, QuadratureError> {
        self.validate()?;
        let n = self.resolution;
        let c = &self.center;
        let r0 = self.radius;
        let mut out = Vec::new();
        match self.kind {
            RegionKind::Interval => {
                for (a, b) in [(c[0] - r0, c[0]), (c[0], c[0] + r0)] {
                    for (x, w) in gauss_legendre(n, a, b) {
                        out.push(VolumeNode {
                            point: [x, 0.0, 0.0],
                            weight: w,
                        });
                    }
                }
            }
            RegionKind::Disk => {
                let phis = trapezoid(2 * n);
                for (r, wr) in gauss_legendre(n, 0.0, r0) {
                    for &(phi, wp) in &phis {
                        out.push(VolumeNode {
                            point: [c[0] + r * phi.cos(), c[1] + r * phi.sin(), 0.0],
                            weight: wr * wp * r,
                        });
                    }
                }
            }
            RegionKind::Ball3 => {
                let phis = trapezoid(2 * n);
                let ts = gauss_legendre(n, -1.0, 1.0);
                for (r, wr) in gauss_legendre(n, 0.0, r0) {
                    for &(t, wt) in &ts {
                        let s = (1.0 - t * t).sqrt();
                        for &(phi, wp) in &phis {
                            out.push(VolumeNode {
                                point: [
                                    c[0] + r * s * phi.cos(),
                                    c[1] + r * s * phi.sin(),
                                    c[2] + r * t,
                                ],
                                weight: wr * wt * wp * r * r,
                            });
                        }
                    }
                }
            }
            k => return Err(QuadratureError::NotSolid(k)),
        }
        Ok(out)
    }

    pub fn boundary_nodes(&self) -> Result<Vec<BoundaryNode>, QuadratureError> {
        self.validate()?;
        let n = self.resolution;
        let c = &self.center;
        let r0 = self.radius;
        let sign = if self.reversed { -1.0 } else { 1.0 };
        let mut out = Vec::new();
        let mut push = |unit: [f64; 3], weight: f64| {
            let mut point = [0.0; 3];
            for i in 0..c.len() {
                point[i] = c[i] + r0 * unit[i];
            }
            out.push(BoundaryNode {
                point,
                normal: unit.map(|v| sign * v),
                weight,
            });
        };
        match self.kind {
            RegionKind::PointPair => {
                push([1.0, 0.0, 0.0], 1.0);
                push([-1.0, 0.0, 0.0], 1.0);
            }
            RegionKind::Circle => {
                for (phi, wp) in trapezoid(2 * n) {
                    push([phi.cos(), phi.sin(), 0.0], r0 * wp);
                }
            }
            RegionKind::Sphere2 => {
                let phis = trapezoid(2 * n);
                for (t, wt) in gauss_legendre(n, -1.0, 1.0) {
                    let s = (1.0 - t * t).sqrt();
                    for &(phi, wp) in &phis {
                        push([s * phi.cos(), s * phi.sin(), t], r0 * r0 * wt * wp);
                    }
                }
            }
            k => return Err(QuadratureError::NotBoundary(k)),
        }
        Ok(out)
    }

    /// Boundary nodes carrying the pulled-back form `Σ (-1)^{j+1} dx̂_j`
    /// (component `j` of the returned vector) times the parameter weight,
    /// for the positively ordered parametrisations `φ` and `(φ, cos θ)`.
    pub fn form_boundary_nodes(&self) -> Result<Vec<([f64; 3], [f64; 3])>, QuadratureError> {
        self.validate()?;
        let n = self.resolution;
        let c = &self.center;
        let r0 = self.radius;
        let sign = if self.reversed { -1.0 } else { 1.0 };
        let mut out = Vec::new();
        match self.kind {
            RegionKind::PointPair => {
                // a 0-form: +1 at b, -1 at a
                out.push(([c[0] + r0, 0.0, 0.0], [sign, 0.0, 0.0]));
                out.push(([c[0] - r0, 0.0, 0.0], [-sign, 0.0, 0.0]));
            }
            RegionKind::Circle => {
                for (phi, wp) in trapezoid(2 * n) {
                    // x = c + R(cos φ, sin φ); dx̂_1 = dx_2, dx̂_2 = dx_1
                    let dx1 = -r0 * phi.sin();
                    let dx2 = r0 * phi.cos();
                    let point = [c[0] + r0 * phi.cos(), c[1] + r0 * phi.sin(), 0.0];
                    out.push((point, [sign * dx2 * wp, -sign * dx1 * wp, 0.0]));
                }
            }
            RegionKind::Sphere2 => {
                let phis = trapezoid(2 * n);
                for (t, wt) in gauss_legendre(n, -1.0, 1.0) {
                    let s = (1.0 - t * t).sqrt();
                    for &(phi, wp) in &phis {
                        let (sp, cp) = phi.sin_cos();
                        let point = [c[0] + r0 * s * cp, c[1] + r0 * s * sp, c[2] + r0 * t];
                        let a = [-r0 * s * sp, r0 * s * cp, 0.0]; // ∂_φ x
                        let b = [-r0 * t / s * cp, -r0 * t / s * sp, r0]; // ∂_t x
                        let minor = |i: usize, j: usize| a[i] * b[j] - a[j] * b[i];
                        let w = sign * wt * wp;
                        // (-1)^{j+1} dx̂_j: +dx2∧dx3, -dx1∧dx3, +dx1∧dx2
                        out.push((point, [w * minor(1, 2), -w * minor(0, 2), w * minor(0, 1)]));
                    }
                }
            }
            k => return Err(QuadratureError::NotBoundary(k)),
        }
        Ok(out)
    }
}

fn ordered_sum<T, F, G>(items: &[T], init: impl Fn() -> G + Sync, fold: F, merge: impl Fn(&mut G, G)) -> G
where
    T: Sync,
    G: Send,
    F: Fn(&mut G, &T) + Sync,
{
    let partials: Vec<G> = items
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = init();
            for item in chunk {
                fold(&mut acc, item);
            }
            acc
        })
        .collect();
    let mut total = init();
    for p in partials {
        merge(&mut total, p);
    }
    total
}

/// `∫_Σ F dV` for a scalar integrand. Summation order is fixed by the node
/// list, so results are reproducible at any thread count.
pub fn scalar_volume_integral(
    region: &Region,
    f: impl Fn(&[f64]) -> f64 + Sync,
) -> Result<f64, QuadratureError> {
    let m = region.dimension();
    let nodes = region.volume_nodes()?;
    Ok(ordered_sum(
        &nodes,
        || 0.0,
        |acc, node| *acc += node.weight * f(&node.point[..m]),
        |a, b| *a += b,
    ))
}

/// `∫_Σ F dV` for a super-algebra valued integrand.
pub fn volume_integral(
    region: &Region,
    f: impl Fn(&[f64]) -> NumericSuperValue + Sync,
) -> Result<NumericSuperValue, QuadratureError> {
    let m = region.dimension();
    let nodes = region.volume_nodes()?;
    Ok(ordered_sum(
        &nodes,
        NumericSuperValue::default,
        |acc, node| *acc += &f(&node.point[..m]).scale(node.weight),
        |a, b| *a += &b,
    ))
}

/// `∫_{∂Σ} f dσ_x̲ g` with `dσ_x̲ = n̲ dS`, `n̲ = Σ n_j e_j`; the product is
/// formed in the word algebra at each node.
pub fn boundary_integral(
    boundary: &Region,
    sig: Signature,
    f: impl Fn(&[f64]) -> NumericSuperValue + Sync,
    g: impl Fn(&[f64]) -> NumericSuperValue + Sync,
) -> Result<NumericSuperValue, QuadratureError> {
    let m = boundary.dimension();
    let nodes = boundary.boundary_nodes()?;
    let generators: Vec<NumericSuperValue> = (1..=m)
        .map(|j| NumericSuperValue::from_exact(&SuperElement::e(sig.without_params(), j)))
        .collect();
    Ok(ordered_sum(
        &nodes,
        NumericSuperValue::default,
        |acc, node| {
            let x = &node.point[..m];
            let mut normal = NumericSuperValue::zero(2 * sig.n);
            for (j, e) in generators.iter().enumerate() {
                normal += &e.scale(node.normal[j] * node.weight);
            }
            *acc += &(&(&f(x) * &normal) * &g(x));
        },
        |a, b| *a += &b,
    ))
}

/// Key of a moment `∫ r^p u^α [n_j]` with `u = x - shift`, `r = |u|`;
/// `normal = 0` means no normal factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MomentKey {
    pub p: i32,
    pub alpha: Vec<u16>,
    pub normal: usize,
}

/// Cached scalar moments of a region in the frame `u = x - shift`.
#[derive(Clone, Debug)]
pub struct Moments {
    region: Region,
    shift: Vec<f64>,
    cache: HashMap<MomentKey, f64>,
}

impl Moments {
    pub fn new(region: Region, shift: Vec<f64>) -> Result<Self, QuadratureError> {
        region.validate()?;
        assert_eq!(shift.len(), region.dimension());
        Ok(Moments {
            region,
            shift,
            cache: HashMap::new(),
        })
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    /// Fills the cache for all `keys`, visiting the nodes once.
    pub fn prepare(&mut self, keys: impl IntoIterator<Item = MomentKey>) -> Result<(), QuadratureError> {
        let mut missing: Vec<MomentKey> = keys
            .into_iter()
            .filter(|k| !self.cache.contains_key(k))
            .collect();
        missing.sort();
        missing.dedup();
        if missing.is_empty() {
            return Ok(());
        }
        let m = self.region.dimension();
        let shift = self.shift.clone();
        let eval = |u: &[f64], n: &[f64; 3], weight: f64, acc: &mut Vec<f64>| {
            let r = u.iter().map(|v| v * v).sum::<f64>().sqrt();
            for (slot, key) in acc.iter_mut().zip(&missing) {
                let mut v = weight * r.powi(key.p);
                for (ui, &a) in u.iter().zip(&key.alpha) {
                    v *= ui.powi(i32::from(a));
                }
                if key.normal > 0 {
                    v *= n[key.normal - 1];
                }
                *slot += v;
            }
        };
        let len = missing.len();
        let merge = |a: &mut Vec<f64>, b: Vec<f64>| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        };
        let values = if self.region.kind.is_boundary() {
            let nodes = self.region.boundary_nodes()?;
            ordered_sum(
                &nodes,
                || vec![0.0; len],
                |acc, node| {
                    let u: Vec<f64> = (0..m).map(|i| node.point[i] - shift[i]).collect();
                    eval(&u, &node.normal, node.weight, acc);
                },
                merge,
            )
        } else {
            let nodes = self.region.volume_nodes()?;
            ordered_sum(
                &nodes,
                || vec![0.0; len],
                |acc, node| {
                    let u: Vec<f64> = (0..m).map(|i| node.point[i] - shift[i]).collect();
                    eval(&u, &[0.0; 3], node.weight, acc);
                },
                merge,
            )
        };
        for (k, v) in missing.into_iter().zip(values) {
            self.cache.insert(k, v);
        }
        Ok(())
    }

    pub fn get(&mut self, key: &MomentKey) -> Result<f64, QuadratureError> {
        if let Some(v) = self.cache.get(key) {
            return Ok(*v);
        }
        self.prepare([key.clone()])?;
        Ok(self.cache[key])
    }

    /// `∫ a dV` (solid region) or `∫ a n_j dS` (boundary, `normal = j`) for
    /// an element whose bosonic variables are read as `u`, times `r^p`.
    pub fn integrate(
        &mut self,
        a: &SuperElement,
        p: i32,
        normal: usize,
    ) -> Result<NumericSuperValue, QuadratureError> {
        let keys: Vec<MomentKey> = a
            .terms()
            .map(|(mono, _)| MomentKey {
                p,
                alpha: mono.bosonic.clone(),
                normal,
            })
            .collect();
        self.prepare(keys.iter().cloned())?;
        let mut out = NumericSuperValue::zero(2 * a.signature().n);
        for ((mono, q), key) in a.terms().zip(&keys) {
            let mut word_only = mono.clone();
            word_only.bosonic.iter_mut().for_each(|b| *b = 0);
            let exact = SuperElement::from_monomial(a.signature(), word_only, q.clone());
            out.add_scaled_exact(&exact, self.cache[key]);
        }
        Ok(out)
    }
}

/// Bosonic Stokes: `∫_{∂Σ} f dσ_x̲ g = ∫_Σ [(f ∂_x̲) g + f (∂_x̲ g)] dV`,
/// with both sides evaluated node by node in the word algebra.
pub fn bosonic_stokes_sides(
    f: &SuperElement,
    g: &SuperElement,
    region: &Region,
) -> Result<(NumericSuperValue, NumericSuperValue), QuadratureError> {
    let sig = f.signature();
    let boundary = region.boundary()?;
    let lhs = boundary_integral(
        &boundary,
        sig,
        |x| NumericSuperValue::evaluate(f, x),
        |x| NumericSuperValue::evaluate(g, x),
    )?;
    let integrand = &(&dirac_bosonic_right(f) * g) + &(f * &dirac_bosonic_left(g));
    let rhs = volume_integral(region, |x| NumericSuperValue::evaluate(&integrand, x))?;
    Ok((lhs, rhs))
}

pub fn check_bosonic_stokes(
    m: usize,
    max_degree: u32,
    trials: usize,
    seed: u64,
    resolution: usize,
    tol: f64,
) -> Result<VerificationReport, QuadratureError> {
    let sig = Signature::new(m, 0);
    let region = Region::unit_ball(m, resolution)?;
    let mut report = ReportBuilder::new("bosonic-stokes", tol)
        .param("m", m)
        .param("max_degree", max_degree)
        .param("trials", trials)
        .param("seed", seed)
        .param("resolution", resolution);
    let mut sampler = ElementSampler::new(seed);
    for _ in 0..trials {
        let f = sampler.polynomial(sig, max_degree);
        let g = sampler.polynomial(sig, max_degree);
        let (lhs, rhs) = bosonic_stokes_sides(&f, &g, &region)?;
        report.compare_numeric("stokes", &lhs, &rhs);
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Word;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1.0)
    }

    #[test]
    fn elementary_volumes() {
        let unit = Region::new(RegionKind::Interval, vec![0.5], 0.5, 8).unwrap();
        assert!(close(scalar_volume_integral(&unit, |x| x[0]).unwrap(), 0.5, 1e-15));
        let ball = Region::unit_ball(3, 16).unwrap();
        assert!(close(scalar_volume_integral(&ball, |_| 1.0).unwrap(), 4.0 * PI / 3.0, 1e-12));
        let disk = Region::unit_ball(2, 16).unwrap();
        assert!(close(scalar_volume_integral(&disk, |x| x[0] * x[0]).unwrap(), PI / 4.0, 1e-10));
    }

    #[test]
    fn surface_areas() {
        let sphere = Region::unit_ball(3, 8).unwrap().boundary().unwrap();
        let area: f64 = sphere.boundary_nodes().unwrap().iter().map(|n| n.weight).sum();
        assert!(close(area, 4.0 * PI, 1e-13));
        let circle = Region::new(RegionKind::Disk, vec![1.0, 2.0], 2.0, 8)
            .unwrap()
            .boundary()
            .unwrap();
        let len: f64 = circle.boundary_nodes().unwrap().iter().map(|n| n.weight).sum();
        assert!(close(len, 4.0 * PI, 1e-13));
    }

    #[test]
    fn fundamental_theorem_of_calculus_on_the_unit_interval() {
        let sig = Signature::new(1, 0);
        let interval = Region::new(RegionKind::Interval, vec![0.5], 0.5, 4).unwrap();
        let x1 = SuperElement::x(sig, 1);
        let v = boundary_integral(
            &interval.boundary().unwrap(),
            sig,
            |_| NumericSuperValue::scalar(0, 1.0),
            |x| NumericSuperValue::evaluate(&x1, x),
        )
        .unwrap();
        assert_eq!(v, NumericSuperValue::from_exact(&SuperElement::e(sig, 1)));
    }

    #[test]
    fn normal_integrates_to_zero_on_circle() {
        let sig = Signature::new(2, 0);
        let circle = Region::unit_ball(2, 16).unwrap().boundary().unwrap();
        let one = |_: &[f64]| NumericSuperValue::scalar(0, 1.0);
        let v = boundary_integral(&circle, sig, one, one).unwrap();
        assert!(v.max_abs() < 1e-14);
    }

    #[test]
    fn reversing_orientation_negates() {
        let sig = Signature::new(3, 0);
        let sphere = Region::new(RegionKind::Sphere2, vec![0.1, 0.0, -0.2], 0.7, 8).unwrap();
        let f = &SuperElement::x(sig, 1) * &SuperElement::x(sig, 3);
        let eval = |x: &[f64]| NumericSuperValue::evaluate(&f, x);
        let one = |_: &[f64]| NumericSuperValue::scalar(0, 1.0);
        let a = boundary_integral(&sphere, sig, eval, one).unwrap();
        let b = boundary_integral(&sphere.reversed(), sig, eval, one).unwrap();
        assert!(a.max_abs() > 0.0);
        assert_eq!(b, -&a);
    }

    #[test]
    fn form_and_normal_realisations_agree() {
        let mut sampler = ElementSampler::new(4);
        for m in [1, 2, 3] {
            let sig = Signature::new(m, 0);
            let boundary = Region::new(RegionKind::solid(m).unwrap(), vec![0.2; m], 0.8, 12)
                .unwrap()
                .boundary()
                .unwrap();
            for _ in 0..5 {
                let f = sampler.polynomial(sig, 3);
                let g = sampler.polynomial(sig, 3);
                let normal = boundary_integral(
                    &boundary,
                    sig,
                    |x| NumericSuperValue::evaluate(&f, x),
                    |x| NumericSuperValue::evaluate(&g, x),
                )
                .unwrap();
                let mut form = NumericSuperValue::zero(0);
                for (point, comps) in boundary.form_boundary_nodes().unwrap() {
                    let x = &point[..m];
                    let mut sigma = NumericSuperValue::zero(0);
                    for j in 0..m {
                        let e = NumericSuperValue::word(
                            Word { grassmann: 0, blade: 1 << j, weyl: vec![] },
                            comps[j],
                        );
                        sigma += &e;
                    }
                    let fx = NumericSuperValue::evaluate(&f, x);
                    let gx = NumericSuperValue::evaluate(&g, x);
                    form += &(&(&fx * &sigma) * &gx);
                }
                let (err, _) = form.max_rel_error(&normal);
                assert!(err <= 1e-9, "m={m}: {err}");
            }
        }
    }

    #[test]
    fn doubling_resolution_converges() {
        // smooth non-polynomial integrand on an off-center disk
        let f = |x: &[f64]| (x[0] + 2.0 * x[1]).exp();
        let reference = scalar_volume_integral(&Region::unit_ball(2, 128).unwrap(), f).unwrap();
        let mut prev = f64::INFINITY;
        for n in [2, 4, 8, 16] {
            let v = scalar_volume_integral(&Region::unit_ball(2, n).unwrap(), f).unwrap();
            let err = (v - reference).abs();
            assert!(err * 4.0 <= prev || err < 1e-12, "n={n}: {err} vs {prev}");
            prev = err;
        }
    }

    #[test]
    fn moments_match_closure_integrals() {
        let sig = Signature::new(3, 1);
        let ball = Region::new(RegionKind::Ball3, vec![0.0, 0.0, 0.0], 1.0, 12).unwrap();
        let mut moments = Moments::new(ball.clone(), vec![0.3, 0.0, 0.0]).unwrap();
        let a = &(&SuperElement::x(sig, 1).pow(2) * &SuperElement::f(sig, 1)) + &SuperElement::e(sig, 2);
        let via_moments = moments.integrate(&a, 0, 0).unwrap();
        let via_nodes = volume_integral(&ball, |x| {
            NumericSuperValue::evaluate(&a, &[x[0] - 0.3, x[1], x[2]])
        })
        .unwrap();
        assert!(via_moments.max_rel_error(&via_nodes).0 < 1e-13);
    }

    #[test]
    fn bosonic_stokes_holds() {
        for m in 1..=3 {
            let r = check_bosonic_stokes(m, 3, 5, 9, 16, 1e-8).unwrap();
            assert!(r.passed(), "{}", r.to_json_line());
        }
    }

    #[test]
    fn region_json_round_trip() {
        let text = r#"{"kind":"ball3","center":[0,0,0],"radius":1.0,"resolution":64}"#;
        let r: Region = serde_json::from_str(text).unwrap();
        assert_eq!(r, Region::unit_ball(3, 64).unwrap());
        let back: Region = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn invalid_regions_rejected() {
        assert!(Region::new(RegionKind::Disk, vec![0.0], 1.0, 8).is_err());
        assert!(Region::new(RegionKind::Disk, vec![0.0, 0.0], -1.0, 8).is_err());
        assert!(Region::new(RegionKind::Disk, vec![0.0, 0.0], 1.0, 1).is_err());
        assert!(Region::unit_ball(4, 8).is_err());
        assert!(Region::unit_ball(2, 8).unwrap().boundary_nodes().is_err());
    }
}
