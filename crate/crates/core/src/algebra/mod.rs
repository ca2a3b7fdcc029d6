//! Exact arithmetic in `P = R[x] ⊗ Λ ⊗ C`.
//!
//! Elements are finite sums of canonical words
//! `π^k · x^α · x̀_S · ỳ_P · e_T · è^β` with rational coefficients. The
//! commuting variables `x_i` and the Grassmann variables commute with every
//! generator; the Clifford generators satisfy `e_j e_k + e_k e_j = -2δ_{jk}`,
//! anticommute with the Weyl generators `è_j`, and the Weyl generators obey
//! `è_{2j-1} è_{2k} - è_{2k} è_{2j-1} = δ_{jk}` with all other pairs commuting.

pub mod text;
mod word;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),
    #[error("{kind} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        kind: &'static str,
        index: usize,
        max: usize,
    },
    #[error("signature ({m}|{n}, {params} parameters) exceeds the supported generator count")]
    TooLarge { m: usize, n: usize, params: usize },
}

/// Number of commuting variables `m`, half the number of Grassmann variables
/// `n`, and half the number of Grassmann parameters `ỳ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub m: usize,
    pub n: usize,
    pub n_params: usize,
}

impl Signature {
    pub const MAX_BOSONIC: usize = 32;

    /// Panics if the signature needs more than 32 Clifford generators or more
    /// than 64 Grassmann variables in total.
    pub fn new(m: usize, n: usize) -> Self {
        Self::try_with_params(m, n, 0).expect("signature too large")
    }

    /// Signature with parameters `ỳ_1..ỳ_{2n}` mirroring the integration
    /// variables.
    pub fn with_params(m: usize, n: usize) -> Self {
        Self::try_with_params(m, n, n).expect("signature too large")
    }

    pub fn try_with_params(m: usize, n: usize, n_params: usize) -> Result<Self, AlgebraError> {
        if m > Self::MAX_BOSONIC || 2 * (n + n_params) > 64 {
            return Err(AlgebraError::TooLarge {
                m,
                n,
                params: n_params,
            });
        }
        Ok(Signature { m, n, n_params })
    }

    /// `M = m - 2n`.
    pub fn super_dimension(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }

    pub fn grassmann_count(&self) -> usize {
        2 * self.n
    }

    pub fn param_count(&self) -> usize {
        2 * self.n_params
    }

    /// Bit mask of the integration variables `x̀_1..x̀_{2n}`.
    pub fn grassmann_mask(&self) -> u64 {
        if self.n == 0 {
            0
        } else {
            u64::MAX >> (64 - 2 * self.n)
        }
    }

    pub fn without_params(&self) -> Self {
        Signature {
            n_params: 0,
            ..*self
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_params == 0 {
            write!(f, "({}|{})", self.m, 2 * self.n)
        } else {
            write!(f, "({}|{};{})", self.m, 2 * self.n, 2 * self.n_params)
        }
    }
}

/// A rational multiple of a power of π.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarCoeff {
    pub q: BigRational,
    pub pi_pow: i32,
}

impl ScalarCoeff {
    pub fn new(q: BigRational, pi_pow: i32) -> Self {
        let pi_pow = if q.is_zero() { 0 } else { pi_pow };
        ScalarCoeff { q, pi_pow }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(q, 0)
    }

    pub fn integer(v: i64) -> Self {
        Self::new(BigRational::from_integer(v.into()), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.q) * std::f64::consts::PI.powi(self.pi_pow)
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fallback for magnitudes outside the f64 range of numerator/denominator.
        let (n, d) = (q.numer(), q.denom());
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical basis word, including its power of π.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub bosonic: Vec<u16>,
    pub word: Word,
    pub pi: i32,
}

impl Monomial {
    pub fn one(sig: &Signature) -> Self {
        Monomial {
            bosonic: vec![0; sig.m],
            word: Word::identity(2 * sig.n),
            pi: 0,
        }
    }

    pub fn bosonic_degree(&self) -> u32 {
        self.bosonic.iter().map(|&a| u32::from(a)).sum()
    }

    /// Degree in the integration variables `x̀_j` (parameters excluded).
    pub fn grassmann_degree(&self, sig: &Signature) -> u32 {
        (self.word.grassmann & sig.grassmann_mask()).count_ones()
    }

    /// Eigenvalue of the Euler operator: `|α| + |S|`.
    pub fn euler_degree(&self, sig: &Signature) -> u32 {
        self.bosonic_degree() + self.grassmann_degree(sig)
    }

    pub fn mul(&self, other: &Monomial) -> Vec<(i64, Monomial)> {
        let bosonic: Vec<u16> = self
            .bosonic
            .iter()
            .zip(&other.bosonic)
            .map(|(a, b)| a + b)
            .collect();
        let pi = self.pi + other.pi;
        self.word
            .mul(&other.word)
            .into_iter()
            .map(|(c, word)| {
                (
                    c,
                    Monomial {
                        bosonic: bosonic.clone(),
                        word,
                        pi,
                    },
                )
            })
            .collect()
    }
}

/// Which part of the vector variable `x = x̲ + x̀` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorPart {
    Full,
    Bosonic,
    Fermionic,
}

/// Exact element of `P`: a finite map from canonical words to nonzero
/// rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperElement {
    sig: Signature,
    terms: BTreeMap<Monomial, BigRational>,
}

impl SuperElement {
    pub fn zero(sig: Signature) -> Self {
        SuperElement {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: Signature) -> Self {
        Self::from_rational(sig, BigRational::one())
    }

    pub fn from_rational(sig: Signature, q: BigRational) -> Self {
        Self::from_monomial(sig, Monomial::one(&sig), q)
    }

    pub fn from_integer(sig: Signature, v: i64) -> Self {
        Self::from_rational(sig, integer(v))
    }

    pub fn from_scalar(sig: Signature, c: &ScalarCoeff) -> Self {
        let mut mono = Monomial::one(&sig);
        mono.pi = c.pi_pow;
        Self::from_monomial(sig, mono, c.q.clone())
    }

    pub fn from_monomial(sig: Signature, mono: Monomial, q: BigRational) -> Self {
        let mut out = Self::zero(sig);
        out.add_term(mono, q);
        out
    }

    fn single(sig: Signature, build: impl FnOnce(&mut Monomial)) -> Self {
        let mut mono = Monomial::one(&sig);
        build(&mut mono);
        Self::from_monomial(sig, mono, BigRational::one())
    }

    /// Commuting variable `x_i`, `1 ≤ i ≤ m`.
    pub fn x(sig: Signature, i: usize) -> Self {
        assert!((1..=sig.m).contains(&i), "x{i} outside signature {sig}");
        Self::single(sig, |m| m.bosonic[i - 1] = 1)
    }

    /// Grassmann variable `x̀_j`, `1 ≤ j ≤ 2n`.
    pub fn q(sig: Signature, j: usize) -> Self {
        assert!(
            (1..=sig.grassmann_count()).contains(&j),
            "q{j} outside signature {sig}"
        );
        Self::single(sig, |m| m.word.grassmann = 1 << (j - 1))
    }

    /// Grassmann parameter `ỳ_j`, `1 ≤ j ≤ 2·n_params`.
    pub fn y(sig: Signature, j: usize) -> Self {
        assert!(
            (1..=sig.param_count()).contains(&j),
            "y{j} outside signature {sig}"
        );
        Self::single(sig, |m| m.word.grassmann = 1 << (2 * sig.n + j - 1))
    }

    /// Orthogonal Clifford generator `e_i`.
    pub fn e(sig: Signature, i: usize) -> Self {
        assert!((1..=sig.m).contains(&i), "e{i} outside signature {sig}");
        Self::single(sig, |m| m.word.blade = 1 << (i - 1))
    }

    /// Symplectic Weyl generator `è_j`.
    pub fn f(sig: Signature, j: usize) -> Self {
        assert!(
            (1..=sig.grassmann_count()).contains(&j),
            "f{j} outside signature {sig}"
        );
        Self::single(sig, |m| m.word.weyl[j - 1] = 1)
    }

    pub fn pi(sig: Signature, k: i32) -> Self {
        Self::single(sig, |m| m.pi = k)
    }

    /// `x̲ = Σ x_i e_i`, `x̀ = Σ x̀_j è_j`, or their sum.
    pub fn vector_variable(sig: Signature, part: VectorPart) -> Self {
        let mut out = Self::zero(sig);
        if part != VectorPart::Fermionic {
            for i in 1..=sig.m {
                out += &(&Self::x(sig, i) * &Self::e(sig, i));
            }
        }
        if part != VectorPart::Bosonic {
            for j in 1..=sig.grassmann_count() {
                out += &(&Self::q(sig, j) * &Self::f(sig, j));
            }
        }
        out
    }

    /// `ỳ = Σ ỳ_j è_j` over the parameters.
    pub fn parameter_vector(sig: Signature) -> Self {
        let mut out = Self::zero(sig);
        for j in 1..=sig.param_count() {
            out += &(&Self::y(sig, j) * &Self::f(sig, j));
        }
        out
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, BigRational)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Option<ScalarCoeff> {
        self.terms
            .get(mono)
            .map(|q| ScalarCoeff::new(q.clone(), mono.pi))
    }

    /// The rational coefficient of the constant word `1` (π-free).
    pub fn scalar_part(&self) -> BigRational {
        self.terms
            .get(&Monomial::one(&self.sig))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, mono: Monomial, q: BigRational) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(q);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.sig);
        }
        SuperElement {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * q))
                .collect(),
        }
    }

    pub fn scale_int(&self, v: i64) -> Self {
        self.scale(&integer(v))
    }

    pub fn checked_add(&self, other: &SuperElement) -> Result<SuperElement, AlgebraError> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &SuperElement) -> Result<SuperElement, AlgebraError> {
        self.check_sig(other)?;
        let mut out = Self::zero(self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                for (k, mono) in ma.mul(mb) {
                    out.add_term(mono, &prod * integer(k));
                }
            }
        }
        Ok(out)
    }

    fn check_sig(&self, other: &SuperElement) -> Result<(), AlgebraError> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(AlgebraError::SignatureMismatch(self.sig, other.sig))
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.sig);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Terms whose Euler degree `|α| + |S|` equals `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        self.filter(|m| m.euler_degree(&self.sig) == k)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        SuperElement {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_euler_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.euler_degree(&self.sig)).max()
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.word.generator_degree())
            .max()
            .unwrap_or(0)
    }

    /// Reinterprets the element in a signature that differs only in the
    /// number of parameters. Panics if parameters in use would be dropped.
    pub fn with_signature(&self, sig: Signature) -> Self {
        assert_eq!((sig.m, sig.n), (self.sig.m, self.sig.n));
        let keep = if sig.param_count() >= 64 - 2 * sig.n {
            u64::MAX
        } else {
            (1u64 << (2 * sig.n + sig.param_count())) - 1
        };
        for m in self.terms.keys() {
            assert_eq!(m.word.grassmann & !keep, 0, "parameter dropped");
        }
        SuperElement {
            sig,
            terms: self.terms.clone(),
        }
    }

    /// Builds an element term by term from a transformation of each word.
    pub fn map_monomials<F>(&self, sig: Signature, mut f: F) -> Self
    where
        F: FnMut(&Monomial, &BigRational, &mut SuperElement),
    {
        let mut out = Self::zero(sig);
        for (m, c) in &self.terms {
            f(m, c, &mut out);
        }
        out
    }

    /// Largest `|c|/(1+|c_ref|)` over all words of `self - reference`,
    /// together with the word attaining it.
    pub fn max_rel_deviation(&self, reference: &SuperElement) -> (f64, Option<Monomial>) {
        let diff = self - reference;
        let mut worst = (0.0, None);
        for (m, c) in diff.terms() {
            let r = reference
                .terms
                .get(m)
                .map(|q| ScalarCoeff::new(q.clone(), m.pi).to_f64().abs())
                .unwrap_or(0.0);
            let err = ScalarCoeff::new(c.clone(), m.pi).to_f64().abs() / (1.0 + r);
            if worst.1.is_none() || err > worst.0 {
                worst = (err, Some(m.clone()));
            }
        }
        worst
    }
}

impl fmt::Display for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_element(self, &text::VarNames::STANDARD))
    }
}

impl fmt::Debug for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperElement{}[{}]", self.sig, self)
    }
}

impl Add for &SuperElement {
    type Output = SuperElement;
    fn add(self, rhs: &SuperElement) -> SuperElement {
        self.checked_add(rhs).expect("addition of elements")
    }
}

impl Add for SuperElement {
    type Output = SuperElement;
    fn add(mut self, rhs: SuperElement) -> SuperElement {
        self += &rhs;
        self
    }
}

impl AddAssign<&SuperElement> for SuperElement {
    fn add_assign(&mut self, rhs: &SuperElement) {
        self.check_sig(rhs).expect("addition of elements");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&SuperElement> for SuperElement {
    fn sub_assign(&mut self, rhs: &SuperElement) {
        self.check_sig(rhs).expect("subtraction of elements");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Sub for &SuperElement {
    type Output = SuperElement;
    fn sub(self, rhs: &SuperElement) -> SuperElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for SuperElement {
    type Output = SuperElement;
    fn sub(mut self, rhs: SuperElement) -> SuperElement {
        self -= &rhs;
        self
    }
}

impl Neg for &SuperElement {
    type Output = SuperElement;
    fn neg(self) -> SuperElement {
        SuperElement {
            sig: self.sig,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for SuperElement {
    type Output = SuperElement;
    fn neg(self) -> SuperElement {
        -&self
    }
}

/// Panics on signature mismatch; use [`SuperElement::checked_mul`] to get an
/// error instead.
impl Mul for &SuperElement {
    type Output = SuperElement;
    fn mul(self, rhs: &SuperElement) -> SuperElement {
        self.checked_mul(rhs).expect("multiplication of elements")
    }
}

impl Mul for SuperElement {
    type Output = SuperElement;
    fn mul(self, rhs: SuperElement) -> SuperElement {
        &self * &rhs
    }
}
