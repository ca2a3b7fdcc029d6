//! Super-algebra values with floating-point coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::algebra::text::{format_word, VarNames};
use crate::algebra::{rational_to_f64, ScalarCoeff, SuperElement, Word};

/// Finite map from generator words (Grassmann, blade, Weyl) to `f64`
/// coefficients. Bosonic dependence has already been evaluated or integrated.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NumericSuperValue {
    weyl_len: usize,
    terms: BTreeMap<Word, f64>,
}

impl NumericSuperValue {
    pub fn zero(weyl_len: usize) -> Self {
        NumericSuperValue {
            weyl_len,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(weyl_len: usize, c: f64) -> Self {
        Self::word(Word::identity(weyl_len), c)
    }

    pub fn word(word: Word, c: f64) -> Self {
        let mut out = Self::zero(word.weyl.len());
        out.add_term(word, c);
        out
    }

    /// Evaluates the bosonic variables of `a` at `point`.
    pub fn evaluate(a: &SuperElement, point: &[f64]) -> Self {
        let sig = a.signature();
        let mut out = Self::zero(2 * sig.n);
        for (mono, q) in a.terms() {
            let mut c = ScalarCoeff::new(q.clone(), mono.pi).to_f64();
            for (x, &k) in point.iter().zip(&mono.bosonic) {
                c *= x.powi(i32::from(k));
            }
            out.add_term(mono.word.clone(), c);
        }
        out
    }

    /// Converts an element without bosonic dependence.
    pub fn from_exact(a: &SuperElement) -> Self {
        assert!(
            a.terms().all(|(m, _)| m.bosonic_degree() == 0),
            "element still depends on bosonic variables"
        );
        Self::evaluate(a, &vec![0.0; a.signature().m])
    }

    pub fn weyl_len(&self) -> usize {
        self.weyl_len
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &f64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word) -> f64 {
        self.terms.get(word).copied().unwrap_or(0.0)
    }

    pub fn add_term(&mut self, word: Word, c: f64) {
        if c == 0.0 {
            return;
        }
        if self.terms.is_empty() {
            self.weyl_len = word.weyl.len();
        }
        let slot = self.terms.entry(word.clone()).or_insert(0.0);
        *slot += c;
        if *slot == 0.0 {
            self.terms.remove(&word);
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        NumericSuperValue {
            weyl_len: self.weyl_len,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.abs()))
    }

    /// Largest `|self - reference| / (1 + |reference|)` over all words.
    pub fn max_rel_error(&self, reference: &NumericSuperValue) -> (f64, Option<Word>) {
        let mut worst: (f64, Option<Word>) = (0.0, None);
        let words = self.terms.keys().chain(reference.terms.keys());
        for w in words {
            let r = reference.coefficient(w);
            let err = (self.coefficient(w) - r).abs() / (1.0 + r.abs());
            if err > worst.0 || err.is_nan() {
                worst = (err, Some(w.clone()));
            }
        }
        worst
    }

    /// Adds `c · a` where `a` is an exact element without bosonic dependence.
    pub fn add_scaled_exact(&mut self, a: &SuperElement, c: f64) {
        for (mono, q) in a.terms() {
            let v = rational_to_f64(q) * std::f64::consts::PI.powi(mono.pi);
            self.add_term(mono.word.clone(), v * c);
        }
    }
}

impl AddAssign<&NumericSuperValue> for NumericSuperValue {
    fn add_assign(&mut self, rhs: &NumericSuperValue) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), *c);
        }
        if self.terms.is_empty() {
            self.weyl_len = self.weyl_len.max(rhs.weyl_len);
        }
    }
}

impl Add for &NumericSuperValue {
    type Output = NumericSuperValue;
    fn add(self, rhs: &NumericSuperValue) -> NumericSuperValue {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &NumericSuperValue {
    type Output = NumericSuperValue;
    fn sub(self, rhs: &NumericSuperValue) -> NumericSuperValue {
        self + &(-rhs)
    }
}

impl Neg for &NumericSuperValue {
    type Output = NumericSuperValue;
    fn neg(self) -> NumericSuperValue {
        self.scale(-1.0)
    }
}

impl Mul for &NumericSuperValue {
    type Output = NumericSuperValue;
    fn mul(self, rhs: &NumericSuperValue) -> NumericSuperValue {
        let mut out = NumericSuperValue::zero(self.weyl_len.max(rhs.weyl_len));
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                for (s, w) in a.mul(b) {
                    out.add_term(w, ca * cb * s as f64);
                }
            }
        }
        out
    }
}

impl fmt::Display for NumericSuperValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let n = self.weyl_len / 2;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = format_word(w, n, &VarNames::STANDARD);
                if word.is_empty() {
                    format!("{c:e}")
                } else {
                    format!("{c:e}*{word}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
