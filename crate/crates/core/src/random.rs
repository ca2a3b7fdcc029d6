//! Seeded random elements for the identity suites.
//!
//! Terms are sparse, coefficients are drawn from `{-3..3} \ {0}`, and each
//! term carries a product of at most `max_generator_degree` random generators
//! `e_i` / `è_j`.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{integer, Monomial, Signature, SuperElement};

#[derive(Clone, Copy, Debug)]
pub struct ElementShape {
    pub max_terms: usize,
    pub max_generator_degree: u32,
}

impl Default for ElementShape {
    fn default() -> Self {
        ElementShape {
            max_terms: 4,
            max_generator_degree: 2,
        }
    }
}

pub struct ElementSampler {
    rng: ChaCha8Rng,
    shape: ElementShape,
}

impl ElementSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_shape(seed, ElementShape::default())
    }

    pub fn with_shape(seed: u64, shape: ElementShape) -> Self {
        ElementSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            shape,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coefficient(&mut self) -> BigRational {
        let v = *[-3i64, -2, -1, 1, 2, 3].choose(&mut self.rng).unwrap();
        integer(v)
    }

    /// A product of at most `max_generator_degree` random generators.
    pub fn generator_word(&mut self, sig: Signature) -> SuperElement {
        let count = sig.m + sig.grassmann_count();
        let mut out = SuperElement::one(sig);
        if count == 0 {
            return out;
        }
        let degree = self.rng.gen_range(0..=self.shape.max_generator_degree);
        for _ in 0..degree {
            let g = self.rng.gen_range(0..count);
            let gen = if g < sig.m {
                SuperElement::e(sig, g + 1)
            } else {
                SuperElement::f(sig, g - sig.m + 1)
            };
            out = &out * &gen;
        }
        out
    }

    fn random_multidegree(&mut self, m: usize, degree: u32) -> Vec<u16> {
        let mut alpha = vec![0u16; m];
        for _ in 0..degree {
            alpha[self.rng.gen_range(0..m)] += 1;
        }
        alpha
    }

    fn random_subset(&mut self, size: usize, count: usize) -> u64 {
        let mut idx: Vec<usize> = (0..size).collect();
        idx.shuffle(&mut self.rng);
        idx[..count].iter().fold(0u64, |acc, &b| acc | (1 << b))
    }

    fn term(&mut self, sig: Signature, alpha: Vec<u16>, grassmann: u64) -> SuperElement {
        let mut mono = Monomial::one(&sig);
        mono.bosonic = alpha;
        mono.word.grassmann = grassmann;
        let base = SuperElement::from_monomial(sig, mono, self.coefficient());
        &base * &self.generator_word(sig)
    }

    fn term_count(&mut self) -> usize {
        self.rng.gen_range(1..=self.shape.max_terms.max(1))
    }

    /// Random element of `P_k` (Euler degree exactly `k`). Zero when no word
    /// of that degree exists.
    pub fn homogeneous(&mut self, sig: Signature, k: u32) -> SuperElement {
        let g = sig.grassmann_count() as u32;
        let mut out = SuperElement::zero(sig);
        let min_b = k.saturating_sub(g);
        let max_b = if sig.m == 0 { 0 } else { k };
        if min_b > max_b {
            return out;
        }
        for _ in 0..self.term_count() {
            let b = self.rng.gen_range(min_b..=max_b);
            let alpha = self.random_multidegree(sig.m, b);
            let s = self.random_subset(sig.grassmann_count(), (k - b) as usize);
            out += &self.term(sig, alpha, s);
        }
        out
    }

    /// Random element with bosonic degree at most `max_bosonic_degree` and
    /// arbitrary Grassmann content.
    pub fn polynomial(&mut self, sig: Signature, max_bosonic_degree: u32) -> SuperElement {
        let mut out = SuperElement::zero(sig);
        for _ in 0..self.term_count() {
            let b = if sig.m == 0 {
                0
            } else {
                self.rng.gen_range(0..=max_bosonic_degree)
            };
            let alpha = self.random_multidegree(sig.m, b);
            let size = sig.grassmann_count();
            let count = self.rng.gen_range(0..=size);
            let s = self.random_subset(size, count);
            out += &self.term(sig, alpha, s);
        }
        out
    }

    /// Random element of `Λ_{2n} ⊗ C` (no bosonic dependence).
    pub fn grassmann_element(&mut self, sig: Signature) -> SuperElement {
        self.polynomial(sig, 0)
    }
}
