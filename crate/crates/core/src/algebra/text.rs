//! Canonical text form of elements.
//!
//! A term prints as `p/q*pi^k*x1^2*q1*y2*e1*f1^2`: the rational magnitude
//! (omitted when it is 1 and something else follows), the power of π, then the
//! bosonic, Grassmann, parameter, Clifford and Weyl factors in that order.
//! Terms are joined with ` + ` / ` - `; the zero element prints as `0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, SuperElement, Word};

/// Letters used for the commuting and anticommuting variables.
#[derive(Clone, Copy, Debug)]
pub struct VarNames {
    pub bosonic: &'static str,
    pub grassmann: &'static str,
}

impl VarNames {
    pub const STANDARD: VarNames = VarNames {
        bosonic: "x",
        grassmann: "q",
    };
    /// `u_i = x_i - y_i` and `z_j = q_j - y_j`, used for translated kernels.
    pub const SHIFTED: VarNames = VarNames {
        bosonic: "u",
        grassmann: "z",
    };
    /// Translated bosonic variables with the Grassmann shift already expanded.
    pub const TRANSLATED: VarNames = VarNames {
        bosonic: "u",
        grassmann: "q",
    };
}

fn power(name: &str, index: usize, exp: u32) -> String {
    if exp == 1 {
        format!("{name}{index}")
    } else {
        format!("{name}{index}^{exp}")
    }
}

pub(crate) fn word_factors(word: &Word, n: usize, names: &VarNames, out: &mut Vec<String>) {
    let mut bits = word.grassmann;
    while bits != 0 {
        let b = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if b < 2 * n {
            out.push(format!("{}{}", names.grassmann, b + 1));
        } else {
            out.push(format!("y{}", b - 2 * n + 1));
        }
    }
    let mut blade = word.blade;
    while blade != 0 {
        let b = blade.trailing_zeros() as usize;
        blade &= blade - 1;
        out.push(format!("e{}", b + 1));
    }
    for (j, &exp) in word.weyl.iter().enumerate() {
        if exp > 0 {
            out.push(power("f", j + 1, u32::from(exp)));
        }
    }
}

pub fn format_word(word: &Word, n: usize, names: &VarNames) -> String {
    let mut out = Vec::new();
    word_factors(word, n, names, &mut out);
    out.join("*")
}

pub(crate) fn monomial_factors(mono: &Monomial, n: usize, names: &VarNames) -> Vec<String> {
    let mut out = Vec::new();
    if mono.pi != 0 {
        out.push(if mono.pi == 1 {
            "pi".to_string()
        } else {
            format!("pi^{}", mono.pi)
        });
    }
    for (i, &exp) in mono.bosonic.iter().enumerate() {
        if exp > 0 {
            out.push(power(names.bosonic, i + 1, u32::from(exp)));
        }
    }
    word_factors(&mono.word, n, names, &mut out);
    out
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Joins signed terms, each given as a coefficient and its non-scalar factors.
pub(crate) fn join_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a BigRational, Vec<String>)>,
{
    let mut out = String::new();
    for (i, (coeff, factors)) in terms.into_iter().enumerate() {
        let negative = coeff.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = coeff.abs();
        if factors.is_empty() {
            out.push_str(&format_rational(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(&factors.join("*"));
        } else {
            out.push_str(&format_rational(&magnitude));
            out.push('*');
            out.push_str(&factors.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_element(element: &SuperElement, names: &VarNames) -> String {
    let n = element.signature().n;
    join_terms(
        element
            .terms()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, c)| (c, monomial_factors(mono, n, names))),
    )
}
