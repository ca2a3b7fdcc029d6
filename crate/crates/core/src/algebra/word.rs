//! Generator words `x̀_S ỳ_P e_T è^β` and their normal-ordered product.

use std::fmt;

/// The non-commuting part of a basis monomial.
///
/// `grassmann` holds the anticommuting variables as a bit set: bit `j - 1` is
/// `x̀_j` for `j ≤ 2n`, and bit `2n + j - 1` is the parameter `ỳ_j`. Since all
/// Grassmann variables anticommute with each other, a single set in this
/// combined order (every `x̀` before every `ỳ`) is enough.
///
/// `blade` is the orthogonal Clifford blade `e_T` (bit `i - 1` is `e_i`) and
/// `weyl` the exponents of `è_1^{β_1} ⋯ è_{2n}^{β_{2n}}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub grassmann: u64,
    pub blade: u32,
    pub weyl: Vec<u16>,
}

impl Word {
    pub fn identity(weyl_len: usize) -> Self {
        Word {
            grassmann: 0,
            blade: 0,
            weyl: vec![0; weyl_len],
        }
    }

    pub fn grassmann_degree(&self) -> u32 {
        self.grassmann.count_ones()
    }

    pub fn weyl_degree(&self) -> u32 {
        self.weyl.iter().map(|&b| u32::from(b)).sum()
    }

    /// Total degree in the generators `e_i` and `è_j`.
    pub fn generator_degree(&self) -> u32 {
        self.blade.count_ones() + self.weyl_degree()
    }

    /// Normal-ordered product `self · other` as a list of integer multiples of
    /// words. The list is empty when the Grassmann supports overlap.
    pub fn mul(&self, other: &Word) -> Vec<(i64, Word)> {
        debug_assert_eq!(self.weyl.len(), other.weyl.len());
        let Some(grassmann_negative) = grassmann_merge_sign(self.grassmann, other.grassmann)
        else {
            return Vec::new();
        };
        let mut negative = grassmann_negative;
        // e_T' moves left past è^β: one sign per (e, è) pair.
        if (other.blade.count_ones() * self.weyl_degree()) % 2 == 1 {
            negative = !negative;
        }
        let (blade_negative, blade) = blade_product(self.blade, other.blade);
        if blade_negative {
            negative = !negative;
        }
        let grassmann = self.grassmann | other.grassmann;
        let sign = if negative { -1 } else { 1 };
        weyl_product(&self.weyl, &other.weyl)
            .into_iter()
            .map(|(c, weyl)| {
                (
                    sign * c,
                    Word {
                        grassmann,
                        blade,
                        weyl,
                    },
                )
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            super::text::format_word(self, self.weyl.len() / 2, &super::text::VarNames::STANDARD)
        )
    }
}

/// Sign of sorting the concatenation of two sorted index sets, or `None` when
/// they share an element (the product of anticommuting variables vanishes).
/// Returns `true` for a negative sign.
pub(crate) fn grassmann_merge_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    Some(reorder_swaps(a, b) % 2 == 1)
}

/// Product of two orthogonal blades with `e_i² = -1`. Returns the sign
/// (`true` when negative) and the resulting blade.
pub(crate) fn blade_product(a: u32, b: u32) -> (bool, u32) {
    let swaps = reorder_swaps(u64::from(a), u64::from(b)) + (a & b).count_ones();
    (swaps % 2 == 1, a ^ b)
}

/// Number of transpositions needed to move every element of `b` left past the
/// larger elements of `a`.
fn reorder_swaps(a: u64, b: u64) -> u32 {
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += if j >= 63 { 0 } else { (a >> (j + 1)).count_ones() };
    }
    swaps
}

fn binomial(n: u16, k: u16) -> i64 {
    let (n, k) = (i64::from(n), i64::from(k.min(n - k)));
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Normal-ordered product of two Weyl words.
///
/// Different index pairs commute. Within a pair `a = è_{2j-1}`, `b = è_{2j}`
/// with `ab - ba = 1` one has
/// `b^q a^r = Σ_k (-1)^k C(q,k) C(r,k) k! a^{r-k} b^{q-k}`.
pub(crate) fn weyl_product(lhs: &[u16], rhs: &[u16]) -> Vec<(i64, Vec<u16>)> {
    let mut acc: Vec<(i64, Vec<u16>)> = vec![(1, vec![0; lhs.len()])];
    for pair in 0..lhs.len() / 2 {
        let (p, q) = (lhs[2 * pair], lhs[2 * pair + 1]);
        let (r, s) = (rhs[2 * pair], rhs[2 * pair + 1]);
        let mut factorial = 1i64;
        let mut expansion = Vec::with_capacity(usize::from(q.min(r)) + 1);
        for k in 0..=q.min(r) {
            if k > 0 {
                factorial *= i64::from(k);
            }
            let magnitude = binomial(q, k)
                .checked_mul(binomial(r, k))
                .and_then(|v| v.checked_mul(factorial))
                .expect("Weyl reordering coefficient overflow");
            let c = if k % 2 == 0 { magnitude } else { -magnitude };
            expansion.push((c, p + r - k, q + s - k));
        }
        if expansion.len() == 1 {
            let (_, a, b) = expansion[0];
            for (_, word) in &mut acc {
                word[2 * pair] = a;
                word[2 * pair + 1] = b;
            }
            continue;
        }
        let mut next = Vec::with_capacity(acc.len() * expansion.len());
        for (c0, word) in &acc {
            for &(c, a, b) in &expansion {
                let mut w = word.clone();
                w[2 * pair] = a;
                w[2 * pair + 1] = b;
                next.push((c0.checked_mul(c).expect("Weyl coefficient overflow"), w));
            }
        }
        acc = next;
    }
    acc
}
