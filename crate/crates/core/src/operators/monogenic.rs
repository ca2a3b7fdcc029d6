//! Spherical monogenics as the exact nullspace of `∂_x` on a capped basis of
//! homogeneous polynomials.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{compositions, dirac, monomial, subsets, OperatorError, Side};
use crate::algebra::{Monomial, Signature, SuperElement};
use crate::linalg::nullspace;

pub const MAX_DEGREE: u32 = 4;
pub const MAX_WEYL_CAP: u32 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct MonogenicBasis {
    #[serde(skip)]
    pub sig: Signature,
    pub degree: u32,
    pub weyl_cap: u32,
    pub side: Side,
    /// Number of candidate words `x^α x̀_S e_T è^β`.
    pub candidates: usize,
    #[serde(serialize_with = "serialize_elements")]
    pub elements: Vec<SuperElement>,
}

fn serialize_elements<S: serde::Serializer>(v: &[SuperElement], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|e| e.to_string()))
}

impl MonogenicBasis {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }
}

/// Candidate words of Euler degree `k` with Weyl degree at most `cap`.
pub fn candidate_words(sig: Signature, k: u32, cap: u32) -> Vec<Monomial> {
    let g = sig.grassmann_count();
    let mut weyls = Vec::new();
    for d in 0..=cap {
        weyls.extend(compositions(d, g));
    }
    let mut out = Vec::new();
    for s_size in 0..=(k as usize).min(g) {
        let b = k - s_size as u32;
        if sig.m == 0 && b > 0 {
            continue;
        }
        for alpha in compositions(b, sig.m) {
            for s in subsets(g, s_size) {
                for blade in 0u32..(1u32 << sig.m) {
                    for w in &weyls {
                        out.push(monomial(sig, alpha.clone(), s, blade, w.clone()));
                    }
                }
            }
        }
    }
    out
}

/// Basis of `{ R ∈ P_k : ∂_x R = 0 }` (or `R ∂_x = 0`) within the span of the
/// candidate words. Columns that share no image word are solved separately.
pub fn monogenic_basis(
    sig: Signature,
    k: u32,
    weyl_cap: u32,
    side: Side,
) -> Result<MonogenicBasis, OperatorError> {
    if k > MAX_DEGREE || weyl_cap > MAX_WEYL_CAP {
        return Err(OperatorError::BasisTooLarge {
            max_degree: MAX_DEGREE,
            max_cap: MAX_WEYL_CAP,
        });
    }
    let sig = sig.without_params();
    let words = candidate_words(sig, k, weyl_cap);
    let images: Vec<SuperElement> = words
        .iter()
        .map(|w| {
            dirac(
                &SuperElement::from_monomial(sig, w.clone(), BigRational::from_integer(1.into())),
                side,
            )
        })
        .collect();

    // Union-find over columns linked by a shared image word.
    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut c = i;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    let mut owner: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for (col, img) in images.iter().enumerate() {
        for (m, _) in img.terms() {
            match owner.get(m) {
                Some(&other) => {
                    let (a, b) = (find(&mut parent, col), find(&mut parent, other));
                    if a != b {
                        parent[a] = b;
                    }
                }
                None => {
                    owner.insert(m, col);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for col in 0..words.len() {
        let root = find(&mut parent, col);
        groups.entry(root).or_default().push(col);
    }

    let mut elements = Vec::new();
    for cols in groups.values() {
        let mut row_index: BTreeMap<&Monomial, usize> = BTreeMap::new();
        for &c in cols {
            for (m, _) in images[c].terms() {
                let next = row_index.len();
                row_index.entry(m).or_insert(next);
            }
        }
        let mut matrix = vec![vec![BigRational::zero(); cols.len()]; row_index.len()];
        for (j, &c) in cols.iter().enumerate() {
            for (m, q) in images[c].terms() {
                matrix[row_index[m]][j] = q.clone();
            }
        }
        for v in nullspace(&matrix, cols.len()) {
            let mut e = SuperElement::zero(sig);
            for (j, q) in v.into_iter().enumerate() {
                if !q.is_zero() {
                    e.add_term(words[cols[j]].clone(), q);
                }
            }
            elements.push(e);
        }
    }
    Ok(MonogenicBasis {
        sig,
        degree: k,
        weyl_cap,
        side,
        candidates: words.len(),
        elements,
    })
}
