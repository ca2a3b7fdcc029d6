use num_rational::BigRational;
use proptest::prelude::*;

use supercauchy::algebra::{integer, Signature, SuperElement};
use supercauchy::cli::expr;
use supercauchy::operators::euler;

const SIG: Signature = Signature {
    m: 2,
    n: 1,
    n_params: 1,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Gen {
    X(usize),
    Q(usize),
    Y(usize),
    E(usize),
    F(usize),
}

fn gen_strategy(sig: Signature) -> impl Strategy<Value = Gen> {
    let g = 2 * sig.n;
    let p = 2 * sig.n_params;
    prop_oneof![
        (1..=sig.m).prop_map(Gen::X),
        (1..=g).prop_map(Gen::Q),
        (1..=p.max(1)).prop_map(move |j| if p == 0 { Gen::Q(1) } else { Gen::Y(j) }),
        (1..=sig.m).prop_map(Gen::E),
        (1..=g).prop_map(Gen::F),
    ]
}

fn element(sig: Signature, g: Gen) -> SuperElement {
    match g {
        Gen::X(i) => SuperElement::x(sig, i),
        Gen::Q(j) => SuperElement::q(sig, j),
        Gen::Y(j) => SuperElement::y(sig, j),
        Gen::E(i) => SuperElement::e(sig, i),
        Gen::F(j) => SuperElement::f(sig, j),
    }
}

fn product(sig: Signature, word: &[Gen]) -> SuperElement {
    word.iter()
        .fold(SuperElement::one(sig), |acc, &g| &acc * &element(sig, g))
}

fn odd(g: Gen) -> bool {
    matches!(g, Gen::Q(_) | Gen::Y(_))
}

fn clifford(g: Gen) -> bool {
    matches!(g, Gen::E(_) | Gen::F(_))
}

/// Normal form by repeated adjacent rewriting straight from the defining
/// relations, independent of the bitmask engine.
fn naive_normal_form(word: Vec<Gen>) -> Vec<(i64, Vec<Gen>)> {
    let mut pending = vec![(1i64, word)];
    let mut done: Vec<(i64, Vec<Gen>)> = Vec::new();
    'outer: while let Some((c, w)) = pending.pop() {
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            if a == b {
                match a {
                    Gen::Q(_) | Gen::Y(_) => continue 'outer,
                    Gen::E(_) => {
                        let mut rest = w.clone();
                        rest.drain(i..i + 2);
                        pending.push((-c, rest));
                        continue 'outer;
                    }
                    _ => continue,
                }
            }
            if a <= b {
                continue;
            }
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            let sign = if (odd(a) && odd(b)) || (clifford(a) && clifford(b) && !matches!((a, b), (Gen::F(_), Gen::F(_)))) {
                -1
            } else {
                1
            };
            pending.push((sign * c, swapped));
            if let (Gen::F(hi), Gen::F(lo)) = (a, b) {
                if hi % 2 == 0 && hi == lo + 1 {
                    let mut rest = w.clone();
                    rest.drain(i..i + 2);
                    pending.push((-c, rest));
                }
            }
            continue 'outer;
        }
        done.push((c, w));
    }
    done
}

fn from_naive(sig: Signature, terms: &[(i64, Vec<Gen>)]) -> SuperElement {
    let mut out = SuperElement::zero(sig);
    for (c, w) in terms {
        out += &product(sig, w).scale_int(*c);
    }
    out
}

fn word_strategy(sig: Signature, max_len: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(gen_strategy(sig), 0..=max_len)
}

fn element_strategy(sig: Signature) -> impl Strategy<Value = SuperElement> {
    prop::collection::vec((-3i64..=3, word_strategy(sig, 4)), 1..=4).prop_map(move |terms| {
        let mut out = SuperElement::zero(sig);
        for (c, w) in terms {
            out += &product(sig, &w).scale_int(c);
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn word_products_match_rewriting_oracle(word in word_strategy(SIG, 7)) {
        let engine = product(SIG, &word);
        let oracle = from_naive(SIG, &naive_normal_form(word));
        prop_assert_eq!(engine, oracle);
    }

    #[test]
    fn associativity(a in element_strategy(SIG), b in element_strategy(SIG), c in element_strategy(SIG)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn distributivity(a in element_strategy(SIG), b in element_strategy(SIG), c in element_strategy(SIG)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn grassmann_nilpotency(j in 1usize..=2, param in any::<bool>(), c in 1i64..5) {
        let g = if param { SuperElement::y(SIG, j) } else { SuperElement::q(SIG, j) }.scale_int(c);
        prop_assert!((&g * &g).is_zero());
    }

    #[test]
    fn variables_commute_with_generators(
        v in prop_oneof![(1usize..=2).prop_map(Gen::X), (1usize..=2).prop_map(Gen::Q)],
        g in prop_oneof![(1usize..=2).prop_map(Gen::E), (1usize..=2).prop_map(Gen::F)],
    ) {
        let (v, g) = (element(SIG, v), element(SIG, g));
        prop_assert_eq!(&v * &g, &g * &v);
    }

    #[test]
    fn euler_grades_homogeneous_parts(a in element_strategy(SIG), k in 0u32..=4) {
        let part = a.homogeneous_part(k);
        prop_assert_eq!(euler(&part), part.scale(&BigRational::from_integer(k.into())));
    }

    #[test]
    fn homogeneous_parts_sum_to_element(a in element_strategy(SIG)) {
        let top = a.max_euler_degree().unwrap_or(0);
        let mut sum = SuperElement::zero(SIG);
        for k in 0..=top {
            sum += &a.homogeneous_part(k);
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn printed_form_reparses(a in element_strategy(SIG), b in element_strategy(SIG)) {
        let text = a.to_string();
        let back = expr::eval(&text, SIG).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
        let prod = &a * &b;
        let reparsed = &expr::eval(&a.to_string(), SIG).unwrap() * &expr::eval(&b.to_string(), SIG).unwrap();
        prop_assert_eq!(reparsed, prod);
    }
}

#[test]
fn weyl_swap_example() {
    let sig = Signature::new(0, 1);
    let f = |j| SuperElement::f(sig, j);
    assert_eq!(&f(2) * &f(1), &(&f(1) * &f(2)) - &SuperElement::one(sig));
    assert_eq!(
        naive_normal_form(vec![Gen::F(2), Gen::F(1)]),
        vec![(-1, vec![]), (1, vec![Gen::F(1), Gen::F(2)])]
    );
    let sig = Signature::new(1, 0);
    assert_eq!(SuperElement::e(sig, 1).pow(2), SuperElement::from_rational(sig, -integer(1)));
}
