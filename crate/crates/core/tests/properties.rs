//! Property tests for the algebraic invariants of the building blocks.

use fockr::fock::{alpha, alpha_pm, FockVector, Insertion};
use fockr::linalg::Matrix;
use fockr::partitions::partitions_of;
use fockr::suites::{run_suite, SuiteOptions, SuiteReport};
use fockr::{sample_params, Field, MultiPartition, Partition, Poly, RatFunc, Scalar};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| Scalar::new(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar(), 1..=max_len).prop_map(Poly::new)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(4), nonzero_poly(4)).prop_map(|(n, d)| RatFunc::new(n, d))
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=6, 0..=6).prop_map(Partition::new)
}

/// Schoolbook product over the rationals, independent of the library's
/// integer convolution.
fn naive_mul(a: &Poly, b: &Poly) -> Poly {
    let (x, y) = (a.coeffs(), b.coeffs());
    if x.is_empty() || y.is_empty() {
        return Poly::zero();
    }
    let mut out = vec![Scalar::from(0); x.len() + y.len() - 1];
    for (i, p) in x.iter().enumerate() {
        for (j, q) in y.iter().enumerate() {
            out[i + j] = &out[i + j] + &(p * q);
        }
    }
    Poly::new(out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_string_round_trip(s in scalar()) {
        let text = s.to_ratio_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), s.clone());
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), s);
    }

    #[test]
    fn poly_product_and_exact_division(a in poly(7), b in nonzero_poly(7)) {
        let p = &a * &b;
        prop_assert_eq!(&p, &naive_mul(&a, &b));
        prop_assert_eq!(p.exact_div(&b), a);
    }

    #[test]
    fn ratfunc_inverse(f in ratfunc().prop_filter("nonzero", |f| !f.is_zero())) {
        let inv = &RatFunc::constant(Scalar::from(1)) / &f;
        prop_assert_eq!(&f * &inv, RatFunc::constant(Scalar::from(1)));
    }

    #[test]
    fn ratfunc_ring_laws(f in ratfunc(), g in ratfunc(), h in ratfunc()) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn ratfunc_normalization_idempotent(f in ratfunc()) {
        let again = RatFunc::new(f.num().clone(), f.den().clone());
        prop_assert_eq!(&again, &f);
        prop_assert!(f.den().lead() == Scalar::from(1));
        prop_assert!(f.num().gcd(f.den()).is_constant());
    }

    #[test]
    fn ratfunc_evaluation_is_multiplicative(f in ratfunc(), g in ratfunc(), c in scalar()) {
        if let (Some(x), Some(y)) = (f.eval(&c), g.eval(&c)) {
            prop_assert_eq!((&f * &g).eval(&c), Some(&x * &y));
            prop_assert_eq!((&f + &g).eval(&c), Some(&x + &y));
        }
    }

    #[test]
    fn conjugation_is_an_involution(p in partition()) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
    }

    #[test]
    fn dominance_reverses_under_conjugation(n in 1usize..=8, i in 0usize..22, j in 0usize..22) {
        let parts = partitions_of(n);
        let (a, b) = (&parts[i % parts.len()], &parts[j % parts.len()]);
        prop_assert_eq!(a.dominates(b), b.conjugate().dominates(&a.conjugate()));
        if a.dominates(b) && b.dominates(a) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn sampled_params_are_valid(seed in any::<u64>(), r in 1usize..=3) {
        let p = sample_params(seed, r).unwrap();
        prop_assert!(p.validate().is_ok());
        prop_assert_eq!(p.a.len(), r);
        prop_assert_eq!(sample_params(seed, r).unwrap(), p);
    }

    #[test]
    fn modular_squarefree_agrees_with_exact(entries in prop::collection::vec(-3i64..=3, 16), repeat in any::<bool>()) {
        let mut m = Matrix::from_fn(4, 4, |i, j| Scalar::from(entries[4 * i + j]));
        if repeat {
            // a 2x2 scalar block forces a repeated eigenvalue
            m = Matrix::from_fn(4, 4, |i, j| match (i, j) {
                (0, 0) | (1, 1) => Scalar::from(2),
                (0, 1) | (1, 0) => Scalar::from(0),
                (i, j) if i < 2 || j < 2 => Scalar::from(0),
                _ => m.get(i, j).clone(),
            });
        }
        prop_assert_eq!(m.has_squarefree_charpoly(), m.charpoly().is_squarefree());
    }
}

fn fock_vector() -> impl Strategy<Value = FockVector<Scalar>> {
    prop::collection::vec((partition(), partition(), scalar()), 1..=4).prop_map(|terms| {
        let mut v = FockVector::zero(2);
        for (a, b, c) in terms {
            let (a, b) = (
                Partition::new(a.parts().iter().map(|k| k % 3 + 1).collect()),
                Partition::new(b.parts().iter().map(|k| k % 3 + 1).take(2).collect()),
            );
            v.add_term(MultiPartition(vec![a, b]), &c);
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn heisenberg_relations_on_random_vectors(
        seed in 0u64..50,
        v in fock_vector(),
        k in 1i64..=5, l in 1i64..=5,
        i in 0usize..2, j in 0usize..2,
        g in any::<bool>(), h in any::<bool>(),
    ) {
        let p = sample_params(seed, 2).unwrap();
        let ins = |pt: bool| if pt { Insertion::pt(&p) } else { Insertion::one() };
        let a = alpha(&p, 2, i, k, &ins(g)).unwrap();
        let b = alpha(&p, 2, j, -l, &ins(h)).unwrap();
        let lhs = a.apply(&b.apply(&v)).sub(&b.apply(&a.apply(&v)));
        let c = if i == j && k == l {
            Scalar::from(k) * Insertion(&ins(g).0 * &ins(h).0).tau(&p)
        } else {
            Scalar::from(0)
        };
        prop_assert_eq!(lhs, v.scale(&c));
    }

    #[test]
    fn plus_and_minus_bosons_commute(seed in 0u64..50, v in fock_vector(), k in -4i64..=4, l in -4i64..=4) {
        prop_assume!(k != 0 && l != 0);
        let p = sample_params(seed, 2).unwrap();
        let one = Insertion::one();
        let a = alpha_pm(&p, 1, k, &one).unwrap();
        let b = alpha_pm(&p, -1, l, &one).unwrap();
        prop_assert!(a.apply(&b.apply(&v)).sub(&b.apply(&a.apply(&v))).is_zero());
    }
}

#[test]
fn reports_round_trip_through_json() {
    let report = run_suite("gamma", &SuiteOptions { seed: 4, ..Default::default() }).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: SuiteReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
}

#[test]
fn hook_length_counts_are_integral() {
    // Σ_λ f_λ² = n! for every n
    for n in 1..=8usize {
        let total: u128 = partitions_of(n).iter().map(|l| l.standard_tableaux().pow(2)).sum();
        assert_eq!(total, (1..=n as u128).product::<u128>());
    }
}
