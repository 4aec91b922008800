use cactus::series::io::{from_csv, from_json, to_csv, to_json};
use cactus::series::{bi_substitute, BiSeries, Series};
use proptest::prelude::*;
use rug::Rational;

const N: usize = 12;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..7).prop_map(|(p, q)| Rational::from((p, q)))
}

fn series() -> impl Strategy<Value = Series> {
    proptest::collection::vec(rational(), N + 1).prop_map(|c| Series::new(c, N))
}

fn unit_series() -> impl Strategy<Value = Series> {
    (series(), 1i64..5).prop_map(|(s, a)| {
        let mut c = s.into_coeffs();
        c[0] = Rational::from(a * a);
        Series::new(c, N)
    })
}

fn invertible_series() -> impl Strategy<Value = Series> {
    (series(), rational().prop_filter("nonzero", |r| *r != 0)).prop_map(|(s, a1)| {
        let mut c = s.into_coeffs();
        c[0] = Rational::new();
        c[1] = a1;
        Series::new(c, N)
    })
}

fn bi_series() -> impl Strategy<Value = BiSeries<Rational>> {
    proptest::collection::vec(rational(), (N + 1) * (N + 2) / 2).prop_map(|flat| {
        let mut it = flat.into_iter();
        BiSeries::from_fn(N, |_, _| it.next().unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn reciprocal_and_sqrt(a in unit_series()) {
        prop_assert_eq!(a.mul(&a.reciprocal().unwrap()), Series::one(N));
        let r = a.sqrt().unwrap();
        prop_assert!(*r.coeff(0) > 0);
        prop_assert_eq!(r.mul(&r), a);
    }

    #[test]
    fn reversion_both_sides(a in invertible_series()) {
        let b = a.revert().unwrap();
        prop_assert_eq!(b.compose(&a).unwrap(), Series::var(N));
        prop_assert_eq!(a.compose(&b).unwrap(), Series::var(N));
    }

    #[test]
    fn dominance_is_a_partial_order(a in series(), b in series(), c in series()) {
        prop_assert!(a.dominates(&a).unwrap());
        if a.dominates(&b).unwrap() && b.dominates(&a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if a.dominates(&b).unwrap() && b.dominates(&c).unwrap() {
            prop_assert!(a.dominates(&c).unwrap());
        }
        let bigger = a.add(&b.mul(&b).truncate(N).map(|x| Rational::from(x.abs_ref())));
        prop_assert!(bigger.dominates(&a).unwrap());
    }

    #[test]
    fn bivariate_degree_bound(a in bi_series(), b in bi_series()) {
        for s in [a.mul(&b), a.add(&b), a.reflect_u(), a.scale_t(&Rational::from((1, 3)))] {
            for n in 0..=N {
                prop_assert!(s.degree(n).is_none_or(|d| d <= n));
            }
        }
    }

    #[test]
    fn substitution_at_zero_and_one(a in bi_series()) {
        let t = Series::var(N);
        prop_assert_eq!(bi_substitute(&a, &t, &Series::zero(N)).unwrap(), a.specialize_u(&Rational::new()));
        prop_assert_eq!(bi_substitute(&a, &t, &Series::one(N)).unwrap(), a.specialize_u(&Rational::from(1)));
    }

    #[test]
    fn text_round_trips(a in series()) {
        prop_assert_eq!(from_csv(&to_csv(&a)).unwrap(), a.clone());
        prop_assert_eq!(from_json(&to_json(&a)).unwrap(), a);
    }
}

#[test]
fn mismatched_orders() {
    let a: Series = Series::one(4);
    let b: Series = Series::one(5);
    assert!(a.dominates(&b).is_err());
    assert_eq!(a.add(&b).order(), 4);
}
