use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use zcx::classify::{degree_pair_bfs, is_ascending, is_centered, is_descending, is_four_stack};
use zcx::{all_convex, degree_pair, Polyomino, Series};

fn catalogue() -> &'static Vec<Vec<Polyomino>> {
    static ALL: OnceLock<Vec<Vec<Polyomino>>> = OnceLock::new();
    ALL.get_or_init(|| (2..=9).map(|n| all_convex(n).collect()).collect())
}

/// A uniformly chosen convex polyomino of size 2..=9.
fn small_polyomino() -> impl Strategy<Value = Polyomino> {
    (0usize..8, any::<prop::sample::Index>()).prop_map(|(k, i)| i.get(&catalogue()[k]).clone())
}

/// Random row lists, kept when they form a convex polyomino. These reach
/// widths the catalogue does not.
fn wide_polyomino() -> impl Strategy<Value = Polyomino> {
    prop::collection::vec((-40i64..40, 0i64..60), 1..6).prop_filter_map("not convex", |rows| {
        let rows: Vec<(i64, i64)> = rows.into_iter().map(|(l, len)| (l, l + len)).collect();
        Polyomino::from_rows(&rows).ok()
    })
}

proptest! {
    #[test]
    fn encoding_round_trips(p in small_polyomino()) {
        let text = p.encode();
        prop_assert_eq!(Polyomino::decode(&text).unwrap(), p.clone());
        prop_assert_eq!(p.to_string(), text);
    }

    #[test]
    fn mirror_is_an_involution(p in small_polyomino()) {
        let m = p.mirror();
        prop_assert_eq!(m.mirror(), p.clone());
        prop_assert_eq!(m.size(), p.size());
        prop_assert_eq!(m.area(), p.area());
    }

    #[test]
    fn mirror_swaps_degrees_and_classes(p in small_polyomino()) {
        let m = p.mirror();
        prop_assert_eq!(degree_pair(&m), degree_pair(&p).swapped());
        prop_assert_eq!(is_ascending(&p), is_descending(&m));
        prop_assert_eq!(is_centered(&p), is_centered(&m));
        prop_assert_eq!(is_four_stack(&p), is_four_stack(&m));
    }

    #[test]
    fn ascending_iff_nw_at_most_one(p in small_polyomino()) {
        prop_assert_eq!(is_ascending(&p), degree_pair(&p).nw <= 1);
    }

    #[test]
    fn wide_degrees_agree(p in wide_polyomino()) {
        prop_assert_eq!(degree_pair(&p), degree_pair_bfs(&p));
        prop_assert_eq!(Polyomino::decode(&p.encode()).unwrap(), p);
    }
}

fn series_strategy(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(-20i64..20, order).prop_map(move |c| Series::from_ints(&c, order))
}

/// Series with constant term 1, so they are invertible and have a square root.
fn unit_series(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(-20i64..20, order - 1).prop_map(move |mut c| {
        c.insert(0, 1);
        Series::from_ints(&c, order)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in series_strategy(12), b in series_strategy(12), c in series_strategy(12)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &a), &Series::zero(12));
        prop_assert_eq!(&a * &Series::one(12), a.clone());
    }

    #[test]
    fn division_inverts_multiplication(a in series_strategy(12), u in unit_series(12)) {
        prop_assert_eq!((&a * &u).div(&u).unwrap(), a.clone());
        prop_assert_eq!(&a.div(&u).unwrap() * &u, a);
    }

    #[test]
    fn sqrt_squares_back(u in unit_series(10)) {
        let r = u.sqrt().unwrap();
        prop_assert_eq!(&r * &r, u.clone());
        prop_assert_eq!(r.coeff(0), &BigRational::from_integer(BigInt::from(1)));
    }

    #[test]
    fn binomial_exponents_add(p in -6i64..6, q in -6i64..6, c in -3i64..4, d in 1i64..4) {
        let c = BigRational::from_integer(c.into());
        let p = BigRational::new(p.into(), d.into());
        let q = BigRational::new(q.into(), d.into());
        let lhs = &Series::binomial(&c, &p, 10) * &Series::binomial(&c, &q, 10);
        prop_assert_eq!(lhs, Series::binomial(&c, &(p + q), 10));
    }
}
