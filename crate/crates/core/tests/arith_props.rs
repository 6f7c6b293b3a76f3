use nilcert::arith::{GaussianRational, HalfIntOrder, Poly, RationalFunction, TowerElement};
use num_complex::Complex64;
use proptest::prelude::*;

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-5i64..=5, 1i64..=4, -3i64..=3, 1i64..=4).prop_map(|(a, b, c, d)| {
        &GaussianRational::from_ratio(a, b) + &(&GaussianRational::i() * &GaussianRational::from_ratio(c, d))
    })
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(gaussian(), 1..=max_deg + 1).prop_map(Poly::new)
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(3), nonzero_poly(3), 0usize..=2, any::<bool>()).prop_map(|(n, d, shift, up)| {
        let tk = Poly::monomial(GaussianRational::one(), shift);
        if up {
            RationalFunction::new(&n * &tk, d).unwrap()
        } else {
            RationalFunction::new(n, &d * &tk).unwrap()
        }
    })
}

/// Radicand `t·u(t)` with `u(0) ≠ 0`: odd order, so never a square.
fn odd_radicand() -> impl Strategy<Value = RationalFunction> {
    (nonzero_poly(2), gaussian().prop_filter("nonzero", |c| !c.is_zero())).prop_map(|(p, c)| {
        let u = &(&p * &Poly::t()) + &Poly::constant(c);
        RationalFunction::from_poly(&u * &Poly::t())
    })
}

fn tower_with(r: RationalFunction) -> impl Strategy<Value = TowerElement> {
    (ratfunc(), ratfunc()).prop_map(move |(a, b)| TowerElement::with_radical(a, b, r.clone()))
}

fn tower_triple() -> impl Strategy<Value = (TowerElement, TowerElement, TowerElement)> {
    odd_radicand().prop_flat_map(|r| (tower_with(r.clone()), tower_with(r.clone()), tower_with(r)))
}

fn small_at(t: f64, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
    f(Complex64::new(t, 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gaussian_field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        }
    }

    #[test]
    fn tower_field_axioms((a, b, c) in tower_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn ratfunc_order_is_additive(a in ratfunc(), b in ratfunc()) {
        match (a.order_at_zero(), b.order_at_zero()) {
            (Some(x), Some(y)) => prop_assert_eq!((&a * &b).order_at_zero(), Some(x + y)),
            _ => prop_assert!((&a * &b).is_zero()),
        }
    }

    /// With an odd-order radicand the two parts never share an order, so
    /// the order is exact and must be additive.
    #[test]
    fn tower_order_is_additive((a, b, _) in tower_triple()) {
        let sum = match (a.order_at_zero(), b.order_at_zero()) {
            (HalfIntOrder::Finite { halves: x }, HalfIntOrder::Finite { halves: y }) => HalfIntOrder::halves(x + y),
            _ => HalfIntOrder::Infinity,
        };
        prop_assert_eq!((&a * &b).order_at_zero(), sum);
    }

    #[test]
    fn norm_is_multiplicative((a, b, _) in tower_triple()) {
        prop_assert_eq!((&a * &b).norm(), &a.norm() * &b.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Exact limits agree with floating evaluation near zero.
    #[test]
    fn limit_matches_float(f in ratfunc(), g in ratfunc(), r in odd_radicand(), with_radical in any::<bool>()) {
        // shift to a non-negative order so the limit exists
        let lift = |x: &RationalFunction| -> RationalFunction {
            match x.order_at_zero() {
                Some(o) if o < 0 => x * &RationalFunction::t().pow(-o as i32).unwrap(),
                _ => x.clone(),
            }
        };
        let base = lift(&f);
        let x = if with_radical {
            // radical part of order ≥ 1/2
            TowerElement::with_radical(base.clone(), lift(&g), r)
        } else {
            TowerElement::from(base.clone())
        };
        let limit = x.limit_at_zero().unwrap().to_complex();
        let t = 1e-6;
        let value = small_at(t, |z| x.eval_complex(z));
        // coefficients are small, so the remainder is O(sqrt t) with a modest constant
        let scale = 1.0 + limit.norm();
        prop_assert!((value - limit).norm() <= 1e-1 * scale, "f = {x}, f(1e-6) = {value}, limit = {limit}");
    }
}

#[test]
fn radical_limits_classified() {
    let t = RationalFunction::t();
    let r = &t * &RationalFunction::from_poly(Poly::from_ints(&[1, 1]));
    // t^{-1/2}·sqrt part diverges
    let x = TowerElement::with_radical(RationalFunction::one(), t.inv().unwrap(), r.clone());
    assert!(x.limit_at_zero().is_err());
    let y = TowerElement::with_radical(RationalFunction::one(), t.clone(), r);
    assert_eq!(y.limit_at_zero().unwrap(), GaussianRational::one());
}
