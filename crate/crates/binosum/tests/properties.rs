//! Property tests tying the fast paths back to their definitional forms on
//! randomized inputs.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use binosum::asymptotics::{central_ratio, is_covered, sandwich_e1};
use binosum::binomial::{binom, f_value, partial_sum, SumRow};
use binosum::chains::ChainContext;
use binosum::maxima::{argmax_f, crossover_rstar, r0, step_compare};
use binosum::polys::{coeff_tables, poly_a, poly_b};
use binosum::reed_muller::{best_order, merit, rm_code};
use binosum::Rational;

/// Reference argmax straight from the definition: compare the exact
/// rationals f_m(r) across the whole row.
fn argmax_by_definition(m: u64) -> Vec<u64> {
    let values: Vec<Rational> = (0..=m).map(|r| f_value(m, r).unwrap()).collect();
    let best = values.iter().max().unwrap().clone();
    (0..=m).filter(|&r| values[r as usize] == best).collect()
}

proptest! {
    #[test]
    fn argmax_matches_definition(m in 0u64..400) {
        let fast: Vec<u64> = argmax_f(m).into_iter().collect();
        prop_assert_eq!(fast, argmax_by_definition(m));
    }

    #[test]
    fn crossover_is_a_maximizer(m in 2u64..500) {
        let r_star = crossover_rstar(m).unwrap();
        let maximizers = argmax_f(m);
        prop_assert!(maximizers.contains(&r_star));
        // Maximizers never extend beyond the tie at the crossover.
        for r in &maximizers {
            prop_assert!(*r == r_star || *r == r_star + 1);
        }
    }

    #[test]
    fn step_compare_matches_exact_f_ordering(m in 2u64..300, seed in 0u64..1000) {
        let r = seed % m;
        let row = SumRow::new(m);
        let expect = row.f_value(r).cmp(&row.f_value(r + 1));
        prop_assert_eq!(step_compare(m, r).unwrap(), expect);
    }

    #[test]
    fn floors_follow_shifted_sums(m in 0u64..250, seed in 0u64..1000) {
        let r = seed % (m + 1);
        let row = SumRow::new(m);
        let f = row.f_value(r);
        let floor = row.sum(r) >> r;
        // floor <= f < floor + 1
        let floor_rat = Rational::from(floor.clone());
        prop_assert!(floor_rat <= f);
        prop_assert!(f < Rational::from(floor + BigInt::from(1)));
    }

    #[test]
    fn partial_sums_telescope(m in 0u64..200, seed in 0u64..1000) {
        let r = (seed % (m + 2)) as i64 - 1; // -1..=m
        let lhs = partial_sum(m, r + 1).unwrap();
        let rhs = partial_sum(m, r).unwrap() + binom(m, r + 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn forward_chain_scales_head_sums(m in 2u64..120, seed in 0u64..10_000) {
        let r = seed % m;
        let ctx = ChainContext::new(m, r).unwrap();
        let c_r = binom(m, r as i64);
        let mut head = BigInt::zero();
        for (j, t) in ctx.t_chain().iter().enumerate() {
            head += binom(m, r as i64 - j as i64);
            prop_assert_eq!(t * Rational::from(c_r.clone()), Rational::from(head.clone()));
        }
    }

    #[test]
    fn backward_chain_meets_forward(m in 2u64..120, seed in 0u64..10_000) {
        let r = seed % m;
        let ctx = ChainContext::new(m, r).unwrap();
        let s = ctx.s_chain();
        let t = ctx.t_chain();
        prop_assert_eq!(&s[0], &t[r as usize]);
        prop_assert_eq!(&s[r as usize], &Rational::from(BigInt::from(1)));
    }

    #[test]
    fn coefficient_tables_evaluate_like_polynomials(i in 2u64..25, r in -40i64..40) {
        let tables = coeff_tables(i).unwrap();
        let x = BigInt::from(r);
        let a_poly = poly_a(i).unwrap().eval(&x);
        let mut a_horner = BigInt::zero();
        for k in (0..=i).rev() {
            a_horner = a_horner * &x + tables.a(i, k);
        }
        prop_assert_eq!(a_poly, a_horner);
        let b_poly = poly_b(i).eval(&x);
        let mut b_horner = BigInt::zero();
        for k in (0..=i).rev() {
            b_horner = b_horner * &x + tables.b(i, k);
        }
        prop_assert_eq!(b_poly, b_horner);
    }

    #[test]
    fn sandwich_orders_the_peak(m in 2u64..800) {
        prop_assume!(is_covered(m));
        let s = sandwich_e1(m).unwrap();
        prop_assert!(s.holds);
        prop_assert!(s.lower < s.f);
        prop_assert!(s.f < s.upper);
        // The lower bound is the next-column closed form.
        let r = r0(m);
        let expect = Rational::new(binom(m, r as i64 + 1), BigInt::from(1) << r);
        prop_assert_eq!(&s.lower, &expect);
    }

    #[test]
    fn merit_is_the_weighted_sum(m in 0u64..200, seed in 0u64..10_000) {
        let r = seed % (m + 1);
        let code = rm_code(r, m).unwrap();
        prop_assert_eq!(merit(&code), f_value(m, r).unwrap());
    }

    #[test]
    fn best_order_tracks_argmax(m in 0u64..300) {
        prop_assert_eq!(best_order(m), argmax_f(m));
    }

    #[test]
    fn central_ratio_stays_below_its_bound(s in 5u64..400) {
        let ratio = central_ratio(s).unwrap();
        let bound = binosum::rational(2 * s as i64, s as i64 + 1);
        prop_assert!(ratio < bound);
        prop_assert!(ratio > binosum::rational(1, 1));
        // And below 2 outright.
        prop_assert!((binosum::rational(2, 1) - ratio).is_positive());
    }
}
