mod common;

use common::arb_div;
use proptest::prelude::*;
use symdiv::opalg::{power, RawOp};
use symdiv::structure::{
    divergence_from_raw, k_table_by_inversion, power_div_coeffs, raw_from_divergence, scale_hbar, scaled_power_div,
    structure_constants, unscale_hbar,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn raw_divergence_round_trip(d in arb_div(3, 5)) {
        let l = raw_from_divergence(&d);
        prop_assert_eq!(divergence_from_raw(&l).unwrap(), d);
    }

    #[test]
    fn power_matches_composition(d in arb_div(2, 3), n in 1u32..=3) {
        let pd = power_div_coeffs(&d, n);
        let direct = power(&raw_from_divergence(&d), n);
        prop_assert_eq!(RawOp::new(pd.a.clone()), direct.clone());
        prop_assert_eq!(raw_from_divergence(&symdiv::opalg::DivOp::new(pd.b.clone())), direct);
        for (b, (fb, r)) in pd.b.iter().zip(pd.cal_b.iter().zip(&pd.r)) {
            prop_assert_eq!(&(fb + r), b);
        }
    }

    #[test]
    fn top_coefficient_is_power_of_top(d in arb_div(2, 3), n in 1u32..=3) {
        let pd = power_div_coeffs(&d, n);
        let top = pd.b.len() - 1;
        prop_assert_eq!(top, d.half_order() * n as usize);
        prop_assert_eq!(&pd.b[top], &d.coeff(d.half_order()).pow(n));
        prop_assert!(pd.r[top].is_zero());
    }

    #[test]
    fn scaling_is_invertible(d in arb_div(3, 4)) {
        prop_assert_eq!(unscale_hbar(&scale_hbar(&d)).unwrap(), d);
    }

    #[test]
    fn scaled_power_is_the_power_of_the_scaled_operator(d in arb_div(2, 3), n in 1u32..=2) {
        let pd = scaled_power_div(&d, n).unwrap();
        let direct = power(&raw_from_divergence(&scale_hbar(&d)), n);
        prop_assert_eq!(RawOp::new(pd.a.clone()), direct);
        let rebuilt = raw_from_divergence(&scale_hbar(&symdiv::opalg::DivOp::new(pd.b.clone())));
        prop_assert_eq!(rebuilt, RawOp::new(pd.a));
    }
}

#[test]
fn constant_tables_agree_by_both_routes() {
    for m in 0..=8 {
        assert_eq!(structure_constants(m).k, k_table_by_inversion(m), "m = {m}");
    }
}
