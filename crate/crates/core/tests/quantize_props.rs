mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use symdiv::opalg::{adjoint, compose, is_symmetric};
use symdiv::poly::Poly;
use symdiv::quantize::{
    has_semiclassical_form, nc_star, quantize, quantize_components, quantize_divergence, weyl_lift, Coeff, Letter, NcPoly,
    QSqrt2,
};
use symdiv::structure::{raw_from_divergence, scale_hbar};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn arb_word(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(any::<bool>().prop_map(|b| if b { Letter::Theta } else { Letter::ThetaStar }), 0..=max_len)
}

fn arb_coeff() -> impl Strategy<Value = Coeff> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(a, b, c, d)| Coeff {
        re: QSqrt2 { a: q(a), b: q(b) },
        im: QSqrt2 { a: q(c), b: q(d) },
    })
}

fn arb_nc(max_len: usize) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((arb_word(max_len), arb_coeff()), 0..=4)
        .prop_map(|ts| ts.into_iter().fold(NcPoly::zero(), |acc, (w, c)| acc.add(&NcPoly::term(w, c))))
}

/// Polynomials with rational coefficients on even-length words, whose
/// quantization is real.
fn arb_even_rational(max_half: usize) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((0..=max_half, prop::collection::vec(any::<bool>(), 2 * max_half), -3i64..=3), 0..=3).prop_map(
        |ts| {
            ts.into_iter().fold(NcPoly::zero(), |acc, (h, bits, c)| {
                let w: Vec<Letter> =
                    bits[..2 * h].iter().map(|&b| if b { Letter::Theta } else { Letter::ThetaStar }).collect();
                acc.add(&NcPoly::term(w, Coeff::rational(q(c))))
            })
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_is_an_involution(h in arb_nc(4)) {
        prop_assert_eq!(nc_star(&nc_star(&h)), h);
    }

    #[test]
    fn star_reverses_products(a in arb_nc(3), b in arb_nc(3)) {
        prop_assert_eq!(nc_star(&a.mul(&b)), nc_star(&b).mul(&nc_star(&a)));
    }

    #[test]
    fn display_parse_round_trip(h in arb_nc(4)) {
        let back: NcPoly = h.to_string().parse().unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn quantization_intertwines_star_and_adjoint(h in arb_nc(4)) {
        let direct = quantize_components(&h);
        let starred = quantize_components(&nc_star(&h));
        let minus = Poly::int(-1);
        prop_assert_eq!(&starred[0], &adjoint(&direct[0]));
        prop_assert_eq!(&starred[1], &adjoint(&direct[1]));
        prop_assert_eq!(&starred[2], &adjoint(&direct[2]).scale(&minus));
        prop_assert_eq!(&starred[3], &adjoint(&direct[3]).scale(&minus));
    }

    #[test]
    fn quantization_is_multiplicative(a in arb_even_rational(2), b in arb_even_rational(2)) {
        let qa = quantize(&a).unwrap();
        let qb = quantize(&b).unwrap();
        prop_assert_eq!(quantize(&a.mul(&b)).unwrap(), compose(&qa, &qb));
    }

    #[test]
    fn symmetric_parts_quantize_to_symmetric_operators(h in arb_even_rational(2)) {
        let sym = h.add(&nc_star(&h));
        let op = quantize(&sym).unwrap();
        prop_assert!(is_symmetric(&op));
        prop_assert!(has_semiclassical_form(&op));
        let d = quantize_divergence(&sym).unwrap();
        prop_assert_eq!(raw_from_divergence(&scale_hbar(&d)), op);
    }

    #[test]
    fn weyl_lift_is_star_symmetric(a in 0u32..=4, b in 0u32..=4) {
        let w = weyl_lift(a, b);
        prop_assert_eq!(nc_star(&w), w.clone());
        prop_assert_eq!(w.degree(), (a + b) as usize);
    }

    #[test]
    fn even_weyl_lifts_quantize_symmetrically(ha in 0u32..=2, hb in 0u32..=2) {
        let (a, b) = (2 * ha, 2 * hb);
        let d = quantize_divergence(&weyl_lift(a, b)).unwrap();
        let op = quantize(&weyl_lift(a, b)).unwrap();
        prop_assert!(is_symmetric(&op));
        prop_assert!(has_semiclassical_form(&op));
        prop_assert_eq!(d.half_order(), hb as usize);
        prop_assert_eq!(raw_from_divergence(&scale_hbar(&d)), op);
    }
}
