//! Property tests for the exterior algebra and the expression language.

use formlab::exterior::{wedge_monomials, Form, GaussInt, Monomial, Sector};
use formlab::formexpr::{format_form, parse_form};
use formlab::scalar::Scalar;
use proptest::prelude::*;

fn arb_sector() -> impl Strategy<Value = Sector> {
    (-1i64..=1, -1i64..=1).prop_map(|(a, b)| Sector::new(GaussInt::new(a, b), GaussInt::new(-a, b)))
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    (arb_sector(), 0u16..8, 0u16..8).prop_map(|(s, h, a)| Monomial::new(s, h, a))
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| Scalar::from_gauss(a, b, c, d))
}

fn arb_form() -> impl Strategy<Value = Form> {
    proptest::collection::vec((arb_monomial(), arb_scalar()), 0..5).prop_map(|terms| {
        let mut f = Form::zero();
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    })
}

proptest! {
    #[test]
    fn parse_format_round_trip(f in arb_form()) {
        let text = format_form(&f);
        let back = parse_form(&text, 3).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn wedge_is_associative(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
        let (fa, fb, fc) = (
            Form::from_monomial(a, Scalar::one()),
            Form::from_monomial(b, Scalar::one()),
            Form::from_monomial(c, Scalar::one()),
        );
        prop_assert_eq!(fa.wedge(&fb).wedge(&fc), fa.wedge(&fb.wedge(&fc)));
    }

    #[test]
    fn conjugation_is_an_involution(f in arb_form()) {
        prop_assert_eq!(f.conjugate().conjugate(), f);
    }

    #[test]
    fn conjugation_respects_wedge(f in arb_form(), g in arb_form()) {
        prop_assert_eq!(
            f.wedge(&g).conjugate(),
            f.conjugate().wedge(&g.conjugate())
        );
    }

    #[test]
    fn wedge_adds_sectors(a in arb_monomial(), b in arb_monomial()) {
        if let Some((m, _)) = wedge_monomials(&a, &b) {
            prop_assert_eq!(m.sector, a.sector.add(b.sector));
        }
    }

    #[test]
    fn scaling_distributes(f in arb_form(), g in arb_form(), c in arb_scalar()) {
        prop_assert_eq!(
            f.add(&g).scale(&c),
            f.scale(&c).add(&g.scale(&c))
        );
    }
}
