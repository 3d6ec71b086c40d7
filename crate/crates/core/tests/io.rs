use pf_core::io::*;
use pf_core::rank::Morphism;
use pf_core::{Gq, HPoly, MonicPoly, TruncatedSeries};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Gq> {
    (-50i64..=50, 1i64..=9, -5i64..=5).prop_map(|(a, b, c)| Gq::frac(a, b) + Gq::gauss(0, c))
}

fn series(n: usize, cap: u32, lo: u32) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((prop::collection::vec(0u32..=4, n), coeff()), 0..6).prop_map(move |ts| {
        let mut f = TruncatedSeries::zero(n, cap);
        for (e, c) in ts {
            if e.iter().sum::<u32>() >= lo {
                f.add_term(e, c);
            }
        }
        f
    })
}

fn reparse(doc: &serde_json::Value) -> Input {
    parse_input(&render(doc)).unwrap()
}

proptest! {
    #[test]
    fn series_round_trip(f in series(3, 9, 0)) {
        match reparse(&series_doc(&f)) {
            Input::Series(j) => prop_assert_eq!(series_from(&j).unwrap(), f),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn monic_round_trip(cs in prop::collection::vec(series(2, 7, 0), 1..4)) {
        let p = MonicPoly::new(cs).unwrap();
        match reparse(&monic_doc(&p)) {
            Input::Monic(j) => prop_assert_eq!(monic_from(&j).unwrap(), p),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn morphism_round_trip(cs in prop::collection::vec(series(2, 8, 1), 1..4)) {
        let phi = Morphism::new(cs).unwrap();
        match reparse(&morphism_doc(&phi)) {
            Input::Morphism(j) => prop_assert_eq!(morphism_from(&j).unwrap(), phi),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn form_pair_round_trip(a in prop::collection::vec(coeff(), 3), b in prop::collection::vec(coeff(), 2)) {
        let h = HPoly::from_terms(2, 2, a.into_iter().enumerate().map(|(i, c)| (vec![i as u32, 2 - i as u32], c))).unwrap();
        let g = HPoly::from_terms(2, 1, b.into_iter().enumerate().map(|(i, c)| (vec![i as u32, 1 - i as u32], c))).unwrap();
        match reparse(&form_pair_doc(&h, &g, Some("1/3"))) {
            Input::FormPair { h: hj, b: bj, rho } => {
                prop_assert_eq!(hpoly_from(&hj).unwrap(), h);
                prop_assert_eq!(hpoly_from(&bj).unwrap(), g);
                prop_assert_eq!(rho.as_deref(), Some("1/3"));
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn rendering_is_deterministic(f in series(2, 6, 0)) {
        prop_assert_eq!(render(&series_doc(&f)), render(&series_doc(&f)));
    }
}

#[test]
fn hand_written_documents() {
    let text = r#"{"schema": "pf-1", "type": "monic", "nvars": 2, "cap": 6,
                   "coeffs": [[], [{"exp": [1, 1], "c": -1}]]}"#;
    let Input::Monic(j) = parse_input(text).unwrap() else { panic!() };
    let p = monic_from(&j).unwrap();
    assert_eq!(p.degree(), 2);
    assert_eq!(p.coeff(2).coeff(&[1, 1]), Gq::int(-1));

    let text = r#"{"schema": "pf-1", "type": "series", "nvars": 1, "cap": 3,
                   "terms": [{"exp": [1], "c": ["1/2", "-3"]}]}"#;
    let Input::Series(j) = parse_input(text).unwrap() else { panic!() };
    assert_eq!(series_from(&j).unwrap().coeff(&[1]), Gq::frac(1, 2) - Gq::gauss(0, 3));

    let bad_exp = r#"{"schema": "pf-1", "type": "series", "nvars": 2, "cap": 3, "terms": [{"exp": [1], "c": 1}]}"#;
    let Input::Series(j) = parse_input(bad_exp).unwrap() else { panic!() };
    assert!(series_from(&j).is_err());
    assert!(parse_input(r#"{"schema": "pf-1", "type": "tensor"}"#).is_err());
    assert!(parse_input(r#"{"type": "series"}"#).is_err());
    let e = parse_input("{\"schema\": \"pf-1\",\n\"type\": [").unwrap_err();
    assert!(e.to_string().contains("line 2"), "{e}");
}
