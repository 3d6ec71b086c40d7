use pf_core::hfrac::{FracSeries, HFrac};
use pf_core::homogeneous::{gamma_adjoin, gamma_conjugate, primitive_element, HomElem, PhElem, VGammaElem};
use pf_core::tower::Val;
use pf_core::weierstrass::resultant;
use pf_core::{Gq, HPoly, MonicPoly, PfError, TruncatedSeries};
use proptest::prelude::*;

fn x(i: usize) -> HPoly {
    HPoly::var(2, i)
}

fn form(d: u32) -> impl Strategy<Value = HPoly> {
    prop::collection::vec((-3i64..=3, -1i64..=1), d as usize + 1).prop_filter_map("zero form", move |cs| {
        let mut f = HPoly::zero(2, d);
        for (i, (re, im)) in cs.into_iter().enumerate() {
            f.add_term(vec![i as u32, d - i as u32], Gq::gauss(re, im));
        }
        (!f.is_zero()).then_some(f)
    })
}

fn poly_coeff() -> impl Strategy<Value = FracSeries> {
    prop::collection::vec((0u32..4, 0u32..4, -3i64..=3), 0..4).prop_map(|ts| {
        let mut s = FracSeries::zero();
        for (a, b, c) in ts {
            s.add_comp(HFrac::from_hpoly(HPoly::monomial(vec![a, b], Gq::int(c))));
        }
        s
    })
}

fn element(g: HomElem) -> impl Strategy<Value = VGammaElem> {
    let d = g.degree();
    prop::collection::vec(poly_coeff(), d).prop_map(move |cs| VGammaElem::new(g.clone(), cs, Val::from_integer(60)))
}

fn quartic() -> HomElem {
    HomElem::pure(4, x(0).pow(2).add(&x(1).pow(2)))
}

proptest! {
    #[test]
    fn ph_degree_rule(h in form(2), alpha in 0u32..3, beta in 0u32..3, k0 in 0i64..3, len in 1usize..4, bump in 0usize..4) {
        let terms: Vec<HPoly> = (0..len)
            .map(|i| {
                let k = k0 + i as i64;
                let deg = k as u32 + (alpha * k as u32 + beta) * 2;
                HPoly::monomial(vec![deg, 0], Gq::int(1))
            })
            .collect();
        prop_assert!(PhElem::new(h.clone(), alpha, beta, k0, terms.clone()).is_ok());
        if bump < len {
            let mut bad = terms;
            bad[bump] = bad[bump].mul(&x(1));
            prop_assert!(PhElem::new(h, alpha, beta, k0, bad).is_err());
        }
    }

    #[test]
    fn valuation_is_multiplicative(a in element(HomElem::pure(2, x(0).mul(&x(1)))), b in element(HomElem::pure(2, x(0).mul(&x(1))))) {
        if let (Some(u), Some(v)) = (a.valuation(), b.valuation()) {
            prop_assert_eq!(a.mul(&b).valuation(), Some(u + v));
        }
    }

    #[test]
    fn valuation_is_multiplicative_quartic(a in element(quartic()), b in element(quartic())) {
        if let (Some(u), Some(v)) = (a.valuation(), b.valuation()) {
            prop_assert_eq!(a.mul(&b).valuation(), Some(u + v));
        }
    }

    #[test]
    fn conjugation_is_a_ring_action(a in element(quartic()), b in element(quartic()), j in 0u32..4) {
        let lhs = gamma_conjugate(&a.mul(&b), j).unwrap();
        let rhs = gamma_conjugate(&a, j).unwrap().mul(&gamma_conjugate(&b, j).unwrap());
        prop_assert!(lhs.agrees(&rhs));
        let back = gamma_conjugate(&gamma_conjugate(&a, j).unwrap(), 4 - j).unwrap();
        prop_assert!(back.agrees(&a));
    }

    #[test]
    fn eliminated_sum_is_homogeneous(h1 in form(3), h2 in form(3)) {
        let n = 3;
        let cap = 10;
        let lift = |h: &HPoly| {
            let mut s = TruncatedSeries::zero(n, cap);
            for (e, c) in h.terms() {
                s.add_term(vec![e[0], e[1], 0], c.clone());
            }
            s
        };
        let z = TruncatedSeries::var(n, cap, 2);
        let p = MonicPoly::new(vec![TruncatedSeries::zero(n, cap), lift(&h1).neg()]).unwrap();
        let q = MonicPoly::new(vec![z.scale(&Gq::int(-2)), z.pow(2).sub(&lift(&h2))]).unwrap();
        let r = resultant(&p, &q);
        let mut asc: Vec<Vec<(Vec<u32>, Gq)>> = vec![Vec::new(); 5];
        for (e, c) in r.terms() {
            asc[e[2] as usize].push((vec![e[0], e[1]], c.clone()));
        }
        let mut polys = Vec::new();
        for (k, ts) in asc.into_iter().enumerate() {
            let deg = (4 - k as u32) * 3 / 2;
            let p = HPoly::from_terms(2, if ts.is_empty() { 0 } else { deg }, ts);
            prop_assert!(p.is_ok(), "coefficient of z^{} is not homogeneous of degree {}", k, deg);
            polys.push(p.unwrap());
        }
        let g = gamma_adjoin(&polys);
        if let Ok(g) = g {
            prop_assert_eq!(g.omega(), Val::new(3, 2));
        } else {
            prop_assert_eq!(g.unwrap_err(), PfError::InvalidInput("Γ(x, 0) vanishes".into()));
        }
    }
}

#[test]
fn primitive_degrees() {
    let one = HPoly::one(2);
    // hand-derived field degrees over Q(i)(x)
    let cases = [
        (HomElem::pure(2, x(0)), HomElem::pure(2, x(1)), 4),
        (HomElem::pure(2, x(0)), HomElem::pure(2, x(0).scale(&Gq::int(4))), 2),
        (HomElem::pure(2, x(0).mul(&x(1))), HomElem::pure(2, x(0)), 4),
        (HomElem::pure(2, x(0)), HomElem::pure(2, x(0).neg()), 2),
        (HomElem::pure(2, x(0).pow(2)), HomElem::pure(2, x(1)), 2),
        (HomElem::pure(2, x(0).add(&x(1))), HomElem::pure(2, x(0).add(&x(1)).mul(&x(0).pow(2))), 2),
        (HomElem::pure(4, x(0)), HomElem::pure(2, x(0)), 4),
        (HomElem::pure(4, x(0)), HomElem::pure(2, x(1)), 8),
        (HomElem::pure(1, x(0)), HomElem::pure(1, one), 1),
    ];
    for (i, (a, b, want)) in cases.iter().enumerate() {
        let (g, ea, eb) = primitive_element(a, b, 5).unwrap();
        assert_eq!(g.degree(), *want, "case {i}");
        let (ka, ha) = a.radicand().unwrap();
        let (kb, hb) = b.radicand().unwrap();
        let pa = (1..ka).fold(ea.clone(), |acc, _| acc.mul(&ea));
        let pb = (1..kb).fold(eb.clone(), |acc, _| acc.mul(&eb));
        assert!(pa.is_base() && pa.coeffs()[0] == FracSeries::single(HFrac::from_hpoly(ha)), "case {i}");
        assert!(pb.is_base() && pb.coeffs()[0] == FracSeries::single(HFrac::from_hpoly(hb)), "case {i}");
    }
}
