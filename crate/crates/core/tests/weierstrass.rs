use pf_core::weierstrass::{is_monomial_unit, resultant, tschirnhaus, w_division, w_preparation};
use pf_core::{Gq, MonicPoly, TruncatedSeries};
use proptest::prelude::*;

fn series(cap: u32, lo: u32) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((lo..=cap, 0u32..=8, -4i64..=4, -2i64..=2), 0..6).prop_map(move |ts| {
        let mut f = TruncatedSeries::zero(2, cap);
        for (d, i, re, im) in ts {
            let i = i.min(d);
            f.add_term(vec![i, d - i], Gq::gauss(re, im));
        }
        f
    })
}

/// `x₂^d·(unit) + (terms in x₁)`, regular of order `d` in `x₂`.
fn regular(cap: u32) -> impl Strategy<Value = TruncatedSeries> {
    (1u32..=3, series(cap, 1), series(cap, 1)).prop_map(move |(d, u, rest)| {
        let y = TruncatedSeries::var(2, cap, 1).pow(d);
        let x = TruncatedSeries::var(2, cap, 0);
        y.mul(&TruncatedSeries::one(2, cap).add(&u)).add(&rest.mul(&x))
    })
}

fn roots(k: usize) -> impl Strategy<Value = Vec<TruncatedSeries>> {
    prop::collection::vec(series(6, 1), k)
}

/// `Π (ξ_i − η_j)`.
fn resultant_by_roots(a: &[TruncatedSeries], b: &[TruncatedSeries]) -> TruncatedSeries {
    let mut r = TruncatedSeries::one(2, 6);
    for x in a {
        for y in b {
            r = r.mul(&x.sub(y));
        }
    }
    r
}

proptest! {
    #[test]
    fn division_reconstructs(f in series(8, 0), g in regular(8)) {
        let d = w_division(&f, &g).unwrap();
        let c = d.q.cap().min(d.r.cap());
        prop_assert_eq!(d.q.mul(&g).add(&d.r).truncate(c), f.truncate(c));
        for (b, rb) in d.r_coeffs.iter().enumerate() {
            prop_assert!(b < d.d as usize);
            prop_assert_eq!(rb.nvars(), 1);
        }
    }

    #[test]
    fn preparation_reconstructs(g in regular(8)) {
        let w = w_preparation(&g).unwrap();
        let c = w.unit.cap().min(w.poly.cap());
        let p = w.poly.to_series();
        let p = p.truncate(c);
        prop_assert_eq!(w.unit.truncate(c).mul(&p), g.truncate(c));
    }

    #[test]
    fn discriminant_of_product(a in roots(2), b in roots(1)) {
        let p = MonicPoly::from_roots(&a).unwrap();
        let q = MonicPoly::from_roots(&b).unwrap();
        let res = resultant_by_roots(&a, &b);
        prop_assert_eq!(resultant(&p, &q), res.clone());
        let lhs = p.mul(&q).discriminant();
        prop_assert_eq!(lhs, p.discriminant().mul(&q.discriminant()).mul(&res.pow(2)));
    }

    #[test]
    fn shift_keeps_discriminant(a in roots(3)) {
        let p = MonicPoly::from_roots(&a).unwrap();
        let (q, _) = tschirnhaus(&p);
        prop_assert_eq!(q.discriminant(), p.discriminant());
    }

    #[test]
    fn monomial_unit_splits(u in series(8, 1), i in 0u32..3, j in 0u32..3) {
        let u = u.add(&TruncatedSeries::one(2, 8));
        let f = u.mul_monomial(&[i, j], &Gq::int(1));
        let (a, v) = is_monomial_unit(&f).unwrap().unwrap();
        prop_assert_eq!(&a, &vec![i, j]);
        prop_assert!(!num_traits::Zero::is_zero(&v.constant_term()));
        prop_assert_eq!(v.mul_monomial(&a, &Gq::int(1)).truncate(f.cap()), f);
    }
}
