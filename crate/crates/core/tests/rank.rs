use pf_core::linalg::{det_berkowitz, BareissSolver, Berkowitz, Laplace, ModularSolver};
use pf_core::rank::*;
use pf_core::registry::kernel_solvers;
use pf_core::{Gq, TruncatedSeries};
use proptest::prelude::*;

const CAP: u32 = 8;

fn u(i: usize) -> TruncatedSeries {
    TruncatedSeries::var(2, CAP, i)
}

/// Polynomial components of degree 1..=2 in `u₁, u₂`.
fn component() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((1u32..=2, 0u32..=2, -2i64..=2), 1..4).prop_map(|ts| {
        let mut f = TruncatedSeries::zero(2, CAP);
        for (d, i, c) in ts {
            let i = i.min(d);
            f.add_term(vec![i, d - i], Gq::int(c));
        }
        f
    })
}

fn morphism() -> impl Strategy<Value = Morphism> {
    prop::collection::vec(component(), 2..=3).prop_map(|cs| Morphism::new(cs).unwrap())
}

/// Rank of a series matrix: largest minor that survives the cap.
fn series_rank(m: &[Vec<TruncatedSeries>]) -> usize {
    let (rows, cols) = (m.len(), m.first().map_or(0, |r| r.len()));
    for r in (1..=rows.min(cols)).rev() {
        for rs in choose(rows, r) {
            for cs in choose(cols, r) {
                let minor: Vec<Vec<TruncatedSeries>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                if !det_berkowitz(&minor).is_zero() {
                    return r;
                }
            }
        }
    }
    0
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| {
            choose(last, k - 1).into_iter().map(move |mut c| {
                c.push(last);
                c
            })
        })
        .collect()
}

/// `(∂K/∂x_i)(φ)` for each relation.
fn differentials(basis: &[TruncatedSeries], phi: &Morphism) -> Vec<Vec<TruncatedSeries>> {
    basis
        .iter()
        .map(|k| (0..phi.source_vars()).map(|i| phi.apply(&k.extend_exact(CAP).derivative(i)).unwrap()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relations_bound_the_rank(phi in morphism()) {
        let basis = kernel_search(&phi, 2, 4, &BareissSolver).unwrap();
        let r = generic_rank(&phi, &Berkowitz);
        prop_assert!(r <= phi.source_vars().min(phi.target_vars()));
        prop_assert!(r + series_rank(&differentials(&basis, &phi)) <= phi.source_vars());
        for k in &basis {
            prop_assert!(relation_holds(k, &phi, CAP).unwrap());
        }
    }

    #[test]
    fn target_transforms_keep_rank_and_relations(phi in morphism(), quadratic in any::<bool>()) {
        let sigma = if quadratic { vec![u(0), u(0).mul(&u(1))] } else { vec![u(0).pow(2), u(1)] };
        let psi = phi.then(&sigma).unwrap();
        prop_assert_eq!(generic_rank(&phi, &Berkowitz), generic_rank(&psi, &Berkowitz));
        prop_assert_eq!(generic_rank(&psi, &Berkowitz), generic_rank(&psi, &Laplace));
        let a = kernel_search(&phi, 2, CAP, &BareissSolver).unwrap();
        let b = kernel_search(&psi, 2, CAP, &BareissSolver).unwrap();
        prop_assert_eq!(a.len(), b.len());
    }

    #[test]
    fn solvers_agree(phi in morphism(), d in 1u32..=3) {
        let solvers = kernel_solvers();
        let a = kernel_search(&phi, d, 6, solvers.get("bareiss").unwrap()).unwrap();
        let b = kernel_search(&phi, d, 6, solvers.get("modular").unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn monomial_map_support(ts in prop::collection::vec((0u32..=4, 0u32..=4, -3i64..=3), 1..6),
                            m in prop::collection::vec(prop::collection::vec(0u32..=2, 2), 2)) {
        prop_assume!(m.iter().all(|r| r.iter().any(|&x| x > 0)));
        prop_assume!(m[0][0] * m[1][1] != m[0][1] * m[1][0]);
        let cap = 20;
        let mut f = TruncatedSeries::zero(2, cap);
        for &(a, b, c) in &ts {
            f.add_term(vec![a, b], Gq::int(c));
        }
        let g = monomial_map(&f, &m).unwrap();
        let image = |e: &[u32]| vec![e[0] * m[0][0] + e[1] * m[1][0], e[0] * m[0][1] + e[1] * m[1][1]];
        let mut want: Vec<(Vec<u32>, Gq)> = f
            .terms()
            .map(|(e, c)| (image(e), c.clone()))
            .filter(|(e, _)| e[0] + e[1] <= cap)
            .collect();
        want.sort_by(|a, b| a.0.cmp(&b.0));
        let mut got: Vec<(Vec<u32>, Gq)> = g.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        got.sort_by(|a, b| a.0.cmp(&b.0));
        prop_assert_eq!(got, want);
    }
}

#[test]
fn gallery_examples() {
    let o = example_osgood(6);
    assert_eq!(o.component(2).coeff(&[1, 2]), Gq::int(1));
    assert_eq!(generic_rank(&o, &Berkowitz), 2);

    let g = example_gabrielov(20, 6).unwrap();
    let h = g.component(3);
    for n in 0..=6u32 {
        if 2 * n + 2 <= 20 {
            assert_eq!(h.coeff(&[n + 1, n + 2]), Gq::int(1), "n = {n}");
        }
    }
    // h is a sum of pieces u^{n+1}·v·(…); each monomial has one u-exponent
    assert!(h.terms().all(|(e, _)| e[1] > e[0]));
    assert_eq!(example_gabrielov(8, 7).unwrap_err(), pf_core::PfError::CapTooSmall(8, 9));
}

#[test]
fn gabrielov_generator_has_factorial_coefficients() {
    let g = example_gabrielov(64, 8).unwrap();
    let basis = kernel_search(&g, 9, 64, &ModularSolver::default()).unwrap();
    assert_eq!(basis.len(), 1);
    let k = &basis[0];
    let lead = k.coeff(&[0, 0, 0, 1]);
    let mut fact = 1i64;
    for n in 0..=8u32 {
        fact *= n as i64 + 1;
        assert_eq!(-k.coeff(&[n, 0, 1, 0]) / lead.clone(), Gq::int(fact), "n = {n}");
    }
    assert!(relation_holds(k, &g, 64).unwrap());
}

#[test]
fn hyperplane_examples() {
    use pf_core::MonicPoly;
    let cap = 6;
    let x = |n: usize, i: usize| TruncatedSeries::var(n, cap, i);
    let zero = TruncatedSeries::zero(2, cap);
    let p = MonicPoly::new(vec![zero.clone(), x(2, 0).pow(2).add(&x(2, 1).pow(2)).neg()]).unwrap();
    let r = hyperplane_restrict(&p, &[Gq::int(0)]).unwrap();
    assert_eq!(r.coeff(2), TruncatedSeries::var(1, cap, 0).pow(2).neg());
    let r = hyperplane_restrict(&p, &[Gq::int(3)]).unwrap();
    assert_eq!(r.coeff(2), TruncatedSeries::var(1, cap, 0).pow(2).scale(&Gq::int(-10)));
    let q = MonicPoly::new(vec![TruncatedSeries::zero(3, cap), x(3, 0).mul(&x(3, 1)).mul(&x(3, 2)).neg()]).unwrap();
    let r = hyperplane_restrict(&q, &[Gq::int(1), Gq::int(1)]).unwrap();
    let (a, b) = (x(2, 0), x(2, 1));
    assert_eq!(r.coeff(2), a.add(&b).mul(&a).mul(&b).neg());
}
