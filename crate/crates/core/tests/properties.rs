use std::cmp::Ordering;

use fpure_core::{parse_poly, GroebnerBasis, Ideal, Monomial, MonomialOrder, Poly, Ring};
use proptest::prelude::*;

const NV: usize = 3;

fn ring(p: u32, order: MonomialOrder) -> Ring {
    Ring::new(p, &["x", "y", "z"], order).unwrap()
}

fn monomial(max: u16) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max, NV).prop_map(|e| Monomial::from_exponents(&e))
}

type Terms = Vec<(Monomial, u32)>;

fn terms(max_exp: u16, max_len: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((monomial(max_exp), 0u32..100), 0..=max_len)
}

fn poly(r: &Ring, t: &Terms) -> Poly {
    Poly::from_terms(r, t.iter().cloned())
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::GrevLex),
        Just(MonomialOrder::Lex),
        (1usize..NV).prop_map(MonomialOrder::Elimination),
    ]
}

fn well_formed(f: &Poly) -> bool {
    let ord = f.ring().order();
    f.terms().iter().all(|(_, c)| *c != 0)
        && f.terms().windows(2).all(|w| ord.cmp(&w[0].0, &w[1].0) == Ordering::Greater)
}

fn ideal(r: &Ring, gens: &[Terms]) -> Ideal {
    Ideal::new(r, gens.iter().map(|t| poly(r, t)).collect())
}

fn gens(max_exp: u16, n: usize) -> impl Strategy<Value = Vec<Terms>> {
    prop::collection::vec(terms(max_exp, 3), 1..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_is_total_antisymmetric_transitive(
        o in order(), a in monomial(4), b in monomial(4), c in monomial(4)
    ) {
        let ab = o.cmp(&a, &b);
        prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
            prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
        }
        // multiplicative
        prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
    }

    #[test]
    fn arithmetic_keeps_terms_sorted_and_nonzero(
        p in prop::sample::select(vec![2u32, 3, 5, 7]), o in order(),
        f in terms(3, 5), g in terms(3, 5)
    ) {
        let r = ring(p, o);
        let (f, g) = (poly(&r, &f), poly(&r, &g));
        for h in [&f + &g, &f - &g, &f * &g, f.clone(), -&f] {
            prop_assert!(well_formed(&h));
        }
        prop_assert!((&(&f + &g) - &g) == f);
    }

    #[test]
    fn frobenius_is_additive_and_a_power(
        pe in prop::sample::select(vec![(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]),
        f in terms(2, 4), g in terms(2, 4)
    ) {
        let (p, e) = pe;
        let r = ring(p, MonomialOrder::GrevLex);
        let (f, g) = (poly(&r, &f), poly(&r, &g));
        let fq = f.frobenius_power(e).unwrap();
        prop_assert!(well_formed(&fq));
        prop_assert_eq!(&(&f + &g).frobenius_power(e).unwrap(), &(&fq + &g.frobenius_power(e).unwrap()));
        prop_assert_eq!(&fq, &f.pow(p.pow(e)));
    }

    #[test]
    fn display_parses_back(p in prop::sample::select(vec![2u32, 3, 11]), o in order(), f in terms(4, 6)) {
        let r = ring(p, o);
        let f = poly(&r, &f);
        prop_assert_eq!(parse_poly(&r, &f.to_string()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reduced_basis_ignores_generator_order_and_scaling(
        p in prop::sample::select(vec![2u32, 3, 5]), o in order(),
        gs in gens(2, 3), shift in 0usize..3, scale in 1u32..5
    ) {
        let r = ring(p, o);
        let fs: Vec<Poly> = gs.iter().map(|t| poly(&r, t)).collect();
        let mut moved: Vec<Poly> = fs.iter().map(|f| f.scale(scale % p + (scale % p == 0) as u32)).collect();
        let k = shift % moved.len();
        moved.rotate_left(k);
        let a = Ideal::new(&r, fs).reduced_gens().unwrap();
        let b = Ideal::new(&r, moved).reduced_gens().unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn normal_form_is_linear_and_kills_the_ideal(
        p in prop::sample::select(vec![2u32, 3, 5]), o in order(),
        gs in gens(2, 3), f in terms(3, 4), g in terms(3, 4), h in terms(1, 2), c in 0u32..5
    ) {
        let r = ring(p, o);
        let gb = GroebnerBasis::compute(&r, &gs.iter().map(|t| poly(&r, t)).collect::<Vec<_>>()).unwrap();
        let (f, g, h) = (poly(&r, &f), poly(&r, &g), poly(&r, &h));
        let lhs = gb.normal_form(&(&f + &g.scale(c % p)));
        let rhs = &gb.normal_form(&f) + &gb.normal_form(&g).scale(c % p);
        prop_assert_eq!(lhs, rhs);
        for e in gb.elements() {
            prop_assert!(gb.contains(&(e * &h)));
        }
        let nf = gb.normal_form(&f);
        prop_assert!(gb.contains(&(&f - &nf)));
        // no term of a normal form is divisible by a leading monomial
        for (m, _) in nf.terms() {
            prop_assert!(gb.leading_monomials().all(|l| !l.divides(m)));
        }
    }

    #[test]
    fn dimension_does_not_depend_on_the_order(p in prop::sample::select(vec![2u32, 3]), gs in gens(2, 3)) {
        let dims: Vec<_> = [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::Elimination(1)]
            .into_iter()
            .map(|o| {
                let r = ring(p, o);
                ideal(&r, &gs).dimension().unwrap()
            })
            .collect();
        prop_assert!(dims.windows(2).all(|w| w[0] == w[1]), "{:?}", dims);
    }

    #[test]
    fn colon_brackets_commute(p in prop::sample::select(vec![2u32, 3]), a in gens(2, 2), b in gens(2, 2)) {
        let r = ring(p, MonomialOrder::GrevLex);
        let (i, j) = (ideal(&r, &a), ideal(&r, &b));
        let left = i.quotient(&j).unwrap().bracket_power(1).unwrap();
        let right = i.bracket_power(1).unwrap().quotient(&j.bracket_power(1).unwrap()).unwrap();
        prop_assert!(left.equals(&right).unwrap());
        let sum = i.sum(&j).bracket_power(1).unwrap();
        let sum2 = i.bracket_power(1).unwrap().sum(&j.bracket_power(1).unwrap());
        prop_assert!(sum.equals(&sum2).unwrap());
    }

    #[test]
    fn colon_sandwich(p in prop::sample::select(vec![2u32, 3, 5]), a in gens(2, 3), b in gens(2, 2)) {
        let r = ring(p, MonomialOrder::GrevLex);
        let (i, j) = (ideal(&r, &a), ideal(&r, &b));
        let c = i.quotient(&j).unwrap();
        prop_assert!(c.contains(&i).unwrap());
        prop_assert!(i.contains(&c.product(&j)).unwrap());
    }

    #[test]
    fn saturation_stabilizes(
        p in prop::sample::select(vec![2u32, 3]), a in gens(2, 3), lead in monomial(1), tail in terms(1, 1)
    ) {
        let r = ring(p, MonomialOrder::GrevLex);
        let i = ideal(&r, &a);
        let g = &Poly::monomial(&r, lead, 1) + &poly(&r, &tail);
        prop_assume!(!g.is_zero());
        let (s, k) = i.saturation(&g).unwrap();
        prop_assert!(s.contains(&i).unwrap());
        prop_assert!(s.quotient_poly(&g).unwrap().equals(&s).unwrap());
        if k > 0 {
            prop_assert!(i.quotient_poly(&g.pow(k)).unwrap().equals(&s).unwrap());
        } else {
            prop_assert!(s.equals(&i).unwrap());
        }
        prop_assert!(s.equals(&i.saturation_aux(&g).unwrap()).unwrap());
    }

    #[test]
    fn intersection_is_the_meet(p in prop::sample::select(vec![2u32, 3, 5]), a in gens(2, 2), b in gens(2, 2)) {
        let r = ring(p, MonomialOrder::GrevLex);
        let (i, j) = (ideal(&r, &a), ideal(&r, &b));
        let m = i.intersect(&j).unwrap();
        prop_assert!(i.contains(&m).unwrap());
        prop_assert!(j.contains(&m).unwrap());
        prop_assert!(m.contains(&i.product(&j)).unwrap());
        prop_assert!(m.equals(&j.intersect(&i).unwrap()).unwrap());
    }
}
