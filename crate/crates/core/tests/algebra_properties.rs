use std::collections::BTreeSet;

use proptest::prelude::*;
use sfcond::abelian::{
    dual, ext_group, hom_group, quad_group, smith_normal_form, tensor_group, tor_group, FinAbGroup, QuadTarget,
};
use sfcond::em_cohomology::{poincare_series, serre_generators, EmAlgebra, EmFactor, EmSpace};
use sfcond::steenrod::{
    adem_normalize, excess, free_a1_module, margolis_homology, Margolis, SteenrodMonomial, SteenrodWord,
};
use sfcond::coefficients::{part_basis, SpacePart};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn small_group() -> impl Strategy<Value = FinAbGroup> {
    prop::collection::vec(1u64..9, 0..3).prop_map(|v| FinAbGroup::from_cyclic_orders(v.into_iter().filter(|&d| d > 1)))
}

/// Order of `x` in `⊕ Z/f_i`.
fn order_of(f: &[u64], x: &[u64]) -> u64 {
    f.iter().zip(x).fold(1, |acc, (&d, &xi)| lcm(acc, d / gcd(d, xi)))
}

fn all_elements(f: &[u64]) -> Vec<Vec<u64>> {
    f.iter().fold(vec![vec![]], |acc, &d| {
        acc.into_iter().flat_map(|v| (0..d).map(move |x| [v.clone(), vec![x]].concat())).collect()
    })
}

/// Homomorphisms `A → B` as tuples of generator images, with pointwise orders.
fn hom_by_images(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    let fb = b.invariant_factors();
    let elems = all_elements(fb);
    let mut tuples: Vec<u64> = vec![1];
    for &d in a.invariant_factors() {
        let allowed: Vec<u64> = elems.iter().map(|x| order_of(fb, x)).filter(|o| d % o == 0).collect();
        tuples = tuples.iter().flat_map(|&t| allowed.iter().map(move |&o| lcm(t, o))).collect();
    }
    FinAbGroup::from_element_orders(&tuples)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariant_factor_chain(orders in prop::collection::vec(2u64..30, 0..4)) {
        let g = FinAbGroup::from_cyclic_orders(orders.iter().copied());
        let f = g.invariant_factors();
        prop_assert!(f.iter().all(|&d| d >= 2));
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(g.order(), orders.iter().product::<u64>());
    }

    #[test]
    fn snf_chain(m in prop::collection::vec(prop::collection::vec(-12i64..12, 3), 1..4)) {
        if let Ok(g) = smith_normal_form(&m) {
            let f = g.invariant_factors();
            prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        }
    }

    #[test]
    fn duality_and_symmetry(a in small_group(), b in small_group()) {
        prop_assert_eq!(dual(&dual(&a)), a.clone());
        prop_assert_eq!(tensor_group(&a, &b), tensor_group(&b, &a));
        prop_assert_eq!(tor_group(&a, &b), tor_group(&b, &a));
        prop_assert_eq!(hom_by_images(&a, &b), hom_group(&a, &b));
        // |Ext(A,B)| = |hom(A,B)| for finite groups
        prop_assert_eq!(ext_group(&a, &b).order(), hom_group(&a, &b).order());
    }

    #[test]
    fn adem_idempotent(a in 0u32..9, b in 0u32..9, c in 0u32..9) {
        let w = SteenrodWord::monomial(SteenrodMonomial::new(vec![a, b, c], None));
        let n = adem_normalize(&w);
        prop_assert_eq!(adem_normalize(&n), n.clone());
        prop_assert!(n.is_admissible());
        if !n.is_zero() {
            prop_assert_eq!(n.degree().unwrap(), Some(a + b + c));
        }
    }

    #[test]
    fn monomial_invariants(idx in prop::collection::vec(1u32..12, 0..4)) {
        let m = SteenrodMonomial::new(idx.clone(), None);
        prop_assert_eq!(m.degree(), idx.iter().sum::<u32>());
        let admissible = idx.windows(2).all(|w| w[0] >= 2 * w[1]);
        prop_assert_eq!(m.is_admissible(), admissible);
    }
}

/// Every function `q: E → (1/M)Z/Z` with `q(-x) = q(x)` and bilinear
/// polarization, grouped by pointwise orders. Only for tiny `E`.
fn quad_by_functions(e: &FinAbGroup, m: u64) -> FinAbGroup {
    let f = e.invariant_factors();
    let elems = all_elements(f);
    let n = elems.len();
    let index = |x: &[u64]| elems.iter().position(|y| y == x).unwrap();
    let add = |x: &[u64], y: &[u64]| -> Vec<u64> { x.iter().zip(y).zip(f).map(|((a, b), d)| (a + b) % d).collect() };
    let neg = |x: &[u64]| -> Vec<u64> { x.iter().zip(f).map(|(a, d)| (d - a) % d).collect() };
    let mut orders = Vec::new();
    for code in 0..m.pow(n as u32) {
        let q: Vec<u64> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
        let ok = q[index(&vec![0; f.len()])] == 0
            && elems.iter().all(|x| q[index(&neg(x))] == q[index(x)])
            && elems.iter().all(|x| {
                elems.iter().all(|y| {
                    elems.iter().all(|z| {
                        let b = |u: &[u64], v: &[u64]| (m + q[index(&add(u, v))] + 2 * m - q[index(u)] - q[index(v)]) % m;
                        b(&add(x, y), z) == (b(x, z) + b(y, z)) % m
                    })
                })
            });
        if ok {
            orders.push(q.iter().fold(1, |acc, &v| lcm(acc, m / gcd(m, v))));
        }
    }
    FinAbGroup::from_element_orders(&orders)
}

#[test]
fn quad_against_all_functions() {
    for name in ["Z/2", "Z/3", "Z/4", "Z/2 x Z/2"] {
        let e: FinAbGroup = name.parse().unwrap();
        let m = 2 * e.exponent();
        assert_eq!(quad_by_functions(&e, m), quad_group(&e, QuadTarget::Circle).unwrap(), "{name} into C*");
        assert_eq!(quad_by_functions(&e, 2), quad_group(&e, QuadTarget::Z2).unwrap(), "{name} into Z/2");
    }
}

#[test]
fn margolis_squares_vanish() {
    let free = free_a1_module().unwrap();
    for q in [Margolis::Q0, Margolis::Q1] {
        let w: SteenrodWord = match q {
            Margolis::Q0 => "Sq1".parse().unwrap(),
            Margolis::Q1 => "Sq1 Sq2 + Sq2 Sq1".parse().unwrap(),
        };
        assert!(adem_normalize(&w.compose(&w).unwrap()).is_zero());
        assert!(margolis_homology(&free, q).unwrap().vanishes());
    }
}

#[test]
fn serre_generators_are_distinct_and_unstable() {
    for (order, n) in [(2, 2), (2, 3), (4, 2), (4, 4), (8, 3), (2, 5)] {
        let gens = serre_generators(order, n, 14).unwrap();
        let mut seen = BTreeSet::new();
        for (op, _) in &gens {
            assert!(op.is_admissible(), "{op}");
            assert!(excess(op).unwrap() < n as i64, "{op} on degree {n}");
            assert!(seen.insert(op.clone()), "duplicate {op}");
        }
    }
}

#[test]
fn instability_on_basis() {
    let space = EmSpace::new(vec![EmFactor { order: 2, degree: 2 }, EmFactor { order: 4, degree: 3 }]).unwrap();
    let alg = EmAlgebra::new(space, 20).unwrap();
    for d in 1..=10 {
        for i in 0..alg.basis(d).len() {
            let x = alg.basis_class(d, i);
            assert_eq!(alg.sq(d, &x).unwrap(), x.mul(&x), "degree {d} class {}", alg.format_class(&x));
        }
    }
}

#[test]
fn sq1_identity_in_degree_five() {
    let alg = EmAlgebra::new(EmSpace::new(vec![EmFactor { order: 2, degree: 2 }]).unwrap(), 12).unwrap();
    let x = alg.parse_class("i2*Sq1(i2) + Sq2 Sq1(i2)").unwrap();
    assert!(alg.sq(1, &x).unwrap().is_zero());
}

#[test]
fn product_dimension_identity() {
    let x = EmSpace::new(vec![EmFactor { order: 2, degree: 2 }]).unwrap();
    let y = EmSpace::new(vec![EmFactor { order: 4, degree: 3 }]).unwrap();
    let cap = 12;
    let alg = EmAlgebra::new(x.product(&y), cap).unwrap();
    let px = poincare_series(&x, cap).unwrap();
    let py = poincare_series(&y, cap).unwrap();
    for d in 0..=cap {
        let full = alg.basis(d).len();
        let smash = part_basis(&alg, SpacePart::Smash { left: 1 }, d).unwrap().len();
        let pt = usize::from(d == 0);
        let rx = if d == 0 { 0 } else { px[d as usize] };
        let ry = if d == 0 { 0 } else { py[d as usize] };
        assert_eq!(full, pt + rx + ry + smash, "degree {d}");
    }
}
