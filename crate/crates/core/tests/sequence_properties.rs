use std::collections::BTreeSet;

use proptest::prelude::*;
use sfcond::abelian::{dual, quad_group, two_torsion, FinAbGroup, GroupExpr, QuadTarget};
use sfcond::ahss::{apply_d2, assemble_e2, run, AhssConfig, Verdict};
use sfcond::coefficients::{circle_row, spectrum, SpacePart, SpectrumName};
use sfcond::condense::{
    condense_group_algebra, obstruction_verdict, orbit_count, Acting, Level, SkeletalCategory, Statistic,
};
use sfcond::em_cohomology::{EmAlgebra, EmFactor, EmSpace};
use sfcond::selftest::groups_up_to;

fn em(order: u64, degree: u32) -> EmSpace {
    EmSpace::new(vec![EmFactor { order, degree }]).unwrap()
}

#[test]
fn circle_row_closed_forms() {
    for e in groups_up_to(16) {
        let row = circle_row(&e, 2, 4).unwrap();
        let two_torsion_or_cyclic = e.is_cyclic() || e.invariant_factors().iter().all(|&d| d == 2);
        let h2 = row.entry(2).unwrap().value.as_group_expr();
        assert_eq!(h2, Some(GroupExpr::finite(dual(&e))), "{e}");
        if two_torsion_or_cyclic {
            let h4 = row.entry(4).unwrap().value.as_group_expr();
            assert_eq!(h4, Some(GroupExpr::finite(quad_group(&e, QuadTarget::Circle).unwrap())), "{e}");
        }
        let row4 = circle_row(&e, 4, 7).unwrap();
        let h7 = row4.entry(7).unwrap().value.as_group_expr();
        assert_eq!(h7, Some(GroupExpr::finite(dual(&two_torsion(&e)))), "{e}");
        assert!(row4.entries.iter().all(|x| !x.provenance.is_empty()));
        assert!(row4.entry(9).is_err());
    }
}

#[test]
fn odd_groups_reduce_to_circle_row() {
    for order in [3u64, 5, 9] {
        let space = em(order, 2);
        let config = AhssConfig::new(space.clone(), SpacePart::Full, spectrum(SpectrumName::SH), 6);
        let e2 = assemble_e2(config).unwrap();
        let e3 = apply_d2(&e2).unwrap();
        for page in [&e2, &e3] {
            for i in 1..=6 {
                for j in 1..=(6 - i) {
                    assert_eq!(page.label((i, j)), "0", "Z/{order} at ({i},{j})");
                }
            }
        }
        let row = circle_row(&FinAbGroup::cyclic(order), 2, 5).unwrap();
        let circle = row.entry(5).unwrap().value.as_group_expr().unwrap();
        let (_, report) = run(
            AhssConfig::new(space, SpacePart::Full, spectrum(SpectrumName::SW), 5),
            &["5:0,4".parse().unwrap()],
            5,
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Exact { group: circle.to_string() }, "Z/{order}");
    }
}

#[test]
fn twist_only_changes_where_iota_x_is_nonzero() {
    let build = |name| apply_d2(&assemble_e2(AhssConfig::new(em(2, 2), SpacePart::Full, spectrum(name), 7)).unwrap()).unwrap();
    let plain = build(SpectrumName::SW);
    let twisted = build(SpectrumName::SWTwisted);
    let alg = EmAlgebra::new(em(2, 2), 12).unwrap();
    let iota = alg.fundamental_class(0).unwrap();
    for (p, t) in plain.log().iter().zip(twisted.log()) {
        assert_eq!((p.source, p.target), (t.source, t.target));
        if p.rank != t.rank {
            let i = p.source.0;
            let twist_nonzero = (0..alg.basis(i).len()).any(|k| !iota.mul(&alg.basis_class(i, k)).is_zero());
            assert!(twist_nonzero, "ranks differ at {:?} although the twist term vanishes", p.source);
        }
    }
}

#[test]
fn pages_are_monotone() {
    let runs = [
        (em(4, 2), SpectrumName::SW, 7),
        (em(2, 3), SpectrumName::SH, 7),
        (em(2, 2).product(&em(4, 2)), SpectrumName::SWTwisted, 5),
    ];
    for (space, name, t) in runs {
        let e2 = assemble_e2(AhssConfig::new(space, SpacePart::Full, spectrum(name), t)).unwrap();
        let e3 = apply_d2(&e2).unwrap();
        for i in 0..=t {
            for j in 0..=(t - i) {
                if let (Some(a), Some(b)) = (e2.dimension((i, j)), e3.dimension((i, j))) {
                    assert!(b <= a, "({i},{j}) grew");
                }
            }
        }
    }
}

#[test]
fn undetermined_comparison_map_is_an_error() {
    let space = em(2, 2).product(&em(4, 2));
    let e2 = assemble_e2(AhssConfig::new(space, SpacePart::Full, spectrum(SpectrumName::SW), 7)).unwrap();
    assert!(matches!(apply_d2(&e2), Err(sfcond::Error::UnspecifiedMap(_))));
}

#[test]
fn full_gauging_leaves_one_component() {
    for e in groups_up_to(24) {
        let cat = SkeletalCategory::strongly_fusion(e.clone(), Statistic::Bosonic, Level::Braided);
        let all = Acting::parse_subgroup("all", &e).unwrap();
        assert_eq!(condense_group_algebra(&cat, &all, false).unwrap().components(), 1, "{e}");
    }
}

#[test]
fn verdicts_are_deterministic_and_anchored() {
    for name in ["Z/2", "Z/8", "Z/3", "Z/6", "Z/2 x Z/2", "Z/2 x Z/4"] {
        let e: FinAbGroup = name.parse().unwrap();
        for st in [Statistic::Bosonic, Statistic::Fermionic] {
            for level in [Level::Braided, Level::Symmetric] {
                let a = obstruction_verdict(&e, st, level).unwrap();
                let b = obstruction_verdict(&e, st, level).unwrap();
                assert_eq!(a, b);
                assert!(!a.anchor.is_empty());
            }
        }
    }
}

/// Closure of the permutation group generated by `gens`, capped.
fn closure(n: usize, gens: &[Vec<usize>], cap: usize) -> Option<Vec<Vec<usize>>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(q);
            }
        }
    }
    Some(seen.into_iter().collect())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbits_match_burnside(
        (n, gens) in (1usize..=24).prop_flat_map(|n| (Just(n), prop::collection::vec(permutation(n), 1..3)))
    ) {
        if let Some(group) = closure(n, &gens, 20_000) {
            let fixed: usize = group.iter().map(|g| g.iter().enumerate().filter(|(i, &x)| *i == x).count()).sum();
            prop_assert_eq!(fixed % group.len(), 0);
            prop_assert_eq!(orbit_count(n, &gens), fixed / group.len());
        }
    }
}
