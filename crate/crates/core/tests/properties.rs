mod common;

use std::collections::HashSet;

use num::Zero;
use pfvs_core::embed::{
    digirth, euler_phi_total, is_acyclic, parse_pdg, serialize_pdg, topological_order, Girth,
    PlanarDigraph,
};
use pfvs_core::frac::{int, Frac};
use pfvs_core::instances::{generate, Family, GeneratorSpec};
use pfvs_core::machinery::{
    check_lemma1, check_lemma2, is_non_crossing, max_dicycle_packing, uncross, PackingLimits,
};
use pfvs_core::solvers::{
    cover_arcs_greedy, fractional_tau_star, min_feedback_arc_set, min_feedback_vertex_set,
    min_vertex_cover_of_arcs, SolverLimits,
};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::Grid),
        Just(Family::CylinderGrid),
        Just(Family::StackedCycles),
        Just(Family::RandomPlanarFiltered),
    ]
}

fn spec() -> impl Strategy<Value = GeneratorSpec> {
    (family(), 6usize..=16, 3usize..=7, any::<u64>()).prop_map(|(family, n, g, seed)| {
        GeneratorSpec {
            family,
            n_target: n,
            g_target: g,
            seed,
        }
    })
}

fn instance() -> impl Strategy<Value = PlanarDigraph> {
    spec().prop_filter_map("infeasible spec", |s| generate(&s).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn face_degrees_and_euler_identity(g in instance()) {
        let total: usize = g.faces().iter().map(|f| f.degree).sum();
        prop_assert_eq!(total, 2 * g.m());
        let phi: i64 = g.faces().iter().map(|f| 3 * f.degree as i64 - 6).sum();
        let c = g.components().len() as i64;
        prop_assert_eq!(phi, 6 * g.n() as i64 - 12 * c);
        if g.is_connected() {
            prop_assert_eq!(euler_phi_total(&g).unwrap(), 6 * g.n() as i64 - 12);
        }
    }

    #[test]
    fn pdg_round_trips(g in instance()) {
        let text = serialize_pdg(&g);
        let back = parse_pdg(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_pdg(&back), text);
    }

    #[test]
    fn generators_are_reproducible_and_meet_their_digirth(s in spec()) {
        if let Ok(g) = generate(&s) {
            prop_assert_eq!(serialize_pdg(&g), serialize_pdg(&generate(&s).unwrap()));
            let actual = digirth(&g);
            prop_assert_eq!(g.declared_girth(), actual);
            match actual {
                Girth::Finite(x) => prop_assert!(x >= s.g_target),
                Girth::Infinite => prop_assert!(is_acyclic(&g)),
            }
        }
    }

    #[test]
    fn uncrossing_keeps_cardinality(g in instance()) {
        if let Ok(p) = max_dicycle_packing(&g, PackingLimits::default()) {
            let u = uncross(&g, &p).unwrap();
            prop_assert_eq!(u.len(), p.len());
            prop_assert!(is_non_crossing(&g, &u.cycles));
            let arcs = |c: &pfvs_core::machinery::CycleCollection| {
                let mut v: Vec<usize> = c.cycles.iter().flat_map(|x| x.arcs().to_vec()).collect();
                v.sort_unstable();
                v
            };
            prop_assert_eq!(arcs(&u), arcs(&p));
        }
    }

    #[test]
    fn solver_values_are_consistent(g in instance()) {
        let limits = SolverLimits::default();
        let fvs = min_feedback_vertex_set(&g, limits).unwrap();
        let mut alive = vec![true; g.n()];
        for &v in &fvs.vertices {
            alive[v] = false;
        }
        prop_assert!(topological_order(&g, &alive, &vec![true; g.m()]).is_some());
        prop_assert!(fvs.size <= g.n());

        let fas = min_feedback_arc_set(&g, limits).unwrap();
        let removed: HashSet<usize> = fas.arcs.iter().copied().collect();
        prop_assert!(is_acyclic(&g.without_arcs(&removed).unwrap()));
        if let Some(nu) = fas.packing {
            prop_assert_eq!(fas.size, nu);
        }
        prop_assert!(fvs.size <= fas.size);

        let star = fractional_tau_star(&g);
        prop_assert!(star.certified());
        prop_assert!(star.objective <= int(fvs.size as i64));
        if let Girth::Finite(x) = digirth(&g) {
            prop_assert!(star.objective <= Frac::new((g.n() as i64).into(), (x as i64).into()));
        } else {
            prop_assert!(star.objective.is_zero());
        }
    }

    #[test]
    fn greedy_cover_respects_its_bound(g in instance(), bits in any::<u64>()) {
        let a: Vec<usize> = (0..g.m()).filter(|&i| bits >> (i % 64) & 1 == 1).collect();
        let x = cover_arcs_greedy(&g, &a);
        let xs: HashSet<usize> = x.iter().copied().collect();
        for &arc in &a {
            let (t, h) = g.arc(arc);
            prop_assert!(xs.contains(&t) || xs.contains(&h));
        }
        prop_assert!(3 * x.len() <= g.n() + a.len());
        if a.len() <= 30 {
            let exact = min_vertex_cover_of_arcs(&g, &a, SolverLimits::default()).unwrap();
            prop_assert!(exact.len() <= x.len());
        }
    }

    #[test]
    fn lemma1_on_random_bipartite_graphs(seed in any::<u64>()) {
        if let Some(h) = common::random_bipartite(seed) {
            prop_assert!(check_lemma1(&h).unwrap());
        }
    }

    #[test]
    fn lemma2_on_random_face_sets(g in instance(), seed in any::<u64>()) {
        if g.is_connected() {
            if let Some(s) = common::random_face_set(&g, seed) {
                prop_assert!(check_lemma2(&g, &s).unwrap());
            }
        }
    }
}
