mod common;

use coxeter_bipolar::{CoxeterMatrix, GeneratorSet, Label};
use proptest::prelude::*;

const LABELS: [Label; 6] = [
    Label::Finite(2),
    Label::Finite(2),
    Label::Finite(3),
    Label::Finite(4),
    Label::Finite(6),
    Label::Infinite,
];

fn matrix() -> impl Strategy<Value = CoxeterMatrix> {
    (1usize..=7).prop_flat_map(|rank| {
        prop::collection::vec(0..LABELS.len(), rank * (rank - 1) / 2).prop_map(move |picks| {
            let mut it = picks.into_iter();
            CoxeterMatrix::from_fn(rank, |_, _| LABELS[it.next().unwrap()])
        })
    })
}

fn matrix_and_set() -> impl Strategy<Value = (CoxeterMatrix, GeneratorSet)> {
    matrix().prop_flat_map(|m| {
        let full = m.generators().bits();
        (Just(m), any::<u64>().prop_map(move |b| GeneratorSet::from_bits(b & full)))
    })
}

/// Components by brute force: grow from each vertex along the relation.
fn brute_components(set: GeneratorSet, related: impl Fn(usize, usize) -> bool) -> Vec<GeneratorSet> {
    let mut out: Vec<GeneratorSet> = Vec::new();
    for v in set {
        if out.iter().any(|c| c.contains(v)) {
            continue;
        }
        let mut comp = GeneratorSet::singleton(v);
        loop {
            let grown: GeneratorSet = set.iter().filter(|&u| comp.iter().any(|w| related(u, w))).collect();
            let next = comp.union(grown);
            if next == comp {
                break;
            }
            comp = next;
        }
        out.push(comp);
    }
    out
}

proptest! {
    #[test]
    fn perp_is_disjoint_and_commutes((m, j) in matrix_and_set()) {
        let p = m.perp(j);
        prop_assert!(p.is_disjoint(j));
        for x in p {
            prop_assert!(j.iter().all(|y| m.commute(x, y)));
        }
        for x in m.generators().difference(j.union(p)) {
            prop_assert!(j.iter().any(|y| !m.commute(x, y)));
        }
    }

    #[test]
    fn irreducible_components_partition((m, j) in matrix_and_set()) {
        let comps = m.irreducible_components(j);
        let union = comps.iter().fold(GeneratorSet::EMPTY, |a, c| a.union(*c));
        prop_assert_eq!(union, j);
        for (a, ca) in comps.iter().enumerate() {
            for cb in &comps[a + 1..] {
                prop_assert!(ca.is_disjoint(*cb));
                for x in *ca {
                    prop_assert!(cb.iter().all(|y| m.commute(x, y)));
                }
            }
        }
        prop_assert_eq!(comps, brute_components(j, |a, b| a != b && !m.commute(a, b)));
    }

    #[test]
    fn odd_components_refine_graph_components(m in matrix()) {
        let graph = m.diagram().components(m.generators());
        for o in m.odd_components() {
            prop_assert!(graph.iter().any(|c| o.is_subset(*c)));
        }
        prop_assert_eq!(m.odd_components(), brute_components(m.generators(), |a, b| m.odd_adjacent(a, b)));
    }

    #[test]
    fn separation_is_monotone((m, d) in matrix_and_set(), extra in any::<u64>()) {
        if let Some((u, w)) = m.separates(d) {
            prop_assert!(!d.contains(u) && !d.contains(w));
            let bigger = d.union(GeneratorSet::from_bits(extra & m.generators().bits())).difference(GeneratorSet::from_iter([u, w]));
            prop_assert!(m.separates(bigger).is_some());
        }
        let rest = m.generators().difference(d);
        prop_assert_eq!(m.separates(d).is_some(), brute_components(rest, |a, b| m.adjacent(a, b)).len() >= 2);
    }

    #[test]
    fn irreducible_subsets_match_brute_force(m in matrix()) {
        let brute: Vec<GeneratorSet> = m
            .generators()
            .subsets()
            .filter(|s| !s.is_empty() && m.is_irreducible(*s) == Ok(true))
            .collect();
        prop_assert_eq!(m.enumerate_irreducible_subsets(16).unwrap(), brute);
    }

    #[test]
    fn input_round_trip(m in matrix()) {
        for default in [coxeter_bipolar::DefaultLabel::Two, coxeter_bipolar::DefaultLabel::Infinite] {
            let doc = m.to_input(default);
            let toml_text = toml::to_string(&doc).unwrap();
            let back = coxeter_bipolar::parse_coxeter_input(&toml_text).unwrap();
            prop_assert_eq!(&back, &m);
            let json_text = serde_json::to_string(&doc).unwrap();
            prop_assert_eq!(&coxeter_bipolar::parse_coxeter_input(&json_text).unwrap(), &m);
        }
    }
}
