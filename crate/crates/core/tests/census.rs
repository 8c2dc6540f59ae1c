mod common;

use std::collections::HashMap;

use coxeter_bipolar::catalog::{self, FIXTURES};
use coxeter_bipolar::census::{
    far_components, pole_census_in, tubular_complement_components, wall_trace, Ball, PoleEstimate, WallField,
    DEFAULT_VERTEX_CAP,
};
use coxeter_bipolar::{bipolar_verdict, CriteriaOptions, Element, Reflection, WordEngine};

fn ball(e: &WordEngine, radius: u32) -> Ball {
    Ball::build(e, radius, DEFAULT_VERTEX_CAP).unwrap()
}

#[test]
fn levels_match_breadth_first_search() {
    for f in &FIXTURES {
        let e = WordEngine::new(&f.matrix());
        let b = ball(&e, 5);
        let levels = common::bfs_levels(&b);
        for (v, &level) in levels.iter().enumerate() {
            assert_eq!(level, b.level(v), "{}", f.name);
        }
    }
}

/// Every edge lies on exactly one wall, and its certificate names it.
#[test]
fn traces_partition_edges() {
    for f in &FIXTURES {
        let e = WordEngine::new(&f.matrix());
        let b = ball(&e, 4);
        let mut owner: HashMap<(usize, usize), Element> = HashMap::new();
        for r in b.walls_crossing(&e, 4) {
            let trace = wall_trace(&b, &e, &r).unwrap();
            for &(v, w, s) in &trace.edges {
                assert_eq!(e.edge_reflection(b.element(v), s).element(), r.element());
                assert!(e.wall_separates(&r, b.element(v), b.element(w)));
                assert!(owner.insert((v, s), r.element().clone()).is_none(), "{}: edge on two walls", f.name);
            }
        }
        assert_eq!(owner.len(), b.edges().count(), "{}", f.name);
    }
}

/// Wall distances agree with a breadth-first search from the wall's edges.
#[test]
fn wall_distance_matches_multi_source_search() {
    for name in ["dihedral-inf", "affine-A2", "triangle-444", "free-product-3", "grid", "A3"] {
        let e = WordEngine::new(&catalog::load(name).unwrap());
        let b = ball(&e, 10);
        for r in b.walls_crossing(&e, 2) {
            let trace = wall_trace(&b, &e, &r).unwrap();
            let sources: Vec<usize> = trace.edges.iter().flat_map(|&(v, w, _)| [v, w]).collect();
            let dist = common::multi_source_bfs(&b, &sources);
            let model = b.wall_distances(&e, &r);
            for v in 0..b.count_within(3) {
                assert_eq!(model[v].twice(), 2 * dist[v] + 1, "{name}: {:?} at {:?}", r.element(), b.element(v));
            }
        }
    }
}

#[test]
fn generator_walls_halve_the_group_at_k0() {
    for f in &FIXTURES {
        let e = WordEngine::new(&f.matrix());
        let b = ball(&e, 6);
        for s in 0..e.rank() {
            let r = e.edge_reflection(&Element::identity(), s);
            let comps = tubular_complement_components(&b, &e, &r, 0);
            assert_eq!(comps.len(), 2, "{} s{}", f.name, s + 1);
            // The two components are the two half-spaces.
            for comp in &comps {
                let side = e.wall_separates(&r, &Element::identity(), b.element(comp[0]));
                assert!(comp.iter().all(|&v| e.wall_separates(&r, &Element::identity(), b.element(v)) == side));
            }
        }
    }
}

/// Components never straddle the wall, and every far vertex is in one.
#[test]
fn components_stay_on_one_side() {
    for name in ["affine-A2", "triangle-444", "free-product-3", "example-fig2"] {
        let e = WordEngine::new(&catalog::load(name).unwrap());
        let b = ball(&e, 6);
        for r in b.walls_crossing(&e, 2) {
            let field = WallField::new(&b, &e, std::slice::from_ref(r.element()));
            let levels: Vec<u32> = (0..b.len()).map(|v| b.level(v)).collect();
            for k in 0..3 {
                let comps = far_components(&b, &field, k, &levels, 6);
                let far = field.vertex().iter().filter(|d| !d.within(k)).count();
                assert_eq!(comps.iter().map(Vec::len).sum::<usize>(), far);
                for comp in &comps {
                    let side = |v: usize| e.product(r.element(), b.element(v)).length() < b.element(v).length();
                    assert!(comp.iter().all(|&v| side(v) == side(comp[0])));
                    assert!(comp.iter().all(|&v| !field.vertex()[v].within(k)));
                }
            }
        }
    }
}

#[test]
fn translated_walls_give_translated_components() {
    // The component count only depends on the wall up to translation,
    // provided the ball is large enough around both.
    let e = WordEngine::new(&catalog::load("affine-A2").unwrap());
    let b = ball(&e, 9);
    let v = e.shortlex(&[0, 1]);
    let r0 = e.edge_reflection(&Element::identity(), 2);
    let r1 = e.edge_reflection(&v, 2);
    let c0 = tubular_complement_components(&b, &e, &r0, 1);
    let c1 = tubular_complement_components(&b, &e, &r1, 1);
    let big = |c: &Vec<Vec<usize>>| c.iter().filter(|x| x.len() > 20).count();
    assert_eq!(big(&c0), 2);
    assert_eq!(big(&c1), 2);
}

/// Both half-spaces of a generator wall reach beyond distance `k`, in every
/// group without spherical factors.
#[test]
fn half_spaces_are_deep() {
    for f in FIXTURES.iter().filter(|f| f.matrix().spherical_factors().is_empty()) {
        let e = WordEngine::new(&f.matrix());
        let b = ball(&e, 7);
        for s in 0..e.rank() {
            let r = Reflection::generator(s);
            let dist = b.wall_distances(&e, &r);
            for k in 0..=2 {
                for near_side in [true, false] {
                    let found = (0..b.len()).any(|v| {
                        let x = b.element(v);
                        let side = e.left_mul(s, x).length() > x.length();
                        side == near_side && !dist[v].within(k)
                    });
                    assert!(found, "{} s{} k={k}", f.name, s + 1);
                }
            }
        }
    }
}

/// Two stable poles at every generator exactly for the bipolar fixtures.
#[test]
fn generator_census_concordance() {
    for f in &FIXTURES {
        let m = f.matrix();
        let e = WordEngine::new(&m);
        let b = ball(&e, 9);
        let all_two = (0..m.rank()).all(|s| {
            let c = pole_census_in(&b, &e, &Reflection::generator(s), 2, 2).unwrap();
            c.pole_estimate == PoleEstimate::Count(2)
        });
        assert_eq!(all_two, bipolar_verdict(&m, CriteriaOptions::default()).unwrap().bipolar, "{}", f.name);
    }
}

/// A translated wall gives the census of its base generator.
#[test]
fn census_is_translation_invariant() {
    let e = WordEngine::new(&catalog::load("example-fig2").unwrap());
    let b = ball(&e, 7);
    let base = pole_census_in(&b, &e, &Reflection::generator(0), 2, 2).unwrap();
    let moved = e.edge_reflection(&e.shortlex(&[1, 4]), 0);
    let c = pole_census_in(&b, &e, &moved, 2, 2).unwrap();
    assert_eq!(c.components, base.components);
    assert_eq!(c.walls, vec![moved.element().clone()]);
}
