//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use coxeter_bipolar::census::Ball;
use coxeter_bipolar::{CoxeterMatrix, Element, GeneratorSet, Label, WordEngine};
use rand::Rng;

/// Words related by braid moves `stst.. = tsts..` (length `m(s, t)`).
pub fn braid_orbit(m: &CoxeterMatrix, word: &[usize], limit: usize) -> Option<BTreeSet<Vec<usize>>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        for start in 0..w.len() {
            if start + 1 >= w.len() || w[start] == w[start + 1] {
                continue;
            }
            let (s, t) = (w[start], w[start + 1]);
            let Some(len) = m.order(s, t).map(|k| k as usize) else {
                continue;
            };
            if start + len > w.len() {
                continue;
            }
            if !(0..len).all(|i| w[start + i] == if i % 2 == 0 { s } else { t }) {
                continue;
            }
            let mut next = w.clone();
            for i in 0..len {
                next[start + i] = if i % 2 == 0 { t } else { s };
            }
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(seen)
}

/// Reduces a word by the braid-orbit and cancellation procedure: search the
/// orbit for a word with a repeated letter, delete the pair, repeat.
pub fn tits_reduce(m: &CoxeterMatrix, word: &[usize]) -> Vec<usize> {
    let mut cur = word.to_vec();
    'outer: loop {
        let orbit = braid_orbit(m, &cur, 200_000).expect("braid orbit within limit");
        for w in &orbit {
            if let Some(i) = (1..w.len()).find(|&i| w[i - 1] == w[i]) {
                let mut next = w.clone();
                next.drain(i - 1..=i);
                cur = next;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// ShortLex normal form by the oracle: the lexicographically least reduced word.
pub fn tits_shortlex(m: &CoxeterMatrix, word: &[usize]) -> Vec<usize> {
    let reduced = tits_reduce(m, word);
    braid_orbit(m, &reduced, 200_000)
        .unwrap()
        .into_iter()
        .next()
        .unwrap()
}

pub fn nf(e: &Element) -> Vec<usize> {
    e.normal_form().iter().map(|&g| g as usize).collect()
}

/// Vertex levels by plain breadth-first search over the ball's edges.
pub fn bfs_levels(ball: &Ball) -> Vec<u32> {
    multi_source_bfs(ball, &[0])
}

pub fn multi_source_bfs(ball: &Ball, sources: &[usize]) -> Vec<u32> {
    let mut dist = vec![u32::MAX; ball.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] == u32::MAX {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for s in 0..ball.rank() {
            if let Some(w) = ball.neighbour(v, s) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}

/// For every reflection dual to an edge of the ball: twice the graph
/// distance from the identity to the nearest midpoint of such an edge.
/// Exact for every reflection whose nearest edge has both ends in the ball.
pub fn wall_distance_from_identity(engine: &WordEngine, ball: &Ball) -> HashMap<Element, u32> {
    let levels = bfs_levels(ball);
    let mut out: HashMap<Element, u32> = HashMap::new();
    for v in 0..ball.len() {
        for s in 0..ball.rank() {
            let Some(w) = ball.neighbour(v, s) else { continue };
            let near = levels[v].min(levels[w]);
            let r = engine.product(&engine.product(ball.element(v), &Element::generator(s)), &engine.inverse(ball.element(v)));
            let slot = out.entry(r).or_insert(u32::MAX);
            *slot = (*slot).min(2 * near + 1);
        }
    }
    out
}

/// All `g s g^-1` with `g` in the ball.
pub fn conjugates_of_generators(engine: &WordEngine, ball: &Ball) -> HashSet<Element> {
    let mut out = HashSet::new();
    for g in ball.elements() {
        let ginv = engine.inverse(g);
        for s in 0..ball.rank() {
            out.insert(engine.product(&engine.product(g, &Element::generator(s)), &ginv));
        }
    }
    out
}

/// Order of `W_J` by enumeration, or `None` past `cap` elements.
pub fn enumerate_order(engine: &WordEngine, j: GeneratorSet, cap: usize) -> Option<usize> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(Element::identity());
    queue.push_back(Element::identity());
    while let Some(w) = queue.pop_front() {
        for s in j.iter() {
            let x = engine.mul_gen(&w, s);
            if seen.insert(x.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(x);
            }
        }
    }
    Some(seen.len())
}

/// `O` together with all generators adjacent to a member of `O`.
pub fn odd_closure(m: &CoxeterMatrix, s: usize) -> GeneratorSet {
    let o = m.odd_component_of(s);
    o.iter().fold(o, |acc, x| acc.union(m.diagram().neighbours(x)))
}

pub fn random_matrix(rng: &mut impl Rng, rank: usize, labels: &[Label]) -> CoxeterMatrix {
    CoxeterMatrix::from_fn(rank, |_, _| labels[rng.random_range(0..labels.len())])
}

pub fn random_word(rng: &mut impl Rng, rank: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.random_range(0..rank)).collect()
}
