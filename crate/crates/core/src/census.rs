//! Finite-radius census of the Cayley graph.
//!
//! A [`Ball`] is built by breadth-first search from the identity. Walls are
//! read off from the edges they flip, distances to walls come from
//! conjugation, and the complement of a tubular neighbourhood is split into
//! components with union-find. A component counts as essential when it has a
//! vertex at distance at least `k + margin` inside the interior of radius
//! `R - 2`, and the count is reported as a pole estimate only when it agrees
//! between radius `R` and radius `R - 2`.
//!
//! Censuses measure radii from a centre that the removed walls preserve: a
//! reflection is first translated to its base generator `s` and censused in
//! the ball of radius `R` around the edge `(1, s)`; an involution with
//! spherical support `P` uses the ball of radius `R` around `W_P`. The
//! reflections in `W_P` then permute the components, as they do in the
//! whole graph.

use petgraph::unionfind::UnionFind;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::genset::GeneratorSet;
use crate::word::{Element, Gen, Reflection, WallDistance, WordEngine, WordError};

pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;
pub const DEFAULT_ESSENTIAL_MARGIN: u32 = 2;

const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("ball of radius {radius} exceeds the vertex cap {cap}")]
    CapExceeded { radius: u32, cap: usize },
    #[error("census radius {0} is too small; need at least 2")]
    RadiusTooSmall(u32),
    #[error("the wall of {0} does not cross the ball")]
    EmptyTrace(String),
    #[error("support {0:?} of the involution is not spherical")]
    NotSpherical(GeneratorSet),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// All elements of length at most `radius`, with their Cayley-graph edges.
#[derive(Debug)]
pub struct Ball {
    radius: u32,
    rank: usize,
    elements: Vec<Element>,
    index: FxHashMap<Element, u32>,
    // First vertex of each level, plus the total at the end.
    level_starts: Vec<usize>,
    // Parent vertex and the generator leading from it; the identity has none.
    parents: Vec<(u32, Gen)>,
    // rank entries per vertex, NONE when the neighbour leaves the ball.
    neighbours: Vec<u32>,
}

impl Ball {
    pub fn build(engine: &WordEngine, radius: u32, cap: usize) -> Result<Self, CensusError> {
        let rank = engine.rank();
        let mut ball = Ball {
            radius,
            rank,
            elements: vec![Element::identity()],
            index: FxHashMap::default(),
            level_starts: vec![0],
            parents: vec![(NONE, 0)],
            neighbours: Vec::new(),
        };
        ball.index.insert(Element::identity(), 0);
        let mut start = 0;
        for _ in 0..radius {
            let end = ball.elements.len();
            for v in start..end {
                for s in 0..rank {
                    if engine.is_right_descent(&ball.elements[v], s) {
                        continue;
                    }
                    let w = engine.mul_gen(&ball.elements[v], s);
                    if ball.index.contains_key(&w) {
                        continue;
                    }
                    if ball.elements.len() >= cap {
                        return Err(CensusError::CapExceeded { radius, cap });
                    }
                    ball.index.insert(w.clone(), ball.elements.len() as u32);
                    ball.elements.push(w);
                    ball.parents.push((v as u32, s as Gen));
                }
            }
            ball.level_starts.push(end);
            start = end;
            if start == ball.elements.len() {
                break;
            }
        }
        while ball.level_starts.len() <= radius as usize {
            ball.level_starts.push(ball.elements.len());
        }
        ball.level_starts.push(ball.elements.len());

        ball.neighbours = vec![NONE; ball.elements.len() * rank];
        for v in 0..ball.elements.len() {
            for s in 0..rank {
                if ball.neighbours[v * rank + s] != NONE {
                    continue;
                }
                let w = engine.mul_gen(&ball.elements[v], s);
                if let Some(&j) = ball.index.get(&w) {
                    ball.neighbours[v * rank + s] = j;
                    ball.neighbours[j as usize * rank + s] = v as u32;
                }
            }
        }
        Ok(ball)
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, v: usize) -> &Element {
        &self.elements[v]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn index_of(&self, w: &Element) -> Option<usize> {
        self.index.get(w).map(|&i| i as usize)
    }

    /// Word length of the vertex, which is its graph distance to the identity.
    pub fn level(&self, v: usize) -> u32 {
        self.elements[v].length() as u32
    }

    /// Number of vertices of length at most `r`; vertices are stored by level.
    pub fn count_within(&self, r: u32) -> usize {
        self.level_starts[(r.min(self.radius) + 1) as usize]
    }

    /// Graph distance from the nearest source, searching inside the ball.
    /// Exact for vertices whose geodesics to the sources stay in the ball.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![NONE; self.len()];
        let mut queue = std::collections::VecDeque::new();
        for &v in sources {
            if dist[v] == NONE {
                dist[v] = 0;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for s in 0..self.rank {
                if let Some(w) = self.neighbour(v, s) {
                    if dist[w] == NONE {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    /// Whether the group is exhausted before the radius is reached.
    pub fn is_closed(&self) -> bool {
        self.level_starts[self.radius as usize] == self.elements.len()
    }

    pub fn neighbour(&self, v: usize, s: usize) -> Option<usize> {
        match self.neighbours[v * self.rank + s] {
            NONE => None,
            j => Some(j as usize),
        }
    }

    /// Each edge once as `(shorter, longer, generator)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.len()).flat_map(move |v| {
            (0..self.rank).filter_map(move |s| {
                let w = self.neighbour(v, s)?;
                (self.level(w) > self.level(v)).then_some((v, w, s))
            })
        })
    }

    /// `v^-1 x v` for every vertex `v`, computed down the search tree.
    pub fn conjugates(&self, engine: &WordEngine, x: &Element) -> Vec<Element> {
        let mut out: Vec<Element> = Vec::with_capacity(self.len());
        out.push(x.clone());
        for v in 1..self.len() {
            let (p, s) = self.parents[v];
            let c = engine.conjugate_by_generator(s as usize, &out[p as usize]);
            out.push(c);
        }
        out
    }

    pub fn wall_distances(&self, engine: &WordEngine, r: &Reflection) -> Vec<WallDistance> {
        self.conjugates(engine, r.element())
            .iter()
            .map(|c| WallDistance(c.length() as u32))
            .collect()
    }

    /// Distinct reflections dual to edges of the sub-ball of radius `r`,
    /// ordered by length and then by normal form.
    pub fn walls_crossing(&self, engine: &WordEngine, r: u32) -> Vec<Reflection> {
        let mut seen = FxHashSet::default();
        let mut out = Vec::new();
        for (v, w, s) in self.edges() {
            if self.level(w) > r {
                continue;
            }
            let refl = engine.edge_reflection(&self.elements[v], s);
            if seen.insert(refl.element().clone()) {
                out.push(refl);
            }
        }
        out.sort_by(|a, b| {
            let (a, b) = (a.element(), b.element());
            (a.length(), a).cmp(&(b.length(), b))
        });
        out
    }
}

/// Ball edges dual to one reflection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallTrace {
    pub reflection: Reflection,
    /// `(shorter, longer, generator)` with vertex indices into the ball.
    pub edges: Vec<(usize, usize, usize)>,
}

pub fn wall_trace(ball: &Ball, engine: &WordEngine, r: &Reflection) -> Result<WallTrace, CensusError> {
    let conj = ball.conjugates(engine, r.element());
    let edges: Vec<_> = ball
        .edges()
        .filter(|&(v, _, s)| conj[v].as_generator() == Some(s))
        .collect();
    if edges.is_empty() {
        return Err(CensusError::EmptyTrace(format!("{:?}", r.element())));
    }
    Ok(WallTrace {
        reflection: r.clone(),
        edges,
    })
}

/// Distances from the vertices and edge midpoints of a ball to a finite set
/// of walls, taking the largest over the walls. A point is in the
/// intersection of the `k`-neighbourhoods exactly when this is at most `k`.
#[derive(Clone, Debug)]
pub struct WallField {
    rank: usize,
    vertex: Vec<WallDistance>,
    // Twice the midpoint distance, indexed by shorter endpoint and generator.
    midpoint: Vec<u32>,
}

impl WallField {
    pub fn new(ball: &Ball, engine: &WordEngine, walls: &[Element]) -> Self {
        let rank = ball.rank();
        let mut field = WallField {
            rank,
            vertex: vec![WallDistance(0); ball.len()],
            midpoint: vec![0; ball.len() * rank],
        };
        for r in walls {
            let conj = ball.conjugates(engine, r);
            for (d, c) in field.vertex.iter_mut().zip(&conj) {
                *d = (*d).max(WallDistance(c.length() as u32));
            }
            for (v, w, s) in ball.edges() {
                let mid = if conj[v].as_generator() == Some(s) {
                    0
                } else {
                    conj[v].length().min(conj[w].length()) as u32 + 1
                };
                let slot = &mut field.midpoint[v * rank + s];
                *slot = (*slot).max(mid);
            }
        }
        field
    }

    pub fn vertex(&self) -> &[WallDistance] {
        &self.vertex
    }

    fn edge_is_far(&self, shorter: usize, s: usize, k: u32) -> bool {
        self.midpoint[shorter * self.rank + s] > 2 * k
    }
}

/// Components of the vertices with `levels[v] <= within` lying outside the
/// `k`-neighbourhood, each sorted, ordered by smallest vertex.
pub fn far_components(ball: &Ball, field: &WallField, k: u32, levels: &[u32], within: u32) -> Vec<Vec<usize>> {
    let n = ball.len();
    let keep = |v: usize| levels[v] <= within && !field.vertex[v].within(k);
    let mut uf = UnionFind::<u32>::new(n);
    for (v, w, s) in ball.edges() {
        if keep(v) && keep(w) && field.edge_is_far(v, s, k) {
            uf.union(v as u32, w as u32);
        }
    }
    let mut by_root: FxHashMap<u32, usize> = FxHashMap::default();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in (0..n).filter(|&v| keep(v)) {
        let root = uf.find(v as u32);
        let slot = *by_root.entry(root).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[slot].push(v);
    }
    out
}

/// Components of the complement of the closed `k`-neighbourhood of the wall.
pub fn tubular_complement_components(ball: &Ball, engine: &WordEngine, r: &Reflection, k: u32) -> Vec<Vec<usize>> {
    let field = WallField::new(ball, engine, std::slice::from_ref(r.element()));
    let levels: Vec<u32> = (0..ball.len()).map(|v| ball.level(v)).collect();
    far_components(ball, &field, k, &levels, ball.radius())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusParams {
    pub k: u32,
    pub radius: u32,
    pub margin: u32,
    pub vertex_cap: usize,
}

impl CensusParams {
    pub fn new(k: u32, radius: u32) -> Self {
        CensusParams {
            k,
            radius,
            margin: DEFAULT_ESSENTIAL_MARGIN,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }

    pub fn with_margin(mut self, margin: u32) -> Self {
        self.margin = margin;
        self
    }

    pub fn with_vertex_cap(mut self, cap: usize) -> Self {
        self.vertex_cap = cap;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub vertex_count: usize,
    pub max_wall_distance: WallDistance,
    pub touches_ball_boundary: bool,
    pub essential: bool,
}

/// Components found at one radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRun {
    pub radius: u32,
    pub components: Vec<ComponentSummary>,
    pub essential_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoleEstimate {
    Count(usize),
    Unstable,
}

impl Serialize for PoleEstimate {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            PoleEstimate::Count(n) => ser.serialize_u64(*n as u64),
            PoleEstimate::Unstable => ser.serialize_str("unstable"),
        }
    }
}

impl<'de> Deserialize<'de> for PoleEstimate {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(usize),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Count(n) => Ok(PoleEstimate::Count(n)),
            Raw::Text(t) if t == "unstable" => Ok(PoleEstimate::Unstable),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("unexpected pole estimate {t:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub k: u32,
    pub radius: u32,
    pub margin: u32,
    /// Reflections whose walls make up the removed set.
    pub walls: Vec<Element>,
    pub components: Vec<ComponentSummary>,
    pub essential_count: usize,
    /// The same census at radius `R - 2`.
    pub smaller: CensusRun,
    pub stable: bool,
    pub pole_estimate: PoleEstimate,
}

/// Runs the census of the walls `removed` at radius `R` and `R - 2` around
/// the vertices `centre`. The ball must contain the radius-`R` ball around
/// every centre vertex. Essential witnesses are taken from the radius
/// `R - 2` interior in both runs.
///
/// `walls` is what the report lists; `removed` may be a translate of it.
#[allow(clippy::too_many_arguments)]
fn census_from(
    ball: &Ball,
    engine: &WordEngine,
    walls: Vec<Element>,
    removed: &[Element],
    centre: &[Element],
    radius: u32,
    k: u32,
    margin: u32,
) -> CensusReport {
    let interior = radius - 2;
    let sources: Vec<usize> = centre.iter().map(|c| ball.index_of(c).expect("centre inside the ball")).collect();
    let levels = ball.distances_from(&sources);
    let field = WallField::new(ball, engine, removed);
    let distances = field.vertex();
    let run = |r: u32| {
        let components: Vec<ComponentSummary> = far_components(ball, &field, k, &levels, r)
            .into_iter()
            .map(|comp| ComponentSummary {
                vertex_count: comp.len(),
                max_wall_distance: comp.iter().map(|&v| distances[v]).max().unwrap(),
                touches_ball_boundary: comp.iter().any(|&v| levels[v] == r),
                essential: comp
                    .iter()
                    .any(|&v| levels[v] <= interior && distances[v].twice() >= 2 * (k + margin)),
            })
            .collect();
        let essential_count = components.iter().filter(|c| c.essential).count();
        CensusRun {
            radius: r,
            components,
            essential_count,
        }
    };
    let full = run(radius);
    let smaller = run(radius - 2);
    let stable = full.essential_count == smaller.essential_count;
    CensusReport {
        k,
        radius,
        margin,
        walls,
        components: full.components,
        essential_count: full.essential_count,
        smaller,
        stable,
        pole_estimate: if stable {
            PoleEstimate::Count(full.essential_count)
        } else {
            PoleEstimate::Unstable
        },
    }
}

/// Pole census of one wall at radius `R`, over an existing ball of radius
/// `R + 1`.
///
/// The reflection is translated to its base generator `s`, which does not
/// change the census, and radii are measured from the edge `(1, s)`.
pub fn pole_census_in(ball: &Ball, engine: &WordEngine, r: &Reflection, k: u32, margin: u32) -> Result<CensusReport, CensusError> {
    let radius = ball.radius().saturating_sub(1);
    if radius < 2 {
        return Err(CensusError::RadiusTooSmall(radius));
    }
    let s = Element::generator(r.base());
    let centre = [Element::identity(), s.clone()];
    Ok(census_from(ball, engine, vec![r.element().clone()], &[s], &centre, radius, k, margin))
}

pub fn pole_census(engine: &WordEngine, r: &Reflection, params: CensusParams) -> Result<CensusReport, CensusError> {
    if params.radius < 2 {
        return Err(CensusError::RadiusTooSmall(params.radius));
    }
    let ball = Ball::build(engine, params.radius + 1, params.vertex_cap)?;
    pole_census_in(&ball, engine, r, params.k, params.margin)
}

/// Reflections of the standard parabolic subgroup on `support`.
pub fn parabolic_reflections(engine: &WordEngine, support: GeneratorSet) -> Vec<Element> {
    let mut seen: FxHashSet<Element> = support.iter().map(Element::generator).collect();
    let mut queue: Vec<Element> = support.iter().map(Element::generator).collect();
    let mut i = 0;
    while i < queue.len() {
        for s in support.iter() {
            let c = engine.conjugate_by_generator(s, &queue[i]);
            if seen.insert(c.clone()) {
                queue.push(c);
            }
        }
        i += 1;
    }
    queue.sort_by(|a, b| (a.length(), a).cmp(&(b.length(), b)));
    queue
}

/// Elements of a finite standard parabolic subgroup, shortest first.
fn parabolic_elements(engine: &WordEngine, support: GeneratorSet) -> Vec<Element> {
    let mut seen: FxHashSet<Element> = FxHashSet::default();
    let mut queue = vec![Element::identity()];
    seen.insert(Element::identity());
    let mut i = 0;
    while i < queue.len() {
        for s in support.iter() {
            let x = engine.mul_gen(&queue[i], s);
            if seen.insert(x.clone()) {
                queue.push(x);
            }
        }
        i += 1;
    }
    queue
}

/// Census of the complement of the intersection of the `k`-neighbourhoods
/// of all walls of the parabolic subgroup `W_P` on the support of `w`, with
/// radii measured from `W_P`.
///
/// A reflection is censused through its own wall alone.
pub fn involution_census(engine: &WordEngine, w: &Element, params: CensusParams) -> Result<CensusReport, CensusError> {
    let shown = || format!("{}", w.display(engine.matrix()));
    if !engine.is_involution(w) {
        return Err(WordError::NotInvolution(shown()).into());
    }
    if params.radius < 2 {
        return Err(CensusError::RadiusTooSmall(params.radius));
    }
    if let Some(r) = engine.is_reflection(w) {
        return pole_census(engine, &r, params);
    }
    let support = w.support();
    if !engine.matrix().is_spherical(support) {
        return Err(CensusError::NotSpherical(support));
    }
    let centre = parabolic_elements(engine, support);
    let reach = centre.last().map_or(0, Element::length) as u32;
    let ball = Ball::build(engine, params.radius + reach, params.vertex_cap)?;
    let walls = parabolic_reflections(engine, support);
    Ok(census_from(&ball, engine, walls.clone(), &walls, &centre, params.radius, params.k, params.margin))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationReport {
    pub radius: u32,
    pub k: u32,
    /// Vertices of the radius `R - 1` ball adjacent to the wall of `t`.
    pub adjacent_vertices: usize,
    pub dominated_within_ball: bool,
    pub max_escape_distance: WallDistance,
}

/// How far the wall of `t` strays from the wall of `r` inside the ball.
pub fn domination_probe(
    engine: &WordEngine,
    r: &Reflection,
    t: &Reflection,
    k: u32,
    radius: u32,
    cap: usize,
) -> Result<DominationReport, CensusError> {
    if radius < 1 {
        return Err(CensusError::RadiusTooSmall(radius));
    }
    let ball = Ball::build(engine, radius, cap)?;
    domination_probe_in(&ball, engine, r, t, k)
}

pub fn domination_probe_in(
    ball: &Ball,
    engine: &WordEngine,
    r: &Reflection,
    t: &Reflection,
    k: u32,
) -> Result<DominationReport, CensusError> {
    let inner = ball.count_within(ball.radius().saturating_sub(1));
    let ct = ball.conjugates(engine, t.element());
    let dr = ball.wall_distances(engine, r);
    let adjacent: Vec<usize> = (0..inner).filter(|&v| ct[v].length() == 1).collect();
    let max = adjacent
        .iter()
        .map(|&v| dr[v])
        .max()
        .ok_or_else(|| CensusError::EmptyTrace(format!("{:?}", t.element())))?;
    Ok(DominationReport {
        radius: ball.radius(),
        k,
        adjacent_vertices: adjacent.len(),
        dominated_within_ball: max.within(k),
        max_escape_distance: max,
    })
}
