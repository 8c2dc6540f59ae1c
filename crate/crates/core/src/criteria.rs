//! Diagram criteria for bipolarity.
//!
//! The group-level decision checks three conditions on the generating set:
//!
//! * (a) no irreducible component of `S` is spherical;
//! * (b) no irreducible `T` and non-empty spherical `I ⊆ T` such that
//!   `I ∪ T⊥` separates the Coxeter graph;
//! * (c) whenever `T` is irreducible spherical and an odd component `O`
//!   lies in `T⊥`, some member of `O` is adjacent to some member of
//!   `S \ (T ∪ T⊥)`.
//!
//! The per-vertex variants take `T`, `J`, `U` from a vertex and a reflection
//! (see [`WordEngine::jtu_sets`]) and are meant for sampling, not for
//! deciding the group.

use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramError, DEFAULT_ENUMERATION_CAP};
use crate::genset::GeneratorSet;
use crate::matrix::CoxeterMatrix;
use crate::word::{Element, JtuSets, Reflection, WordEngine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    A,
    B,
    C,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::A => "a",
            Condition::B => "b",
            Condition::C => "c",
        })
    }
}

/// Evidence for a failed condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub condition: Condition,
    pub t: GeneratorSet,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<GeneratorSet>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub o: Option<GeneratorSet>,
    /// Two vertices in different components after the removal.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub separated_pair: Option<(usize, usize)>,
    /// A non-adjacent pair `(t, t')` with `t ∈ O`, `t' ∈ S \ (T ∪ T⊥)`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub missing_adjacency: Option<(usize, usize)>,
}

impl Witness {
    fn component(t: GeneratorSet) -> Self {
        Witness {
            condition: Condition::A,
            t,
            i: None,
            o: None,
            separated_pair: None,
            missing_adjacency: None,
        }
    }

    /// Re-derives the failure from the witness alone.
    pub fn recheck(&self, m: &CoxeterMatrix) -> bool {
        if !self.t.is_subset(m.generators()) || self.t.is_empty() || m.is_irreducible(self.t) != Ok(true) {
            return false;
        }
        let perp = m.perp(self.t);
        match self.condition {
            Condition::A => {
                m.is_spherical(self.t) && self.t.union(perp) == m.generators()
            }
            Condition::B => {
                let Some(i) = self.i else { return false };
                let Some((u, w)) = self.separated_pair else { return false };
                let removed = i.union(perp);
                !i.is_empty()
                    && i.is_subset(self.t)
                    && m.is_spherical(i)
                    && !removed.contains(u)
                    && !removed.contains(w)
                    && m.diagram()
                        .components(m.generators().difference(removed))
                        .iter()
                        .all(|c| !(c.contains(u) && c.contains(w)))
            }
            Condition::C => {
                let Some(o) = self.o else { return false };
                let outside = m.generators().difference(self.t.union(perp));
                m.is_spherical(self.t)
                    && m.odd_components().contains(&o)
                    && o.is_subset(perp)
                    && o.iter().all(|x| m.diagram().neighbours(x).is_disjoint(outside))
            }
        }
    }
}

/// Outcome of the group-level decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub bipolar: bool,
    pub failed_condition: Option<Condition>,
    pub witness: Option<Witness>,
    /// Every failure, when requested; empty otherwise.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub all_witnesses: Vec<Witness>,
}

#[derive(Clone, Copy, Debug)]
pub struct CriteriaOptions {
    pub enumeration_cap: usize,
    pub all_witnesses: bool,
}

impl Default for CriteriaOptions {
    fn default() -> Self {
        CriteriaOptions {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            all_witnesses: false,
        }
    }
}

/// The irreducible component of `S` containing `t`, when it is spherical.
///
/// At a single vertex this is stricter than asking whether `t` itself is a
/// spherical component; over all vertices the two agree, since a spherical
/// irreducible group contains a reflection of full support.
fn spherical_component_over(m: &CoxeterMatrix, t: GeneratorSet) -> Option<GeneratorSet> {
    let first = t.first()?;
    m.spherical_factors().into_iter().find(|c| c.contains(first))
}

/// Non-empty spherical subsets of `t` in depth-first order, growing each set
/// only by larger indices and only while it stays spherical.
fn spherical_subsets(m: &CoxeterMatrix, t: GeneratorSet, mut visit: impl FnMut(GeneratorSet) -> bool) {
    fn go(
        m: &CoxeterMatrix,
        members: &[usize],
        from: usize,
        cur: GeneratorSet,
        visit: &mut dyn FnMut(GeneratorSet) -> bool,
    ) -> bool {
        for k in from..members.len() {
            let next = cur.with(members[k]);
            if !m.is_spherical(next) {
                continue;
            }
            if !visit(next) || !go(m, members, k + 1, next, visit) {
                return false;
            }
        }
        true
    }
    let members: Vec<usize> = t.iter().collect();
    go(m, &members, 0, GeneratorSet::EMPTY, &mut visit);
}

/// Condition (b) for a single irreducible `t`.
fn separation_failures(m: &CoxeterMatrix, t: GeneratorSet, all: bool) -> Vec<Witness> {
    let perp = m.perp(t);
    let mut out = Vec::new();
    spherical_subsets(m, t, |i| {
        if let Some(pair) = m.separates(i.union(perp)) {
            out.push(Witness {
                condition: Condition::B,
                t,
                i: Some(i),
                o: None,
                separated_pair: Some(pair),
                missing_adjacency: None,
            });
            return all;
        }
        true
    });
    out
}

/// Condition (c) for a single irreducible `t`; vacuous unless `t` is spherical.
fn odd_component_failures(m: &CoxeterMatrix, t: GeneratorSet, all: bool) -> Vec<Witness> {
    if !m.is_spherical(t) {
        return Vec::new();
    }
    let perp = m.perp(t);
    let outside = m.generators().difference(t.union(perp));
    let mut out = Vec::new();
    for o in m.odd_components() {
        if !o.is_subset(perp) {
            continue;
        }
        let touches = o.iter().any(|x| !m.diagram().neighbours(x).is_disjoint(outside));
        if !touches {
            out.push(Witness {
                condition: Condition::C,
                t,
                i: None,
                o: Some(o),
                separated_pair: None,
                missing_adjacency: match (o.first(), outside.first()) {
                    (Some(a), Some(b)) => Some((a, b)),
                    _ => None,
                },
            });
            if !all {
                break;
            }
        }
    }
    out
}

pub fn condition_a(m: &CoxeterMatrix) -> Option<Witness> {
    m.spherical_factors().into_iter().next().map(Witness::component)
}

pub fn condition_b(m: &CoxeterMatrix, cap: usize) -> Result<Option<Witness>, DiagramError> {
    for t in m.enumerate_irreducible_subsets(cap)? {
        if let Some(w) = separation_failures(m, t, false).into_iter().next() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn condition_c(m: &CoxeterMatrix, cap: usize) -> Result<Option<Witness>, DiagramError> {
    for t in m.enumerate_irreducible_subsets(cap)? {
        if let Some(w) = odd_component_failures(m, t, false).into_iter().next() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Decides bipolarity of the Coxeter group with the given generating set.
pub fn bipolar_verdict(m: &CoxeterMatrix, options: CriteriaOptions) -> Result<Verdict, DiagramError> {
    let all = options.all_witnesses;
    let mut found: Vec<Witness> = Vec::new();
    for t in m.spherical_factors() {
        found.push(Witness::component(t));
        if !all {
            break;
        }
    }
    if found.is_empty() || all {
        let subsets = m.enumerate_irreducible_subsets(options.enumeration_cap)?;
        for &t in &subsets {
            found.extend(separation_failures(m, t, all));
            if !all && !found.is_empty() {
                break;
            }
        }
        if found.is_empty() || all {
            for &t in &subsets {
                found.extend(odd_component_failures(m, t, all));
                if !all && !found.is_empty() {
                    break;
                }
            }
        }
    }
    let first = found.first().cloned();
    Ok(Verdict {
        bipolar: first.is_none(),
        failed_condition: first.as_ref().map(|w| w.condition),
        witness: first,
        all_witnesses: if all { found } else { Vec::new() },
    })
}

/// Irreducible, 2-spherical and infinite.
pub fn corollary_2sph_check(m: &CoxeterMatrix) -> bool {
    m.is_irreducible(m.generators()) == Ok(true)
        && m.is_2_spherical(m.generators())
        && !m.is_spherical(m.generators())
}

/// Result of a per-vertex check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexOutcome {
    pub jtu: JtuSets,
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// Per-vertex conditions for nearly bipolar and bipolar reflections, with
/// results memoised by the sets they depend on.
pub struct VertexChecker<'e> {
    engine: &'e WordEngine,
    nearly: FxHashMap<(GeneratorSet, GeneratorSet), Option<Witness>>,
    bipolar: FxHashMap<GeneratorSet, Option<Witness>>,
}

impl<'e> VertexChecker<'e> {
    pub fn new(engine: &'e WordEngine) -> Self {
        VertexChecker {
            engine,
            nearly: FxHashMap::default(),
            bipolar: FxHashMap::default(),
        }
    }

    fn matrix(&self) -> &CoxeterMatrix {
        self.engine.matrix()
    }

    /// Nearly bipolar conditions at `(v, r)`: `T` is not a spherical
    /// irreducible component, and `J ∪ U` does not separate.
    pub fn nearly_bipolar(&mut self, v: &Element, r: &Reflection) -> VertexOutcome {
        let jtu = self.engine.jtu_sets(v, r);
        self.nearly_bipolar_sets(jtu)
    }

    pub fn nearly_bipolar_sets(&mut self, jtu: JtuSets) -> VertexOutcome {
        let key = (jtu.t, jtu.j.union(jtu.u));
        let witness = match self.nearly.get(&key) {
            Some(w) => w.clone(),
            None => {
                let m = self.engine.matrix();
                let w = if let Some(c) = spherical_component_over(m, jtu.t) {
                    Some(Witness::component(c))
                } else {
                    let removed = jtu.j.union(jtu.u);
                    m.separates(removed).map(|pair| Witness {
                        condition: Condition::B,
                        t: jtu.t,
                        i: Some(removed),
                        o: None,
                        separated_pair: Some(pair),
                        missing_adjacency: None,
                    })
                };
                self.nearly.insert(key, w.clone());
                w
            }
        };
        VertexOutcome {
            jtu,
            passed: witness.is_none(),
            witness,
        }
    }

    /// Bipolar conditions (a), (b), (c) at `(v, r)`, all in terms of `T`.
    pub fn bipolar(&mut self, v: &Element, r: &Reflection) -> VertexOutcome {
        let jtu = self.engine.jtu_sets(v, r);
        self.bipolar_sets(jtu)
    }

    pub fn bipolar_sets(&mut self, jtu: JtuSets) -> VertexOutcome {
        let t = jtu.t;
        let witness = match self.bipolar.get(&t) {
            Some(w) => w.clone(),
            None => {
                let m = self.matrix();
                let w = if let Some(c) = spherical_component_over(m, t) {
                    Some(Witness::component(c))
                } else {
                    separation_failures(m, t, false)
                        .into_iter()
                        .next()
                        .or_else(|| odd_component_failures(m, t, false).into_iter().next())
                };
                self.bipolar.insert(t, w.clone());
                w
            }
        };
        VertexOutcome {
            jtu,
            passed: witness.is_none(),
            witness,
        }
    }
}
