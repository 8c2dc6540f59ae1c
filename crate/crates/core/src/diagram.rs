//! Subset combinatorics on the Coxeter graph.
//!
//! The graph has the generators as vertices and an edge between `i != j`
//! whenever `m(i, j)` is finite. Labels equal to infinity are non-edges.
//! Irreducibility uses the coarser relation `m(i, j) != 2`.
//!
//! Methods here take sets that must lie inside the generating set; passing
//! an out-of-range index is a programming error and panics.

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::genset::GeneratorSet;
use crate::matrix::CoxeterMatrix;

/// Default rank limit for exhaustive subset enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("generator set {set:?} is not contained in 0..{rank}")]
    OutOfRange { set: GeneratorSet, rank: usize },
    #[error("expected a non-empty generator set")]
    Empty,
    #[error("generator set {0:?} is reducible")]
    Reducible(GeneratorSet),
    #[error("rank {rank} exceeds the enumeration cap {cap}")]
    CapExceeded { rank: usize, cap: usize },
}

/// Borrowed view of the Coxeter graph of a matrix.
#[derive(Clone, Copy)]
pub struct DiagramGraph<'a> {
    matrix: &'a CoxeterMatrix,
}

impl<'a> DiagramGraph<'a> {
    pub fn neighbours(&self, i: usize) -> GeneratorSet {
        self.matrix.edges[i]
    }

    pub fn odd_neighbours(&self, i: usize) -> GeneratorSet {
        self.matrix.odd_edges[i]
    }

    /// Edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + 'a {
        let m = self.matrix;
        (0..m.rank()).flat_map(move |i| {
            m.edges[i]
                .iter()
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// Connected components of the subgraph induced on `within`.
    pub fn components(&self, within: GeneratorSet) -> Vec<GeneratorSet> {
        components_by(within, |i| self.matrix.edges[i])
    }
}

/// Connected components of `within` under the neighbour function, ordered by
/// smallest member.
fn components_by(within: GeneratorSet, neighbours: impl Fn(usize) -> GeneratorSet) -> Vec<GeneratorSet> {
    let mut left = within;
    let mut out = Vec::new();
    while let Some(seed) = left.first() {
        let mut comp = GeneratorSet::singleton(seed);
        let mut frontier = comp;
        while let Some(v) = frontier.first() {
            frontier.remove(v);
            let new = neighbours(v).intersection(within).difference(comp);
            comp = comp.union(new);
            frontier = frontier.union(new);
        }
        left = left.difference(comp);
        out.push(comp);
    }
    out
}

impl CoxeterMatrix {
    pub fn diagram(&self) -> DiagramGraph<'_> {
        DiagramGraph { matrix: self }
    }

    pub fn check_subset(&self, set: GeneratorSet) -> Result<(), DiagramError> {
        if set.is_subset(self.generators()) {
            Ok(())
        } else {
            Err(DiagramError::OutOfRange {
                set,
                rank: self.rank(),
            })
        }
    }

    fn assert_subset(&self, set: GeneratorSet) {
        assert!(
            set.is_subset(self.generators()),
            "generator set {set:?} out of range for rank {}",
            self.rank()
        );
    }

    /// Generators outside `set` commuting with every member of `set`.
    pub fn perp(&self, set: GeneratorSet) -> GeneratorSet {
        self.assert_subset(set);
        let mut out = self.generators().difference(set);
        for j in set {
            out = out.difference(self.non_commuting[j]);
        }
        out
    }

    /// Blocks of `set` under the transitive closure of `m(i, j) != 2`.
    pub fn irreducible_components(&self, set: GeneratorSet) -> Vec<GeneratorSet> {
        self.assert_subset(set);
        components_by(set, |i| self.non_commuting[i])
    }

    pub fn is_irreducible(&self, set: GeneratorSet) -> Result<bool, DiagramError> {
        self.check_subset(set)?;
        if set.is_empty() {
            return Err(DiagramError::Empty);
        }
        Ok(self.irreducible_components(set).len() == 1)
    }

    /// Components of the graph whose edges are the pairs with finite odd label.
    pub fn odd_components(&self) -> Vec<GeneratorSet> {
        components_by(self.generators(), |i| self.odd_edges[i])
    }

    /// The odd component containing `s`.
    pub fn odd_component_of(&self, s: usize) -> GeneratorSet {
        self.odd_components()
            .into_iter()
            .find(|c| c.contains(s))
            .expect("every generator lies in an odd component")
    }

    /// Whether deleting `removed` from the Coxeter graph leaves two vertices
    /// in different components. The witness pair takes the smallest vertex
    /// of the first two surviving components.
    pub fn separates(&self, removed: GeneratorSet) -> Option<(usize, usize)> {
        self.assert_subset(removed);
        let rest = self.generators().difference(removed);
        let comps = self.diagram().components(rest);
        if comps.len() >= 2 {
            Some((comps[0].first().unwrap(), comps[1].first().unwrap()))
        } else {
            None
        }
    }

    /// Every non-empty irreducible subset, in increasing bitmask order.
    pub fn enumerate_irreducible_subsets(&self, cap: usize) -> Result<Vec<GeneratorSet>, DiagramError> {
        if self.rank() > cap {
            return Err(DiagramError::CapExceeded {
                rank: self.rank(),
                cap,
            });
        }
        // Connected sets in the non-commuting graph, grown one neighbour at a time.
        let mut seen: FxHashSet<GeneratorSet> = FxHashSet::default();
        let mut stack: Vec<GeneratorSet> = (0..self.rank()).map(GeneratorSet::singleton).collect();
        seen.extend(stack.iter().copied());
        while let Some(set) = stack.pop() {
            let mut boundary = GeneratorSet::EMPTY;
            for i in set {
                boundary = boundary.union(self.non_commuting[i]);
            }
            for j in boundary.difference(set) {
                let grown = set.with(j);
                if seen.insert(grown) {
                    stack.push(grown);
                }
            }
        }
        let mut out: Vec<GeneratorSet> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }
}
