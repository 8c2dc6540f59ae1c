//! Finiteness of standard parabolic subgroups.
//!
//! An irreducible subset is recognised by the shape of its labelled Coxeter
//! diagram (edges are labels `>= 3`) against the classification of finite
//! irreducible Coxeter groups. No real arithmetic is involved.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::DiagramError;
use crate::genset::GeneratorSet;
use crate::matrix::{CoxeterMatrix, Label};

/// Type of an irreducible Coxeter system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    /// Dihedral group of order `2m` with `m` other than 3 or 4.
    I2(u32),
    NonSpherical,
}

impl CoxeterType {
    pub fn is_finite(self) -> bool {
        self != CoxeterType::NonSpherical
    }

    pub fn rank(self) -> Option<usize> {
        Some(match self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) => n,
            CoxeterType::E6 => 6,
            CoxeterType::E7 => 7,
            CoxeterType::E8 => 8,
            CoxeterType::F4 | CoxeterType::H4 => 4,
            CoxeterType::H3 => 3,
            CoxeterType::I2(_) => 2,
            CoxeterType::NonSpherical => return None,
        })
    }

    /// Group order, `None` for infinite groups.
    pub fn order(self) -> Option<u128> {
        fn factorial(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        Some(match self {
            CoxeterType::A(n) => factorial(n + 1),
            CoxeterType::B(n) => (1u128 << n) * factorial(n),
            CoxeterType::D(n) => (1u128 << (n - 1)) * factorial(n),
            CoxeterType::E6 => 51_840,
            CoxeterType::E7 => 2_903_040,
            CoxeterType::E8 => 696_729_600,
            CoxeterType::F4 => 1_152,
            CoxeterType::H3 => 120,
            CoxeterType::H4 => 14_400,
            CoxeterType::I2(m) => 2 * m as u128,
            CoxeterType::NonSpherical => return None,
        })
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::E6 => f.write_str("E6"),
            CoxeterType::E7 => f.write_str("E7"),
            CoxeterType::E8 => f.write_str("E8"),
            CoxeterType::F4 => f.write_str("F4"),
            CoxeterType::H3 => f.write_str("H3"),
            CoxeterType::H4 => f.write_str("H4"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
            CoxeterType::NonSpherical => f.write_str("non-spherical"),
        }
    }
}

impl CoxeterMatrix {
    /// Type of the irreducible subset `set`.
    pub fn classify_irreducible(&self, set: GeneratorSet) -> Result<CoxeterType, DiagramError> {
        if !self.is_irreducible(set)? {
            return Err(DiagramError::Reducible(set));
        }
        Ok(classify_tree(self, set))
    }

    /// Whether `W_set` is finite. The empty set is spherical.
    pub fn is_spherical(&self, set: GeneratorSet) -> bool {
        self.irreducible_components(set)
            .into_iter()
            .all(|c| classify_tree(self, c).is_finite())
    }

    /// All labels inside `set` are finite.
    pub fn is_2_spherical(&self, set: GeneratorSet) -> bool {
        set.iter().all(|i| {
            set.difference(GeneratorSet::singleton(i))
                .is_subset(self.diagram().neighbours(i))
        })
    }

    /// Irreducible components of the whole generating set generating finite groups.
    pub fn spherical_factors(&self) -> Vec<GeneratorSet> {
        self.irreducible_components(self.generators())
            .into_iter()
            .filter(|&c| self.is_spherical(c))
            .collect()
    }
}

/// Classifies a connected (in the `m != 2` sense) subset.
fn classify_tree(m: &CoxeterMatrix, set: GeneratorSet) -> CoxeterType {
    let members: Vec<usize> = set.iter().collect();
    let n = members.len();
    match n {
        0 => unreachable!("irreducible sets are non-empty"),
        1 => return CoxeterType::A(1),
        2 => {
            return match m.label(members[0], members[1]) {
                Label::Infinite => CoxeterType::NonSpherical,
                Label::Finite(3) => CoxeterType::A(2),
                Label::Finite(4) => CoxeterType::B(2),
                Label::Finite(k) => CoxeterType::I2(k),
            }
        }
        _ => {}
    }

    // Edge list with labels >= 3; the component is connected by these edges.
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            match m.label(members[a], members[b]) {
                Label::Finite(2) => {}
                Label::Finite(k) if k <= 5 => {
                    degree[a] += 1;
                    degree[b] += 1;
                    edges.push((a, b, k));
                }
                // Rank >= 3 with a label >= 6 or infinity is never finite.
                _ => return CoxeterType::NonSpherical,
            }
        }
    }
    if edges.len() != n - 1 {
        return CoxeterType::NonSpherical;
    }
    let heavy: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 > 3).collect();
    let max_degree = *degree.iter().max().unwrap();
    if heavy.len() > 1 || max_degree > 3 {
        return CoxeterType::NonSpherical;
    }
    let is_leaf = |v: usize| degree[v] == 1;

    if let Some(&&(a, b, k)) = heavy.first() {
        if max_degree > 2 {
            return CoxeterType::NonSpherical;
        }
        let at_end = is_leaf(a) || is_leaf(b);
        return match (k, n, at_end) {
            (4, _, true) => CoxeterType::B(n),
            (4, 4, false) => CoxeterType::F4,
            (5, 3, true) => CoxeterType::H3,
            (5, 4, true) => CoxeterType::H4,
            _ => CoxeterType::NonSpherical,
        };
    }

    // Simply laced tree.
    if max_degree <= 2 {
        return CoxeterType::A(n);
    }
    let centre = degree.iter().position(|&d| d == 3).unwrap();
    let mut arms: Vec<usize> = Vec::with_capacity(3);
    for &(a, b, _) in &edges {
        let start = if a == centre {
            b
        } else if b == centre {
            a
        } else {
            continue;
        };
        // Walk the arm until its leaf.
        let (mut prev, mut cur, mut len) = (centre, start, 1);
        loop {
            let next = edges.iter().find_map(|&(x, y, _)| {
                if x == cur && y != prev {
                    Some(y)
                } else if y == cur && x != prev {
                    Some(x)
                } else {
                    None
                }
            });
            match next {
                Some(nx) if degree[cur] == 2 => {
                    prev = cur;
                    cur = nx;
                    len += 1;
                }
                _ => break,
            }
        }
        if degree[cur] == 3 {
            // A second branch point.
            return CoxeterType::NonSpherical;
        }
        arms.push(len);
    }
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => CoxeterType::D(n),
        [1, 2, 2] => CoxeterType::E6,
        [1, 2, 3] => CoxeterType::E7,
        [1, 2, 4] => CoxeterType::E8,
        _ => CoxeterType::NonSpherical,
    }
}
