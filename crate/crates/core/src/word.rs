//! Exact word problem, normal forms and reflection calculus.
//!
//! Elements are stored as ShortLex normal forms: the lexicographically least
//! reduced word, with generators ordered by index. The set of such words is
//! closed under taking prefixes and suffixes, which the multiplication
//! routine relies on.
//!
//! Right multiplication `w -> w s` is decided by the dihedral coset
//! decomposition. If `t` is the last letter of `w`, write `w = x y` with `x`
//! minimal in `x W_{s,t}` and `y` in `W_{s,t}`. Walking down from `w`
//! alternately by `t, s, t, ...` reaches `x` after exactly `l(y)` steps, and
//! `s` is a right descent of `w` iff `l(y) = m(s, t)`. Every step is a
//! multiplication on a strictly shorter word, so the recursion is exact and
//! terminates; results are memoised per normal form.

use std::cell::RefCell;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genset::GeneratorSet;
use crate::matrix::CoxeterMatrix;

/// Generator index inside a word.
pub type Gen = u8;

/// Default cap on the length of user-supplied words.
pub const DEFAULT_MAX_WORD_LENGTH: usize = 40;

/// Default number of memoised normal forms before the cache is flushed.
pub const DEFAULT_MEMO_CAPACITY: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {letter} is not a generator index below {rank}")]
    BadLetter { letter: usize, rank: usize },
    #[error("word of length {len} exceeds the length cap {cap}")]
    TooLong { len: usize, cap: usize },
    #[error("unknown generator name {0:?}")]
    UnknownName(String),
    #[error("{0} is not an involution")]
    NotInvolution(String),
    #[error("{0} is not a reflection")]
    NotReflection(String),
}

/// A group element, held as its ShortLex normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element {
    nf: Vec<Gen>,
}

impl Element {
    pub fn identity() -> Self {
        Element { nf: Vec::new() }
    }

    pub fn generator(s: usize) -> Self {
        Element { nf: vec![s as Gen] }
    }

    pub fn normal_form(&self) -> &[Gen] {
        &self.nf
    }

    pub fn length(&self) -> usize {
        self.nf.len()
    }

    pub fn is_identity(&self) -> bool {
        self.nf.is_empty()
    }

    /// The generator index when the element is a single generator.
    pub fn as_generator(&self) -> Option<usize> {
        match self.nf.as_slice() {
            [s] => Some(*s as usize),
            _ => None,
        }
    }

    /// Letters occurring in the normal form.
    pub fn support(&self) -> GeneratorSet {
        self.nf.iter().map(|&s| s as usize).collect()
    }

    /// Renders the normal form with the matrix's generator names.
    pub fn display<'a>(&'a self, matrix: &'a CoxeterMatrix) -> impl fmt::Display + 'a {
        DisplayWord { word: &self.nf, matrix }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nf.is_empty() {
            return f.write_str("e");
        }
        for (k, s) in self.nf.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

struct DisplayWord<'a> {
    word: &'a [Gen],
    matrix: &'a CoxeterMatrix,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for (k, &s) in self.word.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.matrix.name(s as usize))?;
        }
        Ok(())
    }
}

/// A reflection together with the conjugation chain certifying it.
///
/// Conjugating `element` successively by the letters of `descent_chain`
/// yields the generator `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Reflection {
    element: Element,
    descent_chain: Vec<Gen>,
    base: Gen,
}

impl Reflection {
    pub fn generator(s: usize) -> Self {
        Reflection {
            element: Element::generator(s),
            descent_chain: Vec::new(),
            base: s as Gen,
        }
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn descent_chain(&self) -> &[Gen] {
        &self.descent_chain
    }

    /// The generator the reflection is conjugate to via its chain.
    pub fn base(&self) -> usize {
        self.base as usize
    }
}

/// Distance from a vertex to a wall, a positive half-integer stored as the
/// odd integer `2d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WallDistance(pub u32);

impl WallDistance {
    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Whether the vertex lies in the closed `k`-neighbourhood of the wall.
    pub fn within(self, k: u32) -> bool {
        self.0 <= 2 * k
    }
}

impl fmt::Display for WallDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// The sets `J`, `T`, `U` attached to a vertex and a reflection, translated
/// to the standard generating set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JtuSets {
    /// Generators moving the vertex towards the wall, plus the wall's own
    /// generator when the vertex is adjacent to it.
    pub j: GeneratorSet,
    /// Support of the translated reflection.
    pub t: GeneratorSet,
    /// Generators other than the translated reflection commuting with it.
    pub u: GeneratorSet,
}

#[derive(Default)]
struct Node {
    desc_known: u64,
    desc: u64,
    products: Vec<Option<Box<[Gen]>>>,
}

struct Memo {
    nodes: FxHashMap<Box<[Gen]>, Node>,
    capacity: usize,
}

/// Word-problem engine for one Coxeter matrix.
///
/// The memo table grows during queries, so an engine is used from one thread
/// at a time; clone the matrix into separate engines for parallel work.
pub struct WordEngine {
    matrix: CoxeterMatrix,
    // m(i, j) with 0 for infinity.
    orders: Vec<u32>,
    memo: RefCell<Memo>,
    max_word_length: usize,
}

impl fmt::Debug for WordEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordEngine")
            .field("rank", &self.matrix.rank())
            .field("memoised", &self.memo.borrow().nodes.len())
            .finish()
    }
}

impl WordEngine {
    pub fn new(matrix: &CoxeterMatrix) -> Self {
        let n = matrix.rank();
        let mut orders = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                orders[i * n + j] = matrix.order(i, j).unwrap_or(0);
            }
        }
        WordEngine {
            matrix: matrix.clone(),
            orders,
            memo: RefCell::new(Memo {
                nodes: FxHashMap::default(),
                capacity: DEFAULT_MEMO_CAPACITY,
            }),
            max_word_length: DEFAULT_MAX_WORD_LENGTH,
        }
    }

    pub fn with_max_word_length(mut self, cap: usize) -> Self {
        self.max_word_length = cap;
        self
    }

    pub fn with_memo_capacity(self, capacity: usize) -> Self {
        self.memo.borrow_mut().capacity = capacity.max(1);
        self
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn memoised(&self) -> usize {
        self.memo.borrow().nodes.len()
    }

    fn order(&self, s: Gen, t: Gen) -> Option<u32> {
        match self.orders[s as usize * self.rank() + t as usize] {
            0 => None,
            m => Some(m),
        }
    }

    // ---- memo plumbing -------------------------------------------------

    fn cached_desc(&self, w: &[Gen], s: Gen) -> Option<bool> {
        let memo = self.memo.borrow();
        let node = memo.nodes.get(w)?;
        let bit = 1u64 << s;
        (node.desc_known & bit != 0).then_some(node.desc & bit != 0)
    }

    fn cached_product(&self, w: &[Gen], s: Gen) -> Option<Vec<Gen>> {
        let memo = self.memo.borrow();
        let node = memo.nodes.get(w)?;
        node.products.get(s as usize)?.as_deref().map(<[Gen]>::to_vec)
    }

    fn with_node(&self, w: &[Gen], f: impl FnOnce(&mut Node)) {
        let mut memo = self.memo.borrow_mut();
        if memo.nodes.len() >= memo.capacity {
            memo.nodes.clear();
        }
        if let Some(node) = memo.nodes.get_mut(w) {
            f(node);
        } else {
            let mut node = Node::default();
            f(&mut node);
            memo.nodes.insert(w.into(), node);
        }
    }

    fn store_desc(&self, w: &[Gen], s: Gen, value: bool) {
        let bit = 1u64 << s;
        self.with_node(w, |node| {
            node.desc_known |= bit;
            if value {
                node.desc |= bit;
            }
        });
    }

    fn store_product(&self, w: &[Gen], s: Gen, product: &[Gen]) {
        let rank = self.rank();
        self.with_node(w, |node| {
            if node.products.is_empty() {
                node.products = vec![None; rank];
            }
            node.products[s as usize] = Some(product.into());
        });
    }

    // ---- core recursion ------------------------------------------------

    /// Whether `s` is a right descent of the normal form `w`.
    fn is_descent(&self, w: &[Gen], s: Gen) -> bool {
        let Some(&t) = w.last() else {
            return false;
        };
        if t == s {
            return true;
        }
        if let Some(hit) = self.cached_desc(w, s) {
            return hit;
        }
        let (desc, _) = self.dihedral_walk(&w[..w.len() - 1], t, s);
        self.store_desc(w, s, desc);
        desc
    }

    /// `below` is `w t` for an element `w` having `t` as right descent.
    /// Walks down from `w` alternately by `t, s, t, ...` and reports whether
    /// `s` is a right descent of `w`, together with the element reached: the
    /// minimal representative of `w W_{s,t}` when the answer is yes.
    fn dihedral_walk(&self, below: &[Gen], t: Gen, s: Gen) -> (bool, Vec<Gen>) {
        let m = self.order(s, t);
        let mut z = below.to_vec();
        let mut k = 1u32;
        loop {
            if m == Some(k) {
                return (true, z);
            }
            let a = if k % 2 == 1 { s } else { t };
            if !self.is_descent(&z, a) {
                return (false, z);
            }
            z = self.mul_down(&z, a);
            k += 1;
        }
    }

    /// Alternating word of length `len` in `{s, t}` ending with `t`.
    fn alternating_ending(len: u32, s: Gen, t: Gen) -> impl Iterator<Item = Gen> {
        (0..len).map(move |i| if (len - 1 - i).is_multiple_of(2) { t } else { s })
    }

    /// Product `w s` when `s` is a right descent of `w`.
    fn mul_down(&self, w: &[Gen], s: Gen) -> Vec<Gen> {
        let t = *w.last().expect("descent of the identity");
        if t == s {
            return w[..w.len() - 1].to_vec();
        }
        if let Some(hit) = self.cached_product(w, s) {
            return hit;
        }
        let (desc, x) = self.dihedral_walk(&w[..w.len() - 1], t, s);
        debug_assert!(desc, "mul_down called on an ascent");
        let m = self.order(s, t).expect("descent through an infinite label");
        // w = x * longest(s, t) and w s = x * (alternating word of length m - 1 ending in t).
        let mut z = x;
        for a in Self::alternating_ending(m - 1, s, t) {
            z = self.mul_up(&z, a);
        }
        self.store_product(w, s, &z);
        z
    }

    /// Product `w s` when `s` is not a right descent of `w`.
    fn mul_up(&self, w: &[Gen], s: Gen) -> Vec<Gen> {
        if w.is_empty() {
            return vec![s];
        }
        if let Some(hit) = self.cached_product(w, s) {
            return hit;
        }
        // v = w s. Its normal form ends in some right descent d and its prefix
        // is the normal form of v d, so take the least candidate over d.
        let mut best: Vec<Gen> = w.to_vec();
        best.push(s);
        for d in 0..self.rank() as Gen {
            if d == s {
                continue;
            }
            let (desc, x) = self.dihedral_walk(w, s, d);
            if !desc {
                continue;
            }
            let m = self.order(d, s).expect("descent through an infinite label");
            let mut cand = x;
            for a in Self::alternating_ending(m - 1, d, s) {
                cand = self.mul_up(&cand, a);
            }
            cand.push(d);
            if cand < best {
                best = cand;
            }
        }
        self.store_product(w, s, &best);
        best
    }

    /// Normal form of `w s` for a normal form `w`.
    fn rmul(&self, w: &[Gen], s: Gen) -> Vec<Gen> {
        if self.is_descent(w, s) {
            self.mul_down(w, s)
        } else {
            self.mul_up(w, s)
        }
    }

    // ---- public operations ---------------------------------------------

    fn check_letters(&self, word: &[usize]) -> Result<(), WordError> {
        if let Some(&bad) = word.iter().find(|&&s| s >= self.rank()) {
            return Err(WordError::BadLetter {
                letter: bad,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// Normal form of an arbitrary word, validating letters and the length cap.
    pub fn element_checked(&self, word: &[usize]) -> Result<Element, WordError> {
        self.check_letters(word)?;
        if word.len() > self.max_word_length {
            return Err(WordError::TooLong {
                len: word.len(),
                cap: self.max_word_length,
            });
        }
        Ok(self.shortlex(word))
    }

    /// Parses a whitespace- or dot-separated word of generator names.
    pub fn parse_word(&self, text: &str) -> Result<Element, WordError> {
        let mut letters = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == '.' || c == '*').filter(|t| !t.is_empty()) {
            if token == "e" || token == "1" {
                continue;
            }
            let idx = self
                .matrix
                .index_of(token)
                .ok_or_else(|| WordError::UnknownName(token.to_string()))?;
            letters.push(idx);
        }
        self.element_checked(&letters)
    }

    /// A reduced word equal to `word`.
    pub fn reduce(&self, word: &[usize]) -> Vec<usize> {
        self.shortlex(word).nf.iter().map(|&s| s as usize).collect()
    }

    /// ShortLex normal form of `word`. Panics on letters outside the rank.
    pub fn shortlex(&self, word: &[usize]) -> Element {
        self.check_letters(word).expect("invalid letter");
        let mut nf = Vec::with_capacity(word.len());
        for &s in word {
            nf = self.rmul(&nf, s as Gen);
        }
        Element { nf }
    }

    pub fn length(&self, word: &[usize]) -> usize {
        self.shortlex(word).length()
    }

    pub fn mul_gen(&self, a: &Element, s: usize) -> Element {
        assert!(s < self.rank());
        Element {
            nf: self.rmul(&a.nf, s as Gen),
        }
    }

    /// Whether `l(a s) < l(a)`.
    pub fn is_right_descent(&self, a: &Element, s: usize) -> bool {
        assert!(s < self.rank());
        self.is_descent(&a.nf, s as Gen)
    }

    /// Whether `l(s a) < l(a)`.
    pub fn is_left_descent(&self, s: usize, a: &Element) -> bool {
        self.left_mul(s, a).length() < a.length()
    }

    pub fn left_mul(&self, s: usize, a: &Element) -> Element {
        self.product(&Element::generator(s), a)
    }

    pub fn product(&self, a: &Element, b: &Element) -> Element {
        let mut nf = a.nf.clone();
        for &s in &b.nf {
            nf = self.rmul(&nf, s);
        }
        Element { nf }
    }

    pub fn inverse(&self, a: &Element) -> Element {
        let mut nf = Vec::with_capacity(a.nf.len());
        for &s in a.nf.iter().rev() {
            nf = self.rmul(&nf, s);
        }
        Element { nf }
    }

    /// `v^-1 x v`.
    pub fn conjugate(&self, x: &Element, v: &Element) -> Element {
        let mut nf = Vec::new();
        for &s in v.nf.iter().rev() {
            nf = self.rmul(&nf, s);
        }
        for &s in x.nf.iter().chain(v.nf.iter()) {
            nf = self.rmul(&nf, s);
        }
        Element { nf }
    }

    /// `s x s`.
    pub fn conjugate_by_generator(&self, s: usize, x: &Element) -> Element {
        let mut nf = vec![s as Gen];
        for &a in x.nf.iter() {
            nf = self.rmul(&nf, a);
        }
        nf = self.rmul(&nf, s as Gen);
        Element { nf }
    }

    pub fn is_involution(&self, w: &Element) -> bool {
        !w.is_identity() && self.product(w, w).is_identity()
    }

    /// Certifies `w` as a reflection by conjugating it down to a generator.
    pub fn is_reflection(&self, w: &Element) -> Option<Reflection> {
        if w.length().is_multiple_of(2) || !self.is_involution(w) {
            return None;
        }
        let mut cur = w.clone();
        let mut chain = Vec::new();
        while cur.length() > 1 {
            let step = (0..self.rank()).find_map(|s| {
                let next = self.conjugate_by_generator(s, &cur);
                (next.length() < cur.length()).then_some((s, next))
            });
            let (s, next) = step?;
            chain.push(s as Gen);
            cur = next;
        }
        Some(Reflection {
            element: w.clone(),
            descent_chain: chain,
            base: cur.nf[0],
        })
    }

    /// Reflection `v s v^-1` dual to the Cayley-graph edge `(v, v s)`.
    pub fn edge_reflection(&self, v: &Element, s: usize) -> Reflection {
        let vinv = self.inverse(v);
        let mut nf = v.nf.clone();
        nf = self.rmul(&nf, s as Gen);
        for &a in &vinv.nf {
            nf = self.rmul(&nf, a);
        }
        Reflection {
            element: Element { nf },
            descent_chain: v.nf.clone(),
            base: s as Gen,
        }
    }

    /// Smallest `J` with `w` in `W_J`.
    pub fn support(&self, w: &Element) -> GeneratorSet {
        w.support()
    }

    /// Whether the wall of `r` separates the vertices `u` and `v`.
    pub fn wall_separates(&self, r: &Reflection, u: &Element, v: &Element) -> bool {
        let side = |x: &Element| self.product(&r.element, x).length() < x.length();
        side(u) != side(v)
    }

    /// Distance from `v` to the wall of `r`: half of `l(v^-1 r v)`.
    pub fn wall_distance(&self, v: &Element, r: &Reflection) -> WallDistance {
        WallDistance(self.conjugate(&r.element, v).length() as u32)
    }

    /// The sets `J`, `T`, `U` for the vertex `v` and reflection `r`.
    pub fn jtu_sets(&self, v: &Element, r: &Reflection) -> JtuSets {
        let moved = self.conjugate(&r.element, v);
        self.jtu_of_translated(&moved)
    }

    /// `J`, `T`, `U` for the reflection `r' = v^-1 r v` already translated to
    /// the identity vertex.
    pub fn jtu_of_translated(&self, moved: &Element) -> JtuSets {
        let t = moved.support();
        let mut j = GeneratorSet::EMPTY;
        let mut u = GeneratorSet::EMPTY;
        let own = moved.as_generator();
        for s in 0..self.rank() {
            if own == Some(s) {
                j.insert(s);
                continue;
            }
            let c = self.conjugate_by_generator(s, moved);
            if c.length() < moved.length() {
                j.insert(s);
            } else if c == *moved {
                u.insert(s);
            }
        }
        JtuSets { j, t, u }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::matrix::Label;

    fn dihedral(m: u32) -> WordEngine {
        WordEngine::new(&CoxeterMatrix::from_fn(2, |_, _| Label::Finite(m)))
    }

    #[test]
    fn involutions_cancel() {
        let e = dihedral(3);
        assert_eq!(e.reduce(&[0, 0]), Vec::<usize>::new());
        assert_eq!(e.reduce(&[0, 1, 0, 1, 0, 1]), Vec::<usize>::new());
    }

    #[test]
    fn braid_relation_in_a2() {
        let e = dihedral(3);
        // stst = ts
        assert_eq!(e.reduce(&[0, 1, 0, 1]), vec![1, 0]);
        assert_eq!(e.shortlex(&[1, 0, 1]).normal_form(), &[0, 1, 0]);
        assert!(e.shortlex(&[]).is_identity());
    }

    #[test]
    fn dihedral_orders() {
        for m in 2..=7u32 {
            let e = dihedral(m);
            let word: Vec<usize> = (0..2 * m as usize).map(|i| i % 2).collect();
            assert!(e.shortlex(&word).is_identity(), "m = {m}");
            let half: Vec<usize> = (0..m as usize).map(|i| i % 2).collect();
            assert_eq!(e.length(&half), m as usize);
            let longer: Vec<usize> = (0..m as usize + 1).map(|i| i % 2).collect();
            assert_eq!(e.length(&longer), m as usize - 1);
        }
        let dinf = WordEngine::new(&catalog::load("dihedral-inf").unwrap());
        let word: Vec<usize> = (0..30).map(|i| i % 2).collect();
        assert_eq!(dinf.length(&word), 30);
    }

    #[test]
    fn group_operations() {
        let a3 = WordEngine::new(&catalog::load("A3").unwrap());
        let a = a3.shortlex(&[0, 1, 2, 1]);
        let inv = a3.inverse(&a);
        assert!(a3.product(&a, &inv).is_identity());
        assert_eq!(a3.product(&Element::identity(), &a), a);
        assert_eq!(a3.shortlex(&[0, 1, 2]).length(), 3);
    }

    #[test]
    fn reflections() {
        let a2 = dihedral(3);
        let s = Element::generator(0);
        let r = a2.is_reflection(&s).unwrap();
        assert!(r.descent_chain().is_empty());
        let sts = a2.shortlex(&[0, 1, 0]);
        let r = a2.is_reflection(&sts).unwrap();
        assert_eq!(r.descent_chain().len(), 1);
        assert!(a2.is_reflection(&a2.shortlex(&[0, 1])).is_none());

        let fig2 = catalog::load("example-fig2").unwrap();
        let e = WordEngine::new(&fig2);
        let s1s6 = e.shortlex(&[0, 5]);
        assert!(e.is_involution(&s1s6));
        assert!(e.is_reflection(&s1s6).is_none());
    }

    #[test]
    fn supports() {
        let a2 = dihedral(3);
        assert_eq!(a2.support(&Element::generator(1)), GeneratorSet::singleton(1));
        assert_eq!(a2.support(&a2.shortlex(&[0, 1, 0])), GeneratorSet::full(2));
    }

    #[test]
    fn wall_distances() {
        let a2 = dihedral(3);
        let s = Reflection::generator(0);
        assert_eq!(a2.wall_distance(&Element::identity(), &s), WallDistance(1));
        assert_eq!(a2.wall_distance(&Element::generator(0), &s), WallDistance(1));
        assert_eq!(a2.wall_distance(&Element::generator(1), &s), WallDistance(3));
        assert_eq!(WallDistance(3).to_string(), "3/2");
        assert!(WallDistance(3).within(2));
        assert!(!WallDistance(5).within(2));
        assert!(!WallDistance(1).within(0));
    }

    #[test]
    fn separation_by_walls() {
        let dinf = WordEngine::new(&catalog::load("dihedral-inf").unwrap());
        let s = Reflection::generator(0);
        assert!(dinf.wall_separates(&s, &Element::identity(), &Element::generator(0)));
        let ts = dinf.shortlex(&[1, 0]);
        assert!(!dinf.wall_separates(&s, &ts, &ts));
    }

    #[test]
    fn jtu_for_generators() {
        let fig2 = catalog::load("example-fig2").unwrap();
        let e = WordEngine::new(&fig2);
        let sets = e.jtu_sets(&Element::identity(), &Reflection::generator(0));
        assert_eq!(sets.t, GeneratorSet::singleton(0));
        assert_eq!(sets.j, GeneratorSet::singleton(0));
        assert_eq!(sets.u, fig2.perp(GeneratorSet::singleton(0)));
    }

    #[test]
    fn parse_names() {
        let fig2 = catalog::load("example-fig2").unwrap();
        let e = WordEngine::new(&fig2);
        assert_eq!(e.parse_word("s1 s6").unwrap(), e.shortlex(&[0, 5]));
        assert_eq!(e.parse_word("s1.s1").unwrap(), Element::identity());
        assert_eq!(e.parse_word("s9"), Err(WordError::UnknownName("s9".into())));
        let short = WordEngine::new(&fig2).with_max_word_length(2);
        assert!(matches!(short.parse_word("s1 s2 s3"), Err(WordError::TooLong { .. })));
        assert_eq!(
            e.element_checked(&[6]),
            Err(WordError::BadLetter { letter: 6, rank: 6 })
        );
    }

    #[test]
    fn memo_flush_keeps_results_exact() {
        let tri = catalog::load("triangle-444").unwrap();
        let small = WordEngine::new(&tri).with_memo_capacity(8);
        let big = WordEngine::new(&tri);
        let word = [0, 1, 2, 0, 2, 1, 0, 1, 2, 2, 1, 0, 1, 0, 2];
        assert_eq!(small.shortlex(&word), big.shortlex(&word));
    }
}
