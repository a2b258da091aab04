//! Edge colorings of `K_n` and the color/repeat counting primitives.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Color = u32;

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of unordered pairs of an `n`-set.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// An unordered pair of distinct vertices, stored with the smaller vertex first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair(Vertex, Vertex);

impl Pair {
    /// Panics if `a == b`.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b, "a pair needs two distinct vertices");
        if a < b {
            Pair(a, b)
        } else {
            Pair(b, a)
        }
    }

    pub fn try_new(a: Vertex, b: Vertex, n: usize) -> Result<Self> {
        for x in [a, b] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if a == b {
            return Err(Error::InvalidEdge {
                edge: vec![a, b],
                reason: "loop".into(),
            });
        }
        Ok(Pair::new(a, b))
    }

    pub fn u(self) -> Vertex {
        self.0
    }

    pub fn v(self) -> Vertex {
        self.1
    }

    pub fn contains(self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    pub fn is_disjoint(self, other: Pair) -> bool {
        !other.contains(self.0) && !other.contains(self.1)
    }

    /// Position of the pair in lexicographic order among all pairs of `0..n`.
    pub fn index(self, n: usize) -> usize {
        let (u, v) = (self.0, self.1);
        u * (2 * n - u - 1) / 2 + (v - u - 1)
    }

    /// All pairs of `0..n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Pair> {
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| Pair(u, v)))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// A sorted set of distinct vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    /// Vertices whose bit is set in `mask`.
    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn members(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.0.iter().filter(|&&x| other.contains(x)).count()
    }

    /// Pairs inside the set, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        let m = &self.0;
        (0..m.len()).flat_map(move |i| (i + 1..m.len()).map(move |j| Pair(m[i], m[j])))
    }

    pub fn check_bounds(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&x) if x >= n => Err(Error::VertexOutOfRange { vertex: x, n }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

/// A possibly partial assignment of colors to the pairs of `K_n`.
///
/// Uncolored is an explicit state. Color ids are arbitrary non-negative
/// integers until [`EdgeColoring::normalized`] relabels them densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    slots: Vec<Option<Color>>,
    usage: BTreeMap<Color, usize>,
}

impl EdgeColoring {
    /// An entirely uncolored `K_n`.
    pub fn uncolored(n: usize) -> Self {
        EdgeColoring {
            n,
            slots: vec![None; pair_count(n)],
            usage: BTreeMap::new(),
        }
    }

    /// Every pair gets its own color, numbered in lexicographic pair order.
    pub fn rainbow(n: usize) -> Self {
        Self::from_fn(n, |p| p.index(n) as Color)
    }

    /// Same color on every pair.
    pub fn monochromatic(n: usize, color: Color) -> Self {
        Self::from_fn(n, |_| color)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Pair) -> Color) -> Self {
        let mut c = Self::uncolored(n);
        for p in Pair::all(n) {
            c.put(p, Some(f(p)));
        }
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct color ids in use.
    pub fn palette_size(&self) -> usize {
        self.usage.len()
    }

    /// Number of pairs carrying `color`.
    pub fn multiplicity(&self, color: Color) -> usize {
        self.usage.get(&color).copied().unwrap_or(0)
    }

    pub fn color(&self, pair: Pair) -> Option<Color> {
        self.slots[pair.index(self.n)]
    }

    pub fn color_of(&self, u: Vertex, v: Vertex) -> Option<Color> {
        self.color(Pair::new(u, v))
    }

    pub fn set(&mut self, pair: Pair, color: Color) -> Result<()> {
        Pair::try_new(pair.u(), pair.v(), self.n)?;
        self.put(pair, Some(color));
        Ok(())
    }

    pub fn clear(&mut self, pair: Pair) {
        self.put(pair, None);
    }

    fn put(&mut self, pair: Pair, color: Option<Color>) {
        let slot = &mut self.slots[pair.index(self.n)];
        if let Some(old) = slot.take() {
            let cnt = self.usage.get_mut(&old).expect("usage tracks every slot");
            *cnt -= 1;
            if *cnt == 0 {
                self.usage.remove(&old);
            }
        }
        if let Some(c) = color {
            *self.usage.entry(c).or_insert(0) += 1;
        }
        *slot = color;
    }

    pub fn is_total(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    /// First uncolored pair in lexicographic order.
    pub fn first_uncolored(&self) -> Option<Pair> {
        Pair::all(self.n).find(|&p| self.color(p).is_none())
    }

    pub fn require_total(&self) -> Result<()> {
        match self.first_uncolored() {
            Some(p) => Err(Error::PartialColoring { u: p.u(), v: p.v() }),
            None => Ok(()),
        }
    }

    /// Colored pairs in lexicographic pair order.
    pub fn colored_pairs(&self) -> impl Iterator<Item = (Pair, Color)> + '_ {
        Pair::all(self.n).filter_map(move |p| self.color(p).map(|c| (p, c)))
    }

    /// Pairs of each color, each class in lexicographic order.
    pub fn color_classes(&self) -> BTreeMap<Color, Vec<Pair>> {
        let mut classes: BTreeMap<Color, Vec<Pair>> = BTreeMap::new();
        for (p, c) in self.colored_pairs() {
            classes.entry(c).or_default().push(p);
        }
        classes
    }

    /// `c(S)`: the number of colors on pairs inside `s`.
    pub fn count_colors(&self, s: &VertexSet) -> Result<usize> {
        s.check_bounds(self.n)?;
        let mut seen = Vec::with_capacity(s.len() * s.len() / 2);
        for p in s.pairs() {
            match self.color(p) {
                Some(c) => seen.push(c),
                None => return Err(Error::PartialColoring { u: p.u(), v: p.v() }),
            }
        }
        seen.sort_unstable();
        seen.dedup();
        Ok(seen.len())
    }

    /// `r(S) = C(|S|,2) - c(S)`.
    pub fn count_repeats(&self, s: &VertexSet) -> Result<usize> {
        Ok(pair_count(s.len()) - self.count_colors(s)?)
    }

    /// Relabels colors to `0..k` in order of first use along lexicographic
    /// pair order. Uncolored pairs stay uncolored.
    pub fn normalized(&self) -> EdgeColoring {
        let mut map: BTreeMap<Color, Color> = BTreeMap::new();
        let mut out = EdgeColoring::uncolored(self.n);
        for (p, c) in self.colored_pairs() {
            let next = map.len() as Color;
            let id = *map.entry(c).or_insert(next);
            out.put(p, Some(id));
        }
        out
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalized()
    }

    /// Dense color ids indexed by pair index. Requires a total coloring.
    pub(crate) fn dense_ids(&self) -> Result<Vec<u32>> {
        self.require_total()?;
        let norm = self.normalized();
        Ok(norm.slots.iter().map(|c| c.expect("total")).collect())
    }

    /// Colors at each vertex: number of edges of color `c` incident to `v`.
    pub fn vertex_color_degrees(&self, v: Vertex) -> BTreeMap<Color, usize> {
        let mut out = BTreeMap::new();
        for w in (0..self.n).filter(|&w| w != v) {
            if let Some(c) = self.color_of(v, w) {
                *out.entry(c).or_insert(0) += 1;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn block_coloring() -> EdgeColoring {
        // K4 on {0,1,2,3}: {0,1} and {2,3} share color 0, the rest unique.
        let mut c = EdgeColoring::uncolored(4);
        let mut next = 1;
        for p in Pair::all(4) {
            if p == Pair::new(0, 1) || p == Pair::new(2, 3) {
                c.set(p, 0).unwrap();
            } else {
                c.set(p, next).unwrap();
                next += 1;
            }
        }
        c
    }

    #[test]
    fn pair_index_is_lexicographic_rank() {
        for n in 2..9 {
            for (i, p) in Pair::all(n).enumerate() {
                assert_eq!(p.index(n), i);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(13, 6), 1716);
        assert_eq!(binomial(16, 6), 8008);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn count_colors_examples() {
        let mono = EdgeColoring::monochromatic(3, 0);
        let tri = VertexSet::full(3);
        assert_eq!(mono.count_colors(&tri).unwrap(), 1);
        assert_eq!(mono.count_repeats(&tri).unwrap(), 2);

        let rainbow = EdgeColoring::rainbow(4);
        assert_eq!(rainbow.count_colors(&VertexSet::full(4)).unwrap(), 6);
        assert_eq!(rainbow.count_repeats(&VertexSet::full(4)).unwrap(), 0);

        assert_eq!(block_coloring().count_colors(&VertexSet::full(4)).unwrap(), 5);
    }

    #[test]
    fn partial_coloring_is_reported() {
        let mut c = EdgeColoring::rainbow(4);
        c.clear(Pair::new(1, 3));
        let err = c.count_colors(&VertexSet::full(4)).unwrap_err();
        assert!(matches!(err, Error::PartialColoring { u: 1, v: 3 }));
        // a set avoiding the hole is fine
        assert_eq!(c.count_colors(&VertexSet::new([0, 1, 2])).unwrap(), 3);
    }

    #[test]
    fn normalize_examples() {
        let mut c = EdgeColoring::uncolored(3);
        c.set(Pair::new(0, 1), 7).unwrap();
        c.set(Pair::new(0, 2), 7).unwrap();
        c.set(Pair::new(1, 2), 9).unwrap();
        let n = c.normalized();
        assert_eq!(n.color_of(0, 1), Some(0));
        assert_eq!(n.color_of(0, 2), Some(0));
        assert_eq!(n.color_of(1, 2), Some(1));
        assert_eq!(n.normalized(), n);
    }

    #[test]
    fn palette_tracks_overwrites() {
        let mut c = EdgeColoring::rainbow(4);
        assert_eq!(c.palette_size(), 6);
        c.set(Pair::new(2, 3), 0).unwrap();
        assert_eq!(c.palette_size(), 5);
        assert_eq!(c.multiplicity(0), 2);
        c.clear(Pair::new(0, 1));
        assert_eq!(c.palette_size(), 5);
        assert!(!c.is_total());
    }

    fn arb_coloring() -> impl Strategy<Value = EdgeColoring> {
        (4usize..8).prop_flat_map(|n| {
            proptest::collection::vec(0u32..6, pair_count(n)).prop_map(move |cols| {
                let mut c = EdgeColoring::uncolored(n);
                for (p, col) in Pair::all(n).zip(cols) {
                    c.set(p, col * 3 + 1).unwrap();
                }
                c
            })
        })
    }

    proptest! {
        #[test]
        fn normalization_is_dense_and_preserves_counts(c in arb_coloring(), mask in 0u64..256) {
            let norm = c.normalized();
            let k = norm.palette_size();
            prop_assert_eq!(k, c.palette_size());
            let ids: Vec<Color> = norm.color_classes().keys().copied().collect();
            prop_assert_eq!(ids, (0..k as Color).collect::<Vec<_>>());
            let s = VertexSet::from_mask(mask & ((1 << c.n()) - 1));
            let cs = c.count_colors(&s).unwrap();
            prop_assert_eq!(cs, norm.count_colors(&s).unwrap());
            prop_assert_eq!(cs + c.count_repeats(&s).unwrap(), pair_count(s.len()));
        }

        #[test]
        fn counts_are_monotone(c in arb_coloring(), mask in 0u64..256, extra in 0usize..8) {
            let n = c.n();
            let s = VertexSet::from_mask(mask & ((1 << n) - 1));
            let t = s.union(&VertexSet::new([extra % n]));
            prop_assert!(c.count_colors(&s).unwrap() <= c.count_colors(&t).unwrap());
            prop_assert!(c.count_repeats(&s).unwrap() <= c.count_repeats(&t).unwrap());
        }
    }
}
