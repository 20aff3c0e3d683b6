//! Finite metric graphs and their free fundamental groups.
//!
//! A spanning tree rooted at vertex 0 fixes the basis of `π₁`: each
//! non-tree edge is one generator. The free homotopy class of a word is
//! represented by its unique cyclically reduced edge loop, whose length is
//! the minimum marked length of the class.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_group::{generator_of, FreeWord, Letter};
use crate::scalar::{Rational, RationalJson, Scalar, Unit};
use crate::spectrum::Spectrum;

/// Default bound on the number of conjugacy classes an enumeration may hold.
pub const DEFAULT_MAX_CLASSES: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<T> {
    pub u: usize,
    pub v: usize,
    pub len: T,
}

/// An edge traversed from `u` to `v` (`forward`) or back.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirEdge {
    pub edge: usize,
    pub forward: bool,
}

impl DirEdge {
    pub fn reverse(self) -> DirEdge {
        DirEdge {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// A closed edge path, read cyclically.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeLoop<T> {
    pub edges: Vec<DirEdge>,
    pub length: T,
}

/// All conjugacy classes sharing one minimum marked length.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthClass<T> {
    pub length: T,
    pub classes: Vec<FreeWord>,
}

#[derive(Clone, Debug)]
struct SpanningTree {
    /// Edge used to reach each vertex from its parent (`None` at the root).
    parent: Vec<Option<DirEdge>>,
    /// Generator index of each edge, `None` for tree edges.
    generator: Vec<Option<usize>>,
    /// Edge of each generator.
    generator_edges: Vec<usize>,
}

/// A connected graph with positive edge lengths. Self-loops and parallel
/// edges are allowed.
#[derive(Clone, Debug)]
pub struct MetricGraph<T> {
    vertices: usize,
    edges: Vec<Edge<T>>,
    unit: Unit,
    tree: SpanningTree,
    out: Vec<Vec<DirEdge>>,
}

impl<T: Scalar> MetricGraph<T> {
    pub fn new(vertices: usize, edges: Vec<Edge<T>>, unit: Unit) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.u >= vertices || e.v >= vertices {
                return Err(Error::InvalidArgument(format!("edge {i} has an endpoint out of range")));
            }
            if e.len <= T::zero() {
                return Err(Error::InvalidArgument(format!("edge {i} has nonpositive length")));
            }
        }
        let mut out = vec![Vec::new(); vertices];
        for (i, e) in edges.iter().enumerate() {
            out[e.u].push(DirEdge { edge: i, forward: true });
            out[e.v].push(DirEdge {
                edge: i,
                forward: false,
            });
        }
        let mut parent = vec![None; vertices];
        let mut seen = vec![false; vertices];
        let mut is_tree = vec![false; edges.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &d in &out[x] {
                let y = if d.forward { edges[d.edge].v } else { edges[d.edge].u };
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(d);
                    is_tree[d.edge] = true;
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Disconnected);
        }
        let mut generator = vec![None; edges.len()];
        let mut generator_edges = Vec::new();
        for (i, t) in is_tree.iter().enumerate() {
            if !t {
                generator[i] = Some(generator_edges.len());
                generator_edges.push(i);
            }
        }
        let tree = SpanningTree {
            parent,
            generator,
            generator_edges,
        };
        Ok(MetricGraph {
            vertices,
            edges,
            unit,
            tree,
            out,
        })
    }

    /// One vertex with `lengths.len()` self-loops.
    pub fn bouquet(lengths: &[T], unit: Unit) -> Result<Self> {
        let edges = lengths.iter().map(|&len| Edge { u: 0, v: 0, len }).collect();
        Self::new(1, edges, unit)
    }

    pub fn circle(length: T, unit: Unit) -> Result<Self> {
        Self::bouquet(&[length], unit)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn is_bouquet(&self) -> bool {
        self.vertices == 1
    }

    /// Rank of the free fundamental group, `|E| - |V| + 1`.
    pub fn rank(&self) -> usize {
        self.tree.generator_edges.len()
    }

    pub fn tail(&self, d: DirEdge) -> usize {
        let e = &self.edges[d.edge];
        if d.forward {
            e.u
        } else {
            e.v
        }
    }

    pub fn head(&self, d: DirEdge) -> usize {
        let e = &self.edges[d.edge];
        if d.forward {
            e.v
        } else {
            e.u
        }
    }

    pub fn edge_length(&self, d: DirEdge) -> T {
        self.edges[d.edge].len
    }

    pub fn walk_length(&self, walk: &[DirEdge]) -> T {
        walk.iter().fold(T::zero(), |acc, &d| acc + self.edge_length(d))
    }

    pub fn max_edge_length(&self) -> T {
        self.edges
            .iter()
            .map(|e| e.len)
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// Generator letter read when traversing `d`, if `d` is a non-tree edge.
    fn letter(&self, d: DirEdge) -> Option<Letter> {
        self.tree.generator[d.edge].map(|g| {
            let x = g as Letter + 1;
            if d.forward {
                x
            } else {
                -x
            }
        })
    }

    /// Tree path from the root to `v`.
    fn root_path(&self, v: usize) -> Vec<DirEdge> {
        let mut path = Vec::new();
        let mut x = v;
        while let Some(d) = self.tree.parent[x] {
            path.push(d);
            x = self.tail(d);
        }
        path.reverse();
        path
    }

    /// Shortest path between two vertices (Dijkstra).
    pub fn shortest_path(&self, from: usize, to: usize) -> Result<(T, Vec<DirEdge>)> {
        if from >= self.vertices || to >= self.vertices {
            return Err(Error::InvalidArgument("vertex out of range".into()));
        }
        let (dist, prev) = self.dijkstra(from, None);
        let mut path = Vec::new();
        let mut x = to;
        while x != from {
            let d = prev[x].expect("graph is connected");
            path.push(d);
            x = self.tail(d);
        }
        path.reverse();
        Ok((dist[to].expect("graph is connected"), path))
    }

    /// Single-source distances, optionally ignoring one edge.
    fn dijkstra(&self, source: usize, skip: Option<usize>) -> (Vec<Option<T>>, Vec<Option<DirEdge>>) {
        let n = self.vertices;
        let mut dist: Vec<Option<T>> = vec![None; n];
        let mut prev: Vec<Option<DirEdge>> = vec![None; n];
        let mut done = vec![false; n];
        dist[source] = Some(T::zero());
        loop {
            let next = (0..n)
                .filter(|&x| !done[x])
                .filter_map(|x| dist[x].map(|d| (x, d)))
                .fold(None, |best: Option<(usize, T)>, (x, d)| match best {
                    Some((_, bd)) if bd <= d => best,
                    _ => Some((x, d)),
                });
            let Some((x, dx)) = next else { break };
            done[x] = true;
            for &d in &self.out[x] {
                if Some(d.edge) == skip {
                    continue;
                }
                let y = self.head(d);
                let nd = dx + self.edge_length(d);
                if dist[y].is_none_or(|cur| nd < cur) {
                    dist[y] = Some(nd);
                    prev[y] = Some(d);
                }
            }
        }
        (dist, prev)
    }

    /// All-pairs vertex distances.
    pub fn vertex_distances(&self) -> Vec<Vec<T>> {
        (0..self.vertices)
            .map(|s| {
                self.dijkstra(s, None)
                    .0
                    .into_iter()
                    .map(|d| d.expect("connected"))
                    .collect()
            })
            .collect()
    }

    /// Upper bound on the diameter of the metric graph (interior points of
    /// edges included): largest vertex distance plus the longest edge.
    pub fn diameter_upper_bound(&self) -> T {
        let vd = self
            .vertex_distances()
            .into_iter()
            .flatten()
            .fold(T::zero(), |a, b| if b > a { b } else { a });
        vd + self.max_edge_length()
    }

    /// Basis of `π₁(G, 0)`: one generator per non-tree edge, represented by
    /// tree path, edge, tree path back.
    pub fn pi1_basis(&self) -> Vec<(FreeWord, EdgeLoop<T>)> {
        self.tree
            .generator_edges
            .iter()
            .enumerate()
            .map(|(g, &e)| {
                let d = DirEdge { edge: e, forward: true };
                let mut edges = self.root_path(self.tail(d));
                edges.push(d);
                edges.extend(self.root_path(self.head(d)).into_iter().rev().map(DirEdge::reverse));
                let length = self.walk_length(&edges);
                (FreeWord::generator(g), EdgeLoop { edges, length })
            })
            .collect()
    }

    /// Generator word read along a closed walk.
    pub fn word_of_walk(&self, walk: &[DirEdge]) -> FreeWord {
        FreeWord::from_letters(walk.iter().filter_map(|&d| self.letter(d)))
    }

    /// Closed walk at the root realizing `w`.
    pub fn walk_of_word(&self, w: &FreeWord) -> Vec<DirEdge> {
        let mut walk = Vec::new();
        for &x in w.letters() {
            let e = self.tree.generator_edges[generator_of(x)];
            let d = DirEdge {
                edge: e,
                forward: x > 0,
            };
            walk.extend(self.root_path(self.tail(d)));
            walk.push(d);
            walk.extend(self.root_path(self.head(d)).into_iter().rev().map(DirEdge::reverse));
        }
        walk
    }

    /// Removes backtracking, cyclically.
    pub fn cyclically_reduce_walk(walk: &[DirEdge]) -> Vec<DirEdge> {
        let mut stack: Vec<DirEdge> = Vec::with_capacity(walk.len());
        for &d in walk {
            if stack.last() == Some(&d.reverse()) {
                stack.pop();
            } else {
                stack.push(d);
            }
        }
        let (mut i, mut j) = (0, stack.len());
        while j - i >= 2 && stack[i] == stack[j - 1].reverse() {
            i += 1;
            j -= 1;
        }
        stack[i..j].to_vec()
    }

    /// The cyclically reduced loop freely homotopic to `w`.
    pub fn geodesic_loop(&self, w: &FreeWord) -> EdgeLoop<T> {
        let edges = Self::cyclically_reduce_walk(&self.walk_of_word(w));
        let length = self.walk_length(&edges);
        EdgeLoop { edges, length }
    }

    /// Minimum marked length `m(w)`: length of the shortest loop in the free
    /// homotopy class of `w`; zero exactly for the identity.
    pub fn min_marked_length(&self, w: &FreeWord) -> T {
        self.geodesic_loop(w).length
    }

    /// Every cyclically reduced loop of length at most `cutoff`, one
    /// canonical word per class (up to rotation and inversion), grouped by
    /// length in increasing order.
    pub fn enumerate_min_classes(&self, cutoff: &T, max_classes: usize) -> Result<Vec<LengthClass<T>>> {
        let mut found: HashMap<FreeWord, T> = HashMap::new();
        let dist = self.vertex_distances();
        let mut walk: Vec<DirEdge> = Vec::new();
        // Each class up to inversion has a rotation that starts by crossing
        // its least edge forward.
        for start in 0..self.edges.len() {
            let d0 = DirEdge {
                edge: start,
                forward: true,
            };
            let len0 = self.edge_length(d0);
            if len0 + dist[self.head(d0)][self.tail(d0)] > *cutoff {
                continue;
            }
            walk.clear();
            walk.push(d0);
            self.extend_walks(&mut walk, len0, cutoff, &dist, &mut found, max_classes)?;
        }
        let mut by_length: Vec<(T, FreeWord)> = found.into_iter().map(|(w, l)| (l, w)).collect();
        by_length.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then_with(|| a.1.cmp(&b.1)));
        let mut out: Vec<LengthClass<T>> = Vec::new();
        for (len, w) in by_length {
            match out.last_mut() {
                Some(last) if last.length.tie(&len) => last.classes.push(w),
                _ => out.push(LengthClass {
                    length: len,
                    classes: vec![w],
                }),
            }
        }
        Ok(out)
    }

    fn extend_walks(
        &self,
        walk: &mut Vec<DirEdge>,
        length: T,
        cutoff: &T,
        dist: &[Vec<T>],
        found: &mut HashMap<FreeWord, T>,
        max_classes: usize,
    ) -> Result<()> {
        let first = walk[0];
        let home = self.tail(first);
        let last = *walk.last().unwrap();
        let here = self.head(last);
        if here == home && last != first.reverse() {
            let word = self.word_of_walk(walk);
            let canon = word.cyclic_canonical();
            if !found.contains_key(&canon) {
                if found.len() >= max_classes {
                    return Err(Error::EnumerationLimit {
                        what: "conjugacy classes",
                        limit: max_classes,
                    });
                }
                found.insert(canon, length);
            }
        }
        for &d in &self.out[here] {
            if d == last.reverse() || d.edge < first.edge {
                continue;
            }
            let next = length + self.edge_length(d);
            if next + dist[self.head(d)][home] > *cutoff {
                continue;
            }
            walk.push(d);
            self.extend_walks(walk, next, cutoff, dist, found, max_classes)?;
            walk.pop();
        }
        Ok(())
    }

    /// Lengths of closed geodesics up to `cutoff`; the multiplicity of a
    /// length is the number of classes realizing it.
    pub fn length_spectrum(&self, cutoff: &T, max_classes: usize) -> Result<Spectrum<T>> {
        let classes = self.enumerate_min_classes(cutoff, max_classes)?;
        Spectrum::from_weighted(self.unit, classes.into_iter().map(|c| (c.length, c.classes.len())))
    }

    /// Length of the shortest cycle: for each edge, its length plus the
    /// distance between its endpoints avoiding it.
    pub fn systole(&self) -> Result<T> {
        let mut best: Option<T> = None;
        for (i, e) in self.edges.iter().enumerate() {
            let around = if e.u == e.v {
                Some(T::zero())
            } else {
                self.dijkstra(e.u, Some(i)).0[e.v]
            };
            if let Some(a) = around {
                let c = a + e.len;
                if best.is_none_or(|b| c < b) {
                    best = Some(c);
                }
            }
        }
        best.ok_or(Error::NoCycle)
    }
}

/// Graph input file: `{"vertices": n, "edges": [{"u", "v", "len": {"num", "den"}}], "unit": "1"|"pi"}`.
/// `len` may also be a string such as `"3/2"` or an integer.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub unit: Unit,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    pub len: RationalJson,
}

impl MetricGraph<Rational> {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        let edges = raw
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    u: e.u,
                    v: e.v,
                    len: e.len.to_rational()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.vertices, edges, raw.unit)
    }

    pub fn to_json(&self) -> Result<String> {
        let raw = GraphJson {
            vertices: self.vertices,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    u: e.u,
                    v: e.v,
                    len: e.len.into(),
                })
                .collect(),
            unit: self.unit,
        };
        Ok(serde_json::to_string_pretty(&raw)?)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn theta(a: Rational, b: Rational, c: Rational) -> MetricGraph<Rational> {
        MetricGraph::new(
            2,
            vec![
                Edge { u: 0, v: 1, len: a },
                Edge { u: 0, v: 1, len: b },
                Edge { u: 0, v: 1, len: c },
            ],
            Unit::One,
        )
        .unwrap()
    }

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn construction_errors() {
        let disconnected = MetricGraph::new(
            2,
            vec![Edge {
                u: 0,
                v: 0,
                len: q(1, 1),
            }],
            Unit::One,
        );
        assert!(matches!(disconnected, Err(Error::Disconnected)));
        let zero_len = MetricGraph::new(
            1,
            vec![Edge {
                u: 0,
                v: 0,
                len: q(0, 1),
            }],
            Unit::One,
        );
        assert!(zero_len.is_err());
        let out_of_range = MetricGraph::new(
            1,
            vec![Edge {
                u: 0,
                v: 3,
                len: q(1, 1),
            }],
            Unit::One,
        );
        assert!(out_of_range.is_err());
    }

    #[test]
    fn shortest_paths() {
        let single = MetricGraph::new(
            2,
            vec![Edge {
                u: 0,
                v: 1,
                len: q(3, 1),
            }],
            Unit::One,
        )
        .unwrap();
        assert_eq!(single.shortest_path(0, 1).unwrap().0, q(3, 1));
        assert_eq!(single.shortest_path(1, 1).unwrap().0, q(0, 1));
        let triangle = MetricGraph::new(
            3,
            vec![
                Edge {
                    u: 0,
                    v: 1,
                    len: q(1, 1),
                },
                Edge {
                    u: 1,
                    v: 2,
                    len: q(1, 1),
                },
                Edge {
                    u: 0,
                    v: 2,
                    len: q(3, 1),
                },
            ],
            Unit::One,
        )
        .unwrap();
        let (d, path) = triangle.shortest_path(0, 2).unwrap();
        assert_eq!(d, q(2, 1));
        assert_eq!(path.len(), 2);
    }

    #[test]
    fn basis_ranks() {
        let tree = MetricGraph::new(
            3,
            vec![
                Edge {
                    u: 0,
                    v: 1,
                    len: q(1, 1),
                },
                Edge {
                    u: 1,
                    v: 2,
                    len: q(1, 1),
                },
            ],
            Unit::One,
        )
        .unwrap();
        assert!(tree.pi1_basis().is_empty());
        let b = MetricGraph::bouquet(&[q(1, 1), q(2, 1), q(3, 1)], Unit::One).unwrap();
        assert_eq!(b.pi1_basis().len(), 3);
        let t = theta(q(1, 1), q(1, 1), q(1, 1));
        let basis = t.pi1_basis();
        assert_eq!(basis.len(), 2);
        assert_eq!(t.rank(), t.edges().len() - t.vertex_count() + 1);
        for (g, l) in &basis {
            assert_eq!(&t.word_of_walk(&l.edges), g);
        }
    }

    #[test]
    fn marked_lengths_on_bouquet() {
        let b = MetricGraph::bouquet(&[q(2, 1), q(3, 1)], Unit::One).unwrap();
        assert_eq!(b.min_marked_length(&w("x1 x2")), q(5, 1));
        assert_eq!(b.min_marked_length(&FreeWord::identity()), q(0, 1));
        for k in 1..5 {
            assert_eq!(b.min_marked_length(&w("x1").pow(k)), q(2 * k, 1));
        }
        assert_eq!(b.min_marked_length(&w("x2 x1 x2^-1")), q(2, 1));
    }

    #[test]
    fn marked_length_on_theta_uses_two_edges() {
        let t = theta(q(1, 1), q(2, 1), q(4, 1));
        for (g, l) in t.pi1_basis() {
            assert_eq!(t.min_marked_length(&g), l.length);
        }
        assert_eq!(t.systole().unwrap(), q(3, 1));
    }

    /// Brute force: all words over {x1, x2} up to `max_len` letters,
    /// minimized over their conjugacy classes by cyclic reduction and
    /// bounded by the free-homotopy oracle on the bouquet.
    #[test]
    fn enumeration_matches_brute_force_on_bouquet() {
        let b = MetricGraph::bouquet(&[q(2, 1), q(3, 1)], Unit::One).unwrap();
        let got = b.enumerate_min_classes(&q(6, 1), DEFAULT_MAX_CLASSES).unwrap();

        let letters = [1, -1, 2, -2];
        let mut words: Vec<Vec<Letter>> = vec![vec![]];
        let mut brute: BTreeMap<FreeWord, Rational> = BTreeMap::new();
        for _ in 0..3 {
            let mut next = Vec::new();
            for base in &words {
                for &x in &letters {
                    let mut v = base.clone();
                    v.push(x);
                    let word = FreeWord::from_letters(v.clone());
                    let core = word.cyclically_reduced();
                    if !core.is_identity() {
                        let len: Rational = core
                            .letters()
                            .iter()
                            .map(|&l| if l.abs() == 1 { q(2, 1) } else { q(3, 1) })
                            .sum();
                        if len <= q(6, 1) {
                            brute.insert(core.cyclic_canonical(), len);
                        }
                    }
                    next.push(v);
                }
            }
            words = next;
        }
        let flat: BTreeMap<FreeWord, Rational> = got
            .iter()
            .flat_map(|c| c.classes.iter().map(move |w| (w.clone(), c.length)))
            .collect();
        assert_eq!(flat, brute);
    }

    #[test]
    fn enumeration_examples() {
        let b = MetricGraph::bouquet(&[q(2, 1), q(3, 1)], Unit::One).unwrap();
        let got = b.enumerate_min_classes(&q(4, 1), DEFAULT_MAX_CLASSES).unwrap();
        let lengths: Vec<Rational> = got.iter().map(|c| c.length).collect();
        assert_eq!(lengths, vec![q(2, 1), q(3, 1), q(4, 1)]);
        assert_eq!(got[0].classes, vec![w("x1").cyclic_canonical()]);
        assert_eq!(got[1].classes, vec![w("x2").cyclic_canonical()]);
        assert_eq!(got[2].classes, vec![w("x1^2").cyclic_canonical()]);

        let tree = MetricGraph::new(
            2,
            vec![Edge {
                u: 0,
                v: 1,
                len: q(1, 1),
            }],
            Unit::One,
        )
        .unwrap();
        assert!(tree
            .enumerate_min_classes(&q(100, 1), DEFAULT_MAX_CLASSES)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn todense_radii_lengths() {
        // 2^j loops of lengths 2k/2^j in π-units, j = 2.
        let lengths: Vec<Rational> = (1..=4).map(|k| q(2 * k, 4)).collect();
        let b = MetricGraph::bouquet(&lengths, Unit::Pi).unwrap();
        let got = b.enumerate_min_classes(&q(2, 1), DEFAULT_MAX_CLASSES).unwrap();
        let values: Vec<Rational> = got.iter().map(|c| c.length).collect();
        assert_eq!(values, vec![q(1, 2), q(1, 1), q(3, 2), q(2, 1)]);
    }

    #[test]
    fn length_spectra() {
        let b = MetricGraph::bouquet(&[q(2, 1), q(3, 1)], Unit::One).unwrap();
        let s = b.length_spectrum(&q(5, 1), DEFAULT_MAX_CLASSES).unwrap();
        let five = s.entries().iter().find(|e| e.value == q(5, 1)).unwrap();
        assert_eq!(five.mult, 2);
        let c = MetricGraph::circle(q(1, 1), Unit::One).unwrap();
        let s = c.length_spectrum(&q(3, 1), DEFAULT_MAX_CLASSES).unwrap();
        assert_eq!(s.values().copied().collect::<Vec<_>>(), vec![q(1, 1), q(2, 1), q(3, 1)]);
    }

    #[test]
    fn enumeration_guard() {
        let b = MetricGraph::bouquet(&[q(1, 1), q(1, 1), q(1, 1)], Unit::One).unwrap();
        let err = b.enumerate_min_classes(&q(6, 1), 10).unwrap_err();
        assert!(matches!(err, Error::EnumerationLimit { .. }));
    }

    #[test]
    fn systoles() {
        let b = MetricGraph::bouquet(&[q(2, 1), q(3, 1)], Unit::One).unwrap();
        assert_eq!(b.systole().unwrap(), q(2, 1));
        assert_eq!(
            MetricGraph::circle(q(1, 1), Unit::One).unwrap().systole().unwrap(),
            q(1, 1)
        );
        assert_eq!(theta(q(1, 1), q(1, 1), q(1, 1)).systole().unwrap(), q(2, 1));
        let tree = MetricGraph::new(
            2,
            vec![Edge {
                u: 0,
                v: 1,
                len: q(1, 1),
            }],
            Unit::One,
        )
        .unwrap();
        assert!(matches!(tree.systole(), Err(Error::NoCycle)));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices": 2, "edges": [
            {"u": 0, "v": 1, "len": {"num": 1, "den": 2}},
            {"u": 0, "v": 1, "len": "3/2"},
            {"u": 1, "v": 1, "len": 2}], "unit": "pi"}"#;
        let g = MetricGraph::from_json(text).unwrap();
        assert_eq!(g.unit(), Unit::Pi);
        assert_eq!(g.edges()[1].len, q(3, 2));
        let back = MetricGraph::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(back.edges(), g.edges());
    }
}
