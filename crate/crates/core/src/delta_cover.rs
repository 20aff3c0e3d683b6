//! δ-covers of metric graphs.
//!
//! The deck group of the δ-cover is `π₁ / ⟪loops of length < 2δ⟫`. Normal
//! closures are decided exactly when single-letter relators eliminate
//! generators down to a free quotient; otherwise by bounded coset
//! enumeration, with an explicit `Unknown` past the bound.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::coset::{enumerate_cosets, CosetTable};
use crate::cov_spectrum::{Decision, MarkedGroupBackend, ValueClasses};
use crate::error::{Error, Result};
use crate::free_group::{generator_of, FreeWord, Letter};
use crate::graph::{Edge, MetricGraph, DEFAULT_MAX_CLASSES};
use crate::scalar::{Rational, Scalar, Unit};

/// Whether a loop lifts to a closed loop in the δ-cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    Closed,
    Open,
    Unknown,
}

impl From<Decision> for Lift {
    fn from(d: Decision) -> Self {
        match d {
            Decision::Yes => Lift::Closed,
            Decision::No => Lift::Open,
            Decision::Unknown => Lift::Unknown,
        }
    }
}

/// Enumeration limits for δ-cover computations.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub max_cosets: usize,
    pub max_classes: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_cosets: crate::coset::max_cosets_from_env(),
            max_classes: DEFAULT_MAX_CLASSES,
        }
    }
}

/// Canonical classes of loops strictly shorter than `2δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelatorSet<T> {
    pub delta: T,
    pub relators: Vec<FreeWord>,
}

/// The normal closure of a set of words in the free group of rank `rank`.
#[derive(Clone, Debug)]
pub struct NormalClosure {
    rank: usize,
    relators: Vec<FreeWord>,
    /// Generators removed by Tietze moves, as words in the surviving ones.
    substitution: BTreeMap<usize, FreeWord>,
    /// Generators surviving elimination, in order.
    remaining: Vec<usize>,
    /// Relators after elimination, over `remaining` renumbered from 1.
    residual: Vec<FreeWord>,
    quotient: Option<CosetTable>,
}

impl NormalClosure {
    pub fn trivial(rank: usize) -> Self {
        Self::new(rank, Vec::new(), 0)
    }

    /// Eliminates every generator occurring exactly once in some relator,
    /// then runs coset enumeration on what is left.
    pub fn new(rank: usize, relators: Vec<FreeWord>, max_cosets: usize) -> Self {
        let mut substitution: BTreeMap<usize, FreeWord> = BTreeMap::new();
        let mut current = relators.clone();
        loop {
            current = current
                .iter()
                .map(|r| substitute(r, &substitution).cyclically_reduced())
                .filter(|r| !r.is_identity())
                .collect();
            current.sort_by_key(FreeWord::len);
            let Some((g, value)) = current.iter().find_map(solve_for_single_letter) else {
                break;
            };
            let step = BTreeMap::from([(g, value.clone())]);
            substitution.values_mut().for_each(|v| *v = substitute(v, &step));
            substitution.insert(g, value);
        }
        let remaining: Vec<usize> = (0..rank).filter(|g| !substitution.contains_key(g)).collect();
        let mut residual: Vec<FreeWord> = current
            .iter()
            .map(|r| renumber(r, &remaining).cyclic_canonical())
            .collect();
        residual.sort();
        residual.dedup();
        let quotient = if residual.is_empty() {
            None
        } else {
            enumerate_cosets(remaining.len(), &residual, &[], max_cosets)
        };
        NormalClosure {
            rank,
            relators,
            substitution,
            remaining,
            residual,
            quotient,
        }
    }

    /// Closure of `self`'s relators together with `more`.
    pub fn extended(&self, more: &[FreeWord], max_cosets: usize) -> Self {
        let mut relators = self.relators.clone();
        relators.extend(more.iter().cloned());
        Self::new(self.rank, relators, max_cosets)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// True when elimination alone settled the quotient (it is free on the
    /// remaining generators).
    pub fn is_free_quotient(&self) -> bool {
        self.residual.is_empty()
    }

    /// Rank of the quotient when it is free.
    pub fn free_rank(&self) -> Option<usize> {
        self.is_free_quotient().then_some(self.remaining.len())
    }

    /// `w` rewritten over the surviving generators, renumbered from 1.
    fn image(&self, w: &FreeWord) -> FreeWord {
        renumber(&substitute(w, &self.substitution), &self.remaining)
    }

    pub fn contains(&self, w: &FreeWord) -> Decision {
        let reduced = self.image(w);
        if reduced.is_identity() {
            return Decision::Yes;
        }
        if self.residual.is_empty() {
            return Decision::No;
        }
        match &self.quotient {
            Some(t) if t.trace(0, &reduced) == 0 => Decision::Yes,
            Some(_) => Decision::No,
            None => Decision::Unknown,
        }
    }

    pub fn is_whole(&self) -> Decision {
        if self.remaining.is_empty() {
            return Decision::Yes;
        }
        if self.residual.is_empty() {
            return Decision::No;
        }
        match &self.quotient {
            Some(t) if t.len() == 1 => Decision::Yes,
            Some(_) => Decision::No,
            None => Decision::Unknown,
        }
    }

    /// Order of the quotient group when it is known to be finite.
    pub fn quotient_order(&self) -> Option<usize> {
        if self.remaining.is_empty() {
            return Some(1);
        }
        self.quotient.as_ref().map(CosetTable::len)
    }

    /// Action of original generator `g` on the cosets of the quotient, when
    /// finite.
    pub fn generator_action(&self, g: usize) -> Option<Vec<usize>> {
        if self.remaining.is_empty() {
            return Some(vec![0]);
        }
        let t = self.quotient.as_ref()?;
        let w = self.image(&FreeWord::from_letters([g as Letter + 1]));
        Some((0..t.len()).map(|c| t.trace(c, &w)).collect())
    }
}

/// For a relator `a x b` in which the generator of `x` occurs once, returns
/// that generator and its value `(b a)^-1` (or `b a` when `x` is inverted).
fn solve_for_single_letter(r: &FreeWord) -> Option<(usize, FreeWord)> {
    let letters = r.letters();
    let pos = letters
        .iter()
        .position(|&x| letters.iter().filter(|&&y| generator_of(y) == generator_of(x)).count() == 1)?;
    let x = letters[pos];
    let rest = FreeWord::from_letters(letters[pos + 1..].iter().chain(&letters[..pos]).copied());
    Some((generator_of(x), if x > 0 { rest.inverse() } else { rest }))
}

fn substitute(w: &FreeWord, map: &BTreeMap<usize, FreeWord>) -> FreeWord {
    FreeWord::from_letters(w.letters().iter().flat_map(|&x| match map.get(&generator_of(x)) {
        Some(v) if x > 0 => v.letters().to_vec(),
        Some(v) => v.inverse().letters().to_vec(),
        None => vec![x],
    }))
}

fn renumber(w: &FreeWord, remaining: &[usize]) -> FreeWord {
    FreeWord::from_letters(w.letters().iter().map(|&x| {
        let g = generator_of(x);
        let idx = remaining.binary_search(&g).expect("letter survives elimination") as Letter + 1;
        if x > 0 {
            idx
        } else {
            -idx
        }
    }))
}

/// Deck group of the δ-cover.
#[derive(Clone, Debug, PartialEq)]
pub enum DeckGroupReport {
    /// Finite group of the given order with its regular coset action, one
    /// permutation per basis generator.
    Finite { order: usize, action: Vec<Vec<usize>> },
    /// Free group of the given rank (bouquets only).
    FreeRank(usize),
    /// The coset bound was reached.
    Indeterminate,
}

/// Classes of loops with length strictly below `2δ`.
pub fn relators<T: Scalar>(g: &MetricGraph<T>, delta: &T, bounds: &Bounds) -> Result<RelatorSet<T>> {
    if *delta <= T::zero() {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let bound = *delta + *delta;
    let classes = g.enumerate_min_classes(&bound, bounds.max_classes)?;
    let relators = classes
        .into_iter()
        .filter(|c| c.length < bound)
        .flat_map(|c| c.classes)
        .collect();
    Ok(RelatorSet {
        delta: *delta,
        relators,
    })
}

/// The normal subgroup defining the δ-cover.
///
/// Shorter loops are tried first; once they already generate the whole
/// group the longer ones are never enumerated.
pub fn delta_subgroup<T: Scalar>(g: &MetricGraph<T>, delta: &T, bounds: &Bounds) -> Result<NormalClosure> {
    if *delta <= T::zero() {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let half = T::from_rational(Rational::new(1, 2));
    let mut partial = *delta;
    for _ in 0..4 {
        partial = partial * half;
    }
    while partial < *delta {
        let rel = relators(g, &partial, bounds)?;
        let closure = NormalClosure::new(g.rank(), rel.relators, bounds.max_cosets);
        if closure.is_whole() == Decision::Yes {
            return Ok(closure);
        }
        partial = partial + partial;
    }
    let rel = relators(g, delta, bounds)?;
    Ok(NormalClosure::new(g.rank(), rel.relators, bounds.max_cosets))
}

/// Deck group by coset enumeration alone.
pub fn enumerate_deck_group<T: Scalar>(g: &MetricGraph<T>, delta: &T, bounds: &Bounds) -> Result<DeckGroupReport> {
    let rel = relators(g, delta, bounds)?;
    Ok(
        match enumerate_cosets(g.rank(), &rel.relators, &[], bounds.max_cosets) {
            Some(t) => DeckGroupReport::Finite {
                order: t.len(),
                action: (0..g.rank()).map(|i| t.permutation(i)).collect(),
            },
            None => DeckGroupReport::Indeterminate,
        },
    )
}

/// Deck group `G(Y, δ)`. Bouquets are answered exactly by deleting the
/// generators shorter than `2δ`; other graphs by coset enumeration.
pub fn deck_group<T: Scalar>(g: &MetricGraph<T>, delta: &T, bounds: &Bounds) -> Result<DeckGroupReport> {
    if g.is_bouquet() {
        let sub = delta_subgroup(g, delta, bounds)?;
        if let Some(rank) = sub.free_rank() {
            return Ok(if rank == 0 {
                DeckGroupReport::Finite {
                    order: 1,
                    action: vec![vec![0]; g.rank()],
                }
            } else {
                DeckGroupReport::FreeRank(rank)
            });
        }
    }
    enumerate_deck_group(g, delta, bounds)
}

/// Whether the loop `w` lifts closed to the δ-cover, i.e. `w` lies in the
/// normal closure of the loops shorter than `2δ`.
pub fn lifts_closed<T: Scalar>(g: &MetricGraph<T>, w: &FreeWord, delta: &T, bounds: &Bounds) -> Result<Lift> {
    check_word(g, w)?;
    Ok(delta_subgroup(g, delta, bounds)?.contains(w).into())
}

fn check_word<T: Scalar>(g: &MetricGraph<T>, w: &FreeWord) -> Result<()> {
    if w.rank_used() > g.rank() {
        return Err(Error::InvalidArgument(format!(
            "word {w} uses generators beyond rank {}",
            g.rank()
        )));
    }
    Ok(())
}

/// A class `g` with `m(g) = 2δ` that is open at δ and closed just above δ.
pub fn delta_pair_witness<T: Scalar>(g: &MetricGraph<T>, delta: &T, bounds: &Bounds) -> Result<FreeWord> {
    let target = *delta + *delta;
    let classes = g.enumerate_min_classes(&target, bounds.max_classes)?;
    let at_target: Vec<&FreeWord> = classes
        .iter()
        .filter(|c| c.length.tie(&target))
        .flat_map(|c| c.classes.iter())
        .collect();
    if at_target.is_empty() {
        return Err(Error::WitnessNotFound(format!("no loop of length {target}")));
    }
    let below = delta_subgroup(g, delta, bounds)?;
    let mut undecided = false;
    for w in at_target {
        match below.contains(w) {
            Decision::No => return Ok(w.clone()),
            Decision::Unknown => undecided = true,
            Decision::Yes => {}
        }
    }
    Err(Error::WitnessNotFound(if undecided {
        "membership undecided within the coset bound".into()
    } else {
        format!("every loop of length {target} already lifts closed at {delta}")
    }))
}

/// Explicit covering graph for a finite quotient: vertices are
/// `(vertex, sheet)` pairs, numbered `vertex * order + sheet`.
pub fn cover_from_closure<T: Scalar>(g: &MetricGraph<T>, sub: &NormalClosure) -> Result<MetricGraph<T>> {
    let order = sub
        .quotient_order()
        .ok_or_else(|| Error::Unsupported("cover of an infinite or undetermined deck group".into()))?;
    let actions: Vec<Vec<usize>> = (0..g.rank())
        .map(|i| sub.generator_action(i).expect("finite quotient"))
        .collect();
    let basis_edges: Vec<Option<usize>> = {
        let mut per_edge = vec![None; g.edges().len()];
        for (i, (_, lp)) in g.pi1_basis().iter().enumerate() {
            let word_edge = lp
                .edges
                .iter()
                .find(|d| g.word_of_walk(std::slice::from_ref(d)) == FreeWord::generator(i))
                .expect("basis loop crosses its edge");
            per_edge[word_edge.edge] = Some(i);
        }
        per_edge
    };
    let mut edges = Vec::with_capacity(g.edges().len() * order);
    for (i, e) in g.edges().iter().enumerate() {
        for sheet in 0..order {
            let target = match basis_edges[i] {
                Some(gen) => actions[gen][sheet],
                None => sheet,
            };
            edges.push(Edge {
                u: e.u * order + sheet,
                v: e.v * order + target,
                len: e.len,
            });
        }
    }
    MetricGraph::new(g.vertex_count() * order, edges, g.unit())
}

/// The δ-cover as a graph; requires a finite deck group.
pub fn cover_graph<T: Scalar>(g: &MetricGraph<T>, delta: &T, bounds: &Bounds) -> Result<MetricGraph<T>> {
    let sub = delta_subgroup(g, delta, bounds)?;
    cover_from_closure(g, &sub)
}

/// The fundamental group of a metric graph as a marked group; subgroups
/// are normal closures.
#[derive(Clone, Debug)]
pub struct GraphBackend<'a, T> {
    graph: &'a MetricGraph<T>,
    bounds: Bounds,
}

impl<'a, T: Scalar> GraphBackend<'a, T> {
    pub fn new(graph: &'a MetricGraph<T>, bounds: Bounds) -> Self {
        GraphBackend { graph, bounds }
    }

    pub fn graph(&self) -> &MetricGraph<T> {
        self.graph
    }
}

impl<T: Scalar> MarkedGroupBackend for GraphBackend<'_, T> {
    type Element = FreeWord;
    type Value = T;
    type Subgroup = NormalClosure;

    fn unit(&self) -> Unit {
        self.graph.unit()
    }

    fn identity(&self) -> FreeWord {
        FreeWord::identity()
    }

    fn compose(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.mul(b)
    }

    fn invert(&self, a: &FreeWord) -> FreeWord {
        a.inverse()
    }

    fn m_value(&self, g: &FreeWord) -> T {
        self.graph.min_marked_length(g)
    }

    fn enumerate_values(&self, cutoff: &T) -> Result<Vec<ValueClasses<FreeWord, T>>> {
        Ok(self
            .graph
            .enumerate_min_classes(cutoff, self.bounds.max_classes)?
            .into_iter()
            .map(|c| ValueClasses {
                value: c.length,
                classes: c.classes,
            })
            .collect())
    }

    /// In a bouquet every class of value `v` other than a single loop of
    /// length `v` is a product of strictly shorter loops, so the chain only
    /// needs the loops themselves.
    fn chain_levels(&self, cutoff: &T) -> Result<Vec<ValueClasses<FreeWord, T>>> {
        if !self.graph.is_bouquet() {
            return self.enumerate_values(cutoff);
        }
        let mut loops: Vec<(T, usize)> = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.len <= *cutoff)
            .map(|(i, e)| (e.len, i))
            .collect();
        loops.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.1.cmp(&b.1))
        });
        let mut levels: Vec<ValueClasses<FreeWord, T>> = Vec::new();
        for (len, i) in loops {
            match levels.last_mut() {
                Some(l) if l.value.tie(&len) => l.classes.push(FreeWord::generator(i)),
                _ => levels.push(ValueClasses {
                    value: len,
                    classes: vec![FreeWord::generator(i)],
                }),
            }
        }
        Ok(levels)
    }

    fn trivial_subgroup(&self) -> NormalClosure {
        NormalClosure::trivial(self.graph.rank())
    }

    fn absorb(&self, sub: &NormalClosure, gens: &[FreeWord]) -> NormalClosure {
        sub.extended(gens, self.bounds.max_cosets)
    }

    fn membership(&self, sub: &NormalClosure, g: &FreeWord) -> Decision {
        sub.contains(g)
    }

    fn is_whole_group(&self, sub: &NormalClosure) -> Decision {
        sub.is_whole()
    }

    /// Every basis loop passes through vertex 0, so its length is at most
    /// twice the eccentricity of vertex 0 plus the longest edge.
    fn default_cutoff(&self) -> T {
        let ecc = self.graph.vertex_distances()[0]
            .iter()
            .copied()
            .fold(T::zero(), |a, b| if b > a { b } else { a });
        let half_edge = self.graph.max_edge_length() / (T::one() + T::one());
        ecc + half_edge
    }
}

/// Plain-text presentation: a `generators:` line followed by one relator
/// word per line. Lines starting with `#` are comments.
///
/// ```text
/// generators: x1 x2
/// x1
/// x1 x2^-1 x1
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<FreeWord>,
}

impl<T: Scalar> From<(&MetricGraph<T>, &RelatorSet<T>)> for Presentation {
    fn from((g, rel): (&MetricGraph<T>, &RelatorSet<T>)) -> Self {
        Presentation {
            generators: g.rank(),
            relators: rel.relators.clone(),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generators:")?;
        for i in 1..=self.generators {
            write!(f, " x{i}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty presentation".into()))?;
        let gens = header
            .strip_prefix("generators:")
            .ok_or_else(|| Error::Parse("presentation must start with 'generators:'".into()))?;
        let names: Vec<&str> = gens.split_whitespace().collect();
        for (i, name) in names.iter().enumerate() {
            if *name != format!("x{}", i + 1) {
                return Err(Error::Parse(format!("generator {} should be named x{}", name, i + 1)));
            }
        }
        let relators = lines.map(str::parse).collect::<Result<Vec<FreeWord>>>()?;
        if let Some(r) = relators.iter().find(|r| r.rank_used() > names.len()) {
            return Err(Error::Parse(format!("relator {r} uses an undeclared generator")));
        }
        Ok(Presentation {
            generators: names.len(),
            relators,
        })
    }
}
