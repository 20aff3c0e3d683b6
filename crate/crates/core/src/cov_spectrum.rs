//! The covering spectrum of a marked group, computed by a chain of
//! subgroups.
//!
//! Starting from the trivial subgroup `G_0`, each step takes the least
//! m-value `v` having a class outside `G_k`, records `δ_{k+1} = v / 2`, and
//! lets `G_{k+1}` be generated by `G_k` and every class of m-value `v`.

use std::fmt::Debug;

use itertools::Itertools;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::scalar::{LengthValue, LineValue, Unit};
use crate::spectrum::Spectrum;

/// Three-valued answer to a decision question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

/// Largest candidate set for the exhaustive short-basis search.
pub const MAX_BASIS_CANDIDATES: usize = 16;

/// One m-value with representatives of every class attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueClasses<E, V> {
    pub value: V,
    pub classes: Vec<E>,
}

/// A group with a minimum marked length map and decidable (or
/// semi-decidable) membership in the normal subgroups generated by classes.
pub trait MarkedGroupBackend {
    type Element: Clone + Debug + PartialEq + Serialize;
    type Value: LineValue;
    type Subgroup: Clone;

    fn unit(&self) -> Unit;
    fn identity(&self) -> Self::Element;
    fn compose(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn invert(&self, a: &Self::Element) -> Self::Element;
    fn m_value(&self, g: &Self::Element) -> Self::Value;

    /// Every m-value in `(0, cutoff]`, ascending, with class representatives.
    fn enumerate_values(&self, cutoff: &Self::Value) -> Result<Vec<ValueClasses<Self::Element, Self::Value>>>;

    /// The levels visited by the chain. Backends may leave out classes that
    /// are known to lie in the subgroup generated by smaller values.
    fn chain_levels(&self, cutoff: &Self::Value) -> Result<Vec<ValueClasses<Self::Element, Self::Value>>> {
        self.enumerate_values(cutoff)
    }

    fn trivial_subgroup(&self) -> Self::Subgroup;
    /// The normal subgroup generated by `sub` and `gens`.
    fn absorb(&self, sub: &Self::Subgroup, gens: &[Self::Element]) -> Self::Subgroup;
    fn membership(&self, sub: &Self::Subgroup, g: &Self::Element) -> Decision;
    fn is_whole_group(&self, sub: &Self::Subgroup) -> Decision;

    /// A δ-scale bound beyond which the covering spectrum is empty.
    fn default_cutoff(&self) -> Self::Value;
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainStep<E, V> {
    pub delta: V,
    pub classes: Vec<E>,
    pub short_basis: Vec<E>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubgroupChain<E, V> {
    pub steps: Vec<ChainStep<E, V>>,
    /// True when the last subgroup is the whole group.
    pub complete: bool,
}

pub struct CoveringSpectrumResult<B: MarkedGroupBackend> {
    pub spectrum: Spectrum<LengthValue>,
    pub chain: SubgroupChain<B::Element, B::Value>,
    subgroups: Vec<B::Subgroup>,
}

impl<B: MarkedGroupBackend> CoveringSpectrumResult<B> {
    /// `G_i`, with `G_0` trivial.
    pub fn subgroup(&self, i: usize) -> Option<&B::Subgroup> {
        self.subgroups.get(i)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let steps: Vec<serde_json::Value> = self
            .chain
            .steps
            .iter()
            .map(|s| {
                json!({
                    "delta": s.delta.to_length(),
                    "classes": s.classes,
                    "short_basis": s.short_basis,
                    "mult": s.multiplicity,
                })
            })
            .collect();
        json!({ "spectrum": self.spectrum, "chain": steps, "complete": self.chain.complete })
    }
}

impl<B: MarkedGroupBackend> Clone for CoveringSpectrumResult<B> {
    fn clone(&self) -> Self {
        CoveringSpectrumResult {
            spectrum: self.spectrum.clone(),
            chain: self.chain.clone(),
            subgroups: self.subgroups.clone(),
        }
    }
}

impl<B: MarkedGroupBackend> Debug for CoveringSpectrumResult<B> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoveringSpectrumResult")
            .field("spectrum", &self.spectrum)
            .field("chain", &self.chain)
            .finish()
    }
}

fn partial_spectrum<E, V: LineValue>(unit: Unit, steps: &[ChainStep<E, V>]) -> Spectrum<LengthValue> {
    Spectrum::from_weighted(unit, steps.iter().map(|s| (s.delta.to_length(), s.multiplicity)))
        .expect("chain values are positive and increasing")
}

/// Number of halvings of the m-value bound in the first enumeration round.
const FIRST_ROUND_HALVINGS: usize = 4;

/// Runs the subgroup chain up to the δ-scale `cutoff` (the backend default
/// when `None`).
///
/// Values are enumerated in rounds with a doubling bound, starting well
/// below `2·cutoff`, and the chain stops at the first round in which the
/// subgroup becomes the whole group.
pub fn compute_cov_spectrum<B: MarkedGroupBackend>(
    backend: &B,
    cutoff: Option<B::Value>,
) -> Result<CoveringSpectrumResult<B>> {
    let full = cutoff.unwrap_or_else(|| backend.default_cutoff()).double();
    let mut bound = (0..FIRST_ROUND_HALVINGS).fold(full.clone(), |b, _| b.half());
    loop {
        let last = bound.partial_cmp(&full) != Some(std::cmp::Ordering::Less) || bound.same(&full);
        let result = run_chain(backend, backend.chain_levels(if last { &full } else { &bound })?)?;
        if last || result.chain.complete {
            return Ok(result);
        }
        bound = bound.double();
    }
}

fn run_chain<B: MarkedGroupBackend>(
    backend: &B,
    levels: Vec<ValueClasses<B::Element, B::Value>>,
) -> Result<CoveringSpectrumResult<B>> {
    let mut sub = backend.trivial_subgroup();
    let mut subgroups = vec![sub.clone()];
    let mut steps: Vec<ChainStep<B::Element, B::Value>> = Vec::new();
    let mut complete = backend.is_whole_group(&sub) == Decision::Yes;
    for level in levels {
        if complete {
            break;
        }
        let mut outside = Vec::new();
        let mut undecided = false;
        for c in &level.classes {
            match backend.membership(&sub, c) {
                Decision::No => outside.push(c.clone()),
                Decision::Unknown => undecided = true,
                Decision::Yes => {}
            }
        }
        if outside.is_empty() {
            if undecided {
                return Err(Error::IndeterminateSpectrum {
                    partial: partial_spectrum(backend.unit(), &steps),
                });
            }
            continue;
        }
        let next = backend.absorb(&sub, &level.classes);
        let short_basis = short_basis(backend, &sub, &outside)?;
        steps.push(ChainStep {
            delta: level.value.half(),
            multiplicity: short_basis.len(),
            classes: level.classes,
            short_basis,
        });
        sub = next;
        subgroups.push(sub.clone());
        complete = backend.is_whole_group(&sub) == Decision::Yes;
    }
    let spectrum = partial_spectrum(backend.unit(), &steps);
    Ok(CoveringSpectrumResult {
        spectrum,
        chain: SubgroupChain { steps, complete },
        subgroups,
    })
}

fn generates_all<B: MarkedGroupBackend>(backend: &B, sub: &B::Subgroup, targets: &[B::Element]) -> Result<bool> {
    let mut all = true;
    for t in targets {
        match backend.membership(sub, t) {
            Decision::Yes => {}
            Decision::No => all = false,
            Decision::Unknown => return Err(Error::Undecided),
        }
    }
    Ok(all)
}

/// A smallest subset of `outside` that together with `prev` generates every
/// class in `outside`. Classes are taken up to inversion.
pub fn short_basis<B: MarkedGroupBackend>(
    backend: &B,
    prev: &B::Subgroup,
    outside: &[B::Element],
) -> Result<Vec<B::Element>> {
    let mut candidates: Vec<B::Element> = Vec::new();
    for c in outside {
        let inv = backend.invert(c);
        if !candidates.iter().any(|d| *d == *c || *d == inv) {
            candidates.push(c.clone());
        }
    }
    if candidates.len() > MAX_BASIS_CANDIDATES {
        let mut sub = prev.clone();
        let mut greedy = 0;
        for c in &candidates {
            if backend.membership(&sub, c) != Decision::Yes {
                sub = backend.absorb(&sub, std::slice::from_ref(c));
                greedy += 1;
            }
        }
        return Err(Error::SubsetSearchLimit {
            candidates: candidates.len(),
            upper_bound: greedy,
        });
    }
    for size in 1..=candidates.len() {
        for subset in candidates.iter().cloned().combinations(size) {
            let trial = backend.absorb(prev, &subset);
            if generates_all(backend, &trial, &candidates)? {
                return Ok(subset);
            }
        }
    }
    unreachable!("the full candidate set generates the next subgroup")
}

/// Recomputes short bases and multiplicities of an existing chain.
pub fn short_basis_and_multiplicity<B: MarkedGroupBackend>(
    backend: &B,
    result: &CoveringSpectrumResult<B>,
) -> Result<SubgroupChain<B::Element, B::Value>> {
    let mut chain = result.chain.clone();
    for (i, step) in chain.steps.iter_mut().enumerate() {
        let prev = &result.subgroups[i];
        let outside: Vec<B::Element> = step
            .classes
            .iter()
            .filter(|c| backend.membership(prev, c) == Decision::No)
            .cloned()
            .collect();
        step.short_basis = short_basis(backend, prev, &outside)?;
        step.multiplicity = step.short_basis.len();
    }
    Ok(chain)
}

/// The covering spectrum map: `f(g) = δ_i` for the least `i` with
/// `g ∈ G_i`, and `f(e) = 0`.
pub fn covering_map_f<B: MarkedGroupBackend>(
    backend: &B,
    result: &CoveringSpectrumResult<B>,
    g: &B::Element,
) -> Result<LengthValue> {
    for (i, sub) in result.subgroups.iter().enumerate() {
        match backend.membership(sub, g) {
            Decision::Yes if i == 0 => return Ok(LengthValue::zero()),
            Decision::Yes => return Ok(result.chain.steps[i - 1].delta.to_length()),
            Decision::No => {}
            Decision::Unknown => return Err(Error::Undecided),
        }
    }
    Err(Error::InvalidArgument("element lies beyond the computed chain".into()))
}

/// Brute-force covering spectrum: `δ = v / 2` is included when the classes
/// of value `≤ v` generate more than those of value `< v`. Subgroups are
/// rebuilt from scratch at every value.
pub fn oracle_cov_spectrum<B: MarkedGroupBackend>(
    backend: &B,
    cutoff: Option<B::Value>,
) -> Result<Spectrum<LengthValue>> {
    let cutoff = cutoff.unwrap_or_else(|| backend.default_cutoff());
    let levels = backend.enumerate_values(&cutoff.double())?;
    let mut found: Vec<(LengthValue, usize)> = Vec::new();
    for (k, level) in levels.iter().enumerate() {
        let below: Vec<B::Element> = levels[..k].iter().flat_map(|l| l.classes.iter().cloned()).collect();
        let lower = backend.absorb(&backend.trivial_subgroup(), &below);
        if backend.is_whole_group(&lower) == Decision::Yes {
            break;
        }
        let fresh: Vec<B::Element> = level
            .classes
            .iter()
            .filter(|c| backend.membership(&lower, c) != Decision::Yes)
            .cloned()
            .collect();
        if fresh.is_empty() {
            continue;
        }
        if fresh.len() > 2 * MAX_BASIS_CANDIDATES {
            return Err(Error::SubsetSearchLimit {
                candidates: fresh.len(),
                upper_bound: fresh.len(),
            });
        }
        let mut mult = None;
        'search: for size in 1..=fresh.len() {
            for subset in fresh.iter().cloned().combinations(size) {
                let trial = backend.absorb(&lower, &subset);
                if generates_all(backend, &trial, &level.classes)? {
                    mult = Some(size);
                    break 'search;
                }
            }
        }
        found.push((
            level.value.half().to_length(),
            mult.expect("all classes generate themselves"),
        ));
    }
    Spectrum::from_weighted(backend.unit(), found)
}
