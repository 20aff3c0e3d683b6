//! Permutation groups and Sunada's class-counting condition.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient group closed explicitly.
pub const MAX_GROUP_ORDER: usize = 1_000_000;

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument("images do not form a permutation".into()));
            }
        }
        Ok(Perm(images))
    }

    /// Parses cycle notation such as `"(0 1 2)(3 4)"` on `0..n`; `"()"` is the
    /// identity.
    pub fn from_cycles(n: usize, text: &str) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        let text = text.trim();
        if !text.starts_with('(') && !text.is_empty() {
            return Err(Error::Parse(format!("expected cycle notation, got {text:?}")));
        }
        for cycle in text.split('(').skip(1) {
            let body = cycle
                .trim()
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let points = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            for (k, &p) in points.iter().enumerate() {
                if p >= n || std::mem::replace(&mut used[p], true) {
                    return Err(Error::Parse(format!("point {p} out of range or repeated in {text:?}")));
                }
                images[p] = points[(k + 1) % points.len()];
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// `g self g⁻¹`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            write!(f, "({})", c.iter().join(" "))?;
        }
        Ok(())
    }
}

/// Closes `gens` under composition.
pub fn generate(n: usize, gens: &[Perm], limit: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                if seen.len() > limit {
                    return Err(Error::EnumerationLimit {
                        what: "group elements",
                        limit,
                    });
                }
                queue.push_back(q);
            }
        }
        out.push(p);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum AmbientGroup {
    /// The full symmetric group: classes are cycle types.
    Symmetric,
    /// The group generated by these permutations: classes are conjugation
    /// orbits.
    Generated(Vec<Perm>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PermGroupTriple {
    pub degree: usize,
    pub ambient: AmbientGroup,
    pub h1: Vec<Perm>,
    pub h2: Vec<Perm>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassCount {
    /// A representative of the class, in cycle notation.
    pub representative: String,
    pub cycle_type: Vec<usize>,
    pub h1: usize,
    pub h2: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SunadaReport {
    pub holds: bool,
    /// Classes meeting `H1 ∪ H2`, ordered by cycle type then representative.
    pub table: Vec<ClassCount>,
}

impl SunadaReport {
    /// The count row for the class of the given cycle type, when unique.
    pub fn count_for(&self, cycle_type: &[usize]) -> Option<&ClassCount> {
        let mut rows = self.table.iter().filter(|r| r.cycle_type == cycle_type);
        let first = rows.next()?;
        rows.next().is_none().then_some(first)
    }
}

/// Checks `#(C ∩ H1) = #(C ∩ H2)` for every conjugacy class `C` of the
/// ambient group.
pub fn sunada_condition(t: &PermGroupTriple) -> Result<SunadaReport> {
    if t.h1.len() != t.h2.len() {
        return Err(Error::InvalidArgument(format!(
            "|H1| = {} but |H2| = {}",
            t.h1.len(),
            t.h2.len()
        )));
    }
    if t.h1.iter().chain(&t.h2).any(|p| p.degree() != t.degree) {
        return Err(Error::InvalidArgument("permutation degree mismatch".into()));
    }
    let label: Box<dyn Fn(&Perm) -> Perm> = match &t.ambient {
        AmbientGroup::Symmetric => Box::new(|p: &Perm| canonical_of_type(&p.cycle_type())),
        AmbientGroup::Generated(gens) => {
            let group: HashSet<Perm> = generate(t.degree, gens, MAX_GROUP_ORDER)?.into_iter().collect();
            if let Some(p) = t.h1.iter().chain(&t.h2).find(|p| !group.contains(*p)) {
                return Err(Error::InvalidArgument(format!("{p} is not in the ambient group")));
            }
            let gens = gens.clone();
            let mut memo: HashMap<Perm, Perm> = HashMap::new();
            for p in t.h1.iter().chain(&t.h2) {
                if !memo.contains_key(p) {
                    let orbit = conjugation_orbit(p, &gens);
                    let least = orbit.iter().min().expect("orbit contains p").clone();
                    for q in orbit {
                        memo.insert(q, least.clone());
                    }
                }
            }
            Box::new(move |p: &Perm| memo[p].clone())
        }
    };
    let mut counts: BTreeMap<(Vec<usize>, Perm), (usize, usize)> = BTreeMap::new();
    for p in &t.h1 {
        counts.entry((p.cycle_type(), label(p))).or_default().0 += 1;
    }
    for p in &t.h2 {
        counts.entry((p.cycle_type(), label(p))).or_default().1 += 1;
    }
    let table: Vec<ClassCount> = counts
        .into_iter()
        .map(|((cycle_type, rep), (h1, h2))| ClassCount {
            representative: rep.to_string(),
            cycle_type,
            h1,
            h2,
        })
        .collect();
    Ok(SunadaReport {
        holds: table.iter().all(|r| r.h1 == r.h2),
        table,
    })
}

fn canonical_of_type(cycle_type: &[usize]) -> Perm {
    let n: usize = cycle_type.iter().sum();
    let mut images: Vec<usize> = (0..n).collect();
    let mut start = 0;
    for &len in cycle_type {
        for k in 0..len {
            images[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    Perm(images)
}

fn conjugation_orbit(p: &Perm, gens: &[Perm]) -> Vec<Perm> {
    let mut seen: HashSet<Perm> = HashSet::from([p.clone()]);
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(q) = queue.pop_front() {
        for g in gens {
            let r = q.conjugate_by(g);
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    seen.into_iter().collect()
}

/// A finite group given by its multiplication table, element 0 the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGroup {
    name: String,
    table: Vec<Vec<usize>>,
}

impl CayleyGroup {
    /// Builds the table of a group whose elements are encoded as indices by
    /// `elements` and multiplied by `mul`.
    fn from_elements<E: Clone + Eq + std::hash::Hash>(
        name: String,
        elements: Vec<E>,
        mul: impl Fn(&E, &E) -> E,
    ) -> Self {
        let index: HashMap<E, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&mul(a, b)]).collect())
            .collect();
        CayleyGroup { name, table }
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_elements(format!("Z/{n}"), (0..n).collect(), |a, b| (a + b) % n)
    }

    /// `(ℤ/p)^k`.
    pub fn elementary_abelian(p: usize, k: u32) -> Self {
        let elements: Vec<Vec<usize>> = (0..k).map(|_| 0..p).multi_cartesian_product().collect::<Vec<_>>();
        let elements = if k == 0 { vec![Vec::new()] } else { elements };
        Self::from_elements(format!("(Z/{p})^{k}"), elements, |a, b| {
            a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
        })
    }

    /// Upper unitriangular 3×3 matrices over `ℤ/p`, as triples `(a, b, c)`
    /// with `(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')`.
    pub fn heisenberg_mod_p(p: usize) -> Self {
        let elements: Vec<(usize, usize, usize)> = (0..p)
            .flat_map(|a| (0..p).flat_map(move |b| (0..p).map(move |c| (a, b, c))))
            .collect();
        Self::from_elements(format!("Heis(Z/{p})"), elements, |x, y| {
            ((x.0 + y.0) % p, (x.1 + y.1) % p, (x.2 + y.2 + x.0 * y.1) % p)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order())
            .map(|g| self.element_order(g))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn closure(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    /// Size of a smallest generating set, by exhaustive search.
    pub fn min_generating_set_size(&self) -> usize {
        if self.order() == 1 {
            return 0;
        }
        (1..self.order())
            .find(|&k| {
                (1..self.order())
                    .combinations(k)
                    .any(|s| self.closure(&s) == self.order())
            })
            .expect("the whole group generates itself")
    }

    /// Left-regular embedding into the symmetric group on the elements.
    pub fn left_regular(&self) -> Vec<Perm> {
        (0..self.order())
            .map(|g| Perm((0..self.order()).map(|h| self.mul(g, h)).collect()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KomatsuReport {
    pub holds: bool,
    pub degree: usize,
    pub sunada: SunadaReport,
    pub h1_min_generators: usize,
    pub h2_min_generators: usize,
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Regularly embeds two groups of exponent `p` and checks that every
/// nontrivial element has cycle type `(p, .., p)`, so both meet only the
/// identity class and one further class of the symmetric group.
pub fn komatsu_check(h1: &CayleyGroup, h2: &CayleyGroup, p: usize) -> Result<KomatsuReport> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("p = {p} must be an odd prime")));
    }
    if h1.order() != h2.order() {
        return Err(Error::InvalidArgument("groups must have equal order".into()));
    }
    for h in [h1, h2] {
        if h.exponent() != p {
            return Err(Error::InvalidArgument(format!(
                "{} has exponent {}, not {p}",
                h.name(),
                h.exponent()
            )));
        }
    }
    let degree = h1.order();
    let pure = vec![p; degree / p];
    let (e1, e2) = (h1.left_regular(), h2.left_regular());
    let uniform = e1
        .iter()
        .chain(&e2)
        .filter(|g| !g.is_identity())
        .all(|g| g.cycle_type() == pure);
    let sunada = sunada_condition(&PermGroupTriple {
        degree,
        ambient: AmbientGroup::Symmetric,
        h1: e1,
        h2: e2,
    })?;
    Ok(KomatsuReport {
        holds: uniform && sunada.holds,
        degree,
        sunada,
        h1_min_generators: h1.min_generating_set_size(),
        h2_min_generators: h2.min_generating_set_size(),
    })
}

/// Triple in the JSON form `{"N", "G_gens", "H1", "H2"}`; permutations are
/// strings in cycle notation and a missing `G_gens` means the full
/// symmetric group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleJson {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "G_gens", default)]
    pub g_gens: Option<Vec<String>>,
    #[serde(rename = "H1")]
    pub h1: Vec<String>,
    #[serde(rename = "H2")]
    pub h2: Vec<String>,
}

impl TripleJson {
    pub fn build(&self) -> Result<PermGroupTriple> {
        let parse = |v: &[String]| {
            v.iter()
                .map(|s| Perm::from_cycles(self.n, s))
                .collect::<Result<Vec<_>>>()
        };
        let ambient = match &self.g_gens {
            None => AmbientGroup::Symmetric,
            Some(g) => AmbientGroup::Generated(parse(g)?),
        };
        Ok(PermGroupTriple {
            degree: self.n,
            ambient,
            h1: parse(&self.h1)?,
            h2: parse(&self.h2)?,
        })
    }
}
