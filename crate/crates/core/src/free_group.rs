//! Reduced words in a free group.
//!
//! Letters are nonzero integers: `k` is the generator `x_k` and `-k` its
//! inverse (generators are numbered from 1).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

pub type Letter = i32;

/// Generator index (0-based) of a letter.
pub fn generator_of(letter: Letter) -> usize {
    (letter.unsigned_abs() - 1) as usize
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    /// The `index`-th generator (0-based).
    pub fn generator(index: usize) -> Self {
        FreeWord(vec![index as Letter + 1])
    }

    /// Builds a word from arbitrary letters, reducing as it goes.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for x in letters {
            assert!(x != 0, "letter 0 is not a generator");
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        Self::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `u w u⁻¹`.
    pub fn conjugate_by(&self, u: &FreeWord) -> Self {
        u.mul(self).mul(&u.inverse())
    }

    /// Largest generator index used plus one.
    pub fn rank_used(&self) -> usize {
        self.0.iter().map(|&x| generator_of(x) + 1).max().unwrap_or(0)
    }

    /// Strips matching first/last letters so no cyclic rotation cancels.
    pub fn cyclically_reduced(&self) -> FreeWord {
        let w = &self.0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        FreeWord(w[i..j].to_vec())
    }

    /// Canonical representative of the conjugacy class of `self` or its
    /// inverse: the least rotation of the cyclically reduced word or of its
    /// inverse, with letters ordered `x1 < x1^-1 < x2 < ...`.
    pub fn cyclic_canonical(&self) -> FreeWord {
        let core = self.cyclically_reduced();
        let inv = core.inverse();
        let (a, b) = (least_rotation(&core.0), least_rotation(&inv.0));
        let key = |w: &[Letter]| w.iter().map(|&x| letter_key(x)).collect::<Vec<_>>();
        FreeWord(if key(&b) < key(&a) { b } else { a })
    }

    /// Maps every letter of a generator in `deleted` to the identity and
    /// reduces.
    pub fn delete_generators(&self, deleted: &BTreeSet<usize>) -> FreeWord {
        Self::from_letters(self.0.iter().copied().filter(|&x| !deleted.contains(&generator_of(x))))
    }
}

/// Orders letters as `x1 < x1^-1 < x2 < x2^-1 < ...`.
fn letter_key(x: Letter) -> (u32, bool) {
    (x.unsigned_abs(), x < 0)
}

fn least_rotation(w: &[Letter]) -> Vec<Letter> {
    (0..w.len().max(1))
        .map(|k| {
            w[k.min(w.len())..]
                .iter()
                .chain(&w[..k.min(w.len())])
                .copied()
                .collect::<Vec<_>>()
        })
        .min_by(|a, b| a.iter().map(|&x| letter_key(x)).cmp(b.iter().map(|&x| letter_key(x))))
        .unwrap_or_default()
}

impl fmt::Display for FreeWord {
    /// `x1 x2^-1 x3`; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, &x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if x > 0 {
                write!(f, "x{x}")?;
            } else {
                write!(f, "x{}^-1", -x)?;
            }
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) form, with optional integer
    /// exponents (`x1^3`, `x2^-2`) and tokens separated by spaces or `*`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "e" {
            return Ok(FreeWord::identity());
        }
        let mut letters = Vec::new();
        for tok in s
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|t| !t.is_empty())
        {
            let bad = || Error::Parse(format!("bad word token {tok:?}"));
            let body = tok.strip_prefix('x').ok_or_else(bad)?;
            let (gen, exp) = match body.split_once('^') {
                Some((g, e)) => (g, e.parse::<i64>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let gen: Letter = gen.parse().map_err(|_| bad())?;
            if gen <= 0 {
                return Err(bad());
            }
            let letter = if exp < 0 { -gen } else { gen };
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(FreeWord::from_letters(letters))
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
