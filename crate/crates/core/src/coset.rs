//! Bounded Todd–Coxeter coset enumeration (HLT strategy).

use crate::free_group::{FreeWord, Letter};

/// Default limit on the number of cosets defined during one enumeration.
pub const DEFAULT_MAX_COSETS: usize = 50_000;

/// Environment variable overriding [`DEFAULT_MAX_COSETS`].
pub const MAX_COSETS_ENV: &str = "COVSPEC_MAX_COSETS";

/// The coset bound from the environment, or the default.
pub fn max_cosets_from_env() -> usize {
    std::env::var(MAX_COSETS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_COSETS)
}

const NONE: usize = usize::MAX;

fn column(letter: Letter) -> usize {
    let g = (letter.unsigned_abs() - 1) as usize;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

/// A complete coset table: right action of each generator and inverse on
/// cosets `0..len`, with coset 0 the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    rows: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.rows[coset][column(letter)]
    }

    pub fn trace(&self, start: usize, word: &FreeWord) -> usize {
        word.letters().iter().fold(start, |c, &x| self.act(c, x))
    }

    /// Permutation of the cosets induced by generator `g` (0-based).
    pub fn permutation(&self, g: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r[2 * g]).collect()
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    max_cosets: usize,
    queue: Vec<usize>,
}

struct Overflow;

impl Enumerator {
    fn new(generators: usize, max_cosets: usize) -> Self {
        let cols = 2 * generators;
        Enumerator {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            max_cosets,
            queue: Vec::new(),
        }
    }

    fn get(&self, c: usize, col: usize) -> usize {
        self.table[c * self.cols + col]
    }

    fn set(&mut self, c: usize, col: usize, d: usize) {
        self.table[c * self.cols + col] = d;
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, col: usize) -> Result<(), Overflow> {
        let d = self.parent.len();
        if d >= self.max_cosets {
            return Err(Overflow);
        }
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = c;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let d = self.get(dead, col);
                if d == NONE {
                    continue;
                }
                self.set(d, col ^ 1, NONE);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, col ^ 1);
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<(), Overflow> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, word.len() - 1);
        loop {
            while i <= j && self.get(f, word[i]) != NONE {
                f = self.get(f, word[i]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, word[j] ^ 1) != NONE {
                b = self.get(b, word[j] ^ 1);
                if j == 0 {
                    // The backward scan consumed the whole word.
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Result<(), Overflow> {
        for h in subgroup {
            self.scan_and_fill(0, h)?;
        }
        let mut c = 0;
        while c < self.parent.len() {
            if self.alive(c) {
                for r in relators {
                    self.scan_and_fill(c, r)?;
                    if !self.alive(c) {
                        break;
                    }
                }
            }
            if self.alive(c) {
                for col in 0..self.cols {
                    if self.get(c, col) == NONE {
                        self.define(c, col)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn compact(mut self, generators: usize) -> CosetTable {
        let live: Vec<usize> = (0..self.parent.len()).filter(|&c| self.alive(c)).collect();
        let mut index = vec![NONE; self.parent.len()];
        for (i, &c) in live.iter().enumerate() {
            index[c] = i;
        }
        let rows = live
            .iter()
            .map(|&c| {
                (0..self.cols)
                    .map(|col| {
                        let d = self.get(c, col);
                        index[self.rep(d)]
                    })
                    .collect()
            })
            .collect();
        CosetTable { generators, rows }
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in `⟨x_1..x_n | relators⟩`.
/// Returns `None` when more than `max_cosets` cosets would be defined.
pub fn enumerate_cosets(
    generators: usize,
    relators: &[FreeWord],
    subgroup: &[FreeWord],
    max_cosets: usize,
) -> Option<CosetTable> {
    let to_cols = |w: &FreeWord| -> Vec<usize> {
        assert!(
            w.rank_used() <= generators,
            "word uses a generator outside the presentation"
        );
        w.letters().iter().map(|&x| column(x)).collect()
    };
    let rels: Vec<Vec<usize>> = relators.iter().map(&to_cols).filter(|r| !r.is_empty()).collect();
    let subs: Vec<Vec<usize>> = subgroup.iter().map(&to_cols).collect();
    if generators == 0 {
        return Some(CosetTable {
            generators,
            rows: vec![Vec::new()],
        });
    }
    let mut e = Enumerator::new(generators, max_cosets.max(1));
    e.run(&rels, &subs).ok()?;
    Some(e.compact(generators))
}
