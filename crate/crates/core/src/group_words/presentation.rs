use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use super::word::{SignedGenerator, Word3};
use crate::error::{Error, Result};

/// A subset `A` of the generator indices `[1, n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    n: u32,
    members: Vec<bool>,
}

impl GeneratorSet {
    pub fn all(n: u32) -> Self {
        GeneratorSet {
            n,
            members: vec![true; n as usize],
        }
    }

    pub fn empty(n: u32) -> Self {
        GeneratorSet {
            n,
            members: vec![false; n as usize],
        }
    }

    pub fn from_indices(n: u32, indices: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut set = GeneratorSet::empty(n);
        for i in indices {
            set.insert(i)?;
        }
        Ok(set)
    }

    /// Subset whose members are the set bits of `mask` (bit `i - 1` ↔ `s_i`).
    pub fn from_mask(n: u32, mask: u64) -> Self {
        assert!(n <= 64, "mask subsets need n <= 64");
        let members = (0..n).map(|b| mask >> b & 1 == 1).collect();
        GeneratorSet { n, members }
    }

    /// Parses `all` or a comma-separated index list such as `1,4,7`.
    pub fn parse(n: u32, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("all") {
            return Ok(GeneratorSet::all(n));
        }
        let mut set = GeneratorSet::empty(n);
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let i: u32 = part
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad subset index `{part}`")))?;
            set.insert(i)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, index: u32) -> Result<()> {
        if index == 0 || index > self.n {
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        self.members[index as usize - 1] = true;
        Ok(())
    }

    pub fn contains(&self, index: u32) -> bool {
        index >= 1 && index <= self.n && self.members[index as usize - 1]
    }

    pub fn universe(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|&m| m)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i as u32 + 1)
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            return f.write_str("all");
        }
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `⟨s_1, …, s_n | R⟩` with `R` a duplicate-free list of length-3 relators.
///
/// Relator order is kept as given; encodings follow it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    n: u32,
    relators: Vec<Word3>,
}

impl Presentation {
    pub fn new(n: u32, relators: Vec<Word3>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroGenerators(n));
        }
        let mut seen = HashSet::with_capacity(relators.len());
        for r in &relators {
            for index in r.indices() {
                if index > n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if !seen.insert(*r) {
                return Err(Error::DuplicateRelator(r.to_string()));
            }
        }
        Ok(Presentation { n, relators })
    }

    pub fn empty(n: u32) -> Result<Self> {
        Presentation::new(n, Vec::new())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn relators(&self) -> &[Word3] {
        &self.relators
    }

    pub fn len(&self) -> usize {
        self.relators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relators.is_empty()
    }

    fn check_subset(&self, subset: &GeneratorSet) -> Result<()> {
        if subset.universe() != self.n {
            return Err(Error::InvalidParameter(format!(
                "subset over {} generators used with a presentation on {}",
                subset.universe(),
                self.n
            )));
        }
        Ok(())
    }

    /// `R_A`: the relators all of whose letters lie in `subset`.
    pub fn restrict(&self, subset: &GeneratorSet) -> Result<Vec<Word3>> {
        self.check_subset(subset)?;
        Ok(self
            .relators
            .iter()
            .filter(|r| r.indices().iter().all(|&i| subset.contains(i)))
            .copied()
            .collect())
    }

    /// `1 − n + |R|`. Only meaningful as an Euler characteristic when the
    /// presentation complex is aspherical; that is the caller's business.
    pub fn euler_characteristic(&self) -> i64 {
        1 - i64::from(self.n) + self.relators.len() as i64
    }

    /// Smallest generator that appears in no relator, in either sign.
    pub fn find_surviving_generator(&self) -> Option<u32> {
        let mut touched = vec![false; self.n as usize + 1];
        for r in &self.relators {
            for i in r.indices() {
                touched[i as usize] = true;
            }
        }
        (1..=self.n).find(|&i| !touched[i as usize])
    }

    /// Parses the text format: `n=<int>` on the first content line, then
    /// one relator per line as three signed indices (`+1 -2 +3`). Lines
    /// starting with `#` and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<u32> = None;
        let mut relators = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some(n) = n else {
                let value = line
                    .strip_prefix("n=")
                    .ok_or_else(|| Error::parse(line_no, "expected header `n=<int>`"))?;
                let parsed: u32 = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad generator count `{value}`")))?;
                if parsed == 0 {
                    return Err(Error::parse(line_no, "generator count must be positive"));
                }
                n = Some(parsed);
                continue;
            };
            let letters: Vec<SignedGenerator> = line
                .split_whitespace()
                .map(|tok| tok.parse().map_err(|e: String| Error::parse(line_no, e)))
                .collect::<Result<_>>()?;
            let [a, b, c] = letters[..] else {
                return Err(Error::parse(
                    line_no,
                    format!("relator needs 3 letters, found {}", letters.len()),
                ));
            };
            for l in [a, b, c] {
                if l.index > n {
                    return Err(Error::parse(
                        line_no,
                        format!("generator {} exceeds n={n}", l.index),
                    ));
                }
            }
            let word = Word3::new(a, b, c).map_err(|e| Error::parse(line_no, e.to_string()))?;
            relators.push(word);
        }
        let n = n.ok_or_else(|| Error::parse(1, "missing header `n=<int>`"))?;
        Presentation::new(n, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for r in &self.relators {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Presentation::parse(s)
    }
}
