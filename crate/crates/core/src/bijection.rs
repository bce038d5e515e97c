use std::fmt;

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// An explicit injective map between two small vertex sets, possibly in
/// different graphs. Pairs are kept sorted by source vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bijection {
    pairs: Vec<(usize, usize)>,
}

impl Bijection {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Bijection> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidBijection(format!("source {} mapped twice", w[0].0)));
            }
        }
        let mut targets: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        targets.sort_unstable();
        if targets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidBijection("map is not injective".into()));
        }
        Ok(Bijection { pairs })
    }

    pub fn identity(set: &VertexSet) -> Bijection {
        Bijection {
            pairs: set.iter().map(|v| (v, v)).collect(),
        }
    }

    /// Pairs `source[i] -> target[i]`.
    pub fn zip(source: &[usize], target: &[usize]) -> Result<Bijection> {
        if source.len() != target.len() {
            return Err(Error::InvalidBijection(format!(
                "domain size {} differs from range size {}",
                source.len(),
                target.len()
            )));
        }
        Bijection::new(source.iter().copied().zip(target.iter().copied()))
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> VertexSet {
        VertexSet::new(self.pairs.iter().map(|p| p.0))
    }

    pub fn range(&self) -> VertexSet {
        VertexSet::new(self.pairs.iter().map(|p| p.1))
    }

    pub fn apply(&self, v: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&v, |p| p.0)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn inverse(&self) -> Bijection {
        Bijection::new(self.pairs.iter().map(|&(a, b)| (b, a))).expect("inverse of a bijection")
    }

    /// `other ∘ self`: apply `self` first, then `other`.
    pub fn then(&self, other: &Bijection) -> Result<Bijection> {
        if self.range() != other.domain() {
            return Err(Error::InvalidBijection(format!(
                "cannot compose: range {:?} is not the domain {:?}",
                self.range().as_slice(),
                other.domain().as_slice()
            )));
        }
        Bijection::new(
            self.pairs
                .iter()
                .map(|&(a, b)| (a, other.apply(b).expect("checked domain"))),
        )
    }

    /// Adds the pair `source -> target`.
    pub fn extended(&self, source: usize, target: usize) -> Result<Bijection> {
        Bijection::new(self.pairs.iter().copied().chain(std::iter::once((source, target))))
    }

    /// Errors unless this is a bijection from exactly `s` onto exactly `t`.
    pub fn check_between(&self, s: &VertexSet, t: &VertexSet) -> Result<()> {
        if self.domain() != *s || self.range() != *t || self.len() != s.len() {
            return Err(Error::InvalidBijection(format!(
                "{} is not a bijection {:?} -> {:?}",
                self,
                s.as_slice(),
                t.as_slice()
            )));
        }
        Ok(())
    }

    /// Every bijection `s -> t`, ordered lexicographically by the image
    /// sequence of the sorted domain.
    pub fn all_between(s: &VertexSet, t: &VertexSet) -> Vec<Bijection> {
        if s.len() != t.len() {
            return Vec::new();
        }
        let src = s.as_slice();
        let mut out = Vec::new();
        let mut image = Vec::with_capacity(src.len());
        let mut used = vec![false; t.len()];
        permutations(t.as_slice(), &mut image, &mut used, &mut |img| {
            out.push(Bijection {
                pairs: src.iter().copied().zip(img.iter().copied()).collect(),
            })
        });
        out
    }
}

fn permutations(items: &[usize], prefix: &mut Vec<usize>, used: &mut [bool], emit: &mut dyn FnMut(&[usize])) {
    if prefix.len() == items.len() {
        emit(prefix);
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            prefix.push(items[i]);
            permutations(items, prefix, used, emit);
            prefix.pop();
            used[i] = false;
        }
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{}:{}", a, b)).collect();
        f.write_str(&parts.join(" "))
    }
}

impl std::str::FromStr for Bijection {
    type Err = Error;

    /// Parses `a:b,c:d` (commas or whitespace between pairs).
    fn from_str(s: &str) -> Result<Bijection> {
        let mut pairs = Vec::new();
        for tok in s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let (a, b) = tok
                .split_once(':')
                .ok_or_else(|| Error::InvalidBijection(format!("expected a:b, got {:?}", tok)))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidBijection(format!("bad vertex {:?}", x)))
            };
            pairs.push((parse(a)?, parse(b)?));
        }
        Bijection::new(pairs)
    }
}
