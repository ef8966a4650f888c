//! Permutations of `{0, …, n-1}` with cycle-notation text forms.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection `i ↦ map[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::BadLetter(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    /// Moves entry `i` to slot `σ(i)`.
    pub fn permute<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.0[i]] = x.clone();
        }
        out
    }

    /// Nontrivial cycles, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
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

    /// Cycle notation with the given separator, e.g. `(0>1>2)` or `(0 2)`.
    pub fn to_cycle_string(&self, sep: &str) -> String {
        self.cycles()
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(sep))
            })
            .collect()
    }

    /// Parses cycle notation (`(0>1>2)(3>4)`, `(0 2)`, `()`), accepting `>`,
    /// spaces or commas between entries.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let bad = |why: &str| Error::parse(text, why.to_string());
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let body = &inner[..inner_end - 1];
            let entries: Vec<usize> = body
                .split(|c: char| c == '>' || c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("non-numeric entry")))
                .collect::<Result<_>>()?;
            for (k, &x) in entries.iter().enumerate() {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(bad("entry out of range or repeated"));
                }
                images[x] = entries[(k + 1) % entries.len()];
            }
            rest = rest[inner_end + 1..].trim_start();
        }
        Ok(Permutation(images))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_cycle_string(" ");
        if s.is_empty() {
            f.write_str("()")
        } else {
            f.write_str(&s)
        }
    }
}

/// All permutations of `0..n` in lexicographic order of image vectors.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if cur.len() == n {
            out.push(Permutation(cur.clone()));
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_roundtrip() {
        for p in all_permutations(5) {
            let text = p.to_cycle_string(">");
            assert_eq!(Permutation::parse_cycles(&text, 5).unwrap(), p);
            let text = p.to_string();
            assert_eq!(Permutation::parse_cycles(&text, 5).unwrap(), p);
        }
    }

    #[test]
    fn rotation() {
        let p = Permutation::parse_cycles("(0>1>2)", 3).unwrap();
        assert_eq!(p.images(), &[1, 2, 0]);
        assert_eq!(p.permute(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(Permutation::parse_cycles("(0>0)", 3).is_err());
        assert!(Permutation::parse_cycles("(0>5)", 3).is_err());
        assert!(Permutation::parse_cycles("0>1", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }
}
