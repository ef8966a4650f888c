//! Finite and affine real roots, and the regular / generic / commutative
//! classification of parameters.

use std::collections::{BTreeSet, VecDeque};

use crate::exact::{GaussianRational, IntVector};
use crate::mckay::{ParamVector, QuiverData};
use crate::weyl::reflect_root;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    Finite,
    AffineTruncated(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub roots: Vec<IntVector>,
    pub kind: RootKind,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, alpha: &IntVector) -> bool {
        self.roots.binary_search(alpha).is_ok()
    }

    /// The positive half.
    pub fn positive(&self) -> impl Iterator<Item = &IntVector> {
        self.roots.iter().filter(|r| r.iter().all(|&x| x >= 0))
    }
}

/// Roots of the finite Dynkin diagram (vertex 0 removed), by closing the
/// simple roots under the finite simple reflections.
pub fn finite_roots(q: &QuiverData) -> RootSet {
    let n = q.num_vertices();
    let mut seen: BTreeSet<IntVector> = BTreeSet::new();
    let mut queue: VecDeque<IntVector> = (1..n).map(|i| IntVector::unit(n, i)).collect();
    while let Some(alpha) = queue.pop_front() {
        if !seen.insert(alpha.clone()) {
            continue;
        }
        for i in 1..n {
            let image = reflect_root(q, i, &alpha);
            if !seen.contains(&image) {
                queue.push_back(image);
            }
        }
    }
    RootSet {
        roots: seen.into_iter().collect(),
        kind: RootKind::Finite,
    }
}

/// `{α + kδ : α finite, |k| ≤ bound}`.
pub fn affine_real_roots(q: &QuiverData, bound: u32) -> RootSet {
    let finite = finite_roots(q);
    let delta = q.delta();
    let b = bound as i64;
    let mut roots: Vec<IntVector> = finite
        .roots
        .iter()
        .flat_map(|alpha| (-b..=b).map(move |k| alpha + &delta.scaled(k)))
        .collect();
    roots.sort();
    roots.dedup();
    RootSet {
        roots,
        kind: RootKind::AffineTruncated(bound),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub level: GaussianRational,
    pub commutative: bool,
    pub regular: bool,
    pub generic: bool,
}

/// Classifies λ. Genericity is decided over all real roots `α + kδ` at once
/// through `λ·(α + kδ) = λ·α + k·level`: it fails iff some `λ·α / level`
/// is a rational integer.
pub fn classify_parameter(q: &QuiverData, lambda: &ParamVector) -> Classification {
    let level = q.level(lambda);
    let roots = finite_roots(q);
    let pairings: Vec<GaussianRational> = roots.positive().map(|a| lambda.pair(a)).collect();
    let regular = pairings.iter().all(|p| !p.is_zero());
    let generic = match level.inv() {
        None => false,
        Some(inv) => pairings.iter().all(|p| !(p * &inv).is_integer()),
    };
    Classification {
        commutative: level.is_zero(),
        level,
        regular,
        generic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mckay::catalog;

    fn q(name: &str) -> QuiverData {
        name.parse().unwrap()
    }

    /// Brute force: all α with α₀ = 0, |α_i| ≤ δ_i, α ≠ 0 and (α,α) = 2.
    fn box_roots(q: &QuiverData) -> Vec<IntVector> {
        let n = q.num_vertices();
        let bounds: Vec<i64> = q.delta().iter().copied().collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        fn rec(
            q: &QuiverData,
            k: usize,
            bounds: &[i64],
            cur: &mut Vec<i64>,
            out: &mut Vec<IntVector>,
        ) {
            if k == cur.len() {
                let v = IntVector(cur.clone());
                if !v.is_zero() && q.symmetrized(&v, &v) == 2 {
                    out.push(v);
                }
                return;
            }
            for x in -bounds[k]..=bounds[k] {
                cur[k] = x;
                rec(q, k + 1, bounds, cur, out);
            }
            cur[k] = 0;
        }
        rec(q, 1, &bounds, &mut cur, &mut out);
        out.sort();
        out
    }

    #[test]
    fn triangle_roots() {
        let r = finite_roots(&q("A3"));
        let expected: Vec<IntVector> = [[0, 1, 0], [0, 0, 1], [0, 1, 1]]
            .iter()
            .flat_map(|v| {
                let v = IntVector(v.to_vec());
                [-&v, v]
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(r.roots, expected);
    }

    #[test]
    fn closure_matches_box() {
        for name in ["A2", "A3", "A4", "A5", "A6", "D4"] {
            let quiver = q(name);
            assert_eq!(finite_roots(&quiver).roots, box_roots(&quiver), "{name}");
        }
    }

    #[test]
    fn counts() {
        for m in 2..=7 {
            assert_eq!(finite_roots(&q(&format!("A{m}"))).len(), m * (m - 1));
        }
        assert_eq!(finite_roots(&q("D4")).len(), 24);
        assert_eq!(finite_roots(&q("D5")).len(), 40);
        assert_eq!(finite_roots(&q("E6")).len(), 72);
        assert_eq!(finite_roots(&q("E7")).len(), 126);
        assert_eq!(finite_roots(&q("E8")).len(), 240);
    }

    #[test]
    fn closed_under_reflections() {
        for quiver in catalog(9) {
            let roots = finite_roots(&quiver);
            for i in 1..quiver.num_vertices() {
                let mut image: Vec<IntVector> = roots
                    .roots
                    .iter()
                    .map(|a| reflect_root(&quiver, i, a))
                    .collect();
                image.sort();
                assert_eq!(image, roots.roots);
            }
        }
    }

    #[test]
    fn affine_counts() {
        let a = q("A3");
        assert_eq!(affine_real_roots(&a, 0).len(), 6);
        assert_eq!(affine_real_roots(&a, 1).len(), 18);
        for quiver in catalog(9) {
            let f = finite_roots(&quiver).len();
            assert_eq!(affine_real_roots(&quiver, 2).len(), f * 5);
            for r in &affine_real_roots(&quiver, 2).roots {
                assert_eq!(quiver.symmetrized(r, r), 2);
            }
        }
    }

    #[test]
    fn classify_examples() {
        let a = q("A3");
        let c = classify_parameter(&a, &ParamVector::from_ints(&[1, 0, 0]));
        assert_eq!(c.level, GaussianRational::one());
        assert!(!c.commutative && !c.regular && !c.generic);

        let c = classify_parameter(&a, &ParamVector::parse("1/2,1/4,1/4").unwrap());
        assert!(c.regular && c.generic && !c.commutative);

        let c = classify_parameter(&a, &ParamVector::from_ints(&[1, -2, 1]));
        assert!(c.commutative && !c.generic);
        assert!(c.level.is_zero());
    }

    #[test]
    fn generic_matches_truncated_roots() {
        // λ·(α+kδ) for |k| ≤ 3 already covers every integer ratio in this range.
        let a = q("A4");
        for text in [
            "1/2,1/4,1/4,0",
            "1/3,1/3,1/6,1/6",
            "2,-1,0,0",
            "1/2,1/2,1/5,-1/5",
        ] {
            let lambda = ParamVector::parse(text).unwrap();
            let truncated = affine_real_roots(&a, 3)
                .roots
                .iter()
                .all(|r| !lambda.pair(r).is_zero());
            assert_eq!(classify_parameter(&a, &lambda).generic, truncated, "{text}");
        }
    }
}
