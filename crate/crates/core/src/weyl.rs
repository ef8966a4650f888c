//! The extended affine Weyl group `W_ext = W ⋊ Ω` acting on dimension vectors
//! (through `s_i`) and on parameters (through the dual reflections `r_i`),
//! together with canonical forms and the orbit decision.
//!
//! Conventions: a diagram automorphism σ acts by `(σ·λ)_{σ(i)} = λ_i`, and a
//! word `l₁ l₂ … l_k` acts as `l₁ ∘ l₂ ∘ … ∘ l_k`, rightmost letter first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{integer_kernel, integer_solve, GaussianRational, IntVector, Rational};
use crate::mckay::{ParamVector, QuiverData};
use crate::perm::Permutation;
use crate::primes;

/// Hard cap on reduction steps; reaching it indicates a bug.
const ITERATION_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Reflect(usize),
    Auto(Permutation),
}

impl Letter {
    fn inverse(&self) -> Letter {
        match self {
            Letter::Reflect(i) => Letter::Reflect(*i),
            Letter::Auto(p) => Letter::Auto(p.inverse()),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Reflect(i) => write!(f, "r{i}"),
            Letter::Auto(p) => write!(f, "sigma({})", {
                let c = p.to_cycle_string(">");
                // `to_cycle_string` wraps each cycle in parentheses; the outer
                // pair is provided here.
                c.strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .map(str::to_string)
                    .unwrap_or(c)
            }),
        }
    }
}

/// A word in the generators of `W_ext`, validated against its quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WeylWord {
    letters: Vec<Letter>,
}

impl WeylWord {
    pub fn empty() -> Self {
        WeylWord::default()
    }

    pub fn new(q: &QuiverData, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            check_letter(q, l)?;
        }
        Ok(WeylWord { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylWord) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        WeylWord { letters }
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// Parses `r0 r2 sigma(0>1>2)`; `id` or the empty string is the empty word.
    pub fn parse(q: &QuiverData, text: &str) -> Result<Self> {
        let n = q.num_vertices();
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "id" {
                continue;
            }
            if let Some(idx) = tok.strip_prefix('r') {
                let i = idx
                    .parse::<usize>()
                    .map_err(|_| Error::BadLetter(tok.to_string()))?;
                letters.push(Letter::Reflect(i));
            } else if let Some(body) = tok.strip_prefix("sigma") {
                let inner = body
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| Error::BadLetter(tok.to_string()))?;
                let cycles = if inner.is_empty() {
                    String::new()
                } else {
                    format!("({inner})")
                };
                let p = Permutation::parse_cycles(&cycles, n)
                    .map_err(|_| Error::BadLetter(tok.to_string()))?;
                letters.push(Letter::Auto(p));
            } else {
                return Err(Error::BadLetter(tok.to_string()));
            }
        }
        WeylWord::new(q, letters)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn check_letter(q: &QuiverData, letter: &Letter) -> Result<()> {
    match letter {
        Letter::Reflect(i) => q.check_vertex(*i),
        Letter::Auto(p) => {
            if is_automorphism(q, p) {
                Ok(())
            } else {
                Err(Error::BadLetter(format!(
                    "{} is not an automorphism of {q}",
                    Letter::Auto(p.clone())
                )))
            }
        }
    }
}

fn is_automorphism(q: &QuiverData, p: &Permutation) -> bool {
    let n = q.num_vertices();
    let adj = q.adjacency();
    p.len() == n && (0..n).all(|i| (0..n).all(|j| adj[i][j] == adj[p.apply(i)][p.apply(j)]))
}

/// `s_i(α) = α − (α, ε_i) ε_i`, for a vertex already known to be valid.
pub(crate) fn reflect_root(q: &QuiverData, i: usize, alpha: &IntVector) -> IntVector {
    let pairing: i64 = (0..q.num_vertices())
        .map(|j| q.cartan(i, j) * alpha[j])
        .sum();
    let mut out = alpha.clone();
    out[i] -= pairing;
    out
}

pub fn simple_reflection_s(q: &QuiverData, i: usize, alpha: &IntVector) -> Result<IntVector> {
    q.check_vertex(i)?;
    Error::check_len(q.num_vertices(), alpha.len())?;
    Ok(reflect_root(q, i, alpha))
}

/// `r_i(λ)_j = λ_j − (ε_i, ε_j) λ_i`.
fn reflect_param(q: &QuiverData, i: usize, lambda: &[GaussianRational]) -> Vec<GaussianRational> {
    let li = &lambda[i];
    if li.is_zero() {
        return lambda.to_vec();
    }
    lambda
        .iter()
        .enumerate()
        .map(|(j, lj)| {
            let c = q.cartan(i, j);
            if c == 0 {
                lj.clone()
            } else {
                lj - &li.scale_int(c)
            }
        })
        .collect()
}

pub fn dual_reflection_r(q: &QuiverData, i: usize, lambda: &ParamVector) -> Result<ParamVector> {
    q.check_vertex(i)?;
    Error::check_len(q.num_vertices(), lambda.len())?;
    Ok(ParamVector(reflect_param(q, i, &lambda.0)))
}

/// The full automorphism group of the underlying undirected diagram,
/// sorted by image vector (identity first).
pub fn diagram_automorphisms(q: &QuiverData) -> Vec<Permutation> {
    let n = q.num_vertices();
    let adj = q.adjacency();
    let degree: Vec<i64> = adj.iter().map(|r| r.iter().sum()).collect();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        adj: &[Vec<i64>],
        degree: &[i64],
        images: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Permutation>,
    ) {
        let k = images.len();
        if k == adj.len() {
            out.push(Permutation::from_images(images.clone()).unwrap());
            return;
        }
        for x in 0..adj.len() {
            if used[x] || degree[x] != degree[k] {
                continue;
            }
            // adjacency with every vertex already placed must be preserved
            if (0..k).any(|j| adj[k][j] != adj[x][images[j]]) {
                continue;
            }
            used[x] = true;
            images.push(x);
            rec(adj, degree, images, used, out);
            images.pop();
            used[x] = false;
        }
    }
    rec(adj, &degree, &mut images, &mut used, &mut out);
    out
}

fn apply_letter(
    q: &QuiverData,
    letter: &Letter,
    lambda: &[GaussianRational],
) -> Vec<GaussianRational> {
    match letter {
        Letter::Reflect(i) => reflect_param(q, *i, lambda),
        Letter::Auto(p) => p.permute(lambda),
    }
}

/// `w(λ)`, letters applied right to left.
pub fn apply_word(q: &QuiverData, w: &WeylWord, lambda: &ParamVector) -> Result<ParamVector> {
    Error::check_len(q.num_vertices(), lambda.len())?;
    let mut cur = lambda.0.clone();
    for letter in w.letters.iter().rev() {
        check_letter(q, letter)?;
        cur = apply_letter(q, letter, &cur);
    }
    Ok(ParamVector(cur))
}

/// `w(α)` on dimension vectors (`s_i` and permutations).
pub fn apply_word_to_root(q: &QuiverData, w: &WeylWord, alpha: &IntVector) -> Result<IntVector> {
    Error::check_len(q.num_vertices(), alpha.len())?;
    let mut cur = alpha.clone();
    for letter in w.letters.iter().rev() {
        check_letter(q, letter)?;
        cur = match letter {
            Letter::Reflect(i) => reflect_root(q, *i, &cur),
            Letter::Auto(p) => IntVector(p.permute(&cur.0)),
        };
    }
    Ok(cur)
}

/// Square integer matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.size();
        IntMatrix {
            rows: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| self.rows[i][k] * other.rows[k][j]).sum())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        IntVector(
            self.rows
                .iter()
                .map(|r| IntVector(r.clone()).dot(v))
                .collect(),
        )
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.size();
        let mut a: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn of_letter(q: &QuiverData, letter: &Letter) -> IntMatrix {
        let n = q.num_vertices();
        let mut m = IntMatrix::identity(n);
        match letter {
            Letter::Reflect(i) => {
                for j in 0..n {
                    m.rows[*i][j] -= q.cartan(*i, j);
                }
            }
            Letter::Auto(p) => {
                for i in 0..n {
                    for j in 0..n {
                        m.rows[i][j] = i64::from(p.apply(j) == i);
                    }
                }
            }
        }
        m
    }
}

/// The matrix of `w` on `K₀ ≅ ℤ^I`.
///
/// Without a parameter every letter contributes its formal matrix. With a
/// parameter, λ is threaded right to left and a reflection `r_i` reached with
/// `λ_i = 0` contributes the identity (the reflection functor is then the
/// identity functor).
pub fn k0_of_word(q: &QuiverData, w: &WeylWord, lambda: Option<&ParamVector>) -> Result<IntMatrix> {
    let n = q.num_vertices();
    let mut total = IntMatrix::identity(n);
    let mut cur = match lambda {
        Some(l) => {
            Error::check_len(n, l.len())?;
            Some(l.0.clone())
        }
        None => None,
    };
    for letter in w.letters.iter().rev() {
        check_letter(q, letter)?;
        let trivial = match (&cur, letter) {
            (Some(l), Letter::Reflect(i)) => l[*i].is_zero(),
            _ => false,
        };
        if !trivial {
            total = IntMatrix::of_letter(q, letter).mul(&total);
        }
        if let Some(l) = cur.as_mut() {
            *l = apply_letter(q, letter, l);
        }
    }
    Ok(total)
}

/// A ℤ-basis of `Λ = {ξ ∈ ℤ^I : ξ·δ = 0}`.
pub fn translation_lattice_basis(q: &QuiverData) -> Vec<IntVector> {
    integer_kernel(&[q.delta().clone()], q.num_vertices()).expect("delta has the quiver's length")
}

fn real_positive_level(q: &QuiverData, lambda: &ParamVector) -> Result<Rational> {
    let level = q.level(lambda);
    if !level.is_real() || !level.re.is_positive() {
        return Err(Error::UnsupportedParameter(format!(
            "level {level} of {lambda} is not a positive rational"
        )));
    }
    Ok(level.re)
}

/// Reflects at negative entries of `indices` (most negative first, ties to
/// the smallest index) until none is left. Returns the letters in
/// application order.
fn reduce_to_dominant(
    q: &QuiverData,
    lambda: &mut Vec<GaussianRational>,
    indices: &[usize],
) -> Result<Vec<Letter>> {
    if let Some((mut v, den)) = clear_denominators(lambda) {
        if let Some(applied) = reduce_scaled(q, &mut v, indices)? {
            for (x, vi) in lambda.iter_mut().zip(v) {
                *x = GaussianRational::real(Rational::new(vi.into(), den.clone()));
            }
            return Ok(applied);
        }
    }
    let mut applied = Vec::new();
    loop {
        let worst = indices
            .iter()
            .copied()
            .filter(|&i| lambda[i].re.is_negative())
            .min_by(|&a, &b| lambda[a].re.cmp(&lambda[b].re).then(a.cmp(&b)));
        let Some(i) = worst else { break };
        if applied.len() >= ITERATION_CAP {
            return Err(Error::IterationCap("alcove reduction"));
        }
        *lambda = reflect_param(q, i, lambda);
        applied.push(Letter::Reflect(i));
    }
    Ok(applied)
}

/// `D·λ` as machine integers for the common denominator `D` of a real
/// vector, if it fits.
fn clear_denominators(lambda: &[GaussianRational]) -> Option<(Vec<i128>, BigInt)> {
    if !lambda.iter().all(GaussianRational::is_real) {
        return None;
    }
    let den = lambda
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.re.denom()));
    let v = lambda
        .iter()
        .map(|x| (x.re.numer() * (&den / x.re.denom())).to_i128())
        .collect::<Option<Vec<i128>>>()?;
    Some((v, den))
}

/// The integer version of the reduction loop; `None` on overflow.
fn reduce_scaled(q: &QuiverData, v: &mut [i128], indices: &[usize]) -> Result<Option<Vec<Letter>>> {
    let mut applied = Vec::new();
    loop {
        let worst = indices
            .iter()
            .copied()
            .filter(|&i| v[i] < 0)
            .min_by(|&a, &b| v[a].cmp(&v[b]).then(a.cmp(&b)));
        let Some(i) = worst else { break };
        if applied.len() >= ITERATION_CAP {
            return Err(Error::IterationCap("alcove reduction"));
        }
        let vi = v[i];
        for (j, vj) in v.iter_mut().enumerate() {
            let c = q.cartan(i, j) as i128;
            if c != 0 {
                let Some(x) = c.checked_mul(vi).and_then(|d| vj.checked_sub(d)) else {
                    return Ok(None);
                };
                *vj = x;
            }
        }
        applied.push(Letter::Reflect(i));
    }
    Ok(Some(applied))
}

fn word_from_applied(mut applied: Vec<Letter>) -> WeylWord {
    applied.reverse();
    WeylWord { letters: applied }
}

/// Canonical representative of the `W_ext`-orbit of a real parameter of
/// positive level, with a word `w` such that `w(λ)` is that representative.
///
/// The representative is dominant (all entries `≥ 0`) and lexicographically
/// minimal among the diagram-automorphism images of the dominant element.
pub fn canonical_form(q: &QuiverData, lambda: &ParamVector) -> Result<(ParamVector, WeylWord)> {
    Error::check_len(q.num_vertices(), lambda.len())?;
    if !lambda.is_real() {
        return Err(Error::UnsupportedParameter(format!(
            "{lambda} has non-real entries; use canonical_form_complex"
        )));
    }
    real_positive_level(q, lambda)?;
    let all: Vec<usize> = (0..q.num_vertices()).collect();
    let mut cur = lambda.0.clone();
    let mut applied = reduce_to_dominant(q, &mut cur, &all)?;
    let (sigma, image) = diagram_automorphisms(q)
        .into_iter()
        .map(|p| {
            let image = p.permute(&cur);
            (p, image)
        })
        .min_by(|a, b| a.1.cmp(&b.1))
        .expect("identity is always an automorphism");
    if !sigma.is_identity() {
        applied.push(Letter::Auto(sigma));
    }
    Ok((ParamVector(image), word_from_applied(applied)))
}

/// Canonical representative for Gaussian-rational parameters of real
/// positive level.
///
/// Writing `λ = x + iy`, the real part is reduced by [`canonical_form`] to
/// `x₀`. The imaginary part is then normalised under the stabiliser
/// `P ⋊ Ω₀` of `x₀`, where `P` is generated by the `r_i` with `(x₀)_i = 0`
/// and `Ω₀` is the set of automorphisms fixing `x₀`: the result takes the
/// lexicographically smallest `P`-dominant element among the images of the
/// imaginary part under `Ω₀`.
pub fn canonical_form_complex(
    q: &QuiverData,
    lambda: &ParamVector,
) -> Result<(ParamVector, WeylWord)> {
    Error::check_len(q.num_vertices(), lambda.len())?;
    real_positive_level(q, lambda)?;
    let (x0, w1) = canonical_form(q, &lambda.real_part())?;
    let y1 = apply_word(q, &w1, &lambda.imag_part())?;
    let parabolic: Vec<usize> = (0..q.num_vertices()).filter(|&i| x0[i].is_zero()).collect();
    let mut best: Option<(Vec<GaussianRational>, Vec<Letter>)> = None;
    for omega in diagram_automorphisms(q) {
        if omega.permute(&x0.0) != x0.0 {
            continue;
        }
        let mut y = omega.permute(&y1.0);
        let mut applied = Vec::new();
        if !omega.is_identity() {
            applied.push(Letter::Auto(omega));
        }
        applied.extend(reduce_to_dominant(q, &mut y, &parabolic)?);
        if best.as_ref().is_none_or(|(b, _)| y < *b) {
            best = Some((y, applied));
        }
    }
    let (y0, applied) = best.expect("identity fixes x0");
    let word = word_from_applied(applied).compose(&w1);
    let canon = ParamVector::from_parts(&x0, &ParamVector(y0));
    Ok((canon, word))
}

/// Canonical form on the real or complex path, whichever applies.
pub fn canonical(q: &QuiverData, lambda: &ParamVector) -> Result<(ParamVector, WeylWord)> {
    if lambda.is_real() {
        canonical_form(q, lambda)
    } else {
        canonical_form_complex(q, lambda)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitVerdict {
    pub equivalent: bool,
    /// `w` with `w(λ) = λ'` when equivalent.
    pub witness: Option<WeylWord>,
    pub canonical: Option<(ParamVector, ParamVector)>,
}

/// Decides whether `λ' ∈ W_ext · λ`.
///
/// Levels are `W_ext`-invariant, so different levels are never equivalent.
/// Equal levels must be real and positive.
pub fn same_orbit(
    q: &QuiverData,
    lambda: &ParamVector,
    other: &ParamVector,
) -> Result<OrbitVerdict> {
    Error::check_len(q.num_vertices(), lambda.len())?;
    Error::check_len(q.num_vertices(), other.len())?;
    if q.level(lambda) != q.level(other) {
        return Ok(OrbitVerdict {
            equivalent: false,
            witness: None,
            canonical: None,
        });
    }
    real_positive_level(q, lambda)?;
    let complex = !lambda.is_real() || !other.is_real();
    let canon = |l: &ParamVector| {
        if complex {
            canonical_form_complex(q, l)
        } else {
            canonical_form(q, l)
        }
    };
    let (c1, w1) = canon(lambda)?;
    let (c2, w2) = canon(other)?;
    let equivalent = c1 == c2;
    let witness = equivalent.then(|| w2.inverse().compose(&w1));
    Ok(OrbitVerdict {
        equivalent,
        witness,
        canonical: Some((c1, c2)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductVerdict {
    pub equivalent: bool,
    /// `matching[k] = j`: left factor `k` is sent to right factor `j`, with
    /// the word realising it.
    pub matching: Option<Vec<(usize, WeylWord)>>,
}

/// Orbit decision for a product of factors: equivalent iff some bijection of
/// factors pairs equal quiver types with `W_ext`-equivalent parameters.
pub fn decide_product(
    left: &[(QuiverData, ParamVector)],
    right: &[(QuiverData, ParamVector)],
) -> Result<ProductVerdict> {
    if left.len() != right.len() {
        return Err(Error::Precondition(format!(
            "factor counts differ: {} vs {}",
            left.len(),
            right.len()
        )));
    }
    let n = left.len();
    let mut table: Vec<Vec<Option<WeylWord>>> = vec![vec![None; n]; n];
    for (k, (q, l)) in left.iter().enumerate() {
        for (j, (q2, l2)) in right.iter().enumerate() {
            if q == q2 {
                table[k][j] = same_orbit(q, l, l2)?.witness;
            }
        }
    }
    fn rec(
        k: usize,
        table: &[Vec<Option<WeylWord>>],
        used: &mut [bool],
        acc: &mut Vec<(usize, WeylWord)>,
    ) -> bool {
        if k == table.len() {
            return true;
        }
        for j in 0..table.len() {
            if used[j] {
                continue;
            }
            if let Some(w) = &table[k][j] {
                used[j] = true;
                acc.push((j, w.clone()));
                if rec(k + 1, table, used, acc) {
                    return true;
                }
                acc.pop();
                used[j] = false;
            }
        }
        false
    }
    let mut used = vec![false; n];
    let mut acc = Vec::new();
    let found = rec(0, &table, &mut used, &mut acc);
    Ok(ProductVerdict {
        equivalent: found,
        matching: found.then_some(acc),
    })
}

fn rank_mod_p(vectors: &[IntVector], p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| primes::residue(x as i128, p)).collect())
        .collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = primes::inv_mod(rows[rank][c], p).expect("p is prime");
        for r2 in 0..rows.len() {
            if r2 != rank && rows[r2][c] != 0 {
                let f = rows[r2][c] as u128 * inv as u128 % p as u128;
                let pivot = rows[rank].clone();
                for (x, &y) in rows[r2].iter_mut().zip(&pivot) {
                    let sub = (f * y as u128 % p as u128) as u64;
                    *x = (*x + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Lifts `λ' − λ ∈ Λ_p` to a translation `d ∈ Λ` over the integers.
///
/// Both parameters are integer representatives of vectors in `F_p^I` with
/// level `≡ 1 (mod p)`.
pub fn fp_translation_witness(
    q: &QuiverData,
    lambda: &IntVector,
    other: &IntVector,
    p: u64,
) -> Result<IntVector> {
    let n = q.num_vertices();
    Error::check_len(n, lambda.len())?;
    Error::check_len(n, other.len())?;
    if !primes::is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    for l in [lambda, other] {
        if primes::residue(l.dot(q.delta()) as i128, p) != 1 {
            return Err(Error::Precondition(format!(
                "level of {l} is not 1 mod {p}"
            )));
        }
    }
    let basis = translation_lattice_basis(q);
    if rank_mod_p(&basis, p) != n - 1 {
        return Err(Error::PrimeTooSmall(p));
    }
    let target = other - lambda;
    let coeffs = integer_solve(&basis, &target, Some(p))?.ok_or(Error::PrimeTooSmall(p))?;
    let mut d = IntVector::zeros(n);
    for (b, &c) in basis.iter().zip(coeffs.iter()) {
        d = &d + &b.scaled(c);
    }
    debug_assert_eq!(d.dot(q.delta()), 0);
    Ok(d)
}
