//! Finite-dimensional representations of deformed preprojective algebras
//! `Π^λ(Q)` over ℚ or `F_p`, and the reflection functors `E_i`.
//!
//! A module assigns a vector space `M_i` to each vertex, a matrix `M_a` to
//! every arrow `a: t(a) → h(a)` of `Q` and a matrix `M_{a*}` to its reverse.
//! It is a `Π^λ`-module when, at every vertex `i`,
//!
//! ```text
//! Σ_{h(a)=i} M_a M_{a*} − Σ_{t(a)=i} M_{a*} M_a = λ_i · Id
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, IntVector, Rational};
use crate::mckay::{ParamVector, QuiverData};
use crate::primes;
use crate::weyl::dual_reflection_r;

/// The scalar field of a representation.
pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Embeds a parameter entry; fails for non-real values or, over `F_p`,
    /// denominators divisible by `p`.
    fn embed(&self, z: &GaussianRational) -> Result<Self::Elem>;
    fn random(&self, rng: &mut StdRng) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::from_integer(1.into())
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn embed(&self, z: &GaussianRational) -> Result<Rational> {
        if !z.is_real() {
            return Err(Error::Precondition(format!("{z} is not rational")));
        }
        Ok(z.re.clone())
    }
    fn random(&self, rng: &mut StdRng) -> Rational {
        Rational::from_integer(rng.gen_range(-1000i64..=1000).into())
    }
}

/// The prime field `F_p`, `p > 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 || !primes::is_prime(p) {
            return Err(Error::Precondition(format!(
                "{p} is not a prime greater than 3"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce(&self, x: &BigInt) -> u64 {
        let r = x % BigInt::from(self.p);
        let r = r.to_i128().expect("residue fits");
        primes::residue(r, self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        primes::inv_mod(*a, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        (*a).is_multiple_of(self.p)
    }
    fn embed(&self, z: &GaussianRational) -> Result<u64> {
        if !z.is_real() {
            return Err(Error::Precondition(format!("{z} is not rational")));
        }
        let den = self.reduce(z.re.denom());
        let inv = primes::inv_mod(den, self.p).ok_or_else(|| Error::Reduction {
            p: self.p,
            reason: format!("{p} divides the denominator of {z}", p = self.p),
        })?;
        Ok(self.mul(&self.reduce(z.re.numer()), &inv))
    }
    fn random(&self, rng: &mut StdRng) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// Dense row-major matrix over a field's elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, x: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![x; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<E> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols, "ragged matrix");
        Matrix {
            rows: r,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: E) {
        self.data[r * self.cols + c] = x;
    }

    fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (nr, nc) = (rows.len(), cols.len());
        let mut data = Vec::with_capacity(nr * nc);
        for r in rows {
            for c in cols.clone() {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: nr,
            cols: nc,
            data,
        }
    }
}

fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "shape mismatch in product");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let v = f.add(out.get(i, j), &f.mul(x, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

fn mat_add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "shape mismatch in sum");
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| f.add(x, y))
            .collect(),
    }
}

fn mat_scale<F: Field>(f: &F, k: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().map(|x| f.mul(k, x)).collect(),
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
            continue;
        };
        for c in 0..m.cols {
            m.data.swap(p * m.cols + c, row * m.cols + c);
        }
        let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
        for c in 0..m.cols {
            let v = f.mul(&inv, m.get(row, c));
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row || f.is_zero(m.get(r, col)) {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in 0..m.cols {
                let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Columns form a basis of `{x : A x = 0}`.
fn kernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut r = a.clone();
    let pivots = rref(f, &mut r);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = zeros(f, a.cols, free.len());
    for (j, &fc) in free.iter().enumerate() {
        k.set(fc, j, f.one());
        for (row, &pc) in pivots.iter().enumerate() {
            k.set(pc, j, f.neg(r.get(row, fc)));
        }
    }
    k
}

fn is_invertible<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    let mut r = a.clone();
    rref(f, &mut r).len() == a.rows
}

/// A left inverse of a matrix with independent columns, built from an
/// invertible square block of rows.
fn left_inverse<F: Field>(f: &F, k: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = k.cols;
    // pivot rows of K are the pivot columns of Kᵀ
    let mut t = zeros(f, k.cols, k.rows);
    for r in 0..k.rows {
        for c in 0..k.cols {
            t.set(c, r, k.get(r, c).clone());
        }
    }
    let rows = rref(f, &mut t);
    assert_eq!(rows.len(), n, "kernel basis has dependent columns");
    // invert the square block K[rows, :] by row reduction of [B | I]
    let mut aug = zeros(f, n, 2 * n);
    for (i, &r) in rows.iter().enumerate() {
        for c in 0..n {
            aug.set(i, c, k.get(r, c).clone());
        }
        aug.set(i, n + i, f.one());
    }
    rref(f, &mut aug);
    let inv = aug.submatrix(0..n, n..2 * n);
    let mut select = zeros(f, n, k.rows);
    for (i, &r) in rows.iter().enumerate() {
        select.set(i, r, f.one());
    }
    mat_mul(f, &inv, &select)
}

/// A representation of the doubled quiver `Q̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepModule<F: Field> {
    field: F,
    dims: Vec<usize>,
    /// `M_a : M_{t(a)} → M_{h(a)}`, a `dim h × dim t` matrix.
    forward: Vec<Matrix<F::Elem>>,
    /// `M_{a*} : M_{h(a)} → M_{t(a)}`.
    backward: Vec<Matrix<F::Elem>>,
}

impl<F: Field> RepModule<F> {
    pub fn zero(q: &QuiverData, field: F) -> Self {
        Self::with_zero_maps(q, field, vec![0; q.num_vertices()])
    }

    fn with_zero_maps(q: &QuiverData, field: F, dims: Vec<usize>) -> Self {
        let forward = q
            .arrows()
            .iter()
            .map(|&(t, h)| zeros(&field, dims[h], dims[t]))
            .collect();
        let backward = q
            .arrows()
            .iter()
            .map(|&(t, h)| zeros(&field, dims[t], dims[h]))
            .collect();
        RepModule {
            field,
            dims,
            forward,
            backward,
        }
    }

    /// Builds a module from explicit matrices, checking shapes.
    pub fn new(
        q: &QuiverData,
        field: F,
        dims: Vec<usize>,
        forward: Vec<Matrix<F::Elem>>,
        backward: Vec<Matrix<F::Elem>>,
    ) -> Result<Self> {
        Error::check_len(q.num_vertices(), dims.len())?;
        Error::check_len(q.arrows().len(), forward.len())?;
        Error::check_len(q.arrows().len(), backward.len())?;
        for (k, &(t, h)) in q.arrows().iter().enumerate() {
            let ok = (forward[k].rows, forward[k].cols) == (dims[h], dims[t])
                && (backward[k].rows, backward[k].cols) == (dims[t], dims[h]);
            if !ok {
                return Err(Error::InvalidModule(format!(
                    "arrow {k} has the wrong shape"
                )));
            }
        }
        Ok(RepModule {
            field,
            dims,
            forward,
            backward,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> IntVector {
        IntVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn forward(&self) -> &[Matrix<F::Elem>] {
        &self.forward
    }

    pub fn backward(&self) -> &[Matrix<F::Elem>] {
        &self.backward
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub holds: bool,
    /// Vertices where the relation fails.
    pub defects: Vec<usize>,
}

fn embed_params<F: Field>(field: &F, lambda: &ParamVector) -> Result<Vec<F::Elem>> {
    lambda.0.iter().map(|z| field.embed(z)).collect()
}

/// Evaluates the preprojective relation at every vertex.
pub fn check_relations<F: Field>(
    q: &QuiverData,
    lambda: &ParamVector,
    m: &RepModule<F>,
) -> Result<RelationReport> {
    let n = q.num_vertices();
    Error::check_len(n, lambda.len())?;
    Error::check_len(n, m.dims.len())?;
    let f = &m.field;
    let lam = embed_params(f, lambda)?;
    let mut lhs: Vec<Matrix<F::Elem>> = m.dims.iter().map(|&d| zeros(f, d, d)).collect();
    for (k, &(t, h)) in q.arrows().iter().enumerate() {
        let a = &m.forward[k];
        let a_star = &m.backward[k];
        lhs[h] = mat_add(f, &lhs[h], &mat_mul(f, a, a_star));
        let out = mat_mul(f, a_star, a);
        lhs[t] = mat_add(f, &lhs[t], &mat_scale(f, &f.neg(&f.one()), &out));
    }
    let defects: Vec<usize> = (0..n)
        .filter(|&i| lhs[i] != mat_scale(f, &lam[i], &identity(f, m.dims[i])))
        .collect();
    Ok(RelationReport {
        holds: defects.is_empty(),
        defects,
    })
}

/// The one-dimensional module at vertex `i`, which requires `λ_i = 0`.
pub fn simple_at<F: Field>(
    q: &QuiverData,
    field: F,
    lambda: &ParamVector,
    i: usize,
) -> Result<RepModule<F>> {
    q.check_vertex(i)?;
    Error::check_len(q.num_vertices(), lambda.len())?;
    if !field.is_zero(&field.embed(&lambda[i])?) {
        return Err(Error::NoSuchModule(format!(
            "simple module at vertex {i} needs λ_{i} = 0, got {}",
            lambda[i]
        )));
    }
    let mut dims = vec![0; q.num_vertices()];
    dims[i] = 1;
    Ok(RepModule::with_zero_maps(q, field, dims))
}

/// An arrow of `Q̄` ending at the reflected vertex.
struct Incoming {
    arrow: usize,
    /// true for the reversed arrow `a*` (when `t(a)` is the vertex)
    starred: bool,
    source: usize,
    offset: usize,
}

/// The reflection functor `E_i : Π^λ-mod → Π^{r_i(λ)}-mod` for `λ_i ≠ 0`.
///
/// With `μ = (±M_b)_b : ⊕_{h(b)=i} M_{t(b)} → M_i` (sign `−` on reversed
/// arrows) and `π = (M_{b*})_b`, the relation at `i` reads `μπ = λ_i`. The
/// new space at `i` is `K = ker μ`; the new maps are the inclusion
/// `K → ⊕` and `−λ_i` times the projection onto `K` along `im π`.
pub fn reflect_module<F: Field>(
    q: &QuiverData,
    lambda: &ParamVector,
    i: usize,
    m: &RepModule<F>,
) -> Result<(ParamVector, RepModule<F>)> {
    q.check_vertex(i)?;
    let f = m.field.clone();
    let lam_i = f.embed(&lambda[i.min(lambda.len().saturating_sub(1))])?;
    Error::check_len(q.num_vertices(), lambda.len())?;
    if f.is_zero(&lam_i) {
        return Err(Error::IdentityFunctor(i));
    }
    let report = check_relations(q, lambda, m)?;
    if !report.holds {
        return Err(Error::InvalidModule(format!(
            "relations fail at vertices {:?}",
            report.defects
        )));
    }
    let new_lambda = dual_reflection_r(q, i, lambda)?;

    let mut incoming = Vec::new();
    let mut total = 0;
    for (k, &(t, h)) in q.arrows().iter().enumerate() {
        let (starred, source) = if h == i {
            (false, t)
        } else if t == i {
            (true, h)
        } else {
            continue;
        };
        incoming.push(Incoming {
            arrow: k,
            starred,
            source,
            offset: total,
        });
        total += m.dims[source];
    }
    let di = m.dims[i];
    let mut mu = zeros(&f, di, total);
    let mut pi = zeros(&f, total, di);
    let minus_one = f.neg(&f.one());
    for b in &incoming {
        let (mb, mb_star) = if b.starred {
            (
                mat_scale(&f, &minus_one, &m.backward[b.arrow]),
                &m.forward[b.arrow],
            )
        } else {
            (m.forward[b.arrow].clone(), &m.backward[b.arrow])
        };
        for r in 0..di {
            for c in 0..m.dims[b.source] {
                mu.set(r, b.offset + c, mb.get(r, c).clone());
                pi.set(b.offset + c, r, mb_star.get(c, r).clone());
            }
        }
    }
    let kmat = kernel(&f, &mu);
    let new_di = kmat.cols;
    let proj = if new_di == 0 {
        zeros(&f, 0, total)
    } else {
        let inv_lam = f.inv(&lam_i).expect("nonzero");
        let complement = mat_add(
            &f,
            &identity(&f, total),
            &mat_scale(&f, &f.neg(&inv_lam), &mat_mul(&f, &pi, &mu)),
        );
        mat_mul(&f, &left_inverse(&f, &kmat), &complement)
    };
    let new_mu = mat_scale(&f, &f.neg(&lam_i), &proj);

    let mut dims = m.dims.clone();
    dims[i] = new_di;
    let mut out = m.clone();
    out.dims = dims;
    for b in &incoming {
        let cols = b.offset..b.offset + m.dims[b.source];
        let into_i = new_mu.submatrix(0..new_di, cols.clone());
        let out_of_i = kmat.submatrix(cols, 0..new_di);
        if b.starred {
            out.backward[b.arrow] = mat_scale(&f, &minus_one, &into_i);
            out.forward[b.arrow] = out_of_i;
        } else {
            out.forward[b.arrow] = into_i;
            out.backward[b.arrow] = out_of_i;
        }
    }
    debug_assert!(check_relations(q, &new_lambda, &out)?.holds);
    Ok((new_lambda, out))
}

/// True iff there is an invertible family `φ_j : M_j → N_j` intertwining
/// every arrow of `Q̄`.
///
/// The intertwiners form a linear space; an invertible member, if one
/// exists, is found by trying seeded random combinations of a basis (the
/// failure probability per try is at most `dim / |field sample|`).
pub fn module_iso<F: Field>(q: &QuiverData, m: &RepModule<F>, n: &RepModule<F>) -> Result<bool> {
    if m.dims != n.dims {
        return Ok(false);
    }
    let f = &m.field;
    let dims = &m.dims;
    let mut offsets = Vec::with_capacity(dims.len());
    let mut unknowns = 0;
    for &d in dims {
        offsets.push(unknowns);
        unknowns += d * d;
    }
    if unknowns == 0 {
        return Ok(true);
    }
    let var = |j: usize, r: usize, c: usize| offsets[j] + r * dims[j] + c;
    // For X: M_s → M_t (in M) and Y: N_s → N_t (in N): Y φ_s − φ_t X = 0.
    let mut equations: Vec<Vec<F::Elem>> = Vec::new();
    let mut add_map = |s: usize, t: usize, x: &Matrix<F::Elem>, y: &Matrix<F::Elem>| {
        for r in 0..dims[t] {
            for c in 0..dims[s] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..dims[s] {
                    let v = f.add(&row[var(s, k, c)], y.get(r, k));
                    row[var(s, k, c)] = v;
                }
                for k in 0..dims[t] {
                    let v = f.sub(&row[var(t, r, k)], x.get(k, c));
                    row[var(t, r, k)] = v;
                }
                equations.push(row);
            }
        }
    };
    for (k, &(t, h)) in q.arrows().iter().enumerate() {
        add_map(t, h, &m.forward[k], &n.forward[k]);
        add_map(h, t, &m.backward[k], &n.backward[k]);
    }
    let system = if equations.is_empty() {
        zeros(f, 0, unknowns)
    } else {
        Matrix::from_rows(equations, unknowns)
    };
    let basis = kernel(f, &system);
    if basis.cols == 0 {
        return Ok(false);
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let coeffs: Vec<F::Elem> = (0..basis.cols).map(|_| f.random(&mut rng)).collect();
        let combo: Vec<F::Elem> = (0..unknowns)
            .map(|u| {
                (0..basis.cols).fold(f.zero(), |acc, j| {
                    f.add(&acc, &f.mul(&coeffs[j], basis.get(u, j)))
                })
            })
            .collect();
        let invertible = dims.iter().enumerate().all(|(j, &d)| {
            let mut phi = zeros(f, d, d);
            for r in 0..d {
                for c in 0..d {
                    phi.set(r, c, combo[var(j, r, c)].clone());
                }
            }
            is_invertible(f, &phi)
        });
        if invertible {
            return Ok(true);
        }
    }
    Ok(false)
}
