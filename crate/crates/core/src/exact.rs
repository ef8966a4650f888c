//! Exact scalars and integer lattices.
//!
//! Everything here is exact: [`Rational`] is an arbitrary precision
//! fraction kept in lowest terms, [`GaussianRational`] is an element of
//! `ℚ(i)`, and lattice problems are solved with unimodular column
//! reduction over big integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `a` or `a/b` (optional sign) into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse(text, "empty scalar"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let parse_int = |part: &str| -> Result<BigInt> {
        let digits = part.strip_prefix(['+', '-']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(text, format!("{part:?} is not an integer")));
        }
        part.parse::<BigInt>()
            .map_err(|e| Error::parse(text, e.to_string()))
    };
    let n = parse_int(num)?;
    let d = parse_int(den)?;
    if d.is_zero() {
        return Err(Error::parse(text, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// An element `re + im·i` of `ℚ(i)`.
///
/// The total order is lexicographic on `(re, im)`; it carries no algebraic
/// meaning and exists only so that tuples of roots can be canonicalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True iff the value is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussianRational::new(&self.re * k, &self.im * k)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&rat_int(k))
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(GaussianRational::new(&self.re / &norm, -(&self.im / &norm)))
    }

    /// Reduces the real part into `[0, 1)`; the imaginary part is kept.
    pub fn frac(&self) -> Self {
        GaussianRational::new(&self.re - self.re.floor(), self.im.clone())
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        GaussianRational::real(re)
    }
}

impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&format_rational(&self.re));
        }
        let im = format_rational(&self.im.abs());
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{im}i");
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{sign}{im}i", format_rational(&self.re))
    }
}

/// Parses the scalar grammar `a`, `a/b`, `ci`, `c/di`, `a/b+c/di`
/// (signs allowed on every part).
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse(text, "empty scalar"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(GaussianRational::real(parse_rational(&s)?));
    };
    // Split at the last sign that is not the leading one.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (re_text, im_text) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im_text {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        t => parse_rational(t).map_err(|_| Error::parse(text, "malformed imaginary part"))?,
    };
    let re = parse_rational(re_text).map_err(|_| Error::parse(text, "malformed real part"))?;
    Ok(GaussianRational::new(re, im))
}

impl FromStr for GaussianRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

/// Parses a comma separated list of scalars.
pub fn parse_scalar_list(text: &str) -> Result<Vec<GaussianRational>> {
    text.split(',').map(parse_scalar).collect()
}

/// Integer vector indexed by quiver vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn zeros(len: usize) -> Self {
        IntVector(vec![0; len])
    }

    /// The coordinate vector `ε_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, i64> {
        self.0.iter()
    }

    pub fn dot(&self, other: &IntVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, k: i64) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }

    /// Pairing `λ·α` with a parameter vector.
    pub fn pair(&self, lambda: &[GaussianRational]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (a, l) in self.0.iter().zip(lambda) {
            if *a != 0 {
                acc += &l.scale_int(*a);
            }
        }
        acc
    }

    pub fn parse(text: &str) -> Result<IntVector> {
        text.split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::parse(text, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

impl Index<usize> for IntVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for IntVector {
    fn index_mut(&mut self, i: usize) -> &mut i64 {
        &mut self.0[i]
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Column echelon form `A·U = H` of an integer matrix, with `U` unimodular.
///
/// `H` has `rank` nonzero leading columns; column `j < rank` has its first
/// nonzero entry at `pivot_rows[j]`, strictly increasing in `j`. The trailing
/// columns of `U` are a ℤ-basis of the kernel of `A`.
struct ColumnEchelon {
    h: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    pivot_rows: Vec<usize>,
}

impl ColumnEchelon {
    fn new(a: &[Vec<BigInt>], ncols: usize) -> Self {
        let nrows = a.len();
        let mut h: Vec<Vec<BigInt>> = a.to_vec();
        let mut u: Vec<Vec<BigInt>> = (0..ncols)
            .map(|i| {
                (0..ncols)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut pivot_rows = Vec::new();
        let mut k = 0;
        for r in 0..nrows {
            if k == ncols {
                break;
            }
            // Euclid on row r across columns k..ncols.
            loop {
                let nonzero: Vec<usize> = (k..ncols).filter(|&c| !h[r][c].is_zero()).collect();
                if nonzero.len() <= 1 {
                    if let Some(&c) = nonzero.first() {
                        swap_cols(&mut h, &mut u, k, c);
                    }
                    break;
                }
                let c_min = *nonzero
                    .iter()
                    .min_by(|&&x, &&y| h[r][x].abs().cmp(&h[r][y].abs()))
                    .unwrap();
                swap_cols(&mut h, &mut u, k, c_min);
                for &c in &nonzero {
                    let c = if c == c_min {
                        k
                    } else if c == k {
                        c_min
                    } else {
                        c
                    };
                    if c == k {
                        continue;
                    }
                    let q = h[r][c].div_floor(&h[r][k]);
                    if !q.is_zero() {
                        sub_col_multiple(&mut h, &mut u, c, k, &q);
                    }
                }
            }
            if !h[r][k].is_zero() {
                if h[r][k].is_negative() {
                    negate_col(&mut h, &mut u, k);
                }
                pivot_rows.push(r);
                k += 1;
            }
        }
        ColumnEchelon { h, u, pivot_rows }
    }

    fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    fn kernel(&self) -> Vec<Vec<BigInt>> {
        let n = self.u.len();
        (self.rank()..n)
            .map(|j| (0..n).map(|i| self.u[i][j].clone()).collect())
            .collect()
    }

    /// One integer solution of `A x = t`, if any.
    fn solve(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut residual = target.to_vec();
        let n = self.u.len();
        let mut z = vec![BigInt::zero(); n];
        for (j, &pr) in self.pivot_rows.iter().enumerate() {
            let (q, rem) = residual[pr].div_rem(&self.h[pr][j]);
            if !rem.is_zero() {
                return None;
            }
            for (row, res) in residual.iter_mut().enumerate() {
                if !self.h[row][j].is_zero() {
                    *res -= &q * &self.h[row][j];
                }
            }
            z[j] = q;
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(
            (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| !z[j].is_zero())
                        .map(|j| &self.u[i][j] * &z[j])
                        .sum()
                })
                .collect(),
        )
    }
}

fn swap_cols(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in h.iter_mut().chain(u.iter_mut()) {
        row.swap(a, b);
    }
}

fn negate_col(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], c: usize) {
    for row in h.iter_mut().chain(u.iter_mut()) {
        row[c] = -&row[c];
    }
}

/// Column `c` -= `q` · column `k`.
fn sub_col_multiple(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], c: usize, k: usize, q: &BigInt) {
    for row in h.iter_mut().chain(u.iter_mut()) {
        let delta = q * &row[k];
        row[c] -= delta;
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Precondition(format!("integer {x} does not fit in 64 bits")))
}

/// A ℤ-basis of `{x ∈ ℤⁿ : A x = 0}` for the integer matrix `A` (given by rows).
pub fn integer_kernel(rows: &[IntVector], ncols: usize) -> Result<Vec<IntVector>> {
    for r in rows {
        Error::check_len(ncols, r.len())?;
    }
    let a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    ColumnEchelon::new(&a, ncols)
        .kernel()
        .iter()
        .map(|v| {
            v.iter()
                .map(to_i64)
                .collect::<Result<Vec<_>>>()
                .map(IntVector)
        })
        .collect()
}

/// Finds integer coefficients `x` with `Σ x_k·basis_k = target`, exactly or
/// modulo `modulus`. Modular coefficients are returned as symmetric residues
/// in `(-m/2, m/2]`.
pub fn integer_solve(
    basis: &[IntVector],
    target: &IntVector,
    modulus: Option<u64>,
) -> Result<Option<IntVector>> {
    if basis.is_empty() {
        return Err(Error::Precondition("empty basis".into()));
    }
    let n = target.len();
    for b in basis {
        Error::check_len(n, b.len())?;
    }
    if modulus == Some(0) {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let k = basis.len();
    let extra = if modulus.is_some() { n } else { 0 };
    // Rows of the matrix whose columns are the basis vectors (and m·e_j).
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|row| {
            let mut r: Vec<BigInt> = basis.iter().map(|b| BigInt::from(b[row])).collect();
            if let Some(m) = modulus {
                r.extend((0..n).map(|j| {
                    if j == row {
                        BigInt::from(m)
                    } else {
                        BigInt::zero()
                    }
                }));
            }
            r
        })
        .collect();
    let t: Vec<BigInt> = target.iter().map(|&x| BigInt::from(x)).collect();
    let Some(sol) = ColumnEchelon::new(&a, k + extra).solve(&t) else {
        return Ok(None);
    };
    let coeffs = sol[..k].iter().map(|x| match modulus {
        Some(m) => {
            let m = BigInt::from(m);
            let mut r = x.mod_floor(&m);
            if &r + &r > m {
                r -= &m;
            }
            r
        }
        None => x.clone(),
    });
    coeffs
        .map(|x| to_i64(&x))
        .collect::<Result<Vec<_>>>()
        .map(|v| Some(IntVector(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector(v.to_vec())
    }

    #[test]
    fn solve_sum_of_basis() {
        let basis = [iv(&[1, -1, 0]), iv(&[0, 1, -1])];
        let x = integer_solve(&basis, &iv(&[1, 0, -1]), None).unwrap();
        assert_eq!(x, Some(iv(&[1, 1])));
    }

    #[test]
    fn solve_mod_seven() {
        let basis = [iv(&[1, -1, 0]), iv(&[0, 1, -1])];
        let x = integer_solve(&basis, &iv(&[6, 1, 0]), Some(7)).unwrap();
        assert_eq!(x, Some(iv(&[-1, 0])));
    }

    #[test]
    fn solve_parity_obstruction() {
        let x = integer_solve(&[iv(&[2, 0])], &iv(&[1, 0]), None).unwrap();
        assert_eq!(x, None);
    }

    #[test]
    fn solve_length_mismatch() {
        let err = integer_solve(&[iv(&[1, 0])], &iv(&[1, 0, 0]), None).unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }

    #[test]
    fn kernel_of_delta_row() {
        let ker = integer_kernel(&[iv(&[1, 1, 1, 1, 2])], 5).unwrap();
        assert_eq!(ker.len(), 4);
        for v in &ker {
            assert_eq!(v.dot(&iv(&[1, 1, 1, 1, 2])), 0);
        }
        // unimodular: the kernel together with ε_0 spans ℤ⁵, so every
        // vector in the kernel lattice is reachable
        let target = iv(&[2, 0, 0, 0, -1]);
        assert!(integer_solve(&ker, &target, None).unwrap().is_some());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_scalar("3/6").unwrap(),
            GaussianRational::real(rat(1, 2))
        );
        assert_eq!(
            parse_scalar("-1/3").unwrap(),
            GaussianRational::real(rat(-1, 3))
        );
        assert_eq!(
            parse_scalar("1/2+3/4i").unwrap(),
            GaussianRational::new(rat(1, 2), rat(3, 4))
        );
        assert_eq!(
            parse_scalar("-i").unwrap(),
            GaussianRational::new(rat(0, 1), rat(-1, 1))
        );
        assert_eq!(
            parse_scalar("2-i").unwrap(),
            GaussianRational::new(rat(2, 1), rat(-1, 1))
        );
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "1/0", "a", "1//2", "1/2+", "1.5", "3/4i+1", "--1"] {
            assert!(parse_scalar(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn gaussian_inverse() {
        let z = parse_scalar("1/2+3/4i").unwrap();
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_scalar() -> impl Strategy<Value = GaussianRational> {
        (arb_rational(), arb_rational(), any::<bool>()).prop_map(|(re, im, real)| {
            if real {
                GaussianRational::real(re)
            } else {
                GaussianRational::new(re, im)
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn format_parse_roundtrip(z in arb_scalar()) {
            prop_assert_eq!(parse_scalar(&z.to_string()).unwrap(), z);
        }
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if let Some(inv) = a.inv() {
                prop_assert_eq!(&a * &inv, GaussianRational::one());
            }
        }

        #[test]
        fn solve_reproduces_target(
            basis in proptest::collection::vec(proptest::collection::vec(-6i64..6, 4), 1..4),
            coeffs in proptest::collection::vec(-5i64..5, 3),
            m in 2u64..40,
        ) {
            let basis: Vec<IntVector> = basis.into_iter().map(IntVector).collect();
            let mut target = IntVector::zeros(4);
            for (b, c) in basis.iter().zip(&coeffs) {
                target = &target + &b.scaled(*c);
            }
            let x = integer_solve(&basis, &target, None).unwrap().expect("constructed solvable");
            let mut back = IntVector::zeros(4);
            for (b, c) in basis.iter().zip(x.iter()) {
                back = &back + &b.scaled(*c);
            }
            prop_assert_eq!(&back, &target);

            let shifted = &target + &IntVector(vec![m as i64, 0, -2 * m as i64, 0]);
            let x = integer_solve(&basis, &shifted, Some(m)).unwrap().expect("solvable mod m");
            let mut back = IntVector::zeros(4);
            for (b, c) in basis.iter().zip(x.iter()) {
                back = &back + &b.scaled(*c);
            }
            for (u, v) in back.iter().zip(shifted.iter()) {
                prop_assert_eq!((u - v).rem_euclid(m as i64), 0);
            }
        }
    }
}
