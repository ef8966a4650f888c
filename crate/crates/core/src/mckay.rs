//! The affine ADE quivers arising as McKay quivers of finite subgroups of SL₂.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{integer_kernel, parse_scalar_list, GaussianRational, IntVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

/// An oriented affine Dynkin quiver together with its McKay data.
///
/// Vertex 0 is the extending vertex. For type A the rank is the number of
/// vertices of the cycle (`A3` is the triangle Ã₂); for D and E it is the
/// rank of the finite diagram, so `D4` has five vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverData {
    family: Family,
    rank: usize,
    arrows: Vec<(usize, usize)>,
    adjacency: Vec<Vec<i64>>,
    delta: IntVector,
}

impl QuiverData {
    fn from_arrows(
        family: Family,
        rank: usize,
        n: usize,
        arrows: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let mut adjacency = vec![vec![0i64; n]; n];
        for &(t, h) in &arrows {
            adjacency[t][h] += 1;
            adjacency[h][t] += 1;
        }
        let mut q = QuiverData {
            family,
            rank,
            arrows,
            adjacency,
            delta: IntVector::zeros(n),
        };
        q.delta = q.compute_delta()?;
        Ok(q)
    }

    /// δ as the primitive positive generator of the radical of the
    /// symmetrized form.
    fn compute_delta(&self) -> Result<IntVector> {
        let n = self.num_vertices();
        let rows: Vec<IntVector> = (0..n)
            .map(|i| IntVector((0..n).map(|j| self.cartan(i, j)).collect()))
            .collect();
        let kernel = integer_kernel(&rows, n)?;
        let [mut delta] = <[IntVector; 1]>::try_from(kernel).map_err(|k| {
            Error::UnsupportedType(format!("{self}: radical has rank {} instead of 1", k.len()))
        })?;
        if delta[0] < 0 {
            delta = -&delta;
        }
        if delta.iter().any(|&x| x <= 0) || delta[0] != 1 {
            return Err(Error::UnsupportedType(format!(
                "{self}: radical {delta} is not positive"
            )));
        }
        Ok(delta)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn adjacency(&self) -> &[Vec<i64>] {
        &self.adjacency
    }

    pub fn delta(&self) -> &IntVector {
        &self.delta
    }

    /// Entry `(ε_i, ε_j)` of the symmetrized Ringel form.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        let diag = if i == j { 2 } else { 0 };
        diag - self.adjacency[i][j]
    }

    pub fn check_vertex(&self, i: usize) -> Result<()> {
        if i < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::BadVertex {
                vertex: i,
                len: self.num_vertices(),
            })
        }
    }

    /// The same diagram with every arrow reversed.
    pub fn reversed(&self) -> QuiverData {
        QuiverData {
            arrows: self.arrows.iter().map(|&(t, h)| (h, t)).collect(),
            ..self.clone()
        }
    }

    /// Ringel form `⟨α,β⟩` and its symmetrization `(α,β)`.
    pub fn ringel_form(&self, alpha: &IntVector, beta: &IntVector) -> Result<(i64, i64)> {
        let n = self.num_vertices();
        Error::check_len(n, alpha.len())?;
        Error::check_len(n, beta.len())?;
        let euler = |a: &IntVector, b: &IntVector| {
            a.dot(b) - self.arrows.iter().map(|&(t, h)| a[t] * b[h]).sum::<i64>()
        };
        let pairing = euler(alpha, beta);
        Ok((pairing, pairing + euler(beta, alpha)))
    }

    /// `(α,β)` computed from the Cartan matrix.
    pub fn symmetrized(&self, alpha: &IntVector, beta: &IntVector) -> i64 {
        let n = self.num_vertices();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| alpha[i] * self.cartan(i, j) * beta[j])
                    .sum::<i64>()
            })
            .sum()
    }

    pub fn param(&self, entries: Vec<GaussianRational>) -> Result<ParamVector> {
        Error::check_len(self.num_vertices(), entries.len())?;
        Ok(ParamVector(entries))
    }

    /// λ with entries `f_i δ_i`.
    pub fn params_from_central(&self, f: &[GaussianRational]) -> Result<ParamVector> {
        Error::check_len(self.num_vertices(), f.len())?;
        Ok(ParamVector(
            f.iter()
                .zip(self.delta.iter())
                .map(|(fi, &d)| fi.scale_int(d))
                .collect(),
        ))
    }

    /// The level `λ·δ`.
    pub fn level(&self, lambda: &ParamVector) -> GaussianRational {
        self.delta.pair(&lambda.0)
    }
}

impl fmt::Display for QuiverData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Builds the standard extended Dynkin diagram of the given type.
///
/// Layouts (vertex 0 always extending, `δ_0 = 1`):
/// * `A m`: the cycle `i → i+1 mod m`; for `m = 2` two arrows `0 → 1 → 0`.
/// * `D n`: leaves 0, 1 on chain vertex 4, leaves 2, 3 on chain vertex `n`,
///   chain `4 – 5 – … – n` (for `n = 4` a single centre).
/// * `E 6`: three arms `0–1–2`, `3–4–2`, `5–6–2` around centre 2 (leaves 0, 3, 5).
/// * `E 7`: chain `0–1–…–6` with 7 attached to 3.
/// * `E 8`: chain `0–1–…–7` with 8 attached to 5.
pub fn build_affine_quiver(family: Family, rank: usize) -> Result<QuiverData> {
    let unsupported = || Error::UnsupportedType(format!("{family:?}{rank}"));
    let arrows: Vec<(usize, usize)> = match (family, rank) {
        (Family::A, m) if m >= 2 => (0..m).map(|i| (i, (i + 1) % m)).collect(),
        (Family::D, n) if n >= 4 => {
            let mut arrows = vec![(0, 4), (1, 4), (2, n), (3, n)];
            arrows.extend((4..n).map(|i| (i, i + 1)));
            arrows
        }
        (Family::E, 6) => vec![(0, 1), (1, 2), (3, 4), (4, 2), (5, 6), (6, 2)],
        (Family::E, 7) => {
            let mut arrows: Vec<_> = (0..6).map(|i| (i, i + 1)).collect();
            arrows.push((3, 7));
            arrows
        }
        (Family::E, 8) => {
            let mut arrows: Vec<_> = (0..7).map(|i| (i, i + 1)).collect();
            arrows.push((5, 8));
            arrows
        }
        _ => return Err(unsupported()),
    };
    let n = match family {
        Family::A => rank,
        _ => rank + 1,
    };
    QuiverData::from_arrows(family, rank, n, arrows)
}

impl FromStr for QuiverData {
    type Err = Error;

    /// Parses names such as `A3`, `D4`, `E8` (case insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        let rank = chars
            .as_str()
            .parse::<usize>()
            .map_err(|_| Error::UnsupportedType(s.to_string()))?;
        build_affine_quiver(family, rank)
    }
}

/// A deformation parameter λ ∈ ℚ(i)^I.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamVector(pub Vec<GaussianRational>);

impl ParamVector {
    pub fn zeros(len: usize) -> Self {
        ParamVector(vec![GaussianRational::zero(); len])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        ParamVector(v.iter().map(|&x| GaussianRational::from_int(x)).collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_scalar_list(text).map(ParamVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(GaussianRational::is_real)
    }

    pub fn real_part(&self) -> ParamVector {
        ParamVector(
            self.0
                .iter()
                .map(|z| GaussianRational::real(z.re.clone()))
                .collect(),
        )
    }

    pub fn imag_part(&self) -> ParamVector {
        ParamVector(
            self.0
                .iter()
                .map(|z| GaussianRational::real(z.im.clone()))
                .collect(),
        )
    }

    /// `re + i·im` recombined from two real vectors.
    pub fn from_parts(re: &ParamVector, im: &ParamVector) -> ParamVector {
        ParamVector(
            re.0.iter()
                .zip(&im.0)
                .map(|(a, b)| GaussianRational::new(a.re.clone(), b.re.clone()))
                .collect(),
        )
    }

    /// `λ·α`.
    pub fn pair(&self, alpha: &IntVector) -> GaussianRational {
        alpha.pair(&self.0)
    }
}

impl std::ops::Index<usize> for ParamVector {
    type Output = GaussianRational;
    fn index(&self, i: usize) -> &GaussianRational {
        &self.0[i]
    }
}

impl fmt::Display for ParamVector {
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

/// Every catalog quiver with at most `max_vertices` vertices.
pub fn catalog(max_vertices: usize) -> Vec<QuiverData> {
    let mut out = Vec::new();
    for m in 2..=max_vertices {
        out.push(build_affine_quiver(Family::A, m).unwrap());
    }
    for n in 4..max_vertices {
        out.push(build_affine_quiver(Family::D, n).unwrap());
    }
    for r in 6..=8 {
        if r < max_vertices {
            out.push(build_affine_quiver(Family::E, r).unwrap());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_scalar;

    fn q(name: &str) -> QuiverData {
        name.parse().unwrap()
    }

    #[test]
    fn triangle() {
        let a = q("A3");
        assert_eq!(a.num_vertices(), 3);
        for i in 0..3 {
            assert_eq!(a.adjacency()[i][(i + 1) % 3], 1);
            assert_eq!(a.adjacency()[i][(i + 2) % 3], 1);
        }
        assert_eq!(a.delta(), &IntVector(vec![1, 1, 1]));
    }

    #[test]
    fn d4_star() {
        let d = q("D4");
        assert_eq!(d.delta(), &IntVector(vec![1, 1, 1, 1, 2]));
        assert_eq!(d.adjacency()[4].iter().sum::<i64>(), 4);
    }

    #[test]
    fn double_edge() {
        let a = q("A2");
        assert_eq!(a.adjacency()[0][1], 2);
        assert_eq!(a.delta(), &IntVector(vec![1, 1]));
    }

    #[test]
    fn known_deltas() {
        assert_eq!(q("E6").delta(), &IntVector(vec![1, 2, 3, 1, 2, 1, 2]));
        assert_eq!(q("E7").delta(), &IntVector(vec![1, 2, 3, 4, 3, 2, 1, 2]));
        assert_eq!(q("E8").delta(), &IntVector(vec![1, 2, 3, 4, 5, 6, 4, 2, 3]));
        assert_eq!(q("D6").delta(), &IntVector(vec![1, 1, 1, 1, 2, 2, 2]));
    }

    #[test]
    fn unsupported() {
        for bad in ["A1", "D3", "E5", "E9", "B3", "A", ""] {
            assert!(bad.parse::<QuiverData>().is_err(), "{bad}");
        }
    }

    #[test]
    fn ringel_examples() {
        let a = q("A3");
        let e0 = IntVector::unit(3, 0);
        let e1 = IntVector::unit(3, 1);
        assert_eq!(a.ringel_form(&e0, &e1).unwrap().1, -1);
        assert_eq!(a.ringel_form(&e0, &e0).unwrap().1, 2);
        for quiver in catalog(10) {
            let d = quiver.delta().clone();
            assert_eq!(quiver.ringel_form(&d, &d).unwrap().1, 0);
        }
        assert!(a.ringel_form(&e0, &IntVector::zeros(2)).is_err());
    }

    #[test]
    fn form_matches_cartan_both_orientations() {
        for quiver in catalog(10) {
            let n = quiver.num_vertices();
            for orient in [quiver.clone(), quiver.reversed()] {
                for i in 0..n {
                    for j in 0..n {
                        let (_, sym) = orient
                            .ringel_form(&IntVector::unit(n, i), &IntVector::unit(n, j))
                            .unwrap();
                        assert_eq!(sym, quiver.cartan(i, j), "{quiver} ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn delta_in_radical() {
        for quiver in catalog(10) {
            let n = quiver.num_vertices();
            for i in 0..n {
                assert_eq!(
                    quiver.symmetrized(quiver.delta(), &IntVector::unit(n, i)),
                    0
                );
            }
            assert_eq!(quiver.delta()[0], 1);
        }
    }

    #[test]
    fn central_parameters() {
        let a = q("A3");
        let f = ParamVector::from_ints(&[1, 0, 0]).0;
        assert_eq!(
            a.params_from_central(&f).unwrap(),
            ParamVector::from_ints(&[1, 0, 0])
        );
        let d = q("D4");
        let mut f = ParamVector::zeros(5).0;
        f[4] = GaussianRational::one();
        assert_eq!(
            d.params_from_central(&f).unwrap(),
            ParamVector::from_ints(&[0, 0, 0, 0, 2])
        );
        assert!(d
            .params_from_central(&ParamVector::zeros(5).0)
            .unwrap()
            .0
            .iter()
            .all(|x| x.is_zero()));
        assert!(d.params_from_central(&f[..3]).is_err());
    }

    #[test]
    fn levels() {
        let a = q("A3");
        assert_eq!(
            a.level(&ParamVector::from_ints(&[1, 0, 0])),
            GaussianRational::one()
        );
        let l = ParamVector::parse("1/2,1/4,1/4").unwrap();
        assert_eq!(a.level(&l), GaussianRational::one());
        assert!(a.level(&ParamVector::from_ints(&[1, -2, 1])).is_zero());
        let c = ParamVector::parse("1/2+i,1/4-i,1/4").unwrap();
        assert_eq!(a.level(&c), parse_scalar("1").unwrap());
    }
}
