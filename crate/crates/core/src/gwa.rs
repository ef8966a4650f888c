//! Type A parameters in root coordinates and the Morita test for
//! generalized Weyl algebras.
//!
//! On the cycle quiver with `m` vertices a level-one parameter λ corresponds
//! to the tuple of partial sums `t_i = λ_0 + … + λ_i`, whose last entry is 1.
//! Two algebras `A(v)`, `A(v')` with distinct roots are Morita equivalent iff
//! `t'_i = ε t_{σ(i)} + d_i + c` for a sign ε, a permutation σ, an integer
//! vector `d` and a scalar `c`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{parse_scalar, parse_scalar_list, GaussianRational, IntVector};
use crate::mckay::{build_affine_quiver, Family, ParamVector, QuiverData};
use crate::perm::Permutation;
use crate::weyl::{Letter, WeylWord};

/// An ordered tuple of roots `(t_0, …, t_{m-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GwaRoots(pub Vec<GaussianRational>);

impl GwaRoots {
    pub fn parse(text: &str) -> Result<Self> {
        parse_scalar_list(text).map(GwaRoots)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.0.last() == Some(&GaussianRational::one())
    }

    /// True iff the roots are pairwise distinct.
    pub fn is_distinct(&self) -> bool {
        let mut sorted = self.0.clone();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    fn require_normalized(&self) -> Result<()> {
        if self.0.len() < 2 || !self.is_normalized() {
            return Err(Error::Precondition(format!(
                "{self} is not a normalized root tuple (length ≥ 2, last entry 1)"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for GwaRoots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The cycle quiver on `m` vertices.
pub fn cycle_quiver(m: usize) -> Result<QuiverData> {
    build_affine_quiver(Family::A, m)
}

/// `λ_0 = t_0`, `λ_i = t_i − t_{i−1}`.
pub fn lambda_from_roots(t: &GwaRoots) -> Result<ParamVector> {
    t.require_normalized()?;
    let mut out = vec![t.0[0].clone()];
    out.extend(t.0.windows(2).map(|w| &w[1] - &w[0]));
    Ok(ParamVector(out))
}

/// Partial sums of a level-one parameter on the cycle quiver.
pub fn roots_from_lambda(lambda: &ParamVector) -> Result<GwaRoots> {
    let mut acc = GaussianRational::zero();
    let t: Vec<GaussianRational> = lambda
        .0
        .iter()
        .map(|l| {
            acc += l;
            acc.clone()
        })
        .collect();
    if t.last() != Some(&GaussianRational::one()) {
        return Err(Error::Precondition(format!(
            "{lambda} does not have level 1"
        )));
    }
    Ok(GwaRoots(t))
}

/// Generators of `W_ext` for the cycle quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GwaGenerator {
    Reflect(usize),
    /// `ρ(λ) = (λ_1, …, λ_{m−1}, λ_0)`.
    Rho,
    /// `τ(λ) = (λ_{m−1}, …, λ_0)`.
    Tau,
}

impl GwaGenerator {
    /// The same generator as a letter acting on λ.
    pub fn to_letter(self, m: usize) -> Letter {
        match self {
            GwaGenerator::Reflect(i) => Letter::Reflect(i),
            // (ρλ)_j = λ_{j+1}, so vertex i moves to i − 1
            GwaGenerator::Rho => Letter::Auto(
                Permutation::from_images((0..m).map(|i| (i + m - 1) % m).collect()).unwrap(),
            ),
            GwaGenerator::Tau => {
                Letter::Auto(Permutation::from_images((0..m).map(|i| m - 1 - i).collect()).unwrap())
            }
        }
    }

    pub fn to_word(self, m: usize) -> Result<WeylWord> {
        WeylWord::new(&cycle_quiver(m)?, vec![self.to_letter(m)])
    }

    pub fn all(m: usize) -> Vec<GwaGenerator> {
        let mut gens: Vec<_> = (0..m).map(GwaGenerator::Reflect).collect();
        gens.push(GwaGenerator::Rho);
        gens.push(GwaGenerator::Tau);
        gens
    }
}

/// The action of a `W_ext` generator written directly on normalized roots.
pub fn gwa_generator_in_t(g: GwaGenerator, t: &GwaRoots) -> Result<GwaRoots> {
    t.require_normalized()?;
    let m = t.len();
    let one = GaussianRational::one();
    let t = &t.0;
    let out: Vec<GaussianRational> = match g {
        GwaGenerator::Reflect(i) if i >= m => {
            return Err(Error::BadVertex { vertex: i, len: m });
        }
        GwaGenerator::Reflect(0) => {
            // t_{m-1} stays 1: the shift by −t_0 applies to interior entries only
            let mut out: Vec<_> = t.iter().map(|x| x - &t[0]).collect();
            out[0] = -&t[0];
            out[m - 1] = one;
            out
        }
        GwaGenerator::Reflect(i) if i == m - 1 => {
            let shift = &one - &t[m - 2];
            let mut out: Vec<_> = t.iter().map(|x| x + &shift).collect();
            out[m - 2] = &out[m - 2] + &shift;
            out[m - 1] = one;
            out
        }
        GwaGenerator::Reflect(i) => {
            let mut out = t.clone();
            out.swap(i - 1, i);
            out
        }
        GwaGenerator::Rho => {
            let mut out: Vec<_> = t[1..].iter().map(|x| x - &t[0]).collect();
            out.push(one);
            out
        }
        GwaGenerator::Tau => {
            let mut out: Vec<_> = t[..m - 1].iter().rev().map(|x| &one - x).collect();
            out.push(one);
            out
        }
    };
    Ok(GwaRoots(out))
}

/// `t ↦ (ε t_{σ(i)} + d_i + c)_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwaGroupElement {
    pub eps: i8,
    pub sigma: Permutation,
    pub d: IntVector,
    pub c: GaussianRational,
}

impl GwaGroupElement {
    pub fn identity(n: usize) -> Self {
        GwaGroupElement {
            eps: 1,
            sigma: Permutation::identity(n),
            d: IntVector::zeros(n),
            c: GaussianRational::zero(),
        }
    }

    /// Parses `eps=-1 sigma=(0 2) d=[0,1,2] c=1/2`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let bad = |why: &str| Error::parse(text, why.to_string());
        let field = |key: &str| -> Result<&str> {
            let start = text
                .find(&format!("{key}="))
                .ok_or_else(|| bad("missing field"))?
                + key.len()
                + 1;
            let rest = &text[start..];
            let end = [" eps=", " sigma=", " d=", " c="]
                .iter()
                .filter_map(|k| rest.find(k))
                .min()
                .unwrap_or(rest.len());
            Ok(rest[..end].trim())
        };
        let eps = match field("eps")? {
            "1" | "+1" => 1,
            "-1" => -1,
            _ => return Err(bad("eps must be ±1")),
        };
        let sigma = Permutation::parse_cycles(field("sigma")?, n)?;
        let d_text = field("d")?;
        let d_inner = d_text
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| bad("d must be [..]"))?;
        let d = IntVector::parse(d_inner)?;
        Error::check_len(n, d.len())?;
        let c = parse_scalar(field("c")?)?;
        Ok(GwaGroupElement { eps, sigma, d, c })
    }
}

impl fmt::Display for GwaGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.d.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "eps={} sigma={} d=[{}] c={}",
            self.eps,
            self.sigma,
            d.join(","),
            self.c
        )
    }
}

pub fn apply_group_element(g: &GwaGroupElement, t: &GwaRoots) -> Result<GwaRoots> {
    let n = t.len();
    Error::check_len(n, g.sigma.len())?;
    Error::check_len(n, g.d.len())?;
    Ok(GwaRoots(
        (0..n)
            .map(|i| {
                let x = t.0[g.sigma.apply(i)].scale_int(g.eps as i64);
                &(&x + &GaussianRational::from_int(g.d[i])) + &g.c
            })
            .collect(),
    ))
}

/// Sorts the roots and shifts them so that the largest becomes 1.
///
/// Returns the normalized tuple and the element `g` with `g·t` equal to it.
pub fn normalize_roots(t: &[GaussianRational]) -> Result<(GwaRoots, GwaGroupElement)> {
    if t.is_empty() {
        return Err(Error::Precondition("empty root multiset".into()));
    }
    let n = t.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| t[a].cmp(&t[b]).then(a.cmp(&b)));
    let c = &GaussianRational::one() - &t[order[n - 1]];
    let g = GwaGroupElement {
        eps: 1,
        sigma: Permutation::from_images(order)?,
        d: IntVector::zeros(n),
        c,
    };
    let normalized = apply_group_element(&g, &GwaRoots(t.to_vec()))?;
    Ok((normalized, g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwaVerdict {
    pub equivalent: bool,
    /// `g` with `g·t = t'` (as tuples) when equivalent.
    pub witness: Option<GwaGroupElement>,
    pub distinct: (bool, bool),
    pub reason: Option<String>,
}

/// Orders indices by residue mod ℤ, then by value, then by position.
fn residue_order(v: &[GaussianRational]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| {
        v[a].frac()
            .cmp(&v[b].frac())
            .then_with(|| v[a].cmp(&v[b]))
            .then(a.cmp(&b))
    });
    order
}

/// Decides whether `t'` lies in the orbit of `t` under
/// `t ↦ ε t_σ + d + c`.
///
/// For each sign and each choice of the root that the first entry of `t'`
/// comes from, the shift `c` is determined up to an integer, and the test
/// reduces to equality of residue multisets mod ℤ. Signs are tried `+1`
/// first, candidates in index order, so the witness is deterministic.
pub fn gwa_decide(t: &[GaussianRational], t_prime: &[GaussianRational]) -> GwaVerdict {
    let distinct = (
        GwaRoots(t.to_vec()).is_distinct(),
        GwaRoots(t_prime.to_vec()).is_distinct(),
    );
    if t.len() != t_prime.len() || t.is_empty() {
        return GwaVerdict {
            equivalent: false,
            witness: None,
            distinct,
            reason: Some(format!(
                "root counts differ: {} vs {}",
                t.len(),
                t_prime.len()
            )),
        };
    }
    let n = t.len();
    let target_order = residue_order(t_prime);
    let target_res: Vec<GaussianRational> =
        target_order.iter().map(|&i| t_prime[i].frac()).collect();
    for eps in [1i8, -1] {
        let signed: Vec<GaussianRational> = t.iter().map(|x| x.scale_int(eps as i64)).collect();
        for j in 0..n {
            let c = &t_prime[0] - &signed[j];
            let shifted: Vec<GaussianRational> = signed.iter().map(|x| x + &c).collect();
            let order = residue_order(&shifted);
            if order
                .iter()
                .zip(&target_res)
                .any(|(&k, r)| &shifted[k].frac() != r)
            {
                continue;
            }
            let mut sigma = vec![0; n];
            let mut d = IntVector::zeros(n);
            for (&i, &k) in target_order.iter().zip(&order) {
                sigma[i] = k;
                let diff = &t_prime[i] - &shifted[k];
                d[i] = diff
                    .re
                    .to_integer()
                    .try_into()
                    .expect("root differences fit in 64 bits");
            }
            let witness = GwaGroupElement {
                eps,
                sigma: Permutation::from_images(sigma).expect("matching is a bijection"),
                d,
                c,
            };
            return GwaVerdict {
                equivalent: true,
                witness: Some(witness),
                distinct,
                reason: None,
            };
        }
    }
    GwaVerdict {
        equivalent: false,
        witness: None,
        distinct,
        reason: Some("no sign and shift match the residues mod Z".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::weyl::apply_word;

    fn roots(text: &str) -> GwaRoots {
        GwaRoots::parse(text).unwrap()
    }

    #[test]
    fn dictionary_examples() {
        assert_eq!(
            lambda_from_roots(&roots("1/2,3/4,1")).unwrap(),
            ParamVector::parse("1/2,1/4,1/4").unwrap()
        );
        assert_eq!(
            lambda_from_roots(&roots("0,1")).unwrap(),
            ParamVector::parse("0,1").unwrap()
        );
        assert!(lambda_from_roots(&roots("0,2")).is_err());
        assert_eq!(
            roots_from_lambda(&ParamVector::parse("1/2,1/4,1/4").unwrap()).unwrap(),
            roots("1/2,3/4,1")
        );
        assert_eq!(
            roots_from_lambda(&ParamVector::parse("1,0,0").unwrap()).unwrap(),
            roots("1,1,1")
        );
        assert_eq!(
            roots_from_lambda(&ParamVector::parse("0,0,0,1").unwrap()).unwrap(),
            roots("0,0,0,1")
        );
        assert!(roots_from_lambda(&ParamVector::parse("1,1,0").unwrap()).is_err());
    }

    #[test]
    fn generator_examples() {
        let t = roots("1/5,2/7,1");
        assert_eq!(
            gwa_generator_in_t(GwaGenerator::Reflect(1), &t).unwrap(),
            roots("2/7,1/5,1")
        );
        // (t_0 + 1 − t_1, 2 − t_1, 1)
        assert_eq!(
            gwa_generator_in_t(GwaGenerator::Reflect(2), &t).unwrap(),
            roots("32/35,12/7,1")
        );
        // (1 − t_1, 1 − t_0, 1)
        assert_eq!(
            gwa_generator_in_t(GwaGenerator::Tau, &t).unwrap(),
            roots("5/7,4/5,1")
        );
        assert_eq!(
            gwa_generator_in_t(GwaGenerator::Rho, &t).unwrap(),
            roots("3/35,4/5,1")
        );
        assert_eq!(
            gwa_generator_in_t(GwaGenerator::Reflect(0), &t).unwrap(),
            roots("-1/5,3/35,1")
        );
        assert!(gwa_generator_in_t(GwaGenerator::Rho, &roots("1,2")).is_err());
    }

    #[test]
    fn generators_agree_with_lambda_action() {
        for m in 2..=5 {
            let q = cycle_quiver(m).unwrap();
            let mut t: Vec<GaussianRational> = (0..m - 1)
                .map(|k| GaussianRational::new(rat(k as i64 * 3 + 1, 7), rat(k as i64 - 1, 3)))
                .collect();
            t.push(GaussianRational::one());
            let t = GwaRoots(t);
            for g in GwaGenerator::all(m) {
                let via_lambda =
                    apply_word(&q, &g.to_word(m).unwrap(), &lambda_from_roots(&t).unwrap())
                        .unwrap();
                assert_eq!(
                    gwa_generator_in_t(g, &t).unwrap(),
                    roots_from_lambda(&via_lambda).unwrap(),
                    "m={m} {g:?}"
                );
            }
        }
    }

    #[test]
    fn group_element_examples() {
        let t = roots("0,1/2,1");
        assert_eq!(
            apply_group_element(&GwaGroupElement::identity(3), &t).unwrap(),
            t
        );
        let g = GwaGroupElement {
            eps: -1,
            sigma: Permutation::identity(3),
            d: IntVector(vec![0, 1, 2]),
            c: GaussianRational::real(rat(1, 2)),
        };
        assert_eq!(apply_group_element(&g, &t).unwrap(), roots("1/2,1,3/2"));
        let g3 = GwaGroupElement {
            d: IntVector(vec![0, 1, 3]),
            ..g.clone()
        };
        assert_eq!(apply_group_element(&g3, &t).unwrap(), roots("1/2,1,5/2"));
        let u = roots("1/3,2+i,7/2");
        let shift = GwaGroupElement {
            c: &GaussianRational::one() - &u.0[2],
            ..GwaGroupElement::identity(3)
        };
        assert!(apply_group_element(&shift, &u).unwrap().is_normalized());
        assert!(apply_group_element(&g, &roots("0,1")).is_err());
    }

    #[test]
    fn group_element_text_roundtrip() {
        let g = GwaGroupElement {
            eps: -1,
            sigma: Permutation::parse_cycles("(0 2)", 3).unwrap(),
            d: IntVector(vec![0, 1, 2]),
            c: GaussianRational::new(rat(1, 2), rat(-3, 4)),
        };
        let text = g.to_string();
        assert_eq!(text, "eps=-1 sigma=(0 2) d=[0,1,2] c=1/2-3/4i");
        assert_eq!(GwaGroupElement::parse(&text, 3).unwrap(), g);
        let id = GwaGroupElement::identity(2);
        assert_eq!(GwaGroupElement::parse(&id.to_string(), 2).unwrap(), id);
    }

    #[test]
    fn normalize_examples() {
        let (t, g) = normalize_roots(&roots("1,0,1/2").0).unwrap();
        assert_eq!(t, roots("0,1/2,1"));
        assert!(g.c.is_zero());
        let (t, g) = normalize_roots(&roots("3/2,1/2,5/2").0).unwrap();
        assert_eq!(t, roots("-1,0,1"));
        assert_eq!(g.c, GaussianRational::real(rat(-3, 2)));
        let (t, g) = normalize_roots(&roots("i,0").0).unwrap();
        assert_eq!(t, roots("1-i,1"));
        assert_eq!(g.c, GaussianRational::new(rat(1, 1), rat(-1, 1)));
    }

    #[test]
    fn decide_examples() {
        let t = roots("0,1/2,1").0;
        let v = gwa_decide(&t, &roots("1/2,1,5/2").0);
        assert!(v.equivalent);
        let w = v.witness.unwrap();
        assert_eq!(
            apply_group_element(&w, &GwaRoots(t.clone())).unwrap(),
            roots("1/2,1,5/2")
        );

        let v = gwa_decide(&t, &roots("0,1/3,1").0);
        assert!(!v.equivalent && v.witness.is_none());

        let v = gwa_decide(&t, &t);
        assert_eq!(v.witness, Some(GwaGroupElement::identity(3)));

        let v = gwa_decide(&t, &roots("0,1").0);
        assert!(!v.equivalent);
        assert!(v.reason.unwrap().contains("differ"));
    }

    #[test]
    fn sign_change_needed() {
        // {0, 1/3, 1} → {0, 2/3, 1} requires ε = −1
        let v = gwa_decide(&roots("0,1/3,1").0, &roots("0,2/3,1").0);
        assert!(v.equivalent);
        assert_eq!(v.witness.unwrap().eps, -1);
    }

    #[test]
    fn repeated_roots_flagged() {
        let v = gwa_decide(&roots("0,0,1").0, &roots("1,1,0").0);
        assert!(v.equivalent);
        assert_eq!(v.distinct, (false, false));
    }
}
