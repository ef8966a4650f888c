//! Rational Cherednik parameters of type `A_{n-1}`: aspherical values,
//! reduction modulo `p`, witness primes and the Morita decision `c' ∈ ±c + ℤ`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};
use crate::primes;

pub const MAX_RANK: u32 = 12;

/// Candidates examined in one CRT class before giving up.
const SEARCH_CAP: u64 = 1_000_000;

fn check_rank(n: u32) -> Result<()> {
    if !(2..=MAX_RANK).contains(&n) {
        return Err(Error::Precondition(format!(
            "n must lie in 2..={MAX_RANK}, got {n}"
        )));
    }
    Ok(())
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

/// `Q_n = {−i/d : 1 ≤ i < d, 2 ≤ d ≤ n}` without repeats, ascending.
pub fn aspherical_set(n: u32) -> Result<BTreeSet<Rational>> {
    check_rank(n)?;
    let mut out = BTreeSet::new();
    for d in 2..=n as i64 {
        for i in 1..d {
            out.insert(Rational::new((-i).into(), d.into()));
        }
    }
    Ok(out)
}

/// The image of `q` in `F_p`, as a representative in `[0, p)`.
pub fn reduce_mod_p(q: &Rational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64().expect("fits");
    let inv = primes::inv_mod(den, p).ok_or_else(|| Error::Reduction {
        p,
        reason: format!("{p} divides the denominator of {}", format_rational(q)),
    })?;
    let num = q.numer().mod_floor(&pb).to_u64().expect("fits");
    Ok(((num as u128 * inv as u128) % p as u128) as u64)
}

/// Sorted images of `Q_n` in `F_p`.
pub fn aspherical_images(n: u32, p: u64) -> Result<Vec<u64>> {
    let set: BTreeSet<u64> = aspherical_set(n)?
        .iter()
        .map(|q| reduce_mod_p(q, p))
        .collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

/// True iff `x` and `x'` lie in one connected component of
/// `[0, p) \ (Q_n mod p)`.
pub fn same_component(n: u32, p: u64, x: u64, x_prime: u64) -> Result<bool> {
    if !primes::is_prime(p) || p <= n as u64 {
        return Err(Error::Precondition(format!("{p} is not a prime above {n}")));
    }
    if x >= p || x_prime >= p {
        return Err(Error::Precondition(format!("images must lie in [0, {p})")));
    }
    let (lo, hi) = (x.min(x_prime), x.max(x_prime));
    Ok(!aspherical_images(n, p)?.iter().any(|&a| lo <= a && a <= hi))
}

/// Solves `x ≡ r_k (mod m_k)` for all `k`; `None` if inconsistent.
fn crt(congruences: &[(BigInt, BigInt)]) -> Option<(BigInt, BigInt)> {
    let mut r = BigInt::zero();
    let mut m = BigInt::one();
    for (r2, m2) in congruences {
        let g = m.extended_gcd(m2);
        let diff = r2 - &r;
        if !(&diff % &g.gcd).is_zero() {
            return None;
        }
        let lcm = &m / &g.gcd * m2;
        let step = (&diff / &g.gcd * &g.x).mod_floor(&(m2 / &g.gcd));
        r = (&r + &m * step).mod_floor(&lcm);
        m = lcm;
    }
    Some((r, m))
}

fn fits_below(n: u32, x: u64, p: u64) -> bool {
    (n as u128) * (x as u128) < (p - 1) as u128
}

/// The smallest prime `p ≥ p_min` with `p ≡ 1 (mod n!)`, `p ≡ −a (mod l)`,
/// `p ≡ −a' (mod l')` and both images `c̄, c̄'` below `(p−1)/n`.
pub fn find_witness_prime(n: u32, c: &Rational, c_prime: &Rational, p_min: u64) -> Result<u64> {
    check_rank(n)?;
    let fact = BigInt::from(factorial(n));
    let congruences = [
        (BigInt::one(), fact.clone()),
        (-c.numer(), c.denom().clone()),
        (-c_prime.numer(), c_prime.denom().clone()),
    ];
    let (r, m) = crt(&congruences).ok_or_else(|| {
        Error::NoWitness(format!(
            "congruences modulo {fact}, {} and {} are inconsistent",
            c.denom(),
            c_prime.denom()
        ))
    })?;
    let r = r.to_u64();
    let m = m.to_u64();
    let (Some(r), Some(m)) = (r, m) else {
        return Err(Error::NoWitness("CRT modulus exceeds 64 bits".into()));
    };
    let start = if p_min <= r {
        r
    } else {
        r + (p_min - r).div_ceil(m) * m
    };
    let mut p = start;
    for _ in 0..SEARCH_CAP {
        if primes::is_prime(p) {
            let x = reduce_mod_p(c, p)?;
            let y = reduce_mod_p(c_prime, p)?;
            if fits_below(n, x, p) && fits_below(n, y, p) {
                return Ok(p);
            }
        }
        p = p
            .checked_add(m)
            .ok_or_else(|| Error::NoWitness("search left the 64-bit range".into()))?;
    }
    Err(Error::NoWitness(format!(
        "no prime in class {r} mod {m} among {SEARCH_CAP} candidates puts both images below (p-1)/{n}"
    )))
}

/// Evidence that `c` and `c'` are linked by the translation chain mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub p: u64,
    /// The representatives actually reduced: `±c`, `±c'`.
    pub c: Rational,
    pub c_prime: Rational,
    pub x: u64,
    pub x_prime: u64,
    pub aspherical_images: Vec<u64>,
    /// Half-open component `[lo, hi)` or open `(lo, hi)` of the complement.
    pub component: (u64, u64),
    pub closed_below: bool,
}

impl Certificate {
    pub fn component_string(&self) -> String {
        let open = if self.closed_below { '[' } else { '(' };
        format!("{open}{},{})", self.component.0, self.component.1)
    }

    /// Re-checks every arithmetic claim.
    pub fn verify(&self, n: u32) -> Result<bool> {
        let p = self.p;
        let fact = factorial(n);
        let closed_form = |q: &Rational, x: u64| {
            let v = BigInt::from(p) + q.numer();
            (&v % q.denom()).is_zero()
                && (v / q.denom()).mod_floor(&BigInt::from(p)) == BigInt::from(x)
        };
        Ok(primes::is_prime(p)
            && p % fact == 1
            && reduce_mod_p(&self.c, p)? == self.x
            && reduce_mod_p(&self.c_prime, p)? == self.x_prime
            && closed_form(&self.c, self.x)
            && closed_form(&self.c_prime, self.x_prime)
            && fits_below(n, self.x, p)
            && fits_below(n, self.x_prime, p)
            && aspherical_images(n, p)? == self.aspherical_images
            && same_component(n, p, self.x, self.x_prime)?)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let asph: Vec<String> = self
            .aspherical_images
            .iter()
            .map(|x| x.to_string())
            .collect();
        write!(
            f,
            "prime {} images ({}, {}) of ({}, {}) aspherical {{{}}} component {}",
            self.p,
            self.x,
            self.x_prime,
            format_rational(&self.c),
            format_rational(&self.c_prime),
            asph.join(", "),
            self.component_string()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CherednikStatus {
    Equivalent,
    NotEquivalent,
    HypothesesNotMet,
}

impl fmt::Display for CherednikStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CherednikStatus::Equivalent => "equivalent",
            CherednikStatus::NotEquivalent => "not-equivalent",
            CherednikStatus::HypothesesNotMet => "hypotheses-not-met",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CherednikVerdict {
    pub status: CherednikStatus,
    pub certificate: Option<Certificate>,
    pub reason: String,
}

fn build_certificate(n: u32, c: &Rational, c_prime: &Rational) -> Result<Certificate> {
    let p = find_witness_prime(n, c, c_prime, n as u64 + 2)?;
    let x = reduce_mod_p(c, p)?;
    let x_prime = reduce_mod_p(c_prime, p)?;
    let aspherical = aspherical_images(n, p)?;
    let (lo, hi) = (x.min(x_prime), x.max(x_prime));
    let below = aspherical.iter().copied().filter(|&a| a < lo).max();
    let above = aspherical.iter().copied().find(|&a| a > hi).unwrap_or(p);
    Ok(Certificate {
        p,
        c: c.clone(),
        c_prime: c_prime.clone(),
        x,
        x_prime,
        aspherical_images: aspherical,
        component: (below.unwrap_or(0), above),
        closed_below: below.is_none(),
    })
}

/// Decides whether `H_c` and `H_{c'}` are Morita equivalent for `S_n`.
///
/// Needs `gcd(l l', n!) = 1` and either `gcd(l, l') = 1` or `l = l'`;
/// otherwise the verdict is `HypothesesNotMet`.
pub fn cherednik_decide(n: u32, c: &Rational, c_prime: &Rational) -> Result<CherednikVerdict> {
    check_rank(n)?;
    let (l, l2) = (c.denom().clone(), c_prime.denom().clone());
    let fact = BigInt::from(factorial(n));
    let g = (&l * &l2).gcd(&fact);
    if !g.is_one() {
        return Ok(CherednikVerdict {
            status: CherednikStatus::HypothesesNotMet,
            certificate: None,
            reason: format!("gcd(l*l', n!) = gcd({}, {fact}) = {g}", &l * &l2),
        });
    }
    if !l.gcd(&l2).is_one() && l != l2 {
        return Ok(CherednikVerdict {
            status: CherednikStatus::HypothesesNotMet,
            certificate: None,
            reason: format!("denominators {l} and {l2} are neither coprime nor equal"),
        });
    }
    let diff = c_prime - c;
    let sum = c_prime + c;
    if !diff.is_integer() && !sum.is_integer() {
        return Ok(CherednikVerdict {
            status: CherednikStatus::NotEquivalent,
            certificate: None,
            reason: format!(
                "c'-c = {} and c'+c = {} are not integers",
                format_rational(&diff),
                format_rational(&sum)
            ),
        });
    }
    // sign choices (s c, s' c') with s c − s' c' integral, tried in order
    let mut tried = Vec::new();
    for (s, t) in [(1, 1), (1, -1), (-1, -1), (-1, 1)] {
        let a = if s == 1 { c.clone() } else { -c };
        let b = if t == 1 { c_prime.clone() } else { -c_prime };
        // a negative integer reduces to p + a, which never fits below (p-1)/n
        let negative_integer = |q: &Rational| q.is_integer() && q.is_negative();
        if !(&b - &a).is_integer() || negative_integer(&a) || negative_integer(&b) {
            continue;
        }
        match build_certificate(n, &a, &b) {
            Ok(cert) => {
                return Ok(CherednikVerdict {
                    status: CherednikStatus::Equivalent,
                    certificate: Some(cert),
                    reason: if s == t {
                        "c' - c is an integer".into()
                    } else {
                        "c' + c is an integer".into()
                    },
                })
            }
            Err(e) => tried.push(e.to_string()),
        }
    }
    Ok(CherednikVerdict {
        status: CherednikStatus::Equivalent,
        certificate: None,
        reason: format!("c' lies in ±c + Z; no certificate: {}", tried.join("; ")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, rat};
    use proptest::prelude::*;

    #[test]
    fn aspherical_examples() {
        let s: Vec<Rational> = aspherical_set(2).unwrap().into_iter().collect();
        assert_eq!(s, vec![rat(-1, 2)]);
        let s: BTreeSet<Rational> = aspherical_set(3).unwrap();
        assert_eq!(
            s,
            [rat(-1, 2), rat(-1, 3), rat(-2, 3)].into_iter().collect()
        );
        assert_eq!(aspherical_set(4).unwrap().len(), 5);
        for q in aspherical_set(9).unwrap() {
            assert!(q > rat(-1, 1) && q < rat(0, 1));
        }
        assert!(aspherical_set(1).is_err());
        assert!(aspherical_set(13).is_err());
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_mod_p(&rat(1, 5), 19).unwrap(), 4);
        assert_eq!(reduce_mod_p(&rat(3, 1), 7).unwrap(), 3);
        assert!(matches!(
            reduce_mod_p(&rat(1, 5), 5),
            Err(Error::Reduction { .. })
        ));
        assert_eq!(reduce_mod_p(&rat(-1, 2), 79).unwrap(), 39);
    }

    #[test]
    fn witness_examples() {
        assert_eq!(
            find_witness_prime(3, &rat(1, 5), &rat(11, 5), 2).unwrap(),
            79
        );
        assert!(matches!(
            find_witness_prime(3, &rat(1, 5), &rat(1, 3), 2),
            Err(Error::NoWitness(_))
        ));
        assert_eq!(
            find_witness_prime(2, &rat(1, 5), &rat(1, 5), 2).unwrap(),
            19
        );
    }

    #[test]
    fn component_examples() {
        assert_eq!(aspherical_images(3, 79).unwrap(), vec![26, 39, 52]);
        assert!(same_component(3, 79, 16, 18).unwrap());
        assert!(!same_component(3, 79, 16, 30).unwrap());
        assert!(same_component(3, 79, 5, 5).unwrap());
        assert!(!same_component(3, 79, 26, 26).unwrap());
        assert!(same_component(3, 80, 1, 2).is_err());
    }

    #[test]
    fn decide_examples() {
        let v = cherednik_decide(3, &rat(1, 5), &rat(11, 5)).unwrap();
        assert_eq!(v.status, CherednikStatus::Equivalent);
        let cert = v.certificate.unwrap();
        assert_eq!((cert.p, cert.x, cert.x_prime), (79, 16, 18));
        assert_eq!(cert.aspherical_images, vec![26, 39, 52]);
        assert_eq!(cert.component_string(), "[0,26)");
        assert!(cert.verify(3).unwrap());

        let v = cherednik_decide(3, &rat(1, 5), &rat(2, 7)).unwrap();
        assert_eq!(v.status, CherednikStatus::NotEquivalent);
        assert!(v.certificate.is_none());
        let v = cherednik_decide(3, &rat(1, 5), &rat(1, 3)).unwrap();
        assert_eq!(v.status, CherednikStatus::HypothesesNotMet);
    }

    #[test]
    fn sign_flip_certificates() {
        // c' = −c + 1 only matches after flipping c'
        let v = cherednik_decide(3, &rat(1, 7), &rat(6, 7)).unwrap();
        assert_eq!(v.status, CherednikStatus::Equivalent);
        let cert = v.certificate.unwrap();
        assert!(cert.verify(3).unwrap());
        assert_eq!(cert.c_prime, rat(-6, 7));
        // integers of either sign
        for (a, b) in [(2, 5), (-3, 4), (0, -1)] {
            let v = cherednik_decide(4, &rat(a, 1), &rat(b, 1)).unwrap();
            assert_eq!(v.status, CherednikStatus::Equivalent);
            assert!(v.certificate.unwrap().verify(4).unwrap());
        }
    }

    fn param() -> impl Strategy<Value = Rational> {
        (
            -40i64..40,
            prop::sample::select(vec![1i64, 7, 11, 13, 5, 17]),
        )
            .prop_map(|(a, l)| rat(a, l))
    }

    proptest! {
        #[test]
        fn reduction_inverts_denominator(a in -500i64..500, l in 1i64..60, pi in 0usize..5) {
            let p = [101u64, 103, 7919, 1_000_003, 65_537][pi];
            let q = rat(a, l);
            let x = reduce_mod_p(&q, p).unwrap();
            let lhs = primes::residue(x as i128 * q.denom().to_i128().unwrap(), p);
            prop_assert_eq!(lhs, primes::residue(q.numer().to_i128().unwrap(), p));
        }

        #[test]
        fn decide_symmetric(n in 2u32..6, c in param(), d in param()) {
            let v = cherednik_decide(n, &c, &d).unwrap();
            if v.status != CherednikStatus::HypothesesNotMet {
                prop_assert_eq!(cherednik_decide(n, &d, &c).unwrap().status, v.status);
                prop_assert_eq!(cherednik_decide(n, &-c.clone(), &-d.clone()).unwrap().status, v.status);
            }
            if let Some(cert) = v.certificate {
                prop_assert!(cert.verify(n).unwrap());
            }
        }

        #[test]
        fn parse_and_decide_shift(n in 2u32..5, c in param(), k in -5i64..5) {
            let text = format_rational(&(&c + rat(k, 1)));
            let d = parse_rational(&text).unwrap();
            let v = cherednik_decide(n, &c, &d).unwrap();
            if c.denom() == &BigInt::from(1) || c.denom() > &BigInt::from(n) {
                prop_assert_eq!(v.status, CherednikStatus::Equivalent);
            }
        }
    }
}
