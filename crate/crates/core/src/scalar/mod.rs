//! Exact arithmetic in cyclotomic-rational fields Q(zeta_m).
//!
//! An element is stored as a rational polynomial in zeta_m, reduced modulo
//! the m-th cyclotomic polynomial, together with its conductor m. Elements
//! at different conductors are promoted to the lcm conductor before any
//! arithmetic, so values compare equal exactly when their canonical
//! coordinates agree at a common conductor.

mod interval;
mod poly;

pub use interval::compare_real;
pub use poly::{cyclotomic, euler_phi};

use crate::error::{Error, Result};
use num::{integer::lcm, BigInt, BigRational, FromPrimitive, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

type Q = BigRational;

/// An element of Q(zeta_m): `coords[i]` is the coefficient of zeta_m^i,
/// with `coords.len() == phi(m)`.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coords: Vec<Q>,
}

fn phi_len(m: u64) -> usize {
    euler_phi(m) as usize
}

/// Reduce a rational polynomial modulo Phi_m and fix its length to phi(m).
fn reduce_mod_cyclotomic(mut p: Vec<Q>, m: u64) -> Vec<Q> {
    let phi = cyclotomic(m);
    let deg = phi.len() - 1;
    while p.len() > deg {
        let c = p.pop().unwrap();
        if !c.is_zero() {
            let k = p.len() - deg;
            for (i, pc) in phi.iter().take(deg).enumerate() {
                let t = &c * Q::from(pc.clone());
                p[k + i] -= t;
            }
        }
    }
    p.resize(deg, Q::zero());
    p
}

impl Cyclotomic {
    /// Canonical element from explicit coordinates; input longer than
    /// phi(m) is reduced, shorter input is zero-padded.
    pub fn new(conductor: u64, coords: Vec<Q>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        Ok(Cyclotomic {
            conductor,
            coords: reduce_mod_cyclotomic(coords, conductor),
        })
    }

    pub fn from_rational(q: Q) -> Self {
        Cyclotomic {
            conductor: 1,
            coords: vec![q],
        }
    }

    pub fn rational(numer: i64, denom: i64) -> Self {
        assert!(denom != 0);
        Self::from_rational(Q::new(
            BigInt::from_i64(numer).unwrap(),
            BigInt::from_i64(denom).unwrap(),
        ))
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(n, 1)
    }

    /// zeta_m^k.
    pub fn root_of_unity(m: u64, k: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroConductor);
        }
        let k = (k % m) as usize;
        let mut coords = vec![Q::zero(); k + 1];
        coords[k] = Q::one();
        Self::new(m, coords)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// The same value at conductor `target`; requires conductor | target.
    pub fn promoted(&self, target: u64) -> Self {
        if target == self.conductor {
            return self.clone();
        }
        assert!(
            target % self.conductor == 0,
            "promotion target must be a multiple of the conductor"
        );
        let s = (target / self.conductor) as usize;
        let mut p = vec![Q::zero(); (self.coords.len() - 1) * s + 1];
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                p[i * s] = c.clone();
            }
        }
        Cyclotomic {
            conductor: target,
            coords: reduce_mod_cyclotomic(p, target),
        }
    }

    /// Coordinates of the value at conductor `target` (conductor | target).
    /// Rational values embed positionally without a reduction pass.
    pub fn promoted_coords(&self, target: u64) -> Vec<Q> {
        if target == self.conductor {
            return self.coords.clone();
        }
        if let Some(q) = self.as_rational() {
            let mut v = vec![Q::zero(); phi_len(target)];
            v[0] = q.clone();
            return v;
        }
        self.promoted(target).coords
    }

    fn unified(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            (a.clone(), b.clone())
        } else {
            let m = lcm(a.conductor, b.conductor);
            (a.promoted(m), b.promoted(m))
        }
    }

    /// Some(&q) when the value lies in the rational subfield.
    pub fn as_rational(&self) -> Option<&Q> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Collapse to conductor 1 when the value is rational.
    pub fn rational_reduced(self) -> Self {
        if self.conductor > 1 {
            if let Some(q) = self.as_rational() {
                return Self::from_rational(q.clone());
            }
        }
        self
    }

    /// Image under zeta_m -> zeta_m^{-1} (complex conjugation).
    pub fn conjugate(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        let m = self.conductor as usize;
        let mut p = vec![Q::zero(); m];
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                p[(m - i) % m] += c;
            }
        }
        Cyclotomic {
            conductor: self.conductor,
            coords: reduce_mod_cyclotomic(p, self.conductor),
        }
    }

    /// Fixed by conjugation, i.e. the value is a real number.
    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// Exact multiplicative inverse via the extended Euclidean algorithm
    /// against Phi_m; zero is a reported error.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            let mut out = self.clone();
            out.coords[0] = q.recip();
            return Ok(out);
        }
        // r0 = Phi_m, r1 = self; track s-coefficients for self only.
        let phi: Vec<Q> = cyclotomic(self.conductor)
            .iter()
            .map(|c| Q::from(c.clone()))
            .collect();
        let mut r0 = phi;
        let mut r1 = trim(self.coords.clone());
        let mut s0: Vec<Q> = vec![];
        let mut s1: Vec<Q> = vec![Q::one()];
        while !r1.is_empty() {
            let (quot, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant gcd since Phi_m is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let inv: Vec<Q> = s0.iter().map(|x| x * &c).collect();
        Self::new(self.conductor, inv)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out = vec![Q::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_divmod(num: &[Q], den: &[Q]) -> (Vec<Q>, Vec<Q>) {
    assert!(!den.is_empty());
    if num.len() < den.len() {
        return (vec![], num.to_vec());
    }
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].recip();
    let mut quot = vec![Q::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] * &lead;
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, dc) in den.iter().enumerate() {
                let t = &c * dc;
                rem[k + i] -= t;
            }
        }
    }
    (trim(quot), trim(rem))
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coords == other.coords;
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            (Some(_), None) | (None, Some(_)) => false,
            _ => {
                let (a, b) = Self::unified(self, other);
                a.coords == b.coords
            }
        }
    }
}

impl Eq for Cyclotomic {}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_rational(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_rational(Q::one())
    }
    fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (mut a, b) = Cyclotomic::unified(self, rhs);
        for (x, y) in a.coords.iter_mut().zip(b.coords.iter()) {
            *x += y;
        }
        a
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        let (mut a, b) = Cyclotomic::unified(self, rhs);
        for (x, y) in a.coords.iter_mut().zip(b.coords.iter()) {
            *x -= y;
        }
        a
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.as_rational(), rhs.as_rational()) {
            return Cyclotomic::from_rational(a * b);
        }
        let (a, b) = Cyclotomic::unified(self, rhs);
        let prod = poly_mul(&a.coords, &b.coords);
        Cyclotomic {
            conductor: a.conductor,
            coords: reduce_mod_cyclotomic(prod, a.conductor),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $trait::$method(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z{}^{i}", self.conductor)?;
            } else {
                write!(f, "({c})*z{}^{i}", self.conductor)?;
            }
        }
        Ok(())
    }
}

/// JSON form: {"m": conductor, "c": [["num","den"], ...]} with decimal
/// strings so arbitrarily large integers survive the trip exactly.
#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    m: u64,
    c: Vec<(String, String)>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = ScalarRepr {
            m: self.conductor,
            c: self
                .coords
                .iter()
                .map(|q| (q.numer().to_string(), q.denom().to_string()))
                .collect(),
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = ScalarRepr::deserialize(de)?;
        if repr.m == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let mut coords = Vec::with_capacity(repr.c.len());
        for (n, d) in &repr.c {
            let numer: BigInt = n.parse().map_err(D::Error::custom)?;
            let denom: BigInt = d.parse().map_err(D::Error::custom)?;
            if denom.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            coords.push(Q::new(numer, denom));
        }
        Cyclotomic::new(repr.m, coords).map_err(D::Error::custom)
    }
}

/// Encode the canonical coordinates at conductor `target` as bytes; equal
/// values yield equal keys, distinct values distinct keys.
pub fn canonical_key_into(x: &Cyclotomic, target: u64, out: &mut Vec<u8>) {
    let write_q = |q: &Q, out: &mut Vec<u8>| {
        let (n, d) = (q.numer(), q.denom());
        let nb = n.to_signed_bytes_le();
        let db = d.to_bytes_le().1;
        out.extend_from_slice(&(nb.len() as u32).to_le_bytes());
        out.extend_from_slice(&nb);
        out.extend_from_slice(&(db.len() as u32).to_le_bytes());
        out.extend_from_slice(&db);
    };
    if x.conductor == target {
        for q in &x.coords {
            write_q(q, out);
        }
    } else if let Some(q) = x.as_rational() {
        write_q(q, out);
        let zero = Q::zero();
        for _ in 1..phi_len(target) {
            write_q(&zero, out);
        }
    } else {
        for q in &x.promoted(target).coords {
            write_q(q, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn two_cos_72() -> Cyclotomic {
        // zeta_5 + zeta_5^4 = (-1 + sqrt 5)/2
        let z = Cyclotomic::root_of_unity(5, 1).unwrap();
        &z + &z.pow(4)
    }

    #[test]
    fn rational_subfield() {
        let x = Cyclotomic::new(1, vec![q(3, 2)]).unwrap();
        assert_eq!(x, Cyclotomic::rational(3, 2));
        assert!(x.is_real());
        let half = Cyclotomic::rational(1, 2);
        assert_eq!(&half + &half, Cyclotomic::one());
    }

    #[test]
    fn rejects_zero_conductor() {
        assert!(Cyclotomic::new(0, vec![q(1, 1)]).is_err());
    }

    #[test]
    fn golden_ratio_relation() {
        // x = 2 cos 72 satisfies x^2 + x - 1 = 0.
        let x = two_cos_72();
        let lhs = &(&x * &x) + &x;
        assert_eq!(lhs, Cyclotomic::one());
        assert!(x.is_real());
    }

    #[test]
    fn gaussian_unit() {
        let i = Cyclotomic::root_of_unity(4, 1).unwrap();
        assert_eq!(&i * &i, Cyclotomic::integer(-1));
        assert!(!i.is_real());
    }

    #[test]
    fn inverse_of_golden() {
        // inv(2 cos 72) = 2 cos 72 + 1 since x(x + 1) = 1.
        let x = two_cos_72();
        let expected = &x + &Cyclotomic::one();
        assert_eq!(x.inverse().unwrap(), expected);
    }

    #[test]
    fn inverse_of_zero_is_error() {
        assert!(Cyclotomic::zero().inverse().is_err());
    }

    #[test]
    fn cross_conductor_equality() {
        let one_at_5 = Cyclotomic::new(5, vec![q(1, 1)]).unwrap();
        assert_eq!(one_at_5, Cyclotomic::one());
        let z6 = Cyclotomic::root_of_unity(6, 1).unwrap();
        let z12_sq = Cyclotomic::root_of_unity(12, 2).unwrap();
        assert_eq!(z6, z12_sq);
    }

    #[test]
    fn conjugation_sums_are_real() {
        let z = Cyclotomic::root_of_unity(5, 1).unwrap();
        assert!((&z + &z.pow(4)).is_real());
        assert!(!z.is_real());
    }

    #[test]
    fn serde_round_trip() {
        let x = &two_cos_72() * &Cyclotomic::rational(7, 3);
        let s = serde_json::to_string(&x).unwrap();
        let y: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert_eq!(s, serde_json::to_string(&y).unwrap());
    }

    #[test]
    fn reduction_of_long_input() {
        // zeta_4^2 supplied un-reduced must canonicalize to -1.
        let x = Cyclotomic::new(4, vec![q(0, 1), q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(x, Cyclotomic::integer(-1));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_scalar() -> impl Strategy<Value = Cyclotomic> {
            let conductors = prop_oneof![Just(1u64), Just(3), Just(4), Just(5), Just(8), Just(12)];
            (conductors, proptest::collection::vec((-6i64..=6, 1i64..=4), 1..=4)).prop_map(
                |(m, cs)| {
                    let coords = cs.iter().map(|&(n, d)| q(n, d)).collect();
                    Cyclotomic::new(m, coords).unwrap()
                },
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn field_axioms((a, b, c) in (arb_scalar(), arb_scalar(), arb_scalar())) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                if !a.is_zero() {
                    prop_assert_eq!(&a * &a.inverse().unwrap(), Cyclotomic::one());
                }
            }

            #[test]
            fn promotion_commutes((a, b) in (arb_scalar(), arb_scalar())) {
                let m = num::integer::lcm(a.conductor(), b.conductor()) * 2;
                let sum_then = (&a + &b).promoted(m);
                let then_sum = &a.promoted(m) + &b.promoted(m);
                prop_assert_eq!(sum_then, then_sum);
                let prod_then = (&a * &b).promoted(m);
                let then_prod = &a.promoted(m) * &b.promoted(m);
                prop_assert_eq!(prod_then, then_prod);
            }
        }
    }
}
