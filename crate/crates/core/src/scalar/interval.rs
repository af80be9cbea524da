//! Ordering of real cyclotomic values by rational interval arithmetic.
//!
//! Equality is decided exactly by field subtraction. For a nonzero real
//! difference the sign is found by enclosing sum_i c_i * cos(2*pi*i/m) in a
//! rational interval, doubling the working precision until zero is excluded.
//! Termination is guaranteed because the difference is a nonzero algebraic
//! number.

use super::Cyclotomic;
use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

type Q = BigRational;

#[derive(Clone, Debug)]
struct Iv {
    lo: Q,
    hi: Q,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Round endpoints outward onto the 2^-bits grid to keep rationals small.
fn round_out(iv: &Iv, bits: u32) -> Iv {
    let scale = Q::from(pow2(bits));
    let lo = (&iv.lo * &scale).floor() / &scale;
    let hi = (&iv.hi * &scale).ceil() / &scale;
    Iv { lo, hi }
}

fn iv_exact(q: Q) -> Iv {
    Iv {
        lo: q.clone(),
        hi: q,
    }
}

fn iv_add(a: &Iv, b: &Iv) -> Iv {
    Iv {
        lo: &a.lo + &b.lo,
        hi: &a.hi + &b.hi,
    }
}

fn iv_mul(a: &Iv, b: &Iv) -> Iv {
    let products = [
        &a.lo * &b.lo,
        &a.lo * &b.hi,
        &a.hi * &b.lo,
        &a.hi * &b.hi,
    ];
    let mut lo = products[0].clone();
    let mut hi = products[0].clone();
    for p in &products[1..] {
        if *p < lo {
            lo = p.clone();
        }
        if *p > hi {
            hi = p.clone();
        }
    }
    Iv { lo, hi }
}

fn iv_scale(a: &Iv, q: &Q) -> Iv {
    if q.is_negative() {
        Iv {
            lo: &a.hi * q,
            hi: &a.lo * q,
        }
    } else {
        Iv {
            lo: &a.lo * q,
            hi: &a.hi * q,
        }
    }
}

/// arctan(1/x) bracketed by consecutive partial sums of its alternating series.
fn atan_recip_interval(x: i64, bits: u32) -> Iv {
    let eps = Q::new(BigInt::one(), pow2(bits + 8));
    let xq = Q::from(BigInt::from(x));
    let x2 = &xq * &xq;
    let mut term = Q::one() / xq; // 1/x
    let mut sum = term.clone();
    let mut k: i64 = 1;
    let mut bounds: (Q, Q);
    loop {
        term = term / &x2;
        let next = &term / Q::from(BigInt::from(2 * k + 1));
        let prev = sum.clone();
        if k % 2 == 1 {
            sum -= &next;
            bounds = (sum.clone(), prev);
        } else {
            sum += &next;
            bounds = (prev, sum.clone());
        }
        if next < eps {
            return Iv {
                lo: bounds.0,
                hi: bounds.1,
            };
        }
        k += 1;
    }
}

/// Machin: pi = 16 atan(1/5) - 4 atan(1/239); cached per precision.
fn pi_interval(bits: u32) -> Iv {
    static CACHE: OnceLock<Mutex<HashMap<u32, (Q, Q)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some((lo, hi)) = cache.lock().unwrap().get(&bits) {
        return Iv {
            lo: lo.clone(),
            hi: hi.clone(),
        };
    }
    let a = atan_recip_interval(5, bits + 8);
    let b = atan_recip_interval(239, bits + 8);
    let sixteen = Q::from(BigInt::from(16));
    let four = Q::from(BigInt::from(4));
    let iv = Iv {
        lo: &a.lo * &sixteen - &b.hi * &four,
        hi: &a.hi * &sixteen - &b.lo * &four,
    };
    let iv = round_out(&iv, bits);
    cache
        .lock()
        .unwrap()
        .insert(bits, (iv.lo.clone(), iv.hi.clone()));
    iv
}

/// Enclosure of cos(2*pi*k/m) at roughly `bits` fractional bits.
fn cos_2pi_interval(k: u64, m: u64, bits: u32) -> Iv {
    let k = k % m;
    if m <= 2 || k == 0 {
        let v = if k == 0 { 1 } else { -1 };
        return iv_exact(Q::from(BigInt::from(v)));
    }
    if 2 * k == m {
        return iv_exact(Q::from(BigInt::from(-1)));
    }
    if 4 * k == m || 4 * k == 3 * m {
        return iv_exact(Q::zero());
    }
    // cos is even and 2*pi-periodic: fold into [0, pi].
    let k = k.min(m - k);
    let grid = bits + 16;
    let pi = pi_interval(grid);
    let two_k = Q::from(BigInt::from(2 * k));
    let mq = Q::from(BigInt::from(m));
    let x = Iv {
        lo: &pi.lo * &two_k / &mq,
        hi: &pi.hi * &two_k / &mq,
    };
    // Taylor at the dyadic midpoint; cos is 1-Lipschitz so the argument
    // interval width carries over directly.
    let mid = round_out(
        &iv_exact((&x.lo + &x.hi) / Q::from(BigInt::from(2))),
        grid,
    )
    .lo;
    let half_width = (&x.hi - &x.lo) / Q::from(BigInt::from(2))
        + Q::new(BigInt::one(), pow2(grid));
    let mid_iv = iv_exact(mid.clone());
    let mid_sq = round_out(&iv_mul(&mid_iv, &mid_iv), grid);

    let eps = Q::new(BigInt::one(), pow2(bits + 8));
    // Remainder bound uses |x| <= 4 > pi.
    let four_sq = Q::from(BigInt::from(16));
    let mut sum = iv_exact(Q::one());
    let mut pow = iv_exact(Q::one()); // mid^(2j)
    let mut rem_term = Q::one(); // 4^(2j) / (2j)!
    let mut j: u64 = 0;
    loop {
        j += 1;
        let denom = Q::from(BigInt::from((2 * j - 1) * (2 * j)));
        pow = round_out(&iv_mul(&pow, &mid_sq), grid);
        pow = iv_scale(&pow, &denom.recip());
        rem_term = rem_term * &four_sq / denom;
        if j % 2 == 1 {
            sum = iv_add(&sum, &iv_scale(&pow, &Q::from(BigInt::from(-1))));
        } else {
            sum = iv_add(&sum, &pow);
        }
        sum = round_out(&sum, grid);
        if rem_term < eps && j >= 2 {
            break;
        }
    }
    let slack = &rem_term + &half_width;
    Iv {
        lo: &sum.lo - &slack,
        hi: &sum.hi + &slack,
    }
}

/// Enclosure of the real part sum_i c_i cos(2*pi*i/m).
fn real_value_interval(x: &Cyclotomic, bits: u32) -> Iv {
    let m = x.conductor();
    let mut acc = iv_exact(Q::zero());
    for (i, c) in x.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cos = cos_2pi_interval(i as u64, m, bits);
        acc = iv_add(&acc, &iv_scale(&cos, c));
    }
    acc
}

/// Total order on real scalars; rejects non-real inputs.
pub fn compare_real(a: &Cyclotomic, b: &Cyclotomic) -> Result<Ordering> {
    if !a.is_real() {
        return Err(Error::NotReal(a.to_string()));
    }
    if !b.is_real() {
        return Err(Error::NotReal(b.to_string()));
    }
    let d = a - b;
    if d.is_zero() {
        return Ok(Ordering::Equal);
    }
    if let Some(q) = d.as_rational() {
        return Ok(q.cmp(&Q::zero()));
    }
    let mut bits = 64;
    loop {
        let iv = real_value_interval(&d, bits);
        if iv.lo.is_positive() {
            return Ok(Ordering::Greater);
        }
        if iv.hi.is_negative() {
            return Ok(Ordering::Less);
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn two_cos_72() -> Cyclotomic {
        let z = Cyclotomic::root_of_unity(5, 1).unwrap();
        &z + &z.pow(4)
    }

    #[test]
    fn rational_comparisons() {
        let a = Cyclotomic::rational(1, 2);
        assert_eq!(compare_real(&a, &a).unwrap(), Ordering::Equal);
        let b = Cyclotomic::rational(2, 3);
        assert_eq!(compare_real(&a, &b).unwrap(), Ordering::Less);
    }

    #[test]
    fn golden_ratio_bounds() {
        // 0 < 2 cos 72 < 1
        let x = two_cos_72();
        assert_eq!(
            compare_real(&x, &Cyclotomic::one()).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            compare_real(&Cyclotomic::zero(), &x).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn rejects_non_real() {
        let i = Cyclotomic::root_of_unity(4, 1).unwrap();
        assert!(compare_real(&i, &Cyclotomic::zero()).is_err());
    }

    #[test]
    fn cos_interval_accuracy() {
        for (k, m) in [(1u64, 5u64), (1, 7), (2, 7), (1, 12), (5, 12), (3, 8)] {
            let iv = cos_2pi_interval(k, m, 64);
            let true_val = (2.0 * std::f64::consts::PI * k as f64 / m as f64).cos();
            let lo = iv.lo.to_f64().unwrap();
            let hi = iv.hi.to_f64().unwrap();
            assert!(lo <= true_val && true_val <= hi, "({k},{m}): [{lo},{hi}] vs {true_val}");
            assert!(hi - lo < 1e-12, "({k},{m}) width {}", hi - lo);
        }
    }

    #[test]
    fn tight_ordering_needs_refinement() {
        // 2cos72 vs its defining rational approximation 305/494 (close but
        // unequal): the comparison must still resolve.
        let x = two_cos_72();
        let approx = Cyclotomic::from_rational(Q::from_f64(0.6180339887).unwrap());
        let got = compare_real(&x, &approx).unwrap();
        // golden ratio - 1 = 0.61803398874989..., approx is smaller.
        assert_eq!(got, Ordering::Greater);
    }

    #[test]
    fn total_order_on_real_family() {
        // 2cos(2*pi*k/7) is strictly decreasing for k = 0..3.
        let z = Cyclotomic::root_of_unity(7, 1).unwrap();
        let c = |k: u64| -> Cyclotomic { &z.pow(k) + &z.pow((7 - k) % 7) };
        for k in 0..3u64 {
            assert_eq!(
                compare_real(&c(k), &c(k + 1)).unwrap(),
                Ordering::Greater,
                "k = {k}"
            );
        }
    }
}
