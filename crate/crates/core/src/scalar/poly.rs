//! Cyclotomic polynomials over the integers, cached per conductor.

use num::{BigInt, One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Euler's totient.
pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1);
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

fn divisors(m: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            ds.push(d);
            if d != m / d {
                ds.push(m / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// Exact division of integer polynomials (little-endian coefficients).
/// Panics if the division is not exact; callers only divide x^m - 1 by
/// products of cyclotomic factors, which is always exact.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd && den[dd].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, dc) in den.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

fn compute_cyclotomic(m: u64, cache: &mut HashMap<u64, Arc<Vec<BigInt>>>) -> Arc<Vec<BigInt>> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let poly = if m == 1 {
        vec![-BigInt::one(), BigInt::one()] // x - 1
    } else {
        // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = -BigInt::one();
        num[m as usize] = BigInt::one();
        let mut cur = num;
        for d in divisors(m) {
            if d < m {
                let phi_d = compute_cyclotomic(d, cache);
                cur = poly_div_exact(&cur, &phi_d);
            }
        }
        cur
    };
    debug_assert_eq!(poly.len() as u64 - 1, euler_phi(m));
    let arc = Arc::new(poly);
    cache.insert(m, arc.clone());
    arc
}

/// The m-th cyclotomic polynomial, little-endian, monic of degree phi(m).
pub fn cyclotomic(m: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    compute_cyclotomic(m, &mut guard)
}
