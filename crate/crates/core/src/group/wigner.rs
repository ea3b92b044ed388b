//! Wigner small-`d` functions by three-term recurrence in `l`.
//!
//! Each entry `d^l_{m'm}(β)` is seeded at `l = max(|m|, |m'|)`, where the
//! explicit sum collapses to a single term, and then carried upward in
//! `l` with fixed `m, m'`. This stays stable far beyond the range where
//! the alternating explicit sum loses all digits.

use alloc::vec;
use alloc::vec::Vec;

fn ln_fact(n: f64) -> f64 {
    libm::lgamma(n + 1.0)
}

/// `d^{J0}_{m'm}(β)` with `J0 = max(|m|, |m'|)`. Arguments are twice the
/// actual quantum numbers.
fn seed(mp2: i64, m2: i64, c: f64, s: f64) -> f64 {
    let j2 = mp2.abs().max(m2.abs());
    let (j, mp, m) = (j2 as f64 / 2.0, mp2 as f64 / 2.0, m2 as f64 / 2.0);
    // the single surviving summation index
    let k = (m - mp).max(0.0);
    let sign_exp = (mp - m + k) as i64;
    let sign = if sign_exp.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let log_mag = 0.5 * (ln_fact(j + mp) + ln_fact(j - mp) + ln_fact(j + m) + ln_fact(j - m))
        - ln_fact(j + m - k)
        - ln_fact(k)
        - ln_fact(mp - m + k)
        - ln_fact(j - mp - k);
    let pc = 2.0 * j + m - mp - 2.0 * k;
    let ps = mp - m + 2.0 * k;
    sign * libm::exp(log_mag) * pow_or_one(c, pc) * pow_or_one(s, ps)
}

fn pow_or_one(x: f64, p: f64) -> f64 {
    if p == 0.0 { 1.0 } else { libm::pow(x, p) }
}

/// Run the recurrence for fixed `(m', m)` up to `two_lmax`, reporting each
/// `(two_l, value)` to `sink`.
fn recur(mp2: i64, m2: i64, two_lmax: i64, beta: f64, mut sink: impl FnMut(i64, f64)) {
    let j0 = mp2.abs().max(m2.abs());
    if j0 > two_lmax {
        return;
    }
    let (c, s) = (libm::cos(beta / 2.0), libm::sin(beta / 2.0));
    let cb = libm::cos(beta);
    let (mp, m) = (mp2 as f64 / 2.0, m2 as f64 / 2.0);
    let mut prev = 0.0;
    let mut cur = seed(mp2, m2, c, s);
    sink(j0, cur);
    let mut j2 = j0;
    while j2 + 2 <= two_lmax {
        let j = j2 as f64 / 2.0;
        let jp = j + 1.0;
        let a = jp * (2.0 * j + 1.0) / libm::sqrt((jp * jp - m * m) * (jp * jp - mp * mp));
        let next = if j2 == 0 {
            a * cb * cur
        } else {
            let b = libm::sqrt((j * j - m * m) * (j * j - mp * mp)) / (j * (2.0 * j + 1.0));
            a * ((cb - m * mp / (j * jp)) * cur - b * prev)
        };
        prev = cur;
        cur = next;
        j2 += 2;
        sink(j2, cur);
    }
}

/// The matrix `d^l(β)` for `l = two_l / 2`, row-major with rows and columns
/// ordered `m = l, l-1, ..., -l`.
pub fn wigner_small_d(two_l: u32, beta: f64) -> Vec<f64> {
    let n = two_l as usize + 1;
    let mut out = vec![0.0; n * n];
    let tl = two_l as i64;
    for i in 0..n {
        for jx in 0..n {
            let (mp2, m2) = (tl - 2 * i as i64, tl - 2 * jx as i64);
            recur(mp2, m2, tl, beta, |j2, v| {
                if j2 == tl {
                    out[i * n + jx] = v;
                }
            });
        }
    }
    out
}

/// `d^l(β)` for every `2l = 0..=two_lmax`, sharing one recurrence per
/// `(m', m)` pair.
pub fn wigner_small_d_all(two_lmax: u32, beta: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> =
        (0..=two_lmax).map(|tl| vec![0.0; (tl as usize + 1) * (tl as usize + 1)]).collect();
    let tmax = two_lmax as i64;
    for mp2 in -tmax..=tmax {
        for m2 in -tmax..=tmax {
            if (mp2 - m2).rem_euclid(2) != 0 {
                continue;
            }
            recur(mp2, m2, tmax, beta, |j2, v| {
                let n = j2 as usize + 1;
                let i = ((j2 - mp2) / 2) as usize;
                let jx = ((j2 - m2) / 2) as usize;
                out[j2 as usize][i * n + jx] = v;
            });
        }
    }
    out
}
