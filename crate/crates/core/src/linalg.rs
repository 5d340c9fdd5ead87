//! Exact rank and null spaces by fraction-free elimination, and rank over
//! the prime field of order `2^61 - 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigRational>>;

/// The Mersenne prime `2^61 - 1`.
pub const PRIME: u64 = (1 << 61) - 1;

/// Scales each row by the lcm of its denominators.
pub fn integer_rows(m: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Rank of an integer matrix by Bareiss elimination.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                if a[i][j].is_zero() && (a[i][c].is_zero() || a[r][j].is_zero()) {
                    continue;
                }
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    bareiss_rank(integer_rows(m))
}

/// Fraction-free reduced row echelon form. Every pivot equals the same
/// integer `d`; returns `(matrix, pivot columns, d)`.
pub fn fraction_free_rref(mut a: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>, BigInt) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                let lead = !a[r][j].is_zero() && !f.is_zero();
                if a[i][j].is_zero() && !lead {
                    continue;
                }
                let v = if lead {
                    &piv * &a[i][j] - &f * &a[r][j]
                } else {
                    &piv * &a[i][j]
                };
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    if prev.is_negative() {
        for row in a.iter_mut() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
        prev = -prev;
    }
    (a, pivots, prev)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
    v
}

/// Integer basis of `{x : A x = 0}`, one primitive vector per free column.
pub fn null_space(a: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigInt>> {
    let (red, pivots, d) = fraction_free_rref(integer_rows(a));
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![BigInt::zero(); cols];
            x[f] = d.clone();
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = -&red[r][f];
            }
            primitive(x)
        })
        .collect()
}

/// Integer basis of `{y : y^T M = 0}` for an `rows × cols` matrix.
pub fn left_null_space(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigInt>> {
    let rows = m.len();
    null_space(&transpose(m, cols), rows)
}

pub fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

pub fn int_mod(x: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = x.mod_floor(&p);
    r.try_into().expect("reduced below the prime")
}

/// Image of a rational in the prime field, `None` if the denominator vanishes.
pub fn rational_mod(x: &BigRational) -> Option<u64> {
    let d = int_mod(x.denom());
    (d != 0).then(|| mul_mod(int_mod(x.numer()), inv_mod(d)))
}

/// Rank over the prime field by Gaussian elimination.
pub fn rank_mod_p(mut a: Vec<Vec<u64>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = inv_mod(a[r][c]);
        for i in r + 1..rows {
            if a[i][c] == 0 {
                continue;
            }
            let f = mul_mod(a[i][c], inv);
            for j in c..cols {
                let sub = mul_mod(f, a[r][j]);
                a[i][j] = (a[i][j] + PRIME - sub) % PRIME;
            }
        }
        r += 1;
    }
    r
}

/// Rank of a rational matrix reduced modulo the prime. Never exceeds the
/// rational rank; `None` if some denominator is divisible by the prime.
pub fn rank_prime(m: &[Vec<BigRational>]) -> Option<usize> {
    let rows: Option<Vec<Vec<u64>>> = m
        .iter()
        .map(|row| row.iter().map(rational_mod).collect())
        .collect();
    rows.map(rank_mod_p)
}
