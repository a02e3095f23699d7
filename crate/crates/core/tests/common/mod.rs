//! Test-side oracles that share no arithmetic with the library: every rank
//! and membership question is answered again over the prime field F_p.

#![allow(dead_code)]

use std::collections::BTreeMap;

use maninkit::free_operad::Monomial3;
use maninkit::linalg::SparseVector;
use maninkit::Q;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const P: u64 = 1_000_000_007;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % P as u128) as u64;
        }
        b = (b as u128 * b as u128 % P as u128) as u64;
        e >>= 1;
    }
    r
}

fn int_mod(n: &BigInt) -> u64 {
    let m = BigInt::from(P);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().unwrap()
}

/// Reduction of a rational with denominator prime to `P`.
pub fn reduce(c: &Q) -> u64 {
    let num = int_mod(c.numer());
    let den = int_mod(c.denom());
    assert!(den != 0, "denominator divisible by the oracle prime");
    (num as u128 * pow_mod(den, P - 2) as u128 % P as u128) as u64
}

/// Rank over F_p of dense rows.
pub fn rank_dense(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][col], P - 2);
        for k in 0..cols {
            rows[rank][k] = (rows[rank][k] as u128 * inv as u128 % P as u128) as u64;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for k in 0..cols {
                    let sub = (f as u128 * rows[rank][k] as u128 % P as u128) as u64;
                    rows[r][k] = (rows[r][k] + P - sub) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant over F_p of a square matrix.
pub fn det_dense(mut rows: Vec<Vec<u64>>) -> u64 {
    let n = rows.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| rows[r][col] != 0) else { return 0 };
        if p != col {
            rows.swap(p, col);
            det = (P - det) % P;
        }
        det = (det as u128 * rows[col][col] as u128 % P as u128) as u64;
        let inv = pow_mod(rows[col][col], P - 2);
        for r in col + 1..n {
            let f = (rows[r][col] as u128 * inv as u128 % P as u128) as u64;
            for k in col..n {
                let sub = (f as u128 * rows[col][k] as u128 % P as u128) as u64;
                rows[r][k] = (rows[r][k] + P - sub) % P;
            }
        }
    }
    det
}

/// Rank over F_p of sparse rational vectors.
pub fn rank_mod_p<'a>(vectors: impl IntoIterator<Item = &'a SparseVector<Monomial3, Q>>) -> usize {
    let vectors: Vec<_> = vectors.into_iter().collect();
    let mut index = BTreeMap::new();
    for v in &vectors {
        for (k, _) in v.iter() {
            let n = index.len();
            index.entry(*k).or_insert(n);
        }
    }
    let rows = vectors
        .iter()
        .map(|v| {
            let mut row = vec![0u64; index.len()];
            for (k, c) in v.iter() {
                row[index[k]] = reduce(c);
            }
            row
        })
        .collect();
    rank_dense(rows)
}

/// `v` lies in the span of `basis`, decided over F_p.
pub fn in_span_mod_p(basis: &[&SparseVector<Monomial3, Q>], v: &SparseVector<Monomial3, Q>) -> bool {
    let r = rank_mod_p(basis.iter().copied());
    let mut with: Vec<&SparseVector<Monomial3, Q>> = basis.to_vec();
    with.push(v);
    rank_mod_p(with) == r
}

/// Signed integer value of a small rational.
pub fn small_int(c: &Q) -> Option<i64> {
    if c.denom().is_one() && c.numer().abs() < BigInt::from(1_000_000) {
        c.numer().to_i64()
    } else {
        None
    }
}

pub fn is_zero(c: &Q) -> bool {
    c.is_zero()
}
