//! Multimodular nullspace: row reduction modulo word-size primes, Chinese
//! remaindering and rational reconstruction. Every reconstructed vector is
//! checked exactly against the original matrix before it is returned.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

const MAX_PRIMES: usize = 64;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_PRIMES);
        let mut n = (1u64 << 62) - 1;
        while out.len() < MAX_PRIMES {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Row-reduces in place modulo `p`; returns pivot columns, keeping only the
/// nonzero rows.
fn rref_mod(rows: &mut Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut().skip(c) {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let factor = row[c];
            if i == r || factor == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if y != 0 {
                    *x = (*x + p - mul_mod(factor, y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// `n / d ≡ a (mod m)` with `|n|, |d| <= sqrt(m / 2)`, if it exists.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1, s0, s1) = (r1, r2, s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

/// Kernel basis in the same normal form as exact Gauss-Jordan elimination:
/// one vector per free column, with a 1 there and 0 at the other free
/// columns. Returns `None` if the prime budget runs out, so the caller can
/// fall back to exact elimination.
pub(super) fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Option<Vec<Vec<Rational>>> {
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();

    // Best pivot set so far, with the running CRT residues of the reduced
    // rows at the free columns.
    let mut pivots: Option<Vec<usize>> = None;
    let mut modulus = BigInt::one();
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut previous: Option<Vec<Vec<Rational>>> = None;

    for &p in primes() {
        let mut reduced: Vec<Vec<u64>> = int_rows.iter().map(|r| r.iter().map(|x| reduce(x, p)).collect()).collect();
        let piv = rref_mod(&mut reduced, ncols, p);
        let free: Vec<usize> = {
            let mut is_pivot = vec![false; ncols];
            piv.iter().for_each(|&c| is_pivot[c] = true);
            (0..ncols).filter(|&c| !is_pivot[c]).collect()
        };
        let fresh = match &pivots {
            None => true,
            // A larger rank, or the same rank with earlier pivots, means the
            // previous primes were unlucky.
            Some(best) => piv.len() > best.len() || (piv.len() == best.len() && piv < *best),
        };
        if !fresh && pivots.as_ref() != Some(&piv) {
            continue;
        }
        if fresh {
            pivots = Some(piv.clone());
            modulus = BigInt::one();
            residues = vec![vec![BigInt::zero(); free.len()]; piv.len()];
            previous = None;
        }
        let m_mod_p = reduce(&modulus, p);
        let m_inv = inv_mod(m_mod_p, p);
        for (i, row) in reduced.iter().enumerate() {
            for (k, &f) in free.iter().enumerate() {
                let r = &residues[i][k];
                let diff = (row[f] + p - reduce(r, p)) % p;
                let step = mul_mod(diff, m_inv, p);
                residues[i][k] = r + &modulus * BigInt::from(step);
            }
        }
        modulus *= BigInt::from(p);

        let Some(entries) = residues
            .iter()
            .map(|row| row.iter().map(|a| reconstruct(a, &modulus)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let piv = pivots.as_ref().expect("set above");
        let basis: Vec<Vec<Rational>> = free
            .iter()
            .enumerate()
            .map(|(k, &f)| {
                let mut v = vec![Rational::zero(); ncols];
                v[f] = Rational::one();
                for (i, &pc) in piv.iter().enumerate() {
                    v[pc] = -entries[i][k].clone();
                }
                v
            })
            .collect();
        if previous.as_ref() == Some(&basis) && in_kernel(rows, &basis) {
            return Some(basis);
        }
        previous = Some(basis);
    }
    None
}

fn in_kernel(rows: &[Vec<Rational>], basis: &[Vec<Rational>]) -> bool {
    basis.iter().all(|v| {
        rows.iter().all(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
    })
}
