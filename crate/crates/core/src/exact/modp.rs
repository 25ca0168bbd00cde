//! Word-size prime field arithmetic, number-field reductions and dense
//! Gaussian elimination modulo a prime.
//!
//! Primes are kept below 2^28 so that a product of two residues fits in 56
//! bits and up to 255 of them can be accumulated in a `u64` before reducing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{bigint_mod, NumberField};

/// Upper end of the prime search.
pub const PRIME_CEILING: u64 = 1 << 28;

const LAZY_LIMIT: usize = 250;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller–Rabin, valid for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

/// A prime together with the roots of a field's minimal polynomial modulo it.
/// Each root gives a ring homomorphism from the field's coefficient ring to F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPrime {
    pub p: u64,
    pub roots: Vec<u64>,
}

/// Iterates over primes below [`PRIME_CEILING`] (descending) at which the
/// minimal polynomial reduces to a squarefree polynomial with at least one
/// root, or, with `split`, with a full set of distinct roots.
pub struct GoodPrimes<'a> {
    field: &'a NumberField,
    next: u64,
    split: bool,
    rng: ChaCha8Rng,
}

impl<'a> GoodPrimes<'a> {
    pub fn new(field: &'a NumberField, split: bool) -> Self {
        Self::starting_below(field, split, PRIME_CEILING)
    }

    pub fn starting_below(field: &'a NumberField, split: bool, ceiling: u64) -> Self {
        GoodPrimes { field, next: ceiling - 1, split, rng: ChaCha8Rng::seed_from_u64(0x5eed) }
    }
}

impl Iterator for GoodPrimes<'_> {
    type Item = GoodPrime;

    fn next(&mut self) -> Option<GoodPrime> {
        while self.next > 1000 {
            let p = self.next;
            self.next -= 1;
            if !is_prime(p) {
                continue;
            }
            let Some(mp) = minpoly_mod(self.field, p) else { continue };
            let roots = roots_mod_p(&mp, p, &mut self.rng);
            let g = self.field.degree();
            // squarefree check: distinct roots count equals degree, or gcd(f, f') = 1
            let derivative: Vec<u64> =
                (1..mp.len()).map(|i| mul_mod(mp[i], i as u64 % p, p)).collect();
            if poly_gcd(&mp, &derivative, p).len() > 1 {
                continue;
            }
            if roots.is_empty() || (self.split && roots.len() != g) {
                continue;
            }
            return Some(GoodPrime { p, roots });
        }
        None
    }
}

/// Minimal polynomial reduced mod p, or `None` if a denominator vanishes.
pub fn minpoly_mod(field: &NumberField, p: u64) -> Option<Vec<u64>> {
    field
        .minpoly()
        .iter()
        .map(|c| {
            let d = bigint_mod(c.denom(), p);
            let inv = inv_mod(d, p)?;
            Some(mul_mod(bigint_mod(c.numer(), p), inv, p))
        })
        .collect()
}

// ---- small dense polynomials over F_p (constant-first) ----

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = poly_trim(b.to_vec());
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p).expect("nonzero leading coefficient");
    while r.len() > db && !poly_is_zero(&r) {
        let k = r.len() - 1 - db;
        let c = mul_mod(*r.last().unwrap(), inv, p);
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - mul_mod(c, *bi, p)) % p;
        }
        r.pop();
        r = poly_trim(r);
        if db == 0 {
            return vec![0];
        }
    }
    r
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, m, p);
        }
        b = poly_mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !poly_is_zero(&b) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    // monic
    let lead = *a.last().unwrap();
    if lead != 0 {
        let inv = inv_mod(lead, p).unwrap();
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    poly_trim(out)
}

/// Distinct roots in F_p of a small polynomial (Cantor–Zassenhaus splitting).
pub fn roots_mod_p(f: &[u64], p: u64, rng: &mut impl Rng) -> Vec<u64> {
    let f = poly_trim(f.to_vec());
    if f.len() < 2 {
        return Vec::new();
    }
    // product of the distinct linear factors: gcd(f, x^p - x)
    let xp = poly_pow_mod(&[0, 1], p, &f, p);
    let h = poly_gcd(&f, &poly_sub(&xp, &[0, 1], p), p);
    let mut roots = Vec::new();
    split_linear(h, p, rng, &mut roots);
    roots.sort_unstable();
    roots
}

fn split_linear(h: Vec<u64>, p: u64, rng: &mut impl Rng, out: &mut Vec<u64>) {
    let deg = h.len() - 1;
    if deg == 0 {
        return;
    }
    if deg == 1 {
        // monic: x + c
        out.push((p - h[0]) % p);
        return;
    }
    if p == 2 {
        for r in 0..2 {
            if h.iter().rev().fold(0, |acc, &c| (acc * r + c) % 2) == 0 {
                out.push(r);
            }
        }
        return;
    }
    loop {
        let a = rng.gen_range(0..p);
        let w = poly_pow_mod(&[a, 1], (p - 1) / 2, &h, p);
        let d = poly_gcd(&h, &poly_sub(&w, &[1], p), p);
        let dd = d.len() - 1;
        if dd > 0 && dd < deg {
            let q = poly_div_exact(&h, &d, p);
            split_linear(d, p, rng, out);
            split_linear(q, p, rng, out);
            return;
        }
    }
}

fn poly_div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p).unwrap();
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul_mod(r[k + db], inv, p);
        q[k] = c;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - mul_mod(c, *bi, p)) % p;
        }
    }
    q
}

/// Inverse of the Vandermonde matrix `V[i][k] = roots[i]^k`, used to recover
/// power-basis coefficients from the images under every embedding.
pub fn vandermonde_inverse(roots: &[u64], p: u64) -> Option<Vec<Vec<u64>>> {
    let g = roots.len();
    let mut m = ModMatrix::zeros(p, g, 2 * g);
    for (i, &r) in roots.iter().enumerate() {
        let mut pw = 1 % p;
        for k in 0..g {
            m.set(i, k, pw);
            pw = mul_mod(pw, r, p);
        }
        m.set(i, g + i, 1);
    }
    let e = m.eliminate(true, false);
    if e.rank < g || e.pivot_cols[..g] != (0..g).collect::<Vec<_>>()[..] {
        return None;
    }
    let red = e.reduced.expect("reduced form requested");
    Some((0..g).map(|k| (0..g).map(|i| red.get(k, g + i)).collect()).collect())
}

/// Dense row-major matrix over F_p.
#[derive(Debug, Clone)]
pub struct ModMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Outcome of a Gaussian elimination.
#[derive(Debug, Clone)]
pub struct Elimination {
    pub rank: usize,
    /// Pivot column of the k-th pivot.
    pub pivot_cols: Vec<usize>,
    /// Original index of the row that supplied the k-th pivot.
    pub pivot_rows: Vec<usize>,
    /// The reduced matrix (pivot rows first), when requested.
    pub reduced: Option<ModMatrix>,
}

impl ModMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        assert!(p < PRIME_CEILING, "prime too large for lazy reduction");
        ModMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c] % self.p
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    /// Keeps only the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> ModMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        ModMatrix { p: self.p, rows: rows.len(), cols: self.cols, data }
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = ModMatrix::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(false, true).rank
    }

    /// Gaussian elimination with columns processed left to right.
    ///
    /// With `reduce` the result is in reduced row echelon form (needed for
    /// kernels); otherwise only rows below each pivot are cleared. With
    /// `stop_at_full_rank`, elimination stops as soon as every column has a
    /// pivot.
    pub fn eliminate(mut self, reduce: bool, stop_at_full_rank: bool) -> Elimination {
        let p = self.p;
        let (m, n) = (self.rows, self.cols);
        let mut row_ids: Vec<usize> = (0..m).collect();
        let mut pivot_cols = Vec::new();
        let mut rank = 0usize;
        let mut pending = 0usize;
        let mut piv: Vec<u32> = vec![0; n];
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(found) = (rank..m).find(|&r| self.data[r * n + col] % p != 0) else {
                continue;
            };
            if found != rank {
                let (a, b) = (rank.min(found), rank.max(found));
                let (head, tail) = self.data.split_at_mut(b * n);
                head[a * n..(a + 1) * n].swap_with_slice(&mut tail[..n]);
                row_ids.swap(a, b);
            }
            // normalise the pivot row
            let inv = inv_mod(self.data[rank * n + col] % p, p).expect("nonzero pivot");
            for j in col..n {
                let v = mul_mod(self.data[rank * n + j] % p, inv, p);
                self.data[rank * n + j] = v;
                piv[j] = v as u32;
            }
            let start = if reduce { 0 } else { rank + 1 };
            for i in start..m {
                if i == rank {
                    continue;
                }
                let row = &mut self.data[i * n..(i + 1) * n];
                let c = row[col] % p;
                if c == 0 {
                    row[col] = 0;
                    continue;
                }
                let factor = p - c;
                row[col] = 0;
                axpy_lazy(&mut row[col + 1..], factor as u32, &piv[col + 1..]);
            }
            pivot_cols.push(col);
            rank += 1;
            pending += 1;
            if pending >= LAZY_LIMIT {
                for v in self.data.iter_mut() {
                    *v %= p;
                }
                pending = 0;
            }
            if stop_at_full_rank && rank == n {
                break;
            }
        }
        for v in self.data.iter_mut() {
            *v %= p;
        }
        let pivot_rows = row_ids[..rank].to_vec();
        Elimination {
            rank,
            pivot_cols,
            pivot_rows,
            reduced: if reduce { Some(self) } else { None },
        }
    }

    /// Basis of the right kernel, one vector per non-pivot column.
    pub fn kernel(self) -> (Elimination, Vec<Vec<u64>>) {
        let n = self.cols;
        let p = self.p;
        let e = self.eliminate(true, false);
        let red = e.reduced.as_ref().unwrap();
        let mut is_pivot = vec![false; n];
        for &c in &e.pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; n];
            v[free] = 1;
            for (k, &pc) in e.pivot_cols.iter().enumerate() {
                v[pc] = (p - red.get(k, free)) % p;
            }
            basis.push(v);
        }
        (e, basis)
    }
}

#[inline]
fn axpy_lazy(dst: &mut [u64], factor: u32, src: &[u32]) {
    let f = factor as u64;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = d.wrapping_add(f.wrapping_mul(s as u64));
    }
}

/// Incremental Chinese remaindering of a vector of residues.
#[derive(Debug, Clone)]
pub struct CrtVector {
    modulus: BigInt,
    values: Vec<BigInt>,
    primes: Vec<u64>,
}

impl CrtVector {
    pub fn new(len: usize) -> Self {
        CrtVector { modulus: BigInt::one(), values: vec![BigInt::zero(); len], primes: Vec::new() }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn add(&mut self, p: u64, residues: &[u64]) {
        assert_eq!(residues.len(), self.values.len());
        let m_mod_p = bigint_mod(&self.modulus, p);
        let inv = inv_mod(m_mod_p, p).expect("primes must be distinct");
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let cur = bigint_mod(v, p);
            let delta = mul_mod((r + p - cur) % p, inv, p);
            if delta != 0 {
                *v += &self.modulus * BigInt::from(delta);
            }
        }
        self.modulus *= BigInt::from(p);
        self.primes.push(p);
    }

    /// Reconstructs every entry as a fraction over one common denominator.
    /// Returns the integer numerators and the denominator.
    pub fn reconstruct(&self) -> Option<(Vec<BigInt>, BigInt)> {
        let mut den = BigInt::one();
        let mut nums = Vec::with_capacity(self.values.len());
        for v in &self.values {
            let scaled = (v * &den).mod_floor(&self.modulus);
            let (n, d) = rational_reconstruct(&scaled, &self.modulus)?;
            if !d.is_one() {
                for prev in nums.iter_mut() {
                    *prev *= &d;
                }
                den *= &d;
            }
            nums.push(n);
        }
        Some((nums, den))
    }
}

/// Wang's rational reconstruction: finds `n/d ≡ a (mod m)` with
/// `|n|, d <= sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}
