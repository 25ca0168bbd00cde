//! Milnor numbers, the Euler characteristic of the complement, and Alexander
//! polynomial bookkeeping from tables of `n_2(q)` values.
//!
//! The eigenvalue `α_q = exp(−2πi q/d)` has multiplicity
//! `m(α_q) = n_2(q) + n_2(d−q)` for `1 ≤ q ≤ d−1`, and `m(1) = r − 1` for a
//! curve with `r` components.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::field::{cyclotomic_poly, upoly};

/// `μ = Σ n_k·(k−1)²` for ordinary singularities.
pub fn total_milnor(nk: &BTreeMap<usize, usize>) -> u64 {
    nk.iter().map(|(&k, &c)| c as u64 * (k as u64 - 1).pow(2)).sum()
}

/// `χ(U) = (d−1)(d−2) + 1 − μ`.
pub fn euler_complement(d: u32, mu: u64) -> i64 {
    let d = d as i64;
    (d - 1) * (d - 2) + 1 - mu as i64
}

/// The third column of a monodromy-eigenspace table: `q → n_2(q)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MonodromyTable {
    rows: BTreeMap<usize, u64>,
}

impl MonodromyTable {
    pub fn new(rows: &BTreeMap<usize, i64>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (&q, &v) in rows {
            if v < 0 {
                return Err(Error::NegativeMultiplicity(q));
            }
            out.insert(q, v as u64);
        }
        Ok(MonodromyTable { rows: out })
    }

    pub fn zero() -> Self {
        MonodromyTable::default()
    }

    /// `n_2(q)`, zero for `q ≤ 2` and for rows not listed.
    pub fn n2(&self, q: usize) -> u64 {
        if q <= 2 {
            0
        } else {
            self.rows.get(&q).copied().unwrap_or(0)
        }
    }

    pub fn max_q(&self) -> usize {
        self.rows.keys().next_back().copied().unwrap_or(0)
    }
}

/// Eigenvalue multiplicities of the degree-one monodromy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexanderSpec {
    pub d: u32,
    pub r: u32,
    /// `q → m(α_q)` for `q = 0..d−1`.
    pub mults: BTreeMap<usize, u64>,
}

/// `Φ_k^e` factor of an Alexander polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclotomicFactor {
    pub order: u32,
    pub exponent: u64,
}

/// Order of `α_q` as a root of unity.
pub fn eigenvalue_order(d: u32, q: usize) -> u32 {
    d / (q as u32).gcd(&d)
}

pub fn alexander_from_table(d: u32, r: u32, table: &MonodromyTable) -> Result<AlexanderSpec> {
    if d == 0 || r == 0 {
        return Err(Error::Parse("degree and component count must be positive".into()));
    }
    let d_us = d as usize;
    let mut mults = BTreeMap::new();
    mults.insert(0, (r - 1) as u64);
    for q in 1..d_us {
        mults.insert(q, table.n2(q) + table.n2(d_us - q));
    }
    Ok(AlexanderSpec { d, r, mults })
}

impl AlexanderSpec {
    pub fn degree(&self) -> u64 {
        self.mults.values().sum()
    }

    pub fn mult(&self, q: usize) -> u64 {
        self.mults.get(&q).copied().unwrap_or(0)
    }

    /// Groups eigenvalues by order. Fails if two eigenvalues of the same order
    /// carry different multiplicities (then Δ has no rational factorization).
    pub fn cyclotomic_factors(&self) -> Result<Vec<CyclotomicFactor>> {
        let mut by_order: BTreeMap<u32, u64> = BTreeMap::new();
        for (&q, &m) in &self.mults {
            let k = eigenvalue_order(self.d, q);
            match by_order.get(&k) {
                Some(&prev) if prev != m => {
                    return Err(Error::Parse(format!(
                        "eigenvalues of order {k} have multiplicities {prev} and {m}"
                    )))
                }
                _ => {
                    by_order.insert(k, m);
                }
            }
        }
        Ok(by_order
            .into_iter()
            .filter(|(_, e)| *e > 0)
            .map(|(order, exponent)| CyclotomicFactor { order, exponent })
            .collect())
    }

    /// The expanded polynomial `Π Φ_k^{e_k}`, constant-first.
    pub fn polynomial(&self) -> Result<Vec<BigRational>> {
        let mut acc = vec![BigRational::one()];
        for f in self.cyclotomic_factors()? {
            let phi = int_poly(&cyclotomic_poly(f.order));
            for _ in 0..f.exponent {
                acc = upoly::mul(&acc, &phi);
            }
        }
        Ok(acc)
    }

    pub fn factored_string(&self) -> String {
        match self.cyclotomic_factors() {
            Ok(fs) => format_factors(&fs),
            Err(_) => "(not a product of cyclotomic factors)".into(),
        }
    }
}

fn int_poly(c: &[i64]) -> Vec<BigRational> {
    c.iter().map(|&v| BigRational::from_integer(v.into())).collect()
}

pub fn format_factors(fs: &[CyclotomicFactor]) -> String {
    if fs.is_empty() {
        return "1".into();
    }
    fs.iter()
        .map(|f| {
            let base = match f.order {
                1 => "(t - 1)".to_string(),
                2 => "(t + 1)".to_string(),
                k => format!("Phi_{k}(t)"),
            };
            if f.exponent == 1 {
                base
            } else {
                format!("{base}^{}", f.exponent)
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Multiplicity of every `d`-th root of unity in a polynomial, found by
/// repeated division by cyclotomic polynomials. Returns the per-order
/// exponents and the cofactor left over.
pub fn cyclotomic_multiplicities(d: u32, poly: &[BigRational]) -> (BTreeMap<u32, u64>, Vec<BigRational>) {
    let mut rest = upoly::trim(poly.to_vec());
    let mut out = BTreeMap::new();
    for k in (1..=d).filter(|k| d % k == 0) {
        let phi = int_poly(&cyclotomic_poly(k));
        let mut e = 0;
        loop {
            if rest.len() < phi.len() {
                break;
            }
            let (q, r) = upoly::div_rem(&rest, &phi);
            if !upoly::is_zero(&r) {
                break;
            }
            rest = q;
            e += 1;
        }
        out.insert(k, e);
    }
    (out, rest)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenvalueComparison {
    pub q: usize,
    pub order: u32,
    pub reconstructed: u64,
    pub stated: u64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexanderComparison {
    pub rows: Vec<EigenvalueComparison>,
    pub stated_degree: u64,
    pub reconstructed_degree: u64,
    /// Part of the stated polynomial not made of `d`-th roots of unity.
    pub stated_cofactor: String,
}

impl AlexanderComparison {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree) && self.stated_cofactor == "1"
    }

    pub fn disagreements(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.agree).map(|r| r.q).collect()
    }
}

/// Compares reconstructed multiplicities with a literal polynomial, one row
/// per eigenvalue `α_q`.
pub fn compare_with_polynomial(spec: &AlexanderSpec, stated: &[BigRational]) -> AlexanderComparison {
    let (by_order, cofactor) = cyclotomic_multiplicities(spec.d, stated);
    let rows = (0..spec.d as usize)
        .map(|q| {
            let order = eigenvalue_order(spec.d, q);
            let s = by_order.get(&order).copied().unwrap_or(0);
            let r = spec.mult(q);
            EigenvalueComparison { q, order, reconstructed: r, stated: s, agree: r == s }
        })
        .collect();
    let stated_degree = (upoly::trim(stated.to_vec()).len() - 1) as u64;
    let lead = cofactor.last().cloned().unwrap_or_else(BigRational::zero);
    let cof = if cofactor.len() == 1 && lead.is_one() { "1".into() } else { upoly::display(&cofactor, "t") };
    AlexanderComparison { rows, stated_degree, reconstructed_degree: spec.degree(), stated_cofactor: cof }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeIdentityReport {
    pub d: u32,
    pub chi: i64,
    pub deg_delta1: u64,
    /// `d·χ − deg Δ⁰ − deg Δ¹` with `Δ⁰ = t − 1`.
    pub deg_delta2: i64,
    pub consistent: bool,
}

impl fmt::Display for DegreeIdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "deg Δ² = {}·{} − 1 − {} = {} ({})",
            self.d,
            self.chi,
            self.deg_delta1,
            self.deg_delta2,
            if self.consistent { "consistent" } else { "inconsistent: negative degree" }
        )
    }
}

/// Degree count in `Δ⁰(t)·Δ¹(t)·Δ²(t) = (t^d − 1)^χ` with `Δ⁰ = t − 1`.
pub fn degree_identity_check(d: u32, chi: i64, deg_delta1: u64) -> DegreeIdentityReport {
    let deg_delta2 = d as i64 * chi - 1 - deg_delta1 as i64;
    DegreeIdentityReport { d, chi, deg_delta1, deg_delta2, consistent: deg_delta2 >= 0 }
}
