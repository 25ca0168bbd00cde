//! Defining polynomials, Jacobian syzygies of minimal degree and freeness
//! certificates.
//!
//! A degree-`r` syzygy is a triple `(a, b, c)` of forms of degree `r` with
//! `a·f_x + b·f_y + c·f_z = 0`. The coefficient system has `3·C(r+2,2)`
//! unknowns and `C(r+d+1,2)` equations. Emptiness at a degree is certified by
//! full column rank modulo a prime (rank can only drop under reduction), and
//! every such claim is repeated at a second prime. A nonzero syzygy is
//! certified by reconstructing an exact witness and checking the identity by
//! polynomial multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::modp::{vandermonde_inverse, CrtVector, GoodPrime, GoodPrimes, ModMatrix};
use crate::exact::poly::{monomial_index, monomials_of_degree, Monomial};
use crate::exact::{FieldElement, MultiPoly, NumberField};
use crate::io::ArrangementFile;

/// A reduced plane curve given by its irreducible components.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    field: Arc<NumberField>,
    components: Vec<MultiPoly>,
    f: MultiPoly,
    d: u32,
}

impl CurveSpec {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    /// The expanded product, scaled to have integral coefficients.
    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn from_arrangement(arr: &Arrangement) -> Result<Self> {
        defining_poly(arr.defining_components())
    }

    /// Lines followed by conics of an arrangement file.
    pub fn from_file(file: &ArrangementFile) -> Result<Self> {
        let mut comps: Vec<MultiPoly> = file.lines.iter().map(|l| MultiPoly::linear(l.coeffs())).collect();
        comps.extend(file.conic_polys());
        defining_poly(comps)
    }
}

/// Multiplies out the components after checking that no two are proportional.
pub fn defining_poly(components: Vec<MultiPoly>) -> Result<CurveSpec> {
    let field = components
        .first()
        .map(|c| c.field().clone())
        .ok_or_else(|| Error::Parse("a curve needs at least one component".into()))?;
    let monic = components.iter().map(|c| c.monic()).collect::<Result<Vec<_>>>()?;
    for (i, c) in monic.iter().enumerate() {
        if !c.is_homogeneous() || c.is_zero() {
            return Err(Error::Parse(format!("component {i} is not a nonzero form")));
        }
        if monic[..i].contains(c) {
            return Err(Error::RepeatedComponent(i));
        }
    }
    let mut f = MultiPoly::constant(FieldElement::one(&field));
    for c in &components {
        f = f.try_mul(c)?;
    }
    let f = f.clear_denominators();
    let d = f.degree();
    Ok(CurveSpec { field, components, f, d })
}

/// Gradient of `f` reduced at one embedding into F_p.
struct GradientModP {
    p: u64,
    terms: [Vec<(Monomial, u64)>; 3],
}

impl GradientModP {
    fn new(curve: &CurveSpec, p: u64, root: u64) -> Option<Self> {
        let g = curve.f.gradient();
        let mut terms: [Vec<(Monomial, u64)>; 3] = Default::default();
        for (k, part) in g.iter().enumerate() {
            terms[k] = part.mod_terms(p, root)?;
            terms[k].retain(|(_, v)| *v != 0);
        }
        Some(GradientModP { p, terms })
    }

    /// The coefficient matrix of the degree-`r` syzygy system.
    fn matrix(&self, r: u32, d: u32) -> ModMatrix {
        let n = monomials_of_degree(r as u16);
        let rows = ((r + d) * (r + d + 1) / 2) as usize;
        let mut a = ModMatrix::zeros(self.p, rows, 3 * n.len());
        for (k, part) in self.terms.iter().enumerate() {
            for (j, m) in n.iter().enumerate() {
                let col = k * n.len() + j;
                for (mm, c) in part {
                    let prod = [m[0] + mm[0], m[1] + mm[1], m[2] + mm[2]];
                    a.set(monomial_index(&prod), col, *c);
                }
            }
        }
        a
    }
}

fn probe_primes(field: &NumberField) -> impl Iterator<Item = GoodPrime> + '_ {
    GoodPrimes::new(field, false)
}

/// Column count minus rank of the degree-`r` system at one embedding.
fn nullity_mod(curve: &CurveSpec, r: u32, p: u64, root: u64) -> Option<usize> {
    let g = GradientModP::new(curve, p, root)?;
    let a = g.matrix(r, curve.d);
    let cols = a.cols();
    Some(cols - a.eliminate(false, true).rank)
}

/// Nullspace dimension of the degree-`r` system, modulo primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyzygyDim {
    pub r: u32,
    /// Smallest nullity observed; an upper bound on the dimension over the
    /// field, and equal to it once an exact witness family of that size exists.
    pub dim: usize,
    pub per_prime: Vec<(u64, usize)>,
}

impl SyzygyDim {
    pub fn primes_agree(&self) -> bool {
        self.per_prime.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

/// Dimension of the degree-`r` syzygy space, computed at two primes.
pub fn syzygy_space_dim(curve: &CurveSpec, r: u32) -> Result<SyzygyDim> {
    let mut per_prime = Vec::new();
    for gp in probe_primes(&curve.field) {
        if let Some(n) = nullity_mod(curve, r, gp.p, gp.roots[0]) {
            per_prime.push((gp.p, n));
        }
        if per_prime.len() == 2 {
            break;
        }
    }
    if per_prime.len() < 2 {
        return Err(Error::NoGoodPrime(format!("syzygy system of degree {r}")));
    }
    let dim = per_prime.iter().map(|x| x.1).min().unwrap_or(0);
    Ok(SyzygyDim { r, dim, per_prime })
}

/// A triple `(a, b, c)` of degree-`r` forms with `a·f_x + b·f_y + c·f_z = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyWitness {
    pub r: u32,
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub c: MultiPoly,
}

impl SyzygyWitness {
    /// Checks the defining identity by exact polynomial arithmetic.
    pub fn verify(&self, curve: &CurveSpec) -> Result<bool> {
        if self.a.is_zero() && self.b.is_zero() && self.c.is_zero() {
            return Ok(false);
        }
        let [fx, fy, fz] = curve.f.gradient();
        let s = self.a.try_mul(&fx)?.try_add(&self.b.try_mul(&fy)?)?.try_add(&self.c.try_mul(&fz)?)?;
        Ok(s.is_zero())
    }

    /// SHA-256 of the three polynomials' text forms.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for p in [&self.a, &self.b, &self.c] {
            h.update(p.to_string().as_bytes());
            h.update(b"\n");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for SyzygyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r = {}\na = {}\nb = {}\nc = {}", self.r, self.a, self.b, self.c)
    }
}

/// Outcome of the search for the minimal syzygy degree.
#[derive(Debug, Clone)]
pub struct MdrOutcome {
    /// Smallest degree with a nonzero syzygy, if one was found within the bound.
    pub r: Option<u32>,
    pub witness: Option<SyzygyWitness>,
    pub bound: u32,
    /// Degrees certified empty, each with the two primes that agree.
    pub empty: BTreeMap<u32, [u64; 2]>,
    pub primes_used: Vec<u64>,
    /// False when the nonzero syzygy at `r` rests on modular evidence only.
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MdrOptions {
    pub modular_only: bool,
}

struct Prober<'a> {
    curve: &'a CurveSpec,
    primes: Vec<GoodPrime>,
    cache: BTreeMap<u32, Option<[u64; 2]>>,
}

impl<'a> Prober<'a> {
    fn new(curve: &'a CurveSpec) -> Result<Self> {
        let mut primes = Vec::new();
        for gp in probe_primes(&curve.field) {
            if GradientModP::new(curve, gp.p, gp.roots[0]).is_some() {
                primes.push(gp);
            }
            if primes.len() == 2 {
                break;
            }
        }
        if primes.len() < 2 {
            return Err(Error::NoGoodPrime("no two primes reduce the curve".into()));
        }
        Ok(Prober { curve, primes, cache: BTreeMap::new() })
    }

    /// `Some(primes)` when degree `r` is certified empty.
    fn empty_at(&mut self, r: u32) -> Option<[u64; 2]> {
        if let Some(v) = self.cache.get(&r) {
            return *v;
        }
        let (p1, p2) = (&self.primes[0], &self.primes[1]);
        let first = nullity_mod(self.curve, r, p1.p, p1.roots[0]).unwrap_or(usize::MAX);
        let res = if first == 0 {
            match nullity_mod(self.curve, r, p2.p, p2.roots[0]) {
                Some(0) => Some([p1.p, p2.p]),
                _ => None,
            }
        } else {
            None
        };
        self.cache.insert(r, res);
        res
    }
}

/// Smallest `r ≤ bound` with a nonzero syzygy, with an exact witness unless
/// `modular_only` is set.
pub fn mdr(curve: &CurveSpec, bound: u32, opts: MdrOptions) -> Result<MdrOutcome> {
    let bound = bound.min(curve.d.saturating_sub(1));
    let mut prober = Prober::new(curve)?;
    let mut primes_used: Vec<u64> = prober.primes.iter().map(|g| g.p).collect();
    // the syzygy module is closed under multiplication by linear forms, so
    // emptiness is downward closed and a binary search applies
    let found = if prober.empty_at(bound).is_some() {
        None
    } else {
        let (mut lo, mut hi) = (0u32, bound);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if prober.empty_at(mid).is_some() {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    };
    let mut empty: BTreeMap<u32, [u64; 2]> =
        prober.cache.iter().filter_map(|(r, v)| v.map(|p| (*r, p))).collect();
    let Some(r) = found else {
        return Ok(MdrOutcome { r: None, witness: None, bound, empty, primes_used, exact: true });
    };
    if r > 0 {
        if let Some(p) = prober.empty_at(r - 1) {
            empty.insert(r - 1, p);
        }
    }
    if opts.modular_only {
        return Ok(MdrOutcome { r: Some(r), witness: None, bound, empty, primes_used, exact: false });
    }
    let (witness, recon_primes) = reconstruct_witness(curve, r)?;
    primes_used.extend(recon_primes);
    Ok(MdrOutcome { r: Some(r), witness: Some(witness), bound, empty, primes_used, exact: true })
}

/// One kernel vector per embedding, normalized to 1 at the first free column
/// and 0 at the others, so that it is the image of a fixed vector over the field.
struct KernelImage {
    pivot_cols: Vec<usize>,
    coeffs: Vec<u64>,
}

fn kernel_at_prime(
    curve: &CurveSpec,
    r: u32,
    gp: &GoodPrime,
    rows: &mut Option<Vec<usize>>,
) -> Option<KernelImage> {
    let g = curve.field.degree();
    let vinv = vandermonde_inverse(&gp.roots, gp.p)?;
    let mut images: Vec<Vec<u64>> = Vec::with_capacity(g);
    let mut pivots: Option<Vec<usize>> = None;
    for &root in &gp.roots {
        let grad = GradientModP::new(curve, gp.p, root)?;
        let full = grad.matrix(r, curve.d);
        if rows.is_none() {
            let e = full.clone().eliminate(false, false);
            *rows = Some(e.pivot_rows);
        }
        let a = full.select_rows(rows.as_ref().unwrap());
        let (e, basis) = a.kernel();
        match &pivots {
            None => pivots = Some(e.pivot_cols.clone()),
            Some(pc) if *pc != e.pivot_cols => return None,
            _ => {}
        }
        images.push(basis.into_iter().next()?);
    }
    let p = gp.p;
    let cols = images[0].len();
    let mut coeffs = vec![0u64; cols * g];
    for j in 0..cols {
        for k in 0..g {
            let mut acc = 0u64;
            for (i, img) in images.iter().enumerate() {
                acc = (acc + vinv[k][i] * img[j]) % p;
            }
            coeffs[j * g + k] = acc;
        }
    }
    Some(KernelImage { pivot_cols: pivots?, coeffs })
}

fn witness_from_integers(
    curve: &CurveSpec,
    r: u32,
    nums: &[BigInt],
) -> SyzygyWitness {
    let field = &curve.field;
    let g = field.degree();
    let mons = monomials_of_degree(r as u16);
    let n = mons.len();
    let mut content = BigInt::zero();
    for v in nums {
        content = content.gcd(v);
    }
    if content.is_zero() {
        content = BigInt::one();
    }
    let mut parts: Vec<Vec<(Monomial, FieldElement)>> = vec![Vec::new(), Vec::new(), Vec::new()];
    for j in 0..3 * n {
        let qs: Vec<BigRational> =
            (0..g).map(|k| BigRational::from_integer(&nums[j * g + k] / &content)).collect();
        let c = FieldElement::from_coeffs(field, &qs);
        if !c.is_zero() {
            parts[j / n].push((mons[j % n], c));
        }
    }
    let mut polys = parts.into_iter().map(|t| MultiPoly::from_terms(field, t).expect("same field"));
    let (a, b, c) = (polys.next().unwrap(), polys.next().unwrap(), polys.next().unwrap());
    // sign convention: leading coefficient of the first nonzero entry positive
    let lead_negative = [&a, &b, &c]
        .iter()
        .find_map(|p| p.leading().map(|(_, c)| c.numerators().iter().rev().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative())))
        .unwrap_or(false);
    if lead_negative {
        SyzygyWitness { r, a: a.neg(), b: b.neg(), c: c.neg() }
    } else {
        SyzygyWitness { r, a, b, c }
    }
}

/// Checks a candidate against the full system at a prime not used to build it.
fn passes_fresh_prime(curve: &CurveSpec, w: &SyzygyWitness, gp: &GoodPrime) -> bool {
    let Some(grad) = GradientModP::new(curve, gp.p, gp.roots[0]) else { return true };
    let p = gp.p;
    let mut acc: BTreeMap<Monomial, u64> = BTreeMap::new();
    for (k, poly) in [&w.a, &w.b, &w.c].into_iter().enumerate() {
        let Some(terms) = poly.mod_terms(p, gp.roots[0]) else { return true };
        for (m, c) in terms {
            for (mm, cc) in &grad.terms[k] {
                let prod = [m[0] + mm[0], m[1] + mm[1], m[2] + mm[2]];
                let e = acc.entry(prod).or_insert(0);
                *e = (*e + c * cc % p) % p;
            }
        }
    }
    acc.values().all(|&v| v == 0)
}

/// Multi-prime reconstruction of a syzygy of degree `r` over the field.
pub fn reconstruct_witness(curve: &CurveSpec, r: u32) -> Result<(SyzygyWitness, Vec<u64>)> {
    let g = curve.field.degree();
    let n = monomials_of_degree(r as u16).len();
    let mut crt = CrtVector::new(3 * n * g);
    let mut rows: Option<Vec<usize>> = None;
    let mut reference: Option<Vec<usize>> = None;
    let mut used = Vec::new();
    let mut next_attempt = 1usize;
    let mut primes = GoodPrimes::starting_below(&curve.field, true, (1 << 28) - (1 << 20));
    let mut checker = GoodPrimes::starting_below(&curve.field, false, 1 << 27);
    let mut rejected = 0usize;
    while let Some(gp) = primes.next() {
        let Some(img) = kernel_at_prime(curve, r, &gp, &mut rows) else {
            rejected += 1;
            if rejected > 20 {
                return Err(Error::Reconstruction(format!("degree {r}: too many unlucky primes")));
            }
            continue;
        };
        match &reference {
            None => reference = Some(img.pivot_cols.clone()),
            Some(pc) if *pc != img.pivot_cols => {
                // a prime with a different pivot structure is unlucky, or the
                // first one was; restart if the new structure has larger rank
                if img.pivot_cols.len() > pc.len() {
                    reference = Some(img.pivot_cols.clone());
                    crt = CrtVector::new(3 * n * g);
                    used.clear();
                    next_attempt = 1;
                } else {
                    continue;
                }
            }
            _ => {}
        }
        crt.add(gp.p, &img.coeffs);
        used.push(gp.p);
        if used.len() < next_attempt {
            continue;
        }
        next_attempt = used.len() + (used.len() / 4).max(1);
        if let Some((nums, _den)) = crt.reconstruct() {
            let w = witness_from_integers(curve, r, &nums);
            let fresh = checker.next().ok_or_else(|| Error::NoGoodPrime("verification prime".into()))?;
            if passes_fresh_prime(curve, &w, &fresh) && w.verify(curve)? {
                return Ok((w, used));
            }
        }
        if used.len() > 20000 {
            break;
        }
    }
    Err(Error::Reconstruction(format!("no exact syzygy of degree {r} recovered")))
}

/// `Σ n_k·(k−1)²` over a multiplicity table.
pub fn tjurina_from_nk(nk: &BTreeMap<usize, usize>) -> u64 {
    nk.iter().map(|(&k, &c)| c as u64 * (k as u64 - 1).pow(2)).sum()
}

/// Total Tjurina number of a line arrangement's lattice.
pub fn tjurina_total(lattice: &crate::arrangement::LatticeSummary) -> u64 {
    tjurina_from_nk(&lattice.nk)
}

/// `(d−1)² − r(d−1−r)`, the largest total Tjurina number a reduced curve of
/// degree `d` with minimal syzygy degree `r ≤ (d−1)/2` can have.
pub fn tau_max(d: u32, r: u32) -> i64 {
    let (d, r) = (d as i64, r as i64);
    (d - 1) * (d - 1) - r * (d - 1 - r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Free { d1: u32, d2: u32 },
    NotFree { reason: String },
    Undetermined { reason: String },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Free { d1, d2 } => write!(f, "Free({d1},{d2})"),
            Verdict::NotFree { .. } => write!(f, "NotFree"),
            Verdict::Undetermined { .. } => write!(f, "Undetermined"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FreenessCertificate {
    pub d: u32,
    pub d1: Option<u32>,
    pub tau: u64,
    pub verdict: Verdict,
    pub witness: Option<SyzygyWitness>,
    pub primes_used: Vec<u64>,
    pub empty_degrees: BTreeMap<u32, [u64; 2]>,
    /// False when the minimal degree rests on modular evidence only.
    pub exact: bool,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    d: u32,
    d1: Option<u32>,
    d2: Option<u32>,
    tau: u64,
    verdict: &'a Verdict,
    witness_digest: Option<String>,
    primes_used: &'a [u64],
    exact: bool,
}

impl FreenessCertificate {
    pub fn d2(&self) -> Option<u32> {
        self.d1.map(|d1| self.d - 1 - d1)
    }

    pub fn witness_digest(&self) -> Option<String> {
        self.witness.as_ref().map(|w| w.digest())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson {
            d: self.d,
            d1: self.d1,
            d2: self.d2(),
            tau: self.tau,
            verdict: &self.verdict,
            witness_digest: self.witness_digest(),
            primes_used: &self.primes_used,
            exact: self.exact,
        })
        .expect("serializable")
    }
}

/// Decides freeness from the minimal syzygy degree and the total Tjurina
/// number: a curve with `mdr = r ≤ (d−1)/2` is free iff `τ = (d−1)² − r(d−1−r)`,
/// and a free curve always has `mdr ≤ (d−1)/2`.
pub fn freeness_certificate(curve: &CurveSpec, tau: u64, opts: MdrOptions) -> Result<FreenessCertificate> {
    freeness_certificate_bounded(curve, tau, (curve.d.saturating_sub(1)) / 2, opts)
}

pub fn freeness_certificate_bounded(
    curve: &CurveSpec,
    tau: u64,
    bound: u32,
    opts: MdrOptions,
) -> Result<FreenessCertificate> {
    let d = curve.d;
    let half = d.saturating_sub(1) / 2;
    let out = mdr(curve, bound.min(half), opts)?;
    let verdict = match out.r {
        None if out.bound >= half => Verdict::NotFree {
            reason: format!("no syzygy of degree <= {half}, so mdr > (d-1)/2"),
        },
        None => Verdict::Undetermined { reason: format!("no syzygy up to the bound {}", out.bound) },
        Some(r) => {
            let tm = tau_max(d, r);
            match (tau as i64).cmp(&tm) {
                std::cmp::Ordering::Equal => Verdict::Free { d1: r, d2: d - 1 - r },
                std::cmp::Ordering::Less => Verdict::NotFree {
                    reason: format!("tau = {tau} < (d-1)^2 - r(d-1-r) = {tm}"),
                },
                std::cmp::Ordering::Greater => Verdict::Undetermined {
                    reason: format!("tau = {tau} exceeds the bound {tm}; singularity data inconsistent"),
                },
            }
        }
    };
    Ok(FreenessCertificate {
        d,
        d1: out.r,
        tau,
        verdict,
        witness: out.witness,
        primes_used: out.primes_used,
        empty_degrees: out.empty,
        exact: out.exact,
    })
}
