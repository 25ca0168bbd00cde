//! Number fields `Q[t]/(p(t))` and their elements.
//!
//! Elements are stored as an integer coefficient vector over a single positive
//! common denominator, with the content of the numerators coprime to the
//! denominator. That representation is canonical, so structural equality and
//! hashing coincide with field equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A simple algebraic extension of Q given by a monic minimal polynomial.
#[derive(Debug)]
pub struct NumberField {
    label: String,
    gen_name: String,
    minpoly: Vec<BigRational>,
    // t^(g+k) mod minpoly for k = 0..g-1, as integer rows over `red_den`
    red_num: Vec<Vec<BigInt>>,
    red_den: BigInt,
}

impl NumberField {
    /// Builds a field from a monic minimal polynomial given constant-first.
    ///
    /// Irreducibility is not checked here; a reducible polynomial surfaces as
    /// `ReducibleMinpoly` the first time a zero divisor is inverted.
    pub fn new(label: &str, minpoly: Vec<BigRational>) -> Result<Arc<Self>> {
        let mut minpoly = minpoly;
        while minpoly.len() > 1 && minpoly.last().is_some_and(|c| c.is_zero()) {
            minpoly.pop();
        }
        if minpoly.len() < 2 {
            return Err(Error::Parse("minimal polynomial must have degree >= 1".into()));
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(Error::Parse("minimal polynomial must be monic".into()));
        }
        let g = minpoly.len() - 1;
        // powers t^g .. t^(2g-2) reduced, as rationals
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        let mut cur: Vec<BigRational> = minpoly[..g].iter().map(|c| -c).collect();
        for _ in 0..g.saturating_sub(1) {
            rows.push(cur.clone());
            // multiply by t
            let top = cur[g - 1].clone();
            let mut next = vec![BigRational::zero(); g];
            for i in (1..g).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..g {
                next[i] -= &top * &minpoly[i];
            }
            cur = next;
        }
        let mut den = BigInt::one();
        for row in &rows {
            for c in row {
                den = den.lcm(c.denom());
            }
        }
        let red_num = rows
            .iter()
            .map(|row| row.iter().map(|c| c.numer() * (&den / c.denom())).collect())
            .collect();
        let gen_name = label
            .strip_prefix("Q(")
            .and_then(|s| s.strip_suffix(')'))
            .filter(|s| !s.is_empty())
            .unwrap_or("t")
            .to_string();
        Ok(Arc::new(NumberField {
            label: label.to_string(),
            gen_name,
            minpoly,
            red_num,
            red_den: den,
        }))
    }

    fn from_ints(label: &str, coeffs: &[i64]) -> Arc<Self> {
        let mp = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        NumberField::new(label, mp).expect("built-in minimal polynomial")
    }

    pub fn rationals() -> Arc<Self> {
        Self::from_ints("Q", &[0, 1])
    }

    /// `Q(e)` with `e^2 + e + 1 = 0`.
    pub fn eisenstein() -> Arc<Self> {
        Self::from_ints("Q(e)", &[1, 1, 1])
    }

    /// `Q(sqrt n)`; the `n = 2` instance is labelled `Q(r)`.
    pub fn quadratic(n: i64) -> Arc<Self> {
        let label = if n == 2 { "Q(r)".to_string() } else { format!("Q(sqrt{n})") };
        Self::from_ints(&label, &[-n, 0, 1])
    }

    /// `Q(zeta_m)` via the m-th cyclotomic polynomial.
    pub fn cyclotomic(m: u32) -> Arc<Self> {
        let phi = cyclotomic_poly(m);
        Self::from_ints(&format!("Q(zeta{m})"), &phi)
    }

    /// Looks up one of the built-in fields by label.
    pub fn builtin(label: &str) -> Option<Arc<Self>> {
        match label {
            "Q" => Some(Self::rationals()),
            "Q(e)" => Some(Self::eisenstein()),
            "Q(r)" => Some(Self::quadratic(2)),
            "Q(sqrt3)" => Some(Self::quadratic(3)),
            "Q(sqrt5)" => Some(Self::quadratic(5)),
            "Q(zeta16)" => Some(Self::cyclotomic(16)),
            "Q(zeta20)" => Some(Self::cyclotomic(20)),
            "Q(zeta24)" => Some(Self::cyclotomic(24)),
            _ => None,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn gen_name(&self) -> &str {
        &self.gen_name
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigRational] {
        &self.minpoly
    }

    /// Two fields are the same when their minimal polynomials agree.
    pub fn same_as(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || self.minpoly == other.minpoly
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for NumberField {}

/// Integer coefficients of the m-th cyclotomic polynomial, constant-first.
pub fn cyclotomic_poly(m: u32) -> Vec<i64> {
    assert!(m >= 1);
    // t^m - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let phi = cyclotomic_poly(d);
            num = int_poly_div_exact(&num, &phi);
        }
    }
    num
}

fn int_poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = *b.last().unwrap();
    assert!(lead == 1 || lead == -1);
    let mut q = vec![0i64; r.len().saturating_sub(db)];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * lead;
        q[k] = c;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= c * bi;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// An element of a [`NumberField`], always in canonical form.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    fn canonical(field: Arc<NumberField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if num.iter().all(|c| c.is_zero()) {
                g = den.clone();
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den = &den / &g;
            }
        }
        FieldElement { field, num, den }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        FieldElement {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<NumberField>, v: i64) -> Self {
        Self::from_bigint(field, BigInt::from(v))
    }

    pub fn from_bigint(field: &Arc<NumberField>, v: BigInt) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = v;
        FieldElement { field: field.clone(), num, den: BigInt::one() }
    }

    pub fn from_rational(field: &Arc<NumberField>, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = q.numer().clone();
        Self::canonical(field.clone(), num, q.denom().clone())
    }

    pub fn from_frac(field: &Arc<NumberField>, n: i64, d: i64) -> Self {
        assert!(d != 0);
        Self::from_rational(field, &BigRational::new(n.into(), d.into()))
    }

    /// Element with the given coefficients in the power basis; longer inputs
    /// are reduced modulo the minimal polynomial.
    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: &[BigRational]) -> Self {
        let g = field.degree();
        let mut c: Vec<BigRational> = coeffs.to_vec();
        let mp = &field.minpoly;
        while c.len() > g {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - g;
            for i in 0..g {
                c[shift + i] -= &top * &mp[i];
            }
        }
        c.resize(g, BigRational::zero());
        let mut den = BigInt::one();
        for q in &c {
            den = den.lcm(q.denom());
        }
        let num = c.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Self::canonical(field.clone(), num, den)
    }

    /// The generator `t` of the field (for `Q` this is just 0 + 1·t reduced).
    pub fn generator(field: &Arc<NumberField>) -> Self {
        let one = BigRational::one();
        Self::from_coeffs(field, &[BigRational::zero(), one])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element lies in the prime field Q.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.label.clone(), other.field.label.clone()))
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.add_raw(other, false))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.add_raw(other, true))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.mul_raw(other))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.mul_raw(&other.inv()?))
    }

    fn add_raw(&self, other: &FieldElement, negate: bool) -> FieldElement {
        let field = self.field.clone();
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            return Self::canonical(field, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let l = a * &other.den;
                let r = b * &self.den;
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        Self::canonical(field, num, &self.den * &other.den)
    }

    fn mul_raw(&self, other: &FieldElement) -> FieldElement {
        let f = &self.field;
        let g = f.degree();
        if g == 1 {
            return Self::canonical(
                f.clone(),
                vec![&self.num[0] * &other.num[0]],
                &self.den * &other.den,
            );
        }
        let mut c = vec![BigInt::zero(); 2 * g - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        let scale = &f.red_den;
        let mut out: Vec<BigInt> = if scale.is_one() {
            c[..g].to_vec()
        } else {
            c[..g].iter().map(|v| v * scale).collect()
        };
        for k in g..2 * g - 1 {
            if c[k].is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&f.red_num[k - g]) {
                if !r.is_zero() {
                    *o += &c[k] * r;
                }
            }
        }
        let mut den = &self.den * &other.den;
        if !scale.is_one() {
            den *= scale;
        }
        Self::canonical(f.clone(), out, den)
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against the
    /// minimal polynomial.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = self.field.degree();
        if g == 1 {
            return Ok(Self::canonical(
                self.field.clone(),
                vec![self.den.clone()],
                self.num[0].clone(),
            ));
        }
        let a = upoly::trim(self.coeffs());
        let m = self.field.minpoly.clone();
        let (gcd, s) = upoly::ext_gcd(&a, &m);
        if gcd.len() > 1 {
            return Err(Error::ReducibleMinpoly {
                field: self.field.label.clone(),
                factor: upoly::display(&gcd, self.field.gen_name()),
            });
        }
        let g0 = gcd[0].clone();
        let s: Vec<BigRational> = s.iter().map(|c| c / &g0).collect();
        Ok(Self::from_coeffs(&self.field, &s))
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_raw(&base);
            }
        }
        acc
    }

    /// Applies the field endomorphism sending the generator to `image`.
    pub fn map_generator(&self, image: &FieldElement) -> Result<FieldElement> {
        self.check(image)?;
        let mut acc = FieldElement::zero(&self.field);
        for i in (0..self.num.len()).rev() {
            acc = acc.mul_raw(image);
            let c = FieldElement::from_rational(&self.field, &self.coeff(i));
            acc = acc.add_raw(&c, false);
        }
        Ok(acc)
    }

    /// Image under a reduction `Z_(p)[t]/(minpoly) -> F_p` sending `t` to `root`.
    /// `None` when `p` divides the denominator.
    pub fn reduce_mod(&self, p: u64, root: u64) -> Option<u64> {
        let d = bigint_mod(&self.den, p);
        if d == 0 {
            return None;
        }
        let mut acc = 0u64;
        for c in self.num.iter().rev() {
            acc = (acc as u128 * root as u128 % p as u128) as u64;
            acc = (acc + bigint_mod(c, p)) % p;
        }
        let dinv = crate::exact::modp::inv_mod(d, p)?;
        Some((acc as u128 * dinv as u128 % p as u128) as u64)
    }

    /// Lexicographic comparison of the rational coefficient vectors.
    pub fn cmp_lex(&self, other: &FieldElement) -> Ordering {
        for (a, b) in self.num.iter().zip(&other.num) {
            let l = a * &other.den;
            let r = b * &self.den;
            match l.cmp(&r) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.num.len().cmp(&other.num.len())
    }

    /// Square root inside the field, when one exists. Supported for fields of
    /// degree 1 and 2; `None` otherwise or when no root exists.
    pub fn sqrt(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let g = self.field.degree();
        let f = &self.field;
        match g {
            1 => rational_sqrt(&self.coeff(0)).map(|q| FieldElement::from_rational(f, &q)),
            2 => {
                // t^2 + a t + b; conjugation t -> -a - t
                let a = &f.minpoly[1];
                let conj_t = FieldElement::from_coeffs(f, &[-a.clone(), -BigRational::one()]);
                let conj = |x: &FieldElement| x.map_generator(&conj_t).expect("same field");
                let norm = self.mul_raw(&conj(self));
                let trace = self.add_raw(&conj(self), false);
                let n_abs = rational_sqrt(&norm.coeff(0))?;
                for n in [n_abs.clone(), -n_abs] {
                    let t2 = trace.coeff(0) + BigRational::from_integer(2.into()) * &n;
                    if let Some(t) = rational_sqrt(&t2) {
                        if t.is_zero() {
                            continue;
                        }
                        let nfe = FieldElement::from_rational(f, &n);
                        let tfe = FieldElement::from_rational(f, &t);
                        let x = self.add_raw(&nfe, false).mul_raw(&tfe.inv().ok()?);
                        if x.mul_raw(&x) == *self {
                            return Some(x);
                        }
                    }
                }
                // trace-zero roots: x = c * w with w = 2t + a, w^2 rational
                let w = FieldElement::from_coeffs(f, &[a.clone(), BigRational::from_integer(2.into())]);
                let w2 = w.mul_raw(&w);
                let ratio = self.mul_raw(&w2.inv().ok()?);
                if ratio.is_rational() {
                    if let Some(c) = rational_sqrt(&ratio.coeff(0)) {
                        let x = w.mul_raw(&FieldElement::from_rational(f, &c));
                        if x.mul_raw(&x) == *self {
                            return Some(x);
                        }
                    }
                }
                None
            }
            _ => None,
        }
    }

    /// Per-coefficient reduced fractions, used by the JSON format.
    pub fn to_pairs(&self) -> Vec<(BigInt, BigInt)> {
        (0..self.num.len())
            .map(|i| {
                let q = self.coeff(i);
                (q.numer().clone(), q.denom().clone())
            })
            .collect()
    }

    pub fn from_pairs(field: &Arc<NumberField>, pairs: &[(BigInt, BigInt)]) -> Result<Self> {
        if pairs.len() != field.degree() {
            return Err(Error::Parse(format!(
                "field element has {} coefficients, field {} has degree {}",
                pairs.len(),
                field.label,
                field.degree()
            )));
        }
        let mut qs = Vec::with_capacity(pairs.len());
        for (n, d) in pairs {
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            qs.push(BigRational::new(n.clone(), d.clone()));
        }
        Ok(Self::from_coeffs(field, &qs))
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

pub(crate) fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    u64::try_from(r).expect("residue fits")
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.den == other.den && self.num == other.num
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_lex(other)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", upoly::display(&self.coeffs(), self.field.gen_name()))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $raw:expr) => {
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            /// Panics when the operands live in different fields; use the
            /// `try_*` methods for a fallible version.
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                self.check(rhs).expect("field mismatch");
                $raw(self, rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &FieldElement, b: &FieldElement| a.add_raw(b, false));
binop!(Sub, sub, |a: &FieldElement, b: &FieldElement| a.add_raw(b, true));
binop!(Mul, mul, |a: &FieldElement, b: &FieldElement| a.mul_raw(b));

impl<'a> std::ops::AddAssign<&'a FieldElement> for FieldElement {
    /// In-place addition; integral operands over the same field avoid the
    /// gcd pass entirely.
    fn add_assign(&mut self, rhs: &'a FieldElement) {
        self.check(rhs).expect("field mismatch");
        if self.den.is_one() && rhs.den.is_one() {
            for (a, b) in self.num.iter_mut().zip(&rhs.num) {
                *a += b;
            }
        } else {
            *self = self.add_raw(rhs, false);
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}

/// Dense univariate polynomials over Q, constant-first. Only what the field
/// code and the Alexander bookkeeping need.
pub mod upoly {
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};

    pub fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        if p.is_empty() {
            p.push(BigRational::zero());
        }
        p
    }

    pub fn is_zero(p: &[BigRational]) -> bool {
        p.iter().all(|c| c.is_zero())
    }

    pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let b = trim(b.to_vec());
        assert!(!is_zero(&b), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        if r.len() - 1 < db || is_zero(&r) {
            return (vec![BigRational::zero()], r);
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        let lead = b[db].clone();
        while r.len() > db && !is_zero(&r) {
            let k = r.len() - 1 - db;
            let c = r.last().unwrap() / &lead;
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &c * bi;
            }
            q[k] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), trim(r))
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            out[i] -= x;
        }
        trim(out)
    }

    /// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g = gcd(a, m)`.
    pub fn ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r0 = trim(m.to_vec());
        let mut r1 = trim(a.to_vec());
        let mut s0 = vec![BigRational::zero()];
        let mut s1 = vec![BigRational::one()];
        while !is_zero(&r1) {
            let (q, r) = div_rem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        (r0, s0)
    }

    pub fn display(p: &[BigRational], var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in p.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let body = match i {
                0 => a.to_string(),
                _ => {
                    let v = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if a.is_one() {
                        v
                    } else {
                        format!("{a}*{v}")
                    }
                }
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {}", if neg { "-" } else { "+" }, body));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e_field() -> Arc<NumberField> {
        NumberField::eisenstein()
    }

    #[test]
    fn eisenstein_products() {
        let f = e_field();
        let e = FieldElement::generator(&f);
        let e2 = &e * &e;
        let minus_e_minus_1 = -(&e + &FieldElement::one(&f));
        assert_eq!(e2, minus_e_minus_1);
        assert!((&e * &minus_e_minus_1).is_one());
    }

    #[test]
    fn sqrt2_product_and_inverse() {
        let f = NumberField::quadratic(2);
        let r = FieldElement::generator(&f);
        let one = FieldElement::one(&f);
        assert!((&(&one + &r) * &(&r - &one)).is_one());
        assert_eq!((&one + &r).inv().unwrap(), &r - &one);
    }

    #[test]
    fn inverses_in_q_and_qe() {
        let q = NumberField::rationals();
        assert_eq!(FieldElement::from_frac(&q, 2, 3).inv().unwrap(), FieldElement::from_frac(&q, 3, 2));
        let f = e_field();
        let e = FieldElement::generator(&f);
        assert_eq!(e.inv().unwrap(), -(&e + &FieldElement::one(&f)));
        assert_eq!(FieldElement::zero(&f).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn reducible_minpoly_detected_on_inversion() {
        // t^2 - 1 = (t - 1)(t + 1)
        let f = NumberField::new(
            "Q(u)",
            vec![BigRational::from_integer((-1).into()), BigRational::zero(), BigRational::one()],
        )
        .unwrap();
        let u = FieldElement::generator(&f);
        let z = &u - &FieldElement::one(&f);
        assert!(matches!(z.inv(), Err(Error::ReducibleMinpoly { .. })));
    }

    #[test]
    fn field_mismatch() {
        let a = FieldElement::one(&e_field());
        let b = FieldElement::one(&NumberField::quadratic(2));
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(16), vec![1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(20), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(24), vec![1, 0, 0, 0, -1, 0, 0, 0, 1]);
        let f = NumberField::cyclotomic(20);
        let z = FieldElement::generator(&f);
        assert!(z.pow(20).is_one());
        assert!(!z.pow(10).is_one());
    }

    #[test]
    fn sqrt_in_quadratic_fields() {
        let f = e_field();
        let e = FieldElement::generator(&f);
        // -3 = (2e + 1)^2
        let m3 = FieldElement::from_int(&f, -3);
        let s = m3.sqrt().unwrap();
        assert_eq!(&s * &s, m3);
        let x = &(&e * &FieldElement::from_int(&f, 3)) + &FieldElement::from_frac(&f, 1, 2);
        let sq = &x * &x;
        let r = sq.sqrt().unwrap();
        assert!(r == x || r == -x.clone());
        assert!(FieldElement::from_int(&f, 2).sqrt().is_none());
        let q = NumberField::quadratic(2);
        let two = FieldElement::from_int(&q, 2);
        assert_eq!(two.sqrt().map(|s| &s * &s), Some(two));
    }

    #[test]
    fn reduction_mod_p_is_a_homomorphism() {
        let f = e_field();
        // p = 7: roots of t^2 + t + 1 are 2 and 4
        let e = FieldElement::generator(&f);
        for root in [2u64, 4] {
            assert_eq!(e.reduce_mod(7, root), Some(root));
            let e2 = &e * &e;
            assert_eq!(e2.reduce_mod(7, root), Some(root * root % 7));
        }
        assert_eq!(FieldElement::from_frac(&f, 1, 7).reduce_mod(7, 2), None);
    }

    #[test]
    fn automorphism_of_q_e() {
        let f = e_field();
        let e = FieldElement::generator(&f);
        let e2 = &e * &e;
        assert_eq!(e.map_generator(&e2).unwrap(), e2);
        assert_eq!(e2.map_generator(&e2).unwrap(), e);
    }
}
