//! Sparse polynomials in `x, y, z` over a number field.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::field::{FieldElement, NumberField};
use crate::error::{Error, Result};

/// Exponents of `x`, `y`, `z`.
pub type Monomial = [u16; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z"][self as usize]
    }
}

pub fn monomial_degree(m: &Monomial) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// Position of a degree-`d` monomial in the ordering `x^d, x^(d-1) y, x^(d-1) z, ...`.
pub fn monomial_index(m: &Monomial) -> usize {
    let a = (m[1] + m[2]) as usize;
    a * (a + 1) / 2 + m[2] as usize
}

/// All monomials of degree `d`, in [`monomial_index`] order.
pub fn monomials_of_degree(d: u16) -> Vec<Monomial> {
    let mut out = Vec::with_capacity((d as usize + 1) * (d as usize + 2) / 2);
    for a in 0..=d {
        for k in 0..=a {
            out.push([d - a, a - k, k]);
        }
    }
    out
}

/// A polynomial in `x, y, z` with coefficients in a number field. No zero
/// coefficient is ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Arc<NumberField>,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        MultiPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        let mut p = MultiPoly::zero(c.field());
        if !c.is_zero() {
            p.terms.insert([0, 0, 0], c);
        }
        p
    }

    pub fn var(field: &Arc<NumberField>, v: Var) -> Self {
        let mut m = [0u16; 3];
        m[v.index()] = 1;
        MultiPoly::monomial(FieldElement::one(field), m)
    }

    pub fn monomial(c: FieldElement, m: Monomial) -> Self {
        let mut p = MultiPoly::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `a x + b y + c z`.
    pub fn linear(coeffs: &[FieldElement; 3]) -> Self {
        let field = coeffs[0].field().clone();
        let terms = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .into_iter()
            .zip(coeffs.iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MultiPoly { field, terms }
    }

    /// Quadratic form with coefficients of `x², xy, xz, y², yz, z²`.
    pub fn conic(coeffs: &[FieldElement; 6]) -> Self {
        let field = coeffs[0].field().clone();
        let mons: [Monomial; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
        let terms = mons
            .into_iter()
            .zip(coeffs.iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MultiPoly { field, terms }
    }

    pub fn from_terms(
        field: &Arc<NumberField>,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m, c) in terms {
            if !c.field().same_as(field) {
                return Err(Error::FieldMismatch(field.label().into(), c.field().label().into()));
            }
            match map.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultiPoly { field: field.clone(), terms: map })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, FieldElement> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(monomial_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m[v.index()] as u32).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(monomial_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check(&self, other: &MultiPoly) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.label().into(), other.field.label().into()))
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => *v += c,
                None => {
                    terms.insert(*m, c.clone());
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(MultiPoly { field: self.field.clone(), terms })
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(&self.field);
        }
        MultiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut acc: HashMap<Monomial, FieldElement> =
            HashMap::with_capacity(self.terms.len() * other.terms.len().min(64));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                let prod = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += &prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MultiPoly { field: self.field.clone(), terms })
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(FieldElement::one(&self.field));
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same field");
        }
        acc
    }

    pub fn partial(&self, v: Var) -> MultiPoly {
        let i = v.index();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[i] > 0)
            .map(|(m, c)| {
                let mut m2 = *m;
                m2[i] -= 1;
                (m2, c * &FieldElement::from_int(&self.field, m[i] as i64))
            })
            .collect();
        MultiPoly { field: self.field.clone(), terms }
    }

    pub fn gradient(&self) -> [MultiPoly; 3] {
        [self.partial(Var::X), self.partial(Var::Y), self.partial(Var::Z)]
    }

    pub fn eval(&self, point: &[FieldElement; 3]) -> Result<FieldElement> {
        for c in point {
            if !c.field().same_as(&self.field) {
                return Err(Error::FieldMismatch(self.field.label().into(), c.field().label().into()));
            }
        }
        let maxd = self.degree() as usize;
        let powers: Vec<Vec<FieldElement>> = point
            .iter()
            .map(|c| {
                let mut v = vec![FieldElement::one(&self.field)];
                for k in 1..=maxd {
                    let next = &v[k - 1] * c;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = FieldElement::zero(&self.field);
        for (m, c) in &self.terms {
            let t = &(&(c * &powers[0][m[0] as usize]) * &powers[1][m[1] as usize])
                * &powers[2][m[2] as usize];
            acc += &t;
        }
        Ok(acc)
    }

    /// Reinterprets a polynomial with rational coefficients over another field.
    pub fn lift_rational(&self, target: &Arc<NumberField>) -> Result<MultiPoly> {
        if self.field.same_as(target) {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if !c.is_rational() {
                return Err(Error::FieldMismatch(self.field.label().into(), target.label().into()));
            }
            terms.insert(*m, FieldElement::from_rational(target, &c.coeff(0)));
        }
        Ok(MultiPoly { field: target.clone(), terms })
    }

    /// Leading monomial for the lexicographic order `x > y > z`.
    pub fn leading(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Quotient `self / g`, failing unless the division is exact.
    pub fn exact_divide(&self, g: &MultiPoly) -> Result<MultiPoly> {
        self.check(g)?;
        let (lm, lc) = g.leading().ok_or(Error::DivisionByZero)?;
        let (lm, lc_inv) = (*lm, lc.inv()?);
        let mut rem = self.clone();
        let mut quot: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading() {
            if rm.iter().zip(&lm).any(|(a, b)| a < b) {
                return Err(Error::InexactDivision);
            }
            let qm = [rm[0] - lm[0], rm[1] - lm[1], rm[2] - lm[2]];
            let qc = rc * &lc_inv;
            let t = MultiPoly::monomial(qc.clone(), qm);
            rem = rem.try_sub(&t.try_mul(g)?)?;
            quot.insert(qm, qc);
        }
        Ok(MultiPoly { field: self.field.clone(), terms: quot })
    }

    /// Substitutes polynomials for `x, y, z`.
    pub fn substitute(&self, images: &[MultiPoly; 3]) -> Result<MultiPoly> {
        for im in images {
            self.check(im)?;
        }
        let maxd = self.degree() as usize;
        let powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|im| {
                let mut v = vec![MultiPoly::constant(FieldElement::one(&self.field))];
                for k in 1..=maxd {
                    let next = v[k - 1].try_mul(im).expect("same field");
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = MultiPoly::zero(&self.field);
        for (m, c) in &self.terms {
            let t = powers[0][m[0] as usize]
                .try_mul(&powers[1][m[1] as usize])?
                .try_mul(&powers[2][m[2] as usize])?
                .scale(c);
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Coefficients of the powers of `v`, lowest first, as polynomials in the
    /// other two variables.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let i = v.index();
        let d = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(&self.field); d + 1];
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let k = m2[i] as usize;
            m2[i] = 0;
            out[k].terms.insert(m2, c.clone());
        }
        out
    }

    /// Sylvester resultant with respect to `v`.
    pub fn resultant(&self, other: &MultiPoly, v: Var) -> Result<MultiPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(&self.field));
        }
        let a = self.coefficients_in(v);
        let b = other.coefficients_in(v);
        let (m, n) = (a.len() - 1, b.len() - 1);
        if m == 0 {
            return Ok(a[0].pow(n as u32));
        }
        if n == 0 {
            return Ok(b[0].pow(m as u32));
        }
        let size = m + n;
        let zero = MultiPoly::zero(&self.field);
        let mut mat = vec![vec![zero.clone(); size]; size];
        for r in 0..n {
            for k in 0..=m {
                mat[r][r + k] = a[m - k].clone();
            }
        }
        for r in 0..m {
            for k in 0..=n {
                mat[n + r][r + k] = b[n - k].clone();
            }
        }
        bareiss_det(mat)
    }

    /// Images of all coefficients under a reduction to F_p, or `None` when a
    /// denominator vanishes mod p.
    pub fn mod_terms(&self, p: u64, root: u64) -> Option<Vec<(Monomial, u64)>> {
        self.terms.iter().map(|(m, c)| c.reduce_mod(p, root).map(|v| (*m, v))).collect()
    }

    /// Multiplies through by the least common denominator so that every
    /// coefficient has integral power-basis coordinates.
    pub fn clear_denominators(&self) -> MultiPoly {
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denominator());
        }
        if l.is_one() {
            return self.clone();
        }
        self.scale(&FieldElement::from_bigint(&self.field, l))
    }

    /// Scales so that the leading coefficient (lex order) is 1.
    pub fn monic(&self) -> Result<MultiPoly> {
        match self.leading() {
            None => Ok(self.clone()),
            Some((_, c)) => Ok(self.scale(&c.inv()?)),
        }
    }

    /// True when `self = λ·other` for some nonzero field element λ.
    pub fn is_proportional(&self, other: &MultiPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        match (self.monic(), other.monic()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// The ratio `self / other` when the two are proportional.
    pub fn ratio_to(&self, other: &MultiPoly) -> Option<FieldElement> {
        let (m, c) = other.leading()?;
        let s = self.terms.get(m)?.try_div(c).ok()?;
        if other.scale(&s) == *self {
            Some(s)
        } else {
            None
        }
    }
}

fn bareiss_det(mut mat: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = mat.len();
    let field = mat[0][0].field().clone();
    let mut sign = false;
    let mut prev = MultiPoly::constant(FieldElement::one(&field));
    for k in 0..n.saturating_sub(1) {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(MultiPoly::zero(&field)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = mat[k][k].try_mul(&mat[i][j])?.try_sub(&mat[i][k].try_mul(&mat[k][j])?)?;
                mat[i][j] = t.exact_divide(&prev)?;
            }
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = Var::ALL
                .iter()
                .filter(|v| m[v.index()] > 0)
                .map(|v| match m[v.index()] {
                    1 => v.name().to_string(),
                    e => format!("{}^{}", v.name(), e),
                })
                .collect();
            let cs = c.to_string();
            let simple = !cs.trim_start_matches('-').contains([' ', '+']);
            let (neg, body) = if simple && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else if simple {
                (false, cs)
            } else {
                (false, format!("({cs})"))
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono.join("*")
            } else {
                format!("{}*{}", body, mono.join("*"))
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, term)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, term)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
