//! Quadratic extensions `L = K(s)`, `s² = δ`, presented as simple number
//! fields `Q(w)` with `w = s + c·t`, where `t` generates `K`.

use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::linalg::Matrix;
use crate::exact::{FieldElement, MultiPoly, NumberField};

/// Element `u + v·s` of `L`, kept relative to the base field.
type Pair = (FieldElement, FieldElement);

#[derive(Debug, Clone)]
pub struct QuadraticExtension {
    pub base: Arc<NumberField>,
    pub field: Arc<NumberField>,
    pub delta: FieldElement,
    /// `w = s + shift·t`.
    pub shift: i64,
    /// Images of `t` and `s` in `L`.
    gen_image: FieldElement,
    root: FieldElement,
    /// `w^k` for `k < [L:Q]` as pairs.
    powers: Vec<Pair>,
}

fn pair_mul(a: &Pair, b: &Pair, delta: &FieldElement) -> Pair {
    (&(&a.0 * &b.0) + &(&(&a.1 * &b.1) * delta), &(&a.0 * &b.1) + &(&a.1 * &b.0))
}

fn pair_coords(p: &Pair, n: usize) -> Vec<BigRational> {
    (0..n).map(|i| p.0.coeff(i)).chain((0..n).map(|i| p.1.coeff(i))).collect()
}

impl QuadraticExtension {
    /// Adjoins a square root of `delta`, which must not be a square in `K`
    /// (checked only when `K` has a native square root).
    pub fn adjoin_sqrt(delta: &FieldElement) -> Result<Self> {
        let base = delta.field().clone();
        if delta.is_zero() || (base.degree() <= 2 && delta.sqrt().is_some()) {
            return Err(Error::Parse(format!("{delta} is already a square")));
        }
        let n = base.degree();
        let q = NumberField::rationals();
        let t = FieldElement::generator(&base);
        let zero = FieldElement::zero(&base);
        let one = FieldElement::one(&base);
        for shift in [0i64, 1, -1, 2, -2, 3, -3] {
            let w: Pair = (&t * &FieldElement::from_int(&base, shift), one.clone());
            let mut powers = vec![(one.clone(), zero.clone())];
            for _ in 0..2 * n {
                let next = pair_mul(powers.last().unwrap(), &w, delta);
                powers.push(next);
            }
            // columns w^0 .. w^(2n); a one-dimensional kernel is the minimal polynomial
            let cols: Vec<Vec<BigRational>> = powers.iter().map(|p| pair_coords(p, n)).collect();
            let kernel = Matrix::from_rows(&q, transpose(&q, &cols)).kernel()?;
            if kernel.len() != 1 || kernel[0][2 * n].is_zero() {
                continue;
            }
            let lead = kernel[0][2 * n].inv()?;
            let minpoly: Vec<BigRational> = kernel[0].iter().map(|c| (c * &lead).coeff(0)).collect();
            let field = NumberField::new("Q(w)", minpoly)?;
            powers.truncate(2 * n);
            let solve = |target: &Pair| -> Result<FieldElement> {
                let mut cols: Vec<Vec<BigRational>> = powers.iter().map(|p| pair_coords(p, n)).collect();
                cols.push(pair_coords(target, n));
                let k = Matrix::from_rows(&q, transpose(&q, &cols)).kernel()?;
                let v = &k[0];
                let scale = v[2 * n].neg().inv()?;
                let coeffs: Vec<BigRational> = v[..2 * n].iter().map(|c| (c * &scale).coeff(0)).collect();
                Ok(FieldElement::from_coeffs(&field, &coeffs))
            };
            let gen_image = solve(&(t.clone(), zero.clone()))?;
            let root = solve(&(zero.clone(), one.clone()))?;
            return Ok(QuadraticExtension { base, field, delta: delta.clone(), shift, gen_image, root, powers });
        }
        Err(Error::Reconstruction("no primitive element found for the quadratic extension".into()))
    }

    pub fn embed(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for i in (0..self.base.degree()).rev() {
            acc = &acc * &self.gen_image;
            acc += &FieldElement::from_rational(&self.field, &x.coeff(i));
        }
        acc
    }

    pub fn embed_poly(&self, p: &MultiPoly) -> MultiPoly {
        MultiPoly::from_terms(&self.field, p.terms().iter().map(|(m, c)| (*m, self.embed(c))))
            .expect("embedded terms share a field")
    }

    /// `s`, the adjoined square root, inside `L`.
    pub fn root(&self) -> &FieldElement {
        &self.root
    }

    /// Writes `y = u + v·s` with `u, v ∈ K`.
    pub fn split(&self, y: &FieldElement) -> Pair {
        let mut acc = (FieldElement::zero(&self.base), FieldElement::zero(&self.base));
        for (k, p) in self.powers.iter().enumerate() {
            let c = FieldElement::from_rational(&self.base, &y.coeff(k));
            acc = (&acc.0 + &(&p.0 * &c), &acc.1 + &(&p.1 * &c));
        }
        acc
    }

    fn join(&self, u: &FieldElement, v: &FieldElement) -> FieldElement {
        &self.embed(u) + &(&self.embed(v) * &self.root)
    }

    /// Square root in `L` through the tower, using square roots in `K`.
    pub fn sqrt(&self, y: &FieldElement) -> Option<FieldElement> {
        if y.is_zero() {
            return Some(y.clone());
        }
        let (a, b) = self.split(y);
        let check = |x: FieldElement| if &(&x * &x) == y { Some(x) } else { None };
        if b.is_zero() {
            if let Some(u) = a.sqrt() {
                return check(self.embed(&u));
            }
            let v = a.try_div(&self.delta).ok()?.sqrt()?;
            return check(&self.embed(&v) * &self.root);
        }
        // (u + v s)² = a + b s  ⇒  δ v⁴ − a v² + b²/4 = 0
        let disc = &(&a * &a) - &(&self.delta * &(&b * &b));
        let r = disc.sqrt()?;
        let two_delta = &self.delta * &FieldElement::from_int(&self.base, 2);
        for v2 in [&a + &r, &a - &r] {
            let Some(v) = v2.try_div(&two_delta).ok().and_then(|x| x.sqrt()) else { continue };
            if v.is_zero() {
                continue;
            }
            let u = b.try_div(&(&v * &FieldElement::from_int(&self.base, 2))).ok()?;
            if let Some(x) = check(self.join(&u, &v)) {
                return Some(x);
            }
        }
        None
    }

    pub fn describe(&self) -> String {
        let t = self.base.gen_name();
        let s = match self.shift {
            0 => "w".to_string(),
            1 => format!("w - {t}"),
            -1 => format!("w + {t}"),
            k => format!("w - {k}*{t}"),
        };
        format!("{}(s), s^2 = {}, s = {s}, {} = 0", self.base.label(), self.delta, minpoly_text(&self.field))
    }
}

fn minpoly_text(f: &NumberField) -> String {
    crate::exact::field::upoly::display(f.minpoly(), "w")
}

fn transpose(q: &Arc<NumberField>, cols: &[Vec<BigRational>]) -> Vec<Vec<FieldElement>> {
    let rows = cols[0].len();
    (0..rows).map(|i| cols.iter().map(|c| FieldElement::from_rational(q, &c[i])).collect()).collect()
}
