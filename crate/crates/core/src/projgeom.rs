//! Points and lines of the projective plane over a number field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::linalg::cross;
use crate::exact::{FieldElement, NumberField};

fn normalize(mut c: [FieldElement; 3]) -> Result<[FieldElement; 3]> {
    let field = c[0].field().clone();
    for v in &c[1..] {
        if !v.field().same_as(&field) {
            return Err(Error::FieldMismatch(field.label().into(), v.field().label().into()));
        }
    }
    let lead = c.iter().find(|v| !v.is_zero()).ok_or(Error::ZeroTriple)?;
    if !lead.is_one() {
        let inv = lead.inv()?;
        for v in c.iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
    }
    Ok(c)
}

fn fmt_triple(c: &[FieldElement; 3], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "({}:{}:{})", c[0], c[1], c[2])
}

/// A point `(a:b:c)` whose first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

/// A line `ax + by + cz = 0` whose first nonzero coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    coeffs: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self> {
        Ok(ProjPoint { coords: normalize(coords)? })
    }

    pub fn from_ints(field: &Arc<NumberField>, c: [i64; 3]) -> Result<Self> {
        ProjPoint::new(c.map(|v| FieldElement::from_int(field, v)))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.coords[0].field()
    }

    pub fn dual(&self) -> ProjLine {
        ProjLine { coeffs: self.coords.clone() }
    }

    /// The line through two distinct points.
    pub fn join(&self, other: &ProjPoint) -> Result<ProjLine> {
        match ProjLine::new(cross(&self.coords, &other.coords)) {
            Err(Error::ZeroTriple) => Err(Error::ProportionalInputs),
            r => r,
        }
    }

    /// Applies a field automorphism given by the image of the generator.
    pub fn conjugate(&self, image: &FieldElement) -> Result<ProjPoint> {
        let c = [
            self.coords[0].map_generator(image)?,
            self.coords[1].map_generator(image)?,
            self.coords[2].map_generator(image)?,
        ];
        ProjPoint::new(c)
    }
}

impl ProjLine {
    pub fn new(coeffs: [FieldElement; 3]) -> Result<Self> {
        Ok(ProjLine { coeffs: normalize(coeffs)? })
    }

    pub fn from_ints(field: &Arc<NumberField>, c: [i64; 3]) -> Result<Self> {
        ProjLine::new(c.map(|v| FieldElement::from_int(field, v)))
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.coeffs[0].field()
    }

    pub fn dual(&self) -> ProjPoint {
        ProjPoint { coords: self.coeffs.clone() }
    }

    /// The intersection point of two distinct lines.
    pub fn meet(&self, other: &ProjLine) -> Result<ProjPoint> {
        match ProjPoint::new(cross(&self.coeffs, &other.coeffs)) {
            Err(Error::ZeroTriple) => Err(Error::ProportionalInputs),
            r => r,
        }
    }

    /// `a·x + b·y + c·z` at the given coordinates.
    pub fn eval(&self, c: &[FieldElement; 3]) -> Result<FieldElement> {
        let mut acc = self.coeffs[0].try_mul(&c[0])?;
        acc = acc.try_add(&self.coeffs[1].try_mul(&c[1])?)?;
        acc.try_add(&self.coeffs[2].try_mul(&c[2])?)
    }

    pub fn conjugate(&self, image: &FieldElement) -> Result<ProjLine> {
        Ok(self.dual().conjugate(image)?.dual())
    }

    /// Two points spanning the line, used to parametrize it as `s·P + t·Q`.
    pub fn spanning_points(&self) -> [[FieldElement; 3]; 2] {
        let f = self.field();
        let [a, b, c] = &self.coeffs;
        let z = FieldElement::zero(f);
        // a is 1 whenever it is nonzero
        if !a.is_zero() {
            [[b.neg(), FieldElement::one(f), z.clone()], [c.neg(), z, FieldElement::one(f)]]
        } else if !b.is_zero() {
            [[FieldElement::one(f), z.clone(), z.clone()], [z, c.neg(), FieldElement::one(f)]]
        } else {
            [[FieldElement::one(f), z.clone(), z.clone()], [z.clone(), FieldElement::one(f), z]]
        }
    }
}

pub fn incident(p: &ProjPoint, l: &ProjLine) -> Result<bool> {
    Ok(l.eval(&p.coords)?.is_zero())
}

/// Duality on either kind of object.
pub trait Dualize {
    type Output;
    fn dualize(&self) -> Self::Output;
}

impl Dualize for ProjPoint {
    type Output = ProjLine;
    fn dualize(&self) -> ProjLine {
        self.dual()
    }
}

impl Dualize for ProjLine {
    type Output = ProjPoint;
    fn dualize(&self) -> ProjPoint {
        self.dual()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.coords, f)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.coords, f)
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, v) in self.coeffs.iter().zip(["x", "y", "z"]) {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = s.trim_start_matches('-').contains([' ', '+', '-']);
            let (neg, body) = if !compound && s.starts_with('-') {
                (true, s[1..].to_string())
            } else if compound {
                (false, format!("({s})"))
            } else {
                (false, s)
            };
            let term = if body == "1" { v.to_string() } else { format!("{body}{v}") };
            match (first, neg) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        write!(f, " = 0")
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}
