//! Pencils of cubics through nine points, their degenerate (line + conic)
//! members, the resulting conic-line arrangement, and rational maps.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::extension::QuadraticExtension;
use crate::exact::linalg::{det3, Matrix};
use crate::exact::poly::monomials_of_degree;
use crate::exact::{FieldElement, MultiPoly, NumberField, Var};
use crate::freeness::{defining_poly, CurveSpec};
use crate::projgeom::{ProjLine, ProjPoint};

/// Two cubics spanning the pencil through `base_points`.
#[derive(Debug, Clone)]
pub struct CubicPencil {
    pub field: Arc<NumberField>,
    pub basis: [MultiPoly; 2],
    pub base_points: Vec<ProjPoint>,
}

impl CubicPencil {
    pub fn member(&self, lambda: &FieldElement, mu: &FieldElement) -> MultiPoly {
        self.basis[0].scale(lambda).try_add(&self.basis[1].scale(mu)).expect("same field")
    }
}

fn eval_monomial(m: &[u16; 3], c: &[FieldElement; 3]) -> FieldElement {
    let mut acc = FieldElement::one(c[0].field());
    for k in 0..3 {
        if m[k] > 0 {
            acc = &acc * &c[k].pow(m[k] as u32);
        }
    }
    acc
}

fn evaluation_kernel(field: &Arc<NumberField>, points: &[ProjPoint]) -> Result<Vec<Vec<FieldElement>>> {
    let mons = monomials_of_degree(3);
    let rows = points.iter().map(|p| mons.iter().map(|m| eval_monomial(m, p.coords())).collect()).collect();
    Matrix::from_rows(field, rows).kernel()
}

/// Dimension of the space of cubic forms vanishing at the points.
pub fn cubic_kernel_dim(points: &[ProjPoint]) -> Result<usize> {
    let field = points.first().map(|p| p.field().clone()).ok_or(Error::NotAPencil(10))?;
    Ok(evaluation_kernel(&field, points)?.len())
}

/// Kernel of the evaluation map on cubic monomials at the given points.
pub fn cubics_through(points: &[ProjPoint]) -> Result<CubicPencil> {
    let field = points.first().map(|p| p.field().clone()).ok_or(Error::NotAPencil(10))?;
    let distinct: BTreeSet<&ProjPoint> = points.iter().collect();
    if distinct.len() != points.len() {
        return Err(Error::Parse("base points must be distinct".into()));
    }
    let mons = monomials_of_degree(3);
    let kernel = evaluation_kernel(&field, points)?;
    if kernel.len() != 2 {
        return Err(Error::NotAPencil(kernel.len()));
    }
    let to_poly = |v: &Vec<FieldElement>| {
        MultiPoly::from_terms(&field, mons.iter().copied().zip(v.iter().cloned())).map(|p| p.clear_denominators())
    };
    let basis = [to_poly(&kernel[0])?, to_poly(&kernel[1])?];
    Ok(CubicPencil { field, basis, base_points: points.to_vec() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factorization {
    Irreducible,
    /// `cubic = line · conic` exactly.
    Degenerate { line: ProjLine, conic: MultiPoly, conic_reducible: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilMember {
    /// `(λ : μ)` normalized so that the first nonzero entry is 1.
    pub params: (FieldElement, FieldElement),
    pub cubic: MultiPoly,
    pub factorization: Factorization,
}

impl PencilMember {
    pub fn line(&self) -> Option<&ProjLine> {
        match &self.factorization {
            Factorization::Degenerate { line, .. } => Some(line),
            Factorization::Irreducible => None,
        }
    }

    pub fn conic(&self) -> Option<&MultiPoly> {
        match &self.factorization {
            Factorization::Degenerate { conic, .. } => Some(conic),
            Factorization::Irreducible => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DegenerateReport {
    pub members: Vec<PencilMember>,
    /// Lines dividing every member of the pencil.
    pub shared_lines: Vec<ProjLine>,
    pub warnings: Vec<String>,
}

/// Substitutes `s·P + t·Q` into a form; returns the coefficients of
/// `s^n, s^(n−1) t, …, t^n`.
pub fn restrict_to_segment(form: &MultiPoly, p: &[FieldElement; 3], q: &[FieldElement; 3]) -> Result<Vec<FieldElement>> {
    let field = form.field();
    let s = MultiPoly::var(field, Var::X);
    let t = MultiPoly::var(field, Var::Y);
    let images: [MultiPoly; 3] =
        std::array::from_fn(|k| s.scale(&p[k]).try_add(&t.scale(&q[k])).expect("same field"));
    let sub = form.substitute(&images)?;
    let n = form.degree() as u16;
    Ok((0..=n).map(|k| sub.coeff(&[n - k, k, 0])).collect())
}

/// Conic's symmetric matrix determinant (times 8): zero iff the conic is singular.
pub fn conic_discriminant(conic: &MultiPoly) -> FieldElement {
    let f = conic.field();
    let c = |m: [u16; 3]| conic.coeff(&m);
    let two = FieldElement::from_int(f, 2);
    let m = [
        [&c([2, 0, 0]) * &two, c([1, 1, 0]), c([1, 0, 1])],
        [c([1, 1, 0]), &c([0, 2, 0]) * &two, c([0, 1, 1])],
        [c([1, 0, 1]), c([0, 1, 1]), &c([0, 0, 2]) * &two],
    ];
    det3(&m)
}

fn normalize_pair(a: FieldElement, b: FieldElement) -> Result<(FieldElement, FieldElement)> {
    let lead = if a.is_zero() { b.clone() } else { a.clone() };
    let inv = lead.inv()?;
    Ok((&a * &inv, &b * &inv))
}

/// Members of the pencil containing a line through two or more base points.
pub fn degenerate_members(pencil: &CubicPencil) -> Result<DegenerateReport> {
    let pts = &pencil.base_points;
    let mut candidates = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            candidates.insert(pts[i].join(&pts[j])?);
        }
    }
    let mut members: Vec<PencilMember> = Vec::new();
    let mut shared_lines = Vec::new();
    let mut warnings = Vec::new();
    for line in candidates {
        let [p, q] = line.spanning_points();
        let rf = restrict_to_segment(&pencil.basis[0], &p, &q)?;
        let rg = restrict_to_segment(&pencil.basis[1], &p, &q)?;
        let Some(k) = (0..rf.len()).find(|&k| !rf[k].is_zero() || !rg[k].is_zero()) else {
            warnings.push(format!("line {line} divides every member; the pencil has a fixed component"));
            shared_lines.push(line);
            continue;
        };
        // λ·rf + μ·rg = 0 forces (λ : μ) = (rg_k : −rf_k)
        let (lambda, mu) = (rg[k].clone(), rf[k].neg());
        let vanishes = rf.iter().zip(&rg).all(|(a, b)| (&(a * &lambda) + &(b * &mu)).is_zero());
        if !vanishes {
            continue;
        }
        let params = normalize_pair(lambda, mu)?;
        if members.iter().any(|m| m.params == params) {
            continue;
        }
        let cubic = pencil.member(&params.0, &params.1);
        let conic = cubic.exact_divide(&MultiPoly::linear(line.coeffs()))?;
        let conic_reducible = conic_discriminant(&conic).is_zero();
        members.push(PencilMember {
            params,
            cubic,
            factorization: Factorization::Degenerate { line, conic, conic_reducible },
        });
    }
    if !shared_lines.is_empty() {
        warnings.push("pencil is not reduced: every member shares a line".into());
    }
    Ok(DegenerateReport { members, shared_lines, warnings })
}

/// Component of a conic-line arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Line(ProjLine),
    Conic(MultiPoly),
}

impl Component {
    pub fn degree(&self) -> u32 {
        match self {
            Component::Line(_) => 1,
            Component::Conic(_) => 2,
        }
    }

    pub fn poly(&self) -> MultiPoly {
        match self {
            Component::Line(l) => MultiPoly::linear(l.coeffs()),
            Component::Conic(c) => c.clone(),
        }
    }

    fn contains(&self, p: &ProjPoint) -> Result<bool> {
        Ok(self.poly().eval(p.coords())?.is_zero())
    }

    /// Tangent line at a point of the component.
    fn tangent(&self, p: &ProjPoint) -> Result<ProjLine> {
        match self {
            Component::Line(l) => Ok(l.clone()),
            Component::Conic(c) => {
                let g = c.gradient();
                ProjLine::new([g[0].eval(p.coords())?, g[1].eval(p.coords())?, g[2].eval(p.coords())?])
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            Component::Line(l) => format!("line {l}"),
            Component::Conic(c) => format!("conic {c} = 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicLinePoint {
    pub point: ProjPoint,
    /// Component index and tangent line of every branch through the point.
    pub branches: Vec<(usize, ProjLine)>,
}

impl ConicLinePoint {
    pub fn multiplicity(&self) -> usize {
        self.branches.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicLineLattice {
    /// Field of the point coordinates.
    pub field: Arc<NumberField>,
    /// Set when a square root had to be adjoined to the input field.
    pub extension: Option<String>,
    pub points: Vec<ConicLinePoint>,
    pub nk: BTreeMap<usize, usize>,
    /// `Σ deg_i · deg_j` over component pairs.
    pub bezout_pairs: u64,
    /// `Σ C(m_p, 2)` over points.
    pub bezout_points: u64,
}

impl ConicLineLattice {
    pub fn tau(&self) -> u64 {
        self.nk.iter().map(|(&k, &c)| c as u64 * (k as u64 - 1).pow(2)).sum()
    }
}

type Sqrt<'a> = &'a dyn Fn(&FieldElement) -> Option<FieldElement>;

/// Why an intersection could not be resolved; `disc` is set when the
/// obstruction is a single square root.
#[derive(Debug, Clone)]
struct RootFailure {
    text: String,
    disc: Option<FieldElement>,
}

impl RootFailure {
    fn other(text: impl Into<String>) -> Self {
        RootFailure { text: text.into(), disc: None }
    }
}

/// Roots `(s : t)` of a binary form given as coefficients of
/// `s^n, s^(n−1) t, …, t^n`, when they all lie in the field. Known points
/// (as pairs) are divided out first; what remains must have degree ≤ 2.
fn binary_roots(
    coeffs: &[FieldElement],
    known: &[(FieldElement, FieldElement)],
    sqrt: Sqrt,
) -> std::result::Result<Vec<(FieldElement, FieldElement)>, RootFailure> {
    let f = coeffs[0].field().clone();
    let mut c: Vec<FieldElement> = coeffs.to_vec();
    let mut roots = Vec::new();
    // deflate a root (s0 : t0) by dividing by (t0·s − s0·t)
    let deflate = |c: &Vec<FieldElement>, s0: &FieldElement, t0: &FieldElement| -> Option<Vec<FieldElement>> {
        let n = c.len() - 1;
        if n == 0 {
            return None;
        }
        // value at the root must vanish
        let mut val = FieldElement::zero(&f);
        for (k, a) in c.iter().enumerate() {
            val += &(&(a * &s0.pow((n - k) as u32)) * &t0.pow(k as u32));
        }
        if !val.is_zero() {
            return None;
        }
        let mut q = vec![FieldElement::zero(&f); n];
        let mut rem = c.clone();
        if !t0.is_zero() {
            let inv = t0.inv().ok()?;
            for k in 0..n {
                q[k] = &rem[k] * &inv;
                rem[k + 1] = &rem[k + 1] + &(&q[k] * s0);
            }
        } else {
            // root (1:0): the form is divisible by t
            let inv = s0.neg().inv().ok()?;
            for k in 0..n {
                q[k] = &rem[k + 1] * &inv;
            }
        }
        Some(q)
    };
    for (s0, t0) in known {
        while let Some(q) = deflate(&c, s0, t0) {
            roots.push((s0.clone(), t0.clone()));
            c = q;
        }
    }
    // strip roots at (1:0)
    while c.len() > 1 && c[0].is_zero() {
        roots.push((FieldElement::one(&f), FieldElement::zero(&f)));
        c.remove(0);
    }
    match c.len() - 1 {
        0 => {}
        1 => {
            // a·s + b·t = 0  ⇒  (s : t) = (−b : a)
            roots.push((c[1].neg(), c[0].clone()));
        }
        2 => {
            let (a, b, cc) = (&c[0], &c[1], &c[2]);
            let disc = &(b * b) - &(&(a * cc) * &FieldElement::from_int(&f, 4));
            let Some(sq) = sqrt(&disc) else {
                return Err(RootFailure {
                    text: format!("irreducible quadratic factor ({a})s^2 + ({b})st + ({cc})t^2"),
                    disc: Some(disc),
                });
            };
            let two_a = a * &FieldElement::from_int(&f, 2);
            roots.push((&b.neg() + &sq, two_a.clone()));
            roots.push((&b.neg() - &sq, two_a));
        }
        k => return Err(RootFailure::other(format!("residual factor of degree {k} not resolved"))),
    }
    Ok(roots)
}

/// Common points of two components (with multiplicity as roots).
fn intersect(
    a: &Component,
    b: &Component,
    known: &[ProjPoint],
    sqrt: Sqrt,
) -> std::result::Result<Vec<ProjPoint>, RootFailure> {
    let err = |e: Error| RootFailure::other(e.to_string());
    match (a, b) {
        (Component::Line(l1), Component::Line(l2)) => Ok(vec![l1.meet(l2).map_err(err)?]),
        (Component::Line(l), Component::Conic(c)) | (Component::Conic(c), Component::Line(l)) => {
            let [p, q] = l.spanning_points();
            let coeffs = restrict_to_segment(c, &p, &q).map_err(err)?;
            let seeds = seeds_on_segment(l, &p, &q, known);
            let roots = binary_roots(&coeffs, &seeds, sqrt)?;
            roots.iter().map(|(s, t)| point_on_segment(&p, &q, s, t).map_err(err)).collect()
        }
        (Component::Conic(c1), Component::Conic(c2)) => conic_conic(c1, c2, known, sqrt),
    }
}

fn point_on_segment(p: &[FieldElement; 3], q: &[FieldElement; 3], s: &FieldElement, t: &FieldElement) -> Result<ProjPoint> {
    ProjPoint::new(std::array::from_fn(|k| &(&p[k] * s) + &(&q[k] * t)))
}

/// Parameters `(s : t)` of the known points lying on the line `s·P + t·Q`.
fn seeds_on_segment(
    l: &ProjLine,
    p: &[FieldElement; 3],
    q: &[FieldElement; 3],
    known: &[ProjPoint],
) -> Vec<(FieldElement, FieldElement)> {
    let mut out = Vec::new();
    for k in known {
        if !l.eval(k.coords()).map(|v| v.is_zero()).unwrap_or(false) {
            continue;
        }
        // solve k = s·P + t·Q using two independent coordinates
        let m = [[&p[0], &q[0]], [&p[1], &q[1]], [&p[2], &q[2]]];
        'outer: for i in 0..3 {
            for j in i + 1..3 {
                let det = &(m[i][0] * m[j][1]) - &(m[i][1] * m[j][0]);
                if det.is_zero() {
                    continue;
                }
                let c = k.coords();
                let s = &(&c[i] * m[j][1]) - &(&c[j] * m[i][1]);
                let t = &(m[i][0] * &c[j]) - &(m[j][0] * &c[i]);
                out.push((s, t));
                break 'outer;
            }
        }
    }
    out
}

fn conic_conic(c1: &MultiPoly, c2: &MultiPoly, known: &[ProjPoint], sqrt: Sqrt) -> std::result::Result<Vec<ProjPoint>, RootFailure> {
    let f = c1.field().clone();
    let err = |e: Error| RootFailure::other(e.to_string());
    // project from a coordinate vertex lying on neither conic
    let off = |c: &MultiPoly, v: Var| {
        let mut m = [0u16; 3];
        m[v.index()] = 2;
        !c.coeff(&m).is_zero()
    };
    let vertex = Var::ALL
        .into_iter()
        .find(|&v| off(c1, v) && off(c2, v))
        .or_else(|| Var::ALL.into_iter().find(|&v| off(c1, v) || off(c2, v)));
    let Some(v) = vertex else {
        return Err(RootFailure::other("every coordinate vertex lies on both conics"));
    };
    // lift along the conic missing the vertex
    let lift = if off(c1, v) { c1 } else { c2 };
    let other = if off(c1, v) { c2 } else { c1 };
    let res = c1.resultant(c2, v).map_err(err)?;
    let others: Vec<usize> = (0..3).filter(|&k| k != v.index()).collect();
    // binary quartic in the two remaining variables
    let coeffs: Vec<FieldElement> = (0..=4u16)
        .map(|k| {
            let mut m = [0u16; 3];
            m[others[0]] = 4 - k;
            m[others[1]] = k;
            res.coeff(&m)
        })
        .collect();
    if coeffs.iter().all(|c| c.is_zero()) {
        return Err(RootFailure::other("conics share a component"));
    }
    let on_both: Vec<&ProjPoint> = known
        .iter()
        .filter(|p| {
            c1.eval(p.coords()).map(|x| x.is_zero()).unwrap_or(false)
                && c2.eval(p.coords()).map(|x| x.is_zero()).unwrap_or(false)
        })
        .collect();
    let seeds: Vec<(FieldElement, FieldElement)> =
        on_both.iter().map(|p| (p.coords()[others[0]].clone(), p.coords()[others[1]].clone())).collect();
    let roots = binary_roots(&coeffs, &seeds, sqrt)?;
    // lift each projected root back to the conics
    let mut out: Vec<ProjPoint> = Vec::new();
    let mut seen: BTreeMap<(FieldElement, FieldElement), usize> = BTreeMap::new();
    for (s, t) in roots {
        let key = normalize_pair(s.clone(), t.clone()).map_err(err)?;
        let nth = {
            let e = seen.entry(key).or_insert(0);
            *e += 1;
            *e - 1
        };
        let mut p = [FieldElement::zero(&f), FieldElement::zero(&f), FieldElement::zero(&f)];
        p[others[0]] = s;
        p[others[1]] = t;
        let mut q = [FieldElement::zero(&f), FieldElement::zero(&f), FieldElement::zero(&f)];
        q[v.index()] = FieldElement::one(&f);
        // points of the lifting conic on the line through the vertex and (s, t)
        let line_pts = {
            let coeffs = restrict_to_segment(lift, &p, &q).map_err(err)?;
            let seeds: Vec<(FieldElement, FieldElement)> = on_both
                .iter()
                .filter_map(|k| {
                    let kc = k.coords();
                    // k = a·p + b·q with a from the projected coordinates
                    let (i0, i1) = (others[0], others[1]);
                    let a = if !p[i0].is_zero() { kc[i0].try_div(&p[i0]).ok()? } else { kc[i1].try_div(&p[i1]).ok()? };
                    let candidate: [FieldElement; 3] = std::array::from_fn(|j| &p[j] * &a);
                    if (0..3).filter(|&j| j != v.index()).all(|j| candidate[j] == kc[j]) {
                        Some((a, kc[v.index()].clone()))
                    } else {
                        None
                    }
                })
                .collect();
            binary_roots(&coeffs, &seeds, sqrt)?
        };
        let mut common = Vec::new();
        for (a, b) in line_pts {
            let pt = point_on_segment(&p, &q, &a, &b).map_err(err)?;
            if other.eval(pt.coords()).map_err(err)?.is_zero() && !common.contains(&pt) {
                common.push(pt);
            }
        }
        let pt = common.get(nth).or(common.first()).cloned().ok_or_else(|| RootFailure::other("projected root does not lift"))?;
        out.push(pt);
    }
    Ok(out)
}

/// Components of all degenerate members, in member order (line, then conic).
pub fn member_components(members: &[PencilMember]) -> Vec<Component> {
    let mut out = Vec::new();
    for m in members {
        if let Factorization::Degenerate { line, conic, .. } = &m.factorization {
            out.push(Component::Line(line.clone()));
            out.push(Component::Conic(conic.clone()));
        }
    }
    out
}

/// Intersection lattice of a conic-line arrangement over its own field.
/// `hints` are points expected to be intersections (e.g. base points); they
/// seed root finding.
pub fn conic_line_lattice(components: &[Component], hints: &[ProjPoint]) -> Result<ConicLineLattice> {
    lattice_with(components, hints, &|x: &FieldElement| x.sqrt(), &mut None, None)
}

/// As [`conic_line_lattice`], but when an intersection needs one square root
/// outside the field, adjoins it and recomputes over the extension.
pub fn conic_line_lattice_split(components: &[Component], hints: &[ProjPoint]) -> Result<ConicLineLattice> {
    let mut needed = None;
    match lattice_with(components, hints, &|x: &FieldElement| x.sqrt(), &mut needed, None) {
        Err(e @ Error::NotInField { .. }) => {
            let Some(delta) = needed.filter(|d| d.field().degree() <= 2) else { return Err(e) };
            let ext = QuadraticExtension::adjoin_sqrt(&delta)?;
            let comps: Vec<Component> = components
                .iter()
                .map(|c| match c {
                    Component::Line(l) => ProjLine::new(std::array::from_fn(|k| ext.embed(&l.coeffs()[k]))).map(Component::Line),
                    Component::Conic(q) => Ok(Component::Conic(ext.embed_poly(q))),
                })
                .collect::<Result<_>>()?;
            let hints: Vec<ProjPoint> = hints
                .iter()
                .map(|p| ProjPoint::new(std::array::from_fn(|k| ext.embed(&p.coords()[k]))))
                .collect::<Result<_>>()?;
            lattice_with(&comps, &hints, &|x: &FieldElement| ext.sqrt(x), &mut None, Some(ext.describe()))
        }
        other => other,
    }
}

fn lattice_with(
    components: &[Component],
    hints: &[ProjPoint],
    sqrt: Sqrt,
    needed: &mut Option<FieldElement>,
    extension: Option<String>,
) -> Result<ConicLineLattice> {
    for (i, c) in components.iter().enumerate() {
        if let Component::Conic(q) = c {
            if conic_discriminant(q).is_zero() {
                return Err(Error::Parse(format!("component {i} is a singular conic")));
            }
        }
    }
    let mut known: Vec<ProjPoint> = hints.to_vec();
    let mut all: BTreeSet<ProjPoint> = BTreeSet::new();
    let mut bezout_pairs = 0u64;
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            let (a, b) = (&components[i], &components[j]);
            bezout_pairs += (a.degree() * b.degree()) as u64;
            let pts = intersect(a, b, &known, sqrt).map_err(|fail| {
                *needed = fail.disc;
                Error::NotInField { pair: format!("{} and {}", a.describe(), b.describe()), factor: fail.text }
            })?;
            for p in pts {
                if !known.contains(&p) {
                    known.push(p.clone());
                }
                all.insert(p);
            }
        }
    }
    let mut points = Vec::new();
    let mut bezout_points = 0u64;
    for p in all {
        let mut branches = Vec::new();
        for (k, c) in components.iter().enumerate() {
            if c.contains(&p)? {
                branches.push((k, c.tangent(&p)?));
            }
        }
        for a in 0..branches.len() {
            for b in a + 1..branches.len() {
                if branches[a].1 == branches[b].1 {
                    return Err(Error::NonOrdinarySingularity {
                        point: p.to_string(),
                        reason: format!(
                            "{} and {} share the tangent {}",
                            components[branches[a].0].describe(),
                            components[branches[b].0].describe(),
                            branches[a].1
                        ),
                    });
                }
            }
        }
        let m = branches.len() as u64;
        bezout_points += m * (m - 1) / 2;
        points.push(ConicLinePoint { point: p, branches });
    }
    let mut nk = BTreeMap::new();
    for p in &points {
        *nk.entry(p.multiplicity()).or_insert(0) += 1;
    }
    let field = components.first().map(|c| c.poly().field().clone()).unwrap_or_else(NumberField::rationals);
    Ok(ConicLineLattice { field, extension, points, nk, bezout_pairs, bezout_points })
}

/// Curve and lattice of the arrangement formed by the degenerate members.
/// Construction fails on a non-ordinary point, so every listed point is ordinary.
pub fn assemble_conic_line(members: &[PencilMember], hints: &[ProjPoint]) -> Result<(CurveSpec, ConicLineLattice)> {
    let comps = member_components(members);
    if comps.is_empty() {
        return Err(Error::Parse("no degenerate members to assemble".into()));
    }
    let curve = defining_poly(comps.iter().map(Component::poly).collect())?;
    let lattice = conic_line_lattice_split(&comps, hints)?;
    Ok((curve, lattice))
}

/// Three forms of equal degree defining a rational map of the plane.
#[derive(Debug, Clone)]
pub struct RationalMap {
    pub components: [MultiPoly; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MapValue {
    Image(String),
    IndeterminateAt(String),
}

impl RationalMap {
    pub fn new(components: [MultiPoly; 3]) -> Result<Self> {
        let d = components[0].degree();
        if components.iter().any(|c| !c.is_homogeneous() || c.degree() != d) {
            return Err(Error::Parse("map components must be forms of one degree".into()));
        }
        Ok(RationalMap { components })
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree()
    }

    /// Evaluates at a point, lifting rational coefficients to the point's field.
    pub fn evaluate(&self, p: &ProjPoint) -> Result<Option<ProjPoint>> {
        let f = p.field();
        let mut vals = Vec::with_capacity(3);
        for c in &self.components {
            vals.push(c.lift_rational(f)?.eval(p.coords())?);
        }
        if vals.iter().all(|v| v.is_zero()) {
            return Ok(None);
        }
        let arr: [FieldElement; 3] = vals.try_into().expect("three values");
        Ok(Some(ProjPoint::new(arr)?))
    }
}

pub fn map_evaluate(map: &RationalMap, p: &ProjPoint) -> Result<MapValue> {
    Ok(match map.evaluate(p)? {
        Some(img) => MapValue::Image(img.to_string()),
        None => MapValue::IndeterminateAt(p.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(f: &Arc<NumberField>, c: [i64; 3]) -> ProjPoint {
        ProjPoint::from_ints(f, c).unwrap()
    }

    /// Flexes of the Fermat cubic: `x³ + y³ + z³ = 0` on `xyz = 0`.
    fn hesse_base_points() -> Vec<ProjPoint> {
        let f = NumberField::eisenstein();
        let e = FieldElement::generator(&f);
        let (zero, one) = (FieldElement::zero(&f), FieldElement::one(&f));
        let roots = [one.neg(), e.neg(), (&e * &e).neg()];
        let mut out = Vec::new();
        for r in &roots {
            out.push(ProjPoint::new([zero.clone(), one.clone(), r.clone()]).unwrap());
            out.push(ProjPoint::new([one.clone(), zero.clone(), r.clone()]).unwrap());
            out.push(ProjPoint::new([one.clone(), r.clone(), zero.clone()]).unwrap());
        }
        out
    }

    #[test]
    fn hesse_pencil_has_four_triangles() {
        let pencil = cubics_through(&hesse_base_points()).unwrap();
        let rep = degenerate_members(&pencil).unwrap();
        assert_eq!(rep.members.len(), 4);
        assert!(rep.shared_lines.is_empty());
        let f = pencil.field.clone();
        let x = MultiPoly::var(&f, Var::X);
        let xyz = x.try_mul(&MultiPoly::var(&f, Var::Y)).unwrap().try_mul(&MultiPoly::var(&f, Var::Z)).unwrap();
        assert!(rep.members.iter().any(|m| m.cubic.is_proportional(&xyz)));
        for m in &rep.members {
            let Factorization::Degenerate { conic_reducible, line, conic } = &m.factorization else { panic!() };
            assert!(conic_reducible);
            assert_eq!(MultiPoly::linear(line.coeffs()).try_mul(conic).unwrap(), m.cubic);
        }
    }

    #[test]
    fn generic_points_do_not_give_a_pencil() {
        let q = NumberField::rationals();
        let pts: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5], [3, 1, -2], [1, 4, 9], [5, 2, 7]]
            .iter()
            .map(|c| pt(&q, *c))
            .collect();
        assert_eq!(cubics_through(&pts).unwrap_err(), Error::NotAPencil(1));
    }

    #[test]
    fn tangent_conics_are_rejected() {
        let q = NumberField::rationals();
        let i = |v| FieldElement::from_int(&q, v);
        // x² − yz and x² − 2yz are tangent at (0:1:0) and (0:0:1)
        let c1 = MultiPoly::conic(&[i(1), i(0), i(0), i(0), i(-1), i(0)]);
        let c2 = MultiPoly::conic(&[i(1), i(0), i(0), i(0), i(-2), i(0)]);
        let err = conic_line_lattice(&[Component::Conic(c1), Component::Conic(c2)], &[]).unwrap_err();
        assert!(matches!(err, Error::NonOrdinarySingularity { .. }), "{err:?}");
    }

    #[test]
    fn line_conic_outside_the_field() {
        let q = NumberField::rationals();
        let i = |v| FieldElement::from_int(&q, v);
        // x² + y² − z² meets x = 0 at (0 : ±1 : 1), and y = 2z nowhere rational? no: x² = −3 z²
        let c = MultiPoly::conic(&[i(1), i(0), i(0), i(1), i(0), i(-1)]);
        let l = ProjLine::from_ints(&q, [0, 1, -2]).unwrap();
        let err = conic_line_lattice(&[Component::Line(l), Component::Conic(c.clone())], &[]).unwrap_err();
        assert!(matches!(err, Error::NotInField { .. }));
        let l = ProjLine::from_ints(&q, [1, 0, 0]).unwrap();
        let lat = conic_line_lattice(&[Component::Line(l), Component::Conic(c)], &[]).unwrap();
        assert_eq!(lat.nk, BTreeMap::from([(2, 2)]));
        assert_eq!(lat.bezout_pairs, lat.bezout_points);
    }

    #[test]
    fn conics_through_four_rational_points() {
        let q = NumberField::rationals();
        let i = |v| FieldElement::from_int(&q, v);
        // two smooth members of the pencil through (±1 : ±1 : 1)
        let c1 = MultiPoly::conic(&[i(1), i(0), i(0), i(1), i(0), i(-2)]);
        let c2 = MultiPoly::conic(&[i(1), i(0), i(0), i(-2), i(0), i(1)]);
        let comps = [Component::Conic(c1), Component::Conic(c2)];
        // the projected quartic is a square, so two hints are needed
        let hints = [pt(&q, [1, 1, 1]), pt(&q, [1, -1, 1])];
        let lat = conic_line_lattice(&comps, &hints).unwrap();
        assert_eq!(lat.nk, BTreeMap::from([(2, 4)]));
        assert_eq!(lat.bezout_points, 4);
        assert!(conic_line_lattice(&comps, &[]).is_err());
    }
}
