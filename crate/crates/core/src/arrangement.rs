//! Line arrangements, intersection lattices, rich lines and the point-line
//! operators Λ.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::parse::parse_field_element;
use crate::exact::{FieldElement, MultiPoly, NumberField};
use crate::projgeom::{ProjLine, ProjPoint};

/// A set of distinct lines over one field, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    field: Arc<NumberField>,
    lines: Vec<ProjLine>,
    label: String,
    warnings: Vec<String>,
}

/// A point where at least two lines of an arrangement meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidencePoint {
    pub point: ProjPoint,
    /// Indices into the arrangement's line list, ascending.
    pub lines: Vec<usize>,
}

impl IncidencePoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSummary {
    pub num_lines: usize,
    pub points: Vec<IncidencePoint>,
    /// Multiplicity k -> number of k-fold points.
    pub nk: BTreeMap<usize, usize>,
}

impl LatticeSummary {
    /// `Σ n_k · C(k,2)`, which must equal `C(n,2)`.
    pub fn pair_count(&self) -> usize {
        self.nk.iter().map(|(&k, &c)| c * k * (k - 1) / 2).sum()
    }

    pub fn is_double_count_consistent(&self) -> bool {
        self.pair_count() == self.num_lines * self.num_lines.saturating_sub(1) / 2
    }

    pub fn max_multiplicity(&self) -> usize {
        self.nk.keys().next_back().copied().unwrap_or(0)
    }

    /// Total Tjurina number `Σ (m-1)²`, valid for ordinary points.
    pub fn tau(&self) -> u64 {
        self.nk.iter().map(|(&k, &c)| (c as u64) * ((k as u64 - 1).pow(2))).sum()
    }

    pub fn nk_string(&self) -> String {
        format_nk(&self.nk)
    }
}

/// `n_2 = 12, n_4 = 9` style rendering.
pub fn format_nk(nk: &BTreeMap<usize, usize>) -> String {
    nk.iter().map(|(k, c)| format!("n_{k} = {c}")).collect::<Vec<_>>().join(", ")
}

/// Sum of `n_k · C(k,2)` for an arbitrary table.
pub fn pair_count_of(nk: &BTreeMap<usize, usize>) -> usize {
    nk.iter().map(|(&k, &c)| c * k * (k - 1) / 2).sum()
}

/// Filter on multiplicities or point counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Selector {
    ExactIn(BTreeSet<usize>),
    AtLeast(usize),
}

pub type MultSelector = Selector;
pub type CountSelector = Selector;

impl Selector {
    pub fn exact_in(values: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = values.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidSelector("empty set".into()));
        }
        if let Some(v) = set.iter().find(|&&v| v < 2) {
            return Err(Error::InvalidSelector(format!("value {v} is below 2")));
        }
        Ok(Selector::ExactIn(set))
    }

    pub fn at_least(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidSelector(format!("threshold {k} is below 2")));
        }
        Ok(Selector::AtLeast(k))
    }

    pub fn accepts(&self, k: usize) -> bool {
        match self {
            Selector::ExactIn(s) => s.contains(&k),
            Selector::AtLeast(t) => k >= *t,
        }
    }
}

impl FromStr for Selector {
    type Err = Error;

    /// `exact:2,3` or `atleast:2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSelector(s.to_string());
        let (mode, rest) = s.split_once(':').ok_or_else(bad)?;
        let nums = rest
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        match mode.trim().to_ascii_lowercase().as_str() {
            "exact" => Selector::exact_in(nums),
            "atleast" if nums.len() == 1 => Selector::at_least(nums[0]),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::ExactIn(s) => {
                let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                write!(f, "exact:{}", v.join(","))
            }
            Selector::AtLeast(k) => write!(f, "atleast:{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RichLineReport {
    /// Lines passing the selector, with their incident point counts.
    pub lines: Vec<(ProjLine, usize)>,
    /// Count r -> number of lines through exactly r input points, over all
    /// lines through at least two of them.
    pub lr: BTreeMap<usize, usize>,
}

/// Lines through at least two of `points`, filtered by how many they contain.
pub fn rich_lines(points: &[ProjPoint], selector: &CountSelector) -> Result<RichLineReport> {
    let mut through: HashMap<ProjLine, BTreeSet<usize>> = HashMap::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let l = points[i].join(&points[j])?;
            let e = through.entry(l).or_default();
            e.insert(i);
            e.insert(j);
        }
    }
    let mut lr = BTreeMap::new();
    let mut lines = Vec::new();
    for (l, pts) in through {
        *lr.entry(pts.len()).or_insert(0) += 1;
        if selector.accepts(pts.len()) {
            lines.push((l, pts.len()));
        }
    }
    lines.sort();
    Ok(RichLineReport { lines, lr })
}

impl Arrangement {
    /// Deduplicates and sorts. Repeated lines are dropped with a warning.
    pub fn build(field: &Arc<NumberField>, lines: Vec<ProjLine>, label: &str) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut warnings = Vec::new();
        for (i, l) in lines.into_iter().enumerate() {
            if !l.field().same_as(field) {
                return Err(Error::FieldMismatch(field.label().into(), l.field().label().into()));
            }
            if let Some(prev) = seen.replace(l) {
                warnings.push(format!("duplicate line {prev} at input position {i} dropped"));
            }
        }
        Ok(Arrangement { field: field.clone(), lines: seen.into_iter().collect(), label: label.into(), warnings })
    }

    pub fn empty(field: &Arc<NumberField>, label: &str) -> Self {
        Arrangement { field: field.clone(), lines: Vec::new(), label: label.into(), warnings: Vec::new() }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.into();
        self
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn line_set(&self) -> BTreeSet<ProjLine> {
        self.lines.iter().cloned().collect()
    }

    pub fn lattice(&self) -> Result<LatticeSummary> {
        let n = self.lines.len();
        let mut groups: HashMap<ProjPoint, BTreeSet<usize>> = HashMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let p = self.lines[i].meet(&self.lines[j])?;
                let e = groups.entry(p).or_default();
                e.insert(i);
                e.insert(j);
            }
        }
        let mut points: Vec<IncidencePoint> = groups
            .into_iter()
            .map(|(point, set)| IncidencePoint { point, lines: set.into_iter().collect() })
            .collect();
        points.sort_by(|a, b| a.point.cmp(&b.point));
        let mut nk = BTreeMap::new();
        for p in &points {
            *nk.entry(p.multiplicity()).or_insert(0) += 1;
        }
        Ok(LatticeSummary { num_lines: n, points, nk })
    }

    /// `Λ`: keep intersection points whose multiplicity passes `mult`, then
    /// return the lines whose number of kept points passes `count`.
    pub fn lambda(&self, mult: &MultSelector, count: &CountSelector) -> Result<Arrangement> {
        let lat = self.lattice()?;
        self.lambda_with_lattice(&lat, mult, count)
    }

    pub fn lambda_with_lattice(
        &self,
        lat: &LatticeSummary,
        mult: &MultSelector,
        count: &CountSelector,
    ) -> Result<Arrangement> {
        let selected: Vec<ProjPoint> = lat
            .points
            .iter()
            .filter(|p| mult.accepts(p.multiplicity()))
            .map(|p| p.point.clone())
            .collect();
        let label = format!("lambda[{mult}|{count}]({})", self.label);
        if selected.len() < 2 {
            return Ok(Arrangement::empty(&self.field, &label));
        }
        let report = rich_lines(&selected, count)?;
        Arrangement::build(&self.field, report.lines.into_iter().map(|(l, _)| l).collect(), &label)
    }

    /// Product of the linear forms.
    pub fn defining_components(&self) -> Vec<MultiPoly> {
        self.lines.iter().map(|l| MultiPoly::linear(l.coeffs())).collect()
    }

    /// Image under the field automorphism sending the generator to `image`.
    pub fn conjugate(&self, image: &FieldElement) -> Result<Arrangement> {
        let lines = self.lines.iter().map(|l| l.conjugate(image)).collect::<Result<Vec<_>>>()?;
        Arrangement::build(&self.field, lines, &format!("conj({})", self.label))
    }
}

/// Free-standing form of [`Arrangement::lambda`].
pub fn lambda_operator(arr: &Arrangement, mult: &MultSelector, count: &CountSelector) -> Result<Arrangement> {
    arr.lambda(mult, count)
}

fn lines_from_exprs(field: &Arc<NumberField>, rows: &[[&str; 3]]) -> Result<Vec<ProjLine>> {
    rows.iter()
        .map(|r| {
            ProjLine::new([
                parse_field_element(r[0], field)?,
                parse_field_element(r[1], field)?,
                parse_field_element(r[2], field)?,
            ])
        })
        .collect()
}

/// The Hesse arrangement: `xyz` and the nine lines `x + e^i y + e^j z`.
pub fn gen_hesse() -> Arrangement {
    let f = NumberField::eisenstein();
    let pw = ["1", "e", "e^2"];
    let mut rows = vec![["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]];
    for i in pw {
        for j in pw {
            rows.push(["1", i, j]);
        }
    }
    let lines = lines_from_exprs(&f, &rows).expect("static data");
    Arrangement::build(&f, lines, "hesse").expect("static data")
}

/// Side lines of a regular octagon over `Q(r)`, `r² = 2`.
pub fn gen_c8() -> Arrangement {
    let f = NumberField::quadratic(2);
    let rows = [
        ["1", "r-1", "-1"],
        ["1", "r+1", "-r-1"],
        ["1", "-r-1", "r+1"],
        ["1", "-r+1", "1"],
        ["1", "r-1", "1"],
        ["1", "r+1", "r+1"],
        ["1", "-r-1", "-r-1"],
        ["1", "-r+1", "-1"],
    ];
    let lines = lines_from_exprs(&f, &rows).expect("static data");
    Arrangement::build(&f, lines, "c8").expect("static data")
}

/// Side lines of a regular n-gon over `Q(ζ_{2n})`, n ∈ {8, 10, 12}:
/// `x cos θ_k + y sin θ_k = cos(π/n) z` with `θ_k = (2k+1)π/n`.
pub fn gen_ngon(n: u32) -> Result<Arrangement> {
    if ![8, 10, 12].contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let f = NumberField::cyclotomic(2 * n);
    let zeta = FieldElement::generator(&f);
    let zinv = zeta.inv()?;
    let half = FieldElement::from_frac(&f, 1, 2);
    let i = zeta.pow(n / 2);
    let two_i_inv = (&i * &FieldElement::from_int(&f, 2)).inv()?;
    let cos_pi_n = &(&zeta + &zinv) * &half;
    let mut lines = Vec::with_capacity(n as usize);
    for k in 0..n {
        let a = zeta.pow(2 * k + 1);
        let b = zinv.pow(2 * k + 1);
        let cos = &(&a + &b) * &half;
        let sin = &(&a - &b) * &two_i_inv;
        lines.push(ProjLine::new([cos, sin, cos_pi_n.neg()])?);
    }
    Arrangement::build(&f, lines, &format!("c{n}"))
}
