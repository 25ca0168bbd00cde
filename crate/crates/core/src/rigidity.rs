//! Matroids of line arrangements and a first-order rigidity test.
//!
//! The dual coordinates of the `n` lines form a `3×n` matrix `X`. Every
//! concurrent triple of lines gives a vanishing `3×3` minor. The Jacobian of
//! these minors at `X` always contains the trivial deformations (rescaling a
//! column, acting by `GL_3`), which span `n + 8` dimensions. If the kernel is
//! no larger, the realization is isolated modulo those symmetries.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::Serialize;

use crate::arrangement::{Arrangement, LatticeSummary};
use crate::error::{Error, Result};
use crate::exact::linalg::{cross, det3, Matrix};
use crate::exact::modp::{GoodPrimes, ModMatrix};
use crate::exact::{FieldElement, NumberField};

/// Ground set `0..n` with its non-bases (concurrent triples).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrMatroid {
    pub n: usize,
    pub nonbases: Vec<[usize; 3]>,
}

impl ArrMatroid {
    pub fn is_nonbasis(&self, t: &[usize; 3]) -> bool {
        self.nonbases.binary_search(t).is_ok()
    }

    /// All 3-subsets that are not non-bases.
    pub fn bases(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    let t = [i, j, k];
                    if !self.is_nonbasis(&t) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }
}

pub fn matroid_from_lattice(lattice: &LatticeSummary) -> ArrMatroid {
    let mut set = BTreeSet::new();
    for p in &lattice.points {
        let l = &p.lines;
        for a in 0..l.len() {
            for b in a + 1..l.len() {
                for c in b + 1..l.len() {
                    set.insert([l[a], l[b], l[c]]);
                }
            }
        }
    }
    ArrMatroid { n: lattice.num_lines, nonbases: set.into_iter().collect() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum RigidityVerdict {
    FirstOrderRigid,
    Inconclusive { excess: usize },
}

impl fmt::Display for RigidityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigidityVerdict::FirstOrderRigid => write!(f, "first-order rigid"),
            RigidityVerdict::Inconclusive { excess } => write!(f, "inconclusive (kernel exceeds the trivial part by {excess})"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    pub n: usize,
    pub jacobian_rows: usize,
    pub kernel_dim: usize,
    pub trivial_dim: usize,
    pub verdict: RigidityVerdict,
    /// Kernel dimension at each oracle prime.
    pub modular: Vec<(u64, usize)>,
}

/// `∂ det(X_i, X_j, X_k) / ∂X` as a sparse row: three blocks of three entries.
fn jacobian_row(cols: &[[FieldElement; 3]], t: &[usize; 3]) -> [(usize, [FieldElement; 3]); 3] {
    let [i, j, k] = *t;
    [(i, cross(&cols[j], &cols[k])), (j, cross(&cols[k], &cols[i])), (k, cross(&cols[i], &cols[j]))]
}

fn dense_row(field: &Arc<NumberField>, n: usize, sparse: &[(usize, [FieldElement; 3])]) -> Vec<FieldElement> {
    let mut row = vec![FieldElement::zero(field); 3 * n];
    for (col, v) in sparse {
        for a in 0..3 {
            row[3 * col + a] = v[a].clone();
        }
    }
    row
}

/// Column scalings and the nine elementary `gl_3` directions, as vectors in
/// the `3n` coordinates (column-major: entry `(a, i)` at `3i + a`).
pub fn trivial_deformations(cols: &[[FieldElement; 3]], field: &Arc<NumberField>) -> Vec<Vec<FieldElement>> {
    let n = cols.len();
    let mut out = Vec::with_capacity(n + 9);
    for i in 0..n {
        let mut v = vec![FieldElement::zero(field); 3 * n];
        for a in 0..3 {
            v[3 * i + a] = cols[i][a].clone();
        }
        out.push(v);
    }
    for a in 0..3 {
        for b in 0..3 {
            // E_ab · X moves row b into row a
            let mut v = vec![FieldElement::zero(field); 3 * n];
            for i in 0..n {
                v[3 * i + a] = cols[i][b].clone();
            }
            out.push(v);
        }
    }
    out
}

fn kernel_dim_mod_p(rows: &[Vec<FieldElement>], ncols: usize, p: u64, root: u64) -> Option<(usize, Vec<usize>)> {
    let mut m = ModMatrix::zeros(p, rows.len(), ncols);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            if !v.is_zero() {
                m.set(i, j, v.reduce_mod(p, root)?);
            }
        }
    }
    let e = m.eliminate(false, false);
    Some((ncols - e.rank, e.pivot_rows))
}

/// Exact first-order rigidity test with two modular oracles.
pub fn rigidity_check(arr: &Arrangement, matroid: &ArrMatroid) -> Result<RigidityReport> {
    let field = arr.field().clone();
    let n = arr.len();
    let cols: Vec<[FieldElement; 3]> = arr.lines().iter().map(|l| l.coeffs().clone()).collect();
    for t in &matroid.nonbases {
        if !det3(&[cols[t[0]].clone(), cols[t[1]].clone(), cols[t[2]].clone()]).is_zero() {
            return Err(Error::NotARealization { triple: *t });
        }
    }
    let rows: Vec<Vec<FieldElement>> =
        matroid.nonbases.iter().map(|t| dense_row(&field, n, &jacobian_row(&cols, t))).collect();
    let ncols = 3 * n;
    let trivial_dim = n + 8;

    let mut modular = Vec::new();
    let mut pivot_rows = None;
    for gp in GoodPrimes::new(&field, false) {
        if let Some((k, piv)) = kernel_dim_mod_p(&rows, ncols, gp.p, gp.roots[0]) {
            modular.push((gp.p, k));
            pivot_rows.get_or_insert(piv);
        }
        if modular.len() == 2 {
            break;
        }
    }
    if modular.len() < 2 {
        return Err(Error::NoGoodPrime("rigidity oracles".into()));
    }

    // lower bound: the trivial directions lie in the kernel exactly
    let jac = Matrix::from_rows(&field, rows.clone());
    let triv = trivial_deformations(&cols, &field);
    for v in &triv {
        if jac.num_rows() > 0 && !jac.mul_vec(v).iter().all(|x| x.is_zero()) {
            return Err(Error::Reconstruction("trivial deformation outside the tangent space".into()));
        }
    }
    let triv_rank = Matrix::from_rows(&field, triv).rank()?;
    // upper bound: exact rank of the rows that carried pivots mod p
    let subset: Vec<Vec<FieldElement>> =
        pivot_rows.unwrap_or_default().iter().map(|&i| rows[i].clone()).collect();
    let sub_rank = if subset.is_empty() { 0 } else { Matrix::from_rows(&field, subset).rank()? };
    let kernel_dim = if ncols - sub_rank == triv_rank {
        triv_rank
    } else if rows.is_empty() {
        ncols
    } else {
        ncols - jac.rank()?
    };
    let verdict = if kernel_dim == trivial_dim {
        RigidityVerdict::FirstOrderRigid
    } else {
        RigidityVerdict::Inconclusive { excess: kernel_dim.saturating_sub(trivial_dim) }
    };
    Ok(RigidityReport { n, jacobian_rows: rows.len(), kernel_dim, trivial_dim, verdict, modular })
}

fn var(a: usize, i: usize) -> String {
    format!("x{}_{}", a + 1, i + 1)
}

fn det_text(t: &[usize; 3]) -> String {
    // Leibniz expansion over the three columns
    const PERMS: [([usize; 3], bool); 6] =
        [([0, 1, 2], true), ([1, 2, 0], true), ([2, 0, 1], true), ([0, 2, 1], false), ([2, 1, 0], false), ([1, 0, 2], false)];
    let mut s = String::new();
    for (k, (p, pos)) in PERMS.iter().enumerate() {
        let term = format!("{}*{}*{}", var(p[0], t[0]), var(p[1], t[1]), var(p[2], t[2]));
        match (k, pos) {
            (0, _) => s.push_str(&term),
            (_, true) => {
                let _ = write!(s, " + {term}");
            }
            (_, false) => {
                let _ = write!(s, " - {term}");
            }
        }
    }
    s
}

/// Generators of the realization ideal in the `3n` matrix entries `xa_i` and
/// the saturation variable `d`, one per line: the non-basis minors, then
/// `1 - d·Π det(X_B)` over all bases (left as a product).
pub fn realization_ideal_text(matroid: &ArrMatroid) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# variables: xa_i (row a = 1..3, column i = 1..{}) and d", matroid.n);
    for t in &matroid.nonbases {
        let _ = writeln!(out, "{}", det_text(t));
    }
    let factors: Vec<String> = matroid.bases().iter().map(|t| format!("({})", det_text(t))).collect();
    let _ = writeln!(out, "1 - d*{}", factors.join("*"));
    out
}
