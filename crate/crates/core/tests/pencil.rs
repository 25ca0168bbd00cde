use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pointline::exact::linalg::Matrix;
use pointline::exact::poly::monomials_of_degree;
use pointline::exact::{FieldElement, MultiPoly, NumberField};
use pointline::fixtures;
use pointline::pencil::*;
use pointline::projgeom::{ProjLine, ProjPoint};
use pointline::Error;

fn base_points() -> Vec<ProjPoint> {
    fixtures::cl_base_points().unwrap().points
}

fn rank_of(polys: &[MultiPoly]) -> usize {
    let f = polys[0].field().clone();
    let mons = monomials_of_degree(3);
    let rows = polys.iter().map(|p| mons.iter().map(|m| p.coeff(m)).collect()).collect();
    Matrix::from_rows(&f, rows).rank().unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn cl_pencil_has_six_degenerate_members() {
    let pts = base_points();
    let pencil = cubics_through(&pts).unwrap();
    let rep = degenerate_members(&pencil).unwrap();
    assert_eq!(rep.members.len(), 6);
    assert!(rep.warnings.is_empty());
    for m in &rep.members {
        let Factorization::Degenerate { line, conic, conic_reducible } = &m.factorization else {
            panic!("irreducible member reported")
        };
        assert!(!conic_reducible);
        assert_eq!(MultiPoly::linear(line.coeffs()).try_mul(conic).unwrap(), m.cubic);
        let on_line = pts.iter().filter(|p| line.eval(p.coords()).unwrap().is_zero()).count();
        assert_eq!(on_line, 3);
        for p in &pts {
            assert!(m.cubic.eval(p.coords()).unwrap().is_zero());
        }
    }
}

#[test]
fn random_members_vanish_on_base_points() {
    let pts = base_points();
    let pencil = cubics_through(&pts).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let l = FieldElement::from_int(&pencil.field, rng.gen_range(-50..50));
        let m = FieldElement::from_int(&pencil.field, rng.gen_range(-50..50));
        let g = pencil.member(&l, &m);
        assert!(pts.iter().all(|p| g.eval(p.coords()).unwrap().is_zero()));
    }
}

/// Pairs the printed line and conic factors so the six products span a
/// two-dimensional space, by exhausting all 720 pairings.
#[test]
fn printed_pairing_matches_members() {
    let file = fixtures::cl().unwrap();
    let lines: Vec<MultiPoly> = file.lines.iter().map(|l| MultiPoly::linear(l.coeffs())).collect();
    let conics = file.conic_polys();
    let good: Vec<Vec<usize>> = permutations(6)
        .into_iter()
        .filter(|perm| {
            let products: Vec<MultiPoly> = (0..6).map(|i| lines[i].try_mul(&conics[perm[i]]).unwrap()).collect();
            rank_of(&products) == 2
        })
        .collect();
    assert_eq!(good.len(), 1);
    let perm = &good[0];

    let rep = degenerate_members(&cubics_through(&base_points()).unwrap()).unwrap();
    for i in 0..6 {
        let m = rep.members.iter().find(|m| m.line() == Some(&file.lines[i])).expect("printed line is a member line");
        assert!(m.conic().unwrap().is_proportional(&conics[perm[i]]));
    }
}

#[test]
fn product_is_the_printed_curve() {
    let file = fixtures::cl().unwrap();
    let field = file.field.clone();
    let mut printed = MultiPoly::constant(FieldElement::one(&field));
    for p in file.lines.iter().map(|l| MultiPoly::linear(l.coeffs())).chain(file.conic_polys()) {
        printed = printed.try_mul(&p).unwrap();
    }
    let rep = degenerate_members(&cubics_through(&base_points()).unwrap()).unwrap();
    let (curve, _) = assemble_conic_line(&rep.members, &base_points()).unwrap();
    assert_eq!(curve.degree(), 18);
    assert!(curve.f().is_proportional(&printed));
}

#[test]
fn cl_lattice() {
    let pts = base_points();
    let rep = degenerate_members(&cubics_through(&pts).unwrap()).unwrap();
    let (_, lat) = assemble_conic_line(&rep.members, &pts).unwrap();
    assert_eq!(lat.nk, BTreeMap::from([(2, 12), (6, 9)]));
    assert_eq!(lat.tau(), 237);
    assert_eq!(lat.bezout_pairs, 147);
    assert_eq!(lat.bezout_points, 147);
    // the double points need i, which Q(e) lacks
    assert_eq!(lat.field.degree(), 4);
    assert!(lat.extension.is_some());
    // the sextuple points are exactly the base points, one branch per member
    let sext: Vec<&ConicLinePoint> = lat.points.iter().filter(|p| p.multiplicity() == 6).collect();
    assert_eq!(sext.len(), 9);
    for p in sext {
        let members: std::collections::BTreeSet<usize> = p.branches.iter().map(|(c, _)| c / 2).collect();
        assert_eq!(members.len(), 6);
    }
    // over Q(e) alone the assembly cannot finish
    let comps = member_components(&rep.members);
    assert!(matches!(conic_line_lattice(&comps, &pts), Err(Error::NotInField { .. })));
}

#[test]
fn seeded_random_points_impose_independent_conditions() {
    let q = NumberField::rationals();
    for seed in [1u64, 2, 3] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<ProjPoint> = (0..9)
            .map(|_| ProjPoint::from_ints(&q, [rng.gen_range(-30..30), rng.gen_range(-30..30), rng.gen_range(1..30)]).unwrap())
            .collect();
        assert_eq!(cubics_through(&pts).unwrap_err(), Error::NotAPencil(1), "seed {seed}");
    }
}

/// Points `(s : 1 : s³)` of the cuspidal cubic `x³ = y²z`; nine of them are
/// cut out by another cubic exactly when the parameters sum to zero.
#[test]
fn cayley_bacharach_on_the_cuspidal_cubic() {
    let q = NumberField::rationals();
    let on_cubic = |s: i64| ProjPoint::from_ints(&q, [s, 1, s * s * s]).unwrap();
    let eight = [1i64, 2, 3, 4, 5, -1, -2, 7];
    let mut pts: Vec<ProjPoint> = eight.iter().map(|&s| on_cubic(s)).collect();
    pts.push(on_cubic(-eight.iter().sum::<i64>()));
    let pencil = cubics_through(&pts).unwrap();
    let cusp_cubic = MultiPoly::from_terms(&q, [([3, 0, 0], FieldElement::one(&q)), ([0, 2, 1], FieldElement::from_int(&q, -1))]).unwrap();
    let span = rank_of(&[pencil.basis[0].clone(), pencil.basis[1].clone(), cusp_cubic]);
    assert_eq!(span, 2);
    pts.pop();
    pts.push(on_cubic(6));
    assert_eq!(cubics_through(&pts).unwrap_err(), Error::NotAPencil(1));
}

#[test]
fn pencil_with_a_fixed_line() {
    let q = NumberField::rationals();
    let i = |v| FieldElement::from_int(&q, v);
    let z = MultiPoly::linear(&[i(0), i(0), i(1)]);
    let f = z.try_mul(&MultiPoly::conic(&[i(0), i(1), i(0), i(0), i(0), i(0)])).unwrap();
    let g = z.try_mul(&MultiPoly::conic(&[i(1), i(0), i(0), i(1), i(0), i(-1)])).unwrap();
    let base_points = [[1, 0, 0], [0, 1, 0], [1, 1, 0]].iter().map(|c| ProjPoint::from_ints(&q, *c).unwrap()).collect();
    let pencil = CubicPencil { field: q.clone(), basis: [f, g], base_points };
    let rep = degenerate_members(&pencil).unwrap();
    assert_eq!(rep.shared_lines, vec![ProjLine::from_ints(&q, [0, 0, 1]).unwrap()]);
    assert!(!rep.warnings.is_empty());
}

fn map() -> RationalMap {
    RationalMap::new(fixtures::cl_map().unwrap().components).unwrap()
}

#[test]
fn base_points_are_indeterminate() {
    let m = map();
    assert_eq!(m.degree(), 6);
    for p in base_points() {
        assert_eq!(map_evaluate(&m, &p).unwrap(), MapValue::IndeterminateAt(p.to_string()));
    }
}

#[test]
fn printed_examples() {
    let m = map();
    let q = NumberField::rationals();
    for c in [[0, 0, 1], [0, 1, 0]] {
        let p = ProjPoint::from_ints(&q, c).unwrap();
        assert!(m.evaluate(&p).unwrap().is_none());
    }
    let img = m.evaluate(&ProjPoint::from_ints(&q, [1, 1, 1]).unwrap()).unwrap();
    assert!(img.is_some());
}

#[test]
fn random_points_have_images() {
    let m = map();
    let e: Arc<NumberField> = NumberField::eisenstein();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let mut c = || FieldElement::from_coeffs(&e, &[rng.gen_range(-20i64..20).into(), rng.gen_range(-20i64..20).into()].map(num_rational::BigRational::from_integer));
        let p = match ProjPoint::new([c(), c(), c()]) {
            Ok(p) => p,
            Err(_) => continue,
        };
        assert!(m.evaluate(&p).unwrap().is_some(), "{p}");
    }
}
