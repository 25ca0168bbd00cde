use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;

use pointline::arrangement::{gen_hesse, Arrangement, Selector};
use pointline::exact::{FieldElement, NumberField};
use pointline::freeness::{syzygy_space_dim, CurveSpec};
use pointline::monodromy::{alexander_from_table, cyclotomic_multiplicities, MonodromyTable};
use pointline::projgeom::{incident, ProjLine, ProjPoint};
use pointline::unexpected::unexpected_degrees;

const FIELDS: [&str; 8] = ["Q", "Q(e)", "Q(r)", "Q(sqrt3)", "Q(sqrt5)", "Q(zeta16)", "Q(zeta20)", "Q(zeta24)"];

fn field_strategy() -> impl Strategy<Value = Arc<NumberField>> {
    prop::sample::select(FIELDS.to_vec()).prop_map(|l| NumberField::builtin(l).unwrap())
}

/// Raw coefficient vectors, longer than the field degree so reduction matters.
fn raw() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-30i64..30, 1i64..9), 0..12)
}

fn element(f: &Arc<NumberField>, raw: &[(i64, i64)]) -> FieldElement {
    let c: Vec<BigRational> = raw.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
    FieldElement::from_coeffs(f, &c)
}

fn triple(f: &Arc<NumberField>, c: [i64; 3]) -> [FieldElement; 3] {
    c.map(|v| FieldElement::from_int(f, v))
}

fn q_lines(coeffs: &[[i64; 3]]) -> Vec<ProjLine> {
    let q = NumberField::rationals();
    coeffs.iter().filter_map(|c| ProjLine::from_ints(&q, *c).ok()).collect()
}

fn small_triple() -> impl Strategy<Value = [i64; 3]> {
    [-4i64..5, -4i64..5, -4i64..5]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn field_axioms(f in field_strategy(), a in raw(), b in raw(), c in raw()) {
        let (a, b, c) = (element(&f, &a), element(&f, &b), element(&f, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(f in field_strategy(), a in raw()) {
        let x = element(&f, &a);
        prop_assert_eq!(FieldElement::from_coeffs(&f, &x.coeffs()), x.clone());
        prop_assert!(x.coeffs().len() <= f.degree());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn square_roots_in_quadratic_fields(l in prop::sample::select(vec!["Q", "Q(e)", "Q(r)", "Q(sqrt3)", "Q(sqrt5)"]), a in raw()) {
        let f = NumberField::builtin(l).unwrap();
        let x = element(&f, &a);
        let r = (&x * &x).sqrt().unwrap();
        prop_assert_eq!(&r * &r, &x * &x);
    }

    #[test]
    fn duality_is_an_involution(c in small_triple()) {
        let q = NumberField::rationals();
        if let Ok(l) = ProjLine::from_ints(&q, c) {
            prop_assert_eq!(l.dual().dual(), l.clone());
        }
        if let Ok(p) = ProjPoint::from_ints(&q, c) {
            prop_assert_eq!(p.dual().dual(), p);
        }
    }

    #[test]
    fn meet_and_join_are_incident(a in small_triple(), b in small_triple()) {
        let e = NumberField::eisenstein();
        let (Ok(l1), Ok(l2)) = (ProjLine::new(triple(&e, a)), ProjLine::new(triple(&e, b))) else { return Ok(()) };
        match l1.meet(&l2) {
            Ok(p) => {
                prop_assert!(incident(&p, &l1).unwrap() && incident(&p, &l2).unwrap());
                prop_assert_eq!(p.dual(), l1.dual().join(&l2.dual()).unwrap());
            }
            Err(_) => prop_assert_eq!(l1, l2),
        }
    }

    #[test]
    fn normalization_ignores_scale(c in small_triple(), s in raw()) {
        let f = NumberField::builtin("Q(zeta20)").unwrap();
        let s = element(&f, &s);
        if s.is_zero() {
            return Ok(());
        }
        let t = triple(&f, c);
        if let Ok(p) = ProjPoint::new(t.clone()) {
            let scaled = ProjPoint::new(t.map(|x| &x * &s)).unwrap();
            prop_assert_eq!(scaled, p);
        }
    }

    #[test]
    fn alexander_is_symmetric_and_lossless(rows in prop::collection::vec(0i64..4, 6)) {
        // d = r = 12, table rows q = 1..=6
        let mut table = std::collections::BTreeMap::new();
        for (i, v) in rows.iter().enumerate() {
            table.insert(i + 1, *v);
        }
        let Ok(t) = MonodromyTable::new(&table) else { return Ok(()) };
        let alex = alexander_from_table(12, 12, &t).unwrap();
        for q in 1..12 {
            prop_assert_eq!(alex.mult(q), alex.mult(12 - q));
        }
        if let Ok(poly) = alex.polynomial() {
            let (mults, rest) = cyclotomic_multiplicities(12, &poly);
            prop_assert_eq!(rest.len(), 1);
            for f in alex.cyclotomic_factors().unwrap() {
                prop_assert_eq!(mults[&f.order], f.exponent);
            }
            prop_assert_eq!((poly.len() - 1) as u64, alex.degree());
        }
    }

    #[test]
    fn unexpected_degree_count(d in 3u32..80, d1 in 0u32..40, m in 1u32..30) {
        prop_assume!(d1 + 1 < d);
        let r = unexpected_degrees(d, d1, m);
        if r.admits {
            prop_assert_eq!(r.degrees.len() as u32, d - 2 * d1 - 2);
            prop_assert!(r.degrees.iter().all(|&u| u > d1 && u <= d - d1 - 2));
        } else {
            prop_assert!(r.degrees.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn double_counting(coeffs in prop::collection::vec(small_triple(), 2..14)) {
        let q = NumberField::rationals();
        let arr = Arrangement::build(&q, q_lines(&coeffs), "random").unwrap();
        let lat = arr.lattice().unwrap();
        prop_assert!(lat.is_double_count_consistent());
        let n = arr.len();
        prop_assert_eq!(lat.pair_count(), n * n.saturating_sub(1) / 2);
    }

    #[test]
    fn lambda_ignores_input_order(coeffs in prop::collection::vec(small_triple(), 3..12), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let q = NumberField::rationals();
        let lines = q_lines(&coeffs);
        let mut shuffled = lines.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let a = Arrangement::build(&q, lines, "a").unwrap();
        let b = Arrangement::build(&q, shuffled, "b").unwrap();
        let sel = Selector::AtLeast(2);
        let la = a.lambda(&sel, &sel).unwrap();
        let lb = b.lambda(&sel, &sel).unwrap();
        prop_assert_eq!(la.line_set(), lb.line_set());
    }

    #[test]
    fn syzygy_dimension_grows(coeffs in prop::collection::vec(small_triple(), 3..8)) {
        let q = NumberField::rationals();
        let arr = Arrangement::build(&q, q_lines(&coeffs), "random").unwrap();
        prop_assume!(arr.len() >= 3);
        let curve = CurveSpec::from_arrangement(&arr).unwrap();
        let mut prev = 0;
        for r in 0..arr.len() as u32 {
            let s = syzygy_space_dim(&curve, r).unwrap();
            prop_assert!(s.primes_agree());
            prop_assert!(s.dim >= prev);
            prev = s.dim;
        }
    }
}

/// The Galois conjugation `e ↦ e²` permutes the Hesse arrangement, so it
/// must permute every set of lines derived from it.
#[test]
fn hesse_lambda_is_galois_stable() {
    let e = NumberField::eisenstein();
    let img = &FieldElement::generator(&e) * &FieldElement::generator(&e);
    let hesse = gen_hesse();
    let conj: std::collections::BTreeSet<ProjLine> = hesse.lines().iter().map(|l| l.conjugate(&img).unwrap()).collect();
    assert_eq!(conj, hesse.line_set());
    let out = hesse.lambda(&Selector::AtLeast(2), &Selector::AtLeast(2)).unwrap();
    let conj: std::collections::BTreeSet<ProjLine> = out.lines().iter().map(|l| l.conjugate(&img).unwrap()).collect();
    assert_eq!(conj, out.line_set());
}
