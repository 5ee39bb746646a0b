use proptest::prelude::*;
use superserre::dynkin::DynkinDiagram;
use superserre::freelie::FreeLie;
use superserre::quotient::QuotientAlgebra;
use superserre::rootdata::{Family, RootDatum};
use superserre::serre::{Presentation, Side};
use superserre::verify::{height_cap, run_borel};
use superserre::Scalar;

fn families() -> Vec<Family> {
    vec![
        Family::A { m: 1, n: 1 },
        Family::A { m: 2, n: 1 },
        Family::B { m: 1, n: 2 },
        Family::C { n: 3 },
        Family::D { m: 2, n: 1 },
        Family::F4,
        Family::G3,
        Family::d21_generic(),
    ]
}

fn presentations(f: Family) -> Vec<Presentation> {
    let d = RootDatum::new(f).unwrap();
    d.simple_systems()
        .iter()
        .map(|pi| Presentation::new(&d, pi).unwrap())
        .collect()
}

#[test]
fn f_side_mirrors_e_side() {
    for f in families() {
        for p in presentations(f) {
            assert_eq!(p.e_side.len(), p.f_side.len());
            for (e, x) in p.e_side.iter().zip(&p.f_side) {
                assert_eq!(e.side, Side::E);
                assert_eq!(x, &e.mirror());
                assert_eq!(x.to_text(), e.to_text().replace('e', "f"));
            }
        }
    }
}

/// The Chevalley involution swaps the two sides, so the quotient built from
/// the f-side relations has the same weight dimensions.
#[test]
fn omega_symmetry() {
    for f in [Family::A { m: 1, n: 1 }, Family::G3, Family::d21_generic()] {
        for p in presentations(f) {
            let mut e = QuotientAlgebra::from_presentation(&p);
            let mut x = QuotientAlgebra::new(p.cartan.parities(), p.f_side.clone());
            assert_eq!(e.build(12).surviving(), x.build(12).surviving());
        }
    }
}

/// Removing relations never shrinks a weight space.
#[test]
fn removing_relations_is_monotone() {
    for f in [
        Family::A { m: 1, n: 1 },
        Family::B { m: 1, n: 2 },
        Family::F4,
    ] {
        let d = RootDatum::new(f).unwrap();
        for pi in d.simple_systems() {
            let p = Presentation::new(&d, &pi).unwrap();
            let cap = height_cap(&d.positive_roots(&pi).unwrap(), None).min(8);
            let mut full = QuotientAlgebra::from_presentation(&p);
            full.build(cap);
            for (k, _) in p.higher_order() {
                let mut q = QuotientAlgebra::from_presentation(&p.without(k));
                let rep = q.build(cap);
                for w in &rep.weights {
                    assert!(w.dim >= full.dim(&w.nu), "{} at {:?}", d.family(), w.nu);
                }
            }
        }
    }
}

#[test]
fn diagram_json_round_trip() {
    for f in families() {
        for p in presentations(f) {
            let text = p.diagram.to_json_string();
            assert_eq!(DynkinDiagram::from_json(&text).unwrap(), p.diagram);
        }
    }
}

#[test]
fn latex_of_sl22() {
    let d = RootDatum::new(Family::A { m: 1, n: 1 }).unwrap();
    let p = Presentation::new(&d, &d.distinguished()).unwrap();
    assert!(p.to_latex().contains("[e_2,[e_1,[e_2,e_3]]]"));
    assert!(p.to_latex().contains("[f_2,[f_1,[f_2,f_3]]]"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Specialising α after building the generic presentation gives the same
    /// relations, up to scale, as building at the specialised value.
    #[test]
    fn d21_specialisation_commutes(p in 1i64..=7, q in 1i64..=5, neg in any::<bool>()) {
        let a0 = Scalar::ratio(if neg { -p } else { p }, q);
        let at = a0.as_rational().unwrap();
        prop_assume!(!(&a0 + &Scalar::one()).is_zero());
        let generic = RootDatum::new(Family::d21_generic()).unwrap();
        let special = RootDatum::new(Family::D21 { alpha: a0.clone() }).unwrap();
        let gs = generic.simple_systems();
        let ss = special.simple_systems();
        prop_assert_eq!(gs.len(), ss.len());
        for (k, (g, s)) in gs.iter().zip(&ss).enumerate() {
            let run = run_borel(&special, s, Some(k), None).unwrap();
            prop_assert!(run.report.pass, "{}", run.report.summary());
            let gp = Presentation::new(&generic, g).unwrap();
            let free = FreeLie::new(gp.cartan.parities());
            prop_assert_eq!(gp.e_side.len(), run.presentation.e_side.len());
            for (x, y) in gp.e_side.iter().zip(&run.presentation.normal_forms) {
                let mut e = x.expr.clone();
                for (c, _) in e.terms.iter_mut() {
                    *c = Scalar::from_rational(c.evaluate_at(&at).unwrap());
                }
                prop_assert!(free.normalize(&e).unwrap().is_proportional(y));
            }
        }
    }
}
