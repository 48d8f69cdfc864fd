use std::cmp::Ordering;

use proptest::prelude::*;

use conflop::arcs::{catalog_arc, invariants, ArcLabel, PLArc, SceneConfig};
use conflop::homalg::{ext1, hom, iso_check};
use conflop::quiver::words_from;
use conflop::rational::{q, CQ, Q};
use conflop::reps::{flop_k, is_stable, make_catalog_rep, phase_cmp, phase_f64};
use conflop::scan::normalize_sign;
use conflop::{FreePathElement, RepKind, Representation, StabilityParams, TruncatedAlgebra, Vertex};

fn rat() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn nonzero_rat() -> impl Strategy<Value = Q> {
    rat().prop_filter("nonzero", |x| *x != q(0))
}

fn admissible() -> impl Strategy<Value = CQ> {
    (rat(), rat())
        .prop_map(|(re, im)| CQ::new(re, im))
        .prop_filter("admissible", |z| z.is_admissible())
}

fn catalog_kind() -> impl Strategy<Value = RepKind> {
    prop_oneof![
        (0usize..2).prop_map(|v| RepKind::Simple(Vertex::from_index(v))),
        (1usize..=3).prop_map(RepKind::VPlus),
        (0usize..=2).prop_map(RepKind::VMinus),
        (1usize..=3).prop_map(RepKind::VPlusDagger),
        (0usize..=2).prop_map(RepKind::VMinusDagger),
        (rat(), rat())
            .prop_filter("not both zero", |(a, b)| *a != q(0) || *b != q(0))
            .prop_map(|(a, b)| RepKind::Point(a, b)),
        (rat(), rat())
            .prop_filter("not both zero", |(a, b)| *a != q(0) || *b != q(0))
            .prop_map(|(a, b)| RepKind::PointFlopped(a, b)),
    ]
}

fn chamber() -> impl Strategy<Value = StabilityParams> {
    any::<bool>().prop_map(|s| {
        let p = StabilityParams::standard();
        if s {
            p.swapped()
        } else {
            p
        }
    })
}

fn rep(kind: &RepKind) -> Representation {
    make_catalog_rep(kind).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn phase_order_laws(a in admissible(), b in admissible(), c in admissible()) {
        prop_assert_eq!(phase_cmp(&a, &a).unwrap(), Ordering::Equal);
        let ab = phase_cmp(&a, &b).unwrap();
        prop_assert_eq!(phase_cmp(&b, &a).unwrap(), ab.reverse());
        let bc = phase_cmp(&b, &c).unwrap();
        if ab == bc && ab != Ordering::Greater {
            prop_assert_eq!(phase_cmp(&a, &c).unwrap(), ab);
        }
        let (fa, fb) = (phase_f64(&a), phase_f64(&b));
        if (fa - fb).abs() > 1e-9 {
            prop_assert_eq!(fa.partial_cmp(&fb), Some(ab));
        }
    }

    #[test]
    fn phase_is_scale_invariant(a in admissible(), b in admissible(), k in 1i64..20) {
        prop_assert_eq!(phase_cmp(&a.scale(&q(k)), &b).unwrap(), phase_cmp(&a, &b).unwrap());
    }

    #[test]
    fn flop_k_is_an_involution(a in -50i64..50, b in -50i64..50) {
        prop_assert_eq!(flop_k(flop_k((a, b))), (a, b));
        let n = normalize_sign((a, b));
        prop_assert!(n == (a, b) || n == (-a, -b));
    }

    #[test]
    fn stable_modules_are_bricks(kind in catalog_kind(), p in chamber()) {
        let r = rep(&kind);
        if is_stable(&r, &p).unwrap().is_stable() {
            prop_assert_eq!(hom(&r, &r).len(), 1);
        }
    }

    #[test]
    fn rescaling_preserves_verdicts_and_ext(
        kind in catalog_kind(),
        other in catalog_kind(),
        p in chamber(),
        f in proptest::array::uniform4(nonzero_rat()),
    ) {
        let r = rep(&kind);
        let s = r.rescaled(&f).unwrap();
        prop_assert!(s.check().relations_ok && s.check().nilpotent);
        prop_assert_eq!(is_stable(&r, &p).unwrap().name(), is_stable(&s, &p).unwrap().name());
        let o = rep(&other);
        prop_assert_eq!(ext1(&r, &o).dim, ext1(&s, &o).dim);
        prop_assert_eq!(hom(&r, &o).len(), hom(&s, &o).len());
    }

    #[test]
    fn points_depend_on_the_ratio(a in nonzero_rat(), b in rat(), k in nonzero_rat()) {
        let p = rep(&RepKind::Point(a.clone(), b.clone()));
        let pk = rep(&RepKind::Point(&a * &k, &b * &k));
        prop_assert!(iso_check(&p, &pk, 0));
    }

    #[test]
    fn json_round_trip(kind in catalog_kind()) {
        let r = rep(&kind);
        let j = serde_json::to_string(&r.to_json()).unwrap();
        let back = Representation::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        prop_assert_eq!(back, r);
    }
}

fn words_upto(v: Vertex, n: usize) -> Vec<FreePathElement> {
    (0..=n).flat_map(|l| words_from(v, l)).map(FreePathElement::from_path).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_multiplicative(
        i in 0usize..200,
        j in 0usize..200,
        ci in nonzero_rat(),
        cj in nonzero_rat(),
        v in 0usize..2,
    ) {
        let alg = TruncatedAlgebra::new(7).unwrap();
        let v = Vertex::from_index(v);
        let left = words_upto(v.other(), 3);
        let right = words_upto(v, 4);
        let a = left[i % left.len()].scale(&ci).add(&left[(i + 1) % left.len()]);
        let b = right[j % right.len()].scale(&cj).sub(&right[(j + 3) % right.len()]);
        let direct = alg.normal_form_truncating(&a.mul(&b));
        let via = alg.normal_form_truncating(
            &alg.normal_form_truncating(&a).mul(&alg.normal_form_truncating(&b)),
        );
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn refinement_preserves_arc_invariants(k in -3i32..=3, prime in any::<bool>(), e in 0u32..4) {
        let cfg = SceneConfig::standard();
        let label = if prime { ArcLabel::SPrime(k) } else { ArcLabel::S(k) };
        let arc = catalog_arc(label, &cfg).unwrap();
        let fine = arc.refined(&Q::new(1.into(), (1i64 << (e + 1)).into()));
        fine.validate(&cfg).unwrap();
        prop_assert_eq!(invariants(&arc, &cfg).unwrap(), invariants(&fine, &cfg).unwrap());
        let back = PLArc::from_json(&arc.to_json(), &cfg).unwrap();
        prop_assert_eq!(invariants(&back, &cfg).unwrap(), invariants(&arc, &cfg).unwrap());
    }
}
