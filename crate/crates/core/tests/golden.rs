mod common;

use std::fs::File;
use std::path::PathBuf;

use common::*;
use lingtwd::analysis::{intervals_from_bounds, lower_approximation};
use lingtwd::*;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn not_small() -> Expression {
    Builtin::NotSmall.into()
}

fn very_big() -> Expression {
    Builtin::VeryBig.into()
}

#[test]
fn communities_csv_partition() {
    let table = AttributeTable::from_csv(File::open(data("communities.csv")).unwrap()).unwrap();
    let space = ApproximationSpace::from_attributes(&table, &["community"]).unwrap();
    let sizes: Vec<usize> = space.blocks().iter().map(|b| b.members.len()).collect();
    assert_eq!(sizes, vec![5, 5, 5, 5, 5, 7]);
    let labels: Vec<&str> = space.blocks().iter().map(|b| b.label.as_str()).collect();
    assert_eq!(labels, vec!["C1", "C2", "C3", "C4", "C5", "C6"]);

    // Same partition and concept as the hand-built fixture.
    let concept = Concept::from_bool_column(&space, &table, "sport").unwrap();
    let fixture = communities();
    assert_eq!(concept.members, fixture.concept.members);
    assert_eq!(
        space.block_ratios(&concept),
        fixture.space.block_ratios(&fixture.concept)
    );
}

#[test]
fn community_ratios() {
    let c = communities();
    let c6 = c.blocks(&["C6"]);
    assert_eq!(
        relative_cardinality(&c.concept.members, &c6).unwrap(),
        frac(1, 7)
    );
    assert_eq!(
        c.space.inclusion_ratio(&c.concept, "u21").unwrap(),
        frac(4, 5)
    );
    assert_eq!(
        c.space.inclusion_ratio(&c.concept, "u13").unwrap(),
        frac(2, 5)
    );
    assert_eq!(
        c.space.block_ratios(&c.concept),
        vec![
            frac(0, 1),
            frac(1, 5),
            frac(2, 5),
            frac(3, 5),
            frac(4, 5),
            frac(1, 7)
        ]
    );
    let own_block = Concept {
        label: "C2".into(),
        members: c.blocks(&["C2"]),
    };
    assert_eq!(
        c.space.inclusion_ratio(&own_block, "u7").unwrap(),
        frac(1, 1)
    );
}

#[test]
fn probabilistic_goldens() {
    let c = communities();
    let tp = probabilistic_regions(&c.space, &c.concept, &th(0.3, 0.1));
    assert_eq!(tp.pos, c.blocks(&["C3", "C4", "C5"]));
    assert_eq!(tp.neg, c.blocks(&["C1"]));
    assert_eq!(tp.bnd, c.blocks(&["C2", "C6"]));

    let t = twenty();
    let tp = probabilistic_regions(&t.space, &t.concept, &th(0.7, 0.2));
    assert_eq!(tp.pos, t.blocks(&["C2", "C3"]));
    assert_eq!(tp.neg, t.blocks(&["C1"]));
    assert!(tp.bnd.is_empty());
    assert_eq!(tp.empty_regions(), vec![Region::Bnd]);
}

#[test]
fn linguistic_goldens() {
    let c = communities();
    let tp = linguistic_regions(&c.space, &c.concept, &not_small(), &th(0.8, 0.2));
    assert_eq!(tp.pos, c.blocks(&["C3", "C4", "C5"]));
    assert_eq!(tp.neg, c.blocks(&["C1"]));
    assert_eq!(tp.bnd, c.blocks(&["C2", "C6"]));

    let t = twenty();
    let tp = linguistic_regions(&t.space, &t.concept, &very_big(), &th(0.7, 0.3));
    assert_eq!(tp.pos, t.blocks(&["C2"]));
    assert_eq!(tp.neg, t.blocks(&["C1"]));
    assert_eq!(tp.bnd, t.blocks(&["C3"]));

    let h = thirty_half();
    let tp = linguistic_regions(&h.space, &h.concept, &very_big(), &th(0.7, 0.2));
    assert_eq!(tp.neg, h.blocks(&["C1", "C2"]));
    assert_eq!(tp.bnd, h.blocks(&["C3"]));
    assert!(tp.pos.is_empty());
}

#[test]
fn rough_set_goldens() {
    let c = communities();
    let tp = linguistic_regions(&c.space, &c.concept, &not_small(), &th(0.8, 0.2));
    let rs = rough_set_from_tripartition(&tp);
    let u = c.space.universe();
    let positions = |lo, hi| -> ElementSet {
        ids(lo, hi)
            .iter()
            .map(|id| u.position(id).unwrap())
            .collect()
    };
    assert_eq!(rs.lower, positions(11, 25));
    assert_eq!(rs.upper, positions(6, 32));

    let t = twenty();
    let tp = linguistic_regions(&t.space, &t.concept, &very_big(), &th(0.7, 0.3));
    let expected = RoughSetPair {
        lower: t.blocks(&["C2"]),
        upper: t.blocks(&["C2", "C3"]),
    };
    assert_eq!(rough_set_from_tripartition(&tp), expected);
    assert_eq!(pawlak_rough_set(&t.space, &t.concept), expected);
}

#[test]
fn bounds_goldens() {
    let c = communities();
    let b = region_bounds(&c.space, &c.concept, &not_small(), &th(0.8, 0.2));
    assert_eq!(b.beta1, Some(frac(0, 1)));
    assert_eq!(b.beta2, Some(frac(1, 7)));
    assert_eq!(b.alpha1, Some(frac(1, 5)));
    assert_eq!(b.alpha2, Some(frac(2, 5)));
    assert_eq!(check_bounds_ordering(&b, true), Ok(true));

    let t = twenty();
    let b = region_bounds(&t.space, &t.concept, &very_big(), &th(0.7, 0.3));
    assert_eq!(
        [
            b.beta1.clone(),
            b.beta2.clone(),
            b.alpha1.clone(),
            b.alpha2.clone()
        ],
        [
            Some(frac(0, 1)),
            Some(frac(9, 10)),
            Some(frac(9, 10)),
            Some(frac(1, 1))
        ]
    );

    let s = thirty_saturated();
    let b = region_bounds(&s.space, &s.concept, &very_big(), &th(0.8, 0.4));
    assert_eq!(b.beta1, None);
    assert_eq!(b.beta2, Some(frac(9, 10)));
    assert_eq!(b.alpha1, Some(frac(9, 10)));
    assert_eq!(b.alpha2, Some(frac(1, 1)));
}

#[test]
fn interval_goldens() {
    let c = communities();
    let eq =
        equivalent_threshold_intervals(&c.space, &c.concept, &not_small(), &th(0.8, 0.2)).unwrap();
    assert_eq!(eq.case, EquivalenceCase::AllNonEmpty);
    assert_eq!(
        eq.alpha_interval,
        Interval::new(frac(1, 5), true, frac(2, 5), false)
    );
    assert_eq!(
        eq.beta_interval,
        Interval::new(frac(0, 1), false, frac(1, 7), true)
    );
    assert!(!eq.coupled);
    assert_eq!(eq.to_string(), "α′ ∈ (0.2, 0.4], β′ ∈ [0, 1/7 ≈ 0.142857)");

    let t = twenty();
    let delta = Expression::step(0.5).unwrap();
    let eq = equivalent_threshold_intervals(&t.space, &t.concept, &delta, &th(0.6, 0.3)).unwrap();
    assert_eq!(eq.case, EquivalenceCase::BndEmpty);
    assert!(eq.coupled);
    assert_eq!(eq.beta_interval.lo, frac(0, 1));
    assert_eq!(eq.alpha_interval.hi, frac(9, 10));
    assert_eq!(eq.to_string(), "0 ≤ β′ < α′ ≤ 0.9");
    assert!(eq.admits_f64(0.7, 0.2));
    assert!(!eq.admits_f64(0.2, 0.7));
    assert!(!eq.admits_f64(0.95, 0.2));

    let s = thirty_saturated();
    let eq =
        equivalent_threshold_intervals(&s.space, &s.concept, &very_big(), &th(0.8, 0.4)).unwrap();
    assert_eq!(eq.case, EquivalenceCase::NegEmpty);
    assert_eq!(
        eq.beta_interval,
        Interval::new(frac(0, 1), false, frac(9, 10), true)
    );
    assert_eq!(
        eq.alpha_interval,
        Interval::new(frac(9, 10), true, frac(1, 1), false)
    );

    let h = thirty_half();
    let eq =
        equivalent_threshold_intervals(&h.space, &h.concept, &very_big(), &th(0.7, 0.2)).unwrap();
    assert_eq!(eq.case, EquivalenceCase::PosEmpty);
    assert_eq!(
        eq.beta_interval,
        Interval::new(frac(1, 2), false, frac(9, 10), true)
    );
    assert_eq!(
        eq.alpha_interval,
        Interval::new(frac(9, 10), true, frac(1, 1), false)
    );
}

#[test]
fn literal_sparse_membership_gives_one_fifth() {
    // With X taken exactly as listed the two small classes sit at 1/5, so
    // the lower end of the beta interval moves to 1/5.
    let l = thirty_sparse_literal();
    assert_eq!(
        l.space.block_ratios(&l.concept),
        vec![frac(1, 5), frac(1, 5), frac(9, 10)]
    );
    let eq =
        equivalent_threshold_intervals(&l.space, &l.concept, &very_big(), &th(0.7, 0.2)).unwrap();
    assert_eq!(eq.case, EquivalenceCase::PosEmpty);
    assert_eq!(
        eq.beta_interval,
        Interval::new(frac(1, 5), false, frac(9, 10), true)
    );
    assert!(
        verify_equivalence(&l.space, &l.concept, &very_big(), &th(0.7, 0.2), 0.95, 0.6).unwrap()
    );
}

#[test]
fn verify_goldens() {
    let c = communities();
    assert!(
        verify_equivalence(&c.space, &c.concept, &not_small(), &th(0.8, 0.2), 0.3, 0.1).unwrap()
    );
    // 0.5 lies above alpha2 = 0.4, so C3 leaves the positive region.
    assert!(
        !verify_equivalence(&c.space, &c.concept, &not_small(), &th(0.8, 0.2), 0.5, 0.1).unwrap()
    );
    let ling = linguistic_regions(&c.space, &c.concept, &not_small(), &th(0.8, 0.2));
    let prob = probabilistic_regions(&c.space, &c.concept, &th(0.5, 0.1));
    let (block, l, p) = analysis::first_difference(&ling, &prob).unwrap();
    assert_eq!(c.space.blocks()[block].label, "C3");
    assert_eq!((l, p), (Region::Pos, Region::Bnd));

    assert!(verify_equivalence(
        &c.space,
        &c.concept,
        &Expression::Identity,
        &th(0.55, 0.35),
        0.55,
        0.35
    )
    .unwrap());
}

#[test]
fn sweep_goldens() {
    let c = communities();
    let thr = th(0.8, 0.2);
    let sweep = sweep_equivalence_oracle(&c.space, &c.concept, &not_small(), &thr);
    let eq = equivalent_threshold_intervals(&c.space, &c.concept, &not_small(), &thr).unwrap();
    assert!(sweep.agrees_with(&eq));
    for v in &sweep.verdicts {
        let inside = v.alpha > frac(1, 5)
            && v.alpha <= frac(2, 5)
            && v.beta >= frac(0, 1)
            && v.beta < frac(1, 7);
        assert_eq!(v.coincides, inside, "({}, {})", v.alpha, v.beta);
    }
    assert!(sweep.admitted().count() > 0);

    // Singletons with an empty concept: every ratio is 0 and every candidate
    // puts the whole universe in NEG.
    let u = Universe::new(ids(1, 6)).unwrap();
    let singles: Vec<Vec<String>> = ids(1, 6).into_iter().map(|id| vec![id]).collect();
    let space = ApproximationSpace::from_blocks(u, &singles).unwrap();
    let empty = Concept {
        label: "none".into(),
        members: ElementSet::new(),
    };
    let sweep = sweep_equivalence_oracle(&space, &empty, &very_big(), &th(0.7, 0.3));
    assert_eq!(sweep.candidates, vec![frac(0, 1), frac(1, 1)]);
    assert!(sweep.verdicts.iter().all(|v| v.coincides));
    for v in &sweep.verdicts {
        let tp = probabilistic_regions(
            &space,
            &empty,
            &Thresholds::new(fraction::to_f64(&v.alpha), fraction::to_f64(&v.beta)).unwrap(),
        );
        assert_eq!(tp.neg, space.universe().all());
    }
    assert!(matches!(
        equivalent_threshold_intervals(&space, &empty, &very_big(), &th(0.7, 0.3)),
        Err(AnalysisError::DegenerateCase(_))
    ));

    let t = twenty();
    let sweep = sweep_equivalence_oracle(&t.space, &t.concept, &very_big(), &th(0.7, 0.3));
    for v in &sweep.verdicts {
        let inside = v.alpha > frac(9, 10) && v.beta < frac(9, 10);
        assert_eq!(v.coincides, inside);
    }
}

#[test]
fn delta_goldens() {
    let t = twenty();
    for (a, b) in [(0.9, 0.1), (0.5, 0.4), (1.0, 0.0)] {
        let tp = delta_regions(&t.space, &t.concept, 0.5).unwrap();
        let ling = linguistic_regions(
            &t.space,
            &t.concept,
            &Expression::step(0.5).unwrap(),
            &th(a, b),
        );
        assert!(tp.same_regions(&ling));
        assert_eq!(tp.pos, t.blocks(&["C2", "C3"]));
        assert_eq!(tp.neg, t.blocks(&["C1"]));
        assert!(tp.bnd.is_empty());
    }
    assert_eq!(
        delta_regions(&t.space, &t.concept, 0.0).unwrap().pos,
        t.space.universe().all()
    );
    assert_eq!(
        delta_regions(&t.space, &t.concept, 1.0).unwrap().pos,
        pawlak_rough_set(&t.space, &t.concept).lower
    );
    assert_eq!(lower_approximation(&t.space, &t.concept), t.blocks(&["C2"]));
}

#[test]
fn pawlak_coincidence_goldens() {
    let t = twenty();
    let b = region_bounds(&t.space, &t.concept, &very_big(), &th(0.7, 0.3));
    assert_eq!(coincides_with_pawlak(&b), Ok(true));
    let c = communities();
    let b = region_bounds(&c.space, &c.concept, &not_small(), &th(0.8, 0.2));
    assert_eq!(coincides_with_pawlak(&b), Ok(false));
}

#[test]
fn explanation_goldens() {
    let c = communities();
    let tp = linguistic_regions(&c.space, &c.concept, &not_small(), &th(0.8, 0.2));
    let e = explain_element(&c.space, &tp, &not_small(), "u7", "X_Sport").unwrap();
    assert_eq!(e.block, "C2");
    assert_eq!(e.region, Decision::Abstain);
    assert!((e.degree - 0.75).abs() <= 0.01);
    assert_eq!(e.quantifier, Some(Quantifier::Many));
    assert_eq!(
        e.sentence,
        "The degree to which many members of C2 are in X_Sport is 0.76, so u7 is abstained."
    );

    let t = twenty();
    let tp = linguistic_regions(&t.space, &t.concept, &very_big(), &th(0.7, 0.3));
    let e = explain_element(&t.space, &tp, &very_big(), "u12", "X").unwrap();
    assert_eq!(e.region, Decision::Abstain);
    assert!((e.degree - 0.58).abs() <= 0.01);
    assert_eq!(e.quantifier, Some(Quantifier::Most));
}

#[test]
fn report_goldens() {
    let c = communities();
    let thr = th(0.8, 0.2);
    let tp = linguistic_regions(&c.space, &c.concept, &not_small(), &thr);
    let bounds = analysis::RegionBounds::from_tripartition(&c.space, &c.concept, &tp);
    let eq = intervals_from_bounds(&tp, &bounds).unwrap();
    let r = report(
        &c.space,
        &c.concept,
        &tp,
        &not_small(),
        &thr,
        Some(&bounds),
        Some((&eq, true)),
    );
    assert_eq!(r.blocks.len(), 6);
    assert_eq!(r.summary.accepted_blocks, vec!["C3", "C4", "C5"]);
    assert_eq!(r.summary.abstained_blocks, vec!["C2", "C6"]);
    assert!(r.notes.is_empty());
    let text = r.render_text();
    assert!(text.contains("α′ ∈ (0.2, 0.4], β′ ∈ [0, 1/7 ≈ 0.142857)"));
    assert!(text.contains("sweep agrees"));

    let t = twenty();
    let tp = delta_regions(&t.space, &t.concept, 0.5).unwrap();
    let delta = Expression::step(0.5).unwrap();
    let r = report(&t.space, &t.concept, &tp, &delta, &th(0.6, 0.3), None, None);
    assert_eq!(r.notes, vec!["no abstentions"]);

    let h = thirty_half();
    let thr = th(0.7, 0.2);
    let tp = linguistic_regions(&h.space, &h.concept, &very_big(), &thr);
    let bounds = analysis::RegionBounds::from_tripartition(&h.space, &h.concept, &tp);
    let eq = intervals_from_bounds(&tp, &bounds).unwrap();
    let r = report(
        &h.space,
        &h.concept,
        &tp,
        &very_big(),
        &thr,
        Some(&bounds),
        Some((&eq, true)),
    );
    assert_eq!(
        r.notes,
        vec!["positive region empty; nothing is accepted (PosEmpty case)"]
    );
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["equivalence"]["case"], "PosEmpty");
    assert_eq!(json["equivalence"]["beta_interval"]["lo"], 0.5);
    assert_eq!(json["bounds"]["alpha2"], serde_json::Value::Null);
}
