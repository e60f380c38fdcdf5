//! Property tests for the measure invariants.

use credeval_core::baseline::{
    average_precision, binarize, bpref, f1, g_measure, mrr, ndcg, precision_at_k, recall_at_k,
    BinaryJudgedList, ConfusionCounts,
};
use credeval_core::harness::{evaluate, parse_measure_list, spearman};
use credeval_core::io::{parse_assessed_rankings, write_report, ReportFormat};
use credeval_core::model::validate_unit;
use credeval_core::rank_errors::{ErrorVector, IdealPositions};
use credeval_core::type_one::{ngre, ngre_from_errors, nlre, nlre_from_errors, pair_penalty};
use credeval_core::type_two::{cam, iwcs, nwcs, wcs, wham, AggregationInput, ScoredRanking};
use credeval_core::{
    Dimension, EvalUnit, Gain, Grade, Judgment, JudgmentSet, MeasureConfig, RankedList,
    UnjudgedPolicy,
};
use proptest::prelude::*;

fn unit_from_grades(grades: &[(u8, u8)]) -> EvalUnit {
    let mut js = JudgmentSet::new();
    let ids: Vec<String> = (0..grades.len()).map(|i| format!("d{i}")).collect();
    for (id, &(r, c)) in ids.iter().zip(grades) {
        js.insert(Judgment {
            query_id: "q".into(),
            assessor_id: "a".into(),
            doc_id: id.clone(),
            relevance: Grade::new(r as i64).unwrap(),
            credibility: Grade::new(c as i64).unwrap(),
        })
        .unwrap();
    }
    validate_unit(&RankedList::new("q", "a", ids), &js, UnjudgedPolicy::Zero).unwrap()
}

fn grade_pairs(max_len: usize) -> impl Strategy<Value = Vec<(u8, u8)>> {
    proptest::collection::vec((1u8..=4, 1u8..=4), 1..=max_len)
}

fn weights() -> impl Strategy<Value = (f64, f64)> {
    prop_oneof![Just(0.25), Just(0.5), Just(1.0), 0.01f64..4.0].prop_flat_map(|mu| {
        (
            Just(mu),
            prop_oneof![Just(0.25), Just(0.5), Just(1.0), 0.01f64..4.0],
        )
    })
}

fn positions(scores: &[f64]) -> Vec<usize> {
    let ids: Vec<String> = (0..scores.len()).map(|i| i.to_string()).collect();
    IdealPositions::from_scores(Dimension::Relevance, &ids, scores)
        .unwrap()
        .positions()
        .to_vec()
}

proptest! {
    #[test]
    fn ideal_positions_are_a_bijection(scores in proptest::collection::vec(0.0f64..10.0, 1..12)) {
        let mut p = positions(&scores);
        p.sort_unstable();
        prop_assert_eq!(p, (1..=scores.len()).collect::<Vec<_>>());
    }

    #[test]
    fn error_entries_are_bounded(scores in proptest::collection::vec(0u8..5, 1..12)) {
        let s: Vec<f64> = scores.iter().map(|&v| v as f64).collect();
        let n = s.len();
        let e = ErrorVector::from_positions(&positions(&s));
        prop_assert_eq!(e.len(), n - 1);
        prop_assert!(e.values().iter().all(|&v| v < n));
    }

    #[test]
    fn zero_errors_iff_sorted(scores in proptest::collection::vec(0u8..5, 1..12)) {
        let s: Vec<f64> = scores.iter().map(|&v| v as f64).collect();
        let sorted = s.windows(2).all(|w| w[0] >= w[1]);
        prop_assert_eq!(ErrorVector::from_positions(&positions(&s)).is_zero(), sorted);
    }

    #[test]
    fn positions_ignore_monotone_transforms(scores in proptest::collection::vec(0.0f64..5.0, 1..12)) {
        let base = positions(&scores);
        let cubed: Vec<f64> = scores.iter().map(|x| x * x * x + 2.0).collect();
        let exp: Vec<f64> = scores.iter().map(|x| x.exp()).collect();
        prop_assert_eq!(&base, &positions(&cubed));
        prop_assert_eq!(&base, &positions(&exp));
    }

    #[test]
    fn type_one_scores_in_unit_interval(grades in grade_pairs(10), (mu, nu) in weights()) {
        let unit = unit_from_grades(&grades);
        let cfg = MeasureConfig { mu, nu, ..Default::default() };
        for r in [nlre(&unit, &cfg), ngre(&unit, &cfg)] {
            prop_assert!((0.0..=1.0).contains(&r.score));
            prop_assert!(!r.clamped, "bound exceeded: {:?}", r);
        }
    }

    #[test]
    fn type_one_is_one_iff_error_free(grades in grade_pairs(10), (mu, nu) in weights()) {
        let unit = unit_from_grades(&grades);
        let cfg = MeasureConfig { mu, nu, ..Default::default() };
        let sorted = |d: Dimension| unit.grades(d).windows(2).all(|w| w[0] >= w[1]);
        let error_free = sorted(Dimension::Relevance) && sorted(Dimension::Credibility);
        prop_assert_eq!(nlre(&unit, &cfg).score == 1.0, error_free);
        prop_assert_eq!(ngre(&unit, &cfg).score == 1.0, error_free);
    }

    #[test]
    fn later_pair_error_costs_less(n in 3usize..10, at in 0usize..8, size in 1usize..6, (mu, nu) in weights()) {
        // same single-pair error at pair `at` vs `at + 1`
        let at = at % (n - 2);
        let size = size.min(n - 1);
        let mut early = vec![0; n - 1];
        let mut late = vec![0; n - 1];
        early[at] = size;
        late[at + 1] = size;
        let zeros = ErrorVector::zeros(n - 1);
        let e = nlre_from_errors(&ErrorVector::new(early), &zeros, mu, nu).unwrap().score;
        let l = nlre_from_errors(&ErrorVector::new(late), &zeros, mu, nu).unwrap().score;
        prop_assert!(l > e);
    }

    #[test]
    fn equal_credibility_reduces_to_relevance(rel in proptest::collection::vec(1u8..=4, 1..10), cred in 1u8..=4, (mu, nu) in weights()) {
        let grades: Vec<(u8, u8)> = rel.iter().map(|&r| (r, cred)).collect();
        let unit = unit_from_grades(&grades);
        let cfg = MeasureConfig { mu, nu, ..Default::default() };
        let rel_scores: Vec<f64> = rel.iter().map(|&r| r as f64).collect();
        let err_r = ErrorVector::from_positions(&positions(&rel_scores));
        let zeros = ErrorVector::zeros(err_r.len());
        prop_assert_eq!(nlre(&unit, &cfg).score, nlre_from_errors(&err_r, &zeros, mu, nu).unwrap().score);
        prop_assert_eq!(ngre(&unit, &cfg).score, ngre_from_errors(&err_r, &zeros, mu, nu).unwrap().score);
    }

    #[test]
    fn penalty_is_monotone(a in 0usize..10, b in 0usize..10, mu in 0.01f64..3.0, nu in 0.01f64..3.0) {
        let (a, b) = (a as f64, b as f64);
        prop_assert!(pair_penalty(a + 1.0, b, mu, nu) > pair_penalty(a, b, mu, nu));
        prop_assert!(pair_penalty(a, b + 1.0, mu, nu) > pair_penalty(a, b, mu, nu));
        let hi = pair_penalty(a + 1.0, b + 1.0, mu, nu) - pair_penalty(a + 1.0, b, mu, nu);
        let lo = pair_penalty(a, b + 1.0, mu, nu) - pair_penalty(a, b, mu, nu);
        prop_assert!(hi > lo);
    }

    #[test]
    fn nwcs_in_unit_interval(pairs in proptest::collection::vec((0.0f64..10.0, 0.0f64..10.0), 1..12), lambda in 0.0f64..=1.0) {
        let r = nwcs(&ScoredRanking::new(pairs).unwrap(), lambda);
        prop_assert!(r.score >= 0.0 && r.score <= 1.0 + 1e-12);
    }

    #[test]
    fn nwcs_is_scale_free(pairs in proptest::collection::vec((0.1f64..10.0, 0.1f64..10.0), 1..12), lambda in 0.0f64..=1.0, c in 0.01f64..100.0) {
        let scaled: Vec<(f64, f64)> = pairs.iter().map(|&(r, s)| (r * c, s * c)).collect();
        let a = nwcs(&ScoredRanking::new(pairs).unwrap(), lambda).score;
        let b = nwcs(&ScoredRanking::new(scaled).unwrap(), lambda).score;
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn ideal_order_scores_one(mut pairs in proptest::collection::vec((0.1f64..10.0, 0.1f64..10.0), 1..12), lambda in 0.0f64..=1.0) {
        pairs.sort_by(|x, y| {
            let cx = lambda * x.0 + (1.0 - lambda) * x.1;
            let cy = lambda * y.0 + (1.0 - lambda) * y.1;
            cy.total_cmp(&cx)
        });
        let r = ScoredRanking::new(pairs).unwrap();
        prop_assert_eq!(wcs(&r, lambda), iwcs(&r, lambda));
        prop_assert_eq!(nwcs(&r, lambda).score, 1.0);
    }

    #[test]
    fn wcs_grows_with_any_score(pairs in proptest::collection::vec((0.0f64..10.0, 0.0f64..10.0), 1..12), idx in 0usize..12, bump in 0.1f64..5.0, lambda in 0.01f64..0.99) {
        let idx = idx % pairs.len();
        let base = wcs(&ScoredRanking::new(pairs.clone()).unwrap(), lambda);
        let mut up_r = pairs.clone();
        up_r[idx].0 += bump;
        let mut up_c = pairs;
        up_c[idx].1 += bump;
        prop_assert!(wcs(&ScoredRanking::new(up_r).unwrap(), lambda) > base);
        prop_assert!(wcs(&ScoredRanking::new(up_c).unwrap(), lambda) > base);
    }

    #[test]
    fn promoting_the_better_document_never_hurts(pairs in proptest::collection::vec((0.0f64..10.0, 0.0f64..10.0), 2..12), i in 0usize..12, gap in 1usize..12, lambda in 0.0f64..=1.0) {
        let mut pairs = pairs;
        let i = i % (pairs.len() - 1);
        let j = (i + gap).min(pairs.len() - 1);
        let comb = |p: (f64, f64)| lambda * p.0 + (1.0 - lambda) * p.1;
        // arrange for the better document to start below the worse one
        if comb(pairs[j]) < comb(pairs[i]) {
            pairs.swap(i, j);
        }
        let before = nwcs(&ScoredRanking::new(pairs.clone()).unwrap(), lambda).score;
        pairs.swap(i, j);
        let after = nwcs(&ScoredRanking::new(pairs).unwrap(), lambda).score;
        prop_assert!(after >= before - 1e-12);
    }

    #[test]
    fn constant_credibility_preserves_relevance_order(
        a in proptest::collection::vec(0.0f64..10.0, 2..8),
        seed in any::<u64>(),
        cred in 0.0f64..10.0,
        lambda in 0.01f64..=1.0,
    ) {
        // two permutations of the same documents compare identically with or without credibility
        let mut b = a.clone();
        let len = b.len();
        b.rotate_left((seed as usize) % len);
        let with = |v: &[f64], l: f64| wcs(&ScoredRanking::new(v.iter().map(|&r| (r, cred)).collect()).unwrap(), l);
        let diff_joint = with(&a, lambda) - with(&b, lambda);
        let diff_rel = with(&a, 1.0) - with(&b, 1.0);
        prop_assert!((diff_joint - lambda * diff_rel).abs() < 1e-9);
    }

    #[test]
    fn aggregators_are_ordered_and_monotone(r in 0.0f64..=1.0, c in 0.0f64..=1.0, d in 0.0f64..0.5, lambda in 0.0f64..=1.0) {
        let x = AggregationInput::new(r, c);
        prop_assert!(wham(x, lambda) <= cam(x, lambda) + 1e-12);
        let up_r = AggregationInput::new((r + d).min(1.0), c);
        let up_c = AggregationInput::new(r, (c + d).min(1.0));
        prop_assert!(cam(up_r, lambda) >= cam(x, lambda) - 1e-15);
        prop_assert!(cam(up_c, lambda) >= cam(x, lambda) - 1e-15);
        prop_assert!(wham(up_r, lambda) >= wham(x, lambda) - 1e-12);
        prop_assert!(wham(up_c, lambda) >= wham(x, lambda) - 1e-12);
    }

    #[test]
    fn baselines_in_unit_interval(labels in proptest::collection::vec(any::<bool>(), 1..12), extra_pos in 0usize..3, extra_neg in 0usize..3, k in 1usize..12) {
        let pos = labels.iter().filter(|&&l| l).count() + extra_pos;
        let neg = labels.len() - (pos - extra_pos) + extra_neg;
        let k = k.min(labels.len());
        let l = BinaryJudgedList::new(labels, pos, neg).unwrap();
        let unit = 0.0..=1.0;
        prop_assert!(unit.contains(&precision_at_k(&l, k).unwrap()));
        prop_assert!(unit.contains(&recall_at_k(&l, k).unwrap().value));
        prop_assert!(unit.contains(&average_precision(&l).value));
        prop_assert!(unit.contains(&mrr(&l)));
        prop_assert!(unit.contains(&bpref(&l).value));
    }

    #[test]
    fn f1_and_g_in_unit_interval(tp in 0usize..10, fp in 0usize..10, fn_ in 0usize..10) {
        let c = ConfusionCounts { true_positives: tp, false_positives: fp, false_negatives: fn_, true_negatives: 0 };
        let (f, g) = (f1(&c).value, g_measure(&c).value);
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((0.0..=1.0).contains(&g));
        prop_assert!(f <= g + 1e-12);
    }

    #[test]
    fn binarize_is_monotone(a in 0u8..=4, b in 0u8..=4, t in 0u8..=6) {
        if a <= b {
            prop_assert!(binarize(a, t) <= binarize(b, t));
        }
    }

    #[test]
    fn ndcg_equals_relevance_only_nwcs(grades in grade_pairs(10)) {
        let unit = unit_from_grades(&grades);
        let rel = unit.scores(Dimension::Relevance);
        let a = ndcg(&rel, Gain::Linear, rel.len()).unwrap().value;
        let b = nwcs(&ScoredRanking::from_unit(&unit), 1.0).score;
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn grade_lookup_stays_on_scale(grades in grade_pairs(10), unjudged in 0usize..3) {
        let mut list = RankedList::new("q", "a", (0..grades.len()).map(|i| format!("d{i}")));
        list.docs.extend((0..unjudged).map(|i| format!("u{i}")));
        let js = unit_from_grades(&grades).judgments();
        let unit = validate_unit(&list, &js, UnjudgedPolicy::Zero).unwrap();
        for id in &list.docs {
            for d in [Dimension::Relevance, Dimension::Credibility] {
                prop_assert!(unit.grade_of(id, d).unwrap() <= 4);
            }
        }
        let again = validate_unit(&unit.ranked_list(), &unit.judgments(), UnjudgedPolicy::Zero).unwrap();
        prop_assert_eq!(unit, again);
    }

    #[test]
    fn spearman_is_symmetric_and_bounded(x in proptest::collection::vec(0.0f64..1.0, 2..20), seed in any::<u64>()) {
        let mut y = x.clone();
        let len = y.len();
        y.rotate_left((seed as usize) % len);
        if let Some(rho) = spearman(&x, &y) {
            prop_assert!((-1.0..=1.0).contains(&rho));
            prop_assert_eq!(Some(rho), spearman(&y, &x));
        }
    }

    #[test]
    fn parsing_and_evaluation_ignore_line_order(
        groups in proptest::collection::vec(grade_pairs(5), 1..5),
        seed in any::<u64>(),
    ) {
        let mut lines = Vec::new();
        for (g, grades) in groups.iter().enumerate() {
            for (i, (r, c)) in grades.iter().enumerate() {
                lines.push(format!("q{} a{} {} d{} {} {}", g % 2, g, i + 1, i, r, c));
            }
        }
        let text = lines.join("\n");
        let mut shuffled = lines.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed as usize) % len);
        if len > 1 {
            shuffled.swap(0, (seed as usize / 7) % len);
        }
        let shuffled = shuffled.join("\n");
        let a = parse_assessed_rankings(&text).unwrap();
        let b = parse_assessed_rankings(&shuffled).unwrap();
        prop_assert_eq!(&a, &b);

        let specs = parse_measure_list("nlre,ngre,nwcs,ndcg,ap,f1,wham:ndcg+g").unwrap();
        let cfg = MeasureConfig::default();
        let mut reversed = a.clone();
        reversed.reverse();
        let ra = write_report(&evaluate(&a, &specs, &cfg).unwrap(), ReportFormat::Tsv);
        let rb = write_report(&evaluate(&reversed, &specs, &cfg).unwrap(), ReportFormat::Tsv);
        prop_assert_eq!(ra, rb);
    }
}
