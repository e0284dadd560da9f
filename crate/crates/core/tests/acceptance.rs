//! Acceptance gate: the eleven headline checks this toolkit must pass, each
//! with a stated wall-clock budget. Every test prints one PASS line carrying
//! the measured numbers so a log skim shows the whole gate at a glance.

use std::time::{Duration, Instant};

use wordmap_core::aut::{automorphism_group, pair_table, PairMode};
use wordmap_core::bounds::{alt_cover_report, sl2p_report, sl_report, ExactReal};
use wordmap_core::construct::{
    audit_images, classify_subset, conjugate_power_audit, find_word, lemma22_check,
    sample_independent_pairs, star_check, CaseTag, Constraint, SearchOutcome, SearchStrategy,
    TargetAssignment,
};
use wordmap_core::group::load::load_group;
use wordmap_core::group::subgroup::stable_derived_term;
use wordmap_core::image::{verbal_image, Strategy};
use wordmap_core::subset::{parse_element_literal, SubsetSpec};
use wordmap_core::word::{all_letter_strings, evaluate_letters, random_reduced};
use wordmap_core::{Caps, Exec, FiniteGroup, Word};

fn caps() -> Caps {
    Caps::default()
}

fn within(start: Instant, budget: Duration, what: &str) -> Duration {
    let took = start.elapsed();
    assert!(
        took <= budget,
        "{what} took {took:?}, over the {budget:?} budget"
    );
    took
}

/// a/b strictly greater than c/d, by cross multiplication.
fn frac_gt(a: u64, b: u64, c: u64, d: u64) -> bool {
    (a as u128) * (d as u128) > (c as u128) * (b as u128)
}

#[test]
fn acceptance_01_class_counts_of_double_cover_and_alt_six() {
    let start = Instant::now();
    let sl25 = load_group("sl:2:5", &caps()).unwrap();
    let k_sl25 = sl25.conjugacy_classes().count();
    let took_a = within(start, Duration::from_secs(1), "classes of sl:2:5");
    assert_eq!(k_sl25, 9);

    let start = Instant::now();
    let a6 = load_group("alt:6", &caps()).unwrap();
    let k_a6 = a6.conjugacy_classes().count();
    let took_b = within(start, Duration::from_secs(1), "classes of alt:6");
    assert_eq!(k_a6, 7);
    println!(
        "[PASS] 1: class counts k(sl:2:5) = {k_sl25}, k(alt:6) = {k_a6} \
         ({took_a:?} / {took_b:?})"
    );
}

#[test]
fn acceptance_02_generating_pairs_of_alt_five_inside_probability_window() {
    let start = Instant::now();
    let g = load_group("alt:5", &caps()).unwrap();
    let act = automorphism_group(&g, &caps()).unwrap();
    let table = pair_table(&g, &PairMode::Plain, &act, &caps(), Exec::Seq).unwrap();
    assert_eq!(table.l(), 2280);
    assert_eq!(table.r(), 19);
    // p = 2280/3600 = 19/30 must lie strictly inside (7/25, 62/75].
    let (l, sq) = (table.l(), g.order() * g.order());
    assert!(frac_gt(l, sq, 7, 25));
    assert!(frac_gt(62, 75, l, sq));
    let took = within(start, Duration::from_secs(60), "pair census of alt:5");
    println!(
        "[PASS] 2: alt:5 generating pairs l = {}, orbits r = {}, p = 19/30 \
         inside (7/25, 62/75] ({took:?})",
        table.l(),
        table.r()
    );
}

#[test]
fn acceptance_03_three_reference_images() {
    // Odd-exponent power word: exactly the 2-power-order elements, odd case.
    let start = Instant::now();
    let s5 = load_group("sym:5", &caps()).unwrap();
    let act5 = automorphism_group(&s5, &caps()).unwrap();
    let w = Word::parse("x^15", 2).unwrap();
    let img = verbal_image(&s5, &w, Strategy::ClassReduced, &caps(), Exec::Seq).unwrap();
    assert_eq!(img.len(), 56);
    assert_eq!(img, SubsetSpec::two_power(&s5));
    let cls = classify_subset(&s5, &act5, &img).unwrap();
    assert!(matches!(cls.tag, CaseTag::CaseII));
    let t1 = within(start, Duration::from_secs(30), "image of x^15 over sym:5");

    // Squares in sym:4 are exactly the even permutations.
    let start = Instant::now();
    let s4 = load_group("sym:4", &caps()).unwrap();
    let sq = Word::parse("x^2", 2).unwrap();
    let img4 = verbal_image(&s4, &sq, Strategy::ClassReduced, &caps(), Exec::Seq).unwrap();
    let alt4: Vec<u32> = (0..s4.order() as u32)
        .filter(|&i| s4.parity_even(wordmap_core::Elem(i)).unwrap())
        .collect();
    assert_eq!(img4, SubsetSpec::from_indices(&s4, alt4).unwrap());
    assert_eq!(img4.len(), 12);
    let t2 = within(start, Duration::from_secs(30), "image of x^2 over sym:4");

    // The commutator word is surjective on alt:5.
    let start = Instant::now();
    let a5 = load_group("alt:5", &caps()).unwrap();
    let comm = Word::parse("[x, y]", 2).unwrap();
    let img5 = verbal_image(&a5, &comm, Strategy::ClassReduced, &caps(), Exec::Seq).unwrap();
    assert_eq!(img5, SubsetSpec::whole(&a5));
    assert_eq!(img5.len(), 60);
    let t3 = within(start, Duration::from_secs(30), "image of [x,y] over alt:5");
    println!(
        "[PASS] 3: image(x^15, sym:5) = 2-power set (56, odd case); \
         image(x^2, sym:4) = even part (12); image([x,y], alt:5) = all 60 \
         ({t1:?} / {t2:?} / {t3:?})"
    );
}

#[test]
fn acceptance_04_random_word_audits_find_no_dichotomy_violation() {
    let start = Instant::now();
    let s5 = load_group("sym:5", &caps()).unwrap();
    let act5 = automorphism_group(&s5, &caps()).unwrap();
    let r5 = audit_images(&s5, &act5, 200, 12, 2024, &caps(), Exec::Seq).unwrap();
    assert_eq!(r5.words.len(), 200);
    assert!(
        r5.violations.is_empty(),
        "sym:5 audit violations: {:?}",
        r5.violations
    );

    let s6 = load_group("sym:6", &caps()).unwrap();
    let act6 = automorphism_group(&s6, &caps()).unwrap();
    let r6 = audit_images(&s6, &act6, 100, 12, 2025, &caps(), Exec::Seq).unwrap();
    assert_eq!(r6.words.len(), 100);
    assert!(
        r6.violations.is_empty(),
        "sym:6 audit violations: {:?}",
        r6.violations
    );
    let took = within(start, Duration::from_secs(600), "random-word audits");
    println!(
        "[PASS] 4: 200 random words over sym:5 ({} even / {} odd) and 100 over \
         sym:6 ({} even / {} odd), zero violations ({took:?})",
        r5.case_i, r5.case_ii, r6.case_i, r6.case_ii
    );
}

#[test]
fn acceptance_05_conjugate_power_fact_across_degrees() {
    let start = Instant::now();
    let mut checked_total = 0u64;
    for n in 5..=8usize {
        let g = load_group(&format!("sym:{n}"), &caps()).unwrap();
        let report = conjugate_power_audit(&g).unwrap();
        assert_eq!(report.checked, g.order());
        assert!(
            report.counterexamples.is_empty(),
            "degree {n}: {:?}",
            report.counterexamples
        );
        checked_total += report.checked;
    }
    let took = within(start, Duration::from_secs(10), "conjugate-power audits");
    println!(
        "[PASS] 5: conjugate-power fact holds for all {checked_total} elements \
         of sym:5..sym:8 ({took:?})"
    );
}

#[test]
fn acceptance_06_independent_pairs_generate_direct_powers() {
    let start = Instant::now();
    let g = load_group("sym:5", &caps()).unwrap();
    let act = automorphism_group(&g, &caps()).unwrap();
    let socle = stable_derived_term(&g).unwrap();
    assert_eq!(socle.order(), 60);
    for seed in 0..25u64 {
        for copies in [2usize, 3] {
            let tuples = sample_independent_pairs(&g, &act, copies, seed).unwrap();
            let report = lemma22_check(&g, &socle, &tuples, copies, &act).unwrap();
            assert_eq!(report.points, copies * 5);
            assert!(
                report.passes(),
                "seed {seed}, {copies} copies: {report:?}"
            );
        }
    }
    let took = within(start, Duration::from_secs(60), "direct-power generation");
    println!(
        "[PASS] 6: 25 seeded families of 2 and 3 independent generating pairs \
         of sym:5 generate the direct square/cube (stab chains on 10/15 points) \
         ({took:?})"
    );
}

#[test]
fn acceptance_07_margin_property_for_double_cover() {
    let start = Instant::now();
    let g = load_group("sl:2:5", &caps()).unwrap();
    let report = star_check(&g, &caps(), Exec::Seq).unwrap();
    assert!(report.r >= 9, "r = {}", report.r);
    assert!(report.k_worst <= 9, "k = {}", report.k_worst);
    assert!(report.star_holds);
    let took = within(start, Duration::from_secs(120), "margin property");
    println!(
        "[PASS] 7: sl:2:5 pair orbits r = {} >= 9 >= k_worst = {}, margin \
         property holds ({took:?})",
        report.r, report.k_worst
    );
}

#[test]
fn acceptance_08_bound_chains_evaluate_exactly() {
    let start = Instant::now();
    let p5 = sl2p_report(5).unwrap();
    assert!(p5.verdict);
    assert!(matches!(&p5.d_lower, ExactReal::Rat(_)));
    assert_eq!(p5.d_lower.to_string(), "12");
    assert_eq!(p5.k_upper.to_string(), "9");

    let sl104 = sl_report(10, 4).unwrap();
    assert!(sl104.verdict);
    assert!(matches!(&sl104.d_lower, ExactReal::Rat(_)));

    let alt6 = alt_cover_report(6, None, Some(7)).unwrap();
    assert!(alt6.verdict);
    assert_eq!(alt6.d_lower.to_string(), "85/2");
    assert_eq!(alt6.k_upper.to_string(), "42");

    // k(sym:5) = 7 <= 9 = 3^((5-1)/2), the class bound at the smallest degree.
    let s5 = load_group("sym:5", &caps()).unwrap();
    let k = s5.conjugacy_classes().count();
    assert_eq!(k, 7);
    assert!(k <= 9);
    let took = within(start, Duration::from_secs(1), "bound chains");
    println!(
        "[PASS] 8: sl2p(5) 12 >= 9; sl(10,4) holds; alt cover 6: ceil(85/2) >= 42; \
         k(sym:5) = 7 <= 9; all exact-rational ({took:?})"
    );
}

#[test]
fn acceptance_09_outer_automorphism_of_sym_six_by_brute_force() {
    let start = Instant::now();
    let g = load_group("sym:6", &caps()).unwrap();
    let act = automorphism_group(&g, &caps()).unwrap();
    assert_eq!(act.count(), 1440);
    assert_eq!(act.inner_count(), 720);
    assert_eq!(act.count() / act.inner_count(), 2);
    let took = within(start, Duration::from_secs(120), "automorphisms of sym:6");
    println!(
        "[PASS] 9: Aut(sym:6) has order 1440 with inner index 2, by brute force \
         ({took:?})"
    );
}

#[test]
fn acceptance_10_evaluation_strategies_agree() {
    let start = Instant::now();
    // Exhaustive: every raw letter string of length <= 6 over two variables.
    let s3 = load_group("sym:3", &caps()).unwrap();
    let mut compared = 0usize;
    for letters in all_letter_strings(2, 6) {
        let w = Word::from_letters(2, &letters).unwrap();
        let naive = verbal_image(&s3, &w, Strategy::Naive, &caps(), Exec::Seq).unwrap();
        let reduced = verbal_image(&s3, &w, Strategy::ClassReduced, &caps(), Exec::Seq).unwrap();
        assert_eq!(
            format!("{:?}", naive.indices()),
            format!("{:?}", reduced.indices()),
            "strategies disagree on {w}"
        );
        compared += 1;
    }
    // Randomized: a seeded sample of reduced words over sym:4.
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(77);
    let s4 = load_group("sym:4", &caps()).unwrap();
    for i in 0..100 {
        let w = random_reduced(2, 1 + i % 10, &mut rng).unwrap();
        let naive = verbal_image(&s4, &w, Strategy::Naive, &caps(), Exec::Seq).unwrap();
        let reduced = verbal_image(&s4, &w, Strategy::ClassReduced, &caps(), Exec::Seq).unwrap();
        assert_eq!(
            format!("{:?}", naive.indices()),
            format!("{:?}", reduced.indices()),
            "strategies disagree on {w}"
        );
    }
    let took = within(start, Duration::from_secs(120), "strategy agreement");
    println!(
        "[PASS] 10: naive and class-reduced images byte-identical on {compared} \
         letter strings over sym:3 and 100 seeded words over sym:4 ({took:?})"
    );
}

fn two_constraint_target(g: &FiniteGroup) -> TargetAssignment {
    let e =
        |t: &str| -> wordmap_core::Elem { parse_element_literal(g, t).unwrap() };
    TargetAssignment::new(
        g,
        vec![
            Constraint {
                tuple: (e("(1 2 3)"), e("(1 2)")),
                required: e("(1 3 2)"),
                is_null: false,
            },
            Constraint {
                tuple: (e("(1 2)"), e("(1 3)")),
                required: e("()"),
                is_null: true,
            },
        ],
    )
    .unwrap()
}

#[test]
fn acceptance_11_search_witness_is_no_longer_than_exhaustive_optimum() {
    let start = Instant::now();
    let g = load_group("sym:3", &caps()).unwrap();
    let target = two_constraint_target(&g);
    let tuples: Vec<Vec<wordmap_core::Elem>> = target
        .constraints()
        .iter()
        .map(|c| vec![c.tuple.0, c.tuple.1])
        .collect();
    let required: Vec<wordmap_core::Elem> =
        target.constraints().iter().map(|c| c.required).collect();

    // Exhaustive optimum over every raw letter string of length <= 5.
    let mut optimum: Option<usize> = None;
    for letters in all_letter_strings(2, 5) {
        let hit = tuples
            .iter()
            .zip(&required)
            .all(|(t, want)| evaluate_letters(&letters, t, &g).unwrap() == *want);
        if hit {
            optimum = Some(optimum.map_or(letters.len(), |o: usize| o.min(letters.len())));
        }
    }
    let optimum = optimum.expect("a witness of length <= 5 exists");

    let found = find_word(&g, &target, 5, SearchStrategy::Bfs, 0, &caps()).unwrap();
    let word = found.word().expect("breadth-first search finds a witness");
    assert!(
        word.len() <= optimum,
        "search produced length {} but the optimum is {optimum}",
        word.len()
    );

    // Zero budget must be reported as not-found, never as a refutation.
    let empty = find_word(&g, &target, 0, SearchStrategy::Bfs, 0, &caps()).unwrap();
    assert!(matches!(empty, SearchOutcome::NotFound { explored: 0 }));
    let took = within(start, Duration::from_secs(60), "search optimality");
    println!(
        "[PASS] 11: breadth-first witness length {} <= exhaustive optimum \
         {optimum}; zero budget reports not-found ({took:?})",
        word.len()
    );
}
