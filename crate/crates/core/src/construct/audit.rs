//! Classification and audit machinery for verbal images over symmetric
//! groups.
//!
//! Over `Sym(n)` with `n ≥ 5`, a subset is a verbal image exactly when it
//! contains the identity, is automorphism-invariant, and either stays inside
//! the even subgroup or contains every element of 2-power order. The
//! classifier names the violated condition when a set fails; the auditors
//! hammer on the dichotomy with random words and verify the coprime-power
//! fact the odd case rests on.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::aut::AutAction;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{two_part, ElementRepr, FiniteGroup, GroupKind};
use crate::image::{verbal_image, Strategy};
use crate::subset::SubsetSpec;
use crate::word::{random_reduced, Word};

use super::target::symmetric_exponent;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// Inside the even subgroup.
    CaseI,
    /// Leaves the even subgroup and contains all 2-power-order elements.
    CaseII,
    NotRealizable,
}

impl CaseTag {
    pub fn label(&self) -> &'static str {
        match self {
            CaseTag::CaseI => "case-i",
            CaseTag::CaseII => "case-ii",
            CaseTag::NotRealizable => "not-realizable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub tag: CaseTag,
    /// For the odd case: the invariant remainder `B = (A ∖ C) ∪ {e}`, so that
    /// `A = B ∪ C` splits into an even invariant part and the 2-power set.
    pub invariant_part: Option<SubsetSpec>,
    /// For the odd case: confirmation that the 2-power set is contained.
    pub two_power_contained: Option<bool>,
    /// For unrealizable sets: which condition failed.
    pub failed_condition: Option<String>,
}

/// Require `g` to be a full symmetric group of degree ≥ `min_degree`.
fn require_symmetric(g: &FiniteGroup, min_degree: usize, max_degree: usize) -> Result<usize> {
    let n = g.degree();
    let mut fact: u64 = 1;
    for k in 2..=n as u64 {
        fact = fact.saturating_mul(k);
    }
    if g.kind() != GroupKind::Perm || g.order() != fact {
        return Err(Error::unsupported(
            "this operation applies to full symmetric groups only",
        ));
    }
    if n < min_degree || n > max_degree {
        return Err(Error::unsupported(format!(
            "degree {n} outside the supported range {min_degree}..={max_degree}"
        )));
    }
    Ok(n)
}

/// Decide whether a subset of `Sym(n)`, `n ≥ 5`, is a verbal image, and if so
/// which side of the dichotomy it lands on.
pub fn classify_subset(
    g: &FiniteGroup,
    act: &AutAction,
    a: &SubsetSpec,
) -> Result<ClassificationResult> {
    require_symmetric(g, 5, usize::MAX)?;
    g.check_owns(act.group_id(), "automorphism action")?;
    g.check_owns(a.group_id(), "subset")?;
    let not_realizable = |why: String| ClassificationResult {
        tag: CaseTag::NotRealizable,
        invariant_part: None,
        two_power_contained: None,
        failed_condition: Some(why),
    };
    if !a.contains_identity() {
        return Ok(not_realizable(
            "the identity is missing; every word evaluates to the identity \
             somewhere"
                .to_string(),
        ));
    }
    if !act.is_invariant(a)? {
        return Ok(not_realizable(
            "the set is not automorphism-invariant; verbal images always are".to_string(),
        ));
    }
    let mut all_even = true;
    for e in a.elements() {
        if !g.parity_even(e)? {
            all_even = false;
            break;
        }
    }
    if all_even {
        return Ok(ClassificationResult {
            tag: CaseTag::CaseI,
            invariant_part: None,
            two_power_contained: None,
            failed_condition: None,
        });
    }
    let two_power = SubsetSpec::two_power(g);
    if a.is_superset_of(&two_power)? {
        let b = a.difference(&two_power)?.with_identity();
        return Ok(ClassificationResult {
            tag: CaseTag::CaseII,
            invariant_part: Some(b),
            two_power_contained: Some(true),
            failed_condition: None,
        });
    }
    let missing = two_power
        .elements()
        .find(|&e| !a.contains(e))
        .expect("some 2-power element is missing on this branch");
    Ok(not_realizable(format!(
        "the set leaves the even subgroup, so it must contain every element \
         of 2-power order, but {} is missing",
        g.display_elem(missing)
    )))
}

#[derive(Clone, Debug)]
pub struct PowerAuditReport {
    pub degree: usize,
    pub exponent: u64,
    pub exponent_two_part: u64,
    pub checked: u64,
    /// Elements violating coprimality or conjugacy, with a description.
    /// Expected empty.
    pub counterexamples: Vec<String>,
}

/// For every `a` in a symmetric group of degree ≤ 8, verify that the exponent
/// `t = e/e₂ + o(a)₂` is coprime to `o(a)` and that `a^t` has the same cycle
/// type as `a` (hence is conjugate to it). This is the fact that lets one
/// word repair the 2-part of every element order at once in the odd case.
pub fn conjugate_power_audit(g: &FiniteGroup) -> Result<PowerAuditReport> {
    let n = require_symmetric(g, 2, 8)?;
    let e = symmetric_exponent(n);
    let e2 = two_part(e);
    let e_odd = e / e2;
    let mut counterexamples = Vec::new();
    let mut checked = 0u64;
    for a in g.elements() {
        let o = g.element_order(a);
        let t = e_odd + two_part(o);
        checked += 1;
        if gcd(t, o) != 1 {
            counterexamples.push(format!(
                "gcd({t}, {o}) ≠ 1 at {}",
                g.display_elem(a)
            ));
            continue;
        }
        let powered = g.pow(a, t as i64);
        let (ca, cp) = match (g.repr(a), g.repr(powered)) {
            (ElementRepr::Perm(p), ElementRepr::Perm(q)) => (p.cycle_type(), q.cycle_type()),
            _ => unreachable!("symmetric groups carry permutation elements"),
        };
        if ca != cp {
            counterexamples.push(format!(
                "cycle type changed from {ca:?} to {cp:?} at {}",
                g.display_elem(a)
            ));
        }
    }
    Ok(PowerAuditReport {
        degree: n,
        exponent: e,
        exponent_two_part: e2,
        checked,
        counterexamples,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug)]
pub struct WordAudit {
    pub word: String,
    pub image_size: usize,
    pub tag: CaseTag,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub group: String,
    pub count: usize,
    pub max_len: usize,
    pub seed: u64,
    pub case_i: u64,
    pub case_ii: u64,
    pub words: Vec<WordAudit>,
    /// Words whose image failed classification, with the violated condition.
    /// Any entry falsifies the dichotomy at this degree.
    pub violations: Vec<(String, String)>,
}

/// Sample random reduced two-variable words (lengths uniform in
/// `1..=max_len`, words uniform per length), compute each verbal image, and
/// classify it. Deterministic given the seed.
pub fn audit_images(
    g: &FiniteGroup,
    act: &AutAction,
    count: usize,
    max_len: usize,
    seed: u64,
    caps: &Caps,
    exec: Exec,
) -> Result<AuditReport> {
    require_symmetric(g, 5, usize::MAX)?;
    if max_len == 0 {
        return Err(Error::precondition("maximum word length must be positive"));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut case_i = 0u64;
    let mut case_ii = 0u64;
    let mut words = Vec::with_capacity(count);
    let mut violations = Vec::new();
    for _ in 0..count {
        let len = rng.random_range(1..=max_len);
        let w: Word = random_reduced(2, len, &mut rng)?;
        let img = verbal_image(g, &w, Strategy::ClassReduced, caps, exec)?;
        let cls = classify_subset(g, act, &img)?;
        match cls.tag {
            CaseTag::CaseI => case_i += 1,
            CaseTag::CaseII => case_ii += 1,
            CaseTag::NotRealizable => violations.push((
                w.to_string(),
                cls.failed_condition
                    .unwrap_or_else(|| "unspecified".to_string()),
            )),
        }
        words.push(WordAudit {
            word: w.to_string(),
            image_size: img.len(),
            tag: cls.tag,
        });
    }
    Ok(AuditReport {
        group: g.name().to_string(),
        count,
        max_len,
        seed,
        case_i,
        case_ii,
        words,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::automorphism_group;
    use crate::group::load::load_group;
    use crate::subset::parse_subset;

    fn caps() -> Caps {
        Caps::default()
    }

    fn sym5() -> (FiniteGroup, AutAction) {
        let g = load_group("sym:5", &caps()).unwrap();
        let act = automorphism_group(&g, &caps()).unwrap();
        (g, act)
    }

    #[test]
    fn identity_set_is_case_one() {
        let (g, act) = sym5();
        let a = SubsetSpec::identity_only(&g);
        let cls = classify_subset(&g, &act, &a).unwrap();
        assert_eq!(cls.tag, CaseTag::CaseI);
        assert!(cls.failed_condition.is_none());
    }

    #[test]
    fn two_power_set_is_case_two_with_trivial_remainder() {
        let (g, act) = sym5();
        let a = SubsetSpec::two_power(&g);
        assert_eq!(a.len(), 56);
        let cls = classify_subset(&g, &act, &a).unwrap();
        assert_eq!(cls.tag, CaseTag::CaseII);
        assert_eq!(cls.two_power_contained, Some(true));
        let b = cls.invariant_part.unwrap();
        assert_eq!(b.len(), 1);
        assert!(b.contains_identity());
    }

    #[test]
    fn whole_group_is_case_two_with_even_remainder() {
        let (g, act) = sym5();
        let a = SubsetSpec::whole(&g);
        let cls = classify_subset(&g, &act, &a).unwrap();
        assert_eq!(cls.tag, CaseTag::CaseII);
        let b = cls.invariant_part.unwrap();
        // Everything outside the 2-power set, plus the identity.
        assert_eq!(b.len(), 120 - 56 + 1);
    }

    #[test]
    fn transpositions_without_four_cycles_are_not_realizable() {
        let (g, act) = sym5();
        let a = parse_subset(&g, "union: [identity; class-of: (1 2)]").unwrap();
        let cls = classify_subset(&g, &act, &a).unwrap();
        assert_eq!(cls.tag, CaseTag::NotRealizable);
        let why = cls.failed_condition.unwrap();
        assert!(why.contains("2-power"), "got: {why}");
    }

    #[test]
    fn missing_identity_and_non_invariance_are_named() {
        let (g, act) = sym5();
        let no_id = parse_subset(&g, "class-of: (1 2 3)").unwrap();
        let cls = classify_subset(&g, &act, &no_id).unwrap();
        assert_eq!(cls.tag, CaseTag::NotRealizable);
        assert!(cls.failed_condition.unwrap().contains("identity"));

        let lone = parse_subset(&g, "union: [identity; elem: (1 2 3)]").unwrap();
        let cls = classify_subset(&g, &act, &lone).unwrap();
        assert_eq!(cls.tag, CaseTag::NotRealizable);
        assert!(cls.failed_condition.unwrap().contains("invariant"));
    }

    #[test]
    fn small_degrees_and_foreign_groups_are_unsupported() {
        let g4 = load_group("sym:4", &caps()).unwrap();
        let act4 = automorphism_group(&g4, &caps()).unwrap();
        let a = SubsetSpec::identity_only(&g4);
        assert!(matches!(
            classify_subset(&g4, &act4, &a),
            Err(Error::Unsupported(_))
        ));
        let alt = load_group("alt:5", &caps()).unwrap();
        let act_alt = automorphism_group(&alt, &caps()).unwrap();
        let a = SubsetSpec::identity_only(&alt);
        assert!(matches!(
            classify_subset(&alt, &act_alt, &a),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn fifteenth_power_image_is_case_two() {
        let (g, act) = sym5();
        let w = Word::parse("x^15", 2).unwrap();
        let img = verbal_image(&g, &w, Strategy::ClassReduced, &caps(), Exec::Seq).unwrap();
        assert_eq!(img.len(), 56);
        let cls = classify_subset(&g, &act, &img).unwrap();
        assert_eq!(cls.tag, CaseTag::CaseII);
    }

    #[test]
    fn power_audit_clean_on_degree_five_with_frozen_example() {
        let g = load_group("sym:5", &caps()).unwrap();
        let report = conjugate_power_audit(&g).unwrap();
        assert_eq!(report.degree, 5);
        assert_eq!(report.exponent, 60);
        assert_eq!(report.exponent_two_part, 4);
        assert_eq!(report.checked, 120);
        assert!(report.counterexamples.is_empty());
        // Frozen instance: a 4-cycle has order 4, so t = 15 + 4 = 19 and
        // a^19 = a^3, another 4-cycle.
        let a = crate::subset::parse_element_literal(&g, "(1 2 3 4)").unwrap();
        assert_eq!(g.pow(a, 19), g.pow(a, 3));
        assert_eq!(g.element_order(g.pow(a, 19)), 4);
    }

    #[test]
    fn power_audit_rejects_degree_nine() {
        let g = load_group("sym:9", &caps()).unwrap();
        assert!(matches!(
            conjugate_power_audit(&g),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn seeded_audit_is_clean_and_deterministic() {
        let (g, act) = sym5();
        let r1 = audit_images(&g, &act, 20, 8, 7, &caps(), Exec::Seq).unwrap();
        let r2 = audit_images(&g, &act, 20, 8, 7, &caps(), Exec::Seq).unwrap();
        assert!(r1.violations.is_empty());
        assert_eq!(r1.count, 20);
        assert_eq!(r1.case_i + r1.case_ii, 20);
        assert_eq!(r1.seed, 7);
        let words1: Vec<&str> = r1.words.iter().map(|w| w.word.as_str()).collect();
        let words2: Vec<&str> = r2.words.iter().map(|w| w.word.as_str()).collect();
        assert_eq!(words1, words2);
    }

    #[test]
    fn single_letter_word_audits_as_case_two() {
        let (g, act) = sym5();
        let w = Word::parse("x", 2).unwrap();
        let img = verbal_image(&g, &w, Strategy::ClassReduced, &caps(), Exec::Seq).unwrap();
        assert_eq!(img.len(), 120);
        let cls = classify_subset(&g, &act, &img).unwrap();
        assert_eq!(cls.tag, CaseTag::CaseII);
        // The x-image of Sym(5) is everything, so the remainder is the
        // non-2-power elements together with the identity.
        assert_eq!(cls.invariant_part.unwrap().len(), 120 - 56 + 1);
    }
}
