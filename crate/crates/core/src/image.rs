//! Exhaustive computation of verbal images: the set of values a word takes as
//! its variables range over a whole group.
//!
//! Two independent strategies are kept deliberately separate so they can
//! cross-check each other: `Naive` enumerates every tuple of the occurring
//! variables; `ClassReduced` pins the first occurring variable to conjugacy
//! class representatives and closes the hits under conjugation, which is
//! sound because images are conjugation-invariant. Both return the same
//! canonical sorted index set.

use crate::bits::Bits;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::group::{Elem, FiniteGroup};
use crate::subset::SubsetSpec;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Naive,
    ClassReduced,
}

impl Strategy {
    pub fn label(&self) -> &'static str {
        match self {
            Strategy::Naive => "naive",
            Strategy::ClassReduced => "class-reduced",
        }
    }
}

/// Number of word evaluations the given strategy would perform.
pub fn evaluation_count(g: &FiniteGroup, w: &Word, strategy: Strategy) -> u128 {
    let occurring = w.occurring();
    if occurring.is_empty() {
        return 0;
    }
    let n = g.order() as u128;
    let rest = n.saturating_pow(occurring.len() as u32 - 1);
    let first = match strategy {
        Strategy::Naive => n,
        Strategy::ClassReduced => g.conjugacy_classes().count() as u128,
    };
    first.saturating_mul(rest)
}

/// The verbal image w(G) = { w(t) : t ∈ G^k }, as a canonical sorted subset.
///
/// The evaluation budget is checked before any enumeration starts; only
/// variables that actually occur in the word contribute to the tuple space.
pub fn verbal_image(
    g: &FiniteGroup,
    w: &Word,
    strategy: Strategy,
    caps: &Caps,
    exec: Exec,
) -> Result<SubsetSpec> {
    let occurring = w.occurring();
    if occurring.is_empty() {
        // The empty word evaluates to the identity everywhere.
        return Ok(SubsetSpec::identity_only(g));
    }
    let evals = evaluation_count(g, w, strategy);
    let work = evals.saturating_mul(w.len().max(1) as u128);
    if work > caps.eval_budget {
        return Err(Error::Budget {
            what: "verbal-image enumeration (evaluations × word length)",
            needed: work,
            budget: caps.eval_budget,
        });
    }

    let n = g.order();
    let k_occ = occurring.len();
    let rank = w.rank() as usize;
    let classes = g.conjugacy_classes();
    let first_domain: Vec<Elem> = match strategy {
        Strategy::Naive => g.elements().collect(),
        Strategy::ClassReduced => classes.classes.iter().map(|c| c.rep).collect(),
    };

    let total = first_domain.len() as u64 * n.pow(k_occ as u32 - 1);
    let eval_chunk = |start: u64, end: u64| -> Bits {
        let mut hits = Bits::new(n);
        let mut tuple = vec![Elem(0); rank];
        for idx in start..end {
            // Mixed-radix decode: most significant digit selects the first
            // occurring variable's value from its domain, the rest range over
            // the whole group.
            let mut rem = idx;
            for pos in (1..k_occ).rev() {
                tuple[(occurring[pos] - 1) as usize] = Elem((rem % n) as u32);
                rem /= n;
            }
            tuple[(occurring[0] - 1) as usize] = first_domain[rem as usize];
            let value = w
                .evaluate(&tuple, g)
                .expect("tuple constructed to match the word's rank");
            hits.set(value.0 as u64);
        }
        hits
    };
    let hits = exec::sweep(exec, total, 4096, eval_chunk, |mut x, y| {
        x.or_assign(&y);
        x
    })
    .unwrap_or_else(|| Bits::new(n));

    let image_bits = match strategy {
        Strategy::Naive => hits,
        Strategy::ClassReduced => {
            // Close under conjugation: every hit drags in its whole class.
            let mut closed = Bits::new(n);
            let mut class_done = vec![false; classes.count()];
            for i in hits.ones() {
                let c = classes.class_index(Elem(i as u32));
                if !class_done[c] {
                    class_done[c] = true;
                    for m in &classes.classes[c].members {
                        closed.set(m.0 as u64);
                    }
                }
            }
            closed
        }
    };

    // Images are conjugation-invariant, so the result must be a union of
    // whole conjugacy classes; anything else indicates an evaluation bug.
    let mut per_class = vec![0u64; classes.count()];
    for i in image_bits.ones() {
        per_class[classes.class_index(Elem(i as u32))] += 1;
    }
    for (c, &count) in per_class.iter().enumerate() {
        let size = classes.classes[c].members.len() as u64;
        if count != 0 && count != size {
            return Err(Error::mismatch(format!(
                "image covers {count} of {size} elements of the class of {}",
                g.display_elem(classes.classes[c].rep)
            )));
        }
    }

    Ok(SubsetSpec::from_bits(g, &image_bits))
}

/// Indices of the conjugacy classes contained in the subset (the subset must
/// be conjugation-closed, which verbal images always are).
pub fn class_indices(g: &FiniteGroup, subset: &SubsetSpec) -> Vec<usize> {
    let classes = g.conjugacy_classes();
    let mut seen = vec![false; classes.count()];
    let mut out = Vec::new();
    for e in subset.elements() {
        let c = classes.class_index(e);
        if !seen[c] {
            seen[c] = true;
            out.push(c);
        }
    }
    out.sort_unstable();
    out
}

/// Parity cross-check for verbal images over permutation groups.
///
/// The parity of w(t) is Σᵢ eᵢ·parity(tᵢ) mod 2, where eᵢ is the exponent sum
/// of variable i. Hence: all exponent sums even ⟺ the image lies in the
/// even-permutation subgroup. Violations are reported as errors, never
/// ignored.
#[derive(Debug, Clone, Copy)]
pub struct ParityCheck {
    pub all_exponent_sums_even: bool,
    pub image_all_even: bool,
    pub contains_two_power_set: bool,
}

/// Cross-checks two facts that must hold of any verbal image over a symmetric
/// group: if every exponent sum of the word is even, the image lies inside the
/// even subgroup; and if some exponent sum is odd, the image contains the whole
/// set of 2-power-order elements. A violation of either implication is an
/// internal error, reported loudly rather than returned as data.
pub fn parity_check(g: &FiniteGroup, w: &Word, image: &SubsetSpec) -> Result<ParityCheck> {
    let mut all_even = true;
    for v in 1..=w.rank() {
        if w.exponent_sum(v)? % 2 != 0 {
            all_even = false;
            break;
        }
    }
    let mut image_even = true;
    for e in image.elements() {
        if !g.parity_even(e)? {
            image_even = false;
            break;
        }
    }
    let image_bits = image.bits(g);
    let two_power = g.two_power_indices();
    let contains_two_power = two_power.ones().all(|i| image_bits.get(i));
    if all_even && !image_even {
        return Err(Error::mismatch(
            "parity invariant violated: all exponent sums even but the image \
             leaves the even subgroup",
        ));
    }
    if !all_even && !contains_two_power {
        return Err(Error::mismatch(
            "parity invariant violated: some exponent sum is odd but the image \
             misses part of the 2-power-order set",
        ));
    }
    Ok(ParityCheck {
        all_exponent_sums_even: all_even,
        image_all_even: image_even,
        contains_two_power_set: contains_two_power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load::load_group;

    fn caps() -> Caps {
        Caps::default()
    }

    fn image(g: &FiniteGroup, word: &str, rank: u8, strategy: Strategy) -> SubsetSpec {
        let w = Word::parse(word, rank).unwrap();
        verbal_image(g, &w, strategy, &caps(), Exec::Seq).unwrap()
    }

    #[test]
    fn squares_in_sym4_form_the_even_subgroup() {
        let g = load_group("sym:4", &caps()).unwrap();
        let img = image(&g, "x^2", 1, Strategy::Naive);
        assert_eq!(img.len(), 12);
        assert!(img.elements().all(|e| g.parity_even(e).unwrap()));
        assert!(img.contains_identity());
    }

    #[test]
    fn cubes_in_sym4_are_the_two_power_elements() {
        let g = load_group("sym:4", &caps()).unwrap();
        let img = image(&g, "x^3", 1, Strategy::Naive);
        assert_eq!(img.len(), 16);
        assert_eq!(img, SubsetSpec::two_power(&g));
    }

    #[test]
    fn odd_exponent_image_in_sym5() {
        // Raising to the odd part of the exponent kills all odd-order parts:
        // exactly the 2-power-order elements remain.
        let g = load_group("sym:5", &caps()).unwrap();
        let img = image(&g, "x^15", 1, Strategy::Naive);
        assert_eq!(img.len(), 56);
        assert_eq!(img, SubsetSpec::two_power(&g));
    }

    #[test]
    fn commutator_image_covers_alt5() {
        let g = load_group("alt:5", &caps()).unwrap();
        let img = image(&g, "[x,y]", 2, Strategy::Naive);
        assert_eq!(img.len(), 60);
    }

    #[test]
    fn empty_word_image_is_identity() {
        let g = load_group("sym:4", &caps()).unwrap();
        let img = image(&g, "", 2, Strategy::Naive);
        assert_eq!(img.indices(), &[0]);
        // A word with unused variables only evaluates over occurring ones.
        let img = image(&g, "y y^-1", 2, Strategy::Naive);
        assert_eq!(img.indices(), &[0]);
    }

    #[test]
    fn single_variable_word_covers_group() {
        let g = load_group("sym:4", &caps()).unwrap();
        let img = image(&g, "x", 2, Strategy::Naive);
        assert_eq!(img.len(), 24);
    }

    #[test]
    fn class_reduced_matches_naive() {
        for (spec, word, rank) in [
            ("sym:4", "x^2", 1u8),
            ("sym:4", "x^3", 1),
            ("sym:5", "x^15", 1),
            ("alt:5", "[x,y]", 2),
            ("sym:4", "x^2 y^2", 2),
            ("sl:2:3", "x^2 y x", 2),
        ] {
            let g = load_group(spec, &caps()).unwrap();
            let naive = image(&g, word, rank, Strategy::Naive);
            let reduced = image(&g, word, rank, Strategy::ClassReduced);
            assert_eq!(naive, reduced, "strategies disagree on {word} over {spec}");
        }
    }

    #[test]
    fn parallel_image_matches_sequential() {
        let g = load_group("alt:5", &caps()).unwrap();
        let w = Word::parse("[x,y]", 2).unwrap();
        let seq = verbal_image(&g, &w, Strategy::Naive, &caps(), Exec::Seq).unwrap();
        let par = verbal_image(&g, &w, Strategy::Naive, &caps(), Exec::threads(4)).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn budget_refusal_reports_needed_work() {
        let g = load_group("sym:5", &caps()).unwrap();
        let w = Word::parse("x1 x2 x3 x4 x5", 5).unwrap();
        match verbal_image(&g, &w, Strategy::Naive, &caps(), Exec::Seq) {
            Err(Error::Budget { needed, budget, .. }) => {
                assert_eq!(needed, 120u128.pow(5) * 5);
                assert_eq!(budget, caps().eval_budget);
            }
            other => panic!("expected budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn parity_check_consistency() {
        let g = load_group("sym:4", &caps()).unwrap();
        let even_word = Word::parse("x^2 y^2", 2).unwrap();
        let img = verbal_image(&g, &even_word, Strategy::Naive, &caps(), Exec::Seq).unwrap();
        let check = parity_check(&g, &even_word, &img).unwrap();
        assert!(check.all_exponent_sums_even);
        assert!(check.image_all_even);

        let odd_word = Word::parse("x y", 2).unwrap();
        let img = verbal_image(&g, &odd_word, Strategy::Naive, &caps(), Exec::Seq).unwrap();
        let check = parity_check(&g, &odd_word, &img).unwrap();
        assert!(!check.all_exponent_sums_even);
        assert!(!check.image_all_even);
        assert!(check.contains_two_power_set);

        // The cube map on Sym(4) has odd exponent sum and lands exactly on the
        // 2-power-order elements.
        let cube = Word::parse("x^3", 1).unwrap();
        let img = verbal_image(&g, &cube, Strategy::Naive, &caps(), Exec::Seq).unwrap();
        let check = parity_check(&g, &cube, &img).unwrap();
        assert!(!check.all_exponent_sums_even);
        assert!(check.contains_two_power_set);

        // Deliberately inconsistent pairing is refused.
        let fake = SubsetSpec::identity_only(&g);
        assert!(parity_check(&g, &odd_word, &fake).is_err());
    }

    #[test]
    fn class_summary_lists_contained_classes() {
        let g = load_group("sym:4", &caps()).unwrap();
        let w = Word::parse("x^2", 1).unwrap();
        let img = verbal_image(&g, &w, Strategy::Naive, &caps(), Exec::Seq).unwrap();
        let classes = class_indices(&g, &img);
        // Identity, double transpositions, 3-cycles.
        assert_eq!(classes.len(), 3);
        assert!(classes.contains(&0));
    }

    #[test]
    fn evaluation_counts() {
        let g = load_group("sym:4", &caps()).unwrap();
        let w = Word::parse("[x,y]", 2).unwrap();
        assert_eq!(evaluation_count(&g, &w, Strategy::Naive), 24 * 24);
        assert_eq!(
            evaluation_count(&g, &w, Strategy::ClassReduced),
            5 * 24
        );
        let empty = Word::parse("", 2).unwrap();
        assert_eq!(evaluation_count(&g, &empty, Strategy::Naive), 0);
    }
}
