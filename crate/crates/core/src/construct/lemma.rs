//! Product-generation check: given automorphism-independent generating pairs
//! `(a_j, b_j)` of a group `G` with a designated simple normal subgroup `S`,
//! the diagonal-style elements `h₁ = (a_1, …, a_m)` and `h₂ = (b_1, …, b_m)`
//! of `G^m` generate a subgroup containing the full product `S × ⋯ × S`.
//!
//! The check is mechanical: embed `G^m` as permutations on `m` disjoint copies
//! of a faithful `G`-action, build a stabilizer chain for `⟨h₁, h₂⟩`, and test
//! membership of every generator of every embedded socle factor. Violated
//! hypotheses (dependent pairs, non-generating pairs) are input errors, never
//! "counterexamples".

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::aut::AutAction;
use crate::error::{Error, Result};
use crate::group::subgroup::{self, PermClosure, Subgroup};
use crate::group::{Elem, ElementRepr, FiniteGroup, GroupKind};
use crate::perm::Perm;

/// Ceiling on the total permutation degree of the embedded product.
const MAX_EMBED_POINTS: usize = 10_000;

#[derive(Clone, Debug)]
pub struct Lemma22Report {
    /// Number of copies in the product (= number of tuples supplied).
    pub copies: usize,
    /// Number of tuples required to generate the whole group (the rest need
    /// only generate a subgroup containing the socle).
    pub full_generators: usize,
    /// Total permutation degree of the embedding.
    pub points: usize,
    /// Exact order of `⟨h₁, h₂⟩` from its stabilizer chain.
    pub subgroup_order: u128,
    pub socle_order: u64,
    /// Per copy: every generator of the embedded socle factor lies in
    /// `⟨h₁, h₂⟩`.
    pub factor_contained: Vec<bool>,
}

impl Lemma22Report {
    /// The conclusion under test: the subgroup contains the whole product of
    /// socle factors.
    pub fn passes(&self) -> bool {
        self.factor_contained.iter().all(|&c| c)
    }
}

/// A faithful permutation image of one element: native for permutation
/// groups, right-regular action on the element set otherwise.
fn element_perm(g: &FiniteGroup, e: Elem) -> Result<Perm> {
    match g.kind() {
        GroupKind::Perm => match g.repr(e) {
            ElementRepr::Perm(p) => Ok(p.clone()),
            _ => Err(Error::mismatch("permutation group with foreign element")),
        },
        GroupKind::Matrix | GroupKind::Cayley => {
            let n = g.order() as usize;
            let mut images = vec![0u16; n];
            for (i, slot) in images.iter_mut().enumerate() {
                let to = g.mul(Elem(i as u32), e).0;
                *slot = u16::try_from(to)
                    .map_err(|_| Error::unsupported("regular embedding needs order ≤ 65535"))?;
            }
            Perm::from_images(images)
        }
    }
}

/// Degree of the faithful action used by [`element_perm`].
fn embed_degree(g: &FiniteGroup) -> usize {
    match g.kind() {
        GroupKind::Perm => g.degree(),
        _ => g.order() as usize,
    }
}

/// The block-diagonal permutation acting as `parts[j]` on the j-th copy.
fn block_perm(degree: usize, parts: &[Perm]) -> Result<Perm> {
    let mut images = Vec::with_capacity(degree * parts.len());
    for (j, p) in parts.iter().enumerate() {
        let off = (j * degree) as u16;
        for point in 0..degree as u16 {
            images.push(off + p.apply(point));
        }
    }
    Perm::from_images(images)
}

/// Check pairwise automorphism-independence of pairs under the diagonal
/// action; returns the violating index pair if any.
fn dependent_pair(act: &AutAction, tuples: &[(Elem, Elem)]) -> Option<(usize, usize)> {
    for i in 0..tuples.len() {
        for j in (i + 1)..tuples.len() {
            let (ai, bi) = tuples[i];
            let (aj, bj) = tuples[j];
            for m in act.maps() {
                if m[ai.0 as usize] == aj.0 && m[bi.0 as usize] == bj.0 {
                    return Some((i, j));
                }
            }
        }
    }
    None
}

/// Verify that `⟨(a_1,…,a_m), (b_1,…,b_m)⟩ ≤ G^m` contains every socle
/// factor. The first `full_generators` tuples must generate `G` exactly; the
/// remaining tuples must generate a subgroup containing the socle. All
/// hypothesis failures are reported as errors, because a run on invalid
/// inputs would say nothing about the statement under test.
pub fn lemma22_check(
    g: &FiniteGroup,
    socle: &Subgroup,
    tuples: &[(Elem, Elem)],
    full_generators: usize,
    act: &AutAction,
) -> Result<Lemma22Report> {
    g.check_owns(socle.group_id(), "socle")?;
    g.check_owns(act.group_id(), "automorphism action")?;
    if tuples.is_empty() {
        return Err(Error::precondition("at least one tuple is required"));
    }
    if full_generators > tuples.len() {
        return Err(Error::precondition(
            "more full-generation tuples requested than tuples supplied",
        ));
    }
    if !subgroup::is_normal_under(g, socle, g.generators()) {
        return Err(Error::precondition("designated socle is not normal"));
    }
    let abelian = socle
        .gens()
        .iter()
        .all(|&x| socle.gens().iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
    if abelian || !subgroup::is_simple_subgroup(g, socle)? {
        return Err(Error::precondition(
            "designated socle is not a nonabelian simple subgroup",
        ));
    }
    for (i, &(a, b)) in tuples.iter().enumerate() {
        let span = subgroup::closure(g, &[a, b]);
        if i < full_generators {
            if span.order() != g.order() {
                return Err(Error::precondition(format!(
                    "tuple {i} does not generate the whole group — invalid \
                     input, not a counterexample"
                )));
            }
        } else if !socle_contained(socle, &span) {
            return Err(Error::precondition(format!(
                "tuple {i} does not generate a subgroup containing the socle — \
                 invalid input, not a counterexample"
            )));
        }
    }
    if let Some((i, j)) = dependent_pair(act, tuples) {
        return Err(Error::precondition(format!(
            "tuples {i} and {j} lie in one automorphism orbit — the \
             independence hypothesis fails, so this is an input error, not a \
             counterexample"
        )));
    }

    let degree = embed_degree(g);
    let m = tuples.len();
    let points = degree * m;
    if points > MAX_EMBED_POINTS {
        return Err(Error::Capacity {
            what: "embedded permutation degree",
            needed: points as u128,
            cap: MAX_EMBED_POINTS as u128,
        });
    }

    let identity_part = Perm::identity(degree);
    let h1_parts: Vec<Perm> = tuples
        .iter()
        .map(|&(a, _)| element_perm(g, a))
        .collect::<Result<_>>()?;
    let h2_parts: Vec<Perm> = tuples
        .iter()
        .map(|&(_, b)| element_perm(g, b))
        .collect::<Result<_>>()?;
    let h1 = block_perm(degree, &h1_parts)?;
    let h2 = block_perm(degree, &h2_parts)?;
    let chain = PermClosure::new(points, &[h1, h2])?;

    let socle_gens: Vec<Perm> = socle
        .gens()
        .iter()
        .map(|&s| element_perm(g, s))
        .collect::<Result<_>>()?;
    let mut factor_contained = Vec::with_capacity(m);
    for j in 0..m {
        let mut ok = true;
        for sp in &socle_gens {
            let mut parts: Vec<Perm> = vec![identity_part.clone(); m];
            parts[j] = sp.clone();
            let embedded = block_perm(degree, &parts)?;
            if !chain.contains(&embedded) {
                ok = false;
                break;
            }
        }
        factor_contained.push(ok);
    }

    Ok(Lemma22Report {
        copies: m,
        full_generators,
        points,
        subgroup_order: chain.order(),
        socle_order: socle.order(),
        factor_contained,
    })
}

fn socle_contained(socle: &Subgroup, span: &Subgroup) -> bool {
    socle.elements().all(|e| span.contains(e))
}

/// Sample `m` pairwise automorphism-independent generating pairs of `g`,
/// uniformly at random with a fixed seed. Deterministic given the seed.
pub fn sample_independent_pairs(
    g: &FiniteGroup,
    act: &AutAction,
    m: usize,
    seed: u64,
) -> Result<Vec<(Elem, Elem)>> {
    g.check_owns(act.group_id(), "automorphism action")?;
    let n = g.order() as u32;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut chosen: Vec<(Elem, Elem)> = Vec::with_capacity(m);
    let mut attempts = 0u64;
    let attempt_cap = 200_000u64.max(m as u64 * 1_000);
    while chosen.len() < m {
        attempts += 1;
        if attempts > attempt_cap {
            return Err(Error::Capacity {
                what: "attempts sampling independent generating pairs",
                needed: attempts as u128,
                cap: attempt_cap as u128,
            });
        }
        let a = Elem(rng.random_range(0..n));
        let b = Elem(rng.random_range(0..n));
        if subgroup::closure(g, &[a, b]).order() != g.order() {
            continue;
        }
        let dependent = chosen.iter().any(|&(ca, cb)| {
            act.maps()
                .iter()
                .any(|mp| mp[ca.0 as usize] == a.0 && mp[cb.0 as usize] == b.0)
        });
        if dependent {
            continue;
        }
        chosen.push((a, b));
    }
    Ok(chosen)
}
