//! Target assignments: finite lists of evaluation constraints that pin down
//! the behaviour of a sought word on chosen pairs.
//!
//! A *value* constraint demands `w(a, b) = t` for a specific pair; a *null*
//! constraint demands `w(a, b) = e`. Value constraints are placed only on
//! orbit representatives: the intended target function sends each element to a
//! power of itself with exponent data (element order, parity, membership in an
//! invariant set) that every automorphism preserves, so the function is
//! equivariant and pinning one representative per orbit pins the whole orbit.

use std::collections::HashSet;

use serde_json::json;

use crate::aut::{AutAction, PairTable};
use crate::error::{Error, Result};
use crate::group::{two_part, Elem, FiniteGroup};
use crate::subset::SubsetSpec;
use crate::word::Word;

/// Default ceiling on the number of null constraints attached to a target.
/// Nulls guide the search away from words with fat images; the final image is
/// always re-verified in full, so truncating the null list never compromises
/// soundness.
pub const DEFAULT_NULL_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub tuple: (Elem, Elem),
    pub required: Elem,
    pub is_null: bool,
}

/// A validated, conflict-free list of constraints over one group, value
/// constraints first.
#[derive(Clone, Debug)]
pub struct TargetAssignment {
    group_id: u64,
    constraints: Vec<Constraint>,
    value_count: usize,
}

impl TargetAssignment {
    pub fn new(g: &FiniteGroup, mut constraints: Vec<Constraint>) -> Result<TargetAssignment> {
        let n = g.order();
        let mut seen: HashSet<(u32, u32)> = HashSet::new();
        for c in &constraints {
            for e in [c.tuple.0, c.tuple.1, c.required] {
                if u64::from(e.0) >= n {
                    return Err(Error::mismatch(format!(
                        "constraint references element index {} outside the group of order {n}",
                        e.0
                    )));
                }
            }
            if !seen.insert((c.tuple.0 .0, c.tuple.1 .0)) {
                return Err(Error::precondition(format!(
                    "conflicting or duplicate constraints on the pair ({}, {})",
                    g.display_elem(c.tuple.0),
                    g.display_elem(c.tuple.1)
                )));
            }
        }
        constraints.sort_by_key(|c| c.is_null);
        let value_count = constraints.iter().filter(|c| !c.is_null).count();
        Ok(TargetAssignment {
            group_id: g.id(),
            constraints,
            value_count,
        })
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn value_count(&self) -> usize {
        self.value_count
    }

    pub fn null_count(&self) -> usize {
        self.constraints.len() - self.value_count
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// External JSON form: value constraints as `{tuple, target}` records plus
    /// a bare list of null pairs.
    pub fn to_json(&self, g: &FiniteGroup) -> serde_json::Value {
        let values: Vec<serde_json::Value> = self
            .constraints
            .iter()
            .filter(|c| !c.is_null)
            .map(|c| {
                json!({
                    "tuple": [g.display_elem(c.tuple.0), g.display_elem(c.tuple.1)],
                    "target": g.display_elem(c.required),
                })
            })
            .collect();
        let nulls: Vec<serde_json::Value> = self
            .constraints
            .iter()
            .filter(|c| c.is_null)
            .map(|c| json!([g.display_elem(c.tuple.0), g.display_elem(c.tuple.1)]))
            .collect();
        json!({ "constraints": values, "nulls": nulls })
    }
}

/// All pairs in the orbit of `(a, b)` under the table's action: automorphisms
/// applied diagonally, composed with the table's coordinate translations.
fn pair_orbit(
    g: &FiniteGroup,
    act: &AutAction,
    table: &PairTable,
    a: Elem,
    b: Elem,
) -> HashSet<(u32, u32)> {
    let mut orbit = HashSet::new();
    for m in act.maps() {
        let ma = Elem(m[a.0 as usize]);
        let mb = Elem(m[b.0 as usize]);
        for &z1 in table.translations() {
            for &z2 in table.translations() {
                orbit.insert((g.mul(ma, z1).0, g.mul(mb, z2).0));
            }
        }
    }
    orbit
}

fn check_target_inputs(
    g: &FiniteGroup,
    act: &AutAction,
    table: &PairTable,
    a: &SubsetSpec,
) -> Result<()> {
    g.check_owns(act.group_id(), "automorphism action")?;
    g.check_owns(table.group_id(), "pair table")?;
    g.check_owns(a.group_id(), "subset")?;
    if !a.contains_identity() {
        return Err(Error::precondition(
            "target set must contain the identity: every word evaluates to the \
             identity on the all-identity tuple",
        ));
    }
    if !act.is_invariant(a)? {
        return Err(Error::precondition(
            "target set is not automorphism-invariant; verbal images always are",
        ));
    }
    Ok(())
}

/// Build the constraint list for realizing an invariant set `A` as a verbal
/// image: each orbit representative `z` of `A ∖ {e}` is placed on a generating
/// pair `(z, b)` with required value `z`, and null constraints cover
/// representatives of the remaining pair orbits — generating orbits not used
/// for a value first, then non-generating orbits — up to `null_cap`.
///
/// A nonidentity element of `A` sitting on no generating pair defeats the
/// construction outright; that is reported as a hypothesis violation, not
/// silently skipped.
pub fn build_target(
    g: &FiniteGroup,
    act: &AutAction,
    table: &PairTable,
    a: &SubsetSpec,
    null_cap: usize,
) -> Result<TargetAssignment> {
    check_target_inputs(g, act, table, a)?;
    let a_prime = a.without_identity();
    let mut constraints: Vec<Constraint> = Vec::new();
    let mut used_pairs: HashSet<(u32, u32)> = HashSet::new();
    for orbit in act.orbits_of(&a_prime)? {
        let z = Elem(orbit[0]);
        let b = table.generating_partner(z).ok_or_else(|| {
            Error::hypothesis(format!(
                "element {} of the target set lies on no generating pair; the \
                 pair table ({} mode) cannot carry a value constraint for it",
                g.display_elem(z),
                table.mode_label()
            ))
        })?;
        used_pairs.extend(pair_orbit(g, act, table, z, b));
        constraints.push(Constraint {
            tuple: (z, b),
            required: z,
            is_null: false,
        });
    }

    // Null constraints, first choice: representatives of generating-pair
    // orbits that carry no value constraint, in ascending order.
    let mut nulls = 0usize;
    for &(ra, rb) in table.reps() {
        if nulls >= null_cap {
            break;
        }
        if used_pairs.contains(&(ra.0, rb.0)) {
            continue;
        }
        constraints.push(Constraint {
            tuple: (ra, rb),
            required: g.identity(),
            is_null: true,
        });
        nulls += 1;
    }

    // Second choice: representatives of non-generating pair orbits, found by
    // an ascending scan with orbit marking so each orbit contributes once.
    if nulls < null_cap {
        let n = g.order();
        let mut visited: HashSet<(u32, u32)> = HashSet::new();
        'scan: for ai in 0..n as u32 {
            for bi in 0..n as u32 {
                if nulls >= null_cap {
                    break 'scan;
                }
                let (pa, pb) = (Elem(ai), Elem(bi));
                if table.is_generating(pa, pb) || visited.contains(&(ai, bi)) {
                    continue;
                }
                visited.extend(pair_orbit(g, act, table, pa, pb));
                constraints.push(Constraint {
                    tuple: (pa, pb),
                    required: g.identity(),
                    is_null: true,
                });
                nulls += 1;
            }
        }
    }

    TargetAssignment::new(g, constraints)
}

/// Build the constraint table for the helper word used on symmetric groups
/// when the target set contains odd permutations. The full word is
/// `x^{e/e₂} · v` (see [`compose_power_prefix`]); this function pins `v` on
/// one representative `(a, b)` per generating-pair orbit:
///
/// * `a` even of odd order, `a ∈ A`  → `v = a` (the prefix dies on `a`);
/// * `a` even of even order, `a ∈ A` → `v = a^{1−e/e₂}` (prefix·v = a);
/// * `a` odd, `a ∈ A`                → `v = a^{o(a)₂}` (prefix·v is a
///   conjugate of `a`, by the coprime-power audit);
/// * `a ∉ A`                          → `v = e` (prefix·v has 2-power order).
///
/// Every case sends `a` to a power of itself chosen by automorphism-invariant
/// data, so the table is equivariant and representatives suffice.
pub fn build_case_two_target(
    g: &FiniteGroup,
    act: &AutAction,
    table: &PairTable,
    a_set: &SubsetSpec,
) -> Result<TargetAssignment> {
    check_target_inputs(g, act, table, a_set)?;
    let two_power = SubsetSpec::two_power(g);
    if !a_set.is_superset_of(&two_power)? {
        return Err(Error::precondition(
            "odd-case table requires the target set to contain every element \
             of 2-power order",
        ));
    }
    let e_full = g.exponent();
    let e2 = two_part(e_full);
    let e_odd = e_full / e2;
    let mut constraints = Vec::new();
    for &(a, b) in table.reps() {
        let order = g.element_order(a);
        let in_a = a_set.contains(a);
        let even = g.parity_even(a)?;
        let (required, is_null) = if in_a && even && order % 2 == 1 {
            (a, false)
        } else if in_a && even {
            (g.pow(a, 1 - e_odd as i64), false)
        } else if in_a {
            (g.pow(a, two_part(order) as i64), false)
        } else {
            (g.identity(), true)
        };
        constraints.push(Constraint {
            tuple: (a, b),
            required,
            is_null,
        });
    }
    TargetAssignment::new(g, constraints)
}

/// Least common multiple of 1..=n, the exponent of the symmetric group of
/// degree n.
pub fn symmetric_exponent(degree: usize) -> u64 {
    let mut e: u64 = 1;
    for k in 2..=degree as u64 {
        e = e / gcd(e, k) * k;
    }
    e
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The full word for the odd case over a symmetric group of the given degree:
/// `x^{e/e₂} · v` freely reduced, where `e` is the group exponent and `e₂` its
/// 2-part. The prefix exponent is odd, so the image picks up every element of
/// 2-power order exactly when `v` has even exponent sum in `x`.
pub fn compose_power_prefix(degree: usize, v: &Word) -> Result<Word> {
    if v.rank() != 2 {
        return Err(Error::precondition(
            "helper word must be over two variables",
        ));
    }
    let e = symmetric_exponent(degree);
    let prefix = Word::parse("x", 2)?.power((e / two_part(e)) as i64);
    prefix.compose(v)
}
