//! The surjectivity margin for perfect central extensions: compare the number
//! `r` of orbits of generating pairs (under automorphisms combined with
//! central translations) against the worst-case number `k` of nonidentity
//! automorphism orbits. When `r ≥ k`, every automorphism-invariant assignment
//! of one target value per orbit can be carried by distinct generating-pair
//! orbits — the combinatorial engine behind realizing arbitrary invariant
//! sets over such groups.

use crate::aut::{automorphism_group, pair_table, PairMode};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::subgroup;
use crate::group::FiniteGroup;

#[derive(Clone, Debug)]
pub struct StarReport {
    pub group: String,
    /// Orbits of generating pairs modulo automorphisms and central
    /// translations.
    pub r: u64,
    /// Nonidentity automorphism orbits on the group.
    pub k_worst: u64,
    pub star_holds: bool,
    /// Ordered generating pairs.
    pub l: u64,
    pub acting_order: u64,
    pub free_action: bool,
    pub center_order: u64,
}

/// Check the margin `r ≥ k_worst` for a perfect group whose central quotient
/// is simple. Inputs outside that family are precondition errors: the margin
/// statement is not about them.
pub fn star_check(g: &FiniteGroup, caps: &Caps, exec: Exec) -> Result<StarReport> {
    let whole = subgroup::whole_group(g);
    if !subgroup::is_perfect(g, &whole)? {
        return Err(Error::precondition(
            "group is not perfect; the margin property concerns perfect \
             central extensions only",
        ));
    }
    let qs = subgroup::quasisimple_report(g)?;
    if !qs.holds() {
        return Err(Error::precondition(
            "group is perfect but its central quotient is not simple",
        ));
    }
    let act = automorphism_group(g, caps)?;
    let z = subgroup::center(g);
    let table = pair_table(g, &PairMode::Quasisimple(&z), &act, caps, exec)?;
    let k_worst = act.orbit_partition().orbits.len() as u64 - 1;
    let r = table.r();
    Ok(StarReport {
        group: g.name().to_string(),
        r,
        k_worst,
        star_holds: r >= k_worst,
        l: table.l(),
        acting_order: table.acting_order(),
        free_action: table.free_action(),
        center_order: z.order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load::load_group;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn double_cover_of_alt5_has_ample_margin() {
        let g = load_group("sl:2:5", &caps()).unwrap();
        let report = star_check(&g, &caps(), Exec::Seq).unwrap();
        assert_eq!(report.r, 19);
        assert_eq!(report.k_worst, 6);
        assert!(report.star_holds);
        assert_eq!(report.l, 9120);
        assert_eq!(report.acting_order, 480);
        assert!(report.free_action);
        assert_eq!(report.center_order, 2);
    }

    #[test]
    fn trivial_center_case_holds_on_alt5() {
        let g = load_group("alt:5", &caps()).unwrap();
        let report = star_check(&g, &caps(), Exec::Seq).unwrap();
        assert_eq!(report.r, 19);
        assert_eq!(report.k_worst, 3);
        assert!(report.star_holds);
        assert_eq!(report.l, 2280);
        assert_eq!(report.center_order, 1);
    }

    #[test]
    fn non_perfect_groups_are_refused() {
        let g = load_group("sym:4", &caps()).unwrap();
        assert!(matches!(
            star_check(&g, &caps(), Exec::Seq),
            Err(Error::Precondition(_))
        ));
        let g = load_group("sl:2:3", &caps()).unwrap();
        assert!(matches!(
            star_check(&g, &caps(), Exec::Seq),
            Err(Error::Precondition(_))
        ));
    }
}
