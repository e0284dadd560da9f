//! Subgroups of an enumerated group, plus a stabilizer-chain handle for raw
//! permutation generators (order and membership without ambient enumeration).

use super::{Elem, FiniteGroup};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::stab::StabChain;

/// A subgroup of an enumerated [`FiniteGroup`], stored as a membership bitset
/// over the ambient element indices plus a generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group_id: u64,
    gens: Vec<Elem>,
    members: Bits,
}

impl Subgroup {
    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn order(&self) -> u64 {
        self.members.count()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.get(e.0 as u64)
    }

    pub fn members(&self) -> &Bits {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones().map(|i| Elem(i as u32))
    }

    pub fn is_whole(&self, g: &FiniteGroup) -> bool {
        self.order() == g.order()
    }
}

/// `<gens>` inside `g`, by breadth-first closure over element indices.
pub fn closure(g: &FiniteGroup, gens: &[Elem]) -> Subgroup {
    let mut members = Bits::new(g.order());
    members.set(0);
    let mut queue: Vec<Elem> = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head];
        head += 1;
        for &s in gens {
            let next = g.mul(current, s);
            if members.insert(next.0 as u64) {
                queue.push(next);
            }
        }
    }
    Subgroup {
        group_id: g.id(),
        gens: gens.to_vec(),
        members,
    }
}

/// The whole group as a subgroup handle.
pub fn whole_group(g: &FiniteGroup) -> Subgroup {
    let mut members = Bits::new(g.order());
    for e in g.elements() {
        members.set(e.0 as u64);
    }
    Subgroup {
        group_id: g.id(),
        gens: g.generators().to_vec(),
        members,
    }
}

/// Rebuild a subgroup from an explicit member set, choosing a small
/// generating set greedily (lowest missing index first).
pub fn from_members(g: &FiniteGroup, members: Bits) -> Subgroup {
    let gens = small_gens(g, &members);
    Subgroup {
        group_id: g.id(),
        gens,
        members,
    }
}

/// Greedy small generating set for a set of members known to be a subgroup:
/// repeatedly adjoin the lowest-index member not yet generated.
pub fn small_gens(g: &FiniteGroup, members: &Bits) -> Vec<Elem> {
    let mut gens: Vec<Elem> = Vec::new();
    let mut reached = closure(g, &gens);
    while reached.order() < members.count() {
        let missing = members
            .ones()
            .find(|&i| !reached.members.get(i))
            .expect("member count exceeds closure");
        gens.push(Elem(missing as u32));
        reached = closure(g, &gens);
    }
    gens
}

/// Z(g): all elements commuting with every generator (hence with everything).
pub fn center(g: &FiniteGroup) -> Subgroup {
    let mut members = Bits::new(g.order());
    for e in g.elements() {
        if g.generators()
            .iter()
            .all(|&s| g.mul(e, s) == g.mul(s, e))
        {
            members.set(e.0 as u64);
        }
    }
    from_members(g, members)
}

/// Elements commuting with every element of `of` (the centralizer of `<of>`).
pub fn centralizer(g: &FiniteGroup, of: &[Elem]) -> Subgroup {
    let mut members = Bits::new(g.order());
    for e in g.elements() {
        if of.iter().all(|&s| g.mul(e, s) == g.mul(s, e)) {
            members.set(e.0 as u64);
        }
    }
    from_members(g, members)
}

/// Normal closure of `seeds` inside `within`: the smallest subgroup of
/// `within` containing the seeds and closed under conjugation by `within`.
pub fn normal_closure(g: &FiniteGroup, seeds: &[Elem], within: &Subgroup) -> Result<Subgroup> {
    g.check_owns(within.group_id, "subgroup")?;
    for &s in seeds {
        if !within.contains(s) {
            return Err(Error::mismatch(format!(
                "normal-closure seed {} lies outside the enclosing subgroup",
                g.display_elem(s)
            )));
        }
    }
    let mut gens: Vec<Elem> = seeds.to_vec();
    let mut sub = closure(g, &gens);
    loop {
        let mut grew = false;
        let current: Vec<Elem> = gens.clone();
        for &n in &current {
            for &h in &within.gens {
                let c = g.conj(n, h);
                if !sub.contains(c) {
                    gens.push(c);
                    sub = closure(g, &gens);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok(Subgroup {
        group_id: g.id(),
        gens,
        members: sub.members,
    })
}

/// `[h, h]`: the normal closure in `h` of the commutators of its generators.
pub fn derived_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    let mut seeds = Vec::new();
    for &a in &h.gens {
        for &b in &h.gens {
            let c = g.comm(a, b);
            if c != g.identity() && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    normal_closure(g, &seeds, h)
}

/// Derived series starting at `start`: terms are appended until a term is
/// trivial or equal to its predecessor (a perfect tail is shown once).
pub fn derived_series(g: &FiniteGroup, start: &Subgroup) -> Result<Vec<Subgroup>> {
    let mut series = vec![start.clone()];
    loop {
        let last = series.last().unwrap();
        if last.order() == 1 {
            break;
        }
        let next = derived_subgroup(g, last)?;
        let stable = next.order() == last.order();
        series.push(next);
        if stable {
            break;
        }
    }
    Ok(series)
}

/// The stable term of the derived series of the whole group. For an almost
/// simple group this is the socle.
pub fn stable_derived_term(g: &FiniteGroup) -> Result<Subgroup> {
    let series = derived_series(g, &whole_group(g))?;
    Ok(series.last().unwrap().clone())
}

/// Whether `sub` is normal in the subgroup generated by `in_gens` (checks
/// conjugation of sub's generators by the given generators).
pub fn is_normal_under(g: &FiniteGroup, sub: &Subgroup, in_gens: &[Elem]) -> bool {
    sub.gens
        .iter()
        .all(|&n| in_gens.iter().all(|&h| sub.contains(g.conj(n, h))))
}

/// Whether `h` is perfect: `[h,h] = h`.
pub fn is_perfect(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    Ok(derived_subgroup(g, h)?.order() == h.order())
}

/// Whether `h` is a non-abelian simple subgroup: every nonidentity element's
/// normal closure in `h` is all of `h`, checked once per `h`-conjugacy class.
pub fn is_simple_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    if h.order() == 1 {
        return Ok(false);
    }
    let mut seen = Bits::new(g.order());
    seen.set(0);
    for e in h.elements() {
        if seen.get(e.0 as u64) {
            continue;
        }
        // Sweep e's h-conjugacy class.
        let mut class = vec![e];
        seen.set(e.0 as u64);
        let mut head = 0;
        while head < class.len() {
            let c = class[head];
            head += 1;
            for &s in &h.gens {
                let image = g.conj(c, s);
                if !seen.get(image.0 as u64) {
                    seen.set(image.0 as u64);
                    class.push(image);
                }
            }
        }
        if normal_closure(g, &[e], h)?.order() != h.order() {
            return Ok(false);
        }
    }
    // Non-abelian: simple + order > 1 handled above; rule out prime cyclic.
    Ok(!is_abelian(g, h))
}

fn is_abelian(g: &FiniteGroup, h: &Subgroup) -> bool {
    h.gens
        .iter()
        .all(|&a| h.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// Facts needed to treat `g` as quasisimple: perfect, and simple modulo the
/// center (every noncentral normal closure covers the group up to center).
#[derive(Debug, Clone)]
pub struct QuasisimpleReport {
    pub perfect: bool,
    pub center_order: u64,
    pub central_quotient_simple: bool,
}

impl QuasisimpleReport {
    pub fn holds(&self) -> bool {
        self.perfect && self.central_quotient_simple
    }
}

pub fn quasisimple_report(g: &FiniteGroup) -> Result<QuasisimpleReport> {
    let whole = whole_group(g);
    let perfect = is_perfect(g, &whole)?;
    let z = center(g);
    let center_order = z.order();
    let mut quotient_simple = g.order() > center_order;
    if quotient_simple {
        for class in &g.conjugacy_classes().classes {
            let rep = class.rep;
            if z.contains(rep) {
                continue;
            }
            let n = normal_closure(g, &[rep], &whole)?;
            // |N·Z| = |N|·|Z| / |N∩Z| must equal |G|.
            let mut meet = n.members().clone();
            meet_and(&mut meet, z.members());
            let nz = n.order() * center_order / meet.count();
            if nz != g.order() {
                quotient_simple = false;
                break;
            }
        }
    }
    Ok(QuasisimpleReport {
        perfect,
        center_order,
        central_quotient_simple: quotient_simple,
    })
}

fn meet_and(target: &mut Bits, other: &Bits) {
    let keep: Vec<u64> = target.ones().filter(|&i| other.get(i)).collect();
    let mut fresh = Bits::new(target.len());
    for i in keep {
        fresh.set(i);
    }
    *target = fresh;
}

/// Stabilizer-chain handle over raw permutation generators: order and
/// membership tests without enumerating elements.
pub struct PermClosure {
    chain: StabChain,
}

impl PermClosure {
    pub fn new(degree: usize, gens: &[Perm]) -> Result<PermClosure> {
        for p in gens {
            if p.degree() != degree {
                return Err(Error::mismatch(format!(
                    "generator degree {} differs from ambient degree {degree}",
                    p.degree()
                )));
            }
        }
        Ok(PermClosure {
            chain: StabChain::new(degree, gens),
        })
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.chain.contains(p)
    }
}
