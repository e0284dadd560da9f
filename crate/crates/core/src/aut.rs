//! Automorphism groups by exhaustive search, orbit machinery, and the
//! ordered-pair tables that drive word construction: for each pair (a, b) of
//! group elements, whether ⟨a, b⟩ reaches the distinguished subgroup, and the
//! orbit structure of the generating pairs under automorphisms (optionally
//! combined with central translations).

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::bits::Bits;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::group::subgroup::{self, Subgroup};
use crate::group::{Elem, FiniteGroup};
use crate::subset::SubsetSpec;

/// How many candidate image tuples the automorphism search will consider
/// before refusing.
const CANDIDATE_TUPLE_CAP: u128 = 100_000_000;

/// The full automorphism group of a finite group, each automorphism stored as
/// a permutation of the element indices.
#[derive(Debug)]
pub struct AutAction {
    group_id: u64,
    order: u64,
    base_gens: Vec<Elem>,
    maps: Vec<Vec<u32>>,
    inner_count: u64,
    partition: OnceLock<OrbitPartition>,
}

/// Partition of the element indices into automorphism orbits. Orbits are
/// sorted internally and listed in order of their minimal element.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub orbit_of: Vec<u32>,
    pub orbits: Vec<Vec<u32>>,
}

impl AutAction {
    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    /// Number of automorphisms.
    pub fn count(&self) -> u64 {
        self.maps.len() as u64
    }

    /// Number of inner automorphisms, |G| / |Z(G)|.
    pub fn inner_count(&self) -> u64 {
        self.inner_count
    }

    /// The generating set whose candidate images were searched.
    pub fn base_gens(&self) -> &[Elem] {
        &self.base_gens
    }

    pub fn maps(&self) -> &[Vec<u32>] {
        &self.maps
    }

    pub fn apply(&self, map_index: usize, e: Elem) -> Elem {
        Elem(self.maps[map_index][e.0 as usize])
    }

    /// Orbit partition of all element indices (computed once, then cached).
    pub fn orbit_partition(&self) -> &OrbitPartition {
        self.partition.get_or_init(|| {
            let n = self.order as usize;
            let mut orbit_of = vec![u32::MAX; n];
            let mut orbits: Vec<Vec<u32>> = Vec::new();
            let mut queue: Vec<u32> = Vec::new();
            for start in 0..n as u32 {
                if orbit_of[start as usize] != u32::MAX {
                    continue;
                }
                let id = orbits.len() as u32;
                orbit_of[start as usize] = id;
                queue.clear();
                queue.push(start);
                let mut members = vec![start];
                let mut head = 0;
                while head < queue.len() {
                    let cur = queue[head] as usize;
                    head += 1;
                    for m in &self.maps {
                        let img = m[cur];
                        if orbit_of[img as usize] == u32::MAX {
                            orbit_of[img as usize] = id;
                            queue.push(img);
                            members.push(img);
                        }
                    }
                }
                members.sort_unstable();
                orbits.push(members);
            }
            OrbitPartition { orbit_of, orbits }
        })
    }

    /// Whether every automorphism maps the subset onto itself.
    pub fn is_invariant(&self, subset: &SubsetSpec) -> Result<bool> {
        if subset.group_id() != self.group_id {
            return Err(Error::mismatch(
                "subset belongs to a different group than the automorphism action",
            ));
        }
        let part = self.orbit_partition();
        // Invariant iff the subset is a union of whole orbits.
        let mut seen_in_orbit = vec![0u32; part.orbits.len()];
        for &i in subset.indices() {
            seen_in_orbit[part.orbit_of[i as usize] as usize] += 1;
        }
        Ok(seen_in_orbit
            .iter()
            .enumerate()
            .all(|(o, &c)| c == 0 || c as usize == part.orbits[o].len()))
    }

    /// Orbits of an invariant subset, each sorted, listed by minimal element.
    /// Refuses non-invariant subsets: their orbit decomposition would not be a
    /// partition of the subset.
    pub fn orbits_of(&self, subset: &SubsetSpec) -> Result<Vec<Vec<u32>>> {
        if !self.is_invariant(subset)? {
            return Err(Error::precondition(
                "subset is not automorphism-invariant; its orbits leave the subset",
            ));
        }
        let part = self.orbit_partition();
        let mut out: Vec<Vec<u32>> = Vec::new();
        let mut claimed: Vec<bool> = vec![false; part.orbits.len()];
        for &i in subset.indices() {
            let o = part.orbit_of[i as usize] as usize;
            if !claimed[o] {
                claimed[o] = true;
                out.push(part.orbits[o].clone());
            }
        }
        Ok(out)
    }
}

/// Breadth-first derivation of every element as a word in a fixed generating
/// set: `order[t]` is the t-th discovered element, and each non-identity
/// element's entry in `deriv` is (parent element, generator position) with the
/// parent always discovered earlier. Images of the generators therefore
/// determine candidate images of all elements in one forward pass.
struct Derivation {
    order: Vec<u32>,
    deriv: Vec<(u32, u16)>,
}

fn derive_all(g: &FiniteGroup, gens: &[Elem]) -> Result<Derivation> {
    let n = g.order() as usize;
    let mut deriv = vec![(u32::MAX, u16::MAX); n];
    let mut order = Vec::with_capacity(n);
    let mut seen = Bits::new(n as u64);
    seen.set(0);
    order.push(0u32);
    let mut head = 0;
    while head < order.len() {
        let cur = Elem(order[head]);
        head += 1;
        for (pos, &s) in gens.iter().enumerate() {
            let nxt = g.mul(cur, s);
            if !seen.get(nxt.0 as u64) {
                seen.set(nxt.0 as u64);
                deriv[nxt.0 as usize] = (cur.0, pos as u16);
                order.push(nxt.0);
            }
        }
    }
    if order.len() != n {
        return Err(Error::mismatch(
            "derivation generators do not generate the group",
        ));
    }
    Ok(Derivation { order, deriv })
}

/// Compute the full automorphism group by exhaustive search over candidate
/// images of a small generating set. Candidates are screened by element order
/// and conjugacy-class size, then by pairwise product orders, and each
/// surviving tuple is extended along breadth-first derivations and checked
/// for multiplicativity on every (element, generator) pair and for
/// bijectivity, so every accepted map is a genuine automorphism and none is
/// missed.
pub fn automorphism_group(g: &FiniteGroup, caps: &Caps) -> Result<AutAction> {
    let n = g.order();
    if n > caps.aut_max_order {
        return Err(Error::Capacity {
            what: "automorphism-group search (group order)",
            needed: n as u128,
            cap: caps.aut_max_order as u128,
        });
    }
    let whole = subgroup::whole_group(g);
    let base_gens = subgroup::small_gens(g, whole.members());
    let classes = g.conjugacy_classes();

    // Candidate images per base generator: same element order, same class size.
    let mut cands: Vec<Vec<Elem>> = Vec::with_capacity(base_gens.len());
    for &s in &base_gens {
        let ord = g.element_order(s);
        let size = classes.size_of_class_of(s);
        let list: Vec<Elem> = g
            .elements()
            .filter(|&c| g.element_order(c) == ord && classes.size_of_class_of(c) == size)
            .collect();
        cands.push(list);
    }
    let tuple_count: u128 = cands
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if tuple_count > CANDIDATE_TUPLE_CAP {
        return Err(Error::Capacity {
            what: "automorphism candidate tuples",
            needed: tuple_count,
            cap: CANDIDATE_TUPLE_CAP,
        });
    }

    // Orders of pairwise products of the base generators, for pruning.
    let k = base_gens.len();
    let mut pair_order = vec![0u64; k * k];
    for i in 0..k {
        for j in 0..k {
            pair_order[i * k + j] = g.element_order(g.mul(base_gens[i], base_gens[j]));
        }
    }

    let derivation = derive_all(g, &base_gens)?;
    let mut maps: Vec<Vec<u32>> = Vec::new();
    let mut chosen: Vec<Elem> = Vec::with_capacity(k);
    search_images(
        g,
        &base_gens,
        &derivation,
        &cands,
        &pair_order,
        &mut chosen,
        &mut maps,
    );

    if maps.is_empty() {
        // The identity map always verifies, so this is unreachable; keep the
        // invariant explicit.
        return Err(Error::mismatch("automorphism search lost the identity map"));
    }

    let inner_count = n / subgroup::center(g).order();
    Ok(AutAction {
        group_id: g.id(),
        order: n,
        base_gens,
        maps,
        inner_count,
        partition: OnceLock::new(),
    })
}

fn search_images(
    g: &FiniteGroup,
    gens: &[Elem],
    derivation: &Derivation,
    cands: &[Vec<Elem>],
    pair_order: &[u64],
    chosen: &mut Vec<Elem>,
    maps: &mut Vec<Vec<u32>>,
) {
    let k = gens.len();
    if chosen.len() == k {
        if let Some(map) = extend_to_map(g, gens, derivation, chosen) {
            maps.push(map);
        }
        return;
    }
    let i = chosen.len();
    'cand: for &c in &cands[i] {
        for (j, &prev) in chosen.iter().enumerate() {
            if g.element_order(g.mul(prev, c)) != pair_order[j * k + i]
                || g.element_order(g.mul(c, prev)) != pair_order[i * k + j]
            {
                continue 'cand;
            }
        }
        chosen.push(c);
        search_images(g, gens, derivation, cands, pair_order, chosen, maps);
        chosen.pop();
    }
}

/// Try to extend generator images to a full automorphism: propagate along the
/// breadth-first derivation, then verify multiplicativity on all (element,
/// generator) pairs — which forces the map to be a homomorphism everywhere —
/// and bijectivity.
fn extend_to_map(
    g: &FiniteGroup,
    gens: &[Elem],
    derivation: &Derivation,
    images: &[Elem],
) -> Option<Vec<u32>> {
    let n = g.order() as usize;
    let mut phi = vec![0u32; n];
    for &e in &derivation.order[1..] {
        let (parent, pos) = derivation.deriv[e as usize];
        phi[e as usize] = g.mul(Elem(phi[parent as usize]), images[pos as usize]).0;
    }

    // Multiplicativity on every (element, base generator) pair. By induction
    // on word length this implies phi(ab) = phi(a)phi(b) for all a, b.
    for a in 0..n as u32 {
        let fa = Elem(phi[a as usize]);
        for (pos, &img) in images.iter().enumerate() {
            let lhs = phi[g.mul(Elem(a), gens[pos]).0 as usize];
            let rhs = g.mul(fa, img).0;
            if lhs != rhs {
                return None;
            }
        }
    }

    // Bijectivity.
    let mut seen = Bits::new(n as u64);
    for &v in &phi {
        if seen.get(v as u64) {
            return None;
        }
        seen.set(v as u64);
    }
    Some(phi)
}

/// Which subgroup an ordered pair must reach to count as generating.
pub enum PairMode<'a> {
    /// ⟨a, b⟩ = G.
    Plain,
    /// ⟨a, b⟩ ⊇ S for a distinguished nonabelian simple normal subgroup S
    /// with trivial centralizer.
    AlmostSimple(&'a Subgroup),
    /// ⟨a, b⟩ = G, with pair orbits taken under automorphisms combined with
    /// central translations (a, b) ↦ (σ(a)z₁, σ(b)z₂).
    Quasisimple(&'a Subgroup),
}

/// Classification of all ordered pairs of group elements: which generate (in
/// the mode's sense), how many, and the orbit structure of the generating
/// pairs under the acting group.
#[derive(Debug)]
pub struct PairTable {
    group_id: u64,
    n: u64,
    mode_label: &'static str,
    tags: Bits,
    l: u64,
    reps: Vec<(Elem, Elem)>,
    acting_order: u64,
    free_action: bool,
    centralizer_trivial: Option<bool>,
    translations: Vec<Elem>,
}

impl PairTable {
    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn mode_label(&self) -> &'static str {
        self.mode_label
    }

    /// Number of generating pairs.
    pub fn l(&self) -> u64 {
        self.l
    }

    /// Number of non-generating pairs.
    pub fn proper_count(&self) -> u64 {
        self.n * self.n - self.l
    }

    /// Number of orbits of generating pairs.
    pub fn r(&self) -> u64 {
        self.reps.len() as u64
    }

    /// Minimal-index representative of each orbit, ascending.
    pub fn reps(&self) -> &[(Elem, Elem)] {
        &self.reps
    }

    /// Order of the acting group (|Aut|, times |Z|² in quasisimple mode).
    pub fn acting_order(&self) -> u64 {
        self.acting_order
    }

    /// Whether every generating-pair orbit has full acting-group size.
    pub fn free_action(&self) -> bool {
        self.free_action
    }

    /// Almost-simple mode only: whether the distinguished subgroup's
    /// centralizer is trivial (checked as a hypothesis before tabulation).
    pub fn centralizer_trivial(&self) -> Option<bool> {
        self.centralizer_trivial
    }

    pub fn is_generating(&self, a: Elem, b: Elem) -> bool {
        self.tags.get(a.0 as u64 * self.n + b.0 as u64)
    }

    /// Smallest b such that (a, b) is generating.
    pub fn generating_partner(&self, a: Elem) -> Option<Elem> {
        (0..self.n)
            .find(|&b| self.tags.get(a.0 as u64 * self.n + b))
            .map(|b| Elem(b as u32))
    }

    /// The coordinate translations folded into the pair action: just the
    /// identity in plain and almost-simple modes, the whole designated central
    /// subgroup in quasisimple mode. Exposing these lets callers reproduce the
    /// exact orbit notion the table was built under.
    pub fn translations(&self) -> &[Elem] {
        &self.translations
    }
}

/// Build the pair table. The tagging sweep is data-parallel under `exec`; the
/// orbit pass is sequential and deterministic (ascending pair index).
pub fn pair_table(
    g: &FiniteGroup,
    mode: &PairMode<'_>,
    act: &AutAction,
    caps: &Caps,
    exec: Exec,
) -> Result<PairTable> {
    let n = g.order();
    if n > caps.pair_max_order {
        return Err(Error::Capacity {
            what: "ordered-pair classification (group order)",
            needed: n as u128,
            cap: caps.pair_max_order as u128,
        });
    }
    if act.group_id() != g.id() {
        return Err(Error::mismatch(
            "automorphism action belongs to a different group",
        ));
    }

    let mode_label;
    let mut centralizer_trivial = None;
    let distinguished: Vec<Elem> = match mode {
        PairMode::Plain => {
            mode_label = "plain";
            subgroup::small_gens(g, subgroup::whole_group(g).members())
        }
        PairMode::AlmostSimple(s) => {
            mode_label = "almost-simple";
            if s.group_id() != g.id() {
                return Err(Error::mismatch(
                    "distinguished subgroup belongs to a different group",
                ));
            }
            if !subgroup::is_normal_under(g, s, g.generators()) {
                return Err(Error::precondition("distinguished subgroup is not normal"));
            }
            if !subgroup::is_simple_subgroup(g, s)? {
                return Err(Error::precondition(
                    "distinguished subgroup is not nonabelian simple",
                ));
            }
            let cent = subgroup::centralizer(g, s.gens());
            centralizer_trivial = Some(cent.order() == 1);
            if cent.order() != 1 {
                return Err(Error::hypothesis(format!(
                    "centralizer of the distinguished subgroup has order {}, expected 1",
                    cent.order()
                )));
            }
            s.gens().to_vec()
        }
        PairMode::Quasisimple(z) => {
            mode_label = "quasisimple";
            if z.group_id() != g.id() {
                return Err(Error::mismatch(
                    "translation subgroup belongs to a different group",
                ));
            }
            for zi in z.elements() {
                for &s in g.generators() {
                    if g.mul(zi, s) != g.mul(s, zi) {
                        return Err(Error::precondition(
                            "translation subgroup is not central",
                        ));
                    }
                }
            }
            subgroup::small_gens(g, subgroup::whole_group(g).members())
        }
    };
    if distinguished.len() > 64 {
        return Err(Error::Capacity {
            what: "distinguished generator count in pair sweep",
            needed: distinguished.len() as u128,
            cap: 64,
        });
    }

    // dist_bit[e] = bit position of e among the distinguished generators.
    let nn = n as usize;
    let mut dist_bit = vec![u8::MAX; nn];
    for (i, &d) in distinguished.iter().enumerate() {
        dist_bit[d.0 as usize] = i as u8;
    }
    let full_mask: u64 = if distinguished.is_empty() {
        0
    } else {
        u64::MAX >> (64 - distinguished.len())
    };

    let total = n * n;
    let tag_chunk = |start: u64, end: u64| -> Vec<u64> {
        let mut stamp = vec![u64::MAX; nn];
        let mut queue: Vec<u32> = Vec::with_capacity(nn);
        let mut out = Vec::new();
        for p in start..end {
            let a = Elem((p / n) as u32);
            let b = Elem((p % n) as u32);
            let mut found = 0u64;
            if found == full_mask {
                // No distinguished generators (order-one group): every pair
                // reaches the trivial target.
                out.push(p);
                continue;
            }
            queue.clear();
            stamp[0] = p;
            queue.push(0);
            let mut head = 0;
            let mut done = false;
            while head < queue.len() && !done {
                let cur = Elem(queue[head]);
                head += 1;
                for m in [a, b] {
                    let nxt = g.mul(cur, m);
                    if stamp[nxt.0 as usize] != p {
                        stamp[nxt.0 as usize] = p;
                        queue.push(nxt.0);
                        let bit = dist_bit[nxt.0 as usize];
                        if bit != u8::MAX {
                            found |= 1 << bit;
                            if found == full_mask {
                                done = true;
                                break;
                            }
                        }
                    }
                }
            }
            if found == full_mask {
                out.push(p);
            }
        }
        out
    };
    let generating = exec::sweep(exec, total, 8192, tag_chunk, |mut x, y| {
        x.extend(y);
        x
    })
    .unwrap_or_default();

    let mut tags = Bits::new(total);
    for &p in &generating {
        tags.set(p);
    }
    let l = generating.len() as u64;

    // Orbit pass over generating pairs.
    let z_elems: Vec<Elem> = match mode {
        PairMode::Quasisimple(z) => z.elements().collect(),
        _ => vec![Elem(0)],
    };
    let acting_order = act.count() * (z_elems.len() as u64) * (z_elems.len() as u64);
    let mut visited = Bits::new(total);
    let mut reps: Vec<(Elem, Elem)> = Vec::new();
    let mut free_action = true;
    for &p in &generating {
        if visited.get(p) {
            continue;
        }
        let a = Elem((p / n) as u32);
        let b = Elem((p % n) as u32);
        let mut size = 0u64;
        for m in act.maps() {
            let ma = Elem(m[a.0 as usize]);
            let mb = Elem(m[b.0 as usize]);
            for &z1 in &z_elems {
                for &z2 in &z_elems {
                    let qa = g.mul(ma, z1);
                    let qb = g.mul(mb, z2);
                    let q = qa.0 as u64 * n + qb.0 as u64;
                    if !tags.get(q) {
                        return Err(Error::mismatch(format!(
                            "orbit of generating pair ({}, {}) reached non-generating pair ({}, {})",
                            g.display_elem(a),
                            g.display_elem(b),
                            g.display_elem(qa),
                            g.display_elem(qb)
                        )));
                    }
                    if !visited.get(q) {
                        visited.set(q);
                        size += 1;
                    }
                }
            }
        }
        if size != acting_order {
            free_action = false;
        }
        reps.push((a, b));
    }

    Ok(PairTable {
        group_id: g.id(),
        n,
        mode_label,
        tags,
        l,
        reps,
        acting_order,
        free_action,
        centralizer_trivial,
        translations: z_elems,
    })
}

/// Convenience: deduplicated set of maps, for closure checks in tests.
pub fn maps_as_set(act: &AutAction) -> HashSet<Vec<u32>> {
    act.maps().iter().cloned().collect()
}
