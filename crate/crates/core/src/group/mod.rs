//! Finite groups as fully enumerated objects.
//!
//! A [`FiniteGroup`] owns a canonical encoding for every element (permutation
//! image array, matrix entry array, or multiplication-table index), a dense
//! index for each element with the identity at index 0, and enough structure
//! to multiply fast: a full multiplication table for small groups, direct
//! composition plus hash lookup otherwise.
//!
//! Convention: `mul(a, b)` means "apply `a` first, then `b`".

pub mod load;
pub mod subgroup;

use crate::bits::Bits;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::gf::FieldTable;
use crate::perm::Perm;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

/// Groups small enough to get a full multiplication table (order^2 entries).
const MUL_TABLE_MAX: u64 = 2048;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// Canonical element encoding. Two elements are equal iff their encodings
/// are byte-identical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ElementRepr {
    Perm(Perm),
    /// Row-major matrix entries over the group's field.
    Mat(Box<[u16]>),
    /// Index into a supplied multiplication table.
    Cay(u32),
}

/// Dense element index within one group; index 0 is the identity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elem(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupKind {
    Perm,
    Matrix,
    Cayley,
}

/// Conjugacy classes, identity class first, then by minimal member index;
/// members sorted ascending.
#[derive(Debug, Clone)]
pub struct Classes {
    pub classes: Vec<ConjClass>,
    /// class index of each element.
    pub class_of: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct ConjClass {
    pub rep: Elem,
    pub members: Vec<Elem>,
}

impl Classes {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, e: Elem) -> usize {
        self.class_of[e.0 as usize] as usize
    }

    pub fn size_of_class_of(&self, e: Elem) -> usize {
        self.classes[self.class_index(e)].members.len()
    }
}

pub struct FiniteGroup {
    id: u64,
    name: String,
    kind: GroupKind,
    /// Permutation degree or matrix dimension (0 for Cayley groups).
    degree: usize,
    field: Option<FieldTable>,
    reprs: Vec<ElementRepr>,
    index: HashMap<ElementRepr, u32>,
    gens: Vec<Elem>,
    inv: Vec<u32>,
    mul_table: Option<Vec<u32>>,
    /// BFS definition of each element: `e = parent * gens[gen_ordinal]`.
    /// The identity has parent 0 and ordinal u16::MAX.
    bfs_parent: Vec<u32>,
    bfs_gen: Vec<u16>,
    classes: OnceLock<Classes>,
    exponent: OnceLock<u64>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteGroup({}, kind={:?}, order={})",
            self.name,
            self.kind,
            self.order()
        )
    }
}

impl FiniteGroup {
    /// Enumerate the closure of generator encodings breadth-first. Fails if
    /// the closure would exceed `caps.max_order`.
    fn from_generators(
        name: String,
        kind: GroupKind,
        degree: usize,
        field: Option<FieldTable>,
        gen_reprs: Vec<ElementRepr>,
        identity: ElementRepr,
        caps: &Caps,
    ) -> Result<FiniteGroup> {
        let mut reprs: Vec<ElementRepr> = vec![identity.clone()];
        let mut index: HashMap<ElementRepr, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut bfs_parent = vec![0u32];
        let mut bfs_gen = vec![u16::MAX];

        let mul_repr = |a: &ElementRepr, b: &ElementRepr| -> ElementRepr {
            match (a, b) {
                (ElementRepr::Perm(x), ElementRepr::Perm(y)) => ElementRepr::Perm(x.then(y)),
                (ElementRepr::Mat(x), ElementRepr::Mat(y)) => {
                    let f = field.as_ref().expect("matrix group has a field");
                    ElementRepr::Mat(mat_mul(f, degree, x, y).into_boxed_slice())
                }
                _ => unreachable!("mixed element encodings"),
            }
        };

        let mut head = 0usize;
        while head < reprs.len() {
            let current = reprs[head].clone();
            for (ordinal, g) in gen_reprs.iter().enumerate() {
                let product = mul_repr(&current, g);
                if !index.contains_key(&product) {
                    if reprs.len() as u64 >= caps.max_order {
                        return Err(Error::Capacity {
                            what: "group order",
                            needed: reprs.len() as u128 + 1,
                            cap: caps.max_order as u128,
                        });
                    }
                    let idx = reprs.len() as u32;
                    index.insert(product.clone(), idx);
                    reprs.push(product);
                    bfs_parent.push(head as u32);
                    bfs_gen.push(ordinal as u16);
                }
            }
            head += 1;
        }

        let gens = gen_reprs
            .iter()
            .map(|g| Elem(index[g]))
            .collect::<Vec<_>>();

        let mut group = FiniteGroup {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            name,
            kind,
            degree,
            field,
            reprs,
            index,
            gens,
            inv: Vec::new(),
            mul_table: None,
            bfs_parent,
            bfs_gen,
            classes: OnceLock::new(),
            exponent: OnceLock::new(),
        };
        group.finish_tables();
        Ok(group)
    }

    /// Build inverse table and, for small groups, the full multiplication table.
    fn finish_tables(&mut self) {
        let n = self.reprs.len();
        let inv: Vec<u32> = self
            .reprs
            .iter()
            .map(|repr| {
                let inverse_repr = match repr {
                    ElementRepr::Perm(p) => ElementRepr::Perm(p.inverse()),
                    ElementRepr::Mat(m) => {
                        let f = self.field.as_ref().expect("matrix group has a field");
                        let im = mat_inverse(f, self.degree, m)
                            .expect("group elements are invertible");
                        ElementRepr::Mat(im.into_boxed_slice())
                    }
                    ElementRepr::Cay(_) => {
                        unreachable!("cayley groups build tables separately")
                    }
                };
                self.index[&inverse_repr]
            })
            .collect();
        self.inv = inv;

        if (n as u64) <= MUL_TABLE_MAX {
            let mut table = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    table[i * n + j] = self.mul_direct(i as u32, j as u32);
                }
            }
            self.mul_table = Some(table);
        }
    }

    fn mul_direct(&self, a: u32, b: u32) -> u32 {
        let product = match (&self.reprs[a as usize], &self.reprs[b as usize]) {
            (ElementRepr::Perm(x), ElementRepr::Perm(y)) => ElementRepr::Perm(x.then(y)),
            (ElementRepr::Mat(x), ElementRepr::Mat(y)) => {
                let f = self.field.as_ref().expect("matrix group has a field");
                ElementRepr::Mat(mat_mul(f, self.degree, x, y).into_boxed_slice())
            }
            (ElementRepr::Cay(_), ElementRepr::Cay(_)) => {
                unreachable!("cayley groups always carry a full table")
            }
            _ => unreachable!("mixed element encodings"),
        };
        self.index[&product]
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> u64 {
        self.reprs.len() as u64
    }

    /// Permutation degree or matrix dimension.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Option<&FieldTable> {
        self.field.as_ref()
    }

    pub fn identity(&self) -> Elem {
        Elem(0)
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.reprs.len() as u32).map(Elem)
    }

    pub fn repr(&self, e: Elem) -> &ElementRepr {
        &self.reprs[e.0 as usize]
    }

    pub fn elem_of_repr(&self, repr: &ElementRepr) -> Option<Elem> {
        self.index.get(repr).copied().map(Elem)
    }

    /// BFS definition `e = parent * generator(ordinal)`; identity has no definition.
    pub fn definition(&self, e: Elem) -> Option<(Elem, usize)> {
        let ord = self.bfs_gen[e.0 as usize];
        (ord != u16::MAX).then(|| (Elem(self.bfs_parent[e.0 as usize]), ord as usize))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.mul_table {
            Some(t) => Elem(t[a.0 as usize * self.reprs.len() + b.0 as usize]),
            None => Elem(self.mul_direct(a.0, b.0)),
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.inv[a.0 as usize])
    }

    /// `b^-1 * a * b`.
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.mul(self.inv(a), self.inv(b)), a), b)
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        if let ElementRepr::Perm(p) = self.repr(a) {
            return p.order();
        }
        let mut k = 1u64;
        let mut acc = a;
        while acc != self.identity() {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    /// Exponent: least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        *self.exponent.get_or_init(|| {
            self.elements()
                .fold(1u64, |acc, e| num::integer::lcm(acc, self.element_order(e)))
        })
    }

    /// Whether a permutation-group element is even. Errors for other kinds.
    pub fn parity_even(&self, e: Elem) -> Result<bool> {
        match self.repr(e) {
            ElementRepr::Perm(p) => Ok(p.is_even()),
            _ => Err(Error::unsupported(
                "parity is defined for permutation groups only",
            )),
        }
    }

    /// Conjugacy classes via orbit sweeps of conjugation by generators.
    pub fn conjugacy_classes(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let n = self.reprs.len();
            let mut class_of = vec![u32::MAX; n];
            let mut classes = Vec::new();
            for start in 0..n as u32 {
                if class_of[start as usize] != u32::MAX {
                    continue;
                }
                let class_idx = classes.len() as u32;
                let mut members = vec![Elem(start)];
                class_of[start as usize] = class_idx;
                let mut head = 0;
                while head < members.len() {
                    let current = members[head];
                    head += 1;
                    for &g in &self.gens {
                        let image = self.conj(current, g);
                        if class_of[image.0 as usize] == u32::MAX {
                            class_of[image.0 as usize] = class_idx;
                            members.push(image);
                        }
                    }
                }
                members.sort_unstable();
                classes.push(ConjClass {
                    rep: Elem(start),
                    members,
                });
            }
            Classes { classes, class_of }
        })
    }

    /// The set of elements whose order is a power of two (including 1).
    pub fn two_power_indices(&self) -> Bits {
        let mut bits = Bits::new(self.order());
        for e in self.elements() {
            if self.element_order(e).is_power_of_two() {
                bits.set(e.0 as u64);
            }
        }
        bits
    }

    /// Pretty form of one element (cycles, matrix rows, or index).
    pub fn display_elem(&self, e: Elem) -> String {
        match self.repr(e) {
            ElementRepr::Perm(p) => p.to_string(),
            ElementRepr::Mat(m) => {
                let d = self.degree;
                let rows: Vec<String> = (0..d)
                    .map(|i| {
                        let row: Vec<String> =
                            (0..d).map(|j| m[i * d + j].to_string()).collect();
                        format!("[{}]", row.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            ElementRepr::Cay(i) => format!("#{i}"),
        }
    }

    /// Guard for cross-group misuse of element handles.
    pub fn check_owns(&self, other_group_id: u64, what: &str) -> Result<()> {
        if self.id != other_group_id {
            return Err(Error::mismatch(format!(
                "{what} belongs to a different group (id {other_group_id}, expected {})",
                self.id
            )));
        }
        Ok(())
    }
}

/// Largest power of two dividing `m` (m > 0).
pub fn two_part(m: u64) -> u64 {
    assert!(m > 0, "two_part of zero");
    m & m.wrapping_neg()
}

pub(crate) fn mat_mul(f: &FieldTable, dim: usize, a: &[u16], b: &[u16]) -> Vec<u16> {
    let mut out = vec![0u16; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik == 0 {
                continue;
            }
            for j in 0..dim {
                let prod = f.mul(aik, b[k * dim + j]);
                out[i * dim + j] = f.add(out[i * dim + j], prod);
            }
        }
    }
    out
}

/// Gauss-Jordan inverse over GF(q); `None` when singular.
pub(crate) fn mat_inverse(f: &FieldTable, dim: usize, m: &[u16]) -> Option<Vec<u16>> {
    let mut a = m.to_vec();
    let mut inv = vec![0u16; dim * dim];
    for i in 0..dim {
        inv[i * dim + i] = 1;
    }
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| a[r * dim + col] != 0)?;
        if pivot != col {
            for j in 0..dim {
                a.swap(col * dim + j, pivot * dim + j);
                inv.swap(col * dim + j, pivot * dim + j);
            }
        }
        let scale = f.inv(a[col * dim + col]).ok()?;
        for j in 0..dim {
            a[col * dim + j] = f.mul(a[col * dim + j], scale);
            inv[col * dim + j] = f.mul(inv[col * dim + j], scale);
        }
        for r in 0..dim {
            if r == col || a[r * dim + col] == 0 {
                continue;
            }
            let factor = a[r * dim + col];
            for j in 0..dim {
                let sub_a = f.mul(factor, a[col * dim + j]);
                a[r * dim + j] = f.sub(a[r * dim + j], sub_a);
                let sub_i = f.mul(factor, inv[col * dim + j]);
                inv[r * dim + j] = f.sub(inv[r * dim + j], sub_i);
            }
        }
    }
    Some(inv)
}

/// The permutation-group image of a matrix group acting on the nonzero row
/// vectors of its natural module, plus the verification that the action is
/// faithful (order preserved). Returns the permutation group; generator `i`
/// of the result is the image of generator `i` of the input.
pub fn matrix_to_perm(g: &FiniteGroup, caps: &Caps) -> Result<FiniteGroup> {
    if g.kind() != GroupKind::Matrix {
        return Err(Error::unsupported("matrix_to_perm needs a matrix group"));
    }
    let f = g.field().expect("matrix group has a field");
    let q = f.q() as u64;
    let dim = g.degree();
    let point_count = q
        .checked_pow(dim as u32)
        .map(|x| x - 1)
        .ok_or(Error::Capacity {
            what: "vector action degree",
            needed: u128::MAX,
            cap: u16::MAX as u128,
        })?;
    if point_count > u16::MAX as u64 {
        return Err(Error::Capacity {
            what: "vector action degree",
            needed: point_count as u128,
            cap: u16::MAX as u128,
        });
    }
    let degree = point_count as usize;

    // vector index: nonzero vector v -> (sum v_i q^i) - 1
    let decode = |mut idx: u64| -> Vec<u16> {
        idx += 1;
        (0..dim)
            .map(|_| {
                let d = (idx % q) as u16;
                idx /= q;
                d
            })
            .collect()
    };
    let encode = |v: &[u16]| -> u64 {
        v.iter()
            .rev()
            .fold(0u64, |acc, &d| acc * q + d as u64)
            - 1
    };

    let act = |m: &[u16], idx: u64| -> u64 {
        let v = decode(idx);
        let mut w = vec![0u16; dim];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..dim {
                w[j] = f.add(w[j], f.mul(vi, m[i * dim + j]));
            }
        }
        encode(&w)
    };

    let mut perm_gens = Vec::with_capacity(g.generators().len());
    for &gen in g.generators() {
        let ElementRepr::Mat(m) = g.repr(gen) else {
            unreachable!()
        };
        let images: Vec<u16> = (0..degree as u64).map(|i| act(m, i) as u16).collect();
        perm_gens.push(Perm::from_images(images)?);
    }

    let name = format!("{}~vectors", g.name());
    let perm_group = FiniteGroup::from_generators(
        name,
        GroupKind::Perm,
        degree,
        None,
        perm_gens.into_iter().map(ElementRepr::Perm).collect(),
        ElementRepr::Perm(Perm::identity(degree)),
        caps,
    )?;

    if perm_group.order() != g.order() {
        // The action has a kernel; name a witness.
        let witness = g
            .elements()
            .skip(1)
            .find(|&e| {
                let ElementRepr::Mat(m) = g.repr(e) else {
                    unreachable!()
                };
                (0..degree as u64).all(|i| act(m, i) == i)
            })
            .map(|e| g.display_elem(e))
            .unwrap_or_else(|| "unknown".to_string());
        return Err(Error::hypothesis(format!(
            "vector action is not faithful: {} acts trivially",
            witness
        )));
    }
    Ok(perm_group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load::load_group;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn two_part_values() {
        assert_eq!(two_part(60), 4);
        assert_eq!(two_part(1), 1);
        assert_eq!(two_part(96), 32);
        assert_eq!(two_part(7), 1);
    }

    #[test]
    fn identity_is_index_zero() {
        let g = load_group("sym:4", &caps()).unwrap();
        assert_eq!(g.identity(), Elem(0));
        assert_eq!(g.mul(Elem(5), g.identity()), Elem(5));
        assert_eq!(g.mul(g.identity(), Elem(5)), Elem(5));
    }

    #[test]
    fn inverse_table() {
        let g = load_group("sym:4", &caps()).unwrap();
        for e in g.elements() {
            assert_eq!(g.mul(e, g.inv(e)), g.identity());
            assert_eq!(g.mul(g.inv(e), e), g.identity());
        }
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let g = load_group("sym:4", &caps()).unwrap();
        for e in g.elements().take(12) {
            let mut acc = g.identity();
            for k in 0..8i64 {
                assert_eq!(g.pow(e, k), acc);
                acc = g.mul(acc, e);
            }
            assert_eq!(g.pow(e, -1), g.inv(e));
            assert_eq!(g.pow(e, -3), g.inv(g.pow(e, 3)));
        }
    }

    #[test]
    fn conjugacy_class_counts() {
        // Class counts: Sym(4) has 5, Alt(6) has 7, SL(2,5) has 9.
        assert_eq!(
            load_group("sym:4", &caps()).unwrap().conjugacy_classes().count(),
            5
        );
        assert_eq!(
            load_group("alt:6", &caps()).unwrap().conjugacy_classes().count(),
            7
        );
        assert_eq!(
            load_group("sl:2:5", &caps()).unwrap().conjugacy_classes().count(),
            9
        );
    }

    #[test]
    fn class_sizes_divide_group_order() {
        for spec in ["sym:4", "sym:5", "alt:5", "sl:2:3"] {
            let g = load_group(spec, &caps()).unwrap();
            let classes = g.conjugacy_classes();
            let total: usize = classes.classes.iter().map(|c| c.members.len()).sum();
            assert_eq!(total as u64, g.order());
            for c in &classes.classes {
                assert_eq!(g.order() % c.members.len() as u64, 0, "{spec}");
            }
            // Identity class first.
            assert_eq!(classes.classes[0].members, vec![Elem(0)]);
        }
    }

    #[test]
    fn exponent_and_orders() {
        let s5 = load_group("sym:5", &caps()).unwrap();
        assert_eq!(s5.exponent(), 60);
        // (1 2 3)(4 5) has order 6.
        let p = Perm::parse("(1 2 3)(4 5)", 5).unwrap();
        let e = s5.elem_of_repr(&ElementRepr::Perm(p)).unwrap();
        assert_eq!(s5.element_order(e), 6);
        // Exponent divides group order, and every element order divides exponent.
        for spec in ["sym:4", "alt:5", "sl:2:5"] {
            let g = load_group(spec, &caps()).unwrap();
            assert_eq!(g.order() % g.exponent(), 0, "{spec}");
            for e in g.elements() {
                assert_eq!(g.exponent() % g.element_order(e), 0, "{spec}");
            }
        }
    }

    #[test]
    fn two_power_set_sizes() {
        let counts: Vec<(&str, u64)> = vec![("sym:4", 16), ("sym:5", 56), ("alt:5", 16)];
        for (spec, expected) in counts {
            let g = load_group(spec, &caps()).unwrap();
            assert_eq!(g.two_power_indices().count(), expected, "{spec}");
        }
    }

    #[test]
    fn matrix_to_perm_sl25() {
        let g = load_group("sl:2:5", &caps()).unwrap();
        let p = matrix_to_perm(&g, &caps()).unwrap();
        assert_eq!(p.degree(), 24);
        assert_eq!(p.order(), 120);
        // Generator orders preserved.
        for (&mg, &pg) in g.generators().iter().zip(p.generators()) {
            assert_eq!(g.element_order(mg), p.element_order(pg));
        }
    }

    #[test]
    fn matrix_to_perm_sl22() {
        let g = load_group("sl:2:2", &caps()).unwrap();
        let p = matrix_to_perm(&g, &caps()).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn matrix_to_perm_random_products_preserved() {
        use rand::Rng;
        use rand::SeedableRng;
        let g = load_group("sl:2:5", &caps()).unwrap();
        let p = matrix_to_perm(&g, &caps()).unwrap();
        // Walk the same random generator words in both groups; orders must agree.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut a = g.identity();
            let mut b = p.identity();
            for _ in 0..8 {
                let k = rng.random_range(0..g.generators().len());
                a = g.mul(a, g.generators()[k]);
                b = p.mul(b, p.generators()[k]);
            }
            assert_eq!(g.element_order(a), p.element_order(b));
        }
    }

    #[test]
    fn mat_inverse_round_trip() {
        let f = FieldTable::new(5).unwrap();
        let m = vec![1, 1, 0, 1];
        let mi = mat_inverse(&f, 2, &m).unwrap();
        assert_eq!(mat_mul(&f, 2, &m, &mi), vec![1, 0, 0, 1]);
        // Singular matrix has no inverse.
        assert!(mat_inverse(&f, 2, &[1, 2, 2, 4]).is_none());
    }
}
