//! Incremental Schreier–Sims stabilizer chains for permutation groups.
//!
//! Gives exact order and membership tests without enumerating elements, so it
//! works for groups far larger than the enumeration cap (e.g. subgroups of a
//! product acting on a few dozen points). Composition is left-to-right
//! throughout, matching `Perm::then`.

use crate::perm::Perm;
use std::collections::HashMap;

struct Level {
    point: u16,
    /// Generators assigned to this level. Every generator stored at level j
    /// fixes the base points of all levels above j, so the group at level i
    /// is generated by the union of the generator lists of levels i and
    /// deeper.
    gens: Vec<Perm>,
    /// orbit point -> permutation taking `point` to it.
    transversal: HashMap<u16, Perm>,
    /// Orbit in discovery order (deterministic given generator order).
    orbit: Vec<u16>,
}

impl Level {
    fn new(point: u16, degree: usize) -> Level {
        let mut transversal = HashMap::new();
        transversal.insert(point, Perm::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            transversal,
            orbit: vec![point],
        }
    }
}

pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Build a chain for the group generated by `gens`.
    pub fn new(degree: usize, gens: &[Perm]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            chain.add_generator(g.clone());
        }
        chain
    }

    /// Add one generator and restore the defining invariant: at every level,
    /// the stabilizer of the base point inside that level's group equals the
    /// next level's group (checked through Schreier generators).
    pub fn add_generator(&mut self, g: Perm) {
        if self.insert_residue(g, 0).is_some() {
            self.rebuild();
        }
    }

    /// Sift from `start`; if a non-identity residue remains, store it at its
    /// stopping level (creating that level if needed) and return the level.
    fn insert_residue(&mut self, g: Perm, start: usize) -> Option<usize> {
        let (residue, lvl) = self.sift_from(&g, start);
        if residue.is_identity() {
            return None;
        }
        if lvl == self.levels.len() {
            let point = min_moved(&residue).expect("non-identity residue moves a point");
            self.levels.push(Level::new(point, self.degree));
        }
        self.levels[lvl].gens.push(residue);
        Some(lvl)
    }

    fn sift_from(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut residue = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let u = residue.apply(level.point);
            match level.transversal.get(&u) {
                Some(t) => residue = residue.then(&t.inverse()),
                None => return (residue, i),
            }
        }
        (residue, self.levels.len())
    }

    /// Sift `g` through the whole chain: repeatedly divide by transversal
    /// elements so the residue fixes each base point in turn. Returns the
    /// residue and the level at which sifting stopped.
    fn sift(&self, g: &Perm) -> (Perm, usize) {
        self.sift_from(g, 0)
    }

    /// All generators acting at level i: those stored at level i or deeper
    /// (each fixes the base points of levels above its own, hence of all
    /// levels above i).
    fn effective_gens(&self, i: usize) -> Vec<Perm> {
        self.levels[i..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }

    fn recompute_level(&mut self, i: usize) {
        let gens = self.effective_gens(i);
        let level = &mut self.levels[i];
        level.transversal.clear();
        level.orbit.clear();
        level
            .transversal
            .insert(level.point, Perm::identity(self.degree));
        level.orbit.push(level.point);
        let mut head = 0;
        while head < level.orbit.len() {
            let u = level.orbit[head];
            head += 1;
            let tu = level.transversal[&u].clone();
            for s in &gens {
                let v = s.apply(u);
                if let std::collections::hash_map::Entry::Vacant(e) = level.transversal.entry(v) {
                    e.insert(tu.then(s));
                    level.orbit.push(v);
                }
            }
        }
    }

    /// Verify and repair the chain from the deepest level upward. Whenever a
    /// Schreier generator fails to sift to the identity below its level, its
    /// residue is stored at the level where sifting stopped and verification
    /// restarts from there, so on exit every level's Schreier generators sift
    /// clean and the orbit sizes multiply to the exact group order.
    fn rebuild(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            self.recompute_level(i as usize);
            match self.check_schreier(i as usize) {
                Some(l) => i = l as isize,
                None => i -= 1,
            }
        }
    }

    /// Check all Schreier generators of level i against the chain below. On
    /// the first failure, store the residue and return its level.
    fn check_schreier(&mut self, i: usize) -> Option<usize> {
        let gens = self.effective_gens(i);
        let mut failing: Option<Perm> = None;
        'scan: for &u in &self.levels[i].orbit {
            let tu = &self.levels[i].transversal[&u];
            for s in &gens {
                let v = s.apply(u);
                let tv_inv = self.levels[i].transversal[&v].inverse();
                let schreier = tu.then(s).then(&tv_inv);
                if schreier.is_identity() {
                    continue;
                }
                let (residue, _) = self.sift_from(&schreier, i + 1);
                if !residue.is_identity() {
                    failing = Some(schreier);
                    break 'scan;
                }
            }
        }
        let schreier = failing?;
        self.insert_residue(schreier, i + 1)
    }

    /// Exact group order: the product of orbit sizes along the chain.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc * l.orbit.len() as u128)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, lvl) = self.sift(g);
        lvl == self.levels.len() && residue.is_identity()
    }

    pub fn base(&self) -> Vec<u16> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

fn min_moved(g: &Perm) -> Option<u16> {
    (0..g.degree() as u16).find(|&p| g.apply(p) != p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn sym_gens(n: usize) -> Vec<Perm> {
        if n < 2 {
            return vec![];
        }
        let transposition = Perm::parse("(1 2)", n).unwrap();
        let cycle_text = format!(
            "({})",
            (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
        );
        let cycle = Perm::parse(&cycle_text, n).unwrap();
        vec![transposition, cycle]
    }

    fn factorial(n: u128) -> u128 {
        (1..=n).product()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=8 {
            let chain = StabChain::new(n, &sym_gens(n));
            assert_eq!(chain.order(), factorial(n as u128), "order of Sym({n})");
        }
    }

    #[test]
    fn alternating_group_order_and_membership() {
        // Alt(5) = <(1 2 3), (1 2 3 4 5)>.
        let gens = vec![
            Perm::parse("(1 2 3)", 5).unwrap(),
            Perm::parse("(1 2 3 4 5)", 5).unwrap(),
        ];
        let chain = StabChain::new(5, &gens);
        assert_eq!(chain.order(), 60);
        assert!(chain.contains(&Perm::parse("(1 2)(3 4)", 5).unwrap()));
        assert!(!chain.contains(&Perm::parse("(1 2)", 5).unwrap()));
        assert!(chain.contains(&Perm::identity(5)));
    }

    #[test]
    fn trivial_group() {
        let chain = StabChain::new(4, &[]);
        assert_eq!(chain.order(), 1);
        assert!(chain.contains(&Perm::identity(4)));
        assert!(!chain.contains(&Perm::parse("(1 2)", 4).unwrap()));
    }

    #[test]
    fn product_action_group() {
        // <(1 2 3)(4 5 6)> is cyclic of order 3 inside Sym(6).
        let g = Perm::parse("(1 2 3)(4 5 6)", 6).unwrap();
        let chain = StabChain::new(6, std::slice::from_ref(&g));
        assert_eq!(chain.order(), 3);
        assert!(chain.contains(&g.then(&g)));
        assert!(!chain.contains(&Perm::parse("(1 2 3)", 6).unwrap()));
    }

    #[test]
    fn direct_product_of_two_alt5() {
        // Generators acting independently on two blocks of 5 points.
        let a1 = Perm::parse("(1 2 3)", 10).unwrap();
        let b1 = Perm::parse("(1 2 3 4 5)", 10).unwrap();
        let a2 = Perm::parse("(6 7 8)", 10).unwrap();
        let b2 = Perm::parse("(6 7 8 9 10)", 10).unwrap();
        let chain = StabChain::new(10, &[a1, b1, a2, b2]);
        assert_eq!(chain.order(), 3600);
    }

    #[test]
    fn diagonal_subgroup_of_product_is_proper() {
        // <(1 2 3)(4 5 6), (1 2)(4 5)> acts diagonally on two blocks: it is
        // Sym(3) of order 6, not Sym(3) × Sym(3).
        let a = Perm::parse("(1 2 3)(4 5 6)", 6).unwrap();
        let b = Perm::parse("(1 2)(4 5)", 6).unwrap();
        let chain = StabChain::new(6, &[a, b]);
        assert_eq!(chain.order(), 6);
        assert!(!chain.contains(&Perm::parse("(1 2)", 6).unwrap()));
        assert!(chain.contains(&Perm::parse("(1 3)(4 6)", 6).unwrap()));
    }

    #[test]
    fn incremental_generator_addition_matches_batch() {
        let gens = sym_gens(6);
        let batch = StabChain::new(6, &gens);
        let mut incremental = StabChain::new(6, &[]);
        for g in &gens {
            incremental.add_generator(g.clone());
        }
        assert_eq!(batch.order(), incremental.order());
        assert_eq!(batch.order(), 720);
    }
}
