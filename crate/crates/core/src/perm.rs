//! Permutations on `0..degree` points with cycle-notation parsing/printing.
//!
//! Composition convention everywhere in this crate: `a.then(b)` applies `a`
//! first, then `b`. Cycle notation is 1-based in text, 0-based internally.

use crate::error::{Error, Result};

/// A permutation stored as its image array: `images[i]` is where point `i` goes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u16]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Build from an image array; must be a bijection on `0..len`.
    pub fn from_images(images: Vec<u16>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let i = img as usize;
            if i >= n || seen[i] {
                return Err(Error::parse(format!(
                    "image array {:?} is not a permutation of 0..{}",
                    images, n
                )));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    /// `self` followed by `other`: `(self.then(other))(p) = other(self(p))`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g^-1 · self · g` under left-to-right composition.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// Cycle decomposition, fixed points omitted, each cycle starting at its
    /// minimal point, cycles sorted by first point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u16];
            seen[start] = true;
            let mut p = self.images[start] as usize;
            while p != start {
                seen[p] = true;
                cycle.push(p as u16);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Multiset of cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = lengths.iter().sum();
        lengths.extend(std::iter::repeat_n(1, self.degree() - moved));
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Order = lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num::integer::lcm(acc, c.len() as u64))
    }

    /// True if the permutation is even (product of an even number of
    /// transpositions). A k-cycle contributes k-1 transpositions.
    pub fn is_even(&self) -> bool {
        let swaps: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        swaps.is_multiple_of(2)
    }

    /// Parse cycle notation like `(1 2 3)(4 5)`, `()`, or `e`. Points are
    /// 1-based in text. Cycles in a product are applied left to right, which
    /// only matters when they are not disjoint.
    pub fn parse(text: &str, degree: usize) -> Result<Perm> {
        let trimmed = text.trim();
        if trimmed == "e" || trimmed == "()" {
            return Ok(Perm::identity(degree));
        }
        let mut result = Perm::identity(degree);
        let mut rest = trimmed;
        let mut any = false;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(Error::parse(format!("expected '(' in cycle notation: {text:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::parse(format!("unbalanced '(' in cycle notation: {text:?}")))?;
            let body = &rest[1..close];
            rest = &rest[close + 1..];
            any = true;
            let mut points = Vec::new();
            for tok in body.split([' ', ',']).filter(|t| !t.is_empty()) {
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(format!("bad point {tok:?} in cycle {text:?}")))?;
                if p == 0 || p > degree {
                    return Err(Error::parse(format!(
                        "point {p} out of range 1..={degree} in {text:?}"
                    )));
                }
                points.push((p - 1) as u16);
            }
            let mut dedup = points.clone();
            dedup.sort_unstable();
            dedup.dedup();
            if dedup.len() != points.len() {
                return Err(Error::parse(format!("repeated point within a cycle: {text:?}")));
            }
            if points.len() > 1 {
                let mut images: Vec<u16> = (0..degree as u16).collect();
                for w in 0..points.len() {
                    let from = points[w];
                    let to = points[(w + 1) % points.len()];
                    images[from as usize] = to;
                }
                let cycle = Perm {
                    images: images.into_boxed_slice(),
                };
                result = result.then(&cycle);
            }
        }
        if !any {
            return Err(Error::parse(format!("empty cycle notation: {text:?}")));
        }
        Ok(result)
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["(1 2 3)(4 5)", "(1 2)", "(2 4 6)", "(1 5)(2 3)"] {
            let p = Perm::parse(text, 6).unwrap();
            assert_eq!(p.to_string(), text);
        }
    }

    #[test]
    fn identity_forms() {
        assert!(Perm::parse("e", 4).unwrap().is_identity());
        assert!(Perm::parse("()", 4).unwrap().is_identity());
        assert_eq!(Perm::identity(4).to_string(), "()");
    }

    #[test]
    fn left_to_right_composition() {
        // (1 2) then (2 3): 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2.
        let a = Perm::parse("(1 2)", 3).unwrap();
        let b = Perm::parse("(2 3)", 3).unwrap();
        let c = a.then(&b);
        assert_eq!(c.to_string(), "(1 3 2)");
    }

    #[test]
    fn non_disjoint_cycles_apply_left_to_right() {
        // (1 2)(1 3): 1 -> 2 under the first cycle, then 2 fixed; so 1 -> 2.
        // 2 -> 1 then 1 -> 3; 3 -> 3 then 3 -> 1.
        let p = Perm::parse("(1 2)(1 3)", 3).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)");
    }

    #[test]
    fn inverse_and_order() {
        let p = Perm::parse("(1 2 3)(4 5)", 5).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2]);
    }

    #[test]
    fn parity() {
        assert!(Perm::parse("(1 2 3)", 5).unwrap().is_even());
        assert!(!Perm::parse("(1 2)", 5).unwrap().is_even());
        assert!(Perm::parse("(1 2)(3 4)", 5).unwrap().is_even());
        assert!(!Perm::parse("(1 2 3 4)", 5).unwrap().is_even());
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Perm::parse("(0 1)", 3).is_err());
        assert!(Perm::parse("(1 4)", 3).is_err());
        assert!(Perm::parse("(1 1)", 3).is_err());
        assert!(Perm::parse("(1 2", 3).is_err());
        assert!(Perm::parse("", 3).is_err());
    }

    #[test]
    fn from_images_validates() {
        assert!(Perm::from_images(vec![1, 0, 2]).is_ok());
        assert!(Perm::from_images(vec![1, 1, 2]).is_err());
        assert!(Perm::from_images(vec![1, 0, 3]).is_err());
    }
}
