//! Subsets of a group's element list, with the document grammar used by the
//! CLI (`identity`, `two-power`, `all`, `indices:`, `elem:`, `class-of:`,
//! `union: [...]`).

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::load::parse_matrix_literal;
use crate::group::{Elem, ElementRepr, FiniteGroup};
use crate::perm::Perm;

/// A subset of one group's elements: sorted deduplicated dense indices plus
/// bookkeeping flags.
#[derive(Clone, Debug)]
pub struct SubsetSpec {
    group_id: u64,
    indices: Vec<u32>,
    aut_invariant: Option<bool>,
}

/// Equality is membership within the same group; the invariance memo is a
/// cache and never participates.
impl PartialEq for SubsetSpec {
    fn eq(&self, other: &Self) -> bool {
        self.group_id == other.group_id && self.indices == other.indices
    }
}

impl Eq for SubsetSpec {}

impl SubsetSpec {
    pub fn from_indices(g: &FiniteGroup, mut indices: Vec<u32>) -> Result<SubsetSpec> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&last) = indices.last() {
            if last as u64 >= g.order() {
                return Err(Error::parse(format!(
                    "element index {last} outside group of order {}",
                    g.order()
                )));
            }
        }
        Ok(SubsetSpec {
            group_id: g.id(),
            indices,
            aut_invariant: None,
        })
    }

    pub fn from_bits(g: &FiniteGroup, bits: &Bits) -> SubsetSpec {
        SubsetSpec {
            group_id: g.id(),
            indices: bits.ones().map(|i| i as u32).collect(),
            aut_invariant: None,
        }
    }

    pub fn identity_only(g: &FiniteGroup) -> SubsetSpec {
        SubsetSpec {
            group_id: g.id(),
            indices: vec![0],
            aut_invariant: None,
        }
    }

    /// All elements of 2-power order, identity included.
    pub fn two_power(g: &FiniteGroup) -> SubsetSpec {
        SubsetSpec::from_bits(g, &g.two_power_indices())
    }

    pub fn whole(g: &FiniteGroup) -> SubsetSpec {
        SubsetSpec {
            group_id: g.id(),
            indices: (0..g.order() as u32).collect(),
            aut_invariant: Some(true),
        }
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.indices.binary_search(&e.0).is_ok()
    }

    pub fn contains_identity(&self) -> bool {
        self.indices.first() == Some(&0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.indices.iter().map(|&i| Elem(i))
    }

    pub fn bits(&self, g: &FiniteGroup) -> Bits {
        let mut b = Bits::new(g.order());
        for &i in &self.indices {
            b.set(i as u64);
        }
        b
    }

    /// Tri-state invariance flag (set by the automorphism machinery).
    pub fn aut_invariant(&self) -> Option<bool> {
        self.aut_invariant
    }

    pub fn set_aut_invariant(&mut self, value: bool) {
        self.aut_invariant = Some(value);
    }

    pub fn union(&self, other: &SubsetSpec) -> Result<SubsetSpec> {
        self.check_same_group(other)?;
        let mut indices = self.indices.clone();
        indices.extend_from_slice(&other.indices);
        indices.sort_unstable();
        indices.dedup();
        Ok(SubsetSpec {
            group_id: self.group_id,
            indices,
            aut_invariant: None,
        })
    }

    pub fn difference(&self, other: &SubsetSpec) -> Result<SubsetSpec> {
        self.check_same_group(other)?;
        let indices = self
            .indices
            .iter()
            .copied()
            .filter(|&i| other.indices.binary_search(&i).is_err())
            .collect();
        Ok(SubsetSpec {
            group_id: self.group_id,
            indices,
            aut_invariant: None,
        })
    }

    pub fn with_identity(&self) -> SubsetSpec {
        let mut indices = self.indices.clone();
        if indices.first() != Some(&0) {
            indices.insert(0, 0);
        }
        SubsetSpec {
            group_id: self.group_id,
            indices,
            aut_invariant: None,
        }
    }

    /// A \ {e}.
    pub fn without_identity(&self) -> SubsetSpec {
        SubsetSpec {
            group_id: self.group_id,
            indices: self.indices.iter().copied().filter(|&i| i != 0).collect(),
            aut_invariant: None,
        }
    }

    pub fn is_superset_of(&self, other: &SubsetSpec) -> Result<bool> {
        self.check_same_group(other)?;
        Ok(other
            .indices
            .iter()
            .all(|&i| self.indices.binary_search(&i).is_ok()))
    }

    fn check_same_group(&self, other: &SubsetSpec) -> Result<()> {
        if self.group_id != other.group_id {
            return Err(Error::mismatch(
                "subsets belong to different groups".to_string(),
            ));
        }
        Ok(())
    }
}

/// Parse one element literal in the group's native notation: disjoint cycles
/// for permutation groups, `[[..],[..]]` for matrix groups, a bare index
/// (optionally `#`-prefixed) for Cayley groups.
pub fn parse_element_literal(g: &FiniteGroup, text: &str) -> Result<Elem> {
    let text = text.trim();
    let repr = match g.kind() {
        crate::group::GroupKind::Perm => {
            ElementRepr::Perm(Perm::parse(text, g.degree())?)
        }
        crate::group::GroupKind::Matrix => {
            let field = g.field().expect("matrix group has a field");
            ElementRepr::Mat(
                parse_matrix_literal(text, g.degree(), field)?.into_boxed_slice(),
            )
        }
        crate::group::GroupKind::Cayley => {
            let idx: u32 = text
                .strip_prefix('#')
                .unwrap_or(text)
                .parse()
                .map_err(|_| Error::parse(format!("bad element index {text:?}")))?;
            ElementRepr::Cay(idx)
        }
    };
    g.elem_of_repr(&repr).ok_or_else(|| {
        Error::parse(format!(
            "element {text:?} is not a member of {}",
            g.name()
        ))
    })
}

/// Parse a subset document: one term per line (or `;`-separated inside
/// `union: [...]`), `#` comments allowed; the subset is the union of all terms.
pub fn parse_subset(g: &FiniteGroup, text: &str) -> Result<SubsetSpec> {
    let mut acc = SubsetSpec::from_indices(g, Vec::new())?;
    let mut any = false;
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        acc = acc.union(&parse_term(g, line)?)?;
        any = true;
    }
    if !any {
        return Err(Error::parse("subset document has no terms"));
    }
    Ok(acc)
}

fn parse_term(g: &FiniteGroup, term: &str) -> Result<SubsetSpec> {
    let term = term.trim();
    if term == "identity" {
        return Ok(SubsetSpec::identity_only(g));
    }
    if term == "two-power" {
        return Ok(SubsetSpec::two_power(g));
    }
    if term == "all" {
        return Ok(SubsetSpec::whole(g));
    }
    if let Some(rest) = term.strip_prefix("indices:") {
        let indices = rest
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::parse(format!("bad index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        return SubsetSpec::from_indices(g, indices);
    }
    if let Some(rest) = term.strip_prefix("elem:") {
        let e = parse_element_literal(g, rest)?;
        return SubsetSpec::from_indices(g, vec![e.0]);
    }
    if let Some(rest) = term.strip_prefix("class-of:") {
        let e = parse_element_literal(g, rest)?;
        let classes = g.conjugacy_classes();
        let class = &classes.classes[classes.class_index(e)];
        return SubsetSpec::from_indices(g, class.members.iter().map(|m| m.0).collect());
    }
    if let Some(rest) = term.strip_prefix("union:") {
        let inner = rest
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::parse("union term must look like union: [a; b]"))?;
        let mut acc = SubsetSpec::from_indices(g, Vec::new())?;
        for part in inner.split(';') {
            if part.trim().is_empty() {
                continue;
            }
            acc = acc.union(&parse_term(g, part)?)?;
        }
        return Ok(acc);
    }
    Err(Error::parse(format!("unknown subset term {term:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::group::load::load_group;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn named_sets() {
        let s4 = load_group("sym:4", &caps()).unwrap();
        assert_eq!(parse_subset(&s4, "identity").unwrap().len(), 1);
        assert_eq!(parse_subset(&s4, "two-power").unwrap().len(), 16);
        assert_eq!(parse_subset(&s4, "all").unwrap().len(), 24);
    }

    #[test]
    fn literal_and_class_terms() {
        let s4 = load_group("sym:4", &caps()).unwrap();
        let single = parse_subset(&s4, "elem: (1 2)(3 4)").unwrap();
        assert_eq!(single.len(), 1);
        let class = parse_subset(&s4, "class-of: (1 2)(3 4)").unwrap();
        assert_eq!(class.len(), 3);
        let union = parse_subset(&s4, "union: [identity; class-of: (1 2 3)]").unwrap();
        assert_eq!(union.len(), 9);
        assert!(union.contains_identity());
    }

    #[test]
    fn multiline_documents_union() {
        let s4 = load_group("sym:4", &caps()).unwrap();
        let doc = "# two pieces\nidentity\nclass-of: (1 2) # transpositions\n";
        let set = parse_subset(&s4, doc).unwrap();
        assert_eq!(set.len(), 7);
    }

    #[test]
    fn indices_and_validation() {
        let s4 = load_group("sym:4", &caps()).unwrap();
        let set = parse_subset(&s4, "indices: 0 3 3 1").unwrap();
        assert_eq!(set.indices(), &[0, 1, 3]);
        assert!(parse_subset(&s4, "indices: 99").is_err());
        assert!(parse_subset(&s4, "frobnicate").is_err());
        assert!(parse_subset(&s4, "").is_err());
        assert!(parse_subset(&s4, "elem: (1 5)").is_err());
    }

    #[test]
    fn set_algebra() {
        let s4 = load_group("sym:4", &caps()).unwrap();
        let c = SubsetSpec::two_power(&s4);
        let all = SubsetSpec::whole(&s4);
        assert!(all.is_superset_of(&c).unwrap());
        let b = all.difference(&c).unwrap().with_identity();
        assert_eq!(b.len(), 24 - 16 + 1);
        assert!(b.contains_identity());
        assert_eq!(b.without_identity().len(), 8);
        let back = b.union(&c).unwrap();
        assert_eq!(back.len(), 24);
    }

    #[test]
    fn matrix_and_cayley_literals() {
        let sl = load_group("sl:2:3", &caps()).unwrap();
        let e = parse_element_literal(&sl, "[[1,1],[0,1]]").unwrap();
        assert_eq!(sl.element_order(e), 3);
        let c4 = crate::group::load::group_from_document(
            &crate::group::load::cyclic_cayley_text(4),
            "c4",
            &caps(),
        )
        .unwrap();
        let e = parse_element_literal(&c4, "#2").unwrap();
        assert!(sl.id() != c4.id());
        assert_eq!(c4.element_order(e), 2);
    }
}
