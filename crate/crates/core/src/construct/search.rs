//! Word search: find a two-variable word whose evaluations on a finite list
//! of constrained pairs hit the required values.
//!
//! The search state is the vector of evaluations of the current word at every
//! constrained pair, so two words that agree on all pairs are the same state.
//! Appending a letter multiplies each coordinate on the right by that pair's
//! letter value, which is how all three strategies take steps.
//!
//! Every witness is re-verified by independent evaluation before it is
//! returned; a verification miss is an internal error, never a result. A
//! `NotFound` says only that no witness turned up within the budget — it is
//! not evidence that none exists.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::word::{evaluate_letters, Word};

use super::target::TargetAssignment;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStrategy {
    Bfs,
    Bidirectional,
    RandomWalk,
}

impl SearchStrategy {
    pub fn label(&self) -> &'static str {
        match self {
            SearchStrategy::Bfs => "bfs",
            SearchStrategy::Bidirectional => "bidirectional",
            SearchStrategy::RandomWalk => "random-walk",
        }
    }

    pub fn parse(text: &str) -> Result<SearchStrategy> {
        match text {
            "bfs" => Ok(SearchStrategy::Bfs),
            "bidirectional" => Ok(SearchStrategy::Bidirectional),
            "random-walk" => Ok(SearchStrategy::RandomWalk),
            other => Err(Error::parse(format!(
                "unknown search strategy {other:?}; expected bfs, bidirectional, \
                 or random-walk"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found { word: Word, explored: u64 },
    NotFound { explored: u64 },
}

impl SearchOutcome {
    pub fn word(&self) -> Option<&Word> {
        match self {
            SearchOutcome::Found { word, .. } => Some(word),
            SearchOutcome::NotFound { .. } => None,
        }
    }

    pub fn explored(&self) -> u64 {
        match self {
            SearchOutcome::Found { explored, .. } | SearchOutcome::NotFound { explored } => {
                *explored
            }
        }
    }
}

/// Letters are encoded 0..4 as x, x⁻¹, y, y⁻¹; xor 1 inverts.
const LETTER_VALUES: [i16; 4] = [1, -1, 2, -2];

struct SearchSpace<'a> {
    g: &'a FiniteGroup,
    tuples: Vec<(Elem, Elem)>,
    /// step[l][i]: right-multiplier at coordinate i for letter l.
    step: [Vec<Elem>; 4],
    target: Vec<u32>,
    initial: Vec<u32>,
}

impl<'a> SearchSpace<'a> {
    fn new(g: &'a FiniteGroup, t: &TargetAssignment) -> Result<SearchSpace<'a>> {
        g.check_owns(t.group_id(), "target assignment")?;
        let tuples: Vec<(Elem, Elem)> = t.constraints().iter().map(|c| c.tuple).collect();
        let step = [
            tuples.iter().map(|&(a, _)| a).collect(),
            tuples.iter().map(|&(a, _)| g.inv(a)).collect(),
            tuples.iter().map(|&(_, b)| b).collect(),
            tuples.iter().map(|&(_, b)| g.inv(b)).collect(),
        ];
        let target: Vec<u32> = t.constraints().iter().map(|c| c.required.0).collect();
        let initial = vec![g.identity().0; tuples.len()];
        Ok(SearchSpace {
            g,
            tuples,
            step,
            target,
            initial,
        })
    }

    fn apply(&self, state: &[u32], letter: usize) -> Vec<u32> {
        state
            .iter()
            .zip(&self.step[letter])
            .map(|(&s, &m)| self.g.mul(Elem(s), m).0)
            .collect()
    }

    /// Independent re-evaluation of a candidate witness on every tuple.
    fn verify(&self, letters: &[u8]) -> Result<Word> {
        let signed: Vec<i16> = letters.iter().map(|&l| LETTER_VALUES[l as usize]).collect();
        let word = Word::from_letters(2, &signed)?;
        for (i, &(a, b)) in self.tuples.iter().enumerate() {
            let got = evaluate_letters(word.letters(), &[a, b], self.g)?;
            if got.0 != self.target[i] {
                return Err(Error::mismatch(format!(
                    "search produced a witness that fails re-verification at \
                     pair ({}, {}): got {}, required {}",
                    self.g.display_elem(a),
                    self.g.display_elem(b),
                    self.g.display_elem(got),
                    self.g.display_elem(Elem(self.target[i]))
                )));
            }
        }
        Ok(word)
    }
}

/// Search for a freely reduced two-variable word of length at most `max_len`
/// matching the target assignment.
///
/// * `bfs` explores words in length order and returns a minimal-length
///   witness; it is deterministic.
/// * `bidirectional` meets forward words and backward suffixes in the middle;
///   the witness is verified but not guaranteed minimal.
/// * `random-walk` tries seeded random reduced words; cheap per attempt, no
///   completeness claim.
///
/// The deterministic strategies refuse (capacity error) if the deduplicated
/// state count would exceed `caps.search_state_cap`; the random walk instead
/// reports `NotFound` when its step budget runs out.
pub fn find_word(
    g: &FiniteGroup,
    t: &TargetAssignment,
    max_len: usize,
    strategy: SearchStrategy,
    seed: u64,
    caps: &Caps,
) -> Result<SearchOutcome> {
    let space = SearchSpace::new(g, t)?;
    if space.initial == space.target {
        return Ok(SearchOutcome::Found {
            word: Word::identity(2)?,
            explored: 0,
        });
    }
    if max_len == 0 {
        return Ok(SearchOutcome::NotFound { explored: 0 });
    }
    match strategy {
        SearchStrategy::Bfs => bfs(&space, max_len, caps),
        SearchStrategy::Bidirectional => bidirectional(&space, max_len, caps),
        SearchStrategy::RandomWalk => random_walk(&space, max_len, seed, caps),
    }
}

fn over_cap(visited: usize, caps: &Caps) -> Error {
    Error::Capacity {
        what: "deduplicated search states",
        needed: visited as u128 + 1,
        cap: caps.search_state_cap as u128,
    }
}

fn bfs(space: &SearchSpace, max_len: usize, caps: &Caps) -> Result<SearchOutcome> {
    // Arena of (parent index, letter); index 0 is the root with no parent.
    let mut arena: Vec<(u32, u8)> = vec![(u32::MAX, u8::MAX)];
    let mut visited: HashMap<Vec<u32>, u32> = HashMap::new();
    visited.insert(space.initial.clone(), 0);
    let mut frontier: Vec<(Vec<u32>, u32)> = vec![(space.initial.clone(), 0)];
    for _depth in 1..=max_len {
        let mut next: Vec<(Vec<u32>, u32)> = Vec::new();
        for (state, idx) in &frontier {
            let incoming = arena[*idx as usize].1;
            for letter in 0u8..4 {
                // Never undo the previous letter: such words are unreduced and
                // their states were already seen anyway.
                if incoming != u8::MAX && letter == incoming ^ 1 {
                    continue;
                }
                let new_state = space.apply(state, letter as usize);
                if visited.contains_key(&new_state) {
                    continue;
                }
                if visited.len() as u64 >= caps.search_state_cap {
                    return Err(over_cap(visited.len(), caps));
                }
                let new_idx = arena.len() as u32;
                arena.push((*idx, letter));
                visited.insert(new_state.clone(), new_idx);
                if new_state == space.target {
                    let letters = path_letters(&arena, new_idx);
                    let word = space.verify(&letters)?;
                    return Ok(SearchOutcome::Found {
                        word,
                        explored: visited.len() as u64,
                    });
                }
                next.push((new_state, new_idx));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(SearchOutcome::NotFound {
        explored: visited.len() as u64,
    })
}

fn path_letters(arena: &[(u32, u8)], mut idx: u32) -> Vec<u8> {
    let mut letters = Vec::new();
    while idx != 0 {
        let (parent, letter) = arena[idx as usize];
        letters.push(letter);
        idx = parent;
    }
    letters.reverse();
    letters
}

fn bidirectional(space: &SearchSpace, max_len: usize, caps: &Caps) -> Result<SearchOutcome> {
    // Forward nodes hold prefixes evaluated from the identity; backward nodes
    // hold states S with a recorded suffix s such that S·s = target, expanded
    // by S ↦ S·ℓ⁻¹ (which prepends ℓ to the suffix).
    let mut fwd_arena: Vec<(u32, u8)> = vec![(u32::MAX, u8::MAX)];
    let mut bwd_arena: Vec<(u32, u8)> = vec![(u32::MAX, u8::MAX)];
    let mut fwd: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut bwd: HashMap<Vec<u32>, u32> = HashMap::new();
    fwd.insert(space.initial.clone(), 0);
    bwd.insert(space.target.clone(), 0);
    let mut fwd_frontier: Vec<(Vec<u32>, u32)> = vec![(space.initial.clone(), 0)];
    let mut bwd_frontier: Vec<(Vec<u32>, u32)> = vec![(space.target.clone(), 0)];
    let mut fwd_depth = 0usize;
    let mut bwd_depth = 0usize;

    let assemble = |space: &SearchSpace,
                    fwd_arena: &[(u32, u8)],
                    bwd_arena: &[(u32, u8)],
                    fwd_idx: u32,
                    bwd_idx: u32,
                    explored: u64|
     -> Result<SearchOutcome> {
        let mut letters = path_letters(fwd_arena, fwd_idx);
        // Backward path letters from the meet node up to the target are the
        // suffix in forward reading order.
        let mut idx = bwd_idx;
        while idx != 0 {
            let (parent, letter) = bwd_arena[idx as usize];
            letters.push(letter);
            idx = parent;
        }
        let word = space.verify(&letters)?;
        Ok(SearchOutcome::Found { word, explored })
    };

    while fwd_depth + bwd_depth < max_len {
        let expand_forward = if fwd_frontier.is_empty() {
            false
        } else if bwd_frontier.is_empty() {
            true
        } else {
            fwd_frontier.len() <= bwd_frontier.len()
        };
        if fwd_frontier.is_empty() && bwd_frontier.is_empty() {
            break;
        }
        if expand_forward {
            fwd_depth += 1;
            let mut next = Vec::new();
            for (state, idx) in &fwd_frontier {
                let incoming = fwd_arena[*idx as usize].1;
                for letter in 0u8..4 {
                    if incoming != u8::MAX && letter == incoming ^ 1 {
                        continue;
                    }
                    let new_state = space.apply(state, letter as usize);
                    if fwd.contains_key(&new_state) {
                        continue;
                    }
                    if (fwd.len() + bwd.len()) as u64 >= caps.search_state_cap {
                        return Err(over_cap(fwd.len() + bwd.len(), caps));
                    }
                    let new_idx = fwd_arena.len() as u32;
                    fwd_arena.push((*idx, letter));
                    fwd.insert(new_state.clone(), new_idx);
                    if let Some(&b_idx) = bwd.get(&new_state) {
                        let explored = (fwd.len() + bwd.len()) as u64;
                        return assemble(space, &fwd_arena, &bwd_arena, new_idx, b_idx, explored);
                    }
                    next.push((new_state, new_idx));
                }
            }
            fwd_frontier = next;
        } else {
            bwd_depth += 1;
            let mut next = Vec::new();
            for (state, idx) in &bwd_frontier {
                let incoming = bwd_arena[*idx as usize].1;
                for letter in 0u8..4 {
                    // The backward suffix is built front-to-back; avoid
                    // creating an immediately cancelling pair there too.
                    if incoming != u8::MAX && letter == incoming ^ 1 {
                        continue;
                    }
                    // S·ℓ⁻¹, so that appending ℓ returns to S.
                    let new_state = space.apply(state, (letter ^ 1) as usize);
                    if bwd.contains_key(&new_state) {
                        continue;
                    }
                    if (fwd.len() + bwd.len()) as u64 >= caps.search_state_cap {
                        return Err(over_cap(fwd.len() + bwd.len(), caps));
                    }
                    let new_idx = bwd_arena.len() as u32;
                    bwd_arena.push((*idx, letter));
                    bwd.insert(new_state.clone(), new_idx);
                    if let Some(&f_idx) = fwd.get(&new_state) {
                        let explored = (fwd.len() + bwd.len()) as u64;
                        return assemble(space, &fwd_arena, &bwd_arena, f_idx, new_idx, explored);
                    }
                    next.push((new_state, new_idx));
                }
            }
            bwd_frontier = next;
        }
    }
    Ok(SearchOutcome::NotFound {
        explored: (fwd.len() + bwd.len()) as u64,
    })
}

fn random_walk(
    space: &SearchSpace,
    max_len: usize,
    seed: u64,
    caps: &Caps,
) -> Result<SearchOutcome> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut steps: u64 = 0;
    let mut letters: Vec<u8> = Vec::with_capacity(max_len);
    while steps < caps.search_state_cap {
        letters.clear();
        let mut state = space.initial.clone();
        let mut last = u8::MAX;
        for _ in 0..max_len {
            let letter = if last == u8::MAX {
                rng.random_range(0u8..4)
            } else {
                // Uniform over the three letters that do not cancel the last.
                let mut l = rng.random_range(0u8..3);
                if l >= (last ^ 1) {
                    l += 1;
                }
                l
            };
            state = space.apply(&state, letter as usize);
            letters.push(letter);
            last = letter;
            steps += 1;
            if state == space.target {
                let word = space.verify(&letters)?;
                return Ok(SearchOutcome::Found {
                    word,
                    explored: steps,
                });
            }
            if steps >= caps.search_state_cap {
                break;
            }
        }
    }
    Ok(SearchOutcome::NotFound { explored: steps })
}
