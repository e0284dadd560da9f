//! Minimal fixed-length bitset over u64 words.

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bits {
    len: u64,
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: u64) -> Bits {
        Bits {
            len,
            words: vec![0; len.div_ceil(64) as usize],
        }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn set(&mut self, i: u64) {
        debug_assert!(i < self.len);
        self.words[(i / 64) as usize] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        debug_assert!(i < self.len);
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    /// Set bit `i`, returning whether it was previously clear.
    #[inline]
    pub fn insert(&mut self, i: u64) -> bool {
        let fresh = !self.get(i);
        if fresh {
            self.set(i);
        }
        fresh
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn or_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as u64;
                    w &= w - 1;
                    Some(wi as u64 * 64 + b)
                }
            })
        })
    }
}

impl FromIterator<u64> for Bits {
    /// Collect indices into a bitset sized to the maximum index + 1.
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Bits {
        let indices: Vec<u64> = iter.into_iter().collect();
        let len = indices.iter().max().map_or(0, |m| m + 1);
        let mut bits = Bits::new(len);
        for i in indices {
            bits.set(i);
        }
        bits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_count() {
        let mut b = Bits::new(130);
        b.set(0);
        b.set(64);
        b.set(129);
        assert!(b.get(0) && b.get(64) && b.get(129));
        assert!(!b.get(1) && !b.get(128));
        assert_eq!(b.count(), 3);
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
    }

    #[test]
    fn insert_reports_freshness() {
        let mut b = Bits::new(10);
        assert!(b.insert(3));
        assert!(!b.insert(3));
    }

    #[test]
    fn or_merge() {
        let mut a = Bits::new(100);
        let mut b = Bits::new(100);
        a.set(1);
        b.set(99);
        a.or_assign(&b);
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![1, 99]);
    }
}
