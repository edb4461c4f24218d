//! Compact subsets of primaries, backed by a 128-bit mask.

use std::fmt;

/// Maximum number of primaries a ring may have.
pub const MAX_PRIMARIES: usize = 128;

/// A set of primary indices. Cheap to copy and compare; the canonical
/// ordering (by size, then by lowest members) is what lattice listings use.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PrimarySet(u128);

impl PrimarySet {
    pub const EMPTY: PrimarySet = PrimarySet(0);

    pub fn singleton(p: usize) -> Self {
        debug_assert!(p < MAX_PRIMARIES);
        PrimarySet(1u128 << p)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_PRIMARIES);
        if n == MAX_PRIMARIES {
            PrimarySet(u128::MAX)
        } else {
            PrimarySet((1u128 << n) - 1)
        }
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PrimarySet::EMPTY;
        for p in iter {
            s.insert(p);
        }
        s
    }

    pub fn insert(&mut self, p: usize) {
        debug_assert!(p < MAX_PRIMARIES);
        self.0 |= 1u128 << p;
    }

    pub fn remove(&mut self, p: usize) {
        self.0 &= !(1u128 << p);
    }

    pub fn contains(&self, p: usize) -> bool {
        p < MAX_PRIMARIES && self.0 & (1u128 << p) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: &PrimarySet) -> PrimarySet {
        PrimarySet(self.0 | other.0)
    }

    pub fn intersect(&self, other: &PrimarySet) -> PrimarySet {
        PrimarySet(self.0 & other.0)
    }

    pub fn difference(&self, other: &PrimarySet) -> PrimarySet {
        PrimarySet(self.0 & !other.0)
    }

    pub fn is_subset_of(&self, other: &PrimarySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min_member(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (0..MAX_PRIMARIES).filter(move |p| bits & (1u128 << p) != 0)
    }

    /// Members joined by commas, e.g. `0,2,5`. Used by reports and the CLI.
    pub fn members_string(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&p.to_string());
        }
        out
    }
}

impl PartialOrd for PrimarySet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: smaller sets first, ties broken by the bit pattern so
/// that sets with lower members come first.
impl Ord for PrimarySet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| {
                // With bit 0 as the most significant position, sets holding
                // lower indices compare larger, so flip the comparison.
                other.0.reverse_bits().cmp(&self.0.reverse_bits())
            })
    }
}

impl fmt::Debug for PrimarySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members_string())
    }
}

impl FromIterator<usize> for PrimarySet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PrimarySet::from_members(iter)
    }
}
