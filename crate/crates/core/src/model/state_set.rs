use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use smallvec::SmallVec;

/// Dense index of a state within its model.
pub type StateId = usize;

/// A finite set of states, stored as a bitset.
///
/// Trailing zero words are always trimmed, so two sets are equal iff their
/// word vectors are equal. Models with up to 64 states never allocate.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct StateSet {
    words: SmallVec<[u64; 1]>,
}

impl StateSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(s: StateId) -> Self {
        let mut set = Self::new();
        set.insert(s);
        set
    }

    /// All states `0..n`.
    pub fn full(n: usize) -> Self {
        let mut set = Self::new();
        for s in 0..n {
            set.insert(s);
        }
        set
    }

    /// Builds a set from the low `n` bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        let mut words = SmallVec::new();
        if mask != 0 {
            words.push(mask);
        }
        StateSet { words }
    }

    /// The set as a single machine word, if every member is below 64.
    pub fn as_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, s: StateId) {
        let (w, b) = (s / 64, s % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, s: StateId) {
        let (w, b) = (s / 64, s % 64);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn contains(&self, s: StateId) -> bool {
        let (w, b) = (s / 64, s % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &StateSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(other.words.iter()) {
            *w |= o;
        }
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        self.words.truncate(other.words.len());
        for (w, o) in self.words.iter_mut().zip(other.words.iter()) {
            *w &= o;
        }
        self.trim();
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(other.words.iter()) {
            *w &= !o;
        }
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(other.words.iter()).all(|(w, o)| w & !o == 0)
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(w, o)| w & o == 0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        !self.is_disjoint(other)
    }

    /// Renders the set with display names, e.g. `{s1,s2}`.
    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<&str> = self.iter().map(|s| names[s].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl FromIterator<StateId> for StateSet {
    fn from_iter<I: IntoIterator<Item = StateId>>(iter: I) -> Self {
        let mut set = StateSet::new();
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl<const N: usize> From<[StateId; N]> for StateSet {
    fn from(states: [StateId; N]) -> Self {
        states.into_iter().collect()
    }
}

/// Sets are ordered by their sorted member sequences, so `{0} < {0,1} < {1}`.
impl Ord for StateSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for StateSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A canonical family of state sets (the value of a neighborhood or
/// effectivity function at one state). May contain the empty set.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family(BTreeSet<StateSet>);

impl Family {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, set: StateSet) -> bool {
        self.0.insert(set)
    }

    pub fn remove(&mut self, set: &StateSet) -> bool {
        self.0.remove(set)
    }

    pub fn contains(&self, set: &StateSet) -> bool {
        self.0.contains(set)
    }

    pub fn contains_empty(&self) -> bool {
        self.0.contains(&StateSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &StateSet> + '_ {
        self.0.iter()
    }

    /// Union of all member sets.
    pub fn union_all(&self) -> StateSet {
        let mut out = StateSet::new();
        for set in &self.0 {
            out.union_with(set);
        }
        out
    }

    /// True iff every superset (within `0..n_states`) of a member is a member.
    pub fn is_superset_closed(&self, n_states: usize) -> bool {
        let full = StateSet::full(n_states);
        self.0.iter().all(|y| {
            full.difference(y)
                .iter()
                .all(|t| self.0.contains(&y.union(&StateSet::singleton(t))))
        })
    }

    /// `{Y ⊆ 0..n | ∃Z ∈ self, Z ⊆ Y}`. Callers bound `n_states` (see
    /// [`crate::model::MAX_ALPHA_STATES`]).
    pub fn superset_closure(&self, n_states: usize) -> Family {
        assert!(n_states <= 63, "superset closure over {n_states} states");
        let members: Vec<u64> = self
            .0
            .iter()
            .map(|z| z.as_mask().expect("member outside carrier"))
            .collect();
        let mut out = Family::new();
        for y in 0..(1u64 << n_states) {
            if members.iter().any(|z| z & !y == 0) {
                out.insert(StateSet::from_mask(y));
            }
        }
        out
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.0.iter().map(|y| y.display_with(names)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl FromIterator<StateSet> for Family {
    fn from_iter<I: IntoIterator<Item = StateSet>>(iter: I) -> Self {
        Family(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a StateSet;
    type IntoIter = std::collections::btree_set::Iter<'a, StateSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// `family` covers `ground` with ∅ allowed as a member.
pub fn is_general_cover(family: &Family, ground: &StateSet) -> bool {
    family.union_all() == *ground
}

/// A general cover without ∅.
pub fn is_cover(family: &Family, ground: &StateSet) -> bool {
    !family.contains_empty() && is_general_cover(family, ground)
}

/// Union equals `ground` and distinct members are disjoint (∅ allowed).
pub fn is_general_partition(family: &Family, ground: &StateSet) -> bool {
    if !is_general_cover(family, ground) {
        return false;
    }
    let members: Vec<&StateSet> = family.iter().collect();
    members
        .iter()
        .enumerate()
        .all(|(i, y)| members[i + 1..].iter().all(|z| y.is_disjoint(z)))
}

/// A general partition without ∅.
pub fn is_partition(family: &Family, ground: &StateSet) -> bool {
    !family.contains_empty() && is_general_partition(family, ground)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = StateSet::from([1, 2]);
        let b = StateSet::from([2, 3, 70]);
        assert_eq!(a.intersection(&b), StateSet::from([2]));
        assert_eq!(a.union(&b).len(), 4);
        assert!(b.contains(70));
        assert_eq!(b.difference(&StateSet::from([70])), StateSet::from([2, 3]));
        assert_eq!(b.difference(&StateSet::from([70])).as_mask(), Some(0b1100));
        assert!(StateSet::from([2]).is_subset(&a));
        assert!(!a.is_subset(&StateSet::from([2])));
        assert!(StateSet::new().is_subset(&StateSet::new()));
    }

    #[test]
    fn removing_high_member_trims() {
        let mut s = StateSet::from([3, 100]);
        s.remove(100);
        assert_eq!(s, StateSet::from([3]));
    }

    #[test]
    fn ordering_is_by_members() {
        let mut v = vec![StateSet::from([1]), StateSet::from([0, 1]), StateSet::from([0])];
        v.sort();
        assert_eq!(v, vec![StateSet::from([0]), StateSet::from([0, 1]), StateSet::from([1])]);
    }

    #[test]
    fn closure_examples() {
        // {{s1}} over {s0,s1} closes to {{s1},{s0,s1}}.
        let fam: Family = [StateSet::from([1])].into_iter().collect();
        let closed = fam.superset_closure(2);
        let expected: Family = [StateSet::from([1]), StateSet::from([0, 1])].into_iter().collect();
        assert_eq!(closed, expected);
        assert!(closed.is_superset_closed(2));
        assert!(!fam.is_superset_closed(2));
        assert!(Family::new().superset_closure(3).is_empty());
        let with_empty: Family = [StateSet::new()].into_iter().collect();
        assert_eq!(with_empty.superset_closure(3).len(), 8);
    }

    #[test]
    fn partitions_and_covers() {
        let ground = StateSet::from([1, 2]);
        let fam: Family = [StateSet::from([1]), StateSet::from([2]), StateSet::new()]
            .into_iter()
            .collect();
        assert!(is_general_partition(&fam, &ground));
        assert!(!is_partition(&fam, &ground));
        assert!(is_general_cover(&fam, &ground));
        let overlapping: Family = [StateSet::from([1]), StateSet::from([1, 2])].into_iter().collect();
        assert!(!is_general_partition(&overlapping, &ground));
        assert!(is_cover(&overlapping, &ground));
        assert!(is_partition(&Family::new(), &StateSet::new()));
    }
}
