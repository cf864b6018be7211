//! Fixed-capacity bit-set over state ids with a cached cardinality.

/// Set of state ids in `0..capacity`, stored as a bit vector.
///
/// The cardinality is kept up to date on every mutation so `len` and
/// `is_empty` are O(1); the fixpoint loops in the solvers query them on every
/// round.
#[derive(Clone, PartialEq, Eq)]
pub struct StateSet {
    words: Vec<u64>,
    capacity: usize,
    len: usize,
}

impl StateSet {
    /// Empty set over the universe `0..capacity`.
    pub fn empty(capacity: usize) -> Self {
        StateSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
            len: 0,
        }
    }

    /// Full set `{0, .., capacity-1}`.
    pub fn full(capacity: usize) -> Self {
        let mut set = StateSet::empty(capacity);
        for w in &mut set.words {
            *w = !0;
        }
        set.mask_tail();
        set.len = capacity;
        set
    }

    /// Set containing the given states.
    pub fn from_states<I: IntoIterator<Item = usize>>(capacity: usize, states: I) -> Self {
        let mut set = StateSet::empty(capacity);
        for s in states {
            set.insert(s);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, state: usize) -> bool {
        state < self.capacity && self.words[state / 64] & (1u64 << (state % 64)) != 0
    }

    /// Inserts `state`; returns true if it was not present before.
    pub fn insert(&mut self, state: usize) -> bool {
        assert!(state < self.capacity, "state {state} out of capacity {}", self.capacity);
        let word = &mut self.words[state / 64];
        let bit = 1u64 << (state % 64);
        if *word & bit != 0 {
            return false;
        }
        *word |= bit;
        self.len += 1;
        true
    }

    /// Removes `state`; returns true if it was present.
    pub fn remove(&mut self, state: usize) -> bool {
        if state >= self.capacity {
            return false;
        }
        let word = &mut self.words[state / 64];
        let bit = 1u64 << (state % 64);
        if *word & bit == 0 {
            return false;
        }
        *word &= !bit;
        self.len -= 1;
        true
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
        self.len = 0;
    }

    /// In-place union with a set over the same universe.
    pub fn union_with(&mut self, other: &StateSet) {
        assert_eq!(self.capacity, other.capacity);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        self.recount();
    }

    /// In-place intersection with a set over the same universe.
    pub fn intersect_with(&mut self, other: &StateSet) {
        assert_eq!(self.capacity, other.capacity);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        self.recount();
    }

    /// Removes every element of `other` from `self`.
    pub fn difference_with(&mut self, other: &StateSet) {
        assert_eq!(self.capacity, other.capacity);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        self.recount();
    }

    /// Complement within the universe.
    #[must_use = "complement returns a new set and leaves `self` unchanged"]
    pub fn complement(&self) -> StateSet {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.mask_tail();
        out.len = self.capacity - self.len;
        out
    }

    pub fn is_subset_of(&self, other: &StateSet) -> bool {
        assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(w, o)| w & !o == 0)
    }

    pub fn is_disjoint_from(&self, other: &StateSet) -> bool {
        assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(w, o)| w & o == 0)
    }

    /// Iterates the members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
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

    fn mask_tail(&mut self) {
        let tail = self.capacity % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }
}

impl std::fmt::Debug for StateSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
