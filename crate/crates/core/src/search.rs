//! Backtracking engine shared by classical and bivincular containment and by
//! the σ-stack push test.
//!
//! Candidate index tuples are extended left to right. An entry is accepted
//! only if it sits strictly between the host values already matched to its
//! nearest pattern neighbours below and above, which is enough to keep the
//! partial tuple order-isomorphic to the pattern prefix.

#[derive(Debug, Clone)]
pub(crate) struct Matcher {
    pattern: Vec<u8>,
    /// Earlier pattern position holding the largest value below `pattern[m]`.
    lower: Vec<Option<usize>>,
    /// Earlier pattern position holding the smallest value above `pattern[m]`.
    upper: Vec<Option<usize>>,
    /// `position_of[v - 1]` is the pattern position holding value `v`.
    position_of: Vec<usize>,
    anchor_start: bool,
    anchor_end: bool,
    /// `adjacent[m]`: entry `m` must sit right after entry `m - 1` (m ≥ 1).
    adjacent: Vec<bool>,
    value_adjacent: Vec<usize>,
    empty_needs_empty_host: bool,
}

impl Matcher {
    pub(crate) fn classical(pattern: &[u8]) -> Self {
        let k = pattern.len();
        let mut lower = Vec::with_capacity(k);
        let mut upper = Vec::with_capacity(k);
        for (m, &v) in pattern.iter().enumerate() {
            let before = &pattern[..m];
            lower.push(before.iter().enumerate().filter(|&(_, &w)| w < v).max_by_key(|&(_, &w)| w).map(|(l, _)| l));
            upper.push(before.iter().enumerate().filter(|&(_, &w)| w > v).min_by_key(|&(_, &w)| w).map(|(u, _)| u));
        }
        let mut position_of = vec![0; k];
        for (m, &v) in pattern.iter().enumerate() {
            position_of[v as usize - 1] = m;
        }
        Matcher {
            pattern: pattern.to_vec(),
            lower,
            upper,
            position_of,
            anchor_start: false,
            anchor_end: false,
            adjacent: vec![false; k],
            value_adjacent: Vec::new(),
            empty_needs_empty_host: false,
        }
    }

    /// Occurrences whose first entry is the host's first entry.
    pub(crate) fn anchored(pattern: &[u8]) -> Self {
        let mut m = Self::classical(pattern);
        m.anchor_start = true;
        m
    }

    /// `positions` and `values` use the boundary conventions i_0 = j_0 = 0 and
    /// i_{k+1} = j_{k+1} = n + 1. Callers validate that both lie in 0..=k.
    pub(crate) fn bivincular(pattern: &[u8], positions: &[usize], values: &[usize]) -> Self {
        let k = pattern.len();
        let mut m = Self::classical(pattern);
        for &x in positions {
            if x == 0 {
                m.anchor_start = true;
            }
            if x == k {
                m.anchor_end = true;
            }
            if x >= 1 && x < k {
                m.adjacent[x] = true;
            }
        }
        m.value_adjacent = values.to_vec();
        m.empty_needs_empty_host = k == 0 && (positions.contains(&0) || values.contains(&0));
        m
    }

    pub(crate) fn len(&self) -> usize {
        self.pattern.len()
    }

    pub(crate) fn search<'a>(&'a self, host: &'a [u8]) -> Search<'a> {
        Search { matcher: self, host, cursor: Cursor::new(self.pattern.len()) }
    }

    pub(crate) fn is_contained_in(&self, host: &[u8]) -> bool {
        self.search(host).advance()
    }

    fn values_ok(&self, host: &[u8], indices: &[usize]) -> bool {
        let k = self.pattern.len();
        let n = host.len();
        let value_at_rank = |r: usize| host[indices[self.position_of[r - 1]]] as usize;
        self.value_adjacent.iter().all(|&y| {
            if k == 0 {
                true
            } else if y == 0 {
                value_at_rank(1) == 1
            } else if y == k {
                value_at_rank(k) == n
            } else {
                value_at_rank(y + 1) == value_at_rank(y) + 1
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Yielded,
    Done,
}

/// Resumable depth-first search position; successive matches come out in
/// lexicographic order of their index tuples.
#[derive(Debug, Clone)]
pub(crate) struct Cursor {
    indices: Vec<usize>,
    resume: usize,
    state: State,
}

impl Cursor {
    pub(crate) fn new(capacity: usize) -> Self {
        Cursor { indices: Vec::with_capacity(capacity), resume: 0, state: State::Fresh }
    }

    pub(crate) fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Moves to the next match. Returns false once the search is exhausted.
    pub(crate) fn advance(&mut self, m: &Matcher, host: &[u8]) -> bool {
        let k = m.pattern.len();
        let n = host.len();
        match self.state {
            State::Done => return false,
            State::Yielded if k == 0 => {
                self.state = State::Done;
                return false;
            }
            State::Yielded => self.backtrack_last(),
            State::Fresh => {}
        }
        if k == 0 {
            if m.empty_needs_empty_host && n != 0 {
                self.state = State::Done;
                return false;
            }
            self.state = State::Yielded;
            return true;
        }
        if n < k {
            self.state = State::Done;
            return false;
        }
        loop {
            let depth = self.indices.len();
            if depth == k {
                if m.values_ok(host, &self.indices) {
                    self.state = State::Yielded;
                    return true;
                }
                self.backtrack_last();
                continue;
            }
            let base = if depth == 0 { 0 } else { self.indices[depth - 1] + 1 };
            let mut lo = base.max(self.resume);
            let mut hi = n - (k - depth);
            if depth == 0 && m.anchor_start {
                hi = 0;
            }
            if depth > 0 && m.adjacent[depth] {
                hi = hi.min(base);
            }
            if depth == k - 1 && m.anchor_end {
                lo = lo.max(n - 1);
            }
            let indices = &self.indices;
            let fits = |x: u8| {
                m.lower[depth].is_none_or(|l| host[indices[l]] < x)
                    && m.upper[depth].is_none_or(|u| x < host[indices[u]])
            };
            let found = (lo..=hi).find(|&c| fits(host[c]));
            match found {
                Some(c) => {
                    self.indices.push(c);
                    self.resume = 0;
                }
                None if depth == 0 => {
                    self.state = State::Done;
                    return false;
                }
                None => self.backtrack_last(),
            }
        }
    }

    fn backtrack_last(&mut self) {
        let last = self.indices.pop().expect("backtrack below root");
        self.resume = last + 1;
    }
}

pub(crate) struct Search<'a> {
    matcher: &'a Matcher,
    host: &'a [u8],
    cursor: Cursor,
}

impl Search<'_> {
    pub(crate) fn indices(&self) -> &[usize] {
        self.cursor.indices()
    }

    pub(crate) fn advance(&mut self) -> bool {
        self.cursor.advance(self.matcher, self.host)
    }
}
