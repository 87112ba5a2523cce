//! Bivincular patterns, the pattern ξ = (132, {0,2}, ∅), first-element
//! decompositions and the count of ξ-avoiders.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::perm::{reverse, Permutation};
use crate::search::Matcher;
use crate::sweep;

/// A classical pattern with adjacency constraints: `x` in `positions` forces
/// the x-th and (x+1)-th entries of an occurrence to be adjacent in the host,
/// `y` in `values` forces the y-th and (y+1)-th smallest values to be
/// consecutive integers. Index 0 and k refer to the host's boundaries.
#[derive(Clone)]
pub struct BivincularPattern {
    pattern: Permutation,
    positions: BTreeSet<usize>,
    values: BTreeSet<usize>,
    matcher: Matcher,
}

impl BivincularPattern {
    pub fn new(
        pattern: Permutation,
        positions: impl IntoIterator<Item = usize>,
        values: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let k = pattern.len();
        let positions: BTreeSet<usize> = positions.into_iter().collect();
        let values: BTreeSet<usize> = values.into_iter().collect();
        if let Some(bad) = positions.iter().chain(&values).find(|&&i| i > k) {
            return Err(invalid(format!("adjacency index {bad} outside 0..={k}")));
        }
        let pos: Vec<usize> = positions.iter().copied().collect();
        let val: Vec<usize> = values.iter().copied().collect();
        let matcher = Matcher::bivincular(pattern.values(), &pos, &val);
        Ok(BivincularPattern { pattern, positions, values, matcher })
    }

    pub fn classical(pattern: Permutation) -> Self {
        Self::new(pattern, [], []).expect("no adjacency indices")
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn positions(&self) -> &BTreeSet<usize> {
        &self.positions
    }

    pub fn values(&self) -> &BTreeSet<usize> {
        &self.values
    }

    pub fn is_contained_in(&self, host: &Permutation) -> bool {
        self.matcher.is_contained_in(host.values())
    }

    /// 1-based position tuples of every occurrence, lexicographic.
    pub fn occurrences_in(&self, host: &Permutation) -> Vec<Vec<usize>> {
        let mut search = self.matcher.search(host.values());
        let mut out = Vec::new();
        while search.advance() {
            out.push(search.indices().iter().map(|i| i + 1).collect());
        }
        out
    }
}

impl PartialEq for BivincularPattern {
    fn eq(&self, other: &Self) -> bool {
        self.pattern == other.pattern && self.positions == other.positions && self.values == other.values
    }
}

impl Eq for BivincularPattern {}

impl fmt::Debug for BivincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivincularPattern({self})")
    }
}

fn join(set: &BTreeSet<usize>) -> String {
    set.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// `pattern|X|Y`, e.g. `132|0,2|`.
impl fmt::Display for BivincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}|{}", self.pattern.to_compact(), join(&self.positions), join(&self.values))
    }
}

impl FromStr for BivincularPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: String| Error::ParsePattern { input: s.to_string(), reason };
        let fields: Vec<&str> = s.split('|').collect();
        let [pattern, xs, ys] = fields.as_slice() else {
            return Err(fail(format!("expected 3 '|'-separated fields, found {}", fields.len())));
        };
        let pattern: Permutation = pattern.parse().map_err(|e: Error| fail(e.to_string()))?;
        let indices = |field: &str| -> Result<Vec<usize>> {
            field
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| fail(format!("{t:?}: {e}"))))
                .collect()
        };
        BivincularPattern::new(pattern, indices(xs)?, indices(ys)?).map_err(|e| fail(e.to_string()))
    }
}

pub fn contains_bivincular(host: &Permutation, bp: &BivincularPattern) -> bool {
    bp.is_contained_in(host)
}

/// (σ^R, {k − x : x ∈ X}, Y): p contains the result iff p^R contains `bp`.
pub fn reverse_bivincular(bp: &BivincularPattern) -> BivincularPattern {
    let k = bp.pattern.len();
    BivincularPattern::new(reverse(&bp.pattern), bp.positions.iter().map(|&x| k - x), bp.values.iter().copied())
        .expect("mirrored indices stay within 0..=k")
}

/// ξ = (132, {0, 2}, ∅): a 132 starting at the first entry whose "3" and "2"
/// are adjacent.
pub fn xi() -> &'static BivincularPattern {
    static XI: OnceLock<BivincularPattern> = OnceLock::new();
    XI.get_or_init(|| {
        let pattern = Permutation::new(vec![1, 3, 2]).expect("132");
        BivincularPattern::new(pattern, [0, 2], []).expect("indices within 0..=3")
    })
}

/// ξ^R = (231, {1, 3}, ∅).
pub fn xi_reversed() -> &'static BivincularPattern {
    static XI_R: OnceLock<BivincularPattern> = OnceLock::new();
    XI_R.get_or_init(|| reverse_bivincular(xi()))
}

/// Linear scan: some adjacent descent π_j > π_{j+1} lies entirely above π_1.
pub fn contains_xi(host: &Permutation) -> bool {
    let v = host.values();
    match v.first() {
        None => false,
        Some(&first) => v[1..].windows(2).any(|w| w[0] > w[1] && w[1] > first),
    }
}

/// π = π_1 B_0 b_1 B_1 … b_t B_t with {b_1..b_t} = {1..t} and π_1 = t + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstElementDecomposition {
    pub t: usize,
    pub blocks: Vec<Vec<u8>>,
    /// b_1..b_t in host order.
    pub smalls: Vec<u8>,
    /// 1-based host positions of b_1..b_t.
    pub small_positions: Vec<usize>,
}

impl FirstElementDecomposition {
    pub fn reassemble(&self) -> Vec<u8> {
        let mut out = vec![self.t as u8 + 1];
        out.extend(&self.blocks[0]);
        for (b, block) in self.smalls.iter().zip(&self.blocks[1..]) {
            out.push(*b);
            out.extend(block);
        }
        out
    }
}

pub fn first_element_decomposition(p: &Permutation) -> Result<FirstElementDecomposition> {
    let v = p.values();
    let Some(&first) = v.first() else {
        return Err(invalid("first-element decomposition of the empty permutation"));
    };
    let t = first as usize - 1;
    let mut blocks = vec![Vec::new()];
    let mut smalls = Vec::with_capacity(t);
    let mut small_positions = Vec::with_capacity(t);
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x < first {
            smalls.push(x);
            small_positions.push(i + 1);
            blocks.push(Vec::new());
        } else {
            blocks.last_mut().expect("block 0 exists").push(x);
        }
    }
    Ok(FirstElementDecomposition { t, blocks, smalls, small_positions })
}

/// Every block of the first-element decomposition is increasing. The empty
/// permutation trivially qualifies.
pub fn avoids_xi_via_blocks(p: &Permutation) -> bool {
    match first_element_decomposition(p) {
        Ok(d) => d.blocks.iter().all(|b| b.windows(2).all(|w| w[0] < w[1])),
        Err(_) => true,
    }
}

/// Σ_{t=0}^{n−1} t!·(t+1)^{n−t−1}.
pub fn count_xi_avoiders_formula(n: usize) -> BigUint {
    let mut total = BigUint::zero();
    let mut factorial = BigUint::one();
    for t in 0..n {
        if t > 0 {
            factorial *= t;
        }
        total += &factorial * BigUint::from(t + 1).pow((n - t - 1) as u32);
    }
    total
}

/// Number of ξ-avoiders in S_n by exhaustive scan.
pub fn count_xi_avoiders_brute(n: usize) -> BigUint {
    BigUint::from(sweep::count(n, |p| !contains_xi(p)))
}
