//! Permutations in one-line notation, classical containment and the
//! structural operators (reverse, direct/skew sums, hat).

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::search::{Cursor, Matcher};

/// A permutation of {1..n} in one-line notation. The empty permutation is a
/// valid value and is contained in every permutation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub const MAX_LEN: usize = u8::MAX as usize;

    pub fn new(values: Vec<u8>) -> Result<Self> {
        if values.len() > Self::MAX_LEN {
            return Err(invalid(format!("length {} exceeds {}", values.len(), Self::MAX_LEN)));
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(invalid(format!("{values:?} is not a permutation of 1..{n}")));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    /// Caller guarantees `values` is a permutation of 1..n.
    pub(crate) fn from_vec_unchecked(values: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok(), "{values:?}");
        Permutation(values)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    /// The increasing permutation 12…n.
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    /// The decreasing permutation n…21.
    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n as u8).rev().collect())
    }

    /// Order-isomorphic standardization of a sequence of distinct values.
    pub fn standardize(seq: &[u8]) -> Self {
        let mut order: Vec<usize> = (0..seq.len()).collect();
        order.sort_by_key(|&i| seq[i]);
        let mut out = vec![0u8; seq.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank as u8 + 1;
        }
        Permutation(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn into_values(self) -> Vec<u8> {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        contains(self, pattern)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !contains(self, pattern)
    }

    pub fn reverse(&self) -> Permutation {
        reverse(self)
    }

    /// Removes the entry at `index` (0-based) and standardizes the rest.
    pub fn delete(&self, index: usize) -> Permutation {
        let removed = self.0[index];
        Permutation(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != index)
                .map(|(_, &v)| if v > removed { v - 1 } else { v })
                .collect(),
        )
    }

    /// Separated text form, e.g. `2 4 1 3`.
    pub fn to_separated(&self) -> String {
        self.to_string()
    }

    /// Digit-string form, e.g. `2413`; falls back to the separated form for n > 9.
    pub fn to_compact(&self) -> String {
        if self.len() > 9 {
            return self.to_separated();
        }
        self.0.iter().map(|v| char::from(b'0' + v)).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Accepts whitespace- or comma-separated integers (`2 4 1 3`, `2,4,1,3`) or
/// a compact digit string (`2413`, only for n ≤ 9). The empty string parses
/// as the empty permutation.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: String| Error::ParsePermutation { input: s.to_string(), reason };
        let trimmed = s.trim();
        let separated = trimmed.contains(|c: char| c == ',' || c.is_whitespace());
        let values: Vec<u8> = if separated {
            trimmed
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u8>().map_err(|e| fail(format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            if trimmed.len() > 9 {
                return Err(fail("compact form only allowed for n ≤ 9".into()));
            }
            trimmed
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| fail(format!("unexpected character {c:?}"))))
                .collect::<Result<_>>()?
        };
        Permutation::new(values).map_err(|e| fail(e.to_string()))
    }
}

/// Serialized as its separated text form, e.g. "2 4 1 3".
impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl TryFrom<Vec<u8>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<u8>) -> Result<Self> {
        Permutation::new(values)
    }
}

/// 1-based, strictly increasing positions of one occurrence in a host.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence(Vec<usize>);

impl Occurrence {
    pub(crate) fn from_zero_based(indices: &[usize]) -> Self {
        Occurrence(indices.iter().map(|&i| i + 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

/// True iff some subsequence of `host` is order-isomorphic to `pattern`.
pub fn contains(host: &Permutation, pattern: &Permutation) -> bool {
    sequence_contains(host.values(), pattern.values())
}

/// Containment over an arbitrary sequence of distinct values (e.g. stack
/// contents). Patterns of length at most three take a linear-time path.
pub fn sequence_contains(host: &[u8], pattern: &[u8]) -> bool {
    match pattern {
        [] => true,
        [_] => !host.is_empty(),
        [1, 2] => host.windows(2).any(|w| w[0] < w[1]),
        [2, 1] => host.windows(2).any(|w| w[0] > w[1]),
        [1, 2, 3] => has_monotone_triple(host, true),
        [3, 2, 1] => has_monotone_triple(host, false),
        [1, 3, 2] => has_132(host, false, false),
        [2, 3, 1] => has_132(host, true, false),
        [3, 1, 2] => has_132(host, false, true),
        [2, 1, 3] => has_132(host, true, true),
        _ => generic_contains(host, pattern),
    }
}

/// The backtracking engine without any fast path.
pub(crate) fn generic_contains(host: &[u8], pattern: &[u8]) -> bool {
    Matcher::classical(pattern).is_contained_in(host)
}

fn has_monotone_triple(host: &[u8], increasing: bool) -> bool {
    let n = host.len();
    if n < 3 {
        return false;
    }
    let before = |a: u8, b: u8| if increasing { a < b } else { a > b };
    let mut suffix_best = vec![0u8; n];
    suffix_best[n - 1] = host[n - 1];
    for i in (0..n - 1).rev() {
        suffix_best[i] = if before(suffix_best[i + 1], host[i]) { host[i] } else { suffix_best[i + 1] };
    }
    let mut prefix_best = host[0];
    for j in 1..n - 1 {
        if before(prefix_best, host[j]) && before(host[j], suffix_best[j + 1]) {
            return true;
        }
        if before(host[j], prefix_best) {
            prefix_best = host[j];
        }
    }
    false
}

/// Detects 132 in the sequence read backwards (`reversed`) and/or with values
/// negated (`complemented`); together these cover 132, 231, 312 and 213.
fn has_132(host: &[u8], reversed: bool, complemented: bool) -> bool {
    let value = |v: u8| if complemented { -(v as i32) } else { v as i32 };
    let mut scan: Box<dyn Iterator<Item = &u8>> =
        if reversed { Box::new(host.iter()) } else { Box::new(host.iter().rev()) };
    // Right-to-left scan: `third` is the largest value already known to have a
    // bigger value to its left, which makes it a valid "2".
    let mut third = i32::MIN;
    let mut stack: Vec<i32> = Vec::with_capacity(host.len());
    scan.try_for_each(|&v| {
        let a = value(v);
        if a < third {
            return Err(());
        }
        while let Some(&top) = stack.last() {
            if a > top {
                third = top;
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(a);
        Ok(())
    })
    .is_err()
}

/// Every occurrence of `pattern` in `host`, in lexicographic index order.
pub fn occurrences<'a>(host: &'a Permutation, pattern: &Permutation) -> Occurrences<'a> {
    let matcher = Matcher::classical(pattern.values());
    let cursor = Cursor::new(matcher.len());
    Occurrences { matcher, host: host.values(), cursor }
}

pub struct Occurrences<'a> {
    matcher: Matcher,
    host: &'a [u8],
    cursor: Cursor,
}

impl Iterator for Occurrences<'_> {
    type Item = Occurrence;

    fn next(&mut self) -> Option<Occurrence> {
        self.cursor.advance(&self.matcher, self.host).then(|| Occurrence::from_zero_based(self.cursor.indices()))
    }
}

pub fn reverse(p: &Permutation) -> Permutation {
    Permutation(p.0.iter().rev().copied().collect())
}

/// a ⊕ b: `a` followed by `b` shifted up by |a|.
pub fn direct_sum(a: &Permutation, b: &Permutation) -> Permutation {
    let shift = a.len() as u8;
    Permutation(a.0.iter().copied().chain(b.0.iter().map(|&v| v + shift)).collect())
}

/// a ⊖ b: `a` shifted up by |b|, followed by `b`.
pub fn skew_sum(a: &Permutation, b: &Permutation) -> Permutation {
    let shift = b.len() as u8;
    Permutation(a.0.iter().map(|&v| v + shift).chain(b.0.iter().copied()).collect())
}

/// σ with its first two entries interchanged.
pub fn hat(s: &Permutation) -> Result<Permutation> {
    if s.len() < 2 {
        return Err(invalid(format!("hat needs length ≥ 2, got {}", s.len())));
    }
    let mut v = s.0.clone();
    v.swap(0, 1);
    Ok(Permutation(v))
}

/// All n! permutations of length n in lexicographic order.
pub fn all_permutations(n: usize) -> Lexicographic {
    Lexicographic { current: Some((1..=n as u8).collect()), fixed: 0 }
}

/// Permutations of length n starting with `first`, in lexicographic order.
/// These are exactly the blocks of `all_permutations(n)` when partitioned by
/// first entry.
pub fn permutations_starting_with(n: usize, first: u8) -> Lexicographic {
    assert!(first >= 1 && first as usize <= n, "first entry {first} out of range 1..={n}");
    let mut v = Vec::with_capacity(n);
    v.push(first);
    v.extend((1..=n as u8).filter(|&x| x != first));
    Lexicographic { current: Some(v), fixed: 1 }
}

/// Lexicographic successor generator over the suffix after `fixed` entries.
pub struct Lexicographic {
    current: Option<Vec<u8>>,
    fixed: usize,
}

impl Iterator for Lexicographic {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        if next_permutation(&mut succ[self.fixed..]) {
            self.current = Some(succ);
        }
        Some(Permutation(out))
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Permutations of length n avoiding every pattern in `basis`.
pub fn avoiders<'a>(n: usize, basis: &'a [Permutation]) -> impl Iterator<Item = Permutation> + 'a {
    all_permutations(n).filter(move |p| basis.iter().all(|b| !contains(p, b)))
}

/// Shorthand for tests and tables: parses a compact or separated permutation.
///
/// Panics on malformed input.
pub fn perm(s: &str) -> Permutation {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_contains(host: &[u8], pattern: &[u8]) -> bool {
        let n = host.len();
        let k = pattern.len();
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|mask| {
            let sub: Vec<u8> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| host[i]).collect();
            Permutation::standardize(&sub).values() == pattern
        })
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&perm("2413"), &perm("231")));
        assert!(!contains(&perm("1234"), &perm("21")));
        assert!(!contains(&perm("132"), &perm("231")));
        assert!(contains(&perm("21"), &Permutation::empty()));
        assert!(contains(&Permutation::empty(), &Permutation::empty()));
    }

    #[test]
    fn fast_paths_agree_with_engine_and_brute_force() {
        for n in 0..=7 {
            for host in all_permutations(n) {
                for k in 0..=3 {
                    for pat in all_permutations(k) {
                        let fast = sequence_contains(host.values(), pat.values());
                        assert_eq!(fast, generic_contains(host.values(), pat.values()), "{host} {pat}");
                        assert_eq!(fast, brute_contains(host.values(), pat.values()), "{host} {pat}");
                    }
                }
            }
        }
    }

    #[test]
    fn engine_matches_brute_force_for_length_four() {
        for host in all_permutations(6) {
            for pat in all_permutations(4) {
                assert_eq!(
                    generic_contains(host.values(), pat.values()),
                    brute_contains(host.values(), pat.values()),
                    "{host} {pat}"
                );
            }
        }
    }

    #[test]
    fn occurrence_examples() {
        let got: Vec<_> = occurrences(&perm("2413"), &perm("21")).map(|o| o.indices().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 3], vec![2, 3], vec![2, 4]]);
        let got: Vec<_> = occurrences(&perm("123"), &perm("123")).collect();
        assert_eq!(got, vec![Occurrence(vec![1, 2, 3])]);
        assert_eq!(occurrences(&perm("321"), &perm("12")).count(), 0);
    }

    #[test]
    fn occurrences_agree_with_contains() {
        for n in 0..=6 {
            for host in all_permutations(n) {
                for k in 0..=3 {
                    for pat in all_permutations(k) {
                        let occs: Vec<_> = occurrences(&host, &pat).collect();
                        assert_eq!(!occs.is_empty(), contains(&host, &pat));
                        assert!(occs.windows(2).all(|w| w[0] < w[1]), "not strictly lexicographic");
                        for o in &occs {
                            let sub: Vec<u8> = o.indices().iter().map(|&i| host.values()[i - 1]).collect();
                            assert_eq!(Permutation::standardize(&sub), pat);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn operators() {
        assert_eq!(reverse(&perm("2413")), perm("3142"));
        assert_eq!(reverse(&perm("1")), perm("1"));
        assert_eq!(reverse(&perm("231")), perm("132"));

        assert_eq!(direct_sum(&perm("1"), &perm("21")), perm("132"));
        assert_eq!(direct_sum(&Permutation::empty(), &perm("312")), perm("312"));
        assert_eq!(direct_sum(&perm("12"), &perm("12")), perm("1234"));

        assert_eq!(skew_sum(&perm("12"), &perm("1")), perm("231"));
        assert_eq!(skew_sum(&perm("12"), &perm("12")), perm("3412"));
        assert_eq!(skew_sum(&perm("12"), &perm("21")), perm("3421"));

        assert_eq!(hat(&perm("231")).unwrap(), perm("321"));
        assert_eq!(hat(&perm("123")).unwrap(), perm("213"));
        assert_eq!(hat(&perm("3124")).unwrap(), perm("1324"));
        assert!(matches!(hat(&perm("1")), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn generation_order_and_counts() {
        assert_eq!(all_permutations(0).collect::<Vec<_>>(), vec![Permutation::empty()]);
        let s3: Vec<_> = all_permutations(3).map(|p| p.to_compact()).collect();
        assert_eq!(s3, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(all_permutations(4).count(), 24);
        let all: Vec<_> = all_permutations(5).collect();
        let by_first: Vec<_> = (1..=5).flat_map(|f| permutations_starting_with(5, f)).collect();
        assert_eq!(all, by_first);
    }

    #[test]
    fn avoider_examples() {
        assert_eq!(avoiders(3, &[perm("231")]).count(), 5);
        let got: Vec<_> = avoiders(3, &[perm("123"), perm("231")]).map(|p| p.to_compact()).collect();
        assert_eq!(got, ["132", "213", "312", "321"]);
        assert_eq!(avoiders(4, &[]).count(), 24);
    }

    #[test]
    fn parsing() {
        assert_eq!(perm("2 4 1 3"), perm("2413"));
        assert_eq!(perm("2,4,1,3"), perm("2413"));
        assert_eq!(perm("10 1 2 3 4 5 6 7 8 9").len(), 10);
        assert_eq!(perm(""), Permutation::empty());
        assert!("24a3".parse::<Permutation>().is_err());
        assert!("2213".parse::<Permutation>().is_err());
        assert!("1234567891".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        assert_eq!(perm("2413").to_string(), "2 4 1 3");
    }

    #[test]
    fn delete_standardizes() {
        assert_eq!(perm("2413").delete(1), perm("213"));
        assert_eq!(perm("2413").delete(0), perm("312"));
    }
}
