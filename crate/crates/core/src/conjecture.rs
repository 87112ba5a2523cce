//! Explorer for the conjectured equidistribution of statistic pairs on
//! Sort(312), Fishburn permutations avoiding 3412, and ascent sequences
//! avoiding 201.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::enumerate::sortable_list;
use crate::error::Result;
use crate::pattern::BivincularPattern;
use crate::perm::{sequence_contains, Permutation};
use crate::sweep;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    LrMax,
    RlMax,
    LrMin,
    RlMin,
}

fn records<I: Iterator<Item = u8>>(values: I, better: impl Fn(u8, u8) -> bool) -> usize {
    let mut best: Option<u8> = None;
    let mut count = 0;
    for v in values {
        if best.is_none_or(|b| better(v, b)) {
            best = Some(v);
            count += 1;
        }
    }
    count
}

pub fn stat(p: &Permutation, which: Statistic) -> usize {
    let v = p.values();
    match which {
        Statistic::LrMax => records(v.iter().copied(), |a, b| a > b),
        Statistic::RlMax => records(v.iter().rev().copied(), |a, b| a > b),
        Statistic::LrMin => records(v.iter().copied(), |a, b| a < b),
        Statistic::RlMin => records(v.iter().rev().copied(), |a, b| a < b),
    }
}

/// How ties count when taking right-to-left minima of a word with repeated
/// letters. `Strict`: x_i is a minimum if every later letter is > x_i.
/// `Weak`: every later letter is ≥ x_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RlMinConvention {
    #[default]
    Strict,
    Weak,
}

impl fmt::Display for RlMinConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RlMinConvention::Strict => "strict",
            RlMinConvention::Weak => "weak",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AscentSequence(Vec<u8>);

impl AscentSequence {
    /// Checks x_1 = 0 and x_{i+1} ≤ asc(x_1..x_i) + 1.
    pub fn new(letters: Vec<u8>) -> Option<Self> {
        let mut asc = 0usize;
        for (i, &x) in letters.iter().enumerate() {
            let bound = if i == 0 { 0 } else { asc + 1 };
            if usize::from(x) > bound {
                return None;
            }
            if i > 0 && letters[i - 1] < x {
                asc += 1;
            }
        }
        Some(AscentSequence(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&x| x == 0).count()
    }

    pub fn rl_min(&self, convention: RlMinConvention) -> usize {
        let mut count = 0;
        let mut best: Option<u8> = None;
        for &x in self.0.iter().rev() {
            let record = match (best, convention) {
                (None, _) => true,
                (Some(b), RlMinConvention::Strict) => x < b,
                (Some(b), RlMinConvention::Weak) => x <= b,
            };
            if record {
                count += 1;
            }
            best = Some(best.map_or(x, |b| b.min(x)));
        }
        count
    }
}

impl fmt::Display for AscentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Whether `word` has a subsequence order-isomorphic to `pattern`, equal
/// letters included: positions with equal pattern letters must carry equal
/// word letters, and strict order is preserved otherwise.
pub fn word_contains(word: &[u8], pattern: &[u8]) -> bool {
    fn extend(word: &[u8], pattern: &[u8], start: usize, chosen: &mut Vec<u8>) -> bool {
        let m = chosen.len();
        if m == pattern.len() {
            return true;
        }
        for i in start..word.len() {
            let x = word[i];
            let consistent = chosen.iter().zip(pattern).all(|(&y, &p)| p.cmp(&pattern[m]) == y.cmp(&x));
            if consistent {
                chosen.push(x);
                if extend(word, pattern, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(word, pattern, 0, &mut Vec::with_capacity(pattern.len()))
}

/// Ascent sequences of length n avoiding `pattern`, in lexicographic order.
pub fn ascent_sequences_avoiding(n: usize, pattern: &[u8]) -> Vec<AscentSequence> {
    fn grow(n: usize, pattern: &[u8], word: &mut Vec<u8>, asc: usize, out: &mut Vec<AscentSequence>) {
        if word.len() == n {
            out.push(AscentSequence(word.clone()));
            return;
        }
        for x in 0..=(asc + 1) as u8 {
            let last = *word.last().expect("word starts non-empty");
            word.push(x);
            // A new occurrence must use the appended letter.
            if !word_contains(word, pattern) {
                grow(n, pattern, word, asc + usize::from(last < x), out);
            }
            word.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut word = vec![0];
    if !word_contains(&word, pattern) {
        grow(n, pattern, &mut word, 0, &mut out);
    }
    out
}

/// The Fishburn pattern (231, {1}, {1}): the "2" and "3" of a 231 are
/// adjacent in position and the "1" and "2" are consecutive in value.
pub fn fishburn_pattern() -> &'static BivincularPattern {
    static PATTERN: OnceLock<BivincularPattern> = OnceLock::new();
    PATTERN.get_or_init(|| "231|1|1".parse().expect("valid pattern"))
}

pub fn is_fishburn(p: &Permutation) -> bool {
    !fishburn_pattern().is_contained_in(p)
}

/// Fishburn permutations of length n avoiding `classical`, in lexicographic order.
pub fn fishburn_avoiding(n: usize, classical: &Permutation) -> Vec<Permutation> {
    sweep::filter(n, |p| !sequence_contains(p.values(), classical.values()) && is_fishburn(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Sort312,
    Fishburn3412,
    Ascent201,
}

impl SetKind {
    pub const ALL: [SetKind; 3] = [SetKind::Sort312, SetKind::Fishburn3412, SetKind::Ascent201];

    pub fn name(self) -> &'static str {
        match self {
            SetKind::Sort312 => "sort312",
            SetKind::Fishburn3412 => "fishburn3412",
            SetKind::Ascent201 => "ascent201",
        }
    }

    pub fn pair_names(self) -> (&'static str, &'static str) {
        match self {
            SetKind::Sort312 => ("lr_max", "rl_max"),
            SetKind::Fishburn3412 => ("lr_max", "lr_min"),
            SetKind::Ascent201 => ("rl_min", "zeros"),
        }
    }
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SetKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        SetKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            crate::error::invalid(format!("unknown set {s:?}; expected sort312, fishburn3412 or ascent201"))
        })
    }
}

pub type StatPair = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointDistribution {
    pub kind: SetKind,
    pub n: usize,
    #[serde(serialize_with = "pair_counts")]
    pub counts: BTreeMap<StatPair, u64>,
}

/// JSON has no tuple keys: emit `[{"first": a, "second": b, "count": c}, ...]`.
fn pair_counts<S: serde::Serializer>(
    counts: &BTreeMap<StatPair, u64>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry {
        first: usize,
        second: usize,
        count: u64,
    }
    serializer.collect_seq(counts.iter().map(|(&(first, second), &count)| Entry { first, second, count }))
}

impl JointDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

fn tally(pairs: impl Iterator<Item = StatPair>) -> BTreeMap<StatPair, u64> {
    let mut counts = BTreeMap::new();
    for pair in pairs {
        *counts.entry(pair).or_insert(0) += 1;
    }
    counts
}

pub fn joint_distribution(kind: SetKind, n: usize) -> Result<JointDistribution> {
    joint_distribution_with(kind, n, RlMinConvention::default())
}

pub fn joint_distribution_with(kind: SetKind, n: usize, convention: RlMinConvention) -> Result<JointDistribution> {
    let counts = match kind {
        SetKind::Sort312 => {
            let sorted = sortable_list(n, &Permutation::from_vec_unchecked(vec![3, 1, 2]))?;
            tally(sorted.iter().map(|p| (stat(p, Statistic::LrMax), stat(p, Statistic::RlMax))))
        }
        SetKind::Fishburn3412 => {
            let perms = fishburn_avoiding(n, &Permutation::from_vec_unchecked(vec![3, 4, 1, 2]));
            tally(perms.iter().map(|p| (stat(p, Statistic::LrMax), stat(p, Statistic::LrMin))))
        }
        SetKind::Ascent201 => {
            let seqs = ascent_sequences_avoiding(n, &[2, 0, 1]);
            tally(seqs.iter().map(|a| (a.rl_min(convention), a.zeros())))
        }
    };
    Ok(JointDistribution { kind, n, counts })
}

/// First pair where two distributions disagree, scanning pairs in order.
pub fn first_mismatch(a: &JointDistribution, b: &JointDistribution) -> Option<(StatPair, u64, u64)> {
    let keys: std::collections::BTreeSet<_> = a.counts.keys().chain(b.counts.keys()).collect();
    keys.into_iter().find_map(|k| {
        let x = a.counts.get(k).copied().unwrap_or(0);
        let y = b.counts.get(k).copied().unwrap_or(0);
        (x != y).then_some((*k, x, y))
    })
}

/// The three distributions at one n and their pairwise comparison.
#[derive(Debug, Clone, Serialize)]
pub struct EquidistributionReport {
    pub n: usize,
    pub convention: RlMinConvention,
    pub distributions: Vec<JointDistribution>,
}

impl EquidistributionReport {
    pub fn compute(n: usize, convention: RlMinConvention) -> Result<Self> {
        let distributions =
            SetKind::ALL.iter().map(|&k| joint_distribution_with(k, n, convention)).collect::<Result<Vec<_>>>()?;
        Ok(EquidistributionReport { n, convention, distributions })
    }

    /// Cardinalities of the three sets, in `SetKind::ALL` order.
    pub fn totals(&self) -> Vec<u64> {
        self.distributions.iter().map(JointDistribution::total).collect()
    }

    /// Description of the first disagreement between any two sets.
    pub fn mismatch(&self) -> Option<String> {
        let d = &self.distributions;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if let Some(((a, b), x, y)) = first_mismatch(&d[i], &d[j]) {
                return Some(format!("{} vs {} at ({a}, {b}): {x} ≠ {y}", d[i].kind, d[j].kind));
            }
        }
        None
    }

    pub fn equidistributed(&self) -> bool {
        self.mismatch().is_none()
    }
}

impl fmt::Display for EquidistributionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {} (ascent-sequence rl_min convention: {})", self.n, self.convention)?;
        for d in &self.distributions {
            let (s, t) = d.kind.pair_names();
            writeln!(f, "{} ({s}, {t}), total {}:", d.kind, d.total())?;
            for ((a, b), c) in &d.counts {
                writeln!(f, "  ({a}, {b}) → {c}")?;
            }
        }
        match self.mismatch() {
            None => write!(f, "EQUIDISTRIBUTED: yes"),
            Some(m) => write!(f, "EQUIDISTRIBUTED: no (first mismatch: {m})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_permutations, perm};

    #[test]
    fn statistics() {
        assert_eq!(stat(&perm("2413"), Statistic::LrMax), 2);
        assert_eq!(stat(&perm("12345"), Statistic::LrMax), 5);
        assert_eq!(stat(&perm("321"), Statistic::RlMin), 1);
        assert_eq!(stat(&perm("321"), Statistic::RlMax), 3);
        assert_eq!(stat(&perm("2413"), Statistic::LrMin), 2);
        assert_eq!(stat(&perm("2413"), Statistic::RlMin), 2);
    }

    fn brute_ascent_sequences(n: usize) -> Vec<AscentSequence> {
        // every word over {0..n-1} of length n, filtered by the definition
        let mut out = Vec::new();
        let total = n.pow(n as u32);
        for mut code in 0..total {
            let mut w = vec![0u8; n];
            for x in w.iter_mut() {
                *x = (code % n) as u8;
                code /= n;
            }
            w.reverse();
            if let Some(a) = AscentSequence::new(w) {
                out.push(a);
            }
        }
        out.sort();
        out
    }

    fn brute_word_contains(word: &[u8], pattern: &[u8]) -> bool {
        let k = pattern.len();
        (0u32..1 << word.len()).filter(|m| m.count_ones() as usize == k).any(|mask| {
            let sub: Vec<u8> = (0..word.len()).filter(|i| mask >> i & 1 == 1).map(|i| word[i]).collect();
            (0..k).all(|i| (0..k).all(|j| sub[i].cmp(&sub[j]) == pattern[i].cmp(&pattern[j])))
        })
    }

    #[test]
    fn ascent_generation_matches_definition() {
        let all_counts: Vec<usize> = (1..=7).map(|n| brute_ascent_sequences(n).len()).collect();
        assert_eq!(all_counts, [1, 2, 5, 15, 53, 217, 1014]);
        for n in 1..=7 {
            let want: Vec<_> = brute_ascent_sequences(n)
                .into_iter()
                .filter(|a| !brute_word_contains(a.letters(), &[2, 0, 1]))
                .collect();
            assert_eq!(ascent_sequences_avoiding(n, &[2, 0, 1]), want, "n = {n}");
        }
        assert_eq!(ascent_sequences_avoiding(1, &[2, 0, 1]), vec![AscentSequence(vec![0])]);
    }

    #[test]
    fn word_containment_respects_equalities() {
        let words: [&[u8]; 5] = [&[0, 1, 0], &[2, 0, 1], &[1, 1, 0, 2], &[0, 2, 2, 1, 0], &[3, 1, 2, 0, 2]];
        let patterns: [&[u8]; 5] = [&[0, 0], &[1, 0], &[2, 0, 1], &[0, 1, 0], &[1, 0, 1]];
        for w in words {
            for p in patterns {
                assert_eq!(word_contains(w, p), brute_word_contains(w, p), "{w:?} {p:?}");
            }
        }
    }

    #[test]
    fn zeros_and_rl_min() {
        let a = AscentSequence::new(vec![0, 1, 0]).unwrap();
        assert_eq!(a.zeros(), 2);
        assert_eq!(AscentSequence::new(vec![0]).unwrap().zeros(), 1);
        assert_eq!(AscentSequence::new(vec![0, 0, 0]).unwrap().zeros(), 3);
        let b = AscentSequence::new(vec![0, 1, 1, 0, 2]).unwrap();
        assert_eq!(b.rl_min(RlMinConvention::Strict), 2);
        assert_eq!(b.rl_min(RlMinConvention::Weak), 3);
        let c = AscentSequence::new(vec![0, 1, 1]).unwrap();
        assert_eq!(c.rl_min(RlMinConvention::Strict), 2);
        assert_eq!(c.rl_min(RlMinConvention::Weak), 3);
        assert!(AscentSequence::new(vec![0, 2]).is_none());
        assert!(AscentSequence::new(vec![1]).is_none());
    }

    #[test]
    fn fishburn_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| all_permutations(n).filter(is_fishburn).count()).collect();
        assert_eq!(counts, [1, 2, 5, 15, 53, 217, 1014]);
        let avoiding: Vec<usize> = (1..=7).map(|n| fishburn_avoiding(n, &perm("3412")).len()).collect();
        assert_eq!(avoiding, [1, 2, 5, 15, 52, 201, 843]);
        assert_eq!(fishburn_avoiding(1, &perm("3412")), vec![perm("1")]);
    }

    #[test]
    fn other_fishburn_reading_loses_the_count() {
        // Position-adjacent "3" and "1" instead: still Fishburn-many, but the
        // 3412-avoiders fall to the Catalan numbers.
        let bp: BivincularPattern = "231|2|1".parse().unwrap();
        let counts: Vec<usize> =
            (1..=6).map(|n| all_permutations(n).filter(|p| !bp.is_contained_in(p)).count()).collect();
        assert_eq!(counts, [1, 2, 5, 15, 53, 217]);
        let avoiding: Vec<usize> = (1..=6)
            .map(|n| all_permutations(n).filter(|p| !bp.is_contained_in(p) && p.avoids(&perm("3412"))).count())
            .collect();
        assert_eq!(avoiding, [1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn cardinality_chain() {
        for n in 1..=7 {
            let report = EquidistributionReport::compute(n, RlMinConvention::Strict).unwrap();
            let t = report.totals();
            assert!(t[0] == t[1] && t[1] == t[2], "n = {n}: {t:?}");
        }
        assert_eq!(joint_distribution(SetKind::Sort312, 3).unwrap().total(), 5);
        assert_eq!(joint_distribution(SetKind::Ascent201, 3).unwrap().total(), 5);
        assert_eq!(joint_distribution(SetKind::Ascent201, 6).unwrap().total(), 201);
    }

    #[test]
    fn strict_convention_equidistributes_small_n() {
        for n in 1..=6 {
            assert!(EquidistributionReport::compute(n, RlMinConvention::Strict).unwrap().equidistributed(), "n = {n}");
        }
        assert!(!EquidistributionReport::compute(2, RlMinConvention::Weak).unwrap().equidistributed());
    }

    #[test]
    fn report_layout() {
        let text = EquidistributionReport::compute(2, RlMinConvention::Strict).unwrap().to_string();
        assert!(text.starts_with("n = 2 (ascent-sequence rl_min convention: strict)\n"));
        assert!(text.contains("sort312 (lr_max, rl_max), total 2:\n  (1, 2) → 1\n  (2, 1) → 1\n"));
        assert!(text.lines().last().unwrap().starts_with("EQUIDISTRIBUTED: "));
    }

    #[test]
    fn distribution_json() {
        let d = joint_distribution(SetKind::Sort312, 2).unwrap();
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"kind":"sort312","n":2,"counts":[{"first":1,"second":2,"count":1},{"first":2,"second":1,"count":1}]}"#
        );
    }
}
