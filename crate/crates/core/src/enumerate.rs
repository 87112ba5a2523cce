//! Exhaustive enumeration of σ-sortable permutations, σ-sorted permutations
//! and σ-fertilities, plus closed forms for the 123-machine.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::Result;
use crate::machine::SigmaStackOperator;
use crate::perm::{all_permutations, direct_sum, sequence_contains, skew_sum, Permutation};
use crate::sweep;

/// Sort_n(σ) in lexicographic order, generated lazily.
pub fn sortable_permutations(n: usize, sigma: &Permutation) -> Result<impl Iterator<Item = Permutation>> {
    let op = SigmaStackOperator::new(sigma)?;
    Ok(all_permutations(n).filter(move |p| op.sorts(p)))
}

/// Sort_n(σ) in lexicographic order, computed in parallel.
pub fn sortable_list(n: usize, sigma: &Permutation) -> Result<Vec<Permutation>> {
    let op = SigmaStackOperator::new(sigma)?;
    Ok(sweep::filter(n, |p| op.sorts(p)))
}

pub fn count_sortable(n: usize, sigma: &Permutation) -> Result<BigUint> {
    let op = SigmaStackOperator::new(sigma)?;
    Ok(BigUint::from(sweep::count(n, |p| op.sorts(p))))
}

/// Each σ-sorted output γ of length n with the number of sortable inputs
/// mapped onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedProfile {
    pub n: usize,
    pub sigma: Permutation,
    pub entries: BTreeMap<Permutation, u64>,
}

impl SortedProfile {
    /// Σ of fertilities, i.e. |Sort_n(σ)|.
    pub fn total(&self) -> BigUint {
        self.entries.values().map(|&c| BigUint::from(c)).sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// JSON object from permutation text (separated form) to count.
impl Serialize for SortedProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (gamma, count) in &self.entries {
            map.serialize_entry(&gamma.to_string(), count)?;
        }
        map.end()
    }
}

fn merge_counts(mut a: HashMap<Permutation, u64>, b: HashMap<Permutation, u64>) -> HashMap<Permutation, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

pub fn sorted_profile(n: usize, sigma: &Permutation) -> Result<SortedProfile> {
    let op = SigmaStackOperator::new(sigma)?;
    let counts = sweep::fold(
        n,
        HashMap::new,
        |acc, p| {
            let out = op.apply(&p);
            if !sequence_contains(out.values(), &[2, 3, 1]) {
                *acc.entry(out).or_insert(0) += 1;
            }
        },
        merge_counts,
    );
    Ok(SortedProfile { n, sigma: sigma.clone(), entries: counts.into_iter().collect() })
}

/// Every output of the σ-stack over all of S_n with its full preimage count.
pub fn image_profile(n: usize, sigma: &Permutation) -> Result<BTreeMap<Permutation, u64>> {
    let op = SigmaStackOperator::new(sigma)?;
    let counts = sweep::fold(n, HashMap::new, |acc, p| *acc.entry(op.apply(&p)).or_insert(0) += 1, merge_counts);
    Ok(counts.into_iter().collect())
}

pub fn count_sorted(n: usize, sigma: &Permutation) -> Result<BigUint> {
    Ok(BigUint::from(sorted_profile(n, sigma)?.len()))
}

/// |{π ∈ S_n : map_σ(π) = γ}| over all of S_n, n = |γ|.
pub fn fertility(sigma: &Permutation, gamma: &Permutation) -> Result<BigUint> {
    let op = SigmaStackOperator::new(sigma)?;
    Ok(BigUint::from(sweep::count(gamma.len(), |p| op.apply(p) == *gamma)))
}

/// C_n = (2n choose n) / (n + 1).
pub fn catalan(n: usize) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..n {
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

/// 1 + Σ_{j=1}^{n−1} (n − j)·C_j.
pub fn count_sortable_123_formula(n: usize) -> BigUint {
    (1..n).fold(BigUint::one(), |acc, j| acc + BigUint::from(n - j) * catalan(j))
}

/// γ = id_i^R ⊖ (id_j^R ⊕ id_k^R) with j ≥ 1 and i + j + k = n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaDecomposition {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl GammaDecomposition {
    pub fn build(&self) -> Permutation {
        skew_sum(
            &Permutation::decreasing(self.i),
            &direct_sum(&Permutation::decreasing(self.j), &Permutation::decreasing(self.k)),
        )
    }
}

/// The decomposition with the largest `i` among those producing `gamma`,
/// or `None` when γ has no such form (exactly when γ contains 123 or 231).
pub fn gamma_decomposition_123(gamma: &Permutation) -> Option<GammaDecomposition> {
    let n = gamma.len();
    (0..n).rev().find_map(|i| {
        (1..=n - i).find_map(|j| {
            let d = GammaDecomposition { i, j, k: n - i - j };
            (d.build() == *gamma).then_some(d)
        })
    })
}

/// Both per-γ fertility expressions for σ = 123: the stated one,
/// (n − j)·C_j when k ≥ 1, and the per-γ law C_j. Both give 1 when k = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fertility123 {
    pub decomposition: GammaDecomposition,
    pub stated: BigUint,
    pub per_gamma: BigUint,
}

pub fn fertility_123_readings(gamma: &Permutation) -> Option<Fertility123> {
    let d = gamma_decomposition_123(gamma)?;
    let n = gamma.len();
    let (stated, per_gamma) =
        if d.k == 0 { (BigUint::one(), BigUint::one()) } else { (BigUint::from(n - d.j) * catalan(d.j), catalan(d.j)) };
    Some(Fertility123 { decomposition: d, stated, per_gamma })
}

/// Σ over Sorted_n(123) of the given reading; compare against
/// `count_sortable_123_formula(n)`.
pub fn sum_fertility_123(n: usize, stated: bool) -> BigUint {
    let sigma = Permutation::identity(3);
    let basis = [sigma, Permutation::new(vec![2, 3, 1]).expect("231")];
    crate::perm::avoiders(n, &basis)
        .filter_map(|g| fertility_123_readings(&g))
        .map(|f| if stated { f.stated } else { f.per_gamma })
        .fold(BigUint::zero(), |a, b| a + b)
}

/// Knuth's stack-sort, written recursively: s(L n R) = s(L) s(R) n. Kept
/// independent of the σ-stack code so it can serve as a cross-check.
pub fn stack_sort(values: &[u8]) -> Vec<u8> {
    let Some((at, &max)) = values.iter().enumerate().max_by_key(|&(_, v)| *v) else {
        return Vec::new();
    };
    let mut out = stack_sort(&values[..at]);
    out.extend(stack_sort(&values[at + 1..]));
    out.push(max);
    out
}

/// Permutations sorted by two passes of the classical stack.
pub fn count_west_2_stack_sortable(n: usize) -> BigUint {
    BigUint::from(sweep::count(n, |p| {
        let twice = stack_sort(&stack_sort(p.values()));
        twice.windows(2).all(|w| w[0] < w[1])
    }))
}

/// 2(3n)! / ((n+1)!(2n+1)!), for n ≥ 1.
pub fn west_2_stack_sortable_formula(n: usize) -> BigUint {
    let fact = |m: usize| (1..=m).fold(BigUint::one(), |a, i| a * BigUint::from(i));
    BigUint::from(2u8) * fact(3 * n) / (fact(n + 1) * fact(2 * n + 1))
}

/// |s(S_n) ∩ Av(231)| for Knuth's stack-sort s; equals |Sorted_n(21)|.
pub fn count_sorted_21_via_stack_sort(n: usize) -> BigUint {
    let images = sweep::fold(
        n,
        std::collections::HashSet::new,
        |acc, p| {
            let out = stack_sort(p.values());
            if !sequence_contains(&out, &[2, 3, 1]) {
                acc.insert(out);
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    BigUint::from(images.len())
}
