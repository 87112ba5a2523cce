//! Classification of σ-machines: when Sort(σ) is a permutation class, when
//! Sort(σ) ⊆ Av(ξ), and when σ is effective (Sorted(σ) ⊆ Av(σ)).

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::pattern::{contains_bivincular, xi_reversed};
use crate::perm::{all_permutations, hat, sequence_contains, Permutation};

const P231: [u8; 3] = [2, 3, 1];

fn has_231(values: &[u8]) -> bool {
    sequence_contains(values, &P231)
}

fn require_len(sigma: &Permutation, min: usize, what: &str) -> Result<()> {
    if sigma.len() < min {
        return Err(invalid(format!("{what} needs |σ| ≥ {min}, got σ = {sigma}")));
    }
    Ok(())
}

/// The basis of Sort(σ) if it is a permutation class, `None` otherwise.
///
/// Sort(σ) is a class iff hat(σ) contains 231; the basis is {132} when σ
/// itself contains 231 and {132, σ^R} when it does not.
pub fn sort_is_class(sigma: &Permutation) -> Result<Option<Vec<Permutation>>> {
    require_len(sigma, 3, "class criterion")?;
    if !has_231(hat(sigma)?.values()) {
        return Ok(None);
    }
    let mut basis = vec![Permutation::from_vec_unchecked(vec![1, 3, 2])];
    if !has_231(sigma.values()) {
        basis.push(sigma.reverse());
    }
    basis.sort();
    Ok(Some(basis))
}

/// σ is effective unless hat(σ) = 1 ⊕ α with α avoiding 231.
pub fn is_effective(sigma: &Permutation) -> Result<bool> {
    require_len(sigma, 2, "effectiveness")?;
    let h = hat(sigma)?;
    Ok(!(h.values()[0] == 1 && !has_231(&h.values()[1..])))
}

/// β with σ = 12 ⊖ β, i.e. σ starts with n−1, n.
pub fn skew_12_decomposition(sigma: &Permutation) -> Option<Permutation> {
    let v = sigma.values();
    let n = v.len();
    if n < 3 || usize::from(v[0]) != n - 1 || usize::from(v[1]) != n {
        return None;
    }
    Some(Permutation::from_vec_unchecked(v[2..].to_vec()))
}

/// Whether Sort(σ) ⊆ Av(ξ). Fails exactly when σ = 12 ⊖ β with β avoiding 231.
pub fn sort_subset_xi(sigma: &Permutation) -> Result<bool> {
    require_len(sigma, 3, "ξ criterion")?;
    Ok(!skew_12_decomposition(sigma).is_some_and(|beta| !beta.is_empty() && !has_231(beta.values())))
}

/// The pattern form of the ξ criterion: Sort(σ) ⊄ Av(ξ) iff hat(σ) avoids
/// 231 and σ contains ξ^R. Must agree with [`sort_subset_xi`].
pub fn sort_subset_xi_via_patterns(sigma: &Permutation) -> Result<bool> {
    require_len(sigma, 3, "ξ criterion")?;
    let exceptional = !has_231(hat(sigma)?.values()) && contains_bivincular(sigma, xi_reversed());
    Ok(!exceptional)
}

/// The six hypothesis bands partitioning all σ of length ≥ 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    HatContainsSigmaContains,
    HatContainsSigmaAvoids,
    EffectiveSigmaAvoids231,
    EffectiveAvoidsXiReversed,
    EffectiveContainsXiReversed,
    HatStartsWithOne,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 6] = [
        Hypothesis::HatContainsSigmaContains,
        Hypothesis::HatContainsSigmaAvoids,
        Hypothesis::EffectiveSigmaAvoids231,
        Hypothesis::EffectiveAvoidsXiReversed,
        Hypothesis::EffectiveContainsXiReversed,
        Hypothesis::HatStartsWithOne,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Hypothesis::HatContainsSigmaContains => "hat-contains-231 ∧ σ-contains-231",
            Hypothesis::HatContainsSigmaAvoids => "hat-contains-231 ∧ σ-avoids-231",
            Hypothesis::EffectiveSigmaAvoids231 => "hat-avoids-231 ∧ hat₁≠1 ∧ σ-avoids-231",
            Hypothesis::EffectiveAvoidsXiReversed => "hat-avoids-231 ∧ hat₁≠1 ∧ σ-avoids-ξ^R ∧ σ-contains-231",
            Hypothesis::EffectiveContainsXiReversed => "hat-avoids-231 ∧ hat₁≠1 ∧ σ-contains-ξ^R",
            Hypothesis::HatStartsWithOne => "hat-avoids-231 ∧ hat₁=1",
        }
    }

    /// Expected (class, effective, Sort ⊆ Av(ξ)) flags for the band.
    pub fn expected_flags(self) -> (bool, bool, bool) {
        match self {
            Hypothesis::HatContainsSigmaContains | Hypothesis::HatContainsSigmaAvoids => (true, true, true),
            Hypothesis::EffectiveSigmaAvoids231 | Hypothesis::EffectiveAvoidsXiReversed => (false, true, true),
            Hypothesis::EffectiveContainsXiReversed => (false, true, false),
            Hypothesis::HatStartsWithOne => (false, false, true),
        }
    }

    pub fn of(sigma: &Permutation) -> Result<Hypothesis> {
        require_len(sigma, 3, "classification")?;
        let h = hat(sigma)?;
        let sigma_231 = has_231(sigma.values());
        Ok(if has_231(h.values()) {
            if sigma_231 {
                Hypothesis::HatContainsSigmaContains
            } else {
                Hypothesis::HatContainsSigmaAvoids
            }
        } else if h.values()[0] == 1 {
            Hypothesis::HatStartsWithOne
        } else if !sigma_231 {
            Hypothesis::EffectiveSigmaAvoids231
        } else if contains_bivincular(sigma, xi_reversed()) {
            Hypothesis::EffectiveContainsXiReversed
        } else {
            Hypothesis::EffectiveAvoidsXiReversed
        })
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationRow {
    pub sigma: Permutation,
    pub is_class: bool,
    pub class_basis: Option<Vec<Permutation>>,
    pub is_effective: bool,
    pub sort_inside_xi: bool,
    pub hypothesis: Hypothesis,
}

pub fn classification_row(sigma: &Permutation) -> Result<ClassificationRow> {
    let class_basis = sort_is_class(sigma)?;
    Ok(ClassificationRow {
        sigma: sigma.clone(),
        is_class: class_basis.is_some(),
        class_basis,
        is_effective: is_effective(sigma)?,
        sort_inside_xi: sort_subset_xi(sigma)?,
        hypothesis: Hypothesis::of(sigma)?,
    })
}

/// One row per σ ∈ S_len, in lexicographic order.
pub fn classification_table(len: usize) -> Result<Vec<ClassificationRow>> {
    if len < 3 {
        return Err(invalid(format!("classification needs length ≥ 3, got {len}")));
    }
    all_permutations(len).map(|s| classification_row(&s)).collect()
}

/// The effective permutations of length m, in lexicographic order.
pub fn effective_permutations(m: usize) -> Result<Vec<Permutation>> {
    if m < 2 {
        return Err(invalid(format!("effectiveness needs length ≥ 2, got {m}")));
    }
    all_permutations(m).filter_map(|s| is_effective(&s).map(|e| e.then_some(s)).transpose()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::catalan;
    use crate::perm::perm;

    fn perms(list: &str) -> Vec<Permutation> {
        list.split(',').map(|s| perm(s.trim())).collect()
    }

    #[test]
    fn class_examples() {
        assert_eq!(sort_is_class(&perm("321")).unwrap(), Some(perms("123, 132")));
        assert_eq!(sort_is_class(&perm("1342")).unwrap(), Some(perms("132")));
        assert_eq!(sort_is_class(&perm("231")).unwrap(), None);
        assert!(sort_is_class(&perm("21")).is_err());
    }

    #[test]
    fn effective_examples() {
        assert!(!is_effective(&perm("21")).unwrap());
        assert!(is_effective(&perm("12")).unwrap());
        assert!(is_effective(&perm("231")).unwrap());
        assert!(!is_effective(&perm("2134")).unwrap());
        assert!(is_effective(&perm("1")).is_err());
    }

    #[test]
    fn effective_lists() {
        assert_eq!(effective_permutations(2).unwrap(), perms("12"));
        assert_eq!(effective_permutations(3).unwrap(), perms("123, 132, 231, 321"));
        let four = "1234, 1243, 1324, 1342, 1423, 1432, 2314, 2341, 2413, 2431, \
                    3142, 3214, 3241, 3412, 3421, 4213, 4231, 4312, 4321";
        assert_eq!(effective_permutations(4).unwrap(), perms(four));
        for m in 2..=6 {
            let non = (1..=m).product::<usize>() - effective_permutations(m).unwrap().len();
            assert_eq!(catalan(m - 1), non.into(), "m = {m}");
        }
    }

    #[test]
    fn xi_examples() {
        assert!(!sort_subset_xi(&perm("231")).unwrap());
        assert!(!sort_subset_xi(&perm("3412")).unwrap());
        assert!(sort_subset_xi(&perm("123")).unwrap());
        assert!(sort_subset_xi(&perm("21")).is_err());
        assert_eq!(skew_12_decomposition(&perm("231")), Some(perm("1")));
        assert_eq!(skew_12_decomposition(&perm("3421")), Some(perm("21")));
        assert_eq!(skew_12_decomposition(&perm("321")), None);
        assert_eq!(skew_12_decomposition(&perm("12")), None);
    }

    #[test]
    fn xi_criteria_agree() {
        for m in 3..=7 {
            for s in all_permutations(m) {
                assert_eq!(sort_subset_xi(&s).unwrap(), sort_subset_xi_via_patterns(&s).unwrap(), "σ = {s}");
            }
        }
    }

    #[test]
    fn bands_partition_and_match_flags() {
        for m in 3..=6 {
            for row in classification_table(m).unwrap() {
                let flags = (row.is_class, row.is_effective, row.sort_inside_xi);
                assert_eq!(flags, row.hypothesis.expected_flags(), "σ = {}", row.sigma);
                assert_eq!(row.is_class, row.class_basis.is_some());
            }
        }
    }

    #[test]
    fn published_classification() {
        let bands: [(Hypothesis, &str); 6] = [
            (Hypothesis::HatContainsSigmaContains, "1342, 2341, 2431, 3142, 3241, 4231"),
            (Hypothesis::HatContainsSigmaAvoids, "321, 3214, 4213, 4312, 4321"),
            (Hypothesis::EffectiveSigmaAvoids231, "123, 132, 1234, 1243, 1324, 1423, 1432"),
            (Hypothesis::EffectiveAvoidsXiReversed, "2314, 2413"),
            (Hypothesis::EffectiveContainsXiReversed, "231, 3412, 3421"),
            (Hypothesis::HatStartsWithOne, "213, 312, 2134, 2143, 3124, 4123, 4132"),
        ];
        let mut rows: Vec<_> = classification_table(3).unwrap();
        rows.extend(classification_table(4).unwrap());
        for (band, list) in bands {
            let mut got: Vec<_> = rows.iter().filter(|r| r.hypothesis == band).map(|r| r.sigma.clone()).collect();
            got.sort_by_key(|p| (p.len(), p.clone()));
            assert_eq!(got, perms(list), "{band}");
        }
    }

    #[test]
    fn row_json() {
        let row = classification_row(&perm("321")).unwrap();
        let json = serde_json::to_string(&row).unwrap();
        assert_eq!(
            json,
            r#"{"sigma":"3 2 1","isClass":true,"classBasis":["1 2 3","1 3 2"],"isEffective":true,"sortInsideXi":true,"hypothesis":"hat-contains-sigma-avoids"}"#
        );
    }
}
