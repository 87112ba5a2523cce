//! Published reference values used as golden data by the verifiers.

use crate::classify::Hypothesis;

/// |Sort_n(σ)| for n = 1..10.
pub const SORTABLE: [(&str, [u64; 10]); 3] = [
    ("213", [1, 2, 5, 16, 62, 273, 1307, 6626, 35010, 190862]),
    ("231", [1, 2, 6, 23, 102, 496, 2569, 13934, 78295, 452439]),
    ("312", [1, 2, 5, 15, 52, 201, 843, 3764, 17659, 86245]),
];

/// |Sorted_n(σ)| for n = 1..9, non-effective σ of length 3 and 4.
pub const SORTED: [(&str, [u64; 9]); 7] = [
    ("213", [1, 2, 4, 9, 22, 58, 161, 466, 1390]),
    ("312", [1, 2, 4, 8, 17, 40, 104, 291, 855]),
    ("2134", [1, 2, 5, 13, 34, 91, 252, 724, 2150]),
    ("2143", [1, 2, 5, 13, 35, 97, 277, 813, 2448]),
    ("3124", [1, 2, 5, 13, 34, 90, 244, 683, 1979]),
    ("4123", [1, 2, 5, 13, 33, 82, 203, 510, 1321]),
    ("4132", [1, 2, 5, 13, 34, 89, 234, 622, 1684]),
];

/// Effective permutations of lengths 2, 3 and 4.
pub const EFFECTIVE: [&[&str]; 3] = [
    &["12"],
    &["123", "132", "231", "321"],
    &[
        "1234", "1243", "1324", "1342", "1423", "1432", "2314", "2341", "2413", "2431", "3142", "3214", "3241", "3412",
        "3421", "4213", "4231", "4312", "4321",
    ],
];

/// The classification of all σ of length 3 and 4 into hypothesis bands.
pub const CLASSIFICATION: [(Hypothesis, &[&str]); 6] = [
    (Hypothesis::HatContainsSigmaContains, &["1342", "2341", "2431", "3142", "3241", "4231"]),
    (Hypothesis::HatContainsSigmaAvoids, &["321", "3214", "4213", "4312", "4321"]),
    (Hypothesis::EffectiveSigmaAvoids231, &["123", "132", "1234", "1243", "1324", "1423", "1432"]),
    (Hypothesis::EffectiveAvoidsXiReversed, &["2314", "2413"]),
    (Hypothesis::EffectiveContainsXiReversed, &["231", "3412", "3421"]),
    (Hypothesis::HatStartsWithOne, &["213", "312", "2134", "2143", "3124", "4123", "4132"]),
];

/// 3421-sortable permutations that start with 1 but are not the identity.
pub const SORTABLE_3421_STARTING_WITH_1: [&str; 4] = ["12354", "12453", "12534", "12543"];

pub fn sortable(sigma: &str) -> Option<&'static [u64]> {
    SORTABLE.iter().find(|(s, _)| *s == sigma).map(|(_, v)| &v[..])
}

pub fn sorted(sigma: &str) -> Option<&'static [u64]> {
    SORTED.iter().find(|(s, _)| *s == sigma).map(|(_, v)| &v[..])
}

pub fn band_of(sigma: &str) -> Option<Hypothesis> {
    CLASSIFICATION.iter().find(|(_, list)| list.contains(&sigma)).map(|(h, _)| *h)
}
