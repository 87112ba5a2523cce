//! Exhaustive sweeps over S_n, partitioned by first entry.
//!
//! Each partition is processed independently (in parallel under rayon) and
//! the partial results are merged in first-entry order, so the outcome does
//! not depend on the worker count.

use rayon::prelude::*;

use crate::perm::{all_permutations, permutations_starting_with, Permutation};

fn partitions(n: usize) -> Vec<u8> {
    (1..=n as u8).collect()
}

/// Folds every permutation of length n into an accumulator.
pub fn fold<A, I, S, M>(n: usize, init: I, step: S, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, Permutation) + Sync,
    M: Fn(A, A) -> A,
{
    if n == 0 {
        let mut acc = init();
        all_permutations(0).for_each(|p| step(&mut acc, p));
        return acc;
    }
    let parts: Vec<A> = partitions(n)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            permutations_starting_with(n, first).for_each(|p| step(&mut acc, p));
            acc
        })
        .collect();
    let mut iter = parts.into_iter();
    let head = iter.next().expect("n ≥ 1 has a partition");
    iter.fold(head, merge)
}

pub fn count<P>(n: usize, pred: P) -> u64
where
    P: Fn(&Permutation) -> bool + Sync,
{
    fold(n, || 0u64, |acc, p| *acc += u64::from(pred(&p)), |a, b| a + b)
}

/// Permutations satisfying `pred`, in lexicographic order.
pub fn filter<P>(n: usize, pred: P) -> Vec<Permutation>
where
    P: Fn(&Permutation) -> bool + Sync,
{
    fold(
        n,
        Vec::new,
        |acc, p| {
            if pred(&p) {
                acc.push(p)
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )
}
