use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::label::TreeLabel;
use super::ops::children;
use super::rules::succ_weighted;
use crate::polyomino::Polyomino;

/// Multiset of labels at one level of the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelLevel {
    /// Size of the objects at this level.
    pub level: usize,
    pub counts: BTreeMap<TreeLabel, BigUint>,
}

impl LabelLevel {
    pub fn root() -> Self {
        LabelLevel {
            level: 2,
            counts: BTreeMap::from([(TreeLabel::root(), BigUint::from(1u32))]),
        }
    }

    fn sum_where(&self, keep: impl Fn(&TreeLabel) -> bool) -> BigUint {
        self.counts.iter().filter(|(l, _)| keep(l)).map(|(_, c)| c).sum()
    }

    pub fn total(&self) -> BigUint {
        self.sum_where(|_| true)
    }

    pub fn centered(&self) -> BigUint {
        self.sum_where(|l| l.family.is_centered())
    }

    pub fn non_centered(&self) -> BigUint {
        self.sum_where(|l| !l.family.is_centered())
    }

    pub fn rectangular(&self) -> BigUint {
        self.sum_where(|l| l.rect)
    }

    /// The next level, obtained by applying the productions to every label.
    pub fn next(&self) -> LabelLevel {
        let counts = self
            .counts
            .par_iter()
            .fold(BTreeMap::new, |mut acc, (label, count)| {
                let kids = succ_weighted(label).expect("levels only hold valid labels");
                for (child, times) in kids {
                    *acc.entry(child).or_default() += count * times;
                }
                acc
            })
            .reduce(BTreeMap::new, |a, b| {
                // fold the smaller map into the larger one
                if a.len() >= b.len() {
                    merge_into(a, b)
                } else {
                    merge_into(b, a)
                }
            });
        LabelLevel { level: self.level + 1, counts }
    }
}

fn merge_into(mut a: BTreeMap<TreeLabel, BigUint>, b: BTreeMap<TreeLabel, BigUint>) -> BTreeMap<TreeLabel, BigUint> {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Label levels for sizes `2..=max_size`; just the root when `max_size < 3`.
pub fn count_levels(max_size: usize) -> Vec<LabelLevel> {
    let mut out = vec![LabelLevel::root()];
    while out.last().is_some_and(|l| l.level < max_size) {
        let next = out.last().unwrap().next();
        out.push(next);
    }
    out
}

/// Polyominoes of each level for sizes `2..=max_size`, grown from the root.
///
/// Each level is sorted by encoding. Memory grows roughly fourfold per level,
/// so this is meant for small sizes only.
pub fn construct_levels(max_size: usize) -> Vec<Vec<Polyomino>> {
    let mut out = vec![vec![Polyomino::unit()]];
    for _ in 3..=max_size {
        let mut next: Vec<Polyomino> = out
            .last()
            .unwrap()
            .par_iter()
            .flat_map_iter(|p| children(p).into_iter().map(|(_, q)| q))
            .collect();
        next.par_sort_unstable();
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn totals(levels: &[LabelLevel], f: impl Fn(&LabelLevel) -> BigUint) -> Vec<u64> {
        levels.iter().map(|l| u64::try_from(f(l)).unwrap()).collect()
    }

    #[test]
    fn level_totals() {
        let levels = count_levels(6);
        assert_eq!(levels.len(), 5);
        assert_eq!(totals(&levels, LabelLevel::total), vec![1, 2, 7, 26, 101]);
        assert_eq!(totals(&levels, LabelLevel::centered), vec![1, 2, 7, 25, 91]);
        assert_eq!(totals(&levels, LabelLevel::rectangular), vec![1, 2, 6, 20, 70]);
        assert_eq!(totals(&levels, LabelLevel::non_centered), vec![0, 0, 0, 1, 10]);
    }

    #[test]
    fn small_max_size() {
        assert_eq!(count_levels(2).len(), 1);
        assert_eq!(count_levels(0).len(), 1);
    }

    #[test]
    fn constructed_sizes() {
        let sizes: Vec<usize> = construct_levels(7).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 7, 26, 101, 404]);
    }
}
