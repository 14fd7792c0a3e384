use std::collections::VecDeque;

use super::{FiniteGroup, GroupElementId};

/// Partition of a group into conjugacy classes.
///
/// Class 0 is `{identity}`; the remaining classes are ordered by their
/// smallest element id, which is also the stored representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClassDecomposition {
    classes: Vec<Vec<GroupElementId>>,
    class_of: Vec<u32>,
}

impl ConjugacyClassDecomposition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<GroupElementId>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[GroupElementId] {
        &self.classes[i]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn representative(&self, i: usize) -> GroupElementId {
        self.classes[i][0]
    }

    pub fn representatives(&self) -> Vec<GroupElementId> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Index of the class containing `x`.
    #[inline]
    pub fn class_of(&self, x: GroupElementId) -> usize {
        self.class_of[x.index()] as usize
    }
}

/// Conjugation orbits, found by breadth-first closure under conjugation by
/// the group's generators.
pub fn conjugacy_classes(group: &FiniteGroup) -> ConjugacyClassDecomposition {
    let order = group.order();
    let gens = group.generators();
    let mut class_of = vec![u32::MAX; order];
    let mut classes = Vec::new();
    let mut queue = VecDeque::new();

    let starts = std::iter::once(group.identity())
        .chain(group.elements().filter(|&x| x != group.identity()));
    for start in starts {
        if class_of[start.index()] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        let mut class = vec![start];
        class_of[start.index()] = id;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = group.conjugate(g, x);
                if class_of[y.index()] == u32::MAX {
                    class_of[y.index()] = id;
                    class.push(y);
                    queue.push_back(y);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    // the identity is alone in class 0, so sorting keeps it as representative
    ConjugacyClassDecomposition { classes, class_of }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_cyclic, make_dihedral, make_symmetric};

    /// Orbits by conjugating with every element, no generators involved.
    fn brute_force_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut seen = vec![false; g.order()];
        let mut sizes = Vec::new();
        for x in g.elements() {
            if seen[x.index()] {
                continue;
            }
            let mut size = 0;
            for h in g.elements() {
                let y = g.conjugate(h, x);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    fn sorted_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut sizes = conjugacy_classes(g).sizes();
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn examples_match_brute_force() {
        let z5 = make_cyclic(5).unwrap();
        assert_eq!(sorted_sizes(&z5), vec![1; 5]);
        let s3 = make_symmetric(3).unwrap();
        assert_eq!(sorted_sizes(&s3), vec![1, 2, 3]);
        assert_eq!(brute_force_sizes(&s3), vec![1, 2, 3]);
        let d4 = make_dihedral(4).unwrap();
        assert_eq!(sorted_sizes(&d4), vec![1, 1, 2, 2, 2]);
        assert_eq!(brute_force_sizes(&d4), vec![1, 1, 2, 2, 2]);
        let s4 = make_symmetric(4).unwrap();
        assert_eq!(brute_force_sizes(&s4), sorted_sizes(&s4));
    }

    #[test]
    fn classes_partition_and_are_conjugation_closed() {
        let z2 = make_cyclic(2).unwrap();
        let s3 = make_symmetric(3).unwrap();
        for g in [
            make_symmetric(5).unwrap(),
            make_dihedral(6).unwrap(),
            direct_product(&z2, &s3).unwrap(),
        ] {
            let cc = conjugacy_classes(&g);
            assert_eq!(cc.class(0), &[g.identity()]);
            assert_eq!(cc.sizes().iter().sum::<usize>(), g.order());
            for (i, class) in cc.classes().iter().enumerate() {
                assert_eq!(g.order() % class.len(), 0);
                for &x in class {
                    assert_eq!(cc.class_of(x), i);
                    for h in g.elements() {
                        assert_eq!(cc.class_of(g.conjugate(h, x)), i);
                    }
                }
            }
            let reps = cc.representatives();
            assert!(reps[1..].windows(2).all(|w| w[0] < w[1]));
            assert_eq!(sorted_sizes(&g), brute_force_sizes(&g));
        }
    }

    #[test]
    fn abelian_iff_all_classes_singletons() {
        for g in [
            make_cyclic(6).unwrap(),
            make_symmetric(3).unwrap(),
            make_dihedral(4).unwrap(),
            direct_product(&make_cyclic(2).unwrap(), &make_cyclic(3).unwrap()).unwrap(),
        ] {
            assert_eq!(g.is_abelian(), conjugacy_classes(&g).len() == g.order());
        }
    }
}
