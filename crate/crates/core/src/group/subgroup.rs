use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteGroup, GroupElementId, GroupLaw};
use crate::config::{DEFAULT_SEED, EXHAUSTIVE_CHECK_LIMIT};
use crate::error::{GroupError, Result};

/// An injective homomorphism `K -> G`, stored as the image of every element
/// of `K`.
#[derive(Debug, Clone)]
pub struct SubgroupEmbedding {
    subgroup: FiniteGroup,
    parent: FiniteGroup,
    map: Vec<GroupElementId>,
}

impl SubgroupEmbedding {
    /// Validates injectivity, identity preservation and the homomorphism
    /// property (exhaustive up to order 200, sampled above), plus Lagrange.
    pub fn new(
        subgroup: FiniteGroup,
        parent: FiniteGroup,
        map: Vec<GroupElementId>,
    ) -> Result<Self> {
        let emb = SubgroupEmbedding {
            subgroup,
            parent,
            map,
        };
        emb.validate(EXHAUSTIVE_CHECK_LIMIT, DEFAULT_SEED)?;
        Ok(emb)
    }

    pub fn subgroup(&self) -> &FiniteGroup {
        &self.subgroup
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn map(&self) -> &[GroupElementId] {
        &self.map
    }

    pub fn order(&self) -> usize {
        self.map.len()
    }

    /// `[G : K]`.
    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    #[inline]
    pub fn image(&self, k: GroupElementId) -> GroupElementId {
        self.map[k.index()]
    }

    /// Generators of `K` expressed in the parent.
    pub fn generators_in_parent(&self) -> Vec<GroupElementId> {
        self.subgroup
            .generators()
            .iter()
            .map(|&k| self.image(k))
            .collect()
    }

    /// Membership mask of the image over the parent's elements.
    pub fn membership(&self) -> Vec<bool> {
        let mut mask = vec![false; self.parent.order()];
        for &x in &self.map {
            mask[x.index()] = true;
        }
        mask
    }

    /// Checks the embedding invariants. The homomorphism property is checked
    /// on every pair when `|K| <= exhaustive_limit`, otherwise on `10 |K|`
    /// seeded samples.
    pub fn validate(&self, exhaustive_limit: usize, seed: u64) -> Result<()> {
        let k = &self.subgroup;
        let g = &self.parent;
        let fail = |what: String| {
            Err(GroupError::InternalConsistency(format!(
                "embedding {} -> {}: {what}",
                k.descriptor(),
                g.descriptor()
            )))
        };
        if self.map.len() != k.order() {
            return fail("map length differs from subgroup order".into());
        }
        if !g.order().is_multiple_of(k.order()) {
            return fail(format!(
                "subgroup order {} does not divide {}",
                k.order(),
                g.order()
            ));
        }
        let mut seen = vec![false; g.order()];
        for &x in &self.map {
            if !g.contains(x) {
                return fail(format!("image {x} out of range"));
            }
            if std::mem::replace(&mut seen[x.index()], true) {
                return fail(format!("image {x} hit twice"));
            }
        }
        if self.image(k.identity()) != g.identity() {
            return fail("identity not preserved".into());
        }
        let hom = |a: GroupElementId, b: GroupElementId| {
            self.image(k.mul(a, b)) == g.mul(self.image(a), self.image(b))
        };
        if k.order() <= exhaustive_limit {
            for a in k.elements() {
                for b in k.elements() {
                    if !hom(a, b) {
                        return fail(format!("map({a}{b}) != map({a})map({b})"));
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..10 * k.order() {
                let a = GroupElementId::new(rng.random_range(0..k.order()));
                let b = GroupElementId::new(rng.random_range(0..k.order()));
                if !hom(a, b) {
                    return fail(format!("map({a}{b}) != map({a})map({b})"));
                }
            }
        }
        Ok(())
    }
}

/// A subgroup realized by its parent's multiplication.
struct SubgroupLaw {
    parent: FiniteGroup,
    elements: Vec<GroupElementId>,
    position: HashMap<GroupElementId, u32>,
    generators: Vec<GroupElementId>,
}

impl SubgroupLaw {
    fn locate(&self, x: GroupElementId) -> GroupElementId {
        GroupElementId::new(self.position[&x] as usize)
    }
}

impl GroupLaw for SubgroupLaw {
    fn order(&self) -> usize {
        self.elements.len()
    }
    fn identity(&self) -> GroupElementId {
        GroupElementId::new(0)
    }
    fn multiply(&self, a: GroupElementId, b: GroupElementId) -> GroupElementId {
        self.locate(
            self.parent
                .mul(self.elements[a.index()], self.elements[b.index()]),
        )
    }
    fn inverse(&self, a: GroupElementId) -> GroupElementId {
        self.locate(self.parent.inv(self.elements[a.index()]))
    }
    fn generators(&self) -> Vec<GroupElementId> {
        self.generators.clone()
    }
}

/// Closure of `gens` under multiplication. Subgroup ids list the identity
/// first, then the remaining elements by ascending parent id.
pub fn subgroup_from_generators(
    group: &FiniteGroup,
    gens: &[GroupElementId],
) -> Result<SubgroupEmbedding> {
    for &g in gens {
        group.check_id(g)?;
    }
    let descriptor = format!(
        "<{}>{}",
        gens.iter()
            .map(|g| g.index().to_string())
            .collect::<Vec<_>>()
            .join(","),
        group.descriptor()
    );
    closure(group, gens, descriptor)
}

fn closure(
    group: &FiniteGroup,
    gens: &[GroupElementId],
    descriptor: String,
) -> Result<SubgroupEmbedding> {
    let e = group.identity();
    let mut seen = vec![false; group.order()];
    let mut found = vec![e];
    seen[e.index()] = true;
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = group.mul(x, g);
            if !seen[y.index()] {
                seen[y.index()] = true;
                found.push(y);
                if found.len() > group.order() {
                    return Err(GroupError::InternalConsistency(format!(
                        "closure in {} exceeded the group order",
                        group.descriptor()
                    )));
                }
                queue.push_back(y);
            }
        }
    }
    if !group.order().is_multiple_of(found.len()) {
        return Err(GroupError::InternalConsistency(format!(
            "closure of order {} does not divide |{}| = {}",
            found.len(),
            group.descriptor(),
            group.order()
        )));
    }
    found[1..].sort_unstable();
    let position: HashMap<GroupElementId, u32> = found
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i as u32))
        .collect();
    let mut sub_gens: Vec<GroupElementId> = gens
        .iter()
        .filter(|&&g| g != e)
        .map(|g| GroupElementId::new(position[g] as usize))
        .collect();
    sub_gens.sort_unstable();
    sub_gens.dedup();
    let law = SubgroupLaw {
        parent: group.clone(),
        elements: found.clone(),
        position,
        generators: sub_gens,
    };
    let subgroup = FiniteGroup::from_law(descriptor, Arc::new(law));
    SubgroupEmbedding::new(subgroup, group.clone(), found)
}

/// `[G, G]`, generated by all commutators `a⁻¹ b⁻¹ a b`.
pub fn commutator_subgroup(group: &FiniteGroup) -> Result<SubgroupEmbedding> {
    let mut seen = vec![false; group.order()];
    let mut commutators = Vec::new();
    for a in group.elements() {
        for b in group.elements() {
            let c = group.commutator(a, b);
            if !std::mem::replace(&mut seen[c.index()], true) {
                commutators.push(c);
            }
        }
    }
    closure(
        group,
        &commutators,
        format!("[{0},{0}]", group.descriptor()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral, make_symmetric, Permutation};

    fn perm_id(n: usize, cycle: &[usize]) -> GroupElementId {
        GroupElementId::new(Permutation::cycle(n, cycle).unwrap().rank())
    }

    #[test]
    fn generated_subgroups() {
        let s3 = make_symmetric(3).unwrap();
        let k = subgroup_from_generators(&s3, &[perm_id(3, &[1, 2])]).unwrap();
        assert_eq!(k.order(), 2);
        assert_eq!(k.index(), 3);

        let trivial = subgroup_from_generators(&s3, &[]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.map(), &[s3.identity()]);

        let s4 = make_symmetric(4).unwrap();
        let whole =
            subgroup_from_generators(&s4, &[perm_id(4, &[1, 2]), perm_id(4, &[1, 2, 3, 4])])
                .unwrap();
        assert_eq!(whole.order(), 24);
        whole.subgroup().check_axioms(0).unwrap();
    }

    #[test]
    fn subgroup_ids_are_validated() {
        let z3 = make_cyclic(3).unwrap();
        assert!(matches!(
            subgroup_from_generators(&z3, &[GroupElementId::new(7)]),
            Err(GroupError::InvalidParameter(_))
        ));
    }

    #[test]
    fn broken_embeddings_are_rejected() {
        let z2 = make_cyclic(2).unwrap();
        let z4 = make_cyclic(4).unwrap();
        // 1 -> 1 is not a homomorphism Z2 -> Z4
        let bad = SubgroupEmbedding::new(
            z2.clone(),
            z4.clone(),
            vec![GroupElementId::new(0), GroupElementId::new(1)],
        );
        assert!(matches!(bad, Err(GroupError::InternalConsistency(_))));
        let good =
            SubgroupEmbedding::new(z2, z4, vec![GroupElementId::new(0), GroupElementId::new(2)]);
        assert!(good.is_ok());
    }

    /// Brute force: the subgroup generated by all commutators, by repeated
    /// products until nothing new appears.
    fn brute_commutator_order(g: &FiniteGroup) -> usize {
        let mut set = vec![false; g.order()];
        for a in g.elements() {
            for b in g.elements() {
                set[g.commutator(a, b).index()] = true;
            }
        }
        loop {
            let members: Vec<_> = g.elements().filter(|x| set[x.index()]).collect();
            let mut grew = false;
            for &x in &members {
                for &y in &members {
                    let z = g.mul(x, y);
                    if !set[z.index()] {
                        set[z.index()] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                return members.len();
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let z6 = make_cyclic(6).unwrap();
        assert_eq!(commutator_subgroup(&z6).unwrap().order(), 1);
        let s3 = make_symmetric(3).unwrap();
        assert_eq!(commutator_subgroup(&s3).unwrap().order(), 3);
        assert_eq!(brute_commutator_order(&s3), 3);
        let d4 = make_dihedral(4).unwrap();
        assert_eq!(commutator_subgroup(&d4).unwrap().order(), 2);
        assert_eq!(brute_commutator_order(&d4), 2);
        let s4 = make_symmetric(4).unwrap();
        assert_eq!(
            commutator_subgroup(&s4).unwrap().order(),
            brute_commutator_order(&s4)
        );
    }
}
