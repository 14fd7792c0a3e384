//! Concrete finite groups with an enumerated element universe.
//!
//! A [`FiniteGroup`] is a descriptor plus a [`GroupLaw`]: elements are the
//! integers `0..order`, and the law supplies products, inverses and a
//! generating set. Small groups additionally carry a full multiplication
//! table.

mod classes;
mod constructions;
mod permutation;
mod subgroup;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{EXHAUSTIVE_CHECK_LIMIT, TABLE_LIMIT};
use crate::error::{GroupError, Result};

pub use classes::{conjugacy_classes, ConjugacyClassDecomposition};
pub use constructions::{direct_product, make_cyclic, make_dihedral, make_symmetric};
pub use permutation::{factorial, Permutation};
pub use subgroup::{commutator_subgroup, subgroup_from_generators, SubgroupEmbedding};

/// Position of an element in its group's canonical enumeration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct GroupElementId(u32);

impl GroupElementId {
    #[inline]
    pub fn new(index: usize) -> Self {
        debug_assert!(index <= u32::MAX as usize);
        GroupElementId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for GroupElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The multiplication oracle behind a [`FiniteGroup`].
pub trait GroupLaw: Send + Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> GroupElementId;
    fn multiply(&self, a: GroupElementId, b: GroupElementId) -> GroupElementId;
    fn inverse(&self, a: GroupElementId) -> GroupElementId;
    /// A set generating the whole group (empty for the trivial group).
    fn generators(&self) -> Vec<GroupElementId>;
}

/// A finite group. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FiniteGroup {
    descriptor: Arc<str>,
    law: Arc<dyn GroupLaw>,
    table: Option<Arc<[u32]>>,
    inverses: Option<Arc<[u32]>>,
    generators: Arc<[GroupElementId]>,
}

impl FiniteGroup {
    /// Wraps a law, materializing the multiplication table when the order is
    /// at most [`TABLE_LIMIT`].
    pub fn from_law(descriptor: impl Into<String>, law: Arc<dyn GroupLaw>) -> Self {
        let order = law.order();
        let (table, inverses) = if order <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(order * order);
            for a in 0..order {
                let a = GroupElementId::new(a);
                table.extend((0..order).map(|b| law.multiply(a, GroupElementId::new(b)).0));
            }
            let inverses: Vec<u32> = (0..order)
                .map(|a| law.inverse(GroupElementId::new(a)).0)
                .collect();
            (Some(table.into()), Some(inverses.into()))
        } else {
            (None, None)
        };
        let generators = law.generators().into();
        FiniteGroup {
            descriptor: descriptor.into().into(),
            law,
            table,
            inverses,
            generators,
        }
    }

    /// Canonical construction string, e.g. `"S4"` or `"wr(S3,2)"`.
    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.law.order()
    }

    #[inline]
    pub fn identity(&self) -> GroupElementId {
        self.law.identity()
    }

    #[inline]
    pub fn mul(&self, a: GroupElementId, b: GroupElementId) -> GroupElementId {
        match &self.table {
            Some(t) => GroupElementId(t[a.index() * self.order() + b.index()]),
            None => self.law.multiply(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: GroupElementId) -> GroupElementId {
        match &self.inverses {
            Some(t) => GroupElementId(t[a.index()]),
            None => self.law.inverse(a),
        }
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: GroupElementId, x: GroupElementId) -> GroupElementId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: GroupElementId, b: GroupElementId) -> GroupElementId {
        let left = self.mul(self.inv(a), self.inv(b));
        self.mul(left, self.mul(a, b))
    }

    pub fn generators(&self) -> &[GroupElementId] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElementId> + Clone {
        (0..self.order()).map(GroupElementId::new)
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn contains(&self, a: GroupElementId) -> bool {
        a.index() < self.order()
    }

    pub fn check_id(&self, a: GroupElementId) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(GroupError::InvalidParameter(format!(
                "element {a} out of range for {} of order {}",
                self.descriptor,
                self.order()
            )))
        }
    }

    pub fn is_abelian(&self) -> bool {
        // commuting generators suffice
        let gens = self.generators();
        gens.iter().enumerate().all(|(i, &a)| {
            gens[i + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Pairwise commutation over all elements, with early exit.
    pub fn is_abelian_exhaustive(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .skip(a.index() + 1)
                .all(|b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Checks associativity, two-sided identity and inverses. Exhaustive for
    /// order at most [`EXHAUSTIVE_CHECK_LIMIT`], otherwise at least
    /// `10 * order` triples sampled with `seed`.
    pub fn check_axioms(&self, seed: u64) -> Result<()> {
        let order = self.order();
        let e = self.identity();
        let fail = |what: String| {
            Err(GroupError::InternalConsistency(format!(
                "{}: {what}",
                self.descriptor
            )))
        };
        if !self.contains(e) {
            return fail("identity out of range".into());
        }
        for a in self.elements() {
            if self.mul(a, e) != a || self.mul(e, a) != a {
                return fail(format!("identity not neutral for {a}"));
            }
            if self.mul(a, self.inv(a)) != e || self.mul(self.inv(a), a) != e {
                return fail(format!("inverse of {a} does not compose to identity"));
            }
        }
        let assoc = |a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if order <= EXHAUSTIVE_CHECK_LIMIT {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        if !assoc(a, b, c) {
                            return fail(format!("({a}{b}){c} != {a}({b}{c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..10 * order {
                let a = GroupElementId::new(rng.random_range(0..order));
                let b = GroupElementId::new(rng.random_range(0..order));
                let c = GroupElementId::new(rng.random_range(0..order));
                if !assoc(a, b, c) {
                    return fail(format!("({a}{b}){c} != {a}({b}{c})"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("descriptor", &self.descriptor)
            .field("order", &self.order())
            .field("table", &self.table.is_some())
            .finish()
    }
}
