//! The wreath product `G ≀ S_n` and the embedding of `G ≀ S_{n-1}`.
//!
//! Elements are pairs `((σ_1, …, σ_n); p)` with product
//! `((σ); p) · ((ε); q) = ((σ_1 ε_{p⁻¹(1)}, …, σ_n ε_{p⁻¹(n)}); pq)`.
//! An element is stored as `code(σ) * n! + rank(p)`, where `code` reads the
//! base sequence as a mixed-radix number with `σ_1` most significant.

use std::ops::Deref;
use std::sync::Arc;

use crate::config::DEFAULT_SIZE_BUDGET;
use crate::error::{GroupError, Result};
use crate::group::{
    factorial, make_symmetric, FiniteGroup, GroupElementId, GroupLaw, Permutation,
    SubgroupEmbedding,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathElement {
    pub base: Vec<GroupElementId>,
    pub top: Permutation,
}

impl WreathElement {
    pub fn degree(&self) -> usize {
        self.top.degree()
    }
}

struct WreathLaw {
    base: FiniteGroup,
    degree: usize,
    top: FiniteGroup,
    perms: Vec<Permutation>,
    order: usize,
}

impl WreathLaw {
    fn top_order(&self) -> usize {
        self.perms.len()
    }

    fn decode(&self, x: GroupElementId) -> (Vec<GroupElementId>, usize) {
        let top = x.index() % self.top_order();
        let mut code = x.index() / self.top_order();
        let m = self.base.order();
        let mut base = vec![GroupElementId::default(); self.degree];
        for slot in base.iter_mut().rev() {
            *slot = GroupElementId::new(code % m);
            code /= m;
        }
        (base, top)
    }

    fn encode(&self, base: &[GroupElementId], top: usize) -> GroupElementId {
        let m = self.base.order();
        let code = base.iter().fold(0usize, |acc, g| acc * m + g.index());
        GroupElementId::new(code * self.top_order() + top)
    }

    fn multiply_parts(
        &self,
        (sigma, p): (&[GroupElementId], usize),
        (eps, q): (&[GroupElementId], usize),
    ) -> (Vec<GroupElementId>, usize) {
        let p_inv = self.perms[p].inverse();
        let base = (0..self.degree)
            .map(|i| self.base.mul(sigma[i], eps[p_inv.apply(i)]))
            .collect();
        let top = self
            .top
            .mul(GroupElementId::new(p), GroupElementId::new(q))
            .index();
        (base, top)
    }

    fn inverse_parts(
        &self,
        (sigma, p): (&[GroupElementId], usize),
    ) -> (Vec<GroupElementId>, usize) {
        // ((σ); p)⁻¹ = ((σ⁻¹_{p(1)}, …, σ⁻¹_{p(n)}); p⁻¹)
        let perm = &self.perms[p];
        let base = (0..self.degree)
            .map(|i| self.base.inv(sigma[perm.apply(i)]))
            .collect();
        (base, self.top.inv(GroupElementId::new(p)).index())
    }
}

impl GroupLaw for WreathLaw {
    fn order(&self) -> usize {
        self.order
    }

    fn identity(&self) -> GroupElementId {
        let base = vec![self.base.identity(); self.degree];
        self.encode(&base, self.top.identity().index())
    }

    fn multiply(&self, x: GroupElementId, y: GroupElementId) -> GroupElementId {
        let (sigma, p) = self.decode(x);
        let (eps, q) = self.decode(y);
        let (base, top) = self.multiply_parts((&sigma, p), (&eps, q));
        self.encode(&base, top)
    }

    fn inverse(&self, x: GroupElementId) -> GroupElementId {
        let (sigma, p) = self.decode(x);
        let (base, top) = self.inverse_parts((&sigma, p));
        self.encode(&base, top)
    }

    fn generators(&self) -> Vec<GroupElementId> {
        let e = self.base.identity();
        let top_e = self.top.identity().index();
        let mut gens = Vec::new();
        for &g in self.base.generators() {
            let mut base = vec![e; self.degree];
            base[0] = g;
            gens.push(self.encode(&base, top_e));
        }
        let base = vec![e; self.degree];
        for &s in self.top.generators() {
            gens.push(self.encode(&base, s.index()));
        }
        gens
    }
}

/// `G ≀ S_n` as a [`FiniteGroup`], with access to the pair structure of its
/// elements.
#[derive(Clone)]
pub struct WreathGroup {
    group: FiniteGroup,
    law: Arc<WreathLaw>,
}

impl std::fmt::Debug for WreathGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WreathGroup")
            .field("base", &self.law.base.descriptor())
            .field("degree", &self.law.degree)
            .field("order", &self.law.order)
            .finish()
    }
}

impl Deref for WreathGroup {
    type Target = FiniteGroup;

    fn deref(&self) -> &FiniteGroup {
        &self.group
    }
}

impl WreathGroup {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.law.base
    }

    pub fn degree(&self) -> usize {
        self.law.degree
    }

    pub fn encode(&self, x: &WreathElement) -> Result<GroupElementId> {
        if x.base.len() != self.degree() || x.top.degree() != self.degree() {
            return Err(GroupError::InvalidParameter(format!(
                "element of degree {} / {} does not belong to {}",
                x.base.len(),
                x.top.degree(),
                self.descriptor()
            )));
        }
        for &g in &x.base {
            self.base().check_id(g)?;
        }
        Ok(self.law.encode(&x.base, x.top.rank()))
    }

    pub fn decode(&self, id: GroupElementId) -> Result<WreathElement> {
        self.group.check_id(id)?;
        let (base, top) = self.law.decode(id);
        Ok(WreathElement {
            base,
            top: self.law.perms[top].clone(),
        })
    }

    /// The product law applied to decoded elements.
    pub fn multiply(&self, x: &WreathElement, y: &WreathElement) -> Result<WreathElement> {
        let a = self.encode(x)?;
        let b = self.encode(y)?;
        self.decode(self.group.mul(a, b))
    }

    pub fn identity_element(&self) -> WreathElement {
        WreathElement {
            base: vec![self.base().identity(); self.degree()],
            top: Permutation::identity(self.degree()),
        }
    }
}

/// `G ≀ S_n` within the default size budget.
pub fn wreath_product(base: &FiniteGroup, n: usize) -> Result<WreathGroup> {
    wreath_product_with_budget(base, n, DEFAULT_SIZE_BUDGET)
}

/// `G ≀ S_n`, refusing when `|G|^n · n!` exceeds `budget`.
pub fn wreath_product_with_budget(
    base: &FiniteGroup,
    n: usize,
    budget: usize,
) -> Result<WreathGroup> {
    if n == 0 {
        return Err(GroupError::InvalidParameter(
            "wreath product needs n >= 1".into(),
        ));
    }
    let descriptor = format!("wr({},{})", base.descriptor(), n);
    let required = (base.order() as u128)
        .checked_pow(n as u32)
        .and_then(|b| factorial(n).and_then(|f| b.checked_mul(f)))
        .unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(GroupError::ResourceLimit {
            what: descriptor,
            required,
            budget,
        });
    }
    let top = make_symmetric(n)?;
    let law = Arc::new(WreathLaw {
        base: base.clone(),
        degree: n,
        perms: Permutation::all(n),
        top,
        order: required as usize,
    });
    let group = FiniteGroup::from_law(descriptor, law.clone());
    Ok(WreathGroup { group, law })
}

/// `((σ); p)⁻¹ = ((σ⁻¹_{p(1)}, …, σ⁻¹_{p(n)}); p⁻¹)`, computed directly on the
/// pair without going through an enumerated group.
pub fn wreath_inverse(x: &WreathElement, base: &FiniteGroup) -> Result<WreathElement> {
    if x.base.len() != x.top.degree() {
        return Err(GroupError::InvalidParameter(
            "base sequence length differs from permutation degree".into(),
        ));
    }
    for &g in &x.base {
        base.check_id(g)?;
    }
    let base_seq = (0..x.degree())
        .map(|i| base.inv(x.base[x.top.apply(i)]))
        .collect();
    Ok(WreathElement {
        base: base_seq,
        top: x.top.inverse(),
    })
}

/// The embedding `G ≀ S_{n-1} -> G ≀ S_n` that pads the base sequence with
/// the identity and extends the permutation to fix point `n`.
pub fn embed_wreath_subgroup(base: &FiniteGroup, n: usize) -> Result<SubgroupEmbedding> {
    embed_wreath_subgroup_with_budget(base, n, DEFAULT_SIZE_BUDGET)
}

pub fn embed_wreath_subgroup_with_budget(
    base: &FiniteGroup,
    n: usize,
    budget: usize,
) -> Result<SubgroupEmbedding> {
    if n < 2 {
        return Err(GroupError::InvalidParameter(format!(
            "the pair (G wr S_n, G wr S_(n-1)) needs n >= 2, got {n}"
        )));
    }
    let big = wreath_product_with_budget(base, n, budget)?;
    let small = wreath_product_with_budget(base, n - 1, budget)?;
    let map = small
        .elements()
        .map(|id| {
            let (mut seq, top) = small.law.decode(id);
            seq.push(base.identity());
            let top = small.law.perms[top].extend(n);
            big.law.encode(&seq, top.rank())
        })
        .collect();
    SubgroupEmbedding::new(small.into_group(), big.into_group(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy_classes, make_cyclic, make_symmetric};

    fn id(i: usize) -> GroupElementId {
        GroupElementId::new(i)
    }

    fn swap() -> Permutation {
        Permutation::cycle(2, &[1, 2]).unwrap()
    }

    #[test]
    fn orders() {
        let z2 = make_cyclic(2).unwrap();
        assert_eq!(wreath_product(&z2, 3).unwrap().order(), 48);
        let s3 = make_symmetric(3).unwrap();
        assert_eq!(wreath_product(&s3, 2).unwrap().order(), 72);
        assert_eq!(wreath_product(&s3, 1).unwrap().order(), 6);
        assert_eq!(wreath_product(&s3, 2).unwrap().descriptor(), "wr(S3,2)");
    }

    #[test]
    fn product_law_by_hand() {
        let z2 = make_cyclic(2).unwrap();
        let w = wreath_product(&z2, 2).unwrap();
        let x = WreathElement {
            base: vec![id(1), id(0)],
            top: swap(),
        };
        let xx = w.multiply(&x, &x).unwrap();
        assert_eq!(
            xx,
            WreathElement {
                base: vec![id(1), id(1)],
                top: Permutation::identity(2)
            }
        );
    }

    #[test]
    fn inverse_examples() {
        let z2 = make_cyclic(2).unwrap();
        let w = wreath_product(&z2, 2).unwrap();
        let e = w.identity_element();
        assert_eq!(wreath_inverse(&e, &z2).unwrap(), e);

        let x = WreathElement {
            base: vec![id(1), id(0)],
            top: swap(),
        };
        let x_inv = wreath_inverse(&x, &z2).unwrap();
        assert_eq!(
            x_inv,
            WreathElement {
                base: vec![id(0), id(1)],
                top: swap()
            }
        );
        assert_eq!(w.multiply(&x, &x_inv).unwrap(), e);

        let z3 = make_cyclic(3).unwrap();
        let y = WreathElement {
            base: vec![id(1), id(0)],
            top: Permutation::identity(2),
        };
        assert_eq!(
            wreath_inverse(&y, &z3).unwrap(),
            WreathElement {
                base: vec![id(2), id(0)],
                top: Permutation::identity(2)
            }
        );
    }

    #[test]
    fn inverse_matches_group_inverse_everywhere() {
        let s3 = make_symmetric(3).unwrap();
        let w = wreath_product(&s3, 2).unwrap();
        for x in w.elements() {
            let direct = wreath_inverse(&w.decode(x).unwrap(), &s3).unwrap();
            assert_eq!(w.encode(&direct).unwrap(), w.inv(x));
            assert_eq!(w.mul(x, w.inv(x)), w.identity());
        }
    }

    #[test]
    fn encode_decode_roundtrip() {
        let z2 = make_cyclic(2).unwrap();
        let w = wreath_product(&z2, 3).unwrap();
        let e = w.identity_element();
        assert_eq!(w.decode(w.encode(&e).unwrap()).unwrap(), e);
        assert_eq!(w.encode(&e).unwrap(), w.identity());
        let mut seen = vec![false; w.order()];
        for x in w.elements() {
            let decoded = w.decode(x).unwrap();
            let back = w.encode(&decoded).unwrap();
            assert_eq!(back, x);
            assert!(!std::mem::replace(&mut seen[back.index()], true));
        }
        assert!(w.decode(id(48)).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let s3 = make_symmetric(3).unwrap();
        let err = wreath_product_with_budget(&s3, 3, 1000).unwrap_err();
        assert_eq!(
            err,
            GroupError::ResourceLimit {
                what: "wr(S3,3)".into(),
                required: 1296,
                budget: 1000
            }
        );
        assert!(wreath_product(&s3, 0).is_err());
    }

    #[test]
    fn group_axioms() {
        let z2 = make_cyclic(2).unwrap();
        let s3 = make_symmetric(3).unwrap();
        wreath_product(&z2, 3).unwrap().check_axioms(5).unwrap();
        wreath_product(&s3, 2).unwrap().check_axioms(5).unwrap();
        // beyond the table limit: computed on the fly, sampled check
        let big = wreath_product(&s3, 3).unwrap();
        assert!(big.has_table());
        let bigger = wreath_product(&make_cyclic(3).unwrap(), 5).unwrap();
        assert!(!bigger.has_table());
        bigger.check_axioms(5).unwrap();
    }

    #[test]
    fn embeddings() {
        let z2 = make_cyclic(2).unwrap();
        let k = embed_wreath_subgroup(&z2, 2).unwrap();
        assert_eq!((k.order(), k.parent().order()), (2, 8));
        let s3 = make_symmetric(3).unwrap();
        let k = embed_wreath_subgroup(&s3, 2).unwrap();
        assert_eq!((k.order(), k.parent().order()), (6, 72));
        let z1 = make_cyclic(1).unwrap();
        let k = embed_wreath_subgroup(&z1, 4).unwrap();
        assert_eq!((k.order(), k.parent().order()), (6, 24));
        k.validate(5000, 0).unwrap();
        assert!(matches!(
            embed_wreath_subgroup(&s3, 1),
            Err(GroupError::InvalidParameter(_))
        ));
    }

    #[test]
    fn trivial_base_gives_symmetric_group() {
        let z1 = make_cyclic(1).unwrap();
        for n in 1..=5 {
            let w = wreath_product(&z1, n).unwrap();
            let s = make_symmetric(n).unwrap();
            assert_eq!(w.order(), s.order());
            let mut a = conjugacy_classes(&w).sizes();
            let mut b = conjugacy_classes(&s).sizes();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
            // the top ranks coincide with the symmetric group's ids
            for x in s.elements() {
                for y in s.elements() {
                    assert_eq!(w.mul(x, y), s.mul(x, y));
                }
            }
        }
    }
}
