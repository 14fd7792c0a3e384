use std::sync::Arc;

use super::{FiniteGroup, GroupElementId, GroupLaw, Permutation};
use crate::config::DEFAULT_SIZE_BUDGET;
use crate::error::{GroupError, Result};

struct CyclicLaw {
    k: usize,
}

impl GroupLaw for CyclicLaw {
    fn order(&self) -> usize {
        self.k
    }
    fn identity(&self) -> GroupElementId {
        GroupElementId::new(0)
    }
    fn multiply(&self, a: GroupElementId, b: GroupElementId) -> GroupElementId {
        GroupElementId::new((a.index() + b.index()) % self.k)
    }
    fn inverse(&self, a: GroupElementId) -> GroupElementId {
        GroupElementId::new((self.k - a.index()) % self.k)
    }
    fn generators(&self) -> Vec<GroupElementId> {
        if self.k > 1 {
            vec![GroupElementId::new(1)]
        } else {
            vec![]
        }
    }
}

/// `Z_k`: residues `0..k` under addition.
pub fn make_cyclic(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(GroupError::InvalidParameter(
            "cyclic group needs k >= 1".into(),
        ));
    }
    if k > DEFAULT_SIZE_BUDGET {
        return Err(GroupError::ResourceLimit {
            what: format!("Z{k}"),
            required: k as u128,
            budget: DEFAULT_SIZE_BUDGET,
        });
    }
    Ok(FiniteGroup::from_law(
        format!("Z{k}"),
        Arc::new(CyclicLaw { k }),
    ))
}

struct SymmetricLaw {
    degree: usize,
    perms: Vec<Permutation>,
}

impl SymmetricLaw {
    fn new(degree: usize) -> Self {
        SymmetricLaw {
            degree,
            perms: Permutation::all(degree),
        }
    }

    fn permutation(&self, id: GroupElementId) -> &Permutation {
        &self.perms[id.index()]
    }
}

impl GroupLaw for SymmetricLaw {
    fn order(&self) -> usize {
        self.perms.len()
    }
    fn identity(&self) -> GroupElementId {
        GroupElementId::new(0)
    }
    fn multiply(&self, a: GroupElementId, b: GroupElementId) -> GroupElementId {
        GroupElementId::new(self.permutation(a).compose(self.permutation(b)).rank())
    }
    fn inverse(&self, a: GroupElementId) -> GroupElementId {
        GroupElementId::new(self.permutation(a).inverse().rank())
    }
    fn generators(&self) -> Vec<GroupElementId> {
        symmetric_generators(self.degree)
    }
}

/// `(1 2)` and `(1 2 … n)` as lexicographic ranks, deduplicated.
fn symmetric_generators(n: usize) -> Vec<GroupElementId> {
    if n < 2 {
        return vec![];
    }
    let swap = Permutation::cycle(n, &[1, 2]).expect("valid cycle").rank();
    let points: Vec<usize> = (1..=n).collect();
    let long = Permutation::cycle(n, &points).expect("valid cycle").rank();
    let mut gens = vec![GroupElementId::new(swap)];
    if long != swap {
        gens.push(GroupElementId::new(long));
    }
    gens
}

/// `S_n` with elements ranked lexicographically by image sequence;
/// multiplication is composition with the right factor applied first.
pub fn make_symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(GroupError::InvalidParameter(
            "symmetric group needs n >= 1 (use n = 1 for the trivial group)".into(),
        ));
    }
    let order = super::factorial(n).unwrap_or(u128::MAX);
    if order > DEFAULT_SIZE_BUDGET as u128 {
        return Err(GroupError::ResourceLimit {
            what: format!("S{n}"),
            required: order,
            budget: DEFAULT_SIZE_BUDGET,
        });
    }
    Ok(FiniteGroup::from_law(
        format!("S{n}"),
        Arc::new(SymmetricLaw::new(n)),
    ))
}

/// Element `r^a s^b` is stored as `b * k + a`.
struct DihedralLaw {
    k: usize,
}

impl DihedralLaw {
    fn split(&self, x: GroupElementId) -> (usize, usize) {
        (x.index() % self.k, x.index() / self.k)
    }
    fn join(&self, rot: usize, flip: usize) -> GroupElementId {
        GroupElementId::new(flip * self.k + rot)
    }
}

impl GroupLaw for DihedralLaw {
    fn order(&self) -> usize {
        2 * self.k
    }
    fn identity(&self) -> GroupElementId {
        GroupElementId::new(0)
    }
    fn multiply(&self, x: GroupElementId, y: GroupElementId) -> GroupElementId {
        // r^a s^b r^c s^d = r^(a ± c) s^(b + d), using s r = r⁻¹ s
        let (a, b) = self.split(x);
        let (c, d) = self.split(y);
        let rot = if b == 0 { a + c } else { a + self.k - c };
        self.join(rot % self.k, (b + d) % 2)
    }
    fn inverse(&self, x: GroupElementId) -> GroupElementId {
        let (a, b) = self.split(x);
        if b == 0 {
            self.join((self.k - a) % self.k, 0)
        } else {
            x
        }
    }
    fn generators(&self) -> Vec<GroupElementId> {
        vec![self.join(1, 0), self.join(0, 1)]
    }
}

/// `D_k` of order `2k`, realized as rotations `r^a` and reflections `r^a s`.
pub fn make_dihedral(k: usize) -> Result<FiniteGroup> {
    if k < 3 {
        return Err(GroupError::InvalidParameter(format!(
            "dihedral group needs k >= 3, got {k}"
        )));
    }
    if 2 * k > DEFAULT_SIZE_BUDGET {
        return Err(GroupError::ResourceLimit {
            what: format!("D{k}"),
            required: 2 * k as u128,
            budget: DEFAULT_SIZE_BUDGET,
        });
    }
    Ok(FiniteGroup::from_law(
        format!("D{k}"),
        Arc::new(DihedralLaw { k }),
    ))
}

struct ProductLaw {
    left: FiniteGroup,
    right: FiniteGroup,
}

impl ProductLaw {
    fn split(&self, x: GroupElementId) -> (GroupElementId, GroupElementId) {
        let n = self.right.order();
        (
            GroupElementId::new(x.index() / n),
            GroupElementId::new(x.index() % n),
        )
    }
    fn join(&self, a: GroupElementId, b: GroupElementId) -> GroupElementId {
        GroupElementId::new(a.index() * self.right.order() + b.index())
    }
}

impl GroupLaw for ProductLaw {
    fn order(&self) -> usize {
        self.left.order() * self.right.order()
    }
    fn identity(&self) -> GroupElementId {
        self.join(self.left.identity(), self.right.identity())
    }
    fn multiply(&self, x: GroupElementId, y: GroupElementId) -> GroupElementId {
        let (a1, b1) = self.split(x);
        let (a2, b2) = self.split(y);
        self.join(self.left.mul(a1, a2), self.right.mul(b1, b2))
    }
    fn inverse(&self, x: GroupElementId) -> GroupElementId {
        let (a, b) = self.split(x);
        self.join(self.left.inv(a), self.right.inv(b))
    }
    fn generators(&self) -> Vec<GroupElementId> {
        let e_left = self.left.identity();
        let e_right = self.right.identity();
        self.left
            .generators()
            .iter()
            .map(|&a| self.join(a, e_right))
            .chain(
                self.right
                    .generators()
                    .iter()
                    .map(|&b| self.join(e_left, b)),
            )
            .collect()
    }
}

/// `A × B` with the pair `(a, b)` stored as `a * |B| + b`.
pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Result<FiniteGroup> {
    let order = left.order() as u128 * right.order() as u128;
    if order > DEFAULT_SIZE_BUDGET as u128 {
        return Err(GroupError::ResourceLimit {
            what: format!("{} x {}", left.descriptor(), right.descriptor()),
            required: order,
            budget: DEFAULT_SIZE_BUDGET,
        });
    }
    // the right operand is parenthesized when it is itself a product
    let right_desc = if has_top_level_product(right.descriptor()) {
        format!("({})", right.descriptor())
    } else {
        right.descriptor().to_string()
    };
    Ok(FiniteGroup::from_law(
        format!("{}x{}", left.descriptor(), right_desc),
        Arc::new(ProductLaw {
            left: left.clone(),
            right: right.clone(),
        }),
    ))
}

fn has_top_level_product(desc: &str) -> bool {
    let mut depth = 0i32;
    for c in desc.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}
