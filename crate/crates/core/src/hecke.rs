//! Double cosets `K\G/K` and the structure constants of the algebra they
//! span.
//!
//! With `D_0, …, D_{r-1}` the double cosets and `z_k` the stored
//! representative of `D_k`, the structure constants are
//! `c[i][j][k] = #{(x, y) ∈ D_i × D_j : xy = z_k}`, so that
//! `D_i · D_j = Σ_k c[i][j][k] D_k` in the group algebra. The pair is a
//! Gelfand pair exactly when `c[i][j][k] = c[j][i][k]` throughout.

use std::collections::VecDeque;
use std::ops::{Add, Mul};

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{GroupError, Result};
use crate::group::{FiniteGroup, GroupElementId, SubgroupEmbedding};

/// Upper bound on `rank³` for a materialized structure-constant table.
pub const MAX_TABLE_ENTRIES: usize = 1 << 26;

/// The `K`-double cosets of `G`. Block 0 is `K`, represented by the identity;
/// the other blocks are ordered and represented by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetDecomposition {
    blocks: Vec<Vec<GroupElementId>>,
    representatives: Vec<GroupElementId>,
    block_of: Vec<u32>,
}

impl DoubleCosetDecomposition {
    pub fn rank(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<GroupElementId>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[GroupElementId] {
        &self.blocks[i]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn representative(&self, i: usize) -> GroupElementId {
        self.representatives[i]
    }

    pub fn representatives(&self) -> &[GroupElementId] {
        &self.representatives
    }

    #[inline]
    pub fn block_of(&self, x: GroupElementId) -> usize {
        self.block_of[x.index()] as usize
    }
}

/// Orbits `KgK`, found by breadth-first closure under left and right
/// multiplication by the generators of `K`.
pub fn double_cosets(k: &SubgroupEmbedding) -> DoubleCosetDecomposition {
    let g = k.parent();
    let gens = k.generators_in_parent();
    let mut block_of = vec![u32::MAX; g.order()];
    let mut blocks = Vec::new();
    let mut representatives = Vec::new();
    let mut queue = VecDeque::new();

    let starts = std::iter::once(g.identity()).chain(g.elements());
    for start in starts {
        if block_of[start.index()] != u32::MAX {
            continue;
        }
        let id = blocks.len() as u32;
        let mut block = vec![start];
        block_of[start.index()] = id;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                for y in [g.mul(s, x), g.mul(x, s)] {
                    if block_of[y.index()] == u32::MAX {
                        block_of[y.index()] = id;
                        block.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        block.sort_unstable();
        representatives.push(start);
        blocks.push(block);
    }
    DoubleCosetDecomposition {
        blocks,
        representatives,
        block_of,
    }
}

/// Checks the decomposition against `K`: the blocks partition `G`, block 0 is
/// `K`, every block is stable under left and right multiplication by `K`, and
/// `|KgK| · |K ∩ g⁻¹Kg| = |K|²` at every representative.
pub fn verify_double_cosets(k: &SubgroupEmbedding, dc: &DoubleCosetDecomposition) -> Result<()> {
    let g = k.parent();
    let fail = |what: String| {
        Err(GroupError::InternalConsistency(format!(
            "double cosets: {what}"
        )))
    };
    let total: usize = dc.sizes().iter().sum();
    if total != g.order() {
        return fail(format!(
            "block sizes sum to {total}, expected {}",
            g.order()
        ));
    }
    for (i, block) in dc.blocks().iter().enumerate() {
        for &x in block {
            if dc.block_of(x) != i {
                return fail(format!("{x} listed in block {i} but indexed elsewhere"));
            }
        }
    }
    let mut image: Vec<GroupElementId> = k.map().to_vec();
    image.sort_unstable();
    if dc.block(0) != image.as_slice() || dc.representative(0) != g.identity() {
        return fail("block 0 is not K".into());
    }
    let member = k.membership();
    let k_order = k.order();
    for (i, block) in dc.blocks().iter().enumerate() {
        for &x in block {
            for &kk in k.map() {
                if dc.block_of(g.mul(kk, x)) != i || dc.block_of(g.mul(x, kk)) != i {
                    return fail(format!("block {i} not stable under K at {x}"));
                }
            }
        }
        let rep = dc.representative(i);
        // K ∩ g⁻¹Kg = {k ∈ K : g k g⁻¹ ∈ K}
        let stabilizer = k
            .map()
            .iter()
            .filter(|&&kk| member[g.conjugate(rep, kk).index()])
            .count();
        if block.len() * stabilizer != k_order * k_order {
            return fail(format!(
                "|KgK| * |K ∩ g⁻¹Kg| = {} * {stabilizer} != |K|² at block {i}",
                block.len()
            ));
        }
    }
    Ok(())
}

/// Exact structure constants of the double-coset algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeStructureConstants {
    rank: usize,
    block_sizes: Vec<usize>,
    table: Vec<u64>,
}

impl HeckeStructureConstants {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.table[(i * self.rank + j) * self.rank + k]
    }

    /// First `(i, j, k)` with `c[i][j][k] != c[j][i][k]`.
    pub fn commutativity_witness(&self) -> Option<(usize, usize, usize)> {
        let r = self.rank;
        for i in 0..r {
            for j in i + 1..r {
                for k in 0..r {
                    if self.get(i, j, k) != self.get(j, i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Checks `Σ_k c[i][j][k] |D_k| = |D_i| |D_j|` and that `D_0` acts as
    /// the unit up to the factor `|K|`.
    pub fn check_counting_identities(&self) -> Result<()> {
        let r = self.rank;
        let sizes = &self.block_sizes;
        for i in 0..r {
            for j in 0..r {
                let lhs: u64 = (0..r).map(|k| self.get(i, j, k) * sizes[k] as u64).sum();
                let rhs = (sizes[i] * sizes[j]) as u64;
                if lhs != rhs {
                    return Err(GroupError::InternalConsistency(format!(
                        "counting identity fails at ({i}, {j}): {lhs} != {rhs}"
                    )));
                }
            }
        }
        for j in 0..r {
            for k in 0..r {
                let expected = if j == k { sizes[0] as u64 } else { 0 };
                if self.get(0, j, k) != expected || self.get(j, 0, k) != expected {
                    return Err(GroupError::InternalConsistency(format!(
                        "K does not act as the unit at ({j}, {k})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `c[i][j][k]`, found by multiplying every pair in `D_i × D_j` and bucketing
/// the products that land on a representative. Each count is also taken
/// against a second element of `D_k` (when it has one); a mismatch means the
/// decomposition is not a union of double cosets.
pub fn structure_constants(
    k: &SubgroupEmbedding,
    dc: &DoubleCosetDecomposition,
) -> Result<HeckeStructureConstants> {
    let g = k.parent();
    let r = dc.rank();
    if r.saturating_mul(r).saturating_mul(r) > MAX_TABLE_ENTRIES {
        return Err(GroupError::ResourceLimit {
            what: format!("structure constants of rank {r}"),
            required: (r as u128).pow(3),
            budget: MAX_TABLE_ENTRIES,
        });
    }
    // slot 1 marks the representative, slot 2 the alternate
    let mut marker = vec![0u8; g.order()];
    for (i, block) in dc.blocks().iter().enumerate() {
        marker[dc.representative(i).index()] = 1;
        if let Some(&alt) = block.iter().find(|&&x| x != dc.representative(i)) {
            marker[alt.index()] = 2;
        }
    }
    let rows: Vec<(Vec<u64>, Vec<u64>)> = (0..r)
        .into_par_iter()
        .map(|i| {
            let mut main = vec![0u64; r * r];
            let mut alt = vec![0u64; r * r];
            for j in 0..r {
                for &x in dc.block(i) {
                    for &y in dc.block(j) {
                        let z = g.mul(x, y);
                        match marker[z.index()] {
                            1 => main[j * r + dc.block_of(z)] += 1,
                            2 => alt[j * r + dc.block_of(z)] += 1,
                            _ => {}
                        }
                    }
                }
            }
            (main, alt)
        })
        .collect();

    let mut table = Vec::with_capacity(r * r * r);
    for (i, (main, alt)) in rows.into_iter().enumerate() {
        for j in 0..r {
            for kk in 0..r {
                let has_alt = dc.block(kk).len() > 1;
                if has_alt && main[j * r + kk] != alt[j * r + kk] {
                    return Err(GroupError::InternalConsistency(format!(
                        "c[{i}][{j}][{kk}] depends on the representative: {} vs {}",
                        main[j * r + kk],
                        alt[j * r + kk]
                    )));
                }
            }
        }
        table.extend(main);
    }
    Ok(HeckeStructureConstants {
        rank: r,
        block_sizes: dc.sizes(),
        table,
    })
}

pub fn is_commutative(h: &HeckeStructureConstants) -> bool {
    h.commutativity_witness().is_none()
}

/// Scalars a bi-invariant function may take.
pub trait Scalar: Copy + Zero + Add<Output = Self> + Mul<Output = Self> + Send + Sync {
    fn from_count(n: u64) -> Self;
}

impl Scalar for i64 {
    fn from_count(n: u64) -> Self {
        n as i64
    }
}

impl Scalar for f64 {
    fn from_count(n: u64) -> Self {
        n as f64
    }
}

impl Scalar for Complex64 {
    fn from_count(n: u64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

/// A function on `G` constant on each double coset, stored as one value per
/// block.
#[derive(Debug, Clone, PartialEq)]
pub struct BiInvariantFunction<T> {
    pub values: Vec<T>,
}

impl<T: Scalar> BiInvariantFunction<T> {
    pub fn new(values: Vec<T>) -> Self {
        BiInvariantFunction { values }
    }

    /// Indicator of block `i`.
    pub fn delta(rank: usize, i: usize) -> Self {
        let mut values = vec![T::zero(); rank];
        values[i] = T::from_count(1);
        BiInvariantFunction { values }
    }

    #[inline]
    pub fn at(&self, dc: &DoubleCosetDecomposition, x: GroupElementId) -> T {
        self.values[dc.block_of(x)]
    }

    /// Values at every element of `G`.
    pub fn expand(&self, dc: &DoubleCosetDecomposition) -> Vec<T> {
        dc.block_of
            .iter()
            .map(|&b| self.values[b as usize])
            .collect()
    }
}

/// `(f ∗ h)(x) = Σ_{y ∈ G} f(y) h(y⁻¹x)`, summed directly over the group at
/// each block representative.
pub fn convolve<T: Scalar>(
    f: &BiInvariantFunction<T>,
    h: &BiInvariantFunction<T>,
    group: &FiniteGroup,
    dc: &DoubleCosetDecomposition,
) -> BiInvariantFunction<T> {
    let values = (0..dc.rank())
        .into_par_iter()
        .map(|kk| {
            let z = dc.representative(kk);
            group.elements().fold(T::zero(), |acc, y| {
                acc + f.at(dc, y) * h.at(dc, group.mul(group.inv(y), z))
            })
        })
        .collect();
    BiInvariantFunction { values }
}

/// `(f ∗ h)_k = Σ_{i,j} f_i h_j c[i][j][k]`.
pub fn convolve_by_constants<T: Scalar>(
    f: &BiInvariantFunction<T>,
    h: &BiInvariantFunction<T>,
    c: &HeckeStructureConstants,
) -> BiInvariantFunction<T> {
    let r = c.rank();
    let values = (0..r)
        .map(|kk| {
            let mut acc = T::zero();
            for i in 0..r {
                for j in 0..r {
                    let count = c.get(i, j, kk);
                    if count != 0 {
                        acc = acc + f.values[i] * h.values[j] * T::from_count(count);
                    }
                }
            }
            acc
        })
        .collect();
    BiInvariantFunction { values }
}

/// Result of the double-coset criterion.
#[derive(Debug, Clone)]
pub struct HeckeVerdict {
    pub gelfand: bool,
    pub rank: usize,
    pub block_sizes: Vec<usize>,
    pub witness: Option<(usize, usize, usize)>,
    pub constants: HeckeStructureConstants,
}

/// Double cosets, structure constants, commutativity.
pub fn is_gelfand_hecke(k: &SubgroupEmbedding) -> Result<HeckeVerdict> {
    let dc = double_cosets(k);
    let constants = structure_constants(k, &dc)?;
    constants.check_counting_identities()?;
    let witness = constants.commutativity_witness();
    Ok(HeckeVerdict {
        gelfand: witness.is_none(),
        rank: dc.rank(),
        block_sizes: dc.sizes(),
        witness,
        constants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_symmetric, subgroup_from_generators, Permutation};
    use crate::wreath::embed_wreath_subgroup;

    fn s3_s2() -> SubgroupEmbedding {
        let s3 = make_symmetric(3).unwrap();
        let t = GroupElementId::new(Permutation::cycle(3, &[1, 2]).unwrap().rank());
        subgroup_from_generators(&s3, &[t]).unwrap()
    }

    fn whole(g: &FiniteGroup) -> SubgroupEmbedding {
        subgroup_from_generators(g, g.generators()).unwrap()
    }

    /// Brute-force blocks: orbit of x is {k x k'} over all pairs of K.
    fn brute_force_sizes(k: &SubgroupEmbedding) -> Vec<usize> {
        let g = k.parent();
        let mut seen = vec![false; g.order()];
        let mut sizes = Vec::new();
        for x in g.elements() {
            if seen[x.index()] {
                continue;
            }
            let mut size = 0;
            for &a in k.map() {
                for &b in k.map() {
                    let y = g.mul(g.mul(a, x), b);
                    if !std::mem::replace(&mut seen[y.index()], true) {
                        size += 1;
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn s3_s2_blocks_and_constants() {
        let k = s3_s2();
        let dc = double_cosets(&k);
        assert_eq!(dc.sizes(), vec![2, 4]);
        verify_double_cosets(&k, &dc).unwrap();
        let c = structure_constants(&k, &dc).unwrap();
        assert_eq!(c.get(0, 0, 0), 2);
        assert_eq!(c.get(1, 1, 0), 4);
        assert_eq!(c.get(1, 1, 1), 2);
        assert_eq!(c.get(0, 1, 1), 2);
        assert_eq!(c.get(1, 0, 1), 2);
        assert!(is_commutative(&c));
        c.check_counting_identities().unwrap();
    }

    /// c[i][j][k] straight from the definition, over all of G × G.
    fn brute_force_constants(k: &SubgroupEmbedding, dc: &DoubleCosetDecomposition) -> Vec<u64> {
        let g = k.parent();
        let r = dc.rank();
        let mut out = vec![0u64; r * r * r];
        for x in g.elements() {
            for y in g.elements() {
                let z = g.mul(x, y);
                for kk in 0..r {
                    if z == dc.representative(kk) {
                        out[(dc.block_of(x) * r + dc.block_of(y)) * r + kk] += 1;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn constants_match_definition() {
        for k in [
            s3_s2(),
            embed_wreath_subgroup(&make_cyclic(2).unwrap(), 2).unwrap(),
        ] {
            let dc = double_cosets(&k);
            let c = structure_constants(&k, &dc).unwrap();
            assert_eq!(c.table, brute_force_constants(&k, &dc));
        }
    }

    #[test]
    fn whole_group_has_rank_one() {
        let s4 = make_symmetric(4).unwrap();
        let k = whole(&s4);
        let dc = double_cosets(&k);
        assert_eq!(dc.rank(), 1);
        let c = structure_constants(&k, &dc).unwrap();
        assert_eq!(c.get(0, 0, 0), 24);
        assert!(is_commutative(&c));
    }

    #[test]
    fn wreath_pairs() {
        let s3 = make_symmetric(3).unwrap();
        let k = embed_wreath_subgroup(&s3, 2).unwrap();
        let dc = double_cosets(&k);
        assert_eq!(dc.rank(), 7);
        assert_eq!(brute_force_sizes(&k), {
            let mut s = dc.sizes();
            s.sort_unstable();
            s
        });
        verify_double_cosets(&k, &dc).unwrap();
        let verdict = is_gelfand_hecke(&k).unwrap();
        assert!(!verdict.gelfand);
        assert!(verdict.witness.is_some());

        let z2 = make_cyclic(2).unwrap();
        let v = is_gelfand_hecke(&embed_wreath_subgroup(&z2, 2).unwrap()).unwrap();
        assert!(v.gelfand);
        assert_eq!(v.rank, 3);

        let z1 = make_cyclic(1).unwrap();
        let v = is_gelfand_hecke(&embed_wreath_subgroup(&z1, 4).unwrap()).unwrap();
        assert!(v.gelfand);
        assert_eq!(v.rank, 2);
    }

    #[test]
    fn unit_block_absorbs() {
        let k = s3_s2();
        let dc = double_cosets(&k);
        let g = BiInvariantFunction::new(vec![3i64, -7]);
        let unit = BiInvariantFunction::<i64>::delta(2, 0);
        let out = convolve(&unit, &g, k.parent(), &dc);
        assert_eq!(out.values, vec![6, -14]);
    }

    #[test]
    fn deltas_reproduce_constants() {
        let k = s3_s2();
        let dc = double_cosets(&k);
        let c = structure_constants(&k, &dc).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let di = BiInvariantFunction::<i64>::delta(2, i);
                let dj = BiInvariantFunction::<i64>::delta(2, j);
                let out = convolve(&di, &dj, k.parent(), &dc);
                for kk in 0..2 {
                    assert_eq!(out.values[kk] as u64, c.get(i, j, kk));
                }
            }
        }
    }

    #[test]
    fn convolution_result_is_bi_invariant() {
        let k = embed_wreath_subgroup(&make_symmetric(3).unwrap(), 2).unwrap();
        let g = k.parent();
        let dc = double_cosets(&k);
        let f = BiInvariantFunction::new((0..7).map(|i| i * 3 - 5).collect::<Vec<i64>>());
        let h = BiInvariantFunction::new((0..7).map(|i| 11 - i * i).collect::<Vec<i64>>());
        let fh = convolve(&f, &h, g, &dc);
        // evaluate the convolution at every element, not only at representatives
        let full: Vec<i64> = g
            .elements()
            .map(|x| {
                g.elements()
                    .map(|y| f.at(&dc, y) * h.at(&dc, g.mul(g.inv(y), x)))
                    .sum()
            })
            .collect();
        assert_eq!(full, fh.expand(&dc));
    }
}
