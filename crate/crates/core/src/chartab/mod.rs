//! Complex character tables and the decomposition of the permutation
//! character `1_K^G`.
//!
//! Characters come from the class algebra. With `a[i][j][k]` the class
//! multiplication coefficients, the vector of central character values
//! `ω(C_k) = |C_k| χ(z_k) / χ(1)` is a common eigenvector of the matrices
//! `(M_i)_{jk} = a[i][j][k]` with eigenvalue `ω(C_i)`. Conjugating by
//! `diag(√|C_k|)` makes every `M_i` normal with an orthonormal common
//! eigenbasis, so a random Hermitian combination `A + A*` of the conjugated
//! matrices separates the irreducibles and can be diagonalized with a
//! Hermitian eigensolver. Degrees then follow from
//! `Σ_k |C_k| |χ(z_k)|² = |G|`.
//!
//! Floating point is confined to this module. Every table is validated
//! against the orthogonality relations before it is returned, and every
//! multiplicity is rounded and re-checked with integer identities.

mod cache;

use std::cmp::Ordering;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Limits, DEFAULT_SEED};
use crate::error::{GroupError, Result};
use crate::group::{
    conjugacy_classes, ConjugacyClassDecomposition, FiniteGroup, SubgroupEmbedding,
};

pub use cache::CACHE_HEADER;

/// Tolerance for orthogonality checks before rounding.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-8;

/// Tolerance for rounding inner products and degrees to integers.
pub const ROUNDING_TOLERANCE: f64 = 1e-6;

/// `a[i][j][k] = #{(x, y) ∈ C_i × C_j : xy = z_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMultiplicationCoefficients {
    rank: usize,
    class_sizes: Vec<usize>,
    table: Vec<u64>,
}

impl ClassMultiplicationCoefficients {
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.table[(i * self.rank + j) * self.rank + k]
    }

    /// `Σ_k a[i][j][k] |C_k| = |C_i| |C_j|` for every `(i, j)`.
    pub fn check_counting_identity(&self) -> Result<()> {
        let r = self.rank;
        for i in 0..r {
            for j in 0..r {
                let lhs: u64 = (0..r)
                    .map(|k| self.get(i, j, k) * self.class_sizes[k] as u64)
                    .sum();
                let rhs = (self.class_sizes[i] * self.class_sizes[j]) as u64;
                if lhs != rhs {
                    return Err(GroupError::InternalConsistency(format!(
                        "class counting identity fails at ({i}, {j}): {lhs} != {rhs}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Counts `x ∈ C_i` with `x⁻¹ z_k ∈ C_j`, which is the same as counting the
/// pairs with product `z_k`.
pub fn class_coefficients(
    group: &FiniteGroup,
    classes: &ConjugacyClassDecomposition,
) -> ClassMultiplicationCoefficients {
    let r = classes.len();
    let reps = classes.representatives();
    let rows: Vec<Vec<u64>> = (0..r)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u64; r * r];
            for &x in classes.class(i) {
                let x_inv = group.inv(x);
                for (k, &z) in reps.iter().enumerate() {
                    let j = classes.class_of(group.mul(x_inv, z));
                    row[j * r + k] += 1;
                }
            }
            row
        })
        .collect();
    ClassMultiplicationCoefficients {
        rank: r,
        class_sizes: classes.sizes(),
        table: rows.concat(),
    }
}

/// Settings for [`character_table_with`].
#[derive(Debug, Clone, Copy)]
pub struct ChartabOptions {
    pub limits: Limits,
    pub seed: u64,
    /// Random combinations tried before giving up.
    pub max_attempts: usize,
}

impl Default for ChartabOptions {
    fn default() -> Self {
        ChartabOptions {
            limits: Limits::default(),
            seed: DEFAULT_SEED,
            max_attempts: 8,
        }
    }
}

/// Irreducible characters of a group, one row per irreducible and one column
/// per conjugacy class. Row 0 is the trivial character; the other rows are
/// sorted by degree, then by their values.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    descriptor: String,
    group_order: usize,
    classes: ConjugacyClassDecomposition,
    degrees: Vec<u64>,
    values: Vec<Vec<Complex64>>,
}

impl CharacterTable {
    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn classes(&self) -> &ConjugacyClassDecomposition {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.values[i]
    }

    /// `(1/|G|) Σ_k |C_k| f(k) conj(h(k))`.
    pub fn inner_product(&self, f: &[Complex64], h: &[Complex64]) -> Complex64 {
        inner_product(f, h, &self.classes.sizes(), self.group_order)
    }

    /// Both orthogonality relations within [`ORTHOGONALITY_TOLERANCE`], exact
    /// integrality of the Gram matrix after rounding, the degree identities,
    /// and `χ(identity) = degree`.
    pub fn validate(&self) -> Result<()> {
        let r = self.classes.len();
        let n = self.group_order;
        let sizes = self.classes.sizes();
        let fail = |what: String| {
            Err(GroupError::InternalConsistency(format!(
                "character table of {}: {what}",
                self.descriptor
            )))
        };
        if self.values.len() != r || self.degrees.len() != r {
            return fail(format!(
                "{} rows for {r} conjugacy classes",
                self.values.len()
            ));
        }
        if sizes.iter().sum::<usize>() != n {
            return fail("class sizes do not sum to the group order".into());
        }
        let degree_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if degree_sq != n as u64 {
            return fail(format!("sum of squared degrees is {degree_sq}, not {n}"));
        }
        if self.values[0]
            .iter()
            .any(|v| (v - 1.0).norm() > ORTHOGONALITY_TOLERANCE)
        {
            return fail("row 0 is not the trivial character".into());
        }
        for (i, row) in self.values.iter().enumerate() {
            if row.len() != r {
                return fail(format!("row {i} has {} entries", row.len()));
            }
            if (row[0] - self.degrees[i] as f64).norm() > ORTHOGONALITY_TOLERANCE {
                return fail(format!("row {i} does not start with its degree"));
            }
        }
        for i in 0..r {
            for j in 0..r {
                let ip = self.inner_product(&self.values[i], &self.values[j]);
                let expected = if i == j { 1.0 } else { 0.0 };
                if (ip - expected).norm() > ORTHOGONALITY_TOLERANCE {
                    return fail(format!("rows {i}, {j} have inner product {ip}"));
                }
                if round_to_count(ip).ok() != Some(expected as u64) {
                    return fail(format!("rows {i}, {j} do not round to {expected}"));
                }
            }
        }
        for j in 0..r {
            for k in 0..r {
                let sum: Complex64 = self.values.iter().map(|row| row[j] * row[k].conj()).sum();
                // Σ_χ χ(z_j) conj χ(z_k) = [j = k] |G| / |C_k|
                let scaled = sum * sizes[k] as f64 / n as f64;
                let expected = if j == k { 1.0 } else { 0.0 };
                if (scaled - expected).norm() > ORTHOGONALITY_TOLERANCE {
                    return fail(format!("columns {j}, {k} are not orthogonal: {scaled}"));
                }
            }
        }
        Ok(())
    }

    /// Number of degree-one characters.
    pub fn linear_character_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 1).count()
    }
}

/// `(1/|G|) Σ_k |C_k| f(k) conj(h(k))`.
pub fn inner_product(
    f: &[Complex64],
    h: &[Complex64],
    class_sizes: &[usize],
    group_order: usize,
) -> Complex64 {
    f.iter()
        .zip(h)
        .zip(class_sizes)
        .map(|((a, b), &s)| a * b.conj() * s as f64)
        .sum::<Complex64>()
        / group_order as f64
}

/// Rounds an inner product of characters to a non-negative integer, failing
/// when it is not within [`ROUNDING_TOLERANCE`] of one.
pub fn round_to_count(value: Complex64) -> Result<u64> {
    let rounded = value.re.round();
    if value.im.abs() > ROUNDING_TOLERANCE
        || (value.re - rounded).abs() > ROUNDING_TOLERANCE
        || rounded < 0.0
    {
        return Err(GroupError::NumericalQuality(format!(
            "{value} is not a non-negative integer"
        )));
    }
    Ok(rounded as u64)
}

/// Character table with default options.
pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    character_table_with(group, &ChartabOptions::default())
}

pub fn character_table_with(group: &FiniteGroup, opts: &ChartabOptions) -> Result<CharacterTable> {
    if group.order() > opts.limits.chartab_order_limit {
        return Err(GroupError::ResourceLimit {
            what: format!("character table of {}", group.descriptor()),
            required: group.order() as u128,
            budget: opts.limits.chartab_order_limit,
        });
    }
    let classes = conjugacy_classes(group);
    let r = classes.len();
    if r > opts.limits.class_limit {
        return Err(GroupError::ResourceLimit {
            what: format!("character table of {} ({r} classes)", group.descriptor()),
            required: r as u128,
            budget: opts.limits.class_limit,
        });
    }
    let coefficients = class_coefficients(group, &classes);
    coefficients.check_counting_identity()?;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut last_failure = String::from("no attempt made");
    for _ in 0..opts.max_attempts.max(1) {
        match solve_once(group.order(), &classes, &coefficients, &mut rng) {
            Ok((degrees, values)) => {
                let table = CharacterTable {
                    descriptor: group.descriptor().to_string(),
                    group_order: group.order(),
                    classes,
                    degrees,
                    values,
                };
                table.validate()?;
                return Ok(table);
            }
            Err(reason) => last_failure = reason,
        }
    }
    Err(GroupError::Diagonalization {
        attempts: opts.max_attempts.max(1),
        detail: last_failure,
    })
}

type Rows = (Vec<u64>, Vec<Vec<Complex64>>);

/// One randomized diagonalization. `Err` carries the reason to retry.
fn solve_once(
    order: usize,
    classes: &ConjugacyClassDecomposition,
    a: &ClassMultiplicationCoefficients,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<Rows, String> {
    let r = classes.len();
    let sizes: Vec<f64> = classes.sizes().iter().map(|&s| s as f64).collect();
    let scale: Vec<f64> = sizes.iter().map(|s| s.sqrt()).collect();

    // A = Σ_i α_i S⁻¹ M_i S, then H = A + A*
    let mut combo = DMatrix::<Complex64>::zeros(r, r);
    for i in 0..r {
        let alpha = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        for j in 0..r {
            for k in 0..r {
                let c = a.get(i, j, k);
                if c != 0 {
                    combo[(j, k)] += alpha * (c as f64 * scale[k] / scale[j]);
                }
            }
        }
    }
    let hermitian = &combo + combo.adjoint();
    let eigen = SymmetricEigen::try_new(hermitian, f64::EPSILON, 10_000)
        .ok_or_else(|| "Hermitian eigensolver did not converge".to_string())?;

    let mut eigenvalues: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let spread = (eigenvalues[r - 1] - eigenvalues[0]).abs().max(1.0);
    let min_gap = eigenvalues
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    if min_gap < 1e-6 * spread {
        return Err(format!("eigenvalues not separated (gap {min_gap:e})"));
    }

    let mut rows = Vec::with_capacity(r);
    for col in 0..r {
        let u = eigen.eigenvectors.column(col);
        let mut w: Vec<Complex64> = (0..r).map(|k| u[k] * scale[k]).collect();
        if w[0].norm() < 1e-12 {
            return Err("eigenvector vanishes at the identity class".into());
        }
        let w0 = w[0];
        for x in &mut w {
            *x /= w0;
        }
        // common eigenvector of every M_i with eigenvalue w_i
        let w_norm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..r {
            let mut residual = 0.0;
            for j in 0..r {
                let acc: Complex64 = w
                    .iter()
                    .enumerate()
                    .map(|(k, wk)| wk * a.get(i, j, k) as f64)
                    .sum();
                residual += (acc - w[i] * w[j]).norm_sqr();
            }
            if residual.sqrt() > 1e-7 * (1.0 + sizes[i]) * w_norm {
                return Err(format!("eigenvector {col} fails class matrix {i}"));
            }
        }
        let weight: f64 = w.iter().zip(&sizes).map(|(x, s)| x.norm_sqr() / s).sum();
        let degree_f = (order as f64 / weight).sqrt();
        let degree = degree_f.round();
        if degree < 1.0 || (degree_f - degree).abs() > ROUNDING_TOLERANCE * degree {
            return Err(format!("degree {degree_f} is not an integer"));
        }
        let values: Vec<Complex64> = w
            .iter()
            .zip(&sizes)
            .map(|(x, s)| tidy(x * degree / s))
            .collect();
        rows.push((degree as u64, values));
    }

    rows.sort_by(row_order);
    Ok(rows.into_iter().unzip())
}

fn is_trivial_row(values: &[Complex64]) -> bool {
    values.iter().all(|v| (v - 1.0).norm() < 1e-6)
}

fn row_order(a: &(u64, Vec<Complex64>), b: &(u64, Vec<Complex64>)) -> Ordering {
    is_trivial_row(&b.1)
        .cmp(&is_trivial_row(&a.1))
        .then(a.0.cmp(&b.0))
        .then_with(|| {
            for (x, y) in a.1.iter().zip(&b.1) {
                let ord = quantize(x.re)
                    .cmp(&quantize(y.re))
                    .then(quantize(x.im).cmp(&quantize(y.im)));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
}

fn quantize(x: f64) -> i64 {
    (x * 1e9).round() as i64
}

/// Snaps parts within `1e-12` of zero.
fn tidy(z: Complex64) -> Complex64 {
    let snap = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    Complex64::new(snap(z.re), snap(z.im))
}

/// Irreducible degrees in ascending order.
pub fn irrep_dimensions(group: &FiniteGroup) -> Result<Vec<u64>> {
    let table = character_table(group)?;
    let mut dims = table.degrees().to_vec();
    dims.sort_unstable();
    Ok(dims)
}

/// `χ(g) = #{xK : g x K = x K}` at one representative per conjugacy class of
/// the parent (classes as in `classes`).
pub fn permutation_character(
    k: &SubgroupEmbedding,
    classes: &ConjugacyClassDecomposition,
) -> Vec<u64> {
    let g = k.parent();
    let member = k.membership();
    let mut covered = vec![false; g.order()];
    let mut coset_reps = Vec::with_capacity(k.index());
    for x in g.elements() {
        if covered[x.index()] {
            continue;
        }
        coset_reps.push(x);
        for &kk in k.map() {
            covered[g.mul(x, kk).index()] = true;
        }
    }
    classes
        .representatives()
        .par_iter()
        .map(|&z| {
            // gxK = xK iff x⁻¹ g x ∈ K
            coset_reps
                .iter()
                .filter(|&&x| member[g.mul(g.mul(g.inv(x), z), x).index()])
                .count() as u64
        })
        .collect()
}

/// Multiplicities `m_i` of each irreducible in `1_K^G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedTrivialDecomposition {
    pub multiplicities: Vec<u64>,
}

impl InducedTrivialDecomposition {
    pub fn is_multiplicity_free(&self) -> bool {
        self.multiplicities.iter().all(|&m| m <= 1)
    }

    /// `Σ m_i²`, the number of double cosets.
    pub fn rank(&self) -> u64 {
        self.multiplicities.iter().map(|m| m * m).sum()
    }

    /// Non-zero multiplicities, ascending.
    pub fn multiset(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .multiplicities
            .iter()
            .copied()
            .filter(|&m| m > 0)
            .collect();
        out.sort_unstable();
        out
    }
}

/// Decomposes the permutation character on `G/K` against `table`, which must
/// be the character table of `K.parent()`. With `hecke_rank` supplied, also
/// checks `Σ m_i² = rank`.
pub fn decompose_induced_trivial(
    table: &CharacterTable,
    k: &SubgroupEmbedding,
    hecke_rank: Option<usize>,
) -> Result<InducedTrivialDecomposition> {
    let g = k.parent();
    if table.group_order() != g.order() || table.descriptor() != g.descriptor() {
        return Err(GroupError::InvalidParameter(format!(
            "character table of {} used for {}",
            table.descriptor(),
            g.descriptor()
        )));
    }
    let perm: Vec<Complex64> = permutation_character(k, table.classes())
        .into_iter()
        .map(|v| Complex64::new(v as f64, 0.0))
        .collect();
    let multiplicities = table
        .rows()
        .iter()
        .map(|row| round_to_count(table.inner_product(&perm, row)))
        .collect::<Result<Vec<u64>>>()?;

    let degree_sum: u64 = multiplicities
        .iter()
        .zip(table.degrees())
        .map(|(m, d)| m * d)
        .sum();
    if degree_sum != k.index() as u64 {
        return Err(GroupError::NumericalQuality(format!(
            "Σ m_i d_i = {degree_sum} but [G : K] = {}",
            k.index()
        )));
    }
    if multiplicities[0] != 1 {
        return Err(GroupError::NumericalQuality(format!(
            "trivial character occurs {} times",
            multiplicities[0]
        )));
    }
    let decomposition = InducedTrivialDecomposition { multiplicities };
    if let Some(rank) = hecke_rank {
        if decomposition.rank() != rank as u64 {
            return Err(GroupError::InternalConsistency(format!(
                "Σ m_i² = {} but there are {rank} double cosets",
                decomposition.rank()
            )));
        }
    }
    Ok(decomposition)
}

pub fn is_gelfand_character(table: &CharacterTable, k: &SubgroupEmbedding) -> Result<bool> {
    Ok(decompose_induced_trivial(table, k, None)?.is_multiplicity_free())
}
