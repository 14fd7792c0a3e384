//! Partitions, multipartitions and branching-rule predictions.
//!
//! Irreducibles of `G ≀ S_n` are labelled by `l`-multipartitions of `n`,
//! where `l` is the number of irreducibles of `G`. Inducing from
//! `G ≀ S_{n-1}` adds one box to one component; a box added to component
//! `i` carries multiplicity `dim V^i`. Inducing the trivial representation
//! therefore gives `l + 1` constituents, and the pair is multiplicity free
//! exactly when every irreducible of `G` is one-dimensional.
//!
//! Every list returned here is in a fixed order: partitions in decreasing
//! lexicographic order, multipartitions by decreasing size of the leading
//! components, prediction terms by component index.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::{GroupError, Result};

/// A weakly decreasing sequence of positive integers. The empty partition is
/// written `∅`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot read `{input}` as a partition: {reason}")]
pub struct ParsePartitionError {
    pub input: String,
    pub reason: String,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(GroupError::InvalidParameter(format!(
                "partition {parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(GroupError::InvalidParameter(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(n)`, or `∅` for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `m_i`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Componentwise containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Exponential notation, e.g. `1^2 3^1` for `(3,1,1)`.
    pub fn to_exponential(&self) -> String {
        let mut values: Vec<usize> = self.parts.clone();
        values.dedup();
        values.reverse();
        values
            .into_iter()
            .map(|v| format!("{v}^{}", self.multiplicity(v)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = ParsePartitionError;

    /// Accepts `3,3,2,1`, `(3,3,2,1)`, `3 3 2 1`, the empty string or `∅`,
    /// and exponential notation such as `1^2 3^1`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = |reason: String| ParsePartitionError {
            input: s.to_string(),
            reason,
        };
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "∅" || trimmed == "()" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        if trimmed.contains('^') {
            for token in trimmed.split_whitespace() {
                let (value, count) = token
                    .split_once('^')
                    .ok_or_else(|| err(format!("`{token}` is not of the form i^m")))?;
                let value: usize = value
                    .parse()
                    .map_err(|_| err(format!("`{value}` is not a positive integer")))?;
                let count: usize = count
                    .parse()
                    .map_err(|_| err(format!("`{count}` is not a non-negative integer")))?;
                if value == 0 {
                    return Err(err("parts must be positive".into()));
                }
                parts.extend(std::iter::repeat_n(value, count));
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
        } else {
            let inner = trimmed
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(trimmed);
            for token in inner.split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    continue;
                }
                let part: usize = token
                    .parse()
                    .map_err(|_| err(format!("`{token}` is not a positive integer")))?;
                parts.push(part);
            }
        }
        Partition::new(parts).map_err(|e| match e {
            GroupError::InvalidParameter(reason) => err(reason),
            other => err(other.to_string()),
        })
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `λ⁺`: every partition obtained by adding one box at an addable corner,
/// in decreasing lexicographic order. `∅⁺ = {(1)}`.
pub fn extensions(lambda: &Partition) -> Vec<Partition> {
    let parts = lambda.parts();
    let mut out = Vec::with_capacity(parts.len() + 1);
    for i in 0..parts.len() {
        if i == 0 || parts[i - 1] > parts[i] {
            let mut grown = parts.to_vec();
            grown[i] += 1;
            out.push(Partition { parts: grown });
        }
    }
    let mut grown = parts.to_vec();
    grown.push(1);
    out.push(Partition { parts: grown });
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// An `l`-tuple of partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition {
    components: Vec<Partition>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        Multipartition { components }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    /// `l`.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `|Λ| = Σ |λ_i|`.
    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All `l`-multipartitions of `n`.
pub fn multipartitions(l: usize, n: usize) -> Result<Vec<Multipartition>> {
    if l == 0 {
        return Err(GroupError::InvalidParameter(
            "multipartitions need l >= 1".into(),
        ));
    }
    fn go(l: usize, n: usize) -> Vec<Vec<Partition>> {
        if l == 1 {
            return partitions_of(n).into_iter().map(|p| vec![p]).collect();
        }
        let mut out = Vec::new();
        for head in (0..=n).rev() {
            let tails = go(l - 1, n - head);
            for p in partitions_of(head) {
                for tail in &tails {
                    let mut components = Vec::with_capacity(l);
                    components.push(p.clone());
                    components.extend(tail.iter().cloned());
                    out.push(components);
                }
            }
        }
        out
    }
    Ok(go(l, n).into_iter().map(Multipartition::new).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchTerm {
    pub label: Multipartition,
    pub multiplicity: u64,
}

/// A predicted decomposition `⊕ m · S^Λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingPrediction {
    pub terms: Vec<BranchTerm>,
}

impl BranchingPrediction {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ m²`, the predicted number of double cosets when the decomposed
    /// module is a permutation module.
    pub fn rank(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| t.multiplicity * t.multiplicity)
            .sum()
    }

    /// Multiplicities, ascending.
    pub fn multiset(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.terms.iter().map(|t| t.multiplicity).collect();
        out.sort_unstable();
        out
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.iter().all(|t| t.multiplicity <= 1)
    }

    /// `S^(5) ⊕ S^(4,1)` for one component, `S^((1),∅) ⊕ 2·S^(∅,(1))` for
    /// several.
    pub fn render(&self) -> String {
        self.terms
            .iter()
            .map(|t| {
                let label = if t.label.len() == 1 {
                    t.label.components()[0].to_string()
                } else {
                    t.label.to_string()
                };
                if t.multiplicity == 1 {
                    format!("S^{label}")
                } else {
                    format!("{}·S^{label}", t.multiplicity)
                }
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

/// Induction from `G ≀ S_{n-1}` to `G ≀ S_n` of the irreducible labelled
/// by `lambda`, given the degrees `dims` of the irreducibles of `G`
/// (`dims[0]` belonging to the trivial one).
pub fn branch_induce(lambda: &Multipartition, dims: &[u64]) -> Result<BranchingPrediction> {
    if lambda.len() != dims.len() {
        return Err(GroupError::InvalidParameter(format!(
            "{}-multipartition paired with {} degrees",
            lambda.len(),
            dims.len()
        )));
    }
    let mut terms = Vec::new();
    for (i, component) in lambda.components().iter().enumerate() {
        for delta in extensions(component) {
            let mut components = lambda.components().to_vec();
            components[i] = delta;
            terms.push(BranchTerm {
                label: Multipartition::new(components),
                multiplicity: dims[i],
            });
        }
    }
    Ok(BranchingPrediction { terms })
}

/// Decomposition of `1` induced from `G ≀ S_{n-1}` to `G ≀ S_n`: the terms
/// `((n),∅,…)`, `((n-1,1),∅,…)`, and for each non-trivial irreducible `i`
/// of `G` the term with `(1)` in position `i`, of multiplicity `dims[i]`.
pub fn induced_trivial_prediction(dims: &[u64], n: usize) -> Result<BranchingPrediction> {
    if dims.first() != Some(&1) {
        return Err(GroupError::InvalidParameter(
            "the first degree must be 1 (the trivial representation)".into(),
        ));
    }
    if n < 2 {
        return Err(GroupError::InvalidParameter(format!(
            "the induced trivial representation needs n >= 2, got {n}"
        )));
    }
    let mut components = vec![Partition::empty(); dims.len()];
    components[0] = Partition::row(n - 1);
    branch_induce(&Multipartition::new(components), dims)
}

/// True iff every irreducible of the base group is one-dimensional.
pub fn predicted_is_multiplicity_free(dims: &[u64]) -> bool {
    dims.iter().all(|&d| d == 1)
}
