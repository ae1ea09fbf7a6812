use std::fmt;

use thiserror::Error;

/// A weakly decreasing tuple of nonnegative integers with last part zero.
///
/// The trailing zero is required so that partitions index dominant integral
/// weights: a partition of length `n` labels a boundary condition for
/// `n`-row ice models.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition must have at least one part")]
    Empty,
    #[error("parts must be weakly decreasing: part {index} is {value} but part {} is {prev}", index - 1)]
    NotDecreasing {
        index: usize,
        value: usize,
        prev: usize,
    },
    #[error("last part must be 0, got {0}")]
    NonzeroLast(usize),
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::Empty);
        }
        for i in 1..parts.len() {
            if parts[i] > parts[i - 1] {
                return Err(PartitionError::NotDecreasing {
                    index: i,
                    value: parts[i],
                    prev: parts[i - 1],
                });
            }
        }
        if *parts.last().unwrap() != 0 {
            return Err(PartitionError::NonzeroLast(*parts.last().unwrap()));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts, counting the trailing zero(s).
    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    /// λ₁, the largest part.
    pub fn first(&self) -> usize {
        self.parts[0]
    }

    /// Column count λ₁ + n of the ice models satisfying this boundary condition.
    pub fn num_cols(&self) -> usize {
        self.first() + self.num_rows()
    }

    /// |λ| = Σ λᵢ, the number of boxes in every model of the family.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part λᵢ with 1-based index; zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}
