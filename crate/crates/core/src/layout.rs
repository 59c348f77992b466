//! Tensor-product structure of a composite system.
//!
//! Composite basis states are indexed lexicographically by the tuple of local
//! indices with party 0 most significant, so for dims `[2, 3]` the index of
//! `|a, b⟩` is `3a + b`.

use crate::error::{Error, Result};

/// Ordered local dimensions of the parties making up a composite system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartyLayout {
    dims: Vec<usize>,
    total_dim: usize,
}

impl PartyLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidLayout("no parties".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidLayout(format!(
                "local dimension {d} is below 2"
            )));
        }
        let total_dim = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidLayout("total dimension overflows".into()))?;
        Ok(Self { dims, total_dim })
    }

    /// `K` parties of the same local dimension.
    pub fn uniform(parties: usize, dim: usize) -> Result<Self> {
        Self::new(vec![dim; parties])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, party: usize) -> usize {
        self.dims[party]
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn check_party(&self, party: usize) -> Result<()> {
        if party < self.parties() {
            Ok(())
        } else {
            Err(Error::PartyOutOfRange {
                party,
                parties: self.parties(),
            })
        }
    }

    pub(crate) fn require_bipartite_or_more(&self) -> Result<()> {
        if self.parties() < 2 {
            Err(Error::TooFewParties(self.parties()))
        } else {
            Ok(())
        }
    }

    /// Splits a composite index into local indices.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    /// Inverse of [`digits`](Self::digits).
    pub fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&l, &d)| acc * d + l)
    }

    /// Layout of the listed parties, in the order given.
    pub fn sub_layout(&self, parties: &[usize]) -> Result<Self> {
        for &p in parties {
            self.check_party(p)?;
        }
        Self::new(parties.iter().map(|&p| self.dims[p]).collect())
    }

    /// Product of the local dimensions of `parties`.
    pub fn group_dim(&self, parties: &[usize]) -> usize {
        parties.iter().map(|&p| self.dims[p]).product()
    }
}

/// A bipartition of the parties into two non-empty groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Cut {
    /// Builds the cut `side_a | complement` for `layout`.
    pub fn new(layout: &PartyLayout, side_a: &[usize]) -> Result<Self> {
        layout.require_bipartite_or_more()?;
        let mut a = side_a.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != side_a.len() {
            return Err(Error::InvalidCut("repeated party index".into()));
        }
        for &p in &a {
            layout.check_party(p)?;
        }
        let b: Vec<usize> = (0..layout.parties()).filter(|p| !a.contains(p)).collect();
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidCut("both sides must be non-empty".into()));
        }
        Ok(Self {
            side_a: a,
            side_b: b,
        })
    }

    /// Party 0 against the rest.
    pub fn first_vs_rest(layout: &PartyLayout) -> Result<Self> {
        Self::new(layout, &[0])
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }
}
