//! Betti tables from Hochster's formula and the linear part of the minimal
//! free resolution of `k[Δ]`, assembled from restriction maps on cohomology.
//!
//! The summand of `F^lin_i` in squarefree degree `U` is `H̃^j(Δ_U) ⊗ S(-U)`
//! with `j = #U - i - 1`, and the block towards `U∖u` is the restriction
//! `H̃^j(Δ_U) → H̃^j(Δ_{U∖u})` twisted by `(-1)^α(u,U)` and multiplied by `x_u`.

mod koszul;
mod two_linear;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cohomology::CohomologyTable;
use crate::linalg::{Field, FieldMatrix};
use crate::simplicial::{sign, SimplicialComplex, VertexSet};
use crate::{Error, Result};

pub use koszul::{koszul_slice_check, koszul_slice_homology};
pub use two_linear::{two_linear_strand_basis, ComponentBasis, StrandMap, TwoLinearReport};

/// Multigraded Betti numbers `β_{i,U}` of `k[Δ]`; zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, VertexSet), usize>,
}

impl BettiTable {
    pub fn from_entries<I: IntoIterator<Item = ((usize, VertexSet), usize)>>(entries: I) -> Self {
        BettiTable {
            entries: entries.into_iter().filter(|(_, b)| *b > 0).collect(),
        }
    }

    pub fn from_table(table: &CohomologyTable<'_>) -> Self {
        let all: Vec<VertexSet> = VertexSet::full(table.n()).subsets().collect();
        let per_set: Vec<Vec<((usize, VertexSet), usize)>> = all
            .par_iter()
            .map(|&u| {
                (-1..u.len() as isize)
                    .filter_map(|j| {
                        let dim = table.dim(u, j);
                        let i = (u.len() as isize - j - 1) as usize;
                        (dim > 0).then_some(((i, u), dim))
                    })
                    .collect()
            })
            .collect();
        Self::from_entries(per_set.into_iter().flatten())
    }

    pub fn get(&self, i: usize, u: VertexSet) -> usize {
        self.entries.get(&(i, u)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, VertexSet), usize> {
        &self.entries
    }

    /// Total Betti numbers `β_i = Σ_U β_{i,U}`, up to the last nonzero one.
    pub fn ranks(&self) -> Vec<usize> {
        let len = self.entries.keys().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut r = vec![0; len];
        for (&(i, _), &b) in &self.entries {
            r[i] += b;
        }
        r
    }

    /// Degrees of the generators in homological degree `i`, with multiplicity.
    pub fn degrees(&self, i: usize) -> Vec<VertexSet> {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .flat_map(|((_, u), &b)| std::iter::repeat_n(*u, b))
            .collect()
    }

    /// Coarse table `(i, #U) → Σ β_{i,U}`.
    pub fn coarse(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for (&(i, u), &b) in &self.entries {
            *out.entry((i, u.len())).or_insert(0) += b;
        }
        out
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            #[serde(rename = "U")]
            set: VertexSet,
            beta: usize,
        }
        serializer.collect_seq(
            self.entries
                .iter()
                .map(|(&(i, set), &beta)| Entry { i, set, beta }),
        )
    }
}

/// Multigraded Betti numbers of `k[Δ]` via Hochster's formula
/// `β_{i,U} = dim H̃^{#U-i-1}(Δ_U)`.
pub fn betti_table(complex: &SimplicialComplex, field: Field) -> Result<BettiTable> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    Ok(BettiTable::from_table(&CohomologyTable::new(
        complex, field,
    )))
}

/// A summand `H̃^j(Δ_U) ⊗ S(-U)` of `F^lin_i`, where `j = #U - i - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    #[serde(rename = "i")]
    pub hom_degree: usize,
    #[serde(rename = "U")]
    pub set: VertexSet,
    #[serde(rename = "j")]
    pub coh_degree: isize,
    pub dim: usize,
}

impl Summand {
    /// Degree `‖g‖` of the corresponding generator in the resolution of
    /// `I_Δ`, i.e. `#U - i + 1`. The summand `(0, ∅)` of `k[Δ]` has degree 0.
    pub fn strand(&self) -> usize {
        if self.hom_degree == 0 {
            0
        } else {
            self.set.len() + 1 - self.hom_degree
        }
    }
}

/// The block `(-1)^α(u,U) ρ ⊗ x_u` from summand `source` to summand `target`.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub source: usize,
    pub target: usize,
    /// The variable `x_u` multiplying the block.
    #[serde(rename = "u")]
    pub vertex: usize,
    pub sign: i64,
    /// Signed restriction, `dim target × dim source`.
    pub matrix: FieldMatrix,
}

/// `F^lin` of the minimal free resolution of `k[Δ]`.
#[derive(Clone, Debug, Serialize)]
pub struct LinearPartComplex {
    pub field: Field,
    pub n: usize,
    pub summands: Vec<Summand>,
    pub blocks: Vec<Block>,
    #[serde(skip)]
    index: BTreeMap<(usize, VertexSet), usize>,
}

impl LinearPartComplex {
    pub fn from_table(table: &CohomologyTable<'_>) -> Result<Self> {
        let betti = BettiTable::from_table(table);
        let summands: Vec<Summand> = betti
            .entries()
            .iter()
            .map(|(&(i, set), &dim)| Summand {
                hom_degree: i,
                set,
                coh_degree: set.len() as isize - i as isize - 1,
                dim,
            })
            .collect();
        let index: BTreeMap<(usize, VertexSet), usize> = summands
            .iter()
            .enumerate()
            .map(|(k, s)| ((s.hom_degree, s.set), k))
            .collect();
        let per_source: Vec<Result<Vec<Block>>> = summands
            .par_iter()
            .enumerate()
            .map(|(k, s)| {
                let mut blocks = Vec::new();
                if s.hom_degree == 0 {
                    return Ok(blocks);
                }
                for u in s.set.iter() {
                    let Some(&target) = index.get(&(s.hom_degree - 1, s.set.without(u))) else {
                        continue;
                    };
                    let sgn = sign(u, s.set);
                    let rho = table.restriction(s.set, u, s.coh_degree)?;
                    let matrix = rho.scale(table.field().from_i64(sgn));
                    blocks.push(Block {
                        source: k,
                        target,
                        vertex: u,
                        sign: sgn,
                        matrix,
                    });
                }
                Ok(blocks)
            })
            .collect();
        let mut blocks = Vec::new();
        for b in per_source {
            blocks.extend(b?);
        }
        let lp = LinearPartComplex {
            field: table.field(),
            n: table.n(),
            summands,
            blocks,
            index,
        };
        lp.check_square_zero()?;
        Ok(lp)
    }

    pub fn summand_index(&self, i: usize, u: VertexSet) -> Option<usize> {
        self.index.get(&(i, u)).copied()
    }

    pub fn summand(&self, i: usize, u: VertexSet) -> Option<&Summand> {
        self.summand_index(i, u).map(|k| &self.summands[k])
    }

    /// Block leaving summand `source` along the variable `x_u`.
    pub fn block(&self, source: usize, u: usize) -> Option<&Block> {
        self.blocks
            .iter()
            .find(|b| b.source == source && b.vertex == u)
    }

    /// Pairs `(U, U∖u)` of summands joined by a nonzero block.
    pub fn nonzero_arrows(&self) -> Vec<(VertexSet, VertexSet)> {
        let mut out: Vec<_> = self
            .blocks
            .iter()
            .filter(|b| !b.matrix.is_zero())
            .map(|b| (self.summands[b.source].set, self.summands[b.target].set))
            .collect();
        out.sort();
        out
    }

    /// Verifies `d ∘ d = 0` block by block.
    pub fn check_square_zero(&self) -> Result<()> {
        let f = self.field;
        for (k, s) in self.summands.iter().enumerate() {
            if s.hom_degree < 2 {
                continue;
            }
            let verts: Vec<usize> = s.set.iter().collect();
            for (a, &u) in verts.iter().enumerate() {
                for &v in &verts[a + 1..] {
                    let low = s.set.without(u).without(v);
                    let Some(t) = self.summand(s.hom_degree - 2, low) else {
                        continue;
                    };
                    let mut total = FieldMatrix::zeros(f, t.dim, s.dim);
                    for (first, second) in [(u, v), (v, u)] {
                        let Some(b1) = self.block(k, first) else {
                            continue;
                        };
                        let Some(b2) = self.block(b1.target, second) else {
                            continue;
                        };
                        total = total.add(&b2.matrix.mul(&b1.matrix));
                    }
                    if !total.is_zero() {
                        return Err(Error::Internal(format!(
                            "d∘d ≠ 0 from ({}, {}) to ({}, {})",
                            s.hom_degree,
                            s.set,
                            s.hom_degree - 2,
                            low
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Summands whose generators have degree `k` in the resolution of `I_Δ`
    /// (`#U - i + 1 = k`), with the blocks between them. Strand 0 is the lone
    /// summand `(0, ∅)` of `k[Δ]`.
    pub fn strand(&self, k: usize) -> StrandView {
        let members: Vec<usize> = (0..self.summands.len())
            .filter(|&s| self.summands[s].strand() == k)
            .collect();
        let blocks = self
            .blocks
            .iter()
            .filter(|b| members.contains(&b.source) && members.contains(&b.target))
            .cloned()
            .collect();
        StrandView {
            k,
            summands: members.iter().map(|&s| self.summands[s]).collect(),
            blocks,
        }
    }
}

/// One linear strand of [`LinearPartComplex`]; block indices refer to the
/// parent complex.
#[derive(Clone, Debug, Serialize)]
pub struct StrandView {
    pub k: usize,
    pub summands: Vec<Summand>,
    pub blocks: Vec<Block>,
}

/// Builds `F^lin` and checks `d ∘ d = 0`.
pub fn build_linear_part(complex: &SimplicialComplex, field: Field) -> Result<LinearPartComplex> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    LinearPartComplex::from_table(&CohomologyTable::new(complex, field))
}
