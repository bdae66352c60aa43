//! Brute-force multigraded minimal free resolution of `k[Δ]`, used as an
//! independent check on everything computed from cohomology.
//!
//! Generators live in squarefree degrees only, so a differential entry from a
//! generator of degree `U` to one of degree `W ⊆ U` is a scalar times the
//! monomial `x^{U∖W}`; we store just the scalars.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cohomology::CohomologyTable;
use crate::defect::{linearity_defect_from_table, DefectReport};
use crate::linalg::{Field, FieldMatrix};
use crate::linear_part::{koszul_slice_check, BettiTable, LinearPartComplex};
use crate::simplicial::{SimplicialComplex, VertexSet};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseModule {
    /// The resolution of `k[Δ]`, with `F_0 = S`.
    Quotient,
    /// The resolution of `I_Δ`, i.e. the quotient resolution shifted down by one.
    Ideal,
}

/// One free module `F_i` and its differential `d_i : F_i → F_{i-1}`.
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub degrees: Vec<VertexSet>,
    /// Scalars of `d_i`, rows indexed by the generators of `F_{i-1}`.
    pub differential: FieldMatrix,
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub field: Field,
    pub n: usize,
    pub base: BaseModule,
    pub steps: Vec<ResolutionStep>,
}

/// Kernel of `d_i` in degree `V`, over the generators of `F_i` of degree `⊆ V`.
struct DegreeKernel {
    columns: Vec<usize>,
    kernel: FieldMatrix,
}

fn generators_within(degrees: &[VertexSet], v: VertexSet) -> Vec<usize> {
    (0..degrees.len())
        .filter(|&g| degrees[g].is_subset(v))
        .collect()
}

/// Matrix of `d_i` in degree `V`. For `i = 0` this is the augmentation
/// `S → k[Δ]`, which in degree `V` is `[1]` if `V ∈ Δ` and zero otherwise.
fn degree_matrix(
    complex: &SimplicialComplex,
    steps: &[ResolutionStep],
    i: usize,
    v: VertexSet,
) -> (Vec<usize>, FieldMatrix) {
    let step = &steps[i];
    let cols = generators_within(&step.degrees, v);
    if i == 0 {
        let field = step.differential.field();
        let m = if complex.is_face(v) {
            FieldMatrix::identity(field, 1)
        } else {
            FieldMatrix::zeros(field, 0, 1)
        };
        return (cols, m);
    }
    let rows = generators_within(&steps[i - 1].degrees, v);
    let m = step.differential.submatrix(&rows, &cols);
    (cols, m)
}

/// Computes `F_{i+1}` from `F_0, ..., F_i`.
fn next_step(
    complex: &SimplicialComplex,
    steps: &[ResolutionStep],
    field: Field,
) -> Result<ResolutionStep> {
    let i = steps.len() - 1;
    let n = complex.n();
    let current = &steps[i];
    let kernels: Vec<DegreeKernel> = (0..1u32 << n)
        .into_par_iter()
        .map(|bits| {
            let (columns, m) = degree_matrix(complex, steps, i, VertexSet::from_bits(bits));
            DegreeKernel {
                columns,
                kernel: m.kernel_basis(),
            }
        })
        .collect();

    // New generators in degree V complement m·Z_V = Σ_{j ∈ V} x_j Z_{V∖j} inside Z_V.
    let found: Vec<Result<(VertexSet, Vec<Vec<u32>>)>> = (0..1u32 << n)
        .into_par_iter()
        .map(|bits| {
            let v = VertexSet::from_bits(bits);
            let here = &kernels[bits as usize];
            let rows = here.columns.len();
            let mut lifted: Vec<Vec<u32>> = Vec::new();
            for j in v.iter() {
                let below = &kernels[v.without(j).bits() as usize];
                for c in 0..below.kernel.cols() {
                    let col = below.kernel.column(c);
                    let mut padded = vec![0; rows];
                    for (k, &g) in below.columns.iter().enumerate() {
                        let pos = here
                            .columns
                            .binary_search(&g)
                            .expect("generator of a subdegree");
                        padded[pos] = col[k];
                    }
                    lifted.push(padded);
                }
            }
            let mz = FieldMatrix::from_columns(field, rows, &lifted);
            let joint = FieldMatrix::hstack(field, rows, &[&mz, &here.kernel]);
            let mut new = Vec::new();
            for p in joint.rref().pivots.into_iter().filter(|&p| p >= mz.cols()) {
                let local = here.kernel.column(p - mz.cols());
                let mut full = vec![0; current.degrees.len()];
                for (k, &g) in here.columns.iter().enumerate() {
                    if local[k] != 0 && current.degrees[g] == v {
                        return Err(Error::NonMinimal(format!(
                            "unit entry at step {} in degree {v}",
                            i + 1
                        )));
                    }
                    full[g] = local[k];
                }
                new.push(full);
            }
            Ok((v, new))
        })
        .collect();
    let mut by_degree = Vec::new();
    for f in found {
        let (v, cols) = f?;
        if !cols.is_empty() {
            by_degree.push((v, cols));
        }
    }
    by_degree.sort_by_key(|(v, _)| *v);
    let mut degrees = Vec::new();
    let mut columns = Vec::new();
    for (v, cols) in by_degree {
        for c in cols {
            degrees.push(v);
            columns.push(c);
        }
    }
    let step = ResolutionStep {
        degrees,
        differential: FieldMatrix::from_columns(field, current.degrees.len(), &columns),
    };

    // Exactness at F_i: im d_{i+1} = ker d_i in every squarefree degree.
    let exact = (0..1u32 << n).into_par_iter().all(|bits| {
        let v = VertexSet::from_bits(bits);
        let here = &kernels[bits as usize];
        let cols = generators_within(&step.degrees, v);
        step.differential.submatrix(&here.columns, &cols).rank() == here.kernel.cols()
    });
    if !exact {
        return Err(Error::Internal(format!(
            "resolution is not exact at step {i}"
        )));
    }
    Ok(step)
}

/// Minimal free resolution of `k[Δ]` over `S = k[x_1, ..., x_n]`.
pub fn minimal_free_resolution(
    complex: &SimplicialComplex,
    field: Field,
    max_step: usize,
) -> Result<FreeResolution> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    let mut steps = vec![ResolutionStep {
        degrees: vec![VertexSet::EMPTY],
        differential: FieldMatrix::zeros(field, 0, 1),
    }];
    loop {
        let next = next_step(complex, &steps, field)?;
        if next.degrees.is_empty() {
            break;
        }
        if steps.len() > max_step {
            return Err(Error::MaxStepExceeded(max_step));
        }
        steps.push(next);
    }
    Ok(FreeResolution {
        field,
        n: complex.n(),
        base: BaseModule::Quotient,
        steps,
    })
}

impl FreeResolution {
    pub fn ranks(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.degrees.len()).collect()
    }

    /// Generator counts per `(i, U)`, in the indexing of `k[Δ]`.
    pub fn betti_table(&self) -> BettiTable {
        let shift = usize::from(self.base == BaseModule::Ideal);
        let mut counts = BTreeMap::new();
        for (i, step) in self.steps.iter().enumerate() {
            for &u in &step.degrees {
                *counts.entry((i + shift, u)).or_insert(0) += 1;
            }
        }
        BettiTable::from_entries(counts)
    }

    /// The resolution of `I_Δ`: `F_i(I_Δ) = F_{i+1}(k[Δ])`.
    pub fn ideal_view(&self) -> FreeResolution {
        match self.base {
            BaseModule::Ideal => self.clone(),
            BaseModule::Quotient => {
                let mut steps: Vec<ResolutionStep> = self.steps[1..].to_vec();
                if let Some(first) = steps.first_mut() {
                    first.differential = FieldMatrix::zeros(self.field, 0, first.degrees.len());
                }
                FreeResolution {
                    field: self.field,
                    n: self.n,
                    base: BaseModule::Ideal,
                    steps,
                }
            }
        }
    }

    fn check_quotient(&self) -> Result<()> {
        if self.base != BaseModule::Quotient {
            return Err(Error::Internal("expected the resolution of k[Δ]".into()));
        }
        Ok(())
    }

    /// Scalars of `d_i` restricted to linear entries (`#(U∖W) = 1`).
    fn linear_matrix(&self, i: usize) -> FieldMatrix {
        let step = &self.steps[i];
        let mut m = step.differential.clone();
        if i == 0 {
            return m;
        }
        let prev = &self.steps[i - 1].degrees;
        for (c, u) in step.degrees.iter().enumerate() {
            for (r, w) in prev.iter().enumerate() {
                if u.difference(*w).len() != 1 {
                    m[(r, c)] = 0;
                }
            }
        }
        m
    }
}

impl Serialize for FreeResolution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct EntryOut {
            row: usize,
            col: usize,
            coeff: i64,
            mono: Vec<u32>,
        }
        #[derive(Serialize)]
        struct StepOut {
            i: usize,
            degrees: Vec<VertexSet>,
            entries: Vec<EntryOut>,
        }
        #[derive(Serialize)]
        struct Out {
            base: BaseModule,
            p: Field,
            n: usize,
            ranks: Vec<usize>,
            steps: Vec<StepOut>,
        }
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, step)| {
                let m = &step.differential;
                let mut entries = Vec::new();
                for col in 0..m.cols() {
                    for row in 0..m.rows() {
                        if m[(row, col)] == 0 {
                            continue;
                        }
                        let mono = step.degrees[col].difference(self.steps[i - 1].degrees[row]);
                        entries.push(EntryOut {
                            row,
                            col,
                            coeff: self.field.signed(m[(row, col)]),
                            mono: (1..=self.n).map(|v| u32::from(mono.contains(v))).collect(),
                        });
                    }
                }
                StepOut {
                    i,
                    degrees: step.degrees.clone(),
                    entries,
                }
            })
            .collect();
        Out {
            base: self.base,
            p: self.field,
            n: self.n,
            ranks: self.ranks(),
            steps,
        }
        .serialize(serializer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuPosition {
    /// Homological degree in the resolution of `k[Δ]`.
    pub i: usize,
    #[serde(rename = "U")]
    pub set: VertexSet,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuReport {
    pub positions: Vec<NuPosition>,
    pub ld_quotient: usize,
    pub ld_ideal: usize,
}

impl NuReport {
    pub fn kernel_dim(&self, i: usize, u: VertexSet) -> usize {
        self.positions
            .iter()
            .find(|p| p.i == i && p.set == u)
            .map_or(0, |p| p.kernel_dim)
    }
}

/// For each `(i, U)` with `i >= 1`, the kernel dimension of the linear
/// entries of the columns of `d_i` at generators of degree `U`: a nonzero
/// kernel is a generator mapping into `m² F_{i-1}` modulo `m F_i`.
pub fn nu_report(resolution: &FreeResolution) -> Result<NuReport> {
    resolution.check_quotient()?;
    let mut positions = Vec::new();
    for i in 1..resolution.steps.len() {
        let step = &resolution.steps[i];
        let prev = &resolution.steps[i - 1].degrees;
        let linear = resolution.linear_matrix(i);
        let mut sets: Vec<VertexSet> = step.degrees.clone();
        sets.dedup();
        for u in sets {
            let cols: Vec<usize> = (0..step.degrees.len())
                .filter(|&c| step.degrees[c] == u)
                .collect();
            let rows: Vec<usize> = (0..prev.len())
                .filter(|&r| prev[r].len() + 1 == u.len())
                .collect();
            let kernel_dim = cols.len() - linear.submatrix(&rows, &cols).rank();
            positions.push(NuPosition {
                i,
                set: u,
                kernel_dim,
            });
        }
    }
    let firing = positions.iter().filter(|p| p.kernel_dim > 0).map(|p| p.i);
    let ld_quotient = firing.clone().max().unwrap_or(0);
    let ld_ideal = firing.filter(|&i| i >= 2).max().map_or(0, |i| i - 1);
    Ok(NuReport {
        positions,
        ld_quotient,
        ld_ideal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleBlock {
    pub i: usize,
    pub source: VertexSet,
    pub target: VertexSet,
    pub u: usize,
    pub rank: usize,
}

/// The linear part of a resolution, summarized by block ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleLinearPart {
    pub betti: BettiTable,
    pub blocks: Vec<OracleBlock>,
}

/// Deletes all nonlinear entries of the differential, checks that the result
/// is still a complex and reports the rank of every block `(i, U) → (i-1, U∖u)`.
pub fn linear_part_of_resolution(resolution: &FreeResolution) -> Result<OracleLinearPart> {
    resolution.check_quotient()?;
    let linear: Vec<FieldMatrix> = (0..resolution.steps.len())
        .map(|i| resolution.linear_matrix(i))
        .collect();
    for i in 2..linear.len() {
        if !linear[i - 1].mul(&linear[i]).is_zero() {
            return Err(Error::Internal(format!(
                "linear part composite nonzero at step {i}"
            )));
        }
    }
    let mut blocks = Vec::new();
    for (i, lin) in linear.iter().enumerate().skip(1) {
        let step = &resolution.steps[i];
        let prev = &resolution.steps[i - 1].degrees;
        let mut sets = step.degrees.clone();
        sets.dedup();
        for source in sets {
            let cols: Vec<usize> = (0..step.degrees.len())
                .filter(|&c| step.degrees[c] == source)
                .collect();
            for u in source.iter() {
                let target = source.without(u);
                let rows: Vec<usize> = (0..prev.len()).filter(|&r| prev[r] == target).collect();
                if rows.is_empty() {
                    continue;
                }
                let rank = lin.submatrix(&rows, &cols).rank();
                blocks.push(OracleBlock {
                    i,
                    source,
                    target,
                    u,
                    rank,
                });
            }
        }
    }
    Ok(OracleLinearPart {
        betti: resolution.betti_table(),
        blocks,
    })
}

/// Multiset of signed coefficients of the ideal's resolution restricted to
/// generators of degree `#U - i + 1 <= k`, in the basis found by the oracle.
pub fn strand_coefficient_probe(
    resolution: &FreeResolution,
    k: usize,
) -> Result<BTreeMap<i64, usize>> {
    resolution.check_quotient()?;
    let mut out = BTreeMap::new();
    for i in 2..resolution.steps.len() {
        let step = &resolution.steps[i];
        let m = &step.differential;
        for c in (0..step.degrees.len()).filter(|&c| step.degrees[c].len() + 1 - i <= k) {
            for r in 0..m.rows() {
                if m[(r, c)] != 0 {
                    *out.entry(resolution.field.signed(m[(r, c)])).or_insert(0) += 1;
                }
            }
        }
    }
    Ok(out)
}

/// Result of comparing the oracle with the cohomological constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub betti_match: bool,
    pub nu_match: bool,
    pub ld_match: bool,
    pub block_ranks_match: bool,
    pub koszul_slices: bool,
    /// `ld(k[Δ]) = ld(I_Δ) + 1` whenever `I_Δ` has a generator of degree >= 2.
    pub index_shift: bool,
    pub mismatches: Vec<String>,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Everything computed for one complex: the oracle side and the cohomology side.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub resolution: FreeResolution,
    pub nu: NuReport,
    pub defect: DefectReport,
    pub check: CrossCheck,
}

/// Builds the oracle resolution and compares Betti numbers, ν-kernels, `ld`
/// and linear-part block ranks with the cohomological constructions.
pub fn compare_with_oracle(
    complex: &SimplicialComplex,
    field: Field,
    max_step: usize,
) -> Result<Comparison> {
    let resolution = minimal_free_resolution(complex, field, max_step)?;
    let nu = nu_report(&resolution)?;
    let oracle_lp = linear_part_of_resolution(&resolution)?;
    let table = CohomologyTable::new(complex, field);
    table.fill();
    let lp = LinearPartComplex::from_table(&table)?;
    let defect = linearity_defect_from_table(&table)?;
    let mut mismatches = Vec::new();

    let betti = BettiTable::from_table(&table);
    let betti_match = betti == oracle_lp.betti;
    if !betti_match {
        mismatches.push("betti table".to_string());
    }

    let mut nu_match = true;
    for pos in &defect.positions {
        let i = pos.i + 1;
        if nu.kernel_dim(i, pos.set) != pos.kernel_dim {
            nu_match = false;
            mismatches.push(format!("nu kernel at ({i}, {})", pos.set));
        }
    }
    for pos in &nu.positions {
        let hit = defect
            .positions
            .iter()
            .find(|d| d.i + 1 == pos.i && d.set == pos.set);
        if hit.map_or(0, |d| d.kernel_dim) != pos.kernel_dim {
            nu_match = false;
            mismatches.push(format!("restriction kernel at ({}, {})", pos.i, pos.set));
        }
    }

    let ld_match = nu.ld_ideal == defect.ld_ideal;
    if !ld_match {
        mismatches.push(format!(
            "ld: oracle {} vs cohomology {}",
            nu.ld_ideal, defect.ld_ideal
        ));
    }

    let mut block_ranks_match = true;
    for b in &oracle_lp.blocks {
        let ours = lp
            .summand_index(b.i, b.source)
            .and_then(|s| lp.block(s, b.u))
            .map_or(0, |blk| blk.matrix.rank());
        if ours != b.rank {
            block_ranks_match = false;
            mismatches.push(format!("block rank ({}, {}) → {}", b.i, b.source, b.target));
        }
    }
    for blk in &lp.blocks {
        let s = lp.summands[blk.source];
        let theirs = oracle_lp
            .blocks
            .iter()
            .find(|b| b.i == s.hom_degree && b.source == s.set && b.u == blk.vertex)
            .map_or(0, |b| b.rank);
        if theirs != blk.matrix.rank() {
            block_ranks_match = false;
            mismatches.push(format!(
                "oracle block rank ({}, {}) along {}",
                s.hom_degree, s.set, blk.vertex
            ));
        }
    }

    let koszul_slices = VertexSet::full(complex.n())
        .subsets()
        .all(|u| koszul_slice_check(complex, u, field));
    if !koszul_slices {
        mismatches.push("koszul slice".to_string());
    }

    let nonlinear_generator = resolution
        .steps
        .get(1)
        .is_some_and(|s| s.degrees.iter().any(|u| u.len() >= 2));
    let index_shift = !nonlinear_generator || nu.ld_quotient == nu.ld_ideal + 1;
    if !index_shift {
        mismatches.push(format!(
            "index shift: ld(k[Δ]) = {}, ld(I) = {}",
            nu.ld_quotient, nu.ld_ideal
        ));
    }

    let check = CrossCheck {
        betti_match,
        nu_match,
        ld_match,
        block_ranks_match,
        koszul_slices,
        index_shift,
        mismatches,
    };
    Ok(Comparison {
        resolution,
        nu,
        defect,
        check,
    })
}
