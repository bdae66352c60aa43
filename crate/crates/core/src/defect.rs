//! Linearity defect of `I_Δ` read off from restriction kernels, the four
//! equivalent characterizations of componentwise linearity, and Fröberg's
//! formula for graphs.
//!
//! `ld(I_Δ)` is the largest `i` for which some `U` carries a nonzero class
//! `ω ∈ H̃^{#U-i-2}(Δ_U)` with `ω|_{U∖u} = 0` for every `u ∈ U`.

use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{
    complete_cycle_decomposition, complete_cycle_matrix, cycle_space, homology, Chain,
    CohomologyTable,
};
use crate::linalg::{Field, FieldMatrix};
use crate::simplicial::{
    check_graph, ideal_from_complex, max_induced_chordless_cycle, SimplicialComplex, VertexSet,
};
use crate::{Error, Result};

/// A face with a signed coefficient, used to print cochains and chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub face: VertexSet,
    pub coeff: i64,
}

fn terms(field: Field, faces: &[VertexSet], coeffs: &[u32]) -> Vec<Term> {
    faces
        .iter()
        .zip(coeffs)
        .filter(|(_, &c)| c != 0)
        .map(|(&face, &c)| Term {
            face,
            coeff: field.signed(c),
        })
        .collect()
}

/// Kernel of `ω ↦ (ω|_{U∖u})_{u ∈ U}` on `H̃^j(Δ_U)`, as columns in the
/// `reps` basis of `H̃^j(Δ_U)`.
pub fn restriction_kernel(
    table: &CohomologyTable<'_>,
    u_set: VertexSet,
    j: isize,
) -> Result<FieldMatrix> {
    let field = table.field();
    let dim = table.dim(u_set, j);
    if dim == 0 {
        return Ok(FieldMatrix::zeros(field, 0, 0));
    }
    let blocks = u_set
        .iter()
        .map(|u| table.restriction(u_set, u, j))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&FieldMatrix> = blocks.iter().collect();
    Ok(FieldMatrix::vstack(field, dim, &refs).kernel_basis())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Position {
    /// Homological degree in the resolution of `I_Δ`.
    pub i: usize,
    #[serde(rename = "U")]
    pub set: VertexSet,
    pub j: isize,
    pub kernel_dim: usize,
}

/// A class all of whose single-vertex restrictions vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(rename = "U")]
    pub set: VertexSet,
    pub j: isize,
    /// Coordinates in the cohomology basis.
    pub class: Vec<i64>,
    pub cocycle: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub ld_ideal: usize,
    pub zero_ideal: bool,
    pub generated_by_variables: bool,
    pub witness: Option<Witness>,
    pub positions: Vec<Position>,
}

struct KernelAt {
    position: Position,
    kernel: FieldMatrix,
}

fn kernels(table: &CohomologyTable<'_>) -> Result<Vec<KernelAt>> {
    let sets: Vec<VertexSet> = VertexSet::full(table.n()).subsets().collect();
    let per_set: Vec<Result<Vec<KernelAt>>> = sets
        .par_iter()
        .map(|&u| {
            let mut out = Vec::new();
            for j in -1..=(u.len() as isize - 2) {
                if table.dim(u, j) == 0 {
                    continue;
                }
                let kernel = restriction_kernel(table, u, j)?;
                let i = (u.len() as isize - j - 2) as usize;
                out.push(KernelAt {
                    position: Position {
                        i,
                        set: u,
                        j,
                        kernel_dim: kernel.cols(),
                    },
                    kernel,
                });
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for k in per_set {
        all.extend(k?);
    }
    all.sort_by_key(|k| (k.position.i, k.position.set, k.position.j));
    Ok(all)
}

fn witness_of(table: &CohomologyTable<'_>, k: &KernelAt) -> Witness {
    let field = table.field();
    let class = k.kernel.column(0);
    let basis = table
        .basis(k.position.set, k.position.j)
        .expect("nonzero cohomology has a basis");
    Witness {
        set: k.position.set,
        j: k.position.j,
        class: class.iter().map(|&c| field.signed(c)).collect(),
        cocycle: terms(field, &basis.faces, &basis.cocycle(&class)),
    }
}

pub fn linearity_defect_from_table(table: &CohomologyTable<'_>) -> Result<DefectReport> {
    let complex = table.complex();
    let ideal = ideal_from_complex(complex)?;
    let all = kernels(table)?;
    let firing = all.iter().filter(|k| k.position.kernel_dim > 0);
    let ld_ideal = firing.clone().map(|k| k.position.i).max().unwrap_or(0);
    let witness = if ld_ideal > 0 {
        firing
            .clone()
            .find(|k| k.position.i == ld_ideal)
            .map(|k| witness_of(table, k))
    } else {
        None
    };
    Ok(DefectReport {
        ld_ideal,
        zero_ideal: ideal.is_zero(),
        generated_by_variables: !ideal.is_zero()
            && ideal
                .generators()
                .iter()
                .all(|g| g.iter().sum::<u32>() == 1),
        witness,
        positions: all.into_iter().map(|k| k.position).collect(),
    })
}

/// Linearity defect of `I_Δ`. The zero ideal is reported with `ld = 0`.
pub fn linearity_defect_ideal(complex: &SimplicialComplex, field: Field) -> Result<DefectReport> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    linearity_defect_from_table(&CohomologyTable::new(complex, field))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(rename = "U")]
    pub set: VertexSet,
    /// Cohomological degree for conditions (1) and (2), cycle dimension for (3) and (4).
    pub degree: isize,
    pub data: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl Condition {
    fn from_counterexample(counterexample: Option<Counterexample>) -> Self {
        Condition {
            holds: counterexample.is_none(),
            counterexample,
        }
    }
}

/// The four characterizations of componentwise linearity:
/// 1. `ld(I_Δ) = 0`;
/// 2. a nonzero class `ω ∈ H̃^j(Δ_U)` with `#U > j + 2` restricts nontrivially to some `U∖u`;
/// 3. every homology class of every `Δ_U` is a sum of complete cycles in `Δ_U`;
/// 4. every cycle is a sum of complete cycles on its own vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CwlReport {
    pub componentwise_linear: bool,
    pub conditions: [Condition; 4],
}

impl CwlReport {
    pub fn verdicts(&self) -> [bool; 4] {
        self.conditions.each_ref().map(|c| c.holds)
    }

    pub fn consistent(&self) -> bool {
        self.verdicts()
            .iter()
            .all(|&v| v == self.componentwise_linear)
    }
}

/// Smallest `U` (in the canonical order) for which `check` produces a counterexample.
fn first_failure<F>(n: usize, check: F) -> Result<Option<Counterexample>>
where
    F: Fn(VertexSet) -> Result<Option<Counterexample>> + Sync,
{
    let sets: Vec<VertexSet> = VertexSet::full(n).subsets().collect();
    let found: Vec<Result<Option<Counterexample>>> = sets.par_iter().map(|&u| check(u)).collect();
    for f in found {
        if let Some(c) = f? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn condition_two(table: &CohomologyTable<'_>) -> Result<Option<Counterexample>> {
    let field = table.field();
    first_failure(table.n(), |u| {
        for j in -1..(u.len() as isize - 2) {
            if table.dim(u, j) == 0 {
                continue;
            }
            let kernel = restriction_kernel(table, u, j)?;
            if kernel.cols() > 0 {
                let basis = table.basis(u, j).expect("nonzero cohomology has a basis");
                let cocycle = basis.cocycle(&kernel.column(0));
                return Ok(Some(Counterexample {
                    set: u,
                    degree: j,
                    data: terms(field, &basis.faces, &cocycle),
                }));
            }
        }
        Ok(None)
    })
}

fn condition_three(complex: &SimplicialComplex, field: Field) -> Result<Option<Counterexample>> {
    first_failure(complex.n(), |u| {
        for d in 0..u.len() as isize {
            let h = homology(complex, u, d, field);
            if h.dim() == 0 {
                continue;
            }
            let (faces, _, complete) = complete_cycle_matrix(complex, u, d, field);
            for c in 0..h.dim() {
                let z = h.reps.column(c);
                if complete.solve_in_span(&z)?.is_none() {
                    return Ok(Some(Counterexample {
                        set: u,
                        degree: d,
                        data: terms(field, &faces, &z),
                    }));
                }
            }
        }
        Ok(None)
    })
}

fn condition_four(complex: &SimplicialComplex, field: Field) -> Result<Option<Counterexample>> {
    first_failure(complex.n(), |u| {
        for d in 0..u.len() as isize {
            let (faces, cycles) = cycle_space(complex, u, d, field);
            for c in 0..cycles.cols() {
                let z = cycles.column(c);
                let chain = Chain::from_vector(field, d, &faces, &z);
                if complete_cycle_decomposition(&chain, complex)?.is_none() {
                    return Ok(Some(Counterexample {
                        set: u,
                        degree: d,
                        data: terms(field, &faces, &z),
                    }));
                }
            }
        }
        Ok(None)
    })
}

/// Evaluates all four conditions without asserting that they agree.
pub fn componentwise_linearity_conditions(
    complex: &SimplicialComplex,
    field: Field,
) -> Result<CwlReport> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    let table = CohomologyTable::new(complex, field);
    let defect = linearity_defect_from_table(&table)?;
    let one = defect.witness.map(|w| Counterexample {
        set: w.set,
        degree: w.j,
        data: w.cocycle,
    });
    let conditions = [
        Condition::from_counterexample(one),
        Condition::from_counterexample(condition_two(&table)?),
        Condition::from_counterexample(condition_three(complex, field)?),
        Condition::from_counterexample(condition_four(complex, field)?),
    ];
    Ok(CwlReport {
        componentwise_linear: conditions[0].holds,
        conditions,
    })
}

/// Componentwise linearity of `I_Δ`; fails with [`Error::Internal`] if the
/// four characterizations disagree.
pub fn is_componentwise_linear(complex: &SimplicialComplex, field: Field) -> Result<CwlReport> {
    let report = componentwise_linearity_conditions(complex, field)?;
    if !report.consistent() {
        return Err(Error::Internal(format!(
            "componentwise-linearity conditions disagree: {:?}",
            report.verdicts()
        )));
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrobergReport {
    /// Longest induced chordless cycle minus 3, or 0 without such cycles.
    pub value: usize,
    pub ld_ideal: usize,
    pub agrees: bool,
}

/// Fröberg's formula for a graph on all of `[n]`, compared with [`linearity_defect_ideal`].
pub fn froberg_lindef(complex: &SimplicialComplex, field: Field) -> Result<FrobergReport> {
    check_graph(complex)?;
    let value = max_induced_chordless_cycle(complex)?.map_or(0, |len| len - 3);
    let ld_ideal = linearity_defect_ideal(complex, field)?.ld_ideal;
    Ok(FrobergReport {
        value,
        ld_ideal,
        agrees: value == ld_ideal,
    })
}
