//! A basis of the 2-linear strand in which every differential coefficient
//! lies in `{-1, 0, 1}`.
//!
//! For `U` with `H̃^0(Δ_U) ≠ 0`, order the connected components of `Δ_U` by
//! their smallest vertex; the first one is distinguished and the indicator
//! functions `e_{U,i}` of the others form a basis of `H̃^0(Δ_U)`.

use serde::Serialize;

use super::LinearPartComplex;
use crate::cohomology::CohomologyTable;
use crate::linalg::{Field, FieldMatrix};
use crate::simplicial::{SimplicialComplex, VertexSet};
use crate::{Error, Result};

/// Connected components of `Δ_U`; `components[0]` is the distinguished one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentBasis {
    #[serde(rename = "U")]
    pub set: VertexSet,
    pub components: Vec<VertexSet>,
}

impl ComponentBasis {
    pub fn compute(complex: &SimplicialComplex, u: VertexSet) -> Self {
        let faces = complex.faces_within(u);
        let vertices: Vec<VertexSet> = faces.get(1).cloned().unwrap_or_default();
        let mut components: Vec<VertexSet> = vertices.clone();
        for edge in faces.get(2).map_or(&[][..], Vec::as_slice) {
            let (a, b) = (
                edge.min_vertex().unwrap(),
                edge.without(edge.min_vertex().unwrap())
                    .min_vertex()
                    .unwrap(),
            );
            let ia = components.iter().position(|c| c.contains(a)).unwrap();
            let ib = components.iter().position(|c| c.contains(b)).unwrap();
            if ia != ib {
                let merged = components[ia].union(components[ib]);
                components[ia.min(ib)] = merged;
                components.remove(ia.max(ib));
            }
        }
        components.sort_by_key(|c| c.min_vertex());
        ComponentBasis { set: u, components }
    }

    /// Number of non-distinguished components, i.e. `dim H̃^0(Δ_U)`.
    pub fn rank(&self) -> usize {
        self.components.len().saturating_sub(1)
    }

    /// Cocycle of `e_{U,k}` (k >= 1) over the vertices of `Δ_U`.
    fn indicator(&self, k: usize, vertex_faces: &[VertexSet], field: Field) -> Vec<u32> {
        let c = self.components[k];
        vertex_faces
            .iter()
            .map(|v| field.from_i64(i64::from(v.is_subset(c))))
            .collect()
    }

    /// Coordinates of a function on the vertices of `Δ_U`, constant on
    /// components, in the basis `e_{U,1}, ...`: its value on each component
    /// minus its value on the distinguished one.
    fn coordinates(&self, value: impl Fn(VertexSet) -> i64) -> Vec<i64> {
        let base = value(self.components[0]);
        self.components[1..]
            .iter()
            .map(|&c| value(c) - base)
            .collect()
    }
}

/// One block of the 2-linear strand in the indicator bases.
#[derive(Clone, Debug, Serialize)]
pub struct StrandMap {
    pub source: VertexSet,
    pub target: VertexSet,
    #[serde(rename = "u")]
    pub vertex: usize,
    /// `dim target × dim source`, signed integers.
    pub coefficients: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoLinearReport {
    pub bases: Vec<ComponentBasis>,
    pub maps: Vec<StrandMap>,
    /// Every coefficient lies in `{-1, 0, 1}`.
    pub unit_coefficients: bool,
    /// Every change of basis from indicators to cohomology representatives is invertible.
    pub invertible: bool,
}

/// Change of basis `P_U` from indicator classes to the `reps` basis.
fn change_of_basis(table: &CohomologyTable<'_>, basis: &ComponentBasis) -> Result<FieldMatrix> {
    let field = table.field();
    let coh = table
        .basis(basis.set, 0)
        .ok_or_else(|| Error::Internal(format!("no H̃^0 basis for {}", basis.set)))?;
    let columns = (1..basis.components.len())
        .map(|k| {
            coh.class_coordinates(&basis.indicator(k, &coh.faces, field))
                .ok_or_else(|| {
                    Error::Internal(format!("indicator on {} is not a cocycle", basis.set))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldMatrix::from_columns(field, coh.dim(), &columns))
}

pub(crate) fn two_linear_from_parts(
    table: &CohomologyTable<'_>,
    lp: &LinearPartComplex,
) -> Result<TwoLinearReport> {
    let field = table.field();
    let complex = table.complex();
    let strand = lp.strand(2);
    let mut bases = Vec::new();
    let mut changes = Vec::new();
    let mut invertible = true;
    for s in strand.summands.iter().filter(|s| s.coh_degree == 0) {
        let basis = ComponentBasis::compute(complex, s.set);
        if basis.rank() != s.dim {
            return Err(Error::Internal(format!(
                "{} has {} components but dim H̃^0 = {}",
                s.set,
                basis.components.len(),
                s.dim
            )));
        }
        let p = change_of_basis(table, &basis)?;
        invertible &= p.rows() == p.cols() && p.rank() == p.cols();
        bases.push(basis);
        changes.push(p);
    }
    let lookup = |u: VertexSet| bases.iter().position(|b| b.set == u);
    let mut maps = Vec::new();
    let mut unit_coefficients = true;
    for block in &strand.blocks {
        let src_set = lp.summands[block.source].set;
        let tgt_set = lp.summands[block.target].set;
        let (Some(si), Some(ti)) = (lookup(src_set), lookup(tgt_set)) else {
            return Err(Error::Internal(format!(
                "strand block {src_set} → {tgt_set} outside H̃^0"
            )));
        };
        let (src, tgt) = (&bases[si], &bases[ti]);
        // Restricting e_{U,k} to U∖u gives the indicator of C_{U,k} ∖ u.
        let columns: Vec<Vec<i64>> = src.components[1..]
            .iter()
            .map(|&c| {
                tgt.coordinates(|d| i64::from(d.is_subset(c)))
                    .into_iter()
                    .map(|x| x * block.sign)
                    .collect()
            })
            .collect();
        let coefficients: Vec<Vec<i64>> = (0..tgt.rank())
            .map(|r| columns.iter().map(|col| col[r]).collect())
            .collect();
        unit_coefficients &= coefficients.iter().flatten().all(|x| x.abs() <= 1);
        let c = FieldMatrix::from_rows(field, &coefficients);
        let c = if coefficients.is_empty() {
            FieldMatrix::zeros(field, 0, src.rank())
        } else {
            c
        };
        if block.matrix.mul(&changes[si]) != changes[ti].mul(&c) {
            return Err(Error::Internal(format!(
                "indicator coefficients disagree with the block {src_set} → {tgt_set}"
            )));
        }
        maps.push(StrandMap {
            source: src_set,
            target: tgt_set,
            vertex: block.vertex,
            coefficients,
        });
    }
    if !unit_coefficients {
        return Err(Error::Internal(
            "2-linear strand coefficient outside {-1, 0, 1}".into(),
        ));
    }
    if !invertible {
        return Err(Error::Internal(
            "indicator change of basis is singular".into(),
        ));
    }
    Ok(TwoLinearReport {
        bases,
        maps,
        unit_coefficients,
        invertible,
    })
}

/// The 2-linear strand of `k[Δ]` in indicator bases, with all coefficients
/// checked to be in `{-1, 0, 1}` and checked over the field against the
/// blocks of the linear part.
pub fn two_linear_strand_basis(
    complex: &SimplicialComplex,
    field: Field,
) -> Result<TwoLinearReport> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    let table = CohomologyTable::new(complex, field);
    let lp = LinearPartComplex::from_table(&table)?;
    two_linear_from_parts(&table, &lp)
}
