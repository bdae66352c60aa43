//! Reduced simplicial (co)homology of induced subcomplexes over `GF(p)`,
//! restriction maps on cohomology and complete-cycle decompositions.
//!
//! Cochains of `Δ_U` in degree `j` are vectors indexed by the `j`-faces of
//! `Δ_U` in canonical order; degree `-1` is spanned by the empty face.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{Field, FieldMatrix};
use crate::simplicial::{sign, SimplicialComplex, VertexSet};
use crate::{Error, Result};

/// Matrix of the coboundary `C^j → C^{j+1}` between two face levels:
/// `∂(F*) = Σ_{i ∉ F} (-1)^α(i,F) (F ∪ i)*`, with absent faces dropped.
/// Rows are indexed by `upper`, columns by `lower`.
pub(crate) fn coboundary(field: Field, lower: &[VertexSet], upper: &[VertexSet]) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(field, upper.len(), lower.len());
    let cone_vertices = upper.iter().fold(VertexSet::EMPTY, |acc, g| acc.union(*g));
    for (col, f) in lower.iter().enumerate() {
        for v in cone_vertices.difference(*f).iter() {
            if let Ok(row) = upper.binary_search(&f.with(v)) {
                m[(row, col)] = field.from_i64(sign(v, *f));
            }
        }
    }
    m
}

pub(crate) fn level(faces: &[Vec<VertexSet>], dim: isize) -> &[VertexSet] {
    if dim < -1 {
        return &[];
    }
    faces.get((dim + 1) as usize).map_or(&[], Vec::as_slice)
}

/// The cochain differential `C̃^j(Δ) → C̃^{j+1}(Δ)` of a whole complex.
pub fn cochain_differential(complex: &SimplicialComplex, j: isize, field: Field) -> FieldMatrix {
    let faces = complex.faces_within(VertexSet::full(complex.n()));
    coboundary(field, level(&faces, j), level(&faces, j + 1))
}

/// A basis of `H̃^j(Δ_U)`: cocycle representatives plus a basis of the
/// coboundaries, which together let us read off class coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyBasis {
    pub set: VertexSet,
    pub degree: isize,
    /// `j`-faces of `Δ_U`, indexing the rows of `reps` and `cob_image`.
    pub faces: Vec<VertexSet>,
    pub reps: FieldMatrix,
    pub cob_image: FieldMatrix,
}

impl CohomologyBasis {
    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn field(&self) -> Field {
        self.reps.field()
    }

    /// Coordinates of the class of `cocycle` in the `reps` basis, or `None`
    /// if `cocycle` is not a cocycle of `Δ_U`.
    pub fn class_coordinates(&self, cocycle: &[u32]) -> Option<Vec<u32>> {
        let f = self.field();
        let joint = FieldMatrix::hstack(f, self.faces.len(), &[&self.reps, &self.cob_image]);
        let mut coords = joint.solve_in_span(cocycle).ok()??;
        coords.truncate(self.dim());
        Some(coords)
    }

    /// Representative cocycle of the class with the given coordinates.
    pub fn cocycle(&self, class: &[u32]) -> Vec<u32> {
        self.reps.apply(class)
    }
}

/// A basis of `H̃_i(Δ_U)`: cycle representatives plus a basis of boundaries.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyBasis {
    pub set: VertexSet,
    pub degree: isize,
    pub faces: Vec<VertexSet>,
    pub reps: FieldMatrix,
    pub boundary_image: FieldMatrix,
}

impl HomologyBasis {
    pub fn dim(&self) -> usize {
        self.reps.cols()
    }
}

/// Columns of `cycles` extending `boundaries` to a basis of the cycle space.
fn complement(
    field: Field,
    rows: usize,
    boundaries: &FieldMatrix,
    cycles: &FieldMatrix,
) -> FieldMatrix {
    let joint = FieldMatrix::hstack(field, rows, &[boundaries, cycles]);
    let picked: Vec<usize> = joint
        .independent_columns()
        .into_iter()
        .filter(|&c| c >= boundaries.cols())
        .map(|c| c - boundaries.cols())
        .collect();
    cycles.select_columns(&picked)
}

/// All cohomology of one induced subcomplex `Δ_U`.
#[derive(Clone, Debug)]
pub struct Slice {
    pub set: VertexSet,
    /// Faces of `Δ_U` grouped by dimension (entry `d + 1` holds the `d`-faces).
    pub faces: Vec<Vec<VertexSet>>,
    /// Entry `j + 1` is the basis of `H̃^j(Δ_U)`.
    pub cohomology: Vec<CohomologyBasis>,
}

impl Slice {
    pub fn compute(complex: &SimplicialComplex, u: VertexSet, field: Field) -> Slice {
        let faces = if complex.is_void() {
            Vec::new()
        } else {
            complex.faces_within(u)
        };
        let top = faces.len() as isize - 2;
        let deltas: Vec<FieldMatrix> = (-1..=top)
            .map(|j| coboundary(field, level(&faces, j), level(&faces, j + 1)))
            .collect();
        let mut cohomology = Vec::new();
        for j in -1..=top {
            let cur = level(&faces, j);
            let cocycles = deltas[(j + 1) as usize].kernel_basis();
            let cob_image = if j >= 0 {
                deltas[j as usize].column_space_basis()
            } else {
                FieldMatrix::zeros(field, cur.len(), 0)
            };
            let reps = complement(field, cur.len(), &cob_image, &cocycles);
            cohomology.push(CohomologyBasis {
                set: u,
                degree: j,
                faces: cur.to_vec(),
                reps,
                cob_image,
            });
        }
        Slice {
            set: u,
            faces,
            cohomology,
        }
    }

    pub fn basis(&self, j: isize) -> Option<&CohomologyBasis> {
        if j < -1 {
            return None;
        }
        self.cohomology.get((j + 1) as usize)
    }

    pub fn dim(&self, j: isize) -> usize {
        self.basis(j).map_or(0, CohomologyBasis::dim)
    }
}

/// The basis of `H̃^j(Δ_U)`. Degrees outside the complex give a zero basis.
pub fn cohomology(
    complex: &SimplicialComplex,
    u: VertexSet,
    j: isize,
    field: Field,
) -> CohomologyBasis {
    let slice = Slice::compute(complex, u, field);
    match slice.basis(j) {
        Some(b) => b.clone(),
        None => CohomologyBasis {
            set: u,
            degree: j,
            faces: Vec::new(),
            reps: FieldMatrix::zeros(field, 0, 0),
            cob_image: FieldMatrix::zeros(field, 0, 0),
        },
    }
}

/// Matrix of the restriction `H̃^j(Δ_U) → H̃^j(Δ_{U'})` for `U' ⊆ U`, in the
/// `reps` bases of `source` and `target`.
pub fn restriction_matrix(
    source: &CohomologyBasis,
    target: &CohomologyBasis,
) -> Result<FieldMatrix> {
    let f = source.field();
    let positions: Vec<usize> = target
        .faces
        .iter()
        .map(|g| {
            source.faces.binary_search(g).map_err(|_| {
                Error::Internal(format!("face {g} of the target is missing from the source"))
            })
        })
        .collect::<Result<_>>()?;
    let mut columns = Vec::with_capacity(source.dim());
    for c in 0..source.dim() {
        let rep = source.reps.column(c);
        let restricted: Vec<u32> = positions.iter().map(|&p| rep[p]).collect();
        let coords = target.class_coordinates(&restricted).ok_or_else(|| {
            Error::Internal(format!(
                "restriction of a cocycle on {} is not a cocycle on {}",
                source.set, target.set
            ))
        })?;
        columns.push(coords);
    }
    Ok(FieldMatrix::from_columns(f, target.dim(), &columns))
}

/// Restriction `H̃^j(Δ_U) → H̃^j(Δ_{U∖u})` as a `dim target × dim source` matrix.
pub fn restriction_on_cohomology(
    complex: &SimplicialComplex,
    u_set: VertexSet,
    u: usize,
    j: isize,
    field: Field,
) -> Result<FieldMatrix> {
    if !u_set.contains(u) {
        return Err(Error::VertexOutOfRange {
            vertex: u,
            n: complex.n(),
        });
    }
    let source = cohomology(complex, u_set, j, field);
    let target = cohomology(complex, u_set.without(u), j, field);
    restriction_matrix(&source, &target)
}

/// The basis of `H̃_i(Δ_U)`.
pub fn homology(
    complex: &SimplicialComplex,
    u: VertexSet,
    i: isize,
    field: Field,
) -> HomologyBasis {
    let faces = if complex.is_void() {
        Vec::new()
    } else {
        complex.faces_within(u)
    };
    let cur = level(&faces, i);
    let boundary_out = coboundary(field, level(&faces, i - 1), cur).transpose();
    let boundary_in = coboundary(field, cur, level(&faces, i + 1)).transpose();
    let cycles = boundary_out.kernel_basis();
    let boundary_image = boundary_in.column_space_basis();
    let reps = complement(field, cur.len(), &boundary_image, &cycles);
    HomologyBasis {
        set: u,
        degree: i,
        faces: cur.to_vec(),
        reps,
        boundary_image,
    }
}

/// Cycle space `Z̃_i(Δ_U)` as columns over the `i`-faces of `Δ_U`.
pub(crate) fn cycle_space(
    complex: &SimplicialComplex,
    u: VertexSet,
    i: isize,
    field: Field,
) -> (Vec<VertexSet>, FieldMatrix) {
    let faces = if complex.is_void() {
        Vec::new()
    } else {
        complex.faces_within(u)
    };
    let cur = level(&faces, i).to_vec();
    let boundary_out = coboundary(field, level(&faces, i - 1), &cur).transpose();
    (cur, boundary_out.kernel_basis())
}

/// A simplicial chain: a map from `d`-faces to nonzero scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    field: Field,
    dim: isize,
    terms: BTreeMap<VertexSet, u32>,
}

impl Chain {
    pub fn zero(field: Field, dim: isize) -> Self {
        Chain {
            field,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (VertexSet, i64)>>(
        field: Field,
        dim: isize,
        terms: I,
    ) -> Self {
        let mut c = Self::zero(field, dim);
        for (f, x) in terms {
            c.add_term(f, field.from_i64(x));
        }
        c
    }

    /// Chain from a coefficient vector over an ordered face list.
    pub fn from_vector(field: Field, dim: isize, faces: &[VertexSet], coeffs: &[u32]) -> Self {
        let mut c = Self::zero(field, dim);
        for (f, &x) in faces.iter().zip(coeffs) {
            c.add_term(*f, x);
        }
        c
    }

    fn add_term(&mut self, f: VertexSet, x: u32) {
        let e = self.terms.entry(f).or_insert(0);
        *e = self.field.add(*e, x);
        if *e == 0 {
            self.terms.remove(&f);
        }
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<VertexSet, u32> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Union of the vertices of all faces in the chain.
    pub fn support(&self) -> VertexSet {
        self.terms.keys().fold(VertexSet::EMPTY, |a, f| a.union(*f))
    }

    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.field, self.dim - 1);
        for (f, &x) in &self.terms {
            for v in f.iter() {
                out.add_term(
                    f.without(v),
                    self.field.mul(x, self.field.from_i64(sign(v, *f))),
                );
            }
        }
        out
    }

    /// `Σ c_σ ∂σ`.
    pub fn sum_of_boundaries(field: Field, dim: isize, parts: &[(VertexSet, u32)]) -> Chain {
        let mut out = Chain::zero(field, dim);
        for &(sigma, c) in parts {
            for (f, x) in Chain::from_terms(field, dim + 1, [(sigma, 1)])
                .boundary()
                .terms
            {
                out.add_term(f, field.mul(c, x));
            }
        }
        out
    }

    pub fn to_vector(&self, faces: &[VertexSet]) -> Vec<u32> {
        faces
            .iter()
            .map(|f| self.terms.get(f).copied().unwrap_or(0))
            .collect()
    }
}

/// Vertex sets `σ ⊆ w` with `#σ = d + 2` whose boundary lies in the complex,
/// i.e. every `(d+1)`-subset of `σ` is a face. `σ` itself need not be a face.
pub(crate) fn complete_cycle_simplices(
    complex: &SimplicialComplex,
    w: VertexSet,
    d: isize,
) -> Vec<VertexSet> {
    if d < -1 {
        return Vec::new();
    }
    let mut out: Vec<VertexSet> = w
        .subsets_of_size((d + 2) as usize)
        .filter(|s| s.iter().all(|v| complex.is_face(s.without(v))))
        .collect();
    out.sort();
    out
}

/// Complete cycles `∂σ` for `σ ⊆ w` as columns over the `d`-faces of `Δ_w`.
pub(crate) fn complete_cycle_matrix(
    complex: &SimplicialComplex,
    w: VertexSet,
    d: isize,
    field: Field,
) -> (Vec<VertexSet>, Vec<VertexSet>, FieldMatrix) {
    let faces = if complex.is_void() {
        Vec::new()
    } else {
        complex.faces_within(w)
    };
    let cur = level(&faces, d).to_vec();
    let sigmas = complete_cycle_simplices(complex, w, d);
    let columns: Vec<Vec<u32>> = sigmas
        .iter()
        .map(|&s| {
            Chain::from_terms(field, d + 1, [(s, 1)])
                .boundary()
                .to_vector(&cur)
        })
        .collect();
    let m = FieldMatrix::from_columns(field, cur.len(), &columns);
    (cur, sigmas, m)
}

/// Writes the cycle `z` as `Σ c_σ ∂σ` with complete cycles supported on the
/// vertices of `z`, or returns `None` if that is impossible.
pub fn complete_cycle_decomposition(
    z: &Chain,
    complex: &SimplicialComplex,
) -> Result<Option<Vec<(VertexSet, u32)>>> {
    let field = z.field;
    for f in z.terms.keys() {
        if f.len() as isize != z.dim + 1 || !complex.is_face(*f) {
            return Err(Error::InvalidChain(f.to_vec()));
        }
    }
    if !z.boundary().is_zero() {
        return Err(Error::NotACycle);
    }
    if z.is_zero() {
        return Ok(Some(Vec::new()));
    }
    let (faces, sigmas, gens) = complete_cycle_matrix(complex, z.support(), z.dim, field);
    let independent = gens.independent_columns();
    let basis = gens.select_columns(&independent);
    let Some(coords) = basis.solve_in_span(&z.to_vector(&faces))? else {
        return Ok(None);
    };
    Ok(Some(
        independent
            .iter()
            .zip(coords)
            .filter(|(_, c)| *c != 0)
            .map(|(&k, c)| (sigmas[k], c))
            .collect(),
    ))
}

/// Write-once memo of [`Slice`]s for every `U ⊆ [n]` of one complex.
///
/// Slices are computed on first access; concurrent callers for the same `U`
/// block on a single computation.
pub struct CohomologyTable<'a> {
    complex: &'a SimplicialComplex,
    field: Field,
    slices: Vec<OnceLock<Slice>>,
}

impl<'a> CohomologyTable<'a> {
    pub fn new(complex: &'a SimplicialComplex, field: Field) -> Self {
        let slices = (0..1usize << complex.n())
            .map(|_| OnceLock::new())
            .collect();
        CohomologyTable {
            complex,
            field,
            slices,
        }
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.complex.n()
    }

    /// Computes every slice, in parallel.
    pub fn fill(&self) {
        (0..self.slices.len()).into_par_iter().for_each(|m| {
            self.slice(VertexSet::from_bits(m as u32));
        });
    }

    pub fn slice(&self, u: VertexSet) -> &Slice {
        self.slices[u.bits() as usize].get_or_init(|| Slice::compute(self.complex, u, self.field))
    }

    pub fn basis(&self, u: VertexSet, j: isize) -> Option<&CohomologyBasis> {
        self.slice(u).basis(j)
    }

    pub fn dim(&self, u: VertexSet, j: isize) -> usize {
        self.slice(u).dim(j)
    }

    /// Restriction `H̃^j(Δ_U) → H̃^j(Δ_{U∖u})`, `dim(U∖u) × dim(U)`.
    pub fn restriction(&self, u_set: VertexSet, u: usize, j: isize) -> Result<FieldMatrix> {
        let target_set = u_set.without(u);
        match (self.basis(u_set, j), self.basis(target_set, j)) {
            (Some(s), Some(t)) => restriction_matrix(s, t),
            (s, t) => Ok(FieldMatrix::zeros(
                self.field,
                t.map_or(0, CohomologyBasis::dim),
                s.map_or(0, CohomologyBasis::dim),
            )),
        }
    }
}
