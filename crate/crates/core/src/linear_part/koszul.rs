//! The degree-`U` slice of the Koszul complex `k[Δ] ⊗ Λ•V` and its
//! identification with the cochains of `Δ_U`.

use crate::cohomology::{coboundary, level, Slice};
use crate::linalg::{Field, FieldMatrix};
use crate::simplicial::{alpha, sign, SimplicialComplex, VertexSet};

/// Faces of `Δ_U` indexing Koszul degree `a`: basis `x^F ⊗ e_{U∖F}` with `#F = #U - a`.
fn koszul_level(faces: &[Vec<VertexSet>], u: VertexSet, a: usize) -> &[VertexSet] {
    level(faces, u.len() as isize - a as isize - 1)
}

/// `∂(x^F ⊗ e_{U∖F}) = Σ_{i ∈ U∖F} (-1)^α(i,U∖F) x^{F∪i} ⊗ e_{U∖(F∪i)}`,
/// with terms `F ∪ i ∉ Δ` vanishing. Rows are the faces one size up.
fn koszul_differential(
    field: Field,
    u: VertexSet,
    lower: &[VertexSet],
    upper: &[VertexSet],
) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(field, upper.len(), lower.len());
    for (col, f) in lower.iter().enumerate() {
        let rest = u.difference(*f);
        for i in rest.iter() {
            if let Ok(row) = upper.binary_search(&f.with(i)) {
                m[(row, col)] = field.from_i64(sign(i, rest));
            }
        }
    }
    m
}

fn slice_sign(field: Field, f: VertexSet, u: VertexSet) -> u32 {
    field.from_i64(if alpha(f, u).is_multiple_of(2) { 1 } else { -1 })
}

/// Homology of the degree-`U` Koszul slice; entry `a` is the dimension in
/// homological degree `a`, for `0 <= a <= #U`.
pub fn koszul_slice_homology(
    complex: &SimplicialComplex,
    u: VertexSet,
    field: Field,
) -> Vec<usize> {
    let faces = if complex.is_void() {
        Vec::new()
    } else {
        complex.faces_within(u)
    };
    let k = u.len();
    let ranks: Vec<usize> = (0..=k + 1)
        .map(|a| {
            if a == 0 {
                return 0;
            }
            let lower = koszul_level(&faces, u, a);
            let upper = koszul_level(&faces, u, a - 1);
            koszul_differential(field, u, lower, upper).rank()
        })
        .collect();
    (0..=k)
        .map(|a| koszul_level(&faces, u, a).len() - ranks[a] - ranks[a + 1])
        .collect()
}

/// Checks that `x^F ⊗ e_{U∖F} ↦ (-1)^α(F,U) F*` commutes with the
/// differentials and that slice homology matches `H̃^{#U-a-1}(Δ_U)`.
pub fn koszul_slice_check(complex: &SimplicialComplex, u: VertexSet, field: Field) -> bool {
    let faces = if complex.is_void() {
        Vec::new()
    } else {
        complex.faces_within(u)
    };
    for a in 1..=u.len() {
        let lower = koszul_level(&faces, u, a);
        let upper = koszul_level(&faces, u, a - 1);
        let koszul = koszul_differential(field, u, lower, upper);
        let delta = coboundary(field, lower, upper);
        for (r, g) in upper.iter().enumerate() {
            for (c, f) in lower.iter().enumerate() {
                let left = field.mul(slice_sign(field, *g, u), koszul[(r, c)]);
                let right = field.mul(delta[(r, c)], slice_sign(field, *f, u));
                if left != right {
                    return false;
                }
            }
        }
    }
    let slice = Slice::compute(complex, u, field);
    koszul_slice_homology(complex, u, field)
        .iter()
        .enumerate()
        .all(|(a, &h)| h == slice.dim(u.len() as isize - a as isize - 1))
}
