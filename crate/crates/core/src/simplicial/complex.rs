use super::vertex_set::{sign, VertexSet, MAX_VERTICES};
use crate::{Error, Result};

/// A finite simplicial complex on the vertex labels `1..=n`, stored by its
/// facets plus a precomputed face bitmap over all `2^n` subsets.
///
/// The void complex (no faces) has an empty facet list. The irrelevant
/// complex `{∅}` has the single facet `∅`.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
    faces: Vec<u64>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds the complex generated by `facets`, dropping any set contained
    /// in another one. Include `VertexSet::EMPTY` to get `{∅}` from an
    /// otherwise empty list.
    pub fn from_facets<I: IntoIterator<Item = VertexSet>>(n: usize, facets: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let full = VertexSet::full(n);
        let mut candidates: Vec<VertexSet> = Vec::new();
        for f in facets {
            if !f.is_subset(full) {
                let vertex = f.difference(full).min_vertex().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            candidates.push(f);
        }
        candidates.sort();
        candidates.dedup();
        let mut kept: Vec<VertexSet> = Vec::new();
        // Largest first, so a candidate only needs checking against kept sets.
        for &f in candidates.iter().rev() {
            if !kept.iter().any(|g| f.is_subset(*g)) {
                kept.push(f);
            }
        }
        kept.sort();
        Ok(Self::from_antichain(n, kept))
    }

    fn from_antichain(n: usize, facets: Vec<VertexSet>) -> Self {
        let size = 1usize << n;
        let mut faces = vec![0u64; size.div_ceil(64)];
        let mark = |faces: &mut Vec<u64>, m: usize| faces[m / 64] |= 1 << (m % 64);
        for f in &facets {
            mark(&mut faces, f.bits() as usize);
        }
        for m in (0..size).rev() {
            if faces[m / 64] >> (m % 64) & 1 == 1 {
                let mut rest = m;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    mark(&mut faces, m & !bit);
                    rest &= rest - 1;
                }
            }
        }
        SimplicialComplex { n, facets, faces }
    }

    pub fn void(n: usize) -> Self {
        Self::from_antichain(n, Vec::new())
    }

    /// The complex `{∅}`.
    pub fn irrelevant(n: usize) -> Self {
        Self::from_antichain(n, vec![VertexSet::EMPTY])
    }

    /// The full simplex on `[n]`.
    pub fn simplex(n: usize) -> Self {
        Self::from_antichain(n, vec![VertexSet::full(n)])
    }

    /// The cycle graph `1-2-...-n-1` (needs `n >= 3`).
    pub fn cycle(n: usize) -> Result<Self> {
        let edges = (1..=n).map(|v| VertexSet::singleton(v).with(v % n + 1));
        Self::from_facets(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_face(&self, f: VertexSet) -> bool {
        let m = f.bits() as usize;
        m < (1usize << self.n) && self.faces[m / 64] >> (m % 64) & 1 == 1
    }

    /// Dimension of the complex; `None` for the void complex, `-1` for `{∅}`.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// Vertices `v` with `{v}` a face.
    pub fn vertices(&self) -> VertexSet {
        (1..=self.n)
            .filter(|&v| self.is_face(VertexSet::singleton(v)))
            .fold(VertexSet::EMPTY, VertexSet::with)
    }

    /// The restriction to `u`: faces of `self` contained in `u`.
    pub fn induced(&self, u: VertexSet) -> SimplicialComplex {
        if self.is_void() {
            return Self::void(self.n);
        }
        let facets = self.facets.iter().map(|f| f.intersection(u));
        Self::from_facets(self.n, facets).expect("restriction of a valid complex")
    }

    /// Faces of `self` contained in `u`, grouped by dimension: entry `d + 1`
    /// lists the `d`-faces in canonical order.
    pub fn faces_within(&self, u: VertexSet) -> Vec<Vec<VertexSet>> {
        let mut by_dim: Vec<Vec<VertexSet>> = Vec::new();
        for f in u.subsets() {
            if self.is_face(f) {
                let k = f.len();
                if by_dim.len() <= k {
                    by_dim.resize(k + 1, Vec::new());
                }
                by_dim[k].push(f);
            }
        }
        for level in &mut by_dim {
            level.sort();
        }
        by_dim
    }

    /// All faces in canonical order.
    pub fn faces(&self) -> Vec<VertexSet> {
        self.faces_within(VertexSet::full(self.n)).concat()
    }

    /// Applies a vertex relabelling; `perm[v - 1]` is the new label of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SimplicialComplex> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut facets = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            facets.push(VertexSet::from_labels(
                self.n,
                f.iter().map(|v| perm[v - 1]),
            )?);
        }
        Self::from_facets(self.n, facets)
    }
}

/// Canonically ordered `d`- and `(d-1)`-faces with the signed incidences of
/// the simplicial boundary `∂F = Σ (-1)^α(i,F) F∖i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySupport {
    pub faces: Vec<VertexSet>,
    pub lower_faces: Vec<VertexSet>,
    /// `(index into faces, index into lower_faces, ±1)`.
    pub incidences: Vec<(usize, usize, i64)>,
}

pub fn boundary_matrix_support(complex: &SimplicialComplex, d: isize) -> BoundarySupport {
    let by_dim = complex.faces_within(VertexSet::full(complex.n()));
    let level = |k: isize| -> Vec<VertexSet> {
        if k < -1 {
            return Vec::new();
        }
        by_dim.get((k + 1) as usize).cloned().unwrap_or_default()
    };
    let faces = level(d);
    let lower_faces = level(d - 1);
    let mut incidences = Vec::new();
    for (col, f) in faces.iter().enumerate() {
        for v in f.iter() {
            let g = f.without(v);
            let row = lower_faces
                .binary_search(&g)
                .expect("faces are closed under removal");
            incidences.push((col, row, sign(v, *f)));
        }
    }
    BoundarySupport {
        faces,
        lower_faces,
        incidences,
    }
}
