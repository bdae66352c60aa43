use serde::Serialize;

use super::complex::SimplicialComplex;
use super::vertex_set::{VertexSet, MAX_VERTICES};
use crate::{Error, Result};

/// A monomial ideal of `k[x_1, ..., x_n]` given by its minimal generators.
///
/// Generators are kept minimal (no generator divides another) and sorted by
/// total degree, then colexicographically, so equal ideals compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn sort_key(g: &[u32]) -> (u32, Vec<u32>) {
    (g.iter().sum(), g.iter().rev().copied().collect())
}

impl MonomialIdeal {
    pub fn new(n: usize, generators: Vec<Vec<u32>>) -> Result<Self> {
        for g in &generators {
            if g.len() != n {
                return Err(Error::ExponentLength {
                    expected: n,
                    got: g.len(),
                });
            }
        }
        let mut gens = generators;
        gens.sort_by_key(|g| sort_key(g));
        gens.dedup();
        let mut minimal: Vec<Vec<u32>> = Vec::new();
        // Sorted by degree, so only earlier generators can divide later ones.
        for g in gens {
            if !minimal.iter().any(|m| divides(m, &g)) {
                minimal.push(g);
            }
        }
        Ok(MonomialIdeal {
            n,
            generators: minimal,
        })
    }

    /// The ideal generated by `x^U` for the given squarefree supports.
    pub fn from_supports<I: IntoIterator<Item = VertexSet>>(n: usize, supports: I) -> Result<Self> {
        let gens = supports
            .into_iter()
            .map(|s| (1..=n).map(|v| u32::from(s.contains(v))).collect())
            .collect();
        Self::new(n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().flatten().all(|&e| e <= 1)
    }

    /// Supports of the generators (only meaningful for squarefree ideals).
    pub fn supports(&self) -> Vec<VertexSet> {
        self.generators
            .iter()
            .map(|g| {
                g.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(VertexSet::EMPTY, |s, (i, _)| s.with(i + 1))
            })
            .collect()
    }
}

/// The Stanley-Reisner complex of a squarefree monomial ideal.
pub fn complex_from_ideal(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let n = ideal.n();
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_VERTICES,
        });
    }
    let supports = ideal.supports();
    if supports.iter().any(|s| s.is_empty()) {
        return Err(Error::UnitIdeal);
    }
    let is_face = |f: VertexSet| !supports.iter().any(|s| s.is_subset(f));
    let full = VertexSet::full(n);
    let facets = full
        .subsets()
        .filter(|&f| is_face(f) && full.difference(f).iter().all(|v| !is_face(f.with(v))));
    SimplicialComplex::from_facets(n, facets.collect::<Vec<_>>())
}

/// Minimal non-faces of `complex`, i.e. the Stanley-Reisner ideal `I_Δ`.
pub fn ideal_from_complex(complex: &SimplicialComplex) -> Result<MonomialIdeal> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    let n = complex.n();
    let minimal_nonfaces = VertexSet::full(n)
        .subsets()
        .filter(|&u| !complex.is_face(u) && u.iter().all(|v| complex.is_face(u.without(v))));
    MonomialIdeal::from_supports(n, minimal_nonfaces.collect::<Vec<_>>())
}

/// Origin of a polarization variable: `x_original` raised to the `slot`-th power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PolarVariable {
    pub original: usize,
    pub slot: u32,
}

/// Standard polarization: `x_i^k` becomes `y_{i,1} ... y_{i,k}`.
///
/// Every original variable gets at least one new variable, so a squarefree
/// ideal polarizes to itself with the identity map. New variables are
/// numbered by `(original variable, slot)`.
pub fn polarize(ideal: &MonomialIdeal) -> Result<(MonomialIdeal, Vec<PolarVariable>)> {
    let n = ideal.n();
    let slots: Vec<u32> = (0..n)
        .map(|i| {
            ideal
                .generators()
                .iter()
                .map(|g| g[i])
                .max()
                .unwrap_or(0)
                .max(1)
        })
        .collect();
    let map: Vec<PolarVariable> = slots
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| {
            (1..=k).map(move |slot| PolarVariable {
                original: i + 1,
                slot,
            })
        })
        .collect();
    let offsets: Vec<usize> = slots
        .iter()
        .scan(0usize, |acc, &k| {
            let start = *acc;
            *acc += k as usize;
            Some(start)
        })
        .collect();
    let gens = ideal
        .generators()
        .iter()
        .map(|g| {
            let mut out = vec![0u32; map.len()];
            for (i, &e) in g.iter().enumerate() {
                for s in 0..e as usize {
                    out[offsets[i] + s] = 1;
                }
            }
            out
        })
        .collect();
    Ok((MonomialIdeal::new(map.len(), gens)?, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(20, labels.iter().copied()).unwrap()
    }

    fn example_ideal() -> MonomialIdeal {
        MonomialIdeal::new(
            5,
            vec![
                vec![1, 1, 0, 0, 0],
                vec![1, 0, 1, 0, 0],
                vec![0, 1, 1, 1, 0],
                vec![0, 1, 1, 0, 1],
            ],
        )
        .unwrap()
    }

    #[test]
    fn example_round_trip() {
        let c = complex_from_ideal(&example_ideal()).unwrap();
        assert_eq!(
            c.facets(),
            &[
                set(&[2, 3]),
                set(&[1, 4, 5]),
                set(&[2, 4, 5]),
                set(&[3, 4, 5])
            ]
        );
        assert_eq!(ideal_from_complex(&c).unwrap(), example_ideal());
    }

    #[test]
    fn degenerate_ideals() {
        let zero = MonomialIdeal::new(3, vec![]).unwrap();
        assert_eq!(
            complex_from_ideal(&zero).unwrap(),
            SimplicialComplex::simplex(3)
        );
        assert!(ideal_from_complex(&SimplicialComplex::simplex(3))
            .unwrap()
            .is_zero());
        let var = MonomialIdeal::new(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(complex_from_ideal(&var).unwrap().facets(), &[set(&[2])]);
        let unit = MonomialIdeal::new(2, vec![vec![0, 0]]).unwrap();
        assert_eq!(complex_from_ideal(&unit), Err(Error::UnitIdeal));
        assert_eq!(
            complex_from_ideal(&MonomialIdeal::new(1, vec![vec![2]]).unwrap()),
            Err(Error::NotSquarefree)
        );
        assert_eq!(
            ideal_from_complex(&SimplicialComplex::void(2)),
            Err(Error::VoidComplex)
        );
        // {∅}: every variable is a minimal non-face
        let m = ideal_from_complex(&SimplicialComplex::irrelevant(2)).unwrap();
        assert_eq!(m.generators(), &[vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn four_cycle_ideal_by_brute_force() {
        let c = SimplicialComplex::cycle(4).unwrap();
        // Brute force: a set is a minimal non-face iff it is not a face and
        // every proper subset is.
        let mut expected = Vec::new();
        for bits in 0u32..16 {
            let u = VertexSet::from_bits(bits);
            let proper_all_faces = u.subsets().filter(|&s| s != u).all(|s| c.is_face(s));
            if !c.is_face(u) && proper_all_faces {
                expected.push(u);
            }
        }
        assert_eq!(expected, vec![set(&[1, 3]), set(&[2, 4])]);
        let ideal = ideal_from_complex(&c).unwrap();
        assert_eq!(ideal.supports(), expected);
    }

    #[test]
    fn minimalization() {
        let i = MonomialIdeal::new(2, vec![vec![1, 1], vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(i.generators(), &[vec![1, 0]]);
    }

    #[test]
    fn polarize_examples() {
        let (p, map) = polarize(&MonomialIdeal::new(1, vec![vec![2]]).unwrap()).unwrap();
        assert_eq!(p.generators(), &[vec![1, 1]]);
        assert_eq!(
            map,
            vec![
                PolarVariable {
                    original: 1,
                    slot: 1
                },
                PolarVariable {
                    original: 1,
                    slot: 2
                }
            ]
        );

        let sq = example_ideal();
        let (p, map) = polarize(&sq).unwrap();
        assert_eq!(p, sq);
        assert!(map
            .iter()
            .enumerate()
            .all(|(k, m)| m.original == k + 1 && m.slot == 1));

        let i = MonomialIdeal::new(2, vec![vec![2, 1], vec![0, 3]]).unwrap();
        let (p, map) = polarize(&i).unwrap();
        assert_eq!(p.n(), 5);
        assert_eq!(p.supports(), vec![set(&[1, 2, 3]), set(&[3, 4, 5])]);
        let origins: Vec<usize> = map.iter().map(|m| m.original).collect();
        assert_eq!(origins, vec![1, 1, 2, 2, 2]);
    }
}
