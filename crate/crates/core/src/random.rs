//! Reproducible random simplicial complexes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::simplicial::{SimplicialComplex, VertexSet};
use crate::Result;

/// A random complex on `[n]`: every nonempty `S ⊆ [n]` whose proper subsets
/// were all kept is kept with probability `face_prob^{#S}`, so small faces
/// are common and large ones rare. The empty face is always present.
pub fn random_complex<R: Rng>(rng: &mut R, n: usize, face_prob: f64) -> Result<SimplicialComplex> {
    let full = VertexSet::full(n);
    let mut sets: Vec<VertexSet> = full.subsets().collect();
    sets.sort();
    let mut faces = vec![false; 1 << n];
    faces[0] = true;
    for s in sets.into_iter().skip(1) {
        let keep = rng.gen_bool(face_prob.clamp(0.0, 1.0).powi(s.len() as i32));
        faces[s.bits() as usize] = keep && s.iter().all(|v| faces[s.without(v).bits() as usize]);
    }
    let facets = full.subsets().filter(|&s| {
        faces[s.bits() as usize]
            && full
                .difference(s)
                .iter()
                .all(|v| !faces[s.with(v).bits() as usize])
    });
    SimplicialComplex::from_facets(n, facets.collect::<Vec<_>>())
}

/// `count` complexes from one seed.
pub fn random_complexes(
    seed: u64,
    n: usize,
    face_prob: f64,
    count: usize,
) -> Result<Vec<SimplicialComplex>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_complex(&mut rng, n, face_prob))
        .collect()
}

/// Face probabilities cycled through by [`corpus`].
pub const CORPUS_FACE_PROBS: [f64; 4] = [0.5, 0.7, 0.85, 0.95];

/// The standard test corpus: instance `k` has `n = 2 + k % 5` vertices and
/// face probability `CORPUS_FACE_PROBS[k % 4]`, drawn from seed `seed + k`.
pub fn corpus(seed: u64, count: usize) -> Result<Vec<SimplicialComplex>> {
    (0..count)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            random_complex(&mut rng, 2 + k % 5, CORPUS_FACE_PROBS[k % 4])
        })
        .collect()
}
