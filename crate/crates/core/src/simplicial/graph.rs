use super::complex::SimplicialComplex;
use super::vertex_set::VertexSet;
use crate::{Error, Result};

/// Checks that `complex` is a graph in which every label of `[n]` is a vertex.
pub(crate) fn check_graph(complex: &SimplicialComplex) -> Result<()> {
    match complex.dim() {
        None => return Err(Error::VoidComplex),
        Some(d) if d > 1 => return Err(Error::NotAGraph(format!("dimension {d}"))),
        _ => {}
    }
    let missing = VertexSet::full(complex.n()).difference(complex.vertices());
    if let Some(v) = missing.min_vertex() {
        return Err(Error::NotAGraph(format!("{v} is not a vertex")));
    }
    Ok(())
}

/// Whether the graph induced on `u` is a single cycle of length `#u >= 3`.
fn induces_cycle(adjacency: &[u32], u: VertexSet) -> bool {
    if u.len() < 3 {
        return false;
    }
    let all_degree_two = u
        .iter()
        .all(|v| (adjacency[v - 1] & u.bits()).count_ones() == 2);
    if !all_degree_two {
        return false;
    }
    // 2-regular and connected means a single cycle.
    let start = u.min_vertex().unwrap();
    let mut seen = 1u32 << (start - 1);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in VertexSet::from_bits(frontier).iter() {
            next |= adjacency[v - 1] & u.bits();
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == u.bits()
}

/// Length of the longest induced chordless cycle of length at least 4 in a
/// graph, or `None` if there is none (acyclic, or only triangles).
pub fn max_induced_chordless_cycle(complex: &SimplicialComplex) -> Result<Option<usize>> {
    check_graph(complex)?;
    let n = complex.n();
    let mut adjacency = vec![0u32; n];
    for f in complex.facets().iter().filter(|f| f.len() == 2) {
        let (a, b) = (f.min_vertex().unwrap(), f.iter().nth(1).unwrap());
        adjacency[a - 1] |= 1 << (b - 1);
        adjacency[b - 1] |= 1 << (a - 1);
    }
    let best = VertexSet::full(n)
        .subsets()
        .filter(|u| u.len() >= 4 && induces_cycle(&adjacency, *u))
        .map(|u| u.len())
        .max();
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> SimplicialComplex {
        let facets = edges.iter().map(|&(a, b)| VertexSet::singleton(a).with(b));
        let verts = (1..=n).map(VertexSet::singleton);
        SimplicialComplex::from_facets(n, facets.chain(verts).collect::<Vec<_>>()).unwrap()
    }

    /// Independent oracle: test each subset by counting induced edges and
    /// walking the cycle by hand.
    fn brute_force(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
        let adj = |a: usize, b: usize| {
            edges
                .iter()
                .any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
        };
        let mut best = None;
        for bits in 1u32..(1 << n) {
            let vs: Vec<usize> = (1..=n).filter(|v| bits >> (v - 1) & 1 == 1).collect();
            if vs.len() < 4 {
                continue;
            }
            let deg_ok = vs
                .iter()
                .all(|&a| vs.iter().filter(|&&b| adj(a, b)).count() == 2);
            if !deg_ok {
                continue;
            }
            let mut prev = 0;
            let mut cur = vs[0];
            let mut steps = 0;
            loop {
                let next = *vs.iter().find(|&&b| adj(cur, b) && b != prev).unwrap();
                prev = cur;
                cur = next;
                steps += 1;
                if cur == vs[0] {
                    break;
                }
            }
            if steps == vs.len() {
                best = best.max(Some(vs.len()));
            }
        }
        best
    }

    #[test]
    fn cycles_and_trees() {
        let c6 = SimplicialComplex::cycle(6).unwrap();
        assert_eq!(max_induced_chordless_cycle(&c6).unwrap(), Some(6));
        let tree = graph(5, &[(1, 2), (1, 3), (3, 4), (3, 5)]);
        assert_eq!(max_induced_chordless_cycle(&tree).unwrap(), None);
        let triangle = SimplicialComplex::cycle(3).unwrap();
        assert_eq!(max_induced_chordless_cycle(&triangle).unwrap(), None);
    }

    #[test]
    fn six_cycle_with_chord() {
        let edges = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 3)];
        assert_eq!(brute_force(6, &edges), Some(5));
        assert_eq!(
            max_induced_chordless_cycle(&graph(6, &edges)).unwrap(),
            Some(5)
        );
    }

    #[test]
    fn rejects_higher_dimension_and_missing_vertices() {
        let s = SimplicialComplex::simplex(3);
        assert!(matches!(
            max_induced_chordless_cycle(&s),
            Err(Error::NotAGraph(_))
        ));
        let g = graph(2, &[]);
        let g = SimplicialComplex::from_facets(3, g.facets().to_vec()).unwrap();
        assert!(matches!(
            max_induced_chordless_cycle(&g),
            Err(Error::NotAGraph(_))
        ));
    }

    proptest::proptest! {
        #[test]
        fn agrees_with_brute_force(mask in 0u32..(1 << 15)) {
            let pairs: Vec<(usize, usize)> = (1..=6usize)
                .flat_map(|a| (a + 1..=6).map(move |b| (a, b)))
                .collect();
            let edges: Vec<_> = pairs.iter().enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = graph(6, &edges);
            proptest::prop_assert_eq!(max_induced_chordless_cycle(&g).unwrap(), brute_force(6, &edges));
        }
    }
}
