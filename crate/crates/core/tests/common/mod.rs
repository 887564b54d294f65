#![allow(dead_code)]

use cdgl_core::simplicial::SimplicialComplex;

fn complex(vertices: &[u32], facets: &[&[u32]]) -> SimplicialComplex {
    SimplicialComplex::new(vertices.to_vec(), facets.iter().map(|f| f.to_vec()).collect()).unwrap()
}

/// The test corpus, with entry names.
pub fn corpus() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("point", complex(&[0], &[])),
        ("two points", complex(&[0, 1], &[])),
        ("segment", complex(&[0, 1], &[&[0, 1]])),
        ("path of 3 vertices", complex(&[0, 1, 2], &[&[0, 1], &[1, 2]])),
        ("one-vertex circle", complex(&[0], &[]).with_loops(&[0]).unwrap()),
        ("three-vertex circle", complex(&[0, 1, 2], &[&[0, 1], &[1, 2], &[0, 2]])),
        ("theta graph", complex(&[0, 1, 2, 3], &[&[0, 1], &[0, 2], &[1, 2], &[0, 3], &[1, 3]])),
        ("two disjoint segments", complex(&[0, 1, 2, 3], &[&[0, 1], &[2, 3]])),
        ("triangle", SimplicialComplex::simplex(2)),
        ("triangle boundary", SimplicialComplex::simplex_boundary(2)),
        ("triangle and segment", complex(&[0, 1, 2, 3, 4], &[&[0, 1, 2], &[3, 4]])),
        ("tetrahedron", SimplicialComplex::simplex(3)),
    ]
}

/// Corpus entries of dimension at most one.
pub fn graphs() -> Vec<(&'static str, SimplicialComplex)> {
    corpus().into_iter().filter(|(_, x)| x.dimension() <= 1).collect()
}
