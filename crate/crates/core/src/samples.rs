//! Ready-made plane graphs: small classics, the two bad-9-cycle templates as
//! concrete embeddings, and the fixture instances used by the test and
//! acceptance suites.

use std::collections::BTreeMap;

use crate::plane_graph::builder::PlaneBuilder;
use crate::plane_graph::PlaneGraph;
use crate::Vertex;

/// The cycle `0 - 1 - ... - n-1 - 0`, outer face designated.
pub fn cycle(n: u32) -> PlaneGraph {
    assert!(n >= 3);
    let ids: Vec<Vertex> = (0..n).collect();
    let mut b = PlaneBuilder::from_cycle(&ids);
    b.set_outer(ids);
    b.build().expect("cycle is a valid plane graph")
}

/// The path `0 - 1 - ... - n-1`.
pub fn path(n: u32) -> PlaneGraph {
    assert!(n >= 2);
    let mut rotation: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for v in 0..n {
        let mut nbrs = Vec::new();
        if v > 0 {
            nbrs.push(v - 1);
        }
        if v + 1 < n {
            nbrs.push(v + 1);
        }
        rotation.insert(v, nbrs);
    }
    PlaneGraph::from_rotations(rotation, None).expect("path is a valid plane graph")
}

/// K4 embedded with vertex 0 inside the triangle 1-2-3.
pub fn k4() -> PlaneGraph {
    let mut rotation = BTreeMap::new();
    rotation.insert(0, vec![1, 2, 3]);
    rotation.insert(1, vec![2, 0, 3]);
    rotation.insert(2, vec![3, 0, 1]);
    rotation.insert(3, vec![1, 0, 2]);
    PlaneGraph::from_rotations(rotation, Some(vec![1, 2, 3])).expect("K4 embedding")
}

/// The cube graph: outer square 0-1-2-3, inner square 4-5-6-7.
pub fn cube() -> PlaneGraph {
    let mut b = PlaneBuilder::from_cycle(&[0, 1, 2, 3]);
    b.add_path_in(0, 0, &[4, 5], 1).unwrap();
    b.add_path(&[5, 2], 5, &[6], 2).unwrap();
    b.add_path(&[6, 3], 6, &[7], 3).unwrap();
    b.add_edge(&[7, 4], 7, 4).unwrap();
    b.set_outer(vec![0, 1, 2, 3]);
    b.build().expect("cube embedding")
}

/// The octahedron: outer triangle 0-1-2, inner triangle 3-4-5.
pub fn octahedron() -> PlaneGraph {
    let mut b = PlaneBuilder::from_cycle(&[0, 1, 2]);
    b.add_path_in(0, 0, &[4], 1).unwrap();
    b.add_path(&[2, 4], 2, &[3], 4).unwrap();
    b.add_edge(&[3, 0], 3, 0).unwrap();
    b.add_path(&[1, 2, 4], 1, &[5], 2).unwrap();
    b.add_edge(&[5, 4], 5, 4).unwrap();
    b.add_edge(&[5, 3], 5, 3).unwrap();
    b.set_outer(vec![0, 1, 2]);
    b.build().expect("octahedron embedding")
}

/// Two apexes (3 inside, 4 outside) joined to the triangle 0-1-2; the
/// triangle is the unique separating 3-cycle.
pub fn triangular_bipyramid() -> PlaneGraph {
    let mut b = PlaneBuilder::from_cycle(&[0, 1, 2]);
    b.add_path_in(0, 0, &[3], 1).unwrap();
    b.add_edge(&[3, 2], 3, 2).unwrap();
    b.add_path(&[0, 1, 2], 0, &[4], 1).unwrap();
    b.add_edge(&[4, 2], 4, 2).unwrap();
    b.set_outer(vec![0, 4, 1]);
    b.build().expect("bipyramid embedding")
}

/// Two triangles sharing the vertex 0.
pub fn bowtie() -> PlaneGraph {
    let mut rotation = BTreeMap::new();
    rotation.insert(0, vec![1, 2, 3, 4]);
    rotation.insert(1, vec![2, 0]);
    rotation.insert(2, vec![0, 1]);
    rotation.insert(3, vec![4, 0]);
    rotation.insert(4, vec![0, 3]);
    PlaneGraph::from_rotations(rotation, None).expect("bowtie embedding")
}

/// Triangles 0-1-2 and 3-4-5 joined by a path of `len` edges between
/// vertices 2 and 3 (so their triangle distance is `len`).
pub fn two_triangles_joined_by_path(len: u32) -> PlaneGraph {
    assert!(len >= 1);
    let mut rotation: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    rotation.insert(0, vec![1, 2]);
    rotation.insert(1, vec![2, 0]);
    rotation.insert(3, vec![4, 5]);
    rotation.insert(4, vec![5, 3]);
    rotation.insert(5, vec![3, 4]);
    let mids: Vec<Vertex> = (0..len.saturating_sub(1)).map(|i| 6 + i).collect();
    let chain: Vec<Vertex> = std::iter::once(2)
        .chain(mids.iter().copied())
        .chain(std::iter::once(3))
        .collect();
    rotation.insert(2, vec![0, 1, chain[1]]);
    rotation.get_mut(&3).unwrap().push(chain[chain.len() - 2]);
    for w in 1..chain.len() - 1 {
        rotation.insert(chain[w], vec![chain[w - 1], chain[w + 1]]);
    }
    PlaneGraph::from_rotations(rotation, None).expect("two-triangle chain embedding")
}

/// The wheel: hub 0 joined to the rim `1..=n`.
pub fn wheel(n: u32) -> PlaneGraph {
    assert!(n >= 3);
    let rim: Vec<Vertex> = (1..=n).collect();
    let mut b = PlaneBuilder::from_cycle(&rim);
    b.add_path_in(0, 1, &[0], 2).unwrap();
    for j in 3..=n {
        b.add_edge(&[0, j], 0, j).unwrap();
    }
    b.set_outer(rim);
    b.build().expect("wheel embedding")
}

/// The `rows x cols` grid; vertex `r * cols + c`, perimeter designated outer.
pub fn grid(rows: u32, cols: u32) -> PlaneGraph {
    assert!(rows >= 2 && cols >= 2);
    let id = |r: u32, c: u32| -> Vertex { r * cols + c };
    let mut rotation: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for r in 0..rows {
        for c in 0..cols {
            let mut nbrs = Vec::new();
            // east, north, west, south: counterclockwise
            if c + 1 < cols {
                nbrs.push(id(r, c + 1));
            }
            if r > 0 {
                nbrs.push(id(r - 1, c));
            }
            if c > 0 {
                nbrs.push(id(r, c - 1));
            }
            if r + 1 < rows {
                nbrs.push(id(r + 1, c));
            }
            rotation.insert(id(r, c), nbrs);
        }
    }
    let mut outer = Vec::new();
    for c in 0..cols {
        outer.push(id(0, c));
    }
    for r in 1..rows {
        outer.push(id(r, cols - 1));
    }
    for c in (0..cols - 1).rev() {
        outer.push(id(rows - 1, c));
    }
    for r in (1..rows - 1).rev() {
        outer.push(id(r, 0));
    }
    PlaneGraph::from_rotations(rotation, Some(outer)).expect("grid embedding")
}

/// First bad-9-cycle shape: the 9-cycle `1..=9` with an apex 10 forming a
/// triangle on the edge 1-2 and a third spoke to vertex 6, cutting the
/// interior into two 6-faces.
pub fn bad9_apex() -> PlaneGraph {
    let rim: Vec<Vertex> = (1..=9).collect();
    let mut b = PlaneBuilder::from_cycle(&rim);
    b.add_path_in(0, 1, &[10], 2).unwrap();
    b.add_edge(&[10, 6], 10, 6).unwrap();
    b.set_outer(rim);
    b.build().expect("bad9 apex embedding")
}

/// Second bad-9-cycle shape: the 9-cycle `1..=9` around a central triangle
/// 10-11-12 with spokes 10-1, 11-4, 12-7, cutting the interior into three
/// 6-faces.
pub fn bad9_core_triangle() -> PlaneGraph {
    let rim: Vec<Vertex> = (1..=9).collect();
    let mut b = PlaneBuilder::from_cycle(&rim);
    b.add_path_in(0, 1, &[10, 11], 4).unwrap();
    b.add_path(&[10, 7], 10, &[12], 7).unwrap();
    b.add_edge(&[11, 12], 11, 12).unwrap();
    b.set_outer(rim);
    b.build().expect("bad9 core-triangle embedding")
}

/// 7-cycle `1..=7` with a pendant triangle 8-9-10 hanging inside from
/// vertex 1. No 4-, 5- or 6-cycles; one triangle.
pub fn c7_hanging_triangle() -> PlaneGraph {
    let rim: Vec<Vertex> = (1..=7).collect();
    let mut b = PlaneBuilder::from_cycle(&rim);
    b.add_bridge_in(0, 1, &[8, 9]).unwrap();
    b.add_bridge(&[8, 9], 9, &[10]).unwrap();
    b.add_edge(&[8, 10], 8, 10).unwrap();
    b.set_outer(rim);
    b.build().expect("c7 hanging triangle embedding")
}

/// 7-cycle `1..=7` with two pendant triangles (from vertices 1 and 4) at
/// triangle distance 5.
pub fn c7_two_hanging_triangles() -> PlaneGraph {
    let rim: Vec<Vertex> = (1..=7).collect();
    let mut b = PlaneBuilder::from_cycle(&rim);
    b.add_bridge_in(0, 1, &[8, 9]).unwrap();
    b.add_bridge(&[8, 9], 9, &[10]).unwrap();
    b.add_edge(&[8, 10], 8, 10).unwrap();
    b.add_bridge(&[4, 8, 10], 4, &[11, 12]).unwrap();
    b.add_bridge(&[11, 12], 12, &[13]).unwrap();
    b.add_edge(&[11, 13], 11, 13).unwrap();
    b.set_outer(rim);
    b.build().expect("c7 two triangles embedding")
}

/// 7-cycle `1..=7` with an apex 8 on the edge 1-2 (triangle plus an 8-face)
/// and a pendant interior vertex 9 on the apex.
pub fn c7_edge_triangle_with_pendant() -> PlaneGraph {
    let rim: Vec<Vertex> = (1..=7).collect();
    let mut b = PlaneBuilder::from_cycle(&rim);
    b.add_path_in(0, 1, &[8], 2).unwrap();
    b.add_bridge(&[8, 5], 8, &[9]).unwrap();
    b.set_outer(rim);
    b.build().expect("c7 edge triangle embedding")
}

/// 8-cycle `1..=8` with an apex 9 on the edge 1-2: one triangle in contact
/// with the outer cycle and one 9-face. The tightest fixture for the
/// outer-face audit under the second rule system.
pub fn c8_edge_triangle() -> PlaneGraph {
    let rim: Vec<Vertex> = (1..=8).collect();
    let mut b = PlaneBuilder::from_cycle(&rim);
    b.add_path_in(0, 1, &[9], 2).unwrap();
    b.set_outer(rim);
    b.build().expect("c8 edge triangle embedding")
}

/// Connected plane graphs (5-60 vertices, outer face designated) exercised
/// by the charge-conservation checks.
pub fn discharging_corpus() -> Vec<(String, PlaneGraph)> {
    let mut out: Vec<(String, PlaneGraph)> = Vec::new();
    for n in 5..=12 {
        out.push((format!("cycle-{n}"), cycle(n)));
    }
    for n in 5..=8 {
        out.push((format!("wheel-{n}"), wheel(n)));
    }
    for (r, c) in [(3, 3), (3, 4), (4, 4), (4, 5), (5, 5), (5, 6), (6, 6), (6, 10)] {
        out.push((format!("grid-{r}x{c}"), grid(r, c)));
    }
    out.push(("bipyramid".into(), triangular_bipyramid()));
    out.push(("octahedron".into(), octahedron()));
    out.push(("cube".into(), cube()));
    out.push(("bad9-apex".into(), bad9_apex()));
    out.push(("bad9-core-triangle".into(), bad9_core_triangle()));
    out.push(("c7-hanging-triangle".into(), c7_hanging_triangle()));
    out.push(("c7-two-hanging-triangles".into(), c7_two_hanging_triangles()));
    out.push(("c7-edge-triangle".into(), c7_edge_triangle_with_pendant()));
    out.push(("c8-edge-triangle".into(), c8_edge_triangle()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::Face;

    fn face_degrees(g: &PlaneGraph) -> Vec<usize> {
        let mut d: Vec<usize> = g.trace_faces().unwrap().iter().map(Face::degree).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn classic_solids_have_the_right_faces() {
        assert_eq!(face_degrees(&octahedron()), vec![3; 8]);
        assert_eq!(face_degrees(&cube()), vec![4; 6]);
        assert_eq!(face_degrees(&triangular_bipyramid()), vec![3; 6]);
        assert_eq!(face_degrees(&wheel(6)), vec![3, 3, 3, 3, 3, 3, 6]);
    }

    #[test]
    fn grids_have_unit_squares() {
        let g = grid(3, 4);
        let mut degs = face_degrees(&g);
        let outer = degs.pop().unwrap();
        assert_eq!(outer, 10);
        assert_eq!(degs, vec![4; 6]);
        assert_eq!(g.outer_face_id().is_ok(), true);
    }

    #[test]
    fn bad9_templates_have_the_forced_structure() {
        let g = bad9_apex();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(face_degrees(&g), vec![3, 6, 6, 9]);

        let g = bad9_core_triangle();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(face_degrees(&g), vec![3, 6, 6, 6, 9]);
    }

    #[test]
    fn extension_fixtures_satisfy_the_cycle_and_triangle_hypotheses() {
        for (g, triangles) in [
            (c7_hanging_triangle(), 1usize),
            (c7_two_hanging_triangles(), 2),
            (c7_edge_triangle_with_pendant(), 1),
        ] {
            for k in 4..=6 {
                assert!(g.cycles_of_length(k).unwrap().is_empty(), "{k}-cycle found");
            }
            assert_eq!(g.cycles_of_length(3).unwrap().len(), triangles);
            let d = g.triangle_distance();
            assert!(d.is_none() || d.unwrap() >= 2);
            assert_eq!(g.outer_cycle().unwrap().len(), 7);
        }
    }

    #[test]
    fn corpus_is_connected_and_in_size_range() {
        let corpus = discharging_corpus();
        assert!(corpus.len() >= 20);
        for (name, g) in corpus {
            assert!(g.is_connected(), "{name}");
            assert!((5..=60).contains(&g.vertex_count()), "{name}");
            assert!(g.outer_face_id().is_ok(), "{name}");
        }
    }
}
