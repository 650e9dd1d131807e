//! Rotation systems with forced rotations and face tracing.
//!
//! Every vertex orders its darts by an integer key, ascending or descending
//! in the positive rotation direction. Dart `2e` and `2e + 1` are the two
//! ends of edge `e`. A face is traced by leaving along a dart, arriving at
//! its partner, and leaving again along the partner's rotation successor.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

/// One end of an edge: the vertex it sits at and its ordering key.
pub type End = (usize, u32);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TracedFace {
    /// Outgoing darts in traversal order, starting from the smallest.
    pub darts: Vec<usize>,
    /// Set for the single face around a vertex with no darts.
    pub isolated_vertex: Option<usize>,
}

impl TracedFace {
    /// Number of edge sides on the boundary.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentEuler {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl ComponentEuler {
    pub fn chi(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

#[derive(Debug, Clone)]
pub struct RotationMap {
    ascending: Vec<bool>,
    dart_vertex: Vec<usize>,
    dart_key: Vec<u32>,
    rotation: Vec<Vec<usize>>,
    position: Vec<usize>,
    faces: Vec<TracedFace>,
    face_of_dart: Vec<usize>,
    isolated_face: Vec<Option<usize>>,
}

impl RotationMap {
    /// `ascending[v]` gives the rotation direction at `v`; keys at one
    /// vertex must be distinct.
    pub fn new(ascending: Vec<bool>, edges: &[[End; 2]]) -> Self {
        let nv = ascending.len();
        let mut dart_vertex = Vec::with_capacity(edges.len() * 2);
        let mut dart_key = Vec::with_capacity(edges.len() * 2);
        for e in edges {
            for &(v, k) in e {
                assert!(v < nv, "edge end at unknown vertex {v}");
                dart_vertex.push(v);
                dart_key.push(k);
            }
        }
        let mut rotation = vec![Vec::new(); nv];
        for (d, &v) in dart_vertex.iter().enumerate() {
            rotation[v].push(d);
        }
        for (v, rot) in rotation.iter_mut().enumerate() {
            rot.sort_by_key(|&d| dart_key[d]);
            debug_assert!(
                rot.windows(2).all(|w| dart_key[w[0]] != dart_key[w[1]]),
                "duplicate key at vertex {v}"
            );
            if !ascending[v] {
                rot.reverse();
            }
        }
        let mut position = vec![0; dart_vertex.len()];
        for rot in &rotation {
            for (i, &d) in rot.iter().enumerate() {
                position[d] = i;
            }
        }
        let mut map = RotationMap {
            ascending,
            dart_vertex,
            dart_key,
            rotation,
            position,
            faces: Vec::new(),
            face_of_dart: Vec::new(),
            isolated_face: vec![None; nv],
        };
        map.trace();
        map
    }

    fn trace(&mut self) {
        let nd = self.dart_vertex.len();
        let mut face_of = vec![usize::MAX; nd];
        let mut faces: Vec<TracedFace> = Vec::new();
        for start in 0..nd {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = faces.len();
                darts.push(d);
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            faces.push(TracedFace {
                darts,
                isolated_vertex: None,
            });
        }
        // order by smallest edge on the boundary; each list already starts
        // at its smallest dart
        let mut order: Vec<usize> = (0..faces.len()).collect();
        order.sort_by_key(|&f| faces[f].darts[0]);
        let mut renumber = vec![0; faces.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let mut sorted: Vec<TracedFace> = order.iter().map(|&f| faces[f].clone()).collect();
        for f in face_of.iter_mut() {
            *f = renumber[*f];
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            if rot.is_empty() {
                self.isolated_face[v] = Some(sorted.len());
                sorted.push(TracedFace {
                    darts: Vec::new(),
                    isolated_vertex: Some(v),
                });
            }
        }
        self.faces = sorted;
        self.face_of_dart = face_of;
    }

    pub fn vertex_count(&self) -> usize {
        self.ascending.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_vertex.len() / 2
    }

    pub fn partner(d: usize) -> usize {
        d ^ 1
    }

    pub fn edge_of(d: usize) -> usize {
        d / 2
    }

    pub fn vertex_of(&self, d: usize) -> usize {
        self.dart_vertex[d]
    }

    pub fn key_of(&self, d: usize) -> u32 {
        self.dart_key[d]
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn succ(&self, d: usize) -> usize {
        let rot = &self.rotation[self.dart_vertex[d]];
        rot[(self.position[d] + 1) % rot.len()]
    }

    pub fn pred(&self, d: usize) -> usize {
        let rot = &self.rotation[self.dart_vertex[d]];
        rot[(self.position[d] + rot.len() - 1) % rot.len()]
    }

    pub fn next_in_face(&self, d: usize) -> usize {
        self.succ(Self::partner(d))
    }

    /// The corner preceding outgoing dart `d`, as `(key before, key of d)`.
    pub fn corner_before(&self, d: usize) -> (u32, u32) {
        (self.dart_key[self.pred(d)], self.dart_key[d])
    }

    pub fn faces(&self) -> &[TracedFace] {
        &self.faces
    }

    pub fn face_of_dart(&self, d: usize) -> usize {
        self.face_of_dart[d]
    }

    /// The first dart strictly after angular position `key` at `v` in the
    /// rotation direction; `None` when `v` has no darts.
    pub fn dart_after(&self, v: usize, key: u32) -> Option<usize> {
        let rot = &self.rotation[v];
        if rot.is_empty() {
            return None;
        }
        let after = |d: &&usize| {
            if self.ascending[v] {
                self.dart_key[**d] > key
            } else {
                self.dart_key[**d] < key
            }
        };
        Some(*rot.iter().find(after).unwrap_or(&rot[0]))
    }

    /// The face containing angular position `key` at vertex `v`.
    pub fn locate(&self, v: usize, key: u32) -> usize {
        match self.dart_after(v, key) {
            Some(d) => self.face_of_dart[d],
            None => self.isolated_face[v].expect("isolated vertex face"),
        }
    }

    /// Faces incident to vertex `v` (one per corner).
    pub fn faces_at(&self, v: usize) -> Vec<usize> {
        match self.isolated_face[v] {
            Some(f) => vec![f],
            None => self.rotation[v]
                .iter()
                .map(|&d| self.face_of_dart[d])
                .collect(),
        }
    }

    /// Component index for every vertex, numbered by smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let nv = self.vertex_count();
        let mut uf = UnionFind::<usize>::new(nv);
        for e in 0..self.edge_count() {
            uf.union(self.dart_vertex[2 * e], self.dart_vertex[2 * e + 1]);
        }
        let mut label = vec![usize::MAX; nv];
        let mut next = 0;
        (0..nv)
            .map(|v| {
                let r = uf.find(v);
                if label[r] == usize::MAX {
                    label[r] = next;
                    next += 1;
                }
                label[r]
            })
            .collect()
    }

    /// V, E, F per connected component.
    pub fn euler_by_component(&self) -> Vec<ComponentEuler> {
        let comp = self.components();
        let n = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![
            ComponentEuler {
                vertices: 0,
                edges: 0,
                faces: 0
            };
            n
        ];
        for &c in &comp {
            out[c].vertices += 1;
        }
        for e in 0..self.edge_count() {
            out[comp[self.dart_vertex[2 * e]]].edges += 1;
        }
        for f in &self.faces {
            let v = match f.isolated_vertex {
                Some(v) => v,
                None => self.dart_vertex[f.darts[0]],
            };
            out[comp[v]].faces += 1;
        }
        out
    }

    /// Every component embeds in a sphere.
    pub fn is_planar(&self) -> bool {
        self.euler_by_component().iter().all(|c| c.chi() == 2)
    }

    /// Vertices visited by a face, one per corner, in traversal order.
    pub fn face_vertices(&self, face: usize) -> Vec<usize> {
        let f = &self.faces[face];
        match f.isolated_vertex {
            Some(v) => vec![v],
            None => f.darts.iter().map(|&d| self.dart_vertex[d]).collect(),
        }
    }
}
