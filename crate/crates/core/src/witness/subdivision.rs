//! Barycentric subdivision of the boundary of the standard simplex.

use std::collections::HashMap;

use crate::geometry::dist;

/// A pure simplicial complex with explicit vertex coordinates.
#[derive(Debug, Clone)]
pub(crate) struct Mesh {
    pub dim: usize,
    pub coords: Vec<Vec<f64>>,
    /// Top simplices as sorted vertex ids.
    pub simplices: Vec<Vec<usize>>,
}

impl Mesh {
    /// ∂Δ for the standard (k+1)-simplex with vertices e_1, …, e_{k+2} in
    /// R^{k+2}: all k-faces.
    pub fn standard_simplex_boundary(k: usize) -> Mesh {
        let n = k + 2;
        let coords = (0..n)
            .map(|i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                e
            })
            .collect();
        let simplices = (0..n)
            .map(|skip| (0..n).filter(|&v| v != skip).collect())
            .collect();
        Mesh {
            dim: n,
            coords,
            simplices,
        }
    }

    /// Largest diameter of any top simplex.
    pub fn max_diameter(&self) -> f64 {
        self.simplices
            .iter()
            .map(|s| {
                let mut best = 0.0f64;
                for (i, &a) in s.iter().enumerate() {
                    for &b in &s[i + 1..] {
                        best = best.max(dist(&self.coords[a], &self.coords[b]));
                    }
                }
                best
            })
            .fold(0.0, f64::max)
    }

    /// One round of barycentric subdivision. Each face's barycenter is
    /// created once, averaging its vertices in id order, so shared faces get
    /// bit-identical coordinates.
    pub fn subdivide(&self) -> Mesh {
        let mut coords: Vec<Vec<f64>> = Vec::new();
        let mut id_of_face: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut barycenter = |face: &mut Vec<usize>, coords: &mut Vec<Vec<f64>>| -> usize {
            face.sort_unstable();
            if let Some(&id) = id_of_face.get(face.as_slice()) {
                return id;
            }
            let mut c = vec![0.0; self.dim];
            for &v in face.iter() {
                for (x, y) in c.iter_mut().zip(&self.coords[v]) {
                    *x += y;
                }
            }
            let w = face.len() as f64;
            c.iter_mut().for_each(|x| *x /= w);
            coords.push(c);
            id_of_face.insert(face.clone(), coords.len() - 1);
            coords.len() - 1
        };
        let mut simplices = Vec::new();
        for s in &self.simplices {
            for perm in permutations(s) {
                // flag v0 ⊂ {v0,v1} ⊂ … ⊂ s
                let mut chain = Vec::with_capacity(perm.len());
                let mut prefix = Vec::with_capacity(perm.len());
                for &v in &perm {
                    prefix.push(v);
                    let mut face = prefix.clone();
                    chain.push(barycenter(&mut face, &mut coords));
                }
                chain.sort_unstable();
                simplices.push(chain);
            }
        }
        Mesh {
            dim: self.dim,
            coords,
            simplices,
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_boundary_subdivision() {
        let m = Mesh::standard_simplex_boundary(1);
        assert_eq!((m.coords.len(), m.simplices.len()), (3, 3));
        assert!((m.max_diameter() - 2f64.sqrt()).abs() < 1e-15);
        let m1 = m.subdivide();
        // each edge splits in two; vertices: 3 originals + 3 midpoints
        assert_eq!((m1.coords.len(), m1.simplices.len()), (6, 6));
        assert!((m1.max_diameter() - 2f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn tetrahedron_boundary_counts() {
        let m = Mesh::standard_simplex_boundary(2).subdivide();
        // 4 triangles × 3! = 24; vertices 4 + 6 + 4 = 14 (Euler: 14 - 36 + 24 = 2)
        assert_eq!(m.simplices.len(), 24);
        assert_eq!(m.coords.len(), 14);
    }
}
