use std::cmp::Ordering;

use crate::error::{bail_arg, Result};
use crate::geometry::{geometric_graph, miniball_unchecked, PointCloud};

/// Largest `max_dim` accepted without [`build_cech_filtration_forced`].
pub const DEFAULT_DIM_CAP: usize = 4;

/// Relative gap under which a simplex's ball radius is identified with the
/// largest value among its facets.
const TIE_REL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    /// Filtration value: radius of the smallest enclosing ball.
    pub value: f64,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Simplices of a Čech filtration up to a dimension cap, sorted by
/// `(value, dimension, vertices)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    vertex_count: usize,
    max_dim: usize,
    simplices: Vec<Simplex>,
}

impl FilteredComplex {
    /// Builds a complex from arbitrary simplices, sorting them into filtration
    /// order and checking that faces are present and enter no later than their
    /// cofaces.
    pub fn from_simplices(
        vertex_count: usize,
        max_dim: usize,
        mut simplices: Vec<Simplex>,
    ) -> Result<Self> {
        for s in &mut simplices {
            s.vertices.sort_unstable();
            if s.vertices.is_empty() || s.vertices.len() > max_dim + 1 {
                bail_arg!(
                    "simplex {:?} violates the dimension cap {max_dim}",
                    s.vertices
                );
            }
            if s.vertices.windows(2).any(|w| w[0] == w[1])
                || s.vertices.iter().any(|&v| v >= vertex_count)
            {
                bail_arg!(
                    "simplex {:?} has repeated or out-of-range vertices",
                    s.vertices
                );
            }
            if !(s.value >= 0.0) || !s.value.is_finite() {
                bail_arg!("simplex {:?} has invalid value {}", s.vertices, s.value);
            }
            if s.vertices.len() == 1 && s.value != 0.0 {
                bail_arg!("vertex {:?} must enter at 0", s.vertices);
            }
        }
        simplices.sort_by(filtration_order);
        let complex = Self {
            vertex_count,
            max_dim,
            simplices,
        };
        let lookup = complex.lookup();
        if lookup.has_duplicates() {
            bail_arg!("duplicate simplices");
        }
        for s in &complex.simplices {
            if s.vertices.len() < 2 {
                continue;
            }
            for face in facets(&s.vertices) {
                match lookup.get(&face) {
                    Some(i) if complex.simplices[i].value <= s.value => {}
                    Some(_) => bail_arg!("face {face:?} enters after its coface {:?}", s.vertices),
                    None => bail_arg!("face {face:?} of {:?} is missing", s.vertices),
                }
            }
        }
        Ok(complex)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Lookup of simplices by vertex list.
    pub(crate) fn lookup(&self) -> SimplexLookup<'_> {
        let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); self.max_dim + 1];
        for (i, s) in self.simplices.iter().enumerate() {
            by_dim[s.dim()].push(i);
        }
        for list in &mut by_dim {
            list.sort_unstable_by(|&a, &b| {
                self.simplices[a].vertices.cmp(&self.simplices[b].vertices)
            });
        }
        SimplexLookup {
            simplices: &self.simplices,
            by_dim,
        }
    }
}

/// Positions of a complex's simplices, sorted lexicographically per dimension.
pub(crate) struct SimplexLookup<'a> {
    simplices: &'a [Simplex],
    by_dim: Vec<Vec<usize>>,
}

impl SimplexLookup<'_> {
    pub(crate) fn get(&self, vertices: &[usize]) -> Option<usize> {
        let list = self.by_dim.get(vertices.len().checked_sub(1)?)?;
        list.binary_search_by(|&i| self.simplices[i].vertices.as_slice().cmp(vertices))
            .ok()
            .map(|k| list[k])
    }

    fn has_duplicates(&self) -> bool {
        self.by_dim.iter().any(|list| {
            list.windows(2)
                .any(|w| self.simplices[w[0]].vertices == self.simplices[w[1]].vertices)
        })
    }
}

/// Writes into `out` the facet of the sorted simplex `vertices` that omits
/// position `skip`.
pub(crate) fn facet_into(vertices: &[usize], skip: usize, out: &mut Vec<usize>) {
    out.clear();
    out.extend(vertices[..skip].iter().chain(&vertices[skip + 1..]));
}

fn filtration_order(a: &Simplex, b: &Simplex) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}

/// The facets of a sorted simplex, each obtained by dropping one vertex; the
/// i-th facet omits vertex i.
pub(crate) fn facets(vertices: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..vertices.len()).map(move |skip| {
        vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// Čech filtration of `points` truncated at radius `r_max` and dimension
/// `max_dim`. Each simplex is valued at the radius of its smallest enclosing
/// ball.
pub fn build_cech_filtration(
    points: &PointCloud,
    r_max: f64,
    max_dim: usize,
) -> Result<FilteredComplex> {
    if max_dim > DEFAULT_DIM_CAP {
        bail_arg!(
            "max_dim {max_dim} exceeds the cap {DEFAULT_DIM_CAP}; use build_cech_filtration_forced"
        );
    }
    build_cech_filtration_forced(points, r_max, max_dim)
}

/// As [`build_cech_filtration`], without the dimension cap.
pub fn build_cech_filtration_forced(
    points: &PointCloud,
    r_max: f64,
    max_dim: usize,
) -> Result<FilteredComplex> {
    if !(r_max > 0.0) || !r_max.is_finite() {
        bail_arg!("r_max must be positive and finite, got {r_max}");
    }
    Ok(cech_filtration(points, r_max, max_dim))
}

/// Unchecked builder; also accepts `r_max == 0`, where only coincident points
/// span edges.
pub(crate) fn cech_filtration(points: &PointCloud, r_max: f64, max_dim: usize) -> FilteredComplex {
    let n = points.len();
    let mut simplices: Vec<Simplex> = (0..n)
        .map(|v| Simplex {
            vertices: vec![v],
            value: 0.0,
        })
        .collect();
    if max_dim >= 1 && n >= 2 {
        // a simplex with ball radius ≤ r_max has all pairwise distances ≤ 2 r_max
        let graph = geometric_graph(points, 2.0 * r_max).expect("scale checked by caller");
        let adjacency = graph.adjacency();
        let mut layer: Vec<Simplex> = Vec::new();
        for &(i, j) in graph.edges() {
            let value = 0.5 * crate::geometry::dist(points.point(i), points.point(j));
            if value <= r_max {
                layer.push(Simplex {
                    vertices: vec![i, j],
                    value,
                });
            }
        }
        for _dim in 2..=max_dim {
            if layer.is_empty() {
                break;
            }
            // `layer` is in lexicographic order, and so is `next`
            let mut next: Vec<Simplex> = Vec::new();
            let mut coords: Vec<&[f64]> = Vec::new();
            let mut face = Vec::new();
            for s in &layer {
                let last = *s.vertices.last().unwrap();
                'candidates: for &w in adjacency[last].iter().filter(|&&w| w > last) {
                    if !s
                        .vertices
                        .iter()
                        .all(|v| adjacency[*v].binary_search(&w).is_ok())
                    {
                        continue;
                    }
                    let mut vertices = s.vertices.clone();
                    vertices.push(w);
                    let mut facet_max = s.value;
                    for skip in 0..vertices.len() - 1 {
                        facet_into(&vertices, skip, &mut face);
                        match layer.binary_search_by(|t| t.vertices.as_slice().cmp(&face)) {
                            Ok(k) => facet_max = facet_max.max(layer[k].value),
                            Err(_) => continue 'candidates,
                        }
                    }
                    coords.clear();
                    coords.extend(vertices.iter().map(|&v| points.point(v)));
                    let radius = miniball_unchecked(&coords).radius;
                    let value = if radius <= facet_max * (1.0 + TIE_REL) {
                        facet_max
                    } else {
                        radius
                    };
                    if value <= r_max {
                        next.push(Simplex { vertices, value });
                    }
                }
            }
            simplices.append(&mut layer);
            layer = next;
        }
        simplices.append(&mut layer);
    }
    simplices.sort_by(filtration_order);
    FilteredComplex {
        vertex_count: n,
        max_dim,
        simplices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PointCloud {
        PointCloud::from_points(2, &[[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]).unwrap()
    }

    #[test]
    fn equilateral_triangle_values() {
        let k = build_cech_filtration(&triangle(), 1.0, 2).unwrap();
        let values: Vec<(usize, f64)> = k.simplices().iter().map(|s| (s.dim(), s.value)).collect();
        assert_eq!(values.len(), 7);
        assert!(values[..3].iter().all(|&(d, v)| d == 0 && v == 0.0));
        assert!(values[3..6]
            .iter()
            .all(|&(d, v)| d == 1 && (v - 0.5).abs() < 1e-12));
        assert_eq!(values[6].0, 2);
        assert!((values[6].1 - 1.0 / 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn edge_at_half_distance() {
        let p = PointCloud::from_points(1, &[[0.0], [2.0]]).unwrap();
        let k = build_cech_filtration(&p, 1.0, 1).unwrap();
        assert_eq!(
            k.simplices().last().unwrap(),
            &Simplex {
                vertices: vec![0, 1],
                value: 1.0
            }
        );
        let k = build_cech_filtration(&p, 0.9, 1).unwrap();
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn argument_errors() {
        let p = triangle();
        assert!(build_cech_filtration(&p, 0.0, 1).is_err());
        assert!(build_cech_filtration(&p, -1.0, 1).is_err());
        assert!(build_cech_filtration(&p, 1.0, DEFAULT_DIM_CAP + 1).is_err());
        assert!(build_cech_filtration_forced(&p, 1.0, DEFAULT_DIM_CAP + 1).is_ok());
    }

    #[test]
    fn from_simplices_validates() {
        let s = |v: &[usize], value| Simplex {
            vertices: v.to_vec(),
            value,
        };
        assert!(FilteredComplex::from_simplices(
            2,
            1,
            vec![s(&[0], 0.0), s(&[1], 0.0), s(&[0, 1], 1.0)]
        )
        .is_ok());
        assert!(
            FilteredComplex::from_simplices(2, 1, vec![s(&[0], 0.0), s(&[0, 1], 1.0)]).is_err()
        );
        assert!(FilteredComplex::from_simplices(
            2,
            0,
            vec![s(&[0], 0.0), s(&[1], 0.0), s(&[0, 1], 1.0)]
        )
        .is_err());
        assert!(FilteredComplex::from_simplices(1, 1, vec![s(&[0], 0.5)]).is_err());
    }
}
