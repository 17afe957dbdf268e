//! Column reduction of the filtered boundary matrix over Z/pZ.
//!
//! Columns are reduced one dimension at a time from the top down. A column
//! whose reduced pivot is row `i` makes simplex `i` a creator, so column `i`
//! is known to reduce to zero and is skipped (clearing).

use super::diagram::{Interval, PersistenceDiagram};
use super::field::FieldSpec;
use super::filtration::{facet_into, FilteredComplex};

type Column = Vec<(usize, u32)>;

/// `target += factor * source`, both sorted by row.
fn axpy(field: &FieldSpec, target: &Column, factor: u32, source: &Column) -> Column {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut a, mut b) = (target.iter().peekable(), source.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some(&&(ra, ca)), Some(&&(rb, cb))) => {
                if ra < rb {
                    out.push((ra, ca));
                    a.next();
                } else if rb < ra {
                    out.push((rb, field.mul(factor, cb)));
                    b.next();
                } else {
                    let c = field.add(ca, field.mul(factor, cb));
                    if c != 0 {
                        out.push((ra, c));
                    }
                    a.next();
                    b.next();
                }
            }
            (Some(&&x), None) => {
                out.push(x);
                a.next();
            }
            (None, Some(&&(rb, cb))) => {
                out.push((rb, field.mul(factor, cb)));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

/// Persistence diagram of `complex` with coefficients in `field`.
///
/// Zero-length intervals are dropped. Classes never killed within the
/// complex get an infinite death.
pub fn compute_persistence(complex: &FilteredComplex, field: FieldSpec) -> PersistenceDiagram {
    let simplices = complex.simplices();
    let n = simplices.len();
    let lookup = complex.lookup();
    let mut face = Vec::new();

    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); complex.max_dim() + 1];
    for (i, s) in simplices.iter().enumerate() {
        by_dim[s.dim()].push(i);
    }

    const NONE: usize = usize::MAX;
    let mut pivot_col_of_row = vec![NONE; n];
    let mut reduced: Vec<Option<Column>> = vec![None; n];
    let mut cleared = vec![false; n];
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    for q in (1..=complex.max_dim()).rev() {
        for &j in &by_dim[q] {
            if cleared[j] {
                continue;
            }
            let vertices = &simplices[j].vertices;
            let mut col: Column = (0..vertices.len())
                .map(|i| {
                    facet_into(vertices, i, &mut face);
                    (lookup.get(&face).expect("faces are present"), field.sign(i))
                })
                .collect();
            col.sort_unstable_by_key(|&(r, _)| r);
            while let Some(&(low, c)) = col.last() {
                let other = pivot_col_of_row[low];
                if other == NONE {
                    pivot_col_of_row[low] = j;
                    cleared[low] = true;
                    pairs.push((low, j));
                    break;
                }
                let source = reduced[other].as_ref().expect("pivot columns are stored");
                let c_other = source.last().unwrap().1;
                let factor = field.neg(field.mul(c, field.inv(c_other)));
                col = axpy(&field, &col, factor, source);
            }
            if !col.is_empty() {
                reduced[j] = Some(col);
            }
        }
    }

    let mut intervals = Vec::new();
    for &(birth, death) in &pairs {
        let (b, d) = (simplices[birth].value, simplices[death].value);
        if b < d {
            intervals.push(Interval {
                dim: simplices[birth].dim(),
                birth: b,
                death: d,
            });
        }
    }
    for (i, s) in simplices.iter().enumerate() {
        if !cleared[i] && reduced[i].is_none() {
            intervals.push(Interval {
                dim: s.dim(),
                birth: s.value,
                death: f64::INFINITY,
            });
        }
    }
    PersistenceDiagram::new(intervals, field)
}
