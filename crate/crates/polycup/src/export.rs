//! Wavefront OBJ output of a complex and a set of 1-cycles.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use polycup_core::{CellComplex, CellId, Chain};

/// Renders `x` as OBJ text: a `v` line per vertex in id order, an `f` line
/// per 2-cell listing its boundary cycle, then for each cycle a comment
/// header and an `l a b` line per edge. Indices are 1-based.
///
/// Vertices without coordinates are written at the origin.
pub fn obj_string(x: &CellComplex, cycles: &[Chain]) -> String {
    let mut out = String::new();
    let mut index: BTreeMap<CellId, usize> = BTreeMap::new();
    for v in x.cells_of_dim(0) {
        let [a, b, c] = x.coords(v).unwrap_or([0, 0, 0]);
        index.insert(v, index.len() + 1);
        writeln!(out, "v {a} {b} {c}").unwrap();
    }
    for p in x.cells_of_dim(2) {
        let verts = &x.cell(p).vertices;
        if verts.is_empty() {
            continue;
        }
        out.push('f');
        for v in verts {
            write!(out, " {}", index[v]).unwrap();
        }
        out.push('\n');
    }
    for (n, cycle) in cycles.iter().enumerate() {
        writeln!(out, "# cycle {n}").unwrap();
        for e in cycle.iter().filter(|&e| x.is_alive(e) && x.dim(e) == 1) {
            let b = &x.cell(e).boundary;
            writeln!(out, "l {} {}", index[&b[0]], index[&b[1]]).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use polycup_core::{boundary_surface, fixtures};

    #[test]
    fn cube_surface() {
        let s = boundary_surface(&fixtures::solid_box([1, 1, 1]));
        let obj = obj_string(&s, &[]);
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 8);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 6);
        assert!(obj.lines().all(|l| !l.starts_with('l')));
        assert!(obj.starts_with("v 0 0 0\n"));
    }
}
