//! Projective and affine planes over GF(q).
//!
//! PG(2,q): points are the 1-dimensional subspaces of GF(q)^3, lines the
//! 2-dimensional ones; q^2+q+1 of each, lines of q+1 points, any two points
//! on exactly one line. A symmetric (q^2+q+1, q+1, 1) design.
//!
//! AG(2,q): points are GF(q)^2, lines the q^2 slope-intercept lines plus q
//! verticals; q^2+q lines of q points. A (q^2, q, 1) design and a partial
//! geometry pg(q-1, q, q).

use super::field::FiniteField;
use super::{DesignError, IncidenceStructure};
use crate::subsets::KSubset;

/// Normalized representatives of the projective plane's points (equally, its
/// lines, by duality): `(1,y,z)`, then `(0,1,z)`, then `(0,0,1)`.
fn projective_triples(q: u32) -> Vec<[u32; 3]> {
    let mut reps = Vec::with_capacity((q * q + q + 1) as usize);
    for y in 0..q {
        for z in 0..q {
            reps.push([1, y, z]);
        }
    }
    for z in 0..q {
        reps.push([0, 1, z]);
    }
    reps.push([0, 0, 1]);
    reps
}

/// The projective plane PG(2,q) as an incidence structure: blocks are lines,
/// points numbered 1..=q^2+q+1 in normalized-representative order.
pub fn projective_plane(q: u32) -> Result<IncidenceStructure, DesignError> {
    let f = FiniteField::new(q)?;
    let reps = projective_triples(q);
    let n_points = reps.len();
    let mut blocks = Vec::with_capacity(n_points);
    for line in &reps {
        let mut elems = Vec::with_capacity(q as usize + 1);
        for (idx, point) in reps.iter().enumerate() {
            let dot = f.add(
                f.add(f.mul(line[0], point[0]), f.mul(line[1], point[1])),
                f.mul(line[2], point[2]),
            );
            if dot == 0 {
                elems.push(idx + 1);
            }
        }
        blocks.push(KSubset::new(n_points, &elems)?);
    }
    IncidenceStructure::new(n_points, blocks)
}

/// The affine plane AG(2,q): point `(x,y)` is numbered `x·q + y + 1`; lines
/// `y = mx + c` in (m,c) order, then verticals `x = c`.
pub fn affine_plane(q: u32) -> Result<IncidenceStructure, DesignError> {
    if q < 2 {
        return Err(DesignError::NotPrimePower { q });
    }
    let f = FiniteField::new(q)?;
    let n_points = (q * q) as usize;
    let point = |x: u32, y: u32| (x * q + y + 1) as usize;
    let mut blocks = Vec::with_capacity((q * q + q) as usize);
    for m in 0..q {
        for c in 0..q {
            let elems: Vec<usize> = (0..q).map(|x| point(x, f.add(f.mul(m, x), c))).collect();
            blocks.push(KSubset::new(n_points, &elems)?);
        }
    }
    for c in 0..q {
        let elems: Vec<usize> = (0..q).map(|y| point(c, y)).collect();
        blocks.push(KSubset::new(n_points, &elems)?);
    }
    IncidenceStructure::new(n_points, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane_shape() {
        let fano = projective_plane(2).unwrap();
        assert_eq!(fano.n_points(), 7);
        assert_eq!(fano.blocks().len(), 7);
        assert!(fano.blocks().iter().all(|b| b.k() == 3));
        // Every pair of points on exactly one line.
        for p in 1..=7usize {
            for r in (p + 1)..=7 {
                let on = fano
                    .blocks()
                    .iter()
                    .filter(|b| b.contains(p) && b.contains(r))
                    .count();
                assert_eq!(on, 1, "pair ({p},{r})");
            }
        }
    }

    #[test]
    fn pg_2_3_shape() {
        let pg = projective_plane(3).unwrap();
        assert_eq!(pg.n_points(), 13);
        assert_eq!(pg.blocks().len(), 13);
        assert!(pg.blocks().iter().all(|b| b.k() == 4));
    }

    #[test]
    fn fano_lines_pairwise_meet_in_one_point() {
        let fano = projective_plane(2).unwrap();
        let blocks = fano.blocks();
        for i in 0..blocks.len() {
            for j in (i + 1)..blocks.len() {
                assert_eq!(blocks[i].intersection_size(&blocks[j]).unwrap(), 1);
            }
        }
    }

    #[test]
    fn ag_2_3_is_sts9() {
        let ag = affine_plane(3).unwrap();
        assert_eq!(ag.n_points(), 9);
        assert_eq!(ag.blocks().len(), 12);
        assert!(ag.blocks().iter().all(|b| b.k() == 3));
    }

    #[test]
    fn affine_line_count_matches_bound() {
        // q^2 + q lines: the size of the resolving set for K(q^2, q).
        for q in [3u32, 4, 5] {
            let ag = affine_plane(q).unwrap();
            assert_eq!(ag.blocks().len() as u32, q * q + q);
        }
    }

    #[test]
    fn invalid_orders_rejected() {
        assert!(projective_plane(6).is_err());
        assert!(affine_plane(1).is_err());
    }
}
