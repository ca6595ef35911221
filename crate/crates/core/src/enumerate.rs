//! Exhaustive enumeration at desk scale: all loop tables of small order (as
//! reduced Latin squares) and all subloops of a small loop.

use crate::calculus::{normality_witness, subloop_generated, NormalSubloop, Subloop};
use crate::cayley::{CayleyLoop, Elem};
use crate::error::{LoopError, Result};
use std::collections::BTreeSet;

/// Largest order the loop enumeration accepts.
pub const ENUM_ORDER_CAP: usize = 5;

/// Largest loop order the subloop enumeration accepts.
pub const SUBLOOP_ENUM_CAP: usize = 16;

/// All loops of order `n` with identity 0, i.e. all reduced Latin squares
/// (first row and column in natural order), by backtracking. Counts by
/// order: 1, 1, 1, 4, 56.
pub fn enumerate_loops(n: usize) -> Result<Vec<CayleyLoop>> {
    if n == 0 {
        return Err(LoopError::InvalidArgument("order must be positive".into()));
    }
    if n > ENUM_ORDER_CAP {
        return Err(LoopError::SizeCap {
            requested: n,
            cap: ENUM_ORDER_CAP,
        });
    }
    let mut mul = vec![0u16; n * n];
    for j in 0..n {
        mul[j] = j as u16;
    }
    for i in 0..n {
        mul[i * n] = i as u16;
    }
    let mut row_used = vec![vec![false; n]; n];
    let mut col_used = vec![vec![false; n]; n];
    for j in 0..n {
        row_used[0][j] = true;
        col_used[j][j] = true;
    }
    for i in 1..n {
        row_used[i][i] = true;
        col_used[0][i] = true;
    }

    let mut out = Vec::new();
    // Cells (i, j) with i, j >= 1, row-major.
    let cells: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (1..n).map(move |j| (i, j)))
        .collect();
    fn fill(
        pos: usize,
        cells: &[(usize, usize)],
        n: usize,
        mul: &mut Vec<u16>,
        row_used: &mut Vec<Vec<bool>>,
        col_used: &mut Vec<Vec<bool>>,
        out: &mut Vec<CayleyLoop>,
    ) {
        if pos == cells.len() {
            let q = CayleyLoop::from_mul(n, mul.clone(), None)
                .expect("backtracking maintains the loop constraints");
            out.push(q);
            return;
        }
        let (i, j) = cells[pos];
        for v in 0..n {
            if row_used[i][v] || col_used[j][v] {
                continue;
            }
            row_used[i][v] = true;
            col_used[j][v] = true;
            mul[i * n + j] = v as u16;
            fill(pos + 1, cells, n, mul, row_used, col_used, out);
            row_used[i][v] = false;
            col_used[j][v] = false;
        }
    }
    fill(0, &cells, n, &mut mul, &mut row_used, &mut col_used, &mut out);
    Ok(out)
}

/// All loops of every order up to `n`.
pub fn enumerate_loops_up_to(n: usize) -> Result<Vec<CayleyLoop>> {
    let mut out = Vec::new();
    for k in 1..=n.min(ENUM_ORDER_CAP) {
        out.extend(enumerate_loops(k)?);
    }
    if n > ENUM_ORDER_CAP {
        return Err(LoopError::SizeCap {
            requested: n,
            cap: ENUM_ORDER_CAP,
        });
    }
    Ok(out)
}

/// Every subloop of `q`, found by closing extensions of known subloops one
/// generator at a time. Only for orders up to [`SUBLOOP_ENUM_CAP`].
pub fn enumerate_subloops(q: &CayleyLoop) -> Result<Vec<Subloop>> {
    if q.order() > SUBLOOP_ENUM_CAP {
        return Err(LoopError::SizeCap {
            requested: q.order(),
            cap: SUBLOOP_ENUM_CAP,
        });
    }
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut queue: Vec<Subloop> = vec![subloop_generated(q, &[])];
    seen.insert(queue[0].members().to_vec());
    let mut i = 0;
    while i < queue.len() {
        let h = queue[i].clone();
        i += 1;
        for x in q.elems() {
            if h.contains(x) {
                continue;
            }
            let mut seed = h.members().to_vec();
            seed.push(x);
            let k = subloop_generated(q, &seed);
            if seen.insert(k.members().to_vec()) {
                queue.push(k);
            }
        }
    }
    Ok(queue)
}

/// Every normal subloop of `q`.
pub fn enumerate_normal_subloops(q: &CayleyLoop) -> Result<Vec<NormalSubloop>> {
    Ok(enumerate_subloops(q)?
        .into_iter()
        .filter(|h| normality_witness(q, h).is_none())
        .map(|h| NormalSubloop::verify(q, h).expect("witness-free subloop is normal"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn loop_counts_match_reduced_latin_square_counts() {
        assert_eq!(enumerate_loops(1).unwrap().len(), 1);
        assert_eq!(enumerate_loops(2).unwrap().len(), 1);
        assert_eq!(enumerate_loops(3).unwrap().len(), 1);
        assert_eq!(enumerate_loops(4).unwrap().len(), 4);
        assert_eq!(enumerate_loops(5).unwrap().len(), 56);
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            enumerate_loops(6),
            Err(LoopError::SizeCap { .. })
        ));
    }

    #[test]
    fn enumerated_tables_have_identity_zero() {
        for q in enumerate_loops(5).unwrap() {
            assert_eq!(q.identity().index(), 0);
        }
    }

    #[test]
    fn s3_subloop_lattice() {
        // S3: trivial, three order-2, one order-3, whole = 6 subloops.
        let subs = enumerate_subloops(&catalog::s3()).unwrap();
        assert_eq!(subs.len(), 6);
        let mut sizes: Vec<usize> = subs.iter().map(|h| h.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
        // Normal: trivial, A3, whole.
        let normals = enumerate_normal_subloops(&catalog::s3()).unwrap();
        let mut nsizes: Vec<usize> = normals.iter().map(|h| h.len()).collect();
        nsizes.sort();
        assert_eq!(nsizes, vec![1, 3, 6]);
    }

    #[test]
    fn q8_every_subgroup_is_normal() {
        let subs = enumerate_subloops(&catalog::q8()).unwrap();
        let normals = enumerate_normal_subloops(&catalog::q8()).unwrap();
        assert_eq!(subs.len(), normals.len());
        assert_eq!(subs.len(), 6); // 1, Z2, three Z4, Q8
    }

    #[test]
    fn subloop_enumeration_cap() {
        let q = catalog::direct_product_fixture();
        assert!(q.order() > SUBLOOP_ENUM_CAP);
        assert!(matches!(
            enumerate_subloops(&q),
            Err(LoopError::SizeCap { .. })
        ));
    }
}
