//! Translations and permutation groups of a loop.
//!
//! The multiplication group is generated by all left and right translations;
//! the inner mapping group by the mappings
//! `T(x) = L^-1(x)R(x)`, `R(x,y) = R^-1(xy)R(y)R(x)`, `L(x,y) = L^-1(xy)L(x)L(y)`,
//! and coincides with the stabilizer of the identity inside the
//! multiplication group. Closure is exact breadth-first enumeration with a
//! deterministic element order; there is no stabilizer-chain machinery because
//! carrier orders stay small.

use crate::cayley::{CayleyLoop, Elem};
use crate::error::{LoopError, Result};
use std::collections::HashSet;

/// Cap on the element count of a permutation-group closure.
pub const GROUP_CAP: usize = 1_000_000;

/// A bijection of the carrier `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn new(images: Vec<u16>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if (v as usize) >= n || seen[v as usize] {
                return Err(LoopError::InvalidArgument(
                    "images are not a permutation".into(),
                ));
            }
            seen[v as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn id(n: usize) -> Perm {
        Perm {
            images: (0..n as u16).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        Elem(self.images[x.index()])
    }

    #[inline]
    pub(crate) fn apply_idx(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self` after `other`: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&v| self.images[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u16;
        }
        Perm { images }
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }
}

/// Provenance of a generator permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenTag {
    /// `L(x): y -> xy`
    LeftMul(Elem),
    /// `R(x): y -> yx`
    RightMul(Elem),
    /// `T(x): z -> x \ (zx)`
    InnerT(Elem),
    /// `R(x,y): z -> ((zx)y) / (xy)`
    InnerR(Elem, Elem),
    /// `L(x,y): z -> (xy) \ (x(yz))`
    InnerL(Elem, Elem),
    /// Caller-supplied permutation.
    Other,
}

impl std::fmt::Display for GenTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenTag::LeftMul(x) => write!(f, "L({})", x),
            GenTag::RightMul(x) => write!(f, "R({})", x),
            GenTag::InnerT(x) => write!(f, "T({})", x),
            GenTag::InnerR(x, y) => write!(f, "R({},{})", x, y),
            GenTag::InnerL(x, y) => write!(f, "L({},{})", x, y),
            GenTag::Other => write!(f, "gen"),
        }
    }
}

/// A permutation group given by exact closure of a generating set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<(Perm, GenTag)>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in deterministic discovery order; the identity comes first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[(Perm, GenTag)] {
        &self.generators
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.iter().any(|q| q == p)
    }

    /// Elements fixing the given point.
    pub fn stabilizer(&self, x: Elem) -> Vec<&Perm> {
        self.elements
            .iter()
            .filter(|p| p.apply(x) == x)
            .collect()
    }
}

/// `L(x): y -> xy`.
pub fn left_translation(q: &CayleyLoop, x: Elem) -> Perm {
    Perm {
        images: (0..q.order()).map(|y| q.mul_idx(x.index(), y) as u16).collect(),
    }
}

/// `R(x): y -> yx`.
pub fn right_translation(q: &CayleyLoop, x: Elem) -> Perm {
    Perm {
        images: (0..q.order()).map(|y| q.mul_idx(y, x.index()) as u16).collect(),
    }
}

/// `T(x) = L^-1(x) R(x): z -> x \ (zx)`.
pub fn inner_t(q: &CayleyLoop, x: Elem) -> Perm {
    let xi = x.index();
    Perm {
        images: (0..q.order())
            .map(|z| q.ldiv_idx(xi, q.mul_idx(z, xi)) as u16)
            .collect(),
    }
}

/// `R(x,y) = R^-1(xy) R(y) R(x): z -> ((zx)y) / (xy)`.
pub fn inner_r(q: &CayleyLoop, x: Elem, y: Elem) -> Perm {
    let (xi, yi) = (x.index(), y.index());
    let xy = q.mul_idx(xi, yi);
    Perm {
        images: (0..q.order())
            .map(|z| q.rdiv_idx(q.mul_idx(q.mul_idx(z, xi), yi), xy) as u16)
            .collect(),
    }
}

/// `L(x,y) = L^-1(xy) L(x) L(y): z -> (xy) \ (x(yz))`.
pub fn inner_l(q: &CayleyLoop, x: Elem, y: Elem) -> Perm {
    let (xi, yi) = (x.index(), y.index());
    let xy = q.mul_idx(xi, yi);
    Perm {
        images: (0..q.order())
            .map(|z| q.ldiv_idx(xy, q.mul_idx(xi, q.mul_idx(yi, z))) as u16)
            .collect(),
    }
}

/// Tagged generating set of the inner mapping group: all `T(x)`, `R(x,y)`, `L(x,y)`.
pub fn inner_generators(q: &CayleyLoop) -> Vec<(Perm, GenTag)> {
    let mut gens = Vec::new();
    for x in q.elems() {
        gens.push((inner_t(q, x), GenTag::InnerT(x)));
    }
    for x in q.elems() {
        for y in q.elems() {
            gens.push((inner_r(q, x, y), GenTag::InnerR(x, y)));
            gens.push((inner_l(q, x, y), GenTag::InnerL(x, y)));
        }
    }
    gens
}

/// Exact closure of a generating set under composition (and hence inversion,
/// since the closure of a finite set of bijections is a group).
///
/// Elements appear in breadth-first discovery order starting from the
/// identity, with each frontier batch sorted lexicographically by images, so
/// the result is deterministic.
pub fn close_group(gens: Vec<(Perm, GenTag)>) -> Result<PermGroup> {
    close_group_capped(gens, GROUP_CAP)
}

pub fn close_group_capped(gens: Vec<(Perm, GenTag)>, cap: usize) -> Result<PermGroup> {
    let degree = match gens.first() {
        Some((p, _)) => p.degree(),
        None => {
            return Err(LoopError::InvalidArgument(
                "cannot close an empty generating set of unknown degree".into(),
            ))
        }
    };
    for (p, _) in &gens {
        if p.degree() != degree {
            return Err(LoopError::InvalidArgument(
                "generators have mismatched degrees".into(),
            ));
        }
    }

    let id = Perm::id(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut elements = vec![id.clone()];
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut batch: Vec<Perm> = Vec::new();
        for f in &frontier {
            for (g, _) in &gens {
                let h = g.compose(f);
                if !seen.contains(&h) {
                    seen.insert(h.clone());
                    batch.push(h);
                }
            }
        }
        batch.sort();
        batch.dedup();
        if elements.len() + batch.len() > cap {
            return Err(LoopError::GroupCap { cap });
        }
        elements.extend(batch.iter().cloned());
        frontier = batch;
    }
    Ok(PermGroup {
        degree,
        elements,
        generators: gens,
    })
}

/// The multiplication group, generated by all translations `L(x)`, `R(x)`.
pub fn multiplication_group(q: &CayleyLoop) -> Result<PermGroup> {
    let mut gens = Vec::with_capacity(2 * q.order());
    for x in q.elems() {
        gens.push((left_translation(q, x), GenTag::LeftMul(x)));
        gens.push((right_translation(q, x), GenTag::RightMul(x)));
    }
    close_group(gens)
}

/// The inner mapping group, generated by all `T(x)`, `R(x,y)`, `L(x,y)`.
///
/// Also re-derives it as the stabilizer of the identity inside the
/// multiplication group and reports any discrepancy as an internal error.
pub fn inner_mapping_group(q: &CayleyLoop) -> Result<PermGroup> {
    let inner = close_group(inner_generators(q))?;
    let mult = multiplication_group(q)?;
    let stab: HashSet<&Perm> = mult
        .elements()
        .iter()
        .filter(|p| p.apply(q.identity()) == q.identity())
        .collect();
    if stab.len() != inner.len() || !inner.elements().iter().all(|p| stab.contains(p)) {
        return Err(LoopError::Internal(format!(
            "inner mapping group ({}) differs from the identity stabilizer ({}) in the multiplication group",
            inner.len(),
            stab.len()
        )));
    }
    Ok(inner)
}

/// True when `p(xy) = p(x)p(y)` for all `x, y`.
pub fn is_automorphism(q: &CayleyLoop, p: &Perm) -> bool {
    if p.degree() != q.order() {
        return false;
    }
    for x in 0..q.order() {
        for y in 0..q.order() {
            if p.apply_idx(q.mul_idx(x, y)) != q.mul_idx(p.apply_idx(x), p.apply_idx(y)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn left_translation_of_identity_is_identity_perm() {
        let q = catalog::cyclic(5);
        assert!(left_translation(&q, q.identity()).is_identity());
        assert!(right_translation(&q, q.identity()).is_identity());
    }

    #[test]
    fn cyclic_left_translation_rotates() {
        let q = catalog::cyclic(3);
        let p = left_translation(&q, q.elem(1).unwrap());
        assert_eq!(p.images(), &[1, 2, 0]);
    }

    #[test]
    fn inner_maps_fix_identity() {
        for q in [catalog::s3(), catalog::m_s3_2(), catalog::o16()] {
            let e = q.identity();
            for (p, tag) in inner_generators(&q) {
                assert_eq!(p.apply(e), e, "{} moved the identity", tag);
            }
        }
    }

    #[test]
    fn abelian_inner_t_is_trivial() {
        let q = catalog::cyclic(6);
        for x in q.elems() {
            assert!(inner_t(&q, x).is_identity());
        }
    }

    #[test]
    fn group_inner_r_is_trivial() {
        let q = catalog::s3();
        for x in q.elems() {
            for y in q.elems() {
                assert!(inner_r(&q, x, y).is_identity());
                assert!(inner_l(&q, x, y).is_identity());
            }
        }
    }

    #[test]
    fn chein_loop_has_nontrivial_inner_r() {
        let q = catalog::m_s3_2();
        let found = q
            .elems()
            .any(|x| q.elems().any(|y| !inner_r(&q, x, y).is_identity()));
        assert!(found);
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let gens = vec![(Perm::id(4), GenTag::Other)];
        let g = close_group(gens).unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn closure_of_three_cycle() {
        let gens = vec![(Perm::new(vec![1, 2, 0]).unwrap(), GenTag::Other)];
        let g = close_group(gens).unwrap();
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let gens = vec![(Perm::new(vec![1, 2, 0]).unwrap(), GenTag::Other)];
        assert!(matches!(
            close_group_capped(gens, 2),
            Err(LoopError::GroupCap { cap: 2 })
        ));
    }

    #[test]
    fn multiplication_group_of_cyclic_three() {
        let q = catalog::cyclic(3);
        let g = multiplication_group(&q).unwrap();
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn inner_group_of_abelian_is_trivial() {
        let q = catalog::cyclic(6);
        let g = inner_mapping_group(&q).unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn inner_group_of_s3_is_conjugation() {
        let q = catalog::s3();
        let g = inner_mapping_group(&q).unwrap();
        assert_eq!(g.len(), 6);
        // Every element must be a conjugation map z -> g^-1 (zg).
        for p in g.elements() {
            let matches_conj = q.elems().any(|c| {
                q.elems().all(|z| {
                    let zg = q.mul(z, c);
                    let conj = q.ldiv(c, zg);
                    p.apply(z) == conj
                })
            });
            assert!(matches_conj);
        }
    }

    #[test]
    fn chein_loop_inner_group_is_nontrivial() {
        let q = catalog::m_s3_2();
        let g = inner_mapping_group(&q).unwrap();
        assert!(g.len() > 1);
    }

    #[test]
    fn ip_loop_translations_invert() {
        let q = catalog::m_s3_2();
        let e = q.identity();
        for x in q.elems() {
            let xinv = q.rdiv(e, x);
            let p = left_translation(&q, x).compose(&left_translation(&q, xinv));
            assert!(p.is_identity());
        }
    }

    #[test]
    fn automorphism_checks() {
        let q = catalog::cyclic(3);
        assert!(is_automorphism(&q, &Perm::id(3)));
        // x -> 2x is an automorphism of Z3.
        assert!(is_automorphism(&q, &Perm::new(vec![0, 2, 1]).unwrap()));
        // A transposition moving the identity is not.
        assert!(!is_automorphism(&q, &Perm::new(vec![1, 0, 2]).unwrap()));
    }
}
