//! Commutator-associator calculus on a finite loop.
//!
//! The three associator conventions in use:
//!
//! ```text
//! alpha(a,b,c): the solution of  ab*c = (a*x)(bc),   x = a \ ((ab*c)/(bc))
//! beta(a,b,c):  the solution of  c*ba = (cb)(x*a),   x = ((cb) \ (c*ba)) / a
//! [a,b,c]:      defined by       ab*c = (a*bc)[a,b,c]
//! ```
//!
//! and the two commutators `(a,b)` from `ab = b(a(a,b))` and `[a,b]` from
//! `ab = (ba)[a,b]`. Subloops are plain sorted member sets; a normal subloop
//! carries a verification certificate that downstream operations re-check
//! rather than trust.

use crate::cayley::{CayleyLoop, Elem};
use crate::error::{LoopError, Result};
use crate::mappings::{inner_generators, inner_l, inner_r, inner_t};

/// `(a,b)`, the solution of `ab = b(a * (a,b))`.
#[inline]
pub fn commutator_paren(q: &CayleyLoop, a: Elem, b: Elem) -> Elem {
    let ab = q.mul(a, b);
    q.ldiv(a, q.ldiv(b, ab))
}

/// `[a,b]`, the solution of `ab = (ba)[a,b]`.
#[inline]
pub fn commutator_bracket(q: &CayleyLoop, a: Elem, b: Elem) -> Elem {
    q.ldiv(q.mul(b, a), q.mul(a, b))
}

/// `alpha(a,b,c) = a \ ((ab*c)/(bc))`.
#[inline]
pub fn assoc_alpha(q: &CayleyLoop, a: Elem, b: Elem, c: Elem) -> Elem {
    let lhs = q.mul(q.mul(a, b), c);
    q.ldiv(a, q.rdiv(lhs, q.mul(b, c)))
}

/// `beta(a,b,c) = ((cb) \ (c*ba)) / a`.
#[inline]
pub fn assoc_beta(q: &CayleyLoop, a: Elem, b: Elem, c: Elem) -> Elem {
    let lhs = q.mul(c, q.mul(b, a));
    q.rdiv(q.ldiv(q.mul(c, b), lhs), a)
}

/// `[a,b,c] = (a*bc) \ (ab*c)`.
#[inline]
pub fn assoc_bracket(q: &CayleyLoop, a: Elem, b: Elem, c: Elem) -> Elem {
    q.ldiv(q.mul(a, q.mul(b, c)), q.mul(q.mul(a, b), c))
}

/// A subloop of a specific loop, as a sorted member set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subloop {
    parent_order: usize,
    members: Vec<Elem>,
}

impl Subloop {
    /// Wraps a member set after checking closure under `*`, `\`, `/` and
    /// membership of the identity.
    pub fn new(q: &CayleyLoop, mut members: Vec<Elem>) -> Result<Subloop> {
        members.sort();
        members.dedup();
        let mut in_set = vec![false; q.order()];
        for &m in &members {
            if m.index() >= q.order() {
                return Err(LoopError::ElemRange {
                    index: m.index(),
                    order: q.order(),
                });
            }
            in_set[m.index()] = true;
        }
        if !in_set[q.identity().index()] {
            return Err(LoopError::InvalidArgument(
                "subloop does not contain the identity".into(),
            ));
        }
        for &a in &members {
            for &b in &members {
                for v in [q.mul(a, b), q.ldiv(a, b), q.rdiv(a, b)] {
                    if !in_set[v.index()] {
                        return Err(LoopError::InvalidArgument(format!(
                            "member set is not closed: {} and {} produce {}",
                            a, b, v
                        )));
                    }
                }
            }
        }
        Ok(Subloop {
            parent_order: q.order(),
            members,
        })
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }

    /// Membership bitmap over the parent carrier.
    pub fn bitmap(&self) -> Vec<bool> {
        let mut map = vec![false; self.parent_order];
        for &m in &self.members {
            map[m.index()] = true;
        }
        map
    }

    /// The induced table on the members, reindexed to `0..len`, together with
    /// the map from member position to parent element.
    pub fn induced_table(&self, q: &CayleyLoop) -> Result<(CayleyLoop, Vec<Elem>)> {
        assert_eq!(self.parent_order, q.order(), "subloop used with a different loop");
        let k = self.members.len();
        let pos = |e: Elem| self.members.binary_search(&e).expect("closure");
        let mut mul = vec![0u16; k * k];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                mul[i * k + j] = pos(q.mul(a, b)) as u16;
            }
        }
        let table = CayleyLoop::from_mul(k, mul, None)?;
        Ok((table, self.members.clone()))
    }
}

/// The least subloop containing `seed` and the identity, closed under
/// multiplication and both divisions.
pub fn subloop_generated(q: &CayleyLoop, seed: &[Elem]) -> Subloop {
    let n = q.order();
    let mut in_set = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let push = |v: usize, in_set: &mut Vec<bool>, members: &mut Vec<usize>| {
        if !in_set[v] {
            in_set[v] = true;
            members.push(v);
        }
    };
    push(q.identity().index(), &mut in_set, &mut members);
    for &s in seed {
        push(s.index(), &mut in_set, &mut members);
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        i += 1;
        let mut j = 0;
        while j <= i - 1 {
            let y = members[j];
            j += 1;
            for v in [
                q.mul_idx(x, y),
                q.mul_idx(y, x),
                q.ldiv_idx(x, y),
                q.ldiv_idx(y, x),
                q.rdiv_idx(x, y),
                q.rdiv_idx(y, x),
            ] {
                push(v, &mut in_set, &mut members);
            }
        }
    }
    let mut members: Vec<Elem> = members.into_iter().map(|i| Elem(i as u16)).collect();
    members.sort();
    Subloop {
        parent_order: n,
        members,
    }
}

/// A subloop with a normality certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSubloop {
    sub: Subloop,
    verified: bool,
}

impl NormalSubloop {
    /// Certifies normality by the value-inclusion test
    /// (`alpha(H,Q,Q)`, `beta(H,Q,Q)` and `(H,Q)` all land in `H`).
    pub fn verify(q: &CayleyLoop, sub: Subloop) -> Result<NormalSubloop> {
        if let Some(w) = normality_witness(q, &sub) {
            return Err(LoopError::NotNormal { witness: w });
        }
        Ok(NormalSubloop {
            sub,
            verified: true,
        })
    }

    /// Wraps without verification. Downstream operations re-verify, so a bad
    /// certificate is caught at the next use.
    pub fn new_unchecked(sub: Subloop) -> NormalSubloop {
        NormalSubloop {
            sub,
            verified: false,
        }
    }

    pub fn subloop(&self) -> &Subloop {
        &self.sub
    }

    pub fn members(&self) -> &[Elem] {
        self.sub.members()
    }

    pub fn len(&self) -> usize {
        self.sub.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sub.is_empty()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.sub.contains(a)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn into_subloop(self) -> Subloop {
        self.sub
    }
}

/// `None` when `H` passes the three value-inclusion checks, otherwise a witness.
pub fn normality_witness(q: &CayleyLoop, h: &Subloop) -> Option<String> {
    let in_h = h.bitmap();
    for &n in h.members() {
        for x in q.elems() {
            let c = commutator_paren(q, n, x);
            if !in_h[c.index()] {
                return Some(format!("({},{}) = {} escapes the subloop", n, x, c));
            }
            for y in q.elems() {
                let a = assoc_alpha(q, n, x, y);
                if !in_h[a.index()] {
                    return Some(format!("alpha({},{},{}) = {} escapes the subloop", n, x, y, a));
                }
                let b = assoc_beta(q, n, x, y);
                if !in_h[b.index()] {
                    return Some(format!("beta({},{},{}) = {} escapes the subloop", n, x, y, b));
                }
            }
        }
    }
    None
}

/// `None` when `H` is invariant under every inner generator `T(x)`, `R(x,y)`,
/// `L(x,y)`, otherwise a witness. Equivalent to [`normality_witness`]; both
/// are kept so the equivalence itself can be tested.
pub fn translate_normality_witness(q: &CayleyLoop, h: &Subloop) -> Option<String> {
    let in_h = h.bitmap();
    let check = |p: &crate::mappings::Perm, tag: &str| -> Option<String> {
        for &m in h.members() {
            let v = p.apply(m);
            if !in_h[v.index()] {
                return Some(format!("{} maps {} to {} outside the subloop", tag, m, v));
            }
        }
        None
    };
    for x in q.elems() {
        if let Some(w) = check(&inner_t(q, x), &format!("T({})", x)) {
            return Some(w);
        }
        for y in q.elems() {
            if let Some(w) = check(&inner_r(q, x, y), &format!("R({},{})", x, y)) {
                return Some(w);
            }
            if let Some(w) = check(&inner_l(q, x, y), &format!("L({},{})", x, y)) {
                return Some(w);
            }
        }
    }
    None
}

/// Smallest normal subloop containing `seed`: the subloop generated by the
/// orbit of `seed` under the inner mapping group.
pub fn normal_closure(q: &CayleyLoop, seed: &[Elem]) -> Result<NormalSubloop> {
    let n = q.order();
    let mut in_orbit = vec![false; n];
    let mut orbit: Vec<usize> = Vec::new();
    in_orbit[q.identity().index()] = true;
    orbit.push(q.identity().index());
    for &s in seed {
        if !in_orbit[s.index()] {
            in_orbit[s.index()] = true;
            orbit.push(s.index());
        }
    }
    let gens = inner_generators(q);
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        i += 1;
        for (p, _) in &gens {
            let y = p.apply_idx(x);
            if !in_orbit[y] {
                in_orbit[y] = true;
                orbit.push(y);
            }
        }
    }
    let orbit: Vec<Elem> = orbit.into_iter().map(|i| Elem(i as u16)).collect();
    let sub = subloop_generated(q, &orbit);
    NormalSubloop::verify(q, sub).map_err(|e| {
        LoopError::Internal(format!("normal closure failed its own certificate: {}", e))
    })
}

/// The four nuclei of a loop.
#[derive(Debug, Clone)]
pub struct Nuclei {
    pub left: Subloop,
    pub middle: Subloop,
    pub right: Subloop,
    pub nucleus: Subloop,
}

/// Nuclei by exhaustive associator scans:
/// left = `{a : [a,x,y] = 1}`, middle = `{a : [x,a,y] = 1}`, right = `{a : [x,y,a] = 1}`.
pub fn nuclei(q: &CayleyLoop) -> Nuclei {
    let n = q.order();
    let e = q.identity();
    let mut left = Vec::new();
    let mut middle = Vec::new();
    let mut right = Vec::new();
    for a in q.elems() {
        let mut in_left = true;
        let mut in_middle = true;
        let mut in_right = true;
        'scan: for x in q.elems() {
            for y in q.elems() {
                if in_left && assoc_bracket(q, a, x, y) != e {
                    in_left = false;
                }
                if in_middle && assoc_bracket(q, x, a, y) != e {
                    in_middle = false;
                }
                if in_right && assoc_bracket(q, x, y, a) != e {
                    in_right = false;
                }
                if !in_left && !in_middle && !in_right {
                    break 'scan;
                }
            }
        }
        if in_left {
            left.push(a);
        }
        if in_middle {
            middle.push(a);
        }
        if in_right {
            right.push(a);
        }
    }
    let nucleus: Vec<Elem> = left
        .iter()
        .copied()
        .filter(|a| middle.contains(a) && right.contains(a))
        .collect();
    let wrap = |members: Vec<Elem>| Subloop {
        parent_order: n,
        members,
    };
    Nuclei {
        left: wrap(left),
        middle: wrap(middle),
        right: wrap(right),
        nucleus: wrap(nucleus),
    }
}

/// The centre `Z(Q) = {a in N(Q) : ax = xa for all x}`, certified normal.
///
/// On Moufang, IP and A-loops the shortcut characterizations through
/// `[a,x,y]`/`alpha`/`beta` together with commutation must name the same set;
/// a mismatch is an internal error.
pub fn center(q: &CayleyLoop) -> Result<NormalSubloop> {
    let nuc = nuclei(q);
    let members: Vec<Elem> = nuc
        .nucleus
        .members()
        .iter()
        .copied()
        .filter(|&a| q.elems().all(|x| q.mul(a, x) == q.mul(x, a)))
        .collect();

    let e = q.identity();
    let commutes = |a: Elem| q.elems().all(|x| commutator_paren(q, a, x) == e);
    if crate::classify::is_moufang(q) {
        let alt: Vec<Elem> = q
            .elems()
            .filter(|&a| {
                q.elems()
                    .all(|x| q.elems().all(|y| assoc_bracket(q, a, x, y) == e))
                    && q.elems().all(|x| commutator_bracket(q, a, x) == e)
            })
            .collect();
        if alt != members {
            return Err(LoopError::Internal(
                "Moufang centre characterization disagrees with the nucleus route".into(),
            ));
        }
    }
    if crate::classify::is_ip(q) {
        let alt: Vec<Elem> = q
            .elems()
            .filter(|&a| {
                q.elems()
                    .all(|x| q.elems().all(|y| assoc_alpha(q, a, x, y) == e))
                    && commutes(a)
            })
            .collect();
        if alt != members {
            return Err(LoopError::Internal(
                "IP centre characterization disagrees with the nucleus route".into(),
            ));
        }
    }
    if crate::classify::is_a_loop(q) {
        let alt: Vec<Elem> = q
            .elems()
            .filter(|&a| {
                q.elems()
                    .all(|x| q.elems().all(|y| assoc_beta(q, a, x, y) == e))
                    && commutes(a)
            })
            .collect();
        if alt != members {
            return Err(LoopError::Internal(
                "A-loop centre characterization disagrees with the nucleus route".into(),
            ));
        }
    }

    let sub = Subloop {
        parent_order: q.order(),
        members,
    };
    NormalSubloop::verify(q, sub)
        .map_err(|e| LoopError::Internal(format!("centre failed the normality check: {}", e)))
}

/// Relative centre `Z_H(Q) = {a : alpha(a,Q,Q), beta(a,Q,Q), (a,Q) all in H}`.
///
/// `H` is re-verified normal first; the result contains `H` and is itself
/// certified normal.
pub fn relative_center(q: &CayleyLoop, h: &NormalSubloop) -> Result<NormalSubloop> {
    if let Some(w) = normality_witness(q, h.subloop()) {
        return Err(LoopError::NotNormal { witness: w });
    }
    let in_h = h.subloop().bitmap();
    let members: Vec<Elem> = q
        .elems()
        .filter(|&a| {
            q.elems().all(|x| {
                in_h[commutator_paren(q, a, x).index()]
                    && q.elems().all(|y| {
                        in_h[assoc_alpha(q, a, x, y).index()]
                            && in_h[assoc_beta(q, a, x, y).index()]
                    })
            })
        })
        .collect();
    for &m in h.members() {
        if members.binary_search(&m).is_err() {
            return Err(LoopError::Internal(
                "relative centre does not contain the base subloop".into(),
            ));
        }
    }
    let sub = Subloop::new(q, members).map_err(|e| {
        LoopError::Internal(format!("relative centre is not a subloop: {}", e))
    })?;
    NormalSubloop::verify(q, sub).map_err(|e| {
        LoopError::Internal(format!("relative centre failed the normality check: {}", e))
    })
}

/// Which generating values feed the commutator-associator subloop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaKind {
    /// `alpha(N,Q,Q) ∪ beta(N,Q,Q) ∪ (N,Q)` — valid in any loop.
    AlphaBeta,
    /// `[N,Q,Q] ∪ [N,Q]` — the Moufang form.
    Mu,
}

/// The commutator-associator subloop `A^N(Q)`, generated by the value set of
/// the chosen kind. The result is contained in `N` and certified normal.
pub fn ca_subloop(q: &CayleyLoop, n: &NormalSubloop, kind: CaKind) -> Result<NormalSubloop> {
    if let Some(w) = normality_witness(q, n.subloop()) {
        return Err(LoopError::NotNormal { witness: w });
    }
    if kind == CaKind::Mu {
        if let Some((x, y, z)) = crate::classify::moufang_witness(q) {
            return Err(LoopError::NotMoufang {
                x: x.index(),
                y: y.index(),
                z: z.index(),
            });
        }
    }
    let mut values = Vec::new();
    for &a in n.members() {
        for x in q.elems() {
            match kind {
                CaKind::AlphaBeta => values.push(commutator_paren(q, a, x)),
                CaKind::Mu => values.push(commutator_bracket(q, a, x)),
            }
            for y in q.elems() {
                match kind {
                    CaKind::AlphaBeta => {
                        values.push(assoc_alpha(q, a, x, y));
                        values.push(assoc_beta(q, a, x, y));
                    }
                    CaKind::Mu => values.push(assoc_bracket(q, a, x, y)),
                }
            }
        }
    }
    values.sort();
    values.dedup();
    let sub = subloop_generated(q, &values);
    let in_n = n.subloop().bitmap();
    if !sub.members().iter().all(|m| in_n[m.index()]) {
        return Err(LoopError::Internal(
            "commutator-associator subloop escapes its base".into(),
        ));
    }
    NormalSubloop::verify(q, sub).map_err(|e| {
        LoopError::Internal(format!(
            "commutator-associator subloop failed the normality check: {}",
            e
        ))
    })
}

/// Whole loop as a (normal) subloop.
pub fn whole_loop(q: &CayleyLoop) -> NormalSubloop {
    NormalSubloop {
        sub: Subloop {
            parent_order: q.order(),
            members: q.elems().collect(),
        },
        verified: true,
    }
}

/// The one-element subloop `{1}`.
pub fn trivial_subloop(q: &CayleyLoop) -> NormalSubloop {
    NormalSubloop {
        sub: Subloop {
            parent_order: q.order(),
            members: vec![q.identity()],
        },
        verified: true,
    }
}

/// A small generating set found greedily: repeatedly adjoin the least element
/// outside the generated subloop.
pub fn small_generating_set(q: &CayleyLoop) -> Vec<Elem> {
    let mut gens: Vec<Elem> = Vec::new();
    let mut h = subloop_generated(q, &gens);
    while h.len() < q.order() {
        let next = q
            .elems()
            .find(|&x| !h.contains(x))
            .expect("subloop is proper");
        gens.push(next);
        h = subloop_generated(q, &gens);
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn commutators_vanish_on_abelian() {
        let q = catalog::cyclic(6);
        let e = q.identity();
        for a in q.elems() {
            for b in q.elems() {
                assert_eq!(commutator_paren(&q, a, b), e);
                assert_eq!(commutator_bracket(&q, a, b), e);
            }
        }
    }

    #[test]
    fn commutator_with_identity_is_trivial() {
        let q = catalog::s3();
        let e = q.identity();
        for a in q.elems() {
            assert_eq!(commutator_paren(&q, a, e), e);
            assert_eq!(commutator_bracket(&q, e, a), e);
        }
    }

    #[test]
    fn s3_has_nontrivial_commutator() {
        let q = catalog::s3();
        let e = q.identity();
        assert!(q
            .elems()
            .any(|a| q.elems().any(|b| commutator_paren(&q, a, b) != e)));
    }

    #[test]
    fn associators_vanish_on_groups() {
        let q = catalog::d4();
        let e = q.identity();
        for a in q.elems() {
            for b in q.elems() {
                for c in q.elems() {
                    assert_eq!(assoc_alpha(&q, a, b, c), e);
                    assert_eq!(assoc_beta(&q, a, b, c), e);
                    assert_eq!(assoc_bracket(&q, a, b, c), e);
                }
            }
        }
    }

    #[test]
    fn alpha_with_middle_identity_is_trivial() {
        let q = catalog::m_s3_2();
        let e = q.identity();
        for a in q.elems() {
            for c in q.elems() {
                assert_eq!(assoc_alpha(&q, a, e, c), e);
            }
        }
    }

    #[test]
    fn chein_loop_has_nontrivial_associators() {
        let q = catalog::m_s3_2();
        let e = q.identity();
        assert!(q.elems().any(|a| q
            .elems()
            .any(|b| q.elems().any(|c| assoc_alpha(&q, a, b, c) != e))));
        assert!(q.elems().any(|a| q
            .elems()
            .any(|b| q.elems().any(|c| assoc_bracket(&q, a, b, c) != e))));
    }

    #[test]
    fn defining_equations_substitute_back() {
        for q in [catalog::m_s3_2(), catalog::o16(), catalog::s3()] {
            for a in q.elems() {
                for b in q.elems() {
                    let p = commutator_paren(&q, a, b);
                    assert_eq!(q.mul(a, b), q.mul(b, q.mul(a, p)));
                    let br = commutator_bracket(&q, a, b);
                    assert_eq!(q.mul(a, b), q.mul(q.mul(b, a), br));
                    for c in q.elems() {
                        let x = assoc_alpha(&q, a, b, c);
                        assert_eq!(
                            q.mul(q.mul(a, b), c),
                            q.mul(q.mul(a, x), q.mul(b, c)),
                            "alpha defining equation"
                        );
                        let y = assoc_beta(&q, a, b, c);
                        assert_eq!(
                            q.mul(c, q.mul(b, a)),
                            q.mul(q.mul(c, b), q.mul(y, a)),
                            "beta defining equation"
                        );
                        let z = assoc_bracket(&q, a, b, c);
                        assert_eq!(
                            q.mul(q.mul(a, b), c),
                            q.mul(q.mul(a, q.mul(b, c)), z),
                            "bracket defining equation"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn translation_forms_agree() {
        // T(b)a = a(a,b), R(b,c)a = a*alpha(a,b,c), L(c,b)a = beta(a,b,c)*a.
        for q in [catalog::m_s3_2(), catalog::s3()] {
            for a in q.elems() {
                for b in q.elems() {
                    assert_eq!(
                        inner_t(&q, b).apply(a),
                        q.mul(a, commutator_paren(&q, a, b))
                    );
                    for c in q.elems() {
                        assert_eq!(
                            inner_r(&q, b, c).apply(a),
                            q.mul(a, assoc_alpha(&q, a, b, c))
                        );
                        assert_eq!(
                            inner_l(&q, c, b).apply(a),
                            q.mul(assoc_beta(&q, a, b, c), a)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn subloop_generated_examples() {
        let z4 = catalog::cyclic(4);
        let empty = subloop_generated(&z4, &[]);
        assert_eq!(empty.members(), &[z4.identity()]);
        let half = subloop_generated(&z4, &[z4.elem(2).unwrap()]);
        assert_eq!(
            half.members(),
            &[z4.elem(0).unwrap(), z4.elem(2).unwrap()]
        );
    }

    #[test]
    fn two_generated_subloops_of_chein_are_groups() {
        let q = catalog::m_s3_2();
        for a in q.elems() {
            for b in q.elems() {
                let h = subloop_generated(&q, &[a, b]);
                let (table, _) = h.induced_table(&q).unwrap();
                assert!(
                    table.associativity_witness().is_none(),
                    "<{},{}> is not a group",
                    a,
                    b
                );
            }
        }
    }

    #[test]
    fn normal_closure_of_identity_is_trivial() {
        let q = catalog::m_s3_2();
        let n = normal_closure(&q, &[q.identity()]).unwrap();
        assert_eq!(n.members(), &[q.identity()]);
    }

    #[test]
    fn normal_closure_matches_conjugation_oracle_on_groups() {
        // Independent oracle: close under conjugation by every element, then
        // take the generated subgroup, repeating to a fixpoint.
        let oracle = |q: &CayleyLoop, s: Elem| -> Vec<Elem> {
            let mut members = vec![q.identity(), s];
            loop {
                let mut next = members.clone();
                for &m in &members {
                    for g in q.elems() {
                        // g^-1 (m g)
                        next.push(q.ldiv(g, q.mul(m, g)));
                    }
                }
                let closed = subloop_generated(q, &next);
                let mut v = closed.members().to_vec();
                v.sort();
                if v == members {
                    return members;
                }
                members = v;
            }
        };
        for q in [catalog::s3(), catalog::d4(), catalog::q8()] {
            for s in q.elems() {
                let ours = normal_closure(&q, &[s]).unwrap();
                assert_eq!(ours.members(), oracle(&q, s).as_slice());
            }
        }
    }

    #[test]
    fn normal_closure_of_minus_one_in_o16() {
        let q = catalog::o16();
        let minus_one = q.elem(1).unwrap();
        let n = normal_closure(&q, &[minus_one]).unwrap();
        assert_eq!(
            n.members(),
            &[q.elem(0).unwrap(), q.elem(1).unwrap()],
            "-1 is central in O16"
        );
    }

    #[test]
    fn nuclei_of_groups_are_everything() {
        let q = catalog::d4();
        let nuc = nuclei(&q);
        assert_eq!(nuc.left.len(), 8);
        assert_eq!(nuc.middle.len(), 8);
        assert_eq!(nuc.right.len(), 8);
        assert_eq!(nuc.nucleus.len(), 8);
    }

    #[test]
    fn center_of_fixtures() {
        let o = catalog::o16();
        let z = center(&o).unwrap();
        assert_eq!(z.members(), &[o.elem(0).unwrap(), o.elem(1).unwrap()]);

        let m = catalog::m_s3_2();
        let z = center(&m).unwrap();
        assert_eq!(z.members(), &[m.identity()]);

        let d = catalog::d4();
        let z = center(&d).unwrap();
        assert_eq!(z.members(), &[d.elem(0).unwrap(), d.elem(2).unwrap()]);
    }

    #[test]
    fn relative_center_cases() {
        let q = catalog::o16();
        // H = {1}: the relative centre is the centre.
        let trivial = trivial_subloop(&q);
        let rc = relative_center(&q, &trivial).unwrap();
        assert_eq!(rc.members(), center(&q).unwrap().members());
        // H = Q: everything.
        let whole = whole_loop(&q);
        let rc = relative_center(&q, &whole).unwrap();
        assert_eq!(rc.len(), q.order());
        // H = {1,-1}: everything is central mod the sign.
        let signs = NormalSubloop::verify(
            &q,
            Subloop::new(&q, vec![q.elem(0).unwrap(), q.elem(1).unwrap()]).unwrap(),
        )
        .unwrap();
        let rc = relative_center(&q, &signs).unwrap();
        assert_eq!(rc.len(), q.order());
    }

    #[test]
    fn relative_center_rejects_bad_certificate() {
        let q = catalog::s3();
        let bad = NormalSubloop::new_unchecked(
            Subloop::new(&q, vec![q.elem(0).unwrap(), q.elem(1).unwrap()]).unwrap(),
        );
        assert!(matches!(
            relative_center(&q, &bad),
            Err(LoopError::NotNormal { .. })
        ));
    }

    #[test]
    fn ca_subloop_examples() {
        // Abelian: everything collapses.
        let z6 = catalog::cyclic(6);
        let a1 = ca_subloop(&z6, &whole_loop(&z6), CaKind::AlphaBeta).unwrap();
        assert!(a1.subloop().is_trivial());

        // S3: the derived subgroup A3, against a commutator oracle.
        let s3 = catalog::s3();
        let a1 = ca_subloop(&s3, &whole_loop(&s3), CaKind::AlphaBeta).unwrap();
        let mut comms: Vec<Elem> = Vec::new();
        for a in s3.elems() {
            for b in s3.elems() {
                comms.push(commutator_bracket(&s3, a, b));
            }
        }
        let oracle = subloop_generated(&s3, &comms);
        assert_eq!(a1.members(), oracle.members());
        assert_eq!(a1.len(), 3);

        // O16: the sign subloop {1,-1}.
        let o = catalog::o16();
        let a1 = ca_subloop(&o, &whole_loop(&o), CaKind::AlphaBeta).unwrap();
        assert_eq!(a1.members(), &[o.elem(0).unwrap(), o.elem(1).unwrap()]);
        let a1mu = ca_subloop(&o, &whole_loop(&o), CaKind::Mu).unwrap();
        assert_eq!(a1.members(), a1mu.members());
    }

    #[test]
    fn ca_subloop_mu_requires_moufang() {
        let s3 = catalog::s3();
        assert!(ca_subloop(&s3, &whole_loop(&s3), CaKind::Mu).is_ok());
        let bad = CayleyLoop::parse_table(
            "5\n0 1 2 3 4\n1 0 3 4 2\n2 3 4 0 1\n3 4 1 2 0\n4 2 0 1 3",
        )
        .unwrap();
        assert!(matches!(
            ca_subloop(&bad, &whole_loop(&bad), CaKind::Mu),
            Err(LoopError::NotMoufang { .. })
        ));
    }

    #[test]
    fn normality_predicates_agree_on_subloops_of_s3() {
        let q = catalog::s3();
        for seed in q.elems() {
            let h = subloop_generated(&q, &[seed]);
            assert_eq!(
                normality_witness(&q, &h).is_none(),
                translate_normality_witness(&q, &h).is_none()
            );
        }
    }

    #[test]
    fn generating_set_is_small_and_generates() {
        for q in [catalog::o16(), catalog::m_s3_2(), catalog::d4()] {
            let gens = small_generating_set(&q);
            assert!(gens.len() <= 4);
            assert_eq!(subloop_generated(&q, &gens).len(), q.order());
        }
    }
}
