//! Property predicates: Moufang, inverse property, A-loop, power
//! associativity, diassociativity, the alternative laws, and the flag record
//! the CLI reports.
//!
//! The three Moufang identities are checked separately so their equivalence
//! on finite loops can be verified by brute force rather than assumed:
//!
//! ```text
//! left:   x(y*xz) = (xy*x)z
//! right:  (xy*z)y = x(y*zy)
//! middle: xy*zx = (x*yz)x
//! ```

use crate::cayley::{CayleyLoop, Elem};
use crate::calculus::subloop_generated;
use crate::mappings::{inner_generators, is_automorphism};
use serde::Serialize;

/// First triple violating the left Moufang identity, if any.
pub fn moufang_witness(q: &CayleyLoop) -> Option<(Elem, Elem, Elem)> {
    moufang_left_witness(q)
}

pub fn is_moufang(q: &CayleyLoop) -> bool {
    moufang_witness(q).is_none()
}

/// `x(y*xz) = (xy*x)z`.
pub fn moufang_left_witness(q: &CayleyLoop) -> Option<(Elem, Elem, Elem)> {
    let n = q.order();
    for x in 0..n {
        for y in 0..n {
            let xy_x = q.mul_idx(q.mul_idx(x, y), x);
            for z in 0..n {
                let lhs = q.mul_idx(x, q.mul_idx(y, q.mul_idx(x, z)));
                if lhs != q.mul_idx(xy_x, z) {
                    return Some((Elem(x as u16), Elem(y as u16), Elem(z as u16)));
                }
            }
        }
    }
    None
}

/// `(xy*z)y = x(y*zy)`.
pub fn moufang_right_witness(q: &CayleyLoop) -> Option<(Elem, Elem, Elem)> {
    let n = q.order();
    for x in 0..n {
        for y in 0..n {
            let xy = q.mul_idx(x, y);
            for z in 0..n {
                let lhs = q.mul_idx(q.mul_idx(xy, z), y);
                let rhs = q.mul_idx(x, q.mul_idx(y, q.mul_idx(z, y)));
                if lhs != rhs {
                    return Some((Elem(x as u16), Elem(y as u16), Elem(z as u16)));
                }
            }
        }
    }
    None
}

/// `xy*zx = (x*yz)x`.
pub fn moufang_middle_witness(q: &CayleyLoop) -> Option<(Elem, Elem, Elem)> {
    let n = q.order();
    for x in 0..n {
        for y in 0..n {
            let xy = q.mul_idx(x, y);
            for z in 0..n {
                let lhs = q.mul_idx(xy, q.mul_idx(z, x));
                let rhs = q.mul_idx(q.mul_idx(x, q.mul_idx(y, z)), x);
                if lhs != rhs {
                    return Some((Elem(x as u16), Elem(y as u16), Elem(z as u16)));
                }
            }
        }
    }
    None
}

pub fn is_associative(q: &CayleyLoop) -> bool {
    q.associativity_witness().is_none()
}

pub fn is_commutative(q: &CayleyLoop) -> bool {
    let n = q.order();
    for a in 0..n {
        for b in 0..a {
            if q.mul_idx(a, b) != q.mul_idx(b, a) {
                return false;
            }
        }
    }
    true
}

/// Every element has `1/x = x\1`.
pub fn has_two_sided_inverses(q: &CayleyLoop) -> bool {
    q.elems().all(|x| q.linv(x) == q.rinv(x))
}

/// Inverse property: two-sided inverses with `x^-1(xy) = y` and `(yx)x^-1 = y`.
pub fn is_ip(q: &CayleyLoop) -> bool {
    if !has_two_sided_inverses(q) {
        return false;
    }
    for x in q.elems() {
        let xi = q.linv(x);
        for y in q.elems() {
            if q.mul(xi, q.mul(x, y)) != y || q.mul(q.mul(y, x), xi) != y {
                return false;
            }
        }
    }
    true
}

/// Alternative laws `x(xy) = (xx)y` and `(yx)x = y(xx)`.
pub fn is_alternative(q: &CayleyLoop) -> bool {
    for x in q.elems() {
        let xx = q.mul(x, x);
        for y in q.elems() {
            if q.mul(x, q.mul(x, y)) != q.mul(xx, y) || q.mul(q.mul(y, x), x) != q.mul(y, xx) {
                return false;
            }
        }
    }
    true
}

/// Every one-generated subloop is a group.
pub fn is_power_associative(q: &CayleyLoop) -> bool {
    q.elems().all(|a| {
        let h = subloop_generated(q, &[a]);
        let (table, _) = h.induced_table(q).expect("closed subloop");
        table.associativity_witness().is_none()
    })
}

/// Every two-generated subloop is a group.
pub fn is_diassociative(q: &CayleyLoop) -> bool {
    for a in q.elems() {
        for b in q.elems() {
            if b < a {
                continue;
            }
            let h = subloop_generated(q, &[a, b]);
            let (table, _) = h.induced_table(q).expect("closed subloop");
            if table.associativity_witness().is_some() {
                return false;
            }
        }
    }
    true
}

/// Every generator of the inner mapping group is an automorphism (hence every
/// inner mapping is).
pub fn is_a_loop(q: &CayleyLoop) -> bool {
    inner_generators(q)
        .iter()
        .all(|(p, _)| is_automorphism(q, p))
}

/// Property flags for a loop, in report order.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Properties {
    pub quasigroup: bool,
    pub loop_: bool,
    pub group: bool,
    pub commutative: bool,
    pub two_sided_inverses: bool,
    pub inverse_property: bool,
    pub moufang: bool,
    pub a_loop: bool,
    pub power_associative: bool,
    pub diassociative: bool,
    pub alternative: bool,
}

pub fn properties(q: &CayleyLoop) -> Properties {
    Properties {
        quasigroup: true,
        loop_: true,
        group: is_associative(q),
        commutative: is_commutative(q),
        two_sided_inverses: has_two_sided_inverses(q),
        inverse_property: is_ip(q),
        moufang: is_moufang(q),
        a_loop: is_a_loop(q),
        power_associative: is_power_associative(q),
        diassociative: is_diassociative(q),
        alternative: is_alternative(q),
    }
}
