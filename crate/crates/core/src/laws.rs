//! Brute-force verification of the structural laws of the calculus:
//! symmetry and inverse laws of associators on inverse-property and Moufang
//! loops, nucleus coincidences, A-loop equivalences, and the expansion
//! identities satisfied by commutators and associators in centrally
//! nilpotent loops of class 2 (also in the congruence form modulo a
//! lower-series member two steps down).
//!
//! Every check scans its full tuple space and reports the first witness on
//! failure; a failure here would falsify the underlying theory on that loop,
//! so surfacing it loudly is the point.

use crate::calculus::{
    assoc_alpha, assoc_beta, assoc_bracket, commutator_bracket, commutator_paren, nuclei,
};
use crate::cayley::{CayleyLoop, Elem};
use crate::classify::{
    self, is_a_loop, is_alternative, is_diassociative, is_ip, is_moufang,
    moufang_left_witness, moufang_middle_witness, moufang_right_witness,
};
use crate::mappings::inner_l;
use crate::report::CheckRecord;

fn lbl(q: &CayleyLoop, e: Elem) -> String {
    q.label(e)
}

/// The three Moufang identity forms hold together or fail together.
pub fn moufang_identity_agreement(q: &CayleyLoop) -> CheckRecord {
    let l = moufang_left_witness(q);
    let r = moufang_right_witness(q);
    let m = moufang_middle_witness(q);
    let name = "moufang identity agreement";
    let law = "x(y*xz) = (xy*x)z  <=>  (xy*z)y = x(y*zy)  <=>  xy*zx = (x*yz)x";
    if l.is_none() == r.is_none() && l.is_none() == m.is_none() {
        CheckRecord::pass(name, law)
    } else {
        CheckRecord::fail(
            name,
            law,
            format!(
                "left {:?}, right {:?}, middle {:?}",
                l.map(|(x, y, z)| (lbl(q, x), lbl(q, y), lbl(q, z))),
                r.map(|(x, y, z)| (lbl(q, x), lbl(q, y), lbl(q, z))),
                m.map(|(x, y, z)| (lbl(q, x), lbl(q, y), lbl(q, z))),
            ),
        )
    }
}

/// On inverse-property loops: `alpha(x,y,z)^-1 = beta(x^-1,y^-1,z^-1)`.
pub fn ip_alpha_beta_inverse_law(q: &CayleyLoop) -> CheckRecord {
    let name = "alpha-beta inverse symmetry";
    let law = "alpha(x,y,z)^-1 = beta(x^-1,y^-1,z^-1)";
    if !is_ip(q) {
        return CheckRecord::skipped(name, law, "not an inverse-property loop");
    }
    let e = q.identity();
    let inv = |x: Elem| q.rdiv(e, x);
    for x in q.elems() {
        for y in q.elems() {
            for z in q.elems() {
                let lhs = inv(assoc_alpha(q, x, y, z));
                let rhs = assoc_beta(q, inv(x), inv(y), inv(z));
                if lhs != rhs {
                    return CheckRecord::fail(
                        name,
                        law,
                        format!("x={}, y={}, z={}", lbl(q, x), lbl(q, y), lbl(q, z)),
                    );
                }
            }
        }
    }
    CheckRecord::pass(name, law)
}

/// On Moufang loops: the bracket associator and commutator reduce to the
/// solved forms `[x,y,z]^-1 = alpha(x,z^-1,y^-1)`, `[x,y,z] = beta(x^-1,z,y)`,
/// `[x,y] = (x,y)`.
pub fn moufang_bracket_laws(q: &CayleyLoop) -> Vec<CheckRecord> {
    let laws = [
        ("bracket associator as alpha", "[x,y,z]^-1 = alpha(x,z^-1,y^-1)"),
        ("bracket associator as beta", "[x,y,z] = beta(x^-1,z,y)"),
        ("bracket commutator agreement", "[x,y] = (x,y)"),
    ];
    if !is_moufang(q) {
        return laws
            .iter()
            .map(|(n, l)| CheckRecord::skipped(*n, *l, "not a Moufang loop"))
            .collect();
    }
    let e = q.identity();
    let inv = |x: Elem| q.rdiv(e, x);
    let mut records = Vec::new();

    let mut w1 = None;
    let mut w2 = None;
    'outer: for x in q.elems() {
        for y in q.elems() {
            for z in q.elems() {
                let br = assoc_bracket(q, x, y, z);
                if w1.is_none() && inv(br) != assoc_alpha(q, x, inv(z), inv(y)) {
                    w1 = Some(format!("x={}, y={}, z={}", lbl(q, x), lbl(q, y), lbl(q, z)));
                }
                if w2.is_none() && br != assoc_beta(q, inv(x), z, y) {
                    w2 = Some(format!("x={}, y={}, z={}", lbl(q, x), lbl(q, y), lbl(q, z)));
                }
                if w1.is_some() && w2.is_some() {
                    break 'outer;
                }
            }
        }
    }
    records.push(CheckRecord::from_witness(laws[0].0, laws[0].1, w1));
    records.push(CheckRecord::from_witness(laws[1].0, laws[1].1, w2));

    let mut w3 = None;
    'comm: for x in q.elems() {
        for y in q.elems() {
            if commutator_bracket(q, x, y) != commutator_paren(q, x, y) {
                w3 = Some(format!("x={}, y={}", lbl(q, x), lbl(q, y)));
                break 'comm;
            }
        }
    }
    records.push(CheckRecord::from_witness(laws[2].0, laws[2].1, w3));
    records
}

/// On Moufang loops: `[a,b,c] = 1` implies every permuted and inverted
/// variant is `1`.
pub fn moufang_associator_symmetry(q: &CayleyLoop) -> CheckRecord {
    let name = "vanishing associator symmetry";
    let law = "[a,b,c] = 1 => permuted and inverted variants vanish";
    if !is_moufang(q) {
        return CheckRecord::skipped(name, law, "not a Moufang loop");
    }
    let e = q.identity();
    let inv = |x: Elem| q.rdiv(e, x);
    for a in q.elems() {
        for b in q.elems() {
            for c in q.elems() {
                if assoc_bracket(q, a, b, c) != e {
                    continue;
                }
                let perms = [
                    [a, b, c],
                    [a, c, b],
                    [b, a, c],
                    [b, c, a],
                    [c, a, b],
                    [c, b, a],
                ];
                for p in perms {
                    for mask in 0..8u8 {
                        let u = if mask & 1 != 0 { inv(p[0]) } else { p[0] };
                        let v = if mask & 2 != 0 { inv(p[1]) } else { p[1] };
                        let w = if mask & 4 != 0 { inv(p[2]) } else { p[2] };
                        if assoc_bracket(q, u, v, w) != e {
                            return CheckRecord::fail(
                                name,
                                law,
                                format!(
                                    "[{},{},{}] = 1 but [{},{},{}] != 1",
                                    lbl(q, a),
                                    lbl(q, b),
                                    lbl(q, c),
                                    lbl(q, u),
                                    lbl(q, v),
                                    lbl(q, w)
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    CheckRecord::pass(name, law)
}

/// On Moufang loops, for quadruples whose triples all associate, the three
/// printed compound-associator equations vanish together.
pub fn moufang_quadruple_equivalence(q: &CayleyLoop) -> CheckRecord {
    let name = "compound associator equivalence";
    let law = "[ab,c,d] = 1 <=> [cd,a,b] = 1 <=> [bc,d,a] = 1 (when all triples associate)";
    if !is_moufang(q) {
        return CheckRecord::skipped(name, law, "not a Moufang loop");
    }
    let e = q.identity();
    let assoc3 = |x: Elem, y: Elem, z: Elem| assoc_bracket(q, x, y, z) == e;
    for a in q.elems() {
        for b in q.elems() {
            for c in q.elems() {
                for d in q.elems() {
                    let quad = [a, b, c, d];
                    let mut hyp = true;
                    'h: for &x in &quad {
                        for &y in &quad {
                            for &z in &quad {
                                if !assoc3(x, y, z) {
                                    hyp = false;
                                    break 'h;
                                }
                            }
                        }
                    }
                    if !hyp {
                        continue;
                    }
                    let e1 = assoc3(q.mul(a, b), c, d);
                    let e2 = assoc3(q.mul(c, d), a, b);
                    let e3 = assoc3(q.mul(b, c), d, a);
                    if e1 != e2 || e1 != e3 {
                        return CheckRecord::fail(
                            name,
                            law,
                            format!(
                                "a={}, b={}, c={}, d={}: [ab,c,d]={}, [cd,a,b]={}, [bc,d,a]={}",
                                lbl(q, a),
                                lbl(q, b),
                                lbl(q, c),
                                lbl(q, d),
                                e1,
                                e2,
                                e3
                            ),
                        );
                    }
                }
            }
        }
    }
    CheckRecord::pass(name, law)
}

/// The four associator laws a Moufang loop satisfies all or none of:
/// `[[x,y,z],x] = 1`, `[x,y,[y,z]] = 1`, `[x,y,z]^-1 = [x^-1,y,z]`,
/// `[x,y,z] = [x,z,y^-1]`.
pub fn moufang_four_law_status(q: &CayleyLoop) -> (Option<bool>, CheckRecord) {
    let name = "all-or-none associator laws";
    let law = "[[x,y,z],x]=1; [x,y,[y,z]]=1; [x,y,z]^-1=[x^-1,y,z]; [x,y,z]=[x,z,y^-1] hold together";
    if !is_moufang(q) {
        return (
            None,
            CheckRecord::skipped(name, law, "not a Moufang loop"),
        );
    }
    let e = q.identity();
    let inv = |x: Elem| q.rdiv(e, x);
    let mut h = [true; 4];
    for x in q.elems() {
        for y in q.elems() {
            for z in q.elems() {
                let br = assoc_bracket(q, x, y, z);
                if h[0] && commutator_bracket(q, br, x) != e {
                    h[0] = false;
                }
                if h[1] && assoc_bracket(q, x, y, commutator_bracket(q, y, z)) != e {
                    h[1] = false;
                }
                if h[2] && inv(br) != assoc_bracket(q, inv(x), y, z) {
                    h[2] = false;
                }
                if h[3] && br != assoc_bracket(q, x, z, inv(y)) {
                    h[3] = false;
                }
            }
        }
    }
    let all_agree = h.iter().all(|&b| b == h[0]);
    let record = if all_agree {
        CheckRecord::pass(name, law)
    } else {
        CheckRecord::fail(name, law, format!("law status differs: {:?}", h))
    };
    (Some(h[0] && all_agree), record)
}

/// The consequences available once the four laws hold: full associator
/// symmetry, the commutator expansion with cubed associator, and the inner
/// translation companion laws.
pub fn moufang_conditional_identities(q: &CayleyLoop) -> Vec<CheckRecord> {
    let e = q.identity();
    let inv = |x: Elem| q.rdiv(e, x);
    let cube = |c: Elem| q.pow_unchecked(c, 3);
    let mut records = Vec::new();

    let name = "associator cyclic symmetry";
    let law = "[x,y,z] = [y,z,x] = [y,x,z]^-1";
    let mut w = None;
    'a: for x in q.elems() {
        for y in q.elems() {
            for z in q.elems() {
                let br = assoc_bracket(q, x, y, z);
                if br != assoc_bracket(q, y, z, x) || br != inv(assoc_bracket(q, y, x, z)) {
                    w = Some(format!("x={}, y={}, z={}", lbl(q, x), lbl(q, y), lbl(q, z)));
                    break 'a;
                }
            }
        }
    }
    records.push(CheckRecord::from_witness(name, law, w));

    let name = "commutator product expansion";
    let law = "[xy,z] = [x,z][[x,z],y][y,z][x,y,z]^3";
    let mut w = None;
    'b: for x in q.elems() {
        for y in q.elems() {
            for z in q.elems() {
                let lhs = commutator_bracket(q, q.mul(x, y), z);
                let xz = commutator_bracket(q, x, z);
                let t = q.mul(xz, commutator_bracket(q, xz, y));
                let t = q.mul(t, commutator_bracket(q, y, z));
                let rhs = q.mul(t, cube(assoc_bracket(q, x, y, z)));
                if lhs != rhs {
                    w = Some(format!("x={}, y={}, z={}", lbl(q, x), lbl(q, y), lbl(q, z)));
                    break 'b;
                }
            }
        }
    }
    records.push(CheckRecord::from_witness(name, law, w));

    records.push(moufang_translation_twist_law(q));
    records
}

/// `L(z,y)x = x[x,y,z]^-1`: the twist form of the inner translation. Holds
/// when the four associator laws do (the unconditional relation is
/// `L(z,y)x = beta(x,y,z)x`).
pub fn moufang_translation_twist_law(q: &CayleyLoop) -> CheckRecord {
    let e = q.identity();
    let inv = |x: Elem| q.rdiv(e, x);
    let name = "inner translation twist";
    let law = "L(z,y)x = x[x,y,z]^-1";
    let mut w = None;
    'a: for z in q.elems() {
        for y in q.elems() {
            let l = inner_l(q, z, y);
            for x in q.elems() {
                if l.apply(x) != q.mul(x, inv(assoc_bracket(q, x, y, z))) {
                    w = Some(format!("x={}, y={}, z={}", lbl(q, x), lbl(q, y), lbl(q, z)));
                    break 'a;
                }
            }
        }
    }
    CheckRecord::from_witness(name, law, w)
}

/// In every Moufang loop, `L(z,u)` is a pseudo-automorphism with companion
/// `[u^-1,z^-1]`.
pub fn moufang_companion_law(q: &CayleyLoop) -> CheckRecord {
    let e = q.identity();
    let inv = |x: Elem| q.rdiv(e, x);
    let name = "inner translation companion product";
    let law = "L(z,u)(xy) * [u^-1,z^-1] = L(z,u)x * (L(z,u)y * [u^-1,z^-1])";
    if !is_moufang(q) {
        return CheckRecord::skipped(name, law, "not a Moufang loop");
    }
    let mut w = None;
    'b: for z in q.elems() {
        for u in q.elems() {
            let l = inner_l(q, z, u);
            let comp = commutator_bracket(q, inv(u), inv(z));
            for x in q.elems() {
                let lx = l.apply(x);
                for y in q.elems() {
                    let lhs = q.mul(l.apply(q.mul(x, y)), comp);
                    let rhs = q.mul(lx, q.mul(l.apply(y), comp));
                    if lhs != rhs {
                        w = Some(format!(
                            "x={}, y={}, z={}, u={}",
                            lbl(q, x),
                            lbl(q, y),
                            lbl(q, z),
                            lbl(q, u)
                        ));
                        break 'b;
                    }
                }
            }
        }
    }
    CheckRecord::from_witness(name, law, w)
}

/// Nucleus coincidences: on IP loops all three nuclei agree; on A-loops the
/// left and right nuclei agree and sit inside the middle nucleus.
pub fn nucleus_relations(q: &CayleyLoop) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let nuc = nuclei(q);
    if is_ip(q) {
        let name = "IP nucleus coincidence";
        let law = "N_left = N_right = N_middle";
        if nuc.left.members() == nuc.right.members() && nuc.left.members() == nuc.middle.members()
        {
            records.push(CheckRecord::pass(name, law));
        } else {
            records.push(CheckRecord::fail(
                name,
                law,
                format!(
                    "|N_left|={}, |N_middle|={}, |N_right|={}",
                    nuc.left.len(),
                    nuc.middle.len(),
                    nuc.right.len()
                ),
            ));
        }
    }
    if is_a_loop(q) {
        let name = "A-loop nucleus relation";
        let law = "N_left = N_right, both inside N_middle";
        let ok = nuc.left.members() == nuc.right.members()
            && nuc.left.members().iter().all(|&m| nuc.middle.contains(m));
        if ok {
            records.push(CheckRecord::pass(name, law));
        } else {
            records.push(CheckRecord::fail(
                name,
                law,
                format!(
                    "|N_left|={}, |N_middle|={}, |N_right|={}",
                    nuc.left.len(),
                    nuc.middle.len(),
                    nuc.right.len()
                ),
            ));
        }
    }
    records
}

/// On A-loops: inverse property, the alternative laws, diassociativity and
/// the Moufang law are all equivalent.
pub fn a_loop_equivalence(q: &CayleyLoop) -> CheckRecord {
    let name = "A-loop property equivalence";
    let law = "IP <=> alternative <=> diassociative <=> Moufang (for A-loops)";
    if !is_a_loop(q) {
        return CheckRecord::skipped(name, law, "not an A-loop");
    }
    let ip = is_ip(q);
    let alt = is_alternative(q);
    let dia = is_diassociative(q);
    let mou = is_moufang(q);
    if ip == alt && ip == dia && ip == mou {
        CheckRecord::pass(name, law)
    } else {
        CheckRecord::fail(
            name,
            law,
            format!("IP={}, alternative={}, diassociative={}, Moufang={}", ip, alt, dia, mou),
        )
    }
}

/// The bracket expansion identities of class-2 Moufang loops, with the first
/// one or two arguments restricted to `ab_members` (either the whole carrier,
/// or the image of a lower-series member when checking the congruence form in
/// a quotient). `suffix` distinguishes record names across quotient levels.
pub fn moufang_expansion_battery(
    q: &CayleyLoop,
    ab_members: &[Elem],
    suffix: &str,
) -> Vec<CheckRecord> {
    let e = q.identity();
    let inv = |x: Elem| q.rdiv(e, x);
    let cube = |c: Elem| q.pow_unchecked(c, 3);
    let mut records = Vec::new();
    let named = |n: &str| format!("{}{}", n, suffix);

    // [a,x,y] = [x,y,a] = [y,a,x]
    let mut w = None;
    'c45: for &a in ab_members {
        for x in q.elems() {
            for y in q.elems() {
                let br = assoc_bracket(q, a, x, y);
                if br != assoc_bracket(q, x, y, a) || br != assoc_bracket(q, y, a, x) {
                    w = Some(format!("a={}, x={}, y={}", lbl(q, a), lbl(q, x), lbl(q, y)));
                    break 'c45;
                }
            }
        }
    }
    records.push(CheckRecord::from_witness(
        named("associator rotation"),
        "[a,x,y] = [x,y,a] = [y,a,x]",
        w,
    ));

    // [a,x,y]^-1 = [a^-1,x,y] = [a,x^-1,y] = [a,y,x]
    let mut w = None;
    'c46: for &a in ab_members {
        for x in q.elems() {
            for y in q.elems() {
                let bi = inv(assoc_bracket(q, a, x, y));
                if bi != assoc_bracket(q, inv(a), x, y)
                    || bi != assoc_bracket(q, a, inv(x), y)
                    || bi != assoc_bracket(q, a, y, x)
                {
                    w = Some(format!("a={}, x={}, y={}", lbl(q, a), lbl(q, x), lbl(q, y)));
                    break 'c46;
                }
            }
        }
    }
    records.push(CheckRecord::from_witness(
        named("associator inversion"),
        "[a,x,y]^-1 = [a^-1,x,y] = [a,x^-1,y] = [a,y,x]",
        w,
    ));

    // [ab,x] = [a,x][b,x][a,b,x]^3 and [a,xy] = [a,x][a,y][a,x,y]^3
    let mut w = None;
    'c47: for &a in ab_members {
        for &b in ab_members {
            for x in q.elems() {
                let lhs = commutator_bracket(q, q.mul(a, b), x);
                let rhs = q.mul(
                    q.mul(commutator_bracket(q, a, x), commutator_bracket(q, b, x)),
                    cube(assoc_bracket(q, a, b, x)),
                );
                if lhs != rhs {
                    w = Some(format!("a={}, b={}, x={}", lbl(q, a), lbl(q, b), lbl(q, x)));
                    break 'c47;
                }
            }
        }
    }
    if w.is_none() {
        'c47b: for &a in ab_members {
            for x in q.elems() {
                for y in q.elems() {
                    let lhs = commutator_bracket(q, a, q.mul(x, y));
                    let rhs = q.mul(
                        q.mul(commutator_bracket(q, a, x), commutator_bracket(q, a, y)),
                        cube(assoc_bracket(q, a, x, y)),
                    );
                    if lhs != rhs {
                        w = Some(format!("a={}, x={}, y={}", lbl(q, a), lbl(q, x), lbl(q, y)));
                        break 'c47b;
                    }
                }
            }
        }
    }
    records.push(CheckRecord::from_witness(
        named("commutator bilinearity with cube"),
        "[ab,x] = [a,x][b,x][a,b,x]^3 and [a,xy] = [a,x][a,y][a,x,y]^3",
        w,
    ));

    // [a,xy,z] = [a,x,z][a,y,z] and [a,x,yz] = [a,x,y][a,x,z]
    let mut w = None;
    'c48: for &a in ab_members {
        for x in q.elems() {
            for y in q.elems() {
                for z in q.elems() {
                    let l1 = assoc_bracket(q, a, q.mul(x, y), z);
                    let r1 = q.mul(assoc_bracket(q, a, x, z), assoc_bracket(q, a, y, z));
                    let l2 = assoc_bracket(q, a, x, q.mul(y, z));
                    let r2 = q.mul(assoc_bracket(q, a, x, y), assoc_bracket(q, a, x, z));
                    if l1 != r1 || l2 != r2 {
                        w = Some(format!(
                            "a={}, x={}, y={}, z={}",
                            lbl(q, a),
                            lbl(q, x),
                            lbl(q, y),
                            lbl(q, z)
                        ));
                        break 'c48;
                    }
                }
            }
        }
    }
    records.push(CheckRecord::from_witness(
        named("associator argument additivity"),
        "[a,xy,z] = [a,x,z][a,y,z] and [a,x,yz] = [a,x,y][a,x,z]",
        w,
    ));

    // [ab,x,y] = [a,x,y][b,x,y]
    let mut w = None;
    'c49: for &a in ab_members {
        for &b in ab_members {
            for x in q.elems() {
                for y in q.elems() {
                    let lhs = assoc_bracket(q, q.mul(a, b), x, y);
                    let rhs = q.mul(assoc_bracket(q, a, x, y), assoc_bracket(q, b, x, y));
                    if lhs != rhs {
                        w = Some(format!(
                            "a={}, b={}, x={}, y={}",
                            lbl(q, a),
                            lbl(q, b),
                            lbl(q, x),
                            lbl(q, y)
                        ));
                        break 'c49;
                    }
                }
            }
        }
    }
    records.push(CheckRecord::from_witness(
        named("associator first-argument additivity"),
        "[ab,x,y] = [a,x,y][b,x,y]",
        w,
    ));

    records
}

/// The expansion identities of class-2 A-loops for the commutator `( , )` and
/// both associators `alpha`, `beta`, including the division forms.
pub fn aloop_expansion_battery(
    q: &CayleyLoop,
    ab_members: &[Elem],
    suffix: &str,
) -> Vec<CheckRecord> {
    let e = q.identity();
    let inv = |x: Elem| q.rdiv(e, x);
    let named = |n: &str| format!("{}{}", n, suffix);
    let mut records = Vec::new();

    type Assoc = fn(&CayleyLoop, Elem, Elem, Elem) -> Elem;
    let gammas: [(&str, Assoc); 2] = [("alpha", assoc_alpha), ("beta", assoc_beta)];

    // (ab,x) = (a,x)(b,x) and (a,xy) = (a,x)(a,y)
    let mut w = None;
    'c410: for &a in ab_members {
        for &b in ab_members {
            for x in q.elems() {
                let l = commutator_paren(q, q.mul(a, b), x);
                let r = q.mul(commutator_paren(q, a, x), commutator_paren(q, b, x));
                if l != r {
                    w = Some(format!("a={}, b={}, x={}", lbl(q, a), lbl(q, b), lbl(q, x)));
                    break 'c410;
                }
            }
        }
    }
    if w.is_none() {
        'c410b: for &a in ab_members {
            for x in q.elems() {
                for y in q.elems() {
                    let l = commutator_paren(q, a, q.mul(x, y));
                    let r = q.mul(commutator_paren(q, a, x), commutator_paren(q, a, y));
                    if l != r {
                        w = Some(format!("a={}, x={}, y={}", lbl(q, a), lbl(q, x), lbl(q, y)));
                        break 'c410b;
                    }
                }
            }
        }
    }
    records.push(CheckRecord::from_witness(
        named("commutator bilinearity"),
        "(ab,x) = (a,x)(b,x) and (a,xy) = (a,x)(a,y)",
        w,
    ));

    // gamma(ab,x,y) = gamma(a,x,y)gamma(b,x,y) etc.
    for (gname, g) in gammas {
        let mut w = None;
        'c411: for &a in ab_members {
            for &b in ab_members {
                for x in q.elems() {
                    for y in q.elems() {
                        let l = g(q, q.mul(a, b), x, y);
                        let r = q.mul(g(q, a, x, y), g(q, b, x, y));
                        if l != r {
                            w = Some(format!(
                                "a={}, b={}, x={}, y={}",
                                lbl(q, a),
                                lbl(q, b),
                                lbl(q, x),
                                lbl(q, y)
                            ));
                            break 'c411;
                        }
                    }
                }
            }
        }
        if w.is_none() {
            'c411b: for &a in ab_members {
                for x in q.elems() {
                    for y in q.elems() {
                        for z in q.elems() {
                            let l1 = g(q, a, q.mul(x, y), z);
                            let r1 = q.mul(g(q, a, x, z), g(q, a, y, z));
                            let l2 = g(q, a, x, q.mul(y, z));
                            let r2 = q.mul(g(q, a, x, y), g(q, a, x, z));
                            if l1 != r1 || l2 != r2 {
                                w = Some(format!(
                                    "a={}, x={}, y={}, z={}",
                                    lbl(q, a),
                                    lbl(q, x),
                                    lbl(q, y),
                                    lbl(q, z)
                                ));
                                break 'c411b;
                            }
                        }
                    }
                }
            }
        }
        records.push(CheckRecord::from_witness(
            named(&format!("{} additivity", gname)),
            "gamma(ab,x,y) = gamma(a,x,y)gamma(b,x,y); gamma(a,xy,z) = gamma(a,x,z)gamma(a,y,z); gamma(a,x,yz) = gamma(a,x,y)gamma(a,x,z)",
            w,
        ));
    }

    // Division forms for the commutator.
    let mut w = None;
    'c412: for &a in ab_members {
        for &b in ab_members {
            for x in q.elems() {
                let l = commutator_paren(q, q.ldiv(a, b), x);
                let r = q.mul(inv(commutator_paren(q, a, x)), commutator_paren(q, b, x));
                let l2 = commutator_paren(q, q.rdiv(a, b), x);
                let r2 = q.mul(commutator_paren(q, a, x), inv(commutator_paren(q, b, x)));
                if l != r || l2 != r2 {
                    w = Some(format!("a={}, b={}, x={}", lbl(q, a), lbl(q, b), lbl(q, x)));
                    break 'c412;
                }
            }
        }
    }
    if w.is_none() {
        'c412b: for &a in ab_members {
            for x in q.elems() {
                for y in q.elems() {
                    let l = commutator_paren(q, a, q.ldiv(x, y));
                    let r = q.mul(inv(commutator_paren(q, a, x)), commutator_paren(q, a, y));
                    let l2 = commutator_paren(q, a, q.rdiv(x, y));
                    let r2 = q.mul(commutator_paren(q, a, x), inv(commutator_paren(q, a, y)));
                    if l != r || l2 != r2 {
                        w = Some(format!("a={}, x={}, y={}", lbl(q, a), lbl(q, x), lbl(q, y)));
                        break 'c412b;
                    }
                }
            }
        }
    }
    records.push(CheckRecord::from_witness(
        named("commutator division forms"),
        "(a\\b,x) = (a,x)^-1(b,x); (a/b,x) = (a,x)(b,x)^-1; and the x-side analogues",
        w,
    ));

    // Division forms for both associators.
    for (gname, g) in gammas {
        let mut w = None;
        'c413: for &a in ab_members {
            for &b in ab_members {
                for x in q.elems() {
                    for y in q.elems() {
                        let l = g(q, q.ldiv(a, b), x, y);
                        let r = q.mul(inv(g(q, a, x, y)), g(q, b, x, y));
                        let l2 = g(q, q.rdiv(a, b), x, y);
                        let r2 = q.mul(g(q, a, x, y), inv(g(q, b, x, y)));
                        if l != r || l2 != r2 {
                            w = Some(format!(
                                "a={}, b={}, x={}, y={}",
                                lbl(q, a),
                                lbl(q, b),
                                lbl(q, x),
                                lbl(q, y)
                            ));
                            break 'c413;
                        }
                    }
                }
            }
        }
        if w.is_none() {
            'c413b: for &a in ab_members {
                for x in q.elems() {
                    for y in q.elems() {
                        for z in q.elems() {
                            let l1 = g(q, a, q.ldiv(x, y), z);
                            let r1 = q.mul(inv(g(q, a, x, z)), g(q, a, y, z));
                            let l2 = g(q, a, x, q.ldiv(y, z));
                            let r2 = q.mul(inv(g(q, a, x, y)), g(q, a, x, z));
                            let l3 = g(q, a, q.rdiv(x, y), z);
                            let r3 = q.mul(g(q, a, x, z), inv(g(q, a, y, z)));
                            let l4 = g(q, a, x, q.rdiv(y, z));
                            let r4 = q.mul(g(q, a, x, y), inv(g(q, a, x, z)));
                            if l1 != r1 || l2 != r2 || l3 != r3 || l4 != r4 {
                                w = Some(format!(
                                    "a={}, x={}, y={}, z={}",
                                    lbl(q, a),
                                    lbl(q, x),
                                    lbl(q, y),
                                    lbl(q, z)
                                ));
                                break 'c413b;
                            }
                        }
                    }
                }
            }
        }
        records.push(CheckRecord::from_witness(
            named(&format!("{} division forms", gname)),
            "gamma(a\\b,x,y) = gamma(a,x,y)^-1 gamma(b,x,y); gamma(a/b,x,y) = gamma(a,x,y) gamma(b,x,y)^-1; and the argument-side analogues",
            w,
        ));
    }

    records
}

/// The structural law battery applicable to a loop, chosen by its
/// classification.
pub fn lemma_battery(q: &CayleyLoop) -> Vec<CheckRecord> {
    let props = classify::properties(q);
    let mut records = vec![moufang_identity_agreement(q)];
    if props.inverse_property {
        records.push(ip_alpha_beta_inverse_law(q));
    }
    if props.moufang {
        records.extend(moufang_bracket_laws(q));
        records.push(moufang_associator_symmetry(q));
        records.push(moufang_quadruple_equivalence(q));
        records.push(moufang_companion_law(q));
        let (status, record) = moufang_four_law_status(q);
        records.push(record);
        if status == Some(true) {
            records.extend(moufang_conditional_identities(q));
        }
    }
    records.extend(nucleus_relations(q));
    if props.a_loop {
        records.push(a_loop_equivalence(q));
    }
    records
}
