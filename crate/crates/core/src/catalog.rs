//! Built-in fixture loops.
//!
//! Everything here is constructed programmatically and funnels through the
//! validating constructor, so a bug in a builder shows up as a table error
//! rather than a silently bad fixture. The octonion unit loop is built by one
//! doubling step over the quaternion units: with basis pairs written `(a, b)`,
//! the product is `(a,b)(c,d) = (ac - d*b, da + bc*)` where `*` conjugates.

use crate::cayley::{chein_double, direct_product, CayleyLoop, GroupTable};

/// Cyclic group of order `n`.
pub fn cyclic(n: usize) -> CayleyLoop {
    let mut mul = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            mul[i * n + j] = ((i + j) % n) as u16;
        }
    }
    CayleyLoop::from_mul(n, mul, Some(format!("Z{}", n))).expect("cyclic table is a loop")
}

/// Trivial loop of order 1.
pub fn trivial() -> CayleyLoop {
    cyclic(1).with_name("Z1")
}

/// Klein four-group.
pub fn klein() -> CayleyLoop {
    direct_product(&cyclic(2), &cyclic(2))
        .expect("product of Z2 with itself")
        .with_name("V4")
}

/// Symmetric group on three letters, elements in lexicographic one-line order.
pub fn s3() -> CayleyLoop {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    let n = perms.len();
    let mut mul = vec![0u16; n * n];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let comp = [p[q[0]], p[q[1]], p[q[2]]];
            mul[i * n + j] = index_of(&comp) as u16;
        }
    }
    CayleyLoop::from_mul(n, mul, Some("S3".into())).expect("S3 table is a loop")
}

/// Dihedral group of order 8: elements `r^a s^b` with `a` in `0..4`, `b` in `0..2`,
/// indexed as `a + 4b`.
pub fn d4() -> CayleyLoop {
    let n = 8;
    let mut mul = vec![0u16; n * n];
    for a in 0..4usize {
        for b in 0..2usize {
            for c in 0..4usize {
                for d in 0..2usize {
                    // (r^a s^b)(r^c s^d) = r^(a + c or a - c) s^(b+d)
                    let rot = if b == 0 { (a + c) % 4 } else { (a + 4 - c) % 4 };
                    let i = a + 4 * b;
                    let j = c + 4 * d;
                    mul[i * n + j] = (rot + 4 * ((b + d) % 2)) as u16;
                }
            }
        }
    }
    let labels = (0..n)
        .map(|i| {
            if i < 4 {
                format!("r{}", i)
            } else {
                format!("r{}s", i - 4)
            }
        })
        .collect();
    CayleyLoop::from_mul(n, mul, Some("D4".into()))
        .expect("D4 table is a loop")
        .with_labels(labels)
}

// Quaternion structure constants on the basis (1, i, j, k):
// qmul(a, b) = (basis, negative).
fn qmul(a: usize, b: usize) -> (usize, bool) {
    const BASIS: [[usize; 4]; 4] = [
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
    ];
    const NEG: [[bool; 4]; 4] = [
        [false, false, false, false],
        [false, true, false, true],
        [false, true, true, false],
        [false, false, true, true],
    ];
    (BASIS[a][b], NEG[a][b])
}

/// Quaternion unit group of order 8: `{±1, ±i, ±j, ±k}`, indexed as
/// `basis * 2 + sign` with sign bit 1 meaning negative.
pub fn q8() -> CayleyLoop {
    let n = 8;
    let mut mul = vec![0u16; n * n];
    for a in 0..4 {
        for sa in 0..2 {
            for b in 0..4 {
                for sb in 0..2 {
                    let (c, neg) = qmul(a, b);
                    let sc = (sa + sb + neg as usize) % 2;
                    mul[(a * 2 + sa) * n + (b * 2 + sb)] = (c * 2 + sc) as u16;
                }
            }
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    CayleyLoop::from_mul(n, mul, Some("Q8".into()))
        .expect("Q8 table is a loop")
        .with_labels(names.iter().map(|s| s.to_string()).collect())
}

// Octonion structure constants by one doubling step over the quaternions:
// basis 0..4 is (q_m, 0), basis 4..8 is (0, q_{m-4}).
fn omul(a: usize, b: usize) -> (usize, bool) {
    match (a < 4, b < 4) {
        // (q_a, 0)(q_b, 0) = (q_a q_b, 0)
        (true, true) => qmul(a, b),
        // (q_a, 0)(0, q_d) = (0, q_d q_a)
        (true, false) => {
            let (c, neg) = qmul(b - 4, a);
            (c + 4, neg)
        }
        // (0, q_b)(q_c, 0) = (0, q_b q_c*)
        (false, true) => {
            let (c, neg) = qmul(a - 4, b);
            (c + 4, neg ^ (b != 0))
        }
        // (0, q_b)(0, q_d) = (-q_d* q_b, 0)
        (false, false) => {
            let (c, neg) = qmul(b - 4, a - 4);
            (c, neg ^ (b != 4) ^ true)
        }
    }
}

/// Octonion unit loop of order 16: `{±1, ±e1, ..., ±e7}`, indexed as
/// `basis * 2 + sign`. Moufang, nonassociative, centrally nilpotent of
/// class 2 with centre `{1, -1}`.
pub fn o16() -> CayleyLoop {
    let n = 16;
    let mut mul = vec![0u16; n * n];
    for a in 0..8 {
        for sa in 0..2 {
            for b in 0..8 {
                for sb in 0..2 {
                    let (c, neg) = omul(a, b);
                    let sc = (sa + sb + neg as usize) % 2;
                    mul[(a * 2 + sa) * n + (b * 2 + sb)] = (c * 2 + sc) as u16;
                }
            }
        }
    }
    let labels = (0..n)
        .map(|i| {
            let sign = if i % 2 == 1 { "-" } else { "" };
            if i / 2 == 0 {
                format!("{}1", sign)
            } else {
                format!("{}e{}", sign, i / 2)
            }
        })
        .collect();
    CayleyLoop::from_mul(n, mul, Some("O16".into()))
        .expect("O16 table is a loop")
        .with_labels(labels)
}

/// Chein double `M(S3,2)`: the smallest nonassociative Moufang loop, order 12.
pub fn m_s3_2() -> CayleyLoop {
    let g = GroupTable::new(s3()).expect("S3 is a group");
    chein_double(&g).expect("Chein double of S3")
}

/// The standard fixture set: cyclic groups to order 8, the Klein four-group,
/// `S3`, `D4`, `Q8`, `M(S3,2)`, `O16`, and small direct products.
pub fn all() -> Vec<CayleyLoop> {
    let mut out: Vec<CayleyLoop> = (1..=8).map(cyclic).collect();
    out.push(klein());
    out.push(s3());
    out.push(d4());
    out.push(q8());
    out.push(m_s3_2());
    out.push(o16());
    out.push(
        direct_product(&cyclic(2), &cyclic(4))
            .expect("Z2 x Z4")
            .with_name("Z2xZ4"),
    );
    out.push(
        direct_product(&cyclic(3), &cyclic(3))
            .expect("Z3 x Z3")
            .with_name("Z3xZ3"),
    );
    out.push(
        direct_product(&cyclic(2), &m_s3_2())
            .expect("Z2 x M(S3,2)")
            .with_name("Z2xM(S3,2)"),
    );
    out
}

/// The order-24 product fixture `Z2 x M(S3,2)`.
pub fn direct_product_fixture() -> CayleyLoop {
    direct_product(&cyclic(2), &m_s3_2())
        .expect("Z2 x M(S3,2)")
        .with_name("Z2xM(S3,2)")
}

/// File-safe name for a fixture, used by the catalog emitter.
pub fn file_name(loop_name: &str) -> String {
    let mut s = String::new();
    for ch in loop_name.chars() {
        match ch {
            '(' | ')' | ',' => s.push('_'),
            c => s.push(c.to_ascii_lowercase()),
        }
    }
    let trimmed: String = s.trim_matches('_').replace("__", "_");
    format!("{}.tbl", trimmed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_are_associative() {
        for q in [cyclic(8), klein(), s3(), d4(), q8()] {
            assert!(q.associativity_witness().is_none(), "{:?}", q.name());
        }
    }

    #[test]
    fn s3_is_nonabelian() {
        let q = s3();
        let noncomm = q
            .elems()
            .any(|a| q.elems().any(|b| q.mul(a, b) != q.mul(b, a)));
        assert!(noncomm);
    }

    #[test]
    fn chein_double_of_s3_is_nonassociative() {
        let q = m_s3_2();
        assert_eq!(q.order(), 12);
        assert!(q.associativity_witness().is_some());
    }

    #[test]
    fn o16_is_nonassociative_order_16() {
        let q = o16();
        assert_eq!(q.order(), 16);
        assert!(q.associativity_witness().is_some());
    }

    #[test]
    fn o16_squares() {
        let q = o16();
        // e1^2 = -1, and (-1)^2 = 1.
        let e1 = q.elem(2).unwrap();
        let minus_one = q.elem(1).unwrap();
        assert_eq!(q.elem_pow(e1, 2).unwrap(), minus_one);
        assert_eq!(q.elem_pow(minus_one, 2).unwrap(), q.identity());
    }

    #[test]
    fn q8_relations() {
        let q = q8();
        let i = q.elem(2).unwrap();
        let j = q.elem(4).unwrap();
        let k = q.elem(6).unwrap();
        let minus_one = q.elem(1).unwrap();
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i).index(), 7); // -k
        assert_eq!(q.mul(i, i), minus_one);
    }

    #[test]
    fn d4_center() {
        let q = d4();
        // r^2 commutes with everything; r does not.
        let r = q.elem(1).unwrap();
        let r2 = q.elem(2).unwrap();
        assert!(q.elems().all(|x| q.mul(r2, x) == q.mul(x, r2)));
        assert!(q.elems().any(|x| q.mul(r, x) != q.mul(x, r)));
    }

    #[test]
    fn catalog_names_are_unique() {
        let all = all();
        let mut names: Vec<&str> = all.iter().map(|q| q.name().unwrap()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
    }

    #[test]
    fn file_names_are_sane() {
        assert_eq!(file_name("M(S3,2)"), "m_s3_2.tbl");
        assert_eq!(file_name("Z2xZ4"), "z2xz4.tbl");
    }
}
