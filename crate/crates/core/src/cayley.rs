//! Finite loops as validated Cayley tables.
//!
//! A loop is stored as its multiplication table together with the two
//! division tables derived from it (`x\y` by inverting rows, `x/y` by
//! inverting columns). Construction always goes through [`CayleyLoop::from_mul`],
//! which checks the Latin-square property and locates the two-sided identity,
//! so every value of this type is a genuine loop. All types here are immutable
//! after construction and every operation is a pure table lookup.

use crate::error::{Axis, LoopError, Result};

/// Global cap on loop orders accepted by every constructor.
pub const ORDER_CAP: usize = 256;

/// An element of a specific [`CayleyLoop`], as a dense 0-based index.
///
/// An `Elem` is only meaningful relative to the loop that produced it;
/// using it with a different loop of another order panics on the bounds
/// check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u16);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite loop given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyLoop {
    order: usize,
    mul: Vec<u16>,
    ldiv: Vec<u16>,
    rdiv: Vec<u16>,
    identity: u16,
    name: Option<String>,
    labels: Option<Vec<String>>,
}

impl CayleyLoop {
    /// Builds a loop from a row-major multiplication table (`mul[i*n + j] = i*j`).
    ///
    /// Validates the order cap, the Latin-square property of every row and
    /// column, and the existence of a two-sided identity, then derives the
    /// division tables.
    pub fn from_mul(order: usize, mul: Vec<u16>, name: Option<String>) -> Result<CayleyLoop> {
        if order == 0 {
            return Err(LoopError::MalformedInput {
                line: 1,
                msg: "order must be positive".into(),
            });
        }
        if order > ORDER_CAP {
            return Err(LoopError::SizeCap {
                requested: order,
                cap: ORDER_CAP,
            });
        }
        if mul.len() != order * order {
            return Err(LoopError::MalformedInput {
                line: 1,
                msg: format!("expected {} entries, got {}", order * order, mul.len()),
            });
        }
        for &v in &mul {
            if (v as usize) >= order {
                return Err(LoopError::MalformedInput {
                    line: 1,
                    msg: format!("entry {} out of range [0,{})", v, order),
                });
            }
        }

        // Latin square: every row and column hits each value once.
        for i in 0..order {
            let mut seen = vec![usize::MAX; order];
            for j in 0..order {
                let v = mul[i * order + j] as usize;
                if seen[v] != usize::MAX {
                    return Err(LoopError::NotLatin {
                        axis: Axis::Row,
                        index: i,
                        value: v,
                        first: seen[v],
                        second: j,
                    });
                }
                seen[v] = j;
            }
        }
        for j in 0..order {
            let mut seen = vec![usize::MAX; order];
            for i in 0..order {
                let v = mul[i * order + j] as usize;
                if seen[v] != usize::MAX {
                    return Err(LoopError::NotLatin {
                        axis: Axis::Col,
                        index: j,
                        value: v,
                        first: seen[v],
                        second: i,
                    });
                }
                seen[v] = i;
            }
        }

        // Two-sided identity at any index.
        let mut identity = None;
        'scan: for e in 0..order {
            for x in 0..order {
                if mul[e * order + x] as usize != x || mul[x * order + e] as usize != x {
                    continue 'scan;
                }
            }
            identity = Some(e as u16);
            break;
        }
        let identity = identity.ok_or(LoopError::NoIdentity)?;

        // ldiv[a][c] = b with a*b = c (invert rows); rdiv[c][b] = a with a*b = c.
        let mut ldiv = vec![0u16; order * order];
        let mut rdiv = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                let c = mul[a * order + b] as usize;
                ldiv[a * order + c] = b as u16;
                rdiv[c * order + b] = a as u16;
            }
        }

        Ok(CayleyLoop {
            order,
            mul,
            ldiv,
            rdiv,
            identity,
            name,
            labels: None,
        })
    }

    /// Parses the textual table format: first line the order `n`, then `n`
    /// lines of `n` space-separated entries in `[0,n)`; trailing lines may be
    /// comments starting with `#`.
    pub fn parse_table(text: &str) -> Result<CayleyLoop> {
        let mut lines = text.lines().enumerate();
        let (first_no, first) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or(LoopError::MalformedInput {
                line: 1,
                msg: "empty input".into(),
            })?;
        let order: usize = first.trim().parse().map_err(|_| LoopError::MalformedInput {
            line: first_no + 1,
            msg: format!("expected an order, got {:?}", first.trim()),
        })?;
        if order == 0 {
            return Err(LoopError::MalformedInput {
                line: first_no + 1,
                msg: "order must be positive".into(),
            });
        }
        if order > ORDER_CAP {
            return Err(LoopError::SizeCap {
                requested: order,
                cap: ORDER_CAP,
            });
        }

        let mut mul = Vec::with_capacity(order * order);
        let mut rows = 0usize;
        let mut trailer = false;
        for (no, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('#') {
                trailer = true;
                continue;
            }
            if trailer || rows == order {
                return Err(LoopError::MalformedInput {
                    line: no + 1,
                    msg: "unexpected data after the table".into(),
                });
            }
            let mut count = 0usize;
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| LoopError::MalformedInput {
                    line: no + 1,
                    msg: format!("not an integer: {:?}", tok),
                })?;
                if v >= order {
                    return Err(LoopError::MalformedInput {
                        line: no + 1,
                        msg: format!("entry {} out of range [0,{})", v, order),
                    });
                }
                mul.push(v as u16);
                count += 1;
            }
            if count != order {
                return Err(LoopError::MalformedInput {
                    line: no + 1,
                    msg: format!("expected {} entries in row, got {}", order, count),
                });
            }
            rows += 1;
        }
        if rows != order {
            return Err(LoopError::MalformedInput {
                line: 0,
                msg: format!("expected {} rows, got {}", order, rows),
            });
        }
        CayleyLoop::from_mul(order, mul, None)
    }

    /// Serializes to the exact textual table format accepted by [`Self::parse_table`].
    pub fn to_table_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.order.to_string());
        out.push('\n');
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|j| self.mul[i * self.order + j].to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        Elem(self.identity)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> CayleyLoop {
        self.name = Some(name.into());
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> CayleyLoop {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    /// Human-readable label of an element, falling back to its index.
    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(ls) => ls[a.index()].clone(),
            None => a.index().to_string(),
        }
    }

    /// Range-checked element constructor.
    pub fn elem(&self, index: usize) -> Result<Elem> {
        if index < self.order {
            Ok(Elem(index as u16))
        } else {
            Err(LoopError::ElemRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.order as u16).map(Elem)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.index() * self.order + b.index()])
    }

    /// Left division `a\b`: the unique `x` with `a*x = b`.
    #[inline]
    pub fn ldiv(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.ldiv[a.index() * self.order + b.index()])
    }

    /// Right division `a/b`: the unique `x` with `x*b = a`.
    #[inline]
    pub fn rdiv(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.rdiv[a.index() * self.order + b.index()])
    }

    #[inline]
    pub(crate) fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub(crate) fn ldiv_idx(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.order + b] as usize
    }

    #[inline]
    pub(crate) fn rdiv_idx(&self, a: usize, b: usize) -> usize {
        self.rdiv[a * self.order + b] as usize
    }

    /// `1/a`, the left inverse of `a`.
    #[inline]
    pub fn linv(&self, a: Elem) -> Elem {
        self.rdiv(self.identity(), a)
    }

    /// `a\1`, the right inverse of `a`.
    #[inline]
    pub fn rinv(&self, a: Elem) -> Elem {
        self.ldiv(a, self.identity())
    }

    /// Two-sided inverse when `1/a = a\1`, otherwise `NoInverse`.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        let l = self.linv(a);
        if l == self.rinv(a) {
            Ok(l)
        } else {
            Err(LoopError::NoInverse { elem: a.index() })
        }
    }

    /// `a^k`, defined by `a^0 = 1` and `a^k = a * a^(k-1)`.
    ///
    /// For `|k| >= 2` the bracketing only makes sense when powers of `a` are
    /// well defined, which is checked lazily by testing that the subloop
    /// generated by `a` is associative. Negative exponents additionally
    /// require a two-sided inverse.
    pub fn elem_pow(&self, a: Elem, k: i64) -> Result<Elem> {
        match k {
            0 => return Ok(self.identity()),
            1 => return Ok(a),
            _ => {}
        }
        let gen = self.mono_generated(a);
        for &x in &gen {
            for &y in &gen {
                for &z in &gen {
                    let xy_z = self.mul_idx(self.mul_idx(x, y), z);
                    let x_yz = self.mul_idx(x, self.mul_idx(y, z));
                    if xy_z != x_yz {
                        return Err(LoopError::NotPowerAssociative { elem: a.index() });
                    }
                }
            }
        }
        let base = if k < 0 { self.inv(a)? } else { a };
        let mut acc = base;
        for _ in 1..k.unsigned_abs() {
            acc = self.mul(base, acc);
        }
        Ok(acc)
    }

    /// Unchecked power for loops already known power-associative.
    pub(crate) fn pow_unchecked(&self, a: Elem, k: u32) -> Elem {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(a, acc);
        }
        acc
    }

    fn mono_generated(&self, a: Elem) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[self.identity as usize] = true;
        in_set[a.index()] = true;
        let mut members = vec![self.identity as usize, a.index()];
        if self.identity as usize == a.index() {
            members.pop();
        }
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            let mut j = 0;
            while j < members.len() {
                let y = members[j];
                j += 1;
                for v in [
                    self.mul_idx(x, y),
                    self.mul_idx(y, x),
                    self.ldiv_idx(x, y),
                    self.ldiv_idx(y, x),
                    self.rdiv_idx(x, y),
                    self.rdiv_idx(y, x),
                ] {
                    if !in_set[v] {
                        in_set[v] = true;
                        members.push(v);
                    }
                }
            }
        }
        members
    }

    /// Exhaustive associativity check; `None` means the table is a group table.
    pub fn associativity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        for a in 0..self.order {
            for b in 0..self.order {
                let ab = self.mul_idx(a, b);
                for c in 0..self.order {
                    if self.mul_idx(ab, c) != self.mul_idx(a, self.mul_idx(b, c)) {
                        return Some((Elem(a as u16), Elem(b as u16), Elem(c as u16)));
                    }
                }
            }
        }
        None
    }
}

/// A [`CayleyLoop`] whose multiplication is associative, i.e. a group table.
#[derive(Debug, Clone)]
pub struct GroupTable(CayleyLoop);

impl GroupTable {
    /// Checks associativity exhaustively.
    pub fn new(q: CayleyLoop) -> Result<GroupTable> {
        match q.associativity_witness() {
            None => Ok(GroupTable(q)),
            Some((a, b, c)) => Err(LoopError::NotAssociative {
                a: a.index(),
                b: b.index(),
                c: c.index(),
            }),
        }
    }

    pub fn as_loop(&self) -> &CayleyLoop {
        &self.0
    }

    pub fn into_loop(self) -> CayleyLoop {
        self.0
    }
}

/// Componentwise direct product. The identity is the pair of identities.
pub fn direct_product(q1: &CayleyLoop, q2: &CayleyLoop) -> Result<CayleyLoop> {
    let n1 = q1.order();
    let n2 = q2.order();
    let n = n1 * n2;
    if n > ORDER_CAP {
        return Err(LoopError::SizeCap {
            requested: n,
            cap: ORDER_CAP,
        });
    }
    let mut mul = vec![0u16; n * n];
    for a1 in 0..n1 {
        for a2 in 0..n2 {
            let a = a1 * n2 + a2;
            for b1 in 0..n1 {
                for b2 in 0..n2 {
                    let b = b1 * n2 + b2;
                    let c = q1.mul_idx(a1, b1) * n2 + q2.mul_idx(a2, b2);
                    mul[a * n + b] = c as u16;
                }
            }
        }
    }
    let name = match (q1.name(), q2.name()) {
        (Some(a), Some(b)) => Some(format!("{} x {}", a, b)),
        _ => None,
    };
    let mut out = CayleyLoop::from_mul(n, mul, name)?;
    if q1.labels.is_some() || q2.labels.is_some() {
        let labels = (0..n)
            .map(|i| {
                format!(
                    "({},{})",
                    q1.label(Elem((i / n2) as u16)),
                    q2.label(Elem((i % n2) as u16))
                )
            })
            .collect();
        out = out.with_labels(labels);
    }
    Ok(out)
}

/// Order-doubling construction on a group `G`: the carrier is `G ∪ Gu` with
///
/// ```text
/// g*h = gh,   g*(hu) = (hg)u,   (gu)*h = (g h^-1)u,   (gu)*(hu) = h^-1 g.
/// ```
///
/// The result is always a Moufang loop, nonassociative exactly when `G` is
/// nonabelian. Indices `0..n` are `G`, indices `n..2n` are `Gu`.
pub fn chein_double(g: &GroupTable) -> Result<CayleyLoop> {
    let q = g.as_loop();
    let n = q.order();
    let dn = 2 * n;
    if dn > ORDER_CAP {
        return Err(LoopError::SizeCap {
            requested: dn,
            cap: ORDER_CAP,
        });
    }
    let inv = |x: usize| q.rdiv_idx(q.identity().index(), x);
    let mut mul = vec![0u16; dn * dn];
    for a in 0..n {
        for b in 0..n {
            mul[a * dn + b] = q.mul_idx(a, b) as u16;
            mul[a * dn + (b + n)] = (q.mul_idx(b, a) + n) as u16;
            mul[(a + n) * dn + b] = (q.mul_idx(a, inv(b)) + n) as u16;
            mul[(a + n) * dn + (b + n)] = q.mul_idx(inv(b), a) as u16;
        }
    }
    let name = q.name().map(|s| format!("M({},2)", s));
    let mut out = CayleyLoop::from_mul(dn, mul, name)?;
    if q.labels.is_some() {
        let labels = (0..dn)
            .map(|i| {
                if i < n {
                    q.label(Elem(i as u16))
                } else {
                    format!("{}u", q.label(Elem((i - n) as u16)))
                }
            })
            .collect();
        out = out.with_labels(labels);
    }
    Ok(out)
}

/// A quotient loop together with the projection from the parent.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub loop_: CayleyLoop,
    /// `proj[i]` is the quotient element of parent element `i`.
    pub proj: Vec<Elem>,
    /// A representative of each coset, indexed by quotient element.
    pub reps: Vec<Elem>,
}

impl Quotient {
    pub fn project(&self, a: Elem) -> Elem {
        self.proj[a.index()]
    }

    /// Parent elements of a coset.
    pub fn coset(&self, c: Elem) -> Vec<Elem> {
        (0..self.proj.len())
            .filter(|&i| self.proj[i] == c)
            .map(|i| Elem(i as u16))
            .collect()
    }
}

/// Quotient of `q` by the subloop with the given member set.
///
/// Cosets are built by multiplying members on the right; the coset table is
/// re-verified to be independent of the chosen representatives, so passing a
/// non-normal subloop is reported as `NotNormal` rather than producing an
/// ill-defined table.
pub fn quotient(q: &CayleyLoop, members: &[Elem]) -> Result<Quotient> {
    let n = q.order();
    let mut in_sub = vec![false; n];
    for &m in members {
        in_sub[m.index()] = true;
    }
    if !in_sub[q.identity().index()] {
        return Err(LoopError::NotNormal {
            witness: "member set does not contain the identity".into(),
        });
    }

    const UNASSIGNED: u16 = u16::MAX;
    let mut coset_of = vec![UNASSIGNED; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != UNASSIGNED {
            continue;
        }
        let id = reps.len() as u16;
        reps.push(Elem(x as u16));
        for &m in members {
            let y = q.mul_idx(x, m.index());
            if coset_of[y] != UNASSIGNED {
                return Err(LoopError::NotNormal {
                    witness: format!("cosets of {} and {} overlap at {}", x, reps[coset_of[y] as usize], y),
                });
            }
            coset_of[y] = id;
        }
    }
    let k = reps.len();

    // Well-definedness: every pair of parent elements must multiply into the
    // coset predicted by their coset ids.
    let mut table = vec![UNASSIGNED; k * k];
    for a in 0..n {
        for b in 0..n {
            let ca = coset_of[a] as usize;
            let cb = coset_of[b] as usize;
            let cc = coset_of[q.mul_idx(a, b)];
            let slot = &mut table[ca * k + cb];
            if *slot == UNASSIGNED {
                *slot = cc;
            } else if *slot != cc {
                return Err(LoopError::NotNormal {
                    witness: format!(
                        "coset product of classes ({},{}) depends on representatives (saw {} and {})",
                        ca, cb, *slot, cc
                    ),
                });
            }
        }
    }

    let name = q.name().map(|s| format!("{}/N", s));
    let loop_ = CayleyLoop::from_mul(k, table, name)?;
    let proj = coset_of.into_iter().map(Elem).collect();
    Ok(Quotient { loop_, proj, reps })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cyclic(n: usize) -> CayleyLoop {
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = ((i + j) % n) as u16;
            }
        }
        CayleyLoop::from_mul(n, mul, Some(format!("Z{}", n))).unwrap()
    }

    #[test]
    fn parse_cyclic_three() {
        let q = CayleyLoop::parse_table("3\n0 1 2\n1 2 0\n2 0 1").unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.identity().index(), 0);
        assert_eq!(q.mul(q.elem(1).unwrap(), q.elem(2).unwrap()).index(), 0);
    }

    #[test]
    fn parse_rejects_repeated_entry() {
        let err = CayleyLoop::parse_table("2\n0 1\n1 1").unwrap_err();
        match err {
            LoopError::NotLatin { axis, index, .. } => {
                assert!(matches!(axis, Axis::Row | Axis::Col));
                assert_eq!(index, 1);
            }
            other => panic!("expected NotLatin, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_missing_identity() {
        let err = CayleyLoop::parse_table("3\n1 0 2\n0 2 1\n2 1 0").unwrap_err();
        assert!(matches!(err, LoopError::NoIdentity));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(
            CayleyLoop::parse_table("3\n0 1 2\n1 2 0\n2 0 x"),
            Err(LoopError::MalformedInput { .. })
        ));
        assert!(matches!(
            CayleyLoop::parse_table("3\n0 1 2\n1 2 0"),
            Err(LoopError::MalformedInput { .. })
        ));
        assert!(matches!(
            CayleyLoop::parse_table("3\n0 1 2 0\n1 2 0\n2 0 1"),
            Err(LoopError::MalformedInput { .. })
        ));
        assert!(matches!(
            CayleyLoop::parse_table("0\n"),
            Err(LoopError::MalformedInput { .. })
        ));
    }

    #[test]
    fn parse_allows_trailing_comments() {
        let q = CayleyLoop::parse_table("2\n0 1\n1 0\n# a comment\n# another\n").unwrap();
        assert_eq!(q.order(), 2);
    }

    #[test]
    fn serialize_roundtrip_is_identity() {
        let q = cyclic(6);
        let text = q.to_table_string();
        let q2 = CayleyLoop::parse_table(&text).unwrap();
        assert_eq!(q2.to_table_string(), text);
    }

    #[test]
    fn division_identities_hold() {
        let q = cyclic(5);
        for a in q.elems() {
            for b in q.elems() {
                let ab = q.mul(a, b);
                assert_eq!(q.ldiv(a, ab), b);
                assert_eq!(q.rdiv(ab, b), a);
                assert_eq!(q.mul(q.rdiv(a, b), b), a);
                assert_eq!(q.mul(a, q.ldiv(a, b)), b);
            }
        }
    }

    #[test]
    fn mul_by_identity_is_trivial() {
        let q = cyclic(7);
        let e = q.identity();
        for x in q.elems() {
            assert_eq!(q.mul(e, x), x);
            assert_eq!(q.mul(x, e), x);
        }
    }

    #[test]
    fn elem_pow_cyclic() {
        let q = cyclic(3);
        let a = q.elem(1).unwrap();
        assert_eq!(q.elem_pow(a, 3).unwrap().index(), 0);
        assert_eq!(q.elem_pow(a, 0).unwrap(), q.identity());
        assert_eq!(q.elem_pow(a, -1).unwrap().index(), 2);
    }

    #[test]
    fn direct_product_klein() {
        let z2 = cyclic(2);
        let v4 = direct_product(&z2, &z2).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.associativity_witness().is_none());
        for x in v4.elems() {
            assert_eq!(v4.mul(x, x), v4.identity());
        }
    }

    #[test]
    fn product_with_trivial_is_isomorphic() {
        let q = cyclic(5);
        let t = cyclic(1);
        let p = direct_product(&q, &t).unwrap();
        assert_eq!(p.to_table_string(), q.to_table_string());
    }

    #[test]
    fn chein_double_of_z2_is_group() {
        let g = GroupTable::new(cyclic(2)).unwrap();
        let d = chein_double(&g).unwrap();
        assert_eq!(d.order(), 4);
        assert!(d.associativity_witness().is_none());
        for a in d.elems() {
            for b in d.elems() {
                assert_eq!(d.mul(a, b), d.mul(b, a));
            }
        }
    }

    #[test]
    fn chein_double_rejects_non_group() {
        // The Chein double of Z2 is a group, so doubling twice from a
        // nonassociative table must be rejected at the GroupTable gate.
        let q = CayleyLoop::parse_table("5\n0 1 2 3 4\n1 0 3 4 2\n2 3 4 0 1\n3 4 1 2 0\n4 2 0 1 3").unwrap();
        assert!(q.associativity_witness().is_some());
        assert!(matches!(
            GroupTable::new(q),
            Err(LoopError::NotAssociative { .. })
        ));
    }

    #[test]
    fn quotient_of_z4_by_half() {
        let z4 = cyclic(4);
        let members = [z4.elem(0).unwrap(), z4.elem(2).unwrap()];
        let q = quotient(&z4, &members).unwrap();
        assert_eq!(q.loop_.order(), 2);
        assert_eq!(q.project(z4.elem(1).unwrap()), q.project(z4.elem(3).unwrap()));
    }

    #[test]
    fn quotient_by_whole_loop_is_trivial() {
        let z4 = cyclic(4);
        let members: Vec<Elem> = z4.elems().collect();
        let q = quotient(&z4, &members).unwrap();
        assert_eq!(q.loop_.order(), 1);
    }

    #[test]
    fn quotient_by_identity_is_isomorphic() {
        let z6 = cyclic(6);
        let q = quotient(&z6, &[z6.identity()]).unwrap();
        assert_eq!(q.loop_.order(), 6);
        for a in z6.elems() {
            for b in z6.elems() {
                assert_eq!(q.project(z6.mul(a, b)), q.loop_.mul(q.project(a), q.project(b)));
            }
        }
    }

    #[test]
    fn quotient_rejects_non_normal() {
        // S3-like table: non-normal two-element subloop {e, transposition}.
        let s3 = CayleyLoop::parse_table(concat!(
            "6\n",
            "0 1 2 3 4 5\n",
            "1 0 4 5 2 3\n",
            "2 3 0 1 5 4\n",
            "3 2 5 4 0 1\n",
            "4 5 1 0 3 2\n",
            "5 4 3 2 1 0\n",
        ))
        .unwrap();
        assert!(s3.associativity_witness().is_none());
        let sub = [s3.elem(0).unwrap(), s3.elem(1).unwrap()];
        assert!(matches!(
            quotient(&s3, &sub),
            Err(LoopError::NotNormal { .. })
        ));
    }
}
