//! Free terms over `*`, `\`, `/`, `1` and variables, with evaluation on a
//! loop, identity checking, weight-graded commutator-associator words, the
//! variable-killing endomorphisms and the product decomposition built from
//! them.
//!
//! Terms are never rewritten or simplified; equality of terms is always
//! semantic (evaluation agreement), never syntactic. The commutator and
//! associator constructors expand to pure `*`, `\`, `/` trees using the same
//! solved forms as the element-level calculus, so the two routes can be
//! cross-checked value by value.

use crate::calculus::CaKind;
use crate::cayley::{CayleyLoop, Elem};
use crate::error::{LoopError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Default evaluation budget for identity checks.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Cap on the weight of generated word sets.
pub const WEIGHT_CAP: usize = 6;

/// A term tree over variables `x0, x1, ...`, the constant `1` and the three
/// loop operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(u32),
    One,
    Mul(Box<Term>, Box<Term>),
    LDiv(Box<Term>, Box<Term>),
    RDiv(Box<Term>, Box<Term>),
}

/// A (partial) map from variable indices to elements of a specific loop.
pub type Assignment = BTreeMap<u32, Elem>;

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(i)
    }

    pub fn one() -> Term {
        Term::One
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn ldiv(a: Term, b: Term) -> Term {
        Term::LDiv(Box::new(a), Box::new(b))
    }

    pub fn rdiv(a: Term, b: Term) -> Term {
        Term::RDiv(Box::new(a), Box::new(b))
    }

    /// `u^-1 = 1/u`.
    pub fn inv(u: Term) -> Term {
        Term::rdiv(Term::One, u)
    }

    /// `(u,v) = u \ (v \ uv)`.
    pub fn comm_paren(u: Term, v: Term) -> Term {
        Term::ldiv(
            u.clone(),
            Term::ldiv(v.clone(), Term::mul(u, v)),
        )
    }

    /// `[u,v] = (vu) \ (uv)`.
    pub fn comm_bracket(u: Term, v: Term) -> Term {
        Term::ldiv(Term::mul(v.clone(), u.clone()), Term::mul(u, v))
    }

    /// `alpha(u,v,w) = u \ ((uv*w)/(vw))`.
    pub fn assoc_alpha(u: Term, v: Term, w: Term) -> Term {
        Term::ldiv(
            u.clone(),
            Term::rdiv(
                Term::mul(Term::mul(u, v.clone()), w.clone()),
                Term::mul(v, w),
            ),
        )
    }

    /// `beta(u,v,w) = ((wv) \ (w*vu)) / u`.
    pub fn assoc_beta(u: Term, v: Term, w: Term) -> Term {
        Term::rdiv(
            Term::ldiv(
                Term::mul(w.clone(), v.clone()),
                Term::mul(w, Term::mul(v, u.clone())),
            ),
            u,
        )
    }

    /// `[u,v,w] = (u*vw) \ (uv*w)`.
    pub fn assoc_bracket(u: Term, v: Term, w: Term) -> Term {
        Term::ldiv(
            Term::mul(u.clone(), Term::mul(v.clone(), w.clone())),
            Term::mul(Term::mul(u, v), w),
        )
    }

    /// Free variables of the term.
    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::One => {}
            Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        self.vars().into_iter().next_back()
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::Var(_) | Term::One => 1,
            Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                1 + a.node_count() + b.node_count()
            }
        }
    }
}

/// Structural recognizers for the macro shapes; used by the macro-aware
/// printer and the simple-associator predicate.
pub(crate) fn match_inv(t: &Term) -> Option<&Term> {
    if let Term::RDiv(a, b) = t {
        if **a == Term::One {
            return Some(b);
        }
    }
    None
}

fn match_comm_paren(t: &Term) -> Option<(&Term, &Term)> {
    if let Term::LDiv(u, rest) = t {
        if let Term::LDiv(v, uv) = &**rest {
            if let Term::Mul(u2, v2) = &**uv {
                if **u2 == **u && **v2 == **v {
                    return Some((u, v));
                }
            }
        }
    }
    None
}

fn match_comm_bracket(t: &Term) -> Option<(&Term, &Term)> {
    if let Term::LDiv(vu, uv) = t {
        if let (Term::Mul(v, u), Term::Mul(u2, v2)) = (&**vu, &**uv) {
            if **u2 == **u && **v2 == **v {
                return Some((u, v));
            }
        }
    }
    None
}

fn match_alpha(t: &Term) -> Option<(&Term, &Term, &Term)> {
    if let Term::LDiv(u, rest) = t {
        if let Term::RDiv(num, den) = &**rest {
            if let (Term::Mul(uv, w), Term::Mul(v2, w2)) = (&**num, &**den) {
                if let Term::Mul(u2, v) = &**uv {
                    if **u2 == **u && **v2 == **v && **w2 == **w {
                        return Some((u, v, w));
                    }
                }
            }
        }
    }
    None
}

fn match_beta(t: &Term) -> Option<(&Term, &Term, &Term)> {
    if let Term::RDiv(num, u) = t {
        if let Term::LDiv(wv, wvu) = &**num {
            if let (Term::Mul(w, v), Term::Mul(w2, vu)) = (&**wv, &**wvu) {
                if let Term::Mul(v2, u2) = &**vu {
                    if **w2 == **w && **v2 == **v && **u2 == **u {
                        return Some((u, v, w));
                    }
                }
            }
        }
    }
    None
}

fn match_bracket_assoc(t: &Term) -> Option<(&Term, &Term, &Term)> {
    if let Term::LDiv(num, den) = t {
        if let (Term::Mul(u, vw), Term::Mul(uv, w2)) = (&**num, &**den) {
            if let (Term::Mul(v, w), Term::Mul(u2, v2)) = (&**vw, &**uv) {
                if **u2 == **u && **v2 == **v && **w2 == **w {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

/// Prints the expanded prefix form: `(* t t)`, `(/ t t)`, `(\ t t)`, `1`, `xN`.
pub fn print_term(t: &Term) -> String {
    match t {
        Term::Var(i) => format!("x{}", i),
        Term::One => "1".into(),
        Term::Mul(a, b) => format!("(* {} {})", print_term(a), print_term(b)),
        Term::LDiv(a, b) => format!("(\\ {} {})", print_term(a), print_term(b)),
        Term::RDiv(a, b) => format!("(/ {} {})", print_term(a), print_term(b)),
    }
}

/// Prints with macro shapes folded back to `comm`, `bcomm`, `alpha`, `beta`,
/// `bassoc` and `inv` where the tree matches them.
pub fn print_term_macros(t: &Term) -> String {
    if let Some(u) = match_inv(t) {
        return format!("(inv {})", print_term_macros(u));
    }
    if let Some((u, v)) = match_comm_paren(t) {
        return format!("(comm {} {})", print_term_macros(u), print_term_macros(v));
    }
    if let Some((u, v)) = match_comm_bracket(t) {
        return format!("(bcomm {} {})", print_term_macros(u), print_term_macros(v));
    }
    if let Some((u, v, w)) = match_alpha(t) {
        return format!(
            "(alpha {} {} {})",
            print_term_macros(u),
            print_term_macros(v),
            print_term_macros(w)
        );
    }
    if let Some((u, v, w)) = match_beta(t) {
        return format!(
            "(beta {} {} {})",
            print_term_macros(u),
            print_term_macros(v),
            print_term_macros(w)
        );
    }
    if let Some((u, v, w)) = match_bracket_assoc(t) {
        return format!(
            "(bassoc {} {} {})",
            print_term_macros(u),
            print_term_macros(v),
            print_term_macros(w)
        );
    }
    match t {
        Term::Var(i) => format!("x{}", i),
        Term::One => "1".into(),
        Term::Mul(a, b) => format!("(* {} {})", print_term_macros(a), print_term_macros(b)),
        Term::LDiv(a, b) => format!("(\\ {} {})", print_term_macros(a), print_term_macros(b)),
        Term::RDiv(a, b) => format!("(/ {} {})", print_term_macros(a), print_term_macros(b)),
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> LoopError {
        LoopError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {:?}", b as char)))
        }
    }

    fn symbol(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() || b"()[],".contains(&b) {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a symbol"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let op = self.symbol()?;
                let t = match op.as_str() {
                    "*" => Term::mul(self.term()?, self.term()?),
                    "/" => Term::rdiv(self.term()?, self.term()?),
                    "\\" => Term::ldiv(self.term()?, self.term()?),
                    "comm" => Term::comm_paren(self.term()?, self.term()?),
                    "bcomm" => Term::comm_bracket(self.term()?, self.term()?),
                    "alpha" => Term::assoc_alpha(self.term()?, self.term()?, self.term()?),
                    "beta" => Term::assoc_beta(self.term()?, self.term()?, self.term()?),
                    "bassoc" => Term::assoc_bracket(self.term()?, self.term()?, self.term()?),
                    "inv" => Term::inv(self.term()?),
                    other => return Err(self.err(format!("unknown operator {:?}", other))),
                };
                self.expect(b')')?;
                Ok(t)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.term()?;
                self.expect(b',')?;
                let b = self.term()?;
                match self.peek() {
                    Some(b']') => {
                        self.pos += 1;
                        Ok(Term::comm_bracket(a, b))
                    }
                    Some(b',') => {
                        self.pos += 1;
                        let c = self.term()?;
                        self.expect(b']')?;
                        Ok(Term::assoc_bracket(a, b, c))
                    }
                    _ => Err(self.err("expected ',' or ']'")),
                }
            }
            Some(_) => {
                let sym = self.symbol()?;
                if sym == "1" {
                    return Ok(Term::One);
                }
                if let Some(rest) = sym.strip_prefix('x') {
                    if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                        let i: u32 = rest
                            .parse()
                            .map_err(|_| self.err("variable index too large"))?;
                        return Ok(Term::Var(i));
                    }
                }
                Err(self.err(format!("unexpected token {:?}", sym)))
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses the term grammar; macro operators expand at parse time.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input after term"));
    }
    Ok(t)
}

/// Evaluates a term on a loop under an assignment covering its variables.
pub fn eval(q: &CayleyLoop, t: &Term, asg: &Assignment) -> Result<Elem> {
    match t {
        Term::Var(i) => asg
            .get(i)
            .copied()
            .ok_or(LoopError::MissingVariable { var: *i }),
        Term::One => Ok(q.identity()),
        Term::Mul(a, b) => Ok(q.mul(eval(q, a, asg)?, eval(q, b, asg)?)),
        Term::LDiv(a, b) => Ok(q.ldiv(eval(q, a, asg)?, eval(q, b, asg)?)),
        Term::RDiv(a, b) => Ok(q.rdiv(eval(q, a, asg)?, eval(q, b, asg)?)),
    }
}

// Flat postorder program for fast repeated evaluation.
enum Instr {
    Push(u8),
    One,
    Mul,
    LDiv,
    RDiv,
}

pub(crate) struct Compiled {
    prog: Vec<Instr>,
    depth: usize,
}

impl Compiled {
    /// Compiles against a slot order: variable `order[k]` reads `vals[k]`.
    pub(crate) fn new(t: &Term, order: &[u32]) -> Compiled {
        let mut prog = Vec::with_capacity(t.node_count());
        fn walk(t: &Term, order: &[u32], prog: &mut Vec<Instr>) {
            match t {
                Term::Var(i) => {
                    let slot = order
                        .iter()
                        .position(|v| v == i)
                        .expect("variable not in slot order");
                    prog.push(Instr::Push(slot as u8));
                }
                Term::One => prog.push(Instr::One),
                Term::Mul(a, b) => {
                    walk(a, order, prog);
                    walk(b, order, prog);
                    prog.push(Instr::Mul);
                }
                Term::LDiv(a, b) => {
                    walk(a, order, prog);
                    walk(b, order, prog);
                    prog.push(Instr::LDiv);
                }
                Term::RDiv(a, b) => {
                    walk(a, order, prog);
                    walk(b, order, prog);
                    prog.push(Instr::RDiv);
                }
            }
        }
        walk(t, order, &mut prog);
        let mut depth = 0usize;
        let mut cur = 0usize;
        for ins in &prog {
            match ins {
                Instr::Push(_) | Instr::One => cur += 1,
                _ => cur -= 1,
            }
            depth = depth.max(cur);
        }
        Compiled { prog, depth }
    }

    #[inline]
    pub(crate) fn run(&self, q: &CayleyLoop, vals: &[u16], stack: &mut Vec<u16>) -> u16 {
        stack.clear();
        for ins in &self.prog {
            match ins {
                Instr::Push(slot) => stack.push(vals[*slot as usize]),
                Instr::One => stack.push(q.identity().index() as u16),
                Instr::Mul => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(q.mul_idx(a as usize, b as usize) as u16);
                }
                Instr::LDiv => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(q.ldiv_idx(a as usize, b as usize) as u16);
                }
                Instr::RDiv => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(q.rdiv_idx(a as usize, b as usize) as u16);
                }
            }
        }
        stack[0]
    }

    pub(crate) fn stack(&self) -> Vec<u16> {
        Vec::with_capacity(self.depth)
    }
}

/// Walks all `n^k` assignments in lexicographic order (`vals[0]` most
/// significant); stops early when the visitor returns `false`. Returns
/// whether the walk ran to completion.
pub(crate) fn for_each_assignment(n: usize, k: usize, mut visit: impl FnMut(&[u16]) -> bool) -> bool {
    let mut vals = vec![0u16; k];
    loop {
        if !visit(&vals) {
            return false;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            vals[pos] += 1;
            if (vals[pos] as usize) < n {
                break;
            }
            vals[pos] = 0;
        }
    }
}

pub(crate) fn assignment_count(n: usize, k: usize) -> u128 {
    (n as u128).saturating_pow(k as u32)
}

/// Outcome of an identity check. `Holds` is only ever produced by an
/// exhaustive sweep; a sampled sweep that finds nothing reports `NotRefuted`
/// together with its seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityVerdict {
    Holds {
        cases: u64,
    },
    Refuted {
        witness: Assignment,
        sampled: bool,
    },
    NotRefuted {
        samples: u64,
        seed: u64,
    },
}

impl IdentityVerdict {
    pub fn holds_or_unrefuted(&self) -> bool {
        !matches!(self, IdentityVerdict::Refuted { .. })
    }
}

/// Checks whether `t = 1` holds in `q`: exhaustive when the assignment space
/// fits the budget, otherwise uniform sampling of `budget` assignments with
/// the given seed.
pub fn holds_identity(q: &CayleyLoop, t: &Term, budget: u64, seed: u64) -> IdentityVerdict {
    let vars: Vec<u32> = t.vars().into_iter().collect();
    let k = vars.len();
    let n = q.order();
    let e = q.identity().index() as u16;
    let compiled = Compiled::new(t, &vars);
    let mut stack = compiled.stack();
    let space = assignment_count(n, k);
    if space <= budget as u128 {
        let mut witness: Option<Assignment> = None;
        let mut cases = 0u64;
        for_each_assignment(n, k, |vals| {
            cases += 1;
            if compiled.run(q, vals, &mut stack) != e {
                witness = Some(
                    vars.iter()
                        .zip(vals)
                        .map(|(&v, &x)| (v, Elem(x)))
                        .collect(),
                );
                false
            } else {
                true
            }
        });
        match witness {
            Some(w) => IdentityVerdict::Refuted {
                witness: w,
                sampled: false,
            },
            None => IdentityVerdict::Holds { cases },
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vals = vec![0u16; k];
        for _ in 0..budget {
            for v in vals.iter_mut() {
                *v = rng.gen_range(0..n) as u16;
            }
            if compiled.run(q, &vals, &mut stack) != e {
                let witness = vars
                    .iter()
                    .zip(&vals)
                    .map(|(&v, &x)| (v, Elem(x)))
                    .collect();
                return IdentityVerdict::Refuted {
                    witness,
                    sampled: true,
                };
            }
        }
        IdentityVerdict::NotRefuted {
            samples: budget,
            seed,
        }
    }
}

/// All values `t` takes on `q`, enumerated exhaustively within the budget.
pub fn value_set(q: &CayleyLoop, t: &Term, budget: u64) -> Result<Vec<Elem>> {
    let vars: Vec<u32> = t.vars().into_iter().collect();
    let k = vars.len();
    let n = q.order();
    let space = assignment_count(n, k);
    if space > budget as u128 {
        return Err(LoopError::Budget {
            required: space,
            budget,
        });
    }
    let compiled = Compiled::new(t, &vars);
    let mut stack = compiled.stack();
    let mut seen = vec![false; n];
    for_each_assignment(n, k, |vals| {
        seen[compiled.run(q, vals, &mut stack) as usize] = true;
        true
    });
    Ok((0..n)
        .filter(|&i| seen[i])
        .map(|i| Elem(i as u16))
        .collect())
}

/// Which primitives a weight-graded word set nests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordKind {
    /// `alpha`, `beta` and the commutator `( , )`.
    AlphaBeta,
    /// `[ , , ]` and `[ , ]`.
    Mu,
    /// `alpha` only.
    Alpha,
    /// `beta` only.
    Beta,
}

impl WordKind {
    pub fn ca_kind(self) -> CaKind {
        match self {
            WordKind::Mu => CaKind::Mu,
            _ => CaKind::AlphaBeta,
        }
    }
}

/// The canonical fresh-variable word set of the given kind and weight.
///
/// Base words use `x0..x2`; every weight step wraps the previous word with
/// fresh variables, so a word of weight `n` uses at most `2n+1` variables.
/// Counts: `2^n` for `Mu`, `3^n` for `AlphaBeta`, `1` for `Alpha`/`Beta`.
pub fn gen_weight_words(kind: WordKind, weight: usize) -> Result<Vec<Term>> {
    if weight == 0 {
        return Err(LoopError::InvalidArgument("weight must be at least 1".into()));
    }
    if weight > WEIGHT_CAP {
        return Err(LoopError::WeightCap {
            requested: weight,
            cap: WEIGHT_CAP,
        });
    }
    let x = Term::var;
    let mut words: Vec<Term> = match kind {
        WordKind::AlphaBeta => vec![
            Term::assoc_alpha(x(0), x(1), x(2)),
            Term::assoc_beta(x(0), x(1), x(2)),
            Term::comm_paren(x(0), x(1)),
        ],
        WordKind::Mu => vec![
            Term::assoc_bracket(x(0), x(1), x(2)),
            Term::comm_bracket(x(0), x(1)),
        ],
        WordKind::Alpha => vec![Term::assoc_alpha(x(0), x(1), x(2))],
        WordKind::Beta => vec![Term::assoc_beta(x(0), x(1), x(2))],
    };
    for _ in 1..weight {
        let mut next = Vec::new();
        for w in words {
            let fresh = w.max_var().map_or(0, |m| m + 1);
            match kind {
                WordKind::AlphaBeta => {
                    next.push(Term::assoc_alpha(w.clone(), x(fresh), x(fresh + 1)));
                    next.push(Term::assoc_beta(w.clone(), x(fresh), x(fresh + 1)));
                    next.push(Term::comm_paren(w, x(fresh)));
                }
                WordKind::Mu => {
                    next.push(Term::assoc_bracket(w.clone(), x(fresh), x(fresh + 1)));
                    next.push(Term::comm_bracket(w, x(fresh)));
                }
                WordKind::Alpha => {
                    next.push(Term::assoc_alpha(w, x(fresh), x(fresh + 1)));
                }
                WordKind::Beta => {
                    next.push(Term::assoc_beta(w, x(fresh), x(fresh + 1)));
                }
            }
        }
        words = next;
    }
    Ok(words)
}

/// The weight-`n` word set as a basis of identities `w = 1` for central
/// nilpotency of class at most `n` within the matching variety.
pub fn basis_for_class(kind: WordKind, class: usize) -> Result<Vec<Term>> {
    gen_weight_words(kind, class)
}

/// The endomorphism killing `x_i`: substitutes `1` for it, with no
/// simplification.
pub fn delta(i: u32, t: &Term) -> Term {
    match t {
        Term::Var(j) => {
            if *j == i {
                Term::One
            } else {
                Term::Var(*j)
            }
        }
        Term::One => Term::One,
        Term::Mul(a, b) => Term::mul(delta(i, a), delta(i, b)),
        Term::LDiv(a, b) => Term::ldiv(delta(i, a), delta(i, b)),
        Term::RDiv(a, b) => Term::rdiv(delta(i, a), delta(i, b)),
    }
}

/// `gamma_i(w) = w * (delta_i w)^-1`.
pub fn gamma(i: u32, t: &Term) -> Term {
    Term::mul(t.clone(), Term::inv(delta(i, t)))
}

/// Simple associators: a variable, an inverted variable, or an associator of
/// the kind's shape whose arguments are simple.
pub fn is_simple_associator(t: &Term, kind: WordKind) -> bool {
    if matches!(t, Term::Var(_)) {
        return true;
    }
    if let Some(u) = match_inv(t) {
        return matches!(u, Term::Var(_));
    }
    let parts = match kind {
        WordKind::Mu => match_bracket_assoc(t),
        WordKind::Alpha => match_alpha(t),
        WordKind::Beta => match_beta(t),
        WordKind::AlphaBeta => match_alpha(t).or_else(|| match_beta(t)),
    };
    match parts {
        Some((u, v, w)) => {
            is_simple_associator(u, kind)
                && is_simple_associator(v, kind)
                && is_simple_associator(w, kind)
        }
        None => false,
    }
}

/// Whether the term involves generator `x_i`: it is `x_i` or `x_i^-1`, or an
/// associator one of whose arguments involves it. On arbitrary trees this
/// reduces to a free-variable occurrence check.
pub fn involves(t: &Term, i: u32) -> bool {
    match t {
        Term::Var(j) => *j == i,
        _ => {
            if let Some(u) = match_inv(t) {
                return involves(u, i);
            }
            for parts in [match_bracket_assoc(t), match_alpha(t), match_beta(t)] {
                if let Some((u, v, w)) = parts {
                    return involves(u, i) || involves(v, i) || involves(w, i);
                }
            }
            t.vars().contains(&i)
        }
    }
}

/// The residual word and peeled factors of the product decomposition
/// `w = (...((u * v_0) * v_1) ...) * v_t`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// `u = gamma_t ... gamma_1 gamma_0 w`; vanishes under `delta_0..delta_t`.
    pub residual: Term,
    /// `v_0, ..., v_t`, each a product of delta-chains of `w^(+-1)`.
    pub factors: Vec<Term>,
}

impl Decomposition {
    /// `(...((u * v_0) * v_1) ...) * v_t`.
    pub fn reconstruction(&self) -> Term {
        let mut t = self.residual.clone();
        for v in &self.factors {
            t = Term::mul(t, v.clone());
        }
        t
    }
}

/// Splits `w` (a word in `x_0..x_t`) into a residual `u` killed by every
/// `delta_i` and peel-off factors, following `gamma_i w = w * (delta_i w)^-1`:
///
/// ```text
/// s_-1 = w,  s_k = gamma_k(s_{k-1}) = s_{k-1} * (delta_k s_{k-1})^-1,  u = s_t,
/// v_j = delta_{t-j}(s_{t-j-1}).
/// ```
///
/// In any loop with the inverse property (and in any power-associative loop
/// whose `x * (1/x) = 1`, which covers the Moufang and A-loop cases) the
/// reconstruction multiplies back to `w` under every assignment.
pub fn decompose(w: &Term, t: u32) -> Result<Decomposition> {
    if let Some(m) = w.max_var() {
        if m > t {
            return Err(LoopError::InvalidArgument(format!(
                "word uses x{} but the decomposition only covers x0..x{}",
                m, t
            )));
        }
    }
    let mut s = w.clone();
    let mut peeled: Vec<Term> = Vec::new();
    for k in 0..=t {
        let d = delta(k, &s);
        peeled.push(d.clone());
        s = Term::mul(s, Term::inv(d));
    }
    peeled.reverse();
    Ok(Decomposition {
        residual: s,
        factors: peeled,
    })
}

/// Outcome of checking a decomposition on one loop.
#[derive(Debug, Clone)]
pub struct DecompositionCheck {
    pub exhaustive: bool,
    pub cases: u64,
    pub seed: Option<u64>,
    /// First failing assignment and which contract failed, if any.
    pub failure: Option<String>,
}

impl DecompositionCheck {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Verifies on `q` that the reconstruction evaluates equal to `w` and that
/// every `delta_i(residual)` evaluates to the identity, for all assignments
/// of `x_0..x_t` (or a seeded sample when the space exceeds the budget).
pub fn check_decomposition(
    q: &CayleyLoop,
    w: &Term,
    t: u32,
    d: &Decomposition,
    budget: u64,
    seed: u64,
) -> DecompositionCheck {
    let k = (t + 1) as usize;
    let order: Vec<u32> = (0..=t).collect();
    let n = q.order();
    let cw = Compiled::new(w, &order);
    let crec = Compiled::new(&d.reconstruction(), &order);
    let cdeltas: Vec<Compiled> = (0..=t)
        .map(|i| Compiled::new(&delta(i, &d.residual), &order))
        .collect();
    let mut stack = Vec::new();
    let e = q.identity().index() as u16;

    let mut failure = None;
    let mut check_one = |vals: &[u16]| -> bool {
        let expected = cw.run(q, vals, &mut stack);
        let got = crec.run(q, vals, &mut stack);
        if got != expected {
            failure = Some(format!(
                "reconstruction mismatch at {:?}: {} vs {}",
                vals, got, expected
            ));
            return false;
        }
        for (i, cd) in cdeltas.iter().enumerate() {
            if cd.run(q, vals, &mut stack) != e {
                failure = Some(format!(
                    "delta_{} of the residual is not 1 at {:?}",
                    i, vals
                ));
                return false;
            }
        }
        true
    };

    let space = assignment_count(n, k);
    if space <= budget as u128 {
        let mut cases = 0u64;
        for_each_assignment(n, k, |vals| {
            cases += 1;
            check_one(vals)
        });
        DecompositionCheck {
            exhaustive: true,
            cases,
            seed: None,
            failure,
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vals = vec![0u16; k];
        let mut cases = 0u64;
        for _ in 0..budget {
            for v in vals.iter_mut() {
                *v = rng.gen_range(0..n) as u16;
            }
            cases += 1;
            if !check_one(&vals) {
                break;
            }
        }
        DecompositionCheck {
            exhaustive: false,
            cases,
            seed: Some(seed),
            failure,
        }
    }
}

/// One cell of the consequence matrix: identity `u` against premise set `M`
/// on one loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsequenceCell {
    /// All premises hold exhaustively and `u` fails: a finite-model witness
    /// that `u` is not a consequence of `M`.
    Refuted { witness: Assignment },
    /// No refutation on this loop (premises fail, or everything holds).
    NotRefuted { premises_hold: bool },
    /// Some check did not fit the budget; nothing is claimed.
    Budget,
}

#[derive(Debug, Clone)]
pub struct ConsequenceRow {
    pub identity: String,
    pub cells: Vec<(String, ConsequenceCell)>,
    /// True when some catalog loop refutes the consequence.
    pub refuted: bool,
}

/// For each identity `u` in the list, tests whether `u` could be a
/// consequence of the remaining identities by searching the catalog for a
/// loop where all the others hold but `u` fails. Only the necessary
/// finite-model direction is decided; "not refuted" is never a proof.
pub fn consequence_matrix(
    identities: &[Term],
    catalog: &[&CayleyLoop],
    budget: u64,
    seed: u64,
) -> Vec<ConsequenceRow> {
    let mut rows = Vec::new();
    for (i, u) in identities.iter().enumerate() {
        let mut cells = Vec::new();
        let mut refuted = false;
        for q in catalog {
            let name = q.name().unwrap_or("loop").to_string();
            let mut premises_hold = true;
            let mut budget_hit = false;
            for (j, m) in identities.iter().enumerate() {
                if i == j {
                    continue;
                }
                match holds_identity(q, m, budget, seed) {
                    IdentityVerdict::Holds { .. } => {}
                    IdentityVerdict::Refuted { .. } => {
                        premises_hold = false;
                        break;
                    }
                    IdentityVerdict::NotRefuted { .. } => {
                        budget_hit = true;
                        break;
                    }
                }
            }
            let cell = if budget_hit {
                ConsequenceCell::Budget
            } else if !premises_hold {
                ConsequenceCell::NotRefuted {
                    premises_hold: false,
                }
            } else {
                match holds_identity(q, u, budget, seed) {
                    IdentityVerdict::Refuted { witness, sampled } => {
                        if sampled {
                            // A sampled witness still refutes: the premises
                            // were verified exhaustively above.
                            refuted = true;
                            ConsequenceCell::Refuted { witness }
                        } else {
                            refuted = true;
                            ConsequenceCell::Refuted { witness }
                        }
                    }
                    IdentityVerdict::Holds { .. } => ConsequenceCell::NotRefuted {
                        premises_hold: true,
                    },
                    IdentityVerdict::NotRefuted { .. } => ConsequenceCell::Budget,
                }
            };
            cells.push((name, cell));
        }
        rows.push(ConsequenceRow {
            identity: print_term_macros(u),
            cells,
            refuted,
        });
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus;
    use crate::catalog;

    fn asg(pairs: &[(u32, usize)]) -> Assignment {
        pairs.iter().map(|&(v, i)| (v, Elem(i as u16))).collect()
    }

    #[test]
    fn parse_basics() {
        assert_eq!(
            parse_term("(* x0 x1)").unwrap(),
            Term::mul(Term::var(0), Term::var(1))
        );
        assert_eq!(parse_term("1").unwrap(), Term::One);
        assert_eq!(parse_term("x7").unwrap(), Term::var(7));
        assert_eq!(
            parse_term("(\\ x0 (/ x1 1))").unwrap(),
            Term::ldiv(Term::var(0), Term::rdiv(Term::var(1), Term::One))
        );
    }

    #[test]
    fn parse_macros_expand() {
        let t = parse_term("[x0,x1,x2]").unwrap();
        assert_eq!(t, Term::assoc_bracket(Term::var(0), Term::var(1), Term::var(2)));
        let t = parse_term("[x0,x1]").unwrap();
        assert_eq!(t, Term::comm_bracket(Term::var(0), Term::var(1)));
        let t = parse_term("(alpha x0 x1 x2)").unwrap();
        assert_eq!(t, Term::assoc_alpha(Term::var(0), Term::var(1), Term::var(2)));
        let t = parse_term("(inv x3)").unwrap();
        assert_eq!(t, Term::inv(Term::var(3)));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_term("(* x0"), Err(LoopError::Syntax { .. })));
        assert!(matches!(parse_term("(? x0 x1)"), Err(LoopError::Syntax { .. })));
        assert!(matches!(parse_term("x0 x1"), Err(LoopError::Syntax { .. })));
        assert!(matches!(parse_term(""), Err(LoopError::Syntax { .. })));
    }

    #[test]
    fn print_parse_roundtrip() {
        let words = gen_weight_words(WordKind::AlphaBeta, 2).unwrap();
        for w in &words {
            assert_eq!(&parse_term(&print_term(w)).unwrap(), w);
            assert_eq!(&parse_term(&print_term_macros(w)).unwrap(), w);
        }
    }

    #[test]
    fn macro_printer_recognizes_shapes() {
        let t = Term::assoc_bracket(Term::var(0), Term::var(1), Term::var(2));
        assert_eq!(print_term_macros(&t), "(bassoc x0 x1 x2)");
        let t = Term::comm_paren(Term::var(0), Term::var(1));
        assert_eq!(print_term_macros(&t), "(comm x0 x1)");
        let t = Term::inv(Term::var(4));
        assert_eq!(print_term_macros(&t), "(inv x4)");
    }

    #[test]
    fn eval_examples() {
        let z3 = catalog::cyclic(3);
        let t = Term::mul(Term::var(0), Term::var(1));
        assert_eq!(
            eval(&z3, &t, &asg(&[(0, 1), (1, 2)])).unwrap().index(),
            0
        );
        assert_eq!(eval(&z3, &Term::One, &asg(&[])).unwrap(), z3.identity());
        assert!(matches!(
            eval(&z3, &t, &asg(&[(0, 1)])),
            Err(LoopError::MissingVariable { var: 1 })
        ));
    }

    #[test]
    fn eval_agrees_with_calculus_macros() {
        let q = catalog::m_s3_2();
        let comm = Term::comm_paren(Term::var(0), Term::var(1));
        let bcomm = Term::comm_bracket(Term::var(0), Term::var(1));
        let alpha = Term::assoc_alpha(Term::var(0), Term::var(1), Term::var(2));
        let beta = Term::assoc_beta(Term::var(0), Term::var(1), Term::var(2));
        let bassoc = Term::assoc_bracket(Term::var(0), Term::var(1), Term::var(2));
        for a in q.elems() {
            for b in q.elems() {
                let ab = asg(&[(0, a.index()), (1, b.index())]);
                assert_eq!(
                    eval(&q, &comm, &ab).unwrap(),
                    calculus::commutator_paren(&q, a, b)
                );
                assert_eq!(
                    eval(&q, &bcomm, &ab).unwrap(),
                    calculus::commutator_bracket(&q, a, b)
                );
                for c in q.elems() {
                    let abc = asg(&[(0, a.index()), (1, b.index()), (2, c.index())]);
                    assert_eq!(
                        eval(&q, &alpha, &abc).unwrap(),
                        calculus::assoc_alpha(&q, a, b, c)
                    );
                    assert_eq!(
                        eval(&q, &beta, &abc).unwrap(),
                        calculus::assoc_beta(&q, a, b, c)
                    );
                    assert_eq!(
                        eval(&q, &bassoc, &abc).unwrap(),
                        calculus::assoc_bracket(&q, a, b, c)
                    );
                }
            }
        }
    }

    #[test]
    fn identity_checks() {
        let q = catalog::m_s3_2();
        // The left Moufang law holds in M(S3,2).
        let x = Term::var;
        let moufang = Term::ldiv(
            Term::mul(x(0), Term::mul(x(1), Term::mul(x(0), x(2)))),
            Term::mul(Term::mul(Term::mul(x(0), x(1)), x(0)), x(2)),
        );
        match holds_identity(&q, &moufang, DEFAULT_BUDGET, 0) {
            IdentityVerdict::Holds { cases } => assert_eq!(cases, 12u64.pow(3)),
            other => panic!("expected Holds, got {other:?}"),
        }
        // Associativity fails, with the lexicographically least witness.
        let assoc = Term::assoc_bracket(x(0), x(1), x(2));
        match holds_identity(&q, &assoc, DEFAULT_BUDGET, 0) {
            IdentityVerdict::Refuted { witness, sampled } => {
                assert!(!sampled);
                let w: Vec<usize> = witness.values().map(|e| e.index()).collect();
                // No earlier assignment fails.
                let mut earlier_fail = false;
                'outer: for a in 0..w[0] + 1 {
                    for b in 0..q.order() {
                        for c in 0..q.order() {
                            if (a, b, c) >= (w[0], w[1], w[2]) {
                                break 'outer;
                            }
                            if calculus::assoc_bracket(
                                &q,
                                q.elem(a).unwrap(),
                                q.elem(b).unwrap(),
                                q.elem(c).unwrap(),
                            ) != q.identity()
                            {
                                earlier_fail = true;
                            }
                        }
                    }
                }
                assert!(!earlier_fail);
            }
            other => panic!("expected Refuted, got {other:?}"),
        }
        // Any identity holds on the trivial loop.
        let t1 = catalog::trivial();
        assert!(matches!(
            holds_identity(&t1, &assoc, DEFAULT_BUDGET, 0),
            IdentityVerdict::Holds { .. }
        ));
    }

    #[test]
    fn sampled_verdict_reports_seed() {
        let q = catalog::o16();
        // 9 variables: 16^9 > 10^7 forces sampling; the law x0*x1*...*x8
        // bracketed left equals itself is trivially an identity when stated
        // as t\t = 1.
        let mut t = Term::var(0);
        for i in 1..9 {
            t = Term::mul(t, Term::var(i));
        }
        let tt = Term::ldiv(t.clone(), t);
        match holds_identity(&q, &tt, 1000, 42) {
            IdentityVerdict::NotRefuted { samples, seed } => {
                assert_eq!(samples, 1000);
                assert_eq!(seed, 42);
            }
            other => panic!("expected NotRefuted, got {other:?}"),
        }
    }

    #[test]
    fn weight_word_counts_and_variable_bounds() {
        for n in 1..=4 {
            let mu = gen_weight_words(WordKind::Mu, n).unwrap();
            assert_eq!(mu.len(), 1 << n);
            let ab = gen_weight_words(WordKind::AlphaBeta, n).unwrap();
            assert_eq!(ab.len(), 3usize.pow(n as u32));
            let a = gen_weight_words(WordKind::Alpha, n).unwrap();
            assert_eq!(a.len(), 1);
            let b = gen_weight_words(WordKind::Beta, n).unwrap();
            assert_eq!(b.len(), 1);
            for w in mu.iter().chain(&ab).chain(&a).chain(&b) {
                assert!(w.vars().len() <= 2 * n + 1, "too many variables");
            }
            // The pure associator chains hit the bound exactly.
            assert_eq!(a[0].vars().len(), 2 * n + 1);
            assert_eq!(b[0].vars().len(), 2 * n + 1);
        }
    }

    #[test]
    fn weight_word_examples() {
        let mu1 = gen_weight_words(WordKind::Mu, 1).unwrap();
        assert_eq!(
            mu1,
            vec![
                Term::assoc_bracket(Term::var(0), Term::var(1), Term::var(2)),
                Term::comm_bracket(Term::var(0), Term::var(1)),
            ]
        );
        let mu2 = gen_weight_words(WordKind::Mu, 2).unwrap();
        assert_eq!(mu2.len(), 4);
        assert!(mu2.contains(&Term::assoc_bracket(
            Term::assoc_bracket(Term::var(0), Term::var(1), Term::var(2)),
            Term::var(3),
            Term::var(4)
        )));
        let a2 = gen_weight_words(WordKind::Alpha, 2).unwrap();
        assert_eq!(
            a2[0],
            Term::assoc_alpha(
                Term::assoc_alpha(Term::var(0), Term::var(1), Term::var(2)),
                Term::var(3),
                Term::var(4)
            )
        );
    }

    #[test]
    fn weight_cap_enforced() {
        assert!(matches!(
            gen_weight_words(WordKind::Mu, 7),
            Err(LoopError::WeightCap { .. })
        ));
        assert!(gen_weight_words(WordKind::Mu, 0).is_err());
    }

    #[test]
    fn delta_and_gamma() {
        let t = Term::mul(Term::var(0), Term::var(1));
        assert_eq!(delta(0, &t), Term::mul(Term::One, Term::var(1)));
        assert_eq!(delta(1, &Term::var(0)), Term::var(0));
        // delta is idempotent and deltas commute, syntactically.
        let words = gen_weight_words(WordKind::AlphaBeta, 2).unwrap();
        for w in &words {
            assert_eq!(delta(0, &delta(0, w)), delta(0, w));
            assert_eq!(delta(0, &delta(1, w)), delta(1, &delta(0, w)));
        }
        // gamma_0(x0) evaluates to x0 on Moufang fixtures.
        let g = gamma(0, &Term::var(0));
        let q = catalog::o16();
        for a in q.elems() {
            assert_eq!(eval(&q, &g, &asg(&[(0, a.index())])).unwrap(), a);
        }
    }

    #[test]
    fn simple_associator_recognition() {
        assert!(is_simple_associator(&Term::var(3), WordKind::Mu));
        assert!(involves(&Term::var(3), 3));
        assert!(!involves(&Term::var(3), 2));
        let t = Term::assoc_bracket(Term::var(0), Term::inv(Term::var(1)), Term::var(2));
        assert!(is_simple_associator(&t, WordKind::Mu));
        assert!(!is_simple_associator(&t, WordKind::Alpha));
        assert!(involves(&t, 0) && involves(&t, 1) && involves(&t, 2));
        assert!(!involves(&t, 5));
        assert!(!is_simple_associator(
            &Term::mul(Term::var(0), Term::var(1)),
            WordKind::Mu
        ));
        let nested = Term::assoc_alpha(
            Term::assoc_beta(Term::var(0), Term::var(1), Term::var(2)),
            Term::var(3),
            Term::var(4),
        );
        assert!(is_simple_associator(&nested, WordKind::AlphaBeta));
        assert!(!is_simple_associator(&nested, WordKind::Beta));
    }

    #[test]
    fn decomposition_reconstructs() {
        // w = x0 with t = 0.
        let d = decompose(&Term::var(0), 0).unwrap();
        for q in [catalog::o16(), catalog::d4()] {
            let c = check_decomposition(&q, &Term::var(0), 0, &d, DEFAULT_BUDGET, 0);
            assert!(c.ok(), "{:?}: {:?}", q.name(), c.failure);
            assert!(c.exhaustive);
        }
        // w = x0*x1 with t = 1, exhaustive on O16.
        let w = Term::mul(Term::var(0), Term::var(1));
        let d = decompose(&w, 1).unwrap();
        let q = catalog::o16();
        let c = check_decomposition(&q, &w, 1, &d, DEFAULT_BUDGET, 0);
        assert!(c.ok(), "{:?}", c.failure);
        assert_eq!(c.cases, 16 * 16);
    }

    #[test]
    fn decomposition_rejects_out_of_range_vars() {
        assert!(matches!(
            decompose(&Term::var(3), 1),
            Err(LoopError::InvalidArgument(_))
        ));
    }

    #[test]
    fn value_set_respects_budget() {
        let q = catalog::o16();
        let t = Term::assoc_bracket(Term::var(0), Term::var(1), Term::var(2));
        let vals = value_set(&q, &t, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            vals,
            vec![q.elem(0).unwrap(), q.elem(1).unwrap()],
            "associators of O16 are the signs"
        );
        let mut wide = Term::var(0);
        for i in 1..9 {
            wide = Term::mul(wide, Term::var(i));
        }
        assert!(matches!(
            value_set(&q, &wide, 1000),
            Err(LoopError::Budget { .. })
        ));
    }

    #[test]
    fn consequence_examples() {
        let s3 = catalog::s3();
        let z2 = catalog::cyclic(2);
        let comm = Term::comm_bracket(Term::var(0), Term::var(1));
        let assoc = Term::assoc_bracket(Term::var(0), Term::var(1), Term::var(2));
        let rows = consequence_matrix(&[comm, assoc], &[&s3, &z2], DEFAULT_BUDGET, 0);
        // Commutativity is refuted (S3 is a group where associativity holds
        // but commutativity fails).
        assert!(rows[0].refuted);
        // Associativity is not refuted by commutative groups.
        assert!(!rows[1].refuted);
    }
}
