//! Upper and lower central series, nilpotency class, weight-graded word
//! subloops, and the structural verification report.
//!
//! The lower chain iterates `A_{i+1} = A^{A_i}(Q)` to a fixpoint; the upper
//! chain takes preimages of centres of quotients. Both stop at stabilization,
//! which on a finite loop happens within `order` steps. The nilpotency class,
//! when it exists, is cross-validated between the two chains, and optionally
//! against the vanishing of weight-graded word sets.

use crate::calculus::{
    ca_subloop, center, small_generating_set, subloop_generated, trivial_subloop, whole_loop,
    CaKind, NormalSubloop, Subloop,
};
use crate::cayley::{quotient, CayleyLoop, Elem};
use crate::classify::{is_a_loop, is_moufang};
use crate::error::{LoopError, Result};
use crate::laws::{aloop_expansion_battery, moufang_expansion_battery};
use crate::report::CheckRecord;
use crate::terms::{for_each_assignment, gen_weight_words, value_set, Compiled, WordKind};

/// Both central chains of a loop, the class when it exists, and stabilization
/// flags for each chain.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    /// `A_0 = Q ⊇ A_1 ⊇ ...`, strictly decreasing, ending at the fixpoint.
    pub lower: Vec<NormalSubloop>,
    /// `Z_0 = 1 ⊆ Z_1 ⊆ ...`, strictly increasing, ending at the fixpoint.
    pub upper: Vec<NormalSubloop>,
    pub class: Option<usize>,
    pub lower_stabilized: bool,
    pub upper_stabilized: bool,
}

impl SeriesReport {
    pub fn lower_sizes(&self) -> Vec<usize> {
        self.lower.iter().map(|s| s.len()).collect()
    }

    pub fn upper_sizes(&self) -> Vec<usize> {
        self.upper.iter().map(|s| s.len()).collect()
    }
}

/// `A_0 = Q`, `A_{i+1} = A^{A_i}(Q)`, stopping at the first repeat.
pub fn lower_central_series(q: &CayleyLoop, kind: CaKind) -> Result<Vec<NormalSubloop>> {
    let mut chain = vec![whole_loop(q)];
    loop {
        let current = chain.last().unwrap();
        let next = ca_subloop(q, current, kind)?;
        if next.members() == current.members() {
            return Ok(chain);
        }
        chain.push(next);
    }
}

/// `Z_0 = 1`, `Z_{i+1}` the preimage of the centre of `Q/Z_i`, stopping at
/// the first repeat.
pub fn upper_central_series(q: &CayleyLoop) -> Result<Vec<NormalSubloop>> {
    let mut chain = vec![trivial_subloop(q)];
    loop {
        let current = chain.last().unwrap();
        let quot = quotient(q, current.members())?;
        let z = center(&quot.loop_)?;
        let members: Vec<Elem> = q
            .elems()
            .filter(|&x| z.contains(quot.project(x)))
            .collect();
        if members.len() == current.len() {
            return Ok(chain);
        }
        let sub = Subloop::new(q, members)
            .map_err(|e| LoopError::Internal(format!("centre preimage is not a subloop: {}", e)))?;
        let next = NormalSubloop::verify(q, sub)
            .map_err(|e| LoopError::Internal(format!("centre preimage is not normal: {}", e)))?;
        chain.push(next);
    }
}

/// Computes both chains, derives the class, and cross-validates the two
/// routes against each other.
pub fn series_report(q: &CayleyLoop, kind: CaKind) -> Result<SeriesReport> {
    let lower = lower_central_series(q, kind)?;
    let upper = upper_central_series(q)?;
    let lower_reaches_one = lower.last().unwrap().subloop().is_trivial();
    let upper_reaches_q = upper.last().unwrap().subloop().is_whole();
    if lower_reaches_one != upper_reaches_q {
        return Err(LoopError::Internal(format!(
            "nilpotency routes disagree: lower reaches 1 = {}, upper reaches Q = {}",
            lower_reaches_one, upper_reaches_q
        )));
    }
    let class = if lower_reaches_one {
        let c = lower.len() - 1;
        if upper.len() - 1 != c {
            return Err(LoopError::Internal(format!(
                "chain lengths disagree: lower has {} strict steps, upper has {}",
                c,
                upper.len() - 1
            )));
        }
        Some(c)
    } else {
        None
    };
    Ok(SeriesReport {
        lower,
        upper,
        class,
        lower_stabilized: true,
        upper_stabilized: true,
    })
}

/// Nilpotency class when the loop is centrally nilpotent.
pub fn nilpotency_class(q: &CayleyLoop) -> Result<Option<usize>> {
    Ok(series_report(q, CaKind::AlphaBeta)?.class)
}

/// Nilpotency class, additionally cross-validated against the identity route:
/// the class is the least weight whose full word set vanishes (and for a
/// non-nilpotent loop no word set vanishes at any computed chain length).
pub fn nilpotency_class_cross_validated(q: &CayleyLoop, budget: u64) -> Result<Option<usize>> {
    let report = series_report(q, CaKind::AlphaBeta)?;
    let all_hold = |n: usize| -> Result<bool> {
        for w in gen_weight_words(WordKind::AlphaBeta, n)? {
            let vals = value_set(q, &w, budget)?;
            if vals.len() != 1 || vals[0] != q.identity() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    match report.class {
        Some(0) => {}
        Some(c) => {
            if !all_hold(c)? {
                return Err(LoopError::Internal(format!(
                    "class {} loop fails a weight-{} identity",
                    c, c
                )));
            }
            if c >= 2 && all_hold(c - 1)? {
                return Err(LoopError::Internal(format!(
                    "class {} loop satisfies all weight-{} identities",
                    c,
                    c - 1
                )));
            }
        }
        None => {
            for n in 1..report.lower.len() + 1 {
                if n > crate::terms::WEIGHT_CAP {
                    break;
                }
                if all_hold(n)? {
                    return Err(LoopError::Internal(format!(
                        "non-nilpotent loop satisfies all weight-{} identities",
                        n
                    )));
                }
            }
        }
    }
    Ok(report.class)
}

/// The subloop generated by all values of all weight-`n` words of the given
/// kind. Must coincide with the `n`-th lower-series member; the equality is
/// checked here, not assumed.
pub fn weight_subloop(
    q: &CayleyLoop,
    n: usize,
    kind: WordKind,
    budget: u64,
) -> Result<NormalSubloop> {
    if n == 0 {
        return Err(LoopError::InvalidArgument("weight must be at least 1".into()));
    }
    if kind == WordKind::Mu {
        if let Some((x, y, z)) = crate::classify::moufang_witness(q) {
            return Err(LoopError::NotMoufang {
                x: x.index(),
                y: y.index(),
                z: z.index(),
            });
        }
    }
    let mut values: Vec<Elem> = Vec::new();
    for w in gen_weight_words(kind, n)? {
        values.extend(value_set(q, &w, budget)?);
    }
    values.sort();
    values.dedup();
    let sub = subloop_generated(q, &values);

    let chain = lower_central_series(q, kind.ca_kind())?;
    let member = chain.get(n).unwrap_or_else(|| chain.last().unwrap());
    if sub.members() != member.members() {
        return Err(LoopError::Internal(format!(
            "weight-{} word subloop (order {}) differs from the series member (order {})",
            n,
            sub.len(),
            member.len()
        )));
    }
    NormalSubloop::verify(q, sub)
        .map_err(|e| LoopError::Internal(format!("word subloop is not normal: {}", e)))
}

/// Values of a word where every variable ranges over `domain` only.
fn word_values_over(q: &CayleyLoop, w: &crate::terms::Term, domain: &[Elem]) -> Vec<Elem> {
    let vars: Vec<u32> = w.vars().into_iter().collect();
    let compiled = Compiled::new(w, &vars);
    let mut stack = compiled.stack();
    let mut out = Vec::new();
    let mut vals = vec![0u16; vars.len()];
    for_each_assignment(domain.len(), vars.len(), |picks| {
        for (slot, &p) in picks.iter().enumerate() {
            vals[slot] = domain[p as usize].index() as u16;
        }
        out.push(Elem(compiled.run(q, &vals, &mut stack)));
        true
    });
    out.sort();
    out.dedup();
    out
}

/// The structural verification report: chain data plus one record per check.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub order: usize,
    pub name: Option<String>,
    pub class: Option<usize>,
    pub lower_sizes: Vec<usize>,
    pub upper_sizes: Vec<usize>,
    pub records: Vec<CheckRecord>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        crate::report::all_passed(&self.records)
    }
}

/// Runs the whole structure battery on a loop:
/// chain stabilization and class agreement, the inclusion of each lower
/// member in the matching upper member, abelian-group step quotients
/// generated by word values of a generating set, the class-2 expansion
/// identities, and their congruence forms two steps down the chain.
pub fn verify_structure(q: &CayleyLoop, budget: u64) -> Result<StructureReport> {
    let mut records: Vec<CheckRecord> = Vec::new();
    let report = series_report(q, CaKind::AlphaBeta)?;
    let lower = &report.lower;
    let upper = &report.upper;
    let moufang = is_moufang(q);
    let a_loop = is_a_loop(q);

    records.push(CheckRecord::pass(
        "chain stabilization",
        &format!(
            "lower sizes {:?}, upper sizes {:?}",
            report.lower_sizes(),
            report.upper_sizes()
        ),
    ));

    if let Some(c) = report.class {
        records.push(CheckRecord::pass(
            "chain length agreement",
            &format!("both chains make exactly {} strict steps", c),
        ));
        // Lower members embed in the matching upper members: A_{c-i} ⊆ Z_i.
        let mut witness = None;
        for i in 0..=c {
            let a = &lower[c - i];
            let z = &upper[i];
            if let Some(&m) = a.members().iter().find(|&&m| !z.contains(m)) {
                witness = Some(format!(
                    "element {} of lower member {} is outside upper member {}",
                    q.label(m),
                    c - i,
                    i
                ));
                break;
            }
        }
        records.push(CheckRecord::from_witness(
            "central series interleaving",
            "A_(c-i) is contained in Z_i for every i",
            witness,
        ));
    } else {
        records.push(CheckRecord::skipped(
            "chain length agreement",
            "both chains make equally many strict steps",
            "not nilpotent",
        ));
    }

    // Step quotients A_i/A_{i+1}: abelian groups, generated by word values of
    // a generating set.
    let gens = small_generating_set(q);
    let word_kind = if moufang {
        Some(WordKind::Mu)
    } else if a_loop {
        Some(WordKind::AlphaBeta)
    } else {
        None
    };
    for i in 0..lower.len().saturating_sub(1) {
        let (table_i, members_i) = lower[i].subloop().induced_table(q)?;
        let pos_of = |e: Elem| members_i.binary_search(&e).expect("chain member inclusion");
        let inner: Vec<Elem> = lower[i + 1]
            .members()
            .iter()
            .map(|&m| table_i.elem(pos_of(m)).unwrap())
            .collect();
        let quot = quotient(&table_i, &inner)?;
        let g = &quot.loop_;
        let abelian = crate::classify::is_commutative(g) && crate::classify::is_associative(g);
        records.push(CheckRecord::from_witness(
            format!("step quotient {} is an abelian group", i),
            "A_i/A_(i+1) is commutative and associative",
            if abelian {
                None
            } else {
                Some(format!("quotient of order {} is not an abelian group", g.order()))
            },
        ));

        match word_kind {
            None => records.push(CheckRecord::skipped(
                format!("step quotient {} generated by word values", i),
                "cosets of weight-i words of the generators generate A_i/A_(i+1)",
                "neither Moufang nor an A-loop",
            )),
            Some(kind) => {
                let mut coset_gens: Vec<Elem> = Vec::new();
                if i == 0 {
                    for &m in &gens {
                        coset_gens.push(quot.project(table_i.elem(pos_of(m)).unwrap()));
                    }
                } else {
                    let mut escaped = None;
                    'words: for w in gen_weight_words(kind, i)? {
                        for v in word_values_over(q, &w, &gens) {
                            if !lower[i].contains(v) {
                                escaped = Some(format!(
                                    "value {} of a weight-{} word is outside A_{}",
                                    q.label(v),
                                    i,
                                    i
                                ));
                                break 'words;
                            }
                            coset_gens.push(quot.project(table_i.elem(pos_of(v)).unwrap()));
                        }
                    }
                    if let Some(wit) = escaped {
                        records.push(CheckRecord::fail(
                            format!("step quotient {} generated by word values", i),
                            "weight-i word values of the generators lie in A_i",
                            wit,
                        ));
                        continue;
                    }
                }
                coset_gens.sort();
                coset_gens.dedup();
                let generated = subloop_generated(g, &coset_gens);
                records.push(CheckRecord::from_witness(
                    format!("step quotient {} generated by word values", i),
                    "cosets of weight-i words of the generators generate A_i/A_(i+1)",
                    if generated.len() == g.order() {
                        None
                    } else {
                        Some(format!(
                            "word-value cosets generate order {} of {}",
                            generated.len(),
                            g.order()
                        ))
                    },
                ));
            }
        }
    }

    // Class-2 expansion identities.
    if report.class == Some(2) {
        let everyone: Vec<Elem> = q.elems().collect();
        if moufang {
            records.extend(moufang_expansion_battery(q, &everyone, ""));
        }
        if a_loop {
            records.extend(aloop_expansion_battery(q, &everyone, ""));
        }
        if !moufang && !a_loop {
            records.push(CheckRecord::skipped(
                "class-2 expansion identities",
                "bracket/commutator expansion laws",
                "neither Moufang nor an A-loop",
            ));
        }
    }

    // Congruence forms: the same expansions two steps down, in Q/A_(k+2) with
    // the first arguments drawn from the image of A_k.
    if lower.len() >= 3 {
        for k in 0..=lower.len() - 3 {
            let quot = quotient(q, lower[k + 2].members())?;
            let g = &quot.loop_;
            let mut ab: Vec<Elem> = lower[k].members().iter().map(|&m| quot.project(m)).collect();
            ab.sort();
            ab.dedup();
            let suffix = format!(" (step {} congruence)", k);
            if is_moufang(g) {
                records.extend(moufang_expansion_battery(g, &ab, &suffix));
            }
            if is_a_loop(g) {
                records.extend(aloop_expansion_battery(g, &ab, &suffix));
            }
        }
    }

    let _ = budget;
    Ok(StructureReport {
        order: q.order(),
        name: q.name().map(|s| s.to_string()),
        class: report.class,
        lower_sizes: report.lower_sizes(),
        upper_sizes: report.upper_sizes(),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::terms::DEFAULT_BUDGET;

    fn sizes(chain: &[NormalSubloop]) -> Vec<usize> {
        chain.iter().map(|s| s.len()).collect()
    }

    #[test]
    fn abelian_series() {
        let q = catalog::cyclic(6);
        let r = series_report(&q, CaKind::AlphaBeta).unwrap();
        assert_eq!(sizes(&r.lower), vec![6, 1]);
        assert_eq!(sizes(&r.upper), vec![1, 6]);
        assert_eq!(r.class, Some(1));
    }

    #[test]
    fn trivial_loop_has_class_zero() {
        let q = catalog::trivial();
        let r = series_report(&q, CaKind::AlphaBeta).unwrap();
        assert_eq!(r.class, Some(0));
        assert_eq!(sizes(&r.lower), vec![1]);
        assert_eq!(sizes(&r.upper), vec![1]);
    }

    #[test]
    fn o16_series() {
        let q = catalog::o16();
        let r = series_report(&q, CaKind::Mu).unwrap();
        assert_eq!(sizes(&r.lower), vec![16, 2, 1]);
        assert_eq!(sizes(&r.upper), vec![1, 2, 16]);
        assert_eq!(r.class, Some(2));
        let r2 = series_report(&q, CaKind::AlphaBeta).unwrap();
        for (a, b) in r.lower.iter().zip(&r2.lower) {
            assert_eq!(a.members(), b.members());
        }
    }

    #[test]
    fn chein_loop_is_not_nilpotent() {
        let q = catalog::m_s3_2();
        let r = series_report(&q, CaKind::AlphaBeta).unwrap();
        assert_eq!(r.class, None);
        assert!(r.lower.last().unwrap().len() > 1);
        // The centre is trivial, so the upper chain never leaves {1}.
        assert_eq!(sizes(&r.upper), vec![1]);
    }

    #[test]
    fn d4_series_matches_group_center_oracle() {
        let q = catalog::d4();
        let r = series_report(&q, CaKind::AlphaBeta).unwrap();
        assert_eq!(r.class, Some(2));
        // Independent oracle for Z_1: the group-theoretic centre.
        let center_oracle: Vec<Elem> = q
            .elems()
            .filter(|&a| q.elems().all(|x| q.mul(a, x) == q.mul(x, a)))
            .collect();
        assert_eq!(r.upper[1].members(), center_oracle.as_slice());
        assert_eq!(sizes(&r.upper), vec![1, 2, 8]);
        assert_eq!(sizes(&r.lower), vec![8, 2, 1]);
    }

    #[test]
    fn nilpotency_class_values() {
        assert_eq!(nilpotency_class(&catalog::trivial()).unwrap(), Some(0));
        assert_eq!(nilpotency_class(&catalog::cyclic(5)).unwrap(), Some(1));
        assert_eq!(nilpotency_class(&catalog::o16()).unwrap(), Some(2));
        assert_eq!(nilpotency_class(&catalog::q8()).unwrap(), Some(2));
        assert_eq!(nilpotency_class(&catalog::m_s3_2()).unwrap(), None);
        assert_eq!(nilpotency_class(&catalog::s3()).unwrap(), None);
    }

    #[test]
    fn cross_validated_class_agrees() {
        for q in [catalog::cyclic(4), catalog::d4(), catalog::o16(), catalog::s3()] {
            let plain = nilpotency_class(&q).unwrap();
            let checked = nilpotency_class_cross_validated(&q, DEFAULT_BUDGET).unwrap();
            assert_eq!(plain, checked, "{:?}", q.name());
        }
    }

    #[test]
    fn weight_subloop_matches_series() {
        // Groups: weight 1 with any kind gives the derived subgroup.
        let s3 = catalog::s3();
        let w1 = weight_subloop(&s3, 1, WordKind::AlphaBeta, DEFAULT_BUDGET).unwrap();
        let mut comms: Vec<Elem> = Vec::new();
        for a in s3.elems() {
            for b in s3.elems() {
                comms.push(crate::calculus::commutator_bracket(&s3, a, b));
            }
        }
        let derived = subloop_generated(&s3, &comms);
        assert_eq!(w1.members(), derived.members());

        // O16 at weight 2 (mu): the trivial subloop.
        let o = catalog::o16();
        let w2 = weight_subloop(&o, 2, WordKind::Mu, DEFAULT_BUDGET).unwrap();
        assert!(w2.subloop().is_trivial());

        // Abelian: weight 1 is trivial.
        let z5 = catalog::cyclic(5);
        let w1 = weight_subloop(&z5, 1, WordKind::Alpha, DEFAULT_BUDGET).unwrap();
        assert!(w1.subloop().is_trivial());
    }

    #[test]
    fn weight_subloop_mu_needs_moufang() {
        let bad = crate::cayley::CayleyLoop::parse_table(
            "5\n0 1 2 3 4\n1 0 3 4 2\n2 3 4 0 1\n3 4 1 2 0\n4 2 0 1 3",
        )
        .unwrap();
        assert!(matches!(
            weight_subloop(&bad, 1, WordKind::Mu, DEFAULT_BUDGET),
            Err(LoopError::NotMoufang { .. })
        ));
    }

    #[test]
    fn verify_structure_on_fixtures() {
        for q in [catalog::d4(), catalog::o16(), catalog::trivial(), catalog::m_s3_2()] {
            let report = verify_structure(&q, DEFAULT_BUDGET).unwrap();
            assert!(
                report.all_passed(),
                "{:?}: {:#?}",
                q.name(),
                report
                    .records
                    .iter()
                    .filter(|r| !r.passed())
                    .collect::<Vec<_>>()
            );
        }
    }
}
