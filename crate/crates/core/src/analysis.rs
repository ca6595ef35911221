//! The aggregated per-loop report: classification flags, witnesses for the
//! three Moufang identity forms, nuclei and centre, translation group sizes,
//! both central chains and the class, plus the applicable structural law
//! records.

use crate::calculus::{center, nuclei, CaKind};
use crate::cayley::CayleyLoop;
use crate::classify::{
    moufang_left_witness, moufang_middle_witness, moufang_right_witness, properties, Properties,
};
use crate::error::Result;
use crate::laws::lemma_battery;
use crate::mappings::{inner_mapping_group, multiplication_group};
use crate::report::CheckRecord;
use crate::series::series_report;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct MoufangForms {
    /// Witness triples (as element indices) for each failing form, or `null`
    /// when the form holds.
    pub left_witness: Option<[usize; 3]>,
    pub right_witness: Option<[usize; 3]>,
    pub middle_witness: Option<[usize; 3]>,
    pub agreement: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesSummary {
    pub lower: Vec<Vec<usize>>,
    pub upper: Vec<Vec<usize>>,
    pub class: Option<usize>,
    pub lower_stabilized: bool,
    pub upper_stabilized: bool,
}

/// Full classification report for one loop.
#[derive(Debug, Clone, Serialize)]
pub struct LoopAnalysis {
    pub name: Option<String>,
    pub order: usize,
    pub identity: usize,
    pub properties: Properties,
    pub moufang_forms: MoufangForms,
    pub nucleus_left: Vec<usize>,
    pub nucleus_middle: Vec<usize>,
    pub nucleus_right: Vec<usize>,
    pub nucleus: Vec<usize>,
    pub center: Vec<usize>,
    pub multiplication_group_order: usize,
    pub inner_mapping_group_order: usize,
    pub series: SeriesSummary,
    pub checks: Vec<CheckRecord>,
}

impl LoopAnalysis {
    pub fn all_checks_passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

pub fn analyze(q: &CayleyLoop) -> Result<LoopAnalysis> {
    let props: Properties = properties(q);
    let l = moufang_left_witness(q).map(|(x, y, z)| [x.index(), y.index(), z.index()]);
    let r = moufang_right_witness(q).map(|(x, y, z)| [x.index(), y.index(), z.index()]);
    let m = moufang_middle_witness(q).map(|(x, y, z)| [x.index(), y.index(), z.index()]);
    let agreement = l.is_none() == r.is_none() && l.is_none() == m.is_none();

    let nuc = nuclei(q);
    let z = center(q)?;
    let mult = multiplication_group(q)?;
    let inner = inner_mapping_group(q)?;
    let series = series_report(q, CaKind::AlphaBeta)?;
    let to_indices = |members: &[crate::cayley::Elem]| -> Vec<usize> {
        members.iter().map(|e| e.index()).collect()
    };

    Ok(LoopAnalysis {
        name: q.name().map(|s| s.to_string()),
        order: q.order(),
        identity: q.identity().index(),
        properties: props,
        moufang_forms: MoufangForms {
            left_witness: l,
            right_witness: r,
            middle_witness: m,
            agreement,
        },
        nucleus_left: to_indices(nuc.left.members()),
        nucleus_middle: to_indices(nuc.middle.members()),
        nucleus_right: to_indices(nuc.right.members()),
        nucleus: to_indices(nuc.nucleus.members()),
        center: to_indices(z.members()),
        multiplication_group_order: mult.len(),
        inner_mapping_group_order: inner.len(),
        series: SeriesSummary {
            lower: series.lower.iter().map(|s| to_indices(s.members())).collect(),
            upper: series.upper.iter().map(|s| to_indices(s.members())).collect(),
            class: series.class,
            lower_stabilized: series.lower_stabilized,
            upper_stabilized: series.upper_stabilized,
        },
        checks: lemma_battery(q),
    })
}
