//! Reports, bound certificates and the summary row shared by every command.

use serde::Serialize;

use linset::bounds::{self, BoundCertificate, CanonicalSearch, MinSizeClass, MinimumStatus};
use linset::constructions::Check;
use linset::linset::{self as ls, FqSubspace, LinearSetReport};
use linset::projgeo::ProjSubspace;
use linset::Error;

use crate::recipe::Instance;

/// One line of CSV output; the column set is fixed.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub q: u64,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub size: u64,
    pub bound: Option<u128>,
    pub slack: Option<i128>,
    pub class: String,
}

pub struct Evaluated {
    pub report: LinearSetReport,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub fn evaluate(inst: &Instance) -> linset::Result<Evaluated> {
    let report = ls::report(&inst.subspace)?;
    let checks = match &inst.built {
        Some(b) => b.checks(&report)?,
        None => Vec::new(),
    };
    let pass = report.identities.all() && checks.iter().all(|c| c.ok);
    Ok(Evaluated { report, checks, pass })
}

/// The first canonical `(r−1)`-space with `r = min(d, k−1)`, dropping `r`
/// until one exists.
pub fn default_omega(u: &FqSubspace, rep: &LinearSetReport, budget: u64) -> linset::Result<Option<ProjSubspace>> {
    let top = u.ambient().d().min(u.rank().saturating_sub(1));
    for r in (1..=top).rev() {
        if let CanonicalSearch::Found(o) = bounds::search_canonical(u, rep, r, budget, |_| Ok(true))? {
            return Ok(Some(o));
        }
    }
    Ok(None)
}

/// The rank bound when its hypotheses hold, else the subgeometry bound at
/// the highest-`r` minimum-size witness in `class`, else at
/// [`default_omega`]. `None` when none applies.
pub fn best_bound(
    u: &FqSubspace,
    rep: &LinearSetReport,
    class: Option<&MinSizeClass>,
    budget: u64,
) -> linset::Result<Option<BoundCertificate>> {
    match bounds::verify_rank_bound(u, false, budget) {
        Ok(cert) => return Ok(Some(cert)),
        Err(Error::Gate(_) | Error::Hypothesis(_) | Error::CapExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    let t = u.tower();
    let witness = class.and_then(|c| c.r_minimum.iter().rev().find_map(|m| m.omega.as_ref())).map(|rows| {
        let vectors: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&i| t.element(i)).collect()).collect();
        ProjSubspace::span(t, u.ambient().dim(), &vectors)
    });
    match witness.map_or_else(|| default_omega(u, rep, budget), |o| Ok(Some(o)))? {
        Some(o) => bounds::verify_subgeometry_bound(u, &o).map(Some),
        None => Ok(None),
    }
}

/// Short label for the strongest minimum-size property found.
pub fn class_label(c: &MinSizeClass) -> String {
    if c.proper_d_minimum == MinimumStatus::Yes {
        return "proper-d-minimum".into();
    }
    if let Some(m) = c.r_minimum.iter().rev().find(|m| m.status == MinimumStatus::Yes) {
        return format!("({},{})-minimum", m.r, c.d);
    }
    if c.d_minimum {
        return "d-minimum".into();
    }
    if c.r_minimum.iter().any(|m| m.status == MinimumStatus::Unknown) {
        return "unknown".into();
    }
    "-".into()
}

pub fn row(u: &FqSubspace, size: u64, cert: Option<&BoundCertificate>, class: Option<&MinSizeClass>) -> Row {
    let amb = u.ambient();
    Row {
        q: amb.q(),
        n: amb.n(),
        d: amb.d(),
        k: u.rank(),
        size,
        bound: cert.map(|c| c.bound),
        slack: cert.map(|c| c.slack),
        class: class.map_or_else(|| "-".into(), class_label),
    }
}
