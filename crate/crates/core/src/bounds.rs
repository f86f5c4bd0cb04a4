//! Lower bounds on the size of a linear set and the minimum-size classes.
//!
//! Two bounds are certified here. The subgeometry bound holds for any
//! `(r−1)`-space `Ω` meeting `L_U` in a canonical subgeometry:
//! `|L_U| ≥ q^{k−1} + … + q^{k−r} + I_Ω`. The rank bound needs only the
//! parameters, with `n` prime and `n ≤ q`: `r = d − ⌊(k−(d+2))/(n−1)⌋` and
//! `|L_U| ≥ q^{k−1} + … + q^{k−r} + (q^{n(d−r+1)} − 1)/(q^n − 1)`.

use std::collections::HashSet;

use serde::Serialize;

use crate::arith::{self, gaussian_count};
use crate::error::{invalid, Error, Result};
use crate::fields::FieldTower;
use crate::linset::{self, FqSubspace, LinearSetReport, ProjPoint, WeightedPoint};
use crate::projgeo::{self, ProjSubspace, QuotientMap};

/// Candidate subspaces examined before a search gives up.
pub const DEFAULT_SEARCH_BUDGET: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Bound at a canonical subgeometry section `Ω`.
    Subgeometry,
    /// The subgeometry bound at a single weight-one point.
    WeightOnePoint,
    /// Bound from `q, n, d, k` alone.
    Rank,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub kind: BoundKind,
    pub q: u64,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub r: usize,
    /// Rows of `W` as tower indices; for the rank bound, the canonical
    /// `(r−1)`-space found by search.
    pub omega: Option<Vec<Vec<u64>>>,
    pub i_omega: Option<u64>,
    /// `Σ_{i=1}^r q^{k−i}`.
    pub head: u128,
    /// `I_Ω`, or `(q^{n(d−r+1)} − 1)/(q^n − 1)` for the rank bound.
    pub tail: u128,
    pub bound: u128,
    pub size: u64,
    pub slack: i128,
    pub equality: bool,
}

/// `q^{k−1} + … + q^{k−r}`.
pub fn head_sum(q: u64, k: usize, r: usize) -> u128 {
    assert!(r <= k, "head_sum needs r <= k");
    (1..=r).map(|i| arith::pow(q, k - i)).sum()
}

/// `q^{k−1} + … + q^{k−d} + 1`.
pub fn d_minimum_value(q: u64, k: usize, d: usize) -> u128 {
    head_sum(q, k, d) + 1
}

/// `d − ⌊(k − (d+2))/(n − 1)⌋`, floor towards −∞.
pub fn rank_bound_r(n: usize, d: usize, k: usize) -> Result<usize> {
    if n < 2 {
        return Err(invalid("the rank bound needs n >= 2"));
    }
    let f = (k as i64 - (d as i64 + 2)).div_euclid(n as i64 - 1);
    let r = d as i64 - f;
    if r < 0 || r as usize > k {
        return Err(invalid(format!("r = {r} outside 0..={k} for n={n}, d={d}, k={k}")));
    }
    Ok(r as usize)
}

/// The rank bound value for `q, n, d, k`.
pub fn rank_bound_value(q: u64, n: usize, d: usize, k: usize) -> Result<(usize, u128, u128)> {
    let r = rank_bound_r(n, d, k)?;
    let qn = arith::checked_pow(q, n).ok_or_else(|| invalid("q^n overflows"))? as u64;
    let tail = gaussian_count(qn, d + 1 - r.min(d + 1));
    Ok((r, head_sum(q, k, r), tail))
}

#[allow(clippy::too_many_arguments)]
fn certificate(
    kind: BoundKind,
    u: &FqSubspace,
    r: usize,
    omega: Option<&ProjSubspace>,
    i_omega: Option<u64>,
    head: u128,
    tail: u128,
    size: u64,
) -> BoundCertificate {
    let amb = u.ambient();
    let t = amb.tower();
    let bound = head + tail;
    let slack = size as i128 - bound as i128;
    BoundCertificate {
        kind,
        q: amb.q(),
        n: amb.n(),
        d: amb.d(),
        k: u.rank(),
        r,
        omega: omega.map(|o| o.rows().iter().map(|row| row.iter().map(|&a| t.index(a)).collect()).collect()),
        i_omega,
        head,
        tail,
        bound,
        size,
        slack,
        equality: slack == 0,
    }
}

fn violated(cert: &BoundCertificate) -> Error {
    Error::TheoremViolation(format!(
        "{:?} bound {} exceeds size {} (q={}, n={}, d={}, k={}, r={})",
        cert.kind, cert.bound, cert.size, cert.q, cert.n, cert.d, cert.k, cert.r
    ))
}

/// Number of `r`-spaces `⟨Ω, P⟩` for `P ∈ L_U \ Ω`, from known points.
pub fn i_omega_from_points(t: &FieldTower, omega: &ProjSubspace, points: &[WeightedPoint]) -> Result<u64> {
    let qm = QuotientMap::new(omega);
    let mut images = HashSet::new();
    for wp in points {
        let img = qm.map(t, wp.point.coords());
        if img.iter().any(|a| !a.is_zero()) {
            images.insert(ProjPoint::new(t, &img)?);
        }
    }
    Ok(images.len() as u64)
}

/// Certifies `|L_U| ≥ Σ_{i=1}^r q^{k−i} + I_Ω` where `r = dim W`.
pub fn verify_subgeometry_bound(u: &FqSubspace, omega: &ProjSubspace) -> Result<BoundCertificate> {
    let r = omega.rank();
    let k = u.rank();
    if r == 0 || r >= k {
        return Err(Error::Hypothesis(format!("need 1 <= dim W < k, got dim W = {r}, k = {k}")));
    }
    if !projgeo::is_canonical_subgeometry(u, omega)? {
        return Err(Error::Hypothesis("Omega does not meet L_U in a canonical subgeometry".into()));
    }
    let size = linset::enumerate_points(u)?.len() as u64;
    let i = projgeo::count_i_omega(u, omega)?;
    let kind = if r == 1 { BoundKind::WeightOnePoint } else { BoundKind::Subgeometry };
    let cert = certificate(kind, u, r, Some(omega), Some(i), head_sum(u.ambient().q(), k, r), i as u128, size);
    if cert.slack < 0 {
        return Err(violated(&cert));
    }
    Ok(cert)
}

/// Outcome of a search for a canonical subgeometry section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalSearch {
    Found(ProjSubspace),
    /// Every candidate was examined.
    Exhausted,
    BudgetExceeded {
        explored: u64,
    },
}

/// Walks `(r−1)`-spaces spanned by `r` weight-one points whose section is a
/// canonical subgeometry, in lexicographic order of the points, and returns
/// the first one `accept` takes.
///
/// A span of `j` weight-one points lies in a canonical section only if its
/// own weight is `j`, which prunes the walk at every depth.
pub fn search_canonical(
    u: &FqSubspace,
    rep: &LinearSetReport,
    r: usize,
    budget: u64,
    mut accept: impl FnMut(&ProjSubspace) -> Result<bool>,
) -> Result<CanonicalSearch> {
    if r == 0 {
        return Err(invalid("canonical sections have rank at least 1"));
    }
    let t = u.tower();
    let dim = u.ambient().dim();
    let ones: Vec<&ProjPoint> = rep.points.iter().filter(|wp| wp.weight == 1).map(|wp| &wp.point).collect();
    let mut seen = HashSet::new();
    let mut explored = 0u64;
    // Depth-first: spans[j] is spanned by the first j picks, cursor[j] is the
    // next candidate for pick j + 1. Revisits of a span are skipped; the first
    // visit comes from its lexicographically least basis, whose extensions
    // cover those of every other basis.
    let mut spans = vec![ProjSubspace::span(t, dim, &[])];
    let mut cursor: Vec<usize> = vec![0];
    while let Some(&mut next) = cursor.last_mut() {
        let depth = cursor.len() - 1;
        if next >= ones.len() {
            cursor.pop();
            spans.pop();
            continue;
        }
        *cursor.last_mut().expect("nonempty") += 1;
        let span = &spans[depth];
        let p = ones[next];
        if span.contains_point(t, p) {
            continue;
        }
        let grown = span.join_vec(t, p.coords());
        if !seen.insert(grown.key()) {
            continue;
        }
        explored += 1;
        if explored > budget {
            return Ok(CanonicalSearch::BudgetExceeded { explored: budget });
        }
        if linset::weight(u, &grown)? != grown.rank() {
            continue;
        }
        if grown.rank() == r {
            if accept(&grown)? {
                return Ok(CanonicalSearch::Found(grown));
            }
            continue;
        }
        spans.push(grown);
        cursor.push(next + 1);
    }
    Ok(CanonicalSearch::Exhausted)
}

/// Whether `L_U` spans the whole space.
pub fn spans(u: &FqSubspace, rep: &LinearSetReport) -> bool {
    let dim = u.ambient().dim();
    ProjSubspace::from_points(u.tower(), dim, rep.points.iter().map(|wp| &wp.point)).rank() == dim
}

/// Certifies the rank bound. The gate `n` prime, `n ≤ q` is enforced unless
/// `override_gate` is set. A canonical `(r−1)`-space must exist; failing to
/// find one after an exhaustive search contradicts the bound's proof.
pub fn verify_rank_bound(u: &FqSubspace, override_gate: bool, budget: u64) -> Result<BoundCertificate> {
    let amb = u.ambient();
    let (q, n, d, k) = (amb.q(), amb.n(), amb.d(), u.rank());
    if !override_gate && !(arith::is_prime(n as u64) && n as u64 <= q) {
        return Err(Error::Gate(format!(
            "the rank bound is proved for n prime with n <= q; got q={q}, n={n} (override to run anyway)"
        )));
    }
    let rep = linset::report(u)?;
    if !spans(u, &rep) {
        return Err(Error::Hypothesis("L_U does not span the ambient space".into()));
    }
    let (r, head, tail) = rank_bound_value(q, n, d, k)?;
    let mut omega = None;
    let mut i_omega = None;
    if r >= 1 {
        match search_canonical(u, &rep, r, budget, |_| Ok(true))? {
            CanonicalSearch::Found(o) => {
                i_omega =
                    Some(if o.rank() < o.ambient_dim() { i_omega_from_points(u.tower(), &o, &rep.points)? } else { 0 });
                omega = Some(o);
            }
            CanonicalSearch::Exhausted => {
                return Err(Error::TheoremViolation(format!(
                    "no canonical {}-space section exists for q={q}, n={n}, d={d}, k={k}",
                    r as isize - 1
                )))
            }
            CanonicalSearch::BudgetExceeded { explored } => {
                return Err(Error::CapExceeded { needed: explored as u128 + 1, cap: budget })
            }
        }
    }
    let cert = certificate(BoundKind::Rank, u, r, omega.as_ref(), i_omega, head, tail, rep.size);
    if cert.slack < 0 {
        return Err(violated(&cert));
    }
    Ok(cert)
}

/// Whether `L_U` is `(r, d, Ω)`-minimum for some `Ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimumStatus {
    Yes,
    No,
    /// The witness search ran out of budget.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RMinimum {
    pub r: usize,
    pub status: MinimumStatus,
    /// Witness `Ω` rows as tower indices.
    pub omega: Option<Vec<Vec<u64>>>,
    pub i_omega: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinSizeClass {
    pub q: u64,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub size: u64,
    pub d_minimum_value: u128,
    pub d_minimum: bool,
    /// One entry per `r = 1..=min(d, k−1)`.
    pub r_minimum: Vec<RMinimum>,
    pub proper_d_minimum: MinimumStatus,
}

impl MinSizeClass {
    pub fn status(&self, r: usize) -> Option<&MinimumStatus> {
        self.r_minimum.iter().find(|m| m.r == r).map(|m| &m.status)
    }
}

/// Classifies `L_U` against the `d`-minimum value and, for every `r`,
/// searches for an `(r−1)`-space witnessing `(r, d)`-minimum size.
///
/// `(r, d)`-minimum implies `(r−1, d)`-minimum, and proper `d`-minimum
/// implies `d`-minimum; both are checked rather than assumed.
pub fn classify_minimum(u: &FqSubspace, budget: u64) -> Result<MinSizeClass> {
    let amb = u.ambient();
    let t = amb.tower();
    let (q, n, d, k) = (amb.q(), amb.n(), amb.d(), u.rank());
    let rep = linset::report(u)?;
    let size = rep.size;
    let dmin = d_minimum_value(q, k, d.min(k));
    let mut r_minimum = Vec::new();
    for r in 1..=d.min(k.saturating_sub(1)) {
        let head = head_sum(q, k, r);
        let mut witness = None;
        let status = if size as u128 > dmin || (size as u128) < head {
            MinimumStatus::No
        } else {
            let want = size as u128 - head;
            let outcome = search_canonical(u, &rep, r, budget, |o| {
                if o.rank() == o.ambient_dim() {
                    return Ok(false);
                }
                let i = i_omega_from_points(t, o, &rep.points)?;
                if i as u128 == want {
                    witness = Some(i);
                    return Ok(true);
                }
                Ok(false)
            })?;
            match outcome {
                CanonicalSearch::Found(o) => {
                    let i = witness.expect("accepted");
                    r_minimum.push(RMinimum {
                        r,
                        status: MinimumStatus::Yes,
                        omega: Some(o.rows().iter().map(|row| row.iter().map(|&a| t.index(a)).collect()).collect()),
                        i_omega: Some(i),
                    });
                    continue;
                }
                CanonicalSearch::Exhausted => MinimumStatus::No,
                CanonicalSearch::BudgetExceeded { .. } => MinimumStatus::Unknown,
            }
        };
        r_minimum.push(RMinimum { r, status, omega: None, i_omega: None });
    }
    for pair in r_minimum.windows(2) {
        if pair[1].status == MinimumStatus::Yes && pair[0].status == MinimumStatus::No {
            return Err(Error::TheoremViolation(format!(
                "({}, {d})-minimum but not ({}, {d})-minimum",
                pair[1].r, pair[0].r
            )));
        }
    }
    let proper = if d < k {
        r_minimum.iter().find(|m| m.r == d).map_or(MinimumStatus::No, |m| m.status.clone())
    } else {
        MinimumStatus::No
    };
    let d_minimum = size as u128 == dmin;
    if proper == MinimumStatus::Yes && !d_minimum {
        return Err(Error::TheoremViolation("proper d-minimum set is not d-minimum".into()));
    }
    Ok(MinSizeClass { q, n, d, k, size, d_minimum_value: dmin, d_minimum, r_minimum, proper_d_minimum: proper })
}

/// The rank of a linear set with `size ≥ 2` points and minimum weight `m`:
/// `q^{k−m} < size < q^{k−m+1}`, so `k = ⌊log_q size⌋ + m`.
pub fn rank_from_size(size: u128, m: usize, q: u64) -> Result<usize> {
    if size < 2 || m == 0 || q < 2 {
        return Err(invalid(format!("rank_from_size needs size >= 2, m >= 1, q >= 2; got {size}, {m}, {q}")));
    }
    let k = arith::floor_log(size, q) + m;
    let low = arith::checked_pow(q, k - m).map(|v| v + 1);
    let high = match (arith::checked_pow(q, k), arith::checked_pow(q, m)) {
        (Some(a), Some(b)) => Some((a - 1) / (b - 1)),
        _ => None,
    };
    match (low, high) {
        (Some(lo), Some(hi)) if lo <= size && size <= hi => Ok(k),
        _ => Err(invalid(format!("no rank with minimum weight {m} gives {size} points over F_{q}"))),
    }
}

/// Whether the points of minimum weight span the same subspace as `L_U`.
/// On a spanning `L_U` a `false` answer contradicts a theorem and is an error.
pub fn min_weight_span_check(u: &FqSubspace) -> Result<bool> {
    let rep = linset::report(u)?;
    let t = u.tower();
    let dim = u.ambient().dim();
    let m = rep.min_weight();
    let all = ProjSubspace::from_points(t, dim, rep.points.iter().map(|wp| &wp.point));
    let light = ProjSubspace::from_points(t, dim, rep.points.iter().filter(|wp| wp.weight == m).map(|wp| &wp.point));
    let ok = light == all;
    if !ok && all.rank() == dim {
        return Err(Error::TheoremViolation(format!("minimum weight {m} points span only rank {}", light.rank())));
    }
    Ok(ok)
}

/// Builds a hyperplane meeting `L_U` in a canonical subgeometry from a flag
/// `Ω' ⊂ Ω`: `Ω` an `r`-space of weight `k'` with `k = k' + d − r`, `Ω'` an
/// `(r−1)`-space meeting `L_U` canonically.
///
/// In the quotient by `Ω'`, `Ω` becomes a point `P_0`. Weight-one points
/// `P_1, …, P_{d−r}` completing `P_0` to a spanning set are picked greedily,
/// and `⟨Ω', P_1, …, P_{d−r}⟩` is the hyperplane. The result is verified.
pub fn hyperplane_from_flag(u: &FqSubspace, omega: &ProjSubspace, omega_prime: &ProjSubspace) -> Result<ProjSubspace> {
    let amb = u.ambient();
    let t = amb.tower();
    let (d, k) = (amb.d(), u.rank());
    let r = omega.rank().checked_sub(1).ok_or_else(|| invalid("Omega is empty"))?;
    if r >= d {
        return Err(Error::Hypothesis(format!("need r < d, got r = {r}, d = {d}")));
    }
    if omega_prime.rank() != r || !omega.contains(t, omega_prime) {
        return Err(Error::Hypothesis("Omega' must be a hyperplane of Omega".into()));
    }
    let k_prime = linset::weight(u, omega)?;
    if k != k_prime + d - r {
        return Err(Error::Hypothesis(format!("rank {k} is not w(Omega) + d - r = {}", k_prime + d - r)));
    }
    if r >= 1 && !projgeo::is_canonical_subgeometry(u, omega_prime)? {
        return Err(Error::Hypothesis("Omega' does not meet L_U in a canonical subgeometry".into()));
    }
    let rep = linset::report(u)?;
    if !spans(u, &rep) {
        return Err(Error::Hypothesis("L_U does not span the ambient space".into()));
    }

    let qm = QuotientMap::new(omega_prime);
    let target = qm.target_dim();
    let p0 = omega
        .rows()
        .iter()
        .map(|row| qm.map(t, row))
        .find(|v| v.iter().any(|a| !a.is_zero()))
        .expect("Omega is larger than Omega'");
    let projected = projgeo::project(u, omega_prime)?.ok_or_else(|| Error::Hypothesis("U lies in Omega'".into()))?;
    let prep = linset::report(&projected)?;
    let mut span = ProjSubspace::span(t, target, &[p0]);
    let mut chosen: Vec<Vec<_>> = Vec::new();
    for wp in prep.points.iter().filter(|wp| wp.weight == 1) {
        if chosen.len() == d - r {
            break;
        }
        if !span.contains_point(t, &wp.point) {
            span = span.join_vec(t, wp.point.coords());
            chosen.push(wp.point.coords().to_vec());
        }
    }
    if chosen.len() != d - r {
        return Err(Error::TheoremViolation(format!(
            "weight-one points of the projection complete P_0 to rank {} only",
            span.rank()
        )));
    }
    let mut rows = omega_prime.rows().to_vec();
    rows.extend(chosen.iter().map(|v| qm.lift(t, v)));
    let pi = ProjSubspace::span(t, amb.dim(), &rows);
    if pi.rank() != d || !projgeo::is_canonical_subgeometry(u, &pi)? {
        return Err(Error::TheoremViolation("the flag hyperplane does not meet L_U canonically".into()));
    }
    Ok(pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Fe, FieldTower};
    use crate::linset::Ambient;

    fn f4_times_f2() -> FqSubspace {
        let t = FieldTower::new(2, &[1, 2]).unwrap();
        let amb = Ambient::new(t.clone(), 1, 1).unwrap();
        FqSubspace::span(&amb, &[vec![t.one(), t.zero()], vec![t.x(), t.zero()], vec![t.zero(), t.one()]]).unwrap()
    }

    fn fqn_times_fq(p: u32, d: usize) -> FqSubspace {
        let t = FieldTower::new(p, &[1, 2]).unwrap();
        let amb = Ambient::new(t.clone(), 1, d).unwrap();
        let mut gens: Vec<Vec<Fe>> = vec![amb.unit(0), {
            let mut v = amb.unit(0);
            v[0] = t.x();
            v
        }];
        gens.extend((1..=d).map(|i| amb.unit(i)));
        FqSubspace::span(&amb, &gens).unwrap()
    }

    #[test]
    fn rank_formula_edges() {
        assert_eq!(rank_bound_r(2, 1, 3).unwrap(), 1);
        assert_eq!(rank_bound_r(2, 2, 6).unwrap(), 0);
        // k = d + 1 is a canonical subgeometry.
        assert_eq!(rank_bound_r(3, 2, 3).unwrap(), 3);
        assert_eq!(rank_bound_value(3, 2, 2, 6).unwrap(), (0, 0, 91));
    }

    #[test]
    fn rank_bound_examples() {
        let c = verify_rank_bound(&fqn_times_fq(3, 1), false, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!((c.r, c.bound, c.size, c.equality), (1, 10, 10, true));
        let c = verify_rank_bound(&f4_times_f2(), false, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!((c.r, c.bound, c.size, c.equality), (1, 5, 5, true));
    }

    #[test]
    fn rank_bound_gate() {
        let t = FieldTower::new(2, &[1, 3]).unwrap();
        let amb = Ambient::new(t.clone(), 1, 1).unwrap();
        let u = FqSubspace::span(&amb, &[amb.unit(0), amb.unit(1)]).unwrap();
        assert!(matches!(verify_rank_bound(&u, false, 10), Err(Error::Gate(_))));
        let c = verify_rank_bound(&u, true, 100).unwrap();
        assert_eq!((c.r, c.size), (2, 3));
    }

    #[test]
    fn whole_plane_has_r_zero() {
        let t = FieldTower::new(3, &[1, 2]).unwrap();
        let amb = Ambient::new(t.clone(), 1, 2).unwrap();
        let gens: Vec<Vec<Fe>> = (0..3)
            .flat_map(|i| {
                let mut a = amb.unit(i);
                a[i] = t.x();
                [amb.unit(i), a]
            })
            .collect();
        let u = FqSubspace::span(&amb, &gens).unwrap();
        let c = verify_rank_bound(&u, false, 10).unwrap();
        assert_eq!((c.r, c.bound, c.size, c.equality), (0, 91, 91, true));
    }

    #[test]
    fn subgeometry_bound_at_weight_one_point() {
        let u = f4_times_f2();
        let t = u.tower().clone();
        let p = ProjSubspace::span(&t, 2, &[vec![t.one(), t.one()]]);
        let c = verify_subgeometry_bound(&u, &p).unwrap();
        assert_eq!(c.kind, BoundKind::WeightOnePoint);
        assert_eq!((c.head, c.i_omega, c.size, c.equality), (4, Some(1), 5, true));
        let e1 = ProjSubspace::coordinate(&t, 2, &[0]);
        assert!(matches!(verify_subgeometry_bound(&u, &e1), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn rank_from_size_examples() {
        assert_eq!(rank_from_size(5, 1, 2).unwrap(), 3);
        assert_eq!(rank_from_size(13, 1, 3).unwrap(), 3);
        assert_eq!(rank_from_size(17, 1, 2).unwrap(), 5);
        assert!(rank_from_size(1, 1, 2).is_err());
        // 8 points: not in any window with m = 2 over F_2 (q^{k-2}+1 ≤ 8 ≤ (2^k-1)/3 fails).
        assert!(rank_from_size(8, 2, 2).is_err());
    }

    #[test]
    fn classify_f4_times_f2() {
        let c = classify_minimum(&f4_times_f2(), DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(c.d_minimum_value, 5);
        assert!(c.d_minimum);
        assert_eq!(c.proper_d_minimum, MinimumStatus::Yes);
        assert!(min_weight_span_check(&f4_times_f2()).unwrap());
    }

    #[test]
    fn flag_hyperplane_in_a_plane() {
        // U = F_9 × F_3 × F_3 in PG(2, 9): Ω = the line X_2 = 0 (weight 3),
        // Ω' = the point (1, 1, 0) of weight one.
        let u = fqn_times_fq(3, 2);
        let t = u.tower().clone();
        let omega = ProjSubspace::coordinate(&t, 3, &[0, 1]);
        let omega_prime = ProjSubspace::span(&t, 3, &[vec![t.one(), t.one(), t.zero()]]);
        let pi = hyperplane_from_flag(&u, &omega, &omega_prime).unwrap();
        assert_eq!(pi.rank(), 2);
        assert!(pi.contains(&t, &omega_prime));
        assert!(matches!(hyperplane_from_flag(&u, &ProjSubspace::whole(&t, 3), &omega), Err(Error::Hypothesis(_))));
    }
}
