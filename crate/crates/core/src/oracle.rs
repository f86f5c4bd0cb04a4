//! Brute-force recomputation, deliberately naive.
//!
//! Nothing here uses the echelon forms, representative walk or projection
//! code of the fast path: only field arithmetic and the input basis. Reports
//! are rebuilt from every nonzero vector of `U`, so agreement with
//! [`linset::report`](crate::linset::report) is a genuine cross-check.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, gaussian_count};
use crate::error::{internal, invalid, Error, Result};
use crate::fields::{Fe, FieldTower, SmallField};
use crate::linset::{Ambient, FqSubspace, IdentityChecks, LinearSetReport, ProjPoint, WeightedPoint};

/// Limits and seeds for oracle runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Most nonzero vectors a single report may enumerate.
    pub max_vectors: u64,
    pub seed: u64,
    /// Random instances per property.
    pub instances: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_vectors: 1 << 20, seed: 0x5eed, instances: 200 }
    }
}

fn normalize(t: &FieldTower, v: &[Fe]) -> Option<Vec<Fe>> {
    let lead = *v.iter().find(|a| !a.is_zero())?;
    let inv = t.inv(lead)?;
    Some(v.iter().map(|&x| t.mul(x, inv)).collect())
}

/// Every nonzero vector of the F_{p^e}-span of `basis`, by counting through
/// all coefficient tuples.
fn all_vectors(t: &FieldTower, field: &SmallField, basis: &[Vec<Fe>], max: u64) -> Result<Vec<Vec<Fe>>> {
    let q = field.q() as u64;
    let total = arith::checked_pow(q, basis.len()).unwrap_or(u128::MAX);
    if total - 1 > max as u128 {
        return Err(Error::CapExceeded { needed: total - 1, cap: max });
    }
    let dim = basis.first().map_or(0, |v| v.len());
    let mut out = Vec::with_capacity(total as usize - 1);
    for idx in 1..total as u64 {
        let mut rest = idx;
        let mut v = vec![t.zero(); dim];
        for b in basis {
            let c = field.to_fe((rest % q) as u32);
            rest /= q;
            for (x, &y) in v.iter_mut().zip(b) {
                *x = t.add(*x, t.mul(c, y));
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Nonzero-vector count per point of the F_{q^s}-span of `basis`.
fn point_hits(t: &FieldTower, field: &SmallField, basis: &[Vec<Fe>], max: u64) -> Result<BTreeMap<Vec<Fe>, u64>> {
    let mut hits = BTreeMap::new();
    for v in all_vectors(t, field, basis, max)? {
        if let Some(p) = normalize(t, &v) {
            *hits.entry(p).or_insert(0) += 1;
        }
    }
    Ok(hits)
}

/// Report from all `q^k − 1` nonzero vectors. A point of weight `w` is hit
/// by exactly `q^w − 1` of them.
pub fn exhaustive_report(u: &FqSubspace, cfg: &OracleConfig) -> Result<LinearSetReport> {
    let amb = u.ambient();
    let t = amb.tower();
    let q = amb.q();
    let n = amb.n();
    let k = u.rank();
    let hits = point_hits(t, amb.field(), u.basis(), cfg.max_vectors)?;
    let mut distribution = vec![0u64; n];
    let mut points = Vec::with_capacity(hits.len());
    let mut vectors_seen: u128 = 0;
    for (p, m) in hits {
        vectors_seen += m as u128;
        let w = arith::exact_log(m as u128 + 1, q)
            .ok_or_else(|| internal(format!("a point is hit by {m} vectors, not q^w - 1")))?;
        if w == 0 || w > n {
            return Err(internal(format!("oracle weight {w} outside 1..={n}")));
        }
        distribution[w - 1] += 1;
        points.push(WeightedPoint { point: ProjPoint::new(t, &p)?, weight: w });
    }
    let size = points.len() as u64;
    let total = gaussian_count(q, k);
    let weighted: u128 = distribution.iter().enumerate().map(|(i, &c)| c as u128 * gaussian_count(q, i + 1)).sum();
    if vectors_seen != arith::pow(q, k) - 1 {
        return Err(internal("oracle lost vectors"));
    }
    let identities = IdentityChecks {
        cardinality: distribution.iter().sum::<u64>() == size,
        weighted_cardinality: weighted == total,
        upper_bound: size as u128 <= total,
        mod_q: size % q == 1 % q,
    };
    let spectrum = (1..=n).filter(|&i| distribution[i - 1] > 0).collect();
    Ok(LinearSetReport { size, rank: k, distribution, spectrum, identities, points })
}

/// Uniform `k`-dimensional F_q-subspace: a random `k × (d+1)n` matrix over
/// F_q, redrawn until it has full rank. Deterministic in `seed`.
pub fn random_subspace(amb: &Ambient, k: usize, seed: u64) -> Result<FqSubspace> {
    let len = amb.dim() * amb.n();
    if k == 0 || k > len {
        return Err(invalid(format!("rank {k} outside 1..={len}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = amb.q() as u32;
    loop {
        let vectors: Vec<Vec<Fe>> = (0..k)
            .map(|_| {
                let coords: Vec<u32> = (0..len).map(|_| rng.gen_range(0..q)).collect();
                amb.collapse(&coords)
            })
            .collect();
        let u = FqSubspace::span_or_zero(amb, &vectors)?;
        if u.rank() == k {
            return Ok(u);
        }
    }
}

/// Why a point set cannot be F_{q^s}-linear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// F_{q^s}-linear sets have `1 mod q^s` points.
    Size { size: u64, modulus: u64 },
    /// A line through two points of the set meets it in `size` points, while
    /// a line section of an F_{q^s}-linear set has 0, 1 or `1 mod q^s` points.
    LineSection { line: [ProjPoint; 2], size: u64, modulus: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometricFieldVerdict {
    /// An F_{q^s}-subspace with the same point set, by its F_{q^s}-basis.
    Found(Vec<Vec<Fe>>),
    Refuted(Refutation),
    /// The search budget ran out first.
    Inconclusive {
        explored: u64,
    },
}

/// Decides at tiny scale whether `L_U` equals some F_{q^s}-linear set.
///
/// Counting certificates are tried first. Otherwise candidates are
/// F_{q^s}-spans of growing sets of point representatives, pruned as soon as
/// they produce a point outside `L_U`; at most `budget` candidates are built.
pub fn tiny_geometric_field_search(
    u: &FqSubspace,
    s: usize,
    budget: u64,
    cfg: &OracleConfig,
) -> Result<GeometricFieldVerdict> {
    let amb = u.ambient();
    let t = amb.tower();
    if s == 0 || !amb.n().is_multiple_of(s) {
        return Err(invalid(format!("{s} does not divide n = {}", amb.n())));
    }
    let qs = arith::pow(amb.q(), s) as u64;
    let points: Vec<Vec<Fe>> = point_hits(t, amb.field(), u.basis(), cfg.max_vectors)?.into_keys().collect();
    let size = points.len() as u64;
    if size % qs != 1 % qs {
        return Ok(GeometricFieldVerdict::Refuted(Refutation::Size { size, modulus: qs }));
    }
    if amb.d() >= 1 {
        if let Some(r) = line_section_refutation(t, &points, qs)? {
            return Ok(GeometricFieldVerdict::Refuted(r));
        }
    }

    let big = SmallField::new(t, amb.base_degree() * s)?;
    let target: std::collections::BTreeSet<Vec<Fe>> = points.iter().cloned().collect();
    let mut explored = 0u64;
    let mut chosen: Vec<Vec<Fe>> = Vec::new();
    match grow(t, &big, &points, &target, 0, &mut chosen, &mut explored, budget, cfg.max_vectors)? {
        Some(basis) => Ok(GeometricFieldVerdict::Found(basis)),
        None => Ok(GeometricFieldVerdict::Inconclusive { explored }),
    }
}

#[allow(clippy::too_many_arguments)]
fn grow(
    t: &FieldTower,
    big: &SmallField,
    points: &[Vec<Fe>],
    target: &std::collections::BTreeSet<Vec<Fe>>,
    from: usize,
    chosen: &mut Vec<Vec<Fe>>,
    explored: &mut u64,
    budget: u64,
    max: u64,
) -> Result<Option<Vec<Vec<Fe>>>> {
    for i in from..points.len() {
        if *explored >= budget {
            *explored += 1;
            return Ok(None);
        }
        *explored += 1;
        chosen.push(points[i].clone());
        let set: std::collections::BTreeSet<Vec<Fe>> = match point_hits(t, big, chosen, max) {
            Ok(h) => h.into_keys().collect(),
            Err(Error::CapExceeded { .. }) => {
                chosen.pop();
                continue;
            }
            Err(e) => return Err(e),
        };
        if set.is_subset(target) {
            if set.len() == target.len() {
                return Ok(Some(chosen.clone()));
            }
            if let Some(found) = grow(t, big, points, target, i + 1, chosen, explored, budget, max)? {
                return Ok(Some(found));
            }
        }
        chosen.pop();
    }
    Ok(None)
}

/// Points of `L_U` on the line through the distinct points `a` and `b`,
/// counted over all nonzero vectors of `U`.
pub fn line_section_size(u: &FqSubspace, a: &ProjPoint, b: &ProjPoint, cfg: &OracleConfig) -> Result<u64> {
    let amb = u.ambient();
    let t = amb.tower();
    if a == b {
        return Err(invalid("a line needs two distinct points"));
    }
    let key = line_key(t, a.coords(), b.coords());
    let (r1, r2) = key.split_at(key.len() / 2);
    let points = point_hits(t, amb.field(), u.basis(), cfg.max_vectors)?;
    Ok(points.keys().filter(|p| on_line(t, r1, r2, p)).count() as u64)
}

fn line_key(t: &FieldTower, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    // a is normalized; clear b at a's leading coordinate, normalize, then
    // clear a at b's leading coordinate.
    let la = a.iter().position(|x| !x.is_zero()).expect("nonzero");
    let c = b[la];
    let b2: Vec<Fe> = b.iter().zip(a).map(|(&y, &x)| t.sub(y, t.mul(c, x))).collect();
    let b2 = normalize(t, &b2).expect("distinct points");
    let lb = b2.iter().position(|x| !x.is_zero()).expect("nonzero");
    let c = a[lb];
    let a2: Vec<Fe> = a.iter().zip(&b2).map(|(&x, &y)| t.sub(x, t.mul(c, y))).collect();
    let (first, second) = if la < lb { (a2, b2) } else { (b2, a2) };
    let mut key = first;
    key.extend(second);
    key
}

fn line_section_refutation(t: &FieldTower, points: &[Vec<Fe>], qs: u64) -> Result<Option<Refutation>> {
    let mut lines: HashMap<Vec<Fe>, (u64, usize, usize)> = HashMap::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let key = line_key(t, &points[i], &points[j]);
            lines.entry(key).or_insert((0, i, j));
        }
    }
    // Count every point on every recorded line.
    let mut found: Option<(usize, usize, u64)> = None;
    for (key, entry) in lines.iter_mut() {
        let dim = key.len() / 2;
        let (r1, r2) = key.split_at(dim);
        let on = points.iter().filter(|p| on_line(t, r1, r2, p)).count() as u64;
        entry.0 = on;
        if on % qs != 1 % qs {
            let cand = (entry.1, entry.2, on);
            if found.is_none_or(|f| (cand.0, cand.1) < (f.0, f.1)) {
                found = Some(cand);
            }
        }
    }
    Ok(found.map(|(i, j, size)| Refutation::LineSection {
        line: [ProjPoint::new(t, &points[i]).expect("point"), ProjPoint::new(t, &points[j]).expect("point")],
        size,
        modulus: qs,
    }))
}

fn on_line(t: &FieldTower, r1: &[Fe], r2: &[Fe], p: &[Fe]) -> bool {
    // r1, r2 are in reduced echelon form; p lies on the line iff
    // p - p[l1] r1 - p[l2] r2 vanishes.
    let l1 = r1.iter().position(|x| !x.is_zero()).expect("nonzero");
    let l2 = r2.iter().position(|x| !x.is_zero()).expect("nonzero");
    let (c1, c2) = (p[l1], p[l2]);
    p.iter().zip(r1.iter().zip(r2)).all(|(&x, (&a, &b))| t.sub(t.sub(x, t.mul(c1, a)), t.mul(c2, b)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linset;

    #[test]
    fn rank_one_has_one_point_of_weight_one() {
        let t = FieldTower::new(3, &[1, 2]).unwrap();
        let amb = Ambient::new(t.clone(), 1, 1).unwrap();
        let u = FqSubspace::span(&amb, &[vec![t.one(), t.x()]]).unwrap();
        let r = exhaustive_report(&u, &OracleConfig::default()).unwrap();
        assert_eq!((r.size, r.distribution.clone()), (1, vec![1, 0]));
    }

    #[test]
    fn random_subspaces_are_deterministic() {
        let t = FieldTower::new(2, &[1, 2]).unwrap();
        let amb = Ambient::new(t.clone(), 1, 1).unwrap();
        let a = random_subspace(&amb, 3, 1).unwrap();
        assert_eq!(a.rank(), 3);
        assert_eq!(a, random_subspace(&amb, 3, 1).unwrap());
        assert!(random_subspace(&amb, 5, 1).is_err());
    }

    #[test]
    fn oracle_agrees_on_random_instances() {
        let t = FieldTower::new(3, &[1, 3]).unwrap();
        let amb = Ambient::new(t.clone(), 1, 2).unwrap();
        for seed in 0..10 {
            let u = random_subspace(&amb, 5, seed).unwrap();
            let fast = linset::report(&u).unwrap();
            let slow = exhaustive_report(&u, &OracleConfig::default()).unwrap();
            assert_eq!(fast, slow);
            assert!(slow.identities.all());
        }
    }

    #[test]
    fn full_subspace_is_its_own_witness() {
        let t = FieldTower::new(2, &[1, 2]).unwrap();
        let amb = Ambient::new(t.clone(), 1, 1).unwrap();
        let gens: Vec<Vec<Fe>> = (0..2)
            .flat_map(|i| amb.theta().iter().map(move |&th| (i, th)))
            .map(|(i, th)| {
                let mut v = amb.unit(i);
                v[i] = th;
                v
            })
            .collect();
        let u = FqSubspace::span(&amb, &gens).unwrap();
        let v = tiny_geometric_field_search(&u, 2, 100, &OracleConfig::default()).unwrap();
        assert!(matches!(v, GeometricFieldVerdict::Found(_)));
    }

    #[test]
    fn secant_refutes_larger_fields() {
        let t = FieldTower::new(2, &[1, 2, 4]).unwrap();
        let amb = Ambient::new(t.clone(), 1, 2).unwrap();
        let plane = FqSubspace::span(&amb, &[amb.unit(0), amb.unit(1), amb.unit(2)]).unwrap();
        let v = tiny_geometric_field_search(&plane, 2, 100, &OracleConfig::default()).unwrap();
        assert!(matches!(v, GeometricFieldVerdict::Refuted(_)), "{v:?}");
    }
}
