//! F_q-subspaces of F_{q^n}^{d+1} and the linear sets they define.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{self, gaussian_count};
use crate::error::{internal, invalid, Error, Result};
use crate::fields::{Fe, FieldTower, SmallField, TowerRecord};
use crate::linalg::Echelon;
use crate::projgeo::ProjSubspace;

#[derive(Debug)]
struct AmbientInner {
    tower: Arc<FieldTower>,
    field: SmallField,
    theta: Vec<Fe>,
    e: usize,
    n: usize,
    dim: usize,
}

/// The space F_{q^n}^{d+1} viewed over F_q, with q = p^e a level of the tower
/// and q^n its top field. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Ambient(Arc<AmbientInner>);

impl Ambient {
    pub fn new(tower: Arc<FieldTower>, base_degree: usize, d: usize) -> Result<Ambient> {
        let field = SmallField::new(&tower, base_degree)?;
        let theta = tower.relative_basis(base_degree)?;
        let n = tower.degree() / base_degree;
        if n < 2 {
            return Err(invalid("the top field must be a proper extension of F_q"));
        }
        Ok(Ambient(Arc::new(AmbientInner { tower, field, theta, e: base_degree, n, dim: d + 1 })))
    }

    /// Same fields, different projective dimension.
    pub fn with_d(&self, d: usize) -> Ambient {
        Ambient(Arc::new(AmbientInner {
            tower: self.0.tower.clone(),
            field: self.0.field.clone(),
            theta: self.0.theta.clone(),
            e: self.0.e,
            n: self.0.n,
            dim: d + 1,
        }))
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.0.tower
    }

    /// F_q with elements as indices over the level basis.
    pub fn field(&self) -> &SmallField {
        &self.0.field
    }

    pub fn q(&self) -> u64 {
        self.0.field.q() as u64
    }

    pub fn base_degree(&self) -> usize {
        self.0.e
    }

    /// Degree of the top field over F_q.
    pub fn n(&self) -> usize {
        self.0.n
    }

    /// Projective dimension.
    pub fn d(&self) -> usize {
        self.0.dim - 1
    }

    /// Vector dimension `d + 1`.
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// F_q basis of F_{q^n} underlying [`expand`](Self::expand).
    pub fn theta(&self) -> &[Fe] {
        &self.0.theta
    }

    pub fn same_space(&self, other: &Ambient) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (Arc::ptr_eq(&self.0.tower, &other.0.tower) && self.0.e == other.0.e && self.0.dim == other.0.dim)
            || (self.0.tower.record() == other.0.tower.record() && self.0.e == other.0.e && self.0.dim == other.0.dim)
    }

    /// F_q coordinates of a vector: block `i` of length `n` holds coordinate `i`.
    pub fn expand(&self, v: &[Fe]) -> Vec<u32> {
        let t = &self.0.tower;
        v.iter().flat_map(|&a| self.0.field.expand(t, a)).collect()
    }

    pub fn collapse(&self, c: &[u32]) -> Vec<Fe> {
        let t = &self.0.tower;
        c.chunks(self.0.n)
            .map(|chunk| {
                chunk
                    .iter()
                    .zip(&self.0.theta)
                    .fold(t.zero(), |acc, (&ci, &th)| t.add(acc, t.mul(self.0.field.to_fe(ci), th)))
            })
            .collect()
    }

    fn check_vec(&self, v: &[Fe]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(invalid(format!("vector of length {} in a space of dimension {}", v.len(), self.dim())));
        }
        Ok(())
    }

    /// `e_i`.
    pub fn unit(&self, i: usize) -> Vec<Fe> {
        let t = &self.0.tower;
        (0..self.dim()).map(|j| if i == j { t.one() } else { t.zero() }).collect()
    }
}

/// F_q-subspace `U` of F_{q^n}^{d+1}, stored by its canonical reduced row
/// echelon form over F_q. Two subspaces are equal iff their rows are.
#[derive(Clone, Debug)]
pub struct FqSubspace {
    amb: Ambient,
    ech: Echelon<u32>,
    vectors: Vec<Vec<Fe>>,
}

impl PartialEq for FqSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.amb.same_space(&other.amb) && self.ech.rows() == other.ech.rows()
    }
}

impl Eq for FqSubspace {}

impl FqSubspace {
    /// The F_q-span of `vectors`; errors when the span is zero.
    pub fn span(amb: &Ambient, vectors: &[Vec<Fe>]) -> Result<FqSubspace> {
        let s = Self::span_or_zero(amb, vectors)?;
        if s.rank() == 0 {
            return Err(invalid("the vectors span the zero subspace"));
        }
        Ok(s)
    }

    pub(crate) fn span_or_zero(amb: &Ambient, vectors: &[Vec<Fe>]) -> Result<FqSubspace> {
        let mut ech = Echelon::new(amb.dim() * amb.n());
        for v in vectors {
            amb.check_vec(v)?;
            ech.insert(amb.field(), amb.expand(v));
        }
        Ok(Self::from_echelon(amb.clone(), ech))
    }

    fn from_echelon(amb: Ambient, ech: Echelon<u32>) -> FqSubspace {
        let vectors = ech.rows().iter().map(|r| amb.collapse(r)).collect();
        FqSubspace { amb, ech, vectors }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        self.amb.tower()
    }

    /// `k = dim_{F_q} U`.
    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// Canonical basis as vectors of F_{q^n}^{d+1}.
    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.vectors
    }

    /// Canonical basis over F_q coordinates.
    pub fn rows(&self) -> &[Vec<u32>] {
        self.ech.rows()
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        v.len() == self.amb.dim() && self.ech.contains(self.amb.field(), self.amb.expand(v))
    }

    /// `dim_{F_q}(U + span)` minus `dim_{F_q} U`.
    fn rank_gain(&self, vectors: impl IntoIterator<Item = Vec<Fe>>) -> usize {
        let mut ech = self.ech.clone();
        vectors.into_iter().filter(|v| ech.insert(self.amb.field(), self.amb.expand(v))).count()
    }

    /// F_q-span of `{θ w : θ ∈ F_{q^n}, w ∈ basis}` as generating vectors.
    fn fq_generators(&self, fqn_basis: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
        let t = self.tower();
        fqn_basis
            .iter()
            .flat_map(|w| self.amb.theta().iter().map(move |&th| w.iter().map(|&x| t.mul(th, x)).collect()))
            .collect()
    }

    /// `U ∩ W` where `W` is the F_{q^n}-span of `fqn_basis`, by Zassenhaus.
    pub fn intersect_fqn(&self, fqn_basis: &[Vec<Fe>]) -> Result<FqSubspace> {
        for w in fqn_basis {
            self.amb.check_vec(w)?;
        }
        let f = self.amb.field();
        let len = self.amb.dim() * self.amb.n();
        let mut ech = Echelon::new(2 * len);
        for r in self.rows() {
            let mut row = r.clone();
            row.extend_from_slice(r);
            ech.insert(f, row);
        }
        for w in self.fq_generators(fqn_basis) {
            let mut row = self.amb.expand(&w);
            row.extend(std::iter::repeat_n(0, len));
            ech.insert(f, row);
        }
        let rows = ech.rows().iter().filter(|r| r[..len].iter().all(|&x| x == 0)).map(|r| r[len..].to_vec());
        let ech = Echelon::from_rows(f, len, rows);
        Ok(Self::from_echelon(self.amb.clone(), ech))
    }

    /// Image under the F_{q^n}-linear map `v ↦ M v`.
    pub fn apply_matrix(&self, m: &[Vec<Fe>]) -> Result<FqSubspace> {
        let t = self.tower();
        let dim = self.amb.dim();
        if m.len() != dim || m.iter().any(|r| r.len() != dim) {
            return Err(invalid("matrix shape does not match the ambient space"));
        }
        let images: Vec<Vec<Fe>> = self
            .vectors
            .iter()
            .map(|v| {
                m.iter().map(|row| row.iter().zip(v).fold(t.zero(), |acc, (&a, &b)| t.add(acc, t.mul(a, b)))).collect()
            })
            .collect();
        Self::span_or_zero(&self.amb, &images)
    }

    pub fn record(&self) -> SubspaceRecord {
        let t = self.tower();
        SubspaceRecord {
            tower: t.record(),
            base_degree: self.amb.base_degree(),
            ambient_dim: self.amb.d(),
            basis: self.vectors.iter().map(|v| v.iter().map(|&a| t.coeffs(a)).collect()).collect(),
        }
    }

    pub fn from_record(rec: &SubspaceRecord, cap: Option<u64>) -> Result<FqSubspace> {
        let tower = FieldTower::from_record(&rec.tower, cap)?;
        let amb = Ambient::new(tower.clone(), rec.base_degree, rec.ambient_dim)?;
        let vectors = rec
            .basis
            .iter()
            .map(|v| v.iter().map(|c| tower.from_coeffs(c)).collect::<Result<Vec<Fe>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::span(&amb, &vectors)
    }
}

/// JSON form of a subspace: the tower, `q = p^base_degree`, the projective
/// dimension and spanning vectors whose coordinates are F_p coefficient
/// arrays over the standard basis, low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceRecord {
    pub tower: TowerRecord,
    pub base_degree: usize,
    pub ambient_dim: usize,
    pub basis: Vec<Vec<Vec<u32>>>,
}

/// A point of PG(d, q^n): a vector whose first nonzero coordinate is one.
/// Ordered lexicographically on packed coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Box<[Fe]>);

impl ProjPoint {
    pub fn new(tower: &FieldTower, v: &[Fe]) -> Result<ProjPoint> {
        let lead = v.iter().find(|a| !a.is_zero()).ok_or_else(|| invalid("the zero vector is not a point"))?;
        let inv = tower.inv(*lead).expect("nonzero");
        Ok(ProjPoint(v.iter().map(|&a| tower.mul(a, inv)).collect()))
    }

    pub(crate) fn from_normalized(v: Box<[Fe]>) -> ProjPoint {
        ProjPoint(v)
    }

    pub fn coords(&self) -> &[Fe] {
        &self.0
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ProjPoint").field(&self.0.iter().map(|a| a.packed()).collect::<Vec<_>>()).finish()
    }
}

/// Something with an F_{q^n}-basis: a point or a projective subspace.
pub trait FqnSpan {
    fn fqn_basis(&self) -> Vec<Vec<Fe>>;
}

impl FqnSpan for ProjPoint {
    fn fqn_basis(&self) -> Vec<Vec<Fe>> {
        vec![self.0.to_vec()]
    }
}

impl FqnSpan for ProjSubspace {
    fn fqn_basis(&self) -> Vec<Vec<Fe>> {
        self.rows().to_vec()
    }
}

/// `w(Ω) = dim_{F_q}(U ∩ W)`, from `dim U + dim W − dim(U + W)` over F_q.
pub fn weight(u: &FqSubspace, target: &impl FqnSpan) -> Result<usize> {
    let basis = target.fqn_basis();
    for w in &basis {
        u.amb.check_vec(w)?;
    }
    let gens = u.fq_generators(&basis);
    let w_dim = {
        let mut ech = Echelon::new(u.amb.dim() * u.amb.n());
        gens.iter().filter(|v| ech.insert(u.amb.field(), u.amb.expand(v))).count()
    };
    Ok(w_dim - u.rank_gain(gens))
}

/// Every point of `L_U` with the number of F_q-projective representatives of
/// `U` lying on it, sorted by point.
///
/// Representatives are `u_j + Σ_{i>j} c_i u_i` over the echelon basis. Rows
/// after `j` vanish up to and including the pivot of row `j`, so the leading
/// coordinate of each representative is the block holding that pivot.
pub fn point_multiplicities(u: &FqSubspace) -> Result<Vec<(ProjPoint, u64)>> {
    let amb = &u.amb;
    let t = amb.tower();
    let k = u.rank();
    t.check_cap(arith::pow(amb.q(), k))?;
    let beta = t.subfield_basis(amb.base_degree())?;
    let p = t.p();
    let mut counts: HashMap<Box<[Fe]>, u64> = HashMap::new();
    for j in 0..k {
        let lead = u.ech.pivots()[j] / amb.n();
        let gens: Vec<Vec<Fe>> = u.vectors[j + 1..]
            .iter()
            .flat_map(|v| beta.iter().map(move |&b| v.iter().map(|&x| t.mul(b, x)).collect()))
            .collect();
        let mut digits = vec![0u32; gens.len()];
        let mut v = u.vectors[j].clone();
        'reps: loop {
            let inv = t.inv(v[lead]).ok_or_else(|| internal("representative with zero leading block"))?;
            let key: Box<[Fe]> = v.iter().map(|&x| t.mul(x, inv)).collect();
            *counts.entry(key).or_insert(0) += 1;
            let mut pos = 0;
            loop {
                if pos == gens.len() {
                    break 'reps;
                }
                for (x, &g) in v.iter_mut().zip(&gens[pos]) {
                    *x = t.add(*x, g);
                }
                digits[pos] += 1;
                if digits[pos] < p {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }
    let mut out: Vec<(ProjPoint, u64)> = counts.into_iter().map(|(k, c)| (ProjPoint::from_normalized(k), c)).collect();
    out.sort_unstable();
    Ok(out)
}

/// Points of `L_U` in canonical order.
pub fn enumerate_points(u: &FqSubspace) -> Result<Vec<ProjPoint>> {
    Ok(point_multiplicities(u)?.into_iter().map(|(p, _)| p).collect())
}

/// A point of `L_U` with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoint {
    pub point: ProjPoint,
    pub weight: usize,
}

/// Flags for the four identities every linear set satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityChecks {
    /// `Σ N_i = |L_U|`.
    pub cardinality: bool,
    /// `Σ N_i (q^i − 1)/(q − 1) = (q^k − 1)/(q − 1)`.
    pub weighted_cardinality: bool,
    /// `|L_U| ≤ (q^k − 1)/(q − 1)`.
    pub upper_bound: bool,
    /// `|L_U| ≡ 1 (mod q)`.
    pub mod_q: bool,
}

impl IdentityChecks {
    pub fn all(&self) -> bool {
        self.cardinality && self.weighted_cardinality && self.upper_bound && self.mod_q
    }
}

/// Size, weights and weight distribution of a linear set.
///
/// `distribution[i - 1]` is `N_i` for `i = 1..=n`. Points are kept for
/// in-process use and omitted from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSetReport {
    pub size: u64,
    pub rank: usize,
    #[serde(rename = "N")]
    pub distribution: Vec<u64>,
    pub spectrum: Vec<usize>,
    pub identities: IdentityChecks,
    #[serde(skip)]
    pub points: Vec<WeightedPoint>,
}

impl LinearSetReport {
    /// Builds the report from weighted points; a failing cardinality identity
    /// means the weights are wrong, which is an internal error.
    pub fn from_weighted_points(points: Vec<WeightedPoint>, q: u64, n: usize, rank: usize) -> Result<Self> {
        let mut distribution = vec![0u64; n];
        for wp in &points {
            if wp.weight == 0 || wp.weight > n {
                return Err(internal(format!("point weight {} outside 1..={n}", wp.weight)));
            }
            distribution[wp.weight - 1] += 1;
        }
        let size = points.len() as u64;
        let weighted: u128 = distribution.iter().enumerate().map(|(i, &c)| c as u128 * gaussian_count(q, i + 1)).sum();
        let total = gaussian_count(q, rank);
        let identities = IdentityChecks {
            cardinality: distribution.iter().sum::<u64>() == size,
            weighted_cardinality: weighted == total,
            upper_bound: size as u128 <= total,
            mod_q: size % q == 1 % q,
        };
        if !identities.cardinality || !identities.weighted_cardinality {
            return Err(internal(format!(
                "weight distribution {distribution:?} of a rank {rank} set violates the counting identities"
            )));
        }
        let spectrum = (1..=n).filter(|&i| distribution[i - 1] > 0).collect();
        Ok(LinearSetReport { size, rank, distribution, spectrum, identities, points })
    }

    /// `N_i`, zero outside `1..=n`.
    pub fn n_i(&self, i: usize) -> u64 {
        if i == 0 {
            return 0;
        }
        self.distribution.get(i - 1).copied().unwrap_or(0)
    }

    pub fn weight_of(&self, p: &ProjPoint) -> usize {
        self.points.binary_search_by(|wp| wp.point.cmp(p)).map(|i| self.points[i].weight).unwrap_or(0)
    }

    pub fn min_weight(&self) -> usize {
        self.spectrum.first().copied().unwrap_or(0)
    }
}

/// Full report. Each point of weight `w` carries `(q^w − 1)/(q − 1)`
/// representatives, which determines `w`.
pub fn report(u: &FqSubspace) -> Result<LinearSetReport> {
    let q = u.amb.q();
    let points = point_multiplicities(u)?
        .into_iter()
        .map(|(point, m)| {
            let w = weight_from_representatives(m as u128, q)
                .ok_or_else(|| internal(format!("{m} representatives is not a projective count over F_{q}")))?;
            Ok(WeightedPoint { point, weight: w })
        })
        .collect::<Result<Vec<_>>>()?;
    LinearSetReport::from_weighted_points(points, q, u.amb.n(), u.rank())
}

/// `w` with `(q^w − 1)/(q − 1) = m`.
pub(crate) fn weight_from_representatives(m: u128, q: u64) -> Option<usize> {
    arith::exact_log(m * (q as u128 - 1) + 1, q)
}

/// Largest `s | n` such that `U` is closed under multiplication by F_{q^s}.
pub fn max_field_of_linearity(u: &FqSubspace) -> Result<usize> {
    let amb = &u.amb;
    let t = amb.tower();
    for s in arith::divisors(amb.n()).into_iter().rev() {
        if s == 1 {
            return Ok(1);
        }
        let omega = t.primitive_element(amb.base_degree() * s)?;
        let closed = u.vectors.iter().all(|v| {
            let w: Vec<Fe> = v.iter().map(|&x| t.mul(omega, x)).collect();
            u.contains(&w)
        });
        if closed {
            return Ok(s);
        }
    }
    unreachable!("s = 1 always qualifies")
}

/// A line meeting `L_U` in exactly `q + 1` points, as two of its points.
///
/// Such a line certifies that F_q is the largest geometric field of
/// linearity, since an F_{q^s}-linear set meets a line in `1 mod q^s` points.
pub fn secant_witness(u: &FqSubspace) -> Result<Option<(ProjPoint, ProjPoint)>> {
    if u.amb.d() == 0 {
        return Err(invalid("secant lines need d ≥ 1"));
    }
    let t = u.tower();
    let q = u.amb.q();
    let pts = enumerate_points(u)?;
    for (i, p) in pts.iter().enumerate() {
        let mut lines: HashMap<Vec<u64>, (usize, usize)> = HashMap::new();
        for (j, r) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let line = ProjSubspace::span(t, u.amb.dim(), &[p.coords().to_vec(), r.coords().to_vec()]);
            lines.entry(line.key()).and_modify(|e| e.0 += 1).or_insert((1, j));
        }
        let mut hits: Vec<(usize, usize)> = lines.into_values().filter(|&(c, _)| c as u64 == q).collect();
        hits.sort_unstable_by_key(|&(_, j)| j);
        if let Some(&(_, j)) = hits.first() {
            return Ok(Some((p.clone(), pts[j].clone())));
        }
    }
    Ok(None)
}

/// Error for subspaces living in different ambient spaces.
pub(crate) fn ambient_mismatch() -> Error {
    invalid("objects live in different ambient spaces")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4_line() -> (Arc<FieldTower>, Ambient) {
        let t = FieldTower::new(2, &[1, 2]).unwrap();
        let amb = Ambient::new(t.clone(), 1, 1).unwrap();
        (t, amb)
    }

    /// U = F_4 × F_2 in F_4^2 over F_2.
    fn f4_times_f2() -> FqSubspace {
        let (t, amb) = f4_line();
        let w = t.x();
        FqSubspace::span(&amb, &[vec![t.one(), t.zero()], vec![w, t.zero()], vec![t.zero(), t.one()]]).unwrap()
    }

    #[test]
    fn span_examples() {
        let (t, amb) = f4_line();
        let (o, z, w) = (t.one(), t.zero(), t.x());
        assert_eq!(FqSubspace::span(&amb, &[vec![o, z], vec![z, o]]).unwrap().rank(), 2);
        assert_eq!(FqSubspace::span(&amb, &[vec![o, z], vec![w, z]]).unwrap().rank(), 2);
        assert_eq!(FqSubspace::span(&amb, &[vec![o, o], vec![o, o]]).unwrap().rank(), 1);
        assert!(FqSubspace::span(&amb, &[vec![z, z]]).is_err());
        assert!(FqSubspace::span(&amb, &[vec![o]]).is_err());
    }

    #[test]
    fn canonical_form_is_unique() {
        let (t, amb) = f4_line();
        let (o, z, w) = (t.one(), t.zero(), t.x());
        let a = FqSubspace::span(&amb, &[vec![o, w], vec![w, o]]).unwrap();
        let b = FqSubspace::span(&amb, &[vec![t.add(o, w), t.add(w, o)], vec![w, o]]).unwrap();
        assert_eq!(a, b);
        let c = FqSubspace::span(&amb, &[vec![o, z], vec![w, o]]).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn small_enumerations() {
        let (t, amb) = f4_line();
        let (o, z) = (t.one(), t.zero());
        let subline = FqSubspace::span(&amb, &[vec![o, z], vec![z, o]]).unwrap();
        assert_eq!(enumerate_points(&subline).unwrap().len(), 3);
        assert_eq!(enumerate_points(&f4_times_f2()).unwrap().len(), 5);
        let full: Vec<Vec<Fe>> = (0..2)
            .flat_map(|i| {
                [amb.unit(i), {
                    let mut v = amb.unit(i);
                    v[i] = t.x();
                    v
                }]
            })
            .collect();
        let all = FqSubspace::span(&amb, &full).unwrap();
        assert_eq!(all.rank(), 4);
        assert_eq!(enumerate_points(&all).unwrap().len(), 5);
    }

    #[test]
    fn weight_examples() {
        let u = f4_times_f2();
        let t = u.tower().clone();
        let e0 = ProjPoint::new(&t, &[t.one(), t.zero()]).unwrap();
        let diag = ProjPoint::new(&t, &[t.one(), t.one()]).unwrap();
        assert_eq!(weight(&u, &e0).unwrap(), 2);
        assert_eq!(weight(&u, &diag).unwrap(), 1);
        // <(1, ω)> misses the F_2-subline.
        let amb = u.ambient().clone();
        let subline = FqSubspace::span(&amb, &[amb.unit(0), amb.unit(1)]).unwrap();
        let off = ProjPoint::new(&t, &[t.one(), t.x()]).unwrap();
        assert_eq!(weight(&subline, &off).unwrap(), 0);
        assert_eq!(weight(&subline, &diag).unwrap(), 1);
    }

    #[test]
    fn report_f4_times_f2() {
        let r = report(&f4_times_f2()).unwrap();
        assert_eq!(r.size, 5);
        assert_eq!(r.distribution, vec![4, 1]);
        assert_eq!(r.spectrum, vec![1, 2]);
        assert!(r.identities.all());
        for wp in &r.points {
            assert_eq!(weight(&f4_times_f2(), &wp.point).unwrap(), wp.weight);
        }
    }

    #[test]
    fn field_of_linearity_examples() {
        assert_eq!(max_field_of_linearity(&f4_times_f2()).unwrap(), 1);

        let t = FieldTower::new(2, &[1, 2, 4]).unwrap();
        let amb = Ambient::new(t.clone(), 1, 1).unwrap();
        let w = t.primitive_element(2).unwrap();
        let u = FqSubspace::span(
            &amb,
            &[vec![t.one(), t.zero()], vec![w, t.zero()], vec![t.zero(), t.one()], vec![t.zero(), w]],
        )
        .unwrap();
        assert_eq!(max_field_of_linearity(&u).unwrap(), 2);

        let line: Vec<Vec<Fe>> = amb.theta().iter().map(|&th| vec![th, t.zero()]).collect();
        assert_eq!(max_field_of_linearity(&FqSubspace::span(&amb, &line).unwrap()).unwrap(), 4);
    }

    #[test]
    fn secant_witnesses() {
        let t = FieldTower::new(2, &[1, 3]).unwrap();
        let amb = Ambient::new(t.clone(), 1, 2).unwrap();
        let plane = FqSubspace::span(&amb, &[amb.unit(0), amb.unit(1), amb.unit(2)]).unwrap();
        assert!(secant_witness(&plane).unwrap().is_some());
        // An F_8-line: every line meets it in 1 or 9 points.
        let gens: Vec<Vec<Fe>> = (0..2)
            .flat_map(|i| amb.theta().iter().map(move |&th| (i, th)))
            .map(|(i, th)| {
                let mut v = amb.unit(i);
                v[i] = th;
                v
            })
            .collect();
        let fqn_line = FqSubspace::span(&amb, &gens).unwrap();
        assert_eq!(enumerate_points(&fqn_line).unwrap().len(), 9);
        assert!(secant_witness(&fqn_line).unwrap().is_none());
    }

    #[test]
    fn intersection_matches_weight() {
        let u = f4_times_f2();
        let t = u.tower().clone();
        let x = u.intersect_fqn(&[vec![t.one(), t.zero()]]).unwrap();
        assert_eq!(x.rank(), 2);
        let y = u.intersect_fqn(&[vec![t.one(), t.one()]]).unwrap();
        assert_eq!(y.rank(), 1);
    }

    #[test]
    fn record_round_trip() {
        let u = f4_times_f2();
        let json = serde_json::to_string(&u.record()).unwrap();
        let rec: SubspaceRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(FqSubspace::from_record(&rec, None).unwrap(), u);
    }
}
