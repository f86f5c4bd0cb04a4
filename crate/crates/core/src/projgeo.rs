//! Projective subspaces of PG(d, q^n), quotients and projections.

use std::collections::HashSet;

use crate::arith::gaussian_count;
use crate::error::{internal, invalid, Result};
use crate::fields::{Fe, FieldTower};
use crate::linalg::Echelon;
use crate::linset::{self, FqSubspace, ProjPoint};

/// `Ω = PG(W, F_{q^n})` with `W` in reduced row echelon form over F_{q^n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjSubspace {
    dim: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl ProjSubspace {
    pub fn span(t: &FieldTower, dim: usize, vectors: &[Vec<Fe>]) -> ProjSubspace {
        let ech = Echelon::from_rows(t, dim, vectors.iter().cloned());
        ProjSubspace { dim, rows: ech.rows().to_vec(), pivots: ech.pivots().to_vec() }
    }

    pub fn from_points<'a>(t: &FieldTower, dim: usize, pts: impl IntoIterator<Item = &'a ProjPoint>) -> ProjSubspace {
        let vectors: Vec<Vec<Fe>> = pts.into_iter().map(|p| p.coords().to_vec()).collect();
        Self::span(t, dim, &vectors)
    }

    pub fn whole(t: &FieldTower, dim: usize) -> ProjSubspace {
        Self::coordinate(t, dim, &(0..dim).collect::<Vec<_>>())
    }

    /// Span of the unit vectors `e_i`, `i ∈ coords`.
    pub fn coordinate(t: &FieldTower, dim: usize, coords: &[usize]) -> ProjSubspace {
        let vectors: Vec<Vec<Fe>> =
            coords.iter().map(|&i| (0..dim).map(|j| if i == j { t.one() } else { t.zero() }).collect()).collect();
        Self::span(t, dim, &vectors)
    }

    /// Zero set of the linear form `Σ a_i X_i`.
    pub fn hyperplane(t: &FieldTower, form: &[Fe]) -> Result<ProjSubspace> {
        if form.iter().all(|a| a.is_zero()) {
            return Err(invalid("the zero form does not define a hyperplane"));
        }
        let ker = crate::linalg::kernel(t, form.len(), &[form.to_vec()]);
        Ok(Self::span(t, form.len(), &ker))
    }

    /// Vector dimension of `W`.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Projective dimension, `-1` for the empty subspace.
    pub fn proj_dim(&self) -> isize {
        self.rows.len() as isize - 1
    }

    /// Dimension of the ambient vector space.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains_vec(&self, t: &FieldTower, v: &[Fe]) -> bool {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(row) {
                *x = t.sub(*x, t.mul(c, y));
            }
        }
        r.iter().all(|a| a.is_zero())
    }

    pub fn contains_point(&self, t: &FieldTower, p: &ProjPoint) -> bool {
        self.contains_vec(t, p.coords())
    }

    pub fn contains(&self, t: &FieldTower, other: &ProjSubspace) -> bool {
        other.rows.iter().all(|r| self.contains_vec(t, r))
    }

    pub fn join(&self, t: &FieldTower, other: &ProjSubspace) -> ProjSubspace {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Self::span(t, self.dim, &v)
    }

    pub fn join_vec(&self, t: &FieldTower, v: &[Fe]) -> ProjSubspace {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        Self::span(t, self.dim, &rows)
    }

    /// Hashable canonical key: the echelon rows flattened.
    pub fn key(&self) -> Vec<u64> {
        self.rows.iter().flatten().map(|a| a.packed()).collect()
    }
}

/// Span of several subspaces and whether they are independent, i.e. the
/// dimension of the span is the sum of their dimensions.
pub fn span_and_independence(t: &FieldTower, dim: usize, parts: &[ProjSubspace]) -> (ProjSubspace, bool) {
    let vectors: Vec<Vec<Fe>> = parts.iter().flat_map(|p| p.rows.iter().cloned()).collect();
    let span = ProjSubspace::span(t, dim, &vectors);
    let total: usize = parts.iter().map(|p| p.rank()).sum();
    let independent = span.rank() == total;
    (span, independent)
}

/// `V → V/W` in the coordinates of `V` that carry no pivot of `W`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    w: ProjSubspace,
    free: Vec<usize>,
}

impl QuotientMap {
    pub fn new(w: &ProjSubspace) -> QuotientMap {
        let free = (0..w.dim).filter(|c| !w.pivots.contains(c)).collect();
        QuotientMap { w: w.clone(), free }
    }

    pub fn target_dim(&self) -> usize {
        self.free.len()
    }

    /// Reduce modulo `W`, then keep the complement coordinates.
    pub fn map(&self, t: &FieldTower, v: &[Fe]) -> Vec<Fe> {
        let mut r = v.to_vec();
        for (row, &p) in self.w.rows.iter().zip(&self.w.pivots) {
            let c = r[p];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(row) {
                *x = t.sub(*x, t.mul(c, y));
            }
        }
        self.free.iter().map(|&c| r[c]).collect()
    }

    /// A preimage supported on the complement coordinates.
    pub fn lift(&self, t: &FieldTower, v: &[Fe]) -> Vec<Fe> {
        let mut out = vec![t.zero(); self.w.dim];
        for (&c, &x) in self.free.iter().zip(v) {
            out[c] = x;
        }
        out
    }

    pub fn map_subspace(&self, t: &FieldTower, s: &ProjSubspace) -> ProjSubspace {
        let imgs: Vec<Vec<Fe>> = s.rows.iter().map(|r| self.map(t, r)).collect();
        ProjSubspace::span(t, self.target_dim(), &imgs)
    }
}

fn check_ambient(u: &FqSubspace, omega: &ProjSubspace) -> Result<()> {
    if omega.dim != u.ambient().dim() {
        return Err(linset::ambient_mismatch());
    }
    Ok(())
}

/// `Ū = (U + W)/W` in PG(d − dim W, q^n); `None` when `U ⊆ W`.
pub fn project(u: &FqSubspace, omega: &ProjSubspace) -> Result<Option<FqSubspace>> {
    check_ambient(u, omega)?;
    if omega.rank() == omega.dim {
        return Err(invalid("cannot project from the whole space"));
    }
    let t = u.tower();
    let qm = QuotientMap::new(omega);
    let amb = u.ambient().with_d(qm.target_dim() - 1);
    let images: Vec<Vec<Fe>> = u.basis().iter().map(|v| qm.map(t, v)).collect();
    let img = FqSubspace::span_or_zero(&amb, &images)?;
    Ok((img.rank() > 0).then_some(img))
}

/// Number of `r`-spaces through `Ω` containing a point of `L_U \ Ω`.
///
/// Computed as the size of the projection and again by bucketing the points
/// of `L_U` off `Ω` by the span `⟨Ω, P⟩`; the two must agree.
pub fn count_i_omega(u: &FqSubspace, omega: &ProjSubspace) -> Result<u64> {
    let t = u.tower();
    let via_projection = match project(u, omega)? {
        Some(img) => linset::enumerate_points(&img)?.len() as u64,
        None => 0,
    };
    let mut spaces = HashSet::new();
    for p in linset::enumerate_points(u)? {
        if !omega.contains_point(t, &p) {
            spaces.insert(omega.join_vec(t, p.coords()).key());
        }
    }
    let via_buckets = spaces.len() as u64;
    if via_projection != via_buckets {
        return Err(internal(format!(
            "I_Omega disagrees: projection gives {via_projection}, bucketing gives {via_buckets}"
        )));
    }
    Ok(via_projection)
}

/// `U ∩ W` as a subspace, `None` when trivial.
pub fn section(u: &FqSubspace, omega: &ProjSubspace) -> Result<Option<FqSubspace>> {
    check_ambient(u, omega)?;
    let x = u.intersect_fqn(omega.rows())?;
    Ok((x.rank() > 0).then_some(x))
}

/// Whether `L_U ∩ Ω` is a canonical subgeometry of `Ω`.
///
/// With `r = dim W`: the weight of `Ω` is `r`, every point of the section has
/// weight one and the section spans `Ω`. Checked a second way through the
/// section size `(q^r − 1)/(q − 1)` (for `r ≥ 2`) or the weight (for `r = 1`);
/// disagreement is an internal error.
pub fn is_canonical_subgeometry(u: &FqSubspace, omega: &ProjSubspace) -> Result<bool> {
    let r = omega.rank();
    if r == 0 {
        return Err(invalid("the empty subspace has no subgeometry"));
    }
    let Some(x) = section(u, omega)? else {
        return Ok(false);
    };
    let t = u.tower();
    let q = u.ambient().q();
    let rep = linset::report(&x)?;
    let spans = ProjSubspace::from_points(t, omega.dim, rep.points.iter().map(|wp| &wp.point)) == *omega;
    let w = x.rank();
    let by_weights = w == r && rep.spectrum == [1] && spans;
    let by_size = if r >= 2 { rep.size as u128 == gaussian_count(q, r) && spans } else { w == 1 };
    if by_weights != by_size {
        return Err(internal(format!(
            "canonical subgeometry tests disagree on a rank {w} section of a dimension {r} space"
        )));
    }
    Ok(by_weights)
}
