//! Explicit families of linear sets, each returned with the values its
//! defining formulas predict.
//!
//! A prediction is data: [`Built::verify`] enumerates the linear set and
//! compares every predicted quantity exactly, failing with
//! [`Error::PredictionMismatch`] on the first disagreement.

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{self, gaussian_count};
use crate::bounds::{self, head_sum};
use crate::error::{internal, invalid, Error, Result};
use crate::fields::{Fe, FieldTower, SmallField};
use crate::linalg;
use crate::linset::{self, Ambient, FqSubspace, LinearSetReport, ProjPoint};
use crate::polynomials::{Poly, PolyRing};
use crate::projgeo::{self, ProjSubspace};

/// Formula values for a construction. `None` fields make no claim.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub rank: usize,
    pub size: Option<u128>,
    /// Full `N_1, …, N_n`.
    pub distribution: Option<Vec<u64>>,
    /// Individual `(i, N_i)` claims.
    pub n_i: Vec<(usize, u64)>,
    pub spectrum: Option<Vec<usize>>,
    /// `(point as tower indices, weight)`.
    pub point_weights: Vec<(Vec<u64>, usize)>,
    pub d_minimum: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub quantity: String,
    pub predicted: Value,
    pub actual: Value,
    pub ok: bool,
}

/// A constructed subspace with its parameters and prediction.
#[derive(Clone, Debug)]
pub struct Built {
    pub name: &'static str,
    pub params: Value,
    pub subspace: FqSubspace,
    pub prediction: Prediction,
}

#[derive(Clone, Debug)]
pub struct Verified {
    pub report: LinearSetReport,
    pub checks: Vec<Check>,
}

impl Built {
    /// Compares every predicted quantity with the enumerated report.
    pub fn checks(&self, report: &LinearSetReport) -> Result<Vec<Check>> {
        let u = &self.subspace;
        let t = u.tower();
        let p = &self.prediction;
        let mut out = Vec::new();
        let mut push = |quantity: String, predicted: Value, actual: Value| {
            let ok = predicted == actual;
            out.push(Check { quantity, predicted, actual, ok });
        };
        push("rank".into(), json!(p.rank), json!(u.rank()));
        if let Some(s) = p.size {
            push("size".into(), json!(s), json!(report.size));
        }
        if let Some(dist) = &p.distribution {
            push("distribution".into(), json!(dist), json!(report.distribution));
        }
        for &(i, v) in &p.n_i {
            push(format!("N_{i}"), json!(v), json!(report.n_i(i)));
        }
        if let Some(sp) = &p.spectrum {
            push("spectrum".into(), json!(sp), json!(report.spectrum));
        }
        for (coords, w) in &p.point_weights {
            let v: Vec<Fe> = coords.iter().map(|&i| t.element(i)).collect();
            let point = ProjPoint::new(t, &v)?;
            push(format!("weight{coords:?}"), json!(w), json!(linset::weight(u, &point)?));
        }
        if let Some(dm) = p.d_minimum {
            let amb = u.ambient();
            let value = bounds::d_minimum_value(amb.q(), u.rank(), amb.d().min(u.rank()));
            push("d_minimum".into(), json!(dm), json!(report.size as u128 == value));
        }
        Ok(out)
    }

    /// Enumerates and checks; any mismatch is an error.
    pub fn verify(&self) -> Result<Verified> {
        let report = linset::report(&self.subspace)?;
        let checks = self.checks(&report)?;
        if let Some(bad) = checks.iter().find(|c| !c.ok) {
            return Err(Error::PredictionMismatch(format!(
                "{}: {} predicted {}, enumerated {}",
                self.name, bad.quantity, bad.predicted, bad.actual
            )));
        }
        Ok(Verified { report, checks })
    }
}

fn point_indices(t: &FieldTower, v: &[Fe]) -> Result<Vec<u64>> {
    Ok(ProjPoint::new(t, v)?.coords().iter().map(|&a| t.index(a)).collect())
}

/// `Σ c_i λ^i` for a polynomial over the base field.
pub fn eval_at(t: &FieldTower, field: &SmallField, f: &Poly<u32>, lambda: Fe) -> Fe {
    f.coeffs().iter().rev().fold(t.zero(), |acc, &c| t.add(t.mul(acc, lambda), field.to_fe(c)))
}

/// Least-index primitive element of F_{q^t}, `q = p^e`; it has degree
/// exactly `t` over F_q.
pub fn default_lambda(t: &FieldTower, base_degree: usize, deg: usize) -> Result<Fe> {
    t.primitive_element(base_degree * deg)
}

#[derive(Clone, Debug)]
pub struct JVParams {
    pub amb: Ambient,
    pub lambda: Fe,
    pub t: usize,
    pub ks: Vec<usize>,
}

impl JVParams {
    /// Checks `k_0 ≥ … ≥ k_d ≥ 1`, `k_0 + k_1 ≤ t + 1` and that `λ` has
    /// degree exactly `t > 1` over F_q.
    pub fn new(
        tower: std::sync::Arc<FieldTower>,
        base_degree: usize,
        lambda: Fe,
        t: usize,
        ks: &[usize],
    ) -> Result<JVParams> {
        if ks.len() < 2 {
            return Err(invalid("JV needs at least two coordinates"));
        }
        if ks.windows(2).any(|w| w[0] < w[1]) || ks.contains(&0) {
            return Err(invalid(format!("JV parameters {ks:?} must be nonincreasing and positive")));
        }
        if t < 2 || ks[0] + ks[1] > t + 1 {
            return Err(invalid(format!("JV needs t > 1 and k_0 + k_1 <= t + 1, got t = {t}, ks = {ks:?}")));
        }
        let deg = tower.degree_over(lambda, base_degree)?;
        if deg != t {
            return Err(invalid(format!("lambda has degree {deg} over F_q, not {t}")));
        }
        let amb = Ambient::new(tower, base_degree, ks.len() - 1)?;
        Ok(JVParams { amb, lambda, t, ks: ks.to_vec() })
    }

    /// With the default `λ` of degree `t`.
    pub fn with_default_lambda(
        tower: std::sync::Arc<FieldTower>,
        base_degree: usize,
        t: usize,
        ks: &[usize],
    ) -> Result<JVParams> {
        let lambda = default_lambda(&tower, base_degree, t)?;
        Self::new(tower, base_degree, lambda, t, ks)
    }

    pub fn rank(&self) -> usize {
        self.ks.iter().sum()
    }

    pub fn d(&self) -> usize {
        self.ks.len() - 1
    }

    fn ring(&self) -> PolyRing<&SmallField> {
        PolyRing::new(self.amb.field())
    }
}

/// `⟨1, λ, …, λ^{k_0−1}⟩ × … × ⟨1, λ, …, λ^{k_d−1}⟩`, of `d`-minimum size.
pub fn jv_build(p: &JVParams) -> Result<Built> {
    let amb = &p.amb;
    let t = amb.tower();
    let q = amb.q();
    let mut gens = Vec::new();
    for (i, &k) in p.ks.iter().enumerate() {
        let mut power = t.one();
        for _ in 0..k {
            let mut v = vec![t.zero(); amb.dim()];
            v[i] = power;
            gens.push(v);
            power = t.mul(power, p.lambda);
        }
    }
    let subspace = FqSubspace::span(amb, &gens)?;
    let k = p.rank();
    let d = p.d();
    let (k0, k1) = (p.ks[0], p.ks[1]);
    let mut spectrum: Vec<usize> = (1..=k1).collect();
    let mut n_i = Vec::new();
    if k1 < k0 {
        spectrum.push(k0);
        let m = p.ks[1..].iter().filter(|&&x| x == k1).count();
        n_i.push((k1, (arith::pow(q, k0 - k1 + 1) * gaussian_count(q, m)) as u64));
        n_i.push((k0, 1));
    }
    let prediction = Prediction {
        rank: k,
        size: Some(head_sum(q, k, d) + 1),
        n_i,
        spectrum: Some(spectrum),
        point_weights: vec![(point_indices(t, &amb.unit(0))?, k0)],
        d_minimum: Some(true),
        ..Prediction::default()
    };
    Ok(Built {
        name: "jv",
        params: json!({ "q": q, "n": amb.n(), "t": p.t, "ks": p.ks, "lambda": t.index(p.lambda) }),
        subspace,
        prediction,
    })
}

/// `min_i (k_i − deg f_i)` over the nonzero `f_i`; `gcd(f_0, …, f_d)` must be 1.
pub fn jv_point_weight(p: &JVParams, fs: &[Poly<u32>]) -> Result<i64> {
    if fs.len() != p.ks.len() {
        return Err(invalid("need one polynomial per coordinate"));
    }
    let ring = p.ring();
    if ring.gcd_all(fs)? != ring.one() {
        return Err(invalid("coordinate polynomials are not coprime"));
    }
    Ok(fs
        .iter()
        .zip(&p.ks)
        .filter_map(|(f, &k)| f.degree().finite().map(|deg| k as i64 - deg as i64))
        .min()
        .expect("gcd 1 implies a nonzero polynomial"))
}

/// The point `⟨(f_0(λ), …, f_d(λ))⟩`.
pub fn jv_point(p: &JVParams, fs: &[Poly<u32>]) -> Result<ProjPoint> {
    let t = p.amb.tower();
    let v: Vec<Fe> = fs.iter().map(|f| eval_at(t, p.amb.field(), f, p.lambda)).collect();
    ProjPoint::new(t, &v)
}

/// The hyperplane `G(λ)X_0 = Σ_{i≥1} (G/g_i)(λ) X_i`, `G = g_1 ⋯ g_d`,
/// through `P_i = ⟨e_0 + g_i(λ)e_i⟩`, with the report of its section.
///
/// Needs `g_0, …, g_d` pairwise coprime with `deg g_i = k_i − 1` and
/// `Σ k_i ≤ t + d`; the section is then a canonical subgeometry, and anything
/// else is a theorem violation.
pub fn jv_proper_hyperplane(p: &JVParams, gs: &[Poly<u32>]) -> Result<(ProjSubspace, LinearSetReport)> {
    let amb = &p.amb;
    let t = amb.tower();
    let d = p.d();
    if gs.len() != d + 1 {
        return Err(invalid("need g_0, ..., g_d"));
    }
    let ring = p.ring();
    for (i, (g, &k)) in gs.iter().zip(&p.ks).enumerate() {
        if g.degree().finite() != Some(k - 1) {
            return Err(invalid(format!("deg g_{i} must be k_{i} - 1 = {}", k - 1)));
        }
    }
    for i in 0..gs.len() {
        for j in i + 1..gs.len() {
            if ring.gcd_monic(&gs[i], &gs[j])? != ring.one() {
                return Err(invalid(format!("g_{i} and g_{j} are not coprime")));
            }
        }
    }
    if p.rank() > p.t + d {
        return Err(invalid(format!("sum of k_i is {} > t + d = {}", p.rank(), p.t + d)));
    }
    let big_g = gs[1..].iter().fold(ring.one(), |acc, g| ring.mul(&acc, g));
    let g_at = eval_at(t, amb.field(), &big_g, p.lambda);
    if g_at.is_zero() {
        return Err(internal("G(lambda) vanishes although deg G < t"));
    }
    let mut form = vec![g_at];
    for g in &gs[1..] {
        let cofactor = ring.exact_div(&big_g, g)?;
        form.push(t.neg(eval_at(t, amb.field(), &cofactor, p.lambda)));
    }
    let pi = ProjSubspace::hyperplane(t, &form)?;
    for (i, g) in gs.iter().enumerate().skip(1) {
        let mut v = amb.unit(0);
        v[i] = eval_at(t, amb.field(), g, p.lambda);
        if !pi.contains_vec(t, &v) {
            return Err(internal(format!("P_{i} is not on the hyperplane")));
        }
    }
    let u = jv_build(p)?.subspace;
    if !projgeo::is_canonical_subgeometry(&u, &pi)? {
        return Err(Error::TheoremViolation("the JV hyperplane does not meet L_U canonically".into()));
    }
    let sec = projgeo::section(&u, &pi)?.ok_or_else(|| internal("empty canonical section"))?;
    Ok((pi, linset::report(&sec)?))
}

/// Pairwise coprime `g_i` with `deg g_i = k_i − 1`, if the search finds them.
pub fn jv_coprime_polys(p: &JVParams, budget: u64) -> Result<Vec<Poly<u32>>> {
    Ok(p.ring().coprime_system(&p.ks, budget)?.polys)
}

/// `Z = ⟨ξ_1, …, ξ_r⟩_{F_{q^t}}` with each `ξ_j` the least-index element
/// independent of `F_{q^t}` and the earlier ones; `1 ∉ Z` by construction.
pub fn default_z(tower: &FieldTower, base_degree: usize, t: usize, r: usize) -> Result<Vec<Fe>> {
    let abs_t = base_degree * t;
    let n_abs = tower.degree();
    if !n_abs.is_multiple_of(abs_t) || r == 0 || r >= n_abs / abs_t {
        return Err(invalid(format!("no F_(q^{t})-subspace of dimension {r} avoiding 1 in a degree {n_abs} field")));
    }
    let ft = tower.subfield_basis(abs_t)?;
    let mut spanned: Vec<Fe> = ft.clone();
    let mut z = Vec::new();
    for idx in 1..tower.order() {
        if z.len() == r {
            break;
        }
        let xi = tower.element(idx);
        let mut trial = spanned.clone();
        trial.extend(ft.iter().map(|&b| tower.mul(b, xi)));
        if tower.span_dim(&trial, base_degree)? == spanned.len() + t {
            spanned = trial;
            z.push(xi);
        }
    }
    Ok(z)
}

/// `C(Z, U') = {(z + u_0, u_1, …, u_d)}` for `U' ⊆ F_{q^t}^{d+1}` and `Z` an
/// F_{q^t}-subspace of F_{q^n} (given by an F_{q^t}-basis) with `1 ∉ Z`.
pub fn caserta_build(u_prime: &FqSubspace, t: usize, z_basis: &[Fe]) -> Result<Built> {
    let amb = u_prime.ambient();
    let tower = amb.tower();
    let e = amb.base_degree();
    let (q, n) = (amb.q(), amb.n());
    if t < 2 || n % t != 0 || n / t < 2 {
        return Err(invalid(format!("need n = s t with s, t > 1; got n = {n}, t = {t}")));
    }
    if u_prime.basis().iter().flatten().any(|&a| !tower.in_subfield(a, e * t)) {
        return Err(invalid("U' is not inside F_(q^t)^(d+1)"));
    }
    let ft = tower.subfield_basis(e * t)?;
    let z_q: Vec<Fe> = z_basis.iter().flat_map(|&z| ft.iter().map(move |&b| tower.mul(b, z))).collect();
    let r = z_basis.len();
    if r == 0 || tower.span_dim(&z_q, e)? != r * t {
        return Err(invalid("Z basis is empty or not F_(q^t)-independent"));
    }
    let mut with_one = z_q.clone();
    with_one.push(tower.one());
    if tower.span_dim(&with_one, e)? != r * t + 1 {
        return Err(invalid("1 lies in Z"));
    }
    let mut gens: Vec<Vec<Fe>> = z_q
        .iter()
        .map(|&z| {
            let mut v = vec![tower.zero(); amb.dim()];
            v[0] = z;
            v
        })
        .collect();
    gens.extend(u_prime.basis().iter().cloned());
    let subspace = FqSubspace::span(amb, &gens)?;

    let rep = linset::report(u_prime)?;
    let e0 = ProjPoint::new(tower, &amb.unit(0))?;
    let w_prime = rep.weight_of(&e0);
    let rt = r * t;
    let lift = arith::pow(q, rt);
    let off_e0 = rep.size as u128 - (w_prime > 0) as u128;
    let w = rt + w_prime;
    let distribution = (1..=n)
        .map(|i| {
            let base = rep.n_i(i) as u128 - (i == w_prime) as u128;
            (lift * base + (i == w) as u128) as u64
        })
        .collect();
    let prediction = Prediction {
        rank: rt + u_prime.rank(),
        size: Some(lift * off_e0 + 1),
        distribution: Some(distribution),
        point_weights: vec![(point_indices(tower, &amb.unit(0))?, w)],
        ..Prediction::default()
    };
    Ok(Built {
        name: "caserta",
        params: json!({
            "q": q, "n": n, "t": t, "s": n / t, "r": r,
            "z": z_basis.iter().map(|&a| tower.index(a)).collect::<Vec<_>>(),
            "u_prime_rank": u_prime.rank(),
        }),
        subspace,
        prediction,
    })
}

/// Weight spectrum of `C(Z, φ(U'))` for a JV base `U'` with parameters `ks`,
/// `w_e0` the weight of `E_0` in `φ(U')`.
pub fn caserta_jv_spectrum(ks: &[usize], rt: usize, w_e0: usize) -> Vec<usize> {
    let (k0, k1) = (ks[0], ks[1]);
    let mut s: Vec<usize> = (1..=k1).collect();
    if w_e0 < k0 && k1 < k0 {
        s.push(k0);
    }
    s.push(rt + w_e0);
    s
}

/// The first `k` vectors `θ_j e_i` of the standard F_q-basis of F_{q^n}^{dim}.
pub fn standard_subspace(amb: &Ambient, k: usize) -> Result<FqSubspace> {
    let gens: Vec<Vec<Fe>> = (0..amb.dim())
        .flat_map(|i| amb.theta().iter().map(move |&th| (i, th)))
        .take(k)
        .map(|(i, th)| {
            let mut v = vec![amb.tower().zero(); amb.dim()];
            v[i] = th;
            v
        })
        .collect();
    if gens.len() != k {
        return Err(invalid(format!("rank {k} exceeds the ambient F_q-dimension")));
    }
    FqSubspace::span(amb, &gens)
}

/// `U = U_1 × F_q^r` in F_{q^n}^{d+1}, `U_1 ⊆ F_{q^n}^{d−r+1}` of dimension
/// `(d−r)n + 2 ≤ k_1 ≤ (d−r+1)n`. Meets the rank bound with equality.
pub fn prime_build(u1: &FqSubspace, d: usize, r: usize) -> Result<Built> {
    let a1 = u1.ambient();
    let (q, n) = (a1.q(), a1.n());
    if r > d || a1.d() != d - r {
        return Err(invalid(format!("U_1 must live in dimension d - r + 1 = {}", d as isize - r as isize + 1)));
    }
    let k1 = u1.rank();
    if k1 < (d - r) * n + 2 || k1 > (d - r + 1) * n {
        return Err(invalid(format!("k_1 = {k1} outside the window {}..={}", (d - r) * n + 2, (d - r + 1) * n)));
    }
    let amb = a1.with_d(d);
    let t = amb.tower();
    let mut gens: Vec<Vec<Fe>> = u1
        .basis()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.resize(d + 1, t.zero());
            w
        })
        .collect();
    gens.extend((d - r + 1..=d).map(|i| amb.unit(i)));
    let subspace = FqSubspace::span(&amb, &gens)?;
    let k = k1 + r;
    let formula_r = bounds::rank_bound_r(n, d, k)?;
    if formula_r != r {
        return Err(Error::PredictionMismatch(format!("r-formula gives {formula_r}, construction has r = {r}")));
    }
    let qn = arith::pow(q, n) as u64;
    let prediction =
        Prediction { rank: k, size: Some(head_sum(q, k, r) + gaussian_count(qn, d - r + 1)), ..Prediction::default() };
    Ok(Built { name: "prime", params: json!({ "q": q, "n": n, "d": d, "r": r, "k1": k1 }), subspace, prediction })
}

/// `U_1 × U_2` with `U_1` the F_{q^t}-span of `u1_basis` in F_{q^n}^{d_1+1} and
/// `U_2 ⊆ F_{q^t}^{d_2+1}`. Predicts `|L_{U_1}| + q^{k_1 t}|L_{U_2}|` and
/// additive `N_i` (the first from enumerating the factors).
pub fn product_build(u1_basis: &[Vec<Fe>], t: usize, u2: &FqSubspace) -> Result<Built> {
    let a2 = u2.ambient();
    let tower = a2.tower();
    let e = a2.base_degree();
    let (q, n) = (a2.q(), a2.n());
    if t < 2 || n % t != 0 || n / t < 2 {
        return Err(invalid(format!("need n = s t with s, t > 1; got n = {n}, t = {t}")));
    }
    if u2.basis().iter().flatten().any(|&a| !tower.in_subfield(a, e * t)) {
        return Err(invalid("U_2 is not inside F_(q^t)^(d_2+1)"));
    }
    let d1 = u1_basis.first().map(|v| v.len()).ok_or_else(|| invalid("U_1 needs a basis"))? - 1;
    let a1 = a2.with_d(d1);
    let ft = tower.subfield_basis(e * t)?;
    let u1_q: Vec<Vec<Fe>> =
        u1_basis.iter().flat_map(|v| ft.iter().map(move |&b| v.iter().map(|&x| tower.mul(b, x)).collect())).collect();
    let u1 = FqSubspace::span(&a1, &u1_q)?;
    let k1 = u1_basis.len();
    if u1.rank() != k1 * t {
        return Err(invalid("U_1 basis is not F_(q^t)-independent"));
    }
    let d2 = a2.d();
    let d = d1 + d2 + 1;
    let amb = a2.with_d(d);
    let mut gens: Vec<Vec<Fe>> = u1_q
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.resize(d + 1, tower.zero());
            w
        })
        .collect();
    gens.extend(u2.basis().iter().map(|v| {
        let mut w = vec![tower.zero(); d1 + 1];
        w.extend_from_slice(v);
        w
    }));
    let subspace = FqSubspace::span(&amb, &gens)?;
    let r1 = linset::report(&u1)?;
    let r2 = linset::report(u2)?;
    let lift = arith::pow(q, k1 * t);
    let distribution = (1..=n).map(|i| (r1.n_i(i) as u128 + lift * r2.n_i(i) as u128) as u64).collect();
    let prediction = Prediction {
        rank: k1 * t + u2.rank(),
        size: Some(r1.size as u128 + lift * r2.size as u128),
        distribution: Some(distribution),
        ..Prediction::default()
    };
    Ok(Built {
        name: "product",
        params: json!({ "q": q, "n": n, "t": t, "d1": d1, "d2": d2, "k1": k1, "k2": u2.rank() }),
        subspace,
        prediction,
    })
}

/// `{(x, x^q, a) : x ∈ F_{q^n}, a ∈ F_q}` in PG(2, q^n): every point has
/// weight one, so the size is `(q^{n+1} − 1)/(q − 1)`.
pub fn frobenius_graph_build(amb: &Ambient) -> Result<Built> {
    if amb.d() != 2 {
        return Err(invalid("the Frobenius graph lives in PG(2, q^n)"));
    }
    let t = amb.tower();
    let e = amb.base_degree();
    let (q, n) = (amb.q(), amb.n());
    let mut gens: Vec<Vec<Fe>> = amb.theta().iter().map(|&x| vec![x, t.frobenius(x, e), t.zero()]).collect();
    gens.push(amb.unit(2));
    let subspace = FqSubspace::span(amb, &gens)?;
    let mut distribution = vec![0u64; n];
    distribution[0] = gaussian_count(q, n + 1) as u64;
    let prediction = Prediction {
        rank: n + 1,
        size: Some(gaussian_count(q, n + 1)),
        distribution: Some(distribution),
        spectrum: Some(vec![1]),
        ..Prediction::default()
    };
    Ok(Built { name: "frobenius_graph", params: json!({ "q": q, "n": n }), subspace, prediction })
}

/// `I_P` at a point of the Frobenius graph: `q^{n−1} + 1` on `X_2 = 0`,
/// `(q^n − 1)/(q − 1)` off it.
pub fn frobenius_graph_i_p(q: u64, n: usize, on_line: bool) -> u128 {
    if on_line {
        arith::pow(q, n - 1) + 1
    } else {
        gaussian_count(q, n)
    }
}

/// `M U` for invertible `M`; rank and weight distribution are preserved,
/// which is checked.
pub fn apply_gl(u: &FqSubspace, m: &[Vec<Fe>]) -> Result<FqSubspace> {
    let t = u.tower();
    if linalg::inverse(&**t, m).is_none() {
        return Err(invalid("matrix is singular"));
    }
    let image = u.apply_matrix(m)?;
    let before = linset::report(u)?;
    let after = linset::report(&image)?;
    if image.rank() != u.rank() || before.distribution != after.distribution {
        return Err(Error::TheoremViolation("a collineation changed the weight distribution".into()));
    }
    Ok(image)
}

/// Permutation matrix swapping coordinates `0` and `i`.
pub fn swap_matrix(t: &FieldTower, dim: usize, i: usize) -> Vec<Vec<Fe>> {
    (0..dim)
        .map(|r| {
            let src = if r == 0 {
                i
            } else if r == i {
                0
            } else {
                r
            };
            (0..dim).map(|c| if c == src { t.one() } else { t.zero() }).collect()
        })
        .collect()
}

/// Invariants that survive ΓL-equivalence of subspaces and their sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub rank: usize,
    pub size: u64,
    pub distribution: Vec<u64>,
    pub field_of_linearity: usize,
}

pub fn invariants(u: &FqSubspace) -> Result<Invariants> {
    let rep = linset::report(u)?;
    Ok(Invariants {
        rank: u.rank(),
        size: rep.size,
        distribution: rep.distribution,
        field_of_linearity: linset::max_field_of_linearity(u)?,
    })
}

/// All admissible JV parameter vectors `(t', k'_0, …, k'_d)` in the ambient
/// of `target` whose linear set has weight distribution `target`, found by
/// building and enumerating each candidate of rank `Σ target-weights`.
pub fn jv_distribution_matches(amb: &Ambient, rank: usize, target: &[u64]) -> Result<Vec<(usize, Vec<usize>)>> {
    let d = amb.d();
    let mut found = Vec::new();
    for t in arith::divisors(amb.n()).into_iter().filter(|&t| t > 1) {
        for ks in nonincreasing(rank, d + 1, t) {
            if ks[0] + ks[1] > t + 1 {
                continue;
            }
            let p = JVParams::with_default_lambda(amb.tower().clone(), amb.base_degree(), t, &ks)?;
            let rep = linset::report(&jv_build(&p)?.subspace)?;
            if rep.distribution == target {
                found.push((t, ks));
            }
        }
    }
    Ok(found)
}

/// Nonincreasing sequences of `len` positive parts at most `max` summing to `total`.
pub fn nonincreasing(total: usize, len: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, len: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if len == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for part in (1..=max.min(total)).rev() {
            if part * len < total {
                break;
            }
            cur.push(part);
            go(total - part, len - 1, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, len, max, &mut Vec::new(), &mut out);
    out
}
