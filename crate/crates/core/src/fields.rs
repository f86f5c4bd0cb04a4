//! Finite field towers F_p ⊆ F_{p^{D_1}} ⊆ … ⊆ F_{p^N} with a single
//! representation for every level.
//!
//! Every element is an [`Fe`]: a polynomial in `x` of degree below `N` over
//! F_p, reduced modulo the least monic irreducible of degree `N`, with its
//! coefficients bit-packed into a `u64`. Subfield elements are top-level
//! elements fixed by the matching power of Frobenius, so there are no
//! embedding maps to keep consistent.
//!
//! Each level additionally carries its own defining polynomial over the level
//! below, a root of it (the level generator) and an F_p basis built from the
//! generators. These fix the element indices used by [`Subfield`] and
//! [`SmallField`] and the relative F_q basis used to expand vectors.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{internal, invalid, Error, Result};
use crate::linalg;
use crate::polynomials::{Arith, Degree, Poly, PolyRing, PrimeField};

/// Fields with more elements than this are not enumerated unless the cap is
/// lifted explicitly.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// Element of a [`FieldTower`]; F_p digits of the standard coordinates packed
/// low degree first. Only meaningful together with its tower.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn packed(self) -> u64 {
        self.0
    }
}

/// Coordinates with respect to an F_p-independent family of elements.
#[derive(Clone, Debug, Default)]
struct FpFrame {
    pivots: Vec<usize>,
    rows: Vec<u64>,
    combos: Vec<u64>,
}

impl FpFrame {
    /// Appends `v` as the next basis vector unless it is dependent.
    fn try_insert(&mut self, t: &FieldTower, v: u64) -> bool {
        let idx = self.rows.len();
        let mut r = v;
        let mut c = t.unit_digit(idx);
        for k in 0..self.rows.len() {
            let coef = t.digit(r, self.pivots[k]);
            if coef != 0 {
                r = t.psub(r, t.pscale(self.rows[k], coef));
                c = t.psub(c, t.pscale(self.combos[k], coef));
            }
        }
        let Some(pos) = (0..t.n).find(|&i| t.digit(r, i) != 0) else {
            return false;
        };
        let inv = t.prime.inv(t.digit(r, pos));
        r = t.pscale(r, inv);
        c = t.pscale(c, inv);
        for k in 0..self.rows.len() {
            let coef = t.digit(self.rows[k], pos);
            if coef != 0 {
                self.rows[k] = t.psub(self.rows[k], t.pscale(r, coef));
                self.combos[k] = t.psub(self.combos[k], t.pscale(c, coef));
            }
        }
        self.pivots.push(pos);
        self.rows.push(r);
        self.combos.push(c);
        true
    }

    /// Packed coefficient digits, `None` outside the span.
    fn coords(&self, t: &FieldTower, v: u64) -> Option<u64> {
        let mut r = v;
        let mut c = 0;
        for k in 0..self.rows.len() {
            let coef = t.digit(r, self.pivots[k]);
            if coef != 0 {
                r = t.psub(r, t.pscale(self.rows[k], coef));
                c = t.padd(c, t.pscale(self.combos[k], coef));
            }
        }
        (r == 0).then_some(c)
    }
}

/// One step of the tower.
#[derive(Clone, Debug)]
pub struct Level {
    degree: usize,
    poly: Vec<u64>,
    generator: Fe,
    basis: Vec<Fe>,
    frame: FpFrame,
}

impl Level {
    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Defining polynomial over the previous level as element indices, low
    /// degree first; empty for the prime field.
    pub fn defining_polynomial(&self) -> &[u64] {
        &self.poly
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    /// F_p basis; entry `a + D' i` is `prev_basis[a] * generator^i` where
    /// `D'` is the previous degree.
    pub fn basis(&self) -> &[Fe] {
        &self.basis
    }
}

#[derive(Clone, Debug)]
pub struct FieldTower {
    prime: PrimeField,
    p: u32,
    n: usize,
    bits: u32,
    mask: u64,
    modulus: Vec<u32>,
    modulus_bits: u128,
    levels: Vec<Level>,
    cap: Option<u64>,
}

/// Serialized tower: enough to rebuild and verify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerRecord {
    pub p: u32,
    pub degrees: Vec<usize>,
    /// One per level above the prime field, over the level below, as element
    /// indices low degree first.
    pub defining_polynomials: Vec<Vec<u64>>,
    /// The flat modulus over F_p used for arithmetic.
    pub modulus: Vec<u32>,
}

impl FieldTower {
    pub fn new(p: u32, degrees: &[usize]) -> Result<Arc<FieldTower>> {
        Self::with_cap(p, degrees, Some(DEFAULT_CAP))
    }

    /// `cap = None` lifts the enumeration cap. A degree chain not starting at
    /// 1 gets the prime field prepended.
    pub fn with_cap(p: u32, degrees: &[usize], cap: Option<u64>) -> Result<Arc<FieldTower>> {
        let prime = PrimeField::new(p)?;
        let mut chain = degrees.to_vec();
        if chain.first() != Some(&1) {
            chain.insert(0, 1);
        }
        for w in chain.windows(2) {
            if w[1] <= w[0] || w[1] % w[0] != 0 {
                return Err(invalid(format!("{chain:?} is not a strictly ascending divisor chain")));
            }
        }
        let n = *chain.last().expect("chain is nonempty");
        let bits = 32 - (p - 1).leading_zeros();
        let order = arith::checked_pow(p as u64, n).unwrap_or(u128::MAX);
        if bits as usize * n > 64 || order >= 1u128 << 63 {
            return Err(invalid(format!("F_{p}^{n} is too large to represent")));
        }
        if let Some(c) = cap {
            if order > c as u128 {
                return Err(Error::CapExceeded { needed: order, cap: c });
            }
        }
        let ring = PolyRing::new(prime);
        let modulus_poly = if n == 1 { ring.x() } else { ring.least_irreducible(n)? };
        let modulus: Vec<u32> = modulus_poly.coeffs().to_vec();
        let modulus_bits = modulus.iter().enumerate().fold(0u128, |acc, (i, &c)| acc | ((c as u128) << i));
        let mut tower =
            FieldTower { prime, p, n, bits, mask: (1u64 << bits) - 1, modulus, modulus_bits, levels: Vec::new(), cap };
        let mut frame = FpFrame::default();
        frame.try_insert(&tower, 1);
        tower.levels.push(Level { degree: 1, poly: Vec::new(), generator: Fe(1), basis: vec![Fe(1)], frame });
        for j in 1..chain.len() {
            let level = tower.build_level(j, chain[j - 1], chain[j], j + 1 == chain.len())?;
            tower.levels.push(level);
        }
        Ok(Arc::new(tower))
    }

    fn build_level(&self, j: usize, prev_deg: usize, deg: usize, top: bool) -> Result<Level> {
        let m = deg / prev_deg;
        let sub = Subfield { tower: self, level: j - 1 };
        let ring = PolyRing::new(sub);
        let poly = ring.least_irreducible(m)?;
        let total = arith::pow(self.p as u64, deg) as u64;
        let generator = if top {
            (0..total).map(|i| self.element(i)).find(|&a| ring.eval(&poly, a).is_zero())
        } else {
            let basis = self.trace_basis(deg)?;
            (0..total).map(|i| self.combine(&basis, i)).find(|&a| ring.eval(&poly, a).is_zero())
        }
        .ok_or_else(|| internal(format!("defining polynomial of level {j} has no root")))?;

        let prev = &self.levels[j - 1];
        let mut basis = Vec::with_capacity(deg);
        let mut g_pow = self.one();
        for _ in 0..m {
            for &b in &prev.basis {
                basis.push(self.mul(b, g_pow));
            }
            g_pow = self.mul(g_pow, generator);
        }
        let mut frame = FpFrame::default();
        for &b in &basis {
            if !frame.try_insert(self, b.0) {
                return Err(internal(format!("level {j} basis is dependent")));
            }
        }
        Ok(Level { degree: deg, poly: poly.coeffs().iter().map(|&c| sub.index(c)).collect(), generator, basis, frame })
    }

    // ---- packed digit helpers ----

    fn digit(&self, x: u64, i: usize) -> u32 {
        ((x >> (i as u32 * self.bits)) & self.mask) as u32
    }

    fn unit_digit(&self, i: usize) -> u64 {
        1u64 << (i as u32 * self.bits)
    }

    fn padd(&self, x: u64, y: u64) -> u64 {
        if self.p == 2 {
            return x ^ y;
        }
        let mut out = 0;
        for i in 0..self.n {
            let s = self.prime.add(self.digit(x, i), self.digit(y, i));
            out |= (s as u64) << (i as u32 * self.bits);
        }
        out
    }

    fn pneg(&self, x: u64) -> u64 {
        if self.p == 2 {
            return x;
        }
        let mut out = 0;
        for i in 0..self.n {
            out |= (self.prime.neg(self.digit(x, i)) as u64) << (i as u32 * self.bits);
        }
        out
    }

    fn psub(&self, x: u64, y: u64) -> u64 {
        self.padd(x, self.pneg(y))
    }

    fn pscale(&self, x: u64, c: u32) -> u64 {
        match c {
            0 => 0,
            1 => x,
            _ => {
                let mut out = 0;
                for i in 0..self.n {
                    out |= (self.prime.mul(self.digit(x, i), c) as u64) << (i as u32 * self.bits);
                }
                out
            }
        }
    }

    fn packed_to_index(&self, x: u64) -> u64 {
        if self.p == 2 {
            return x;
        }
        (0..self.n).rev().fold(0, |acc, i| acc * self.p as u64 + self.digit(x, i) as u64)
    }

    fn index_to_packed(&self, mut idx: u64) -> u64 {
        if self.p == 2 {
            return idx;
        }
        let mut out = 0;
        for i in 0..self.n {
            out |= (idx % self.p as u64) << (i as u32 * self.bits);
            idx /= self.p as u64;
        }
        out
    }

    /// F_p combination of `basis` with coefficients the base-p digits of `idx`.
    fn combine(&self, basis: &[Fe], mut idx: u64) -> Fe {
        let mut acc = 0;
        for b in basis {
            let c = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
            if c != 0 {
                acc = self.padd(acc, self.pscale(b.0, c));
            }
        }
        Fe(acc)
    }

    // ---- accessors ----

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Degree of the top field over F_p.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        arith::pow(self.p as u64, self.n) as u64
    }

    pub fn cap(&self) -> Option<u64> {
        self.cap
    }

    /// Errors when `count` exceeds the enumeration cap.
    pub fn check_cap(&self, count: u128) -> Result<()> {
        match self.cap {
            Some(c) if count > c as u128 => Err(Error::CapExceeded { needed: count, cap: c }),
            _ => Ok(()),
        }
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level_degrees(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.degree).collect()
    }

    /// Position of the level of degree `deg`, if there is one.
    pub fn level_of(&self, deg: usize) -> Option<usize> {
        self.levels.iter().position(|l| l.degree == deg)
    }

    pub fn require_level(&self, deg: usize) -> Result<usize> {
        self.level_of(deg).ok_or_else(|| invalid(format!("F_{}^{} is not a level of the tower", self.p, deg)))
    }

    fn require_divisor(&self, deg: usize) -> Result<()> {
        if deg == 0 || !self.n.is_multiple_of(deg) {
            return Err(invalid(format!("{deg} does not divide the top degree {}", self.n)));
        }
        Ok(())
    }

    /// Flat modulus over F_p, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    // ---- elements ----

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// The class of `x`.
    pub fn x(&self) -> Fe {
        if self.n == 1 {
            Fe(self.prime.neg(self.modulus[0]) as u64)
        } else {
            Fe(self.unit_digit(1))
        }
    }

    pub fn from_prime(&self, c: u32) -> Fe {
        Fe((c % self.p) as u64)
    }

    /// Standard-basis coordinates over F_p, low degree first.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        (0..self.n).map(|i| self.digit(a.0, i)).collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe> {
        if c.len() > self.n {
            return Err(invalid(format!("{} coefficients for a degree {} field", c.len(), self.n)));
        }
        let mut out = 0;
        for (i, &d) in c.iter().enumerate() {
            if d >= self.p {
                return Err(invalid(format!("coefficient {d} is not reduced mod {}", self.p)));
            }
            out |= (d as u64) << (i as u32 * self.bits);
        }
        Ok(Fe(out))
    }

    /// Element with standard coordinates given by the base-p digits of `idx`.
    pub fn element(&self, idx: u64) -> Fe {
        Fe(self.index_to_packed(idx))
    }

    pub fn index(&self, a: Fe) -> u64 {
        self.packed_to_index(a.0)
    }

    // ---- arithmetic ----

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.padd(a.0, b.0))
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.psub(a.0, b.0))
    }

    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.pneg(a.0))
    }

    pub fn scale_prime(&self, a: Fe, c: u32) -> Fe {
        Fe(self.pscale(a.0, c % self.p))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        if self.p == 2 {
            return Fe(self.reduce2(clmul(a.0, b.0)));
        }
        let n = self.n;
        let p = self.p as u64;
        let mut prod = [0u64; 128];
        for i in 0..n {
            let ai = self.digit(a.0, i) as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] += ai * self.digit(b.0, j) as u64;
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = prod[i] % p;
            if c == 0 {
                continue;
            }
            for j in 0..n {
                prod[i - n + j] += c * (p - self.modulus[j] as u64);
            }
        }
        let mut out = 0;
        for (i, &v) in prod.iter().take(n).enumerate() {
            out |= (v % p) << (i as u32 * self.bits);
        }
        Fe(out)
    }

    fn reduce2(&self, mut r: u128) -> u64 {
        let n = self.n;
        while r >> n != 0 {
            let top = 127 - r.leading_zeros() as usize;
            r ^= self.modulus_bits << (top - n);
        }
        r as u64
    }

    /// Inverse by extended Euclid against the modulus; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        if self.p == 2 {
            return Some(Fe(self.inv2(a.0)));
        }
        let ring = PolyRing::new(self.prime);
        let fa = ring.from_coeffs(self.coeffs(a));
        let fm = ring.from_coeffs(self.modulus.clone());
        let (g, s, _) = ring.ext_gcd(&fa, &fm).expect("nonzero operands");
        debug_assert_eq!(g, ring.one());
        Some(self.from_coeffs(s.coeffs()).expect("reduced inverse"))
    }

    // Invariant: s_i * a ≡ r_i modulo the modulus.
    fn inv2(&self, a: u64) -> u64 {
        let deg = |v: u128| 127 - v.leading_zeros() as usize;
        let (mut r0, mut s0) = (self.modulus_bits, 0u128);
        let (mut r1, mut s1) = (a as u128, 1u128);
        loop {
            if r1 == 0 {
                return self.reduce2(s0);
            }
            if r0 == 0 {
                return self.reduce2(s1);
            }
            let (d0, d1) = (deg(r0), deg(r1));
            if d0 >= d1 {
                r0 ^= r1 << (d0 - d1);
                s0 ^= s1 << (d0 - d1);
            } else {
                r1 ^= r0 << (d1 - d0);
                s1 ^= s0 << (d1 - d0);
            }
        }
    }

    pub fn pow(&self, a: Fe, mut e: u128) -> Fe {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^j)`.
    pub fn frobenius(&self, a: Fe, j: usize) -> Fe {
        (0..j).fold(a, |x, _| self.pow(x, self.p as u128))
    }

    pub fn in_subfield(&self, a: Fe, deg: usize) -> bool {
        self.frobenius(a, deg) == a
    }

    /// `Tr_{p^N / p^deg}(a) = Σ_{i < N/deg} a^(p^(deg i))`.
    pub fn trace(&self, a: Fe, deg: usize) -> Result<Fe> {
        self.trace_between(a, self.n, deg)
    }

    /// `Tr_{p^from / p^to}(a)` for `a` in F_{p^from}.
    pub fn trace_between(&self, a: Fe, from: usize, to: usize) -> Result<Fe> {
        self.require_divisor(from)?;
        if to == 0 || !from.is_multiple_of(to) {
            return Err(invalid(format!("{to} does not divide {from}")));
        }
        let mut acc = Fe(0);
        let mut x = a;
        for _ in 0..from / to {
            acc = self.add(acc, x);
            x = self.frobenius(x, to);
        }
        Ok(acc)
    }

    /// Horner evaluation of a polynomial with coefficients in the tower.
    pub fn eval(&self, poly: &[Fe], x: Fe) -> Fe {
        poly.iter().rev().fold(Fe(0), |acc, &c| self.add(self.mul(acc, x), c))
    }

    // ---- subfields ----

    /// F_p basis of F_{p^deg}: the level basis when `deg` is a level,
    /// otherwise the first independent traces of `1, x, x^2, …`.
    pub fn subfield_basis(&self, deg: usize) -> Result<Vec<Fe>> {
        self.require_divisor(deg)?;
        match self.level_of(deg) {
            Some(l) => Ok(self.levels[l].basis.clone()),
            None => self.trace_basis(deg),
        }
    }

    fn trace_basis(&self, deg: usize) -> Result<Vec<Fe>> {
        let mut frame = FpFrame::default();
        let mut out = Vec::with_capacity(deg);
        let mut xi = self.one();
        for _ in 0..self.n {
            let t = self.trace(xi, deg)?;
            if frame.try_insert(self, t.0) {
                out.push(t);
                if out.len() == deg {
                    return Ok(out);
                }
            }
            xi = self.mul(xi, self.x());
        }
        Err(internal(format!("trace images do not span F_{}^{deg}", self.p)))
    }

    /// Elements of F_{p^deg} in index order for its [`subfield_basis`](Self::subfield_basis).
    pub fn subfield_elements(&self, deg: usize) -> Result<impl Iterator<Item = Fe> + '_> {
        let basis = self.subfield_basis(deg)?;
        let count = arith::pow(self.p as u64, deg);
        self.check_cap(count)?;
        Ok((0..count as u64).map(move |i| self.combine(&basis, i)))
    }

    /// Least-index generator of the multiplicative group of F_{p^deg}.
    pub fn primitive_element(&self, deg: usize) -> Result<Fe> {
        let order = arith::pow(self.p as u64, deg) - 1;
        let factors = arith::prime_factors(order as u64);
        self.subfield_elements(deg)?
            .skip(1)
            .find(|&a| factors.iter().all(|&r| self.pow(a, order / r as u128) != self.one()))
            .ok_or_else(|| internal("multiplicative group has no generator"))
    }

    /// Degree of `a` over F_{p^base}: the number of distinct conjugates.
    pub fn degree_over(&self, a: Fe, base: usize) -> Result<usize> {
        Ok(self.conjugates(a, base)?.len())
    }

    fn conjugates(&self, a: Fe, base: usize) -> Result<Vec<Fe>> {
        self.require_divisor(base)?;
        let mut out = vec![a];
        let mut x = self.frobenius(a, base);
        while x != a {
            out.push(x);
            x = self.frobenius(x, base);
        }
        Ok(out)
    }

    /// Minimal polynomial of `a` over F_{p^base} (coefficients in the tower,
    /// low degree first) and its degree.
    pub fn minimal_polynomial(&self, a: Fe, base: usize) -> Result<(Poly<Fe>, usize)> {
        let ring = PolyRing::new(self);
        let conj = self.conjugates(a, base)?;
        let f = conj.iter().fold(ring.one(), |acc, &c| ring.mul(&acc, &ring.linear(self.neg(c))));
        let deg = conj.len();
        debug_assert!(f.coeffs().iter().all(|&c| self.in_subfield(c, base)));
        Ok((f, deg))
    }

    /// F_{p^base} basis of the top field: `basis[c]` is the top-level basis
    /// vector at position `c * base`. Coordinates of an element in chunks of
    /// `base` digits are its coordinates over this basis.
    pub fn relative_basis(&self, base: usize) -> Result<Vec<Fe>> {
        self.require_level(base)?;
        let top = &self.levels.last().expect("tower has levels").basis;
        Ok((0..self.n / base).map(|c| top[c * base]).collect())
    }

    /// Coordinates over the top-level basis, packed as F_p digits.
    pub(crate) fn top_coords(&self, a: Fe) -> u64 {
        self.levels.last().expect("tower has levels").frame.coords(self, a.0).expect("top level spans the field")
    }

    /// Base-p integer formed by digits `lo..lo+len` of packed coordinates.
    pub(crate) fn digit_chunk(&self, packed: u64, lo: usize, len: usize) -> u64 {
        (lo..lo + len).rev().fold(0, |acc, i| acc * self.p as u64 + self.digit(packed, i) as u64)
    }

    // ---- trace form and duality ----

    /// `Tr(ξ_i ξ_j^*) = δ_ij` over F_{p^base}, by inverting the Gram matrix:
    /// `ξ*_j = Σ_k (G^{-1})_{kj} ξ_k`.
    pub fn dual_basis(&self, basis: &[Fe], base: usize) -> Result<Vec<Fe>> {
        let form = TraceForm::new(self, base)?;
        if basis.len() != self.n / base {
            return Err(invalid(format!("{} elements cannot form a basis over F_{}^{base}", basis.len(), self.p)));
        }
        let gram = form.gram(basis);
        let inv = linalg::inverse(&self, &gram).ok_or_else(|| invalid("not a basis: Gram matrix is singular"))?;
        Ok((0..basis.len())
            .map(|j| basis.iter().enumerate().fold(Fe(0), |acc, (k, &xi)| self.add(acc, self.mul(inv[k][j], xi))))
            .collect())
    }

    /// Dual of the power basis `1, λ, …, λ^{m-1}` in closed form:
    /// `δ^{-1} γ_i` with `δ = f'(λ)`, `γ_i = Σ_{j=1}^{m-i} λ^{j-1} a_{i+j}`,
    /// where `f = Σ a_i X^i` is the minimal polynomial of λ.
    pub fn power_dual_basis(&self, lambda: Fe, base: usize) -> Result<Vec<Fe>> {
        let (f, m) = self.minimal_polynomial(lambda, base)?;
        if m != self.n / base {
            return Err(invalid(format!("element has degree {m}, not {}", self.n / base)));
        }
        let ring = PolyRing::new(self);
        let delta = ring.eval(&ring.derivative(&f), lambda);
        let delta_inv = self.inv(delta).ok_or_else(|| internal("f'(λ) vanished for a separable f"))?;
        let a = f.coeffs();
        Ok((0..m)
            .map(|i| {
                let mut gamma = Fe(0);
                let mut lp = self.one();
                for j in 1..=m - i {
                    gamma = self.add(gamma, self.mul(lp, a[i + j]));
                    lp = self.mul(lp, lambda);
                }
                self.mul(delta_inv, gamma)
            })
            .collect())
    }

    /// F_{p^base} basis of `S^⊥ = {a : Tr_{p^N/p^base}(ab) = 0 for all b ∈ S}`
    /// where `S` is the F_{p^t}-span of `s_basis`.
    pub fn orthogonal_complement(&self, s_basis: &[Fe], t: usize, base: usize) -> Result<Vec<Fe>> {
        self.require_divisor(t)?;
        if !t.is_multiple_of(base) {
            return Err(invalid(format!("{base} does not divide {t}")));
        }
        let theta = self.relative_basis(base)?;
        let scalars = self.subfield_basis(t)?;
        let mut rows = Vec::new();
        for &s in s_basis {
            for &beta in &scalars {
                let b = self.mul(beta, s);
                let row: Result<Vec<Fe>> = theta.iter().map(|&th| self.trace(self.mul(th, b), base)).collect();
                rows.push(row?);
            }
        }
        let ker = linalg::kernel(&self, theta.len(), &rows);
        Ok(ker
            .iter()
            .map(|c| c.iter().zip(&theta).fold(Fe(0), |acc, (&ci, &th)| self.add(acc, self.mul(ci, th))))
            .collect())
    }

    /// F_{p^base} dimension of the F_{p^base}-span of `elems`.
    pub fn span_dim(&self, elems: &[Fe], base: usize) -> Result<usize> {
        let theta = self.relative_basis(base)?;
        let field = SmallField::new(self, base)?;
        let rows: Vec<Vec<u32>> = elems.iter().map(|&a| field.expand(self, a)).collect();
        Ok(linalg::rank(&field, theta.len(), &rows))
    }

    // ---- serialization ----

    pub fn record(&self) -> TowerRecord {
        TowerRecord {
            p: self.p,
            degrees: self.level_degrees(),
            defining_polynomials: self.levels[1..].iter().map(|l| l.poly.clone()).collect(),
            modulus: self.modulus.clone(),
        }
    }

    /// Rebuilds the tower and checks it is the one recorded.
    pub fn from_record(rec: &TowerRecord, cap: Option<u64>) -> Result<Arc<FieldTower>> {
        let tower = Self::with_cap(rec.p, &rec.degrees, cap)?;
        if tower.record() != *rec {
            return Err(invalid("tower record does not match the canonical tower for its parameters"));
        }
        Ok(tower)
    }
}

fn clmul(a: u64, b: u64) -> u128 {
    let mut r = 0u128;
    let mut a = a as u128;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    r
}

impl Arith for FieldTower {
    type Elem = Fe;
    fn zero(&self) -> Fe {
        Fe(0)
    }
    fn one(&self) -> Fe {
        Fe(1)
    }
    fn add(&self, a: Fe, b: Fe) -> Fe {
        FieldTower::add(self, a, b)
    }
    fn neg(&self, a: Fe) -> Fe {
        FieldTower::neg(self, a)
    }
    fn sub(&self, a: Fe, b: Fe) -> Fe {
        FieldTower::sub(self, a, b)
    }
    fn mul(&self, a: Fe, b: Fe) -> Fe {
        FieldTower::mul(self, a, b)
    }
    fn inv(&self, a: Fe) -> Fe {
        FieldTower::inv(self, a).expect("inverse of zero")
    }
    fn order(&self) -> u64 {
        FieldTower::order(self)
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn element(&self, index: u64) -> Fe {
        FieldTower::element(self, index)
    }
    fn index(&self, a: Fe) -> u64 {
        FieldTower::index(self, a)
    }
}

/// A level of a tower as a field in its own right; indices are base-p
/// coordinates over the level basis.
#[derive(Clone, Copy, Debug)]
pub struct Subfield<'a> {
    tower: &'a FieldTower,
    level: usize,
}

impl<'a> Subfield<'a> {
    pub fn new(tower: &'a FieldTower, deg: usize) -> Result<Self> {
        Ok(Subfield { tower, level: tower.require_level(deg)? })
    }

    pub fn degree(&self) -> usize {
        self.tower.levels[self.level].degree
    }

    pub fn contains(&self, a: Fe) -> bool {
        self.tower.levels[self.level].frame.coords(self.tower, a.0).is_some()
    }
}

impl Arith for Subfield<'_> {
    type Elem = Fe;
    fn zero(&self) -> Fe {
        Fe(0)
    }
    fn one(&self) -> Fe {
        Fe(1)
    }
    fn add(&self, a: Fe, b: Fe) -> Fe {
        self.tower.add(a, b)
    }
    fn neg(&self, a: Fe) -> Fe {
        self.tower.neg(a)
    }
    fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.tower.sub(a, b)
    }
    fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.tower.mul(a, b)
    }
    fn inv(&self, a: Fe) -> Fe {
        self.tower.inv(a).expect("inverse of zero")
    }
    fn order(&self) -> u64 {
        arith::pow(self.tower.p as u64, self.degree()) as u64
    }
    fn characteristic(&self) -> u32 {
        self.tower.p
    }
    fn element(&self, index: u64) -> Fe {
        self.tower.combine(&self.tower.levels[self.level].basis, index)
    }
    /// Panics if `a` is outside the subfield.
    fn index(&self, a: Fe) -> u64 {
        let lv = &self.tower.levels[self.level];
        let c = lv.frame.coords(self.tower, a.0).expect("element outside the subfield");
        self.tower.digit_chunk(c, 0, lv.degree)
    }
}

/// Table-driven F_q for a level of degree `e` of a tower, elements as `u32`
/// indices matching [`Subfield`] indices.
#[derive(Clone, Debug)]
pub struct SmallField {
    p: u32,
    e: usize,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    elems: Vec<Fe>,
}

/// Largest F_q given log tables.
const SMALL_FIELD_MAX: u64 = 1 << 20;

impl SmallField {
    pub fn new(tower: &FieldTower, e: usize) -> Result<SmallField> {
        let sub = Subfield::new(tower, e)?;
        let q = sub.order();
        if q > SMALL_FIELD_MAX {
            return Err(Error::CapExceeded { needed: q as u128, cap: SMALL_FIELD_MAX });
        }
        let elems: Vec<Fe> = (0..q).map(|i| sub.element(i)).collect();
        let g = tower.primitive_element(e)?;
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut x = tower.one();
        for i in 0..q as usize - 1 {
            let idx = sub.index(x) as u32;
            exp[i] = idx;
            exp[i + q as usize - 1] = idx;
            log[idx as usize] = i as u32;
            x = tower.mul(x, g);
        }
        Ok(SmallField { p: tower.p, e, q: q as u32, exp, log, elems })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    /// The tower element with index `i`.
    pub fn to_fe(&self, i: u32) -> Fe {
        self.elems[i as usize]
    }

    pub fn elements(&self) -> &[Fe] {
        &self.elems
    }

    /// Coordinates of `a` over [`FieldTower::relative_basis`] for this level.
    pub fn expand(&self, tower: &FieldTower, a: Fe) -> Vec<u32> {
        let c = tower.top_coords(a);
        (0..tower.n / self.e).map(|k| tower.digit_chunk(c, k * self.e, self.e) as u32).collect()
    }

    fn digitwise(&self, a: u32, b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.e {
            out += op(a % self.p, b % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }
}

impl Arith for SmallField {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        self.digitwise(a, b, |x, y| (x + y) % p)
    }
    fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        self.digitwise(a, 0, |x, _| (p - x) % p)
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        self.digitwise(a, b, |x, y| (x + p - y) % p)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }
    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let l = self.log[a as usize];
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }
    fn order(&self) -> u64 {
        self.q as u64
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn element(&self, index: u64) -> u32 {
        index as u32
    }
    fn index(&self, a: u32) -> u64 {
        a as u64
    }
}

/// The symmetric bilinear form `(a, b) ↦ Tr_{p^N/p^t}(ab)`.
#[derive(Clone, Copy, Debug)]
pub struct TraceForm<'a> {
    tower: &'a FieldTower,
    target: usize,
}

impl<'a> TraceForm<'a> {
    pub fn new(tower: &'a FieldTower, target: usize) -> Result<Self> {
        tower.require_divisor(target)?;
        Ok(TraceForm { tower, target })
    }

    pub fn eval(&self, a: Fe, b: Fe) -> Fe {
        self.tower.trace(self.tower.mul(a, b), self.target).expect("target divides N")
    }

    pub fn gram(&self, basis: &[Fe]) -> Vec<Vec<Fe>> {
        basis.iter().map(|&a| basis.iter().map(|&b| self.eval(a, b)).collect()).collect()
    }

    pub fn is_nondegenerate_on(&self, basis: &[Fe]) -> bool {
        linalg::inverse(&self.tower, &self.gram(basis)).is_some()
    }
}

/// Whether `poly` (monic, coefficients in the tower) has degree `deg`.
pub fn has_degree(poly: &Poly<Fe>, deg: usize) -> bool {
    poly.degree() == Degree::Finite(deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_mul(t: &FieldTower, a: Fe, b: Fe) -> Fe {
        // Shift-and-add by powers of x, independent of the fast paths.
        let mut acc = t.zero();
        let mut xpow = a;
        for c in t.coeffs(b) {
            for _ in 0..c {
                acc = t.add(acc, xpow);
            }
            xpow = mul_by_x(t, xpow);
        }
        acc
    }

    fn mul_by_x(t: &FieldTower, a: Fe) -> Fe {
        let mut c = t.coeffs(a);
        let top = c.pop().unwrap_or(0);
        c.insert(0, 0);
        for (i, m) in t.modulus().iter().take(t.degree()).enumerate() {
            c[i] = (c[i] + (t.p() - m % t.p()) * top) % t.p();
        }
        t.from_coeffs(&c).unwrap()
    }

    #[test]
    fn f4_is_built_from_x2_x_1() {
        let t = FieldTower::new(2, &[1, 2]).unwrap();
        assert_eq!(t.modulus(), &[1, 1, 1]);
        assert_eq!(t.levels()[1].defining_polynomial(), &[1, 1, 1]);
        assert_eq!(t.levels()[1].generator(), t.x());
    }

    #[test]
    fn towers_reject_bad_input() {
        assert!(FieldTower::new(4, &[1, 2]).is_err());
        assert!(FieldTower::new(2, &[1, 3, 4]).is_err());
        assert!(FieldTower::new(2, &[1, 3, 3]).is_err());
        assert!(matches!(FieldTower::new(2, &[1, 21]), Err(Error::CapExceeded { .. })));
        assert!(FieldTower::with_cap(2, &[1, 21], None).is_ok());
    }

    #[test]
    fn level_polynomials_are_irreducible_and_vanish_at_generators() {
        for (p, degs) in [(2u32, vec![1, 3, 6]), (3, vec![1, 2, 4]), (2, vec![1, 2, 4, 8]), (5, vec![1, 2])] {
            let t = FieldTower::new(p, &degs).unwrap();
            for j in 1..t.levels().len() {
                let sub = Subfield { tower: &t, level: j - 1 };
                let ring = PolyRing::new(sub);
                let poly =
                    ring.from_coeffs(t.levels()[j].defining_polynomial().iter().map(|&i| sub.element(i)).collect());
                assert!(ring.is_irreducible_trial(&poly));
                assert!(ring.eval(&poly, t.levels()[j].generator()).is_zero());
            }
        }
    }

    #[test]
    fn subfield_test_accepts_exactly_the_subfield() {
        for (p, degs) in [(2u32, vec![1, 3, 6]), (3, vec![1, 2, 4]), (2, vec![1, 2, 4, 8])] {
            let t = FieldTower::new(p, &degs).unwrap();
            for &d in t.level_degrees().iter() {
                let count = (0..t.order()).filter(|&i| t.in_subfield(t.element(i), d)).count() as u64;
                assert_eq!(count, arith::pow(p as u64, d) as u64, "p={p} d={d}");
                // Level indices enumerate exactly those elements.
                let sub = Subfield::new(&t, d).unwrap();
                for i in 0..sub.order() {
                    let a = sub.element(i);
                    assert!(t.in_subfield(a, d));
                    assert_eq!(sub.index(a), i);
                }
            }
        }
    }

    #[test]
    fn embeddings_commute() {
        // A level-j element written over level j-1 via the level generator is
        // the same element seen from the top.
        let t = FieldTower::new(2, &[1, 3, 6]).unwrap();
        let mid = Subfield::new(&t, 3).unwrap();
        let top = Subfield::new(&t, 6).unwrap();
        for i in 0..mid.order() {
            let a = mid.element(i);
            assert_eq!(top.element(top.index(a)), a);
            let bottom = Subfield::new(&t, 1).unwrap();
            if bottom.contains(a) {
                assert_eq!(mid.element(bottom.index(a)), a);
            }
        }
    }

    #[test]
    fn exhaustive_field_axioms_small() {
        for (p, degs) in [(2u32, vec![1, 2, 4]), (3, vec![1, 2]), (2, vec![1, 3]), (5, vec![1, 2]), (3, vec![1, 5])] {
            let t = FieldTower::new(p, &degs).unwrap();
            let all: Vec<Fe> = (0..t.order()).map(|i| t.element(i)).collect();
            for &a in &all {
                if !a.is_zero() {
                    assert_eq!(t.mul(a, t.inv(a).unwrap()), t.one());
                }
                assert_eq!(t.add(a, t.neg(a)), t.zero());
            }
            for &a in all.iter().take(40) {
                for &b in &all {
                    assert_eq!(t.mul(a, b), naive_mul(&t, a, b));
                    assert_eq!(t.mul(a, b), t.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn trace_examples_f4() {
        let t = FieldTower::new(2, &[1, 2]).unwrap();
        let w = t.x();
        assert_eq!(t.trace(t.zero(), 1).unwrap(), t.zero());
        assert_eq!(t.trace(w, 1).unwrap(), t.add(w, t.mul(w, w)));
        assert_eq!(t.trace(w, 1).unwrap(), t.one());
        assert_eq!(t.trace(t.one(), 1).unwrap(), t.zero());
        assert!(t.trace(w, 3).is_err());
    }

    #[test]
    fn trace_is_transitive_and_surjective() {
        let t = FieldTower::new(2, &[1, 2, 4, 8]).unwrap();
        let mut hit = std::collections::HashSet::new();
        for i in 0..t.order() {
            let a = t.element(i);
            let direct = t.trace(a, 1).unwrap();
            let t4 = t.trace(a, 4).unwrap();
            let via4 = t.trace_between(t4, 4, 1).unwrap();
            let t2 = t.trace_between(t4, 4, 2).unwrap();
            let via2 = t.trace_between(t2, 2, 1).unwrap();
            assert_eq!(direct, via4);
            assert_eq!(direct, via2);
            assert!(t.in_subfield(t.trace(a, 2).unwrap(), 2));
            hit.insert(direct);
        }
        assert_eq!(hit.len(), 2);
    }

    #[test]
    fn minimal_polynomials() {
        let t = FieldTower::new(2, &[1, 2]).unwrap();
        let ring = PolyRing::new(t.as_ref());
        let (f1, d1) = t.minimal_polynomial(t.one(), 1).unwrap();
        assert_eq!((ring.to_text(&f1), d1), ("1,1".to_string(), 1));
        let (fw, dw) = t.minimal_polynomial(t.x(), 1).unwrap();
        assert_eq!((ring.to_text(&fw), dw), ("1,1,1".to_string(), 2));

        let t = FieldTower::new(2, &[1, 3, 6]).unwrap();
        let g = t.primitive_element(6).unwrap();
        assert!(!t.in_subfield(g, 3) && t.in_subfield(g, 6));
        assert_eq!(t.degree_over(g, 3).unwrap(), 2);
        let (f, d) = t.minimal_polynomial(g, 3).unwrap();
        assert_eq!(d, 2);
        assert!(t.eval(f.coeffs(), g).is_zero());
        assert!(f.coeffs().iter().all(|&c| t.in_subfield(c, 3)));
    }

    #[test]
    fn dual_basis_f4() {
        let t = FieldTower::new(2, &[1, 2]).unwrap();
        let w = t.x();
        let dual = t.dual_basis(&[t.one(), w], 1).unwrap();
        assert_eq!(dual, vec![t.add(t.one(), w), t.one()]);
    }

    #[test]
    fn power_dual_basis_f8() {
        let t = FieldTower::new(2, &[1, 3]).unwrap();
        assert_eq!(t.modulus(), &[1, 1, 0, 1]);
        let l = t.x();
        let l2 = t.mul(l, l);
        let delta_inv = t.inv(t.add(l2, t.one())).unwrap();
        let expected = vec![t.mul(delta_inv, t.add(t.one(), l2)), t.mul(delta_inv, l), delta_inv];
        assert_eq!(expected[0], t.one());
        let closed = t.power_dual_basis(l, 1).unwrap();
        assert_eq!(closed, expected);
        assert_eq!(t.dual_basis(&[t.one(), l, l2], 1).unwrap(), expected);
    }

    #[test]
    fn self_dual_basis_is_fixed() {
        // Normal basis {α, α^2, α^4} of F_8 with Tr(α) = 1 is self-dual.
        let t = FieldTower::new(2, &[1, 3]).unwrap();
        let found = (1..t.order()).map(|i| t.element(i)).find(|&a| {
            let b = [a, t.frobenius(a, 1), t.frobenius(a, 2)];
            let form = TraceForm::new(&t, 1).unwrap();
            form.gram(&b)
                == vec![
                    vec![t.one(), t.zero(), t.zero()],
                    vec![t.zero(), t.one(), t.zero()],
                    vec![t.zero(), t.zero(), t.one()],
                ]
        });
        let a = found.expect("F_8 has a self-dual normal basis");
        let b = vec![a, t.frobenius(a, 1), t.frobenius(a, 2)];
        assert_eq!(t.dual_basis(&b, 1).unwrap(), b);
    }

    #[test]
    fn orthogonal_complement_examples() {
        let t = FieldTower::new(2, &[1, 2]).unwrap();
        let all = t.orthogonal_complement(&[], 1, 1).unwrap();
        assert_eq!(all.len(), 2);
        let perp = t.orthogonal_complement(&[t.one()], 1, 1).unwrap();
        assert_eq!(perp, vec![t.one()]);
        let none = t.orthogonal_complement(&[t.one()], 2, 1).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn orthogonal_complement_is_an_involution_and_closed() {
        let t = FieldTower::new(2, &[1, 2, 4, 8]).unwrap();
        let s = vec![t.primitive_element(8).unwrap()];
        let perp = t.orthogonal_complement(&s, 2, 1).unwrap();
        assert_eq!(perp.len(), 8 - 2);
        // F_4-closed: multiplying by a generator of F_4 stays inside.
        let w = t.primitive_element(2).unwrap();
        let dim = t.span_dim(&perp, 1).unwrap();
        let mut grown = perp.clone();
        grown.extend(perp.iter().map(|&a| t.mul(a, w)));
        assert_eq!(t.span_dim(&grown, 1).unwrap(), dim);
        let back = t.orthogonal_complement(&perp, 1, 1).unwrap();
        let s_fq: Vec<Fe> = s.iter().flat_map(|&x| [x, t.mul(x, w)]).collect();
        let mut joined = back.clone();
        joined.extend(s_fq.iter().copied());
        assert_eq!(back.len(), 2);
        assert_eq!(t.span_dim(&joined, 1).unwrap(), 2);
    }

    #[test]
    fn record_round_trip() {
        let t = FieldTower::new(3, &[1, 2, 4]).unwrap();
        let rec = t.record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: TowerRecord = serde_json::from_str(&json).unwrap();
        let t2 = FieldTower::from_record(&back, Some(DEFAULT_CAP)).unwrap();
        assert_eq!(t2.record(), rec);
        let mut bad = rec.clone();
        bad.defining_polynomials[0][0] += 1;
        assert!(FieldTower::from_record(&bad, Some(DEFAULT_CAP)).is_err());
    }

    #[test]
    fn expand_matches_relative_basis() {
        let t = FieldTower::new(2, &[1, 2, 4]).unwrap();
        let f4 = SmallField::new(&t, 2).unwrap();
        let theta = t.relative_basis(2).unwrap();
        for i in 0..t.order() {
            let a = t.element(i);
            let c = f4.expand(&t, a);
            let back = c.iter().zip(&theta).fold(t.zero(), |acc, (&ci, &th)| t.add(acc, t.mul(f4.to_fe(ci), th)));
            assert_eq!(back, a);
        }
    }

    #[test]
    fn small_field_matches_tower() {
        let t = FieldTower::new(3, &[1, 2, 4]).unwrap();
        let f9 = SmallField::new(&t, 2).unwrap();
        for a in 0..9u32 {
            for b in 0..9u32 {
                assert_eq!(f9.to_fe(f9.add(a, b)), t.add(f9.to_fe(a), f9.to_fe(b)));
                assert_eq!(f9.to_fe(f9.mul(a, b)), t.mul(f9.to_fe(a), f9.to_fe(b)));
                assert_eq!(f9.to_fe(f9.sub(a, b)), t.sub(f9.to_fe(a), f9.to_fe(b)));
            }
        }
    }

    proptest! {
        #[test]
        fn field_axioms_sampled(a in 0u64..729, b in 0u64..729, c in 0u64..729) {
            let t = FieldTower::new(3, &[1, 2, 6]).unwrap();
            let (a, b, c) = (t.element(a), t.element(b), t.element(c));
            prop_assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
            prop_assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
            prop_assert_eq!(t.mul(a, b), naive_mul(&t, a, b));
        }

        #[test]
        fn trace_is_linear(a in 0u64..4096, b in 0u64..4096, c in 0u32..2) {
            let t = FieldTower::new(2, &[1, 2, 4, 12]).unwrap();
            let (a, b) = (t.element(a), t.element(b));
            let lhs = t.trace(t.add(a, t.scale_prime(b, c)), 2).unwrap();
            let rhs = t.add(t.trace(a, 2).unwrap(), t.scale_prime(t.trace(b, 2).unwrap(), c));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bidual_is_identity(seed in 0u64..1000) {
            let t = FieldTower::new(3, &[1, 4]).unwrap();
            let mut basis = Vec::new();
            let mut i = seed;
            while basis.len() < 4 {
                i = (i * 37 + 11) % t.order();
                let cand = t.element(i);
                let mut trial = basis.clone();
                trial.push(cand);
                if t.span_dim(&trial, 1).unwrap() == trial.len() {
                    basis = trial;
                }
            }
            let dual = t.dual_basis(&basis, 1).unwrap();
            prop_assert_eq!(t.dual_basis(&dual, 1).unwrap(), basis);
        }
    }
}
