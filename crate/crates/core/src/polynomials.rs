//! Dense univariate polynomials over small finite fields.
//!
//! Arithmetic is parameterised by an [`Arith`] context instead of living on
//! the element type, so the same code runs over F_p, over table-driven F_q and
//! over subfields of a [`FieldTower`](crate::fields::FieldTower).

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;
use std::ops::Add;

use crate::arith::{self, mobius};
use crate::error::{invalid, Error, Result};

/// Field operations for a finite field whose elements are plain values.
///
/// `element` and `index` are mutually inverse bijections with `0..order()`,
/// with index 0 the zero element and index 1 the identity.
pub trait Arith {
    type Elem: Copy + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: Self::Elem) -> Self::Elem;
    fn order(&self) -> u64;
    fn characteristic(&self) -> u32;
    fn element(&self, index: u64) -> Self::Elem;
    fn index(&self, a: Self::Elem) -> u64;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut e: u128) -> Self::Elem {
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
}

impl<A: Arith + ?Sized> Arith for &A {
    type Elem = A::Elem;
    fn zero(&self) -> A::Elem {
        (**self).zero()
    }
    fn one(&self) -> A::Elem {
        (**self).one()
    }
    fn add(&self, a: A::Elem, b: A::Elem) -> A::Elem {
        (**self).add(a, b)
    }
    fn neg(&self, a: A::Elem) -> A::Elem {
        (**self).neg(a)
    }
    fn mul(&self, a: A::Elem, b: A::Elem) -> A::Elem {
        (**self).mul(a, b)
    }
    fn inv(&self, a: A::Elem) -> A::Elem {
        (**self).inv(a)
    }
    fn order(&self) -> u64 {
        (**self).order()
    }
    fn characteristic(&self) -> u32 {
        (**self).characteristic()
    }
    fn element(&self, index: u64) -> A::Elem {
        (**self).element(index)
    }
    fn index(&self, a: A::Elem) -> u64 {
        (**self).index(a)
    }
    fn sub(&self, a: A::Elem, b: A::Elem) -> A::Elem {
        (**self).sub(a, b)
    }
}

/// The prime field F_p with elements `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !arith::is_prime(p as u64) {
            return Err(invalid(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl Arith for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p as u128 - 2)
    }
    fn order(&self) -> u64 {
        self.p as u64
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

/// Polynomial degree with the zero polynomial at minus infinity, so that
/// `deg(fg) = deg f + deg g` holds without exceptions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

/// Coefficients low degree first. The last stored coefficient is nonzero;
/// the zero polynomial stores nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

/// `(quotient, remainder)`.
pub type QuotRem<E> = (Poly<E>, Poly<E>);

/// `(g, s, t)` with `g = s a + t b`.
pub type GcdTriple<E> = (Poly<E>, Poly<E>, Poly<E>);

impl<E: Copy> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<E> {
        self.coeffs.last().copied()
    }

    /// Coefficient of `x^i`, `None` above the degree.
    pub fn coeff(&self, i: usize) -> Option<E> {
        self.coeffs.get(i).copied()
    }
}

/// How [`PolyRing::coprime_system`] found its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoprimeStrategy {
    LinearFactors,
    DistinctIrreducibles,
    Backtracking,
}

#[derive(Clone, Debug)]
pub struct CoprimeSystem<E> {
    pub polys: Vec<Poly<E>>,
    pub strategy: CoprimeStrategy,
}

/// Polynomial arithmetic over the field `A`.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing<A> {
    field: A,
}

/// Degrees up to this use trial division for irreducibility.
const TRIAL_DIVISION_MAX_DEGREE: usize = 16;
/// Trial division is skipped when it would test more divisors than this.
const TRIAL_DIVISION_MAX_CANDIDATES: u128 = 1 << 16;

impl<A: Arith> PolyRing<A> {
    pub fn new(field: A) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &A {
        &self.field
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<A::Elem>) -> Poly<A::Elem> {
        while coeffs.last().is_some_and(|&c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero(&self) -> Poly<A::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<A::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: A::Elem) -> Poly<A::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn x(&self) -> Poly<A::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn monomial(&self, c: A::Elem, k: usize) -> Poly<A::Elem> {
        let mut coeffs = vec![self.field.zero(); k + 1];
        coeffs[k] = c;
        self.from_coeffs(coeffs)
    }

    /// `x + c`.
    pub fn linear(&self, c: A::Elem) -> Poly<A::Elem> {
        self.from_coeffs(vec![c, self.field.one()])
    }

    pub fn add(&self, a: &Poly<A::Elem>, b: &Poly<A::Elem>) -> Poly<A::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).copied().unwrap_or(z);
                let y = b.coeffs.get(i).copied().unwrap_or(z);
                self.field.add(x, y)
            })
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn neg(&self, a: &Poly<A::Elem>) -> Poly<A::Elem> {
        Poly { coeffs: a.coeffs.iter().map(|&c| self.field.neg(c)).collect() }
    }

    pub fn sub(&self, a: &Poly<A::Elem>, b: &Poly<A::Elem>) -> Poly<A::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly<A::Elem>, c: A::Elem) -> Poly<A::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<A::Elem>, b: &Poly<A::Elem>) -> Poly<A::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    pub fn divrem(&self, a: &Poly<A::Elem>, b: &Poly<A::Elem>) -> Result<QuotRem<A::Elem>> {
        let lead = b.leading().ok_or_else(|| invalid("division by the zero polynomial"))?;
        let lead_inv = self.field.inv(lead);
        let db = b.coeffs.len() - 1;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((self.zero(), self.from_coeffs(rem)));
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = self.field.mul(rem[i], lead_inv);
            if self.field.is_zero(c) {
                continue;
            }
            quot[i - db] = c;
            for (j, &y) in b.coeffs.iter().enumerate() {
                let t = i - db + j;
                rem[t] = self.field.sub(rem[t], self.field.mul(c, y));
            }
        }
        rem.truncate(db);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly<A::Elem>, b: &Poly<A::Elem>) -> Result<Poly<A::Elem>> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Quotient when `b` divides `a` exactly.
    pub fn exact_div(&self, a: &Poly<A::Elem>, b: &Poly<A::Elem>) -> Result<Poly<A::Elem>> {
        let (q, r) = self.divrem(a, b)?;
        if !r.is_zero() {
            return Err(invalid("polynomial division is not exact"));
        }
        Ok(q)
    }

    pub fn monic(&self, a: &Poly<A::Elem>) -> Poly<A::Elem> {
        match a.leading() {
            None => self.zero(),
            Some(l) => self.scale(a, self.field.inv(l)),
        }
    }

    pub fn is_monic(&self, a: &Poly<A::Elem>) -> bool {
        a.leading() == Some(self.field.one())
    }

    pub fn gcd_monic(&self, a: &Poly<A::Elem>, b: &Poly<A::Elem>) -> Result<Poly<A::Elem>> {
        if a.is_zero() && b.is_zero() {
            return Err(invalid("gcd of two zero polynomials"));
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y)?;
            x = y;
            y = r;
        }
        Ok(self.monic(&x))
    }

    /// Monic gcd of a family; errors when every member is zero.
    pub fn gcd_all(&self, polys: &[Poly<A::Elem>]) -> Result<Poly<A::Elem>> {
        let mut acc = self.zero();
        for p in polys {
            if acc.is_zero() && p.is_zero() {
                continue;
            }
            acc = self.gcd_monic(&acc, p)?;
        }
        if acc.is_zero() {
            return Err(invalid("gcd of zero polynomials"));
        }
        Ok(acc)
    }

    /// `(g, s, t)` with `g = s a + t b` and `g` monic.
    pub fn ext_gcd(&self, a: &Poly<A::Elem>, b: &Poly<A::Elem>) -> Result<GcdTriple<A::Elem>> {
        if a.is_zero() && b.is_zero() {
            return Err(invalid("gcd of two zero polynomials"));
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1)?;
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let l = self.field.inv(r0.leading().expect("nonzero gcd"));
        Ok((self.scale(&r0, l), self.scale(&s0, l), self.scale(&t0, l)))
    }

    pub fn derivative(&self, a: &Poly<A::Elem>) -> Poly<A::Elem> {
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| {
                let mut acc = self.field.zero();
                for _ in 0..(i % self.field.characteristic() as usize) {
                    acc = self.field.add(acc, c);
                }
                acc
            })
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn eval(&self, a: &Poly<A::Elem>, x: A::Elem) -> A::Elem {
        a.coeffs.iter().rev().fold(self.field.zero(), |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    pub fn mul_mod(&self, a: &Poly<A::Elem>, b: &Poly<A::Elem>, m: &Poly<A::Elem>) -> Result<Poly<A::Elem>> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly<A::Elem>, mut e: u128, m: &Poly<A::Elem>) -> Result<Poly<A::Elem>> {
        let mut base = self.rem(a, m)?;
        let mut acc = self.rem(&self.one(), m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m)?;
            }
            base = self.mul_mod(&base, &base, m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// The monic polynomial of degree `deg` whose lower coefficients have
    /// field indices given by the base-`Q` digits of `index`, `a_0` least
    /// significant. Index order is the canonical search order everywhere.
    pub fn monic_by_index(&self, deg: usize, mut index: u128) -> Poly<A::Elem> {
        let q = self.field.order() as u128;
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push(self.field.element((index % q) as u64));
            index /= q;
        }
        coeffs.push(self.field.one());
        self.from_coeffs(coeffs)
    }

    pub fn monic_count(&self, deg: usize) -> Option<u128> {
        arith::checked_pow(self.field.order(), deg)
    }

    pub fn is_irreducible(&self, f: &Poly<A::Elem>) -> bool {
        let s = match f.degree() {
            Degree::NegInfinity | Degree::Finite(0) => return false,
            Degree::Finite(s) => s,
        };
        let candidates = arith::checked_pow(self.field.order(), s / 2).unwrap_or(u128::MAX);
        if s <= TRIAL_DIVISION_MAX_DEGREE && candidates <= TRIAL_DIVISION_MAX_CANDIDATES {
            self.is_irreducible_trial(f)
        } else {
            self.is_irreducible_rabin(f)
        }
    }

    /// Trial division by every monic polynomial of degree `1..=s/2`.
    pub fn is_irreducible_trial(&self, f: &Poly<A::Elem>) -> bool {
        let s = match f.degree() {
            Degree::Finite(s) if s >= 1 => s,
            _ => return false,
        };
        for deg in 1..=s / 2 {
            let count = self.monic_count(deg).expect("trial division range");
            for idx in 0..count {
                let g = self.monic_by_index(deg, idx);
                if self.rem(f, &g).expect("monic divisor").is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Rabin's test: `x^(Q^s) = x mod f` and `gcd(x^(Q^(s/r)) - x, f) = 1`
    /// for every prime `r | s`.
    pub fn is_irreducible_rabin(&self, f: &Poly<A::Elem>) -> bool {
        let s = match f.degree() {
            Degree::Finite(s) if s >= 1 => s,
            _ => return false,
        };
        let f = self.monic(f);
        let q = self.field.order() as u128;
        let x = self.x();
        // frob[j] = x^(Q^j) mod f
        let mut frob = vec![self.rem(&x, &f).expect("monic modulus")];
        for j in 1..=s {
            let next = self.pow_mod(&frob[j - 1], q, &f).expect("monic modulus");
            frob.push(next);
        }
        if frob[s] != frob[0] {
            return false;
        }
        for r in arith::prime_factors(s as u64) {
            let h = self.sub(&frob[s / r as usize], &x);
            let g = self.gcd_monic(&h, &f).expect("f is nonzero");
            if g != self.one() {
                return false;
            }
        }
        true
    }

    /// Least monic irreducible of degree `deg` in index order.
    pub fn least_irreducible(&self, deg: usize) -> Result<Poly<A::Elem>> {
        self.irreducibles(deg)?.next().ok_or_else(|| Error::Internal(format!("no irreducible of degree {deg}")))
    }

    /// Monic irreducibles of degree `deg` in index order.
    pub fn irreducibles(&self, deg: usize) -> Result<impl Iterator<Item = Poly<A::Elem>> + '_> {
        if deg == 0 {
            return Err(invalid("irreducibles have positive degree"));
        }
        let count = self.monic_count(deg).ok_or_else(|| invalid(format!("degree {deg} search space overflows")))?;
        Ok((0..count).map(move |i| self.monic_by_index(deg, i)).filter(move |g| self.is_irreducible(g)))
    }

    /// Pairwise coprime monic polynomials with `deg p_i = degrees[i] - 1`.
    ///
    /// Tried in order: products of `x + c` over disjoint root sets taken in
    /// index order, distinct irreducibles per degree class, lexicographic
    /// backtracking over monic polynomials limited to `budget` nodes.
    pub fn coprime_system(&self, degrees: &[usize], budget: u64) -> Result<CoprimeSystem<A::Elem>> {
        if degrees.contains(&0) {
            return Err(invalid("coprime_system degrees must be at least 1"));
        }
        let targets: Vec<usize> = degrees.iter().map(|d| d - 1).collect();
        let q = self.field.order();
        let total: usize = targets.iter().sum();

        if total as u64 <= q {
            let mut next = 0u64;
            let polys = targets
                .iter()
                .map(|&t| {
                    let mut g = self.one();
                    for _ in 0..t {
                        g = self.mul(&g, &self.linear(self.field.element(next)));
                        next += 1;
                    }
                    g
                })
                .collect();
            return Ok(CoprimeSystem { polys, strategy: CoprimeStrategy::LinearFactors });
        }

        if let Some(polys) = self.distinct_irreducibles(&targets) {
            return Ok(CoprimeSystem { polys, strategy: CoprimeStrategy::DistinctIrreducibles });
        }

        let mut chosen = Vec::with_capacity(targets.len());
        let mut nodes = 0u64;
        match self.backtrack(&targets, &mut chosen, &mut nodes, budget) {
            Some(true) => Ok(CoprimeSystem { polys: chosen, strategy: CoprimeStrategy::Backtracking }),
            Some(false) => Err(Error::NotFound(format!("no pairwise coprime system with degrees {targets:?}"))),
            None => Err(Error::NotFound(format!("coprime search budget of {budget} nodes exhausted"))),
        }
    }

    fn distinct_irreducibles(&self, targets: &[usize]) -> Option<Vec<Poly<A::Elem>>> {
        let mut out: Vec<Option<Poly<A::Elem>>> = vec![None; targets.len()];
        let mut degs: Vec<usize> = targets.to_vec();
        degs.sort_unstable();
        degs.dedup();
        for deg in degs {
            let slots: Vec<usize> = (0..targets.len()).filter(|&i| targets[i] == deg).collect();
            if deg == 0 {
                for i in slots {
                    out[i] = Some(self.one());
                }
                continue;
            }
            let available = count_irreducible(self.field.order(), deg).ok()?;
            if (slots.len() as u128) > available {
                return None;
            }
            let found: Vec<_> = self.irreducibles(deg).ok()?.take(slots.len()).collect();
            for (i, g) in slots.into_iter().zip(found) {
                out[i] = Some(g);
            }
        }
        out.into_iter().collect()
    }

    // Some(true) found, Some(false) space exhausted, None budget exhausted.
    fn backtrack(
        &self,
        targets: &[usize],
        chosen: &mut Vec<Poly<A::Elem>>,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        let pos = chosen.len();
        if pos == targets.len() {
            return Some(true);
        }
        let count = self.monic_count(targets[pos])?;
        for idx in 0..count {
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            let g = self.monic_by_index(targets[pos], idx);
            let coprime = chosen.iter().all(|h| self.gcd_monic(h, &g).map(|c| c == self.one()).unwrap_or(false));
            if !coprime {
                continue;
            }
            chosen.push(g);
            match self.backtrack(targets, chosen, nodes, budget) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {
                    chosen.pop();
                }
            }
        }
        Some(false)
    }

    /// Text form: field indices of the coefficients, low degree first.
    pub fn to_text(&self, a: &Poly<A::Elem>) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        a.coeffs.iter().map(|&c| self.field.index(c).to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse(&self, text: &str) -> Result<Poly<A::Elem>> {
        let q = self.field.order();
        let mut coeffs = Vec::new();
        for tok in text.split(',') {
            let v: u64 = tok.trim().parse().map_err(|_| invalid(format!("bad polynomial coefficient {tok:?}")))?;
            if v >= q {
                return Err(invalid(format!("coefficient {v} outside a field of order {q}")));
            }
            coeffs.push(self.field.element(v));
        }
        Ok(self.from_coeffs(coeffs))
    }

    /// Total order used for reproducible search: degree, then coefficients
    /// compared by index from the top down.
    pub fn cmp_index(&self, a: &Poly<A::Elem>, b: &Poly<A::Elem>) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            let ia = a.coeffs.iter().rev().map(|&c| self.field.index(c));
            let ib = b.coeffs.iter().rev().map(|&c| self.field.index(c));
            ia.cmp(ib)
        })
    }
}

/// Number of monic irreducibles of degree `s` over F_q, by the Möbius sum
/// `(1/s) Σ_{h|s} μ(s/h) q^h`.
pub fn count_irreducible(q: u64, s: usize) -> Result<u128> {
    if s == 0 {
        return Err(invalid("degree must be positive"));
    }
    let mut acc: i128 = 0;
    for h in arith::divisors(s) {
        let mu = mobius((s / h) as u64) as i128;
        if mu == 0 {
            continue;
        }
        let term = arith::checked_pow(q, h)
            .and_then(|v| i128::try_from(v).ok())
            .ok_or_else(|| invalid(format!("q^{h} overflows")))?;
        acc += mu * term;
    }
    debug_assert!(acc % s as i128 == 0);
    Ok((acc / s as i128) as u128)
}
