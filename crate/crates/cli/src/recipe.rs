//! Instance descriptions shared by `construct` and `sweep`, and the code that
//! turns them into subspaces.

use std::sync::Arc;

use clap::Subcommand;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use linset::constructions::{self, Built, JVParams};
use linset::fields::{FieldTower, DEFAULT_CAP};
use linset::linset::{Ambient, FqSubspace};
use linset::oracle;

use crate::CliError;

fn one() -> usize {
    1
}

/// One construction with its parameters. `q` is any prime power; every
/// other degree is relative to F_q.
#[derive(Clone, Debug, Serialize, Deserialize, Subcommand)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Recipe {
    /// <1, λ, …, λ^{k_0−1}> × … × <1, λ, …, λ^{k_d−1}> with λ of degree t.
    Jv {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        ks: Vec<usize>,
        /// Degree of the ambient field over F_q; a multiple of t, default t.
        #[arg(long)]
        #[serde(default)]
        n: Option<usize>,
    },
    /// Lift of a JV base over F_{q^t} to F_{q^{(r+1)t}} along Z.
    Caserta {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        ks: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        #[serde(default = "one")]
        r: usize,
        /// Swap coordinate 0 with this one in the base before lifting.
        #[arg(long)]
        #[serde(default)]
        swap: Option<usize>,
    },
    /// U_1 × F_q^r with U_1 spanned by the first k_1 standard vectors.
    Prime {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        /// Default (d − r + 1) n.
        #[arg(long)]
        #[serde(default)]
        k1: Option<usize>,
    },
    /// F_{q^t}-span of the first k_1 unit vectors, times a JV base over F_{q^t}.
    Product {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: usize,
        /// n = s t.
        #[arg(long)]
        s: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        ks: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        #[serde(default = "one")]
        k1: usize,
    },
    /// {(x, x^q, a)} in PG(2, q^n).
    Frobenius {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
    },
    /// Uniform random rank-k subspace of F_{q^n}^{d+1}.
    Random {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Falls back to the global --seed.
        #[arg(long)]
        #[serde(default)]
        seed: Option<u64>,
    },
}

/// A built subspace, with a prediction when it comes from a construction.
pub struct Instance {
    pub kind: &'static str,
    pub params: Value,
    pub subspace: FqSubspace,
    pub built: Option<Built>,
}

/// `(p, e)` with `q = p^e`.
pub fn split_prime_power(q: u64) -> Result<(u32, usize), CliError> {
    let bad = || CliError::Usage(format!("q = {q} is not a prime power"));
    let p = *linset::arith::prime_factors(q).first().ok_or_else(bad)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(bad());
    }
    Ok((u32::try_from(p).map_err(|_| bad())?, e))
}

/// Tower over F_p through F_q and the given degrees over F_q.
fn tower(q: u64, rel: &[usize], cap: Option<u64>) -> Result<(Arc<FieldTower>, usize), CliError> {
    let (p, e) = split_prime_power(q)?;
    let mut chain = vec![1, e];
    chain.extend(rel.iter().map(|&r| r * e));
    chain.dedup();
    Ok((FieldTower::with_cap(p, &chain, Some(cap.unwrap_or(DEFAULT_CAP)))?, e))
}

fn multiple(n: usize, t: usize) -> Result<(), CliError> {
    if t == 0 || !n.is_multiple_of(t) {
        return Err(CliError::Usage(format!("n = {n} is not a multiple of t = {t}")));
    }
    Ok(())
}

fn jv_base(
    tower: &Arc<FieldTower>,
    e: usize,
    t: usize,
    ks: &[usize],
    swap: Option<usize>,
) -> Result<FqSubspace, CliError> {
    let base = constructions::jv_build(&JVParams::with_default_lambda(tower.clone(), e, t, ks)?)?.subspace;
    Ok(match swap {
        None | Some(0) => base,
        Some(i) if i < ks.len() => constructions::apply_gl(&base, &constructions::swap_matrix(tower, ks.len(), i))?,
        Some(i) => return Err(CliError::Usage(format!("swap index {i} outside 0..{}", ks.len()))),
    })
}

impl Recipe {
    pub fn build(&self, cap: Option<u64>, default_seed: u64) -> Result<Instance, CliError> {
        let from = |b: Built| Instance {
            kind: b.name,
            params: b.params.clone(),
            subspace: b.subspace.clone(),
            built: Some(b),
        };
        Ok(match *self {
            Recipe::Jv { q, t, ref ks, n } => {
                let n = n.unwrap_or(t);
                multiple(n, t)?;
                let (tw, e) = tower(q, &[t, n], cap)?;
                from(constructions::jv_build(&JVParams::with_default_lambda(tw, e, t, ks)?)?)
            }
            Recipe::Caserta { q, t, ref ks, r, swap } => {
                let (tw, e) = tower(q, &[t, (r + 1) * t], cap)?;
                let base = jv_base(&tw, e, t, ks, swap)?;
                let z = constructions::default_z(&tw, e, t, r)?;
                let mut b = constructions::caserta_build(&base, t, &z)?;
                b.params = json!({ "q": q, "t": t, "ks": ks, "r": r, "swap": swap.unwrap_or(0) });
                from(b)
            }
            Recipe::Prime { q, n, d, r, k1 } => {
                if r > d {
                    return Err(CliError::Usage(format!("r = {r} exceeds d = {d}")));
                }
                let (tw, e) = tower(q, &[n], cap)?;
                let a1 = Ambient::new(tw, e, d - r)?;
                let u1 = constructions::standard_subspace(&a1, k1.unwrap_or((d - r + 1) * n))?;
                from(constructions::prime_build(&u1, d, r)?)
            }
            Recipe::Product { q, t, s, ref ks, k1 } => {
                let (tw, e) = tower(q, &[t, s * t], cap)?;
                let u2 = jv_base(&tw, e, t, ks, None)?;
                let u1: Vec<_> =
                    (0..k1).map(|i| (0..k1).map(|j| if i == j { tw.one() } else { tw.zero() }).collect()).collect();
                let mut b = constructions::product_build(&u1, t, &u2)?;
                b.params = json!({ "q": q, "t": t, "s": s, "ks": ks, "k1": k1 });
                from(b)
            }
            Recipe::Frobenius { q, n } => {
                let (tw, e) = tower(q, &[n], cap)?;
                from(constructions::frobenius_graph_build(&Ambient::new(tw, e, 2)?)?)
            }
            Recipe::Random { q, n, d, k, seed } => {
                let seed = seed.unwrap_or(default_seed);
                let (tw, e) = tower(q, &[n], cap)?;
                let amb = Ambient::new(tw, e, d)?;
                Instance {
                    kind: "random",
                    params: json!({ "q": q, "n": n, "d": d, "k": k, "seed": seed }),
                    subspace: oracle::random_subspace(&amb, k, seed)?,
                    built: None,
                }
            }
        })
    }
}
