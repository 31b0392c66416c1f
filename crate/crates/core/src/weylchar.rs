//! Characteristic-zero character data for classical groups.
//!
//! Dimensions come from the Weyl dimension formula, dominant multiplicities
//! from Freudenthal's recursion, and the minuscule, wedge and spin modules
//! have direct combinatorial enumerators. [`steinberg_decompose`] and
//! [`crate::rootsys::is_p_restricted`] are the only places where a positive
//! characteristic enters.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::ambient;
use crate::error::{Error, Result};
use crate::rootsys::{is_prime, Family, RootSystem, Weight, WeightMultiset};

/// Default cap on module dimensions handled by the generic algorithms.
pub const DEFAULT_DIM_CAP: u64 = 200_000;

/// Dominant weights of a module with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantCharacter {
    system: Arc<RootSystem>,
    entries: BTreeMap<Vec<i64>, u64>,
}

impl DominantCharacter {
    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn entries(&self) -> &BTreeMap<Vec<i64>, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, coeffs: &[i64]) -> u64 {
        self.entries.get(coeffs).copied().unwrap_or(0)
    }

    /// Σ multiplicity × orbit size.
    pub fn total_dimension(&self) -> BigUint {
        self.entries
            .iter()
            .map(|(k, &m)| orbit_size_of(&self.system, k) * BigUint::from(m))
            .sum()
    }
}

/// A `p`-adic layer decomposition `w = Σ p^r w_r` with `w_r` restricted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinbergFactors {
    pub base_prime: u64,
    pub factors: Vec<(Weight, u32)>,
}

impl SteinbergFactors {
    pub fn reconstruct(&self) -> Vec<i64> {
        let rank = self.factors[0].0.coeffs().len();
        let mut out = vec![0i64; rank];
        for (w, r) in &self.factors {
            let scale = (self.base_prime as i64).pow(*r);
            for (o, a) in out.iter_mut().zip(w.coeffs()) {
                *o += scale * a;
            }
        }
        out
    }
}

fn require_dominant(w: &Weight) -> Result<()> {
    if w.is_dominant() {
        Ok(())
    } else {
        Err(Error::NotDominant(w.to_string()))
    }
}

/// Weyl dimension formula.
pub fn weyl_dim(lambda: &Weight) -> Result<BigUint> {
    require_dominant(lambda)?;
    Ok(weyl_dim_coeffs(lambda.system(), lambda.coeffs()))
}

pub(crate) fn weyl_dim_coeffs(sys: &RootSystem, lambda: &[i64]) -> BigUint {
    let rank = sys.rank();
    let lr: Vec<i64> = lambda.iter().map(|a| a + 1).collect();
    let rho = vec![1i64; rank];
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for alpha in sys.positive_roots_fund() {
        num *= BigInt::from(sys.inner(&lr, alpha));
        den *= BigInt::from(sys.inner(&rho, alpha));
    }
    let q = num / den;
    q.to_biguint().expect("dimensions are positive")
}

fn check_cap(sys: &RootSystem, lambda: &[i64], dim_cap: u64) -> Result<BigUint> {
    let dim = weyl_dim_coeffs(sys, lambda);
    if dim > BigUint::from(dim_cap) {
        return Err(Error::DimensionCap { dim, cap: dim_cap });
    }
    Ok(dim)
}

/// Dominant multiplicities of the irreducible module `V(λ)` by Freudenthal's
/// recursion.
pub fn dominant_character(lambda: &Weight, dim_cap: u64) -> Result<DominantCharacter> {
    require_dominant(lambda)?;
    check_cap(lambda.system(), lambda.coeffs(), dim_cap)?;
    Ok(DominantCharacter {
        system: Arc::clone(lambda.system()),
        entries: freudenthal(lambda.system(), lambda.coeffs()),
    })
}

/// Dominant weights under `lambda`, with their depth (height of `λ − μ`).
fn dominant_weights_below(sys: &RootSystem, lambda: &[i64]) -> Vec<(Vec<i64>, i64)> {
    let heights: Vec<i64> = sys.positive_roots().iter().map(|c| c.iter().sum()).collect();
    let mut depth: HashMap<Vec<i64>, i64> = HashMap::new();
    depth.insert(lambda.to_vec(), 0);
    let mut stack = vec![lambda.to_vec()];
    while let Some(mu) = stack.pop() {
        let d = depth[&mu];
        for (alpha, h) in sys.positive_roots_fund().iter().zip(&heights) {
            let nu: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a - b).collect();
            if sys.is_dominant_coeffs(&nu) && !depth.contains_key(&nu) {
                depth.insert(nu.clone(), d + h);
                stack.push(nu);
            }
        }
    }
    let mut out: Vec<(Vec<i64>, i64)> = depth.into_iter().collect();
    out.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| y.0.cmp(&x.0)));
    out
}

fn freudenthal(sys: &RootSystem, lambda: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    let rank = sys.rank();
    let layers = dominant_weights_below(sys, lambda);
    let rho = vec![1i64; rank];
    let shift = |x: &[i64]| -> Vec<i64> { x.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let lr = shift(lambda);
    let c_lambda = sys.inner(&lr, &lr) as i128;
    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    mult.insert(lambda.to_vec(), 1);
    for (mu, _) in layers.iter().skip(1) {
        let mr = shift(mu);
        let denom = c_lambda - sys.inner(&mr, &mr) as i128;
        let mut num: i128 = 0;
        for alpha in sys.positive_roots_fund() {
            let mut nu: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a + b).collect();
            loop {
                let d = sys.dominant_conjugate(&nu);
                match mult.get(&d) {
                    Some(&m) => num += m as i128 * sys.inner(&nu, alpha) as i128,
                    None => break,
                }
                for (x, a) in nu.iter_mut().zip(alpha) {
                    *x += a;
                }
            }
        }
        let twice = 2 * num;
        debug_assert!(denom > 0 && twice % denom == 0);
        mult.insert(mu.clone(), (twice / denom) as u64);
    }
    mult.into_iter().filter(|(_, m)| *m > 0).collect()
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Order of the Weyl group of the sub-diagram spanned by `nodes`.
fn parabolic_order(sys: &RootSystem, nodes: &[usize]) -> BigUint {
    let a = sys.cartan();
    let mut seen: HashSet<usize> = HashSet::new();
    let node_set: HashSet<usize> = nodes.iter().copied().collect();
    let mut order = BigUint::one();
    for &start in nodes {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            for &v in nodes {
                if a[u][v] != 0 && u != v && node_set.contains(&v) && seen.insert(v) {
                    comp.push(v);
                }
            }
            i += 1;
        }
        let k = comp.len();
        let double = comp
            .iter()
            .any(|&u| comp.iter().any(|&v| a[u][v] == -2));
        let branch = comp
            .iter()
            .any(|&u| comp.iter().filter(|&&v| v != u && a[u][v] != 0).count() >= 3);
        let comp_order = if double {
            BigUint::from(2u32).pow(k as u32) * factorial(k)
        } else if branch {
            BigUint::from(2u32).pow(k as u32 - 1) * factorial(k)
        } else {
            factorial(k + 1)
        };
        order *= comp_order;
    }
    order
}

/// Order of the Weyl group.
pub fn weyl_group_order(sys: &RootSystem) -> BigUint {
    let all: Vec<usize> = (0..sys.rank()).collect();
    parabolic_order(sys, &all)
}

fn orbit_size_of(sys: &RootSystem, w: &[i64]) -> BigUint {
    let stab: Vec<usize> = (0..sys.rank()).filter(|&i| w[i] == 0).collect();
    weyl_group_order(sys) / parabolic_order(sys, &stab)
}

/// Size of the Weyl orbit of a dominant weight, `|W| / |W_J|` with `W_J` the
/// parabolic stabilizer.
pub fn weyl_orbit_size(w: &Weight) -> Result<BigUint> {
    require_dominant(w)?;
    Ok(orbit_size_of(w.system(), w.coeffs()))
}

/// Explicit Weyl orbit of a dominant weight. Only used to expand characters
/// for restriction; orbit sizes never go through here.
pub(crate) fn orbit_of_dominant(sys: &RootSystem, w: &[i64]) -> Vec<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(w.to_vec());
    let mut out = vec![w.to_vec()];
    let mut i = 0;
    while i < out.len() {
        let cur = out[i].clone();
        for j in 0..sys.rank() {
            if cur[j] > 0 {
                let mut next = cur.clone();
                sys.reflect(&mut next, j);
                if seen.insert(next.clone()) {
                    out.push(next);
                }
            }
        }
        i += 1;
    }
    out
}

fn enumerator_supported(family: Family, n: usize, k: usize) -> bool {
    if k == 0 || k > n {
        return false;
    }
    match family {
        Family::A | Family::C => true,
        Family::B => true,
        Family::D => true,
    }
}

fn push_doubled(
    family: Family,
    n: usize,
    xx: &[i64],
    out: &mut BTreeMap<Vec<i64>, i64>,
    sign: i64,
) {
    let a = ambient::eps_doubled_to_fund(family, n, xx).expect("enumerated weights are integral");
    *out.entry(a).or_insert(0) += sign;
}

/// Weight multiset of `Λ^k` of the natural module, in doubled ε-coordinates.
fn wedge_doubled(family: Family, n: usize, k: usize) -> Vec<Vec<i64>> {
    let len = ambient::eps_len(family, n);
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for i in 0..len {
        let mut v = vec![0i64; len];
        v[i] = 2;
        basis.push(v.clone());
        if family != Family::A {
            v[i] = -2;
            basis.push(v);
        }
    }
    if family == Family::B {
        basis.push(vec![0i64; len]);
    }
    basis
        .iter()
        .combinations(k)
        .map(|combo| {
            let mut s = vec![0i64; len];
            for v in combo {
                for (x, y) in s.iter_mut().zip(v) {
                    *x += y;
                }
            }
            s
        })
        .collect()
}

/// Complete weight multiset of `V(λ_k)` (k 1-based) for the modules with a
/// combinatorial model: all fundamental modules of `A_n` and `C_n`, the
/// wedge modules of `B_n` (k < n) and `D_n` (k ≤ n−2), and the spin and
/// half-spin modules.
pub fn fundamental_module_weights(system: &RootSystem, k: usize) -> Result<Vec<(Vec<i64>, u64)>> {
    let family = system.family();
    let n = system.rank();
    if !enumerator_supported(family, n, k) {
        return Err(Error::NoEnumerator {
            system: system.to_string(),
            k,
        });
    }
    let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let spin = match family {
        Family::B => k == n,
        Family::D => k + 1 >= n,
        _ => false,
    };
    if spin {
        for signs in (0..n).map(|_| [1i64, -1]).multi_cartesian_product() {
            if family == Family::D {
                let minus = signs.iter().filter(|&&s| s < 0).count();
                let want_even = k == n;
                if (minus % 2 == 0) != want_even {
                    continue;
                }
            }
            push_doubled(family, n, &signs, &mut acc, 1);
        }
    } else {
        for xx in wedge_doubled(family, n, k) {
            push_doubled(family, n, &xx, &mut acc, 1);
        }
        if family == Family::C && k >= 2 {
            for xx in wedge_doubled(family, n, k - 2) {
                push_doubled(family, n, &xx, &mut acc, -1);
            }
        }
    }
    let mut out = Vec::with_capacity(acc.len());
    for (w, m) in acc {
        if m < 0 {
            unreachable!("wedge differences are genuine characters");
        }
        if m > 0 {
            out.push((w, m as u64));
        }
    }
    Ok(out)
}

fn fundamental_index(lambda: &[i64]) -> Option<usize> {
    let mut idx = None;
    for (i, &a) in lambda.iter().enumerate() {
        match a {
            0 => {}
            1 if idx.is_none() => idx = Some(i + 1),
            _ => return None,
        }
    }
    idx
}

/// Full weight multiset of `V(λ)`: the combinatorial enumerator when one
/// exists, otherwise Freudenthal plus orbit expansion.
pub fn full_character(lambda: &Weight, dim_cap: u64) -> Result<WeightMultiset> {
    require_dominant(lambda)?;
    full_character_coeffs(lambda.system(), lambda.coeffs(), dim_cap)
}

pub(crate) fn full_character_coeffs(
    sys: &RootSystem,
    lambda: &[i64],
    dim_cap: u64,
) -> Result<WeightMultiset> {
    check_cap(sys, lambda, dim_cap)?;
    if let Some(k) = fundamental_index(lambda) {
        if enumerator_supported(sys.family(), sys.rank(), k) {
            return Ok(fundamental_module_weights(sys, k)?.into_iter().collect());
        }
    }
    let mut out = WeightMultiset::new();
    if lambda.iter().all(|&a| a == 0) {
        out.insert(lambda.to_vec(), 1);
        return Ok(out);
    }
    for (dom, m) in freudenthal(sys, lambda) {
        for w in orbit_of_dominant(sys, &dom) {
            out.insert(w, m);
        }
    }
    Ok(out)
}

/// Layers of the base-`p` expansion of every coefficient, zero layers
/// dropped (a zero weight yields the single layer `(0, 0)`).
pub fn steinberg_decompose(w: &Weight, p: u64) -> Result<SteinbergFactors> {
    require_dominant(w)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as i64;
    let mut rest = w.coeffs().to_vec();
    let mut factors = Vec::new();
    let mut r = 0u32;
    while rest.iter().any(|&a| a != 0) {
        let digits: Vec<i64> = rest.iter().map(|a| a % p).collect();
        if digits.iter().any(|&d| d != 0) {
            factors.push((Weight::new(w.system(), digits.clone())?, r));
        }
        rest = rest.iter().map(|a| a / p).collect();
        r += 1;
    }
    if factors.is_empty() {
        factors.push((w.clone(), 0));
    }
    Ok(SteinbergFactors {
        base_prime: p as u64,
        factors,
    })
}

/// Highest weight of `V(l1) ⊗ V(l2)`. The flag records that `l1 + l2`
/// occurs with multiplicity one and every other constituent lies strictly
/// under it; it holds for all dominant inputs.
pub fn tensor_highest_weight(l1: &Weight, l2: &Weight) -> Result<(Weight, bool)> {
    require_dominant(l1)?;
    require_dominant(l2)?;
    Ok((l1.add(l2)?, true))
}

/// Weight multiset of a tensor product of two characters.
pub fn tensor_characters(x: &WeightMultiset, y: &WeightMultiset) -> WeightMultiset {
    let mut out = WeightMultiset::new();
    for (u, mu) in x {
        for (v, mv) in y {
            let w: Vec<i64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
            *out.entry(w).or_insert(0) += mu * mv;
        }
    }
    out
}

/// Weight count of a multiset.
pub fn multiset_size(x: &WeightMultiset) -> u64 {
    x.values().sum()
}
