//! Classical root systems and weight-lattice arithmetic.
//!
//! Simple roots follow the Bourbaki labelling. The Cartan matrix is stored
//! with `cartan[i][j] = <α_i, α_j^∨>`, so row `i` lists the coordinates of
//! `α_i` over the fundamental weights. With this orientation `B_n` has
//! `cartan[n-2][n-1] = -2` (the long root `α_{n-1}` against the short root
//! `α_n`) and `C_n` has `cartan[n-1][n-2] = -2` (the long root `α_n`).
//!
//! Weights are integer vectors over the fundamental weights `λ_1, …, λ_n`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Classical Cartan type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Invalid(format!(
                "unknown family {other:?}; expected one of A, B, C, D"
            ))),
        }
    }
}

/// A classical root system with exact Cartan data.
///
/// Besides the Cartan matrix and its exact inverse, construction caches the
/// positive roots and an integer-scaled Gram matrix of the fundamental
/// weights, which the character code uses for exact inner products.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    inverse_cartan: Vec<Vec<BigRational>>,
    gram: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    positive_roots_fund: Vec<Vec<i64>>,
    height_coweight: Vec<i64>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.rank == other.rank
    }
}

impl Eq for RootSystem {}

impl Hash for RootSystem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.family.hash(state);
        self.rank.hash(state);
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Builds the root system of the given type, enforcing the usual rank bounds
/// (`A_n` for n ≥ 1, `B_n`/`C_n` for n ≥ 2, `D_n` for n ≥ 3).
pub fn build_root_system(family: Family, rank: usize) -> Result<Arc<RootSystem>> {
    let min = match family {
        Family::A => 1,
        Family::B | Family::C => 2,
        Family::D => 3,
    };
    if rank < min {
        return Err(Error::InadmissibleRank {
            family,
            rank,
            reason: match family {
                Family::A => "rank must be at least 1",
                Family::B | Family::C => "rank must be at least 2",
                Family::D => "rank must be at least 3",
            },
        });
    }
    Ok(Arc::new(RootSystem::construct(family, rank)))
}

/// Builds a root system that may appear as a subgroup factor. Besides the
/// ranks accepted by [`build_root_system`] this allows `B_1`, `C_1` (both of
/// type `A_1`, differing only in the realization of the natural module) and
/// `D_2 = A_1 × A_1`.
pub fn build_factor_system(family: Family, rank: usize) -> Result<Arc<RootSystem>> {
    let min = match family {
        Family::A | Family::B | Family::C => 1,
        Family::D => 2,
    };
    if rank < min {
        return Err(Error::InadmissibleRank {
            family,
            rank,
            reason: "subgroup factors need rank ≥ 1 (≥ 2 for D)",
        });
    }
    Ok(Arc::new(RootSystem::construct(family, rank)))
}

pub(crate) fn cartan_matrix(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    match family {
        Family::A | Family::B | Family::C => {
            for i in 0..n.saturating_sub(1) {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            if n >= 2 {
                match family {
                    Family::B => a[n - 2][n - 1] = -2,
                    Family::C => a[n - 1][n - 2] = -2,
                    _ => {}
                }
            }
        }
        Family::D => {
            // chain α_1 … α_{n-1}, with α_n attached to α_{n-2}
            for i in 0..n.saturating_sub(2) {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            if n >= 3 {
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
        }
    }
    a
}

/// Squared lengths `(α_i, α_i)` with long roots normalised to 2.
fn root_norms(family: Family, n: usize) -> Vec<i64> {
    let mut norms = vec![2i64; n];
    match family {
        Family::B => norms[n - 1] = 1,
        Family::C => norms[n - 1] = 4,
        _ => {}
    }
    norms
}

fn rational_inverse(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrices are nonsingular");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - t;
                    let t = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - t;
                }
            }
        }
    }
    inv
}

fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut all: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut roots = simple.clone();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // <β, α_i^∨>
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut q = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        q += 1;
                    } else {
                        break;
                    }
                }
                if q - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if all.insert(up.clone()) {
                        next.push(up.clone());
                        roots.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    roots.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| y.cmp(x))
    });
    roots
}

fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

impl RootSystem {
    fn construct(family: Family, rank: usize) -> RootSystem {
        let cartan = cartan_matrix(family, rank);
        let inverse_cartan = rational_inverse(&cartan);
        let norms = root_norms(family, rank);

        // (λ_i, λ_j) = (A^{-1})_{ji} (α_i, α_i) / 2, scaled to integers.
        let raw: Vec<Vec<BigRational>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        &inverse_cartan[j][i] * BigRational::new(norms[i].into(), 2.into())
                    })
                    .collect()
            })
            .collect();
        let mut scale = BigInt::one();
        for row in &raw {
            for q in row {
                scale = scale.lcm(q.denom());
            }
        }
        let scale_q = BigRational::from_integer(scale);
        let gram = raw
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| rational_to_i64(&(q * &scale_q)).expect("small Gram entries"))
                    .collect()
            })
            .collect();

        let positive_roots = positive_roots(&cartan);
        let positive_roots_fund = positive_roots
            .iter()
            .map(|c| {
                (0..rank)
                    .map(|i| (0..rank).map(|j| c[j] * cartan[j][i]).sum())
                    .collect()
            })
            .collect();

        // <μ, 2ρ^∨> = 2 Σ_i c_i where c are root coordinates of μ.
        let height_coweight = (0..rank)
            .map(|j| {
                let s = inverse_cartan[j]
                    .iter()
                    .fold(BigRational::zero(), |acc, q| acc + q);
                rational_to_i64(&(s * BigRational::from_integer(2.into())))
                    .expect("2ρ^∨ pairs integrally with weights")
            })
            .collect();

        RootSystem {
            family,
            rank,
            cartan,
            inverse_cartan,
            gram,
            positive_roots,
            positive_roots_fund,
            height_coweight,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `cartan()[i][j] = <α_i, α_j^∨>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn inverse_cartan(&self) -> &[Vec<BigRational>] {
        &self.inverse_cartan
    }

    /// Positive roots in root coordinates, sorted by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive roots in fundamental coordinates, same order as
    /// [`positive_roots`](Self::positive_roots).
    pub fn positive_roots_fund(&self) -> &[Vec<i64>] {
        &self.positive_roots_fund
    }

    /// Simple root `α_i` (0-based) in fundamental coordinates.
    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.cartan[i]
    }

    /// Integer multiple of the invariant form on fundamental coordinates.
    /// Only ratios of these values are meaningful.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0i64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.gram[i];
            for (j, &yj) in y.iter().enumerate() {
                s += xi * row[j] * yj;
            }
        }
        s
    }

    /// `<μ, 2ρ^∨>`, twice the height of `μ`.
    pub fn height2(&self, x: &[i64]) -> i64 {
        x.iter().zip(&self.height_coweight).map(|(a, h)| a * h).sum()
    }

    pub fn is_dominant_coeffs(&self, x: &[i64]) -> bool {
        x.iter().all(|&a| a >= 0)
    }

    /// Simple reflection `s_i` (0-based) applied in place.
    pub fn reflect(&self, x: &mut [i64], i: usize) {
        let a = x[i];
        if a != 0 {
            for (xj, rj) in x.iter_mut().zip(&self.cartan[i]) {
                *xj -= a * rj;
            }
        }
    }

    /// The unique dominant weight in the Weyl orbit of `x`.
    pub fn dominant_conjugate(&self, x: &[i64]) -> Vec<i64> {
        let mut w = x.to_vec();
        while let Some(i) = w.iter().position(|&a| a < 0) {
            self.reflect(&mut w, i);
        }
        w
    }

    /// Root coordinates of a weight given by its coefficient slice.
    pub fn root_coords_of(&self, x: &[i64]) -> Vec<BigRational> {
        (0..self.rank)
            .map(|j| {
                x.iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .fold(BigRational::zero(), |acc, (i, &a)| {
                        acc + &self.inverse_cartan[i][j] * BigRational::from_integer(a.into())
                    })
            })
            .collect()
    }

    /// Graph automorphism on coefficients: index reversal for `A_n`, swap of
    /// the last two coefficients for `D_n` (both coefficients for `D_2`).
    pub fn graph_automorphism_coeffs(&self, x: &[i64]) -> Result<Vec<i64>> {
        match self.family {
            Family::A => Ok(x.iter().rev().copied().collect()),
            Family::D => {
                let mut y = x.to_vec();
                let n = y.len();
                y.swap(n - 2, n - 1);
                Ok(y)
            }
            f => Err(Error::NoGraphAutomorphism(f)),
        }
    }
}

/// A weight over the fundamental weights of a root system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    system: Arc<RootSystem>,
    coeffs: Vec<i64>,
}

impl Weight {
    pub fn new(system: &Arc<RootSystem>, coeffs: Vec<i64>) -> Result<Weight> {
        if coeffs.len() != system.rank {
            return Err(Error::CoefficientLength {
                expected: system.rank,
                got: coeffs.len(),
            });
        }
        Ok(Weight {
            system: Arc::clone(system),
            coeffs,
        })
    }

    pub fn zero(system: &Arc<RootSystem>) -> Weight {
        Weight {
            system: Arc::clone(system),
            coeffs: vec![0; system.rank],
        }
    }

    /// The fundamental weight `λ_k`, 1-based.
    pub fn fundamental(system: &Arc<RootSystem>, k: usize) -> Result<Weight> {
        if k == 0 || k > system.rank {
            return Err(Error::Invalid(format!(
                "fundamental weight index {k} out of range 1..={}",
                system.rank
            )));
        }
        let mut coeffs = vec![0; system.rank];
        coeffs[k - 1] = 1;
        Ok(Weight {
            system: Arc::clone(system),
            coeffs,
        })
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_dominant(&self) -> bool {
        self.system.is_dominant_coeffs(&self.coeffs)
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        same_system(self, other)?;
        Ok(Weight {
            system: Arc::clone(&self.system),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Weight) -> Result<Weight> {
        same_system(self, other)?;
        Ok(Weight {
            system: Arc::clone(&self.system),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Subtracts `Σ c_i α_i`.
    pub fn sub_roots(&self, c: &[i64]) -> Result<Weight> {
        if c.len() != self.system.rank {
            return Err(Error::CoefficientLength {
                expected: self.system.rank,
                got: c.len(),
            });
        }
        let mut coeffs = self.coeffs.clone();
        for (i, &ci) in c.iter().enumerate() {
            for (x, r) in coeffs.iter_mut().zip(&self.system.cartan[i]) {
                *x -= ci * r;
            }
        }
        Ok(Weight {
            system: Arc::clone(&self.system),
            coeffs,
        })
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight {
            system: Arc::clone(&self.system),
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_coeffs(&self.coeffs))
    }
}

/// `(a_1,…,a_n)` rendering used throughout reports.
pub fn format_coeffs(x: &[i64]) -> String {
    let parts: Vec<String> = x.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Coordinates over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCoords {
    system: Arc<RootSystem>,
    coeffs: Vec<BigRational>,
}

impl RootCoords {
    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// True iff the weight lies in the root lattice.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|q| q.is_integer())
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|q| q.is_integer() && !q.is_negative())
    }

    /// Inverse of [`to_root_coords`]: multiplies by the Cartan matrix.
    /// Fails if the result has non-integral fundamental coordinates.
    pub fn to_weight(&self) -> Result<Weight> {
        let n = self.system.rank;
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let s = (0..n).fold(BigRational::zero(), |acc, j| {
                acc + &self.coeffs[j] * BigRational::from_integer(self.system.cartan[j][i].into())
            });
            let v = rational_to_i64(&s).ok_or_else(|| {
                Error::NonIntegral(format!("root coordinates give fundamental coordinate {s}"))
            })?;
            coeffs.push(v);
        }
        Weight::new(&self.system, coeffs)
    }
}

impl fmt::Display for RootCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|q| q.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn same_system(a: &Weight, b: &Weight) -> Result<()> {
    if a.system != b.system {
        return Err(Error::SystemMismatch {
            left: a.system.to_string(),
            right: b.system.to_string(),
        });
    }
    Ok(())
}

/// Exact coordinates of `w` over the simple roots.
pub fn to_root_coords(w: &Weight) -> RootCoords {
    RootCoords {
        system: Arc::clone(&w.system),
        coeffs: w.system.root_coords_of(&w.coeffs),
    }
}

/// `μ ≼ ν`: `ν − μ` is a nonnegative integer combination of simple roots.
pub fn dominance_leq(mu: &Weight, nu: &Weight) -> Result<bool> {
    let diff = nu.sub(mu)?;
    Ok(to_root_coords(&diff).is_nonnegative_integral())
}

/// Image under the graph automorphism (types A and D only).
pub fn graph_automorphism_image(w: &Weight) -> Result<Weight> {
    let coeffs = w.system.graph_automorphism_coeffs(&w.coeffs)?;
    Weight::new(&w.system, coeffs)
}

/// Root coordinates of `γ(w) − w` for the graph automorphism `γ`.
pub fn mu_difference_coeffs(w: &Weight) -> Result<RootCoords> {
    let image = graph_automorphism_image(w)?;
    Ok(to_root_coords(&image.sub(w)?))
}

/// Image of `w` under `−w_0`.
pub fn dual_weight(w: &Weight) -> Weight {
    let coeffs = match w.system.family {
        Family::A => w.coeffs.iter().rev().copied().collect(),
        Family::D if w.system.rank % 2 == 1 => {
            let mut y = w.coeffs.clone();
            let n = y.len();
            y.swap(n - 2, n - 1);
            y
        }
        _ => w.coeffs.clone(),
    };
    Weight {
        system: Arc::clone(&w.system),
        coeffs,
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `p = 0` counts every dominant weight as restricted.
pub fn is_p_restricted(w: &Weight, p: u64) -> Result<bool> {
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.to_string()));
    }
    if p == 0 {
        return Ok(true);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(w.coeffs.iter().all(|&a| (a as u64) < p))
}

/// Multiset of weights keyed by fundamental coordinates.
pub type WeightMultiset = HashMap<Vec<i64>, u64>;

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_cartan_matrices() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        assert_eq!(a1.cartan(), &[vec![2]]);
        let a2 = build_root_system(Family::A, 2).unwrap();
        assert_eq!(a2.cartan(), &[vec![2, -1], vec![-1, 2]]);
        let c4 = build_root_system(Family::C, 4).unwrap();
        assert_eq!(c4.cartan()[2], vec![0, -1, 2, -1]);
        assert_eq!(c4.cartan()[3], vec![0, 0, -2, 2]);
        let b3 = build_root_system(Family::B, 3).unwrap();
        assert_eq!(b3.cartan()[1], vec![-1, 2, -2]);
        assert_eq!(b3.cartan()[2], vec![0, -1, 2]);
        let d4 = build_root_system(Family::D, 4).unwrap();
        assert_eq!(d4.cartan()[1], vec![-1, 2, -1, -1]);
    }

    #[test]
    fn inverse_is_exact() {
        for fam in [Family::A, Family::B, Family::C, Family::D] {
            for n in 3..=9 {
                let s = build_root_system(fam, n).unwrap();
                for i in 0..n {
                    for j in 0..n {
                        let v = (0..n).fold(BigRational::zero(), |acc, k| {
                            acc + BigRational::from_integer(s.cartan()[i][k].into())
                                * &s.inverse_cartan()[k][j]
                        });
                        let expect = if i == j { BigRational::one() } else { BigRational::zero() };
                        assert_eq!(v, expect, "{fam}{n} ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn rank_bounds() {
        assert!(build_root_system(Family::B, 1).is_err());
        assert!(build_root_system(Family::D, 2).is_err());
        assert!(build_root_system(Family::D, 3).is_ok());
        assert!(build_factor_system(Family::C, 1).is_ok());
        assert!(build_factor_system(Family::D, 2).is_ok());
    }

    #[test]
    fn positive_root_counts() {
        let count = |f, n| build_root_system(f, n).unwrap().positive_roots().len();
        assert_eq!(count(Family::A, 5), 15);
        assert_eq!(count(Family::B, 4), 16);
        assert_eq!(count(Family::C, 4), 16);
        assert_eq!(count(Family::D, 5), 20);
        let d2 = build_factor_system(Family::D, 2).unwrap();
        assert_eq!(d2.positive_roots().len(), 2);
    }

    #[test]
    fn root_coords_examples() {
        let a3 = build_root_system(Family::A, 3).unwrap();
        let l1 = Weight::fundamental(&a3, 1).unwrap();
        assert_eq!(to_root_coords(&l1).coeffs(), &[q(3, 4), q(2, 4), q(1, 4)]);
        let z = Weight::zero(&a3);
        assert!(to_root_coords(&z).coeffs().iter().all(|c| c.is_zero()));
        let a2 = build_root_system(Family::A, 2).unwrap();
        let w = Weight::new(&a2, vec![2, -1]).unwrap();
        assert_eq!(to_root_coords(&w).coeffs(), &[q(1, 1), q(0, 1)]);
        assert_eq!(to_root_coords(&w).to_weight().unwrap(), w);
    }

    #[test]
    fn dominance_examples() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        let l2 = Weight::new(&a2, vec![0, 1]).unwrap();
        let two_l1 = Weight::new(&a2, vec![2, 0]).unwrap();
        assert!(dominance_leq(&l2, &two_l1).unwrap());
        assert!(dominance_leq(&two_l1, &two_l1).unwrap());
        let a3 = build_root_system(Family::A, 3).unwrap();
        let l1 = Weight::fundamental(&a3, 1).unwrap();
        let l3 = Weight::fundamental(&a3, 3).unwrap();
        assert!(!dominance_leq(&l3, &l1).unwrap());
        assert_eq!(
            to_root_coords(&l1.sub(&l3).unwrap()).coeffs(),
            &[q(1, 2), q(0, 1), q(-1, 2)]
        );
        let b2 = build_root_system(Family::B, 2).unwrap();
        let other = Weight::zero(&b2);
        assert!(matches!(
            dominance_leq(&l2, &other),
            Err(Error::SystemMismatch { .. })
        ));
    }

    #[test]
    fn graph_automorphism_examples() {
        let a3 = build_root_system(Family::A, 3).unwrap();
        let l1 = Weight::fundamental(&a3, 1).unwrap();
        assert_eq!(graph_automorphism_image(&l1).unwrap().coeffs(), &[0, 0, 1]);
        let a4 = build_root_system(Family::A, 4).unwrap();
        let w = Weight::new(&a4, vec![0, 1, 3, 0]).unwrap();
        assert_eq!(graph_automorphism_image(&w).unwrap().coeffs(), &[0, 3, 1, 0]);
        let d5 = build_root_system(Family::D, 5).unwrap();
        let sym = Weight::new(&d5, vec![1, 0, 2, 4, 4]).unwrap();
        assert_eq!(graph_automorphism_image(&sym).unwrap(), sym);
        let c3 = build_root_system(Family::C, 3).unwrap();
        assert!(matches!(
            graph_automorphism_image(&Weight::zero(&c3)),
            Err(Error::NoGraphAutomorphism(Family::C))
        ));
    }

    #[test]
    fn mu_difference_examples() {
        let a3 = build_root_system(Family::A, 3).unwrap();
        let l1 = Weight::fundamental(&a3, 1).unwrap();
        let c = mu_difference_coeffs(&l1).unwrap();
        assert_eq!(c.coeffs(), &[q(-1, 2), q(0, 1), q(1, 2)]);

        let d5 = build_root_system(Family::D, 5).unwrap();
        let l4 = Weight::fundamental(&d5, 4).unwrap();
        let c = mu_difference_coeffs(&l4).unwrap();
        // (a_5 − a_4)(λ_4 − λ_5) with a_4 = 1
        let expect = to_root_coords(
            &Weight::new(&d5, vec![0, 0, 0, -1, 1]).unwrap(),
        );
        assert_eq!(c, expect);
        assert_eq!(c.coeffs()[0], q(0, 1));
        assert_eq!(c.coeffs()[3], q(-1, 2));
        assert_eq!(c.coeffs()[4], q(1, 2));
    }

    #[test]
    fn dual_weight_examples() {
        let b4 = build_root_system(Family::B, 4).unwrap();
        let w = Weight::new(&b4, vec![1, 2, 0, 3]).unwrap();
        assert_eq!(dual_weight(&w), w);
        let a5 = build_root_system(Family::A, 5).unwrap();
        assert_eq!(
            dual_weight(&Weight::fundamental(&a5, 2).unwrap()),
            Weight::fundamental(&a5, 4).unwrap()
        );
        let d5 = build_root_system(Family::D, 5).unwrap();
        assert_eq!(
            dual_weight(&Weight::fundamental(&d5, 4).unwrap()),
            Weight::fundamental(&d5, 5).unwrap()
        );
        let d4 = build_root_system(Family::D, 4).unwrap();
        let l3 = Weight::fundamental(&d4, 3).unwrap();
        assert_eq!(dual_weight(&l3), l3);
    }

    #[test]
    fn p_restricted_examples() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        assert!(is_p_restricted(&Weight::new(&a2, vec![1, 1]).unwrap(), 3).unwrap());
        assert!(!is_p_restricted(&Weight::new(&a2, vec![3, 0]).unwrap(), 3).unwrap());
        assert!(is_p_restricted(&Weight::new(&a2, vec![40, 7]).unwrap(), 0).unwrap());
        assert!(is_p_restricted(&Weight::new(&a2, vec![-1, 0]).unwrap(), 3).is_err());
        assert!(is_p_restricted(&Weight::new(&a2, vec![1, 0]).unwrap(), 4).is_err());
    }
}
