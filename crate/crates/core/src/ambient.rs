//! Orthonormal ε-coordinate realizations of the classical weight lattices.
//!
//! These are internal: every public type carries fundamental coordinates.
//! Conventions (x = ε-coordinates of a weight):
//!
//! * `A_n`: x ∈ Q^{n+1} modulo (1,…,1); λ_i = ε_1+…+ε_i; a_i = x_i − x_{i+1}.
//! * `B_n`: λ_i = ε_1+…+ε_i (i < n), λ_n = ½Σε; a_n = 2x_n.
//! * `C_n`: λ_i = ε_1+…+ε_i; a_n = x_n.
//! * `D_n`: λ_i = ε_1+…+ε_i (i ≤ n−2), λ_{n−1} = ½(ε_1+…+ε_{n−1}−ε_n),
//!   λ_n = ½Σε; a_n = x_{n−1} + x_n.
//!
//! The degenerate forms `B_1`, `C_1` and `D_2` used for subgroup factors
//! follow the same formulas.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::rootsys::Family;

/// Number of ε-coordinates.
pub(crate) fn eps_len(family: Family, rank: usize) -> usize {
    match family {
        Family::A => rank + 1,
        _ => rank,
    }
}

/// ε-coordinates of `λ_j` (1-based), doubled so that they are integers.
pub(crate) fn fundamental_eps_doubled(family: Family, rank: usize, j: usize) -> Vec<i64> {
    let len = eps_len(family, rank);
    let mut x = vec![0i64; len];
    let half_spin = match family {
        Family::B => j == rank,
        Family::D => j + 1 >= rank,
        _ => false,
    };
    if half_spin {
        for v in x.iter_mut() {
            *v = 1;
        }
        if family == Family::D && j + 1 == rank {
            x[rank - 1] = -1;
        }
    } else {
        for v in x.iter_mut().take(j) {
            *v = 2;
        }
    }
    x
}

/// Doubled ε-coordinates of a weight given in fundamental coordinates.
pub(crate) fn fund_to_eps_doubled(family: Family, rank: usize, a: &[i64]) -> Vec<i64> {
    let mut x = vec![0i64; eps_len(family, rank)];
    for (j, &aj) in a.iter().enumerate() {
        if aj == 0 {
            continue;
        }
        for (xi, fi) in x.iter_mut().zip(fundamental_eps_doubled(family, rank, j + 1)) {
            *xi += aj * fi;
        }
    }
    x
}

/// Fundamental coordinates of a weight with doubled ε-coordinates `xx`.
/// Returns `None` when the result is not integral.
pub(crate) fn eps_doubled_to_fund(family: Family, rank: usize, xx: &[i64]) -> Option<Vec<i64>> {
    let mut a = Vec::with_capacity(rank);
    let half = |v: i64| if v % 2 == 0 { Some(v / 2) } else { None };
    let last = rank - 1;
    for i in 0..rank {
        let v = if i < last || family == Family::A {
            half(xx[i] - xx[i + 1])?
        } else {
            match family {
                Family::B => xx[i],
                Family::C => half(xx[i])?,
                Family::D => {
                    if rank == 1 {
                        return None;
                    }
                    half(xx[i - 1] + xx[i])?
                }
                Family::A => unreachable!(),
            }
        };
        a.push(v);
    }
    Some(a)
}

/// Integer key whose lexicographic order is a dominant regular order on
/// weights: doubled ε-coordinates, shifted to the sum-zero hyperplane for
/// type `A`.
pub(crate) fn lex_key(family: Family, rank: usize, a: &[i64]) -> Vec<i64> {
    let xx = fund_to_eps_doubled(family, rank, a);
    if family == Family::A {
        let len = xx.len() as i64;
        let s: i64 = xx.iter().sum();
        xx.iter().map(|v| v * len - s).collect()
    } else {
        xx
    }
}

pub(crate) fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_all_families() {
        for fam in [Family::A, Family::B, Family::C, Family::D] {
            for n in 2..=7 {
                for j in 1..=n {
                    let mut a = vec![0i64; n];
                    a[j - 1] = 1;
                    let xx = fund_to_eps_doubled(fam, n, &a);
                    assert_eq!(eps_doubled_to_fund(fam, n, &xx).unwrap(), a, "{fam}{n} λ_{j}");
                }
            }
        }
    }

    #[test]
    fn degenerate_factor_forms() {
        assert_eq!(eps_doubled_to_fund(Family::B, 1, &[1]).unwrap(), vec![1]);
        assert_eq!(eps_doubled_to_fund(Family::C, 1, &[2]).unwrap(), vec![1]);
        assert_eq!(eps_doubled_to_fund(Family::D, 2, &[2, 0]).unwrap(), vec![1, 1]);
        assert_eq!(fund_to_eps_doubled(Family::D, 2, &[1, 0]), vec![1, -1]);
    }
}
