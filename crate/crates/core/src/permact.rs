//! Permutation groups given by generators: orbits on ordered tuples and on
//! subsets, and the transitivity criterion for wedge modules restricted to
//! a torus normalizer.
//!
//! Orbits on ordered `t`-tuples are computed by a layered breadth-first
//! closure over a flat bitset indexed by the tuple packed in base `degree`.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A permutation group of degree `n` acting on `{1, …, n}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    name: String,
    degree: usize,
    generators: Vec<Vec<u32>>,
}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree {})", self.name, self.degree)
    }
}

const M11: &str = include_str!("../fixtures/perm/m11.perm");
const M12: &str = include_str!("../fixtures/perm/m12.perm");
const M23: &str = include_str!("../fixtures/perm/m23.perm");
const M24: &str = include_str!("../fixtures/perm/m24.perm");

/// Parses disjoint cycle notation such as `(1,2,3)(4,5)`; `()` is the
/// identity.
fn parse_cycles(degree: usize, text: &str) -> std::result::Result<Vec<u32>, String> {
    let mut image: Vec<u32> = (0..degree as u32).collect();
    let mut seen = vec![false; degree];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected '(' at {rest:?}"))?;
        let close = body.find(')').ok_or("unclosed cycle")?;
        let inner = body[..close].trim();
        rest = body[close + 1..].trim_start();
        if inner.is_empty() {
            continue;
        }
        let points = inner
            .split(',')
            .map(|s| {
                let p: usize = s.trim().parse().map_err(|_| format!("bad point {s:?}"))?;
                if p == 0 || p > degree {
                    return Err(format!("point {p} outside 1..={degree}"));
                }
                Ok(p - 1)
            })
            .collect::<std::result::Result<Vec<usize>, String>>()?;
        for &p in &points {
            if std::mem::replace(&mut seen[p], true) {
                return Err(format!("point {} repeated", p + 1));
            }
        }
        for (i, &p) in points.iter().enumerate() {
            image[p] = points[(i + 1) % points.len()] as u32;
        }
    }
    Ok(image)
}

impl PermGroup {
    /// Builds a group from 0-based image vectors, checking that each is a
    /// bijection of `0..degree`.
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Vec<u32>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Perm("degree must be positive".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            let mut hit = vec![false; degree];
            if g.len() != degree
                || g.iter()
                    .any(|&x| (x as usize) >= degree || std::mem::replace(&mut hit[x as usize], true))
            {
                return Err(Error::Perm(format!(
                    "generator {} is not a permutation of degree {degree}",
                    i + 1
                )));
            }
        }
        Ok(PermGroup {
            name: name.into(),
            degree,
            generators,
        })
    }

    /// Builds a group from generators in 1-based cycle notation.
    pub fn from_cycles(name: impl Into<String>, degree: usize, cycles: &[&str]) -> Result<Self> {
        let gens = cycles
            .iter()
            .map(|c| parse_cycles(degree, c).map_err(Error::Perm))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(name, degree, gens)
    }

    /// Parses the fixture format: a `degree N` header, then one generator
    /// per line in cycle notation. `#` starts a comment.
    pub fn parse(source_name: &str, text: &str) -> Result<Self> {
        let mut degree = None;
        let mut gens = Vec::new();
        let err = |line: usize, message: String| Error::Parse {
            source_name: source_name.to_string(),
            line,
            message,
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match degree {
                None => {
                    let n = line
                        .strip_prefix("degree")
                        .and_then(|s| s.trim().parse::<usize>().ok())
                        .ok_or_else(|| err(idx + 1, "expected header `degree N`".into()))?;
                    degree = Some(n);
                }
                Some(n) => gens.push(parse_cycles(n, line).map_err(|m| err(idx + 1, m))?),
            }
        }
        let degree = degree.ok_or_else(|| err(1, "missing `degree N` header".into()))?;
        let name = std::path::Path::new(source_name)
            .file_stem()
            .map_or(source_name.to_string(), |s| s.to_string_lossy().into_owned());
        PermGroup::new(name, degree, gens)
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<u32> = (0..n as u32).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        if n >= 3 {
            gens.push((0..n as u32).map(|i| (i + 1) % n as u32).collect());
        }
        PermGroup {
            name: format!("Sym{n}"),
            degree: n,
            generators: gens,
        }
    }

    /// Generated by the 3-cycles `(i, i+1, i+2)`.
    pub fn alternating(n: usize) -> PermGroup {
        let gens = (0..n.saturating_sub(2))
            .map(|i| {
                let mut g: Vec<u32> = (0..n as u32).collect();
                g[i] = i as u32 + 1;
                g[i + 1] = i as u32 + 2;
                g[i + 2] = i as u32;
                g
            })
            .collect();
        PermGroup {
            name: format!("Alt{n}"),
            degree: n,
            generators: gens,
        }
    }

    /// Generated by one `n`-cycle.
    pub fn cyclic(n: usize) -> PermGroup {
        PermGroup {
            name: format!("Z{n}"),
            degree: n,
            generators: vec![(0..n as u32).map(|i| (i + 1) % n as u32).collect()],
        }
    }

    /// Generated by an `n`-cycle and a reflection.
    pub fn dihedral(n: usize) -> PermGroup {
        let mut g = PermGroup::cyclic(n);
        g.generators
            .push((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect());
        g.name = format!("Dih{n}");
        g
    }

    /// One of the bundled Mathieu groups `M11`, `M12`, `M23`, `M24`, checked
    /// on first load to be exactly 4-, 5-, 4- and 5-transitive respectively.
    pub fn mathieu(name: &str) -> Result<PermGroup> {
        static CACHE: [OnceLock<std::result::Result<PermGroup, String>>; 4] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let (slot, text, t) = match name {
            "M11" => (0, M11, 4),
            "M12" => (1, M12, 5),
            "M23" => (2, M23, 4),
            "M24" => (3, M24, 5),
            other => return Err(Error::Perm(format!("no bundled group named {other}"))),
        };
        CACHE[slot]
            .get_or_init(|| {
                let load = || -> Result<PermGroup> {
                    let g = PermGroup::parse(&format!("{name}.perm"), text)?;
                    if !is_t_transitive(&g, t)? || is_t_transitive(&g, t + 1)? {
                        return Err(Error::Perm(format!(
                            "bundled {name} generators are not exactly {t}-transitive"
                        )));
                    }
                    Ok(g)
                };
                load().map_err(|e| e.to_string())
            })
            .clone()
            .map_err(Error::Perm)
    }

    /// Resolves `sym:N`, `alt:N`, `cyclic:N`, `dihedral:N` or a Mathieu name.
    pub fn by_name(spec: &str) -> Result<PermGroup> {
        let bad = || Error::Perm(format!("unknown group {spec:?}"));
        if let Some((kind, n)) = spec.split_once(':') {
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            match kind.trim() {
                "sym" => Ok(PermGroup::symmetric(n)),
                "alt" => Ok(PermGroup::alternating(n)),
                "cyclic" => Ok(PermGroup::cyclic(n)),
                "dihedral" => Ok(PermGroup::dihedral(n)),
                _ => Err(bad()),
            }
        } else {
            PermGroup::mathieu(spec.trim())
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// True iff every generator is an even permutation.
    pub fn is_even(&self) -> bool {
        self.generators.iter().all(|g| {
            let mut seen = vec![false; g.len()];
            let mut transpositions = 0;
            for start in 0..g.len() {
                let mut len = 0;
                let mut p = start;
                while !seen[p] {
                    seen[p] = true;
                    p = g[p] as usize;
                    len += 1;
                }
                if len > 0 {
                    transpositions += len - 1;
                }
            }
            transpositions % 2 == 0
        })
    }
}

/// `n (n−1) ⋯ (n−t+1)`.
pub fn falling_factorial(n: u64, t: u64) -> u64 {
    (0..t).map(|i| n - i).product()
}

/// Above this many bits the tuple bitset is refused.
const MAX_TUPLE_BITS: u64 = 1 << 33;

/// Size of the orbit of the ordered tuple `(1, 2, …, t)`.
pub fn tuple_orbit_size(g: &PermGroup, t: usize) -> Result<u64> {
    let n = g.degree;
    if t == 0 || t > n {
        return Err(Error::Perm(format!("tuple length {t} outside 1..={n}")));
    }
    let bits = (n as u64)
        .checked_pow(t as u32)
        .filter(|&b| b <= MAX_TUPLE_BITS)
        .ok_or_else(|| Error::Perm(format!("{n}^{t} tuples exceed the search limit")))?;
    let words = bits.div_ceil(64) as usize;
    let mut visited = vec![0u64; words];
    let mut frontier = vec![0u64; words];
    let mut next = vec![0u64; words];
    let n64 = n as u64;
    let start = (0..t as u64).fold(0u64, |acc, i| acc * n64 + i);
    visited[(start / 64) as usize] |= 1 << (start % 64);
    frontier[(start / 64) as usize] |= 1 << (start % 64);
    let mut count = 1u64;
    let mut digits = vec![0u32; t];
    loop {
        let mut grew = false;
        for (wi, word) in frontier.iter_mut().enumerate() {
            let mut bitsw = std::mem::take(word);
            while bitsw != 0 {
                let b = bitsw.trailing_zeros() as u64;
                bitsw &= bitsw - 1;
                let mut code = wi as u64 * 64 + b;
                for d in digits.iter_mut().rev() {
                    *d = (code % n64) as u32;
                    code /= n64;
                }
                for gen in &g.generators {
                    let image = digits
                        .iter()
                        .fold(0u64, |acc, &d| acc * n64 + gen[d as usize] as u64);
                    let (iw, ib) = ((image / 64) as usize, image % 64);
                    if visited[iw] & (1 << ib) == 0 {
                        visited[iw] |= 1 << ib;
                        next[iw] |= 1 << ib;
                        count += 1;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    Ok(count)
}

/// True iff the group has a single orbit on ordered `t`-tuples of distinct
/// points.
pub fn is_t_transitive(g: &PermGroup, t: usize) -> Result<bool> {
    if t > g.degree {
        return Err(Error::Perm(format!(
            "t = {t} exceeds the degree {}",
            g.degree
        )));
    }
    if t == 0 {
        return Ok(true);
    }
    Ok(tuple_orbit_size(g, t)? == falling_factorial(g.degree as u64, t as u64))
}

/// Orbit sizes on `k`-subsets, descending.
pub fn orbits_on_k_subsets(g: &PermGroup, k: usize) -> Result<Vec<u64>> {
    let n = g.degree;
    if k > n {
        return Err(Error::Perm(format!("k = {k} exceeds the degree {n}")));
    }
    if n > 64 {
        return Err(Error::Perm("subset orbits need degree at most 64".into()));
    }
    let image = |gen: &[u32], mask: u64| -> u64 {
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1 << gen[p];
        }
        out
    };
    let mut seen: HashSet<u64> = HashSet::new();
    let mut sizes = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mask = subset.iter().fold(0u64, |acc, &p| acc | 1 << p);
        if seen.insert(mask) {
            let mut stack = vec![mask];
            let mut size = 1u64;
            while let Some(s) = stack.pop() {
                for gen in &g.generators {
                    let t = image(gen, s);
                    if seen.insert(t) {
                        size += 1;
                        stack.push(t);
                    }
                }
            }
            sizes.push(size);
        }
        // next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                return Ok(sizes);
            }
            i -= 1;
            if subset[i] < n - k + i {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Irreducibility of `V_{A_n}(λ_k)` restricted to `T.X` for `X` the given
/// group of degree `n+1`: `X` must be `min(k, n+1−k)`-transitive.
pub fn torus_irreducibility(g: &PermGroup, n: usize, k: usize) -> Result<bool> {
    if g.degree != n + 1 {
        return Err(Error::Perm(format!(
            "group has degree {} but A_{n} needs degree {}",
            g.degree,
            n + 1
        )));
    }
    if k <= 1 || k >= n {
        return Err(Error::Perm(format!("k = {k} must satisfy 1 < k < {n}")));
    }
    is_t_transitive(g, k.min(n + 1 - k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        assert!(is_t_transitive(&PermGroup::symmetric(6), 3).unwrap());
        assert!(is_t_transitive(&PermGroup::symmetric(6), 6).unwrap());
        let z6 = PermGroup::cyclic(6);
        assert!(is_t_transitive(&z6, 1).unwrap());
        assert!(!is_t_transitive(&z6, 2).unwrap());
        assert_eq!(tuple_orbit_size(&z6, 2).unwrap(), 6);
        assert!(is_t_transitive(&z6, 7).is_err());
        assert!(is_t_transitive(&PermGroup::alternating(6), 4).unwrap());
        assert!(!is_t_transitive(&PermGroup::alternating(6), 5).unwrap());
    }

    #[test]
    fn subset_orbits() {
        assert_eq!(orbits_on_k_subsets(&PermGroup::cyclic(6), 2).unwrap(), vec![6, 6, 3]);
        assert_eq!(orbits_on_k_subsets(&PermGroup::symmetric(7), 3).unwrap(), vec![35]);
        assert_eq!(orbits_on_k_subsets(&PermGroup::cyclic(5), 0).unwrap(), vec![1]);
    }

    #[test]
    fn torus_criterion() {
        assert!(torus_irreducibility(&PermGroup::symmetric(6), 5, 2).unwrap());
        assert!(!torus_irreducibility(&PermGroup::cyclic(6), 5, 2).unwrap());
        assert!(torus_irreducibility(&PermGroup::cyclic(6), 5, 1).is_err());
        assert!(torus_irreducibility(&PermGroup::cyclic(6), 4, 2).is_err());
    }

    #[test]
    fn parsing() {
        let g = PermGroup::parse("t.perm", "# comment\ndegree 4\n(1,2)(3,4)\n(1,2,3)\n").unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.generators()[0], vec![1, 0, 3, 2]);
        assert!(g.is_even());
        match PermGroup::parse("bad.perm", "degree 4\n(1,5)\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(PermGroup::parse("bad.perm", "(1,2)\n").is_err());
        assert!(PermGroup::from_cycles("x", 3, &["(1,2)(2,3)"]).is_err());
        assert!(!PermGroup::symmetric(5).is_even());
        assert!(PermGroup::alternating(7).is_even());
    }

    #[test]
    fn small_mathieu_groups() {
        let m11 = PermGroup::mathieu("M11").unwrap();
        assert_eq!(m11.degree(), 11);
        let m12 = PermGroup::mathieu("M12").unwrap();
        assert_eq!(orbits_on_k_subsets(&m12, 4).unwrap(), vec![495]);
        assert!(PermGroup::mathieu("M13").is_err());
    }
}
