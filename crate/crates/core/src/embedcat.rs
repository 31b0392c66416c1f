//! Catalog of explicit subgroup embeddings and characteristic-zero branching.
//!
//! Every embedding `H < G` is compiled to one exact matrix whose row `j` is
//! the restriction of `λ_j` to the maximal torus of `H`, written over the
//! concatenated fundamental weights of the simple factors of `H`, followed by
//! coordinates for a central torus. Recipes come in four styles:
//!
//! * images of the ambient ε-coordinates (form stabilizers and perpendicular
//!   splittings),
//! * images of the ambient simple roots,
//! * tensor products and irreducible modules, where the weights of the
//!   natural module of `G` are assigned to `ε_1, ε_2, …` in descending
//!   lexicographic order,
//! * the identity onto a maximal torus.
//!
//! Construction always validates the matrix by restricting the natural
//! module of `G` and comparing it with the natural module of `H` that the
//! recipe prescribes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ambient;
use crate::error::{Error, Result};
use crate::rootsys::{
    build_factor_system, build_root_system, format_coeffs, Family, RootSystem, Weight,
    WeightMultiset,
};
use crate::weylchar::{full_character_coeffs, weyl_dim_coeffs};

/// A catalog parameter: a single integer or a list of integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    List(Vec<i64>),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// Builds a parameter map from integer pairs, for tests and callers that
/// only use scalar parameters.
pub fn int_params(pairs: &[(&str, i64)]) -> Params {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), ParamValue::Int(*v)))
        .collect()
}

/// How a catalog entry is specified before compilation to a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recipe {
    Torus,
    FormStabilizer,
    Perpendicular,
    SimpleRootImages,
    Tensor,
    Irreducible,
    Levi,
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Recipe::Torus => "torus",
            Recipe::FormStabilizer => "form-stabilizer",
            Recipe::Perpendicular => "perpendicular",
            Recipe::SimpleRootImages => "simple-root-images",
            Recipe::Tensor => "tensor",
            Recipe::Irreducible => "irreducible",
            Recipe::Levi => "levi",
        };
        f.write_str(s)
    }
}

/// Simple factors and central torus rank of a connected subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDescriptor {
    pub factors: Vec<(Family, usize)>,
    pub central_torus_rank: usize,
    pub label: String,
}

impl fmt::Display for SubgroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Restriction of one weight: per-factor fundamental coordinates plus
/// central torus coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Restriction {
    pub parts: Vec<Vec<i64>>,
    pub torus: Vec<i64>,
}

impl Restriction {
    /// Renders as `2ω_{1,2} + ω_{2,3}`; a single factor drops the factor
    /// index, torus coordinates are appended as `t(..)`.
    pub fn omega_string(&self) -> String {
        let single = self.parts.len() == 1;
        let mut terms = Vec::new();
        for (fi, part) in self.parts.iter().enumerate() {
            for (j, &c) in part.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let sym = if single {
                    format!("ω_{}", j + 1)
                } else {
                    format!("ω_{{{},{}}}", fi + 1, j + 1)
                };
                terms.push(match c {
                    1 => sym,
                    -1 => format!("-{sym}"),
                    _ => format!("{c}{sym}"),
                });
            }
        }
        let mut out = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        if !self.torus.is_empty() {
            out.push_str(&format!(" t{}", format_coeffs(&self.torus)));
        }
        out
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.parts.iter().map(|p| format_coeffs(p)).collect();
        if !self.torus.is_empty() {
            parts.push(format!("t{}", format_coeffs(&self.torus)));
        }
        f.write_str(&parts.join(" "))
    }
}

/// An embedding `H < G` compiled to an exact weight-lattice matrix.
#[derive(Debug, Clone)]
pub struct Embedding {
    id: u32,
    params: Params,
    ambient: Arc<RootSystem>,
    subgroup: SubgroupDescriptor,
    factor_systems: Vec<Arc<RootSystem>>,
    matrix: Vec<Vec<BigRational>>,
    int_matrix: Vec<Vec<i64>>,
    recipe: Recipe,
    prescribed_natural: WeightMultiset,
}

impl Embedding {
    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn ambient(&self) -> &Arc<RootSystem> {
        &self.ambient
    }

    pub fn subgroup(&self) -> &SubgroupDescriptor {
        &self.subgroup
    }

    pub fn factor_systems(&self) -> &[Arc<RootSystem>] {
        &self.factor_systems
    }

    /// Row `j` is the restriction of `λ_{j+1}`.
    pub fn matrix(&self) -> &[Vec<BigRational>] {
        &self.matrix
    }

    pub fn recipe(&self) -> Recipe {
        self.recipe
    }

    fn width(&self) -> usize {
        self.int_matrix.first().map_or(0, |r| r.len())
    }

    pub(crate) fn restrict_coeffs(&self, a: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.width()];
        for (&aj, row) in a.iter().zip(&self.int_matrix) {
            if aj == 0 {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o += aj * r;
            }
        }
        out
    }

    pub(crate) fn split(&self, v: &[i64]) -> Restriction {
        let mut parts = Vec::with_capacity(self.factor_systems.len());
        let mut at = 0;
        for sys in &self.factor_systems {
            parts.push(v[at..at + sys.rank()].to_vec());
            at += sys.rank();
        }
        Restriction {
            parts,
            torus: v[at..].to_vec(),
        }
    }

    fn height2(&self, v: &[i64]) -> i64 {
        let mut at = 0;
        let mut h = 0;
        for sys in &self.factor_systems {
            h += sys.height2(&v[at..at + sys.rank()]);
            at += sys.rank();
        }
        h
    }
}

// ---------------------------------------------------------------------------
// construction helpers

struct Layout {
    factors: Vec<Arc<RootSystem>>,
    offsets: Vec<usize>,
    torus_rank: usize,
    width: usize,
}

impl Layout {
    fn new(factors: Vec<Arc<RootSystem>>, torus_rank: usize) -> Layout {
        let mut offsets = Vec::with_capacity(factors.len());
        let mut at = 0;
        for f in &factors {
            offsets.push(at);
            at += f.rank();
        }
        Layout {
            factors,
            offsets,
            torus_rank,
            width: at + torus_rank,
        }
    }

    fn zero(&self) -> Vec<i64> {
        vec![0; self.width]
    }

    fn place(&self, v: &mut [i64], f: usize, part: &[i64]) {
        for (x, y) in v[self.offsets[f]..].iter_mut().zip(part) {
            *x += y;
        }
    }

    /// `sign · e_i` of factor `f` (0-based `i`) in concatenated coordinates.
    fn eps(&self, f: usize, i: usize, sign: i64) -> Vec<i64> {
        let sys = &self.factors[f];
        let mut xx = vec![0i64; ambient::eps_len(sys.family(), sys.rank())];
        xx[i] = 2 * sign;
        let part = ambient::eps_doubled_to_fund(sys.family(), sys.rank(), &xx)
            .expect("unit ε vectors are weights");
        let mut v = self.zero();
        self.place(&mut v, f, &part);
        v
    }

    fn torus(&self, t: usize, value: i64) -> Vec<i64> {
        let mut v = self.zero();
        v[self.width - self.torus_rank + t] = value;
        v
    }

    fn natural(&self, f: usize) -> Vec<Vec<i64>> {
        let sys = &self.factors[f];
        natural_weights(sys.family(), sys.rank())
            .into_iter()
            .map(|part| {
                let mut v = self.zero();
                self.place(&mut v, f, &part);
                v
            })
            .collect()
    }

    fn key(&self, v: &[i64]) -> Vec<i64> {
        let mut key = Vec::new();
        for (f, sys) in self.factors.iter().enumerate() {
            let part = &v[self.offsets[f]..self.offsets[f] + sys.rank()];
            key.extend(ambient::lex_key(sys.family(), sys.rank(), part));
        }
        key.extend_from_slice(&v[self.width - self.torus_rank..]);
        key
    }
}

fn add(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn neg(x: &[i64]) -> Vec<i64> {
    x.iter().map(|a| -a).collect()
}

/// Weights of the natural module in fundamental coordinates (`B_1` gives the
/// 3-dimensional module, `C_1` the 2-dimensional one).
pub(crate) fn natural_weights(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let len = ambient::eps_len(family, rank);
    let mut out = Vec::new();
    for i in 0..len {
        for sign in [1i64, -1] {
            if sign < 0 && family == Family::A {
                continue;
            }
            let mut xx = vec![0i64; len];
            xx[i] = 2 * sign;
            out.push(ambient::eps_doubled_to_fund(family, rank, &xx).expect("natural weights"));
        }
    }
    if family == Family::B {
        out.push(vec![0; rank]);
    }
    out
}

fn to_multiset(list: impl IntoIterator<Item = Vec<i64>>) -> WeightMultiset {
    let mut m = WeightMultiset::new();
    for w in list {
        *m.entry(w).or_insert(0) += 1;
    }
    m
}

fn tensor_naturals(layout: &Layout) -> Vec<Vec<i64>> {
    let mut acc = vec![layout.zero()];
    for f in 0..layout.factors.len() {
        let nat = layout.natural(f);
        acc = acc
            .iter()
            .flat_map(|a| nat.iter().map(move |b| add(a, b)))
            .collect();
    }
    acc
}

enum Images {
    Eps(Vec<Vec<i64>>),
    SimpleRoots(Vec<Vec<i64>>),
}

struct Plan {
    ambient: Arc<RootSystem>,
    layout: Layout,
    recipe: Recipe,
    label: String,
    images: Images,
    prescribed: Vec<Vec<i64>>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn compile(plan: &Plan) -> Result<Vec<Vec<BigRational>>> {
    let sys = &plan.ambient;
    let n = sys.rank();
    let width = plan.layout.width;
    match &plan.images {
        Images::Eps(img) => {
            if sys.family() == Family::A {
                let total = img.iter().fold(vec![0i64; width], |acc, v| add(&acc, v));
                if total.iter().any(|&x| x != 0) {
                    return Err(Error::Invalid(format!(
                        "ε-images of a type A embedding must sum to zero, got {}",
                        format_coeffs(&total)
                    )));
                }
            }
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            Ok((1..=n)
                .map(|j| {
                    let lam = ambient::fundamental_eps_doubled(sys.family(), n, j);
                    let mut row = vec![0i64; width];
                    for (c, v) in lam.iter().zip(img) {
                        for (r, x) in row.iter_mut().zip(v) {
                            *r += c * x;
                        }
                    }
                    row.iter().map(|&x| q(x) * &half).collect()
                })
                .collect())
        }
        Images::SimpleRoots(img) => {
            let inv = sys.inverse_cartan();
            Ok((0..n)
                .map(|j| {
                    (0..width)
                        .map(|c| {
                            (0..n).fold(BigRational::zero(), |acc, k| {
                                acc + &inv[j][k] * q(img[k][c])
                            })
                        })
                        .collect()
                })
                .collect())
        }
    }
}

fn lex_images(
    ambient_sys: &RootSystem,
    layout: &Layout,
    weights: &[Vec<i64>],
) -> Result<Vec<Vec<i64>>> {
    let mut sorted: Vec<(Vec<i64>, &Vec<i64>)> =
        weights.iter().map(|w| (layout.key(w), w)).collect();
    sorted.sort_by(|a, b| b.0.cmp(&a.0));
    let n = ambient_sys.rank();
    let take = match ambient_sys.family() {
        Family::A => n + 1,
        _ => n,
    };
    if sorted.len() < take {
        return Err(Error::Invalid(format!(
            "module of dimension {} is too small for {ambient_sys}",
            sorted.len()
        )));
    }
    Ok(sorted.into_iter().take(take).map(|(_, w)| w.clone()).collect())
}

fn inadmissible(id: u32, message: impl Into<String>) -> Error {
    Error::InadmissibleParams {
        id,
        message: message.into(),
        constraints: entry_info(id).map_or("none", |e| e.constraints).to_string(),
    }
}

fn int_param(id: u32, params: &Params, name: &str) -> Result<i64> {
    match params.get(name) {
        Some(ParamValue::Int(v)) => Ok(*v),
        Some(ParamValue::List(_)) => Err(inadmissible(id, format!("parameter {name} must be an integer"))),
        None => Err(inadmissible(id, format!("missing parameter {name}"))),
    }
}

fn list_param(id: u32, params: &Params, name: &str) -> Result<Vec<i64>> {
    match params.get(name) {
        Some(ParamValue::List(v)) => Ok(v.clone()),
        Some(ParamValue::Int(v)) => Ok(vec![*v]),
        None => Err(inadmissible(id, format!("missing parameter {name}"))),
    }
}

fn check_param_names(id: u32, params: &Params) -> Result<()> {
    let info = entry_info(id).ok_or_else(|| Error::UnknownCatalog(id.to_string()))?;
    for k in params.keys() {
        if !info.params.contains(&k.as_str()) {
            return Err(inadmissible(id, format!("unexpected parameter {k}")));
        }
    }
    Ok(())
}

fn sys(f: Family, n: usize) -> Result<Arc<RootSystem>> {
    build_root_system(f, n)
}

fn fsys(f: Family, n: usize) -> Result<Arc<RootSystem>> {
    build_factor_system(f, n)
}

fn label_of(factors: &[Arc<RootSystem>], torus: usize, ambient_sys: &RootSystem, tag: &str) -> String {
    let mut parts: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
    if torus > 0 {
        parts.push(format!("T{torus}"));
    }
    format!("{} < {ambient_sys} ({tag})", parts.join(" x "))
}

/// Form stabilizer in `A_{N}` with `ε_i ↦ e_i`, `ε_{N+2−i} ↦ −e_i` and the
/// middle coordinate sent to zero when `N+1` is odd.
fn folded(family: Family, m: usize) -> Result<Plan> {
    let dim = match family {
        Family::B => 2 * m + 1,
        _ => 2 * m,
    };
    let ambient_sys = sys(Family::A, dim - 1)?;
    let layout = Layout::new(vec![fsys(family, m)?], 0);
    let mut img = vec![layout.zero(); dim];
    for i in 0..m {
        img[i] = layout.eps(0, i, 1);
        img[dim - 1 - i] = layout.eps(0, i, -1);
    }
    let prescribed = layout.natural(0);
    Ok(Plan {
        label: label_of(&layout.factors, 0, &ambient_sys, "form stabilizer"),
        ambient: ambient_sys,
        layout,
        recipe: Recipe::FormStabilizer,
        images: Images::Eps(img),
        prescribed,
    })
}

/// `B_l × B_{n−l−1} < D_n` from simple-root images; `l = 0` gives
/// `B_{n−1} < D_n`.
fn odd_split_by_roots(n: usize, l: usize) -> Result<Plan> {
    let ambient_sys = sys(Family::D, n)?;
    let r = n - l - 1;
    let mut factors = Vec::new();
    if l > 0 {
        factors.push(fsys(Family::B, l)?);
    }
    factors.push(fsys(Family::B, r)?);
    let layout = Layout::new(factors, 0);
    let second = if l > 0 { 1 } else { 0 };
    let root = |f: usize, i: usize| {
        let mut v = layout.zero();
        layout.place(&mut v, f, layout.factors[f].simple_root(i));
        v
    };
    let mut img = Vec::with_capacity(n);
    for i in 0..l.saturating_sub(1) {
        img.push(root(0, i));
    }
    if l > 0 {
        // β_l − (γ_1 + … + γ_r)
        let mut v = root(0, l - 1);
        for j in 0..r {
            v = add(&v, &neg(&root(second, j)));
        }
        img.push(v);
    }
    for j in 0..r {
        img.push(root(second, j));
    }
    img.push(root(second, r - 1));
    debug_assert_eq!(img.len(), n);
    let mut prescribed = Vec::new();
    for f in 0..layout.factors.len() {
        prescribed.extend(layout.natural(f));
    }
    if l == 0 {
        prescribed.push(layout.zero());
    }
    Ok(Plan {
        label: label_of(&layout.factors, 0, &ambient_sys, "orthogonal splitting"),
        ambient: ambient_sys,
        layout,
        recipe: Recipe::SimpleRootImages,
        images: Images::SimpleRoots(img),
        prescribed,
    })
}

/// `B_a × D_b < D_{(2a+1)b}` as a tensor product, from simple-root images.
fn tensor_bd_by_roots(a: usize, b: usize) -> Result<Plan> {
    let n = (2 * a + 1) * b;
    let ambient_sys = sys(Family::D, n)?;
    let layout = Layout::new(vec![fsys(Family::B, a)?, fsys(Family::D, b)?], 0);
    let beta = |i: usize| {
        let mut v = layout.zero();
        layout.place(&mut v, 0, layout.factors[0].simple_root(i - 1));
        v
    };
    let gamma = |j: usize| {
        let mut v = layout.zero();
        layout.place(&mut v, 1, layout.factors[1].simple_root(j - 1));
        v
    };
    // β_0 = 2e_1, twice the highest short root of B_a
    let beta0 = {
        let e1 = layout.eps(0, 0, 1);
        add(&e1, &e1)
    };
    let block = 2 * a + 1;
    let mut img = Vec::with_capacity(n);
    for k in 1..=n {
        let (j, i) = (k / block, k % block);
        let v = if k == n {
            // α_n ↦ γ_b − γ_{b−1} − β_0 + β_1
            add(&add(&gamma(b), &neg(&gamma(b - 1))), &add(&neg(&beta0), &beta(1)))
        } else if i == 0 {
            add(&gamma(j), &neg(&beta0))
        } else {
            beta(i.min(block - i))
        };
        img.push(v);
    }
    let prescribed = tensor_naturals(&layout);
    Ok(Plan {
        label: label_of(&layout.factors, 0, &ambient_sys, "tensor"),
        ambient: ambient_sys,
        layout,
        recipe: Recipe::SimpleRootImages,
        images: Images::SimpleRoots(img),
        prescribed,
    })
}

fn tensor_plan(ambient_sys: Arc<RootSystem>, factors: Vec<Arc<RootSystem>>) -> Result<Plan> {
    let layout = Layout::new(factors, 0);
    let prescribed = tensor_naturals(&layout);
    let img = lex_images(&ambient_sys, &layout, &prescribed)?;
    Ok(Plan {
        label: label_of(&layout.factors, 0, &ambient_sys, "tensor"),
        ambient: ambient_sys,
        layout,
        recipe: Recipe::Tensor,
        images: Images::Eps(img),
        prescribed,
    })
}

/// `H < G` acting on the irreducible `H`-module `V(ω)`, optionally with
/// `drop_zero` zero weights removed (the module is then the quotient that
/// occurs in small characteristic).
fn irreducible_plan(
    ambient_sys: Arc<RootSystem>,
    h: Arc<RootSystem>,
    omega: Vec<i64>,
    drop_zero: u64,
) -> Result<Plan> {
    let layout = Layout::new(vec![Arc::clone(&h)], 0);
    let mut ch = full_character_coeffs(&h, &omega, u64::MAX)?;
    if drop_zero > 0 {
        let z = ch.get_mut(&vec![0; h.rank()]).ok_or_else(|| {
            Error::Invalid(format!("V{} of {h} has no zero weight", format_coeffs(&omega)))
        })?;
        *z -= drop_zero;
    }
    let mut prescribed = Vec::new();
    let mut keys: Vec<&Vec<i64>> = ch.keys().collect();
    keys.sort();
    for k in keys {
        for _ in 0..ch[k] {
            prescribed.push(k.clone());
        }
    }
    let img = lex_images(&ambient_sys, &layout, &prescribed)?;
    let tag = format!("irreducible on V{}", format_coeffs(&omega));
    Ok(Plan {
        label: label_of(&layout.factors, 0, &ambient_sys, &tag),
        ambient: ambient_sys,
        layout,
        recipe: Recipe::Irreducible,
        images: Images::Eps(img),
        prescribed,
    })
}

/// Identity on shared ε-coordinates, e.g. `D_n < B_n`.
fn same_eps(ambient_sys: Arc<RootSystem>, h: Arc<RootSystem>, extra_zero: bool) -> Result<Plan> {
    let layout = Layout::new(vec![h], 0);
    let img: Vec<Vec<i64>> = (0..ambient_sys.rank()).map(|i| layout.eps(0, i, 1)).collect();
    let mut prescribed = layout.natural(0);
    if extra_zero {
        prescribed.push(layout.zero());
    }
    Ok(Plan {
        label: label_of(&layout.factors, 0, &ambient_sys, "form stabilizer"),
        ambient: ambient_sys,
        layout,
        recipe: Recipe::FormStabilizer,
        images: Images::Eps(img),
        prescribed,
    })
}

/// Perpendicular splitting: consecutive ε-blocks of the ambient system go to
/// the factors in order, leftover coordinates to zero.
fn perpendicular(ambient_sys: Arc<RootSystem>, factors: Vec<Arc<RootSystem>>) -> Result<Plan> {
    let layout = Layout::new(factors, 0);
    let mut img = Vec::new();
    let mut prescribed = Vec::new();
    for (f, h) in layout.factors.iter().enumerate() {
        for i in 0..h.rank() {
            img.push(layout.eps(f, i, 1));
        }
        prescribed.extend(layout.natural(f));
    }
    let used = img.len();
    let n = ambient_sys.rank();
    if used > n {
        return Err(Error::Invalid(format!(
            "factors of total rank {used} do not fit in {ambient_sys}"
        )));
    }
    img.resize(n, layout.zero());
    let ambient_dim = 2 * n + usize::from(ambient_sys.family() == Family::B);
    while prescribed.len() < ambient_dim {
        prescribed.push(layout.zero());
    }
    Ok(Plan {
        label: label_of(&layout.factors, 0, &ambient_sys, "perpendicular"),
        ambient: ambient_sys,
        layout,
        recipe: Recipe::Perpendicular,
        images: Images::Eps(img),
        prescribed,
    })
}

fn plan(id: u32, params: &Params) -> Result<Plan> {
    check_param_names(id, params)?;
    let ge = |name: &str, min: i64| -> Result<usize> {
        let v = int_param(id, params, name)?;
        if v < min {
            return Err(inadmissible(id, format!("{name} = {v} is below {min}")));
        }
        Ok(v as usize)
    };
    match id {
        1 => {
            let n = ge("n", 1)?;
            let ambient_sys = sys(Family::A, n)?;
            let layout = Layout::new(Vec::new(), n);
            let img = (0..=n)
                .map(|i| {
                    let mut xx = vec![0i64; n + 1];
                    xx[i] = 2;
                    let a = ambient::eps_doubled_to_fund(Family::A, n, &xx).expect("weight");
                    a.iter()
                        .enumerate()
                        .fold(layout.zero(), |acc, (t, &c)| add(&acc, &layout.torus(t, c)))
                })
                .collect::<Vec<_>>();
            let prescribed = img.clone();
            Ok(Plan {
                label: format!("T{n} < {ambient_sys} (maximal torus)"),
                ambient: ambient_sys,
                layout,
                recipe: Recipe::Torus,
                images: Images::Eps(img),
                prescribed,
            })
        }
        2 => folded(Family::C, ge("m", 1)?),
        3 => folded(Family::B, ge("m", 1)?),
        4 => folded(Family::D, ge("m", 2)?),
        5 => {
            let n = ge("n", 3)?;
            odd_split_by_roots(n, 0)
        }
        6 => {
            let n = ge("n", 2)?;
            same_eps(sys(Family::B, n)?, fsys(Family::D, n)?, true)
        }
        7 => {
            let n = ge("n", 4)?;
            let l = ge("l", 1)?;
            if 2 * l > n {
                return Err(inadmissible(id, format!("l = {l} exceeds n/2 = {}", n / 2)));
            }
            let ambient_sys = sys(Family::D, n)?;
            if l == 1 {
                // D_1 is a one-dimensional torus; its coordinate is 2x_1 so that
                // the spin weights restrict integrally.
                let layout = Layout::new(vec![fsys(Family::D, n - 1)?], 1);
                let mut img = vec![layout.torus(0, 2)];
                for i in 0..n - 1 {
                    img.push(layout.eps(0, i, 1));
                }
                let mut prescribed = layout.natural(0);
                prescribed.push(layout.torus(0, 2));
                prescribed.push(layout.torus(0, -2));
                Ok(Plan {
                    label: label_of(&layout.factors, 1, &ambient_sys, "perpendicular"),
                    ambient: ambient_sys,
                    layout,
                    recipe: Recipe::Perpendicular,
                    images: Images::Eps(img),
                    prescribed,
                })
            } else {
                perpendicular(ambient_sys, vec![fsys(Family::D, l)?, fsys(Family::D, n - l)?])
            }
        }
        8 => {
            let n = ge("n", 4)?;
            let l = ge("l", 1)?;
            if l + 2 > n {
                return Err(inadmissible(id, format!("l = {l} exceeds n − 2 = {}", n - 2)));
            }
            odd_split_by_roots(n, l)
        }
        9 => {
            let a = ge("a", 1)?;
            let b = ge("b", 2)?;
            tensor_bd_by_roots(a, b)
        }
        10 => {
            let m = ge("m", 1)?;
            perpendicular(sys(Family::C, 2 * m)?, vec![fsys(Family::C, m)?, fsys(Family::C, m)?])
        }
        11 => {
            let m = ge("m", 1)?;
            tensor_plan(
                sys(Family::A, m * (m + 2))?,
                vec![fsys(Family::A, m)?, fsys(Family::A, m)?],
            )
        }
        12 => tensor_plan(sys(Family::C, 4)?, vec![fsys(Family::C, 1)?; 3]),
        13 => tensor_plan(sys(Family::D, 8)?, vec![fsys(Family::C, 1)?; 4]),
        14 => tensor_plan(sys(Family::D, 8)?, vec![fsys(Family::C, 2)?; 2]),
        15 => {
            let n = ge("n", 3)?;
            let ambient_sys = sys(Family::D, n)?;
            let layout = Layout::new(vec![fsys(Family::A, n - 1)?], 1);
            let img: Vec<Vec<i64>> = (0..n)
                .map(|i| add(&layout.eps(0, i, 1), &layout.torus(0, 2)))
                .collect();
            let mut prescribed = Vec::new();
            for w in layout.natural(0) {
                let up = add(&w, &layout.torus(0, 2));
                prescribed.push(neg(&up));
                prescribed.push(up);
            }
            Ok(Plan {
                label: label_of(&layout.factors, 1, &ambient_sys, "Levi"),
                ambient: ambient_sys,
                layout,
                recipe: Recipe::Levi,
                images: Images::Eps(img),
                prescribed,
            })
        }
        16 => tensor_plan(sys(Family::D, 4)?, vec![fsys(Family::C, 1)?; 3]),
        17 => {
            let dims = list_param(id, params, "dims")?;
            if dims.is_empty() {
                return Err(inadmissible(id, "dims must not be empty"));
            }
            if let Some(d) = dims.iter().find(|&&d| d < 3) {
                return Err(inadmissible(id, format!("summand dimension {d} is below 3")));
            }
            let total: i64 = dims.iter().sum();
            let ambient_sys = if total % 2 == 1 {
                sys(Family::B, ((total - 1) / 2) as usize)?
            } else {
                sys(Family::D, (total / 2) as usize)?
            };
            let factors = dims
                .iter()
                .map(|&d| {
                    if d % 2 == 1 {
                        fsys(Family::B, ((d - 1) / 2) as usize)
                    } else {
                        fsys(Family::D, (d / 2) as usize)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            perpendicular(ambient_sys, factors)
        }
        18 => {
            let m = ge("m", 3)?;
            let mut omega = vec![0; m];
            omega[1] = 1;
            irreducible_plan(sys(Family::A, m * (m + 1) / 2 - 1)?, fsys(Family::A, m)?, omega, 0)
        }
        19 => {
            let m = ge("m", 1)?;
            let mut omega = vec![0; m];
            omega[0] = 2;
            irreducible_plan(sys(Family::A, m * (m + 3) / 2)?, fsys(Family::A, m)?, omega, 0)
        }
        20 => irreducible_plan(sys(Family::A, 15)?, fsys(Family::D, 5)?, vec![0, 0, 0, 0, 1], 0),
        21 => irreducible_plan(sys(Family::C, 7)?, fsys(Family::C, 3)?, vec![0, 0, 1], 0),
        22 => irreducible_plan(sys(Family::C, 10)?, fsys(Family::A, 5)?, vec![0, 0, 1, 0, 0], 0),
        23 => irreducible_plan(
            sys(Family::C, 16)?,
            fsys(Family::D, 6)?,
            vec![0, 0, 0, 0, 0, 1],
            0,
        ),
        24 => {
            let n = ge("n", 2)?;
            same_eps(sys(Family::C, n)?, fsys(Family::D, n)?, false)
        }
        25 => irreducible_plan(sys(Family::B, 6)?, fsys(Family::C, 3)?, vec![0, 1, 0], 1),
        26 => irreducible_plan(sys(Family::B, 3)?, fsys(Family::A, 2)?, vec![1, 1], 1),
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}

/// Builds and validates catalog entry `id` for the given parameters.
pub fn catalog(id: u32, params: &Params) -> Result<Embedding> {
    let p = plan(id, params)?;
    let matrix = compile(&p)?;
    let n = p.ambient.rank();
    for i in 0..n {
        // α_i = Σ_j cartan[i][j] λ_j
        let img: Vec<BigRational> = (0..p.layout.width)
            .map(|c| {
                (0..n).fold(BigRational::zero(), |acc, j| {
                    acc + q(p.ambient.cartan()[i][j]) * &matrix[j][c]
                })
            })
            .collect();
        if img.iter().any(|x| !x.is_integer()) {
            return Err(Error::Validation {
                id,
                message: format!("simple root α_{} has non-integral image", i + 1),
            });
        }
    }
    let int_matrix = matrix
        .iter()
        .enumerate()
        .map(|(j, row)| {
            row.iter()
                .map(|x| {
                    ambient::rational_to_i64(x).ok_or_else(|| Error::Validation {
                        id,
                        message: format!("λ_{} restricts to a non-integral weight", j + 1),
                    })
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let subgroup = SubgroupDescriptor {
        factors: p
            .layout
            .factors
            .iter()
            .map(|s| (s.family(), s.rank()))
            .collect(),
        central_torus_rank: p.layout.torus_rank,
        label: p.label,
    };
    let e = Embedding {
        id,
        params: params.clone(),
        ambient: p.ambient,
        subgroup,
        factor_systems: p.layout.factors,
        matrix,
        int_matrix,
        recipe: p.recipe,
        prescribed_natural: to_multiset(p.prescribed),
    };
    validate_embedding(&e)?;
    Ok(e)
}

/// Image of `w` under the embedding matrix, split per factor.
pub fn restrict_weight(e: &Embedding, w: &Weight) -> Result<Restriction> {
    if **w.system() != *e.ambient {
        return Err(Error::SystemMismatch {
            left: w.system().to_string(),
            right: e.ambient.to_string(),
        });
    }
    Ok(e.split(&e.restrict_coeffs(w.coeffs())))
}

/// Outcome of [`validate_embedding`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub id: u32,
    pub natural_dim: u64,
    pub checks: Vec<String>,
}

fn first_difference(x: &WeightMultiset, y: &WeightMultiset) -> Option<(Vec<i64>, u64, u64)> {
    let mut keys: Vec<&Vec<i64>> = x.keys().chain(y.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find_map(|k| {
        let a = x.get(k).copied().unwrap_or(0);
        let b = y.get(k).copied().unwrap_or(0);
        (a != b).then(|| (k.clone(), a, b))
    })
}

/// Closed form for `D_l × D_{n−l} < D_n`: `(first factor, second factor)`
/// restriction of `Σ b_i λ_i`. For `l = 1` the first part is the single
/// torus coordinate.
pub fn split_d_formula(n: usize, l: usize, b: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let bi = |i: usize| if i == 0 { 0 } else { b[i - 1] };
    let middle = bi(l - 1) + 2 * (l..=n - 2).map(bi).sum::<i64>() + bi(n - 1) + bi(n);
    let mut first: Vec<i64> = (1..l).map(bi).collect();
    first.push(middle);
    let second = (1..=n - l).map(|i| bi(l + i)).collect();
    (first, second)
}

/// Re-derives the natural-module restriction and compares it with the
/// recipe's prescription. For `D_l × D_{n−l} < D_n` the closed restriction
/// formula is also checked on every fundamental weight.
pub fn validate_embedding(e: &Embedding) -> Result<ValidationReport> {
    let g = &e.ambient;
    let restricted = to_multiset(
        natural_weights(g.family(), g.rank())
            .iter()
            .map(|w| e.restrict_coeffs(w)),
    );
    if let Some((w, got, want)) = first_difference(&restricted, &e.prescribed_natural) {
        return Err(Error::Validation {
            id: e.id,
            message: format!(
                "natural module: weight {} occurs {got} times after restriction, {want} prescribed",
                e.split(&w)
            ),
        });
    }
    let natural_dim: u64 = restricted.values().sum();
    let mut checks = vec![format!(
        "natural module of {g} restricts to the prescribed {natural_dim} weights"
    )];
    if e.id == 7 {
        let n = g.rank();
        let l = match e.params.get("l") {
            Some(ParamValue::Int(l)) => *l as usize,
            _ => unreachable!("validated parameters"),
        };
        for j in 0..n {
            let mut b = vec![0i64; n];
            b[j] = 1;
            let (first, second) = split_d_formula(n, l, &b);
            let r = e.split(&e.restrict_coeffs(&b));
            let (got_first, got_second) = if l == 1 {
                (r.torus.clone(), r.parts[0].clone())
            } else {
                (r.parts[0].clone(), r.parts[1].clone())
            };
            if got_first != first || got_second != second {
                return Err(Error::Validation {
                    id: e.id,
                    message: format!(
                        "λ_{} restricts to {r}, closed formula gives {} {}",
                        j + 1,
                        format_coeffs(&first),
                        format_coeffs(&second)
                    ),
                });
            }
        }
        checks.push(format!("closed restriction formula holds on λ_1..λ_{n}"));
    }
    Ok(ValidationReport {
        id: e.id,
        natural_dim,
        checks,
    })
}

/// One irreducible constituent of a restriction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchFactor {
    pub highest: Restriction,
    pub multiplicity: u64,
    pub dim: BigUint,
}

/// Characteristic-zero decomposition of a restricted module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchResult {
    pub factors: Vec<BranchFactor>,
    pub total_dim: BigUint,
    pub kappa: u64,
}

/// Entries whose subgroup exists in one positive characteristic only,
/// with that prime. A triple tensor product of symplectic modules is
/// symplectic, and `D_n < C_n` needs `p = 2`; the 13- and 7-dimensional
/// modules of `C_3` and `A_2` drop a trivial constituent only when `p = 3`.
/// Their torus maps stay valid for structural checks.
const MODULAR_ONLY: &[(u32, u64)] = &[(16, 2), (24, 2), (25, 3), (26, 3)];

/// The single characteristic in which catalog entry `id` exists, if it is
/// modular-only.
pub fn modular_only(id: u32) -> Option<u64> {
    MODULAR_ONLY.iter().find(|(i, _)| *i == id).map(|(_, p)| *p)
}

/// Restricts the full character of `V(λ)` and peels off irreducible
/// characters of the subgroup, highest first.
pub fn branch_char0(e: &Embedding, lambda: &Weight, dim_cap: u64) -> Result<BranchResult> {
    if **lambda.system() != *e.ambient {
        return Err(Error::SystemMismatch {
            left: lambda.system().to_string(),
            right: e.ambient.to_string(),
        });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if let Some(p) = modular_only(e.id) {
        return Err(Error::Invalid(format!(
            "catalog {} embeds only in characteristic {p}; use restrict_weight",
            e.id
        )));
    }
    let expected_dim = weyl_dim_coeffs(&e.ambient, lambda.coeffs());
    let ch = full_character_coeffs(&e.ambient, lambda.coeffs(), dim_cap)?;
    let mut residual: HashMap<Vec<i64>, i64> = HashMap::new();
    for (w, m) in ch {
        *residual.entry(e.restrict_coeffs(&w)).or_insert(0) += m as i64;
    }
    let mut order: Vec<(i64, Vec<i64>)> = residual
        .keys()
        .map(|v| (e.height2(v), v.clone()))
        .collect();
    order.sort_by(|a, b| b.cmp(a));

    let ranks: Vec<usize> = e.factor_systems.iter().map(|s| s.rank()).collect();
    let mut factors = Vec::new();
    let mut total = BigUint::zero();
    for (_, v) in order {
        let m = residual[&v];
        if m == 0 {
            continue;
        }
        let r = e.split(&v);
        if m < 0 || r.parts.iter().any(|p| p.iter().any(|&c| c < 0)) {
            return Err(Error::Peel(format!(
                "maximal restricted weight {r} has residual multiplicity {m} and is not a dominant highest weight"
            )));
        }
        let mut product: Vec<(Vec<i64>, u64)> = vec![(Vec::new(), 1)];
        let mut dim = BigUint::one();
        for (sys, part) in e.factor_systems.iter().zip(&r.parts) {
            dim *= weyl_dim_coeffs(sys, part);
            let fc = full_character_coeffs(sys, part, u64::MAX)?;
            product = product
                .iter()
                .flat_map(|(w, a)| {
                    fc.iter().map(move |(u, b)| {
                        let mut x = w.clone();
                        x.extend_from_slice(u);
                        (x, a * b)
                    })
                })
                .collect();
        }
        debug_assert_eq!(product.first().map_or(0, |p| p.0.len()), ranks.iter().sum::<usize>());
        for (mut w, c) in product {
            w.extend_from_slice(&r.torus);
            let slot = residual.get_mut(&w).ok_or_else(|| {
                Error::Peel(format!(
                    "constituent {r} needs weight {} which the restriction lacks",
                    e.split(&w)
                ))
            })?;
            *slot -= m * c as i64;
            if *slot < 0 {
                return Err(Error::Peel(format!(
                    "constituent {r} overdraws weight {}",
                    e.split(&w)
                )));
            }
        }
        total += &dim * BigUint::from(m as u64);
        factors.push(BranchFactor {
            highest: r,
            multiplicity: m as u64,
            dim,
        });
    }
    if total != expected_dim {
        return Err(Error::Peel(format!(
            "constituent dimensions sum to {total}, expected {expected_dim}"
        )));
    }
    let kappa = factors.iter().map(|f| f.multiplicity).sum();
    Ok(BranchResult {
        factors,
        total_dim: total,
        kappa,
    })
}

// ---------------------------------------------------------------------------
// manifest

struct EntryInfo {
    id: u32,
    name: &'static str,
    ambient: &'static str,
    subgroup: &'static str,
    params: &'static [&'static str],
    constraints: &'static str,
    recipe: Recipe,
}

const ENTRIES: &[EntryInfo] = &[
    EntryInfo { id: 1, name: "maximal torus", ambient: "A_n", subgroup: "T_n", params: &["n"], constraints: "n >= 1", recipe: Recipe::Torus },
    EntryInfo { id: 2, name: "symplectic form on the natural module", ambient: "A_{2m-1}", subgroup: "C_m", params: &["m"], constraints: "m >= 1", recipe: Recipe::FormStabilizer },
    EntryInfo { id: 3, name: "orthogonal form, odd dimension", ambient: "A_{2m}", subgroup: "B_m", params: &["m"], constraints: "m >= 1", recipe: Recipe::FormStabilizer },
    EntryInfo { id: 4, name: "orthogonal form, even dimension", ambient: "A_{2m-1}", subgroup: "D_m", params: &["m"], constraints: "m >= 2", recipe: Recipe::FormStabilizer },
    EntryInfo { id: 5, name: "stabilizer of a nondegenerate 1-space", ambient: "D_n", subgroup: "B_{n-1}", params: &["n"], constraints: "n >= 3", recipe: Recipe::SimpleRootImages },
    EntryInfo { id: 6, name: "stabilizer of a nonsingular hyperplane", ambient: "B_n", subgroup: "D_n", params: &["n"], constraints: "n >= 2", recipe: Recipe::FormStabilizer },
    EntryInfo { id: 7, name: "even perpendicular splitting", ambient: "D_n", subgroup: "D_l x D_{n-l} (D_1 is a torus)", params: &["n", "l"], constraints: "n >= 4, 1 <= l <= n/2", recipe: Recipe::Perpendicular },
    EntryInfo { id: 8, name: "odd perpendicular splitting", ambient: "D_n", subgroup: "B_l x B_{n-l-1}", params: &["n", "l"], constraints: "n >= 4, 1 <= l <= n-2", recipe: Recipe::SimpleRootImages },
    EntryInfo { id: 9, name: "orthogonal tensor product", ambient: "D_{(2a+1)b}", subgroup: "B_a x D_b", params: &["a", "b"], constraints: "a >= 1, b >= 2", recipe: Recipe::SimpleRootImages },
    EntryInfo { id: 10, name: "symplectic perpendicular splitting", ambient: "C_{2m}", subgroup: "C_m x C_m", params: &["m"], constraints: "m >= 1", recipe: Recipe::Perpendicular },
    EntryInfo { id: 11, name: "tensor square", ambient: "A_{m(m+2)}", subgroup: "A_m x A_m", params: &["m"], constraints: "m >= 1", recipe: Recipe::Tensor },
    EntryInfo { id: 12, name: "triple symplectic tensor product", ambient: "C_4", subgroup: "C_1 x C_1 x C_1", params: &[], constraints: "no parameters", recipe: Recipe::Tensor },
    EntryInfo { id: 13, name: "fourfold symplectic tensor product", ambient: "D_8", subgroup: "C_1 x C_1 x C_1 x C_1", params: &[], constraints: "no parameters", recipe: Recipe::Tensor },
    EntryInfo { id: 14, name: "symplectic tensor square", ambient: "D_8", subgroup: "C_2 x C_2", params: &[], constraints: "no parameters", recipe: Recipe::Tensor },
    EntryInfo { id: 15, name: "Levi subgroup of a maximal parabolic", ambient: "D_n", subgroup: "A_{n-1} x T_1", params: &["n"], constraints: "n >= 3", recipe: Recipe::Levi },
    EntryInfo { id: 16, name: "triple symplectic tensor product in D_4, characteristic 2 only", ambient: "D_4", subgroup: "C_1 x C_1 x C_1", params: &[], constraints: "no parameters", recipe: Recipe::Tensor },
    EntryInfo { id: 17, name: "orthogonal decomposition", ambient: "B_n (odd total) or D_n (even total)", subgroup: "B_l per odd part 2l+1, D_l per even part 2l", params: &["dims"], constraints: "every part >= 3", recipe: Recipe::Perpendicular },
    EntryInfo { id: 18, name: "exterior square", ambient: "A_{m(m+1)/2-1}", subgroup: "A_m on V(ω_2)", params: &["m"], constraints: "m >= 3", recipe: Recipe::Irreducible },
    EntryInfo { id: 19, name: "symmetric square", ambient: "A_{m(m+3)/2}", subgroup: "A_m on V(2ω_1)", params: &["m"], constraints: "m >= 1", recipe: Recipe::Irreducible },
    EntryInfo { id: 20, name: "half-spin module of D_5", ambient: "A_15", subgroup: "D_5 on V(ω_5)", params: &[], constraints: "no parameters", recipe: Recipe::Irreducible },
    EntryInfo { id: 21, name: "third fundamental module of C_3", ambient: "C_7", subgroup: "C_3 on V(ω_3)", params: &[], constraints: "no parameters", recipe: Recipe::Irreducible },
    EntryInfo { id: 22, name: "third exterior power of A_5", ambient: "C_10", subgroup: "A_5 on V(ω_3)", params: &[], constraints: "no parameters", recipe: Recipe::Irreducible },
    EntryInfo { id: 23, name: "half-spin module of D_6", ambient: "C_16", subgroup: "D_6 on V(ω_6)", params: &[], constraints: "no parameters", recipe: Recipe::Irreducible },
    EntryInfo { id: 24, name: "orthogonal group inside the symplectic group, characteristic 2 only", ambient: "C_n", subgroup: "D_n", params: &["n"], constraints: "n >= 2", recipe: Recipe::FormStabilizer },
    EntryInfo { id: 25, name: "13-dimensional module of C_3, characteristic 3 only", ambient: "B_6", subgroup: "C_3 on V(ω_2) less one zero weight", params: &[], constraints: "no parameters", recipe: Recipe::Irreducible },
    EntryInfo { id: 26, name: "adjoint module of A_2, characteristic 3 only", ambient: "B_3", subgroup: "A_2 on V(ω_1+ω_2) less one zero weight", params: &[], constraints: "no parameters", recipe: Recipe::Irreducible },
];

fn entry_info(id: u32) -> Option<&'static EntryInfo> {
    ENTRIES.iter().find(|e| e.id == id)
}

/// A matrix worked out for review, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedMatrix {
    pub params: Params,
    pub rows: Vec<Vec<String>>,
}

/// Machine-readable description of one catalog entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: u32,
    pub name: String,
    pub ambient: String,
    pub subgroup: String,
    pub params: Vec<String>,
    pub constraints: String,
    pub recipe: Recipe,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub derived_matrices: Vec<DerivedMatrix>,
}

/// All catalog ids in order.
pub fn catalog_ids() -> Vec<u32> {
    ENTRIES.iter().map(|e| e.id).collect()
}

/// The manifest shipped as `catalog.json`. The simple-root recipe for the
/// odd perpendicular splitting carries two derived matrices for review.
pub fn manifest() -> Vec<ManifestEntry> {
    ENTRIES
        .iter()
        .map(|e| {
            let derived_matrices = if e.id == 8 {
                [(4, 1), (5, 2)]
                    .iter()
                    .map(|&(n, l)| {
                        let params = int_params(&[("n", n), ("l", l)]);
                        let emb = catalog(8, &params).expect("catalog 8 builds");
                        DerivedMatrix {
                            rows: emb
                                .matrix
                                .iter()
                                .map(|r| r.iter().map(|x| x.to_string()).collect())
                                .collect(),
                            params,
                        }
                    })
                    .collect()
            } else {
                Vec::new()
            };
            ManifestEntry {
                id: e.id,
                name: e.name.to_string(),
                ambient: e.ambient.to_string(),
                subgroup: e.subgroup.to_string(),
                params: e.params.iter().map(|s| s.to_string()).collect(),
                constraints: e.constraints.to_string(),
                recipe: e.recipe,
                derived_matrices,
            }
        })
        .collect()
}
