//! Table-driven verification of restriction, branching and irreducibility
//! claims.
//!
//! A fixture is a TOML document holding `[[row]]` entries (one claimed
//! triple each) and `[[chain]]` entries. Every row names exactly one mode and
//! [`verify_row`] dispatches on it. A row that cannot be checked is reported
//! as flagged with a reason, never as a pass.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedcat::{branch_char0, catalog, restrict_weight, Embedding, Params, Restriction};
use crate::error::{Error, Result};
use crate::permact::{torus_irreducibility, PermGroup};
use crate::rootsys::{build_root_system, is_p_restricted, is_prime, Family, RootSystem, Weight};
use crate::weylchar::DEFAULT_DIM_CAP;

/// Fixture files shipped with the crate, in the order `verify all` runs them.
pub const BUNDLED: &[(&str, &str)] = &[
    ("main_triples.toml", include_str!("../fixtures/tables/main_triples.toml")),
    ("composition_factors.toml", include_str!("../fixtures/tables/composition_factors.toml")),
    ("chains.toml", include_str!("../fixtures/tables/chains.toml")),
];

/// Returns the bundled fixture text for a file name.
pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

// ---------------------------------------------------------------------------
// fixture types

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "char0-branch")]
    Char0Branch,
    #[serde(rename = "structural")]
    Structural,
    #[serde(rename = "transitivity")]
    Transitivity,
    #[serde(rename = "spin-count")]
    SpinCount,
    #[serde(rename = "flagged")]
    Flagged,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::Char0Branch => "char0-branch",
            Mode::Structural => "structural",
            Mode::Transitivity => "transitivity",
            Mode::SpinCount => "spin-count",
            Mode::Flagged => "flagged",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "flagged-out-of-scope")]
    Flagged,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged-out-of-scope",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientSpec {
    pub family: Family,
    pub rank: usize,
}

/// Catalog entry realizing the identity component, plus a free-text
/// description of the component group.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    #[serde(default)]
    pub catalog: Option<u32>,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub annotation: String,
}

/// A weight given either as its full coefficient list or as a sum such as
/// `"2λ1 + λ3"` (`l` may stand in for `λ`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaSpec {
    Coeffs(Vec<i64>),
    Terms(String),
}

impl LambdaSpec {
    pub fn coeffs(&self, rank: usize) -> Result<Vec<i64>> {
        match self {
            LambdaSpec::Coeffs(c) => Ok(c.clone()),
            LambdaSpec::Terms(s) => parse_lambda_terms(s, rank),
        }
    }
}

fn parse_lambda_terms(s: &str, rank: usize) -> Result<Vec<i64>> {
    let mut out = vec![0i64; rank];
    let bad = |msg: String| Error::Invalid(format!("weight {s:?}: {msg}"));
    if s.trim() == "0" {
        return Ok(out);
    }
    for term in s.split('+') {
        let term = term.trim();
        let (coef, idx) = term
            .split_once('λ')
            .or_else(|| term.split_once('l'))
            .ok_or_else(|| bad(format!("term {term:?} has no λ")))?;
        let coef = coef.trim();
        let c: i64 = if coef.is_empty() {
            1
        } else {
            coef.parse().map_err(|_| bad(format!("bad coefficient {coef:?}")))?
        };
        let i: usize = idx
            .trim()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| bad(format!("bad index {idx:?}")))?;
        if i == 0 || i > rank {
            return Err(bad(format!("index {i} outside 1..={rank}")));
        }
        out[i - 1] += c;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinSpec {
    pub family: Family,
    pub n: usize,
    pub dims: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CongruenceTag {
    A,
    B,
    C,
    D,
}

/// Which congruence family a row's condition belongs to. The numeric
/// parameters are read off the row's weight; `k` and `i` locate the nonzero
/// coefficients where the weight alone is ambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CongruenceSpec {
    pub tag: CongruenceTag,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub i: Option<usize>,
}

fn default_condition() -> String {
    "any".to_string()
}

/// One claimed triple `(G, H, V)` with the expected restriction data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleRow {
    pub row_id: String,
    #[serde(default)]
    pub label: String,
    #[serde(default)]
    pub ambient: Option<AmbientSpec>,
    #[serde(default)]
    pub subgroup: Option<SubgroupSpec>,
    #[serde(default)]
    pub lambda: Option<LambdaSpec>,
    #[serde(default = "default_condition")]
    pub p_condition: String,
    #[serde(default)]
    pub p: Option<u64>,
    pub mode: Mode,
    #[serde(default)]
    pub expected_restriction: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub expected_torus: Option<Vec<i64>>,
    #[serde(default)]
    pub expected_kappa: Option<u64>,
    #[serde(default)]
    pub expected_factors: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default)]
    pub graph_twist: bool,
    #[serde(default)]
    pub group: Option<String>,
    #[serde(default)]
    pub claim: Option<bool>,
    #[serde(default)]
    pub spin: Option<SpinSpec>,
    #[serde(default)]
    pub expected_factor_dim: Option<u64>,
    #[serde(default)]
    pub congruence: Option<CongruenceSpec>,
    #[serde(default)]
    pub reason: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
}

/// One link `T.X` of a chain: the subgroup label and, for torus
/// normalizers, the permutation group `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainLink {
    pub subgroup: String,
    #[serde(default)]
    pub group: Option<String>,
}

/// A chain `H_1 < H_2 < … < G` of subgroups each acting irreducibly on the
/// same module. The claimed length counts `G` itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub chain_id: String,
    #[serde(default)]
    pub label: String,
    pub ambient: AmbientSpec,
    pub lambda: LambdaSpec,
    #[serde(default = "default_condition")]
    pub p_condition: String,
    pub links: Vec<ChainLink>,
    pub claimed_length: usize,
    #[serde(default)]
    pub note: Option<String>,
}

/// A fixture document.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub declared_flagged: Option<usize>,
    #[serde(default)]
    pub row: Vec<TripleRow>,
    #[serde(default)]
    pub chain: Vec<ChainSpec>,
}

/// Parses a fixture, reporting syntax and schema errors with a line number.
pub fn parse_fixture(source_name: &str, text: &str) -> Result<FixtureFile> {
    let file: FixtureFile = toml::from_str(text).map_err(|e| Error::Parse {
        source_name: source_name.to_string(),
        line: e.span().map_or(1, |s| line_of(text, s.start)),
        message: e.message().to_string(),
    })?;
    let mut seen = HashSet::new();
    let ids = file
        .row
        .iter()
        .map(|r| &r.row_id)
        .chain(file.chain.iter().map(|c| &c.chain_id));
    for id in ids {
        if !seen.insert(id.clone()) {
            let quoted = format!("\"{id}\"");
            let at = text.match_indices(&quoted).nth(1).map_or(0, |(i, _)| i);
            return Err(Error::Parse {
                source_name: source_name.to_string(),
                line: line_of(text, at),
                message: format!("duplicate id {id:?}"),
            });
        }
    }
    Ok(file)
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

// ---------------------------------------------------------------------------
// characteristic conditions

/// A parsed `p_condition`: `any`, `p = 2`, `p != 2, 3` or `congruence`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PCondition {
    Any,
    Equals(u64),
    Excludes(Vec<u64>),
    Congruence,
}

impl PCondition {
    pub fn parse(s: &str) -> Result<PCondition> {
        let t = s.trim();
        let list = |rest: &str| -> Result<Vec<u64>> {
            rest.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Invalid(format!("p_condition {s:?}: bad prime {x:?}")))
                })
                .collect()
        };
        if t == "any" {
            Ok(PCondition::Any)
        } else if t == "congruence" {
            Ok(PCondition::Congruence)
        } else if let Some(rest) = t.strip_prefix("p !=").or_else(|| t.strip_prefix("p ≠")) {
            Ok(PCondition::Excludes(list(rest)?))
        } else if let Some(rest) = t.strip_prefix("p =") {
            Ok(PCondition::Equals(list(rest)?.first().copied().unwrap_or(0)))
        } else {
            Err(Error::Invalid(format!(
                "p_condition {s:?}: expected `any`, `p = q`, `p != q, ..` or `congruence`"
            )))
        }
    }

    /// Whether characteristic zero satisfies the condition.
    pub fn admits_zero(&self) -> bool {
        matches!(self, PCondition::Any | PCondition::Excludes(_))
    }

    /// Whether the prime `p` satisfies the listed part of the condition.
    /// Congruence conditions are checked separately.
    pub fn admits(&self, p: u64) -> bool {
        match self {
            PCondition::Any | PCondition::Congruence => true,
            PCondition::Equals(q) => *q == p,
            PCondition::Excludes(qs) => !qs.contains(&p),
        }
    }
}

/// The four congruence families governing irreducibility in positive
/// characteristic, with their numeric parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum Congruence {
    /// `A_{2m−1} > C_m`, weight `aλ_k + bλ_{k+1}`.
    A { m: i64, k: i64, a: i64, b: i64 },
    /// `B_n > D_n`, weight with coefficients `a_1..a_n`.
    B { coeffs: Vec<i64> },
    /// `C_{2m} > C_m × C_m`, weight `λ_{2m−1} + aλ_{2m}`.
    C { m: i64, a: i64 },
    /// `D_n > B_{n−1}`, weight `aλ_k + bλ_{n−i}`.
    D { n: i64, k: i64, i: i64, a: i64, b: i64 },
}

/// Evaluates a congruence condition, side constraints included, at the
/// prime `p`.
pub fn congruence_holds(c: &Congruence, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pi = p as i64;
    let divides = |x: i64| x.rem_euclid(pi) == 0;
    Ok(match c {
        Congruence::A { m, k, a, b } => {
            p != 2
                && 1 <= *k
                && k < m
                && *a >= 0
                && *b >= 0
                && a + b == pi - 1
                && (*k != m - 1 || *a != 0)
        }
        Congruence::B { coeffs } => {
            let n = coeffs.len();
            if p == 2 || n == 0 || coeffs[n - 1] != 1 {
                return Ok(false);
            }
            let nonzero: Vec<usize> = (1..n).filter(|&i| coeffs[i - 1] != 0).collect();
            let pairs_ok = nonzero.iter().tuple_windows().all(|(&i, &j)| {
                divides(coeffs[i - 1] + coeffs[j - 1] - (i as i64 - j as i64))
            });
            let last_ok = nonzero
                .last()
                .is_none_or(|&i| divides(2 * coeffs[i - 1] + 2 * (n - i) as i64 + 1));
            pairs_ok && last_ok
        }
        Congruence::C { m, a } => {
            *a >= 0 && *a < pi && (*m, *a) != (1, 0) && divides(2 * a + 3)
        }
        Congruence::D { n, k, i, a, b } => {
            1 <= *k
                && *k <= n - 2
                && (*i == 0 || *i == 1)
                && *a != 0
                && *b != 0
                && divides(a + b + n - k - 1)
        }
    })
}

fn congruence_for_row(spec: &CongruenceSpec, sys: &RootSystem, lam: &[i64]) -> Result<Congruence> {
    let n = sys.rank();
    let bad = |msg: &str| Error::Invalid(format!("congruence {:?}: {msg}", spec.tag));
    let only = |keep: &[usize]| -> Result<()> {
        if lam
            .iter()
            .enumerate()
            .any(|(j, &c)| c != 0 && !keep.contains(&j))
        {
            Err(bad("weight has coefficients outside the congruence pattern"))
        } else {
            Ok(())
        }
    };
    let need = |x: Option<usize>, name: &str| x.ok_or_else(|| bad(&format!("missing {name}")));
    match (spec.tag, sys.family()) {
        (CongruenceTag::A, Family::A) if n % 2 == 1 => {
            let k = need(spec.k, "k")?;
            if k == 0 || k >= n {
                return Err(bad("k out of range"));
            }
            only(&[k - 1, k])?;
            Ok(Congruence::A {
                m: (n as i64 + 1) / 2,
                k: k as i64,
                a: lam[k - 1],
                b: lam[k],
            })
        }
        (CongruenceTag::B, Family::B) => Ok(Congruence::B {
            coeffs: lam.to_vec(),
        }),
        (CongruenceTag::C, Family::C) if n % 2 == 0 => {
            only(&[n - 2, n - 1])?;
            if lam[n - 2] != 1 {
                return Err(bad("coefficient of λ_{2m−1} must be 1"));
            }
            Ok(Congruence::C {
                m: n as i64 / 2,
                a: lam[n - 1],
            })
        }
        (CongruenceTag::D, Family::D) => {
            let k = need(spec.k, "k")?;
            let i = need(spec.i, "i")?;
            if k == 0 || k > n || i > 1 {
                return Err(bad("k or i out of range"));
            }
            only(&[k - 1, n - i - 1])?;
            Ok(Congruence::D {
                n: n as i64,
                k: k as i64,
                i: i as i64,
                a: lam[k - 1],
                b: lam[n - i - 1],
            })
        }
        _ => Err(bad(&format!("does not apply to {sys}"))),
    }
}

/// The two pairs of congruences whose joint unsatisfiability the search
/// confirms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CongruencePair {
    /// `a + n − k ≡ 0` and `2a ≡ −2(n−k) − 1`.
    SameOffset,
    /// `a + n − k ≡ 0` (the tag `d` condition with unit spin coefficient)
    /// and `2a ≡ −2(n−1−k) − 1` (the tag `b` condition one rank lower).
    ShiftedOffset,
}

impl CongruencePair {
    fn holds(self, p: i64, n: i64, k: i64, a: i64) -> bool {
        let first = (a + n - k).rem_euclid(p) == 0;
        let offset = match self {
            CongruencePair::SameOffset => n - k,
            CongruencePair::ShiftedOffset => n - 1 - k,
        };
        first && (2 * a + 2 * offset + 1).rem_euclid(p) == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub pair: CongruencePair,
    pub p: u64,
    pub n: i64,
    pub k: i64,
    pub a: i64,
}

/// Searches primes `p ≤ bound_p`, `1 ≤ a < p` and `1 ≤ k < n ≤ bound_params`
/// for a simultaneous solution of either [`CongruencePair`].
pub fn incompatibility_search(bound_p: u64, bound_params: i64) -> Option<Counterexample> {
    for pair in [CongruencePair::SameOffset, CongruencePair::ShiftedOffset] {
        for p in (2..=bound_p).filter(|&q| is_prime(q)) {
            let pi = p as i64;
            for n in 2..=bound_params {
                for k in 1..n {
                    for a in 1..pi {
                        if pair.holds(pi, n, k, a) {
                            return Some(Counterexample { pair, p, n, k, a });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Counts the composition factors of the spin module of `B_n` or a half-spin
/// module of `D_n` restricted to the stabilizer of an orthogonal
/// decomposition with summand dimensions `dims`. Returns
/// `(kappa, factor_dim)`.
pub fn spin_decomposition_count(family: Family, n: usize, dims: &[usize]) -> Result<(u64, u64)> {
    let (total, spin_exp) = match family {
        Family::B if n >= 1 => (2 * n + 1, n),
        Family::D if n >= 2 => (2 * n, n - 1),
        _ => {
            return Err(Error::Invalid(format!(
                "spin counting needs type B_n (n ≥ 1) or D_n (n ≥ 2), got {family}{n}"
            )))
        }
    };
    if spin_exp > 62 {
        return Err(Error::Invalid(format!("rank {n} too large for spin counting")));
    }
    if let Some(d) = dims.iter().find(|&&d| d < 3) {
        return Err(Error::Invalid(format!(
            "summand of dimension {d}: every summand must have dimension at least 3"
        )));
    }
    let sum: usize = dims.iter().sum();
    if sum != total {
        return Err(Error::Invalid(format!(
            "summand dimensions add to {sum}, but {family}{n} has natural dimension {total}"
        )));
    }
    let exp: usize = dims.iter().map(|&d| if d % 2 == 1 { d / 2 } else { d / 2 - 1 }).sum();
    if exp > spin_exp {
        return Err(Error::Invalid(format!(
            "factor dimension 2^{exp} exceeds the spin dimension 2^{spin_exp}"
        )));
    }
    Ok((1u64 << (spin_exp - exp), 1u64 << exp))
}

// ---------------------------------------------------------------------------
// reports

/// Data computed for, or expected of, one row.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Artifacts {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dims: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_dim: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub row_id: String,
    pub label: String,
    pub status: Status,
    pub mode: Mode,
    pub computed: Artifacts,
    pub expected: Artifacts,
    pub detail: String,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub pass_count: usize,
    pub fail_count: usize,
    pub flagged_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_flagged: Option<usize>,
    pub rows: Vec<RowReport>,
}

impl Report {
    fn from_rows(title: &str, declared_flagged: Option<usize>, rows: Vec<RowReport>) -> Report {
        let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
        Report {
            title: title.to_string(),
            pass_count: count(Status::Pass),
            fail_count: count(Status::Fail),
            flagged_count: count(Status::Flagged),
            declared_flagged,
            rows,
        }
    }

    /// Whether the flagged rows agree with the fixture's declared count.
    pub fn flagged_count_matches(&self) -> bool {
        self.declared_flagged.is_none_or(|d| d == self.flagged_count)
    }

    pub fn is_success(&self) -> bool {
        self.fail_count == 0 && self.flagged_count_matches()
    }

    /// The report with every timing zeroed, for byte-for-byte comparison.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for row in &mut r.rows {
            row.millis = 0;
        }
        r
    }

    pub fn failures(&self) -> impl Iterator<Item = &RowReport> {
        self.rows.iter().filter(|r| r.status == Status::Fail)
    }
}

/// The combined result of running several fixtures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass_count: usize,
    pub fail_count: usize,
    pub flagged_count: usize,
    pub tables: Vec<Report>,
}

impl Summary {
    pub fn new(tables: Vec<Report>) -> Summary {
        Summary {
            pass_count: tables.iter().map(|t| t.pass_count).sum(),
            fail_count: tables.iter().map(|t| t.fail_count).sum(),
            flagged_count: tables.iter().map(|t| t.flagged_count).sum(),
            tables,
        }
    }

    pub fn is_success(&self) -> bool {
        self.tables.iter().all(Report::is_success)
    }

    pub fn without_timing(&self) -> Summary {
        Summary {
            tables: self.tables.iter().map(Report::without_timing).collect(),
            ..self.clone()
        }
    }
}

/// Settings shared by every verification entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub dim_cap: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            dim_cap: DEFAULT_DIM_CAP,
            jobs: None,
        }
    }
}

// ---------------------------------------------------------------------------
// row verification

enum Verdict {
    Pass(String),
    Fail(String),
    Flagged(String),
}

fn restriction_of(parts: &[Vec<i64>], torus: Option<&Vec<i64>>) -> Restriction {
    Restriction {
        parts: parts.to_vec(),
        torus: torus.cloned().unwrap_or_default(),
    }
}

fn expected_artifacts(row: &TripleRow) -> Artifacts {
    let restriction = match (&row.expected_restriction, &row.expected_torus) {
        (Some(p), t) => Some(restriction_of(p, t.as_ref()).to_string()),
        (None, Some(t)) => Some(restriction_of(&[], Some(t)).to_string()),
        (None, None) => None,
    };
    Artifacts {
        restriction,
        kappa: row.expected_kappa,
        factors: row
            .expected_factors
            .iter()
            .flatten()
            .map(|f| restriction_of(f, None).to_string())
            .collect(),
        irreducible: row.claim,
        factor_dim: row.expected_factor_dim,
        ..Artifacts::default()
    }
}

/// Checks one row according to its mode.
pub fn verify_row(row: &TripleRow, opts: &Options) -> RowReport {
    let start = Instant::now();
    let mut computed = Artifacts::default();
    let verdict = match row.mode {
        Mode::Char0Branch => check_char0(row, opts, &mut computed),
        Mode::Structural => check_structural(row, &mut computed),
        Mode::Transitivity => check_transitivity(row, &mut computed),
        Mode::SpinCount => check_spin(row, opts, &mut computed),
        Mode::Flagged => Ok(match &row.reason {
            Some(r) => Verdict::Flagged(r.clone()),
            None => Verdict::Fail("flagged row gives no reason".into()),
        }),
    };
    let (status, detail) = match verdict {
        Ok(Verdict::Pass(d)) => (Status::Pass, d),
        Ok(Verdict::Fail(d)) => (Status::Fail, d),
        Ok(Verdict::Flagged(d)) => (Status::Flagged, d),
        Err(e @ (Error::UnknownCatalog(_) | Error::DimensionCap { .. })) => {
            (Status::Flagged, e.to_string())
        }
        Err(e) => (Status::Fail, e.to_string()),
    };
    let detail = match &row.note {
        Some(n) if status != Status::Fail => format!("{detail}; {n}"),
        _ => detail,
    };
    RowReport {
        row_id: row.row_id.clone(),
        label: row.label.clone(),
        status,
        mode: row.mode,
        computed,
        expected: expected_artifacts(row),
        detail,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn ambient_system(row: &TripleRow) -> Result<Arc<RootSystem>> {
    let a = row
        .ambient
        .ok_or_else(|| Error::Invalid("row has no ambient group".into()))?;
    build_root_system(a.family, a.rank)
}

fn row_weight(sys: &Arc<RootSystem>, lambda: Option<&LambdaSpec>) -> Result<Weight> {
    let spec = lambda.ok_or_else(|| Error::Invalid("row has no weight".into()))?;
    Weight::new(sys, spec.coeffs(sys.rank())?)
}

fn row_embedding(row: &TripleRow, sys: &Arc<RootSystem>) -> Result<Embedding> {
    let sg = row.subgroup.clone().unwrap_or_default();
    let id = sg.catalog.ok_or_else(|| {
        Error::UnknownCatalog(format!(
            "(none: no catalog entry realizes {:?})",
            sg.annotation
        ))
    })?;
    let e = catalog(id, &sg.params)?;
    if **e.ambient() != **sys {
        return Err(Error::Invalid(format!(
            "catalog {id} embeds into {}, but the row's ambient group is {sys}",
            e.ambient()
        )));
    }
    Ok(e)
}

/// Factor permutations preserving the factor types, optionally combined
/// with the graph automorphism of every factor that has one.
fn transforms(e: &Embedding, allow_twist: bool) -> Vec<(Vec<usize>, bool)> {
    let types: Vec<(Family, usize)> = e
        .factor_systems()
        .iter()
        .map(|s| (s.family(), s.rank()))
        .collect();
    let k = types.len();
    let twists: &[bool] = if allow_twist { &[false, true] } else { &[false] };
    let perms: Vec<Vec<usize>> = (0..k)
        .permutations(k)
        .filter(|p| p.iter().enumerate().all(|(i, &j)| types[i] == types[j]))
        .collect();
    perms
        .into_iter()
        .cartesian_product(twists.iter().copied())
        .collect()
}

fn apply(e: &Embedding, (perm, twist): &(Vec<usize>, bool), r: &Restriction) -> Restriction {
    let parts = perm
        .iter()
        .map(|&j| {
            let part = &r.parts[j];
            if *twist {
                e.factor_systems()[j]
                    .graph_automorphism_coeffs(part)
                    .unwrap_or_else(|_| part.clone())
            } else {
                part.clone()
            }
        })
        .collect();
    Restriction {
        parts,
        torus: r.torus.clone(),
    }
}

fn restriction_matches(row: &TripleRow, got: &Restriction) -> bool {
    let parts_ok = row
        .expected_restriction
        .as_ref()
        .is_none_or(|p| *p == got.parts);
    let torus_ok = row.expected_torus.as_ref().is_none_or(|t| *t == got.torus);
    parts_ok && torus_ok
}

fn check_char0(row: &TripleRow, opts: &Options, computed: &mut Artifacts) -> Result<Verdict> {
    let cond = PCondition::parse(&row.p_condition)?;
    if !cond.admits_zero() {
        return Ok(Verdict::Fail(format!(
            "mode char0-branch needs a condition admitting characteristic zero, got {:?}",
            row.p_condition
        )));
    }
    let Some(kappa) = row.expected_kappa else {
        return Ok(Verdict::Fail("char0-branch row gives no expected_kappa".into()));
    };
    let sys = ambient_system(row)?;
    let lam = row_weight(&sys, row.lambda.as_ref())?;
    let e = row_embedding(row, &sys)?;
    let top = restrict_weight(&e, &lam)?;
    computed.restriction = Some(top.to_string());
    let br = branch_char0(&e, &lam, opts.dim_cap)?;
    computed.kappa = Some(br.kappa);
    let mut got_factors = Vec::new();
    for f in &br.factors {
        for _ in 0..f.multiplicity {
            got_factors.push(f.highest.clone());
            computed.factors.push(f.highest.to_string());
            computed.dims.push(f.dim.to_string());
        }
    }
    let mut want_factors: Option<Vec<Restriction>> = row.expected_factors.as_ref().map(|fs| {
        fs.iter()
            .map(|f| restriction_of(f, row.expected_torus.as_ref()))
            .sorted()
            .collect()
    });
    if let Some(w) = &mut want_factors {
        for f in w.iter_mut() {
            if row.expected_torus.is_none() {
                f.torus.clear();
            }
        }
    }
    let matched = transforms(&e, row.graph_twist).into_iter().find(|t| {
        let r = apply(&e, t, &top);
        restriction_matches(row, &r)
            && want_factors.as_ref().is_none_or(|want| {
                let mut got: Vec<Restriction> = got_factors
                    .iter()
                    .map(|f| {
                        let mut g = apply(&e, t, f);
                        if row.expected_torus.is_none() {
                            g.torus.clear();
                        }
                        g
                    })
                    .collect();
                got.sort();
                got == *want
            })
    });
    let mut problems = Vec::new();
    if matched.is_none() {
        problems.push(format!(
            "restriction {top} with factors [{}] matches no relabelling of the expected data",
            computed.factors.join(", ")
        ));
    }
    if br.kappa != kappa {
        problems.push(format!("kappa {} but expected {kappa}", br.kappa));
    }
    if problems.is_empty() {
        let how = match matched {
            Some((perm, twist)) if twist || perm.iter().enumerate().any(|(i, &j)| i != j) => {
                format!(" after relabelling (factor order {perm:?}, graph twist {twist})")
            }
            _ => String::new(),
        };
        Ok(Verdict::Pass(format!(
            "kappa {} and total dimension {} match{how}",
            br.kappa, br.total_dim
        )))
    } else {
        Ok(Verdict::Fail(problems.join("; ")))
    }
}

fn check_structural(row: &TripleRow, computed: &mut Artifacts) -> Result<Verdict> {
    let cond = PCondition::parse(&row.p_condition)?;
    let sys = ambient_system(row)?;
    let lam = row_weight(&sys, row.lambda.as_ref())?;
    let mut notes = Vec::new();
    let p = match (row.p, &cond) {
        (Some(p), _) => Some(p),
        (None, PCondition::Equals(q)) => Some(*q),
        _ => None,
    };
    if let Some(p) = p {
        if !is_prime(p) {
            return Ok(Verdict::Fail(format!("{p} is not a prime")));
        }
        if !cond.admits(p) {
            return Ok(Verdict::Fail(format!(
                "p = {p} violates the condition {:?}",
                row.p_condition
            )));
        }
        if !is_p_restricted(&lam, p)? {
            return Ok(Verdict::Fail(format!("{lam} is not {p}-restricted")));
        }
        notes.push(format!("p = {p}"));
    }
    match (&row.congruence, &cond) {
        (Some(spec), _) => {
            let Some(p) = p else {
                return Ok(Verdict::Fail("congruence row gives no prime".into()));
            };
            let c = congruence_for_row(spec, &sys, lam.coeffs())?;
            if !congruence_holds(&c, p)? {
                return Ok(Verdict::Fail(format!("congruence {c:?} fails at p = {p}")));
            }
            notes.push(format!("congruence ({:?}) holds", spec.tag).to_lowercase());
        }
        (None, PCondition::Congruence) => {
            return Ok(Verdict::Fail("condition is a congruence but the row gives no congruence".into()));
        }
        _ => {}
    }
    if row.expected_restriction.is_none() {
        return Ok(Verdict::Fail("structural row gives no expected_restriction".into()));
    }
    let e = row_embedding(row, &sys)?;
    let got = restrict_weight(&e, &lam)?;
    computed.restriction = Some(got.to_string());
    let found = transforms(&e, row.graph_twist)
        .into_iter()
        .any(|t| restriction_matches(row, &apply(&e, &t, &got)));
    if !found {
        return Ok(Verdict::Fail(format!(
            "restriction {got} matches no relabelling of the expected restriction"
        )));
    }
    if row.expected_kappa.is_some() {
        notes.push("kappa recorded but not asserted".into());
    }
    notes.insert(0, "restriction matches".into());
    Ok(Verdict::Pass(notes.join("; ")))
}

fn fundamental_index(w: &Weight) -> Option<usize> {
    let c = w.coeffs();
    let ones: Vec<usize> = (0..c.len()).filter(|&i| c[i] != 0).collect();
    match ones.as_slice() {
        [i] if c[*i] == 1 => Some(i + 1),
        _ => None,
    }
}

fn check_transitivity(row: &TripleRow, computed: &mut Artifacts) -> Result<Verdict> {
    let sys = ambient_system(row)?;
    if sys.family() != Family::A {
        return Ok(Verdict::Fail(format!("transitivity rows need type A, got {sys}")));
    }
    let lam = row_weight(&sys, row.lambda.as_ref())?;
    let Some(k) = fundamental_index(&lam) else {
        return Ok(Verdict::Fail(format!("{lam} is not a fundamental weight")));
    };
    let Some(claim) = row.claim else {
        return Ok(Verdict::Fail("transitivity row gives no claim".into()));
    };
    let name = row
        .group
        .as_deref()
        .ok_or_else(|| Error::Invalid("transitivity row names no group".into()))?;
    let g = PermGroup::by_name(name)?;
    let irr = torus_irreducibility(&g, sys.rank(), k)?;
    computed.irreducible = Some(irr);
    Ok(if irr == claim {
        Verdict::Pass(format!(
            "{} on {} points: irreducible = {irr}",
            g.name(),
            g.degree()
        ))
    } else {
        Verdict::Fail(format!("irreducible = {irr} but the row claims {claim}"))
    })
}

fn check_spin(row: &TripleRow, opts: &Options, computed: &mut Artifacts) -> Result<Verdict> {
    let spin = row
        .spin
        .as_ref()
        .ok_or_else(|| Error::Invalid("spin-count row has no spin entry".into()))?;
    let (kappa, fdim) = spin_decomposition_count(spin.family, spin.n, &spin.dims)?;
    computed.kappa = Some(kappa);
    computed.factor_dim = Some(fdim);
    let mut problems = Vec::new();
    if row.expected_kappa.is_some_and(|k| k != kappa) {
        problems.push(format!("count {kappa} but expected {:?}", row.expected_kappa));
    }
    if row.expected_factor_dim.is_some_and(|d| d != fdim) {
        problems.push(format!(
            "factor dimension {fdim} but expected {:?}",
            row.expected_factor_dim
        ));
    }
    if row.expected_kappa.is_none() && row.expected_factor_dim.is_none() {
        problems.push("spin-count row asserts nothing".into());
    }
    let oracle = spin_branch_oracle(spin, opts);
    let oracle_note = match &oracle {
        Some(Ok((k, dims))) => {
            computed.dims = dims.iter().map(|d| d.to_string()).collect();
            if *k != kappa || dims.iter().any(|&d| d != fdim) {
                problems.push(format!(
                    "characteristic-zero branch gives {k} factors of dimensions {dims:?}"
                ));
            }
            "confirmed by characteristic-zero branching"
        }
        Some(Err(e)) => {
            problems.push(format!("characteristic-zero branching failed: {e}"));
            ""
        }
        None => "no branching cross-check at this size",
    };
    Ok(if problems.is_empty() {
        Verdict::Pass(format!("count {kappa}, factor dimension {fdim}; {oracle_note}"))
    } else {
        Verdict::Fail(problems.join("; "))
    })
}

/// Branches the (half-)spin module through the orthogonal decomposition
/// subgroup, when the catalog admits it and the module fits the cap.
fn spin_branch_oracle(spin: &SpinSpec, opts: &Options) -> Option<Result<(u64, Vec<u64>)>> {
    if spin.dims.len() < 2 {
        return None;
    }
    let params: Params = [(
        "dims".to_string(),
        crate::embedcat::ParamValue::List(spin.dims.iter().map(|&d| d as i64).collect()),
    )]
    .into_iter()
    .collect();
    let e = catalog(17, &params).ok()?;
    let sys = e.ambient().clone();
    let lam = Weight::fundamental(&sys, sys.rank()).ok()?;
    match branch_char0(&e, &lam, opts.dim_cap) {
        Ok(br) => {
            let dims = br
                .factors
                .iter()
                .flat_map(|f| {
                    let d: u64 = f.dim.to_string().parse().unwrap_or(u64::MAX);
                    std::iter::repeat_n(d, f.multiplicity as usize)
                })
                .collect();
            Some(Ok((br.kappa, dims)))
        }
        Err(Error::DimensionCap { .. }) => None,
        Err(e) => Some(Err(e)),
    }
}

// ---------------------------------------------------------------------------
// chains

/// Checks that every link of a chain acts irreducibly, that consecutive
/// links are contained in one another, and that the length matches.
pub fn verify_chain(c: &ChainSpec) -> RowReport {
    let start = Instant::now();
    let mut computed = Artifacts {
        length: Some(c.links.len() + 1),
        ..Artifacts::default()
    };
    let expected = Artifacts {
        length: Some(c.claimed_length),
        irreducible: Some(true),
        ..Artifacts::default()
    };
    let verdict = chain_verdict(c, &mut computed);
    let (status, detail) = match verdict {
        Ok(Verdict::Pass(d)) => (Status::Pass, d),
        Ok(Verdict::Fail(d)) => (Status::Fail, d),
        Ok(Verdict::Flagged(d)) => (Status::Flagged, d),
        Err(e) => (Status::Fail, e.to_string()),
    };
    let detail = match &c.note {
        Some(n) if status != Status::Fail => format!("{detail}; {n}"),
        _ => detail,
    };
    RowReport {
        row_id: c.chain_id.clone(),
        label: c.label.clone(),
        status,
        mode: if status == Status::Flagged {
            Mode::Flagged
        } else {
            Mode::Transitivity
        },
        computed,
        expected,
        detail,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn chain_verdict(c: &ChainSpec, computed: &mut Artifacts) -> Result<Verdict> {
    if let Some(link) = c.links.iter().find(|l| l.group.is_none()) {
        return Ok(Verdict::Flagged(format!(
            "link {} is not a torus normalizer; no implemented mode verifies it",
            link.subgroup
        )));
    }
    let cond = PCondition::parse(&c.p_condition)?;
    if !cond.admits_zero() {
        return Ok(Verdict::Flagged(format!(
            "chain holds only under {:?}; irreducibility in positive characteristic is not computed",
            c.p_condition
        )));
    }
    let sys = build_root_system(c.ambient.family, c.ambient.rank)?;
    if sys.family() != Family::A {
        return Ok(Verdict::Fail(format!("torus normalizer chains need type A, got {sys}")));
    }
    let lam = row_weight(&sys, Some(&c.lambda))?;
    let Some(k) = fundamental_index(&lam) else {
        return Ok(Verdict::Fail(format!("{lam} is not a fundamental weight")));
    };
    let groups: Vec<PermGroup> = c
        .links
        .iter()
        .map(|l| PermGroup::by_name(l.group.as_deref().unwrap_or_default()))
        .collect::<Result<_>>()?;
    for (link, g) in c.links.iter().zip(&groups) {
        if !torus_irreducibility(g, sys.rank(), k)? {
            computed.irreducible = Some(false);
            return Ok(Verdict::Fail(format!("link {} is reducible on {lam}", link.subgroup)));
        }
    }
    computed.irreducible = Some(true);
    for (pair, gs) in c.links.windows(2).zip(groups.windows(2)) {
        let (small, big) = (&gs[0], &gs[1]);
        let contained = if big.degree() != small.degree() {
            false
        } else if big.name().starts_with("Sym") {
            true
        } else if big.name().starts_with("Alt") {
            small.is_even()
        } else {
            return Ok(Verdict::Flagged(format!(
                "containment {} < {} is not checkable",
                pair[0].subgroup, pair[1].subgroup
            )));
        };
        if !contained {
            return Ok(Verdict::Fail(format!(
                "{} is not contained in {}",
                pair[0].subgroup, pair[1].subgroup
            )));
        }
    }
    let length = c.links.len() + 1;
    Ok(if length == c.claimed_length {
        Verdict::Pass(format!("length {length}, every link irreducible on V(λ_{k})"))
    } else {
        Verdict::Fail(format!("chain has length {length}, claimed {}", c.claimed_length))
    })
}

// ---------------------------------------------------------------------------
// tables

fn in_pool<T: Send>(opts: &Options, f: impl FnOnce() -> T + Send) -> T {
    match opts.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// Verifies every row and chain of a parsed fixture. Rows run concurrently;
/// the report keeps fixture order.
pub fn verify_fixture(file: &FixtureFile, opts: &Options) -> Report {
    let rows = in_pool(opts, || {
        let mut rows: Vec<RowReport> = file.row.par_iter().map(|r| verify_row(r, opts)).collect();
        rows.extend(file.chain.par_iter().map(verify_chain).collect::<Vec<_>>());
        rows
    });
    Report::from_rows(&file.title, file.declared_flagged, rows)
}

/// Parses and verifies fixture text.
pub fn verify_table_str(source_name: &str, text: &str, opts: &Options) -> Result<Report> {
    Ok(verify_fixture(&parse_fixture(source_name, text)?, opts))
}

/// Reads, parses and verifies a fixture file.
pub fn verify_table(path: &Path, opts: &Options) -> Result<Report> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    verify_table_str(&path.display().to_string(), &text, opts)
}

/// Text of a shipped fixture, read from `data_dir` when given.
pub fn fixture_text(data_dir: Option<&Path>, name: &str) -> Result<String> {
    match data_dir {
        Some(dir) => {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })
        }
        None => bundled(name)
            .map(str::to_string)
            .ok_or_else(|| Error::Invalid(format!("no bundled fixture {name}"))),
    }
}

/// Runs every shipped fixture.
pub fn verify_all(data_dir: Option<&Path>, opts: &Options) -> Result<Summary> {
    let mut tables = Vec::new();
    for (name, _) in BUNDLED {
        let text = fixture_text(data_dir, name)?;
        tables.push(verify_table_str(name, &text, opts)?);
    }
    Ok(Summary::new(tables))
}
