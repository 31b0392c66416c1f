//! Acceptance run: one line per criterion with its outcome, elapsed time and
//! time budget. Runs without the libtest harness so the lines always reach
//! stdout; the process fails if any criterion fails or overruns.
//!
//! One sub-claim is known to be false and is reported as `KNOWN-RED` without
//! failing the run: that `M_12` is not 5-transitive. `M_12` is sharply
//! 5-transitive, and the bundled generators are checked to be exactly so.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use weylbranch::embedcat::{
    branch_char0, catalog, int_params, restrict_weight, split_d_formula, validate_embedding, ParamValue, Params,
};
use weylbranch::permact::{is_t_transitive, PermGroup};
use weylbranch::rootsys::{build_root_system, mu_difference_coeffs, Family, Weight};
use weylbranch::verify::{
    bundled, incompatibility_search, parse_fixture, spin_decomposition_count, verify_all,
    verify_chain, verify_table, Options, Status,
};
use weylbranch::weylchar::{weyl_dim, DEFAULT_DIM_CAP};

type Outcome = Result<String, String>;

struct Line {
    id: &'static str,
    title: &'static str,
    budget: Duration,
    known_red: bool,
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn unit(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k - 1] = 1;
    v
}

fn spin_dimensions() -> Outcome {
    for n in 3..=8usize {
        let b = build_root_system(Family::B, n).map_err(err)?;
        let d = build_root_system(Family::D, n).map_err(err)?;
        let spin = weyl_dim(&Weight::fundamental(&b, n).map_err(err)?).map_err(err)?;
        ensure(spin == BigUint::from(1u64 << n), format!("B{n}: dim λ_{n} = {spin}"))?;
        for k in [n - 1, n] {
            let half = weyl_dim(&Weight::fundamental(&d, k).map_err(err)?).map_err(err)?;
            ensure(half == BigUint::from(1u64 << (n - 1)), format!("D{n}: dim λ_{k} = {half}"))?;
        }
    }
    Ok("2^n and 2^(n-1) for n = 3..8".into())
}

/// Sorted `(highest weights, dim)` of a characteristic-zero branch.
fn summands(id: u32, params: &[(&str, i64)], coeffs: Vec<i64>) -> Result<(u64, Vec<(Vec<i64>, u64)>), String> {
    let e = catalog(id, &int_params(params)).map_err(err)?;
    let lam = Weight::new(e.ambient(), coeffs).map_err(err)?;
    let br = branch_char0(&e, &lam, DEFAULT_DIM_CAP).map_err(err)?;
    let mut out = Vec::new();
    for f in &br.factors {
        ensure(f.multiplicity == 1, format!("{} has multiplicity {}", f.highest, f.multiplicity))?;
        let flat: Vec<i64> = f.highest.parts.iter().flatten().copied().collect();
        out.push((flat, f.dim.to_string().parse::<u64>().map_err(err)?));
    }
    out.sort();
    Ok((br.kappa, out))
}

fn permutations_of(base: &[i64], dim: u64) -> Vec<(Vec<i64>, u64)> {
    use itertools::Itertools;
    let mut v: Vec<(Vec<i64>, u64)> = base.iter().copied().permutations(base.len()).map(|p| (p, dim)).collect();
    v.sort();
    v.dedup();
    v
}

fn c4_triple_tensor() -> Outcome {
    let (k2, s2) = summands(12, &[], vec![0, 1, 0, 0])?;
    ensure(k2 == 3 && s2 == permutations_of(&[2, 2, 0], 9), format!("λ_2 gives {s2:?}"))?;
    let (k3, s3) = summands(12, &[], vec![0, 0, 1, 0])?;
    ensure(k3 == 3 && s3 == permutations_of(&[3, 1, 1], 16), format!("λ_3 gives {s3:?}"))?;
    Ok("λ_2: 9+9+9 = 27, λ_3: 16+16+16 = 48".into())
}

fn d8_fourfold_tensor() -> Outcome {
    let (k, s) = summands(13, &[], unit(8, 7))?;
    ensure(k == 4 && s == permutations_of(&[1, 1, 1, 3], 32), format!("λ_7 gives {s:?}"))?;
    Ok("λ_7: kappa 4, 4 × 32 = 128".into())
}

fn perpendicular_split_formula() -> Outcome {
    let mut cases = 0;
    let mut worked = 0;
    for n in 4..=8usize {
        for l in (1..=n).filter(|&l| 2 * l < n) {
            let e = catalog(7, &int_params(&[("n", n as i64), ("l", l as i64)])).map_err(err)?;
            validate_embedding(&e).map_err(err)?;
            let g = e.ambient();
            let mut top = vec![0i64; n];
            top[n - 2] = 1;
            top[n - 1] = 1;
            let lam = Weight::new(g, top).map_err(err)?;
            let mut roots = vec![0i64; n];
            for r in roots.iter_mut().take(n - 1).skip(l - 1) {
                *r = 1;
            }
            let mu = lam.sub_roots(&roots).map_err(err)?;
            let rl = restrict_weight(&e, &lam).map_err(err)?;
            let rm = restrict_weight(&e, &mu).map_err(err)?;
            // First factor: D_l, or for l = 1 the torus coordinate.
            let first = |r: &weylbranch::embedcat::Restriction| if l == 1 { r.torus.clone() } else { r.parts[0].clone() };
            let second = |r: &weylbranch::embedcat::Restriction| r.parts[if l == 1 { 0 } else { 1 }].clone();
            let m = n - l;
            let mut want_l1 = vec![0i64; l];
            want_l1[l - 1] = 2;
            let mut want_l2 = vec![0i64; m];
            want_l2[m - 2] = 1;
            want_l2[m - 1] = 1;
            let mut want_m2 = vec![0i64; m];
            want_m2[m - 1] = 2;
            ensure(
                first(&rl) == want_l1 && second(&rl) == want_l2,
                format!("n = {n}, l = {l}: λ restricts to {rl}"),
            )?;
            let (f_mu, s_mu) = split_d_formula(n, l, mu.coeffs());
            ensure(
                first(&rm) == f_mu && second(&rm) == s_mu,
                format!("n = {n}, l = {l}: μ restricts to {rm}, closed formula disagrees"),
            )?;
            // ω_{1,l−1} only exists for l ≥ 2; for l = 1 the closed formula
            // above is the whole check.
            if l >= 2 {
                let mut want_m1 = vec![0i64; l];
                want_m1[l - 2] = 1;
                want_m1[l - 1] = 1;
                ensure(
                    first(&rm) == want_m1 && second(&rm) == want_m2,
                    format!("n = {n}, l = {l}: μ restricts to {rm}"),
                )?;
                worked += 1;
            }
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} (n, l) pairs pass the closed formula, {worked} with l ≥ 2 match both displayed weights"
    ))
}

fn antisymmetry() -> Outcome {
    let mut runner = TestRunner::new_with_rng(
        Config { cases: 10_000, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let strategy = (1usize..=10).prop_flat_map(|n| proptest::collection::vec(0i64..=5, n));
    let systems: Vec<_> = (1..=10).map(|n| build_root_system(Family::A, n)).collect::<Result<_, _>>().map_err(err)?;
    let mut symmetric = 0;
    for _ in 0..10_000 {
        let coeffs = strategy.new_tree(&mut runner).map_err(err)?.current();
        let n = coeffs.len();
        let w = Weight::new(&systems[n - 1], coeffs.clone()).map_err(err)?;
        let c = mu_difference_coeffs(&w).map_err(err)?;
        let c = c.coeffs();
        for j in 0..n {
            ensure((&c[j] + &c[n - 1 - j]).is_zero(), format!("{coeffs:?}: c_{} + c_{} ≠ 0", j + 1, n - j))?;
        }
        let is_symmetric = (0..n).all(|i| coeffs[i] == coeffs[n - 1 - i]);
        ensure(
            c.iter().all(|q| !q.is_negative()) == is_symmetric,
            format!("{coeffs:?}: nonnegativity does not match symmetry"),
        )?;
        symmetric += usize::from(is_symmetric);
    }
    Ok(format!("10000 weights, {symmetric} symmetric"))
}

fn spin_counting() -> Outcome {
    let mut pairs = 0;
    for l in 2..=8usize {
        for t in 1..=8 / l {
            let (kappa, fdim) = spin_decomposition_count(Family::D, l * t, &vec![2 * l; t]).map_err(err)?;
            ensure(
                kappa == 1 << (t - 1) && fdim == 1 << (t * (l - 1)) && kappa * fdim == 1 << (l * t - 1),
                format!("l = {l}, t = {t}: ({kappa}, {fdim})"),
            )?;
            pairs += 1;
        }
    }
    let mut mixed = 0;
    for total in 3..=17usize {
        let (family, n, exp) = if total % 2 == 1 {
            (Family::B, total / 2, total / 2)
        } else {
            (Family::D, total / 2, total / 2 - 1)
        };
        if family == Family::D && n < 3 {
            continue;
        }
        for dims in partitions(total, total) {
            let (kappa, fdim) = spin_decomposition_count(family, n, &dims).map_err(err)?;
            let s: usize = dims.iter().map(|&d| if d % 2 == 1 { d / 2 } else { d / 2 - 1 }).sum();
            ensure(
                kappa.is_power_of_two() && kappa == 1 << (exp - s) && kappa * fdim == 1 << exp,
                format!("{family}{n} {dims:?}: ({kappa}, {fdim})"),
            )?;
            mixed += 1;
        }
    }
    ensure(spin_decomposition_count(Family::B, 4, &[3, 3, 3]).map_err(err)? == (2, 8), "B4 [3,3,3] count")?;
    let mut p = Params::new();
    p.insert("dims".into(), ParamValue::List(vec![3, 3, 3]));
    let e = catalog(17, &p).map_err(err)?;
    let br = branch_char0(&e, &Weight::fundamental(e.ambient(), 4).map_err(err)?, DEFAULT_DIM_CAP).map_err(err)?;
    ensure(
        br.kappa == 2 && br.factors.iter().all(|f| f.dim == BigUint::from(8u32)),
        format!("B4 [3,3,3] oracle: kappa {}", br.kappa),
    )?;
    Ok(format!("{pairs} (l, t) pairs, {mixed} decompositions, B4 [3,3,3] = 2 × 8 by branching"))
}

fn partitions(total: usize, max_part: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    (3..=max_part.min(total))
        .rev()
        .flat_map(|first| {
            partitions(total - first, first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn transitivity() -> Outcome {
    let m24 = PermGroup::mathieu("M24").map_err(err)?;
    ensure(is_t_transitive(&m24, 5).map_err(err)?, "M24 not 5-transitive")?;
    ensure(!is_t_transitive(&m24, 6).map_err(err)?, "M24 6-transitive")?;
    let m12 = PermGroup::mathieu("M12").map_err(err)?;
    ensure(is_t_transitive(&m12, 4).map_err(err)?, "M12 not 4-transitive")?;
    let z6 = PermGroup::cyclic(6);
    ensure(is_t_transitive(&z6, 1).map_err(err)?, "Z6 not transitive")?;
    ensure(!is_t_transitive(&z6, 2).map_err(err)?, "Z6 2-transitive")?;
    let file = parse_fixture("chains.toml", bundled("chains.toml").ok_or("chains.toml not bundled")?).map_err(err)?;
    let mut chains = 0;
    for c in file.chain.iter().filter(|c| c.chain_id.starts_with("mathieu-")) {
        let r = verify_chain(c);
        ensure(r.status == Status::Pass, format!("{}: {}", c.chain_id, r.detail))?;
        ensure(c.claimed_length == 4, format!("{} claims length {}", c.chain_id, c.claimed_length))?;
        chains += 1;
    }
    Ok(format!("M24 5 not 6, M12 4, Z6 1 not 2, {chains} Mathieu chains of length 4"))
}

fn m12_not_five_transitive() -> Outcome {
    let m12 = PermGroup::mathieu("M12").map_err(err)?;
    if is_t_transitive(&m12, 5).map_err(err)? {
        Err("M12 is 5-transitive (sharply), so the claim that it is not is false".into())
    } else {
        Ok("M12 not 5-transitive".into())
    }
}

fn incompatibility() -> Outcome {
    match incompatibility_search(97, 30) {
        None => Ok("no common solution for p ≤ 97, parameters ≤ 30".into()),
        Some(c) => Err(format!("counterexample {c:?}")),
    }
}

fn full_table_run() -> Outcome {
    let s = verify_all(None, &Options::default()).map_err(err)?;
    ensure(s.fail_count == 0, format!("{} failures", s.fail_count))?;
    for t in &s.tables {
        ensure(
            t.flagged_count_matches(),
            format!("{}: flagged {} declared {:?}", t.title, t.flagged_count, t.declared_flagged),
        )?;
        for r in t.rows.iter().filter(|r| r.status == Status::Flagged) {
            ensure(!r.detail.is_empty(), format!("{} flagged without reason", r.row_id))?;
        }
    }
    Ok(format!("pass {}, fail 0, flagged {} as declared", s.pass_count, s.flagged_count))
}

fn negative_controls() -> Outcome {
    let text = bundled("composition_factors.toml").ok_or("composition_factors.toml not bundled")?;
    let kappa_row = "a7-torus-l3";
    let restriction_row = "a5-c3-2l1";
    let corrupt = |text: &str, row: &str, from: &str, to: &str| -> Result<String, String> {
        let start = text.find(&format!("row_id = \"{row}\"")).ok_or(format!("row {row} missing"))?;
        let end = text[start..].find("[[row]]").map_or(text.len(), |i| start + i);
        let block = &text[start..end];
        ensure(block.contains(from), format!("{row} lacks {from}"))?;
        Ok(format!("{}{}{}", &text[..start], block.replacen(from, to, 1), &text[end..]))
    };
    let text = corrupt(text, kappa_row, "expected_kappa = 56", "expected_kappa = 57")?;
    let text = corrupt(&text, restriction_row, "expected_restriction = [[2, 0, 0]]", "expected_restriction = [[2, 1, 0]]")?;
    let dir = tempfile::tempdir().map_err(err)?;
    let path = dir.path().join("corrupted.toml");
    std::fs::write(&path, text).map_err(err)?;
    let report = verify_table(&path, &Options::default()).map_err(err)?;
    let mut failed: Vec<&str> = report.failures().map(|r| r.row_id.as_str()).collect();
    failed.sort();
    let mut want = vec![kappa_row, restriction_row];
    want.sort();
    ensure(failed == want, format!("failures {failed:?}"))?;
    Ok(format!("exactly {} and {} fail", want[0], want[1]))
}

fn main() {
    let secs = Duration::from_secs;
    let criteria: Vec<(Line, fn() -> Outcome)> = vec![
        (Line { id: "1", title: "spin dimensions", budget: secs(1), known_red: false }, spin_dimensions),
        (Line { id: "2", title: "C4 > C1^3 tensor branch", budget: secs(1), known_red: false }, c4_triple_tensor),
        (Line { id: "3", title: "D8 > C1^4 tensor branch", budget: secs(10), known_red: false }, d8_fourfold_tensor),
        (Line { id: "4", title: "D_l D_(n-l) restriction formula", budget: secs(5), known_red: false }, perpendicular_split_formula),
        (Line { id: "5", title: "A_n difference antisymmetry", budget: secs(5), known_red: false }, antisymmetry),
        (Line { id: "6", title: "spin decomposition counting", budget: secs(10), known_red: false }, spin_counting),
        (Line { id: "7", title: "transitivity and chains", budget: secs(60), known_red: false }, transitivity),
        (Line { id: "7b", title: "M12 4- but not 5-transitive", budget: secs(60), known_red: true }, m12_not_five_transitive),
        (Line { id: "8", title: "congruence incompatibility", budget: secs(5), known_red: false }, incompatibility),
        (Line { id: "9", title: "full table run", budget: secs(300), known_red: false }, full_table_run),
        (Line { id: "10", title: "negative controls", budget: secs(60), known_red: false }, negative_controls),
    ];
    let mut failures = 0;
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    for (line, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (verdict, detail) = match (&outcome, elapsed <= line.budget) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over budget")),
            (Err(e), _) if line.known_red => ("KNOWN-RED", e.clone()),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        *tally.entry(verdict).or_default() += 1;
        println!(
            "criterion {:<3} {:<9} {:<34} {:>8.3}s / {:>3}s  {}",
            line.id,
            verdict,
            line.title,
            elapsed.as_secs_f64(),
            line.budget.as_secs(),
            detail
        );
    }
    println!("acceptance: {tally:?}");
    if failures > 0 {
        std::process::exit(1);
    }
}
