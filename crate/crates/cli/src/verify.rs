//! Cross-checks behind `calogero verify`, one per acceptance criterion.

use calogero::algebra::QuantumNumbers;
use calogero::coupling::{int, rat};
use calogero::elliptic::{weier_p_lattice, weier_p_series, WeierstrassParams};
use calogero::jack::{elementary_from_coordinates, JackBasis};
use calogero::oracle::{g3_scaling_study, norm_quadrature_check, operator_bracket, Delta2Form};
use calogero::perturbation::closed::{
    closed_recurrence_table, delta1_a1_closed, delta1_a1_closed_rf, delta1_a2_closed,
    delta1_a2_closed_rf, delta1_a3_closed, delta1_a3_closed_rf, delta1_a3_special_rf, A3Axis,
};
use calogero::perturbation::{a1_bracket, delta1_with_basis, delta2_a1_recurrence};
use calogero::{Coupling, Rational};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::Suite;
use crate::output::float;

pub const GRID_KAPPAS: [(i64, i64); 5] = [(1, 2), (3, 2), (2, 1), (5, 2), (7, 1)];
pub const ORACLE_KAPPAS: [(i64, i64); 2] = [(5, 2), (3, 1)];
pub const ORACLE_LEVELS: [u32; 3] = [0, 1, 2];
pub const ORACLE_G: [f64; 2] = [1e-3, 2e-3];
pub const CUBIC_WINDOW: (f64, f64) = (6.0, 10.0);
pub const QUADRATIC_WINDOW: (f64, f64) = (3.5, 4.5);

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub criterion: u8,
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {} ({}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.summary
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.criterion,
            "name": self.name,
            "passed": self.passed,
            "summary": self.summary,
            "details": self.details,
        })
    }
}

fn outcome(criterion: u8, name: &'static str, failures: &[String], summary: String, details: Value) -> CheckOutcome {
    let passed = failures.is_empty();
    let summary = if passed {
        summary
    } else {
        format!("{summary}; {} failure(s), first: {}", failures.len(), failures[0])
    };
    CheckOutcome { criterion, name, passed, summary, details }
}

pub fn suite_criteria(suite: Suite) -> Vec<u8> {
    match suite {
        Suite::Coefficients => vec![1],
        Suite::Delta1 => vec![2],
        Suite::Free => vec![3],
        Suite::Identities => vec![4],
        Suite::Norms => vec![5],
        Suite::Weierstrass => vec![6],
        Suite::Oracle => vec![7],
        Suite::Adjudication => vec![8],
        Suite::Spot => vec![9],
        Suite::All => (1..=9).collect(),
    }
}

pub fn run_suite(suite: Suite) -> Vec<CheckOutcome> {
    suite_criteria(suite).into_iter().map(criterion).collect()
}

pub fn criterion(n: u8) -> CheckOutcome {
    match n {
        1 => coefficients(),
        2 => delta1(),
        3 => free(),
        4 => identities(),
        5 => norms(),
        6 => weierstrass(),
        7 => oracle(),
        8 => adjudication(),
        9 => spot(),
        _ => panic!("no criterion {n}"),
    }
}

fn coupling((p, q): (i64, i64)) -> Coupling {
    Coupling::from_ratio(p, q)
}

/// Labels of the given rank with entries summing to at most `total`.
pub fn labels(rank: usize, total: u32) -> Vec<QuantumNumbers> {
    fn rec(rank: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<QuantumNumbers>) {
        if prefix.len() == rank {
            out.push(QuantumNumbers::new(prefix.clone()).expect("non-empty label"));
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            rec(rank, left - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, total, &mut Vec::new(), &mut out);
    out
}

/// The stock grids: rank 1 up to 12, rank 2 up to 6, rank 3 up to 4.
pub fn stock_grid() -> Vec<(usize, Vec<QuantumNumbers>)> {
    vec![(1, labels(1, 12)), (2, labels(2, 6)), (3, labels(3, 4))]
}

fn coefficients() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut compared = 0usize;
    for k in GRID_KAPPAS {
        let kappa = coupling(k);
        for (rank, grid) in stock_grid() {
            let mut basis = match JackBasis::for_rank(kappa.clone(), rank) {
                Ok(b) => b,
                Err(e) => {
                    failures.push(format!("κ={kappa} rank {rank}: {e}"));
                    continue;
                }
            };
            for m in &grid {
                let mut check = || -> calogero::Result<Option<String>> {
                    let table = basis.recurrence_table(m)?;
                    let (up, down) = closed_recurrence_table(m)?.eval(&kappa)?;
                    for j in 1..=rank + 1 {
                        if table.up(j) != &up[j - 1] {
                            return Ok(Some(format!("κ={kappa} m={m} c_{j}: {} vs {}", table.up(j), up[j - 1])));
                        }
                        if table.down(j) != &down[j - 1] {
                            return Ok(Some(format!("κ={kappa} m={m} c~_{j}: {} vs {}", table.down(j), down[j - 1])));
                        }
                    }
                    Ok(None)
                };
                match check() {
                    Ok(None) => compared += 2 * (rank + 1),
                    Ok(Some(msg)) => failures.push(msg),
                    Err(e) => failures.push(format!("κ={kappa} m={m}: {e}")),
                }
            }
        }
    }
    outcome(
        1,
        "coefficient agreement",
        &failures,
        format!("{compared} exact coefficient comparisons over 5 couplings"),
        json!({ "comparisons": compared, "failures": failures }),
    )
}

fn closed_delta1(m: &QuantumNumbers, kappa: &Coupling) -> calogero::Result<Rational> {
    match *m.as_slice() {
        [a] => delta1_a1_closed(a, kappa),
        [a, b] => delta1_a2_closed(a, b, kappa),
        [a, b, c] => delta1_a3_closed(a, b, c, kappa),
        _ => unreachable!("closed forms cover ranks 1 to 3"),
    }
}

fn delta1() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut compared = 0usize;
    for k in GRID_KAPPAS {
        let kappa = coupling(k);
        for (rank, grid) in stock_grid() {
            let mut basis = match JackBasis::for_rank(kappa.clone(), rank) {
                Ok(b) => b,
                Err(e) => {
                    failures.push(format!("κ={kappa} rank {rank}: {e}"));
                    continue;
                }
            };
            for m in &grid {
                match (delta1_with_basis(&mut basis, m), closed_delta1(m, &kappa)) {
                    (Ok(g), Ok(c)) if g == c => compared += 1,
                    (Ok(g), Ok(c)) => failures.push(format!("κ={kappa} m={m}: generic {g} vs closed {c}")),
                    (Err(e), _) | (_, Err(e)) => failures.push(format!("κ={kappa} m={m}: {e}")),
                }
            }
        }
    }
    let mut special = 0usize;
    for v in 0..=10 {
        for axis in [A3Axis::First, A3Axis::Middle, A3Axis::Last] {
            let [m, l, n] = axis.label(v);
            if delta1_a3_closed_rf(m, l, n).identical(&delta1_a3_special_rf(axis, v)) {
                special += 1;
            } else {
                failures.push(format!("single-axis form {axis:?} at {v} differs from the general rank-3 form"));
            }
        }
    }
    outcome(
        2,
        "first-order agreement",
        &failures,
        format!("{compared} generic-vs-closed values, {special} single-axis identities"),
        json!({ "comparisons": compared, "single_axis_identities": special, "failures": failures }),
    )
}

fn free() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for k in [(0, 1), (1, 1)] {
        let kappa = coupling(k);
        for (rank, grid) in stock_grid() {
            let mut basis = match JackBasis::for_rank(kappa.clone(), rank) {
                Ok(b) => b,
                Err(e) => {
                    failures.push(format!("κ={kappa} rank {rank}: {e}"));
                    continue;
                }
            };
            for m in &grid {
                for (route, value) in [
                    ("generic", delta1_with_basis(&mut basis, m)),
                    ("closed", closed_delta1(m, &kappa)),
                ] {
                    match value {
                        Ok(v) if v.is_zero() => checked += 1,
                        Ok(v) => failures.push(format!("κ={kappa} m={m} {route} δ1 = {v}")),
                        Err(e) => failures.push(format!("κ={kappa} m={m} {route}: {e}")),
                    }
                }
            }
        }
        for m in 0..=12 {
            match delta2_a1_recurrence(m, &kappa) {
                Ok(v) if v.is_zero() => checked += 1,
                Ok(v) => failures.push(format!("κ={kappa} m={m} δ2 = {v}")),
                Err(e) => failures.push(format!("κ={kappa} m={m} δ2: {e}")),
            }
        }
    }
    let rf_zero = (0..=12).all(|m| {
        [delta1_a1_closed_rf(m), delta1_a2_closed_rf(m, 12 - m)]
            .iter()
            .all(|f| f.numerator().eval(&int(0)).is_zero() && f.numerator().eval(&int(1)).is_zero())
    });
    if !rf_zero {
        failures.push("a closed-form numerator does not vanish at κ ∈ {0, 1}".into());
    }
    outcome(
        3,
        "free-case nullity",
        &failures,
        format!("{checked} exact zeros at κ ∈ {{0, 1}}"),
        json!({ "zeros": checked, "failures": failures }),
    )
}

fn centred_sample(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let q: Vec<f64> = (0..n).map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)).collect();
    let mean = q.iter().sum::<f64>() / n as f64;
    q.into_iter().map(|x| x - mean).collect()
}

/// Largest deviation of 8Σ(1 − cos 2(q_j−q_k)) from 4(N² − z_1 z_n).
pub fn first_order_identity_error(samples: usize, n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let q = centred_sample(&mut rng, n);
        let z = elementary_from_coordinates(&q);
        let mut lhs = 0.0;
        for j in 0..n {
            for k in j + 1..n {
                lhs += 8.0 * (1.0 - (2.0 * (q[j] - q[k])).cos());
            }
        }
        let rhs = 4.0 * ((n * n) as f64 - z[0] * z[n - 2]);
        worst = worst.max((rhs.re - lhs).abs()).max(rhs.im.abs());
    }
    worst
}

/// Largest deviation of 8(3 − cos 2q − 2cos 4q) from both z-forms for N = 2.
pub fn second_order_identity_error(samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let q = centred_sample(&mut rng, 2);
        let z = elementary_from_coordinates(&q);
        let r = q[0] - q[1];
        let lhs = 8.0 * (3.0 - (2.0 * r).cos() - 2.0 * (4.0 * r).cos());
        let (z1, z2) = (z[0], z[1]);
        let full = 4.0 * (12.0 - z1 * z1 - 2.0 * (z1 * z1 - 2.0 * z2) * (z1 * z1 - 2.0));
        let reduced = 4.0 * (4.0 + 7.0 * z1 * z1 - 2.0 * z1.powi(4));
        for v in [full, reduced] {
            worst = worst.max((v.re - lhs).abs()).max(v.im.abs());
        }
    }
    worst
}

fn identities() -> CheckOutcome {
    let tol = 1e-10;
    let mut failures = Vec::new();
    let mut errors = serde_json::Map::new();
    for n in 2..=4 {
        let e = first_order_identity_error(100, n, 11 + n as u64);
        errors.insert(format!("first_order_N{n}"), float(e));
        if e > tol {
            failures.push(format!("first-order identity at N={n}: error {e:e}"));
        }
    }
    let e = second_order_identity_error(100, 29);
    errors.insert("second_order_N2".into(), float(e));
    if e > tol {
        failures.push(format!("second-order identity: error {e:e}"));
    }
    let worst = errors.values().filter_map(|v| v.as_f64()).fold(0.0, f64::max);
    outcome(
        4,
        "operator identities",
        &failures,
        format!("100 random configurations each, worst error {worst:.2e} (tol 1e-10)"),
        json!({ "max_errors": errors, "tolerance": float(tol) }),
    )
}

fn norms() -> CheckOutcome {
    let tol = 1e-8;
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for k in [(2, 1), (3, 1)] {
        let kappa = coupling(k);
        for m in 1..=6 {
            match norm_quadrature_check(m, &kappa) {
                Ok(e) => {
                    worst = worst.max(e);
                    rows.push(json!({ "kappa": kappa.to_string(), "m": m, "relative_error": float(e) }));
                    if e > tol {
                        failures.push(format!("κ={kappa} m={m}: {e:e}"));
                    }
                }
                Err(e) => failures.push(format!("κ={kappa} m={m}: {e}")),
            }
        }
    }
    let mut brackets = 0usize;
    for k in [(1, 2), (2, 1), (5, 2), (3, 1)] {
        let kappa = coupling(k);
        for m in 0..=10 {
            match (operator_bracket(m, &kappa), a1_bracket(m, &kappa)) {
                (Ok(a), Ok(b)) if a == b => brackets += 1,
                (Ok(a), Ok(b)) => failures.push(format!("bracket κ={kappa} m={m}: {a} vs {b}")),
                (Err(e), _) | (_, Err(e)) => failures.push(format!("bracket κ={kappa} m={m}: {e}")),
            }
        }
    }
    outcome(
        5,
        "norm recursion",
        &failures,
        format!("worst quadrature ratio error {worst:.2e} (tol 1e-8), {brackets} exact bracket matches"),
        json!({ "quadrature": rows, "exact_brackets": brackets, "failures": failures }),
    )
}

fn weierstrass() -> CheckOutcome {
    let tol = 1e-8;
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for g in [0.01, 0.05, 0.1] {
        for z in [0.3, 0.7, 1.2] {
            let mut run = || -> calogero::Result<Value> {
                let p60 = WeierstrassParams::new(g, 60)?;
                let p30 = WeierstrassParams::new(g, 30)?;
                let s60 = weier_p_series(z, &p60)?;
                let s30 = weier_p_series(z, &p30)?;
                let lat = weier_p_lattice(z, p60.omega1(), p60.omega2_abs(), 1 << 13, 1e-12)?;
                let diff = (s60.value - lat.value).abs();
                let tail = (s60.value - s30.value).abs();
                worst = worst.max(diff);
                if diff > tol {
                    failures.push(format!("z={z} g={g}: |series − lattice| = {diff:e}"));
                }
                if tail > s30.tail_bound {
                    failures.push(format!("z={z} g={g}: tail {tail:e} exceeds bound {:e}", s30.tail_bound));
                }
                Ok(json!({
                    "z": float(z),
                    "g": float(g),
                    "series": float(s60.value),
                    "lattice": float(lat.value),
                    "difference": float(diff),
                    "lattice_cutoff": lat.cutoff,
                    "tail_observed": float(tail),
                    "tail_bound_30": float(s30.tail_bound),
                }))
            };
            match run() {
                Ok(v) => rows.push(v),
                Err(e) => failures.push(format!("z={z} g={g}: {e}")),
            }
        }
    }
    outcome(
        6,
        "series vs lattice",
        &failures,
        format!("9 points, worst |Δ| {worst:.2e} (tol 1e-8), tail bounds sound"),
        json!({ "points": rows, "failures": failures }),
    )
}

/// Residual ratios for every oracle coupling and level under one δ₂ form.
pub fn oracle_ratios(form: Delta2Form) -> Result<Vec<(String, u32, f64)>, String> {
    let mut out = Vec::new();
    for k in ORACLE_KAPPAS {
        let kappa = coupling(k);
        let report = g3_scaling_study(&kappa, &ORACLE_LEVELS, &ORACLE_G, 80, 10, form)
            .map_err(|e| format!("κ={kappa}: {e}"))?;
        for m in ORACLE_LEVELS {
            for r in report.ratios(m) {
                out.push((kappa.to_string(), m, r));
            }
        }
    }
    Ok(out)
}

fn ratio_rows(ratios: &[(String, u32, f64)]) -> Value {
    Value::Array(
        ratios
            .iter()
            .map(|(k, m, r)| json!({ "kappa": k, "m": m, "ratio": float(*r) }))
            .collect(),
    )
}

fn in_window(r: f64, (lo, hi): (f64, f64)) -> bool {
    (lo..=hi).contains(&r)
}

fn oracle() -> CheckOutcome {
    match oracle_ratios(Delta2Form::Recurrence) {
        Ok(ratios) => {
            let failures: Vec<String> = ratios
                .iter()
                .filter(|(_, _, r)| !in_window(*r, CUBIC_WINDOW))
                .map(|(k, m, r)| format!("κ={k} m={m}: ratio {r:.4}"))
                .collect();
            let shown: Vec<String> = ratios.iter().map(|(k, m, r)| format!("κ={k},m={m}:{r:.3}")).collect();
            outcome(
                7,
                "oracle cubic residual",
                &failures,
                format!("r(2g)/r(g) in [6, 10] with monitors passing: {}", shown.join(" ")),
                json!({ "ratios": ratio_rows(&ratios), "window": [6.0, 10.0] }),
            )
        }
        Err(e) => outcome(7, "oracle cubic residual", std::slice::from_ref(&e), "oracle study failed".into(), json!({ "error": e })),
    }
}

fn adjudication() -> CheckOutcome {
    let canonical = oracle_ratios(Delta2Form::Recurrence);
    let printed = oracle_ratios(Delta2Form::AsPrinted);
    let mut failures = Vec::new();
    let canonical_ok = match &canonical {
        Ok(r) => r.iter().all(|(_, _, x)| in_window(*x, CUBIC_WINDOW)),
        Err(e) => {
            failures.push(e.clone());
            false
        }
    };
    if !canonical_ok && failures.is_empty() {
        failures.push("recurrence form misses the cubic window".into());
    }
    let (printed_rows, demonstrated, printed_summary) = match &printed {
        Ok(r) => {
            let shown: Vec<String> = r.iter().map(|(k, m, x)| format!("κ={k},m={m}:{x:.3}")).collect();
            (ratio_rows(r), r.iter().all(|(_, _, x)| in_window(*x, QUADRATIC_WINDOW)), shown.join(" "))
        }
        Err(e) => (Value::Null, false, format!("not evaluable ({e})")),
    };
    let summary = format!(
        "recurrence form cubic: {}; as-printed closed form ratios {} ({})",
        if canonical_ok { "yes" } else { "no" },
        printed_summary,
        if demonstrated { "quadratic, inconsistency demonstrated" } else { "not all in [3.5, 4.5]" },
    );
    outcome(
        8,
        "second-order adjudication",
        &failures,
        summary,
        json!({
            "recurrence": canonical.as_ref().map(|r| ratio_rows(r)).unwrap_or(Value::Null),
            "as_printed": printed_rows,
            "as_printed_quadratic": demonstrated,
            "gated_on": "recurrence",
        }),
    )
}

fn spot() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    let mut check = |name: &str, got: calogero::Result<Rational>, want: Rational| {
        let got = got.map_err(|e| e.to_string());
        if got.as_ref() != Ok(&want) {
            failures.push(format!("{name}: got {got:?}, want {want}"));
        }
        rows.push(json!({ "name": name, "expected": want.to_string() }));
    };
    let k2 = Coupling::from_ratio(2, 1);
    let k3 = Coupling::from_ratio(3, 1);
    let q = |v: &[u32]| QuantumNumbers::new(v.to_vec()).expect("label");
    let mut b1 = JackBasis::for_rank(k2.clone(), 1).expect("rank 1 basis");
    let mut b2 = JackBasis::for_rank(k2.clone(), 2).expect("rank 2 basis");
    check("a_m rank 1, m=1, κ=2", b1.a_coefficient(&q(&[1])), rat(3, 2));
    check("δ1 rank 1, m=1, κ=2", delta1_with_basis(&mut b1, &q(&[1])), int(20));
    check("δ1 rank 2, m=(0,0), κ=2", delta1_with_basis(&mut b2, &q(&[0, 0])), rat(336, 5));
    check("δ2 rank 1, m=0, κ=3", delta2_a1_recurrence(0, &k3), rat(693, 5));
    outcome(
        9,
        "spot values",
        &failures,
        "a_1 = 3/2, δ1 = 20 and 336/5, δ2 = 693/5".into(),
        json!({ "checks": rows, "failures": failures }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_grids() {
        assert_eq!(labels(1, 12).len(), 13);
        assert_eq!(labels(2, 6).len(), 28);
        assert_eq!(labels(3, 4).len(), 35);
    }

    #[test]
    fn identity_errors_are_small() {
        assert!(first_order_identity_error(10, 3, 1) < 1e-10);
        assert!(second_order_identity_error(10, 1) < 1e-10);
    }
}
