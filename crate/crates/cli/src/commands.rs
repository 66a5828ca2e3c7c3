use calogero::algebra::{mu, QuantumNumbers};
use calogero::elliptic::{weier_p_lattice, weier_p_series, WeierstrassParams};
use calogero::jack::JackBasis;
use calogero::oracle::g3_scaling_study;
use calogero::perturbation::closed::{
    closed_recurrence_table, delta1_a1_closed, delta1_a2_closed, delta1_a3_closed, delta2_a1_closed,
    AS_PRINTED_NOTE,
};
use calogero::perturbation::{delta1_with_basis, delta2_a1_recurrence, energy_expansion, Order};
use calogero::symmetric::quantum_to_partition;
use calogero::{Coupling, Rational};
use serde_json::{json, Value};

use crate::config::{CommandKind, Delta2Choice, Format, RunConfig};
use crate::output::{
    csv_float, float, format_float, object, rational, SCHEMA, ORACLE_CSV_HEADER, ORACLE_CSV_VERSION,
    WEIER_CSV_HEADER, WEIER_CSV_VERSION,
};
use crate::verify;
use crate::RunError;

pub const AS_PRINTED_FLAG: &str =
    "as-printed; inconsistent with the recurrence form, see `calogero verify --suite adjudication`";

pub struct Outcome {
    pub text: String,
    pub exit: i32,
}

fn json_outcome(command: &str, inputs: Value, mut body: Value, exit: i32) -> Outcome {
    let obj = body.as_object_mut().expect("command bodies are objects");
    obj.insert("schema".into(), Value::String(SCHEMA.into()));
    obj.insert("command".into(), Value::String(command.into()));
    obj.insert("inputs".into(), inputs);
    Outcome { text: crate::output::render_json(&body), exit }
}

fn state_inputs(m: &QuantumNumbers, kappa: &Coupling) -> Value {
    json!({ "rank": m.rank(), "m": m.as_slice(), "kappa": kappa.to_string() })
}

fn opt_rational(r: &Option<Rational>) -> Value {
    r.as_ref().map_or(Value::Null, rational)
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, RunError> {
    match cfg.command {
        CommandKind::Coeffs => coeffs(cfg),
        CommandKind::Delta1 => delta1(cfg),
        CommandKind::Delta2 => delta2(cfg),
        CommandKind::Energy => energy(cfg),
        CommandKind::Weier => weier(cfg),
        CommandKind::Oracle => oracle(cfg),
        CommandKind::Verify => verify_cmd(cfg),
    }
}

fn closed_delta1(m: &QuantumNumbers, kappa: &Coupling) -> Option<calogero::Result<Rational>> {
    match *m.as_slice() {
        [a] => Some(delta1_a1_closed(a, kappa)),
        [a, b] => Some(delta1_a2_closed(a, b, kappa)),
        [a, b, c] => Some(delta1_a3_closed(a, b, c, kappa)),
        _ => None,
    }
}

fn coeffs(cfg: &RunConfig) -> Result<Outcome, RunError> {
    let (n, m, kappa) = cfg.require_state()?;
    let mut basis = JackBasis::for_rank(kappa.clone(), n)?;
    let table = basis.recurrence_table(m)?;
    let a_m = basis.a_coefficient(m)?;
    let closed = if n <= 3 { Some(closed_recurrence_table(m)?.eval(kappa)?) } else { None };
    let mut agree = true;
    let mut side = |sign: i64, values: Vec<(usize, &Rational)>, closed: Option<&Vec<Rational>>| {
        values
            .into_iter()
            .map(|(j, v)| {
                let shift: Vec<i64> = mu(j, n).iter().map(|x| sign * x).collect();
                let target = m.shifted(&shift).map(|t| t.as_slice().to_vec());
                let c = closed.map(|cs| cs[j - 1].clone());
                if let Some(c) = &c {
                    agree &= c == v;
                }
                json!({ "j": j, "target": target, "value": rational(v), "closed": opt_rational(&c) })
            })
            .collect::<Vec<_>>()
    };
    let up = side(1, table.up_pairs().collect(), closed.as_ref().map(|c| &c.0));
    let down = side(-1, table.down_pairs().collect(), closed.as_ref().map(|c| &c.1));
    let mut provenance = vec!["Jack polynomial recurrences (generic)"];
    if closed.is_some() {
        provenance.push("closed-form coefficient tables");
    }
    let mut body = json!({
        "up": up,
        "down": down,
        "a_m": rational(&a_m),
        "provenance": provenance,
        "agree": closed.as_ref().map(|_| agree),
    });
    if cfg.dump {
        let lambda = quantum_to_partition(m, n + 1)?;
        let terms = basis.polynomial(&lambda)?.to_terms();
        body["polynomial"] = json!({ "partition": lambda.parts(), "terms": terms });
    }
    Ok(json_outcome("coeffs", state_inputs(m, kappa), body, if agree { 0 } else { 1 }))
}

fn delta1(cfg: &RunConfig) -> Result<Outcome, RunError> {
    let (n, m, kappa) = cfg.require_state()?;
    let mut basis = JackBasis::for_rank(kappa.clone(), n)?;
    let generic = delta1_with_basis(&mut basis, m)?;
    let closed = closed_delta1(m, kappa).transpose()?;
    let agree = closed.as_ref().map(|c| *c == generic);
    let mut provenance = vec!["generic a_m".to_string()];
    if closed.is_some() {
        provenance.push(format!("closed form (rank {n})"));
    }
    let body = json!({
        "d1": rational(&generic),
        "routes": { "generic": rational(&generic), "closed": opt_rational(&closed) },
        "agree": agree,
        "provenance": provenance,
    });
    let exit = if agree == Some(false) { 1 } else { 0 };
    Ok(json_outcome("delta1", state_inputs(m, kappa), body, exit))
}

fn rank_one_level(cfg: &RunConfig) -> Result<(u32, &QuantumNumbers, &Coupling), RunError> {
    let (n, m, kappa) = cfg.require_state()?;
    if n != 1 {
        return Err(RunError::Usage(format!("second order needs rank 1, got rank {n}")));
    }
    Ok((m.as_slice()[0], m, kappa))
}

fn delta2(cfg: &RunConfig) -> Result<Outcome, RunError> {
    let (level, m, kappa) = rank_one_level(cfg)?;
    let recurrence = delta2_a1_recurrence(level, kappa)?;
    let body = match cfg.form {
        Delta2Choice::Recurrence => json!({
            "d2": rational(&recurrence),
            "form": "recurrence",
            "provenance": "recurrence-coefficient form (canonical)",
        }),
        Delta2Choice::Closed => {
            let printed = delta2_a1_closed(level, kappa)?;
            json!({
                "d2": rational(&printed),
                "form": "closed",
                "flag": AS_PRINTED_FLAG,
                "note": AS_PRINTED_NOTE,
                "recurrence": rational(&recurrence),
                "agree": printed == recurrence,
                "provenance": "closed form, evaluated as printed",
            })
        }
    };
    let mut inputs = state_inputs(m, kappa);
    inputs["form"] = json!(cfg.form);
    Ok(json_outcome("delta2", inputs, body, 0))
}

fn energy(cfg: &RunConfig) -> Result<Outcome, RunError> {
    let (n, m, kappa) = cfg.require_state()?;
    let order = match cfg.order.unwrap_or(if n == 1 { 2 } else { 1 }) {
        1 => Order::First,
        _ => Order::Second,
    };
    let e = energy_expansion(m, kappa, n, order)?;
    let values: Vec<Value> = cfg
        .g
        .iter()
        .map(|&g| object([("g", float(g)), ("value", float(e.evaluate(g)))]))
        .collect();
    let body = json!({
        "e_trig": rational(&e.e_trig),
        "const_shift": rational(&e.const_shift),
        "d1": rational(&e.d1),
        "d2": opt_rational(&e.d2),
        "order": if order == Order::First { 1 } else { 2 },
        "values": values,
        "provenance": {
            "e_trig": "Weyl convention 2(λ+κρ, λ+κρ)",
            "d1": "generic a_m",
            "d2": if e.d2.is_some() { "recurrence-coefficient form (canonical)" } else { "not computed" },
        },
    });
    let mut inputs = state_inputs(m, kappa);
    inputs["order"] = json!(cfg.order);
    inputs["g"] = Value::Array(cfg.g.iter().map(|&g| float(g)).collect());
    Ok(json_outcome("energy", inputs, body, 0))
}

fn weier(cfg: &RunConfig) -> Result<Outcome, RunError> {
    let z = cfg.z.ok_or_else(|| RunError::Usage("--z is required".into()))?;
    if cfg.g.is_empty() {
        return Err(RunError::Usage("--g is required".into()));
    }
    let p_max = cfg.p_max.unwrap_or(60);
    let mut records = Vec::new();
    let mut csv = vec![WEIER_CSV_VERSION.to_string(), WEIER_CSV_HEADER.to_string()];
    for &g in &cfg.g {
        let params = WeierstrassParams::new(g, p_max)?;
        let series = weier_p_series(z, &params)?;
        let mut rec = json!({
            "z": float(z),
            "g": float(g),
            "value": float(series.value),
            "tail_bound": float(series.tail_bound),
        });
        let mut oracle_value = None;
        if cfg.oracle {
            if g == 0.0 {
                return Err(RunError::Usage("the lattice oracle needs g > 0".into()));
            }
            let lat = weier_p_lattice(z, params.omega1(), params.omega2_abs(), cfg.cutoff, cfg.tol)?;
            rec["oracle_value"] = float(lat.value);
            rec["oracle_error_estimate"] = float(lat.error_estimate);
            rec["oracle_cutoff"] = json!(lat.cutoff);
            rec["difference"] = float((lat.value - series.value).abs());
            oracle_value = Some(lat.value);
        }
        csv.push(format!(
            "{},{},{},{},{}",
            format_float(z),
            format_float(g),
            format_float(series.value),
            format_float(series.tail_bound),
            csv_float(oracle_value)
        ));
        records.push(rec);
    }
    if cfg.format == Format::Csv {
        return Ok(Outcome { text: csv.join("\n") + "\n", exit: 0 });
    }
    let inputs = json!({
        "z": float(z),
        "g": cfg.g.iter().map(|&g| float(g)).collect::<Vec<_>>(),
        "p_max": p_max,
        "oracle": cfg.oracle,
        "cutoff": cfg.cutoff,
        "tol": float(cfg.tol),
    });
    let body = json!({ "records": records, "provenance": "nome series with closed-form tail bound" });
    Ok(json_outcome("weier", inputs, body, 0))
}

fn oracle(cfg: &RunConfig) -> Result<Outcome, RunError> {
    let kappa = cfg.require_kappa()?;
    let g = if cfg.g.is_empty() { vec![1e-3, 2e-3] } else { cfg.g.clone() };
    let p_max = cfg.p_max.unwrap_or(10);
    let report = g3_scaling_study(kappa, &cfg.levels, &g, cfg.basis_size, p_max, cfg.delta2_form())?;
    if cfg.format == Format::Csv {
        let mut lines = vec![ORACLE_CSV_VERSION.to_string(), ORACLE_CSV_HEADER.to_string()];
        for r in &report.rows {
            lines.push(format!(
                "{},{},{},{},{},{}",
                r.m,
                format_float(r.g),
                format_float(r.e_num),
                format_float(r.e_pert),
                format_float(r.residual),
                csv_float(r.ratio)
            ));
        }
        return Ok(Outcome { text: lines.join("\n") + "\n", exit: 0 });
    }
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "m": r.m,
                "g": float(r.g),
                "e_num": float(r.e_num),
                "e_pert": float(r.e_pert),
                "residual": float(r.residual),
                "ratio": r.ratio.map_or(Value::Null, float),
                "basis_change": float(r.basis_change),
                "potential_change": float(r.potential_change),
            })
        })
        .collect();
    let inputs = json!({
        "kappa": kappa.to_string(),
        "levels": cfg.levels,
        "g": g.iter().map(|&x| float(x)).collect::<Vec<_>>(),
        "basis_size": cfg.basis_size,
        "p_max": p_max,
        "delta2_form": report.delta2_form,
    });
    let body = json!({
        "report": {
            "kappa": report.kappa,
            "basis_size": report.basis_size,
            "p_max": report.p_max,
            "delta2_form": report.delta2_form,
            "basis_tolerance": float(report.basis_tolerance),
            "potential_tolerance": float(report.potential_tolerance),
            "rows": rows,
        },
        "provenance": "dense diagonalization in the trigonometric eigenbasis",
    });
    Ok(json_outcome("oracle", inputs, body, 0))
}

fn verify_cmd(cfg: &RunConfig) -> Result<Outcome, RunError> {
    let outcomes = verify::run_suite(cfg.suite);
    for o in &outcomes {
        eprintln!("{}", o.line());
    }
    let passed = outcomes.iter().all(|o| o.passed);
    let body = json!({
        "passed": passed,
        "criteria": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
    });
    Ok(json_outcome("verify", json!({ "suite": cfg.suite }), body, if passed { 0 } else { 1 }))
}
