//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export returns a JSON string. The `*_json` functions hold the logic
//! and are callable (and tested) natively.

use calogero::algebra::QuantumNumbers;
use calogero::coupling::to_f64;
use calogero::elliptic::{weier_p_lattice, weier_p_series, WeierstrassParams};
use calogero::jack::JackBasis;
use calogero::oracle::{build_hamiltonian, lowest_eigenvalues};
use calogero::perturbation::closed::{delta1_a1_closed, delta1_a2_closed, delta1_a3_closed};
use calogero::perturbation::{delta1_with_basis, energy_expansion, Order};
use calogero::Coupling;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_SAMPLES: usize = 2000;

fn kappa_from(s: &str) -> Result<Coupling, String> {
    s.trim().parse::<Coupling>().map_err(|e| e.to_string())
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

/// ℘ on (0, π) from the nome series next to its g → 0 limit sin⁻²z − 1/3,
/// plus a handful of lattice-sum checkpoints.
pub fn weierstrass_json(g: f64, p_max: usize, samples: usize) -> Result<String, String> {
    let params = WeierstrassParams::new(g, p_max).map_err(|e| e.to_string())?;
    let samples = samples.clamp(8, MAX_SAMPLES);
    let (lo, hi) = (0.15, std::f64::consts::PI - 0.15);
    let mut z = Vec::with_capacity(samples);
    let mut series = Vec::with_capacity(samples);
    let mut trig = Vec::with_capacity(samples);
    let mut bound = 0.0f64;
    for i in 0..samples {
        let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        let s = weier_p_series(x, &params).map_err(|e| e.to_string())?;
        bound = bound.max(s.tail_bound);
        z.push(x);
        series.push(finite(s.value));
        trig.push(finite(x.sin().powi(-2) - 1.0 / 3.0));
    }
    let mut checkpoints = Vec::new();
    if g > 0.0 {
        for x in [0.3, 0.7, 1.2, std::f64::consts::FRAC_PI_2] {
            let s = weier_p_series(x, &params).map_err(|e| e.to_string())?;
            let l = weier_p_lattice(x, params.omega1(), params.omega2_abs(), 1 << 12, 1e-11)
                .map_err(|e| e.to_string())?;
            checkpoints.push(json!({
                "z": x,
                "series": s.value,
                "lattice": l.value,
                "difference": (s.value - l.value).abs(),
            }));
        }
    }
    Ok(json!({
        "z": z,
        "series": series,
        "trig": trig,
        "tail_bound": finite(bound),
        "checkpoints": checkpoints,
    })
    .to_string())
}

/// Rank-1 levels against g: first- and second-order expansions next to
/// eigenvalues of the truncated Hamiltonian.
pub fn levels_json(kappa: &str, levels: u32, g_max: f64, steps: usize) -> Result<String, String> {
    let kappa = kappa_from(kappa)?;
    if !kappa.is_positive() {
        return Err("the diagonalization needs κ > 0".into());
    }
    if !(g_max > 0.0 && g_max < 0.5) {
        return Err("g_max must lie in (0, 0.5)".into());
    }
    let levels = levels.clamp(1, 6);
    let steps = steps.clamp(2, 200);
    let expansions = (0..levels)
        .map(|m| {
            let q = QuantumNumbers::new(vec![m]).map_err(|e| e.to_string())?;
            energy_expansion(&q, &kappa, 1, Order::Second).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut g = Vec::with_capacity(steps);
    let mut numeric = vec![Vec::new(); levels as usize];
    let mut first = vec![Vec::new(); levels as usize];
    let mut second = vec![Vec::new(); levels as usize];
    for i in 0..steps {
        let x = g_max * i as f64 / (steps - 1) as f64;
        let h = build_hamiltonian(48, &kappa, x, 12).map_err(|e| e.to_string())?;
        let ev = lowest_eigenvalues(&h, levels as usize).map_err(|e| e.to_string())?;
        g.push(x);
        for (m, e) in expansions.iter().enumerate() {
            let d2 = e.d2.as_ref().map_or(0.0, to_f64);
            numeric[m].push(finite(ev[m]));
            second[m].push(finite(e.evaluate(x)));
            first[m].push(finite(e.evaluate(x) - x * x * d2));
        }
    }
    Ok(json!({
        "kappa": kappa.to_string(),
        "g": g,
        "numeric": numeric,
        "first_order": first,
        "second_order": second,
    })
    .to_string())
}

/// δ₁ for every label of the given rank with entries summing to at most
/// `total`, by the generic route and (ranks 1 to 3) the closed form.
pub fn delta1_table_json(rank: usize, kappa: &str, total: u32) -> Result<String, String> {
    let kappa = kappa_from(kappa)?;
    if !(1..=4).contains(&rank) {
        return Err("rank must be between 1 and 4".into());
    }
    let total = total.min(if rank <= 2 { 8 } else { 4 });
    let mut basis = JackBasis::for_rank(kappa.clone(), rank).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut label = vec![0u32; rank];
    loop {
        if label.iter().sum::<u32>() <= total {
            let q = QuantumNumbers::new(label.clone()).map_err(|e| e.to_string())?;
            let generic = delta1_with_basis(&mut basis, &q).map_err(|e| e.to_string())?;
            let closed = match *label.as_slice() {
                [a] => Some(delta1_a1_closed(a, &kappa)),
                [a, b] => Some(delta1_a2_closed(a, b, &kappa)),
                [a, b, c] => Some(delta1_a3_closed(a, b, c, &kappa)),
                _ => None,
            };
            let closed = closed.map(|r| r.map(|v| v.to_string()).unwrap_or_else(|e| e.to_string()));
            rows.push(json!({
                "m": label.clone(),
                "generic": generic.to_string(),
                "float": to_f64(&generic),
                "closed": closed,
            }));
        }
        // odometer over 0..=total in each slot
        let mut i = 0;
        while i < rank {
            label[i] += 1;
            if label[i] <= total {
                break;
            }
            label[i] = 0;
            i += 1;
        }
        if i == rank {
            break;
        }
    }
    Ok(json!({ "rank": rank, "kappa": kappa.to_string(), "rows": rows }).to_string())
}

#[wasm_bindgen]
pub fn weierstrass(g: f64, p_max: usize, samples: usize) -> Result<String, JsValue> {
    weierstrass_json(g, p_max, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn levels(kappa: &str, levels: u32, g_max: f64, steps: usize) -> Result<String, JsValue> {
    levels_json(kappa, levels, g_max, steps).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn delta1_table(rank: usize, kappa: &str, total: u32) -> Result<String, JsValue> {
    delta1_table_json(rank, kappa, total).map_err(|e| JsValue::from_str(&e))
}
