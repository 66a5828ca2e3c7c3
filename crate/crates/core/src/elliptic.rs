//! Weierstrass ℘ with semiperiods ω₁ = π/2 and ω₂ imaginary, expanded in the
//! nome g = e^{−4|ω₂|}:
//!
//! ```text
//! ℘(z) = sin⁻²z − 1/3 + Σ_p g^p V_p(z),   V_p(z) = 8 Σ_{h | p} h (1 − cos 2hz)
//! ```
//!
//! The lattice-sum oracle evaluates ℘ from its definition and shares no code
//! with the series.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeierstrassParams {
    pub g: f64,
    pub p_max: usize,
}

impl WeierstrassParams {
    pub fn new(g: f64, p_max: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&g) {
            return Err(Error::InvalidArgument(format!("nome g = {g} outside [0, 1)")));
        }
        if p_max == 0 {
            return Err(Error::InvalidArgument("P_max must be positive".into()));
        }
        Ok(WeierstrassParams { g, p_max })
    }

    pub fn omega1(&self) -> f64 {
        FRAC_PI_2
    }

    /// |ω₂| = −ln g / 4; infinite at g = 0 (the trigonometric limit).
    pub fn omega2_abs(&self) -> f64 {
        -self.g.ln() / 4.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorSet {
    pub p: u64,
    pub divisors: Vec<u64>,
}

impl DivisorSet {
    pub fn sigma(&self) -> u64 {
        self.divisors.iter().sum()
    }
}

pub fn divisors(p: u64) -> Result<DivisorSet> {
    if p == 0 {
        return Err(Error::InvalidArgument("divisors of 0 are not defined".into()));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut h = 1;
    while h * h <= p {
        if p.is_multiple_of(h) {
            small.push(h);
            if h * h != p {
                large.push(p / h);
            }
        }
        h += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(DivisorSet { p, divisors: small })
}

/// V_p(z) = 8 Σ_{h | p} h (1 − cos 2hz). Panics if `p == 0`.
pub fn v_p(p: u64, z: f64) -> f64 {
    let d = divisors(p).expect("V_p needs p >= 1");
    8.0 * d
        .divisors
        .iter()
        .map(|&h| h as f64 * (1.0 - (2.0 * h as f64 * z).cos()))
        .sum::<f64>()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// 16 Σ_{p > P} p² g^p in closed form, from |V_p| ≤ 16 σ₁(p) ≤ 16 p².
pub fn tail_bound(g: f64, p_max: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&g) {
        return Err(Error::TailBound { g, p_max });
    }
    if g == 0.0 {
        return Ok(0.0);
    }
    let a = p_max as f64 + 1.0;
    let q = 1.0 - g;
    let bound = 16.0
        * g.powf(a)
        * (a * a / q + 2.0 * a * g / (q * q) + g * (1.0 + g) / (q * q * q));
    if !bound.is_finite() {
        return Err(Error::TailBound { g, p_max });
    }
    Ok(bound)
}

fn reduce_mod_pi(z: f64) -> f64 {
    z - PI * (z / PI).round()
}

fn is_lattice_multiple(z: f64) -> bool {
    reduce_mod_pi(z).abs() <= 4.0 * f64::EPSILON * z.abs().max(1.0)
}

pub fn weier_p_series(z: f64, params: &WeierstrassParams) -> Result<SeriesValue> {
    if !z.is_finite() || is_lattice_multiple(z) {
        return Err(Error::AtPole(z));
    }
    let tail = tail_bound(params.g, params.p_max)?;
    let s = z.sin();
    let mut value = 1.0 / (s * s) - 1.0 / 3.0;
    let mut gp = 1.0;
    for p in 1..=params.p_max as u64 {
        gp *= params.g;
        if gp == 0.0 {
            break;
        }
        value += gp * v_p(p, z);
    }
    Ok(SeriesValue {
        value,
        tail_bound: tail,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LatticeValue {
    pub value: f64,
    pub error_estimate: f64,
    pub cutoff: usize,
}

/// Neumaier-compensated accumulator.
#[derive(Default, Clone, Copy)]
struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Re[1/(z−w)² − 1/w²] for real z and w = a + ib.
fn lattice_term(z: f64, a: f64, b: f64) -> f64 {
    // 1/(x+iy)² has real part (x² − y²)/(x² + y²)²
    let re_inv_sq = |x: f64, y: f64| {
        let r2 = x * x + y * y;
        (x * x - y * y) / (r2 * r2)
    };
    re_inv_sq(z - a, -b) - re_inv_sq(a, b)
}

/// Σ over lattice points with max(|m|, |n|) = k, for w = 2mω₁ + 2n ω₂.
fn shell(z: f64, omega1: f64, omega2_abs: f64, k: i64) -> f64 {
    let (p1, p2) = (2.0 * omega1, 2.0 * omega2_abs);
    let mut acc = KahanSum::default();
    let mut point = |m: i64, n: i64| acc.add(lattice_term(z, m as f64 * p1, n as f64 * p2));
    for m in -k..=k {
        point(m, k);
        point(m, -k);
    }
    for n in -(k - 1)..=(k - 1) {
        point(k, n);
        point(-k, n);
    }
    acc.value()
}

/// ℘ from its defining lattice sum, accumulated over square shells in index
/// space (each shell is symmetric under w → −w) and extrapolated in the
/// cutoff K. The truncated sum behaves as S(K) = ℘ + a/K² + b/K⁴ + …, so two
/// Richardson steps over K, 2K, 4K remove the leading terms. The cutoff is
/// doubled from 32 until two successive extrapolations agree to `tol`, and
/// fails if that needs more than `cutoff`.
pub fn weier_p_lattice(
    z: f64,
    omega1: f64,
    omega2_abs: f64,
    cutoff: usize,
    tol: f64,
) -> Result<LatticeValue> {
    if !(omega1 > 0.0 && omega2_abs > 0.0 && omega2_abs.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "semiperiods must be positive and finite, got {omega1}, {omega2_abs}"
        )));
    }
    let p1 = 2.0 * omega1;
    if !z.is_finite() || (z / p1 - (z / p1).round()).abs() * p1 <= 4.0 * f64::EPSILON * z.abs().max(1.0)
    {
        return Err(Error::AtPole(z));
    }
    const START: usize = 32;
    if cutoff < 4 * START {
        return Err(Error::LatticeNotConverged {
            cutoff,
            estimate: f64::INFINITY,
            tol,
        });
    }

    let mut total = KahanSum::default();
    total.add(1.0 / (z * z));
    let mut reached = 0i64;
    let mut sums: Vec<f64> = Vec::new();
    let sum_to = |k_max: i64, total: &mut KahanSum, reached: &mut i64| {
        for k in *reached + 1..=k_max {
            total.add(shell(z, omega1, omega2_abs, k));
        }
        *reached = k_max;
        total.value()
    };

    let richardson = |s: &[f64]| {
        let r1a = (4.0 * s[1] - s[0]) / 3.0;
        let r1b = (4.0 * s[2] - s[1]) / 3.0;
        (16.0 * r1b - r1a) / 15.0
    };

    let mut k = START;
    let mut previous: Option<f64> = None;
    let mut estimate = f64::INFINITY;
    while k <= cutoff {
        sums.push(sum_to(k as i64, &mut total, &mut reached));
        if sums.len() >= 3 {
            let r = richardson(&sums[sums.len() - 3..]);
            if let Some(prev) = previous {
                estimate = (r - prev).abs();
                if estimate <= tol {
                    return Ok(LatticeValue {
                        value: r,
                        error_estimate: estimate,
                        cutoff: k,
                    });
                }
            }
            previous = Some(r);
        }
        k *= 2;
    }
    Err(Error::LatticeNotConverged {
        cutoff,
        estimate,
        tol,
    })
}
