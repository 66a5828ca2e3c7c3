//! Spectral diagonalization of the two-particle elliptic Hamiltonian in the
//! trigonometric eigenbasis, used as an independent check on the
//! perturbative energies.
//!
//! In the orthonormal basis Φ_m = Ψ_m/‖Ψ_m‖ the relative coordinate enters
//! only through z = 2cos q, which is tridiagonal. Every cos 2hq is then the
//! Chebyshev polynomial T_{2h}(z/2) and the elliptic potential is banded.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num::{Signed, Zero};
use serde::Serialize;

use crate::algebra::QuantumNumbers;
use crate::coupling::{int, to_f64, Coupling, Rational};
use crate::elliptic::divisors;
use crate::error::{Error, Result};
use crate::perturbation::closed::{c_coefficient, delta2_a1_closed};
use crate::perturbation::{const_shift, energy_expansion, EnergyExpansion, Order};

pub const BASIS_TOLERANCE: f64 = 1e-12;
pub const POTENTIAL_TOLERANCE: f64 = 1e-12;

/// Symmetric tridiagonal matrix with `diag.len() == offdiag.len() + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalOperator {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut a = DMatrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = self.diag[i];
        }
        for (i, &b) in self.offdiag.iter().enumerate() {
            a[(i, i + 1)] = b;
            a[(i + 1, i)] = b;
        }
        a
    }
}

fn recurrence_c(m: u32, kappa: &Coupling) -> Result<Rational> {
    c_coefficient(m).eval(kappa.value(), "rank-1 recurrence coefficient")
}

/// z in the orthonormal basis: zero diagonal, (m, m+1) entry √c_{m+1}.
pub fn build_z1(dim: usize, kappa: &Coupling) -> Result<TridiagonalOperator> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!("basis size must be at least 2, got {dim}")));
    }
    let mut offdiag = Vec::with_capacity(dim - 1);
    for m in 1..dim as u32 {
        let c = recurrence_c(m, kappa)?;
        if c.is_negative() {
            return Err(Error::NegativeRecurrence { m: m as usize, value: c.to_string() });
        }
        offdiag.push(to_f64(&c).sqrt());
    }
    Ok(TridiagonalOperator { diag: vec![0.0; dim], offdiag })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BandedSymmetric {
    bandwidth: usize,
    matrix: DMatrix<f64>,
}

impl BandedSymmetric {
    /// Symmetrizes `matrix` and zeroes everything outside the band.
    pub fn new(mut matrix: DMatrix<f64>, bandwidth: usize) -> Self {
        let n = matrix.nrows();
        for i in 0..n {
            for j in i + 1..n {
                let v = if j - i > bandwidth { 0.0 } else { 0.5 * (matrix[(i, j)] + matrix[(j, i)]) };
                matrix[(i, j)] = v;
                matrix[(j, i)] = v;
            }
        }
        BandedSymmetric { bandwidth, matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn truncated(&self, dim: usize) -> BandedSymmetric {
        BandedSymmetric {
            bandwidth: self.bandwidth.min(dim.saturating_sub(1)),
            matrix: self.matrix.view((0, 0), (dim, dim)).into_owned(),
        }
    }
}

/// T_0(Z/2), …, T_kmax(Z/2) by T_{k+1} = Z T_k − T_{k−1}.
fn chebyshev_powers(z: &DMatrix<f64>, kmax: usize) -> Vec<DMatrix<f64>> {
    let n = z.nrows();
    let mut out = vec![DMatrix::identity(n, n)];
    if kmax >= 1 {
        out.push(z * 0.5);
    }
    for k in 1..kmax {
        let next = z * &out[k] - &out[k - 1];
        out.push(next);
    }
    out
}

/// cos(2hq) acting on the span of `z`'s basis. Rows and columns below
/// `dim − h` agree with the untruncated operator.
pub fn cos_operator(h: usize, z: &TridiagonalOperator) -> Result<BandedSymmetric> {
    if 2 * h >= z.dim() {
        return Err(Error::BandwidthExceeded { bandwidth: 2 * h, dim: z.dim() });
    }
    let powers = chebyshev_powers(&z.to_dense(), 2 * h);
    Ok(BandedSymmetric::new(powers[2 * h].clone(), 2 * h))
}

/// The truncated elliptic Hamiltonian for two particles, with the potential
/// series cut after g^{p_max}.
pub fn build_hamiltonian(dim: usize, kappa: &Coupling, g: f64, p_max: usize) -> Result<BandedSymmetric> {
    if !(0.0..1.0).contains(&g) {
        return Err(Error::InvalidArgument(format!("g must lie in [0, 1), got {g}")));
    }
    let padded = dim + p_max;
    let z = build_z1(padded, kappa)?;
    let mut h = DMatrix::<f64>::zeros(padded, padded);
    let k = to_f64(kappa.value());
    let shift = to_f64(&const_shift(2, kappa));
    for m in 0..padded {
        h[(m, m)] = (m as f64 + k).powi(2) + shift;
    }
    let strength = to_f64(&kappa.interaction());
    if strength != 0.0 && g != 0.0 && p_max > 0 {
        if 2 * p_max >= padded {
            return Err(Error::BandwidthExceeded { bandwidth: 2 * p_max, dim: padded });
        }
        let powers = chebyshev_powers(&z.to_dense(), 2 * p_max);
        let ident = DMatrix::<f64>::identity(padded, padded);
        let mut gp = 1.0;
        for p in 1..=p_max {
            gp *= g;
            let mut vp = DMatrix::<f64>::zeros(padded, padded);
            for &d in &divisors(p as u64)?.divisors {
                let d = d as usize;
                vp += (&ident - &powers[2 * d]) * (8.0 * d as f64);
            }
            h += vp * (strength * gp);
        }
    }
    Ok(BandedSymmetric::new(h, 2 * p_max).truncated(dim))
}

fn rayleigh(a: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    x.dot(&(a * x)) / x.dot(x)
}

/// The `k` smallest eigenvalues in ascending order, each polished by a
/// Rayleigh quotient and one inverse-iteration step.
pub fn lowest_eigenvalues(op: &BandedSymmetric, k: usize) -> Result<Vec<f64>> {
    let n = op.dim();
    if k > n {
        return Err(Error::InvalidArgument(format!("requested {k} eigenvalues of a {n}x{n} operator")));
    }
    let a = op.matrix();
    let eig = SymmetricEigen::try_new(a.clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::EigenFailure(format!("no convergence for dimension {n}")))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let mut out = Vec::with_capacity(k);
    for &i in order.iter().take(k) {
        let x = eig.eigenvectors.column(i).into_owned();
        let mut lambda = rayleigh(a, &x);
        let shifted = a - DMatrix::identity(n, n) * lambda;
        if let Some(y) = shifted.lu().solve(&x) {
            let refined = rayleigh(a, &y);
            if refined.is_finite() && (refined - lambda).abs() <= 1e-8 * lambda.abs().max(1.0) {
                lambda = refined;
            }
        }
        if !lambda.is_finite() {
            return Err(Error::EigenFailure(format!("non-finite eigenvalue at index {i}")));
        }
        out.push(lambda);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Which second-order coefficient feeds the perturbative comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Delta2Form {
    Recurrence,
    AsPrinted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleRow {
    pub m: u32,
    pub g: f64,
    pub e_num: f64,
    pub e_pert: f64,
    pub residual: f64,
    /// r(g) / r(g/2), when g/2 is also in the study.
    pub ratio: Option<f64>,
    pub basis_change: f64,
    pub potential_change: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub kappa: String,
    pub basis_size: usize,
    pub p_max: usize,
    pub delta2_form: Delta2Form,
    pub basis_tolerance: f64,
    pub potential_tolerance: f64,
    pub rows: Vec<OracleRow>,
}

impl OracleReport {
    pub fn ratios(&self, m: u32) -> Vec<f64> {
        self.rows.iter().filter(|r| r.m == m).filter_map(|r| r.ratio).collect()
    }
}

fn expansion_for(m: u32, kappa: &Coupling, form: Delta2Form) -> Result<EnergyExpansion> {
    let label = QuantumNumbers::new(vec![m])?;
    let mut e = energy_expansion(&label, kappa, 1, Order::Second)?;
    if form == Delta2Form::AsPrinted {
        e.d2 = Some(delta2_a1_closed(m, kappa)?);
    }
    Ok(e)
}

/// Numerical levels against the second-order expansion over a list of g,
/// with both truncation monitors enforced.
pub fn g3_scaling_study(
    kappa: &Coupling,
    levels: &[u32],
    g_list: &[f64],
    dim: usize,
    p_max: usize,
    form: Delta2Form,
) -> Result<OracleReport> {
    let k = levels.iter().copied().max().map_or(0, |m| m as usize + 1);
    if k > dim {
        return Err(Error::InvalidArgument(format!("level {} exceeds basis size {dim}", k - 1)));
    }
    let expansions = levels
        .iter()
        .map(|&m| expansion_for(m, kappa, form))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for &g in g_list {
        let base = lowest_eigenvalues(&build_hamiltonian(dim, kappa, g, p_max)?, k)?;
        let wide = lowest_eigenvalues(&build_hamiltonian(2 * dim, kappa, g, p_max)?, k)?;
        let deep = lowest_eigenvalues(&build_hamiltonian(dim, kappa, g, p_max + 4)?, k)?;
        for (&m, e) in levels.iter().zip(&expansions) {
            let i = m as usize;
            let basis_change = (wide[i] - base[i]).abs();
            let potential_change = (deep[i] - base[i]).abs();
            if basis_change >= BASIS_TOLERANCE {
                return Err(Error::Truncation(format!(
                    "level {m} at g={g}: doubling the basis moved the eigenvalue by {basis_change:e}"
                )));
            }
            if potential_change >= POTENTIAL_TOLERANCE * base[i].abs().max(1.0) {
                return Err(Error::Truncation(format!(
                    "level {m} at g={g}: four more potential terms moved the eigenvalue by {potential_change:e}"
                )));
            }
            let e_pert = e.evaluate(g);
            rows.push(OracleRow {
                m,
                g,
                e_num: base[i],
                e_pert,
                residual: (base[i] - e_pert).abs(),
                ratio: None,
                basis_change,
                potential_change,
            });
        }
    }
    for i in 0..rows.len() {
        let (m, g) = (rows[i].m, rows[i].g);
        let half = rows
            .iter()
            .find(|r| r.m == m && ((2.0 * r.g - g).abs() <= 1e-15 * g))
            .map(|r| r.residual);
        rows[i].ratio = half.map(|r0| rows[i].residual / r0);
    }
    rows.sort_by(|a, b| a.m.cmp(&b.m).then(a.g.total_cmp(&b.g)));
    Ok(OracleReport {
        kappa: kappa.to_string(),
        basis_size: dim,
        p_max,
        delta2_form: form,
        basis_tolerance: BASIS_TOLERANCE,
        potential_tolerance: POTENTIAL_TOLERANCE,
        rows,
    })
}

/// ∫_0^π |sin q|^{2κ} f(q) dq by the trapezoid rule with doubling.
fn periodic_quadrature(kappa: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
    let eval = |n: usize| {
        let h = std::f64::consts::PI / n as f64;
        (0..n)
            .map(|i| {
                let q = i as f64 * h;
                q.sin().abs().powf(2.0 * kappa) * f(q)
            })
            .sum::<f64>()
            * h
    };
    let mut n = 16;
    let mut prev = eval(n);
    while n < 1 << 22 {
        n *= 2;
        let cur = eval(n);
        if (cur - prev).abs() <= 1e-14 * cur.abs() {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Quadrature(format!("trapezoid rule did not settle by {n} nodes")))
}

/// |‖Ψ_m‖² / (c_m ‖Ψ_{m−1}‖²) − 1| with the norms from quadrature and the
/// polynomials from the monic three-term recurrence.
pub fn norm_quadrature_check(m: u32, kappa: &Coupling) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidArgument("the norm ratio needs m >= 1".into()));
    }
    if !kappa.is_positive() {
        return Err(Error::InvalidArgument(format!("the norm ratio needs κ > 0, got {kappa}")));
    }
    let cs = (1..m)
        .map(|j| recurrence_c(j, kappa).map(|c| to_f64(&c)))
        .collect::<Result<Vec<f64>>>()?;
    let monic = |q: f64, upto: u32| {
        let z = 2.0 * q.cos();
        let (mut prev, mut cur) = (0.0, 1.0);
        for j in 0..upto as usize {
            let next = z * cur - if j == 0 { 0.0 } else { cs[j - 1] * prev };
            prev = cur;
            cur = next;
        }
        cur
    };
    let k = to_f64(kappa.value());
    let upper = periodic_quadrature(k, |q| monic(q, m).powi(2))?;
    let lower = periodic_quadrature(k, |q| monic(q, m - 1).powi(2))?;
    let c = to_f64(&recurrence_c(m, kappa)?);
    Ok((upper / lower / c - 1.0).abs())
}

/// ⟨z^k⟩ in state m from the exact monic recurrence z p_j = p_{j+1} + c_j p_{j−1}.
pub fn moment(m: u32, k: u32, kappa: &Coupling) -> Result<Rational> {
    let top = (m + k + 1) as usize;
    let cs = (0..=top as u32)
        .map(|j| if j == 0 { Ok(Rational::zero()) } else { recurrence_c(j, kappa) })
        .collect::<Result<Vec<_>>>()?;
    let mut v = vec![Rational::zero(); top + 1];
    v[m as usize] = int(1);
    for _ in 0..k {
        let mut next = vec![Rational::zero(); top + 1];
        for (j, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            next[j + 1] += a;
            if j > 0 {
                next[j - 1] += a * &cs[j];
            }
        }
        v = next;
    }
    Ok(v[m as usize].clone())
}

/// ⟨4 + 7z² − 2z⁴⟩ from operator moments.
pub fn operator_bracket(m: u32, kappa: &Coupling) -> Result<Rational> {
    Ok(int(4) + int(7) * moment(m, 2, kappa)? - int(2) * moment(m, 4, kappa)?)
}

/// Sorted, deduplicated g list with each value and its double.
pub fn doubling_grid(g: &[f64]) -> Vec<f64> {
    let set: BTreeSet<u64> = g.iter().flat_map(|&x| [x.to_bits(), (2.0 * x).to_bits()]).collect();
    let mut out: Vec<f64> = set.into_iter().map(f64::from_bits).collect();
    out.sort_by(f64::total_cmp);
    out
}
