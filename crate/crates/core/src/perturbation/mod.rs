//! Perturbative energy corrections around the trigonometric limit.
//!
//! The elliptic energy is expanded in the nome-derived parameter g as
//! `E_trig + shift + g δ₁ + g² δ₂ + O(g³)`.

pub mod closed;

use num::{Signed, Zero};
use serde::Serialize;

use crate::algebra::{trig_energy, trig_energy_gap, EnergyConvention, QuantumNumbers};
use crate::coupling::{int, to_f64, Coupling, Rational};
use crate::error::{Error, Result};
use crate::jack::JackBasis;

/// −κ(κ−1)N(N−1)/6 for N particles.
pub fn const_shift(particles: usize, kappa: &Coupling) -> Rational {
    let n = int(particles as i64);
    -(kappa.interaction() * &n * (&n - int(1))) / int(6)
}

/// First-order coefficient 4κ(κ−1)(N² − a_m), for any rank.
pub fn delta1_generic(m: &QuantumNumbers, kappa: &Coupling, n: usize) -> Result<Rational> {
    let mut basis = JackBasis::for_rank(kappa.clone(), n)?;
    delta1_with_basis(&mut basis, m)
}

/// As [`delta1_generic`], reusing a cached basis.
pub fn delta1_with_basis(basis: &mut JackBasis, m: &QuantumNumbers) -> Result<Rational> {
    m.check_rank(basis.rank())?;
    // at κ = 0 the basis degenerates to monomials and the prefactor is zero anyway
    if basis.kappa().value().is_zero() {
        return Ok(Rational::zero());
    }
    let particles = int(basis.nvars() as i64);
    let a = basis.a_coefficient(m)?;
    Ok(int(4) * basis.kappa().interaction() * (&particles * &particles - a))
}

/// Rank-1 recurrence coefficient with c_m = 0 for m ≤ 0.
fn c(m: i64, kappa: &Coupling) -> Result<Rational> {
    if m <= 0 {
        return Ok(Rational::zero());
    }
    closed::c_coefficient(m as u32).eval(kappa.value(), "rank-1 recurrence coefficient")
}

/// The diagonal matrix element ⟨4 + 7z² − 2z⁴⟩ in terms of c.
pub fn a1_bracket(m: u32, kappa: &Coupling) -> Result<Rational> {
    let m = m as i64;
    let (cm1, c0, c1, c2) = (c(m - 1, kappa)?, c(m, kappa)?, c(m + 1, kappa)?, c(m + 2, kappa)?);
    let s = &c0 + &c1;
    Ok(int(4) + int(7) * &s - int(2) * &s * &s - int(2) * &c2 * &c1 - int(2) * &c0 * &cm1)
}

/// Second-order rank-1 coefficient from the recurrence coefficients.
pub fn delta2_a1_recurrence(m: u32, kappa: &Coupling) -> Result<Rational> {
    let mi = m as i64;
    let gap = |other: u32| -> Result<Rational> {
        let here = QuantumNumbers::new(vec![m])?;
        let there = QuantumNumbers::new(vec![other])?;
        let g = trig_energy_gap(&here, &there, kappa, 1)?;
        if g.is_zero() {
            return Err(Error::Pole {
                what: "rank-1 second-order energy denominator".into(),
                kappa: kappa.to_string(),
                factors: vec![format!("E({m}) - E({other})")],
            });
        }
        Ok(g)
    };
    let inter = kappa.interaction();
    let mut mixing = c(mi + 2, kappa)? * c(mi + 1, kappa)? / gap(m + 2)?;
    if m >= 2 {
        let num = c(mi, kappa)? * c(mi - 1, kappa)?;
        if !num.is_zero() {
            mixing += num / gap(m - 2)?;
        }
    }
    Ok(int(4) * &inter * a1_bracket(m, kappa)? + int(16) * &inter * &inter * mixing)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Order {
    First,
    Second,
}

impl Order {
    pub fn from_index(k: usize) -> Result<Self> {
        match k {
            1 => Ok(Order::First),
            2 => Ok(Order::Second),
            k => Err(Error::OrderUnsupported(k)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyExpansion {
    pub e_trig: Rational,
    pub const_shift: Rational,
    pub d1: Rational,
    pub d2: Option<Rational>,
    pub order: Order,
}

impl EnergyExpansion {
    pub fn evaluate(&self, g: f64) -> f64 {
        let base = to_f64(&self.e_trig) + to_f64(&self.const_shift) + g * to_f64(&self.d1);
        match &self.d2 {
            Some(d2) => base + g * g * to_f64(d2),
            None => base,
        }
    }

    /// The exact value at rational g.
    pub fn evaluate_exact(&self, g: &Rational) -> Rational {
        let mut v = &self.e_trig + &self.const_shift + g * &self.d1;
        if let Some(d2) = &self.d2 {
            v += g * g * d2;
        }
        v
    }
}

/// Energy through the requested order, with the trigonometric energy in the
/// Weyl convention. Second order is available at rank 1 only.
pub fn energy_expansion(
    m: &QuantumNumbers,
    kappa: &Coupling,
    n: usize,
    order: Order,
) -> Result<EnergyExpansion> {
    m.check_rank(n)?;
    if order == Order::Second && n != 1 {
        return Err(Error::OrderUnsupported(2));
    }
    let d2 = match order {
        Order::First => None,
        Order::Second => Some(delta2_a1_recurrence(m.as_slice()[0], kappa)?),
    };
    Ok(EnergyExpansion {
        e_trig: trig_energy(m, kappa, n, EnergyConvention::Weyl)?.value,
        const_shift: const_shift(n + 1, kappa),
        d1: delta1_generic(m, kappa, n)?,
        d2,
        order,
    })
}

/// Relative distance |a − b| / max(1, |b|) for reporting.
pub fn relative_gap(a: &Rational, b: &Rational) -> f64 {
    let scale = b.abs().max(int(1));
    to_f64(&((a - b).abs() / scale))
}
