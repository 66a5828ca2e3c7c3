//! Generalized Gegenbauer (Jack) polynomials of A_n and their recurrence
//! coefficients.
//!
//! P_λ is the unique symmetric polynomial `m_λ + Σ_{μ<λ} u_μ m_μ` that is an
//! eigenfunction of
//!
//! ```text
//! D = Σ_i (x_i ∂_i)² + κ Σ_{i<j} (x_i + x_j)/(x_i − x_j) (x_i ∂_i − x_j ∂_j)
//! ```
//!
//! with eigenvalue `Σ λ_i² + κ Σ (N + 1 − 2i) λ_i`. The coefficients u_μ are
//! obtained by a triangular solve over exact rationals, processing labels in
//! decreasing lexicographic order.
//!
//! In the center-of-mass frame `z_N = e_N = 1`, so a label with N nonzero parts
//! is identified with the label obtained by removing its full columns.

use std::collections::HashMap;

use num::complex::Complex64;
use num::{One, Zero};

use crate::algebra::{mu, QuantumNumbers};
use crate::coupling::{int, Coupling, Rational};
use crate::error::{Error, Result};
use crate::symmetric::{
    distinct_permutations, partition_to_quantum, partitions_of, quantum_to_partition, Partition,
    SymmetricPolynomial,
};

/// Eigenvalue of `D` on P_λ.
pub fn sekiguchi_eigenvalue(lambda: &Partition, kappa: &Coupling, nvars: usize) -> Rational {
    let mut free = 0i64;
    let mut coupled = 0i64;
    for (i, &p) in lambda.parts().iter().enumerate() {
        free += (p as i64) * (p as i64);
        coupled += (nvars as i64 + 1 - 2 * (i as i64 + 1)) * p as i64;
    }
    int(free) + kappa.value() * int(coupled)
}

/// The κ-linear part of `D` applied to m_ν, as integer coefficients on m_μ
/// (diagonal entry included).
fn coupling_action(nu: &Partition, nvars: usize) -> Vec<(Partition, i64)> {
    let mut acc: HashMap<Vec<u32>, i64> = HashMap::new();
    let mut add = |v: Vec<u32>, c: i64| {
        if v.windows(2).all(|w| w[0] >= w[1]) {
            *acc.entry(v).or_insert(0) += c;
        }
    };
    for a in distinct_permutations(&nu.padded(nvars)) {
        for i in 0..nvars {
            for j in i + 1..nvars {
                if a[i] <= a[j] {
                    continue;
                }
                let d = a[i] - a[j];
                let c = d as i64;
                add(a.clone(), c);
                let mut swapped = a.clone();
                swapped.swap(i, j);
                add(swapped, c);
                for k in 1..d {
                    let mut v = a.clone();
                    v[i] -= k;
                    v[j] += k;
                    add(v, 2 * c);
                }
            }
        }
    }
    let mut out: Vec<(Partition, i64)> = acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(v, c)| (Partition::from_exponents(&v), c))
        .collect();
    out.sort();
    out
}

/// Coefficients of z_1·P_m (`up`, on P_{m+μ_j}) and z_n·P_m (`down`, on
/// P_{m−μ_j}), indexed by j − 1. Targets with a negative entry carry 0.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceTable {
    pub m: QuantumNumbers,
    pub up: Vec<Rational>,
    pub down: Vec<Rational>,
}

impl RecurrenceTable {
    /// c_{j,m}, 1-based.
    pub fn up(&self, j: usize) -> &Rational {
        &self.up[j - 1]
    }

    /// c̃_{j,m}, 1-based.
    pub fn down(&self, j: usize) -> &Rational {
        &self.down[j - 1]
    }

    pub fn up_pairs(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.up.iter().enumerate().map(|(i, c)| (i + 1, c))
    }

    pub fn down_pairs(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.down.iter().enumerate().map(|(i, c)| (i + 1, c))
    }
}

/// Jack polynomials and recurrence tables for one coupling and particle
/// number, memoized.
#[derive(Clone, Debug)]
pub struct JackBasis {
    kappa: Coupling,
    nvars: usize,
    polys: HashMap<Partition, SymmetricPolynomial>,
    actions: HashMap<Partition, Vec<(Partition, i64)>>,
    tables: HashMap<QuantumNumbers, RecurrenceTable>,
}

impl JackBasis {
    pub fn new(kappa: Coupling, nvars: usize) -> Result<Self> {
        if nvars < 2 {
            return Err(Error::ZeroRank);
        }
        Ok(JackBasis {
            kappa,
            nvars,
            polys: HashMap::new(),
            actions: HashMap::new(),
            tables: HashMap::new(),
        })
    }

    /// Basis for rank-`n` quantum numbers (N = n + 1 variables).
    pub fn for_rank(kappa: Coupling, n: usize) -> Result<Self> {
        Self::new(kappa, n + 1)
    }

    pub fn kappa(&self) -> &Coupling {
        &self.kappa
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.nvars - 1
    }

    pub fn polynomial(&mut self, lambda: &Partition) -> Result<&SymmetricPolynomial> {
        if !self.polys.contains_key(lambda) {
            let p = self.compute(lambda)?;
            self.polys.insert(lambda.clone(), p);
        }
        Ok(&self.polys[lambda])
    }

    fn action(&mut self, nu: &Partition) -> &[(Partition, i64)] {
        let nvars = self.nvars;
        self.actions
            .entry(nu.clone())
            .or_insert_with(|| coupling_action(nu, nvars))
    }

    fn compute(&mut self, lambda: &Partition) -> Result<SymmetricPolynomial> {
        if lambda.length() > self.nvars {
            return Err(Error::PartitionTooLong {
                parts: lambda.parts().to_vec(),
                max: self.nvars,
            });
        }
        let top = lambda.parts().first().copied().unwrap_or(0);
        let basis: Vec<Partition> = partitions_of(lambda.size(), self.nvars, top)
            .into_iter()
            .filter(|mu| lambda.dominates(mu))
            .collect();
        let kappa = self.kappa.value().clone();
        let e_top = sekiguchi_eigenvalue(lambda, &self.kappa, self.nvars);

        let mut poly = SymmetricPolynomial::zero(self.nvars);
        let mut rhs: HashMap<Partition, Rational> = HashMap::new();
        for nu in &basis {
            let u = if nu == lambda {
                Rational::one()
            } else {
                let Some(r) = rhs.remove(nu) else { continue };
                let gap = &e_top - sekiguchi_eigenvalue(nu, &self.kappa, self.nvars);
                if gap.is_zero() {
                    return Err(Error::Pole {
                        what: format!("Jack polynomial P{:?}", lambda.parts()),
                        kappa: self.kappa.to_string(),
                        factors: vec![format!(
                            "E{:?} - E{:?}",
                            lambda.parts(),
                            nu.parts()
                        )],
                    });
                }
                r / gap
            };
            if u.is_zero() {
                continue;
            }
            for (mu, c) in self.action(nu).to_vec() {
                if &mu != nu {
                    *rhs.entry(mu).or_insert_with(Rational::zero) += &kappa * int(c) * &u;
                }
            }
            poly.add_term(nu.clone(), u)?;
        }
        Ok(poly)
    }

    /// Expands a symmetric polynomial in the Jack basis by peeling off the
    /// lexicographically leading monomial. Labels are returned unstripped.
    pub fn expand(&mut self, f: &SymmetricPolynomial) -> Result<Vec<(Partition, Rational)>> {
        let mut rem = f.clone();
        let mut out = Vec::new();
        while let Some((mu, c)) = rem.leading() {
            let (mu, c) = (mu.clone(), c.clone());
            let p = self.polynomial(&mu)?.clone();
            rem.axpy(&-c.clone(), &p);
            out.push((mu, c));
        }
        Ok(out)
    }

    fn pieri(&mut self, lambda: &Partition, r: usize) -> Result<Vec<(Partition, Rational)>> {
        let n = self.nvars;
        let product = self.polynomial(lambda)?.mul_elementary(r);
        let base = lambda.padded(n);
        let mut out = Vec::new();
        for (nu, c) in self.expand(&product)? {
            let diff: Option<Vec<u32>> = nu
                .padded(n)
                .iter()
                .zip(&base)
                .map(|(a, b)| a.checked_sub(*b))
                .collect();
            let vertical_strip = diff
                .as_ref()
                .is_some_and(|d| d.iter().all(|&x| x <= 1) && d.iter().sum::<u32>() as usize == r);
            if !vertical_strip {
                return Err(Error::ExpansionResidual {
                    what: format!("e_{r} * P{:?}", lambda.parts()),
                    partition: nu.parts().to_vec(),
                });
            }
            out.push((nu.strip_columns(n), c));
        }
        Ok(out)
    }

    /// z_1 · P_λ in the Jack basis, center-of-mass labels.
    pub fn multiply_e1(&mut self, lambda: &Partition) -> Result<Vec<(Partition, Rational)>> {
        self.pieri(lambda, 1)
    }

    /// z_n · P_λ = e_{N−1} · P_λ in the Jack basis, center-of-mass labels.
    pub fn multiply_e_last(&mut self, lambda: &Partition) -> Result<Vec<(Partition, Rational)>> {
        self.pieri(lambda, self.nvars - 1)
    }

    pub fn recurrence_table(&mut self, m: &QuantumNumbers) -> Result<RecurrenceTable> {
        if let Some(t) = self.tables.get(m) {
            return Ok(t.clone());
        }
        let n = self.rank();
        if m.rank() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: m.rank(),
            });
        }
        let lambda = quantum_to_partition(m, self.nvars)?;
        let ups = self.multiply_e1(&lambda)?;
        let downs = self.multiply_e_last(&lambda)?;

        let collect = |terms: Vec<(Partition, Rational)>, sign: i64, what: &str| {
            let mut coeffs = vec![Rational::zero(); n + 1];
            for (nu, c) in terms {
                let target = partition_to_quantum(&nu, n + 1)?;
                let j = (1..=n + 1).find(|&j| {
                    let shift: Vec<i64> = mu(j, n).iter().map(|x| sign * x).collect();
                    m.shifted(&shift).as_ref() == Some(&target)
                });
                match j {
                    Some(j) => coeffs[j - 1] = c,
                    None => {
                        return Err(Error::ExpansionResidual {
                            what: format!("{what} * P{m}"),
                            partition: nu.parts().to_vec(),
                        })
                    }
                }
            }
            Ok(coeffs)
        };
        let table = RecurrenceTable {
            m: m.clone(),
            up: collect(ups, 1, "z_1")?,
            down: collect(downs, -1, "z_n")?,
        };
        self.tables.insert(m.clone(), table.clone());
        Ok(table)
    }

    /// a_m = Σ_j c̃_{j,m} c_{j,m−μ_j}: the diagonal coefficient of z_1 z_n P_m.
    pub fn a_coefficient(&mut self, m: &QuantumNumbers) -> Result<Rational> {
        let n = self.rank();
        let table = self.recurrence_table(m)?;
        let mut acc = Rational::zero();
        for j in 1..=n + 1 {
            let back: Vec<i64> = mu(j, n).iter().map(|x| -x).collect();
            if let Some(prev) = m.shifted(&back) {
                let down = table.down(j);
                if !down.is_zero() {
                    acc += down * self.recurrence_table(&prev)?.up(j);
                }
            }
        }
        Ok(acc)
    }
}

pub fn jack_polynomial(
    lambda: &Partition,
    kappa: &Coupling,
    nvars: usize,
) -> Result<SymmetricPolynomial> {
    JackBasis::new(kappa.clone(), nvars)?
        .polynomial(lambda)
        .cloned()
}

pub fn recurrence_table(m: &QuantumNumbers, kappa: &Coupling, n: usize) -> Result<RecurrenceTable> {
    check_rank(m, n)?;
    JackBasis::for_rank(kappa.clone(), n)?.recurrence_table(m)
}

pub fn a_coefficient(m: &QuantumNumbers, kappa: &Coupling, n: usize) -> Result<Rational> {
    check_rank(m, n)?;
    JackBasis::for_rank(kappa.clone(), n)?.a_coefficient(m)
}

fn check_rank(m: &QuantumNumbers, n: usize) -> Result<()> {
    if m.rank() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: m.rank(),
        });
    }
    Ok(())
}

/// z_1, …, z_N: elementary symmetric functions of x_j = e^{2 i q_j}.
pub fn elementary_from_coordinates(q: &[f64]) -> Vec<Complex64> {
    // coefficients of Π_j (1 + x_j t), lowest degree first
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &qj in q {
        let x = Complex64::from_polar(1.0, 2.0 * qj);
        let mut next = coeffs.clone();
        next.push(Complex64::new(0.0, 0.0));
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += x * c;
        }
        coeffs = next;
    }
    coeffs.split_off(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::rat;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn qn(v: &[u32]) -> QuantumNumbers {
        QuantumNumbers::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_box_is_monic_monomial() {
        for k in [rat(1, 2), rat(3, 1)] {
            let p = jack_polynomial(&part(&[1]), &Coupling::new(k), 2).unwrap();
            assert_eq!(p, SymmetricPolynomial::monomial(part(&[1]), 2).unwrap());
        }
    }

    #[test]
    fn two_box_row() {
        for (p, q) in [(1, 2), (2, 1), (7, 3)] {
            let k = Coupling::from_ratio(p, q);
            let poly = jack_polynomial(&part(&[2]), &k, 2).unwrap();
            let expect = int(2) * k.value() / (k.value() + int(1));
            assert_eq!(poly.coeff(&part(&[2])), int(1));
            assert_eq!(poly.coeff(&part(&[1, 1])), expect);
            assert_eq!(poly.len(), 2);
        }
    }

    #[test]
    fn coupling_action_diagonal_matches_eigenvalue() {
        for nvars in 2..=4 {
            for size in 0..=6 {
                for nu in partitions_of(size, nvars, size) {
                    let diag = coupling_action(&nu, nvars)
                        .into_iter()
                        .find(|(mu, _)| *mu == nu)
                        .map_or(0, |(_, c)| c);
                    let expect: i64 = nu
                        .parts()
                        .iter()
                        .enumerate()
                        .map(|(i, &p)| (nvars as i64 - 1 - 2 * i as i64) * p as i64)
                        .sum();
                    assert_eq!(diag, expect, "{nu:?} in {nvars} variables");
                }
            }
        }
    }

    #[test]
    fn rejects_long_partitions() {
        let k = Coupling::from_ratio(2, 1);
        assert!(matches!(
            jack_polynomial(&part(&[1, 1, 1]), &k, 2),
            Err(Error::PartitionTooLong { .. })
        ));
    }

    #[test]
    fn reports_pole() {
        // κ = −1: E[2] − E[1,1] = 2 + 2κ vanishes
        let err = jack_polynomial(&part(&[2]), &Coupling::from_ratio(-1, 1), 2).unwrap_err();
        assert!(matches!(err, Error::Pole { .. }), "{err}");
    }

    #[test]
    fn e1_times_constant() {
        let mut basis = JackBasis::new(Coupling::from_ratio(5, 2), 3).unwrap();
        let terms = basis.multiply_e1(&Partition::default()).unwrap();
        assert_eq!(terms, vec![(part(&[1]), int(1))]);
    }

    #[test]
    fn rank_one_table() {
        let t = recurrence_table(&qn(&[1]), &Coupling::from_ratio(2, 1), 1).unwrap();
        assert_eq!(t.up, vec![int(1), rat(2, 3)]);
        assert_eq!(t.down, vec![rat(2, 3), int(1)]);
    }

    #[test]
    fn rank_one_matches_gegenbauer_coefficient() {
        let k = Coupling::from_ratio(5, 2);
        let kv = k.value().clone();
        let mut basis = JackBasis::for_rank(k, 1).unwrap();
        for m in 0..8u32 {
            let t = basis.recurrence_table(&qn(&[m])).unwrap();
            let mm = int(m as i64);
            let cm = &mm * (&mm - int(1) + int(2) * &kv) / ((&mm + &kv) * (&mm - int(1) + &kv));
            assert_eq!(t.up(2), &cm, "m = {m}");
        }
    }

    #[test]
    fn invalid_targets_are_zero() {
        let t = recurrence_table(&qn(&[0, 1]), &Coupling::from_ratio(3, 2), 2).unwrap();
        assert!(t.down(1).is_zero());
        assert!(t.up(2).is_zero());
        assert_eq!(t.up(1), &int(1));
        assert_eq!(t.down(3), &int(1));
    }

    #[test]
    fn free_fermion_coefficients_are_one() {
        let k = Coupling::from_ratio(1, 1);
        for n in 1..=3usize {
            let mut basis = JackBasis::for_rank(k.clone(), n).unwrap();
            for total in 0..=4u32 {
                for m in labels(n, total) {
                    let t = basis.recurrence_table(&m).unwrap();
                    for c in t.up.iter().chain(&t.down) {
                        assert!(c.is_zero() || c.is_one(), "{m}: {c}");
                    }
                }
            }
        }
    }

    fn labels(n: usize, total: u32) -> Vec<QuantumNumbers> {
        fn go(n: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<QuantumNumbers>) {
            if cur.len() + 1 == n {
                cur.push(rem);
                out.push(QuantumNumbers::new(cur.clone()).unwrap());
                cur.pop();
                return;
            }
            for v in 0..=rem {
                cur.push(v);
                go(n, rem - v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, total, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn a_coefficient_examples() {
        let k2 = Coupling::from_ratio(2, 1);
        assert_eq!(a_coefficient(&qn(&[1]), &k2, 1).unwrap(), rat(3, 2));
        assert_eq!(a_coefficient(&qn(&[0]), &k2, 1).unwrap(), rat(2, 3));
        for (p, q) in [(1, 2), (2, 1), (7, 1)] {
            let k = Coupling::from_ratio(p, q);
            let expect = int(3) / (int(1) + int(2) * k.value());
            assert_eq!(a_coefficient(&qn(&[0, 0]), &k, 2).unwrap(), expect);
        }
    }

    #[test]
    fn coordinates_to_elementary() {
        let z = elementary_from_coordinates(&[0.0; 4]);
        let binom = [4.0, 6.0, 4.0, 1.0];
        for (zp, b) in z.iter().zip(binom) {
            assert!((zp - Complex64::new(b, 0.0)).norm() < 1e-14);
        }
        let t = 0.37;
        let z = elementary_from_coordinates(&[t, -t]);
        assert!((z[0] - Complex64::new(2.0 * (2.0 * t).cos(), 0.0)).norm() < 1e-14);
        assert!((z[1] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }
}
