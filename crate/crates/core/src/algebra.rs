//! Root data of A_n and the trigonometric spectrum.
//!
//! Roots are normalized to (α, α) = 2, so the inner products of the
//! fundamental weights form the inverse Cartan matrix.

use num::{One, Zero};
use serde::Serialize;

use crate::coupling::{int, rat, Coupling, Rational};
use crate::error::{Error, Result};

/// Inverse Cartan matrix of A_n: `(λ_i, λ_j) = min(i,j)·(N − max(i,j))/N`.
pub fn gram_fundamental(n: usize) -> Result<Vec<Vec<Rational>>> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let big_n = (n + 1) as i64;
    Ok((1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| rat(i.min(j) * (big_n - i.max(j)), big_n))
                .collect()
        })
        .collect())
}

/// Cartan matrix of A_n.
pub fn cartan_matrix(n: usize) -> Result<Vec<Vec<i64>>> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect())
}

/// Positive roots α_i + … + α_j (i ≤ j) in fundamental-weight coordinates.
pub fn positive_roots(n: usize) -> Result<Vec<Vec<i64>>> {
    let cartan = cartan_matrix(n)?;
    let mut roots = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        let mut root = vec![0i64; n];
        for row in &cartan[i..] {
            for (r, c) in root.iter_mut().zip(row) {
                *r += c;
            }
            roots.push(root.clone());
        }
    }
    Ok(roots)
}

#[derive(Clone, Debug)]
pub struct RankData {
    n: usize,
    gram: Vec<Vec<Rational>>,
}

impl RankData {
    pub fn new(n: usize) -> Result<Self> {
        Ok(RankData {
            n,
            gram: gram_fundamental(n)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn particles(&self) -> usize {
        self.n + 1
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// Inner product of two weights given in fundamental-weight coordinates.
    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                acc += ai * &self.gram[i][j] * bj;
            }
        }
        acc
    }

    /// ρ = Σ λ_i, i.e. all ones in fundamental-weight coordinates.
    pub fn weyl_vector(&self) -> Vec<Rational> {
        vec![Rational::one(); self.n]
    }
}

/// The n-tuple m = (m_1, …, m_n) labelling an irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuantumNumbers(Vec<u32>);

impl QuantumNumbers {
    pub fn new(m: Vec<u32>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::ZeroRank);
        }
        Ok(QuantumNumbers(m))
    }

    /// Validates the arity against a rank.
    pub fn with_rank(m: Vec<u32>, n: usize) -> Result<Self> {
        if m.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: m.len(),
            });
        }
        Self::new(m)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `m + delta`, or `None` when an entry would become negative.
    pub fn shifted(&self, delta: &[i64]) -> Option<QuantumNumbers> {
        debug_assert_eq!(delta.len(), self.0.len());
        self.0
            .iter()
            .zip(delta)
            .map(|(&m, &d)| u32::try_from(m as i64 + d).ok())
            .collect::<Option<Vec<_>>>()
            .map(QuantumNumbers)
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        if self.rank() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: self.rank(),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// μ_j: i-th entry is δ_{i,j} − δ_{i,j−1}, for j = 1..=n+1.
pub fn mu(j: usize, n: usize) -> Vec<i64> {
    (1..=n)
        .map(|i| (i == j) as i64 - (i + 1 == j) as i64)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyConvention {
    /// 2(λ+κρ, λ+κρ).
    Weyl,
    /// m² + 2κm − κ², rank 1 only. Differs from `Weyl` by the constant 2κ².
    RankOne,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrigEnergy {
    pub value: Rational,
    pub convention: EnergyConvention,
}

pub fn trig_energy(
    m: &QuantumNumbers,
    kappa: &Coupling,
    n: usize,
    convention: EnergyConvention,
) -> Result<TrigEnergy> {
    m.check_rank(n)?;
    let k = kappa.value();
    let value = match convention {
        EnergyConvention::Weyl => {
            let data = RankData::new(n)?;
            let v: Vec<Rational> = m.as_slice().iter().map(|&mi| int(mi as i64) + k).collect();
            int(2) * data.inner(&v, &v)
        }
        EnergyConvention::RankOne => {
            if n != 1 {
                return Err(Error::ConventionRank { rank: n });
            }
            let mm = int(m.as_slice()[0] as i64);
            &mm * &mm + int(2) * k * &mm - k * k
        }
    };
    Ok(TrigEnergy { value, convention })
}

/// E(m) − E(m'); identical under both conventions.
pub fn trig_energy_gap(
    m: &QuantumNumbers,
    m_prime: &QuantumNumbers,
    kappa: &Coupling,
    n: usize,
) -> Result<Rational> {
    m.check_rank(n)?;
    m_prime.check_rank(n)?;
    let a = trig_energy(m, kappa, n, EnergyConvention::Weyl)?.value;
    let b = trig_energy(m_prime, kappa, n, EnergyConvention::Weyl)?.value;
    Ok(a - b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qn(v: &[u32]) -> QuantumNumbers {
        QuantumNumbers::new(v.to_vec()).unwrap()
    }

    #[test]
    fn gram_small_ranks() {
        assert_eq!(gram_fundamental(1).unwrap(), vec![vec![rat(1, 2)]]);
        assert_eq!(
            gram_fundamental(2).unwrap(),
            vec![vec![rat(2, 3), rat(1, 3)], vec![rat(1, 3), rat(2, 3)]]
        );
        assert_eq!(gram_fundamental(0), Err(Error::ZeroRank));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn gram_inverts_cartan() {
        for n in 1..=7 {
            let g = gram_fundamental(n).unwrap();
            let c = cartan_matrix(n).unwrap();
            for i in 0..n {
                assert!(g[i][i] > Rational::zero());
                for j in 0..n {
                    assert_eq!(g[i][j], g[j][i]);
                    let mut s = Rational::zero();
                    for k in 0..n {
                        s += &g[i][k] * int(c[k][j]);
                    }
                    let expect = if i == j { Rational::one() } else { Rational::zero() };
                    assert_eq!(s, expect);
                }
            }
        }
    }

    #[test]
    fn weyl_vector_is_half_sum_of_positive_roots() {
        for n in 1..=6 {
            let roots = positive_roots(n).unwrap();
            assert_eq!(roots.len(), n * (n + 1) / 2);
            let sum: Vec<i64> = (0..n).map(|i| roots.iter().map(|r| r[i]).sum()).collect();
            assert!(sum.iter().all(|&s| s == 2), "{sum:?}");
        }
    }

    #[test]
    fn energy_examples() {
        let k3 = Coupling::from_ratio(3, 1);
        let e = trig_energy(&qn(&[2]), &k3, 1, EnergyConvention::Weyl).unwrap();
        assert_eq!(e.value, int(25));
        let e = trig_energy(&qn(&[2]), &k3, 1, EnergyConvention::RankOne).unwrap();
        assert_eq!(e.value, int(7));
        let e = trig_energy(&qn(&[0, 0]), &Coupling::from_ratio(1, 1), 2, EnergyConvention::Weyl)
            .unwrap();
        assert_eq!(e.value, int(4));
    }

    #[test]
    fn energy_errors() {
        let k = Coupling::from_ratio(1, 1);
        assert_eq!(
            trig_energy(&qn(&[1, 0]), &k, 2, EnergyConvention::RankOne),
            Err(Error::ConventionRank { rank: 2 })
        );
        assert!(matches!(
            trig_energy_gap(&qn(&[1]), &qn(&[1, 0]), &k, 1),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn gap_examples() {
        let k2 = Coupling::from_ratio(2, 1);
        assert_eq!(trig_energy_gap(&qn(&[3]), &qn(&[1]), &k2, 1).unwrap(), int(16));
        assert_eq!(trig_energy_gap(&qn(&[3]), &qn(&[3]), &k2, 1).unwrap(), int(0));
        for m in 0..10u32 {
            let k = Coupling::from_ratio(7, 3);
            let gap = trig_energy_gap(&qn(&[m]), &qn(&[m + 2]), &k, 1).unwrap();
            assert_eq!(gap, int(-4) * (int(m as i64 + 1) + k.value()));
        }
    }

    #[test]
    fn mu_vectors() {
        assert_eq!(mu(1, 2), vec![1, 0]);
        assert_eq!(mu(2, 2), vec![-1, 1]);
        assert_eq!(mu(3, 2), vec![0, -1]);
        assert_eq!(mu(2, 1), vec![-1]);
    }

    #[test]
    fn monotone_at_zero_coupling() {
        let k0 = Coupling::from_ratio(0, 1);
        for n in 1..=4usize {
            for flat in 0..(11u32.pow(n.min(3) as u32)) {
                let mut v = vec![0u32; n];
                let mut x = flat;
                for e in v.iter_mut().take(n.min(3)) {
                    *e = x % 11;
                    x /= 11;
                }
                let e = trig_energy(&qn(&v), &k0, n, EnergyConvention::Weyl).unwrap().value;
                let data = RankData::new(n).unwrap();
                let lam: Vec<Rational> = v.iter().map(|&x| int(x as i64)).collect();
                assert_eq!(e, int(2) * data.inner(&lam, &lam));
                for i in 0..n {
                    if v[i] < 10 {
                        let mut w = v.clone();
                        w[i] += 1;
                        let e2 = trig_energy(&qn(&w), &k0, n, EnergyConvention::Weyl)
                            .unwrap()
                            .value;
                        assert!(e2 >= e);
                    }
                }
            }
        }
    }

    fn quadratic_form(m: &[u32], k: &Rational, n: usize) -> Rational {
        // explicit min(i,j)(N-max(i,j))/N expansion, no RankData
        let big_n = n as i64 + 1;
        let mut acc = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (i as i64 + 1, j as i64 + 1);
                let g = rat(a.min(b) * (big_n - a.max(b)), big_n);
                acc += (int(m[i] as i64) + k) * g * (int(m[j] as i64) + k);
            }
        }
        int(2) * acc
    }

    proptest! {
        #[test]
        fn gap_matches_explicit_quadratic_form(
            n in 1usize..=6,
            seed_m in proptest::collection::vec(0u32..12, 6),
            seed_mp in proptest::collection::vec(0u32..12, 6),
            p in -20i64..20, q in 1i64..9,
        ) {
            let k = Coupling::from_ratio(p, q);
            let m = qn(&seed_m[..n]);
            let mp = qn(&seed_mp[..n]);
            let gap = trig_energy_gap(&m, &mp, &k, n).unwrap();
            let expect = quadratic_form(&seed_m[..n], k.value(), n)
                - quadratic_form(&seed_mp[..n], k.value(), n);
            prop_assert_eq!(gap, expect);
        }

        #[test]
        fn a1_conventions_differ_by_constant(m in 0u32..200, p in -30i64..30, q in 1i64..9) {
            let k = Coupling::from_ratio(p, q);
            let w = trig_energy(&qn(&[m]), &k, 1, EnergyConvention::Weyl).unwrap().value;
            let a = trig_energy(&qn(&[m]), &k, 1, EnergyConvention::RankOne).unwrap().value;
            prop_assert_eq!(w - a, int(2) * k.value() * k.value());
        }
    }
}
