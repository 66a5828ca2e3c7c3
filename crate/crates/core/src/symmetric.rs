//! Partitions and symmetric polynomials in the monomial basis.

use std::collections::{BTreeMap, BTreeSet};

use num::complex::Complex64;
use num::{One, Zero};
use serde::Serialize;

use crate::algebra::QuantumNumbers;
use crate::coupling::{to_f64, Rational};
use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts. Trailing zeros are never stored,
/// so the derived `Ord` is the lexicographic order, which refines dominance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Sorts an arbitrary exponent vector into a partition.
    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut parts: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn padded(&self, nvars: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(nvars.max(v.len()), 0);
        v
    }

    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.length().max(other.length()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Removes full columns when the partition has `nvars` parts, i.e. divides
    /// the label by the largest power of e_N.
    pub fn strip_columns(&self, nvars: usize) -> Partition {
        if self.length() < nvars {
            return self.clone();
        }
        let k = self.0[nvars - 1];
        Partition::from_exponents(&self.0.iter().map(|p| p - k).collect::<Vec<_>>())
    }

    fn check_length(&self, nvars: usize) -> Result<()> {
        if self.length() > nvars {
            return Err(Error::PartitionTooLong {
                parts: self.0.clone(),
                max: nvars,
            });
        }
        Ok(())
    }
}

/// λ_i = Σ_{k≥i} m_k with λ_N = 0.
pub fn quantum_to_partition(m: &QuantumNumbers, nvars: usize) -> Result<Partition> {
    if m.rank() + 1 != nvars {
        return Err(Error::ArityMismatch {
            expected: nvars - 1,
            got: m.rank(),
        });
    }
    let mut parts = vec![0u32; m.rank()];
    let mut acc = 0u32;
    for (i, &mi) in m.as_slice().iter().enumerate().rev() {
        acc += mi;
        parts[i] = acc;
    }
    Partition::new(parts)
}

/// m_i = λ_i − λ_{i+1}; a nonzero λ_N (a full column) is ignored.
pub fn partition_to_quantum(lambda: &Partition, nvars: usize) -> Result<QuantumNumbers> {
    lambda.check_length(nvars)?;
    let p = lambda.padded(nvars);
    QuantumNumbers::new((0..nvars - 1).map(|i| p[i] - p[i + 1]).collect())
}

/// All partitions of `size` with at most `max_parts` parts, each at most
/// `max_part`, in decreasing lexicographic order.
pub fn partitions_of(size: u32, max_parts: usize, max_part: u32) -> Vec<Partition> {
    fn go(rem: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, max_part, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Distinct permutations of an exponent vector.
pub(crate) fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == r)
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialTerm {
    pub partition: Vec<u32>,
    pub coeff: String,
}

/// Σ u_μ m_μ in a fixed number of variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricPolynomial {
    nvars: usize,
    terms: BTreeMap<Partition, Rational>,
}

impl SymmetricPolynomial {
    pub fn zero(nvars: usize) -> Self {
        SymmetricPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(lambda: Partition, nvars: usize) -> Result<Self> {
        lambda.check_length(nvars)?;
        let mut p = Self::zero(nvars);
        p.terms.insert(lambda, Rational::one());
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lexicographically largest monomial label.
    pub fn leading(&self) -> Option<(&Partition, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn add_term(&mut self, lambda: Partition, c: Rational) -> Result<()> {
        lambda.check_length(self.nvars)?;
        self.add_unchecked(lambda, c);
        Ok(())
    }

    fn add_unchecked(&mut self, lambda: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(lambda);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// self += c · other
    pub fn axpy(&mut self, c: &Rational, other: &SymmetricPolynomial) {
        debug_assert_eq!(self.nvars, other.nvars);
        for (lam, u) in &other.terms {
            self.add_unchecked(lam.clone(), c * u);
        }
    }

    /// e_r · self, using (e_r f)[ν] = Σ_{|S|=r} f[sort(ν − 1_S)].
    pub fn mul_elementary(&self, r: usize) -> Self {
        let n = self.nvars;
        let subs = subsets(n, r);
        let mut candidates = BTreeSet::new();
        for mu in self.terms.keys() {
            let p = mu.padded(n);
            for s in &subs {
                let mut v = p.clone();
                for &i in s {
                    v[i] += 1;
                }
                candidates.insert(Partition::from_exponents(&v));
            }
        }
        let mut out = Self::zero(n);
        for nu in candidates {
            let p = nu.padded(n);
            let mut acc = Rational::zero();
            for s in &subs {
                if s.iter().all(|&i| p[i] >= 1) {
                    let mut v = p.clone();
                    for &i in s {
                        v[i] -= 1;
                    }
                    if let Some(c) = self.terms.get(&Partition::from_exponents(&v)) {
                        acc += c;
                    }
                }
            }
            out.add_unchecked(nu, acc);
        }
        out
    }

    pub fn evaluate(&self, x: &[Complex64]) -> Complex64 {
        assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|(lam, c)| {
                let m: Complex64 = distinct_permutations(&lam.padded(self.nvars))
                    .iter()
                    .map(|e| x.iter().zip(e).map(|(xi, &ei)| xi.powu(ei)).product::<Complex64>())
                    .sum();
                m * to_f64(c)
            })
            .sum()
    }

    pub fn evaluate_exact(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Rational::zero();
        for (lam, c) in &self.terms {
            for e in distinct_permutations(&lam.padded(self.nvars)) {
                let mut term = c.clone();
                for (xi, &ei) in x.iter().zip(&e) {
                    term *= num::pow(xi.clone(), ei as usize);
                }
                acc += term;
            }
        }
        acc
    }

    /// Terms in decreasing lexicographic order, coefficients as "p/q".
    pub fn to_terms(&self) -> Vec<MonomialTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(lam, c)| MonomialTerm {
                partition: lam.padded(self.nvars),
                coeff: c.to_string(),
            })
            .collect()
    }
}
