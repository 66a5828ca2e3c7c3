//! Closed-form recurrence coefficients and energy corrections for ranks 1–3,
//! built as rational functions of κ.
//!
//! First-order forms and coefficient tables are evaluated with removable
//! singularities cancelled. The closed second-order rank-1 form is evaluated
//! strictly, exactly as printed: any vanishing denominator factor is a pole.
//! It disagrees with [`super::delta2_a1_recurrence`]; see [`AS_PRINTED_NOTE`].

use num::Zero;

use crate::algebra::QuantumNumbers;
use crate::coupling::{int, Coupling, Rational};
use crate::error::{Error, Result};
use crate::ratfunc::{Poly, RatFunc};

pub const AS_PRINTED_NOTE: &str = "as-printed closed form; disagrees with the recurrence form \
(large-m limit 24k^2(k-1)^2 instead of 24k(k-1)); the diagonalization oracle favours the recurrence form";

fn interaction() -> RatFunc {
    RatFunc::ratio(&[(0, 1), (-1, 1)], &[])
}

/// c_m(κ) = m(m−1+2κ) / ((m+κ)(m−1+κ))
pub fn c_coefficient(m: u32) -> RatFunc {
    let m = m as i64;
    RatFunc::ratio(&[(m, 0), (m - 1, 2)], &[(m, 1), (m - 1, 1)])
}

/// a_{m,n}(κ) = n(m+n+κ)(n−1+2κ)(m+n−1+3κ) / ((n+κ)(n−1+κ)(m+n+2κ)(m+n−1+2κ))
pub fn a_pair(m: u32, n: u32) -> RatFunc {
    let (m, n) = (m as i64, n as i64);
    RatFunc::ratio(
        &[(n, 0), (m + n, 1), (n - 1, 2), (m + n - 1, 3)],
        &[(n, 1), (n - 1, 1), (m + n, 2), (m + n - 1, 2)],
    )
}

/// d_{m,l,n}(κ), the rank-3 coefficient on the last box.
pub fn d_triple(m: u32, l: u32, n: u32) -> RatFunc {
    let (m, l, n) = (m as i64, l as i64, n as i64);
    let s = m + l + n;
    RatFunc::ratio(
        &[
            (n, 0),
            (l + n, 1),
            (n - 1, 2),
            (s, 2),
            (l + n - 1, 3),
            (s - 1, 4),
        ],
        &[
            (n, 1),
            (n - 1, 1),
            (l + n, 2),
            (l + n - 1, 2),
            (s, 3),
            (s - 1, 3),
        ],
    )
}

/// Closed-form c_{j,m} (`up`) and c̃_{j,m} (`down`), indexed by j − 1.
#[derive(Clone, Debug)]
pub struct ClosedTable {
    pub up: Vec<RatFunc>,
    pub down: Vec<RatFunc>,
}

impl ClosedTable {
    pub fn eval(&self, kappa: &Coupling) -> Result<(Vec<Rational>, Vec<Rational>)> {
        let ev = |fs: &[RatFunc]| {
            fs.iter()
                .map(|f| f.eval(kappa.value(), "closed-form recurrence coefficient"))
                .collect::<Result<Vec<_>>>()
        };
        Ok((ev(&self.up)?, ev(&self.down)?))
    }
}

pub fn closed_recurrence_table(m: &QuantumNumbers) -> Result<ClosedTable> {
    let one = || RatFunc::integer(1);
    Ok(match *m.as_slice() {
        [m] => ClosedTable {
            up: vec![one(), c_coefficient(m)],
            down: vec![c_coefficient(m), one()],
        },
        [m, n] => ClosedTable {
            up: vec![one(), c_coefficient(m), a_pair(m, n)],
            down: vec![a_pair(n, m), c_coefficient(n), one()],
        },
        [m, l, n] => ClosedTable {
            up: vec![one(), c_coefficient(m), a_pair(m, l), d_triple(m, l, n)],
            down: vec![d_triple(n, l, m), a_pair(n, l), c_coefficient(n), one()],
        },
        _ => {
            return Err(Error::InvalidArgument(format!(
                "closed-form tables exist for ranks 1 to 3, got rank {}",
                m.rank()
            )))
        }
    })
}

pub fn delta1_a1_closed_rf(m: u32) -> RatFunc {
    let m = m as i64;
    let bracket = RatFunc::integer(1).add(&interaction().mul(&RatFunc::ratio(
        &[],
        &[(m + 1, 1), (m - 1, 1)],
    )));
    interaction().scale(&int(8)).mul(&bracket)
}

/// Coefficient of g in the first-order correction, rank 1.
pub fn delta1_a1_closed(m: u32, kappa: &Coupling) -> Result<Rational> {
    delta1_a1_closed_rf(m).eval(kappa.value(), "rank-1 first-order closed form")
}

pub fn delta1_a2_closed_rf(m: u32, n: u32) -> RatFunc {
    let (m, n) = (m as i64, n as i64);
    let q = m * m + n * n + m * n;
    let first = RatFunc::from_poly(Poly::from_ints(&[q - 3, 3 * (m + n), 3]))
        .mul(&RatFunc::ratio(&[], &[(m + 1, 1), (m - 1, 1), (n + 1, 1)]));
    let second = RatFunc::from_poly(Poly::from_ints(&[q - 1, 3 * m + 3 * n + 1, 2]))
        .mul(&RatFunc::ratio(&[], &[(n - 1, 1), (m + n + 1, 2), (m + n - 1, 2)]));
    let k2 = interaction().mul(&interaction());
    interaction()
        .scale(&int(24))
        .add(&k2.scale(&int(8)).mul(&first).mul(&second))
}

/// Coefficient of g in the first-order correction, rank 2.
pub fn delta1_a2_closed(m: u32, n: u32, kappa: &Coupling) -> Result<Rational> {
    delta1_a2_closed_rf(m, n).eval(kappa.value(), "rank-2 first-order closed form")
}

pub fn delta1_a3_closed_rf(m: u32, l: u32, n: u32) -> RatFunc {
    let (m, l, n) = (m as i64, l as i64, n as i64);
    let s = l + m + n;
    let t1 = RatFunc::ratio(
        &[(n, 0), (l + 1, 0), (l + m + 1, 1), (l, 2), (n - 1, 2), (l + m, 3)],
        &[(l, 1), (l + 1, 1), (n, 1), (n - 1, 1), (l + m, 2), (l + m + 1, 2)],
    );
    let t2 = RatFunc::ratio(
        &[(n + 1, 0), (l + n + 1, 1), (n, 2), (s + 1, 2), (l + n, 3), (s, 4)],
        &[(n, 1), (n + 1, 1), (l + n, 2), (l + n + 1, 2), (s, 3), (s + 1, 3)],
    );
    let t3 = RatFunc::ratio(
        &[(m, 0), (l + m, 1), (m - 1, 2), (s, 2), (l + m - 1, 3), (s - 1, 4)],
        &[(m, 1), (m - 1, 1), (l + m, 2), (l + m - 1, 2), (s, 3), (s - 1, 3)],
    );
    let t4 = RatFunc::ratio(
        &[(l, 0), (m + 1, 0), (l + n, 1), (m, 2), (l - 1, 2), (l + n - 1, 3)],
        &[(l, 1), (l - 1, 1), (m, 1), (m + 1, 1), (l + n, 2), (l + n - 1, 2)],
    );
    let bracket = RatFunc::integer(16).sub(&t1).sub(&t2).sub(&t3).sub(&t4);
    interaction().scale(&int(4)).mul(&bracket)
}

/// Coefficient of g in the first-order correction, rank 3.
pub fn delta1_a3_closed(m: u32, l: u32, n: u32, kappa: &Coupling) -> Result<Rational> {
    delta1_a3_closed_rf(m, l, n).eval(kappa.value(), "rank-3 first-order closed form")
}

/// The single nonzero quantum number of a rank-3 label on one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum A3Axis {
    First,
    Middle,
    Last,
}

impl A3Axis {
    pub fn label(self, value: u32) -> [u32; 3] {
        match self {
            A3Axis::First => [value, 0, 0],
            A3Axis::Middle => [0, value, 0],
            A3Axis::Last => [0, 0, value],
        }
    }
}

/// Simplified rank-3 first-order forms for labels with one nonzero entry.
pub fn delta1_a3_special_rf(axis: A3Axis, value: u32) -> RatFunc {
    let v = value as i64;
    match axis {
        A3Axis::First | A3Axis::Last => {
            let num = Poly::from_ints(&[0, v * v - 2, 4 * v - 2, 4]);
            let frac = RatFunc::from_poly(num).mul(&RatFunc::ratio(
                &[],
                &[(v - 1, 1), (1, 2), (v + 1, 3)],
            ));
            interaction()
                .scale(&int(24))
                .mul(&RatFunc::integer(2).add(&frac))
        }
        A3Axis::Middle => {
            let num = Poly::from_ints(&[0, v * v - 3, 4 * v, 3]);
            let frac = RatFunc::from_poly(num).mul(&RatFunc::ratio(
                &[],
                &[(1, 1), (v - 1, 1), (v + 1, 3)],
            ));
            interaction()
                .scale(&int(16))
                .mul(&RatFunc::integer(3).add(&frac))
        }
    }
}

pub fn delta1_a3_special(axis: A3Axis, value: u32, kappa: &Coupling) -> Result<Rational> {
    delta1_a3_special_rf(axis, value).eval(kappa.value(), "rank-3 single-axis closed form")
}

/// The closed second-order rank-1 form as a list of printed terms.
pub fn delta2_a1_closed_terms(m: u32) -> Vec<RatFunc> {
    let mi = m as i64;
    let k2 = interaction().mul(&interaction());
    let shifted_sq = |c: i64| {
        // (m+κ)² − c²  =  (m−c+κ)(m+c+κ)
        Poly::linear(mi - c, 1).mul(&Poly::linear(mi + c, 1))
    };
    let x = Poly::from_ints(&[8 - 5 * mi * mi, -(10 * mi + 6), 1]);
    let t1 = k2.scale(&int(24));
    let t2 = k2
        .scale(&int(-8))
        .mul(&RatFunc::from_poly(x))
        .mul(&RatFunc::inverse_poly("[(m+κ)²-4]".into(), shifted_sq(2)))
        .mul(&RatFunc::inverse_poly("[(m+κ)²-1]".into(), shifted_sq(1)));
    let cube = |a: i64| {
        let p = Poly::linear(a, 1);
        RatFunc::inverse_poly(format!("({p})³"), p.mul(&p).mul(&p))
    };
    let t3 = k2
        .scale(&int(4))
        .mul(&RatFunc::ratio(
            &[(mi, 0), (mi - 1, 0), (mi - 1, 2), (mi - 2, 2)],
            &[(mi, 1), (mi - 2, 1)],
        ))
        .mul(&cube(mi - 1));
    let t4 = k2
        .scale(&int(-4))
        .mul(&RatFunc::ratio(
            &[(mi + 1, 0), (mi + 2, 0), (mi, 2), (mi + 1, 2)],
            &[(mi, 1), (mi + 2, 1)],
        ))
        .mul(&cube(mi + 1));
    vec![t1, t2, t3, t4]
}

/// The closed second-order rank-1 form evaluated verbatim. Terms that are
/// identically zero are dropped; the whole expression vanishes at κ ∈ {0, 1}
/// through its κ²(κ−1)² prefactor. Any other vanishing denominator factor is
/// reported as a pole, even where the singularity happens to be removable.
pub fn delta2_a1_closed(m: u32, kappa: &Coupling) -> Result<Rational> {
    if kappa.is_free() {
        return Ok(Rational::zero());
    }
    let mut acc = Rational::zero();
    for term in delta2_a1_closed_terms(m) {
        acc += term.eval_strict(kappa.value(), "rank-1 second-order closed form (as printed)")?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::rat;

    fn k(p: i64, q: i64) -> Coupling {
        Coupling::from_ratio(p, q)
    }

    #[test]
    fn rank_one_first_order_values() {
        assert_eq!(delta1_a1_closed(1, &k(2, 1)).unwrap(), int(20));
        assert_eq!(delta1_a1_closed(0, &k(2, 1)).unwrap(), rat(80, 3));
        assert_eq!(delta1_a1_closed(4, &k(0, 1)).unwrap(), int(0));
        assert_eq!(delta1_a1_closed(1, &k(0, 1)).unwrap(), int(0));
    }

    #[test]
    fn rank_two_ground_state() {
        // 24κ(κ−1)(3κ+1)/(2κ+1)
        for (p, q) in [(2, 1), (1, 2), (7, 3)] {
            let kap = k(p, q);
            let kv = kap.value();
            let expect = int(24) * kap.interaction() * (int(3) * kv + int(1)) / (int(2) * kv + int(1));
            assert_eq!(delta1_a2_closed(0, 0, &kap).unwrap(), expect);
        }
        assert_eq!(delta1_a2_closed(0, 0, &k(2, 1)).unwrap(), rat(336, 5));
        assert_eq!(delta1_a2_closed(3, 1, &k(1, 1)).unwrap(), int(0));
    }

    #[test]
    fn removable_point_at_half_coupling() {
        // m + n − 1 + 2κ vanishes at κ = 1/2 for the ground state
        let v = delta1_a2_closed(0, 0, &k(1, 2)).unwrap();
        assert_eq!(v, int(24) * rat(-1, 4) * rat(5, 2) / int(2));
    }

    #[test]
    fn single_axis_forms() {
        for v in 0..=6 {
            let a = delta1_a3_special_rf(A3Axis::First, v);
            let b = delta1_a3_special_rf(A3Axis::Last, v);
            assert!(a.identical(&b));
        }
        for l in 0..=6 {
            assert_eq!(delta1_a3_special(A3Axis::Middle, l, &k(1, 1)).unwrap(), int(0));
        }
    }

    #[test]
    fn closed_second_order_values() {
        assert_eq!(delta2_a1_closed(0, &k(3, 1)).unwrap(), rat(4293, 5));
        assert_eq!(delta2_a1_closed(0, &k(1, 1)).unwrap(), int(0));
        assert_eq!(delta2_a1_closed(0, &k(0, 1)).unwrap(), int(0));
        match delta2_a1_closed(0, &k(2, 1)) {
            Err(Error::Pole { factors, .. }) => assert_eq!(factors, vec!["[(m+κ)²-4]".to_string()]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tables_need_rank_at_most_three() {
        let m = QuantumNumbers::new(vec![0; 4]).unwrap();
        assert!(closed_recurrence_table(&m).is_err());
    }

    #[test]
    fn invalid_label_coefficients_vanish() {
        // n = 0 kills a_{m,0} even where (m+n−1+2κ) vanishes
        assert_eq!(a_pair(0, 0).eval(&rat(1, 2), "a").unwrap(), int(0));
        assert_eq!(d_triple(3, 0, 0).eval(&rat(1, 2), "d").unwrap(), int(0));
        assert_eq!(c_coefficient(0).eval(&int(2), "c").unwrap(), int(0));
    }
}
