use calogero::algebra::{mu, trig_energy_gap, QuantumNumbers};
use calogero::coupling::{int, rat};
use calogero::jack::{jack_polynomial, sekiguchi_eigenvalue, JackBasis};
use calogero::symmetric::{partitions_of, quantum_to_partition, Partition};
use calogero::{Coupling, Rational};
use num::complex::Complex64;
use num::{One, Zero};
use proptest::prelude::*;

fn torus_gram(nvars: usize, kappa: i64, size: u32, grid: usize) -> (Vec<Partition>, Vec<Vec<f64>>) {
    let kap = Coupling::from_ratio(kappa, 1);
    let labels = partitions_of(size, nvars, size);
    let mut basis = JackBasis::new(kap, nvars).unwrap();
    let polys: Vec<_> = labels.iter().map(|l| basis.polynomial(l).unwrap().clone()).collect();
    let mut gram = vec![vec![Complex64::zero(); labels.len()]; labels.len()];
    let total = grid.pow(nvars as u32);
    for idx in 0..total {
        let mut rest = idx;
        let x: Vec<Complex64> = (0..nvars)
            .map(|_| {
                let k = rest % grid;
                rest /= grid;
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / grid as f64)
            })
            .collect();
        let mut w = 1.0;
        for i in 0..nvars {
            for j in i + 1..nvars {
                w *= (x[i] - x[j]).norm().powi(2 * kappa as i32);
            }
        }
        if w == 0.0 {
            continue;
        }
        let vals: Vec<Complex64> = polys.iter().map(|p| p.evaluate(&x)).collect();
        for a in 0..vals.len() {
            for b in 0..vals.len() {
                gram[a][b] += vals[a] * vals[b].conj() * w;
            }
        }
    }
    let gram = gram
        .into_iter()
        .map(|row| row.into_iter().map(|c| c.norm() / total as f64).collect())
        .collect();
    (labels, gram)
}

#[test]
fn jack_polynomials_are_torus_orthogonal() {
    for nvars in [2usize, 3] {
        for kappa in 1..=3 {
            for size in 2..=4 {
                let (labels, gram) = torus_gram(nvars, kappa, size, 24);
                for a in 0..labels.len() {
                    assert!(gram[a][a] > 1e-6);
                    for b in 0..a {
                        let scale = (gram[a][a] * gram[b][b]).sqrt();
                        assert!(
                            gram[a][b] <= 1e-10 * scale,
                            "N={nvars} κ={kappa} {:?} vs {:?}: {}",
                            labels[a],
                            labels[b],
                            gram[a][b] / scale
                        );
                    }
                }
            }
        }
    }
}

fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Rational::zero();
    for col in 0..n {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][col] * det(&minor);
        if col % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

fn schur_bialternant(lambda: &[u32], x: &[Rational]) -> Rational {
    let n = x.len();
    let padded: Vec<u32> = (0..n).map(|j| lambda.get(j).copied().unwrap_or(0)).collect();
    let num: Vec<Vec<Rational>> = x
        .iter()
        .map(|xi| (0..n).map(|j| pow(xi, padded[j] + (n - 1 - j) as u32)).collect())
        .collect();
    let den: Vec<Vec<Rational>> = x
        .iter()
        .map(|xi| (0..n).map(|j| pow(xi, (n - 1 - j) as u32)).collect())
        .collect();
    det(&num) / det(&den)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn free_point_gives_schur_functions(
        raw in prop::collection::vec((-9i64..=9, 1i64..=5), 4),
        size in 1u32..=5,
    ) {
        let x: Vec<Rational> = raw.iter().enumerate().map(|(i, &(p, q))| rat(p, q) + int(20 * i as i64)).collect();
        let kap = Coupling::from_ratio(1, 1);
        for nvars in 2..=4usize {
            let pts = &x[..nvars];
            for lambda in partitions_of(size, nvars, size) {
                let p = jack_polynomial(&lambda, &kap, nvars).unwrap();
                prop_assert_eq!(p.evaluate_exact(pts), schur_bialternant(lambda.parts(), pts));
            }
        }
    }

    #[test]
    fn differential_eigenvalue_reproduces_trig_gap(
        rank in 1usize..=4,
        a in prop::collection::vec(0u32..=4, 4),
        b in prop::collection::vec(0u32..=4, 4),
        p in -6i64..=12,
        q in 1i64..=4,
    ) {
        let kap = Coupling::from_ratio(p, q);
        let nvars = rank + 1;
        let m = QuantumNumbers::new(a[..rank].to_vec()).unwrap();
        let m2 = QuantumNumbers::new(b[..rank].to_vec()).unwrap();
        let l = quantum_to_partition(&m, nvars).unwrap();
        let l2 = quantum_to_partition(&m2, nvars).unwrap();
        let n = int(nvars as i64);
        let momentum = |l: &Partition| {
            let s = int(l.size() as i64);
            &s * &s / &n
        };
        let lhs = int(2) * (sekiguchi_eigenvalue(&l, &kap, nvars) - sekiguchi_eigenvalue(&l2, &kap, nvars))
            - int(2) * (momentum(&l) - momentum(&l2));
        prop_assert_eq!(lhs, trig_energy_gap(&m, &m2, &kap, rank).unwrap());
    }
}

#[test]
fn lowering_table_is_the_reversed_raising_table() {
    for (p, q) in [(1, 2), (2, 1), (5, 2)] {
        let kap = Coupling::from_ratio(p, q);
        for rank in 1..=3usize {
            let mut basis = JackBasis::for_rank(kap.clone(), rank).unwrap();
            let labels: Vec<Vec<u32>> = (0..3u32.pow(rank as u32))
                .map(|mut i| {
                    (0..rank)
                        .map(|_| {
                            let d = i % 3;
                            i /= 3;
                            d
                        })
                        .collect()
                })
                .collect();
            for lab in labels {
                let m = QuantumNumbers::new(lab.clone()).unwrap();
                let rev = QuantumNumbers::new(lab.iter().rev().copied().collect()).unwrap();
                let t = basis.recurrence_table(&m).unwrap();
                let tr = basis.recurrence_table(&rev).unwrap();
                for j in 1..=rank + 1 {
                    assert_eq!(t.down(j), tr.up(rank + 2 - j), "{lab:?} j={j}");
                }
            }
        }
    }
}

#[test]
fn raising_moves_by_mu() {
    let kap = Coupling::from_ratio(3, 2);
    let mut basis = JackBasis::for_rank(kap, 2).unwrap();
    let m = QuantumNumbers::new(vec![1, 2]).unwrap();
    let lambda = quantum_to_partition(&m, 3).unwrap();
    let table = basis.recurrence_table(&m).unwrap();
    let expansion = basis.multiply_e1(&lambda).unwrap();
    for j in 1..=3 {
        let target = m.shifted(&mu(j, 2)).unwrap();
        let tl = quantum_to_partition(&target, 3).unwrap();
        let c = expansion.iter().find(|(l, _)| *l == tl).map(|(_, c)| c.clone()).unwrap_or_default();
        assert_eq!(&c, table.up(j));
    }
}
