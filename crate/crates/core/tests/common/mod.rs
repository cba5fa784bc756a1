//! Seeded generators and schoolbook oracles shared by the integration tests.
//! The oracles touch raw entries only; they never call the library's matrix
//! products, powers, ranks or verifiers.

#![allow(dead_code)]

use kpotent::scalars::{CycloNum, Cyclotomic, Field};
use kpotent::{CycloMatrix, Matrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cyc(k: u32) -> Cyclotomic {
    Cyclotomic::new(k).unwrap()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `Σ c_j ω^j` with `c_j ∈ [-r, r]`.
pub fn small_cyclo(rng: &mut ChaCha8Rng, k: u32, r: i64) -> CycloNum {
    let c: Vec<BigRational> = (0..k).map(|_| q(rng.gen_range(-r..=r), 1)).collect();
    CycloNum::from_power_coeffs(k, &c)
}

/// Like [`small_cyclo`] but with a random denominator in `1..=3`.
pub fn small_fraction(rng: &mut ChaCha8Rng, k: u32) -> CycloNum {
    let d = rng.gen_range(1..=3);
    let c: Vec<BigRational> = (0..k).map(|_| q(rng.gen_range(-3..=3), d)).collect();
    CycloNum::from_power_coeffs(k, &c)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, k: u32, n: usize) -> CycloMatrix {
    let f = cyc(k);
    Matrix::from_fn(f, n, n, |_, _| small_cyclo(rng, k, 2))
}

/// `L·U` with unit diagonals and small off-diagonal entries; its inverse is
/// returned alongside, computed by back substitution on each factor.
pub fn unimodular(rng: &mut ChaCha8Rng, k: u32, n: usize) -> (CycloMatrix, CycloMatrix) {
    let f = cyc(k);
    let mut lower = Matrix::identity(f.clone(), n);
    let mut upper = Matrix::identity(f.clone(), n);
    for i in 0..n {
        for j in 0..n {
            if i > j {
                lower.set(i, j, small_cyclo(rng, k, 1));
            } else if i < j {
                upper.set(i, j, small_cyclo(rng, k, 1));
            }
        }
    }
    let s = mul(&lower, &upper);
    let s_inv = mul(&unit_triangular_inverse(&upper, true), &unit_triangular_inverse(&lower, false));
    (s, s_inv)
}

fn unit_triangular_inverse(t: &CycloMatrix, upper: bool) -> CycloMatrix {
    let f = t.field().clone();
    let n = t.rows();
    let mut inv = Matrix::identity(f.clone(), n);
    // column c of the inverse solves T x = e_c
    for c in 0..n {
        let order: Vec<usize> = if upper { (0..n).rev().collect() } else { (0..n).collect() };
        for &i in &order {
            let mut acc = if i == c { f.one() } else { f.zero() };
            for j in 0..n {
                let inside = if upper { j > i } else { j < i };
                if inside {
                    acc = f.sub(&acc, &f.mul(t.get(i, j), inv.get(j, c)));
                }
            }
            inv.set(i, c, acc);
        }
    }
    inv
}

/// `S·D·S⁻¹` for a diagonal `D`.
pub fn conjugated_diagonal(rng: &mut ChaCha8Rng, k: u32, d: &[CycloNum]) -> CycloMatrix {
    let f = cyc(k);
    let (s, s_inv) = unimodular(rng, k, d.len());
    mul(&mul(&s, &Matrix::diagonal(f, d)), &s_inv)
}

pub fn mul(a: &CycloMatrix, b: &CycloMatrix) -> CycloMatrix {
    let f = a.field().clone();
    Matrix::from_fn(f.clone(), a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(f.zero(), |acc, l| {
            let x = a.get(i, l);
            if x.is_zero() {
                acc
            } else {
                f.add(&acc, &f.mul(x, b.get(l, j)))
            }
        })
    })
}

pub fn add(a: &CycloMatrix, b: &CycloMatrix) -> CycloMatrix {
    let f = a.field().clone();
    Matrix::from_fn(f.clone(), a.rows(), a.cols(), |i, j| f.add(a.get(i, j), b.get(i, j)))
}

pub fn scale(c: &CycloNum, a: &CycloMatrix) -> CycloMatrix {
    let f = a.field().clone();
    Matrix::from_fn(f.clone(), a.rows(), a.cols(), |i, j| f.mul(c, a.get(i, j)))
}

pub fn pow(a: &CycloMatrix, e: u32) -> CycloMatrix {
    let mut p = a.clone();
    for _ in 1..e {
        p = mul(&p, a);
    }
    p
}

pub fn same(a: &CycloMatrix, b: &CycloMatrix) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols() && a.data().iter().zip(b.data()).all(|(x, y)| x == y)
}

pub fn is_identity(a: &CycloMatrix) -> bool {
    let f = a.field().clone();
    same(a, &Matrix::from_fn(f.clone(), a.rows(), a.cols(), |i, j| if i == j { f.one() } else { f.zero() }))
}

pub fn trace(a: &CycloMatrix) -> CycloNum {
    let f = a.field().clone();
    (0..a.rows()).fold(f.zero(), |acc, i| f.add(&acc, a.get(i, i)))
}

/// Rank at most one iff every 2×2 minor vanishes.
pub fn rank_at_most_one(a: &CycloMatrix) -> bool {
    let f = a.field().clone();
    let (r, c) = (a.rows(), a.cols());
    for i in 0..r {
        for i2 in i + 1..r {
            for j in 0..c {
                for j2 in j + 1..c {
                    let m = f.sub(&f.mul(a.get(i, j), a.get(i2, j2)), &f.mul(a.get(i, j2), a.get(i2, j)));
                    if !m.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Rank by fraction-carrying Gaussian elimination on a copy of the entries.
pub fn rank(a: &CycloMatrix) -> usize {
    let f = a.field().clone();
    let mut rows: Vec<Vec<CycloNum>> = (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j).clone()).collect()).collect();
    let mut r = 0;
    for c in 0..a.cols() {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).unwrap();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let m = f.mul(&rows[i][c], &inv);
            for j in c..a.cols() {
                let t = f.mul(&m, &rows[r][j]);
                rows[i][j] = f.sub(&rows[i][j], &t);
            }
        }
        r += 1;
    }
    r
}

/// `Σ c_j ω^j` evaluated by repeated multiplication by `ω`.
pub fn evaluate(k: u32, coeffs: &[u64]) -> CycloNum {
    let f = cyc(k);
    let w = f.omega();
    let mut p = f.one();
    let mut acc = f.zero();
    for &c in coeffs {
        acc = f.add(&acc, &f.mul(&f.from_i64(c as i64), &p));
        p = f.mul(&p, &w);
    }
    acc
}

/// Sparse rows of a dense matrix, for products of large banded matrices.
pub struct Sparse {
    pub n: usize,
    pub rows: Vec<Vec<(usize, CycloNum)>>,
}

impl Sparse {
    pub fn from_dense(a: &CycloMatrix) -> Self {
        let rows = (0..a.rows())
            .map(|i| (0..a.cols()).filter(|&j| !a.get(i, j).is_zero()).map(|j| (j, a.get(i, j).clone())).collect())
            .collect();
        Sparse { n: a.rows(), rows }
    }

    pub fn mul(&self, other: &Sparse, f: &Cyclotomic) -> Sparse {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: Vec<Option<CycloNum>> = vec![None; other.n];
                for (l, x) in row {
                    for (j, y) in &other.rows[*l] {
                        let t = f.mul(x, y);
                        acc[*j] = Some(match acc[*j].take() {
                            Some(s) => f.add(&s, &t),
                            None => t,
                        });
                    }
                }
                acc.into_iter().enumerate().filter_map(|(j, v)| v.filter(|v| !v.is_zero()).map(|v| (j, v))).collect()
            })
            .collect();
        Sparse { n: self.n, rows }
    }

    pub fn pow(&self, e: u32, f: &Cyclotomic) -> Sparse {
        let mut p = Sparse { n: self.n, rows: self.rows.clone() };
        for _ in 1..e {
            p = p.mul(self, f);
        }
        p
    }
}

impl PartialEq for Sparse {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

/// One line per criterion on the real stderr, so it shows without
/// `--nocapture`.
pub fn report(criterion: u32, ok: bool, detail: &str) {
    use std::io::Write;
    let line = format!("criterion {criterion:>2}: {} {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
}

/// `E^e = E` for a matrix of rank at most one: such a matrix satisfies
/// `E² = tr(E)·E`, hence `E^e = tr(E)^{e-1}·E`.
pub fn rank_one_potent(e: &CycloMatrix, exponent: u32) -> bool {
    if !rank_at_most_one(e) {
        return false;
    }
    let f = e.field().clone();
    let t = trace(e);
    if !same(&mul(e, e), &scale(&t, e)) {
        return false;
    }
    e.data().iter().all(|x| x.is_zero()) || f.pow(&t, u64::from(exponent - 1)).is_one()
}
