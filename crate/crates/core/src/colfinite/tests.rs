use proptest::prelude::*;

use super::*;
use crate::matrix::Matrix;
use crate::scalars::{CycloNum, Cyclotomic, Field};
use crate::CycloMatrix;

fn cyc(k: u32) -> Cyclotomic {
    Cyclotomic::new(k).unwrap()
}

fn w(f: &Cyclotomic, j: i64) -> CycloNum {
    f.omega_power(j)
}

fn int(f: &Cyclotomic, n: i64) -> CycloNum {
    f.from_i64(n)
}

// ---- oracle: schoolbook products on raw entries ----

fn naive_mul(a: &CycloMatrix, b: &CycloMatrix) -> CycloMatrix {
    let f = a.field().clone();
    Matrix::from_fn(f.clone(), a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(f.zero(), |acc, l| f.add(&acc, &f.mul(a.get(i, l), b.get(l, j))))
    })
}

fn naive_potent(a: &CycloMatrix, e: u32) -> bool {
    let mut p = a.clone();
    for _ in 1..e {
        p = naive_mul(&p, a);
    }
    p.data().iter().zip(a.data()).all(|(x, y)| x == y)
}

fn dense_sum(f: &Cyclotomic, ms: &[CycloMatrix]) -> CycloMatrix {
    let n = ms[0].rows();
    Matrix::from_fn(f.clone(), n, n, |i, j| ms.iter().fold(f.zero(), |acc, m| f.add(&acc, m.get(i, j))))
}

fn same(a: &CycloMatrix, b: &CycloMatrix) -> bool {
    a.rows() == b.rows() && a.data().iter().zip(b.data()).all(|(x, y)| x == y)
}

/// Deterministic pseudo-random small entries.
fn mix(seed: u64, i: usize, j: usize) -> i64 {
    let mut h = seed ^ ((i as u64) << 32) ^ (j as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    h ^= h >> 29;
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^= h >> 32;
    (h % 7) as i64 - 3
}

fn banded(k: u32, seed: u64, lower: usize, upper: usize) -> LazyMatrix<Cyclotomic> {
    let f = cyc(k);
    let f2 = f.clone();
    LazyMatrix::new(
        f.clone(),
        Structure::General,
        move |i, j| {
            if i > j + lower || j > i + upper {
                f2.zero()
            } else {
                f2.add(&int(&f2, mix(seed, i, j)), &f2.mul(&int(&f2, mix(seed + 1, i, j)), &w(&f2, 1)))
            }
        },
        move |j| j + lower,
    )
}

fn assert_verified(d: &LazyDecomposition<Cyclotomic>, n: usize) {
    let r = d.verify_truncated(n);
    assert!(r.ok(), "{r:?}");
    // independent recheck with the schoolbook oracle
    let f = d.target.field().clone();
    let parts: Vec<_> = d.summands.iter().map(|s| s.matrix.truncate(n)).collect();
    assert!(same(&dense_sum(&f, &parts), &d.target.truncate(n)));
    for s in &d.summands {
        let size = s.matrix.safe_size(n);
        assert!(naive_potent(&s.matrix.truncate(size), d.k + 1), "{} at {size}", s.matrix.label());
    }
}

// ---- lazy matrices ----

#[test]
fn entries_respect_structure_and_support() {
    let a = banded(3, 7, 2, 1);
    let f = a.field().clone();
    assert!(f.is_zero(&a.entry(10, 3)));
    assert!(a.check_support(20, 4).is_ok());
    let bad = LazyMatrix::new(f.clone(), Structure::General, move |i, _| if i == 5 { f.one() } else { f.zero() }, |j| j);
    assert_eq!(bad.check_support(3, 5), Err(crate::Error::SupportViolation { row: 5, col: 0 }));
}

#[test]
fn structure_check_flags_lies() {
    let f = cyc(2);
    let f2 = f.clone();
    let liar = LazyMatrix::new(f, Structure::Upper, move |i, j| if i == j + 1 { f2.one() } else { f2.zero() }, |j| j + 1);
    assert!(liar.check_structure(4).is_err());
    assert!(banded(2, 1, 0, 2).check_structure(8).is_ok());
}

#[test]
fn truncate_one_of_diagonal() {
    let f = cyc(3);
    let c = w(&f, 2);
    let d = LazyMatrix::scalar(f, c.clone());
    assert_eq!(d.truncate(1).get(0, 0), &c);
}

#[test]
fn scan_memo_crosses_stripes() {
    // v' row membership for an all-zero superdiagonal alternates; check far
    // past the first stripe against the parity oracle.
    let f = cyc(3);
    let t = LazyMatrix::scalar(f.clone(), f.mul(&int(&f, 2), &w(&f, 1)));
    let parts = decompose_upper_2omega(&t, 3).unwrap();
    for i in [0, 1, 1023, 1024, 1025, 2050] {
        let kept = !f.is_zero(&parts[2].matrix.entry(i, i));
        assert_eq!(kept, i % 2 == 0, "row {i}");
    }
}

// ---- split ----

#[test]
fn split_of_five_omega() {
    let f = cyc(4);
    let a = LazyMatrix::scalar(f.clone(), f.mul(&int(&f, 5), &w(&f, 1)));
    let (t1, t2, d) = split_upper_lower_diag(&a, 4).unwrap();
    let n = 6;
    assert!(same(&t1.truncate(n), &Matrix::scalar(f.clone(), n, f.mul(&int(&f, 2), &w(&f, 1)))));
    assert!(same(&t2.truncate(n), &Matrix::scalar(f.clone(), n, f.mul(&int(&f, 3), &w(&f, 1)))));
    assert!(d.truncate(n).is_zero());
}

#[test]
fn split_of_zero() {
    let f = cyc(3);
    let (t1, t2, d) = split_upper_lower_diag(&LazyMatrix::zero(f.clone()), 3).unwrap();
    let sum = f.add(&f.add(&t1.entry(4, 4), &t2.entry(4, 4)), &d.entry(4, 4));
    assert!(f.is_zero(&sum));
    assert_eq!(d.entry(0, 0), f.mul(&int(&f, -5), &w(&f, 1)));
}

#[test]
fn split_reassembles_banded() {
    for n in [8, 33, 64] {
        let a = banded(3, 11, 2, 2);
        let (t1, t2, d) = split_upper_lower_diag(&a, 3).unwrap();
        let f = a.field().clone();
        let sum = dense_sum(&f, &[t1.truncate(n), t2.truncate(n), d.truncate(n)]);
        assert!(same(&sum, &a.truncate(n)));
        assert_eq!(t1.structure(), Structure::Upper);
        assert_eq!(t2.structure(), Structure::Lower);
        assert!(t2.check_support(n, 3).is_ok());
    }
}

// ---- conjugator ----

#[test]
fn conjugator_of_bidiagonal_is_identity() {
    let f = cyc(3);
    let t = Matrix::from_fn(f.clone(), 5, 5, |i, j| {
        if i == j {
            w(&f, 1)
        } else if j == i + 1 {
            int(&f, i as i64 + 1)
        } else {
            f.zero()
        }
    });
    assert!(bidiagonal_conjugator(&t, &w(&f, 1)).unwrap().is_identity());
}

#[test]
fn conjugator_three_by_three() {
    // t = [[ω, a, c], [0, ω, b], [0, 0, ω]]: solving S·t = b·S by hand gives
    // S = I + (c/a)e₁₂.
    let f = cyc(3);
    let (a, b, c) = (int(&f, 2), w(&f, 2), int(&f, 5));
    let om = w(&f, 1);
    let z = f.zero();
    let t = Matrix::from_rows(
        f.clone(),
        vec![vec![om.clone(), a.clone(), c.clone()], vec![z.clone(), om.clone(), b.clone()], vec![z.clone(), z.clone(), om.clone()]],
    )
    .unwrap();
    let s = bidiagonal_conjugator(&t, &om).unwrap();
    let mut want = Matrix::identity(f.clone(), 3);
    want.set(1, 2, f.div(&c, &a).unwrap());
    assert!(same(&s, &want));
}

#[test]
fn conjugator_reaches_bidiagonal_on_random_upper() {
    let f = cyc(4);
    let om = w(&f, 1);
    let n = 32;
    let t = Matrix::from_fn(f.clone(), n, n, |i, j| {
        if i == j {
            om.clone()
        } else if j == i + 1 {
            int(&f, 1 + mix(3, i, j).abs())
        } else if j > i {
            int(&f, mix(5, i, j))
        } else {
            f.zero()
        }
    });
    let s = bidiagonal_conjugator(&t, &om).unwrap();
    let s_inv = s.inverse().unwrap();
    let got = naive_mul(&naive_mul(&s, &t), &s_inv);
    let want = Matrix::from_fn(f.clone(), n, n, |i, j| if j == i || j == i + 1 { t.get(i, j).clone() } else { f.zero() });
    assert!(same(&got, &want));
}

#[test]
fn conjugator_rejects_zero_superdiagonal() {
    let f = cyc(3);
    let t = LazyMatrix::scalar(f.clone(), w(&f, 1));
    let c = conjugator_to_bidiagonal(&t, 3).unwrap();
    assert!(c.leading(4).is_err());
}

#[test]
fn lazy_conjugator_matches_dense() {
    let f = cyc(3);
    let om = w(&f, 1);
    let (f2, om2) = (f.clone(), om.clone());
    let t = LazyMatrix::new(
        f.clone(),
        Structure::Upper,
        move |i, j| match j as i64 - i as i64 {
            0 => om2.clone(),
            1 => f2.one(),
            2 => f2.from_i64(3),
            _ => f2.zero(),
        },
        |j| j,
    );
    let c = conjugator_to_bidiagonal(&t, 3).unwrap();
    let dense = bidiagonal_conjugator(&t.truncate(20), &om).unwrap();
    assert_eq!(c.entry(3, 9).unwrap(), dense.get(3, 9).clone());
    assert!(same(&c.leading(20).unwrap(), &dense));
}

// ---- upper part ----

#[test]
fn upper_of_two_omega_identity() {
    let f = cyc(3);
    let om = w(&f, 1);
    let t = LazyMatrix::scalar(f.clone(), f.add(&om, &om));
    let parts = decompose_upper_2omega(&t, 3).unwrap();
    assert_eq!(parts.len(), 4);
    let n = 16;
    let m: Vec<_> = parts.iter().map(|p| p.matrix.truncate(n)).collect();
    // zero superdiagonal: the split inserts ω, the remainder carries -ω,
    // and the rows alternate between the two halves
    for i in 0..n {
        let even = i % 2 == 0;
        assert_eq!(!f.is_zero(m[0].get(i, i)), even);
        assert_eq!(!f.is_zero(m[1].get(i, i)), !even);
        assert_eq!(!f.is_zero(m[2].get(i, i)), even);
        assert_eq!(!f.is_zero(m[3].get(i, i)), !even);
    }
    let paired = dense_sum(&f, &[m[0].clone(), m[2].clone()]);
    let want = Matrix::from_fn(f.clone(), n, n, |i, j| if i == j && i % 2 == 0 { f.add(&om, &om) } else { f.zero() });
    assert!(same(&paired, &want));
    for x in &m {
        assert!(naive_potent(x, 4));
    }
    assert!(same(&dense_sum(&f, &m), &t.truncate(n)));
}

#[test]
fn upper_with_full_superdiagonal_has_no_remainder_entries() {
    let f = cyc(4);
    let om = w(&f, 1);
    let n = 12;
    let t = Matrix::from_fn(f.clone(), n, n, |i, j| {
        if i == j {
            f.add(&om, &om)
        } else if j == i + 1 {
            f.one()
        } else {
            f.zero()
        }
    });
    let [u, u2, v1, v2] = decompose_upper_finite(&t, &om).unwrap();
    // bidiagonal input: S = I, so u and u' are the plain blocks
    assert!(u.get(0, 1) == &f.one() && f.is_zero(u.get(0, 2)));
    assert!(u2.get(1, 2) == &f.one());
    // remainder is ωI: every row stays in v'
    assert!(same(&v1, &Matrix::scalar(f.clone(), n, om.clone())));
    assert!(v2.is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn finite_upper_blocks_split_exactly(seed in 0u64..10_000, n in 1usize..9, k in 2u32..5) {
        let f = cyc(k);
        let om = w(&f, 1);
        let t = Matrix::from_fn(f.clone(), n, n, |i, j| {
            if i == j { f.add(&om, &om) } else if j > i { int(&f, mix(seed, i, j)) } else { f.zero() }
        });
        let parts = decompose_upper_finite(&t, &om).unwrap();
        prop_assert!(same(&dense_sum(&f, &parts), &t));
        for p in &parts {
            prop_assert!(naive_potent(p, k + 1));
        }
        let low = decompose_lower_finite(&t.transpose(), &om).unwrap();
        prop_assert!(same(&dense_sum(&f, &low), &t.transpose()));
        for p in &low {
            prop_assert!(naive_potent(p, k + 1));
        }
    }

    #[test]
    fn memo_is_transparent(seed in 0u64..10_000, i in 0usize..40, j in 0usize..40) {
        let d = decompose14(&banded(3, seed, 2, 1), 3).unwrap();
        for s in &d.summands {
            let cached = s.matrix.entry(i, j);
            let again = s.matrix.entry(i, j);
            prop_assert_eq!(&cached, &again);
            prop_assert_eq!(&cached, &s.matrix.entry_uncached(i, j));
        }
    }
}

// ---- lower part ----

#[test]
fn lower_of_three_omega_identity() {
    let f = cyc(3);
    let om = w(&f, 1);
    let t = LazyMatrix::scalar(f.clone(), f.mul(&int(&f, 3), &om));
    let parts = decompose_lower_3omega(&t, 3).unwrap();
    assert_eq!(parts.len(), 6);
    let n = 16;
    let m: Vec<_> = parts.iter().map(|p| p.matrix.truncate(n)).collect();
    let u = dense_sum(&f, &m[..4]);
    assert!(same(&u, &Matrix::scalar(f.clone(), n, f.add(&om, &om))));
    let alt = |parity: usize| Matrix::from_fn(f.clone(), n, n, |i, j| if i == j && i % 2 == parity { om.clone() } else { f.zero() });
    assert!(same(&m[4], &alt(0)));
    assert!(same(&m[5], &alt(1)));
    for x in &m {
        assert!(naive_potent(x, 4));
    }
}

/// Direct scan: last nonzero row of each column, then running maxima.
fn profile_oracle(t: &CycloMatrix) -> Vec<usize> {
    let f = t.field();
    let n = t.rows();
    let mut best = 0;
    (0..n)
        .map(|m| {
            let l = (m..n).rev().find(|&i| !f.is_zero(t.get(i, m))).unwrap_or(m);
            best = best.max(l);
            best
        })
        .collect()
}

#[test]
fn bandwidth_one_profile() {
    let f = cyc(2);
    let om = w(&f, 1);
    let (f2, om2) = (f.clone(), om.clone());
    let t = LazyMatrix::new(
        f.clone(),
        Structure::Lower,
        move |i, j| if i == j { f2.mul(&f2.from_i64(3), &om2) } else if i == j + 1 { f2.one() } else { f2.zero() },
        |j| j + 1,
    );
    let p = StaircaseProfile::new(&t);
    let dense = t.truncate(41);
    let oracle = profile_oracle(&dense);
    for m in 0..40 {
        assert_eq!(p.l_prime(m), oracle[m]);
        assert_eq!(p.l_prime(m), m + 1);
    }
    assert_eq!(p.blocks_until(6), vec![(0, 1), (2, 3), (4, 5)]);
    let parts = decompose_lower_3omega(&t, 2).unwrap();
    let n = 20;
    let m: Vec<_> = parts.iter().map(|s| s.matrix.truncate(n)).collect();
    assert!(same(&dense_sum(&f, &m), &t.truncate(n)));
    for x in &m {
        assert!(naive_potent(x, 3));
    }
}

#[test]
fn finitely_supported_profile_settles() {
    let f = cyc(3);
    let om = w(&f, 1);
    let (f2, om2) = (f.clone(), om.clone());
    let t = LazyMatrix::new(
        f.clone(),
        Structure::Lower,
        move |i, j| {
            if i == j {
                f2.mul(&f2.from_i64(3), &om2)
            } else if (i, j) == (6, 1) || (i, j) == (4, 3) {
                f2.from_i64(2)
            } else {
                f2.zero()
            }
        },
        |j| if j < 4 { 6 } else { j },
    );
    let p = StaircaseProfile::new(&t);
    assert_eq!(p.blocks_until(10), vec![(0, 0), (1, 6), (7, 7), (8, 8), (9, 9)]);
    let oracle = profile_oracle(&t.truncate(12));
    for m in 0..12 {
        assert_eq!(p.l_prime(m), oracle[m]);
    }
    assert_eq!(p.l_prime(30), 30);
}

#[test]
fn staircase_block_boundaries_follow_the_schedule() {
    let spec = FamilySpec::parse(r#"{"family":"staircase","k":2,"schedule":[0,3,3,3,10,10,10,10,10,10,10]}"#).unwrap();
    let t = spec.build_exact().unwrap();
    let (_, t2, _) = split_upper_lower_diag(&t, 2).unwrap();
    let p = StaircaseProfile::new(&t2);
    assert_eq!(p.blocks_until(11), vec![(0, 0), (1, 3), (4, 10)]);
    assert_eq!(p.block_of(9), (2, 4, 10));
}

// ---- diagonal part ----

#[test]
fn diagonal_of_zero() {
    let f = cyc(3);
    let om = w(&f, 1);
    let d = LazyMatrix::zero(f.clone());
    let parts = decompose_diagonal(&d, 3).unwrap();
    let rec = diagonal_recurrence(&d, &om);
    assert_eq!(rec(0), (f.zero(), f.zero()));
    assert_eq!(rec(1).0, f.add(&om, &om));
    let n = 8;
    let m: Vec<_> = parts.iter().map(|p| p.matrix.truncate(n)).collect();
    assert!(dense_sum(&f, &m).is_zero());
    for p in &parts {
        assert!(naive_potent(&p.matrix.truncate(p.matrix.safe_size(n)), 4));
    }
}

#[test]
fn diagonal_recurrence_alternates() {
    let f = cyc(4);
    let om = w(&f, 1);
    let two = f.add(&om, &om);
    let d = LazyMatrix::scalar(f.clone(), two.clone());
    let rec = diagonal_recurrence(&d, &om);
    // oracle: the same rules written out step by step
    let (mut x, mut y) = (two.clone(), f.zero());
    for n in 1..40 {
        if n % 2 == 1 {
            x = f.sub(&two, &x);
            y = f.sub(&two, &x);
        } else {
            y = f.sub(&two, &y);
            x = f.sub(&two, &y);
        }
        assert_eq!(rec(n), (x.clone(), y.clone()), "n = {n}");
    }
    assert_eq!(rec(1), (f.zero(), two.clone()));
    assert_eq!(rec(2), (two.clone(), f.zero()));
}

#[test]
fn single_entry_diagonal_uses_the_pair() {
    let f = cyc(3);
    let c = f.from_i64(7);
    let c2 = c.clone();
    let f2 = f.clone();
    let d = LazyMatrix::diagonal(f.clone(), move |i| if i == 0 { c2.clone() } else { f2.zero() });
    let parts = decompose_diagonal(&d, 3).unwrap();
    let (b, cc) = crate::decompose::lemma2_split(&f, &c).unwrap();
    assert!(same(&parts[0].matrix.truncate(2), &b));
    assert!(same(&parts[1].matrix.truncate(2), &cc));
}

#[test]
fn pairing_blocks_round_sizes() {
    let f = cyc(3);
    let parts = decompose_diagonal(&LazyMatrix::zero(f), 3).unwrap();
    assert_eq!(parts[0].matrix.safe_size(7), 8);
    assert_eq!(parts[0].matrix.truncate_view(7, true).size, 8);
    assert_eq!(parts[2].matrix.safe_size(8), 9);
    assert_eq!(parts[2].matrix.safe_size(7), 7);
}

// ---- whole pipeline ----

#[test]
fn decompose_zero() {
    let d = decompose14(&LazyMatrix::zero(cyc(3)), 3).unwrap();
    assert_eq!(d.len(), 14);
    assert_eq!((d.count(Part::Upper), d.count(Part::Lower), d.count(Part::Diagonal)), (4, 6, 4));
    assert_verified(&d, 16);
}

#[test]
fn decompose_tridiagonal_constant() {
    for k in [2, 3] {
        let spec = FamilySpec::parse(&format!(r#"{{"family":"banded","k":{k},"band":{{"-1":"1","0":"w","1":"2"}}}}"#)).unwrap();
        let d = decompose14(&spec.build_exact().unwrap(), k).unwrap();
        for n in [8, 16, 32] {
            assert_verified(&d, n);
        }
    }
}

#[test]
fn decompose_upper_input_keeps_lower_part_diagonal() {
    let a = banded(4, 3, 0, 2);
    let a = LazyMatrix::new(a.field().clone(), Structure::Upper, move |i, j| a.entry(i, j), |j| j);
    let (_, t2, _) = split_upper_lower_diag(&a, 4).unwrap();
    assert_eq!(t2.structure(), Structure::Diagonal);
    let d = decompose14(&a, 4).unwrap();
    assert!(d.len() <= 14);
    assert_verified(&d, 16);
}

#[test]
fn decompose_random_banded() {
    let d = decompose14(&banded(3, 42, 2, 2), 3).unwrap();
    assert_verified(&d, 24);
    assert!(d.reconstruction().truncate(24) == d.target.truncate(24));
}

#[test]
fn decompose_rejects_trivial_root() {
    assert!(decompose14(&LazyMatrix::zero(cyc(3)), 1).is_err());
    assert!(decompose14(&LazyMatrix::zero(cyc(3)), 2).is_err());
}

// ---- families ----

#[test]
fn family_example_parses() {
    let spec = FamilySpec::parse(r#"{"family":"banded","k":3,"band":{"-1":"1","0":"5*w","1":"w^2"},"perturb":[{"i":2,"j":5,"v":"7"}]}"#).unwrap();
    let a = spec.build_exact().unwrap();
    let f = a.field().clone();
    assert_eq!(a.entry(3, 3), f.mul(&int(&f, 5), &w(&f, 1)));
    assert_eq!(a.entry(4, 3), f.one());
    assert_eq!(a.entry(3, 4), w(&f, 2));
    assert_eq!(a.entry(2, 5), int(&f, 7));
    assert_eq!(a.structure(), Structure::General);
    assert!(a.check_support(10, 4).is_ok());
    assert_eq!(FamilySpec::parse(&spec.to_json()).unwrap(), spec);
}

#[test]
fn periodic_band_cycles_along_columns() {
    let spec = FamilySpec::parse(r#"{"family":"banded","k":2,"band":{"0":["1","2","3"]}}"#).unwrap();
    let a = spec.build_exact().unwrap();
    let f = a.field().clone();
    assert_eq!(a.structure(), Structure::Diagonal);
    assert_eq!(a.entry(4, 4), int(&f, 2));
    assert_eq!(a.entry(6, 6), int(&f, 1));
}

#[test]
fn staircase_schedules() {
    for (s, want) in [("m", vec![0, 1, 2, 3]), ("m+1", vec![1, 2, 3, 4]), ("2ceil(m/2)", vec![0, 2, 2, 4])] {
        let spec = FamilySpec::parse(&format!(r#"{{"family":"staircase","k":2,"schedule":"{s}"}}"#)).unwrap();
        let a = spec.build_exact().unwrap();
        for (m, &l) in want.iter().enumerate() {
            assert_eq!(a.col_support(m), l);
        }
        assert!(a.check_support(8, 3).is_ok());
    }
    assert!(FamilySpec::parse(r#"{"family":"staircase","k":2,"schedule":"m^2"}"#).unwrap().build_exact().is_err());
    assert!(FamilySpec::parse(r#"{"family":"staircase","k":2,"schedule":[3,1]}"#).unwrap().build_exact().is_err());
    assert!(FamilySpec::parse(r#"{"family":"spiral","k":2}"#).is_err());
}
