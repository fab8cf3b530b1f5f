//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the governing tolerance. Run with `cargo test --test acceptance`.

use neglecton::braid::{braiding, twist_scalar};
use neglecton::compile::{
    alt_nonclifford_gate, alt_root_closed_form, clifford_suite, entangling_check,
    find_decoupling_alpha, nc1_b0_squared_closed_form, nc1_block, nc1_root_closed_form,
    reichardt_step, run_recursion, step1_offdiag_prediction, theta_bar_closed_form,
    universality_check, AlphaArg, DRealization, DecouplingBlock,
};
use neglecton::fusion::Theory;
use neglecton::label::Label::{self, S, V};
use neglecton::linalg::{sqrt_real, CMat};
use neglecton::module::{make_neglecton, make_simple};
use neglecton::root::RootData;
use neglecton::spaces::{
    build_space, enumerate_trees, full_module_braid, generator_matrix, j1_matrix, jucys_murphy,
    path_count_oracle, tree_morphism,
};
use neglecton::tables::{compare_tables, GaugeClass};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const ALPHAS: [f64; 6] = [0.3, 1.5, 2.3, 2.7, 3.7, 5.21];

fn rd() -> RootData {
    RootData::default()
}

#[test]
fn criterion_01_algebra_suite() {
    let tol = 1e-10;
    let mut worst: f64 = 0.0;
    for n in 0..4 {
        worst = worst.max(make_simple(n, rd()).unwrap().relation_residual());
    }
    for a in ALPHAS {
        worst = worst.max(make_neglecton(a, rd()).unwrap().relation_residual());
    }
    assert!(worst < tol, "algebra residual {worst:.2e}");
    println!("criterion 01 PASS algebra suite: max relation residual {worst:.2e} < {tol:.0e}");
}

#[test]
fn criterion_02_appendix_regression() {
    let tol = 1e-8;
    let mut worst_r: f64 = 0.0;
    let mut worst_b: f64 = 0.0;
    let mut worst_col: f64 = 0.0;
    let mut f111_note = String::new();
    for a in ALPHAS {
        let theory = Theory::ising(a).unwrap();
        let report = compare_tables(&theory).unwrap();
        worst_r = worst_r.max(report.max_r_deviation);
        worst_b = worst_b.max(report.max_bubble_deviation);
        for f in &report.f_symbols {
            if f.key.contains("[S1 S1 S1; S1]") {
                // printed in the traditional Ising vertex gauge: reachable by
                // row+column rescaling only; reported, not hidden
                assert!(f.bi_gauge_residual < tol, "{f:?}");
                assert_eq!(f.class, GaugeClass::BiGauge);
                f111_note = format!(
                    "F[111;1] printed in traditional gauge: exact dev {:.2e}, bi-gauge dev {:.2e}",
                    f.exact_residual, f.bi_gauge_residual
                );
            } else {
                assert!(
                    matches!(f.class, GaugeClass::Exact | GaugeClass::ColumnGauge),
                    "{f:?}"
                );
                for s in &f.column_ratio_stddev {
                    worst_col = worst_col.max(*s);
                }
            }
        }
    }
    assert!(worst_r < tol, "R deviation {worst_r:.2e}");
    assert!(worst_b < tol, "bubble deviation {worst_b:.2e}");
    assert!(worst_col < tol, "column gauge stddev {worst_col:.2e}");
    println!(
        "criterion 02 PASS appendix regression: R dev {worst_r:.2e}, bubble dev {worst_b:.2e}, \
         F column-ratio stddev {worst_col:.2e} < {tol:.0e}; {f111_note}"
    );
}

#[test]
fn criterion_03_consistency_suite() {
    // pentagon over all supported 4-tuples at five sampled generic alpha
    let mut worst_p: f64 = 0.0;
    let mut count = 0;
    for a in [0.3, 1.5, 2.3, 2.7, 3.7] {
        let th = Theory::ising(a).unwrap();
        let ising = [S(1), S(2)];
        for pos in 0..4usize {
            for &x in &ising {
                for &y in &ising {
                    for &z in &ising {
                        let mut legs = vec![x, y, z];
                        legs.insert(pos, V(0));
                        for e in (-4..=4).map(V) {
                            if let Some(resid) = th
                                .pentagon_residual(legs[0], legs[1], legs[2], legs[3], e)
                                .unwrap()
                            {
                                worst_p = worst_p.max(resid);
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(count >= 160, "found only {count} supported pentagon tuples");
    assert!(worst_p < 1e-8, "pentagon {worst_p:.2e}");
    let theory = Theory::ising(2.3).unwrap();
    // Yang-Baxter over all triples from the pool
    let pool = [S(0), S(1), S(2), S(3), V(0)];
    let mut worst_yb: f64 = 0.0;
    for &a in &pool {
        for &b in &pool {
            for &c in &pool {
                let (ma, mb, mc) = (theory.module(a), theory.module(b), theory.module(c));
                let i1 = CMat::identity(ma.dim);
                let i2 = CMat::identity(mb.dim);
                let i3 = CMat::identity(mc.dim);
                let lhs = braiding(&mb, &mc)
                    .kron(&i1)
                    .mul(&i2.kron(&braiding(&ma, &mc)))
                    .mul(&braiding(&ma, &mb).kron(&i3));
                let rhs = i3
                    .kron(&braiding(&ma, &mb))
                    .mul(&braiding(&ma, &mc).kron(&i2))
                    .mul(&i1.kron(&braiding(&mb, &mc)));
                worst_yb = worst_yb.max(lhs.sub(&rhs).max_norm());
            }
        }
    }
    assert!(worst_yb < 1e-9, "yang-baxter {worst_yb:.2e}");
    // braid and affine relations on H_2
    let space = build_space(&theory, 2).unwrap();
    let b2 = generator_matrix(&theory, &space, 2).unwrap();
    let b3 = generator_matrix(&theory, &space, 3).unwrap();
    let b4 = generator_matrix(&theory, &space, 4).unwrap();
    let j1 = j1_matrix(&theory, &space).unwrap();
    let mut worst_br = b2.mul(&b3).mul(&b2).sub(&b3.mul(&b2).mul(&b3)).max_norm();
    worst_br = worst_br.max(b3.mul(&b4).mul(&b3).sub(&b4.mul(&b3).mul(&b4)).max_norm());
    worst_br = worst_br.max(b2.mul(&b4).sub(&b4.mul(&b2)).max_norm());
    worst_br = worst_br.max(
        b2.mul(&j1).mul(&b2).mul(&j1).sub(&j1.mul(&b2).mul(&j1).mul(&b2)).max_norm(),
    );
    assert!(worst_br < 1e-8, "braid relations {worst_br:.2e}");
    println!(
        "criterion 03 PASS consistency: pentagon {worst_p:.2e} < 1e-8 over {count} tuples, \
         yang-baxter {worst_yb:.2e} < 1e-9, H_2 braid/affine {worst_br:.2e} < 1e-8"
    );
}

#[test]
fn criterion_04_gate_regression() {
    let mut worst_j1: f64 = 0.0;
    let mut worst_b2: f64 = 0.0;
    let mut worst_unit: f64 = 0.0;
    let mut worst_su: f64 = 0.0;
    for a in ALPHAS {
        let theory = Theory::ising(a).unwrap();
        let space = build_space(&theory, 1).unwrap();
        let j1 = j1_matrix(&theory, &space).unwrap();
        worst_j1 = worst_j1
            .max((j1[(0, 0)] - theory.rd.qpow(3.0 + a)).norm())
            .max((j1[(1, 1)] - theory.rd.qpow(-5.0 - a)).norm());
        let b2 = space.normalize(&generator_matrix(&theory, &space, 2).unwrap());
        let q = theory.rd.q();
        let one = C64::new(1.0, 0.0);
        let s0 = sqrt_real(space.gram[0]);
        let s1 = sqrt_real(space.gram[1]);
        let pref = theory.rd.qpow(0.5);
        let printed = CMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => pref * (one + q * q) / (one - theory.rd.qpow(2.0 * a)),
            (1, 1) => pref * (one + q * q) / (one - theory.rd.qpow(-2.0 * a)),
            _ => pref * q.inv() * s0 / s1,
        });
        worst_b2 = worst_b2.max(b2.sub(&printed).max_norm());
        worst_unit = worst_unit.max(space.indefinite_unitarity_residual(&b2));
        // SU-rescaled forms
        let su_j1 = j1.scale(-q);
        worst_su = worst_su
            .max((su_j1[(0, 0)] - theory.rd.qpow(a)).norm())
            .max((su_j1[(1, 1)] - theory.rd.qpow(-a)).norm());
        let su_b2 = b2.scale(theory.rd.qpow(-1.5));
        let printed_su = printed.scale(theory.rd.qpow(-1.5));
        worst_su = worst_su.max(su_b2.sub(&printed_su).max_norm());
    }
    assert!(worst_j1 < 1e-10, "J1 {worst_j1:.2e}");
    assert!(worst_b2 < 1e-8, "b2 printed {worst_b2:.2e}");
    assert!(worst_unit < 1e-8, "unitarity {worst_unit:.2e}");
    assert!(worst_su < 1e-8, "SU forms {worst_su:.2e}");
    println!(
        "criterion 04 PASS gate regression: J1 {worst_j1:.2e} < 1e-10, printed b2 \
         {worst_b2:.2e} < 1e-8, indefinite unitarity {worst_unit:.2e} < 1e-8, SU forms \
         {worst_su:.2e} < 1e-8 (printed b2 internally consistent at all sampled alpha)"
    );
}

#[test]
fn criterion_05_signature_sweep() {
    // 500-point sweep over (0,4): <0|0>, <1|1> both negative on (1,2), both
    // positive on (2,3); zero sign violations.
    let n_points = 500;
    let mut violations = 0;
    let mut checked = 0;
    for k in 0..n_points {
        let a = 0.004 + 3.992 * k as f64 / (n_points - 1) as f64;
        if neglecton::label::check_alpha(a, 4).is_err() || a.abs() < 1e-3 {
            continue;
        }
        let theory = Theory::ising(a).unwrap();
        let space = build_space(&theory, 1).unwrap();
        let (n0, n1) = (space.gram[0], space.gram[1]);
        if a > 1.0 && a < 2.0 {
            checked += 1;
            if !(n0 < 0.0 && n1 < 0.0) {
                violations += 1;
            }
        } else if a > 2.0 && a < 3.0 {
            checked += 1;
            if !(n0 > 0.0 && n1 > 0.0) {
                violations += 1;
            }
        }
    }
    assert!(checked > 200);
    assert_eq!(violations, 0);
    // two-qubit norms {B0^2, B0 B1, B0 B1, B1^2} d_alpha to relative 1e-9
    let mut worst: f64 = 0.0;
    for a in [2.3, 1.5, 2.7] {
        let theory = Theory::ising(a).unwrap();
        let space = build_space(&theory, 2).unwrap();
        let cot = |x: f64| x.cos() / x.sin();
        let d = theory.rd.modified_dimension(a);
        let b0 = 2f64.sqrt() / (-1.0 + cot(PI * (1.0 + a) / 4.0));
        let b1 = 2f64.sqrt() / (-1.0 + cot(PI * a / 4.0));
        let expect = [b0 * b0 * d, b0 * b1 * d, b0 * b1 * d, b1 * b1 * d];
        for (g, e) in space.gram.iter().zip(&expect) {
            worst = worst.max((g - e).abs() / e.abs());
        }
    }
    assert!(worst < 1e-9, "two-qubit norms {worst:.2e}");
    println!(
        "criterion 05 PASS signature: 0 sign violations at the {checked} in-window points of a 500-point sweep; \
         two-qubit norms match B-products to {worst:.2e} < 1e-9"
    );
}

#[test]
fn criterion_06_leakage_formula() {
    // Step-1 off-diagonal for 50 random admissible (U, theta) in both
    // unitarity classes. The verified closed forms are
    //   ordinary:  |b0| |1 - (2-2 cos t)(1 - |b0|^2)|
    //   indefinite:|b0| |1 - (2-2 cos t)(1 + |b0|^2)|
    // (the printed variant "(2-2 cos t)(1-|b0|^2) + 1" matches neither class;
    // its vanishing condition corresponds to the ordinary form above).
    let mut state = 0xfeedu64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let indefinite = k % 2 == 1;
        let t = next() * if indefinite { 0.85 } else { 1.2 };
        let (p1, p2) = (next() * 2.0 * PI, next() * 2.0 * PI);
        let (m00, m10) = if indefinite {
            (C64::from_polar(t.cosh(), p1), C64::from_polar(t.sinh(), p2))
        } else {
            (C64::from_polar(t.cos(), p1), C64::from_polar(t.sin(), p2))
        };
        let u = CMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => m00,
            (1, 0) => m10,
            (0, 1) => {
                if indefinite {
                    m10.conj()
                } else {
                    -m10.conj()
                }
            }
            (1, 1) => m00.conj(),
            _ => unreachable!(),
        });
        let theta = (next() - 0.5) * PI;
        let d = CMat::diag(&[C64::from_polar(1.0, theta / 2.0), C64::from_polar(1.0, -theta / 2.0)]);
        let u1 = reichardt_step(&u, &d).unwrap();
        let pred = step1_offdiag_prediction(u[(1, 0)].norm(), theta, indefinite);
        worst = worst.max((u1[(1, 0)].norm() - pred).abs() / pred.max(1e-12));
    }
    assert!(worst < 1e-9, "step-1 formula relative error {worst:.2e}");
    // |b0|^2 at alpha = 2.3 equals the printed cot-ratio formula
    let theory = Theory::ising(2.3).unwrap();
    let blk = nc1_block(&theory, DRealization::BraidWord).unwrap();
    let dev = (blk.b0 * blk.b0 - nc1_b0_squared_closed_form(2.3)).abs();
    assert!(dev < 1e-9, "|b0|^2 vs cot formula {dev:.2e}");
    println!(
        "criterion 06 PASS leakage formula: step-1 closed forms (both unitarity classes) \
         match to {worst:.2e} < 1e-9 over 50 random (U, theta); |b0|^2(2.3) matches the \
         cot-ratio to {dev:.2e} < 1e-9 (printed formula's '+1' sign corrected; see README conventions)"
    );
}

#[test]
fn criterion_07_decoupling_roots() {
    // the rotation D(theta = pi alpha) reproduces the printed root
    let root = find_decoupling_alpha(
        rd(),
        DecouplingBlock::Nc1(DRealization::AlphaRotation),
        (2.05, 2.45),
    )
    .unwrap();
    let dev = (root - nc1_root_closed_form()).abs();
    assert!(dev < 1e-6, "NC1 root dev {dev:.2e}");
    // one step eliminates the NC1 leakage below 1e-9 at the root
    let theory = Theory::new(root, rd()).unwrap();
    let blk = nc1_block(&theory, DRealization::AlphaRotation).unwrap();
    let u1 = reichardt_step(&blk.u, &blk.d).unwrap();
    let leak = u1[(1, 0)].norm();
    assert!(leak < 1e-9, "step-1 leakage {leak:.2e}");
    // alternative encoding root
    let alt = alt_nonclifford_gate(rd()).unwrap();
    let dev_alt = (alt.alpha_root - alt_root_closed_form()).abs();
    assert!(dev_alt < 1e-6, "alt root dev {dev_alt:.2e}");
    assert!(alt.step1_offdiag < 1e-9);
    // the braid-word realization (J2 J3^-1)^2 has its own root; reported
    let braid_root = find_decoupling_alpha(
        rd(),
        DecouplingBlock::Nc1(DRealization::BraidWord),
        (2.05, 2.3),
    )
    .unwrap();
    println!(
        "criterion 07 PASS decoupling roots: NC1 root {root:.10} vs closed form (dev {dev:.1e} \
         < 1e-6), step-1 leakage {leak:.1e} < 1e-9; alt root {:.10} (dev {dev_alt:.1e}); \
         braid-word (J2 J3^-1)^2 realization decouples at alpha = {braid_root:.6} instead \
         (rotation angle differs from pi*alpha; see README conventions)",
        alt.alpha_root
    );
}

#[test]
fn criterion_08_universality_verdicts() {
    // Honest excluded set among denominator <= 6 rationals in the unitary
    // windows: alpha/4 = m/n with n <= 6 happens exactly at 2 +- 2/3 and
    // 2 +- 2/5 (mod 4). The headline list prints 2 +- 3/5; alpha = 2 +- 3/5
    // gives alpha/4 = 13/20 or 7/20 which no n <= 6 fraction matches, so the
    // printed variant is not reproducible from the stated test; the honest
    // set is asserted and the discrepancy reported here.
    let windows = [(1.0, 2.0), (2.0, 3.0), (5.0, 6.0), (6.0, 7.0)];
    let mut excluded = Vec::new();
    let mut tested = 0;
    for q in 1..=6i64 {
        for p in 1..(7 * q) {
            if p % q == 0 {
                continue;
            }
            let a = p as f64 / q as f64;
            if !windows.iter().any(|w| a > w.0 && a < w.1) {
                continue;
            }
            // lowest terms only
            let g = {
                fn gcd(a: i64, b: i64) -> i64 {
                    if b == 0 {
                        a
                    } else {
                        gcd(b, a % b)
                    }
                }
                gcd(p, q)
            };
            if g != 1 {
                continue;
            }
            tested += 1;
            let v = universality_check(rd(), AlphaArg::Rational(p, q)).unwrap();
            if !v.verdict {
                excluded.push((p, q));
            }
        }
    }
    let expect = vec![(4i64, 3i64), (8, 5), (8, 3), (12, 5), (16, 3), (28, 5), (20, 3), (32, 5)];
    let mut sorted = excluded.clone();
    sorted.sort();
    let mut expect_sorted = expect.clone();
    expect_sorted.sort();
    assert_eq!(sorted, expect_sorted, "excluded set");
    // true at 23/10
    let v = universality_check(rd(), AlphaArg::Rational(23, 10)).unwrap();
    assert!(v.verdict);
    // 8-periodic on 20 samples
    for k in 0..20 {
        let a = 1.11 + 0.09 * k as f64;
        if neglecton::label::check_alpha(a, 4).is_err() {
            continue;
        }
        let v1 = universality_check(rd(), AlphaArg::Float(a)).unwrap();
        let v2 = universality_check(rd(), AlphaArg::Float(a + 8.0)).unwrap();
        assert_eq!(v1.verdict, v2.verdict);
    }
    println!(
        "criterion 08 PASS universality: verdict false exactly at {{2±2/3, 2±2/5}} (mod 4) \
         over {tested} reduced rationals with denominator <= 6 in the unitary windows \
         (printed variant 2±3/5 not reproducible: 13/20 and 7/20 exceed denominator 6); \
         true at 23/10; verdict 8-periodic on 20 samples"
    );
}

#[test]
fn criterion_09_clifford_suite() {
    let mut worst: f64 = 0.0;
    for a in [1.5, 2.5, 1.2] {
        let theory = Theory::ising(a).unwrap();
        let report = clifford_suite(&theory).unwrap();
        worst = worst.max(report.max_deviation);
    }
    assert!(worst < 1e-8, "Clifford identities {worst:.2e}");
    let alt = alt_nonclifford_gate(rd()).unwrap();
    let tb_dev = (alt.theta_bar.abs() - theta_bar_closed_form().abs()).abs();
    assert!(tb_dev < 1e-4, "theta_bar {tb_dev:.2e}");
    assert!(
        alt.clifford_membership_deviation > 1e-2,
        "gate must fail Clifford membership, dev {}",
        alt.clifford_membership_deviation
    );
    println!(
        "criterion 09 PASS Clifford suite: H/S/X/Y/Z braid identities match printed \
         matrices to {worst:.2e} < 1e-8; non-Clifford phase |theta_bar| = {:.9} vs closed \
         form {:.9} (dev {tb_dev:.1e} < 1e-4); Pauli-conjugation deviation {:.2} > 1e-2",
        alt.theta_bar.abs(),
        theta_bar_closed_form().abs(),
        alt.clifford_membership_deviation
    );
}

#[test]
fn criterion_10_oracle_equivalences() {
    let theory = Theory::ising(2.3).unwrap();
    // tree_norm vs matrix-composed modified trace on all H_2 basis trees
    let space = build_space(&theory, 2).unwrap();
    let labels = [V(0), S(1), S(1), S(1), S(1)];
    let g_big = theory.gram_chain(&labels).unwrap();
    let mut worst_tree: f64 = 0.0;
    for tree in &space.basis {
        let v = tree_morphism(&theory, tree).unwrap();
        let vd = theory.adjoint(&v, &theory.gram_simple(V(0)), &g_big).unwrap();
        let tr = theory.modified_trace(V(0), &vd.mul(&v)).unwrap();
        let fast = theory.tree_norm(V(0), &[S(1); 4], &tree.labels()).unwrap();
        worst_tree = worst_tree.max((tr.re - fast).abs() / fast.abs().max(1.0));
    }
    assert!(worst_tree < 1e-8, "tree norms {worst_tree:.2e}");
    // dim(H_n) against the path-enumeration oracle for n <= 4
    for n in 1..=4 {
        assert_eq!(enumerate_trees(n).len(), path_count_oracle(n));
        let binom = [2usize, 6, 20, 70][n - 1];
        assert_eq!(path_count_oracle(n), binom);
    }
    // local F-R-F assembly vs the full-module braiding action on H_1, H_2
    let mut worst_gen: f64 = 0.0;
    for n in [1usize, 2] {
        let space = build_space(&theory, n).unwrap();
        for i in 1..=(2 * n) {
            let local = if i == 1 {
                j1_matrix(&theory, &space).unwrap()
            } else {
                generator_matrix(&theory, &space, i).unwrap()
            };
            let oracle = full_module_braid(&theory, &space, i).unwrap();
            worst_gen = worst_gen.max(local.sub(&oracle).max_norm());
        }
    }
    assert!(worst_gen < 1e-8, "generator oracle {worst_gen:.2e}");
    println!(
        "criterion 10 PASS oracle equivalences: tree norms vs t(v^dag v) {worst_tree:.2e} \
         < 1e-8 on all H_2 trees; dim(H_n) = C(2n, n) for n <= 4; local F-R-F assembly vs \
         full-module braiding {worst_gen:.2e} < 1e-8 on H_1 and H_2"
    );
}

#[test]
fn criterion_11_entangling_certification() {
    // at the decoupling point, run the recursion on the full H_2 until the
    // total leakage is small, then certify the computational block entangling
    let root = find_decoupling_alpha(
        rd(),
        DecouplingBlock::Nc1(DRealization::AlphaRotation),
        (2.05, 2.45),
    )
    .unwrap();
    let theory = Theory::new(root, rd()).unwrap();
    let blk = nc1_block(&theory, DRealization::AlphaRotation).unwrap();
    let trace = run_recursion(&blk.u_full, &blk.d_full, 30, 1e-7, true).unwrap();
    let gate = &trace.final_matrix;
    let leak = blk.space.leakage(gate);
    assert!(leak < 1e-4, "compiled gate leakage {leak:.2e}");
    // NC1 leakage is eliminated at step 1 and stays numerically dead
    let comp: Vec<usize> = (0..4).collect();
    let block = gate.select(&comp, &comp);
    let entangling = entangling_check(&block, leak, 1e-4).unwrap();
    assert!(entangling, "compiled gate must be entangling");
    // second Schmidt coefficient witness
    let img = block.matvec(&[
        C64::new(0.5, 0.0),
        C64::new(0.5, 0.0),
        C64::new(0.5, 0.0),
        C64::new(0.5, 0.0),
    ]);
    let m = CMat::from_fn(2, 2, |i, j| img[2 * i + j]);
    let (vals, _) = m.svd_values_and_v();
    println!(
        "criterion 11 PASS entangling certification: compiled gate at alpha_0 = {root:.6} \
         has leakage {leak:.2e} < 1e-4 after {} steps and is entangling \
         (second Schmidt coefficient {:.4} > 1e-3 on |++>)",
        trace.steps.len(),
        vals[1]
    );
}

/// Extra guard: twist values across the moduli pool (supports criterion 1's
/// K = q^H and the table of twists).
#[test]
fn twist_table_guard() {
    for a in ALPHAS {
        let theory = Theory::ising(a).unwrap();
        let tw = twist_scalar(&theory.module(Label::V(0)), 1e-9).unwrap();
        let expect = theory.rd.qpow((a * a - 9.0) / 2.0);
        assert!((tw - expect).norm() < 1e-10);
    }
}
