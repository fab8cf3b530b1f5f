//! Command-line surface over the model: symbol tables, verification suites,
//! braid evaluation, alpha sweeps, and decoupling roots.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or guard error.

use clap::{Parser, Subcommand, ValueEnum};
use neglecton::compile::{
    alt_nonclifford_gate, entangling_check, find_decoupling_alpha, nc1_block,
    nc1_root_closed_form, reichardt_step, universality_check, AlphaArg, DRealization,
    DecouplingBlock,
};
use neglecton::fusion::Theory;
use neglecton::label::Label;
use neglecton::output::{matrix_json, Meta, Report};
use neglecton::root::RootData;
use neglecton::spaces::{
    braid_word_matrix, build_space, generator_matrix, j1_matrix, jucys_murphy, BraidWord,
};
use neglecton::tables::compare_tables;
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "neglecton", version, about = "non-semisimple Ising anyon model toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Relations,
    Pentagon,
    Yangbaxter,
    Unitarity,
    Braidrelations,
    Trace,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Observable {
    Norms,
    Signature,
    Leakage,
    Verdict,
}

#[derive(Subcommand)]
enum Command {
    /// Emit solver and closed-form symbol tables with deviations.
    Tables {
        /// Neglecton parameter, real or rational like "23/10".
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<String>,
    },
    /// Run a named invariant suite; exit 0 iff all residuals pass.
    Verify {
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Seed for the randomized checks inside the trace suite.
        #[arg(long, default_value = "0")]
        seed: u64,
    },
    /// Evaluate a braid word on H_n and print diagnostics.
    Braid {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: usize,
        /// Word over the affine braid group, e.g. "1^2 3 2^-1"
        /// (generator 1 admits even exponents only).
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Sweep an observable over an alpha range; emits CSV ordered by alpha.
    Sweep {
        #[arg(long)]
        alpha_min: f64,
        #[arg(long)]
        alpha_max: f64,
        #[arg(long, default_value = "0.01")]
        step: f64,
        #[arg(long, value_enum)]
        observable: Observable,
        #[arg(long)]
        out: Option<String>,
    },
    /// Decoupling roots of both blocks plus closed-form residuals.
    Roots {
        /// Bracket for the NC1-block root.
        #[arg(long, default_value = "2.05")]
        bracket_lo: f64,
        #[arg(long, default_value = "2.45")]
        bracket_hi: f64,
        #[arg(long)]
        out: Option<String>,
    },
}

fn tolerance() -> f64 {
    std::env::var("NEGLECTON_TOL")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .map(|t| t.max(1e-14))
        .unwrap_or(1e-8)
}

fn parse_alpha(s: &str) -> Result<AlphaArg, String> {
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| format!("bad rational '{s}'"))?;
        let q: i64 = q.trim().parse().map_err(|_| format!("bad rational '{s}'"))?;
        if q == 0 {
            return Err("zero denominator".into());
        }
        Ok(AlphaArg::Rational(p, q))
    } else {
        s.trim()
            .parse::<f64>()
            .map(AlphaArg::Float)
            .map_err(|_| format!("bad alpha '{s}'"))
    }
}

fn emit(out: &Option<String>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let rd = RootData::default();
    match cli.command {
        Command::Tables { alpha, format, out } => {
            let a = parse_alpha(&alpha)?;
            let theory = Theory::new(a.value(), rd).map_err(|e| e.to_string())?;
            let report = compare_tables(&theory).map_err(|e| e.to_string())?;
            let content = match format {
                Format::Json => Report::new(Meta::new(rd.r, a.value(), tolerance()), &report)
                    .to_json()
                    .map_err(|e| e.to_string())?,
                Format::Csv => {
                    let mut s = String::from(
                        "kind,key,solver_re,solver_im,closed_re,closed_im,deviation\n",
                    );
                    for r in &report.r_symbols {
                        s.push_str(&format!(
                            "R,{},{},{},{},{},{}\n",
                            r.key, r.solver[0], r.solver[1], r.closed_form[0], r.closed_form[1],
                            r.deviation
                        ));
                    }
                    for b in &report.bubbles {
                        s.push_str(&format!(
                            "B,{},{},{},{},{},{}\n",
                            b.key, b.solver[0], b.solver[1], b.closed_form[0], b.closed_form[1],
                            b.deviation
                        ));
                    }
                    for f in &report.f_symbols {
                        s.push_str(&format!(
                            "F,{},{:?},,,,{}\n",
                            f.key, f.class, f.column_gauge_residual
                        ));
                    }
                    s
                }
            };
            emit(&out, &content).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { alpha, suite, seed } => {
            let a = parse_alpha(&alpha)?;
            let theory = Theory::new(a.value(), rd).map_err(|e| e.to_string())?;
            let failures = run_suite(&theory, suite, seed).map_err(|e| e.to_string())?;
            if failures == 0 {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Braid { alpha, n, word, format, out } => {
            let a = parse_alpha(&alpha)?;
            let theory = Theory::new(a.value(), rd).map_err(|e| e.to_string())?;
            let space = build_space(&theory, n).map_err(|e| e.to_string())?;
            let w = BraidWord::parse(&word).map_err(|e| e.to_string())?;
            for &(idx, _) in &w.0 {
                if idx > 2 * n {
                    return Err(format!("generator {idx} exceeds 2n = {}", 2 * n));
                }
            }
            let raw = braid_word_matrix(&theory, &space, &w).map_err(|e| e.to_string())?;
            let normalized = space.normalize(&raw);
            let leak = space.leakage(&normalized);
            let unit = space.indefinite_unitarity_residual(&normalized);
            let entangling = if n == 2 && leak <= 1e-4 {
                let comp = [0usize, 1, 2, 3];
                let block = normalized.select(&comp, &comp);
                Some(entangling_check(&block, leak, 1e-4).map_err(|e| e.to_string())?)
            } else {
                None
            };
            let data = json!({
                "word": word,
                "basis": space.basis.iter().map(|t| t.render(a.value())).collect::<Vec<_>>(),
                "matrix_normalized": matrix_json(&normalized),
                "leakage": leak,
                "indefinite_unitarity_residual": unit,
                "signature": space.signature,
                "entangling": entangling,
            });
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "meta": Meta::new(rd.r, a.value(), tolerance()),
                    "data": data,
                }))
                .map_err(|e| e.to_string())?,
                Format::Csv => {
                    let mut s = String::from("i,j,re,im\n");
                    for i in 0..normalized.rows {
                        for j in 0..normalized.cols {
                            let z = normalized[(i, j)];
                            s.push_str(&format!("{i},{j},{},{}\n", z.re, z.im));
                        }
                    }
                    s
                }
            };
            emit(&out, &content).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { alpha_min, alpha_max, step, observable, out } => {
            let mut rows = Vec::new();
            let header = match observable {
                Observable::Norms => "alpha,norm0,norm1",
                Observable::Signature => "alpha,signature,definite",
                Observable::Leakage => "alpha,b3_leakage,step1_offdiag",
                Observable::Verdict => "alpha,verdict",
            };
            let mut a = alpha_min;
            while a <= alpha_max + 1e-12 {
                if neglecton::label::check_alpha(a, rd.r).is_ok() && a.abs() > 1e-9 {
                    if let Some(row) = sweep_row(rd, a, observable) {
                        rows.push(row);
                    }
                }
                a += step;
            }
            let content = format!("{header}\n{}\n", rows.join("\n"));
            emit(&out, &content).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Roots { bracket_lo, bracket_hi, out } => {
            let nc1 = find_decoupling_alpha(
                rd,
                DecouplingBlock::Nc1(DRealization::AlphaRotation),
                (bracket_lo, bracket_hi),
            );
            let nc1_braid =
                find_decoupling_alpha(rd, DecouplingBlock::Nc1(DRealization::BraidWord), (2.05, 2.3));
            let alt = alt_nonclifford_gate(rd);
            let data = match (&nc1, &nc1_braid, &alt) {
                (Ok(r1), Ok(rb), Ok(a)) => json!({
                    "nc1_root": r1,
                    "nc1_closed_form": nc1_root_closed_form(),
                    "nc1_closed_form_residual": (r1 - nc1_root_closed_form()).abs(),
                    "nc1_braid_word_root": rb,
                    "alt_root": a.alpha_root,
                    "alt_closed_form": a.alpha_root_closed_form,
                    "alt_closed_form_residual": (a.alpha_root - a.alpha_root_closed_form).abs(),
                    "theta_bar": a.theta_bar,
                    "theta_bar_closed_form": a.theta_bar_closed_form,
                }),
                _ => {
                    let msg = [
                        nc1.err().map(|e| e.to_string()),
                        nc1_braid.err().map(|e| e.to_string()),
                        alt.err().map(|e| e.to_string()),
                    ]
                    .into_iter()
                    .flatten()
                    .collect::<Vec<_>>()
                    .join("; ");
                    json!({ "error": msg })
                }
            };
            let content = serde_json::to_string_pretty(&json!({
                "meta": Meta::new(rd.r, f64::NAN, tolerance()),
                "data": data,
            }))
            .map_err(|e| e.to_string())?;
            let failed = data.get("error").is_some();
            emit(&out, &content).map_err(|e| e.to_string())?;
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
    }
}

fn sweep_row(rd: RootData, a: f64, observable: Observable) -> Option<String> {
    let theory = Theory::new(a, rd).ok()?;
    match observable {
        Observable::Norms => {
            let space = build_space(&theory, 1).ok()?;
            Some(format!("{a},{},{}", space.gram[0], space.gram[1]))
        }
        Observable::Signature => {
            let space = build_space(&theory, 2).ok()?;
            let s: String = space
                .signature
                .iter()
                .take(space.computational_dim())
                .map(|&x| if x > 0 { '+' } else { '-' })
                .collect();
            let definite = s.chars().all(|c| c == '+') || s.chars().all(|c| c == '-');
            Some(format!("{a},{s},{definite}"))
        }
        Observable::Leakage => {
            let blk = nc1_block(&theory, DRealization::AlphaRotation).ok()?;
            let u1 = reichardt_step(&blk.u, &blk.d).ok()?;
            Some(format!("{a},{},{}", blk.b0, u1[(1, 0)].norm()))
        }
        Observable::Verdict => {
            let v = universality_check(rd, AlphaArg::Float(a)).ok()?;
            Some(format!("{a},{}", v.verdict))
        }
    }
}

fn print_check(name: &str, residual: f64, spec_tol: f64) -> usize {
    let tol = std::env::var("NEGLECTON_TOL")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .map(|t| t.max(1e-14))
        .unwrap_or(spec_tol);
    let pass = residual < tol;
    println!(
        "{} residual={residual:.3e} tol={tol:.1e} {}",
        name,
        if pass { "PASS" } else { "FAIL" }
    );
    usize::from(!pass)
}

fn run_suite(theory: &Theory, suite: Suite, seed: u64) -> neglecton::Result<usize> {
    use Label::{S, V};
    let mut failures = 0;
    let run_relations = |failures: &mut usize| -> neglecton::Result<()> {
        for n in 0..4 {
            let m = neglecton::module::make_simple(n, theory.rd)?;
            *failures += print_check(&format!("relations[S{n}]"), m.relation_residual(), 1e-10);
        }
        let m = theory.module(V(0));
        *failures += print_check("relations[V(alpha)]", m.relation_residual(), 1e-10);
        Ok(())
    };
    let run_pentagon = |failures: &mut usize| -> neglecton::Result<()> {
        let mut worst: f64 = 0.0;
        let mut count = 0;
        let ising = [S(1), S(2)];
        for pos in 0..4usize {
            for &x in &ising {
                for &y in &ising {
                    for &z in &ising {
                        let mut legs = vec![x, y, z];
                        legs.insert(pos, V(0));
                        for e in (-4..=4).map(V) {
                            if let Some(resid) = theory
                                .pentagon_residual(legs[0], legs[1], legs[2], legs[3], e)?
                            {
                                worst = worst.max(resid);
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
        println!("pentagon tuples checked: {count}");
        *failures += print_check("pentagon[max]", worst, 1e-8);
        Ok(())
    };
    let run_yb = |failures: &mut usize| -> neglecton::Result<()> {
        let pool = [S(0), S(1), S(2), S(3), V(0)];
        let mut worst: f64 = 0.0;
        for &a in &pool {
            for &b in &pool {
                for &c in &pool {
                    let (ma, mb, mc) = (theory.module(a), theory.module(b), theory.module(c));
                    let i1 = neglecton::linalg::CMat::identity(ma.dim);
                    let i2 = neglecton::linalg::CMat::identity(mb.dim);
                    let i3 = neglecton::linalg::CMat::identity(mc.dim);
                    let cab = neglecton::braid::braiding(&ma, &mb);
                    let cac = neglecton::braid::braiding(&ma, &mc);
                    let cbc = neglecton::braid::braiding(&mb, &mc);
                    let lhs = cbc.kron(&i1).mul(&i2.kron(&cac)).mul(&cab.kron(&i3));
                    let rhs = i3.kron(&cab).mul(&cac.kron(&i2)).mul(&i1.kron(&cbc));
                    worst = worst.max(lhs.sub(&rhs).max_norm());
                }
            }
        }
        *failures += print_check("yangbaxter[max over pool]", worst, 1e-9);
        Ok(())
    };
    let run_unitarity = |failures: &mut usize| -> neglecton::Result<()> {
        for n in [1usize, 2] {
            let space = build_space(theory, n)?;
            let desc: String = space
                .signature
                .iter()
                .map(|&s| if s > 0 { '+' } else { '-' })
                .collect();
            println!("H_{n} signature D = {desc}");
            let mut worst: f64 = 0.0;
            let j1 = j1_matrix(theory, &space)?;
            worst = worst.max(space.indefinite_unitarity_residual(&space.normalize(&j1)));
            for i in 2..=(2 * n) {
                let g = generator_matrix(theory, &space, i)?;
                worst = worst.max(space.indefinite_unitarity_residual(&space.normalize(&g)));
            }
            *failures += print_check(&format!("unitarity[H_{n}]"), worst, 1e-8);
        }
        Ok(())
    };
    let run_braidrel = |failures: &mut usize| -> neglecton::Result<()> {
        let space = build_space(theory, 2)?;
        let b2 = generator_matrix(theory, &space, 2)?;
        let b3 = generator_matrix(theory, &space, 3)?;
        let b4 = generator_matrix(theory, &space, 4)?;
        let j1 = j1_matrix(theory, &space)?;
        let r1 = b2.mul(&b3).mul(&b2).sub(&b3.mul(&b2).mul(&b3)).max_norm();
        let r2 = b3.mul(&b4).mul(&b3).sub(&b4.mul(&b3).mul(&b4)).max_norm();
        let r3 = b2.mul(&b4).sub(&b4.mul(&b2)).max_norm();
        let aff = b2.mul(&j1).mul(&b2).mul(&j1).sub(&j1.mul(&b2).mul(&j1).mul(&b2)).max_norm();
        let jm = jucys_murphy(theory, &space, 2)?;
        let jm3 = jucys_murphy(theory, &space, 3)?;
        let comm = jm.mul(&jm3).sub(&jm3.mul(&jm)).max_norm();
        *failures += print_check("braid[b2 b3 b2 = b3 b2 b3]", r1, 1e-8);
        *failures += print_check("braid[b3 b4 b3 = b4 b3 b4]", r2, 1e-8);
        *failures += print_check("braid[[b2,b4] = 0]", r3, 1e-8);
        *failures += print_check("affine[b2 J1 b2 J1 = J1 b2 J1 b2]", aff, 1e-8);
        *failures += print_check("jm[[J2,J3] = 0]", comm, 1e-9);
        Ok(())
    };
    let run_trace = |failures: &mut usize, seed: u64| -> neglecton::Result<()> {
        // seeded cyclicity check on equivariant endomorphisms of V x S1
        let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let g_ab = theory.gram_pair(V(0), S(1))?;
        let mut projectors = Vec::new();
        for c in [V(1), V(-1)] {
            let y = theory.y_symbol(V(0), S(1), c)?;
            let yd = theory.adjoint(&y.mat, &theory.gram_simple(c), &g_ab)?;
            projectors.push(y.mat.mul(&yd));
        }
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let f = projectors[0]
                .scale(num_complex::Complex64::new(next(), next()))
                .add(&projectors[1].scale(num_complex::Complex64::new(next(), next())));
            let g = projectors[0]
                .scale(num_complex::Complex64::new(next(), next()))
                .add(&projectors[1].scale(num_complex::Complex64::new(next(), next())));
            let t1 = theory.modified_trace_chain(&[V(0), S(1)], &f.mul(&g))?;
            let t2 = theory.modified_trace_chain(&[V(0), S(1)], &g.mul(&f))?;
            worst = worst.max((t1 - t2).norm());
        }
        *failures += print_check("trace[cyclicity]", worst, 1e-10);
        // tree norms against the matrix-composition oracle on H_2
        let space = build_space(theory, 2)?;
        let mut worst: f64 = 0.0;
        for tree in &space.basis {
            let v = neglecton::spaces::tree_morphism(theory, tree)?;
            let labels = [V(0), S(1), S(1), S(1), S(1)];
            let g_big = theory.gram_chain(&labels)?;
            let vd = theory.adjoint(&v, &theory.gram_simple(V(0)), &g_big)?;
            let tr = theory.modified_trace(V(0), &vd.mul(&v))?;
            let fast = {
                let legs = [S(1); 4];
                theory.tree_norm(V(0), &legs, &tree.labels())?
            };
            worst = worst.max((tr.re - fast).abs() / fast.abs().max(1.0));
        }
        *failures += print_check("trace[tree norms vs oracle]", worst, 1e-8);
        Ok(())
    };
    match suite {
        Suite::Relations => run_relations(&mut failures)?,
        Suite::Pentagon => run_pentagon(&mut failures)?,
        Suite::Yangbaxter => run_yb(&mut failures)?,
        Suite::Unitarity => run_unitarity(&mut failures)?,
        Suite::Braidrelations => run_braidrel(&mut failures)?,
        Suite::Trace => run_trace(&mut failures, seed)?,
        Suite::All => {
            run_relations(&mut failures)?;
            run_pentagon(&mut failures)?;
            run_yb(&mut failures)?;
            run_unitarity(&mut failures)?;
            run_braidrel(&mut failures)?;
            run_trace(&mut failures, seed)?;
        }
    }
    Ok(failures)
}
