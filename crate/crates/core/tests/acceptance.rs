//! End-to-end acceptance checks. Runs without the libtest harness so each
//! check prints a single PASS/FAIL line; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{codebook, gaussian_vec, max_log_info, ml_unique, rng};
use rmprod::fht::{fht_in_place, fht_ml_decode, sylvester_matrix};
use rmprod::sim::{self, OutputFormat, SimPoint};
use rmprod::soft_fht::{info_bit_llrs, soft_fht_decode, FirstOrderTables};
use rmprod::{product_decode, run_point, DecodeMode, ProductCode, RmCode, SimConfig, StoppingRule};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hard_ml_equivalence() -> Outcome {
    let mut checked = 0;
    for m in 2..=4 {
        let code = RmCode::new(m, 1).unwrap();
        let book = codebook(&code);
        let t = FirstOrderTables::new(m).unwrap();
        let mut g = rng(1_000 + m as u64);
        for frame in 0..1_000 {
            let l = gaussian_vec(&mut g, code.n(), 1.0);
            let Some(best) = ml_unique(&l, &book, 0.0) else {
                continue;
            };
            let d = fht_ml_decode(&l, &t).unwrap();
            ensure(d.codeword.as_slice() == book[best].1.as_slice(), || {
                format!("m={m} frame {frame}: codeword differs from exhaustive search")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} frames agree with exhaustive ML"))
}

fn soft_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for m in 2..=5 {
        let code = RmCode::new(m, 1).unwrap();
        let book = codebook(&code);
        let t = FirstOrderTables::new(m).unwrap();
        let mut g = rng(2_000 + m as u64);
        for frame in 0..1_000 {
            let l = gaussian_vec(&mut g, code.n(), 1.0);
            let mut wh = l.clone();
            fht_in_place(&mut wh).unwrap();
            let fast = info_bit_llrs(&wh, &t).unwrap();
            for (a, b) in fast.iter().zip(max_log_info(&l, &book)) {
                worst = worst.max((a - b).abs());
            }
            ensure(worst <= 1e-9, || {
                format!("m={m} frame {frame}: deviation {worst:e}")
            })?;
        }
    }
    Ok(format!("max deviation {worst:.2e} over 4000 frames"))
}

fn sign_accordance() -> Outcome {
    let (mut checked, mut ties) = (0, 0);
    for m in 2..=6 {
        let t = FirstOrderTables::new(m).unwrap();
        let mut g = rng(3_000 + m as u64);
        for frame in 0..10_000 {
            let l = gaussian_vec(&mut g, t.n(), 1.0);
            let out = soft_fht_decode(&l, &t).unwrap();
            if out.contains(&0.0) {
                ties += 1;
                continue;
            }
            let hard: Vec<u8> = out.iter().map(|&x| u8::from(x < 0.0)).collect();
            let ml = fht_ml_decode(&l, &t).unwrap().codeword;
            ensure(hard.as_slice() == ml.as_slice(), || {
                format!("m={m} frame {frame}: signs disagree with ML")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} frames agree ({ties} tie frames skipped)"
    ))
}

fn menu_codes() -> Vec<String> {
    let mut menu: Vec<String> = [
        "rm(3,1)xrm(2,1)",
        "rm(6,1)xrm(2,1)",
        "rm(5,1)xrm(3,1)",
        "rm(4,1)xrm(4,1)",
        "rm(12,1)xrm(2,1)",
        "rm(11,1)xrm(3,2)",
    ]
    .map(String::from)
    .to_vec();
    menu.extend((2..=11).map(|m1| format!("rm({m1},1)xrm({},1)", 13 - m1)));
    menu
}

fn structural_checks() -> Outcome {
    for m in 1..=4 {
        let code = RmCode::new(m, 1).unwrap();
        let h = sylvester_matrix(m);
        let n = code.n();
        for (j, w) in code.enumerate_codewords().unwrap().iter().enumerate() {
            let sign = if j < n { 1.0 } else { -1.0 };
            let aligned = w
                .as_slice()
                .iter()
                .zip(&h[j % n])
                .all(|(&b, &hx)| 1.0 - 2.0 * f64::from(b) == sign * hx);
            ensure(aligned, || format!("m={m}: row {j} of 1-2C is not ±H"))?;
        }
    }
    let menu = menu_codes();
    for desc in &menu {
        let code = ProductCode::parse(desc).map_err(|e| format!("{desc}: {e}"))?;
        let comps: Vec<&RmCode> = code.components().iter().map(|c| c.code()).collect();
        let products = code.n() == comps.iter().map(|c| c.n()).product::<usize>()
            && code.k() == comps.iter().map(|c| c.k()).product::<usize>()
            && code.d() == comps.iter().map(|c| c.d()).product::<usize>();
        ensure(products, || {
            format!("{desc}: parameters are not component products")
        })?;
        let (mt, rt) = code.enclosing_params();
        ensure(
            code.k() <= code.enclosing_dimension() && code.d() == 1 << (mt - rt),
            || format!("{desc}: not bounded by RM({mt},{rt})"),
        )?;
    }
    let small = ProductCode::parse("rm(3,1)xrm(2,1)").unwrap();
    let d = small.min_distance_bruteforce().unwrap();
    ensure(d == 8, || format!("min distance {d}, expected 8"))?;
    let g = small.generator_matrix().unwrap();
    ensure(
        RmCode::new(5, 2)
            .unwrap()
            .generator()
            .row_space_includes(&g),
        || "rm(3,1)xrm(2,1) is not inside RM(5,2)".into(),
    )?;
    Ok(format!(
        "alignment m<=4, {} menu codes, d=8, subcode of RM(5,2)",
        menu.len()
    ))
}

fn complexity() -> Outcome {
    for m in 4..=12 {
        let n = 1usize << m;
        let mut v = vec![0.5; n];
        let s = fht_in_place(&mut v).unwrap();
        ensure(s.add_sub == (n * m) as u64, || {
            format!("n=2^{m}: {} add/sub, expected {}", s.add_sub, n * m)
        })?;
    }
    let iterations = 3;
    let mut fit: Option<(f64, f64)> = None;
    let mut spread = (f64::MAX, 0.0f64);
    for mt in 6..=12 {
        let code = ProductCode::parse(&format!("rm({},1)xrm(2,1)", mt - 2)).unwrap();
        let y = gaussian_vec(&mut rng(mt as u64), code.n(), 1.0);
        let out = product_decode(&code, &y, 0.8, iterations, DecodeMode::Soft).unwrap();
        let nlogn = (iterations * code.n() * mt) as f64;
        let ops = out.ops.total() as f64 / nlogn;
        let depth = out.depth as f64 / (iterations * mt) as f64;
        let (c, c_depth) = *fit.get_or_insert((ops, depth));
        let (ro, rd) = (ops / c, depth / c_depth);
        spread = (spread.0.min(ro.min(rd)), spread.1.max(ro.max(rd)));
        ensure((0.75..=1.25).contains(&ro), || {
            format!("n_t=2^{mt}: ops/(I n log n) = {ops:.3}, fitted C = {c:.3}")
        })?;
        ensure((0.75..=1.25).contains(&rd), || {
            format!("n_t=2^{mt}: depth/(I log n) = {depth:.3}, fitted C' = {c_depth:.3}")
        })?;
    }
    let (c, cd) = fit.unwrap();
    Ok(format!(
        "FHT exact; C={c:.3}, C'={cd:.3}, ratios within [{:.3}, {:.3}] up to 2^12",
        spread.0, spread.1
    ))
}

fn point(desc: &str, mode: DecodeMode, iterations: usize, ebno: f64, errors: u64) -> SimPoint {
    let code = ProductCode::parse(desc).unwrap();
    let rule = StoppingRule::new(errors, 50_000_000).unwrap();
    run_point(&code, mode, iterations, ebno, rule, 2024).unwrap()
}

fn show(p: &SimPoint) -> String {
    format!("{:.4} [{:.4}, {:.4}]", p.bler, p.bler_ci_lo, p.bler_ci_hi)
}

const WATERFALL_EBNO: f64 = 2.0;

fn iteration_effect() -> Outcome {
    let code = "rm(6,1)xrm(2,1)";
    let i1 = point(code, DecodeMode::Soft, 1, WATERFALL_EBNO, 3_000);
    ensure((1e-2..=1e-1).contains(&i1.bler), || {
        format!("BLER(I=1) = {} outside the target range", show(&i1))
    })?;
    let i2 = point(code, DecodeMode::Soft, 2, WATERFALL_EBNO, 3_000);
    ensure(i2.bler < i1.bler && i2.separated_from(&i1), || {
        format!("I=1 {} vs I=2 {} not separated", show(&i1), show(&i2))
    })?;
    let i3 = point(code, DecodeMode::Soft, 3, WATERFALL_EBNO, 1_000);
    let i4 = point(code, DecodeMode::Soft, 4, WATERFALL_EBNO, 1_000);
    ensure(!i3.separated_from(&i4), || {
        format!("I=3 {} vs I=4 {} differ", show(&i3), show(&i4))
    })?;
    Ok(format!(
        "I=1 {}, I=2 {}, I=3 {}, I=4 {}",
        show(&i1),
        show(&i2),
        show(&i3),
        show(&i4)
    ))
}

fn soft_vs_hard() -> Outcome {
    let code = "rm(6,1)xrm(2,1)";
    let soft = point(code, DecodeMode::Soft, 3, WATERFALL_EBNO, 500);
    let hard = point(code, DecodeMode::Hard, 3, WATERFALL_EBNO, 500);
    ensure(soft.bler < hard.bler && soft.separated_from(&hard), || {
        format!("soft {} vs hard {}", show(&soft), show(&hard))
    })?;
    Ok(format!("soft {} < hard {}", show(&soft), show(&hard)))
}

fn component_ordering() -> Outcome {
    let ebno = 3.0;
    let codes = ["rm(6,1)xrm(2,1)", "rm(5,1)xrm(3,1)", "rm(4,1)xrm(4,1)"];
    let points: Vec<SimPoint> = codes
        .iter()
        .map(|c| point(c, DecodeMode::Soft, 3, ebno, 400))
        .collect();
    for (pair, names) in points.windows(2).zip(codes.windows(2)) {
        ensure(
            pair[0].bler < pair[1].bler && pair[0].separated_from(&pair[1]),
            || {
                format!(
                    "{} {} vs {} {}",
                    names[0],
                    show(&pair[0]),
                    names[1],
                    show(&pair[1])
                )
            },
        )?;
    }
    Ok(codes
        .iter()
        .zip(&points)
        .map(|(c, p)| format!("{c} {}", show(p)))
        .collect::<Vec<_>>()
        .join(" < "))
}

fn reproducibility() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for format in [OutputFormat::Csv, OutputFormat::Json] {
        let mut files = Vec::new();
        for workers in [1, 2, 4] {
            let config = SimConfig {
                code: "rm(5,1)xrm(2,1)".into(),
                decoder: DecodeMode::Soft,
                iterations: 3,
                ebno_db: sim::parse_ebno_grid("1:3:0.5").unwrap(),
                stopping: StoppingRule::new(50, 100_000).unwrap(),
                seed: 7,
                format,
                workers: Some(workers),
            };
            let path = dir.path().join(format!("{workers}.{format:?}"));
            let points = sim::run_sweep(&config).map_err(|e| e.to_string())?;
            sim::emit(&config, &points, Some(&path)).map_err(|e| e.to_string())?;
            files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(files.windows(2).all(|w| w[0] == w[1]), || {
            format!("{format:?} output differs across worker counts")
        })?;
    }
    Ok("csv and json identical for 1, 2 and 4 workers".into())
}

fn main() -> ExitCode {
    let checks: [Check; 9] = [
        ("hard ML equals exhaustive search", hard_ml_equivalence),
        ("soft info LLRs equal exhaustive max-log", soft_equivalence),
        ("soft output signs match ML", sign_accordance),
        ("structural properties", structural_checks),
        ("complexity and depth", complexity),
        ("iterations help, then saturate", iteration_effect),
        ("soft beats hard passing", soft_vs_hard),
        ("component ordering", component_ordering),
        ("worker-count reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        checks.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
