//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::Command;
use std::thread;
use std::time::{Duration, Instant};

use qzeta_core::arith::{int, parse_rational, rat, Poly, RatFunc, Rational};
use qzeta_core::characters::{CharacterTable, FixedT, NormalizationMode, Signature};
use qzeta_core::checks::{
    antipode_axiom, bialgebra_compatibility, birkhoff_convolution, coassociativity, renorm_morphism, rota_baxter,
    CheckOutcome, RenormCache,
};
use qzeta_core::qseries::{laurent_consistency, log_log_slope};
use qzeta_core::quasi_shuffle::Word;
use qzeta_core::renorm::renormalised_mzv_with_guard;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const DEPTH_TWO_AT_1: [[&str; 6]; 6] = [
    ["1/288", "-1/240", "121/94080", "1/504", "-31093/17740800", "-1/480"],
    ["-1/240", "0", "1/504", "-48529/66528000", "-1/480", "131679179/71922090240"],
    ["-559/282240", "1/504", "1/28800", "-1/480", "941347763/1150753443840", "1/264"],
    ["1/504", "48529/66528000", "-1/480", "0", "1/264", "-199275989809861/128121575662080000"],
    ["110879/53222400", "-1/480", "-979401779/1150753443840", "1/264", "1/127008", "-691/65520"],
    ["-1/480", "-131679179/71922090240", "1/264", "199275989809861/128121575662080000", "-691/65520", "0"],
];

/// Bernoulli numbers with `B_1 = +1/2`, by the Akiyama-Tanigawa algorithm.
fn bernoulli_oracle(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<Rational> = Vec::new();
    for m in 0..=n {
        a.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = int(j as i64) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    out
}

fn sig(args: &[i64]) -> Signature {
    Signature::from_arguments(args).unwrap()
}

fn value(args: &[i64], guard: i64) -> Result<RatFunc, String> {
    renormalised_mzv_with_guard(&sig(args), NormalizationMode::LogQ, guard).map(|r| r.value).map_err(|e| e.to_string())
}

fn run_cli(args: &[&str]) -> Result<(String, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qzeta")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("qzeta {args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok((String::from_utf8(out.stdout).map_err(|e| e.to_string())?, start.elapsed()))
}

fn parse_csv_table(text: &str) -> Result<Vec<Vec<Rational>>, String> {
    text.lines()
        .skip(1)
        .map(|line| line.split(',').skip(1).map(|c| parse_rational(c).map_err(|e| e.to_string())).collect())
        .collect()
}

fn table_via_cli(guard: i64) -> Result<(Vec<Vec<Rational>>, Duration), String> {
    let g = guard.to_string();
    let (text, elapsed) = run_cli(&["table", "--max", "6", "--t", "1", "--format", "csv", "--guard", &g])?;
    Ok((parse_csv_table(&text)?, elapsed))
}

fn criterion_1() -> Outcome {
    let (table, elapsed) = table_via_cli(2)?;
    let mut matched = 0;
    for (i, row) in DEPTH_TWO_AT_1.iter().enumerate() {
        for (j, expected) in row.iter().enumerate() {
            let expected = parse_rational(expected).unwrap();
            let got = table.get(i).and_then(|r| r.get(j)).ok_or("table too small")?;
            if *got != expected {
                return Err(format!("entry (-{},-{}) is {got}, expected {expected}", i + 1, j + 1));
            }
            matched += 1;
        }
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("table took {elapsed:?}"));
    }
    Ok(format!("{matched}/36 entries exact, {:.1}s", elapsed.as_secs_f64()))
}

fn expect_coeffs(
    table: &mut CharacterTable<FixedT>,
    w: &[i32],
    expected: &[(i64, Rational)],
    through: i64,
) -> Result<(), String> {
    let series = table.psi(&Word::from_indices(w).unwrap()).map_err(|e| e.to_string())?;
    for d in series.lo().min(-12)..=through {
        let want = expected.iter().find(|(e, _)| *e == d).map_or_else(|| int(0), |(_, c)| c.clone());
        let got = series.coeff(d).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("psi({w:?}) at z^{d}: {got} != {want}"));
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let mut table = CharacterTable::new(FixedT(int(1)), NormalizationMode::LogQ, 8);
    expect_coeffs(&mut table, &[-1], &[(-2, rat(1, 2)), (0, rat(-1, 12)), (2, rat(7, 720)), (4, rat(-31, 30240))], 4)?;
    expect_coeffs(&mut table, &[-3], &[(-4, rat(1, 60)), (0, rat(1, 120)), (2, rat(-41, 1008)), (4, rat(2203, 28800))], 4)?;
    expect_coeffs(
        &mut table,
        &[-1, -3],
        &[(-6, rat(3, 560)), (-5, rat(1, 560)), (-2, rat(47, 11200)), (0, rat(-5377, 282240)), (1, rat(1, 84))],
        1,
    )?;
    let y1 = Word::from_indices(&[-1]).unwrap();
    let y13 = Word::from_indices(&[-1, -3]).unwrap();
    let minus = table.minus(&y1).map_err(|e| e.to_string())?;
    let pole: Vec<(i64, Rational)> = minus.terms().map(|(d, c)| (d, c.clone())).collect();
    if pole != vec![(-2, rat(-1, 2))] || !minus.is_exact() {
        return Err(format!("psi_minus(y_-1) = {minus}"));
    }
    let plus = table.plus(&y13).map_err(|e| e.to_string())?;
    let c0 = plus.coeff(0).map_err(|e| e.to_string())?;
    let c1 = plus.coeff(1).map_err(|e| e.to_string())?;
    if c0 != rat(121, 94080) || c1 != rat(1, 84) {
        return Err(format!("psi_plus(y_-1 y_-3) = {c0} + {c1} z + ..."));
    }
    Ok("psi coefficients, psi_minus(y_-1) = -1/2 z^-2, constant 121/94080".into())
}

/// `c (a_0 + a_1 t + a_2 t^2) / ((4t+3)(4t+1))`
fn quadratic_over_linear_pair(c: Rational, num: &[i64]) -> RatFunc {
    let n = RatFunc::from_poly(Poly::from_ints(num)).scale(&c);
    let d = RatFunc::from_poly(&Poly::from_ints(&[3, 4]) * &Poly::from_ints(&[1, 4]));
    &n * &d.recip()
}

fn criterion_3(guard: i64) -> Result<(RatFunc, RatFunc), String> {
    let a = value(&[-1, -3], guard)?;
    let b = value(&[-3, -1], guard)?;
    let want_a = quadratic_over_linear_pair(rat(1, 8064), &[31, 166, 166]);
    let want_b = quadratic_over_linear_pair(rat(-1, 40320), &[239, 1278, 1278]);
    if a != want_a {
        return Err(format!("zeta(-1,-3) = {a}, expected {want_a}"));
    }
    if b != want_b {
        return Err(format!("zeta(-3,-1) = {b}, expected {want_b}"));
    }
    let sum = &a + &b;
    if sum != RatFunc::constant(rat(-1, 1440)) {
        return Err(format!("sum is {sum}"));
    }
    // product relation with the depth-one values
    let rel = &(&value(&[-1], guard)? * &value(&[-3], guard)?) - &value(&[-4], guard)?;
    if rel != sum {
        return Err(format!("zeta(-1)zeta(-3) - zeta(-4) = {rel}"));
    }
    if a.as_constant().is_some() {
        return Err("zeta(-1,-3) does not depend on t".into());
    }
    Ok((a, b))
}

fn criterion_4(guard: i64) -> Result<Vec<RatFunc>, String> {
    let b = bernoulli_oracle(14);
    (1..=12)
        .map(|k| {
            let v = value(&[-k], guard)?;
            let want = -(&b[k as usize + 1]) / int(k + 1);
            if v != RatFunc::constant(want.clone()) {
                return Err(format!("zeta(-{k}) = {v}, expected {want}"));
            }
            Ok(v)
        })
        .collect()
}

fn criterion_5(guard: i64) -> Result<Vec<RatFunc>, String> {
    let b = bernoulli_oracle(13);
    let mut out = Vec::new();
    for w in (3..=11).step_by(2) {
        for k1 in 1..w {
            let k2 = w - k1;
            let v = value(&[-k1, -k2], guard)?;
            let want = &b[w as usize + 1] / int(2 * (w + 1));
            if v != RatFunc::constant(want.clone()) {
                return Err(format!("zeta(-{k1},-{k2}) = {v}, expected {want}"));
            }
            out.push(v);
        }
    }
    Ok(out)
}

fn suite_summary(outcomes: &[CheckOutcome]) -> Outcome {
    let mut lines = Vec::new();
    for o in outcomes {
        if !o.passed() {
            return Err(o.to_string());
        }
        lines.push(format!("{} ({} cases)", o.name, o.cases));
    }
    Ok(lines.join("; "))
}

fn criterion_6() -> Outcome {
    // every pair up to weight 10 with total depth <= 3, plus deeper tiers at lower weight
    let tiers = [(10u32, 3usize), (8, 4), (6, 6)];
    let outcomes: Vec<CheckOutcome> = thread::scope(|s| {
        let handles: Vec<_> = tiers
            .iter()
            .map(|&(w, d)| s.spawn(move || renorm_morphism(&mut RenormCache::new(w, d, 2), w, d)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    suite_summary(&outcomes)
}

fn criterion_7() -> Outcome {
    let outcomes: Vec<CheckOutcome> = thread::scope(|s| {
        let conv = s.spawn(|| birkhoff_convolution(8, 3));
        let conv_deep = s.spawn(|| birkhoff_convolution(6, 6));
        vec![
            coassociativity(6, 6),
            bialgebra_compatibility(6, 6),
            antipode_axiom(6, 6),
            rota_baxter(200),
            conv.join().unwrap(),
            conv_deep.join().unwrap(),
        ]
    });
    suite_summary(&outcomes)
}

fn criterion_8() -> Outcome {
    let v = renormalised_mzv_with_guard(&sig(&[-1]), NormalizationMode::OneMinusQ, 2).map_err(|e| e.to_string())?.value;
    let want = RatFunc::new(Poly::from_ints(&[1, -1, -1]), Poly::from_ints(&[0, 12, 12]));
    if v != want {
        return Err(format!("1mq zeta(-1) = {v}, expected {want}"));
    }
    if v == RatFunc::constant(rat(-1, 12)) {
        return Err("1mq value coincides with -1/12".into());
    }
    Ok(format!("1mq zeta(-1) = {v}"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let zs = [rat(-1, 5), rat(-1, 10), rat(-1, 20)];
    let mut report = Vec::new();
    for args in [&[-1i64][..], &[-2], &[-1, -3]] {
        let s = sig(args);
        let order = s.weight() as i64 + s.depth() as i64 + 4;
        let mut points = Vec::new();
        let mut predicted = 0;
        for z in &zs {
            let c = laurent_consistency(&s, &int(1), z, order, 30).map_err(|e| e.to_string())?;
            predicted = c.predicted_slope;
            let zf = -(*z.numer().to_string().parse::<f64>().as_ref().unwrap()) / z.denom().to_string().parse::<f64>().unwrap();
            points.push((zf, c.relative_error.to_f64()));
        }
        let slope = log_log_slope(&points);
        if points.windows(2).any(|p| p[1].1 >= p[0].1) || (slope - predicted as f64).abs() > 0.5 {
            return Err(format!("{s}: errors {points:?}, slope {slope:.3}, predicted {predicted}"));
        }
        let close = laurent_consistency(&s, &int(1), &rat(-1, 100), order, 30).map_err(|e| e.to_string())?;
        let rel = close.relative_error.to_f64();
        if rel >= 1e-6 {
            return Err(format!("{s}: relative error {rel:e} at z = -0.01"));
        }
        report.push(format!("({s}) slope {slope:.2} vs {predicted}, {rel:.1e} at z=-0.01"));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(report.join("; "))
}

fn criterion_10() -> Outcome {
    let (t2, _) = table_via_cli(2)?;
    let (t5, _) = table_via_cli(5)?;
    if t2 != t5 {
        return Err("table differs between guards 2 and 5".into());
    }
    let mut g5 = CharacterTable::new(FixedT(int(1)), NormalizationMode::LogQ, 13);
    let c = qzeta_core::renorm::renormalised_value_in(&mut g5, &sig(&[-1, -3])).map_err(|e| e.to_string())?;
    if c != rat(121, 94080) {
        return Err(format!("worked example at guard 5 gives {c}"));
    }
    if criterion_3(2)? != criterion_3(5)? {
        return Err("symbolic values differ".into());
    }
    if criterion_4(2)? != criterion_4(5)? || criterion_5(2)? != criterion_5(5)? {
        return Err("oracle values differ".into());
    }
    Ok("criteria 1-5 identical at guard 2 and guard 5".into())
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<Criterion> = vec![
        ("depth-two table at t = 1", criterion_1),
        ("worked example for (-1,-3)", criterion_2),
        ("symbolic values for (-1,-3) and (-3,-1)", || criterion_3(2).map(|(a, b)| format!("{a}; {b}"))),
        ("depth-one values", || criterion_4(2).map(|v| format!("{} values", v.len()))),
        ("depth-two odd weight values", || criterion_5(2).map(|v| format!("{} values", v.len()))),
        ("quasi-shuffle morphism", criterion_6),
        ("Hopf and Birkhoff structure", criterion_7),
        ("1-q normalisation control", criterion_8),
        ("numeric consistency", criterion_9),
        ("guard independence", criterion_10),
    ];
    // the numeric and small criteria run next to the long suites
    let results: Vec<(Outcome, Duration)> = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    (f(), t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| (Err("panicked".into()), Duration::ZERO))).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (outcome, elapsed))) in criteria.iter().zip(&results).enumerate() {
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass ({:.1}s)", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
