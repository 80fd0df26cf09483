//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ascentlab::constructions::{build_3by5, build_boolean_pw4, expand_landscape, f_max};
use ascentlab::verification::faults::{bump_weight, tamper_decomposition, Tamper};
use ascentlab::verification::{
    brute_force_check_prop11, check_boolean_equivalence, check_boolean_master, check_engine_oracle,
    check_padding_equations, check_padding_on, check_pathwidth, check_pathwidth_on,
    check_rank1_impossibility, check_theorem8, rank1_sum, CheckReport, Rank1Outcome,
};
use ascentlab::{build_2by3, Assignment, Engine, NO_LIMIT};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn report(r: CheckReport) -> Outcome {
    let summary = format!("{} cases", r.cases);
    if r.passed() {
        Ok(summary)
    } else {
        Err(serde_json::to_string(&r.counterexample).unwrap_or_default())
    }
}

fn within(limit: Duration, start: Instant, out: Outcome) -> Outcome {
    let took = start.elapsed();
    let out = out?;
    if took < limit {
        Ok(format!(
            "{out}, {:.3}s < {}s",
            took.as_secs_f64(),
            limit.as_secs()
        ))
    } else {
        Err(format!(
            "{out}, took {:.3}s, limit {}s",
            took.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

fn ordered_length() -> Outcome {
    let t = Instant::now();
    let spots = [(2, 5), (3, 10), (4, 22)];
    for (n, want) in spots {
        let got = f_max(n).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("f_max({n}) = {got}, expected {want}"));
        }
    }
    within(
        Duration::from_secs(5),
        t,
        report(brute_force_check_prop11(20)),
    )
}

fn exponential_scaling() -> Outcome {
    let t = Instant::now();
    let n = 40;
    let want: i128 = 3 * (1 << 22) - 152;
    let inst = build_2by3(n).map_err(|e| e.to_string())?;
    let out = Engine::Ordered((0..n).collect())
        .run(&inst, &Assignment::uniform(n, 0), NO_LIMIT, &mut ())
        .map_err(|e| e.to_string())?;
    let fmax = f_max(n).map_err(|e| e.to_string())?;
    let res =
        if out.steps as i128 == want && fmax == want && out.terminal && out.final_fitness == want {
            Ok(format!("{} steps", out.steps))
        } else {
            Err(format!(
                "{} steps, f_max {fmax}, expected {want}",
                out.steps
            ))
        };
    within(Duration::from_secs(60), t, res)
}

fn rank1() -> Outcome {
    let nonadditive = vec![vec![0, 1, 2], vec![2, 1, 0], vec![0, 1, 2]];
    match check_rank1_impossibility(&nonadditive).map_err(|e| e.to_string())? {
        Rank1Outcome::Infeasible {
            diagonal: (0, 1),
            anti_diagonal: (1, 2),
            ..
        } => {}
        other => return Err(format!("non-additive matrix: {other:?}")),
    }
    let controls = [
        rank1_sum(&[0, 1, 2], &[0, 0, 0]),
        rank1_sum(&[0, 3, 7], &[1, -2, 5]),
        rank1_sum(&[0, 0], &[0, 10, 20, 30]),
    ];
    for m in &controls {
        match check_rank1_impossibility(m).map_err(|e| e.to_string())? {
            Rank1Outcome::Feasible { column, row } if &rank1_sum(&column, &row) == m => {}
            other => return Err(format!("control {m:?}: {other:?}")),
        }
    }
    Ok("infeasible at 0+1 != 1+2; 3 additive controls feasible".into())
}

fn fault_injection() -> Outcome {
    let n = 4;
    let mut detected = 0;
    let inst = build_3by5(n).map_err(|e| e.to_string())?;
    let land = expand_landscape(
        &build_2by3(n).map_err(|e| e.to_string())?,
        &(0..n).collect::<Vec<_>>(),
    )
    .map_err(|e| e.to_string())?;
    check_padding_on(&inst, &land).map_err(|c| format!("unperturbed 3by5 fails: {}", c.detail))?;
    for c in inst
        .constraints
        .iter()
        .filter(|c| c.label.starts_with("Uhat") || c.label.starts_with("Vhat"))
    {
        let bad = bump_weight(&inst, &c.label, 1).map_err(|e| e.to_string())?;
        match check_padding_on(&bad, &land) {
            Err(cx) if cx.assignment.is_some() => detected += 1,
            _ => return Err(format!("bump of {} undetected", c.label)),
        }
    }

    let p = build_boolean_pw4(n).map_err(|e| e.to_string())?;
    check_boolean_master(&p.instance, &p.codec)
        .map_err(|c| format!("unperturbed bool-pw4 fails: {}", c.detail))?;
    for c in p
        .instance
        .constraints
        .iter()
        .filter(|c| c.label.starts_with("U~") || c.label.starts_with("V~"))
    {
        let bad = bump_weight(&p.instance, &c.label, 1).map_err(|e| e.to_string())?;
        match check_boolean_master(&bad, &p.codec) {
            Err(cx) if cx.assignment.is_some() => detected += 1,
            _ => return Err(format!("bump of {} undetected", c.label)),
        }
    }

    check_pathwidth_on(&p.instance, &p.decomposition).map_err(|c| c.detail)?;
    for bag in 0..p.decomposition.bags.len() {
        let d = tamper_decomposition(&p.decomposition, Tamper::DropLast { bag });
        if check_pathwidth_on(&p.instance, &d).is_ok() {
            return Err(format!("tampered bag {bag} undetected"));
        }
        detected += 1;
    }
    Ok(format!("{detected} perturbations detected"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "ordered-ascent length equals f_max for n in 2..=20",
            ordered_length,
        ),
        (
            "ordered-ascent length 12582760 at n=40",
            exponential_scaling,
        ),
        (
            "3by5 steepest ascent simulates the ordered ascent for n in 2..=14",
            || report(check_theorem8(14, 10)),
        ),
        (
            "padding equations over all 3by5 assignments for n <= 6",
            || report(check_padding_equations(6)),
        ),
        (
            "bool-pw4 ascent replays the simulation for n in 2..=12",
            || report(check_boolean_equivalence(4, 12)),
        ),
        ("bool-pw4 arity 5 and pathwidth 4 for n <= 200", || {
            let t = Instant::now();
            within(Duration::from_secs(5), t, report(check_pathwidth(200)))
        }),
        ("rank-1 split impossible for the non-additive matrix", rank1),
        ("delta engine matches the exhaustive oracle", || {
            report(check_engine_oracle(4, 10))
        }),
        ("fault injection is detected", fault_injection),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
