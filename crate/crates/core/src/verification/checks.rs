#![allow(clippy::result_large_err)]

use std::collections::HashSet;

use serde::Serialize;

use super::oracle::exhaustive_steepest_oracle;
use super::rank1::{check_rank1_impossibility, rank1_sum, Rank1Outcome};
use super::report::{timed, CheckReport, Counterexample};
use crate::ascent::{
    ordered_ascent, steepest_ascent, verify_steepest, Engine, StepRecord, NO_LIMIT,
};
use crate::constructions::tables::{DUAL_COLUMN, DUAL_ROW, P, P_DUAL, P_NONADDITIVE};
use crate::constructions::{
    build_2by3, build_3by5, build_boolean_pw4, build_family, expand_landscape, f_max,
    master_invariant, simulate_ascent, BooleanCodec, ExpandedLandscape, Family,
};
use crate::error::Error;
use crate::model::{
    check_path_decomposition, Assignment, PathDecomposition, Value, VarId, VcspInstance,
};

/// Largest `n` each check runs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub prop11: usize,
    pub theorem8: usize,
    /// 3by5 steepest traces are also re-verified neighbor by neighbor up to here.
    pub steepest_reverify: usize,
    pub padding: usize,
    pub boolean_exhaustive: usize,
    pub boolean_trace: usize,
    pub pathwidth: usize,
    pub oracle_exhaustive: usize,
    pub oracle_canonical: usize,
}

impl Default for Caps {
    /// Exhaustive checks stop at the largest `n` with fewer than 10^6 assignments.
    fn default() -> Self {
        Caps {
            prop11: 20,
            theorem8: 14,
            steepest_reverify: 10,
            padding: 10,
            boolean_exhaustive: 7,
            boolean_trace: 12,
            pathwidth: 200,
            oracle_exhaustive: 4,
            oracle_canonical: 10,
        }
    }
}

impl Caps {
    /// Every cap set to `n` (the pathwidth cap is never lowered below it).
    pub fn uniform(n: usize) -> Self {
        Caps {
            prop11: n,
            theorem8: n,
            steepest_reverify: n,
            padding: n,
            boolean_exhaustive: n,
            boolean_trace: n,
            pathwidth: n,
            oracle_exhaustive: n,
            oracle_canonical: n,
        }
    }
}

pub const CHECK_NAMES: [&str; 7] = [
    "prop11",
    "theorem8",
    "padding",
    "boolean",
    "pathwidth",
    "rank1",
    "oracle",
];

fn identity(n: usize) -> Vec<VarId> {
    (0..n).collect()
}

fn landscape(n: usize) -> Result<ExpandedLandscape, Counterexample> {
    let base = build_2by3(n).map_err(|e| Counterexample::from_error("2by3", n, e))?;
    expand_landscape(&base, &identity(n)).map_err(|e| Counterexample::from_error("2by3", n, e))
}

fn err(family: &str, n: usize) -> impl Fn(Error) -> Counterexample + '_ {
    move |e| Counterexample::from_error(family, n, e)
}

/// The exact ordered-ascent length grows as `len(2h+2) = 2 len(2h) + 7h + 5`
/// and `len(2h+3) = 2 len(2h+1) + 7h + 8`.
pub fn doubling_increment(n: usize) -> Value {
    let h = (n / 2) as Value;
    if n % 2 == 0 {
        7 * h + 5
    } else {
        7 * h + 8
    }
}

/// Ordered ascent on the 2-by-3 path from `A^n`: `f_max(n)` steps, each a +1 gain,
/// never ambiguous; plus the brute-force maximum for `n <= 6` and the doubling law.
#[allow(clippy::needless_range_loop)]
pub fn brute_force_check_prop11(n_max: usize) -> CheckReport {
    timed("prop11", "2by3", n_max, |tally| {
        let mut lengths: Vec<Option<u64>> = vec![None; n_max + 1];
        for n in 2..=n_max {
            let inst = build_2by3(n).map_err(err("2by3", n))?;
            let expected = f_max(n).map_err(err("2by3", n))?;
            let mut first_bad: Option<Counterexample> = None;
            let mut prev = 0;
            let mut t = 0usize;
            let mut sink = |s: StepRecord, ambiguous: bool| {
                if first_bad.is_none() {
                    let gain = s.fitness_after - prev;
                    if gain != 1 {
                        first_bad = Some(
                            Counterexample::new("2by3", n, "ordered step gain is not +1")
                                .at_step(t)
                                .values(1, gain),
                        );
                    } else if ambiguous {
                        first_bad = Some(
                            Counterexample::new(
                                "2by3",
                                n,
                                "more than one improving state at the chosen variable",
                            )
                            .at_step(t),
                        );
                    }
                }
                prev = s.fitness_after;
                t += 1;
            };
            let out = Engine::Ordered(identity(n))
                .run(&inst, &Assignment::uniform(n, 0), NO_LIMIT, &mut sink)
                .map_err(err("2by3", n))?;
            if let Some(c) = first_bad {
                return Err(c);
            }
            if out.steps as Value != expected {
                return Err(Counterexample::new(
                    "2by3",
                    n,
                    "ordered ascent length differs from f_max(n)",
                )
                .values(expected, out.steps as Value));
            }
            if !out.terminal || out.final_fitness != expected {
                return Err(Counterexample::new(
                    "2by3",
                    n,
                    "ordered ascent does not end at f_max(n)",
                )
                .assignment(out.final_assignment.as_slice())
                .values(expected, out.final_fitness));
            }
            tally.cases += out.steps;
            lengths[n] = Some(out.steps);

            if n <= 6 {
                let (mut lo, mut hi) = (Value::MAX, Value::MIN);
                for x in inst.assignments() {
                    let f = inst.evaluate_fitness(&x).map_err(err("2by3", n))?;
                    if f < 0 || f > expected {
                        return Err(Counterexample::new(
                            "2by3",
                            n,
                            "fitness outside [0, f_max(n)]",
                        )
                        .assignment(x.as_slice())
                        .values(expected, f));
                    }
                    lo = lo.min(f);
                    hi = hi.max(f);
                }
                if hi != expected || lo != 0 {
                    return Err(Counterexample::new(
                        "2by3",
                        n,
                        "brute-force maximum differs from f_max(n)",
                    )
                    .values(expected, hi));
                }
            }
        }
        for n in 2..=n_max.saturating_sub(2) {
            if let (Some(a), Some(b)) = (lengths[n], lengths[n + 2]) {
                let want = 2 * a as Value + doubling_increment(n);
                if b as Value != want {
                    return Err(Counterexample::new("2by3", n + 2, "doubling law fails")
                        .values(want, b as Value));
                }
            }
        }
        if n_max >= 4 {
            tally.notes.push(
                "doubling law checked as len(2h+2) = 2 len(2h) + 7h + 5 and len(2h+3) = 2 len(2h+1) + 7h + 8".into(),
            );
        }
        Ok(())
    })
}

fn first_divergence(
    family: &str,
    n: usize,
    got: &crate::ascent::AscentTrace,
    want: &crate::ascent::AscentTrace,
) -> Counterexample {
    let t = got
        .steps
        .iter()
        .zip(&want.steps)
        .position(|(a, b)| a != b)
        .unwrap_or(got.len().min(want.len()));
    let before = want.states().swap_remove(t.min(want.len()));
    let expected = want
        .steps
        .get(t)
        .map_or(want.final_fitness(), |s| s.fitness_after);
    let actual = got
        .steps
        .get(t)
        .map_or(got.final_fitness(), |s| s.fitness_after);
    Counterexample::new(family, n, "traces diverge")
        .at_step(t)
        .assignment(before.as_slice())
        .values(expected, actual)
}

/// Steepest ascent on the padded instance equals the simulated ordered ascent.
pub fn check_theorem8(n_max: usize, reverify_max: usize) -> CheckReport {
    timed("theorem8", "3by5", n_max, |tally| {
        for n in 2..=n_max {
            let land = landscape(n)?;
            let p = ordered_ascent(
                land.base(),
                &Assignment::uniform(n, 0),
                &identity(n),
                NO_LIMIT,
            )
            .map_err(err("2by3", n))?;
            let ph = simulate_ascent(&p, &land).map_err(err("3by5", n))?;
            let inst = build_3by5(n).map_err(err("3by5", n))?;
            let t = steepest_ascent(&inst, &Assignment::uniform(n, 0), NO_LIMIT)
                .map_err(err("3by5", n))?;
            if !t.same_path(&ph) || t.terminal != ph.terminal {
                return Err(first_divergence("3by5", n, &t, &ph));
            }
            let want = 2 * f_max(n).map_err(err("3by5", n))?;
            if t.len() as Value != want {
                return Err(Counterexample::new(
                    "3by5",
                    n,
                    "steepest ascent length differs from 2 f_max(n)",
                )
                .values(want, t.len() as Value));
            }
            if let Some(&s) = t.tie_steps.first() {
                return Err(
                    Counterexample::new("3by5", n, "argmax tie in the steepest ascent")
                        .at_step(s)
                        .assignment(t.states()[s].as_slice()),
                );
            }
            if n <= reverify_max {
                verify_steepest(&inst, &t).map_err(|v| {
                    let mut c = Counterexample::new("3by5", n, v.to_string()).at_step(v.step);
                    if let Some((k, s)) = v.witness {
                        c = c.assignment(t.states()[v.step].with(k, s).as_slice());
                    }
                    c
                })?;
            }
            tally.cases += t.len() as u64;
        }
        tally.notes.push(format!(
            "neighborhoods re-verified from scratch for n <= {}",
            reverify_max.min(n_max)
        ));
        Ok(())
    })
}

/// Exhaustively compares an instance over expanded domains with `f̂`:
/// equality with at most one intermediate, the bound with exactly two.
pub fn check_padding_on(
    inst: &VcspInstance,
    land: &ExpandedLandscape,
) -> Result<u64, Counterexample> {
    let (family, n) = (inst.meta.family.as_str(), inst.meta.n);
    let mut count = 0;
    for x in inst.assignments() {
        count += 1;
        let actual = inst.evaluate_fitness(&x).map_err(err(family, n))?;
        let inter = land.map().intermediates_in(&x).len();
        let fail = |what: &str, expected| {
            Counterexample::new(family, n, what.to_string())
                .assignment(x.as_slice())
                .values(expected, actual)
        };
        match inter {
            0 | 1 => {
                let expected = land.fitness(&x).map_err(err(family, n))?;
                if actual != expected {
                    let what = if inter == 0 {
                        "main-only equality"
                    } else {
                        "single-intermediate equality"
                    };
                    return Err(fail(what, expected));
                }
            }
            2 => {
                let bound = land.eq4_bound(&x).map_err(err(family, n))?.unwrap();
                if actual > bound {
                    return Err(fail("two-intermediate bound", bound));
                }
            }
            _ => {}
        }
    }
    Ok(count)
}

pub fn check_padding_equations(n_max: usize) -> CheckReport {
    timed("padding", "3by5", n_max, |tally| {
        for n in 2..=n_max {
            let land = landscape(n)?;
            let inst = build_3by5(n).map_err(err("3by5", n))?;
            tally.cases += check_padding_on(&inst, &land)?;
        }
        Ok(())
    })
}

/// Parts (a) and (c): the exhaustive comparison of an encoded instance with `f̂`.
pub fn check_boolean_master(
    inst: &VcspInstance,
    codec: &BooleanCodec,
) -> Result<u64, Counterexample> {
    let (family, n) = (inst.meta.family.clone(), inst.meta.n);
    let land = landscape(n)?;
    master_invariant(inst, codec, &land).map_err(|m| {
        Counterexample::new(&family, n, m.rule)
            .assignment(m.bits.as_slice())
            .decoded(m.expanded.as_slice())
            .values(m.expected, m.actual)
    })
}

/// Part (b): the decoded Boolean steepest ascent replays the simulated trace.
/// Returns the trace length and the number of tie steps, all of which must
/// be between encodings of the same expanded state.
pub fn check_boolean_trace(n: usize) -> Result<(u64, u64), Counterexample> {
    let fam = "bool-pw4";
    let p = build_boolean_pw4(n).map_err(err(fam, n))?;
    let land = landscape(n)?;
    let base_p = ordered_ascent(
        land.base(),
        &Assignment::uniform(n, 0),
        &identity(n),
        NO_LIMIT,
    )
    .map_err(err("2by3", n))?;
    let ph = simulate_ascent(&base_p, &land).map_err(err("3by5", n))?;
    let t = steepest_ascent(&p.instance, &p.start, NO_LIMIT).map_err(err(fam, n))?;
    let want = 2 * f_max(n).map_err(err(fam, n))?;
    if t.len() as Value != want || !t.terminal {
        return Err(Counterexample::new(
            fam,
            n,
            "Boolean steepest ascent length differs from 2 f_max(n)",
        )
        .values(want, t.len() as Value));
    }
    let states = t.states();
    for (s, (bits, xh)) in states.iter().zip(ph.states()).enumerate() {
        let decoded = p.codec.decode_states(bits).map_err(err(fam, n))?;
        if decoded.as_ref() != Some(&xh) {
            let mut c =
                Counterexample::new(fam, n, "decoded state differs from the simulated trace")
                    .at_step(s)
                    .assignment(bits.as_slice());
            if let Some(d) = decoded {
                c = c.decoded(d.as_slice());
            }
            return Err(c);
        }
    }
    for &s in &t.tie_steps {
        let x = &states[s];
        let best = t.steps[s].fitness_after;
        let mut decodings = HashSet::new();
        for (k, v) in p.instance.neighbors(x).map_err(err(fam, n))? {
            let y = x.with(k, v);
            if p.instance.evaluate_fitness(&y).map_err(err(fam, n))? == best {
                decodings.insert(p.codec.decode_states(&y).map_err(err(fam, n))?);
            }
        }
        if decodings.len() > 1 {
            return Err(Counterexample::new(
                fam,
                n,
                "tie between neighbors that decode to different states",
            )
            .at_step(s)
            .assignment(x.as_slice()));
        }
    }
    Ok((t.len() as u64, t.tie_steps.len() as u64))
}

pub fn check_boolean_equivalence(n_exhaustive: usize, n_trace: usize) -> CheckReport {
    let n_max = n_exhaustive.max(n_trace);
    timed("boolean", "bool-pw4", n_max, |tally| {
        for n in 2..=n_exhaustive {
            let p = build_boolean_pw4(n).map_err(err("bool-pw4", n))?;
            tally.cases += check_boolean_master(&p.instance, &p.codec)?;
        }
        let mut ties = 0;
        for n in 2..=n_trace {
            let (steps, t) = check_boolean_trace(n)?;
            tally.cases += steps;
            ties += t;
        }
        tally.notes.push(format!(
            "exhaustive for n <= {n_exhaustive}, traces for n <= {n_trace}; {ties} tie steps, all between dual codes of one state"
        ));
        Ok(())
    })
}

/// Rank-1 split of the dual-code matrices is possible, of the printed
/// non-additive matrix and of `P` itself is not.
pub fn check_rank1_report() -> CheckReport {
    timed("rank1", "tables", 0, |tally| {
        let as_vecs = |m: &[[Value; 3]; 3]| m.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
        for (name, m) in [
            ("non-additive matrix", as_vecs(&P_NONADDITIVE)),
            ("P", as_vecs(&P)),
        ] {
            tally.cases += 1;
            match check_rank1_impossibility(&m).map_err(err("tables", 0))? {
                Rank1Outcome::Infeasible {
                    rows,
                    cols,
                    diagonal,
                    anti_diagonal,
                } => tally.notes.push(format!(
                    "{name}: infeasible, rows {:?} cols {:?}: {} + {} != {} + {}",
                    (rows.0 + 1, rows.1 + 1),
                    (cols.0 + 1, cols.1 + 1),
                    diagonal.0,
                    diagonal.1,
                    anti_diagonal.0,
                    anti_diagonal.1
                )),
                Rank1Outcome::Feasible { .. } => {
                    return Err(Counterexample::new(
                        "tables",
                        0,
                        format!("{name} reported additive"),
                    ))
                }
            }
        }
        let controls = [
            ("dual 00", as_vecs(&P_DUAL[0])),
            ("dual 11", as_vecs(&P_DUAL[1])),
            ("[[0,1],[1,2]]", vec![vec![0, 1], vec![1, 2]]),
            ("zero", vec![vec![0; 3]; 3]),
        ];
        for (name, m) in controls {
            tally.cases += 1;
            match check_rank1_impossibility(&m).map_err(err("tables", 0))? {
                Rank1Outcome::Feasible { column, row } if rank1_sum(&column, &row) == m => tally
                    .notes
                    .push(format!("{name}: feasible, column {column:?} row {row:?}")),
                _ => {
                    return Err(Counterexample::new(
                        "tables",
                        0,
                        format!("{name} should be additive"),
                    ))
                }
            }
        }
        for s in 0..2 {
            let m = rank1_sum(&DUAL_COLUMN[s], &DUAL_ROW[s]);
            if m != as_vecs(&P_DUAL[s]) {
                return Err(Counterexample::new(
                    "tables",
                    0,
                    "printed split does not reproduce the dual matrix",
                ));
            }
        }
        Ok(())
    })
}

pub fn check_pathwidth_on(
    inst: &VcspInstance,
    d: &PathDecomposition,
) -> Result<(), Counterexample> {
    let (family, n) = (inst.meta.family.as_str(), inst.meta.n);
    match check_path_decomposition(inst, d) {
        Ok(4) => {}
        Ok(w) => {
            return Err(
                Counterexample::new(family, n, "decomposition width is not 4")
                    .values(4, w as Value),
            )
        }
        Err(v) => return Err(Counterexample::new(family, n, v.to_string())),
    }
    let arity = inst.max_arity();
    if arity != 5 {
        return Err(
            Counterexample::new(family, n, "maximum arity is not 5").values(5, arity as Value)
        );
    }
    Ok(())
}

pub fn check_pathwidth(n_max: usize) -> CheckReport {
    timed("pathwidth", "bool-pw4", n_max, |tally| {
        for n in 2..=n_max {
            let p = build_boolean_pw4(n).map_err(err("bool-pw4", n))?;
            check_pathwidth_on(&p.instance, &p.decomposition)?;
            tally.cases += 1;
        }
        Ok(())
    })
}

/// The delta-evaluated engine against the from-scratch oracle: every start
/// for small `n`, canonical starts up to `canonical_max`.
pub fn check_engine_oracle(exhaustive_max: usize, canonical_max: usize) -> CheckReport {
    timed(
        "oracle",
        "all",
        exhaustive_max.max(canonical_max),
        |tally| {
            for family in Family::ALL {
                let fam = family.name();
                for n in 2..=exhaustive_max.max(canonical_max) {
                    let b = build_family(family, n, Default::default()).map_err(err(fam, n))?;
                    let starts: Box<dyn Iterator<Item = Assignment>> = if n <= exhaustive_max {
                        Box::new(b.instance.assignments())
                    } else {
                        Box::new(std::iter::once(b.start.clone()))
                    };
                    for x in starts {
                        let e = steepest_ascent(&b.instance, &x, NO_LIMIT).map_err(err(fam, n))?;
                        let o = exhaustive_steepest_oracle(&b.instance, &x).map_err(err(fam, n))?;
                        if !e.same_path(&o) || e.tie_steps != o.tie_steps || !e.terminal {
                            return Err(first_divergence(fam, n, &e, &o));
                        }
                        tally.cases += 1;
                    }
                }
            }
            Ok(())
        },
    )
}

pub fn run_check(name: &str, caps: &Caps) -> Option<CheckReport> {
    Some(match name {
        "prop11" => brute_force_check_prop11(caps.prop11),
        "theorem8" => check_theorem8(caps.theorem8, caps.steepest_reverify),
        "padding" => check_padding_equations(caps.padding),
        "boolean" => check_boolean_equivalence(caps.boolean_exhaustive, caps.boolean_trace),
        "pathwidth" => check_pathwidth(caps.pathwidth),
        "rank1" => check_rank1_report(),
        "oracle" => check_engine_oracle(caps.oracle_exhaustive, caps.oracle_canonical),
        _ => return None,
    })
}

/// Every check, each on its own thread; reports come back in [`CHECK_NAMES`] order.
pub fn run_all(caps: &Caps) -> Vec<CheckReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CHECK_NAMES
            .iter()
            .map(|name| s.spawn(move || run_check(name, caps).expect("known check")))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check panicked"))
            .collect()
    })
}
