//! Subcommand handlers. Every handler returns a [`Report`] that renders both
//! as text and as a JSON object `{command, verdict|result, details}`.

use std::fs;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};
use untwist::constants::{constants, sweeping_pass_bound, DEFAULT_BIT_CAP};
use untwist::decomposition::PieceKind;
use untwist::inversion::Inversion;
use untwist::loops::predicted_pump_output;
use untwist::oneway::EmissionSource;
use untwist::{
    build_decomposition, components_of, decide_oneway_bounded, decide_sweeping_bounded,
    enumerate_runs, parse_transducer, pump, serialize_transducer, simulate_oneway, validate,
    verify_certificate, DecideOptions, Error, Loop, Outcome, PassBound, RunAnalysis, Transducer,
    Verdict, VerdictKind,
};

use crate::{Cli, Command, DecideArgs, DecideMode, Format, OnInput, Source};

pub struct Report {
    command: &'static str,
    key: &'static str,
    value: String,
    details: Value,
    text: String,
    code: u8,
}

impl Report {
    fn result(
        command: &'static str,
        value: &str,
        details: Value,
        text: String,
        code: u8,
    ) -> Report {
        Report {
            command,
            key: "result",
            value: value.into(),
            details,
            text,
            code,
        }
    }

    fn verdict(
        command: &'static str,
        value: &str,
        details: Value,
        text: String,
        code: u8,
    ) -> Report {
        Report {
            command,
            key: "verdict",
            value: value.into(),
            details,
            text,
            code,
        }
    }
}

pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::CapExceeded(_) => 69,
            Error::NotFunctional { .. } => 65,
            Error::InvalidArgument(_) => 64,
            Error::InternalInconsistency(_) => 70,
        };
        Failure::new(code, e.to_string())
    }
}

type CmdResult = Result<Report, Failure>;

/// Runs the parsed command and returns `(stdout, stderr, exit code)`.
pub fn run(cli: &Cli) -> (String, String, u8) {
    let start = Instant::now();
    let name = command_name(&cli.command);
    match execute(&cli.command) {
        Ok(mut r) => {
            let elapsed = start.elapsed().as_secs_f64() * 1000.0;
            if cli.stats {
                r.details["elapsed_ms"] = json!(elapsed);
                r.text.push_str(&format!("elapsed: {elapsed:.3} ms\n"));
            }
            let out = match cli.format {
                Format::Text => r.text,
                Format::Json => {
                    let mut v = json!({ "command": r.command, "details": r.details });
                    v[r.key] = json!(r.value);
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&v).expect("JSON values serialize")
                    )
                }
            };
            (out, String::new(), r.code)
        }
        Err(f) => {
            let out = match cli.format {
                Format::Text => String::new(),
                Format::Json => {
                    let v = json!({ "command": name, "result": "error", "details": { "message": f.message, "exit_code": f.code } });
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&v).expect("JSON values serialize")
                    )
                }
            };
            (out, format!("error: {}\n", f.message), f.code)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Parse { .. } => "parse",
        Command::Constants { .. } => "constants",
        Command::Run { .. } => "run",
        Command::Analyze(_) => "analyze",
        Command::Pump { .. } => "pump",
        Command::Decompose(_) => "decompose",
        Command::SimulateOneway(_) => "simulate-oneway",
        Command::Decide {
            mode: DecideMode::Oneway(_),
        } => "decide oneway",
        Command::Decide {
            mode: DecideMode::Sweeping { .. },
        } => "decide sweeping",
        Command::VerifyCert { .. } => "verify-cert",
    }
}

fn execute(c: &Command) -> CmdResult {
    match c {
        Command::Parse { source } => parse(source),
        Command::Constants {
            source,
            materialize,
        } => constants_cmd(source, *materialize),
        Command::Run {
            source,
            input,
            dump_runs,
        } => run_cmd(source, input, dump_runs.as_deref()),
        Command::Analyze(on) => analyze(on),
        Command::Pump {
            on,
            interval,
            times,
            run,
        } => pump_cmd(on, interval, times.get(), *run),
        Command::Decompose(on) => decompose(on),
        Command::SimulateOneway(on) => simulate(on),
        Command::Decide {
            mode: DecideMode::Oneway(args),
        } => decide(args, None, 1),
        Command::Decide {
            mode:
                DecideMode::Sweeping {
                    args,
                    passes,
                    pass_cap,
                },
        } => decide(args, Some(*passes), pass_cap.get()),
        Command::VerifyCert { source, cert } => verify(source, cert),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(66, format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::new(73, format!("cannot write {}: {e}", path.display())))
}

fn load(source: &Source) -> Result<Transducer, Failure> {
    let text = read(&source.file)?;
    parse_transducer(&text).map_err(|e| Failure::new(65, format!("{}: {e}", source.file.display())))
}

fn load_input(t: &Transducer, input: &str) -> Result<Vec<usize>, Failure> {
    t.parse_input(input)
        .map_err(|e| Failure::new(65, format!("input: {e}")))
}

fn parse(source: &Source) -> CmdResult {
    let t = load(source)?;
    let report = validate(&t);
    let issues: Vec<Value> = report
        .issues
        .iter()
        .map(|i| json!({ "severity": format!("{:?}", i.severity).to_lowercase(), "message": i.message, "location": i.location }))
        .collect();
    let canonical = serialize_transducer(&t);
    let details = json!({
        "name": t.name(),
        "states": t.num_states(),
        "input_alphabet": t.input_alphabet().symbols(),
        "output_alphabet": t.output_alphabet().symbols(),
        "transitions": t.transitions().len(),
        "issues": issues,
        "canonical": canonical,
    });
    Ok(Report::result(
        "parse",
        "valid",
        details,
        format!("{canonical}{report}"),
        0,
    ))
}

fn constants_cmd(source: &Source, materialize: Option<u64>) -> CmdResult {
    let t = load(source)?;
    let c = constants(
        &t,
        materialize.is_some(),
        materialize.unwrap_or(DEFAULT_BIT_CAP),
    );
    let (factor, exponent) = sweeping_pass_bound(t.num_states() as u64);
    let b = c.b.as_ref().map(|b| b.to_string());
    let passes = format!("{factor}·(2^{exponent}+1)");
    let details = json!({
        "states": t.num_states(),
        "h_max": c.h_max,
        "c_max": c.c_max,
        "e_max": c.e_max.to_string(),
        "b_factored": c.b_factored.to_string(),
        "b": b,
        "sweeping_passes": passes,
    });
    let mut text = format!(
        "states: {}\nh_max: {}\nc_max: {}\ne_max: {}\nB: {}\n",
        t.num_states(),
        c.h_max,
        c.c_max,
        c.e_max,
        c.b_factored
    );
    if let Some(b) = &b {
        text.push_str(&format!("B expanded: {b}\n"));
    }
    text.push_str(&format!("sweeping passes: {passes}\n"));
    Ok(Report::result("constants", "ok", details, text, 0))
}

fn run_cmd(source: &Source, input: &str, dump: Option<&Path>) -> CmdResult {
    let t = load(source)?;
    let u = load_input(&t, input)?;
    let runs = enumerate_runs(&t, &u, &source.caps())?;
    if let Some(path) = dump {
        let mut s = String::new();
        for (i, r) in runs.iter().enumerate() {
            s.push_str(&format!("run {i}\n{}", r.dump(&t)));
        }
        write(path, &s)?;
    }
    let outputs: Vec<String> = runs.iter().map(|r| t.render_output(r.output())).collect();
    let listed: Vec<Value> = runs
        .iter()
        .zip(&outputs)
        .enumerate()
        .map(|(i, (r, o))| json!({ "index": i, "steps": r.steps().len(), "output": o }))
        .collect();
    let details = json!({ "input": t.render_input(&u), "runs": listed, "output": outputs.first() });
    let mut text = String::new();
    for (i, o) in outputs.iter().enumerate() {
        text.push_str(&format!("run {i}: \"{o}\"\n"));
    }
    if runs.is_empty() {
        text.push_str("no successful run\n");
        return Ok(Report::result("run", "absent", details, text, 2));
    }
    Ok(Report::result("run", "accepted", details, text, 0))
}

fn member_json(a: &RunAnalysis<'_>, t: &Transducer, i: usize) -> Value {
    let l = a.loop_of(i);
    let c = a.component_of(i);
    json!({
        "loop": [l.x1, l.x2],
        "levels": c.levels,
        "anchor": [c.anchor.x, c.anchor.y],
        "trace": t.render_output(&a.anchored[i].trace_output),
    })
}

fn member_text(a: &RunAnalysis<'_>, t: &Transducer, i: usize) -> String {
    let l = a.loop_of(i);
    let c = a.component_of(i);
    format!(
        "[{},{}] levels {:?} anchor {} trace \"{}\"",
        l.x1,
        l.x2,
        c.levels,
        c.anchor,
        t.render_output(&a.anchored[i].trace_output)
    )
}

fn inversion_json(
    a: &RunAnalysis<'_>,
    t: &Transducer,
    inv: &Inversion,
    bound: untwist::PeriodBound,
) -> Value {
    let r = a.period_report(inv, bound);
    json!({
        "kind": inv.kind.name(),
        "first": member_json(a, t, inv.first),
        "second": member_json(a, t, inv.second),
        "word": t.render_output(&r.word),
        "gcd": r.gcd,
        "period": r.found_period,
        "safe": r.safe,
    })
}

fn analyze(on: &OnInput) -> CmdResult {
    let t = load(&on.source)?;
    let u = load_input(&t, &on.input)?;
    let runs = enumerate_runs(&t, &u, &on.source.caps())?;
    let mut text = String::new();
    let mut listed = Vec::new();
    let mut any_unsafe = false;
    for (ri, run) in runs.iter().enumerate() {
        let a = RunAnalysis::new(run);
        text.push_str(&format!(
            "run {ri}: output \"{}\"\n",
            t.render_output(run.output())
        ));
        let crossing: Vec<Vec<&str>> = (0..=run.omega())
            .map(|x| {
                run.crossing_sequence(x)
                    .iter()
                    .map(|&q| t.state_name(q))
                    .collect()
            })
            .collect();
        for (x, c) in crossing.iter().enumerate() {
            text.push_str(&format!("  cut {x}: {}\n", c.join(",")));
        }
        let mut loops = Vec::new();
        for (li, l) in a.loops.iter().enumerate() {
            text.push_str(&format!(
                "  loop [{},{}] effect {}\n",
                l.x1,
                l.x2,
                l.effect.render(&t)
            ));
            let comps: Vec<Value> = a.components[li]
                .iter()
                .map(|c| {
                    let dir = if c.left_to_right { "left-to-right" } else { "right-to-left" };
                    let tr = t.render_output(&c.trace_output(run));
                    text.push_str(&format!("    component {:?} {dir} anchor {} trace \"{tr}\"\n", c.levels, c.anchor));
                    json!({ "levels": c.levels, "direction": dir, "anchor": [c.anchor.x, c.anchor.y], "trace": tr })
                })
                .collect();
            loops.push(
                json!({ "loop": [l.x1, l.x2], "effect": l.effect.render(&t), "components": comps }),
            );
        }
        let mut inversions = Vec::new();
        for kind in [
            untwist::InversionKind::Inversion,
            untwist::InversionKind::CoInversion,
        ] {
            for inv in a.anchor_pairs(kind, None) {
                let v = inversion_json(&a, &t, &inv, on.period_bound);
                let safe = v["safe"].as_bool().unwrap_or(false);
                if kind == untwist::InversionKind::Inversion && !safe {
                    any_unsafe = true;
                }
                text.push_str(&format!(
                    "  {} {} -> {} word \"{}\" {}\n",
                    kind.name(),
                    member_text(&a, &t, inv.first),
                    member_text(&a, &t, inv.second),
                    v["word"].as_str().unwrap_or(""),
                    if safe { "safe" } else { "unsafe" }
                ));
                inversions.push(v);
            }
        }
        if let Some(inv) = a.first_unsafe(on.period_bound) {
            any_unsafe = true;
            text.push_str(&format!(
                "  unsafe inversion {} -> {}\n",
                member_text(&a, &t, inv.first),
                member_text(&a, &t, inv.second)
            ));
        }
        listed.push(json!({
            "index": ri,
            "output": t.render_output(run.output()),
            "crossing_sequences": crossing,
            "loops": loops,
            "inversions": inversions,
        }));
    }
    let details = json!({ "input": t.render_input(&u), "period_bound": on.period_bound.to_string(), "runs": listed });
    if runs.is_empty() {
        text.push_str("no successful run\n");
        return Ok(Report::result("analyze", "absent", details, text, 2));
    }
    let value = if any_unsafe { "unsafe" } else { "safe" };
    Ok(Report::result("analyze", value, details, text, 0))
}

fn parse_interval(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::new(64, format!("--loop expects `x1,x2`, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn pump_cmd(on: &OnInput, interval: &str, times: usize, run_index: usize) -> CmdResult {
    let t = load(&on.source)?;
    let u = load_input(&t, &on.input)?;
    let (x1, x2) = parse_interval(interval)?;
    let runs = enumerate_runs(&t, &u, &on.source.caps())?;
    let Some(run) = runs.get(run_index) else {
        let details = json!({ "input": t.render_input(&u), "runs": runs.len() });
        return Ok(Report::result(
            "pump",
            "absent",
            details,
            format!("no run with index {run_index}\n"),
            2,
        ));
    };
    if x1 == 0 || x2 >= run.omega() || x1 >= x2 {
        return Err(Failure::new(
            64,
            format!("[{x1},{x2}] is not an interval strictly inside the input"),
        ));
    }
    let lp = Loop::new(run, x1, x2);
    if !lp.is_loop() {
        return Err(Failure::new(
            64,
            format!("[{x1},{x2}] is not a loop: its border crossing sequences differ"),
        ));
    }
    let (word, pumped) = pump(&t, run, &lp, times)?;
    let predicted = lp
        .idempotent
        .then(|| predicted_pump_output(run, &components_of(run, &lp), times - 1));
    let output = t.render_output(pumped.output());
    let predicted_text = predicted.as_ref().map(|p| t.render_output(p));
    let matches = predicted.as_ref().map(|p| p.as_slice() == pumped.output());
    let details = json!({
        "input": t.render_input(&u),
        "loop": [x1, x2],
        "idempotent": lp.idempotent,
        "times": times,
        "pumped_input": t.render_input(&word),
        "output": output,
        "predicted": predicted_text,
        "matches_prediction": matches,
    });
    let mut text = format!(
        "pumped input: \"{}\"\noutput: \"{output}\"\n",
        t.render_input(&word)
    );
    match &predicted_text {
        Some(p) => text.push_str(&format!(
            "predicted: \"{p}\" ({})\n",
            if matches == Some(true) {
                "match"
            } else {
                "MISMATCH"
            }
        )),
        None => text.push_str("loop is not idempotent: no prediction\n"),
    }
    Ok(Report::result("pump", "pumped", details, text, 0))
}

fn decompose(on: &OnInput) -> CmdResult {
    let t = load(&on.source)?;
    let u = load_input(&t, &on.input)?;
    let runs = enumerate_runs(&t, &u, &on.source.caps())?;
    let mut text = String::new();
    let mut listed = Vec::new();
    let mut any_unsafe = false;
    for (ri, run) in runs.iter().enumerate() {
        let a = RunAnalysis::new(run);
        match build_decomposition(&a, on.period_bound)? {
            Outcome::Decomposed(d) => {
                text.push_str(&format!("run {ri}: decomposed\n{}", indent(&d.render(run))));
                let pieces: Vec<Value> = d
                    .pieces
                    .iter()
                    .map(|p| {
                        let (kind, period) = match &p.kind {
                            PieceKind::Diagonal { .. } => ("diagonal", None),
                            PieceKind::Block(b) => ("block", b.period),
                        };
                        let (s, e) = (run.location(p.start), run.location(p.end));
                        json!({ "kind": kind, "from": [s.x, s.y], "to": [e.x, e.y], "period": period })
                    })
                    .collect();
                listed.push(json!({ "index": ri, "decomposed": true, "pieces": pieces }));
            }
            Outcome::Unsafe(inv) => {
                any_unsafe = true;
                text.push_str(&format!(
                    "run {ri}: unsafe inversion {} -> {}\n",
                    member_text(&a, &t, inv.first),
                    member_text(&a, &t, inv.second)
                ));
                listed.push(json!({ "index": ri, "decomposed": false, "inversion": inversion_json(&a, &t, &inv, on.period_bound) }));
            }
        }
    }
    let details = json!({ "input": t.render_input(&u), "runs": listed });
    if runs.is_empty() {
        text.push_str("no successful run\n");
        return Ok(Report::result("decompose", "absent", details, text, 2));
    }
    if any_unsafe {
        return Ok(Report::result("decompose", "unsafe", details, text, 1));
    }
    Ok(Report::result("decompose", "decomposed", details, text, 0))
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

fn simulate(on: &OnInput) -> CmdResult {
    let t = load(&on.source)?;
    let u = load_input(&t, &on.input)?;
    let Some(sim) = simulate_oneway(&t, &u, on.period_bound, &on.source.caps())? else {
        let details = json!({ "input": t.render_input(&u), "output": null });
        return Ok(Report::result(
            "simulate-oneway",
            "absent",
            details,
            "absent\n".into(),
            2,
        ));
    };
    let emissions: Vec<Value> = sim
        .replay
        .emissions
        .iter()
        .map(|e| {
            let mut v = json!({ "x": e.x, "piece": e.piece, "word": t.render_output(&e.word) });
            match e.source {
                EmissionSource::Diagonal {
                    window,
                    left,
                    right,
                } => {
                    v["source"] = json!("diagonal");
                    v["window"] = json!(window);
                    v["left"] = json!(left);
                    v["right"] = json!(right);
                }
                EmissionSource::Block => v["source"] = json!("block"),
            }
            v
        })
        .collect();
    let output = t.render_output(sim.output());
    let details = json!({
        "input": t.render_input(&u),
        "run_index": sim.run_index,
        "output": output,
        "left_to_right": sim.replay.is_left_to_right(),
        "emissions": emissions,
    });
    let text = format!(
        "output: \"{output}\"\nrun {}\n{}{}",
        sim.run_index,
        sim.decomposition.render(&sim.run),
        sim.replay.render(&t)
    );
    Ok(Report::result(
        "simulate-oneway",
        "output",
        details,
        text,
        0,
    ))
}

fn verdict_json(v: &Verdict) -> Value {
    let kind = match v.kind {
        VerdictKind::Refuted => "refuted",
        VerdictKind::NoCounterexampleUpTo(_) => "no-counterexample",
        VerdictKind::BoundExceeded => "bound-exceeded",
    };
    json!({
        "verdict": kind,
        "summary": v.summary(),
        "stats": { "inputs": v.stats.inputs, "runs": v.stats.runs, "inversions": v.stats.inversions },
        "certificate": v.certificate.as_ref().map(|c| c.text.clone()),
    })
}

fn decide(args: &DecideArgs, passes: Option<PassBound>, pass_cap: usize) -> CmdResult {
    let t = load(&args.source)?;
    let opts = DecideOptions {
        max_len: args.max_len.get(),
        period_bound: args.period_bound,
        caps: args.source.caps(),
        pass_cap,
    };
    let (command, v) = match passes {
        None => ("decide oneway", decide_oneway_bounded(&t, &opts)?),
        Some(k) => ("decide sweeping", decide_sweeping_bounded(&t, k, &opts)?),
    };
    let mut details = verdict_json(&v);
    let value = details["verdict"].as_str().unwrap_or_default().to_string();
    details["max_len"] = json!(opts.max_len);
    details["period_bound"] = json!(opts.period_bound.to_string());
    if let Some(k) = passes {
        details["passes"] = json!(k.to_string());
    }
    let mut text = format!("{}\n", v.summary());
    if let Some(p) = &v.proxy {
        details["proxy"] = verdict_json(p);
        details["proxy"]["passes"] = json!(pass_cap);
        text.push_str(&format!("proxy at {pass_cap} passes: {}\n", p.summary()));
        if let Some(c) = &p.certificate {
            text.push_str(&c.text);
        }
    }
    if let Some(c) = &v.certificate {
        text.push_str(&c.text);
        if let Some(path) = &args.cert {
            write(path, &c.text)?;
        }
    }
    let code = match v.kind {
        VerdictKind::Refuted => 1,
        VerdictKind::NoCounterexampleUpTo(_) => 0,
        VerdictKind::BoundExceeded => 69,
    };
    Ok(Report::verdict(command, &value, details, text, code))
}

fn verify(source: &Source, cert: &Path) -> CmdResult {
    let t = load(source)?;
    let text = read(cert)?;
    let ok = verify_certificate(&t, &text);
    let value = if ok { "valid" } else { "invalid" };
    let details = json!({ "certificate": cert.display().to_string(), "transducer": t.name() });
    Ok(Report::verdict(
        "verify-cert",
        value,
        details,
        format!("{value}\n"),
        if ok { 0 } else { 1 },
    ))
}
