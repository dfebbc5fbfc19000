use std::fs;
use std::path::Path;

use serde::Serialize;

use condrev::fixtures::{manifest, FIXTURES};
use condrev::oracle::corpus::DEFAULT_SEED;
use condrev::oracle::{
    check_postulate, closest_nat_check, flattest_oracle, restriction_identity, search_counterexample,
    verify_characterization, verify_antecedent_minimality, verify_minimization, witness_scenario, CounterexampleQuery,
    Mode, PostulateId, PostulateReport, Predicate, Trace, TraceInput,
};
use condrev::{
    bg_revise, circledast, hansson_revise, Conditional, ConditionalOperator, Elementary, Error, Operator,
    Scenario, Tpo, WorldSet, DEFAULT_BOUND,
};

use crate::{Failure, Format, OracleName, Options};

type CmdResult = Result<(), Failure>;

/// Scenario with its input resolved.
struct Loaded {
    sc: Scenario,
    input_text: String,
    input: TraceInput,
    op: Option<Operator>,
}

impl Loaded {
    fn new(opts: &Options) -> Result<Loaded, Error> {
        let path = opts
            .scenario
            .as_deref()
            .ok_or_else(|| Error::Scenario("no scenario given; pass --scenario".into()))?;
        let sc = Scenario::load(path)?;
        let input_text = opts
            .input
            .clone()
            .or_else(|| sc.input.clone())
            .ok_or_else(|| Error::Scenario("no input; pass --input or set `input` in the scenario".into()))?;
        let parsed = sc.universe.parse_input(&input_text)?;
        let input = sc.trace_input(&parsed)?;
        let op = opts.op.or(sc.operator);
        Ok(Loaded {
            sc,
            input_text,
            input,
            op,
        })
    }

    fn render(&self, t: &Tpo) -> String {
        t.render(&self.sc.universe)
    }

    fn set(&self, s: WorldSet) -> String {
        self.sc.universe.render_set(s)
    }

    fn operator(&self) -> Result<Operator, Error> {
        self.op
            .ok_or_else(|| Error::Scenario("no operator; pass --op or set `operator` in the scenario".into()))
    }

    /// The input as a conditional; a plain `A` is read as `⊤ ⇒ A`.
    fn conditional(&self) -> Result<Conditional, Error> {
        match self.input {
            TraceInput::Conditional(c) => Ok(c),
            TraceInput::Plain(s) => Conditional::new(self.sc.prior.domain(), s),
        }
    }

    /// The trace to check: run the operator, unless the scenario spells out
    /// the posterior and no `--op` overrides it.
    fn trace(&self, opts: &Options) -> Result<Trace, Error> {
        match (&self.sc.result, opts.op) {
            (Some(result), None) => Ok(Trace::explicit(
                self.sc.prior.clone(),
                self.input,
                self.sc.step1.clone(),
                result.clone(),
            )),
            _ => Trace::run(self.operator()?, &self.sc.prior, self.input),
        }
    }
}

fn base_of(op: Option<Operator>, oracle: &str) -> Result<Elementary, Error> {
    match op {
        None => Ok(Elementary::Natural),
        Some(Operator::Elementary(e)) | Some(Operator::Conditional(ConditionalOperator::Circledast(e))) => Ok(e),
        Some(other) => Err(Error::Precondition(format!(
            "the {oracle} oracle needs an elementary base, not `{other}`"
        ))),
    }
}

fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("records serialize"));
}

#[derive(Serialize)]
struct RevisionRecord {
    operator: String,
    input: String,
    prior: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    step1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    promote: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    contraction: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    minimizers: Vec<String>,
    result: Option<String>,
    beliefs: String,
    accepts_input: bool,
}

pub fn revise(opts: &Options) -> CmdResult {
    let l = Loaded::new(opts)?;
    let op = l.operator()?;
    let trace = Trace::run(op, &l.sc.prior, l.input)?;
    let mut promote = None;
    let mut contraction = None;
    let mut minimizers = Vec::new();
    if let TraceInput::Conditional(c) = trace.input {
        match op {
            Operator::Conditional(ConditionalOperator::Circledast(base)) => {
                promote = Some(l.set(circledast(&base, &l.sc.prior, &c)?.promote));
            }
            Operator::Conditional(ConditionalOperator::Bg) => {
                contraction = Some(l.render(&bg_revise(&l.sc.prior, &c)?.contraction));
            }
            Operator::Conditional(ConditionalOperator::Hansson) => {
                let h = hansson_revise(&l.sc.prior, &c, DEFAULT_BOUND)?;
                minimizers = h.minimizers.iter().map(|t| l.render(t)).collect();
            }
            Operator::Elementary(_) => {}
        }
    }
    let beliefs = trace.posterior_beliefs().expect("a run trace has posterior beliefs");
    let domain = l.sc.prior.domain();
    let accepts_input = match trace.input {
        TraceInput::Conditional(c) => beliefs.accepts(c.antecedent(), c.consequent())?,
        TraceInput::Plain(s) => beliefs.required(domain)?.is_subset(s),
    };
    let record = RevisionRecord {
        operator: op.to_string(),
        input: l.input_text.clone(),
        prior: l.render(&l.sc.prior),
        step1: trace.step1.as_ref().map(|t| l.render(t)),
        promote,
        contraction,
        minimizers,
        result: trace.result.as_ref().map(|t| l.render(t)),
        beliefs: l.set(beliefs.required(domain)?),
        accepts_input,
    };
    match opts.format {
        Format::Structured => emit_json(&record),
        Format::Text => {
            println!("operator:    {}", record.operator);
            println!("input:       {}", record.input);
            println!("prior:       {}", record.prior);
            if let Some(s) = &record.step1 {
                println!("step1:       {s}");
            }
            if let Some(s) = &record.promote {
                println!("promote:     {s}");
            }
            if let Some(s) = &record.contraction {
                println!("contraction: {s}");
            }
            for m in &record.minimizers {
                println!("closest:     {m}");
            }
            match &record.result {
                Some(r) => println!("result:      {r}"),
                None => println!("result:      no single TPO has these conditional beliefs"),
            }
            println!("beliefs:     {}", record.beliefs);
            println!("accepted:    {}", if record.accepts_input { "yes" } else { "no" });
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckRecord {
    postulate: String,
    holds: bool,
    witness: Option<String>,
    witness_worlds: Vec<String>,
    searched: usize,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct CheckOutput {
    operator: Option<String>,
    input: String,
    prior: String,
    step1: Option<String>,
    result: Option<String>,
    reports: Vec<CheckRecord>,
}

fn postulate_list(list: &str, trace: &Trace) -> Result<Vec<PostulateId>, Error> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(PostulateId::applicable(trace));
    }
    list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

fn check_record(l: &Loaded, r: &PostulateReport) -> CheckRecord {
    let witness_worlds = r
        .witness
        .iter()
        .flat_map(|w| [w.x, w.y])
        .flatten()
        .map(|x| l.sc.universe.label(x).to_string())
        .collect();
    CheckRecord {
        postulate: r.postulate.to_string(),
        holds: r.holds,
        witness: r.witness.map(|w| w.render(&l.sc.universe)),
        witness_worlds,
        searched: r.searched,
        seed: None,
    }
}

pub fn check(opts: &Options, postulates: &str) -> CmdResult {
    let l = Loaded::new(opts)?;
    let trace = l.trace(opts)?;
    let ids = postulate_list(postulates, &trace)?;
    let mut reports = Vec::with_capacity(ids.len());
    for p in ids {
        reports.push(check_record(&l, &check_postulate(p, &trace)?));
    }
    let all_hold = reports.iter().all(|r| r.holds);
    let out = CheckOutput {
        operator: trace.operator.map(|o| o.to_string()),
        input: l.input_text.clone(),
        prior: l.render(&trace.prior),
        step1: trace.step1.as_ref().map(|t| l.render(t)),
        result: trace.result.as_ref().map(|t| l.render(t)),
        reports,
    };
    match opts.format {
        Format::Structured => emit_json(&out),
        Format::Text => {
            for r in &out.reports {
                match &r.witness {
                    None => println!("{:<6} holds ({})", r.postulate, count(r.searched, "instance")),
                    Some(w) => println!("{:<6} FAILS at {w}", r.postulate),
                }
            }
        }
    }
    if all_hold {
        Ok(())
    } else {
        Err(Failure::Verdict)
    }
}

#[derive(Serialize)]
struct OracleRecord {
    oracle: String,
    agrees: bool,
    verdict: String,
    lines: Vec<String>,
}

pub fn oracle(opts: &Options, which: OracleName) -> CmdResult {
    let l = Loaded::new(opts)?;
    let prior = &l.sc.prior;
    let mut lines = Vec::new();
    let (agrees, verdict) = match which {
        OracleName::Theorem1 => {
            let base = base_of(l.op, "theorem1")?;
            let rep = verify_minimization(base, prior, &l.conditional()?, DEFAULT_BOUND)?;
            for m in &rep.minimizers {
                lines.push(format!("minimizer: {}", l.render(m)));
            }
            lines.push(format!("circledast:{base} result: {}", l.render(&rep.constructive.result)));
            let verdict = match rep.minimizers.len() {
                1 if rep.holds => "unique minimizer; equals circledast result".to_string(),
                1 => "unique minimizer; differs from circledast result".to_string(),
                n => format!("{n} minimizers; no unique minimizer"),
            };
            (rep.holds, verdict)
        }
        OracleName::Characterization => {
            let base = base_of(l.op, "characterization")?;
            let c = l.conditional()?;
            let t = circledast(&base, prior, &c)?;
            lines.push(format!("circledast:{base} result: {}", l.render(&t.result)));
            let ok = verify_characterization(&t, &c, DEFAULT_BOUND)?;
            let verdict = if ok {
                "the postulates single out the circledast result"
            } else {
                "the postulates do not single out the circledast result"
            };
            (ok, verdict.to_string())
        }
        OracleName::Minimality => {
            let base = base_of(l.op, "minimality")?;
            let rep = verify_antecedent_minimality(base, prior, &l.conditional()?, DEFAULT_BOUND)?;
            lines.push(format!("candidates examined: {}", rep.searched));
            match &rep.witness {
                None => (true, "no candidate agrees with step1 where the result does not".to_string()),
                Some((t, s)) => {
                    lines.push(format!("candidate: {}", l.render(t)));
                    (false, format!("candidate agrees with step1 on antecedent {}", l.set(*s)))
                }
            }
        }
        OracleName::Flattest => {
            let c = l.conditional()?;
            let flat = flattest_oracle(prior, &c, DEFAULT_BOUND)?;
            let nat = circledast(&Elementary::Natural, prior, &c)?;
            lines.push(format!("flattest: {}", l.render(&flat)));
            lines.push(format!("circledast:natural result: {}", l.render(&nat.result)));
            let ok = flat == nat.result;
            let verdict = if ok {
                "flattest order equals circledast:natural result"
            } else {
                "flattest order differs from circledast:natural result"
            };
            (ok, verdict.to_string())
        }
        OracleName::ClosestNat => {
            let a = match l.input {
                TraceInput::Plain(s) => s,
                TraceInput::Conditional(c) => c.material(prior.domain()),
            };
            let rep = closest_nat_check(prior, a, DEFAULT_BOUND)?;
            lines.push(format!("natural: {} (distance {})", l.render(&rep.natural), rep.distance));
            lines.push(format!("orders with the same first cell: {}", rep.searched));
            match &rep.rival {
                None => (true, "natural revision is the unique closest".to_string()),
                Some(r) => (false, format!("rival at no greater distance: {}", l.render(r))),
            }
        }
        OracleName::Hansson => {
            let h = hansson_revise(prior, &l.conditional()?, DEFAULT_BOUND)?;
            lines.push(format!("closest distance: {}", h.distance));
            for m in &h.minimizers {
                lines.push(format!("minimizer: {}", l.render(m)));
            }
            match h.intersection.generating_tpo()? {
                Some(t) => lines.push(format!("posterior: {}", l.render(&t))),
                None => lines.push("posterior: no single TPO has these conditional beliefs".into()),
            }
            let verdict = match h.intersection.di_violation()? {
                Some((x, y)) => format!("DI violated: witness X={}, Y={}", l.set(x), l.set(y)),
                None => "DI holds".to_string(),
            };
            (true, verdict)
        }
        OracleName::Restriction => {
            let base = base_of(l.op, "restriction")?;
            let (lhs, rhs) = restriction_identity(base, prior, &l.conditional()?)?;
            lines.push(format!("result restricted to A: {}", l.render(&lhs)));
            lines.push(format!("{base} on restricted prior: {}", l.render(&rhs)));
            let ok = lhs == rhs;
            (ok, if ok { "identical" } else { "different" }.to_string())
        }
    };
    let record = OracleRecord {
        oracle: format!("{which:?}").to_lowercase(),
        agrees,
        verdict,
        lines,
    };
    match opts.format {
        Format::Structured => emit_json(&record),
        Format::Text => {
            for line in &record.lines {
                println!("{line}");
            }
            println!("{}", record.verdict);
        }
    }
    if record.agrees {
        Ok(())
    } else {
        Err(Failure::Verdict)
    }
}

#[derive(Serialize)]
struct SearchRecord {
    operator: String,
    predicate: String,
    found: bool,
    searched: usize,
    seed: Option<u64>,
    check_with: String,
    witness: Option<String>,
    scenario: Option<String>,
}

pub fn search(opts: &Options, predicate: Predicate, trials: usize, out: Option<&Path>) -> CmdResult {
    let operator = opts
        .op
        .ok_or_else(|| Error::Scenario("search needs --op".into()))?;
    let mode = if opts.exhaustive {
        Mode::Exhaustive {
            max_worlds: opts.worlds.unwrap_or(4),
        }
    } else {
        Mode::Randomized {
            seed: opts.seed.unwrap_or(DEFAULT_SEED),
            trials,
            worlds: opts.worlds.unwrap_or(8),
        }
    };
    let q = CounterexampleQuery {
        predicate,
        operator,
        mode,
    };
    let outcome = search_counterexample(&q)?;
    let check_with = predicate.check_postulate();
    let mut record = SearchRecord {
        operator: operator.to_string(),
        predicate: predicate.to_string(),
        found: outcome.witness.is_some(),
        searched: outcome.searched,
        seed: outcome.seed,
        check_with: check_with.to_string(),
        witness: None,
        scenario: None,
    };
    if let Some(w) = &outcome.witness {
        let sc = witness_scenario(&q, w)?;
        record.witness = w
            .report
            .as_ref()
            .and_then(|r| r.witness)
            .map(|wit| wit.render(&sc.universe));
        let mut text = format!(
            "# {operator} violates {predicate} after {}{}\n# reproduce: condrev check --scenario <this file> --postulates \"{check_with}\"\n",
            count(outcome.searched, "scenario"),
            outcome.seed.map(|s| format!(" (seed {s})")).unwrap_or_default(),
        );
        text.push_str(&sc.to_toml());
        record.scenario = Some(text);
    }
    if let (Some(path), Some(text)) = (out, &record.scenario) {
        fs::write(path, text)?;
    }
    match opts.format {
        Format::Structured => emit_json(&record),
        Format::Text => match (&record.scenario, out) {
            (None, _) => {
                let seed = record.seed.map(|s| format!(" (seed {s})")).unwrap_or_default();
                println!("no counterexample in {}{seed}", count(record.searched, "scenario"));
            }
            (Some(_), Some(path)) => println!("witness written to {}", path.display()),
            (Some(text), None) => print!("{text}"),
        },
    }
    Ok(())
}

pub fn figures(opts: &Options, dir: &Path) -> CmdResult {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for f in FIXTURES {
        let path = dir.join(f.file_name());
        fs::write(&path, f.text)?;
        written.push(path.display().to_string());
    }
    let manifest_path = dir.join("MANIFEST.txt");
    fs::write(&manifest_path, manifest())?;
    written.push(manifest_path.display().to_string());
    match opts.format {
        Format::Structured => emit_json(&written),
        Format::Text => {
            for p in &written {
                println!("{p}");
            }
        }
    }
    Ok(())
}
