use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use rootoid::brink_howlett::hypercontract;
use rootoid::format::{to_pretty, Input};
use rootoid::oriented_matroid::AxiomMode;
use rootoid::pipeline::{main_theorem_pipeline, PipelineOptions, BATTERY};
use rootoid::search::search_nonmatroid;
use rootoid::sgs::{MorId, ObjId, PropertyOptions};
use rootoid::{fixtures, OrientedMatroid, Sgs};

#[derive(Parser)]
#[command(name = "rootoid", version, about = "Exact checks for signed groupoid sets, preacycloids and oriented matroids")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (0 picks the number of cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the oriented matroid axioms on the closure of an input.
    Validate { input: String },
    /// Run the property battery on the signed groupoid set of an input.
    Properties {
        input: String,
        /// Also decide hereditary preprincipality.
        #[arg(long)]
        hereditary: bool,
    },
    /// Run the quasicontraction test.
    Handa { input: String },
    /// Circuits, rank and simpliciality.
    Matroid { input: String },
    /// Hypercontract at an object with a list of marks.
    Hypercontract {
        input: String,
        /// Object name, or its positive labels separated by commas.
        #[arg(long)]
        base: String,
        /// Morphisms into the base, by source object or label.
        #[arg(long, num_args = 0..)]
        marks: Vec<String>,
    },
    /// The full verification run.
    Pipeline {
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Also contract at every morphism.
        #[arg(long)]
        sweep: bool,
    },
    /// Search simple acycloids for ones that are not oriented matroids.
    SearchNonmatroid {
        #[arg(long, default_value_t = 4)]
        max_pairs: usize,
    },
    /// The built-in fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    Emit {
        name: String,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit statuses: checks pass, a checked property fails, bad input.
enum Outcome {
    Pass,
    Fail,
}

fn usage(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn load_input(arg: &str) -> Result<Input, String> {
    let path = Path::new(arg);
    if path.exists() {
        return Input::read(path).map_err(usage);
    }
    fixtures::input(arg).map_err(|_| format!("no such file or fixture: {arg}"))
}

fn load_sgs(arg: &str) -> Result<Sgs, String> {
    if !Path::new(arg).exists() && arg.starts_with("cox-") {
        return fixtures::coxeter(arg).map_err(usage);
    }
    let inp = load_input(arg)?;
    let a = inp.preacycloid().map_err(usage)?;
    Sgs::from_preacycloid(&a, inp.loops_plus()).map_err(usage)
}

fn print(json_mode: bool, v: &Value, text: String) {
    if json_mode {
        print!("{}", to_pretty(v));
    } else {
        print!("{text}");
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

fn validate(cli: &Cli, arg: &str) -> Result<Outcome, String> {
    let inp = load_input(arg)?;
    let m = inp.matroid().map_err(usage)?;
    let rep = m.check_matroid_axioms(AxiomMode::Auto).map_err(usage)?;
    let g = m.ground();
    let v = json!({ "input": arg, "kind": inp.kind(), "axioms": rep.to_json(g) });
    let mut text = format!("{arg}: {} input, {} subsets checked\n", inp.kind(), rep.subsets_checked);
    match rep.failures.first() {
        None => text.push_str("axioms: pass\n"),
        Some(f) => {
            text.push_str(&format!("axioms: FAIL {} at X = {}", f.axiom, g.format(f.subset)));
            for (name, e) in [("x", f.x), ("y", f.y)] {
                if let Some(e) = e {
                    text.push_str(&format!(", {name} = {}", g.label(e)));
                }
            }
            text.push('\n');
        }
    }
    print(cli.json, &v, text);
    Ok(if rep.passed() { Outcome::Pass } else { Outcome::Fail })
}

fn properties(cli: &Cli, arg: &str, hereditary: bool) -> Result<Outcome, String> {
    let r = load_sgs(arg)?;
    let rep = r.check_properties_with(PropertyOptions { hereditary });
    let v = json!({
        "input": arg,
        "objects": r.object_count(),
        "morphisms": r.morphism_count(),
        "properties": rep.to_json(&r),
    });
    let mut text = format!("{arg}: {} objects, {} morphisms\n", r.object_count(), r.morphism_count());
    let mut ok = true;
    for (k, f) in rep.entries() {
        ok &= f.holds;
        text.push_str(&format!("  {k:<28} {}", f.holds));
        if let Some(w) = &f.witness {
            text.push_str(&format!("  witness {}", compact(&r.witness_json(w))));
        }
        text.push('\n');
    }
    print(cli.json, &v, text);
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

fn handa(cli: &Cli, arg: &str) -> Result<Outcome, String> {
    let a = load_input(arg)?.preacycloid().map_err(usage)?;
    let rep = a.handa_test();
    let g = a.ground();
    let v = json!({ "input": arg, "handa": rep.to_json(g) });
    let mut text = format!("{arg}: {} quasicontractions explored\n", rep.node_count);
    match &rep.witness {
        None => text.push_str("oriented matroid: yes\n"),
        Some(w) => {
            let path: Vec<String> = w.path.iter().map(|&s| g.format(s)).collect();
            text.push_str(&format!("oriented matroid: no, {:?} after contracting [{}]\n", w.failure, path.join(" // ")));
        }
    }
    print(cli.json, &v, text);
    Ok(if rep.is_matroidal { Outcome::Pass } else { Outcome::Fail })
}

fn matroid(cli: &Cli, arg: &str) -> Result<Outcome, String> {
    let m: OrientedMatroid = load_input(arg)?.matroid().map_err(usage)?;
    let g = m.ground().clone();
    let axioms = m.check_matroid_axioms(AxiomMode::Auto).map_err(usage)?;
    let circuits = m.circuits().map_err(usage)?;
    let proper: Vec<Vec<String>> = circuits.iter().filter(|c| !c.improper).map(|c| g.names(c.members)).collect();
    let simp = m.simplicial_report();
    let v = json!({
        "input": arg,
        "axioms": axioms.to_json(&g),
        "rank": simp.rank,
        "loops": g.names(m.loops()),
        "simple": m.is_simple(),
        "hemispaces": m.hemispaces().len(),
        "proper_circuits": proper,
        "simplicial": simp.simplicial,
        "non_simplicial_hemispace": simp.witness.map(|h| g.names(h)),
    });
    let mut text = format!(
        "{arg}: rank {}, {} hemispaces, loops {}, simple {}\n",
        simp.rank,
        m.hemispaces().len(),
        g.format(m.loops()),
        m.is_simple()
    );
    text.push_str(&format!("axioms: {}\n", if axioms.passed() { "pass" } else { "FAIL" }));
    for c in &proper {
        text.push_str(&format!("circuit {{{}}}\n", c.join(",")));
    }
    text.push_str(&format!("simplicial: {}", simp.simplicial));
    if let Some(h) = simp.witness {
        text.push_str(&format!(" (hemispace {})", g.format(h)));
    }
    text.push('\n');
    print(cli.json, &v, text);
    Ok(if axioms.passed() && simp.simplicial { Outcome::Pass } else { Outcome::Fail })
}

fn resolve_object(r: &Sgs, name: &str) -> Result<ObjId, String> {
    if let Some(a) = r.object_ids().find(|&a| r.object(a).name == name) {
        return Ok(a);
    }
    let g = r.ground(ObjId(0));
    let wanted = g.parse_list(name.trim_matches(|c| c == '{' || c == '}')).map_err(usage)?;
    r.object_ids()
        .find(|&a| r.real_positive(a) == wanted || r.positive(a) == wanted)
        .ok_or_else(|| format!("no object {name}"))
}

fn resolve_mark(r: &Sgs, base: ObjId, name: &str) -> Result<MorId, String> {
    let into = r.morphisms_into(base);
    if let Some(&m) = into.iter().find(|&&m| r.label(m) == name) {
        return Ok(m);
    }
    let src = resolve_object(r, name)?;
    into.iter().copied().find(|&m| r.source(m) == src).ok_or_else(|| format!("no mark {name}"))
}

fn hypercontract_cmd(cli: &Cli, arg: &str, base: &str, marks: &[String]) -> Result<Outcome, String> {
    let r = load_sgs(arg)?;
    let a = resolve_object(&r, base)?;
    let xs = marks.iter().map(|m| resolve_mark(&r, a, m)).collect::<Result<Vec<_>, _>>()?;
    let h = hypercontract(&r, a, &xs).map_err(usage)?;
    let parent = r.check_properties();
    let rep = h.sgs.check_properties();
    // gaining imaginary roots is expected, so only the inherited battery counts
    let lost: Vec<&str> =
        BATTERY.iter().chain(&["antipodal"]).copied().filter(|k| parent.holds(k) && !rep.holds(k)).collect();
    let v = json!({
        "input": arg,
        "hypercontraction": h.descriptor(&r),
        "objects": h.sgs.object_count(),
        "morphisms": h.sgs.morphism_count(),
        "properties": rep.to_json(&h.sgs),
        "lost_properties": lost,
    });
    let mut text = format!("{}\n", compact(&h.descriptor(&r)));
    text.push_str(&format!("{} objects, {} morphisms\n", h.sgs.object_count(), h.sgs.morphism_count()));
    for (k, f) in rep.entries() {
        text.push_str(&format!("  {k:<28} {}\n", f.holds));
    }
    if !lost.is_empty() {
        text.push_str(&format!("lost: {}\n", lost.join(", ")));
    }
    print(cli.json, &v, text);
    Ok(if lost.is_empty() { Outcome::Pass } else { Outcome::Fail })
}

fn pipeline(cli: &Cli, inputs: &[String], sweep: bool) -> Result<Outcome, String> {
    let opts = PipelineOptions { hypercontraction_sweep: sweep };
    // results keep input order whatever the completion order
    let verdicts: Vec<Result<_, String>> = inputs
        .par_iter()
        .map(|arg| {
            let inp = load_input(arg)?;
            main_theorem_pipeline(&inp, opts).map_err(usage)
        })
        .collect();
    let mut ok = true;
    let mut reports = Vec::new();
    let mut text = String::new();
    for (arg, v) in inputs.iter().zip(verdicts) {
        let v = v?;
        ok &= v.consistent();
        let mut j = v.to_json();
        j["source"] = Value::from(arg.as_str());
        reports.push(j);
        text.push_str(&format!("== {arg}\n{}", v.render()));
    }
    let out = if reports.len() == 1 { reports.pop().expect("one report") } else { Value::from(reports) };
    print(cli.json, &out, text);
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

fn search(cli: &Cli, max_pairs: usize) -> Result<Outcome, String> {
    let levels = search_nonmatroid(max_pairs).map_err(usage)?;
    let mut ok = true;
    let mut text = String::new();
    let mut js = Vec::new();
    for l in &levels {
        ok &= l.disagreements() == 0;
        let found: Vec<Value> = l
            .non_matroidal()
            .map(|c| {
                let g = c.preacycloid.ground();
                Value::from(c.preacycloid.topes().iter().map(|&t| Value::from(g.names(t))).collect::<Vec<_>>())
            })
            .collect();
        text.push_str(&format!(
            "{} pairs: {} simple acycloids, {} not oriented matroids, {} disagreements\n",
            l.pairs,
            l.orbits.len(),
            found.len(),
            l.disagreements()
        ));
        js.push(json!({
            "pairs": l.pairs,
            "orbits": l.orbits.len(),
            "disagreements": l.disagreements(),
            "non_matroidal": found,
        }));
    }
    print(cli.json, &Value::from(js), text);
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

fn fixtures_cmd(cli: &Cli, action: &FixtureAction) -> Result<Outcome, String> {
    match action {
        FixtureAction::List => {
            let list: Vec<Value> =
                fixtures::NAMES.iter().map(|n| json!({ "name": n, "description": fixtures::describe(n) })).collect();
            let text: String =
                fixtures::NAMES.iter().map(|n| format!("{n:<10} {}\n", fixtures::describe(n).unwrap_or(""))).collect();
            print(cli.json, &Value::from(list), text);
        }
        FixtureAction::Emit { name, out } => {
            let inp = fixtures::input(name).map_err(|_| format!("{name} has no file form"))?;
            let body = to_pretty(&inp.to_json());
            match out {
                Some(p) => std::fs::write(p, body).map_err(usage)?,
                None => print!("{body}"),
            }
        }
    }
    Ok(Outcome::Pass)
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    if cli.jobs > 0 {
        // only fails if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match &cli.command {
        Command::Validate { input } => validate(cli, input),
        Command::Properties { input, hereditary } => properties(cli, input, *hereditary),
        Command::Handa { input } => handa(cli, input),
        Command::Matroid { input } => matroid(cli, input),
        Command::Hypercontract { input, base, marks } => hypercontract_cmd(cli, input, base, marks),
        Command::Pipeline { inputs, sweep } => pipeline(cli, inputs, *sweep),
        Command::SearchNonmatroid { max_pairs } => search(cli, *max_pairs),
        Command::Fixtures { action } => fixtures_cmd(cli, action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
