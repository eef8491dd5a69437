//! Command dispatch for the `coxkit` binary.
//!
//! [`run`] never prints; it returns the text, an optional JSON payload and the
//! exit code, so the binary and the tests share one path.

use clap::{Args, Parser, Subcommand};
use coxkit::classify::{classify, classify_irreducible, describe, graph_order, Cardinal, TypeLabel};
use coxkit::deodhar::{deodhar_decompose, longest_element, ComponentOrder, DeodharOptions, Variant};
use coxkit::engine::{automorphisms, default_cap, find_isomorphism, EnumeratedGroup, Group, Subgroup};
use coxkit::graph::{CoxeterGraph, VertexSet};
use coxkit::isomorph::{admissible_decomposition, aut_decomposition, aut_order_symproduct, coxeter_isomorphic, ComponentMultiset, Verdict};
use coxkit::rootspace::{CoxeterSystem, DEFAULT_EPS};
use coxkit::structure::{
    center_direct_factor, centralizer_of_normal_closure, centralizer_of_normal_closure_checked, core_of_normalizer,
    core_of_normalizer_checked, is_directly_indecomposable, richardson_form, CenterFactor, ClosedForm,
};
use coxkit::verify::{self, VerifyOptions};
use coxkit::{Error, Result};
use serde_json::{json, Value};
use std::path::Path;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Groups larger than this are not searched for automorphisms under `--verify`.
const AUT_VERIFY_LIMIT: usize = 1500;

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub code: i32,
    pub text: String,
    pub json: Option<Value>,
}

impl CommandResult {
    fn new(code: i32, text: impl Into<String>, json: Value) -> Self {
        CommandResult { code, text: text.into(), json: Some(json) }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        CommandResult { code: EXIT_ERROR, json: Some(json!({ "error": msg.to_string() })), text: format!("error: {msg}") }
    }

    /// What the binary writes to stdout.
    pub fn output(&self, as_json: bool) -> String {
        match (&self.json, as_json) {
            (Some(v), true) => serde_json::to_string_pretty(v).expect("json values serialize"),
            _ => self.text.clone(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "coxkit", version, about = "Finite Coxeter groups: classification, roots, subgroups and isomorphisms")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalFlags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalFlags {
    /// Largest group the enumerator will build (default from COXKIT_CAP, else 10000).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Tolerance for root coordinates.
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Print the JSON payload instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cross-check the answer against brute force; a mismatch exits with 2.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Irreducible components and group order.
    Classify { graph: String },
    /// Group order, or "infinite".
    Order { graph: String },
    /// Root table: `id: c1 ... cn`, positive roots first.
    Roots { graph: String },
    /// Longest element of a parabolic subgroup.
    Longest {
        graph: String,
        #[arg(long)]
        subset: Option<String>,
    },
    /// Longest element as a product of commuting reflections.
    Deodhar {
        graph: String,
        #[arg(long)]
        subset: Option<String>,
        /// Highest-root variant for types with two choices (1 or 2).
        #[arg(long, default_value_t = 1)]
        variant: u8,
        /// Process the component with the smallest vertex first.
        #[arg(long)]
        smallest_first: bool,
    },
    /// Whether the center is a proper direct factor (graph file or type label).
    CenterFactor { target: String },
    /// Whether the group is directly indecomposable (graph file or type label).
    Indecomposable { target: String },
    /// Core of the normalizer of a standard parabolic subgroup.
    Core {
        graph: String,
        #[arg(long, default_value = "")]
        subset: String,
    },
    /// Centralizer of the normal closure of some involutions.
    Centralizer {
        graph: String,
        /// An element as comma separated vertex names; repeatable.
        #[arg(long = "word", required = true)]
        words: Vec<String>,
    },
    /// Write an involution as a conjugate of a central longest element.
    Richardson {
        graph: String,
        #[arg(long)]
        word: String,
    },
    /// Decide whether two Coxeter groups are isomorphic as abstract groups.
    Isomorphic { left: String, right: String },
    /// Order of the automorphism group, split into its four factors.
    Aut { graph: String },
    /// Order of Aut of a product of symmetric groups.
    AutOrder {
        #[arg(long, value_delimiter = ',', required = true)]
        sym: Vec<u32>,
    },
    /// Run acceptance suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Parse `argv` (without the program name) and run the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("coxkit")).chain(argv.into_iter().map(Into::into));
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                CommandResult { code: EXIT_OK, text: e.to_string(), json: None }
            }
            _ => CommandResult { code: EXIT_ERROR, text: e.to_string(), json: None },
        },
    }
}

pub fn execute(cli: &Cli) -> CommandResult {
    match dispatch(cli) {
        Ok(r) => r,
        Err(e) => CommandResult::error(e),
    }
}

fn dispatch(cli: &Cli) -> Result<CommandResult> {
    let flags = &cli.global;
    let ctx = Context { cap: flags.cap.unwrap_or_else(default_cap), eps: flags.eps.unwrap_or(DEFAULT_EPS), verify: flags.verify };
    match &cli.command {
        Command::Classify { graph } => cmd_classify(&load_graph(graph)?),
        Command::Order { graph } => cmd_order(&load_graph(graph)?),
        Command::Roots { graph } => cmd_roots(&ctx, &load_graph(graph)?),
        Command::Longest { graph, subset } => cmd_longest(&ctx, &load_graph(graph)?, subset.as_deref()),
        Command::Deodhar { graph, subset, variant, smallest_first } => {
            let variant = match variant {
                1 => Variant::First,
                2 => Variant::Second,
                v => return Err(Error::Precondition(format!("variant must be 1 or 2, got {v}"))),
            };
            let order = if *smallest_first { ComponentOrder::SmallestVertex } else { ComponentOrder::LargestVertex };
            cmd_deodhar(&ctx, &load_graph(graph)?, subset.as_deref(), DeodharOptions { variant, order })
        }
        Command::CenterFactor { target } => cmd_center_factor(load_label(target)?),
        Command::Indecomposable { target } => cmd_indecomposable(load_label(target)?),
        Command::Core { graph, subset } => cmd_core(&ctx, &load_graph(graph)?, subset),
        Command::Centralizer { graph, words } => cmd_centralizer(&ctx, &load_graph(graph)?, words),
        Command::Richardson { graph, word } => cmd_richardson(&ctx, &load_graph(graph)?, word),
        Command::Isomorphic { left, right } => cmd_isomorphic(&ctx, left, right),
        Command::Aut { graph } => cmd_aut(&ctx, &load_graph(graph)?),
        Command::AutOrder { sym } => {
            let n = aut_order_symproduct(sym);
            Ok(CommandResult::new(EXIT_OK, n.to_string(), json!({ "sizes": sym, "order": n.to_string() })))
        }
        Command::Verify { suite } => {
            let mut options = VerifyOptions::default();
            if let Some(seed) = flags.seed {
                options.seed = seed;
            }
            cmd_verify(suite, options)
        }
    }
}

struct Context {
    cap: usize,
    eps: f64,
    verify: bool,
}

impl Context {
    fn system(&self, g: &CoxeterGraph) -> Result<CoxeterSystem> {
        CoxeterSystem::with_eps(g, self.eps)
    }

    fn enumerate(&self, g: &CoxeterGraph) -> Result<EnumeratedGroup> {
        EnumeratedGroup::from_system(self.system(g)?, self.cap)
    }
}

fn load_graph(path: &str) -> Result<CoxeterGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| std::io::Error::new(e.kind(), format!("{path}: {e}")))?;
    CoxeterGraph::parse(&text)
}

/// A graph file when the path exists, otherwise a symbolic type label.
fn load_label(target: &str) -> Result<TypeLabel> {
    if Path::new(target).exists() {
        let g = load_graph(target)?;
        if g.rank() == 0 || !g.is_connected() {
            return Err(Error::Precondition("the graph must be connected and nonempty".into()));
        }
        classify_irreducible(&g)
    } else {
        target.parse()
    }
}

fn load_multiset(target: &str) -> Result<(ComponentMultiset, Option<CoxeterGraph>)> {
    if Path::new(target).exists() {
        let g = load_graph(target)?;
        Ok((ComponentMultiset::from_graph(&g), Some(g)))
    } else {
        Ok((ComponentMultiset::parse(target)?, None))
    }
}

fn parse_word(g: &CoxeterGraph, text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| g.index_of(name).ok_or_else(|| Error::UnknownVertex(name.to_string())))
        .collect()
}

fn format_word(g: &CoxeterGraph, word: &[usize]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.iter().map(|&s| g.name(s)).collect::<Vec<_>>().join(" ")
    }
}

fn braces(g: &CoxeterGraph, set: VertexSet) -> String {
    format!("{{{}}}", g.format_subset(set))
}

fn subset_or_all(g: &CoxeterGraph, subset: Option<&str>) -> Result<VertexSet> {
    subset.map_or(Ok(g.vertices()), |s| g.parse_subset(s))
}

fn order_text(order: &Cardinal) -> String {
    match order {
        Cardinal::Finite(n) => n.to_string(),
        Cardinal::Infinite => "infinite".to_string(),
    }
}

fn mismatch(what: &str) -> Error {
    Error::Verification(format!("{what} disagrees with brute force"))
}

/// `x` rounded to 12 significant digits, trailing zeros dropped; rounding noise prints as 0.
fn significant(x: f64) -> String {
    if x.abs() < 1e-12 || !x.is_finite() {
        return if x.is_finite() { "0".to_string() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    s
}

fn cmd_classify(g: &CoxeterGraph) -> Result<CommandResult> {
    let order = graph_order(g);
    let components: Vec<Value> = classify(g)
        .into_iter()
        .map(|(set, t)| json!({ "type": t.to_string(), "vertices": g.format_subset(set) }))
        .collect();
    let text = format!("{} (order {})", describe(g), order_text(&order));
    Ok(CommandResult::new(EXIT_OK, text, json!({ "components": components, "order": order_text(&order) })))
}

fn cmd_order(g: &CoxeterGraph) -> Result<CommandResult> {
    let order = order_text(&graph_order(g));
    Ok(CommandResult::new(EXIT_OK, order.clone(), json!({ "order": order })))
}

fn cmd_roots(ctx: &Context, g: &CoxeterGraph) -> Result<CommandResult> {
    let sys = ctx.system(g)?;
    let roots = sys.roots();
    let mut lines = Vec::with_capacity(roots.len());
    let mut table = Vec::with_capacity(roots.len());
    for id in 0..roots.len() as u32 {
        let coords = roots.coords(id);
        lines.push(format!("{id}: {}", coords.iter().map(|&c| significant(c)).collect::<Vec<_>>().join(" ")));
        table.push(json!({ "id": id, "coords": coords }));
    }
    let payload = json!({ "positive": roots.positive_count(), "roots": table });
    Ok(CommandResult::new(EXIT_OK, lines.join("\n"), payload))
}

fn cmd_longest(ctx: &Context, g: &CoxeterGraph, subset: Option<&str>) -> Result<CommandResult> {
    let sys = ctx.system(g)?;
    let set = subset_or_all(g, subset)?;
    let w0 = longest_element(&sys, set)?;
    let word = reduced_word(&sys, &w0.element);
    let swaps: Vec<String> =
        set.iter().filter(|&s| w0.sigma[s] != s).map(|s| format!("{}->{}", g.name(s), g.name(w0.sigma[s]))).collect();
    let mut text = format!("w0{} = {} (length {})", braces(g, set), format_word(g, &word), word.len());
    text.push_str(&if swaps.is_empty() { "\ncentral in the parabolic subgroup".to_string() } else { format!("\ninduces {}", swaps.join(" ")) });
    let payload = json!({
        "subset": g.format_subset(set),
        "word": word.iter().map(|&s| g.name(s)).collect::<Vec<_>>(),
        "length": word.len(),
        "central": w0.is_central(),
        "sigma": set.iter().map(|s| json!([g.name(s), g.name(w0.sigma[s])])).collect::<Vec<_>>(),
    });
    Ok(CommandResult::new(EXIT_OK, text, payload))
}

/// Reduced word by peeling descents off the right.
fn reduced_word(sys: &CoxeterSystem, w: &coxkit::rootspace::GroupElement) -> Vec<usize> {
    let mut word = Vec::new();
    let mut w = w.clone();
    while let Some(s) = (0..sys.rank()).find(|&s| !sys.roots().is_positive(w.images[s])) {
        word.push(s);
        w = sys.times_generator(&w, s);
    }
    word.reverse();
    word
}

fn cmd_deodhar(ctx: &Context, g: &CoxeterGraph, subset: Option<&str>, options: DeodharOptions) -> Result<CommandResult> {
    let sys = ctx.system(g)?;
    let set = subset_or_all(g, subset)?;
    let dec = deodhar_decompose(&sys, set, options)?;
    if ctx.verify && dec.product(&sys) != longest_element(&sys, set)?.element {
        return Err(mismatch("product of reflections"));
    }
    let mut lines = vec![format!("{} reflections", dec.steps.len())];
    let mut steps = Vec::new();
    for step in &dec.steps {
        let coords = sys.roots().coords(step.root);
        lines.push(format!(
            "root {} in {} {}",
            coords.iter().map(|&c| significant(c)).collect::<Vec<_>>().join(" "),
            step.label,
            braces(g, step.component)
        ));
        steps.push(json!({
            "root": coords,
            "component": g.format_subset(step.component),
            "type": step.label.to_string(),
            "remaining": g.format_subset(step.remaining),
        }));
    }
    let chain: Vec<String> =
        std::iter::once(set).chain(dec.sequence()).map(|s| format!("[{}]", g.format_subset(s))).collect();
    lines.push(format!("sequence: {}", chain.join(" ")));
    Ok(CommandResult::new(EXIT_OK, lines.join("\n"), json!({ "steps": steps, "sequence": chain })))
}

fn cmd_center_factor(label: TypeLabel) -> Result<CommandResult> {
    let answer = center_direct_factor(label)?;
    let code = if matches!(answer, CenterFactor::Yes(_)) { EXIT_OK } else { EXIT_NEGATIVE };
    let complement = match &answer {
        CenterFactor::Yes(t) => Some(t.to_string()),
        _ => None,
    };
    let kind = match answer {
        CenterFactor::Yes(_) => "yes",
        CenterFactor::No => "no",
        CenterFactor::CenterTrivial => "center trivial",
    };
    Ok(CommandResult::new(code, answer.to_string(), json!({ "type": label.to_string(), "answer": kind, "complement": complement })))
}

fn cmd_indecomposable(label: TypeLabel) -> Result<CommandResult> {
    let answer = is_directly_indecomposable(label)?;
    let mut text = if answer.indecomposable { "yes".to_string() } else { "no".to_string() };
    if let Some(note) = &answer.note {
        text.push_str(&format!(" ({note})"));
    }
    let code = if answer.indecomposable { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(CommandResult::new(code, text, json!({ "type": label.to_string(), "indecomposable": answer.indecomposable, "note": answer.note })))
}

fn closed_form_result(g: &CoxeterGraph, answer: &ClosedForm, sub: &Subgroup) -> CommandResult {
    let text = format!("case {}: {}, order {}", answer.case, answer.subgroup.render(g), sub.order());
    let payload = json!({ "case": answer.case, "subgroup_order": sub.order(), "element_ids": sub.ids() });
    CommandResult::new(EXIT_OK, text, payload)
}

fn cmd_core(ctx: &Context, g: &CoxeterGraph, subset: &str) -> Result<CommandResult> {
    let set = g.parse_subset(subset)?;
    let group = ctx.enumerate(g)?;
    let (answer, sub) = if ctx.verify {
        core_of_normalizer_checked(&group, set)?
    } else {
        let answer = core_of_normalizer(g, set)?;
        let sub = answer.subgroup.resolve(&group)?;
        (answer, sub)
    };
    Ok(closed_form_result(g, &answer, &sub))
}

fn cmd_centralizer(ctx: &Context, g: &CoxeterGraph, words: &[String]) -> Result<CommandResult> {
    let group = ctx.enumerate(g)?;
    let xs = words.iter().map(|w| Ok(group.from_word(&parse_word(g, w)?))).collect::<Result<Vec<_>>>()?;
    let (answer, sub) = if ctx.verify {
        centralizer_of_normal_closure_checked(&group, &xs)?
    } else {
        // the plain call hands back the normal closure, not the centralizer
        let (answer, _) = centralizer_of_normal_closure(&group, &xs)?;
        let sub = answer.subgroup.resolve(&group)?;
        (answer, sub)
    };
    Ok(closed_form_result(g, &answer, &sub))
}

fn cmd_richardson(ctx: &Context, g: &CoxeterGraph, word: &str) -> Result<CommandResult> {
    let group = ctx.enumerate(g)?;
    group.ensure_table();
    let w = group.from_word(&parse_word(g, word)?);
    let form = richardson_form(&group, w)?;
    if ctx.verify && group.conjugate(form.conjugator, form.longest) != w {
        return Err(mismatch("conjugate of the longest element"));
    }
    let conjugator = group.reduced_word(form.conjugator);
    let text = format!("I = {}, u = {}", braces(g, form.subset), format_word(g, &conjugator));
    let payload = json!({
        "subset": g.format_subset(form.subset),
        "conjugator": conjugator.iter().map(|&s| g.name(s)).collect::<Vec<_>>(),
        "conjugator_id": form.conjugator,
        "longest_id": form.longest,
    });
    Ok(CommandResult::new(EXIT_OK, text, payload))
}

fn cmd_isomorphic(ctx: &Context, left: &str, right: &str) -> Result<CommandResult> {
    let (a, ga) = load_multiset(left)?;
    let (b, gb) = load_multiset(right)?;
    let verdict = coxeter_isomorphic(&a, &b);
    let mut text = verdict.to_string();
    let mut witness = Value::Null;
    if ctx.verify {
        let build = |m: &ComponentMultiset, g: Option<CoxeterGraph>| -> Result<CoxeterGraph> {
            match g {
                Some(g) => Ok(g),
                None if m.infinite.is_empty() && !m.finite.is_empty() => {
                    let graphs = m.finite.iter().map(|&t| coxkit::classify::build_named(t)).collect::<Result<Vec<_>>>()?;
                    graphs[1..].iter().try_fold(graphs[0].clone(), |acc, h| acc.disjoint_union(h, "'"))
                }
                None => Err(Error::Infinite),
            }
        };
        let (ga, gb) = (build(&a, ga)?, build(&b, gb)?);
        let (sa, sb) = (ctx.enumerate(&ga)?, ctx.enumerate(&gb)?);
        sa.ensure_table();
        sb.ensure_table();
        let found = if sa.order() == sb.order() { find_isomorphism(&sa, &sb)?.is_some() } else { false };
        if found != (verdict == Verdict::Yes) {
            return Err(mismatch("isomorphism verdict"));
        }
        let summary = if found {
            format!("explicit isomorphism found on {} elements", sa.order())
        } else {
            format!("no isomorphism (orders {} and {})", sa.order(), sb.order())
        };
        text.push_str(&format!("\nwitness: {summary}"));
        witness = json!(summary);
    }
    let code = if verdict == Verdict::No { EXIT_NEGATIVE } else { EXIT_OK };
    Ok(CommandResult::new(code, text, json!({ "verdict": verdict.to_string(), "witness": witness })))
}

fn cmd_aut(ctx: &Context, g: &CoxeterGraph) -> Result<CommandResult> {
    let group = ctx.enumerate(g)?;
    group.ensure_table();
    let budget = aut_decomposition(&group, &admissible_decomposition(&group)?)?;
    let order = budget.order();
    let mut text = format!("|Aut| = {} * {} * {} * {} = {}", budget.h1, budget.h2, budget.h3, budget.h4, order);
    let mut brute = Value::Null;
    if ctx.verify {
        if group.order() > AUT_VERIFY_LIMIT {
            return Err(Error::Precondition(format!("--verify needs a group of order at most {AUT_VERIFY_LIMIT}")));
        }
        let count = automorphisms(&group)?.len();
        if count.to_string() != order.to_string() {
            return Err(mismatch("automorphism count"));
        }
        text.push_str(&format!("\nbrute force: {count} automorphisms"));
        brute = json!(count);
    }
    let payload = json!({
        "h1": budget.h1.to_string(),
        "h2": budget.h2.to_string(),
        "h3": budget.h3.to_string(),
        "h4": budget.h4.to_string(),
        "order": order.to_string(),
        "brute_force": brute,
    });
    Ok(CommandResult::new(EXIT_OK, text, payload))
}

fn cmd_verify(suite: &str, options: VerifyOptions) -> Result<CommandResult> {
    let reports = verify::run(suite, options)?;
    let mut lines = Vec::new();
    for r in &reports {
        lines.push(r.to_string());
        for f in &r.failures {
            lines.push(format!("    {f}"));
        }
    }
    let all = reports.iter().all(|r| r.passed());
    let payload: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "criterion": r.id,
                "suite": r.name,
                "passed": r.passed(),
                "checks": r.checks,
                "failed": r.failed,
                "seconds": r.elapsed.as_secs_f64(),
                "failures": r.failures,
            })
        })
        .collect();
    Ok(CommandResult::new(if all { EXIT_OK } else { EXIT_NEGATIVE }, lines.join("\n"), json!({ "reports": payload })))
}
