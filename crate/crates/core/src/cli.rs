//! The `finpoly` command line: reads JSON inputs, runs one operation and
//! reports a verdict as text or as `{"command", "verdict", "data"}`.
//!
//! Exit codes: 0 for success and true verdicts, 1 for false verdicts, 2
//! for errors and exceeded caps.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bij::{build_exp, build_exp_set, build_exp_skeletal, ExpGroupoid, TruncationConfig};
use crate::closure::{curry, support_exp, uncurry};
use crate::fam::{check_family_equivalence, Family, FamilyEquivalence};
use crate::grpd::{check_groupoid_equivalence, EquivalenceOutcome, Grpd, DEFAULT_AUT_CAP};
use crate::json::{
    exp_from_value, family_to_json, groupoid_from_value, input_from_value, input_to_json, parse_json,
    polynomial_to_json, Input, InputError,
};
use crate::laws::{run_law_suite, Verdict};
use crate::poly::{
    compose, enumerate_self_equivalences, eval, is_finitary, search_equivalence, Caps, Direction, Polynomial,
    SearchOutcome,
};

#[derive(Parser, Debug)]
#[command(name = "finpoly", version, about = "Polynomial functors between finite groupoids")]
struct Args {
    /// Print `{"command", "verdict", "data"}` instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the resulting value (or the report data) as JSON to this path.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    /// Search limits: `default`, `wide`, or `objects=N,morphisms=N,candidates=N`.
    #[arg(long, global = true, default_value = "default")]
    caps: String,
    /// Largest family size in exponentials.
    #[arg(long, global = true, default_value_t = 4)]
    trunc: usize,
    /// Seed for generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate an input file.
    Validate { file: PathBuf },
    /// Evaluate a polynomial at a family over its source.
    Eval { poly: PathBuf, family: PathBuf },
    /// Compose two polynomials, first then second.
    Compose { first: PathBuf, second: PathBuf },
    /// Curry `P: I ⊔ J ↝ K` into `I ↝ Exp(J) × K`.
    Curry {
        file: PathBuf,
        /// Number of objects of the left block `I`.
        #[arg(long)]
        split: usize,
        #[arg(long, value_enum, default_value_t = ExpKind::Full)]
        exp: ExpKind,
    },
    /// Uncurry `Q: I ↝ Exp(J) × K` into `I ⊔ J ↝ K`.
    ///
    /// The exponential and `K` are read from a `J` field of the form
    /// `{"product": [{"exp": ...}, K]}`, as written by `curry -o`, or
    /// given with `--colors` and `--k`.
    Uncurry {
        file: PathBuf,
        /// Groupoid `J` of colors.
        #[arg(long, requires = "k")]
        colors: Option<PathBuf>,
        /// Groupoid `K`.
        #[arg(long, requires = "colors")]
        k: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ExpKind::Full)]
        exp: ExpKind,
    },
    /// Decide equivalence of two groupoids, families or polynomials.
    Equiv { first: PathBuf, second: PathBuf },
    /// Count the self-equivalences of a polynomial.
    Autos { file: PathBuf },
    /// Check the bicategory laws on generated instances.
    Laws {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Groupoid cardinality of a groupoid, or of the total groupoid of a
    /// family or of the operations of a polynomial.
    Card { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExpKind {
    /// Every coloring of size at most the truncation bound.
    Full,
    /// The same objects without permutations.
    Set,
    /// One coloring per isomorphism class.
    Skeletal,
    /// One coloring per class that occurs in the input (curry only).
    Support,
}

/// What a command printed and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    verdict: &'static str,
    code: i32,
    text: String,
    data: Value,
    /// Written by `-o`; defaults to `data`.
    value: Option<Value>,
}

impl Report {
    fn ok(text: String, data: Value, value: Option<Value>) -> Self {
        Report { verdict: "ok", code: 0, text, data, value }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Input { path: String, source: InputError },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Poly(#[from] crate::poly::PolyError),
}

impl CliError {
    fn verdict(&self) -> &'static str {
        match self {
            CliError::Poly(e) if e.is_cap() => "cap_exceeded",
            _ => "error",
        }
    }
}

struct Ctx {
    cfg: TruncationConfig,
    caps: Caps,
    seed: u64,
}

impl Ctx {
    fn read(&self, path: &Path) -> Result<Input, CliError> {
        input_from_value(&read_json(path)?, self.cfg).map_err(|source| located(path, source))
    }

    fn polynomial(&self, path: &Path) -> Result<Arc<Polynomial>, CliError> {
        match self.read(path)? {
            Input::Polynomial(p) => Ok(p),
            other => {
                Err(CliError::Usage(format!("{}: expected a polynomial, found a {}", path.display(), other.kind())))
            }
        }
    }

    fn groupoid(&self, path: &Path) -> Result<Grpd, CliError> {
        match self.read(path)? {
            Input::Groupoid(g) => Ok(g),
            other => Err(CliError::Usage(format!("{}: expected a groupoid, found a {}", path.display(), other.kind()))),
        }
    }
}

fn located(path: &Path, source: InputError) -> CliError {
    CliError::Input { path: path.display().to_string(), source }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|source| located(path, source))
}

fn parse_caps(spec: &str) -> Result<Caps, CliError> {
    match spec {
        "default" => return Ok(Caps::default()),
        "wide" => return Ok(Caps::wide()),
        _ => {}
    }
    let mut caps = Caps::default();
    for part in spec.split(',').filter(|p| !p.is_empty()) {
        let bad = || CliError::Usage(format!("bad --caps entry \"{part}\""));
        let (key, value) = part.split_once('=').ok_or_else(bad)?;
        let n: u64 = value.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "objects" => caps.max_objects = usize::try_from(n).map_err(|_| bad())?,
            "morphisms" => caps.max_morphisms = usize::try_from(n).map_err(|_| bad())?,
            "candidates" => caps.candidates = n,
            _ => return Err(bad()),
        }
    }
    Ok(caps)
}

/// Runs the command line `args` (including the program name) and
/// captures its output.
pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let name = command_name(&args.command);
    let result = parse_caps(&args.caps).and_then(|caps| {
        let ctx = Ctx { cfg: TruncationConfig::new(args.trunc), caps, seed: args.seed };
        let report = dispatch(&ctx, &args.command)?;
        if let Some(path) = &args.output {
            let value = report.value.as_ref().unwrap_or(&report.data);
            let text = serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n";
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
        Ok(report)
    });
    let mut out = Outcome { code: 0, stdout: String::new(), stderr: String::new() };
    match result {
        Ok(report) => {
            out.code = report.code;
            if args.json {
                let doc = json!({"command": name, "verdict": report.verdict, "data": report.data});
                out.stdout = serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n";
            } else {
                out.stdout = report.text;
            }
        }
        Err(e) => {
            out.code = 2;
            if args.json {
                let doc = json!({"command": name, "verdict": e.verdict(), "data": {"message": e.to_string()}});
                out.stdout = serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n";
            }
            out.stderr = format!("error: {e}\n");
        }
    }
    out
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Eval { .. } => "eval",
        Command::Compose { .. } => "compose",
        Command::Curry { .. } => "curry",
        Command::Uncurry { .. } => "uncurry",
        Command::Equiv { .. } => "equiv",
        Command::Autos { .. } => "autos",
        Command::Laws { .. } => "laws",
        Command::Card { .. } => "card",
    }
}

fn dispatch(ctx: &Ctx, command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Validate { file } => validate(ctx, file),
        Command::Eval { poly, family } => run_eval(ctx, poly, family),
        Command::Compose { first, second } => {
            let (p, q) = (ctx.polynomial(first)?, ctx.polynomial(second)?);
            let c = compose(&p, &q, ctx.caps.candidates)?;
            let (text, data) = describe_polynomial(&c.poly);
            Ok(Report::ok(text, data, Some(polynomial_to_json(&c.poly, None))))
        }
        Command::Curry { file, split, exp } => run_curry(ctx, file, *split, *exp),
        Command::Uncurry { file, colors, k, exp } => run_uncurry(ctx, file, colors.as_deref().zip(k.as_deref()), *exp),
        Command::Equiv { first, second } => equiv(ctx, first, second),
        Command::Autos { file } => {
            let p = ctx.polynomial(file)?;
            let n = enumerate_self_equivalences(&p, &ctx.caps)?.len();
            Ok(Report::ok(format!("{n}\n"), json!({"count": n}), None))
        }
        Command::Laws { count } => laws(ctx, *count),
        Command::Card { file } => {
            let g: Grpd = match ctx.read(file)? {
                Input::Groupoid(g) => g,
                Input::Family(f) => f.tot().groupoid,
                Input::Polynomial(p) => p.ops_total().groupoid.clone(),
                Input::Point(_) => return Err(CliError::Usage("a point has no cardinality".into())),
            };
            let q = g.cardinality();
            Ok(Report::ok(format!("{q}\n"), json!({"cardinality": q.to_string()}), None))
        }
    }
}

fn validate(ctx: &Ctx, file: &Path) -> Result<Report, CliError> {
    let value = read_json(file)?;
    let input = match input_from_value(&value, ctx.cfg) {
        Ok(input) => input,
        Err(e) => {
            let message = format!("{}: {e}", file.display());
            return Ok(Report {
                verdict: "invalid",
                code: 1,
                text: format!("invalid: {message}\n"),
                data: json!({"message": message}),
                value: None,
            });
        }
    };
    let summary = match &input {
        Input::Groupoid(g) => format!(
            "{} objects, {} morphisms, {} components",
            g.object_count(),
            g.morphism_count(),
            g.components().len()
        ),
        Input::Family(f) => format!("over {} objects, {} total objects", f.base().object_count(), f.total_objects()),
        Input::Polynomial(p) => format!(
            "{} source objects, {} target objects, {} operations",
            p.source().object_count(),
            p.target().object_count(),
            p.op_count()
        ),
        Input::Point(p) => format!("size {}", p.size),
    };
    Ok(Report {
        verdict: "valid",
        code: 0,
        text: format!("valid {}: {summary}\n", input.kind()),
        data: json!({"kind": input.kind(), "summary": summary}),
        value: Some(input_to_json(&input)),
    })
}

fn run_eval(ctx: &Ctx, poly: &Path, family: &Path) -> Result<Report, CliError> {
    let p = ctx.polynomial(poly)?;
    let x: Arc<Family> = match ctx.read(family)? {
        Input::Family(f) => f,
        Input::Groupoid(g) => Arc::new(Family::constant(p.source().clone(), g)),
        other => return Err(CliError::Usage(format!("expected a family, found a {}", other.kind()))),
    };
    if **x.base() != **p.source() {
        return Err(CliError::Usage("the family is not over the source of the polynomial".into()));
    }
    let e = eval(&p, &x, ctx.caps.candidates)?;
    let mut text = String::new();
    let mut fibers = Vec::new();
    for (j, fiber) in e.family.fibers().iter().enumerate() {
        let q = fiber.cardinality();
        let (n, m, c) = (fiber.object_count(), fiber.morphism_count(), fiber.components().len());
        writeln!(text, "{j}: {n} objects, {m} morphisms, {c} components, cardinality {q}").expect("string write");
        fibers.push(json!({"object": j, "objects": n, "morphisms": m, "components": c, "cardinality": q.to_string()}));
    }
    Ok(Report::ok(text, json!({"fibers": fibers}), Some(family_to_json(&e.family))))
}

fn describe_polynomial(p: &Polynomial) -> (String, Value) {
    let report = is_finitary(p);
    let mut text = format!(
        "source: {} objects, {} morphisms\ntarget: {} objects, {} morphisms\noperations: {}\n",
        p.source().object_count(),
        p.source().morphism_count(),
        p.target().object_count(),
        p.target().morphism_count(),
        p.op_count()
    );
    let mut ops = Vec::new();
    for (&(j, c, _), arity) in report.verdicts.iter().zip(report.arities()) {
        let shown = arity.map_or_else(|| "infinite".to_string(), |a| a.to_string());
        writeln!(text, "  ({j}, {c}): arity {shown}").expect("string write");
        ops.push(json!({"over": j, "index": c, "arity": arity}));
    }
    let data = json!({
        "source": {"objects": p.source().object_count(), "morphisms": p.source().morphism_count()},
        "target": {"objects": p.target().object_count(), "morphisms": p.target().morphism_count()},
        "finitary": report.is_finitary(),
        "operations": ops,
    });
    (text, data)
}

fn exp_expression(exp: &ExpGroupoid, kind: ExpKind) -> Value {
    let mut e = json!({"exp": crate::json::groupoid_to_json(&exp.colors), "trunc": exp.cfg.max_size});
    match kind {
        ExpKind::Full => {}
        ExpKind::Set => e["kind"] = json!("set"),
        ExpKind::Skeletal => e["kind"] = json!("skeletal"),
        ExpKind::Support => e["points"] = json!(exp.points()),
    }
    e
}

fn build_kind(j: &Grpd, cfg: TruncationConfig, kind: ExpKind) -> Result<ExpGroupoid, CliError> {
    match kind {
        ExpKind::Full => Ok(build_exp(j, cfg)),
        ExpKind::Set => Ok(build_exp_set(j, cfg)),
        ExpKind::Skeletal => Ok(build_exp_skeletal(j, cfg)),
        ExpKind::Support => Err(CliError::Usage("--exp support needs a polynomial to curry".into())),
    }
}

fn run_curry(ctx: &Ctx, file: &Path, split: usize, kind: ExpKind) -> Result<Report, CliError> {
    let p = ctx.polynomial(file)?;
    let Some((_, j)) = p.source().split_coproduct(split) else {
        return Err(CliError::Usage(format!("the source does not split after {split} objects")));
    };
    let j = Arc::new(j);
    let exp = match kind {
        ExpKind::Support => support_exp(&p, split, ctx.cfg)?,
        kind => build_kind(&j, ctx.cfg, kind)?,
    };
    let c = curry(&p, split, &exp)?;
    let target = json!({"product": [exp_expression(&exp, kind), crate::json::groupoid_to_json(p.target())]});
    let (text, data) = describe_polynomial(&c);
    Ok(Report::ok(text, data, Some(polynomial_to_json(&c, Some(target)))))
}

fn run_uncurry(ctx: &Ctx, file: &Path, given: Option<(&Path, &Path)>, kind: ExpKind) -> Result<Report, CliError> {
    let raw = read_json(file)?;
    let q = ctx.polynomial(file)?;
    let (exp, k) = match given {
        Some((colors, k)) => (build_kind(&ctx.groupoid(colors)?, ctx.cfg, kind)?, ctx.groupoid(k)?),
        None => {
            let factors = raw
                .get("J")
                .and_then(|j| j.get("product"))
                .and_then(Value::as_array)
                .filter(|f| f.len() == 2 && f[0].get("exp").is_some())
                .ok_or_else(|| {
                    CliError::Usage(
                        "J is not of the form {\"product\": [{\"exp\": ...}, K]}; pass --colors and --k".into(),
                    )
                })?;
            let exp = exp_from_value(&factors[0], "$.J.product[0]", ctx.cfg).map_err(|e| located(file, e))?;
            let k = groupoid_from_value(&factors[1], "$.J.product[1]", ctx.cfg).map_err(|e| located(file, e))?;
            (exp, Arc::new(k))
        }
    };
    let u = uncurry(&q, &exp, &k)?;
    let (text, data) = describe_polynomial(&u);
    Ok(Report::ok(text, data, Some(polynomial_to_json(&u, None))))
}

fn equiv(ctx: &Ctx, first: &Path, second: &Path) -> Result<Report, CliError> {
    let yes = |text: String| Report { verdict: "equivalent", code: 0, text, data: json!({}), value: None };
    let no = |reason: String| Report {
        verdict: "not_equivalent",
        code: 1,
        text: format!("not equivalent: {reason}\n"),
        data: json!({"obstruction": reason}),
        value: None,
    };
    let capped = |reason: String| Report {
        verdict: "cap_exceeded",
        code: 2,
        text: format!("cap exceeded: {reason}\n"),
        data: json!({"reason": reason}),
        value: None,
    };
    match (ctx.read(first)?, ctx.read(second)?) {
        (Input::Groupoid(a), Input::Groupoid(b)) => Ok(match check_groupoid_equivalence(&a, &b, DEFAULT_AUT_CAP) {
            EquivalenceOutcome::Equivalent(_) => yes("equivalent\n".into()),
            EquivalenceOutcome::NotEquivalent { invariant } => no(invariant),
            outcome @ EquivalenceOutcome::CapExceeded { .. } => capped(outcome.to_string()),
        }),
        (Input::Family(a), Input::Family(b)) => Ok(match check_family_equivalence(&a, &b, ctx.caps.candidates) {
            FamilyEquivalence::Strict(_) => yes("equivalent (strictly natural)\n".into()),
            FamilyEquivalence::OverBase(_) => yes("equivalent (over the base)\n".into()),
            FamilyEquivalence::NotEquivalent { obstruction } => no(obstruction),
            FamilyEquivalence::CapExceeded => capped(format!("{} candidates", ctx.caps.candidates)),
        }),
        (Input::Polynomial(p), Input::Polynomial(q)) => Ok(match search_equivalence(&p, &q, &ctx.caps)? {
            SearchOutcome::Found { direction, .. } => {
                let d = match direction {
                    Direction::Forward => "forward",
                    Direction::Backward => "backward",
                };
                let mut r = yes(format!("equivalent ({d} witness)\n"));
                r.data = json!({"direction": d});
                r
            }
            SearchOutcome::NotEquivalent { obstruction } => no(obstruction),
            SearchOutcome::NoStrictWitness => Report {
                verdict: "undecided",
                code: 2,
                text: "undecided: no strictly natural witness in either direction\n".into(),
                data: json!({}),
                value: None,
            },
            SearchOutcome::CapExceeded { reason } => capped(reason),
        }),
        (a, b) => Err(CliError::Usage(format!("cannot compare a {} with a {}", a.kind(), b.kind()))),
    }
}

fn laws(ctx: &Ctx, count: usize) -> Result<Report, CliError> {
    let records = run_law_suite(ctx.seed, count, &ctx.caps);
    let mut text = String::new();
    let mut rows = Vec::new();
    let (mut failed, mut capped) = (0, 0);
    for r in &records {
        let (word, detail) = match &r.verdict {
            Verdict::Pass => ("pass", String::new()),
            Verdict::Fail(why) => {
                failed += 1;
                ("fail", why.clone())
            }
            Verdict::Capped(why) => {
                capped += 1;
                ("capped", why.clone())
            }
        };
        let sep = if detail.is_empty() { "" } else { "  " };
        writeln!(text, "{:>4}  {:<8}  {word}{sep}{detail}", r.instance, r.law.to_string()).expect("string write");
        rows.push(json!({"instance": r.instance, "law": r.law.to_string(), "verdict": word, "detail": detail}));
    }
    writeln!(text, "{} checks, {failed} failed, {capped} capped", records.len()).expect("string write");
    let (verdict, code) = match (failed, capped) {
        (0, 0) => ("pass", 0),
        (0, _) => ("cap_exceeded", 2),
        _ => ("fail", 1),
    };
    Ok(Report { verdict, code, text, data: json!({"seed": ctx.seed, "checks": rows}), value: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> String {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path.display().to_string()
    }

    fn run(args: &[&str]) -> Outcome {
        run_command(std::iter::once("finpoly").chain(args.iter().copied()))
    }

    fn scratch(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("finpoly-cli-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    const SQUARE: &str = r#"{"discrete_poly": {"I": 1, "J": 1, "ops": [{"color": 0, "param_colors": [0, 0]}]}}"#;

    #[test]
    fn documented_results() {
        let dir = scratch("doc");
        let xsq = write(&dir, "xsq.json", SQUARE);
        let out = run(&["autos", &xsq]);
        assert_eq!((out.code, out.stdout.as_str()), (0, "2\n"));

        let exp1 = write(&dir, "exp1.json", r#"{"exp": {"discrete": 1}}"#);
        let out = run(&["card", &exp1, "--trunc", "4"]);
        assert_eq!((out.code, out.stdout.as_str()), (0, "65/24\n"));

        let curried = dir.join("c.json").display().to_string();
        let back = dir.join("u.json").display().to_string();
        assert_eq!(run(&["curry", &xsq, "--split", "0", "-o", &curried]).code, 0);
        assert_eq!(run(&["uncurry", &curried, "-o", &back]).code, 0);
        let out = run(&["equiv", &xsq, &back]);
        assert_eq!(out.code, 0, "{out:?}");
        assert_eq!(run(&["autos", &curried]).stdout, "2\n");
    }

    #[test]
    fn verdicts_and_errors() {
        let dir = scratch("verdicts");
        let xsq = write(&dir, "xsq.json", SQUARE);
        let x3 = write(&dir, "x3.json", &SQUARE.replace("[0, 0]", "[0, 0, 0]"));
        assert_eq!(run(&["equiv", &xsq, &x3]).code, 1);

        let broken = write(&dir, "broken.json", "{\"discrete\": 2,\n]");
        let out = run(&["validate", &broken]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("line 2"), "{}", out.stderr);

        let missing = write(
            &dir,
            "missing.json",
            r#"{"objects": 1, "morphisms": [{"src": 0, "dst": 0}], "identities": [0], "compose": [[0, 0, 0]], "inverses": []}"#,
        );
        let out = run(&["validate", &missing]);
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains("missing inverse entry for morphism 0"), "{}", out.stdout);

        let out = run(&["autos", &xsq, "--caps", "nonsense"]);
        assert_eq!(out.code, 2);
        assert_eq!(run(&["frobnicate"]).code, 2);
    }

    #[test]
    fn json_reports_are_stable() {
        let dir = scratch("json");
        let xsq = write(&dir, "xsq.json", SQUARE);
        let a = run(&["--json", "autos", &xsq]);
        let b = run(&["autos", &xsq, "--json"]);
        assert_eq!(a, b);
        let doc: Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(doc, json!({"command": "autos", "verdict": "ok", "data": {"count": 2}}));

        let canonical = dir.join("canonical.json").display().to_string();
        assert_eq!(run(&["validate", &xsq, "-o", &canonical]).code, 0);
        let again = dir.join("again.json").display().to_string();
        assert_eq!(run(&["validate", &canonical, "-o", &again]).code, 0);
        assert_eq!(std::fs::read_to_string(&canonical).unwrap(), std::fs::read_to_string(&again).unwrap());
    }

    #[test]
    fn eval_compose_and_laws() {
        let dir = scratch("ops");
        let xsq = write(&dir, "xsq.json", SQUARE);
        let three = write(&dir, "three.json", r#"{"base": {"discrete": 1}, "constant": {"discrete": 3}}"#);
        let out = run(&["eval", &xsq, &three]);
        assert_eq!(out.stdout, "0: 9 objects, 9 morphisms, 9 components, cardinality 9\n");
        let out = run(&["compose", &xsq, &xsq]);
        assert!(out.stdout.contains("(0, 0): arity 4"), "{}", out.stdout);
        let out = run(&["laws", "--seed", "3", "--count", "2"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(out.stdout.ends_with("10 checks, 0 failed, 0 capped\n"));
    }
}
