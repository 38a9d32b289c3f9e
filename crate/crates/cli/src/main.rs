//! Command-line driver: computations and verification suites with JSON or text output.

mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sugawara::casimir::{casimir_element, factorial_sym, multiset_image, verify_casimir};
use sugawara::characters::{admissible_subsets, char_sum, kappa_vanishing_check, vanishing_series_check};
use sugawara::harmonic::{basis, refined_basis, verify_basis};
use sugawara::sugawara::{
    current_algebra_verify, phi_coefficients, pfaffian_ssv, psi_coefficients, verify_gl_images,
    verify_main_theorem, verify_pfaffian,
};
use sugawara::tensor::{gl_symmetrizer, symmetrizer, symmetrizer_rank_formula, verify_symmetrizer, GlKind, Method};
use sugawara::text::{parse_pi0, parse_uelem};
use sugawara::walg::{h_family, miura_generators, screening_apply, verify_annihilation};
use sugawara::{suite, AlgebraSpec, Family, Rational as Q, UAlgebra};

#[derive(Parser)]
#[command(name = "sugawara", version, about = "Segal-Sugawara vectors, W-algebras and their checks, in exact arithmetic")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timings in the output (makes it nondeterministic)
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Copy)]
struct SpecArgs {
    /// A, B, C or D
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Rank n (for type A: the matrix size N)
    #[arg(long)]
    n: usize,
}

impl SpecArgs {
    fn spec(&self) -> sugawara::Result<AlgebraSpec> {
        AlgebraSpec::new(self.family, self.n)
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Product,
    Expansion,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// H^(m)
    Sym,
    /// A^(m)
    Antisym,
}

impl KindArg {
    fn kind(self) -> GlKind {
        match self {
            KindArg::Sym => GlKind::Sym,
            KindArg::Antisym => GlKind::Antisym,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SugawaraWhat {
    /// coefficients of gamma_m tr S^(m) (tau + F[-1]_1)...(tau + F[-1]_m)
    Phi,
    /// the same trace with H^(m) (type A only)
    Psi,
    /// Harish-Chandra image of the coefficients against the symmetric functions
    Image,
    /// the u-series form for the current algebra
    Current,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HcMap {
    Chi,
    Top,
    Classical,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CharWhat {
    Count,
    Sum,
    Admissible,
    Kappa,
    Vanishing,
}

#[derive(Subcommand)]
enum Command {
    /// The symmetrizer S^(m) (or H^(m), A^(m) for type A)
    Symmetrizer {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Product)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = KindArg::Sym)]
        kind: KindArg,
        /// Print all nonzero entries
        #[arg(long)]
        entries: bool,
    },
    /// Segal-Sugawara vectors from symmetrizer traces
    Sugawara {
        #[arg(value_enum)]
        what: SugawaraWhat,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: usize,
        /// u-depth for `current`
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Antisym)]
        kind: KindArg,
    },
    /// Harish-Chandra image of an element given in text form
    Hc {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value_t = HcMap::Chi)]
        map: HcMap,
    },
    /// The Pfaffian of F~[-1] for o_2n and its image
    Pfaffian {
        #[arg(long)]
        n: usize,
        /// Also print the element itself
        #[arg(long)]
        element: bool,
    },
    /// Apply the screening operators to polynomials in mu[i;r]; exit 1 unless all vanish
    WalgScreen {
        #[command(flatten)]
        spec: SpecArgs,
        /// May be repeated
        #[arg(long, required = true)]
        element: Vec<String>,
    },
    /// Generators of the classical W-algebra
    Miura {
        #[command(flatten)]
        spec: SpecArgs,
        /// Largest index
        #[arg(long)]
        m: usize,
        /// The h-family instead of the Miura coefficients
        #[arg(long)]
        hfamily: bool,
    },
    /// Character sums, admissible subsets and the lambda-series identities
    Characters {
        #[arg(value_enum)]
        what: CharWhat,
        /// Needed for `count` and `vanishing`
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        /// Rank n
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Random points for `kappa`
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree bound for `vanishing`
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Harmonic bases of the symmetrizer images
    Harmonic {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: usize,
        /// The symplectic basis with one admissible monomial per vector
        #[arg(long)]
        refined: bool,
    },
    /// Casimir elements and their Harish-Chandra images
    Casimir {
        #[command(flatten)]
        spec: SpecArgs,
        /// The element has degree 2k
        #[arg(long)]
        k: usize,
    },
    /// Verification suites; `all` runs the whole matrix
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// all, main-theorem, pfaffian, gl-images, current, symmetrizer, walg,
    /// characters, harmonic, casimir, commutativity, or a criterion number 1..11
    suite: String,
    /// With --n, run one check on this family instead of the suite matrix
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    /// Degree for main-theorem, gl-images, current, symmetrizer, characters, harmonic
    #[arg(long)]
    m: Option<usize>,
    /// Casimir index (the element has degree 2k)
    #[arg(long)]
    k: Option<usize>,
    /// u-depth for `current`
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = KindArg::Antisym)]
    kind: KindArg,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// What a command produced: the payload, an optional text rendering and whether
/// every check in it passed.
struct Outcome {
    json: Value,
    text: Option<String>,
    ok: bool,
}

impl Outcome {
    fn value(json: Value) -> Self {
        Outcome { json, text: None, ok: true }
    }

    fn check(json: Value, ok: bool) -> Self {
        Outcome { json, text: None, ok }
    }
}

enum Failure {
    Usage(String),
}

impl From<sugawara::Error> for Failure {
    fn from(e: sugawara::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run = Result<Outcome, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => {
            let mut payload = out.json;
            if !cli.timings {
                render::strip_timings(&mut payload);
            }
            let mut doc = json!({"schema": "1"});
            if let (Value::Object(d), Value::Object(p)) = (&mut doc, payload.clone()) {
                d.extend(p);
            }
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&doc).expect("serializable")),
                Format::Text => print!("{}", out.text.unwrap_or_else(|| render::text(&payload))),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: &Command) -> Run {
    match cmd {
        Command::Symmetrizer { spec, m, method, kind, entries } => cmd_symmetrizer(spec, *m, *method, *kind, *entries),
        Command::Sugawara { what, spec, m, depth, kind } => cmd_sugawara(*what, spec, *m, *depth, *kind),
        Command::Hc { spec, element, map } => cmd_hc(spec, element, *map),
        Command::Pfaffian { n, element } => cmd_pfaffian(*n, *element),
        Command::WalgScreen { spec, element } => cmd_screen(spec, element),
        Command::Miura { spec, m, hfamily } => cmd_miura(spec, *m, *hfamily),
        Command::Characters { what, family, n, m, trials, seed, degree } => {
            cmd_characters(*what, *family, *n, *m, *trials, *seed, *degree)
        }
        Command::Harmonic { spec, m, refined } => cmd_harmonic(spec, *m, *refined),
        Command::Casimir { spec, k } => cmd_casimir(spec, *k),
        Command::Verify(v) => cmd_verify(v),
    }
}

fn cmd_symmetrizer(args: &SpecArgs, m: usize, method: MethodArg, kind: KindArg, entries: bool) -> Run {
    let spec = args.spec()?;
    let method = match method {
        MethodArg::Product => Method::Product,
        MethodArg::Expansion => Method::Expansion,
    };
    let op = if spec.family == Family::A {
        gl_symmetrizer::<Q>(spec.dim(), m, kind.kind(), method)
    } else {
        symmetrizer::<Q>(&spec, m, method)?
    };
    let mut v = json!({
        "spec": spec.to_json(),
        "m": m,
        "rank": op.rank(),
        "trace": op.trace().to_string(),
        "nnz": op.nnz(),
    });
    if spec.family != Family::A {
        v["rank_formula"] = json!(symmetrizer_rank_formula::<Q>(&spec, m).to_string());
    }
    if entries {
        v["operator"] = op.to_json();
    }
    Ok(Outcome::value(v))
}

fn cmd_sugawara(what: SugawaraWhat, args: &SpecArgs, m: usize, depth: usize, kind: KindArg) -> Run {
    let spec = args.spec()?;
    let alg = UAlgebra::new(spec);
    match what {
        SugawaraWhat::Phi | SugawaraWhat::Psi => {
            let t = if what == SugawaraWhat::Psi {
                if spec.family != Family::A {
                    return Err(Failure::Usage("psi is defined for type A".into()));
                }
                psi_coefficients(&alg, m)?
            } else {
                phi_coefficients(&alg, m)?
            };
            let mut text = String::new();
            for (a, c) in t.coefficients.iter().enumerate() {
                text.push_str(&format!("tau^{}: {}\n", m - a, alg.show(c)));
            }
            let v = json!({"spec": spec.to_json(), "m": m, "coefficients": t.to_json(spec.family)});
            Ok(Outcome { json: v, text: Some(text), ok: true })
        }
        SugawaraWhat::Image => {
            let r = if spec.family == Family::A {
                verify_gl_images(&alg, m, kind.kind())?
            } else {
                verify_main_theorem(&alg, m)?
            };
            Ok(Outcome::check(r.to_json(), r.matched))
        }
        SugawaraWhat::Current => {
            let r = current_algebra_verify(&alg, m, depth)?;
            Ok(Outcome::check(r.to_json(), r.matched))
        }
    }
}

fn cmd_hc(args: &SpecArgs, element: &str, map: HcMap) -> Run {
    let spec = args.spec()?;
    let alg = UAlgebra::new(spec);
    let e = parse_uelem(&alg, element)?;
    let image = match map {
        HcMap::Chi => alg.hc_chi(&e)?.to_string(),
        HcMap::Top => alg.hc_top(&e)?.to_string(),
        HcMap::Classical => alg.hc_classical(&e)?.to_string(),
    };
    Ok(Outcome::value(json!({"spec": spec.to_json(), "element": alg.show(&e), "image": image})))
}

fn cmd_pfaffian(n: usize, element: bool) -> Run {
    let alg = UAlgebra::new(AlgebraSpec::new(Family::D, n)?);
    let r = verify_pfaffian(&alg)?;
    let mut v = r.to_json();
    if element {
        v["element"] = json!(alg.show(&pfaffian_ssv(&alg)?));
    }
    Ok(Outcome::check(v, r.matched))
}

fn cmd_screen(args: &SpecArgs, elements: &[String]) -> Run {
    let family = args.family;
    let n = args.n;
    let top = if family == Family::A { n.saturating_sub(1) } else { n };
    let parsed: Vec<_> = elements.iter().map(|s| parse_pi0::<Q>(s)).collect::<Result<_, _>>()?;
    let mut images = Vec::new();
    for p in &parsed {
        let mut per = Vec::new();
        for i in 1..=top {
            per.push(json!({"i": i, "image": screening_apply(family, n, i, p)?.to_string()}));
        }
        images.push(json!({"element": p.to_string(), "images": per}));
    }
    let a = verify_annihilation(family, n, &parsed)?;
    let v = json!({"family": family.letter().to_string(), "n": n, "annihilated": a.all_zero, "elements": images});
    Ok(Outcome::check(v, a.all_zero))
}

fn cmd_miura(args: &SpecArgs, m: usize, hfamily: bool) -> Run {
    let (family, n) = (args.family, args.n);
    args.spec()?;
    let gens: Vec<(usize, String)> = if hfamily {
        (1..=m).map(|k| (k, h_family::<Q>(family, n, k).apply_to_one().to_string())).collect()
    } else {
        let first = if family == Family::A { 1 } else { 2 };
        miura_generators::<Q>(family, n, m)?.into_iter().enumerate().map(|(i, p)| (i + first, p.to_string())).collect()
    };
    let text = gens.iter().map(|(k, p)| format!("{}_{k} = {p}\n", if hfamily { "H" } else { "E" })).collect();
    let v = json!({
        "family": family.letter().to_string(),
        "n": n,
        "generators": gens.iter().map(|(k, p)| json!({"index": k, "element": p})).collect::<Vec<_>>(),
    });
    Ok(Outcome { json: v, text: Some(text), ok: true })
}

fn cmd_characters(what: CharWhat, family: Option<Family>, n: usize, m: usize, trials: usize, seed: u64, degree: usize) -> Run {
    let need_family = || family.ok_or_else(|| Failure::Usage("--family is required".into()));
    match what {
        CharWhat::Count | CharWhat::Sum => {
            let spec = AlgebraSpec::new(need_family()?, n)?;
            let c = char_sum(&spec, m)?;
            let v = if what == CharWhat::Count { json!({"count": c.count()}) } else { c.to_json() };
            Ok(Outcome::value(v))
        }
        CharWhat::Admissible => {
            let s = admissible_subsets(n, m);
            Ok(Outcome::value(json!({"n": n, "m": m, "count": s.len(), "subsets": s})))
        }
        CharWhat::Kappa => {
            let r = kappa_vanishing_check::<Q>(n, trials, seed)?;
            Ok(Outcome::check(r.to_json(), r.passed()))
        }
        CharWhat::Vanishing => {
            let f = need_family()?;
            let ok = vanishing_series_check::<Q>(f, n, degree)?;
            Ok(Outcome::check(json!({"family": f.letter().to_string(), "n": n, "degree": degree, "match": ok}), ok))
        }
    }
}

fn cmd_harmonic(args: &SpecArgs, m: usize, refined: bool) -> Run {
    let spec = args.spec()?;
    let vecs = if refined { refined_basis::<Q>(&spec, m)? } else { basis::<Q>(&spec, m)? };
    let report = verify_basis::<Q>(&spec, m)?;
    let list: Vec<Value> = vecs
        .iter()
        .map(|b| json!({"label": b.label, "leading": b.leading, "vector": b.vector.to_string()}))
        .collect();
    let mut text = String::new();
    for b in &vecs {
        text.push_str(&format!("{:?}: {}\n", b.label, b.vector));
    }
    text.push_str(&format!("checks passed: {}\n", report.passed()));
    let v = json!({"spec": spec.to_json(), "m": m, "basis": list, "report": report.to_json()});
    Ok(Outcome { json: v, text: Some(text), ok: report.passed() })
}

fn cmd_casimir(args: &SpecArgs, k: usize) -> Run {
    let spec = args.spec()?;
    let alg = UAlgebra::new(spec);
    let elem = casimir_element(&alg, k)?;
    let mut v = json!({"spec": spec.to_json(), "k": k, "element": alg.show(&elem)});
    let verifiable = !(spec.family == Family::C && 2 * k > spec.n);
    if verifiable {
        let r = verify_casimir(&alg, k)?;
        v["report"] = r.to_json();
        Ok(Outcome::check(v, r.matched()))
    } else {
        v["multiset"] = json!(multiset_image::<Q>(&spec, k)?.to_string());
        v["factorial"] = json!(factorial_sym::<Q>(&spec, k)?.to_string());
        Ok(Outcome::value(v))
    }
}

fn criteria_for(name: &str) -> Option<Vec<usize>> {
    let ids = match name {
        "all" => (1..=11).collect(),
        "main-theorem" => vec![1, 2, 3],
        "pfaffian" => vec![2],
        "gl-images" => vec![4],
        _ => {
            if let Ok(k) = name.parse::<usize>() {
                if (1..=11).contains(&k) {
                    return Some(vec![k]);
                }
                return None;
            }
            vec![suite::NAMES.iter().position(|s| *s == name)? + 1]
        }
    };
    Some(ids)
}

/// A single verification when `--family` and `--n` are given.
fn single(v: &VerifyArgs) -> Option<Run> {
    let family = v.family?;
    let n = v.n?;
    let run = || -> Run {
        let spec = AlgebraSpec::new(family, n)?;
        let alg = UAlgebra::new(spec);
        let need_m = || v.m.ok_or_else(|| Failure::Usage("--m is required".into()));
        let need_k = || v.k.ok_or_else(|| Failure::Usage("--k is required".into()));
        match v.suite.as_str() {
            "main-theorem" => {
                let r = verify_main_theorem(&alg, need_m()?)?;
                Ok(Outcome::check(r.to_json(), r.matched))
            }
            "gl-images" => {
                let r = verify_gl_images(&alg, need_m()?, v.kind.kind())?;
                Ok(Outcome::check(r.to_json(), r.matched))
            }
            "pfaffian" => {
                let r = verify_pfaffian(&alg)?;
                Ok(Outcome::check(r.to_json(), r.matched))
            }
            "current" => {
                let r = current_algebra_verify(&alg, need_m()?, v.depth)?;
                Ok(Outcome::check(r.to_json(), r.matched))
            }
            "symmetrizer" => {
                let r = verify_symmetrizer::<Q>(&spec, need_m()?)?;
                Ok(Outcome::check(r.to_json(), r.passed()))
            }
            "harmonic" => {
                let r = verify_basis::<Q>(&spec, need_m()?)?;
                Ok(Outcome::check(r.to_json(), r.passed()))
            }
            "casimir" => {
                let r = verify_casimir(&alg, need_k()?)?;
                Ok(Outcome::check(r.to_json(), r.matched()))
            }
            "characters" => {
                let r = kappa_vanishing_check::<Q>(n, v.trials, v.seed)?;
                Ok(Outcome::check(r.to_json(), r.passed()))
            }
            other => Err(Failure::Usage(format!("suite {other} takes no spec flags"))),
        }
    };
    Some(run())
}

fn cmd_verify(v: &VerifyArgs) -> Run {
    if let Some(r) = single(v) {
        let mut out = r?;
        if let Value::Object(o) = &mut out.json {
            o.insert("suite".into(), json!(v.suite));
        }
        return Ok(out);
    }
    let ids = criteria_for(&v.suite).ok_or_else(|| Failure::Usage(format!("unknown suite {}", v.suite)))?;
    let mut results: Vec<suite::Criterion> = Vec::new();
    for id in ids {
        let c = suite::run(id, v.seed);
        for item in &c.items {
            eprintln!("[{id}] {} {} ({} us)", if item.passed { "PASS" } else { "FAIL" }, item.label, item.micros);
        }
        results.push(c);
    }
    results.sort_by_key(|c| c.id);
    let ok = results.iter().all(|c| c.passed());
    let mut text = String::new();
    for c in &results {
        text.push_str(&format!("{} criterion {}: {}\n", if c.passed() { "PASS" } else { "FAIL" }, c.id, c.title));
    }
    let json = json!({
        "suite": v.suite,
        "match": ok,
        "criteria": results.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    });
    Ok(Outcome { json, text: Some(text), ok })
}
