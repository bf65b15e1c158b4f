//! `kch`: command-line front end for the knot, Chern-Simons and Feynman
//! toolkit.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a work budget
//! is exhausted, 2 on parse or usage errors.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kch_core::augment::{augmentation_exists, augmentation_polynomial, TorusPoint};
use kch_core::dga::Dga;
use kch_core::feynman::{
    connected_scalar_series, graph_classes, matrix_model_series, ribbon_census, ribbon_faces,
    scalar_model_series, stein_oracle_series, wick_oracle, CubicForm, Pairing, QuadraticForm,
    RibbonGraph,
};
use kch_core::groebner::GroebnerLimits;
use kch_core::homfly::{
    complete_homogeneous, homfly_with, inverse_determinant_series, parse_pd,
    symmetric_trace_series, wilson_loop_with, HolonomySpectrum, HomflyOptions, LinkDiagram,
    ResolutionStrategy,
};
use kch_core::mirror::{branch_series, p_series, potential_series, verify_on_curve, QValue};
use kch_core::{Error, LaurentPolynomial, Ring, Scalar};

/// Largest `N^(3m)` index assignment count the matrix command will brute
/// force with the Wick oracle.
const WICK_BUDGET: u64 = 2_000_000;

#[derive(Parser)]
#[command(name = "kch", version, about = "Exact knot, Chern-Simons and Feynman graph computations")]
struct Cli {
    /// Emit one JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Differential graded algebras.
    #[command(subcommand)]
    Dga(DgaCommand),
    /// Augmentation varieties.
    #[command(subcommand)]
    Aug(AugCommand),
    /// Perturbative Gaussian integrals and ribbon graphs.
    #[command(subcommand)]
    Feynman(FeynmanCommand),
    /// HOMFLY polynomial of a PD diagram.
    Homfly(HomflyArgs),
    /// Chern-Simons Wilson loop at level k.
    Wilson(WilsonArgs),
    /// Symmetric-power traces of a holonomy.
    Symtrace(SymtraceArgs),
    /// Branches of a mirror curve.
    #[command(subcommand)]
    Mirror(MirrorCommand),
}

#[derive(Subcommand)]
enum DgaCommand {
    /// Loads a DGA file and checks that the differential squares to zero.
    Check { file: String },
}

#[derive(Subcommand)]
enum AugCommand {
    /// Eliminates the degree-0 generators and prints the augmentation polynomial.
    Poly { file: String },
    /// Decides whether an augmentation exists at a torus point.
    Exists {
        file: String,
        /// Torus values such as `X=2,P=1/3,Q=1`.
        #[arg(long)]
        point: String,
    },
}

#[derive(Subcommand)]
enum FeynmanCommand {
    /// Graph sum of the cubic scalar model against the integration-by-parts oracle.
    Scalar {
        #[arg(long)]
        n: usize,
        /// Quadratic form as a JSON matrix of rationals.
        #[arg(long)]
        q: String,
        /// Symmetric cubic form as a JSON 3-tensor of rationals.
        #[arg(long)]
        c: String,
        #[arg(long)]
        order: usize,
    },
    /// Hermitian matrix model with a `tr M^3` vertex.
    Matrix {
        #[arg(long = "N")]
        n: i64,
        #[arg(long)]
        order: usize,
    },
    /// Genus and boundary count of ribbon graphs.
    Ribbon {
        /// Census of connected pairings through this order.
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// A single pairing as its partner list, e.g. `3,4,5,0,1,2`.
        #[arg(long, conflicts_with = "order")]
        pairing: Option<String>,
        /// Vertices whose cyclic order is reversed, e.g. `1`.
        #[arg(long, requires = "pairing")]
        reversed: Option<String>,
    },
}

#[derive(Args)]
struct HomflyArgs {
    /// PD file, or an inline PD string.
    #[arg(long)]
    pd: String,
    /// `min`, `max` or `seed:<n>`.
    #[arg(long, default_value = "min")]
    strategy: String,
}

#[derive(Args)]
struct WilsonArgs {
    #[arg(long)]
    pd: String,
    #[arg(long = "N")]
    n: i64,
    #[arg(long)]
    k: i64,
}

#[derive(Args)]
struct SymtraceArgs {
    /// Eigenvalues, e.g. `1, -1/2, (1+i)`.
    #[arg(long, allow_hyphen_values = true)]
    eigs: String,
    #[arg(long)]
    order: usize,
}

#[derive(Subcommand)]
enum MirrorCommand {
    /// Power-series branch at X = 0 with the p and W series.
    Branch {
        /// Curve in X, P, Q: a polynomial, a file holding one, or a DGA file.
        #[arg(long)]
        poly: String,
        #[arg(long)]
        order: usize,
        /// Numeric value of Q; symbolic when omitted.
        #[arg(long = "Q", allow_hyphen_values = true)]
        q: Option<String>,
        /// Value of P at X = 0.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        p0: String,
    },
}

/// What a command produced; `ok = false` maps to exit code 1.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }
}

enum Failure {
    Usage(String),
    Core { module: &'static str, error: Error },
}

type Run<T> = std::result::Result<T, Failure>;

trait InModule<T> {
    fn module(self, module: &'static str) -> Run<T>;
}

impl<T> InModule<T> for kch_core::Result<T> {
    fn module(self, module: &'static str) -> Run<T> {
        self.map_err(|error| Failure::Core { module, error })
    }
}

fn exit_code(error: &Error) -> u8 {
    match error {
        Error::ResourceLimit(_) | Error::Domain(_) | Error::Branch(_) => 1,
        _ => 2,
    }
}

fn read_file(path: &str) -> Run<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read `{path}`: {e}")))
}

/// File contents when `arg` names an existing file, else `arg` itself.
fn file_or_inline(arg: &str) -> Run<String> {
    if Path::new(arg).is_file() {
        read_file(arg)
    } else {
        Ok(arg.to_string())
    }
}

fn limits() -> Run<Option<usize>> {
    match std::env::var("KCH_MAX_STEPS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("KCH_MAX_STEPS must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn groebner_limits() -> Run<GroebnerLimits> {
    let mut l = GroebnerLimits::default();
    if let Some(steps) = limits()? {
        l.max_steps = steps;
    }
    Ok(l)
}

fn homfly_options(strategy: ResolutionStrategy) -> Run<HomflyOptions> {
    let mut o = HomflyOptions {
        strategy,
        ..HomflyOptions::default()
    };
    if let Some(steps) = limits()? {
        o.max_steps = steps;
    }
    Ok(o)
}

fn parse_strategy(s: &str) -> Run<ResolutionStrategy> {
    match s {
        "min" => Ok(ResolutionStrategy::MinLabel),
        "max" => Ok(ResolutionStrategy::MaxLabel),
        _ => s
            .strip_prefix("seed:")
            .and_then(|n| n.parse().ok())
            .map(ResolutionStrategy::Seeded)
            .ok_or_else(|| Failure::Usage(format!("unknown strategy `{s}`; use min, max or seed:<n>"))),
    }
}

fn load_dga(file: &str) -> Run<Dga> {
    Dga::load(&read_file(file)?).module("dga")
}

fn load_pd(arg: &str) -> Run<LinkDiagram> {
    parse_pd(&file_or_inline(arg)?).module("homfly")
}

fn dga_check(file: &str) -> Run<Outcome> {
    let d = load_dga(file)?;
    let report = d.check_d_squared();
    let mut text = format!("dga {}: {} generators\n", d.name(), d.generators().len());
    let mut gens = Vec::new();
    for (i, g) in d.generators().iter().enumerate() {
        let dg = d.format(d.differential_of(i));
        text.push_str(&format!("  d({}) = {}    [degree {}]\n", g.name, dg, g.degree));
        gens.push(json!({"name": g.name, "degree": g.degree, "differential": dg}));
    }
    let failures: Vec<Value> = report
        .failures()
        .map(|(name, e)| json!({"generator": name, "d_squared": d.format(e)}))
        .collect();
    if report.passed() {
        text.push_str("d^2 = 0 on every generator");
    } else {
        for (name, e) in report.failures() {
            text.push_str(&format!("d^2({name}) = {} != 0\n", d.format(e)));
        }
        text.push_str("d^2 = 0 FAILED");
    }
    Ok(Outcome {
        text,
        json: json!({
            "name": d.name(),
            "generators": gens,
            "d_squared_zero": report.passed(),
            "failures": failures,
        }),
        ok: report.passed(),
    })
}

fn aug_poly(file: &str) -> Run<Outcome> {
    let d = load_dga(file)?;
    let r = augmentation_polynomial(&d, groebner_limits()?).module("augment")?;
    let json: Value = serde_json::from_str(&r.to_json()).expect("valid JSON");
    let text = match &r.polynomial {
        Some(p) if r.principal => p.to_string(),
        _ => {
            let mut t = String::from("non-principal augmentation variety; generators:");
            for g in &r.generators {
                t.push_str(&format!("\n  {g}"));
            }
            for n in &r.notes {
                t.push_str(&format!("\nnote: {n}"));
            }
            t
        }
    };
    Ok(Outcome::ok(text, json))
}

fn aug_exists(file: &str, point: &str) -> Run<Outcome> {
    let d = load_dga(file)?;
    let pt = TorusPoint::parse(point).module("augment")?;
    let exists = augmentation_exists(&d, &pt, groebner_limits()?).module("augment")?;
    let text = format!(
        "augmentation at {point}: {}",
        if exists { "exists" } else { "none" }
    );
    Ok(Outcome::ok(text, json!({"point": point, "exists": exists})))
}

fn feynman_scalar(n: usize, q: &str, c: &str, order: usize) -> Run<Outcome> {
    let q = QuadraticForm::parse_json(q).module("feynman")?;
    let c = CubicForm::parse_json(c).module("feynman")?;
    if q.dim() != n || c.dim() != n {
        return Err(Failure::Usage(format!(
            "--n {n} does not match the forms (q is {}x{}, c has dimension {})",
            q.dim(),
            q.dim(),
            c.dim()
        )));
    }
    let graphs = scalar_model_series(&q, &c, order).module("feynman")?;
    let oracle = stein_oracle_series(&q, &c, order).module("feynman")?;
    let connected = connected_scalar_series(&q, &c, order).module("feynman")?;
    let mut text = format!("{:>5}  {:>20}  {:>20}  {:>20}  match\n", "order", "graph-sum", "oracle", "connected");
    let mut rows = Vec::new();
    let mut all = true;
    for m in 0..=order {
        let g = graphs.coefficient(m);
        let o = oracle.coefficient(m);
        let f = connected.coefficient(m);
        let hit = g == o;
        all &= hit;
        text.push_str(&format!(
            "{:>5}  {:>20}  {:>20}  {:>20}  {}\n",
            m,
            g.to_string(),
            o.to_string(),
            f.to_string(),
            if hit { "match" } else { "MISMATCH" }
        ));
        rows.push(json!({
            "order": m,
            "graph_sum": g.to_string(),
            "oracle": o.to_string(),
            "connected": f.to_string(),
            "match": hit,
        }));
    }
    let mut classes = Vec::new();
    for m in 1..=order.min(4) {
        let cls = graph_classes(m);
        let conn: Vec<_> = cls.iter().filter(|k| k.connected).collect();
        if conn.is_empty() {
            continue;
        }
        text.push_str(&format!("hbar^{m}: {} connected isomorphism classes\n", conn.len()));
        classes.push(json!({"order": m, "connected_classes": conn.len()}));
    }
    text.push_str(if all { "graph sum matches oracle" } else { "graph sum DIFFERS from oracle" });
    Ok(Outcome {
        text,
        json: json!({"rows": rows, "classes": classes, "match": all}),
        ok: all,
    })
}

fn feynman_matrix(n: i64, order: usize) -> Run<Outcome> {
    if n < 1 {
        return Err(Failure::Usage(format!("--N must be at least 1, got {n}")));
    }
    let series = matrix_model_series(order);
    let mut text = format!(
        "{:>5}  {:>28}  {:>16}  {:>16}  match\n",
        "order",
        "graph-sum(N)",
        format!("at N={n}"),
        "wick oracle"
    );
    let mut rows = Vec::new();
    let mut all = true;
    for m in 0..=order {
        let poly = series.coefficient(m);
        let value = poly.substitute("N", &Scalar::from_int(n)).module("feynman")?;
        let value = value.embed(&Ring::empty()).module("feynman")?.constant_term();
        let cost = (n as u64).checked_pow(3 * m as u32);
        let oracle = match cost {
            Some(c) if c <= WICK_BUDGET => Some(wick_oracle(n as usize, m)),
            _ => None,
        };
        let hit = oracle.as_ref().map(|o| *o == value);
        all &= hit.unwrap_or(true);
        text.push_str(&format!(
            "{:>5}  {:>28}  {:>16}  {:>16}  {}\n",
            m,
            poly.to_string(),
            value.to_string(),
            oracle.as_ref().map_or("skipped".into(), |o| o.to_string()),
            match hit {
                Some(true) => "match",
                Some(false) => "MISMATCH",
                None => "-",
            }
        ));
        rows.push(json!({
            "order": m,
            "polynomial": poly.to_string(),
            "value": value.to_string(),
            "oracle": oracle.map(|o| o.to_string()),
            "match": hit,
        }));
    }
    let (census_text, census) = census(order);
    text.push_str(&census_text);
    Ok(Outcome {
        text: text.trim_end().to_string(),
        json: json!({"N": n, "rows": rows, "census": census, "match": all}),
        ok: all,
    })
}

/// `(g, h)` tallies of connected ribbon graphs for orders `1..=order`.
fn census(order: usize) -> (String, Vec<Value>) {
    let mut text = String::new();
    let mut out = Vec::new();
    for m in 1..=order {
        for e in ribbon_census(m) {
            text.push_str(&format!(
                "order {m}: g={} h={} loops={} pairings={}\n",
                e.genus, e.faces, e.loops, e.pairings
            ));
            out.push(json!({
                "order": m,
                "genus": e.genus,
                "faces": e.faces,
                "loops": e.loops,
                "pairings": e.pairings,
            }));
        }
    }
    (text, out)
}

fn parse_usize_list(s: &str, what: &str) -> Run<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{what}: `{t}` is not a nonnegative integer")))
        })
        .collect()
}

fn feynman_ribbon(order: usize, pairing: Option<&str>, reversed: Option<&str>) -> Run<Outcome> {
    let Some(pairing) = pairing else {
        let (text, census) = census(order);
        return Ok(Outcome::ok(text.trim_end().to_string(), json!({"census": census})));
    };
    let partner = parse_usize_list(pairing, "--pairing")?;
    let h = partner.len();
    let valid = h % 6 == 0
        && partner
            .iter()
            .enumerate()
            .all(|(i, &j)| j < h && j != i && partner[j] == i);
    if !valid {
        return Err(Failure::Usage(
            "--pairing must be a fixed-point-free involution on 3v half-edges with v even".into(),
        ));
    }
    let p = Pairing::from_partner(partner);
    let mut flags = vec![false; p.vertices()];
    for v in parse_usize_list(reversed.unwrap_or(""), "--reversed")? {
        if v >= flags.len() {
            return Err(Failure::Usage(format!("--reversed: vertex {v} out of range")));
        }
        flags[v] = true;
    }
    let g = RibbonGraph::with_orientations(p, &flags);
    let inv = ribbon_faces(&g).module("feynman")?;
    let text = format!("genus {} faces {} loops {}", inv.genus, inv.faces, inv.loops);
    Ok(Outcome::ok(
        text,
        json!({"genus": inv.genus, "faces": inv.faces, "loops": inv.loops}),
    ))
}

fn homfly_cmd(args: &HomflyArgs) -> Run<Outcome> {
    let d = load_pd(&args.pd)?;
    let opts = homfly_options(parse_strategy(&args.strategy)?)?;
    let p = homfly_with(&d, opts).module("homfly")?;
    let text = format!(
        "{p}\ncrossings {} components {} writhe {}",
        d.crossing_count(),
        d.component_count(),
        d.writhe()
    );
    Ok(Outcome::ok(
        text,
        json!({
            "homfly": p.to_string(),
            "crossings": d.crossing_count(),
            "components": d.component_count(),
            "writhe": d.writhe(),
        }),
    ))
}

fn wilson_cmd(args: &WilsonArgs) -> Run<Outcome> {
    let d = load_pd(&args.pd)?;
    let w = wilson_loop_with(&d, args.n, args.k, homfly_options(ResolutionStrategy::MinLabel)?)
        .module("homfly")?;
    let agree = w.routes_agree(1e-9);
    let mut text = format!("W(N={}, k={}) = {w}", args.n, args.k);
    match w.float_value {
        Some(f) => text.push_str(&format!(
            "\nfloat route {:.12} {:+.12}i: {}",
            f.re,
            f.im,
            if agree { "agrees" } else { "DISAGREES" }
        )),
        None => text.push_str("\nfloat route skipped (z = 0)"),
    }
    Ok(Outcome {
        text,
        json: json!({
            "N": args.n,
            "k": args.k,
            "exact": w.exact_string(),
            "re": w.value.re,
            "im": w.value.im,
            "float": w.float_value.map(|f| json!({"re": f.re, "im": f.im})),
            "routes_agree": agree,
        }),
        ok: agree,
    })
}

fn symtrace_cmd(args: &SymtraceArgs) -> Run<Outcome> {
    let spec = HolonomySpectrum::parse(&args.eigs).module("homfly")?;
    let h = complete_homogeneous(&spec, args.order);
    let agree = symmetric_trace_series(&spec, args.order) == inverse_determinant_series(&spec, args.order);
    let mut text = String::new();
    for (k, v) in h.iter().enumerate() {
        text.push_str(&format!("h_{k} = {v}\n"));
    }
    text.push_str(if agree {
        "sum h_k t^k equals prod (1 - lambda t)^-1"
    } else {
        "sum h_k t^k DIFFERS from prod (1 - lambda t)^-1"
    });
    Ok(Outcome {
        text,
        json: json!({
            "h": h.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "matches_inverse_determinant": agree,
        }),
        ok: agree,
    })
}

fn load_curve(arg: &str) -> Run<LaurentPolynomial> {
    let text = file_or_inline(arg)?;
    if text.trim_start().starts_with('{') {
        let d = Dga::load(&text).module("dga")?;
        let r = augmentation_polynomial(&d, groebner_limits()?).module("augment")?;
        return match r.polynomial {
            Some(p) if r.principal => Ok(p),
            _ => Err(Failure::Core {
                module: "mirror",
                error: Error::Branch("the augmentation variety is not principal".into()),
            }),
        };
    }
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join(" ");
    LaurentPolynomial::parse(body.trim(), &Ring::torus()).module("mirror")
}

fn mirror_branch(poly: &str, order: usize, q: Option<&str>, p0: &str) -> Run<Outcome> {
    let a = load_curve(poly)?;
    let q = match q {
        None => QValue::Symbolic,
        Some(s) => QValue::Numeric(s.parse::<Scalar>().module("mirror")?),
    };
    let p0: Scalar = p0.parse().module("mirror")?;
    let b = branch_series(&a, q, &p0, order).module("mirror")?;
    let p = p_series(&b).module("mirror")?;
    let w = potential_series(&p);
    let check = verify_on_curve(&a, &b, order).module("mirror")?;
    let text = format!(
        "curve: {a} = 0\nbranch: {b}\np = log(P/P0) = {p}\nW = {w}\nverify_on_curve: {check}"
    );
    Ok(Outcome {
        text,
        json: json!({
            "curve": a.to_string(),
            "Q": b.q().to_string(),
            "p0": p0.to_string(),
            "order": order,
            "branch": b.series().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "p": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "W_linear": w.linear.to_string(),
            "W": w.series.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "verified": check.passed(),
            "first_failure": check.first_failure,
        }),
        ok: check.passed(),
    })
}

fn run(cli: &Cli) -> Run<Outcome> {
    match &cli.command {
        Command::Dga(DgaCommand::Check { file }) => dga_check(file),
        Command::Aug(AugCommand::Poly { file }) => aug_poly(file),
        Command::Aug(AugCommand::Exists { file, point }) => aug_exists(file, point),
        Command::Feynman(FeynmanCommand::Scalar { n, q, c, order }) => feynman_scalar(*n, q, c, *order),
        Command::Feynman(FeynmanCommand::Matrix { n, order }) => feynman_matrix(*n, *order),
        Command::Feynman(FeynmanCommand::Ribbon {
            order,
            pairing,
            reversed,
        }) => feynman_ribbon(*order, pairing.as_deref(), reversed.as_deref()),
        Command::Homfly(a) => homfly_cmd(a),
        Command::Wilson(a) => wilson_cmd(a),
        Command::Symtrace(a) => symtrace_cmd(a),
        Command::Mirror(MirrorCommand::Branch { poly, order, q, p0 }) => {
            mirror_branch(poly, *order, q.as_deref(), p0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                out.json.to_string()
            } else {
                out.text.trim_end().to_string()
            };
            // a closed pipe (`kch ... | head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("kch: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core { module, error }) => {
            eprintln!("kch: {module}: {error}");
            ExitCode::from(exit_code(&error))
        }
    }
}
