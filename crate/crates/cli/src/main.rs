//! Command-line interface over the affinet library: load and save JSON
//! documents for algebras, spaces, systems, and morphisms; run the point,
//! separation, product, coproduct, and canonical-morphism operations; and
//! drive the randomized verification suites.
//!
//! Exit codes: 0 the command succeeded and any checked property holds;
//! 1 a checked property was refuted (the report carries the
//! counterexample); 2 the input failed to parse or validate; 3 a
//! resource budget was exceeded.

mod docs;
mod report;

use affinet::algebra::{FiniteAlgebra, Variety};
use affinet::coproduct::coproduct;
use affinet::error::Error as CoreError;
use affinet::space::canonical_space_embedding;
use affinet::{
    audit_canonical_power, canonical_to_power, embed_space, enumerate_homs, is_t0_space,
    is_t0_system, product_systems, run_suite, sierpinski_space, sierpinski_system,
    sober_space_report, sober_system_report, spatialize, AffineSystem, Budget, GenConfig,
    SuiteId,
};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};
use std::io::Read;
use std::sync::Arc;

use docs::{
    algebra_payload, envelope, hom_payload, load_algebra, load_morphism, load_space,
    load_system, morphism_payload, parse_envelope, space_payload, system_payload,
    to_canonical_string, DocError, Envelope,
};
use report::{
    emit, emit_document, homs_payload, homs_text, suite_report_payload, suite_report_text,
    Format,
};

#[derive(Parser)]
#[command(
    name = "affinet",
    version,
    about = "Finite affine spaces and affine systems over ordered algebras"
)]
struct Cli {
    /// Report rendering; produced documents are always JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Property {
    T0,
    Sober,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and run its validity checks.
    Validate {
        file: String,
        /// Print the canonicalized document instead of a report.
        #[arg(long)]
        echo: bool,
    },
    /// List the points of an algebra: its homomorphisms into a base of
    /// truth values.
    Points {
        /// Algebra document whose points are enumerated.
        #[arg(long)]
        algebra: String,
        /// Algebra document of truth values the points map into.
        #[arg(long)]
        into: String,
    },
    /// Check a separation property of a space or system document.
    Check {
        #[arg(value_enum)]
        property: Property,
        file: String,
    },
    /// The space of points of a system document.
    Spatialize { file: String },
    /// Present a space document as an affine system.
    Embed { file: String },
    /// Write the Sierpinski system or space over a base algebra.
    #[command(group(ArgGroup::new("which").required(true).args(["system", "space"])))]
    Sierpinski {
        /// Produce the Sierpinski system.
        #[arg(long)]
        system: bool,
        /// Produce the Sierpinski space.
        #[arg(long)]
        space: bool,
        /// Base algebra document.
        #[arg(long = "L")]
        base: String,
    },
    /// The product of system documents over a common base.
    Product {
        #[arg(required = true, num_args = 1..)]
        files: Vec<String>,
    },
    /// Enumerate homomorphisms between two algebra documents.
    Homs { source: String, target: String },
    /// The coproduct of algebra documents of one variety.
    Coproduct {
        #[arg(required = true, num_args = 1..)]
        files: Vec<String>,
    },
    /// Audit the canonical morphism of a system (or space) into a power
    /// of the Sierpinski object over its base.
    Canonical { file: String },
    /// Run a randomized verification suite.
    Verify {
        /// Suite name, e.g. thm1, prop2, cor2, coprodUP, example4.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Variety tag: set, supsl, frame, cbalg, or uquant.
        #[arg(long)]
        variety: String,
        /// Base algebra document of truth values (defaults per variety).
        #[arg(long = "L")]
        base: Option<String>,
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long)]
        max_points: Option<usize>,
        #[arg(long)]
        max_algebra: Option<usize>,
        /// Materialize Sierpinski powers where a suite offers the
        /// cross-check (can be very large; off by default).
        #[arg(long)]
        materialize_powers: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let budget = Budget::default();
    let format = cli.format;
    let result = match cli.command {
        Command::Validate { file, echo } => cmd_validate(&file, echo, format, &budget),
        Command::Points { algebra, into } => cmd_points(&algebra, &into, format, &budget),
        Command::Check { property, file } => cmd_check(property, &file, format, &budget),
        Command::Spatialize { file } => cmd_spatialize(&file, format, &budget),
        Command::Embed { file } => cmd_embed(&file, format, &budget),
        Command::Sierpinski { system, space, base } => {
            cmd_sierpinski(system, space, &base, format, &budget)
        }
        Command::Product { files } => cmd_product(&files, format, &budget),
        Command::Homs { source, target } => cmd_homs(&source, &target, format, &budget),
        Command::Coproduct { files } => cmd_coproduct(&files, format, &budget),
        Command::Canonical { file } => cmd_canonical(&file, format, &budget),
        Command::Verify {
            suite,
            seed,
            variety,
            base,
            instances,
            max_points,
            max_algebra,
            materialize_powers,
        } => cmd_verify(
            VerifyArgs {
                suite,
                seed,
                variety,
                base,
                instances,
                max_points,
                max_algebra,
                materialize_powers,
            },
            format,
            &budget,
        ),
    };
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}

fn read_input(path: &str) -> Result<String, DocError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| DocError::Parse(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| DocError::Parse(format!("reading {path}: {e}")))
    }
}

fn load_envelope(path: &str) -> Result<Envelope, DocError> {
    parse_envelope(&read_input(path)?)
}

fn expect_kind(env: &Envelope, kind: &str) -> Result<(), DocError> {
    if env.kind == kind {
        Ok(())
    } else {
        Err(DocError::Schema(format!(
            "expected a {kind} document, got kind {:?}",
            env.kind
        )))
    }
}

fn load_algebra_doc(path: &str, budget: &Budget) -> Result<Arc<FiniteAlgebra>, DocError> {
    let env = load_envelope(path)?;
    expect_kind(&env, "algebra")?;
    load_algebra(&env.payload, budget)
}

fn load_system_doc(path: &str, budget: &Budget) -> Result<Arc<AffineSystem>, DocError> {
    let env = load_envelope(path)?;
    expect_kind(&env, "system")?;
    load_system(&env.payload, budget)
}

fn exit_code(e: &DocError) -> i32 {
    match e {
        DocError::Validation(CoreError::BudgetExceeded { .. })
        | DocError::Validation(CoreError::GenerationExhausted { .. }) => 3,
        _ => 2,
    }
}

// ---------------------------------------------------------------------
// Verbs
// ---------------------------------------------------------------------

fn cmd_validate(
    file: &str,
    echo: bool,
    format: Format,
    budget: &Budget,
) -> Result<i32, DocError> {
    let env = load_envelope(file)?;
    // Re-save what was loaded: the canonical form of the document.
    let canonical: Option<Value> = match env.kind.as_str() {
        "algebra" => Some(algebra_payload(&*load_algebra(&env.payload, budget)?)),
        "space" => Some(space_payload(&*load_space(&env.payload, budget)?)),
        "system" => Some(system_payload(&*load_system(&env.payload, budget)?)),
        "morphism" => Some(morphism_payload(&load_morphism(&env.payload, budget)?)),
        "report" => None,
        other => return Err(DocError::Schema(format!("unknown kind {other:?}"))),
    };
    if echo {
        let payload = canonical.unwrap_or(env.payload);
        print!("{}", to_canonical_string(&envelope(&env.kind, payload)));
        return Ok(0);
    }
    let mut obj = Map::new();
    obj.insert("op".into(), Value::String("validate".into()));
    obj.insert("kind".into(), Value::String(env.kind.clone()));
    obj.insert("valid".into(), Value::Bool(true));
    emit(
        format,
        Value::Object(obj),
        &format!("valid {} document", env.kind),
    );
    Ok(0)
}

fn cmd_points(
    algebra: &str,
    into: &str,
    format: Format,
    budget: &Budget,
) -> Result<i32, DocError> {
    let a = load_algebra_doc(algebra, budget)?;
    let l = load_algebra_doc(into, budget)?;
    let homs = enumerate_homs(&a, &l, budget)?;
    emit(
        format,
        homs_payload("points", &homs),
        &homs_text("points", &homs),
    );
    Ok(0)
}

fn cmd_check(
    property: Property,
    file: &str,
    format: Format,
    budget: &Budget,
) -> Result<i32, DocError> {
    let env = load_envelope(file)?;
    let mut obj = Map::new();
    obj.insert("op".into(), Value::String("check".into()));
    obj.insert("kind".into(), Value::String(env.kind.clone()));
    let (holds, property_name, detail_text) = match (property, env.kind.as_str()) {
        (Property::T0, "space") => {
            let s = load_space(&env.payload, budget)?;
            let (holds, collision) = is_t0_space(&s);
            let detail = collision_text(collision, |x| s.point_names[x].clone(), &mut obj);
            (holds, "t0", detail)
        }
        (Property::T0, "system") => {
            let s = load_system(&env.payload, budget)?;
            let (holds, collision) = is_t0_system(&s);
            let detail = collision_text(collision, |x| s.point_names[x].clone(), &mut obj);
            (holds, "t0", detail)
        }
        (Property::Sober, "space") => {
            let s = load_space(&env.payload, budget)?;
            let r = sober_space_report(&s, budget)?;
            obj.insert("injective".into(), Value::Bool(r.injective));
            obj.insert("surjective".into(), Value::Bool(r.surjective));
            obj.insert(
                "points_of_opens".into(),
                Value::Number(r.points_of_opens.into()),
            );
            let detail = sober_detail(
                r.surjective,
                r.collision,
                |x| s.point_names[x].clone(),
                &mut obj,
            );
            (r.sober(), "sober", detail)
        }
        (Property::Sober, "system") => {
            let s = load_system(&env.payload, budget)?;
            let r = sober_system_report(&s, budget)?;
            obj.insert("injective".into(), Value::Bool(r.injective));
            obj.insert("surjective".into(), Value::Bool(r.surjective));
            obj.insert(
                "points_of_algebra".into(),
                Value::Number(r.points_of_algebra.into()),
            );
            let detail = sober_detail(
                r.surjective,
                r.collision,
                |x| s.point_names[x].clone(),
                &mut obj,
            );
            (r.sober(), "sober", detail)
        }
        _ => {
            return Err(DocError::Schema(format!(
                "check expects a space or system document, got kind {:?}",
                env.kind
            )));
        }
    };
    obj.insert("property".into(), Value::String(property_name.into()));
    obj.insert("holds".into(), Value::Bool(holds));
    let text = format!(
        "{property_name}: {}{}",
        if holds { "holds" } else { "refuted" },
        detail_text
    );
    emit(format, Value::Object(obj), &text);
    Ok(if holds { 0 } else { 1 })
}

fn collision_text(
    collision: Option<(usize, usize)>,
    name: impl Fn(usize) -> String,
    obj: &mut Map<String, Value>,
) -> String {
    match collision {
        Some((x, y)) => {
            obj.insert(
                "collision".into(),
                Value::Array(vec![Value::String(name(x)), Value::String(name(y))]),
            );
            format!(
                " — points {:?} and {:?} are indistinguishable",
                name(x),
                name(y)
            )
        }
        None => String::new(),
    }
}

fn sober_detail(
    surjective: bool,
    collision: Option<(usize, usize)>,
    name: impl Fn(usize) -> String,
    obj: &mut Map<String, Value>,
) -> String {
    let mut detail = collision_text(collision, name, obj);
    if !surjective {
        detail.push_str(" — some point of the structure is realized by no point");
    }
    detail
}

fn cmd_spatialize(file: &str, format: Format, budget: &Budget) -> Result<i32, DocError> {
    let sys = load_system_doc(file, budget)?;
    let space = spatialize(&sys, budget)?;
    let doc = envelope("space", space_payload(&space));
    emit_document(
        format,
        &doc,
        &format!(
            "space of {} points with {} opens",
            space.n_points(),
            space.opens().tables().len()
        ),
    );
    Ok(0)
}

fn cmd_embed(file: &str, format: Format, budget: &Budget) -> Result<i32, DocError> {
    let env = load_envelope(file)?;
    expect_kind(&env, "space")?;
    let space = load_space(&env.payload, budget)?;
    let sys = embed_space(&space, budget)?;
    let doc = envelope("system", system_payload(&sys));
    emit_document(
        format,
        &doc,
        &format!(
            "system of {} points over an algebra of {}",
            sys.n_points(),
            sys.algebra.n()
        ),
    );
    Ok(0)
}

fn cmd_sierpinski(
    system: bool,
    _space: bool,
    base: &str,
    format: Format,
    budget: &Budget,
) -> Result<i32, DocError> {
    let l = load_algebra_doc(base, budget)?;
    if system {
        let s = sierpinski_system(&l, budget)?;
        let doc = envelope("system", system_payload(&s));
        emit_document(
            format,
            &doc,
            &format!(
                "Sierpinski system: {} points, algebra of {}",
                s.n_points(),
                s.algebra.n()
            ),
        );
    } else {
        let s = sierpinski_space(&l, budget)?;
        let doc = envelope("space", space_payload(&s));
        emit_document(
            format,
            &doc,
            &format!(
                "Sierpinski space: {} points, {} opens",
                s.n_points(),
                s.opens().tables().len()
            ),
        );
    }
    Ok(0)
}

fn cmd_product(files: &[String], format: Format, budget: &Budget) -> Result<i32, DocError> {
    let mut factors = Vec::with_capacity(files.len());
    for f in files {
        factors.push(load_system_doc(f, budget)?);
    }
    let base = Arc::clone(&factors[0].base);
    let product = product_systems(&base, &factors, budget)?;
    let doc = envelope("system", system_payload(&product.system));
    emit_document(
        format,
        &doc,
        &format!(
            "product of {} systems: {} points, algebra of {}",
            factors.len(),
            product.system.n_points(),
            product.system.algebra.n()
        ),
    );
    Ok(0)
}

fn cmd_homs(
    source: &str,
    target: &str,
    format: Format,
    budget: &Budget,
) -> Result<i32, DocError> {
    let a = load_algebra_doc(source, budget)?;
    let b = load_algebra_doc(target, budget)?;
    let homs = enumerate_homs(&a, &b, budget)?;
    emit(
        format,
        homs_payload("homs", &homs),
        &homs_text("homomorphisms", &homs),
    );
    Ok(0)
}

fn cmd_coproduct(files: &[String], format: Format, budget: &Budget) -> Result<i32, DocError> {
    let mut factors = Vec::with_capacity(files.len());
    for f in files {
        factors.push(load_algebra_doc(f, budget)?);
    }
    let variety = factors[0].variety();
    let co = coproduct(variety, &factors, budget)?;
    let mut obj = Map::new();
    obj.insert("op".into(), Value::String("coproduct".into()));
    obj.insert("factors".into(), Value::Number(factors.len().into()));
    obj.insert("elements".into(), Value::Number(co.algebra.n().into()));
    obj.insert("algebra".into(), algebra_payload(&co.algebra));
    obj.insert(
        "injections".into(),
        Value::Array(co.injections.iter().map(hom_payload).collect()),
    );
    let text = format!(
        "coproduct of {} {} algebras: {} elements",
        factors.len(),
        variety.tag(),
        co.algebra.n()
    );
    emit(format, Value::Object(obj), &text);
    Ok(0)
}

fn cmd_canonical(file: &str, format: Format, budget: &Budget) -> Result<i32, DocError> {
    let env = load_envelope(file)?;
    let mut obj = Map::new();
    obj.insert("op".into(), Value::String("canonical".into()));
    obj.insert("kind".into(), Value::String(env.kind.clone()));
    match env.kind.as_str() {
        "system" => {
            let sys = load_system(&env.payload, budget)?;
            let s = sierpinski_system(&sys.base, budget)?;
            let canonical = canonical_to_power(&sys, &s, budget)?;
            let r = audit_canonical_power(&canonical, budget)?;
            obj.insert("t0".into(), Value::Bool(r.t0));
            obj.insert("point_injective".into(), Value::Bool(r.point_injective));
            obj.insert(
                "comparison_surjective".into(),
                Value::Bool(r.comparison_surjective),
            );
            obj.insert("power_points".into(), Value::Number(r.power_points.into()));
            let detail =
                collision_text(r.collision, |x| sys.point_names[x].clone(), &mut obj);
            let holds = r.point_injective && r.comparison_surjective;
            obj.insert("embedding".into(), Value::Bool(holds));
            let text = format!(
                "canonical morphism into a power with {} points: {}{}",
                r.power_points,
                if holds { "embedding" } else { "not an embedding" },
                detail
            );
            emit(format, Value::Object(obj), &text);
            Ok(if holds { 0 } else { 1 })
        }
        "space" => {
            let space = load_space(&env.payload, budget)?;
            let r = canonical_space_embedding(&space, budget)?;
            obj.insert("injective".into(), Value::Bool(r.injective));
            obj.insert(
                "opens_are_pullbacks".into(),
                Value::Bool(r.opens_are_pullbacks),
            );
            obj.insert(
                "generator_pullbacks_checked".into(),
                Value::Number(r.generator_pullbacks_checked.into()),
            );
            let detail =
                collision_text(r.collision, |x| space.point_names[x].clone(), &mut obj);
            let holds = r.embedding();
            obj.insert("embedding".into(), Value::Bool(holds));
            let text = format!(
                "canonical map into a power of the Sierpinski space: {}{}",
                if holds { "embedding" } else { "not an embedding" },
                detail
            );
            emit(format, Value::Object(obj), &text);
            Ok(if holds { 0 } else { 1 })
        }
        other => Err(DocError::Schema(format!(
            "canonical expects a space or system document, got kind {other:?}"
        ))),
    }
}

struct VerifyArgs {
    suite: String,
    seed: u64,
    variety: String,
    base: Option<String>,
    instances: Option<usize>,
    max_points: Option<usize>,
    max_algebra: Option<usize>,
    materialize_powers: bool,
}

fn cmd_verify(args: VerifyArgs, format: Format, budget: &Budget) -> Result<i32, DocError> {
    let suite = SuiteId::parse(&args.suite)
        .ok_or_else(|| DocError::Schema(format!("unknown suite {:?}", args.suite)))?;
    let variety = Variety::parse(&args.variety)
        .ok_or_else(|| DocError::Schema(format!("unknown variety {:?}", args.variety)))?;
    let mut cfg = GenConfig::new(args.seed, variety);
    if let Some(path) = &args.base {
        let l = load_algebra_doc(path, budget)?;
        if l.variety() != variety {
            return Err(DocError::Schema(format!(
                "base algebra is {}, suite runs over {}",
                l.variety().tag(),
                variety.tag()
            )));
        }
        cfg.base = Some(l);
    }
    if let Some(k) = args.instances {
        cfg.instances = k;
    }
    if let Some(p) = args.max_points {
        cfg.max_points = p;
    }
    if let Some(a) = args.max_algebra {
        cfg.max_algebra = a;
    }
    cfg.materialize_powers = args.materialize_powers;
    cfg.instance_wall_ms = wall_cap_from_env();
    let report = run_suite(suite, &cfg).map_err(DocError::from)?;
    emit(
        format,
        suite_report_payload(&report),
        &suite_report_text(&report),
    );
    Ok(if report.passed() && report.theorem_holds {
        0
    } else {
        1
    })
}

/// Per-instance wall-time cap in milliseconds, from the environment.
fn wall_cap_from_env() -> Option<u64> {
    for key in ["VERIFY_BUDGET_MS", "AFFINET_BUDGET_MS"] {
        if let Ok(v) = std::env::var(key) {
            if let Ok(ms) = v.trim().parse::<u64>() {
                return Some(ms);
            }
        }
    }
    None
}
