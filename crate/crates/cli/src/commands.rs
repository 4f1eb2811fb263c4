use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use shatter_bounds::{
    balanced_rate_beta, c_exact_d2, c_infinity, codim_bound, conjecture_curve, f_exact_d2,
    g_construction, g_formula, gamma_lower_table, gamma_staircase, lemma25_max, random_bound,
    GFormula, RateFunctionSpec, SubsetOrder,
};
use shatter_constructions::{lookup, RecipeParams};
use shatter_core::{
    brute_force_f, brute_force_g, count_shattered, AlphabetMatrix, Budget, Error, Result,
};
use shatter_covering::{
    build_by_deletion, ca_pipeline, read_ca, verify_ca, write_ca, Strategy,
};
use shatter_lagrangian::{c_estimate, OptimizerConfig, VertexRestriction};

use crate::output::{big_json, csv_line, print_json};

fn read_matrix(path: &Path) -> Result<AlphabetMatrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    let (matrix, _) = read_ca(&text)?;
    Ok(matrix)
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content)
        .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))
}

#[derive(Args)]
pub struct CountArgs {
    /// Matrix file in the `v k n` text format.
    matrix: PathBuf,
    #[arg(long)]
    d: usize,
}

pub fn run_count(args: CountArgs) -> Result<()> {
    let m = read_matrix(&args.matrix)?;
    let report = count_shattered(&m, args.d)?;
    print_json(&json!({
        "d": report.d,
        "total": big_json(&report.total),
        "shattered": big_json(&report.shattered),
        "density": format!("{}/{}", report.density.numer(), report.density.denom()),
        "density_decimal": shatter_bounds::big_ratio_to_f64(&report.density),
    }));
    Ok(())
}

#[derive(Args)]
pub struct ConstructArgs {
    /// Registered recipe name: full-space, codim, turan, ks, product,
    /// stack, iid, balanced.
    recipe: String,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    v: Option<u32>,
    /// Required for randomized recipes; runs are deterministic per seed.
    #[arg(long)]
    seed: Option<u64>,
    /// First input matrix file (product, stack).
    #[arg(long)]
    m1: Option<PathBuf>,
    /// Second input matrix file (product, stack).
    #[arg(long)]
    m2: Option<PathBuf>,
    /// Matrix output path; without it the matrix goes to stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn run_construct(args: ConstructArgs) -> Result<()> {
    let construction = lookup(&args.recipe).ok_or_else(|| {
        Error::invalid(format!(
            "unknown recipe {}; known: {}",
            args.recipe,
            shatter_constructions::registry()
                .iter()
                .map(|c| c.name())
                .collect::<Vec<_>>()
                .join(", ")
        ))
    })?;
    let params = RecipeParams {
        d: args.d,
        r: args.r,
        n: args.n,
        k: args.k,
        v: args.v,
        seed: args.seed,
        m1: args.m1.as_deref().map(read_matrix).transpose()?,
        m2: args.m2.as_deref().map(read_matrix).transpose()?,
    };
    let built = construction.build(&params)?;
    match &args.output {
        Some(path) => {
            write_file(path, &built.matrix.to_text())?;
            print!("{}", built.recipe.to_report());
        }
        None => {
            print!("{}", built.matrix.to_text());
            eprint!("{}", built.recipe.to_report());
        }
    }
    Ok(())
}

#[derive(Args)]
pub struct LagrangianArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 6)]
    restarts: u32,
    #[arg(long, default_value_t = 600)]
    iterations: u32,
    /// Seed for the restart streams (required: runs must be reproducible).
    #[arg(long)]
    seed: u64,
    /// Snap the best weights to Z/denominator and recompute exactly.
    #[arg(long)]
    round_denominator: Option<u64>,
    /// Restrict vertices to balanced patterns (lossless at k = 2^d,
    /// heuristic otherwise).
    #[arg(long)]
    balanced_only: bool,
}

pub fn run_lagrangian(args: LagrangianArgs) -> Result<()> {
    let mut config = OptimizerConfig::new(args.seed);
    config.restarts = args.restarts;
    config.iterations = args.iterations;
    config.round_denominator = args.round_denominator;
    config.restriction = if args.balanced_only {
        VertexRestriction::BalancedOnly
    } else {
        VertexRestriction::All
    };
    let (bound, result) = c_estimate(args.k, args.d, &config)?;

    let mut support = Map::new();
    for &(pattern, weight) in result.weights.entries() {
        let key: String = (0..args.k)
            .rev()
            .map(|i| if (pattern >> i) & 1 == 1 { '1' } else { '0' })
            .collect();
        support.insert(key, json!(weight));
    }
    let mut doc = Map::new();
    doc.insert("k".into(), json!(args.k));
    doc.insert("d".into(), json!(args.d));
    doc.insert("value".into(), json!(format!("{:.12}", result.value)));
    if let Some(cert) = &result.rounded {
        doc.insert(
            "certificate".into(),
            json!(format!("{}/{}", cert.value.numer(), cert.value.denom())),
        );
        doc.insert("certificate_denominator".into(), json!(cert.denominator));
    }
    doc.insert(
        "c_estimate".into(),
        json!(format!("{:.12}", bound.value.as_f64())),
    );
    doc.insert("c_estimate_kind".into(), json!(bound.kind.as_str()));
    if let Some(r) = bound.value.rational() {
        doc.insert(
            "c_estimate_rational".into(),
            json!(format!("{}/{}", r.numer(), r.denom())),
        );
    }
    doc.insert("support".into(), Value::Object(support));
    doc.insert(
        "config".into(),
        json!({
            "restarts": args.restarts,
            "iterations": args.iterations,
            "seed": args.seed,
            "balanced_only": args.balanced_only,
            "round_denominator": args.round_denominator,
        }),
    );
    doc.insert("iterations_used".into(), json!(result.iterations));
    print_json(&Value::Object(doc));
    Ok(())
}

#[derive(Subcommand)]
pub enum BoundsCmd {
    /// Extremal density at k = 2^d, as an exact rational.
    Cd {
        #[arg(long)]
        d: u32,
    },
    /// The limiting constant, the infinite product of (1 - 2^-i).
    Cinf {
        #[arg(long, default_value_t = 1e-9)]
        precision: f64,
    },
    /// Exact pair theory: c(k, 2), or f(n, k, 2) when --n is given.
    D2 {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Random-matrix lower bound max(0, 1 - v^d (1 - v^-d)^k).
    Random {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 2)]
        v: u32,
    },
    /// Balanced-column rate function minimum and its exponential base.
    BalancedBeta {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 2)]
        v: u32,
        #[arg(long, default_value_t = 20.0)]
        t_max: f64,
    },
    /// Codimension-complement bound (2 - 2^-r) c_{d+1}.
    Codim {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
    },
    /// CSV of every lower-bound source per k.
    GammaTable {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 64)]
        k_max: u64,
    },
    /// CSV staircase of the best lower bound as a function of b = k / 2^d.
    GammaStaircase {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 4.0)]
        b_max: f64,
    },
    /// CSV of the conjectured limiting staircase on [1, 2).
    ConjectureCurve {
        #[arg(long, default_value_t = 1.0)]
        from: f64,
        #[arg(long, default_value_t = 1.9375)]
        to: f64,
        #[arg(long, default_value_t = 0.0625)]
        resolution: f64,
    },
    /// Simplex maximum of sum p_i (1 - p_i)^(d-1): closed form and numeric
    /// confirmation.
    Lemma25 {
        #[arg(long)]
        d: u32,
    },
}

pub fn run_bounds(cmd: BoundsCmd) -> Result<()> {
    match cmd {
        BoundsCmd::Cd { d } => {
            let c = shatter_bounds::c_d_formula(d)?;
            println!("{}/{}", c.numer(), c.denom());
        }
        BoundsCmd::Cinf { precision } => {
            println!("{:.12}", c_infinity(precision)?);
        }
        BoundsCmd::D2 { k, n } => match n {
            Some(n) => {
                let f = f_exact_d2(n, k)?;
                println!("{f}");
            }
            None => {
                let c = c_exact_d2(k)?;
                println!("{}/{}", c.numer(), c.denom());
            }
        },
        BoundsCmd::Random { k, d, v } => {
            let b = random_bound(k, d, v)?;
            print_json(&json!({
                "value_decimal": b.value.decimal_string(),
                "value_rational": b.value.rational_string(),
                "kind": b.kind.as_str(),
                "provenance": b.provenance,
            }));
        }
        BoundsCmd::BalancedBeta { d, v, t_max } => {
            let r = balanced_rate_beta(&RateFunctionSpec::new(d, v, t_max)?)?;
            print_json(&json!({
                "d": d,
                "v": v,
                "beta": r.beta,
                "f_min": r.f_min,
                "minimizer": r.minimizer,
                "boundary_infimum": r.boundary_infimum,
            }));
        }
        BoundsCmd::Codim { d, r } => {
            let b = codim_bound(d, r)?;
            let rat = b.value.rational().expect("codim bound is rational");
            println!("{}/{}", rat.numer(), rat.denom());
        }
        BoundsCmd::GammaTable { d, k_max } => {
            println!("k,source,kind,value_decimal,value_rational");
            for e in gamma_lower_table(d, k_max)? {
                println!(
                    "{}",
                    csv_line(&[
                        e.k.to_string(),
                        e.source.clone(),
                        e.kind.as_str().to_string(),
                        e.value.decimal_string(),
                        e.value.rational_string().unwrap_or_default(),
                    ])
                );
            }
        }
        BoundsCmd::GammaStaircase { d, b_max } => {
            println!("b,value,kind");
            for p in gamma_staircase(d, b_max)? {
                println!("{}", csv_line(&[format!("{:.6}", p.b), format!("{:.12}", p.value), p.kind]));
            }
        }
        BoundsCmd::ConjectureCurve {
            from,
            to,
            resolution,
        } => {
            println!("b,value,kind");
            for p in conjecture_curve(from, to, resolution)? {
                println!("{}", csv_line(&[format!("{:.6}", p.b), format!("{:.12}", p.value), p.kind]));
            }
        }
        BoundsCmd::Lemma25 { d } => {
            let rep = lemma25_max(d)?;
            print_json(&json!({
                "d": d,
                "closed_form": format!("{}/{}", rep.closed_form.numer(), rep.closed_form.denom()),
                "closed_decimal": shatter_bounds::big_ratio_to_f64(&rep.closed_form),
                "numeric_max": rep.numeric_max,
                "argmax_uniform_deviation": rep.argmax_uniform_deviation,
            }));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, ValueEnum)]
pub enum OracleWhich {
    F,
    G,
}

#[derive(Args)]
pub struct OracleArgs {
    /// Which extremal quantity: the maximum f or the minimum g.
    which: OracleWhich,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    v: u32,
    /// Enumeration budget; exceeding it is a resource error (exit 3).
    #[arg(long, default_value_t = 20_000_000)]
    budget: u64,
}

pub fn run_oracle(args: OracleArgs) -> Result<()> {
    let budget = Budget::new(args.budget);
    let value = match args.which {
        OracleWhich::F => brute_force_f(args.n, args.k, args.d, args.v, &budget)?,
        OracleWhich::G => {
            if args.v != 2 {
                return Err(Error::invalid("the minimum oracle is defined for set families (v = 2)"));
            }
            brute_force_g(args.n, args.k, args.d, &budget)?
        }
    };
    println!("{value}");
    Ok(())
}

#[derive(Clone, Copy, ValueEnum)]
pub enum OrderArg {
    Lex,
    Colex,
}

#[derive(Args)]
pub struct GminArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    d: u32,
    #[arg(long, value_enum, default_value_t = OrderArg::Lex)]
    order: OrderArg,
}

pub fn run_gmin(args: GminArgs) -> Result<()> {
    let order = match args.order {
        OrderArg::Lex => SubsetOrder::Lex,
        OrderArg::Colex => SubsetOrder::Colex,
    };
    let (fam, count) = g_construction(args.n, args.k, args.d, order)?;
    let formula = match g_formula(args.n, args.k, args.d)? {
        GFormula::Exact(v) => big_json(&v),
        GFormula::Miss => json!("miss"),
    };
    print_json(&json!({
        "n": args.n,
        "k": args.k,
        "d": args.d,
        "order": match args.order { OrderArg::Lex => "lex", OrderArg::Colex => "colex" },
        "members": fam.members(),
        "count": count,
        "formula": formula,
    }));
    Ok(())
}

#[derive(Subcommand)]
pub enum CaCmd {
    /// Greedy column deletion until every d-subset is shattered.
    Build {
        /// Input matrix or covering-array file.
        input: PathBuf,
        #[arg(long)]
        d: usize,
        /// Covering-array output path.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify covering strength; failure reports a witness.
    Verify {
        input: PathBuf,
        /// Strength to check; defaults to the strength declared in the file.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Build a base matrix by strategy, then delete to a verified array.
    Pipeline {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        v: u32,
        #[arg(long)]
        target_n: usize,
        /// full-space | codim | product | iid | balanced
        #[arg(long)]
        strategy: String,
        /// Codimension parameter for the codim strategy.
        #[arg(long)]
        r: Option<u32>,
        /// Required by the randomized strategies.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

pub fn run_ca(cmd: CaCmd) -> Result<()> {
    match cmd {
        CaCmd::Build { input, d, output } => {
            let m = read_matrix(&input)?;
            let out = build_by_deletion(&m, d)?;
            if let Some(path) = &output {
                write_file(path, &write_ca(&out.ca))?;
            }
            print_json(&json!({
                "k": out.ca.matrix.rows(),
                "v": out.ca.matrix.v(),
                "d": d,
                "n_initial": out.n_initial,
                "n_final": if out.degenerate { 0 } else { out.ca.matrix.cols() },
                "deletions": out.ca.deletion_log.len(),
                "deletion_log": out.ca.deletion_log,
                "initial_bad": out.initial_bad,
                "verified": out.ca.verified,
                "degenerate": out.degenerate,
            }));
        }
        CaCmd::Verify { input, d } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", input.display())))?;
            let (m, declared) = read_ca(&text)?;
            let strength = d
                .or(declared.map(|(s, _)| s))
                .ok_or_else(|| Error::invalid("no --d given and the file declares no strength"))?;
            let check = verify_ca(&m, strength)?;
            let witness = check.witness.as_ref().map(|w| {
                json!({
                    "columns": w.columns,
                    "missing_pattern": w.missing_pattern,
                })
            });
            print_json(&json!({
                "ok": check.ok,
                "strength": strength,
                "witness": witness,
            }));
        }
        CaCmd::Pipeline {
            d,
            v,
            target_n,
            strategy,
            r,
            seed,
            output,
        } => {
            let strategy = Strategy::parse(&strategy, r)?;
            let (ca, report) = ca_pipeline(d, v, target_n, &strategy, seed)?;
            if let Some(path) = &output {
                write_file(path, &write_ca(&ca))?;
            }
            print_json(&serde_json::to_value(&report).expect("report serializes"));
        }
    }
    Ok(())
}
