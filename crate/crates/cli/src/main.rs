//! `mfc`: command line front end. Every subcommand prints one JSON document
//! on stdout.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mfc_core::chain::BigradedChainComplex;
use mfc_core::decat::{chi_t, chi_t_graph, laplacian};
use mfc_core::decomposition::verify_decomposition;
use mfc_core::graph::{eta_graph, two_factors, Graph};
use mfc_core::homology::{simplicial_homology_integer, simplicial_homology_mod2};
use mfc_core::{Error, HomologyTable, MatchingCensus, SimplicialComplex, SizeGuard};

const SCHEMA: &str = "mfc/1";

#[derive(Parser)]
#[command(name = "mfc", version, about = "Cycle-counting filtration on matching complexes")]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Generator spec such as `complete:5` or `pseudotree:3,1`.
    #[arg(long = "gen", value_name = "SPEC")]
    generator: Option<String>,

    /// Facet file: one facet per line, whitespace-separated labels.
    #[arg(long, value_name = "PATH")]
    facets: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    #[command(flatten)]
    source: Source,

    /// Largest face poset (in arcs) accepted for exhaustive enumeration.
    #[arg(long, default_value_t = 40)]
    guard: usize,
}

#[derive(Args)]
struct Reduction {
    #[arg(long, overrides_with = "unreduced")]
    reduced: bool,

    #[arg(long, overrides_with = "reduced")]
    unreduced: bool,
}

impl Reduction {
    fn resolve(&self, default: bool) -> bool {
        match (self.reduced, self.unreduced) {
            (true, _) => true,
            (_, true) => false,
            _ => default,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    Z,
    F2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Simplices,
    CompleteGraphs,
}

#[derive(Subcommand)]
enum Command {
    /// Sizes, eta and the census of supported cycle collections.
    Info {
        #[command(flatten)]
        input: Input,
    },
    /// Homology of the filtration levels M_k (reduced by default).
    Homology {
        #[command(flatten)]
        input: Input,
        /// Filtration level; every level up to eta when omitted.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[arg(long, value_enum, default_value = "z")]
        coeff: Coeff,
        #[command(flatten)]
        reduction: Reduction,
    },
    /// Horizontal homology, bigraded, mod 2 (unreduced by default).
    Hh {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        reduction: Reduction,
        /// Print a text grid instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Diagonal homology of a graph, bigraded, mod 2.
    Dh {
        #[command(flatten)]
        input: Input,
        /// Print a text grid instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Graded Euler characteristic and, for graphs, Laplacian data.
    Decat {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        reduction: Reduction,
    },
    /// Checks the differentials and the decomposition of horizontal homology.
    Verify {
        #[command(flatten)]
        input: Input,
    },
    /// Filtered homology of every level for the 2- and 3-simplex or K3-K6.
    Reproduce {
        #[arg(value_enum)]
        which: Target,
        /// Stop starting new rows after this many seconds.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, default_value_t = 40)]
        guard: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::Precondition(_) | Error::Io(_) => 2,
            Error::Resource { .. } => 3,
            Error::Internal(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn load(input: &Input) -> Result<(SimplicialComplex, Value), Error> {
    match (&input.source.generator, &input.source.facets) {
        (Some(spec), _) => Ok((SimplicialComplex::generate(spec)?, json!({ "gen": spec }))),
        (_, Some(path)) => Ok((
            SimplicialComplex::read_facet_file(path)?,
            json!({ "facets": path.display().to_string() }),
        )),
        _ => Err(Error::Input("no input given".into())),
    }
}

fn census(input: &Input) -> Result<(MatchingCensus, Value), Error> {
    let (x, source) = load(input)?;
    Ok((MatchingCensus::new(&x, SizeGuard::new(input.guard))?, source))
}

fn is_graph(x: &SimplicialComplex) -> bool {
    x.dim() <= 1
}

fn ranks_json(t: &HomologyTable) -> Value {
    if t.bigraded {
        t.entries()
            .map(|((i, j), r)| json!({ "degree": i, "filtration": j, "rank": r }))
            .collect()
    } else {
        t.betti().into_iter().map(|(i, r)| json!({ "degree": i, "rank": r })).collect()
    }
}

fn torsion_json(t: &HomologyTable) -> Value {
    t.torsion_entries()
        .map(|(i, f)| json!({ "degree": i, "factors": f.iter().map(ToString::to_string).collect::<Vec<_>>() }))
        .collect()
}

fn grid(t: &HomologyTable) -> String {
    let entries: Vec<((i32, u32), usize)> = t.entries().collect();
    if entries.is_empty() {
        return "(zero)\n".into();
    }
    let (imin, imax) = entries.iter().fold((i32::MAX, i32::MIN), |(a, b), ((i, _), _)| (a.min(*i), b.max(*i)));
    let jmax = entries.iter().map(|((_, j), _)| *j).max().unwrap_or(0);
    let mut out = String::from("j\\i");
    for i in imin..=imax {
        out += &format!("\t{i}");
    }
    out.push('\n');
    for j in (0..=jmax).rev() {
        out += &j.to_string();
        for i in imin..=imax {
            match t.rank_at(i, j) {
                0 => out += "\t.",
                r => out += &format!("\t{r}"),
            }
        }
        out.push('\n');
    }
    out
}

fn level_json(c: &MatchingCensus, cc: &BigradedChainComplex, k: i64, coeff: Coeff, reduced: bool) -> Result<Value, Error> {
    let t = if k < 0 {
        let empty = SimplicialComplex::empty();
        match coeff {
            Coeff::Z => simplicial_homology_integer(&empty, reduced)?,
            Coeff::F2 => simplicial_homology_mod2(&empty, reduced)?,
        }
    } else {
        let k = Some((k as usize).min(c.eta()));
        match coeff {
            Coeff::Z => cc.filtered_homology(k, reduced)?,
            Coeff::F2 => cc.filtered_homology_mod2(k, reduced)?,
        }
    };
    Ok(json!({ "k": k, "homology": ranks_json(&t), "torsion": torsion_json(&t) }))
}

fn info(input: &Input) -> Outcome {
    let (c, source) = census(input)?;
    let x = c.complex();
    let mut out = json!({
        "schema": SCHEMA,
        "command": "info",
        "input": source,
        "complex": { "dim": x.dim(), "vertices": x.vertex_count(), "f_vector": x.f_vector() },
        "poset": { "nodes": c.poset().node_count(), "arcs": c.poset().arc_count() },
        "matchings": c.matchings().len(),
        "eta": c.eta(),
        "collections": serde_json::to_value(c.collection_census()).expect("serializable"),
    });
    if is_graph(x) {
        let g = Graph::from_complex(x)?;
        out["graph"] = json!({ "eta": eta_graph(&g), "two_factors": two_factors(&g).len() });
    }
    Ok((out, true))
}

fn homology(input: &Input, k: Option<i64>, coeff: Coeff, reduced: bool) -> Outcome {
    let (c, source) = census(input)?;
    let cc = BigradedChainComplex::new(&c);
    let ks: Vec<i64> = match k {
        Some(k) => vec![k],
        None => (0..=c.eta() as i64).collect(),
    };
    let levels = ks
        .into_iter()
        .map(|k| level_json(&c, &cc, k, coeff, reduced))
        .collect::<Result<Vec<_>, _>>()?;
    let out = json!({
        "schema": SCHEMA,
        "command": "homology",
        "input": source,
        "coefficients": match coeff { Coeff::Z => "z", Coeff::F2 => "f2" },
        "reduced": reduced,
        "levels": levels,
    });
    Ok((out, true))
}

fn bigraded(command: &str, input: &Input, reduced: bool, text: bool) -> Outcome {
    let (c, source) = census(input)?;
    let cc = BigradedChainComplex::new(&c);
    let t = match command {
        "hh" => cc.horizontal_homology(reduced)?,
        _ => cc.diagonal_homology()?,
    };
    if text {
        return Ok((Value::String(grid(&t)), true));
    }
    let out = json!({
        "schema": SCHEMA,
        "command": command,
        "input": source,
        "coefficients": "f2",
        "reduced": t.reduced,
        "ranks": ranks_json(&t),
        "total_rank": t.total_rank(),
    });
    Ok((out, true))
}

fn decat(input: &Input, reduced: bool) -> Outcome {
    let (c, source) = census(input)?;
    let p = chi_t(&c, reduced)?;
    let mut out = json!({
        "schema": SCHEMA,
        "command": "decat",
        "input": source,
        "reduced": reduced,
        "chi_t": p,
        "chi_t_text": p.to_string(),
        "degree": p.degree(),
        "eta": c.eta(),
    });
    let mut ok = true;
    if is_graph(c.complex()) {
        let g = Graph::from_complex(c.complex())?;
        let data = laplacian(&g);
        let from_graph = chi_t_graph(&c, reduced)?;
        ok = data.coefficients_count_forests() && from_graph == p;
        out["chi_t_graph"] = json!(from_graph);
        out["chi_t_graph_matches"] = json!(from_graph == p);
        out["laplacian"] = json!({
            "matrix": data.laplacian,
            "charpoly": data.charpoly,
            "charpoly_reversed_sign": data.charpoly_reversed_sign,
            "rho": data.rho,
            "coefficients_count_forests": data.coefficients_count_forests(),
            "det_id_plus_l": data.det_id_plus_l,
            "det_id_minus_l": data.det_id_minus_l,
            "det_l_minus_id": data.det_l_minus_id,
        });
    }
    Ok((out, ok))
}

fn verify(input: &Input) -> Outcome {
    let (c, source) = census(input)?;
    let cc = BigradedChainComplex::new(&c);
    let d = cc.verify_differentials();
    let dec = verify_decomposition(&c)?;
    let graph = is_graph(c.complex());
    let zero = |b: bool| if b { "zero" } else { "nonzero" };
    let ok = d.always_valid() && dec.matches && (!graph || (d.dd_squared_zero && d.dd_lowers_by_one));
    let out = json!({
        "schema": SCHEMA,
        "command": "verify",
        "input": source,
        "d_squared_z": zero(d.full_squared_zero_z),
        "d_squared_f2": zero(d.full_squared_zero_f2),
        "dJ_squared": zero(d.dj_squared_zero),
        "dd_squared": zero(d.dd_squared_zero),
        "dd_witness": serde_json::to_value(&d.dd_witness).expect("serializable"),
        "split_consistent": d.split_consistent,
        "dJ_preserves_filtration": d.dj_preserves_filtration,
        "dd_lowers_filtration": d.dd_lowers_filtration,
        "dd_lowers_by_one": d.dd_lowers_by_one,
        "decomposition": if dec.matches { "match" } else { "mismatch" },
        "decomposition_variants": {
            "standalone": dec.standalone_matches,
            "ambient": dec.ambient_matches,
            "graph_form": dec.graph_form_matches,
        },
        "first_difference": dec.first_difference.map(|((i, j), direct, assembled)| json!({
            "degree": i, "filtration": j, "direct": direct, "assembled": assembled,
        })),
        "ok": ok,
    });
    Ok((out, ok))
}

fn reproduce(which: Target, budget: Option<f64>, guard: usize) -> Outcome {
    let (name, specs): (&str, &[&str]) = match which {
        Target::Simplices => ("simplices", &["simplex:2", "simplex:3"]),
        Target::CompleteGraphs => ("complete-graphs", &["complete:3", "complete:4", "complete:5", "complete:6"]),
    };
    let start = Instant::now();
    let mut rows = Vec::new();
    for spec in specs {
        if budget.is_some_and(|b| start.elapsed().as_secs_f64() > b) {
            rows.push(json!({ "gen": spec, "skipped": "budget exhausted" }));
            continue;
        }
        let row_start = Instant::now();
        let c = MatchingCensus::new(&SimplicialComplex::generate(spec)?, SizeGuard::new(guard))?;
        let cc = BigradedChainComplex::new(&c);
        let levels = (0..=c.eta() as i64)
            .map(|k| level_json(&c, &cc, k, Coeff::Z, true))
            .collect::<Result<Vec<_>, _>>()?;
        eprintln!("{spec}: {:.2}s", row_start.elapsed().as_secs_f64());
        rows.push(json!({ "gen": spec, "levels": levels }));
    }
    let out = json!({
        "schema": SCHEMA,
        "command": "reproduce",
        "target": name,
        "coefficients": "z",
        "reduced": true,
        "rows": rows,
    });
    Ok((out, true))
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Info { input } => info(input),
        Command::Homology { input, k, coeff, reduction } => homology(input, *k, *coeff, reduction.resolve(true)),
        Command::Hh { input, reduction, table } => bigraded("hh", input, reduction.resolve(false), *table),
        Command::Dh { input, table } => bigraded("dh", input, false, *table),
        Command::Decat { input, reduction } => decat(input, reduction.resolve(true)),
        Command::Verify { input } => verify(input),
        Command::Reproduce { which, budget, guard } => reproduce(*which, *budget, *guard),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("mfc: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok((Value::String(text), ok)) => {
            print!("{text}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Ok((value, ok)) => {
            println!("{value}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("mfc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
