use clap::{Parser, Subcommand, ValueEnum};
use motivic_core::family::{scan, GermFamily};
use motivic_core::fibre::{default_data, fibre_topology, max_grid_from_env, verify_cf412};
use motivic_core::milnor::milnor_number;
use motivic_core::motives::{BetaPoly, SignSemantics};
use motivic_core::parse::parse_germ;
use motivic_core::poly::{Order, Polynomial};
use motivic_core::rational::{fmt_q, parse_q, Q};
use motivic_core::resolve::embedded_resolution;
use motivic_core::zeta::{
    acampo_lefschetz, acampo_period, chi_tilde, motivic_fibre_with, series_expand, zeta_rational_with, AcampoVariant,
};
use motivic_core::{arcs, Error, Symbol};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mmf", version, about = "Real motivic Milnor fibres of plane curve germs")]
struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// How sign conditions on tubes are turned into classes.
    #[arg(long, global = true, value_enum, default_value_t = Semantics::Reduced)]
    semantics: Semantics,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum Semantics {
    Reduced,
    Literal,
}

impl From<Semantics> for SignSemantics {
    fn from(s: Semantics) -> Self {
        match s {
            Semantics::Reduced => SignSemantics::Reduced,
            Semantics::Literal => SignSemantics::Literal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Single,
    Subset,
}

#[derive(Subcommand)]
enum Command {
    /// Embedded resolution: components, dual graph, strata and charts.
    Resolve { germ: String },
    /// Rational form and series of the motivic zeta function.
    Zeta {
        germ: String,
        #[arg(long, value_parser = symbol, allow_hyphen_values = true, default_value = "+1")]
        symbol: Symbol,
        #[arg(long, default_value_t = 10)]
        max_order: u32,
    },
    /// Motivic Milnor fibres and tubes for all four symbols.
    Milnor { germ: String },
    /// Sampled topology of the real Milnor fibres and tubes.
    Fibre {
        germ: String,
        #[arg(long, value_parser = symbol, allow_hyphen_values = true)]
        symbol: Option<Symbol>,
        #[arg(long, value_parser = rational)]
        delta: Option<Q>,
        #[arg(long, value_parser = rational)]
        eta: Option<Q>,
        #[arg(long)]
        max_grid: Option<usize>,
    },
    /// A'Campo Lefschetz number of the k-th monodromy iterate.
    Acampo {
        germ: String,
        #[arg(long, default_value_t = 0)]
        iterates: u64,
        #[arg(long, value_enum, default_value_t = Variant::Single)]
        variant: Variant,
    },
    /// Zeta coefficients of x^a y^b from truncated arc spaces.
    NaiveZeta {
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        monomial: Vec<u32>,
        #[arg(long, value_parser = symbol, allow_hyphen_values = true, default_value = "+1")]
        symbol: Symbol,
        #[arg(long, default_value_t = 10)]
        max_order: u32,
    },
    /// Scan β(S^ε(f_t)) over a parameter range.
    Family {
        #[arg(long)]
        family: String,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], value_parser = rational, allow_hyphen_values = true, required = true)]
        range: Vec<Q>,
        #[arg(long, default_value_t = 17)]
        samples: usize,
        #[arg(long, value_parser = symbol, allow_hyphen_values = true, default_value = "+1")]
        symbol: Symbol,
    },
    /// Compare χ_c of the motivic fibres with the sampled fibres.
    Check {
        germ: String,
        #[arg(long, value_parser = rational)]
        delta: Option<Q>,
        #[arg(long, value_parser = rational)]
        eta: Option<Q>,
        #[arg(long)]
        max_grid: Option<usize>,
    },
}

fn symbol(s: &str) -> Result<Symbol, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn rational(s: &str) -> Result<Q, String> {
    parse_q(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

enum Failure {
    Error(Error, Option<String>),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e, None)
    }
}

struct Output {
    json: Value,
    text: Option<String>,
    csv: Option<String>,
}

impl Output {
    fn json(v: impl Serialize) -> Self {
        Output { json: serde_json::to_value(v).expect("serializable"), text: None, csv: None }
    }

    fn with_text(mut self, t: String) -> Self {
        self.text = Some(t);
        self
    }
}

fn germ(text: &str) -> Result<Polynomial, Failure> {
    parse_germ(text).map_err(|e| Failure::Error(e, Some(text.to_string())))
}

fn mu_json(f: &Polynomial) -> Value {
    match milnor_number(f) {
        Ok(Order::Finite(m)) => json!(m),
        Ok(Order::Infinite) => json!("infinite"),
        Err(e) => json!(e.kind()),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let sem: SignSemantics = cli.semantics.into();
    match &cli.command {
        Command::Resolve { germ: g } => {
            let res = embedded_resolution(&germ(g)?)?;
            let mut text = String::from("id  N  nu  exceptional\n");
            for c in &res.components {
                text += &format!("{:<3} {:<2} {:<3} {}\n", c.id, c.n, c.nu, c.exceptional);
            }
            text += &format!("dual graph: {:?}\n", res.dual_graph_edges());
            Ok(Output::json(&res).with_text(text))
        }
        Command::Zeta { germ: g, symbol, max_order } => {
            let res = embedded_resolution(&germ(g)?)?;
            let z = zeta_rational_with(&res, *symbol, sem)?;
            let series = series_expand(&z, *max_order);
            let mut text = format!("Z^{symbol}(T) = {}\n", z.render());
            for (k, c) in series.iter().enumerate() {
                text += &format!("T^{}: {c}\n", k + 1);
            }
            let out = json!({
                "symbol": symbol,
                "rational_form": z.terms,
                "series": series,
                "limit": z.limit(),
            });
            Ok(Output::json(out).with_text(text))
        }
        Command::Milnor { germ: g } => {
            let f = germ(g)?;
            let res = embedded_resolution(&f)?;
            let mut s = BTreeMap::new();
            for e in Symbol::ALL {
                s.insert(e.as_str(), motivic_fibre_with(&res, e, sem)?);
            }
            let mut chi = BTreeMap::new();
            for (k, b) in &s {
                chi.insert(*k, chi_tilde(b)?);
            }
            let text: String = Symbol::ALL
                .iter()
                .map(|e| format!("S^{e} = {}   (chi = {})\n", s[e.as_str()], chi[e.as_str()]))
                .collect();
            let out = json!({
                "S": s,
                "S_text": s.iter().map(|(k, b)| (*k, b.to_string())).collect::<BTreeMap<_, _>>(),
                "chi_tilde": chi,
                "milnor_number": mu_json(&f),
            });
            Ok(Output::json(out).with_text(text))
        }
        Command::Fibre { germ: g, symbol, delta, eta, max_grid } => {
            let f = germ(g)?;
            let (d0, e0) = default_data(&f);
            let delta = delta.clone().unwrap_or(d0);
            let eta = eta.clone().unwrap_or(e0);
            let cap = max_grid.unwrap_or_else(max_grid_from_env);
            match symbol {
                Some(e) => {
                    let r = fibre_topology(&f, *e, &delta, &eta, cap)?;
                    let text = format!(
                        "{e}: arcs {} circles {} regions {} chi_c {} (grid {}, stabilized {})\n",
                        r.components_arcs, r.components_circles, r.regions, r.chi_c, r.grid_resolution, r.stabilized
                    );
                    Ok(Output::json(&r).with_text(text))
                }
                None => {
                    let mut all = BTreeMap::new();
                    for e in Symbol::ALL {
                        all.insert(e.as_str(), fibre_topology(&f, e, &delta, &eta, cap)?);
                    }
                    Ok(Output::json(&all))
                }
            }
        }
        Command::Acampo { germ: g, iterates, variant } => {
            let f = germ(g)?;
            let res = embedded_resolution(&f)?;
            let single = acampo_lefschetz(&res, *iterates, AcampoVariant::Single);
            let subset = acampo_lefschetz(&res, *iterates, AcampoVariant::Subset);
            let (name, value) = match variant {
                Variant::Single => ("single", single),
                Variant::Subset => ("subset", subset),
            };
            let out = json!({
                "k": iterates,
                "variant": name,
                "lefschetz": value,
                "single": single,
                "subset": subset,
                "variants_agree": single == subset,
                "period": acampo_period(&res),
                "milnor_number": mu_json(&f),
            });
            Ok(Output::json(out).with_text(format!("Lambda(h^{iterates}) = {value} ({name})\n")))
        }
        Command::NaiveZeta { monomial, symbol, max_order } => {
            let (a, b) = (monomial[0], monomial[1]);
            if a + b == 0 {
                return Err(Error::InvalidInput("the monomial must be non-constant".into()).into());
            }
            let s: Vec<BetaPoly> = arcs::naive_series(a, b, *max_order, *symbol);
            let text: String = s.iter().enumerate().map(|(k, c)| format!("T^{}: {c}\n", k + 1)).collect();
            Ok(Output::json(&s).with_text(text))
        }
        Command::Family { family, range, samples, symbol } => {
            let fam = GermFamily::parse(family).map_err(|e| Failure::Error(e, Some(family.clone())))?;
            let r = scan(&fam, &range[0], &range[1], *samples, *symbol)?;
            let mut text = String::from("candidate stratification\n");
            for iv in &r.intervals {
                text += &format!("[{}, {}]: {}\n", fmt_q(&iv.left), fmt_q(&iv.right), iv.beta);
            }
            let bps: Vec<String> = r.breakpoints.iter().map(fmt_q).collect();
            text += &format!("breakpoints: {}\n", bps.join(", "));
            let mut out = Output::json(&r).with_text(text);
            out.csv = Some(r.to_csv());
            Ok(out)
        }
        Command::Check { germ: g, delta, eta, max_grid } => {
            let f = germ(g)?;
            let (d0, e0) = default_data(&f);
            let delta = delta.clone().unwrap_or(d0);
            let eta = eta.clone().unwrap_or(e0);
            let cap = max_grid.unwrap_or_else(max_grid_from_env);
            let entries = verify_cf412(&f, &delta, &eta, cap)?;
            let pass = entries.iter().all(|e| e.pass);
            let text: String = entries
                .iter()
                .map(|e| {
                    format!(
                        "{}: chi(S) = {}, -chi(fibre) = {} -> {}\n",
                        e.symbol,
                        e.motivic,
                        -e.oracle,
                        if e.pass { "pass" } else { "FAIL" }
                    )
                })
                .collect();
            let out = json!({
                "germ": f.to_string(),
                "delta": fmt_q(&delta),
                "eta": fmt_q(&eta),
                "entries": entries,
                "pass": pass,
            });
            emit(cli, &Output::json(out).with_text(text)).map_err(Failure::from)?;
            if pass {
                Ok(Output { json: Value::Null, text: None, csv: None })
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), Error> {
    if out.json.is_null() && out.text.is_none() {
        return Ok(());
    }
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
        Format::Pretty => out
            .text
            .clone()
            .unwrap_or_else(|| serde_json::to_string_pretty(&out.json).expect("json") + "\n"),
        Format::Csv => match &out.csv {
            Some(c) => c.clone(),
            None => return Err(Error::InvalidInput("CSV output is only available for family scans".into())),
        },
    };
    match &cli.output {
        Some(p) => std::fs::write(p, body).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn report(e: &Error, input: Option<&str>) {
    eprintln!("error[{}]: {e}", e.kind());
    let pos = match e {
        Error::Syntax { pos, .. } | Error::UnknownVariable { pos, .. } => Some(*pos),
        _ => None,
    };
    if let (Some(pos), Some(text)) = (pos, input) {
        eprintln!("  {text}");
        eprintln!("  {}^", " ".repeat(pos));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    let result = run(&cli).and_then(|out| emit(&cli, &out).map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(3),
        Err(Failure::Error(e, input)) => {
            report(&e, input.as_deref());
            ExitCode::from(if e.is_domain() { 2 } else { 1 })
        }
    }
}
