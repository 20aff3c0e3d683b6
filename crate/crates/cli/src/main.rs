use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use covspec::cov_spectrum::CoveringSpectrumResult;
use covspec::delta_cover::{self, DeckGroupReport, Presentation};
use covspec::free_group::FreeWord;
use covspec::heisenberg::HeisenbergParams;
use covspec::lab::{self, Family};
use covspec::scalar::{parse_rational, RationalJson};
use covspec::sunada::{komatsu_check, sunada_condition, CayleyGroup, TripleJson};
use covspec::{
    compute_cov_spectrum, Bounds, CovSpectrum, Error, FloatLattice, GraphBackend, LatticeBackend, Lift,
    MarkedGroupBackend, Rational, RationalGraph, RationalLattice, SqrtOf,
};
use serde_json::json;

const EXIT_ARGUMENT: u8 = 2;
const EXIT_INDETERMINATE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "covspec",
    version,
    about = "Covering spectra of graphs, flat tori and Heisenberg manifolds"
)]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Write output here instead of stdout (a directory for `family`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest δ to examine, e.g. `3/2`.
    #[arg(long, global = true)]
    cutoff: Option<String>,
    /// Coset bound for Todd–Coxeter enumeration.
    #[arg(long, global = true)]
    max_cosets: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Metric graph given as a JSON file.
    Graph(GraphArgs),
    /// Flat torus.
    Torus(TorusArgs),
    /// Heisenberg manifold.
    Heisenberg {
        /// `{"n", "r": [..], "s": [..], "c", "a": [..]}`
        #[arg(long)]
        params: String,
    },
    /// Sunada condition for a permutation group triple.
    Sunada(SunadaArgs),
    /// Run a built-in family of spaces.
    Family(FamilyArgs),
}

#[derive(Args)]
struct GraphArgs {
    file: PathBuf,
    /// Examine the δ-cover at this δ.
    #[arg(long)]
    delta: Option<String>,
    /// Report the deck group of the δ-cover.
    #[arg(long, requires = "delta")]
    deck: bool,
    /// Decide whether the word lifts to a closed loop in the δ-cover.
    #[arg(long, requires = "delta", conflicts_with = "deck")]
    lift: Option<String>,
    /// Print the presentation of the δ-subgroup.
    #[arg(long, requires = "delta", conflicts_with_all = ["deck", "lift"])]
    presentation: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TorusArgs {
    /// Basis vectors as rows, e.g. `[[1,0],[0,"3/2"]]`.
    #[arg(long)]
    basis: Option<String>,
    /// Unit rhombus with this angle in radians.
    #[arg(long)]
    rhombic: Option<f64>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SunadaArgs {
    /// Built-in example. Only `komatsu-p3` is available.
    #[arg(long)]
    preset: Option<String>,
    /// `{"N", "G_gens", "H1", "H2"}` with permutations in cycle notation.
    #[arg(long)]
    triple: Option<String>,
}

#[derive(Args)]
struct FamilyArgs {
    name: String,
    /// A single index.
    #[arg(long, conflicts_with_all = ["from", "to"])]
    j: Option<usize>,
    #[arg(long)]
    from: Option<usize>,
    #[arg(long)]
    to: Option<usize>,
}

enum Failure {
    Argument(String),
    Indeterminate(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IndeterminateSpectrum { .. } | Error::Undecided => Failure::Indeterminate(e.to_string()),
            Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::Json(_)
            | Error::UnhandledRegime(_)
            | Error::Domain(_)
            | Error::Unsupported(_) => Failure::Argument(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ARGUMENT } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Argument(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ARGUMENT)
        }
        Err(Failure::Indeterminate(msg)) => {
            eprintln!("indeterminate: {msg}");
            ExitCode::from(EXIT_INDETERMINATE)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let c = &cli.common;
    match &cli.command {
        Command::Graph(args) => graph(c, args),
        Command::Torus(args) => torus(c, args),
        Command::Heisenberg { params } => heisenberg(c, params),
        Command::Sunada(args) => sunada(c, args),
        Command::Family(args) => family(c, args),
    }
}

fn rational_arg(what: &str, s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| Failure::Argument(format!("{what}: {e}")))
}

fn emit(c: &Common, text: &str) -> Outcome {
    match &c.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn spectrum_text(s: &CovSpectrum) -> String {
    let mut out = String::new();
    for e in s.entries() {
        let unit = if s.unit().to_string() == "1" {
            String::new()
        } else {
            format!(" {}", s.unit())
        };
        out.push_str(&format!(
            "{}{}  (≈ {})  mult {}\n",
            e.value,
            unit,
            e.value.to_f64(),
            e.mult
        ));
    }
    if s.is_empty() {
        out.push_str("(empty)\n");
    }
    out
}

fn emit_spectrum(c: &Common, s: &CovSpectrum, json_value: serde_json::Value) -> Outcome {
    if c.csv {
        let mut buf = Vec::new();
        s.write_csv(&mut buf)?;
        emit(c, &String::from_utf8_lossy(&buf))
    } else if c.json {
        emit(
            c,
            &format!("{}\n", serde_json::to_string_pretty(&json_value).map_err(Error::from)?),
        )
    } else {
        emit(c, &spectrum_text(s))
    }
}

fn emit_result<B: MarkedGroupBackend>(c: &Common, result: &CoveringSpectrumResult<B>) -> Outcome {
    if !c.json && !c.csv && !result.chain.complete {
        return emit(
            c,
            &format!("{}(chain stopped at the cutoff)\n", spectrum_text(&result.spectrum)),
        );
    }
    emit_spectrum(c, &result.spectrum, result.to_json_value())
}

fn graph(c: &Common, args: &GraphArgs) -> Outcome {
    let text =
        fs::read_to_string(&args.file).map_err(|e| Failure::Argument(format!("{}: {e}", args.file.display())))?;
    let g = RationalGraph::from_json(&text)?;
    let mut bounds = Bounds::default();
    if let Some(n) = c.max_cosets {
        bounds.max_cosets = n;
    }
    let Some(delta) = &args.delta else {
        let cutoff = c.cutoff.as_deref().map(|s| rational_arg("--cutoff", s)).transpose()?;
        let result = compute_cov_spectrum(&GraphBackend::new(&g, bounds), cutoff)?;
        return emit_result(c, &result);
    };
    let delta = rational_arg("--delta", delta)?;
    if args.deck {
        let report = delta_cover::deck_group(&g, &delta, &bounds)?;
        let (value, line) = match &report {
            DeckGroupReport::Finite { order, action } => (
                json!({"deck_group": "finite", "order": order, "action": action}),
                format!("finite of order {order}"),
            ),
            DeckGroupReport::FreeRank(r) => (json!({"deck_group": "free", "rank": r}), format!("free of rank {r}")),
            DeckGroupReport::Indeterminate => (json!({"deck_group": "indeterminate"}), "indeterminate".to_string()),
        };
        if c.json {
            emit(c, &format!("{value}\n"))?;
        } else {
            emit(c, &format!("deck group: {line}\n"))?;
        }
        if report == DeckGroupReport::Indeterminate {
            return Err(Failure::Indeterminate("coset bound reached".into()));
        }
        Ok(())
    } else if let Some(word) = &args.lift {
        let w: FreeWord = word.parse().map_err(|e: Error| Failure::Argument(e.to_string()))?;
        let lift = delta_cover::lifts_closed(&g, &w, &delta, &bounds)?;
        let name = match lift {
            Lift::Closed => "closed",
            Lift::Open => "open",
            Lift::Unknown => "unknown",
        };
        if c.json {
            emit(c, &format!("{}\n", json!({"word": w.to_string(), "lift": name})))?;
        } else {
            emit(c, &format!("{name}\n"))?;
        }
        if lift == Lift::Unknown {
            return Err(Failure::Indeterminate("coset bound reached".into()));
        }
        Ok(())
    } else {
        let rel = delta_cover::relators(&g, &delta, &bounds)?;
        emit(c, &Presentation::from((&g, &rel)).to_string())
    }
}

fn torus(c: &Common, args: &TorusArgs) -> Outcome {
    let cutoff = c.cutoff.as_deref().map(|s| rational_arg("--cutoff", s)).transpose()?;
    if let Some(basis) = &args.basis {
        let rows: Vec<Vec<RationalJson>> =
            serde_json::from_str(basis).map_err(|e| Failure::Argument(format!("--basis: {e}")))?;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(RationalJson::to_rational).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let l = RationalLattice::from_basis(&rows)?;
        let result = compute_cov_spectrum(&LatticeBackend::new(&l), cutoff.map(|q| SqrtOf(q * q)))?;
        emit_result(c, &result)
    } else {
        let theta = args.rhombic.expect("argument group requires one of basis and rhombic");
        let l = FloatLattice::rhombic(theta)?;
        let cutoff = cutoff.map(|q| {
            let x = *q.numer() as f64 / *q.denom() as f64;
            SqrtOf(x * x)
        });
        let result = compute_cov_spectrum(&LatticeBackend::new(&l), cutoff)?;
        emit_result(c, &result)
    }
}

fn heisenberg(c: &Common, params: &str) -> Outcome {
    let p: HeisenbergParams = serde_json::from_str(params).map_err(|e| Failure::Argument(format!("--params: {e}")))?;
    let m = p.build()?;
    let regime = m.regime()?;
    let s = m.cov_spectrum()?;
    emit_spectrum(c, &s, json!({"regime": regime, "spectrum": s}))
}

fn sunada(c: &Common, args: &SunadaArgs) -> Outcome {
    if let Some(preset) = &args.preset {
        if preset != "komatsu-p3" {
            return Err(Failure::Argument(format!("unknown preset {preset:?}")));
        }
        let h1 = CayleyGroup::elementary_abelian(3, 3);
        let h2 = CayleyGroup::heisenberg_mod_p(3);
        let report = komatsu_check(&h1, &h2, 3)?;
        if c.json {
            return emit(
                c,
                &format!("{}\n", serde_json::to_string_pretty(&report).map_err(Error::from)?),
            );
        }
        return emit(
            c,
            &format!(
                "{} and {} in S_{}\nsunada condition: {}\nminimal generating sets: {} and {}\n",
                h1.name(),
                h2.name(),
                report.degree,
                report.holds,
                report.h1_min_generators,
                report.h2_min_generators
            ),
        );
    }
    let raw = args
        .triple
        .as_deref()
        .expect("argument group requires one of preset and triple");
    let triple: TripleJson = serde_json::from_str(raw).map_err(|e| Failure::Argument(format!("--triple: {e}")))?;
    let report = sunada_condition(&triple.build()?)?;
    if c.json {
        return emit(
            c,
            &format!("{}\n", serde_json::to_string_pretty(&report).map_err(Error::from)?),
        );
    }
    let mut text = format!("sunada condition: {}\n", report.holds);
    for row in &report.table {
        text.push_str(&format!(
            "{:?}  {}  H1 {}  H2 {}\n",
            row.cycle_type, row.representative, row.h1, row.h2
        ));
    }
    emit(c, &text)
}

fn family(c: &Common, args: &FamilyArgs) -> Outcome {
    let f: Family = args.name.parse()?;
    let (lo, hi) = f.default_range();
    let (start, end) = match args.j {
        Some(j) => (j, j),
        None => (args.from.unwrap_or(lo), args.to.unwrap_or(hi)),
    };
    if let Some(dir) = &c.out {
        return Ok(lab::run_family(f, start, end, Path::new(dir))?);
    }
    let spectra = lab::family_spectra(f, start, end)?;
    let mut out = io::stdout().lock();
    if c.csv {
        out.write_all(csv_rows(&spectra)?.as_bytes())?;
    } else if c.json {
        let v = json!({"family": f, "unit": f.unit(), "spectra": spectra});
        writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(Error::from)?)?;
    } else {
        for s in &spectra {
            writeln!(out, "{f} {}:", s.index)?;
            out.write_all(spectrum_text(&s.spectrum).as_bytes())?;
        }
    }
    Ok(())
}

/// One row per spectrum entry, with the index as the first column.
fn csv_rows(spectra: &[lab::IndexedSpectrum]) -> Result<String, Failure> {
    let mut text = String::new();
    for (k, s) in spectra.iter().enumerate() {
        let mut buf = Vec::new();
        s.spectrum.write_csv(&mut buf)?;
        for (i, line) in String::from_utf8_lossy(&buf).lines().enumerate() {
            match (i, k) {
                (0, 0) => text.push_str(&format!("index,{line}\n")),
                (0, _) => {}
                _ => text.push_str(&format!("{},{line}\n", s.index)),
            }
        }
    }
    Ok(text)
}
