use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use socrank::axioms::{run_grid, Axiom, CellOutcome, GridConfig, SolutionRef};
use socrank::casestudy;
use socrank::game::{parse_game, serialize_game};
use socrank::solutions::{cp_matrix, Statistics};
use socrank::{
    parse_power_relation, ranks_from_pairwise, serialize_power_relation, Method, PairwiseRelation, PowerRelation,
};

#[derive(Parser)]
#[command(name = "socrank", version, about = "Social rankings from coalitional rankings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Args)]
struct InputArgs {
    /// A `.pr` coalitional ranking or a `.game` voting game.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Rank players with one or more solutions.
    Rank {
        #[command(flatten)]
        io: InputArgs,
        /// Comma-separated subset of cp,lexcel,duallex,l1,l1star.
        #[arg(long, default_value = "cp,lexcel,duallex,l1,l1star")]
        methods: String,
    },
    /// Ceteris paribus comparison counts d_ij.
    CpMatrix {
        #[command(flatten)]
        io: InputArgs,
        /// Comma-separated player labels; all players when omitted.
        #[arg(long)]
        players: Option<String>,
    },
    /// Occurrences of players per equivalence class.
    Theta {
        #[command(flatten)]
        io: InputArgs,
        /// Restrict to one player.
        #[arg(long)]
        player: Option<String>,
    },
    /// Occurrences of a player per coalition size and class.
    L1Matrix {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long)]
        player: String,
    },
    /// Convert a voting game into its coalitional ranking.
    Gen {
        #[arg(long, short)]
        input: PathBuf,
    },
    /// Check solutions against axioms on generated instances.
    Axioms {
        #[arg(short, long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Comma-separated solution names, `main` or `all`.
        #[arg(long, default_value = "main")]
        solutions: String,
        /// Comma-separated axiom names or `all`.
        #[arg(long, default_value = "all")]
        axioms: String,
        /// Skip the hand-built counterexamples.
        #[arg(long)]
        no_fixtures: bool,
        /// Write refuting witnesses into this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        /// Exit with status 2 unless the grid matches the published table.
        #[arg(long)]
        expect_paper: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Reproduce the Dutch parliament case study and check it.
    Casestudy {
        /// Print the embedded game as `.game` text and exit.
        #[arg(long)]
        dump_game: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CmdResult = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn looks_like_game(path: &Path, text: &str) -> bool {
    match path.extension().and_then(|e| e.to_str()) {
        Some("game") => true,
        Some("pr") => false,
        _ => text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .is_some_and(|l| l.starts_with("houses:")),
    }
}

fn load_relation(path: &Path) -> Result<PowerRelation, Failure> {
    let text = read(path)?;
    let shown = path.display();
    if looks_like_game(path, &text) {
        let game = parse_game(&text).map_err(|e| input_error(format!("{shown}: {e}")))?;
        for w in game.warnings() {
            eprintln!("warning: {shown}: {w}");
        }
        Ok(game.to_power_relation())
    } else {
        parse_power_relation(&text).map_err(|e| input_error(format!("{shown}: {e}")))
    }
}

fn player_index(pr: &PowerRelation, label: &str) -> Result<usize, Failure> {
    pr.players().index_of(label).map_err(|e| input_error(e.to_string()))
}

fn parse_list<T: std::str::FromStr<Err = String>>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    let items: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        return Err(input_error(format!("no {what} given")));
    }
    items.into_iter().map(|s| s.parse::<T>().map_err(input_error)).collect()
}

fn matrix_text(pr: &PowerRelation, rel: &PairwiseRelation) -> String {
    let names = pr.players().names();
    let width = names.iter().map(|s| s.len()).max().unwrap_or(1);
    let mut out = String::new();
    let _ = write!(out, "{:width$}", "");
    for name in names {
        let _ = write!(out, " {name}");
    }
    out.push('\n');
    for (i, name) in names.iter().enumerate() {
        let _ = write!(out, "{name:width$}");
        for (j, other) in names.iter().enumerate() {
            let _ = write!(out, " {:>w$}", rel.cell(i, j).symbol(), w = other.len());
        }
        out.push('\n');
    }
    out
}

fn cmd_rank(io: &InputArgs, methods: &str) -> CmdResult {
    let methods: Vec<Method> = parse_list(methods, "methods")?;
    let pr = load_relation(&io.input)?;
    let names = pr.players().names();
    let mut ranked: Vec<(Method, Vec<usize>)> = Vec::new();
    let mut broken = String::new();
    for &m in &methods {
        let rel = m.apply(&pr);
        match ranks_from_pairwise(&rel) {
            Ok(r) => ranked.push((m, r.ranks)),
            Err(report) => {
                let (a, b, c) = report.witness;
                let _ = writeln!(
                    broken,
                    "{m}: not transitive ({} over {}, {} over {}, but not {} over {})",
                    names[a], names[b], names[b], names[c], names[a], names[c]
                );
                if io.format == Format::Text {
                    broken.push_str(&matrix_text(&pr, &rel));
                }
            }
        }
    }
    let mut out = String::new();
    match io.format {
        Format::Csv => {
            out.push_str("player,method,rank\n");
            for (m, ranks) in &ranked {
                for (p, r) in ranks.iter().enumerate() {
                    let _ = writeln!(out, "{},{m},{r}", names[p]);
                }
            }
            for line in broken.lines() {
                eprintln!("{line}");
            }
        }
        Format::Text => {
            if !ranked.is_empty() {
                let width = names.iter().map(|s| s.len()).max().unwrap_or(6).max(6);
                let _ = write!(out, "{:width$}", "player");
                for (m, _) in &ranked {
                    let _ = write!(out, " {:>7}", m.name());
                }
                out.push('\n');
                for (p, name) in names.iter().enumerate() {
                    let _ = write!(out, "{name:width$}");
                    for (_, ranks) in &ranked {
                        let _ = write!(out, " {:>7}", ranks[p]);
                    }
                    out.push('\n');
                }
            }
            out.push_str(&broken);
        }
    }
    Ok(out)
}

fn cmd_cp_matrix(io: &InputArgs, players: Option<&str>) -> CmdResult {
    let pr = load_relation(&io.input)?;
    let subset: Vec<usize> = match players {
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|l| player_index(&pr, l))
            .collect::<Result<_, _>>()?,
        None => (0..pr.n()).collect(),
    };
    let full = cp_matrix(&pr);
    let names: Vec<&str> = subset.iter().map(|&p| pr.players().name(p)).collect();
    let mut out = String::new();
    match io.format {
        Format::Csv => {
            let _ = writeln!(out, ",{}", names.join(","));
            for (&i, name) in subset.iter().zip(&names) {
                let row: Vec<String> = subset.iter().map(|&j| full[i][j].to_string()).collect();
                let _ = writeln!(out, "{name},{}", row.join(","));
            }
        }
        Format::Text => {
            let cells: Vec<Vec<String>> = subset
                .iter()
                .map(|&i| subset.iter().map(|&j| full[i][j].to_string()).collect())
                .collect();
            let lw = names.iter().map(|s| s.len()).max().unwrap_or(0);
            let widths: Vec<usize> = (0..subset.len())
                .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0).max(names[c].len()))
                .collect();
            let _ = write!(out, "{:lw$}", "");
            for (name, w) in names.iter().zip(&widths) {
                let _ = write!(out, " {name:>w$}");
            }
            out.push('\n');
            for (row, name) in cells.iter().zip(&names) {
                let _ = write!(out, "{name:lw$}");
                for (v, w) in row.iter().zip(&widths) {
                    let _ = write!(out, " {v:>w$}");
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn cmd_theta(io: &InputArgs, player: Option<&str>) -> CmdResult {
    let pr = load_relation(&io.input)?;
    let players: Vec<usize> = match player {
        Some(l) => vec![player_index(&pr, l)?],
        None => (0..pr.n()).collect(),
    };
    let stats = Statistics::theta_only(&pr);
    let mut out = String::new();
    if io.format == Format::Csv {
        let header: Vec<String> = (1..=pr.num_classes()).map(|k| format!("class{k}")).collect();
        let _ = writeln!(out, "player,{}", header.join(","));
    }
    for p in players {
        let values: Vec<String> = stats.theta(p).iter().map(u64::to_string).collect();
        match io.format {
            Format::Csv => {
                let _ = writeln!(out, "{},{}", pr.players().name(p), values.join(","));
            }
            Format::Text => {
                let _ = writeln!(out, "{}: ({})", pr.players().name(p), values.join(", "));
            }
        }
    }
    Ok(out)
}

fn cmd_l1_matrix(io: &InputArgs, player: &str) -> CmdResult {
    let pr = load_relation(&io.input)?;
    let p = player_index(&pr, player)?;
    let m = Statistics::full(&pr).l1_matrix(p);
    let mut out = String::new();
    match io.format {
        Format::Csv => {
            let header: Vec<String> = (1..=m.num_classes()).map(|k| format!("class{k}")).collect();
            let _ = writeln!(out, "size,{}", header.join(","));
            for (s, row) in m.rows.iter().enumerate() {
                let row: Vec<String> = row.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "{},{}", s + 1, row.join(","));
            }
        }
        Format::Text => {
            let w = m
                .rows
                .iter()
                .flatten()
                .map(|v| v.to_string().len())
                .max()
                .unwrap_or(1);
            for (s, row) in m.rows.iter().enumerate() {
                let _ = write!(out, "{:>3}:", s + 1);
                for v in row {
                    let _ = write!(out, " {v:>w$}");
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}

const FULL_LISTING_MAX_PLAYERS: usize = 12;

fn cmd_gen(input: &Path) -> CmdResult {
    let text = read(input)?;
    let game = parse_game(&text).map_err(|e| input_error(format!("{}: {e}", input.display())))?;
    for w in game.warnings() {
        eprintln!("warning: {}: {w}", input.display());
    }
    let pr = game.to_power_relation();
    if pr.n() <= FULL_LISTING_MAX_PLAYERS {
        return Ok(serialize_power_relation(&pr));
    }
    let mut out = String::from("class,count\n");
    for (k, class) in pr.classes().iter().enumerate() {
        let _ = writeln!(out, "{},{}", k + 1, class.len());
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_axioms(
    n: usize,
    trials: u64,
    seed: u64,
    solutions: &str,
    axioms: &str,
    use_fixtures: bool,
    witness_dir: Option<&Path>,
    expect_paper: bool,
    format: Format,
) -> CmdResult {
    if !(3..=5).contains(&n) {
        return Err(input_error(format!("-n must be 3, 4 or 5, got {n}")));
    }
    let solutions: Vec<SolutionRef> = match solutions.trim() {
        "main" => SolutionRef::MAIN.to_vec(),
        "all" => SolutionRef::all().collect(),
        list => parse_list(list, "solutions")?,
    };
    let axioms: Vec<Axiom> = match axioms.trim() {
        "all" => Axiom::ALL.to_vec(),
        "table" => Axiom::TABLE.to_vec(),
        list => parse_list(list, "axioms")?,
    };
    let config = GridConfig {
        n,
        trials,
        seed,
        use_fixtures,
    };
    let mut report = run_grid(&solutions, &axioms, &config);
    if let Some(dir) = witness_dir {
        report
            .write_witnesses(dir)
            .map_err(|e| input_error(format!("{}: {e}", dir.display())))?;
    }
    let out = match format {
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut out = format!("{:16}", "");
            for a in &axioms {
                let _ = write!(out, " {:>5}", a.name());
            }
            out.push('\n');
            for &s in &solutions {
                let _ = write!(out, "{:16}", s.name());
                for &a in &axioms {
                    let mark = match report.cell(s, a).map(|c| &c.outcome) {
                        Some(CellOutcome::Satisfied) => "yes",
                        Some(CellOutcome::Refuted(_)) => "no",
                        _ => "-",
                    };
                    let _ = write!(out, " {mark:>5}");
                }
                out.push('\n');
            }
            out
        }
    };
    if expect_paper {
        let mismatches = report.mismatches();
        if !mismatches.is_empty() {
            let mut message = out;
            for c in mismatches {
                let _ = writeln!(
                    message,
                    "mismatch: {} {} is {} but the published table disagrees",
                    c.solution,
                    c.axiom,
                    c.outcome.label()
                );
            }
            return Err(Failure { code: 2, message });
        }
    }
    Ok(out)
}

fn check(ok: &mut bool, label: &str, good: bool) -> &'static str {
    if !good {
        *ok = false;
        eprintln!("mismatch: {label}");
    }
    if good {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn cmd_casestudy(dump_game: bool) -> CmdResult {
    let game = casestudy::game();
    if dump_game {
        return Ok(serialize_game(&game));
    }
    let pr = game.to_power_relation();
    let names = pr.players().names().to_vec();
    let stats = Statistics::full(&pr);
    let mut ok = true;
    let mut out = String::new();

    let ranks = |m: Method| ranks_from_pairwise(&m.apply(&pr)).map(|r| r.ranks);
    let lexcel = ranks(Method::LexCel);
    let l1 = ranks(Method::L1);
    let cp = ranks(Method::Cp);
    let dual = ranks(Method::DualLex);
    let l1s = ranks(Method::L1Star);
    let show = |r: &Result<Vec<usize>, _>, p: usize| match r {
        Ok(v) => v[p].to_string(),
        Err(_) => "-".to_string(),
    };

    let _ = writeln!(out, "Party rankings (duallex and l1star have no published reference)");
    let _ = writeln!(
        out,
        "{:10} {:>5} {:>5} {:>6} {:>4} {:>7} {:>7} {:>6}",
        "party", "lower", "upper", "lexcel", "l1", "cp", "duallex", "l1star"
    );
    for (p, name) in names.iter().enumerate() {
        let (_, lower, upper) = casestudy::PARTIES[p];
        let _ = writeln!(
            out,
            "{:10} {:>5} {:>5} {:>6} {:>4} {:>7} {:>7} {:>6}",
            name,
            lower,
            upper,
            show(&lexcel, p),
            show(&l1, p),
            show(&cp, p),
            show(&dual, p),
            show(&l1s, p)
        );
    }
    let expect = |r: &Result<Vec<usize>, _>, e: &[usize]| matches!(r, Ok(v) if v[..] == e[..]);
    let _ = writeln!(out, "lexcel ranks: {}", check(&mut ok, "lexcel ranks", expect(&lexcel, &casestudy::EXPECTED_LEXCEL_RANKS)));
    let _ = writeln!(out, "l1 ranks: {}", check(&mut ok, "l1 ranks", expect(&l1, &casestudy::EXPECTED_L1_RANKS)));
    let _ = writeln!(out, "cp ranks: {}", check(&mut ok, "cp ranks", expect(&cp, &casestudy::EXPECTED_CP_RANKS)));

    let idx = |label: &str| pr.players().index_of(label).expect("embedded label");
    let (grko, osf) = (idx("GrKO"), idx("OSF"));
    out.push('\n');
    for (label, p, expected) in [
        ("GrKO", grko, casestudy::EXPECTED_THETA_GRKO),
        ("OSF", osf, casestudy::EXPECTED_THETA_OSF),
    ] {
        let theta = stats.theta(p);
        let verdict = check(&mut ok, &format!("theta {label}"), theta == expected);
        let _ = writeln!(out, "theta({label}) = {theta:?} {verdict}");
    }

    for (label, p, expected) in [
        ("GrKO", grko, casestudy::EXPECTED_M_GRKO),
        ("OSF", osf, casestudy::EXPECTED_M_OSF),
    ] {
        let m = stats.l1_matrix(p);
        let _ = writeln!(out, "\nM({label}), rows 1-7 and last:");
        for (s, want) in expected.iter().enumerate() {
            let row = &m.rows[s];
            let verdict = check(&mut ok, &format!("M({label}) row {}", s + 1), row[..] == want[..]);
            let _ = writeln!(out, "{:>3}: {row:?} {verdict}", s + 1);
        }
        let last = m.rows.last().expect("rows");
        let verdict = check(&mut ok, &format!("M({label}) last row"), last[..] == casestudy::EXPECTED_M_LAST_ROW[..]);
        let _ = writeln!(out, "{:>3}: {last:?} {verdict}", m.rows.len());
    }

    let full = cp_matrix(&pr);
    let sub: Vec<usize> = casestudy::CP_SUBSET.iter().map(|l| idx(l)).collect();
    let _ = writeln!(out, "\nCP comparisons d_ij:");
    for (a, &i) in sub.iter().enumerate() {
        let row: Vec<u64> = sub.iter().map(|&j| full[i][j]).collect();
        let verdict = check(
            &mut ok,
            &format!("CP row {}", casestudy::CP_SUBSET[a]),
            row[..] == casestudy::EXPECTED_CP_SUBMATRIX[a][..],
        );
        let _ = writeln!(out, "{:10} {row:?} {verdict}", casestudy::CP_SUBSET[a]);
    }

    if ok {
        Ok(out)
    } else {
        Err(Failure { code: 2, message: out })
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Rank { io, methods } => cmd_rank(&io, &methods),
        Command::CpMatrix { io, players } => cmd_cp_matrix(&io, players.as_deref()),
        Command::Theta { io, player } => cmd_theta(&io, player.as_deref()),
        Command::L1Matrix { io, player } => cmd_l1_matrix(&io, &player),
        Command::Gen { input } => cmd_gen(&input),
        Command::Axioms {
            n,
            trials,
            seed,
            solutions,
            axioms,
            no_fixtures,
            witness_dir,
            expect_paper,
            format,
        } => cmd_axioms(
            n,
            trials,
            seed,
            &solutions,
            &axioms,
            !no_fixtures,
            witness_dir.as_deref(),
            expect_paper,
            format,
        ),
        Command::Casestudy { dump_game } => cmd_casestudy(dump_game),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if f.code == 2 {
                print!("{}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
