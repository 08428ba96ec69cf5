//! `adgame`: build automata and games from PCP instances, check words,
//! solve and play bounded games, and cross-check plays across encodings.

mod policy;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adgame_core::automaton::{build_solution_checker, AcceptanceMode, Universality, WeightedAutomaton};
use adgame_core::braid::{build_braid3_game, build_braid5_game, parse_braid_dump, BraidGame};
use adgame_core::engine::{
    attacker_wins_within, crosscheck, defender_survival_strategy, play, GameDomain, Named, ReplayDomain,
    SolverOptions, Trace, Verdict,
};
use adgame_core::matrix::{build_matrix_game, parse_matrix_dump, MatrixGame};
use adgame_core::pcp::{parse_instance, PcpInstance};
use adgame_core::word_game::{
    build_weighted_word_game, game_automaton, parse_game_dump, GameDump, PairWordGame, WeightedWordGame, Wiring,
};
use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "adgame", version, about = "Weighted automata and Attacker-Defender games from PCP instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile an instance into an automaton or a game dump.
    Build {
        #[arg(short, long)]
        instance: PathBuf,
        /// Artifacts to write; several may be given.
        #[arg(long, value_enum, default_value = "automaton")]
        emit: Vec<Emit>,
        /// Reverse the automaton (initial q4, final q0, negated weights).
        #[arg(long)]
        reverse: bool,
        /// Unfold self-loops into 2-cycles.
        #[arg(long)]
        unfold: bool,
        /// Automaton format.
        #[arg(long, value_enum, default_value = "dot")]
        format: AutomatonFormat,
        /// Which automaton games are built from.
        #[arg(long, value_enum, default_value = "reverse")]
        wiring: WiringArg,
        /// Output file, or a directory when several artifacts are emitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify a word or run a bounded universality check.
    Check {
        #[arg(short, long)]
        instance: PathBuf,
        #[arg(long, conflicts_with = "universality")]
        word: Option<String>,
        #[arg(long, requires = "max_len")]
        universality: bool,
        #[arg(long)]
        max_len: Option<usize>,
        /// Largest number of candidate words to search.
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Decide a game dump up to a round horizon.
    Solve {
        #[arg(short, long)]
        game: PathBuf,
        #[arg(short, long)]
        rounds: usize,
        /// Worker threads for the search.
        #[arg(short, long)]
        jobs: Option<usize>,
        #[arg(long)]
        node_cap: Option<u64>,
        /// Strategy file to write.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Play a game dump between two policies and record the trace.
    Play {
        #[arg(short, long)]
        game: PathBuf,
        #[arg(short, long)]
        rounds: usize,
        /// human | random:SEED | script:MOVES-OR-FILE | strategy:FILE
        #[arg(long)]
        defender: String,
        #[arg(long)]
        attacker: String,
        /// Trace file to write.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay a trace in the word, pair, matrix and braid games of an instance.
    Crosscheck {
        #[arg(short, long)]
        trace: PathBuf,
        #[arg(short, long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "reverse")]
        wiring: WiringArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Automaton,
    WordGame,
    PairGame,
    MatrixGame,
    Braid3Game,
    Braid5Game,
}

#[derive(Clone, Copy, ValueEnum)]
enum AutomatonFormat {
    Dot,
    Flat,
}

#[derive(Clone, Copy, ValueEnum)]
enum WiringArg {
    Reverse,
    Forward,
}

impl From<WiringArg> for Wiring {
    fn from(w: WiringArg) -> Self {
        match w {
            WiringArg::Reverse => Wiring::Reverse,
            WiringArg::Forward => Wiring::Forward,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_instance(path: &Path) -> Result<PcpInstance> {
    parse_instance(&read(path)?).with_context(|| format!("malformed instance {}", path.display()))
}

/// Every game built from one instance; move indices agree across them.
struct GameFamily {
    word: WeightedWordGame,
    pair: PairWordGame,
    matrix: MatrixGame,
    braid3: BraidGame,
    braid5: BraidGame,
}

impl GameFamily {
    fn build(inst: &PcpInstance, wiring: Wiring) -> Result<Self> {
        let word = build_weighted_word_game(&game_automaton(inst, wiring)?)?;
        let pair = word.to_pair_game().binarize()?;
        let matrix = build_matrix_game(&pair)?;
        let braid3 = build_braid3_game(&word.binarize())?;
        let braid5 = build_braid5_game(&pair)?;
        Ok(Self { word, pair, matrix, braid3, braid5 })
    }
}

fn emit_automaton(inst: &PcpInstance, reverse: bool, unfold: bool, format: AutomatonFormat) -> Result<String> {
    let mut aut: WeightedAutomaton = build_solution_checker(inst);
    if reverse {
        aut = aut.reverse()?;
    }
    if unfold {
        aut = aut.unfold_self_loops()?;
    }
    Ok(match format {
        AutomatonFormat::Dot => aut.export_dot(),
        AutomatonFormat::Flat => aut.flat_dump(),
    })
}

fn file_name(emit: Emit, format: AutomatonFormat) -> &'static str {
    match (emit, format) {
        (Emit::Automaton, AutomatonFormat::Dot) => "automaton.dot",
        (Emit::Automaton, AutomatonFormat::Flat) => "automaton.txt",
        (Emit::WordGame, _) => "word-game.txt",
        (Emit::PairGame, _) => "pair-game.txt",
        (Emit::MatrixGame, _) => "matrix-game.txt",
        (Emit::Braid3Game, _) => "braid3-game.txt",
        (Emit::Braid5Game, _) => "braid5-game.txt",
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_build(
    instance: &Path,
    emit: &[Emit],
    reverse: bool,
    unfold: bool,
    format: AutomatonFormat,
    wiring: Wiring,
    output: Option<&Path>,
) -> Result<()> {
    let inst = load_instance(instance)?;
    let mut emit = emit.to_vec();
    emit.dedup();
    let games = if emit.iter().any(|&e| e != Emit::Automaton) { Some(GameFamily::build(&inst, wiring)?) } else { None };
    let mut artifacts = Vec::new();
    for &e in &emit {
        let text = match (e, &games) {
            (Emit::Automaton, _) => emit_automaton(&inst, reverse, unfold, format)?,
            (Emit::WordGame, Some(g)) => g.word.dump(),
            (Emit::PairGame, Some(g)) => g.pair.dump(),
            (Emit::MatrixGame, Some(g)) => g.matrix.dump(),
            (Emit::Braid3Game, Some(g)) => g.braid3.dump(),
            (Emit::Braid5Game, Some(g)) => g.braid5.dump(),
            _ => unreachable!("games are built for game artifacts"),
        };
        artifacts.push((file_name(e, format), text));
    }
    match output {
        None => artifacts.iter().for_each(|(_, text)| print!("{text}")),
        Some(path) if artifacts.len() == 1 => write(path, &artifacts[0].1)?,
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            for (name, text) in &artifacts {
                write(&dir.join(name), text)?;
            }
        }
    }
    Ok(())
}

fn cmd_check(instance: &Path, word: Option<&str>, max_len: Option<usize>, cap: Option<u128>) -> Result<()> {
    let inst = load_instance(instance)?;
    let a = build_solution_checker(&inst);
    if let Some(text) = word {
        let w = inst.parse_word(text)?;
        let b = a.reverse()?;
        let bad = inst.first_bad_prefix(&w)?;
        let fwd = a.shortest_accepted_prefix(&w, AcceptanceMode::Forward);
        let rev = b.shortest_accepted_prefix(&w, AcceptanceMode::ReverseWeight);
        println!("word: {}", inst.render_word(&w));
        match bad {
            Some((n, case)) => println!("bad prefix: {} (case {})", inst.render_word(&w[..n]), case.roman()),
            None => println!("bad prefix: none"),
        }
        let show = |r: Option<usize>| r.map_or("no accepted prefix".to_string(), |n| format!("prefix {} accepted", inst.render_word(&w[..n])));
        println!("forward automaton: {}", show(fwd));
        println!("reversed automaton: {}", show(rev));
        if fwd != rev {
            bail!("forward and reversed automata disagree");
        }
        match (fwd, bad) {
            (Some(_), Some((_, case))) => println!("accepted (case {})", case.roman()),
            (Some(_), None) => println!("accepted (no bad prefix)"),
            (None, Some(_)) => println!("rejected (bad prefix not detected within the word)"),
            (None, None) => println!("rejected"),
        }
        return Ok(());
    }
    let len = max_len.context("either --word or --universality --max-len is required")?;
    match a.bounded_universality(len, AcceptanceMode::Forward, cap)? {
        Universality::AllAccepted => println!("all words of length {len} have an accepted prefix"),
        Universality::Counterexample(w) => println!("counterexample: {}", inst.render_word(&w)),
    }
    Ok(())
}

/// A game read from any dump format.
enum LoadedGame {
    Word(WeightedWordGame),
    Pair(PairWordGame),
    Matrix(MatrixGame),
    Braid(BraidGame),
}

fn load_game(path: &Path) -> Result<LoadedGame> {
    let text = read(path)?;
    let kind = text.lines().map(str::trim).find(|l| !l.is_empty()).and_then(|l| l.strip_prefix("game=")).unwrap_or("");
    let context = || format!("malformed game dump {}", path.display());
    Ok(match kind {
        "weighted" | "pair" => match parse_game_dump(&text).with_context(context)? {
            GameDump::Weighted(g) => LoadedGame::Word(g),
            GameDump::Pair(g) => LoadedGame::Pair(g),
        },
        "matrix" => LoadedGame::Matrix(parse_matrix_dump(&text).with_context(context)?),
        "braid" => LoadedGame::Braid(parse_braid_dump(&text).with_context(context)?),
        other => bail!("{}: unknown game kind `{other}`", path.display()),
    })
}

macro_rules! with_game {
    ($game:expr, $g:ident => $body:expr) => {
        match $game {
            LoadedGame::Word($g) => $body,
            LoadedGame::Pair($g) => $body,
            LoadedGame::Matrix($g) => $body,
            LoadedGame::Braid($g) => $body,
        }
    };
}

fn solve<G: GameDomain>(g: &G, rounds: usize, jobs: Option<usize>, node_cap: Option<u64>) -> Result<(String, String)> {
    let r = attacker_wins_within(g, rounds, SolverOptions { jobs, node_cap })?;
    let mut report = format!("verdict: {}\nexplored: {}\nhorizon: {}\n", r.verdict, r.explored, r.horizon);
    let strategy = match r.verdict {
        Verdict::AttackerWinsWithin(_) => format!("# attacker\n{}", r.strategy.to_text()),
        Verdict::DefenderSurvives(_) => {
            let s = defender_survival_strategy(g, rounds)?.context("no survival strategy despite the verdict")?;
            format!("# defender\n{}", s.to_text())
        }
    };
    let _ = writeln!(report, "strategy entries: {}", strategy.lines().count() - 1);
    Ok((report, strategy))
}

fn cmd_solve(game: &Path, rounds: usize, jobs: Option<usize>, node_cap: Option<u64>, output: Option<&Path>) -> Result<()> {
    let loaded = load_game(game)?;
    let (report, strategy) = with_game!(&loaded, g => solve(g, rounds, jobs, node_cap)?);
    print!("{report}");
    match output {
        Some(path) => write(path, &strategy)?,
        None => print!("{strategy}"),
    }
    Ok(())
}

fn play_game<G: GameDomain>(g: &G, rounds: usize, defender: &str, attacker: &str) -> Result<Trace> {
    let d = policy::parse(g, adgame_core::engine::Player::Defender, defender)?;
    let a = policy::parse(g, adgame_core::engine::Player::Attacker, attacker)?;
    Ok(play(g, d, a, rounds)?)
}

fn cmd_play(game: &Path, rounds: usize, defender: &str, attacker: &str, output: Option<&Path>) -> Result<()> {
    let loaded = load_game(game)?;
    let trace = with_game!(&loaded, g => play_game(g, rounds, defender, attacker)?);
    let text = trace.to_text();
    print!("{text}");
    let last = trace.records.last().map_or(0, |r| r.round);
    if trace.attacker_won {
        println!("attacker reached the target in round {last}");
    } else {
        println!("no target reached in {last} rounds");
    }
    if let Some(path) = output {
        write(path, &text)?;
    }
    Ok(())
}

fn cmd_crosscheck(trace: &Path, instance: &Path, wiring: Wiring) -> Result<bool> {
    let trace = Trace::parse(&read(trace)?).with_context(|| format!("malformed trace {}", trace.display()))?;
    let games = GameFamily::build(&load_instance(instance)?, wiring)?;
    let domains: [&dyn ReplayDomain; 5] = [
        &Named::new("word", &games.word),
        &Named::new("pair", &games.pair),
        &Named::new("matrix", &games.matrix),
        &Named::new("braid3", &games.braid3),
        &Named::new("braid5", &games.braid5),
    ];
    let report = crosscheck(&trace.moves(), &domains)?;
    println!("{report}");
    Ok(report.agrees())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build { instance, emit, reverse, unfold, format, wiring, output } => {
            cmd_build(&instance, &emit, reverse, unfold, format, wiring.into(), output.as_deref())?
        }
        Command::Check { instance, word, universality: _, max_len, cap } => cmd_check(&instance, word.as_deref(), max_len, cap)?,
        Command::Solve { game, rounds, jobs, node_cap, output } => cmd_solve(&game, rounds, jobs, node_cap, output.as_deref())?,
        Command::Play { game, rounds, defender, attacker, output } => {
            cmd_play(&game, rounds, &defender, &attacker, output.as_deref())?
        }
        Command::Crosscheck { trace, instance, wiring } => return cmd_crosscheck(&trace, &instance, wiring.into()),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
