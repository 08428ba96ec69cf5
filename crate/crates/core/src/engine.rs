//! Bounded-horizon solver for alternating Attacker-Defender reachability
//! games, with strategy extraction, scripted and interactive play, and
//! replay of one move sequence across several representations of a game.
//!
//! A round is a Defender move followed by an Attacker move. The target is
//! only tested after Attacker moves, never on the initial configuration.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Defender,
    Attacker,
}

impl Player {
    pub fn tag(self) -> char {
        match self {
            Self::Defender => 'D',
            Self::Attacker => 'A',
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "D" => Some(Self::Defender),
            "A" => Some(Self::Attacker),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// A game given by index-addressed moves.
pub trait GameDomain: Sync {
    type Config: Clone + Send + Sync;
    type Key: Clone + Eq + Hash + Send + Sync;

    fn initial(&self) -> Self::Config;
    fn move_count(&self, player: Player) -> usize;
    fn apply(&self, cfg: &Self::Config, player: Player, index: usize) -> Self::Config;
    fn is_target(&self, cfg: &Self::Config) -> bool;
    /// Equal keys must mean equal configurations.
    fn key(&self, cfg: &Self::Config) -> Self::Key;
    fn render_key(&self, key: &Self::Key) -> String;

    fn render_config(&self, cfg: &Self::Config) -> String {
        self.render_key(&self.key(cfg))
    }

    /// Human-readable description of a move, used by interactive play.
    fn move_label(&self, player: Player, index: usize) -> String {
        format!("{}{}", player.tag(), index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("horizon must be at least one round")]
    ZeroHorizon,
    #[error("node cap of {cap} exceeded after {explored} nodes; attacker has no win within {completed} rounds")]
    NodeCapExceeded { cap: u64, explored: u64, completed: usize },
    #[error("{player} move {index} out of range ({count} moves)")]
    MoveOutOfRange { player: Player, index: usize, count: usize },
    #[error("script for {0} is exhausted")]
    ScriptExhausted(Player),
    #[error("strategy has no entry for {player} at key `{key}` with {rounds} rounds left")]
    MissingStrategyEntry { player: Player, key: String, rounds: usize },
    #[error("interactive input ended")]
    InputClosed,
    #[error("i/o error: {0}")]
    Io(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("moves must alternate starting with Defender (record {0})")]
    TurnOrder(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AttackerWinsWithin(usize),
    DefenderSurvives(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AttackerWinsWithin(k) => write!(f, "AttackerWinsWithin({k})"),
            Self::DefenderSurvives(k) => write!(f, "DefenderSurvives({k})"),
        }
    }
}

/// Move choices keyed by rendered configuration key and remaining rounds.
///
/// Attacker entries are keyed by the configuration after the Defender move
/// of the round; Defender entries by the configuration before it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Strategy {
    pub entries: BTreeMap<(String, usize), usize>,
}

impl Strategy {
    pub fn get(&self, key: &str, rounds: usize) -> Option<usize> {
        self.entries.get(&(key.to_string(), rounds)).copied()
    }

    /// Move for `player` with `rounds` left. An Attacker entry for fewer
    /// rounds still wins in time, and a Defender entry for more rounds still
    /// survives, so the nearest such entry is used when there is no exact one.
    pub fn lookup(&self, key: &str, rounds: usize, player: Player) -> Option<usize> {
        let k = key.to_string();
        match player {
            Player::Attacker => self.entries.range((k.clone(), 0)..=(k, rounds)).next_back(),
            Player::Defender => self.entries.range((k.clone(), rounds)..=(k, usize::MAX)).next(),
        }
        .map(|(_, &m)| m)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One line per entry: `key=<key> rounds=<r> move=<index>`.
    pub fn to_text(&self) -> String {
        self.entries.iter().map(|((k, r), m)| format!("key={k} rounds={r} move={m}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<Self, EngineError> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| EngineError::Parse { line: i + 1, message: message.to_string() };
            let rest = line.strip_prefix("key=").ok_or_else(|| err("expected `key=`"))?;
            let (rest, mv) = rest.rsplit_once(" move=").ok_or_else(|| err("expected ` move=`"))?;
            let (key, rounds) = rest.rsplit_once(" rounds=").ok_or_else(|| err("expected ` rounds=`"))?;
            let rounds = rounds.parse().map_err(|_| err("bad round count"))?;
            let mv = mv.trim().parse().map_err(|_| err("bad move index"))?;
            entries.insert((key.to_string(), rounds), mv);
        }
        Ok(Self { entries })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    /// Attacker strategy; empty when Defender survives.
    pub strategy: Strategy,
    pub explored: u64,
    pub horizon: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolverOptions {
    /// Worker threads for the root fan-out; `Some(1)` runs sequentially and
    /// `None` uses the global pool.
    pub jobs: Option<usize>,
    pub node_cap: Option<u64>,
}

struct Search<'g, G: GameDomain> {
    game: &'g G,
    memo: HashMap<(G::Key, usize), bool>,
    strategy: BTreeMap<(String, usize), usize>,
    explored: &'g AtomicU64,
    cap: u64,
}

#[derive(Debug)]
struct CapHit;

impl<'g, G: GameDomain> Search<'g, G> {
    fn new(game: &'g G, explored: &'g AtomicU64, cap: u64) -> Self {
        Self { game, memo: HashMap::new(), strategy: BTreeMap::new(), explored, cap }
    }

    fn tick(&self) -> Result<(), CapHit> {
        if self.explored.fetch_add(1, Ordering::Relaxed) >= self.cap {
            Err(CapHit)
        } else {
            Ok(())
        }
    }

    /// Attacker can force a target within `r` rounds from `cfg`.
    fn wins(&mut self, cfg: &G::Config, r: usize) -> Result<bool, CapHit> {
        let key = (self.game.key(cfg), r);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.tick()?;
        let mut all = true;
        for d in 0..self.game.move_count(Player::Defender) {
            let after_d = self.game.apply(cfg, Player::Defender, d);
            if !self.answers(&after_d, r)? {
                all = false;
                break;
            }
        }
        self.memo.insert(key, all);
        Ok(all)
    }

    /// Some Attacker reply to the post-Defender configuration wins within
    /// the `r` rounds left (this one included). Records the lowest such move.
    fn answers(&mut self, after_d: &G::Config, r: usize) -> Result<bool, CapHit> {
        for a in 0..self.game.move_count(Player::Attacker) {
            let next = self.game.apply(after_d, Player::Attacker, a);
            if self.game.is_target(&next) || (r > 1 && self.wins(&next, r - 1)?) {
                let k = self.game.render_key(&self.game.key(after_d));
                self.strategy.insert((k, r), a);
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) if n > 1 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

type Branch = Result<(bool, BTreeMap<(String, usize), usize>), CapHit>;

/// Root of one fixed-horizon search. Each Defender move at the root is an
/// independent branch with its own memo, so node counts and strategy tables
/// do not depend on how branches are scheduled.
fn solve_root<G: GameDomain>(
    game: &G,
    horizon: usize,
    parallel: bool,
    explored: &AtomicU64,
    cap: u64,
) -> Branch {
    let init = game.initial();
    let branch = |d: usize| -> Branch {
        let mut s = Search::new(game, explored, cap);
        let after_d = game.apply(&init, Player::Defender, d);
        let ok = s.answers(&after_d, horizon)?;
        Ok((ok, s.strategy))
    };
    let defender = 0..game.move_count(Player::Defender);
    let results: Vec<_> = if parallel { defender.into_par_iter().map(branch).collect() } else { defender.map(branch).collect() };
    let mut merged = BTreeMap::new();
    let mut all = true;
    for r in results {
        let (ok, strat) = r?;
        merged.extend(strat);
        if !ok {
            all = false;
            break;
        }
    }
    Ok((all, merged))
}

/// Decides whether Attacker can force a target within `k` rounds, and
/// returns the least such number of rounds with a strategy that achieves it.
pub fn attacker_wins_within<G: GameDomain>(
    game: &G,
    k: usize,
    opts: SolverOptions,
) -> Result<SolveResult, EngineError> {
    if k == 0 {
        return Err(EngineError::ZeroHorizon);
    }
    let explored = AtomicU64::new(0);
    let cap = opts.node_cap.unwrap_or(u64::MAX);
    let parallel = opts.jobs != Some(1);
    with_pool(opts.jobs, || {
        for j in 1..=k {
            match solve_root(game, j, parallel, &explored, cap) {
                Ok((true, entries)) => {
                    return Ok(SolveResult {
                        verdict: Verdict::AttackerWinsWithin(j),
                        strategy: Strategy { entries },
                        explored: explored.load(Ordering::Relaxed),
                        horizon: k,
                    })
                }
                Ok((false, _)) => {}
                Err(CapHit) => {
                    return Err(EngineError::NodeCapExceeded {
                        cap,
                        explored: explored.load(Ordering::Relaxed),
                        completed: j - 1,
                    })
                }
            }
        }
        Ok(SolveResult {
            verdict: Verdict::DefenderSurvives(k),
            strategy: Strategy::default(),
            explored: explored.load(Ordering::Relaxed),
            horizon: k,
        })
    })
}

struct Survival<'g, G: GameDomain> {
    game: &'g G,
    memo: HashMap<(G::Key, usize), bool>,
    strategy: BTreeMap<(String, usize), usize>,
}

impl<G: GameDomain> Survival<'_, G> {
    /// Defender can avoid every target for `r` more rounds from `cfg`.
    fn survives(&mut self, cfg: &G::Config, r: usize) -> bool {
        if r == 0 {
            return true;
        }
        let key = (self.game.key(cfg), r);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut found = None;
        for d in 0..self.game.move_count(Player::Defender) {
            let after_d = self.game.apply(cfg, Player::Defender, d);
            let safe = (0..self.game.move_count(Player::Attacker)).all(|a| {
                let next = self.game.apply(&after_d, Player::Attacker, a);
                !self.game.is_target(&next) && self.survives(&next, r - 1)
            });
            if safe {
                found = Some(d);
                break;
            }
        }
        if let Some(d) = found {
            self.strategy.insert((self.game.render_key(&key.0), r), d);
        }
        self.memo.insert(key, found.is_some());
        found.is_some()
    }
}

/// A Defender strategy avoiding all targets for `k` rounds, keyed by the
/// configuration before each Defender move, or `None` if Attacker wins.
pub fn defender_survival_strategy<G: GameDomain>(game: &G, k: usize) -> Result<Option<Strategy>, EngineError> {
    if k == 0 {
        return Err(EngineError::ZeroHorizon);
    }
    let mut s = Survival { game, memo: HashMap::new(), strategy: BTreeMap::new() };
    Ok(s.survives(&game.initial(), k).then_some(Strategy { entries: s.strategy }))
}

/// Plain minimax without memoization or strategy bookkeeping, used to
/// validate the solver.
pub fn exhaustive_attacker_wins<G: GameDomain>(game: &G, cfg: &G::Config, r: usize) -> bool {
    r > 0
        && (0..game.move_count(Player::Defender)).all(|d| {
            let after_d = game.apply(cfg, Player::Defender, d);
            (0..game.move_count(Player::Attacker)).any(|a| {
                let next = game.apply(&after_d, Player::Attacker, a);
                game.is_target(&next) || exhaustive_attacker_wins(game, &next, r - 1)
            })
        })
}

#[derive(Debug, Clone)]
pub enum Policy {
    /// Lookup in a strategy table, keyed as produced by the solver.
    Table(Strategy),
    /// Fixed move indices, one per round.
    Script(Vec<usize>),
    /// Uniform choice from a seeded generator.
    Random(u64),
    /// Prompt on the interactive input.
    Human,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub round: usize,
    pub player: Player,
    pub index: usize,
    pub config: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
    /// The last Attacker move reached a target.
    pub attacker_won: bool,
}

impl Trace {
    pub fn moves(&self) -> Vec<(Player, usize)> {
        self.records.iter().map(|r| (r.player, r.index)).collect()
    }

    /// One record per line: `round=<t> player=<D|A> move=<index> config=<rendering>`.
    pub fn to_text(&self) -> String {
        self.records
            .iter()
            .map(|r| format!("round={} player={} move={} config={}\n", r.round, r.player, r.index, r.config))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self, EngineError> {
        let mut records = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| EngineError::Parse { line: i + 1, message: message.to_string() };
            let rest = line.strip_prefix("round=").ok_or_else(|| err("expected `round=`"))?;
            let (round, rest) = rest.split_once(" player=").ok_or_else(|| err("expected ` player=`"))?;
            let (player, rest) = rest.split_once(" move=").ok_or_else(|| err("expected ` move=`"))?;
            let (index, config) = rest.split_once(" config=").ok_or_else(|| err("expected ` config=`"))?;
            records.push(TraceRecord {
                round: round.parse().map_err(|_| err("bad round"))?,
                player: Player::from_tag(player).ok_or_else(|| err("player must be D or A"))?,
                index: index.parse().map_err(|_| err("bad move index"))?,
                config: config.to_string(),
            });
        }
        let trace = Self { records, attacker_won: false };
        check_alternation(&trace.moves())?;
        Ok(trace)
    }
}

fn check_alternation(moves: &[(Player, usize)]) -> Result<(), EngineError> {
    for (i, (p, _)) in moves.iter().enumerate() {
        let expected = if i % 2 == 0 { Player::Defender } else { Player::Attacker };
        if *p != expected {
            return Err(EngineError::TurnOrder(i + 1));
        }
    }
    Ok(())
}

struct PolicyState {
    policy: Policy,
    cursor: usize,
    rng: Option<ChaCha8Rng>,
}

impl PolicyState {
    fn new(policy: Policy) -> Self {
        let rng = match policy {
            Policy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Self { policy, cursor: 0, rng }
    }
}

fn choose<G: GameDomain>(
    game: &G,
    state: &mut PolicyState,
    player: Player,
    cfg: &G::Config,
    rounds_left: usize,
    input: &mut dyn BufRead,
    output: &mut dyn Write,
) -> Result<usize, EngineError> {
    let count = game.move_count(player);
    let index = match &state.policy {
        Policy::Table(strategy) => {
            let key = game.render_key(&game.key(cfg));
            strategy
                .lookup(&key, rounds_left, player)
                .ok_or(EngineError::MissingStrategyEntry { player, key, rounds: rounds_left })?
        }
        Policy::Script(moves) => {
            let m = *moves.get(state.cursor).ok_or(EngineError::ScriptExhausted(player))?;
            state.cursor += 1;
            m
        }
        Policy::Random(_) => state.rng.as_mut().expect("seeded").gen_range(0..count),
        Policy::Human => prompt(game, player, cfg, input, output)?,
    };
    if index >= count {
        return Err(EngineError::MoveOutOfRange { player, index, count });
    }
    Ok(index)
}

fn prompt<G: GameDomain>(
    game: &G,
    player: Player,
    cfg: &G::Config,
    input: &mut dyn BufRead,
    output: &mut dyn Write,
) -> Result<usize, EngineError> {
    let io = |e: std::io::Error| EngineError::Io(e.to_string());
    let count = game.move_count(player);
    writeln!(output, "configuration: {}", game.render_config(cfg)).map_err(io)?;
    for i in 0..count {
        writeln!(output, "  [{i}] {}", game.move_label(player, i)).map_err(io)?;
    }
    loop {
        write!(output, "{player} move> ").map_err(io)?;
        output.flush().map_err(io)?;
        let mut line = String::new();
        if input.read_line(&mut line).map_err(io)? == 0 {
            return Err(EngineError::InputClosed);
        }
        let answer = line.trim();
        if let Ok(i) = answer.parse::<usize>() {
            if i < count {
                return Ok(i);
            }
        }
        if let Some(i) = (0..count).find(|&i| game.move_label(player, i) == answer) {
            return Ok(i);
        }
        writeln!(output, "expected an index below {count} or a move label").map_err(io)?;
    }
}

/// Plays up to `rounds` rounds, stopping early once Attacker reaches a
/// target. Interactive policies read from `input` and prompt on `output`.
pub fn play_with_io<G: GameDomain>(
    game: &G,
    defender: Policy,
    attacker: Policy,
    rounds: usize,
    input: &mut dyn BufRead,
    output: &mut dyn Write,
) -> Result<Trace, EngineError> {
    let mut d = PolicyState::new(defender);
    let mut a = PolicyState::new(attacker);
    let mut cfg = game.initial();
    let mut trace = Trace::default();
    for t in 1..=rounds {
        let left = rounds - t + 1;
        let di = choose(game, &mut d, Player::Defender, &cfg, left, input, output)?;
        cfg = game.apply(&cfg, Player::Defender, di);
        trace.records.push(TraceRecord {
            round: t,
            player: Player::Defender,
            index: di,
            config: game.render_config(&cfg),
        });
        let ai = choose(game, &mut a, Player::Attacker, &cfg, left, input, output)?;
        cfg = game.apply(&cfg, Player::Attacker, ai);
        trace.records.push(TraceRecord {
            round: t,
            player: Player::Attacker,
            index: ai,
            config: game.render_config(&cfg),
        });
        if game.is_target(&cfg) {
            trace.attacker_won = true;
            break;
        }
    }
    Ok(trace)
}

/// [`play_with_io`] on standard input and output.
pub fn play<G: GameDomain>(game: &G, defender: Policy, attacker: Policy, rounds: usize) -> Result<Trace, EngineError> {
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut output = std::io::stdout();
    play_with_io(game, defender, attacker, rounds, &mut input, &mut output)
}

/// Object-safe view of a game used to replay move sequences.
pub trait ReplayDomain: Sync {
    fn name(&self) -> &str;
    /// Target predicate after each move of `moves`.
    fn targets(&self, moves: &[(Player, usize)]) -> Result<Vec<bool>, EngineError>;
}

pub struct Named<'a, G> {
    pub name: String,
    pub game: &'a G,
}

impl<'a, G: GameDomain> Named<'a, G> {
    pub fn new(name: impl Into<String>, game: &'a G) -> Self {
        Self { name: name.into(), game }
    }
}

impl<G: GameDomain> ReplayDomain for Named<'_, G> {
    fn name(&self) -> &str {
        &self.name
    }

    fn targets(&self, moves: &[(Player, usize)]) -> Result<Vec<bool>, EngineError> {
        let mut cfg = self.game.initial();
        let mut out = Vec::with_capacity(moves.len());
        for &(player, index) in moves {
            let count = self.game.move_count(player);
            if index >= count {
                return Err(EngineError::MoveOutOfRange { player, index, count });
            }
            cfg = self.game.apply(&cfg, player, index);
            out.push(self.game.is_target(&cfg));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub round: usize,
    pub player: Player,
    pub verdicts: Vec<(String, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub rounds: usize,
    pub domains: Vec<String>,
    pub divergence: Option<Divergence>,
}

impl CrosscheckReport {
    pub fn agrees(&self) -> bool {
        self.divergence.is_none()
    }
}

impl fmt::Display for CrosscheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.divergence {
            None => write!(f, "AGREE at all rounds ({} rounds, domains: {})", self.rounds, self.domains.join(", ")),
            Some(d) => {
                let v: Vec<String> = d.verdicts.iter().map(|(n, b)| format!("{n}={b}")).collect();
                write!(f, "DISAGREE at round {} after {} move: {}", d.round, d.player, v.join(" "))
            }
        }
    }
}

/// Replays `moves` in every domain and compares target predicates after
/// every move, reporting the first round where they differ.
pub fn crosscheck(moves: &[(Player, usize)], domains: &[&dyn ReplayDomain]) -> Result<CrosscheckReport, EngineError> {
    check_alternation(moves)?;
    let per_domain: Vec<Vec<bool>> = domains.iter().map(|d| d.targets(moves)).collect::<Result<_, _>>()?;
    let names: Vec<String> = domains.iter().map(|d| d.name().to_string()).collect();
    let mut divergence = None;
    for (i, &(player, _)) in moves.iter().enumerate() {
        let first = per_domain.first().map(|v| v[i]);
        if per_domain.iter().any(|v| Some(v[i]) != first) {
            divergence = Some(Divergence {
                round: i / 2 + 1,
                player,
                verdicts: names.iter().cloned().zip(per_domain.iter().map(|v| v[i])).collect(),
            });
            break;
        }
    }
    Ok(CrosscheckReport { rounds: moves.len().div_ceil(2), domains: names, divergence })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Configuration is a free-group word over `{a, b}` as a vector of
    /// signed letters; moves append one signed letter.
    pub(crate) struct Toy {
        pub defender: Vec<i8>,
        pub attacker: Vec<i8>,
    }

    impl GameDomain for Toy {
        type Config = Vec<i8>;
        type Key = Vec<i8>;

        fn initial(&self) -> Vec<i8> {
            Vec::new()
        }

        fn move_count(&self, player: Player) -> usize {
            match player {
                Player::Defender => self.defender.len(),
                Player::Attacker => self.attacker.len(),
            }
        }

        fn apply(&self, cfg: &Vec<i8>, player: Player, index: usize) -> Vec<i8> {
            let l = match player {
                Player::Defender => self.defender[index],
                Player::Attacker => self.attacker[index],
            };
            let mut out = cfg.clone();
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
            out
        }

        fn is_target(&self, cfg: &Vec<i8>) -> bool {
            cfg.is_empty()
        }

        fn key(&self, cfg: &Vec<i8>) -> Vec<i8> {
            cfg.clone()
        }

        fn render_key(&self, key: &Vec<i8>) -> String {
            format!("{key:?}")
        }
    }

    fn cancel() -> Toy {
        Toy { defender: vec![1], attacker: vec![-1] }
    }

    fn escape() -> Toy {
        Toy { defender: vec![1, 2], attacker: vec![-1] }
    }

    #[test]
    fn toy_verdicts() {
        for jobs in [Some(1), None] {
            let opts = SolverOptions { jobs, node_cap: None };
            let r = attacker_wins_within(&cancel(), 1, opts).unwrap();
            assert_eq!(r.verdict, Verdict::AttackerWinsWithin(1));
            assert_eq!(r.strategy.get("[1]", 1), Some(0));
            let r = attacker_wins_within(&escape(), 3, opts).unwrap();
            assert_eq!(r.verdict, Verdict::DefenderSurvives(3));
        }
        assert_eq!(attacker_wins_within(&cancel(), 0, SolverOptions::default()), Err(EngineError::ZeroHorizon));
    }

    #[test]
    fn survival_strategies() {
        assert_eq!(defender_survival_strategy(&cancel(), 2).unwrap(), None);
        let s = defender_survival_strategy(&escape(), 3).unwrap().unwrap();
        assert_eq!(s.get("[]", 3), Some(1));
        assert_eq!(s.lookup("[]", 2, Player::Defender), Some(1));
        assert_eq!(s.lookup("[]", 4, Player::Defender), None);
    }

    #[test]
    fn attacker_entries_serve_longer_horizons() {
        let r = attacker_wins_within(&cancel(), 3, SolverOptions::default()).unwrap();
        assert_eq!(r.strategy.lookup("[1]", 3, Player::Attacker), Some(0));
        assert_eq!(r.strategy.lookup("[1]", 0, Player::Attacker), None);
        let t = play(&cancel(), Policy::Script(vec![0]), Policy::Table(r.strategy), 3).unwrap();
        assert!(t.attacker_won);
    }

    #[test]
    fn node_cap_is_reported() {
        let opts = SolverOptions { jobs: Some(1), node_cap: Some(2) };
        assert!(matches!(attacker_wins_within(&escape(), 5, opts), Err(EngineError::NodeCapExceeded { .. })));
    }

    #[test]
    fn scripted_and_random_play() {
        let mut empty: &[u8] = &[];
        let mut sink = Vec::new();
        let t = play_with_io(&escape(), Policy::Script(vec![1, 0]), Policy::Script(vec![0, 0]), 2, &mut empty, &mut sink)
            .unwrap();
        assert_eq!(t.records.len(), 4);
        assert_eq!(t.records[0].config, "[2]");
        assert!(!t.attacker_won);
        let r1 = play_with_io(&escape(), Policy::Random(7), Policy::Random(7), 5, &mut empty, &mut sink).unwrap();
        let r2 = play_with_io(&escape(), Policy::Random(7), Policy::Random(7), 5, &mut empty, &mut sink).unwrap();
        assert_eq!(r1, r2);
        let e = play_with_io(&escape(), Policy::Script(vec![]), Policy::Random(1), 1, &mut empty, &mut sink);
        assert_eq!(e, Err(EngineError::ScriptExhausted(Player::Defender)));
    }

    #[test]
    fn human_play_reads_moves() {
        let mut input: &[u8] = b"9\n0\nA0\n";
        let mut out = Vec::new();
        let t = play_with_io(&cancel(), Policy::Human, Policy::Human, 1, &mut input, &mut out).unwrap();
        assert!(t.attacker_won);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("expected an index below 1"));
    }

    #[test]
    fn trace_and_strategy_text_round_trip() {
        let mut empty: &[u8] = &[];
        let mut sink = Vec::new();
        let t = play_with_io(&escape(), Policy::Random(3), Policy::Random(4), 3, &mut empty, &mut sink).unwrap();
        assert_eq!(Trace::parse(&t.to_text()).unwrap().moves(), t.moves());
        let s = attacker_wins_within(&cancel(), 2, SolverOptions::default()).unwrap().strategy;
        assert_eq!(Strategy::parse(&s.to_text()).unwrap(), s);
        assert!(matches!(Trace::parse("round=1 player=A move=0 config=x"), Err(EngineError::TurnOrder(1))));
    }

    #[test]
    fn crosscheck_detects_disagreement() {
        let a = cancel();
        let b = Toy { defender: vec![1], attacker: vec![1] };
        let na = Named::new("a", &a);
        let nb = Named::new("b", &b);
        let moves = [(Player::Defender, 0), (Player::Attacker, 0)];
        let ok = crosscheck(&moves, &[&na, &na]).unwrap();
        assert!(ok.agrees());
        let bad = crosscheck(&moves, &[&na, &nb]).unwrap();
        assert_eq!(bad.divergence.unwrap().round, 1);
        assert!(crosscheck(&[], &[&na, &nb]).unwrap().agrees());
    }
}
