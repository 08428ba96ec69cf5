//! Word games built from the unfolded nine-state automaton.
//!
//! Defender appends single domain letters. Attacker either appends the
//! dummy `#`, or appends a word encoding one automaton transition, or
//! closes the play with an extra move. Attacker's transition moves cancel
//! the Defender letters from the most recent one backwards, so a play
//! follows an automaton path over the reversal of the Defender prefix.
//!
//! For a transition `q →(a,x)→ p` the moves are
//!
//! * `ā·p̄` when `q` is the initial state;
//! * `b̄·q·#̄·ā·p̄` for every Defender letter `b` otherwise, where `b̄`
//!   cancels the letter Defender has just played, `q` the pending `q̄`,
//!   `#̄` the dummy after the earlier letter `a`, and `ā` that letter;
//!
//! each carrying weight `x`. The extra moves `ā·f·ī` (weight 0) for every
//! letter `a` and final state `f`, with `i` the initial state, turn the
//! configuration `i·f̄` into the empty word.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::automaton::{build_solution_checker, AutomatonError, Transition, WeightedAutomaton};
use crate::engine::{GameDomain, Player};
use crate::free_group::{alpha_encode_into, Alphabet, FreeGroupError, GroupLetter, GroupWord};
use crate::pcp::PcpInstance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordGameError {
    #[error("expected the unfolded nine-state automaton, found {0} states")]
    NotUnfolded(usize),
    #[error("symbol `{0}` is used both as a domain letter and a game symbol")]
    NameCollision(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("pair game is already over the binary alphabet")]
    AlreadyBinary,
}

/// Which automaton the game simulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Wiring {
    /// The unfolded solution checker, initial `q0`. Since plays read the
    /// Defender prefix backwards, Attacker wins on prefixes whose reversal
    /// the checker accepts.
    Forward,
    /// The unfolded reversed checker, initial `q4`. Attacker wins on
    /// prefixes the checker itself accepts.
    #[default]
    Reverse,
}

/// The nine-state automaton a game with the given wiring is built from.
pub fn game_automaton(inst: &PcpInstance, wiring: Wiring) -> Result<WeightedAutomaton, AutomatonError> {
    let a = build_solution_checker(inst);
    match wiring {
        Wiring::Forward => a.unfold_self_loops(),
        Wiring::Reverse => a.reverse()?.unfold_self_loops(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordMove {
    pub word: GroupWord,
    pub weight: BigInt,
}

/// Current word and counter of a weighted word game.
pub type WordConfig = WordMove;

/// Where an Attacker move comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveOrigin {
    Dummy,
    /// Transition leaving the initial state.
    Start(Transition),
    /// Transition from another state, cancelling Defender letter `noise`.
    Step { transition: Transition, noise: usize },
    /// Closing move for final state `state` cancelling Defender letter `letter`.
    Close { state: usize, letter: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedWordGame {
    alphabet: Arc<Alphabet>,
    defender: Vec<WordMove>,
    attacker: Vec<WordMove>,
    initial: WordConfig,
    origins: Option<Vec<MoveOrigin>>,
}

/// Symbol names for `A ∪ Q ∪ {#}` in rank order.
fn game_symbols(domain: &[String], states: usize) -> Result<Vec<String>, WordGameError> {
    let mut symbols = domain.to_vec();
    for q in 0..states {
        symbols.push(format!("q{q}"));
    }
    symbols.push("#".into());
    for (i, s) in symbols.iter().enumerate() {
        if symbols[..i].contains(s) {
            return Err(WordGameError::NameCollision(s.clone()));
        }
    }
    Ok(symbols)
}

/// Builds the weighted word game of an unfolded automaton. Attacker move 0
/// is `#`; transition moves follow in transition order, then the extra moves.
///
/// Transitions back into the initial state get no move: no move leaves the
/// initial state after the start, and the closing `q̄_init` would cancel the
/// initial word without reaching a final state.
pub fn build_weighted_word_game(aut: &WeightedAutomaton) -> Result<WeightedWordGame, WordGameError> {
    if aut.num_states() != 9 {
        return Err(WordGameError::NotUnfolded(aut.num_states()));
    }
    let n = aut.alphabet().len();
    let alphabet = Alphabet::new(game_symbols(aut.alphabet(), 9)?)?;
    let letter = |a: usize| GroupLetter::pos(a);
    let state = |q: usize| GroupLetter::pos(n + q);
    let hash = GroupLetter::pos(n + 9);
    let init = aut.initial();
    let word = |raw: Vec<GroupLetter>| GroupWord::reduce(&alphabet, raw);

    let defender = (0..n).map(|a| WordMove { word: word(vec![letter(a)]), weight: BigInt::zero() }).collect();
    let mut attacker = vec![WordMove { word: word(vec![hash]), weight: BigInt::zero() }];
    let mut origins = vec![MoveOrigin::Dummy];
    for t in aut.transitions() {
        if t.from == init {
            attacker.push(WordMove { word: word(vec![letter(t.letter).inv(), state(t.to).inv()]), weight: t.weight.clone() });
            origins.push(MoveOrigin::Start(t.clone()));
        } else if t.to != init {
            for b in 0..n {
                let raw = vec![letter(b).inv(), state(t.from), hash.inv(), letter(t.letter).inv(), state(t.to).inv()];
                attacker.push(WordMove { word: word(raw), weight: t.weight.clone() });
                origins.push(MoveOrigin::Step { transition: t.clone(), noise: b });
            }
        }
    }
    for &f in aut.finals() {
        for a in 0..n {
            attacker.push(WordMove { word: word(vec![letter(a).inv(), state(f), state(init).inv()]), weight: BigInt::zero() });
            origins.push(MoveOrigin::Close { state: f, letter: a });
        }
    }
    let initial = WordMove { word: word(vec![state(init)]), weight: BigInt::zero() };
    Ok(WeightedWordGame { alphabet, defender, attacker, initial, origins: Some(origins) })
}

/// Appends a move: concatenates the words and adds the weights.
pub fn apply_move(cfg: &WordConfig, m: &WordMove) -> WordConfig {
    let mut word = cfg.word.clone();
    word.append(&m.word).expect("moves share the game alphabet");
    WordMove { word, weight: &cfg.weight + &m.weight }
}

pub fn is_target(cfg: &WordConfig) -> bool {
    cfg.word.is_identity() && cfg.weight.is_zero()
}

/// Defender letters and Attacker move indices of a scripted play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub defender: Vec<usize>,
    pub attacker: Vec<usize>,
}

impl WeightedWordGame {
    pub fn new(
        alphabet: Arc<Alphabet>,
        defender: Vec<WordMove>,
        attacker: Vec<WordMove>,
        initial: WordConfig,
    ) -> Result<Self, WordGameError> {
        let all = defender.iter().chain(&attacker).chain(std::iter::once(&initial));
        if all.into_iter().any(|m| m.word.alphabet() != &alphabet) {
            return Err(FreeGroupError::AlphabetMismatch.into());
        }
        Ok(Self { alphabet, defender, attacker, initial, origins: None })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn defender_moves(&self) -> &[WordMove] {
        &self.defender
    }

    pub fn attacker_moves(&self) -> &[WordMove] {
        &self.attacker
    }

    pub fn initial_config(&self) -> &WordConfig {
        &self.initial
    }

    /// Construction provenance of each Attacker move, when built from an
    /// automaton.
    pub fn origins(&self) -> Option<&[MoveOrigin]> {
        self.origins.as_deref()
    }

    fn moves(&self, player: Player) -> &[WordMove] {
        match player {
            Player::Defender => &self.defender,
            Player::Attacker => &self.attacker,
        }
    }

    /// The play that follows `path` (a path of the underlying automaton from
    /// its initial state to a final state), with Defender playing `noise`
    /// once the simulation has started. `None` if a move is missing.
    pub fn telescoping_play(&self, path: &[Transition], noise: usize) -> Option<Script> {
        let origins = self.origins.as_ref()?;
        let find = |o: &MoveOrigin| origins.iter().position(|x| x == o);
        let (first, rest) = path.split_first()?;
        let t = path.len();
        let mut defender: Vec<usize> = path.iter().rev().map(|s| s.letter).collect();
        let mut attacker = vec![0; t - 1];
        attacker.push(find(&MoveOrigin::Start(first.clone()))?);
        for step in rest {
            defender.push(noise);
            attacker.push(find(&MoveOrigin::Step { transition: step.clone(), noise })?);
        }
        defender.push(noise);
        attacker.push(find(&MoveOrigin::Close { state: path.last()?.to, letter: noise })?);
        Some(Script { defender, attacker })
    }

    /// The pair game with each weight `x` written as `ρ^x`.
    pub fn to_pair_game(&self) -> PairWordGame {
        let unary = Alphabet::unary();
        let rho = GroupWord::generator(&unary, 0);
        let conv = |m: &WordMove| PairMove {
            first: m.word.clone(),
            second: rho.pow(m.weight.to_i64().expect("weight fits in i64")),
        };
        PairWordGame {
            first_alphabet: self.alphabet.clone(),
            second_alphabet: unary.clone(),
            defender: self.defender.iter().map(conv).collect(),
            attacker: self.attacker.iter().map(conv).collect(),
            initial: conv(&self.initial),
        }
    }

    /// The same game with words encoded over `{c, d}`; counters unchanged.
    pub fn binarize(&self) -> WeightedWordGame {
        let binary = Alphabet::binary();
        let conv = |m: &WordMove| WordMove { word: alpha_encode_into(&m.word, &binary), weight: m.weight.clone() };
        WeightedWordGame {
            alphabet: binary.clone(),
            defender: self.defender.iter().map(conv).collect(),
            attacker: self.attacker.iter().map(conv).collect(),
            initial: conv(&self.initial),
            origins: self.origins.clone(),
        }
    }

    pub fn dump(&self) -> String {
        let mut out = String::from("game=weighted\n");
        let _ = writeln!(out, "alphabet={}", self.alphabet.symbols().join(" "));
        let _ = writeln!(out, "initial word={} weight={}", self.initial.word, self.initial.weight);
        out.push_str("target word=ε weight=0\n");
        for (p, moves) in [("D", &self.defender), ("A", &self.attacker)] {
            for m in moves {
                let _ = writeln!(out, "player={p} word={} weight={}", m.word, m.weight);
            }
        }
        out
    }
}

impl GameDomain for WeightedWordGame {
    type Config = WordConfig;
    type Key = WordConfig;

    fn initial(&self) -> WordConfig {
        self.initial.clone()
    }

    fn move_count(&self, player: Player) -> usize {
        self.moves(player).len()
    }

    fn apply(&self, cfg: &WordConfig, player: Player, index: usize) -> WordConfig {
        apply_move(cfg, &self.moves(player)[index])
    }

    fn is_target(&self, cfg: &WordConfig) -> bool {
        is_target(cfg)
    }

    fn key(&self, cfg: &WordConfig) -> WordConfig {
        cfg.clone()
    }

    fn render_key(&self, key: &WordConfig) -> String {
        format!("{} | {}", key.word, key.weight)
    }

    fn move_label(&self, player: Player, index: usize) -> String {
        let m = &self.moves(player)[index];
        if m.weight.is_zero() { m.word.render() } else { format!("{} [{}]", m.word, m.weight) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairMove {
    pub first: GroupWord,
    pub second: GroupWord,
}

/// Current pair of words of a pair word game.
pub type PairConfig = PairMove;

/// A game over pairs of words, the second component over `{ρ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWordGame {
    first_alphabet: Arc<Alphabet>,
    second_alphabet: Arc<Alphabet>,
    defender: Vec<PairMove>,
    attacker: Vec<PairMove>,
    initial: PairConfig,
}

impl PairWordGame {
    pub fn first_alphabet(&self) -> &Arc<Alphabet> {
        &self.first_alphabet
    }

    pub fn defender_moves(&self) -> &[PairMove] {
        &self.defender
    }

    pub fn attacker_moves(&self) -> &[PairMove] {
        &self.attacker
    }

    pub fn initial_config(&self) -> &PairConfig {
        &self.initial
    }

    pub fn is_binary(&self) -> bool {
        self.first_alphabet.symbols() == ["c", "d"]
    }

    fn moves(&self, player: Player) -> &[PairMove] {
        match player {
            Player::Defender => &self.defender,
            Player::Attacker => &self.attacker,
        }
    }

    /// Encodes the first components over `{c, d}`.
    pub fn binarize(&self) -> Result<PairWordGame, WordGameError> {
        if self.is_binary() {
            return Err(WordGameError::AlreadyBinary);
        }
        let binary = Alphabet::binary();
        let conv = |m: &PairMove| PairMove { first: alpha_encode_into(&m.first, &binary), second: m.second.clone() };
        Ok(PairWordGame {
            first_alphabet: binary.clone(),
            second_alphabet: self.second_alphabet.clone(),
            defender: self.defender.iter().map(conv).collect(),
            attacker: self.attacker.iter().map(conv).collect(),
            initial: conv(&self.initial),
        })
    }

    /// Same layout as the weighted dump; `weight=x` stands for `ρ^x`.
    pub fn dump(&self) -> String {
        let mut out = String::from("game=pair\n");
        let _ = writeln!(out, "alphabet={}", self.first_alphabet.symbols().join(" "));
        let _ = writeln!(out, "initial word={} weight={}", self.initial.first, self.initial.second.exponent_sum(0));
        out.push_str("target word=ε weight=0\n");
        for (p, moves) in [("D", &self.defender), ("A", &self.attacker)] {
            for m in moves {
                let _ = writeln!(out, "player={p} word={} weight={}", m.first, m.second.exponent_sum(0));
            }
        }
        out
    }
}

impl GameDomain for PairWordGame {
    type Config = PairConfig;
    type Key = PairConfig;

    fn initial(&self) -> PairConfig {
        self.initial.clone()
    }

    fn move_count(&self, player: Player) -> usize {
        self.moves(player).len()
    }

    fn apply(&self, cfg: &PairConfig, player: Player, index: usize) -> PairConfig {
        let m = &self.moves(player)[index];
        PairMove {
            first: cfg.first.concat(&m.first).expect("shared alphabet"),
            second: cfg.second.concat(&m.second).expect("shared alphabet"),
        }
    }

    fn is_target(&self, cfg: &PairConfig) -> bool {
        cfg.first.is_identity() && cfg.second.is_identity()
    }

    fn key(&self, cfg: &PairConfig) -> PairConfig {
        cfg.clone()
    }

    fn render_key(&self, key: &PairConfig) -> String {
        format!("{} | {}", key.first, key.second)
    }

    fn move_label(&self, player: Player, index: usize) -> String {
        let m = &self.moves(player)[index];
        format!("({}, {})", m.first, m.second)
    }
}

/// A parsed game dump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameDump {
    Weighted(WeightedWordGame),
    Pair(PairWordGame),
}

fn split_word_weight(rest: &str, line: usize) -> Result<(&str, BigInt), WordGameError> {
    let err = |message: &str| WordGameError::Parse { line, message: message.to_string() };
    let rest = rest.strip_prefix("word=").ok_or_else(|| err("expected `word=`"))?;
    let (word, weight) = rest.rsplit_once(" weight=").ok_or_else(|| err("expected ` weight=`"))?;
    let weight = weight.trim().parse().map_err(|_| err("bad weight"))?;
    Ok((word, weight))
}

/// Reads the output of [`WeightedWordGame::dump`] or [`PairWordGame::dump`].
pub fn parse_game_dump(text: &str) -> Result<GameDump, WordGameError> {
    let mut kind = None;
    let mut alphabet: Option<Arc<Alphabet>> = None;
    let mut initial = None;
    let mut defender = Vec::new();
    let mut attacker = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end();
        let err = |message: &str| WordGameError::Parse { line: line_no, message: message.to_string() };
        if line.trim().is_empty() || line.starts_with("//") {
            continue;
        }
        if let Some(k) = line.strip_prefix("game=") {
            kind = Some(k.trim().to_string());
        } else if let Some(a) = line.strip_prefix("alphabet=") {
            alphabet = Some(Alphabet::new(a.split_whitespace()).map_err(|e| err(&e.to_string()))?);
        } else if let Some(rest) = line.strip_prefix("initial ") {
            let a = alphabet.as_ref().ok_or_else(|| err("alphabet line must come first"))?;
            let (w, x) = split_word_weight(rest, line_no)?;
            initial = Some((GroupWord::parse(a, w).map_err(|e| err(&e.to_string()))?, x));
        } else if let Some(rest) = line.strip_prefix("target ") {
            let (w, x) = split_word_weight(rest, line_no)?;
            if !(w.trim() == "ε" || w.trim().is_empty()) || !x.is_zero() {
                return Err(err("only the empty target is supported"));
            }
        } else if let Some(rest) = line.strip_prefix("player=") {
            let a = alphabet.as_ref().ok_or_else(|| err("alphabet line must come first"))?;
            let (p, rest) = rest.split_once(' ').ok_or_else(|| err("expected a player tag"))?;
            let (w, x) = split_word_weight(rest, line_no)?;
            let m = (GroupWord::parse(a, w).map_err(|e| err(&e.to_string()))?, x);
            match Player::from_tag(p) {
                Some(Player::Defender) => defender.push(m),
                Some(Player::Attacker) => attacker.push(m),
                None => return Err(err("player must be D or A")),
            }
        } else {
            return Err(err(&format!("unrecognised line `{line}`")));
        }
    }
    let missing = |what: &str| WordGameError::Parse { line: 0, message: format!("missing {what} line") };
    let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
    let initial = initial.ok_or_else(|| missing("initial"))?;
    let to_word = |(word, weight): (GroupWord, BigInt)| WordMove { word, weight };
    match kind.as_deref() {
        Some("weighted") => Ok(GameDump::Weighted(WeightedWordGame::new(
            alphabet,
            defender.into_iter().map(to_word).collect(),
            attacker.into_iter().map(to_word).collect(),
            to_word(initial),
        )?)),
        Some("pair") => {
            let unary = Alphabet::unary();
            let rho = GroupWord::generator(&unary, 0);
            let to_pair = |(first, weight): (GroupWord, BigInt)| -> Result<PairMove, WordGameError> {
                let x = weight.to_i64().ok_or(WordGameError::Parse { line: 0, message: "weight too large".into() })?;
                Ok(PairMove { first, second: rho.pow(x) })
            };
            Ok(GameDump::Pair(PairWordGame {
                first_alphabet: alphabet,
                second_alphabet: unary.clone(),
                defender: defender.into_iter().map(to_pair).collect::<Result<_, _>>()?,
                attacker: attacker.into_iter().map(to_pair).collect::<Result<_, _>>()?,
                initial: to_pair(initial)?,
            }))
        }
        _ => Err(missing("game=weighted|pair")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::AcceptanceMode;
    use crate::engine::{attacker_wins_within, SolverOptions, Verdict};
    use crate::pcp::parse_instance;

    fn i1() -> PcpInstance {
        parse_instance("alphabet: a\nimages: a b\nmap a a aa").unwrap()
    }

    fn eq() -> PcpInstance {
        parse_instance("alphabet: a\nimages: a\nmap a a a").unwrap()
    }

    fn play(g: &WeightedWordGame, s: &Script) -> Vec<WordConfig> {
        let mut cfg = g.initial();
        let mut out = Vec::new();
        for (&d, &a) in s.defender.iter().zip(&s.attacker) {
            cfg = g.apply(&cfg, Player::Defender, d);
            cfg = g.apply(&cfg, Player::Attacker, a);
            out.push(cfg.clone());
        }
        out
    }

    #[test]
    fn forward_shapes_on_i1() {
        let aut = game_automaton(&i1(), Wiring::Forward).unwrap();
        let g = build_weighted_word_game(&aut).unwrap();
        let words: Vec<(String, BigInt)> = g.attacker_moves().iter().map(|m| (m.word.render(), m.weight.clone())).collect();
        assert!(words.contains(&("~a ~q1".into(), BigInt::from(-3))));
        assert!(words.contains(&("~a q4 ~q0".into(), BigInt::zero())));
        assert!(words.contains(&("~a q8 ~q0".into(), BigInt::zero())));
        assert_eq!(words[0], ("#".into(), BigInt::zero()));
        assert_eq!(g.defender_moves().len(), 1);
        assert_eq!(g.defender_moves()[0].word.render(), "a");
        assert_eq!(g.initial_config().word.render(), "q0");
    }

    #[test]
    fn apply_and_target() {
        let alph = Alphabet::new(["a", "q0", "q1", "#"]).unwrap();
        let w = |t: &str| GroupWord::parse(&alph, t).unwrap();
        let cfg = WordMove { word: w("q0 a"), weight: BigInt::zero() };
        let next = apply_move(&cfg, &WordMove { word: w("~a ~q1"), weight: BigInt::from(-2) });
        assert_eq!(next.word.render(), "q0 ~q1");
        assert_eq!(next.weight, BigInt::from(-2));
        let hashed = apply_move(&next, &WordMove { word: w("#"), weight: BigInt::zero() });
        assert_eq!(hashed.word.render(), "q0 ~q1 #");
        assert!(is_target(&WordMove { word: w(""), weight: BigInt::zero() }));
        assert!(!is_target(&WordMove { word: w(""), weight: BigInt::from(5) }));
        assert!(!is_target(&next));
    }

    #[test]
    fn pair_counter_is_unary() {
        let aut = game_automaton(&i1(), Wiring::Forward).unwrap();
        let p = build_weighted_word_game(&aut).unwrap().to_pair_game();
        let neg = p.attacker_moves().iter().find(|m| m.second.exponent_sum(0) == -3).unwrap();
        assert_eq!(neg.second.render(), "~ρ ~ρ ~ρ");
        assert!(p.defender_moves().iter().all(|m| m.second.is_identity()));
        let cfg = PairMove { first: p.initial_config().first.clone(), second: GroupWord::generator(&Alphabet::unary(), 0).pow(2) };
        let step = PairMove { first: GroupWord::empty(p.first_alphabet()), second: GroupWord::generator(&Alphabet::unary(), 0).pow(-1) };
        let mut g = p.clone();
        g.attacker = vec![step];
        g.initial = cfg;
        let after = g.apply(&g.apply(&g.initial(), Player::Defender, 0), Player::Attacker, 0);
        assert_eq!(after.second.render(), "ρ");
    }

    #[test]
    fn telescoping_reaches_target() {
        // equal images: q4 -a-> q0 with weight 0 in the reversed checker
        let g = build_weighted_word_game(&game_automaton(&eq(), Wiring::Reverse).unwrap()).unwrap();
        let aut = game_automaton(&eq(), Wiring::Reverse).unwrap();
        let path = aut.enumerate_accepting_prefixes(&[0], AcceptanceMode::ReverseWeight, 4).unwrap();
        let s = g.telescoping_play(path[0].steps(), 0).unwrap();
        let cfgs = play(&g, &s);
        assert_eq!(cfgs[0].word.render(), "q4 ~q0");
        assert!(is_target(cfgs.last().unwrap()));
        let r = attacker_wins_within(&g, 3, SolverOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::AttackerWinsWithin(2));
    }

    #[test]
    fn longer_telescoping_play() {
        let inst = PcpInstance::from_maps(&["a", "b"], &["a", "b"], &[("a", "a", "aa"), ("b", "ab", "aa")]).unwrap();
        let aut = game_automaton(&inst, Wiring::Reverse).unwrap();
        let g = build_weighted_word_game(&aut).unwrap();
        let paths = aut.enumerate_accepting_prefixes(&[0, 1], AcceptanceMode::ReverseWeight, 4).unwrap();
        let long = paths.iter().find(|p| p.len() == 2).expect("two-letter bad prefix");
        let s = g.telescoping_play(long.steps(), 1).unwrap();
        assert_eq!(s.defender[..2], [0, 1]);
        let cfgs = play(&g, &s);
        assert!(is_target(cfgs.last().unwrap()));
        assert!(cfgs[..cfgs.len() - 1].iter().all(|c| !is_target(c)));
    }

    #[test]
    fn returning_to_the_initial_state_does_not_win() {
        for wiring in [Wiring::Reverse, Wiring::Forward] {
            let aut = game_automaton(&i1(), wiring).unwrap();
            let g = build_weighted_word_game(&aut).unwrap();
            let init = aut.initial();
            let closing = |o: &MoveOrigin| matches!(o, MoveOrigin::Step { transition, .. } if transition.to == init);
            assert!(!g.origins().unwrap().iter().any(closing));
            let r = attacker_wins_within(&g, 4, SolverOptions::default()).unwrap();
            assert_eq!(r.verdict, Verdict::DefenderSurvives(4));
        }
    }

    #[test]
    fn dump_round_trip() {
        let g = build_weighted_word_game(&game_automaton(&i1(), Wiring::Reverse).unwrap()).unwrap();
        let GameDump::Weighted(back) = parse_game_dump(&g.dump()).unwrap() else { panic!("wrong kind") };
        assert_eq!(back.attacker_moves(), g.attacker_moves());
        assert_eq!(back.initial_config(), g.initial_config());
        let p = g.to_pair_game().binarize().unwrap();
        assert_eq!(parse_game_dump(&p.dump()).unwrap(), GameDump::Pair(p.clone()));
        assert_eq!(p.binarize(), Err(WordGameError::AlreadyBinary));
    }

    #[test]
    fn rejects_wrong_shapes() {
        let aut = build_solution_checker(&i1());
        assert_eq!(build_weighted_word_game(&aut), Err(WordGameError::NotUnfolded(5)));
        let clash = parse_instance("alphabet: q1\nimages: a\nmap q1 a a").unwrap();
        let aut = game_automaton(&clash, Wiring::Forward).unwrap();
        assert_eq!(build_weighted_word_game(&aut), Err(WordGameError::NameCollision("q1".into())));
    }
}
