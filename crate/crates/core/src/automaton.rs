//! Integer-weighted automata on infinite words.
//!
//! A word is accepted when some finite path prefix over it ends in a final
//! state with total weight zero. [`build_solution_checker`] compiles a
//! correspondence instance into a five-state automaton whose accepted words
//! are the non-solutions of the instance.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::pcp::{DomainWord, PcpInstance};

/// Longest word accepted by the path enumerators.
pub const DEFAULT_WORD_BOUND: usize = 16;

/// Default cap on the number of words checked by [`WeightedAutomaton::bounded_universality`].
pub const DEFAULT_UNIVERSALITY_CAP: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("reversal needs exactly one final state, found {0}")]
    MultipleFinals(usize),
    #[error("expected a five-state automaton, found {0} states")]
    NotFiveStates(usize),
    #[error("transition {0} does not apply to configuration in state q{1}")]
    NonMatchingTransition(String, usize),
    #[error("no letter left to read")]
    EmptyInput,
    #[error("word length {len} exceeds the bound {bound}")]
    BoundExceeded { len: usize, bound: usize },
    #[error("{candidates} candidate words exceed the cap of {cap}")]
    CapExceeded { candidates: u128, cap: u128 },
    #[error("bound must be positive")]
    ZeroBound,
    #[error("letter index {0} is outside the alphabet")]
    LetterOutOfRange(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: usize,
    pub letter: usize,
    pub to: usize,
    pub weight: BigInt,
}

impl Transition {
    pub fn new(from: usize, letter: usize, to: usize, weight: impl Into<BigInt>) -> Self {
        Self { from, letter, to, weight: weight.into() }
    }
}

/// A finite path, with its weight `γ` cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPrefix {
    steps: Vec<Transition>,
    weight: BigInt,
}

impl PathPrefix {
    /// Builds a path, checking that consecutive steps chain.
    pub fn new(steps: Vec<Transition>) -> Option<Self> {
        if steps.windows(2).any(|w| w[0].to != w[1].from) {
            return None;
        }
        let weight = steps.iter().map(|t| &t.weight).sum();
        Some(Self { steps, weight })
    }

    pub fn steps(&self) -> &[Transition] {
        &self.steps
    }

    pub fn weight(&self) -> &BigInt {
        &self.weight
    }

    /// The word read along the path.
    pub fn letters(&self) -> DomainWord {
        self.steps.iter().map(|t| t.letter).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last_state(&self) -> Option<usize> {
        self.steps.last().map(|t| t.to)
    }
}

/// `γ(p)`, the sum of step weights.
pub fn path_weight(p: &PathPrefix) -> BigInt {
    p.steps.iter().map(|t| &t.weight).sum()
}

/// The triple `(state, remaining input, accumulated weight)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutConfiguration {
    pub state: usize,
    pub remaining: DomainWord,
    pub weight: BigInt,
}

/// How a path over a prefix `p` of the input is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AcceptanceMode {
    /// Paths over `p` itself.
    #[default]
    Forward,
    /// Paths over the reversal of `p`. On the reversed automaton this
    /// accepts exactly the words the forward automaton accepts.
    ReverseWeight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Universality {
    AllAccepted,
    /// Lexicographically least word of the bound length with no accepted
    /// prefix.
    Counterexample(DomainWord),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAutomaton {
    num_states: usize,
    alphabet: Vec<String>,
    transitions: Vec<Transition>,
    initial: usize,
    finals: Vec<usize>,
}

impl WeightedAutomaton {
    /// Builds an automaton; transitions are deduplicated and sorted.
    pub fn new(
        num_states: usize,
        alphabet: Vec<String>,
        transitions: impl IntoIterator<Item = Transition>,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Self {
        let transitions: BTreeSet<Transition> = transitions.into_iter().collect();
        let finals: BTreeSet<usize> = finals.into_iter().collect();
        assert!(initial < num_states, "initial state out of range");
        assert!(finals.iter().all(|&f| f < num_states), "final state out of range");
        assert!(
            transitions.iter().all(|t| t.from < num_states && t.to < num_states && t.letter < alphabet.len()),
            "transition out of range"
        );
        Self {
            num_states,
            alphabet,
            transitions: transitions.into_iter().collect(),
            initial,
            finals: finals.into_iter().collect(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn state_name(&self, q: usize) -> String {
        format!("q{q}")
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &[usize] {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.binary_search(&q).is_ok()
    }

    /// Outgoing transitions of `q` on `letter`, in sorted order.
    pub fn outgoing(&self, q: usize, letter: usize) -> impl Iterator<Item = &Transition> {
        let start = self.transitions.partition_point(|t| (t.from, t.letter) < (q, letter));
        self.transitions[start..].iter().take_while(move |t| t.from == q && t.letter == letter)
    }

    /// Every state has an outgoing transition on every letter.
    pub fn is_complete(&self) -> bool {
        (0..self.num_states).all(|q| (0..self.alphabet.len()).all(|a| self.outgoing(q, a).next().is_some()))
    }

    /// Reverses every transition and negates its weight; the single final
    /// state becomes initial and the initial state becomes final.
    pub fn reverse(&self) -> Result<WeightedAutomaton, AutomatonError> {
        if self.finals.len() != 1 {
            return Err(AutomatonError::MultipleFinals(self.finals.len()));
        }
        let transitions = self.transitions.iter().map(|t| Transition {
            from: t.to,
            letter: t.letter,
            to: t.from,
            weight: -&t.weight,
        });
        Ok(Self::new(self.num_states, self.alphabet.clone(), transitions, self.finals[0], [self.initial]))
    }

    /// Removes the self-loops on `q1..q4` by adding primed copies
    /// `q5..q8`. A loop `⟨qi,a,qi,x⟩` becomes `⟨qi,a,q(i+4),x⟩` and
    /// `⟨q(i+4),a,qi,x⟩`; every other transition is kept and also copied with
    /// each endpoint among `q1..q4` replaced by its primed copy. Finals among
    /// `q1..q4` gain their primed copies; the initial state is unchanged.
    pub fn unfold_self_loops(&self) -> Result<WeightedAutomaton, AutomatonError> {
        if self.num_states != 5 {
            return Err(AutomatonError::NotFiveStates(self.num_states));
        }
        let prime = |q: usize| if (1..=4).contains(&q) { q + 4 } else { q };
        let mut out = Vec::new();
        for t in &self.transitions {
            if t.from == t.to && (1..=4).contains(&t.from) {
                out.push(Transition { to: prime(t.from), ..t.clone() });
                out.push(Transition { from: prime(t.from), ..t.clone() });
            } else {
                out.push(t.clone());
                out.push(Transition { from: prime(t.from), to: prime(t.to), ..t.clone() });
            }
        }
        let finals = self.finals.iter().flat_map(|&f| [f, prime(f)]);
        Ok(Self::new(9, self.alphabet.clone(), out, self.initial, finals))
    }

    /// One step of the yield relation.
    pub fn step(&self, cfg: &AutConfiguration, t: &Transition) -> Result<AutConfiguration, AutomatonError> {
        let (&head, rest) = cfg.remaining.split_first().ok_or(AutomatonError::EmptyInput)?;
        if t.from != cfg.state || t.letter != head || !self.transitions.contains(t) {
            return Err(AutomatonError::NonMatchingTransition(self.render_transition(t), cfg.state));
        }
        Ok(AutConfiguration { state: t.to, remaining: rest.to_vec(), weight: &cfg.weight + &t.weight })
    }

    pub fn render_transition(&self, t: &Transition) -> String {
        format!("⟨q{},{},q{},{}⟩", t.from, self.alphabet[t.letter], t.to, t.weight)
    }

    fn check_word(&self, w: &[usize]) -> Result<(), AutomatonError> {
        match w.iter().find(|&&a| a >= self.alphabet.len()) {
            Some(&a) => Err(AutomatonError::LetterOutOfRange(a)),
            None => Ok(()),
        }
    }

    /// All zero-weight paths from the initial state to a final state over a
    /// nonempty prefix of `w` (read backwards in [`AcceptanceMode::ReverseWeight`]).
    pub fn enumerate_accepting_prefixes(
        &self,
        w: &[usize],
        mode: AcceptanceMode,
        bound: usize,
    ) -> Result<Vec<PathPrefix>, AutomatonError> {
        if w.len() > bound {
            return Err(AutomatonError::BoundExceeded { len: w.len(), bound });
        }
        self.check_word(w)?;
        let mut found = Vec::new();
        let mut stack = Vec::new();
        match mode {
            AcceptanceMode::Forward => self.dfs(w, self.initial, &BigInt::zero(), &mut stack, true, &mut found),
            AcceptanceMode::ReverseWeight => {
                for n in 1..=w.len() {
                    let rev: Vec<usize> = w[..n].iter().rev().copied().collect();
                    self.dfs(&rev, self.initial, &BigInt::zero(), &mut stack, false, &mut found);
                }
            }
        }
        Ok(found)
    }

    /// Depth-first search over paths reading `w`. With `every_prefix` set,
    /// records accepting paths at every depth; otherwise only full-length ones.
    fn dfs(
        &self,
        w: &[usize],
        q: usize,
        weight: &BigInt,
        stack: &mut Vec<Transition>,
        every_prefix: bool,
        found: &mut Vec<PathPrefix>,
    ) {
        let depth = stack.len();
        if depth > 0 && (every_prefix || depth == w.len()) && self.is_final(q) && weight.is_zero() {
            found.push(PathPrefix { steps: stack.clone(), weight: weight.clone() });
        }
        if depth == w.len() {
            return;
        }
        for t in self.outgoing(q, w[depth]) {
            stack.push(t.clone());
            self.dfs(w, t.to, &(weight + &t.weight), stack, every_prefix, found);
            stack.pop();
        }
    }

    /// Configurations `(state, weight)` reachable by reading `w` from the
    /// initial state.
    pub fn reachable(&self, w: &[usize]) -> HashSet<(usize, BigInt)> {
        let mut confs: HashSet<(usize, BigInt)> = HashSet::from([(self.initial, BigInt::zero())]);
        for &a in w {
            confs = confs
                .iter()
                .flat_map(|(q, z)| self.outgoing(*q, a).map(move |t| (t.to, z + &t.weight)))
                .collect();
        }
        confs
    }

    fn accepting_conf(&self, confs: &HashSet<(usize, BigInt)>) -> bool {
        confs.iter().any(|(q, z)| self.is_final(*q) && z.is_zero())
    }

    /// Length of the shortest prefix of `w` with an accepting zero-weight
    /// path, computed on configuration sets rather than paths.
    pub fn shortest_accepted_prefix(&self, w: &[usize], mode: AcceptanceMode) -> Option<usize> {
        match mode {
            AcceptanceMode::Forward => {
                let mut confs: HashSet<(usize, BigInt)> = HashSet::from([(self.initial, BigInt::zero())]);
                for (n, &a) in w.iter().enumerate() {
                    confs = confs
                        .iter()
                        .flat_map(|(q, z)| self.outgoing(*q, a).map(move |t| (t.to, z + &t.weight)))
                        .collect();
                    if self.accepting_conf(&confs) {
                        return Some(n + 1);
                    }
                }
                None
            }
            AcceptanceMode::ReverseWeight => (1..=w.len()).find(|&n| {
                let rev: Vec<usize> = w[..n].iter().rev().copied().collect();
                self.accepting_conf(&self.reachable(&rev))
            }),
        }
    }

    pub fn accepts_prefix_of(&self, w: &[usize], mode: AcceptanceMode) -> bool {
        self.shortest_accepted_prefix(w, mode).is_some()
    }

    /// Searches all words of length `len` for one with no accepted prefix.
    pub fn bounded_universality(
        &self,
        len: usize,
        mode: AcceptanceMode,
        cap: Option<u128>,
    ) -> Result<Universality, AutomatonError> {
        if len == 0 {
            return Err(AutomatonError::ZeroBound);
        }
        let cap = cap.unwrap_or(DEFAULT_UNIVERSALITY_CAP);
        let candidates = (self.alphabet.len() as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
        if candidates > cap {
            return Err(AutomatonError::CapExceeded { candidates, cap });
        }
        let n = self.alphabet.len();
        let word = |mut idx: u128| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = (idx % n as u128) as usize;
                idx /= n as u128;
            }
            w
        };
        let first = (0..candidates as u64)
            .into_par_iter()
            .map(|i| word(i as u128))
            .find_first(|w| !self.accepts_prefix_of(w, mode));
        Ok(match first {
            Some(w) => Universality::Counterexample(w),
            None => Universality::AllAccepted,
        })
    }

    /// All paths with exactly `len` steps from any state, in sorted order.
    pub fn paths_of_length(&self, len: usize) -> Vec<PathPrefix> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for q in 0..self.num_states {
            self.all_paths(q, len, &mut stack, &mut out);
        }
        out
    }

    fn all_paths(&self, q: usize, len: usize, stack: &mut Vec<Transition>, out: &mut Vec<PathPrefix>) {
        if stack.len() == len {
            if len > 0 {
                out.push(PathPrefix::new(stack.clone()).expect("chained by construction"));
            }
            return;
        }
        let start = self.transitions.partition_point(|t| t.from < q);
        for t in self.transitions[start..].iter().take_while(|t| t.from == q) {
            stack.push(t.clone());
            self.all_paths(t.to, len, stack, out);
            stack.pop();
        }
    }

    /// Deterministic Graphviz rendering; edge labels are `letter,weight`.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n");
        let _ = writeln!(out, "  // alphabet: {}", self.alphabet.join(" "));
        out.push_str("  rankdir=LR;\n  init [shape=point];\n");
        for q in 0..self.num_states {
            let shape = if self.is_final(q) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{q} [shape={shape}];");
        }
        let _ = writeln!(out, "  init -> q{};", self.initial);
        for t in &self.transitions {
            let label = format!("{},{}", self.alphabet[t.letter], t.weight).replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "  q{} -> q{} [label=\"{label}\"];", t.from, t.to);
        }
        out.push_str("}\n");
        out
    }

    /// One transition per line, `from letter to weight`, after a short header.
    pub fn flat_dump(&self) -> String {
        let mut out = format!(
            "states: {}\ninitial: q{}\nfinals: {}\n",
            self.num_states,
            self.initial,
            self.finals.iter().map(|f| format!("q{f}")).collect::<Vec<_>>().join(" ")
        );
        for t in &self.transitions {
            let _ = writeln!(out, "q{} {} q{} {}", t.from, self.alphabet[t.letter], t.to, t.weight);
        }
        out
    }
}

fn parse_state(tok: &str, line: usize) -> Result<usize, AutomatonError> {
    tok.strip_prefix('q')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| AutomatonError::Parse { line, message: format!("bad state `{tok}`") })
}

/// Reads back the output of [`WeightedAutomaton::export_dot`].
pub fn parse_dot(text: &str) -> Result<WeightedAutomaton, AutomatonError> {
    let mut alphabet: Option<Vec<String>> = None;
    let mut num_states = 0;
    let mut finals = Vec::new();
    let mut initial = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim().trim_end_matches(';');
        let err = |message: &str| AutomatonError::Parse { line: line_no, message: message.to_string() };
        if let Some(rest) = line.strip_prefix("// alphabet:") {
            alphabet = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(target) = line.strip_prefix("init -> ") {
            initial = Some(parse_state(target.trim(), line_no)?);
        } else if line.starts_with('q') && line.contains("[shape=") && !line.contains("->") {
            let name = line.split_whitespace().next().unwrap_or_default();
            let q = parse_state(name, line_no)?;
            num_states = num_states.max(q + 1);
            if line.contains("doublecircle") {
                finals.push(q);
            }
        } else if let Some((lhs, rhs)) = line.split_once(" -> ") {
            let from = parse_state(lhs.trim(), line_no)?;
            let (to, label) = rhs.split_once(" [label=\"").ok_or_else(|| err("missing label"))?;
            let to = parse_state(to.trim(), line_no)?;
            let label = label.strip_suffix("\"]").ok_or_else(|| err("unterminated label"))?;
            let label = label.replace("\\\"", "\"").replace("\\\\", "\\");
            let (letter, weight) = label.rsplit_once(',').ok_or_else(|| err("label is not `letter,weight`"))?;
            let weight: BigInt = weight.parse().map_err(|_| err("bad weight"))?;
            edges.push((from, letter.to_string(), to, weight));
        }
    }
    let alphabet = alphabet.ok_or(AutomatonError::Parse { line: 1, message: "missing alphabet comment".into() })?;
    let initial = initial.ok_or(AutomatonError::Parse { line: 1, message: "missing initial edge".into() })?;
    let mut transitions = Vec::with_capacity(edges.len());
    for (from, letter, to, weight) in edges {
        let a = alphabet
            .iter()
            .position(|l| *l == letter)
            .ok_or_else(|| AutomatonError::Parse { line: 0, message: format!("unknown letter `{letter}`") })?;
        num_states = num_states.max(from + 1).max(to + 1);
        transitions.push(Transition { from, letter: a, to, weight });
    }
    Ok(WeightedAutomaton::new(num_states.max(initial + 1), alphabet, transitions, initial, finals))
}

/// Compiles an instance into the five-state automaton `q0..q4`, initial
/// `q0`, final `q4`, which accepts exactly the words having a prefix that
/// breaks the proper-prefix relation.
///
/// With `s = |B| + 1` and letter codes `1..s-1`, each letter `a` contributes
///
/// * `⟨q0,a,q1,s(|h(a)|-|g(a)|)⟩`, `⟨q0,a,q4,·⟩` and `⟨q1,a,q1,·⟩` with the
///   same weight, `⟨q2,a,q2,-s|g(a)|⟩`, `⟨q3,a,q3,s|h(a)|⟩`,
///   `⟨q1,a,q4,0⟩` and `⟨q4,a,q4,0⟩`;
/// * guessing an `h`-side error at position `k`: `⟨q1,a,q2,s(k-|g(a)|)+j_k⟩`;
/// * confirming it at position `ℓ` of `g(a)` with code `c ≠ g(a)(ℓ)`:
///   `⟨q2,a,q4,-sℓ-c⟩`;
/// * symmetrically `⟨q1,a,q3,s(|h(a)|-k)-i_k⟩` and `⟨q3,a,q4,sℓ+c⟩`;
/// * an error inside one letter: `⟨q1,a,q4,(k-ℓ)s+j_k-c⟩`;
/// * an error inside the first letter: `⟨q0,a,q4,j_k-c⟩` for
///   `k ≤ min(|h(a)|,|g(a)|)`, `c ≠ g(a)(k)`.
pub fn build_solution_checker(inst: &PcpInstance) -> WeightedAutomaton {
    let s = inst.code_base() as i64;
    let codes = 1..s;
    let mut ts = Vec::new();
    for a in 0..inst.domain().len() {
        let h = inst.h_codes(a);
        let g = inst.g_codes(a);
        let (hl, gl) = (h.len() as i64, g.len() as i64);
        let base = s * (hl - gl);
        for (p, q, z) in [
            (0, 1, base),
            (0, 4, base),
            (1, 1, base),
            (2, 2, -s * gl),
            (3, 3, s * hl),
            (1, 4, 0),
            (4, 4, 0),
        ] {
            ts.push(Transition::new(p, a, q, z));
        }
        for (k, &j) in (1..).zip(&h) {
            ts.push(Transition::new(1, a, 2, s * (k - gl) + j as i64));
        }
        for (l, &i) in (1..).zip(&g) {
            for c in codes.clone().filter(|&c| c != i as i64) {
                ts.push(Transition::new(2, a, 4, -s * l - c));
            }
        }
        for (k, &j) in (1..).zip(&g) {
            ts.push(Transition::new(1, a, 3, s * (hl - k) - j as i64));
        }
        for (l, &i) in (1..).zip(&h) {
            for c in codes.clone().filter(|&c| c != i as i64) {
                ts.push(Transition::new(3, a, 4, s * l + c));
            }
        }
        for (k, &j) in (1..).zip(&h) {
            for (l, &i) in (1..).zip(&g) {
                for c in codes.clone().filter(|&c| c != i as i64) {
                    ts.push(Transition::new(1, a, 4, (k - l) * s + j as i64 - c));
                }
            }
        }
        for k in 0..h.len().min(g.len()) {
            for c in codes.clone().filter(|&c| c != g[k] as i64) {
                ts.push(Transition::new(0, a, 4, h[k] as i64 - c));
            }
        }
    }
    WeightedAutomaton::new(5, inst.domain().to_vec(), ts, 0, [4])
}

/// Largest absolute transition weight, useful for sizing encodings.
pub fn max_abs_weight(aut: &WeightedAutomaton) -> BigInt {
    aut.transitions().iter().map(|t| t.weight.abs()).max().unwrap_or_default()
}
