//! Browser bindings: word checking, small game solving and braid normal forms.
//!
//! Each export has a plain Rust counterpart returning `Result<String, String>`
//! so the logic can be tested natively.

use adgame_core::automaton::{build_solution_checker, AcceptanceMode};
use adgame_core::braid::{garside_nf, BraidWord};
use adgame_core::engine::{attacker_wins_within, defender_survival_strategy, GameDomain, SolverOptions, Verdict};
use adgame_core::matrix::build_matrix_game;
use adgame_core::pcp::parse_instance;
use adgame_core::word_game::{build_weighted_word_game, game_automaton, Wiring};
use wasm_bindgen::prelude::*;

/// Largest horizon the page will search.
pub const MAX_ROUNDS: usize = 4;
const NODE_CAP: u64 = 500_000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Bad-prefix case and automaton verdict for one word.
pub fn check_word_text(instance: &str, word: &str) -> Result<String, String> {
    let inst = parse_instance(instance).map_err(err)?;
    let w = inst.parse_word(word).map_err(err)?;
    let a = build_solution_checker(&inst);
    let mut out = format!("word: {}\n", inst.render_word(&w));
    let bad = inst.first_bad_prefix(&w).map_err(err)?;
    match bad {
        Some((n, case)) => out += &format!("bad prefix: {} (case {})\n", inst.render_word(&w[..n]), case.roman()),
        None => out += "bad prefix: none\n",
    }
    match a.shortest_accepted_prefix(&w, AcceptanceMode::Forward) {
        Some(n) => out += &format!("automaton: prefix {} accepted\n", inst.render_word(&w[..n])),
        None => out += "automaton: no accepted prefix\n",
    }
    Ok(out)
}

fn solve_report<G: GameDomain>(g: &G, rounds: usize) -> Result<String, String> {
    let r = attacker_wins_within(g, rounds, SolverOptions { jobs: Some(1), node_cap: Some(NODE_CAP) }).map_err(err)?;
    let mut out = format!("verdict: {}\nexplored: {}\n", r.verdict, r.explored);
    match r.verdict {
        Verdict::AttackerWinsWithin(_) => out += &format!("# attacker\n{}", r.strategy.to_text()),
        Verdict::DefenderSurvives(_) => {
            let s = defender_survival_strategy(g, rounds).map_err(err)?.ok_or("no survival strategy")?;
            out += &format!("# defender\n{}", s.to_text());
        }
    }
    Ok(out)
}

/// Solves the word game (`encoding = "word"`) or matrix game
/// (`encoding = "matrix"`) of an instance within `rounds`.
pub fn solve_text(instance: &str, encoding: &str, rounds: usize) -> Result<String, String> {
    if rounds == 0 || rounds > MAX_ROUNDS {
        return Err(format!("rounds must be between 1 and {MAX_ROUNDS}"));
    }
    let inst = parse_instance(instance).map_err(err)?;
    let word = build_weighted_word_game(&game_automaton(&inst, Wiring::Reverse).map_err(err)?).map_err(err)?;
    match encoding {
        "word" => solve_report(&word, rounds),
        "matrix" => {
            let pair = word.to_pair_game().binarize().map_err(err)?;
            solve_report(&build_matrix_game(&pair).map_err(err)?, rounds)
        }
        other => Err(format!("unknown encoding `{other}`")),
    }
}

/// Left normal form of a braid word such as `1 -2 1`.
pub fn braid_text(strands: usize, word: &str) -> Result<String, String> {
    let w = BraidWord::parse(strands, word).map_err(err)?;
    let nf = garside_nf(&w);
    Ok(format!("normal form: {}\ntrivial: {}\n", nf.render(), nf.is_trivial()))
}

#[wasm_bindgen]
pub fn check_word(instance: &str, word: &str) -> Result<String, JsValue> {
    check_word_text(instance, word).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve(instance: &str, encoding: &str, rounds: usize) -> Result<String, JsValue> {
    solve_text(instance, encoding, rounds).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn braid_normal_form(strands: usize, word: &str) -> Result<String, JsValue> {
    braid_text(strands, word).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EQ: &str = "alphabet: a\nimages: a\nmap a a a\n";

    #[test]
    fn equal_images_reject_at_the_first_letter() {
        let out = check_word_text(EQ, "aa").unwrap();
        assert!(out.contains("bad prefix: a (case i)"), "{out}");
        assert!(out.contains("automaton: prefix a accepted"), "{out}");
    }

    #[test]
    fn word_and_matrix_encodings_agree() {
        for rounds in 1..=2 {
            let w = solve_text(EQ, "word", rounds).unwrap();
            let m = solve_text(EQ, "matrix", rounds).unwrap();
            assert_eq!(w.lines().next(), m.lines().next());
        }
        assert!(solve_text(EQ, "word", 0).is_err());
        assert!(solve_text(EQ, "braid", 1).is_err());
    }

    #[test]
    fn braid_relations_hold() {
        assert!(braid_text(3, "1 2 1 -2 -1 -2").unwrap().contains("trivial: true"));
        assert_eq!(braid_text(3, "1 2 1").unwrap(), braid_text(3, "2 1 2").unwrap());
        assert!(braid_text(3, "4").is_err());
    }
}
