//! Policy strings: `human`, `random:SEED`, `script:MOVES-OR-FILE`,
//! `strategy:FILE`.

use std::path::Path;

use adgame_core::engine::{GameDomain, Player, Policy, Strategy};
use anyhow::{bail, Context, Result};

pub fn parse<G: GameDomain>(game: &G, player: Player, spec: &str) -> Result<Policy> {
    if spec == "human" {
        return Ok(Policy::Human);
    }
    let (kind, value) = spec.split_once(':').with_context(|| format!("unknown policy `{spec}`"))?;
    match kind {
        "random" => Ok(Policy::Random(value.parse().with_context(|| format!("bad seed `{value}`"))?)),
        "strategy" => {
            let text = std::fs::read_to_string(value).with_context(|| format!("cannot read {value}"))?;
            Ok(Policy::Table(Strategy::parse(&text).with_context(|| format!("malformed strategy {value}"))?))
        }
        "script" => {
            let text = if Path::new(value).is_file() {
                std::fs::read_to_string(value).with_context(|| format!("cannot read {value}"))?
            } else {
                value.to_string()
            };
            Ok(Policy::Script(script_moves(game, player, &text)?))
        }
        _ => bail!("unknown policy `{spec}`"),
    }
}

/// Tokens separated by commas or whitespace; each is a move index, a move
/// label, or a run of single-character labels such as `aaaa`.
fn script_moves<G: GameDomain>(game: &G, player: Player, text: &str) -> Result<Vec<usize>> {
    let labels: Vec<String> = (0..game.move_count(player)).map(|i| game.move_label(player, i)).collect();
    let lookup = |label: &str| labels.iter().position(|l| l == label);
    let mut moves = Vec::new();
    for token in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        if let Ok(i) = token.parse::<usize>() {
            moves.push(i);
        } else if let Some(i) = lookup(token) {
            moves.push(i);
        } else {
            for ch in token.chars() {
                let i = lookup(&ch.to_string()).with_context(|| format!("no {player} move labelled `{ch}`"))?;
                moves.push(i);
            }
        }
    }
    Ok(moves)
}
