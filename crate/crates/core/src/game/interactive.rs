//! Line-based terminal play against a strategy.

use std::io::{BufRead, Write};

use super::{Outcome, Player, Referee, Strategy, Transcript, Variant};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn render(referee: &Referee<'_>, out: &mut dyn Write) -> Result<()> {
    let g = referee.graph;
    write!(out, "edges:")?;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mark = if referee.red.contains(e) {
            "R"
        } else if referee.blue.contains(e) {
            "B"
        } else {
            "."
        };
        write!(out, " {}:{}-{}{}", e + 1, u, v, mark)?;
    }
    writeln!(out)?;
    Ok(())
}

/// Parses `"7"` (1-based edge index) or `"u v"` (endpoints).
fn parse_move(g: &Graph, line: &str) -> Option<usize> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    match parts.as_slice() {
        [e] => e.parse::<usize>().ok().filter(|&e| e >= 1).map(|e| e - 1),
        [u, v] => {
            let u = u.parse().ok()?;
            let v = v.parse().ok()?;
            (u < g.vertex_count() && v < g.vertex_count()).then(|| g.edge_between(u, v)).flatten()
        }
        _ => None,
    }
}

fn read_human(
    referee: &Referee<'_>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<usize> {
    loop {
        write!(out, "your move> ")?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            return Err(Error::Usage("input closed before the game ended".into()));
        }
        let line = line.trim();
        if line == "quit" {
            return Err(Error::Usage("game abandoned".into()));
        }
        match parse_move(referee.graph, line) {
            Some(e) if referee.view().is_free(e) => return Ok(e),
            _ => writeln!(out, "not a free edge: {line:?}")?,
        }
    }
}

/// Plays one game with a human on `human`'s side. Invalid input is re-prompted.
pub fn interactive_play(
    g: &Graph,
    variant: Variant,
    human: Player,
    opponent: &mut dyn Strategy,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    seed: u64,
) -> Result<(Outcome, Transcript)> {
    let mut referee = Referee::new(g, variant, None);
    writeln!(out, "{} on {}, you are {:?}; opponent {}", variant_name(variant), g.name(), human, opponent.name())?;
    let outcome = loop {
        if referee.finished() {
            break referee.end_outcome();
        }
        render(&referee, out)?;
        let a = if human == Player::A {
            read_human(&referee, input, out)?
        } else {
            opponent.choose(&referee.view())?
        };
        if human != Player::A {
            writeln!(out, "A colors {}", a + 1)?;
        }
        if let Some(o) = referee.apply_a(a) {
            break o;
        }
        let b = if human == Player::B {
            render(&referee, out)?;
            read_human(&referee, input, out)?
        } else {
            opponent.choose(&referee.view())?
        };
        if human != Player::B {
            writeln!(out, "B colors {}", b + 1)?;
        }
        if let Some(o) = referee.apply_b(b) {
            break o;
        }
    };
    writeln!(
        out,
        "game over after {} rounds: {:?} ({:?})",
        outcome.survived_rounds, outcome.winner, outcome.reason
    )?;
    Ok((outcome, referee.into_transcript(seed, outcome)))
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Sym => "Sym",
        Variant::SymPlus => "Sym+",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Scripted;

    #[test]
    fn human_b_on_p4() {
        let g = Graph::path(4).unwrap();
        let mut a = Scripted::new(vec![0, 1]);
        let mut input = "x\n4\n2 3\n".as_bytes();
        let mut sink = Vec::new();
        let (out, t) = interactive_play(&g, Variant::Sym, Player::B, &mut a, &mut input, &mut sink, 0).unwrap();
        assert_eq!(out.winner, Some(Player::B));
        assert_eq!(t.rounds[1].b_edge, Some(3));
        assert!(String::from_utf8(sink).unwrap().contains("not a free edge"));
    }
}
