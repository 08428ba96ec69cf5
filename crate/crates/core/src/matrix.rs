//! Integer matrix encodings of word games and robot games.
//!
//! Words over `{c, d}` map injectively into `SL(2, Z)` through
//! `c ↦ (1 2; 0 1)` and `d ↦ (1 0; 2 1)`. A pair of words becomes a
//! block-diagonal `4 × 4` matrix. Matrix games keep the accumulated product
//! as their configuration.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::engine::{GameDomain, Player};
use crate::free_group::{alpha_encode_into, Alphabet, GroupWord};
use crate::word_game::{PairMove, PairWordGame};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("expected a word over {{c, d}}, found alphabet {0:?}")]
    NotBinary(Vec<String>),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("enumeration of {0} words exceeds the cap")]
    CapExceeded(u128),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A square matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        Self { dim, entries }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, MatrixError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(MatrixError::Dimension(dim, r.len()));
            }
            entries.extend(r.iter().cloned().map(Into::into));
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, v: BigInt) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut out = Self { dim: n, entries: vec![BigInt::zero(); n * n] };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        let n = self.dim;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                for c in 0..n {
                    m.entries.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    /// Row vector times matrix.
    pub fn row_times(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.dim).map(|j| v.iter().enumerate().map(|(i, x)| x * self.get(i, j)).sum()).collect()
    }

    /// Matrix times column vector.
    pub fn times_column(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.dim).map(|i| v.iter().enumerate().map(|(j, x)| self.get(i, j) * x).sum()).collect()
    }

    pub fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let n = a.dim + b.dim;
        let mut out = Self { dim: n, entries: vec![BigInt::zero(); n * n] };
        for i in 0..a.dim {
            for j in 0..a.dim {
                out.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                out.set(a.dim + i, a.dim + j, b.get(i, j).clone());
            }
        }
        out
    }

    /// One line per row, entries separated by single spaces.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Rows separated by `;` on a single line.
    pub fn render_inline(&self) -> String {
        self.render().trim_end().replace('\n', "; ")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.render_inline())
    }
}

fn generator(letter: usize, inverse: bool) -> IntMatrix {
    let two = if inverse { -2 } else { 2 };
    let rows = if letter == 0 { vec![vec![1, two], vec![0, 1]] } else { vec![vec![1, 0], vec![two, 1]] };
    IntMatrix::from_rows(&rows).expect("square")
}

fn require_binary(w: &GroupWord) -> Result<(), MatrixError> {
    if w.alphabet().len() != 2 {
        return Err(MatrixError::NotBinary(w.alphabet().symbols().to_vec()));
    }
    Ok(())
}

/// The product of generator images of a word over `{c, d}`; the first
/// symbol of the alphabet plays `c`.
pub fn f_encode(w: &GroupWord) -> Result<IntMatrix, MatrixError> {
    require_binary(w)?;
    Ok(w.letters().iter().fold(IntMatrix::identity(2), |acc, l| acc.mul(&generator(l.index as usize, l.inverse))))
}

/// Block-diagonal `4 × 4` image of a pair. A second component over any
/// other alphabet than `{c, d}` is first sent through the rank encoding.
pub fn pair_encode(first: &GroupWord, second: &GroupWord) -> Result<IntMatrix, MatrixError> {
    let second = if second.alphabet().len() == 2 { second.clone() } else { alpha_encode_into(second, &Alphabet::binary()) };
    Ok(IntMatrix::block_diag(&f_encode(first)?, &f_encode(&second)?))
}

pub fn apply_matrix_move(accumulated: &IntMatrix, m: &IntMatrix) -> IntMatrix {
    accumulated.mul(m)
}

/// The row anchor `(1, 0, 1, 0)`.
pub fn row_anchor() -> Vec<BigInt> {
    [1, 0, 1, 0].into_iter().map(BigInt::from).collect()
}

/// The column anchor `(0, 1, 0, 1)ᵀ`.
pub fn column_anchor() -> Vec<BigInt> {
    [0, 1, 0, 1].into_iter().map(BigInt::from).collect()
}

pub fn fixes_anchor(m: &IntMatrix) -> bool {
    let x0 = row_anchor();
    m.row_times(&x0) == x0
}

pub fn fixes_column_anchor(m: &IntMatrix) -> bool {
    let x0 = column_anchor();
    m.times_column(&x0) == x0
}

/// All reduced words of length at most `max_len` over the first `rank`
/// symbols of `alphabet`, shortest first.
pub fn reduced_words(alphabet: &Arc<Alphabet>, rank: usize, max_len: usize) -> Vec<GroupWord> {
    use crate::free_group::GroupLetter;
    let letters: Vec<GroupLetter> = (0..rank).flat_map(|i| [GroupLetter::pos(i), GroupLetter::neg(i)]).collect();
    let mut out = vec![GroupWord::empty(alphabet)];
    let mut layer = vec![Vec::<GroupLetter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last().is_some_and(|&p| p.cancels(l)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|w| GroupWord::reduce(alphabet, w.iter().copied())));
        layer = next;
    }
    out
}

fn anchor_pairs(max_len: usize) -> Result<Vec<IntMatrix>, MatrixError> {
    let rank3 = Alphabet::new(["z1", "z2", "z3"]).expect("static alphabet");
    let binary = Alphabet::binary();
    let rho = GroupWord::generator(&Alphabet::unary(), 0);
    let firsts: Vec<IntMatrix> = reduced_words(&rank3, 3, max_len)
        .iter()
        .map(|u| f_encode(&alpha_encode_into(u, &binary)))
        .collect::<Result<_, _>>()?;
    let bound = max_len as i64;
    let seconds: Vec<IntMatrix> = (-bound..=bound)
        .map(|k| f_encode(&alpha_encode_into(&rho.pow(k), &binary)))
        .collect::<Result<_, _>>()?;
    Ok(firsts.iter().flat_map(|a| seconds.iter().map(move |b| IntMatrix::block_diag(a, b))).collect())
}

/// Whether every encoded pair `(α(u), α(ρ^k))` with `u` a reduced word of
/// length at most `max_len` over three letters and `|k| ≤ max_len` that
/// fixes the row anchor is the identity.
pub fn anchor_lemma_holds(max_len: usize) -> Result<bool, MatrixError> {
    Ok(anchor_pairs(max_len)?.iter().all(|m| !fixes_anchor(m) || m.is_identity()))
}

/// The same check against the column anchor `(0,1,0,1)ᵀ` acted on from
/// the left. Reported by the CLI; not relied on by any game.
pub fn column_anchor_lemma_holds(max_len: usize) -> Result<bool, MatrixError> {
    Ok(anchor_pairs(max_len)?.iter().all(|m| !fixes_column_anchor(m) || m.is_identity()))
}

/// How a matrix game is won.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixTarget {
    /// Configurations grow by right multiplication; the target is reached
    /// when the row vector is fixed.
    FixesRow(Vec<BigInt>),
    /// Configurations grow by left multiplication; the target is reached
    /// when the product sends `start` to `goal`.
    ReachesColumn { start: Vec<BigInt>, goal: Vec<BigInt> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGame {
    dim: usize,
    defender: Vec<IntMatrix>,
    attacker: Vec<IntMatrix>,
    initial: IntMatrix,
    target: MatrixTarget,
}

impl MatrixGame {
    pub fn new(
        defender: Vec<IntMatrix>,
        attacker: Vec<IntMatrix>,
        initial: IntMatrix,
        target: MatrixTarget,
    ) -> Result<Self, MatrixError> {
        let dim = initial.dim();
        for m in defender.iter().chain(&attacker) {
            if m.dim() != dim {
                return Err(MatrixError::Dimension(dim, m.dim()));
            }
        }
        let vlen = match &target {
            MatrixTarget::FixesRow(v) => vec![v.len()],
            MatrixTarget::ReachesColumn { start, goal } => vec![start.len(), goal.len()],
        };
        if let Some(&bad) = vlen.iter().find(|&&l| l != dim) {
            return Err(MatrixError::Dimension(dim, bad));
        }
        Ok(Self { dim, defender, attacker, initial, target })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn defender_moves(&self) -> &[IntMatrix] {
        &self.defender
    }

    pub fn attacker_moves(&self) -> &[IntMatrix] {
        &self.attacker
    }

    pub fn attacker_moves_mut(&mut self) -> &mut Vec<IntMatrix> {
        &mut self.attacker
    }

    pub fn initial_matrix(&self) -> &IntMatrix {
        &self.initial
    }

    pub fn target(&self) -> &MatrixTarget {
        &self.target
    }

    fn moves(&self, player: Player) -> &[IntMatrix] {
        match player {
            Player::Defender => &self.defender,
            Player::Attacker => &self.attacker,
        }
    }

    /// The vector a configuration currently represents.
    pub fn vector(&self, cfg: &IntMatrix) -> Vec<BigInt> {
        match &self.target {
            MatrixTarget::FixesRow(x0) => cfg.row_times(x0),
            MatrixTarget::ReachesColumn { start, .. } => cfg.times_column(start),
        }
    }

    /// Matrices in row-major blocks separated by blank lines, each block
    /// preceded by a label line.
    pub fn dump(&self) -> String {
        let mut out = String::from("game=matrix\n");
        let join = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "dim={}", self.dim);
        match &self.target {
            MatrixTarget::FixesRow(x) => {
                let _ = writeln!(out, "target=fixes-row {}", join(x));
            }
            MatrixTarget::ReachesColumn { start, goal } => {
                let _ = writeln!(out, "target=reaches-column {} -> {}", join(start), join(goal));
            }
        }
        let _ = write!(out, "\ninitial\n{}", self.initial.render());
        for (p, moves) in [("D", &self.defender), ("A", &self.attacker)] {
            for m in moves {
                let _ = write!(out, "\nplayer={p}\n{}", m.render());
            }
        }
        out
    }
}

fn parse_vector(text: &str, line: usize) -> Result<Vec<BigInt>, MatrixError> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| MatrixError::Parse { line, message: format!("bad integer `{t}`") }))
        .collect()
}

/// Reads the output of [`MatrixGame::dump`].
pub fn parse_matrix_dump(text: &str) -> Result<MatrixGame, MatrixError> {
    let mut target = None;
    let mut blocks: Vec<(String, usize, Vec<Vec<BigInt>>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line == "game=matrix" || line.starts_with("dim=") {
            continue;
        }
        if let Some(t) = line.strip_prefix("target=fixes-row") {
            target = Some(MatrixTarget::FixesRow(parse_vector(t, line_no)?));
        } else if let Some(t) = line.strip_prefix("target=reaches-column") {
            let (s, g) = t.split_once("->").ok_or(MatrixError::Parse { line: line_no, message: "expected `->`".into() })?;
            target = Some(MatrixTarget::ReachesColumn { start: parse_vector(s, line_no)?, goal: parse_vector(g, line_no)? });
        } else if line == "initial" || line.starts_with("player=") {
            blocks.push((line.to_string(), line_no, Vec::new()));
        } else {
            let block = blocks.last_mut().ok_or(MatrixError::Parse { line: line_no, message: "row outside a block".into() })?;
            block.2.push(parse_vector(line, line_no)?);
        }
    }
    let target = target.ok_or(MatrixError::Parse { line: 0, message: "missing target line".into() })?;
    let (mut initial, mut defender, mut attacker) = (None, Vec::new(), Vec::new());
    for (label, line, rows) in blocks {
        let m = IntMatrix::from_rows(&rows)?;
        match label.as_str() {
            "initial" => initial = Some(m),
            "player=D" => defender.push(m),
            "player=A" => attacker.push(m),
            _ => return Err(MatrixError::Parse { line, message: format!("unknown block `{label}`") }),
        }
    }
    let initial = initial.ok_or(MatrixError::Parse { line: 0, message: "missing initial block".into() })?;
    MatrixGame::new(defender, attacker, initial, target)
}

/// The four-dimensional matrix game of a pair game over `{c, d}`.
pub fn build_matrix_game(g: &PairWordGame) -> Result<MatrixGame, MatrixError> {
    let enc = |m: &PairMove| pair_encode(&m.first, &m.second);
    MatrixGame::new(
        g.defender_moves().iter().map(enc).collect::<Result<_, _>>()?,
        g.attacker_moves().iter().map(enc).collect::<Result<_, _>>()?,
        enc(g.initial_config())?,
        MatrixTarget::FixesRow(row_anchor()),
    )
}

impl GameDomain for MatrixGame {
    type Config = IntMatrix;
    type Key = IntMatrix;

    fn initial(&self) -> IntMatrix {
        self.initial.clone()
    }

    fn move_count(&self, player: Player) -> usize {
        self.moves(player).len()
    }

    fn apply(&self, cfg: &IntMatrix, player: Player, index: usize) -> IntMatrix {
        let m = &self.moves(player)[index];
        match self.target {
            MatrixTarget::FixesRow(_) => apply_matrix_move(cfg, m),
            MatrixTarget::ReachesColumn { .. } => m.mul(cfg),
        }
    }

    fn is_target(&self, cfg: &IntMatrix) -> bool {
        match &self.target {
            MatrixTarget::FixesRow(x0) => cfg.row_times(x0) == *x0,
            MatrixTarget::ReachesColumn { start, goal } => cfg.times_column(start) == *goal,
        }
    }

    fn key(&self, cfg: &IntMatrix) -> IntMatrix {
        cfg.clone()
    }

    fn render_key(&self, key: &IntMatrix) -> String {
        key.render_inline()
    }
}

/// Attacker and Defender add integer vectors to a shared position; Attacker
/// wins on reaching `goal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobotGame {
    dim: usize,
    attacker: Vec<Vec<i64>>,
    defender: Vec<Vec<i64>>,
    start: Vec<i64>,
    goal: Vec<i64>,
}

impl RobotGame {
    pub fn new(attacker: Vec<Vec<i64>>, defender: Vec<Vec<i64>>, start: Vec<i64>, goal: Vec<i64>) -> Result<Self, MatrixError> {
        let dim = start.len();
        for v in attacker.iter().chain(&defender).chain(std::iter::once(&goal)) {
            if v.len() != dim {
                return Err(MatrixError::Dimension(dim, v.len()));
            }
        }
        Ok(Self { dim, attacker, defender, start, goal })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn moves(&self, player: Player) -> &[Vec<i64>] {
        match player {
            Player::Defender => &self.defender,
            Player::Attacker => &self.attacker,
        }
    }
}

impl GameDomain for RobotGame {
    type Config = Vec<i64>;
    type Key = Vec<i64>;

    fn initial(&self) -> Vec<i64> {
        self.start.clone()
    }

    fn move_count(&self, player: Player) -> usize {
        self.moves(player).len()
    }

    fn apply(&self, cfg: &Vec<i64>, player: Player, index: usize) -> Vec<i64> {
        cfg.iter().zip(&self.moves(player)[index]).map(|(a, b)| a + b).collect()
    }

    fn is_target(&self, cfg: &Vec<i64>) -> bool {
        *cfg == self.goal
    }

    fn key(&self, cfg: &Vec<i64>) -> Vec<i64> {
        cfg.clone()
    }

    fn render_key(&self, key: &Vec<i64>) -> String {
        format!("{key:?}")
    }
}

/// `[[I, d(v)], [0, I]]` where `d(v)` is diagonal with entries `v`.
pub fn translation_matrix(v: &[i64]) -> IntMatrix {
    let n = v.len();
    let mut m = IntMatrix::identity(2 * n);
    for (i, &x) in v.iter().enumerate() {
        m.set(i, n + i, BigInt::from(x));
    }
    m
}

fn extend_ones(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).chain(std::iter::repeat_n(BigInt::one(), v.len())).collect()
}

/// The `2n`-dimensional matrix game simulating a robot game.
pub fn robot_to_matrix_game(r: &RobotGame) -> MatrixGame {
    let enc = |vs: &[Vec<i64>]| vs.iter().map(|v| translation_matrix(v)).collect();
    MatrixGame::new(
        enc(&r.defender),
        enc(&r.attacker),
        IntMatrix::identity(2 * r.dim),
        MatrixTarget::ReachesColumn { start: extend_ones(&r.start), goal: extend_ones(&r.goal) },
    )
    .expect("dimensions agree by construction")
}

/// Largest absolute entry, useful for reporting growth.
pub fn max_abs_entry(m: &IntMatrix) -> BigInt {
    m.entries.iter().map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::alpha_encode;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn bin(text: &str) -> GroupWord {
        GroupWord::parse(&Alphabet::binary(), text).unwrap()
    }

    #[test]
    fn generators_and_identity() {
        assert!(f_encode(&bin("")).unwrap().is_identity());
        assert_eq!(f_encode(&bin("c")).unwrap(), m(&[&[1, 2], &[0, 1]]));
        assert_eq!(f_encode(&bin("~d")).unwrap(), m(&[&[1, 0], &[-2, 1]]));
        assert!(f_encode(&bin("c d ~d ~c")).unwrap().is_identity());
    }

    #[test]
    fn alpha_of_first_letter() {
        let z = Alphabet::new(["z1", "z2"]).unwrap();
        let w = alpha_encode(&GroupWord::generator(&z, 0));
        assert_eq!(f_encode(&w).unwrap(), m(&[&[5, -8], &[2, -3]]));
    }

    #[test]
    fn determinant() {
        assert_eq!(m(&[&[5, -8], &[2, -3]]).det(), BigInt::one());
        assert_eq!(m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).det(), BigInt::from(-2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), BigInt::zero());
        assert_eq!(pair_encode(&bin("c d"), &bin("~d c")).unwrap().det(), BigInt::one());
    }

    #[test]
    fn pair_encoding_and_anchor() {
        let rho = GroupWord::empty(&Alphabet::unary());
        assert!(pair_encode(&bin(""), &rho).unwrap().is_identity());
        assert!(fixes_anchor(&IntMatrix::identity(4)));
        let z = Alphabet::new(["z1"]).unwrap();
        let first = alpha_encode_into(&GroupWord::generator(&z, 0), &Alphabet::binary());
        assert!(!fixes_anchor(&pair_encode(&first, &rho).unwrap()));
        assert!(matches!(pair_encode(&GroupWord::generator(&z, 0), &rho), Err(MatrixError::NotBinary(_))));
    }

    #[test]
    fn anchor_lemma_small() {
        assert!(anchor_lemma_holds(2).unwrap());
        assert_eq!(reduced_words(&Alphabet::binary(), 2, 2).len(), 1 + 4 + 12);
    }

    #[test]
    fn robot_single_step() {
        let r = RobotGame::new(vec![vec![2]], vec![vec![0]], vec![3], vec![5]).unwrap();
        let g = robot_to_matrix_game(&r);
        assert_eq!(translation_matrix(&[2]), m(&[&[1, 2], &[0, 1]]));
        assert!(translation_matrix(&[0]).is_identity());
        let cfg = g.apply(&g.initial(), Player::Attacker, 0);
        assert_eq!(g.vector(&cfg), vec![BigInt::from(5), BigInt::one()]);
        assert!(g.is_target(&cfg));
        assert!(r.is_target(&r.apply(&r.initial(), Player::Attacker, 0)));
    }

    #[test]
    fn dump_round_trip() {
        let r = RobotGame::new(vec![vec![2, -1]], vec![vec![0, 4]], vec![3, 0], vec![5, 1]).unwrap();
        let g = robot_to_matrix_game(&r);
        assert_eq!(parse_matrix_dump(&g.dump()).unwrap(), g);
        let h = MatrixGame::new(vec![], vec![IntMatrix::identity(4)], IntMatrix::identity(4), MatrixTarget::FixesRow(row_anchor())).unwrap();
        assert_eq!(parse_matrix_dump(&h.dump()).unwrap(), h);
    }
}
