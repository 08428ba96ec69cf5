//! Braid words, Garside normal forms, the reduced Burau representation of
//! `B3`, and braid games encoding the word games.
//!
//! A braid is stored as a freely reduced word of signed Artin generator
//! indices. Equality is decided by the left-greedy normal form
//! `Δ^p A_1 … A_r` over permutation braids.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::engine::{GameDomain, Player};
use crate::free_group::{alpha_encode_into, Alphabet, GroupWord};
use crate::word_game::{PairMove, PairWordGame, WeightedWordGame};

const MAX_STRANDS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braid groups need between 2 and {MAX_STRANDS} strands, got {0}")]
    Strands(usize),
    #[error("generator {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i32, strands: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("expected a word over {{c, d}}, found alphabet {0:?}")]
    NotBinary(Vec<String>),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A freely reduced braid word on `n` strands. Letter `i` is `σ_i`,
/// letter `-i` is its inverse.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn identity(n: usize) -> Result<Self, BraidError> {
        if !(2..=MAX_STRANDS).contains(&n) {
            return Err(BraidError::Strands(n));
        }
        Ok(Self { n, letters: Vec::new() })
    }

    pub fn new(n: usize, letters: impl IntoIterator<Item = i32>) -> Result<Self, BraidError> {
        let mut w = Self::identity(n)?;
        for l in letters {
            if l == 0 || l.unsigned_abs() as usize >= n {
                return Err(BraidError::IndexOutOfRange { index: l, strands: n });
            }
            w.push(l);
        }
        Ok(w)
    }

    /// Parses whitespace-separated signed indices, e.g. `"1 1 -2"`.
    pub fn parse(n: usize, text: &str) -> Result<Self, BraidError> {
        let letters = text
            .split_whitespace()
            .filter(|t| *t != "ε")
            .map(|t| t.parse::<i32>().map_err(|_| BraidError::Parse { line: 0, message: format!("bad generator `{t}`") }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, letters)
    }

    fn push(&mut self, l: i32) {
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.n != other.n {
            return Err(BraidError::StrandMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> BraidWord {
        Self { n: self.n, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Self { n: self.n, letters: Vec::new() };
        for _ in 0..k.unsigned_abs() {
            for &l in &base.letters {
                out.push(l);
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "ε".into();
        }
        self.letters.iter().map(i32::to_string).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[{}]", self.n, self.render())
    }
}

/// `Δ_n = (σ_{n-1} … σ_1)(σ_{n-1} … σ_2) … σ_{n-1}`.
pub fn fundamental_braid(n: usize) -> Result<BraidWord, BraidError> {
    let top = n as i32 - 1;
    BraidWord::new(n, (1..=top).flat_map(|lo| (lo..=top).rev()))
}

/// A permutation of `0..n`, standing for the positive braid in which each
/// pair of strands crosses at most once. Composition is `(fg)(x) = f(g(x))`
/// and `σ_i` corresponds to the transposition of `i - 1` and `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_STRANDS],
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        let mut img = [0; MAX_STRANDS];
        for (x, slot) in img.iter_mut().enumerate().take(n) {
            *slot = x as u8;
        }
        Self { n: n as u8, img }
    }

    pub fn delta(n: usize) -> Self {
        let mut p = Self::identity(n);
        p.img[..n].reverse();
        p
    }

    pub fn generator(n: usize, i: usize) -> Self {
        Self::identity(n).swap_positions(i)
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.n as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images().iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.n as usize;
        self.images().iter().enumerate().all(|(x, &y)| y as usize == n - 1 - x)
    }

    /// `π·s_i`.
    fn swap_positions(mut self, i: usize) -> Self {
        self.img.swap(i - 1, i);
        self
    }

    /// `s_i·π`.
    fn swap_values(mut self, i: usize) -> Self {
        for v in self.img[..self.n as usize].iter_mut() {
            if *v as usize == i - 1 {
                *v = i as u8;
            } else if *v as usize == i {
                *v = (i - 1) as u8;
            }
        }
        self
    }

    /// `σ_i` can be split off on the right.
    fn finishes_with(&self, i: usize) -> bool {
        self.img[i - 1] > self.img[i]
    }

    /// `σ_i` can be split off on the left.
    fn starts_with(&self, i: usize) -> bool {
        let imgs = self.images();
        let pos = |v: usize| imgs.iter().position(|&y| y as usize == v).expect("permutation");
        pos(i - 1) > pos(i)
    }

    /// Conjugation by `Δ`.
    fn tau(&self) -> Self {
        let n = self.n as usize;
        let mut out = *self;
        for x in 0..n {
            out.img[x] = (n - 1) as u8 - self.img[n - 1 - x];
        }
        out
    }

    pub fn length(&self) -> usize {
        let imgs = self.images();
        (0..imgs.len()).map(|i| (i + 1..imgs.len()).filter(|&j| imgs[i] > imgs[j]).count()).sum()
    }

    /// A positive word for this permutation braid.
    pub fn to_letters(&self) -> Vec<i32> {
        let mut p = *self;
        let mut rev = Vec::new();
        while let Some(i) = (1..self.n as usize).find(|&i| p.finishes_with(i)) {
            p = p.swap_positions(i);
            rev.push(i as i32);
        }
        rev.reverse();
        rev
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images())
    }
}

/// Bit `i` set iff `σ_i` can be split off `p` on the right.
fn right_descents(p: &Perm) -> u32 {
    (1..p.n as usize).filter(|&i| p.img[i - 1] > p.img[i]).fold(0, |m, i| m | 1 << i)
}

/// Bit `i` set iff `σ_i` can be split off `p` on the left.
fn left_descents(p: &Perm) -> u32 {
    let mut pos = [0u8; 16];
    for (x, &y) in p.images().iter().enumerate() {
        pos[y as usize] = x as u8;
    }
    (1..p.n as usize).filter(|&i| pos[i - 1] > pos[i]).fold(0, |m, i| m | 1 << i)
}

fn left_weight(mut a: Perm, mut b: Perm) -> (Perm, Perm) {
    loop {
        let movable = left_descents(&b) & !right_descents(&a);
        if movable == 0 {
            return (a, b);
        }
        let i = movable.trailing_zeros() as usize;
        a = a.swap_positions(i);
        b = b.swap_values(i);
    }
}

fn is_left_weighted(a: &Perm, b: &Perm) -> bool {
    (1..a.n as usize).all(|i| !b.starts_with(i) || a.finishes_with(i))
}

/// The left-greedy normal form `Δ^inf · factors`. Two braids are equal iff
/// their normal forms are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GarsideNormalForm {
    n: usize,
    inf: i64,
    factors: Vec<Perm>,
}

impl GarsideNormalForm {
    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn infimum(&self) -> i64 {
        self.inf
    }

    pub fn factors(&self) -> &[Perm] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Checks the defining conditions of the normal form.
    pub fn is_normal(&self) -> bool {
        self.factors.iter().all(|f| !f.is_identity() && !f.is_delta())
            && self.factors.windows(2).all(|w| is_left_weighted(&w[0], &w[1]))
    }

    /// A braid word representing the same braid.
    pub fn to_word(&self) -> BraidWord {
        let delta = fundamental_braid(self.n).expect("valid strand count");
        let mut out = delta.pow(self.inf);
        for f in &self.factors {
            out = out.concat(&BraidWord::new(self.n, f.to_letters()).expect("in range")).expect("same strands");
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = format!("Δ^{}", self.inf);
        for f in &self.factors {
            let imgs: Vec<String> = f.images().iter().map(u8::to_string).collect();
            let _ = write!(out, " [{}]", imgs.join(""));
        }
        out
    }
}

impl fmt::Debug for GarsideNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for GarsideNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A normal form under construction that accepts generators one at a time.
///
/// Factors are stored up to a pending conjugation by `Δ`: the actual
/// factors are `τ(stored)` when `flipped` is set. Appending `σ_i^{-1}`,
/// written `Δ^{-1}·(Δσ_i^{-1})`, only toggles the flag.
#[derive(Clone, PartialEq, Eq)]
pub struct GarsideAccumulator {
    n: usize,
    inf: i64,
    flipped: bool,
    factors: Vec<Perm>,
}

impl GarsideAccumulator {
    pub fn new(n: usize) -> Self {
        Self { n, inf: 0, flipped: false, factors: Vec::new() }
    }

    pub fn from_word(w: &BraidWord) -> Self {
        let mut acc = Self::new(w.n);
        acc.append(w);
        acc
    }

    pub fn append(&mut self, w: &BraidWord) {
        assert_eq!(w.n, self.n, "strand counts differ");
        for &l in &w.letters {
            self.push_letter(l);
        }
    }

    /// Multiplies on the right by a braid given in normal form.
    pub fn append_normal_form(&mut self, nf: &GarsideNormalForm) {
        assert_eq!(nf.n, self.n, "strand counts differ");
        // X·Δ^p = Δ^p·τ^p(X)
        self.inf += nf.inf;
        if nf.inf % 2 != 0 {
            self.flipped = !self.flipped;
        }
        for &f in &nf.factors {
            self.push_simple(if self.flipped { f.tau() } else { f });
        }
    }

    pub fn push_letter(&mut self, l: i32) {
        let i = l.unsigned_abs() as usize;
        let actual = if l > 0 {
            Perm::generator(self.n, i)
        } else {
            self.inf -= 1;
            self.flipped = !self.flipped;
            Perm::delta(self.n).swap_positions(i)
        };
        self.push_simple(if self.flipped { actual.tau() } else { actual });
    }

    fn push_simple(&mut self, p: Perm) {
        if p.is_identity() {
            return;
        }
        self.factors.push(p);
        let mut j = self.factors.len() - 1;
        while j > 0 {
            let (a, b) = left_weight(self.factors[j - 1], self.factors[j]);
            if a == self.factors[j - 1] {
                break;
            }
            self.factors[j - 1] = a;
            self.factors[j] = b;
            j -= 1;
        }
        while self.factors.last().is_some_and(Perm::is_identity) {
            self.factors.pop();
        }
        let leading = self.factors.iter().take_while(|f| f.is_delta()).count();
        if leading > 0 {
            self.factors.drain(..leading);
            self.inf += leading as i64;
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    pub fn normal_form(&self) -> GarsideNormalForm {
        let factors = if self.flipped { self.factors.iter().map(Perm::tau).collect() } else { self.factors.clone() };
        GarsideNormalForm { n: self.n, inf: self.inf, factors }
    }
}

impl fmt::Debug for GarsideAccumulator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.normal_form().render())
    }
}

pub fn garside_nf(w: &BraidWord) -> GarsideNormalForm {
    GarsideAccumulator::from_word(w).normal_form()
}

pub fn braids_equal(u: &BraidWord, v: &BraidWord) -> Result<bool, BraidError> {
    if u.n != v.n {
        return Err(BraidError::StrandMismatch(u.n, v.n));
    }
    Ok(garside_nf(u) == garside_nf(v))
}

pub fn is_trivial(w: &BraidWord) -> bool {
    garside_nf(w).is_trivial()
}

/// A Laurent polynomial in `t` with integer coefficients; zero
/// coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, BigInt::from(coeff));
        p
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    fn add_term(&mut self, exp: i32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i32, BigInt> {
        &self.terms
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = Self::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}t^{e}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A `2 × 2` matrix over Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentMatrix {
    pub entries: [[LaurentPoly; 2]; 2],
}

impl LaurentMatrix {
    pub fn identity() -> Self {
        Self { entries: [[LaurentPoly::one(), LaurentPoly::zero()], [LaurentPoly::zero(), LaurentPoly::one()]] }
    }

    fn from_monomials(m: [[(i64, i32); 2]; 2]) -> Self {
        Self { entries: m.map(|row| row.map(|(c, e)| LaurentPoly::monomial(c, e))) }
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let e = |i: usize, j: usize| self.entries[i][0].mul(&other.entries[0][j]).add(&self.entries[i][1].mul(&other.entries[1][j]));
        Self { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// The common diagonal entry when the matrix is scalar.
    pub fn scalar(&self) -> Option<&LaurentPoly> {
        let [[a, b], [c, d]] = &self.entries;
        (b.is_zero() && c.is_zero() && a == d).then_some(a)
    }
}

fn burau_generator(l: i32) -> LaurentMatrix {
    match l {
        1 => LaurentMatrix::from_monomials([[(-1, 1), (1, 0)], [(0, 0), (1, 0)]]),
        -1 => LaurentMatrix::from_monomials([[(-1, -1), (1, -1)], [(0, 0), (1, 0)]]),
        2 => LaurentMatrix::from_monomials([[(1, 0), (0, 0)], [(1, 1), (-1, 1)]]),
        -2 => LaurentMatrix::from_monomials([[(1, 0), (0, 0)], [(1, 0), (-1, -1)]]),
        _ => unreachable!("B3 generator"),
    }
}

/// Reduced Burau image of a three-strand braid.
pub fn burau3(w: &BraidWord) -> Result<LaurentMatrix, BraidError> {
    if w.n != 3 {
        return Err(BraidError::StrandMismatch(3, w.n));
    }
    Ok(w.letters.iter().fold(LaurentMatrix::identity(), |acc, &l| acc.mul(&burau_generator(l))))
}

fn require_binary(w: &GroupWord) -> Result<(), BraidError> {
    if w.alphabet().len() != 2 {
        return Err(BraidError::NotBinary(w.alphabet().symbols().to_vec()));
    }
    Ok(())
}

fn map_binary(n: usize, w: &GroupWord, c: &BraidWord, d: &BraidWord) -> BraidWord {
    let mut out = BraidWord { n, letters: Vec::new() };
    for l in w.letters() {
        let img = if l.index == 0 { c } else { d };
        let img = if l.inverse { img.inverse() } else { img.clone() };
        out = out.concat(&img).expect("same strands");
    }
    out
}

/// `c ↦ σ_1^4`, `d ↦ σ_2^4`, followed by `Δ_3^{2·counter}`.
pub fn b3_encode(w: &GroupWord, counter: i64) -> Result<BraidWord, BraidError> {
    require_binary(w)?;
    let c = BraidWord::new(3, [1; 4])?;
    let d = BraidWord::new(3, [2; 4])?;
    let centre = fundamental_braid(3)?.pow(2 * counter);
    Ok(map_binary(3, w, &c, &d).concat(&centre).expect("same strands"))
}

/// The image of `d` for the second component of [`b5_encode`]:
/// `σ_4σ_3σ_2σ_1²σ_2σ_3σ_4`.
pub fn b5_second_d() -> BraidWord {
    BraidWord::new(5, [4, 3, 2, 1, 1, 2, 3, 4]).expect("static word")
}

/// First component into `⟨σ_1^4, σ_2^4⟩`, second into `⟨σ_4^2, σ_4σ_3σ_2σ_1²σ_2σ_3σ_4⟩`.
/// A second component over any alphabet other than `{c, d}` is first sent
/// through the rank encoding.
pub fn b5_encode(first: &GroupWord, second: &GroupWord) -> Result<BraidWord, BraidError> {
    require_binary(first)?;
    let second = if second.alphabet().len() == 2 { second.clone() } else { alpha_encode_into(second, &Alphabet::binary()) };
    let a = map_binary(5, first, &BraidWord::new(5, [1; 4])?, &BraidWord::new(5, [2; 4])?);
    let b = map_binary(5, &second, &BraidWord::new(5, [4; 2])?, &b5_second_d());
    Ok(a.concat(&b).expect("same strands"))
}

/// Configuration of a braid game: the braid so far and, when the game
/// tracks it, the encoded word pair.
#[derive(Clone, Debug)]
pub struct BraidConfig {
    pub braid: GarsideAccumulator,
    pub preimage: Option<PairMove>,
}

/// A braid game: each move multiplies the braid on the right, and Attacker
/// wins by reaching the trivial braid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidGame {
    n: usize,
    defender: Vec<BraidWord>,
    attacker: Vec<BraidWord>,
    initial: BraidWord,
    preimages: Option<Preimages>,
    defender_nf: Vec<GarsideNormalForm>,
    attacker_nf: Vec<GarsideNormalForm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Preimages {
    defender: Vec<PairMove>,
    attacker: Vec<PairMove>,
    initial: PairMove,
}

impl BraidGame {
    pub fn new(defender: Vec<BraidWord>, attacker: Vec<BraidWord>, initial: BraidWord) -> Result<Self, BraidError> {
        let n = initial.n;
        if let Some(w) = defender.iter().chain(&attacker).find(|w| w.n != n) {
            return Err(BraidError::StrandMismatch(n, w.n));
        }
        let defender_nf = defender.iter().map(garside_nf).collect();
        let attacker_nf = attacker.iter().map(garside_nf).collect();
        Ok(Self { n, defender, attacker, initial, preimages: None, defender_nf, attacker_nf })
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn defender_moves(&self) -> &[BraidWord] {
        &self.defender
    }

    pub fn attacker_moves(&self) -> &[BraidWord] {
        &self.attacker
    }

    pub fn initial_braid(&self) -> &BraidWord {
        &self.initial
    }

    /// Whether targets are decided on the tracked word pair rather than on
    /// the normal form.
    pub fn tracks_preimage(&self) -> bool {
        self.preimages.is_some()
    }

    fn moves(&self, player: Player) -> &[BraidWord] {
        match player {
            Player::Defender => &self.defender,
            Player::Attacker => &self.attacker,
        }
    }

    pub fn dump(&self) -> String {
        let mut out = format!("game=braid\nstrands={}\ninitial word={}\n", self.n, self.initial);
        for (p, moves) in [("D", &self.defender), ("A", &self.attacker)] {
            for m in moves {
                let _ = writeln!(out, "player={p} word={m}");
            }
        }
        out
    }
}

/// Reads the output of [`BraidGame::dump`]. The result decides targets on
/// the normal form.
pub fn parse_braid_dump(text: &str) -> Result<BraidGame, BraidError> {
    let mut n = None;
    let mut initial = None;
    let (mut defender, mut attacker) = (Vec::new(), Vec::new());
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |message: String| BraidError::Parse { line: i + 1, message };
        let word = |t: &str| -> Result<BraidWord, BraidError> {
            let strands = n.ok_or_else(|| err("strands line must come first".into()))?;
            BraidWord::parse(strands, t).map_err(|e| err(e.to_string()))
        };
        if line.is_empty() || line == "game=braid" {
            continue;
        } else if let Some(s) = line.strip_prefix("strands=") {
            n = Some(s.parse().map_err(|_| err(format!("bad strand count `{s}`")))?);
        } else if let Some(w) = line.strip_prefix("initial word=") {
            initial = Some(word(w)?);
        } else if let Some(w) = line.strip_prefix("player=D word=") {
            defender.push(word(w)?);
        } else if let Some(w) = line.strip_prefix("player=A word=") {
            attacker.push(word(w)?);
        } else {
            return Err(err(format!("unrecognised line `{line}`")));
        }
    }
    let initial = initial.ok_or(BraidError::Parse { line: 0, message: "missing initial line".into() })?;
    BraidGame::new(defender, attacker, initial)
}

/// The `B3` game of a weighted word game over `{c, d}`.
pub fn build_braid3_game(g: &WeightedWordGame) -> Result<BraidGame, BraidError> {
    let enc = |m: &crate::word_game::WordMove| {
        let x = i64::try_from(&m.weight).map_err(|_| BraidError::Parse { line: 0, message: "weight too large".into() })?;
        b3_encode(&m.word, x)
    };
    BraidGame::new(
        g.defender_moves().iter().map(enc).collect::<Result<_, _>>()?,
        g.attacker_moves().iter().map(enc).collect::<Result<_, _>>()?,
        enc(g.initial_config())?,
    )
}

/// The `B5` game of a pair game over `{c, d}`, tracking the word pair.
pub fn build_braid5_game(g: &PairWordGame) -> Result<BraidGame, BraidError> {
    let enc = |m: &PairMove| b5_encode(&m.first, &m.second);
    let mut game = BraidGame::new(
        g.defender_moves().iter().map(enc).collect::<Result<_, _>>()?,
        g.attacker_moves().iter().map(enc).collect::<Result<_, _>>()?,
        enc(g.initial_config())?,
    )?;
    game.preimages = Some(Preimages {
        defender: g.defender_moves().to_vec(),
        attacker: g.attacker_moves().to_vec(),
        initial: g.initial_config().clone(),
    });
    Ok(game)
}

impl GameDomain for BraidGame {
    type Config = BraidConfig;
    type Key = GarsideNormalForm;

    fn initial(&self) -> BraidConfig {
        BraidConfig {
            braid: GarsideAccumulator::from_word(&self.initial),
            preimage: self.preimages.as_ref().map(|p| p.initial.clone()),
        }
    }

    fn move_count(&self, player: Player) -> usize {
        self.moves(player).len()
    }

    fn apply(&self, cfg: &BraidConfig, player: Player, index: usize) -> BraidConfig {
        let mut braid = cfg.braid.clone();
        braid.append_normal_form(match player {
            Player::Defender => &self.defender_nf[index],
            Player::Attacker => &self.attacker_nf[index],
        });
        let preimage = match (&cfg.preimage, &self.preimages) {
            (Some(cur), Some(p)) => {
                let m = match player {
                    Player::Defender => &p.defender[index],
                    Player::Attacker => &p.attacker[index],
                };
                Some(PairMove {
                    first: cur.first.concat(&m.first).expect("shared alphabet"),
                    second: cur.second.concat(&m.second).expect("shared alphabet"),
                })
            }
            _ => None,
        };
        BraidConfig { braid, preimage }
    }

    fn is_target(&self, cfg: &BraidConfig) -> bool {
        match &cfg.preimage {
            Some(p) => p.first.is_identity() && p.second.is_identity(),
            None => cfg.braid.is_trivial(),
        }
    }

    fn key(&self, cfg: &BraidConfig) -> GarsideNormalForm {
        cfg.braid.normal_form()
    }

    fn render_key(&self, key: &GarsideNormalForm) -> String {
        key.render()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.iter().copied()).unwrap()
    }

    #[test]
    fn free_cancellation_and_text() {
        assert!(bw(3, &[1, -1]).is_empty());
        assert_eq!(BraidWord::parse(3, "1 1 1 1 -2").unwrap().render(), "1 1 1 1 -2");
        assert!(BraidWord::new(3, [3]).is_err());
        assert!(BraidWord::identity(1).is_err());
    }

    #[test]
    fn fundamental_braids() {
        assert_eq!(fundamental_braid(2).unwrap().letters(), &[1]);
        assert_eq!(fundamental_braid(3).unwrap().letters(), &[2, 1, 2]);
        assert_eq!(fundamental_braid(5).unwrap().len(), 10);
        assert!(braids_equal(&fundamental_braid(3).unwrap(), &bw(3, &[1, 2, 1])).unwrap());
        assert!(garside_nf(&fundamental_braid(4).unwrap()).factors().is_empty());
        assert_eq!(garside_nf(&fundamental_braid(4).unwrap()).infimum(), 1);
    }

    #[test]
    fn relations() {
        assert!(is_trivial(&bw(3, &[1, -1])));
        assert!(braids_equal(&bw(3, &[1, 2, 1]), &bw(3, &[2, 1, 2])).unwrap());
        assert!(braids_equal(&bw(5, &[1, 3]), &bw(5, &[3, 1])).unwrap());
        assert!(!braids_equal(&bw(3, &[1, 2]), &bw(3, &[2, 1])).unwrap());
        assert!(is_trivial(&bw(4, &[2, 1, -2, -1, 2, 1]).concat(&bw(4, &[-1, -2, 1, 2, -1, -2])).unwrap()));
    }

    #[test]
    fn normal_form_is_normal_and_reproduces_braid() {
        let w = bw(4, &[1, -2, 3, 3, -1, 2, -3, 1, 2, 2, -1]);
        let nf = garside_nf(&w);
        assert!(nf.is_normal());
        assert_eq!(garside_nf(&nf.to_word()), nf);
        assert!(is_trivial(&nf.to_word().concat(&w.inverse()).unwrap()));
    }

    #[test]
    fn burau_basics() {
        assert!(burau3(&bw(3, &[])).unwrap().is_identity());
        assert_eq!(burau3(&bw(3, &[1, 2, 1])).unwrap(), burau3(&bw(3, &[2, 1, 2])).unwrap());
        assert!(burau3(&bw(3, &[1, -1, 2, -2])).unwrap().is_identity());
        let d2 = burau3(&fundamental_braid(3).unwrap().pow(2)).unwrap();
        assert_eq!(d2.scalar(), Some(&LaurentPoly::monomial(1, 3)));
        assert!(burau3(&bw(4, &[1])).is_err());
    }

    #[test]
    fn encodings() {
        let b = Alphabet::binary();
        let z = Alphabet::new(["z1", "z2", "z3"]).unwrap();
        for j in 0..3 {
            let w = alpha_encode_into(&GroupWord::generator(&z, j), &b);
            assert_eq!(b3_encode(&w, 0).unwrap().len(), 8 * (j + 1) + 4);
        }
        assert!(is_trivial(&b3_encode(&GroupWord::empty(&b), 0).unwrap()));
        assert!(!is_trivial(&b3_encode(&GroupWord::empty(&b), 1).unwrap()));
        let rho = Alphabet::unary();
        assert!(is_trivial(&b5_encode(&GroupWord::empty(&b), &GroupWord::empty(&rho)).unwrap()));
        assert!(!is_trivial(&b5_encode(&GroupWord::empty(&b), &GroupWord::generator(&rho, 0)).unwrap()));
    }
}
