//! Freely reduced words over symmetric group alphabets and the injective
//! encoding of any finite alphabet into the two-letter alphabet `{c, d}`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("words over different alphabets cannot be combined")]
    AlphabetMismatch,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
}

/// An ordered set of positive generator names. The position of a symbol,
/// counted from 1, is its rank for [`alpha_encode`].
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Arc<Self>, FreeGroupError> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.starts_with('~') || s.chars().any(char::is_whitespace) || s == "ε" {
                return Err(FreeGroupError::InvalidAlphabet(format!("bad symbol `{s}`")));
            }
            if symbols[..i].contains(s) {
                return Err(FreeGroupError::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Arc::new(Self { symbols }))
    }

    /// The binary alphabet `{c, d}` that every word is eventually encoded in.
    pub fn binary() -> Arc<Self> {
        Self::new(["c", "d"]).expect("static alphabet")
    }

    /// The unary counter alphabet `{ρ}`.
    pub fn unary() -> Arc<Self> {
        Self::new(["ρ"]).expect("static alphabet")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.symbols[index]
    }
}

fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupLetter {
    /// 0-based position in the alphabet.
    pub index: u32,
    pub inverse: bool,
}

impl GroupLetter {
    pub fn pos(index: usize) -> Self {
        Self { index: index as u32, inverse: false }
    }

    pub fn neg(index: usize) -> Self {
        Self { index: index as u32, inverse: true }
    }

    pub fn inv(self) -> Self {
        Self { inverse: !self.inverse, ..self }
    }

    pub fn cancels(self, other: Self) -> bool {
        self.index == other.index && self.inverse != other.inverse
    }
}

/// A freely reduced word. Every constructor and operation reduces, so two
/// words denote the same group element iff they are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    alphabet: Arc<Alphabet>,
    letters: Vec<GroupLetter>,
}

impl GroupWord {
    pub fn empty(alphabet: &Arc<Alphabet>) -> Self {
        Self { alphabet: alphabet.clone(), letters: Vec::new() }
    }

    /// Reduces an arbitrary letter sequence. Panics on letters outside the
    /// alphabet.
    pub fn reduce(alphabet: &Arc<Alphabet>, raw: impl IntoIterator<Item = GroupLetter>) -> Self {
        let mut w = Self::empty(alphabet);
        w.push_all(raw);
        w
    }

    pub fn generator(alphabet: &Arc<Alphabet>, index: usize) -> Self {
        Self::reduce(alphabet, [GroupLetter::pos(index)])
    }

    /// Parses whitespace-separated symbols, `~x` denoting the inverse of
    /// `x`. `ε` and the empty string denote the identity.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Self, FreeGroupError> {
        let mut raw = Vec::new();
        for tok in text.split_whitespace().filter(|t| *t != "ε") {
            let (name, inverse) = match tok.strip_prefix('~') {
                Some(rest) => (rest, true),
                None => (tok, false),
            };
            let index = alphabet.index_of(name).ok_or_else(|| FreeGroupError::UnknownSymbol(tok.to_string()))?;
            raw.push(GroupLetter { index: index as u32, inverse });
        }
        Ok(Self::reduce(alphabet, raw))
    }

    fn push(&mut self, l: GroupLetter) {
        assert!((l.index as usize) < self.alphabet.len(), "letter outside alphabet");
        match self.letters.last() {
            Some(&last) if last.cancels(l) => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    fn push_all(&mut self, raw: impl IntoIterator<Item = GroupLetter>) {
        for l in raw {
            self.push(l);
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[GroupLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// `reduce(self · other)`.
    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord, FreeGroupError> {
        let mut out = self.clone();
        out.append(other)?;
        Ok(out)
    }

    /// In-place right multiplication.
    pub fn append(&mut self, other: &GroupWord) -> Result<(), FreeGroupError> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(FreeGroupError::AlphabetMismatch);
        }
        self.push_all(other.letters.iter().copied());
        Ok(())
    }

    pub fn invert(&self) -> GroupWord {
        Self { alphabet: self.alphabet.clone(), letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = Self::empty(&self.alphabet);
        for _ in 0..n.unsigned_abs() {
            out.push_all(base.letters.iter().copied());
        }
        out
    }

    /// Sum of the signed exponents of generator `index`.
    pub fn exponent_sum(&self, index: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.index as usize == index)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "ε".to_string();
        }
        self.letters
            .iter()
            .map(|l| {
                let s = self.alphabet.symbol(l.index as usize);
                if l.inverse { format!("~{s}") } else { s.to_string() }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({})", self.render())
    }
}

const C: GroupLetter = GroupLetter { index: 0, inverse: false };
const D: GroupLetter = GroupLetter { index: 1, inverse: false };

/// Letterwise `z_i ↦ c^i d c̄^i`, `z̄_i ↦ c^i d̄ c̄^i`, where `i` is the
/// 1-based rank of the letter in its alphabet.
pub fn alpha_encode(w: &GroupWord) -> GroupWord {
    alpha_encode_into(w, &Alphabet::binary())
}

/// [`alpha_encode`] into a caller-supplied copy of the binary alphabet, so
/// that the result can be combined with other words over it.
pub fn alpha_encode_into(w: &GroupWord, binary: &Arc<Alphabet>) -> GroupWord {
    assert_eq!(binary.len(), 2, "target alphabet must be binary");
    let mut out = GroupWord::empty(binary);
    for l in &w.letters {
        let rank = l.index as usize + 1;
        out.push_all(std::iter::repeat_n(C, rank));
        out.push(if l.inverse { D.inv() } else { D });
        out.push_all(std::iter::repeat_n(C.inv(), rank));
    }
    out
}

/// Preimage of `w` under [`alpha_encode`] into `target`, or `None` when `w`
/// is not in the image.
///
/// A reduced image word has the shape `c^{e_0} D_1 c^{e_1} … D_k c^{e_k}`
/// with `D_j ∈ {d, d̄}`; the rank of the `j`-th letter is the partial sum
/// `e_0 + … + e_{j-1}`, and the total exponent of `c` must vanish.
pub fn alpha_decode(w: &GroupWord, target: &Arc<Alphabet>) -> Option<GroupWord> {
    if w.alphabet.len() != 2 {
        return None;
    }
    let mut rank: i64 = 0;
    let mut raw = Vec::new();
    for l in &w.letters {
        if l.index == 0 {
            rank += if l.inverse { -1 } else { 1 };
        } else {
            if rank < 1 || rank as usize > target.len() {
                return None;
            }
            raw.push(GroupLetter { index: rank as u32 - 1, inverse: l.inverse });
        }
    }
    (rank == 0).then(|| GroupWord::reduce(target, raw))
}
