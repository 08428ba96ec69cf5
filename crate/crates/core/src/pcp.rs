//! Post correspondence instances and the brute-force oracles built on them.
//!
//! An instance is a pair of morphisms `h, g` from a domain alphabet into an
//! image alphabet. Image letters carry 1-based codes in declaration order;
//! the automaton compiler stores those codes in its weights.
//!
//! Instance file format:
//!
//! ```text
//! # comment
//! alphabet: a b
//! images: x y
//! map a x xy
//! map b _ y
//! ```
//!
//! Each `map` line gives the `h`-image and then the `g`-image of one domain
//! letter, `_` standing for the empty word. Image words are written as
//! concatenated letters, optionally separated by `.` when image letters are
//! longer than one character.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// A finite word over the domain alphabet, as 0-based letter indices.
pub type DomainWord = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcpError {
    #[error("line {line}: missing {header} header")]
    MissingHeader { line: usize, header: &'static str },
    #[error("line {line}: malformed line `{text}`")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: unknown letter `{letter}` in image")]
    UnknownImageLetter { line: usize, letter: String },
    #[error("line {line}: unknown domain letter `{letter}`")]
    UnknownMapLetter { line: usize, letter: String },
    #[error("line {line}: duplicate definition of letter `{letter}`")]
    DuplicateLetter { line: usize, letter: String },
    #[error("line {line}: invalid letter name `{letter}`")]
    InvalidLetterName { line: usize, letter: String },
    #[error("no map line for domain letter `{0}`")]
    MissingMap(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter index {0} is outside the domain alphabet")]
    LetterOutOfRange(usize),
    #[error("word must be nonempty")]
    EmptyWord,
    #[error("word of length {len} is shorter than the horizon {horizon}")]
    WordTooShort { len: usize, horizon: usize },
    #[error("bound must be positive")]
    ZeroBound,
    #[error("enumeration of {candidates} candidate words exceeds the cap of {cap}")]
    CapExceeded { candidates: u128, cap: u128 },
    #[error("letter `{0}` already exists in the instance")]
    NameCollision(String),
}

/// How `h(p)` and `g(p)` compare for a finite prefix `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefixStatus {
    /// `h(p)` is a strict prefix of `g(p)` (the empty word included).
    HProperPrefixOfG,
    /// `g(p)` is a strict prefix of `h(p)`.
    GProperPrefixOfH,
    EqualImages,
    /// First differing position, 1-based.
    MismatchAt(usize),
}

impl PrefixStatus {
    /// Prefixes with this status keep the word a candidate infinite solution.
    pub fn is_proper(self) -> bool {
        matches!(self, Self::HProperPrefixOfG | Self::GProperPrefixOfH)
    }
}

/// The six ways a prefix can witness that a word is not an infinite
/// solution, in the order they are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BadPrefixCase {
    /// (i) equal image lengths, one letter.
    EqualLengthSingleLetter,
    /// (ii) equal image lengths, more than one letter.
    EqualLength,
    /// (iii) first mismatch inside the images of the first letter.
    MismatchInFirstLetter,
    /// (iv) first mismatch inside the images of one (later) letter.
    MismatchInSameLetter,
    /// (v) `|h(p)| > |g(p)|`, mismatch spans two different letters.
    HLongerMismatch,
    /// (vi) `|g(p)| > |h(p)|`, mismatch spans two different letters.
    GLongerMismatch,
}

impl BadPrefixCase {
    pub const ALL: [BadPrefixCase; 6] = [
        Self::EqualLengthSingleLetter,
        Self::EqualLength,
        Self::MismatchInFirstLetter,
        Self::MismatchInSameLetter,
        Self::HLongerMismatch,
        Self::GLongerMismatch,
    ];

    pub fn roman(self) -> &'static str {
        match self {
            Self::EqualLengthSingleLetter => "i",
            Self::EqualLength => "ii",
            Self::MismatchInFirstLetter => "iii",
            Self::MismatchInSameLetter => "iv",
            Self::HLongerMismatch => "v",
            Self::GLongerMismatch => "vi",
        }
    }
}

impl fmt::Display for BadPrefixCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}", self.roman())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcpInstance {
    domain: Vec<String>,
    image: Vec<String>,
    /// Images as 0-based indices into `image`.
    h: Vec<Vec<usize>>,
    g: Vec<Vec<usize>>,
}

fn valid_letter_name(name: &str) -> bool {
    !name.is_empty() && name != "_" && !name.contains('.') && !name.chars().any(char::is_whitespace)
}

/// Splits `text` into letters of `alphabet`: `.` separates explicitly, and
/// each piece is read greedily by longest match.
fn tokenize(text: &str, alphabet: &[String]) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for piece in text.split('.') {
        let mut rest = piece;
        while !rest.is_empty() {
            let best = alphabet
                .iter()
                .enumerate()
                .filter(|(_, l)| rest.starts_with(l.as_str()))
                .max_by_key(|(_, l)| l.len());
            match best {
                Some((i, l)) => {
                    out.push(i);
                    rest = &rest[l.len()..];
                }
                None => {
                    let bad: String = rest.chars().next().into_iter().collect();
                    return Err(bad);
                }
            }
        }
    }
    Ok(out)
}

fn render_word(word: &[usize], alphabet: &[String], separator: &str) -> String {
    word.iter().map(|&i| alphabet[i].as_str()).collect::<Vec<_>>().join(separator)
}

impl PcpInstance {
    /// Builds an instance from letter names and per-letter `(h, g)` images
    /// given as image-letter names.
    pub fn new(
        domain: Vec<String>,
        image: Vec<String>,
        images: Vec<(Vec<String>, Vec<String>)>,
    ) -> Result<Self, PcpError> {
        check_alphabet(&domain, 0)?;
        check_alphabet(&image, 0)?;
        if images.len() != domain.len() {
            let missing = domain.get(images.len()).cloned().unwrap_or_default();
            return Err(PcpError::MissingMap(missing));
        }
        let lookup = |letters: &[String]| -> Result<Vec<usize>, PcpError> {
            letters
                .iter()
                .map(|l| {
                    image
                        .iter()
                        .position(|b| b == l)
                        .ok_or_else(|| PcpError::UnknownImageLetter { line: 0, letter: l.clone() })
                })
                .collect()
        };
        let mut h = Vec::with_capacity(domain.len());
        let mut g = Vec::with_capacity(domain.len());
        for (hi, gi) in &images {
            h.push(lookup(hi)?);
            g.push(lookup(gi)?);
        }
        Ok(Self { domain, image, h, g })
    }

    /// Convenience constructor from `(letter, h-image, g-image)` triples in
    /// file notation.
    pub fn from_maps(domain: &[&str], image: &[&str], maps: &[(&str, &str, &str)]) -> Result<Self, PcpError> {
        let mut text = format!("alphabet: {}\nimages: {}\n", domain.join(" "), image.join(" "));
        for (a, h, g) in maps {
            text.push_str(&format!("map {a} {h} {g}\n"));
        }
        parse_instance(&text)
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn image_alphabet(&self) -> &[String] {
        &self.image
    }

    /// `s = |B| + 1`, one more than the largest letter code.
    pub fn code_base(&self) -> usize {
        self.image.len() + 1
    }

    /// 1-based codes of `h(a)`.
    pub fn h_codes(&self, letter: usize) -> Vec<usize> {
        self.h[letter].iter().map(|i| i + 1).collect()
    }

    /// 1-based codes of `g(a)`.
    pub fn g_codes(&self, letter: usize) -> Vec<usize> {
        self.g[letter].iter().map(|i| i + 1).collect()
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.domain.iter().position(|l| l == name)
    }

    /// Parses a domain word: whitespace-separated letters, or concatenated
    /// letters read by longest match.
    pub fn parse_word(&self, text: &str) -> Result<DomainWord, PcpError> {
        let text = text.trim();
        if text.chars().any(char::is_whitespace) {
            text.split_whitespace()
                .map(|t| self.letter_index(t).ok_or_else(|| PcpError::UnknownLetter(t.to_string())))
                .collect()
        } else {
            tokenize(text, &self.domain).map_err(PcpError::UnknownLetter)
        }
    }

    pub fn render_word(&self, word: &[usize]) -> String {
        let sep = if self.domain.iter().all(|l| l.chars().count() == 1) { "" } else { " " };
        render_word(word, &self.domain, sep)
    }

    fn check_word(&self, word: &[usize]) -> Result<(), PcpError> {
        match word.iter().find(|&&i| i >= self.domain.len()) {
            Some(&i) => Err(PcpError::LetterOutOfRange(i)),
            None => Ok(()),
        }
    }

    /// `h(p)` as image indices.
    pub fn h_image(&self, word: &[usize]) -> Vec<usize> {
        word.iter().flat_map(|&a| self.h[a].iter().copied()).collect()
    }

    /// `g(p)` as image indices.
    pub fn g_image(&self, word: &[usize]) -> Vec<usize> {
        word.iter().flat_map(|&a| self.g[a].iter().copied()).collect()
    }

    pub fn prefix_status(&self, p: &[usize]) -> Result<PrefixStatus, PcpError> {
        if p.is_empty() {
            return Err(PcpError::EmptyWord);
        }
        self.check_word(p)?;
        let hp = render_word(&self.h_image(p), &self.image, "\u{1}");
        let gp = render_word(&self.g_image(p), &self.image, "\u{1}");
        let hs: Vec<&str> = if hp.is_empty() { vec![] } else { hp.split('\u{1}').collect() };
        let gs: Vec<&str> = if gp.is_empty() { vec![] } else { gp.split('\u{1}').collect() };
        if let Some(i) = hs.iter().zip(&gs).position(|(x, y)| x != y) {
            return Ok(PrefixStatus::MismatchAt(i + 1));
        }
        Ok(match hs.len().cmp(&gs.len()) {
            std::cmp::Ordering::Less => PrefixStatus::HProperPrefixOfG,
            std::cmp::Ordering::Greater => PrefixStatus::GProperPrefixOfH,
            std::cmp::Ordering::Equal => PrefixStatus::EqualImages,
        })
    }

    /// True iff every prefix of `w` of length `1..=horizon` keeps one image a
    /// strict prefix of the other.
    pub fn is_omega_solution_up_to(&self, w: &[usize], horizon: usize) -> Result<bool, PcpError> {
        if horizon == 0 {
            return Err(PcpError::ZeroBound);
        }
        if w.len() < horizon {
            return Err(PcpError::WordTooShort { len: w.len(), horizon });
        }
        self.check_word(w)?;
        for len in 1..=horizon {
            if !self.prefix_status(&w[..len])?.is_proper() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Classifies `p` into the first applicable bad-prefix case, or `None`
    /// when `p` itself witnesses no violation.
    pub fn bad_prefix_case(&self, p: &[usize]) -> Result<Option<BadPrefixCase>, PcpError> {
        if p.is_empty() {
            return Err(PcpError::EmptyWord);
        }
        self.check_word(p)?;
        // (position in p that produced the image letter, image letter)
        let owners = |images: &[Vec<usize>]| -> Vec<(usize, usize)> {
            p.iter()
                .enumerate()
                .flat_map(|(pos, &a)| images[a].iter().map(move |&b| (pos, b)))
                .collect()
        };
        let hp = owners(&self.h);
        let gp = owners(&self.g);
        if hp.len() == gp.len() {
            return Ok(Some(if p.len() == 1 {
                BadPrefixCase::EqualLengthSingleLetter
            } else {
                BadPrefixCase::EqualLength
            }));
        }
        let Some(i) = hp.iter().zip(&gp).position(|(x, y)| x.1 != y.1) else {
            return Ok(None);
        };
        let (h_owner, g_owner) = (hp[i].0, gp[i].0);
        Ok(Some(if h_owner == 0 && g_owner == 0 {
            BadPrefixCase::MismatchInFirstLetter
        } else if h_owner == g_owner {
            BadPrefixCase::MismatchInSameLetter
        } else if hp.len() > gp.len() {
            BadPrefixCase::HLongerMismatch
        } else {
            BadPrefixCase::GLongerMismatch
        }))
    }

    /// Shortest prefix of `w` that witnesses a violation, with its case.
    pub fn first_bad_prefix(&self, w: &[usize]) -> Result<Option<(usize, BadPrefixCase)>, PcpError> {
        for len in 1..=w.len() {
            if let Some(case) = self.bad_prefix_case(&w[..len])? {
                return Ok(Some((len, case)));
            }
        }
        Ok(None)
    }

    /// Adds a fresh letter `marker` to both alphabets so that solutions must
    /// keep one image strictly ahead: `marker` goes before every letter of
    /// each `h`-image and after every letter of each `g`-image, with
    /// `h(marker) = ε` and `g(marker) = marker`.
    pub fn desynchronize(&self, marker: &str) -> Result<PcpInstance, PcpError> {
        if !valid_letter_name(marker) {
            return Err(PcpError::InvalidLetterName { line: 0, letter: marker.to_string() });
        }
        if self.domain.iter().chain(&self.image).any(|l| l == marker) {
            return Err(PcpError::NameCollision(marker.to_string()));
        }
        let m = self.image.len();
        let mut domain = self.domain.clone();
        domain.push(marker.to_string());
        let mut image = self.image.clone();
        image.push(marker.to_string());
        let mut h: Vec<Vec<usize>> =
            self.h.iter().map(|w| w.iter().flat_map(|&b| [m, b]).collect()).collect();
        let mut g: Vec<Vec<usize>> =
            self.g.iter().map(|w| w.iter().flat_map(|&b| [b, m]).collect()).collect();
        h.push(Vec::new());
        g.push(vec![m]);
        Ok(PcpInstance { domain, image, h, g })
    }

    /// Default cap on the number of candidate words: `max(|A|, 2)^10`.
    pub fn default_cap(&self) -> u128 {
        (self.domain.len().max(2) as u128).saturating_pow(10)
    }

    /// All nonempty `w` with `|w| <= max_len` and `g(w) = h(w)`, in
    /// length-lexicographic order.
    pub fn find_finite_solutions(&self, max_len: usize, cap: Option<u128>) -> Result<Vec<DomainWord>, PcpError> {
        if max_len == 0 {
            return Err(PcpError::ZeroBound);
        }
        let cap = cap.unwrap_or_else(|| self.default_cap());
        let n = self.domain.len() as u128;
        let candidates = (1..=max_len as u32).fold(0u128, |acc, k| acc.saturating_add(n.saturating_pow(k)));
        if candidates > cap {
            return Err(PcpError::CapExceeded { candidates, cap });
        }
        let mut found = Vec::new();
        for len in 1..=max_len {
            for w in words_of_length(self.domain.len(), len) {
                if self.h_image(&w) == self.g_image(&w) {
                    found.push(w);
                }
            }
        }
        Ok(found)
    }

    /// Serializes back into the instance file format.
    pub fn to_text(&self) -> String {
        let sep = if self.image.iter().all(|l| l.chars().count() == 1) { "" } else { "." };
        let img = |w: &[usize]| if w.is_empty() { "_".to_string() } else { render_word(w, &self.image, sep) };
        let mut out = format!("alphabet: {}\nimages: {}\n", self.domain.join(" "), self.image.join(" "));
        for (i, a) in self.domain.iter().enumerate() {
            out.push_str(&format!("map {a} {} {}\n", img(&self.h[i]), img(&self.g[i])));
        }
        out
    }
}

/// All words of length `len` over `0..alphabet`, lexicographically.
pub fn words_of_length(alphabet: usize, len: usize) -> impl Iterator<Item = DomainWord> {
    let total = (alphabet as u128).pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = (idx % alphabet as u128) as usize;
            idx /= alphabet as u128;
        }
        w
    })
}

fn check_alphabet(letters: &[String], line: usize) -> Result<(), PcpError> {
    for (i, l) in letters.iter().enumerate() {
        if !valid_letter_name(l) {
            return Err(PcpError::InvalidLetterName { line, letter: l.clone() });
        }
        if letters[..i].contains(l) {
            return Err(PcpError::DuplicateLetter { line, letter: l.clone() });
        }
    }
    Ok(())
}

fn header<'a>(line: &'a str, name: &str) -> Option<&'a str> {
    line.strip_prefix(name)?.strip_prefix(':').map(str::trim)
}

pub fn parse_instance(text: &str) -> Result<PcpInstance, PcpError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, line) = lines.next().ok_or(PcpError::MissingHeader { line: 1, header: "alphabet" })?;
    let domain: Vec<String> = header(line, "alphabet")
        .ok_or(PcpError::MissingHeader { line: line_no, header: "alphabet" })?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    check_alphabet(&domain, line_no)?;
    if domain.is_empty() {
        return Err(PcpError::MalformedLine { line: line_no, text: line.to_string() });
    }

    let (line_no, line) = lines.next().ok_or(PcpError::MissingHeader { line: line_no + 1, header: "images" })?;
    let image: Vec<String> = header(line, "images")
        .ok_or(PcpError::MissingHeader { line: line_no, header: "images" })?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    check_alphabet(&image, line_no)?;

    let mut maps: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [kw, letter, h, g] = fields[..] else {
            return Err(PcpError::MalformedLine { line: line_no, text: line.to_string() });
        };
        if kw != "map" {
            return Err(PcpError::MalformedLine { line: line_no, text: line.to_string() });
        }
        let a = domain
            .iter()
            .position(|l| l == letter)
            .ok_or_else(|| PcpError::UnknownMapLetter { line: line_no, letter: letter.to_string() })?;
        let read = |w: &str| -> Result<Vec<usize>, PcpError> {
            if w == "_" {
                return Ok(Vec::new());
            }
            tokenize(w, &image).map_err(|letter| PcpError::UnknownImageLetter { line: line_no, letter })
        };
        let pair = (read(h)?, read(g)?);
        if maps.insert(a, pair).is_some() {
            return Err(PcpError::DuplicateLetter { line: line_no, letter: letter.to_string() });
        }
    }

    let mut h = Vec::with_capacity(domain.len());
    let mut g = Vec::with_capacity(domain.len());
    for (i, a) in domain.iter().enumerate() {
        let (hi, gi) = maps.remove(&i).ok_or_else(|| PcpError::MissingMap(a.clone()))?;
        h.push(hi);
        g.push(gi);
    }
    Ok(PcpInstance { domain, image, h, g })
}

impl std::str::FromStr for PcpInstance {
    type Err = PcpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_instance(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i1() -> PcpInstance {
        parse_instance("alphabet: a\nimages: a b\nmap a a aa").unwrap()
    }

    fn inst(h: &str, g: &str) -> PcpInstance {
        PcpInstance::from_maps(&["a"], &["a", "b"], &[("a", h, g)]).unwrap()
    }

    #[test]
    fn parses_i1() {
        let p = i1();
        assert_eq!(p.domain(), ["a"]);
        assert_eq!(p.h_codes(0), vec![1]);
        assert_eq!(p.g_codes(0), vec![1, 1]);
        assert_eq!(p.code_base(), 3);
    }

    #[test]
    fn empty_image_sentinel() {
        let p = parse_instance("alphabet: a\nimages: a\nmap a _ a").unwrap();
        assert!(p.h_codes(0).is_empty());
        assert_eq!(p.g_codes(0), vec![1]);
    }

    #[test]
    fn missing_header_is_reported() {
        let err = parse_instance("map a a").unwrap_err();
        assert_eq!(err.to_string(), "line 1: missing alphabet header");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_instance("alphabet: a\nimages: a\nmap a a z").unwrap_err();
        assert_eq!(err, PcpError::UnknownImageLetter { line: 3, letter: "z".into() });
        let err = parse_instance("# c\nalphabet: a\nimages: a\nmap a a a\nmap a a a").unwrap_err();
        assert_eq!(err, PcpError::DuplicateLetter { line: 5, letter: "a".into() });
        let err = parse_instance("alphabet: a\nimages: a\nmop a a a").unwrap_err();
        assert!(matches!(err, PcpError::MalformedLine { line: 3, .. }));
        let err = parse_instance("alphabet: a b\nimages: a\nmap a a a").unwrap_err();
        assert_eq!(err, PcpError::MissingMap("b".into()));
        let err = parse_instance("alphabet: a a\nimages: a\n").unwrap_err();
        assert!(matches!(err, PcpError::DuplicateLetter { line: 1, .. }));
    }

    #[test]
    fn multi_character_image_letters() {
        let p = parse_instance("alphabet: a\nimages: x xy\nmap a x.xy xyx").unwrap();
        assert_eq!(p.h_codes(0), vec![1, 2]);
        assert_eq!(p.g_codes(0), vec![2, 1]);
        assert_eq!(parse_instance(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn prefix_status_examples() {
        assert_eq!(i1().prefix_status(&[0]).unwrap(), PrefixStatus::HProperPrefixOfG);
        assert_eq!(inst("a", "a").prefix_status(&[0]).unwrap(), PrefixStatus::EqualImages);
        assert_eq!(inst("ab", "ba").prefix_status(&[0]).unwrap(), PrefixStatus::MismatchAt(1));
        assert_eq!(inst("a", "ab").prefix_status(&[0, 0]).unwrap(), PrefixStatus::MismatchAt(2));
        assert_eq!(i1().prefix_status(&[]), Err(PcpError::EmptyWord));
        assert_eq!(i1().prefix_status(&[3]), Err(PcpError::LetterOutOfRange(3)));
    }

    #[test]
    fn omega_solution_prefixes() {
        assert!(i1().is_omega_solution_up_to(&[0; 8], 8).unwrap());
        assert!(!inst("a", "a").is_omega_solution_up_to(&[0; 4], 1).unwrap());
        assert!(!inst("ab", "ba").is_omega_solution_up_to(&[0; 2], 1).unwrap());
        assert!(matches!(i1().is_omega_solution_up_to(&[0], 2), Err(PcpError::WordTooShort { .. })));
    }

    #[test]
    fn bad_prefix_cases() {
        assert_eq!(inst("a", "a").bad_prefix_case(&[0]).unwrap(), Some(BadPrefixCase::EqualLengthSingleLetter));
        // equal lengths and a first-letter mismatch both apply; the earlier case wins
        assert_eq!(inst("ab", "ba").bad_prefix_case(&[0]).unwrap(), Some(BadPrefixCase::EqualLengthSingleLetter));
        assert_eq!(inst("a", "bb").bad_prefix_case(&[0]).unwrap(), Some(BadPrefixCase::MismatchInFirstLetter));
        assert_eq!(i1().bad_prefix_case(&[0, 0, 0]).unwrap(), None);
        // h(ab) = ab.a, g(ab) = a.ba: equal lengths after two letters
        let p = PcpInstance::from_maps(&["a", "b"], &["a", "b"], &[("a", "ab", "a"), ("b", "a", "ba")]).unwrap();
        assert_eq!(p.bad_prefix_case(&[0, 1]).unwrap(), Some(BadPrefixCase::EqualLength));
        // h = a.ab, g = aa.aa: mismatch at position 3, inside the second letter on both sides
        let p = PcpInstance::from_maps(&["a", "b"], &["a", "b"], &[("a", "a", "aa"), ("b", "ab", "aa")]).unwrap();
        assert_eq!(p.bad_prefix_case(&[0, 1]).unwrap(), Some(BadPrefixCase::MismatchInSameLetter));
        // h = a.b, g = aa.a: mismatch at position 2, h side in b, g side in a; |g| > |h|
        let p = PcpInstance::from_maps(&["a", "b"], &["a", "b"], &[("a", "a", "aa"), ("b", "b", "a")]).unwrap();
        assert_eq!(p.bad_prefix_case(&[0, 1]).unwrap(), Some(BadPrefixCase::GLongerMismatch));
        let p = PcpInstance::from_maps(&["a", "b"], &["a", "b"], &[("a", "a", "a"), ("b", "ab", "bb")]).unwrap();
        // equal lengths after "a" already; "ab" is judged on its own
        assert_eq!(p.bad_prefix_case(&[0, 1]).unwrap(), Some(BadPrefixCase::EqualLength));
        let p = PcpInstance::from_maps(&["a", "b"], &["a", "b"], &[("a", "a", "aa"), ("b", "aab", "b")]).unwrap();
        // h = a.aab, g = aa.b: mismatch at 3, h side in b, g side in b
        assert_eq!(p.bad_prefix_case(&[0, 1]).unwrap(), Some(BadPrefixCase::MismatchInSameLetter));
        let p = PcpInstance::from_maps(&["a", "b"], &["a", "b"], &[("a", "aa", "a"), ("b", "a", "ab")]).unwrap();
        // h = aa.a, g = a.ab: the mismatch is in b on both sides, but equal lengths come first
        assert_eq!(p.bad_prefix_case(&[0, 1]).unwrap(), Some(BadPrefixCase::EqualLength));
        let p = PcpInstance::from_maps(&["a", "b"], &["a", "b"], &[("a", "aab", "a"), ("b", "a", "aa")]).unwrap();
        // h = aab.a, g = a.aa: mismatch at 3 (b vs a), h side in a, g side in b; |h| > |g|
        assert_eq!(p.bad_prefix_case(&[0, 1]).unwrap(), Some(BadPrefixCase::HLongerMismatch));
    }

    #[test]
    fn desynchronize_inserts_marker() {
        let p = PcpInstance::from_maps(&["a"], &["b"], &[("a", "b", "b")]).unwrap();
        let d = p.desynchronize("α").unwrap();
        assert_eq!(d.domain(), ["a", "α"]);
        assert_eq!(d.image_alphabet(), ["b", "α"]);
        assert_eq!(d.h_codes(0), vec![2, 1]);
        assert_eq!(d.g_codes(0), vec![1, 2]);
        assert!(d.h_codes(1).is_empty());
        assert_eq!(d.g_codes(1), vec![2]);
        assert_eq!(p.desynchronize("a"), Err(PcpError::NameCollision("a".into())));
    }

    #[test]
    fn desynchronize_keeps_empty_images_and_nests() {
        let p = parse_instance("alphabet: a\nimages: a\nmap a _ a").unwrap();
        let d = p.desynchronize("x").unwrap();
        assert!(d.h_codes(0).is_empty());
        let dd = d.desynchronize("y").unwrap();
        assert_eq!(dd.domain().len(), 3);
        assert_eq!(parse_instance(&dd.to_text()).unwrap(), dd);
    }

    #[test]
    fn finite_solutions() {
        let p = PcpInstance::from_maps(&["a", "b"], &["a", "b"], &[("a", "ab", "a"), ("b", "b", "bb")]).unwrap();
        assert_eq!(p.find_finite_solutions(2, None).unwrap(), vec![vec![0, 1]]);
        assert!(i1().find_finite_solutions(5, None).unwrap().is_empty());
        assert_eq!(i1().find_finite_solutions(0, None), Err(PcpError::ZeroBound));
        assert!(matches!(p.find_finite_solutions(12, None), Err(PcpError::CapExceeded { .. })));
    }

    #[test]
    fn words_parse_both_ways() {
        let p = PcpInstance::from_maps(&["a", "b"], &["a"], &[("a", "a", "a"), ("b", "a", "a")]).unwrap();
        assert_eq!(p.parse_word("abba").unwrap(), vec![0, 1, 1, 0]);
        assert_eq!(p.parse_word("a b").unwrap(), vec![0, 1]);
        assert_eq!(p.parse_word("ac"), Err(PcpError::UnknownLetter("c".into())));
        assert_eq!(p.render_word(&[1, 0]), "ba");
    }
}
