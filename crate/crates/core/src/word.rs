//! Freely reduced words and partial rewriting tables on generators.
//!
//! Words are written as whitespace-separated letters, each a generator name
//! optionally followed by `^-1` (or `^1`): `"e2 e1^-1"`. The identity is
//! written `1` (an empty string also parses to it).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("no rule for {symbol} in {endomorphism}")]
    MissingRule { symbol: Generator, endomorphism: String },
    #[error("no rule for {symbol} in {endomorphism} (factor {position} of the product)")]
    MissingRuleInSequence { symbol: Generator, endomorphism: String, position: usize },
    #[error("bad letter {0:?}")]
    BadLetter(String),
    #[error("unknown endomorphism {0}")]
    UnknownEndomorphism(String),
    #[error("malformed rule table: {0}")]
    Table(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator(String);

impl Generator {
    pub fn new(name: impl Into<String>) -> Self {
        Generator(name.into())
    }

    /// `prefix` followed by `index`, e.g. `b3`.
    pub fn indexed(prefix: &str, index: usize) -> Self {
        Generator(format!("{prefix}{index}"))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    fn inverted(&self) -> Letter {
        Letter { generator: self.generator.clone(), inverse: !self.inverse }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: &Generator) -> Self {
        Word(vec![Letter { generator: g.clone(), inverse: false }])
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: Letter) {
        if self.0.last().is_some_and(|last| last.cancels(&l)) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverted).collect())
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.0 {
            w.push(l.clone());
        }
        w
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.0.iter().any(|l| &l.generator == g)
    }
}

/// Free reduction of a letter sequence. Words are kept reduced, so this
/// only matters for sequences built by hand.
pub fn reduce(letters: &[Letter]) -> Word {
    Word::from_letters(letters.iter().cloned())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, inverse) = match tok.split_once('^') {
                Some((name, "-1")) => (name, true),
                Some((name, "1")) => (name, false),
                Some(_) => return Err(WordError::BadLetter(tok.to_string())),
                None => (tok, false),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(WordError::BadLetter(tok.to_string()));
            }
            letters.push(Letter { generator: Generator::new(name), inverse });
        }
        Ok(Word::from_letters(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A generator-rewriting table, extended to words as a homomorphism.
/// Generators outside the table have no image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialEndomorphism {
    name: String,
    table: BTreeMap<Generator, Word>,
}

impl PartialEndomorphism {
    pub fn new(name: impl Into<String>) -> Self {
        PartialEndomorphism { name: name.into(), table: BTreeMap::new() }
    }

    pub fn with_rules(name: impl Into<String>, rules: impl IntoIterator<Item = (Generator, Word)>) -> Self {
        PartialEndomorphism { name: name.into(), table: rules.into_iter().collect() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn insert(&mut self, g: Generator, image: Word) -> Option<Word> {
        self.table.insert(g, image)
    }

    pub fn rule(&self, g: &Generator) -> Option<&Word> {
        self.table.get(g)
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Generator, &Word)> {
        self.table.iter()
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        let mut out = Word::identity();
        for l in w.letters() {
            let image = self.table.get(&l.generator).ok_or_else(|| WordError::MissingRule {
                symbol: l.generator.clone(),
                endomorphism: self.name.clone(),
            })?;
            out = if l.inverse { out.concat(&image.inverse()) } else { out.concat(image) };
        }
        Ok(out)
    }
}

/// Applies a product of endomorphisms, rightmost factor first.
pub fn apply_sequence(seq: &[&PartialEndomorphism], w: &Word) -> Result<Word, WordError> {
    seq.iter().enumerate().rev().try_fold(w.clone(), |acc, (position, e)| {
        e.apply(&acc).map_err(|err| match err {
            WordError::MissingRule { symbol, endomorphism } => {
                WordError::MissingRuleInSequence { symbol, endomorphism, position }
            }
            other => other,
        })
    })
}

/// Replaces every occurrence of `symbol` (and its inverse) by `replacement`.
pub fn substitute(w: &Word, symbol: &Generator, replacement: &Word) -> Word {
    let inv = replacement.inverse();
    let mut out = Word::identity();
    for l in w.letters() {
        if &l.generator == symbol {
            out = out.concat(if l.inverse { &inv } else { replacement });
        } else {
            out.push(l.clone());
        }
    }
    out
}

/// Rule tables as stored on disk: name → {generator → word}.
pub type RuleTableFile = BTreeMap<String, BTreeMap<String, Word>>;

pub fn parse_rule_tables(json: &str) -> Result<Vec<PartialEndomorphism>, WordError> {
    let file: RuleTableFile = serde_json::from_str(json).map_err(|e| WordError::Table(e.to_string()))?;
    Ok(file
        .into_iter()
        .map(|(name, rules)| {
            PartialEndomorphism::with_rules(name, rules.into_iter().map(|(g, w)| (Generator::new(g), w)))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn gen(s: &str) -> Generator {
        Generator::new(s)
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(w("a a^-1 b"), w("b"));
        assert_eq!(w("e2 e1^-1 e1"), w("e2"));
        assert_eq!(w(""), Word::identity());
        assert_eq!(w("1"), Word::identity());
        assert_eq!(w("a b b^-1 a^-1").to_string(), "1");
        assert_eq!(w("x^-1 y^1").to_string(), "x^-1 y");
        assert!(matches!("a^2".parse::<Word>(), Err(WordError::BadLetter(_))));
        assert!(matches!("^-1".parse::<Word>(), Err(WordError::BadLetter(_))));
    }

    #[test]
    fn apply_and_missing_rule() {
        let a = PartialEndomorphism::with_rules("A2", [(gen("b1"), w("b2")), (gen("b3"), w("b3"))]);
        assert_eq!(a.apply(&w("b1")).unwrap(), w("b2"));
        assert_eq!(a.apply(&w("b3^-1 b1^-1")).unwrap(), w("b3^-1 b2^-1"));
        assert_eq!(
            a.apply(&w("b2")),
            Err(WordError::MissingRule { symbol: gen("b2"), endomorphism: "A2".into() })
        );
    }

    #[test]
    fn sequence_order_and_position() {
        let x = PartialEndomorphism::with_rules("X", [(gen("a"), w("b"))]);
        let y = PartialEndomorphism::with_rules("Y", [(gen("b"), w("c"))]);
        // rightmost first: Y X (a) = Y(b) = c
        assert_eq!(apply_sequence(&[&y, &x], &w("a")).unwrap(), w("c"));
        assert_eq!(
            apply_sequence(&[&x, &y], &w("a")),
            Err(WordError::MissingRuleInSequence { symbol: gen("a"), endomorphism: "Y".into(), position: 1 })
        );
        assert_eq!(apply_sequence(&[], &w("a b")).unwrap(), w("a b"));
    }

    #[test]
    fn substitution() {
        let rel = w("b1^-1 b2 b3^-1 b4");
        let out = substitute(&w("b5 b4^-1"), &gen("b5"), &rel);
        assert_eq!(out, w("b1^-1 b2 b3^-1"));
        assert!(!out.contains(&gen("b5")));
        assert_eq!(substitute(&w("a b"), &gen("z"), &w("c")), w("a b"));
        assert_eq!(substitute(&w("b5^-1"), &gen("b5"), &rel), rel.inverse());
    }

    #[test]
    fn rule_table_file() {
        let tables = parse_rule_tables(r#"{"A4": {"b4": "b5", "b1": "b1"}, "X": {"e1": "e2 e1^-1"}}"#).unwrap();
        assert_eq!(tables.len(), 2);
        assert_eq!(tables[0].name(), "A4");
        assert_eq!(tables[0].rule(&gen("b4")), Some(&w("b5")));
        assert_eq!(tables[1].rule(&gen("e1")), Some(&w("e2 e1^-1")));
        assert!(matches!(parse_rule_tables(r#"{"A": {"b": "b^3"}}"#), Err(WordError::Table(_))));
    }

    fn letters() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0..3usize, any::<bool>()), 0..24).prop_map(|v| {
            v.into_iter()
                .map(|(i, inverse)| Letter { generator: Generator::indexed("x", i), inverse })
                .collect()
        })
    }

    fn is_reduced(w: &Word) -> bool {
        w.letters().windows(2).all(|p| !p[0].cancels(&p[1]))
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_shrinks(ls in letters()) {
            let r = reduce(&ls);
            prop_assert!(r.len() <= ls.len());
            prop_assert!(is_reduced(&r));
            prop_assert_eq!(reduce(r.letters()), r.clone());
            prop_assert_eq!(r.to_string().parse::<Word>().unwrap(), r);
        }

        #[test]
        fn reduction_is_confluent(ls in letters(), cut in 0usize..24) {
            // cancelling the two halves first gives the same normal form
            let cut = cut.min(ls.len());
            let left = reduce(&ls[..cut]);
            let right = reduce(&ls[cut..]);
            prop_assert_eq!(left.concat(&right), reduce(&ls));
        }

        #[test]
        fn apply_is_a_homomorphism(u in letters(), v in letters(), images in prop::collection::vec(letters(), 3)) {
            let e = PartialEndomorphism::with_rules(
                "E",
                images.into_iter().enumerate().map(|(i, ls)| (Generator::indexed("x", i), reduce(&ls))),
            );
            let (u, v) = (reduce(&u), reduce(&v));
            let whole = e.apply(&u.concat(&v)).unwrap();
            prop_assert_eq!(whole, e.apply(&u).unwrap().concat(&e.apply(&v).unwrap()));
            prop_assert_eq!(e.apply(&u.inverse()).unwrap(), e.apply(&u).unwrap().inverse());
        }
    }
}
