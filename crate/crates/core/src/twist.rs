//! Dehn twist rule tables for the three standard rotations and the check
//! that each twist product moves the chosen loops exactly like the rotation.
//!
//! Only the table entries needed by the hand computations are present. Any
//! other image is a [`WordError::MissingRule`], which the verifier reports as
//! `needs-extended-rules` rather than guessing.

use serde::Serialize;
use thiserror::Error;

use crate::family::Family;
use crate::word::{apply_sequence, substitute, Generator, PartialEndomorphism, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("genus {0} is out of range (need g >= 2)")]
    GenusOutOfRange(u64),
    #[error("extension table names {0}, which is not a twist of this family")]
    UnknownTwist(String),
    #[error("extension entry {twist}({generator}) = {given} contradicts the built-in {builtin}")]
    ConflictingExtension { twist: String, generator: Generator, given: Word, builtin: Word },
    #[error("extension entry {twist}({generator}) uses a generator outside the alphabet")]
    ForeignGenerator { twist: String, generator: Generator },
}

/// Eliminates `symbol` by rewriting it as `word`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub symbol: Generator,
    pub word: Word,
}

#[derive(Debug, Clone)]
pub struct PresentationFamily {
    pub family: Family,
    pub genus: u64,
    pub alphabet: Vec<Generator>,
    /// Loops the rotation is checked on.
    pub generating_set: Vec<Generator>,
    pub relations: Vec<Relation>,
    pub twists: Vec<PartialEndomorphism>,
    /// Twist names of the product, written left to right.
    pub product: Vec<String>,
    pub rotation: PartialEndomorphism,
}

fn gen(prefix: &str, i: u64) -> Generator {
    Generator::indexed(prefix, i as usize)
}

fn word(letters: impl IntoIterator<Item = (Generator, bool)>) -> Word {
    Word::from_letters(letters.into_iter().map(|(generator, inverse)| crate::word::Letter { generator, inverse }))
}

fn single(g: Generator) -> Word {
    Word::generator(&g)
}

pub fn make_tables(family: Family, g: u64) -> Result<PresentationFamily, TwistError> {
    if g < 2 {
        return Err(TwistError::GenusOutOfRange(g));
    }
    Ok(match family {
        Family::F1 => tables_f1(g),
        Family::F2 => tables_f2(g),
        Family::F3 => tables_f3(g),
    })
}

fn tables_f1(g: u64) -> PresentationFamily {
    let b = |i| gen("b", i);
    let top = 2 * g + 1;
    let alphabet: Vec<_> = (1..=top).map(b).collect();
    // b_{2g+1} = b1^-1 b2 b3^-1 b4 ... b_{2g-1}^-1 b_{2g}
    let relation = Relation { symbol: b(top), word: word((1..=2 * g).map(|i| (b(i), i % 2 == 1))) };
    let twists = (1..=top)
        .map(|j| {
            let mut t = PartialEndomorphism::new(format!("A{j}"));
            for i in 1..=top {
                if j == i + 1 {
                    t.insert(b(i), single(b(i + 1)));
                } else if j < i || j >= i + 2 {
                    t.insert(b(i), single(b(i)));
                }
            }
            t
        })
        .collect();
    let rotation = PartialEndomorphism::with_rules("f1", (1..=2 * g).map(|i| (b(i), single(b(i + 1)))));
    PresentationFamily {
        family: Family::F1,
        genus: g,
        generating_set: (1..=2 * g).map(b).collect(),
        alphabet,
        relations: vec![relation],
        twists,
        product: (1..=2 * g).map(|j| format!("A{j}")).collect(),
        rotation,
    }
}

fn tables_f2(g: u64) -> PresentationFamily {
    let c = |i| gen("g", i);
    let d = |i| gen("d", i);
    let top = 2 * g;
    let alphabet: Vec<_> = (1..=top).map(c).chain((1..=top).map(d)).collect();
    // d1 = g_{2g}^-1 g_{2g-1} g_{2g-2}^-1 ... g2^-1 g1
    let relation = Relation { symbol: d(1), word: word((1..=top).rev().map(|i| (c(i), i % 2 == 0))) };
    let twists = (1..=top)
        .map(|j| {
            let mut t = PartialEndomorphism::new(format!("B{j}"));
            t.insert(d(j), single(c(j)));
            for i in 1..=top {
                if i != j {
                    t.insert(c(i), single(c(i)));
                }
            }
            let image = if j < top { single(d(j + 1)) } else { single(d(1)).inverse() };
            t.insert(c(j), image);
            t
        })
        .collect();
    let rotation = PartialEndomorphism::with_rules(
        "f2",
        (1..top).map(|i| (c(i), single(c(i + 1)))).chain([(c(top), single(c(1)).inverse())]),
    );
    let mut product = vec!["B1".to_string()];
    product.extend((1..=top).rev().map(|j| format!("B{j}")));
    PresentationFamily {
        family: Family::F2,
        genus: g,
        generating_set: (1..=top).map(c).collect(),
        alphabet,
        relations: vec![relation],
        twists,
        product,
        rotation,
    }
}

fn tables_f3(g: u64) -> PresentationFamily {
    let e = |i| gen("e", i);
    let top = 2 * g + 2;
    let alphabet: Vec<_> = (1..=top).map(e).collect();
    // e_{2g+2} = e2^-1 e4^-1 ... e_{2g}^-1, e_{2g+1} = e1^-1 e3^-1 ... e_{2g-1}^-1
    let relations = vec![
        Relation { symbol: e(top), word: word((1..=g).map(|i| (e(2 * i), true))) },
        Relation { symbol: e(top - 1), word: word((1..=g).map(|i| (e(2 * i - 1), true))) },
    ];
    let twists = (1..top)
        .map(|j| {
            let mut t = PartialEndomorphism::new(format!("D{j}"));
            for i in 1..=top {
                if i == j + 1 {
                    t.insert(e(i), word([(e(j + 1), false), (e(j), true)]));
                } else if i + 1 == j {
                    t.insert(e(i), word([(e(j), false), (e(i), false)]));
                } else {
                    t.insert(e(i), single(e(i)));
                }
            }
            t
        })
        .collect();
    let rotation = PartialEndomorphism::with_rules("f3", (1..=2 * g).map(|i| (e(i), single(e(i + 1)))));
    PresentationFamily {
        family: Family::F3,
        genus: g,
        generating_set: (1..=2 * g).map(e).collect(),
        alphabet,
        relations,
        twists,
        product: (1..top).map(|j| format!("D{j}")).collect(),
        rotation,
    }
}

impl PresentationFamily {
    pub fn twist(&self, name: &str) -> Option<&PartialEndomorphism> {
        self.twists.iter().find(|t| t.name() == name)
    }

    fn product_factors(&self) -> Vec<&PartialEndomorphism> {
        self.product.iter().map(|n| self.twist(n).expect("product names a known twist")).collect()
    }

    /// Rewrites every eliminable symbol through the relations.
    pub fn eliminate(&self, w: &Word) -> Word {
        self.relations.iter().fold(w.clone(), |acc, r| substitute(&acc, &r.symbol, &r.word))
    }

    pub fn apply_product(&self, w: &Word) -> Result<Word, WordError> {
        apply_sequence(&self.product_factors(), w).map(|x| self.eliminate(&x))
    }

    /// Rotation image with eliminable symbols rewritten.
    pub fn rotate(&self, w: &Word) -> Result<Word, WordError> {
        self.rotation.apply(w).map(|x| self.eliminate(&x))
    }

    /// Smallest `k <= limit` with `rotation^k(x) = x` literally for every
    /// generator in the generating set.
    pub fn rotation_order(&self, limit: u64) -> Option<u64> {
        let start: Vec<Word> = self.generating_set.iter().map(Word::generator).collect();
        let mut cur = start.clone();
        for k in 1..=limit {
            cur = cur.iter().map(|w| self.rotate(w)).collect::<Result<_, _>>().ok()?;
            if cur == start {
                return Some(k);
            }
        }
        None
    }

    /// Order of the rotation on the abelianized generating set, as an
    /// integer matrix.
    pub fn abelian_rotation_order(&self, limit: u64) -> Option<u64> {
        let basis = &self.generating_set;
        let column = |w: &Word| -> Option<Vec<i64>> {
            let mut v = vec![0i64; basis.len()];
            for l in w.letters() {
                let idx = basis.iter().position(|b| b == &l.generator)?;
                v[idx] += if l.inverse { -1 } else { 1 };
            }
            Some(v)
        };
        let m: Vec<Vec<i64>> =
            basis.iter().map(|b| self.rotate(&Word::generator(b)).ok().and_then(|w| column(&w))).collect::<Option<_>>()?;
        let n = basis.len();
        let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            // columns are images, so (a∘b)[j] = a applied to b[j]
            (0..n).map(|j| (0..n).map(|i| (0..n).map(|k| a[k][i] * b[j][k]).sum()).collect()).collect()
        };
        let id: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| i64::from(i == j)).collect()).collect();
        let mut p = m.clone();
        for k in 1..=limit {
            if p == id {
                return Some(k);
            }
            p = mul(&m, &p);
        }
        None
    }

    /// Adds extension entries. New entries for generators the built-in
    /// table leaves open are accepted; an entry that disagrees with a
    /// built-in one is rejected.
    pub fn extend(&mut self, extensions: &[PartialEndomorphism]) -> Result<(), TwistError> {
        for ext in extensions {
            let alphabet = self.alphabet.clone();
            let t = self
                .twists
                .iter_mut()
                .find(|t| t.name() == ext.name())
                .ok_or_else(|| TwistError::UnknownTwist(ext.name().to_string()))?;
            for (generator, image) in ext.rules() {
                let foreign = std::iter::once(generator)
                    .chain(image.letters().iter().map(|l| &l.generator))
                    .any(|s| !alphabet.contains(s));
                if foreign {
                    return Err(TwistError::ForeignGenerator {
                        twist: ext.name().to_string(),
                        generator: generator.clone(),
                    });
                }
                match t.rule(generator) {
                    Some(builtin) if builtin != image => {
                        return Err(TwistError::ConflictingExtension {
                            twist: ext.name().to_string(),
                            generator: generator.clone(),
                            given: image.clone(),
                            builtin: builtin.clone(),
                        })
                    }
                    Some(_) => {}
                    None => {
                        t.insert(generator.clone(), image.clone());
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NeedsExtendedRules,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NeedsExtendedRules => "needs-extended-rules",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MissingRule {
    pub symbol: Generator,
    pub twist: String,
    /// Position of the twist in the product, counted from the left.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub generator: Generator,
    pub expected: Word,
    pub computed: Option<Word>,
    pub missing_rule: Option<MissingRule>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub family: Family,
    pub genus: u64,
    pub product: Vec<String>,
    pub entries: Vec<ReportEntry>,
    pub needs_extended_rules: bool,
    /// No entry failed.
    pub ok: bool,
}

impl VerificationReport {
    pub fn verdict_of(&self, g: &Generator) -> Option<Verdict> {
        self.entries.iter().find(|e| &e.generator == g).map(|e| e.verdict)
    }
}

pub fn verify_family(
    family: Family,
    g: u64,
    extensions: &[PartialEndomorphism],
) -> Result<VerificationReport, TwistError> {
    let mut tables = make_tables(family, g)?;
    tables.extend(extensions)?;
    Ok(verify_tables(&tables))
}

pub fn verify_tables(tables: &PresentationFamily) -> VerificationReport {
    let entries: Vec<ReportEntry> = tables
        .generating_set
        .iter()
        .map(|x| {
            let w = Word::generator(x);
            let expected = tables.rotate(&w).expect("rotation defined on the generating set");
            match tables.apply_product(&w) {
                Ok(computed) => {
                    let verdict = if computed == expected { Verdict::Pass } else { Verdict::Fail };
                    ReportEntry { generator: x.clone(), expected, computed: Some(computed), missing_rule: None, verdict }
                }
                Err(err) => {
                    let missing = match err {
                        WordError::MissingRuleInSequence { symbol, endomorphism, position } => {
                            MissingRule { symbol, twist: endomorphism, position }
                        }
                        WordError::MissingRule { symbol, endomorphism } => {
                            MissingRule { symbol, twist: endomorphism, position: 0 }
                        }
                        other => unreachable!("product application only fails on missing rules: {other}"),
                    };
                    ReportEntry {
                        generator: x.clone(),
                        expected,
                        computed: None,
                        missing_rule: Some(missing),
                        verdict: Verdict::NeedsExtendedRules,
                    }
                }
            }
        })
        .collect();
    VerificationReport {
        family: tables.family,
        genus: tables.genus,
        product: tables.product.clone(),
        needs_extended_rules: entries.iter().any(|e| e.verdict == Verdict::NeedsExtendedRules),
        ok: entries.iter().all(|e| e.verdict != Verdict::Fail),
        entries,
    }
}
