//! Propositional language: atoms, formulas, worlds and their semantics.
//!
//! Formulas are parsed from a small text syntax:
//!
//! | connective | text          |
//! |------------|---------------|
//! | negation   | `!` or `~`    |
//! | conjunction| `&`           |
//! | disjunction| `\|`          |
//! | material   | `->`          |
//! | Ramsey     | `=>`          |
//! | constants  | `true`/`false`|
//!
//! Negation binds tightest, then `&`, `|` and finally `->`, which associates to
//! the right. `=>` may only appear once, at the top level of an input.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::worlds::{WorldSet, MAX_WORLDS};

/// Index of an atom in its [`Vocabulary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub usize);

/// A propositional variable name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let mut chars = name.chars();
        let valid = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            }
            _ => false,
        };
        if !valid || name == "true" || name == "false" {
            return Err(Error::InvalidAtom(name));
        }
        Ok(Atom(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An ordered, duplicate-free list of atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocabulary {
    atoms: Vec<Atom>,
}

impl Vocabulary {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(Error::Duplicate {
                    kind: "atom",
                    name: a.to_string(),
                });
            }
        }
        Ok(Vocabulary { atoms })
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let atoms = names
            .iter()
            .map(|n| Atom::new(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Vocabulary::new(atoms)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn lookup(&self, name: &str) -> Option<AtomId> {
        self.atoms.iter().position(|a| a.0 == name).map(AtomId)
    }

    pub fn atom(&self, id: AtomId) -> &Atom {
        &self.atoms[id.0]
    }
}

/// Propositional formula over a vocabulary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Atom(AtomId),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    /// Classical truth value under a valuation indexed by [`AtomId`].
    pub fn eval(&self, valuation: &[bool]) -> bool {
        match self {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(a) => valuation[a.0],
            Formula::Not(f) => !f.eval(valuation),
            Formula::And(l, r) => l.eval(valuation) && r.eval(valuation),
            Formula::Or(l, r) => l.eval(valuation) || r.eval(valuation),
            Formula::Implies(l, r) => !l.eval(valuation) || r.eval(valuation),
        }
    }

    /// Largest atom index mentioned, if any.
    pub fn max_atom(&self) -> Option<usize> {
        match self {
            Formula::Top | Formula::Bottom => None,
            Formula::Atom(a) => Some(a.0),
            Formula::Not(f) => f.max_atom(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.max_atom().max(r.max_atom())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(..) => 4,
            _ => 5,
        }
    }

    /// Renders the formula with atom names from `vocab`, using as few
    /// parentheses as the grammar allows.
    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> FormulaDisplay<'a> {
        FormulaDisplay {
            formula: self,
            vocab,
        }
    }

    fn write(&self, vocab: &Vocabulary, ctx: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = self.precedence();
        let paren = prec < ctx;
        if paren {
            out.write_str("(")?;
        }
        match self {
            Formula::Top => out.write_str("true")?,
            Formula::Bottom => out.write_str("false")?,
            Formula::Atom(a) => write!(out, "{}", vocab.atom(*a))?,
            Formula::Not(f) => {
                out.write_str("!")?;
                f.write(vocab, 4, out)?;
            }
            Formula::And(l, r) => {
                l.write(vocab, 3, out)?;
                out.write_str(" & ")?;
                r.write(vocab, 4, out)?;
            }
            Formula::Or(l, r) => {
                l.write(vocab, 2, out)?;
                out.write_str(" | ")?;
                r.write(vocab, 3, out)?;
            }
            Formula::Implies(l, r) => {
                l.write(vocab, 2, out)?;
                out.write_str(" -> ")?;
                r.write(vocab, 1, out)?;
            }
        }
        if paren {
            out.write_str(")")?;
        }
        Ok(())
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    vocab: &'a Vocabulary,
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.formula.write(self.vocab, 0, f)
    }
}

/// Input to a revision: a plain sentence or a Ramsey Test conditional `A => B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionalInput {
    Plain(Formula),
    Ramsey {
        antecedent: Formula,
        consequent: Formula,
    },
}

impl ConditionalInput {
    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> InputDisplay<'a> {
        InputDisplay { input: self, vocab }
    }
}

pub struct InputDisplay<'a> {
    input: &'a ConditionalInput,
    vocab: &'a Vocabulary,
}

impl fmt::Display for InputDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.input {
            ConditionalInput::Plain(p) => write!(f, "{}", p.display(self.vocab)),
            ConditionalInput::Ramsey {
                antecedent,
                consequent,
            } => write!(
                f,
                "{} => {}",
                antecedent.display(self.vocab),
                consequent.display(self.vocab)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Arrow,
    Ramsey,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' | b'~' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Arrow
            }
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Ramsey
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                let word = &text[start..=i];
                match word {
                    "true" => Token::True,
                    "false" => Token::False,
                    w if w.as_bytes()[0].is_ascii_digit() => {
                        return Err(Error::Syntax {
                            position: start,
                            message: format!("identifier `{w}` starts with a digit"),
                        })
                    }
                    w => Token::Ident(w.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        tokens.push((start, tok));
        i += 1;
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    vocab: &'a Vocabulary,
    allow_ramsey: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ramsey_error(&self) -> Error {
        if self.allow_ramsey {
            Error::NestedConditional(self.offset())
        } else {
            Error::RamseyInPlainFormula(self.offset())
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        if self.eat(&Token::Arrow) {
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut left = self.conjunction()?;
        while self.eat(&Token::Or) {
            left = Formula::or(left, self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while self.eat(&Token::And) {
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Token::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        let offset = self.offset();
        let Some((_, tok)) = self.tokens.get(self.pos).cloned() else {
            return Err(Error::Syntax {
                position: offset,
                message: "unexpected end of input".into(),
            });
        };
        self.pos += 1;
        match tok {
            Token::True => Ok(Formula::Top),
            Token::False => Ok(Formula::Bottom),
            Token::Ident(name) => self
                .vocab
                .lookup(&name)
                .map(Formula::Atom)
                .ok_or(Error::UnknownAtom(name)),
            Token::LParen => {
                let inner = self.implication()?;
                if self.peek() == Some(&Token::Ramsey) {
                    return Err(self.ramsey_error());
                }
                if !self.eat(&Token::RParen) {
                    return Err(Error::Syntax {
                        position: self.offset(),
                        message: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            Token::Ramsey => {
                self.pos -= 1;
                Err(self.ramsey_error())
            }
            other => Err(Error::Syntax {
                position: offset,
                message: format!("unexpected {}", describe(&other)),
            }),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(Token::Ramsey) => Err(self.ramsey_error()),
            Some(t) => Err(Error::Syntax {
                position: self.offset(),
                message: format!("unexpected {}", describe(t)),
            }),
        }
    }
}

fn describe(tok: &Token) -> String {
    match tok {
        Token::Ident(n) => format!("identifier `{n}`"),
        Token::True => "`true`".into(),
        Token::False => "`false`".into(),
        Token::Not => "`!`".into(),
        Token::And => "`&`".into(),
        Token::Or => "`|`".into(),
        Token::Arrow => "`->`".into(),
        Token::Ramsey => "`=>`".into(),
        Token::LParen => "`(`".into(),
        Token::RParen => "`)`".into(),
    }
}

/// Parses a plain formula; `=>` is rejected anywhere.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.len(),
        vocab,
        allow_ramsey: false,
    };
    let f = p.implication()?;
    p.finish()?;
    Ok(f)
}

/// Parses a revision input: a plain formula, or `A => B` with plain `A`, `B`.
pub fn parse_input(text: &str, vocab: &Vocabulary) -> Result<ConditionalInput> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.len(),
        vocab,
        allow_ramsey: true,
    };
    let antecedent = p.implication()?;
    if p.eat(&Token::Ramsey) {
        let consequent = p.implication()?;
        p.finish()?;
        return Ok(ConditionalInput::Ramsey {
            antecedent,
            consequent,
        });
    }
    p.finish()?;
    Ok(ConditionalInput::Plain(antecedent))
}

/// A possible world: an opaque label plus a total valuation of the vocabulary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct World {
    pub id: String,
    pub valuation: Vec<bool>,
}

/// A vocabulary together with the scenario's list of worlds. Distinct worlds
/// may share a valuation; all semantic notions are relative to this list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    vocab: Vocabulary,
    worlds: Vec<World>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new(vocab: Vocabulary, worlds: Vec<World>) -> Result<Self> {
        if worlds.len() > MAX_WORLDS {
            return Err(Error::TooManyWorlds(worlds.len()));
        }
        let mut index = HashMap::new();
        for (i, w) in worlds.iter().enumerate() {
            if w.id.is_empty() || w.id.contains([',', '<', '{', '}']) || w.id.trim() != w.id {
                return Err(Error::Scenario(format!("invalid world id `{}`", w.id)));
            }
            if w.valuation.len() != vocab.len() {
                let atom = vocab
                    .atoms()
                    .get(w.valuation.len())
                    .map(|a| a.to_string())
                    .unwrap_or_default();
                return Err(Error::IncompleteValuation {
                    world: w.id.clone(),
                    atom,
                });
            }
            if index.insert(w.id.clone(), i).is_some() {
                return Err(Error::Duplicate {
                    kind: "world",
                    name: w.id.clone(),
                });
            }
        }
        Ok(Universe {
            vocab,
            worlds,
            index,
        })
    }

    /// One world per valuation of `vocab`, labelled by the binary pattern
    /// of its valuation (first atom is the most significant bit).
    pub fn all_valuations(vocab: Vocabulary) -> Result<Self> {
        let n = vocab.len();
        if n >= 7 {
            return Err(Error::TooManyWorlds(1 << n));
        }
        let worlds = (0..1usize << n)
            .map(|bits| {
                let valuation: Vec<bool> = (0..n).map(|a| bits >> (n - 1 - a) & 1 == 1).collect();
                let id = valuation.iter().map(|&b| if b { '1' } else { '0' }).collect();
                World { id, valuation }
            })
            .collect();
        Universe::new(vocab, worlds)
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn all(&self) -> WorldSet {
        WorldSet::full(self.worlds.len())
    }

    pub fn world_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn label(&self, world: usize) -> &str {
        &self.worlds[world].id
    }

    pub fn parse_formula(&self, text: &str) -> Result<Formula> {
        parse_formula(text, &self.vocab)
    }

    pub fn parse_input(&self, text: &str) -> Result<ConditionalInput> {
        parse_input(text, &self.vocab)
    }

    /// ⟦f⟧: worlds whose valuation satisfies `f`.
    pub fn models(&self, f: &Formula) -> WorldSet {
        self.worlds
            .iter()
            .enumerate()
            .filter(|(_, w)| f.eval(&w.valuation))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_consistent(&self, f: &Formula) -> bool {
        !self.models(f).is_empty()
    }

    pub fn are_equivalent(&self, f: &Formula, g: &Formula) -> bool {
        self.models(f) == self.models(g)
    }

    pub fn entails(&self, f: &Formula, g: &Formula) -> bool {
        self.models(f).is_subset(self.models(g))
    }

    /// A plain input is consistent if satisfiable; `A => B` if `A & B` is.
    pub fn conditional_consistent(&self, input: &ConditionalInput) -> bool {
        match input {
            ConditionalInput::Plain(f) => self.is_consistent(f),
            ConditionalInput::Ramsey {
                antecedent,
                consequent,
            } => self.models(antecedent).intersects(self.models(consequent)),
        }
    }

    /// Renders a world set as `{a,b,c}` in world-list order.
    pub fn render_set(&self, set: WorldSet) -> String {
        let labels: Vec<&str> = set.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", labels.join(","))
    }

    /// Parses `a,b,c` (braces optional) into a world set.
    pub fn parse_set(&self, text: &str) -> Result<WorldSet> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut set = WorldSet::EMPTY;
        for label in inner.split(',').map(str::trim).filter(|l| !l.is_empty()) {
            let i = self
                .world_index(label)
                .ok_or_else(|| Error::UnknownWorld(label.to_string()))?;
            set = set.with(i);
        }
        Ok(set)
    }
}
