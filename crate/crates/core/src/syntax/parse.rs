//! Text parsing for formulae, labelled items, and sequents.
//!
//! Grammar (ASCII): atoms and labels are lowercase identifiers; `&`, `|`,
//! `->` (right-associative) are the binary connectives; `[]` and `<>` are
//! prefix modalities binding tightest; `top` and `bot` are constants.
//! A labelled formula is `phi @ x`, a relational assumption is `x R y`,
//! and a sequent is `Gamma |- item` with a comma-separated `Gamma`.

use std::fmt;

use super::{
    Atom, ContextItem, ExtendedSequent, Formula, Label, LabelledFormula, RelAssumption, Sequent,
};

/// A syntax error with the byte offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, position: usize) -> Self {
        ParseError { message: message.into(), position }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.position, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    And,
    Or,
    Arrow,
    BoxOp,
    DiaOp,
    LParen,
    RParen,
    At,
    Rel,
    Comma,
    Turnstile,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "`{name}`"),
            Tok::Top => "`top`",
            Tok::Bot => "`bot`",
            Tok::And => "`&`",
            Tok::Or => "`|`",
            Tok::Arrow => "`->`",
            Tok::BoxOp => "`[]`",
            Tok::DiaOp => "`<>`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::At => "`@`",
            Tok::Rel => "`R`",
            Tok::Comma => "`,`",
            Tok::Turnstile => "`|-`",
        };
        f.write_str(s)
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            '@' => {
                toks.push((Tok::At, i));
                i += 1;
            }
            '&' => {
                toks.push((Tok::And, i));
                i += 1;
            }
            '|' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    toks.push((Tok::Turnstile, i));
                    i += 2;
                } else {
                    toks.push((Tok::Or, i));
                    i += 1;
                }
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return Err(ParseError::new("expected `->`", i));
                }
            }
            '[' => {
                if bytes.get(i + 1) == Some(&b']') {
                    toks.push((Tok::BoxOp, i));
                    i += 2;
                } else {
                    return Err(ParseError::new("expected `[]`", i));
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::DiaOp, i));
                    i += 2;
                } else {
                    return Err(ParseError::new("expected `<>`", i));
                }
            }
            'R' => {
                toks.push((Tok::Rel, i));
                i += 1;
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    // Uppercase inside an identifier would merge with `R`;
                    // identifiers are lowercase alphanumeric only.
                    if (bytes[i] as char).is_ascii_uppercase() {
                        break;
                    }
                    i += 1;
                }
                let name = &text[start..i];
                let tok = match name {
                    "top" => Tok::Top,
                    "bot" => Tok::Bot,
                    _ => Tok::Ident(name.to_string()),
                };
                toks.push((tok, start));
            }
            _ => return Err(ParseError::new(format!("unknown token `{c}`"), i)),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        let toks = lex(text)?;
        Ok(Parser { toks, pos: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(ParseError::new(
                format!("expected {want}, found {t}"),
                self.toks[self.pos - 1].1,
            )),
            None => Err(ParseError::new(format!("expected {want}, found end of input"), self.end)),
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::new(format!("unexpected {t}"), self.here())),
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Ident(name)) => {
                let a = Atom::new(name);
                if a.is_reserved() {
                    Err(ParseError::new(format!("reserved atom name `{}`", a.name()), at))
                } else {
                    Ok(a)
                }
            }
            Some(t) => Err(ParseError::new(format!("expected atom, found {t}"), at)),
            None => Err(ParseError::new("expected atom, found end of input", at)),
        }
    }

    fn label(&mut self) -> Result<Label, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Ident(name)) => {
                let l = Label::new(name);
                if l.is_reserved() {
                    Err(ParseError::new(format!("reserved label name `{}`", l.name()), at))
                } else {
                    Ok(l)
                }
            }
            Some(t) => Err(ParseError::new(format!("expected label, found {t}"), at)),
            None => Err(ParseError::new("expected label, found end of input", at)),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.formula_or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump();
            let rhs = self.formula()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn formula_or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.formula_and()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            let rhs = self.formula_and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn formula_and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.formula_prefix()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            let rhs = self.formula_prefix()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn formula_prefix(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::BoxOp) => {
                self.bump();
                Ok(Formula::boxed(self.formula_prefix()?))
            }
            Some(Tok::DiaOp) => {
                self.bump();
                Ok(Formula::dia(self.formula_prefix()?))
            }
            _ => self.formula_primary(),
        }
    }

    fn formula_primary(&mut self) -> Result<Formula, ParseError> {
        let at = self.here();
        match self.peek() {
            Some(Tok::LParen) => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Top) => {
                self.bump();
                Ok(Formula::Top)
            }
            Some(Tok::Bot) => {
                self.bump();
                Ok(Formula::Bot)
            }
            Some(Tok::Ident(_)) => Ok(Formula::Atom(self.atom()?)),
            Some(t) => Err(ParseError::new(format!("expected formula, found {t}"), at)),
            None => Err(ParseError::new("expected formula, found end of input", at)),
        }
    }

    /// One context/goal item: `phi @ x` or `x R y`.
    fn item(&mut self) -> Result<ContextItem, ParseError> {
        if matches!(self.peek(), Some(Tok::Ident(_))) && self.peek2() == Some(&Tok::Rel) {
            let from = self.label()?;
            self.expect(Tok::Rel)?;
            let to = self.label()?;
            return Ok(ContextItem::Rel(RelAssumption { from, to }));
        }
        let formula = self.formula()?;
        self.expect(Tok::At)?;
        let label = self.label()?;
        Ok(ContextItem::Formula(LabelledFormula { formula, label }))
    }

    fn extended_sequent(&mut self) -> Result<ExtendedSequent, ParseError> {
        let at = self.here();
        let mut context = Vec::new();
        if self.peek() != Some(&Tok::Turnstile) {
            loop {
                context.push(self.item()?);
                match self.peek() {
                    Some(Tok::Comma) => {
                        self.bump();
                    }
                    _ => break,
                }
            }
        }
        self.expect(Tok::Turnstile)?;
        let goal = self.item()?;
        self.expect_eof()?;
        ExtendedSequent::new(context, goal).map_err(|e| ParseError::new(e.to_string(), at))
    }
}

/// Parses a formula; `parse_formula(print(f)) == f` up to whitespace and
/// redundant parentheses.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

/// Parses a labelled formula `phi @ x`.
pub fn parse_labelled_formula(text: &str) -> Result<LabelledFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let at = p.here();
    let item = p.item()?;
    p.expect_eof()?;
    match item {
        ContextItem::Formula(lf) => Ok(lf),
        ContextItem::Rel(_) => Err(ParseError::new("expected labelled formula", at)),
    }
}

/// Parses a context/goal item: a labelled formula or a relational assumption.
pub fn parse_item(text: &str) -> Result<ContextItem, ParseError> {
    let mut p = Parser::new(text)?;
    let item = p.item()?;
    p.expect_eof()?;
    Ok(item)
}

/// Parses an extended sequent `Gamma |- item`. A relational goal is only
/// accepted under an empty context.
pub fn parse_extended_sequent(text: &str) -> Result<ExtendedSequent, ParseError> {
    Parser::new(text)?.extended_sequent()
}

/// Parses a plain sequent: every context item and the goal must be a
/// labelled formula.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let ext = parse_extended_sequent(text)?;
    let goal = match ext.goal() {
        ContextItem::Formula(lf) => lf.clone(),
        ContextItem::Rel(_) => {
            return Err(ParseError::new("relational goal not allowed here", 0))
        }
    };
    let mut context = Vec::new();
    for item in ext.context() {
        match item {
            ContextItem::Formula(lf) => context.push(lf.clone()),
            ContextItem::Rel(_) => {
                return Err(ParseError::new(
                    "relational assumption not allowed in a plain sequent",
                    0,
                ))
            }
        }
    }
    Ok(Sequent::new(context, goal))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dia_top() {
        assert_eq!(parse_formula("<> top").unwrap(), Formula::dia(Formula::Top));
    }

    #[test]
    fn parses_single_atom() {
        assert_eq!(parse_formula("p").unwrap(), Formula::atom("p"));
    }

    #[test]
    fn parses_nested_boxes() {
        let f = parse_formula("[]p -> [][]p").unwrap();
        assert_eq!(
            f,
            Formula::imp(
                Formula::boxed(Formula::atom("p")),
                Formula::boxed(Formula::boxed(Formula::atom("p"))),
            )
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // []/<> bind tighter than &, & tighter than |, | tighter than ->.
        assert_eq!(
            parse_formula("[]p & q | r -> s").unwrap(),
            Formula::imp(
                Formula::or(
                    Formula::and(Formula::boxed(Formula::atom("p")), Formula::atom("q")),
                    Formula::atom("r"),
                ),
                Formula::atom("s"),
            )
        );
        // -> is right-associative.
        assert_eq!(
            parse_formula("p -> q -> r").unwrap(),
            Formula::imp(Formula::atom("p"), Formula::imp(Formula::atom("q"), Formula::atom("r"))),
        );
    }

    #[test]
    fn parses_extended_sequent_with_relation() {
        let seq = parse_extended_sequent("p@x, x R y |- q@y").unwrap();
        assert_eq!(seq.context().len(), 2);
        assert!(seq
            .context()
            .contains(&ContextItem::Rel(RelAssumption::new("x", "y"))));
        assert_eq!(
            seq.goal(),
            &ContextItem::Formula(Formula::atom("q").at("y"))
        );
    }

    #[test]
    fn relational_goal_needs_empty_context() {
        assert!(parse_extended_sequent("|- x R y").is_ok());
        let err = parse_extended_sequent("p@x |- x R y").unwrap_err();
        assert!(err.message.contains("relational goal"));
    }

    #[test]
    fn rejects_reserved_names() {
        assert!(parse_formula("f0").is_err());
        assert!(parse_extended_sequent("|- p@w3").is_err());
        assert!(parse_formula("fog").is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_formula("p -> ???").unwrap_err();
        assert_eq!(err.position, 5);
    }
}
