//! Text format for bases, one rule per line:
//!
//! ```text
//! (p@x, x R y => q@y, => s@x) => r@x
//! => p@x
//! (r_?z@?y => p@?y) => p@?y where ?y != x
//! # comment
//! ```
//!
//! Metavariables are written `?y`; `r_?z` is the flat-relational atom name
//! computed from the binding of `?z`. A `where` suffix lists disequality
//! constraints. Serialization is canonical: rules print in sorted order, so
//! equal bases print identically.

use std::fmt;

use crate::syntax::parse::ParseError;
use crate::syntax::{Atom, Label};

use super::{
    AtomTerm, Base, BasicRule, BasicSentence, BasicSequent, Disequality, LabelTerm, MetaVar,
    SchematicRule, SentenceTemplate, SequentTemplate,
};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Meta(String),
    Where,
    Fresh,
    NotEq,
    Implies,
    Rel,
    LParen,
    RParen,
    Comma,
    At,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(n) => write!(f, "`{n}`"),
            Tok::Meta(n) => write!(f, "`?{n}`"),
            Tok::Where => write!(f, "`where`"),
            Tok::Fresh => write!(f, "`fresh`"),
            Tok::NotEq => write!(f, "`!=`"),
            Tok::Implies => write!(f, "`=>`"),
            Tok::Rel => write!(f, "`R`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::At => write!(f, "`@`"),
        }
    }
}

fn lex(line: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = line.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '#' => break,
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
            '=' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Implies, i));
                    i += 2;
                } else {
                    return Err(ParseError::new("expected `=>`", i));
                }
            }
            '!' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push((Tok::NotEq, i));
                    i += 2;
                } else {
                    return Err(ParseError::new("expected `!=`", i));
                }
            }
            'R' => {
                toks.push((Tok::Rel, i));
                i += 1;
            }
            '?' => {
                let start = i;
                i += 1;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_lowercase()
                        || (bytes[i] as char).is_ascii_digit())
                {
                    i += 1;
                }
                if i == start + 1 {
                    return Err(ParseError::new("expected metavariable name after `?`", start));
                }
                toks.push((Tok::Meta(line[start + 1..i].to_string()), start));
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_lowercase()
                        || (bytes[i] as char).is_ascii_digit()
                        || bytes[i] == b'_')
                {
                    i += 1;
                }
                let name = &line[start..i];
                let tok = match name {
                    "where" => Tok::Where,
                    "fresh" => Tok::Fresh,
                    _ => Tok::Ident(name.to_string()),
                };
                toks.push((tok, start));
            }
            _ => return Err(ParseError::new(format!("unknown token `{c}`"), i)),
        }
    }
    Ok(toks)
}

struct LineParser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl LineParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
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
        let at = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(ParseError::new(format!("expected {want}, found {t}"), at)),
            None => Err(ParseError::new(format!("expected {want}, found end of line"), at)),
        }
    }

    fn label_term(&mut self) -> Result<LabelTerm, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Ident(n)) => Ok(LabelTerm::Label(Label::new(n))),
            Some(Tok::Meta(n)) => Ok(LabelTerm::Meta(MetaVar::new(n))),
            Some(t) => Err(ParseError::new(format!("expected label, found {t}"), at)),
            None => Err(ParseError::new("expected label, found end of line", at)),
        }
    }

    /// One sentence template: `name@label`, `r_?z@label`, or `l R l`.
    fn sentence(&mut self) -> Result<SentenceTemplate, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Ident(name)) => match self.peek() {
                Some(Tok::At) => {
                    self.bump();
                    let name = if name == "r_" {
                        return Err(ParseError::new("`r_` needs a metavariable or label suffix", at));
                    } else {
                        AtomTerm::Atom(Atom::new(name))
                    };
                    Ok(SentenceTemplate::Atom { name, label: self.label_term()? })
                }
                Some(Tok::Rel) => {
                    self.bump();
                    Ok(SentenceTemplate::Rel {
                        from: LabelTerm::Label(Label::new(name)),
                        to: self.label_term()?,
                    })
                }
                Some(Tok::Meta(m)) if name == "r_" => {
                    let m = m.clone();
                    self.bump();
                    self.expect(Tok::At)?;
                    Ok(SentenceTemplate::Atom {
                        name: AtomTerm::RelName(MetaVar::new(m)),
                        label: self.label_term()?,
                    })
                }
                _ => Err(ParseError::new("expected `@` or `R` after identifier", self.here())),
            },
            Some(Tok::Meta(m)) => {
                self.expect(Tok::Rel)?;
                Ok(SentenceTemplate::Rel {
                    from: LabelTerm::Meta(MetaVar::new(m)),
                    to: self.label_term()?,
                })
            }
            Some(t) => Err(ParseError::new(format!("expected sentence, found {t}"), at)),
            None => Err(ParseError::new("expected sentence, found end of line", at)),
        }
    }

    /// `sentence, ... => sentence` (premises may be empty).
    fn antecedent(&mut self) -> Result<SequentTemplate, ParseError> {
        let mut premises = Vec::new();
        if self.peek() != Some(&Tok::Implies) {
            loop {
                premises.push(self.sentence()?);
                match self.peek() {
                    Some(Tok::Comma) => {
                        self.bump();
                    }
                    _ => break,
                }
            }
        }
        self.expect(Tok::Implies)?;
        let head = self.sentence()?;
        Ok(SequentTemplate { premises: premises.into_iter().collect(), head })
    }

    fn rule(&mut self) -> Result<SchematicRule, ParseError> {
        let mut antecedents = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.bump();
            loop {
                antecedents.push(self.antecedent()?);
                match self.peek() {
                    Some(Tok::Comma) => {
                        self.bump();
                    }
                    _ => break,
                }
            }
            self.expect(Tok::RParen)?;
        }
        self.expect(Tok::Implies)?;
        let conclusion = self.sentence()?;
        let mut constraints = Vec::new();
        let mut fresh_metas = Vec::new();
        if self.peek() == Some(&Tok::Where) {
            self.bump();
            loop {
                let at = self.here();
                match self.bump() {
                    Some(Tok::Fresh) => {
                        let at = self.here();
                        match self.bump() {
                            Some(Tok::Meta(m)) => fresh_metas.push(MetaVar::new(m)),
                            other => {
                                return Err(ParseError::new(
                                    format!(
                                        "expected metavariable after `fresh`, found {}",
                                        other.map_or("end of line".to_string(), |t| t.to_string())
                                    ),
                                    at,
                                ))
                            }
                        }
                    }
                    Some(Tok::Meta(m)) => {
                        let meta = MetaVar::new(m);
                        self.expect(Tok::NotEq)?;
                        let other = self.label_term()?;
                        constraints.push(Disequality { meta, other });
                    }
                    other => {
                        return Err(ParseError::new(
                            format!(
                                "expected metavariable or `fresh`, found {}",
                                other.map_or("end of line".to_string(), |t| t.to_string())
                            ),
                            at,
                        ))
                    }
                }
                match self.peek() {
                    Some(Tok::Comma) => {
                        self.bump();
                    }
                    _ => break,
                }
            }
        }
        if let Some(t) = self.peek() {
            return Err(ParseError::new(format!("unexpected {t}"), self.here()));
        }
        Ok(SchematicRule {
            antecedents: antecedents.into_iter().collect(),
            conclusion,
            constraints,
            fresh_metas,
        })
    }
}

fn template_is_ground(rule: &SchematicRule) -> bool {
    rule.metavars().is_empty() && rule.constraints.is_empty() && rule.fresh_metas.is_empty()
}

fn template_to_ground(rule: &SchematicRule) -> Result<BasicRule, ParseError> {
    rule.build(&[])
        .ok_or_else(|| ParseError::new("rule violates the basic-rule shape invariants", 0))
}

/// Parses one rule line; ground lines yield `Ok(Err(..))`-free basic rules.
pub fn parse_rule_line(line: &str) -> Result<Result<BasicRule, SchematicRule>, ParseError> {
    let toks = lex(line)?;
    let mut p = LineParser { toks, pos: 0, end: line.len() };
    let rule = p.rule()?;
    if template_is_ground(&rule) {
        Ok(Ok(template_to_ground(&rule)?))
    } else {
        // Shape invariants must hold for every instance; check the template
        // head shapes directly.
        if !rule.antecedents.is_empty()
            && matches!(rule.conclusion, SentenceTemplate::Rel { .. })
        {
            return Err(ParseError::new("rule violates the basic-rule shape invariants", 0));
        }
        for ant in &rule.antecedents {
            if !ant.premises.is_empty() && matches!(ant.head, SentenceTemplate::Rel { .. }) {
                return Err(ParseError::new(
                    "rule violates the basic-sequent shape invariants",
                    0,
                ));
            }
        }
        Ok(Err(rule))
    }
}

/// Parses a whole base, one rule per line; blank lines and `#` comments are
/// skipped.
pub fn parse_base(text: &str) -> Result<Base, ParseError> {
    let mut base = Base::empty();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match parse_rule_line(trimmed)? {
            Ok(ground) => base.insert(ground),
            Err(schematic) => base.insert_schematic(schematic),
        }
    }
    Ok(base)
}

impl fmt::Display for LabelTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelTerm::Label(l) => write!(f, "{}", l.name()),
            LabelTerm::Meta(m) => write!(f, "?{}", m.name()),
        }
    }
}

impl fmt::Display for SentenceTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SentenceTemplate::Atom { name, label } => match name {
                AtomTerm::Atom(a) => write!(f, "{}@{label}", a.name()),
                AtomTerm::RelName(m) => write!(f, "r_?{}@{label}", m.name()),
            },
            SentenceTemplate::Rel { from, to } => write!(f, "{from} R {to}"),
        }
    }
}

impl fmt::Display for SequentTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        if !self.premises.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "=> {}", self.head)
    }
}

impl fmt::Display for SchematicRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.antecedents.is_empty() {
            write!(f, "(")?;
            for (i, ant) in self.antecedents.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{ant}")?;
            }
            write!(f, ") ")?;
        }
        write!(f, "=> {}", self.conclusion)?;
        if !self.constraints.is_empty() || !self.fresh_metas.is_empty() {
            write!(f, " where ")?;
            let mut first = true;
            for d in &self.constraints {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "?{} != {}", d.meta.name(), d.other)?;
                first = false;
            }
            for m in &self.fresh_metas {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "fresh ?{}", m.name())?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Display for BasicSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        if !self.premises().is_empty() {
            write!(f, " ")?;
        }
        write!(f, "=> {}", self.head())
    }
}

impl fmt::Display for BasicRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.antecedents().is_empty() {
            write!(f, "(")?;
            for (i, ant) in self.antecedents().iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{ant}")?;
            }
            write!(f, ") ")?;
        }
        write!(f, "=> {}", self.conclusion())
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.ground() {
            writeln!(f, "{r}")?;
        }
        for s in self.schematic() {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Convenience constructor used throughout the tests: parses a rule line,
/// panicking on errors.
pub fn rule(line: &str) -> BasicRule {
    match parse_rule_line(line).expect("rule parses") {
        Ok(r) => r,
        Err(_) => panic!("rule `{line}` is schematic"),
    }
}

/// Parses a basic sentence such as `p@x` or `x R y`, panicking on errors.
pub fn sentence(text: &str) -> BasicSentence {
    let toks = lex(text).expect("sentence lexes");
    let end = text.len();
    let mut p = LineParser { toks, pos: 0, end };
    let t = p.sentence().expect("sentence parses");
    assert!(p.peek().is_none(), "trailing input after sentence");
    t.subst(&[]).expect("sentence is ground")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_axiom_and_hypothetical_rules() {
        let base = parse_base("=> p@x\n(q@y => p@x, x R y => q@y) => s@x\n# note\n").unwrap();
        assert_eq!(base.ground().len(), 2);
        let r = rule("(q@y => p@x, x R y => q@y) => s@x");
        assert!(base.ground().contains(&r));
        assert_eq!(r.antecedents().len(), 2);
    }

    #[test]
    fn round_trips_canonically() {
        let text = "(p@x => q@x) => s@x\n=> p@x\n(r_?z@?y => p@?y) => p@?y where ?y != x\n";
        let base = parse_base(text).unwrap();
        let printed = base.to_string();
        let reparsed = parse_base(&printed).unwrap();
        assert_eq!(base, reparsed);
        assert_eq!(printed, reparsed.to_string());
    }

    #[test]
    fn rejects_relational_conclusion_with_antecedents() {
        assert!(parse_rule_line("(p@x => q@x) => x R y").is_err());
        assert!(parse_rule_line("=> x R y").unwrap().is_ok());
    }

    #[test]
    fn parses_metavariable_relations() {
        let parsed = parse_rule_line("(?y R x => p@x) => p@x where ?y != x").unwrap();
        let schematic = parsed.unwrap_err();
        assert_eq!(schematic.metavars(), vec![MetaVar::new("y")]);
    }

    #[test]
    fn sentence_helper() {
        assert_eq!(sentence("p@x"), BasicSentence::atom("p", "x"));
        assert_eq!(sentence("x R y"), BasicSentence::rel("x", "y"));
        assert_eq!(
            sentence("top@w0"),
            BasicSentence::Atom(Atom::new("top"), Label::new("w0"))
        );
    }
}
