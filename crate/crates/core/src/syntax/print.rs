//! Canonical printing. `parse(print(v)) == v` for every syntax value.

use std::fmt;

use super::{ContextItem, ExtendedSequent, Formula, LabelledFormula, RelAssumption, Sequent};

// Binding strengths: prefix modalities bind tightest, then `&`, `|`, `->`.
const PREC_IMP: u8 = 0;
const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_PREFIX: u8 = 3;

fn write_formula(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let prec = match f {
        Formula::Atom(_) | Formula::Top | Formula::Bot => PREC_PREFIX,
        Formula::Box(_) | Formula::Dia(_) => PREC_PREFIX,
        Formula::And(_, _) => PREC_AND,
        Formula::Or(_, _) => PREC_OR,
        Formula::Imp(_, _) => PREC_IMP,
    };
    if prec < min {
        write!(out, "(")?;
        write_formula(f, 0, out)?;
        return write!(out, ")");
    }
    match f {
        Formula::Atom(a) => write!(out, "{}", a.name()),
        Formula::Top => write!(out, "top"),
        Formula::Bot => write!(out, "bot"),
        // Left-associative: the right operand needs strictly higher binding.
        Formula::And(l, r) => {
            write_formula(l, PREC_AND, out)?;
            write!(out, " & ")?;
            write_formula(r, PREC_AND + 1, out)
        }
        Formula::Or(l, r) => {
            write_formula(l, PREC_OR, out)?;
            write!(out, " | ")?;
            write_formula(r, PREC_OR + 1, out)
        }
        // Right-associative.
        Formula::Imp(l, r) => {
            write_formula(l, PREC_IMP + 1, out)?;
            write!(out, " -> ")?;
            write_formula(r, PREC_IMP, out)
        }
        Formula::Box(g) => {
            write!(out, "[]")?;
            write_formula(g, PREC_PREFIX, out)
        }
        Formula::Dia(g) => {
            write!(out, "<>")?;
            write_formula(g, PREC_PREFIX, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, 0, out)
    }
}

impl fmt::Display for LabelledFormula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.formula {
            Formula::Atom(_) | Formula::Top | Formula::Bot => {
                write!(out, "{}@{}", self.formula, self.label.name())
            }
            _ => write!(out, "({})@{}", self.formula, self.label.name()),
        }
    }
}

impl fmt::Display for RelAssumption {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{} R {}", self.from.name(), self.to.name())
    }
}

impl fmt::Display for ContextItem {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextItem::Formula(lf) => lf.fmt(out),
            ContextItem::Rel(r) => r.fmt(out),
        }
    }
}

fn write_turnstile<T: fmt::Display>(
    context: impl Iterator<Item = T>,
    goal: &dyn fmt::Display,
    out: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    let mut first = true;
    for item in context {
        if !first {
            write!(out, ", ")?;
        }
        write!(out, "{item}")?;
        first = false;
    }
    if !first {
        write!(out, " ")?;
    }
    write!(out, "|- {goal}")
}

impl fmt::Display for Sequent {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_turnstile(self.context.iter(), &self.goal, out)
    }
}

impl fmt::Display for ExtendedSequent {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_turnstile(self.context().iter(), self.goal(), out)
    }
}
