use std::fmt;
use std::sync::Arc;

use super::Notation;

/// A propositional letter. Letters compare by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(name: &str) -> Self {
        Letter(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The two units: bottom for disjunction, top for conjunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    Bot,
    Top,
}

impl Unit {
    pub fn join(self, other: Unit) -> Unit {
        if self == Unit::Top || other == Unit::Top {
            Unit::Top
        } else {
            Unit::Bot
        }
    }

    pub fn meet(self, other: Unit) -> Unit {
        if self == Unit::Bot || other == Unit::Bot {
            Unit::Bot
        } else {
            Unit::Top
        }
    }

    pub(crate) fn symbol(self, notation: Notation) -> &'static str {
        match (self, notation) {
            (Unit::Bot, Notation::Ascii) => "bot",
            (Unit::Top, Notation::Ascii) => "top",
            (Unit::Bot, Notation::Unicode) => "⊥",
            (Unit::Top, Notation::Unicode) => "⊤",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Purity {
    pub bot_pure: bool,
    pub top_pure: bool,
}

impl Purity {
    pub fn pure(self) -> bool {
        self.bot_pure && self.top_pure
    }
}

/// A formula tree over letters, the two units and the two binary connectives.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Letter(Letter),
    Bot,
    Top,
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn letter(name: &str) -> Self {
        Formula::Letter(Letter::new(name))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn unit(u: Unit) -> Self {
        match u {
            Unit::Bot => Formula::Bot,
            Unit::Top => Formula::Top,
        }
    }

    pub fn as_unit(&self) -> Option<Unit> {
        match self {
            Formula::Bot => Some(Unit::Bot),
            Formula::Top => Some(Unit::Top),
            _ => None,
        }
    }

    /// Letter occurrences from left to right.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<Letter>) {
        match self {
            Formula::Letter(l) => out.push(l.clone()),
            Formula::Bot | Formula::Top => {}
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
        }
    }

    pub fn is_letterless(&self) -> bool {
        match self {
            Formula::Letter(_) => false,
            Formula::Bot | Formula::Top => true,
            Formula::Or(a, b) | Formula::And(a, b) => a.is_letterless() && b.is_letterless(),
        }
    }

    pub fn is_diversified(&self) -> bool {
        let mut ls = self.letters();
        let n = ls.len();
        ls.sort();
        ls.dedup();
        ls.len() == n
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        match self {
            Formula::Letter(_) | Formula::Bot | Formula::Top => 1,
            Formula::Or(a, b) | Formula::And(a, b) => a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Letter(_) | Formula::Bot | Formula::Top => 0,
            Formula::Or(a, b) | Formula::And(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Unit reduction, computed innermost first.
    pub fn nu(&self) -> Formula {
        match self {
            Formula::Letter(_) | Formula::Bot | Formula::Top => self.clone(),
            Formula::Or(a, b) => match (a.nu(), b.nu()) {
                (x, Formula::Bot) => x,
                (Formula::Bot, y) => y,
                (Formula::Top, Formula::Top) => Formula::Top,
                (x, y) => Formula::or(x, y),
            },
            Formula::And(a, b) => match (a.nu(), b.nu()) {
                (x, Formula::Top) => x,
                (Formula::Top, y) => y,
                (Formula::Bot, Formula::Bot) => Formula::Bot,
                (x, y) => Formula::and(x, y),
            },
        }
    }

    /// Bottom-pure when no bottom survives unit reduction, dually for top.
    pub fn purity(&self) -> Purity {
        let mut bot = false;
        let mut top = false;
        self.nu().visit(&mut |f| match f {
            Formula::Bot => bot = true,
            Formula::Top => top = true,
            _ => {}
        });
        Purity {
            bot_pure: !bot,
            top_pure: !top,
        }
    }

    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    pub fn render(&self, notation: Notation) -> String {
        let mut s = String::new();
        self.write(&mut s, notation);
        s
    }

    fn write(&self, s: &mut String, notation: Notation) {
        match self {
            Formula::Letter(l) => s.push_str(l.name()),
            Formula::Bot => s.push_str(Unit::Bot.symbol(notation)),
            Formula::Top => s.push_str(Unit::Top.symbol(notation)),
            Formula::Or(a, b) => {
                a.write_child(s, notation, false, false);
                s.push_str(notation.or());
                b.write_child(s, notation, false, true);
            }
            Formula::And(a, b) => {
                a.write_child(s, notation, true, false);
                s.push_str(notation.and());
                b.write_child(s, notation, true, true);
            }
        }
    }

    fn write_child(&self, s: &mut String, notation: Notation, in_and: bool, right: bool) {
        let paren = match self {
            Formula::Or(..) => in_and || right,
            Formula::And(..) => !in_and || right,
            _ => false,
        };
        if paren {
            s.push('(');
            self.write(s, notation);
            s.push(')');
        } else {
            self.write(s, notation);
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::letter("p")
    }

    #[test]
    fn nu_removes_units() {
        let f = Formula::or(Formula::and(p(), Formula::Top), Formula::Bot);
        assert_eq!(f.nu(), p());
        let g = Formula::or(Formula::Top, Formula::Top);
        assert_eq!(g.nu(), Formula::Top);
        let h = Formula::and(Formula::Bot, Formula::Bot);
        assert_eq!(h.nu(), Formula::Bot);
        let k = Formula::or(Formula::Top, p());
        assert_eq!(k.nu(), k);
    }

    #[test]
    fn purity_examples() {
        let f = Formula::or(Formula::Top, p());
        assert_eq!(
            f.purity(),
            Purity {
                bot_pure: true,
                top_pure: false
            }
        );
        assert!(!Formula::Bot.purity().bot_pure);
        assert!(Formula::Bot.purity().top_pure);
        let g = Formula::and(p(), Formula::and(Formula::Bot, Formula::Bot));
        assert!(!g.purity().bot_pure);
    }

    #[test]
    fn render_parenthesizes_mixed_nesting() {
        let f = Formula::or(
            Formula::and(p(), Formula::letter("q")),
            Formula::and(Formula::letter("s"), Formula::letter("t")),
        );
        assert_eq!(f.to_string(), "(p/\\q)\\/(s/\\t)");
        let g = Formula::or(p(), Formula::or(Formula::letter("q"), Formula::Bot));
        assert_eq!(g.to_string(), "p\\/(q\\/bot)");
        assert_eq!(g.render(Notation::Unicode), "p∨(q∨⊥)");
    }
}
