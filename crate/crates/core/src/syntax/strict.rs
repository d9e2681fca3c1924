use std::fmt;

use super::formula::{Formula, Letter, Unit};
use super::Notation;

/// Which of the two tensors a list node or a fold refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Or,
    And,
}

impl Op {
    /// The unit absorbed by this tensor.
    pub fn unit(self) -> Unit {
        match self {
            Op::Or => Unit::Bot,
            Op::And => Unit::Top,
        }
    }

    pub fn dual(self) -> Op {
        match self {
            Op::Or => Op::And,
            Op::And => Op::Or,
        }
    }
}

/// Objects of the strictified category: lists are flattened, the absorbed
/// unit never appears as a child and singleton lists do not exist.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StrictObject {
    Letter(Letter),
    Bot,
    Top,
    OrList(Vec<StrictObject>),
    AndList(Vec<StrictObject>),
}

impl StrictObject {
    pub fn letter(name: &str) -> Self {
        StrictObject::Letter(Letter::new(name))
    }

    pub fn unit(u: Unit) -> Self {
        match u {
            Unit::Bot => StrictObject::Bot,
            Unit::Top => StrictObject::Top,
        }
    }

    pub fn as_unit(&self) -> Option<Unit> {
        match self {
            StrictObject::Bot => Some(Unit::Bot),
            StrictObject::Top => Some(Unit::Top),
            _ => None,
        }
    }

    pub fn from_formula(f: &Formula) -> Self {
        match f {
            Formula::Letter(l) => StrictObject::Letter(l.clone()),
            Formula::Bot => StrictObject::Bot,
            Formula::Top => StrictObject::Top,
            Formula::Or(a, b) => Self::from_formula(a).or(&Self::from_formula(b)),
            Formula::And(a, b) => Self::from_formula(a).and(&Self::from_formula(b)),
        }
    }

    /// A left-nested formula with this normal form.
    pub fn to_formula(&self) -> Formula {
        match self {
            StrictObject::Letter(l) => Formula::Letter(l.clone()),
            StrictObject::Bot => Formula::Bot,
            StrictObject::Top => Formula::Top,
            StrictObject::OrList(cs) => cs
                .iter()
                .map(|c| c.to_formula())
                .reduce(Formula::or)
                .expect("nonempty list"),
            StrictObject::AndList(cs) => cs
                .iter()
                .map(|c| c.to_formula())
                .reduce(Formula::and)
                .expect("nonempty list"),
        }
    }

    /// The children of this object seen as an `op`-list: the absorbed unit is
    /// the empty list and a non-list object is a singleton.
    pub fn pieces(&self, op: Op) -> Vec<StrictObject> {
        match (self, op) {
            (StrictObject::OrList(cs), Op::Or) | (StrictObject::AndList(cs), Op::And) => cs.clone(),
            (StrictObject::Bot, Op::Or) | (StrictObject::Top, Op::And) => Vec::new(),
            _ => vec![self.clone()],
        }
    }

    /// Normal form of the tensor of a sequence of objects.
    pub fn fold(op: Op, items: impl IntoIterator<Item = StrictObject>) -> StrictObject {
        let mut cs = Vec::new();
        for it in items {
            cs.extend(it.pieces(op));
        }
        match cs.len() {
            0 => StrictObject::unit(op.unit()),
            1 => cs.pop().expect("one child"),
            _ => match op {
                Op::Or => StrictObject::OrList(cs),
                Op::And => StrictObject::AndList(cs),
            },
        }
    }

    pub fn tensor(&self, op: Op, other: &StrictObject) -> StrictObject {
        Self::fold(op, [self.clone(), other.clone()])
    }

    pub fn or(&self, other: &StrictObject) -> StrictObject {
        self.tensor(Op::Or, other)
    }

    pub fn and(&self, other: &StrictObject) -> StrictObject {
        self.tensor(Op::And, other)
    }

    pub fn children(&self) -> &[StrictObject] {
        match self {
            StrictObject::OrList(cs) | StrictObject::AndList(cs) => cs,
            _ => &[],
        }
    }

    pub fn list_op(&self) -> Option<Op> {
        match self {
            StrictObject::OrList(_) => Some(Op::Or),
            StrictObject::AndList(_) => Some(Op::And),
            _ => None,
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.visit(&mut |x| {
            if let StrictObject::Letter(l) = x {
                out.push(l.clone());
            }
        });
        out
    }

    pub fn is_letterless(&self) -> bool {
        match self {
            StrictObject::Letter(_) => false,
            StrictObject::Bot | StrictObject::Top => true,
            StrictObject::OrList(cs) | StrictObject::AndList(cs) => {
                cs.iter().all(|c| c.is_letterless())
            }
        }
    }

    pub fn is_unit_free(&self) -> bool {
        let mut free = true;
        self.visit(&mut |x| {
            if x.as_unit().is_some() {
                free = false;
            }
        });
        free
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
            StrictObject::OrList(cs) | StrictObject::AndList(cs) => {
                cs.iter().map(|c| c.size()).sum()
            }
            _ => 1,
        }
    }

    pub fn visit(&self, f: &mut impl FnMut(&StrictObject)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Unit reduction on normal forms: children first, then adjacent runs of
    /// the non-absorbed unit are merged and absorbed units dropped.
    pub fn nu(&self) -> StrictObject {
        match self {
            StrictObject::OrList(cs) => Self::merge_runs(Op::Or, cs.iter().map(|c| c.nu())),
            StrictObject::AndList(cs) => Self::merge_runs(Op::And, cs.iter().map(|c| c.nu())),
            _ => self.clone(),
        }
    }

    fn merge_runs(op: Op, items: impl Iterator<Item = StrictObject>) -> StrictObject {
        let dual_unit = StrictObject::unit(op.dual().unit());
        let folded = Self::fold(op, items);
        let mut out: Vec<StrictObject> = Vec::new();
        for c in folded.pieces(op) {
            if c == dual_unit && out.last() == Some(&dual_unit) {
                continue;
            }
            out.push(c);
        }
        Self::fold(op, out)
    }

    pub fn purity(&self) -> super::Purity {
        let mut bot = false;
        let mut top = false;
        self.nu().visit(&mut |x| match x {
            StrictObject::Bot => bot = true,
            StrictObject::Top => top = true,
            _ => {}
        });
        super::Purity {
            bot_pure: !bot,
            top_pure: !top,
        }
    }

    /// Recursively sorted representative of the commutativity class.
    pub fn sorted(&self) -> StrictObject {
        match self {
            StrictObject::OrList(cs) => {
                let mut v: Vec<_> = cs.iter().map(|c| c.sorted()).collect();
                v.sort();
                StrictObject::OrList(v)
            }
            StrictObject::AndList(cs) => {
                let mut v: Vec<_> = cs.iter().map(|c| c.sorted()).collect();
                v.sort();
                StrictObject::AndList(v)
            }
            _ => self.clone(),
        }
    }

    /// Replace letters by objects, renormalizing.
    pub fn substitute(&self, sub: &impl Fn(&Letter) -> Option<StrictObject>) -> StrictObject {
        match self {
            StrictObject::Letter(l) => sub(l).unwrap_or_else(|| self.clone()),
            StrictObject::Bot | StrictObject::Top => self.clone(),
            StrictObject::OrList(cs) => Self::fold(Op::Or, cs.iter().map(|c| c.substitute(sub))),
            StrictObject::AndList(cs) => Self::fold(Op::And, cs.iter().map(|c| c.substitute(sub))),
        }
    }

    pub fn render(&self, notation: Notation) -> String {
        let mut s = String::new();
        self.write(&mut s, notation);
        s
    }

    fn write(&self, s: &mut String, notation: Notation) {
        match self {
            StrictObject::Letter(l) => s.push_str(l.name()),
            StrictObject::Bot => s.push_str(Unit::Bot.symbol(notation)),
            StrictObject::Top => s.push_str(Unit::Top.symbol(notation)),
            StrictObject::OrList(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        s.push_str(notation.or());
                    }
                    c.write_wrapped(s, notation, matches!(c, StrictObject::AndList(_)));
                }
            }
            StrictObject::AndList(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        s.push_str(notation.and());
                    }
                    c.write_wrapped(s, notation, matches!(c, StrictObject::OrList(_)));
                }
            }
        }
    }

    fn write_wrapped(&self, s: &mut String, notation: Notation, paren: bool) {
        if paren {
            s.push('(');
        }
        self.write(s, notation);
        if paren {
            s.push(')');
        }
    }
}

impl fmt::Display for StrictObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}
