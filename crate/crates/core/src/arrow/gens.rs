use crate::error::{Error, Result};
use crate::syntax::{CkIndex, FormMultiset, Formula, Notation, Op, StrictObject};

use super::term::{Generator, Object, Term};

impl Object for Formula {
    fn tensor(&self, op: Op, other: &Self) -> Self {
        match op {
            Op::Or => Formula::or(self.clone(), other.clone()),
            Op::And => Formula::and(self.clone(), other.clone()),
        }
    }

    fn render(&self, notation: Notation) -> String {
        Formula::render(self, notation)
    }
}

impl Object for StrictObject {
    fn tensor(&self, op: Op, other: &Self) -> Self {
        StrictObject::tensor(self, op, other)
    }

    fn render(&self, notation: Notation) -> String {
        StrictObject::render(self, notation)
    }
}

impl Object for FormMultiset {
    fn tensor(&self, op: Op, other: &Self) -> Self {
        FormMultiset::bag(op, [self.clone(), other.clone()])
    }

    fn render(&self, notation: Notation) -> String {
        FormMultiset::render(self, notation)
    }
}

/// fw is the printed direction of a structural isomorphism, bw its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Fw,
    Bw,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Fw => Dir::Bw,
            Dir::Bw => Dir::Fw,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Dir::Fw => "fw",
            Dir::Bw => "bw",
        }
    }
}

/// Generators of the free category on formulae.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MGen {
    BOr(Dir, Formula, Formula, Formula),
    BAnd(Dir, Formula, Formula, Formula),
    COr(Formula, Formula),
    CAnd(Formula, Formula),
    DeltaOr(Dir, Formula),
    SigmaOr(Dir, Formula),
    DeltaAnd(Dir, Formula),
    SigmaAnd(Dir, Formula),
    WOrTop(Dir),
    WAndBot(Dir),
    Kappa,
    Ck(Formula, Formula, Formula, Formula),
}

fn orient<T>(dir: Dir, a: T, b: T) -> T {
    match dir {
        Dir::Fw => a,
        Dir::Bw => b,
    }
}

impl MGen {
    fn ends(&self) -> (Formula, Formula) {
        use Formula as F;
        let or = F::or;
        let and = F::and;
        match self {
            MGen::BOr(d, a, b, c) => {
                let l = or(a.clone(), or(b.clone(), c.clone()));
                let r = or(or(a.clone(), b.clone()), c.clone());
                orient(*d, (l.clone(), r.clone()), (r, l))
            }
            MGen::BAnd(d, a, b, c) => {
                let l = and(a.clone(), and(b.clone(), c.clone()));
                let r = and(and(a.clone(), b.clone()), c.clone());
                orient(*d, (l.clone(), r.clone()), (r, l))
            }
            MGen::COr(a, b) => (or(a.clone(), b.clone()), or(b.clone(), a.clone())),
            MGen::CAnd(a, b) => (and(a.clone(), b.clone()), and(b.clone(), a.clone())),
            MGen::DeltaOr(d, a) => {
                let l = or(a.clone(), F::Bot);
                orient(*d, (l.clone(), a.clone()), (a.clone(), l))
            }
            MGen::SigmaOr(d, a) => {
                let l = or(F::Bot, a.clone());
                orient(*d, (l.clone(), a.clone()), (a.clone(), l))
            }
            MGen::DeltaAnd(d, a) => {
                let l = and(a.clone(), F::Top);
                orient(*d, (l.clone(), a.clone()), (a.clone(), l))
            }
            MGen::SigmaAnd(d, a) => {
                let l = and(F::Top, a.clone());
                orient(*d, (l.clone(), a.clone()), (a.clone(), l))
            }
            MGen::WOrTop(d) => {
                let l = or(F::Top, F::Top);
                orient(*d, (l.clone(), F::Top), (F::Top, l))
            }
            MGen::WAndBot(d) => {
                let l = and(F::Bot, F::Bot);
                orient(*d, (l.clone(), F::Bot), (F::Bot, l))
            }
            MGen::Kappa => (F::Bot, F::Top),
            MGen::Ck(a, b, c, d) => (
                or(and(a.clone(), b.clone()), and(c.clone(), d.clone())),
                and(or(a.clone(), c.clone()), or(b.clone(), d.clone())),
            ),
        }
    }

    /// The image in the strictified category; associativity and unit laws vanish.
    pub fn strictify(&self) -> StTerm {
        let s = StrictObject::from_formula;
        match self {
            MGen::BOr(..)
            | MGen::BAnd(..)
            | MGen::DeltaOr(..)
            | MGen::SigmaOr(..)
            | MGen::DeltaAnd(..)
            | MGen::SigmaAnd(..) => Term::Id(s(&self.source())),
            MGen::COr(a, b) => Term::Gen(StGen::COr(s(a), s(b))),
            MGen::CAnd(a, b) => Term::Gen(StGen::CAnd(s(a), s(b))),
            MGen::WOrTop(d) => Term::Gen(StGen::WOrTop(*d)),
            MGen::WAndBot(d) => Term::Gen(StGen::WAndBot(*d)),
            MGen::Kappa => Term::Gen(StGen::Kappa),
            MGen::Ck(a, b, c, d) => Term::Gen(StGen::Ck(s(a), s(b), s(c), s(d))),
        }
    }
}

fn args<O: Object>(notation: Notation, xs: &[&O]) -> String {
    xs.iter()
        .map(|x| x.render(notation))
        .collect::<Vec<_>>()
        .join(";")
}

impl Generator for MGen {
    type Obj = Formula;

    fn source(&self) -> Formula {
        self.ends().0
    }

    fn target(&self) -> Formula {
        self.ends().1
    }

    fn is_ck(&self) -> bool {
        matches!(self, MGen::Ck(..))
    }

    fn inverse(&self) -> Option<Self> {
        Some(match self {
            MGen::BOr(d, a, b, c) => MGen::BOr(d.flip(), a.clone(), b.clone(), c.clone()),
            MGen::BAnd(d, a, b, c) => MGen::BAnd(d.flip(), a.clone(), b.clone(), c.clone()),
            MGen::COr(a, b) => MGen::COr(b.clone(), a.clone()),
            MGen::CAnd(a, b) => MGen::CAnd(b.clone(), a.clone()),
            MGen::DeltaOr(d, a) => MGen::DeltaOr(d.flip(), a.clone()),
            MGen::SigmaOr(d, a) => MGen::SigmaOr(d.flip(), a.clone()),
            MGen::DeltaAnd(d, a) => MGen::DeltaAnd(d.flip(), a.clone()),
            MGen::SigmaAnd(d, a) => MGen::SigmaAnd(d.flip(), a.clone()),
            MGen::WOrTop(d) => MGen::WOrTop(d.flip()),
            MGen::WAndBot(d) => MGen::WAndBot(d.flip()),
            MGen::Kappa | MGen::Ck(..) => return None,
        })
    }

    fn render(&self, n: Notation) -> String {
        match self {
            MGen::BOr(d, a, b, c) => format!("b_or_{}({})", d.suffix(), args(n, &[a, b, c])),
            MGen::BAnd(d, a, b, c) => format!("b_and_{}({})", d.suffix(), args(n, &[a, b, c])),
            MGen::COr(a, b) => format!("c_or({})", args(n, &[a, b])),
            MGen::CAnd(a, b) => format!("c_and({})", args(n, &[a, b])),
            MGen::DeltaOr(d, a) => format!("d_or_{}({})", d.suffix(), a.render(n)),
            MGen::SigmaOr(d, a) => format!("s_or_{}({})", d.suffix(), a.render(n)),
            MGen::DeltaAnd(d, a) => format!("d_and_{}({})", d.suffix(), a.render(n)),
            MGen::SigmaAnd(d, a) => format!("s_and_{}({})", d.suffix(), a.render(n)),
            MGen::WOrTop(d) => format!("w_or_{}", d.suffix()),
            MGen::WAndBot(d) => format!("w_and_{}", d.suffix()),
            MGen::Kappa => "kappa".to_string(),
            MGen::Ck(a, b, c, d) => format!("ck({})", args(n, &[a, b, c, d])),
        }
    }
}

/// Generators of the strictified category.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StGen {
    COr(StrictObject, StrictObject),
    CAnd(StrictObject, StrictObject),
    WOrTop(Dir),
    WAndBot(Dir),
    Kappa,
    Ck(StrictObject, StrictObject, StrictObject, StrictObject),
}

impl StGen {
    pub fn ck(a: &StrictObject, b: &StrictObject, c: &StrictObject, d: &StrictObject) -> Self {
        StGen::Ck(a.clone(), b.clone(), c.clone(), d.clone())
    }

    pub fn is_unit_gen(&self) -> bool {
        matches!(self, StGen::WOrTop(_) | StGen::WAndBot(_) | StGen::Kappa)
    }

    pub fn substitute(
        &self,
        sub: &impl Fn(&crate::syntax::Letter) -> Option<StrictObject>,
    ) -> StGen {
        match self {
            StGen::COr(a, b) => StGen::COr(a.substitute(sub), b.substitute(sub)),
            StGen::CAnd(a, b) => StGen::CAnd(a.substitute(sub), b.substitute(sub)),
            StGen::Ck(a, b, c, d) => StGen::Ck(
                a.substitute(sub),
                b.substitute(sub),
                c.substitute(sub),
                d.substitute(sub),
            ),
            g => g.clone(),
        }
    }
}

impl Generator for StGen {
    type Obj = StrictObject;

    fn source(&self) -> StrictObject {
        match self {
            StGen::COr(a, b) => a.or(b),
            StGen::CAnd(a, b) => a.and(b),
            StGen::WOrTop(Dir::Fw) => {
                StrictObject::OrList(vec![StrictObject::Top, StrictObject::Top])
            }
            StGen::WOrTop(Dir::Bw) => StrictObject::Top,
            StGen::WAndBot(Dir::Fw) => {
                StrictObject::AndList(vec![StrictObject::Bot, StrictObject::Bot])
            }
            StGen::WAndBot(Dir::Bw) => StrictObject::Bot,
            StGen::Kappa => StrictObject::Bot,
            StGen::Ck(a, b, c, d) => a.and(b).or(&c.and(d)),
        }
    }

    fn target(&self) -> StrictObject {
        match self {
            StGen::COr(a, b) => b.or(a),
            StGen::CAnd(a, b) => b.and(a),
            StGen::WOrTop(d) => StGen::WOrTop(d.flip()).source(),
            StGen::WAndBot(d) => StGen::WAndBot(d.flip()).source(),
            StGen::Kappa => StrictObject::Top,
            StGen::Ck(a, b, c, d) => a.or(c).and(&b.or(d)),
        }
    }

    fn is_ck(&self) -> bool {
        matches!(self, StGen::Ck(..))
    }

    fn inverse(&self) -> Option<Self> {
        Some(match self {
            StGen::COr(a, b) => StGen::COr(b.clone(), a.clone()),
            StGen::CAnd(a, b) => StGen::CAnd(b.clone(), a.clone()),
            StGen::WOrTop(d) => StGen::WOrTop(d.flip()),
            StGen::WAndBot(d) => StGen::WAndBot(d.flip()),
            StGen::Kappa | StGen::Ck(..) => return None,
        })
    }

    fn render(&self, n: Notation) -> String {
        match self {
            StGen::COr(a, b) => format!("c_or({})", args(n, &[a, b])),
            StGen::CAnd(a, b) => format!("c_and({})", args(n, &[a, b])),
            StGen::WOrTop(d) => format!("w_or_{}", d.suffix()),
            StGen::WAndBot(d) => format!("w_and_{}", d.suffix()),
            StGen::Kappa => "kappa".to_string(),
            StGen::Ck(a, b, c, d) => format!("ck({})", args(n, &[a, b, c, d])),
        }
    }
}

/// The only generator of the unit-free commutative strict category.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SaiGen(pub CkIndex);

impl Generator for SaiGen {
    type Obj = FormMultiset;

    fn source(&self) -> FormMultiset {
        self.0.source()
    }

    fn target(&self) -> FormMultiset {
        self.0.target()
    }

    fn is_ck(&self) -> bool {
        true
    }

    fn inverse(&self) -> Option<Self> {
        None
    }

    fn render(&self, n: Notation) -> String {
        let [s, t, u, v] = self.0.parts();
        format!("ck({})", args(n, &[s, t, u, v]))
    }
}

pub type MTerm = Term<MGen>;
pub type StTerm = Term<StGen>;
pub type SaiTerm = Term<SaiGen>;

impl MTerm {
    pub fn strictify(&self) -> StTerm {
        self.map(
            &|a: &Formula| Ok(StrictObject::from_formula(a)),
            &|g: &MGen| Ok(g.strictify()),
        )
        .expect("strictification is total")
    }
}

impl SaiTerm {
    pub fn ck(s: &FormMultiset, t: &FormMultiset, u: &FormMultiset, v: &FormMultiset) -> Self {
        Term::Gen(SaiGen(CkIndex::new(
            s.clone(),
            t.clone(),
            u.clone(),
            v.clone(),
        )))
    }
}

impl StTerm {
    pub fn substitute(
        &self,
        sub: &impl Fn(&crate::syntax::Letter) -> Option<StrictObject>,
    ) -> StTerm {
        self.map(&|a: &StrictObject| Ok(a.substitute(sub)), &|g: &StGen| {
            Ok(Term::Gen(g.substitute(sub)))
        })
        .expect("substitution is total")
    }

    /// Forget symmetries: the image in the unit-free commutative category.
    /// Fails on units and on w and kappa generators.
    pub fn to_sai(&self) -> Result<SaiTerm> {
        let obj = |a: &StrictObject| FormMultiset::from_strict(a);
        self.map(&obj, &|g: &StGen| match g {
            StGen::COr(..) | StGen::CAnd(..) => Ok(Term::Id(obj(&g.source())?)),
            StGen::Ck(a, b, c, d) => Ok(SaiTerm::ck(&obj(a)?, &obj(b)?, &obj(c)?, &obj(d)?)),
            _ => Err(Error::UnitPresent(g.render(Notation::Ascii))),
        })
    }
}
