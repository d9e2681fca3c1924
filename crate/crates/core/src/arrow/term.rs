use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::syntax::{Notation, Op};

/// Objects that arrow terms can be typed in.
pub trait Object: Clone + Eq + Hash + Ord + Debug {
    fn tensor(&self, op: Op, other: &Self) -> Self;
    fn render(&self, notation: Notation) -> String;
}

/// Primitive arrows of one of the term flavors.
pub trait Generator: Clone + Eq + Hash + Ord + Debug {
    type Obj: Object;
    fn source(&self) -> Self::Obj;
    fn target(&self) -> Self::Obj;
    fn is_ck(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    fn render(&self, notation: Notation) -> String;
}

/// Arrow terms: identities, generators, composition and the two tensors.
/// `Comp(g, f)` is g after f.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term<G: Generator> {
    Id(G::Obj),
    Gen(G),
    Comp(Box<Term<G>>, Box<Term<G>>),
    Or(Box<Term<G>>, Box<Term<G>>),
    And(Box<Term<G>>, Box<Term<G>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Typing<O> {
    pub source: O,
    pub target: O,
}

impl<G: Generator> Term<G> {
    pub fn gen(g: G) -> Self {
        Term::Gen(g)
    }

    /// g after f, dropping identities.
    pub fn comp(g: Term<G>, f: Term<G>) -> Self {
        match (g, f) {
            (Term::Id(_), f) => f,
            (g, Term::Id(_)) => g,
            (g, f) => Term::Comp(Box::new(g), Box::new(f)),
        }
    }

    /// Tensor of two terms; two identities merge into one.
    pub fn tensor(op: Op, f: Term<G>, g: Term<G>) -> Self {
        match (f, g) {
            (Term::Id(a), Term::Id(b)) => Term::Id(a.tensor(op, &b)),
            (f, g) => match op {
                Op::Or => Term::Or(Box::new(f), Box::new(g)),
                Op::And => Term::And(Box::new(f), Box::new(g)),
            },
        }
    }

    pub fn or(f: Term<G>, g: Term<G>) -> Self {
        Self::tensor(Op::Or, f, g)
    }

    pub fn and(f: Term<G>, g: Term<G>) -> Self {
        Self::tensor(Op::And, f, g)
    }

    /// Tensor without identity merging, used when the context shape matters.
    pub fn raw_tensor(op: Op, f: Term<G>, g: Term<G>) -> Self {
        match op {
            Op::Or => Term::Or(Box::new(f), Box::new(g)),
            Op::And => Term::And(Box::new(f), Box::new(g)),
        }
    }

    /// Chain factors applied first to last; the empty chain is the identity on `source`.
    pub fn compose_all(factors: impl IntoIterator<Item = Term<G>>, source: G::Obj) -> Self {
        let mut acc = Term::Id(source);
        for f in factors {
            acc = Self::comp(f, acc);
        }
        acc
    }

    pub fn typecheck(&self) -> Result<Typing<G::Obj>> {
        self.typecheck_at(&mut String::from("root"))
    }

    fn typecheck_at(&self, path: &mut String) -> Result<Typing<G::Obj>> {
        match self {
            Term::Id(a) => Ok(Typing {
                source: a.clone(),
                target: a.clone(),
            }),
            Term::Gen(g) => Ok(Typing {
                source: g.source(),
                target: g.target(),
            }),
            Term::Comp(g, f) => {
                let n = path.len();
                path.push_str(".1");
                let tf = f.typecheck_at(path)?;
                path.truncate(n);
                path.push_str(".0");
                let tg = g.typecheck_at(path)?;
                path.truncate(n);
                if tf.target != tg.source {
                    return Err(Error::CompositionMismatch {
                        path: path.clone(),
                        left: tf.target.render(Notation::Ascii),
                        right: tg.source.render(Notation::Ascii),
                    });
                }
                Ok(Typing {
                    source: tf.source,
                    target: tg.target,
                })
            }
            Term::Or(f, g) | Term::And(f, g) => {
                let op = if matches!(self, Term::Or(..)) {
                    Op::Or
                } else {
                    Op::And
                };
                let n = path.len();
                path.push_str(".0");
                let tf = f.typecheck_at(path)?;
                path.truncate(n);
                path.push_str(".1");
                let tg = g.typecheck_at(path)?;
                path.truncate(n);
                Ok(Typing {
                    source: tf.source.tensor(op, &tg.source),
                    target: tf.target.tensor(op, &tg.target),
                })
            }
        }
    }

    pub fn source(&self) -> Result<G::Obj> {
        Ok(self.typecheck()?.source)
    }

    pub fn target(&self) -> Result<G::Obj> {
        Ok(self.typecheck()?.target)
    }

    /// Generator leaves from left to right.
    pub fn generators(&self) -> Vec<&G> {
        let mut out = Vec::new();
        self.collect_gens(&mut out);
        out
    }

    fn collect_gens<'a>(&'a self, out: &mut Vec<&'a G>) {
        match self {
            Term::Id(_) => {}
            Term::Gen(g) => out.push(g),
            Term::Comp(a, b) | Term::Or(a, b) | Term::And(a, b) => {
                a.collect_gens(out);
                b.collect_gens(out);
            }
        }
    }

    pub fn ck_count(&self) -> usize {
        self.generators().iter().filter(|g| g.is_ck()).count()
    }

    pub fn is_identity(&self) -> bool {
        self.generators().is_empty()
    }

    /// Formal inverse when every generator is invertible.
    pub fn inverse(&self) -> Option<Self> {
        Some(match self {
            Term::Id(a) => Term::Id(a.clone()),
            Term::Gen(g) => Term::Gen(g.inverse()?),
            Term::Comp(g, f) => Term::Comp(Box::new(f.inverse()?), Box::new(g.inverse()?)),
            Term::Or(f, g) => Term::Or(Box::new(f.inverse()?), Box::new(g.inverse()?)),
            Term::And(f, g) => Term::And(Box::new(f.inverse()?), Box::new(g.inverse()?)),
        })
    }

    /// Factors of the composition spine, first applied first.
    pub fn spine(&self) -> Vec<&Term<G>> {
        let mut out = Vec::new();
        self.collect_spine(&mut out);
        out
    }

    fn collect_spine<'a>(&'a self, out: &mut Vec<&'a Term<G>>) {
        match self {
            Term::Comp(g, f) => {
                f.collect_spine(out);
                g.collect_spine(out);
            }
            t => out.push(t),
        }
    }

    /// Single-head factors whose composite has the same endpoints and generators.
    pub fn develop(&self) -> Result<Vec<Term<G>>> {
        self.typecheck()?;
        Ok(self.develop_checked())
    }

    fn develop_checked(&self) -> Vec<Term<G>> {
        match self {
            Term::Id(_) => Vec::new(),
            Term::Gen(_) => vec![self.clone()],
            Term::Comp(..) => self
                .spine()
                .into_iter()
                .flat_map(|t| t.develop_checked())
                .collect(),
            Term::Or(f, g) | Term::And(f, g) => {
                let op = if matches!(self, Term::Or(..)) {
                    Op::Or
                } else {
                    Op::And
                };
                let df = f.develop_checked();
                let dg = g.develop_checked();
                let mut f_obj = f.source().expect("typechecked");
                let mut g_obj = g.source().expect("typechecked");
                let mut out = Vec::new();
                for k in 0..df.len().max(dg.len()) {
                    if let Some(fk) = df.get(k) {
                        out.push(Self::raw_tensor(op, fk.clone(), Term::Id(g_obj.clone())));
                        f_obj = fk.target().expect("typechecked");
                    }
                    if let Some(gk) = dg.get(k) {
                        out.push(Self::raw_tensor(op, Term::Id(f_obj.clone()), gk.clone()));
                        g_obj = gk.target().expect("typechecked");
                    }
                }
                out
            }
        }
    }

    /// Drop identity factors, merge tensors of identities and right-nest composition.
    pub fn simplify(&self) -> Result<Self> {
        let src = self.source()?;
        Ok(self.simplify_inner(src))
    }

    fn simplify_inner(&self, src: G::Obj) -> Self {
        match self {
            Term::Id(_) | Term::Gen(_) => self.clone(),
            Term::Comp(..) => {
                let mut cur = src.clone();
                let mut parts = Vec::new();
                for f in self.spine() {
                    let s = f.simplify_inner(cur.clone());
                    cur = f.target().expect("typechecked");
                    if !matches!(s, Term::Id(_)) {
                        parts.push(s);
                    }
                }
                Self::compose_all(parts, src)
            }
            Term::Or(f, g) | Term::And(f, g) => {
                let op = if matches!(self, Term::Or(..)) {
                    Op::Or
                } else {
                    Op::And
                };
                let fs = f.simplify_inner(f.source().expect("typechecked"));
                let gs = g.simplify_inner(g.source().expect("typechecked"));
                Self::tensor(op, fs, gs)
            }
        }
    }

    /// Rebuild in another flavor.
    pub fn map<H: Generator>(
        &self,
        obj: &impl Fn(&G::Obj) -> Result<H::Obj>,
        gen: &impl Fn(&G) -> Result<Term<H>>,
    ) -> Result<Term<H>> {
        Ok(match self {
            Term::Id(a) => Term::Id(obj(a)?),
            Term::Gen(g) => gen(g)?,
            Term::Comp(g, f) => Term::Comp(Box::new(g.map(obj, gen)?), Box::new(f.map(obj, gen)?)),
            Term::Or(f, g) => Term::Or(Box::new(f.map(obj, gen)?), Box::new(g.map(obj, gen)?)),
            Term::And(f, g) => Term::And(Box::new(f.map(obj, gen)?), Box::new(g.map(obj, gen)?)),
        })
    }

    pub fn render(&self, notation: Notation) -> String {
        let mut s = String::new();
        self.write(&mut s, notation, 0);
        s
    }

    // Levels: 0 composition, 1 disjunction, 2 conjunction, 3 atom.
    fn write(&self, s: &mut String, notation: Notation, level: u8) {
        let (own, left, right, sep) = match self {
            Term::Id(a) => {
                s.push_str("id(");
                s.push_str(&a.render(notation));
                s.push(')');
                return;
            }
            Term::Gen(g) => {
                s.push_str(&g.render(notation));
                return;
            }
            Term::Comp(g, f) => (0, g, f, " . "),
            Term::Or(f, g) => (1, f, g, " | "),
            Term::And(f, g) => (2, f, g, " & "),
        };
        if own < level {
            s.push('(');
        }
        left.write(s, notation, own);
        s.push_str(sep);
        right.write(s, notation, own + 1);
        if own < level {
            s.push(')');
        }
    }
}

impl<G: Generator> std::fmt::Display for Term<G> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}
