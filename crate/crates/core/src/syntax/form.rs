use std::collections::BTreeSet;
use std::fmt;

use super::formula::{Formula, Letter};
use super::strict::{Op, StrictObject};
use super::Notation;
use crate::error::{Error, Result};

/// Associativity and commutativity class of a unit-free formula. Children of
/// a bag are kept sorted, so derived equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormMultiset {
    Letter(Letter),
    OrBag(Vec<FormMultiset>),
    AndBag(Vec<FormMultiset>),
}

impl FormMultiset {
    pub fn letter(name: &str) -> Self {
        FormMultiset::Letter(Letter::new(name))
    }

    /// Flatten, sort and collapse. Panics on an empty list.
    pub fn bag(op: Op, items: impl IntoIterator<Item = FormMultiset>) -> FormMultiset {
        let mut cs = Vec::new();
        for it in items {
            match (it, op) {
                (FormMultiset::OrBag(v), Op::Or) | (FormMultiset::AndBag(v), Op::And) => {
                    cs.extend(v)
                }
                (x, _) => cs.push(x),
            }
        }
        assert!(!cs.is_empty(), "empty bag");
        if cs.len() == 1 {
            return cs.pop().expect("one child");
        }
        cs.sort();
        match op {
            Op::Or => FormMultiset::OrBag(cs),
            Op::And => FormMultiset::AndBag(cs),
        }
    }

    pub fn or(&self, other: &FormMultiset) -> FormMultiset {
        Self::bag(Op::Or, [self.clone(), other.clone()])
    }

    pub fn and(&self, other: &FormMultiset) -> FormMultiset {
        Self::bag(Op::And, [self.clone(), other.clone()])
    }

    pub fn from_formula(f: &Formula) -> Result<Self> {
        match f {
            Formula::Letter(l) => Ok(FormMultiset::Letter(l.clone())),
            Formula::Bot | Formula::Top => Err(Error::UnitPresent(f.to_string())),
            Formula::Or(a, b) => Ok(Self::from_formula(a)?.or(&Self::from_formula(b)?)),
            Formula::And(a, b) => Ok(Self::from_formula(a)?.and(&Self::from_formula(b)?)),
        }
    }

    pub fn from_strict(x: &StrictObject) -> Result<Self> {
        match x {
            StrictObject::Letter(l) => Ok(FormMultiset::Letter(l.clone())),
            StrictObject::Bot | StrictObject::Top => Err(Error::UnitPresent(x.to_string())),
            StrictObject::OrList(cs) => Ok(Self::bag(
                Op::Or,
                cs.iter()
                    .map(Self::from_strict)
                    .collect::<Result<Vec<_>>>()?,
            )),
            StrictObject::AndList(cs) => Ok(Self::bag(
                Op::And,
                cs.iter()
                    .map(Self::from_strict)
                    .collect::<Result<Vec<_>>>()?,
            )),
        }
    }

    /// The sorted strict representative. Orders agree, so this is already sorted.
    pub fn to_strict(&self) -> StrictObject {
        match self {
            FormMultiset::Letter(l) => StrictObject::Letter(l.clone()),
            FormMultiset::OrBag(cs) => {
                StrictObject::OrList(cs.iter().map(|c| c.to_strict()).collect())
            }
            FormMultiset::AndBag(cs) => {
                StrictObject::AndList(cs.iter().map(|c| c.to_strict()).collect())
            }
        }
    }

    pub fn children(&self) -> &[FormMultiset] {
        match self {
            FormMultiset::OrBag(cs) | FormMultiset::AndBag(cs) => cs,
            FormMultiset::Letter(_) => &[],
        }
    }

    pub fn op(&self) -> Option<Op> {
        match self {
            FormMultiset::OrBag(_) => Some(Op::Or),
            FormMultiset::AndBag(_) => Some(Op::And),
            FormMultiset::Letter(_) => None,
        }
    }

    /// Letter occurrences in sorted order.
    pub fn letter_occurrences(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.visit(&mut |x| {
            if let FormMultiset::Letter(l) = x {
                out.push(l.clone());
            }
        });
        out.sort();
        out
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        self.letter_occurrences().into_iter().collect()
    }

    pub fn letter_count(&self) -> usize {
        match self {
            FormMultiset::Letter(_) => 1,
            FormMultiset::OrBag(cs) | FormMultiset::AndBag(cs) => {
                cs.iter().map(|c| c.letter_count()).sum()
            }
        }
    }

    pub fn is_form_set(&self) -> bool {
        let occ = self.letter_occurrences();
        occ.windows(2).all(|w| w[0] != w[1])
    }

    pub fn visit(&self, f: &mut impl FnMut(&FormMultiset)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// X with the letters of `p` deleted. A group left with one child collapses.
    pub fn delete_letters(&self, p: &BTreeSet<Letter>) -> Result<FormMultiset> {
        self.delete_inner(p)
            .ok_or_else(|| Error::AllLettersDeleted(self.to_string()))
    }

    fn delete_inner(&self, p: &BTreeSet<Letter>) -> Option<FormMultiset> {
        match self {
            FormMultiset::Letter(l) => (!p.contains(l)).then(|| self.clone()),
            FormMultiset::OrBag(cs) | FormMultiset::AndBag(cs) => {
                let op = self.op().expect("bag");
                let kept: Vec<_> = cs.iter().filter_map(|c| c.delete_inner(p)).collect();
                (!kept.is_empty()).then(|| Self::bag(op, kept))
            }
        }
    }

    /// Children of a bag node, or the object itself as a one-element list.
    pub fn pieces(&self, op: Op) -> Vec<FormMultiset> {
        if self.op() == Some(op) {
            self.children().to_vec()
        } else {
            vec![self.clone()]
        }
    }

    pub fn render(&self, notation: Notation) -> String {
        self.to_strict().render(notation)
    }
}

impl fmt::Display for FormMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

/// Index of an intermuting arrow in the unit-free commutative setting, kept in
/// the least of its four symmetric orientations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CkIndex {
    parts: [FormMultiset; 4],
}

impl CkIndex {
    pub fn new(s: FormMultiset, t: FormMultiset, u: FormMultiset, v: FormMultiset) -> Self {
        let candidates = [
            [s.clone(), t.clone(), u.clone(), v.clone()],
            [t.clone(), s.clone(), v.clone(), u.clone()],
            [u.clone(), v.clone(), s.clone(), t.clone()],
            [v, u, t, s],
        ];
        let parts = candidates.into_iter().min().expect("four candidates");
        CkIndex { parts }
    }

    pub fn parts(&self) -> &[FormMultiset; 4] {
        &self.parts
    }

    /// (S∧T)∨(U∧V)
    pub fn source(&self) -> FormMultiset {
        let [s, t, u, v] = &self.parts;
        s.and(t).or(&u.and(v))
    }

    /// (S∨U)∧(T∨V)
    pub fn target(&self) -> FormMultiset {
        let [s, t, u, v] = &self.parts;
        s.or(u).and(&t.or(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(n: &str) -> FormMultiset {
        FormMultiset::letter(n)
    }

    fn set(ls: &[&str]) -> BTreeSet<Letter> {
        ls.iter().map(|n| Letter::new(n)).collect()
    }

    #[test]
    fn bags_ignore_order_and_grouping() {
        let a = l("p").and(&l("q")).and(&l("p").or(&l("r")).or(&l("p")));
        let b = l("q").and(&l("r").or(&l("p")).or(&l("p"))).and(&l("p"));
        assert_eq!(a, b);
        assert_eq!(
            a,
            FormMultiset::AndBag(vec![
                l("p"),
                l("q"),
                FormMultiset::OrBag(vec![l("p"), l("p"), l("r")])
            ])
        );
    }

    #[test]
    fn deletion() {
        let x = l("p").or(&l("s")).and(&l("q").or(&l("t")));
        assert_eq!(
            x.delete_letters(&set(&["s", "t"])).unwrap(),
            l("p").and(&l("q"))
        );
        assert_eq!(x.delete_letters(&set(&[])).unwrap(), x);
        let y = l("p").or(&l("q").and(&l("r")));
        assert_eq!(y.delete_letters(&set(&["q"])).unwrap(), l("p").or(&l("r")));
        assert!(matches!(
            y.delete_letters(&set(&["p", "q", "r"])),
            Err(Error::AllLettersDeleted(_))
        ));
    }

    #[test]
    fn deletion_reflattens() {
        let x = l("a").and(&l("b").or(&l("c").and(&l("d"))));
        assert_eq!(
            x.delete_letters(&set(&["b"])).unwrap(),
            FormMultiset::AndBag(vec![l("a"), l("c"), l("d")])
        );
    }

    #[test]
    fn ck_index_symmetries() {
        let a = CkIndex::new(l("p"), l("q"), l("s"), l("t"));
        assert_eq!(a, CkIndex::new(l("q"), l("p"), l("t"), l("s")));
        assert_eq!(a, CkIndex::new(l("s"), l("t"), l("p"), l("q")));
        assert_eq!(a, CkIndex::new(l("t"), l("s"), l("q"), l("p")));
        assert_ne!(a, CkIndex::new(l("p"), l("q"), l("t"), l("s")));
        assert_eq!(
            a.source(),
            CkIndex::new(l("t"), l("s"), l("q"), l("p")).source()
        );
    }
}
