//! Canonical arrows and equality by coherence in the strictified category.

use crate::arrow::{bare_generators, sort_iso, Generator, SaiTerm, StGen, StTerm, Term};
use crate::error::{Error, Result};
use crate::sai::canonical_sai_arrow;
use crate::syntax::{FormMultiset, Op, Purity, StrictObject};
use crate::unit::{letterless_arrow, unit_iso, unit_iso_inv};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Canonical {
    Some(StTerm),
    None,
    Undecided,
}

impl Canonical {
    pub fn term(&self) -> Option<&StTerm> {
        match self {
            Canonical::Some(t) => Some(t),
            _ => None,
        }
    }
}

/// The sorted strict representative of a form multiset.
pub fn decorate_object(x: &FormMultiset) -> StrictObject {
    x.to_strict()
}

fn conjugate(src: &StrictObject, t: StTerm, tgt: &StrictObject) -> Result<StTerm> {
    let ty = t.typecheck()?;
    let pre = sort_iso(src, &ty.source)?;
    let post = sort_iso(&ty.target, tgt)?;
    Ok(Term::comp(post, Term::comp(t, pre)))
}

/// Lift a term between form multisets to one between their sorted strict
/// representatives, reordering around every ck and tensor with symmetries.
pub fn decorate(t: &SaiTerm) -> Result<StTerm> {
    let ty = t.typecheck()?;
    let (src, tgt) = (decorate_object(&ty.source), decorate_object(&ty.target));
    Ok(match t {
        Term::Id(x) => Term::Id(decorate_object(x)),
        Term::Gen(g) => {
            let [s, a, u, v] = g.0.parts().clone().map(|x| decorate_object(&x));
            conjugate(&src, Term::Gen(StGen::Ck(s, a, u, v)), &tgt)?
        }
        Term::Comp(g, f) => Term::comp(decorate(g)?, decorate(f)?),
        Term::Or(f, g) | Term::And(f, g) => {
            let op = if matches!(t, Term::Or(..)) {
                Op::Or
            } else {
                Op::And
            };
            conjugate(&src, Term::tensor(op, decorate(f)?, decorate(g)?), &tgt)?
        }
    })
}

fn same_letters(a: &StrictObject, b: &StrictObject) -> bool {
    let (mut la, mut lb) = (a.letters(), b.letters());
    la.sort();
    lb.sort();
    la == lb
}

fn in_fragment(a: &StrictObject, b: &StrictObject) -> bool {
    let pd = |x: &StrictObject| x.purity().pure() && x.is_diversified();
    (a.is_letterless() && b.is_letterless()) || (pd(a) && pd(b))
}

/// A single generator A → B, tried in the order w, kappa, symmetries, ck.
pub fn primitive_between(a: &StrictObject, b: &StrictObject) -> Option<StTerm> {
    bare_generators(a)
        .into_iter()
        .find(|g| g.target() == *b)
        .map(Term::Gen)
}

/// The unique arrow A → B when coherence applies, None when no arrow exists and
/// Undecided outside the fragment covered by coherence.
pub fn canonical_arrow(a: &StrictObject, b: &StrictObject) -> Result<Canonical> {
    if !same_letters(a, b) {
        return Ok(Canonical::None);
    }
    let (pa, pb) = (a.purity(), b.purity());
    if (pa.bot_pure && !pb.bot_pure) || (pb.top_pure && !pa.top_pure) {
        return Ok(Canonical::None);
    }
    if a.is_letterless() {
        return Ok(match letterless_arrow(a, b)? {
            Some(t) => Canonical::Some(t),
            None => Canonical::None,
        });
    }
    if !in_fragment(a, b) {
        return Ok(Canonical::Undecided);
    }
    if a == b {
        return Ok(Canonical::Some(Term::Id(a.clone())));
    }
    if let Some(t) = primitive_between(a, b) {
        return Ok(Canonical::Some(t));
    }
    Ok(match pipeline(a, b)? {
        Some(t) => Canonical::Some(t),
        None => Canonical::None,
    })
}

/// inv(i_B) ∘ decorated canonical arrow ∘ i_A, without the single-generator shortcut.
pub fn pipeline(a: &StrictObject, b: &StrictObject) -> Result<Option<StTerm>> {
    let (na, nb) = (a.nu(), b.nu());
    let (x, y) = (
        FormMultiset::from_strict(&na)?,
        FormMultiset::from_strict(&nb)?,
    );
    let Some(t) = canonical_sai_arrow(&x, &y)? else {
        return Ok(None);
    };
    let mid = conjugate(&na, decorate(&t)?, &nb)?;
    let full = Term::comp(unit_iso_inv(b), Term::comp(mid, unit_iso(a)));
    let ty = full.typecheck()?;
    if (&ty.source, &ty.target) != (a, b) {
        return Err(Error::Internal(format!(
            "pipeline built {} -> {}",
            ty.source, ty.target
        )));
    }
    Ok(Some(full))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equality {
    EqualByCoherence,
    NotParallel,
    Unknown,
}

/// Evidence behind an equality verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityReport {
    pub verdict: Equality,
    pub sources: (StrictObject, StrictObject),
    pub targets: (StrictObject, StrictObject),
    pub letterless: bool,
    pub purity: (Purity, Purity),
    pub diversified: bool,
}

pub fn compare_arrows(f: &StTerm, g: &StTerm) -> Result<EqualityReport> {
    let (tf, tg) = (f.typecheck()?, g.typecheck()?);
    let (a, b) = (&tf.source, &tf.target);
    let verdict = if tf != tg {
        Equality::NotParallel
    } else if in_fragment(a, b) {
        Equality::EqualByCoherence
    } else {
        Equality::Unknown
    };
    Ok(EqualityReport {
        verdict,
        letterless: a.is_letterless() && b.is_letterless(),
        purity: (a.purity(), b.purity()),
        diversified: a.is_diversified() && b.is_diversified(),
        sources: (tf.source, tg.source),
        targets: (tf.target, tg.target),
    })
}

pub fn equal_arrows(f: &StTerm, g: &StTerm) -> Result<Equality> {
    Ok(compare_arrows(f, g)?.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::Dir;
    use crate::parse::{parse_form, parse_strict};

    fn s(t: &str) -> StrictObject {
        parse_strict(t).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let got = canonical_arrow(&s("(p/\\q)\\/(bot/\\bot)"), &s("p/\\q")).unwrap();
        assert_eq!(
            got,
            Canonical::Some(Term::Gen(StGen::ck(&s("p"), &s("q"), &s("bot"), &s("bot"))))
        );
        let got = canonical_arrow(&s("top\\/top"), &s("top")).unwrap();
        assert_eq!(got, Canonical::Some(Term::Gen(StGen::WOrTop(Dir::Fw))));
        assert_eq!(
            canonical_arrow(&s("p\\/p"), &s("p/\\p")).unwrap(),
            Canonical::Undecided
        );
        assert_eq!(
            canonical_arrow(&s("p\\/q"), &s("p/\\q")).unwrap(),
            Canonical::None
        );
        assert_eq!(canonical_arrow(&s("p"), &s("q")).unwrap(), Canonical::None);
        assert_eq!(
            canonical_arrow(&s("top"), &s("bot")).unwrap(),
            Canonical::None
        );
    }

    #[test]
    fn pipeline_types() {
        let a = s("(q/\\p/\\(top\\/top))\\/(t/\\s)");
        let b = s("(s\\/q)/\\(p\\/t)");
        let t = pipeline(&a, &b).unwrap().unwrap();
        let ty = t.typecheck().unwrap();
        assert_eq!((ty.source, ty.target, t.ck_count()), (a, b, 1));
    }

    #[test]
    fn decoration_round_trip() {
        let x = parse_form("(p/\\q/\\r)\\/(s/\\t/\\u)").unwrap();
        let y = parse_form("(p\\/s)/\\(q\\/t)/\\(r\\/u)").unwrap();
        let t = canonical_sai_arrow(&x, &y).unwrap().unwrap();
        let h = decorate(&t).unwrap();
        assert_eq!(
            h.to_sai().unwrap().simplify().unwrap(),
            t.simplify().unwrap()
        );
    }

    #[test]
    fn equality() {
        let k = Term::Gen(StGen::Kappa);
        assert_eq!(equal_arrows(&k, &k).unwrap(), Equality::EqualByCoherence);
        let c = Term::Gen(StGen::COr(s("p"), s("p")));
        assert_eq!(
            equal_arrows(&c, &Term::Id(s("p\\/p"))).unwrap(),
            Equality::Unknown
        );
        assert_eq!(
            equal_arrows(&k, &Term::Id(s("bot"))).unwrap(),
            Equality::NotParallel
        );
    }
}
