use crate::syntax::{Formula, Op, StrictObject};

use super::gens::{Dir, MGen, MTerm, StGen, StTerm};
use super::sort::in_context;
use super::term::Term;

/// Ways to write `x` as a binary `op`-tensor: contiguous cuts of an `op`-list,
/// then the two paddings with the absorbed unit when `padded` is set.
pub fn splits(x: &StrictObject, op: Op, padded: bool) -> Vec<(StrictObject, StrictObject)> {
    let mut out = Vec::new();
    if x.list_op() == Some(op) {
        let cs = x.children();
        for i in 1..cs.len() {
            out.push((
                StrictObject::fold(op, cs[..i].iter().cloned()),
                StrictObject::fold(op, cs[i..].iter().cloned()),
            ));
        }
    }
    if padded {
        let u = StrictObject::unit(op.unit());
        out.push((x.clone(), u.clone()));
        out.push((u, x.clone()));
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|p| seen.insert(p.clone()));
    out
}

/// Generators whose source is exactly `x`, in the order w, kappa, symmetries, ck.
/// Symmetries against a unit are left out: they are identities in this category.
pub fn bare_generators(x: &StrictObject) -> Vec<StGen> {
    let top = StrictObject::Top;
    let bot = StrictObject::Bot;
    let mut out = Vec::new();
    if *x == StrictObject::OrList(vec![top.clone(), top.clone()]) {
        out.push(StGen::WOrTop(Dir::Fw));
    }
    if *x == top {
        out.push(StGen::WOrTop(Dir::Bw));
    }
    if *x == StrictObject::AndList(vec![bot.clone(), bot.clone()]) {
        out.push(StGen::WAndBot(Dir::Fw));
    }
    if *x == bot {
        out.push(StGen::WAndBot(Dir::Bw));
        out.push(StGen::Kappa);
    }
    for (a, b) in splits(x, Op::Or, false) {
        out.push(StGen::COr(a, b));
    }
    for (a, b) in splits(x, Op::And, false) {
        out.push(StGen::CAnd(a, b));
    }
    for (p, q) in splits(x, Op::Or, true) {
        for (a, b) in splits(&p, Op::And, true) {
            for (c, d) in splits(&q, Op::And, true) {
                let g = StGen::Ck(a.clone(), b.clone(), c.clone(), d.clone());
                if !out.contains(&g) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Single-head terms with source `x`: a generator at some position, including
/// positions next to units that normalization has absorbed.
pub fn st_single_heads(x: &StrictObject) -> Vec<StTerm> {
    heads_at(x, None)
}

fn heads_at(x: &StrictObject, parent: Option<Op>) -> Vec<StTerm> {
    let mut out: Vec<StTerm> = bare_generators(x).into_iter().map(Term::Gen).collect();
    if let Some(op) = x.list_op() {
        let cs = x.children();
        let k = cs.len();
        for i in 0..k {
            for j in i + 2..=k {
                if j - i == k {
                    continue;
                }
                let sub = StrictObject::fold(op, cs[i..j].iter().cloned());
                for g in bare_generators(&sub) {
                    out.push(in_context(op, &cs[..i], Term::Gen(g), &cs[j..]));
                }
                // the run may also sit in a dual list whose other member is an absorbed unit
                let dual = op.dual();
                for g in bare_generators(&StrictObject::unit(dual.unit())) {
                    let id = Term::Id(sub.clone());
                    for h in [
                        Term::raw_tensor(dual, Term::Gen(g.clone()), id.clone()),
                        Term::raw_tensor(dual, id, Term::Gen(g.clone())),
                    ] {
                        out.push(in_context(op, &cs[..i], h, &cs[j..]));
                    }
                }
            }
        }
        for i in 0..k {
            for h in heads_at(&cs[i], Some(op)) {
                out.push(in_context(op, &cs[..i], h, &cs[i + 1..]));
            }
        }
    }
    for op in [Op::Or, Op::And] {
        if parent == Some(op) {
            continue;
        }
        let pieces = x.pieces(op);
        if pieces.is_empty() {
            continue;
        }
        let unit = StrictObject::unit(op.unit());
        for g in bare_generators(&unit) {
            for gap in 0..=pieces.len() {
                out.push(in_context(
                    op,
                    &pieces[..gap],
                    Term::Gen(g.clone()),
                    &pieces[gap..],
                ));
            }
        }
    }
    out
}

/// Single-head terms of the free category on formulae with source `f`.
pub fn m_single_heads(f: &Formula) -> Vec<MTerm> {
    let mut out: Vec<MTerm> = m_bare(f).into_iter().map(Term::Gen).collect();
    match f {
        Formula::Or(a, b) | Formula::And(a, b) => {
            let op = if matches!(f, Formula::Or(..)) {
                Op::Or
            } else {
                Op::And
            };
            for h in m_single_heads(a) {
                out.push(Term::raw_tensor(op, h, Term::Id((**b).clone())));
            }
            for h in m_single_heads(b) {
                out.push(Term::raw_tensor(op, Term::Id((**a).clone()), h));
            }
        }
        _ => {}
    }
    out
}

fn m_bare(f: &Formula) -> Vec<MGen> {
    let mut out = Vec::new();
    match f {
        Formula::Or(a, b) => {
            if let Formula::Or(b1, b2) = &**b {
                out.push(MGen::BOr(
                    Dir::Fw,
                    (**a).clone(),
                    (**b1).clone(),
                    (**b2).clone(),
                ));
            }
            if let Formula::Or(a1, a2) = &**a {
                out.push(MGen::BOr(
                    Dir::Bw,
                    (**a1).clone(),
                    (**a2).clone(),
                    (**b).clone(),
                ));
            }
            out.push(MGen::COr((**a).clone(), (**b).clone()));
            if **b == Formula::Bot {
                out.push(MGen::DeltaOr(Dir::Fw, (**a).clone()));
            }
            if **a == Formula::Bot {
                out.push(MGen::SigmaOr(Dir::Fw, (**b).clone()));
            }
            if **a == Formula::Top && **b == Formula::Top {
                out.push(MGen::WOrTop(Dir::Fw));
            }
            if let (Formula::And(x, y), Formula::And(z, w)) = (&**a, &**b) {
                out.push(MGen::Ck(
                    (**x).clone(),
                    (**y).clone(),
                    (**z).clone(),
                    (**w).clone(),
                ));
            }
        }
        Formula::And(a, b) => {
            if let Formula::And(b1, b2) = &**b {
                out.push(MGen::BAnd(
                    Dir::Fw,
                    (**a).clone(),
                    (**b1).clone(),
                    (**b2).clone(),
                ));
            }
            if let Formula::And(a1, a2) = &**a {
                out.push(MGen::BAnd(
                    Dir::Bw,
                    (**a1).clone(),
                    (**a2).clone(),
                    (**b).clone(),
                ));
            }
            out.push(MGen::CAnd((**a).clone(), (**b).clone()));
            if **b == Formula::Top {
                out.push(MGen::DeltaAnd(Dir::Fw, (**a).clone()));
            }
            if **a == Formula::Top {
                out.push(MGen::SigmaAnd(Dir::Fw, (**b).clone()));
            }
            if **a == Formula::Bot && **b == Formula::Bot {
                out.push(MGen::WAndBot(Dir::Fw));
            }
        }
        Formula::Bot => {
            out.push(MGen::WAndBot(Dir::Bw));
            out.push(MGen::Kappa);
        }
        Formula::Top => out.push(MGen::WOrTop(Dir::Bw)),
        Formula::Letter(_) => {}
    }
    out.push(MGen::DeltaOr(Dir::Bw, f.clone()));
    out.push(MGen::SigmaOr(Dir::Bw, f.clone()));
    out.push(MGen::DeltaAnd(Dir::Bw, f.clone()));
    out.push(MGen::SigmaAnd(Dir::Bw, f.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::Generator;
    use crate::parse::{parse_formula, parse_strict};

    #[test]
    fn bare_generators_have_the_right_source() {
        for text in [
            "(p/\\q)\\/(bot/\\bot)",
            "top\\/top",
            "bot",
            "p\\/q\\/r",
            "p/\\(q\\/r)",
        ] {
            let x = parse_strict(text).unwrap();
            for g in bare_generators(&x) {
                assert_eq!(g.source(), x, "{g:?}");
            }
        }
    }

    #[test]
    fn first_ck_from_padded_disjunction() {
        let x = parse_strict("(p/\\q)\\/(bot/\\bot)").unwrap();
        let y = parse_strict("p/\\q").unwrap();
        let g = bare_generators(&x)
            .into_iter()
            .find(|g| g.target() == y)
            .unwrap();
        let s = |t: &str| parse_strict(t).unwrap();
        assert_eq!(g, StGen::Ck(s("p"), s("q"), s("bot"), s("bot")));
    }

    #[test]
    fn heads_typecheck() {
        for text in [
            "(p/\\q)\\/(bot/\\bot)",
            "top",
            "p\\/q\\/(r/\\s)",
            "(bot\\/top)/\\p",
        ] {
            let x = parse_strict(text).unwrap();
            let hs = st_single_heads(&x);
            assert!(!hs.is_empty());
            for h in hs {
                assert_eq!(h.source().unwrap(), x, "{h}");
                assert_eq!(h.generators().len(), 1);
            }
            let f = parse_formula(text).unwrap();
            for h in m_single_heads(&f) {
                assert_eq!(h.source().unwrap(), f, "{h}");
                assert_eq!(h.generators().len(), 1);
            }
        }
    }
}
