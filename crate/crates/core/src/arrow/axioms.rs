use crate::error::{Error, Result};
use crate::syntax::Formula;

use super::gens::{Dir, MGen, MTerm};
use super::term::Term;

/// Identifiers accepted by [`axiom_legs`], with their parameter counts.
pub const AXIOMS: &[(&str, usize)] = &[
    ("1", 6),
    ("2", 6),
    ("3", 4),
    ("4", 4),
    ("5", 2),
    ("6", 2),
    ("7", 0),
    ("8", 0),
    ("9", 0),
    ("10", 0),
    ("11", 0),
    ("12", 0),
    ("13", 0),
    ("1s", 6),
    ("2s", 6),
    ("nat-kappa-or-l", 0),
    ("nat-kappa-or-r", 0),
    ("nat-kappa-and-l", 0),
    ("nat-kappa-and-r", 0),
    ("nat-ck", 4),
];

pub fn axiom_arity(id: &str) -> Option<usize> {
    AXIOMS.iter().find(|(k, _)| *k == id).map(|(_, n)| *n)
}

fn g(x: MGen) -> MTerm {
    Term::Gen(x)
}

fn id(a: &Formula) -> MTerm {
    Term::Id(a.clone())
}

fn comp(fs: Vec<MTerm>) -> MTerm {
    // listed first applied first
    let mut it = fs.into_iter();
    let mut acc = it.next().expect("nonempty chain");
    for f in it {
        acc = Term::Comp(Box::new(f), Box::new(acc));
    }
    acc
}

fn or(f: MTerm, h: MTerm) -> MTerm {
    Term::raw_tensor(crate::syntax::Op::Or, f, h)
}

fn and(f: MTerm, h: MTerm) -> MTerm {
    Term::raw_tensor(crate::syntax::Op::And, f, h)
}

fn ck(a: &Formula, b: &Formula, c: &Formula, d: &Formula) -> MTerm {
    g(MGen::Ck(a.clone(), b.clone(), c.clone(), d.clone()))
}

fn b_and(a: &Formula, b: &Formula, c: &Formula) -> MTerm {
    g(MGen::BAnd(Dir::Fw, a.clone(), b.clone(), c.clone()))
}

fn b_or(dir: Dir, a: &Formula, b: &Formula, c: &Formula) -> MTerm {
    g(MGen::BOr(dir, a.clone(), b.clone(), c.clone()))
}

/// The two legs of a commuting diagram, as a pair of parallel terms.
pub fn axiom_legs(id_: &str, params: &[Formula]) -> Result<(MTerm, MTerm)> {
    let Some(arity) = axiom_arity(id_) else {
        return Err(Error::BadParams(format!("unknown axiom {id_}")));
    };
    if params.len() != arity {
        return Err(Error::BadParams(format!(
            "axiom {id_} takes {arity} formulae, got {}",
            params.len()
        )));
    }
    let p = params;
    let or_f = Formula::or;
    let and_f = Formula::and;
    let (top, bot) = (Formula::Top, Formula::Bot);
    let legs = match id_ {
        "1" => {
            let (a, b, c, d, e, f) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]);
            let left = comp(vec![
                ck(
                    a,
                    &and_f(b.clone(), c.clone()),
                    d,
                    &and_f(e.clone(), f.clone()),
                ),
                and(id(&or_f(a.clone(), d.clone())), ck(b, c, e, f)),
                b_and(
                    &or_f(a.clone(), d.clone()),
                    &or_f(b.clone(), e.clone()),
                    &or_f(c.clone(), f.clone()),
                ),
            ]);
            let right = comp(vec![
                or(b_and(a, b, c), b_and(d, e, f)),
                ck(
                    &and_f(a.clone(), b.clone()),
                    c,
                    &and_f(d.clone(), e.clone()),
                    f,
                ),
                and(ck(a, b, d, e), id(&or_f(c.clone(), f.clone()))),
            ]);
            (left, right)
        }
        "2" => {
            let (a, b, c, d, e, f) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]);
            let left = comp(vec![
                or(id(&and_f(a.clone(), d.clone())), ck(b, e, c, f)),
                ck(
                    a,
                    d,
                    &or_f(b.clone(), c.clone()),
                    &or_f(e.clone(), f.clone()),
                ),
                and(b_or(Dir::Fw, a, b, c), b_or(Dir::Fw, d, e, f)),
            ]);
            let right = comp(vec![
                b_or(
                    Dir::Fw,
                    &and_f(a.clone(), d.clone()),
                    &and_f(b.clone(), e.clone()),
                    &and_f(c.clone(), f.clone()),
                ),
                or(ck(a, d, b, e), id(&and_f(c.clone(), f.clone()))),
                ck(
                    &or_f(a.clone(), b.clone()),
                    &or_f(d.clone(), e.clone()),
                    c,
                    f,
                ),
            ]);
            (left, right)
        }
        "3" => {
            let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
            let left = comp(vec![
                ck(a, b, c, d),
                g(MGen::CAnd(
                    or_f(a.clone(), c.clone()),
                    or_f(b.clone(), d.clone()),
                )),
            ]);
            let right = comp(vec![
                or(
                    g(MGen::CAnd(a.clone(), b.clone())),
                    g(MGen::CAnd(c.clone(), d.clone())),
                ),
                ck(b, a, d, c),
            ]);
            (left, right)
        }
        "4" => {
            let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
            let left = comp(vec![
                g(MGen::COr(
                    and_f(a.clone(), c.clone()),
                    and_f(b.clone(), d.clone()),
                )),
                ck(b, d, a, c),
            ]);
            let right = comp(vec![
                ck(a, c, b, d),
                and(
                    g(MGen::COr(a.clone(), b.clone())),
                    g(MGen::COr(c.clone(), d.clone())),
                ),
            ]);
            (left, right)
        }
        "5" => {
            let (a, b) = (&p[0], &p[1]);
            let ab = and_f(a.clone(), b.clone());
            let left = ck(a, b, &bot, &bot);
            let right = comp(vec![
                or(id(&ab), g(MGen::WAndBot(Dir::Fw))),
                g(MGen::DeltaOr(Dir::Fw, ab)),
                and(
                    g(MGen::DeltaOr(Dir::Bw, a.clone())),
                    g(MGen::DeltaOr(Dir::Bw, b.clone())),
                ),
            ]);
            (left, right)
        }
        "6" => {
            let (a, b) = (&p[0], &p[1]);
            let left = ck(a, &top, b, &top);
            let right = comp(vec![
                or(
                    g(MGen::DeltaAnd(Dir::Fw, a.clone())),
                    g(MGen::DeltaAnd(Dir::Fw, b.clone())),
                ),
                g(MGen::DeltaAnd(Dir::Bw, or_f(a.clone(), b.clone()))),
                and(id(&or_f(a.clone(), b.clone())), g(MGen::WOrTop(Dir::Bw))),
            ]);
            (left, right)
        }
        "7" => (
            b_or(Dir::Fw, &top, &top, &top),
            comp(vec![
                or(id(&top), g(MGen::WOrTop(Dir::Fw))),
                or(g(MGen::WOrTop(Dir::Bw)), id(&top)),
            ]),
        ),
        "8" => (
            g(MGen::BAnd(Dir::Fw, bot.clone(), bot.clone(), bot.clone())),
            comp(vec![
                and(id(&bot), g(MGen::WAndBot(Dir::Fw))),
                and(g(MGen::WAndBot(Dir::Bw)), id(&bot)),
            ]),
        ),
        "9" => (
            comp(vec![or(id(&top), g(MGen::Kappa)), g(MGen::WOrTop(Dir::Fw))]),
            g(MGen::DeltaOr(Dir::Fw, top.clone())),
        ),
        "10" => (
            and(id(&bot), g(MGen::Kappa)),
            comp(vec![
                g(MGen::WAndBot(Dir::Fw)),
                g(MGen::DeltaAnd(Dir::Bw, bot.clone())),
            ]),
        ),
        "11" => (
            ck(&top, &bot, &bot, &top),
            comp(vec![
                or(
                    g(MGen::SigmaAnd(Dir::Fw, bot.clone())),
                    g(MGen::DeltaAnd(Dir::Fw, bot.clone())),
                ),
                g(MGen::DeltaOr(Dir::Fw, bot.clone())),
                g(MGen::Kappa),
                g(MGen::DeltaAnd(Dir::Bw, top.clone())),
                and(
                    g(MGen::DeltaOr(Dir::Bw, top.clone())),
                    g(MGen::SigmaOr(Dir::Bw, top.clone())),
                ),
            ]),
        ),
        "12" => (
            g(MGen::COr(top.clone(), top.clone())),
            comp(vec![g(MGen::WOrTop(Dir::Fw)), g(MGen::WOrTop(Dir::Bw))]),
        ),
        "13" => (
            g(MGen::CAnd(bot.clone(), bot.clone())),
            comp(vec![g(MGen::WAndBot(Dir::Fw)), g(MGen::WAndBot(Dir::Bw))]),
        ),
        "1s" => {
            let (u, v, w, x, y, z) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]);
            let (vw, yz) = (and_f(v.clone(), w.clone()), and_f(y.clone(), z.clone()));
            let (ux, vy, wz) = (
                or_f(u.clone(), x.clone()),
                or_f(v.clone(), y.clone()),
                or_f(w.clone(), z.clone()),
            );
            let left = comp(vec![
                ck(u, &vw, x, &yz),
                and(id(&ux), ck(v, w, y, z)),
                b_and(&ux, &vy, &wz),
            ]);
            let right = comp(vec![
                or(b_and(u, v, w), b_and(x, y, z)),
                ck(
                    &and_f(u.clone(), v.clone()),
                    w,
                    &and_f(x.clone(), y.clone()),
                    z,
                ),
                and(ck(u, v, x, y), id(&wz)),
            ]);
            (left, right)
        }
        "2s" => {
            let (u, v, w, x, y, z) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]);
            let (ux, vy, wz) = (
                and_f(u.clone(), x.clone()),
                and_f(v.clone(), y.clone()),
                and_f(w.clone(), z.clone()),
            );
            let left = comp(vec![
                or(id(&ux), ck(v, y, w, z)),
                ck(
                    u,
                    x,
                    &or_f(v.clone(), w.clone()),
                    &or_f(y.clone(), z.clone()),
                ),
            ]);
            let right = comp(vec![
                b_or(Dir::Fw, &ux, &vy, &wz),
                or(ck(u, x, v, y), id(&wz)),
                ck(
                    &or_f(u.clone(), v.clone()),
                    &or_f(x.clone(), y.clone()),
                    w,
                    z,
                ),
                and(b_or(Dir::Bw, u, v, w), b_or(Dir::Bw, x, y, z)),
            ]);
            (left, right)
        }
        "nat-kappa-or-l" => (
            or(g(MGen::Kappa), id(&bot)),
            comp(vec![
                g(MGen::DeltaOr(Dir::Fw, bot.clone())),
                g(MGen::Kappa),
                g(MGen::DeltaOr(Dir::Bw, top.clone())),
            ]),
        ),
        "nat-kappa-or-r" => (
            or(id(&bot), g(MGen::Kappa)),
            comp(vec![
                g(MGen::SigmaOr(Dir::Fw, bot.clone())),
                g(MGen::Kappa),
                g(MGen::SigmaOr(Dir::Bw, top.clone())),
            ]),
        ),
        "nat-kappa-and-l" => (
            and(g(MGen::Kappa), id(&top)),
            comp(vec![
                g(MGen::DeltaAnd(Dir::Fw, bot.clone())),
                g(MGen::Kappa),
                g(MGen::DeltaAnd(Dir::Bw, top.clone())),
            ]),
        ),
        "nat-kappa-and-r" => (
            and(id(&top), g(MGen::Kappa)),
            comp(vec![
                g(MGen::SigmaAnd(Dir::Fw, bot.clone())),
                g(MGen::Kappa),
                g(MGen::SigmaAnd(Dir::Bw, top.clone())),
            ]),
        ),
        "nat-ck" => {
            let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
            let pad = |x: &Formula| g(MGen::DeltaOr(Dir::Bw, x.clone()));
            let primed: Vec<Formula> = p.iter().map(|x| or_f(x.clone(), bot.clone())).collect();
            let left = comp(vec![
                or(and(pad(a), pad(b)), and(pad(c), pad(d))),
                ck(&primed[0], &primed[1], &primed[2], &primed[3]),
            ]);
            let right = comp(vec![
                ck(a, b, c, d),
                and(or(pad(a), pad(c)), or(pad(b), pad(d))),
            ]);
            (left, right)
        }
        _ => unreachable!("arity table covers every id"),
    };
    Ok(legs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;

    fn letters(n: usize) -> Vec<Formula> {
        ["p", "q", "r", "s", "t", "u"][..n]
            .iter()
            .map(|x| parse_formula(x).unwrap())
            .collect()
    }

    #[test]
    fn every_axiom_is_parallel() {
        for (k, n) in AXIOMS {
            let (l, r) = axiom_legs(k, &letters(*n)).unwrap();
            let (tl, tr) = (l.typecheck().unwrap(), r.typecheck().unwrap());
            assert_eq!(tl, tr, "axiom {k}");
        }
    }

    #[test]
    fn ck_counts_differ_only_where_a_ck_meets_units() {
        let differ: Vec<&str> = AXIOMS
            .iter()
            .filter(|(k, n)| {
                let (l, r) = axiom_legs(k, &letters(*n)).unwrap();
                l.ck_count() != r.ck_count()
            })
            .map(|(k, _)| *k)
            .collect();
        assert_eq!(differ, ["5", "6", "11"]);
    }

    #[test]
    fn example_endpoints() {
        let (l, _) = axiom_legs("3", &letters(4)).unwrap();
        assert_eq!(
            l.source().unwrap(),
            parse_formula("(p/\\q)\\/(r/\\s)").unwrap()
        );
        let (l, _) = axiom_legs("11", &[]).unwrap();
        assert_eq!(
            l.source().unwrap(),
            parse_formula("(top/\\bot)\\/(bot/\\top)").unwrap()
        );
        assert_eq!(
            l.target().unwrap(),
            parse_formula("(top\\/bot)/\\(bot\\/top)").unwrap()
        );
        let (l, _) = axiom_legs("9", &[]).unwrap();
        assert_eq!(l.source().unwrap(), parse_formula("top\\/bot").unwrap());
        assert_eq!(l.target().unwrap(), Formula::Top);
        let (l, r) = axiom_legs("1s", &letters(6)).unwrap();
        assert_eq!((l.ck_count(), r.ck_count()), (2, 2));
    }

    #[test]
    fn bad_params() {
        assert!(matches!(
            axiom_legs("3", &letters(2)),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(axiom_legs("14", &[]), Err(Error::BadParams(_))));
    }
}
