//! Unit elimination: the directed isomorphisms onto unit-reduced objects, the
//! letterless fragment and the reduction of arrows between pure objects.

use crate::arrow::{in_context, Dir, Generator, StGen, StTerm, Term};
use crate::error::{Error, Result};
use crate::syntax::{Op, StrictObject, Unit};

/// Factors of `unit_iso(x)`, each applied to the previous target.
pub fn unit_iso_steps(x: &StrictObject) -> Vec<StTerm> {
    let Some(op) = x.list_op() else {
        return Vec::new();
    };
    let dual = StrictObject::unit(op.dual().unit());
    let merge = match op {
        Op::Or => StGen::WOrTop(Dir::Fw),
        Op::And => StGen::WAndBot(Dir::Fw),
    };
    let cs = x.children();
    let mut steps = Vec::new();
    let mut done: Vec<StrictObject> = Vec::new();
    for (k, c) in cs.iter().enumerate() {
        for s in unit_iso_steps(c) {
            steps.push(in_context(op, &done, s, &cs[k + 1..]));
        }
        done.extend(c.nu().pieces(op));
    }
    let mut i = 0;
    while i + 1 < done.len() {
        if done[i] == dual && done[i + 1] == dual {
            steps.push(in_context(
                op,
                &done[..i],
                Term::Gen(merge.clone()),
                &done[i + 2..],
            ));
            done.remove(i + 1);
        } else {
            i += 1;
        }
    }
    steps
}

/// The isomorphism i_A: A → ν(A) built from forward w's, innermost and leftmost first.
pub fn unit_iso(x: &StrictObject) -> StTerm {
    Term::compose_all(unit_iso_steps(x), x.clone())
}

/// The inverse of `unit_iso(x)`, going from ν(A) back to A.
pub fn unit_iso_inv(x: &StrictObject) -> StTerm {
    unit_iso(x).inverse().expect("w generators are invertible")
}

/// The canonical arrow between letterless objects, or None when the reduced
/// source is ⊤ and the reduced target ⊥.
pub fn letterless_arrow(a: &StrictObject, b: &StrictObject) -> Result<Option<StTerm>> {
    for x in [a, b] {
        if !x.is_letterless() {
            return Err(Error::NotLetterless(x.to_string()));
        }
    }
    let (na, nb) = (a.nu(), b.nu());
    let mid = match (na.as_unit(), nb.as_unit()) {
        (Some(u), Some(v)) if u == v => Term::Id(na.clone()),
        (Some(Unit::Bot), Some(Unit::Top)) => Term::Gen(StGen::Kappa),
        (Some(Unit::Top), Some(Unit::Bot)) => return Ok(None),
        _ => {
            return Err(Error::Internal(format!(
                "letterless objects reduce to units: {na}, {nb}"
            )))
        }
    };
    Ok(Some(Term::comp(
        unit_iso_inv(b),
        Term::comp(mid, unit_iso(a)),
    )))
}

enum Reduced {
    Units(Unit, Unit),
    Free(StTerm),
}

fn unit_of(x: &StrictObject) -> Result<Unit> {
    x.nu()
        .as_unit()
        .ok_or_else(|| Error::Internal(format!("{x} is letterless but does not reduce to a unit")))
}

fn free_nu(x: &StrictObject) -> Result<StrictObject> {
    let n = x.nu();
    if n.is_unit_free() {
        Ok(n)
    } else {
        Err(Error::NotPure(x.to_string()))
    }
}

fn reduce(t: &StTerm) -> Result<Reduced> {
    Ok(match t {
        Term::Id(a) => {
            if a.is_letterless() {
                let u = unit_of(a)?;
                Reduced::Units(u, u)
            } else {
                Reduced::Free(Term::Id(free_nu(a)?))
            }
        }
        Term::Gen(g) => {
            let (s, tg) = (g.source(), g.target());
            if s.is_letterless() {
                return Ok(Reduced::Units(unit_of(&s)?, unit_of(&tg)?));
            }
            let (ns, nt) = (free_nu(&s)?, free_nu(&tg)?);
            match g {
                StGen::COr(a, b) | StGen::CAnd(a, b) => {
                    let op = if matches!(g, StGen::COr(..)) {
                        Op::Or
                    } else {
                        Op::And
                    };
                    let (na, nb) = (a.nu(), b.nu());
                    if na.as_unit().is_some() || nb.as_unit().is_some() {
                        // the absorbed unit makes the symmetry trivial; the other unit is impure
                        Reduced::Free(Term::Id(ns))
                    } else {
                        Reduced::Free(Term::Gen(match op {
                            Op::Or => StGen::COr(na, nb),
                            Op::And => StGen::CAnd(na, nb),
                        }))
                    }
                }
                StGen::Ck(a, b, c, d) => {
                    let idx = [a.nu(), b.nu(), c.nu(), d.nu()];
                    if idx.iter().any(|x| x.as_unit().is_some()) {
                        if ns != nt {
                            return Err(Error::Internal(format!(
                                "unit-indexed ck between {ns} and {nt}"
                            )));
                        }
                        Reduced::Free(Term::Id(ns))
                    } else {
                        let [a, b, c, d] = idx;
                        Reduced::Free(Term::Gen(StGen::Ck(a, b, c, d)))
                    }
                }
                _ => {
                    return Err(Error::Internal(format!(
                        "unit generator {} with letters",
                        g.render(Default::default())
                    )))
                }
            }
        }
        Term::Comp(g, f) => match (reduce(g)?, reduce(f)?) {
            (Reduced::Units(_, ut), Reduced::Units(us, _)) => Reduced::Units(us, ut),
            (Reduced::Free(g), Reduced::Free(f)) => Reduced::Free(Term::comp(g, f)),
            _ => {
                return Err(Error::Internal(
                    "composition of letterless and lettered parts".into(),
                ))
            }
        },
        Term::Or(f, g) | Term::And(f, g) => {
            let op = if matches!(t, Term::Or(..)) {
                Op::Or
            } else {
                Op::And
            };
            let absorbed = op.unit();
            match (reduce(f)?, reduce(g)?) {
                (Reduced::Units(a, b), Reduced::Units(c, d)) => {
                    let comb = |x: Unit, y: Unit| if op == Op::Or { x.join(y) } else { x.meet(y) };
                    Reduced::Units(comb(a, c), comb(b, d))
                }
                (Reduced::Free(h), Reduced::Units(us, ut))
                | (Reduced::Units(us, ut), Reduced::Free(h)) => {
                    if us != absorbed || ut != absorbed {
                        return Err(Error::NotPure(t.to_string()));
                    }
                    Reduced::Free(h)
                }
                (Reduced::Free(h), Reduced::Free(k)) => Reduced::Free(Term::tensor(op, h, k)),
            }
        }
    })
}

/// Reduce an arrow A → B between pure objects to a unit-free arrow ν(A) → ν(B)
/// with f = inv(i_B) ∘ f' ∘ i_A.
pub fn unit_reduce(f: &StTerm) -> Result<StTerm> {
    let ty = f.typecheck()?;
    for x in [&ty.source, &ty.target] {
        if !x.purity().pure() {
            return Err(Error::NotPure(x.to_string()));
        }
    }
    match reduce(f)? {
        Reduced::Free(h) => h.simplify(),
        Reduced::Units(..) => Err(Error::NotPure(ty.source.to_string())),
    }
}
