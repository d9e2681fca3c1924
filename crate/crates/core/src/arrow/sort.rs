use crate::error::{Error, Result};
use crate::syntax::{Op, StrictObject};

use super::gens::{StGen, StTerm};
use super::term::Term;

/// `h` placed between identities on the folded prefix and suffix of an `op`-list.
pub fn in_context(op: Op, prefix: &[StrictObject], h: StTerm, suffix: &[StrictObject]) -> StTerm {
    let mut t = h;
    if !prefix.is_empty() {
        t = Term::raw_tensor(
            op,
            Term::Id(StrictObject::fold(op, prefix.iter().cloned())),
            t,
        );
    }
    if !suffix.is_empty() {
        t = Term::raw_tensor(
            op,
            t,
            Term::Id(StrictObject::fold(op, suffix.iter().cloned())),
        );
    }
    t
}

fn swap_gen(op: Op, a: &StrictObject, b: &StrictObject) -> StTerm {
    match op {
        Op::Or => Term::Gen(StGen::COr(a.clone(), b.clone())),
        Op::And => Term::Gen(StGen::CAnd(a.clone(), b.clone())),
    }
}

/// Steps from `x` to `x.sorted()`: children first, then a bubble sort by
/// adjacent transpositions.
pub fn to_sorted_steps(x: &StrictObject) -> Vec<StTerm> {
    let Some(op) = x.list_op() else {
        return Vec::new();
    };
    let mut cur: Vec<StrictObject> = x.children().to_vec();
    let mut steps = Vec::new();
    for k in 0..cur.len() {
        let inner = to_sorted_steps(&cur[k]);
        if inner.is_empty() {
            continue;
        }
        for s in inner {
            steps.push(in_context(op, &cur[..k], s, &cur[k + 1..]));
        }
        cur[k] = cur[k].sorted();
    }
    let n = cur.len();
    for pass in 0..n {
        for i in 0..n - 1 - pass {
            if cur[i] > cur[i + 1] {
                let h = swap_gen(op, &cur[i], &cur[i + 1]);
                steps.push(in_context(op, &cur[..i], h, &cur[i + 2..]));
                cur.swap(i, i + 1);
            }
        }
    }
    steps
}

pub fn to_sorted(x: &StrictObject) -> StTerm {
    Term::compose_all(to_sorted_steps(x), x.clone())
}

/// An arrow A → B built from symmetries only.
pub fn sort_iso(a: &StrictObject, b: &StrictObject) -> Result<StTerm> {
    if a.sorted() != b.sorted() {
        return Err(Error::NotPermutationEquivalent(
            a.to_string(),
            b.to_string(),
        ));
    }
    let back = to_sorted(b).inverse().expect("symmetries are invertible");
    Ok(Term::comp(back, to_sorted(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_strict;

    #[test]
    fn single_swap() {
        let a = parse_strict("p\\/q").unwrap();
        let b = parse_strict("q\\/p").unwrap();
        let t = sort_iso(&a, &b).unwrap();
        assert_eq!(
            t,
            Term::Gen(StGen::COr(a.children()[0].clone(), a.children()[1].clone()))
        );
    }

    #[test]
    fn cyclic_is_two_swaps() {
        let a = parse_strict("p\\/q\\/r").unwrap();
        let b = parse_strict("r\\/p\\/q").unwrap();
        let t = sort_iso(&a, &b).unwrap();
        assert_eq!(t.generators().len(), 2);
        let ty = t.typecheck().unwrap();
        assert_eq!((ty.source, ty.target), (a.clone(), b));
        assert_eq!(sort_iso(&a, &a).unwrap(), Term::Id(a));
    }

    #[test]
    fn nested_lists() {
        let a = parse_strict("(q/\\p)\\/(t\\/s)").unwrap();
        let b = parse_strict("s\\/t\\/(p/\\q)").unwrap();
        let t = sort_iso(&a, &b).unwrap();
        let ty = t.typecheck().unwrap();
        assert_eq!((ty.source, ty.target), (a, b));
        let c = parse_strict("p/\\q").unwrap();
        assert!(sort_iso(&c, &parse_strict("p\\/q").unwrap()).is_err());
    }
}
