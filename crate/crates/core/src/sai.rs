//! Coherence for the unit-free commutative strict category: splitting, letter
//! deletion on terms, canonical arrows between form sets and a brute-force
//! reachability oracle.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::arrow::{Generator, MTerm, SaiGen, SaiTerm, Term};
use crate::error::{Error, Result};
use crate::syntax::{FormMultiset, Letter, Op};

/// Convert a term over formulae into the commutative unit-free flavor.
pub fn to_sai_term(t: &MTerm) -> Result<SaiTerm> {
    t.strictify().to_sai()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    Splitting,
    Nonsplitting,
    Mixed,
}

fn ck_is_splitting(g: &SaiGen, l1: &BTreeSet<Letter>, l2: &BTreeSet<Letter>) -> bool {
    let [s, t, u, v] = g.0.parts();
    let st: BTreeSet<Letter> = s.letters().union(&t.letters()).cloned().collect();
    let uv: BTreeSet<Letter> = u.letters().union(&v.letters()).cloned().collect();
    (st.is_subset(l1) && uv.is_subset(l2)) || (st.is_subset(l2) && uv.is_subset(l1))
}

/// Classify the ck occurrences of `u: X1 ∨ X2 → Y` by whether they separate X1 from X2.
pub fn is_splitting_term(u: &SaiTerm, x1: &FormMultiset, x2: &FormMultiset) -> Result<Splitting> {
    let src = u.source()?;
    if src != x1.or(x2) {
        return Err(Error::SourceMismatch(format!("{src} is not {}", x1.or(x2))));
    }
    let (l1, l2) = (x1.letters(), x2.letters());
    let flags: Vec<bool> = u
        .generators()
        .into_iter()
        .map(|g| ck_is_splitting(g, &l1, &l2))
        .collect();
    Ok(if flags.iter().all(|&b| b) {
        Splitting::Splitting
    } else if flags.iter().all(|&b| !b) {
        Splitting::Nonsplitting
    } else {
        Splitting::Mixed
    })
}

/// For every conjunction node, either all or none of its conjuncts lose all their letters.
pub fn deletion_condition(x: &FormMultiset, p: &BTreeSet<Letter>) -> bool {
    let mut ok = true;
    x.visit(&mut |n| {
        if n.op() == Some(Op::And) {
            let gone = n
                .children()
                .iter()
                .filter(|c| c.letters().is_subset(p))
                .count();
            if gone != 0 && gone != n.children().len() {
                ok = false;
            }
        }
    });
    ok
}

/// The term u with the letters of `p` deleted: X^{-P} → Y^{-P}.
pub fn delete_letters_term(u: &SaiTerm, p: &BTreeSet<Letter>) -> Result<SaiTerm> {
    let src = u.source()?;
    if src.letters().is_subset(p) {
        return Err(Error::PreconditionViolated(format!(
            "every letter of {src} is deleted"
        )));
    }
    if !deletion_condition(&src, p) {
        return Err(Error::PreconditionViolated(format!(
            "a conjunction of {src} is only partly deleted"
        )));
    }
    delete_inner(u, p)
}

fn delete_inner(u: &SaiTerm, p: &BTreeSet<Letter>) -> Result<SaiTerm> {
    Ok(match u {
        Term::Id(x) => Term::Id(x.delete_letters(p)?),
        Term::Gen(g) => {
            let [s, t, a, b] = g.0.parts();
            let gone = |x: &FormMultiset, y: &FormMultiset| {
                x.letters().is_subset(p) && y.letters().is_subset(p)
            };
            if gone(s, t) || gone(a, b) {
                Term::Id(g.source().delete_letters(p)?)
            } else {
                let d = |x: &FormMultiset| x.delete_letters(p);
                SaiTerm::ck(&d(s)?, &d(t)?, &d(a)?, &d(b)?)
            }
        }
        Term::Comp(g, f) => Term::comp(delete_inner(g, p)?, delete_inner(f, p)?),
        Term::Or(f, g) | Term::And(f, g) => {
            let op = if matches!(u, Term::Or(..)) {
                Op::Or
            } else {
                Op::And
            };
            let f_gone = f.source()?.letters().is_subset(p);
            let g_gone = g.source()?.letters().is_subset(p);
            match (f_gone, g_gone) {
                (false, true) => delete_inner(f, p)?,
                (true, false) => delete_inner(g, p)?,
                (false, false) => Term::tensor(op, delete_inner(f, p)?, delete_inner(g, p)?),
                (true, true) => return Err(Error::AllLettersDeleted(u.source()?.to_string())),
            }
        }
    })
}

/// The canonical arrow X → Y between form sets, if one exists.
pub fn canonical_sai_arrow(x: &FormMultiset, y: &FormMultiset) -> Result<Option<SaiTerm>> {
    for z in [x, y] {
        if !z.is_form_set() {
            return Err(Error::NotDiversified(z.to_string()));
        }
    }
    if x.letters() != y.letters() {
        return Ok(None);
    }
    Ok(canon(x, y))
}

/// Split the `op`-pieces of `y` into those inside `letters` and the rest; None
/// if some piece straddles or either side is empty.
fn partition(
    y: &FormMultiset,
    op: Op,
    letters: &BTreeSet<Letter>,
) -> Option<(FormMultiset, FormMultiset)> {
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for c in y.pieces(op) {
        let ls = c.letters();
        if ls.is_subset(letters) {
            inside.push(c);
        } else if ls.is_disjoint(letters) {
            outside.push(c);
        } else {
            return None;
        }
    }
    if inside.is_empty() || outside.is_empty() {
        return None;
    }
    Some((
        FormMultiset::bag(op, inside),
        FormMultiset::bag(op, outside),
    ))
}

fn first_and_rest(x: &FormMultiset) -> (FormMultiset, FormMultiset) {
    let cs = x.children();
    let op = x.op().expect("bag");
    (
        cs[0].clone(),
        FormMultiset::bag(op, cs[1..].iter().cloned()),
    )
}

fn canon(x: &FormMultiset, y: &FormMultiset) -> Option<SaiTerm> {
    match (x.op(), y.op()) {
        (None, _) => (x == y).then(|| Term::Id(x.clone())),
        (Some(Op::And), _) => {
            let (x1, x2) = first_and_rest(x);
            let (y1, y2) = partition(y, Op::And, &x1.letters())?;
            Some(Term::and(canon(&x1, &y1)?, canon(&x2, &y2)?))
        }
        (Some(Op::Or), Some(Op::Or)) => {
            let (y1, y2) = first_and_rest(y);
            let (x1, x2) = partition(x, Op::Or, &y1.letters())?;
            Some(Term::or(canon(&x1, &y1)?, canon(&x2, &y2)?))
        }
        (Some(Op::Or), Some(Op::And)) => {
            let (x1, x2) = first_and_rest(x);
            let (y1, y2) = first_and_rest(y);
            let (l1, l2) = (x1.letters(), x2.letters());
            let y_1 = y.delete_letters(&l2).ok()?;
            let y_2 = y.delete_letters(&l1).ok()?;
            let v1 = canon(&x1, &y_1)?;
            let v2 = canon(&x2, &y_2)?;
            let a = y1.delete_letters(&l2).ok()?;
            let b = y2.delete_letters(&l2).ok()?;
            let c = y1.delete_letters(&l1).ok()?;
            let d = y2.delete_letters(&l1).ok()?;
            let u1 = canon(&a.or(&c), &y1)?;
            let u2 = canon(&b.or(&d), &y2)?;
            let mid = SaiTerm::ck(&a, &b, &c, &d);
            if mid.source().ok()? != y_1.or(&y_2) {
                return None;
            }
            Some(Term::comp(
                Term::and(u1, u2),
                Term::comp(mid, Term::or(v1, v2)),
            ))
        }
        (Some(Op::Or), None) => None,
    }
}

fn bipartitions(x: &FormMultiset) -> Vec<(FormMultiset, FormMultiset)> {
    let cs = x.children();
    let k = cs.len();
    let mut out = Vec::new();
    for mask in 1..(1u32 << k) - 1 {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, c) in cs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                a.push(c.clone());
            } else {
                b.push(c.clone());
            }
        }
        out.push((FormMultiset::bag(Op::And, a), FormMultiset::bag(Op::And, b)));
    }
    out
}

/// Every single-head ck term with source `x`, with its target.
pub fn enumerate_single_heads(x: &FormMultiset) -> Vec<(SaiTerm, FormMultiset)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (t, y) in heads(x) {
        if seen.insert(t.clone()) {
            out.push((t, y));
        }
    }
    out
}

fn heads(x: &FormMultiset) -> Vec<(SaiTerm, FormMultiset)> {
    let Some(op) = x.op() else {
        return Vec::new();
    };
    let cs = x.children();
    let mut out = Vec::new();
    let without = |skip: &[usize]| -> Vec<FormMultiset> {
        cs.iter()
            .enumerate()
            .filter(|(i, _)| !skip.contains(i))
            .map(|(_, c)| c.clone())
            .collect()
    };
    if op == Op::Or {
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                if cs[i].op() != Some(Op::And) || cs[j].op() != Some(Op::And) {
                    continue;
                }
                let rest = without(&[i, j]);
                for (s, t) in bipartitions(&cs[i]) {
                    for (u, v) in bipartitions(&cs[j]) {
                        let g = SaiTerm::ck(&s, &t, &u, &v);
                        let tgt = g.target().expect("generator");
                        if rest.is_empty() {
                            out.push((g, tgt));
                        } else {
                            let r = FormMultiset::bag(Op::Or, rest.clone());
                            let y = tgt.or(&r);
                            out.push((Term::raw_tensor(Op::Or, g, Term::Id(r)), y));
                        }
                    }
                }
            }
        }
    }
    for i in 0..cs.len() {
        if i > 0 && cs[i] == cs[i - 1] {
            continue;
        }
        let r = FormMultiset::bag(op, without(&[i]));
        for (h, tgt) in heads(&cs[i]) {
            let y = FormMultiset::bag(op, [tgt, r.clone()]);
            out.push((Term::raw_tensor(op, h, Term::Id(r.clone())), y));
        }
    }
    out
}

/// All form sets in which each letter of `letters` occurs exactly once.
pub fn enumerate_form_sets(letters: &[Letter]) -> Vec<FormMultiset> {
    let mut memo = HashMap::new();
    let mut ls = letters.to_vec();
    ls.sort();
    ls.dedup();
    let mut out = forms(&ls, None, &mut memo);
    out.sort();
    out
}

type FormMemo = HashMap<(Vec<Letter>, Option<Op>), Vec<FormMultiset>>;

/// Form sets on `ls` whose main connective is not `banned`.
fn forms(ls: &[Letter], banned: Option<Op>, memo: &mut FormMemo) -> Vec<FormMultiset> {
    let key = (ls.to_vec(), banned);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut out = Vec::new();
    if ls.len() == 1 {
        out.push(FormMultiset::Letter(ls[0].clone()));
    } else {
        for op in [Op::Or, Op::And] {
            if Some(op) == banned {
                continue;
            }
            for blocks in set_partitions(ls) {
                if blocks.len() < 2 {
                    continue;
                }
                let mut acc: Vec<Vec<FormMultiset>> = vec![Vec::new()];
                for b in &blocks {
                    let opts = forms(b, Some(op), memo);
                    acc = acc
                        .into_iter()
                        .flat_map(|pre| {
                            opts.iter().map(move |o| {
                                let mut v = pre.clone();
                                v.push(o.clone());
                                v
                            })
                        })
                        .collect();
                }
                out.extend(acc.into_iter().map(|v| FormMultiset::bag(op, v)));
            }
        }
    }
    memo.insert(key, out.clone());
    out
}

fn set_partitions<T: Clone>(xs: &[T]) -> Vec<Vec<Vec<T>>> {
    let Some((first, rest)) = xs.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first.clone());
            out.push(q);
        }
        let mut q = p;
        q.insert(0, vec![first.clone()]);
        out.push(q);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reach {
    pub exists: bool,
    /// Lengths of all generator paths from source to target.
    pub path_lengths: BTreeSet<usize>,
    /// Objects reachable from the source.
    pub explored: usize,
}

fn explore(
    x: &FormMultiset,
    node_limit: usize,
) -> Result<BTreeMap<FormMultiset, Vec<FormMultiset>>> {
    let mut succ: BTreeMap<FormMultiset, Vec<FormMultiset>> = BTreeMap::new();
    let mut queue = VecDeque::from([x.clone()]);
    let mut seen = HashSet::from([x.clone()]);
    while let Some(n) = queue.pop_front() {
        if seen.len() > node_limit {
            return Err(Error::LimitExceeded(node_limit));
        }
        let mut next: Vec<FormMultiset> = enumerate_single_heads(&n)
            .into_iter()
            .map(|(_, t)| t)
            .collect();
        next.sort();
        next.dedup();
        for m in &next {
            if seen.insert(m.clone()) {
                queue.push_back(m.clone());
            }
        }
        succ.insert(n, next);
    }
    Ok(succ)
}

/// Search the graph of single-head ck steps from `x` for `y`.
pub fn reachability_oracle(x: &FormMultiset, y: &FormMultiset, node_limit: usize) -> Result<Reach> {
    let succ = explore(x, node_limit)?;
    let explored = succ.len();
    if !succ.contains_key(y) {
        return Ok(Reach {
            exists: false,
            path_lengths: BTreeSet::new(),
            explored,
        });
    }
    let path_lengths = match lengths_acyclic(x, y, &succ) {
        Some(ls) => ls,
        None => {
            let mut ls = BTreeSet::new();
            let mut on_path = HashSet::from([x.clone()]);
            simple_paths(x, y, &succ, &mut on_path, 0, &mut ls);
            ls
        }
    };
    Ok(Reach {
        exists: true,
        path_lengths,
        explored,
    })
}

/// Path lengths from `x` to every reachable object. Fails with
/// `CoherenceGuardFailed` if the reachable graph has a cycle.
pub fn reachable_lengths(
    x: &FormMultiset,
    node_limit: usize,
) -> Result<BTreeMap<FormMultiset, BTreeSet<usize>>> {
    let succ = explore(x, node_limit)?;
    let mut indeg: HashMap<&FormMultiset, usize> = succ.keys().map(|k| (k, 0)).collect();
    for ms in succ.values() {
        for m in ms {
            *indeg.get_mut(m).expect("explored") += 1;
        }
    }
    let mut out: BTreeMap<FormMultiset, BTreeSet<usize>> = BTreeMap::new();
    out.insert(x.clone(), BTreeSet::from([0]));
    let mut ready: Vec<&FormMultiset> = indeg
        .iter()
        .filter(|(_, d)| **d == 0)
        .map(|(k, _)| *k)
        .collect();
    let mut done = 0;
    while let Some(n) = ready.pop() {
        done += 1;
        let here = out.get(n).cloned().unwrap_or_default();
        for m in &succ[n] {
            let e = out.entry(m.clone()).or_default();
            e.extend(here.iter().map(|l| l + 1));
            let d = indeg.get_mut(m).expect("explored");
            *d -= 1;
            if *d == 0 {
                ready.push(m);
            }
        }
    }
    if done != succ.len() {
        return Err(Error::CoherenceGuardFailed(format!(
            "cycle among objects reachable from {x}"
        )));
    }
    Ok(out)
}

/// Path lengths by dynamic programming; None if the reachable graph has a cycle.
fn lengths_acyclic(
    x: &FormMultiset,
    y: &FormMultiset,
    succ: &BTreeMap<FormMultiset, Vec<FormMultiset>>,
) -> Option<BTreeSet<usize>> {
    fn go(
        n: &FormMultiset,
        y: &FormMultiset,
        succ: &BTreeMap<FormMultiset, Vec<FormMultiset>>,
        memo: &mut HashMap<FormMultiset, BTreeSet<usize>>,
        active: &mut HashSet<FormMultiset>,
    ) -> Option<BTreeSet<usize>> {
        if let Some(v) = memo.get(n) {
            return Some(v.clone());
        }
        if !active.insert(n.clone()) {
            return None;
        }
        let mut out = BTreeSet::new();
        if n == y {
            out.insert(0);
        }
        for m in &succ[n] {
            for l in go(m, y, succ, memo, active)? {
                out.insert(l + 1);
            }
        }
        active.remove(n);
        memo.insert(n.clone(), out.clone());
        Some(out)
    }
    go(x, y, succ, &mut HashMap::new(), &mut HashSet::new())
}

fn simple_paths(
    n: &FormMultiset,
    y: &FormMultiset,
    succ: &BTreeMap<FormMultiset, Vec<FormMultiset>>,
    on_path: &mut HashSet<FormMultiset>,
    depth: usize,
    out: &mut BTreeSet<usize>,
) {
    if n == y {
        out.insert(depth);
    }
    for m in &succ[n] {
        if on_path.insert(m.clone()) {
            simple_paths(m, y, succ, on_path, depth + 1, out);
            on_path.remove(m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_form, parse_term};

    fn f(t: &str) -> FormMultiset {
        parse_form(t).unwrap()
    }

    fn letters(s: &str) -> BTreeSet<Letter> {
        s.split_whitespace().map(Letter::new).collect()
    }

    #[test]
    fn splitting_examples() {
        let u =
            to_sai_term(&parse_term("(ck(p;q;s;t) & id(r\\/u)) . ck(p/\\q;r;s/\\t;u)").unwrap())
                .unwrap();
        assert_eq!(
            is_splitting_term(&u, &f("p/\\q/\\r"), &f("s/\\t/\\u")).unwrap(),
            Splitting::Splitting
        );
        let id = Term::Id(f("(p/\\q)\\/r"));
        assert_eq!(
            is_splitting_term(&id, &f("p/\\q"), &f("r")).unwrap(),
            Splitting::Splitting
        );
        let inner = Term::raw_tensor(
            Op::Or,
            SaiTerm::ck(&f("p"), &f("q"), &f("r"), &f("s")),
            Term::Id(f("t")),
        );
        let x1 = f("(p/\\q)\\/(r/\\s)");
        assert_eq!(
            is_splitting_term(&inner, &x1, &f("t")).unwrap(),
            Splitting::Nonsplitting
        );
        assert!(is_splitting_term(&inner, &x1, &f("u")).is_err());
    }

    #[test]
    fn deletion_examples() {
        let ck = SaiTerm::ck(&f("p"), &f("q"), &f("s"), &f("t"));
        assert_eq!(
            delete_letters_term(&ck, &letters("s t")).unwrap(),
            Term::Id(f("p/\\q"))
        );
        assert_eq!(delete_letters_term(&ck, &BTreeSet::new()).unwrap(), ck);
        let v = Term::raw_tensor(Op::Or, ck.clone(), Term::Id(f("r/\\u")));
        assert_eq!(delete_letters_term(&v, &letters("r u")).unwrap(), ck);
        assert!(delete_letters_term(&ck, &letters("s")).is_err());
    }

    #[test]
    fn canonical_examples() {
        let t = canonical_sai_arrow(&f("(p/\\q)\\/(s/\\t)"), &f("(p\\/s)/\\(q\\/t)"))
            .unwrap()
            .unwrap();
        assert_eq!(
            t.simplify().unwrap(),
            SaiTerm::ck(&f("p"), &f("q"), &f("s"), &f("t"))
        );
        assert_eq!(canonical_sai_arrow(&f("p\\/q"), &f("p/\\q")).unwrap(), None);
        assert_eq!(canonical_sai_arrow(&f("p"), &f("q")).unwrap(), None);
        let x = f("(p/\\q/\\r)\\/(s/\\t/\\u)");
        let y = f("(p\\/s)/\\(q\\/t)/\\(r\\/u)");
        let t = canonical_sai_arrow(&x, &y).unwrap().unwrap();
        let ty = t.typecheck().unwrap();
        assert_eq!((ty.source, ty.target, t.ck_count()), (x, y, 2));
        assert!(canonical_sai_arrow(&f("p\\/p"), &f("p\\/p")).is_err());
    }

    #[test]
    fn single_heads() {
        assert!(enumerate_single_heads(&f("p")).is_empty());
        assert!(enumerate_single_heads(&f("p\\/q")).is_empty());
        let hs = enumerate_single_heads(&f("(p/\\q)\\/(s/\\t)"));
        let targets: BTreeSet<_> = hs.iter().map(|(_, y)| y.clone()).collect();
        let expected: BTreeSet<_> = [f("(p\\/s)/\\(q\\/t)"), f("(p\\/t)/\\(q\\/s)")]
            .into_iter()
            .collect();
        assert_eq!(targets, expected);
        assert_eq!(hs.len(), 2);
    }

    #[test]
    fn form_set_counts() {
        let ls: Vec<Letter> = ["a", "b", "c", "d", "e"]
            .iter()
            .map(|s| Letter::new(s))
            .collect();
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_form_sets(&ls[..n]).len())
            .collect();
        assert_eq!(counts, vec![1, 2, 8, 52, 472]);
    }

    #[test]
    fn oracle_examples() {
        let r =
            reachability_oracle(&f("(p/\\q)\\/(s/\\t)"), &f("(p\\/s)/\\(q\\/t)"), 1000).unwrap();
        assert!(r.exists);
        assert_eq!(r.path_lengths, BTreeSet::from([1]));
        assert!(
            !reachability_oracle(&f("p\\/q"), &f("p/\\q"), 1000)
                .unwrap()
                .exists
        );
        let x = f("(p/\\q)\\/r");
        assert_eq!(
            reachability_oracle(&x, &x, 10).unwrap().path_lengths,
            BTreeSet::from([0])
        );
        let big = f("(a/\\b/\\c)\\/(d/\\e/\\f)");
        assert!(matches!(
            reachability_oracle(&big, &big, 2),
            Err(Error::LimitExceeded(2))
        ));
    }
}
