//! The iterated reduced bar construction on the free category: fiber tensors,
//! single-coordinate actions, (n,m)-coherence and the lax witnesses ω.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::arrow::{StTerm, Term};
use crate::decide::{canonical_arrow, equal_arrows, Canonical, Equality};
use crate::error::{Error, Result};
use crate::simplicial::{PartialMonotoneMap, ProductMap, SimplexMap};
use crate::syntax::{Letter, Op, StrictObject, Unit};

/// Coordinates 0..n tensor with ∨ and ⊥, the remaining m with ∧ and ⊤.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    pub n: usize,
    pub m: usize,
    pub sizes: Vec<usize>,
}

impl Shape {
    pub fn new(n: usize, m: usize, sizes: Vec<usize>) -> Result<Self> {
        if n + m == 0 {
            return Err(Error::BadParams("n + m must be at least 1".into()));
        }
        if sizes.len() != n + m {
            return Err(Error::ShapeMismatch(format!(
                "{} sizes for n + m = {}",
                sizes.len(),
                n + m
            )));
        }
        Ok(Shape { n, m, sizes })
    }

    pub fn dims(&self) -> usize {
        self.sizes.len()
    }

    pub fn cell_count(&self) -> usize {
        self.sizes.iter().product()
    }

    /// The tensor used along coordinate `i` (0-based).
    pub fn op(&self, i: usize) -> Op {
        if i < self.n {
            Op::Or
        } else {
            Op::And
        }
    }

    fn with_size(&self, i: usize, k: usize) -> Shape {
        let mut s = self.clone();
        s.sizes[i] = k;
        s
    }

    /// 0-based multi-indices in lexicographic order, last coordinate fastest.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        if self.cell_count() == 0 {
            return Vec::new();
        }
        self.sizes
            .iter()
            .map(|&k| 0..k)
            .multi_cartesian_product()
            .collect()
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&x, &k)| acc * k + x)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(n={}, m={}, sizes=({}))",
            self.n,
            self.m,
            self.sizes.iter().join(",")
        )
    }
}

/// A family of objects indexed by the multi-indices of a shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TupleObject {
    pub shape: Shape,
    pub cells: Vec<StrictObject>,
}

impl TupleObject {
    pub fn new(shape: Shape, cells: Vec<StrictObject>) -> Result<Self> {
        if cells.len() != shape.cell_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} cells for shape {shape}",
                cells.len()
            )));
        }
        Ok(TupleObject { shape, cells })
    }

    /// Distinct letters p_i1_..._ik, indices 1-based.
    pub fn fresh(shape: Shape) -> Self {
        let cells = shape
            .indices()
            .iter()
            .map(|idx| StrictObject::letter(&format!("p_{}", idx.iter().map(|x| x + 1).join("_"))))
            .collect();
        TupleObject { shape, cells }
    }

    /// Single-letter cells with pairwise distinct letters.
    pub fn check_fresh(&self) -> Result<()> {
        let mut seen = BTreeMap::new();
        for (k, c) in self.cells.iter().enumerate() {
            if !matches!(c, StrictObject::Letter(_)) {
                return Err(Error::BadParams(format!(
                    "cell {} is {c}, not a letter",
                    k + 1
                )));
            }
            if let Some(j) = seen.insert(c.clone(), k) {
                return Err(Error::DuplicateLetters(format!(
                    "{c} in cells {} and {}",
                    j + 1,
                    k + 1
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, idx: &[usize]) -> &StrictObject {
        &self.cells[self.shape.flat(idx)]
    }
}

impl fmt::Display for TupleObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.cells.iter().join(", "))
    }
}

/// Output j is the `op`-tensor of the inputs in the fiber of j, in order;
/// an empty fiber gives the unit.
pub fn fiber_tensor_eval(
    h: &PartialMonotoneMap,
    inputs: &[StrictObject],
    op: Op,
) -> Result<Vec<StrictObject>> {
    fiber_fold(h, inputs, |xs| StrictObject::fold(op, xs))
}

fn fiber_fold<T: Clone>(
    h: &PartialMonotoneMap,
    inputs: &[T],
    fold: impl Fn(Vec<T>) -> T,
) -> Result<Vec<T>> {
    if inputs.len() != h.src() {
        return Err(Error::ArityMismatch(format!(
            "{} inputs for a map from {} points",
            inputs.len(),
            h.src()
        )));
    }
    Ok((0..h.dst())
        .map(|j| fold(h.fiber(j).into_iter().map(|x| inputs[x].clone()).collect()))
        .collect())
}

/// Apply `fold` to the fibers of `h` along axis `i` of a cell array.
fn act_axis<T: Clone>(
    shape: &Shape,
    i: usize,
    h: &PartialMonotoneMap,
    cells: &[T],
    fold: impl Fn(Vec<T>) -> T,
) -> (Shape, Vec<T>) {
    let inner: usize = shape.sizes[i + 1..].iter().product();
    let outer: usize = shape.sizes[..i].iter().product();
    let (k, k2) = (shape.sizes[i], h.dst());
    let fibers: Vec<Vec<usize>> = (0..k2).map(|j| h.fiber(j)).collect();
    let mut out = Vec::with_capacity(outer * k2 * inner);
    for a in 0..outer {
        for fib in &fibers {
            for b in 0..inner {
                out.push(fold(
                    fib.iter()
                        .map(|&x| cells[(a * k + x) * inner + b].clone())
                        .collect(),
                ));
            }
        }
    }
    (shape.with_size(i, k2), out)
}

fn check_axis(shape: &Shape, i: usize, f: &SimplexMap) -> Result<()> {
    if i >= shape.dims() {
        return Err(Error::IndexOutOfRange(format!(
            "coordinate {} of {}",
            i + 1,
            shape.dims()
        )));
    }
    if f.src() != shape.sizes[i] {
        return Err(Error::ShapeMismatch(format!(
            "map {f} has source {} but coordinate {} has size {}",
            f.src(),
            i + 1,
            shape.sizes[i]
        )));
    }
    Ok(())
}

/// The action of a map in coordinate `i` (0-based), all other coordinates fixed.
pub fn coord_action(i: usize, f: &SimplexMap, t: &TupleObject) -> Result<TupleObject> {
    check_axis(&t.shape, i, f)?;
    let op = t.shape.op(i);
    let (shape, cells) = act_axis(&t.shape, i, &f.hj(), &t.cells, |xs| {
        StrictObject::fold(op, xs)
    });
    Ok(TupleObject { shape, cells })
}

fn check_maps(maps: &ProductMap, shape: &Shape) -> Result<()> {
    if maps.components().len() != shape.dims() {
        return Err(Error::ShapeMismatch(format!(
            "{} components for {} coordinates",
            maps.components().len(),
            shape.dims()
        )));
    }
    Ok(())
}

/// Coordinate actions applied first to last.
pub fn bar_eval(maps: &ProductMap, t: &TupleObject) -> Result<TupleObject> {
    check_maps(maps, &t.shape)?;
    maps.components()
        .iter()
        .enumerate()
        .try_fold(t.clone(), |acc, (i, f)| coord_action(i, f, &acc))
}

/// Transport a family of arrows along the coordinate actions of `maps`: each
/// output cell is the tensor of its fiber, an empty fiber the unit identity.
pub fn bar_eval_arrows(
    maps: &ProductMap,
    shape: &Shape,
    cells: &[StTerm],
) -> Result<(Shape, Vec<StTerm>)> {
    check_maps(maps, shape)?;
    if cells.len() != shape.cell_count() {
        return Err(Error::ShapeMismatch(format!(
            "{} arrows for shape {shape}",
            cells.len()
        )));
    }
    let mut acc = (shape.clone(), cells.to_vec());
    for (i, f) in maps.components().iter().enumerate() {
        check_axis(&acc.0, i, f)?;
        let op = acc.0.op(i);
        let fold = |xs: Vec<StTerm>| {
            xs.into_iter()
                .reduce(|a, b| Term::tensor(op, a, b))
                .unwrap_or_else(|| Term::Id(StrictObject::unit(op.unit())))
        };
        acc = act_axis(&acc.0, i, &f.hj(), &acc.1, fold);
    }
    Ok(acc)
}

/// The first failure of (n,m)-coherence. Cells are 1-based multi-indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NmViolation {
    /// A cell with letters that is not pure and diversified.
    Mixed { cell: Vec<usize> },
    /// Two cells share a letter.
    SharedLetter {
        letter: Letter,
        first: Vec<usize>,
        second: Vec<usize>,
    },
    /// Along the ∨-coordinates some cell reduces to ⊤ and another to neither unit.
    TopSpread { top: Vec<usize>, cell: Vec<usize> },
    /// Along the ∧-coordinates some cell reduces to ⊥ and another to neither unit.
    BotSpread { bot: Vec<usize>, cell: Vec<usize> },
}

fn one_based(idx: &[usize]) -> String {
    format!("({})", idx.iter().join(","))
}

impl fmt::Display for NmViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NmViolation::Mixed { cell } => write!(
                f,
                "(*) cell {} has letters but is not pure and diversified",
                one_based(cell)
            ),
            NmViolation::SharedLetter {
                letter,
                first,
                second,
            } => {
                write!(
                    f,
                    "(*) letter {letter} occurs in cells {} and {}",
                    one_based(first),
                    one_based(second)
                )
            }
            NmViolation::TopSpread { top, cell } => {
                write!(
                    f,
                    "(**) cell {} reduces to top but cell {} is not a unit",
                    one_based(top),
                    one_based(cell)
                )
            }
            NmViolation::BotSpread { bot, cell } => {
                write!(
                    f,
                    "(***) cell {} reduces to bot but cell {} is not a unit",
                    one_based(bot),
                    one_based(cell)
                )
            }
        }
    }
}

/// None when the tuple is (n,m)-coherent, otherwise the first violated condition.
pub fn nm_violation(t: &TupleObject) -> Option<NmViolation> {
    let idxs = t.shape.indices();
    let show = |k: usize| idxs[k].iter().map(|x| x + 1).collect::<Vec<_>>();
    let mut owner: BTreeMap<Letter, usize> = BTreeMap::new();
    for (k, c) in t.cells.iter().enumerate() {
        if c.is_letterless() {
            continue;
        }
        if !(c.purity().pure() && c.is_diversified()) {
            return Some(NmViolation::Mixed { cell: show(k) });
        }
        for l in c.letters() {
            if let Some(&j) = owner.get(&l) {
                return Some(NmViolation::SharedLetter {
                    letter: l,
                    first: show(j),
                    second: show(k),
                });
            }
            owner.insert(l, k);
        }
    }
    let nus: Vec<Option<Unit>> = t.cells.iter().map(|c| c.nu().as_unit()).collect();
    let n = t.shape.n;
    // cells sharing the ∧-coordinates form a ∨-block and vice versa
    for (unit, key) in [(Unit::Top, n..t.shape.dims()), (Unit::Bot, 0..n)] {
        let groups = (0..t.cells.len()).into_group_map_by(|&k| idxs[k][key.clone()].to_vec());
        for members in groups.values() {
            let Some(&u) = members.iter().find(|&&k| nus[k] == Some(unit)) else {
                continue;
            };
            if let Some(&c) = members.iter().find(|&&k| nus[k].is_none()) {
                let (u, cell) = (show(u), show(c));
                return Some(match unit {
                    Unit::Top => NmViolation::TopSpread { top: u, cell },
                    Unit::Bot => NmViolation::BotSpread { bot: u, cell },
                });
            }
        }
    }
    None
}

pub fn is_nm_coherent(t: &TupleObject) -> bool {
    nm_violation(t).is_none()
}

/// Cellwise arrows g*∘f*(t) → (g∘f)*(t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaWitness {
    pub source: TupleObject,
    pub target: TupleObject,
    pub cells: Vec<StTerm>,
}

/// ω_{g,f} on a tuple of distinct letters.
pub fn omega(f: &ProductMap, g: &ProductMap, letters: &TupleObject) -> Result<OmegaWitness> {
    letters.check_fresh()?;
    omega_at(f, g, letters)
}

/// ω_{g,f} instantiated at an arbitrary tuple, one canonical arrow per cell.
pub fn omega_at(f: &ProductMap, g: &ProductMap, t: &TupleObject) -> Result<OmegaWitness> {
    let gf = g.compose(f)?;
    let source = bar_eval(g, &bar_eval(f, t)?)?;
    let target = bar_eval(&gf, t)?;
    let cells = source
        .cells
        .iter()
        .zip(&target.cells)
        .enumerate()
        .map(|(k, (a, b))| match canonical_arrow(a, b)? {
            Canonical::Some(h) => h.simplify(),
            other => Err(Error::CoherenceGuardFailed(format!(
                "cell {}: {a} -> {b} gave {}",
                k + 1,
                if other == Canonical::None {
                    "no arrow"
                } else {
                    "undecided"
                }
            ))),
        })
        .collect::<Result<_>>()?;
    Ok(OmegaWitness {
        source,
        target,
        cells,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxCell {
    /// ω_{h,g∘f} after h*(ω_{g,f}).
    pub left: StTerm,
    /// ω_{h∘g,f} after ω_{h,g} at f*.
    pub right: StTerm,
    pub verdict: Equality,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxReport {
    pub cells: Vec<LaxCell>,
    /// Every tuple met on the way, labeled, with its coherence status.
    pub intermediates: Vec<(String, TupleObject, Option<NmViolation>)>,
    pub commutes: bool,
}

/// Check the lax associativity square for h, g, f at the given letters.
pub fn lax_check(
    f: &ProductMap,
    g: &ProductMap,
    h: &ProductMap,
    letters: &TupleObject,
) -> Result<LaxReport> {
    letters.check_fresh()?;
    let (gf, hg) = (g.compose(f)?, h.compose(g)?);
    let ff = bar_eval(f, letters)?;
    let w_gf = omega_at(f, g, letters)?;
    let w_h_gf = omega_at(&gf, h, letters)?;
    let w_hg_f = omega_at(f, &hg, letters)?;
    let w_h_g = omega_at(g, h, &ff)?;
    let (_, moved) = bar_eval_arrows(h, &w_gf.source.shape, &w_gf.cells)?;
    let intermediates = [
        ("p", letters.clone()),
        ("f*", ff),
        ("g*f*", w_gf.source.clone()),
        ("(gf)*", w_gf.target.clone()),
        ("h*g*f*", w_h_g.source.clone()),
        ("h*(gf)*", w_h_gf.source.clone()),
        ("(hg)*f*", w_h_g.target.clone()),
        ("(hgf)*", w_h_gf.target.clone()),
    ]
    .into_iter()
    .map(|(name, t)| {
        let v = nm_violation(&t);
        (name.to_string(), t, v)
    })
    .collect_vec();
    let cells = (0..w_h_gf.cells.len())
        .map(|k| {
            let left = Term::comp(w_h_gf.cells[k].clone(), moved[k].clone());
            let right = Term::comp(w_hg_f.cells[k].clone(), w_h_g.cells[k].clone());
            let verdict = equal_arrows(&left, &right)?;
            Ok(LaxCell {
                left,
                right,
                verdict,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let commutes = cells
        .iter()
        .all(|c| c.verdict == Equality::EqualByCoherence)
        && intermediates.iter().all(|(_, _, v)| v.is_none());
    Ok(LaxReport {
        cells,
        intermediates,
        commutes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::{Dir, StGen};
    use crate::parse::{parse_partial, parse_product, parse_simplex, parse_strict};
    use crate::simplicial::FaceKind;

    fn s(t: &str) -> StrictObject {
        parse_strict(t).unwrap()
    }

    fn tuple(shape: &Shape, cells: &[&str]) -> TupleObject {
        TupleObject::new(shape.clone(), cells.iter().map(|c| s(c)).collect()).unwrap()
    }

    fn example() -> (ProductMap, ProductMap, TupleObject) {
        let f = parse_product("<[0 1 3]@1->2 ; [0 1 2 2]@2->1 ; [0 1 1 3]@2->2>").unwrap();
        let g = parse_product("<[0 1 1 3]@2->2 ; [0 1 3]@1->2 ; [0 1 2 3]@2->2>").unwrap();
        let shape = Shape::new(2, 1, vec![1, 2, 2]).unwrap();
        (f, g, tuple(&shape, &["a", "b", "c", "d"]))
    }

    #[test]
    fn fiber_examples() {
        let d = |n, i| SimplexMap::gen(FaceKind::D, n, i).unwrap().hj();
        let (a, b) = (s("a"), s("b"));
        assert_eq!(
            fiber_tensor_eval(&d(2, 1), &[a.clone(), b.clone()], Op::Or).unwrap(),
            vec![s("a\\/b")]
        );
        assert_eq!(
            fiber_tensor_eval(&d(1, 0), std::slice::from_ref(&a), Op::Or).unwrap(),
            vec![]
        );
        let sg = SimplexMap::gen(FaceKind::S, 1, 0).unwrap().hj();
        assert_eq!(
            fiber_tensor_eval(&sg, &[], Op::And).unwrap(),
            vec![s("top")]
        );
        let h = parse_partial("{- - 2 2}@4->3").unwrap();
        let ins = [a, b, s("c"), s("d")];
        assert_eq!(
            fiber_tensor_eval(&h, &ins, Op::And).unwrap(),
            vec![s("top"), s("top"), s("c/\\d")]
        );
        assert!(fiber_tensor_eval(&h, &ins[..2], Op::And).is_err());
    }

    #[test]
    fn example_tuples() {
        let (f, g, t) = example();
        let ff = bar_eval(&f, &t).unwrap();
        assert_eq!(
            ff.cells,
            tuple(&ff.shape, &["a/\\b", "top", "bot/\\bot", "top"]).cells
        );
        let mid =
            TupleObject::new(Shape::new(2, 1, vec![2, 1, 2]).unwrap(), t.cells.clone()).unwrap();
        let gg = bar_eval(&g, &mid).unwrap();
        assert_eq!(
            gg.cells,
            tuple(
                &gg.shape,
                &["a\\/c", "b\\/d", "bot", "bot", "bot", "bot", "bot", "bot"]
            )
            .cells
        );
        let gf = bar_eval(&g.compose(&f).unwrap(), &t).unwrap();
        let expect = [
            "a/\\b",
            "top",
            "bot/\\bot",
            "top",
            "bot/\\bot",
            "top",
            "bot/\\bot",
            "top",
        ];
        assert_eq!(gf.cells, tuple(&gf.shape, &expect).cells);
        let gff = bar_eval(&g, &ff).unwrap();
        let expect = [
            "(a/\\b)\\/(bot/\\bot)",
            "top\\/top",
            "bot",
            "bot",
            "bot",
            "bot",
            "bot",
            "bot",
        ];
        assert_eq!(gff.cells, tuple(&gff.shape, &expect).cells);
        assert!(is_nm_coherent(&gff));
    }

    #[test]
    fn example_omega() {
        let (f, g, _) = example();
        let p = TupleObject::fresh(Shape::new(2, 1, vec![1, 2, 2]).unwrap());
        let w = omega(&f, &g, &p).unwrap();
        let (a, b) = (s("p_1_1_1"), s("p_1_1_2"));
        let wb = Term::Gen(StGen::WAndBot(Dir::Bw));
        let k = Term::Gen(StGen::Kappa);
        let expect = vec![
            Term::Gen(StGen::ck(&a, &b, &s("bot"), &s("bot"))),
            Term::Gen(StGen::WOrTop(Dir::Fw)),
            wb.clone(),
            k.clone(),
            wb.clone(),
            k.clone(),
            wb,
            k,
        ];
        assert_eq!(w.cells, expect);
        assert!(omega(&f, &g, &tuple(&p.shape, &["a", "a", "b", "c"])).is_err());
    }

    #[test]
    fn coherence_violations() {
        let sh = Shape::new(1, 1, vec![2, 1]).unwrap();
        assert!(matches!(
            nm_violation(&tuple(&sh, &["top", "p"])),
            Some(NmViolation::TopSpread { .. })
        ));
        assert!(is_nm_coherent(&tuple(&sh, &["bot", "p"])));
        let sh = Shape::new(1, 1, vec![1, 2]).unwrap();
        assert!(matches!(
            nm_violation(&tuple(&sh, &["bot", "p"])),
            Some(NmViolation::BotSpread { .. })
        ));
        assert!(matches!(
            nm_violation(&tuple(&sh, &["p", "p"])),
            Some(NmViolation::SharedLetter { .. })
        ));
        assert!(matches!(
            nm_violation(&tuple(&sh, &["p/\\bot", "q"])),
            Some(NmViolation::Mixed { .. })
        ));
        assert!(is_nm_coherent(&TupleObject::fresh(
            Shape::new(2, 1, vec![2, 2, 2]).unwrap()
        )));
    }

    #[test]
    fn same_coordinate_omega_is_identity() {
        let sh = Shape::new(1, 1, vec![3, 2]).unwrap();
        let f = ProductMap::new(vec![
            parse_simplex("d(1)@3").unwrap(),
            SimplexMap::identity(2),
        ]);
        let g = ProductMap::new(vec![
            parse_simplex("s(0)@3").unwrap(),
            SimplexMap::identity(2),
        ]);
        let w = omega(&f, &g, &TupleObject::fresh(sh)).unwrap();
        assert!(w.cells.iter().all(|c| c.is_identity()));
    }

    #[test]
    fn lax_square() {
        let (f, g, _) = example();
        let p = TupleObject::fresh(Shape::new(2, 1, vec![1, 2, 2]).unwrap());
        let h = ProductMap::identity(&[2, 2, 2]);
        let r = lax_check(&f, &g, &h, &p).unwrap();
        assert!(r.commutes);
        let sh = Shape::new(2, 1, vec![2, 2, 2]).unwrap();
        let one = |i: usize, m: &str| {
            let mut cs: Vec<SimplexMap> = (0..3).map(|_| SimplexMap::identity(2)).collect();
            cs[i] = parse_simplex(m).unwrap();
            ProductMap::new(cs)
        };
        let (f, g, h) = (one(2, "d(1)@2"), one(1, "d(1)@2"), one(0, "d(1)@2"));
        let h = ProductMap::new(vec![
            h.components()[0].clone(),
            SimplexMap::identity(1),
            SimplexMap::identity(1),
        ]);
        let g = ProductMap::new(vec![
            SimplexMap::identity(2),
            g.components()[1].clone(),
            SimplexMap::identity(1),
        ]);
        let r = lax_check(&f, &g, &h, &TupleObject::fresh(sh)).unwrap();
        assert!(r.commutes);
        assert!(r.cells.iter().any(|c| c.left.ck_count() > 0));
    }
}
