//! Random objects, terms and simplicial maps for property sweeps. Every
//! generator takes the caller's RNG so runs are reproducible from a seed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arrow::{m_single_heads, st_single_heads, MTerm, StTerm, Term};
use crate::bar::{coord_action, nm_violation, Shape, TupleObject};
use crate::simplicial::{FaceKind, ProductMap, SimplexMap};
use crate::syntax::{Formula, Op, StrictObject, Unit};

/// Letter names a, b, c, ... followed by x0, x1, ... when those run out.
pub fn letter_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{}", i - 26)
            }
        })
        .collect()
}

fn random_op(rng: &mut impl Rng) -> Op {
    if rng.gen_bool(0.5) {
        Op::Or
    } else {
        Op::And
    }
}

fn join(op: Op, a: Formula, b: Formula) -> Formula {
    match op {
        Op::Or => Formula::or(a, b),
        Op::And => Formula::and(a, b),
    }
}

/// A formula of depth at most `depth`; leaves are units with probability `p_unit`.
pub fn formula(rng: &mut impl Rng, letters: &[String], depth: usize, p_unit: f64) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        if letters.is_empty() || rng.gen_bool(p_unit) {
            return Formula::unit(if rng.gen_bool(0.5) {
                Unit::Bot
            } else {
                Unit::Top
            });
        }
        return Formula::letter(letters.choose(rng).expect("nonempty"));
    }
    let a = formula(rng, letters, depth - 1, p_unit);
    let b = formula(rng, letters, depth - 1, p_unit);
    join(random_op(rng), a, b)
}

/// A letterless formula of depth at most `depth`.
pub fn letterless(rng: &mut impl Rng, depth: usize) -> Formula {
    formula(rng, &[], depth, 1.0)
}

/// A letterless formula whose unit reduction is `u`.
pub fn letterless_reducing_to(rng: &mut impl Rng, u: Unit, depth: usize) -> Formula {
    loop {
        let f = letterless(rng, depth);
        if f.nu().as_unit() == Some(u) {
            return f;
        }
    }
}

/// A pure formula using each letter exactly once, decorated with absorbed
/// letterless pieces with probability `p_unit` at each node.
pub fn pure_diversified(rng: &mut impl Rng, letters: &[String], p_unit: f64) -> Formula {
    let mut names = letters.to_vec();
    names.shuffle(rng);
    build_pure(rng, &names, p_unit)
}

fn build_pure(rng: &mut impl Rng, names: &[String], p_unit: f64) -> Formula {
    let f = if names.len() == 1 {
        Formula::letter(&names[0])
    } else {
        let cut = rng.gen_range(1..names.len());
        let a = build_pure(rng, &names[..cut], p_unit);
        let b = build_pure(rng, &names[cut..], p_unit);
        join(random_op(rng), a, b)
    };
    if !rng.gen_bool(p_unit) {
        return f;
    }
    // ⊥ is absorbed by ∨ and ⊤ by ∧, so these pads keep the formula pure
    let op = random_op(rng);
    let pad = letterless_reducing_to(rng, op.unit(), 2);
    if rng.gen_bool(0.5) {
        join(op, f, pad)
    } else {
        join(op, pad, f)
    }
}

/// Reduce units by rewriting one randomly chosen redex at a time.
pub fn nu_by_rewriting(rng: &mut impl Rng, f: &Formula) -> Formula {
    let mut cur = f.clone();
    loop {
        let mut sites = Vec::new();
        redexes(&cur, &mut Vec::new(), &mut sites);
        let Some(path) = sites.choose(rng).cloned() else {
            return cur;
        };
        cur = rewrite_at(rng, &cur, &path);
    }
}

fn contractum(rng: &mut impl Rng, f: &Formula) -> Option<Formula> {
    let mut options = Vec::new();
    match f {
        Formula::Or(a, b) => {
            if **b == Formula::Bot {
                options.push((**a).clone());
            }
            if **a == Formula::Bot {
                options.push((**b).clone());
            }
            if **a == Formula::Top && **b == Formula::Top {
                options.push(Formula::Top);
            }
        }
        Formula::And(a, b) => {
            if **b == Formula::Top {
                options.push((**a).clone());
            }
            if **a == Formula::Top {
                options.push((**b).clone());
            }
            if **a == Formula::Bot && **b == Formula::Bot {
                options.push(Formula::Bot);
            }
        }
        _ => {}
    }
    options.choose(rng).cloned()
}

fn is_redex(f: &Formula) -> bool {
    match f {
        Formula::Or(a, b) => {
            **a == Formula::Bot
                || **b == Formula::Bot
                || (**a == Formula::Top && **b == Formula::Top)
        }
        Formula::And(a, b) => {
            **a == Formula::Top
                || **b == Formula::Top
                || (**a == Formula::Bot && **b == Formula::Bot)
        }
        _ => false,
    }
}

fn redexes(f: &Formula, path: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
    if is_redex(f) {
        out.push(path.clone());
    }
    if let Formula::Or(a, b) | Formula::And(a, b) = f {
        path.push(false);
        redexes(a, path, out);
        path.pop();
        path.push(true);
        redexes(b, path, out);
        path.pop();
    }
}

fn rewrite_at(rng: &mut impl Rng, f: &Formula, path: &[bool]) -> Formula {
    let Some((&right, rest)) = path.split_first() else {
        return contractum(rng, f).expect("redex");
    };
    match f {
        Formula::Or(a, b) | Formula::And(a, b) => {
            let op = if matches!(f, Formula::Or(..)) {
                Op::Or
            } else {
                Op::And
            };
            let (a, b) = if right {
                ((**a).clone(), rewrite_at(rng, b, rest))
            } else {
                (rewrite_at(rng, a, rest), (**b).clone())
            };
            join(op, a, b)
        }
        _ => unreachable!("path leads into a leaf"),
    }
}

/// A strict term with source `src` of tensor depth at most `depth`. Each
/// single-head step is kept only if `keep` accepts its target.
pub fn st_term(
    rng: &mut impl Rng,
    src: &StrictObject,
    depth: usize,
    keep: &impl Fn(&StrictObject) -> bool,
) -> StTerm {
    let children = src.children();
    if depth > 0 && children.len() >= 2 && rng.gen_bool(0.4) {
        let op = src.list_op().expect("list");
        let cut = rng.gen_range(1..children.len());
        let left = StrictObject::fold(op, children[..cut].iter().cloned());
        let right = StrictObject::fold(op, children[cut..].iter().cloned());
        let f = st_term(rng, &left, depth - 1, keep);
        let g = st_term(rng, &right, depth - 1, keep);
        let t = Term::raw_tensor(op, f, g);
        if t.target().map(|x| keep(&x)).unwrap_or(false) {
            return t;
        }
        return Term::Id(src.clone());
    }
    let steps = rng.gen_range(0..=3);
    st_walk(rng, src, steps, keep)
}

/// A composite of `steps` random single heads starting at `src`.
pub fn st_walk(
    rng: &mut impl Rng,
    src: &StrictObject,
    steps: usize,
    keep: &impl Fn(&StrictObject) -> bool,
) -> StTerm {
    let mut t = Term::Id(src.clone());
    let mut cur = src.clone();
    for _ in 0..steps {
        let heads: Vec<StTerm> = st_single_heads(&cur)
            .into_iter()
            .filter(|h| h.target().map(|x| keep(&x)).unwrap_or(false))
            .collect();
        let Some(h) = heads.choose(rng).cloned() else {
            break;
        };
        cur = h.target().expect("heads typecheck");
        t = Term::comp(h, t);
    }
    t
}

/// A composite of `steps` random single heads of the free category on formulae.
pub fn m_walk(rng: &mut impl Rng, src: &Formula, steps: usize) -> MTerm {
    let mut t = Term::Id(src.clone());
    let mut cur = src.clone();
    for _ in 0..steps {
        let heads = m_single_heads(&cur);
        let Some(h) = heads.choose(rng).cloned() else {
            break;
        };
        cur = h.target().expect("heads typecheck");
        t = Term::comp(h, t);
    }
    t
}

/// An endpoint-preserving monotone map n → m. Inner points mostly land on
/// inner points so that fibers are rarely all empty.
pub fn simplex_map(rng: &mut impl Rng, n: usize, m: usize) -> SimplexMap {
    let mut inner: Vec<usize> = (0..n)
        .map(|_| {
            if m == 0 || rng.gen_bool(0.2) {
                rng.gen_range(0..=1) * (m + 1)
            } else {
                rng.gen_range(1..=m)
            }
        })
        .collect();
    inner.sort_unstable();
    let mut image = vec![0];
    image.extend(inner);
    image.push(m + 1);
    SimplexMap::from_image(image, Some((n, m))).expect("valid by construction")
}

/// A face or degeneracy with source `k`.
pub fn simplex_generator(rng: &mut impl Rng, k: usize) -> SimplexMap {
    if k >= 1 && rng.gen_bool(0.5) {
        SimplexMap::gen(FaceKind::D, k, rng.gen_range(0..=k)).expect("valid index")
    } else {
        SimplexMap::gen(FaceKind::S, k + 1, rng.gen_range(0..=k)).expect("valid index")
    }
}

/// A product map with the given sources whose targets keep the cell count at
/// most `max_cells` and each size at most `max_size`. Empty targets are rare.
pub fn product_map(
    rng: &mut impl Rng,
    sources: &[usize],
    max_size: usize,
    max_cells: usize,
) -> ProductMap {
    loop {
        let targets: Vec<usize> = sources
            .iter()
            .map(|_| {
                if rng.gen_bool(0.1) {
                    0
                } else {
                    rng.gen_range(1..=max_size)
                }
            })
            .collect();
        if targets.iter().product::<usize>() <= max_cells {
            return ProductMap::new(
                sources
                    .iter()
                    .zip(&targets)
                    .map(|(&n, &m)| simplex_map(rng, n, m))
                    .collect(),
            );
        }
    }
}

/// A product map that is the identity except in one random coordinate.
pub fn single_coordinate_map(
    rng: &mut impl Rng,
    sources: &[usize],
    max_size: usize,
    max_cells: usize,
) -> ProductMap {
    let cells: usize = sources.iter().product();
    loop {
        let i = rng.gen_range(0..sources.len());
        // collapsing to one point merges whole fibers, the source of interchanges
        let m = if rng.gen_bool(0.5) {
            1
        } else {
            rng.gen_range(0..=max_size)
        };
        let rest = cells.checked_div(sources[i]).unwrap_or_else(|| {
            sources
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &k)| k)
                .product()
        });
        if rest * m <= max_cells {
            let comps = sources
                .iter()
                .enumerate()
                .map(|(j, &k)| {
                    if j == i {
                        simplex_map(rng, k, m)
                    } else {
                        SimplexMap::identity(k)
                    }
                })
                .collect();
            return ProductMap::new(comps);
        }
    }
}

/// A shape with n + m between 1 and `max_dims`, sizes between 1 and 3 and at
/// most `max_cells` cells.
pub fn shape(rng: &mut impl Rng, max_dims: usize, max_cells: usize) -> Shape {
    let dims = rng.gen_range(1..=max_dims);
    // mixed shapes exercise both tensors, so they are drawn more often
    let n = if dims >= 2 && rng.gen_bool(0.7) {
        rng.gen_range(1..dims)
    } else {
        rng.gen_range(0..=dims)
    };
    loop {
        let sizes: Vec<usize> = (0..dims).map(|_| rng.gen_range(1..=3)).collect();
        if sizes.iter().product::<usize>() <= max_cells {
            return Shape::new(n, dims - n, sizes).expect("consistent");
        }
    }
}

/// An (n,m)-coherent tuple on `shape`: either fresh letters moved along random
/// coordinate generators and back to `shape`, or independently drawn cells
/// kept when coherent.
pub fn coherent_tuple(rng: &mut impl Rng, shape: &Shape) -> TupleObject {
    for _ in 0..200 {
        let cells = (0..shape.cell_count())
            .map(|k| {
                let r: f64 = rng.gen();
                if r < 0.6 {
                    let names: Vec<String> = (0..rng.gen_range(1..=2))
                        .map(|j| format!("q{k}_{j}"))
                        .collect();
                    StrictObject::from_formula(&pure_diversified(rng, &names, 0.3))
                } else {
                    let u = if r < 0.8 { Unit::Bot } else { Unit::Top };
                    StrictObject::from_formula(&letterless_reducing_to(rng, u, 2))
                }
            })
            .collect();
        let t = TupleObject::new(shape.clone(), cells).expect("sized");
        if nm_violation(&t).is_none() {
            return t;
        }
    }
    TupleObject::fresh(shape.clone())
}

/// Fresh letters on `shape` pushed through up to `steps` random coordinate
/// generators, keeping at most `max_cells` cells.
pub fn evolved_tuple(
    rng: &mut impl Rng,
    shape: &Shape,
    steps: usize,
    max_cells: usize,
) -> TupleObject {
    let mut t = TupleObject::fresh(shape.clone());
    for _ in 0..steps {
        let i = rng.gen_range(0..t.shape.dims());
        let g = simplex_generator(rng, t.shape.sizes[i]);
        let next = coord_action(i, &g, &t).expect("sources match");
        if next.shape.cell_count() <= max_cells {
            t = next;
        }
    }
    t
}
