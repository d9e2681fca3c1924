use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use smi_core::arrow::{st_single_heads, Generator, Term};
use smi_core::bar::{bar_eval, coord_action, fiber_tensor_eval, TupleObject};
use smi_core::decide::{canonical_arrow, equal_arrows, Canonical, Equality};
use smi_core::parse::{
    parse_formula, parse_partial, parse_product, parse_simplex, parse_strict, parse_term,
};
use smi_core::random;
use smi_core::sai::reachability_oracle;
use smi_core::simplicial::{PartialMonotoneMap, ProductMap, SimplexMap};
use smi_core::syntax::{FormMultiset, Formula, Letter, Op, StrictObject, Unit};
use smi_core::unit::{letterless_arrow, unit_iso, unit_reduce};

fn formula_strategy(letters: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        3 => proptest::sample::select(letters).prop_map(Formula::letter),
        1 => Just(Formula::Bot),
        1 => Just(Formula::Top),
    ];
    leaf.prop_recursive(6, 48, 2, |inner| {
        (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, or)| {
            if or {
                Formula::or(a, b)
            } else {
                Formula::and(a, b)
            }
        })
    })
}

fn unit_free_strategy() -> impl Strategy<Value = Formula> {
    let leaf = proptest::sample::select(&["p", "q", "r", "s"][..]).prop_map(Formula::letter);
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, or)| {
            if or {
                Formula::or(a, b)
            } else {
                Formula::and(a, b)
            }
        })
    })
}

/// Bottom-purity read off the shape of the formula: ν(A) = ⊥, or a
/// conjunction with a conjunct reducing to ⊥ beside a conjunct with letters.
fn bot_impure_by_shape(f: &Formula) -> bool {
    if f.nu() == Formula::Bot {
        return true;
    }
    let mut found = false;
    f.visit(&mut |g| {
        if let Formula::And(a, b) = g {
            let side = |x: &Formula, y: &Formula| x.nu() == Formula::Bot && !y.is_letterless();
            if side(a, b) || side(b, a) {
                found = true;
            }
        }
    });
    found
}

/// Formulae differing from `f` by one unit or associativity equation at some position.
fn strict_equation_variants(f: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    let here: Vec<Formula> = match f {
        Formula::Or(a, b) => {
            let mut v = vec![
                Formula::or(f.clone(), Formula::Bot),
                Formula::or(Formula::Bot, f.clone()),
            ];
            if let Formula::Or(x, y) = &**a {
                v.push(Formula::or(
                    (**x).clone(),
                    Formula::or((**y).clone(), (**b).clone()),
                ));
            }
            v
        }
        Formula::And(a, b) => {
            let mut v = vec![
                Formula::and(f.clone(), Formula::Top),
                Formula::and(Formula::Top, f.clone()),
            ];
            if let Formula::And(x, y) = &**a {
                v.push(Formula::and(
                    (**x).clone(),
                    Formula::and((**y).clone(), (**b).clone()),
                ));
            }
            v
        }
        _ => vec![
            Formula::or(f.clone(), Formula::Bot),
            Formula::and(Formula::Top, f.clone()),
        ],
    };
    out.extend(here);
    if let Formula::Or(a, b) | Formula::And(a, b) = f {
        let or = matches!(f, Formula::Or(..));
        let mk = |x: Formula, y: Formula| {
            if or {
                Formula::or(x, y)
            } else {
                Formula::and(x, y)
            }
        };
        for v in strict_equation_variants(a) {
            out.push(mk(v, (**b).clone()));
        }
        for v in strict_equation_variants(b) {
            out.push(mk((**a).clone(), v));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn nu_is_idempotent(f in formula_strategy(&["p", "q", "r"])) {
        prop_assert_eq!(f.nu().nu(), f.nu());
    }

    #[test]
    fn strict_nu_is_a_congruence(f in formula_strategy(&["p", "q"])) {
        // on impure formulae reassociation can hide a unit pair from ν
        prop_assume!(f.is_letterless() || f.purity().pure());
        let expect = StrictObject::from_formula(&f.nu());
        prop_assert_eq!(StrictObject::from_formula(&f).nu(), expect.clone());
        for g in strict_equation_variants(&f) {
            prop_assert_eq!(StrictObject::from_formula(&g), StrictObject::from_formula(&f));
            prop_assert_eq!(StrictObject::from_formula(&g.nu()), expect.clone(), "{}", g);
        }
    }

    #[test]
    fn bot_purity_matches_shape(f in formula_strategy(&["p", "q"])) {
        prop_assert_eq!(!f.purity().bot_pure, bot_impure_by_shape(&f), "{}", f);
    }

    #[test]
    fn formulas_round_trip(f in formula_strategy(&["p", "q", "r_1"])) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f.clone());
        let s = StrictObject::from_formula(&f);
        prop_assert_eq!(parse_strict(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn deletion_commutes(f in unit_free_strategy(), p in "[pqrs]", q in "[pqrs]") {
        let x = FormMultiset::from_formula(&f).unwrap();
        let del = |x: &FormMultiset, l: &str| x.delete_letters(&BTreeSet::from([Letter::new(l)]));
        if let (Ok(a), Ok(b)) = (del(&x, &p), del(&x, &q)) {
            match (del(&a, &q), del(&b, &p)) {
                (Ok(u), Ok(v)) => prop_assert_eq!(u, v),
                (Err(_), Err(_)) => {}
                (u, v) => prop_assert!(false, "{:?} vs {:?}", u, v),
            }
        }
    }

    #[test]
    fn terms_round_trip_and_develop(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let src = random::formula(&mut rng, &random::letter_names(3), 3, 0.3);
        let steps = rng.gen_range(0..6);
        let t = random::m_walk(&mut rng, &src, steps);
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t.clone());
        let ty = t.typecheck().unwrap();
        let factors = t.develop().unwrap();
        prop_assert!(factors.iter().all(|f| f.generators().len() == 1));
        let whole = Term::compose_all(factors, ty.source.clone());
        prop_assert_eq!(whole.typecheck().unwrap(), ty);
        prop_assert_eq!(whole.ck_count(), t.ck_count());
    }

    #[test]
    fn unit_iso_reaches_nu(f in formula_strategy(&["p", "q"])) {
        let x = StrictObject::from_formula(&f);
        let ty = unit_iso(&x).typecheck().unwrap();
        prop_assert_eq!((ty.source, ty.target), (x.clone(), x.nu()));
        prop_assert!(unit_iso(&x).generators().iter().all(|g| g.inverse().is_some() && g.source().is_letterless()));
    }

    #[test]
    fn simplicial_maps_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (n, m) = (rng.gen_range(0..5), rng.gen_range(0..5));
        let f = random::simplex_map(&mut rng, n, m);
        prop_assert_eq!(parse_simplex(&f.to_string()).unwrap(), f.clone());
        let h = f.hj();
        prop_assert_eq!(parse_partial(&h.to_string()).unwrap(), h);
        let p = random::product_map(&mut rng, &[2, 1, 3], 3, 64);
        prop_assert_eq!(parse_product(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn fiber_tensor_is_functorial(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (a, b, c) = (rng.gen_range(0..5), rng.gen_range(0..5), rng.gen_range(0..5));
        let (f, g) = (random::simplex_map(&mut rng, a, b).hj(), random::simplex_map(&mut rng, b, c).hj());
        let names = random::letter_names(a);
        let inputs: Vec<StrictObject> = names.iter().map(|n| StrictObject::from_formula(&random::formula(&mut rng, std::slice::from_ref(n), 2, 0.3))).collect();
        for op in [Op::Or, Op::And] {
            let once = fiber_tensor_eval(&g.compose(&f).unwrap(), &inputs, op).unwrap();
            let twice = fiber_tensor_eval(&g, &fiber_tensor_eval(&f, &inputs, op).unwrap(), op).unwrap();
            prop_assert_eq!(once, twice);
        }
    }

    #[test]
    fn single_coordinate_actions_compose(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let shape = random::shape(&mut rng, 3, 12);
        let t = TupleObject::fresh(shape.clone());
        let i = rng.gen_range(0..shape.dims());
        let k = shape.sizes[i];
        let (m1, m2) = (rng.gen_range(0..4), rng.gen_range(0..4));
        let f = random::simplex_map(&mut rng, k, m1);
        let g = random::simplex_map(&mut rng, m1, m2);
        let lift = |sizes: &[usize], m: &SimplexMap| {
            ProductMap::new(sizes.iter().enumerate().map(|(j, &s)| if j == i { m.clone() } else { SimplexMap::identity(s) }).collect())
        };
        let once = bar_eval(&lift(&shape.sizes, &g.compose(&f).unwrap()), &t).unwrap();
        let mid = coord_action(i, &f, &t).unwrap();
        let twice = bar_eval(&lift(&mid.shape.sizes, &g), &mid).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn canonical_arrows_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = rng.gen_range(1..=4);
        let a = StrictObject::from_formula(&random::pure_diversified(&mut rng, &random::letter_names(k), 0.3));
        let walk = random::st_term(&mut rng, &a, 3, &|x: &StrictObject| x.purity().pure());
        let b = walk.target().unwrap();
        let Canonical::Some(t) = canonical_arrow(&a, &b).unwrap() else {
            return Err(TestCaseError::fail(format!("no canonical arrow {a} -> {b} despite {walk}")));
        };
        let ty = t.typecheck().unwrap();
        prop_assert_eq!((&ty.source, &ty.target), (&a, &b));
        prop_assert_eq!(equal_arrows(&t, &walk).unwrap(), Equality::EqualByCoherence);
        let r = unit_reduce(&t).unwrap();
        let (x, y) = (FormMultiset::from_strict(&a.nu()).unwrap(), FormMultiset::from_strict(&b.nu()).unwrap());
        let reach = reachability_oracle(&x, &y, 100_000).unwrap();
        prop_assert_eq!(reach.path_lengths, BTreeSet::from([r.ck_count()]));
    }

    #[test]
    fn composites_from_letters_stay_pure_or_letterless(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let shape = random::shape(&mut rng, 4, 16);
        let mut t = TupleObject::fresh(shape);
        for _ in 0..rng.gen_range(1..=5) {
            let f = random::product_map(&mut rng, &t.shape.sizes, 3, 24);
            t = bar_eval(&f, &t).unwrap();
            for c in &t.cells {
                prop_assert!(c.is_letterless() || (c.purity().pure() && c.is_diversified()), "{}", c);
            }
        }
    }
}

/// Letterless strict objects with at most `max` leaves.
fn letterless_objects(max: usize) -> Vec<StrictObject> {
    let mut by_size: Vec<HashSet<Formula>> = vec![HashSet::new(); max + 1];
    by_size[1] = HashSet::from([Formula::Bot, Formula::Top]);
    for n in 2..=max {
        let mut here = HashSet::new();
        for k in 1..n {
            for a in &by_size[k] {
                for b in &by_size[n - k] {
                    here.insert(Formula::or(a.clone(), b.clone()));
                    here.insert(Formula::and(a.clone(), b.clone()));
                }
            }
        }
        by_size[n] = here;
    }
    let all: BTreeSet<StrictObject> = by_size
        .iter()
        .flatten()
        .map(StrictObject::from_formula)
        .collect();
    all.into_iter().collect()
}

/// Reachability by single heads among `objs`. Paths A → ν(A) → ν(B) → B never
/// grow past the larger endpoint, so staying inside `objs` loses no arrow.
fn letterless_reach(objs: &[StrictObject]) -> Vec<Vec<bool>> {
    let index: HashMap<&StrictObject, usize> =
        objs.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let adj: Vec<Vec<usize>> = objs
        .iter()
        .map(|x| {
            st_single_heads(x)
                .iter()
                .filter_map(|h| index.get(&h.target().unwrap()).copied())
                .collect()
        })
        .collect();
    (0..objs.len())
        .map(|s| {
            let mut seen = vec![false; objs.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            seen
        })
        .collect()
}

#[test]
fn letterless_arrows_match_search() {
    let objs = letterless_objects(6);
    assert_eq!(objs.len(), 516);
    let reach = letterless_reach(&objs);
    for (i, a) in objs.iter().enumerate() {
        for (j, b) in objs.iter().enumerate() {
            let arrow = letterless_arrow(a, b).unwrap();
            assert_eq!(arrow.is_some(), reach[i][j], "{a} -> {b}");
            if let Some(t) = arrow {
                let ty = t.typecheck().unwrap();
                assert_eq!((&ty.source, &ty.target), (a, b));
            }
        }
    }
}

#[test]
fn reassociation_changes_nu_of_impure_formulae() {
    let f = parse_formula("(top\\/top)\\/p").unwrap();
    let g = parse_formula("top\\/(top\\/p)").unwrap();
    assert_eq!(
        StrictObject::from_formula(&f),
        StrictObject::from_formula(&g)
    );
    assert_ne!(
        StrictObject::from_formula(&f.nu()),
        StrictObject::from_formula(&g.nu())
    );
    assert_eq!(
        StrictObject::from_formula(&f).nu(),
        StrictObject::from_formula(&g).nu()
    );
}

#[test]
fn letterless_units_reduce() {
    for x in letterless_objects(5) {
        assert!(
            matches!(x.nu().as_unit(), Some(Unit::Bot | Unit::Top)),
            "{x}"
        );
    }
}

#[test]
fn delta_p_words_parse() {
    let w = parse_partial("rho(1)@1 . delta(1)@1").unwrap();
    assert_eq!(w, PartialMonotoneMap::identity(1));
    let v = parse_partial("rho(0)@1 . delta(1)@1").unwrap();
    assert_eq!(v, PartialMonotoneMap::new(1, vec![None]).unwrap());
}
