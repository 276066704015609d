//! Brute-force oracles written straight from the definitions, on a plain
//! `Vec<u8>` representation of menus, compared against the library.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use consideration::sampling::{self, all_filters};
use consideration::*;

type Set = BTreeSet<u8>;

fn subsets(n: u8) -> Vec<Set> {
    (0..n).powerset().map(|v| v.into_iter().collect()).collect()
}

fn menu(s: &Set) -> Menu {
    Menu::from_alts(s.iter().map(|&i| Alt(i)))
}

fn set(m: Menu) -> Set {
    m.iter().map(|a| a.0).collect()
}

fn image(f: &Filter, a: &Set) -> Set {
    set(f.apply(menu(a)))
}

fn pairs_sub_super(n: u8) -> Vec<(Set, Set)> {
    let all = subsets(n);
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if a.is_subset(b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn alpha(f: &Filter, n: u8) -> bool {
    pairs_sub_super(n)
        .iter()
        .all(|(a, b)| a.iter().all(|x| !image(f, b).contains(x) || image(f, a).contains(x)))
}

fn beta(f: &Filter, n: u8, classical: bool) -> bool {
    pairs_sub_super(n).iter().all(|(a, b)| {
        let (ga, gb) = (image(f, a), image(f, b));
        a.iter().cartesian_product(a.iter()).all(|(x1, x2)| {
            let antecedent = gb.contains(x2) && (!classical || (ga.contains(x1) && ga.contains(x2)));
            !antecedent || gb.contains(x1)
        })
    })
}

fn tau(f: &Filter, n: u8) -> bool {
    pairs_sub_super(n)
        .iter()
        .all(|(a, b)| image(f, a).is_subset(&image(f, b)))
}

fn io(f: &Filter, n: u8) -> bool {
    let all = subsets(n);
    (0..n).all(|x| {
        let offering: Vec<&Set> = all.iter().filter(|a| a.contains(&x)).collect();
        offering.iter().all(|a| image(f, a).contains(&x)) || offering.iter().all(|a| !image(f, a).contains(&x))
    })
}

fn constant_number(f: &Filter, n: u8, k: usize) -> bool {
    subsets(n).iter().all(|a| a.len() < k || image(f, a).len() == k)
}

#[test]
fn property_checkers_match_definitions_on_three_alternatives() {
    let u = Universe::numbered(3).unwrap();
    let mut seen = [0usize; 7];
    for f in all_filters(&u).unwrap() {
        let cases = [
            (check_sens_alpha(&f).holds, alpha(&f, 3)),
            (check_sens_beta(&f, BetaVariant::Literal).holds, beta(&f, 3, false)),
            (check_sens_beta(&f, BetaVariant::Classical).holds, beta(&f, 3, true)),
            (check_condition_tau(&f).holds, tau(&f, 3)),
            (check_io(&f).holds, io(&f, 3)),
            (check_constant_number(&f, 1).holds, constant_number(&f, 3, 1)),
            (check_constant_number(&f, 2).holds, constant_number(&f, 3, 2)),
        ];
        for (i, (lib, oracle)) in cases.into_iter().enumerate() {
            assert_eq!(lib, oracle, "check {i} on {:?}", f.table());
            seen[i] += usize::from(oracle);
        }
    }
    // IO filters on three alternatives are exactly the eight fixed sets
    assert_eq!(seen[4], 8);
    assert!(seen.iter().all(|&k| k > 0 && k < 4096));
}

#[test]
fn property_checkers_match_definitions_on_random_filters() {
    for n in [4u8, 5] {
        let u = Universe::numbered(n as usize).unwrap();
        let mut rng = sampling::rng(u64::from(n));
        for i in 0..300 {
            let f = if i % 2 == 0 {
                sampling::random_table_filter(&u, &mut rng)
            } else {
                sampling::random_rule_filter(&u, &mut rng)
            };
            assert_eq!(check_sens_alpha(&f).holds, alpha(&f, n));
            assert_eq!(check_condition_tau(&f).holds, tau(&f, n));
            assert_eq!(check_io(&f).holds, io(&f, n));
            assert_eq!(check_sens_beta(&f, BetaVariant::Classical).holds, beta(&f, n, true));
        }
    }
}

#[test]
fn composition_and_commutativity_match_definitions() {
    let u = Universe::numbered(2).unwrap();
    let all: Vec<Filter> = all_filters(&u).unwrap().collect();
    for a in &all {
        for b in &all {
            let ab = compose2(a, b).unwrap();
            let mut commute = true;
            for m in subsets(2) {
                let then = image(b, &image(a, &m));
                assert_eq!(image(&ab, &m), then);
                commute &= then == image(a, &image(b, &m));
            }
            assert_eq!(check_commutative2(a, b).unwrap().commutative, commute);
        }
    }
}

#[test]
fn filter_choice_matches_enumeration() {
    let u = Universe::numbered(3).unwrap();
    let pref = Preference::from_names(&u, &["2", "3", "1"]).unwrap();
    let rank: BTreeMap<u8, usize> = pref.order().iter().enumerate().map(|(r, a)| (a.0, r)).collect();
    let benefit = vec![1.0, 4.0, 2.5];
    let cost = vec![0.0, 0.5, 1.5, 3.5];
    let model = FilterUtilityModel::new(pref, benefit.clone(), cost.clone()).unwrap();
    let filters: Vec<Filter> = all_filters(&u).unwrap().step_by(37).collect();
    let space = FilterSpace::unlabeled(filters.clone()).unwrap();
    for s in subsets(3) {
        let utilities: Vec<(bool, f64)> = filters
            .iter()
            .map(|f| {
                let g = image(f, &s);
                let best = g.iter().min_by_key(|x| rank[x]).map_or(0.0, |&x| benefit[x as usize]);
                (!g.is_empty(), best - cost[g.len()])
            })
            .collect();
        let any_nonempty = utilities.iter().any(|&(ne, _)| ne);
        let mut best: Option<(usize, f64)> = None;
        for (i, &(ne, v)) in utilities.iter().enumerate() {
            if (ne || !any_nonempty) && best.is_none_or(|(_, b)| v > b) {
                best = Some((i, v));
            }
        }
        let choice = choose_filter(&model, &space, menu(&s)).unwrap();
        assert_eq!(choice.index, best.unwrap().0, "menu {s:?}");
    }
}

/// Every dataset on `n` alternatives: each nonempty menu is unrecorded,
/// recorded as no choice, or recorded with one of its members.
fn all_datasets(n: u8) -> Vec<BTreeMap<Set, Option<u8>>> {
    let menus: Vec<Set> = subsets(n).into_iter().filter(|s| !s.is_empty()).collect();
    let options: Vec<Vec<Option<Option<u8>>>> = menus
        .iter()
        .map(|m| {
            let mut o = vec![None, Some(None)];
            o.extend(m.iter().map(|&x| Some(Some(x))));
            o
        })
        .collect();
    options
        .into_iter()
        .multi_cartesian_product()
        .map(|pick| {
            menus
                .iter()
                .zip(pick)
                .filter_map(|(m, p)| p.map(|c| (m.clone(), c)))
                .collect()
        })
        .collect()
}

fn to_dataset(u: &Universe, d: &BTreeMap<Set, Option<u8>>) -> ChoiceDataset {
    ChoiceDataset::from_records(u, d.iter().map(|(m, c)| (menu(m), c.map(Alt)))).unwrap()
}

fn choices(d: &BTreeMap<Set, Option<u8>>) -> impl Iterator<Item = (&Set, u8)> {
    d.iter().filter_map(|(m, c)| c.map(|c| (m, c)))
}

fn warp(d: &BTreeMap<Set, Option<u8>>) -> bool {
    choices(d).all(|(s, x)| choices(d).all(|(t, y)| x == y || !s.contains(&y) || !t.contains(&x)))
}

fn warp_co(d: &BTreeMap<Set, Option<u8>>, n: u8) -> bool {
    subsets(n).iter().filter(|s| !s.is_empty()).all(|s| {
        s.iter().any(|&b| {
            choices(d).all(|(t, ct)| {
                let chosen_above = choices(d).any(|(tp, c)| c == b && t.is_subset(tp) && t != tp);
                !(t.contains(&b) && s.contains(&ct) && chosen_above) || ct == b
            })
        })
    })
}

/// Part 1 with undecided pair clauses skipped, and Part 2.
fn warp_io(d: &BTreeMap<Set, Option<u8>>, n: u8) -> bool {
    let ever: Set = choices(d).map(|(_, c)| c).collect();
    let part1 = subsets(n).iter().filter(|s| !s.is_empty()).all(|s| {
        s.iter().any(|&b| {
            if let Some(Some(c)) = d.get(s) {
                if *c != b {
                    return false;
                }
            }
            choices(d).all(|(t, ct)| {
                if !t.contains(&b) || !s.contains(&ct) {
                    return true;
                }
                let pairs: Vec<Option<&Option<u8>>> = t
                    .intersection(&ever)
                    .map(|&x| d.get(&[b, x].into_iter().collect::<Set>()))
                    .collect();
                let lost = pairs.iter().any(|p| matches!(p, Some(c) if **c != Some(b)));
                let missing = pairs.iter().any(|p| p.is_none());
                if !lost && missing {
                    return true;
                }
                (ct == b) == !lost
            })
        })
    });
    let part2 = (0..n).all(|b| d.get(&[b].into_iter().collect::<Set>()) != Some(&None) || !ever.contains(&b));
    part1 && part2
}

fn rationalizable(d: &BTreeMap<Set, Option<u8>>, n: u8) -> bool {
    (0..n)
        .permutations(n as usize)
        .any(|order| choices(d).all(|(m, c)| m.iter().min_by_key(|x| order.iter().position(|o| o == *x)) == Some(&c)))
}

#[test]
fn audits_match_definitions_on_every_three_alternative_dataset() {
    let u = Universe::numbered(3).unwrap();
    let all = all_datasets(3);
    assert_eq!(all.len(), 27 * 64 * 5);
    let mut counts = [0usize; 3];
    for d in &all {
        let ds = to_dataset(&u, d);
        let (w, co, io) = (check_warp(&ds), check_warp_co(&ds), check_warp_io(&ds));
        assert_eq!(w.satisfied, warp(d), "{d:?}");
        assert_eq!(co.satisfied, warp_co(d, 3), "{d:?}");
        assert_eq!(io.satisfied, warp_io(d, 3), "{d:?}");
        for (axiom, r) in [
            (WarpAxiom::Warp, &w),
            (WarpAxiom::WarpCo, &co),
            (WarpAxiom::WarpIo, &io),
        ] {
            assert!(r.violations.iter().all(|v| v.replay(axiom, &ds)));
        }
        counts[0] += usize::from(!w.satisfied);
        counts[1] += usize::from(!co.satisfied);
        counts[2] += usize::from(!io.satisfied);
    }
    // With three alternatives the overload clause can never fire.
    assert_eq!(counts[1], 0);
    assert!(counts[0] > 0 && counts[2] > 0);
}

#[test]
fn overload_needs_four_alternatives() {
    let u = Universe::new(["x", "y", "z", "w"]).unwrap();
    let rec = |names: &[&str], c: &str| (u.menu(names).unwrap(), u.alt(c));
    let ds = ChoiceDataset::from_records(
        &u,
        [
            rec(&["x", "y"], "x"),
            rec(&["x", "y", "z"], "y"),
            rec(&["x", "y", "w"], "y"),
            rec(&["x", "y", "z", "w"], "x"),
        ],
    )
    .unwrap();
    let r = check_warp_co(&ds);
    assert!(!r.satisfied);
    let d: BTreeMap<Set, Option<u8>> = ds.records().map(|(m, c)| (set(m), c.map(|a| a.0))).collect();
    assert!(!warp_co(&d, 4));
    let WarpViolation::NoViableCandidate { menu, .. } = &r.violations[0] else {
        panic!("expected a menu with no viable candidate")
    };
    assert_eq!(*menu, u.menu(&["x", "y"]).unwrap());
}

#[test]
fn warp_matches_rationalizability_on_full_domains() {
    for n in 2u8..=4 {
        let u = Universe::numbered(n as usize).unwrap();
        let menus: Vec<Set> = subsets(n).into_iter().filter(|s| !s.is_empty()).collect();
        let mut total = 0;
        let mut rational = 0;
        for pick in menus
            .iter()
            .map(|m| m.iter().copied().collect::<Vec<_>>())
            .multi_cartesian_product()
        {
            let d: BTreeMap<Set, Option<u8>> = menus.iter().cloned().zip(pick.into_iter().map(Some)).collect();
            let ds = to_dataset(&u, &d);
            assert!(ds.is_full_domain());
            let w = check_warp(&ds).satisfied;
            let oracle = rationalizability_oracle(&ds).unwrap();
            assert_eq!(w, oracle.is_some());
            assert_eq!(w, rationalizable(&d, n));
            total += 1;
            rational += usize::from(w);
        }
        let factorial: usize = (1..=n as usize).product();
        assert_eq!(rational, factorial, "n = {n}, {total} datasets");
    }
}

#[test]
fn rationalizing_order_reproduces_choices() {
    let u = Universe::numbered(5).unwrap();
    for seed in 0..40 {
        let ds = sampling::random_rational_dataset(&u, &mut sampling::rng(seed));
        let p = rationalizability_oracle(&ds)
            .unwrap()
            .expect("rational by construction");
        for (m, c) in ds.records() {
            assert_eq!(p.choose(m), c);
        }
        assert!(check_warp(&ds).satisfied);
        assert!(check_warp_co(&ds).satisfied);
    }
}
