//! Decision procedures for filter properties.
//!
//! Every checker scans menus in ascending canonical encoding and stops at the
//! first violation, so the witness it returns is deterministic. A witness can
//! be replayed against a filter with [`PropertyReport::replay`], which
//! re-evaluates the defining implication from scratch.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::ordered::OrderedFilter;
use crate::report::{Finding, Mode, TheoremReport};
use crate::sampling::{self, EXHAUSTIVE_FILTER_CAP};
use crate::universe::{Alt, Menu, Universe};

/// Largest menu whose orderings [`check_dio`] enumerates by default (8! = 40320).
pub const DEFAULT_FACTORIAL_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    SensAlpha,
    SensBetaLiteral,
    SensBetaClassical,
    ConditionTau,
    Io,
    Dio,
    ConstantNumber(usize),
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::SensAlpha => f.write_str("Sen's alpha"),
            Property::SensBetaLiteral => f.write_str("Sen's beta (literal)"),
            Property::SensBetaClassical => f.write_str("Sen's beta (classical)"),
            Property::ConditionTau => f.write_str("Condition tau"),
            Property::Io => f.write_str("IO"),
            Property::Dio => f.write_str("DIO"),
            Property::ConstantNumber(n) => write!(f, "Constant Number({n})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaVariant {
    /// `x₁,x₂ ∈ A ⊆ B ∧ x₂ ∈ Γ(B) ⟹ x₁ ∈ Γ(B)`.
    Literal,
    /// As literal, with `x₁,x₂ ∈ Γ(A)` added to the antecedent.
    Classical,
}

/// A counterexample to one of the defining implications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `x ∈ Γ(B)`, `x ∈ A ⊆ B`, yet `x ∉ Γ(A)`.
    Alpha { x: Alt, subset: Menu, superset: Menu },
    /// `x₁,x₂ ∈ A ⊆ B`, `x₂ ∈ Γ(B)`, yet `x₁ ∉ Γ(B)`.
    Beta {
        x1: Alt,
        x2: Alt,
        subset: Menu,
        superset: Menu,
    },
    /// `x ∈ Γ(A)`, `A ⊆ B`, yet `x ∉ Γ(B)`.
    Tau { x: Alt, subset: Menu, superset: Menu },
    /// `x` is considered from one menu and dropped from another that offers it.
    Io {
        x: Alt,
        considered_in: Menu,
        dropped_in: Menu,
    },
    /// Two listings of the same menu produce different consideration sets.
    Dio {
        first: Vec<Alt>,
        second: Vec<Alt>,
        first_image: Menu,
        second_image: Menu,
    },
    /// A menu with at least `n` members whose image has another size.
    ConstantNumber { menu: Menu, image_size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
    /// For IO filters, the set `Y = Γ(X)` with `Γ(A) = A ∩ Y`.
    pub considered: Option<Menu>,
}

impl PropertyReport {
    fn from_witness(property: Property, witness: Option<Witness>) -> Self {
        PropertyReport {
            property,
            holds: witness.is_none(),
            witness,
            considered: None,
        }
    }

    /// Re-checks the witness against `filter` using only the definition.
    /// Returns `false` when there is no witness or it does not violate.
    pub fn replay(&self, filter: &Filter) -> bool {
        let Some(w) = &self.witness else {
            return false;
        };
        let g = |m: Menu| filter.apply(m);
        match (*w).clone() {
            Witness::Alpha { x, subset, superset } => {
                subset.is_subset_of(superset) && subset.contains(x) && g(superset).contains(x) && !g(subset).contains(x)
            }
            Witness::Beta {
                x1,
                x2,
                subset,
                superset,
            } => {
                let classical_ok = match self.property {
                    Property::SensBetaClassical => g(subset).contains(x1) && g(subset).contains(x2),
                    _ => true,
                };
                subset.is_subset_of(superset)
                    && subset.contains(x1)
                    && subset.contains(x2)
                    && classical_ok
                    && g(superset).contains(x2)
                    && !g(superset).contains(x1)
            }
            Witness::Tau { x, subset, superset } => {
                subset.is_subset_of(superset) && g(subset).contains(x) && !g(superset).contains(x)
            }
            Witness::Io {
                x,
                considered_in,
                dropped_in,
            } => g(considered_in).contains(x) && dropped_in.contains(x) && !g(dropped_in).contains(x),
            Witness::ConstantNumber { menu, .. } => match self.property {
                Property::ConstantNumber(n) => menu.len() >= n && g(menu).len() != n,
                _ => false,
            },
            Witness::Dio { .. } => false,
        }
    }

    /// DIO counterpart of [`PropertyReport::replay`].
    pub fn replay_ordered(&self, filter: &OrderedFilter) -> bool {
        match &self.witness {
            Some(Witness::Dio { first, second, .. }) => {
                let same_set = first.iter().copied().collect::<Menu>() == second.iter().copied().collect::<Menu>();
                same_set && filter.apply(first) != filter.apply(second)
            }
            _ => false,
        }
    }

    pub fn summary(&self) -> String {
        match &self.witness {
            None => format!("{}: holds", self.property),
            Some(w) => format!("{}: fails ({w:?})", self.property),
        }
    }

    /// Human-readable line using alternative names.
    pub fn describe(&self, universe: &Universe) -> String {
        let s = |m: Menu| universe.show(m);
        let n = |a: Alt| universe.name(a).to_owned();
        let Some(w) = &self.witness else {
            return match self.considered {
                Some(y) => format!("{}: holds, Y={}", self.property, s(y)),
                None => format!("{}: holds", self.property),
            };
        };
        let detail = match w {
            Witness::Alpha { x, subset, superset } => format!(
                "{} in G({}) and {} in {} subset of {}, but {} not in G({})",
                n(*x),
                s(*superset),
                n(*x),
                s(*subset),
                s(*superset),
                n(*x),
                s(*subset)
            ),
            Witness::Beta {
                x1,
                x2,
                subset,
                superset,
            } => format!(
                "{} and {} in {} subset of {}, {} in G({}), but {} not in G({})",
                n(*x1),
                n(*x2),
                s(*subset),
                s(*superset),
                n(*x2),
                s(*superset),
                n(*x1),
                s(*superset)
            ),
            Witness::Tau { x, subset, superset } => format!(
                "{} in G({}) and {} subset of {}, but {} not in G({})",
                n(*x),
                s(*subset),
                s(*subset),
                s(*superset),
                n(*x),
                s(*superset)
            ),
            Witness::Io {
                x,
                considered_in,
                dropped_in,
            } => format!(
                "{} in G({}) but {} in {} and not in G({})",
                n(*x),
                s(*considered_in),
                n(*x),
                s(*dropped_in),
                s(*dropped_in)
            ),
            Witness::Dio {
                first,
                second,
                first_image,
                second_image,
            } => format!(
                "listing ({}) gives {} but listing ({}) gives {}",
                first.iter().map(|a| n(*a)).join(","),
                s(*first_image),
                second.iter().map(|a| n(*a)).join(","),
                s(*second_image)
            ),
            Witness::ConstantNumber { menu, image_size } => {
                format!("|{}| = {} but |G({})| = {}", s(*menu), menu.len(), s(*menu), image_size)
            }
        };
        format!("{}: fails, {detail}", self.property)
    }
}

pub fn check_sens_alpha(filter: &Filter) -> PropertyReport {
    let witness = filter.universe().menus().find_map(|b| {
        let gb = filter.apply(b);
        b.subsets().find_map(|a| {
            gb.intersection(a)
                .difference(filter.apply(a))
                .first()
                .map(|x| Witness::Alpha {
                    x,
                    subset: a,
                    superset: b,
                })
        })
    });
    PropertyReport::from_witness(Property::SensAlpha, witness)
}

pub fn check_sens_beta(filter: &Filter, variant: BetaVariant) -> PropertyReport {
    let universe = filter.universe();
    let witness = match variant {
        // Only the pair {x₁, x₂} matters as A, so the literal form says every
        // image is either empty or the whole menu.
        BetaVariant::Literal => universe.menus().find_map(|b| {
            let gb = filter.apply(b);
            let x2 = gb.first()?;
            let x1 = b.difference(gb).first()?;
            Some(Witness::Beta {
                x1,
                x2,
                subset: Menu::singleton(x1).with(x2),
                superset: b,
            })
        }),
        BetaVariant::Classical => universe.menus().find_map(|a| {
            let ga = filter.apply(a);
            a.supersets_within(universe.full()).find_map(|b| {
                let gb = filter.apply(b);
                let x2 = gb.intersection(ga).first()?;
                let x1 = ga.difference(gb).first()?;
                Some(Witness::Beta {
                    x1,
                    x2,
                    subset: a,
                    superset: b,
                })
            })
        }),
    };
    let property = match variant {
        BetaVariant::Literal => Property::SensBetaLiteral,
        BetaVariant::Classical => Property::SensBetaClassical,
    };
    PropertyReport::from_witness(property, witness)
}

pub fn check_condition_tau(filter: &Filter) -> PropertyReport {
    let universe = filter.universe();
    let witness = universe.menus().find_map(|a| {
        let ga = filter.apply(a);
        a.supersets_within(universe.full()).find_map(|b| {
            ga.difference(filter.apply(b)).first().map(|x| Witness::Tau {
                x,
                subset: a,
                superset: b,
            })
        })
    });
    PropertyReport::from_witness(Property::ConditionTau, witness)
}

/// Independence of others: each alternative is considered from every menu
/// that offers it, or from none. Equivalent to `Γ(A) = A ∩ Γ(X)` for all `A`.
pub fn check_io(filter: &Filter) -> PropertyReport {
    let full = filter.universe().full();
    let y = filter.on_full();
    let witness = filter.universe().menus().find_map(|a| {
        let ga = filter.apply(a);
        let dropped = a.intersection(y).difference(ga);
        let extra = ga.difference(y);
        let x = dropped.union(extra).first()?;
        Some(if dropped.contains(x) {
            Witness::Io {
                x,
                considered_in: full,
                dropped_in: a,
            }
        } else {
            Witness::Io {
                x,
                considered_in: a,
                dropped_in: full,
            }
        })
    });
    let mut report = PropertyReport::from_witness(Property::Io, witness);
    if report.holds {
        report.considered = Some(y);
    }
    report
}

/// Order invariance of an ordered filter over every listing of `menu`.
pub fn check_dio(filter: &OrderedFilter, menu: Menu, factorial_cap: usize) -> Result<PropertyReport> {
    filter.universe().check_menu(menu)?;
    if menu.len() > factorial_cap {
        return Err(Error::capacity("DIO menu size", menu.len(), factorial_cap));
    }
    let base: Vec<Alt> = menu.iter().collect();
    let base_image = filter.apply(&base);
    let witness = base.iter().copied().permutations(base.len()).find_map(|perm| {
        let image = filter.apply(&perm);
        (image != base_image).then(|| Witness::Dio {
            first: base.clone(),
            second: perm,
            first_image: base_image,
            second_image: image,
        })
    });
    Ok(PropertyReport::from_witness(Property::Dio, witness))
}

/// [`check_dio`] over every menu of the universe.
pub fn check_dio_all(filter: &OrderedFilter, factorial_cap: usize) -> Result<PropertyReport> {
    let universe = filter.universe();
    if universe.len() > factorial_cap {
        return Err(Error::capacity("DIO menu size", universe.len(), factorial_cap));
    }
    for menu in universe.menus() {
        let report = check_dio(filter, menu, factorial_cap)?;
        if !report.holds {
            return Ok(report);
        }
    }
    Ok(PropertyReport::from_witness(Property::Dio, None))
}

/// `|Γ(A)| = n` on every menu with at least `n` members; smaller menus are
/// unconstrained.
pub fn check_constant_number(filter: &Filter, n: usize) -> PropertyReport {
    let witness = filter.universe().menus().find_map(|a| {
        let size = filter.apply(a).len();
        (a.len() >= n && size != n).then_some(Witness::ConstantNumber {
            menu: a,
            image_size: size,
        })
    });
    PropertyReport::from_witness(Property::ConstantNumber(n), witness)
}

/// Checks `IO ⟺ (Sen's α ∧ Condition τ)` on every examined filter.
///
/// Exhaustive mode covers the whole filter space and needs at most
/// [`EXHAUSTIVE_FILTER_CAP`] alternatives. Sampled mode alternates uniformly
/// random tables with random rule-backed filters.
pub fn verify_theorem1(universe: &Universe, mode: Mode) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("IO iff (Sen's alpha and Condition tau)", mode, universe.len());
    let mut examine = |filter: Filter| {
        let io = check_io(&filter).holds;
        let alpha = check_sens_alpha(&filter).holds;
        let tau = check_condition_tau(&filter).holds;
        let agreed = io == (alpha && tau);
        report.tally(agreed);
        if !agreed {
            report.counterexamples.push(Finding {
                label: "equivalence fails".into(),
                detail: format!("io={io} alpha={alpha} tau={tau}"),
                filters: vec![filter],
                menu: None,
            });
        }
    };
    match mode {
        Mode::Exhaustive => {
            if universe.len() > EXHAUSTIVE_FILTER_CAP {
                return Err(Error::capacity(
                    "exhaustive filter space (alternatives)",
                    universe.len(),
                    EXHAUSTIVE_FILTER_CAP,
                ));
            }
            sampling::all_filters(universe)?.for_each(&mut examine);
        }
        Mode::Sampled { count, seed } => {
            let mut rng = sampling::rng(seed);
            for i in 0..count {
                let f = if i % 2 == 0 {
                    sampling::random_table_filter(universe, &mut rng)
                } else {
                    sampling::random_rule_filter(universe, &mut rng)
                };
                examine(f);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::{build_filter, top_k_canonical, Rule};
    use crate::ordered::OrderedRule;

    fn named(u: &Universe, names: &[&str]) -> Menu {
        u.menu(names).unwrap()
    }

    fn first_of_listing(u: &Universe, listing: &[&str]) -> Filter {
        build_filter(
            u,
            Rule::SatisficingPrefix {
                listing: u.sequence(listing).unwrap(),
                acceptable: u.full(),
                k: 1,
            },
        )
        .unwrap()
    }

    fn top1(u: &Universe, order: &[&str]) -> Filter {
        build_filter(
            u,
            Rule::TopK {
                order: u.sequence(order).unwrap(),
                k: 1,
            },
        )
        .unwrap()
    }

    #[test]
    fn alpha_on_fixed_set_example() {
        let u = Universe::numbered(9).unwrap();
        let f = Filter::fixed_set(&u, named(&u, &["2", "3"]));
        assert_eq!(f.apply(named(&u, &["1", "2", "3", "4", "5"])), named(&u, &["2", "3"]));
        assert!(check_sens_alpha(&f).holds);
        let ga = f.apply(named(&u, &["1", "2", "3"]));
        assert!(named(&u, &["2", "3"]).is_subset_of(ga));
    }

    #[test]
    fn alpha_holds_tau_fails_for_first_of_listing() {
        let u = Universe::numbered(2).unwrap();
        let top = top1(&u, &["2", "1"]);
        assert!(check_sens_alpha(&top).holds);

        let first = first_of_listing(&u, &["1", "2"]);
        assert_eq!(first.apply(u.full()), named(&u, &["1"]));
        assert_eq!(first.apply(named(&u, &["2"])), named(&u, &["2"]));
        assert!(check_sens_alpha(&first).holds);
        let tau = check_condition_tau(&first);
        assert!(!tau.holds);
        assert!(tau.replay(&first));
    }

    #[test]
    fn tau_witness_for_top_one() {
        let u = Universe::numbered(2).unwrap();
        let f = top1(&u, &["2", "1"]);
        let r = check_condition_tau(&f);
        assert_eq!(
            r.witness,
            Some(Witness::Tau {
                x: u.alt("1").unwrap(),
                subset: named(&u, &["1"]),
                superset: u.full(),
            })
        );
        assert!(r.replay(&f));
    }

    #[test]
    fn tau_example_and_fixed_sets() {
        let u = Universe::numbered(9).unwrap();
        let f = Filter::fixed_set(&u, named(&u, &["2", "3"]));
        assert!(check_condition_tau(&f).holds);
        let gb = f.apply(named(&u, &["1", "2", "3", "4", "5"]));
        assert!(named(&u, &["2", "3"]).is_subset_of(gb));
    }

    #[test]
    fn beta_variants_differ_on_singleton_fixed_set() {
        let u = Universe::numbered(2).unwrap();
        let f = Filter::fixed_set(&u, named(&u, &["2"]));
        let lit = check_sens_beta(&f, BetaVariant::Literal);
        assert_eq!(
            lit.witness,
            Some(Witness::Beta {
                x1: u.alt("1").unwrap(),
                x2: u.alt("2").unwrap(),
                subset: u.full(),
                superset: u.full(),
            })
        );
        assert!(lit.replay(&f));
        assert!(check_sens_beta(&f, BetaVariant::Classical).holds);

        let id = Filter::identity(&u);
        assert!(check_sens_beta(&id, BetaVariant::Literal).holds);
        assert!(check_sens_beta(&id, BetaVariant::Classical).holds);
    }

    #[test]
    fn beta_classical_example() {
        let u = Universe::numbered(9).unwrap();
        let f = Filter::fixed_set(&u, named(&u, &["2", "3"]));
        assert!(check_sens_beta(&f, BetaVariant::Classical).holds);
        let a = named(&u, &["1", "2", "3"]);
        assert_eq!(f.apply(a), named(&u, &["2", "3"]));
        for b in a.supersets_within(u.full()) {
            if f.apply(b).contains(u.alt("2").unwrap()) {
                assert!(f.apply(b).contains(u.alt("3").unwrap()));
            }
        }
    }

    #[test]
    fn io_examples() {
        let u = Universe::numbered(9).unwrap();
        let f = Filter::fixed_set(&u, named(&u, &["1", "2", "3"]));
        let r = check_io(&f);
        assert!(r.holds);
        let one = u.alt("1").unwrap();
        assert!(f.apply(named(&u, &["1", "2", "3", "4", "5"])).contains(one));
        assert!(f.apply(named(&u, &["1", "4", "7"])).contains(one));
        assert!(f.apply(named(&u, &["1", "6", "8"])).contains(one));

        let id = check_io(&Filter::identity(&u));
        assert_eq!(id.considered, Some(u.full()));
        assert_eq!(id.describe(&u), "IO: holds, Y={1,2,3,4,5,6,7,8,9}".to_string());
    }

    #[test]
    fn io_witness_for_first_of_listing() {
        let u = Universe::numbered(2).unwrap();
        let f = first_of_listing(&u, &["1", "2"]);
        let r = check_io(&f);
        assert_eq!(
            r.witness,
            Some(Witness::Io {
                x: u.alt("2").unwrap(),
                considered_in: named(&u, &["2"]),
                dropped_in: u.full(),
            })
        );
        assert!(r.replay(&f));
    }

    #[test]
    fn dio_cases() {
        let u = Universe::numbered(3).unwrap();
        let lifted = OrderedFilter::lift(&top_k_canonical(&u, 1));
        for m in u.menus() {
            assert!(check_dio(&lifted, m, DEFAULT_FACTORIAL_CAP).unwrap().holds);
        }

        let first2 = OrderedFilter::new(&u, OrderedRule::FirstK(2)).unwrap();
        let r = check_dio(&first2, u.full(), DEFAULT_FACTORIAL_CAP).unwrap();
        assert!(!r.holds);
        assert!(r.replay_ordered(&first2));
        let listing = u.sequence(&["3", "1", "2"]).unwrap();
        assert_eq!(first2.apply(&listing), named(&u, &["1", "3"]));

        let single = named(&u, &["2"]);
        assert!(check_dio(&first2, single, DEFAULT_FACTORIAL_CAP).unwrap().holds);
        assert!(!check_dio_all(&first2, DEFAULT_FACTORIAL_CAP).unwrap().holds);
    }

    #[test]
    fn dio_capacity() {
        let u = Universe::numbered(10).unwrap();
        let f = OrderedFilter::new(&u, OrderedRule::FirstK(1)).unwrap();
        assert!(matches!(
            check_dio(&f, u.full(), DEFAULT_FACTORIAL_CAP),
            Err(Error::Capacity { size: 10, cap: 8, .. })
        ));
    }

    #[test]
    fn constant_number_cases() {
        let u = Universe::numbered(3).unwrap();
        let top2 = top_k_canonical(&u, 2);
        assert!(check_constant_number(&top2, 2).holds);
        let image = top2.apply(u.full());
        assert!([named(&u, &["1", "2"]), named(&u, &["1", "3"]), named(&u, &["2", "3"])].contains(&image));

        assert!(check_constant_number(&Filter::empty(&u), 0).holds);
        assert!(!check_constant_number(&Filter::identity(&u), 0).holds);

        let u2 = Universe::numbered(2).unwrap();
        let id = Filter::identity(&u2);
        let r = check_constant_number(&id, 1);
        assert_eq!(
            r.witness,
            Some(Witness::ConstantNumber {
                menu: u2.full(),
                image_size: 2
            })
        );
        assert!(r.replay(&id));
    }

    #[test]
    fn theorem1_small_exhaustive() {
        let u = Universe::numbered(2).unwrap();
        let r = verify_theorem1(&u, Mode::Exhaustive).unwrap();
        assert_eq!((r.checked, r.agreements), (16, 16));
        assert!(r.holds());
        assert!(verify_theorem1(&Universe::numbered(4).unwrap(), Mode::Exhaustive).is_err());
    }
}
