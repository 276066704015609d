//! Consideration filters: total, contractive maps from menus to sub-menus.
//!
//! A [`Filter`] is always materialized as a full table indexed by menu
//! encoding. Rule-backed filters keep the [`Rule`] they were built from as
//! provenance; the table is authoritative.

use std::fmt;

use crate::error::{Error, Result};
use crate::universe::{Alt, Menu, Universe};

/// A screening heuristic that can be evaluated on any menu.
#[derive(Clone, Debug, PartialEq)]
pub enum Rule {
    /// `Γ(A) = A ∩ Y`.
    FixedSet(Menu),
    /// `Γ(A) = {x ∈ A : score(x) ≥ cutoff}`.
    Threshold { scores: Vec<f64>, cutoff: f64 },
    /// Keep the `k` best members of the menu under `order` (best first).
    TopK { order: Vec<Alt>, k: usize },
    /// Walk the menu in `listing` order and keep the first `k` members that
    /// are acceptable.
    SatisficingPrefix {
        listing: Vec<Alt>,
        acceptable: Menu,
        k: usize,
    },
    /// No generating rule; the table is the definition.
    ExplicitTable,
}

impl Rule {
    pub fn kind(&self) -> &'static str {
        match self {
            Rule::FixedSet(_) => "fixed-set",
            Rule::Threshold { .. } => "threshold",
            Rule::TopK { .. } => "top-k",
            Rule::SatisficingPrefix { .. } => "satisficing-prefix",
            Rule::ExplicitTable => "explicit-table",
        }
    }

    pub fn validate(&self, universe: &Universe) -> Result<()> {
        match self {
            Rule::FixedSet(y) => universe
                .check_menu(*y)
                .map_err(|_| Error::validation("fixed set is not a subset of the universe")),
            Rule::Threshold { scores, cutoff } => {
                if scores.len() != universe.len() {
                    return Err(Error::validation(format!(
                        "threshold scores cover {} alternatives, universe has {}",
                        scores.len(),
                        universe.len()
                    )));
                }
                if !cutoff.is_finite() || scores.iter().any(|s| !s.is_finite()) {
                    return Err(Error::validation("threshold scores and cutoff must be finite"));
                }
                Ok(())
            }
            Rule::TopK { order, .. } => check_permutation(universe, order, "top-k order"),
            Rule::SatisficingPrefix {
                listing, acceptable, ..
            } => {
                check_permutation(universe, listing, "satisficing listing")?;
                universe
                    .check_menu(*acceptable)
                    .map_err(|_| Error::validation("acceptable set is not a subset of the universe"))
            }
            Rule::ExplicitTable => Ok(()),
        }
    }

    /// Evaluates the rule on one menu. `None` for [`Rule::ExplicitTable`].
    pub fn eval(&self, menu: Menu) -> Option<Menu> {
        let out = match self {
            Rule::FixedSet(y) => menu.intersection(*y),
            Rule::Threshold { scores, cutoff } => menu.iter().filter(|a| scores[a.index()] >= *cutoff).collect(),
            Rule::TopK { order, k } => order.iter().copied().filter(|&a| menu.contains(a)).take(*k).collect(),
            Rule::SatisficingPrefix { listing, acceptable, k } => listing
                .iter()
                .copied()
                .filter(|&a| menu.contains(a) && acceptable.contains(a))
                .take(*k)
                .collect(),
            Rule::ExplicitTable => return None,
        };
        Some(out)
    }
}

fn check_permutation(universe: &Universe, order: &[Alt], what: &str) -> Result<()> {
    let mut seen = Menu::EMPTY;
    for &a in order {
        universe
            .check_alt(a)
            .map_err(|_| Error::validation(format!("{what} names an unknown alternative")))?;
        if seen.contains(a) {
            return Err(Error::validation(format!("{what} repeats an alternative")));
        }
        seen = seen.with(a);
    }
    if seen != universe.full() {
        return Err(Error::validation(format!(
            "{what} is not a permutation of the universe"
        )));
    }
    Ok(())
}

#[derive(Clone)]
pub struct Filter {
    universe: Universe,
    table: Vec<Menu>,
    provenance: Rule,
}

impl Filter {
    /// Builds a filter from an explicit table indexed by menu encoding.
    /// Rejects tables that are not total or not contractive.
    pub fn from_table(universe: &Universe, table: Vec<Menu>) -> Result<Self> {
        Self::with_provenance(universe, table, Rule::ExplicitTable)
    }

    pub(crate) fn with_provenance(universe: &Universe, table: Vec<Menu>, provenance: Rule) -> Result<Self> {
        if table.len() != universe.menu_count() {
            return Err(Error::validation(format!(
                "filter table has {} entries, expected {}",
                table.len(),
                universe.menu_count()
            )));
        }
        for (code, image) in table.iter().enumerate() {
            let menu = Menu::from_bits(code as u32);
            if !image.is_subset_of(menu) {
                return Err(Error::validation(format!(
                    "filter is not contractive at {}: image {:#x} escapes the menu",
                    universe.show(menu),
                    image.bits()
                )));
            }
        }
        Ok(Filter {
            universe: universe.clone(),
            table,
            provenance,
        })
    }

    /// Tabulates `f` over every menu.
    pub fn from_fn(universe: &Universe, f: impl Fn(Menu) -> Menu) -> Result<Self> {
        Self::from_table(universe, universe.menus().map(f).collect())
    }

    pub fn identity(universe: &Universe) -> Self {
        Self::fixed_set(universe, universe.full())
    }

    /// The constant-∅ filter.
    pub fn empty(universe: &Universe) -> Self {
        Self::fixed_set(universe, Menu::EMPTY)
    }

    /// `Γ(A) = A ∩ y`. Bits of `y` outside the universe are ignored.
    pub fn fixed_set(universe: &Universe, y: Menu) -> Self {
        let y = y.intersection(universe.full());
        Filter {
            universe: universe.clone(),
            table: universe.menus().map(|m| m.intersection(y)).collect(),
            provenance: Rule::FixedSet(y),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn table(&self) -> &[Menu] {
        &self.table
    }

    pub fn provenance(&self) -> &Rule {
        &self.provenance
    }

    /// Consideration set of `menu`. Panics if the menu lies outside the
    /// universe; use [`apply_filter`] for the checked form.
    pub fn apply(&self, menu: Menu) -> Menu {
        self.table[menu.code()]
    }

    /// `Γ(X)`.
    pub fn on_full(&self) -> Menu {
        self.apply(self.universe.full())
    }

    /// Alternatives considered from at least one menu.
    pub fn ever_considered(&self) -> Menu {
        self.table.iter().fold(Menu::EMPTY, |acc, m| acc.union(*m))
    }

    pub fn same_table(&self, other: &Filter) -> bool {
        self.universe == other.universe && self.table == other.table
    }

    /// First menu (ascending encoding) where the two tables differ.
    pub fn first_difference(&self, other: &Filter) -> Option<Menu> {
        self.universe.menus().find(|m| self.apply(*m) != other.apply(*m))
    }
}

impl PartialEq for Filter {
    /// Extensional: two filters are equal when their tables agree.
    fn eq(&self, other: &Self) -> bool {
        self.same_table(other)
    }
}

impl fmt::Debug for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for m in self.universe.menus() {
            map.entry(&self.universe.show(m), &self.universe.show(self.apply(m)));
        }
        map.finish()
    }
}

/// Materializes a rule-backed filter over every menu of `universe`.
pub fn build_filter(universe: &Universe, rule: Rule) -> Result<Filter> {
    rule.validate(universe)?;
    if matches!(rule, Rule::ExplicitTable) {
        return Err(Error::validation(
            "an explicit-table rule carries no table; use Filter::from_table",
        ));
    }
    let table = universe.menus().map(|m| rule.eval(m).expect("rule-backed")).collect();
    Filter::with_provenance(universe, table, rule)
}

pub fn apply_filter(filter: &Filter, menu: Menu) -> Result<Menu> {
    filter.universe.check_menu(menu)?;
    Ok(filter.apply(menu))
}

/// Keep the first `k` members of each menu under the canonical index order.
pub fn top_k_canonical(universe: &Universe, k: usize) -> Filter {
    build_filter(
        universe,
        Rule::TopK {
            order: universe.alts().collect(),
            k,
        },
    )
    .expect("canonical order is a permutation")
}
