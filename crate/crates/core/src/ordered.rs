//! Order-aware consideration: menus presented as sequences.

use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::universe::{Alt, Menu, Universe};

/// A duplicate-free listing of alternatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedMenu(Vec<Alt>);

impl OrderedMenu {
    pub fn new(universe: &Universe, seq: Vec<Alt>) -> Result<Self> {
        let mut seen = Menu::EMPTY;
        for &a in &seq {
            universe.check_alt(a)?;
            if seen.contains(a) {
                return Err(Error::validation("ordered menu repeats an alternative"));
            }
            seen = seen.with(a);
        }
        Ok(OrderedMenu(seq))
    }

    pub fn as_slice(&self) -> &[Alt] {
        &self.0
    }

    pub fn to_menu(&self) -> Menu {
        self.0.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// How an ordered filter reads a listing.
#[derive(Clone, Debug, PartialEq)]
pub enum OrderedRule {
    /// Ignore the order and apply a plain filter to the underlying set.
    Lift(Filter),
    /// Keep the first `k` alternatives of the listing.
    FirstK(usize),
    /// Keep the first `k` acceptable alternatives of the listing.
    Satisficing { acceptable: Menu, k: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderedFilter {
    universe: Universe,
    rule: OrderedRule,
}

impl OrderedFilter {
    pub fn new(universe: &Universe, rule: OrderedRule) -> Result<Self> {
        match &rule {
            OrderedRule::Lift(f) => universe.ensure_same(f.universe())?,
            OrderedRule::Satisficing { acceptable, .. } => universe.check_menu(*acceptable)?,
            OrderedRule::FirstK(_) => {}
        }
        Ok(OrderedFilter {
            universe: universe.clone(),
            rule,
        })
    }

    /// The order-insensitive lift of a plain filter.
    pub fn lift(filter: &Filter) -> Self {
        OrderedFilter {
            universe: filter.universe().clone(),
            rule: OrderedRule::Lift(filter.clone()),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn rule(&self) -> &OrderedRule {
        &self.rule
    }

    /// Consideration set produced when the alternatives arrive in `seq` order.
    pub fn apply(&self, seq: &[Alt]) -> Menu {
        match &self.rule {
            OrderedRule::Lift(f) => f.apply(seq.iter().copied().collect()),
            OrderedRule::FirstK(k) => seq.iter().copied().take(*k).collect(),
            OrderedRule::Satisficing { acceptable, k } => seq
                .iter()
                .copied()
                .filter(|&a| acceptable.contains(a))
                .take(*k)
                .collect(),
        }
    }

    pub fn apply_ordered(&self, menu: &OrderedMenu) -> Menu {
        self.apply(menu.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_k_depends_on_listing() {
        let u = Universe::numbered(3).unwrap();
        let f = OrderedFilter::new(&u, OrderedRule::FirstK(2)).unwrap();
        let a = u.sequence(&["1", "2", "3"]).unwrap();
        let b = u.sequence(&["3", "1", "2"]).unwrap();
        assert_eq!(f.apply(&a), u.menu(&["1", "2"]).unwrap());
        assert_eq!(f.apply(&b), u.menu(&["1", "3"]).unwrap());
    }

    #[test]
    fn outputs_are_contained_in_listing() {
        let u = Universe::numbered(4).unwrap();
        let f = OrderedFilter::new(
            &u,
            OrderedRule::Satisficing {
                acceptable: u.menu(&["2", "4"]).unwrap(),
                k: 1,
            },
        )
        .unwrap();
        let seq = u.sequence(&["4", "1", "2"]).unwrap();
        let om = OrderedMenu::new(&u, seq).unwrap();
        let out = f.apply_ordered(&om);
        assert!(out.is_subset_of(om.to_menu()));
        assert_eq!(out, u.menu(&["4"]).unwrap());
    }

    #[test]
    fn ordered_menu_rejects_repeats() {
        let u = Universe::numbered(3).unwrap();
        assert!(OrderedMenu::new(&u, vec![Alt(0), Alt(0)]).is_err());
        assert!(OrderedMenu::new(&u, vec![Alt(5)]).is_err());
    }
}
