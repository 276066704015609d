//! Observed choices: one record per menu, each either an alternative or
//! "no choice".

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::universe::{Alt, Menu, Universe};

#[derive(Clone, Debug, PartialEq)]
pub struct ChoiceDataset {
    universe: Universe,
    records: BTreeMap<Menu, Option<Alt>>,
    provenance: Option<String>,
}

impl ChoiceDataset {
    pub fn new(universe: &Universe) -> Self {
        ChoiceDataset {
            universe: universe.clone(),
            records: BTreeMap::new(),
            provenance: None,
        }
    }

    pub fn from_records<I>(universe: &Universe, records: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Menu, Option<Alt>)>,
    {
        let mut ds = Self::new(universe);
        for (menu, choice) in records {
            ds.record(menu, choice)?;
        }
        Ok(ds)
    }

    /// Adds one observation. A menu may be recorded at most once and a
    /// recorded choice must belong to its menu.
    pub fn record(&mut self, menu: Menu, choice: Option<Alt>) -> Result<()> {
        self.universe.check_menu(menu)?;
        if let Some(c) = choice {
            if !menu.contains(c) {
                return Err(Error::validation(format!(
                    "choice `{}` is not a member of {}",
                    self.universe.name(c),
                    self.universe.show(menu)
                )));
            }
        }
        if self.records.insert(menu, choice).is_some() {
            return Err(Error::validation(format!(
                "menu {} recorded twice",
                self.universe.show(menu)
            )));
        }
        Ok(())
    }

    /// Records the choice from `menu` given by `rule` for every menu of the
    /// universe.
    pub fn tabulate(universe: &Universe, rule: impl Fn(Menu) -> Option<Alt>) -> Result<Self> {
        Self::from_records(universe, universe.menus().map(|m| (m, rule(m))))
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn records(&self) -> impl Iterator<Item = (Menu, Option<Alt>)> + '_ {
        self.records.iter().map(|(m, c)| (*m, *c))
    }

    /// Records with an actual choice.
    pub fn choices(&self) -> impl Iterator<Item = (Menu, Alt)> + '_ {
        self.records.iter().filter_map(|(m, c)| c.map(|c| (*m, c)))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn is_recorded(&self, menu: Menu) -> bool {
        self.records.contains_key(&menu)
    }

    /// `None` when unrecorded, `Some(None)` when recorded as no choice.
    pub fn get(&self, menu: Menu) -> Option<Option<Alt>> {
        self.records.get(&menu).copied()
    }

    pub fn choice(&self, menu: Menu) -> Option<Alt> {
        self.get(menu).flatten()
    }

    /// Alternatives chosen from at least one recorded menu.
    pub fn ever_chosen(&self) -> Menu {
        self.choices().map(|(_, c)| c).collect()
    }

    /// Every nonempty menu is recorded with an actual choice.
    pub fn is_full_domain(&self) -> bool {
        self.universe
            .menus()
            .skip(1)
            .all(|m| matches!(self.get(m), Some(Some(_))))
    }
}

/// Menus whose recorded choice lies outside the filter's consideration set.
/// "No choice" records never violate.
pub fn check_choice_membership(dataset: &ChoiceDataset, filter: &Filter) -> Result<Vec<Menu>> {
    dataset.universe.ensure_same(filter.universe())?;
    Ok(dataset
        .choices()
        .filter(|&(m, c)| !filter.apply(m).contains(c))
        .map(|(m, _)| m)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_against_fixed_set() {
        let u = Universe::numbered(9).unwrap();
        let f = Filter::fixed_set(&u, u.menu(&["2", "3"]).unwrap());
        let m = u.menu(&["1", "2", "3"]).unwrap();

        let ok = ChoiceDataset::from_records(&u, [(m, u.alt("2"))]).unwrap();
        assert!(check_choice_membership(&ok, &f).unwrap().is_empty());

        let bad = ChoiceDataset::from_records(&u, [(m, u.alt("1"))]).unwrap();
        assert_eq!(check_choice_membership(&bad, &f).unwrap(), vec![m]);

        let empty = ChoiceDataset::new(&u);
        assert!(check_choice_membership(&empty, &f).unwrap().is_empty());

        let none = ChoiceDataset::from_records(&u, [(m, None)]).unwrap();
        assert!(check_choice_membership(&none, &f).unwrap().is_empty());
    }

    #[test]
    fn invalid_records_rejected() {
        let u = Universe::numbered(3).unwrap();
        let m = u.menu(&["1", "2"]).unwrap();
        assert!(ChoiceDataset::from_records(&u, [(m, u.alt("3"))]).is_err());
        assert!(ChoiceDataset::from_records(&u, [(m, None), (m, u.alt("1"))]).is_err());
        assert!(ChoiceDataset::from_records(&u, [(Menu::from_bits(0b1000), None)]).is_err());
    }

    #[test]
    fn universes_must_match() {
        let u = Universe::numbered(3).unwrap();
        let v = Universe::numbered(4).unwrap();
        assert!(check_choice_membership(&ChoiceDataset::new(&u), &Filter::identity(&v)).is_err());
    }
}
