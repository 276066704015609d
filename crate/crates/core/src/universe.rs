//! Alternatives, the ground set, and menus over it.
//!
//! A [`Menu`] is a bitmask over the canonical alternative indices of a
//! [`Universe`]. Every enumeration in the crate walks menus in ascending
//! order of that encoding, so witnesses and reports are reproducible.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default maximum number of alternatives; 2^16 menus per filter table.
pub const DEFAULT_UNIVERSE_CAP: usize = 16;

/// Largest cap a caller may configure. Menus are `u32` masks.
pub const MAX_UNIVERSE_CAP: usize = 20;

/// Canonical index of an alternative inside its universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alt(pub u8);

impl Alt {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A subset of a universe, encoded as a bitmask over canonical indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Menu(u32);

impl Menu {
    pub const EMPTY: Menu = Menu(0);

    pub fn from_bits(bits: u32) -> Self {
        Menu(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Canonical encoding as a table index.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn singleton(alt: Alt) -> Self {
        Menu(1 << alt.0)
    }

    pub fn from_alts<I: IntoIterator<Item = Alt>>(alts: I) -> Self {
        alts.into_iter().fold(Menu::EMPTY, |m, a| m.with(a))
    }

    pub fn with(self, alt: Alt) -> Self {
        Menu(self.0 | (1 << alt.0))
    }

    pub fn without(self, alt: Alt) -> Self {
        Menu(self.0 & !(1 << alt.0))
    }

    pub fn contains(self, alt: Alt) -> bool {
        self.0 >> alt.0 & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Menu) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset_of(self, other: Menu) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn intersection(self, other: Menu) -> Menu {
        Menu(self.0 & other.0)
    }

    pub fn union(self, other: Menu) -> Menu {
        Menu(self.0 | other.0)
    }

    pub fn difference(self, other: Menu) -> Menu {
        Menu(self.0 & !other.0)
    }

    /// Lowest-index member, if any.
    pub fn first(self) -> Option<Alt> {
        (self.0 != 0).then(|| Alt(self.0.trailing_zeros() as u8))
    }

    /// Members in ascending index order.
    pub fn iter(self) -> MenuIter {
        MenuIter(self.0)
    }

    /// All subsets of this menu in ascending encoding order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            of: self.0,
            next: Some(0),
        }
    }

    /// All supersets of this menu inside `within`, ascending.
    pub fn supersets_within(self, within: Menu) -> impl Iterator<Item = Menu> {
        let base = self.0;
        within.difference(self).subsets().map(move |extra| Menu(base | extra.0))
    }
}

impl fmt::Debug for Menu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

impl FromIterator<Alt> for Menu {
    fn from_iter<I: IntoIterator<Item = Alt>>(iter: I) -> Self {
        Menu::from_alts(iter)
    }
}

pub struct MenuIter(u32);

impl Iterator for MenuIter {
    type Item = Alt;

    fn next(&mut self) -> Option<Alt> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(Alt(i as u8))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for MenuIter {}

/// Submask enumeration in increasing order: `next = (cur - of) & of`.
pub struct Subsets {
    of: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Menu;

    fn next(&mut self) -> Option<Menu> {
        let cur = self.next?;
        self.next = if cur == self.of {
            None
        } else {
            Some(cur.wrapping_sub(self.of) & self.of)
        };
        Some(Menu(cur))
    }
}

/// The finite ground set of alternatives. Cheap to clone.
#[derive(Clone)]
pub struct Universe {
    names: Arc<[String]>,
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_cap(names, DEFAULT_UNIVERSE_CAP)
    }

    pub fn with_cap<I, S>(names: I, cap: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if cap > MAX_UNIVERSE_CAP {
            return Err(Error::capacity("universe cap", cap, MAX_UNIVERSE_CAP));
        }
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > cap {
            return Err(Error::capacity("universe", names.len(), cap));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::validation(format!("duplicate alternative `{n}`")));
            }
        }
        Ok(Universe { names: names.into() })
    }

    /// Universe `{1, 2, ..., n}` with alternatives named by their ordinal.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, alt: Alt) -> &str {
        &self.names[alt.index()]
    }

    pub fn alt(&self, name: &str) -> Option<Alt> {
        self.names.iter().position(|n| n == name).map(|i| Alt(i as u8))
    }

    pub fn alts(&self) -> impl DoubleEndedIterator<Item = Alt> + ExactSizeIterator + '_ {
        (0..self.len()).map(|i| Alt(i as u8))
    }

    /// The menu containing every alternative.
    pub fn full(&self) -> Menu {
        Menu(((1u64 << self.len()) - 1) as u32)
    }

    pub fn menu_count(&self) -> usize {
        1 << self.len()
    }

    /// All `2^|X|` menus in ascending encoding order, `∅` first and `X` last.
    pub fn menus(&self) -> impl Iterator<Item = Menu> {
        (0..self.menu_count() as u32).map(Menu)
    }

    pub fn contains_menu(&self, menu: Menu) -> bool {
        menu.is_subset_of(self.full())
    }

    pub fn check_menu(&self, menu: Menu) -> Result<()> {
        if self.contains_menu(menu) {
            Ok(())
        } else {
            Err(Error::mismatch(format!(
                "menu {:#x} is not a subset of a universe of {} alternatives",
                menu.bits(),
                self.len()
            )))
        }
    }

    pub fn check_alt(&self, alt: Alt) -> Result<()> {
        if alt.index() < self.len() {
            Ok(())
        } else {
            Err(Error::mismatch(format!(
                "alternative index {} outside a universe of {}",
                alt.0,
                self.len()
            )))
        }
    }

    pub fn menu<S: AsRef<str>>(&self, names: &[S]) -> Result<Menu> {
        names.iter().try_fold(Menu::EMPTY, |m, n| {
            let n = n.as_ref();
            self.alt(n)
                .map(|a| m.with(a))
                .ok_or_else(|| Error::validation(format!("unknown alternative `{n}`")))
        })
    }

    /// Resolves a list of names to alternatives, preserving order.
    pub fn sequence<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Alt>> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.alt(n)
                    .ok_or_else(|| Error::validation(format!("unknown alternative `{n}`")))
            })
            .collect()
    }

    pub fn menu_names(&self, menu: Menu) -> Vec<String> {
        menu.iter().map(|a| self.name(a).to_owned()).collect()
    }

    /// Renders a menu as `{a,b}`.
    pub fn show(&self, menu: Menu) -> String {
        format!("{{{}}}", self.menu_names(menu).join(","))
    }

    pub fn ensure_same(&self, other: &Universe) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::mismatch(format!(
                "universes differ: [{}] vs [{}]",
                self.names.join(","),
                other.names.join(",")
            )))
        }
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Universe").field(&self.names).finish()
    }
}

/// Every menu of the universe exactly once, in canonical order.
pub fn enumerate_menus(universe: &Universe) -> Vec<Menu> {
    universe.menus().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_all_menus() {
        let nine = Universe::numbered(9).unwrap();
        assert_eq!(enumerate_menus(&nine).len(), 512);

        let empty = Universe::new(Vec::<String>::new()).unwrap();
        assert_eq!(enumerate_menus(&empty), vec![Menu::EMPTY]);

        let ab = Universe::new(["a", "b"]).unwrap();
        let menus: Vec<_> = enumerate_menus(&ab).iter().map(|m| ab.show(*m)).collect();
        assert_eq!(menus, ["{}", "{a}", "{b}", "{a,b}"]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            Universe::numbered(17),
            Err(Error::Capacity { size: 17, cap: 16, .. })
        ));
        assert!(Universe::with_cap((0..18).map(|i| i.to_string()), 18).is_ok());
        assert!(Universe::with_cap(["a"], 21).is_err());
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(Universe::new(["a", "b", "a"]), Err(Error::Validation(_))));
    }

    #[test]
    fn subsets_ascend() {
        let m = Menu::from_bits(0b1011);
        let subs: Vec<u32> = m.subsets().map(Menu::bits).collect();
        assert_eq!(subs, [0, 1, 2, 3, 8, 9, 10, 11]);
        let sups: Vec<u32> = Menu::from_bits(0b0010)
            .supersets_within(Menu::from_bits(0b0111))
            .map(Menu::bits)
            .collect();
        assert_eq!(sups, [2, 3, 6, 7]);
        assert_eq!(Menu::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn foreign_menu_is_a_mismatch() {
        let u = Universe::numbered(3).unwrap();
        assert!(u.check_menu(Menu::from_bits(0b111)).is_ok());
        assert!(matches!(
            u.check_menu(Menu::from_bits(0b1000)),
            Err(Error::DomainMismatch(_))
        ));
    }
}
