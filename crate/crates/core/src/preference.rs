use crate::error::{Error, Result};
use crate::universe::{Alt, Menu, Universe};

/// Strict total order over a universe; earlier in `order` is better.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preference {
    universe: Universe,
    order: Vec<Alt>,
    rank: Vec<usize>,
}

impl Preference {
    pub fn new(universe: &Universe, order: Vec<Alt>) -> Result<Self> {
        let n = universe.len();
        if order.len() != n {
            return Err(Error::validation(format!(
                "preference lists {} alternatives, universe has {n}",
                order.len()
            )));
        }
        let mut rank = vec![usize::MAX; n];
        for (pos, &a) in order.iter().enumerate() {
            universe.check_alt(a)?;
            if rank[a.index()] != usize::MAX {
                return Err(Error::validation(format!("preference repeats `{}`", universe.name(a))));
            }
            rank[a.index()] = pos;
        }
        Ok(Preference {
            universe: universe.clone(),
            order,
            rank,
        })
    }

    pub fn from_names<S: AsRef<str>>(universe: &Universe, names: &[S]) -> Result<Self> {
        let order = names
            .iter()
            .map(|n| {
                universe
                    .alt(n.as_ref())
                    .ok_or_else(|| Error::validation(format!("unknown alternative `{}`", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, order)
    }

    /// Canonical order: index 0 best.
    pub fn canonical(universe: &Universe) -> Self {
        Self::new(universe, universe.alts().collect()).expect("identity permutation")
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn order(&self) -> &[Alt] {
        &self.order
    }

    /// Position in the order, 0 = most preferred.
    pub fn rank(&self, alt: Alt) -> usize {
        self.rank[alt.index()]
    }

    pub fn prefers(&self, a: Alt, b: Alt) -> bool {
        self.rank(a) < self.rank(b)
    }

    /// The most preferred member of `menu`, or `None` for the empty menu.
    pub fn choose(&self, menu: Menu) -> Option<Alt> {
        menu.iter().min_by_key(|&a| self.rank(a))
    }

    pub fn names(&self) -> Vec<String> {
        self.order.iter().map(|&a| self.universe.name(a).to_owned()).collect()
    }
}

/// Checked form of [`Preference::choose`] for menus of unknown provenance.
pub fn choose(preference: &Preference, menu: Menu) -> Result<Option<Alt>> {
    preference.universe.check_menu(menu)?;
    Ok(preference.choose(menu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u3() -> Universe {
        Universe::numbered(3).unwrap()
    }

    #[test]
    fn picks_first_present_in_order() {
        let u = u3();
        let p = Preference::from_names(&u, &["2", "3", "1"]).unwrap();
        let m = u.menu(&["1", "2", "3"]).unwrap();
        assert_eq!(p.choose(m), u.alt("2"));
        assert_eq!(p.choose(u.menu(&["1", "3"]).unwrap()), u.alt("3"));
        assert_eq!(p.choose(Menu::EMPTY), None);
        assert_eq!(p.choose(u.menu(&["1"]).unwrap()), u.alt("1"));
    }

    #[test]
    fn rejects_non_permutations() {
        let u = u3();
        assert!(Preference::from_names(&u, &["1", "2"]).is_err());
        assert!(Preference::from_names(&u, &["1", "1", "2"]).is_err());
        assert!(Preference::new(&u, vec![Alt(0), Alt(1), Alt(7)]).is_err());
    }

    #[test]
    fn checked_choose_rejects_foreign_menu() {
        let u = u3();
        let p = Preference::canonical(&u);
        assert!(choose(&p, Menu::from_bits(0b1000)).is_err());
    }
}
