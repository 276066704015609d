//! Choosing a filter by weighing the benefit of a larger consideration set
//! against the cost of examining it.
//!
//! A filter's utility on a menu is `benefit(c(Γ(A))) - cost(|Γ(A)|)`, where
//! `c` picks the preference-best considered alternative.

use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::preference::Preference;
use crate::report::{Finding, Mode, TheoremReport};
use crate::universe::{Menu, Universe};

#[derive(Clone, Debug, PartialEq)]
pub struct FilterUtilityModel {
    preference: Preference,
    benefit: Vec<f64>,
    benefit_none: f64,
    cost: Vec<f64>,
}

impl FilterUtilityModel {
    /// `benefit` is indexed by alternative, `cost` by cardinality `0..=|X|`.
    /// The value of choosing nothing is 0.
    pub fn new(preference: Preference, benefit: Vec<f64>, cost: Vec<f64>) -> Result<Self> {
        Self::with_benefit_none(preference, benefit, cost, 0.0)
    }

    pub fn with_benefit_none(
        preference: Preference,
        benefit: Vec<f64>,
        cost: Vec<f64>,
        benefit_none: f64,
    ) -> Result<Self> {
        let n = preference.universe().len();
        if benefit.len() != n {
            return Err(Error::validation(format!(
                "benefit has {} entries for {n} alternatives",
                benefit.len()
            )));
        }
        if cost.len() != n + 1 {
            return Err(Error::validation(format!(
                "cost must cover cardinalities 0..={n}, got {} entries",
                cost.len()
            )));
        }
        if benefit
            .iter()
            .chain(&cost)
            .chain([&benefit_none])
            .any(|v| !v.is_finite())
        {
            return Err(Error::validation("benefits and costs must be finite"));
        }
        if benefit.iter().any(|&b| b < benefit_none) {
            return Err(Error::validation(
                "the value of choosing nothing exceeds some alternative's benefit",
            ));
        }
        Ok(FilterUtilityModel {
            preference,
            benefit,
            benefit_none,
            cost,
        })
    }

    pub fn universe(&self) -> &Universe {
        self.preference.universe()
    }

    pub fn preference(&self) -> &Preference {
        &self.preference
    }

    pub fn benefit(&self) -> &[f64] {
        &self.benefit
    }

    pub fn benefit_none(&self) -> f64 {
        self.benefit_none
    }

    pub fn cost(&self) -> &[f64] {
        &self.cost
    }

    /// Benefit of the choice made from a consideration set.
    pub fn benefit_of(&self, considered: Menu) -> f64 {
        self.preference
            .choose(considered)
            .map_or(self.benefit_none, |x| self.benefit[x.index()])
    }

    fn utility(&self, considered: Menu) -> f64 {
        self.benefit_of(considered) - self.cost[considered.len()]
    }
}

/// The filters a decision maker may pick from.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterSpace {
    filters: Vec<Filter>,
    labels: Vec<String>,
}

impl FilterSpace {
    pub fn new(filters: Vec<Filter>, labels: Vec<String>) -> Result<Self> {
        let first = filters
            .first()
            .ok_or_else(|| Error::validation("a filter space needs at least one filter"))?;
        if labels.len() != filters.len() {
            return Err(Error::validation(format!(
                "{} labels for {} filters",
                labels.len(),
                filters.len()
            )));
        }
        for f in &filters[1..] {
            first.universe().ensure_same(f.universe())?;
        }
        Ok(FilterSpace { filters, labels })
    }

    /// Labels each filter by its provenance kind and position.
    pub fn unlabeled(filters: Vec<Filter>) -> Result<Self> {
        let labels = filters
            .iter()
            .enumerate()
            .map(|(i, f)| format!("{}#{i}", f.provenance().kind()))
            .collect();
        Self::new(filters, labels)
    }

    pub fn filters(&self) -> &[Filter] {
        &self.filters
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn universe(&self) -> &Universe {
        self.filters[0].universe()
    }
}

pub fn evaluate_filter_utility(model: &FilterUtilityModel, filter: &Filter, menu: Menu) -> Result<f64> {
    model.universe().ensure_same(filter.universe())?;
    filter.universe().check_menu(menu)?;
    Ok(model.utility(filter.apply(menu)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvexityFailure {
    /// `cost(k+1) - cost(k) <= 0`.
    NotIncreasing,
    /// `cost(k+2) - cost(k+1) <= cost(k+1) - cost(k)`.
    DifferencesNotIncreasing,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvexityReport {
    pub convex: bool,
    /// Smallest failing `k` and what failed there.
    pub witness: Option<(usize, ConvexityFailure)>,
}

/// Strict discrete convexity: positive and strictly increasing first
/// differences of the cost over `0..=|X|`.
pub fn check_convex_cost(model: &FilterUtilityModel) -> ConvexityReport {
    let diffs: Vec<f64> = model.cost.windows(2).map(|w| w[1] - w[0]).collect();
    let mut witness = None;
    for k in 0..diffs.len() {
        if diffs[k] <= 0.0 {
            witness = Some((k, ConvexityFailure::NotIncreasing));
            break;
        }
        if k + 1 < diffs.len() && diffs[k + 1] <= diffs[k] {
            witness = Some((k, ConvexityFailure::DifferencesNotIncreasing));
            break;
        }
    }
    ConvexityReport {
        convex: witness.is_none(),
        witness,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FilterChoice {
    /// Index of the chosen filter in the space.
    pub index: usize,
    pub utilities: Vec<f64>,
    /// Filters the choice mandate allows on this menu.
    pub eligible: Vec<bool>,
    /// Every filter yields the empty set, so all are eligible.
    pub mandate_vacuous: bool,
}

/// Picks a utility-maximizing filter for `menu`.
///
/// Filters that consider nothing are ineligible whenever some filter
/// considers at least one alternative. Ties go to the lowest index.
pub fn choose_filter(model: &FilterUtilityModel, space: &FilterSpace, menu: Menu) -> Result<FilterChoice> {
    model.universe().ensure_same(space.universe())?;
    space.universe().check_menu(menu)?;
    let images: Vec<Menu> = space.filters.iter().map(|f| f.apply(menu)).collect();
    let utilities: Vec<f64> = images.iter().map(|&g| model.utility(g)).collect();
    let mandate_vacuous = images.iter().all(|g| g.is_empty());
    let eligible: Vec<bool> = images.iter().map(|g| mandate_vacuous || !g.is_empty()).collect();
    let mut index = None;
    for (i, &u) in utilities.iter().enumerate() {
        if eligible[i] && index.is_none_or(|j: usize| u > utilities[j]) {
            index = Some(i);
        }
    }
    Ok(FilterChoice {
        index: index.expect("a nonempty space has an eligible filter"),
        utilities,
        eligible,
        mandate_vacuous,
    })
}

fn maximizers(choice: &FilterChoice) -> impl Iterator<Item = usize> + '_ {
    let best = choice.utilities[choice.index];
    (0..choice.utilities.len()).filter(move |&i| choice.eligible[i] && choice.utilities[i] == best)
}

/// With zero cost and benefit that never decreases with preference, checks
/// on each menu that some maximizing filter considers the whole menu and that
/// the chosen filter's choice is worth as much as the menu's best alternative.
pub fn verify_costless_full_consideration(
    space: &FilterSpace,
    model: &FilterUtilityModel,
    menus: &[Menu],
) -> Result<TheoremReport> {
    model.universe().ensure_same(space.universe())?;
    let universe = space.universe();
    let mut report = TheoremReport::new(
        "costless consideration makes full consideration optimal",
        Mode::Exhaustive,
        universe.len(),
    );
    if let Some(k) = model.cost.iter().position(|&c| c != 0.0) {
        report
            .preconditions_failed
            .push(format!("cost({k}) = {} is not zero", model.cost[k]));
    }
    let order = model.preference.order();
    if let Some(w) = order
        .windows(2)
        .find(|w| model.benefit[w[0].index()] < model.benefit[w[1].index()])
    {
        report.preconditions_failed.push(format!(
            "benefit decreases with preference: {} is preferred to {} but worth less",
            universe.name(w[0]),
            universe.name(w[1])
        ));
    }
    let identity = Filter::identity(universe);
    if !space.filters.iter().any(|f| f.same_table(&identity)) {
        report
            .preconditions_failed
            .push("the space has no full-consideration (identity) filter".into());
    }
    if !report.preconditions_failed.is_empty() {
        return Ok(report);
    }

    for &menu in menus {
        let choice = choose_filter(model, space, menu)?;
        if menu.is_empty() {
            report.tally(true);
            report
                .notes
                .push("empty menu: every filter ties at the value of choosing nothing".into());
            continue;
        }
        let full_among_best = maximizers(&choice).any(|i| space.filters[i].apply(menu) == menu);
        let chosen = space.filters[choice.index].apply(menu);
        let attains = model.benefit_of(chosen) == model.benefit_of(menu);
        report.tally(full_among_best && attains);
        if !(full_among_best && attains) {
            report.counterexamples.push(Finding {
                label: "full consideration not optimal".into(),
                detail: format!(
                    "chose {} considering {}; full consideration among maximizers: {full_among_best}",
                    space.labels[choice.index],
                    universe.show(chosen)
                ),
                filters: vec![space.filters[choice.index].clone()],
                menu: Some(menu),
            });
        }
    }
    Ok(report)
}

/// With benefit independent of the choice and strictly increasing cost,
/// checks that the chosen filter considers as few alternatives as any
/// eligible filter does.
pub fn verify_worthless_consideration(
    space: &FilterSpace,
    model: &FilterUtilityModel,
    menus: &[Menu],
) -> Result<TheoremReport> {
    model.universe().ensure_same(space.universe())?;
    let universe = space.universe();
    let mut report = TheoremReport::new(
        "worthless consideration makes minimal consideration optimal",
        Mode::Exhaustive,
        universe.len(),
    );
    if model.benefit.iter().any(|&b| b != model.benefit_none) {
        report
            .preconditions_failed
            .push("benefit is not the same constant for every alternative and for no choice".into());
    }
    if let Some(k) = model.cost.windows(2).position(|w| w[1] <= w[0]) {
        report
            .preconditions_failed
            .push(format!("cost is not strictly increasing at cardinality {k}"));
    }
    if !report.preconditions_failed.is_empty() {
        return Ok(report);
    }

    for &menu in menus {
        let choice = choose_filter(model, space, menu)?;
        let sizes: Vec<usize> = space.filters.iter().map(|f| f.apply(menu).len()).collect();
        let minimum = (0..sizes.len())
            .filter(|&i| choice.eligible[i])
            .map(|i| sizes[i])
            .min()
            .expect("some filter is eligible");
        let agreed = sizes[choice.index] == minimum;
        report.tally(agreed);
        if choice.mandate_vacuous && !menu.is_empty() {
            report.notes.push(format!(
                "{}: no filter considers anything, minimum cardinality 0",
                universe.show(menu)
            ));
        } else if minimum > 1 {
            report.notes.push(format!(
                "{}: a single considered alternative is unattainable, minimum {minimum}",
                universe.show(menu)
            ));
        }
        if !agreed {
            report.counterexamples.push(Finding {
                label: "chosen filter not minimal".into(),
                detail: format!(
                    "chose {} considering {} alternatives, minimum eligible {minimum}",
                    space.labels[choice.index], sizes[choice.index]
                ),
                filters: vec![space.filters[choice.index].clone()],
                menu: Some(menu),
            });
        }
    }
    Ok(report)
}

/// A larger consideration set that is strictly worse than a smaller one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlexibilityReversal {
    pub larger: usize,
    pub smaller: usize,
    pub larger_utility: f64,
    pub smaller_utility: f64,
}

impl FlexibilityReversal {
    pub fn replay(&self, model: &FilterUtilityModel, space: &FilterSpace, menu: Menu) -> bool {
        let big = space.filters[self.larger].apply(menu);
        let small = space.filters[self.smaller].apply(menu);
        small.is_subset_of(big) && model.utility(big) < model.utility(small)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlexibilityReport {
    pub holds: bool,
    /// Ordered pairs whose images are nested.
    pub comparable_pairs: usize,
    pub reversals: Vec<FlexibilityReversal>,
}

/// Checks whether a filter considering a superset of another's consideration
/// set is always weakly preferred on `menu`.
pub fn check_preference_for_flexibility(
    space: &FilterSpace,
    model: &FilterUtilityModel,
    menu: Menu,
) -> Result<FlexibilityReport> {
    model.universe().ensure_same(space.universe())?;
    space.universe().check_menu(menu)?;
    let images: Vec<Menu> = space.filters.iter().map(|f| f.apply(menu)).collect();
    let utilities: Vec<f64> = images.iter().map(|&g| model.utility(g)).collect();
    let mut comparable_pairs = 0;
    let mut reversals = Vec::new();
    for i in 0..images.len() {
        for j in 0..images.len() {
            if i == j || !images[j].is_subset_of(images[i]) {
                continue;
            }
            comparable_pairs += 1;
            if utilities[i] < utilities[j] {
                reversals.push(FlexibilityReversal {
                    larger: i,
                    smaller: j,
                    larger_utility: utilities[i],
                    smaller_utility: utilities[j],
                });
            }
        }
    }
    Ok(FlexibilityReport {
        holds: reversals.is_empty(),
        comparable_pairs,
        reversals,
    })
}

/// Looks for menus on which a filter considering more is strictly worse than
/// one considering less. Under a convex cost at least one such reversal is
/// expected; the report fails only when none is found.
pub fn verify_remark1(space: &FilterSpace, model: &FilterUtilityModel, menus: &[Menu]) -> Result<TheoremReport> {
    model.universe().ensure_same(space.universe())?;
    let universe = space.universe();
    let mut report = TheoremReport::new(
        "a convex cost can make a larger consideration set worse",
        Mode::Exhaustive,
        universe.len(),
    );
    if let Some((k, failure)) = check_convex_cost(model).witness {
        report
            .preconditions_failed
            .push(format!("cost is not strictly convex at cardinality {k} ({failure:?})"));
        return Ok(report);
    }
    let mut total = 0;
    for &menu in menus {
        let r = check_preference_for_flexibility(space, model, menu)?;
        report.tally(!r.holds);
        if let Some(first) = r.reversals.first() {
            if total == 0 {
                report.notes.push(format!(
                    "on {}: {} considering {} has utility {} below {} considering {} with {}",
                    universe.show(menu),
                    space.labels[first.larger],
                    universe.show(space.filters[first.larger].apply(menu)),
                    first.larger_utility,
                    space.labels[first.smaller],
                    universe.show(space.filters[first.smaller].apply(menu)),
                    first.smaller_utility
                ));
            }
            total += r.reversals.len();
        }
    }
    report
        .notes
        .push(format!("{total} reversal(s) across {} menu(s)", report.agreements));
    if total == 0 {
        report.counterexamples.push(Finding {
            label: "no reversal".into(),
            detail: "every larger consideration set was weakly preferred".into(),
            filters: Vec::new(),
            menu: None,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares(n: usize) -> Vec<f64> {
        (0..=n).map(|k| (k * k) as f64).collect()
    }

    fn fixed_set_space(u: &Universe, with_identity: bool) -> FilterSpace {
        let mut filters: Vec<Filter> = Vec::new();
        if with_identity {
            filters.push(Filter::identity(u));
        }
        filters.extend(u.menus().map(|y| Filter::fixed_set(u, y)));
        FilterSpace::unlabeled(filters).unwrap()
    }

    #[test]
    fn utility_arithmetic() {
        let u = Universe::numbered(3).unwrap();
        let p = Preference::from_names(&u, &["2", "3", "1"]).unwrap();
        let m = FilterUtilityModel::new(p.clone(), vec![1.0, 10.0, 8.0], squares(3)).unwrap();
        let f = Filter::fixed_set(&u, u.menu(&["2", "3"]).unwrap());
        assert_eq!(evaluate_filter_utility(&m, &f, u.full()).unwrap(), 6.0);
        assert_eq!(evaluate_filter_utility(&m, &f, u.menu(&["1"]).unwrap()).unwrap(), 0.0);

        let free = FilterUtilityModel::new(p, vec![1.0, 10.0, 8.0], vec![0.0; 4]).unwrap();
        assert_eq!(evaluate_filter_utility(&free, &f, u.full()).unwrap(), 10.0);
    }

    #[test]
    fn model_validation() {
        let u = Universe::numbered(2).unwrap();
        let p = Preference::canonical(&u);
        assert!(FilterUtilityModel::new(p.clone(), vec![1.0], vec![0.0; 3]).is_err());
        assert!(FilterUtilityModel::new(p.clone(), vec![1.0, 1.0], vec![0.0; 2]).is_err());
        assert!(FilterUtilityModel::new(p.clone(), vec![-1.0, 1.0], vec![0.0; 3]).is_err());
        assert!(FilterUtilityModel::with_benefit_none(p, vec![-1.0, 1.0], vec![0.0; 3], -2.0).is_ok());
    }

    #[test]
    fn convexity() {
        let u = Universe::numbered(3).unwrap();
        let p = Preference::canonical(&u);
        let model = |cost| FilterUtilityModel::new(p.clone(), vec![1.0; 3], cost).unwrap();
        assert!(check_convex_cost(&model(squares(3))).convex);
        assert_eq!(
            check_convex_cost(&model(vec![0.0; 4])).witness,
            Some((0, ConvexityFailure::NotIncreasing))
        );
        assert_eq!(
            check_convex_cost(&model(vec![0.0, 1.0, 2.0, 3.0])).witness,
            Some((0, ConvexityFailure::DifferencesNotIncreasing))
        );
    }

    #[test]
    fn narrow_filter_wins_under_convex_cost() {
        let u = Universe::numbered(3).unwrap();
        let p = Preference::from_names(&u, &["2", "1", "3"]).unwrap();
        let model = FilterUtilityModel::new(p, vec![8.0, 10.0, 1.0], squares(3)).unwrap();
        let space = FilterSpace::unlabeled(vec![
            Filter::identity(&u),
            Filter::fixed_set(&u, u.menu(&["2"]).unwrap()),
        ])
        .unwrap();
        let c = choose_filter(&model, &space, u.full()).unwrap();
        assert_eq!(c.utilities, vec![1.0, 9.0]);
        assert_eq!(c.index, 1);
    }

    #[test]
    fn ties_and_mandate() {
        let u = Universe::numbered(2).unwrap();
        let p = Preference::canonical(&u);
        let model = FilterUtilityModel::new(p, vec![3.0, 3.0], vec![0.0, 1.0, 2.0]).unwrap();
        let a = Filter::fixed_set(&u, u.menu(&["1"]).unwrap());
        let b = Filter::fixed_set(&u, u.menu(&["2"]).unwrap());
        let space = FilterSpace::unlabeled(vec![Filter::empty(&u), a, b]).unwrap();
        let c = choose_filter(&model, &space, u.full()).unwrap();
        assert_eq!(c.index, 1);
        assert!(!c.eligible[0]);
        let c = choose_filter(&model, &space, u.menu(&["2"]).unwrap()).unwrap();
        assert_eq!(c.index, 2);
        let c = choose_filter(&model, &space, Menu::EMPTY).unwrap();
        assert!(c.mandate_vacuous);
        assert_eq!(c.index, 0);
        assert!(FilterSpace::unlabeled(vec![]).is_err());
    }

    #[test]
    fn costless_consideration() {
        let u = Universe::numbered(3).unwrap();
        let p = Preference::from_names(&u, &["3", "1", "2"]).unwrap();
        let model = FilterUtilityModel::new(p.clone(), vec![2.0, 1.0, 3.0], vec![0.0; 4]).unwrap();
        let space = fixed_set_space(&u, true);
        let menus: Vec<Menu> = u.menus().collect();
        let r = verify_costless_full_consideration(&space, &model, &menus).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.checked, 8);
        assert_eq!(r.notes.len(), 1);

        let flat = FilterUtilityModel::new(p.clone(), vec![1.0; 3], vec![0.0; 4]).unwrap();
        assert!(verify_costless_full_consideration(&space, &flat, &menus)
            .unwrap()
            .holds());

        let costly = FilterUtilityModel::new(p, vec![2.0, 1.0, 3.0], squares(3)).unwrap();
        let r = verify_costless_full_consideration(&space, &costly, &menus).unwrap();
        assert_eq!(r.checked, 0);
        assert!(!r.preconditions_failed.is_empty());
    }

    #[test]
    fn worthless_consideration() {
        let u = Universe::numbered(3).unwrap();
        let p = Preference::canonical(&u);
        let model = FilterUtilityModel::with_benefit_none(p, vec![5.0; 3], squares(3), 5.0).unwrap();
        let menus: Vec<Menu> = u.menus().collect();
        let space = fixed_set_space(&u, false);
        let r = verify_worthless_consideration(&space, &model, &menus).unwrap();
        assert!(r.holds(), "{r:?}");
        let c = choose_filter(&model, &space, u.full()).unwrap();
        assert_eq!(space.filters()[c.index].apply(u.full()).len(), 1);

        let only_identity = FilterSpace::unlabeled(vec![Filter::identity(&u)]).unwrap();
        let r = verify_worthless_consideration(&only_identity, &model, &menus).unwrap();
        assert!(r.holds());
        assert!(r.notes.iter().any(|n| n.contains("unattainable")));

        let y = FilterSpace::unlabeled(vec![Filter::fixed_set(&u, u.menu(&["3"]).unwrap())]).unwrap();
        let disjoint = u.menu(&["1", "2"]).unwrap();
        let r = verify_worthless_consideration(&y, &model, &[disjoint]).unwrap();
        assert!(r.holds());
        assert!(r.notes[0].contains("minimum cardinality 0"));
    }

    #[test]
    fn flexibility() {
        let u = Universe::numbered(3).unwrap();
        let p = Preference::canonical(&u);
        let single = Filter::fixed_set(&u, u.menu(&["1"]).unwrap());
        let space = FilterSpace::unlabeled(vec![Filter::identity(&u), single]).unwrap();

        let free = FilterUtilityModel::new(p.clone(), vec![3.0, 2.0, 1.0], vec![0.0; 4]).unwrap();
        assert!(check_preference_for_flexibility(&space, &free, u.full()).unwrap().holds);

        let convex = FilterUtilityModel::new(p, vec![5.0; 3], squares(3)).unwrap();
        let r = check_preference_for_flexibility(&space, &convex, u.full()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.comparable_pairs, 1);
        assert_eq!(r.reversals[0].larger, 0);
        assert_eq!(r.reversals[0].larger_utility, -4.0);
        assert!(r.reversals[0].replay(&convex, &space, u.full()));

        let lone = FilterSpace::unlabeled(vec![Filter::identity(&u)]).unwrap();
        let r = check_preference_for_flexibility(&lone, &convex, u.full()).unwrap();
        assert!(r.holds && r.comparable_pairs == 0);
    }
}
