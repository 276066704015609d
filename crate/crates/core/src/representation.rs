//! Threshold representations of IO filters, threshold choice, and audits of
//! observed choice data against WARP and its consideration-aware variants.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::axioms::{check_condition_tau, check_io, check_sens_alpha, DEFAULT_FACTORIAL_CAP};
use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::filter::{build_filter, Filter, Rule};
use crate::preference::Preference;
use crate::report::{Finding, Mode, TheoremReport};
use crate::sampling;
use crate::universe::{Alt, Menu, Universe};

/// A score per alternative and a cutoff: `Γ(A) = {x ∈ A : score(x) ≥ cutoff}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdRepresentation {
    pub scores: Vec<f64>,
    pub cutoff: f64,
}

impl ThresholdRepresentation {
    pub fn new(universe: &Universe, scores: Vec<f64>, cutoff: f64) -> Result<Self> {
        let rep = ThresholdRepresentation { scores, cutoff };
        rep.rule().validate(universe)?;
        Ok(rep)
    }

    pub fn passes(&self, alt: Alt) -> bool {
        self.scores[alt.index()] >= self.cutoff
    }

    fn rule(&self) -> Rule {
        Rule::Threshold {
            scores: self.scores.clone(),
            cutoff: self.cutoff,
        }
    }
}

/// Indicator scores of the alternatives the filter ever considers, with
/// cutoff 1. Fails with the IO witness when the filter is not IO.
pub fn construct_threshold_representation(filter: &Filter) -> Result<ThresholdRepresentation> {
    let io = check_io(filter);
    if !io.holds {
        return Err(Error::RepresentationImpossible(Box::new(io)));
    }
    let y = filter.ever_considered();
    Ok(ThresholdRepresentation {
        scores: filter
            .universe()
            .alts()
            .map(|x| if y.contains(x) { 1.0 } else { 0.0 })
            .collect(),
        cutoff: 1.0,
    })
}

pub fn induced_filter(rep: &ThresholdRepresentation, universe: &Universe) -> Result<Filter> {
    build_filter(universe, rep.rule())
}

/// Largest universe for the exhaustive roundtrip, which rebuilds `2^|X|`
/// filters of `2^|X|` menus each.
pub const EXHAUSTIVE_ROUNDTRIP_CAP: usize = 12;

/// Exhaustive mode rebuilds every IO filter from its constructed
/// representation. Sampled mode draws random representations and checks
/// that each induced filter is IO, satisfies Sen's α and Condition τ.
pub fn verify_theorem6(universe: &Universe, mode: Mode) -> Result<TheoremReport> {
    match mode {
        Mode::Exhaustive => {
            if universe.len() > EXHAUSTIVE_ROUNDTRIP_CAP {
                return Err(Error::capacity(
                    "exhaustive IO roundtrip (alternatives)",
                    universe.len(),
                    EXHAUSTIVE_ROUNDTRIP_CAP,
                ));
            }
            let mut report = TheoremReport::new(
                "every IO filter is regenerated by its threshold representation",
                mode,
                universe.len(),
            );
            for f in sampling::all_io_filters(universe) {
                let rebuilt = induced_filter(&construct_threshold_representation(&f)?, universe)?;
                let diff = f.first_difference(&rebuilt);
                report.tally(diff.is_none());
                if let Some(menu) = diff {
                    report.counterexamples.push(Finding {
                        label: "roundtrip differs".into(),
                        detail: format!("tables differ at {}", universe.show(menu)),
                        filters: vec![f, rebuilt],
                        menu: Some(menu),
                    });
                }
            }
            Ok(report)
        }
        Mode::Sampled { count, seed } => {
            let mut report = TheoremReport::new(
                "every threshold representation induces an IO filter",
                mode,
                universe.len(),
            );
            let mut rng = sampling::rng(seed);
            for _ in 0..count {
                let rule = sampling::random_threshold_rule(universe, &mut rng);
                let f = build_filter(universe, rule)?;
                let checks = [check_io(&f), check_sens_alpha(&f), check_condition_tau(&f)];
                let failed = checks.iter().find(|r| !r.holds);
                report.tally(failed.is_none());
                if let Some(r) = failed {
                    report.counterexamples.push(Finding {
                        label: "induced filter fails".into(),
                        detail: r.describe(universe),
                        filters: vec![f.clone()],
                        menu: None,
                    });
                }
            }
            Ok(report)
        }
    }
}

/// The value a decision maker maximizes over the considered alternatives.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregateUtility {
    pub values: Vec<f64>,
}

impl AggregateUtility {
    pub fn new(universe: &Universe, values: Vec<f64>) -> Result<Self> {
        if values.len() != universe.len() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation(format!(
                "aggregate utility needs {} finite values",
                universe.len()
            )));
        }
        Ok(AggregateUtility { values })
    }

    /// Highest-valued member of `menu`; the lowest index wins ties.
    pub fn argmax(&self, menu: Menu) -> Option<Alt> {
        menu.iter().fold(None, |best, x| match best {
            Some(b) if self.values[b.index()] >= self.values[x.index()] => Some(b),
            _ => Some(x),
        })
    }
}

/// Screens `menu` by the threshold, then maximizes the aggregate utility.
pub fn threshold_choice(rep: &ThresholdRepresentation, agg: &AggregateUtility, menu: Menu) -> Option<Alt> {
    let considered: Menu = menu.iter().filter(|&x| rep.passes(x)).collect();
    agg.argmax(considered)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WarpAxiom {
    Warp,
    WarpCo,
    WarpIo,
}

impl WarpAxiom {
    pub fn name(self) -> &'static str {
        match self {
            WarpAxiom::Warp => "WARP",
            WarpAxiom::WarpCo => "WARP-CO",
            WarpAxiom::WarpIo => "WARP-IO",
        }
    }
}

/// Why one candidate `b*` fails for a menu `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    /// `c(T) ∈ S`, `b*` chosen from `T' ⊃ T`, yet `c(T) ≠ b*`.
    Overload { candidate: Alt, t: Menu, t_prime: Menu },
    /// `c(S)` is recorded and differs from the candidate.
    NotChosen { candidate: Alt },
    /// `c(T) ∈ S` but `c(T) = b*` disagrees with whether `b*` wins every
    /// recorded pair `{b*, x}` for chosen `x ∈ T`. `pair` is a pair menu
    /// `b*` loses, or `None` when it wins them all.
    PairwiseMismatch {
        candidate: Alt,
        t: Menu,
        pair: Option<Menu>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WarpViolation {
    /// `c(s) = x`, `y ∈ s`, `c(t) = y`, `x ∈ t`.
    Reversal { x: Alt, y: Alt, s: Menu, t: Menu },
    /// No member of `menu` works as `b*`; one block per candidate.
    NoViableCandidate { menu: Menu, blocks: Vec<Block> },
    /// `c({alt})` is recorded as no choice, but `alt` is chosen from `chosen_from`.
    ChosenAfterDeclined { alt: Alt, chosen_from: Menu },
}

impl WarpViolation {
    pub fn clause(&self) -> &'static str {
        match self {
            WarpViolation::Reversal { .. } => "pairwise reversal",
            WarpViolation::NoViableCandidate { .. } => "no viable b*",
            WarpViolation::ChosenAfterDeclined { .. } => "declined singleton chosen elsewhere",
        }
    }

    /// Re-evaluates the violated clause against `dataset`.
    pub fn replay(&self, axiom: WarpAxiom, dataset: &ChoiceDataset) -> bool {
        match *self {
            WarpViolation::Reversal { x, y, s, t } => {
                x != y && dataset.choice(s) == Some(x) && dataset.choice(t) == Some(y) && s.contains(y) && t.contains(x)
            }
            WarpViolation::NoViableCandidate { menu, .. } => match axiom {
                WarpAxiom::WarpCo => {
                    let sup = superset_choices(dataset);
                    co_candidates(dataset, &sup, menu).is_err()
                }
                WarpAxiom::WarpIo => io_part1(dataset, dataset.ever_chosen(), menu, &mut BTreeSet::new()).is_err(),
                WarpAxiom::Warp => false,
            },
            WarpViolation::ChosenAfterDeclined { alt, chosen_from } => {
                dataset.get(Menu::singleton(alt)) == Some(None) && dataset.choice(chosen_from) == Some(alt)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WarpReport {
    pub axiom: WarpAxiom,
    pub satisfied: bool,
    pub violations: Vec<WarpViolation>,
    /// Unrecorded menus whose choice the axiom needed.
    pub coverage_gaps: Vec<Menu>,
    pub rationalizing_preference: Option<Preference>,
    pub notes: Vec<String>,
}

impl WarpReport {
    fn new(axiom: WarpAxiom, violations: Vec<WarpViolation>) -> Self {
        WarpReport {
            axiom,
            satisfied: violations.is_empty(),
            violations,
            coverage_gaps: Vec::new(),
            rationalizing_preference: None,
            notes: Vec::new(),
        }
    }
}

/// Pairwise reversals among recorded choices. On a full-domain dataset of
/// at most [`DEFAULT_FACTORIAL_CAP`] alternatives the result is cross-checked
/// against [`rationalizability_oracle`].
pub fn check_warp(dataset: &ChoiceDataset) -> WarpReport {
    let chosen: Vec<(Menu, Alt)> = dataset.choices().collect();
    let mut violations = Vec::new();
    for (i, &(s, x)) in chosen.iter().enumerate() {
        for &(t, y) in &chosen[i + 1..] {
            if x != y && s.contains(y) && t.contains(x) {
                violations.push(WarpViolation::Reversal { x, y, s, t });
            }
        }
    }
    let mut report = WarpReport::new(WarpAxiom::Warp, violations);
    if dataset.is_full_domain() && dataset.universe().len() <= DEFAULT_FACTORIAL_CAP {
        let oracle = rationalizability_oracle(dataset).expect("size checked above");
        if oracle.is_some() != report.satisfied {
            report
                .notes
                .push("pairwise check and rationalizability oracle disagree".into());
        }
        report.rationalizing_preference = oracle;
    }
    report
}

/// For each recorded menu, the alternatives chosen from some recorded strict
/// superset of it. Indexed by menu code.
fn superset_choices(dataset: &ChoiceDataset) -> Vec<Menu> {
    let mut sup = vec![Menu::EMPTY; dataset.universe().menu_count()];
    let recorded: Vec<Menu> = dataset.records().map(|(m, _)| m).collect();
    for (big, c) in dataset.choices() {
        for &t in &recorded {
            if t.is_strict_subset_of(big) {
                sup[t.code()] = sup[t.code()].with(c);
            }
        }
    }
    sup
}

/// The first viable `b*` for `s`, or one block per member.
fn co_candidates(dataset: &ChoiceDataset, sup: &[Menu], s: Menu) -> std::result::Result<Alt, Vec<Block>> {
    let mut blocks = Vec::new();
    'candidates: for b in s.iter() {
        for (t, ct) in dataset.choices() {
            if t.contains(b) && s.contains(ct) && ct != b && sup[t.code()].contains(b) {
                let t_prime = dataset
                    .choices()
                    .find(|&(tp, c)| c == b && t.is_strict_subset_of(tp))
                    .map(|(tp, _)| tp)
                    .expect("superset choice was recorded");
                blocks.push(Block::Overload {
                    candidate: b,
                    t,
                    t_prime,
                });
                continue 'candidates;
            }
        }
        return Ok(b);
    }
    Err(blocks)
}

/// Every nonempty menu of the universe needs some `b* ∈ S` such that, for
/// recorded `T ∋ b*` with `c(T) ∈ S` and `b*` chosen from a recorded strict
/// superset of `T`, `c(T) = b*`.
pub fn check_warp_co(dataset: &ChoiceDataset) -> WarpReport {
    let sup = superset_choices(dataset);
    let violations = dataset
        .universe()
        .menus()
        .skip(1)
        .filter_map(|s| {
            co_candidates(dataset, &sup, s)
                .err()
                .map(|blocks| WarpViolation::NoViableCandidate { menu: s, blocks })
        })
        .collect();
    WarpReport::new(WarpAxiom::WarpCo, violations)
}

/// Part 1 of WARP-IO for one menu `s`. Unrecorded pair menus that would
/// decide a clause go into `gaps`.
fn io_part1(
    dataset: &ChoiceDataset,
    ever_chosen: Menu,
    s: Menu,
    gaps: &mut BTreeSet<Menu>,
) -> std::result::Result<Alt, Vec<Block>> {
    let candidates = match dataset.get(s) {
        Some(Some(c)) => Menu::singleton(c),
        _ => s,
    };
    let mut blocks: Vec<Block> = s
        .difference(candidates)
        .iter()
        .map(|candidate| Block::NotChosen { candidate })
        .collect();
    'candidates: for b in candidates.iter() {
        for (t, ct) in dataset.choices() {
            if !t.contains(b) || !s.contains(ct) {
                continue;
            }
            // Does b win every recorded pair {b, x} for chosen x ∈ T?
            let mut lost = None;
            let mut missing = Vec::new();
            for x in t.intersection(ever_chosen).iter() {
                let q = Menu::singleton(b).with(x);
                match dataset.get(q) {
                    None => missing.push(q),
                    Some(c) if c != Some(b) => {
                        lost = Some(q);
                        break;
                    }
                    Some(_) => {}
                }
            }
            let wins_all = lost.is_none() && missing.is_empty();
            let undecided = lost.is_none() && !missing.is_empty();
            if undecided {
                gaps.extend(missing);
                continue;
            }
            if (ct == b) != wins_all {
                blocks.push(Block::PairwiseMismatch {
                    candidate: b,
                    t,
                    pair: lost,
                });
                continue 'candidates;
            }
        }
        return Ok(b);
    }
    Err(blocks)
}

/// Part 1: every nonempty `S` has a `b*` (the recorded choice of `S` when
/// there is one) such that for recorded `T ∋ b*` with `c(T) ∈ S`,
/// `c(T) = b*` exactly when `b*` wins every pair `{b*, x}` over the chosen
/// alternatives `x ∈ T`. Part 2: an alternative declined from its own
/// singleton menu is never chosen.
pub fn check_warp_io(dataset: &ChoiceDataset) -> WarpReport {
    let universe = dataset.universe();
    let ever_chosen = dataset.ever_chosen();
    let mut gaps = BTreeSet::new();
    let mut violations: Vec<WarpViolation> = universe
        .menus()
        .skip(1)
        .filter_map(|s| {
            io_part1(dataset, ever_chosen, s, &mut gaps)
                .err()
                .map(|blocks| WarpViolation::NoViableCandidate { menu: s, blocks })
        })
        .collect();
    for b in universe.alts() {
        let single = Menu::singleton(b);
        let chosen_from = dataset.choices().find(|&(_, c)| c == b).map(|(m, _)| m);
        match (dataset.get(single), chosen_from) {
            (Some(None), Some(m)) => violations.push(WarpViolation::ChosenAfterDeclined { alt: b, chosen_from: m }),
            (None, Some(_)) => {
                gaps.insert(single);
            }
            _ => {}
        }
    }
    let mut report = WarpReport::new(WarpAxiom::WarpIo, violations);
    report.coverage_gaps = gaps.into_iter().collect();
    report
        .notes
        .push("pair clause ranges over alternatives chosen from at least one recorded menu".into());
    if !report.coverage_gaps.is_empty() {
        report.notes.push(format!(
            "{} needed menu(s) unrecorded; clauses depending on them were not evaluated",
            report.coverage_gaps.len()
        ));
    }
    report
}

/// The first strict order, in lexicographic permutation order, whose
/// maximization reproduces every recorded choice. Records of "no choice"
/// impose nothing.
pub fn rationalizability_oracle(dataset: &ChoiceDataset) -> Result<Option<Preference>> {
    let universe = dataset.universe();
    let n = universe.len();
    if n > DEFAULT_FACTORIAL_CAP {
        return Err(Error::capacity(
            "rationalizability oracle (alternatives)",
            n,
            DEFAULT_FACTORIAL_CAP,
        ));
    }
    let chosen: Vec<(Menu, Alt)> = dataset.choices().collect();
    for perm in (0..n as u8).permutations(n) {
        let mut rank = vec![0usize; n];
        for (r, &a) in perm.iter().enumerate() {
            rank[a as usize] = r;
        }
        let fits = chosen
            .iter()
            .all(|&(m, c)| m.iter().all(|x| rank[c.index()] <= rank[x.index()]));
        if fits {
            let order = perm.into_iter().map(Alt).collect();
            return Preference::new(universe, order).map(Some);
        }
    }
    Ok(None)
}
