//! Applying several filters in succession, and whether the order matters.
//!
//! `compose2(first, second)` is the filter `A ↦ second(first(A))`: the
//! first argument is applied first.

use std::ops::ControlFlow;

use crate::axioms::check_io;
use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::report::{Finding, Mode, TheoremReport};
use crate::sampling::{self, EXHAUSTIVE_FILTER_CAP};
use crate::universe::{Menu, Universe};

/// Longest sequence whose orderings [`check_commutative_n`] enumerates by
/// default (6! = 720).
pub const DEFAULT_PERMUTATION_CAP: usize = 6;

/// Exhaustive tuple enumeration in [`verify_theorem3`] stops at this many tuples.
pub const EXHAUSTIVE_TUPLE_CAP: usize = 1 << 16;

/// A nonempty list of filters over one universe, in application order.
#[derive(Clone, Debug)]
pub struct FilterSequence {
    filters: Vec<Filter>,
}

impl FilterSequence {
    pub fn new(filters: Vec<Filter>) -> Result<Self> {
        let first = filters
            .first()
            .ok_or_else(|| Error::validation("a filter sequence needs at least one filter"))?;
        for f in &filters[1..] {
            first.universe().ensure_same(f.universe())?;
        }
        Ok(FilterSequence { filters })
    }

    pub fn filters(&self) -> &[Filter] {
        &self.filters
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

pub fn compose2(first: &Filter, second: &Filter) -> Result<Filter> {
    first.universe().ensure_same(second.universe())?;
    let table = first.table().iter().map(|&m| second.apply(m)).collect();
    Filter::from_table(first.universe(), table)
}

/// Left fold of [`compose2`]: `Γₙ(…Γ₂(Γ₁(A)))`.
pub fn compose_n(sequence: &FilterSequence) -> Filter {
    let filters = sequence.filters();
    let table = fold_tables(filters, 0..filters.len());
    Filter::from_table(sequence.universe(), table).expect("composites of filters are contractive")
}

fn fold_tables(filters: &[Filter], order: impl IntoIterator<Item = usize>) -> Vec<Menu> {
    let mut table: Vec<Menu> = filters[0].universe().menus().collect();
    for i in order {
        for m in &mut table {
            *m = filters[i].apply(*m);
        }
    }
    table
}

/// Two application orders that disagree on one menu.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderWitness {
    pub menu: Menu,
    /// Indices into the sequence, in application order.
    pub reference: Vec<usize>,
    pub other: Vec<usize>,
    pub reference_image: Menu,
    pub other_image: Menu,
}

impl OrderWitness {
    /// Recomputes both orders on the witness menu.
    pub fn replay(&self, filters: &[Filter]) -> bool {
        let run = |order: &[usize]| order.iter().fold(self.menu, |m, &i| filters[i].apply(m));
        run(&self.reference) != run(&self.other)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativityReport {
    pub commutative: bool,
    pub witness: Option<OrderWitness>,
    /// IO status of each filter in sequence order.
    pub io_status: Vec<bool>,
}

pub fn check_commutative2(f1: &Filter, f2: &Filter) -> Result<CommutativityReport> {
    let seq = FilterSequence::new(vec![f1.clone(), f2.clone()])?;
    check_commutative_n(&seq, 2)
}

/// Compares the composite of every permutation of the sequence against the
/// given order. Permutations are visited in lexicographic order by a
/// depth-first walk that shares partial folds between siblings.
pub fn check_commutative_n(sequence: &FilterSequence, permutation_cap: usize) -> Result<CommutativityReport> {
    let filters = sequence.filters();
    if filters.len() > permutation_cap {
        return Err(Error::capacity(
            "commutativity sequence length",
            filters.len(),
            permutation_cap,
        ));
    }
    let reference: Vec<usize> = (0..filters.len()).collect();
    let reference_table = fold_tables(filters, reference.iter().copied());
    let mut witness = None;
    for_each_permutation_fold(filters, |order, table| {
        let diff = table.iter().zip(&reference_table).position(|(a, b)| a != b);
        match diff {
            Some(code) => {
                witness = Some(OrderWitness {
                    menu: Menu::from_bits(code as u32),
                    reference: reference.clone(),
                    other: order.to_vec(),
                    reference_image: reference_table[code],
                    other_image: table[code],
                });
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    Ok(CommutativityReport {
        commutative: witness.is_none(),
        witness,
        io_status: filters.iter().map(|f| check_io(f).holds).collect(),
    })
}

type Visit<'a> = dyn FnMut(&[usize], &[Menu]) -> ControlFlow<()> + 'a;

fn for_each_permutation_fold(filters: &[Filter], mut visit: impl FnMut(&[usize], &[Menu]) -> ControlFlow<()>) {
    fn walk(
        filters: &[Filter],
        order: &mut Vec<usize>,
        used: &mut [bool],
        tables: &mut Vec<Vec<Menu>>,
        visit: &mut Visit<'_>,
    ) -> ControlFlow<()> {
        if order.len() == filters.len() {
            return visit(order, tables.last().expect("seeded with identity"));
        }
        for i in 0..filters.len() {
            if used[i] {
                continue;
            }
            let next: Vec<Menu> = tables
                .last()
                .expect("seeded with identity")
                .iter()
                .map(|&m| filters[i].apply(m))
                .collect();
            used[i] = true;
            order.push(i);
            tables.push(next);
            let flow = walk(filters, order, used, tables, visit);
            tables.pop();
            order.pop();
            used[i] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    let identity: Vec<Menu> = filters[0].universe().menus().collect();
    let _ = walk(
        filters,
        &mut Vec::with_capacity(filters.len()),
        &mut vec![false; filters.len()],
        &mut vec![identity],
        &mut visit,
    );
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Both IO ⟹ commutative.
    If,
    /// Commutative ⟹ both IO. Probed, not asserted.
    OnlyIf,
}

/// Probes the two directions of "two filters commute iff both are IO".
///
/// The `If` direction reports any IO pair that fails to commute. The
/// `OnlyIf` direction enumerates pairs and lists every commuting pair in
/// which some member is not IO as a counterexample candidate; such pairs
/// exist (any filter commutes with itself and with the identity), so a
/// nonempty list is the expected outcome.
pub fn verify_theorem2(universe: &Universe, direction: Direction, mode: Mode) -> Result<TheoremReport> {
    match direction {
        Direction::If => io_pairs_commute(universe, mode),
        Direction::OnlyIf => commuting_pairs_are_io(universe, mode),
    }
}

fn io_pairs_commute(universe: &Universe, mode: Mode) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("both IO implies commutative", mode, universe.len());
    let mut examine = |f1: &Filter, f2: &Filter| -> Result<()> {
        let r = check_commutative2(f1, f2)?;
        report.tally(r.commutative);
        if let Some(w) = r.witness {
            report.counterexamples.push(Finding {
                label: "IO pair does not commute".into(),
                detail: format!(
                    "orders {:?} and {:?} differ at {}",
                    w.reference,
                    w.other,
                    universe.show(w.menu)
                ),
                filters: vec![f1.clone(), f2.clone()],
                menu: Some(w.menu),
            });
        }
        Ok(())
    };
    match mode {
        Mode::Exhaustive => {
            if universe.len() > EXHAUSTIVE_FILTER_CAP {
                return Err(Error::capacity(
                    "exhaustive IO pairs (alternatives)",
                    universe.len(),
                    EXHAUSTIVE_FILTER_CAP,
                ));
            }
            let io: Vec<Filter> = sampling::all_io_filters(universe).collect();
            for f1 in &io {
                for f2 in &io {
                    examine(f1, f2)?;
                }
            }
        }
        Mode::Sampled { count, seed } => {
            let mut rng = sampling::rng(seed);
            for _ in 0..count {
                let f1 = sampling::random_io_filter(universe, &mut rng);
                let f2 = sampling::random_io_filter(universe, &mut rng);
                examine(&f1, &f2)?;
            }
        }
    }
    Ok(report)
}

const ONLY_IF_CAP: usize = 2;

fn commuting_pairs_are_io(universe: &Universe, mode: Mode) -> Result<TheoremReport> {
    let mut report = TheoremReport::new("commutative implies both IO (probe)", mode, universe.len());
    let mut examine = |f1: &Filter, f2: &Filter| -> Result<()> {
        let r = check_commutative2(f1, f2)?;
        let both_io = r.io_status.iter().all(|&io| io);
        let candidate = r.commutative && !both_io;
        report.tally(!candidate);
        if candidate {
            let non_io: Vec<usize> = r
                .io_status
                .iter()
                .enumerate()
                .filter(|(_, io)| !**io)
                .map(|(i, _)| i + 1)
                .collect();
            report.counterexamples.push(Finding {
                label: "counterexample candidate to only-if".into(),
                detail: format!("pair commutes on every menu; filter(s) {non_io:?} not IO"),
                filters: vec![f1.clone(), f2.clone()],
                menu: None,
            });
        }
        Ok(())
    };
    match mode {
        Mode::Exhaustive => {
            if universe.len() > ONLY_IF_CAP {
                return Err(Error::capacity(
                    "exhaustive filter pairs (alternatives)",
                    universe.len(),
                    ONLY_IF_CAP,
                ));
            }
            let all: Vec<Filter> = sampling::all_filters(universe)?.collect();
            for f1 in &all {
                for f2 in &all {
                    examine(f1, f2)?;
                }
            }
        }
        Mode::Sampled { count, seed } => {
            let mut rng = sampling::rng(seed);
            let identity = Filter::identity(universe);
            for i in 0..count {
                let f1 = sampling::random_rule_filter(universe, &mut rng);
                let f2 = match i % 3 {
                    0 => identity.clone(),
                    1 => f1.clone(),
                    _ => sampling::random_rule_filter(universe, &mut rng),
                };
                examine(&f1, &f2)?;
            }
        }
    }
    if !report.counterexamples.is_empty() {
        report.notes.push(format!(
            "{} commuting pair(s) with a non-IO member: counterexample candidates to the only-if claim",
            report.counterexamples.len()
        ));
    }
    Ok(report)
}

/// Checks that tuples of `n` IO filters commute under every ordering and
/// that each composite equals the fixed-set filter on `∩ Γᵢ(X)`.
pub fn verify_theorem3(universe: &Universe, n: usize, mode: Mode) -> Result<TheoremReport> {
    if n == 0 {
        return Err(Error::validation("n-commutativity needs at least one filter"));
    }
    if n > DEFAULT_PERMUTATION_CAP {
        return Err(Error::capacity("tuple length", n, DEFAULT_PERMUTATION_CAP));
    }
    let mut report = TheoremReport::new(
        format!("{n} IO filters commute and collapse to one fixed-set filter"),
        mode,
        universe.len(),
    );
    let mut examine = |tuple: Vec<Filter>| -> Result<()> {
        let seq = FilterSequence::new(tuple)?;
        let r = check_commutative_n(&seq, DEFAULT_PERMUTATION_CAP)?;
        let y = seq
            .filters()
            .iter()
            .fold(universe.full(), |acc, f| acc.intersection(f.on_full()));
        let collapsed = compose_n(&seq) == Filter::fixed_set(universe, y);
        report.tally(r.commutative && collapsed);
        if !(r.commutative && collapsed) {
            report.counterexamples.push(Finding {
                label: "IO tuple fails".into(),
                detail: format!("commutative={} collapses={collapsed}", r.commutative),
                filters: seq.filters().to_vec(),
                menu: r.witness.map(|w| w.menu),
            });
        }
        Ok(())
    };
    match mode {
        Mode::Exhaustive => {
            let io: Vec<Filter> = sampling::all_io_filters(universe).collect();
            let total = (io.len() as u128).pow(n as u32);
            if total > EXHAUSTIVE_TUPLE_CAP as u128 {
                return Err(Error::capacity(
                    "exhaustive IO tuples",
                    usize::try_from(total).unwrap_or(usize::MAX),
                    EXHAUSTIVE_TUPLE_CAP,
                ));
            }
            let mut idx = vec![0usize; n];
            loop {
                examine(idx.iter().map(|&i| io[i].clone()).collect())?;
                // odometer, last position fastest
                let mut pos = n;
                loop {
                    if pos == 0 {
                        return Ok(report);
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < io.len() {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        }
        Mode::Sampled { count, seed } => {
            let mut rng = sampling::rng(seed);
            for _ in 0..count {
                let tuple = (0..n).map(|_| sampling::random_io_filter(universe, &mut rng)).collect();
                examine(tuple)?;
            }
        }
    }
    Ok(report)
}
