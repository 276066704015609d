//! Exhaustive and seeded random generation of filters, preferences and
//! threshold representations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::filter::{build_filter, Filter, Rule};
use crate::preference::Preference;
use crate::representation::{threshold_choice, AggregateUtility, ThresholdRepresentation};
use crate::universe::{Alt, Menu, Universe};

/// Exhaustive filter-space enumeration is limited to this many alternatives
/// (2^12 = 4096 filters at three).
pub const EXHAUSTIVE_FILTER_CAP: usize = 3;

/// Deterministic generator used by every sampled routine.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Number of bits needed to index the filter space: `Σ_A |A| = n·2^(n-1)`.
pub fn filter_space_bits(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        n << (n - 1)
    }
}

/// Scatters the low bits of `bits` into the set positions of `mask`.
fn deposit(mut bits: u64, mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if bits & 1 == 1 {
            out |= low;
        }
        bits >>= 1;
        m &= m - 1;
    }
    out
}

/// Decodes filter number `index` of the filter space: each menu `A`, in
/// ascending order, consumes `|A|` bits selecting its image.
pub fn filter_from_index(universe: &Universe, mut index: u64) -> Filter {
    let table = universe
        .menus()
        .map(|m| {
            let w = m.len();
            let image = deposit(index, m.bits());
            index = if w >= 64 { 0 } else { index >> w };
            Menu::from_bits(image)
        })
        .collect();
    Filter::from_table(universe, table).expect("decoded tables are contractive")
}

/// Every filter on a universe of at most [`EXHAUSTIVE_FILTER_CAP`]
/// alternatives, in index order.
pub fn all_filters(universe: &Universe) -> Result<impl Iterator<Item = Filter> + '_> {
    if universe.len() > EXHAUSTIVE_FILTER_CAP {
        return Err(Error::capacity(
            "exhaustive filter space (alternatives)",
            universe.len(),
            EXHAUSTIVE_FILTER_CAP,
        ));
    }
    let count = 1u64 << filter_space_bits(universe.len());
    Ok((0..count).map(move |i| filter_from_index(universe, i)))
}

/// The `2^|X|` independent-of-others filters `A ↦ A ∩ Y`, by ascending `Y`.
pub fn all_io_filters(universe: &Universe) -> impl Iterator<Item = Filter> + '_ {
    universe.menus().map(move |y| Filter::fixed_set(universe, y))
}

pub fn random_menu<R: Rng>(universe: &Universe, rng: &mut R) -> Menu {
    Menu::from_bits(rng.gen::<u32>()).intersection(universe.full())
}

/// Independent uniform subset for every menu.
pub fn random_table_filter<R: Rng>(universe: &Universe, rng: &mut R) -> Filter {
    let table = universe
        .menus()
        .map(|m| Menu::from_bits(rng.gen::<u32>() & m.bits()))
        .collect();
    Filter::from_table(universe, table).expect("masked images are contractive")
}

pub fn random_order<R: Rng>(universe: &Universe, rng: &mut R) -> Vec<Alt> {
    let mut order: Vec<Alt> = universe.alts().collect();
    order.shuffle(rng);
    order
}

pub fn random_preference<R: Rng>(universe: &Universe, rng: &mut R) -> Preference {
    Preference::new(universe, random_order(universe, rng)).expect("shuffled permutation")
}

/// Small-integer scores keep ties frequent, which exercises `≥` at the cutoff.
pub fn random_threshold_rule<R: Rng>(universe: &Universe, rng: &mut R) -> Rule {
    let scores = universe.alts().map(|_| f64::from(rng.gen_range(-3i32..=3))).collect();
    Rule::Threshold {
        scores,
        cutoff: f64::from(rng.gen_range(-4i32..=4)),
    }
}

/// A random rule of a random kind.
pub fn random_rule<R: Rng>(universe: &Universe, rng: &mut R) -> Rule {
    let n = universe.len();
    match rng.gen_range(0..4) {
        0 => Rule::FixedSet(random_menu(universe, rng)),
        1 => random_threshold_rule(universe, rng),
        2 => Rule::TopK {
            order: random_order(universe, rng),
            k: rng.gen_range(0..=n),
        },
        _ => Rule::SatisficingPrefix {
            listing: random_order(universe, rng),
            acceptable: random_menu(universe, rng),
            k: rng.gen_range(0..=n),
        },
    }
}

pub fn random_rule_filter<R: Rng>(universe: &Universe, rng: &mut R) -> Filter {
    build_filter(universe, random_rule(universe, rng)).expect("generated rules are well formed")
}

/// Random independent-of-others filter, either fixed-set or threshold backed.
pub fn random_io_filter<R: Rng>(universe: &Universe, rng: &mut R) -> Filter {
    let rule = if rng.gen_bool(0.5) {
        Rule::FixedSet(random_menu(universe, rng))
    } else {
        random_threshold_rule(universe, rng)
    };
    build_filter(universe, rule).expect("generated rules are well formed")
}

/// Choices of a random strict preference on every menu.
pub fn random_rational_dataset<R: Rng>(universe: &Universe, rng: &mut R) -> ChoiceDataset {
    let p = random_preference(universe, rng);
    ChoiceDataset::tabulate(universe, |m| p.choose(m))
        .expect("maximizers belong to their menus")
        .with_provenance(format!("rational: preference {}", p.names().join(">")))
}

/// Threshold choices from a random representation and aggregate utility.
/// Each nonempty menu is recorded with probability `coverage`.
pub fn random_io_dataset<R: Rng>(universe: &Universe, rng: &mut R, coverage: f64) -> ChoiceDataset {
    let Rule::Threshold { scores, cutoff } = random_threshold_rule(universe, rng) else {
        unreachable!("threshold generator returns threshold rules")
    };
    let rep = ThresholdRepresentation { scores, cutoff };
    let agg = AggregateUtility {
        values: universe.alts().map(|_| f64::from(rng.gen_range(0i32..10))).collect(),
    };
    let mut ds = ChoiceDataset::new(universe);
    for m in universe.menus().skip(1) {
        if rng.gen_bool(coverage) {
            ds.record(m, threshold_choice(&rep, &agg, m))
                .expect("threshold choices belong to their menus");
        }
    }
    ds.with_provenance(format!(
        "threshold choice: scores {:?} cutoff {} aggregate {:?}",
        rep.scores, rep.cutoff, agg.values
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_space_sizes() {
        let u2 = Universe::numbered(2).unwrap();
        let u3 = Universe::numbered(3).unwrap();
        assert_eq!(all_filters(&u2).unwrap().count(), 16);
        assert_eq!(all_filters(&u3).unwrap().count(), 4096);
        assert!(all_filters(&Universe::numbered(4).unwrap()).is_err());
    }

    #[test]
    fn decoded_filters_are_distinct() {
        let u = Universe::numbered(2).unwrap();
        let tables: std::collections::HashSet<Vec<Menu>> =
            all_filters(&u).unwrap().map(|f| f.table().to_vec()).collect();
        assert_eq!(tables.len(), 16);
    }

    #[test]
    fn same_seed_same_filters() {
        let u = Universe::numbered(5).unwrap();
        let a = random_table_filter(&u, &mut rng(7));
        let b = random_table_filter(&u, &mut rng(7));
        assert_eq!(a, b);
        let c = random_rule(&u, &mut rng(9));
        assert_eq!(c, random_rule(&u, &mut rng(9)));
    }
}
