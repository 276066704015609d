//! Choosing how much to consider when attention is costly.

use consideration::sampling::all_io_filters;
use consideration::{
    check_convex_cost, check_preference_for_flexibility, choose_filter, Filter, FilterSpace, FilterUtilityModel,
    Preference, Universe,
};

fn main() -> consideration::Result<()> {
    let u = Universe::new(["a", "b", "c"])?;
    let pref = Preference::from_names(&u, &["b", "a", "c"])?;
    let mut filters = vec![Filter::identity(&u)];
    filters.extend(all_io_filters(&u));
    let labels = filters
        .iter()
        .map(|f| format!("consider {}", u.show(f.on_full())))
        .collect();
    let space = FilterSpace::new(filters, labels)?;

    let cheap = FilterUtilityModel::new(pref.clone(), vec![8.0, 10.0, 1.0], vec![0.0; 4])?;
    let dear = FilterUtilityModel::new(pref, vec![8.0, 10.0, 1.0], vec![0.0, 1.0, 4.0, 9.0])?;
    println!("cost k^2 convex: {}", check_convex_cost(&dear).convex);

    for m in [u.full(), u.menu(&["a", "c"])?] {
        for (name, model) in [("free", &cheap), ("k^2", &dear)] {
            let c = choose_filter(model, &space, m)?;
            let considered = space.filters()[c.index].apply(m);
            println!(
                "{} with {name} attention: {} (sees {}), utility {}",
                u.show(m),
                space.labels()[c.index],
                u.show(considered),
                c.utilities[c.index]
            );
        }
    }

    let flat = FilterUtilityModel::new(Preference::canonical(&u), vec![5.0; 3], vec![0.0, 1.0, 4.0, 9.0])?;
    let r = check_preference_for_flexibility(&space, &flat, u.full())?;
    if let Some(rev) = r.reversals.first() {
        println!(
            "{} of {} comparable pairs reverse; e.g. {} ({}) is worth less than {} ({})",
            r.reversals.len(),
            r.comparable_pairs,
            space.labels()[rev.larger],
            rev.larger_utility,
            space.labels()[rev.smaller],
            rev.smaller_utility
        );
    }
    Ok(())
}
