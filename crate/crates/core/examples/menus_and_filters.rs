//! Building a universe, menus and filters from rules or tables.

use consideration::{build_filter, Filter, Rule, Universe};

fn main() -> consideration::Result<()> {
    let u = Universe::new(["apple", "banana", "cherry", "date"])?;
    let menu = u.menu(&["apple", "cherry", "date"])?;
    println!("universe has {} menus; A = {}", u.menu_count(), u.show(menu));

    let filters = [
        build_filter(&u, Rule::FixedSet(u.menu(&["banana", "cherry"])?))?,
        build_filter(
            &u,
            Rule::Threshold {
                scores: vec![0.9, 0.2, 0.6, 0.4],
                cutoff: 0.5,
            },
        )?,
        build_filter(
            &u,
            Rule::TopK {
                order: u.sequence(&["date", "apple", "cherry", "banana"])?,
                k: 2,
            },
        )?,
        build_filter(
            &u,
            Rule::SatisficingPrefix {
                listing: u.sequence(&["cherry", "date", "apple", "banana"])?,
                acceptable: u.menu(&["apple", "date"])?,
                k: 1,
            },
        )?,
    ];
    for f in &filters {
        println!("{:<20} G(A) = {}", f.provenance().kind(), u.show(f.apply(menu)));
    }

    // any contractive table works
    let table = Filter::from_fn(&u, |m| if m.len() > 2 { m.without(m.first().unwrap()) } else { m })?;
    println!("{:<20} G(A) = {}", table.provenance().kind(), u.show(table.apply(menu)));
    Ok(())
}
