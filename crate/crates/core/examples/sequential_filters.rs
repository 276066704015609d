//! Applying filters one after another and testing order independence.

use consideration::sampling::all_io_filters;
use consideration::{
    build_filter, check_commutative2, check_commutative_n, compose_n, verify_theorem2, verify_theorem3, Direction,
    Filter, FilterSequence, Mode, Rule, Universe,
};

fn main() -> consideration::Result<()> {
    let u = Universe::numbered(3)?;
    let budget = Filter::fixed_set(&u, u.menu(&["1", "2"])?);
    let brand = Filter::fixed_set(&u, u.menu(&["2", "3"])?);
    let best = build_filter(
        &u,
        Rule::TopK {
            order: u.sequence(&["3", "1", "2"])?,
            k: 1,
        },
    )?;

    let pair = check_commutative2(&budget, &brand)?;
    println!("budget, brand commute: {}", pair.commutative);

    let names = ["budget", "best-one"];
    let seq = FilterSequence::new(vec![budget.clone(), best.clone()])?;
    let r = check_commutative_n(&seq, 6)?;
    if let Some(w) = &r.witness {
        println!(
            "on {}: {} gives {}, {} gives {}",
            u.show(w.menu),
            w.reference.iter().map(|&i| names[i]).collect::<Vec<_>>().join(" then "),
            u.show(w.reference_image),
            w.other.iter().map(|&i| names[i]).collect::<Vec<_>>().join(" then "),
            u.show(w.other_image)
        );
        assert!(w.replay(seq.filters()));
    }

    let all = compose_n(&FilterSequence::new(all_io_filters(&u).collect())?);
    println!("all eight fixed-set filters in a row keep {}", u.show(all.on_full()));

    for report in [
        verify_theorem2(&u, Direction::If, Mode::Exhaustive)?,
        verify_theorem2(&Universe::numbered(2)?, Direction::OnlyIf, Mode::Exhaustive)?,
        verify_theorem3(&u, 3, Mode::Exhaustive)?,
    ] {
        println!("{}", report.summary());
    }
    Ok(())
}
