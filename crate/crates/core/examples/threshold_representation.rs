//! Threshold representations of IO filters and two-stage choice.

use consideration::{
    build_filter, construct_threshold_representation, induced_filter, threshold_choice, verify_theorem6,
    AggregateUtility, Error, Filter, Mode, Rule, Universe,
};

fn main() -> consideration::Result<()> {
    let u = Universe::new(["tea", "coffee", "juice", "water"])?;
    let f = Filter::fixed_set(&u, u.menu(&["coffee", "juice", "water"])?);
    let rep = construct_threshold_representation(&f)?;
    println!("scores {:?}, cutoff {}", rep.scores, rep.cutoff);
    assert_eq!(induced_filter(&rep, &u)?, f);

    let agg = AggregateUtility::new(&u, vec![9.0, 3.0, 5.0, 1.0])?;
    for names in [&["tea", "coffee"][..], &["tea", "juice", "water"], &["tea"]] {
        let m = u.menu(names)?;
        let c = threshold_choice(&rep, &agg, m).map_or("nothing", |a| u.name(a));
        println!("from {} choose {c}", u.show(m));
    }

    let picky = build_filter(
        &u,
        Rule::TopK {
            order: u.sequence(&["water", "tea", "coffee", "juice"])?,
            k: 1,
        },
    )?;
    match construct_threshold_representation(&picky) {
        Err(Error::RepresentationImpossible(r)) => println!("best-one filter: {}", r.describe(&u)),
        other => println!("unexpected: {other:?}"),
    }

    println!("{}", verify_theorem6(&u, Mode::Exhaustive)?.summary());
    println!(
        "{}",
        verify_theorem6(&Universe::numbered(6)?, Mode::Sampled { count: 500, seed: 1 })?.summary()
    );
    Ok(())
}
