//! Checking filter properties and reading their witnesses.

use consideration::{
    build_filter, check_condition_tau, check_constant_number, check_dio_all, check_io, check_sens_alpha,
    check_sens_beta, BetaVariant, Filter, OrderedFilter, OrderedRule, Rule, Universe,
};

fn main() -> consideration::Result<()> {
    let u = Universe::numbered(4)?;
    let fixed = Filter::fixed_set(&u, u.menu(&["2", "3"])?);
    let top2 = build_filter(
        &u,
        Rule::TopK {
            order: u.sequence(&["4", "3", "2", "1"])?,
            k: 2,
        },
    )?;

    for (name, f) in [("fixed set {2,3}", &fixed), ("best two", &top2)] {
        println!("{name}");
        for r in [
            check_sens_alpha(f),
            check_sens_beta(f, BetaVariant::Literal),
            check_sens_beta(f, BetaVariant::Classical),
            check_condition_tau(f),
            check_io(f),
            check_constant_number(f, 2),
        ] {
            println!("  {}", r.describe(&u));
            if !r.holds {
                assert!(r.replay(f));
            }
        }
    }

    // listing order matters for a satisficing search
    let search = OrderedFilter::new(
        &u,
        OrderedRule::Satisficing {
            acceptable: u.menu(&["2", "4"])?,
            k: 1,
        },
    )?;
    let r = check_dio_all(&search, 8)?;
    println!("satisficing search\n  {}", r.describe(&u));
    Ok(())
}
