//! Auditing choice data against WARP, WARP-CO and WARP-IO.

use consideration::sampling;
use consideration::{
    check_warp, check_warp_co, check_warp_io, rationalizability_oracle, ChoiceDataset, Universe, WarpAxiom,
};

fn audit(label: &str, ds: &ChoiceDataset) -> consideration::Result<()> {
    println!("{label}");
    for (axiom, r) in [
        (WarpAxiom::Warp, check_warp(ds)),
        (WarpAxiom::WarpCo, check_warp_co(ds)),
        (WarpAxiom::WarpIo, check_warp_io(ds)),
    ] {
        println!(
            "  {:<8} {} ({} violation(s), {} unrecorded menu(s) needed)",
            axiom.name(),
            if r.satisfied { "ok" } else { "violated" },
            r.violations.len(),
            r.coverage_gaps.len()
        );
        for v in &r.violations {
            assert!(v.replay(axiom, ds));
        }
    }
    match rationalizability_oracle(ds)? {
        Some(p) => println!("  rationalized by {}", p.names().join(" > ")),
        None => println!("  no strict order rationalizes the data"),
    }
    Ok(())
}

fn main() -> consideration::Result<()> {
    let u = Universe::new(["x", "y", "z", "w"])?;
    let rec = |names: &[&str], c: &str| Ok::<_, consideration::Error>((u.menu(names)?, u.alt(c)));
    let overload = ChoiceDataset::from_records(
        &u,
        [
            rec(&["x", "y"], "x")?,
            rec(&["x", "y", "z"], "y")?,
            rec(&["x", "y", "w"], "y")?,
            rec(&["x", "y", "z", "w"], "x")?,
        ],
    )?;
    audit("choice overload", &overload)?;

    let mut rng = sampling::rng(3);
    audit("rational", &sampling::random_rational_dataset(&u, &mut rng))?;
    let screened = sampling::random_io_dataset(&u, &mut rng, 0.5);
    audit(screened.provenance().unwrap_or("screened"), &screened)?;
    Ok(())
}
