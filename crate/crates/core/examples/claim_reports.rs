//! Running the claim verifiers through the command-line front end.

fn main() {
    for args in [
        &["verify", "--theorem", "io-characterization", "--exhaustive"][..],
        &[
            "verify",
            "--theorem",
            "io-commutativity",
            "--direction",
            "only-if",
            "--size",
            "2",
        ],
        &["verify", "--theorem", "costless-consideration", "--size", "4"],
        &["verify", "--theorem", "flexibility-reversal"],
        &[
            "--format",
            "machine",
            "verify",
            "--theorem",
            "threshold-representation",
            "--samples",
            "100",
            "--seed",
            "5",
            "--size",
            "5",
        ],
    ] {
        let out = consideration::cli::run(std::iter::once("consideration").chain(args.iter().copied()));
        println!("$ consideration {}  (exit {})", args.join(" "), out.status);
        print!("{}{}", out.stdout, out.stderr);
    }
}
