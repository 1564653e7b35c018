//! Driving the command-line interface in-process on the bundled inputs.

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let runs = [
        vec!["check-pair", "four_point.json", "--require", "unit-law"],
        vec!["descent", "trivial_pair.json"],
        vec!["check-net", "diamond_net.json"],
        vec!["valuations", "halves.json", "--mu1", "1/2,1/2", "--mu2", "1/4,3/4"],
        vec!["contexts", "trivial_pair.json", "--algebra", "full", "--json"],
    ];
    for args in runs {
        let mut argv = vec!["locality".to_string(), args[0].to_string(), format!("{data}/{}", args[1])];
        argv.extend(args[2..].iter().map(|s| s.to_string()));
        let out = locality::cli::run(&argv);
        println!("$ {}\n{}{}(exit {})\n", args.join(" "), out.stdout, out.stderr, out.code);
    }
}
