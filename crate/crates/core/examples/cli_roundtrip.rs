//! Drives the command line in-process: generate, solve with a witness, check.

fn main() {
    let dir = std::env::temp_dir().join("ntst-cli-roundtrip");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let inst = dir.join("g.ntst");
    let result = dir.join("g.json");

    let gen = ntst::cli::run(["ntst", "gen", "--seed", "7", "--n", "9", "--p", "0.4", "--k", "3", "--weights", "int:5"]);
    std::fs::write(&inst, &gen.stdout).expect("write instance");
    print!("{}", gen.stdout);

    let solved = ntst::cli::run(["ntst".as_ref(), "solve".as_ref(), inst.as_os_str(), "--witness".as_ref()]);
    std::fs::write(&result, &solved.stdout).expect("write result");
    print!("{}", solved.stdout);

    let check = ntst::cli::run(["ntst".as_ref(), "check".as_ref(), inst.as_os_str(), result.as_os_str()]);
    print!("check exit {}: {}", check.code, check.stdout);
}
