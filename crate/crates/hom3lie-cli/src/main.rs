use std::io::Write;

fn main() {
    let outcome = hom3lie_cli::run_command(std::env::args_os());
    let out = outcome.output();
    if outcome.code == 2 && outcome.json.is_none() {
        eprint!("{out}");
    } else {
        let _ = std::io::stdout().write_all(out.as_bytes());
    }
    std::process::exit(outcome.code);
}
