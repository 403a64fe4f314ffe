use std::process::ExitCode;

fn main() -> ExitCode {
    qtorus::cli::entry()
}
