use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(tricube::cli::run(std::env::args_os()))
}
