use std::process::ExitCode;

fn main() -> ExitCode {
    lmg_variance::cli::main_with_args(std::env::args_os())
}
