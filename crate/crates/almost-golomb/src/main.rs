use std::process::ExitCode;

fn main() -> ExitCode {
    almost_golomb::cli::main()
}
