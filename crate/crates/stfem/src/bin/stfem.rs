use std::process::ExitCode;

fn main() -> ExitCode {
    stfem::cli::main()
}
