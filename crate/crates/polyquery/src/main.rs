//! Thin binary wrapper; all behavior lives in the library.

fn main() -> std::process::ExitCode {
    polyquery::cli::main_entry()
}
