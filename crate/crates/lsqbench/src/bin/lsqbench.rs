use std::process::exit;

fn main() {
    exit(lsqbench::cli::dispatch(std::env::args_os()));
}
