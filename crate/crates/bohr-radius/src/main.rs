use std::process;

fn main() {
    process::exit(bohr_radius::cli::run(std::env::args_os().skip(1)));
}
