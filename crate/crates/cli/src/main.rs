fn main() { std::process::exit(garsia_kit::run(std::env::args().collect())) }
