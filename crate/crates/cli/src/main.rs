fn main() {
    std::process::exit(dgforge::main_with(std::env::args()));
}
