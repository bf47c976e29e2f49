fn main() {
    if !octoleech::acceptance::run_and_print() {
        std::process::exit(1);
    }
}
