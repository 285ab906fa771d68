fn main() {
    std::process::exit(oscillent::cli::main_entry());
}
