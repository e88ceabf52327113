fn main() {
    println!("pastel");
}
