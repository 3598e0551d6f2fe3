fn main() {
    println!("hopfalgd");
}
