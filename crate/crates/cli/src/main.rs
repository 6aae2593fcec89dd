fn main() { println!("domforce CLI placeholder"); }
