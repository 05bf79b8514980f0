fn main() { println!("hexstable"); }
