fn main() { println!("{}", fluxdet::probe()); }
