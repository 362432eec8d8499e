use std::time::Instant;
use uqroot_core::cartan::{Lattice, TypeTag};
use uqroot_core::pbw::AlgebraCtx;
use uqroot_core::rmat::*;
fn main() {
    let c = AlgebraCtx::new(TypeTag::A1, Lattice::P).unwrap();
    for n in [2, 4, 6] {
        let t = Instant::now();
        let out = check_axiom(&c, AxiomName::Ybe17, n).unwrap();
        println!("A1 ybe n={} ok={} in {:?}", n, out.ok, t.elapsed());
    }
    for name in [AxiomName::Intertwiner18, AxiomName::Hexagon111, AxiomName::Hexagon112] {
        let t = Instant::now();
        let out = check_axiom(&c, name, 6).unwrap();
        println!("A1 {} n=6 ok={} in {:?}", name.name(), out.ok, t.elapsed());
    }
    let c2 = AlgebraCtx::new(TypeTag::A2, Lattice::P).unwrap();
    for name in [AxiomName::Intertwiner18, AxiomName::Hexagon111, AxiomName::Hexagon112] {
        let t = Instant::now();
        let out = check_axiom(&c2, name, 4).unwrap();
        println!("A2 {} n=4 ok={} in {:?}", name.name(), out.ok, t.elapsed());
    }
    let t = Instant::now();
    let out = check_axiom(&c2, AxiomName::Ybe17, 4).unwrap();
    println!("A2 ybe n=4 ok={} in {:?}", out.ok, t.elapsed());
}
