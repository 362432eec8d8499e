use std::time::Instant;
use uqroot_core::cartan::{Lattice, TypeTag};
use uqroot_core::pbw::AlgebraCtx;
use uqroot_core::rmat::*;
fn main() {
    for tag in [TypeTag::A1, TypeTag::A2] {
        let c = AlgebraCtx::new(tag, Lattice::P).unwrap();
        for name in AxiomName::all() {
            let n = if tag == TypeTag::A1 { 6 } else { 4 };
            let t = Instant::now();
            let out = check_axiom(&c, name, n).unwrap();
            println!("{tag} {} n={} ok={} in {:?}", name.name(), n, out.ok, t.elapsed());
        }
    }
}
