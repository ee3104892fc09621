//! Derived outcome, availability and successor tables of a
//! grand-coalition-first model, and its S/I/D classification.

use coalition::fixtures;
use coalition::gam::{classify, derive_availability, derive_outcome, successor};

fn main() {
    let g = fixtures::proc();
    let carrier = g.carrier();
    let suc = successor(&g);
    for s in 0..g.n_states() {
        println!("suc({}) = {}", carrier.name(s), carrier.display(&suc[s]));
    }
    let a = g.agents().coalition(["a"]).unwrap();
    let out = derive_outcome(&g, a);
    let av = derive_availability(&g, a);
    let am = coalition::gam::to_action_model(&g);
    for s in 0..g.n_states() {
        for &j in av.get(s) {
            println!("out_a({}, {}) = {}", carrier.name(s), am.joint_key(a, j), carrier.display(out.get(s, j)));
        }
    }
    println!("proc is {}", classify(&g));
    println!("m1 is {}", classify(&fixtures::m1()));
}
