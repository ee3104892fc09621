//! Single-coalition-first action models: the three equivalent condition
//! sets, and a grand-coalition-first model that fails them.

use coalition::fixtures;
use coalition::gam::to_action_model;
use coalition::sam_snm::{check_condition_set, classify_sam, sam_derive_outcome, SingleFirstActionModel};

fn main() {
    for (name, g) in [("lock", fixtures::lock()), ("proc", fixtures::proc()), ("m1", fixtures::m1())] {
        let am = to_action_model(&g);
        let sets: Vec<Vec<bool>> =
            (0..am.n_states()).map(|s| (1..=3).map(|w| check_condition_set(&am, s, w)).collect()).collect();
        println!("{name}: condition sets per state {sets:?}");
        match SingleFirstActionModel::from_gam(&g) {
            Ok(sam) => {
                let grand = sam.agents().grand();
                let out = sam_derive_outcome(&sam, grand);
                let key = am.joint_key(grand, 0);
                let first = sam.carrier().name(0);
                println!("  single-coalition-first, {}", classify_sam(&sam));
                println!("  out_AG({first}, {key}) = {}", sam.carrier().display(out.get(0, 0)));
            }
            Err(e) => println!("  rejected: {e}"),
        }
    }
}
