//! Clearness, histories and tree-likeness.

use coalition::clear_tree::{
    enumerate_histories, is_clear_gam, is_clear_snm, is_treelike_gam, is_treelike_snm, outcome_families_partition,
};
use coalition::fixtures;
use coalition::gam::to_action_model;

fn main() {
    for (name, g) in [("lock", fixtures::lock()), ("u1", fixtures::u1()), ("loop", fixtures::loop_gam()), ("tree", fixtures::tree_gam())] {
        println!(
            "{name:<5} clear {:<5} partitions {:<5} tree-like {:?}",
            is_clear_gam(&g),
            outcome_families_partition(&g),
            is_treelike_gam(&g)
        );
    }
    for (name, n) in [("n1", fixtures::n1()), ("tree_snm", fixtures::tree_snm()), ("loop_snm", fixtures::loop_snm())] {
        println!("{name:<8} clear {:<5} tree-like {:?}", is_clear_snm(&n), is_treelike_snm(&n));
    }

    let lock = to_action_model(&fixtures::lock());
    let grand = lock.agents().grand();
    for h in enumerate_histories(&lock, grand, 0, 0, 2) {
        let steps: Vec<String> = h.steps.iter().map(|(j, t)| format!("({}) -> {}", j.key(lock.agents(), lock.actions()), lock.carrier().name(*t))).collect();
        println!("s1 ~> s1 in {} steps: {}", h.len(), steps.join(", "));
    }
}
