//! The ⊙ product and coalition neighborhoods derived from per-agent ones.

use coalition::fixtures;
use coalition::model::{Family, StateSet};
use coalition::sam_snm::{classify_snm, odot, snm_derive_neighborhood};

fn main() -> coalition::Result<()> {
    let d1: Family = [StateSet::from([1, 2]), StateSet::from([2, 3])].into_iter().collect();
    let d2: Family = [StateSet::from([2]), StateSet::from([1, 3])].into_iter().collect();
    println!("{d1:?} ⊙ {d2:?} = {:?}", odot(&d1, &d2)?);

    let n1 = fixtures::n1();
    for c in n1.agents().coalitions() {
        let nei = snm_derive_neighborhood(&n1, c);
        println!("nei_{{{}}}(s0) = {}", n1.agents().coalition_key(c), n1.carrier().display_family(&nei[0]));
    }
    println!("n1 is {}", classify_snm(&n1));
    Ok(())
}
