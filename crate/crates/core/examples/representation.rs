//! Converting between single-coalition-first action and neighborhood
//! models, checking that each side represents the other.

use coalition::fixtures;
use coalition::neighborhood_semantics::z_represents;
use coalition::represent::{sam_to_snm, snm_to_sam};
use coalition::sam_snm::{classify_sam, classify_snm};

fn main() -> coalition::Result<()> {
    let sam = fixtures::lock_sam();
    let snm = sam_to_snm(&sam);
    println!("lock -> snm: z-represents {}", z_represents(&snm.to_neighborhood_model(), &sam.to_action_model())?);
    for a in 0..2 {
        println!("  nei_{}(s1) = {}", snm.agents().name(a), snm.carrier().display_family(snm.neighborhood_agent(a, 0)));
    }

    let n1 = fixtures::n1();
    let back = snm_to_sam(&n1)?;
    println!("n1 -> sam with actions {:?}", back.actions().names());
    println!("  z-represents {}", z_represents(&n1.to_neighborhood_model(), &back.to_action_model())?);
    println!("  signatures {} / {}", classify_snm(&n1), classify_sam(&back));
    Ok(())
}
