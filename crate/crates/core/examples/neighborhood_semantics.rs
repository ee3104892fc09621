//! Neighborhood models built from effectivity, representation checks and
//! the superset closure.

use coalition::action_semantics::{actual_effectivity, alpha_effectivity};
use coalition::fixtures;
use coalition::formula::parse;
use coalition::gam::to_action_model;
use coalition::model::NeighborhoodModel;
use coalition::neighborhood_semantics::{
    alpha_represents, eval_neighborhood, first_mismatch, is_alpha_model, superset_closure, z_represents,
};

fn main() -> coalition::Result<()> {
    let am = to_action_model(&fixtures::lock());
    let z = NeighborhoodModel::from_effectivity(&actual_effectivity(&am), am.carrier().clone())?;
    let alpha = NeighborhoodModel::from_effectivity(&alpha_effectivity(&am)?, am.carrier().clone())?;
    println!("z-represents: {}, alpha-represents: {}", z_represents(&z, &am)?, alpha_represents(&alpha, &am)?);
    println!("closure of z equals alpha: {}", superset_closure(&z)? == alpha);
    println!("z is superset-closed: {}, alpha is: {}", is_alpha_model(&z), is_alpha_model(&alpha));

    let f = parse("[{a}]cf & [{b}]cb")?;
    for s in 0..am.n_states() {
        println!("{} |= {f}: {} / {}", am.carrier().name(s), eval_neighborhood(&z, s, &f)?, eval_neighborhood(&alpha, s, &f)?);
    }
    // The alpha model does not z-represent: the first differing cell.
    let m = first_mismatch(&alpha, &am, false)?.expect("closure adds sets");
    println!("{}", m.describe(am.agents(), am.carrier()));
    Ok(())
}
