//! Evaluating formulas on an action model and reading off its effectivity.

use coalition::action_semantics::{actual_effectivity, alpha_effectivity, eval_action, truth_set_action};
use coalition::fixtures;
use coalition::formula::parse;
use coalition::gam::to_action_model;

fn main() -> coalition::Result<()> {
    let am = to_action_model(&fixtures::m1());
    let carrier = am.carrier();
    for text in ["[AG]p", "[{a}]p", "[{a}](p | q)", "[{}](p | q)", "[{a,b}]q & ~[{a}]q"] {
        let f = parse(text)?;
        println!("{text:<20} true at {}", carrier.display(&truth_set_action(&am, &f)?));
    }
    println!("s0 |= [{{a}}]p ? {}", eval_action(&am, 0, &parse("[{a}]p")?)?);

    let ae = actual_effectivity(&am);
    let le = alpha_effectivity(&am)?;
    for c in am.agents().coalitions() {
        println!(
            "{{{}}} at s0: AE {}  LE has {} sets",
            am.agents().coalition_key(c),
            carrier.display_family(ae.get(c, 0)),
            le.get(c, 0).len()
        );
    }
    Ok(())
}
