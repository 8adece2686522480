// An early injection of false stories moves the limit on a small platform
// and barely matters on a large one.

use attention_urn::dynamics::Shock;
use attention_urn::montecarlo::shock_effect;
use attention_urn::{presets, PlatformState};

fn main() -> attention_urn::Result<()> {
    let p = presets::params(presets::THREE_LIMITS);
    let shock = Shock { at_step: 50, true_stories: 0.0, false_stories: 200.0 };
    for total in [10.0, 1e5] {
        let e = shock_effect(&p, PlatformState::from_share(0.45, total)?, shock, 100, 10_000, 3)?;
        println!("initial size {total:>8}: total variation shift {:.3}", e.shift);
    }
    Ok(())
}
