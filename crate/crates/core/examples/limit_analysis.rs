// Stable and unstable steady states of the limit dynamics for the bundled
// presets.

use attention_urn::limit::analyze;
use attention_urn::presets;

fn main() -> attention_urn::Result<()> {
    let named = [
        ("flip N/I", presets::FLIP_NI),
        ("flip M/S", presets::FLIP_MS),
        ("bistable, mild", presets::BISTABLE_MILD),
        ("bistable, interesting", presets::BISTABLE_INTERESTING),
        ("three limits", presets::THREE_LIMITS),
        ("no sharing", presets::NO_SHARING),
    ];
    for (name, set) in named {
        let a = analyze(&presets::params(set))?;
        println!("{name}: configuration #{} {}", a.configuration.ordinal(), a.configuration.label());
        for s in &a.stable_set {
            println!("  stable   {:<12} y = {:.4}  behavior {:?}", s.landmark.to_string(), s.location, a.limit_behavior(s.landmark));
        }
        for s in &a.unstable_set {
            println!("  unstable {:<12} y = {:.4}", s.landmark.to_string(), s.location);
        }
    }
    Ok(())
}
