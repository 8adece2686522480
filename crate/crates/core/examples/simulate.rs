// One sample path under the optimal policy, written as CSV.

use attention_urn::dynamics::{simulate, Policy};
use attention_urn::limit::analyze;
use attention_urn::{presets, PlatformState};

fn main() -> attention_urn::Result<()> {
    let p = presets::params(presets::FLIP_NI);
    let a = analyze(&p)?;
    let traj = simulate(PlatformState::new(50.0, 50.0)?, &Policy::Optimal(a.thresholds), &p, 50_000, 7)?;
    let path = std::env::temp_dir().join("attention-urn-trajectory.csv.gz");
    traj.save_csv(&path, true)?;
    let end = traj.terminal();
    println!("terminal share {:.4} after {} stories", end.share(), end.total());
    println!("threshold_I   {:.4}", a.thresholds.interesting);
    println!("trajectory written to {}", path.display());
    Ok(())
}
