// Attention levels and sharing thresholds for one parameter set.

use attention_urn::attention::{attention_level, thresholds, value};
use attention_urn::{Evocativeness, ModelParams};

fn main() -> attention_urn::Result<()> {
    let p = ModelParams::from_tuple(20.0, 8.0, 0.9, 1.0, 1.0, 0.65, 0.55)?;
    println!("{:>5} {:>9} {:>9} {:>9} {:>9}", "y", "a(y,I)", "a(y,M)", "V(y,I)", "V(y,M)");
    for i in 0..=10 {
        let y = i as f64 / 10.0;
        let (i_, m) = (Evocativeness::Interesting, Evocativeness::Mild);
        println!(
            "{y:>5.2} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
            attention_level(y, i_, &p),
            attention_level(y, m, &p),
            value(y, i_, &p),
            value(y, m, &p)
        );
    }
    let th = thresholds(&p)?;
    println!("threshold_I = {:.6}, threshold_M = {:.6}", th.interesting, th.mild);
    println!("regions from low to high: {:?}", th.regions());
    Ok(())
}
