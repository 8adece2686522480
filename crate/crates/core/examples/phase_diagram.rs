// Phase diagram for one parameter set and the atlas of all 40
// configurations. Pass an output directory, or files go to the temp dir.

use std::path::{Path, PathBuf};

use attention_urn::limit::analyze;
use attention_urn::phase::{atlas_svg, phase_svg};
use attention_urn::presets;

fn main() -> attention_urn::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    write_to(&dir)
}

pub fn write_to(dir: &Path) -> attention_urn::Result<()> {
    std::fs::create_dir_all(dir)?;
    let a = analyze(&presets::params(presets::THREE_LIMITS))?;
    std::fs::write(dir.join("phase.svg"), phase_svg(&a))?;
    std::fs::write(dir.join("atlas.svg"), atlas_svg())?;
    println!("wrote phase.svg and atlas.svg to {}", dir.display());
    Ok(())
}
