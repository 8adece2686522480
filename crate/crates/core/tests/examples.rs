//! Every cargo example runs to completion.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            #![allow(dead_code)]
            include!(concat!("../examples/", stringify!($name), ".rs"));
            pub fn run_example() -> attention_urn::Result<()> {
                main()
            }
        }
    };
}

example!(thresholds);
example!(limit_analysis);
example!(simulate);
example!(comparative_statics);
example!(sweep);
example!(kappa_regimes);
example!(limit_distribution);
example!(shock);
example!(nonconvergence);
example!(phase_diagram);

#[test]
fn examples_run() {
    thresholds::run_example().unwrap();
    limit_analysis::run_example().unwrap();
    simulate::run_example().unwrap();
    comparative_statics::run_example().unwrap();
    sweep::run_example().unwrap();
    kappa_regimes::run_example().unwrap();
    limit_distribution::run_example().unwrap();
    shock::run_example().unwrap();
    nonconvergence::run_example().unwrap();
}

#[test]
fn phase_diagram_writes_both_files() {
    let dir = tempfile::tempdir().unwrap();
    phase_diagram::write_to(dir.path()).unwrap();
    assert!(dir.path().join("phase.svg").exists());
    assert!(dir.path().join("atlas.svg").exists());
}
