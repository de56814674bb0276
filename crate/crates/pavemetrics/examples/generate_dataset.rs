//! Writes a synthetic sections/observations pair for trying out the CLI.
//!
//! ```bash
//! cargo run -p pavemetrics --example generate_dataset -- data 400 42
//! ```

use pavemetrics::dataio::{write_observations, write_sections};
use pavemetrics::synth::{generate, SynthConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let dir = args.next().unwrap_or_else(|| {
        eprintln!("usage: generate_dataset OUT_DIR [ROWS [SEED]]");
        std::process::exit(1);
    });
    let rows: usize = args.next().map(|v| v.parse().expect("ROWS")).unwrap_or(400);
    let seed: u64 = args.next().map(|v| v.parse().expect("SEED")).unwrap_or(42);

    let cfg = SynthConfig {
        n_observations: rows,
        seed,
        ..Default::default()
    };
    let (sections, observations) = generate(&cfg);

    let dir = std::path::Path::new(&dir);
    std::fs::create_dir_all(dir).expect("create output dir");
    let spath = dir.join("sections.csv");
    let opath = dir.join("observations.csv");
    write_sections(&spath, &sections).expect("write sections");
    write_observations(&opath, &observations).expect("write observations");
    println!(
        "wrote {} sections to {} and {} observations to {}",
        sections.len(),
        spath.display(),
        observations.len(),
        opath.display()
    );
}
