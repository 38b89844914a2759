//! Renders the stability chamber fans of the rank-2 models as SVG files.

use hkcones::chambers::stability_chambers_rank2;
use hkcones::cli::fan_svg;
use hkcones::model::builtin;

fn main() {
    let dir = std::env::temp_dir();
    for name in ["hilb2-s1", "hilb2-s2", "hilb2-s3", "fano-cubic-scroll", "k3-two-curves"] {
        let m = builtin(name).unwrap();
        let chambers = stability_chambers_rank2(&m).unwrap();
        let svg = fan_svg(&m, &chambers);
        let path = dir.join(format!("{}.svg", name));
        std::fs::write(&path, &svg).unwrap();
        println!("{}: {} chambers -> {}", name, chambers.len(), path.display());
    }
}
