//! Writes error-probability curves for the standard comparisons as CSV files
//! through the command-line front end, one file per panel.
//!
//! Run with `cargo run --example comparison_curves -- <output-dir>`.

use std::path::PathBuf;

use pauli_discrimination::cli;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "curves".into()));
    std::fs::create_dir_all(&dir).expect("create output directory");
    let panels = [
        ("same_axis_0.25", "0,0,1", "0,0,0.25", "4"),
        ("same_axis_0.5", "0,0,1", "0,0,0.5", "4"),
        ("same_axis_4", "0,0,1", "0,0,4", "4"),
        ("coplanar", "1,1,0", "0.2,0.2,0", "4"),
        ("depolarising", "1,1,1", "0.2,0.2,0.2", "4"),
        ("depol_vs_dephasing_10", "1,1,1", "0,0,10", "3"),
        ("depol_vs_dephasing_0.5", "1,1,1", "0,0,0.5", "3"),
        ("depol_vs_dephasing_0.3785", "1,1,1", "0,0,0.3785", "3"),
        ("depol_vs_dephasing_0.2", "1,1,1", "0,0,0.2", "3"),
    ];
    for (name, r1, r2, t_max) in panels {
        let path = dir.join(format!("{name}.csv"));
        let args = [
            "pauli-discrim",
            "curve",
            "--rates1",
            r1,
            "--rates2",
            r2,
            "--t-max",
            t_max,
            "--spacing",
            "linear",
            "--points",
            "300",
            "--out",
            path.to_str().expect("utf-8 path"),
        ];
        let code = cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
        assert_eq!(code, 0, "curve failed for {name}");
        println!("wrote {}", path.display());
    }
}
