//! Front-end plumbing for the exact mutation calculus and the Lagrangian
//! lab: path parsing, SVG rendering, the verify suite, per-family numeric
//! checks, and CSV dumps. The binary in `main.rs` is a thin clap wrapper
//! over these functions so everything here is exercised directly by tests.

mod lag_checks;
mod pathspec;
mod render;
mod report;
mod verify;

pub use lag_checks::{
    check_family, moment_csv, sphere_scan, torus_surface, Family, LagParams, DEFECT_BAR,
};
pub use pathspec::parse_path;
pub use render::render_svg;
pub use report::{CheckLine, Report};
pub use verify::{dedup_distinctness, involution_trials, run_verify, ternary_suite, TernaryOutcome};
