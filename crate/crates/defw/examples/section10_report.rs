//! The full codimension-one classification report: generators, vanishing
//! ranges, projector tables, the order-five type-(2,2) block with its
//! change-of-basis certificates, and the product structure.
//!
//! ```bash
//! cargo run --release --example section10_report
//! ```

use defw::report::{cmd_report_section10, OutputFormat, RunConfig};

fn main() {
    let cfg = RunConfig::default();
    let record = cmd_report_section10(&cfg).unwrap();
    print!("{}", record.render(OutputFormat::Markdown));
}
