//! Runs the full acceptance suite, one line per criterion. Built without the
//! libtest harness so the lines are printed on success too.

use std::process::ExitCode;

use symgame::acceptance::{run_all, CRITERIA};
use symgame::exec::Exec;

fn main() -> ExitCode {
    let reports = run_all(Exec::default(), |r| println!("{}", r.line()));
    assert_eq!(reports.len(), CRITERIA.len());
    let failed: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| format!("criterion {} ({})", r.id, r.name)).collect();
    println!("{} of {} criteria passed", reports.len() - failed.len(), reports.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failing: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
