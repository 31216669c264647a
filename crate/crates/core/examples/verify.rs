//! Runs the self-verification ledger for one catalog entry, or all of them.
//!
//! cargo run --release --example verify -- nonhomo

use tghyper::verify::{verify_all, verify_entry, EntryLedger};
use tghyper::Tolerances;

fn print(e: &EntryLedger) {
    println!("{}: {}", e.entry, if e.pass { "pass" } else { "FAIL" });
    for c in e.checks.iter().filter(|c| !c.pass) {
        println!(
            "    {} = {:e} ({} {:?})",
            c.name, c.value, c.relation, c.bound
        );
    }
    if let Some(err) = &e.error {
        println!("    error: {err}");
    }
}

fn main() -> tghyper::Result<()> {
    let tol = Tolerances::default();
    match std::env::args().nth(1) {
        Some(name) => print(&verify_entry(&name, &tol)?),
        None => {
            let ledger = verify_all(&tol)?;
            ledger.entries.iter().for_each(print);
            println!("overall: {}", if ledger.pass { "pass" } else { "FAIL" });
        }
    }
    Ok(())
}
