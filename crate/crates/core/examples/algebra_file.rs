//! Reads and writes JSON algebra files; malformed input is rejected.

use tghyper::algebra_file::{parse_algebra_file, AlgebraFile, BracketEntry};
use tghyper::catalog::lookup_spec;

fn main() -> tghyper::Result<()> {
    let m = lookup_spec("nonhomo")?.algebra.unwrap();
    let mut file = AlgebraFile::from_algebra(&m);
    file.basis = ["Z", "X1", "X2", "Y"].map(String::from).to_vec();
    let text = file.to_json();
    println!("{text}");

    let back = parse_algebra_file(&text)?;
    println!("round trip equal: {}", back.algebra() == m.algebra());

    // Any derivation ad_Z gives a Lie algebra; adding [X1, X2] = Z does not.
    file.brackets[0].coeffs[1] += 0.5;
    println!("ad_Z perturbed: {}", verdict(&file));
    file.brackets.push(BracketEntry {
        i: 1,
        j: 2,
        coeffs: vec![1.0, 0.0, 0.0, 0.0],
    });
    println!("[X1, X2] = Z added: {}", verdict(&file));
    Ok(())
}

fn verdict(file: &AlgebraFile) -> String {
    match parse_algebra_file(&file.to_json()) {
        Ok(_) => "accepted".into(),
        Err(e) => format!("rejected ({e})"),
    }
}
