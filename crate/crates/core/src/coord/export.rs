use std::io::Write;

use nalgebra::DVector;

use crate::error::Result;

use super::geodesic::csv_err;

/// CSV with columns `u1..um, residual`, one row per grid point.
pub fn write_residual_grid_csv<W: Write>(w: W, rows: &[(DVector<f64>, f64)]) -> Result<()> {
    let m = rows.first().map_or(0, |(u, _)| u.len());
    let mut out = csv::Writer::from_writer(w);
    let mut header: Vec<String> = (1..=m).map(|i| format!("u{i}")).collect();
    header.push("residual".into());
    out.write_record(&header).map_err(csv_err)?;
    for (u, r) in rows {
        let mut row: Vec<String> = u.iter().map(|c| c.to_string()).collect();
        row.push(r.to_string());
        out.write_record(&row).map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_rows() {
        let rows = vec![(DVector::from_vec(vec![0.5, -1.0]), 1e-12)];
        let mut buf = Vec::new();
        write_residual_grid_csv(&mut buf, &rows).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "u1,u2,residual\n0.5,-1,0.000000000001\n"
        );
    }
}
