//! CSV and JSON writers. Numbers are written with 17 significant digits so
//! files round-trip bit for bit.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::order::StateVector;
use crate::simplex::{RadialSurface, SweepRow};

/// Shortest form is not stable across formatters; `{:.16e}` is.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn header(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}_{i}"))
}

/// One row per node: `d_1..d_n, r, x_1..x_n`.
pub fn write_surface_csv<W: Write>(surface: &RadialSurface, out: W) -> Result<()> {
    let n = surface.dim();
    let mut w = csv::Writer::from_writer(out);
    let mut head: Vec<String> = header("d", n).collect();
    head.push("r".into());
    head.extend(header("x", n));
    w.write_record(&head)?;
    let grid = surface.grid();
    for (k, r) in surface.radii().iter().enumerate() {
        let d = grid.direction(k);
        let mut row: Vec<String> = d.iter().map(|v| fmt_num(*v)).collect();
        row.push(fmt_num(*r));
        row.extend(d.iter().map(|v| fmt_num(v * r)));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Header `x_1..x_n`, one point per row.
pub fn write_points_csv<W: Write>(points: &[StateVector], n: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header("x", n))?;
    for p in points {
        w.write_record(p.iter().map(|v| fmt_num(*v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Header `label, <prefix>_1..<prefix>_n`; `labels` supplies the first column.
pub fn write_series_csv<W: Write>(
    label: &str,
    prefix: &str,
    labels: &[String],
    states: &[StateVector],
    out: W,
) -> Result<()> {
    let n = states.first().map_or(0, |s| s.dim());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(std::iter::once(label.to_string()).chain(header(prefix, n)))?;
    for (l, s) in labels.iter().zip(states) {
        w.write_record(std::iter::once(l.clone()).chain(s.iter().map(|v| fmt_num(*v))))?;
    }
    w.flush()?;
    Ok(())
}

/// `b, class, attractor points…`; rows have varying length.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    w.write_record(["b", "class", "attractor_points"])?;
    for row in rows {
        let mut rec = vec![fmt_num(row.b), row.class.to_string()];
        rec.extend(row.points.iter().map(|v| fmt_num(*v)));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn write_json<W: Write, T: Serialize + ?Sized>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::SimplexGrid;

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, 0.7310585786300049, 1e-300, 0.0] {
            assert_eq!(fmt_num(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn surface_csv_layout() {
        let g = SimplexGrid::new(2, 2).unwrap();
        let s = RadialSurface::from_radii(g, vec![0.4, 0.6, 0.5], 1e-10).unwrap();
        let mut buf = Vec::new();
        write_surface_csv(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "d_1,d_2,r,x_1,x_2");
        assert_eq!(lines.len(), 4);
        let row: Vec<f64> = lines[2].split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(row, vec![0.5, 0.5, 0.6, 0.3, 0.3]);
    }
}
