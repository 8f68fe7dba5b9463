use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::aggregate::Tables;
use crate::distribution::Distribution;
use crate::error::{io_at, Result};

pub const RAW_CSV: &str = "raw.csv";
pub const ORIGINALS_CSV: &str = "originals.csv";
pub const JSD_RAW_CSV: &str = "jsd_raw.csv";
pub const POINT_STATS_CSV: &str = "point_stats.csv";
pub const RMSE_CSV: &str = "rmse.csv";
pub const JSD_CSV: &str = "jsd.csv";
pub const SUMMARY_CSV: &str = "summary.csv";
pub const META_JSON: &str = "meta.json";

pub fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let file = File::create(path).map_err(io_at(path))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(io_at(path))?;
    Ok(())
}

pub fn read_rows<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).map_err(io_at(path))?;
    let mut r = csv::Reader::from_reader(file);
    let rows = r.deserialize().collect::<std::result::Result<Vec<T>, _>>()?;
    Ok(rows)
}

pub fn write_tables(dir: &Path, tables: &Tables) -> Result<()> {
    write_rows(&dir.join(POINT_STATS_CSV), &tables.point_stats)?;
    write_rows(&dir.join(RMSE_CSV), &tables.rmse)?;
    write_rows(&dir.join(JSD_CSV), &tables.jsd)?;
    write_rows(&dir.join(SUMMARY_CSV), &tables.summary)?;
    Ok(())
}

pub fn write_distribution(path: &Path, dist: &Distribution<f64>) -> Result<()> {
    let file = File::create(path).map_err(io_at(path))?;
    dist.write_csv(BufWriter::new(file)).map_err(io_at(path))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path).map_err(io_at(path))?;
    serde_json::to_writer_pretty(BufWriter::new(file), value)?;
    Ok(())
}
