//! Arrangements and tables shipped in the repository's `data/` directory.

use crate::arrangement::Arrangement;
use crate::error::Result;
use crate::io::{parse_table_csv, ArrangementFile, MapFile, PointsFile};
use std::collections::BTreeMap;

pub const HESSE12: &str = include_str!("../../../data/hesse12.json");
pub const H57: &str = include_str!("../../../data/h57.json");
pub const C8: &str = include_str!("../../../data/c8.json");
pub const O33: &str = include_str!("../../../data/o33.json");
pub const CL: &str = include_str!("../../../data/cl.json");
pub const CL_BASE_POINTS: &str = include_str!("../../../data/cl_base_points.json");
pub const CL_MAP: &str = include_str!("../../../data/cl_map.json");
pub const CL_MONOF3: &str = include_str!("../../../data/cl_monof3.csv");
pub const GENERIC5: &str = include_str!("../../../data/generic5.json");
pub const MANIFEST: &str = include_str!("../../../data/manifest.json");

/// Every shipped data file by name, for manifest checks.
pub const ALL: [(&str, &str); 9] = [
    ("c8.json", C8),
    ("cl.json", CL),
    ("cl_base_points.json", CL_BASE_POINTS),
    ("cl_map.json", CL_MAP),
    ("cl_monof3.csv", CL_MONOF3),
    ("generic5.json", GENERIC5),
    ("h57.json", H57),
    ("hesse12.json", HESSE12),
    ("o33.json", O33),
];

fn arrangement(text: &str) -> Result<Arrangement> {
    ArrangementFile::parse(text)?.to_arrangement()
}

pub fn hesse12() -> Result<Arrangement> {
    arrangement(HESSE12)
}

pub fn h57() -> Result<Arrangement> {
    arrangement(H57)
}

pub fn c8() -> Result<Arrangement> {
    arrangement(C8)
}

pub fn o33() -> Result<Arrangement> {
    arrangement(O33)
}

pub fn generic5() -> Result<Arrangement> {
    arrangement(GENERIC5)
}

pub fn cl() -> Result<ArrangementFile> {
    ArrangementFile::parse(CL)
}

pub fn cl_base_points() -> Result<PointsFile> {
    PointsFile::parse(CL_BASE_POINTS)
}

pub fn cl_map() -> Result<MapFile> {
    MapFile::parse(CL_MAP)
}

pub fn cl_monof3() -> Result<BTreeMap<usize, i64>> {
    parse_table_csv(CL_MONOF3)
}
