//! Bundled golden outputs for regression checks: the class catalogs for
//! word lengths 3..=6 in the structured format, and the minimal-length
//! tables at each search cap. The m=5 and m=6 catalogs were frozen from the
//! first verified run; `tables --reproduce` and the regression suite diff
//! fresh runs against these bytes.

pub const M3_CATALOG: &str = include_str!("../goldens/m3.catalog.json");
pub const M4_CATALOG: &str = include_str!("../goldens/m4.catalog.json");
pub const M5_CATALOG: &str = include_str!("../goldens/m5.catalog.json");
pub const M6_CATALOG: &str = include_str!("../goldens/m6.catalog.json");

pub const MIN_LENGTH_TABLE_CAP4: &str = include_str!("../goldens/minlen_cap4.txt");
pub const MIN_LENGTH_TABLE_CAP5: &str = include_str!("../goldens/minlen_cap5.txt");
pub const MIN_LENGTH_TABLE_CAP6: &str = include_str!("../goldens/minlen_cap6.txt");

/// The bundled catalog for `m`, when one exists.
pub fn catalog_for(m: usize) -> Option<&'static str> {
    match m {
        3 => Some(M3_CATALOG),
        4 => Some(M4_CATALOG),
        5 => Some(M5_CATALOG),
        6 => Some(M6_CATALOG),
        _ => None,
    }
}

/// The bundled minimal-length table for a search cap, when one exists.
pub fn min_length_table_for(cap: usize) -> Option<&'static str> {
    match cap {
        4 => Some(MIN_LENGTH_TABLE_CAP4),
        5 => Some(MIN_LENGTH_TABLE_CAP5),
        6 => Some(MIN_LENGTH_TABLE_CAP6),
        _ => None,
    }
}
