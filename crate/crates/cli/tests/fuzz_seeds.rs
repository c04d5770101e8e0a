//! Replays the checked-in fuzz corpus through the parsers, with the same
//! assertions the fuzz targets make.

use std::fs;
use std::path::PathBuf;

use thinsheet_cli::config::decode_config;
use thinsheet_cli::grid::parse_grid;
use thinsheet_cli::material::parse_material;
use thinsheet_cli::table::read_table;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn grid_seeds() {
    let mut accepted = 0;
    for (name, text) in seeds("grid") {
        if let Ok(grid) = parse_grid(&text) {
            accepted += 1;
            let points = grid.points();
            assert_eq!(points.len(), grid.len(), "{name}");
            assert!(points.iter().all(|x| x.is_finite()), "{name}");
            let again = parse_grid(&grid.to_string()).unwrap();
            assert_eq!(again.points(), points, "{name}");
        }
    }
    assert!(accepted >= 4);
}

#[test]
fn material_seeds() {
    for (name, text) in seeds("material") {
        if let Ok(mat) = parse_material(&text) {
            assert!(
                mat.mass() > 0.0 && mat.light_speed() > 0.0 && mat.areal_density() > 0.0,
                "{name}"
            );
            assert!(mat.charge().is_finite() && mat.oscillator_frequency() >= 0.0, "{name}");
        }
    }
}

#[test]
fn config_seeds() {
    for (name, text) in seeds("config") {
        let result = decode_config(&text);
        let invalid = name == "unknown_key" || name == "bad_grid";
        assert_eq!(result.is_err(), invalid, "{name}: {result:?}");
    }
}

#[test]
fn table_seeds() {
    for (name, text) in seeds("table") {
        match read_table(&text) {
            Ok(table) => assert!(table.rows.iter().all(|row| row.len() == table.columns.len()), "{name}"),
            Err(_) => assert!(name == "ragged" || name == "no_header", "{name}"),
        }
    }
}
