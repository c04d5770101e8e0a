#![no_main]

use libfuzzer_sys::fuzz_target;
use thinsheet_cli::table::read_table;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = read_table(text) {
        assert!(table.rows.iter().all(|row| row.len() == table.columns.len()));
    }
});
