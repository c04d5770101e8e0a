#![no_main]

use libfuzzer_sys::fuzz_target;
use thinsheet_cli::grid::parse_grid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(grid) = parse_grid(text) {
        let points = grid.points();
        assert_eq!(points.len(), grid.len());
        assert!(points.iter().all(|x| x.is_finite()));
        let again = parse_grid(&grid.to_string()).expect("display form reparses");
        assert_eq!(again.points().len(), points.len());
    }
});
