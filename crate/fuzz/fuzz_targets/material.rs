#![no_main]

use libfuzzer_sys::fuzz_target;
use thinsheet_cli::material::parse_material;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(mat) = parse_material(text) {
        assert!(mat.mass() > 0.0 && mat.light_speed() > 0.0 && mat.areal_density() > 0.0);
        assert!(mat.charge().is_finite() && mat.oscillator_frequency() >= 0.0);
    }
});
