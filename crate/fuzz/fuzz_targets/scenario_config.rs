//! Fuzzes the flat key-value scenario parser. Arbitrary text must either be
//! rejected with a configuration error or produce a scenario whose fields
//! satisfy the documented bounds.

#![no_main]

use libfuzzer_sys::fuzz_target;
use mulcount::config::ScenarioConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = ScenarioConfig::parse(text) {
        assert!(!cfg.instances.is_empty());
        assert!(cfg.instances.iter().all(|i| i.n >= 16));
        assert!(cfg.w >= 1);
    }
});
