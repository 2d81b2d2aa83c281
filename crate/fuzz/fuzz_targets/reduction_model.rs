//! Fuzzes the reduction-model syntax (`lll`, `bkz:<block>`, `delta:<v>`, …).
//! Parsing must never panic, and an accepted model must survive a
//! Display → parse round trip and yield a finite, positive log₂γ (or the
//! perfect limit).

#![no_main]

use libfuzzer_sys::fuzz_target;
use mulcount::lattice::{Log2Gamma, ReductionModel};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(model) = text.parse::<ReductionModel>() else {
        return;
    };
    let back: ReductionModel = model
        .to_string()
        .parse()
        .expect("display output must re-parse");
    assert_eq!(model, back);
    match model.log2_gamma().expect("accepted model has a γ") {
        Log2Gamma::Finite(v) => assert!(v.is_finite() && v > 0.0),
        Log2Gamma::PerfectLimit => assert_eq!(model, ReductionModel::Perfect),
    }
});
