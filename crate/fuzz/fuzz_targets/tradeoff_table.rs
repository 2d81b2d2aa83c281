//! Fuzzes the tradeoff-table wire format and the consistency audit that
//! runs after ingesting records over the built-in table.

#![no_main]

use libfuzzer_sys::fuzz_target;
use mulcount::config::parse_tradeoff_table;
use mulcount::shor::TradeoffTable;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(rows) = parse_tradeoff_table(text) else {
        return;
    };
    let mut table = TradeoffTable::builtin();
    for (kind, n, entry) in rows {
        table.insert(kind, n, entry);
    }
    // The audit may reject inconsistent records, but must not panic.
    let _ = table.audit();
});
