mod common;

use etale_core::ledger::{values, FROZEN};

#[test]
fn oracle_library_and_frozen_table_agree() {
    let oracle = common::oracle::values();
    let mut bad = Vec::new();
    for ((key, got), (_, want)) in values().into_iter().zip(FROZEN) {
        let o = oracle.get(key).cloned().unwrap_or_else(|| "missing".into());
        if got != *want || o != *want {
            bad.push(format!("{key}: library {got:?}, oracle {o:?}, frozen {want:?}"));
        }
    }
    assert_eq!(oracle.len(), FROZEN.len(), "oracle covers every key");
    assert!(bad.is_empty(), "\n{}", bad.join("\n"));
}
