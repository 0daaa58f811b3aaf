#![no_main]

use libfuzzer_sys::fuzz_target;
use minvar::minvar::{BarredMatrix, BarredMatrixSpec};
use minvar::poly::{PrimeField, TermOrder};
use minvar::verify::{build_set, SetSource};

// `--eqs` files go through this path before any Gröbner work.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let m = BarredMatrix::new(
        &BarredMatrixSpec::distinct(2, 2).unwrap(),
        PrimeField::default(),
        TermOrder::DegRevLex,
    );
    if let Ok(set) = build_set(&m, &SetSource::Text(text.to_string())) {
        assert!(!set.is_empty());
    }
});
