#![no_main]

use libfuzzer_sys::fuzz_target;
use minvar::poly::{parse_polynomial, PrimeField, Rationals, Ring, TermOrder};

// Accepted input must print canonically and reparse to the same polynomial.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let names = ["x1", "x2", "y0", "z1", "w"];
    let q = Ring::with_names(&names, Rationals, TermOrder::DegRevLex).unwrap();
    if let Ok(p) = parse_polynomial(text, &q) {
        assert_eq!(parse_polynomial(&p.to_string(), &q).unwrap(), p);
    }
    let fp = Ring::with_names(&names, PrimeField::default(), TermOrder::Lex).unwrap();
    if let Ok(p) = parse_polynomial(text, &fp) {
        assert_eq!(parse_polynomial(&p.to_string(), &fp).unwrap(), p);
    }
});
