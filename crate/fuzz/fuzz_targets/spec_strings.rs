#![no_main]

use libfuzzer_sys::fuzz_target;
use minvar::minvar::{BarredMatrixSpec, Identification};
use minvar::poly::{CoefficientField, TermOrder};
use minvar::verify::Method;

// Flag values: parse, and where they parse, print back to themselves.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = text.parse::<CoefficientField>() {
        assert_eq!(f.to_string().parse::<CoefficientField>().unwrap(), f);
    }
    if let Ok(o) = text.parse::<TermOrder>() {
        assert_eq!(o.name().parse::<TermOrder>().unwrap(), o);
    }
    if let Ok(m) = text.parse::<Method>() {
        assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
    }
    if let Ok(i) = text.parse::<Identification>() {
        assert_eq!(i.to_string().parse::<Identification>().unwrap(), i);
        for (s, t) in [(2, 3), (3, 4)] {
            let _ = BarredMatrixSpec::new(s, t, i.clone());
        }
    }
});
