#![no_main]

use libfuzzer_sys::fuzz_target;
use minvar::verify::VerificationCertificate;

// Whatever validates must survive a serialization round trip.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cert) = VerificationCertificate::from_json(text) {
        let again = VerificationCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(again, cert);
    }
});
