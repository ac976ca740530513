#![no_main]

use fdalg_cli::analysis::{verify_analysis, verify_factorization, AnalysisFile, FactorizationFile};
use libfuzzer_sys::fuzz_target;

// Analysis and factorization files share this target; the header decides.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = AnalysisFile::parse(s) {
        let _ = verify_analysis(f);
    }
    if let Ok(f) = FactorizationFile::parse(s) {
        let _ = verify_factorization(f);
    }
});
