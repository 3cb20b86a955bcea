use qgl_core::corpus::entries;
use qgl_core::pipeline::verify_pipeline;

#[test]
fn every_corpus_instance_passes_the_pipeline() {
    for entry in entries() {
        let m = entry.rational();
        for e in &entry.es {
            let report = verify_pipeline(m, e, &[2, 3, 5], 11);
            assert!(report.passed(), "{} e={}\n{}", entry.name, e, report);
        }
    }
}
