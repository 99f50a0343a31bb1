use hardy_core::verify::{orthonormality, run_all, VerifyConfig};
use hardy_core::Grid;

#[test]
fn default_configuration_passes_everything() {
    let results = run_all(&VerifyConfig::default());
    assert_eq!(results.len(), 12);
    let ids: Vec<u32> = results.iter().map(|c| c.id).collect();
    assert_eq!(ids, (0..12).collect::<Vec<_>>());
    for c in &results {
        assert!(c.pass, "{} failed: {}", c.name, c.detail);
        assert!(c.measured.is_finite());
    }
}

#[test]
fn narrow_grid_breaks_orthonormality() {
    let cfg = VerifyConfig { grid: Grid::new(4.0, 4096).unwrap(), ..VerifyConfig::default() };
    let c = orthonormality(&cfg);
    assert!(!c.pass);
    assert!(c.detail.contains("band limit"), "{}", c.detail);
}

#[test]
fn criteria_serialize() {
    let c = orthonormality(&VerifyConfig { kmax: 8, ..VerifyConfig::default() });
    let v = serde_json::to_value(&c).unwrap();
    for key in ["id", "name", "pass", "measured", "threshold", "detail"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}
