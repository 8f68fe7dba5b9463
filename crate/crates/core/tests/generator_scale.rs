use gsample::generators::{generate, GeneratorConfig, ModelParams};

#[test]
fn small_world_at_300k_has_exact_edge_count() {
    let cfg = GeneratorConfig::new(ModelParams::SmallWorld { ring_degree: 16, rewire: 0.1 }, 300_000, 1);
    let g = generate(&cfg).unwrap();
    assert_eq!(g.node_count(), 300_000);
    assert_eq!(g.edge_count(), 2_400_000);
}

#[test]
fn forest_fire_at_300k_lands_near_target_edges() {
    let target = 2_446_862.0;
    for seed in [1, 2] {
        let g = generate(&GeneratorConfig::new(ModelParams::forest_fire(), 300_000, seed)).unwrap();
        let m = g.edge_count() as f64;
        assert!((m - target).abs() <= 0.1 * target, "seed {seed}: {m} edges");
    }
}

#[test]
fn mixed_model_at_300k_matches_edges_per_node() {
    let g = generate(&GeneratorConfig::new(ModelParams::mixed_model(), 300_000, 1)).unwrap();
    let avg = 2.0 * g.edge_count() as f64 / g.node_count() as f64;
    // Each node brings 8 endpoints; duplicate draws are dropped.
    assert!(avg > 15.0 && avg <= 16.0, "{avg}");
}
