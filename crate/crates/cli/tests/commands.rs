use quadspace_fq::Budget;
use strata_lab::commands::{correspondence, mapping_is_isomorphism, quad_table};
use strata_lab::{run, Cache, Command, RunConfig};

#[test]
fn quad_table_rejects_even_p() {
    assert!(quad_table(2, &Budget::default()).is_err());
}

#[test]
fn corrupted_mapping_is_rejected() {
    let c = correspondence(3, 1, &Budget::default()).unwrap();
    let mut m = c.mapping.clone().unwrap();
    assert!(mapping_is_isomorphism(&c.building.graph, &c.vrt.graph, &m));
    let (i, j) = (1..m.len()).flat_map(|i| (i + 1..m.len()).map(move |j| (i, j))).find(|&(i, j)| {
        c.building.graph.types[i] == c.building.graph.types[j] && c.building.distance[i] == c.building.distance[j]
    }).unwrap();
    m.swap(i, j);
    assert!(!mapping_is_isomorphism(&c.building.graph, &c.vrt.graph, &m));
}

#[test]
fn cache_keys_follow_the_config() {
    let a = RunConfig::new(Command::StrataFermat);
    let mut b = a.clone();
    b.k = 2;
    assert_ne!(a.cache_key(), b.cache_key());
    let mut c = a.clone();
    c.cache_dir = Some("/elsewhere".into());
    assert_eq!(a.cache_key(), c.cache_key());
    assert_ne!(RunConfig::new(Command::StrataKlingen).cache_key(), a.cache_key());
}

#[test]
fn stale_cache_entries_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::new(Command::StrataFermat);
    cfg.cache_dir = Some(dir.path().to_path_buf());
    let cold = run(&cfg).unwrap();
    assert!(!cold.cached);
    let warm = run(&cfg).unwrap();
    assert!(warm.cached);
    assert_eq!(warm.doc, cold.doc);
    let cache = Cache::new(dir.path());
    std::fs::write(cache.path(&cfg), "{\"config\": {}, \"ok\": true}").unwrap();
    let again = run(&cfg).unwrap();
    assert!(!again.cached);
    assert_eq!(again.doc, cold.doc);
}
