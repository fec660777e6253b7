use std::collections::BTreeMap;

use proptest::prelude::*;
use provkernel::fixtures::{mimic_fixture, random_family, RandomShape};
use provkernel::mlpipe::{balance_undersample, mannwhitney_u};
use provkernel::model::{load_dataset, load_internal, save_dataset_dir, save_internal};
use provkernel::pgsim::{generate_dataset, SimMode, SimParams, Team};
use provkernel::{Dataset, Exec, NodeLabel};

fn labelled(seed: u64, n: usize) -> Dataset {
    let fam = random_family(seed, n, RandomShape::default());
    let labels = (0..n).map(|i| ["x", "y", "z"][i % 3].to_string()).collect();
    Dataset::new(fam.into_graphs(), labels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jsonl_round_trip(seed in any::<u64>(), n in 1usize..8) {
        let ds = labelled(seed, n);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        save_internal(&ds, &path).unwrap();
        let back = load_internal(&path).unwrap();
        prop_assert_eq!(back.graphs(), ds.graphs());
        prop_assert_eq!(back.labels(), ds.labels());
    }
}

#[test]
fn dataset_directory_round_trip() {
    let ds = labelled(3, 9);
    let dir = tempfile::tempdir().unwrap();
    save_dataset_dir(&ds, dir.path()).unwrap();
    let back = load_dataset(dir.path()).unwrap();
    assert_eq!(back.graphs(), ds.graphs());
    assert_eq!(back.labels(), ds.labels());
}

#[test]
fn missing_input_is_an_error() {
    assert!(load_dataset(std::path::Path::new("/nonexistent/provkernel")).is_err());
}

fn small(mode: SimMode, seed: u64) -> SimParams {
    SimParams { n_players: 9, n_pokemons: 30, max_ticks: 80, max_storage: 3, ..SimParams::new(mode, seed) }
}

fn app_labels(ds: &Dataset) -> BTreeMap<String, usize> {
    let mut seen = BTreeMap::new();
    for g in ds.graphs() {
        for n in g.nodes() {
            for l in n.labels.iter().filter(|l| !l.is_generic()) {
                *seen.entry(l.to_string()).or_insert(0) += 1;
            }
        }
    }
    seen
}

#[test]
fn simulations_are_reproducible_and_balanced() {
    for mode in [SimMode::Targeting, SimMode::Disposal] {
        let a = generate_dataset(&small(mode, 5), 3, Exec::Parallel).unwrap();
        let b = generate_dataset(&small(mode, 5), 3, Exec::Sequential).unwrap();
        assert_eq!(a.graphs(), b.graphs());
        assert_eq!(a.len(), 27);
        assert!(a.class_counts().values().all(|&c| c == 9));
        let c = generate_dataset(&small(mode, 6), 3, Exec::Parallel).unwrap();
        assert_ne!(a.graphs(), c.graphs());
    }
}

#[test]
fn disposal_only_happens_outside_valor_in_disposal_mode() {
    let disposing = NodeLabel::app("pg:Disposing").unwrap();
    let has = |ds: &Dataset, team: &str| {
        ds.graphs()
            .iter()
            .zip(ds.labels())
            .filter(|(_, l)| l.as_str() == team)
            .any(|(g, _)| g.nodes().iter().any(|n| n.labels.contains(&disposing)))
    };
    let t = generate_dataset(&small(SimMode::Targeting, 1), 4, Exec::Parallel).unwrap();
    let d = generate_dataset(&small(SimMode::Disposal, 1), 4, Exec::Parallel).unwrap();
    for team in Team::ALL {
        assert!(!has(&t, team.as_str()));
    }
    assert!(!has(&d, Team::Valor.as_str()));
    assert!(has(&d, Team::Mystic.as_str()) && has(&d, Team::Instinct.as_str()));
    assert!(app_labels(&t).len() <= 7);
    assert_eq!(app_labels(&d).len(), 8);
}

#[test]
fn balancing_equalises_classes() {
    let mut graphs = labelled(1, 10).graphs().to_vec();
    graphs.push(mimic_fixture());
    let labels: Vec<String> = (0..11).map(|i| if i < 8 { "big" } else { "small" }.to_string()).collect();
    let ds = Dataset::new(graphs, labels).unwrap();
    let bal = balance_undersample(&ds, 2).unwrap();
    assert!(bal.class_counts().values().all(|&c| c == 3));
    assert_eq!(bal.graphs(), balance_undersample(&ds, 2).unwrap().graphs());
}

#[test]
fn rank_sum_basics() {
    let same = mannwhitney_u(&[0.5; 10], &[0.5; 10]).unwrap();
    assert_eq!(same.p, 1.0);
    let apart = mannwhitney_u(&[0.9; 12], &[0.1; 12]).unwrap();
    assert!(apart.p < 1e-4);
    assert!(mannwhitney_u(&[], &[1.0]).is_err());
}
