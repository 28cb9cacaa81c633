mod common;

use chomp_core::engine::{mex, Engine};
use chomp_core::oracle::oracle_grundy;
use chomp_core::{grundy, EngineConfig, SimplicialComplex, TranspositionTable};
use common::*;
use proptest::prelude::*;

const STATES: usize = 2_000_000;

fn configs() -> Vec<EngineConfig> {
    (0..8)
        .map(|bits| EngineConfig {
            use_reduction: bits & 1 != 0,
            use_closed_forms: bits & 2 != 0,
            use_decomposition: bits & 4 != 0,
            ..EngineConfig::default()
        })
        .collect()
}

fn value(c: &SimplicialComplex) -> u32 {
    let cfg = EngineConfig::default();
    let t = TranspositionTable::new();
    Engine::new(&cfg, &t).value(c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn engine_equals_oracle_on_graphs(c in arb_graph(7)) {
        let expected = oracle_grundy(&c, STATES).unwrap();
        for cfg in configs() {
            let t = TranspositionTable::new();
            prop_assert_eq!(grundy(&c, &cfg, &t).unwrap().value, expected, "{:?}", cfg);
        }
    }

    #[test]
    fn engine_equals_oracle_on_complexes(c in arb_complex(6)) {
        let expected = oracle_grundy(&c, STATES).unwrap();
        for cfg in configs() {
            let t = TranspositionTable::new();
            prop_assert_eq!(grundy(&c, &cfg, &t).unwrap().value, expected);
        }
    }

    #[test]
    fn value_is_mex_of_children(c in arb_complex(5)) {
        let children = c.moves().iter().map(|&s| value(&c.remove_face(s).unwrap()));
        prop_assert_eq!(value(&c), mex(children));
    }

    #[test]
    fn disjoint_union_is_nim_sum(a in arb_graph(5), b in arb_complex(4)) {
        let u = a.disjoint_union(&b).unwrap();
        prop_assert_eq!(value(&u), value(&a) ^ value(&b));
    }

    #[test]
    fn witnesses_are_sound(c in arb_graph(7)) {
        let cfg = EngineConfig::default();
        let t = TranspositionTable::new();
        let rec = grundy(&c, &cfg, &t).unwrap();
        for k in 0..rec.value {
            prop_assert!(rec.witness_moves.contains_key(&k));
        }
        for (&k, &s) in &rec.witness_moves {
            prop_assert!(k <= rec.value + 1);
            prop_assert_eq!(oracle_grundy(&c.remove_face(s).unwrap(), STATES).unwrap(), k);
        }
    }

    #[test]
    fn warm_table_repeats_records(c in arb_complex(6)) {
        let cfg = EngineConfig::default();
        let t = TranspositionTable::new();
        let a = grundy(&c, &cfg, &t).unwrap();
        let b = grundy(&c, &cfg, &t).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert_eq!(a.witness_moves, b.witness_moves);
        prop_assert_eq!(a.position_key, b.position_key);
    }

    #[test]
    fn shared_table_across_configs_stays_consistent(c in arb_graph(6)) {
        // a table conflict would surface as an error
        let t = TranspositionTable::new();
        for cfg in configs() {
            grundy(&c, &cfg, &t).unwrap();
        }
    }
}

#[test]
fn table_persists_and_reloads() {
    let cfg = EngineConfig::default();
    let t = TranspositionTable::new();
    let c = "erdos_renyi:n=7,p=0.5,seed=2".parse::<chomp_core::FamilySpec>().unwrap().generate().unwrap();
    let v = grundy(&c, &cfg, &t).unwrap().value;
    let dir = std::env::temp_dir().join(format!("chomp-table-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cache.json");
    t.save(&path).unwrap();
    let back = TranspositionTable::load(&path).unwrap();
    assert_eq!(back.len(), t.len());
    assert_eq!(grundy(&c, &cfg, &back).unwrap().value, v);
    std::fs::remove_dir_all(dir).unwrap();
}
