mod common;

use std::sync::Arc;

use etalab_core::charops::{decompose_product, eta, induce, lin};
use etalab_core::chartab::{
    admissible_primes, character_table, character_table_with_prime, CharTable, TableCache,
};
use etalab_core::clifford::{
    all_chains, build_chain, classify_chain, stabilizer, ChainContext, StepCase,
};
use etalab_core::constructions::{
    cyclic, dihedral, extraspecial_exp_p, generalized_quaternion, modular, prop5_witness,
    quaternion, wreath_cp,
};
use etalab_core::perm::PermGroup;
use etalab_core::verify::catalog::default_entry;

fn table_of(name: &str) -> CharTable {
    character_table(&default_entry(name).unwrap().build().unwrap()).unwrap()
}

#[test]
fn induction_matches_definition() {
    for name in ["d8", "q8", "m16", "c4wrc2", "e27", "c3wrc3"] {
        let g = default_entry(name).unwrap().build().unwrap();
        for k in [1, g.order() / 3, g.order() - 1] {
            let h = g.subgroup(vec![g.element(k).clone()]).unwrap();
            for nu in character_table(&h).unwrap().iter() {
                let fast = induce(nu, &g).unwrap();
                assert_eq!(
                    fast.values(),
                    common::induce_elementwise(nu, &g).as_slice(),
                    "{name}"
                );
            }
        }
    }
}

#[test]
fn eta_matches_elementwise_sums() {
    for name in ["d8", "q8", "c2xc4", "m16", "e27"] {
        let t = table_of(name);
        for i in 0..t.len() {
            for j in 0..t.len() {
                assert_eq!(
                    eta(&t, i, j).unwrap(),
                    common::elementwise_eta(&t, i, j),
                    "{name} {i} {j}"
                );
            }
        }
    }
}

#[test]
fn tables_of_larger_families_are_valid() {
    for g in [
        generalized_quaternion(32).unwrap(),
        modular(32).unwrap(),
        dihedral(16).unwrap(),
        extraspecial_exp_p(5, 1).unwrap(),
    ] {
        let t = character_table(&g).unwrap();
        assert_eq!(common::degree_sum_of_squares(&t), g.order() as u64);
        common::rows_orthonormal(&t).unwrap();
        common::columns_orthogonal(&t).unwrap();
    }
}

#[test]
fn table_does_not_depend_on_the_prime() {
    let g = default_entry("c3wrc3").unwrap().build().unwrap();
    let primes: Vec<u64> = admissible_primes(g.order() as u64, g.exponent())
        .take(3)
        .collect();
    let base = character_table_with_prime(&g, primes[0]).unwrap();
    for &q in &primes[1..] {
        assert_eq!(
            base.irreducibles(),
            character_table_with_prime(&g, q).unwrap().irreducibles()
        );
    }
    assert!(character_table_with_prime(&g, 7).is_err());
}

#[test]
fn small_table_values() {
    let q8 = table_of("q8");
    assert_eq!(q8.degrees(), vec![1, 1, 1, 1, 2]);
    let d = decompose_product(&q8, 4, 4).unwrap();
    assert_eq!(d.eta, 4);
    assert!(d
        .constituents
        .iter()
        .all(|c| c.multiplicity == 1 && c.degree == 1));

    let e27 = table_of("e27");
    let mut degrees = e27.degrees();
    degrees.dedup();
    assert_eq!(degrees, vec![1, 3]);
    assert_eq!(e27.degrees().iter().filter(|&&d| d == 1).count(), 9);
    assert_eq!(lin(&e27).len(), 9);

    let c2 = character_table(&cyclic(2).unwrap()).unwrap();
    assert_eq!(c2[1].values()[1].as_i64(), Some(-1));
}

#[test]
fn witness_two_one_pattern() {
    let w = prop5_witness(2, 1).unwrap();
    assert_eq!(w.group.order(), 32);
    let t = character_table(&w.group).unwrap();
    let chi = t.index_of(&w.chi).unwrap();
    let d = decompose_product(&t, chi, t.conjugate_index(chi)).unwrap();
    assert_eq!(d.eta, 3);
    let mut degrees: Vec<u64> = d.constituents.iter().map(|c| c.degree).collect();
    degrees.sort();
    assert_eq!(degrees, vec![1, 1, 2]);
    assert!(d.constituents.iter().all(|c| c.multiplicity == 1));
}

#[test]
fn stabilizer_of_base_character_is_the_base() {
    for (a, p) in [(cyclic(4).unwrap(), 2), (cyclic(3).unwrap(), 3)] {
        let w = wreath_cp(&a, p).unwrap();
        let at = character_table(&a).unwrap();
        let alpha = at.iter().find(|c| !c.is_real()).unwrap();
        let one = &at[0];
        let mut factors = vec![one; p];
        factors[0] = alpha;
        let theta0 = w.base_character(&factors).unwrap();
        let st = stabilizer(&w.group, &theta0).unwrap();
        assert!(PermGroup::same_group(&st, &w.base));
    }
}

#[test]
fn orbit_stabilizer_on_chief_terms() {
    for name in ["d8", "q16", "c4wrc2", "e27"] {
        let g = default_entry(name).unwrap().build().unwrap();
        for n in g.chief_series().unwrap() {
            for nu in character_table(&n).unwrap().iter() {
                let st = stabilizer(&g, nu).unwrap();
                let orbit: std::collections::HashSet<Vec<String>> = g
                    .elements()
                    .iter()
                    .map(|x| {
                        etalab_core::clifford::conjugate_action(&g, nu, x)
                            .unwrap()
                            .values()
                            .iter()
                            .map(|v| v.to_string())
                            .collect()
                    })
                    .collect();
                assert_eq!(orbit.len() * st.order(), g.order(), "{name}");
            }
        }
    }
}

#[test]
fn ledger_examples() {
    let g: Arc<PermGroup> = dihedral(4).unwrap();
    let ctx = ChainContext::new(&g).unwrap();
    for chain in all_chains(&ctx, 4).unwrap() {
        let ledger = classify_chain(&ctx, &chain).unwrap();
        assert_eq!(ledger.final_m(), 2);
        for e in ledger.entries.iter().filter(|e| !e.stable) {
            assert!(matches!(e.case, StepCase::Extension | StepCase::Induction));
        }
    }

    let w = prop5_witness(2, 2).unwrap();
    let ctx = ChainContext::new(&w.group).unwrap();
    let top = ctx.top_table();
    for (i, chi) in top
        .iter()
        .enumerate()
        .filter(|(_, c)| c.degree() == Some(4))
    {
        let ledger = classify_chain(&ctx, &build_chain(&ctx, i).unwrap()).unwrap();
        let last = ledger.final_entry().unwrap();
        assert_eq!((last.m, last.s, last.r), (4, 2, 0), "{:?}", chi.degree());
    }
}

#[test]
fn quaternion_constructors_agree() {
    let q = quaternion().unwrap();
    let gq = generalized_quaternion(8).unwrap();
    assert_eq!(q.order(), gq.order());
    assert_eq!(q.classes().sizes(), gq.classes().sizes());
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let g = default_entry("c3wrc3").unwrap().build().unwrap();
    let first = cache.get_or_compute(&g).unwrap();
    assert!(cache.path_for(&g).exists());
    let second = cache.get_or_compute(&g).unwrap();
    assert_eq!(first.irreducibles(), second.irreducibles());
    std::fs::write(cache.path_for(&g), "{ not json").unwrap();
    let third = cache.get_or_compute(&g).unwrap();
    assert_eq!(first.irreducibles(), third.irreducibles());
}
