use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use etalab_core::charops::{conjugate_character, induce, inner_product, product, restrict};
use etalab_core::chartab::{character_table, CharTable};
use etalab_core::clifford::conjugate_action;
use etalab_core::cyclotomic::CycValue;
use etalab_core::perm::{PermGroup, Permutation};
use etalab_core::verify::catalog::default_entry;

fn perm_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn cyc_strategy() -> impl Strategy<Value = CycValue> {
    (
        prop::sample::select(vec![1u32, 2, 3, 4, 5, 8, 9, 12]),
        prop::collection::vec((0u32..24, -5i64..6), 0..6),
    )
        .prop_map(|(e, terms)| {
            CycValue::from_powers(e, terms.into_iter().map(|(k, c)| (k % e, BigInt::from(c))))
        })
}

fn small_groups() -> Vec<(Arc<PermGroup>, CharTable)> {
    ["d8", "q8", "c2xc4", "m16", "d16", "c4wrc2", "c3xc3", "e27"]
        .iter()
        .map(|n| {
            let g = default_entry(n).unwrap().build().unwrap();
            let t = character_table(&g).unwrap();
            (g, t)
        })
        .collect()
}

thread_local! {
    static GROUPS: Vec<(Arc<PermGroup>, CharTable)> = small_groups();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_a_group(gens in prop::collection::vec(perm_strategy(6), 1..3)) {
        let g = PermGroup::from_generators(6, gens.clone()).unwrap();
        let set: HashSet<&Permutation> = g.elements().iter().collect();
        prop_assert_eq!(set.len(), g.order());
        prop_assert_eq!(720 % g.order(), 0);
        for a in g.elements() {
            prop_assert!(set.contains(&a.inverse()));
            for s in &gens {
                prop_assert!(set.contains(&a.then(s)));
            }
        }
        let classes = g.classes();
        prop_assert_eq!(classes.sizes().iter().sum::<usize>(), g.order());
        for &s in classes.sizes() {
            prop_assert_eq!(g.order() % s, 0);
        }
    }

    #[test]
    fn cyclotomic_ring_axioms(a in cyc_strategy(), b in cyc_strategy(), c in cyc_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CycValue::one(1), a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.rebase(a.conductor() * 3), a.clone());
    }

    #[test]
    fn frobenius_reciprocity(gi in 0usize..8, seed in any::<u64>()) {
        GROUPS.with(|groups| {
            let (g, t) = &groups[gi];
            let pick = |k: u64| g.element((seed.rotate_left(k as u32 * 13) % g.order() as u64) as usize).clone();
            let h = g.subgroup(vec![pick(1), pick(2)]).unwrap();
            let ht = character_table(&h).unwrap();
            for psi in ht.iter() {
                let up = induce(psi, g).unwrap();
                for chi in t.iter() {
                    let lhs = inner_product(&up, chi).unwrap();
                    let rhs = inner_product(psi, &restrict(chi, &h).unwrap()).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
            Ok(())
        })?;
    }

    #[test]
    fn conjugation_is_a_right_action(gi in 0usize..8, a in any::<u64>(), b in any::<u64>()) {
        GROUPS.with(|groups| {
            let (g, _) = &groups[gi];
            let z = g.center();
            let n = g.subgroup(
                z.generators().iter().cloned()
                    .chain(std::iter::once(g.element((a % g.order() as u64) as usize).clone()))
                    .collect(),
            ).unwrap();
            if !n.is_normal_in(g) {
                return Ok(());
            }
            let x = g.element((a / 7 % g.order() as u64) as usize).clone();
            let y = g.element((b % g.order() as u64) as usize).clone();
            let nt = character_table(&n).unwrap();
            for nu in nt.iter() {
                let step = conjugate_action(g, &conjugate_action(g, nu, &x).unwrap(), &y).unwrap();
                prop_assert_eq!(&step, &conjugate_action(g, nu, &x.then(&y)).unwrap());
                prop_assert_eq!(&conjugate_action(g, nu, &g.identity()).unwrap(), nu);
                prop_assert!(nt.index_of(&step).is_some());
            }
            Ok(())
        })?;
    }

    #[test]
    fn bracket_identity(gi in 0usize..8, i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        GROUPS.with(|groups| {
            let (_, t) = &groups[gi];
            let (chi, psi, theta) = (&t[i % t.len()], &t[j % t.len()], &t[k % t.len()]);
            // [χψ, θ] = [ψ, θχ̄]
            let lhs = inner_product(&product(chi, psi).unwrap(), theta).unwrap();
            let rhs = inner_product(psi, &product(theta, &conjugate_character(chi)).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })?;
    }
}
