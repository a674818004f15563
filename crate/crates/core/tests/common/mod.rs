#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;

use etalab_core::chartab::{CharTable, Character};
use etalab_core::cyclotomic::CycValue;
use etalab_core::perm::PermGroup;

fn zero_like(t: &CharTable) -> CycValue {
    CycValue::zero(t.group().exponent() as u32)
}

/// Σ_K |K| χ(K) conj(ψ(K)) == |G| δ for all pairs of rows.
pub fn rows_orthonormal(t: &CharTable) -> Result<(), String> {
    let g = t.group();
    let sizes = g.classes().sizes();
    let order = BigInt::from(g.order());
    for (i, a) in t.iter().enumerate() {
        for (j, b) in t.iter().enumerate() {
            let mut s = zero_like(t);
            for (k, &size) in sizes.iter().enumerate() {
                s = s + (a.value(k) * &b.value(k).conj()).scale(&BigInt::from(size));
            }
            let want = if i == j {
                order.clone()
            } else {
                BigInt::from(0)
            };
            if s != CycValue::from_int(1, want) {
                return Err(format!("rows {i}, {j}: {s}"));
            }
        }
    }
    Ok(())
}

/// Σ_χ χ(K) conj(χ(L)) == |C_G(g_K)| δ_{KL}.
pub fn columns_orthogonal(t: &CharTable) -> Result<(), String> {
    let g = t.group();
    let classes = g.classes();
    let r = classes.len();
    for k in 0..r {
        for l in 0..r {
            let mut s = zero_like(t);
            for chi in t.iter() {
                s = s + chi.value(k) * &chi.value(l).conj();
            }
            let want = if k == l {
                g.order() / classes.size(k)
            } else {
                0
            };
            if s != CycValue::from_int(1, want) {
                return Err(format!("columns {k}, {l}: {s}"));
            }
        }
    }
    Ok(())
}

pub fn degree_sum_of_squares(t: &CharTable) -> u64 {
    t.degrees().iter().map(|d| d * d).sum()
}

/// `[χψ, θ]` summed element by element over the whole group, without class sizes.
pub fn elementwise_multiplicity(
    g: &PermGroup,
    chi: &Character,
    psi: &Character,
    theta: &Character,
) -> BigInt {
    let e = g.exponent() as u32;
    let mut s = CycValue::zero(e);
    for x in g.elements() {
        let k = g.class_of(x).unwrap();
        s = s + &(chi.value(k) * psi.value(k)) * &theta.value(k).conj();
    }
    let total = s
        .as_integer()
        .expect("inner product sum is rational")
        .clone();
    let order = BigInt::from(g.order());
    assert_eq!(
        &total % &order,
        BigInt::from(0),
        "inner product sum not divisible by |G|"
    );
    total / order
}

/// η(χ, ψ) by element-level inner products against every irreducible.
pub fn elementwise_eta(t: &CharTable, i: usize, j: usize) -> usize {
    let g = t.group();
    t.iter()
        .filter(|theta| elementwise_multiplicity(g, &t[i], &t[j], theta) != BigInt::from(0))
        .count()
}

/// ν^G(g) = (1/|H|) Σ_{x ∈ G} ν°(x g x^-1), straight from the definition.
pub fn induce_elementwise(nu: &Character, group: &Arc<PermGroup>) -> Vec<CycValue> {
    let h = nu.group();
    let e = group.exponent() as u32;
    group
        .classes()
        .representatives()
        .iter()
        .map(|g| {
            let mut s = CycValue::zero(e);
            for x in group.elements() {
                let y = g.conjugate_by(x);
                if h.contains(&y) {
                    s = s + nu.at(&y).unwrap().clone();
                }
            }
            s.div_exact(&BigInt::from(h.order()))
                .expect("divisible by |H|")
        })
        .collect()
}
