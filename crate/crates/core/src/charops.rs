//! Character algebra: products, inner products, decompositions into
//! irreducibles, restriction, induction, kernels.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::chartab::{CharTable, Character};
use crate::cyclotomic::CycValue;
use crate::error::{Error, Result};
use crate::perm::PermGroup;

/// One irreducible constituent: its index in the canonical table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub index: usize,
    pub multiplicity: u64,
    pub degree: u64,
}

/// The irreducible constituents Ξ(Θ) of a character Θ with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstituentDecomposition {
    pub constituents: Vec<Constituent>,
    /// Number of distinct constituents.
    pub eta: usize,
}

impl ConstituentDecomposition {
    pub fn contains(&self, index: usize) -> bool {
        self.constituents.iter().any(|c| c.index == index)
    }

    pub fn multiplicity(&self, index: usize) -> u64 {
        self.constituents
            .iter()
            .find(|c| c.index == index)
            .map_or(0, |c| c.multiplicity)
    }

    /// Σ multiplicity · degree.
    pub fn total_degree(&self) -> u64 {
        self.constituents
            .iter()
            .map(|c| c.multiplicity * c.degree)
            .sum()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.constituents.iter().map(|c| c.index)
    }
}

fn check_same(a: &Character, b: &Character) -> Result<()> {
    if a.same_group(b) {
        Ok(())
    } else {
        Err(Error::DifferentGroups)
    }
}

/// Pointwise product χψ.
pub fn product(a: &Character, b: &Character) -> Result<Character> {
    check_same(a, b)?;
    let values = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| x * y)
        .collect();
    Character::new(Arc::clone(a.group()), values)
}

/// Pointwise sum.
pub fn sum(a: &Character, b: &Character) -> Result<Character> {
    check_same(a, b)?;
    let values = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| x + y)
        .collect();
    Character::new(Arc::clone(a.group()), values)
}

/// Integer multiple `k·a`.
pub fn scale(a: &Character, k: i64) -> Character {
    let k = BigInt::from(k);
    let values = a.values().iter().map(|v| v.scale(&k)).collect();
    Character::new(Arc::clone(a.group()), values).expect("same class count")
}

/// The complex conjugate χ̄.
pub fn conjugate_character(a: &Character) -> Character {
    let values = a.values().iter().map(CycValue::conj).collect();
    Character::new(Arc::clone(a.group()), values).expect("same class count")
}

/// `(1/|G|) Σ_K |K| a(K) conj(b(K))` as an exact rational integer.
///
/// Fails with [`Error::NotIntegral`] if the sum is not an integer multiple of |G|.
pub fn class_inner_product(a: &Character, b: &Character) -> Result<BigInt> {
    check_same(a, b)?;
    let weights = conjugate_weights(b);
    pair_with_weights(a, &weights)
}

/// `[a, b]` for genuine characters: a non-negative integer.
pub fn inner_product(a: &Character, b: &Character) -> Result<u64> {
    to_multiplicity(class_inner_product(a, b)?)
}

fn to_multiplicity(n: BigInt) -> Result<u64> {
    if n.is_negative() {
        return Err(Error::NotIntegral);
    }
    n.to_u64().ok_or(Error::NotIntegral)
}

/// `|K| · conj(b(K))` per class.
fn conjugate_weights(b: &Character) -> Vec<CycValue> {
    let sizes = b.group().classes().sizes();
    b.values()
        .iter()
        .zip(sizes)
        .map(|(v, &s)| v.conj().scale(&BigInt::from(s)))
        .collect()
}

fn pair_with_weights(a: &Character, weights: &[CycValue]) -> Result<BigInt> {
    let mut acc = CycValue::zero(a.value(0).conductor());
    for (v, w) in a.values().iter().zip(weights) {
        if !v.is_zero() && !w.is_zero() {
            acc = &acc + &(v * w);
        }
    }
    let total = acc.as_integer().ok_or(Error::NotIntegral)?;
    let order = BigInt::from(a.group().order());
    if (total % &order) != BigInt::from(0) {
        return Err(Error::NotIntegral);
    }
    Ok(total / order)
}

/// Decomposes Θ against the irreducibles of `table`.
pub fn decompose(theta: &Character, table: &CharTable) -> Result<ConstituentDecomposition> {
    check_same(theta, &table[0])?;
    // [Θ, χ] = [χ, Θ] for characters, so weight Θ once and pair with each χ.
    let weights = conjugate_weights(theta);
    let mut constituents = Vec::new();
    for (index, chi) in table.iter().enumerate() {
        let m = to_multiplicity(pair_with_weights(chi, &weights)?)?;
        if m > 0 {
            constituents.push(Constituent {
                index,
                multiplicity: m,
                degree: chi.degree().expect("irreducible"),
            });
        }
    }
    Ok(ConstituentDecomposition {
        eta: constituents.len(),
        constituents,
    })
}

/// First constituent of Θ in canonical order, without computing the rest.
pub fn first_constituent(theta: &Character, table: &CharTable) -> Result<Option<usize>> {
    check_same(theta, &table[0])?;
    let weights = conjugate_weights(theta);
    for (index, chi) in table.iter().enumerate() {
        if to_multiplicity(pair_with_weights(chi, &weights)?)? > 0 {
            return Ok(Some(index));
        }
    }
    Ok(None)
}

/// Decomposition of χ_i · χ_j.
pub fn decompose_product(
    table: &CharTable,
    i: usize,
    j: usize,
) -> Result<ConstituentDecomposition> {
    decompose(&product(&table[i], &table[j])?, table)
}

/// η(χ_i, χ_j): the number of distinct irreducible constituents of χ_i χ_j.
pub fn eta(table: &CharTable, i: usize, j: usize) -> Result<usize> {
    Ok(decompose_product(table, i, j)?.eta)
}

/// χ_N as a class function on the subgroup's own classes.
pub fn restrict(a: &Character, sub: &Arc<PermGroup>) -> Result<Character> {
    if !sub.is_subgroup_of(a.group()) {
        return Err(Error::NotASubgroup);
    }
    let values = sub
        .classes()
        .representatives()
        .iter()
        .map(|rep| a.at(rep).cloned())
        .collect::<Result<Vec<_>>>()?;
    Character::new(Arc::clone(sub), values)
}

/// ν^G, computed by fusing the subgroup's classes into the group's:
/// `ν^G(K) = |G| / (|H||K|) · Σ_{L ⊆ K} |L| ν(L)`.
pub fn induce(nu: &Character, group: &Arc<PermGroup>) -> Result<Character> {
    let sub = nu.group();
    if !sub.is_subgroup_of(group) {
        return Err(Error::NotASubgroup);
    }
    let e = group.exponent() as u32;
    let g_classes = group.classes();
    let h_classes = sub.classes();
    let mut sums = vec![CycValue::zero(e); g_classes.len()];
    for (l, rep) in h_classes.representatives().iter().enumerate() {
        let k = group.class_of(rep).ok_or(Error::NotASubgroup)?;
        let term = nu
            .value(l)
            .rebase(e)
            .scale(&BigInt::from(h_classes.size(l)));
        sums[k] = &sums[k] + &term;
    }
    let g_order = BigInt::from(group.order());
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| {
            let denom = BigInt::from(sub.order() * g_classes.size(k));
            s.scale(&g_order)
                .div_exact(&denom)
                .ok_or_else(|| Error::CliffordFailure("induced value is not integral".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Character::new(Arc::clone(group), values)
}

fn union_of_classes(a: &Character, keep: impl Fn(&CycValue) -> bool) -> Arc<PermGroup> {
    let group = a.group();
    let classes = group.classes();
    let elements = (0..classes.len())
        .filter(|&k| keep(a.value(k)))
        .flat_map(|k| classes.members(k).iter())
        .map(|&i| group.element(i as usize).clone())
        .collect();
    group.subgroup_from_elements(elements)
}

/// `Ker(χ) = {g : χ(g) = χ(1)}`.
pub fn kernel(a: &Character) -> Arc<PermGroup> {
    let deg = a.value(0).clone();
    union_of_classes(a, |v| *v == deg)
}

/// `Z(χ) = {g : |χ(g)| = χ(1)}`, tested exactly as `χ(g)·conj(χ(g)) = χ(1)²`.
pub fn center_of_character(a: &Character) -> Arc<PermGroup> {
    let deg_sq = a.value(0) * a.value(0);
    union_of_classes(a, |v| (v * &v.conj()) == deg_sq)
}

/// Linear characters, as indices into `table`.
pub fn lin(table: &CharTable) -> Vec<usize> {
    (0..table.len()).filter(|&i| table[i].is_linear()).collect()
}

/// Irreducibles of M whose kernel contains the normal subgroup N, as indices.
pub fn irr_mod(table: &CharTable, normal: &PermGroup) -> Result<Vec<usize>> {
    let group = table.group();
    if !normal.is_normal_in(group) {
        return Err(Error::NotNormal);
    }
    let n_classes: Vec<usize> = normal
        .classes()
        .representatives()
        .iter()
        .map(|rep| group.class_of(rep).expect("subgroup element"))
        .collect();
    Ok((0..table.len())
        .filter(|&i| {
            let chi = &table[i];
            n_classes.iter().all(|&k| chi.value(k) == chi.value(0))
        })
        .collect())
}
