//! Builders for the example groups: cyclic, dihedral, quaternion, modular,
//! extraspecial of exponent p, wreath products `A ≀ C_p`, and the recursive
//! witnesses attaining `η(χ, χ̄) = 2n(p-1)+1`.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::charops::{conjugate_character, induce, inner_product};
use crate::chartab::{CharTable, Character};
use crate::cyclotomic::CycValue;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, DEFAULT_ORDER_CAP};

/// Default order ceiling for witness recursion.
pub const WITNESS_ORDER_CAP: usize = 1 << 16;

fn cycle_perm(degree: usize, points: impl IntoIterator<Item = u32>) -> Permutation {
    let cycle: Vec<u32> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[cycle]).expect("valid cycle")
}

/// Cyclic group of order `m` acting regularly on `m` points.
pub fn cyclic(m: usize) -> Result<Arc<PermGroup>> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "cyclic order must be at least 1".into(),
        ));
    }
    let gens = if m == 1 {
        vec![]
    } else {
        vec![cycle_perm(m, 0..m as u32)]
    };
    PermGroup::from_generators(m, gens)
}

/// Dihedral group of order `2m` on the vertices of an m-gon.
///
/// For `m = 2` (the Klein four-group) the 2-gon action is not faithful, so
/// the regular action on 4 points is used instead.
pub fn dihedral(m: usize) -> Result<Arc<PermGroup>> {
    match m {
        0 | 1 => Err(Error::InvalidArgument("dihedral needs m >= 2".into())),
        2 => direct_product(&*cyclic(2)?, &*cyclic(2)?),
        _ => {
            let rotation = cycle_perm(m, 0..m as u32);
            let reflection = Permutation::from_images(
                (0..m as u32).map(|i| (m as u32 - i) % m as u32).collect(),
            )?;
            PermGroup::from_generators(m, vec![rotation, reflection])
        }
    }
}

/// Right regular representation of a group given by its elements, product,
/// and generators.
fn regular_representation<T, F>(elements: &[T], mul: F, gens: &[T]) -> Result<Arc<PermGroup>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let index: HashMap<&T, u32> = elements.iter().zip(0u32..).collect();
    let perms = gens
        .iter()
        .map(|g| Permutation::from_images(elements.iter().map(|x| index[&mul(x, g)]).collect()))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::from_generators(elements.len(), perms)
}

/// Generalized quaternion group `<a, b | a^(2k) = 1, b^2 = a^k, b a b^-1 = a^-1>`
/// of order `4k`, in its regular representation.
pub fn generalized_quaternion(order: usize) -> Result<Arc<PermGroup>> {
    if order < 8 || !order.is_power_of_two() {
        return Err(Error::InvalidArgument(
            "generalized quaternion order must be a power of two >= 8".into(),
        ));
    }
    let m = order / 2; // order of a
    let k = m / 2;
    // element (i, j) = a^i b^j with j in {0, 1}
    let elements: Vec<(usize, usize)> = (0..2).flat_map(|j| (0..m).map(move |i| (i, j))).collect();
    let mul = |x: &(usize, usize), y: &(usize, usize)| {
        let (i1, j1) = *x;
        let (i2, j2) = *y;
        // b^j1 a^i2 = a^(±i2) b^j1
        let i2 = if j1 == 1 { (m - i2) % m } else { i2 };
        let mut i = (i1 + i2) % m;
        let mut j = j1 + j2;
        if j == 2 {
            j = 0;
            i = (i + k) % m;
        }
        (i, j)
    };
    regular_representation(&elements, mul, &[(1, 0), (0, 1)])
}

/// Quaternion group of order 8 on 8 points.
pub fn quaternion() -> Result<Arc<PermGroup>> {
    generalized_quaternion(8)
}

/// Modular group `<a, b | a^m = b^2 = 1, b a b = a^(1+m/2)>` of order `2m`
/// (m a power of two, m >= 8), acting by affine maps on `Z/m`.
pub fn modular(order: usize) -> Result<Arc<PermGroup>> {
    let m = order / 2;
    if m < 8 || !m.is_power_of_two() {
        return Err(Error::InvalidArgument(
            "modular group order must be a power of two >= 16".into(),
        ));
    }
    let a = cycle_perm(m, 0..m as u32);
    let u = 1 + m / 2;
    let b = Permutation::from_images((0..m).map(|x| ((u * x) % m) as u32).collect())?;
    PermGroup::from_generators(m, vec![a, b])
}

/// `A × B` acting on the disjoint union of their point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<Arc<PermGroup>> {
    let da = a.degree();
    let degree = da + b.degree();
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        images[..da].copy_from_slice(g.images());
        gens.push(Permutation::from_images(images)?);
    }
    for g in b.generators() {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (x, &y) in g.images().iter().enumerate() {
            images[da + x] = da as u32 + y;
        }
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::from_generators(degree, gens)
}

/// Extraspecial group of order `p^(2n+1)` and exponent p (p odd), realized
/// as the Heisenberg group over `F_p^n` in its regular representation.
pub fn extraspecial_exp_p(p: u64, n: usize) -> Result<Arc<PermGroup>> {
    if p == 2 {
        return Err(Error::EvenExtraspecial);
    }
    if p < 2 || crate::perm::smallest_prime_factor(p) != p || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "extraspecial group needs an odd prime and n >= 1, got p={p}, n={n}"
        )));
    }
    let order = (p as usize)
        .checked_pow(2 * n as u32 + 1)
        .filter(|&o| o <= DEFAULT_ORDER_CAP)
        .ok_or(Error::GroupTooLarge {
            cap: DEFAULT_ORDER_CAP,
        })?;
    let p = p as u32;
    // element: (x_1..x_n, y_1..y_n, z); product adds x, y and z + x·y'
    let width = 2 * n + 1;
    let elements: Vec<Vec<u32>> = (0..order)
        .map(|mut idx| {
            (0..width)
                .map(|_| {
                    let d = (idx % p as usize) as u32;
                    idx /= p as usize;
                    d
                })
                .collect()
        })
        .collect();
    let mul = |a: &Vec<u32>, b: &Vec<u32>| {
        let mut out: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
        let dot: u32 = (0..n).map(|i| a[i] * b[n + i]).sum();
        out[2 * n] = (a[2 * n] + b[2 * n] + dot) % p;
        out
    };
    let gens: Vec<Vec<u32>> = (0..2 * n)
        .map(|i| {
            let mut g = vec![0u32; width];
            g[i] = 1;
            g
        })
        .collect();
    regular_representation(&elements, mul, &gens)
}

/// `A ≀ C_p` acting imprimitively on `p` blocks of `deg(A)` points.
#[derive(Debug, Clone)]
pub struct Wreath {
    pub group: Arc<PermGroup>,
    /// The base subgroup `A^p`, normal of index p.
    pub base: Arc<PermGroup>,
    pub factor: Arc<PermGroup>,
    pub p: usize,
    /// The block-cycling generator: block i moves to block i+1.
    pub cycler: Permutation,
}

pub fn wreath_cp(a: &Arc<PermGroup>, p: usize) -> Result<Wreath> {
    wreath_cp_capped(a, p, DEFAULT_ORDER_CAP)
}

pub fn wreath_cp_capped(a: &Arc<PermGroup>, p: usize, cap: usize) -> Result<Wreath> {
    if p < 2 || crate::perm::smallest_prime_factor(p as u64) != p as u64 {
        return Err(Error::InvalidArgument(format!("{p} is not a prime")));
    }
    let too_large = Error::GroupTooLarge { cap };
    let order = a
        .order()
        .checked_pow(p as u32)
        .and_then(|o| o.checked_mul(p))
        .ok_or(Error::GroupTooLarge { cap })?;
    if order > cap {
        return Err(too_large);
    }
    let d = a.degree();
    let degree = d * p;
    let cycler =
        Permutation::from_images((0..degree).map(|x| ((x + d) % degree) as u32).collect())?;
    let embed = |g: &Permutation, block: usize| embed_in_block(g, block, d, degree);
    let mut top_gens: Vec<Permutation> = a.generators().iter().map(|g| embed(g, 0)).collect();
    top_gens.push(cycler.clone());
    let group = PermGroup::from_generators_capped(degree, top_gens, cap)?;
    let base_gens = (0..p)
        .flat_map(|b| a.generators().iter().map(move |g| (g, b)))
        .map(|(g, b)| embed(g, b))
        .collect();
    let base = group.subgroup(base_gens)?;
    debug_assert_eq!(group.order(), order);
    Ok(Wreath {
        group,
        base,
        factor: Arc::clone(a),
        p,
        cycler,
    })
}

fn embed_in_block(g: &Permutation, block: usize, d: usize, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let off = (block * d) as u32;
    for (x, &y) in g.images().iter().enumerate() {
        images[block * d + x] = off + y;
    }
    Permutation::from_images(images).expect("block embedding is a bijection")
}

impl Wreath {
    pub fn block_degree(&self) -> usize {
        self.factor.degree()
    }

    /// `(1, .., a, .., 1)` with `a` in position `block`.
    pub fn embed(&self, a: &Permutation, block: usize) -> Permutation {
        embed_in_block(a, block, self.block_degree(), self.group.degree())
    }

    /// The `block`-th coordinate of a base element.
    pub fn component(&self, h: &Permutation, block: usize) -> Result<Permutation> {
        if !self.base.contains(h) {
            return Err(Error::ElementNotInGroup);
        }
        let d = self.block_degree();
        let off = (block * d) as u32;
        Permutation::from_images((0..d).map(|x| h.apply(off + x as u32) - off).collect())
    }

    /// `θ(a_0, .., a_{p-1}) = Π factors[i](a_i)` as a character of the base.
    pub fn base_character(&self, factors: &[&Character]) -> Result<Character> {
        if factors.len() != self.p {
            return Err(Error::InvalidArgument(format!(
                "need {} factors, got {}",
                self.p,
                factors.len()
            )));
        }
        if factors
            .iter()
            .any(|f| !PermGroup::same_group(f.group(), &self.factor))
        {
            return Err(Error::DifferentGroups);
        }
        let e = self.base.exponent() as u32;
        let values = self
            .base
            .classes()
            .representatives()
            .iter()
            .map(|h| {
                let mut acc = CycValue::one(e);
                for (block, f) in factors.iter().enumerate() {
                    let v = f.at(&self.component(h, block)?)?;
                    acc = &acc * v;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Character::new(Arc::clone(&self.base), values)
    }

    /// `Irr(A^p)` assembled as all p-fold products from `Irr(A)`.
    pub fn base_table(&self, factor_table: &CharTable) -> Result<CharTable> {
        let k = factor_table.len();
        let total = k.pow(self.p as u32);
        let mut irreducibles = Vec::with_capacity(total);
        for mut idx in 0..total {
            let factors: Vec<&Character> = (0..self.p)
                .map(|_| {
                    let c = &factor_table[idx % k];
                    idx /= k;
                    c
                })
                .collect();
            irreducibles.push(self.base_character(&factors)?);
        }
        Ok(CharTable::from_parts(
            Arc::clone(&self.base),
            0,
            irreducibles,
        ))
    }
}

/// A group with an irreducible χ of degree p^n satisfying χ ≠ χ̄.
#[derive(Debug, Clone)]
pub struct WitnessPair {
    pub group: Arc<PermGroup>,
    pub chi: Character,
    pub p: u64,
    pub n: u32,
    /// An element where χ differs from its conjugate.
    pub witness_element: Permutation,
    /// Description of the n = 0 starting pair.
    pub base_case: String,
}

/// The cyclic base of the recursion: C_4 with a faithful character for
/// p = 2, C_p with a faithful character for odd p.
pub fn witness_base(p: u64) -> Result<WitnessPair> {
    if p < 2 || crate::perm::smallest_prime_factor(p) != p {
        return Err(Error::InvalidArgument(format!("{p} is not a prime")));
    }
    let m = if p == 2 { 4 } else { p as usize };
    let group = cyclic(m)?;
    let gen = group.generators()[0].clone();
    let mut values = vec![CycValue::zero(m as u32); m];
    let mut x = group.identity();
    for k in 0..m {
        values[group.class_of(&x).unwrap()] = CycValue::root_of_unity(m as u32, k as i64);
        x = x.then(&gen);
    }
    let chi = Character::new(Arc::clone(&group), values)?;
    Ok(WitnessPair {
        group,
        chi,
        p,
        n: 0,
        witness_element: gen,
        base_case: format!("C{m} with the faithful linear character sending a generator to E({m})"),
    })
}

/// One recursion step: `G = A ≀ C_p`, `θ_0 = α × 1 × .. × 1`, `χ = θ_0^G`.
pub fn witness_step(prev: &WitnessPair, cap: usize) -> Result<WitnessPair> {
    let p = prev.p as usize;
    let w = wreath_cp_capped(&prev.group, p, cap)?;
    let one = Character::principal(&prev.group);
    let mut factors: Vec<&Character> = vec![&one; p];
    factors[0] = &prev.chi;
    let theta0 = w.base_character(&factors)?;
    let chi = induce(&theta0, &w.group)?;
    let witness_element = w.embed(&prev.witness_element, 0);

    let fail = |m: &str| Err(Error::WitnessFailure(m.to_string()));
    if inner_product(&chi, &chi)? != 1 {
        return fail("induced character is reducible");
    }
    let n = prev.n + 1;
    if chi.degree() != Some(prev.p.pow(n)) {
        return fail("induced degree is not p^n");
    }
    let at = chi.at(&witness_element)?;
    if at.conj() == *at {
        return fail("character is real at the witness element");
    }
    // χ((a,1,..,1)) = α(a) + (p-1)·α(1)
    let expected =
        prev.chi.at(&prev.witness_element)? + &prev.chi.value(0).scale(&BigInt::from(p - 1));
    if *at != expected {
        return fail("value at the witness element disagrees with the induction formula");
    }
    Ok(WitnessPair {
        group: w.group,
        chi,
        p: prev.p,
        n,
        witness_element,
        base_case: prev.base_case.clone(),
    })
}

pub fn prop5_witness(p: u64, n: u32) -> Result<WitnessPair> {
    prop5_witness_capped(p, n, WITNESS_ORDER_CAP)
}

pub fn prop5_witness_capped(p: u64, n: u32, cap: usize) -> Result<WitnessPair> {
    let mut pair = witness_base(p)?;
    for _ in 0..n {
        pair = witness_step(&pair, cap)?;
    }
    if pair.chi == conjugate_character(&pair.chi) {
        return Err(Error::WitnessFailure("χ is real".into()));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_orders() {
        let c4 = cyclic(4).unwrap();
        assert_eq!((c4.order(), c4.exponent()), (4, 4));
        assert_eq!(cyclic(1).unwrap().order(), 1);
        let v4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!((v4.order(), v4.classes().len()), (4, 4));
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(dihedral(2).unwrap().order(), 4);
        assert_eq!(dihedral(8).unwrap().order(), 16);
    }

    #[test]
    fn quaternion_has_one_central_involution() {
        let q8 = quaternion().unwrap();
        assert_eq!((q8.order(), q8.degree()), (8, 8));
        let singles = q8.classes().sizes().iter().filter(|&&s| s == 1).count();
        assert_eq!(singles, 2);
        assert_eq!(q8.classes().len(), 5);
        let q16 = generalized_quaternion(16).unwrap();
        assert_eq!(
            (q16.order(), q16.exponent(), q16.center().order()),
            (16, 8, 2)
        );
    }

    #[test]
    fn modular_group_of_order_16() {
        let m16 = modular(16).unwrap();
        assert_eq!(
            (m16.order(), m16.exponent(), m16.classes().len()),
            (16, 8, 10)
        );
        assert!(!m16.is_abelian());
    }

    #[test]
    fn extraspecial_27() {
        let e = extraspecial_exp_p(3, 1).unwrap();
        assert_eq!((e.order(), e.exponent(), e.center().order()), (27, 3, 3));
        assert!(matches!(
            extraspecial_exp_p(2, 1),
            Err(Error::EvenExtraspecial)
        ));
    }

    #[test]
    fn wreath_orders() {
        let w = wreath_cp(&cyclic(2).unwrap(), 2).unwrap();
        assert_eq!(w.group.order(), 8);
        assert_eq!(w.group.classes().len(), 5);
        let w = wreath_cp(&cyclic(4).unwrap(), 2).unwrap();
        assert_eq!((w.group.order(), w.base.order()), (32, 16));
        assert!(w.base.is_normal_in(&w.group));
        let w = wreath_cp(&cyclic(3).unwrap(), 3).unwrap();
        assert_eq!((w.group.order(), w.group.degree()), (81, 9));
        assert!(matches!(
            wreath_cp_capped(&cyclic(4).unwrap(), 2, 16),
            Err(Error::GroupTooLarge { cap: 16 })
        ));
    }

    #[test]
    fn witness_degrees() {
        let w = prop5_witness(2, 1).unwrap();
        assert_eq!((w.group.order(), w.chi.degree()), (32, Some(2)));
        let w = prop5_witness(3, 1).unwrap();
        assert_eq!((w.group.order(), w.chi.degree()), (81, Some(3)));
        let w = prop5_witness(5, 0).unwrap();
        assert_eq!((w.group.order(), w.chi.degree()), (5, Some(1)));
        assert!(matches!(
            prop5_witness(3, 2),
            Err(Error::GroupTooLarge { .. })
        ));
    }
}
