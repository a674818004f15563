//! Clifford theory along a chief series: the conjugation action on
//! characters of normal subgroups, stabilizers, Clifford correspondents,
//! constituent chains and their stable/unstable ledger.

use std::sync::Arc;

use serde::Serialize;

use crate::charops::{
    conjugate_character, decompose, first_constituent, induce, inner_product, irr_mod, product,
    restrict, scale,
};
use crate::chartab::{character_table, CharTable, Character};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// `ν^g(x) = ν(g x g^-1)` for ν a character of a normal subgroup of `group`.
pub fn conjugate_action(group: &PermGroup, nu: &Character, g: &Permutation) -> Result<Character> {
    let sub = nu.group();
    if !sub.is_normal_in(group) {
        return Err(Error::NotNormal);
    }
    if !group.contains(g) {
        return Err(Error::ElementNotInGroup);
    }
    let values = sub
        .classes()
        .representatives()
        .iter()
        .map(|x| nu.at(&x.conjugate_by(g)).cloned())
        .collect::<Result<Vec<_>>>()?;
    Character::new(Arc::clone(sub), values)
}

fn fixes(nu: &Character, g: &Permutation) -> bool {
    let sub = nu.group();
    sub.classes()
        .representatives()
        .iter()
        .enumerate()
        .all(|(k, x)| nu.at(&x.conjugate_by(g)).is_ok_and(|v| v == nu.value(k)))
}

/// Membership mask (over the group's element indices) of the stabilizer of ν,
/// tested on the given transversal of ν's subgroup.
fn stabilizer_mask(group: &PermGroup, nu: &Character, transversal: &[Permutation]) -> Vec<bool> {
    let sub = nu.group();
    let mut mask = vec![false; group.order()];
    for t in transversal {
        if fixes(nu, t) {
            for n in sub.elements() {
                mask[group.index_of(&n.then(t)).expect("coset in group")] = true;
            }
        }
    }
    mask
}

/// `G_ν = {g ∈ G : ν^g = ν}`.
pub fn stabilizer(group: &Arc<PermGroup>, nu: &Character) -> Result<Arc<PermGroup>> {
    let sub = nu.group();
    if !sub.is_normal_in(group) {
        return Err(Error::NotNormal);
    }
    let transversal = group.transversal(sub)?;
    let mask = stabilizer_mask(group, nu, &transversal);
    Ok(group.subgroup_from_elements(masked_elements(group, &mask)))
}

fn masked_elements(group: &PermGroup, mask: &[bool]) -> Vec<Permutation> {
    group
        .elements()
        .iter()
        .zip(mask)
        .filter(|(_, &m)| m)
        .map(|(g, _)| g.clone())
        .collect()
}

/// The unique irreducible of `G_ν` lying over ν that induces to χ.
pub fn clifford_correspondent(chi: &Character, nu: &Character) -> Result<Character> {
    let group = chi.group();
    let inertia = stabilizer(group, nu)?;
    let table = character_table(&inertia)?;
    clifford_correspondent_in(chi, nu, &table)
}

/// As [`clifford_correspondent`], with the inertia group's table supplied.
pub fn clifford_correspondent_in(
    chi: &Character,
    nu: &Character,
    inertia_table: &CharTable,
) -> Result<Character> {
    let group = chi.group();
    let sub = nu.group();
    if inner_product(&restrict(chi, sub)?, nu)? == 0 {
        return Err(Error::NotAConstituent);
    }
    let nu_deg = nu.degree().ok_or(Error::NotIntegral)? as i64;
    let mut found: Option<Character> = None;
    for psi in inertia_table.iter() {
        let psi_deg = psi.degree().expect("irreducible") as i64;
        if psi_deg % nu_deg != 0 {
            continue;
        }
        if restrict(psi, sub)? != scale(nu, psi_deg / nu_deg) {
            continue;
        }
        if induce(psi, group)? != *chi {
            continue;
        }
        if found.is_some() {
            return Err(Error::CliffordFailure("correspondent is not unique".into()));
        }
        found = Some(psi.clone());
    }
    found.ok_or_else(|| {
        Error::CliffordFailure("no character of the inertia group induces to χ".into())
    })
}

/// Chief series with character tables of every term and coset transversals,
/// shared by all chains in one group.
pub struct ChainContext {
    group: Arc<PermGroup>,
    p: u64,
    series: Vec<Arc<PermGroup>>,
    tables: Vec<CharTable>,
    transversals: Vec<Vec<Permutation>>,
}

impl ChainContext {
    pub fn new(group: &Arc<PermGroup>) -> Result<Self> {
        let top = character_table(group)?;
        Self::with_table(top)
    }

    /// Builds the context reusing an already computed table of the group.
    pub fn with_table(top: CharTable) -> Result<Self> {
        let group = Arc::clone(top.group());
        let p = group.prime()?;
        let mut series = group.chief_series()?;
        // last term is the group itself; use the caller's Arc for it
        *series.last_mut().unwrap() = Arc::clone(&group);
        let mut tables = series[..series.len() - 1]
            .iter()
            .map(character_table)
            .collect::<Result<Vec<_>>>()?;
        tables.push(top);
        let transversals = series
            .iter()
            .map(|n| group.transversal(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            group,
            p,
            series,
            tables,
            transversals,
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn series(&self) -> &[Arc<PermGroup>] {
        &self.series
    }

    /// Table of `N_i`.
    pub fn table(&self, i: usize) -> &CharTable {
        &self.tables[i]
    }

    pub fn top_table(&self) -> &CharTable {
        self.tables.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    fn stabilizer_mask(&self, i: usize, nu: &Character) -> Vec<bool> {
        stabilizer_mask(&self.group, nu, &self.transversals[i])
    }
}

/// `(N_0, ν_0) < (N_1, ν_1) < .. < (N_t, ν_t) = (G, χ)` with each ν_i an
/// irreducible of N_i lying under ν_{i+1}.
#[derive(Debug, Clone)]
pub struct CharacterChain {
    pub chi_index: usize,
    /// Index of ν_i in the table of N_i.
    pub indices: Vec<usize>,
}

impl CharacterChain {
    pub fn nu<'a>(&self, ctx: &'a ChainContext, i: usize) -> &'a Character {
        &ctx.table(i)[self.indices[i]]
    }

    /// Length t of the series (number of steps).
    pub fn steps(&self) -> usize {
        self.indices.len() - 1
    }
}

/// Canonical chain: descend from χ taking the first constituent (in table
/// order) of each restriction.
pub fn build_chain(ctx: &ChainContext, chi_index: usize) -> Result<CharacterChain> {
    let t = ctx.len() - 1;
    let mut indices = vec![0usize; t + 1];
    indices[t] = chi_index;
    for i in (0..t).rev() {
        let upper = &ctx.table(i + 1)[indices[i + 1]];
        let res = restrict(upper, &ctx.series[i])?;
        indices[i] = first_constituent(&res, ctx.table(i))?
            .ok_or_else(|| Error::CliffordFailure("restriction has no constituent".into()))?;
    }
    Ok(CharacterChain { chi_index, indices })
}

/// Largest group order for which [`all_chains`] enumerates every chain.
pub const ALL_CHAINS_MAX_ORDER: usize = 64;

/// Every chain ending at χ, over all constituent choices.
pub fn all_chains(ctx: &ChainContext, chi_index: usize) -> Result<Vec<CharacterChain>> {
    if ctx.group.order() > ALL_CHAINS_MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "chain enumeration is limited to groups of order <= {ALL_CHAINS_MAX_ORDER}"
        )));
    }
    let t = ctx.len() - 1;
    let mut partial: Vec<Vec<usize>> = vec![vec![chi_index]];
    for i in (0..t).rev() {
        let mut next = Vec::new();
        for tail in partial {
            let upper = &ctx.table(i + 1)[tail[0]];
            let res = restrict(upper, &ctx.series[i])?;
            for c in decompose(&res, ctx.table(i))?.indices() {
                let mut chain = vec![c];
                chain.extend_from_slice(&tail);
                next.push(chain);
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(|indices| CharacterChain { chi_index, indices })
        .collect())
}

/// How an unstable step arises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepCase {
    Stable,
    /// ν_{i-1} = (ν_i) restricted, stabilizer shrinks by a factor p.
    Extension,
    /// ν_i = (ν_{i-1}) induced, stabilizer grows by a factor p.
    Induction,
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerEntry {
    pub index: usize,
    pub stable: bool,
    pub case: StepCase,
    /// Unstable steps among 1..=index.
    pub m: u32,
    /// log_p |G : G_{ν_i}|.
    pub r: u32,
    /// log_p ν_i(1).
    pub s: u32,
    pub stabilizer_order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainLedger {
    pub entries: Vec<LedgerEntry>,
}

impl ChainLedger {
    pub fn unstable_indices(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| !e.stable)
            .map(|e| e.index)
            .collect()
    }

    pub fn final_m(&self) -> u32 {
        self.entries.last().map_or(0, |e| e.m)
    }

    pub fn final_entry(&self) -> Option<&LedgerEntry> {
        self.entries.last()
    }
}

fn exact_log(p: u64, mut n: u64) -> Option<u32> {
    if p <= 1 {
        return (n == 1).then_some(0);
    }
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

fn is_subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

/// Labels each step stable / extension / induction and fills the counters,
/// checking `m_i = 2 s_i + r_i` at every index.
pub fn classify_chain(ctx: &ChainContext, chain: &CharacterChain) -> Result<ChainLedger> {
    let p = ctx.p;
    let order = ctx.group.order();
    let t = chain.steps();
    let masks: Vec<Vec<bool>> = (0..=t)
        .map(|i| ctx.stabilizer_mask(i, chain.nu(ctx, i)))
        .collect();
    let stab_orders: Vec<usize> = masks
        .iter()
        .map(|m| m.iter().filter(|&&x| x).count())
        .collect();

    let mut entries = Vec::with_capacity(t);
    let mut m = 0u32;
    for i in 1..=t {
        let lower = chain.nu(ctx, i - 1);
        let upper = chain.nu(ctx, i);
        let extends = restrict(upper, &ctx.series[i - 1])? == *lower;
        let stable = extends && masks[i] == masks[i - 1];
        let case = if stable {
            StepCase::Stable
        } else if extends
            && stab_orders[i - 1] == p as usize * stab_orders[i]
            && is_subset(&masks[i], &masks[i - 1])
        {
            StepCase::Extension
        } else if stab_orders[i] == p as usize * stab_orders[i - 1]
            && is_subset(&masks[i - 1], &masks[i])
            && upper
                .degree()
                .zip(lower.degree())
                .is_some_and(|(u, l)| u == p * l)
            && induce(lower, &ctx.series[i])? == *upper
        {
            StepCase::Induction
        } else {
            return Err(Error::UnstableCaseViolation { index: i });
        };
        if !stable {
            m += 1;
        }
        let r = exact_log(p, (order / stab_orders[i]) as u64)
            .ok_or_else(|| Error::CliffordFailure("stabilizer index is not a power of p".into()))?;
        let s = exact_log(p, upper.degree().unwrap_or(0))
            .ok_or_else(|| Error::CliffordFailure("degree is not a power of p".into()))?;
        if m != 2 * s + r {
            return Err(Error::LedgerViolation { index: i, m, s, r });
        }
        entries.push(LedgerEntry {
            index: i,
            stable,
            case,
            m,
            r,
            s,
            stabilizer_order: stab_orders[i],
        });
    }
    Ok(ChainLedger { entries })
}

/// Constituents of χχ̄ attached to one unstable step i: those θ with
/// `θ_{N_i} = θ(1)·δ` for a nonprincipal δ in `Irr(N_i mod N_{i-1})`.
#[derive(Debug, Clone, Serialize)]
pub struct LayerConstituents {
    pub index: usize,
    /// For every δ in `Irr(N_i mod N_{i-1})` (indices in the table of N_i),
    /// the constituents θ of χχ̄ lying over it.
    pub over_delta: Vec<(usize, Vec<usize>)>,
    /// Union over nonprincipal δ.
    pub nonprincipal: Vec<usize>,
}

/// For each unstable index of the ledger, the constituents of χχ̄ lying over
/// each character of the layer `N_i / N_{i-1}`.
pub fn layer_constituents(
    ctx: &ChainContext,
    chain: &CharacterChain,
    ledger: &ChainLedger,
) -> Result<Vec<LayerConstituents>> {
    let top = ctx.top_table();
    let chi = &top[chain.chi_index];
    let square = decompose(&product(chi, &conjugate_character(chi))?, top)?;
    let mut out = Vec::new();
    for i in ledger.unstable_indices() {
        let layer_table = ctx.table(i);
        let deltas = irr_mod(layer_table, &ctx.series[i - 1])?;
        let restricted: Vec<(usize, Character)> = square
            .indices()
            .map(|th| Ok((th, restrict(&top[th], &ctx.series[i])?)))
            .collect::<Result<_>>()?;
        let mut over_delta = Vec::with_capacity(deltas.len());
        let mut nonprincipal = Vec::new();
        for &d in &deltas {
            let delta = &layer_table[d];
            let over: Vec<usize> = restricted
                .iter()
                .filter(|(th, res)| {
                    let deg = top[*th].degree().unwrap() as i64;
                    *res == scale(delta, deg)
                })
                .map(|(th, _)| *th)
                .collect();
            if !delta.is_principal() {
                nonprincipal.extend_from_slice(&over);
            }
            over_delta.push((d, over));
        }
        nonprincipal.sort_unstable();
        nonprincipal.dedup();
        out.push(LayerConstituents {
            index: i,
            over_delta,
            nonprincipal,
        });
    }
    Ok(out)
}
