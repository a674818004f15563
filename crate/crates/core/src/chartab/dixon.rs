//! Character tables by simultaneous diagonalization of class matrices over
//! a prime field, followed by exact lifting of the values to `Z[ζ_e]`.

use std::sync::Arc;

use num_bigint::BigInt;

use super::character::{CharTable, Character};
use super::modular::{
    admissible_primes, charpoly, eval_poly, inv_mod, is_prime, mul_mod, nullspace, pow_mod,
    primitive_root, rref, Mat,
};
use crate::cyclotomic::CycValue;
use crate::error::{Error, Result};
use crate::perm::PermGroup;

/// Exact structure constants: `a[j][k]` = number of `x` in class `i` with
/// `x^-1 · g_k` in class `j`, where `g_k` is the representative of class `k`.
#[allow(clippy::needless_range_loop)]
pub fn class_matrix(group: &PermGroup, i: usize) -> Vec<Vec<u64>> {
    let classes = group.classes();
    let r = classes.len();
    let mut a = vec![vec![0u64; r]; r];
    let inverses: Vec<_> = classes
        .members(i)
        .iter()
        .map(|&x| group.element(x as usize).inverse())
        .collect();
    for k in 0..r {
        let gk = classes.representative(k);
        for xinv in &inverses {
            let y = xinv.then(gk);
            let j = group.class_of(&y).expect("closed under products");
            a[j][k] += 1;
        }
    }
    a
}

/// `a_{ijk}` for all k: how many ways a fixed element of class k factors as
/// (element of class i)·(element of class j).
pub fn class_mult_coefficients(group: &PermGroup, i: usize, j: usize) -> Vec<u64> {
    class_matrix(group, i).swap_remove(j)
}

/// The character table of `group`, using the smallest admissible prime.
pub fn character_table(group: &Arc<PermGroup>) -> Result<CharTable> {
    let q = admissible_primes(group.order() as u64, group.exponent())
        .next()
        .expect("infinitely many admissible primes");
    character_table_with_prime(group, q)
}

pub fn character_table_with_prime(group: &Arc<PermGroup>, q: u64) -> Result<CharTable> {
    let order = group.order() as u64;
    let e = group.exponent();
    if !is_prime(q) || q % e != 1 % e || q * q <= 4 * order || q >= 1 << 31 {
        return Err(Error::InvalidArgument(format!(
            "{q} is not an admissible prime for order {order}, exponent {e}"
        )));
    }
    let classes = group.classes();
    let r = classes.len();

    let mut spaces: Vec<Mat> = vec![(0..r)
        .map(|i| {
            let mut row = vec![0u64; r];
            row[i] = 1;
            row
        })
        .collect()];
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m: Mat = class_matrix(group, i)
            .into_iter()
            .map(|row| row.into_iter().map(|x| x % q).collect())
            .collect();
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split_space(space, &m, q)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::LiftingFailure(format!(
            "class matrices left {} joint eigenspaces for {r} classes",
            spaces.len()
        )));
    }

    let lifter = Lifter::new(group, q);
    let mut irreducibles = Vec::with_capacity(r);
    for space in &spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(Error::LiftingFailure(
                "central character vanishes at the identity".into(),
            ));
        }
        let inv0 = inv_mod(v[0], q);
        let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, inv0, q)).collect();
        irreducibles.push(lifter.lift(&omega)?);
    }

    let table = CharTable::from_parts(Arc::clone(group), q, irreducibles);
    let sum_sq: u64 = table.degrees().iter().map(|d| d * d).sum();
    if sum_sq != order {
        return Err(Error::LiftingFailure(format!(
            "squared degrees sum to {sum_sq}, not {order}"
        )));
    }
    Ok(table)
}

/// Splits an `m`-invariant subspace (rows in reduced echelon form) into the
/// eigenspaces of `m` restricted to it.
fn split_space(space: Mat, m: &Mat, q: u64) -> Result<Vec<Mat>> {
    let d = space.len();
    let r = m.len();
    let pivots: Vec<usize> = space
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).unwrap())
        .collect();
    // restricted[a][b] = coordinate a of m·space[b]
    let mut restricted = vec![vec![0u64; d]; d];
    for (b, basis) in space.iter().enumerate() {
        for (a, &pa) in pivots.iter().enumerate() {
            let row = &m[pa];
            let mut s = 0u64;
            for k in 0..r {
                if basis[k] != 0 {
                    s = (s + mul_mod(row[k], basis[k], q)) % q;
                }
            }
            restricted[a][b] = s;
        }
    }
    let cp = charpoly(&restricted, q);
    let roots: Vec<u64> = (0..q).filter(|&x| eval_poly(&cp, x, q) == 0).collect();
    if roots.len() == 1 {
        return Ok(vec![space]);
    }
    let mut parts = Vec::with_capacity(roots.len());
    let mut total = 0;
    for lambda in roots {
        let shifted: Mat = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { (x + q - lambda) % q } else { x })
                    .collect()
            })
            .collect();
        let coords = nullspace(&shifted, q);
        let mut vecs: Mat = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; r];
                for (cb, basis) in c.iter().zip(&space) {
                    if *cb == 0 {
                        continue;
                    }
                    for (x, &y) in v.iter_mut().zip(basis) {
                        *x = (*x + mul_mod(*cb, y, q)) % q;
                    }
                }
                v
            })
            .collect();
        rref(&mut vecs, q);
        total += vecs.len();
        parts.push(vecs);
    }
    if total != d {
        return Err(Error::LiftingFailure(format!(
            "class matrix not diagonalizable on a {d}-dimensional eigenspace"
        )));
    }
    Ok(parts)
}

/// Recovers exact character values from central characters mod q.
struct Lifter<'a> {
    group: &'a Arc<PermGroup>,
    q: u64,
    conductor: u32,
    /// ζ̂: the image of ζ_e in F_q.
    zeta: u64,
    /// Classes of rep^l for l in 0..ord(rep), per class.
    power_classes: Vec<Vec<usize>>,
}

impl<'a> Lifter<'a> {
    fn new(group: &'a Arc<PermGroup>, q: u64) -> Self {
        let e = group.exponent();
        let zeta = pow_mod(primitive_root(q), (q - 1) / e, q);
        let classes = group.classes();
        let power_classes = classes
            .representatives()
            .iter()
            .zip(classes.rep_orders())
            .map(|(rep, &o)| {
                let mut out = Vec::with_capacity(o as usize);
                let mut x = group.identity();
                for _ in 0..o {
                    out.push(group.class_of(&x).unwrap());
                    x = x.then(rep);
                }
                out
            })
            .collect();
        Self {
            group,
            q,
            conductor: e as u32,
            zeta,
            power_classes,
        }
    }

    fn lift(&self, omega: &[u64]) -> Result<Character> {
        let q = self.q;
        let classes = self.group.classes();
        let order = self.group.order() as u64;

        // Σ_j ω_j ω_{j*} / |K_j| = |G| / χ(1)^2
        let mut s = 0u64;
        for (j, &w) in omega.iter().enumerate() {
            let wbar = omega[classes.inverse_class(j)];
            let size_inv = inv_mod(classes.size(j) as u64 % q, q);
            s = (s + mul_mod(mul_mod(w, wbar, q), size_inv, q)) % q;
        }
        if s == 0 {
            return Err(Error::LiftingFailure("degree equation is singular".into()));
        }
        let deg_sq = mul_mod(order % q, inv_mod(s, q), q);
        let degree = (1..)
            .take_while(|d| d * d <= order)
            .find(|&d| order.is_multiple_of(d) && d * d % q == deg_sq)
            .ok_or_else(|| Error::LiftingFailure("no integral degree".into()))?;

        let modular: Vec<u64> = omega
            .iter()
            .enumerate()
            .map(|(j, &w)| {
                mul_mod(
                    mul_mod(w, degree % q, q),
                    inv_mod(classes.size(j) as u64 % q, q),
                    q,
                )
            })
            .collect();

        let e = self.conductor as u64;
        let mut values = Vec::with_capacity(omega.len());
        for (j, powers) in self.power_classes.iter().enumerate() {
            let o = powers.len() as u64;
            let z = pow_mod(self.zeta, e / o, q);
            let z_inv = inv_mod(z, q);
            let o_inv = inv_mod(o % q, q);
            let mut terms = Vec::new();
            let mut total = 0u64;
            for k in 0..o {
                // multiplicity of eigenvalue z^k: (1/o) Σ_l χ(g^l) z^{-kl}
                let step = pow_mod(z_inv, k, q);
                let mut acc = 0u64;
                let mut root = 1u64;
                for &cls in powers {
                    acc = (acc + mul_mod(modular[cls], root, q)) % q;
                    root = mul_mod(root, step, q);
                }
                let mult = mul_mod(acc, o_inv, q);
                if mult > degree {
                    return Err(Error::LiftingFailure(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree} at class {j}"
                    )));
                }
                total += mult;
                if mult != 0 {
                    terms.push(((k * (e / o)) as u32, BigInt::from(mult)));
                }
            }
            if total != degree {
                return Err(Error::LiftingFailure(format!(
                    "multiplicities at class {j} sum to {total}, not {degree}"
                )));
            }
            values.push(CycValue::from_powers(self.conductor, terms));
        }
        Character::new(Arc::clone(self.group), values)
    }
}
