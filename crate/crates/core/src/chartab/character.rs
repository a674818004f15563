use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::cyclotomic::CycValue;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A class function on a group, one value per conjugacy class in the
/// group's canonical class order.
#[derive(Clone)]
pub struct Character {
    group: Arc<PermGroup>,
    values: Vec<CycValue>,
}

impl Character {
    pub fn new(group: Arc<PermGroup>, values: Vec<CycValue>) -> Result<Self> {
        if values.len() != group.classes().len() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} classes",
                values.len(),
                group.classes().len()
            )));
        }
        Ok(Self { group, values })
    }

    pub fn principal(group: &Arc<PermGroup>) -> Self {
        let e = group.exponent() as u32;
        let values = vec![CycValue::one(e); group.classes().len()];
        Self {
            group: Arc::clone(group),
            values,
        }
    }

    /// The regular character: |G| at the identity, 0 elsewhere.
    pub fn regular(group: &Arc<PermGroup>) -> Self {
        let e = group.exponent() as u32;
        let mut values = vec![CycValue::zero(e); group.classes().len()];
        values[0] = CycValue::from_int(e, group.order() as i64);
        Self {
            group: Arc::clone(group),
            values,
        }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CycValue] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycValue {
        &self.values[class]
    }

    /// Value at an arbitrary element of the group.
    pub fn at(&self, g: &Permutation) -> Result<&CycValue> {
        let k = self.group.class_of(g).ok_or(Error::ElementNotInGroup)?;
        Ok(&self.values[k])
    }

    /// χ(1) as an integer; `None` if the identity value is not a non-negative integer.
    pub fn degree(&self) -> Option<u64> {
        self.values[0].as_integer().and_then(|d| d.to_u64())
    }

    pub fn is_linear(&self) -> bool {
        self.degree() == Some(1)
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.conj() == *v)
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|v| v.as_i64() == Some(1))
    }

    pub fn same_group(&self, other: &Character) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || PermGroup::same_group(&self.group, &other.group)
    }

    /// Canonical order: degree ascending, then coefficient vectors class by
    /// class in descending lexicographic order (puts the principal
    /// character first among characters of equal degree).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.values[0].cmp_coeffs(&other.values[0]).then_with(|| {
            for (a, b) in self.values.iter().zip(&other.values).skip(1) {
                match b.cmp_coeffs(a) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.values == other.values
    }
}

impl Eq for Character {}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Complete list of irreducible characters in canonical order.
#[derive(Clone)]
pub struct CharTable {
    group: Arc<PermGroup>,
    prime: u64,
    irreducibles: Vec<Character>,
}

impl CharTable {
    pub(crate) fn from_parts(
        group: Arc<PermGroup>,
        prime: u64,
        mut irreducibles: Vec<Character>,
    ) -> Self {
        irreducibles.sort_by(Character::canonical_cmp);
        Self {
            group,
            prime,
            irreducibles,
        }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    /// The finite-field prime the table was computed with.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn get(&self, i: usize) -> Option<&Character> {
        self.irreducibles.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Character> {
        self.irreducibles.iter()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles
            .iter()
            .map(|c| {
                c.degree()
                    .expect("irreducible degrees are positive integers")
            })
            .collect()
    }

    pub fn index_of(&self, chi: &Character) -> Option<usize> {
        self.irreducibles.iter().position(|c| c == chi)
    }

    /// Index of the complex conjugate of irreducible `i`.
    pub fn conjugate_index(&self, i: usize) -> usize {
        let conj = crate::charops::conjugate_character(&self.irreducibles[i]);
        self.index_of(&conj)
            .expect("conjugate of an irreducible is irreducible")
    }
}

impl std::ops::Index<usize> for CharTable {
    type Output = Character;

    fn index(&self, i: usize) -> &Character {
        &self.irreducibles[i]
    }
}
