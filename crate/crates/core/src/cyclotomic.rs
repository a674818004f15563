//! Exact arithmetic in the cyclotomic integer rings `Z[ζ_e]`.
//!
//! A value is stored in the power basis `1, ζ, .., ζ^(φ(e)-1)` after
//! reduction modulo the e-th cyclotomic polynomial, which makes the
//! coefficient vector a canonical form.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients of Φ_n, lowest degree first (monic, degree φ(n)).
pub fn cyclotomic_polynomial(n: u32) -> Arc<[i64]> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    assert!(n >= 1, "conductor must be positive");
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let div = cyclotomic_polynomial(d);
        poly = divide_monic(&poly, &div);
    }
    let poly: Arc<[i64]> = poly.into();
    cache.lock().unwrap().insert(n, Arc::clone(&poly));
    poly
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

pub fn euler_phi(n: u32) -> u32 {
    (cyclotomic_polynomial(n).len() - 1) as u32
}

/// An element of `Z[ζ_e]` in canonical reduced form.
#[derive(Clone)]
pub struct CycValue {
    conductor: u32,
    coeffs: Vec<BigInt>,
}

impl CycValue {
    pub fn zero(conductor: u32) -> Self {
        Self {
            conductor,
            coeffs: vec![BigInt::zero(); euler_phi(conductor) as usize],
        }
    }

    pub fn from_int(conductor: u32, n: impl Into<BigInt>) -> Self {
        let mut v = Self::zero(conductor);
        v.coeffs[0] = n.into();
        v
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_int(conductor, 1)
    }

    /// ζ_e^k.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let e = conductor as i64;
        Self::from_powers(conductor, [(k.rem_euclid(e) as u32, BigInt::one())])
    }

    /// Σ c·ζ_e^k over the given (k, c) pairs; exponents are taken mod e.
    pub fn from_powers<I>(conductor: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, BigInt)>,
    {
        let mut full = vec![BigInt::zero(); conductor as usize];
        for (k, c) in terms {
            full[(k % conductor) as usize] += c;
        }
        Self::reduce(conductor, full)
    }

    /// Builds from already-reduced power-basis coefficients.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<BigInt>) -> Option<Self> {
        (coeffs.len() == euler_phi(conductor) as usize).then_some(Self { conductor, coeffs })
    }

    fn reduce(conductor: u32, mut v: Vec<BigInt>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        for i in (deg..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[i]);
            for (j, &pj) in phi[..deg].iter().enumerate() {
                if pj != 0 {
                    v[i - deg + j] -= &c * pj;
                }
            }
        }
        v.resize(deg, BigInt::zero());
        Self {
            conductor,
            coeffs: v,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational_integer(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        self.is_rational_integer().then(|| &self.coeffs[0])
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    /// Image under ζ ↦ ζ^{-1}, i.e. complex conjugation.
    pub fn conj(&self) -> Self {
        let e = self.conductor;
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| ((e - k as u32) % e, c.clone()));
        Self::from_powers(e, terms)
    }

    /// Same element viewed in `Z[ζ_m]`; `m` must be a multiple of the conductor.
    pub fn rebase(&self, m: u32) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        assert!(
            m.is_multiple_of(self.conductor),
            "cannot rebase conductor {} to {m}",
            self.conductor
        );
        let step = m / self.conductor;
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32 * step, c.clone()));
        Self::from_powers(m, terms)
    }

    fn aligned<'a>(
        a: &'a Self,
        b: &'a Self,
    ) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.conductor == b.conductor {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else {
            let m = a.conductor.lcm(&b.conductor);
            (Cow::Owned(a.rebase(m)), Cow::Owned(b.rebase(m)))
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Division by a rational integer, if every coefficient is divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(Self {
            conductor: self.conductor,
            coeffs,
        })
    }

    /// Lexicographic comparison of coefficient vectors at a common conductor.
    pub fn cmp_coeffs(&self, other: &Self) -> Ordering {
        let (a, b) = Self::aligned(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialEq for CycValue {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycValue {}

impl Add for &CycValue {
    type Output = CycValue;

    fn add(self, rhs: &CycValue) -> CycValue {
        let (a, b) = CycValue::aligned(self, rhs);
        CycValue {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &CycValue {
    type Output = CycValue;

    fn sub(self, rhs: &CycValue) -> CycValue {
        let (a, b) = CycValue::aligned(self, rhs);
        CycValue {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Neg for &CycValue {
    type Output = CycValue;

    fn neg(self) -> CycValue {
        CycValue {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &CycValue {
    type Output = CycValue;

    fn mul(self, rhs: &CycValue) -> CycValue {
        let (a, b) = CycValue::aligned(self, rhs);
        let n = a.coeffs.len();
        if a.is_rational_integer() {
            return b.scale(&a.coeffs[0]);
        }
        if b.is_rational_integer() {
            return a.scale(&b.coeffs[0]);
        }
        let mut full = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        CycValue::reduce(a.conductor, full)
    }
}

impl Add for CycValue {
    type Output = CycValue;
    fn add(self, rhs: CycValue) -> CycValue {
        &self + &rhs
    }
}

impl Mul for CycValue {
    type Output = CycValue;
    fn mul(self, rhs: CycValue) -> CycValue {
        &self * &rhs
    }
}

/// GAP-style rendering, e.g. `1+2*E(8)^3`.
impl fmt::Display for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let root = match k {
                0 => String::new(),
                1 => format!("E({})", self.conductor),
                _ => format!("E({})^{k}", self.conductor),
            };
            if k == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&root)?;
            } else {
                write!(f, "{abs}*{root}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycValue[{}]({self})", self.conductor)
    }
}

/// Free-function form of [`CycValue::conj`].
pub fn cyc_conjugate(v: &CycValue) -> CycValue {
    v.conj()
}
