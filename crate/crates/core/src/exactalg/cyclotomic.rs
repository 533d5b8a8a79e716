//! Exact arithmetic in the cyclotomic field Q(zeta_t), power basis modulo Phi_t.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low degree first) of the t-th cyclotomic polynomial.
///
/// Computed as (x^t - 1) divided by Phi_d for every proper divisor d of t.
pub fn cyclotomic_polynomial(t: u32) -> Arc<Vec<BigInt>> {
    assert!(t >= 1, "cyclotomic order must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&t) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); t as usize + 1];
    num[0] = -BigInt::one();
    num[t as usize] = BigInt::one();
    for d in 1..t {
        if t.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_monic_div(&num, &div);
        }
    }
    let p = Arc::new(num);
    cyclotomic_cache().lock().unwrap().insert(t, p.clone());
    p
}

// Quotient of `num` by the monic `den`; the remainder must vanish.
fn exact_monic_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient.
pub fn euler_phi(t: u32) -> u32 {
    (1..=t).filter(|k| k.gcd(&t) == 1).count() as u32
}

/// An element of Q(zeta_t) in the power basis 1, zeta, ..., zeta^(phi(t)-1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    t: u32,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero(t: u32) -> Self {
        CycNum { t, coeffs: vec![BigRational::zero(); euler_phi(t) as usize] }
    }

    pub fn one(t: u32) -> Self {
        Self::from_integer(t, BigInt::one())
    }

    pub fn from_integer(t: u32, n: BigInt) -> Self {
        Self::from_rational(t, BigRational::from_integer(n))
    }

    pub fn from_rational(t: u32, q: BigRational) -> Self {
        let mut z = Self::zero(t);
        z.coeffs[0] = q;
        z
    }

    /// zeta^k for any integer k.
    pub fn zeta_pow(t: u32, k: i64) -> Self {
        let e = k.rem_euclid(t as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        cyc_reduce(t, &poly)
    }

    pub fn order(&self) -> u32 {
        self.t
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one(self.t)
    }

    /// Image under the Galois automorphism zeta -> zeta^a, gcd(a, t) = 1.
    pub fn galois(&self, a: u32) -> Self {
        let mut acc = Self::zero(self.t);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = Self::zeta_pow(self.t, (j as i64) * (a as i64)).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CycNum { t: self.t, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.t);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.t, other.t, "cyclotomic orders differ");
    }
}

/// Canonical representative of a polynomial in zeta modulo Phi_t.
pub fn cyc_reduce(t: u32, poly: &[BigRational]) -> CycNum {
    let phi = cyclotomic_polynomial(t);
    let deg = phi.len() - 1;
    let mut rem: Vec<BigRational> = poly.to_vec();
    if rem.len() > deg {
        for i in (deg..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate() {
                let idx = i - deg + j;
                rem[idx] -= &c * BigRational::from_integer(pj.clone());
            }
        }
        rem.truncate(deg);
    }
    rem.resize(deg, BigRational::zero());
    CycNum { t, coeffs: rem }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.check(rhs);
        CycNum {
            t: self.t,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.check(rhs);
        CycNum {
            t: self.t,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.check(rhs);
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        cyc_reduce(self.t, &prod)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { t: self.t, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if wrote {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            match j {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if j == 1 {
                        write!(f, "zeta")?;
                    } else {
                        write!(f, "zeta^{}", j)?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
