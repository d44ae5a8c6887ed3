//! The base discrete valuation ring `O = Z_(p)`.
//!
//! Elements of `O` are arbitrary-precision rationals whose denominator is
//! coprime to the chosen prime `p`. The uniformizer is `eps = p`, the residue
//! field is `kappa = F_p`, and the fraction field is `K = Q`. A [`Dvr`] value
//! carries the prime and implements the three primitive operations everything
//! else is built from: valuation, reduction to the residue field, and inverse
//! of a unit.
//!
//! Scalars are plain [`BigRational`]s; the "denominator coprime to `p`"
//! condition is an invariant of how they are produced, checked here at the
//! boundaries (`reduce` asserts it, `valuation` works for any rational and
//! reports possibly negative values on proper fractions of `K`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An exact scalar: an element of `K = Q`, usually lying in `O`.
pub type Scalar = BigRational;

/// Value of the `p`-adic valuation: an integer or `+infinity` (for 0).
///
/// The derived ordering places every finite value below [`Valuation::Infinity`]
/// because the variants are declared in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    /// `v_p(x)` for `x != 0`; negative values occur only for proper elements
    /// of the fraction field, never for elements of `O`.
    Finite(i64),
    /// The valuation of zero.
    Infinity,
}

impl Valuation {
    /// The finite value, if any.
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    /// True for the valuation of a unit of `O`.
    pub fn is_zero(self) -> bool {
        self == Valuation::Finite(0)
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

/// The ring context: a prime `p` fixing `O = Z_(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dvr {
    p: u64,
    p_big: BigInt,
}

impl Dvr {
    /// Creates the localization of `Z` at a prime `p`.
    ///
    /// Fails with [`Error::InvalidConfig`] when `p` is not prime.
    pub fn new(p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::InvalidConfig(format!("p = {p} is not prime")));
        }
        Ok(Dvr {
            p,
            p_big: BigInt::from(p),
        })
    }

    /// The residue characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The uniformizer `eps = p` as a scalar.
    pub fn eps(&self) -> Scalar {
        BigRational::from_integer(self.p_big.clone())
    }

    /// `eps^k` as a scalar, for any integer exponent.
    pub fn eps_pow(&self, k: i64) -> Scalar {
        let pw = self.p_big.pow(k.unsigned_abs() as u32);
        if k >= 0 {
            BigRational::from_integer(pw)
        } else {
            BigRational::new(BigInt::one(), pw)
        }
    }

    /// `v_p(n)` of a nonzero integer.
    fn int_valuation(&self, n: &BigInt) -> i64 {
        debug_assert!(!n.is_zero());
        let mut v = 0i64;
        let mut n = n.abs();
        loop {
            let (q, r) = n.div_rem(&self.p_big);
            if !r.is_zero() {
                return v;
            }
            v += 1;
            n = q;
        }
    }

    /// The `p`-adic valuation of any rational (negative on proper fractions
    /// of `K`, `+infinity` on zero).
    pub fn valuation(&self, x: &Scalar) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinity;
        }
        Valuation::Finite(self.int_valuation(x.numer()) - self.int_valuation(x.denom()))
    }

    /// True when `x` lies in `O` (valuation at least zero).
    pub fn is_integral(&self, x: &Scalar) -> bool {
        match self.valuation(x) {
            Valuation::Finite(v) => v >= 0,
            Valuation::Infinity => true,
        }
    }

    /// True when `x` is a unit of `O`.
    pub fn is_unit(&self, x: &Scalar) -> bool {
        self.valuation(x).is_zero()
    }

    /// Image of `x` in the residue field `kappa = F_p`, as a canonical
    /// representative in `0..p`.
    ///
    /// # Panics
    /// If `x` does not lie in `O` (this indicates a bug in the caller, not
    /// bad user input: every public entry point produces integral scalars).
    pub fn reduce(&self, x: &Scalar) -> u64 {
        assert!(
            self.is_integral(x),
            "reduce called on non-integral scalar {x}"
        );
        let num = x.numer().mod_floor(&self.p_big);
        let den = x.denom().mod_floor(&self.p_big);
        let num: u64 = num.try_into().expect("residue fits in u64");
        let den: u64 = den.try_into().expect("residue fits in u64");
        // den is coprime to p because x is integral.
        mulmod(num, inv_mod(den, self.p), self.p)
    }

    /// Exact inverse of a unit of `O`.
    ///
    /// Fails with [`Error::NotAUnit`] when `v_p(x) != 0`.
    pub fn unit_inverse(&self, x: &Scalar) -> Result<Scalar, Error> {
        if !self.is_unit(x) {
            return Err(Error::NotAUnit {
                value: x.to_string(),
                p: self.p,
            });
        }
        Ok(x.recip())
    }

    /// Lifts a residue-field element to the scalar `r` with `0 <= r < p`.
    pub fn lift(&self, r: u64) -> Scalar {
        debug_assert!(r < self.p);
        BigRational::from_integer(BigInt::from(r))
    }

    /// Canonical integral representative of `x mod eps^k`, as an integer
    /// scalar in `0..p^k`. Replacing `x` by this value changes it by an
    /// element of `eps^k O`.
    pub fn reduce_mod_power(&self, x: &Scalar, k: u32) -> Scalar {
        debug_assert!(self.is_integral(x));
        let modulus = self.p_big.pow(k);
        let num = x.numer().mod_floor(&modulus);
        let den = x.denom().mod_floor(&modulus);
        // Invert the denominator modulo p^k (it is coprime to p).
        let inv = modinv_big(&den, &modulus);
        BigRational::from_integer((num * inv).mod_floor(&modulus))
    }

    /// Recovers the unique element `a/b` of `O` congruent to `x` modulo
    /// `eps^k` with `|a|, b <= sqrt(p^k / 2)`, if one exists (Wang's
    /// rational reconstruction, by the half-extended Euclidean algorithm on
    /// the canonical residue). Returns `None` when no element of `O` in that
    /// height range matches; the result is always verified by an exact
    /// congruence check before being returned.
    pub fn rational_reconstruct(&self, x: &Scalar, k: u32) -> Option<Scalar> {
        let modulus = self.p_big.pow(k);
        let num = x.numer().mod_floor(&modulus);
        let den = x.denom().mod_floor(&modulus);
        let inv = modinv_big(&den, &modulus);
        let residue = (num * inv).mod_floor(&modulus);
        let bound = num_integer::sqrt(&modulus / BigInt::from(2));
        let (mut r_prev, mut r_cur) = (modulus.clone(), residue);
        let (mut t_prev, mut t_cur) = (BigInt::zero(), BigInt::one());
        while r_cur > bound {
            if r_cur.is_zero() {
                return None;
            }
            let q = &r_prev / &r_cur;
            let r_next = &r_prev - &q * &r_cur;
            let t_next = &t_prev - &q * &t_cur;
            r_prev = std::mem::replace(&mut r_cur, r_next);
            t_prev = std::mem::replace(&mut t_cur, t_next);
        }
        if t_cur.is_zero() || t_cur.abs() > bound {
            return None;
        }
        let (a, b) = if t_cur.is_negative() {
            (-r_cur, -t_cur)
        } else {
            (r_cur, t_cur)
        };
        if b.gcd(&self.p_big) != BigInt::one() {
            return None;
        }
        let candidate = BigRational::new(a, b);
        if !self.is_integral(&candidate) {
            return None;
        }
        // Exact check: the candidate must reproduce x modulo eps^k.
        match self.valuation(&(&candidate - x)) {
            Valuation::Infinity => Some(candidate),
            Valuation::Finite(v) if v >= k as i64 => Some(candidate),
            _ => None,
        }
    }
}

/// Modular inverse for `u64` residues (modulus prime).
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverting 0 mod {p}");
    // Extended Euclid on i128 to dodge overflow.
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i128) as u64
}

/// Modular multiplication safe for moduli up to 2^63.
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse for big integers coprime to the modulus.
fn modinv_big(a: &BigInt, modulus: &BigInt) -> BigInt {
    let e = a.extended_gcd(modulus);
    debug_assert!(e.gcd.is_one(), "modinv of non-coprime input");
    e.x.mod_floor(modulus)
}

/// Deterministic primality test good far beyond any plausible `p`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // Deterministic Miller-Rabin bases for the full u64 range.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        let mut r = d;
        while r != n - 1 {
            x = mulmod(x, x, n);
            r <<= 1;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Parses an exact scalar from a string: either an integer or `a/b`.
pub fn parse_scalar(s: &str) -> Result<Scalar, Error> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("invalid exact scalar: {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| mk_err())?;
        let den: BigInt = b.trim().parse().map_err(|_| mk_err())?;
        if den.is_zero() {
            return Err(mk_err());
        }
        Ok(BigRational::new(num, den))
    } else {
        let num: BigInt = s.parse().map_err(|_| mk_err())?;
        Ok(BigRational::from_integer(num))
    }
}

/// Renders a scalar as `a` or `a/b` (exact, canonical form).
pub fn scalar_to_string(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
