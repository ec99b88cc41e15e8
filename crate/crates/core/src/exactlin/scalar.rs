use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinAlgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Rational,
    Prime(u64),
}

/// The ground field: either ℚ or 𝔽_p for a verified prime `p`.
///
/// A `Field` is the only way to mint constants, so every scalar built through
/// it lives in a single, consistent field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field(Kind);

impl Field {
    pub const fn rational() -> Self {
        Field(Kind::Rational)
    }

    /// The prime field 𝔽_p. Rejects `p` that is not prime.
    pub fn prime(p: u64) -> Result<Self, LinAlgError> {
        if is_prime(p) {
            Ok(Field(Kind::Prime(p)))
        } else {
            Err(LinAlgError::NotPrime(p))
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.0, Kind::Rational)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Kind::Rational => None,
            Kind::Prime(p) => Some(p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.0 {
            Kind::Rational => Scalar(Repr::Rational(BigRational::from_integer(BigInt::from(n)))),
            Kind::Prime(p) => Scalar(Repr::Residue {
                value: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            }),
        }
    }

    fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.0 {
            Kind::Rational => Scalar(Repr::Rational(BigRational::from_integer(n.clone()))),
            Kind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                let value = u64::try_from(r).expect("residue fits in u64");
                Scalar(Repr::Residue { value, modulus: p })
            }
        }
    }

    /// Builds `numer / denom`. Fails on a zero denominator, or when `p` divides
    /// the denominator in 𝔽_p.
    pub fn from_ratio(&self, numer: &BigInt, denom: &BigInt) -> Result<Scalar, LinAlgError> {
        if denom.is_zero() {
            return Err(LinAlgError::ParseScalar(format!("{numer}/0")));
        }
        match self.0 {
            Kind::Rational => Ok(Scalar(Repr::Rational(BigRational::new(
                numer.clone(),
                denom.clone(),
            )))),
            Kind::Prime(_) => {
                let d = self.from_bigint(denom);
                let inv = d.inv().ok_or_else(|| {
                    LinAlgError::ParseScalar(format!(
                        "denominator {denom} vanishes in characteristic {}",
                        self.characteristic()
                    ))
                })?;
                Ok(self.from_bigint(numer) * inv)
            }
        }
    }

    /// Parses `"n"` or `"n/d"` (optional sign, arbitrary size) into this field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, LinAlgError> {
        let bad = || LinAlgError::ParseScalar(text.to_string());
        let text = text.trim();
        let (numer, denom) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        if numer.is_empty() || denom.is_empty() || denom.starts_with(['-', '+']) {
            return Err(bad());
        }
        let numer = BigInt::from_str(numer).map_err(|_| bad())?;
        let denom = BigInt::from_str(denom).map_err(|_| bad())?;
        self.from_ratio(&numer, &denom)
    }

    /// Does `s` belong to this field?
    pub fn contains(&self, s: &Scalar) -> bool {
        match (&self.0, &s.0) {
            (Kind::Rational, Repr::Rational(_)) => true,
            (Kind::Prime(p), Repr::Residue { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Rational => write!(f, "rational"),
            Kind::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = LinAlgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "rational" {
            return Ok(Field::rational());
        }
        match s.strip_prefix("prime:").map(|p| p.trim().parse::<u64>()) {
            Some(Ok(p)) => Field::prime(p),
            _ => Err(LinAlgError::UnknownField(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// An exact field element: a reduced fraction, or a residue modulo a prime.
///
/// Arithmetic between scalars of different fields is a programming error and
/// panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Rational(_) => Field::rational(),
            Repr::Residue { modulus, .. } => Field(Kind::Prime(*modulus)),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Residue { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(*value),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(q.recip())),
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
        })
    }

    /// Bit-size of the stored representation. Elimination prefers pivots of
    /// small height; every nonzero residue has height 1.
    pub fn height(&self) -> u64 {
        match &self.0 {
            Repr::Rational(q) => q.numer().bits() + q.denom().bits(),
            Repr::Residue { value, .. } => u64::from(*value != 0),
        }
    }

    pub fn abs_is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.abs().is_one(),
            Repr::Residue { value, modulus } => *value == 1 || *value + 1 == *modulus,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Repr::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &Repr, b: &Repr) -> ! {
    panic!("scalar arithmetic across fields: {a:?} vs {b:?}")
}

fn add_repr(a: &Repr, b: &Repr) -> Repr {
    match (a, b) {
        (Repr::Rational(x), Repr::Rational(y)) => Repr::Rational(x + y),
        (Repr::Residue { value: x, modulus: p }, Repr::Residue { value: y, modulus: q }) if p == q => {
            Repr::Residue { value: ((*x as u128 + *y as u128) % *p as u128) as u64, modulus: *p }
        }
        _ => mismatch(a, b),
    }
}

fn sub_repr(a: &Repr, b: &Repr) -> Repr {
    match (a, b) {
        (Repr::Rational(x), Repr::Rational(y)) => Repr::Rational(x - y),
        (Repr::Residue { value: x, modulus: p }, Repr::Residue { value: y, modulus: q }) if p == q => {
            Repr::Residue { value: ((*x as u128 + *p as u128 - *y as u128) % *p as u128) as u64, modulus: *p }
        }
        _ => mismatch(a, b),
    }
}

fn mul_repr(a: &Repr, b: &Repr) -> Repr {
    match (a, b) {
        (Repr::Rational(x), Repr::Rational(y)) => Repr::Rational(x * y),
        (Repr::Residue { value: x, modulus: p }, Repr::Residue { value: y, modulus: q }) if p == q => {
            Repr::Residue { value: mul_mod(*x, *y, *p), modulus: *p }
        }
        _ => mismatch(a, b),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($f(&self.0, &rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($f(&self.0, &rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($f(&self.0, &rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($f(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add, add_repr);
forward_binop!(Sub, sub, sub_repr);
forward_binop!(Mul, mul, mul_repr);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(match &self.0 {
            Repr::Rational(q) => Repr::Rational(-q),
            Repr::Residue { value, modulus } => Repr::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        })
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; these witnesses cover all of `u64`.
pub(crate) fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
