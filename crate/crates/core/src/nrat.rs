//! Exact arithmetic in the ring `Z[1/n]`.
//!
//! Every value is stored as `k / n^p` with `p >= 0`, reduced so that either
//! `p == 0` or `n` does not divide `k`. That reduced form is unique, so
//! structural equality is value equality.
//!
//! ```
//! use bs1n::NRational;
//!
//! let half = NRational::new(1, 1, 2).unwrap();
//! assert_eq!(&half + &half, NRational::new(1, 0, 2).unwrap());
//! assert_eq!(NRational::new(4, 2, 2).unwrap().to_string(), "1");
//! assert_eq!(NRational::new(6, 1, 4).unwrap().to_string(), "6/n^1");
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, Error, Result};

pub(crate) fn check_n(n: i64) -> Result<()> {
    if n.unsigned_abs() < 2 {
        Err(Error::InvalidN(n))
    } else {
        Ok(())
    }
}

/// `n^e` as a big integer.
pub fn pow_n(n: i64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(n), e as usize)
}

pub(crate) fn exp_u32(e: i64) -> u32 {
    u32::try_from(e).expect("exponent of n out of range")
}

/// An element `k / n^p` of `Z[1/n]` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NRational {
    num: BigInt,
    exp: u32,
    n: i64,
}

impl NRational {
    /// Builds `k / n^p` and reduces it.
    pub fn new(k: impl Into<BigInt>, p: u32, n: i64) -> Result<Self> {
        check_n(n)?;
        Ok(Self::reduce(k.into(), p, n))
    }

    pub fn integer(k: impl Into<BigInt>, n: i64) -> Result<Self> {
        Self::new(k, 0, n)
    }

    pub fn zero(n: i64) -> Result<Self> {
        Self::new(0, 0, n)
    }

    pub fn one(n: i64) -> Result<Self> {
        Self::new(1, 0, n)
    }

    /// Caller guarantees `|n| >= 2`.
    pub(crate) fn reduce(mut num: BigInt, mut exp: u32, n: i64) -> Self {
        if num.is_zero() {
            return NRational { num, exp: 0, n };
        }
        let nb = BigInt::from(n);
        while exp > 0 {
            let (q, r) = num.div_rem(&nb);
            if !r.is_zero() {
                break;
            }
            num = q;
            exp -= 1;
        }
        NRational { num, exp, n }
    }

    pub(crate) fn int_unchecked(k: impl Into<BigInt>, n: i64) -> Self {
        NRational {
            num: k.into(),
            exp: 0,
            n,
        }
    }

    /// The numerator `k` of `k / n^p`.
    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    /// The exponent `p` of the denominator `n^p`.
    pub fn exp(&self) -> u32 {
        self.exp
    }

    /// The ambient group parameter `n`.
    pub fn base(&self) -> i64 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0 && self.num.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }

    /// The same value as an ordinary rational number.
    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(self.num.clone(), pow_n(self.n, self.exp))
    }

    fn same_base(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "Z[1/n] arithmetic across different values of n"
        );
    }

    /// Multiplies by `n^c`, where `c` may be negative.
    pub fn scale_pow(&self, c: i64) -> Self {
        if self.is_zero() || c == 0 {
            return self.clone();
        }
        if c > 0 {
            let c = exp_u32(c);
            if c <= self.exp {
                // n does not divide num, so this stays reduced
                NRational {
                    num: self.num.clone(),
                    exp: self.exp - c,
                    n: self.n,
                }
            } else {
                NRational {
                    num: &self.num * pow_n(self.n, c - self.exp),
                    exp: 0,
                    n: self.n,
                }
            }
        } else {
            let e = self
                .exp
                .checked_add(exp_u32(-c))
                .expect("exponent of n out of range");
            Self::reduce(self.num.clone(), e, self.n)
        }
    }

    /// Multiplies by the integer `k`.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::reduce(&self.num * k, self.exp, self.n)
    }

    /// Exact quotient, if it lies in `Z[1/n]`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        self.same_base(other);
        if other.is_zero() {
            return None;
        }
        // (k1 / n^p1) / (k2 / n^p2) = k1 n^p2 / (k2 n^p1)
        let top = &self.num * pow_n(self.n, other.exp);
        let bottom = &other.num * pow_n(self.n, self.exp);
        let g = top.gcd(&bottom);
        let (mut p, mut q) = (top / &g, bottom / &g);
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        // q must divide some power of n
        let nb = BigInt::from(self.n);
        let mut rest = q.clone();
        loop {
            let g = rest.gcd(&nb);
            if g.is_one() {
                break;
            }
            while (&rest % &g).is_zero() {
                rest /= &g;
            }
        }
        if !rest.is_one() {
            return None;
        }
        let mut e = 0u32;
        let mut pw = BigInt::one();
        while !(&pw % &q).is_zero() {
            pw *= &nb;
            e += 1;
        }
        Some(Self::reduce(p * (pw / q), e, self.n))
    }

    /// Parses `INT` or `INT/n^UINT`, e.g. `3` or `-5/n^2`.
    pub fn parse(text: &str, n: i64) -> Result<Self> {
        check_n(n)?;
        parse_rat_at(text, 0, n)
    }
}

pub(crate) fn parse_rat_at(text: &str, offset: usize, n: i64) -> Result<NRational> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    let body = trimmed.trim_end();
    let pos = offset + lead;
    if body.is_empty() {
        return Err(parse_err(pos, "expected a rational literal"));
    }
    let (num_txt, den_txt) = match body.find('/') {
        Some(i) => (&body[..i], Some((i, &body[i + 1..]))),
        None => (body, None),
    };
    let num = parse_int(num_txt.trim_end(), pos)?;
    let exp = match den_txt {
        None => 0,
        Some((i, den)) => {
            let den_pos = pos + i + 1;
            let den_trim = den.trim_start();
            let den_pos = den_pos + (den.len() - den_trim.len());
            let rest = den_trim
                .strip_prefix("n^")
                .ok_or_else(|| parse_err(den_pos, "expected `n^` after `/`"))?;
            let rest = rest.trim();
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_err(den_pos + 2, "expected an unsigned exponent"));
            }
            rest.parse::<u32>()
                .map_err(|_| parse_err(den_pos + 2, "exponent too large"))?
        }
    };
    Ok(NRational::reduce(num, exp, n))
}

pub(crate) fn parse_int(text: &str, pos: usize) -> Result<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(pos, format!("expected an integer, found `{text}`")));
    }
    text.parse::<BigInt>()
        .map_err(|_| parse_err(pos, format!("expected an integer, found `{text}`")))
}

impl fmt::Display for NRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/n^{}", self.num, self.exp)
        }
    }
}

impl Add for &NRational {
    type Output = NRational;

    fn add(self, rhs: &NRational) -> NRational {
        self.same_base(rhs);
        let exp = self.exp.max(rhs.exp);
        let left = &self.num * pow_n(self.n, exp - self.exp);
        let right = &rhs.num * pow_n(self.n, exp - rhs.exp);
        NRational::reduce(left + right, exp, self.n)
    }
}

impl Sub for &NRational {
    type Output = NRational;

    fn sub(self, rhs: &NRational) -> NRational {
        self + &(-rhs)
    }
}

impl Mul for &NRational {
    type Output = NRational;

    fn mul(self, rhs: &NRational) -> NRational {
        self.same_base(rhs);
        let exp = self
            .exp
            .checked_add(rhs.exp)
            .expect("exponent of n out of range");
        NRational::reduce(&self.num * &rhs.num, exp, self.n)
    }
}

impl Neg for &NRational {
    type Output = NRational;

    fn neg(self) -> NRational {
        NRational {
            num: -&self.num,
            exp: self.exp,
            n: self.n,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for NRational {
            type Output = NRational;
            fn $m(self, rhs: NRational) -> NRational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&NRational> for NRational {
            type Output = NRational;
            fn $m(self, rhs: &NRational) -> NRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for NRational {
    type Output = NRational;

    fn neg(self) -> NRational {
        -&self
    }
}

/// The geometric coefficient `(n^{rc} - 1) / (n^c - 1)` as an element of
/// `Z[1/n]`, extended by its limit value `r` at `c = 0`.
///
/// It is the `a`-exponent of `(a t^c)^r`.
///
/// # Panics
///
/// If `|n| < 2`.
pub fn geom(c: i64, r: i64, n: i64) -> NRational {
    check_n(n).expect("geom needs |n| >= 2");
    if c == 0 {
        return NRational::int_unchecked(r, n);
    }
    if r == 0 {
        return NRational::int_unchecked(0, n);
    }
    if r < 0 {
        // (n^{rc} - 1)/(n^c - 1) = -n^{rc} (n^{-rc} - 1)/(n^c - 1)
        let positive = geom(c, -r, n);
        return -(positive.scale_pow(r.checked_mul(c).expect("exponent overflow")));
    }
    if c > 0 {
        let top = pow_n(n, exp_u32(r.checked_mul(c).expect("exponent overflow"))) - 1;
        let bottom = pow_n(n, exp_u32(c)) - 1;
        return NRational::int_unchecked(top / bottom, n);
    }
    // sum_{i<r} n^{-im} = geom(m, r) / n^{(r-1)m}
    let m = -c;
    let shifted = geom(m, r, n);
    shifted.scale_pow(-(r - 1).checked_mul(m).expect("exponent overflow"))
}
