//! Exact rational scalars used throughout: `Rat` is an arbitrary-precision
//! fraction, serialized as "p/q".

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn to_i64(r: &Rat) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::Parse(format!("{} is not an integer", format_rat(r))));
    }
    r.to_integer()
        .to_i64()
        .ok_or_else(|| Error::CapacityOverflow(format!("{} exceeds i64", format_rat(r))))
}

/// Canonical reduced "p/q" form, denominator always explicit.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts "p/q", plain integers, and decimal/scientific notation ("1e-3", "0.25").
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(p, q));
    }
    // decimal / scientific
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let e: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (m, e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let negative = int_part.starts_with('-');
    let digits: String = int_part
        .trim_start_matches(['+', '-'])
        .chars()
        .chain(frac_part.chars())
        .collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad rational {s:?}")));
    }
    let mut numer: BigInt = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if negative {
        numer = -numer;
    }
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let pow = num::pow::pow(ten, shift.unsigned_abs() as usize);
    Ok(if shift >= 0 {
        Rat::from_integer(numer * pow)
    } else {
        Rat::new(numer, pow)
    })
}

/// Nearest integer, exact halves to the even neighbour.
pub fn round_nearest(r: &Rat) -> BigInt {
    if *r.denom() == BigInt::from(2) {
        let below = r.floor().to_integer();
        return if below.is_even() { below } else { below + 1 };
    }
    r.round().to_integer()
}

pub fn round_nearest_i64(r: &Rat) -> Result<i64> {
    round_nearest(r)
        .to_i64()
        .ok_or_else(|| Error::CapacityOverflow(format!("rounded {} exceeds i64", format_rat(r))))
}

/// lcm of the denominators: the smallest positive scale making every value integral.
pub fn lcm_denoms<'a>(vals: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::one();
    for v in vals {
        acc = acc.lcm(v.denom());
    }
    acc
}
