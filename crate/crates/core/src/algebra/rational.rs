use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

/// Formats as `"num/den"`, dropping the denominator when it is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Accepts `"p/q"`, integers and plain decimals such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int = int.trim_start_matches(['-', '+']);
        let digits: BigInt = format!("{}{frac}", if int.is_empty() { "0" } else { int })
            .parse()
            .map_err(|_| bad())?;
        let q = Rational::new(digits, BigInt::from(10).pow(frac.len() as u32));
        return Ok(if neg { -q } else { q });
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Square root in ℚ, if there is one.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}


/// Serde glue: rationals are read from `"p/q"` strings, decimals or JSON numbers.
pub(crate) mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::Deserialize;

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Repr {
        Int(i64),
        Float(f64),
        Str(String),
    }

    impl Repr {
        pub(crate) fn into_rational(self) -> Result<Rational, String> {
            match self {
                Repr::Int(n) => Ok(Rational::from_integer(n.into())),
                Repr::Float(f) if f.is_finite() => {
                    // Shortest round-trip decimal, so 0.1 reads as 1/10.
                    parse_rational(&format!("{f}")).map_err(|e| e.to_string())
                }
                Repr::Float(f) => Err(format!("not a finite number: {f}")),
                Repr::Str(s) => parse_rational(&s).map_err(|e| e.to_string()),
            }
        }
    }
}
