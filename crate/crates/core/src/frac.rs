//! Exact rationals used by every bound and verifier.

use num::{BigInt, BigRational, One, Zero};

pub type Frac = BigRational;

pub fn frac(p: i64, q: i64) -> Frac {
    Frac::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Frac {
    Frac::from_integer(BigInt::from(p))
}

/// Machine form: always `p/q`.
pub fn to_pq(x: &Frac) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q` or a bare integer.
pub fn parse_pq(s: &str) -> Option<Frac> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| Frac::new(p, q))
        }
        None => s.trim().parse::<BigInt>().ok().map(Frac::from_integer),
    }
}

/// Human form with four decimals.
pub fn to_decimal(x: &Frac) -> String {
    let scaled = (x * int(10_000)).round();
    let v = scaled.to_integer();
    let neg = v < BigInt::zero();
    let v = if neg { -v } else { v };
    let whole = &v / BigInt::from(10_000);
    let rest = &v % BigInt::from(10_000);
    format!(
        "{}{}.{:0>4}",
        if neg { "-" } else { "" },
        whole,
        rest.to_string()
    )
}

pub fn is_one(x: &Frac) -> bool {
    x.is_one()
}
