//! Exact rational scalars and small 2D/3D point types.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Q {
    qr(1, 2)
}

/// Parses `"p/q"` or an integer. Rejects zero denominators.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| format!("bad numerator in {s:?}"))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Q::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|_| format!("bad rational {s:?}"))?;
        Ok(Q::from_integer(n))
    }
}

/// Reduced `p/q`, or `p` when the denominator is one.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(0.0)
}

pub fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P2 {
    pub x: Q,
    pub y: Q,
}

impl P2 {
    pub fn new(x: Q, y: Q) -> Self {
        P2 { x, y }
    }

    pub fn sub(&self, o: &P2) -> P2 {
        P2::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &P2) -> P2 {
        P2::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, t: &Q) -> P2 {
        P2::new(&self.x * t, &self.y * t)
    }

    pub fn cross(&self, o: &P2) -> Q {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &P2) -> Q {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn lerp(&self, o: &P2, t: &Q) -> P2 {
        self.add(&o.sub(self).scale(t))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P3 {
    pub x: Q,
    pub y: Q,
    pub z: Q,
}

impl P3 {
    pub fn new(x: Q, y: Q, z: Q) -> Self {
        P3 { x, y, z }
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Self {
        P3::new(q(x), q(y), q(z))
    }

    pub fn sub(&self, o: &P3) -> P3 {
        P3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }

    pub fn add(&self, o: &P3) -> P3 {
        P3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }

    pub fn scale(&self, t: &Q) -> P3 {
        P3::new(&self.x * t, &self.y * t, &self.z * t)
    }

    pub fn cross(&self, o: &P3) -> P3 {
        P3::new(
            &self.y * &o.z - &self.z * &o.y,
            &self.z * &o.x - &self.x * &o.z,
            &self.x * &o.y - &self.y * &o.x,
        )
    }

    pub fn dot(&self, o: &P3) -> Q {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn lerp(&self, o: &P3, t: &Q) -> P3 {
        self.add(&o.sub(self).scale(t))
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }

    /// Projection onto the rail plane, coordinates `(x, z)`.
    pub fn rail_plane(&self) -> P2 {
        P2::new(self.x.clone(), self.z.clone())
    }

    /// Projection onto the plane perpendicular to the rails, coordinates `(x, y)`.
    pub fn perpendicular(&self) -> P2 {
        P2::new(self.x.clone(), self.y.clone())
    }
}

impl fmt::Display for P3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", fmt_q(&self.x), fmt_q(&self.y), fmt_q(&self.z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("1/2").unwrap(), half());
        assert_eq!(parse_q("-4/8").unwrap(), qr(-1, 2));
        assert_eq!(fmt_q(&parse_q("6/3").unwrap()), "2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
