//! Exact arithmetic: arbitrary-precision rationals and the quadratic
//! extension Q(sqrt(d)) needed for circle/line intersection points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exact rational coordinate/weight type. Always stored in lowest terms with
/// a positive denominator (`BigRational` maintains both).
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q", plain integers, and decimal strings exactly.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        if frac.is_empty() {
            return Some(Rat::from_integer(int));
        }
        let digits: BigInt = frac.parse().ok()?;
        if digits.is_negative() {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = Rat::new(digits, scale);
        let whole = Rat::from_integer(int);
        return Some(if neg { whole - frac_part } else { whole + frac_part });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(n))
}

/// Renders a rational canonically as "p" or "p/q".
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// An element a + b*sqrt(d) of Q(sqrt(d)), d >= 0 rational.
///
/// Rational values are represented with b = 0, d = 0 and coerce freely into
/// any radicand. Mixing two distinct non-zero radicands in field operations
/// is a logic error; comparisons across radicands are supported separately.
#[derive(Clone, Debug)]
pub struct Quad {
    pub a: Rat,
    pub b: Rat,
    pub d: Rat,
}

impl Quad {
    pub fn from_rat(a: Rat) -> Self {
        Quad { a, b: Rat::zero(), d: Rat::zero() }
    }

    pub fn zero() -> Self {
        Quad::from_rat(Rat::zero())
    }

    pub fn new(a: Rat, b: Rat, d: Rat) -> Self {
        debug_assert!(!d.is_negative());
        if b.is_zero() || d.is_zero() {
            Quad::from_rat(a)
        } else {
            Quad { a, b, d }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn unify(x: &Quad, y: &Quad) -> Rat {
        match (x.is_rational(), y.is_rational()) {
            (true, true) => Rat::zero(),
            (false, true) => x.d.clone(),
            (true, false) => y.d.clone(),
            (false, false) => {
                assert_eq!(x.d, y.d, "mixed radicands in Quad arithmetic");
                x.d.clone()
            }
        }
    }

    pub fn add(&self, o: &Quad) -> Quad {
        let d = Quad::unify(self, o);
        Quad::new(&self.a + &o.a, &self.b + &o.b, d)
    }

    pub fn sub(&self, o: &Quad) -> Quad {
        let d = Quad::unify(self, o);
        Quad::new(&self.a - &o.a, &self.b - &o.b, d)
    }

    pub fn mul(&self, o: &Quad) -> Quad {
        let d = Quad::unify(self, o);
        let a = &self.a * &o.a + &self.b * &o.b * &d;
        let b = &self.a * &o.b + &self.b * &o.a;
        Quad::new(a, b, d)
    }

    pub fn div(&self, o: &Quad) -> Quad {
        let d = Quad::unify(self, o);
        // 1/(a+b*sqrt(d)) = (a-b*sqrt(d))/(a^2-b^2 d)
        let denom = &o.a * &o.a - &o.b * &o.b * &d;
        assert!(!denom.is_zero(), "division by zero Quad");
        let conj = Quad::new(o.a.clone(), -o.b.clone(), d.clone());
        let num = self.mul(&conj);
        Quad::new(num.a / &denom, num.b / &denom, d)
    }

    pub fn neg(&self) -> Quad {
        Quad::new(-self.a.clone(), -self.b.clone(), self.d.clone())
    }

    pub fn scale(&self, r: &Rat) -> Quad {
        Quad::new(&self.a * r, &self.b * r, self.d.clone())
    }

    /// Exact sign of a + b*sqrt(d).
    pub fn sign(&self) -> Ordering {
        if self.b.is_zero() {
            return self.a.cmp(&Rat::zero());
        }
        if self.a.is_zero() {
            return self.b.cmp(&Rat::zero());
        }
        let sa = self.a.is_positive();
        let sb = self.b.is_positive();
        if sa == sb {
            return if sa { Ordering::Greater } else { Ordering::Less };
        }
        // Opposite signs: compare a^2 against b^2 d.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * &self.d;
        match lhs.cmp(&rhs) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => {
                if sa {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            Ordering::Less => {
                if sb {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn is_zero_val(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        Quad::new(&self.a - r, self.b.clone(), self.d.clone()).sign()
    }

    /// Exact comparison across possibly different radicands.
    ///
    /// Decides sign(A + B*sqrt(d) - C*sqrt(e)) by repeated sign-split and
    /// squaring; terminates because each squaring eliminates one radical.
    pub fn cmp_general(&self, o: &Quad) -> Ordering {
        if self.is_rational() || o.is_rational() || self.d == o.d {
            return self.sub(o).sign();
        }
        // lhs = a + b*sqrt(d) vs rhs-part c*sqrt(e) moved over:
        // sign((self.a - o.a) + self.b sqrt(self.d) - o.b sqrt(o.d))
        let a = &self.a - &o.a;
        let lhs = Quad::new(a, self.b.clone(), self.d.clone());
        let rhs = Quad::new(Rat::zero(), o.b.clone(), o.d.clone());
        let sl = lhs.sign();
        let sr = rhs.sign();
        match (sl, sr) {
            (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
            (Ordering::Equal, s) => s.reverse(),
            (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Less) => Ordering::Greater,
            (Ordering::Less, Ordering::Greater) => Ordering::Less,
            (s, _) => {
                // Same strict sign: compare squares (lhs^2 stays in Q(sqrt(d))).
                let l2 = lhs.mul(&lhs);
                let r2 = &rhs.b * &rhs.b * &rhs.d;
                let t = Quad::new(&l2.a - &r2, l2.b.clone(), l2.d.clone());
                let st = t.sign();
                if s == Ordering::Greater {
                    st
                } else {
                    st.reverse()
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * rat_to_f64(&self.d).sqrt()
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", rat_to_string(&self.a))
        } else {
            write!(
                f,
                "{}+{}*sqrt({})",
                rat_to_string(&self.a),
                rat_to_string(&self.b),
                rat_to_string(&self.d)
            )
        }
    }
}

/// Solves a*t^2 + b*t + c = 0 exactly. Returns roots in increasing order.
pub fn solve_quadratic(a: &Rat, b: &Rat, c: &Rat) -> Vec<Quad> {
    if a.is_zero() {
        if b.is_zero() {
            return vec![];
        }
        return vec![Quad::from_rat(-c / b)];
    }
    let disc = b * b - Rat::from_integer(BigInt::from(4)) * a * c;
    match disc.cmp(&Rat::zero()) {
        Ordering::Less => vec![],
        Ordering::Equal => vec![Quad::from_rat(-b / (rat(2) * a))],
        Ordering::Greater => {
            let two_a = rat(2) * a;
            let base = -b / &two_a;
            let coeff = (Rat::one() / &two_a).abs();
            let lo = Quad::new(base.clone(), -coeff.clone(), disc.clone());
            let hi = Quad::new(base, coeff, disc);
            vec![lo, hi]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rat("-2").unwrap(), rat(-2));
        assert_eq!(parse_rat("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(rat_to_string(&ratio(6, 4)), "3/2");
        assert_eq!(rat_to_string(&rat(7)), "7");
        assert!(parse_rat("1/0").is_none());
    }

    #[test]
    fn quad_signs() {
        // 1 - sqrt(2) < 0
        let q = Quad::new(rat(1), rat(-1), rat(2));
        assert_eq!(q.sign(), Ordering::Less);
        // 3 - sqrt(8) > 0
        let q = Quad::new(rat(3), rat(-1), rat(8));
        assert_eq!(q.sign(), Ordering::Greater);
        // 2 - sqrt(4) == 0
        let q = Quad::new(rat(2), rat(-1), rat(4));
        assert_eq!(q.sign(), Ordering::Equal);
    }

    #[test]
    fn quad_field_ops() {
        // (1 + sqrt(2)) * (1 - sqrt(2)) = -1
        let x = Quad::new(rat(1), rat(1), rat(2));
        let y = Quad::new(rat(1), rat(-1), rat(2));
        let p = x.mul(&y);
        assert!(p.is_rational());
        assert_eq!(p.a, rat(-1));
        // x / x = 1
        let one = x.div(&x);
        assert!(one.is_rational());
        assert_eq!(one.a, rat(1));
    }

    #[test]
    fn cross_radicand_compare() {
        // sqrt(2) < sqrt(3)
        let x = Quad::new(rat(0), rat(1), rat(2));
        let y = Quad::new(rat(0), rat(1), rat(3));
        assert_eq!(x.cmp_general(&y), Ordering::Less);
        // 1 + sqrt(2) > sqrt(5): 2.414 vs 2.236
        let x = Quad::new(rat(1), rat(1), rat(2));
        let y = Quad::new(rat(0), rat(1), rat(5));
        assert_eq!(x.cmp_general(&y), Ordering::Greater);
        // sqrt(8) == 2*sqrt(2)
        let x = Quad::new(rat(0), rat(1), rat(8));
        let y = Quad::new(rat(0), rat(2), rat(2));
        assert_eq!(x.cmp_general(&y), Ordering::Equal);
    }

    #[test]
    fn quadratic_roots() {
        // t^2 - 2 = 0
        let roots = solve_quadratic(&rat(1), &rat(0), &rat(-2));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].sign(), Ordering::Less);
        assert_eq!(roots[1].sign(), Ordering::Greater);
        assert!(roots[1].mul(&roots[1]).sub(&Quad::from_rat(rat(2))).is_zero_val());
        // (t-1)^2 = 0
        let roots = solve_quadratic(&rat(1), &rat(-2), &rat(1));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].as_rat().unwrap(), &rat(1));
    }
}
