//! Arithmetic in GF(p^e) for q = p^e <= 256.
//!
//! Elements are stored in their packed encoding: the coefficient vector
//! (c_0, .., c_{e-1}) of the polynomial-basis representation maps to the
//! integer c_0 + c_1 p + .. + c_{e-1} p^{e-1}, so every element fits in a `u8`
//! and `0` / `1` are the additive and multiplicative identities.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::FieldError;

/// Largest supported field order.
pub const MAX_ORDER: usize = 256;

/// One irreducible modulus per (p, e) with e >= 2, constant term first and
/// the leading 1 omitted.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (7, 2, &[3, 6]),
    (11, 2, &[2, 7]),
    (13, 2, &[2, 12]),
];

/// Packed field element.
pub type Elem = u8;

struct Tables {
    p: u32,
    e: u32,
    q: usize,
    /// Monic modulus, constant term first, length e + 1.
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// A finite field GF(p^e) with a fixed modulus. Cloning is cheap.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.e)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e
    }
}

impl Eq for FieldSpec {}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Splits `q` as `p^e`, or returns `None` if `q` is not a prime power.
pub fn prime_power(q: usize) -> Option<(u32, u32)> {
    if q < 2 || q > u32::MAX as usize {
        return None;
    }
    let q = q as u32;
    let p = (2..=q).find(|d| q % d == 0)?;
    if !is_prime(p) {
        return None;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn poly_rem(mut num: Vec<u32>, den: &[u32], p: u32) -> Vec<u32> {
    // den is monic
    let dd = den.len() - 1;
    while num.len() > dd {
        let lead = *num.last().unwrap();
        let shift = num.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let t = (lead * c) % p;
                num[shift + i] = (num[shift + i] + p - t) % p;
            }
        }
        num.pop();
    }
    num
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                divisor.push((x % p as usize) as u32);
                x /= p as usize;
            }
            divisor.push(1);
            if poly_rem(modulus.to_vec(), &divisor, p)
                .iter()
                .all(|&c| c == 0)
            {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds GF(q) from the built-in modulus table.
    pub fn new(q: usize) -> Result<Self, FieldError> {
        if q > MAX_ORDER {
            return Err(FieldError::UnsupportedOrder(q));
        }
        let (p, e) = prime_power(q).ok_or(FieldError::UnsupportedOrder(q))?;
        let mut modulus: Vec<u32> = if e == 1 {
            vec![0]
        } else {
            MODULI
                .iter()
                .find(|(mp, me, _)| *mp == p && *me == e)
                .map(|(_, _, m)| m.to_vec())
                .ok_or(FieldError::UnsupportedOrder(q))?
        };
        modulus.push(1);
        if !is_irreducible(&modulus, p) {
            return Err(FieldError::ReducibleModulus { p, e });
        }
        Ok(Self(Arc::new(Self::tables(p, e, q, modulus))))
    }

    fn tables(p: u32, e: u32, q: usize, modulus: Vec<u32>) -> Tables {
        let unpack = |mut x: usize| -> Vec<u32> {
            (0..e)
                .map(|_| {
                    let c = (x % p as usize) as u32;
                    x /= p as usize;
                    c
                })
                .collect()
        };
        let pack = |c: &[u32]| -> Elem {
            c.iter()
                .rev()
                .fold(0usize, |acc, &d| acc * p as usize + d as usize) as Elem
        };
        let coeffs: Vec<Vec<u32>> = (0..q).map(unpack).collect();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = coeffs[a]
                    .iter()
                    .zip(&coeffs[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = pack(&s);
                let mut prod = vec![0u32; 2 * e as usize - 1];
                for (i, x) in coeffs[a].iter().enumerate() {
                    for (j, y) in coeffs[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(prod, &modulus, p);
                r.resize(e as usize, 0);
                mul[a * q + b] = pack(&r);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as Elem
                }
            })
            .collect();
        Tables {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn order(&self) -> usize {
        self.0.q
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.0.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Checks that `v` is a valid packed element.
    pub fn check(&self, v: u64) -> Result<Elem, FieldError> {
        if (v as usize) < self.0.q {
            Ok(v as Elem)
        } else {
            Err(FieldError::ElementOutOfRange {
                value: v,
                q: self.0.q,
            })
        }
    }

    /// Coefficient vector (constant term first) of a packed element.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        let p = self.0.p as usize;
        let mut x = a as usize;
        (0..self.0.e)
            .map(|_| {
                let c = (x % p) as u32;
                x /= p;
                c
            })
            .collect()
    }

    pub fn element(&self, value: Elem) -> FieldElement {
        FieldElement {
            value,
            field: self.clone(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(|v| v as Elem)
    }
}

/// A field element bundled with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    value: Elem,
    field: FieldSpec,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.field.coefficients(self.value)
    }

    pub fn inv(&self) -> Option<FieldElement> {
        self.field.inv(self.value).map(|v| self.field.element(v))
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                assert_eq!(self.field, rhs.field, "mixed fields");
                let value = self.field.$method(self.value, rhs.value);
                FieldElement {
                    value,
                    field: self.field,
                }
            }
        }
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                assert_eq!(self.field, rhs.field, "mixed fields");
                self.field
                    .element(self.field.$method(self.value, rhs.value))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let value = self.field.neg(self.value);
        FieldElement {
            value,
            field: self.field,
        }
    }
}

/// Every supported field order, ascending.
pub fn supported_orders() -> Vec<usize> {
    (2..=MAX_ORDER)
        .filter(|&q| FieldSpec::new(q).is_ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_prime_power_up_to_256_is_supported() {
        let expected: Vec<usize> = (2..=256).filter(|&q| prime_power(q).is_some()).collect();
        assert_eq!(supported_orders(), expected);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(matches!(
            FieldSpec::new(6),
            Err(FieldError::UnsupportedOrder(6))
        ));
        assert!(matches!(
            FieldSpec::new(512),
            Err(FieldError::UnsupportedOrder(512))
        ));
        assert!(FieldSpec::new(1).is_err());
    }

    #[test]
    fn reducible_modulus_is_detected() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 1], 2));
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldSpec::new(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_exist_for_all_orders() {
        for q in supported_orders() {
            let f = FieldSpec::new(q).unwrap();
            for a in 1..q as u8 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q}");
            }
        }
    }

    #[test]
    fn packed_encoding_is_base_p() {
        let f = FieldSpec::new(9).unwrap();
        assert_eq!(f.coefficients(7), vec![1, 2]);
        // adding coefficientwise mod 3: (1,2) + (2,2) = (0,1) -> 3
        assert_eq!(f.add(7, 8), 3);
        assert_eq!(f.characteristic(), 3);
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = FieldSpec::new(4).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(a, 4), a);
        }
        assert_eq!(f.pow(2, 2), 3);
    }

    #[test]
    fn element_wrapper_operators() {
        let f = FieldSpec::new(5).unwrap();
        let a = f.element(3);
        let b = f.element(4);
        assert_eq!((a.clone() + b.clone()).value(), 2);
        assert_eq!((&a * &b).value(), 2);
        assert_eq!((a.clone() - b).value(), 4);
        assert_eq!((-a.clone()).value(), 2);
        assert_eq!(a.inv().unwrap().value(), 2);
        assert!(f.element(0).inv().is_none());
    }
}
