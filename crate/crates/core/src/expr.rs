//! Exact coefficient expressions over the wave-function parameters.
//!
//! A [`CoefficientExpr`] is an immutable, shareable expression tree built from
//! rational constants, the constant π, the symbols `Z`, `a`, `b` and the
//! operations `+`, `·`, unary `−`, `/` and integer powers. Differentiation with
//! respect to any symbol is exact and stays inside the same operation set, so
//! repeated parameter derivatives never touch floating point until evaluation.
//!
//! The smart constructors fold constants and strip trivial identities
//! (`0 + x`, `1 · x`, `x − x`), which keeps trees small enough for the term
//! counts that occur here. No further simplification is attempted.

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;

use crate::error::{Error, Result};

/// Denominators whose bound magnitude falls below this are rejected.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// One of the three continuous wave-function parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    /// Nuclear charge.
    Z,
    /// Orbital cosh parameter.
    A,
    /// Inter-electronic screening parameter.
    B,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::Z => "Z",
            Param::A => "a",
            Param::B => "b",
        })
    }
}

/// Values of the symbols used when evaluating a [`CoefficientExpr`].
pub trait SymbolValues {
    fn value(&self, param: Param) -> f64;
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(Rational64),
    Pi,
    Sym(Param),
    Neg(CoefficientExpr),
    Add(CoefficientExpr, CoefficientExpr),
    Mul(CoefficientExpr, CoefficientExpr),
    Div(CoefficientExpr, CoefficientExpr),
    Powi(CoefficientExpr, i32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientExpr(Arc<Node>);

impl CoefficientExpr {
    fn node(node: Node) -> Self {
        CoefficientExpr(Arc::new(node))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::node(Node::Const(Rational64::new(num, den)))
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(n, 1)
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn pi() -> Self {
        Self::node(Node::Pi)
    }

    pub fn symbol(param: Param) -> Self {
        Self::node(Node::Sym(param))
    }

    fn as_const(&self) -> Option<Rational64> {
        match *self.0 {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    /// True when the expression is the literal constant zero.
    pub fn is_zero(&self) -> bool {
        self.as_const()
            .is_some_and(|c| c == Rational64::from_integer(0))
    }

    fn is_one(&self) -> bool {
        self.as_const()
            .is_some_and(|c| c == Rational64::from_integer(1))
    }

    pub fn neg(&self) -> Self {
        match &*self.0 {
            Node::Const(c) => Self::node(Node::Const(-c)),
            Node::Neg(inner) => inner.clone(),
            Node::Mul(l, r) if l.as_const().is_some() => {
                Self::node(Node::Const(-l.as_const().unwrap())).mul(r)
            }
            _ => Self::node(Node::Neg(self.clone())),
        }
    }

    /// Splits `c · rest` with `c` the leading rational factor (`rest` is one
    /// for a pure constant).
    fn split_constant(&self) -> (Rational64, Self) {
        match &*self.0 {
            Node::Const(c) => (*c, Self::one()),
            Node::Neg(inner) => {
                let (c, rest) = inner.split_constant();
                (-c, rest)
            }
            Node::Mul(l, r) => match l.as_const() {
                Some(c) => (c, r.clone()),
                None => (Rational64::from_integer(1), self.clone()),
            },
            _ => (Rational64::from_integer(1), self.clone()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if let (Some(x), Some(y)) = (self.as_const(), other.as_const()) {
            return Self::node(Node::Const(x + y));
        }
        // like terms: c1·x + c2·x = (c1 + c2)·x
        let ((c1, x), (c2, y)) = (self.split_constant(), other.split_constant());
        if x == y {
            return Self::node(Node::Const(c1 + c2)).mul(&x);
        }
        Self::node(Node::Add(self.clone(), other.clone()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        match (self.as_const(), other.as_const()) {
            (Some(x), Some(y)) => Self::node(Node::Const(x * y)),
            // constants are kept on the left and merged with a leading constant factor
            (None, Some(_)) => other.mul(self),
            (Some(x), None) => match &*other.0 {
                Node::Mul(l, r) => match l.as_const() {
                    Some(y) => Self::node(Node::Const(x * y)).mul(r),
                    None => Self::node(Node::Mul(self.clone(), other.clone())),
                },
                Node::Neg(inner) => Self::node(Node::Const(-x)).mul(inner),
                _ => Self::node(Node::Mul(self.clone(), other.clone())),
            },
            (None, None) => Self::node(Node::Mul(self.clone(), other.clone())),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        match other.as_const() {
            Some(c) if c != Rational64::from_integer(0) => {
                Self::node(Node::Const(c.recip())).mul(self)
            }
            _ => {
                let (c, rest) = self.split_constant();
                let quotient = Self::node(Node::Div(rest, other.clone()));
                Self::node(Node::Const(c)).mul(&quotient)
            }
        }
    }

    pub fn powi(&self, exp: i32) -> Self {
        match exp {
            0 => Self::one(),
            1 => self.clone(),
            _ => match self.as_const() {
                Some(c) if exp > 0 || c != Rational64::from_integer(0) => {
                    Self::node(Node::Const(c.pow(exp)))
                }
                _ => Self::node(Node::Powi(self.clone(), exp)),
            },
        }
    }

    /// Exact partial derivative with respect to `param`.
    pub fn derivative(&self, param: Param) -> Self {
        match &*self.0 {
            Node::Const(_) | Node::Pi => Self::zero(),
            Node::Sym(p) => {
                if *p == param {
                    Self::one()
                } else {
                    Self::zero()
                }
            }
            Node::Neg(x) => x.derivative(param).neg(),
            Node::Add(x, y) => x.derivative(param).add(&y.derivative(param)),
            Node::Mul(x, y) => {
                let dx = x.derivative(param);
                let dy = y.derivative(param);
                dx.mul(y).add(&x.mul(&dy))
            }
            Node::Div(x, y) => {
                // (x/y)' = x'/y - x y' / y^2
                let dx = x.derivative(param);
                let dy = y.derivative(param);
                dx.div(y).sub(&x.mul(&dy).mul(&y.powi(-2)))
            }
            Node::Powi(x, k) => {
                let dx = x.derivative(param);
                Self::integer(i64::from(*k)).mul(&x.powi(k - 1)).mul(&dx)
            }
        }
    }

    /// Evaluates the expression; vanishing denominators are reported, never
    /// turned into infinities.
    pub fn eval<S: SymbolValues + ?Sized>(&self, symbols: &S) -> Result<f64> {
        Ok(match &*self.0 {
            Node::Const(c) => *c.numer() as f64 / *c.denom() as f64,
            Node::Pi => std::f64::consts::PI,
            Node::Sym(p) => symbols.value(*p),
            Node::Neg(x) => -x.eval(symbols)?,
            Node::Add(x, y) => x.eval(symbols)? + y.eval(symbols)?,
            Node::Mul(x, y) => x.eval(symbols)? * y.eval(symbols)?,
            Node::Div(x, y) => {
                let den = y.eval(symbols)?;
                check_denominator(den, y)?;
                x.eval(symbols)? / den
            }
            Node::Powi(x, k) => {
                let base = x.eval(symbols)?;
                if *k < 0 {
                    check_denominator(base, x)?;
                }
                base.powi(*k)
            }
        })
    }

    /// Number of nodes in the tree (shared subtrees counted once per use).
    pub fn size(&self) -> usize {
        match &*self.0 {
            Node::Const(_) | Node::Pi | Node::Sym(_) => 1,
            Node::Neg(x) | Node::Powi(x, _) => 1 + x.size(),
            Node::Add(x, y) | Node::Mul(x, y) | Node::Div(x, y) => 1 + x.size() + y.size(),
        }
    }
}

fn check_denominator(value: f64, expr: &CoefficientExpr) -> Result<()> {
    if value.abs() < DEGENERACY_TOL || !value.is_finite() {
        return Err(Error::DegenerateParameter {
            what: expr.to_string(),
            value,
        });
    }
    Ok(())
}

impl From<i64> for CoefficientExpr {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<Param> for CoefficientExpr {
    fn from(p: Param) -> Self {
        Self::symbol(p)
    }
}

impl fmt::Display for CoefficientExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Const(c) => {
                if *c.denom() == 1 {
                    write!(f, "{}", c.numer())
                } else {
                    write!(f, "{}/{}", c.numer(), c.denom())
                }
            }
            Node::Pi => f.write_str("pi"),
            Node::Sym(p) => write!(f, "{p}"),
            Node::Neg(x) => write!(f, "-({x})"),
            Node::Add(x, y) => write!(f, "({x} + {y})"),
            Node::Mul(x, y) => write!(f, "{x}*{y}"),
            Node::Div(x, y) => write!(f, "({x})/({y})"),
            Node::Powi(x, k) => write!(f, "({x})^{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Vals(f64, f64, f64);

    impl SymbolValues for Vals {
        fn value(&self, param: Param) -> f64 {
            match param {
                Param::Z => self.0,
                Param::A => self.1,
                Param::B => self.2,
            }
        }
    }

    fn z() -> CoefficientExpr {
        CoefficientExpr::symbol(Param::Z)
    }

    fn b() -> CoefficientExpr {
        CoefficientExpr::symbol(Param::B)
    }

    #[test]
    fn constant_folding() {
        let e = CoefficientExpr::rational(1, 2).add(&CoefficientExpr::rational(1, 3));
        assert_eq!(e, CoefficientExpr::rational(5, 6));
        assert!(z().sub(&z()).is_zero());
        assert_eq!(CoefficientExpr::one().mul(&z()), z());
        assert_eq!(z().neg().neg(), z());
        assert!(CoefficientExpr::zero().div(&z()).is_zero());
    }

    #[test]
    fn derivative_of_inverse_difference_of_squares() {
        // d/db (Z^2 - b^2)^-1 = 2b (Z^2 - b^2)^-2
        let den = z().powi(2).sub(&b().powi(2));
        let e = CoefficientExpr::one().div(&den);
        let d = e.derivative(Param::B);
        let vals = Vals(2.0, 0.0, 0.2);
        let expected = 2.0 * 0.2 / (4.0f64 - 0.04).powi(2);
        let got = d.eval(&vals).unwrap();
        assert!((got - expected).abs() < 1e-15 * expected.abs());
    }

    #[test]
    fn derivative_of_symbol_not_present_is_zero() {
        assert!(z().powi(3).derivative(Param::B).is_zero());
    }

    #[test]
    fn degenerate_denominator_is_an_error() {
        let e = CoefficientExpr::one().div(&z().sub(&b()));
        let err = e.eval(&Vals(1.0, 0.0, 1.0)).unwrap_err();
        assert!(matches!(err, Error::DegenerateParameter { .. }));
        let e = z().sub(&b()).powi(-3);
        assert!(e.eval(&Vals(1.0, 0.0, 1.0 + 1e-10)).is_err());
        assert!(e.eval(&Vals(1.0, 0.0, 0.5)).is_ok());
    }

    #[test]
    fn pi_evaluates() {
        let e = CoefficientExpr::pi()
            .powi(2)
            .mul(&CoefficientExpr::rational(-1, 2));
        assert_eq!(
            e.eval(&Vals(1.0, 0.0, 0.0)).unwrap(),
            -std::f64::consts::PI.powi(2) / 2.0
        );
    }
}
