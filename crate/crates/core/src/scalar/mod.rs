//! The exact coefficient field: rational functions over the Gaussian
//! rationals in a declared set of parameter symbols plus the radial symbol
//! `r`. Every tensor and spinor coefficient in the workspace is a [`Scalar`].
//!
//! Scalars are kept in canonical form — numerator and denominator coprime,
//! denominator with graded-lex leading coefficient 1 — so that structural
//! equality coincides with field equality and `is_zero` is a plain check on
//! the numerator.

mod gauss;
mod gcd;
mod parse;
mod poly;

pub use gauss::GaussRat;
pub use num::BigRational;
pub use parse::parse_scalar;
pub use poly::Poly;

use num::{BigInt, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

/// Kind of a context symbol.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParamKind {
    Free,
    Radial,
}

/// A declared symbol of the coefficient field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Param {
    pub name: String,
    pub kind: ParamKind,
}

/// Default cap on total polynomial degree; exceeding it aborts loudly
/// instead of exhausting memory on runaway expression swell.
pub const DEFAULT_DEGREE_LIMIT: u32 = 64;

/// The variable context: an ordered list of free symbols followed by the
/// radial symbol `r`, which is always present and always last.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Context {
    params: Vec<Param>,
    degree_limit: u32,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator vanishes at the given assignment")]
    Pole,
    #[error("assignment does not cover symbol `{0}`")]
    UnassignedSymbol(String),
    #[error("context mismatch between operands")]
    ContextMismatch,
}

impl Context {
    /// Builds a context from free symbol names; `r` is appended as the
    /// radial symbol. Names must be unique and must not include `r` or `i`.
    pub fn new<S: AsRef<str>>(free_symbols: &[S]) -> Arc<Context> {
        let mut params = Vec::with_capacity(free_symbols.len() + 1);
        for s in free_symbols {
            let name = s.as_ref().to_string();
            assert!(name != "r" && name != "i", "`{name}` is reserved");
            assert!(
                params.iter().all(|p: &Param| p.name != name),
                "duplicate symbol `{name}`"
            );
            params.push(Param { name, kind: ParamKind::Free });
        }
        params.push(Param { name: "r".into(), kind: ParamKind::Radial });
        Arc::new(Context { params, degree_limit: DEFAULT_DEGREE_LIMIT })
    }

    pub fn with_degree_limit<S: AsRef<str>>(free_symbols: &[S], limit: u32) -> Arc<Context> {
        let mut ctx = (*Context::new(free_symbols)).clone();
        ctx.degree_limit = limit;
        Arc::new(ctx)
    }

    pub fn nvars(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[Param] {
        &self.params
    }

    pub fn radial_var(&self) -> usize {
        self.params.len() - 1
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p.name == name)
    }

    pub fn degree_limit(&self) -> u32 {
        self.degree_limit
    }
}

/// An element of the field ℚ(i)(params)(r), canonical by construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    ctx: Arc<Context>,
    num: Poly,
    den: Poly,
}

impl Scalar {
    fn make(ctx: Arc<Context>, num: Poly, den: Poly) -> Scalar {
        assert!(!den.is_zero(), "scalar with zero denominator");
        let limit = ctx.degree_limit();
        let d = num.total_degree().max(den.total_degree());
        assert!(
            d <= limit,
            "degree guard tripped: total degree {d} exceeds limit {limit}"
        );
        let mut s = Scalar { ctx, num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.ctx.nvars());
            return;
        }
        if !self.den.is_constant() {
            let g = gcd::gcd(&self.num, &self.den);
            if !g.is_constant() {
                self.num = self.num.div_exact(&g);
                self.den = self.den.div_exact(&g);
            }
        }
        let lc = self.den.leading_coeff().inv();
        self.den = self.den.scale(&lc);
        self.num = self.num.scale(&lc);
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn zero(ctx: &Arc<Context>) -> Scalar {
        Scalar {
            ctx: ctx.clone(),
            num: Poly::zero(ctx.nvars()),
            den: Poly::one(ctx.nvars()),
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Scalar {
        Scalar {
            ctx: ctx.clone(),
            num: Poly::one(ctx.nvars()),
            den: Poly::one(ctx.nvars()),
        }
    }

    pub fn from_int(ctx: &Arc<Context>, n: i64) -> Scalar {
        Scalar {
            ctx: ctx.clone(),
            num: Poly::constant(ctx.nvars(), GaussRat::from_int(n)),
            den: Poly::one(ctx.nvars()),
        }
    }

    pub fn from_ratio(ctx: &Arc<Context>, num: i64, den: i64) -> Scalar {
        Scalar::make(
            ctx.clone(),
            Poly::constant(ctx.nvars(), GaussRat::from_ratio(num, den)),
            Poly::one(ctx.nvars()),
        )
    }

    pub fn from_gauss(ctx: &Arc<Context>, c: GaussRat) -> Scalar {
        Scalar {
            ctx: ctx.clone(),
            num: Poly::constant(ctx.nvars(), c),
            den: Poly::one(ctx.nvars()),
        }
    }

    pub fn i(ctx: &Arc<Context>) -> Scalar {
        Scalar::from_gauss(ctx, GaussRat::i())
    }

    /// The symbol with the given name.
    pub fn symbol(ctx: &Arc<Context>, name: &str) -> Result<Scalar, ScalarError> {
        let v = ctx
            .var_index(name)
            .ok_or_else(|| ScalarError::UndeclaredSymbol(name.into()))?;
        Ok(Scalar {
            ctx: ctx.clone(),
            num: Poly::variable(ctx.nvars(), v),
            den: Poly::one(ctx.nvars()),
        })
    }

    /// The radial symbol `r`.
    pub fn r(ctx: &Arc<Context>) -> Scalar {
        Scalar {
            ctx: ctx.clone(),
            num: Poly::variable(ctx.nvars(), ctx.radial_var()),
            den: Poly::one(ctx.nvars()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// True if the element is a constant of ℚ(i) (no symbols).
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_gauss(&self) -> Option<GaussRat> {
        if self.is_constant() {
            Some(&self.num.constant_value() / &self.den.constant_value())
        } else {
            None
        }
    }

    /// The element as a real rational, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_gauss().filter(|g| g.is_real()).map(|g| g.re)
    }

    fn check_ctx(&self, rhs: &Scalar) {
        assert!(
            self.ctx == rhs.ctx,
            "scalar operands belong to different contexts"
        );
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_ctx(rhs);
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::make(
            self.ctx.clone(),
            self.num.mul(&rhs.den),
            self.den.mul(&rhs.num),
        ))
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of the zero scalar");
        Scalar::make(self.ctx.clone(), self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents invert (zero base rejected).
    pub fn pow(&self, n: i32) -> Scalar {
        if n == 0 {
            return Scalar::one(&self.ctx);
        }
        let (base, e) = if n < 0 {
            (self.inv(), (-n) as u32)
        } else {
            (self.clone(), n as u32)
        };
        Scalar::make(self.ctx.clone(), base.num.pow(e), base.den.pow(e))
    }

    /// Formal derivative with respect to the radial symbol, quotient rule.
    pub fn d_dr(&self) -> Scalar {
        let v = self.ctx.radial_var();
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        // (n/d)' = (n'd - nd')/d^2
        Scalar::make(
            self.ctx.clone(),
            dn.mul(&self.den).sub(&self.num.mul(&dd)),
            self.den.mul(&self.den),
        )
    }

    /// Substitutes rational values for named symbols; unnamed symbols stay
    /// symbolic. Fails on a vanishing denominator.
    pub fn eval_at(&self, assignment: &[(&str, BigRational)]) -> Result<Scalar, ScalarError> {
        let mut table: Vec<Option<BigRational>> = vec![None; self.ctx.nvars()];
        for (name, value) in assignment {
            let v = self
                .ctx
                .var_index(name)
                .ok_or_else(|| ScalarError::UndeclaredSymbol((*name).into()))?;
            table[v] = Some(value.clone());
        }
        let den = self.den.eval_partial(&table);
        if den.is_zero() {
            return Err(ScalarError::Pole);
        }
        Ok(Scalar::make(
            self.ctx.clone(),
            self.num.eval_partial(&table),
            den,
        ))
    }

    /// Complex conjugation, i ↦ −i (symbols are treated as real).
    pub fn conj(&self) -> Scalar {
        let conj_poly = |p: &Poly| Poly {
            nvars: p.nvars,
            terms: p.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
        };
        Scalar::make(self.ctx.clone(), conj_poly(&self.num), conj_poly(&self.den))
    }

    /// Sign of a constant rational scalar; None when symbolic or non-real.
    pub fn constant_sign(&self) -> Option<std::cmp::Ordering> {
        let q = self.as_rational()?;
        Some(q.cmp(&BigRational::zero()))
    }
}

pub fn big_ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.check_ctx(rhs);
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $trait::$method(&self, rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    Scalar::make(
        a.ctx.clone(),
        a.num.mul(&b.den).add(&b.num.mul(&a.den)),
        a.den.mul(&b.den),
    )
});
binop!(Sub, sub, |a, b| {
    Scalar::make(
        a.ctx.clone(),
        a.num.mul(&b.den).sub(&b.num.mul(&a.den)),
        a.den.mul(&b.den),
    )
});
binop!(Mul, mul, |a, b| {
    Scalar::make(a.ctx.clone(), a.num.mul(&b.num), a.den.mul(&b.den))
});
binop!(Div, div, |a, b| {
    a.checked_div(b).expect("scalar division by zero")
});

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_poly(p: &Poly, ctx: &Context, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (e, c)) in p.terms.iter().enumerate() {
        let has_vars = e.iter().any(|&x| x > 0);
        // Pull a leading minus out of purely real or purely imaginary
        // coefficients so the printed form stays inside the grammar.
        let (neg, c_abs) = if c.is_real() && c.re.is_negative() {
            (true, -c)
        } else if c.re.is_zero() && c.im.is_negative() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let coeff_is_one = c_abs.is_one();
        if !coeff_is_one || !has_vars {
            write!(f, "{c_abs}")?;
        }
        let mut first_var = coeff_is_one;
        for (v, &exp) in e.iter().enumerate() {
            if exp == 0 {
                continue;
            }
            if !first_var {
                write!(f, "*")?;
            } else {
                first_var = false;
            }
            write!(f, "{}", ctx.params[v].name)?;
            if exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_value().is_one() {
            if self.num.terms.len() > 1 {
                write!(f, "(")?;
                fmt_poly(&self.num, &self.ctx, f)?;
                write!(f, ")")
            } else {
                fmt_poly(&self.num, &self.ctx, f)
            }
        } else {
            write!(f, "(")?;
            fmt_poly(&self.num, &self.ctx, f)?;
            write!(f, ")/(")?;
            fmt_poly(&self.den, &self.ctx, f)?;
            write!(f, ")")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<Context> {
        Context::new(&["a", "c1", "c2"])
    }

    #[test]
    fn inverse_and_cancellation() {
        let c = ctx();
        let a = Scalar::symbol(&c, "a").unwrap();
        let r = Scalar::r(&c);
        let x = Scalar::one(&c) / (&a * &r);
        assert!((&x * &(&a * &r)).is_one());
        let num = &(&r * &r) - &Scalar::one(&c);
        let den = &r - &Scalar::one(&c);
        let q = &num / &den;
        assert_eq!(q, &r + &Scalar::one(&c));
    }

    #[test]
    fn d_dr_quotient_rule() {
        let c = ctx();
        let a = Scalar::symbol(&c, "a").unwrap();
        let r = Scalar::r(&c);
        // d/dr 1/(a r) = -1/(a r^2)
        let x = Scalar::one(&c) / (&a * &r);
        let expect = -&(Scalar::one(&c) / (&a * &r * &r));
        assert_eq!(x.d_dr(), expect);
        // d/dr (a^2 r^2) = 2 a^2 r
        let y = (&a * &a) * (&r * &r);
        assert_eq!(y.d_dr(), Scalar::from_int(&c, 2) * &a * &a * &r);
        // constants die
        assert!(Scalar::symbol(&c, "c1").unwrap().d_dr().is_zero());
    }

    #[test]
    fn eval_instantiates() {
        let c = ctx();
        let c1 = Scalar::symbol(&c, "c1").unwrap();
        let c2 = Scalar::symbol(&c, "c2").unwrap();
        let four = Scalar::from_int(&c, 4);
        let expr = &(-&(&c1 + &c2)) / &four;
        let v = expr
            .eval_at(&[("c1", big_ratio(-25, 1)), ("c2", big_ratio(16, 1))])
            .unwrap();
        assert_eq!(v, Scalar::from_ratio(&c, 9, 4));
        // eval at nothing is the identity
        assert_eq!(expr.eval_at(&[]).unwrap(), expr);
        // pole detection
        let inv = Scalar::one(&c) / &c1;
        assert_eq!(
            inv.eval_at(&[("c1", big_ratio(0, 1))]),
            Err(ScalarError::Pole)
        );
    }

    #[test]
    fn ring_identity_is_zero() {
        let c = ctx();
        let a = Scalar::symbol(&c, "a").unwrap();
        let r = Scalar::r(&c);
        let x = &(&(&a * &a) * &(&r * &r)) - &(&a * &r).pow(2);
        assert!(x.is_zero());
        let probe = Scalar::from_ratio(&c, 1, 168) - Scalar::from_ratio(&c, 180, 168);
        assert!(!probe.is_zero());
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(rational_sqrt(&big_ratio(9, 4)), Some(big_ratio(3, 2)));
        assert_eq!(rational_sqrt(&big_ratio(2, 1)), None);
        assert_eq!(rational_sqrt(&big_ratio(-4, 1)), None);
    }
}
