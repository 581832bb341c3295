//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Terms are kept sorted in descending graded-lexicographic order, which
//! makes the leading term well defined and structural equality meaningful.

use super::gauss::GaussRat;
use num::BigRational;
use smallvec::SmallVec;
use std::cmp::Ordering;

/// Exponent vector; one entry per context variable.
pub type Expo = SmallVec<[u16; 8]>;

/// Graded-lex comparison: total degree first, then lexicographic.
pub fn cmp_expo(a: &Expo, b: &Expo) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// A polynomial in `nvars` variables. Invariant: terms sorted descending by
/// `cmp_expo`, no zero coefficients, all exponent vectors of length `nvars`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    pub nvars: usize,
    pub terms: Vec<(Expo, GaussRat)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        if c.is_zero() {
            return Poly::zero(nvars);
        }
        let e: Expo = std::iter::repeat(0u16).take(nvars).collect();
        Poly { nvars, terms: vec![(e, c)] }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, GaussRat::one())
    }

    pub fn variable(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut e: Expo = std::iter::repeat(0u16).take(nvars).collect();
        e[idx] = 1;
        Poly { nvars, terms: vec![(e, GaussRat::one())] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    /// The constant term viewed as a Gaussian rational.
    pub fn constant_value(&self) -> GaussRat {
        match self.terms.last() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => c.clone(),
            _ => GaussRat::zero(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .first()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum())
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> GaussRat {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(GaussRat::zero)
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[var] > 0)
    }

    /// Rebuilds the sorted/deduplicated invariant from arbitrary terms.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Expo, GaussRat)>) -> Self {
        terms.sort_by(|a, b| cmp_expo(&b.0, &a.0));
        let mut out: Vec<(Expo, GaussRat)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => {
                    *lc = &*lc + &c;
                }
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { nvars, terms: out }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match cmp_expo(&self.terms[i].0, &rhs.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &rhs.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Expo = ea.iter().zip(eb.iter()).map(|(&x, &y)| x + y).collect();
                terms.push((e, ca * cb));
            }
        }
        Poly::from_terms(self.nvars, terms)
    }

    /// Multiplies by a single monomial term.
    pub fn mul_term(&self, e: &Expo, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(ea, ca)| {
                    let en: Expo = ea.iter().zip(e.iter()).map(|(&x, &y)| x + y).collect();
                    (en, ca * c)
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut en = e.clone();
                en[var] -= 1;
                terms.push((en, c * &GaussRat::from_int(e[var] as i64)));
            }
        }
        Poly::from_terms(self.nvars, terms)
    }

    /// Substitutes rational values for a subset of variables (None = keep).
    pub fn eval_partial(&self, assignment: &[Option<BigRational>]) -> Poly {
        debug_assert_eq!(assignment.len(), self.nvars);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut en = e.clone();
            for (v, a) in assignment.iter().enumerate() {
                if let Some(q) = a {
                    if e[v] > 0 {
                        let mut p = BigRational::from_integer(1.into());
                        for _ in 0..e[v] {
                            p *= q;
                        }
                        coeff = &coeff * &GaussRat::from_rational(p);
                        en[v] = 0;
                    }
                }
            }
            terms.push((en, coeff));
        }
        Poly::from_terms(self.nvars, terms)
    }

    /// Exact division; panics if `rhs` does not divide `self`.
    /// Used only inside normalization, where divisibility is guaranteed.
    pub fn div_exact(&self, rhs: &Poly) -> Poly {
        self.try_div_exact(rhs)
            .expect("polynomial division was not exact")
    }

    /// Multivariate division returning `Some(q)` with `self = q*rhs` or
    /// `None` if the division leaves a remainder.
    pub fn try_div_exact(&self, rhs: &Poly) -> Option<Poly> {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut q_terms: Vec<(Expo, GaussRat)> = Vec::new();
        let (lead_e, lead_c) = (&rhs.terms[0].0, &rhs.terms[0].1);
        while !rem.is_zero() {
            let (re, rc) = &rem.terms[0];
            let mut qe: Expo = Expo::with_capacity(self.nvars);
            for (a, b) in re.iter().zip(lead_e.iter()) {
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let qc = rc / lead_c;
            rem = rem.sub(&rhs.mul_term(&qe, &qc));
            q_terms.push((qe, qc));
        }
        Some(Poly::from_terms(self.nvars, q_terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::variable(n, i)
    }

    #[test]
    fn ring_basics() {
        let a = x(2, 0);
        let b = x(2, 1);
        let s = a.add(&b);
        let sq = s.mul(&s);
        // (x+y)^2 = x^2 + 2xy + y^2
        let expect = a
            .mul(&a)
            .add(&a.mul(&b).scale(&GaussRat::from_int(2)))
            .add(&b.mul(&b));
        assert_eq!(sq, expect);
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn exact_division() {
        let r = x(1, 0);
        let num = r.mul(&r).sub(&Poly::one(1)); // r^2 - 1
        let den = r.sub(&Poly::one(1)); // r - 1
        let q = num.div_exact(&den);
        assert_eq!(q, r.add(&Poly::one(1)));
        assert!(num.try_div_exact(&r.add(&Poly::constant(1, GaussRat::from_int(2)))).is_none());
    }

    #[test]
    fn derivative_power_rule() {
        // d/dr (a^2 r^2) = 2 a^2 r with vars (a, r)
        let a = x(2, 0);
        let r = x(2, 1);
        let p = a.pow(2).mul(&r.pow(2));
        let d = p.derivative(1);
        assert_eq!(d, a.pow(2).mul(&r).scale(&GaussRat::from_int(2)));
    }
}
