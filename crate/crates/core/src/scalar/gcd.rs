//! Multivariate polynomial gcd over ℚ(i) via primitive pseudo-remainder
//! sequences, recursing on the variable set. Degrees in this workload are
//! small, so the classical algorithm is entirely adequate.

use super::gauss::GaussRat;
use super::poly::{Expo, Poly};

/// Monic normalization: scales so the graded-lex leading coefficient is 1.
pub fn monic(p: &Poly) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let lc = p.leading_coeff();
    p.scale(&lc.inv())
}

fn is_monomial(p: &Poly) -> bool {
    p.terms.len() == 1
}

/// gcd of a monomial with an arbitrary polynomial: the componentwise
/// minimum exponent over all terms.
fn gcd_with_monomial(mono: &Expo, p: &Poly) -> Poly {
    let mut e = mono.clone();
    for (te, _) in &p.terms {
        for (a, b) in e.iter_mut().zip(te.iter()) {
            *a = (*a).min(*b);
        }
    }
    Poly {
        nvars: p.nvars,
        terms: vec![(e, GaussRat::one())],
    }
}

fn first_var_present(a: &Poly, b: &Poly) -> Option<usize> {
    for v in 0..a.nvars {
        if a.contains_var(v) || b.contains_var(v) {
            return Some(v);
        }
    }
    None
}

/// Views `p` as univariate in `v`; entry `d` is the coefficient of `v^d`
/// (a polynomial with zero `v`-exponent).
fn to_univar(p: &Poly, v: usize) -> Vec<Poly> {
    let deg = p.degree_in(v) as usize;
    let mut coeffs = vec![Poly::zero(p.nvars); deg + 1];
    for (e, c) in &p.terms {
        let d = e[v] as usize;
        let mut en = e.clone();
        en[v] = 0;
        coeffs[d] = coeffs[d].add(&Poly {
            nvars: p.nvars,
            terms: vec![(en, c.clone())],
        });
    }
    coeffs
}

fn from_univar(coeffs: &[Poly], v: usize, nvars: usize) -> Poly {
    let mut acc = Poly::zero(nvars);
    for (d, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e: Expo = std::iter::repeat(0u16).take(nvars).collect();
        e[v] = d as u16;
        acc = acc.add(&c.mul_term(&e, &GaussRat::one()));
    }
    acc
}

fn trim(coeffs: &mut Vec<Poly>) {
    while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
}

/// gcd of the coefficient list (the content with respect to the main var).
fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero(coeffs.first().map(|c| c.nvars).unwrap_or(0));
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// Pseudo-remainder of `a` by `b` in the main variable (coefficients are
/// polynomials in the remaining variables).
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r := lb*r - lr * b * x^(dr-db)
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = r[idx].sub(&lr.mul(bc));
        }
        trim(&mut r);
    }
    r
}

/// Euclidean gcd of univariate polynomials given as dense coefficient
/// lists over ℚ(i).
fn univar_gcd(mut a: Vec<GaussRat>, mut b: Vec<GaussRat>) -> Vec<GaussRat> {
    let trim = |v: &mut Vec<GaussRat>| {
        while v.last().map(GaussRat::is_zero).unwrap_or(false) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lb = b.last().unwrap().clone();
        while a.len() >= b.len() && !a.is_empty() {
            let f = a.last().unwrap() / &lb;
            let off = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                let v = &a[off + i] - &(&f * c);
                a[off + i] = v;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Specializes all variables except `v` at small integer points and takes
/// the univariate gcd. When both leading `v`-coefficients survive the
/// specialization and the image gcd is constant, the true gcd has
/// `v`-degree zero — an exact one-sided certificate.
fn certify_var_free(a: &Poly, b: &Poly, v: usize) -> bool {
    use num::BigRational;
    'points: for point in [2i64, 3, 5, 7] {
        let assignment: Vec<Option<BigRational>> = (0..a.nvars)
            .map(|w| {
                if w == v {
                    None
                } else {
                    Some(BigRational::from_integer(point.into()))
                }
            })
            .collect();
        let to_univar_dense = |p: &Poly| -> Option<Vec<GaussRat>> {
            let img = p.eval_partial(&assignment);
            let deg = img.degree_in(v) as usize;
            if deg != p.degree_in(v) as usize {
                return None; // leading coefficient vanished at the point
            }
            let mut out = vec![GaussRat::zero(); deg + 1];
            for (e, c) in &img.terms {
                out[e[v] as usize] = &out[e[v] as usize] + c;
            }
            Some(out)
        };
        let (Some(ua), Some(ub)) = (to_univar_dense(a), to_univar_dense(b)) else {
            continue 'points;
        };
        let g = univar_gcd(ua, ub);
        if g.len() <= 1 {
            return true;
        }
    }
    false
}

/// Polynomial gcd, normalized so the leading coefficient is 1.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars);
    }
    if a == b {
        return monic(a);
    }
    if is_monomial(a) {
        return gcd_with_monomial(&a.terms[0].0, b);
    }
    if is_monomial(b) {
        return gcd_with_monomial(&b.terms[0].0, a);
    }
    // Divisibility fast paths (frequent: denominators dividing numerators).
    if b.try_div_exact(a).is_some() {
        return monic(a);
    }
    if a.try_div_exact(b).is_some() {
        return monic(b);
    }
    // The gcd only involves variables shared by both operands. If a
    // univariate specialization certifies it free of every shared
    // variable, it is constant.
    let shared: Vec<usize> = (0..a.nvars)
        .filter(|&v| a.contains_var(v) && b.contains_var(v))
        .collect();
    if shared.is_empty() {
        return Poly::one(a.nvars);
    }
    if shared.iter().all(|&v| certify_var_free(a, b, v)) {
        return Poly::one(a.nvars);
    }
    let v = match first_var_present(a, b) {
        Some(v) => v,
        None => return Poly::one(a.nvars),
    };
    if !a.contains_var(v) || !b.contains_var(v) {
        // gcd lives in the remaining variables: gcd(content, other poly).
        let (with, without) = if a.contains_var(v) { (a, b) } else { (b, a) };
        let cont = content(&to_univar(with, v));
        return gcd(&cont, without);
    }

    let ua = to_univar(a, v);
    let ub = to_univar(b, v);
    let ca = content(&ua);
    let cb = content(&ub);
    let cg = gcd(&ca, &cb);
    let mut pa: Vec<Poly> = ua.iter().map(|c| c.div_exact(&ca)).collect();
    let mut pb: Vec<Poly> = ub.iter().map(|c| c.div_exact(&cb)).collect();
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    // Primitive PRS.
    loop {
        if pb.len() == 1 {
            // Degree zero in v and primitive: the primitive gcd is trivial.
            return monic(&cg);
        }
        let mut r = pseudo_rem(&pa, &pb);
        if r.is_empty() {
            let prim = from_univar(&pb, v, a.nvars);
            return monic(&cg.mul(&prim));
        }
        let cr = content(&r);
        for c in r.iter_mut() {
            *c = c.div_exact(&cr);
        }
        pa = pb;
        pb = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::variable(n, i)
    }

    #[test]
    fn univariate_gcd() {
        // gcd(r^2-1, r-1) = r-1
        let r = x(1, 0);
        let a = r.mul(&r).sub(&Poly::one(1));
        let b = r.sub(&Poly::one(1));
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn multivariate_gcd() {
        // gcd((a+r)^2 (a-r), (a+r)(a-r)^2) = (a+r)(a-r)
        let a = x(2, 0);
        let r = x(2, 1);
        let s = a.add(&r);
        let d = a.sub(&r);
        let p = s.pow(2).mul(&d);
        let q = s.mul(&d.pow(2));
        let g = gcd(&p, &q);
        assert_eq!(g, monic(&s.mul(&d)));
    }

    #[test]
    fn monomial_gcd() {
        let a = x(2, 0);
        let r = x(2, 1);
        let m = a.mul(&r).scale(&GaussRat::from_int(3)); // 3ar
        let p = a.pow(2).mul(&r).add(&a.mul(&r.pow(2))); // a^2 r + a r^2
        assert_eq!(gcd(&m, &p), a.mul(&r));
    }

    #[test]
    fn coprime() {
        let a = x(2, 0);
        let r = x(2, 1);
        assert_eq!(gcd(&a.add(&Poly::one(2)), &r), Poly::one(2));
    }
}
