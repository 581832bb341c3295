//! G₂ structures: a generic 3-form φ on a 7-dimensional frame model, the
//! skew endomorphism family P with `φ(X,Y,Z) = g(X, P(Y,Z))`, and the
//! Fernández–Gray style predicates (nearly parallel, cocalibrated,
//! characteristic existence) with exact scalar invariants.

use super::{ClassReport, ResidualEntry};
use crate::connection::{characteristic_solve, levi_civita, CharSolve, Connection, StructTensor};
use crate::frame::{FrameModel, VectorField};
use crate::scalar::Scalar;
use crate::tensor::{combinations, AltForm};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct G2Structure {
    model: Arc<FrameModel>,
    phi3: AltForm,
}

impl G2Structure {
    pub fn new(model: &Arc<FrameModel>, phi3: AltForm) -> G2Structure {
        assert_eq!(model.dim(), 7, "G₂ structures live on 7-dimensional models");
        assert_eq!(phi3.degree(), 3);
        G2Structure { model: model.clone(), phi3 }
    }

    pub fn model(&self) -> &Arc<FrameModel> {
        &self.model
    }

    pub fn phi(&self) -> &AltForm {
        &self.phi3
    }

    pub fn star_phi(&self) -> AltForm {
        self.phi3.hodge(&self.model)
    }

    /// `P(Y,Z) = Σ_l φ(e_l, Y, Z) e_l`.
    pub fn p_vector(&self, y: usize, z: usize) -> VectorField {
        let n = 7;
        let ctx = self.model.context();
        let mut v = VectorField::zero(ctx, n);
        for l in 0..n {
            v.coeffs[l] = self.phi3.value(&[l, y, z]);
        }
        v
    }

    /// `g(∇^g φ, *φ)` in the full multi-index pairing.
    pub fn pair_nabla_phi_star_phi(&self, lc: &Connection) -> Scalar {
        let ctx = self.model.context();
        let star = self.star_phi();
        let nabla = lc.covariant_derivative_form(&self.phi3);
        let mut acc = Scalar::zero(ctx);
        // Both factors alternate in the last three slots: sum increasing
        // tuples and multiply by 3!.
        for (i, di) in nabla.iter().enumerate() {
            for tuple in combinations(7, 3) {
                let v = di.get_increasing(&tuple);
                if v.is_zero() {
                    continue;
                }
                let idx = [i, tuple[0], tuple[1], tuple[2]];
                let s = star.value(&idx);
                if !s.is_zero() {
                    acc = &acc + &(v * &s);
                }
            }
        }
        &acc * &Scalar::from_int(ctx, 6)
    }

    /// `g(*φ, *φ)` in the full multi-index pairing (= 4!·Σ increasing).
    pub fn pair_star_phi_star_phi(&self) -> Scalar {
        let star = self.star_phi();
        crate::tensor::pair_full(&star, &star)
    }

    pub fn characteristic_solve(&self) -> CharSolve {
        characteristic_solve(&self.model, &[StructTensor::Form(self.phi3.clone())])
    }

    /// Genericity test: the bilinear form `B(X,Y)·vol = (X⌟φ)∧(Y⌟φ)∧φ`
    /// must be definite. Decidable only at instantiated rational
    /// parameters; returns `None` when any entry stays symbolic.
    pub fn genericity_definite(&self) -> Option<bool> {
        let ctx = self.model.context();
        let n = 7;
        let mut b = vec![Scalar::zero(ctx); n * n];
        for x in 0..n {
            let ix = self.phi3.interior_frame(x);
            for y in x..n {
                let iy = self.phi3.interior_frame(y);
                let top = ix.wedge(&iy).wedge(&self.phi3);
                let v = top.get_increasing(&[0, 1, 2, 3, 4, 5, 6]).clone();
                b[x * n + y] = v.clone();
                b[y * n + x] = v;
            }
        }
        // Sylvester: all leading principal minors of one sign pattern.
        let mut sign_first: Option<std::cmp::Ordering> = None;
        for k in 1..=n {
            let det = det_scalar(ctx, &b, n, k)?;
            let s = det.constant_sign()?;
            if s == std::cmp::Ordering::Equal {
                return Some(false);
            }
            match (k % 2, &sign_first) {
                (_, None) => sign_first = Some(s),
                (1, Some(first)) => {
                    if s != *first {
                        return Some(false);
                    }
                }
                (_, Some(first)) => {
                    // Even minors must be positive for either definite sign.
                    let _ = first;
                    if s != std::cmp::Ordering::Greater {
                        return Some(false);
                    }
                }
            }
        }
        Some(true)
    }

    pub fn classify(&self) -> ClassReport {
        let m = &self.model;
        let ctx = m.context();
        let lc = levi_civita(m);
        let star = self.star_phi();
        let s1 = self.pair_nabla_phi_star_phi(&lc);
        let s2 = self.pair_star_phi_star_phi();
        let nabla = lc.covariant_derivative_form(&self.phi3);

        // Nearly parallel (W₁): ∇^g φ = (1/168) g(∇^gφ, *φ) · *φ.
        let factor = &s1 * &Scalar::from_ratio(ctx, 1, 168);
        let mut np_witness = None;
        'np: for (i, di) in nabla.iter().enumerate() {
            let expected = star.interior_frame(i).scale(&factor);
            let resid = di.sub(&expected);
            if let Some((idx, v)) = resid.witness() {
                let mut full = vec![i + 1];
                full.extend(idx);
                np_witness = Some((full, v));
                break 'np;
            }
        }
        // Cocalibrated (W₁⊕W₃): δφ = 0.
        let delta_phi = lc.coderivative(&self.phi3);
        let solve = self.characteristic_solve();
        let admits = !matches!(solve, CharSolve::None);

        let residuals = vec![
            ResidualEntry::new("nearly-parallel", np_witness),
            ResidualEntry::new("cocalibrated", delta_phi.witness()),
        ];
        let verdicts = vec![
            ("nearly-parallel".to_string(), residuals[0].is_zero),
            ("cocalibrated".to_string(), residuals[1].is_zero),
            ("admits-characteristic".to_string(), admits),
        ];
        ClassReport {
            geometry: "G2",
            residuals,
            verdicts,
            invariants: vec![
                ("g(nabla_phi,star_phi)".to_string(), s1),
                ("g(star_phi,star_phi)".to_string(), s2),
            ],
            char_connection: Some(solve),
        }
    }
}

/// Determinant of the leading k×k block, `None` when entries are symbolic
/// and sign decisions would be needed along the way (callers instantiate).
fn det_scalar(
    ctx: &Arc<crate::scalar::Context>,
    mat: &[Scalar],
    n: usize,
    k: usize,
) -> Option<Scalar> {
    let mut a: Vec<Scalar> = (0..k * k)
        .map(|p| mat[(p / k) * n + (p % k)].clone())
        .collect();
    let mut det = Scalar::one(ctx);
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| !a[r * k + col].is_zero()) else {
            return Some(Scalar::zero(ctx));
        };
        if pivot != col {
            for c in 0..k {
                a.swap(col * k + c, pivot * k + c);
            }
            det = -det;
        }
        let p = a[col * k + col].clone();
        det = &det * &p;
        for r in (col + 1)..k {
            let f = a[r * k + col].checked_div(&p).ok()?;
            if f.is_zero() {
                continue;
            }
            for c in col..k {
                let v = &a[r * k + c] - &(&f * &a[col * k + c]);
                a[r * k + c] = v;
            }
        }
    }
    Some(det)
}

/// The standard flat G₂ 3-form `e123+e145+e167+e246−e257−e347−e356`.
pub fn standard_phi(m: &Arc<FrameModel>) -> AltForm {
    let one = m.one();
    AltForm::from_terms(
        m.context(),
        7,
        3,
        &[
            (&[0, 1, 2], one.clone()),
            (&[0, 3, 4], one.clone()),
            (&[0, 5, 6], one.clone()),
            (&[1, 3, 5], one.clone()),
            (&[1, 4, 6], -&one),
            (&[2, 3, 6], -&one),
            (&[2, 4, 5], -&one),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Context;

    #[test]
    fn flat_standard_form_is_parallel_and_generic() {
        let ctx = Context::new::<&str>(&[]);
        let m = Arc::new(FrameModel::flat(&ctx, 7));
        let g2 = G2Structure::new(&m, standard_phi(&m));
        let report = g2.classify();
        assert!(report.is_class("nearly-parallel"));
        assert!(report.is_class("cocalibrated"));
        assert_eq!(report.invariant("g(nabla_phi,star_phi)").unwrap(), &m.zero());
        assert_eq!(report.invariant("g(star_phi,star_phi)").unwrap(), &m.int(168));
        match report.char_connection.as_ref().unwrap() {
            CharSolve::Unique(t) => assert!(t.is_zero()),
            other => panic!("expected unique zero torsion, got {other:?}"),
        }
        assert_eq!(g2.genericity_definite(), Some(true));
    }

    #[test]
    fn lem_starphi_identity() {
        // *φ(V,W,X,Y) = φ(V,W,P(X,Y)) − g(V,X)g(W,Y) + g(V,Y)g(W,X)
        let ctx = Context::new::<&str>(&[]);
        let m = Arc::new(FrameModel::flat(&ctx, 7));
        let g2 = G2Structure::new(&m, standard_phi(&m));
        let star = g2.star_phi();
        let g = |i: usize, j: usize| if i == j { m.one() } else { m.zero() };
        for v in 0..7 {
            for w in 0..7 {
                for x in 0..7 {
                    for y in 0..7 {
                        let p = g2.p_vector(x, y);
                        let mut phi_term = Scalar::zero(&ctx);
                        for l in 0..7 {
                            if !p.coeffs[l].is_zero() {
                                phi_term =
                                    &phi_term + &(&p.coeffs[l] * &g2.phi().value(&[v, w, l]));
                            }
                        }
                        let rhs = &(&phi_term - &(&g(v, x) * &g(w, y))) + &(&g(v, y) * &g(w, x));
                        assert!(
                            (&star.value(&[v, w, x, y]) - &rhs).is_zero(),
                            "lem:starphi at ({v},{w},{x},{y})"
                        );
                    }
                }
            }
        }
    }
}
