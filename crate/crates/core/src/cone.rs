//! The metric cone `(M̄, ḡ) = (M×ℝ⁺, a²r²g + dr²)` over a frame model:
//! cone frame and structure functions, degree-weighted lifts, induced
//! hermitian and Spin(7) structures, the intermediate connections whose
//! lifts are characteristic, and the r = 1 slice going back down.
//!
//! Conventions: the cone frame is `ē_i = e_i/(ar)` for i ≤ n plus `∂_r`;
//! the lift of a base vector field is `ar·ē_i`, constant in r. `lift_form`
//! keeps coefficients (so a lifted k-form evaluates to `(ar)^k` times the
//! base value on lifted fields), while `pullback_form` divides by `(ar)^k`
//! (the value on lifted fields then equals the base value). The cone
//! torsion of a base torsion `T` is the pullback of `a²r²·T`.

use crate::connection::{add_torsion, levi_civita, Connection};
use crate::frame::{FrameModel, ModelKind, VectorField};
use crate::scalar::Scalar;
use crate::structures::contact::ContactStructure;
use crate::structures::g2::G2Structure;
use crate::structures::hermitian::HermitianStructure;
use crate::structures::spin7::{Spin7ConeData, Spin7Structure};
use crate::structures::StructureError;
use crate::tensor::{combinations, AltForm, CovTensor, Endo};
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum ConeError {
    #[error("base model already has a radial index")]
    BaseHasRadialIndex,
    #[error("cone constant must be nonzero (and positive at instantiation), got `{0}`")]
    BadConeConstant(String),
    #[error("the hermitian structure does not come from a cone: J(∂_r) ∥ ∂_r")]
    DegenerateJ,
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// The cone over a base frame model.
#[derive(Clone, Debug)]
pub struct ConeModel {
    frame: Arc<FrameModel>,
    base: Arc<FrameModel>,
    a: Scalar,
}

/// Builds the cone: structure functions `[ē_i, ē_j] = (1/(ar)) c_{ij}^k ē_k`
/// and `[∂_r, ē_i] = −(1/r) ē_i`, radial index n, orientation
/// `ē_1∧…∧ē_n∧∂_r` positive.
pub fn build_cone(base: &Arc<FrameModel>, a: &Scalar) -> Result<ConeModel, ConeError> {
    if base.radial_index().is_some() {
        return Err(ConeError::BaseHasRadialIndex);
    }
    if a.is_zero()
        || a.constant_sign()
            .map(|s| s != std::cmp::Ordering::Greater)
            .unwrap_or(false)
    {
        return Err(ConeError::BadConeConstant(a.to_string()));
    }
    let ctx = base.context();
    let n = base.dim();
    let mut frame = FrameModel::new(ctx, n + 1, ModelKind::Cone);
    frame.set_radial_index(Some(n));
    frame.set_orientation(base.orientation());
    frame.set_assume_jacobi(base.assume_jacobi());
    let mut names: Vec<String> = base.frame_names().to_vec();
    names.push("d_r".to_string());
    frame.set_frame_names(names);
    let inv_ar = Scalar::one(ctx)
        .checked_div(&(a * &Scalar::r(ctx)))
        .expect("cone constant is nonzero");
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let c = base.c(i, j, k);
                if !c.is_zero() {
                    frame.set_bracket(i, j, k, c * &inv_ar);
                }
            }
        }
    }
    let minus_inv_r = -&Scalar::one(ctx).checked_div(&Scalar::r(ctx)).unwrap();
    for i in 0..n {
        frame.set_bracket(n, i, i, minus_inv_r.clone());
    }
    Ok(ConeModel { frame: Arc::new(frame), base: base.clone(), a: a.clone() })
}

impl ConeModel {
    pub fn frame(&self) -> &Arc<FrameModel> {
        &self.frame
    }

    pub fn base(&self) -> &Arc<FrameModel> {
        &self.base
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn radial(&self) -> usize {
        self.base.dim()
    }

    /// `a·r` as a scalar.
    pub fn ar(&self) -> Scalar {
        &self.a * &Scalar::r(self.base.context())
    }

    /// Builds the flipped-orientation cone (frame `ē_1,…,ē_n,−∂_r`).
    pub fn flip_orientation(&self) -> ConeModel {
        let mut frame = (*self.frame).clone();
        frame.set_orientation(-frame.orientation());
        ConeModel { frame: Arc::new(frame), base: self.base.clone(), a: self.a.clone() }
    }

    /// Lift of a base k-form with unchanged coefficients in the ē-frame:
    /// evaluating on lifted fields `ar·ē_i` gives `(ar)^k` times the base
    /// value; all ∂_r slots are zero.
    pub fn lift_form(&self, omega: &AltForm) -> AltForm {
        assert_eq!(omega.dim(), self.base.dim());
        omega.embed(self.base.dim() + 1)
    }

    /// Pullback π*ω: coefficients divided by `(ar)^k`; evaluating on lifted
    /// fields reproduces the base values on the nose.
    pub fn pullback_form(&self, omega: &AltForm) -> AltForm {
        let k = omega.degree() as i32;
        self.lift_form(omega).scale(&self.ar().pow(-k))
    }

    /// The lift of a base vector field: `X = Σ v_i e_i ↦ Σ v_i · ar·ē_i`.
    pub fn lift_vector(&self, v: &VectorField) -> VectorField {
        let ctx = self.base.context();
        let ar = self.ar();
        let mut out = VectorField::zero(ctx, self.base.dim() + 1);
        for (i, c) in v.coeffs.iter().enumerate() {
            out.coeffs[i] = c * &ar;
        }
        out
    }

    /// The cone 3-form `T̄` of a base torsion `T`
    /// (`T̄ = π*(a²r²·T)`, so `T̄(X,Y,Z) = a²r²·T(X,Y,Z)` on lifts).
    pub fn torsion_lift(&self, t: &AltForm) -> AltForm {
        let ar = self.ar();
        self.lift_form(t).scale(&Scalar::one(self.base.context()).checked_div(&ar).unwrap())
    }

    /// The connection `∇̄ = ∇̄^ḡ + ½·T̄` for a base torsion `T`.
    pub fn lifted_connection(&self, t: &AltForm) -> Connection {
        let tbar = self.torsion_lift(t);
        add_torsion(
            &levi_civita(&self.frame),
            &tbar,
            &Scalar::from_ratio(self.base.context(), 1, 2),
        )
    }
}

/// The almost hermitian structure induced on the cone by a metric almost
/// contact structure: `J(ar∂_r) = ξ`, `J(ξ) = −ar∂_r`, `J(X) = −φ(X)` on
/// `X ⊥ ξ, ∂_r`.
pub fn induced_hermitian(
    cone: &ConeModel,
    s: &ContactStructure,
) -> Result<HermitianStructure, StructureError> {
    let n = cone.base_dim();
    let ctx = cone.base.context();
    let mut j = Endo::zero(ctx, n + 1);
    for col in 0..n {
        // J(ē_j) = −Σ_k φ_{kj} ē_k − η(e_j) ∂_r
        for row in 0..n {
            j.set(row, col, -s.phi().get(row, col));
        }
        j.set(n, col, -&s.xi().coeffs[col]);
    }
    for row in 0..n {
        // J(∂_r) = Σ_k η(e_k) ē_k
        j.set(row, n, s.xi().coeffs[row].clone());
    }
    HermitianStructure::new(cone.frame(), j)
}

/// The intermediate contact connection: `T = T^c − 2a·η∧F` on the base,
/// and its lift `∇̄` (the characteristic connection of the induced
/// hermitian structure on the cone).
pub fn intermediate_connection_contact(
    cone: &ConeModel,
    s: &ContactStructure,
    tc: &AltForm,
) -> (AltForm, Connection) {
    let two_a = &cone.a + &cone.a;
    let t = tc.sub(&s.eta().wedge(s.fundamental()).scale(&two_a));
    let conn = cone.lifted_connection(&t);
    (t, conn)
}

/// The Spin(7) 4-form induced on the cone by a base G₂ structure:
/// `Φ(∂_r, X, Y, Z) = a³r³ φ(X,Y,Z)`, `Φ(X,Y,Z,W) = a⁴r⁴ (*φ)(X,Y,Z,W)` on
/// lifts (in ē-frame coefficients: φ and *φ verbatim).
pub fn induced_spin7(cone: &ConeModel, s: &G2Structure, tc: &AltForm) -> Spin7Structure {
    assert_eq!(cone.base_dim(), 7);
    let ctx = cone.base.context();
    let n = 7;
    let phi = s.phi();
    let star = s.star_phi();
    let mut phi4 = AltForm::zero(ctx, 8, 4);
    for tuple in combinations(n, 3) {
        let c = phi.get_increasing(&tuple);
        if !c.is_zero() {
            phi4.add_term(&[n, tuple[0], tuple[1], tuple[2]], c.clone());
        }
    }
    for tuple in combinations(n, 4) {
        let c = star.get_increasing(&tuple);
        if !c.is_zero() {
            phi4.add_term(&tuple, c.clone());
        }
    }
    Spin7Structure::new_cone_induced(
        cone.frame(),
        phi4,
        Spin7ConeData {
            base: cone.base.clone(),
            phi3: phi.clone(),
            tc: tc.clone(),
            a: cone.a.clone(),
        },
    )
}

/// The intermediate G₂ connection: `T = T^c − (2a/3)·φ` on the base, and
/// its lift `∇̄` (the characteristic connection of the induced Spin(7)
/// structure).
pub fn intermediate_connection_g2(
    cone: &ConeModel,
    s: &G2Structure,
    tc: &AltForm,
) -> (AltForm, Connection) {
    let ctx = cone.base.context();
    let factor = (&cone.a + &cone.a) * Scalar::from_ratio(ctx, 1, 3);
    let t = tc.sub(&s.phi().scale(&factor));
    let conn = cone.lifted_connection(&t);
    (t, conn)
}

/// `∇J` residual of an endomorphism under a cone connection; identically
/// zero means the structure is parallel.
pub fn parallel_endo_residual(conn: &Connection, j: &Endo) -> CovTensor {
    conn.covariant_derivative_endo(j)
}

/// `∇ω` residuals of a form under a connection, per direction.
pub fn parallel_form_residual(conn: &Connection, omega: &AltForm) -> Vec<AltForm> {
    conn.covariant_derivative_form(omega)
}

/// Recovers the base almost contact structure from a hermitian structure on
/// the cone at the r = 1 slice: `ξ = aJ(∂_r)`, `φ(X) = −J(X) + ḡ(JX,∂_r)∂_r`.
pub fn cone_to_base(
    cone: &ConeModel,
    h: &HermitianStructure,
) -> Result<ContactStructure, ConeError> {
    let n = cone.base_dim();
    let ctx = cone.base.context();
    let at_slice = |s: &Scalar| {
        s.eval_at(&[("r", crate::scalar::big_ratio(1, 1))])
            .expect("no pole at r = 1")
    };
    // ξ components: the ∂_r column of J (unit by the hermitian axioms).
    let mut eta = AltForm::zero(ctx, n, 1);
    let mut degenerate = true;
    for k in 0..n {
        let v = at_slice(h.j().get(k, n));
        if !v.is_zero() {
            degenerate = false;
        }
        eta.set_increasing(&[k], v);
    }
    if degenerate {
        return Err(ConeError::DegenerateJ);
    }
    let mut phi = Endo::zero(ctx, n);
    for i in 0..n {
        for j in 0..n {
            phi.set(i, j, -&at_slice(h.j().get(i, j)));
        }
    }
    Ok(ContactStructure::new(&cone.base, eta, phi)?)
}

/// Recovers the base G₂ structure from a Spin(7) form on the cone via
/// `φ = (1/a³) ∂_r⌟Φ` at r = 1, checking `Φ|_TM = a⁴ *_g φ` through the
/// conformal Hodge relation `*_{a²g}ω = a·*_g ω`.
pub fn cone_to_base_spin7(
    cone: &ConeModel,
    s7: &Spin7Structure,
) -> Result<(G2Structure, AltForm), ConeError> {
    assert_eq!(cone.base_dim(), 7);
    let ctx = cone.base.context();
    let at_slice = |s: &Scalar| {
        s.eval_at(&[("r", crate::scalar::big_ratio(1, 1))])
            .expect("no pole at r = 1")
    };
    let n = 7;
    let mut phi = AltForm::zero(ctx, n, 3);
    for tuple in combinations(n, 3) {
        let idx = [cone.radial(), tuple[0], tuple[1], tuple[2]];
        phi.set_increasing(&tuple, at_slice(&s7.phi4().value(&idx)));
    }
    let g2 = G2Structure::new(&cone.base, phi);
    // Horizontal part of Φ must be the lift of *φ; report the residual.
    let star = g2.star_phi();
    let mut residual = AltForm::zero(ctx, n, 4);
    for tuple in combinations(n, 4) {
        let v = &at_slice(s7.phi4().get_increasing(&tuple)) - star.get_increasing(&tuple);
        residual.set_increasing(&tuple, v);
    }
    Ok((g2, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Context;

    fn heisenberg() -> Arc<FrameModel> {
        let ctx = Context::new(&["rho"]);
        let mut m = FrameModel::new(&ctx, 5, ModelKind::LieGroup);
        let rho = m.scalar("rho");
        m.set_bracket(0, 1, 4, rho.clone());
        m.set_bracket(2, 3, 4, rho);
        Arc::new(m)
    }

    fn f2(m: &Arc<FrameModel>) -> ContactStructure {
        let eta = AltForm::from_terms(m.context(), 5, 1, &[(&[4], m.one())]);
        let f = AltForm::from_terms(
            m.context(),
            5,
            2,
            &[(&[0, 1], -m.one()), (&[2, 3], -m.one())],
        );
        ContactStructure::from_fundamental(m, eta, &f).unwrap()
    }

    #[test]
    fn flat_cone_brackets() {
        let ctx = Context::new::<&str>(&[]);
        let base = Arc::new(FrameModel::flat(&ctx, 3));
        let cone = build_cone(&base, &Scalar::from_int(&ctx, 1)).unwrap();
        let m = cone.frame();
        m.validate().unwrap();
        assert_eq!(m.c(3, 0, 0), &m.scalar("-1/r"));
        assert!(m.c(0, 1, 2).is_zero());
    }

    #[test]
    fn oneill_formulas_from_koszul() {
        // Koszul on the cone frame reproduces the closed forms:
        // Γ̄(∂_r, ·, ·) = 0, ∇̄_{ē_i}∂_r = (1/r)ē_i,
        // horizontal block = base Γ/(ar).
        let base = heisenberg();
        let a = base.scalar("2*rho");
        let cone = build_cone(&base, &a).unwrap();
        let lc_cone = levi_civita(cone.frame());
        let lc_base = levi_civita(&base);
        let n = 5;
        let inv_ar = base.scalar("1/(2*rho*r)");
        let inv_r = base.scalar("1/r");
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..=n {
                    let got = lc_cone.gamma(i, j, k);
                    let expect = if i == n {
                        base.zero()
                    } else if j == n && k < n {
                        // g(∇̄_{ē_i}∂_r, ē_k) = (1/r)δ_ik
                        if i == k {
                            inv_r.clone()
                        } else {
                            base.zero()
                        }
                    } else if k == n && j < n {
                        if i == j {
                            -&inv_r
                        } else {
                            base.zero()
                        }
                    } else if j == n && k == n {
                        base.zero()
                    } else {
                        lc_base.gamma(i, j, k) * &inv_ar
                    };
                    assert_eq!(got, &expect, "O'Neill mismatch at ({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn lift_form_contract() {
        // Evaluating a lifted k-form on lifted fields gives (ar)^k times
        // the base value.
        let base = heisenberg();
        let a = base.scalar("2*rho");
        let cone = build_cone(&base, &a).unwrap();
        let f = f2(&base).fundamental().clone();
        let lifted = cone.lift_form(&f);
        let x = cone.lift_vector(&base.frame_vector(0));
        let y = cone.lift_vector(&base.frame_vector(1));
        let ar2 = cone.ar().pow(2);
        assert_eq!(lifted.eval(&[&x, &y]), &f.value(&[0, 1]) * &ar2);
        // ∂_r ⌟ lift = 0.
        let dr = cone.frame().frame_vector(5);
        assert!(lifted.interior(&dr).is_zero());
        // lift of 0 is 0.
        assert!(cone.lift_form(&AltForm::zero(base.context(), 5, 3)).is_zero());
    }

    #[test]
    fn induced_hermitian_omega2() {
        // Heisenberg F2 induces Ω2 = X1∧X2 + X3∧X4 + X5∧X6.
        let base = heisenberg();
        let a = base.scalar("2*rho");
        let cone = build_cone(&base, &a).unwrap();
        let s = f2(&base);
        let h = induced_hermitian(&cone, &s).unwrap();
        let expect = AltForm::from_terms(
            base.context(),
            6,
            2,
            &[
                (&[0, 1], base.one()),
                (&[2, 3], base.one()),
                (&[4, 5], base.one()),
            ],
        );
        assert_eq!(h.omega(), &expect);
        // Round trip back to the base.
        let back = cone_to_base(&cone, &h).unwrap();
        assert_eq!(back.fundamental(), s.fundamental());
        assert_eq!(back.eta(), s.eta());
    }
}
