//! Tanno deformation of a metric almost contact structure:
//! `g_t = t·g + (t²−t)·η⊗η`, `ξ_t = ξ/t`, `η_t = t·η`, realized by
//! re-framing with the orthonormal frame `e_i/√t` (i ⊥ ξ) and `ξ/t`.

use super::contact::ContactStructure;
use super::StructureError;
use crate::frame::{FrameModel, ModelKind};
use crate::scalar::{rational_sqrt, Scalar};
use crate::tensor::{AltForm, Endo};
use std::sync::Arc;

/// Deforms the structure at a rational square `t > 0`; the deformed model
/// carries the recomputed structure functions and the transported `(η, φ)`.
pub fn tanno_deform(
    s: &ContactStructure,
    t: &Scalar,
) -> Result<(Arc<FrameModel>, ContactStructure), StructureError> {
    let model = s.model();
    let ctx = model.context();
    let n = model.dim();
    let t_rat = t
        .as_rational()
        .ok_or_else(|| StructureError::BadDeformationParameter(t.to_string()))?;
    if t_rat <= num::BigRational::from_integer(0.into()) {
        return Err(StructureError::BadDeformationParameter(t.to_string()));
    }
    let sqrt_t_rat =
        rational_sqrt(&t_rat).ok_or_else(|| StructureError::NonSquareParameter(t.to_string()))?;
    let sqrt_t = Scalar::from_gauss(ctx, crate::scalar::GaussRat::from_rational(sqrt_t_rat));
    let xi_index = s.xi_frame_index().ok_or(StructureError::XiNotFrameVector)?;

    // Frame scale factors: s_i = 1/√t off ξ, s_ι = 1/t along ξ.
    let scale: Vec<Scalar> = (0..n)
        .map(|i| {
            if i == xi_index {
                Scalar::one(ctx).checked_div(t).unwrap()
            } else {
                Scalar::one(ctx).checked_div(&sqrt_t).unwrap()
            }
        })
        .collect();

    let mut deformed = FrameModel::new(ctx, n, model.kind());
    if matches!(model.kind(), ModelKind::Flat) {
        // Stays flat; nothing to scale.
    }
    deformed.set_orientation(model.orientation());
    deformed.set_assume_jacobi(model.assume_jacobi());
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let c = model.c(i, j, k);
                if !c.is_zero() {
                    // [s_i e_i, s_j e_j] = s_i s_j c_{ij}^k e_k
                    //                    = (s_i s_j / s_k) c_{ij}^k (s_k e_k)
                    let v = (&scale[i] * &scale[j])
                        .checked_div(&scale[k])
                        .unwrap();
                    deformed.set_bracket(i, j, k, &v * c);
                }
            }
        }
    }
    let deformed = Arc::new(deformed);

    // η_t is the coframe of ξ_t in the new orthonormal frame; φ keeps its
    // matrix (it vanishes on ξ and preserves ξ^⊥, where all scales agree).
    let eta_t = AltForm::from_terms(ctx, n, 1, &[(&[xi_index], Scalar::one(ctx))]);
    let mut phi_t = Endo::zero(ctx, n);
    for i in 0..n {
        for j in 0..n {
            let p = s.phi().get(i, j);
            if !p.is_zero() {
                let v = (&scale[j] * p).checked_div(&scale[i]).unwrap();
                phi_t.set(i, j, v);
            }
        }
    }
    let structure = ContactStructure::new(&deformed, eta_t, phi_t)?;
    Ok((deformed, structure))
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
    fn identity_deformation() {
        let m = heisenberg();
        let s = f2(&m);
        let (dm, ds) = tanno_deform(&s, &m.one()).unwrap();
        assert_eq!(dm.c(0, 1, 4), m.c(0, 1, 4));
        assert_eq!(ds.phi(), s.phi());
    }

    #[test]
    fn heisenberg_stays_in_family() {
        // [e1/√t, e2/√t] = (ρ/t)·e5 = ρ·(e5/t): the deformed frame has the
        // same structure constant ρ, i.e. the family parameter is ρ' = ρ.
        let m = heisenberg();
        let s = f2(&m);
        let t = m.scalar("9/4");
        let (dm, ds) = tanno_deform(&s, &t).unwrap();
        assert_eq!(dm.c(0, 1, 4), &m.scalar("rho"));
        assert_eq!(dm.c(2, 3, 4), &m.scalar("rho"));
        dm.validate().unwrap();
        // The deformed structure stays of class C6 with the same constant.
        let report = ds.classify();
        assert!(report.is_class("C6"));
    }

    #[test]
    fn rejects_bad_parameters() {
        let m = heisenberg();
        let s = f2(&m);
        assert!(matches!(
            tanno_deform(&s, &m.scalar("-1")),
            Err(StructureError::BadDeformationParameter(_))
        ));
        assert!(matches!(
            tanno_deform(&s, &m.scalar("2")),
            Err(StructureError::NonSquareParameter(_))
        ));
        assert!(matches!(
            tanno_deform(&s, &m.scalar("rho")),
            Err(StructureError::BadDeformationParameter(_))
        ));
    }
}
