//! Metric almost contact structures `(g, φ, η)` with `φ² = −id + η⊗ξ`:
//! the Nijenhuis tensor, the characteristic-connection criterion and
//! closed-form torsion, and the twelve-class classification table.

use super::{ClassReport, ResidualEntry, StructureError};
use crate::connection::{characteristic_solve, levi_civita, Connection, StructTensor};
use crate::frame::{FrameModel, VectorField};
use crate::scalar::Scalar;
use crate::tensor::{exterior_derivative, AltForm, CovTensor, Endo};
use std::sync::Arc;

/// A metric almost contact structure on a frame model.
#[derive(Clone, Debug)]
pub struct ContactStructure {
    model: Arc<FrameModel>,
    eta: AltForm,
    phi: Endo,
    xi: VectorField,
    big_f: AltForm,
}

/// The contact Nijenhuis tensor, kept as a degree-3 covariant tensor (it is
/// only guaranteed skew when a characteristic connection exists).
pub type NijenhuisTensor = CovTensor;

impl ContactStructure {
    /// Validates all defining identities exactly before accepting the data.
    pub fn new(
        model: &Arc<FrameModel>,
        eta: AltForm,
        phi: Endo,
    ) -> Result<ContactStructure, StructureError> {
        let n = model.dim();
        let ctx = model.context();
        assert!(n % 2 == 1, "metric almost contact structures are odd-dimensional");
        let xi = VectorField::from_coeffs(
            ctx,
            (0..n).map(|i| eta.get_increasing(&[i]).clone()).collect(),
        );
        let bad = |what: &'static str, detail: String| {
            Err(StructureError::InvariantViolation(what, detail))
        };
        if !(&xi.dot(&xi) - &model.one()).is_zero() {
            return bad("|ξ| = 1", format!(": g(ξ,ξ) = {}", xi.dot(&xi)));
        }
        if !phi.apply(&xi).is_zero() {
            return bad("φ(ξ) = 0", String::new());
        }
        // η ∘ φ = 0: the ξ-row of φ vanishes.
        for j in 0..n {
            let mut acc = Scalar::zero(ctx);
            for i in 0..n {
                acc = &acc + &(&xi.coeffs[i] * phi.get(i, j));
            }
            if !acc.is_zero() {
                return bad("η∘φ = 0", format!(" at column {}", j + 1));
            }
        }
        // φ² = −id + η⊗ξ.
        let resid = phi
            .square()
            .add(&Endo::identity(ctx, n))
            .sub(&Endo::outer(&eta, &xi));
        if !resid.is_zero() {
            return bad("φ² = −id + η⊗ξ", String::new());
        }
        // g(φv, φw) = g(v,w) − η(v)η(w): φᵀφ = id − η⊗ξ-matrix.
        let resid = phi
            .transpose()
            .compose(&phi)
            .sub(&Endo::identity(ctx, n))
            .add(&Endo::outer(&eta, &xi));
        if !resid.is_zero() {
            return bad("g(φv,φw) = g(v,w) − η(v)η(w)", String::new());
        }
        // F(v,w) = g(v, φ(w)) must be alternating.
        let mut big_f = AltForm::zero(ctx, n, 2);
        for i in 0..n {
            for j in (i + 1)..n {
                if !(phi.get(i, j) + phi.get(j, i)).is_zero() {
                    return bad("F is a 2-form", format!(" at ({}, {})", i + 1, j + 1));
                }
                big_f.set_increasing(&[i, j], phi.get(i, j).clone());
            }
        }
        Ok(ContactStructure { model: model.clone(), eta, phi, xi, big_f })
    }

    /// Builds the structure from its fundamental 2-form `F` (φ read off via
    /// `F(v,w) = g(v, φw)`) and `η`.
    pub fn from_fundamental(
        model: &Arc<FrameModel>,
        eta: AltForm,
        big_f: &AltForm,
    ) -> Result<ContactStructure, StructureError> {
        ContactStructure::new(model, eta, Endo::from_two_form(big_f))
    }

    pub fn model(&self) -> &Arc<FrameModel> {
        &self.model
    }

    pub fn eta(&self) -> &AltForm {
        &self.eta
    }

    pub fn phi(&self) -> &Endo {
        &self.phi
    }

    pub fn xi(&self) -> &VectorField {
        &self.xi
    }

    pub fn fundamental(&self) -> &AltForm {
        &self.big_f
    }

    /// The frame index carrying ξ, when ξ is a plain frame vector.
    pub fn xi_frame_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, c) in self.xi.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() || !c.is_one() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// `α(X,Y,Z) := (∇^g_X F)(Y,Z)` as directional 2-forms.
    pub fn alpha(&self, lc: &Connection) -> Vec<AltForm> {
        lc.covariant_derivative_form(&self.big_f)
    }

    /// The Nijenhuis tensor of the structure, from `∇^g`.
    pub fn nijenhuis(&self, lc: &Connection) -> NijenhuisTensor {
        let n = self.model.dim();
        let ctx = self.model.context();
        let a = lc.covariant_derivative_endo(&self.phi);
        let nabla_xi: Vec<VectorField> = (0..n).map(|i| lc.nabla_vector(i, &self.xi)).collect();
        CovTensor::from_fn(ctx, n, 3, |idx| {
            let (x, y, z) = (idx[0], idx[1], idx[2]);
            let mut acc = Scalar::zero(ctx);
            for l in 0..n {
                // g((∇_Xφ)(φY) − (∇_Yφ)(φX) + (∇_{φX}φ)(Y) − (∇_{φY}φ)(X), Z)
                let pl_y = self.phi.get(l, y);
                if !pl_y.is_zero() {
                    acc = &acc + &(pl_y * a.get(&[x, l, z]));
                    acc = &acc - &(pl_y * a.get(&[l, x, z]));
                }
                let pl_x = self.phi.get(l, x);
                if !pl_x.is_zero() {
                    acc = &acc - &(pl_x * a.get(&[y, l, z]));
                    acc = &acc + &(pl_x * a.get(&[l, y, z]));
                }
            }
            let eta_x = &self.xi.coeffs[x];
            if !eta_x.is_zero() {
                acc = &acc + &(eta_x * &nabla_xi[y].coeffs[z]);
            }
            let eta_y = &self.xi.coeffs[y];
            if !eta_y.is_zero() {
                acc = &acc - &(eta_y * &nabla_xi[x].coeffs[z]);
            }
            acc
        })
    }

    /// Polarized residual of the characteristic-connection criterion
    /// `(∇^g_Y F)(Y, φX) + (∇^g_{φY} F)(Y, X) = 0`; the structure admits a
    /// characteristic connection iff this vanishes identically.
    pub fn char_criterion_residual(&self, lc: &Connection) -> CovTensor {
        let n = self.model.dim();
        let ctx = self.model.context();
        let alpha = self.alpha(lc);
        let al = |i: usize, j: usize, k: usize| alpha[i].value(&[j, k]);
        CovTensor::from_fn(ctx, n, 3, |idx| {
            let (y1, y2, x) = (idx[0], idx[1], idx[2]);
            let mut acc = Scalar::zero(ctx);
            for l in 0..n {
                let pl_x = self.phi.get(l, x);
                if !pl_x.is_zero() {
                    acc = &acc + &(pl_x * &al(y1, y2, l));
                    acc = &acc + &(pl_x * &al(y2, y1, l));
                }
                let pl_y1 = self.phi.get(l, y1);
                if !pl_y1.is_zero() {
                    acc = &acc + &(pl_y1 * &al(l, y2, x));
                }
                let pl_y2 = self.phi.get(l, y2);
                if !pl_y2.is_zero() {
                    acc = &acc + &(pl_y2 * &al(l, y1, x));
                }
            }
            acc
        })
    }

    pub fn admits_characteristic(&self, lc: &Connection) -> bool {
        self.char_criterion_residual(lc).is_zero()
    }

    /// Residual of the ξ-Killing condition `α(X,ξ,φY) + α(Y,ξ,φX) = 0`.
    pub fn xi_killing_residual(&self, lc: &Connection) -> CovTensor {
        let n = self.model.dim();
        let ctx = self.model.context();
        let alpha = self.alpha(lc);
        CovTensor::from_fn(ctx, n, 2, |idx| {
            let (x, y) = (idx[0], idx[1]);
            let mut acc = Scalar::zero(ctx);
            for l in 0..n {
                let pl_y = self.phi.get(l, y);
                if !pl_y.is_zero() {
                    let mut slot = Scalar::zero(ctx);
                    for s in 0..n {
                        if !self.xi.coeffs[s].is_zero() {
                            slot = &slot + &(&self.xi.coeffs[s] * &alpha[x].value(&[s, l]));
                        }
                    }
                    acc = &acc + &(pl_y * &slot);
                }
                let pl_x = self.phi.get(l, x);
                if !pl_x.is_zero() {
                    let mut slot = Scalar::zero(ctx);
                    for s in 0..n {
                        if !self.xi.coeffs[s].is_zero() {
                            slot = &slot + &(&self.xi.coeffs[s] * &alpha[y].value(&[s, l]));
                        }
                    }
                    acc = &acc + &(pl_x * &slot);
                }
            }
            acc
        })
    }

    /// `ω ∘ φ` on a k-form: `(ω∘φ)(X_1..X_k) = ω(φX_1,..,φX_k)`.
    pub fn compose_phi(&self, omega: &AltForm) -> AltForm {
        compose_endo_form(&self.phi, omega)
    }

    /// Closed-form characteristic torsion
    /// `T = η∧dη + dF∘φ + N − η∧(ξ⌟N)`; requires the criterion and the
    /// ξ-Killing condition to hold.
    pub fn characteristic_torsion(&self, lc: &Connection) -> Result<AltForm, StructureError> {
        if !self.admits_characteristic(lc) {
            return Err(StructureError::NoCharacteristicConnection);
        }
        if !self.xi_killing_residual(lc).is_zero() {
            return Err(StructureError::XiNotKilling);
        }
        let m = &self.model;
        let deta = exterior_derivative(m, &self.eta);
        let df = exterior_derivative(m, &self.big_f);
        let n_tensor = self.nijenhuis(lc);
        let n_form = n_tensor.to_alt_form();
        let t = self
            .eta
            .wedge(&deta)
            .add(&self.compose_phi(&df))
            .add(&n_form)
            .sub(&self.eta.wedge(&n_form.interior(&self.xi)));
        Ok(t)
    }

    /// Runs the exact linear solver for the characteristic connection of
    /// `(η, φ)` (also exercised independently of the closed form).
    pub fn characteristic_solve(&self) -> crate::connection::CharSolve {
        characteristic_solve(
            &self.model,
            &[
                StructTensor::Form(self.eta.clone()),
                StructTensor::Endo(self.phi.clone()),
            ],
        )
    }

    /// Evaluates the Chinea–Gonzalez table and the named class predicates.
    pub fn classify(&self) -> ClassReport {
        let m = &self.model;
        let n = m.dim();
        let ctx = m.context();
        let lc = levi_civita(m);
        let alpha_forms = self.alpha(&lc);
        let al = |i: usize, j: usize, k: usize| alpha_forms[i].value(&[j, k]);
        let eta_of = |i: usize| self.xi.coeffs[i].clone();
        let nabla_eta: Vec<AltForm> = lc.covariant_derivative_form(&self.eta);
        let deln = |i: usize, j: usize| nabla_eta[i].value(&[j]);
        let delta_f = lc.coderivative(&self.big_f);
        let delta_eta = lc.coderivative(&self.eta).coeffs()[0].clone();
        let df_of = |i: usize| delta_f.get_increasing(&[i]).clone();
        let mut delta_f_xi = Scalar::zero(ctx);
        for i in 0..n {
            delta_f_xi = &delta_f_xi + &(&eta_of(i) * &df_of(i));
        }
        // δF ∘ φ as a 1-form.
        let df_phi: Vec<Scalar> = (0..n)
            .map(|j| {
                let mut acc = Scalar::zero(ctx);
                for l in 0..n {
                    let p = self.phi.get(l, j);
                    if !p.is_zero() {
                        acc = &acc + &(p * &df_of(l));
                    }
                }
                acc
            })
            .collect();
        let g = |i: usize, j: usize| {
            if i == j {
                m.one()
            } else {
                m.zero()
            }
        };
        // g(φX, φY) = δ_xy − η_x η_y.
        let gphi = |i: usize, j: usize| &g(i, j) - &(&eta_of(i) * &eta_of(j));
        let f_of = |i: usize, j: usize| self.big_f.value(&[i, j]);
        let inv = |q: i64| Scalar::from_ratio(ctx, 1, q);

        let residual3 = |f: &dyn Fn(usize, usize, usize) -> Scalar| -> Option<(Vec<usize>, Scalar)> {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let v = f(x, y, z);
                        if !v.is_zero() {
                            return Some((vec![x + 1, y + 1, z + 1], v));
                        }
                    }
                }
            }
            None
        };

        let mut residuals = Vec::new();

        // C1: ∇F = 0 and ∇η = 0.
        residuals.push(ResidualEntry::new(
            "C1",
            residual3(&|x, y, z| al(x, y, z))
                .or_else(|| {
                    for x in 0..n {
                        for y in 0..n {
                            let v = deln(x, y);
                            if !v.is_zero() {
                                return Some((vec![x + 1, y + 1], v));
                            }
                        }
                    }
                    None
                }),
        ));
        // C2: dF = 0 and ∇η = 0.
        let df_form = exterior_derivative(m, &self.big_f);
        residuals.push(ResidualEntry::new("C2", {
            df_form.witness().or_else(|| {
                for x in 0..n {
                    for y in 0..n {
                        let v = deln(x, y);
                        if !v.is_zero() {
                            return Some((vec![x + 1, y + 1], v));
                        }
                    }
                }
                None
            })
        }));
        // C3: α(X,Y,Z) − α(φX,φY,Z) = 0.
        residuals.push(ResidualEntry::new(
            "C3",
            residual3(&|x, y, z| {
                let mut acc = al(x, y, z);
                for l in 0..n {
                    let plx = self.phi.get(l, x);
                    if plx.is_zero() {
                        continue;
                    }
                    for ml in 0..n {
                        let pmy = self.phi.get(ml, y);
                        if !pmy.is_zero() {
                            acc = &acc - &(&(plx * pmy) * &al(l, ml, z));
                        }
                    }
                }
                acc
            }),
        ));
        // C4 (needs n > 3): the table relation with the φ-contracted δF
        // terms, plus δF(ξ) = 0. The paper's fourth term is read as
        // F(X,Z)·δF(φY), restoring the (Y,Z)-antisymmetry of the row.
        if n > 3 {
            let c4 = residual3(&|x, y, z| {
                let mut rhs = &gphi(x, y) * &df_of(z);
                rhs = &rhs - &(&gphi(x, z) * &df_of(y));
                rhs = &rhs - &(&f_of(x, y) * &df_phi[z]);
                rhs = &rhs + &(&f_of(x, z) * &df_phi[y]);
                &al(x, y, z) + &(&rhs * &inv((n - 3) as i64))
            })
            .or_else(|| {
                if delta_f_xi.is_zero() {
                    None
                } else {
                    Some((vec![0], delta_f_xi.clone()))
                }
            });
            residuals.push(ResidualEntry::new("C4", c4));
        }
        // C5: α = (δη/(n−1)) [F(X,Z)η(Y) − F(X,Y)η(Z)].
        residuals.push(ResidualEntry::new(
            "C5",
            residual3(&|x, y, z| {
                let rhs = &(&f_of(x, z) * &eta_of(y)) - &(&f_of(x, y) * &eta_of(z));
                &al(x, y, z) - &(&(&rhs * &delta_eta) * &inv((n - 1) as i64))
            }),
        ));
        // C6: α = (δF(ξ)/(n−1)) [g(X,Z)η(Y) − g(X,Y)η(Z)].
        residuals.push(ResidualEntry::new(
            "C6",
            residual3(&|x, y, z| {
                let rhs = &(&g(x, z) * &eta_of(y)) - &(&g(x, y) * &eta_of(z));
                &al(x, y, z) - &(&(&rhs * &delta_f_xi) * &inv((n - 1) as i64))
            }),
        ));
        // (∇_Y η)(φX) and (∇_{φX} η)(Z) contractions for C7–C10.
        let dephi = |y: usize, x: usize| {
            let mut acc = Scalar::zero(ctx);
            for l in 0..n {
                let p = self.phi.get(l, x);
                if !p.is_zero() {
                    acc = &acc + &(p * &deln(y, l));
                }
            }
            acc
        };
        let dphie = |x: usize, z: usize| {
            let mut acc = Scalar::zero(ctx);
            for l in 0..n {
                let p = self.phi.get(l, x);
                if !p.is_zero() {
                    acc = &acc + &(p * &deln(l, z));
                }
            }
            acc
        };
        let mut push_c = |label: &str, ce: i64, be: i64, extra_delta_f: bool, extra_delta_eta: bool| {
            let ces = Scalar::from_int(ctx, ce);
            let bes = Scalar::from_int(ctx, be);
            let w = residual3(&|x, y, z| {
                let rhs = &(&(&eta_of(z) * &dephi(y, x)) * &ces)
                    + &(&(&eta_of(y) * &dphie(x, z)) * &bes);
                &al(x, y, z) - &rhs
            })
            .or_else(|| {
                if extra_delta_f {
                    for i in 0..n {
                        let v = df_of(i);
                        if !v.is_zero() {
                            return Some((vec![i + 1], v));
                        }
                    }
                }
                if extra_delta_eta && !delta_eta.is_zero() {
                    return Some((vec![0], delta_eta.clone()));
                }
                None
            });
            residuals.push(ResidualEntry::new(label, w));
        };
        push_c("C7", 1, 1, true, false);
        push_c("C8", -1, 1, false, true);
        push_c("C9", 1, -1, false, false);
        push_c("C10", -1, -1, false, false);
        // C11: α(X,Y,Z) = −η(X)(∇^g_ξ F)(φY, φZ).
        let nabla_xi_f = {
            let mut acc = AltForm::zero(ctx, n, 2);
            for s in 0..n {
                if !self.xi.coeffs[s].is_zero() {
                    acc = acc.add(&alpha_forms[s].scale(&self.xi.coeffs[s]));
                }
            }
            acc
        };
        let nxf_phi = self.compose_phi(&nabla_xi_f);
        residuals.push(ResidualEntry::new(
            "C11",
            residual3(&|x, y, z| &al(x, y, z) + &(&eta_of(x) * &nxf_phi.value(&[y, z]))),
        ));
        // C12: α = η(X)η(Z)(∇_ξη)(φY) − η(X)η(Y)(∇_ξη)(φZ).
        let dxi_eta_phi: Vec<Scalar> = (0..n)
            .map(|y| {
                let mut acc = Scalar::zero(ctx);
                for s in 0..n {
                    if !self.xi.coeffs[s].is_zero() {
                        acc = &acc + &(&self.xi.coeffs[s] * &dephi(s, y));
                    }
                }
                acc
            })
            .collect();
        residuals.push(ResidualEntry::new(
            "C12",
            residual3(&|x, y, z| {
                let rhs = &(&(&eta_of(x) * &eta_of(z)) * &dxi_eta_phi[y])
                    - &(&(&eta_of(x) * &eta_of(y)) * &dxi_eta_phi[z]);
                &al(x, y, z) - &rhs
            }),
        ));

        // Named verdicts.
        let nijenhuis = self.nijenhuis(&lc);
        let normal = nijenhuis.is_zero();
        let quasi_sasaki = normal && df_form.is_zero();
        let deta = exterior_derivative(m, &self.eta);
        // α-Sasaki: normal and dη = c·F for an exact constant c.
        let alpha_sasaki_const = proportionality_constant(&deta, &self.big_f);
        let alpha_sasaki = normal && alpha_sasaki_const.is_some();
        let sasaki = alpha_sasaki
            && (&delta_f_xi - &Scalar::from_int(ctx, (n - 1) as i64)).is_zero();
        let criterion = self.char_criterion_residual(&lc).is_zero();

        let mut verdicts = vec![
            ("normal".to_string(), normal),
            ("quasi-sasaki".to_string(), quasi_sasaki),
            ("alpha-sasaki".to_string(), alpha_sasaki),
            ("sasaki".to_string(), sasaki),
            ("admits-characteristic".to_string(), criterion),
        ];
        let mut invariants = vec![
            ("deltaF(xi)".to_string(), delta_f_xi),
            ("delta_eta".to_string(), delta_eta),
        ];
        if let Some(c) = alpha_sasaki_const {
            verdicts.push(("deta-proportional-F".to_string(), true));
            invariants.push(("alpha_sasaki_constant".to_string(), c));
        } else {
            verdicts.push(("deta-proportional-F".to_string(), false));
        }

        ClassReport {
            geometry: "metric almost contact",
            residuals,
            verdicts,
            invariants,
            char_connection: None,
        }
    }
}

/// `ω ↦ ω(A·, .., A·)` for an endomorphism and a k-form.
pub fn compose_endo_form(a: &Endo, omega: &AltForm) -> AltForm {
    let n = omega.dim();
    let k = omega.degree();
    let ctx = omega.context();
    let mut out = AltForm::zero(ctx, n, k);
    for tuple in crate::tensor::combinations(n, k) {
        let mut acc = Scalar::zero(ctx);
        let mut img = vec![0usize; k];
        fn rec(
            a: &Endo,
            omega: &AltForm,
            tuple: &[usize],
            img: &mut [usize],
            coeff: Scalar,
            slot: usize,
            acc: &mut Scalar,
        ) {
            if coeff.is_zero() {
                return;
            }
            if slot == tuple.len() {
                let v = omega.value(img);
                if !v.is_zero() {
                    *acc = &*acc + &(&coeff * &v);
                }
                return;
            }
            for l in 0..omega.dim() {
                let p = a.get(l, tuple[slot]);
                if !p.is_zero() {
                    img[slot] = l;
                    rec(a, omega, tuple, img, &coeff * p, slot + 1, acc);
                }
            }
        }
        rec(a, omega, &tuple, &mut img, Scalar::one(ctx), 0, &mut acc);
        out.set_increasing(&tuple, acc);
    }
    out
}

/// If `lhs = c · rhs` for a single field constant `c`, returns `c`.
pub fn proportionality_constant(lhs: &AltForm, rhs: &AltForm) -> Option<Scalar> {
    let mut c: Option<Scalar> = None;
    for (a, b) in lhs.coeffs().iter().zip(rhs.coeffs()) {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => continue,
            (false, true) => return None,
            _ => {
                let ratio = a.checked_div(b).ok()?;
                match &c {
                    None => c = Some(ratio),
                    Some(prev) if (prev - &ratio).is_zero() => {}
                    _ => return None,
                }
            }
        }
    }
    c.or_else(|| {
        if lhs.is_zero() {
            Some(Scalar::zero(lhs.context()))
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::ModelKind;
    use crate::scalar::Context;

    pub fn heisenberg() -> Arc<FrameModel> {
        let ctx = Context::new(&["rho"]);
        let mut m = FrameModel::new(&ctx, 5, ModelKind::LieGroup);
        let rho = m.scalar("rho");
        m.set_bracket(0, 1, 4, rho.clone());
        m.set_bracket(2, 3, 4, rho);
        m.validate().unwrap();
        Arc::new(m)
    }

    fn f1(m: &Arc<FrameModel>) -> ContactStructure {
        let eta = AltForm::from_terms(m.context(), 5, 1, &[(&[4], m.one())]);
        let f = AltForm::from_terms(
            m.context(),
            5,
            2,
            &[(&[0, 1], m.one()), (&[2, 3], -m.one())],
        );
        ContactStructure::from_fundamental(m, eta, &f).unwrap()
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
    fn heisenberg_structures_are_normal_with_closed_df() {
        let m = heisenberg();
        let lc = levi_civita(&m);
        for s in [f1(&m), f2(&m)] {
            assert!(s.nijenhuis(&lc).is_zero());
            assert!(exterior_derivative(&m, s.fundamental()).is_zero());
        }
    }

    #[test]
    fn heisenberg_characteristic_torsion() {
        let m = heisenberg();
        let lc = levi_civita(&m);
        let expect = AltForm::from_terms(
            m.context(),
            5,
            3,
            &[
                (&[0, 1, 4], m.scalar("-rho")),
                (&[2, 3, 4], m.scalar("-rho")),
            ],
        );
        for s in [f1(&m), f2(&m)] {
            assert!(s.admits_characteristic(&lc));
            let t = s.characteristic_torsion(&lc).unwrap();
            assert_eq!(t, expect, "closed-form torsion");
            match s.characteristic_solve() {
                crate::connection::CharSolve::Unique(t2) => assert_eq!(t2, expect, "solver torsion"),
                other => panic!("expected unique characteristic torsion, got {other:?}"),
            }
        }
    }

    #[test]
    fn heisenberg_classes() {
        let m = heisenberg();
        let r1 = f1(&m).classify();
        assert!(r1.is_class("C7"), "F1 is of class C7: {:?}", r1.residual("C7"));
        assert!(!r1.is_class("C6"));
        assert_eq!(r1.verdict("normal"), Some(true));
        assert_eq!(r1.verdict("sasaki"), Some(false));
        assert_eq!(r1.verdict("deta-proportional-F"), Some(false));

        let r2 = f2(&m).classify();
        assert!(r2.is_class("C6"), "F2 is of class C6: {:?}", r2.residual("C6"));
        assert!(!r2.is_class("C7"));
        // dη = ρ F₂ and δF(ξ) = 2ρ: Sasaki exactly at ρ = 2.
        assert_eq!(
            r2.invariant("alpha_sasaki_constant").unwrap(),
            &m.scalar("rho")
        );
        assert_eq!(r2.invariant("deltaF(xi)").unwrap(), &m.scalar("2*rho"));
        assert_eq!(r2.verdict("sasaki"), Some(false));
    }

    #[test]
    fn alpha_tensor_identities() {
        // α(X,Y,Z) = −α(X,Z,Y) = −α(X,φY,φZ) + η(Y)α(X,ξ,Z) + η(Z)α(X,Y,ξ)
        let m = heisenberg();
        let lc = levi_civita(&m);
        let s = f2(&m);
        let alpha = s.alpha(&lc);
        let al = |i: usize, j: usize, k: usize| alpha[i].value(&[j, k]);
        let n = 5;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let eta_y = &s.xi().coeffs[y];
                    let eta_z = &s.xi().coeffs[z];
                    let mut phi_term = Scalar::zero(m.context());
                    for l in 0..n {
                        let ply = s.phi().get(l, y);
                        if ply.is_zero() {
                            continue;
                        }
                        for q in 0..n {
                            let pqz = s.phi().get(q, z);
                            if !pqz.is_zero() {
                                phi_term = &phi_term + &(&(ply * pqz) * &al(x, l, q));
                            }
                        }
                    }
                    let mut xi_y = Scalar::zero(m.context());
                    let mut xi_z = Scalar::zero(m.context());
                    for ss in 0..n {
                        if !s.xi().coeffs[ss].is_zero() {
                            xi_y = &xi_y + &(&s.xi().coeffs[ss] * &al(x, ss, z));
                            xi_z = &xi_z + &(&s.xi().coeffs[ss] * &al(x, y, ss));
                        }
                    }
                    let rhs = &(&-&phi_term + &(eta_y * &xi_y)) + &(eta_z * &xi_z);
                    assert!((&al(x, y, z) - &rhs).is_zero(), "eq:genforacs at {x}{y}{z}");
                    assert!((&al(x, y, z) + &al(x, z, y)).is_zero());
                }
            }
        }
    }
}
