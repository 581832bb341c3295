//! Spin(7) structures: a 4-form Φ on an 8-dimensional frame model, the
//! derived families P̄ and p̄, and the Fernández class tests U₁/U₂. For
//! cone-induced structures the U₁/U₂ conditions are evaluated on the base
//! G₂ data, with the second U₁ condition computed along two independent
//! routes that must agree.

use super::{ClassReport, ResidualEntry};
use crate::connection::{add_torsion, levi_civita, Connection};
use crate::frame::{FrameModel, VectorField};
use crate::scalar::Scalar;
use crate::tensor::{combinations, AltForm};
use std::sync::Arc;

/// Base-side data carried by a cone-induced Spin(7) structure.
#[derive(Clone, Debug)]
pub struct Spin7ConeData {
    pub base: Arc<FrameModel>,
    /// Base G₂ 3-form.
    pub phi3: AltForm,
    /// Base characteristic torsion of the G₂ structure.
    pub tc: AltForm,
    /// The cone constant.
    pub a: Scalar,
}

#[derive(Clone, Debug)]
pub struct Spin7Structure {
    model: Arc<FrameModel>,
    phi4: AltForm,
    cone_data: Option<Spin7ConeData>,
}

impl Spin7Structure {
    pub fn new(model: &Arc<FrameModel>, phi4: AltForm) -> Spin7Structure {
        assert_eq!(model.dim(), 8, "Spin(7) structures live on 8-dimensional models");
        assert_eq!(phi4.degree(), 4);
        Spin7Structure { model: model.clone(), phi4, cone_data: None }
    }

    pub fn new_cone_induced(
        model: &Arc<FrameModel>,
        phi4: AltForm,
        data: Spin7ConeData,
    ) -> Spin7Structure {
        let mut s = Spin7Structure::new(model, phi4);
        s.cone_data = Some(data);
        s
    }

    pub fn model(&self) -> &Arc<FrameModel> {
        &self.model
    }

    pub fn phi4(&self) -> &AltForm {
        &self.phi4
    }

    pub fn cone_data(&self) -> Option<&Spin7ConeData> {
        self.cone_data.as_ref()
    }

    /// `P̄(X,Y,Z) = Σ_v Φ(X,Y,Z,e_v) e_v`.
    pub fn p_bar(&self, x: usize, y: usize, z: usize) -> VectorField {
        let ctx = self.model.context();
        let mut v = VectorField::zero(ctx, 8);
        for l in 0..8 {
            v.coeffs[l] = self.phi4.value(&[x, y, z, l]);
        }
        v
    }

    /// `p̄(X) = −X⌟Φ` (the 3-form with `g(X, P̄(ξ)) = g(p̄(X), ξ)` in the
    /// determinant pairing on 3-forms).
    pub fn p_small(&self, x: usize) -> AltForm {
        self.phi4.interior_frame(x).neg()
    }

    /// The intermediate base connection `∇` with `T = T^c − (2a/3)φ`.
    pub fn intermediate_base_connection(&self) -> Option<Connection> {
        let data = self.cone_data.as_ref()?;
        let t = data
            .tc
            .sub(&data.phi3.scale(&(&(&data.a + &data.a) * &Scalar::from_ratio(
                data.base.context(),
                1,
                3,
            ))));
        Some(add_torsion(
            &levi_civita(&data.base),
            &t,
            &Scalar::from_ratio(data.base.context(), 1, 2),
        ))
    }

    /// First U₁ condition as a residual: `g(∇^gφ, *φ) − a·g(*φ, *φ)`.
    pub fn u1_condition1(&self) -> Option<Scalar> {
        let data = self.cone_data.as_ref()?;
        let g2 = super::g2::G2Structure::new(&data.base, data.phi3.clone());
        let lc = levi_civita(&data.base);
        let s1 = g2.pair_nabla_phi_star_phi(&lc);
        let s2 = g2.pair_star_phi_star_phi();
        Some(&s1 - &(&data.a * &s2))
    }

    /// Second U₁ condition, per frame direction X, straight from the class
    /// lemma: `g(*φ, [(∇−∇^g)*φ]⌞X) − 3 g(φ, [(∇−∇^g)φ]⌞X)`.
    pub fn u1_condition2_direct(&self) -> Option<Vec<Scalar>> {
        let data = self.cone_data.as_ref()?;
        let ctx = data.base.context();
        let lc = levi_civita(&data.base);
        let nabla = self.intermediate_base_connection()?;
        let g2 = super::g2::G2Structure::new(&data.base, data.phi3.clone());
        let star = g2.star_phi();
        let d_star: Vec<AltForm> = {
            let a = nabla.covariant_derivative_form(&star);
            let b = lc.covariant_derivative_form(&star);
            a.iter().zip(&b).map(|(x, y)| x.sub(y)).collect()
        };
        let d_phi: Vec<AltForm> = {
            let a = nabla.covariant_derivative_form(&data.phi3);
            let b = lc.covariant_derivative_form(&data.phi3);
            a.iter().zip(&b).map(|(x, y)| x.sub(y)).collect()
        };
        let six = Scalar::from_int(ctx, 6);
        let two = Scalar::from_int(ctx, 2);
        let three = Scalar::from_int(ctx, 3);
        let mut out = Vec::with_capacity(7);
        for x in 0..7 {
            // Σ_{i,jkl} *φ(i,j,k,l)(D_i *φ)(j,k,l,X): both factors are
            // alternating in (j,k,l), so sum increasing triples times 3!.
            let mut term1 = Scalar::zero(ctx);
            for i in 0..7 {
                for t in combinations(7, 3) {
                    let s = star.value(&[i, t[0], t[1], t[2]]);
                    if s.is_zero() {
                        continue;
                    }
                    let d = d_star[i].value(&[t[0], t[1], t[2], x]);
                    if !d.is_zero() {
                        term1 = &term1 + &(&s * &d);
                    }
                }
            }
            term1 = &term1 * &six;
            // 3 Σ_{i,jk} φ(i,j,k)(D_i φ)(j,k,X): alternating in (j,k) → 2!.
            let mut term2 = Scalar::zero(ctx);
            for i in 0..7 {
                for t in combinations(7, 2) {
                    let p = data.phi3.value(&[i, t[0], t[1]]);
                    if p.is_zero() {
                        continue;
                    }
                    let d = d_phi[i].value(&[t[0], t[1], x]);
                    if !d.is_zero() {
                        term2 = &term2 + &(&p * &d);
                    }
                }
            }
            term2 = &(&term2 * &two) * &three;
            out.push(&term1 - &term2);
        }
        Some(out)
    }

    /// Second U₁ condition through the reformulation that needs only φ, *φ
    /// and ∇^gφ (plus the cone constant a), per frame direction X.
    pub fn u1_condition2_reformulated(&self) -> Option<Vec<Scalar>> {
        let data = self.cone_data.as_ref()?;
        let ctx = data.base.context();
        let lc = levi_civita(&data.base);
        let g2 = super::g2::G2Structure::new(&data.base, data.phi3.clone());
        let star = g2.star_phi();
        let phi = &data.phi3;
        let nabla_phi = lc.covariant_derivative_form(phi);

        // Enumerate the nonzero components of *φ over all orderings once.
        let mut star_entries: Vec<([usize; 4], Scalar)> = Vec::new();
        for t in combinations(7, 4) {
            let c = star.get_increasing(&t);
            if c.is_zero() {
                continue;
            }
            for perm in permutations4() {
                let idx = [t[perm[0]], t[perm[1]], t[perm[2]], t[perm[3]]];
                star_entries.push((idx, star.value(&idx)));
            }
        }

        let mut out = Vec::with_capacity(7);
        for x in 0..7 {
            let mut acc = Scalar::zero(ctx);
            for (idx, sc) in &star_entries {
                let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
                for mm in 0..7 {
                    // +*φ(i,j,k,l)(∇^g_i φ)(j,k,m) φ(m,l,X)
                    let d1 = nabla_phi[i].value(&[j, k, mm]);
                    if !d1.is_zero() {
                        let p = phi.value(&[mm, l, x]);
                        if !p.is_zero() {
                            acc = &acc + &(&(sc * &d1) * &p);
                        }
                    }
                    // +*φ(i,j,k,l)(∇^g_i φ)(l,X,m) φ(m,j,k)
                    let d2 = nabla_phi[i].value(&[l, x, mm]);
                    if !d2.is_zero() {
                        let p = phi.value(&[mm, j, k]);
                        if !p.is_zero() {
                            acc = &acc + &(&(sc * &d2) * &p);
                        }
                    }
                    // −*φ(i,j,k,l)*φ(i,j,k,m)φ(m,l,X)
                    let s2 = star.value(&[i, j, k, mm]);
                    if !s2.is_zero() {
                        let p = phi.value(&[mm, l, x]);
                        if !p.is_zero() {
                            acc = &acc - &(&(sc * &s2) * &p);
                        }
                    }
                    // −*φ(i,l,j,k)*φ(i,l,X,m)φ(m,j,k); the first factor is
                    // the same entry *φ(i,l,j,k) re-read with its own sign.
                    let s3 = star.value(&[idx[0], idx[3], idx[1], idx[2]]);
                    if !s3.is_zero() {
                        let s4 = star.value(&[i, l, x, mm]);
                        if !s4.is_zero() {
                            let p = phi.value(&[mm, j, k]);
                            if !p.is_zero() {
                                acc = &acc - &(&(&s3 * &s4) * &p);
                            }
                        }
                    }
                }
            }
            // Tail: 3 Σ_{i,j,k} [−φ(i,j,k)(∇^g_iφ)(j,k,X) + a φ(i,j,k)*φ(i,j,k,X)]
            let mut tail = Scalar::zero(ctx);
            for i in 0..7 {
                for t in combinations(7, 2) {
                    let p = phi.value(&[i, t[0], t[1]]);
                    if p.is_zero() {
                        continue;
                    }
                    let d = nabla_phi[i].value(&[t[0], t[1], x]);
                    if !d.is_zero() {
                        tail = &tail - &(&p * &d);
                    }
                    let s = star.value(&[i, t[0], t[1], x]);
                    if !s.is_zero() {
                        tail = &tail + &(&(&data.a * &p) * &s);
                    }
                }
            }
            // the (j,k) pair above enumerates increasing pairs; both factors
            // alternate in (j,k), so scale by 2! and by the overall 3.
            tail = &tail * &Scalar::from_int(ctx, 6);
            out.push(&acc + &tail);
        }
        Some(out)
    }

    /// The three defining conditions of the class U₂ on the base.
    pub fn u2_conditions(&self) -> Option<[ResidualEntry; 3]> {
        let data = self.cone_data.as_ref()?;
        let ctx = data.base.context();
        let lc = levi_civita(&data.base);
        let nabla = self.intermediate_base_connection()?;
        let g2 = super::g2::G2Structure::new(&data.base, data.phi3.clone());
        let star = g2.star_phi();
        let phi = &data.phi3;
        let d_star: Vec<AltForm> = {
            let a = lc.covariant_derivative_form(&star);
            let b = nabla.covariant_derivative_form(&star);
            a.iter().zip(&b).map(|(x, y)| x.sub(y)).collect() // (∇^g − ∇)*φ
        };
        let delta_phi = lc.coderivative(phi);

        // (1) 0 = Σ_i [(∇^g − ∇)_{e_i} *φ](e_i, X, Y, Z).
        let mut w1 = None;
        'one: for t in combinations(7, 3) {
            let mut acc = Scalar::zero(ctx);
            for i in 0..7 {
                let v = d_star[i].value(&[i, t[0], t[1], t[2]]);
                if !v.is_zero() {
                    acc = &acc + &v;
                }
            }
            if !acc.is_zero() {
                w1 = Some((t.iter().map(|&i| i + 1).collect(), acc));
                break 'one;
            }
        }

        // b(X) := Σ_{l<j} δφ(e_l, e_j) φ(e_l, e_j, X).
        let b: Vec<Scalar> = (0..7)
            .map(|x| {
                let mut acc = Scalar::zero(ctx);
                for t in combinations(7, 2) {
                    let d = delta_phi.get_increasing(&t);
                    if !d.is_zero() {
                        let p = phi.value(&[t[0], t[1], x]);
                        if !p.is_zero() {
                            acc = &acc + &(d * &p);
                        }
                    }
                }
                acc
            })
            .collect();

        // (2) 0 = Σ_i (−1)^i b(X_i) φ(X_1,..,X̂_i,..,X_4).
        let mut w2 = None;
        'two: for t in combinations(7, 4) {
            let mut acc = Scalar::zero(ctx);
            for i in 0..4 {
                if b[t[i]].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = (0..4).filter(|&q| q != i).map(|q| t[q]).collect();
                let p = phi.value(&rest);
                if p.is_zero() {
                    continue;
                }
                let term = &b[t[i]] * &p;
                acc = if (i + 1) % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            if !acc.is_zero() {
                w2 = Some((t.iter().map(|&i| i + 1).collect(), acc));
                break 'two;
            }
        }

        // (3) 28 [(∇^g−∇)_W *φ](X_1..X_4)
        //      = Σ_i (−1)^{i+1} b(X_i) *φ(W, X_1,..,X̂_i,..,X_4).
        let tw8 = Scalar::from_int(ctx, 28);
        let mut w3 = None;
        'three: for w in 0..7 {
            for t in combinations(7, 4) {
                let lhs = &tw8 * &d_star[w].get_increasing(&t).clone();
                let mut rhs = Scalar::zero(ctx);
                for i in 0..4 {
                    if b[t[i]].is_zero() {
                        continue;
                    }
                    let mut idx = vec![w];
                    idx.extend((0..4).filter(|&q| q != i).map(|q| t[q]));
                    let s = star.value(&idx);
                    if s.is_zero() {
                        continue;
                    }
                    let term = &b[t[i]] * &s;
                    rhs = if i % 2 == 0 { &rhs + &term } else { &rhs - &term };
                }
                let resid = &lhs - &rhs;
                if !resid.is_zero() {
                    let mut idx = vec![w + 1];
                    idx.extend(t.iter().map(|&i| i + 1));
                    w3 = Some((idx, resid));
                    break 'three;
                }
            }
        }

        Some([
            ResidualEntry::new("U2-1", w1),
            ResidualEntry::new("U2-2", w2),
            ResidualEntry::new("U2-3", w3),
        ])
    }

    /// Full coderivative δΦ on the 8-dimensional model.
    pub fn delta_phi4(&self) -> AltForm {
        let lc = levi_civita(&self.model);
        lc.coderivative(&self.phi4)
    }

    pub fn classify(&self) -> ClassReport {
        let mut residuals = Vec::new();
        let mut verdicts = Vec::new();
        let mut invariants = Vec::new();

        let delta = self.delta_phi4();
        residuals.push(ResidualEntry::new("integrable-deltaPhi", delta.witness()));
        verdicts.push(("integrable".to_string(), residuals[0].is_zero));

        if self.cone_data.is_some() {
            let c1 = self.u1_condition1().unwrap();
            let c1_zero = c1.is_zero();
            residuals.push(ResidualEntry::new(
                "U1-cond1",
                if c1_zero { None } else { Some((vec![0], c1.clone())) },
            ));
            invariants.push(("U1-cond1-residual".to_string(), c1));

            let direct = self.u1_condition2_direct().unwrap();
            let reform = self.u1_condition2_reformulated().unwrap();
            let witness_of = |v: &[Scalar]| {
                v.iter()
                    .position(|s| !s.is_zero())
                    .map(|x| (vec![x + 1], v[x].clone()))
            };
            residuals.push(ResidualEntry::new("U1-cond2-lemma", witness_of(&direct)));
            residuals.push(ResidualEntry::new(
                "U1-cond2-reformulated",
                witness_of(&reform),
            ));
            let cond2 = residuals[2].is_zero;
            assert_eq!(
                cond2, residuals[3].is_zero,
                "the two evaluations of the second U1 condition disagree"
            );
            verdicts.push(("U1".to_string(), c1_zero && cond2));

            let u2 = self.u2_conditions().unwrap();
            let u2_all = u2.iter().all(|r| r.is_zero);
            residuals.extend(u2);
            verdicts.push(("U2".to_string(), u2_all));
        }

        ClassReport {
            geometry: "Spin(7)",
            residuals,
            verdicts,
            invariants,
            char_connection: None,
        }
    }
}

fn permutations4() -> &'static [[usize; 4]; 24] {
    const P: [[usize; 4]; 24] = [
        [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
        [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
        [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
        [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
    ];
    &P
}
