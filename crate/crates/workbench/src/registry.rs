//! Built-in model registry: the worked examples (Heisenberg group,
//! SO(3)×SL(2,ℝ)/SO(2), the canonical G₂ structure of a 7-dimensional
//! 3-Sasakian manifold), flat tori, and synthetic pure-class fixtures.

use conewb_core::frame::{FrameModel, ModelKind};
use conewb_core::scalar::{big_ratio, Context, Scalar};
use conewb_core::structures::contact::ContactStructure;
use conewb_core::structures::g2::G2Structure;
use conewb_core::tensor::AltForm;
use conewb_core::scalar::BigRational;
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum RegistryError {
    #[error("unknown model `{0}` (known: {1})")]
    UnknownModel(String, String),
    #[error("model `{0}` has no structure named `{1}`")]
    UnknownStructure(String, String),
}

/// A registry fixture: a model plus its named structures and the expected
/// data the verification suite checks against.
pub struct Fixture {
    pub name: String,
    pub model: Arc<FrameModel>,
    pub contacts: Vec<(String, ContactStructure)>,
    pub g2: Option<(String, G2Structure)>,
    /// Documented closed-form characteristic torsion, when the source gives
    /// one (shared by all contact structures of the fixture).
    pub tc: Option<AltForm>,
    /// Default rational instantiation for sign-dependent checks.
    pub default_params: Vec<(&'static str, BigRational)>,
    /// The three Sasakian structures of a 3-Sasakian fixture.
    pub contact3: Option<[ContactStructure; 3]>,
}

impl Fixture {
    pub fn contact(&self, name: &str) -> Result<&ContactStructure, RegistryError> {
        self.contacts
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| RegistryError::UnknownStructure(self.name.clone(), name.into()))
    }

    pub fn structure_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.contacts.iter().map(|(n, _)| n.clone()).collect();
        if let Some((n, _)) = &self.g2 {
            names.push(n.clone());
        }
        names
    }
}

pub fn known_models() -> Vec<&'static str> {
    vec![
        "flat3", "flat4", "flat5", "flat6", "flat7",
        "heisenberg", "so3sl2", "sasaki3_canonical",
        "synthetic_c2", "synthetic_c5", "synthetic_c12",
    ]
}

pub fn registry_get(name: &str) -> Result<Fixture, RegistryError> {
    match name {
        "flat3" => Ok(flat(3)),
        "flat4" => Ok(flat(4)),
        "flat5" => Ok(flat(5)),
        "flat6" => Ok(flat(6)),
        "flat7" => Ok(flat(7)),
        "heisenberg" => Ok(heisenberg()),
        "so3sl2" => Ok(so3sl2()),
        "sasaki3_canonical" => Ok(sasaki3_canonical()),
        "synthetic_c2" => Ok(synthetic_c2()),
        "synthetic_c5" => Ok(synthetic_c5()),
        "synthetic_c12" => Ok(synthetic_c12()),
        other => Err(RegistryError::UnknownModel(
            other.into(),
            known_models().join(", "),
        )),
    }
}

fn basis_form(ctx: &Arc<Context>, dim: usize, idx: &[usize], coeff: Scalar) -> AltForm {
    AltForm::from_terms(ctx, dim, idx.len(), &[(idx, coeff)])
}

/// Flat n-torus. Odd n ≥ 5 gets the standard parallel contact structure,
/// n = 7 additionally the parallel G₂ form.
pub fn flat(n: usize) -> Fixture {
    let ctx = Context::new::<&str>(&[]);
    let model = Arc::new(FrameModel::flat(&ctx, n));
    let mut contacts = Vec::new();
    if n % 2 == 1 && n >= 5 {
        let eta = basis_form(&ctx, n, &[n - 1], model.one());
        let mut f = AltForm::zero(&ctx, n, 2);
        for p in 0..(n - 1) / 2 {
            f.set_increasing(&[2 * p, 2 * p + 1], model.one());
        }
        contacts.push((
            "F".to_string(),
            ContactStructure::from_fundamental(&model, eta, &f).unwrap(),
        ));
    }
    let g2 = (n == 7).then(|| {
        (
            "phi".to_string(),
            G2Structure::new(&model, conewb_core::structures::g2::standard_phi(&model)),
        )
    });
    Fixture {
        name: format!("flat{n}"),
        model,
        contacts,
        g2,
        tc: None,
        default_params: vec![],
        contact3: None,
    }
}

/// The 5-dimensional Heisenberg group with metric family g_ρ:
/// `[e1,e2] = [e3,e4] = ρ e5`, structures F1 = e12 − e34 and
/// F2 = −(e12 + e34), ξ = e5.
pub fn heisenberg() -> Fixture {
    let ctx = Context::new(&["rho"]);
    let mut m = FrameModel::new(&ctx, 5, ModelKind::LieGroup);
    let rho = m.scalar("rho");
    m.set_bracket(0, 1, 4, rho.clone());
    m.set_bracket(2, 3, 4, rho.clone());
    m.validate().expect("heisenberg brackets are a Lie algebra");
    let model = Arc::new(m);
    let eta = basis_form(&ctx, 5, &[4], model.one());
    let f1 = AltForm::from_terms(
        &ctx,
        5,
        2,
        &[(&[0, 1], model.one()), (&[2, 3], -model.one())],
    );
    let f2 = AltForm::from_terms(
        &ctx,
        5,
        2,
        &[(&[0, 1], -model.one()), (&[2, 3], -model.one())],
    );
    let tc = AltForm::from_terms(
        &ctx,
        5,
        3,
        &[
            (&[0, 1, 4], model.scalar("-rho")),
            (&[2, 3, 4], model.scalar("-rho")),
        ],
    );
    Fixture {
        name: "heisenberg".into(),
        contacts: vec![
            (
                "F1".into(),
                ContactStructure::from_fundamental(&model, eta.clone(), &f1).unwrap(),
            ),
            (
                "F2".into(),
                ContactStructure::from_fundamental(&model, eta, &f2).unwrap(),
            ),
        ],
        g2: None,
        tc: Some(tc),
        default_params: vec![("rho", big_ratio(1, 1))],
        contact3: None,
        model,
    }
}

/// The homogeneous space SO(3)×SL(2,ℝ)/SO(2), presented through its
/// reductive complement: `[e1,e2] = c1 e5`, `[e3,e4] = c2 e5`,
/// `[e5,e1] = c1 e2`, `[e5,e2] = −c1 e1`, `[e5,e3] = c2 e4`,
/// `[e5,e4] = −c2 e3` (the constraints D₁² = c₁(c₁+c₂), D₂² = −c₂(c₁+c₂)
/// are already absorbed; the default point is c1 = −25, c2 = 16 with
/// D1 = 15, D2 = 12). Structure ξ = e5, F = e12 + e34.
///
/// The m-projected brackets do not close into a Lie algebra (the isotropy
/// component of [e1,e2] is dropped), so the model is marked as a partial
/// fixture: exterior calculus is valid on the Ad(SO(2))-invariant tensors
/// the source displays, which is everything the suite asserts.
pub fn so3sl2() -> Fixture {
    let ctx = Context::new(&["c1", "c2"]);
    let mut m = FrameModel::new(&ctx, 5, ModelKind::ReductiveHomogeneous);
    let c1 = m.scalar("c1");
    let c2 = m.scalar("c2");
    m.set_bracket(0, 1, 4, c1.clone());
    m.set_bracket(2, 3, 4, c2.clone());
    m.set_bracket(4, 0, 1, c1.clone());
    m.set_bracket(4, 1, 0, -&c1);
    m.set_bracket(4, 2, 3, c2.clone());
    m.set_bracket(4, 3, 2, -&c2);
    m.validate().expect("structure functions are r-free");
    let model = Arc::new(m);
    let eta = basis_form(&ctx, 5, &[4], model.one());
    let f = AltForm::from_terms(
        &ctx,
        5,
        2,
        &[(&[0, 1], model.one()), (&[2, 3], model.one())],
    );
    let tc = AltForm::from_terms(
        &ctx,
        5,
        3,
        &[(&[0, 1, 4], -&c1), (&[2, 3, 4], -&c2)],
    );
    Fixture {
        name: "so3sl2".into(),
        contacts: vec![(
            "F".into(),
            ContactStructure::from_fundamental(&model, eta, &f).unwrap(),
        )],
        g2: None,
        tc: Some(tc),
        default_params: vec![("c1", big_ratio(-25, 1)), ("c2", big_ratio(16, 1))],
        contact3: None,
        model,
    }
}

/// A 7-dimensional 3-Sasakian manifold, presented through its Sasaki
/// connection data: with ξ_i = e_i (i = 1,2,3) and
///   F1 = −η23 − η45 − η67, F2 = η13 − η46 + η57, F3 = −η12 − η47 − η56,
/// the Levi-Civita connection is pinned by ∇^g_X η_i = X⌟F_i
/// (Γ_{X,ξ_i,Z} = F_i(X,Z)) with the horizontal block zero, and frame
/// brackets are derived as c = Γ − Γᵀ. Carries the canonical G₂ form
/// φ = Ση_i∧F_i + 4η123 with torsion T^c = Ση_i∧dη_i (dη_i = 2F_i).
///
/// The context includes the free symbol `a` for symbolic cone constants.
pub fn sasaki3_canonical() -> Fixture {
    let ctx = Context::new(&["a"]);
    let n = 7;
    let one = Scalar::one(&ctx);
    let f1 = AltForm::from_terms(
        &ctx,
        n,
        2,
        &[(&[1, 2], -&one), (&[3, 4], -&one), (&[5, 6], -&one)],
    );
    let f2 = AltForm::from_terms(
        &ctx,
        n,
        2,
        &[(&[0, 2], one.clone()), (&[3, 5], -&one), (&[4, 6], one.clone())],
    );
    let f3 = AltForm::from_terms(
        &ctx,
        n,
        2,
        &[(&[0, 1], -&one), (&[3, 6], -&one), (&[4, 5], -&one)],
    );
    let fs = [&f1, &f2, &f3];

    // Γ_{x,j,z} = F_j(x,z) when j is a ξ-index, −F_z(x,j) when only z is,
    // zero on the purely horizontal block. The relations F_i(x, ξ_j) =
    // −F_j(x, ξ_i) of the 3-Sasakian triple make this metric.
    let mut gamma = vec![Scalar::zero(&ctx); n * n * n];
    for x in 0..n {
        for j in 0..n {
            for z in 0..n {
                let v = if j < 3 {
                    fs[j].value(&[x, z])
                } else if z < 3 {
                    -&fs[z].value(&[x, j])
                } else {
                    continue;
                };
                gamma[(x * n + j) * n + z] = v;
            }
        }
    }
    // Frame brackets c_{jk}^m = Γ_{jkm} − Γ_{kjm}; Koszul on them
    // reproduces Γ (checked by the suite).
    let mut m = FrameModel::new(&ctx, n, ModelKind::ReductiveHomogeneous);
    for j in 0..n {
        for k in (j + 1)..n {
            for mm in 0..n {
                let c = &gamma[(j * n + k) * n + mm] - &gamma[(k * n + j) * n + mm];
                if !c.is_zero() {
                    m.set_bracket(j, k, mm, c);
                }
            }
        }
    }
    m.validate().expect("structure functions are r-free");
    let model = Arc::new(m);

    let eta = |i: usize| basis_form(&ctx, n, &[i], one.clone());
    let contact3 = [
        ContactStructure::from_fundamental(&model, eta(0), &f1).unwrap(),
        ContactStructure::from_fundamental(&model, eta(1), &f2).unwrap(),
        ContactStructure::from_fundamental(&model, eta(2), &f3).unwrap(),
    ];

    // φ = η1∧F1 + η2∧F2 + η3∧F3 + 4 η123.
    let mut phi = eta(0).wedge(&f1);
    phi = phi.add(&eta(1).wedge(&f2));
    phi = phi.add(&eta(2).wedge(&f3));
    phi = phi.add(&basis_form(&ctx, n, &[0, 1, 2], Scalar::from_int(&ctx, 4)));
    // T^c = Σ η_i ∧ dη_i with dη_i = 2F_i.
    let two = Scalar::from_int(&ctx, 2);
    let mut tc = eta(0).wedge(&f1.scale(&two));
    tc = tc.add(&eta(1).wedge(&f2.scale(&two)));
    tc = tc.add(&eta(2).wedge(&f3.scale(&two)));

    Fixture {
        name: "sasaki3_canonical".into(),
        g2: Some(("phi".into(), G2Structure::new(&model, phi))),
        contacts: vec![
            ("F1".into(), contact3[0].clone()),
            ("F2".into(), contact3[1].clone()),
            ("F3".into(), contact3[2].clone()),
        ],
        tc: Some(tc),
        default_params: vec![("a", big_ratio(9, 7))],
        contact3: Some(contact3),
        model,
    }
}

/// Synthetic pure-class C2 fixture: dF = ∇η = 0 with α ≠ 0. The model is
/// H³×ℝ² with `[e1,e2] = e3`; η = e5, F = e13 + e24 (a symplectic
/// non-Kähler pair in the flat directions).
pub fn synthetic_c2() -> Fixture {
    let ctx = Context::new::<&str>(&[]);
    let mut m = FrameModel::new(&ctx, 5, ModelKind::LieGroup);
    m.set_bracket(0, 1, 2, Scalar::one(&ctx));
    m.validate().unwrap();
    let model = Arc::new(m);
    let eta = basis_form(&ctx, 5, &[4], model.one());
    let f = AltForm::from_terms(
        &ctx,
        5,
        2,
        &[(&[0, 2], model.one()), (&[1, 3], model.one())],
    );
    Fixture {
        name: "synthetic_c2".into(),
        contacts: vec![(
            "F".into(),
            ContactStructure::from_fundamental(&model, eta, &f).unwrap(),
        )],
        g2: None,
        tc: None,
        default_params: vec![],
        contact3: None,
        model,
    }
}

/// Synthetic pure-class C5 fixture: `[e5, e_i] = e_i` (i ≤ 4) gives
/// α(X,Y,Z) = (δη/(n−1))[F(X,Z)η(Y) − F(X,Y)η(Z)] with δη = 4 ≠ 0.
pub fn synthetic_c5() -> Fixture {
    let ctx = Context::new::<&str>(&[]);
    let mut m = FrameModel::new(&ctx, 5, ModelKind::LieGroup);
    for i in 0..4 {
        m.set_bracket(4, i, i, Scalar::one(&ctx));
    }
    m.validate().unwrap();
    let model = Arc::new(m);
    let eta = basis_form(&ctx, 5, &[4], model.one());
    let f = AltForm::from_terms(
        &ctx,
        5,
        2,
        &[(&[0, 1], model.one()), (&[2, 3], model.one())],
    );
    Fixture {
        name: "synthetic_c5".into(),
        contacts: vec![(
            "F".into(),
            ContactStructure::from_fundamental(&model, eta, &f).unwrap(),
        )],
        g2: None,
        tc: None,
        default_params: vec![],
        contact3: None,
        model,
    }
}

/// Synthetic pure-class C12 fixture: `[e5, e1] = e5` puts all of ∇F into
/// the η(X)η(Z)(∇_ξη)(φY)-type slots.
pub fn synthetic_c12() -> Fixture {
    let ctx = Context::new::<&str>(&[]);
    let mut m = FrameModel::new(&ctx, 5, ModelKind::LieGroup);
    m.set_bracket(4, 0, 4, Scalar::one(&ctx));
    m.validate().unwrap();
    let model = Arc::new(m);
    let eta = basis_form(&ctx, 5, &[4], model.one());
    let f = AltForm::from_terms(
        &ctx,
        5,
        2,
        &[(&[0, 1], model.one()), (&[2, 3], model.one())],
    );
    Fixture {
        name: "synthetic_c12".into(),
        contacts: vec![(
            "F".into(),
            ContactStructure::from_fundamental(&model, eta, &f).unwrap(),
        )],
        g2: None,
        tc: None,
        default_params: vec![],
        contact3: None,
        model,
    }
}

/// The paper's displayed *φ of the canonical G₂ structure, used as the
/// normative Hodge fixture.
pub fn sasaki3_star_phi_expected(ctx: &Arc<Context>) -> AltForm {
    let one = Scalar::one(ctx);
    AltForm::from_terms(
        ctx,
        7,
        4,
        &[
            (&[3, 4, 5, 6], one.clone()),
            (&[1, 2, 5, 6], -&one),
            (&[1, 2, 3, 4], -&one),
            (&[0, 2, 4, 6], -&one),
            (&[0, 2, 3, 5], one.clone()),
            (&[0, 1, 4, 5], -&one),
            (&[0, 1, 3, 6], -&one),
        ],
    )
}

/// The seven displayed values of ∇^g_{e_j}φ on the 3-Sasakian fixture.
pub fn sasaki3_nabla_phi_expected(ctx: &Arc<Context>) -> Vec<AltForm> {
    let one = Scalar::one(ctx);
    let three = Scalar::from_int(ctx, 3);
    let mk = |terms: &[(&[usize], Scalar)]| AltForm::from_terms(ctx, 7, 3, terms);
    vec![
        // ∇_{e1}φ = −η346 + η357 + η247 + η256
        mk(&[
            (&[2, 3, 5], -&one),
            (&[2, 4, 6], one.clone()),
            (&[1, 3, 6], one.clone()),
            (&[1, 4, 5], one.clone()),
        ]),
        // ∇_{e2}φ = η345 + η367 − η147 − η156
        mk(&[
            (&[2, 3, 4], one.clone()),
            (&[2, 5, 6], one.clone()),
            (&[0, 3, 6], -&one),
            (&[0, 4, 5], -&one),
        ]),
        // ∇_{e3}φ = −η245 − η267 + η146 − η157
        mk(&[
            (&[1, 3, 4], -&one),
            (&[1, 5, 6], -&one),
            (&[0, 3, 5], one.clone()),
            (&[0, 4, 6], -&one),
        ]),
        // ∇_{e4}φ = 3(−η235 + η567 + η136 − η127)
        mk(&[
            (&[1, 2, 4], -&three),
            (&[4, 5, 6], three.clone()),
            (&[0, 2, 5], three.clone()),
            (&[0, 1, 6], -&three),
        ]),
        // ∇_{e5}φ = 3(η234 − η467 − η137 − η126)
        mk(&[
            (&[1, 2, 3], three.clone()),
            (&[3, 5, 6], -&three),
            (&[0, 2, 6], -&three),
            (&[0, 1, 5], -&three),
        ]),
        // ∇_{e6}φ = 3(−η237 + η457 − η134 + η125)
        mk(&[
            (&[1, 2, 6], -&three),
            (&[3, 4, 6], three.clone()),
            (&[0, 2, 3], -&three),
            (&[0, 1, 4], three.clone()),
        ]),
        // ∇_{e7}φ = 3(η236 − η456 + η135 + η124)
        mk(&[
            (&[1, 2, 5], three.clone()),
            (&[3, 4, 5], -&three),
            (&[0, 2, 4], three.clone()),
            (&[0, 1, 3], three.clone()),
        ]),
    ]
}

/// Verifies the internal consistency of the sasaki3 encoding: Koszul on the
/// derived brackets reproduces the intended Γ, and the displayed relations
/// dη_i = 2F_i, ∇^g_{e_j}F_i = η_j∧η_i hold.
pub fn sasaki3_consistency(fix: &Fixture) -> bool {
    use conewb_core::connection::levi_civita;
    use conewb_core::tensor::exterior_derivative;
    let m = &fix.model;
    let ctx = m.context();
    let lc = levi_civita(m);
    let structures = fix.contact3.as_ref().unwrap();
    for (i, s) in structures.iter().enumerate() {
        // Γ_{x,i,z} = F_i(x,z)
        for x in 0..7 {
            for z in 0..7 {
                if !(lc.gamma(x, i, z) - &s.fundamental().value(&[x, z])).is_zero() {
                    return false;
                }
            }
        }
        let deta = exterior_derivative(m, s.eta());
        if !deta.sub(&s.fundamental().scale(&Scalar::from_int(ctx, 2))).is_zero() {
            return false;
        }
        // The Sasaki relation in 2-form shape:
        // (∇^g_{e_j}F_i)(Y,Z) = g(e_j,Z)η_i(Y) − g(e_j,Y)η_i(Z) = (η_i∧η_j)(Y,Z).
        let nabla_f = lc.covariant_derivative_form(s.fundamental());
        for j in 0..7 {
            let expect = AltForm::from_terms(
                ctx,
                7,
                2,
                &[(&[i, j], Scalar::one(ctx))],
            );
            if !nabla_f[j].sub(&expect).is_zero() {
                return false;
            }
        }
        // dF_i = 0 (the determined part of d² = 0 on this fixture).
        if !exterior_derivative(m, s.fundamental()).is_zero() {
            return false;
        }
    }
    // Koszul(antisym Γ) = Γ for the whole table.
    for x in 0..7 {
        for j in 0..7 {
            for z in 0..7 {
                let expect = if j < 3 {
                    structures[j].fundamental().value(&[x, z])
                } else if z < 3 {
                    -&structures[z].fundamental().value(&[x, j])
                } else {
                    Scalar::zero(ctx)
                };
                if !(lc.gamma(x, j, z) - &expect).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Instantiates every free parameter of a fixture's scalars at its default
/// rational point (used by sign-dependent predicates).
pub fn default_assignment(fix: &Fixture) -> Vec<(&'static str, BigRational)> {
    fix.default_params.clone()
}

/// Rebuilds a fixture with parameters substituted at rational values
/// (structure functions and all attached tensors go through `eval_at`).
pub fn instantiate(fix: &Fixture, assignment: &[(&str, BigRational)]) -> Fixture {
    let m = &fix.model;
    let n = m.dim();
    let inst = |s: &Scalar| s.eval_at(assignment).expect("pole at instantiation point");
    let inst_form = |f: &AltForm| f.map_coeffs(&inst);
    let mut model = FrameModel::new(m.context(), n, m.kind());
    model.set_orientation(m.orientation());
    model.set_assume_jacobi(m.assume_jacobi());
    model.set_radial_index(m.radial_index());
    model.set_frame_names(m.frame_names().to_vec());
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let c = m.c(i, j, k);
                if !c.is_zero() {
                    model.set_bracket(i, j, k, inst(c));
                }
            }
        }
    }
    let model = Arc::new(model);
    let contacts = fix
        .contacts
        .iter()
        .map(|(name, s)| {
            (
                name.clone(),
                ContactStructure::from_fundamental(
                    &model,
                    inst_form(s.eta()),
                    &inst_form(s.fundamental()),
                )
                .expect("instantiated structure stays valid"),
            )
        })
        .collect();
    let g2 = fix
        .g2
        .as_ref()
        .map(|(name, g)| (name.clone(), G2Structure::new(&model, inst_form(g.phi()))));
    Fixture {
        name: fix.name.clone(),
        model,
        contacts,
        g2,
        tc: fix.tc.as_ref().map(inst_form),
        default_params: vec![],
        contact3: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_resolve() {
        for name in known_models() {
            let fix = registry_get(name).unwrap();
            assert_eq!(fix.name, name);
        }
        assert!(registry_get("nope").is_err());
    }

    #[test]
    fn sasaki3_is_consistent() {
        let fix = sasaki3_canonical();
        assert!(sasaki3_consistency(&fix));
    }

    #[test]
    fn sasaki3_quaternionic_relations() {
        use conewb_core::structures::contact3_check;
        let fix = sasaki3_canonical();
        let [s1, s2, s3] = fix.contact3.as_ref().unwrap();
        let ctx = fix.model.context();
        let report = contact3_check(
            s1,
            s2,
            s3,
            &Scalar::one(ctx),
            &AltForm::zero(ctx, 7, 3),
        );
        assert!(report.all_zero(), "{:#?}", report.entries);
    }
}
