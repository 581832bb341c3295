//! Property tests for the exact field, the exterior algebra and the
//! Clifford layer, driven by proptest.

use conewb_core::connection::levi_civita;
use conewb_core::frame::{FrameModel, ModelKind};
use conewb_core::scalar::{parse_scalar, Context, Scalar};
use conewb_core::tensor::{
    combinations, exterior_derivative, pair_increasing, AltForm,
};
use proptest::prelude::*;
use std::sync::Arc;

fn ctx() -> Arc<Context> {
    Context::new(&["u", "v"])
}

/// Small random field elements: sparse polynomials with exponents ≤ 1 per
/// variable divided by nonzero ones of the same shape.
fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    let term = (any::<i8>(), 0u8..2, 0u8..2, 0u8..2, any::<bool>());
    prop::collection::vec(term, 1..3).prop_map(|terms| {
        let c = ctx();
        let mut acc = Scalar::zero(&c);
        for (k, eu, ev, er, imag) in terms {
            let mut t = Scalar::from_int(&c, (k % 5) as i64);
            if imag {
                t = &t * &Scalar::i(&c);
            }
            if eu > 0 {
                t = &t * &Scalar::symbol(&c, "u").unwrap();
            }
            if ev > 0 {
                t = &t * &Scalar::symbol(&c, "v").unwrap();
            }
            if er > 0 {
                t = &t * &Scalar::r(&c);
            }
            acc = &acc + &t;
        }
        acc
    })
}

fn nonzero_scalar_strategy() -> impl Strategy<Value = Scalar> {
    scalar_strategy().prop_filter("nonzero", |s| !s.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in scalar_strategy(), y in scalar_strategy(), z in scalar_strategy()) {
        prop_assert!((&(&(&x + &y) + &z) - &(&x + &(&y + &z))).is_zero());
        prop_assert!((&(&(&x * &y) * &z) - &(&x * &(&y * &z))).is_zero());
        prop_assert!((&(&x * &(&y + &z)) - &(&(&x * &y) + &(&x * &z))).is_zero());
        prop_assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn division_inverts(x in scalar_strategy(), y in nonzero_scalar_strategy()) {
        let q = x.checked_div(&y).unwrap();
        prop_assert!((&(&q * &y) - &x).is_zero());
    }

    #[test]
    fn normalization_idempotent(x in scalar_strategy()) {
        // Re-running arithmetic that should be the identity leaves the
        // canonical representation untouched.
        let c = ctx();
        let same = &(&x + &Scalar::zero(&c)) * &Scalar::one(&c);
        prop_assert_eq!(same, x);
    }

    #[test]
    fn leibniz_rule(x in scalar_strategy(), y in scalar_strategy()) {
        let lhs = (&x * &y).d_dr();
        let rhs = &(&x.d_dr() * &y) + &(&x * &y.d_dr());
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn parse_print_identity(x in scalar_strategy()) {
        let c = ctx();
        let printed = x.to_string();
        let back = parse_scalar(&printed, &c).unwrap();
        prop_assert_eq!(back, x);
    }
}

fn form_strategy(n: usize, k: usize) -> impl Strategy<Value = AltForm> {
    let slots = combinations(n, k).len();
    prop::collection::vec(-3i64..4, slots).prop_map(move |coeffs| {
        let c = Context::new::<&str>(&[]);
        let mut f = AltForm::zero(&c, n, k);
        for (tuple, v) in combinations(n, k).iter().zip(coeffs) {
            if v != 0 {
                f.set_increasing(tuple, Scalar::from_int(&c, v));
            }
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_graded_commutativity(a in form_strategy(6, 2), b in form_strategy(6, 3)) {
        // deg 2 · deg 3: α∧β = (+1)^{6}β∧α = β∧α
        prop_assert_eq!(a.wedge(&b), b.wedge(&a));
    }

    #[test]
    fn wedge_one_forms_anticommute(a in form_strategy(6, 1), b in form_strategy(6, 1)) {
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).neg());
    }

    #[test]
    fn interior_antiderivation(a in form_strategy(5, 2), b in form_strategy(5, 2)) {
        let c = Context::new::<&str>(&[]);
        let m = FrameModel::flat(&c, 5);
        let x = m.frame_vector(0).add(&m.frame_vector(3));
        let lhs = a.wedge(&b).interior(&x);
        let rhs = a.interior(&x).wedge(&b).add(&a.wedge(&b.interior(&x)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hodge_involution_sign(a in form_strategy(7, 3)) {
        let c = Context::new::<&str>(&[]);
        let m = FrameModel::flat(&c, 7);
        // (−1)^{k(n−k)} = +1 for k = 3, n = 7.
        prop_assert_eq!(a.hodge(&m).hodge(&m), a);
    }

    #[test]
    fn hodge_isometry(a in form_strategy(6, 2), b in form_strategy(6, 2)) {
        let c = Context::new::<&str>(&[]);
        let m = FrameModel::flat(&c, 6);
        let lhs = pair_increasing(&a.hodge(&m), &b.hodge(&m));
        let rhs = pair_increasing(&a, &b);
        prop_assert!((&lhs - &rhs).is_zero());
    }
}

#[test]
fn d_squared_vanishes_on_a_curved_model() {
    // Exact d² = 0 on the Heisenberg frame for every basis form degree.
    let c = Context::new(&["rho"]);
    let mut m = FrameModel::new(&c, 5, ModelKind::LieGroup);
    let rho = parse_scalar("rho", &c).unwrap();
    m.set_bracket(0, 1, 4, rho.clone());
    m.set_bracket(2, 3, 4, rho);
    for k in 1..4 {
        for tuple in combinations(5, k) {
            let mut f = AltForm::zero(&c, 5, k);
            f.set_increasing(&tuple, Scalar::one(&c));
            assert!(
                exterior_derivative(&m, &exterior_derivative(&m, &f)).is_zero(),
                "d² ≠ 0 on basis form {tuple:?}"
            );
        }
    }
}

#[test]
fn levi_civita_is_metric_and_torsion_free_on_registry_style_models() {
    let c = Context::new(&["c1", "c2"]);
    let mut m = FrameModel::new(&c, 5, ModelKind::ReductiveHomogeneous);
    let c1 = parse_scalar("c1", &c).unwrap();
    let c2 = parse_scalar("c2", &c).unwrap();
    m.set_bracket(0, 1, 4, c1.clone());
    m.set_bracket(2, 3, 4, c2.clone());
    m.set_bracket(4, 0, 1, c1.clone());
    m.set_bracket(4, 1, 0, -&c1);
    m.set_bracket(4, 2, 3, c2.clone());
    m.set_bracket(4, 3, 2, -&c2);
    let lc = levi_civita(&Arc::new(m));
    assert!(lc.is_metric());
    assert!(lc.torsion_consistent());
}
