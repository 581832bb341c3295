//! Cone-correspondence theorems as residual-zero checks, run on every
//! fixture with a characteristic connection, identically in r and in the
//! symbolic parameters.

use super::Job;
use crate::registry;
use crate::report::zero_check;
use conewb_core::connection::{characteristic_solve, levi_civita, CharSolve, Connection, StructTensor};
use conewb_core::cone::{
    build_cone, cone_to_base, cone_to_base_spin7, induced_hermitian, induced_spin7,
    intermediate_connection_contact, intermediate_connection_g2, ConeModel,
};
use conewb_core::frame::VectorField;
use conewb_core::scalar::Scalar;
use conewb_core::structures::contact::{compose_endo_form, ContactStructure};
use conewb_core::structures::hermitian::HermitianStructure;
use conewb_core::tensor::{combinations, exterior_derivative, AltForm};

/// A contact fixture with its cone, induced hermitian structure and the
/// intermediate connection data.
struct ContactCone {
    label: &'static str,
    cone: ConeModel,
    s: ContactStructure,
    h: HermitianStructure,
    tc: AltForm,
    t: AltForm,
    conn_bar: Connection,
}

fn contact_cones() -> Vec<ContactCone> {
    let mut out = Vec::new();
    let heis = registry::heisenberg();
    for (label, name) in [("heis-F1", "F1"), ("heis-F2", "F2")] {
        let s = heis.contact(name).unwrap().clone();
        let a = heis.model.scalar("2*rho");
        let cone = build_cone(&heis.model, &a).unwrap();
        let tc = heis.tc.clone().unwrap();
        let (t, conn_bar) = intermediate_connection_contact(&cone, &s, &tc);
        let h = induced_hermitian(&cone, &s).unwrap();
        out.push(ContactCone { label, cone, s, h, tc, t, conn_bar });
    }
    let so = registry::so3sl2();
    {
        let s = so.contact("F").unwrap().clone();
        let a = so.model.scalar("(-c1-c2)/4");
        let cone = build_cone(&so.model, &a).unwrap();
        let tc = so.tc.clone().unwrap();
        let (t, conn_bar) = intermediate_connection_contact(&cone, &s, &tc);
        let h = induced_hermitian(&cone, &s).unwrap();
        out.push(ContactCone { label: "so3sl2", cone, s, h, tc, t, conn_bar });
    }
    out
}

fn intermediate_base_connection(cc: &ContactCone) -> Connection {
    conewb_core::connection::add_torsion(
        &levi_civita(cc.cone.base()),
        &cc.t,
        &Scalar::from_ratio(cc.cone.base().context(), 1, 2),
    )
}

pub(super) fn checks() -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for cc in contact_cones() {
        jobs.extend(contact_cone_jobs(cc));
    }
    jobs.push(Box::new(|| {
        zero_check("cone.heis-rho2.sasaki-row-positive", heisenberg_rho2_sasaki_row)
    }));
    jobs.extend(g2_cone_jobs());
    jobs
}

fn contact_cone_jobs(cc: ContactCone) -> Vec<Job> {
    let cc = std::sync::Arc::new(cc);
    let mut jobs: Vec<Job> = Vec::new();
    let label = cc.label;

    // Theorem th:acs — ∇̄J ≡ 0.
    {
        let cc = cc.clone();
        jobs.push(Box::new(move || {
            zero_check(&format!("cone.{label}.nabla-J-parallel"), move || {
                let resid = cc.conn_bar.covariant_derivative_endo(cc.h.j());
                resid.witness().map(|(idx, v)| format!("@{idx:?}={v}"))
            })
        }));
    }
    // Wrong-torsion control: the lift of T^c itself is not characteristic.
    {
        let cc = cc.clone();
        jobs.push(Box::new(move || {
            zero_check(&format!("cone.{label}.wrong-torsion-detected"), move || {
                let wrong = cc.cone.lifted_connection(&cc.tc);
                let resid = wrong.covariant_derivative_endo(cc.h.j());
                if resid.is_zero() {
                    Some("lift of T^c must NOT be characteristic".into())
                } else {
                    None
                }
            })
        }));
    }
    // Lemma lem:normal (main identity and items a–c) for the intermediate ∇.
    {
        let cc = cc.clone();
        jobs.push(Box::new(move || {
            zero_check(&format!("cone.{label}.lem-normal"), move || {
                let base = cc.cone.base();
                let ctx = base.context();
                let n = base.dim();
                let a = cc.cone.a();
                let nabla = intermediate_base_connection(&cc);
                // (∇_Yφ)X = a g(Y,X)ξ − a η(X)Y  as g((∇_yφ)x, z).
                let dphi = nabla.covariant_derivative_endo(cc.s.phi());
                for y in 0..n {
                    for x in 0..n {
                        for z in 0..n {
                            let g_yx = if y == x { base.one() } else { base.zero() };
                            let g_yz = if y == z { base.one() } else { base.zero() };
                            let rhs = &(&(a * &g_yx) * &cc.s.xi().coeffs[z])
                                - &(&(a * &cc.s.xi().coeffs[x]) * &g_yz);
                            if !(dphi.get(&[y, x, z]) - &rhs).is_zero() {
                                return Some(format!("main identity fails at ({y},{x},{z})"));
                            }
                        }
                    }
                }
                // (a) aφ(X) = −∇_Xξ, (b) ξ Killing.
                for x in 0..n {
                    let lhs = cc.s.phi().apply_frame(x).scale(a);
                    let rhs = nabla.nabla_vector(x, cc.s.xi()).neg();
                    if !lhs.sub(&rhs).is_zero() {
                        return Some(format!("aφ(e{}) ≠ −∇ξ", x + 1));
                    }
                }
                for x in 0..n {
                    for y in 0..n {
                        let v = &nabla.nabla_vector(x, cc.s.xi()).coeffs[y]
                            + &nabla.nabla_vector(y, cc.s.xi()).coeffs[x];
                        if !v.is_zero() {
                            return Some(format!("ξ not ∇-Killing at ({x},{y})"));
                        }
                    }
                }
                // (c) dη = 2aF + ξ⌟T.
                let deta = exterior_derivative(base, cc.s.eta());
                let two_a = a + a;
                let rhs = cc
                    .s
                    .fundamental()
                    .scale(&two_a)
                    .add(&cc.t.interior(cc.s.xi()));
                if let Some((idx, v)) = deta.sub(&rhs).witness() {
                    return Some(format!("dη ≠ 2aF + ξ⌟T @{idx:?}={v}"));
                }
                let _ = ctx;
                None
            })
        }));
    }
    // Lemma lem:nijen — N̄ = a²r²N on lifts, and the three equivalent
    // predicates agree.
    {
        let cc = cc.clone();
        jobs.push(Box::new(move || {
            zero_check(&format!("cone.{label}.lem-nijen"), move || {
                let base = cc.cone.base();
                let n = base.dim();
                let lc_base = levi_civita(base);
                let lc_cone = levi_civita(cc.cone.frame());
                let n_base = cc.s.nijenhuis(&lc_base);
                let n_cone = cc.h.nijenhuis(&lc_cone);
                // Horizontal ē-components: N̄(ē,ē,ē) = N/(ar).
                let inv_ar = Scalar::one(base.context())
                    .checked_div(&cc.cone.ar())
                    .unwrap();
                for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            let expect = n_base.get(&[x, y, z]) * &inv_ar;
                            if !(n_cone.get(&[x, y, z]) - &expect).is_zero() {
                                return Some(format!("N̄ ≠ a²r²N at ({x},{y},{z})"));
                            }
                        }
                    }
                }
                // Three equivalent predicates.
                let radial = cc.cone.radial();
                let p1 = (0..=n).all(|y| {
                    (0..=n).all(|z| n_cone.get(&[radial, y, z]).is_zero())
                });
                let deta = exterior_derivative(base, cc.s.eta());
                let p2 = {
                    let mut ok = true;
                    'outer: for x in 0..n {
                        for y in 0..n {
                            let mut acc = Scalar::zero(base.context());
                            for l in 0..n {
                                let pl_y = cc.s.phi().get(l, y);
                                if !pl_y.is_zero() {
                                    acc = &acc + &(pl_y * &deta.value(&[x, l]));
                                }
                                let pl_x = cc.s.phi().get(l, x);
                                if !pl_x.is_zero() {
                                    acc = &acc + &(pl_x * &deta.value(&[l, y]));
                                }
                            }
                            if !acc.is_zero() {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                    ok
                };
                let p3 = {
                    let mut ok = true;
                    'outer: for y in 0..n {
                        for z in 0..n {
                            let mut acc = Scalar::zero(base.context());
                            for s_idx in 0..n {
                                if !cc.s.xi().coeffs[s_idx].is_zero() {
                                    acc = &acc
                                        + &(&cc.s.xi().coeffs[s_idx]
                                            * n_base.get(&[s_idx, y, z]));
                                }
                            }
                            if !acc.is_zero() {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                    ok
                };
                if p1 != p2 || p2 != p3 {
                    return Some(format!("predicates disagree: ∂_r⌟N̄={p1} dη-φ={p2} ξ⌟N={p3}"));
                }
                None
            })
        }));
    }
    // Lemma lem:deltaO — δΩ(Z) = −(δF − a(n−1)η)(Z_M) for all Z.
    {
        let cc = cc.clone();
        jobs.push(Box::new(move || {
            zero_check(&format!("cone.{label}.lem-deltaO"), move || {
                let base = cc.cone.base();
                let n = base.dim();
                let lc_cone = levi_civita(cc.cone.frame());
                let delta_omega = lc_cone.coderivative(cc.h.omega());
                let lc_base = levi_civita(base);
                let delta_f = lc_base.coderivative(cc.s.fundamental());
                let a = cc.cone.a();
                let n1 = Scalar::from_int(base.context(), (n - 1) as i64);
                let inv_ar = Scalar::one(base.context())
                    .checked_div(&cc.cone.ar())
                    .unwrap();
                for i in 0..n {
                    // Z = ē_i: Z_M = e_i/(ar).
                    let rhs = -&(&(delta_f.get_increasing(&[i])
                        - &(&(a * &n1) * cc.s.eta().get_increasing(&[i])))
                        * &inv_ar);
                    if !(delta_omega.get_increasing(&[i]) - &rhs).is_zero() {
                        return Some(format!("δΩ(ē_{}) mismatch", i + 1));
                    }
                }
                if !delta_omega.get_increasing(&[n]).is_zero() {
                    return Some("δΩ(∂_r) ≠ 0".into());
                }
                None
            })
        }));
    }
    // Lemma lem:liftofetawedgeF — lift(η∧F) = (∂_r⌟Ω)∧Ω at ē-coefficients.
    {
        let cc = cc.clone();
        jobs.push(Box::new(move || {
            zero_check(&format!("cone.{label}.lem-liftofetawedgeF"), move || {
                let dr = cc.cone.frame().frame_vector(cc.cone.radial());
                let rhs = cc.h.omega().interior(&dr).wedge(cc.h.omega());
                let lhs = cc.cone.lift_form(&cc.s.eta().wedge(cc.s.fundamental()));
                lhs.sub(&rhs)
                    .witness()
                    .map(|(idx, v)| format!("@{idx:?}={v}"))
            })
        }));
    }
    // Remark rem:chartorausschr — T̄ = N̄ + dΩ^J and ∂_r⌟(N̄ + dΩ^J) = 0.
    // The quoted hermitian torsion formula is stated for ω(X,Y) = g(JX,Y);
    // in this article's convention Ω(X,Y) = g(X,JY) the composition term
    // is −dΩ(J·,J·,J·).
    {
        let cc = cc.clone();
        jobs.push(Box::new(move || {
            zero_check(&format!("cone.{label}.chartorausschr"), move || {
                let lc_cone = levi_civita(cc.cone.frame());
                let n_cone = cc.h.nijenhuis(&lc_cone);
                if !n_cone.is_alternating() {
                    return Some("N̄ is not totally skew".into());
                }
                let n_form = n_cone.to_alt_form();
                let domega = exterior_derivative(cc.cone.frame(), cc.h.omega());
                let domega_j = compose_endo_form(cc.h.j(), &domega).neg();
                let rhs = n_form.add(&domega_j);
                let tbar = cc.cone.torsion_lift(&cc.t);
                if let Some((idx, v)) = tbar.sub(&rhs).witness() {
                    return Some(format!("T̄ ≠ N̄ + dΩ^J @{idx:?}={v}"));
                }
                let dr = cc.cone.frame().frame_vector(cc.cone.radial());
                if !rhs.interior(&dr).is_zero() {
                    return Some("∂_r⌟(N̄ + dΩ^J) ≠ 0".into());
                }
                None
            })
        }));
    }
    // The lem:nijen proof's expression of N̄ through the torsion:
    // N̄(X,Y,Z) = T̄(X,Y,Z) − T̄(JX,JY,Z) − T̄(JX,Y,JZ) − T̄(X,JY,JZ).
    {
        let cc = cc.clone();
        jobs.push(Box::new(move || {
            zero_check(&format!("cone.{label}.nijenhuis-from-torsion"), move || {
                let lc_cone = levi_civita(cc.cone.frame());
                let n_cone = cc.h.nijenhuis(&lc_cone);
                let tbar = cc.cone.torsion_lift(&cc.t);
                let nn = cc.cone.frame().dim();
                let j = cc.h.j();
                let japply = |x: usize| j.apply_frame(x);
                for x in 0..nn {
                    for y in 0..nn {
                        for z in 0..nn {
                            let ex = cc.cone.frame().frame_vector(x);
                            let ey = cc.cone.frame().frame_vector(y);
                            let ez = cc.cone.frame().frame_vector(z);
                            let mut rhs = tbar.eval(&[&ex, &ey, &ez]);
                            rhs = &rhs - &tbar.eval(&[&japply(x), &japply(y), &ez]);
                            rhs = &rhs - &tbar.eval(&[&japply(x), &ey, &japply(z)]);
                            rhs = &rhs - &tbar.eval(&[&ex, &japply(y), &japply(z)]);
                            if !(n_cone.get(&[x, y, z]) - &rhs).is_zero() {
                                return Some(format!("mismatch at ({x},{y},{z})"));
                            }
                        }
                    }
                }
                None
            })
        }));
    }
    // Theorem thm:ocsclass row equivalences.
    {
        let cc = cc.clone();
        jobs.push(Box::new(move || {
            zero_check(&format!("cone.{label}.ocsclass-rows"), move || {
                ocsclass_rows(&cc)
            })
        }));
    }
    // The cone hermitian structure's characteristic torsion from the
    // linear solver agrees with T̄ (cross-oracle).
    {
        let cc = cc.clone();
        jobs.push(Box::new(move || {
            zero_check(&format!("cone.{label}.solver-vs-intermediate"), move || {
                let tbar = cc.cone.torsion_lift(&cc.t);
                match characteristic_solve(
                    cc.cone.frame(),
                    &[StructTensor::Endo(cc.h.j().clone())],
                ) {
                    CharSolve::Unique(t) => t
                        .sub(&tbar)
                        .witness()
                        .map(|(idx, v)| format!("@{idx:?}={v}")),
                    other => Some(format!("expected unique, got {other:?}")),
                }
            })
        }));
    }
    // Round trip down to the base.
    {
        let cc = cc.clone();
        jobs.push(Box::new(move || {
            zero_check(&format!("cone.{label}.cone-to-base-roundtrip"), move || {
                match cone_to_base(&cc.cone, &cc.h) {
                    Ok(back) => {
                        if back.fundamental() != cc.s.fundamental() || back.eta() != cc.s.eta() {
                            Some("round trip lost the structure".into())
                        } else {
                            None
                        }
                    }
                    Err(e) => Some(e.to_string()),
                }
            })
        }));
    }
    jobs
}

/// The ocsclass table: base-side relation ⇔ cone-side Gray–Hervella class.
fn ocsclass_rows(cc: &ContactCone) -> Option<String> {
    let base = cc.cone.base();
    let ctx = base.context();
    let n = base.dim();
    let a = cc.cone.a();
    let lc = levi_civita(base);
    let report = cc.h.classify();
    let n_base = cc.s.nijenhuis(&lc);
    let delta_f = lc.coderivative(cc.s.fundamental());
    let n1 = Scalar::from_int(ctx, (n - 1) as i64);
    // δF = a(n−1)η?
    let delta_f_matches = delta_f
        .sub(&cc.s.eta().scale(&(a * &n1)))
        .is_zero();
    // Kähler row: (∇^g_XF)(Y,Z) = aη(Y)g(X,Z) − aη(Z)g(X,Y).
    let alpha = cc.s.alpha(&lc);
    let mut kahler_base = true;
    'k: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let g_xz = if x == z { base.one() } else { base.zero() };
                let g_xy = if x == y { base.one() } else { base.zero() };
                let rhs = &(&(a * &cc.s.xi().coeffs[y]) * &g_xz)
                    - &(&(a * &cc.s.xi().coeffs[z]) * &g_xy);
                if !(&alpha[x].value(&[y, z]) - &rhs).is_zero() {
                    kahler_base = false;
                    break 'k;
                }
            }
        }
    }
    if report.is_class("kahler") != kahler_base {
        return Some("kähler row mismatch".into());
    }
    // χ₃ row ⇔ N = 0 and δF = a(n−1)η.
    if report.is_class("chi3") != (n_base.is_zero() && delta_f_matches) {
        return Some("chi3 row mismatch".into());
    }
    // χ₄ row ⇔ the C₆ relation on the base.
    let base_report = cc.s.classify();
    if report.is_class("chi4") != base_report.is_class("C6") {
        return Some("chi4 row mismatch".into());
    }
    // χ₁⊕χ₃ row ⇔ δF = a(n−1)η.
    if report.is_class("chi1+chi3") != delta_f_matches {
        return Some("chi1+chi3 row mismatch".into());
    }
    // χ₃⊕χ₄ row ⇔ N = 0.
    if report.is_class("chi3+chi4") != n_base.is_zero() {
        return Some("chi3+chi4 row mismatch".into());
    }
    // Sasaki row: base Sasaki ⇔ cone χ₄ with δΩ(ξ) = (a−1)(n−1).
    let lc_cone = levi_civita(cc.cone.frame());
    let delta_omega = lc_cone.coderivative(cc.h.omega());
    let mut delta_omega_xi = Scalar::zero(ctx);
    for i in 0..n {
        if !cc.s.xi().coeffs[i].is_zero() {
            delta_omega_xi =
                &delta_omega_xi + &(&cc.s.xi().coeffs[i] * delta_omega.get_increasing(&[i]));
        }
    }
    // δΩ above is evaluated on the unit frame ē_ι; the row's δΩ(ξ) reads
    // the lift ar·ē_ι at the r = 1 slice, i.e. a·δΩ(ē_ι).
    let sasaki_cone = report.is_class("chi4")
        && (&(a * &delta_omega_xi) - &(&(a - &Scalar::one(ctx)) * &n1))
            .eval_at(&[("r", conewb_core::scalar::big_ratio(1, 1))])
            .map(|v| v.is_zero())
            .unwrap_or(false);
    let sasaki_base = base_report.verdict("sasaki") == Some(true);
    if sasaki_base != sasaki_cone {
        return Some(format!(
            "sasaki row mismatch: base={sasaki_base} cone={sasaki_cone}"
        ));
    }
    None
}

/// The positive direction of the Sasaki row: Heisenberg at ρ = 2 is Sasaki
/// and its a = 4 cone satisfies the χ₄ + δΩ(ξ) = (a−1)(n−1) condition.
fn heisenberg_rho2_sasaki_row() -> Option<String> {
    let fix = registry::heisenberg();
    let mut model = (*fix.model).clone();
    for (i, j) in [(0usize, 1usize), (2, 3)] {
        model.set_bracket(i, j, 4, fix.model.int(2));
    }
    let model = std::sync::Arc::new(model);
    let s = ContactStructure::from_fundamental(
        &model,
        fix.contact("F2").unwrap().eta().clone(),
        fix.contact("F2").unwrap().fundamental(),
    )
    .unwrap();
    let base_report = s.classify();
    if base_report.verdict("sasaki") != Some(true) {
        return Some("Heisenberg at rho = 2 must be Sasakian".into());
    }
    let a = model.int(4);
    let cone = build_cone(&model, &a).unwrap();
    let h = induced_hermitian(&cone, &s).unwrap();
    let report = h.classify();
    if !report.is_class("chi4") {
        return Some("cone must be chi4".into());
    }
    let lc_cone = levi_civita(cone.frame());
    let delta_omega = lc_cone.coderivative(h.omega());
    let v = &(&a * delta_omega.get_increasing(&[4]))
        - &model.int(3 * 4);
    match v.eval_at(&[("r", conewb_core::scalar::big_ratio(1, 1))]) {
        Ok(v) if v.is_zero() => None,
        _ => Some("δΩ(ξ) ≠ (a−1)(n−1) at the slice".into()),
    }
}

fn g2_cone_jobs() -> Vec<Job> {
    struct G2Cone {
        cone: ConeModel,
        g2: conewb_core::structures::g2::G2Structure,
        tc: AltForm,
        t: AltForm,
        conn_bar: Connection,
        s7: conewb_core::structures::spin7::Spin7Structure,
    }
    fn setup() -> G2Cone {
        let fix = registry::sasaki3_canonical();
        let g2 = fix.g2.as_ref().unwrap().1.clone();
        let tc = fix.tc.clone().unwrap();
        let a = fix.model.scalar("a");
        let cone = build_cone(&fix.model, &a).unwrap();
        let (t, conn_bar) = intermediate_connection_g2(&cone, &g2, &tc);
        let s7 = induced_spin7(&cone, &g2, &tc);
        G2Cone { cone, g2, tc, t, conn_bar, s7 }
    }
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(move || {
        zero_check("cone.sasaki3-g2.nabla-Phi-parallel", move || {
            let gc = setup();
            let resid = gc.conn_bar.covariant_derivative_form(gc.s7.phi4());
            for (i, r) in resid.iter().enumerate() {
                if let Some((idx, v)) = r.witness() {
                    return Some(format!("dir {} @{idx:?}={v}", i + 1));
                }
            }
            None
        })
    }));
    jobs.push(Box::new(move || {
        zero_check("cone.sasaki3-g2.wrong-torsion-detected", move || {
            let gc = setup();
            let wrong = gc.cone.lifted_connection(&gc.tc);
            let resid = wrong.covariant_derivative_form(gc.s7.phi4());
            if resid.iter().all(|r| r.is_zero()) {
                Some("lift of T^c must NOT be characteristic".into())
            } else {
                None
            }
        })
    }));
    jobs.push(Box::new(move || {
        zero_check("cone.sasaki3-g2.thm-g2str-nabla-phi", move || {
            // ∇φ = a·*φ for the intermediate connection.
            let gc = setup();
            let base = gc.cone.base();
            let nabla = conewb_core::connection::add_torsion(
                &levi_civita(base),
                &gc.t,
                &Scalar::from_ratio(base.context(), 1, 2),
            );
            let star = gc.g2.star_phi();
            let d = nabla.covariant_derivative_form(gc.g2.phi());
            for i in 0..7 {
                let expect = star.interior_frame(i).scale(gc.cone.a());
                if let Some((idx, v)) = d[i].sub(&expect).witness() {
                    return Some(format!("dir {} @{idx:?}={v}", i + 1));
                }
            }
            None
        })
    }));
    jobs.push(Box::new(move || {
        zero_check("cone.sasaki3-g2.lem-nablastarphi", move || {
            let gc = setup();
            let base = gc.cone.base();
            let ctx = base.context();
            let lc = levi_civita(base);
            let nabla = conewb_core::connection::add_torsion(
                &lc,
                &gc.t,
                &Scalar::from_ratio(ctx, 1, 2),
            );
            let star = gc.g2.star_phi();
            // Identity 1 for both ∇^g and ∇:
            // (∇_Z *φ)(V,W,X,Y) = (∇_Zφ)(V,W,P(X,Y)) + (∇_Zφ)(X,Y,P(V,W)).
            for (cname, conn) in [("levi-civita", &lc), ("intermediate", &nabla)] {
                let dstar = conn.covariant_derivative_form(&star);
                let dphi = conn.covariant_derivative_form(gc.g2.phi());
                for z in 0..7 {
                    for t in combinations(7, 4) {
                        let (v, w, x, y) = (t[0], t[1], t[2], t[3]);
                        let mut rhs = Scalar::zero(ctx);
                        for l in 0..7 {
                            let p_xy = gc.g2.phi().value(&[l, x, y]);
                            if !p_xy.is_zero() {
                                rhs = &rhs + &(&p_xy * &dphi[z].value(&[v, w, l]));
                            }
                            let p_vw = gc.g2.phi().value(&[l, v, w]);
                            if !p_vw.is_zero() {
                                rhs = &rhs + &(&p_vw * &dphi[z].value(&[x, y, l]));
                            }
                        }
                        if !(&dstar[z].value(&t) - &rhs).is_zero() {
                            return Some(format!("identity 1 ({cname}) fails at Z={z} {t:?}"));
                        }
                    }
                }
            }
            // Identity 2 for ∇ (which has ∇φ = a*φ):
            let dstar = nabla.covariant_derivative_form(&star);
            let g = |i: usize, j: usize| if i == j { base.one() } else { base.zero() };
            for z in 0..7 {
                for t in combinations(7, 4) {
                    let (v, w, x, y) = (t[0], t[1], t[2], t[3]);
                    let phi = gc.g2.phi();
                    let mut rhs = &(&phi.value(&[x, y, v]) * &g(z, w))
                        - &(&phi.value(&[x, y, w]) * &g(z, v));
                    rhs = &rhs + &(&phi.value(&[v, w, x]) * &g(z, y));
                    rhs = &rhs - &(&phi.value(&[v, w, y]) * &g(z, x));
                    rhs = &rhs * gc.cone.a();
                    if !(&dstar[z].value(&t) - &rhs).is_zero() {
                        return Some(format!("identity 2 fails at Z={z} {t:?}"));
                    }
                }
            }
            None
        })
    }));
    jobs.push(Box::new(move || {
        zero_check("cone.sasaki3-g2.lam-barP", move || {
            let gc = setup();
            let base = gc.cone.base();
            let ctx = base.context();
            let lc = levi_civita(base);
            let nabla = conewb_core::connection::add_torsion(
                &lc,
                &gc.t,
                &Scalar::from_ratio(ctx, 1, 2),
            );
            let ar = gc.cone.ar();
            let a = gc.cone.a();
            let r = Scalar::r(ctx);
            let radial = gc.cone.radial();
            let phi = gc.g2.phi();
            let star = gc.g2.star_phi();
            // (1) φ(X,Y,Z) = g(X, P(Y,Z)).
            for x in 0..7 {
                for y in 0..7 {
                    for z in 0..7 {
                        let p = gc.g2.p_vector(y, z);
                        if !(&phi.value(&[x, y, z]) - &p.coeffs[x]).is_zero() {
                            return Some("item 1 fails".into());
                        }
                    }
                }
            }
            // (2) (∇̃φ)(Y,Z,V) = g((∇̃_X P)(Y,Z), V) for ∇^g and ∇.
            let nabla_p = |conn: &Connection, x: usize, y: usize, z: usize| -> VectorField {
                let mut v = conn.nabla_vector(x, &gc.g2.p_vector(y, z));
                for l in 0..7 {
                    let gamma_y = conn.gamma(x, y, l).clone();
                    if !gamma_y.is_zero() {
                        v = v.sub(&gc.g2.p_vector(l, z).scale(&gamma_y));
                    }
                    let gamma_z = conn.gamma(x, z, l).clone();
                    if !gamma_z.is_zero() {
                        v = v.sub(&gc.g2.p_vector(y, l).scale(&gamma_z));
                    }
                }
                v
            };
            for (cname, conn) in [("levi-civita", &lc), ("intermediate", &nabla)] {
                let dphi = conn.covariant_derivative_form(phi);
                for x in 0..7 {
                    for y in 0..7 {
                        for z in 0..7 {
                            let np = nabla_p(conn, x, y, z);
                            for v in 0..7 {
                                if !(&dphi[x].value(&[y, z, v]) - &np.coeffs[v]).is_zero() {
                                    return Some(format!("item 2 ({cname}) fails"));
                                }
                            }
                        }
                    }
                }
            }
            // (3) (∇_XP)(Y,Z) = a Σ_l *φ(X,e_l,Y,Z) e_l.
            for x in 0..7 {
                for y in 0..7 {
                    for z in 0..7 {
                        let np = nabla_p(&nabla, x, y, z);
                        for l in 0..7 {
                            let expect = &star.value(&[x, l, y, z]) * a;
                            if !(&np.coeffs[l] - &expect).is_zero() {
                                return Some("item 3 fails".into());
                            }
                        }
                    }
                }
            }
            // (4) the three P̄ relations, in ē-components with lift weights.
            for x in 0..7 {
                for y in 0..7 {
                    for z in 0..7 {
                        // ḡ(P̄(X,Y,Z),∂_r) = −a³r³ φ(X,Y,Z) on lifts.
                        let pbar = gc.s7.p_bar(x, y, z);
                        let lhs = &pbar.coeffs[radial] * &ar.pow(3);
                        let rhs = -&(&(&a.pow(3) * &r.pow(3)) * &phi.value(&[x, y, z]));
                        if !(&lhs - &rhs).is_zero() {
                            return Some("item 4 (radial component) fails".into());
                        }
                        // P̄(∂_r, X, Y) = ar·P(X,Y) on lifts.
                        let pbar_r = gc.s7.p_bar(radial, x, y);
                        let p = gc.g2.p_vector(x, y);
                        for vcomp in 0..7 {
                            let lhs = &pbar_r.coeffs[vcomp] * &ar.pow(2);
                            let rhs = &(&ar * &ar) * &p.coeffs[vcomp];
                            if !(&lhs - &rhs).is_zero() {
                                return Some("item 4 (P̄(∂_r,·,·)) fails".into());
                            }
                        }
                        // P̄(Y,Z,V)_M = ar²(∇_YP)(Z,V) on lifts.
                        let np = nabla_p(&nabla, x, y, z);
                        let pbar_m = gc.s7.p_bar(x, y, z);
                        for w in 0..7 {
                            let lhs = &pbar_m.coeffs[w] * &ar.pow(4);
                            let rhs = &(&(&ar * &ar) * &(a * &r.pow(2))) * &np.coeffs[w];
                            if !(&lhs - &rhs).is_zero() {
                                return Some("item 4 (horizontal part) fails".into());
                            }
                        }
                    }
                }
            }
            // (5) (∇̄^ḡ_XΦ)(∂_r,Z,V,W) = a³r³ [(∇^g−∇)_Xφ](Z,V,W) and the
            // degree-4 analog, in ē-components with lift weights.
            let lc_cone = levi_civita(gc.cone.frame());
            let dphi4 = lc_cone.covariant_derivative_form(gc.s7.phi4());
            let dphi_g = lc.covariant_derivative_form(phi);
            let dphi_n = nabla.covariant_derivative_form(phi);
            let dstar_g = lc.covariant_derivative_form(&star);
            let dstar_n = nabla.covariant_derivative_form(&star);
            for x in 0..7 {
                for t in combinations(7, 3) {
                    let mut idx = vec![radial];
                    idx.extend(&t);
                    let lhs = &dphi4[x].value(&idx) * &ar.pow(4);
                    let rhs = &(&a.pow(3) * &r.pow(3))
                        * &(&dphi_g[x].value(&t) - &dphi_n[x].value(&t));
                    if !(&lhs - &rhs).is_zero() {
                        return Some("item 5 (∂_r slot) fails".into());
                    }
                }
                for t in combinations(7, 4) {
                    let lhs = &dphi4[x].value(&t) * &ar.pow(5);
                    let rhs = &(&a.pow(4) * &r.pow(4))
                        * &(&dstar_g[x].value(&t) - &dstar_n[x].value(&t));
                    if !(&lhs - &rhs).is_zero() {
                        return Some("item 5 (degree-4 slot) fails".into());
                    }
                }
            }
            None
        })
    }));
    jobs.push(Box::new(move || {
        zero_check("cone.sasaki3-g2.lem-hodge", move || {
            // *_{a²g}ω = a·*ω for 3-forms, by explicit re-framing.
            let gc = setup();
            let base = gc.cone.base();
            let a = gc.cone.a();
            let phi = gc.g2.phi();
            // Re-framing route: coefficients of ω in the frame e_i/a are
            // ω_I/a³; star there; back to e-coframe with weight a⁴.
            let rescaled = phi.scale(&Scalar::one(base.context()).checked_div(&a.pow(3)).unwrap());
            let star_f = rescaled.hodge(base).scale(&a.pow(4));
            let expect = phi.hodge(base).scale(a);
            if let Some((idx, v)) = star_f.sub(&expect).witness() {
                return Some(format!("@{idx:?}={v}"));
            }
            // And the library's scaled-star helper agrees.
            if !gc.g2.phi().hodge_scaled(base, a).sub(&expect).is_zero() {
                return Some("hodge_scaled disagrees".into());
            }
            None
        })
    }));
    jobs.push(Box::new(move || {
        zero_check("cone.sasaki3-g2.cone-to-base-roundtrip", move || {
            let gc = setup();
            match cone_to_base_spin7(&gc.cone, &gc.s7) {
                Ok((g2_back, residual)) => {
                    if let Some((idx, v)) = residual.witness() {
                        return Some(format!("Φ|TM ≠ a⁴*φ @{idx:?}={v}"));
                    }
                    if g2_back.phi() != gc.g2.phi() {
                        return Some("recovered φ differs".into());
                    }
                    None
                }
                Err(e) => Some(e.to_string()),
            }
        })
    }));
    jobs.push(Box::new(move || {
        zero_check("cone.sasaki3-g2.flip-orientation-constructible", move || {
            let gc = setup();
            let flipped = gc.cone.flip_orientation();
            if flipped.frame().orientation() == -gc.cone.frame().orientation() {
                None
            } else {
                Some("orientation flip failed".into())
            }
        })
    }));
    // thm:g2str holds on any G₂T base: the flat 7-torus with its parallel
    // φ (T^c = 0) also gets a parallel Φ under the intermediate lift.
    jobs.push(Box::new(move || {
        zero_check("cone.flat7-g2.nabla-Phi-parallel", move || {
            let fix = registry::flat(7);
            let g2 = fix.g2.as_ref().unwrap().1.clone();
            let ctx = fix.model.context();
            let a = Scalar::one(ctx);
            let cone = build_cone(&fix.model, &a).unwrap();
            let tc = AltForm::zero(ctx, 7, 3);
            let s7 = induced_spin7(&cone, &g2, &tc);
            let (_t, conn) = intermediate_connection_g2(&cone, &g2, &tc);
            let resid = conn.covariant_derivative_form(s7.phi4());
            if resid.iter().any(|r| !r.is_zero()) {
                return Some("∇̄Φ ≠ 0 on the flat cone".into());
            }
            None
        })
    }));
    jobs
}
