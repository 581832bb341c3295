//! Command-line workbench: classify structures, build cones, solve for
//! characteristic connections, run spinor computations, and execute the
//! full verification suite.

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use conewb::registry::{self, Fixture};
use conewb::report::Report;
use conewb::specfile;
use conewb::spinors;
use conewb_core::connection::{levi_civita, CharSolve};
use conewb_core::cone::{build_cone, induced_hermitian, induced_spin7, intermediate_connection_contact, intermediate_connection_g2};
use conewb_core::parallel::ExecMode;
use conewb_core::scalar::{parse_scalar, BigRational, Scalar};
use conewb_core::spin::solve_contact_spinors;
use conewb_core::structures::g2::G2Structure;
use conewb_core::structures::ClassReport;
use conewb_core::tensor::{combinations, AltForm};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "conewb",
    about = "Exact-arithmetic workbench for G-structures, skew-torsion connections and cone constructions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// Registry model name (see `conewb show --list`).
    #[arg(long)]
    model: Option<String>,
    /// Load the model from a manifold-spec file instead.
    #[arg(long)]
    file: Option<String>,
    /// Instantiate a parameter at a rational value (repeatable), e.g.
    /// `--param rho=2` or `--param c1=-25`.
    #[arg(long = "param", value_name = "NAME=RATIONAL")]
    params: Vec<String>,
    /// Flip the model orientation.
    #[arg(long, allow_hyphen_values = true)]
    orientation: Option<String>,
    /// Output format.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a structure (optionally the induced structure on its cone).
    Classify {
        #[command(flatten)]
        model: ModelArgs,
        /// Structure name within the model (e.g. F1, F2, F, phi).
        #[arg(long)]
        structure: String,
        /// Classify the induced structure on the cone instead.
        #[arg(long)]
        cone: bool,
        /// Cone constant (expression over the model parameters).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
    },
    /// Build the cone and report the induced structure and the
    /// intermediate connection data.
    Cone {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Solve for the characteristic connection (linear solver plus the
    /// closed form when one applies).
    CharConnection {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        structure: String,
    },
    /// Spinor computations: defining lines, exact Killing (s, α) solve,
    /// cone lifts, and the G₂ corollary check.
    Spinors {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        structure: Option<String>,
        /// Family parameter s (expression); when given, verifies the
        /// Killing equation at this s instead of solving for it.
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        /// Lift the spinors to the cone (requires instantiated α ≠ 0, or
        /// an explicit --a).
        #[arg(long)]
        cone: bool,
        /// Named special check: `g2-corollary`.
        #[arg(long)]
        check: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
    },
    /// Run the full paper-identity suite.
    Check {
        /// Force sequential execution.
        #[arg(long)]
        sequential: bool,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Pretty-print a model and its structures.
    Show {
        #[command(flatten)]
        model: ModelArgs,
        /// List the registry models and exit.
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_param(s: &str) -> Result<(String, BigRational)> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| anyhow!("--param needs NAME=RATIONAL, got `{s}`"))?;
    let q: BigRational = if let Some((n, d)) = value.split_once('/') {
        BigRational::new(
            n.trim().parse().context("bad rational numerator")?,
            d.trim().parse().context("bad rational denominator")?,
        )
    } else {
        BigRational::from_integer(value.trim().parse().context("bad rational value")?)
    };
    Ok((name.trim().to_string(), q))
}

fn resolve_fixture(args: &ModelArgs) -> Result<Fixture> {
    let mut fix = match (&args.model, &args.file) {
        (Some(name), None) => registry::registry_get(name)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading `{path}`"))?;
            let spec = specfile::parse_spec(&text)?;
            Fixture {
                name: spec.name.clone(),
                model: spec.model.clone(),
                contacts: spec.contacts.into_iter().collect(),
                g2: spec.g2.into_iter().next(),
                tc: None,
                default_params: vec![],
                contact3: None,
            }
        }
        _ => bail!("give exactly one of --model NAME or --file PATH"),
    };
    if !args.params.is_empty() {
        let parsed: Vec<(String, BigRational)> = args
            .params
            .iter()
            .map(|p| parse_param(p))
            .collect::<Result<_>>()?;
        let borrowed: Vec<(&str, BigRational)> = parsed
            .iter()
            .map(|(n, q)| (n.as_str(), q.clone()))
            .collect();
        fix = registry::instantiate(&fix, &borrowed);
    }
    if let Some(o) = &args.orientation {
        let flip = match o.as_str() {
            "+1" | "1" => 1,
            "-1" => -1,
            other => bail!("--orientation must be +1 or -1, got `{other}`"),
        };
        let mut m = (*fix.model).clone();
        m.set_orientation(flip);
        fix.model = std::sync::Arc::new(m);
        // structures keep referencing the old model only through scalars;
        // rebuild them against the reoriented model.
        let reoriented = registry::instantiate(&fix, &[]);
        fix = reoriented;
    }
    Ok(fix)
}

fn parse_a(fix: &Fixture, a: &Option<String>, default: &str) -> Result<Scalar> {
    let expr = a.as_deref().unwrap_or(default);
    Ok(parse_scalar(expr, fix.model.context())?)
}

fn print_class_report(report: &ClassReport, structured: bool) {
    if structured {
        println!("conewb-report 1");
        for r in &report.residuals {
            println!(
                "class {} {}",
                r.label,
                if r.is_zero { "holds" } else { "fails" }
            );
        }
        for (name, v) in &report.verdicts {
            println!("verdict {name} {v}");
        }
        for (name, v) in &report.invariants {
            println!("invariant {name} {v}");
        }
        return;
    }
    println!("geometry: {}", report.geometry);
    println!("defining relations that hold exactly:");
    for r in &report.residuals {
        if r.is_zero {
            println!("  {}", r.label);
        }
    }
    println!("defining relations that fail (first witness):");
    for r in &report.residuals {
        if !r.is_zero {
            let w = r
                .witness
                .as_ref()
                .map(|(idx, v)| format!("@{idx:?} = {v}"))
                .unwrap_or_default();
            println!("  {} {w}", r.label);
        }
    }
    println!("verdicts:");
    for (name, v) in &report.verdicts {
        println!("  {name}: {v}");
    }
    if !report.invariants.is_empty() {
        println!("invariants:");
        for (name, v) in &report.invariants {
            println!("  {name} = {v}");
        }
    }
    if let Some(solve) = &report.char_connection {
        match solve {
            CharSolve::None => println!("characteristic connection: none"),
            CharSolve::Unique(t) => {
                println!("characteristic connection: unique, torsion {}", form_str(t))
            }
            CharSolve::Family { basis, .. } => {
                println!("characteristic connection: family of dimension {}", basis.len())
            }
        }
    }
}

fn form_str(f: &AltForm) -> String {
    let mut terms = Vec::new();
    for tuple in combinations(f.dim(), f.degree()) {
        let c = f.get_increasing(&tuple);
        if !c.is_zero() {
            let idx: String = tuple.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("");
            terms.push(format!("({c})·e{idx}"));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify { model, structure, cone, a } => {
            let fix = resolve_fixture(&model)?;
            let structured = model.format == "structured";
            if let Some((gname, g2)) = &fix.g2 {
                if *gname == structure {
                    if cone {
                        let a = parse_a(&fix, &a, "a")?;
                        let cm = build_cone(&fix.model, &a)?;
                        let tc = characteristic_torsion_for_g2(&fix, g2)?;
                        let s7 = induced_spin7(&cm, g2, &tc);
                        print_class_report(&s7.classify(), structured);
                    } else {
                        print_class_report(&g2.classify(), structured);
                    }
                    return Ok(ExitCode::SUCCESS);
                }
            }
            let s = fix.contact(&structure)?;
            if cone {
                let a = parse_a(&fix, &a, "1")?;
                let cm = build_cone(&fix.model, &a)?;
                let h = induced_hermitian(&cm, s)?;
                print_class_report(&h.classify(), structured);
            } else {
                print_class_report(&s.classify(), structured);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cone { model, structure, a } => {
            let fix = resolve_fixture(&model)?;
            if let Some((gname, g2)) = &fix.g2 {
                if *gname == structure {
                    let a = parse_scalar(&a, fix.model.context())?;
                    let cm = build_cone(&fix.model, &a)?;
                    let tc = characteristic_torsion_for_g2(&fix, g2)?;
                    let s7 = induced_spin7(&cm, g2, &tc);
                    let (t, conn) = intermediate_connection_g2(&cm, g2, &tc);
                    println!("cone dimension: {}", cm.frame().dim());
                    println!("induced Spin(7) form: {}", form_str(s7.phi4()));
                    println!("intermediate torsion T = T^c - (2a/3)φ: {}", form_str(&t));
                    let resid = conn.covariant_derivative_form(s7.phi4());
                    let parallel = resid.iter().all(|r| r.is_zero());
                    println!("∇̄Φ ≡ 0: {parallel}");
                    return Ok(ExitCode::SUCCESS);
                }
            }
            let s = fix.contact(&structure)?;
            let a = parse_scalar(&a, fix.model.context())?;
            let cm = build_cone(&fix.model, &a)?;
            let h = induced_hermitian(&cm, s)?;
            let lc = levi_civita(&fix.model);
            let tc = s
                .characteristic_torsion(&lc)
                .map_err(|e| anyhow!("structure has no characteristic connection: {e}"))?;
            let (t, conn) = intermediate_connection_contact(&cm, s, &tc);
            println!("cone dimension: {}", cm.frame().dim());
            println!("induced Kähler form: {}", form_str(h.omega()));
            println!("intermediate torsion T = T^c - 2a·η∧F: {}", form_str(&t));
            let parallel = conn.covariant_derivative_endo(h.j()).is_zero();
            println!("∇̄J ≡ 0: {parallel}");
            Ok(ExitCode::SUCCESS)
        }
        Command::CharConnection { model, structure } => {
            let fix = resolve_fixture(&model)?;
            if let Some((gname, g2)) = &fix.g2 {
                if *gname == structure {
                    match g2.characteristic_solve() {
                        CharSolve::Unique(t) => println!("unique characteristic torsion: {}", form_str(&t)),
                        CharSolve::None => println!("no characteristic connection"),
                        CharSolve::Family { basis, .. } => {
                            println!("characteristic family of dimension {}", basis.len())
                        }
                    }
                    return Ok(ExitCode::SUCCESS);
                }
            }
            let s = fix.contact(&structure)?;
            match s.characteristic_solve() {
                CharSolve::Unique(t) => {
                    println!("unique characteristic torsion (solver): {}", form_str(&t));
                    let lc = levi_civita(&fix.model);
                    match s.characteristic_torsion(&lc) {
                        Ok(closed) => {
                            println!("closed form η∧dη + dF∘φ + N − η∧(ξ⌟N): {}", form_str(&closed));
                            println!("agreement: {}", closed.sub(&t).is_zero());
                        }
                        Err(e) => println!("closed form not applicable: {e}"),
                    }
                }
                CharSolve::None => println!("no characteristic connection"),
                CharSolve::Family { basis, particular } => {
                    println!("characteristic family: particular {}", form_str(&particular));
                    println!("homogeneous basis dimension {}", basis.len());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Spinors { model, structure, s, cone, check, a } => {
            let fix = resolve_fixture(&model)?;
            if check.as_deref() == Some("g2-corollary") {
                return g2_corollary(&fix, &a);
            }
            let sname = structure.ok_or_else(|| anyhow!("--structure is required"))?;
            let st = fix.contact(&sname)?;
            let module = spinors::module_for(&fix.model);
            let l1 = solve_contact_spinors(&module, st.phi(), st.xi(), false)
                .map_err(|e| anyhow!(e.to_string()))?;
            let l2 = solve_contact_spinors(&module, st.phi(), st.xi(), true)
                .map_err(|e| anyhow!(e.to_string()))?;
            println!("dim L1 = {}, dim L2 = {}", l1.len(), l2.len());
            let tc = match &fix.tc {
                Some(tc) => tc.clone(),
                None => match st.characteristic_solve() {
                    CharSolve::Unique(t) => t,
                    _ => bail!("structure has no unique characteristic torsion"),
                },
            };
            for (label, psi) in [("L1", &l1[0]), ("L2", &l2[0])] {
                match spinors::solve_killing_unknowns(&module, &fix.model, &tc, psi) {
                    spinors::KillingSolve::Unique { s: s_sol, alpha } => {
                        println!("{label}: Killing equation holds at s = {s_sol} with α = {alpha}");
                        if let Some(s_expr) = &s {
                            let s_val = parse_scalar(s_expr, fix.model.context())?;
                            println!(
                                "{label}: requested s = {s_expr} matches: {}",
                                (&s_val - &s_sol).is_zero()
                            );
                        }
                        if cone {
                            match spinors::cone_from_killing(&fix.model, s_sol, alpha) {
                                Ok((params, cm)) => {
                                    let (_t, conn) =
                                        intermediate_connection_contact(&cm, st, &tc);
                                    let cone_module = spinors::module_for(cm.frame());
                                    match spinors::lift_and_check(&module, &cone_module, &conn, psi)
                                    {
                                        Ok(out) => println!(
                                            "{label}: lift is ∇̄-parallel (a = {}, chirality {:+})",
                                            params.a, out.half
                                        ),
                                        Err(e) => println!("{label}: lift check failed: {e}"),
                                    }
                                }
                                Err(msg) => println!("{label}: cone lift refused: {msg}"),
                            }
                        }
                    }
                    spinors::KillingSolve::Family { s: s_sol, alpha, dim } => {
                        println!(
                            "{label}: Killing solutions form a family (dim {dim}), e.g. s = {s_sol}, α = {alpha}"
                        );
                        if cone && alpha.is_zero() {
                            println!(
                                "{label}: cone lift refused: cannot lift a parallel spinor (Killing number α = 0)"
                            );
                        }
                    }
                    spinors::KillingSolve::None => {
                        println!("{label}: no (s, α) solves the Killing equation")
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { sequential, format } => {
            let mode = if sequential { ExecMode::Sequential } else { ExecMode::Auto };
            let report: Report = conewb::suite::run_paper_suite(mode);
            if format == "structured" {
                print!("{}", report.structured());
            } else {
                print!("{}", report.text());
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Show { model, list } => {
            if list {
                for name in registry::known_models() {
                    println!("{name}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let fix = resolve_fixture(&model)?;
            println!("model {}", fix.name);
            println!("dim {}", fix.model.dim());
            let n = fix.model.dim();
            println!("brackets:");
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in 0..n {
                        let c = fix.model.c(i, j, k);
                        if !c.is_zero() {
                            println!("  [e{}, e{}] ∋ ({})·e{}", i + 1, j + 1, c, k + 1);
                        }
                    }
                }
            }
            for (name, s) in &fix.contacts {
                println!("contact structure {name}: η = {}, F = {}", form_str(s.eta()), form_str(s.fundamental()));
            }
            if let Some((name, g2)) = &fix.g2 {
                println!("G2 structure {name}: φ = {}", form_str(g2.phi()));
                println!("  *φ = {}", form_str(&g2.star_phi()));
            }
            if let Some(tc) = &fix.tc {
                println!("characteristic torsion: {}", form_str(tc));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// The characteristic torsion of a registry or file-loaded G₂ structure.
fn characteristic_torsion_for_g2(fix: &Fixture, g2: &G2Structure) -> Result<AltForm> {
    if let Some(tc) = &fix.tc {
        return Ok(tc.clone());
    }
    match g2.characteristic_solve() {
        CharSolve::Unique(t) => Ok(t),
        other => bail!("G2 structure has no unique characteristic torsion: {other:?}"),
    }
}

fn g2_corollary(fix: &Fixture, a: &Option<String>) -> Result<ExitCode> {
    let (_, g2) = fix
        .g2
        .as_ref()
        .ok_or_else(|| anyhow!("model has no G2 structure"))?;
    let tc = characteristic_torsion_for_g2(fix, g2)?;
    let module = spinors::module_for(&fix.model);
    let psi = conewb_core::spin::solve_g2_spinor(&module, g2.phi())
        .map_err(|e| anyhow!(e.to_string()))?
        .remove(0);
    let ctx = fix.model.context();
    let a_scalar = parse_scalar(a.as_deref().unwrap_or("a"), ctx)?;
    let conn_c = conewb_core::connection::s_family(&fix.model, &tc, &Scalar::from_ratio(ctx, 1, 4));
    let minus_half_a = -&(&a_scalar * &Scalar::from_ratio(ctx, 1, 2));
    let sixth_a = &a_scalar * &Scalar::from_ratio(ctx, 1, 6);
    let resid = conewb_core::spin::killing_residual(
        &module,
        &conn_c,
        &psi,
        &minus_half_a,
        Some((g2.phi(), &sixth_a)),
    );
    let zero = resid.iter().all(|r| r.is_zero());
    println!("∇^c ψ = -(a/2)Xψ + (a/6)(X⌟φ)ψ residual: {}", if zero { "0" } else { "nonzero" });
    let cm = build_cone(&fix.model, &a_scalar)?;
    let (_t, conn) = intermediate_connection_g2(&cm, g2, &tc);
    let cone_module = spinors::module_for(cm.frame());
    match spinors::lift_and_check(&module, &cone_module, &conn, &psi) {
        Ok(out) => println!("cone lift ∇̄-parallel (chirality {:+})", out.half),
        Err(e) => {
            println!("cone lift failed: {e}");
            return Ok(ExitCode::from(1));
        }
    }
    Ok(if zero { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
