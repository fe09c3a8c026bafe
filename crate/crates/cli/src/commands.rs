use plasmon_core::dispersion::{
    critical_speeds, debroglie_coefficients, debroglie_wavenumbers, dispersion_gap,
    regime_components, sample_dispersion, Regime,
};
use plasmon_core::field::{uniform_grid, BoundaryConditions, FieldEvaluator, FieldSolution};
use plasmon_core::lattice::{bragg_resonant_speeds, BlochResponse, LatticeBvpSolution, LatticeParameters};
use plasmon_core::model::{screening_parameter, BeamParameters, Material, ScreeningConvention};
use plasmon_core::oracle::{integrate_system, IntegratorConfig, SystemSpec};
use plasmon_core::parallel;
use plasmon_core::pseudoforce::{steady_state, DrivenSystem, PseudoforceSolution};

use crate::args::{
    BeamArgs, BraggArgs, Command, DispersionArgs, GridArgs, LatticeArgs, MaterialArgs, PlasmaArgs, SolveArgs,
    SteadyArgs, SweepArgs, SweepTarget, SweepVar,
};
use crate::dataset::{col, Cell, Column, Dataset};
use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

const MAX_POINTS: usize = 10_000_000;

/// Run-wide settings shared by every command.
pub struct Context {
    pub convention: ScreeningConvention,
    /// Materials from `--materials`, searched before the presets.
    pub materials: Vec<Material>,
}

impl Context {
    fn material(&self, name: &str) -> Result<Material> {
        self.materials
            .iter()
            .find(|m| m.name().eq_ignore_ascii_case(name))
            .cloned()
            .map_or_else(|| Material::preset(name), Ok)
            .map_err(|_| CliError::invalid("--material", format!("unknown material '{name}'")))
    }

    fn all_materials(&self) -> Vec<Material> {
        let mut out = self.materials.clone();
        for m in Material::presets() {
            if !out.iter().any(|c| c.name().eq_ignore_ascii_case(m.name())) {
                out.push(m);
            }
        }
        out
    }
}

pub fn run(ctx: &Context, command: &Command) -> Result<Dataset> {
    let mut data = match command {
        Command::Dispersion(a) => dispersion(a),
        Command::Wavenumbers(a) => wavenumbers(ctx, a),
        Command::Regimes(a) => regimes(ctx, a),
        Command::Solve(a) => solve(ctx, a),
        Command::Steady(a) => steady(ctx, a),
        Command::Lattice(a) => lattice(ctx, a),
        Command::Bragg(a) => bragg(ctx, a),
        Command::Material(a) => material(ctx, a),
        Command::Sweep(a) => sweep(ctx, a),
    }?;
    data.meta("command", command.name());
    data.meta("convention", ctx.convention);
    data.meta(
        "units",
        "wavenumbers k_p, energies E_p, speeds v_p, lengths 1/k_p, temperatures T_p; mu = mu0/(2 E_p)",
    );
    Ok(data)
}

fn finite(flag: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::invalid(flag, format!("must be finite, got {v}")))
    }
}

fn positive(flag: &'static str, v: f64) -> Result<f64> {
    if finite(flag, v)? > 0.0 {
        Ok(v)
    } else {
        Err(CliError::invalid(flag, format!("must be positive, got {v}")))
    }
}

fn non_negative(flag: &'static str, v: f64) -> Result<f64> {
    if finite(flag, v)? >= 0.0 {
        Ok(v)
    } else {
        Err(CliError::invalid(flag, format!("must be non-negative, got {v}")))
    }
}

fn point_count(flag: &'static str, n: usize) -> Result<usize> {
    if (2..=MAX_POINTS).contains(&n) {
        Ok(n)
    } else {
        Err(CliError::invalid(flag, format!("must lie in [2, {MAX_POINTS}], got {n}")))
    }
}

fn range(lo_flag: &'static str, hi_flag: &'static str, lo: f64, hi: f64) -> Result<()> {
    finite(lo_flag, lo)?;
    if finite(hi_flag, hi)? > lo {
        Ok(())
    } else {
        Err(CliError::invalid(hi_flag, format!("must exceed {lo_flag} = {lo}, got {hi}")))
    }
}

/// Resolved plasma state.
#[derive(Debug, Clone)]
struct Plasma {
    mu: f64,
    xi: f64,
    theta: Option<f64>,
}

/// Flag checks that do not depend on the swept value.
fn check_plasma_flags(ctx: &Context, a: &PlasmaArgs) -> Result<()> {
    if let Some(mu) = a.mu {
        finite("--mu", mu)?;
    }
    if let Some(xi) = a.xi {
        non_negative("--xi", xi)?;
    }
    if let Some(theta) = a.theta {
        positive("--theta", theta)?;
    }
    if let Some(name) = &a.material {
        ctx.material(name)?;
        if a.xi.is_none() && a.theta.is_none() {
            return Err(CliError::invalid("--theta", "a material needs --theta or --xi"));
        }
    } else if a.theta.is_some() && ctx.convention == ScreeningConvention::PaperCompat {
        return Err(CliError::invalid(
            "--convention",
            "paper-compat screening needs --material (mu0 in eV)",
        ));
    }
    Ok(())
}

fn resolve_plasma(ctx: &Context, a: &PlasmaArgs) -> Result<Plasma> {
    check_plasma_flags(ctx, a)?;
    let material = a.material.as_deref().map(|n| ctx.material(n)).transpose()?;
    let mu = match &material {
        Some(m) => m.normalized_mu(),
        None => a.mu.unwrap_or(0.0),
    };
    let xi = match (a.xi, a.theta) {
        (Some(xi), _) => xi,
        (None, Some(theta)) => {
            let screening_mu = material.as_ref().map_or(mu, |m| ctx.convention.screening_mu(m));
            screening_parameter(screening_mu, theta)?
        }
        (None, None) => 0.0,
    };
    Ok(Plasma {
        mu,
        xi,
        theta: a.theta,
    })
}

fn beam(plasma: &Plasma, gamma: f64, u0: f64) -> Result<BeamParameters> {
    let b = BeamParameters::new(gamma, plasma.mu, plasma.xi, u0)?;
    Ok(match plasma.theta {
        Some(t) => b.with_theta(t)?,
        None => b,
    })
}

fn resolve_beam(ctx: &Context, a: &BeamArgs, u0: f64) -> Result<BeamParameters> {
    non_negative("--gamma", a.gamma)?;
    finite("--u0", u0)?;
    let plasma = resolve_plasma(ctx, &a.plasma)?;
    beam(&plasma, a.gamma, u0)
}

fn note_plasma(data: &mut Dataset, a: &PlasmaArgs) {
    if let Some(m) = &a.material {
        data.meta("material", m);
    }
}

const BEAM_COLUMNS: [Column; 4] = [
    col("gamma", "v_p"),
    col("mu", "dimensionless"),
    col("xi", "k_p"),
    col("theta", "T_p"),
];

fn beam_cells(b: &BeamParameters) -> Vec<Cell> {
    vec![b.gamma().into(), b.mu().into(), b.xi().into(), b.theta().into()]
}

fn dispersion(a: &DispersionArgs) -> Result<Dataset> {
    point_count("--points", a.points)?;
    non_negative("--kmin", a.kmin)?;
    range("--kmin", "--kmax", a.kmin, a.kmax)?;
    for &xi in &a.xi {
        non_negative("--xi", xi)?;
    }
    let mut data = Dataset::new(vec![
        col("series", ""),
        col("xi", "k_p"),
        col("k", "k_p"),
        col("energy", "E_p"),
    ]);
    for &xi in &a.xi {
        let curve = sample_dispersion(xi, a.kmin, a.kmax, a.points)?;
        for (k, e) in curve.samples {
            data.push(vec!["curve".into(), xi.into(), k.into(), e.into()]);
        }
        // exact minimum: K = k² + ξ² = 1 when ξ < 1, else k = 0
        let k_star = (1.0 - xi * xi).max(0.0).sqrt();
        if (a.kmin..=a.kmax).contains(&k_star) {
            data.push(vec!["minimum".into(), xi.into(), k_star.into(), dispersion_gap(xi).into()]);
        }
    }
    Ok(data)
}

fn regime_label(regime: Option<Regime>) -> Cell {
    regime.map_or("unclassified", Regime::label).into()
}

const WAVENUMBER_COLUMNS: [Column; 7] = [
    col("energy", "E_p"),
    col("regime", ""),
    col("k1_re", "k_p"),
    col("k1_im", "k_p"),
    col("k2_re", "k_p"),
    col("k2_im", "k_p"),
    col("stable", ""),
];

fn wavenumber_cells(b: &BeamParameters) -> Vec<Cell> {
    let p = debroglie_wavenumbers(b);
    let stable = p.k1.im == 0.0 && p.k2.im == 0.0;
    vec![
        b.energy().into(),
        regime_label(p.regime.map(|r| r.regime)),
        p.k1.re.into(),
        p.k1.im.into(),
        p.k2.re.into(),
        p.k2.im.into(),
        (if stable { "yes" } else { "no" }).into(),
    ]
}

fn wavenumbers(ctx: &Context, a: &BeamArgs) -> Result<Dataset> {
    let b = resolve_beam(ctx, a, 0.0)?;
    let mut columns = BEAM_COLUMNS.to_vec();
    columns.extend(WAVENUMBER_COLUMNS);
    columns.extend([
        col("chi1_re", "dimensionless"),
        col("chi1_im", "dimensionless"),
        col("chi2_re", "dimensionless"),
        col("chi2_im", "dimensionless"),
    ]);
    let mut data = Dataset::new(columns);
    if b.xi() < 1.0 {
        // piecewise closed forms; also rejects eigenvalues below −1
        regime_components(b.gamma(), b.mu(), b.xi())?;
    }
    let chi = debroglie_coefficients(&b)?;
    let mut row = beam_cells(&b);
    row.extend(wavenumber_cells(&b));
    row.extend([chi.chi1.re.into(), chi.chi1.im.into(), chi.chi2.re.into(), chi.chi2.im.into()]);
    data.push(row);
    note_plasma(&mut data, &a.plasma);
    Ok(data)
}

fn regime_rows(plasma: &Plasma) -> Result<Vec<(&'static str, f64, Option<f64>)>> {
    let w = critical_speeds(plasma.mu, plasma.xi)?;
    let mut rows = vec![
        (Regime::SubChemical.label(), 0.0, Some(w.chemical)),
        (Regime::OscillatoryConjugate.label(), w.chemical, Some(w.low)),
    ];
    if w.empty {
        rows.push(("unclassified", w.low, None));
    } else {
        rows.push((Regime::BothReal.label(), w.low, w.high.is_finite().then_some(w.high)));
        if w.high.is_finite() {
            rows.push((Regime::WaveEvanescent.label(), w.high, None));
        }
    }
    Ok(rows)
}

fn regimes(ctx: &Context, a: &PlasmaArgs) -> Result<Dataset> {
    let plasma = resolve_plasma(ctx, a)?;
    let mut data = Dataset::new(vec![
        col("regime", ""),
        col("gamma_lo", "v_p"),
        col("gamma_hi", "v_p"),
        col("mu", "dimensionless"),
        col("xi", "k_p"),
    ]);
    for (label, lo, hi) in regime_rows(&plasma)? {
        data.push(vec![label.into(), lo.into(), hi.into(), plasma.mu.into(), plasma.xi.into()]);
    }
    note_plasma(&mut data, a);
    Ok(data)
}

fn grid(g: &GridArgs) -> Result<Vec<f64>> {
    point_count("--points", g.points)?;
    range("--xmin", "--xmax", g.xmin, g.xmax)?;
    Ok(uniform_grid(g.xmin, g.xmax, g.points)?)
}

fn field_dataset(sol: &FieldSolution) -> Dataset {
    let mut data = Dataset::new(vec![
        col("series", ""),
        col("x", "1/k_p"),
        col("phi", "dimensionless"),
        col("psi", "dimensionless"),
    ]);
    let mut push = |label: &str, phi: &[f64], psi: &[f64]| {
        for i in 0..sol.x.len() {
            data.push(vec![label.into(), sol.x[i].into(), phi[i].into(), psi[i].into()]);
        }
    };
    push("total", &sol.phi, &sol.psi);
    for part in &sol.parts {
        push(part.label, &part.phi, &part.psi);
    }
    data
}

fn solve(ctx: &Context, a: &SolveArgs) -> Result<Dataset> {
    let b = resolve_beam(ctx, &a.beam, a.u0)?;
    let bc = BoundaryConditions {
        phi0: finite("--phi0", a.phi0)?,
        psi0: finite("--psi0", a.psi0)?,
        dphi0: finite("--dphi0", a.dphi0)?,
        dpsi0: finite("--dpsi0", a.dpsi0)?,
    };
    let x = grid(&a.grid)?;
    if a.oracle && a.grid.xmin != 0.0 {
        return Err(CliError::invalid("--xmin", "the oracle integrates from x = 0"));
    }
    let sys = DrivenSystem::from_beam(&b);
    let sol = PseudoforceSolution::new(&sys, &bc)?;
    let mut data = field_dataset(&sol.sample(&x)?);
    if a.oracle {
        let cfg = IntegratorConfig::new(1e-3, a.grid.xmax)?;
        let reference = integrate_system(&SystemSpec::from_driven(&sys), &bc, &cfg)?;
        for i in 0..reference.x.len() {
            data.push(vec![
                "oracle".into(),
                reference.x[i].into(),
                reference.phi[i].into(),
                reference.psi[i].into(),
            ]);
        }
    }
    data.meta("gamma", b.gamma());
    data.meta("mu", b.mu());
    data.meta("xi", b.xi());
    data.meta("u0", b.u0());
    note_plasma(&mut data, &a.beam.plasma);
    Ok(data)
}

const STEADY_COLUMNS: [Column; 6] = [
    col("amp_phi", "dimensionless"),
    col("amp_psi", "dimensionless"),
    col("theta_phi", "rad"),
    col("theta_psi", "rad"),
    col("eta1", "dimensionless"),
    col("eta2", "dimensionless"),
];

fn steady_cells(b: &BeamParameters) -> std::result::Result<Vec<Cell>, plasmon_core::Error> {
    let s = steady_state(b)?;
    Ok(vec![
        s.amp_phi.into(),
        s.amp_psi.into(),
        s.theta_phi.into(),
        s.theta_psi.into(),
        s.eta1.into(),
        s.eta2.into(),
    ])
}

fn steady(ctx: &Context, a: &SteadyArgs) -> Result<Dataset> {
    let b = resolve_beam(ctx, &a.beam, a.u0)?;
    let mut columns = BEAM_COLUMNS.to_vec();
    columns.push(col("u0", "dimensionless"));
    columns.extend(STEADY_COLUMNS);
    let mut data = Dataset::new(columns);
    let mut row = beam_cells(&b);
    row.push(b.u0().into());
    row.extend(steady_cells(&b)?);
    data.push(row);
    note_plasma(&mut data, &a.beam.plasma);
    Ok(data)
}

fn lattice(ctx: &Context, a: &LatticeArgs) -> Result<Dataset> {
    let b = resolve_beam(ctx, &a.beam, a.u0)?;
    positive("--G", a.g)?;
    finite("--ug", a.ug)?;
    if a.n == 0 {
        return Err(CliError::invalid("--n", "harmonic index starts at 1"));
    }
    let x = grid(&a.grid)?;
    let lat = LatticeParameters::new(a.g, a.ug, a.n)?;
    let sampled = if a.bvp {
        LatticeBvpSolution::new(&b, &lat)?.sample(&x)
    } else {
        BlochResponse::new(&b, &lat, a.n)?.sample(&x)
    };
    let mut data = field_dataset(&sampled?);
    data.meta("gamma", b.gamma());
    data.meta("mu", b.mu());
    data.meta("G", a.g);
    data.meta("ug", a.ug);
    data.meta("u0", b.u0());
    data.meta("solution", if a.bvp { "periodic" } else { "bloch" });
    if !a.bvp {
        data.meta("n", a.n);
    }
    Ok(data)
}

fn bragg_rows(plasma: &Plasma, g: f64, nmax: usize) -> std::result::Result<Vec<Vec<Cell>>, plasmon_core::Error> {
    let lat = LatticeParameters::new(g, 0.0, nmax)?;
    Ok(bragg_resonant_speeds(plasma.mu, plasma.xi, &lat)?
        .into_iter()
        .map(|r| {
            vec![
                r.n.into(),
                r.channel.label().into(),
                r.wavenumber.into(),
                r.gamma_res.into(),
            ]
        })
        .collect())
}

fn bragg(ctx: &Context, a: &BraggArgs) -> Result<Dataset> {
    let plasma = resolve_plasma(ctx, &a.plasma)?;
    positive("--G", a.g)?;
    if a.nmax == 0 {
        return Err(CliError::invalid("--nmax", "must be at least 1"));
    }
    let mut data = Dataset::new(vec![
        col("n", ""),
        col("channel", ""),
        col("wavenumber", "k_p"),
        col("gamma_res", "v_p"),
        col("mu", "dimensionless"),
        col("xi", "k_p"),
        col("G", "k_p"),
    ]);
    for mut row in bragg_rows(&plasma, a.g, a.nmax)? {
        row.extend([plasma.mu.into(), plasma.xi.into(), a.g.into()]);
        data.push(row);
    }
    note_plasma(&mut data, &a.plasma);
    Ok(data)
}

fn material(ctx: &Context, a: &MaterialArgs) -> Result<Dataset> {
    positive("--theta", a.theta)?;
    let list = match &a.name {
        Some(n) => vec![ctx.material(n).map_err(|_| CliError::invalid("--name", format!("unknown material '{n}'")))?],
        None => ctx.all_materials(),
    };
    let mut data = Dataset::new(vec![
        col("name", ""),
        col("mu0", "eV"),
        col("Ep", "eV"),
        col("mu", "dimensionless"),
        col("theta", "T_p"),
        col("xi", "k_p"),
        col("xi_primary", "k_p"),
        col("xi_paper_compat", "k_p"),
        col("k_p", "1/m"),
        col("v_p", "m/s"),
        col("T_p", "K"),
    ]);
    for m in list {
        let xi_of = |c: ScreeningConvention| screening_parameter(c.screening_mu(&m), a.theta);
        let primary = xi_of(ScreeningConvention::Primary)?;
        let compat = xi_of(ScreeningConvention::PaperCompat)?;
        let active = match ctx.convention {
            ScreeningConvention::Primary => primary,
            ScreeningConvention::PaperCompat => compat,
        };
        let s = m.scales();
        data.push(vec![
            m.name().into(),
            m.mu0_ev().into(),
            m.ep_ev().into(),
            m.normalized_mu().into(),
            a.theta.into(),
            active.into(),
            primary.into(),
            compat.into(),
            s.k_p.into(),
            s.v_p.into(),
            s.t_p.into(),
        ]);
    }
    Ok(data)
}

/// Fixed and swept inputs of one sweep row.
#[derive(Debug, Clone, Copy)]
struct SweepPoint {
    gamma: Option<f64>,
    g: Option<f64>,
}

fn check_sweep(ctx: &Context, a: &SweepArgs, plasma: &PlasmaArgs) -> Result<()> {
    point_count("--points", a.points)?;
    range("--lo", "--hi", a.lo, a.hi)?;
    finite("--u0", a.u0)?;
    let lo_ok = match a.var {
        SweepVar::Gamma | SweepVar::Xi => a.lo >= 0.0,
        SweepVar::Theta | SweepVar::G => a.lo > 0.0,
        SweepVar::Mu => true,
    };
    if !lo_ok {
        return Err(CliError::invalid("--lo", format!("{} cannot start at {}", a.var.label(), a.lo)));
    }
    let clash = match a.var {
        SweepVar::Mu => a.material.is_some().then_some("--material"),
        SweepVar::Xi => a.theta.is_some().then_some("--theta"),
        SweepVar::Theta => a.xi.is_some().then_some("--xi"),
        SweepVar::Gamma => a.gamma.is_some().then_some("--gamma"),
        SweepVar::G => a.g.is_some().then_some("--G"),
    };
    if let Some(flag) = clash {
        return Err(CliError::invalid(flag, format!("conflicts with --var {}", a.var.label())));
    }
    if a.var == SweepVar::G && a.target != SweepTarget::Bragg {
        return Err(CliError::invalid("--target", "sweeping G needs --target bragg"));
    }
    let needs_gamma = matches!(a.target, SweepTarget::Wavenumbers | SweepTarget::Steady);
    if needs_gamma && a.var != SweepVar::Gamma {
        non_negative("--gamma", a.gamma.ok_or_else(|| CliError::invalid("--gamma", "required by this target"))?)?;
    }
    if a.target == SweepTarget::Bragg {
        if a.var != SweepVar::G {
            positive("--G", a.g.ok_or_else(|| CliError::invalid("--G", "required by the bragg target"))?)?;
        }
        if a.nmax == 0 {
            return Err(CliError::invalid("--nmax", "must be at least 1"));
        }
    }
    // the swept value may supply what the fixed flags lack
    let mut probe = plasma.clone();
    match a.var {
        SweepVar::Theta => probe.theta = Some(a.lo.max(f64::MIN_POSITIVE)),
        SweepVar::Xi => probe.xi = Some(a.lo),
        _ => {}
    }
    check_plasma_flags(ctx, &probe)
}

fn sweep(ctx: &Context, a: &SweepArgs) -> Result<Dataset> {
    let plasma_args = PlasmaArgs {
        mu: a.mu,
        xi: a.xi,
        theta: a.theta,
        material: a.material.clone(),
    };
    check_sweep(ctx, a, &plasma_args)?;

    let step = (a.hi - a.lo) / (a.points - 1) as f64;
    let values: Vec<f64> = (0..a.points)
        .map(|i| if i + 1 == a.points { a.hi } else { a.lo + step * i as f64 })
        .collect();

    let mut columns = BEAM_COLUMNS.to_vec();
    let outputs: Vec<Column> = match a.target {
        SweepTarget::Wavenumbers => WAVENUMBER_COLUMNS.to_vec(),
        SweepTarget::Steady => {
            columns.push(col("u0", "dimensionless"));
            STEADY_COLUMNS.to_vec()
        }
        SweepTarget::Regimes => vec![col("chemical", "v_p"), col("low", "v_p"), col("high", "v_p")],
        SweepTarget::Bragg => {
            columns.push(col("G", "k_p"));
            (1..=a.nmax)
                .map(|n| Column {
                    name: format!("gamma_res_{n}").into(),
                    unit: "v_p",
                })
                .collect()
        }
    };
    let width = outputs.len();
    columns.extend(outputs);
    columns.push(col("error", ""));

    let rows = parallel::map(&values, |&v| {
        let mut plasma = plasma_args.clone();
        let mut point = SweepPoint {
            gamma: a.gamma,
            g: a.g,
        };
        match a.var {
            SweepVar::Gamma => point.gamma = Some(v),
            SweepVar::Mu => plasma.mu = Some(v),
            SweepVar::Theta => plasma.theta = Some(v),
            SweepVar::Xi => plasma.xi = Some(v),
            SweepVar::G => point.g = Some(v),
        }
        sweep_row(ctx, a, &plasma, point, width)
    });

    let mut data = Dataset::new(columns);
    for row in rows {
        data.push(row);
    }
    data.meta("sweep_var", a.var.label());
    data.meta("target", a.target.label());
    note_plasma(&mut data, &plasma_args);
    Ok(data)
}

/// One sweep row; failures fill the outputs with blanks and name the error.
fn sweep_row(ctx: &Context, a: &SweepArgs, plasma: &PlasmaArgs, point: SweepPoint, width: usize) -> Vec<Cell> {
    let resolved = resolve_plasma(ctx, plasma);
    // failed rows echo the raw flags
    let inputs = |p: Option<&Plasma>| -> Vec<Cell> {
        let mut cells = vec![
            point.gamma.into(),
            p.map_or(plasma.mu, |p| Some(p.mu)).into(),
            p.map_or(plasma.xi, |p| Some(p.xi)).into(),
            plasma.theta.into(),
        ];
        match a.target {
            SweepTarget::Steady => cells.push(a.u0.into()),
            SweepTarget::Bragg => cells.push(point.g.into()),
            _ => {}
        }
        cells
    };
    let outputs = resolved.and_then(|p| {
        let cells = match a.target {
            SweepTarget::Wavenumbers => {
                wavenumber_cells(&beam(&p, point.gamma.unwrap_or_default(), 0.0)?)
            }
            SweepTarget::Steady => steady_cells(&beam(&p, point.gamma.unwrap_or_default(), a.u0)?)?,
            SweepTarget::Regimes => {
                let w = critical_speeds(p.mu, p.xi)?;
                let high = (!w.empty && w.high.is_finite()).then_some(w.high);
                vec![w.chemical.into(), w.low.into(), high.into()]
            }
            SweepTarget::Bragg => {
                let found = bragg_rows(&p, point.g.unwrap_or_default(), a.nmax)?;
                let mut by_n = vec![Cell::Empty; a.nmax];
                for row in found {
                    if let (Cell::Int(n), Some(gamma)) = (&row[0], row.get(3)) {
                        by_n[*n as usize - 1] = gamma.clone();
                    }
                }
                by_n
            }
        };
        Ok((p, cells))
    });
    match outputs {
        Ok((p, cells)) => {
            let mut row = inputs(Some(&p));
            row.extend(cells);
            row.push(Cell::Text(String::new()));
            row
        }
        Err(e) => {
            let mut row = inputs(None);
            row.extend(std::iter::repeat_n(Cell::Empty, width));
            let tag = match &e {
                CliError::Compute(inner) => format!("{}: {inner}", inner.name()),
                CliError::Invalid { .. } => e.to_string(),
            };
            row.push(Cell::Text(tag));
            row
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context {
            convention: ScreeningConvention::Primary,
            materials: Vec::new(),
        }
    }

    #[test]
    fn regime_rows_tile_the_speed_axis() {
        let rows = regime_rows(&Plasma {
            mu: 0.0,
            xi: 0.5,
            theta: None,
        })
        .unwrap();
        assert_eq!(rows.len(), 4);
        for w in rows.windows(2) {
            assert_eq!(w[0].2, Some(w[1].1));
        }
    }

    #[test]
    fn material_plasma_uses_normalized_mu() {
        let a = PlasmaArgs {
            mu: None,
            xi: None,
            theta: Some(0.1),
            material: Some("Al".into()),
        };
        let p = resolve_plasma(&ctx(), &a).unwrap();
        assert!((p.mu - 0.39).abs() < 1e-15);
        assert!(p.xi > 1.0);
    }

    #[test]
    fn paper_compat_needs_material() {
        let c = Context {
            convention: ScreeningConvention::PaperCompat,
            materials: Vec::new(),
        };
        let a = PlasmaArgs {
            mu: Some(0.3),
            xi: None,
            theta: Some(0.1),
            material: None,
        };
        assert!(matches!(
            resolve_plasma(&c, &a),
            Err(CliError::Invalid { flag: "--convention", .. })
        ));
    }
}
