//! One function per subcommand; each returns the finished CSV text.

use std::fmt::Write as _;

use frictionless::ansatz::design_exp_polynomial;
use frictionless::bangbang::matching_roots;
use frictionless::dynamics::{fidelity, populations, ExpandingMode, GridConfig, Propagator};
use frictionless::ermakov::{ground_state_excess, DEFAULT_TOL};
use frictionless::{
    adiabaticity_margin, bangbang_profile, design_phase_constrained, design_polynomial, hz_to_angular,
    inverse_frequency, linear_ramp, t_min, uniform_ramp, Error, FrequencyProfile, OscillatorSpec, ScalingLaw,
};
use rayon::prelude::*;

use crate::args::{Ansatz, BangBangArgs, DesignArgs, DesignFlags, Ramp, ReferenceArgs, SpecArgs, SweepArgs, VerifyFlags};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("design failed: {0}")]
    Design(String),
    #[error("propagation failed: {0}")]
    Propagation(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Design(_) => 3,
            CliError::Propagation(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

fn validation(e: Error) -> CliError {
    CliError::Validation(e.to_string())
}

fn design_err(e: Error) -> CliError {
    CliError::Design(e.to_string())
}

fn propagation(e: Error) -> CliError {
    match e {
        Error::NonPositiveParameter { .. } | Error::InvalidArgument(_) => CliError::Validation(e.to_string()),
        _ => CliError::Propagation(e.to_string()),
    }
}

/// Round-trip formatting: 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| if n == 1 { a } else { a + (b - a) * i as f64 / (n - 1) as f64 })
}

pub fn header(argv: &[String]) -> String {
    format!("# frictionless {} {}\n", env!("CARGO_PKG_VERSION"), argv.get(1..).unwrap_or_default().join(" "))
}

pub fn build_spec(a: &SpecArgs) -> Result<OscillatorSpec, CliError> {
    let w0 = a.omega0_rad.unwrap_or_else(|| hz_to_angular(a.omega0_hz.unwrap_or(250.0)));
    let wf = a.omegaf_rad.unwrap_or_else(|| hz_to_angular(a.omegaf_hz.unwrap_or(2.5)));
    if a.samples < 2 {
        return Err(CliError::Validation("--samples must be at least 2".into()));
    }
    OscillatorSpec::new(w0, wf, a.tf_ms * 1e-3, 1.0, 1.0).map_err(validation)
}

fn design_law(spec: &OscillatorSpec, d: &DesignFlags) -> Result<ScalingLaw, CliError> {
    match d.ansatz {
        Ansatz::Poly => design_polynomial(spec).map_err(design_err),
        Ansatz::Exppoly => design_exp_polynomial(spec).map_err(design_err),
        Ansatz::Phase => {
            let tp = d.tprime_ms.ok_or_else(|| CliError::Validation("--ansatz phase needs --tprime-ms".into()))?;
            if !(tp > 0.0 && tp.is_finite()) {
                return Err(CliError::Validation("--tprime-ms must be positive".into()));
            }
            design_phase_constrained(spec, tp * 1e-3).map_err(design_err)
        }
    }
}

struct Verified {
    n: usize,
    fidelity: f64,
    populations: Vec<f64>,
}

fn grid_config(spec: &OscillatorSpec, law: &ScalingLaw, n: usize, v: &VerifyFlags) -> Result<GridConfig, CliError> {
    let mut cfg = GridConfig::for_law(spec, law, n);
    if let Some(p) = v.grid_points {
        cfg.points = p;
    }
    if let Some(h) = v.grid_halfwidth {
        cfg.half_width = h;
    }
    if let Some(dt) = v.dt_ns {
        cfg.dt = dt * 1e-9;
    }
    cfg.validate().map_err(validation)?;
    Ok(cfg)
}

/// Propagates level `n` on a grid and compares with the analytic mode.
fn verify_level(
    spec: &OscillatorSpec,
    law: &ScalingLaw,
    profile: &FrequencyProfile,
    n: usize,
    v: &VerifyFlags,
) -> Result<Verified, CliError> {
    let cfg = grid_config(spec, law, n, v)?;
    let mode = ExpandingMode::new(n, law, spec).map_err(validation)?;
    let psi0 = mode.on_grid(0.0, cfg.x_min(), cfg.x_max(), cfg.points).map_err(propagation)?;
    let mut prop = Propagator::new(spec, cfg.x_min(), cfg.x_max(), cfg.points).map_err(propagation)?;
    let out = prop.evolve(profile, psi0, cfg.dt, &[], |_| Ok(())).map_err(propagation)?;
    let exact = mode.on_grid(spec.tf(), cfg.x_min(), cfg.x_max(), cfg.points).map_err(propagation)?;
    Ok(Verified {
        n,
        fidelity: fidelity(&exact, &out).map_err(propagation)?,
        populations: populations(&out, spec.omegaf(), n + 2, spec).map_err(propagation)?,
    })
}

fn verify_footer(out: &mut String, results: &[Verified]) {
    for r in results {
        let _ = write!(out, "# verify n={} fidelity_final={}", r.n, num(r.fidelity));
        for (k, p) in r.populations.iter().enumerate() {
            let _ = write!(out, " p_{k}={}", num(*p));
        }
        out.push('\n');
    }
}

fn run_verify(
    spec: &OscillatorSpec,
    law: &ScalingLaw,
    profile: &FrequencyProfile,
    v: &VerifyFlags,
) -> Result<Vec<Verified>, CliError> {
    v.levels.par_iter().map(|&n| verify_level(spec, law, profile, n, v)).collect()
}

pub fn design(a: &DesignArgs, head: &str) -> Result<String, CliError> {
    let spec = build_spec(&a.spec)?;
    let law = design_law(&spec, &a.design)?;
    let profile = inverse_frequency(&law, spec.omega0()).map_err(design_err)?;
    let mut out = String::from(head);
    out.push_str("t_s,s,b,bdot,bddot,omega_sq_rad2_s2\n");
    for t in linspace(0.0, spec.tf(), a.spec.samples) {
        let k = law.kinematics(t);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            num(t),
            num(t / spec.tf()),
            num(k.b),
            num(k.bdot),
            num(k.bddot),
            num(profile.omega_sq(t))
        );
    }
    if a.verify.verify {
        verify_footer(&mut out, &run_verify(&spec, &law, &profile, &a.verify)?);
    }
    Ok(out)
}

pub fn simulate(a: &DesignArgs, head: &str) -> Result<String, CliError> {
    let spec = build_spec(&a.spec)?;
    let law = design_law(&spec, &a.design)?;
    let profile = inverse_frequency(&law, spec.omega0()).map_err(design_err)?;
    let modes: Vec<ExpandingMode> =
        a.verify.levels.iter().map(|&n| ExpandingMode::new(n, &law, &spec)).collect::<Result<_, _>>().map_err(validation)?;
    let mut out = String::from(head);
    out.push_str("t_s");
    for m in &modes {
        let _ = write!(out, ",energy_n{}_over_hbar_omega0", m.n);
    }
    out.push('\n');
    for t in linspace(0.0, spec.tf(), a.spec.samples) {
        out.push_str(&num(t));
        for m in &modes {
            let _ = write!(out, ",{}", num(m.energy(&profile, t)));
        }
        out.push('\n');
    }
    if a.verify.verify {
        verify_footer(&mut out, &run_verify(&spec, &law, &profile, &a.verify)?);
    }
    Ok(out)
}

pub fn bangbang(a: &BangBangArgs, head: &str) -> Result<String, CliError> {
    let spec = build_spec(&a.spec)?;
    let w0 = spec.omega0();
    let bound = t_min(&spec).map_err(validation)?;
    let roots = matching_roots(a.omega_i_frac * w0, a.omega2_frac * w0, &spec).map_err(validation)?;
    let plan = *roots.first().ok_or_else(|| design_err(Error::NoSolution))?;
    let profile = bangbang_profile(&plan);
    let mut out = String::from(head);
    let _ = writeln!(
        out,
        "# bangbang tau1_s={} tau2_s={} tf_s={} t_min_s={} tf_over_t_min={}",
        num(plan.tau1),
        num(plan.tau2),
        num(plan.tf()),
        num(bound),
        num(plan.tf() / bound)
    );
    for (k, r) in roots.iter().enumerate().skip(1) {
        let _ = writeln!(out, "# root {k} tau1_s={} tf_s={}", num(r.tau1), num(r.tf()));
    }
    out.push_str("t_s,b,bdot,omega_sq_rad2_s2\n");
    for t in linspace(0.0, plan.tf(), a.spec.samples) {
        let k = plan.kinematics(t);
        let _ = writeln!(out, "{},{},{},{}", num(t), num(k.b), num(k.bdot), num(profile.omega_sq(t)));
    }
    Ok(out)
}

pub fn reference(a: &ReferenceArgs, head: &str) -> Result<String, CliError> {
    let base = build_spec(&a.spec)?;
    let (lo, hi) = (a.tf_min_ms, a.tf_max_ms);
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || a.tf_steps == 0 {
        return Err(CliError::Validation("need 0 < --tf-min-ms <= --tf-max-ms and --tf-steps >= 1".into()));
    }
    let tfs: Vec<f64> = linspace(lo.ln(), hi.ln(), a.tf_steps).map(|x| x.exp() * 1e-3).collect();
    let rows: Vec<String> = tfs
        .par_iter()
        .map(|&tf| {
            let spec = base.with_tf(tf).map_err(validation)?;
            let profile = match a.ramp {
                Ramp::Linear => linear_ramp(&spec),
                Ramp::Uniform => uniform_ramp(&spec).map_err(validation)?,
            };
            let excess = ground_state_excess(&spec, &profile, DEFAULT_TOL).map_err(design_err)?;
            let energy = 0.5 * spec.omegaf() / spec.omega0() * (1.0 + excess);
            let margin = adiabaticity_margin(&profile, a.spec.samples).map_err(design_err)?;
            Ok(format!("{},{},{},{}\n", num(tf), num(energy), num(excess), num(margin)))
        })
        .collect::<Result<_, CliError>>()?;
    let mut out = String::from(head);
    out.push_str("tf_s,final_energy_over_hbar_omega0,relative_excess,adiabaticity_margin\n");
    rows.iter().for_each(|r| out.push_str(r));
    Ok(out)
}

fn sweep_row(base: &OscillatorSpec, a: &SweepArgs, tf: f64, n: usize) -> Result<String, CliError> {
    let spec = base.with_tf(tf).map_err(validation)?;
    let law = design_law(&spec, &a.design)?;
    let profile = inverse_frequency(&law, spec.omega0()).map_err(design_err)?;
    let energy = ExpandingMode::new(n, &law, &spec).map_err(validation)?.energy(&profile, tf);
    let (mut min_w2, mut max_abs) = (f64::INFINITY, 0.0_f64);
    for t in linspace(0.0, tf, a.spec.samples) {
        let w2 = profile.omega_sq(t);
        min_w2 = min_w2.min(w2);
        max_abs = max_abs.max(w2.abs());
    }
    let margin = match adiabaticity_margin(&profile, a.spec.samples) {
        Ok(m) => num(m),
        Err(Error::NegativeFrequencyRegion { .. }) => String::new(),
        Err(e) => return Err(design_err(e)),
    };
    let fid = if a.verify.verify {
        num(verify_level(&spec, &law, &profile, n, &a.verify)?.fidelity)
    } else {
        String::new()
    };
    Ok(format!("{},{n},{},{fid},{},{},{margin}\n", num(tf), num(energy), num(min_w2), num(max_abs)))
}

pub fn sweep(a: &SweepArgs, head: &str) -> Result<String, CliError> {
    let base = build_spec(&a.spec)?;
    if a.tf_list_ms.is_empty() {
        return Err(CliError::Validation("--tf-list-ms is empty".into()));
    }
    let jobs: Vec<(f64, usize)> =
        a.tf_list_ms.iter().flat_map(|&ms| a.verify.levels.iter().map(move |&n| (ms * 1e-3, n))).collect();
    let rows: Vec<String> =
        jobs.par_iter().map(|&(tf, n)| sweep_row(&base, a, tf, n)).collect::<Result<_, CliError>>()?;
    let mut out = String::from(head);
    out.push_str(
        "tf_s,n,final_energy_over_hbar_omega0,fidelity_final,min_omega_sq_rad2_s2,max_abs_omega_sq_rad2_s2,peak_adiabaticity_margin\n",
    );
    rows.iter().for_each(|r| out.push_str(r));
    Ok(out)
}
