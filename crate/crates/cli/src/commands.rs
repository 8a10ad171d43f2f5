use dspec_core::geometry::{self, PhysicalParams, RotatingFrame, PHI, RHO, T, Z};
use dspec_core::spectrum::{self, EnergyLevel, QuantumNumbers, Spin};
use dspec_core::verify::{self, Depth, Fault, Report};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::table::{Table, Value};

pub const LEVEL_COLUMNS: [&str; 16] = [
    "mass",
    "omega",
    "zeta",
    "k_axial",
    "n",
    "l",
    "s",
    "nu",
    "eta_exact",
    "eta_asym",
    "eta_rho0",
    "rho0",
    "E_exact",
    "E_asym",
    "rel_err_eta",
    "asymptotic_unreliable",
];

fn level_row(p: &PhysicalParams, level: &EnergyLevel) -> Vec<Value> {
    use Value::*;
    vec![
        Real(p.mass()),
        Real(p.omega()),
        Real(p.zeta()),
        Real(p.k()),
        Int(level.qn.n as i64),
        Int(level.qn.l),
        Int(level.qn.s.value() as i64),
        Real(level.nu),
        Real(level.eta_exact),
        Real(level.eta_asym),
        Real(level.eta_rho0()),
        Real(level.rho0),
        Real(level.energy_exact),
        Real(level.energy_asym),
        Real(level.rel_err_eta),
        Bool(level.asymptotic_unreliable()),
    ]
}

/// Every requested level, sorted by exact energy and then by `(n, l, s)`.
/// Channels are computed in parallel; the sort makes the order independent
/// of scheduling.
pub fn levels(config: &RunConfig, params: &PhysicalParams) -> CliResult<Vec<EnergyLevel>> {
    let channels: Vec<(i64, Spin)> = (config.l_min..=config.l_max)
        .flat_map(|l| config.spins.iter().map(move |&s| (l, s)))
        .collect();
    let per_channel = channels
        .par_iter()
        .map(|&(l, s)| spectrum::levels_for_channel(l, s, config.n_max, params))
        .collect::<Result<Vec<_>, _>>()?;
    let mut all: Vec<EnergyLevel> = per_channel.into_iter().flatten().collect();
    all.sort_by(|a, b| {
        a.energy_exact
            .total_cmp(&b.energy_exact)
            .then(a.qn.cmp(&b.qn))
    });
    Ok(all)
}

pub fn spectrum(config: &RunConfig) -> CliResult<Table> {
    let params = config.params()?;
    let mut table = Table::new(LEVEL_COLUMNS.to_vec());
    for level in levels(config, &params)? {
        table.push(level_row(&params, &level));
    }
    Ok(table)
}

pub fn sweep(config: &RunConfig) -> CliResult<Table> {
    let sweep = config
        .sweep
        .ok_or_else(|| CliError::Config("no sweep configured".into()))?;
    let values = sweep.values();

    // validate the whole range before computing anything
    let mut offending = Vec::new();
    let mut params = Vec::with_capacity(values.len());
    for &v in &values {
        match config.params_with(sweep.param, v) {
            Ok(p) => params.push(p),
            Err(CliError::Region(_)) => offending.push(v),
            Err(other) => return Err(other),
        }
    }
    if !offending.is_empty() {
        let list: Vec<String> = offending.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Region(format!(
            "zeta*omega >= 1 for {} = {}",
            sweep.param.column(),
            list.join(", ")
        )));
    }

    let blocks = params
        .par_iter()
        .map(|p| levels(config, p).map(|ls| (p, ls)))
        .collect::<CliResult<Vec<_>>>()?;
    let mut table = Table::new(LEVEL_COLUMNS.to_vec());
    for (p, ls) in blocks {
        for level in ls {
            table.push(level_row(p, &level));
        }
    }
    Ok(table)
}

pub fn wavefunction(config: &RunConfig, qn: QuantumNumbers, samples: usize) -> CliResult<Table> {
    if samples < spectrum::MIN_GRID_SIZE {
        return Err(CliError::Config(format!(
            "--samples must be at least {}, got {samples}",
            spectrum::MIN_GRID_SIZE
        )));
    }
    let params = config.params()?;
    let level = spectrum::energy_exact(&qn, &params)?;
    let mode = spectrum::radial_mode(&qn, &params, samples)?;
    let mut table = Table::new(vec!["rho", "R"]);
    table.meta = vec![
        ("n", Value::Int(qn.n as i64)),
        ("l", Value::Int(qn.l)),
        ("s", Value::Int(qn.s.value() as i64)),
        ("E_exact", Value::Real(level.energy_exact)),
        ("nu", Value::Real(level.nu)),
        ("eta", Value::Real(level.eta_exact)),
        ("rho0", Value::Real(level.rho0)),
    ];
    for (rho, r) in mode.grid.iter().zip(&mode.values) {
        table.push(vec![Value::Real(*rho), Value::Real(*r)]);
    }
    Ok(table)
}

pub fn geometry(config: &RunConfig, rho: f64) -> CliResult<Table> {
    let frame = RotatingFrame::new(config.omega, config.zeta)?;
    let rho0 = geometry::singular_radius(config.omega, config.zeta)?;
    let g = geometry::metric_components(&frame, rho)?;
    let structure = geometry::structure_equation_residual(&frame, rho)?;
    let tetrad = geometry::tetrad_compatibility_residual(&frame, rho)?;
    let mut table = Table::new(vec![
        "rho",
        "rho0",
        "g_tt",
        "g_tphi",
        "g_tz",
        "g_rhorho",
        "g_phiphi",
        "g_phiz",
        "g_zz",
        "structure_residual",
        "tetrad_residual",
    ]);
    table.push(
        [
            rho,
            rho0,
            g[T][T],
            g[T][PHI],
            g[T][Z],
            g[RHO][RHO],
            g[PHI][PHI],
            g[PHI][Z],
            g[Z][Z],
            structure,
            tetrad,
        ]
        .map(Value::Real)
        .to_vec(),
    );
    Ok(table)
}

pub fn verify(full: bool, inject_fault: bool) -> Report {
    let depth = if full { Depth::Full } else { Depth::Quick };
    let fault = inject_fault.then_some(Fault::FlipFirstDerivative);
    verify::run(depth, fault)
}
