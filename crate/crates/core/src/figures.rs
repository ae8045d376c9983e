//! Data tables behind the published figures and Table I.
//!
//! Grid extents are not printed with the figures, so the defaults here are
//! chosen to cover the visible ranges: temperatures run over `(0, T_max]`
//! with `T_max = 3t` for the lattice figures and `0.3` for the BCS figures.

use crate::bcs::{concurrence_vs_order_parameter, self_consistent_concurrence, zero_temperature_gap};
use crate::error::{invalid, Result};
use crate::free_fermion::{
    ground_state_concurrence_infinite, mean_number_two_site, mu_from_mean_number, thermal_concurrence,
    thermal_concurrence_two_site, ModelParams,
};

/// Column names plus rows of numbers, in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }
}

fn check_steps(steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(invalid("step count must be at least 1"));
    }
    Ok(())
}

/// `steps + 1` equally spaced points from `lo` to `hi`, both included.
pub fn closed_grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    check_steps(steps)?;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(invalid(format!("invalid grid range [{lo}, {hi}]")));
    }
    Ok((0..=steps)
        .map(|i| if i == steps { hi } else { lo + (hi - lo) * i as f64 / steps as f64 })
        .collect())
}

/// `T_i = T_max·i/steps` for `i = 1..=steps`.
pub fn temperature_grid(t_max: f64, steps: usize) -> Result<Vec<f64>> {
    check_steps(steps)?;
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(invalid(format!("maximum temperature {t_max} must be finite and > 0")));
    }
    Ok((1..=steps).map(|i| t_max * i as f64 / steps as f64).collect())
}

/// Infinite-lattice ground-state concurrence against filling.
pub fn fig1(steps: usize) -> Result<Table> {
    let mut table = Table::new(&["n", "C"]);
    for n in closed_grid(0.0, 1.0, steps)? {
        table.rows.push(vec![n, ground_state_concurrence_infinite(n)?.value()]);
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig2Options {
    pub hopping: f64,
    pub t_max: f64,
    pub steps: usize,
    /// Intervals of the mean-number grid over `[0, 2]`.
    pub n_steps: usize,
}

impl Default for Fig2Options {
    fn default() -> Self {
        Fig2Options { hopping: 1.0, t_max: 3.0, steps: 200, n_steps: 20 }
    }
}

/// Two-site thermal concurrence over temperature and mean particle number.
/// `N = 0` and `N = 2` are the `μ → ∓∞` limits, where `C = 0`.
pub fn fig2(options: &Fig2Options) -> Result<Table> {
    let mut table = Table::new(&["T", "N_mean", "C"]);
    let numbers = closed_grid(0.0, 2.0, options.n_steps)?;
    for temperature in temperature_grid(options.t_max, options.steps)? {
        let beta = 1.0 / temperature;
        for &n in &numbers {
            let mu = if n <= 0.0 {
                f64::NEG_INFINITY
            } else if n >= 2.0 {
                f64::INFINITY
            } else {
                mu_from_mean_number(n, options.hopping, beta)?
            };
            let params = ModelParams::new(2, options.hopping, mu, beta)?;
            table.rows.push(vec![temperature, n, thermal_concurrence_two_site(&params)?.value()]);
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig3Options {
    pub sites: usize,
    pub hopping: f64,
    pub mus: Vec<f64>,
    pub t_max: f64,
    pub steps: usize,
}

impl Default for Fig3Options {
    fn default() -> Self {
        Fig3Options { sites: 100, hopping: 1.0, mus: vec![0.1, 1.0, 2.0], t_max: 3.0, steps: 200 }
    }
}

/// Nearest-neighbour thermal concurrence on a ring, one column per `μ`.
pub fn fig3(options: &Fig3Options) -> Result<Table> {
    if options.mus.is_empty() {
        return Err(invalid("at least one chemical potential is required"));
    }
    let mut columns = vec!["T".to_string()];
    columns.extend(options.mus.iter().map(|mu| format!("C_mu{mu:.1}")));
    let mut table = Table { columns, rows: Vec::new() };
    for temperature in temperature_grid(options.t_max, options.steps)? {
        let mut row = vec![temperature];
        for &mu in &options.mus {
            let params = ModelParams::at_temperature(options.sites, options.hopping, mu, temperature)?;
            row.push(thermal_concurrence(&params)?.value());
        }
        table.rows.push(row);
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig4Options {
    pub epsilon: f64,
    pub t_max: f64,
    pub steps: usize,
}

impl Default for Fig4Options {
    fn default() -> Self {
        Fig4Options { epsilon: 0.0, t_max: 0.3, steps: 200 }
    }
}

/// Self-consistent order parameter and pair concurrence against temperature.
pub fn fig4(options: &Fig4Options) -> Result<Table> {
    let mut table = Table::new(&["T", "Delta", "C"]);
    for temperature in temperature_grid(options.t_max, options.steps)? {
        let (delta, c) = self_consistent_concurrence(options.epsilon, temperature)?;
        table.rows.push(vec![temperature, delta, c.value()]);
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig5Options {
    pub epsilon: f64,
    /// Upper end of the order-parameter grid; `None` uses the zero-temperature
    /// gap.
    pub delta_max: Option<f64>,
    pub steps: usize,
}

impl Default for Fig5Options {
    fn default() -> Self {
        Fig5Options { epsilon: 0.0, delta_max: None, steps: 200 }
    }
}

/// Pair concurrence against the self-consistent order parameter.
pub fn fig5(options: &Fig5Options) -> Result<Table> {
    let delta_max = options.delta_max.unwrap_or_else(|| zero_temperature_gap(options.epsilon));
    let grid = closed_grid(0.0, delta_max, options.steps)?;
    let mut table = Table::new(&["Delta", "C"]);
    for row in concurrence_vs_order_parameter(options.epsilon, &grid)? {
        table.rows.push(vec![row.delta, row.concurrence]);
    }
    Ok(table)
}

/// Chemical potential standing in for `μ → ±∞` in Table I.
pub const TABLE1_LARGE_MU: f64 = 50.0;

/// Two-site `(⟨N̂⟩, μ, C)` at `μ = −50, 0, +50`.
pub fn table1(hopping: f64, temperature: f64) -> Result<Table> {
    let mut table = Table::new(&["N_mean", "mu", "C"]);
    for mu in [-TABLE1_LARGE_MU, 0.0, TABLE1_LARGE_MU] {
        let params = ModelParams::at_temperature(2, hopping, mu, temperature)?;
        table.rows.push(vec![
            mean_number_two_site(&params)?,
            mu,
            thermal_concurrence_two_site(&params)?.value(),
        ]);
    }
    Ok(table)
}
